//! Orthogonal MRA verification and the elementary mask generator.
//!
//! The two orthonormality tests here are deliberately independent routes
//! to the same answer. [`orthonormality_spectral`] checks the coset-sum
//! criterion on the transform side: for every exponent tuple at negative
//! positions, the squared moduli over the nonnegative tail sum to 1.
//! [`orthonormality_direct`] is the brute-force oracle: it takes the step
//! function itself, forms every shift by `H_0^{(N)}` and tests the Gram
//! identities from the inner products. The two must agree on every input.
//!
//! [`ElementarySpec`] drives the constructive generator for `1`-elementary
//! masks (`p >= 3`): choose the level-0 zero set `E^(0)` of size `l`, an
//! anchor column in its complement, and an ordering of `E^(0)`; the
//! generated table has exactly one unit-modulus entry per row, placed
//! along the resulting chain. [`enumerate_elementary`] sweeps all feasible
//! 0/1 patterns instead and serves as the exhaustive oracle for the
//! support bound.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::group::{shift_lattice, GroupParams};
use crate::mask::Mask;
use crate::stepfun::{SpectralFunction, StepFunction};
use crate::{Error, Result, DEFAULT_EPS};

/// Default cap on the number of patterns [`enumerate_elementary`] will
/// sweep; `p^(p-1)` grows fast enough that anything past p = 5 must be
/// requested explicitly.
pub const DEFAULT_ENUMERATION_BUDGET: u128 = 20_000;

/// Spectral orthonormality criterion: the shifts of the inverse transform
/// are orthonormal iff for every tuple `(a_{-N},...,a_{-1})` the sum of
/// `|F|^2` over the tail exponents `(a_0,...,a_{M-1})` equals 1.
pub fn orthonormality_spectral(spectrum: &SpectralFunction, eps: f64) -> bool {
    let grid = spectrum.grid();
    let params = grid.params();
    let groups = params.pow(grid.n()) as usize;
    let tail = params.pow(grid.m()) as usize;
    (0..groups).all(|low| {
        let sum: f64 = (0..tail)
            .map(|high| spectrum.value(low + high * groups).norm_sqr())
            .sum();
        (sum - 1.0).abs() <= eps
    })
}

/// Brute-force orthonormality oracle on the group side: `<f, f> = 1` and
/// `<f, f(.-h)> = 0` for every nonzero `h` in `H_0^{(N)}`.
///
/// Shifts outside `G_{-N}` move the support onto a disjoint coset, so
/// those inner products vanish identically and the lattice sweep is
/// complete; a representative spot check lives in the tests.
pub fn orthonormality_direct(f: &StepFunction, eps: f64) -> bool {
    let grid = f.grid();
    for h in shift_lattice(grid.params(), grid.n()) {
        let shifted = f.shift(&h).expect("lattice shifts stay inside the grid");
        let ip = f
            .inner_product(&shifted)
            .expect("shift preserves the grid");
        let expected = f64::from(h.is_zero());
        if (ip - Complex64::new(expected, 0.0)).norm() > eps {
            return false;
        }
    }
    true
}

/// The least `l >= -N` with `supp F` inside `G_l^bot`: one past the top
/// exponent position among cosets carrying a value above `eps`.
pub fn support_min_shell(spectrum: &SpectralFunction, eps: f64) -> i64 {
    let grid = spectrum.grid();
    let floor = -i64::from(grid.n());
    let mut digits = vec![0u32; grid.axes() as usize];
    let mut level = floor;
    for idx in 0..grid.len() {
        if spectrum.value(idx).norm() <= eps {
            continue;
        }
        grid.decode_into(idx, &mut digits);
        if let Some(top) = digits.iter().rposition(|&e| e != 0) {
            level = level.max(floor + top as i64 + 1);
        }
    }
    level
}

/// The free choices of the 1-elementary construction: the level-0 zero
/// set `E^(0)` (size `l`), the chain anchor in its complement, an
/// ordering of `E^(0)`, and optional unimodular phases (one per nonzero
/// row, default 1).
#[derive(Clone, PartialEq, Debug)]
pub struct ElementarySpec {
    params: GroupParams,
    zero_set: Vec<u32>,
    chain_top: u32,
    chain_order: Vec<u32>,
    phases: Vec<Complex64>,
}

impl ElementarySpec {
    pub fn new(
        params: GroupParams,
        zero_set: Vec<u32>,
        chain_top: u32,
        chain_order: Vec<u32>,
    ) -> Result<Self> {
        let p = params.prime();
        if p < 3 {
            return Err(Error::InvalidSpec(format!(
                "elementary masks need p >= 3, got p = {p}"
            )));
        }
        let l = zero_set.len() as u32;
        if l == 0 || l > p - 2 {
            return Err(Error::InvalidSpec(format!(
                "zero set size {l} outside 1..={}",
                p - 2
            )));
        }
        let mut sorted = zero_set.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != zero_set.len() || sorted[0] == 0 || sorted[sorted.len() - 1] >= p {
            return Err(Error::InvalidSpec(String::from(
                "zero set must be distinct values in 1..p",
            )));
        }
        if chain_top == 0 || chain_top >= p || sorted.binary_search(&chain_top).is_ok() {
            return Err(Error::InvalidSpec(format!(
                "chain top {chain_top} must lie in the complement of the zero set"
            )));
        }
        let mut order_sorted = chain_order.clone();
        order_sorted.sort_unstable();
        if order_sorted != sorted {
            return Err(Error::InvalidSpec(String::from(
                "chain order must permute the zero set",
            )));
        }
        Ok(Self {
            params,
            zero_set: sorted,
            chain_top,
            chain_order,
            phases: vec![Complex64::new(1.0, 0.0); (p - 1) as usize],
        })
    }

    /// Replaces the unit-entry phases, one per row `1..p`; each must be
    /// unimodular.
    pub fn with_phases(mut self, phases: Vec<Complex64>) -> Result<Self> {
        let expected = (self.params.prime() - 1) as usize;
        if phases.len() != expected {
            return Err(Error::InvalidSpec(format!(
                "expected {expected} phases, got {}",
                phases.len()
            )));
        }
        if let Some(bad) = phases.iter().find(|z| (z.norm() - 1.0).abs() > DEFAULT_EPS) {
            return Err(Error::InvalidSpec(format!(
                "phase {bad} is not unimodular"
            )));
        }
        self.phases = phases;
        Ok(self)
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    /// Number of level-0 zeros.
    pub fn l(&self) -> u32 {
        self.zero_set.len() as u32
    }

    pub fn zero_set(&self) -> &[u32] {
        &self.zero_set
    }

    /// The full chain `(a_{-1}^0, a_0^0, ..., a_{l-1}^0)`: the zero set in
    /// construction order followed by the anchor in the complement.
    pub fn chain(&self) -> Vec<u32> {
        let mut chain: Vec<u32> = self.chain_order.iter().rev().copied().collect();
        chain.push(self.chain_top);
        chain
    }

    /// Runs the constructive definition and returns the `N = 1` mask.
    ///
    /// Row `a_{-1} = 0` and the complement rows put their unit entry in
    /// column 0; each zero-set row puts it at the next chain element, so
    /// every row carries exactly one unit entry and the row-sum condition
    /// holds by construction.
    pub fn generate(&self) -> Mask {
        let p = self.params.prime() as usize;
        let mut lambda = vec![Complex64::new(0.0, 0.0); p * p];
        lambda[0] = Complex64::new(1.0, 0.0);
        let chain = self.chain();
        for row in 1..p as u32 {
            let column = if self.zero_set.binary_search(&row).is_ok() {
                let s = chain.iter().position(|&a| a == row).expect("row chains");
                chain[s + 1]
            } else {
                0
            };
            let phase = self.phases[(row - 1) as usize];
            lambda[(row + column * p as u32) as usize] = phase;
        }
        Mask::from_lambda(self.params, &lambda).expect("generated table satisfies T3")
    }
}

/// Structural self-test of a generated mask against its spec: among the
/// `(l+1)`-fold products `lambda_{a_{-1}+a_0 p} ... lambda_{a_{l-2}+a_{l-1} p}
/// lambda_{a_{l-1}}` whose last entry is nonzero (the ones that tabulate
/// the scaling function on the shell at level `l`) only the chain tuple
/// survives, and prepending any exponent to the chain kills the product.
pub fn elementary_chain_check(mask: &Mask, spec: &ElementarySpec) -> Result<bool> {
    let p = mask.params().prime() as usize;
    let lambda = mask.lambda_table()?;
    let chain = spec.chain();
    let l = spec.l() as usize;
    let tuples = (p as u64).pow(l as u32 + 1);
    let mut tuple = vec![0u32; l + 1];
    for mut code in 0..tuples {
        for slot in tuple.iter_mut() {
            *slot = (code % p as u64) as u32;
            code /= p as u64;
        }
        if tuple[l] == 0 {
            continue;
        }
        let mut product = Complex64::new(1.0, 0.0);
        for i in 0..l {
            product *= lambda[(tuple[i] + tuple[i + 1] * p as u32) as usize];
        }
        product *= lambda[tuple[l] as usize];
        let is_chain = tuple == chain;
        if is_chain == (product.norm() < 0.5) {
            return Ok(false);
        }
    }
    // the row feeding into the chain head is entirely zero
    let head = chain[0];
    let feeding_ok = (0..p as u32)
        .all(|a| lambda[(a + head * p as u32) as usize].norm() < 0.5);
    Ok(feeding_ok)
}

/// Everything [`mra_report`] measures. `verdict` is the conjunction of
/// all boolean checks; the support fields are informational. When the
/// scaling product never gains finite support the dependent checks stay
/// unset and the verdict is false.
#[derive(Clone, PartialEq, Debug)]
pub struct MraReport {
    pub p: u32,
    pub n: u32,
    pub m_max: u32,
    pub eps: f64,
    /// T1: the table is constant on `G_{-N}^bot`-cosets.
    pub t1_constant: bool,
    /// T2: the table is periodic under characters at positions `>= 1`.
    pub t2_periodic: bool,
    /// T3: the identity coset carries the value 1.
    pub t3_normalized: bool,
    /// Row sums of squared moduli equal 1.
    pub necessary_condition: bool,
    /// Set when no `M <= m_max` gives the scaling product finite support.
    pub no_finite_support: bool,
    /// The discovered support exponent `M`.
    pub support_exponent: Option<u32>,
    pub mask_valid: Option<bool>,
    pub refinement_holds: Option<bool>,
    pub orthonormal_spectral: Option<bool>,
    pub orthonormal_direct: Option<bool>,
    /// Least `l` with `supp phihat` inside `G_l^bot`.
    pub support_min_shell: Option<i64>,
    /// `phihat = 1` on `G_{-N}^bot`, so the dilated supports exhaust the
    /// character group (the density hypothesis).
    pub density_hypothesis: Option<bool>,
    pub verdict: bool,
}

/// Runs the whole verification pipeline on a mask: structural conditions,
/// the row-sum test, scaling-function construction with support
/// discovery, mask validity, the refinement identity, both orthonormality
/// routes, the support shell and the density hypothesis.
pub fn mra_report(mask: &Mask, m_max: u32, eps: f64) -> MraReport {
    let (t1, t2) = projection_invariance(mask);
    let t3 = (mask.values()[0] - Complex64::new(1.0, 0.0)).norm() <= eps;
    let necessary = mask.necessary_condition(eps);

    let mut report = MraReport {
        p: mask.params().prime(),
        n: mask.n(),
        m_max,
        eps,
        t1_constant: t1,
        t2_periodic: t2,
        t3_normalized: t3,
        necessary_condition: necessary,
        no_finite_support: false,
        support_exponent: None,
        mask_valid: None,
        refinement_holds: None,
        orthonormal_spectral: None,
        orthonormal_direct: None,
        support_min_shell: None,
        density_hypothesis: None,
        verdict: false,
    };

    let (phihat, m) = match mask.scaling_function(m_max, eps) {
        Ok(found) => found,
        Err(_) => {
            report.no_finite_support = true;
            return report;
        }
    };

    let valid = mask.validity(m, eps).valid;
    let refinement = mask
        .refinement_check(&phihat, eps)
        .expect("scaling output shares the mask grid");
    let spectral = orthonormality_spectral(&phihat, eps);
    let direct = orthonormality_direct(&phihat.inverse_fourier(), eps);
    let shell = support_min_shell(&phihat, eps);
    let density = phihat.value(0).norm() > eps;

    report.support_exponent = Some(m);
    report.mask_valid = Some(valid);
    report.refinement_holds = Some(refinement);
    report.orthonormal_spectral = Some(spectral);
    report.orthonormal_direct = Some(direct);
    report.support_min_shell = Some(shell);
    report.density_hypothesis = Some(density);
    report.verdict =
        t1 && t2 && t3 && necessary && valid && refinement && spectral && direct && density;
    report
}

/// T1/T2 verified behaviorally: lifting any table coset by exponents at
/// positions `>= 1` or below `-N` reproduces the table value exactly.
fn projection_invariance(mask: &Mask) -> (bool, bool) {
    use crate::group::CharacterWord;
    let params = mask.params();
    let n = mask.n();
    let top = params.prime() - 1;
    let mut constant = true;
    let mut periodic = true;
    for k in 0..mask.values().len() {
        let base = character_for_index(mask, k);
        let below = CharacterWord::from_exponents(params, [(-(n as i32) - 1, 1), (-(n as i32) - 4, top)])
            .expect("exponents in range")
            .mul(&base)
            .expect("same params");
        if mask.evaluate(&below) != mask.values()[k] {
            constant = false;
        }
        let above = CharacterWord::from_exponents(params, [(1, 1), (3, top)])
            .expect("exponents in range")
            .mul(&base)
            .expect("same params");
        if mask.evaluate(&above) != mask.values()[k] {
            periodic = false;
        }
    }
    (constant, periodic)
}

fn character_for_index(mask: &Mask, mut k: usize) -> crate::group::CharacterWord {
    let p = mask.params().prime() as usize;
    let exponents = (0..=mask.n() as i32).map(|i| {
        let e = (k % p) as u32;
        k /= p;
        (-i, e)
    });
    crate::group::CharacterWord::from_exponents(mask.params(), exponents)
        .expect("digits reduced mod p")
}

/// Options for [`enumerate_elementary`].
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct EnumerationConfig {
    /// Support cap handed to each report; defaults to `p - 1`, the bound
    /// the enumeration is certifying.
    pub m_max: Option<u32>,
    pub eps: f64,
    /// Refuse to sweep more than this many patterns.
    pub budget: u128,
    /// Restrict the catalog to patterns whose level-0 zero count lies in
    /// this inclusive range.
    pub l_range: Option<(u32, u32)>,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        Self {
            m_max: None,
            eps: DEFAULT_EPS,
            budget: DEFAULT_ENUMERATION_BUDGET,
            l_range: None,
        }
    }
}

/// One catalogued 0/1 modulus pattern: row `r` of the lambda matrix has
/// its single unit entry in column `unit_columns[r-1]` (row 0 is pinned
/// to column 0).
#[derive(Clone, PartialEq, Debug)]
pub struct AtlasEntry {
    pub unit_columns: Vec<u32>,
    /// Level-0 zero count of the pattern.
    pub l: u32,
    pub support_exponent: Option<u32>,
    pub support_min_shell: Option<i64>,
    pub orthonormal_spectral: Option<bool>,
    pub orthonormal_direct: Option<bool>,
    pub verdict: bool,
}

impl AtlasEntry {
    pub fn orthonormal(&self) -> bool {
        self.orthonormal_spectral == Some(true) && self.orthonormal_direct == Some(true)
    }
}

/// The full sweep over row-sum-feasible 0/1 patterns.
#[derive(Clone, PartialEq, Debug)]
pub struct Catalog {
    pub p: u32,
    pub m_max: u32,
    pub eps: f64,
    pub entries: Vec<AtlasEntry>,
    /// Every orthonormal pattern kept its scaling support inside
    /// `G_{p-2}^bot`.
    pub support_bound_holds: bool,
}

/// Enumerates every `N = 1` modulus pattern with `lambda_0 = 1` and
/// exactly one unit entry per row — the `p^(p-1)` patterns the row-sum
/// condition allows with 0/1 moduli, phases fixed to 1 — and reports each
/// through the full pipeline.
pub fn enumerate_elementary(params: GroupParams, config: &EnumerationConfig) -> Result<Catalog> {
    let p = params.prime();
    let total = u128::from(p).pow(p - 1);
    if total > config.budget {
        return Err(Error::BudgetExceeded {
            required: total,
            budget: config.budget,
        });
    }
    let m_max = config.m_max.unwrap_or(p - 1);
    let mut entries = Vec::new();
    let mut bound_holds = true;
    for code in 0..total {
        let mut unit_columns = vec![0u32; (p - 1) as usize];
        let mut rest = code;
        for column in unit_columns.iter_mut() {
            *column = (rest % u128::from(p)) as u32;
            rest /= u128::from(p);
        }
        let l = unit_columns.iter().filter(|&&col| col != 0).count() as u32;
        if let Some((lo, hi)) = config.l_range {
            if l < lo || l > hi {
                continue;
            }
        }
        let mut lambda = vec![Complex64::new(0.0, 0.0); (p * p) as usize];
        lambda[0] = Complex64::new(1.0, 0.0);
        for (row, &column) in (1..p).zip(&unit_columns) {
            lambda[(row + column * p) as usize] = Complex64::new(1.0, 0.0);
        }
        let mask = Mask::from_lambda(params, &lambda).expect("pattern tables satisfy T3");
        let report = mra_report(&mask, m_max, config.eps);
        let entry = AtlasEntry {
            unit_columns,
            l,
            support_exponent: report.support_exponent,
            support_min_shell: report.support_min_shell,
            orthonormal_spectral: report.orthonormal_spectral,
            orthonormal_direct: report.orthonormal_direct,
            verdict: report.verdict,
        };
        if entry.orthonormal() {
            if let Some(shell) = entry.support_min_shell {
                if shell > i64::from(p) - 2 {
                    bound_holds = false;
                }
            }
        }
        entries.push(entry);
    }
    Ok(Catalog {
        p,
        m_max,
        eps: config.eps,
        entries,
        support_bound_holds: bound_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupElement;
    use crate::stepfun::Grid;

    fn params(p: u32) -> GroupParams {
        GroupParams::new(p).unwrap()
    }

    fn elementary_p3() -> ElementarySpec {
        ElementarySpec::new(params(3), vec![1], 2, vec![1]).unwrap()
    }

    #[test]
    fn spec_validation() {
        assert!(matches!(
            ElementarySpec::new(params(2), vec![1], 1, vec![1]),
            Err(Error::InvalidSpec(_))
        ));
        // l = 0 and l = p - 1 are out of range
        assert!(ElementarySpec::new(params(3), vec![], 2, vec![]).is_err());
        assert!(ElementarySpec::new(params(3), vec![1, 2], 1, vec![1, 2]).is_err());
        // chain anchor may not sit in the zero set
        assert!(ElementarySpec::new(params(3), vec![1], 1, vec![1]).is_err());
        // the order must permute the zero set
        assert!(ElementarySpec::new(params(5), vec![1, 3], 4, vec![1, 2]).is_err());
        assert!(ElementarySpec::new(params(5), vec![1, 1], 4, vec![1, 1]).is_err());
        // phases must be unimodular and one per nonzero row
        let spec = elementary_p3();
        assert!(spec
            .clone()
            .with_phases(vec![Complex64::new(0.5, 0.0); 2])
            .is_err());
        assert!(spec.clone().with_phases(vec![Complex64::new(0.0, 1.0)]).is_err());
        assert!(spec
            .with_phases(vec![Complex64::new(0.0, 1.0), Complex64::new(-1.0, 0.0)])
            .is_ok());
    }

    #[test]
    fn generator_reproduces_the_traced_table() {
        // independent trace of the construction for p=3, zeros {1},
        // anchor 2: row 1 chains into column 2, rows 0 and 2 anchor at
        // column 0
        let mask = elementary_p3().generate();
        let lambda = mask.lambda_table().unwrap();
        let expected = [1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0];
        for (got, &want) in lambda.iter().zip(&expected) {
            assert!((got - Complex64::new(want, 0.0)).norm() < 1e-15);
        }
        assert!(elementary_chain_check(&mask, &elementary_p3()).unwrap());
    }

    #[test]
    fn generated_masks_chain_products_vanish_off_chain() {
        let spec = ElementarySpec::new(params(5), vec![1, 2, 3], 4, vec![3, 2, 1]).unwrap();
        let mask = spec.generate();
        assert!(mask.necessary_condition(DEFAULT_EPS));
        assert!(elementary_chain_check(&mask, &spec).unwrap());
    }

    #[test]
    fn spectral_orthonormality_examples() {
        let q = params(3);
        let grid = Grid::new(q, 0, 1).unwrap();
        let ball = SpectralFunction::indicator_annihilator(grid, 0).unwrap();
        assert!(orthonormality_spectral(&ball, DEFAULT_EPS));

        let ones = SpectralFunction::new(
            grid,
            vec![Complex64::new(1.0, 0.0); grid.len()],
        )
        .unwrap();
        assert!(!orthonormality_spectral(&ones, DEFAULT_EPS));

        let (phihat, _) = elementary_p3()
            .generate()
            .scaling_function(2, DEFAULT_EPS)
            .unwrap();
        assert!(orthonormality_spectral(&phihat, DEFAULT_EPS));
    }

    #[test]
    fn direct_orthonormality_examples() {
        let q = params(3);
        let grid = Grid::new(q, 1, 1).unwrap();
        let ball = StepFunction::indicator_subgroup(grid, 0).unwrap();
        assert!(orthonormality_direct(&ball, DEFAULT_EPS));

        // normalized 1_{G_{-1}} has unit norm but overlaps its own shifts
        let wide = StepFunction::indicator_subgroup(grid, -1).unwrap();
        let scale = 1.0 / wide.norm_sqr().sqrt();
        let scaled = StepFunction::new(
            grid,
            wide.values().iter().map(|v| v * scale).collect(),
        )
        .unwrap();
        assert!((scaled.norm_sqr() - 1.0).abs() < 1e-12);
        assert!(!orthonormality_direct(&scaled, DEFAULT_EPS));

        let (phihat, _) = elementary_p3()
            .generate()
            .scaling_function(2, DEFAULT_EPS)
            .unwrap();
        let phi = phihat.inverse_fourier();
        assert!(orthonormality_direct(&phi, DEFAULT_EPS));
        assert_eq!(
            orthonormality_direct(&phi, DEFAULT_EPS),
            orthonormality_spectral(&phihat, DEFAULT_EPS)
        );

        // spot check: a shift outside H_0^{(N)} lands on a disjoint coset
        let outside = phi.embed(2, 1).unwrap();
        let h = GroupElement::basis(q, -2);
        let overlap = outside
            .inner_product(&outside.shift(&h).unwrap())
            .unwrap();
        assert!(overlap.norm() < 1e-12);
    }

    #[test]
    fn support_shell_examples() {
        let q = params(3);
        let grid = Grid::new(q, 1, 1).unwrap();
        let ball = SpectralFunction::indicator_annihilator(grid, 0).unwrap();
        assert_eq!(support_min_shell(&ball, DEFAULT_EPS), 0);

        let (phihat, _) = elementary_p3()
            .generate()
            .scaling_function(2, DEFAULT_EPS)
            .unwrap();
        assert_eq!(support_min_shell(&phihat, DEFAULT_EPS), 1);
        // sharpness: the shell above G_0^bot really is charged, at (1, 2)
        assert!(phihat.value_at(&[1, 2]).norm() > 0.5);

        assert_eq!(
            support_min_shell(&SpectralFunction::zero(grid), DEFAULT_EPS),
            -1
        );
    }

    #[test]
    fn report_headline_cases() {
        for p in [2u32, 3, 5] {
            let report = mra_report(&Mask::haar(params(p), 1), p - 1, DEFAULT_EPS);
            assert!(report.verdict, "Haar p={p}: {report:?}");
            assert_eq!(report.support_exponent, Some(0));
            assert_eq!(report.support_min_shell, Some(0));
        }

        let report = mra_report(&elementary_p3().generate(), 2, DEFAULT_EPS);
        assert!(report.verdict);
        assert_eq!(report.support_exponent, Some(1));
        assert_eq!(report.support_min_shell, Some(1)); // = p - 2, the bound met

        let q = params(3);
        let ones = Mask::new(q, 1, vec![Complex64::new(1.0, 0.0); 9]).unwrap();
        let report = mra_report(&ones, 4, DEFAULT_EPS);
        assert!(!report.verdict);
        assert!(report.no_finite_support);
        assert_eq!(report.support_exponent, None);
        assert_eq!(report.orthonormal_spectral, None);
    }

    #[test]
    fn degenerate_level_zero_patterns() {
        let q = params(3);
        // every nonzero row chained upward: l = p - 1, support collapses
        // to G_{-1}^bot and the shifts cannot be orthonormal
        let mut lambda = vec![Complex64::new(0.0, 0.0); 9];
        lambda[0] = Complex64::new(1.0, 0.0);
        lambda[1 + 3] = Complex64::new(1.0, 0.0); // row 1, column 1
        lambda[2 + 3] = Complex64::new(1.0, 0.0); // row 2, column 1
        let degenerate = Mask::from_lambda(q, &lambda).unwrap();
        let report = mra_report(&degenerate, 2, DEFAULT_EPS);
        assert!(!report.verdict);
        assert_eq!(report.orthonormal_spectral, Some(false));
        assert_eq!(report.orthonormal_direct, Some(false));
        assert_eq!(report.support_min_shell, Some(-1));

        // l = 0: unit moduli across level 0 — the Haar-like pattern passes
        let report = mra_report(&Mask::haar(q, 1), 2, DEFAULT_EPS);
        assert!(report.verdict);
    }

    #[test]
    fn enumeration_catalogues_every_feasible_pattern() {
        let catalog =
            enumerate_elementary(params(3), &EnumerationConfig::default()).unwrap();
        assert_eq!(catalog.entries.len(), 9);
        assert!(catalog.support_bound_holds);

        let orthonormal: Vec<&AtlasEntry> = catalog
            .entries
            .iter()
            .filter(|e| e.orthonormal())
            .collect();
        let mut patterns: Vec<&[u32]> =
            orthonormal.iter().map(|e| e.unit_columns.as_slice()).collect();
        patterns.sort_unstable();
        assert_eq!(patterns, [&[0, 0][..], &[0, 1], &[2, 0]]);

        for entry in &catalog.entries {
            assert_eq!(entry.orthonormal_spectral, entry.orthonormal_direct);
            if entry.orthonormal() {
                assert!(entry.support_min_shell.unwrap() <= 1);
                assert_eq!(entry.verdict, true);
            } else {
                assert!(!entry.verdict);
            }
        }
        // sharpness is realized inside the catalog
        assert!(orthonormal
            .iter()
            .any(|e| e.support_min_shell == Some(1)));
    }

    #[test]
    fn enumeration_budget_guard() {
        let config = EnumerationConfig {
            budget: 100,
            ..EnumerationConfig::default()
        };
        assert_eq!(
            enumerate_elementary(params(5), &config),
            Err(Error::BudgetExceeded {
                required: 625,
                budget: 100
            })
        );
    }

    #[test]
    fn enumeration_l_filter() {
        let config = EnumerationConfig {
            l_range: Some((0, 0)),
            ..EnumerationConfig::default()
        };
        let catalog = enumerate_elementary(params(3), &config).unwrap();
        assert_eq!(catalog.entries.len(), 1);
        assert_eq!(catalog.entries[0].unit_columns, vec![0, 0]);
    }

    #[test]
    fn phases_do_not_disturb_modulus_checks() {
        let theta = 2.399; // arbitrary unimodular direction
        let phased = elementary_p3()
            .with_phases(vec![
                Complex64::new(libm::cos(theta), libm::sin(theta)),
                Complex64::new(libm::cos(-theta), libm::sin(-theta)),
            ])
            .unwrap()
            .generate();
        let plain = elementary_p3().generate();

        assert_eq!(
            phased.necessary_condition(DEFAULT_EPS),
            plain.necessary_condition(DEFAULT_EPS)
        );
        let rp = mra_report(&phased, 2, DEFAULT_EPS);
        let rq = mra_report(&plain, 2, DEFAULT_EPS);
        assert_eq!(rp.verdict, rq.verdict);
        assert!(rp.verdict);
        assert_eq!(rp.support_exponent, rq.support_exponent);
        assert_eq!(rp.support_min_shell, rq.support_min_shell);
    }
}
