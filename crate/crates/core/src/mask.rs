//! Refinement masks on character cosets.
//!
//! A mask is determined by its `p^(N+1)` values on the cosets
//! `G_{-N}^bot r_{-N}^{a_{-N}} ... r_0^{a_0}`: it is constant on
//! `G_{-N}^bot`-cosets (T1), periodic under any character supported at
//! positions `>= 1` (T2), and equal to 1 on `G_{-N}^bot` itself (T3).
//! Evaluation therefore projects an arbitrary character word onto the
//! exponent window `-N ..= 0` and reads the table.
//!
//! Storage order is `k = a_0 + a_{-1} p + ... + a_{-N} p^N` — the order in
//! which the coefficient system below is unitary. Satisfying T1-T3 does
//! not make a table a mask of an actual refinement equation; that is what
//! [`Mask::validity`] and [`Mask::scaling_function`] decide.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::group::{CharacterWord, GroupElement, GroupParams};
use crate::roots::unity_table;
use crate::stepfun::{Grid, SpectralFunction};
use crate::{Error, Result, DEFAULT_EPS};

/// Zero-coset lists larger than this are reported by count only.
const MAX_LISTED_COSETS: usize = 4096;

/// The transfer function `m_0` of a refinement equation, tabulated on the
/// `p^(N+1)` cosets that determine it.
#[derive(Clone, PartialEq, Debug)]
pub struct Mask {
    params: GroupParams,
    n: u32,
    values: Vec<Complex64>,
}

impl Mask {
    /// Builds a mask table. `n >= 1`, the table length must be `p^(n+1)`,
    /// and the identity-coset entry must be 1 (condition T3, checked to
    /// [`DEFAULT_EPS`]).
    pub fn new(params: GroupParams, n: u32, values: Vec<Complex64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpec(format!(
                "mask depth N must be >= 1, got {n}"
            )));
        }
        let expected = params.table_len(n + 1)?;
        if values.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                got: values.len(),
            });
        }
        let deviation = (values[0] - Complex64::new(1.0, 0.0)).norm();
        if deviation > DEFAULT_EPS {
            return Err(Error::UnitValueRequired(deviation));
        }
        Ok(Self { params, n, values })
    }

    /// The mask of the Haar refinement equation: 1 exactly when the
    /// exponent at position 0 vanishes.
    pub fn haar(params: GroupParams, n: u32) -> Self {
        let p = params.prime() as usize;
        let len = params.table_len(n + 1).expect("desk-scale table");
        let values = (0..len)
            .map(|k| Complex64::new(f64::from(k % p == 0), 0.0))
            .collect();
        Self { params, n, values }
    }

    /// Builds an `N = 1` mask from the `lambda` table indexed by
    /// `a_{-1} + a_0 p` (the matrix layout of the elementary
    /// constructions), converting to storage order.
    pub fn from_lambda(params: GroupParams, lambda: &[Complex64]) -> Result<Self> {
        let p = params.prime() as usize;
        if lambda.len() != p * p {
            return Err(Error::LengthMismatch {
                expected: p * p,
                got: lambda.len(),
            });
        }
        let mut values = vec![Complex64::new(0.0, 0.0); p * p];
        for a_m1 in 0..p {
            for a_0 in 0..p {
                values[a_0 + a_m1 * p] = lambda[a_m1 + a_0 * p];
            }
        }
        Self::new(params, 1, values)
    }

    /// The `lambda_{a_{-1} + a_0 p}` view of an `N = 1` mask.
    pub fn lambda_table(&self) -> Result<Vec<Complex64>> {
        if self.n != 1 {
            return Err(Error::InvalidSpec(format!(
                "lambda view requires N = 1, this mask has N = {}",
                self.n
            )));
        }
        let p = self.params.prime() as usize;
        let mut lambda = vec![Complex64::new(0.0, 0.0); p * p];
        for a_m1 in 0..p {
            for a_0 in 0..p {
                lambda[a_m1 + a_0 * p] = self.values[a_0 + a_m1 * p];
            }
        }
        Ok(lambda)
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Raw table in storage order `k = a_0 + a_{-1} p + ... + a_{-N} p^N`.
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Value at an exponent tuple over positions `-N ..= 0`, ascending.
    pub fn value_at(&self, alphas: &[u32]) -> Complex64 {
        debug_assert_eq!(alphas.len(), self.n as usize + 1);
        let p = self.params.prime() as usize;
        let k = alphas
            .iter()
            .fold(0usize, |acc, &a| acc * p + a as usize);
        self.values[k]
    }

    /// Evaluates the mask at any character word: exponents at positions
    /// `>= 1` are erased by periodicity, exponents below `-N` by constancy
    /// on `G_{-N}^bot`-cosets, and the projected tuple indexes the table.
    pub fn evaluate(&self, zeta: &CharacterWord) -> Complex64 {
        let window: Vec<u32> = (-(self.n as i32)..=0).map(|pos| zeta.exponent(pos)).collect();
        self.value_at(&window)
    }

    /// Reconstructs the mask from refinement coefficients:
    /// `m_0(chi_k) = (1/p) sum_l beta_l conj(omega^{<chi_k, A^{-1} h_l>})`,
    /// pairings exact.
    pub fn from_coefficients(beta: &CoefficientVector) -> Result<Self> {
        let params = beta.params;
        let n = beta.n;
        let p = params.prime();
        let table = unity_table(p);
        let len = beta.entries.len();
        let dilated: Vec<GroupElement> =
            (0..len).map(|l| beta.element(l).dilate(-1)).collect();
        let mut values = vec![Complex64::new(0.0, 0.0); len];
        for (k, value) in values.iter_mut().enumerate() {
            let chi = character_for(params, n, k);
            let mut acc = Complex64::new(0.0, 0.0);
            for (l, h) in dilated.iter().enumerate() {
                let e = chi.pair(h);
                acc += beta.entries[l] * table[((p - e) % p) as usize];
            }
            *value = acc / f64::from(p);
        }
        Self::new(params, n, values)
    }

    /// Solves the coefficient system for this mask. The system matrix
    /// `p^{-(N+1)/2} conj((chi_k, A^{-1} h_l))` is unitary, so the solve
    /// is a single product with the conjugate transpose:
    /// `beta_l = p^{-N} sum_k m_0(chi_k) omega^{<chi_k, A^{-1} h_l>}`.
    pub fn coefficients(&self) -> CoefficientVector {
        let p = self.params.prime();
        let table = unity_table(p);
        let len = self.values.len();
        let characters: Vec<CharacterWord> =
            (0..len).map(|k| character_for(self.params, self.n, k)).collect();
        let scale = 1.0 / self.params.pow(self.n) as f64;
        let mut entries = vec![Complex64::new(0.0, 0.0); len];
        for (l, entry) in entries.iter_mut().enumerate() {
            let h = element_for(self.params, self.n, l).dilate(-1);
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, chi) in characters.iter().enumerate() {
                acc += self.values[k] * table[chi.pair(&h) as usize];
            }
            *entry = acc * scale;
        }
        CoefficientVector {
            params: self.params,
            n: self.n,
            entries,
        }
    }

    /// The truncated scaling product `prod_k m_0(zeta A^{-k})` at the
    /// character with exponent tuple `alphas` over positions
    /// `-N .. alphas.len() - N`. Factors degenerate to 1 once every
    /// exponent has dropped below `-N`, so the product is finite.
    pub fn orbit_product(&self, alphas: &[u32]) -> Complex64 {
        let width = self.n as usize + 1;
        let mut window = vec![0u32; width];
        let mut acc = Complex64::new(1.0, 0.0);
        for k in 0..alphas.len() {
            for (i, w) in window.iter_mut().enumerate() {
                *w = alphas.get(k + i).copied().unwrap_or(0);
            }
            acc *= self.value_at(&window);
        }
        acc
    }

    fn orbit_has_zero_factor(&self, alphas: &[u32], eps: f64) -> bool {
        let width = self.n as usize + 1;
        let mut window = vec![0u32; width];
        for k in 0..alphas.len() {
            for (i, w) in window.iter_mut().enumerate() {
                *w = alphas.get(k + i).copied().unwrap_or(0);
            }
            if self.value_at(&window).norm() <= eps {
                return true;
            }
        }
        false
    }

    /// Whether the truncated product vanishes identically on the shell
    /// `G_level^bot \ G_{level-1}^bot`.
    fn shell_vanishes(&self, level: u32, eps: f64) -> bool {
        self.for_each_shell_coset(level, |product, _| product.norm() <= eps)
    }

    /// Runs `check` on every coset of the shell at `level`; short-circuits
    /// on the first failure. The closure receives the truncated product
    /// and the exponent tuple.
    fn for_each_shell_coset(
        &self,
        level: u32,
        mut check: impl FnMut(Complex64, &[u32]) -> bool,
    ) -> bool {
        let p = self.params.prime();
        let lower_axes = self.n + level - 1; // positions -N .. level-2
        let lower_len = self.params.pow(lower_axes);
        let mut alphas = vec![0u32; lower_axes as usize + 1];
        for top in 1..p {
            for mut code in 0..lower_len {
                for slot in alphas.iter_mut().take(lower_axes as usize) {
                    *slot = (code % u64::from(p)) as u32;
                    code /= u64::from(p);
                }
                alphas[lower_axes as usize] = top;
                if !check(self.orbit_product(&alphas), &alphas) {
                    return false;
                }
            }
        }
        true
    }

    /// Finds the least `M <= m_max` for which the scaling product has
    /// support in `G_M^bot` — i.e. the truncated product vanishes on the
    /// whole shell at level `M + 1` — and tabulates
    /// `phihat(chi) = prod_k m_0(chi A^{-k})` on the `(N, M)` grid.
    ///
    /// Fails with [`Error::NoFiniteSupport`] when no cap works, which by
    /// the validity criterion means the table is not a mask on any class
    /// up to `m_max`.
    pub fn scaling_function(&self, m_max: u32, eps: f64) -> Result<(SpectralFunction, u32)> {
        for m in 0..=m_max {
            if !self.shell_vanishes(m + 1, eps) {
                continue;
            }
            let grid = Grid::new(self.params, self.n, m)?;
            let mut alphas = vec![0u32; grid.axes() as usize];
            let values = (0..grid.len())
                .map(|idx| {
                    grid.decode_into(idx, &mut alphas);
                    self.orbit_product(&alphas)
                })
                .collect();
            let spectrum = SpectralFunction::new(grid, values)?;
            return Ok((spectrum, m));
        }
        Err(Error::NoFiniteSupport { m_max })
    }

    /// Whether `F` satisfies the spectral refinement identity
    /// `F(zeta) = m_0(zeta) F(zeta A^{-1})` on every coset of the
    /// `(N, M+1)` grid, within `eps`.
    pub fn refinement_check(&self, spectrum: &SpectralFunction, eps: f64) -> Result<bool> {
        self.params.check_same(spectrum.grid().params())?;
        if spectrum.grid().n() != self.n {
            return Err(Error::GridMismatch);
        }
        let grid = spectrum.grid();
        let p = self.params.prime();
        let axes = grid.axes() as usize + 1; // positions -N ..= M
        let total = self.params.pow(axes as u32);
        let mut tuple = vec![0u32; axes];
        for mut code in 0..total {
            for slot in tuple.iter_mut() {
                *slot = (code % u64::from(p)) as u32;
                code /= u64::from(p);
            }
            // F embedded on the (N, M+1) grid: zero once the top exponent
            // escapes G_M^bot
            let lhs = if tuple[axes - 1] != 0 {
                Complex64::new(0.0, 0.0)
            } else {
                spectrum.value(grid.index_of(&tuple[..axes - 1]))
            };
            // zeta A^{-1} drops every exponent one position; its bottom
            // exponent falls below -N and is absorbed by constancy
            let factor = self.value_at(&tuple[..=self.n as usize]);
            let rhs = spectrum.value(grid.index_of(&tuple[1..]));
            if (lhs - factor * rhs).norm() > eps {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The row-sum test every mask of a refinement equation must pass:
    /// `sum_{a_0} |m_0|^2 = 1` for each fixed tuple `(a_{-N},...,a_{-1})`.
    pub fn necessary_condition(&self, eps: f64) -> bool {
        let p = self.params.prime() as usize;
        let rows = self.values.len() / p;
        (0..rows).all(|r| {
            let sum: f64 = (0..p).map(|a0| self.values[a0 + r * p].norm_sqr()).sum();
            (sum - 1.0).abs() <= eps
        })
    }

    /// Checks both halves of the mask-validity criterion at support level
    /// `m`: (a) the truncated product vanishes on the shell at `m + 1`,
    /// and (b) the zero sets `E_k` of the mask, dilated to that shell,
    /// cover it. The two must agree; the report records both verdicts and
    /// the per-shell zero-coset lists.
    pub fn validity(&self, m: u32, eps: f64) -> ValidityReport {
        let p = self.params.prime();
        let n = self.n;

        // (a) + (b) in one sweep over the target shell: the product
        // vanishes within eps, and some single factor vanishes within eps
        let mut product_vanishes = true;
        let mut cover_complete = true;
        let mut shell_size: u64 = 0;
        self.for_each_shell_coset(m + 1, |product, alphas| {
            shell_size += 1;
            if product.norm() > eps {
                product_vanishes = false;
            }
            if !self.orbit_has_zero_factor(alphas, eps) {
                cover_complete = false;
            }
            true // always continue; both flags must see every coset
        });

        // the zero sets E_k themselves, k = -N+1 ..= m+1
        let mut zero_sets = Vec::new();
        for k in (-(n as i32) + 1)..=(m as i32 + 1) {
            let axes = (n as i32 + k) as u32; // positions -N ..= k-1
            let lower = self.params.pow(axes - 1);
            let mut cosets = Vec::new();
            let mut count: u64 = 0;
            let mut tuple = vec![0u32; axes as usize];
            let mut window = vec![0u32; n as usize + 1];
            for top in 1..p {
                for mut code in 0..lower {
                    for slot in tuple.iter_mut().take(axes as usize - 1) {
                        *slot = (code % u64::from(p)) as u32;
                        code /= u64::from(p);
                    }
                    tuple[axes as usize - 1] = top;
                    // project onto positions -N ..= 0
                    for (i, w) in window.iter_mut().enumerate() {
                        *w = tuple.get(i).copied().unwrap_or(0);
                    }
                    if self.value_at(&window).norm() <= eps {
                        count += 1;
                        if cosets.len() < MAX_LISTED_COSETS {
                            cosets.push(tuple.clone());
                        }
                    }
                }
            }
            let truncated = count as usize > cosets.len();
            zero_sets.push(ZeroSet {
                level: k,
                count,
                cosets,
                truncated,
            });
        }

        ValidityReport {
            p,
            n,
            m,
            eps,
            shell_size,
            product_vanishes_on_shell: product_vanishes,
            cover_equals_shell: cover_complete,
            criteria_agree: product_vanishes == cover_complete,
            valid: product_vanishes,
            zero_sets,
        }
    }
}

/// The coefficients `beta_h` of the refinement sum, indexed by
/// `l = a_{-1} + a_{-2} p + ... + a_{-N-1} p^N` over the shift set
/// `H_0^{(N+1)}`.
#[derive(Clone, PartialEq, Debug)]
pub struct CoefficientVector {
    params: GroupParams,
    n: u32,
    entries: Vec<Complex64>,
}

impl CoefficientVector {
    pub fn new(params: GroupParams, n: u32, entries: Vec<Complex64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpec(format!(
                "coefficient depth N must be >= 1, got {n}"
            )));
        }
        let expected = params.table_len(n + 1)?;
        if entries.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                got: entries.len(),
            });
        }
        Ok(Self { params, n, entries })
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// The shift `h_l` with digits `a_{-1-i}` read off the base-p digits
    /// of `l`.
    pub fn element(&self, l: usize) -> GroupElement {
        element_for(self.params, self.n, l)
    }

    pub fn max_distance(&self, other: &Self) -> Result<f64> {
        self.params.check_same(other.params)?;
        if self.n != other.n {
            return Err(Error::GridMismatch);
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

/// `chi_k = r_{-N}^{a_{-N}} ... r_0^{a_0}` with
/// `k = a_0 + a_{-1} p + ... + a_{-N} p^N`.
fn character_for(params: GroupParams, n: u32, mut k: usize) -> CharacterWord {
    let p = params.prime() as usize;
    let exponents = (0..=n as i32).map(|i| {
        let e = (k % p) as u32;
        k /= p;
        (-i, e)
    });
    CharacterWord::from_exponents(params, exponents).expect("digits reduced mod p")
}

/// `h_l = a_{-1} g_{-1} + ... + a_{-N-1} g_{-N-1}` with
/// `l = a_{-1} + a_{-2} p + ... + a_{-N-1} p^N`.
fn element_for(params: GroupParams, n: u32, mut l: usize) -> GroupElement {
    let p = params.prime() as usize;
    let digits = (0..=n as i32).map(|i| {
        let d = (l % p) as u32;
        l /= p;
        (-i - 1, d)
    });
    GroupElement::from_digits(params, digits).expect("digits reduced mod p")
}

/// Verdicts and zero-set decomposition from [`Mask::validity`].
#[derive(Clone, PartialEq, Debug)]
pub struct ValidityReport {
    pub p: u32,
    pub n: u32,
    /// Support level the mask was tested against.
    pub m: u32,
    pub eps: f64,
    /// Cosets of `G_{-N}^bot` in the shell at level `m + 1`.
    pub shell_size: u64,
    /// The truncated product vanishes everywhere on that shell.
    pub product_vanishes_on_shell: bool,
    /// The dilated zero sets cover the shell coset by coset.
    pub cover_equals_shell: bool,
    /// The two criteria returned the same verdict.
    pub criteria_agree: bool,
    pub valid: bool,
    pub zero_sets: Vec<ZeroSet>,
}

/// The set `E_k`: cosets in the shell at `level` on which the mask
/// vanishes, listed as exponent tuples over positions `-N ..= level-1`.
#[derive(Clone, PartialEq, Debug)]
pub struct ZeroSet {
    pub level: i32,
    pub count: u64,
    pub cosets: Vec<Vec<u32>>,
    pub truncated: bool,
}
