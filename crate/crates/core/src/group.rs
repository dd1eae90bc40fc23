//! Exact arithmetic for the p-adic Vilenkin group.
//!
//! Elements are finitely supported digit vectors over integer positions,
//! added coordinate-wise mod `p` (a 1 is never carried to the next
//! position). Characters are finitely supported exponent words in the
//! Rademacher functions `r_n`, where `r_n` reads digit `n` off an element
//! as a `p`-th root of unity. The dilation operator shifts digits one
//! position down and acts on characters through the adjoint relation
//! `(chi A, x) = (chi, A x)`.
//!
//! The pairing between a character and an element is computed entirely in
//! `Z_p`; conversion to an actual complex root of unity happens in the
//! table layer (`stepfun`), never here.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::{Error, Result};

/// The prime order `p` shared by every cyclic factor, plus the derived
/// exact scale factors `p^n` (measures of subgroups and annihilators).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct GroupParams {
    p: u32,
}

impl GroupParams {
    /// Validates that `p` is prime.
    pub fn new(p: u32) -> Result<Self> {
        if is_prime(p) {
            Ok(Self { p })
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn prime(self) -> u32 {
        self.p
    }

    /// `p^n`, exact. Panics on overflow rather than wrapping; the table
    /// bounds used anywhere in this crate stay far below `u64::MAX`.
    pub fn pow(self, n: u32) -> u64 {
        u64::from(self.p)
            .checked_pow(n)
            .expect("p^n overflows u64")
    }

    /// `p^n` as a table length, or an error when it is not addressable.
    pub fn table_len(self, n: u32) -> Result<usize> {
        let len = u128::from(self.p)
            .checked_pow(n)
            .ok_or(Error::GridTooLarge(u128::MAX))?;
        usize::try_from(len).map_err(|_| Error::GridTooLarge(len))
    }

    pub(crate) fn check_same(self, other: Self) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::ParamsMismatch {
                left: self.p,
                right: other.p,
            })
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3u32;
    while (d as u64) * (d as u64) <= u64::from(p) {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// An element `x = sum a_n g_n` of the group, stored as its nonzero digits.
///
/// The map is kept canonical (no zero digits stored), so structural
/// equality coincides with equality in the group.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupElement {
    params: GroupParams,
    digits: BTreeMap<i32, u32>,
}

impl GroupElement {
    /// The identity element.
    pub fn zero(params: GroupParams) -> Self {
        Self {
            params,
            digits: BTreeMap::new(),
        }
    }

    /// The basis element `g_n`: digit 1 at position `n`.
    pub fn basis(params: GroupParams, n: i32) -> Self {
        let mut digits = BTreeMap::new();
        digits.insert(n, 1);
        Self { params, digits }
    }

    /// Builds an element from `(position, digit)` pairs. Zero digits are
    /// dropped; digits outside `0..p` are rejected.
    pub fn from_digits(
        params: GroupParams,
        digits: impl IntoIterator<Item = (i32, u32)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (pos, digit) in digits {
            if digit >= params.p {
                return Err(Error::DigitOutOfRange {
                    digit,
                    p: params.p,
                });
            }
            if digit != 0 {
                map.insert(pos, digit);
            }
        }
        Ok(Self {
            params,
            digits: map,
        })
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    /// The digit at `position` (0 when absent).
    pub fn digit(&self, position: i32) -> u32 {
        self.digits.get(&position).copied().unwrap_or(0)
    }

    /// Nonzero digits in position order.
    pub fn digits(&self) -> impl Iterator<Item = (i32, u32)> + '_ {
        self.digits.iter().map(|(&pos, &d)| (pos, d))
    }

    pub fn is_zero(&self) -> bool {
        self.digits.is_empty()
    }

    /// Least position carrying a nonzero digit.
    pub fn min_position(&self) -> Option<i32> {
        self.digits.keys().next().copied()
    }

    /// Membership in the subgroup `G_n`: every nonzero digit sits at a
    /// position `>= n`.
    pub fn in_subgroup(&self, n: i32) -> bool {
        self.min_position().is_none_or(|min| min >= n)
    }

    /// Coordinate-wise addition mod p; no digit is ever carried.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.params.check_same(other.params)?;
        let p = self.params.p;
        let mut digits = self.digits.clone();
        for (&pos, &d) in &other.digits {
            let sum = (digits.get(&pos).copied().unwrap_or(0) + d) % p;
            if sum == 0 {
                digits.remove(&pos);
            } else {
                digits.insert(pos, sum);
            }
        }
        Ok(Self {
            params: self.params,
            digits,
        })
    }

    /// The group inverse: digit-wise `(p - a) mod p`.
    pub fn neg(&self) -> Self {
        let p = self.params.p;
        let digits = self
            .digits
            .iter()
            .map(|(&pos, &d)| (pos, p - d))
            .collect();
        Self {
            params: self.params,
            digits,
        }
    }

    /// `x - other` in the group (`x + neg(other)`).
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// `A^n x`: each digit moves from position `k` to position `k - n`.
    /// Additive: `A(x + y) = A x + A y`.
    pub fn dilate(&self, n: i32) -> Self {
        let digits = self
            .digits
            .iter()
            .map(|(&pos, &d)| (pos - n, d))
            .collect();
        Self {
            params: self.params,
            digits,
        }
    }
}

/// A coset representative `zeta = prod_k r_k^{alpha_k}` in the character
/// group, stored as its nonzero Rademacher exponents.
///
/// Canonical like [`GroupElement`]: no zero exponents are kept.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CharacterWord {
    params: GroupParams,
    exponents: BTreeMap<i32, u32>,
}

impl CharacterWord {
    /// The trivial character.
    pub fn identity(params: GroupParams) -> Self {
        Self {
            params,
            exponents: BTreeMap::new(),
        }
    }

    /// The Rademacher function `r_n`, the character reading digit `n`.
    pub fn rademacher(params: GroupParams, n: i32) -> Self {
        let mut exponents = BTreeMap::new();
        exponents.insert(n, 1);
        Self { params, exponents }
    }

    /// Builds a word from `(position, exponent)` pairs.
    pub fn from_exponents(
        params: GroupParams,
        exponents: impl IntoIterator<Item = (i32, u32)>,
    ) -> Result<Self> {
        let element = GroupElement::from_digits(params, exponents)?;
        Ok(Self {
            params,
            exponents: element.digits,
        })
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn exponent(&self, position: i32) -> u32 {
        self.exponents.get(&position).copied().unwrap_or(0)
    }

    /// Nonzero exponents in position order.
    pub fn exponents(&self) -> impl Iterator<Item = (i32, u32)> + '_ {
        self.exponents.iter().map(|(&pos, &e)| (pos, e))
    }

    pub fn is_identity(&self) -> bool {
        self.exponents.is_empty()
    }

    /// Greatest position carrying a nonzero exponent.
    pub fn max_position(&self) -> Option<i32> {
        self.exponents.keys().next_back().copied()
    }

    /// Membership in the annihilator `G_n^bot`: the character is trivial
    /// on `G_n` exactly when all its exponents sit at positions `<= n - 1`.
    pub fn in_annihilator(&self, n: i32) -> bool {
        self.max_position().is_none_or(|max| max < n)
    }

    /// Product of characters: exponent-wise addition mod p.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.params.check_same(other.params)?;
        let p = self.params.p;
        let mut exponents = self.exponents.clone();
        for (&pos, &e) in &other.exponents {
            let sum = (exponents.get(&pos).copied().unwrap_or(0) + e) % p;
            if sum == 0 {
                exponents.remove(&pos);
            } else {
                exponents.insert(pos, sum);
            }
        }
        Ok(Self {
            params: self.params,
            exponents,
        })
    }

    /// `zeta A^n`, the adjoint of element dilation: each exponent moves
    /// from position `k` to position `k + n`, so that
    /// `pair(zeta.dilate(n), x) = pair(zeta, x.dilate(n))`.
    ///
    /// In particular `A^{-1}` lowers every exponent one position, carrying
    /// `G_m^bot` onto `G_{m-1}^bot`.
    pub fn dilate(&self, n: i32) -> Self {
        let exponents = self
            .exponents
            .iter()
            .map(|(&pos, &e)| (pos + n, e))
            .collect();
        Self {
            params: self.params,
            exponents,
        }
    }

    /// The pairing exponent `e` with `(zeta, x) = exp(2 pi i e / p)`:
    /// `e = sum_k alpha_k a_k mod p`, exact.
    pub fn pair(&self, x: &GroupElement) -> u32 {
        assert_eq!(
            self.params, x.params,
            "pairing requires a common group order"
        );
        let p = self.params.p;
        let mut acc: u64 = 0;
        // both maps are sorted by position; walk the smaller one
        let (short, long): (&BTreeMap<i32, u32>, &BTreeMap<i32, u32>) =
            if self.exponents.len() <= x.digits.len() {
                (&self.exponents, &x.digits)
            } else {
                (&x.digits, &self.exponents)
            };
        for (pos, &a) in short {
            if let Some(&b) = long.get(pos) {
                acc += u64::from(a) * u64::from(b);
            }
        }
        (acc % u64::from(p)) as u32
    }
}

/// Enumerates `H_0^{(s)}`: all elements with digits confined to positions
/// `-s..-1`. Contains the identity; `p^s` elements in total.
pub fn shift_lattice(params: GroupParams, s: u32) -> Vec<GroupElement> {
    let len = params.pow(s);
    (0..len)
        .map(|mut code| {
            let mut digits = BTreeMap::new();
            for i in 0..s {
                let d = (code % u64::from(params.p)) as u32;
                code /= u64::from(params.p);
                if d != 0 {
                    digits.insert(-(i as i32) - 1, d);
                }
            }
            GroupElement { params, digits }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: u32) -> GroupParams {
        GroupParams::new(p).unwrap()
    }

    #[test]
    fn primality_is_checked() {
        assert!(GroupParams::new(2).is_ok());
        assert!(GroupParams::new(7).is_ok());
        assert_eq!(GroupParams::new(1), Err(Error::NotPrime(1)));
        assert_eq!(GroupParams::new(9), Err(Error::NotPrime(9)));
        assert_eq!(GroupParams::new(91), Err(Error::NotPrime(91))); // 7 * 13
    }

    #[test]
    fn scale_factors_are_exact() {
        let q = params(5);
        assert_eq!(q.pow(0), 1);
        assert_eq!(q.pow(3), 125);
        assert_eq!(q.table_len(6).unwrap(), 15_625);
    }

    #[test]
    fn addition_has_no_carry() {
        // p=3: 2 + 2 at position -1 wraps to 1 there, nothing moves up
        let q = params(3);
        let x = GroupElement::from_digits(q, [(-1, 2)]).unwrap();
        let sum = x.add(&x).unwrap();
        assert_eq!(sum, GroupElement::from_digits(q, [(-1, 1)]).unwrap());
        assert_eq!(sum.digit(0), 0);
    }

    #[test]
    fn zero_is_the_identity() {
        let q = params(5);
        let x = GroupElement::from_digits(q, [(-2, 3), (0, 1), (4, 4)]).unwrap();
        assert_eq!(x.add(&GroupElement::zero(q)).unwrap(), x);
    }

    #[test]
    fn canonical_form_drops_zero_digits() {
        let q = params(3);
        let x = GroupElement::from_digits(q, [(-1, 0), (2, 1), (5, 0)]).unwrap();
        assert_eq!(x.digits().count(), 1);
        assert_eq!(x, GroupElement::basis(q, 2));
        // cancellation during addition also trims
        let y = GroupElement::from_digits(q, [(2, 2)]).unwrap();
        assert!(x.add(&y).unwrap().is_zero());
    }

    #[test]
    fn digits_must_fit_the_order() {
        let q = params(3);
        assert_eq!(
            GroupElement::from_digits(q, [(0, 3)]),
            Err(Error::DigitOutOfRange { digit: 3, p: 3 })
        );
    }

    #[test]
    fn mismatched_orders_are_rejected() {
        let x = GroupElement::basis(params(3), 0);
        let y = GroupElement::basis(params(5), 0);
        assert_eq!(
            x.add(&y),
            Err(Error::ParamsMismatch { left: 3, right: 5 })
        );
    }

    #[test]
    fn negation_inverts() {
        let q = params(3);
        assert!(GroupElement::zero(q).neg().is_zero());
        assert_eq!(
            GroupElement::basis(q, 0).neg(),
            GroupElement::from_digits(q, [(0, 2)]).unwrap()
        );

        // every digit pattern over positions -2..=2 cancels against its inverse
        let q7 = params(7);
        for seed in 0..200u32 {
            let digits: Vec<(i32, u32)> = (-2..=2)
                .enumerate()
                .map(|(i, pos)| (pos, (seed.wrapping_mul(31).wrapping_add(i as u32 * 17)) % 7))
                .collect();
            let x = GroupElement::from_digits(q7, digits).unwrap();
            assert!(x.add(&x.neg()).unwrap().is_zero());
        }
    }

    #[test]
    fn dilation_shifts_digits_down() {
        let q = params(3);
        assert_eq!(
            GroupElement::basis(q, 0).dilate(1),
            GroupElement::basis(q, -1)
        );
        let x = GroupElement::from_digits(q, [(-1, 2), (3, 1)]).unwrap();
        assert_eq!(x.dilate(0), x);
        assert_eq!(x.dilate(3).dilate(-3), x);
    }

    #[test]
    fn subgroup_membership_reads_the_lowest_digit() {
        let q = params(3);
        let x = GroupElement::from_digits(q, [(-1, 1), (2, 2)]).unwrap();
        assert!(x.in_subgroup(-1));
        assert!(!x.in_subgroup(0));
        assert!(GroupElement::zero(q).in_subgroup(7));
    }

    #[test]
    fn rademacher_pairing_reads_a_single_digit() {
        let q = params(5);
        for n in -3..=3 {
            for k in -3..=3 {
                let r = CharacterWord::rademacher(q, n);
                let g = GroupElement::basis(q, k);
                assert_eq!(r.pair(&g), u32::from(n == k));
            }
        }
    }

    #[test]
    fn pairing_sums_products_mod_p() {
        // p=3, zeta = r_{-1}^2 r_0^1, x = 2 g_{-1} + 2 g_0:
        // (2*2 + 1*2) mod 3 = 0
        let q = params(3);
        let zeta = CharacterWord::from_exponents(q, [(-1, 2), (0, 1)]).unwrap();
        let x = GroupElement::from_digits(q, [(-1, 2), (0, 2)]).unwrap();
        assert_eq!(zeta.pair(&x), 0);
    }

    #[test]
    fn character_dilation_is_the_pairing_adjoint() {
        let q = params(5);
        let zeta = CharacterWord::from_exponents(q, [(-2, 3), (0, 1), (1, 4)]).unwrap();
        let x = GroupElement::from_digits(q, [(-3, 1), (-1, 2), (2, 4)]).unwrap();
        for n in -4..=4 {
            assert_eq!(zeta.dilate(n).pair(&x), zeta.pair(&x.dilate(n)));
        }
        assert_eq!(zeta.dilate(0), zeta);
        assert_eq!(zeta.dilate(2).dilate(-2), zeta);
    }

    #[test]
    fn rademacher_words_shift_under_dilation() {
        // r_k A lands on r_{k+1}: verified through the pairing against all
        // basis elements in a window, which pins the word uniquely.
        let q = params(3);
        for k in -2..=2 {
            let lifted = CharacterWord::rademacher(q, k).dilate(1);
            for j in -4..=4 {
                let g = GroupElement::basis(q, j);
                assert_eq!(lifted.pair(&g), CharacterWord::rademacher(q, k + 1).pair(&g));
            }
            assert_eq!(lifted, CharacterWord::rademacher(q, k + 1));
        }
    }

    #[test]
    fn annihilator_membership() {
        let q = params(3);
        let r = CharacterWord::rademacher(q, 0);
        assert!(r.in_annihilator(1)); // r_0 trivial on G_1
        assert!(!r.in_annihilator(0));
        assert!(CharacterWord::identity(q).in_annihilator(-9));
    }

    #[test]
    fn annihilator_pairs_trivially_with_subgroup() {
        // zeta in G_n^bot and x in G_n force pair = 0; small exhaustive sweep
        for p in [2u32, 3] {
            let q = params(p);
            for n in -1..=1 {
                for e1 in 0..p {
                    for e2 in 0..p {
                        let zeta =
                            CharacterWord::from_exponents(q, [(n - 2, e1), (n - 1, e2)]).unwrap();
                        assert!(zeta.in_annihilator(n));
                        for d1 in 0..p {
                            for d2 in 0..p {
                                let x = GroupElement::from_digits(q, [(n, d1), (n + 1, d2)])
                                    .unwrap();
                                assert!(x.in_subgroup(n));
                                assert_eq!(zeta.pair(&x), 0);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn character_product_is_exponentwise() {
        let q = params(3);
        let a = CharacterWord::from_exponents(q, [(0, 2), (1, 1)]).unwrap();
        let b = CharacterWord::from_exponents(q, [(0, 1), (2, 2)]).unwrap();
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab.exponent(0), 0);
        assert_eq!(ab.exponent(1), 1);
        assert_eq!(ab.exponent(2), 2);
    }

    #[test]
    fn shift_lattice_enumerates_negative_digit_words() {
        let q = params(3);
        let lattice = shift_lattice(q, 2);
        assert_eq!(lattice.len(), 9);
        assert!(lattice[0].is_zero());
        for h in &lattice {
            assert!(h.in_subgroup(-2));
            assert!(h.digit(0) == 0 && h.digit(-3) == 0);
        }
        // all distinct
        for (i, a) in lattice.iter().enumerate() {
            for b in &lattice[i + 1..] {
                assert_ne!(a, b);
            }
        }
    }

    #[test]
    fn group_axioms_exhaustive_small_grids() {
        // all triples over positions -2..=2 for p = 2; pairs plus a strided
        // set of triples for p = 3 keep the sweep fast without losing the
        // exhaustive digit grids
        for p in [2u32, 3] {
            let q = params(p);
            let n = (p as u64).pow(5);
            let all: Vec<GroupElement> = (0..n)
                .map(|mut code| {
                    let mut digits = Vec::new();
                    for pos in -2..=2 {
                        digits.push((pos, (code % u64::from(p)) as u32));
                        code /= u64::from(p);
                    }
                    GroupElement::from_digits(q, digits).unwrap()
                })
                .collect();
            let zero = GroupElement::zero(q);
            let stride = if p == 2 { 1 } else { 7 };
            for x in &all {
                assert_eq!(x.add(&zero).unwrap(), *x);
                assert!(x.add(&x.neg()).unwrap().is_zero());
                for y in &all {
                    assert_eq!(x.add(y).unwrap(), y.add(x).unwrap());
                    for z in all.iter().step_by(stride) {
                        assert_eq!(
                            x.add(y).unwrap().add(z).unwrap(),
                            x.add(&y.add(z).unwrap()).unwrap()
                        );
                    }
                }
            }
        }
    }
}
