//! Step functions on the group and their Fourier transforms.
//!
//! A [`StepFunction`] is a function supported on `G_{-N}` and constant on
//! cosets of `G_M`; it is exactly its table of `p^(N+M)` complex values,
//! one per coset. A [`SpectralFunction`] is the dual object: supported on
//! `G_M^bot`, constant on cosets of `G_{-N}^bot`. The Fourier transform
//! maps one table bijectively onto the other over the same [`Grid`].
//!
//! Two transform paths are provided. `fourier`/`inverse_fourier` evaluate
//! the defining sums directly (the reference, `O(p^{2(N+M)})`), while the
//! `_fast` variants factor the kernel into `N+M` independent `p`-point
//! DFT passes (`O((N+M) p^{N+M+1})`) and must agree with the reference to
//! well below the crate tolerance.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::group::{CharacterWord, GroupElement, GroupParams};
use crate::roots::unity_table;
use crate::{Error, Result};

/// The finite coset grid shared by a step function and its transform:
/// digit positions `-N..M-1`, one axis of `p` values per position.
///
/// Flat index convention: the digit at position `-N` is least significant,
/// `index = sum_j c_j p^(j+N)`. (The mask module uses the opposite
/// significance order where the refinement system demands it.)
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Grid {
    params: GroupParams,
    n: u32,
    m: u32,
    len: usize,
}

impl Grid {
    pub fn new(params: GroupParams, n: u32, m: u32) -> Result<Self> {
        let len = params.table_len(n + m)?;
        Ok(Self { params, n, m, len })
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    /// Support depth: tables cover functions supported on `G_{-N}`.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Constancy depth: tables are constant on `G_M` cosets.
    pub fn m(&self) -> u32 {
        self.m
    }

    /// Number of cosets, `p^(N+M)`.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false // p^(N+M) >= 1 always
    }

    /// Number of digit axes, `N + M`.
    pub fn axes(&self) -> u32 {
        self.n + self.m
    }

    /// Digit positions covered by the grid, ascending.
    pub fn positions(&self) -> impl Iterator<Item = i32> {
        -(self.n as i32)..(self.m as i32)
    }

    /// Flat index of a digit tuple ordered by ascending position.
    pub fn index_of(&self, digits: &[u32]) -> usize {
        debug_assert_eq!(digits.len(), self.axes() as usize);
        let p = self.params.prime() as usize;
        digits
            .iter()
            .rev()
            .fold(0usize, |acc, &d| acc * p + d as usize)
    }

    /// Digit tuple of a flat index, ascending position order.
    pub fn decode(&self, index: usize) -> Vec<u32> {
        let mut digits = vec![0u32; self.axes() as usize];
        self.decode_into(index, &mut digits);
        digits
    }

    pub fn decode_into(&self, mut index: usize, digits: &mut [u32]) {
        let p = self.params.prime() as usize;
        for d in digits.iter_mut() {
            *d = (index % p) as u32;
            index /= p;
        }
    }

    /// The coset representative `h` for a flat index on the group side.
    pub fn element(&self, index: usize) -> GroupElement {
        let digits = self.decode(index);
        GroupElement::from_digits(
            self.params,
            self.positions().zip(digits.iter().copied()),
        )
        .expect("decoded digits are canonical")
    }

    /// The coset representative `zeta` for a flat index on the character side.
    pub fn character(&self, index: usize) -> CharacterWord {
        let digits = self.decode(index);
        CharacterWord::from_exponents(
            self.params,
            self.positions().zip(digits.iter().copied()),
        )
        .expect("decoded exponents are canonical")
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }
}

/// A function in `D_M(G_{-N})`: the dense value table over group cosets.
#[derive(Clone, PartialEq, Debug)]
pub struct StepFunction {
    grid: Grid,
    values: Vec<Complex64>,
}

/// A function in `D_{-N}(G_M^bot)`: the dense value table over character
/// cosets `G_{-N}^bot r_{-N}^{a_{-N}} ... r_{M-1}^{a_{M-1}}`.
#[derive(Clone, PartialEq, Debug)]
pub struct SpectralFunction {
    grid: Grid,
    values: Vec<Complex64>,
}

macro_rules! table_common {
    ($ty:ident) => {
        impl $ty {
            pub fn new(grid: Grid, values: Vec<Complex64>) -> Result<Self> {
                if values.len() != grid.len() {
                    return Err(Error::LengthMismatch {
                        expected: grid.len(),
                        got: values.len(),
                    });
                }
                Ok(Self { grid, values })
            }

            pub fn zero(grid: Grid) -> Self {
                Self {
                    grid,
                    values: vec![Complex64::new(0.0, 0.0); grid.len()],
                }
            }

            pub fn grid(&self) -> Grid {
                self.grid
            }

            pub fn values(&self) -> &[Complex64] {
                &self.values
            }

            pub fn value(&self, index: usize) -> Complex64 {
                self.values[index]
            }

            /// Value on the coset with the given digit tuple (ascending
            /// position order).
            pub fn value_at(&self, digits: &[u32]) -> Complex64 {
                self.values[self.grid.index_of(digits)]
            }

            /// Largest absolute difference against another table.
            pub fn max_distance(&self, other: &Self) -> Result<f64> {
                self.grid.check_same(&other.grid)?;
                Ok(self
                    .values
                    .iter()
                    .zip(&other.values)
                    .map(|(a, b)| (a - b).norm())
                    .fold(0.0, f64::max))
            }
        }
    };
}

table_common!(StepFunction);
table_common!(SpectralFunction);

impl StepFunction {
    /// The indicator `1_{G_level}`. Representable for `-N <= level <= M`.
    pub fn indicator_subgroup(grid: Grid, level: i32) -> Result<Self> {
        if level < -(grid.n as i32) || level > grid.m as i32 {
            return Err(Error::InvalidEmbedding);
        }
        let mut f = Self::zero(grid);
        let mut digits = vec![0u32; grid.axes() as usize];
        for idx in 0..grid.len() {
            grid.decode_into(idx, &mut digits);
            let inside = grid
                .positions()
                .zip(digits.iter())
                .all(|(pos, &d)| pos >= level || d == 0);
            if inside {
                f.values[idx] = Complex64::new(1.0, 0.0);
            }
        }
        Ok(f)
    }

    /// `f(x - h)`, re-indexing the table by coset representatives.
    ///
    /// `h` must lie in `G_{-N}` (digits at positions `>= -N`); a digit
    /// below the grid would move the support outside `G_{-N}`, which is
    /// reported instead of silently enlarging the grid. Digits of `h` at
    /// positions `>= M` are immaterial by `G_M`-constancy.
    pub fn shift(&self, h: &GroupElement) -> Result<Self> {
        self.grid.params.check_same(h.params())?;
        if let Some(min) = h.min_position() {
            if min < -(self.grid.n as i32) {
                return Err(Error::ShiftOutsideSupport { position: min });
            }
        }
        let p = self.grid.params.prime();
        let offsets: Vec<u32> = self.grid.positions().map(|pos| h.digit(pos)).collect();
        let mut out = Self::zero(self.grid);
        let mut digits = vec![0u32; self.grid.axes() as usize];
        for idx in 0..self.grid.len() {
            self.grid.decode_into(idx, &mut digits);
            for (d, &off) in digits.iter_mut().zip(&offsets) {
                *d = (*d + p - off) % p;
            }
            out.values[idx] = self.values[self.grid.index_of(&digits)];
        }
        Ok(out)
    }

    /// `integral f conj(g) d mu = p^{-M} sum f conj(g)`.
    pub fn inner_product(&self, other: &Self) -> Result<Complex64> {
        self.grid.check_same(&other.grid)?;
        let sum: Complex64 = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b.conj())
            .sum();
        Ok(sum / self.grid.params.pow(self.grid.m) as f64)
    }

    pub fn norm_sqr(&self) -> f64 {
        let sum: f64 = self.values.iter().map(|v| v.norm_sqr()).sum();
        sum / self.grid.params.pow(self.grid.m) as f64
    }

    /// The table of `f(A^n x)` on the rescaled grid `(N - n, M + n)`.
    ///
    /// Digit tuples transport unchanged; only the grid labels move, so
    /// this is a relabeling of the same value vector.
    pub fn dilate(&self, n: i32) -> Result<Self> {
        let new_n = self.grid.n as i64 - i64::from(n);
        let new_m = self.grid.m as i64 + i64::from(n);
        if new_n < 0 || new_m < 0 {
            return Err(Error::DilationOutOfRange(n));
        }
        let grid = Grid::new(self.grid.params, new_n as u32, new_m as u32)?;
        Ok(Self {
            grid,
            values: self.values.clone(),
        })
    }

    /// Re-tabulates the same L2 function on a finer grid with `n >= N`,
    /// `m >= M`: cosets outside `G_{-N}` get 0, refined cosets copy their
    /// parent value.
    pub fn embed(&self, n: u32, m: u32) -> Result<Self> {
        if n < self.grid.n || m < self.grid.m {
            return Err(Error::InvalidEmbedding);
        }
        let grid = Grid::new(self.grid.params, n, m)?;
        let mut out = Self::zero(grid);
        let mut digits = vec![0u32; grid.axes() as usize];
        let low = (n - self.grid.n) as usize;
        let inner = self.grid.axes() as usize;
        for idx in 0..grid.len() {
            grid.decode_into(idx, &mut digits);
            if digits[..low].iter().any(|&d| d != 0) {
                continue; // support stays inside G_{-N}
            }
            out.values[idx] = self.values[self.grid.index_of(&digits[low..low + inner])];
        }
        Ok(out)
    }

    /// The Fourier transform, evaluated term by term from the defining
    /// coset sums: `fhat(zeta) = p^{-M} sum_h f(h) conj(omega^{<zeta,h>})`.
    pub fn fourier(&self) -> SpectralFunction {
        let grid = self.grid;
        let table = unity_table(grid.params.prime());
        let p = grid.params.prime();
        let elements: Vec<GroupElement> = (0..grid.len()).map(|i| grid.element(i)).collect();
        let scale = 1.0 / grid.params.pow(grid.m) as f64;
        let mut values = vec![Complex64::new(0.0, 0.0); grid.len()];
        for (j, value) in values.iter_mut().enumerate() {
            let zeta = grid.character(j);
            let mut acc = Complex64::new(0.0, 0.0);
            for (i, h) in elements.iter().enumerate() {
                let e = zeta.pair(h);
                acc += self.values[i] * table[((p - e) % p) as usize];
            }
            *value = acc * scale;
        }
        SpectralFunction { grid, values }
    }

    /// Radix-p factorized transform; agrees with [`Self::fourier`] to
    /// roundoff.
    pub fn fourier_fast(&self) -> SpectralFunction {
        let grid = self.grid;
        let mut values = self.values.clone();
        tensor_dft(&mut values, grid.params.prime(), grid.axes(), true);
        let scale = 1.0 / grid.params.pow(grid.m) as f64;
        for v in &mut values {
            *v *= scale;
        }
        SpectralFunction { grid, values }
    }
}

impl SpectralFunction {
    /// The indicator `1_{G_level^bot}`. Representable for
    /// `-N <= level <= M`.
    pub fn indicator_annihilator(grid: Grid, level: i32) -> Result<Self> {
        if level < -(grid.n as i32) || level > grid.m as i32 {
            return Err(Error::InvalidEmbedding);
        }
        let mut f = Self::zero(grid);
        let mut digits = vec![0u32; grid.axes() as usize];
        for idx in 0..grid.len() {
            grid.decode_into(idx, &mut digits);
            let inside = grid
                .positions()
                .zip(digits.iter())
                .all(|(pos, &e)| pos < level || e == 0);
            if inside {
                f.values[idx] = Complex64::new(1.0, 0.0);
            }
        }
        Ok(f)
    }

    /// `integral F conj(G) d nu = p^{-N} sum F conj(G)`.
    pub fn inner_product(&self, other: &Self) -> Result<Complex64> {
        self.grid.check_same(&other.grid)?;
        let sum: Complex64 = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b.conj())
            .sum();
        Ok(sum / self.grid.params.pow(self.grid.n) as f64)
    }

    pub fn norm_sqr(&self) -> f64 {
        let sum: f64 = self.values.iter().map(|v| v.norm_sqr()).sum();
        sum / self.grid.params.pow(self.grid.n) as f64
    }

    /// The table of `F(chi A^n)` on the grid `(N + n, M - n)`; a pure
    /// relabeling like [`StepFunction::dilate`].
    pub fn dilate(&self, n: i32) -> Result<Self> {
        let new_n = self.grid.n as i64 + i64::from(n);
        let new_m = self.grid.m as i64 - i64::from(n);
        if new_n < 0 || new_m < 0 {
            return Err(Error::DilationOutOfRange(n));
        }
        let grid = Grid::new(self.grid.params, new_n as u32, new_m as u32)?;
        Ok(Self {
            grid,
            values: self.values.clone(),
        })
    }

    /// Finer tabulation of the same function: exponent tuples reaching
    /// positions `>= M` fall outside `G_M^bot` and get 0; exponents below
    /// `-N` are absorbed by `G_{-N}^bot`-constancy.
    pub fn embed(&self, n: u32, m: u32) -> Result<Self> {
        if n < self.grid.n || m < self.grid.m {
            return Err(Error::InvalidEmbedding);
        }
        let grid = Grid::new(self.grid.params, n, m)?;
        let mut out = Self::zero(grid);
        let mut digits = vec![0u32; grid.axes() as usize];
        let low = (n - self.grid.n) as usize;
        let inner = self.grid.axes() as usize;
        for idx in 0..grid.len() {
            grid.decode_into(idx, &mut digits);
            if digits[low + inner..].iter().any(|&e| e != 0) {
                continue; // outside the support G_M^bot
            }
            out.values[idx] = self.values[self.grid.index_of(&digits[low..low + inner])];
        }
        Ok(out)
    }

    /// The inverse transform from the coset integral formula:
    /// `f(h) = p^{-N} sum_zeta F(zeta) omega^{<zeta,h>}`.
    pub fn inverse_fourier(&self) -> StepFunction {
        let grid = self.grid;
        let table = unity_table(grid.params.prime());
        let characters: Vec<CharacterWord> =
            (0..grid.len()).map(|j| grid.character(j)).collect();
        let scale = 1.0 / grid.params.pow(grid.n) as f64;
        let mut values = vec![Complex64::new(0.0, 0.0); grid.len()];
        for (i, value) in values.iter_mut().enumerate() {
            let h = grid.element(i);
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, zeta) in characters.iter().enumerate() {
                acc += self.values[j] * table[zeta.pair(&h) as usize];
            }
            *value = acc * scale;
        }
        StepFunction { grid, values }
    }

    /// Radix-p factorized inverse; agrees with [`Self::inverse_fourier`]
    /// to roundoff.
    pub fn inverse_fourier_fast(&self) -> StepFunction {
        let grid = self.grid;
        let mut values = self.values.clone();
        tensor_dft(&mut values, grid.params.prime(), grid.axes(), false);
        let scale = 1.0 / grid.params.pow(grid.n) as f64;
        for v in &mut values {
            *v *= scale;
        }
        StepFunction { grid, values }
    }
}

/// In-place tensor-product DFT: one unnormalized `p`-point pass per digit
/// axis. The kernel is diagonal in the pairing, so no inter-stage twiddle
/// factors arise. `conjugate` selects `omega^{-rc}` (forward) over
/// `omega^{+rc}` (inverse).
fn tensor_dft(values: &mut [Complex64], p: u32, axes: u32, conjugate: bool) {
    let roots = unity_table(p);
    let p = p as usize;
    let mut kernel = vec![Complex64::new(0.0, 0.0); p * p];
    for r in 0..p {
        for c in 0..p {
            let w = roots[r * c % p];
            kernel[r * p + c] = if conjugate { w.conj() } else { w };
        }
    }
    let mut lane = vec![Complex64::new(0.0, 0.0); p];
    let mut stride = 1usize;
    for _ in 0..axes {
        let block = stride * p;
        let mut base = 0;
        while base < values.len() {
            for off in 0..stride {
                let start = base + off;
                for (c, l) in lane.iter_mut().enumerate() {
                    *l = values[start + c * stride];
                }
                for r in 0..p {
                    let row = &kernel[r * p..(r + 1) * p];
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (w, l) in row.iter().zip(&lane) {
                        acc += w * l;
                    }
                    values[start + r * stride] = acc;
                }
            }
            base += block;
        }
        stride = block;
    }
}
