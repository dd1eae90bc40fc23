use alloc::vec::Vec;
use num_complex::Complex64;

/// Table of the p-th roots of unity: `table[k] = exp(2*pi*i*k/p)`.
///
/// Character values always enter complex arithmetic through this table,
/// keyed by an exact mod-p exponent. libm is used even on std builds so
/// the tables are bit-identical across platforms.
pub(crate) fn unity_table(p: u32) -> Vec<Complex64> {
    let step = core::f64::consts::TAU / f64::from(p);
    (0..p)
        .map(|k| {
            if k == 0 {
                Complex64::new(1.0, 0.0)
            } else {
                let theta = step * f64::from(k);
                Complex64::new(libm::cos(theta), libm::sin(theta))
            }
        })
        .collect()
}
