//! Characteristic polynomials of small matrices via the
//! Faddeev–LeVerrier recurrence, run on a scaled copy so integer inputs
//! come back with (near-)integer coefficients.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

/// Largest order accepted by [`char_poly`].
pub const MAX_CHAR_POLY_ORDER: usize = 16;

/// Monic coefficients of `det(xI - m)` in descending degree order:
/// `[1, c_1, ..., c_n]` representing `x^n + c_1 x^(n-1) + ... + c_n`.
pub fn char_poly(m: &DenseMatrix) -> Result<Vec<f64>> {
    let n = m.require_square()?;
    if n > MAX_CHAR_POLY_ORDER {
        return Err(Error::OrderTooLarge {
            n,
            max: MAX_CHAR_POLY_ORDER,
        });
    }

    // Scale so the recurrence works on entries of modest size, then undo:
    // if B = M/s then c_k(M) = c_k(B) * s^k.
    let s = m.max_abs().max(1.0);
    let scaled = DenseMatrix::new(n, n, m.entries().iter().map(|v| v / s).collect())
        .expect("scaling preserves validity");

    let mut coeffs = vec![0.0f64; n + 1];
    coeffs[0] = 1.0;
    let mut b = scaled.clone();
    #[allow(clippy::needless_range_loop)]
    for k in 1..=n {
        let c = -b.trace() / k as f64;
        coeffs[k] = c;
        if k < n {
            // b <- M (b + c I)
            let mut shifted = b.clone();
            for i in 0..n {
                shifted.set(i, i, shifted.get(i, i) + c);
            }
            b = scaled.matmul(&shifted);
        }
    }

    let mut pow = 1.0;
    for c in coeffs.iter_mut().skip(1) {
        pow *= s;
        *c *= pow;
    }
    Ok(coeffs)
}

/// Evaluates a descending-order coefficient list at a complex point
/// (Horner scheme).
pub fn eval_poly(coeffs: &[f64], x: Complex64) -> Complex64 {
    coeffs
        .iter()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
}
