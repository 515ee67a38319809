//! General real eigensolver: Parlett–Reinsch balancing, orthogonal
//! Hessenberg reduction and the Francis double-shift QR iteration
//! (EISPACK/Jama `orthes`/`hqr2` lineage, eigenvalues only).

// Index-based loops mirror the reference routines on purpose.
#![allow(clippy::needless_range_loop)]

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

/// All eigenvalues of a general real matrix as complex numbers (conjugate
/// pairs for complex roots). `budget` caps the total QR iteration count.
pub(crate) fn eigenvalues(m: &DenseMatrix, budget: usize) -> Result<Vec<Complex64>> {
    let n = m.order();
    if n == 1 {
        return Ok(vec![Complex64::new(m.get(0, 0), 0.0)]);
    }
    let mut h = m.clone();
    balance(&mut h);
    orthes(&mut h);
    hqr(&mut h, budget)
}

// Diagonal-similarity scaling so that row and column norms are comparable.
// Eigenvalues are unchanged; accuracy of the QR iteration improves.
fn balance(a: &mut DenseMatrix) {
    let n = a.order();
    let radix = 2.0f64;
    let sqrdx = radix * radix;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    c += a.get(j, i).abs();
                    r += a.get(i, j).abs();
                }
            }
            if c != 0.0 && r != 0.0 {
                let mut g = r / radix;
                let mut f = 1.0;
                let s = c + r;
                let mut c_work = c;
                while c_work < g {
                    f *= radix;
                    c_work *= sqrdx;
                }
                g = r * radix;
                while c_work > g {
                    f /= radix;
                    c_work /= sqrdx;
                }
                if (c_work + r) / f < 0.95 * s {
                    done = false;
                    let ginv = 1.0 / f;
                    for j in 0..n {
                        let v = a.get(i, j) * ginv;
                        a.set(i, j, v);
                    }
                    for j in 0..n {
                        let v = a.get(j, i) * f;
                        a.set(j, i, v);
                    }
                }
            }
        }
    }
}

// Householder reduction to upper Hessenberg form (in place).
fn orthes(h: &mut DenseMatrix) {
    let n = h.order();
    if n < 3 {
        return;
    }
    let low = 0usize;
    let high = n - 1;
    let mut ort = vec![0.0f64; n];

    for m in (low + 1)..high {
        let mut scale = 0.0;
        for i in m..=high {
            scale += h.get(i, m - 1).abs();
        }
        if scale != 0.0 {
            // Compute Householder transformation.
            let mut hsum = 0.0;
            for i in (m..=high).rev() {
                ort[i] = h.get(i, m - 1) / scale;
                hsum += ort[i] * ort[i];
            }
            let mut g = hsum.sqrt();
            if ort[m] > 0.0 {
                g = -g;
            }
            hsum -= ort[m] * g;
            ort[m] -= g;

            // Apply Householder similarity transformation
            // H = (I - u*u'/h) * H * (I - u*u'/h).
            for j in m..n {
                let mut f = 0.0;
                for i in (m..=high).rev() {
                    f += ort[i] * h.get(i, j);
                }
                f /= hsum;
                for i in m..=high {
                    let v = h.get(i, j) - f * ort[i];
                    h.set(i, j, v);
                }
            }
            for i in 0..=high {
                let mut f = 0.0;
                for j in (m..=high).rev() {
                    f += ort[j] * h.get(i, j);
                }
                f /= hsum;
                for j in m..=high {
                    let v = h.get(i, j) - f * ort[j];
                    h.set(i, j, v);
                }
            }
            ort[m] *= scale;
            h.set(m, m - 1, scale * g);
        }
    }
}

// Francis double-shift QR on an upper Hessenberg matrix; eigenvalues only.
fn hqr(hm: &mut DenseMatrix, budget: usize) -> Result<Vec<Complex64>> {
    let nn = hm.order();
    let mut d = vec![0.0f64; nn];
    let mut e = vec![0.0f64; nn];

    // Work through a closure-free flat accessor to keep the port close to
    // the reference.
    macro_rules! h {
        ($i:expr, $j:expr) => {
            hm.get(($i) as usize, ($j) as usize)
        };
    }
    macro_rules! hset {
        ($i:expr, $j:expr, $v:expr) => {
            hm.set(($i) as usize, ($j) as usize, $v)
        };
    }

    let mut n = (nn - 1) as isize;
    let low = 0isize;
    let high = (nn - 1) as isize;
    let eps = f64::EPSILON;
    let mut exshift = 0.0f64;
    let (mut p, mut q, mut r): (f64, f64, f64) = (0.0, 0.0, 0.0);
    let (mut s, mut z): (f64, f64);
    let (mut w, mut x, mut y): (f64, f64, f64);

    let mut norm = 0.0f64;
    for i in 0..nn {
        for j in i.saturating_sub(1)..nn {
            norm += h!(i, j).abs();
        }
    }

    let mut iter = 0usize;
    let mut total_iter = 0usize;
    while n >= low {
        // Look for a single small sub-diagonal element.
        let mut l = n;
        while l > low {
            s = h!(l - 1, l - 1).abs() + h!(l, l).abs();
            if s == 0.0 {
                s = norm;
            }
            if h!(l, l - 1).abs() < eps * s {
                break;
            }
            l -= 1;
        }

        if l == n {
            // One real root found.
            hset!(n, n, h!(n, n) + exshift);
            d[n as usize] = h!(n, n);
            e[n as usize] = 0.0;
            n -= 1;
            iter = 0;
        } else if l == n - 1 {
            // A pair of roots from the trailing 2x2 block.
            w = h!(n, n - 1) * h!(n - 1, n);
            p = (h!(n - 1, n - 1) - h!(n, n)) / 2.0;
            q = p * p + w;
            z = q.abs().sqrt();
            hset!(n, n, h!(n, n) + exshift);
            hset!(n - 1, n - 1, h!(n - 1, n - 1) + exshift);
            x = h!(n, n);

            if q >= 0.0 {
                // Real pair.
                z = if p >= 0.0 { p + z } else { p - z };
                d[(n - 1) as usize] = x + z;
                d[n as usize] = d[(n - 1) as usize];
                if z != 0.0 {
                    d[n as usize] = x - w / z;
                }
                e[(n - 1) as usize] = 0.0;
                e[n as usize] = 0.0;
            } else {
                // Complex conjugate pair.
                d[(n - 1) as usize] = x + p;
                d[n as usize] = x + p;
                e[(n - 1) as usize] = z;
                e[n as usize] = -z;
            }
            iter = 0;
            n -= 2;
        } else {
            // No convergence yet; perform a double QR step.
            x = h!(n, n);
            y = 0.0;
            w = 0.0;
            if l < n {
                y = h!(n - 1, n - 1);
                w = h!(n, n - 1) * h!(n - 1, n);
            }

            // Exceptional shift after 10 stalls.
            if iter == 10 {
                exshift += x;
                for i in low..=n {
                    hset!(i, i, h!(i, i) - x);
                }
                s = h!(n, n - 1).abs() + h!(n - 1, n - 2).abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }

            // Second exceptional shift after 30 stalls.
            if iter == 30 {
                s = (y - x) / 2.0;
                s = s * s + w;
                if s > 0.0 {
                    s = s.sqrt();
                    if y < x {
                        s = -s;
                    }
                    s = x - w / ((y - x) / 2.0 + s);
                    for i in low..=n {
                        hset!(i, i, h!(i, i) - s);
                    }
                    exshift += s;
                    x = 0.964;
                    y = x;
                    w = x;
                }
            }

            iter += 1;
            total_iter += 1;
            if total_iter > budget {
                return Err(Error::NonConvergence { budget });
            }

            // Look for two consecutive small sub-diagonal elements.
            let mut m = n - 2;
            while m >= l {
                z = h!(m, m);
                r = x - z;
                s = y - z;
                p = (r * s - w) / h!(m + 1, m) + h!(m, m + 1);
                q = h!(m + 1, m + 1) - z - r - s;
                r = h!(m + 2, m + 1);
                s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                if h!(m, m - 1).abs() * (q.abs() + r.abs())
                    < eps * (p.abs() * (h!(m - 1, m - 1).abs() + z.abs() + h!(m + 1, m + 1).abs()))
                {
                    break;
                }
                m -= 1;
            }

            for i in (m + 2)..=n {
                hset!(i, i - 2, 0.0);
                if i > m + 2 {
                    hset!(i, i - 3, 0.0);
                }
            }

            // Double QR step on rows l..=n and columns m..=n.
            for k in m..n {
                let notlast = k != n - 1;
                if k != m {
                    p = h!(k, k - 1);
                    q = h!(k + 1, k - 1);
                    r = if notlast { h!(k + 2, k - 1) } else { 0.0 };
                    x = p.abs() + q.abs() + r.abs();
                    if x == 0.0 {
                        continue;
                    }
                    p /= x;
                    q /= x;
                    r /= x;
                }

                s = (p * p + q * q + r * r).sqrt();
                if p < 0.0 {
                    s = -s;
                }
                if s != 0.0 {
                    if k != m {
                        hset!(k, k - 1, -s * x);
                    } else if l != m {
                        hset!(k, k - 1, -h!(k, k - 1));
                    }
                    p += s;
                    x = p / s;
                    y = q / s;
                    z = r / s;
                    q /= p;
                    r /= p;

                    // Row modification.
                    for j in k..(nn as isize) {
                        p = h!(k, j) + q * h!(k + 1, j);
                        if notlast {
                            p += r * h!(k + 2, j);
                            hset!(k + 2, j, h!(k + 2, j) - p * z);
                        }
                        hset!(k, j, h!(k, j) - p * x);
                        hset!(k + 1, j, h!(k + 1, j) - p * y);
                    }

                    // Column modification.
                    for i in 0..=n.min(k + 3) {
                        p = x * h!(i, k) + y * h!(i, k + 1);
                        if notlast {
                            p += z * h!(i, k + 2);
                            hset!(i, k + 2, h!(i, k + 2) - p * r);
                        }
                        hset!(i, k, h!(i, k) - p);
                        hset!(i, k + 1, h!(i, k + 1) - p * q);
                    }
                }
            }
        }
        let _ = high;
    }

    Ok((0..nn).map(|i| Complex64::new(d[i], e[i])).collect())
}
