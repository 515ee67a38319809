//! Parameterized matrix families with prescribed spectra, each shipped with
//! the partition whose equitable quotient carries every distinct eigenvalue
//! (or, for the `mab` family, deliberately fails to).
//!
//! The block recipes pin a chosen quotient eigenvalue `alpha` as the
//! repeated eigenvalue of the parent by forcing the complement of the
//! partition subspace into `ker(M - alpha I)`.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::eigen::{eigen_values, sort_complex_desc};
use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::partition::Partition;

/// A constructed parent matrix with its designated partition and the
/// spectrum the construction promises.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstructedMatrix {
    pub matrix: DenseMatrix,
    pub designated_partition: Partition,
    /// Distinct eigenvalues, descending by real then imaginary part.
    pub expected_distinct: Vec<Complex64>,
    /// Multiplicities aligned with `expected_distinct`.
    pub expected_multiplicities: Vec<usize>,
    /// CLI identifier of the family (`m3`, `m4triple`, ...).
    pub family_name: String,
    pub params: BTreeMap<String, f64>,
}

impl ConstructedMatrix {
    /// Order of the constructed matrix.
    pub fn order(&self) -> usize {
        self.matrix.order()
    }
}

fn param_scale(vals: &[f64]) -> f64 {
    vals.iter().fold(1.0f64, |m, v| m.max(v.abs()))
}

fn resolve_param_tol(tol: f64, scale: f64) -> f64 {
    if tol > 0.0 {
        tol
    } else {
        1e-9 * scale
    }
}

/// Real eigenvalues of `[[c11, c12], [c21, c22]]`, required to be real and
/// distinct. Returns `(larger, smaller)`.
fn distinct_real_pair(c11: f64, c12: f64, c21: f64, c22: f64, tol: f64) -> Result<(f64, f64)> {
    let disc = (c11 - c22) * (c11 - c22) + 4.0 * c12 * c21;
    if disc < 0.0 {
        return Err(Error::DegenerateQuotient("complex eigenvalue pair".into()));
    }
    let root = disc.sqrt();
    let hi = (c11 + c22 + root) / 2.0;
    let lo = (c11 + c22 - root) / 2.0;
    if (hi - lo).abs() <= tol {
        return Err(Error::DegenerateQuotient("repeated eigenvalue".into()));
    }
    Ok((hi, lo))
}

/// Picks the root matching `alpha` and returns `(alpha_exact, other)`.
fn pick_alpha(alpha: f64, hi: f64, lo: f64, tol: f64) -> Result<(f64, f64)> {
    let d_hi = (alpha - hi).abs();
    let d_lo = (alpha - lo).abs();
    if d_hi <= tol && d_hi <= d_lo {
        Ok((hi, lo))
    } else if d_lo <= tol {
        Ok((lo, hi))
    } else {
        Err(Error::AlphaNotEigenvalue {
            alpha,
            residual: d_hi.min(d_lo),
        })
    }
}

fn expected_from(pairs: Vec<(Complex64, usize)>, merge_tol: f64) -> (Vec<Complex64>, Vec<usize>) {
    let mut merged: Vec<(Complex64, usize)> = Vec::new();
    for (v, m) in pairs {
        match merged
            .iter_mut()
            .find(|(w, _)| (*w - v).norm() <= merge_tol)
        {
            Some((_, c)) => *c += m,
            None => merged.push((v, m)),
        }
    }
    merged.sort_by(|(a, _), (b, _)| {
        b.re.partial_cmp(&a.re)
            .unwrap()
            .then(b.im.partial_cmp(&a.im).unwrap())
    });
    merged.into_iter().unzip()
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// 3x3 parent with spectrum `{alpha^2, beta}` whose quotient under
/// `{{1},{2,3}}` is `[[c11,c12],[c21,c22]]`.
pub fn construct_3x3(
    c11: f64,
    c12: f64,
    c21: f64,
    c22: f64,
    alpha: f64,
    tol: f64,
) -> Result<ConstructedMatrix> {
    let tol = resolve_param_tol(tol, param_scale(&[c11, c12, c21, c22, alpha]));
    let (hi, lo) = distinct_real_pair(c11, c12, c21, c22, tol)?;
    let (alpha, beta) = pick_alpha(alpha, hi, lo, tol)?;

    let matrix = DenseMatrix::from_rows(&[
        vec![c11, c12 / 2.0, c12 / 2.0],
        vec![c21, (alpha + c22) / 2.0, (c22 - alpha) / 2.0],
        vec![c21, (c22 - alpha) / 2.0, (alpha + c22) / 2.0],
    ])?;
    let (expected_distinct, expected_multiplicities) =
        expected_from(vec![(re(alpha), 2), (re(beta), 1)], tol);
    Ok(ConstructedMatrix {
        matrix,
        designated_partition: Partition::new(3, vec![vec![1], vec![2, 3]])?,
        expected_distinct,
        expected_multiplicities,
        family_name: "m3".into(),
        params: BTreeMap::from([
            ("c11".into(), c11),
            ("c12".into(), c12),
            ("c21".into(), c21),
            ("c22".into(), c22),
            ("alpha".into(), alpha),
        ]),
    })
}

/// 4x4 parent with spectrum `{alpha^3, beta}` and partition `{{1},{2,3,4}}`.
pub fn construct_4x4_triple(
    c11: f64,
    c12: f64,
    c21: f64,
    c22: f64,
    alpha: f64,
    tol: f64,
) -> Result<ConstructedMatrix> {
    let mut built = construct_n_two(c11, c12, c21, c22, alpha, 4, tol)?;
    built.family_name = "m4triple".into();
    built.params.remove("n");
    Ok(built)
}

/// 4x4 parent with spectrum `{alpha^2, beta^2}` and partition
/// `{{1,2},{3,4}}`. Both eigenvalues are supplied and cross-checked against
/// the quotient.
pub fn construct_4x4_double(
    c11: f64,
    c12: f64,
    c21: f64,
    c22: f64,
    alpha: f64,
    beta: f64,
    tol: f64,
) -> Result<ConstructedMatrix> {
    let tol = resolve_param_tol(tol, param_scale(&[c11, c12, c21, c22, alpha, beta]));
    let (hi, lo) = distinct_real_pair(c11, c12, c21, c22, tol)?;
    // {alpha, beta} must equal {hi, lo} in some order.
    let straight = (alpha - hi).abs() <= tol && (beta - lo).abs() <= tol;
    let crossed = (alpha - lo).abs() <= tol && (beta - hi).abs() <= tol;
    let (alpha, beta) = if straight {
        (hi, lo)
    } else if crossed {
        (lo, hi)
    } else {
        return Err(Error::EigenvalueMismatch);
    };

    let matrix = DenseMatrix::from_rows(&[
        vec![
            (c11 + alpha) / 2.0,
            (c11 - alpha) / 2.0,
            c12 / 2.0,
            c12 / 2.0,
        ],
        vec![
            (c11 - alpha) / 2.0,
            (c11 + alpha) / 2.0,
            c12 / 2.0,
            c12 / 2.0,
        ],
        vec![c21 / 2.0, c21 / 2.0, (c22 + beta) / 2.0, (c22 - beta) / 2.0],
        vec![c21 / 2.0, c21 / 2.0, (c22 - beta) / 2.0, (c22 + beta) / 2.0],
    ])?;
    let (expected_distinct, expected_multiplicities) =
        expected_from(vec![(re(alpha), 2), (re(beta), 2)], tol);
    Ok(ConstructedMatrix {
        matrix,
        designated_partition: Partition::new(4, vec![vec![1, 2], vec![3, 4]])?,
        expected_distinct,
        expected_multiplicities,
        family_name: "m4double".into(),
        params: BTreeMap::from([
            ("c11".into(), c11),
            ("c12".into(), c12),
            ("c21".into(), c21),
            ("c22".into(), c22),
            ("alpha".into(), alpha),
            ("beta".into(), beta),
        ]),
    })
}

/// 4x4 parent with spectrum `{alpha^2, beta, gamma}` and partition
/// `{{1},{2},{3,4}}`; the 3x3 seed quotient must have three distinct
/// eigenvalues including the real `alpha`.
pub fn construct_4x4_three(c: &DenseMatrix, alpha: f64, tol: f64) -> Result<ConstructedMatrix> {
    if c.rows() != 3 || c.cols() != 3 {
        return Err(Error::InvalidParams(format!(
            "seed quotient must be 3x3, got {}x{}",
            c.rows(),
            c.cols()
        )));
    }
    let tol = resolve_param_tol(tol, c.max_abs().max(alpha.abs()));
    let mut vals = eigen_values(c)?;
    sort_complex_desc(&mut vals);
    for i in 0..3 {
        for j in (i + 1)..3 {
            if (vals[i] - vals[j]).norm() <= tol {
                return Err(Error::DegenerateQuotient(
                    "seed quotient must have three distinct eigenvalues".into(),
                ));
            }
        }
    }
    let target = re(alpha);
    let best = vals
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| {
            (**a - target)
                .norm()
                .partial_cmp(&(**b - target).norm())
                .unwrap()
        })
        .map(|(i, v)| (i, *v))
        .expect("three eigenvalues");
    if (best.1 - target).norm() > tol {
        return Err(Error::AlphaNotEigenvalue {
            alpha,
            residual: (best.1 - target).norm(),
        });
    }
    let alpha = best.1.re;
    let others: Vec<Complex64> = vals
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != best.0)
        .map(|(_, v)| *v)
        .collect();

    let (c11, c12, c13) = (c.get(0, 0), c.get(0, 1), c.get(0, 2));
    let (c21, c22, c23) = (c.get(1, 0), c.get(1, 1), c.get(1, 2));
    let (c31, c32, c33) = (c.get(2, 0), c.get(2, 1), c.get(2, 2));
    let matrix = DenseMatrix::from_rows(&[
        vec![c11, c12, c13 / 2.0, c13 / 2.0],
        vec![c21, c22, c23 / 2.0, c23 / 2.0],
        vec![c31, c32, (c33 + alpha) / 2.0, (c33 - alpha) / 2.0],
        vec![c31, c32, (c33 - alpha) / 2.0, (c33 + alpha) / 2.0],
    ])?;
    let (expected_distinct, expected_multiplicities) =
        expected_from(vec![(re(alpha), 2), (others[0], 1), (others[1], 1)], tol);
    let mut params = BTreeMap::new();
    for (i, name) in [
        "c11", "c12", "c13", "c21", "c22", "c23", "c31", "c32", "c33",
    ]
    .iter()
    .enumerate()
    {
        params.insert((*name).into(), c.get(i / 3, i % 3));
    }
    params.insert("alpha".into(), alpha);
    Ok(ConstructedMatrix {
        matrix,
        designated_partition: Partition::new(4, vec![vec![1], vec![2], vec![3, 4]])?,
        expected_distinct,
        expected_multiplicities,
        family_name: "m4three".into(),
        params,
    })
}

/// n x n parent with spectrum `{alpha^(n-1), beta}` and partition
/// `{{1},{2,...,n}}`: the trailing block is
/// `alpha I + (c22 - alpha)/(n-1) J`.
pub fn construct_n_two(
    c11: f64,
    c12: f64,
    c21: f64,
    c22: f64,
    alpha: f64,
    n: usize,
    tol: f64,
) -> Result<ConstructedMatrix> {
    if n < 3 {
        return Err(Error::InvalidParams(format!("n must be >= 3, got {n}")));
    }
    let tol = resolve_param_tol(tol, param_scale(&[c11, c12, c21, c22, alpha]));
    let (hi, lo) = distinct_real_pair(c11, c12, c21, c22, tol)?;
    let (alpha, beta) = pick_alpha(alpha, hi, lo, tol)?;

    let k = n - 1;
    let off = (c22 - alpha) / k as f64;
    let top = c12 / k as f64;
    let mut matrix = DenseMatrix::zeros(n, n);
    matrix.set(0, 0, c11);
    for j in 1..n {
        matrix.set(0, j, top);
        matrix.set(j, 0, c21);
        for i in 1..n {
            matrix.set(i, j, if i == j { alpha + off } else { off });
        }
    }
    let (expected_distinct, expected_multiplicities) =
        expected_from(vec![(re(alpha), n - 1), (re(beta), 1)], tol);
    Ok(ConstructedMatrix {
        matrix,
        designated_partition: Partition::new(n, vec![vec![1], (2..=n).collect()])?,
        expected_distinct,
        expected_multiplicities,
        family_name: "mn2".into(),
        params: BTreeMap::from([
            ("c11".into(), c11),
            ("c12".into(), c12),
            ("c21".into(), c21),
            ("c22".into(), c22),
            ("alpha".into(), alpha),
            ("n".into(), n as f64),
        ]),
    })
}

/// The fixed full-capture family `[[1, -2J],[2J, 5I + 2(J - I)]]` with
/// spectrum `{2n-1, 3^(n-1)}` and partition `{{1},{2..n}}`. This is the
/// `mab` family at `a = 2` with block diagonal 5.
pub fn family_m_prime(n: usize) -> Result<ConstructedMatrix> {
    if n < 3 {
        return Err(Error::InvalidParams(format!("n must be >= 3, got {n}")));
    }
    let mut built = family_ab(n, 2.0, 5.0)?;
    built.family_name = "mprime".into();
    built.params = BTreeMap::from([("n".into(), n as f64)]);
    Ok(built)
}

/// The two-parameter family `[[1, -aJ],[aJ, bI + a(J - I)]]` with partition
/// `{{1},{2..n}}`. Zero-sum vectors supported on the big cell form an
/// (n-2)-dimensional eigenspace for `b - a`; the two quotient eigenvalues
/// complete the spectrum. Unless `b - a` collides with a quotient
/// eigenvalue, the quotient misses it.
pub fn family_ab(n: usize, a: f64, b: f64) -> Result<ConstructedMatrix> {
    if n < 3 {
        return Err(Error::InvalidParams(format!("n must be >= 3, got {n}")));
    }
    let k = (n - 1) as f64;
    let mut matrix = DenseMatrix::zeros(n, n);
    matrix.set(0, 0, 1.0);
    for j in 1..n {
        matrix.set(0, j, -a);
        matrix.set(j, 0, a);
        for i in 1..n {
            matrix.set(i, j, if i == j { b } else { a });
        }
    }

    // Quotient is [[1, -(n-1)a], [a, b + (n-2)a]].
    let tr = 1.0 + b + (n as f64 - 2.0) * a;
    let det = (b + (n as f64 - 2.0) * a) + k * a * a;
    let disc = tr * tr - 4.0 * det;
    let (q1, q2) = if disc >= 0.0 {
        let root = disc.sqrt();
        (re((tr + root) / 2.0), re((tr - root) / 2.0))
    } else {
        let root = (-disc).sqrt() / 2.0;
        (
            Complex64::new(tr / 2.0, root),
            Complex64::new(tr / 2.0, -root),
        )
    };

    let merge_tol = 1e-6 * param_scale(&[a, b, n as f64]);
    let (expected_distinct, expected_multiplicities) =
        expected_from(vec![(re(b - a), n - 2), (q1, 1), (q2, 1)], merge_tol);
    Ok(ConstructedMatrix {
        matrix,
        designated_partition: Partition::new(n, vec![vec![1], (2..=n).collect()])?,
        expected_distinct,
        expected_multiplicities,
        family_name: "mab".into(),
        params: BTreeMap::from([("n".into(), n as f64), ("a".into(), a), ("b".into(), b)]),
    })
}

/// The rank-one block family `[[J_a / alpha, J],[J, alpha J_b]]` with
/// spectrum `{0^(a+b-1), (a + alpha^2 b)/alpha}` and the two-cell partition.
pub fn family_alpha_block(a: usize, b: usize, alpha: f64) -> Result<ConstructedMatrix> {
    if a == 0 || b == 0 {
        return Err(Error::InvalidParams("a and b must be >= 1".into()));
    }
    if alpha == 0.0 {
        return Err(Error::AlphaZero);
    }
    let n = a + b;
    let mut matrix = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let v = match (i < a, j < a) {
                (true, true) => 1.0 / alpha,
                (false, false) => alpha,
                _ => 1.0,
            };
            matrix.set(i, j, v);
        }
    }
    let simple = (a as f64 + alpha * alpha * b as f64) / alpha;
    let merge_tol = 1e-6 * simple.abs().max(1.0);
    let (expected_distinct, expected_multiplicities) =
        expected_from(vec![(re(0.0), n - 1), (re(simple), 1)], merge_tol);
    Ok(ConstructedMatrix {
        matrix,
        designated_partition: Partition::new(n, vec![(1..=a).collect(), (a + 1..=n).collect()])?,
        expected_distinct,
        expected_multiplicities,
        family_name: "alphablock".into(),
        params: BTreeMap::from([
            ("a".into(), a as f64),
            ("b".into(), b as f64),
            ("alpha".into(), alpha),
        ]),
    })
}

/// The `(n+2) x (n+2)` full-capture family whose 3x3 quotient under
/// `{{1},{2},{3..n+2}}` is
/// `[[4n-2, -(2n-2), -2n], [-1, 4n+1, -4n], [-1, -2(2n-2), 4n-3]]`.
pub fn family_atik(n: usize) -> Result<ConstructedMatrix> {
    if n < 2 {
        return Err(Error::InvalidParams(format!("n must be >= 2, got {n}")));
    }
    let nf = n as f64;
    let order = n + 2;
    let mut matrix = DenseMatrix::zeros(order, order);
    matrix.set(0, 0, 4.0 * nf - 2.0);
    matrix.set(0, 1, -(2.0 * nf - 2.0));
    matrix.set(1, 0, -1.0);
    matrix.set(1, 1, 4.0 * nf + 1.0);
    for j in 2..order {
        matrix.set(0, j, -2.0);
        matrix.set(1, j, -4.0);
    }
    for i in 2..order {
        matrix.set(i, 0, -1.0);
        matrix.set(i, 1, -2.0 * (2.0 * nf - 2.0));
        for j in 2..order {
            matrix.set(i, j, if i == j { 8.0 * nf - 7.0 } else { -4.0 });
        }
    }

    // The repeated eigenvalue 8n-3 lives on zero-sum vectors of the big
    // cell; the quotient supplies the remaining distinct values.
    let quotient = expected_atik_quotient(n);
    let q_vals = eigen_values(&quotient)?;
    let mut pairs: Vec<(Complex64, usize)> = vec![(re(8.0 * nf - 3.0), n - 1)];
    pairs.extend(q_vals.into_iter().map(|v| (v, 1)));
    let merge_tol = 1e-6 * (8.0 * nf - 3.0).max(1.0);
    let (expected_distinct, expected_multiplicities) = expected_from(pairs, merge_tol);

    Ok(ConstructedMatrix {
        matrix,
        designated_partition: Partition::new(order, vec![vec![1], vec![2], (3..=order).collect()])?,
        expected_distinct,
        expected_multiplicities,
        family_name: "atik".into(),
        params: BTreeMap::from([("n".into(), nf)]),
    })
}

/// The closed-form quotient the `atik` family must reproduce through row
/// sums.
pub fn expected_atik_quotient(n: usize) -> DenseMatrix {
    let nf = n as f64;
    DenseMatrix::from_rows(&[
        vec![4.0 * nf - 2.0, -(2.0 * nf - 2.0), -2.0 * nf],
        vec![-1.0, 4.0 * nf + 1.0, -4.0 * nf],
        vec![-1.0, -2.0 * (2.0 * nf - 2.0), 4.0 * nf - 3.0],
    ])
    .expect("static shape")
}

/// Name-based dispatch used by the command-line layer. Family names and
/// parameter keys are a stable contract:
/// `m3 | m4triple | m4double | m4three | mn2 | mprime | mab | alphablock | atik`.
pub fn by_name(
    family: &str,
    params: &BTreeMap<String, f64>,
    tol: f64,
) -> Result<ConstructedMatrix> {
    let get = |key: &str| -> Result<f64> {
        params
            .get(key)
            .copied()
            .ok_or_else(|| Error::InvalidParams(format!("missing parameter `{key}`")))
    };
    let get_usize = |key: &str| -> Result<usize> {
        let v = get(key)?;
        if v.fract() != 0.0 || v < 0.0 {
            return Err(Error::InvalidParams(format!(
                "parameter `{key}` must be a nonnegative integer, got {v}"
            )));
        }
        Ok(v as usize)
    };
    match family {
        "m3" => construct_3x3(
            get("c11")?,
            get("c12")?,
            get("c21")?,
            get("c22")?,
            get("alpha")?,
            tol,
        ),
        "m4triple" => construct_4x4_triple(
            get("c11")?,
            get("c12")?,
            get("c21")?,
            get("c22")?,
            get("alpha")?,
            tol,
        ),
        "m4double" => construct_4x4_double(
            get("c11")?,
            get("c12")?,
            get("c21")?,
            get("c22")?,
            get("alpha")?,
            get("beta")?,
            tol,
        ),
        "m4three" => {
            let mut entries = Vec::with_capacity(9);
            for name in [
                "c11", "c12", "c13", "c21", "c22", "c23", "c31", "c32", "c33",
            ] {
                entries.push(get(name)?);
            }
            let c = DenseMatrix::square(3, entries)?;
            construct_4x4_three(&c, get("alpha")?, tol)
        }
        "mn2" => construct_n_two(
            get("c11")?,
            get("c12")?,
            get("c21")?,
            get("c22")?,
            get("alpha")?,
            get_usize("n")?,
            tol,
        ),
        "mprime" => family_m_prime(get_usize("n")?),
        "mab" => family_ab(get_usize("n")?, get("a")?, get("b")?),
        "alphablock" => family_alpha_block(get_usize("a")?, get_usize("b")?, get("alpha")?),
        "atik" => family_atik(get_usize("n")?),
        other => Err(Error::InvalidParams(format!("unknown family `{other}`"))),
    }
}
