//! Dense symmetric/Hermitian eigensolver.
//!
//! The real symmetric path is the classic pair: Householder reduction to
//! tridiagonal form (`tred2`) followed by the implicit-shift QL iteration
//! (`tql2`), with the orthogonal transformations accumulated so eigenvectors
//! come out alongside the eigenvalues. A complex Hermitian matrix
//! `H = X + iY` is handled through its real doubling
//! `[[X, -Y], [Y, X]]`, which is symmetric with the same spectrum (each
//! eigenvalue twice); a real eigenvector `(a, b)` of the doubling folds back
//! to the complex eigenvector `a + ib`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::real::Real;

/// Eigenvalues in ascending order with matching eigenvectors:
/// `vectors[r][c]` is component `r` of eigenvector `c`.
pub(crate) struct SymmetricEigen<T> {
    pub values: Vec<T>,
    pub vectors: Vec<Vec<T>>,
}

/// Full eigendecomposition of a real symmetric matrix (row-major, assumed
/// exactly symmetric). Fails only if the QL iteration exceeds `50 * dim`
/// sweeps, which does not happen for symmetric input.
pub(crate) fn symmetric_eigen<T: Real>(a: &[Vec<T>]) -> Result<SymmetricEigen<T>> {
    let n = a.len();
    let mut v: Vec<Vec<T>> = a.to_vec();
    let mut d = vec![T::zero(); n];
    let mut e = vec![T::zero(); n];
    tred2(&mut v, &mut d, &mut e);
    tql2(&mut v, &mut d, &mut e)?;
    Ok(SymmetricEigen {
        values: d,
        vectors: v,
    })
}

/// Householder reduction of `v` to symmetric tridiagonal form: diagonal into
/// `d`, subdiagonal into `e[1..]`, accumulated transformation left in `v`.
fn tred2<T: Real>(v: &mut [Vec<T>], d: &mut [T], e: &mut [T]) {
    let n = v.len();
    if n == 0 {
        return;
    }
    d.copy_from_slice(&v[n - 1]);

    for i in (1..n).rev() {
        // Scale to avoid under/overflow.
        let mut h = T::zero();
        let mut scale = T::zero();
        for item in d.iter().take(i) {
            scale += item.abs();
        }
        if scale == T::zero() {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[i - 1][j];
                v[i][j] = T::zero();
                v[j][i] = T::zero();
            }
        } else {
            // Generate the Householder vector.
            for k in 0..i {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            let mut f = d[i - 1];
            let mut g = h.sqrt();
            if f > T::zero() {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for item in e.iter_mut().take(i) {
                *item = T::zero();
            }

            // Apply the similarity transformation to the leading block.
            for j in 0..i {
                f = d[j];
                v[j][i] = f;
                g = e[j] + v[j][j] * f;
                for k in (j + 1)..i {
                    g += v[k][j] * d[k];
                    e[k] += v[k][j] * f;
                }
                e[j] = g;
            }
            f = T::zero();
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                f = d[j];
                g = e[j];
                for k in j..i {
                    let delta = f * e[k] + g * d[k];
                    v[k][j] -= delta;
                }
                d[j] = v[i - 1][j];
                v[i][j] = T::zero();
            }
        }
        d[i] = h;
    }

    // Accumulate the transformations.
    for i in 0..n - 1 {
        v[n - 1][i] = v[i][i];
        v[i][i] = T::one();
        let h = d[i + 1];
        if h != T::zero() {
            for k in 0..=i {
                d[k] = v[k][i + 1] / h;
            }
            for j in 0..=i {
                let mut g = T::zero();
                for k in 0..=i {
                    g += v[k][i + 1] * v[k][j];
                }
                for k in 0..=i {
                    let delta = g * d[k];
                    v[k][j] -= delta;
                }
            }
        }
        for k in 0..=i {
            v[k][i + 1] = T::zero();
        }
    }
    for j in 0..n {
        d[j] = v[n - 1][j];
        v[n - 1][j] = T::zero();
    }
    v[n - 1][n - 1] = T::one();
    e[0] = T::zero();
}

/// Implicit-shift QL iteration on the tridiagonal `(d, e)`, rotations
/// applied to the columns of `v`; eigenvalues end up ascending in `d`.
fn tql2<T: Real>(v: &mut [Vec<T>], d: &mut [T], e: &mut [T]) -> Result<()> {
    let n = v.len();
    if n == 0 {
        return Ok(());
    }
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = T::zero();

    let eps = T::epsilon();
    let max_sweeps = 50 * n;
    let mut sweeps = 0usize;
    let mut f = T::zero();
    let mut tst1 = T::zero();
    for l in 0..n {
        // Find a negligible subdiagonal element.
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m > l {
            loop {
                sweeps += 1;
                if sweeps > max_sweeps {
                    return Err(Error::Convergence(format!(
                        "QL iteration exceeded {max_sweeps} sweeps on a dimension-{n} matrix"
                    )));
                }

                // Implicit shift from the leading 2x2.
                let mut g = d[l];
                let two = T::one() + T::one();
                let mut p = (d[l + 1] - g) / (two * e[l]);
                let mut r = p.hypot(T::one());
                if p < T::zero() {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for item in d.iter_mut().take(n).skip(l + 2) {
                    *item -= h;
                }
                f += h;

                // The QL sweep itself.
                p = d[m];
                let mut c = T::one();
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = T::zero();
                let mut s2 = T::zero();
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);

                    // Rotate the accumulated vectors.
                    for row in v.iter_mut() {
                        h = row[i + 1];
                        row[i + 1] = s * row[i] + c * h;
                        row[i] = c * row[i] - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;

                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = T::zero();
    }

    // Selection sort ascending, carrying the eigenvector columns along.
    for i in 0..n.saturating_sub(1) {
        let mut k = i;
        let mut p = d[i];
        for j in (i + 1)..n {
            if d[j] < p {
                k = j;
                p = d[j];
            }
        }
        if k != i {
            d[k] = d[i];
            d[i] = p;
            for row in v.iter_mut() {
                row.swap(i, k);
            }
        }
    }
    Ok(())
}

/// Eigendecomposition of a complex Hermitian matrix (row-major, exactly
/// Hermitian) through its real doubling. Returns the `dim` eigenvalues in
/// ascending order and the matching complex eigenvectors (unit norm).
pub(crate) struct HermitianEigen<T> {
    pub values: Vec<T>,
    pub vectors: Vec<Vec<Complex<T>>>,
}

pub(crate) fn hermitian_eigen<T: Real>(
    dim: usize,
    entry: impl Fn(usize, usize) -> Complex<T>,
) -> Result<HermitianEigen<T>> {
    if dim == 0 {
        return Err(Error::Domain(
            "eigendecomposition needs a nonempty matrix".to_string(),
        ));
    }
    // Real doubling [[X, -Y], [Y, X]] of H = X + iY.
    let m = 2 * dim;
    let mut r = vec![vec![T::zero(); m]; m];
    for i in 0..dim {
        for j in 0..dim {
            let h = entry(i, j);
            r[i][j] = h.re;
            r[i + dim][j + dim] = h.re;
            r[i][j + dim] = -h.im;
            r[i + dim][j] = h.im;
        }
    }
    let eig = symmetric_eigen(&r)?;

    // The doubled spectrum lists every eigenvalue of H twice, in order.
    let values: Vec<T> = eig.values.iter().step_by(2).copied().collect();
    let vectors: Vec<Vec<Complex<T>>> = (0..m)
        .step_by(2)
        .map(|c| {
            let norm = (0..m)
                .map(|rr| eig.vectors[rr][c] * eig.vectors[rr][c])
                .fold(T::zero(), |acc, x| acc + x)
                .sqrt();
            (0..dim)
                .map(|rr| {
                    Complex::new(eig.vectors[rr][c] / norm, eig.vectors[rr + dim][c] / norm)
                })
                .collect()
        })
        .collect();
    Ok(HermitianEigen { values, vectors })
}

/// `||H u - lambda u||_2 / ||u||_2` for a candidate eigenpair.
pub(crate) fn eigen_residual<T: Real>(
    dim: usize,
    entry: impl Fn(usize, usize) -> Complex<T>,
    lambda: T,
    u: &[Complex<T>],
) -> T {
    let mut num = T::zero();
    let mut den = T::zero();
    for i in 0..dim {
        let mut acc = Complex::new(T::zero(), T::zero());
        for (j, uj) in u.iter().enumerate() {
            acc += entry(i, j) * uj;
        }
        acc -= u[i] * lambda;
        num += acc.norm_sqr();
        den += u[i].norm_sqr();
    }
    (num / den).sqrt()
}
