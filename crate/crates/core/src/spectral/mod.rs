//! Frame and interpolation spectra for weighted polynomial samples.
//!
//! A point set `{lambda}` paired with degree-`n` weighted polynomials gives
//! rise to two dense Hermitian matrices:
//!
//! * the frame matrix `S` with `S[k][l] = sum_lambda conj(u_k) u_l / q`,
//!   where `u_k(lambda)` is the weighted orthonormal monomial
//!   `(pi^k/k!)^{1/2} lambda^k e^{-pi |lambda|^2 / 2}` and
//!   `q = Q(n+1, pi |lambda|^2)` is the share of a normalized reproducing
//!   kernel's energy that the degree-`n` subspace retains at `lambda`;
//! * the Gram matrix `G` of the normalized kernels pinned at the points,
//!   `G[i][j] = K_n(lambda_i, lambda_j) / sqrt(q_i q_j)`, whose smallest
//!   eigenvalue measures how far the family is from losing uniform
//!   interpolation.
//!
//! The extreme eigenvalues of `S` are exactly the sharpest constants in the
//! two-sided sampling inequality for the family, so the reports below are the
//! numerical core of the crate.

mod eig;

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::{self, normalized_poly_kernel};
use crate::pointsets::{
    build_family, lattice_points_in_disk, FamilySpec, LatticeSpec, Mode, PointSet,
};
use crate::real::{lit, uint, Real};
use crate::specfun::{regularized_gamma, wrap_phase};

/// Dense complex Hermitian matrix in row-major storage.
///
/// Construction symmetrizes: off-diagonal pairs are averaged against each
/// other's conjugate and the diagonal keeps only its real part, so roundoff
/// asymmetry from assembly cannot leak into the eigensolver.
#[derive(Debug, Clone)]
pub struct HermitianMatrix<T> {
    dim: usize,
    entries: Vec<Complex<T>>,
}

impl<T: Real> HermitianMatrix<T> {
    /// Build from row-major entries, symmetrizing as described above.
    pub fn new(dim: usize, mut entries: Vec<Complex<T>>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::Domain(format!(
                "matrix of dimension {dim} needs {} entries, got {}",
                dim * dim,
                entries.len()
            )));
        }
        let half = lit::<T>(0.5);
        for i in 0..dim {
            entries[i * dim + i] = Complex::new(entries[i * dim + i].re, T::zero());
            for j in (i + 1)..dim {
                let avg = (entries[i * dim + j] + entries[j * dim + i].conj())
                    * Complex::new(half, T::zero());
                entries[i * dim + j] = avg;
                entries[j * dim + i] = avg.conj();
            }
        }
        Ok(Self { dim, entries })
    }

    /// Matrix dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Entry at row `i`, column `j`.
    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        self.entries[i * self.dim + j]
    }

    /// All eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Result<Vec<T>> {
        let eig = eig::hermitian_eigen(self.dim, |i, j| self.get(i, j))?;
        Ok(eig.values)
    }

    /// Smallest and largest eigenvalue together with the worse of the two
    /// eigenpair residuals, which certifies the solve.
    pub fn extreme_eigenvalues(&self) -> Result<SpectralBounds<T>> {
        let eig = eig::hermitian_eigen(self.dim, |i, j| self.get(i, j))?;
        let lambda_min = eig.values[0];
        let lambda_max = eig.values[self.dim - 1];
        let res_min =
            eig::eigen_residual(self.dim, |i, j| self.get(i, j), lambda_min, &eig.vectors[0]);
        let res_max = eig::eigen_residual(
            self.dim,
            |i, j| self.get(i, j),
            lambda_max,
            &eig.vectors[self.dim - 1],
        );
        Ok(SpectralBounds {
            lambda_min,
            lambda_max,
            residual: res_min.max(res_max),
        })
    }
}

/// Extreme eigenvalues of a Hermitian matrix plus the eigenpair residual
/// `max ||H u - lambda u|| / ||u||` over the two returned pairs.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SpectralBounds<T> {
    pub lambda_min: T,
    pub lambda_max: T,
    pub residual: T,
}

/// One row of a sampling report: sharp frame bounds for degree `n`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FrameReport<T> {
    /// Polynomial degree.
    pub n: usize,
    /// Number of points in the truncated layer.
    pub count: usize,
    /// Sharp lower sampling constant (smallest eigenvalue of the frame matrix).
    pub a: T,
    /// Sharp upper sampling constant (largest eigenvalue).
    pub b: T,
    /// Condition number `b / a`.
    pub cond: T,
}

/// One row of an interpolation report: Gram extremes for degree `n`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct InterpReport<T> {
    /// Polynomial degree.
    pub n: usize,
    /// Number of points in the truncated layer.
    pub count: usize,
    /// Smallest Gram eigenvalue; positive means uniform interpolation.
    pub lambda_min: T,
    /// Largest Gram eigenvalue.
    pub lambda_max: T,
}

/// Weighted orthonormal monomials `u_k(p)` for `k = 0..=n`, evaluated in
/// log-magnitude/phase form so large `|p|` cannot overflow.
fn weighted_monomials<T: Real>(n: usize, p: fock::Point<T>) -> Vec<Complex<T>> {
    let abs_sq = p.abs_sq();
    if abs_sq == T::zero() {
        let mut u = vec![Complex::new(T::zero(), T::zero()); n + 1];
        u[0] = Complex::new(T::one(), T::zero());
        return u;
    }
    let arg = p.im.atan2(p.re);
    (0..=n)
        .map(|k| {
            let lm = fock::log_weighted_monomial_mag(k, abs_sq);
            Complex::from_polar(lm.exp(), wrap_phase(uint::<T>(k) * arg))
        })
        .collect()
}

/// `Q(n+1, pi |p|^2)`: relative kernel energy of the point inside degree `n`.
fn kernel_energy_share<T: Real>(n: usize, p: fock::Point<T>) -> Result<T> {
    let x = T::PI() * p.abs_sq();
    Ok(regularized_gamma(uint::<T>(n + 1), x)?.q)
}

/// Frame matrix `S[k][l] = sum_p conj(u_k(p)) u_l(p) / q_p` of a point layer
/// against the degree-`n` weighted monomial basis.
pub fn mz_frame_matrix<T: Real>(n: usize, layer: &PointSet<T>) -> Result<HermitianMatrix<T>> {
    let dim = n + 1;
    let mut entries = vec![Complex::new(T::zero(), T::zero()); dim * dim];
    for &p in layer.points() {
        let q = kernel_energy_share(n, p)?;
        let u = weighted_monomials(n, p);
        let inv_q = T::one() / q;
        for k in 0..dim {
            let w = u[k].conj() * Complex::new(inv_q, T::zero());
            for l in k..dim {
                entries[k * dim + l] += w * u[l];
            }
        }
    }
    for k in 0..dim {
        for l in (k + 1)..dim {
            entries[l * dim + k] = entries[k * dim + l].conj();
        }
    }
    HermitianMatrix::new(dim, entries)
}

/// Gram matrix `G[i][j] = K_n(p_i, p_j) / sqrt(q_i q_j)` of the normalized
/// degree-`n` kernels pinned at the layer points. The diagonal is exactly 1.
pub fn gram_matrix<T: Real>(n: usize, layer: &PointSet<T>) -> Result<HermitianMatrix<T>> {
    let pts = layer.points();
    let dim = pts.len();
    if dim == 0 {
        return Err(Error::Domain(
            "gram matrix needs a nonempty point layer".to_string(),
        ));
    }
    let q: Vec<T> = pts
        .iter()
        .map(|&p| kernel_energy_share(n, p))
        .collect::<Result<_>>()?;
    let one = Complex::new(T::one(), T::zero());
    let mut entries = vec![Complex::new(T::zero(), T::zero()); dim * dim];
    for i in 0..dim {
        entries[i * dim + i] = one;
        for j in (i + 1)..dim {
            let k = normalized_poly_kernel(n, pts[i], pts[j]).to_complex();
            let scaled = k / Complex::new((q[i] * q[j]).sqrt(), T::zero());
            entries[i * dim + j] = scaled;
            entries[j * dim + i] = scaled.conj();
        }
    }
    HermitianMatrix::new(dim, entries)
}

/// Sampling report over every degree of a family: sharp frame bounds per
/// truncated layer. Requires a sampling-mode family.
pub fn mz_report<T: Real>(spec: &FamilySpec<T>) -> Result<Vec<FrameReport<T>>> {
    if spec.mode != Mode::Sampling {
        return Err(Error::Domain(
            "frame report needs a sampling-mode family".to_string(),
        ));
    }
    let layers = build_family(spec)?;
    spec.degrees
        .iter()
        .map(|&n| {
            let layer = &layers[&n];
            let bounds = mz_frame_matrix(n, layer)?.extreme_eigenvalues()?;
            Ok(FrameReport {
                n,
                count: layer.len(),
                a: bounds.lambda_min,
                b: bounds.lambda_max,
                cond: bounds.lambda_max / bounds.lambda_min,
            })
        })
        .collect()
}

/// Interpolation report over every degree of a family: Gram extremes per
/// truncated layer. Requires an interpolation-mode family.
pub fn interp_report<T: Real>(spec: &FamilySpec<T>) -> Result<Vec<InterpReport<T>>> {
    if spec.mode != Mode::Interpolation {
        return Err(Error::Domain(
            "interpolation report needs an interpolation-mode family".to_string(),
        ));
    }
    let layers = build_family(spec)?;
    spec.degrees
        .iter()
        .map(|&n| {
            let layer = &layers[&n];
            let bounds = gram_matrix(n, layer)?.extreme_eigenvalues()?;
            Ok(InterpReport {
                n,
                count: layer.len(),
                lambda_min: bounds.lambda_min,
                lambda_max: bounds.lambda_max,
            })
        })
        .collect()
}

/// Critical-cardinality scan: for each degree `n` take exactly the `n + 1`
/// lattice points closest to the origin (ties broken by coordinates) and
/// report the frame bounds of that square system. The lower bound decays
/// with `n` — square lattice systems at critical density do not stay
/// uniformly invertible.
pub fn square_case_scan<T: Real>(
    lattice: &LatticeSpec<T>,
    degrees: &[usize],
) -> Result<Vec<FrameReport<T>>> {
    let det = lattice.det().abs();
    if !(det > T::zero()) || !det.is_finite() {
        return Err(Error::Domain(
            "critical scan needs a full-rank lattice".to_string(),
        ));
    }
    let n_max = match degrees.iter().max() {
        Some(&m) => m,
        None => return Ok(Vec::new()),
    };
    let need = n_max + 1;

    // Radius that should cover `need` points by area, padded; grow on a miss.
    let gen_norm = {
        let b = lattice.basis;
        let n0 = (b[0][0] * b[0][0] + b[0][1] * b[0][1]).sqrt();
        let n1 = (b[1][0] * b[1][0] + b[1][1] * b[1][1]).sqrt();
        n0.max(n1)
    };
    let mut rho = (uint::<T>(need) * det / T::PI()).sqrt() + gen_norm + gen_norm + T::one();
    let mut pts = lattice_points_in_disk(lattice, rho)?;
    while pts.len() < need {
        rho = rho * lit::<T>(1.5);
        pts = lattice_points_in_disk(lattice, rho)?;
    }

    // Sort by distance from the origin, then lexicographically for
    // deterministic tie-breaking among symmetric shells.
    let mut ordered = pts.points().to_vec();
    ordered.sort_by(|p, q| {
        (p.abs_sq(), p.re, p.im)
            .partial_cmp(&(q.abs_sq(), q.re, q.im))
            .expect("lattice coordinates are finite")
    });

    degrees
        .iter()
        .map(|&n| {
            let layer = PointSet::new(ordered[..n + 1].to_vec());
            let bounds = mz_frame_matrix(n, &layer)?.extreme_eigenvalues()?;
            Ok(FrameReport {
                n,
                count: layer.len(),
                a: bounds.lambda_min,
                b: bounds.lambda_max,
                cond: bounds.lambda_max / bounds.lambda_min,
            })
        })
        .collect()
}
