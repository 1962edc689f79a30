//! Time-frequency (Gabor) side of the sampling problem.
//!
//! A point `lambda = x + i xi` of the plane acts on the Gaussian window
//! `g(t) = 2^{1/4} e^{-pi t^2}` by the time-frequency shift
//! `pi(lambda) g(t) = e^{2 pi i xi t} g(t - x)`. Against the orthonormal
//! Hermite functions `h_k` these shifts have the closed-form inner products
//!
//! ```text
//! <h_k, pi(lambda) g> = conj(e_k(lambda)) e^{-pi |lambda|^2 / 2} e^{-i pi x xi},
//! ```
//!
//! where `e_k(z) = (pi^k / k!)^{1/2} z^k` is the weighted monomial basis used
//! on the analytic side. The identity is what makes Gabor systems over the
//! span of `h_0..h_n` and weighted polynomial sampling the same problem: the
//! unimodular factor `e^{-i pi x xi}` cancels in every frame-type matrix, so
//! the two sides produce identical spectra. This module evaluates the inner
//! products both by direct quadrature and by the closed form, assembles the
//! subspace frame matrix from either source, and reports how far apart the
//! two routes land.

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock;
use crate::real::{lit, uint, Real};
use crate::specfun::wrap_phase;
use crate::spectral::HermitianMatrix;

/// `2^{1/4}`, the peak normalization of the unit-norm Gaussian window.
const QUARTIC_ROOT_OF_TWO: f64 = 1.189_207_115_002_721;

/// A point of the time-frequency plane: time shift `x`, frequency shift `xi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TFPoint<T> {
    pub x: T,
    pub xi: T,
}

impl<T: Real> TFPoint<T> {
    pub fn new(x: T, xi: T) -> Self {
        Self { x, xi }
    }

    /// `x^2 + xi^2`, the squared modulus of `x + i xi`.
    pub fn abs_sq(&self) -> T {
        self.x * self.x + self.xi * self.xi
    }
}

/// Trapezoid-rule layout for the inner-product integrals: symmetric window
/// `[-half_width, half_width]` and initial step, refined by halving until the
/// vector of integrals settles.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct QuadratureSpec<T> {
    pub half_width: T,
    pub step: T,
}

impl<T: Real> QuadratureSpec<T> {
    /// Default layout for degree `n` at the point `p`: a window wide enough
    /// for every Hermite function through index `n` (plus Gaussian margin)
    /// and at least eight initial nodes per oscillation of the frequency
    /// factor `e^{-2 pi i xi t}`.
    pub fn for_degree(n: usize, p: TFPoint<T>) -> Self {
        let nf = uint::<T>(n);
        let eight = lit::<T>(8.0);
        let half_width = ((nf + eight * nf.sqrt()) / T::PI()).sqrt() + lit::<T>(5.0);
        let step = T::one() / (eight * (T::one() + p.xi.abs() + nf.sqrt()));
        Self { half_width, step }
    }

    fn validate(&self) -> Result<()> {
        let ok = self.half_width.is_finite()
            && self.step.is_finite()
            && self.half_width > T::zero()
            && self.step > T::zero()
            && self.step <= self.half_width;
        if ok {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "quadrature layout needs 0 < step <= half_width, got step {} and half_width {}",
                self.step, self.half_width
            )))
        }
    }
}

/// Orthonormal Hermite values `h_0(t), ..., h_n(t)` by the stable upward
/// recurrence `h_{k+1} = (2 sqrt(pi) t h_k - sqrt(k) h_{k-1}) / sqrt(k + 1)`.
pub fn hermite_values<T: Real>(n: usize, t: T) -> Vec<T> {
    let mut out = vec![T::zero(); n + 1];
    hermite_values_into(t, &mut out);
    out
}

fn hermite_values_into<T: Real>(t: T, out: &mut [T]) {
    let len = out.len();
    if len == 0 {
        return;
    }
    out[0] = lit::<T>(QUARTIC_ROOT_OF_TWO) * (-T::PI() * t * t).exp();
    if len == 1 {
        return;
    }
    let two_sqrt_pi = (T::one() + T::one()) * T::PI().sqrt();
    out[1] = two_sqrt_pi * t * out[0];
    for k in 1..len - 1 {
        let kf = uint::<T>(k);
        out[k + 1] = (two_sqrt_pi * t * out[k] - kf.sqrt() * out[k - 1]) / (kf + T::one()).sqrt();
    }
}

/// Closed-form inner product `<h_k, pi(lambda) g>` for `lambda = x + i xi`.
pub fn tf_inner_closed_form<T: Real>(k: usize, p: TFPoint<T>) -> Complex<T> {
    let abs_sq = p.abs_sq();
    let twist = -T::PI() * p.x * p.xi;
    if abs_sq == T::zero() {
        return if k == 0 {
            Complex::new(T::one(), T::zero())
        } else {
            Complex::new(T::zero(), T::zero())
        };
    }
    let arg = p.xi.atan2(p.x);
    let lm = fock::log_weighted_monomial_mag(k, abs_sq);
    let phase = wrap_phase(twist - uint::<T>(k) * arg);
    Complex::from_polar(lm.exp(), phase)
}

/// Inner products `<h_k, pi(lambda) g>` for every `k = 0..=n` by trapezoid
/// quadrature with step-halving refinement. Stops once two successive
/// refinements agree to `max(1e-10, 32 eps)` in the max-abs sense; more than
/// six refinements is a convergence failure.
pub fn tf_inner_quadrature<T: Real>(
    n: usize,
    p: TFPoint<T>,
    spec: &QuadratureSpec<T>,
) -> Result<Vec<Complex<T>>> {
    spec.validate()?;
    let dim = n + 1;
    let half = spec.half_width;
    let two_pi_xi = (T::one() + T::one()) * T::PI() * p.xi;
    let mut scratch = vec![T::zero(); dim];

    // Integrand vector f_k(t) = h_k(t) g(t - x) e^{-2 pi i xi t}.
    let eval = |t: T, weight: T, acc: &mut [Complex<T>], scratch: &mut [T]| {
        hermite_values_into(t, scratch);
        let shifted = t - p.x;
        let window = lit::<T>(QUARTIC_ROOT_OF_TWO) * (-T::PI() * shifted * shifted).exp();
        let osc = Complex::from_polar(weight * window, -two_pi_xi * t);
        for (a, h) in acc.iter_mut().zip(scratch.iter()) {
            *a += osc.scale(*h);
        }
    };

    let two = T::one() + T::one();
    let mut steps = ((two * half) / spec.step)
        .ceil()
        .to_usize()
        .ok_or_else(|| Error::Domain("quadrature step count overflows".to_string()))?
        .max(8);
    let mut h = two * half / uint::<T>(steps);

    // First full trapezoid pass.
    let mut sum = vec![Complex::new(T::zero(), T::zero()); dim];
    eval(-half, lit::<T>(0.5), &mut sum, &mut scratch);
    eval(half, lit::<T>(0.5), &mut sum, &mut scratch);
    for i in 1..steps {
        eval(-half + uint::<T>(i) * h, T::one(), &mut sum, &mut scratch);
    }
    for s in sum.iter_mut() {
        *s = s.scale(h);
    }

    let tol = lit::<T>(1e-10).max(lit::<T>(32.0) * T::epsilon());
    for _ in 0..6 {
        // Midpoint insertion halves the step without re-evaluating old nodes.
        let mut mids = vec![Complex::new(T::zero(), T::zero()); dim];
        for i in 0..steps {
            let t = -half + (uint::<T>(i) + lit::<T>(0.5)) * h;
            eval(t, T::one(), &mut mids, &mut scratch);
        }
        let half_h = h / two;
        let refined: Vec<Complex<T>> = sum
            .iter()
            .zip(mids.iter())
            .map(|(s, m)| s.scale(lit::<T>(0.5)) + m.scale(half_h))
            .collect();
        let diff = refined
            .iter()
            .zip(sum.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max);
        sum = refined;
        h = half_h;
        steps *= 2;
        if diff <= tol {
            return Ok(sum);
        }
    }
    Err(Error::Convergence(format!(
        "inner-product quadrature did not settle after 6 refinements at x {} xi {}",
        p.x, p.xi
    )))
}

/// Which evaluation route feeds the subspace frame matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixSource {
    Quadrature,
    ClosedForm,
}

/// Frame-type matrix of the time-frequency system over the Hermite subspace
/// `span(h_0..h_n)`: `M[j][k] = sum_lambda v_j conj(v_k)` with
/// `v_k = <h_k, pi(lambda) g>`, so that `f^H M f = sum_lambda |<f, pi(lambda) g>|^2`
/// for coefficient vectors paired conjugate-linearly against the `v_k`.
pub fn subspace_frame_matrix<T: Real>(
    n: usize,
    layer: &[TFPoint<T>],
    source: MatrixSource,
) -> Result<HermitianMatrix<T>> {
    if layer.is_empty() {
        return Err(Error::Domain(
            "subspace frame matrix needs a nonempty point layer".to_string(),
        ));
    }
    let dim = n + 1;
    let mut entries = vec![Complex::new(T::zero(), T::zero()); dim * dim];
    for &p in layer {
        let v: Vec<Complex<T>> = match source {
            MatrixSource::Quadrature => {
                tf_inner_quadrature(n, p, &QuadratureSpec::for_degree(n, p))?
            }
            MatrixSource::ClosedForm => (0..=n).map(|k| tf_inner_closed_form(k, p)).collect(),
        };
        for j in 0..dim {
            let w = v[j];
            for k in j..dim {
                entries[j * dim + k] += w * v[k].conj();
            }
        }
    }
    for j in 0..dim {
        for k in (j + 1)..dim {
            entries[k * dim + j] = entries[j * dim + k].conj();
        }
    }
    HermitianMatrix::new(dim, entries)
}

/// Agreement report between the quadrature and closed-form routes to the
/// subspace frame matrix: entrywise gap, sorted-eigenvalue gap, and the
/// closed-form extreme eigenvalues.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CrosscheckReport<T> {
    pub n: usize,
    pub count: usize,
    pub max_entry_gap: T,
    pub eig_gap: T,
    pub lambda_min: T,
    pub lambda_max: T,
}

/// Build the subspace frame matrix by both routes and compare them.
pub fn gabor_fock_crosscheck<T: Real>(
    n: usize,
    layer: &[TFPoint<T>],
) -> Result<CrosscheckReport<T>> {
    let quad = subspace_frame_matrix(n, layer, MatrixSource::Quadrature)?;
    let closed = subspace_frame_matrix(n, layer, MatrixSource::ClosedForm)?;
    let dim = n + 1;
    let mut max_entry_gap = T::zero();
    for i in 0..dim {
        for j in 0..dim {
            max_entry_gap = max_entry_gap.max((quad.get(i, j) - closed.get(i, j)).norm());
        }
    }
    let vq = quad.eigenvalues()?;
    let vc = closed.eigenvalues()?;
    let eig_gap = vq
        .iter()
        .zip(vc.iter())
        .map(|(a, b)| (*a - *b).abs())
        .fold(T::zero(), T::max);
    Ok(CrosscheckReport {
        n,
        count: layer.len(),
        max_entry_gap,
        eig_gap,
        lambda_min: vc[0],
        lambda_max: vc[dim - 1],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_functions_are_orthonormal_under_direct_quadrature() {
        // Plain trapezoid on [-9, 9] with a fine step; the integrands decay
        // like Gaussians so this is effectively exact.
        let n = 12usize;
        let half = 9.0f64;
        let step = 0.005f64;
        let m = (2.0 * half / step) as usize;
        let mut gram = vec![0.0f64; (n + 1) * (n + 1)];
        for i in 0..=m {
            let t = -half + step * i as f64;
            let w = if i == 0 || i == m { 0.5 } else { 1.0 };
            let h = hermite_values(n, t);
            for j in 0..=n {
                for k in j..=n {
                    gram[j * (n + 1) + k] += w * h[j] * h[k] * step;
                }
            }
        }
        for j in 0..=n {
            for k in j..=n {
                let expect = if j == k { 1.0 } else { 0.0 };
                let got = gram[j * (n + 1) + k];
                assert!(
                    (got - expect).abs() < 1e-10,
                    "<h_{j}, h_{k}> = {got}"
                );
            }
        }
    }

    #[test]
    fn inner_products_at_the_origin_reduce_to_kronecker_delta() {
        let p = TFPoint::new(0.0f64, 0.0);
        let v = tf_inner_quadrature(12, p, &QuadratureSpec::for_degree(12, p)).unwrap();
        assert!((v[0].re - 1.0).abs() < 1e-10);
        assert!(v[0].im.abs() < 1e-12);
        for vk in &v[1..] {
            assert!(vk.norm() < 1e-10);
        }
    }

    #[test]
    fn quadrature_matches_the_closed_form_inner_products() {
        for &(x, xi) in &[(0.7f64, -1.3), (-2.2, 0.4), (1.0, 0.5), (3.0, 2.5)] {
            let p = TFPoint::new(x, xi);
            let n = 8;
            let v = tf_inner_quadrature(n, p, &QuadratureSpec::for_degree(n, p)).unwrap();
            for (k, vk) in v.iter().enumerate() {
                let c = tf_inner_closed_form(k, p);
                assert!(
                    (vk - c).norm() < 1e-8,
                    "k {k} at ({x}, {xi}): {vk} vs {c}"
                );
            }
        }
    }

    #[test]
    fn the_phase_twist_has_the_right_sign() {
        // At (x, xi) = (1, 1/2) the k = 0 inner product is
        // e^{-pi 5/8} e^{-i pi/2}: purely negative-imaginary. Quadrature is
        // the arbiter of the convention.
        let p = TFPoint::new(1.0f64, 0.5);
        let v = tf_inner_quadrature(0, p, &QuadratureSpec::for_degree(0, p)).unwrap();
        let modulus = (-std::f64::consts::PI * 0.625).exp();
        assert!(v[0].re.abs() < 1e-10);
        assert!((v[0].im + modulus).abs() < 1e-10, "v0 = {}", v[0]);
        let c = tf_inner_closed_form(0, p);
        assert!((v[0] - c).norm() < 1e-10);
    }

    #[test]
    fn modulus_identity_against_the_weighted_monomials() {
        // |<h_k, pi(lambda) g>| must equal the weighted monomial magnitude.
        for &(x, xi) in &[(1.5f64, 0.0), (0.0, 2.5), (-1.2, 3.1), (2.9, -2.0)] {
            let p = TFPoint::new(x, xi);
            let n = 10;
            let v = tf_inner_quadrature(n, p, &QuadratureSpec::for_degree(n, p)).unwrap();
            for (k, vk) in v.iter().enumerate() {
                let expect = fock::log_weighted_monomial_mag(k, p.abs_sq()).exp();
                assert!(
                    (vk.norm() - expect).abs() < 1e-8,
                    "k {k} at ({x}, {xi}): modulus {} vs {expect}",
                    vk.norm()
                );
            }
        }
    }

    #[test]
    fn inner_product_energy_equals_the_kernel_share() {
        // sum_{k <= n} |<h_k, pi(lambda) g>|^2 = Q(n + 1, pi |lambda|^2).
        use crate::specfun::regularized_gamma;
        for &(x, xi) in &[(1.1f64, 0.6), (2.0, -1.0)] {
            let p = TFPoint::new(x, xi);
            let n = 9;
            let v = tf_inner_quadrature(n, p, &QuadratureSpec::for_degree(n, p)).unwrap();
            let energy: f64 = v.iter().map(|c| c.norm_sqr()).sum();
            let q = regularized_gamma((n + 1) as f64, std::f64::consts::PI * p.abs_sq())
                .unwrap()
                .q;
            assert!((energy - q).abs() < 1e-8, "energy {energy} vs q {q}");
        }
    }

    #[test]
    fn degree_zero_frame_matrix_is_the_gaussian_mass() {
        let layer = [
            TFPoint::new(0.0f64, 0.0),
            TFPoint::new(1.0, 0.0),
            TFPoint::new(-0.5, 0.8),
        ];
        let expect: f64 = layer
            .iter()
            .map(|p| (-std::f64::consts::PI * p.abs_sq()).exp())
            .sum();
        let closed = subspace_frame_matrix(0, &layer, MatrixSource::ClosedForm).unwrap();
        assert!((closed.get(0, 0).re - expect).abs() < 1e-12);
        let quad = subspace_frame_matrix(0, &layer, MatrixSource::Quadrature).unwrap();
        assert!((quad.get(0, 0).re - expect).abs() < 1e-9);
    }

    #[test]
    fn crosscheck_report_is_tight_on_a_small_layer() {
        let layer = [
            TFPoint::new(0.0f64, 0.0),
            TFPoint::new(0.9, 0.0),
            TFPoint::new(0.0, -0.9),
            TFPoint::new(-0.9, 0.9),
            TFPoint::new(0.5, 0.5),
        ];
        let report = gabor_fock_crosscheck(3, &layer).unwrap();
        assert_eq!(report.n, 3);
        assert_eq!(report.count, 5);
        assert!(report.max_entry_gap < 1e-8);
        assert!(report.eig_gap < 1e-8);
        assert!(report.lambda_min > 0.0);
        assert!(report.lambda_max >= report.lambda_min);
    }

    #[test]
    fn frame_sums_from_quadrature_match_the_closed_form_matrix() {
        // For f in span(h_0..h_5), sum_lambda |<f, pi(lambda) g>|^2 computed
        // with quadrature inner products must match f^H M f with M from the
        // closed form.
        let n = 5usize;
        let mut layer = Vec::new();
        for i in -3i32..3 {
            for j in -3i32..3 {
                if i * i + j * j < 8 {
                    layer.push(TFPoint::new(0.8 * f64::from(i), 0.8 * f64::from(j)));
                }
            }
        }
        assert!(layer.len() >= 20);
        let m = subspace_frame_matrix(n, &layer, MatrixSource::ClosedForm).unwrap();

        let mut seed = 0xA0761D6478BD642Fu64;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            (seed >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        for _ in 0..3 {
            let f: Vec<Complex<f64>> = (0..=n).map(|_| Complex::new(next(), next())).collect();
            let mut quad_form = Complex::new(0.0, 0.0);
            for j in 0..=n {
                for k in 0..=n {
                    quad_form += f[j].conj() * m.get(j, k) * f[k];
                }
            }
            let mut direct = 0.0f64;
            for &p in &layer {
                let v = tf_inner_quadrature(n, p, &QuadratureSpec::for_degree(n, p)).unwrap();
                let pairing: Complex<f64> =
                    f.iter().zip(v.iter()).map(|(fj, vj)| fj.conj() * vj).sum();
                direct += pairing.norm_sqr();
            }
            assert!(quad_form.im.abs() < 1e-10 * quad_form.re.abs());
            assert!(
                (quad_form.re - direct).abs() < 1e-6 * direct,
                "matrix form {} vs direct sum {direct}",
                quad_form.re
            );
        }
    }

    #[test]
    fn riemann_sums_of_inner_product_energy_approach_one() {
        // sum over a fine lattice of cell_area * |<h_k, pi(lambda) g>|^2
        // approximates the continuous time-frequency energy, which is
        // ||h_k||^2 ||g||^2 = 1. Loose tolerance: it is a Riemann sum.
        let step = 0.2f64;
        for k in 0..=3usize {
            let mut total = 0.0f64;
            let reach = (5.0 / step) as i32;
            for i in -reach..=reach {
                for j in -reach..=reach {
                    let p = TFPoint::new(step * f64::from(i), step * f64::from(j));
                    total += step * step * tf_inner_closed_form(k, p).norm_sqr();
                }
            }
            assert!((total - 1.0).abs() < 0.02, "k = {k}: {total}");
        }
    }

    #[test]
    fn scaled_layers_change_the_frame_matrix() {
        let layer: Vec<TFPoint<f64>> = vec![
            TFPoint::new(0.5, 0.0),
            TFPoint::new(0.0, 0.5),
            TFPoint::new(-0.5, 0.5),
        ];
        let doubled: Vec<TFPoint<f64>> =
            layer.iter().map(|p| TFPoint::new(2.0 * p.x, 2.0 * p.xi)).collect();
        let a = subspace_frame_matrix(2, &layer, MatrixSource::ClosedForm).unwrap();
        let b = subspace_frame_matrix(2, &doubled, MatrixSource::ClosedForm).unwrap();
        assert!((a.get(0, 0).re - b.get(0, 0).re).abs() > 1e-3);
    }

    #[test]
    fn invalid_quadrature_layouts_are_rejected() {
        let p = TFPoint::new(0.3f64, 0.3);
        for spec in [
            QuadratureSpec { half_width: 0.0, step: 0.1 },
            QuadratureSpec { half_width: 8.0, step: 0.0 },
            QuadratureSpec { half_width: 8.0, step: -0.5 },
            QuadratureSpec { half_width: 1.0, step: 2.0 },
            QuadratureSpec { half_width: f64::NAN, step: 0.1 },
        ] {
            assert!(tf_inner_quadrature(3, p, &spec).is_err());
        }
        assert!(subspace_frame_matrix::<f64>(3, &[], MatrixSource::ClosedForm).is_err());
    }
}
