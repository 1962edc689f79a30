//! Reproducing kernels and energy estimates for the Gaussian-weighted space
//! of entire functions.
//!
//! The weight is `exp(-pi |z|^2)` against planar Lebesgue measure, so the
//! normalized monomials `e_k(z) = (pi^k / k!)^{1/2} z^k` are orthonormal and
//! the degree-`n` polynomials reproduce against the truncated exponential
//! kernel `k_n(z, w) = sum_{k<=n} (pi z conj(w))^k / k!`. Everything here is
//! expressed through the *normalized* kernel — kernel times the Gaussian
//! half-weights in each variable — whose modulus is bounded by
//! `exp(-pi |z - w|^2 / 2)` and therefore never overflows.

use num_complex::Complex;

use crate::real::{lit, uint, Real};
use crate::specfun::{
    log_factorial, regularized_gamma, scaled_exp_partial_sum, truncated_exp_ratio, ScaledComplex,
};

/// A point of the plane, identified with the complex number `re + i im`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point<T> {
    pub re: T,
    pub im: T,
}

impl<T: Real> Point<T> {
    pub fn new(re: T, im: T) -> Self {
        Point { re, im }
    }

    pub fn to_complex(self) -> Complex<T> {
        Complex::new(self.re, self.im)
    }

    /// `|z|^2`.
    pub fn abs_sq(self) -> T {
        self.re * self.re + self.im * self.im
    }

    /// Euclidean distance to another point.
    pub fn dist(self, other: Self) -> T {
        let dr = self.re - other.re;
        let di = self.im - other.im;
        (dr * dr + di * di).sqrt()
    }
}

/// Coefficients `a_0, ..., a_n` of a polynomial in the orthonormal basis
/// `e_k`; its squared norm over the whole plane is plainly
/// `sum_k |a_k|^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientVector<T> {
    entries: Vec<Complex<T>>,
}

impl<T: Real> CoefficientVector<T> {
    pub fn new(entries: Vec<Complex<T>>) -> Self {
        CoefficientVector { entries }
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.entries
    }

    /// The polynomial degree bound `n` (one less than the length).
    pub fn degree(&self) -> usize {
        self.entries.len().saturating_sub(1)
    }

    /// `sum_k |a_k|^2`.
    pub fn norm_sq(&self) -> T {
        self.entries
            .iter()
            .fold(T::zero(), |acc, c| acc + c.norm_sqr())
    }
}

/// `pi * z * conj(w)`, the argument every kernel sum runs over.
fn pi_z_wbar<T: Real>(z: Point<T>, w: Point<T>) -> Complex<T> {
    (z.to_complex() * w.to_complex().conj()) * T::PI()
}

/// `ln |e_k(lambda)| - pi |lambda|^2 / 2` for `|lambda|^2 = abs_sq`: the
/// log-magnitude of the Gaussian-weighted normalized monomial. These weighted
/// values are uniformly bounded by 1, which is what makes direct assembly of
/// sampling matrices stable.
pub(crate) fn log_weighted_monomial_mag<T: Real>(k: usize, abs_sq: T) -> T {
    let half = lit::<T>(0.5);
    if abs_sq == T::zero() {
        return if k == 0 { T::zero() } else { T::neg_infinity() };
    }
    half * (uint::<T>(k) * (T::PI() * abs_sq).ln() - log_factorial::<T>(k))
        - half * T::PI() * abs_sq
}

/// The normalized full kernel
/// `K(z, w) = exp(pi z conj(w)) exp(-pi (|z|^2 + |w|^2) / 2)`,
/// whose modulus is exactly `exp(-pi |z - w|^2 / 2)`.
pub fn normalized_fock_kernel<T: Real>(z: Point<T>, w: Point<T>) -> ScaledComplex<T> {
    let s = pi_z_wbar(z, w);
    let half = lit::<T>(0.5);
    let log_modulus = s.re - half * T::PI() * (z.abs_sq() + w.abs_sq());
    ScaledComplex::new(log_modulus, s.im)
}

/// The normalized degree-`n` kernel
/// `K_n(z, w) = sum_{k<=n} (pi z conj(w))^k / k! * exp(-pi (|z|^2+|w|^2)/2)`,
/// summed with the scaled-term recurrence `t_{k+1} = t_k s / (k+1)` starting
/// from the Gaussian weight.
pub fn normalized_poly_kernel<T: Real>(n: usize, z: Point<T>, w: Point<T>) -> ScaledComplex<T> {
    let s = pi_z_wbar(z, w);
    let half = lit::<T>(0.5);
    let scale = ScaledComplex::new(-half * T::PI() * (z.abs_sq() + w.abs_sq()), T::zero());
    scaled_exp_partial_sum(s, n, scale)
}

/// The Gaussian mass the monomial `z^k` puts on the disk of radius `rho`:
/// `int_{|z|<=rho} |z|^{2k} e^{-pi |z|^2} dm(z) = pi^{-k} k! P(k+1, pi rho^2)`.
pub fn monomial_disk_mass<T: Real>(k: usize, rho: T) -> T {
    let x = T::PI() * rho * rho;
    let p = regularized_gamma(uint::<T>(k) + T::one(), x)
        .expect("finite radius gives a valid gamma cutoff")
        .p;
    (log_factorial::<T>(k) - uint::<T>(k) * T::PI().ln() + p.ln()).exp()
}

/// The exact energy a polynomial leaves outside the disk of radius `rho`:
/// `sum_k |a_k|^2 Q(k+1, pi rho^2)` for coefficients in the orthonormal
/// basis.
pub fn tail_energy_exact<T: Real>(coeffs: &CoefficientVector<T>, rho: T) -> T {
    let x = T::PI() * rho * rho;
    coeffs
        .entries()
        .iter()
        .enumerate()
        .fold(T::zero(), |acc, (k, a)| {
            let q = regularized_gamma(uint::<T>(k) + T::one(), x)
                .expect("finite radius gives a valid gamma cutoff")
                .q;
            acc + a.norm_sqr() * q
        })
}

/// The degree-uniform bound on that tail energy per unit of squared norm:
/// `Q(n+1, pi rho^2)`. Every degree-`n` polynomial satisfies
/// `tail_energy_exact <= tail_energy_bound * norm_sq` because `Q(k+1, x)`
/// grows with `k`.
pub fn tail_energy_bound<T: Real>(n: usize, rho: T) -> T {
    let x = T::PI() * rho * rho;
    regularized_gamma(uint::<T>(n) + T::one(), x)
        .expect("finite radius gives a valid gamma cutoff")
        .q
}

/// `|Gamma(n+1, pi z conj(w)) - Gamma(n+1, pi |z|^2)| / n!`: how far moving
/// the second kernel argument from `z` to `w` displaces the truncated
/// exponential ratio. Decays like `exp(-eps^2 n / 4)` while
/// `pi |z|^2 <= (1 - eps) n` and `|z - w|` stays bounded.
pub fn offdiag_gap<T: Real>(n: usize, z: Point<T>, w: Point<T>) -> T {
    let at_pair = truncated_exp_ratio(n, pi_z_wbar(z, w));
    let at_diag = truncated_exp_ratio(n, Complex::new(T::PI() * z.abs_sq(), T::zero()));
    (at_pair - at_diag).modulus()
}

/// The range of `k_n(z, z) / k(z, z) = Q(n+1, pi |z|^2)` over the bulk disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BulkEquivalence<T> {
    pub min_ratio: T,
    pub max_ratio: T,
}

/// Scans `Q(n+1, x)` for `x` on a 200-point uniform grid over
/// `[0, n + sqrt(n) tau]` (the grid always contains both endpoints): inside
/// that disk the truncated and full kernels are equivalent on the diagonal,
/// and the returned range quantifies the equivalence constants.
pub fn bulk_equivalence<T: Real>(n: usize, tau: T) -> BulkEquivalence<T> {
    let fn_ = uint::<T>(n);
    let upper = (fn_ + fn_.sqrt() * tau).max(T::zero());
    let a = fn_ + T::one();
    let mut min_ratio = T::infinity();
    let mut max_ratio = T::neg_infinity();
    let steps = 200usize;
    for i in 0..steps {
        let x = upper * uint::<T>(i) / uint::<T>(steps - 1);
        let q = regularized_gamma(a, x)
            .expect("grid cutoffs are finite and nonnegative")
            .q;
        min_ratio = min_ratio.min(q);
        max_ratio = max_ratio.max(q);
    }
    BulkEquivalence {
        min_ratio,
        max_ratio,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::erfc;

    fn pt(re: f64, im: f64) -> Point<f64> {
        Point::new(re, im)
    }

    #[test]
    fn full_kernel_diagonal_is_exactly_one() {
        for &z in &[pt(0.0, 0.0), pt(1.5, -2.0), pt(20.0, 13.0)] {
            let k = normalized_fock_kernel(z, z);
            assert_eq!(k.log_modulus(), 0.0);
            assert_eq!(k.phase(), 0.0);
        }
    }

    #[test]
    fn full_kernel_modulus_is_the_gaussian_of_the_distance() {
        let pairs = [
            (pt(0.3, -0.7), pt(1.1, 0.4)),
            (pt(2.0, 1.0), pt(-1.0, 3.0)),
            (pt(5.0, 0.0), pt(5.0, 1.25)),
        ];
        for &(z, w) in &pairs {
            let k = normalized_fock_kernel(z, w);
            let d = z.dist(w);
            let expected = -0.5 * std::f64::consts::PI * d * d;
            assert!((k.log_modulus() - expected).abs() <= 1e-12 * expected.abs().max(1.0));
        }
    }

    #[test]
    fn poly_kernel_diagonal_matches_the_upper_tail() {
        // K_n(z, z) = Q(n+1, pi |z|^2).
        let r = (50.0 / std::f64::consts::PI).sqrt();
        let z = pt(r, 0.0);
        let k = normalized_poly_kernel(100, z, z);
        let q = regularized_gamma(101.0, 50.0).unwrap().q;
        assert!((k.modulus() - q).abs() <= 1e-10 * q);
        assert_eq!(k.phase(), 0.0);
    }

    #[test]
    fn poly_kernel_degree_one_closed_form() {
        let z = pt(0.5, 0.0);
        let w = pt(0.25, 0.0);
        let pi = std::f64::consts::PI;
        let expected = (1.0 + pi * 0.125) * (-0.5 * pi * (0.25 + 0.0625)).exp();
        let got = normalized_poly_kernel(1, z, w).to_complex();
        assert!((got.re - expected).abs() <= 1e-14);
        assert!(got.im.abs() <= 1e-15);
    }

    #[test]
    fn poly_kernel_factors_through_the_full_kernel() {
        // K_n = K * (Gamma(n+1, pi z conj(w)) / n!).
        let z = pt(1.25, -0.5);
        let w = pt(-0.75, 2.0);
        for n in [0usize, 3, 17, 60] {
            let lhs = normalized_poly_kernel(n, z, w);
            let rhs = normalized_fock_kernel(z, w)
                * truncated_exp_ratio(n, pi_z_wbar(z, w));
            let (a, b) = (lhs.to_complex(), rhs.to_complex());
            assert!((a - b).norm() <= 1e-10 * b.norm().max(1e-30), "n = {n}");
        }
    }

    #[test]
    fn poly_kernel_is_hermitian() {
        let z = pt(0.9, 1.7);
        let w = pt(-1.3, 0.2);
        for n in [1usize, 8, 40] {
            let a = normalized_poly_kernel(n, z, w).to_complex();
            let b = normalized_poly_kernel(n, w, z).to_complex().conj();
            assert!((a - b).norm() <= 1e-13 * a.norm().max(1e-30), "n = {n}");
        }
    }

    #[test]
    fn poly_kernel_modulus_never_exceeds_the_cauchy_schwarz_bound() {
        // |K_n(z, w)| <= sqrt(K_n(z, z) K_n(w, w)) <= 1: the truncated kernel
        // is the reproducing kernel of a genuine subspace, so Cauchy-Schwarz
        // caps every off-diagonal value by the diagonal geometric mean.
        let pi = std::f64::consts::PI;
        for n in [2usize, 10, 30] {
            for i in 0..6 {
                for j in 0..6 {
                    let z = pt(0.6 * f64::from(i) - 1.5, 0.4 * f64::from(j));
                    let w = pt(0.5 * f64::from(j) - 1.0, -0.3 * f64::from(i) + 0.7);
                    let qz = regularized_gamma((n + 1) as f64, pi * z.abs_sq()).unwrap().q;
                    let qw = regularized_gamma((n + 1) as f64, pi * w.abs_sq()).unwrap().q;
                    let cap = (qz * qw).sqrt();
                    let m = normalized_poly_kernel(n, z, w).modulus();
                    assert!(m <= cap + 1e-12, "n = {n}, i = {i}, j = {j}: {m} vs {cap}");
                    assert!(cap <= 1.0 + 1e-15);
                }
            }
        }
    }

    #[test]
    fn poly_kernel_diagonal_grows_with_degree_up_to_one() {
        let z = pt(1.8, -0.6);
        let mut prev = 0.0f64;
        for n in 0..=40 {
            let m = normalized_poly_kernel(n, z, z).modulus();
            assert!(m >= prev - 1e-15, "n = {n}");
            assert!(m <= 1.0 + 1e-12, "n = {n}");
            prev = m;
        }
        // And it converges to the full kernel's diagonal value 1.
        assert!((normalized_poly_kernel(80, z, z).modulus() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn monomial_disk_mass_closed_forms() {
        let pi = std::f64::consts::PI;
        // k = 0: 1 - e^{-pi rho^2}.
        let m0 = monomial_disk_mass(0, 1.0f64);
        assert!((m0 - (1.0 - (-pi).exp())).abs() <= 1e-14);
        // k = 1: (1 - (1 + pi) e^{-pi}) / pi at rho = 1.
        let m1 = monomial_disk_mass(1, 1.0f64);
        let exact = (1.0 - (1.0 + pi) * (-pi).exp()) / pi;
        assert!((m1 - exact).abs() <= 1e-14 * exact);
        // Large radius: the full moment pi^{-k} k!.
        let m3 = monomial_disk_mass(3, 10.0f64);
        let full = 6.0 / pi.powi(3);
        assert!((m3 - full).abs() <= 1e-12 * full);
    }

    #[test]
    fn monomial_disk_mass_grows_with_radius() {
        let mut prev = 0.0f64;
        for i in 1..=30 {
            let rho = 0.2 * f64::from(i);
            let m = monomial_disk_mass(4, rho);
            assert!(m >= prev, "rho = {rho}");
            prev = m;
        }
    }

    #[test]
    fn tail_energy_bound_dominates_exact_tail() {
        // Single basis vector e_k: the exact tail is Q(k+1, .), below the
        // degree-n bound for k <= n.
        let rho = (45.0 / std::f64::consts::PI).sqrt();
        let n = 30usize;
        let bound = tail_energy_bound(n, rho);
        for k in 0..=n {
            let mut entries = vec![Complex::new(0.0, 0.0); n + 1];
            entries[k] = Complex::new(1.0, 0.0);
            let exact = tail_energy_exact(&CoefficientVector::new(entries), rho);
            assert!(exact <= bound + 1e-15, "k = {k}");
        }
        // Top coefficient: exact equals the bound.
        let mut entries = vec![Complex::new(0.0, 0.0); n + 1];
        entries[n] = Complex::new(1.0, 0.0);
        let exact = tail_energy_exact(&CoefficientVector::new(entries), rho);
        assert!((exact - bound).abs() <= 1e-15);
    }

    #[test]
    fn tail_energy_bound_reference_magnitudes() {
        // pi rho^2 = n + 6 sqrt(n) keeps less than 1% of the energy outside.
        let n = 100usize;
        let rho = (160.0 / std::f64::consts::PI).sqrt();
        let b = tail_energy_bound(n, rho);
        assert!(b > 0.0 && b < 0.01, "bound = {b}");
        // And the bound decreases as the radius grows.
        let b2 = tail_energy_bound(n, rho * 1.2);
        assert!(b2 < b);
    }

    #[test]
    fn offdiag_gap_vanishes_on_the_diagonal_and_matches_direct_sums() {
        let z = pt(1.1, 0.9);
        assert_eq!(offdiag_gap(25, z, z), 0.0);

        // Direct complex-arithmetic oracle at moderate magnitudes.
        let n = 20usize;
        let w = pt(1.6, 0.4);
        let direct = {
            let f = |s: Complex<f64>| {
                let mut sum = Complex::new(0.0, 0.0);
                let mut term = Complex::new(1.0, 0.0);
                for k in 0..=n {
                    if k > 0 {
                        term = term * s / Complex::new(k as f64, 0.0);
                    }
                    sum += term;
                }
                sum * (-s).exp()
            };
            let s = pi_z_wbar(z, w);
            let x = Complex::new(std::f64::consts::PI * z.abs_sq(), 0.0);
            (f(s) - f(x)).norm()
        };
        let got = offdiag_gap(n, z, w);
        assert!((got - direct).abs() <= 1e-12, "{got} vs {direct}");
    }

    #[test]
    fn bulk_equivalence_ranges() {
        // The grid contains 0, where the ratio is exactly 1.
        let b = bulk_equivalence::<f64>(100, 0.0);
        assert_eq!(b.max_ratio, 1.0);
        // Up to the bulk edge at tau = 0 the ratio stays above 1/2.
        assert!(b.min_ratio > 0.5, "min = {}", b.min_ratio);

        // With tau = 3 the floor is a fixed fraction of erfc(3 / sqrt(2)).
        let b = bulk_equivalence::<f64>(400, 3.0);
        assert_eq!(b.max_ratio, 1.0);
        let floor = 0.25 * erfc(3.0f64 / 2.0f64.sqrt());
        assert!(b.min_ratio >= floor, "min = {} floor = {floor}", b.min_ratio);
    }

    #[test]
    fn coefficient_vectors_report_norm_and_degree() {
        let v = CoefficientVector::new(vec![
            Complex::new(1.0f64, 0.0),
            Complex::new(0.0, -2.0),
            Complex::new(2.0, 1.0),
        ]);
        assert_eq!(v.degree(), 2);
        assert!((v.norm_sq() - 10.0).abs() < 1e-15);
    }
}
