//! Shared quadrature machinery for oracle tests: Gauss-Legendre nodes and a
//! self-refining polar quadrature over disks. Test-side only, so everything
//! is plain `f64`.

/// Gauss-Legendre nodes and weights on `[-1, 1]`, by Newton iteration on the
/// Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2);
    let mut nodes = vec![0.0f64; n];
    let mut weights = vec![0.0f64; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev-like initial guess for the i-th positive root.
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0f64;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Integral of `f(re, im)` over the closed disk of radius `radius`, by a
/// polar tensor grid (Gauss-Legendre radially, uniform angularly), with the
/// resolution doubled until two successive values agree to 1e-8 relative.
pub fn disk_quadrature(f: &dyn Fn(f64, f64) -> f64, radius: f64) -> f64 {
    let mut nr = 24usize;
    let mut na = 32usize;
    let mut prev = polar_pass(f, radius, nr, na);
    for _ in 0..6 {
        nr *= 2;
        na *= 2;
        let cur = polar_pass(f, radius, nr, na);
        if (cur - prev).abs() <= 1e-8 * cur.abs().max(1e-300) {
            return cur;
        }
        prev = cur;
    }
    panic!("disk quadrature did not settle at radius {radius}");
}

fn polar_pass(f: &dyn Fn(f64, f64) -> f64, radius: f64, nr: usize, na: usize) -> f64 {
    let (nodes, weights) = gauss_legendre(nr);
    let dtheta = 2.0 * std::f64::consts::PI / na as f64;
    let mut total = 0.0f64;
    for (x, w) in nodes.iter().zip(weights.iter()) {
        let r = radius * (x + 1.0) / 2.0;
        let mut ring = 0.0f64;
        for j in 0..na {
            let theta = dtheta * j as f64;
            ring += f(r * theta.cos(), r * theta.sin());
        }
        total += w * (radius / 2.0) * r * ring * dtheta;
    }
    total
}

/// `(2 / sqrt(pi)) * integral of e^{-t^2} from y to infinity`, by
/// Gauss-Legendre on `[y, y + 15]`; the dropped tail is below 1e-97 of the
/// smallest value the tests compare against.
pub fn erfc_by_integral(y: f64) -> f64 {
    let (nodes, weights) = gauss_legendre(320);
    let half_span = 7.5f64;
    let center = y + half_span;
    let mut total = 0.0f64;
    for (x, w) in nodes.iter().zip(weights.iter()) {
        let t = center + half_span * x;
        total += w * (-t * t).exp();
    }
    total * half_span * 2.0 / std::f64::consts::PI.sqrt()
}
