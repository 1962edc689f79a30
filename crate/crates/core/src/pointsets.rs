//! Lattice truncation and point-family construction.
//!
//! A family is one finite layer of points per polynomial degree, obtained by
//! intersecting a fixed planar lattice with a degree-dependent disk. In
//! sampling mode the disk is slightly larger than the bulk where degree-`n`
//! polynomials concentrate (`pi rho_n^2 = n + sqrt(n) tau`); in interpolation
//! mode it is slightly smaller (`pi rho_n^2 = n - sqrt(n) (sqrt(2 ln n) +
//! tau)`). The module also carries the counting and separation diagnostics
//! used to sanity-check the constructions, plus a clipped Hausdorff distance
//! for comparing layers geometrically.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::Point;
use crate::real::{lit, uint, Real};

/// Whether a family is built to sample (oversample the bulk) or to
/// interpolate (stay strictly inside it).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Sampling,
    Interpolation,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Sampling => f.write_str("sampling"),
            Mode::Interpolation => f.write_str("interpolation"),
        }
    }
}

/// A full-rank planar lattice `{m g1 + k g2 : m, k integers}`.
///
/// `alpha` is the square-lattice spacing shorthand: `square(alpha)` has
/// generators `(alpha, 0)` and `(0, alpha)` and density `1 / alpha^2` points
/// per unit area. Serialized form carries `alpha` alone for square lattices
/// and adds the basis otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(
    from = "LatticeWire<T>",
    into = "LatticeWire<T>",
    bound(
        serialize = "T: Real + Serialize",
        deserialize = "T: Real + Deserialize<'de>"
    )
)]
pub struct LatticeSpec<T> {
    /// Generator columns: `basis[0]` and `basis[1]` are the two generators,
    /// each as `[x, y]`.
    pub basis: [[T; 2]; 2],
    /// Square-lattice spacing shorthand; for a general basis this is the
    /// equivalent spacing `sqrt(|det|)`.
    pub alpha: T,
}

#[derive(Serialize, Deserialize)]
#[serde(bound(
    serialize = "T: Serialize",
    deserialize = "T: Deserialize<'de>"
))]
struct LatticeWire<T> {
    alpha: T,
    #[serde(default = "Option::default", skip_serializing_if = "Option::is_none")]
    basis: Option<[[T; 2]; 2]>,
}

impl<T: Real> From<LatticeWire<T>> for LatticeSpec<T> {
    fn from(w: LatticeWire<T>) -> Self {
        match w.basis {
            Some(basis) => LatticeSpec {
                basis,
                alpha: w.alpha,
            },
            None => LatticeSpec::square(w.alpha),
        }
    }
}

impl<T: Real> From<LatticeSpec<T>> for LatticeWire<T> {
    fn from(l: LatticeSpec<T>) -> Self {
        let square = LatticeSpec::square(l.alpha);
        LatticeWire {
            alpha: l.alpha,
            basis: if l.basis == square.basis {
                None
            } else {
                Some(l.basis)
            },
        }
    }
}

impl<T: Real> LatticeSpec<T> {
    /// The square lattice `alpha Z^2`.
    pub fn square(alpha: T) -> Self {
        let z = T::zero();
        LatticeSpec {
            basis: [[alpha, z], [z, alpha]],
            alpha,
        }
    }

    /// A lattice from explicit generator columns; the `alpha` shorthand
    /// becomes the equivalent square spacing `sqrt(|det|)`.
    pub fn from_basis(basis: [[T; 2]; 2]) -> Self {
        let alpha = det(&basis).abs().sqrt();
        LatticeSpec { basis, alpha }
    }

    /// Signed area of the fundamental cell.
    pub fn det(&self) -> T {
        det(&self.basis)
    }

    /// Points per unit area: `1 / |det|`.
    pub fn density(&self) -> T {
        T::one() / self.det().abs()
    }
}

fn det<T: Real>(basis: &[[T; 2]; 2]) -> T {
    basis[0][0] * basis[1][1] - basis[0][1] * basis[1][0]
}

/// A finite set of points, sorted lexicographically by `(re, im)` with exact
/// duplicates removed. The ordering makes every construction in the crate
/// reproducible bit-for-bit.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet<T> {
    points: Vec<Point<T>>,
}

impl<T: Real> PointSet<T> {
    /// Sorts the points lexicographically and drops exact duplicates.
    /// Coordinates must be finite (NaN has no place in a point set).
    pub fn new(mut points: Vec<Point<T>>) -> Self {
        points.sort_by(|a, b| {
            (a.re, a.im)
                .partial_cmp(&(b.re, b.im))
                .expect("point coordinates must not be NaN")
        });
        points.dedup_by(|a, b| a.re == b.re && a.im == b.im);
        PointSet { points }
    }

    /// Wraps a vector as-is, without sorting or deduplication. Intended for
    /// diagnostics that deliberately violate the invariants (for example a
    /// layer with a repeated node); ordinary construction goes through
    /// [`PointSet::new`].
    pub fn from_raw_unchecked(points: Vec<Point<T>>) -> Self {
        PointSet { points }
    }

    pub fn points(&self) -> &[Point<T>] {
        &self.points
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point<T>> {
        self.points.iter()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

impl<T: Real + Serialize> Serialize for PointSet<T> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.points.iter().map(|p| [p.re, p.im]))
    }
}

impl<'de, T: Real + Deserialize<'de>> Deserialize<'de> for PointSet<T> {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<[T; 2]>::deserialize(deserializer)?;
        Ok(PointSet::new(
            pairs.into_iter().map(|[re, im]| Point::new(re, im)).collect(),
        ))
    }
}

/// A family construction request: one lattice, one mode, one tail parameter,
/// and the degree list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(
    serialize = "T: Real + Serialize",
    deserialize = "T: Real + Deserialize<'de>"
))]
pub struct FamilySpec<T> {
    pub version: u32,
    pub lattice: LatticeSpec<T>,
    pub mode: Mode,
    pub tau: T,
    pub degrees: Vec<usize>,
}

impl<T: Real> FamilySpec<T> {
    /// Assembles a spec (version 1), sorting and deduplicating the degrees.
    pub fn new(lattice: LatticeSpec<T>, mode: Mode, tau: T, mut degrees: Vec<usize>) -> Self {
        degrees.sort_unstable();
        degrees.dedup();
        FamilySpec {
            version: 1,
            lattice,
            mode,
            tau,
            degrees,
        }
    }

    /// Checks every structural invariant: supported version, full-rank
    /// lattice on the density side its mode requires (`> 1` for sampling,
    /// `< 1` for interpolation), positive finite `tau`, degrees at least 1,
    /// and — in interpolation mode — a positive truncation radicand for
    /// every degree.
    pub fn validate(&self) -> Result<()> {
        if self.version != 1 {
            return Err(Error::Domain(format!(
                "unsupported family spec version {} (expected 1)",
                self.version
            )));
        }
        let d = self.lattice.det().abs();
        if !(d.is_finite() && d > T::zero()) {
            return Err(Error::Domain(
                "lattice basis must be full rank".to_string(),
            ));
        }
        let density = self.lattice.density();
        match self.mode {
            Mode::Sampling if density <= T::one() => {
                return Err(Error::Domain(format!(
                    "sampling mode needs lattice density > 1, got {density}"
                )));
            }
            Mode::Interpolation if density >= T::one() => {
                return Err(Error::Domain(format!(
                    "interpolation mode needs lattice density < 1, got {density}"
                )));
            }
            _ => {}
        }
        if !(self.tau.is_finite() && self.tau > T::zero()) {
            return Err(Error::Domain(format!(
                "tau must be positive and finite, got {}",
                self.tau
            )));
        }
        for &n in &self.degrees {
            if n == 0 {
                return Err(Error::Domain(
                    "family degrees must be at least 1".to_string(),
                ));
            }
            // Surfaces the per-degree radius failure (interpolation radicand).
            truncation_radius(n, self.tau, self.mode)?;
        }
        Ok(())
    }
}

fn radicand<T: Real>(n: usize, tau: T, mode: Mode) -> T {
    let fn_ = uint::<T>(n);
    match mode {
        Mode::Sampling => fn_ + fn_.sqrt() * tau,
        Mode::Interpolation => {
            fn_ - fn_.sqrt() * ((lit::<T>(2.0) * fn_.ln()).sqrt() + tau)
        }
    }
}

/// The smallest degree from which the radicand stays positive for this
/// `tau`/`mode`, if one exists within integer range. The radicand over
/// `sqrt(n)` is increasing from `n = 3` on, so a doubling search followed by
/// a binary search is exact there.
fn smallest_admissible_degree<T: Real>(tau: T, mode: Mode) -> Option<usize> {
    let ok = |n: usize| radicand(n, tau, mode) > T::zero();
    let mut hi = 4usize;
    let cap = 1usize << 40;
    while !ok(hi) {
        hi = hi.checked_mul(2)?;
        if hi > cap {
            return None;
        }
    }
    let mut lo = 3usize; // monotone from here on
    if ok(lo) {
        return Some(if ok(2) { if ok(1) { 1 } else { 2 } } else { 3 });
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(hi)
}

/// The truncation radius for degree `n`: `sqrt((n + sqrt(n) tau) / pi)` in
/// sampling mode, `sqrt((n - sqrt(n) (sqrt(2 ln n) + tau)) / pi)` in
/// interpolation mode (natural logarithm). Degrees start at 1; a
/// non-positive radicand is a domain error whose message names the smallest
/// degree that works.
pub fn truncation_radius<T: Real>(n: usize, tau: T, mode: Mode) -> Result<T> {
    if n == 0 {
        return Err(Error::Domain(
            "truncation radius requires degree n >= 1".to_string(),
        ));
    }
    if !tau.is_finite() {
        return Err(Error::Domain(format!("tau must be finite, got {tau}")));
    }
    let r = radicand(n, tau, mode);
    if r <= T::zero() {
        let hint = match smallest_admissible_degree(tau, mode) {
            Some(m) => format!("smallest admissible degree is {m}"),
            None => "no admissible degree in range".to_string(),
        };
        return Err(Error::Domain(format!(
            "{mode} radius undefined at degree {n} with tau = {tau}: radicand {r} <= 0; {hint}"
        )));
    }
    Ok((r / T::PI()).sqrt())
}

/// All lattice points in the closed disk of radius `rho` about the origin,
/// enumerated over an integer index box derived from the inverse basis and
/// filtered by the exact disk test.
pub fn lattice_points_in_disk<T: Real>(lattice: &LatticeSpec<T>, rho: T) -> Result<PointSet<T>> {
    if !(rho.is_finite() && rho > T::zero()) {
        return Err(Error::Domain(format!(
            "disk radius must be positive and finite, got {rho}"
        )));
    }
    let d = lattice.det();
    if !(d.is_finite() && d.abs() > T::zero()) {
        return Err(Error::Domain(
            "lattice basis must be full rank".to_string(),
        ));
    }
    let [g1, g2] = lattice.basis;
    // Index bounds: |m| <= rho * ||row 1 of B^-1||, |k| <= rho * ||row 2||.
    let inv_norm1 = (g2[0] * g2[0] + g2[1] * g2[1]).sqrt() / d.abs();
    let inv_norm2 = (g1[0] * g1[0] + g1[1] * g1[1]).sqrt() / d.abs();
    let m_max = (rho * inv_norm1).floor();
    let k_max = (rho * inv_norm2).floor();
    let limit = lit::<T>(2e4);
    if m_max > limit || k_max > limit {
        return Err(Error::Domain(format!(
            "disk of radius {rho} would enumerate more than {limit}^2 lattice indices"
        )));
    }
    let m_max = m_max.to_isize().unwrap_or(0) + 1;
    let k_max = k_max.to_isize().unwrap_or(0) + 1;
    let rho2 = rho * rho;
    let mut points = Vec::new();
    for m in -m_max..=m_max {
        let fm = T::from_isize(m).expect("index fits the scalar");
        for k in -k_max..=k_max {
            let fk = T::from_isize(k).expect("index fits the scalar");
            let p = Point::new(fm * g1[0] + fk * g2[0], fm * g1[1] + fk * g2[1]);
            if p.abs_sq() <= rho2 {
                points.push(p);
            }
        }
    }
    Ok(PointSet::new(points))
}

/// Builds the whole family: degree -> lattice points in the degree's
/// truncation disk. Radius failures for any degree abort the build.
pub fn build_family<T: Real>(spec: &FamilySpec<T>) -> Result<BTreeMap<usize, PointSet<T>>> {
    spec.validate()?;
    let mut family = BTreeMap::new();
    for &n in &spec.degrees {
        let rho = truncation_radius(n, spec.tau, spec.mode)?;
        let layer = lattice_points_in_disk(&spec.lattice, rho)?;
        family.insert(n, layer);
    }
    Ok(family)
}

/// One row of a cardinality report: layer size against dimension `n + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CardinalityRow<T> {
    pub n: usize,
    pub count: usize,
    pub ratio: T,
}

/// Counts each layer against the dimension of the degree-`n` polynomial
/// space.
pub fn cardinality_report<T: Real>(
    family: &BTreeMap<usize, PointSet<T>>,
) -> Vec<CardinalityRow<T>> {
    family
        .iter()
        .map(|(&n, layer)| CardinalityRow {
            n,
            count: layer.len(),
            ratio: uint::<T>(layer.len()) / uint::<T>(n + 1),
        })
        .collect()
}

/// Local counting and separation diagnostics for one layer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalCounts<T> {
    /// Largest number of layer points inside a closed disk of radius `rho`
    /// centered at a layer point (the center counts itself).
    pub max_disk_count: usize,
    /// Points with `pi |lambda|^2 > n (1 - epsilon)` — outside the bulk.
    pub outside_bulk_count: usize,
    /// Points with `n - sqrt(n) tau <= pi |lambda|^2 <= n + sqrt(n) tau` —
    /// in the transition annulus.
    pub transition_count: usize,
    /// Minimum pairwise distance; infinity when fewer than two points.
    pub min_separation: T,
}

/// Measures the layer against the degree-`n` geometry: disk counts at scale
/// `rho`, bulk membership at margin `epsilon`, transition membership at
/// width `tau`, and the minimum separation.
pub fn local_count_diagnostics<T: Real>(
    layer: &PointSet<T>,
    n: usize,
    epsilon: T,
    tau: T,
    rho: T,
) -> LocalCounts<T> {
    let pts = layer.points();
    let rho2 = rho * rho;
    let fn_ = uint::<T>(n);
    let bulk_edge = fn_ * (T::one() - epsilon);
    let (lo, hi) = (fn_ - fn_.sqrt() * tau, fn_ + fn_.sqrt() * tau);

    let mut max_disk_count = 0usize;
    let mut outside_bulk_count = 0usize;
    let mut transition_count = 0usize;
    let mut min_sep_sq = T::infinity();
    for (i, p) in pts.iter().enumerate() {
        let mut in_disk = 0usize;
        for (j, q) in pts.iter().enumerate() {
            let dr = p.re - q.re;
            let di = p.im - q.im;
            let d2 = dr * dr + di * di;
            if d2 <= rho2 {
                in_disk += 1;
            }
            if j > i && d2 < min_sep_sq {
                min_sep_sq = d2;
            }
        }
        max_disk_count = max_disk_count.max(in_disk);
        let weighted = T::PI() * p.abs_sq();
        if weighted > bulk_edge {
            outside_bulk_count += 1;
        }
        if weighted >= lo && weighted <= hi {
            transition_count += 1;
        }
    }
    LocalCounts {
        max_disk_count,
        outside_bulk_count,
        transition_count,
        min_separation: min_sep_sq.sqrt(),
    }
}

const BOUNDARY_SAMPLES: usize = 4096;

/// Hausdorff distance between two point sets after clipping both to the
/// closed disk `B(center, radius)` and adjoining a 4096-point discretization
/// of its boundary circle to each side (so emptiness inside the window is
/// measured against the window itself, and far-away points do not dominate).
pub fn hausdorff_distance<T: Real>(
    s: &PointSet<T>,
    t: &PointSet<T>,
    center: Point<T>,
    radius: T,
) -> T {
    debug_assert!(radius > T::zero(), "hausdorff window needs a positive radius");
    let clip = |set: &PointSet<T>| -> Vec<Point<T>> {
        let mut v: Vec<Point<T>> = set
            .iter()
            .copied()
            .filter(|p| p.dist(center) <= radius)
            .collect();
        for j in 0..BOUNDARY_SAMPLES {
            let theta = lit::<T>(2.0) * T::PI() * uint::<T>(j) / uint::<T>(BOUNDARY_SAMPLES);
            v.push(Point::new(
                center.re + radius * theta.cos(),
                center.im + radius * theta.sin(),
            ));
        }
        v
    };
    let a = clip(s);
    let b = clip(t);
    let directed = |from: &[Point<T>], to: &[Point<T>]| -> T {
        let mut worst = T::zero();
        for p in from {
            let mut best = T::infinity();
            for q in to {
                best = best.min(p.dist(*q));
            }
            worst = worst.max(best);
        }
        worst
    };
    directed(&a, &b).max(directed(&b, &a))
}
