//! Points, segments, curves, axis-aligned cubes and the length functionals.
//!
//! A [`Cube`] is the closed region `{ x : |x_k - c_k| <= r }`; its radius is
//! half the side length. [`upsilon`] is the length of a curve inside a cube
//! and [`psi`] divides that length by the radius. The packedness of a curve
//! is the supremum of `psi` over all cubes.
//!
//! Under this cube definition a curve that is `c`-packed with respect to balls
//! is at most `sqrt(d) * c`-packed, while a curve that is `c`-packed with
//! respect to cubes is also `c`-packed with respect to balls.

use crate::error::GeometryError;

/// Absolute tolerance used when comparing coordinates for equality.
pub const COORD_EPS: f64 = 1e-12;

/// A point in `R^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self, GeometryError> {
        if coords.is_empty() {
            return Err(GeometryError::EmptyPoint);
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(GeometryError::NonFinite);
        }
        Ok(Self { coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }
}

impl From<[f64; 2]> for Point {
    fn from(c: [f64; 2]) -> Self {
        Point::new(c.to_vec()).expect("finite coordinates")
    }
}

impl From<[f64; 3]> for Point {
    fn from(c: [f64; 3]) -> Self {
        Point::new(c.to_vec()).expect("finite coordinates")
    }
}

/// A straight segment between two points of the same dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Result<Self, GeometryError> {
        check_dim(a.dim(), b.dim())?;
        Ok(Self { a, b })
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    pub fn length(&self) -> f64 {
        distance(self.a.coords(), self.b.coords())
    }
}

/// A closed axis-aligned cube with a center and a positive radius.
#[derive(Clone, Debug, PartialEq)]
pub struct Cube {
    pub center: Point,
    pub radius: f64,
}

impl Cube {
    pub fn new(center: Point, radius: f64) -> Result<Self, GeometryError> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(GeometryError::NonPositiveRadius(radius));
        }
        Ok(Self { center, radius })
    }

    pub fn dim(&self) -> usize {
        self.center.dim()
    }

    pub fn contains(&self, p: &[f64]) -> bool {
        p.iter()
            .zip(self.center.coords())
            .all(|(x, c)| (x - c).abs() <= self.radius)
    }

    /// The cube with the same center and radius scaled by `factor`.
    pub fn scaled(&self, factor: f64) -> Cube {
        Cube {
            center: self.center.clone(),
            radius: self.radius * factor,
        }
    }

    /// The cube grown by `margin` on every side.
    pub fn expanded(&self, margin: f64) -> Cube {
        Cube {
            center: self.center.clone(),
            radius: self.radius + margin,
        }
    }
}

/// A polygonal curve in `R^d` with at least two vertices and no two
/// consecutive vertices equal.
///
/// Vertices are stored as one flat coordinate buffer.
#[derive(Clone, Debug, PartialEq)]
pub struct Curve {
    dim: usize,
    coords: Vec<f64>,
}

impl Curve {
    /// Builds a curve, collapsing consecutive duplicate vertices.
    pub fn new(points: Vec<Point>) -> Result<Self, GeometryError> {
        let dim = points.first().map(Point::dim).ok_or(GeometryError::DegenerateCurve)?;
        let mut coords = Vec::with_capacity(points.len() * dim);
        for p in &points {
            check_dim(dim, p.dim())?;
            coords.extend_from_slice(p.coords());
        }
        Self::from_flat(dim, coords)
    }

    /// Builds a curve from a flat buffer of `dim`-tuples.
    pub fn from_flat(dim: usize, coords: Vec<f64>) -> Result<Self, GeometryError> {
        if dim == 0 {
            return Err(GeometryError::EmptyPoint);
        }
        if coords.len() % dim != 0 {
            return Err(GeometryError::DimensionMismatch {
                expected: dim,
                found: coords.len() % dim,
            });
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(GeometryError::NonFinite);
        }
        let mut out: Vec<f64> = Vec::with_capacity(coords.len());
        for p in coords.chunks_exact(dim) {
            let dup = out.len() >= dim && approx_eq_point(&out[out.len() - dim..], p);
            if !dup {
                out.extend_from_slice(p);
            }
        }
        if out.len() < 2 * dim {
            return Err(GeometryError::DegenerateCurve);
        }
        Ok(Self { dim, coords: out })
    }

    pub fn from_points2(points: &[[f64; 2]]) -> Result<Self, GeometryError> {
        Self::from_flat(2, points.iter().flatten().copied().collect())
    }

    pub fn from_points3(points: &[[f64; 3]]) -> Result<Self, GeometryError> {
        Self::from_flat(3, points.iter().flatten().copied().collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of vertices.
    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    /// Always false; a curve has at least two vertices.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn segment_count(&self) -> usize {
        self.len() - 1
    }

    pub fn vertex(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn vertices(&self) -> impl Iterator<Item = &[f64]> + '_ {
        self.coords.chunks_exact(self.dim)
    }

    /// Endpoints of segment `i`, which joins vertices `i` and `i + 1`.
    pub fn segment(&self, i: usize) -> (&[f64], &[f64]) {
        (self.vertex(i), self.vertex(i + 1))
    }

    pub fn segments(&self) -> impl Iterator<Item = (&[f64], &[f64])> + '_ {
        (0..self.segment_count()).map(move |i| self.segment(i))
    }

    pub fn vertex_point(&self, i: usize) -> Point {
        Point {
            coords: self.vertex(i).to_vec(),
        }
    }

    pub fn total_length(&self) -> f64 {
        self.segments().map(|(a, b)| distance(a, b)).sum()
    }

    pub fn flat_coords(&self) -> &[f64] {
        &self.coords
    }

    /// Per-axis `(min, max)` of the vertices.
    pub fn bounding_box(&self) -> Vec<(f64, f64)> {
        let mut bb = vec![(f64::INFINITY, f64::NEG_INFINITY); self.dim];
        for v in self.vertices() {
            for (b, &x) in bb.iter_mut().zip(v) {
                b.0 = b.0.min(x);
                b.1 = b.1.max(x);
            }
        }
        bb
    }

    /// The curve mapped through `x -> scale * x + shift`.
    pub fn transformed(&self, scale: f64, shift: &[f64]) -> Curve {
        let coords = self
            .coords
            .chunks_exact(self.dim)
            .flat_map(|p| p.iter().zip(shift).map(|(x, t)| scale * x + t))
            .collect();
        Curve { dim: self.dim, coords }
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<(), GeometryError> {
    if expected != found {
        return Err(GeometryError::DimensionMismatch { expected, found });
    }
    Ok(())
}

fn approx_eq_point(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).abs() <= COORD_EPS)
}

pub(crate) fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Parameter range `[t0, t1]` of `a + t (b - a)` inside the closed cube, if any.
///
/// Liang-Barsky against the `2d` half-spaces of the cube.
pub(crate) fn clip_params(a: &[f64], b: &[f64], center: &[f64], r: f64) -> Option<(f64, f64)> {
    let mut t0 = 0.0f64;
    let mut t1 = 1.0f64;
    for k in 0..a.len() {
        let u = a[k] - center[k];
        let d = b[k] - a[k];
        if d == 0.0 {
            if u.abs() > r {
                return None;
            }
            continue;
        }
        let (lo, hi) = if d > 0.0 {
            ((-r - u) / d, (r - u) / d)
        } else {
            ((r - u) / d, (-r - u) / d)
        };
        t0 = t0.max(lo);
        t1 = t1.min(hi);
        if t0 > t1 {
            return None;
        }
    }
    Some((t0, t1))
}

/// Length of the part of segment `ab` inside the cube `(center, r)`.
pub(crate) fn clip_len(a: &[f64], b: &[f64], center: &[f64], r: f64) -> f64 {
    match clip_params(a, b, center, r) {
        Some((t0, t1)) => (t1 - t0) * distance(a, b),
        None => 0.0,
    }
}

/// Euclidean length of `s ∩ h`.
pub fn clip_length(s: &Segment, h: &Cube) -> Result<f64, GeometryError> {
    check_dim(h.dim(), s.dim())?;
    Ok(clip_len(s.a.coords(), s.b.coords(), h.center.coords(), h.radius))
}

/// Total length of `pi` inside `h`.
pub fn upsilon(pi: &Curve, h: &Cube) -> Result<f64, GeometryError> {
    check_dim(h.dim(), pi.dim())?;
    Ok(upsilon_raw(pi, h.center.coords(), h.radius))
}

pub(crate) fn upsilon_raw(pi: &Curve, center: &[f64], r: f64) -> f64 {
    pi.segments().map(|(a, b)| clip_len(a, b, center, r)).sum()
}

/// Packedness value of `h`: `upsilon(pi, h) / h.radius`.
pub fn psi(pi: &Curve, h: &Cube) -> Result<f64, GeometryError> {
    Ok(upsilon(pi, h)? / h.radius)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg(a: [f64; 2], b: [f64; 2]) -> Segment {
        Segment::new(a.into(), b.into()).unwrap()
    }

    fn cube(c: [f64; 2], r: f64) -> Cube {
        Cube::new(c.into(), r).unwrap()
    }

    #[test]
    fn clip_diagonal_chord() {
        let l = clip_length(&seg([0.0, 0.0], [2.0, 2.0]), &cube([0.0, 0.0], 1.0)).unwrap();
        assert!((l - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn clip_disjoint() {
        let l = clip_length(&seg([5.0, 5.0], [6.0, 6.0]), &cube([0.0, 0.0], 1.0)).unwrap();
        assert_eq!(l, 0.0);
    }

    #[test]
    fn clip_full_horizontal_chord() {
        let l = clip_length(&seg([-3.0, 0.5], [3.0, 0.5]), &cube([0.0, 0.0], 1.0)).unwrap();
        assert!((l - 2.0).abs() < 1e-12);
    }

    #[test]
    fn segment_on_face_counts() {
        let l = clip_length(&seg([-3.0, 1.0], [3.0, 1.0]), &cube([0.0, 0.0], 1.0)).unwrap();
        assert!((l - 2.0).abs() < 1e-12);
    }

    #[test]
    fn clip_dimension_mismatch() {
        let s = Segment::new(
            Point::new(vec![0.0, 0.0, 0.0]).unwrap(),
            Point::new(vec![1.0, 0.0, 0.0]).unwrap(),
        )
        .unwrap();
        assert!(matches!(
            clip_length(&s, &cube([0.0, 0.0], 1.0)),
            Err(GeometryError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn upsilon_examples() {
        let unit = Curve::from_points2(&[[0.0, 0.0], [1.0, 0.0]]).unwrap();
        assert!((upsilon(&unit, &cube([0.5, 0.0], 0.5)).unwrap() - 1.0).abs() < 1e-12);
        assert!((upsilon(&unit, &cube([0.0, 0.0], 0.25)).unwrap() - 0.25).abs() < 1e-12);
        let three = Curve::from_points2(&[[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]]).unwrap();
        assert!((upsilon(&three, &cube([1.0, 0.0], 0.5)).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn psi_examples() {
        let unit = Curve::from_points2(&[[0.0, 0.0], [1.0, 0.0]]).unwrap();
        assert!((psi(&unit, &cube([0.5, 0.0], 0.5)).unwrap() - 2.0).abs() < 1e-12);
        assert!((psi(&unit, &cube([0.0, 0.0], 1.0)).unwrap() - 1.0).abs() < 1e-12);
        assert!((psi(&unit, &cube([0.0, 0.0], 0.5)).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn curve_normalization() {
        let c = Curve::from_points2(&[[0.0, 0.0], [0.0, 0.0], [1.0, 0.0], [1.0, 0.0]]).unwrap();
        assert_eq!(c.len(), 2);
        assert!(matches!(
            Curve::from_points2(&[[0.0, 0.0], [0.0, 0.0]]),
            Err(GeometryError::DegenerateCurve)
        ));
        assert!(matches!(
            Curve::from_points2(&[[0.0, f64::NAN], [1.0, 0.0]]),
            Err(GeometryError::NonFinite)
        ));
    }

    #[test]
    fn cube_rejects_bad_radius() {
        assert!(Cube::new([0.0, 0.0].into(), 0.0).is_err());
        assert!(Cube::new([0.0, 0.0].into(), -1.0).is_err());
    }
}
