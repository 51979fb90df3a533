//! Slope classes and the isometries mapping each class to slopes in `[0, 1]`.

use crate::geometry::Curve;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SlopeClass {
    /// Slopes in `(-inf, -1)`.
    SteepNegative,
    /// Slopes in `[-1, 0)`.
    ShallowNegative,
    /// Slopes in `[0, 1)`.
    ShallowPositive,
    /// Slopes in `[1, inf]`, including vertical segments.
    SteepPositive,
}

impl SlopeClass {
    pub const ALL: [SlopeClass; 4] = [
        SlopeClass::ShallowPositive,
        SlopeClass::SteepPositive,
        SlopeClass::ShallowNegative,
        SlopeClass::SteepNegative,
    ];

    pub fn of(a: [f64; 2], b: [f64; 2]) -> SlopeClass {
        let (mut dx, mut dy) = (b[0] - a[0], b[1] - a[1]);
        if dx == 0.0 {
            return SlopeClass::SteepPositive;
        }
        if dx < 0.0 {
            dx = -dx;
            dy = -dy;
        }
        if dy >= 0.0 {
            if dy < dx {
                SlopeClass::ShallowPositive
            } else {
                SlopeClass::SteepPositive
            }
        } else if -dy <= dx {
            SlopeClass::ShallowNegative
        } else {
            SlopeClass::SteepNegative
        }
    }

    /// Maps a point of this class into the canonical frame.
    pub fn forward(self, p: [f64; 2]) -> [f64; 2] {
        let [x, y] = p;
        match self {
            SlopeClass::ShallowPositive => [x, y],
            SlopeClass::SteepPositive => [y, x],
            SlopeClass::ShallowNegative => [x, -y],
            SlopeClass::SteepNegative => [-y, x],
        }
    }

    /// Inverse of [`SlopeClass::forward`].
    pub fn inverse(self, p: [f64; 2]) -> [f64; 2] {
        let [x, y] = p;
        match self {
            SlopeClass::ShallowPositive => [x, y],
            SlopeClass::SteepPositive => [y, x],
            SlopeClass::ShallowNegative => [x, -y],
            SlopeClass::SteepNegative => [y, -x],
        }
    }

    pub fn index(self) -> usize {
        match self {
            SlopeClass::ShallowPositive => 0,
            SlopeClass::SteepPositive => 1,
            SlopeClass::ShallowNegative => 2,
            SlopeClass::SteepNegative => 3,
        }
    }
}

/// A curve segment in canonical form: `a.x < b.x` and slope in `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FormSegment {
    pub a: [f64; 2],
    pub b: [f64; 2],
    /// Index of the segment in the curve.
    pub index: usize,
}

impl FormSegment {
    fn new(p: [f64; 2], q: [f64; 2], index: usize) -> Self {
        if p[0] <= q[0] {
            FormSegment { a: p, b: q, index }
        } else {
            FormSegment { a: q, b: p, index }
        }
    }
}

/// The segments of each class, mapped into canonical form. Indexed by
/// [`SlopeClass::index`].
#[derive(Clone, Debug, Default)]
pub struct SlopePartition {
    pub classes: [Vec<FormSegment>; 4],
}

impl SlopePartition {
    pub fn class(&self, c: SlopeClass) -> &[FormSegment] {
        &self.classes[c.index()]
    }
}

/// Splits the segments of a planar curve by slope class.
pub fn partition_by_slope(pi: &Curve) -> SlopePartition {
    assert_eq!(pi.dim(), 2, "slope classes are defined for planar curves");
    let mut out = SlopePartition::default();
    for (i, (a, b)) in pi.segments().enumerate() {
        let (a, b) = ([a[0], a[1]], [b[0], b[1]]);
        let c = SlopeClass::of(a, b);
        out.classes[c.index()].push(FormSegment::new(c.forward(a), c.forward(b), i));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_examples() {
        assert_eq!(SlopeClass::of([0.0, 0.0], [2.0, 1.0]), SlopeClass::ShallowPositive);
        assert_eq!(SlopeClass::of([0.0, 0.0], [1.0, 1.0]), SlopeClass::SteepPositive);
        assert_eq!(SlopeClass::of([0.0, 0.0], [0.0, 1.0]), SlopeClass::SteepPositive);
        assert_eq!(SlopeClass::of([0.0, 0.0], [1.0, -1.0]), SlopeClass::ShallowNegative);
        assert_eq!(SlopeClass::of([0.0, 0.0], [1.0, -3.0]), SlopeClass::SteepNegative);
        assert_eq!(SlopeClass::of([0.0, 0.0], [-2.0, 0.0]), SlopeClass::ShallowPositive);
    }

    #[test]
    fn forward_maps_into_unit_slope_range() {
        let segs = [
            ([0.0, 0.0], [1.0, 3.0]),
            ([0.0, 0.0], [0.0, -2.0]),
            ([1.0, 1.0], [2.0, 0.5]),
            ([1.0, 1.0], [0.0, 4.0]),
            ([0.0, 0.0], [1.0, -1.0]),
        ];
        for (a, b) in segs {
            let c = SlopeClass::of(a, b);
            let s = FormSegment::new(c.forward(a), c.forward(b), 0);
            let (dx, dy) = (s.b[0] - s.a[0], s.b[1] - s.a[1]);
            assert!(dx > 0.0 && dy >= 0.0 && dy <= dx, "{c:?}");
            assert_eq!(c.inverse(c.forward(a)), a);
        }
    }
}
