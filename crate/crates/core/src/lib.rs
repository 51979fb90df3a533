//! Approximate packedness of polygonal curves.
//!
//! A curve is `c`-packed if every axis-aligned cube of radius `r` contains at
//! most `c * r` of its length. This crate computes
//!
//! * a 2-approximation in any dimension ([`approx2`]), by sweeping the radius
//!   of cubes centered at every vertex;
//! * a `(6 + ε)`-approximation in the plane ([`approx6`]), by querying a
//!   linear-size family of candidate squares against a segment-tree based
//!   range structure;
//! * brute-force reference bounds ([`oracle`]) used to validate both.

pub mod error;
pub mod exec;
pub mod geometry;
pub mod oracle;
pub mod radial;
pub mod range;
pub mod synth;
pub mod wspd;

pub use error::{GeometryError, PackError};
pub use exec::Execution;
pub use geometry::{clip_length, psi, upsilon, Cube, Curve, Point, Segment};
pub use radial::{
    approx2, approx2_with, best_radius_at_center, radial_events, sweep_profile, Algorithm,
    EventKind, PackednessResult, RadialEvent, SweepProfile,
};
pub use range::{
    approx6, approx6_with, count_intersections, partition_by_slope, Approx6Options, CountingBackend,
    QueryAnswer, RangeStructure, SlopeClass,
};
pub use wspd::{candidate_squares, wspd_pairs, CandidateSquare, CandidateSquareSet, SplitTree, WspdPair};
