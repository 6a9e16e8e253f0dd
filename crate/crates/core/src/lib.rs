//! Exact tropical Fréchet means on the tropical projective torus.
//!
//! Points are kept in the canonical form with first coordinate 0. The
//! library computes the tropical metric, polytropes and their Kleene stars
//! and vertices, Fréchet means (greedy and exact), the polytrope of all
//! means, and positivity certificates that prove a mean optimal.
//!
//! Everything is generic over [`Scalar`]; the aliases below fix it to
//! [`Rational`].

pub mod certify;
pub mod error;
pub mod frechet;
pub mod gen;
pub mod io;
pub mod linalg;
pub mod lp;
pub mod oracle;
pub mod point;
pub mod polytrope;
pub mod scalar;
pub mod segment;
pub mod tropical;

pub use certify::{
    active_pieces, find_certificate, min_quadratic, verify_certificate, Certificate, QuadMin, QuadraticForm,
    SampleWeights, WeightedPiece,
};
pub use error::{Error, Result};
pub use io::{CertificateJson, FrechetResultJson, MatrixJson};
pub use frechet::{
    exact_frechet, fm_polytrope, greedy_frechet, objective, two_point_mean, ExactOptions, FrechetResult,
    GreedyOptions, GreedyResult, QuadraticPiece, SolveError,
};
pub use oracle::{brute_force_frechet, OracleResult, PieceAssignment, TiePattern};
pub use point::{canonicalize, trop_add, trop_dist, trop_scale, Point, Samples};
pub use polytrope::{ball_to_polytrope, intersect, TropMatrix};
pub use scalar::{parse_rational, Rational, Scalar};
pub use segment::{segment_breakpoints, SegmentDecomposition};
pub use tropical::Trop;

/// Exact point of the tropical projective torus.
pub type TorusPoint = Point<Rational>;
/// Exact sample of torus points.
pub type SampleSet = Samples<Rational>;
/// Exact polytrope matrix.
pub type PolytropeMatrix = TropMatrix<Rational>;
