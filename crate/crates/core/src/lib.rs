//! Quadrics in (±1)-skew projective spaces.
//!
//! Given the sign table `ε` of a (±1)-skew polynomial algebra `S` in `n`
//! variables and the quadric `f = x_1² + … + x_n²`, this crate computes
//!
//! * the bad triples of `ε` and the point scheme of `S` ([`sign`], [`point_scheme`]),
//! * the Wedderburn type `M_d(k)^c` of the Clifford-type algebra `C(A)`
//!   together with an explicit matrix representation ([`clifford`]),
//! * a brute-force certificate of that type from structure constants ([`oracle`]),
//! * the stable-category label `D^b(mod k^N)` and exhaustive sweeps ([`classifier`]).
//!
//! Arithmetic is exact throughout: signs are `i8`, `F₂` data are bit vectors,
//! and linear algebra runs over the rational scalars aliased below.

pub mod classifier;
pub mod clifford;
pub mod error;
pub mod linalg;
pub mod oracle;
pub mod point_scheme;
pub mod scalar;
pub mod sign;

pub use classifier::{
    analyze, catalog, expected_from_ell, stable_category, verify_conjecture, verify_theorems, Analysis, CategoryLabel,
    HistogramEntry, OrbitSummary, SweepError, SweepOptions, SweepReport, Verdict,
};
pub use clifford::{
    anticommutation_form, explicit_representation, mu_matrix, symplectic_basis, wedderburn_type, CommutationMatrix,
    F2Form, Representation, WedderburnType,
};
pub use error::{Error, Result};
pub use linalg::Matrix;
pub use oracle::{certify_wedderburn, structure_constants, AlgebraTable, Certificate, CertificationError};
pub use point_scheme::{count_p1, minimal_transversals, point_scheme, PointScheme, SchemeLabel, VertexSet};
pub use scalar::{Field, Scalar};
pub use sign::{
    apply_permutation, bad_triples, canonical_form, realize_sign_matrix, Permutation, SignMatrix, Triple, TripleSet,
};

/// Machine-word rationals; enough for every matrix this crate builds.
pub type Rational = num_rational::Ratio<i64>;
pub type BigRational = num_rational::BigRational;
/// Entries of the explicit representations: `{0, ±1, ±i}` and their products.
pub type GaussianInt = num_complex::Complex<i64>;
pub type GaussianRational = num_complex::Complex<Rational>;

pub type RationalMatrix = Matrix<Rational>;
pub type RepMatrix = Matrix<GaussianInt>;
