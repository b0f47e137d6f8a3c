//! Left-invariant Randers metrics on Lie algebras.
//!
//! Given a Lie algebra (structure constants), a left-invariant inner product
//! `h`, and a nonzero field `X` with `|X| < 1`, this crate builds the
//! deformed metric `g_X`, evaluates the Randers norms `F` and `F~`, computes
//! Levi-Civita connections, sectional and flag curvatures, and classifies
//! the metrics as Douglas/Berwald type.
//!
//! Everything is algebra-level: no Lie-group integration, exponential maps,
//! or geodesic flows. All values are immutable after construction and every
//! operation is a pure function, so instances may be freely shared across
//! threads.
//!
//! ```
//! use randers_core::{
//!     catalog, classify, deformed_metric, sectional_pipeline, AdaptedFrame, DEFAULT_TOLERANCE,
//! };
//!
//! let entry = catalog::heisenberg(1.0, 0.3).unwrap();
//! let frame =
//!     AdaptedFrame::new(&entry.algebra, &entry.metric, &entry.field, DEFAULT_TOLERANCE).unwrap();
//! let gx = deformed_metric(&entry.metric, &entry.field);
//! let (_conn, _riemann, sectional) = sectional_pipeline(&frame, &gx, DEFAULT_TOLERANCE).unwrap();
//! assert!((sectional.get(0, 1).unwrap() + 0.75).abs() < 1e-9);
//!
//! let report = classify(&entry.algebra, &entry.metric, &entry.field, DEFAULT_TOLERANCE);
//! assert!(!report.douglas);
//! ```

pub mod algebra;
pub mod catalog;
pub mod classify;
pub mod connection;
pub mod curvature;
pub mod deform;
pub mod error;
pub mod tensor;

pub use algebra::{gram_schmidt, LieAlgebra, Metric};
pub use classify::{
    classify, classify_frame, classify_tilde, is_geodesic_vector, is_killing_vector,
    transfer_conditions, ClassificationReport, PredicateCheck, TransferConditions,
};
pub use connection::{
    connection_gx_closed_form, connection_relation_douglas, koszul_connection, ConnectionTable,
    DouglasConnectionRelation,
};
pub use curvature::{
    flag_curvature, flag_ratio_residual, riemann_tensor, sectional_curvature,
    sectional_curvature_closed_form, sectional_curvature_plane, sectional_douglas_closed_form,
    sectional_pipeline, sectional_ratio_berwald, BerwaldSectionalRatio, CurvatureTensor, Finsler,
    FlagReport, SectionalReport,
};
pub use deform::{
    deformed_metric, evaluate_f, phi_map, AdaptedFrame, DeformationField, FTildeEvaluator,
};
pub use error::{Error, Result};
pub use tensor::{Tensor3, Tensor4};

/// Default relative tolerance for every validation predicate and rank
/// decision. The underlying conditions are exact identities; this is the
/// single floating-point slack policy applied to all of them.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
