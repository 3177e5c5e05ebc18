//! Pointed curves on the plane and on the quadric surface, coordinate
//! frames, and the fixed witness configurations.

#[allow(clippy::module_inception)]
pub mod curve;
pub mod frame;
pub mod local;
pub mod surface;
pub mod witness;

pub use curve::{CurveFile, PointedCurve, TermEntry, Violation};
pub use frame::{apply_frame, FrameChange};
pub use local::{local_geometry, normalize_frame, AffineChart, Contact, LocalGeometry};
pub use surface::{normalize_point, point_support, Surface};
pub use witness::{hyperflex_curve, make_witness, WitnessKind};
