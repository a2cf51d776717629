//! Numerical kernels for stability of Brunn–Minkowski, Blaschke–Santaló
//! and Prékopa–Leindler type inequalities.

pub mod bodies;
pub mod error;
pub mod families;
pub mod fmp;
pub mod optimize;
pub mod pl1d;
pub mod pln;
pub mod polarity;

pub use bodies::{BodyRef, ConvexPolygon, Point2, RevolutionBody};
pub use error::{GeomError, Result};
pub use fmp::{fmp_bound_check, FMPReport};
pub use pl1d::{pl_report, Domain, GridFn1D, Mean, PLReport};
pub use pln::{pl_trace, LevelStack, TraceReport};
pub use polarity::{bs_deficit, santalo_point, SantaloResult};
