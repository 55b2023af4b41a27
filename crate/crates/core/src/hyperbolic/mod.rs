//! Numeric model: holonomy representations into SL(2, R), closed geodesics
//! as axes, and their intersection points in the upper half-plane.

pub mod crossing;
pub mod holonomy;
pub mod mobius;
pub mod twist;

pub use crossing::{loop_product, Crossing, CrossingSet, GeometricEngine};
pub use holonomy::{Holonomy, HolonomyConfig, PeripheralCheck};
pub use mobius::{boundary_order3, fmt_num, Axis, Kind, Mobius};
pub use twist::{angle_along_twist, shear_along, twist, TWIST_DIRECTION};
