//! Named numeric tolerances. Every floating-point comparison in the crate goes
//! through one of these.

/// Allowed deviation of `ad - bc` from 1.
pub const DET: f64 = 1e-12;

/// Width of the parabolic band `||tr| - 2| <= TRACE_CLASS`.
pub const TRACE_CLASS: f64 = 1e-9;

/// Trace targets in holonomy configs.
pub const TRACE_TARGET: f64 = 1e-9;

/// Minimum angular separation (on the boundary circle) of axis endpoints.
pub const ENDPOINT: f64 = 1e-9;

/// Crossing parameters this close to the end of the window snap to 0.
pub const WINDOW_SNAP: f64 = 1e-9;

/// Two translates of an axis are identified when both endpoints agree to
/// this angular precision.
pub const SAME_AXIS: f64 = 1e-7;

/// `|cos phi|` above `1 - NEAR_TANGENT` is treated as tangency.
pub const NEAR_TANGENT: f64 = 1e-10;

/// Crossing points closer than this are reported as a triple point.
pub const TRIPLE_POINT: f64 = 1e-8;

/// Angles must stay this far inside `(0, pi)`.
pub const ANGLE_INTERIOR: f64 = 1e-6;

/// Relative residual allowed in the cosh length identities.
pub const COSH_RESIDUAL: f64 = 1e-8;

/// Minimum strict decrease between consecutive angles along a twist.
pub const ANGLE_DECREASE: f64 = 1e-6;

/// Slack (hyperbolic distance) added to the displacement bound when pruning
/// the Cayley-ball search.
pub const PRUNE_SLACK: f64 = 3.0;
