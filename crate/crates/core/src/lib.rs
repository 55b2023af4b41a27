//! Lie brackets of curves on surfaces whose fundamental group is free:
//! the Goldman bracket on directed classes, the TWG bracket on undirected
//! classes, a combinatorial intersection count, and a hyperbolic engine
//! that checks all of these against explicit holonomy representations.

pub mod bracket;
pub mod error;
pub mod hyperbolic;
pub mod lincomb;
pub mod ribbon;
pub mod scan;
pub mod surface;
pub mod tol;
pub mod words;

pub use bracket::{
    goldman_bracket, jacobi_sum, poisson_bracket_sym, twg_bracket, twg_from_goldman, BracketEngine,
};
pub use error::{Error, Result};
pub use lincomb::{LinComb, Monomial, SymPoly, TermJson};
pub use ribbon::{intersection_number_comb, is_simple, linked_count, self_intersection_comb};
pub use surface::{SurfaceConfig, SurfacePresentation};
pub use words::{CyclicWord, DirectedClass, Letter, UndirectedClass, Word};
pub use hyperbolic::{GeometricEngine, Holonomy, Mobius};
pub use scan::{ScanConfig, ScanKind, ScanReport, Violation};
