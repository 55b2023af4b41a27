//! Fenchel–Nielsen twist of the punctured torus along the generator `a`.

use num_complex::Complex64;

use super::crossing::GeometricEngine;
use super::holonomy::Holonomy;
use super::mobius::Mobius;
use crate::error::{Error, Result};
use crate::words::{CyclicWord, Letter, Word};

/// Direction of the shear along `a`, chosen so that angles at crossings with
/// `a` decrease as `t` grows.
pub const TWIST_DIRECTION: f64 = -1.0;

/// The hyperbolic element with the axis of `m` and translation length `|t|`,
/// moving along the axis of `m` for `t > 0`.
pub fn shear_along(m: &Mobius, t: f64) -> Result<Mobius> {
    let ax = m.axis()?;
    let n = ax.normalizer(Complex64::new(0.0, 1.0));
    Ok(n.inv().mul(&Mobius::diagonal((t / 2.0).exp())).mul(&n))
}

/// `ρ_t(a) = ρ(a)`, `ρ_t(b) = E_t ρ(b)`.
pub fn twist(rho: &Holonomy, t: f64) -> Result<Holonomy> {
    if rho.surface().name() != "torus1" {
        return Err(Error::Unsupported(format!(
            "twist deformation on {}; only the punctured torus along a",
            rho.surface().name()
        )));
    }
    let a = rho.letter(Letter::new(0, false));
    let b = rho.letter(Letter::new(1, false));
    let e = shear_along(&a, TWIST_DIRECTION * t)?;
    Ok(rho.with_generator(1, e.mul(&b)))
}

/// Angle at the crossing of `a` and `y` with the given witness, along the
/// twist path at each time in `grid`.
pub fn angle_along_twist(rho: &Holonomy, y: &CyclicWord, witness: &Word, grid: &[f64]) -> Result<Vec<f64>> {
    let x = CyclicWord::from_letters([Letter::new(0, false)]);
    grid.iter()
        .map(|&t| {
            let eng = GeometricEngine::new(twist(rho, t)?);
            eng.track_angle(&x, y, witness).map_err(|e| match e {
                Error::CrossingLost(_) => Error::CrossingLost(t),
                other => other,
            })
        })
        .collect()
}
