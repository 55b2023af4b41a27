//! Elements of SL(2, R) acting on the upper half-plane, their axes, and the
//! cyclic order on the boundary circle.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tol;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mobius {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Hyperbolic,
    Parabolic,
    Elliptic,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Hyperbolic => "hyperbolic",
            Kind::Parabolic => "parabolic",
            Kind::Elliptic => "elliptic",
        })
    }
}

impl Mobius {
    pub const IDENTITY: Mobius = Mobius {
        a: 1.0,
        b: 0.0,
        c: 0.0,
        d: 1.0,
    };

    /// Checked constructor: the determinant must be 1.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let m = Mobius { a, b, c, d };
        if m.det().is_nan() || (m.det() - 1.0).abs() > tol::DET {
            return Err(Error::Holonomy(format!("determinant {} is not 1", m.det())));
        }
        Ok(m)
    }

    pub fn from_rows(rows: [[f64; 2]; 2]) -> Result<Self> {
        Self::new(rows[0][0], rows[0][1], rows[1][0], rows[1][1])
    }

    pub fn rows(&self) -> [[f64; 2]; 2] {
        [[self.a, self.b], [self.c, self.d]]
    }

    /// Diagonal element `diag(lambda, 1/lambda)`.
    pub fn diagonal(lambda: f64) -> Self {
        Mobius {
            a: lambda,
            b: 0.0,
            c: 0.0,
            d: 1.0 / lambda,
        }
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    pub fn mul(&self, o: &Mobius) -> Mobius {
        Mobius {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn inv(&self) -> Mobius {
        Mobius {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    pub fn pow(&self, k: i64) -> Mobius {
        let base = if k < 0 { self.inv() } else { *self };
        let mut out = Mobius::IDENTITY;
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// Conjugate by the reflection `z -> -conj(z)`.
    pub fn reflect(&self) -> Mobius {
        Mobius {
            a: self.a,
            b: -self.b,
            c: -self.c,
            d: self.d,
        }
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        (z * self.a + self.b) / (z * self.c + self.d)
    }

    /// Action on the boundary `R ∪ {∞}`; infinity is `f64::INFINITY`.
    pub fn apply_boundary(&self, x: f64) -> f64 {
        if x.is_infinite() {
            if self.c == 0.0 {
                return f64::INFINITY;
            }
            return self.a / self.c;
        }
        let den = self.c * x + self.d;
        if den == 0.0 {
            return f64::INFINITY;
        }
        (self.a * x + self.b) / den
    }

    pub fn kind(&self) -> Kind {
        let t = self.trace().abs();
        if (t - 2.0).abs() <= tol::TRACE_CLASS {
            Kind::Parabolic
        } else if t > 2.0 {
            Kind::Hyperbolic
        } else {
            Kind::Elliptic
        }
    }

    fn require_hyperbolic(&self) -> Result<()> {
        match self.kind() {
            Kind::Hyperbolic => Ok(()),
            _ => Err(Error::NotHyperbolic(self.trace())),
        }
    }

    /// `2 arccosh(|tr| / 2)`.
    pub fn translation_length(&self) -> Result<f64> {
        self.require_hyperbolic()?;
        Ok(2.0 * (self.trace().abs() / 2.0).acosh())
    }

    /// The invariant geodesic, oriented from the repelling to the attracting
    /// fixed point.
    pub fn axis(&self) -> Result<Axis> {
        let length = self.translation_length()?;
        // c z^2 + (d - a) z - b = 0
        let (qa, qb, qc) = (self.c, self.d - self.a, -self.b);
        let disc = (self.trace() * self.trace() - 4.0).sqrt();
        let q = -0.5 * (qb + qb.signum() * disc);
        let q = if qb == 0.0 { -0.5 * disc } else { q };
        let z1 = if qa == 0.0 { f64::INFINITY } else { q / qa };
        let z2 = qc / q;
        let attracting = |z: f64| {
            if z.is_infinite() {
                self.a.abs() > self.d.abs()
            } else {
                (self.c * z + self.d).abs() > 1.0
            }
        };
        let (repelling, attracting) = if attracting(z1) { (z2, z1) } else { (z1, z2) };
        Ok(Axis {
            repelling,
            attracting,
            length,
        })
    }
}

impl fmt::Display for Mobius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            fmt_num(self.a),
            fmt_num(self.b),
            fmt_num(self.c),
            fmt_num(self.d)
        )
    }
}

/// Twelve significant digits.
pub fn fmt_num(x: f64) -> String {
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let s = format!("{:.*e}", 11, x);
    let (mant, exp) = s.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let plain = format!("{:.*}", decimals, x);
        if plain.contains('.') {
            plain.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            plain
        }
    } else {
        let mant = if mant.contains('.') {
            mant.trim_end_matches('0').trim_end_matches('.')
        } else {
            mant
        };
        format!("{mant}e{exp}")
    }
}

/// Oriented geodesic with boundary endpoints and the translation length of
/// the element it belongs to.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Axis {
    pub repelling: f64,
    pub attracting: f64,
    pub length: f64,
}

/// Position of a boundary point on the circle, in `(-pi, pi]`.
pub fn boundary_angle(x: f64) -> f64 {
    if x.is_infinite() {
        PI
    } else {
        2.0 * x.atan()
    }
}

/// Angular distance between two boundary points.
pub fn angle_gap(x: f64, y: f64) -> f64 {
    let d = (boundary_angle(x) - boundary_angle(y)).abs();
    d.min(2.0 * PI - d)
}

/// `+1` when `p, q, r` run counterclockwise around the boundary circle
/// (increasing along the real line), `-1` when clockwise, `0` when two of
/// them coincide.
pub fn boundary_order3(p: f64, q: f64, r: f64) -> i8 {
    let (tp, tq, tr) = (boundary_angle(p), boundary_angle(q), boundary_angle(r));
    if tp == tq || tq == tr || tp == tr {
        return 0;
    }
    let ccw = |from: f64, to: f64| (to - from).rem_euclid(2.0 * PI);
    if ccw(tp, tq) < ccw(tp, tr) {
        1
    } else {
        -1
    }
}

impl Axis {
    /// Whether two axes cross. Errors when endpoints are too close to tell.
    pub fn crosses(&self, other: &Axis) -> Result<bool> {
        let pts = [
            self.repelling,
            self.attracting,
            other.repelling,
            other.attracting,
        ];
        for i in 0..4 {
            for j in i + 1..4 {
                if angle_gap(pts[i], pts[j]) <= tol::ENDPOINT {
                    return Err(Error::Indeterminate(format!(
                        "axis endpoints {} and {} nearly coincide",
                        fmt_num(pts[i]),
                        fmt_num(pts[j])
                    )));
                }
            }
        }
        let o1 = boundary_order3(self.repelling, self.attracting, other.repelling);
        let o2 = boundary_order3(self.repelling, self.attracting, other.attracting);
        Ok(o1 != o2)
    }

    /// Same geodesic with the same orientation, up to `SAME_AXIS`.
    pub fn same_as(&self, other: &Axis) -> bool {
        angle_gap(self.repelling, other.repelling) <= tol::SAME_AXIS
            && angle_gap(self.attracting, other.attracting) <= tol::SAME_AXIS
    }

    /// Orientation-preserving isometry taking this axis to the imaginary
    /// axis (repelling to 0, attracting to ∞) and the orthogonal projection
    /// of `base` onto it to `i`.
    pub fn normalizer(&self, base: Complex64) -> Mobius {
        let (p, q) = (self.repelling, self.attracting);
        let raw = if q.is_infinite() {
            Mobius {
                a: 1.0,
                b: -p,
                c: 0.0,
                d: 1.0,
            }
        } else if p.is_infinite() {
            Mobius {
                a: 0.0,
                b: -1.0,
                c: 1.0,
                d: -q,
            }
        } else {
            let det = p - q;
            let (a, b) = if det > 0.0 { (1.0, -p) } else { (-1.0, p) };
            let s = det.abs().sqrt();
            Mobius {
                a: a / s,
                b: b / s,
                c: 1.0 / s,
                d: -q / s,
            }
        };
        let w = raw.apply(base).norm();
        let s = w.sqrt();
        Mobius {
            a: 1.0 / s,
            b: 0.0,
            c: 0.0,
            d: s,
        }
        .mul(&raw)
    }

    /// Orthogonal projection of `z` onto the axis.
    pub fn project(&self, z: Complex64) -> Complex64 {
        let t = self.normalizer(z);
        t.inv().apply(Complex64::new(0.0, 1.0))
    }
}

/// Hyperbolic distance in the upper half-plane.
pub fn distance(z: Complex64, w: Complex64) -> f64 {
    cosh_distance(z, w).acosh()
}

pub fn cosh_distance(z: Complex64, w: Complex64) -> f64 {
    1.0 + (z - w).norm_sqr() / (2.0 * z.im * w.im)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12 * (1.0 + a.abs())
    }

    #[test]
    fn classification_and_length() {
        let m = Mobius::new(1.0, 1.0, 1.0, 2.0).unwrap();
        assert_eq!(m.kind(), Kind::Hyperbolic);
        assert!(close(m.translation_length().unwrap(), 2.0 * 1.5f64.acosh()));
        assert!((m.translation_length().unwrap() - 1.9248473).abs() < 1e-7);
        let p = Mobius::new(1.0, 1.0, 0.0, 1.0).unwrap();
        assert_eq!(p.kind(), Kind::Parabolic);
        assert!(matches!(p.translation_length(), Err(Error::NotHyperbolic(_))));
        let r = Mobius::new(0.0, -1.0, 1.0, 0.0).unwrap();
        assert_eq!(r.kind(), Kind::Elliptic);
        assert!(Mobius::new(1.0, 1.0, 1.0, 1.0).is_err());
        for k in 1..6 {
            let lk = m.pow(k).translation_length().unwrap();
            assert!((lk - k as f64 * m.translation_length().unwrap()).abs() < 1e-9);
        }
    }

    #[test]
    fn diagonal_axis() {
        let ax = Mobius::diagonal(2.0).axis().unwrap();
        assert_eq!(ax.repelling, 0.0);
        assert!(ax.attracting.is_infinite());
        let ax = Mobius::diagonal(0.5).axis().unwrap();
        assert!(ax.repelling.is_infinite());
        assert_eq!(ax.attracting, 0.0);
    }

    #[test]
    fn fixed_points_are_fixed() {
        let m = Mobius::new(1.0, 1.0, 1.0, 2.0).unwrap();
        let ax = m.axis().unwrap();
        for z in [ax.repelling, ax.attracting] {
            assert!((m.apply_boundary(z) - z).abs() < 1e-12);
        }
        // iterate a generic point forward: it approaches the attracting end
        let mut x = 0.123;
        for _ in 0..60 {
            x = m.apply_boundary(x);
        }
        assert!((x - ax.attracting).abs() < 1e-9);
    }

    #[test]
    fn crossing_examples() {
        let ax = |p: f64, q: f64| Axis {
            repelling: p,
            attracting: q,
            length: 1.0,
        };
        assert!(ax(0.0, f64::INFINITY).crosses(&ax(-1.0, 1.0)).unwrap());
        assert!(!ax(0.0, 1.0).crosses(&ax(2.0, 3.0)).unwrap());
        assert!(!ax(0.0, 3.0).crosses(&ax(1.0, 2.0)).unwrap());
        assert!(matches!(
            ax(0.0, 1.0).crosses(&ax(1.0 + 1e-12, 3.0)),
            Err(Error::Indeterminate(_))
        ));
    }

    #[test]
    fn normalizer_maps_axis() {
        let m = Mobius::new(1.0, 1.0, 1.0, 2.0).unwrap();
        let ax = m.axis().unwrap();
        let base = Complex64::new(0.3, 0.7);
        let t = ax.normalizer(base);
        assert!((t.det() - 1.0).abs() < 1e-12);
        assert!(t.apply_boundary(ax.repelling).abs() < 1e-9);
        assert!(t.apply_boundary(ax.attracting).abs() > 1e9);
        let p = t.apply(ax.project(base));
        assert!((p - Complex64::new(0.0, 1.0)).norm() < 1e-12);
        // conjugated element is a dilation by exp(length)
        let n = t.mul(&m).mul(&t.inv());
        assert!((n.apply(Complex64::new(0.0, 1.0)).im - ax.length.exp()).abs() < 1e-9);
    }

    #[test]
    fn number_format() {
        assert_eq!(fmt_num(1.9248473002384139), "1.92484730024");
        assert_eq!(fmt_num(3.0), "3");
        assert_eq!(fmt_num(-2.5e-7), "-2.5e-7");
        assert_eq!(fmt_num(0.0), "0");
    }
}
