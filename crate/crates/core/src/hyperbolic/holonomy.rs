//! Representations of the free fundamental group into SL(2, R).

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::mobius::{boundary_order3, fmt_num, Kind, Mobius};
use crate::error::{Error, Result};
use crate::surface::SurfacePresentation;
use crate::tol;
use crate::words::{parse_letters, Letter};

/// `{word, type: "parabolic" | "hyperbolic", trace: value | null}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeripheralCheck {
    pub word: String,
    #[serde(rename = "type")]
    pub kind: String,
    #[serde(default)]
    pub trace: Option<f64>,
}

/// `{surface, matrices: {a: [[..],[..]], ...}, peripheral_checks: [...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HolonomyConfig {
    pub surface: String,
    pub matrices: BTreeMap<String, [[f64; 2]; 2]>,
    #[serde(default)]
    pub peripheral_checks: Vec<PeripheralCheck>,
}

#[derive(Clone, Debug)]
pub struct Holonomy {
    surface: SurfacePresentation,
    gens: Vec<Mobius>,
    checks: Vec<PeripheralCheck>,
    reflected: bool,
}

fn check(word: &str, kind: &str, trace: Option<f64>) -> PeripheralCheck {
    PeripheralCheck {
        word: word.into(),
        kind: kind.into(),
        trace,
    }
}

impl Holonomy {
    /// Validate generator images against the surface: determinants,
    /// hyperbolicity, the configured peripheral checks, and compatibility of
    /// the boundary order with the ribbon. A holonomy realizing the mirror
    /// orientation is conjugated by a reflection.
    pub fn new(
        surface: SurfacePresentation,
        gens: Vec<Mobius>,
        checks: Vec<PeripheralCheck>,
    ) -> Result<Self> {
        if gens.len() != surface.generators() {
            return Err(Error::Holonomy(format!(
                "{} matrices for {} generators",
                gens.len(),
                surface.generators()
            )));
        }
        for (i, m) in gens.iter().enumerate() {
            Mobius::new(m.a, m.b, m.c, m.d)?;
            if m.kind() != Kind::Hyperbolic {
                return Err(Error::Holonomy(format!(
                    "generator {} is {} (trace {})",
                    Letter::new(i, false),
                    m.kind(),
                    fmt_num(m.trace())
                )));
            }
        }
        let mut h = Holonomy {
            surface,
            gens,
            checks,
            reflected: false,
        };
        h.validate_checks()?;
        match h.ribbon_orientation()? {
            1 => {}
            _ => {
                h.gens = h.gens.iter().map(Mobius::reflect).collect();
                h.reflected = true;
            }
        }
        Ok(h)
    }

    fn validate_checks(&self) -> Result<()> {
        for c in &self.checks {
            let letters = parse_letters(&c.word)?;
            self.surface.check_letters(&letters)?;
            let m = self.evaluate(&letters);
            let kind = m.kind();
            let want = match c.kind.as_str() {
                "parabolic" => Kind::Parabolic,
                "hyperbolic" => Kind::Hyperbolic,
                other => return Err(Error::Holonomy(format!("unknown check type {other}"))),
            };
            if kind != want {
                return Err(Error::Holonomy(format!(
                    "{} is {kind} (trace {}), expected {want}",
                    c.word,
                    fmt_num(m.trace())
                )));
            }
            if let Some(t) = c.trace {
                if (m.trace() - t).abs() > tol::TRACE_TARGET {
                    return Err(Error::Holonomy(format!(
                        "trace of {} is {}, expected {}",
                        c.word,
                        fmt_num(m.trace()),
                        fmt_num(t)
                    )));
                }
            }
        }
        for p in self.surface.peripheral() {
            let m = self.evaluate(p.word().letters());
            if m.kind() == Kind::Elliptic {
                return Err(Error::Holonomy(format!("boundary class {p} is elliptic")));
            }
        }
        Ok(())
    }

    /// `+1` if the attracting fixed points of the generators and their
    /// inverses appear around the boundary circle in ribbon order, `-1` if
    /// in reverse order.
    fn ribbon_orientation(&self) -> Result<i8> {
        let ribbon = self.surface.ribbon();
        let pts: Vec<f64> = ribbon
            .iter()
            .map(|&l| self.letter(l).axis().map(|a| a.attracting))
            .collect::<Result<_>>()?;
        let k = pts.len();
        let orders: Vec<i8> = (0..k)
            .map(|i| boundary_order3(pts[i], pts[(i + 1) % k], pts[(i + 2) % k]))
            .collect();
        if orders.iter().all(|&o| o == 1) {
            Ok(1)
        } else if orders.iter().all(|&o| o == -1) {
            Ok(-1)
        } else {
            Err(Error::Holonomy(
                "generator fixed points are not in ribbon order".into(),
            ))
        }
    }

    /// Punctured torus: `a = [[1,1],[1,2]]`, `b = [[1,-1],[-1,2]]`.
    pub fn punctured_torus() -> Self {
        let gens = vec![
            Mobius::new(1.0, 1.0, 1.0, 2.0).expect("unimodular"),
            Mobius::new(1.0, -1.0, -1.0, 2.0).expect("unimodular"),
        ];
        let checks = vec![
            check("a", "hyperbolic", Some(3.0)),
            check("b", "hyperbolic", Some(3.0)),
            check("ab", "hyperbolic", Some(3.0)),
            check("abAB", "parabolic", Some(-2.0)),
        ];
        Holonomy::new(SurfacePresentation::punctured_torus(), gens, checks)
            .expect("shipped torus holonomy is valid")
    }

    /// Pair of pants with boundary traces `(-3, -3, -3)`.
    pub fn pants() -> Self {
        Self::pants_from_traces(-3.0, -3.0, -3.0).expect("shipped pants holonomy is valid")
    }

    /// `a = [[x, 1], [-1, 0]]`, `b = [[0, -ζ], [1/ζ, y]]` with `ζ + 1/ζ = z`,
    /// taking the root with `|ζ| < 1`.
    pub fn pants_from_traces(x: f64, y: f64, z: f64) -> Result<Self> {
        if z.abs() <= 2.0 {
            return Err(Error::Holonomy(format!("trace {} is not hyperbolic", fmt_num(z))));
        }
        let zeta = (z - z.signum() * (z * z - 4.0).sqrt()) / 2.0;
        let gens = vec![
            Mobius::new(x, 1.0, -1.0, 0.0)?,
            Mobius::new(0.0, -zeta, 1.0 / zeta, y)?,
        ];
        let checks = vec![
            check("a", "hyperbolic", Some(x)),
            check("b", "hyperbolic", Some(y)),
            check("ab", "hyperbolic", Some(z)),
        ];
        Holonomy::new(SurfacePresentation::pants(), gens, checks)
    }

    /// Shipped holonomy for a shipped surface, if there is one.
    pub fn shipped(surface: &str) -> Option<Self> {
        let s = SurfacePresentation::by_name(surface).ok()?;
        match s.name() {
            "pants" => Some(Self::pants()),
            "torus1" => Some(Self::punctured_torus()),
            _ => None,
        }
    }

    pub fn from_config(cfg: &HolonomyConfig) -> Result<Self> {
        let surface = SurfacePresentation::by_name(&cfg.surface)?;
        let mut gens = Vec::with_capacity(surface.generators());
        for i in 0..surface.generators() {
            let name = Letter::new(i, false).to_string();
            let rows = cfg
                .matrices
                .get(&name)
                .ok_or_else(|| Error::Holonomy(format!("missing matrix for {name}")))?;
            gens.push(Mobius::from_rows(*rows)?);
        }
        if cfg.matrices.len() != surface.generators() {
            return Err(Error::Holonomy(format!(
                "{} matrices for {} generators",
                cfg.matrices.len(),
                surface.generators()
            )));
        }
        Holonomy::new(surface, gens, cfg.peripheral_checks.clone())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let cfg: HolonomyConfig = serde_json::from_str(&text)?;
        Self::from_config(&cfg)
    }

    /// Config form of the (possibly reflected) generator images.
    pub fn to_config(&self) -> HolonomyConfig {
        HolonomyConfig {
            surface: self.surface.name().to_string(),
            matrices: self
                .gens
                .iter()
                .enumerate()
                .map(|(i, m)| (Letter::new(i, false).to_string(), m.rows()))
                .collect(),
            peripheral_checks: self.checks.clone(),
        }
    }

    pub fn surface(&self) -> &SurfacePresentation {
        &self.surface
    }

    pub fn generators(&self) -> &[Mobius] {
        &self.gens
    }

    /// Whether the input matrices were conjugated by a reflection to match
    /// the ribbon orientation.
    pub fn reflected(&self) -> bool {
        self.reflected
    }

    pub fn checks(&self) -> &[PeripheralCheck] {
        &self.checks
    }

    pub fn letter(&self, l: Letter) -> Mobius {
        let m = self.gens[l.gen()];
        if l.is_inverse() {
            m.inv()
        } else {
            m
        }
    }

    /// Product of generator images in word order; empty word gives the
    /// identity.
    pub fn evaluate(&self, letters: &[Letter]) -> Mobius {
        letters
            .iter()
            .fold(Mobius::IDENTITY, |acc, &l| acc.mul(&self.letter(l)))
    }

    /// Same holonomy with one generator image replaced, without revalidating
    /// the configured checks.
    pub fn with_generator(&self, gen: usize, m: Mobius) -> Self {
        let mut out = self.clone();
        out.gens[gen] = m;
        out
    }
}
