//! Exhaustive scans over all classes up to a word length: the counting
//! theorem, the disjointness conjecture, the center, canonical decompositions,
//! the numeric identities, and agreement between the two bracket engines.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::bracket::BracketEngine;
use crate::error::{Error, Result};
use crate::hyperbolic::{angle_along_twist, fmt_num, twist, GeometricEngine, Holonomy, Kind};
use crate::lincomb::TermJson;
use crate::ribbon::{disjoint, intersection_number_comb, is_simple};
use crate::surface::SurfacePresentation;
use crate::tol;
use crate::words::{enumerate_directed, enumerate_undirected, CyclicWord, Letter, UndirectedClass};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanKind {
    Conjecture,
    Counting,
    Center,
    Decomposition,
    Numerics,
    Agreement,
}

impl ScanKind {
    pub const ALL: [ScanKind; 6] = [
        ScanKind::Conjecture,
        ScanKind::Counting,
        ScanKind::Center,
        ScanKind::Decomposition,
        ScanKind::Numerics,
        ScanKind::Agreement,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ScanKind::Conjecture => "conjecture",
            ScanKind::Counting => "counting",
            ScanKind::Center => "center",
            ScanKind::Decomposition => "decomposition",
            ScanKind::Numerics => "numerics",
            ScanKind::Agreement => "agreement",
        }
    }
}

impl fmt::Display for ScanKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScanKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ScanKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown scan kind {s}")))
    }
}

/// Default maximum lengths per surface.
pub fn default_max_len(surface: &str) -> usize {
    match surface {
        "pants" | "torus1" => 6,
        _ => 4,
    }
}

/// One counterexample, with enough data to replay it through `bracket`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub x: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<String>,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comb: Option<Vec<TermJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub geom: Option<Vec<TermJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub intersection: Option<usize>,
}

impl Violation {
    fn new(x: impl fmt::Display, y: Option<&dyn fmt::Display>, message: impl Into<String>) -> Self {
        Self {
            x: x.to_string(),
            y: y.map(|y| y.to_string()),
            message: message.into(),
            comb: None,
            geom: None,
            intersection: None,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScanReport {
    pub kind: ScanKind,
    pub surface: String,
    pub max_len: usize,
    pub pairs_examined: usize,
    pub violations: Vec<Violation>,
    pub wall_time_s: f64,
    pub engine_fingerprint: String,
    pub config_fingerprint: String,
    pub notes: Vec<String>,
    pub details: BTreeMap<String, serde_json::Value>,
}

impl ScanReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    /// JSON with the wall-time field zeroed, for byte comparison of runs.
    pub fn to_json_stable(&self) -> String {
        let mut r = self.clone();
        r.wall_time_s = 0.0;
        r.to_json()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let rows: [(&str, String); 7] = [
            ("scan", self.kind.to_string()),
            ("surface", self.surface.clone()),
            ("max length", self.max_len.to_string()),
            ("pairs examined", self.pairs_examined.to_string()),
            ("violations", self.violations.len().to_string()),
            ("wall time (s)", format!("{:.3}", self.wall_time_s)),
            ("config", self.config_fingerprint[..12].to_string()),
        ];
        for (k, v) in rows {
            let _ = writeln!(s, "{k:<16} {v}");
        }
        for n in &self.notes {
            let _ = writeln!(s, "note             {n}");
        }
        for v in self.violations.iter().take(20) {
            let y = v.y.as_deref().unwrap_or("-");
            let _ = writeln!(s, "VIOLATION        {} {}: {}", v.x, y, v.message);
        }
        if self.violations.len() > 20 {
            let _ = writeln!(s, "...              {} more", self.violations.len() - 20);
        }
        let _ = writeln!(s, "{}", if self.passed() { "PASS" } else { "FAIL" });
        s
    }

    /// `<dir>/<kind>-<surface>-L<max_len>-<fingerprint>.json`.
    pub fn file_name(&self) -> String {
        format!(
            "{}-{}-L{}-{}.json",
            self.kind,
            self.surface,
            self.max_len,
            &self.config_fingerprint[..12]
        )
    }

    pub fn write_to(&self, dir: &Path) -> Result<PathBuf> {
        std::fs::create_dir_all(dir)?;
        let path = dir.join(self.file_name());
        std::fs::write(&path, self.to_json())?;
        Ok(path)
    }
}

/// Everything a scan depends on.
#[derive(Clone, Debug)]
pub struct ScanConfig {
    pub kind: ScanKind,
    pub surface: SurfacePresentation,
    pub max_len: usize,
    pub holonomy: Option<Holonomy>,
    /// Examine a random subset of this many pairs, drawn with `seed`.
    pub sample: Option<usize>,
    pub seed: u64,
}

#[derive(Serialize)]
struct ConfigFingerprint<'a> {
    kind: ScanKind,
    surface: crate::surface::SurfaceConfig,
    max_len: usize,
    holonomy: Option<crate::hyperbolic::HolonomyConfig>,
    sample: Option<usize>,
    seed: u64,
    engine: &'a str,
}

/// Hash of the crate version and the tolerance table.
pub fn engine_fingerprint() -> String {
    let mut h = Sha256::new();
    h.update(env!("CARGO_PKG_VERSION"));
    for t in [
        tol::DET,
        tol::TRACE_CLASS,
        tol::TRACE_TARGET,
        tol::ENDPOINT,
        tol::WINDOW_SNAP,
        tol::SAME_AXIS,
        tol::NEAR_TANGENT,
        tol::TRIPLE_POINT,
        tol::ANGLE_INTERIOR,
        tol::COSH_RESIDUAL,
        tol::ANGLE_DECREASE,
        tol::PRUNE_SLACK,
    ] {
        h.update(t.to_le_bytes());
    }
    hex(&h.finalize())
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

impl ScanConfig {
    pub fn new(kind: ScanKind, surface: SurfacePresentation, max_len: usize) -> Self {
        let holonomy = Holonomy::shipped(surface.name());
        Self {
            kind,
            surface,
            max_len,
            holonomy,
            sample: None,
            seed: 0,
        }
    }

    pub fn fingerprint(&self) -> String {
        let engine = engine_fingerprint();
        let cfg = ConfigFingerprint {
            kind: self.kind,
            surface: self.surface.to_config(),
            max_len: self.max_len,
            holonomy: self.holonomy.as_ref().map(|h| h.to_config()),
            sample: self.sample,
            seed: self.seed,
            engine: &engine,
        };
        let json = serde_json::to_string(&cfg).expect("plain data serializes");
        hex(&Sha256::digest(json.as_bytes()))
    }

    fn classes(&self) -> Vec<UndirectedClass> {
        enumerate_undirected(self.surface.generators(), self.max_len)
            .into_iter()
            .filter(|c| !c.is_trivial())
            .collect()
    }

    fn pick<T: Clone>(&self, mut items: Vec<T>) -> Vec<T> {
        if let Some(k) = self.sample {
            if k < items.len() {
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
                let mut idx: Vec<usize> = (0..items.len()).collect();
                idx.shuffle(&mut rng);
                idx.truncate(k);
                idx.sort_unstable();
                items = idx.into_iter().map(|i| items[i].clone()).collect();
            }
        }
        items
    }

    fn geometric(&self) -> Result<GeometricEngine> {
        self.holonomy.clone().map(GeometricEngine::new).ok_or_else(|| {
            Error::Unsupported(format!(
                "no holonomy for surface {}; supply one with a config file",
                self.surface.name()
            ))
        })
    }

    pub fn run(&self) -> Result<ScanReport> {
        let start = Instant::now();
        let mut notes = vec![
            "classes are undirected canonical classes, deduplicated under inversion before counting"
                .to_string(),
        ];
        let mut details = BTreeMap::new();
        let (pairs, violations) = match self.kind {
            ScanKind::Conjecture => self.conjecture()?,
            ScanKind::Counting => self.counting()?,
            ScanKind::Center => self.center(&mut details)?,
            ScanKind::Decomposition => self.decomposition()?,
            ScanKind::Numerics => self.numerics(&mut notes, &mut details)?,
            ScanKind::Agreement => self.agreement()?,
        };
        if let Some(k) = self.sample {
            notes.push(format!("random subset of at most {k} items, seed {}", self.seed));
        }
        Ok(ScanReport {
            kind: self.kind,
            surface: self.surface.name().to_string(),
            max_len: self.max_len,
            pairs_examined: pairs,
            violations,
            wall_time_s: start.elapsed().as_secs_f64(),
            engine_fingerprint: engine_fingerprint(),
            config_fingerprint: self.fingerprint(),
            notes,
            details,
        })
    }

    fn unordered_pairs(&self, classes: &[UndirectedClass], distinct: bool) -> Vec<(UndirectedClass, UndirectedClass)> {
        let mut out = Vec::new();
        for (i, x) in classes.iter().enumerate() {
            let from = if distinct { i + 1 } else { i };
            for y in &classes[from..] {
                out.push((x.clone(), y.clone()));
            }
        }
        self.pick(out)
    }

    fn conjecture(&self) -> Result<(usize, Vec<Violation>)> {
        let eng = BracketEngine::new(&self.surface);
        let pairs = self.unordered_pairs(&self.classes(), true);
        let results: Vec<Option<Violation>> = pairs
            .par_iter()
            .map(|(x, y)| -> Result<Option<Violation>> {
                if !eng.twg(x, y)?.is_zero() {
                    return Ok(None);
                }
                if disjoint(x, y, &self.surface)? {
                    return Ok(None);
                }
                let mut v = Violation::new(x, Some(y), "bracket vanishes but the classes intersect");
                v.intersection = intersection_number_comb(x, y, &self.surface).ok();
                v.comb = Some(Vec::new());
                Ok(Some(v))
            })
            .collect::<Result<_>>()?;
        Ok((pairs.len(), results.into_iter().flatten().collect()))
    }

    fn counting(&self) -> Result<(usize, Vec<Violation>)> {
        let eng = BracketEngine::new(&self.surface);
        let classes = self.classes();
        let simple: Vec<UndirectedClass> = classes
            .iter()
            .filter(|c| is_simple(c, &self.surface).unwrap_or(false))
            .cloned()
            .collect();
        let mut pairs = Vec::new();
        for x in &simple {
            for y in &classes {
                pairs.push((x.clone(), y.clone()));
            }
        }
        let pairs = self.pick(pairs);
        let results: Vec<Option<Violation>> = pairs
            .par_iter()
            .map(|(x, y)| -> Result<Option<Violation>> {
                let br = eng.twg(x, y)?;
                let i = intersection_number_comb(x, y, &self.surface)?;
                if br.multiplicity() == 2 * i as u64 {
                    return Ok(None);
                }
                let mut v = Violation::new(
                    x,
                    Some(y),
                    format!("bracket has {} terms, twice the intersection number is {}", br.multiplicity(), 2 * i),
                );
                v.comb = Some(br.to_terms());
                v.intersection = Some(i);
                Ok(Some(v))
            })
            .collect::<Result<_>>()?;
        Ok((pairs.len(), results.into_iter().flatten().collect()))
    }

    fn center(&self, details: &mut BTreeMap<String, serde_json::Value>) -> Result<(usize, Vec<Violation>)> {
        let eng = BracketEngine::new(&self.surface);
        let all = enumerate_undirected(self.surface.generators(), self.max_len);
        let classes = self.classes();
        let central: Vec<bool> = all
            .par_iter()
            .map(|c| -> Result<bool> {
                for y in &classes {
                    if !eng.twg(c, y)?.is_zero() {
                        return Ok(false);
                    }
                }
                Ok(true)
            })
            .collect::<Result<_>>()?;
        let mut violations = Vec::new();
        let mut listed = Vec::new();
        for (c, &is_central) in all.iter().zip(&central) {
            let peripheral = self.surface.is_peripheral(c);
            if is_central {
                listed.push(serde_json::Value::String(format!("⟨{c}⟩")));
            }
            if is_central && !peripheral {
                violations.push(Violation::new(
                    format!("⟨{c}⟩"),
                    None,
                    "brackets to zero with every class up to the length bound but is not peripheral",
                ));
            } else if peripheral && !is_central {
                violations.push(Violation::new(format!("⟨{c}⟩"), None, "peripheral class with a nonzero bracket"));
            }
        }
        details.insert("finitely_central".into(), serde_json::Value::Array(listed));
        Ok((all.len() * classes.len(), violations))
    }

    fn decomposition(&self) -> Result<(usize, Vec<Violation>)> {
        let eng = BracketEngine::new(&self.surface);
        let classes: Vec<UndirectedClass> = self
            .classes()
            .into_iter()
            .filter(|c| !self.surface.is_peripheral(c))
            .collect();
        let pairs = self.unordered_pairs(&classes, false);
        let results: Vec<Vec<Violation>> = pairs
            .par_iter()
            .map(|(x, y)| -> Result<Vec<Violation>> {
                let mut out = Vec::new();
                let twg = eng.twg(x, y)?;
                for (c, _) in twg.iter() {
                    if self.surface.is_peripheral(c) {
                        let mut v = Violation::new(x, Some(y), format!("peripheral term ⟨{c}⟩ in the bracket"));
                        v.comb = Some(twg.to_terms());
                        out.push(v);
                    }
                }
                let (a, b) = (x.lift(), y.lift());
                for bb in [b.clone(), b.reverse()] {
                    let g = eng.goldman(&a, &bb)?;
                    for (c, _) in g.iter() {
                        if self.surface.is_peripheral(&c.undirected()) {
                            let mut v = Violation::new(&a, Some(&bb), format!("peripheral term ⟨{c}⟩ in the Goldman bracket"));
                            v.comb = Some(g.to_terms());
                            out.push(v);
                        }
                    }
                }
                Ok(out)
            })
            .collect::<Result<_>>()?;
        Ok((pairs.len(), results.into_iter().flatten().collect()))
    }

    fn agreement(&self) -> Result<(usize, Vec<Violation>)> {
        let comb = BracketEngine::new(&self.surface);
        let geo = self.geometric()?;
        let classes = self.classes();
        let mut pairs = Vec::new();
        for x in &classes {
            for y in &classes {
                pairs.push((x.clone(), y.clone()));
            }
        }
        let pairs = self.pick(pairs);
        let mut violations: Vec<Violation> = pairs
            .par_iter()
            .map(|(x, y)| -> Result<Option<Violation>> {
                let c = comb.twg(x, y)?;
                let g = geo.twg(x, y)?;
                if c == g {
                    return Ok(None);
                }
                let mut v = Violation::new(x, Some(y), "undirected brackets differ");
                v.comb = Some(c.to_terms());
                v.geom = Some(g.to_terms());
                Ok(Some(v))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();

        let directed: Vec<_> = enumerate_directed(self.surface.generators(), self.max_len)
            .into_iter()
            .filter(|c| !c.word().is_trivial())
            .collect();
        let mut dpairs = Vec::new();
        for x in &directed {
            for y in &directed {
                dpairs.push((x.clone(), y.clone()));
            }
        }
        let dpairs = self.pick(dpairs);
        let dv: Vec<Option<Violation>> = dpairs
            .par_iter()
            .map(|(x, y)| -> Result<Option<Violation>> {
                let c = comb.goldman(x, y)?;
                let g = geo.goldman(x, y)?;
                if c == g {
                    return Ok(None);
                }
                let mut v = Violation::new(x, Some(y), "directed brackets differ");
                v.comb = Some(c.to_terms());
                v.geom = Some(g.to_terms());
                Ok(Some(v))
            })
            .collect::<Result<_>>()?;
        violations.extend(dv.into_iter().flatten());
        Ok((pairs.len() + dpairs.len(), violations))
    }

    fn numerics(
        &self,
        notes: &mut Vec<String>,
        details: &mut BTreeMap<String, serde_json::Value>,
    ) -> Result<(usize, Vec<Violation>)> {
        let base = self.holonomy.clone().ok_or_else(|| {
            Error::Unsupported(format!("no holonomy for surface {}", self.surface.name()))
        })?;
        let twistable = twist(&base, 0.0).is_ok();
        let mut metrics = vec![(0.0, base.clone())];
        if twistable {
            for t in TWIST_METRICS {
                metrics.push((t, twist(&base, t)?));
            }
        } else {
            notes.push("twist deformations unsupported on this surface; base metric only".into());
        }
        let classes: Vec<UndirectedClass> = self
            .classes()
            .into_iter()
            .filter(|c| {
                base.evaluate(c.word().letters()).kind() == Kind::Hyperbolic
            })
            .collect();
        let mut pairs = Vec::new();
        for x in &classes {
            for y in &classes {
                pairs.push((x.clone(), y.clone()));
            }
        }
        let pairs = self.pick(pairs);
        let mut violations = Vec::new();
        let mut crossings_checked = 0usize;
        let mut worst = 0.0f64;

        for (t, rho) in &metrics {
            let geo = GeometricEngine::new(rho.clone());
            let res: Vec<(usize, f64, Vec<Violation>)> = pairs
                .par_iter()
                .map(|(x, y)| -> Result<(usize, f64, Vec<Violation>)> {
                    let set = geo.crossings_certified(x.word(), y.word())?;
                    let mut out = Vec::new();
                    let mut w = 0.0f64;
                    for c in &set.crossings {
                        let (r0, ri) = geo.cosh_residuals(x.word(), y.word(), c)?;
                        w = w.max(r0).max(ri);
                        if r0 >= tol::COSH_RESIDUAL || ri >= tol::COSH_RESIDUAL {
                            out.push(Violation::new(
                                x,
                                Some(y),
                                format!(
                                    "cosh residuals {} / {} at t = {} (witness {})",
                                    fmt_num(r0),
                                    fmt_num(ri),
                                    fmt_num(*t),
                                    c.witness
                                ),
                            ));
                        }
                    }
                    if *t == 0.0 && is_simple(x, &self.surface)? {
                        let terms = geo.twg(x, y)?;
                        if terms.multiplicity() != 2 * set.crossings.len() as u64 {
                            let mut v = Violation::new(x, Some(y), "cancellation in the geometric bracket of a simple class");
                            v.geom = Some(terms.to_terms());
                            out.push(v);
                        }
                    }
                    Ok((set.crossings.len(), w, out))
                })
                .collect::<Result<_>>()?;
            for (n, w, v) in res {
                crossings_checked += n;
                worst = worst.max(w);
                violations.extend(v);
            }
        }

        let mut sequences = 0usize;
        if twistable {
            let geo = GeometricEngine::new(base.clone());
            let a = CyclicWord::from_letters([Letter::new(0, false)]);
            let a_class = UndirectedClass::new(a.clone());
            for y in &classes {
                if y.primitive_root()?.0 == a_class {
                    continue;
                }
                for c in geo.crossings(&a, y.word())?.crossings {
                    let angles = angle_along_twist(&base, y.word(), &c.witness, &TWIST_GRID)?;
                    sequences += 1;
                    if angles.windows(2).any(|w| w[1] - w[0] >= -tol::ANGLE_DECREASE) {
                        violations.push(Violation::new(
                            "a",
                            Some(y),
                            format!(
                                "angle not strictly decreasing along the twist (witness {}): {}",
                                c.witness,
                                angles.iter().map(|x| fmt_num(*x)).collect::<Vec<_>>().join(", ")
                            ),
                        ));
                    }
                }
            }
            let puncture = self.surface.peripheral()[0].word().letters().to_vec();
            for t in PUNCTURE_GRID {
                let tr = twist(&base, t)?.evaluate(&puncture).trace();
                let want = base.evaluate(&puncture).trace();
                if (tr - want).abs() > tol::TRACE_TARGET {
                    violations.push(Violation::new(
                        self.surface.peripheral()[0].to_string(),
                        None,
                        format!("puncture trace {} at t = {}, expected {}", fmt_num(tr), fmt_num(t), fmt_num(want)),
                    ));
                }
            }
        }
        details.insert("crossings_checked".into(), crossings_checked.into());
        details.insert("worst_cosh_residual".into(), fmt_num(worst).into());
        details.insert("twist_sequences".into(), sequences.into());
        Ok((pairs.len() * metrics.len(), violations))
    }
}

/// Twisted metrics used by the numeric scan besides the base metric.
pub const TWIST_METRICS: [f64; 3] = [-1.0, 0.5, 2.0];

/// Times at which angles are tracked along the twist.
pub const TWIST_GRID: [f64; 5] = [-2.0, -1.0, 0.0, 1.0, 2.0];

/// Times at which the puncture trace is checked.
pub const PUNCTURE_GRID: [f64; 5] = [-2.0, -1.0, 0.3, 1.0, 5.0];

/// Convenience: run one scan with defaults.
pub fn run_scan(kind: ScanKind, surface: &SurfacePresentation, max_len: usize) -> Result<ScanReport> {
    ScanConfig::new(kind, surface.clone(), max_len).run()
}
