//! Surface presentations: a free generating set together with the ribbon
//! (fatgraph) structure of the one-vertex spine.
//!
//! The ribbon order lists the `2n` half-edges at the spine vertex in cyclic
//! order. The half-edge labelled `l` is the one a path leaves along when it
//! reads the letter `l`; after reading `l` a path arrives on the half-edge
//! labelled `l⁻¹`.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{CyclicWord, Letter, UndirectedClass, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfacePresentation {
    name: String,
    generators: usize,
    ribbon: Vec<Letter>,
    peripheral: Vec<UndirectedClass>,
}

/// JSON form: `{name, generators: ["a","b"], ribbon: ["a","A","b","B"], expected_boundaries: 3}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SurfaceConfig {
    pub name: String,
    pub generators: Vec<String>,
    pub ribbon: Vec<String>,
    pub expected_boundaries: usize,
}

fn letters(s: &str) -> Vec<Letter> {
    s.chars().map(|c| Letter::from_char(c).unwrap()).collect()
}

impl SurfacePresentation {
    /// Build and validate a presentation. `expected_boundaries` must match the
    /// number of boundary cycles of the ribbon graph.
    pub fn new(
        name: &str,
        generators: usize,
        ribbon: Vec<Letter>,
        expected_boundaries: usize,
    ) -> Result<Self> {
        if generators == 0 || generators > crate::words::MAX_GENERATORS {
            return Err(Error::Surface(format!("bad generator count {generators}")));
        }
        if ribbon.len() != 2 * generators {
            return Err(Error::Surface(format!(
                "ribbon has {} letters, expected {}",
                ribbon.len(),
                2 * generators
            )));
        }
        let mut seen = vec![false; 2 * generators];
        for l in &ribbon {
            if l.gen() >= generators {
                return Err(Error::LetterOutOfRange {
                    letter: l.to_char(),
                    generators,
                });
            }
            let c = l.code(generators);
            if seen[c] {
                return Err(Error::Surface(format!("letter {l} repeated in ribbon")));
            }
            seen[c] = true;
        }
        let mut s = Self {
            name: name.to_string(),
            generators,
            ribbon,
            peripheral: Vec::new(),
        };
        let cycles = s.boundary_walks();
        if cycles.len() != expected_boundaries {
            return Err(Error::Surface(format!(
                "{name}: ribbon gives {} boundary cycles, expected {expected_boundaries}",
                cycles.len()
            )));
        }
        s.peripheral = cycles
            .iter()
            .map(|w| UndirectedClass::from_letters(w.iter().copied()))
            .collect();
        s.peripheral.sort();
        Ok(s)
    }

    /// Pair of pants, ribbon `(a, A, b, B)`; boundaries `a`, `b`, `ab`.
    pub fn pants() -> Self {
        Self::new("pants", 2, letters("aAbB"), 3).unwrap()
    }

    /// Once-punctured torus, ribbon `(a, b, A, B)`; puncture `abAB`.
    pub fn punctured_torus() -> Self {
        Self::new("torus1", 2, letters("abAB"), 1).unwrap()
    }

    /// Four-holed sphere, ribbon `(a, A, b, B, c, C)`.
    pub fn four_holed_sphere() -> Self {
        Self::new("sphere4", 3, letters("aAbBcC"), 4).unwrap()
    }

    /// Once-punctured genus-two surface; the single boundary word is
    /// `abABcdCD` up to rotation and inversion.
    pub fn punctured_genus_two() -> Self {
        Self::new("genus2", 4, letters("adCDcbAB"), 1).unwrap()
    }

    /// Look up one of the shipped surfaces by name.
    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "pants" | "pair-of-pants" => Ok(Self::pants()),
            "torus1" | "torus" | "punctured-torus" => Ok(Self::punctured_torus()),
            "sphere4" | "four-holed-sphere" => Ok(Self::four_holed_sphere()),
            "genus2" | "punctured-genus-two" => Ok(Self::punctured_genus_two()),
            _ => Err(Error::Surface(format!("unknown surface {name:?}"))),
        }
    }

    pub fn shipped() -> Vec<Self> {
        vec![
            Self::pants(),
            Self::punctured_torus(),
            Self::four_holed_sphere(),
            Self::punctured_genus_two(),
        ]
    }

    pub fn from_config(cfg: &SurfaceConfig) -> Result<Self> {
        let n = cfg.generators.len();
        for (i, g) in cfg.generators.iter().enumerate() {
            let expect = Letter::new(i, false).to_char().to_string();
            if *g != expect {
                return Err(Error::Surface(format!(
                    "generator {i} must be named {expect:?}, got {g:?}"
                )));
            }
        }
        let ribbon = cfg
            .ribbon
            .iter()
            .map(|s| {
                let mut cs = s.chars();
                match (cs.next(), cs.next()) {
                    (Some(c), None) => Letter::from_char(c),
                    _ => Err(Error::Parse(format!("ribbon entry {s:?} is not one letter"))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(&cfg.name, n, ribbon, cfg.expected_boundaries)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let cfg: SurfaceConfig = serde_json::from_str(&text)?;
        Self::from_config(&cfg)
    }

    pub fn to_config(&self) -> SurfaceConfig {
        SurfaceConfig {
            name: self.name.clone(),
            generators: (0..self.generators)
                .map(|i| Letter::new(i, false).to_string())
                .collect(),
            ribbon: self.ribbon.iter().map(|l| l.to_string()).collect(),
            expected_boundaries: self.peripheral.len(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn ribbon(&self) -> &[Letter] {
        &self.ribbon
    }

    /// Boundary (or puncture) classes, sorted.
    pub fn peripheral(&self) -> &[UndirectedClass] {
        &self.peripheral
    }

    /// Euler characteristic `1 - n`.
    pub fn euler_characteristic(&self) -> i64 {
        1 - self.generators as i64
    }

    /// Genus from `χ = 2 - 2g - b`.
    pub fn genus(&self) -> i64 {
        (2 - self.euler_characteristic() - self.peripheral.len() as i64) / 2
    }

    fn successor(&self, l: Letter) -> Letter {
        let i = self.ribbon.iter().position(|&r| r == l).unwrap();
        self.ribbon[(i + 1) % self.ribbon.len()]
    }

    /// Raw boundary walks of the fatgraph: from half-edge `l`, traverse the
    /// edge, arrive at `l⁻¹`, continue with the successor of `l⁻¹`.
    pub fn boundary_walks(&self) -> Vec<Vec<Letter>> {
        let n = self.generators;
        let mut used = vec![false; 2 * n];
        let mut walks = Vec::new();
        for &start in &self.ribbon {
            if used[start.code(n)] {
                continue;
            }
            let mut walk = Vec::new();
            let mut l = start;
            while !used[l.code(n)] {
                used[l.code(n)] = true;
                walk.push(l);
                l = self.successor(l.inv());
            }
            walks.push(walk);
        }
        walks
    }

    /// Boundary cycles as undirected classes.
    pub fn boundary_cycles(&self) -> Vec<UndirectedClass> {
        self.peripheral.clone()
    }

    /// True for the trivial class and for positive powers of boundary classes.
    pub fn is_peripheral(&self, c: &UndirectedClass) -> bool {
        if c.is_trivial() {
            return true;
        }
        let (root, _) = c.primitive_root().expect("nontrivial");
        // Boundary words of a ribbon graph are primitive, so comparing roots
        // suffices.
        self.peripheral.contains(&root)
    }

    /// Parse a word and check its letters fit this surface.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let w: Word = s.parse()?;
        self.check_letters(w.letters())?;
        Ok(w)
    }

    pub fn parse_class(&self, s: &str) -> Result<CyclicWord> {
        let letters = crate::words::parse_letters(s)?;
        self.check_letters(&letters)?;
        Ok(CyclicWord::from_letters(letters))
    }

    pub fn check_letters(&self, letters: &[Letter]) -> Result<()> {
        for l in letters {
            if l.gen() >= self.generators {
                return Err(Error::LetterOutOfRange {
                    letter: l.to_char(),
                    generators: self.generators,
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for SurfacePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (ribbon ", self.name)?;
        for l in &self.ribbon {
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for SurfacePresentation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::by_name(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(s: &str) -> UndirectedClass {
        s.parse().unwrap()
    }

    #[test]
    fn pants_boundaries() {
        let s = SurfacePresentation::pants();
        assert_eq!(s.boundary_cycles(), vec![u("a"), u("b"), u("ab")]);
        assert_eq!(s.genus(), 0);
    }

    #[test]
    fn torus_boundary() {
        let s = SurfacePresentation::punctured_torus();
        assert_eq!(s.boundary_cycles(), vec![u("abAB")]);
        assert_eq!(s.genus(), 1);
    }

    #[test]
    fn genus_two_boundary_word() {
        let s = SurfacePresentation::punctured_genus_two();
        assert_eq!(s.boundary_cycles(), vec![u("abABcdCD")]);
        assert_eq!(s.genus(), 2);
    }

    #[test]
    fn shipped_counts_and_edge_traversals() {
        let expected = [("pants", 3), ("torus1", 1), ("sphere4", 4), ("genus2", 1)];
        for (s, (name, b)) in SurfacePresentation::shipped().iter().zip(expected) {
            assert_eq!(s.name(), name);
            assert_eq!(s.boundary_cycles().len(), b);
            let traversals: usize = s.boundary_walks().iter().map(|w| w.len()).sum();
            assert_eq!(traversals, 2 * s.generators());
        }
    }

    #[test]
    fn peripheral_examples() {
        let p = SurfacePresentation::pants();
        assert!(p.is_peripheral(&u("a")));
        assert!(p.is_peripheral(&u("BABA")));
        assert!(p.is_peripheral(&u("")));
        assert!(!p.is_peripheral(&u("aab")));
        assert!(!p.is_peripheral(&u("aB")));
        let t = SurfacePresentation::punctured_torus();
        assert!(t.is_peripheral(&u("abAB")));
        assert!(t.is_peripheral(&u("abABabAB")));
        assert!(!t.is_peripheral(&u("a")));
    }

    #[test]
    fn aab_is_not_a_power_of_a_boundary() {
        // Oracle: all powers of the three boundary words up to length 3.
        let p = SurfacePresentation::pants();
        let mut powers = Vec::new();
        for b in p.peripheral() {
            for m in 1..=3 {
                if b.len() * m <= 3 {
                    powers.push(b.power(m));
                }
            }
        }
        assert!(!powers.contains(&u("aab")));
    }

    #[test]
    fn rejects_bad_ribbons() {
        let bad = SurfacePresentation::new("x", 2, letters("aabB"), 3);
        assert!(bad.is_err());
        let wrong_count = SurfacePresentation::new("x", 2, letters("aAbB"), 1);
        assert!(wrong_count.is_err());
        let short = SurfacePresentation::new("x", 2, letters("aAb"), 3);
        assert!(short.is_err());
    }

    #[test]
    fn config_round_trip() {
        let s = SurfacePresentation::four_holed_sphere();
        let json = serde_json::to_string(&s.to_config()).unwrap();
        let cfg: SurfaceConfig = serde_json::from_str(&json).unwrap();
        assert_eq!(SurfacePresentation::from_config(&cfg).unwrap(), s);
    }
}
