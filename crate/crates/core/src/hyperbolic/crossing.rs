//! Intersection points of closed geodesics, found by searching a ball in the
//! Cayley graph for translates of one axis that cross a fundamental segment
//! of the other.

use num_complex::Complex64;

use super::holonomy::Holonomy;
use super::mobius::{cosh_distance, Axis, Mobius};
use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::tol;
use crate::words::{inverse_letters, CyclicWord, DirectedClass, Letter, UndirectedClass, Word};

/// One intersection point of the geodesics of `x` and `y`: the axis of `x`
/// meets the axis of `g y g⁻¹` at distance `s` from the window start.
#[derive(Clone, Debug, PartialEq)]
pub struct Crossing {
    pub witness: Word,
    pub s: f64,
    /// Angle from the `y` geodesic to the `x` geodesic, counterclockwise.
    pub phi: f64,
    pub epsilon: i8,
    pub point: Complex64,
}

/// Crossings of one pair together with the search radius that certified them.
#[derive(Clone, Debug)]
pub struct CrossingSet {
    pub crossings: Vec<Crossing>,
    pub radius: usize,
    pub nodes: usize,
}

/// Numeric engine over a fixed holonomy.
#[derive(Clone, Debug)]
pub struct GeometricEngine {
    rho: Holonomy,
    base: Complex64,
    slack: f64,
    extra_radius: usize,
}

struct Found {
    crossing: Crossing,
    key: Word,
}

struct Node {
    parent: u32,
    letter: Letter,
}

fn word_of(arena: &[Node], mut idx: u32) -> Vec<Letter> {
    let mut out = Vec::new();
    while idx != 0 {
        let n = &arena[idx as usize];
        out.push(n.letter);
        idx = n.parent;
    }
    out.reverse();
    out
}

impl GeometricEngine {
    pub fn new(rho: Holonomy) -> Self {
        Self {
            rho,
            base: Complex64::new(0.0917, 1.0731),
            slack: tol::PRUNE_SLACK,
            extra_radius: 0,
        }
    }

    /// Override the pruning slack (hyperbolic distance).
    pub fn with_slack(mut self, slack: f64) -> Self {
        self.slack = slack;
        self
    }

    /// Start the radius schedule this many steps later.
    pub fn with_extra_radius(mut self, extra: usize) -> Self {
        self.extra_radius = extra;
        self
    }

    pub fn holonomy(&self) -> &Holonomy {
        &self.rho
    }

    pub fn axis_of(&self, w: &[Letter]) -> Result<Axis> {
        self.rho.evaluate(w).axis()
    }

    /// All crossings of the geodesics of `x` and `y`. A power `y = r^n`
    /// contributes each translate of the axis of `r` with multiplicity `n`,
    /// listed with witnesses `g, g r, ..., g r^(n-1)`. A power `x = p^m`
    /// repeats the crossings of `p` along `m` consecutive windows, with
    /// witnesses `p^k g`.
    pub fn crossings(&self, x: &CyclicWord, y: &CyclicWord) -> Result<CrossingSet> {
        if x.is_trivial() || y.is_trivial() {
            return Err(Error::Unsupported("trivial class has no geodesic".into()));
        }
        self.rho.surface().check_letters(x.letters())?;
        self.rho.surface().check_letters(y.letters())?;
        if self.is_cusp(x) || self.is_cusp(y) {
            return Ok(CrossingSet {
                crossings: Vec::new(),
                radius: 0,
                nodes: 0,
            });
        }
        let named = |e| match e {
            Error::NearTangent(c, _) => Error::NearTangent(c, format!("{x} and {y}")),
            other => other,
        };
        let (root_x, m) = x.primitive_root()?;
        if m == 1 {
            return self.primitive_crossings(x, y).map_err(named);
        }
        let mut set = self.primitive_crossings(&root_x, y).map_err(named)?;
        let (_, n) = y.primitive_root()?;
        let p = root_x.as_word();
        let mp = self.rho.evaluate(p.letters());
        let lp = mp.translation_length()?;
        let mut out = Vec::with_capacity(set.crossings.len() * m);
        for c in &set.crossings {
            let (mut shift, mut g, mut point) = (0.0, c.witness.clone(), c.point);
            for _ in 0..m {
                out.push(Crossing {
                    witness: g.clone(),
                    s: c.s + shift,
                    point,
                    ..c.clone()
                });
                shift += lp;
                g = p.mul(&g);
                point = mp.apply(point);
            }
        }
        sort_crossings(&mut out, n);
        set.crossings = out;
        Ok(set)
    }

    fn primitive_crossings(&self, x: &CyclicWord, y: &CyclicWord) -> Result<CrossingSet> {
        let (root_y, n) = y.primitive_root()?;
        let mx = self.rho.evaluate(x.letters());
        let ax = mx.axis()?;
        let my = self.rho.evaluate(root_y.letters());
        let ay = my.axis()?;
        let t = ax.normalizer(self.base);
        let q = ay.project(self.base);
        let mid = Complex64::new(0.0, (ax.length / 2.0).exp());
        let bound = (ax.length / 2.0 + ay.length / 2.0 + self.slack).cosh();

        let r0 = x.len() + y.len() + 4 + self.extra_radius;
        let cap = r0 + 12;
        let mut arena = vec![Node {
            parent: 0,
            letter: Letter::new(0, false),
        }];
        let mut frontier: Vec<(u32, Mobius, Option<Letter>)> = if cosh_distance(mid, t.apply(q)) > bound {
            Vec::new()
        } else {
            vec![(0, t, None)]
        };
        let mut found: Vec<Found> = Vec::new();
        let mut count_at: Vec<usize> = Vec::new();
        let n_gen = self.rho.surface().generators();
        let letters: Vec<Letter> = (0..2 * n_gen).map(|c| Letter::from_code(c, n_gen)).collect();
        let gens: Vec<Mobius> = letters.iter().map(|&l| self.rho.letter(l)).collect();
        let root_word = root_y.as_word();
        let own_axis = (UndirectedClass::new(root_y.clone()) == UndirectedClass::new(x.clone()))
            .then(|| (x.as_word(), x.as_word().inverse()));
        let mut level = 0usize;
        let radius;
        loop {
            let mut next = Vec::new();
            for (idx, tg, last) in &frontier {
                if let Some(c) = self.test(&t, tg, &ay, &ax, &root_word, own_axis.as_ref(), &arena, *idx)? {
                    if !found.iter().any(|f| f.key == c.key) {
                        found.push(c);
                    }
                }
                for &l in &letters {
                    if Some(l.inv()) == *last {
                        continue;
                    }
                    let m = tg.mul(&gens[l.code(n_gen)]);
                    if cosh_distance(mid, m.apply(q)) > bound {
                        continue;
                    }
                    arena.push(Node {
                        parent: *idx,
                        letter: l,
                    });
                    let child = (arena.len() - 1) as u32;
                    next.push((child, m, Some(l)));
                }
            }
            count_at.push(found.len());
            if next.is_empty() {
                radius = level;
                break;
            }
            if level >= r0 + 2 && (level - r0).is_multiple_of(2) && count_at[level] == count_at[level - 2] {
                radius = level;
                break;
            }
            if level >= cap {
                return Err(Error::RadiusInsufficient(level));
            }
            frontier = next;
            level += 1;
        }

        let nodes = arena.len();
        let mut crossings: Vec<Crossing> = found.into_iter().map(|f| f.crossing).collect();
        sort_crossings(&mut crossings, 1);
        warn_triple_points(&crossings);
        if n > 1 {
            let r = root_y.as_word();
            let mut out = Vec::with_capacity(crossings.len() * n);
            for c in crossings {
                let mut w = c.witness.clone();
                for _ in 0..n {
                    out.push(Crossing {
                        witness: w.clone(),
                        ..c.clone()
                    });
                    w = w.mul(&r);
                }
            }
            crossings = out;
        }
        Ok(CrossingSet {
            crossings,
            radius,
            nodes,
        })
    }

    /// A peripheral class with parabolic image winds around a puncture and
    /// has no closed geodesic; it meets nothing.
    fn is_cusp(&self, w: &CyclicWord) -> bool {
        self.rho.evaluate(w.letters()).kind() == super::mobius::Kind::Parabolic
            && self.rho.surface().is_peripheral(&UndirectedClass::new(w.clone()))
    }

    /// Check the translate `g·axis(y)` given `tg = T·ρ(g)` in normalized
    /// coordinates, where the axis of `x` is the imaginary axis.
    #[allow(clippy::too_many_arguments)]
    fn test(
        &self,
        t: &Mobius,
        tg: &Mobius,
        ay: &Axis,
        ax: &Axis,
        root_y: &Word,
        own_axis: Option<&(Word, Word)>,
        arena: &[Node],
        idx: u32,
    ) -> Result<Option<Found>> {
        if let Some((rx, rx_inv)) = own_axis {
            let g = Word::reduce(word_of(arena, idx));
            let conj = g.mul(root_y).mul(&g.inverse());
            if conj == *rx || conj == *rx_inv {
                return Ok(None);
            }
        }
        let u = tg.apply_boundary(ay.repelling);
        let v = tg.apply_boundary(ay.attracting);
        if u.is_infinite() || v.is_infinite() || (u > 0.0) == (v > 0.0) {
            return Ok(None);
        }
        let h = (-u * v).sqrt();
        // The window is centred on the search ball, so every crossing is
        // met by some coset representative that lands it in [0, l_x).
        let s = h.ln();
        if s < -tol::WINDOW_SNAP || s >= ax.length - tol::WINDOW_SNAP {
            return Ok(None);
        }
        let s = s.max(0.0);
        let (pos, neg) = if u > 0.0 { (u, -v) } else { (v, -u) };
        let phi = 2.0 * (neg / pos).sqrt().atan();
        let cos_phi = (pos - neg) / (pos + neg);
        if cos_phi.abs() > 1.0 - tol::NEAR_TANGENT
            || !(tol::ANGLE_INTERIOR..=std::f64::consts::PI - tol::ANGLE_INTERIOR).contains(&phi)
        {
            return Err(Error::NearTangent(cos_phi.abs(), String::new()));
        }
        let witness = coset_rep(&Word::reduce(word_of(arena, idx)), root_y);
        let epsilon = if u > 0.0 { 1 } else { -1 };
        let point_norm = Complex64::new(0.0, s.exp());
        Ok(Some(Found {
            crossing: Crossing {
                witness: witness.clone(),
                s,
                phi,
                epsilon,
                point: t.inv().apply(point_norm),
            },
            key: witness,
        }))
    }

    /// Crossings with the crossing set re-derived at a larger starting
    /// radius; errors if the two disagree.
    pub fn crossings_certified(&self, x: &CyclicWord, y: &CyclicWord) -> Result<CrossingSet> {
        let a = self.crossings(x, y)?;
        let b = self
            .clone()
            .with_extra_radius(self.extra_radius + 2)
            .crossings(x, y)?;
        if !same_crossings(&a.crossings, &b.crossings) {
            return Err(Error::RadiusInsufficient(a.radius));
        }
        Ok(a)
    }

    /// `Σ ε ⟨x · g y g⁻¹⟩` over crossings.
    pub fn goldman(&self, x: &DirectedClass, y: &DirectedClass) -> Result<LinComb<DirectedClass>> {
        let (xw, yw) = (x.word(), y.word());
        if xw.is_trivial() || yw.is_trivial() {
            return Ok(LinComb::zero());
        }
        let set = self.crossings(xw, yw)?;
        let mut out = LinComb::zero();
        for c in &set.crossings {
            let prod = loop_product(xw.letters(), &c.witness, yw.letters());
            out.add_term(DirectedClass::from_letters(prod), c.epsilon as i64);
        }
        Ok(out)
    }

    /// Both smoothings at every crossing, before cancellation:
    /// `(zero, infinity)` per crossing.
    pub fn twg_terms(
        &self,
        x: &CyclicWord,
        y: &CyclicWord,
    ) -> Result<Vec<(Crossing, UndirectedClass, UndirectedClass)>> {
        if x.is_trivial() || y.is_trivial() {
            return Ok(Vec::new());
        }
        let set = self.crossings(x, y)?;
        let y_inv = inverse_letters(y.letters());
        Ok(set
            .crossings
            .into_iter()
            .map(|c| {
                let same = UndirectedClass::from_letters(loop_product(x.letters(), &c.witness, y.letters()));
                let opposite = UndirectedClass::from_letters(loop_product(x.letters(), &c.witness, &y_inv));
                let (zero, inf) = if c.epsilon > 0 {
                    (same, opposite)
                } else {
                    (opposite, same)
                };
                (c, zero, inf)
            })
            .collect())
    }

    pub fn twg(&self, x: &UndirectedClass, y: &UndirectedClass) -> Result<LinComb<UndirectedClass>> {
        let mut out = LinComb::zero();
        for (_, zero, inf) in self.twg_terms(x.word(), y.word())? {
            out.add_term(zero, 1);
            out.add_term(inf, -1);
        }
        Ok(out)
    }

    /// Residuals of the cosh length identities at one crossing:
    /// `cosh(l0/2) = cosh(lx/2)cosh(ly/2) - sinh(lx/2)sinh(ly/2)cos φ` and the
    /// `∞` identity with `+cos φ`. Relative to the left-hand side.
    pub fn cosh_residuals(&self, x: &CyclicWord, y: &CyclicWord, c: &Crossing) -> Result<(f64, f64)> {
        let tx = self.rho.evaluate(x.letters()).trace().abs() / 2.0;
        let ty = self.rho.evaluate(y.letters()).trace().abs() / 2.0;
        if tx <= 1.0 || ty <= 1.0 {
            return Err(Error::NotHyperbolic(2.0 * tx.min(ty)));
        }
        let (root_x, _) = x.primitive_root()?;
        let w = coset_rep(&c.witness.inverse(), &root_x.as_word()).inverse();
        let y_inv = inverse_letters(y.letters());
        let half_trace = |letters: Vec<Letter>| {
            self.rho.evaluate(CyclicWord::from_letters(letters).letters()).trace().abs() / 2.0
        };
        let same = half_trace(loop_product(x.letters(), &w, y.letters()));
        let opposite = half_trace(loop_product(x.letters(), &w, &y_inv));
        let (zero, inf) = if c.epsilon > 0 {
            (same, opposite)
        } else {
            (opposite, same)
        };
        let cc = tx * ty;
        let ss = ((tx * tx - 1.0) * (ty * ty - 1.0)).sqrt();
        let cos = c.phi.cos();
        let rel = |lhs: f64, rhs: f64| (lhs - rhs).abs() / lhs.abs().max(1.0);
        Ok((rel(zero, cc - ss * cos), rel(inf, cc + ss * cos)))
    }

    /// Number of self-intersection points of the geodesic of a primitive
    /// class.
    pub fn self_crossings(&self, x: &UndirectedClass) -> Result<usize> {
        if x.is_trivial() {
            return Ok(0);
        }
        if x.primitive_root()?.1 != 1 {
            return Err(Error::NotPrimitive(x.to_string()));
        }
        let set = self.crossings(x.word(), x.word())?;
        let k = set.crossings.len();
        if k % 2 != 0 {
            return Err(Error::Indeterminate(format!(
                "odd number {k} of ordered self-crossings of {x}"
            )));
        }
        Ok(k / 2)
    }

    /// Geometric intersection number, with the `m·n` rule for powers and
    /// `m²·SI(r) + ...` left unsupported when both share a non-simple root.
    pub fn intersection_number(&self, x: &UndirectedClass, y: &UndirectedClass) -> Result<usize> {
        if x.is_trivial() || y.is_trivial() {
            return Ok(0);
        }
        let (rx, m) = x.primitive_root()?;
        let (ry, n) = y.primitive_root()?;
        if rx == ry {
            let si = self.self_crossings(&rx)?;
            if si == 0 {
                return Ok(0);
            }
            return Err(Error::Unsupported(format!(
                "intersection of powers of the non-simple class {rx}"
            )));
        }
        let set = self.crossings(rx.word(), ry.word())?;
        Ok(set.crossings.len() * m * n)
    }

    /// Angles of a fixed crossing (tracked by its witness) under a family of
    /// holonomies.
    pub fn track_angle(&self, x: &CyclicWord, y: &CyclicWord, witness: &Word) -> Result<f64> {
        let ax = self.rho.evaluate(x.letters()).axis()?;
        let conj: Vec<Letter> = witness
            .letters()
            .iter()
            .copied()
            .chain(y.letters().iter().copied())
            .chain(witness.inverse().letters().iter().copied())
            .collect();
        let ay = self.rho.evaluate(&conj).axis()?;
        let t = ax.normalizer(self.base);
        let u = t.apply_boundary(ay.repelling);
        let v = t.apply_boundary(ay.attracting);
        if u.is_infinite() || v.is_infinite() || (u > 0.0) == (v > 0.0) {
            return Err(Error::CrossingLost(f64::NAN));
        }
        let (pos, neg) = if u > 0.0 { (u, -v) } else { (v, -u) };
        Ok(2.0 * (neg / pos).sqrt().atan())
    }
}

/// `x · g y g⁻¹` as a letter sequence.
pub fn loop_product(x: &[Letter], g: &Word, y: &[Letter]) -> Vec<Letter> {
    let mut out = x.to_vec();
    out.extend_from_slice(g.letters());
    out.extend_from_slice(y);
    out.extend(g.inverse().letters().iter().copied());
    out
}

/// Shortest representative of the coset `g⟨r⟩`, ties broken by letter order.
pub fn coset_rep(g: &Word, r: &Word) -> Word {
    let k_max = (g.len() / r.len().max(1) + 2) as i64;
    let r_inv = r.inverse();
    let mut best = g.clone();
    for sign in [1i64, -1] {
        let step = if sign > 0 { r } else { &r_inv };
        let mut w = g.clone();
        for _ in 0..k_max {
            w = w.mul(step);
            if (w.len(), w.letters()) < (best.len(), best.letters()) {
                best = w.clone();
            }
        }
    }
    best
}

/// Sort by position along the window; the `n` copies of one point coming
/// from a power of `y` stay adjacent.
fn sort_crossings(cs: &mut [Crossing], n: usize) {
    cs.sort_by(|a, b| {
        let ka = (a.s * 1e6).round();
        let kb = (b.s * 1e6).round();
        ka.total_cmp(&kb)
            .then_with(|| if n > 1 { std::cmp::Ordering::Equal } else { a.witness.letters().cmp(b.witness.letters()) })
    });
}

fn same_crossings(a: &[Crossing], b: &[Crossing]) -> bool {
    a.len() == b.len()
        && a.iter().all(|c| {
            b.iter().any(|d| {
                (c.s - d.s).abs() < 1e-7 && (c.phi - d.phi).abs() < 1e-7 && c.epsilon == d.epsilon
            })
        })
}

fn warn_triple_points(cs: &[Crossing]) {
    for i in 0..cs.len() {
        for j in i + 1..cs.len() {
            if super::mobius::distance(cs[i].point, cs[j].point) < tol::TRIPLE_POINT {
                log::warn!(
                    "crossings with witnesses {} and {} share a point",
                    cs[i].witness,
                    cs[j].witness
                );
            }
        }
    }
}
