//! The Goldman bracket of directed classes, the TWG bracket of undirected
//! classes, and the Poisson extension of the latter to the symmetric algebra.
//!
//! Both brackets are sums over the linked pairs `(i, j)` of the two cyclic
//! words. At a pair with sign `ε` the loop product is the conjugacy class of
//! `x_i · y_j` (each word read from its position). For undirected classes the
//! two smoothings are `x_i · y_j` and `x_i · (y_j)⁻¹`; the one with `ε = +1`
//! orientation is the 0-smoothing and enters with `+`, the other with `−`.

use crate::error::Result;
use crate::lincomb::{LinComb, Monomial, SymPoly};
use crate::ribbon::{linked_pairs, LinkedPair, RibbonAtInfinity, Strand};
use crate::surface::SurfacePresentation;
use crate::words::{inverse_letters, CyclicWord, DirectedClass, Letter, UndirectedClass};

/// Shared per-surface state for bracket computations.
#[derive(Clone, Debug)]
pub struct BracketEngine {
    surface: SurfacePresentation,
    rib: RibbonAtInfinity,
}

/// The two smoothings at one linked pair, before any cancellation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smoothing {
    pub pair: LinkedPair,
    pub zero: UndirectedClass,
    pub infinity: UndirectedClass,
}

fn concat(a: &[Letter], b: &[Letter]) -> impl Iterator<Item = Letter> {
    a.iter().chain(b.iter()).copied().collect::<Vec<_>>().into_iter()
}

impl BracketEngine {
    pub fn new(surface: &SurfacePresentation) -> Self {
        Self {
            surface: surface.clone(),
            rib: RibbonAtInfinity::new(surface),
        }
    }

    pub fn surface(&self) -> &SurfacePresentation {
        &self.surface
    }

    pub fn ribbon(&self) -> &RibbonAtInfinity {
        &self.rib
    }

    fn pairs(&self, x: &CyclicWord, y: &CyclicWord) -> Result<Vec<LinkedPair>> {
        if x.is_trivial() || y.is_trivial() {
            return Ok(Vec::new());
        }
        linked_pairs(&Strand::from_word(x), &Strand::from_word(y), &self.rib)
    }

    /// Loop products `ε · ⟨x_i y_j⟩` before cancellation.
    pub fn goldman_terms(&self, x: &CyclicWord, y: &CyclicWord) -> Result<Vec<(DirectedClass, i8)>> {
        Ok(self
            .pairs(x, y)?
            .into_iter()
            .map(|p| {
                let prod = DirectedClass::from_letters(concat(&x.rotation(p.i), &y.rotation(p.j)));
                (prod, p.sign)
            })
            .collect())
    }

    pub fn goldman(&self, x: &DirectedClass, y: &DirectedClass) -> Result<LinComb<DirectedClass>> {
        Ok(self
            .goldman_terms(x.word(), y.word())?
            .into_iter()
            .map(|(c, s)| (c, s as i64))
            .collect())
    }

    /// Both smoothings at every linked pair, before cancellation.
    pub fn twg_terms(&self, x: &CyclicWord, y: &CyclicWord) -> Result<Vec<Smoothing>> {
        Ok(self
            .pairs(x, y)?
            .into_iter()
            .map(|p| {
                let xi = x.rotation(p.i);
                let yj = y.rotation(p.j);
                let same = UndirectedClass::from_letters(concat(&xi, &yj));
                let opposite = UndirectedClass::from_letters(concat(&xi, &inverse_letters(&yj)));
                let (zero, infinity) = if p.sign > 0 {
                    (same, opposite)
                } else {
                    (opposite, same)
                };
                Smoothing {
                    pair: p,
                    zero,
                    infinity,
                }
            })
            .collect())
    }

    pub fn twg(&self, x: &UndirectedClass, y: &UndirectedClass) -> Result<LinComb<UndirectedClass>> {
        let mut out = LinComb::zero();
        for s in self.twg_terms(x.word(), y.word())? {
            out.add_term(s.zero, 1);
            out.add_term(s.infinity, -1);
        }
        Ok(out)
    }

    /// TWG bracket through the forgetful map: `u[α, β] + u[α, β̄]`.
    pub fn twg_from_goldman(
        &self,
        x: &UndirectedClass,
        y: &UndirectedClass,
    ) -> Result<LinComb<UndirectedClass>> {
        self.twg_from_lifts(&x.lift(), &y.lift())
    }

    /// Same, from explicit directed lifts.
    pub fn twg_from_lifts(
        &self,
        alpha: &DirectedClass,
        beta: &DirectedClass,
    ) -> Result<LinComb<UndirectedClass>> {
        let g1 = self.goldman(alpha, beta)?;
        let g2 = self.goldman(alpha, &beta.reverse())?;
        let forget = |c: &DirectedClass| c.undirected();
        Ok(&g1.map_classes(forget) + &g2.map_classes(forget))
    }

    /// Bilinear extension of the TWG bracket.
    pub fn twg_lin(
        &self,
        p: &LinComb<UndirectedClass>,
        q: &LinComb<UndirectedClass>,
    ) -> Result<LinComb<UndirectedClass>> {
        let mut out = LinComb::zero();
        for (x, a) in p.iter() {
            for (y, b) in q.iter() {
                out.add_scaled(&self.twg(x, y)?, a * b);
            }
        }
        Ok(out)
    }

    /// Bilinear extension of the Goldman bracket.
    pub fn goldman_lin(
        &self,
        p: &LinComb<DirectedClass>,
        q: &LinComb<DirectedClass>,
    ) -> Result<LinComb<DirectedClass>> {
        let mut out = LinComb::zero();
        for (x, a) in p.iter() {
            for (y, b) in q.iter() {
                out.add_scaled(&self.goldman(x, y)?, a * b);
            }
        }
        Ok(out)
    }

    /// `[[x,y],z] + [[y,z],x] + [[z,x],y]`; zero when the Jacobi identity holds.
    pub fn jacobi_sum(
        &self,
        x: &UndirectedClass,
        y: &UndirectedClass,
        z: &UndirectedClass,
    ) -> Result<LinComb<UndirectedClass>> {
        let single = |c: &UndirectedClass| LinComb::single(c.clone());
        let mut out = self.twg_lin(&self.twg(x, y)?, &single(z))?;
        out.add_scaled(&self.twg_lin(&self.twg(y, z)?, &single(x))?, 1);
        out.add_scaled(&self.twg_lin(&self.twg(z, x)?, &single(y))?, 1);
        Ok(out)
    }

    /// Poisson bracket on the symmetric algebra, extended from the TWG bracket
    /// by the Leibniz rule in each argument.
    pub fn poisson(&self, p: &SymPoly, q: &SymPoly) -> Result<SymPoly> {
        let mut out = SymPoly::zero();
        for (m1, a) in p.iter() {
            for (m2, b) in q.iter() {
                out.add_scaled(&self.poisson_monomials(m1, m2)?, a * b);
            }
        }
        Ok(out)
    }

    fn poisson_monomials(&self, m1: &Monomial, m2: &Monomial) -> Result<SymPoly> {
        let mut out = SymPoly::zero();
        for (i, xi) in m1.factors().iter().enumerate() {
            let rest1 = m1.without(i);
            for (j, yj) in m2.factors().iter().enumerate() {
                let br = self.twg(xi, yj)?;
                if br.is_zero() {
                    continue;
                }
                let rest = rest1.mul(&m2.without(j));
                for (c, k) in br.iter() {
                    out.add_term(rest.mul(&Monomial::new(vec![c.clone()])), k);
                }
            }
        }
        Ok(out)
    }
}

pub fn goldman_bracket(
    x: &DirectedClass,
    y: &DirectedClass,
    s: &SurfacePresentation,
) -> Result<LinComb<DirectedClass>> {
    BracketEngine::new(s).goldman(x, y)
}

pub fn twg_bracket(
    x: &UndirectedClass,
    y: &UndirectedClass,
    s: &SurfacePresentation,
) -> Result<LinComb<UndirectedClass>> {
    BracketEngine::new(s).twg(x, y)
}

pub fn twg_from_goldman(
    x: &UndirectedClass,
    y: &UndirectedClass,
    s: &SurfacePresentation,
) -> Result<LinComb<UndirectedClass>> {
    BracketEngine::new(s).twg_from_goldman(x, y)
}

pub fn jacobi_sum(
    x: &UndirectedClass,
    y: &UndirectedClass,
    z: &UndirectedClass,
    s: &SurfacePresentation,
) -> Result<LinComb<UndirectedClass>> {
    BracketEngine::new(s).jacobi_sum(x, y, z)
}

pub fn poisson_bracket_sym(p: &SymPoly, q: &SymPoly, s: &SurfacePresentation) -> Result<SymPoly> {
    BracketEngine::new(s).poisson(p, q)
}
