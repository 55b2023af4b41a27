//! Sparse integer linear combinations of curve classes and polynomials in
//! the symmetric algebra on undirected classes.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::words::UndirectedClass;

/// Integer linear combination of classes. Zero coefficients are never
/// stored; iteration follows the class order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, i64>,
}

/// One serialized term: `{word, coeff}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub word: String,
    pub coeff: i64,
}

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(k: K) -> Self {
        let mut out = Self::zero();
        out.add_term(k, 1);
        out
    }

    pub fn add_term(&mut self, k: K, c: i64) {
        if c == 0 {
            return;
        }
        match self.terms.entry(k) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: i64) {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: &K) -> i64 {
        self.terms.get(k).copied().unwrap_or(0)
    }

    /// Number of distinct classes with nonzero coefficient.
    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    /// Sum of absolute coefficients: the number of terms counted with
    /// multiplicity.
    pub fn multiplicity(&self) -> u64 {
        self.terms.values().map(|v| v.unsigned_abs()).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, i64)> {
        self.terms.iter().map(|(k, v)| (k, *v))
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    /// Apply `f` to every class and re-accumulate.
    pub fn map_classes<L: Ord + Clone>(&self, f: impl Fn(&K) -> L) -> LinComb<L> {
        let mut out = LinComb::zero();
        for (k, v) in &self.terms {
            out.add_term(f(k), *v);
        }
        out
    }
}

impl<K: Ord + Clone + fmt::Display> LinComb<K> {
    pub fn to_terms(&self) -> Vec<TermJson> {
        self.terms
            .iter()
            .map(|(k, v)| TermJson {
                word: k.to_string(),
                coeff: *v,
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_terms()).expect("plain data serializes")
    }
}

impl<K: Ord + Clone + std::str::FromStr> LinComb<K> {
    pub fn from_terms(terms: &[TermJson]) -> Result<Self, K::Err> {
        let mut out = Self::zero();
        for t in terms {
            out.add_term(t.word.parse()?, t.coeff);
        }
        Ok(out)
    }
}

impl<K: Ord + Clone> FromIterator<(K, i64)> for LinComb<K> {
    fn from_iter<I: IntoIterator<Item = (K, i64)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

impl<K: Ord + Clone> Add for &LinComb<K> {
    type Output = LinComb<K>;

    fn add(self, rhs: Self) -> LinComb<K> {
        let mut out = self.clone();
        out.add_scaled(rhs, 1);
        out
    }
}

impl<K: Ord + Clone> Sub for &LinComb<K> {
    type Output = LinComb<K>;

    fn sub(self, rhs: Self) -> LinComb<K> {
        let mut out = self.clone();
        out.add_scaled(rhs, -1);
        out
    }
}

impl<K: Ord + Clone> Neg for &LinComb<K> {
    type Output = LinComb<K>;

    fn neg(self) -> LinComb<K> {
        self.scale(-1)
    }
}

/// `+⟨baaBa⟩ −⟨Baaba⟩`, or `0`.
impl<K: Ord + fmt::Display> fmt::Display for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (k, v)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " ")?;
            }
            let sign = if *v < 0 { '−' } else { '+' };
            let abs = v.unsigned_abs();
            if abs == 1 {
                write!(f, "{sign}⟨{k}⟩")?;
            } else {
                write!(f, "{sign}{abs}⟨{k}⟩")?;
            }
        }
        Ok(())
    }
}

/// A monomial in the symmetric algebra: a sorted multiset of nontrivial
/// classes. The empty monomial is the unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<UndirectedClass>);

impl Monomial {
    pub fn unit() -> Self {
        Self(Vec::new())
    }

    pub fn new(mut factors: Vec<UndirectedClass>) -> Self {
        factors.sort();
        Self(factors)
    }

    pub fn factors(&self) -> &[UndirectedClass] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Sum of word lengths of the factors.
    pub fn word_length(&self) -> usize {
        self.0.iter().map(|c| c.len()).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Monomial::new(v)
    }

    /// The monomial with factor `i` removed.
    pub fn without(&self, i: usize) -> Monomial {
        let mut v = self.0.clone();
        v.remove(i);
        Monomial(v)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "·")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Element of the symmetric algebra with integer coefficients.
pub type SymPoly = LinComb<Monomial>;

impl SymPoly {
    pub fn monomial(factors: Vec<UndirectedClass>) -> Self {
        Self::single(Monomial::new(factors))
    }

    /// Embed a linear combination of classes as degree-one polynomials.
    pub fn from_linear(l: &LinComb<UndirectedClass>) -> Self {
        l.map_classes(|c| Monomial::new(vec![c.clone()]))
    }

    pub fn mul(&self, other: &SymPoly) -> SymPoly {
        let mut out = SymPoly::zero();
        for (m1, c1) in self.iter() {
            for (m2, c2) in other.iter() {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(s: &str) -> UndirectedClass {
        s.parse().unwrap()
    }

    #[test]
    fn zero_coefficients_vanish() {
        let mut l = LinComb::zero();
        l.add_term(u("ab"), 2);
        l.add_term(u("a"), 1);
        l.add_term(u("ab"), -2);
        assert_eq!(l.support_len(), 1);
        assert_eq!(l.coeff(&u("ab")), 0);
        assert_eq!(l.to_string(), "+⟨a⟩");
    }

    #[test]
    fn display_and_json() {
        let l: LinComb<UndirectedClass> = [(u("baaBa"), 1), (u("Baaba"), -1)].into_iter().collect();
        assert_eq!(l.to_string(), "−⟨aabaB⟩ +⟨aaBab⟩");
        let json = l.to_json();
        let back: Vec<TermJson> = serde_json::from_str(&json).unwrap();
        assert_eq!(LinComb::<UndirectedClass>::from_terms(&back).unwrap(), l);
        assert_eq!(LinComb::<UndirectedClass>::zero().to_string(), "0");
        assert_eq!(l.multiplicity(), 2);
    }

    #[test]
    fn monomials_sorted() {
        let m = Monomial::new(vec![u("ab"), u("a"), u("b")]);
        assert_eq!(m.to_string(), "a·b·ab");
        assert_eq!(m.word_length(), 4);
        let p = SymPoly::monomial(vec![u("a")]).mul(&SymPoly::monomial(vec![u("a")]));
        assert_eq!(p.to_string(), "+⟨a·a⟩");
    }
}
