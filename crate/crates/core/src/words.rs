//! Free-group words, cyclic words and canonical names for free homotopy
//! classes of closed curves.
//!
//! Letters are written with the usual convention: lowercase `a, b, c, ...`
//! are generators and uppercase `A, B, C, ...` their inverses. The fixed total
//! order on letters puts every generator before every inverse, so
//! `a < b < c < d < A < B < C < D`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest generator count the letter alphabet supports.
pub const MAX_GENERATORS: usize = 26;

/// A generator or the inverse of a generator.
///
/// The derived order compares `inverse` first, which is exactly the letter
/// order used for canonical rotations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    inverse: bool,
    gen: u8,
}

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        assert!(gen < MAX_GENERATORS, "generator index {gen} out of range");
        Self {
            inverse,
            gen: gen as u8,
        }
    }

    pub fn gen(self) -> usize {
        self.gen as usize
    }

    pub fn is_inverse(self) -> bool {
        self.inverse
    }

    /// +1 for a generator, -1 for an inverse.
    pub fn sign(self) -> i8 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inv(self) -> Self {
        Self {
            inverse: !self.inverse,
            gen: self.gen,
        }
    }

    /// Dense index in `0..2n`: generators first, then inverses.
    pub fn code(self, n: usize) -> usize {
        self.gen() + if self.inverse { n } else { 0 }
    }

    pub fn from_code(code: usize, n: usize) -> Self {
        if code < n {
            Self::new(code, false)
        } else {
            Self::new(code - n, true)
        }
    }

    pub fn to_char(self) -> char {
        let base = if self.inverse { b'A' } else { b'a' };
        (base + self.gen) as char
    }

    pub fn from_char(c: char) -> Result<Self> {
        match c {
            'a'..='z' => Ok(Self::new(c as usize - 'a' as usize, false)),
            'A'..='Z' => Ok(Self::new(c as usize - 'A' as usize, true)),
            _ => Err(Error::Parse(format!("invalid letter {c:?}"))),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

fn write_letters(f: &mut fmt::Formatter<'_>, letters: &[Letter]) -> fmt::Result {
    for l in letters {
        write!(f, "{}", l.to_char())?;
    }
    Ok(())
}

/// Parse a raw letter string without reducing it.
pub fn parse_letters(s: &str) -> Result<Vec<Letter>> {
    s.trim().chars().map(Letter::from_char).collect()
}

/// Inverse of a letter sequence: reversed, each letter inverted.
pub fn inverse_letters(letters: &[Letter]) -> Vec<Letter> {
    letters.iter().rev().map(|l| l.inv()).collect()
}

/// Rotation starting at position `i`.
pub fn rotate(letters: &[Letter], i: usize) -> Vec<Letter> {
    if letters.is_empty() {
        return Vec::new();
    }
    let i = i % letters.len();
    let mut out = Vec::with_capacity(letters.len());
    out.extend_from_slice(&letters[i..]);
    out.extend_from_slice(&letters[..i]);
    out
}

/// A freely reduced word.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Self(Vec::new())
    }

    /// Free reduction of an arbitrary letter sequence.
    pub fn reduce(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut stack: Vec<Letter> = Vec::new();
        for l in letters {
            if stack.last() == Some(&l.inv()) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        Self(stack)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self(inverse_letters(&self.0))
    }

    /// Reduced product `self · other`.
    pub fn mul(&self, other: &Word) -> Word {
        Word::reduce(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn max_gen(&self) -> Option<usize> {
        self.0.iter().map(|l| l.gen()).max()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, &self.0)
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(Word::reduce(parse_letters(s)?))
    }
}

/// A cyclically reduced word, stored in its minimal rotation.
///
/// Ordered length-first, then lexicographically under the letter order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct CyclicWord(Vec<Letter>);

impl Ord for CyclicWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for CyclicWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Strip matching first/last letters of a freely reduced word.
fn cyclically_reduce(letters: &[Letter]) -> &[Letter] {
    let mut lo = 0;
    let mut hi = letters.len();
    while hi - lo >= 2 && letters[lo] == letters[hi - 1].inv() {
        lo += 1;
        hi -= 1;
    }
    &letters[lo..hi]
}

fn min_rotation(letters: &[Letter]) -> Vec<Letter> {
    let n = letters.len();
    if n == 0 {
        return Vec::new();
    }
    let best = (0..n)
        .min_by(|&i, &j| {
            (0..n)
                .map(|k| letters[(i + k) % n].cmp(&letters[(j + k) % n]))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
        .unwrap();
    rotate(letters, best)
}

impl CyclicWord {
    pub fn trivial() -> Self {
        Self(Vec::new())
    }

    /// Cyclic reduction followed by the minimal rotation.
    pub fn canonical(w: &Word) -> Self {
        Self(min_rotation(cyclically_reduce(w.letters())))
    }

    /// Canonical form of an arbitrary (possibly unreduced) letter sequence.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        Self::canonical(&Word::reduce(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_empty()
    }

    /// Canonical form of the inverse class.
    pub fn invert(&self) -> Self {
        Self(min_rotation(&inverse_letters(&self.0)))
    }

    /// `self^m` as a cyclic word; `m = 0` gives the trivial class.
    pub fn power(&self, m: usize) -> Self {
        let mut out = Vec::with_capacity(self.0.len() * m);
        for _ in 0..m {
            out.extend_from_slice(&self.0);
        }
        // A power of a minimal rotation is still minimal among its rotations.
        Self(out)
    }

    /// Shortest `r` and `m >= 1` with `self = r^m`.
    pub fn primitive_root(&self) -> Result<(CyclicWord, usize)> {
        let n = self.0.len();
        if n == 0 {
            return Err(Error::TrivialClass);
        }
        for p in 1..=n {
            if n.is_multiple_of(p) && (p..n).all(|k| self.0[k] == self.0[k - p]) {
                return Ok((Self(self.0[..p].to_vec()), n / p));
            }
        }
        unreachable!()
    }

    pub fn is_primitive(&self) -> bool {
        matches!(self.primitive_root(), Ok((_, 1)))
    }

    /// The word read from position `i`.
    pub fn rotation(&self, i: usize) -> Vec<Letter> {
        rotate(&self.0, i)
    }

    pub fn as_word(&self) -> Word {
        Word(self.0.clone())
    }

    pub fn max_gen(&self) -> Option<usize> {
        self.0.iter().map(|l| l.gen()).max()
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, &self.0)
    }
}

impl FromStr for CyclicWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(CyclicWord::from_letters(parse_letters(s)?))
    }
}

/// Free homotopy class of a directed closed curve (a conjugacy class).
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DirectedClass(CyclicWord);

/// Free homotopy class of an undirected closed curve: a conjugacy class up
/// to inversion. The representative is the smaller of the two canonical
/// cyclic words.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UndirectedClass(CyclicWord);

impl DirectedClass {
    pub fn new(w: CyclicWord) -> Self {
        Self(w)
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        Self(CyclicWord::from_letters(letters))
    }

    pub fn word(&self) -> &CyclicWord {
        &self.0
    }

    /// The class with the opposite direction.
    pub fn reverse(&self) -> Self {
        Self(self.0.invert())
    }

    /// Forget the direction.
    pub fn undirected(&self) -> UndirectedClass {
        UndirectedClass::new(self.0.clone())
    }
}

impl UndirectedClass {
    pub fn new(w: CyclicWord) -> Self {
        let inv = w.invert();
        Self(w.min(inv))
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        Self::new(CyclicWord::from_letters(letters))
    }

    pub fn trivial() -> Self {
        Self(CyclicWord::trivial())
    }

    pub fn word(&self) -> &CyclicWord {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_trivial()
    }

    /// A directed lift (the representative word read as directed).
    pub fn lift(&self) -> DirectedClass {
        DirectedClass(self.0.clone())
    }

    pub fn power(&self, m: usize) -> Self {
        Self::new(self.0.power(m))
    }

    /// Primitive root as an undirected class, and the exponent.
    pub fn primitive_root(&self) -> Result<(UndirectedClass, usize)> {
        let (r, m) = self.0.primitive_root()?;
        Ok((Self::new(r), m))
    }
}

impl fmt::Display for DirectedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Display for UndirectedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for DirectedClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(Self(s.parse()?))
    }
}

impl FromStr for UndirectedClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(Self::new(s.parse()?))
    }
}

/// Canonical cyclic form of `w`.
pub fn canonical_cyclic(w: &Word) -> CyclicWord {
    CyclicWord::canonical(w)
}

/// Canonical undirected form of `w`.
pub fn undirected_canonical(w: &Word) -> UndirectedClass {
    UndirectedClass::new(CyclicWord::canonical(w))
}

/// Calls `f` on every cyclically reduced word of exactly `len` letters over
/// `n` generators.
pub fn for_each_cyclically_reduced(n: usize, len: usize, mut f: impl FnMut(&[Letter])) {
    if len == 0 {
        f(&[]);
        return;
    }
    let alphabet: Vec<Letter> = (0..2 * n).map(|c| Letter::from_code(c, n)).collect();
    let mut buf: Vec<Letter> = Vec::with_capacity(len);
    fn rec(
        alphabet: &[Letter],
        len: usize,
        buf: &mut Vec<Letter>,
        f: &mut dyn FnMut(&[Letter]),
    ) {
        if buf.len() == len {
            if buf[0] != buf[len - 1].inv() {
                f(buf);
            }
            return;
        }
        for &l in alphabet {
            if buf.last().is_some_and(|&p| p == l.inv()) {
                continue;
            }
            buf.push(l);
            rec(alphabet, len, buf, f);
            buf.pop();
        }
    }
    rec(&alphabet, len, &mut buf, &mut f);
}

/// All directed classes of length at most `max_len` over `n` generators, in
/// class order.
pub fn enumerate_directed(n: usize, max_len: usize) -> Vec<DirectedClass> {
    let mut set = BTreeSet::new();
    for len in 0..=max_len {
        for_each_cyclically_reduced(n, len, |w| {
            set.insert(DirectedClass::new(CyclicWord(min_rotation(w))));
        });
    }
    set.into_iter().collect()
}

/// All undirected classes of length at most `max_len` over `n` generators, in
/// class order.
pub fn enumerate_undirected(n: usize, max_len: usize) -> Vec<UndirectedClass> {
    let mut set = BTreeSet::new();
    for len in 0..=max_len {
        for_each_cyclically_reduced(n, len, |w| {
            set.insert(UndirectedClass::new(CyclicWord(min_rotation(w))));
        });
    }
    set.into_iter().collect()
}
