//! Exact cyclic order on the ends of the free group and linked pairs of
//! positions in two cyclic words.
//!
//! The Cayley tree of the free group is embedded in the plane by using the
//! ribbon order at every vertex; its ends then carry a circular order. A
//! closed curve `x` lifts to bi-infinite periodic paths in the tree. Placing
//! position `i` of `x` and position `j` of `y` at the same vertex gives four
//! rays; the two lifts cross exactly when the ends of one separate the ends of
//! the other. Each crossing is counted once, at the vertex where the two
//! lifts first meet when travelling along `x`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::surface::SurfacePresentation;
use crate::words::{CyclicWord, Letter, UndirectedClass};

/// A one-sided infinite periodic reduced word: `period[start..]` repeated.
#[derive(Clone, Copy, Debug)]
pub struct Ray<'a> {
    period: &'a [Letter],
    start: usize,
}

impl<'a> Ray<'a> {
    /// The ray `period[start], period[start+1], ...` read cyclically. The
    /// period must be a nonempty cyclically reduced word.
    pub fn new(period: &'a [Letter], start: usize) -> Self {
        assert!(!period.is_empty(), "empty ray period");
        Self {
            period,
            start: start % period.len(),
        }
    }

    #[inline]
    pub fn letter(&self, k: usize) -> Letter {
        self.period[(self.start + k) % self.period.len()]
    }

    pub fn period_len(&self) -> usize {
        self.period.len()
    }

    /// First `k` letters as a string.
    pub fn prefix(&self, k: usize) -> String {
        (0..k).map(|i| self.letter(i).to_char()).collect()
    }
}

/// Two periodic rays are equal iff they agree on `|p1| + |p2|` letters.
pub fn ray_equal(r1: &Ray, r2: &Ray) -> bool {
    let bound = r1.period_len() + r2.period_len();
    (0..bound).all(|k| r1.letter(k) == r2.letter(k))
}

/// Ribbon order with constant-time position lookup.
#[derive(Clone, Debug)]
pub struct RibbonAtInfinity {
    n: usize,
    pos: Vec<usize>,
}

impl RibbonAtInfinity {
    pub fn new(s: &SurfacePresentation) -> Self {
        let n = s.generators();
        let mut pos = vec![0; 2 * n];
        for (i, l) in s.ribbon().iter().enumerate() {
            pos[l.code(n)] = i;
        }
        Self { n, pos }
    }

    /// Orientation of three distinct letters in the ribbon cycle: +1 when
    /// they occur in the order `l1, l2, l3`.
    #[inline]
    pub fn orient(&self, l1: Letter, l2: Letter, l3: Letter) -> i8 {
        let m = 2 * self.n;
        let p1 = self.pos[l1.code(self.n)];
        let d2 = (self.pos[l2.code(self.n)] + m - p1) % m;
        let d3 = (self.pos[l3.code(self.n)] + m - p1) % m;
        debug_assert!(d2 != 0 && d3 != 0 && d2 != d3);
        if d2 < d3 {
            1
        } else {
            -1
        }
    }
}

/// Circular order of three pairwise distinct ends, +1 for counterclockwise.
///
/// The rays are followed from the base vertex. A ray that splits off from the
/// other two is, seen from any deeper vertex, in the direction of the edge
/// back towards the base. At the vertex where the last two rays split, the
/// answer is the ribbon orientation of the three outgoing directions.
/// `cap` bounds the walk; exhausting it means two rays coincide.
pub fn cyclic_order3(
    r1: &Ray,
    r2: &Ray,
    r3: &Ray,
    rib: &RibbonAtInfinity,
    cap: usize,
) -> Result<i8> {
    let rays = [r1, r2, r3];
    // Index of the ray that has split off, if any.
    let mut behind: Option<usize> = None;
    let mut incoming: Option<Letter> = None;
    for k in 0..cap {
        let l = [r1.letter(k), r2.letter(k), r3.letter(k)];
        match behind {
            None => {
                if l[0] == l[1] && l[1] == l[2] {
                    incoming = Some(l[0].inv());
                    continue;
                }
                if l[0] != l[1] && l[1] != l[2] && l[0] != l[2] {
                    return Ok(rib.orient(l[0], l[1], l[2]));
                }
                let odd = if l[0] == l[1] {
                    2
                } else if l[0] == l[2] {
                    1
                } else {
                    0
                };
                behind = Some(odd);
                incoming = Some(l[(odd + 1) % 3].inv());
            }
            Some(b) => {
                let (p, q) = ((b + 1) % 3, (b + 2) % 3);
                let (lp, lq) = (rays[p].letter(k), rays[q].letter(k));
                if lp == lq {
                    incoming = Some(lp.inv());
                    continue;
                }
                let mut d = [lp; 3];
                d[p] = lp;
                d[q] = lq;
                d[b] = incoming.expect("split happened below this vertex");
                return Ok(rib.orient(d[0], d[1], d[2]));
            }
        }
    }
    Err(Error::CoincidentEndpoints)
}

/// A cyclic word together with its inverse, for reading rays.
#[derive(Clone, Debug)]
pub struct Strand {
    fwd: Vec<Letter>,
    bwd: Vec<Letter>,
}

impl Strand {
    pub fn new(letters: &[Letter]) -> Self {
        assert!(!letters.is_empty(), "strand of the empty word");
        Self {
            fwd: letters.to_vec(),
            bwd: crate::words::inverse_letters(letters),
        }
    }

    pub fn from_word(w: &CyclicWord) -> Self {
        Self::new(w.letters())
    }

    pub fn len(&self) -> usize {
        self.fwd.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fwd.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.fwd
    }

    /// `(backward, forward)` rays at position `i`, i.e. at the vertex between
    /// letters `i-1` and `i`. The backward ray starts with the inverse of
    /// letter `i-1`.
    pub fn rays_at(&self, i: usize) -> (Ray<'_>, Ray<'_>) {
        let n = self.fwd.len();
        let i = i % n;
        // bwd[k] is the inverse of fwd[n-1-k].
        (Ray::new(&self.bwd, (n - i) % n), Ray::new(&self.fwd, i))
    }
}

/// `(forward, backward)` rays of `x` at position `i`.
pub fn rays_at(x: &Strand, i: usize) -> Result<(Ray<'_>, Ray<'_>)> {
    if x.is_empty() {
        return Err(Error::TrivialClass);
    }
    let (b, f) = x.rays_at(i);
    Ok((f, b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Link {
    Unlinked,
    Linked(i8),
}

impl Link {
    pub fn sign(self) -> Option<i8> {
        match self {
            Link::Unlinked => None,
            Link::Linked(s) => Some(s),
        }
    }
}

/// One linked pair of positions with its intersection sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LinkedPair {
    pub i: usize,
    pub j: usize,
    pub sign: i8,
}

/// Comparison bound for rays drawn from `x` and `y`.
pub fn ray_cap(x: &Strand, y: &Strand) -> usize {
    2 * (x.len() + y.len()) + 2
}

/// Linking of position `i` of `x` with position `j` of `y`.
///
/// With `(A⁻, A⁺)` and `(B⁻, B⁺)` the backward/forward rays, the pair is
/// linked when `{B⁻, B⁺}` separates `A⁻` from `A⁺`, with sign +1 for the
/// circular order `(A⁻, B⁻, A⁺, B⁺)`. Only the first vertex of a shared
/// segment (along `x`) counts, so the backward ray of `x` must leave along an
/// edge not used by `y`. Lifts sharing an end are parallel, never crossing.
pub fn linked(x: &Strand, i: usize, y: &Strand, j: usize, rib: &RibbonAtInfinity) -> Result<Link> {
    let (am, ap) = x.rays_at(i);
    let (bm, bp) = y.rays_at(j);
    let first = am.letter(0);
    if first == bm.letter(0) || first == bp.letter(0) {
        return Ok(Link::Unlinked);
    }
    if ray_equal(&ap, &bp) || ray_equal(&ap, &bm) {
        return Ok(Link::Unlinked);
    }
    let cap = ray_cap(x, y);
    let o1 = cyclic_order3(&am, &bm, &ap, rib, cap)?;
    let o2 = cyclic_order3(&am, &bp, &ap, rib, cap)?;
    if o1 == o2 {
        Ok(Link::Unlinked)
    } else {
        Ok(Link::Linked(o1))
    }
}

/// All linked pairs of positions of `x` against `y`, ordered by `(i, j)`.
pub fn linked_pairs(x: &Strand, y: &Strand, rib: &RibbonAtInfinity) -> Result<Vec<LinkedPair>> {
    let mut out = Vec::new();
    for i in 0..x.len() {
        for j in 0..y.len() {
            if let Link::Linked(sign) = linked(x, i, y, j, rib)? {
                out.push(LinkedPair { i, j, sign });
            }
        }
    }
    Ok(out)
}

/// Number of linked pairs between two nontrivial cyclic words.
pub fn linked_count(x: &CyclicWord, y: &CyclicWord, s: &SurfacePresentation) -> Result<usize> {
    if x.is_trivial() || y.is_trivial() {
        return Ok(0);
    }
    let rib = RibbonAtInfinity::new(s);
    Ok(linked_pairs(&Strand::from_word(x), &Strand::from_word(y), &rib)?.len())
}

/// Self-intersection number of a primitive class.
pub fn self_intersection_comb(x: &UndirectedClass, s: &SurfacePresentation) -> Result<usize> {
    if x.is_trivial() {
        return Ok(0);
    }
    if !x.word().is_primitive() {
        return Err(Error::NotPrimitive(x.to_string()));
    }
    let n = linked_count(x.word(), x.word(), s)?;
    debug_assert!(n % 2 == 0, "self-linked pairs come in transposed pairs");
    Ok(n / 2)
}

/// Trivial and primitive self-disjoint classes are simple; proper powers are not.
pub fn is_simple(x: &UndirectedClass, s: &SurfacePresentation) -> Result<bool> {
    if x.is_trivial() {
        return Ok(true);
    }
    if !x.word().is_primitive() {
        return Ok(false);
    }
    Ok(self_intersection_comb(x, s)? == 0)
}

/// Geometric intersection number `i(x, y)`.
///
/// Distinct primitive roots: `m·n` times the linked-pair count of the roots.
/// Powers of one simple root are disjoint. Powers of one non-simple root are
/// not handled.
pub fn intersection_number_comb(
    x: &UndirectedClass,
    y: &UndirectedClass,
    s: &SurfacePresentation,
) -> Result<usize> {
    if x.is_trivial() || y.is_trivial() {
        return Ok(0);
    }
    let (rx, m) = x.primitive_root()?;
    let (ry, n) = y.primitive_root()?;
    if rx == ry {
        return if is_simple(&rx, s)? {
            Ok(0)
        } else {
            Err(Error::Unsupported(format!(
                "intersection of powers of the non-simple class {rx}"
            )))
        };
    }
    Ok(m * n * linked_count(rx.word(), ry.word(), s)?)
}

/// Whether `x` and `y` have disjoint representatives. Unlike
/// [`intersection_number_comb`] this is decided for every pair: lifts with
/// interleaved ends cannot be made disjoint.
pub fn disjoint(x: &UndirectedClass, y: &UndirectedClass, s: &SurfacePresentation) -> Result<bool> {
    Ok(linked_count(x.word(), y.word(), s)? == 0)
}

/// TSV dump of the linked pairs: `i, j, sign, x_i·y_j, x_i·ȳ_j`.
pub fn linked_pairs_tsv(x: &CyclicWord, y: &CyclicWord, s: &SurfacePresentation) -> Result<String> {
    let rib = RibbonAtInfinity::new(s);
    let (sx, sy) = (Strand::from_word(x), Strand::from_word(y));
    let mut out = String::from("i\tj\tsign\tproduct\tproduct_with_inverse\n");
    for p in linked_pairs(&sx, &sy, &rib)? {
        let xi = x.rotation(p.i);
        let yj = y.rotation(p.j);
        let prod = CyclicWord::from_letters(xi.iter().chain(yj.iter()).copied());
        let yinv = crate::words::inverse_letters(&yj);
        let prod_inv = CyclicWord::from_letters(xi.iter().chain(yinv.iter()).copied());
        writeln!(out, "{}\t{}\t{:+}\t{}\t{}", p.i, p.j, p.sign, prod, prod_inv).unwrap();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_letters;

    fn u(s: &str) -> UndirectedClass {
        s.parse().unwrap()
    }

    fn l(s: &str) -> Vec<Letter> {
        parse_letters(s).unwrap()
    }

    #[test]
    fn ray_equality() {
        let a = l("a");
        assert!(ray_equal(&Ray::new(&a, 0), &Ray::new(&a, 0)));
        let ab = l("ab");
        assert!(!ray_equal(&Ray::new(&ab, 0), &Ray::new(&ab, 1)));
        let abab = l("abab");
        assert!(ray_equal(&Ray::new(&abab, 0), &Ray::new(&ab, 0)));
        assert_eq!(Ray::new(&abab, 0).prefix(6), Ray::new(&ab, 0).prefix(6));
    }

    #[test]
    fn rays_at_examples() {
        let x = Strand::new(&l("ab"));
        let (bw, fw) = x.rays_at(0);
        assert_eq!(fw.prefix(4), "abab");
        assert_eq!(bw.prefix(4), "BABA");
        let x = Strand::new(&l("a"));
        let (bw, fw) = x.rays_at(0);
        assert_eq!((fw.prefix(2), bw.prefix(2)), ("aa".into(), "AA".into()));
        let x = Strand::new(&l("aab"));
        let (bw, fw) = x.rays_at(2);
        assert_eq!(fw.prefix(6), "baabaa");
        assert_eq!(bw.prefix(6), "AABAAB");
    }

    #[test]
    fn order_at_base_vertex() {
        let rib = RibbonAtInfinity::new(&SurfacePresentation::punctured_torus());
        let (a, b, aa) = (l("a"), l("b"), l("A"));
        let (ra, rb, rai) = (Ray::new(&a, 0), Ray::new(&b, 0), Ray::new(&aa, 0));
        assert_eq!(cyclic_order3(&ra, &rb, &rai, &rib, 10).unwrap(), 1);
        assert_eq!(cyclic_order3(&rb, &ra, &rai, &rib, 10).unwrap(), -1);
    }

    #[test]
    fn order_with_late_split() {
        // (ab)^∞ and (aB)^∞ split one level down; b^∞ leaves at the base.
        let rib = RibbonAtInfinity::new(&SurfacePresentation::pants());
        let (ab, ab2, b) = (l("ab"), l("aB"), l("b"));
        let r1 = Ray::new(&ab, 0);
        let r2 = Ray::new(&ab2, 0);
        let r3 = Ray::new(&b, 0);
        // At depth 1 the directions are b, B and the edge back (A).
        // Ribbon (a, A, b, B): A, b, B occur in that order, so (b, B, A) is +1.
        assert_eq!(cyclic_order3(&r1, &r2, &r3, &rib, 20).unwrap(), 1);
    }

    #[test]
    fn coincident_rays_error() {
        let rib = RibbonAtInfinity::new(&SurfacePresentation::pants());
        let a = l("a");
        let b = l("b");
        let r = Ray::new(&a, 0);
        assert!(matches!(
            cyclic_order3(&r, &r, &Ray::new(&b, 0), &rib, 10),
            Err(Error::CoincidentEndpoints)
        ));
    }

    #[test]
    fn pants_examples() {
        let p = SurfacePresentation::pants();
        assert_eq!(linked_count(u("aab").word(), u("aB").word(), &p).unwrap(), 2);
        assert_eq!(linked_count(u("a").word(), u("b").word(), &p).unwrap(), 0);
        assert_eq!(intersection_number_comb(&u("aab"), &u("aB"), &p).unwrap(), 2);
        assert_eq!(intersection_number_comb(&u("a"), &u("b"), &p).unwrap(), 0);
        assert_eq!(self_intersection_comb(&u("aab"), &p).unwrap(), 1);
        assert!(is_simple(&u("a"), &p).unwrap());
        assert!(!is_simple(&u("aab"), &p).unwrap());
    }

    #[test]
    fn torus_examples() {
        let t = SurfacePresentation::punctured_torus();
        assert_eq!(linked_count(u("abAb").word(), u("aB").word(), &t).unwrap(), 2);
        assert_eq!(intersection_number_comb(&u("a"), &u("b"), &t).unwrap(), 1);
        assert_eq!(intersection_number_comb(&u("aa"), &u("bbb"), &t).unwrap(), 6);
        assert!(is_simple(&u("aB"), &t).unwrap());
        assert!(is_simple(&u("abAB"), &t).unwrap());
        assert!(!is_simple(&u("aa"), &t).unwrap());
    }

    #[test]
    fn powers_of_a_common_root() {
        let t = SurfacePresentation::punctured_torus();
        assert_eq!(intersection_number_comb(&u("a"), &u("aaa"), &t).unwrap(), 0);
        let p = SurfacePresentation::pants();
        assert!(matches!(
            intersection_number_comb(&u("aab"), &u("aabaab"), &p),
            Err(Error::Unsupported(_))
        ));
        assert!(!disjoint(&u("aab"), &u("aabaab"), &p).unwrap());
        assert!(disjoint(&u("a"), &u("aa"), &p).unwrap());
    }

    #[test]
    fn transposed_pairs_flip_sign() {
        for s in [SurfacePresentation::pants(), SurfacePresentation::punctured_torus()] {
            let rib = RibbonAtInfinity::new(&s);
            let classes = crate::words::enumerate_undirected(2, 5);
            for x in classes.iter().filter(|c| !c.is_trivial()) {
                for y in classes.iter().filter(|c| !c.is_trivial()) {
                    let (sx, sy) = (Strand::from_word(x.word()), Strand::from_word(y.word()));
                    for i in 0..sx.len() {
                        for j in 0..sy.len() {
                            let (am, ap) = sx.rays_at(i);
                            let (bm, bp) = sy.rays_at(j);
                            let mut firsts = [am.letter(0), ap.letter(0), bm.letter(0), bp.letter(0)];
                            firsts.sort();
                            if firsts.windows(2).any(|w| w[0] == w[1]) {
                                // Shared segment: the transposed call counts
                                // the crossing at the other end.
                                continue;
                            }
                            let a = linked(&sx, i, &sy, j, &rib).unwrap().sign();
                            let b = linked(&sy, j, &sx, i, &rib).unwrap().sign();
                            assert_eq!(a, b.map(|s| -s), "{x}@{i} {y}@{j}");
                        }
                    }
                    let xy = linked_pairs(&sx, &sy, &rib).unwrap();
                    let yx = linked_pairs(&sy, &sx, &rib).unwrap();
                    assert_eq!(xy.len(), yx.len(), "{x} {y}");
                    let sum_xy: i64 = xy.iter().map(|p| p.sign as i64).sum();
                    let sum_yx: i64 = yx.iter().map(|p| p.sign as i64).sum();
                    assert_eq!(sum_xy, -sum_yx, "{x} {y}");
                }
            }
        }
    }

    #[test]
    fn tsv_dump() {
        let p = SurfacePresentation::pants();
        let tsv = linked_pairs_tsv(u("aab").word(), u("aB").word(), &p).unwrap();
        assert_eq!(tsv.lines().count(), 3);
    }
}
