//! Sign matrices of (±1)-skew polynomial algebras and their triple invariants.
//!
//! A (±1)-skew polynomial algebra in `n` variables is fixed by a symmetric
//! table of signs `ε_ij` (the relation is `x_i x_j = ε_ij x_j x_i`). Everything
//! downstream (the point scheme and the algebra `C(A)`) only depends on which
//! 3-subsets `{i,j,k}` have `ε_ij ε_jk ε_ki = −1`. That set of "bad" triples is
//! a two-graph, and this module converts between the two descriptions and
//! handles relabelling by permutations of the variables.
//!
//! All indices are 1-based. Triples are ordered colexicographically by their
//! sorted elements; bit `r` of a [`TripleSet`] is the triple of colex rank `r`.

use std::cmp::Ordering;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};

/// Largest `n` accepted by [`canonical_form`] (it scans all of `S_n`).
pub const MAX_CANONICAL_N: usize = 8;

/// Colex rank of the 0-based pair `a < b`.
fn pair_rank(a: usize, b: usize) -> usize {
    debug_assert!(a < b);
    b * (b - 1) / 2 + a
}

/// Colex rank of the 0-based triple `a < b < c`.
fn triple_rank(a: usize, b: usize, c: usize) -> usize {
    debug_assert!(a < b && b < c);
    a + b * (b - 1) / 2 + c * (c - 1) * (c - 2) / 6
}

pub(crate) fn binom2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

pub(crate) fn binom3(n: usize) -> usize {
    n * n.saturating_sub(1) * n.saturating_sub(2) / 6
}

fn check_index(index: usize, n: usize) -> Result<()> {
    if index == 0 || index > n {
        Err(Error::IndexOutOfRange { index, n })
    } else {
        Ok(())
    }
}

/// Symmetric ±1 coefficient table `ε` of a skew polynomial algebra.
///
/// Only off-diagonal pairs are stored; the diagonal is implicitly `+1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignMatrix {
    n: usize,
    negative: Vec<bool>,
}

impl SignMatrix {
    /// The commutative polynomial ring: every `ε_ij = +1`.
    pub fn all_positive(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyAlgebra);
        }
        Ok(Self {
            n,
            negative: vec![false; binom2(n)],
        })
    }

    /// Builds `ε` from the list of pairs with `ε_ij = −1`. Pairs may be given
    /// in either order; repeats are harmless.
    pub fn from_neg_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut s = Self::all_positive(n)?;
        for (i, j) in pairs {
            s.set(i, j, -1)?;
        }
        Ok(s)
    }

    /// Decodes the `C(n,2)`-bit mask whose bit `r` is set iff the pair of colex
    /// rank `r` is negative.
    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        let mut s = Self::all_positive(n)?;
        for (r, neg) in s.negative.iter_mut().enumerate() {
            *neg = (mask >> r) & 1 == 1;
        }
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `ε_ij` as `+1` or `−1`.
    pub fn sign(&self, i: usize, j: usize) -> i8 {
        assert!(i >= 1 && i <= self.n && j >= 1 && j <= self.n, "index out of range");
        if i == j {
            return 1;
        }
        let (a, b) = if i < j { (i - 1, j - 1) } else { (j - 1, i - 1) };
        if self.negative[pair_rank(a, b)] {
            -1
        } else {
            1
        }
    }

    pub fn set(&mut self, i: usize, j: usize, sign: i8) -> Result<()> {
        check_index(i, self.n)?;
        check_index(j, self.n)?;
        if i == j {
            return Err(Error::DiagonalPair(i));
        }
        let (a, b) = if i < j { (i - 1, j - 1) } else { (j - 1, i - 1) };
        self.negative[pair_rank(a, b)] = sign < 0;
        Ok(())
    }

    /// Pairs `(i, j)`, `i < j`, with `ε_ij = −1`, in lexicographic order.
    pub fn neg_pairs(&self) -> Vec<(usize, usize)> {
        (1..=self.n)
            .tuple_combinations()
            .filter(|&(i, j)| self.sign(i, j) < 0)
            .collect()
    }

    pub fn triple_product(&self, i: usize, j: usize, k: usize) -> i8 {
        self.sign(i, j) * self.sign(j, k) * self.sign(k, i)
    }

    /// The sign matrix of the relabelled algebra: `ε'_{p(i) p(j)} = ε_ij`.
    pub fn permuted(&self, p: &Permutation) -> Result<Self> {
        if p.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: p.n(),
            });
        }
        let mut out = Self::all_positive(self.n)?;
        for (i, j) in (1..=self.n).tuple_combinations() {
            out.set(p.apply(i), p.apply(j), self.sign(i, j))?;
        }
        Ok(out)
    }
}

impl fmt::Debug for SignMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignMatrix(n={}, neg={:?})", self.n, self.neg_pairs())
    }
}

/// A 3-subset `{a, b, c}` of `{1..n}`, stored sorted.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple([usize; 3]);

impl Triple {
    pub fn new(a: usize, b: usize, c: usize) -> Result<Self> {
        let mut t = [a, b, c];
        t.sort_unstable();
        if t[0] == t[1] || t[1] == t[2] {
            return Err(Error::DegenerateTriple([a, b, c]));
        }
        Ok(Self(t))
    }

    pub fn elements(&self) -> [usize; 3] {
        self.0
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(&i)
    }

    /// Bitmask over 0-based vertices.
    pub fn mask(&self) -> u32 {
        self.0.iter().fold(0, |m, &i| m | 1 << (i - 1))
    }

    fn rank(&self) -> usize {
        triple_rank(self.0[0] - 1, self.0[1] - 1, self.0[2] - 1)
    }
}

impl fmt::Debug for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{},{}}}", self.0[0], self.0[1], self.0[2])
    }
}

/// A set of 3-subsets of `{1..n}` as a bitset in colex order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TripleSet {
    n: usize,
    words: Vec<u64>,
}

impl TripleSet {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            words: vec![0; binom3(n).div_ceil(64)],
        }
    }

    /// Every 3-subset of `{1..n}`.
    pub fn full(n: usize) -> Self {
        let mut t = Self::empty(n);
        for r in 0..binom3(n) {
            t.words[r / 64] |= 1 << (r % 64);
        }
        t
    }

    pub fn from_triples(n: usize, triples: impl IntoIterator<Item = [usize; 3]>) -> Result<Self> {
        let mut t = Self::empty(n);
        for [a, b, c] in triples {
            let tr = Triple::new(a, b, c)?;
            for i in tr.elements() {
                check_index(i, n)?;
            }
            t.insert(tr);
        }
        Ok(t)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, t: Triple) {
        let r = t.rank();
        self.words[r / 64] |= 1 << (r % 64);
    }

    pub fn contains(&self, t: &Triple) -> bool {
        let r = t.rank();
        r < binom3(self.n) && (self.words[r / 64] >> (r % 64)) & 1 == 1
    }

    pub fn contains_elems(&self, a: usize, b: usize, c: usize) -> bool {
        Triple::new(a, b, c).is_ok_and(|t| self.contains(&t))
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Members in colex order.
    pub fn iter(&self) -> impl Iterator<Item = Triple> + '_ {
        all_triples(self.n).filter(move |t| self.contains(t))
    }

    /// Colex ranks of the members, ascending. This is the encoding that
    /// [`canonical_form`] minimizes.
    pub fn ranks(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        for (w, &word) in self.words.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                out.push(w * 64 + b);
                bits &= bits - 1;
            }
        }
        out
    }

    /// The first 4-subset (lexicographic) holding an odd number of members, if any.
    pub fn parity_violation(&self) -> Option<[usize; 4]> {
        (1..=self.n).tuple_combinations().find_map(|(a, b, c, d)| {
            let count = [[a, b, c], [a, b, d], [a, c, d], [b, c, d]]
                .iter()
                .filter(|&&[x, y, z]| self.contains_elems(x, y, z))
                .count();
            (count % 2 == 1).then_some([a, b, c, d])
        })
    }

    pub fn is_two_graph(&self) -> bool {
        self.parity_violation().is_none()
    }

    /// Number of members containing each vertex, indexed by `vertex - 1`.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for t in self.iter() {
            for i in t.elements() {
                deg[i - 1] += 1;
            }
        }
        deg
    }

    /// Cheap permutation invariants used to bucket triple sets before the
    /// factorial canonicalization: member count and sorted degree sequence.
    pub fn orbit_invariants(&self) -> (usize, usize, Vec<usize>) {
        let mut deg = self.degrees();
        deg.sort_unstable();
        (self.n, self.len(), deg)
    }

    /// Gauge-fixed encoding: bit `r` is set iff `{i, j, n}` is a member, where
    /// `(i, j)` is the pair of colex rank `r` in `{1..n−1}`. For two-graphs this
    /// determines the set completely.
    pub fn gauge_mask(&self) -> u64 {
        assert!(self.n <= 12, "gauge mask supports n <= 12");
        let n = self.n;
        let mut mask = 0u64;
        for (i, j) in (1..n).tuple_combinations() {
            if self.contains_elems(i, j, n) {
                mask |= 1 << pair_rank(i - 1, j - 1);
            }
        }
        mask
    }

    /// Inverse of [`TripleSet::gauge_mask`]: the unique two-graph whose triples
    /// through `n` are given by `mask`.
    pub fn from_gauge_mask(n: usize, mask: u64) -> Self {
        assert!((1..=12).contains(&n), "gauge mask supports 1 <= n <= 12");
        let bit = |i: usize, j: usize| (mask >> pair_rank(i - 1, j - 1)) & 1 == 1;
        let mut t = Self::empty(n);
        for (i, j, k) in (1..=n).tuple_combinations() {
            let bad = if k == n {
                bit(i, j)
            } else {
                bit(i, j) ^ bit(j, k) ^ bit(i, k)
            };
            if bad {
                t.insert(Triple([i, j, k]));
            }
        }
        t
    }
}

impl Ord for TripleSet {
    /// Orders by `n`, then lexicographically by the ascending colex rank list.
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| self.ranks().cmp(&other.ranks()))
    }
}

impl PartialOrd for TripleSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for TripleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TripleSet(n={}, ", self.n)?;
        f.debug_set().entries(self.iter()).finish()?;
        write!(f, ")")
    }
}

/// All 3-subsets of `{1..n}` in colex order.
pub fn all_triples(n: usize) -> impl Iterator<Item = Triple> {
    (3..=n).flat_map(|c| (2..c).flat_map(move |b| (1..b).map(move |a| Triple([a, b, c]))))
}

/// A bijection of `{1..n}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// `images[i - 1]` is the image of `i`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::NotAPermutation(n));
            }
            seen[x - 1] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (1..=n).collect(),
        }
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        check_index(a, n)?;
        check_index(b, n)?;
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(a - 1, b - 1);
        Ok(Self { images })
    }

    /// The cycle `1 → 2 → … → n → 1`.
    pub fn rotation(n: usize) -> Self {
        Self {
            images: (1..=n).map(|i| i % n + 1).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.n()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        Self { images: inv }
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.n(), other.n());
        Self {
            images: other.images.iter().map(|&i| self.apply(i)).collect(),
        }
    }

    /// Every element of `S_n`, in lexicographic order of image vectors.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        (1..=n).permutations(n).map(|images| Permutation { images })
    }
}

/// The set of triples `{i,j,k}` with `ε_ij ε_jk ε_ki = −1`.
pub fn bad_triples(s: &SignMatrix) -> TripleSet {
    let mut t = TripleSet::empty(s.n());
    for tr in all_triples(s.n()) {
        let [i, j, k] = tr.elements();
        if s.triple_product(i, j, k) < 0 {
            t.insert(tr);
        }
    }
    t
}

/// A sign matrix with the given bad triples, in the gauge `ε_in = +1`.
pub fn realize_sign_matrix(t: &TripleSet) -> Result<SignMatrix> {
    if let Some(quad) = t.parity_violation() {
        return Err(Error::ParityViolation(quad));
    }
    let n = t.n();
    let mut s = SignMatrix::all_positive(n)?;
    for (i, j) in (1..n).tuple_combinations() {
        if t.contains_elems(i, j, n) {
            s.set(i, j, -1)?;
        }
    }
    Ok(s)
}

/// Image `{p(T) : T ∈ t}`.
pub fn apply_permutation(t: &TripleSet, p: &Permutation) -> Result<TripleSet> {
    if p.n() != t.n() {
        return Err(Error::DimensionMismatch {
            expected: t.n(),
            found: p.n(),
        });
    }
    let mut out = TripleSet::empty(t.n());
    for tr in t.iter() {
        let [a, b, c] = tr.elements();
        out.insert(Triple::new(p.apply(a), p.apply(b), p.apply(c))?);
    }
    Ok(out)
}

/// Orbit representative under `S_n`: the image whose ascending colex rank list
/// is lexicographically least.
pub fn canonical_form(t: &TripleSet) -> Result<TripleSet> {
    canonical_form_with_witness(t).map(|(c, _)| c)
}

/// Like [`canonical_form`], also returning a permutation `p` with
/// `apply_permutation(t, p) == canonical`.
pub fn canonical_form_with_witness(t: &TripleSet) -> Result<(TripleSet, Permutation)> {
    let n = t.n();
    if n > MAX_CANONICAL_N {
        return Err(Error::TooLarge {
            what: "exhaustive canonicalization",
            n,
            limit: MAX_CANONICAL_N,
        });
    }
    let members: Vec<[usize; 3]> = t.iter().map(|tr| tr.elements()).collect();
    let mut best: Option<(Vec<usize>, Permutation)> = None;
    let mut ranks = Vec::with_capacity(members.len());
    for p in Permutation::all(n) {
        ranks.clear();
        ranks.extend(members.iter().map(|&[a, b, c]| {
            let mut img = [p.apply(a) - 1, p.apply(b) - 1, p.apply(c) - 1];
            img.sort_unstable();
            triple_rank(img[0], img[1], img[2])
        }));
        ranks.sort_unstable();
        if best.as_ref().is_none_or(|(b, _)| ranks < *b) {
            best = Some((ranks.clone(), p));
        }
    }
    let (_, p) = best.expect("S_n is nonempty");
    Ok((apply_permutation(t, &p)?, p))
}

/// Whether two triple sets lie in one `S_n`-orbit.
pub fn same_orbit(a: &TripleSet, b: &TripleSet) -> Result<bool> {
    if a.orbit_invariants() != b.orbit_invariants() {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}
