//! Irreducible decomposition of the point scheme `E = ⋂ V(x_i x_j x_k)`.
//!
//! `E` is cut out by one cubic monomial per bad triple, so it is a union of
//! coordinate subspaces `P(i₁,…,i_s)`. A coordinate subspace lies in `E` iff the
//! set of vanishing coordinates meets every bad triple; the irreducible
//! components are therefore the complements of the minimal transversals of
//! the bad-triple hypergraph.

use std::fmt;
use std::sync::OnceLock;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::sign::{canonical_form, Triple, TripleSet};

/// Largest `n` accepted by the transversal search.
pub const MAX_TRANSVERSAL_N: usize = 16;

/// A subset of `{1..n}` as a bitmask (bit `i − 1` for index `i`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(u32);

impl VertexSet {
    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        Self(indices.into_iter().fold(0, |m, i| m | 1 << (i - 1)))
    }

    pub fn full(n: usize) -> Self {
        Self(((1u64 << n) - 1) as u32)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        (self.0 >> (i - 1)) & 1 == 1
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn meets(self, other: Self) -> bool {
        self.0 & other.0 != 0
    }

    pub fn complement(self, n: usize) -> Self {
        Self(!self.0 & Self::full(n).0)
    }

    /// Members in ascending order.
    pub fn indices(self) -> Vec<usize> {
        (0..32).filter(|b| (self.0 >> b) & 1 == 1).map(|b| b + 1).collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.indices()).finish()
    }
}

impl Ord for VertexSet {
    /// Lexicographic on the ascending index lists.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.indices().cmp(&other.indices())
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Inclusion-minimal vertex sets meeting every edge, by ascending-size search.
///
/// Returns `{∅}` for an empty edge list and nothing if some edge is empty.
/// Output is sorted lexicographically.
pub fn minimal_transversals_of(n: usize, edges: &[VertexSet]) -> Result<Vec<VertexSet>> {
    if n > MAX_TRANSVERSAL_N {
        return Err(Error::TooLarge {
            what: "transversal enumeration",
            n,
            limit: MAX_TRANSVERSAL_N,
        });
    }
    let mut found: Vec<VertexSet> = Vec::new();
    if edges.iter().any(|e| e.is_empty()) {
        return Ok(found);
    }
    for size in 0..=n {
        for combo in (1..=n).combinations(size) {
            let s = VertexSet::from_indices(combo);
            if found.iter().any(|f| f.is_subset(s)) {
                continue;
            }
            if edges.iter().all(|&e| e.meets(s)) {
                found.push(s);
            }
        }
    }
    found.sort();
    Ok(found)
}

/// Minimal transversals of the bad-triple hypergraph.
pub fn minimal_transversals(t: &TripleSet) -> Result<Vec<VertexSet>> {
    let edges: Vec<VertexSet> = t.iter().map(|tr| VertexSet(tr.mask())).collect();
    minimal_transversals_of(t.n(), &edges)
}

/// The reduced point scheme as its list of irreducible components, each given
/// by its allowed (possibly nonzero) coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointScheme {
    n: usize,
    components: Vec<VertexSet>,
}

impl PointScheme {
    /// Builds a scheme from explicit component lists, e.g. a catalogue entry.
    pub fn from_components(n: usize, components: &[&[usize]]) -> Self {
        let mut components: Vec<VertexSet> = components
            .iter()
            .map(|c| VertexSet::from_indices(c.iter().copied()))
            .collect();
        components.sort();
        Self { n, components }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Components sorted lexicographically by their index lists.
    pub fn components(&self) -> &[VertexSet] {
        &self.components
    }

    pub fn component_lists(&self) -> Vec<Vec<usize>> {
        self.components.iter().map(|c| c.indices()).collect()
    }

    /// Whether `E` is the whole projective space `P^{n−1}`.
    pub fn is_whole_space(&self) -> bool {
        self.components == [VertexSet::full(self.n)]
    }

    /// Whether `E` is the union of all coordinate lines `P(i,j)`.
    pub fn is_all_lines(&self) -> bool {
        self.components.len() == crate::sign::binom2(self.n) && self.components.iter().all(|c| c.len() == 2)
    }

    /// Sorted multiset of component sizes.
    pub fn signature(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.components.iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        sizes
    }

    /// Whether the point with support `support` (a torus orbit) lies on `E`.
    pub fn contains_support(&self, support: VertexSet) -> bool {
        self.components.iter().any(|&c| support.is_subset(c))
    }

    /// Recovers the cubic monomials cutting out `E`: the minimal transversals
    /// of the vanishing sets. `None` if they are not all triples.
    pub fn defining_triples(&self) -> Option<TripleSet> {
        let vanishing: Vec<VertexSet> = self.components.iter().map(|c| c.complement(self.n)).collect();
        let edges = minimal_transversals_of(self.n, &vanishing).ok()?;
        let mut t = TripleSet::empty(self.n);
        for e in edges {
            let idx = e.indices();
            if idx.len() != 3 {
                return None;
            }
            t.insert(Triple::new(idx[0], idx[1], idx[2]).ok()?);
        }
        Some(t)
    }
}

impl fmt::Display for PointScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|c| format!("P({})", c.indices().iter().join(",")))
            .collect();
        write!(f, "{}", parts.join(" ∪ "))
    }
}

impl fmt::Debug for PointScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PointScheme(n={}, {})", self.n, self)
    }
}

pub fn point_scheme(t: &TripleSet) -> Result<PointScheme> {
    let n = t.n();
    let mut components: Vec<VertexSet> = minimal_transversals(t)?.into_iter().map(|s| s.complement(n)).collect();
    components.sort();
    Ok(PointScheme { n, components })
}

/// `ℓ`: the number of components isomorphic to `P¹`.
pub fn count_p1(ps: &PointScheme) -> usize {
    ps.components.iter().filter(|c| c.len() == 2).count()
}

/// `ℓ` read directly off the triples: for `n ≥ 3` the line `P(i,j)` is a
/// component iff `{i,j,k}` is bad for every other `k`; for `n = 2` the whole
/// space is a line.
pub fn count_p1_closed_form(t: &TripleSet) -> usize {
    let n = t.n();
    match n {
        0 | 1 => 0,
        2 => 1,
        _ => (1..=n)
            .tuple_combinations()
            .filter(|&(i, j)| (1..=n).filter(|&k| k != i && k != j).all(|k| t.contains_elems(i, j, k)))
            .count(),
    }
}

/// Catalogue tag of a point scheme up to relabelling.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SchemeLabel {
    /// One of the named types `(4a)…(4c)`, `(5a)…(5g)`.
    Named(&'static str),
    /// Sorted component sizes, for schemes outside the catalogue.
    Signature(Vec<usize>),
}

impl fmt::Display for SchemeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchemeLabel::Named(tag) => write!(f, "({tag})"),
            SchemeLabel::Signature(sizes) => write!(f, "[{}]", sizes.iter().join(",")),
        }
    }
}

/// Named point schemes for four variables, as component lists.
pub const CATALOG_N4: &[(&str, &[&[usize]])] = &[
    ("4a", &[&[1, 2, 3, 4]]),
    ("4b", &[&[1, 2, 4], &[1, 2, 3], &[3, 4]]),
    ("4c", &[&[3, 4], &[2, 4], &[2, 3], &[1, 4], &[1, 3], &[1, 2]]),
];

/// Named point schemes for five variables, as component lists.
pub const CATALOG_N5: &[(&str, &[&[usize]])] = &[
    ("5a", &[&[1, 2, 3, 4, 5]]),
    ("5b", &[&[1, 2, 3, 5], &[1, 2, 3, 4], &[4, 5]]),
    ("5c", &[&[1, 2, 3, 4], &[3, 4, 5], &[1, 2, 5]]),
    ("5d", &[&[3, 4, 5], &[1, 4, 5], &[1, 2, 5], &[1, 2, 3], &[2, 3, 4]]),
    (
        "5e",
        &[&[1, 3, 5], &[1, 3, 4], &[1, 2, 5], &[1, 2, 4], &[4, 5], &[2, 3]],
    ),
    ("5f", &[&[1, 2, 5], &[1, 2, 4], &[1, 2, 3], &[4, 5], &[3, 5], &[3, 4]]),
    (
        "5g",
        &[
            &[4, 5],
            &[3, 5],
            &[3, 4],
            &[2, 5],
            &[2, 4],
            &[2, 3],
            &[1, 5],
            &[1, 4],
            &[1, 3],
            &[1, 2],
        ],
    ),
];

/// A four-variable point scheme type that occurs for general skew polynomial
/// algebras but never for ±1 coefficients.
pub const UNREALIZED_N4: &[&[usize]] = &[&[2, 3, 4], &[1, 4], &[1, 3], &[1, 2]];

struct CatalogEntry {
    tag: &'static str,
    canonical: TripleSet,
}

fn catalog_entries(n: usize) -> &'static [CatalogEntry] {
    static N4: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    static N5: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    let (cell, source) = match n {
        4 => (&N4, CATALOG_N4),
        5 => (&N5, CATALOG_N5),
        _ => return &[],
    };
    cell.get_or_init(|| {
        source
            .iter()
            .map(|&(tag, comps)| {
                let triples = PointScheme::from_components(n, comps)
                    .defining_triples()
                    .expect("catalogue schemes are cut out by cubics");
                CatalogEntry {
                    tag,
                    canonical: canonical_form(&triples).expect("n <= 5"),
                }
            })
            .collect()
    })
}

/// Named catalogue type for `n ∈ {4, 5}`, otherwise the size signature.
pub fn scheme_label(ps: &PointScheme) -> SchemeLabel {
    let entries = catalog_entries(ps.n());
    if !entries.is_empty() {
        if let Some(triples) = ps.defining_triples() {
            let canonical = canonical_form(&triples).expect("n <= 5");
            if let Some(entry) = entries.iter().find(|e| e.canonical == canonical) {
                return SchemeLabel::Named(entry.tag);
            }
        }
    }
    SchemeLabel::Signature(ps.signature())
}

/// Whether `ps` is, up to relabelling, the four-variable type that ±1
/// coefficients never produce.
pub fn is_unrealized_n4_type(ps: &PointScheme) -> bool {
    if ps.n() != 4 {
        return false;
    }
    let reference = PointScheme::from_components(4, UNREALIZED_N4)
        .defining_triples()
        .expect("cut out by cubics");
    match ps.defining_triples() {
        Some(t) => crate::sign::same_orbit(&t, &reference).unwrap_or(false),
        None => false,
    }
}
