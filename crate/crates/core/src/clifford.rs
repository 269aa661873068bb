//! The algebra `C(A)` as a twisted group algebra of `(ℤ₂)^m`, `m = n − 1`.
//!
//! `C(A)` is generated by `t₁,…,t_m` with `t_i² = 1` and
//! `t_i t_j + μ_ij t_j t_i = 0`, where `μ_ij = ε_ni ε_ij ε_jn`. Its shape is
//! governed by the alternating form over `F₂` recording which generators
//! anticommute: with `2r` its rank, `C(A) ≅ M_{2^r}(k)^{2^{m−2r}}`.
//!
//! `F₂` vectors are `u64` bitmasks, bit `i − 1` holding coordinate `i`.

use std::fmt;

use itertools::Itertools;
use num_complex::Complex;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::{Matrix, RowEchelon};
use crate::scalar::lift_gaussian;
use crate::sign::{binom2, SignMatrix, TripleSet};
use crate::{GaussianInt, GaussianRational, Rational};

/// Largest number of generators handled by the bitmask encodings.
pub const MAX_GENERATORS: usize = 63;

fn pair_rank(a: usize, b: usize) -> usize {
    b * (b - 1) / 2 + a
}

/// Signs `μ_ij` of the defining relations `t_i t_j + μ_ij t_j t_i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CommutationMatrix {
    m: usize,
    negative: Vec<bool>,
}

impl CommutationMatrix {
    pub fn all_positive(m: usize) -> Self {
        assert!(m <= MAX_GENERATORS, "too many generators");
        Self {
            m,
            negative: vec![false; binom2(m)],
        }
    }

    /// `μ` with `μ_ij = −1` exactly on the listed pairs.
    pub fn from_neg_pairs(m: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut c = Self::all_positive(m);
        for (i, j) in pairs {
            assert!(i != j && i >= 1 && j >= 1 && i <= m && j <= m, "bad pair ({i}, {j})");
            let (a, b) = if i < j { (i - 1, j - 1) } else { (j - 1, i - 1) };
            c.negative[pair_rank(a, b)] = true;
        }
        c
    }

    /// Decodes a `C(m,2)`-bit mask (bit set iff `μ = −1`, colex pair order).
    pub fn from_mask(m: usize, mask: u64) -> Self {
        let mut c = Self::all_positive(m);
        for (r, neg) in c.negative.iter_mut().enumerate() {
            *neg = (mask >> r) & 1 == 1;
        }
        c
    }

    pub fn mask(&self) -> u64 {
        self.negative
            .iter()
            .enumerate()
            .fold(0, |acc, (r, &neg)| acc | (neg as u64) << r)
    }

    /// `μ` read off a two-graph on `{1..m+1}`: `μ_ij = −1` iff `{i, j, m+1}` is bad.
    pub fn from_triples(t: &TripleSet) -> Self {
        let n = t.n();
        let m = n.saturating_sub(1);
        Self::from_neg_pairs(
            m,
            (1..n).tuple_combinations().filter(|&(i, j)| t.contains_elems(i, j, n)),
        )
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn mu(&self, i: usize, j: usize) -> i8 {
        assert!(i != j && i >= 1 && j >= 1 && i <= self.m && j <= self.m);
        let (a, b) = if i < j { (i - 1, j - 1) } else { (j - 1, i - 1) };
        if self.negative[pair_rank(a, b)] {
            -1
        } else {
            1
        }
    }

    /// Pairs `(i, j)`, `i < j`, with `μ_ij = −1` (commuting generators).
    pub fn neg_pairs(&self) -> Vec<(usize, usize)> {
        (1..=self.m)
            .tuple_combinations()
            .filter(|&(i, j)| self.mu(i, j) < 0)
            .collect()
    }
}

impl fmt::Debug for CommutationMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CommutationMatrix(m={}, neg={:?})", self.m, self.neg_pairs())
    }
}

/// `μ_ij = ε_ni ε_ij ε_jn` for `1 ≤ i < j ≤ n − 1`.
pub fn mu_matrix(s: &SignMatrix) -> CommutationMatrix {
    let n = s.n();
    let m = n - 1;
    CommutationMatrix::from_neg_pairs(
        m,
        (1..=m)
            .tuple_combinations()
            .filter(|&(i, j)| s.sign(n, i) * s.sign(i, j) * s.sign(j, n) < 0),
    )
}

/// Symmetric zero-diagonal matrix over `F₂`; `b_ij = 1` iff `t_i`, `t_j` anticommute.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Form {
    m: usize,
    rows: Vec<u64>,
}

impl F2Form {
    pub fn zero(m: usize) -> Self {
        assert!(m <= MAX_GENERATORS, "too many generators");
        Self { m, rows: vec![0; m] }
    }

    pub fn from_edges(m: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut f = Self::zero(m);
        for (i, j) in edges {
            assert!(i != j, "alternating forms vanish on the diagonal");
            f.rows[i - 1] |= 1 << (j - 1);
            f.rows[j - 1] |= 1 << (i - 1);
        }
        f
    }

    /// Adjacency of the complete graph `K_m`.
    pub fn complete(m: usize) -> Self {
        Self::from_edges(m, (1..=m).tuple_combinations())
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn entry(&self, i: usize, j: usize) -> bool {
        (self.rows[i - 1] >> (j - 1)) & 1 == 1
    }

    /// Row `i` as a bitmask over `j`.
    pub fn row(&self, i: usize) -> u64 {
        self.rows[i - 1]
    }

    /// `B(u, v) = uᵀ b v` over `F₂`.
    pub fn pairing(&self, u: u64, v: u64) -> bool {
        let mut acc = 0u32;
        let mut bits = u;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            acc ^= (self.rows[i] & v).count_ones() & 1;
            bits &= bits - 1;
        }
        acc == 1
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (1..=self.m)
            .tuple_combinations()
            .filter(|&(i, j)| self.entry(i, j))
            .collect()
    }
}

impl fmt::Debug for F2Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2Form(m={}, edges={:?})", self.m, self.edges())
    }
}

pub fn anticommutation_form(c: &CommutationMatrix) -> F2Form {
    F2Form::from_edges(c.m(), (1..=c.m()).tuple_combinations().filter(|&(i, j)| c.mu(i, j) > 0))
}

/// Rank over `F₂` of a set of bit vectors.
pub(crate) fn f2_span_rank(vectors: impl IntoIterator<Item = u64>) -> usize {
    let mut basis: Vec<u64> = Vec::new();
    for mut v in vectors {
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// Rank of `b` over `F₂`; always even.
pub fn f2_rank(f: &F2Form) -> usize {
    f2_span_rank(f.rows.iter().copied())
}

/// Coefficients `γ` with `target = Σ γ_k vectors[k]`, if `target` is in the span.
fn solve_in_span(vectors: &[u64], target: u64) -> Option<u64> {
    // echelon rows carry the combination that produced them
    let mut rows: Vec<(u64, u64)> = Vec::new();
    for (k, &v) in vectors.iter().enumerate() {
        let mut row = (v, 1u64 << k);
        for &(b, comb) in &rows {
            if row.0 ^ b < row.0 {
                row = (row.0 ^ b, row.1 ^ comb);
            }
        }
        if row.0 != 0 {
            rows.push(row);
            rows.sort_unstable_by_key(|r| std::cmp::Reverse(r.0));
        }
    }
    let mut acc = (target, 0u64);
    for &(b, comb) in &rows {
        if acc.0 ^ b < acc.0 {
            acc = (acc.0 ^ b, acc.1 ^ comb);
        }
    }
    (acc.0 == 0).then_some(acc.1)
}

/// Hyperbolic pairs plus a basis of the radical of an alternating form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticBasis {
    pub m: usize,
    pub hyperbolic_pairs: Vec<(u64, u64)>,
    pub radical: Vec<u64>,
}

impl SymplecticBasis {
    pub fn rank(&self) -> usize {
        2 * self.hyperbolic_pairs.len()
    }

    /// All basis vectors: `u₁, v₁, …, u_r, v_r, z₁, …`.
    pub fn vectors(&self) -> Vec<u64> {
        self.hyperbolic_pairs
            .iter()
            .flat_map(|&(u, v)| [u, v])
            .chain(self.radical.iter().copied())
            .collect()
    }

    /// Checks the defining pairings and that the vectors form a basis of `F₂^m`.
    pub fn is_valid_for(&self, f: &F2Form) -> bool {
        let all = self.vectors();
        if all.len() != self.m || f2_span_rank(all.iter().copied()) != self.m {
            return false;
        }
        let r = self.hyperbolic_pairs.len();
        for (x, &a) in all.iter().enumerate() {
            for (y, &b) in all.iter().enumerate() {
                let expected = x < 2 * r && y < 2 * r && x / 2 == y / 2 && x != y;
                if f.pairing(a, b) != expected {
                    return false;
                }
            }
        }
        true
    }
}

/// Symplectic Gram–Schmidt over `F₂`, starting from the standard basis and
/// always pairing the lowest-index vector that has a partner with its
/// lowest-index partner.
pub fn symplectic_basis(f: &F2Form) -> SymplecticBasis {
    let mut pool: Vec<u64> = (0..f.m()).map(|i| 1u64 << i).collect();
    let mut pairs = Vec::new();
    loop {
        let found = pool
            .iter()
            .enumerate()
            .find_map(|(p, &u)| pool.iter().position(|&w| f.pairing(u, w)).map(|q| (p, q)));
        let Some((p, q)) = found else { break };
        let (u, v) = (pool[p], pool[q]);
        pool = pool
            .into_iter()
            .enumerate()
            .filter(|&(k, _)| k != p && k != q)
            .map(|(_, x)| {
                let mut y = x;
                if f.pairing(x, v) {
                    y ^= u;
                }
                if f.pairing(x, u) {
                    y ^= v;
                }
                y
            })
            .collect();
        pairs.push((u, v));
    }
    SymplecticBasis {
        m: f.m(),
        hyperbolic_pairs: pairs,
        radical: pool,
    }
}

/// `M_d(k)^c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WedderburnType {
    pub block_size: usize,
    pub block_count: usize,
}

impl WedderburnType {
    pub fn dimension(&self) -> usize {
        self.block_count * self.block_size * self.block_size
    }
}

impl fmt::Display for WedderburnType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M_{}(k)", self.block_size)?;
        if self.block_count > 1 {
            write!(f, "^{}", self.block_count)?;
        }
        Ok(())
    }
}

/// `d = 2^{rank/2}`, `c = 2^{m − rank}`.
pub fn wedderburn_type(f: &F2Form) -> WedderburnType {
    let rank = f2_rank(f);
    WedderburnType {
        block_size: 1 << (rank / 2),
        block_count: 1 << (f.m() - rank),
    }
}

/// One simple block: images of `t₁,…,t_m` as `d × d` matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentationBlock {
    /// `±1` assigned to each radical basis vector.
    pub radical_signs: Vec<i8>,
    pub generators: Vec<Matrix<GaussianInt>>,
}

/// Explicit isomorphism data `C(A) → ∏ M_d(k)`, one block per radical sign vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    pub m: usize,
    pub block_size: usize,
    pub basis: SymplecticBasis,
    pub blocks: Vec<RepresentationBlock>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RepresentationError {
    #[error("block {block}: image of t_{generator} does not square to the identity")]
    NotInvolution { block: usize, generator: usize },
    #[error("block {block}: t_{i} and t_{j} have the wrong commutation sign")]
    WrongCommutation { block: usize, i: usize, j: usize },
    #[error("block {block}: words span dimension {rank}, expected {expected}")]
    SpanDeficient { block: usize, rank: usize, expected: usize },
    #[error("block {block}: a radical element does not act by a scalar")]
    RadicalNotScalar { block: usize },
    #[error("blocks {0} and {1} have the same central character")]
    DuplicateBlocks(usize, usize),
    #[error("expected {expected} blocks of size {size}, found {found}")]
    WrongShape { expected: usize, size: usize, found: usize },
}

fn pauli_x() -> Matrix<GaussianInt> {
    let one = GaussianInt::one();
    let zero = GaussianInt::zero();
    Matrix::from_rows(vec![vec![zero, one], vec![one, zero]])
}

fn pauli_z() -> Matrix<GaussianInt> {
    let one = GaussianInt::one();
    let zero = GaussianInt::zero();
    Matrix::from_rows(vec![vec![one, zero], vec![zero, -one]])
}

/// `⊗_i X^{α_i} Z^{β_i}`.
fn tensor_word(alpha: &[bool], beta: &[bool]) -> Matrix<GaussianInt> {
    let mut out = Matrix::identity(1);
    for (&a, &b) in alpha.iter().zip(beta) {
        let mut factor = Matrix::identity(2);
        if a {
            factor = &factor * &pauli_x();
        }
        if b {
            factor = &factor * &pauli_z();
        }
        out = out.kron(&factor);
    }
    out
}

/// Builds the blocks of `C(A)` from signed tensor words in `X` (antidiagonal
/// ones) and `Z = diag(1, −1)` along the symplectic basis. A generator whose
/// word squares to `−1` is rescaled by `i`, so entries lie in `{0, ±1, ±i}`.
pub fn explicit_representation(c: &CommutationMatrix) -> Representation {
    let form = anticommutation_form(c);
    let basis = symplectic_basis(&form);
    let m = c.m();
    let r = basis.hyperbolic_pairs.len();
    let s = basis.radical.len();

    // per generator: hyperbolic coordinates, phase, and radical coordinates
    let words: Vec<(Matrix<GaussianInt>, u64)> = (0..m)
        .map(|j| {
            let e = 1u64 << j;
            let alpha: Vec<bool> = basis
                .hyperbolic_pairs
                .iter()
                .map(|&(_, v)| form.pairing(e, v))
                .collect();
            let beta: Vec<bool> = basis
                .hyperbolic_pairs
                .iter()
                .map(|&(u, _)| form.pairing(e, u))
                .collect();
            let mut residual = e;
            for (k, &(u, v)) in basis.hyperbolic_pairs.iter().enumerate() {
                if alpha[k] {
                    residual ^= u;
                }
                if beta[k] {
                    residual ^= v;
                }
            }
            let gamma = solve_in_span(&basis.radical, residual).expect("symplectic basis spans F2^m");
            let odd = alpha.iter().zip(&beta).filter(|(a, b)| **a && **b).count() % 2 == 1;
            let phase = if odd { GaussianInt::i() } else { GaussianInt::one() };
            (tensor_word(&alpha, &beta).scale(&phase), gamma)
        })
        .collect();

    let blocks = (0..1usize << s)
        .map(|block| {
            let radical_signs: Vec<i8> = (0..s).map(|k| if (block >> k) & 1 == 1 { -1 } else { 1 }).collect();
            let generators = words
                .iter()
                .map(|(w, gamma)| {
                    let negate = (0..s)
                        .filter(|&k| (gamma >> k) & 1 == 1 && radical_signs[k] < 0)
                        .count()
                        % 2
                        == 1;
                    if negate {
                        w.scale(&-GaussianInt::one())
                    } else {
                        w.clone()
                    }
                })
                .collect();
            RepresentationBlock {
                radical_signs,
                generators,
            }
        })
        .collect();

    Representation {
        m,
        block_size: 1 << r,
        basis,
        blocks,
    }
}

impl Representation {
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Image of the ordered monomial `t^a` in `block`.
    pub fn monomial(&self, block: usize, a: u64) -> Matrix<GaussianInt> {
        let gens = &self.blocks[block].generators;
        (0..self.m)
            .filter(|&i| (a >> i) & 1 == 1)
            .fold(Matrix::identity(self.block_size), |acc, i| &acc * &gens[i])
    }

    /// Relation, span and separation checks against the form `b`.
    pub fn verify(&self, form: &F2Form) -> Result<(), RepresentationError> {
        let d = self.block_size;
        let identity = Matrix::<GaussianInt>::identity(d);
        for (k, block) in self.blocks.iter().enumerate() {
            for (i, g) in block.generators.iter().enumerate() {
                if g * g != identity {
                    return Err(RepresentationError::NotInvolution {
                        block: k,
                        generator: i + 1,
                    });
                }
            }
            for (i, j) in (0..self.m).tuple_combinations() {
                let (gi, gj) = (&block.generators[i], &block.generators[j]);
                let lhs = gi * gj;
                let rhs = gj * gi;
                let expected = if form.entry(i + 1, j + 1) {
                    rhs.scale(&-GaussianInt::one())
                } else {
                    rhs
                };
                if lhs != expected {
                    return Err(RepresentationError::WrongCommutation {
                        block: k,
                        i: i + 1,
                        j: j + 1,
                    });
                }
            }
            let mut span = RowEchelon::<GaussianRational>::new(d * d);
            for a in 0..1u64 << self.m {
                let word = self.monomial(k, a);
                span.insert(
                    word.as_slice()
                        .iter()
                        .map(lift_gaussian::<Rational>)
                        .collect::<Vec<Complex<Rational>>>(),
                );
                if span.is_full() {
                    break;
                }
            }
            if span.rank() != d * d {
                return Err(RepresentationError::SpanDeficient {
                    block: k,
                    rank: span.rank(),
                    expected: d * d,
                });
            }
        }
        // central characters on the radical basis must separate the blocks
        let characters: Vec<Vec<GaussianInt>> = self
            .blocks
            .iter()
            .enumerate()
            .map(|(k, _)| {
                self.basis
                    .radical
                    .iter()
                    .map(|&z| {
                        let img = self.monomial(k, z);
                        let lambda = img[(0, 0)];
                        if img == Matrix::scalar(d, lambda) {
                            Ok(lambda)
                        } else {
                            Err(RepresentationError::RadicalNotScalar { block: k })
                        }
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<_, _>>()?;
        for (a, b) in (0..characters.len()).tuple_combinations() {
            if characters[a] == characters[b] {
                return Err(RepresentationError::DuplicateBlocks(a, b));
            }
        }
        Ok(())
    }

    /// [`Representation::verify`] plus agreement with a claimed Wedderburn type.
    pub fn verify_shape(&self, form: &F2Form, w: &WedderburnType) -> Result<(), RepresentationError> {
        if self.block_size != w.block_size || self.blocks.len() != w.block_count {
            return Err(RepresentationError::WrongShape {
                expected: w.block_count,
                size: w.block_size,
                found: self.blocks.len(),
            });
        }
        self.verify(form)
    }
}
