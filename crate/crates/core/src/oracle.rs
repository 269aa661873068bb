//! Brute-force model of `C(A)` from explicit structure constants.
//!
//! The basis is the set of ordered monomials `t^a = t₁^{a₁}⋯t_m^{a_m}`,
//! `a ∈ F₂^m`, and `t^a · t^b = σ(a,b) t^{a⊕b}` where `σ(a,b)` collects one
//! factor `−μ_ij` for every swap needed to sort the word `t^a t^b`. Nothing
//! here goes through the alternating form or the symplectic reduction; the
//! checks in this module are the independent side of the Wedderburn formula.
//!
//! All arithmetic is exact.

use num_traits::One;
use thiserror::Error;

use crate::clifford::{CommutationMatrix, F2Form, Representation, RepresentationError, WedderburnType};
use crate::linalg::{Matrix, RowEchelon};
use crate::scalar::{Field, Scalar};
use crate::{GaussianInt, Rational};

/// Largest generator count the oracle accepts (table dimension 256).
pub const MAX_ORACLE_GENERATORS: usize = 8;

/// Twisted group algebra of `(ℤ₂)^m` with a ±1 cocycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraTable {
    m: usize,
    // swap_sign[i] has bit j set iff moving t_i past t_j (j < i) costs a sign
    swap_sign: Vec<u64>,
}

/// Relations `t_i t_j + μ_ij t_j t_i`, `t_i² = 1`, as a multiplication table.
pub fn structure_constants(c: &CommutationMatrix) -> AlgebraTable {
    let m = c.m();
    assert!(
        m <= MAX_ORACLE_GENERATORS,
        "oracle is capped at m = {MAX_ORACLE_GENERATORS}"
    );
    let swap_sign = (1..=m)
        .map(|i| {
            (1..i)
                .filter(|&j| -c.mu(i, j) < 0)
                .fold(0u64, |acc, j| acc | 1 << (j - 1))
        })
        .collect();
    AlgebraTable { m, swap_sign }
}

impl AlgebraTable {
    pub fn generators(&self) -> usize {
        self.m
    }

    /// Number of basis monomials, `2^m`.
    pub fn dim(&self) -> usize {
        1 << self.m
    }

    /// `σ(a, b) ∈ {±1}`.
    pub fn sigma(&self, a: u64, b: u64) -> i8 {
        let mut parity = 0u32;
        let mut bits = a;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            parity ^= (self.swap_sign[i] & b).count_ones() & 1;
            bits &= bits - 1;
        }
        if parity == 0 {
            1
        } else {
            -1
        }
    }

    pub fn cocycle_holds(&self, a: u64, b: u64, c: u64) -> bool {
        self.sigma(a, b) * self.sigma(a ^ b, c) == self.sigma(b, c) * self.sigma(a, b ^ c)
    }

    pub fn basis_element<T: Scalar>(&self, a: u64) -> Vec<T> {
        let mut v = vec![T::zero(); self.dim()];
        v[a as usize] = T::one();
        v
    }

    /// `Σ coeff · t^a` from `(coeff, a)` terms.
    pub fn element<T: Scalar>(&self, terms: &[(T, u64)]) -> Vec<T> {
        let mut v = vec![T::zero(); self.dim()];
        for (coeff, a) in terms {
            v[*a as usize] = v[*a as usize].clone() + coeff.clone();
        }
        v
    }

    pub fn multiply<T: Scalar>(&self, x: &[T], y: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.dim());
        assert_eq!(y.len(), self.dim());
        let mut out = vec![T::zero(); self.dim()];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let term = xa.clone() * yb.clone();
                let c = a ^ b;
                out[c] = if self.sigma(a as u64, b as u64) > 0 {
                    out[c].clone() + term
                } else {
                    out[c].clone() - term
                };
            }
        }
        out
    }

    /// Number of distinct monomials (up to sign) reachable from `1` by right
    /// multiplication with generators; the dimension of the presented algebra.
    pub fn generated_dimension(&self) -> usize {
        let mut seen = vec![false; self.dim()];
        let mut stack = vec![0u64];
        seen[0] = true;
        while let Some(a) = stack.pop() {
            for i in 0..self.m {
                let b = a ^ (1 << i);
                if !seen[b as usize] {
                    seen[b as usize] = true;
                    stack.push(b);
                }
            }
        }
        seen.iter().filter(|&&s| s).count()
    }

    /// The anticommutation pattern of the generators as read from the table.
    pub fn commutation_form(&self) -> F2Form {
        let mut edges = Vec::new();
        for i in 0..self.m {
            for j in i + 1..self.m {
                let (a, b) = (1u64 << i, 1u64 << j);
                if self.sigma(a, b) != self.sigma(b, a) {
                    edges.push((i + 1, j + 1));
                }
            }
        }
        F2Form::from_edges(self.m, edges)
    }
}

/// Dimension of the centre over a chosen exact field.
pub fn center_dimension_in<T: Field>(tab: &AlgebraTable) -> usize {
    let dim = tab.dim();
    // columns of the commutator map z ↦ ([z, t_i])_i, one per basis monomial
    let commutators: Vec<Vec<T>> = (0..dim as u64)
        .map(|a| {
            let za = tab.basis_element::<T>(a);
            (0..tab.generators())
                .flat_map(|i| {
                    let g = tab.basis_element::<T>(1 << i);
                    let left = tab.multiply(&za, &g);
                    let right = tab.multiply(&g, &za);
                    left.into_iter().zip(right).map(|(l, r)| l - r).collect::<Vec<_>>()
                })
                .collect()
        })
        .collect();
    let height = dim * tab.generators();
    let mut echelon = RowEchelon::<T>::new(dim);
    for row in 0..height {
        echelon.insert(commutators.iter().map(|col| col[row].clone()).collect());
    }
    dim - echelon.rank()
}

/// Dimension of the centre, by exact rational elimination.
pub fn center_dimension(tab: &AlgebraTable) -> usize {
    center_dimension_in::<Rational>(tab)
}

/// Trace form `G_{a,b} = tr L(t^a t^b)` of the regular representation.
pub fn trace_form<T: Scalar>(tab: &AlgebraTable) -> Matrix<T> {
    let dim = tab.dim();
    // trace of left multiplication by each basis monomial
    let traces: Vec<T> = (0..dim as u64)
        .map(|c| {
            let mut tr = T::zero();
            for d in 0..dim as u64 {
                if c ^ d == d {
                    tr = tr + T::from_i64(tab.sigma(c, d) as i64);
                }
            }
            tr
        })
        .collect();
    let mut g = Matrix::zeros(dim, dim);
    for a in 0..dim {
        for b in 0..dim {
            let s = T::from_i64(tab.sigma(a as u64, b as u64) as i64);
            g[(a, b)] = s * traces[a ^ b].clone();
        }
    }
    g
}

/// Whether the trace form is nondegenerate (separable, hence semisimple).
pub fn semisimplicity_check(tab: &AlgebraTable) -> bool {
    trace_form::<Rational>(tab).is_nonsingular()
}

/// Complete set of orthogonal idempotents: `e² = e`, `e e' = 0`, `Σ e = 1`.
pub fn idempotent_check<T: Scalar + PartialEq>(tab: &AlgebraTable, elements: &[Vec<T>]) -> bool {
    let zero = vec![T::zero(); tab.dim()];
    for (i, e) in elements.iter().enumerate() {
        for (j, f) in elements.iter().enumerate() {
            let prod = tab.multiply(e, f);
            let expected = if i == j { e } else { &zero };
            if &prod != expected {
                return false;
            }
        }
    }
    let sum = elements.iter().fold(zero.clone(), |acc, e| {
        acc.into_iter().zip(e).map(|(x, y)| x + y.clone()).collect()
    });
    sum == tab.basis_element::<T>(0)
}

/// The four facts that pin `C(A) ≅ M_d(k)^c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub center_dimension: usize,
    pub semisimple: bool,
    pub block_size: usize,
    pub block_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CertificationError {
    #[error("centre has dimension {found}, expected block count {expected}")]
    CenterMismatch { found: usize, expected: usize },
    #[error("trace form is degenerate")]
    NotSemisimple,
    #[error("explicit representation: {0}")]
    Representation(#[from] RepresentationError),
    #[error("block {block}: t_{generator} * t^{monomial:#b} disagrees with the table")]
    TableMismatch {
        block: usize,
        generator: usize,
        monomial: u64,
    },
    #[error("c * d^2 = {found} but the table has dimension {expected}")]
    DimensionLaw { found: usize, expected: usize },
}

/// Cross-checks a claimed Wedderburn type against the table and an explicit
/// representation; reports the first clause that fails.
pub fn certify_wedderburn(
    tab: &AlgebraTable,
    w: &WedderburnType,
    rep: &Representation,
) -> Result<Certificate, CertificationError> {
    let center = center_dimension(tab);
    if center != w.block_count {
        return Err(CertificationError::CenterMismatch {
            found: center,
            expected: w.block_count,
        });
    }
    if !semisimplicity_check(tab) {
        return Err(CertificationError::NotSemisimple);
    }
    rep.verify_shape(&tab.commutation_form(), w)?;
    for (k, _) in rep.blocks.iter().enumerate() {
        let images: Vec<Matrix<GaussianInt>> = (0..tab.dim() as u64).map(|a| rep.monomial(k, a)).collect();
        for i in 0..tab.generators() {
            let g = &rep.blocks[k].generators[i];
            for a in 0..tab.dim() as u64 {
                let e = 1u64 << i;
                let lhs = g * &images[a as usize];
                let rhs = &images[(e ^ a) as usize];
                let ok = if tab.sigma(e, a) > 0 {
                    &lhs == rhs
                } else {
                    lhs == rhs.scale(&-GaussianInt::one())
                };
                if !ok {
                    return Err(CertificationError::TableMismatch {
                        block: k,
                        generator: i + 1,
                        monomial: a,
                    });
                }
            }
        }
    }
    if w.dimension() != tab.dim() {
        return Err(CertificationError::DimensionLaw {
            found: w.dimension(),
            expected: tab.dim(),
        });
    }
    Ok(Certificate {
        center_dimension: center,
        semisimple: true,
        block_size: w.block_size,
        block_count: w.block_count,
    })
}
