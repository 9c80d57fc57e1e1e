//! Rank profile of a triple `(A, B, C)` and the equivalent tests for
//! equality in `rank(ABC) + rank(B) >= rank(AB) + rank(BC)`.
//!
//! Equality is decided four ways, always all of them:
//!
//! 1. the rank gap is zero;
//! 2. the induced map `[x] -> [Ax]` from `Rg(B)/Rg(BC)` to `Rg(AB)/Rg(ABC)`
//!    has a square invertible matrix;
//! 3. `Rg(B) ∩ Ker(A)` and `Rg(BC) ∩ Ker(A)` have equal dimension and the
//!    smaller is contained in the larger;
//! 4. the basis `D_B V_B` of the first intersection factors through the
//!    basis `D_BC V_BC` of the second.
//!
//! Any disagreement is reported as [`Error::InternalDisagreement`].

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::reduce::{extend_basis, kernel_basis, pivot_column_basis, rank, solve_right};

/// The four ranks of a triple and the slack in the inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RankProfile {
    /// rank(B)
    pub n1: usize,
    /// rank(AB)
    pub n2: usize,
    /// rank(BC)
    pub m1: usize,
    /// rank(ABC)
    pub m2: usize,
    pub gap: usize,
}

impl RankProfile {
    /// `rank(ABC) + rank(B)`
    pub fn lhs(&self) -> usize {
        self.m2 + self.n1
    }

    /// `rank(AB) + rank(BC)`
    pub fn rhs(&self) -> usize {
        self.n2 + self.m1
    }
}

/// A vector of `Rg(B) ∩ Ker(A)` outside `Rg(BC) ∩ Ker(A)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InequalityWitness {
    pub vector: Matrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriteriaReport {
    pub gap_zero: bool,
    pub quotient_block_invertible: bool,
    pub intersections_equal: bool,
    pub factor_exists: bool,
    /// `Z` with `D_BC V_BC Z = D_B V_B`, when it exists.
    pub factor: Option<Matrix>,
    pub witness: Option<InequalityWitness>,
}

impl CriteriaReport {
    pub fn equality(&self) -> bool {
        self.gap_zero
    }
}

pub(crate) fn check_chain(a: &Matrix, b: &Matrix, c: &Matrix) -> Result<()> {
    for m in [b, c] {
        if m.field() != a.field() {
            return Err(Error::FieldMismatch {
                left: a.field(),
                right: m.field(),
            });
        }
    }
    if a.cols() != b.rows() {
        return Err(Error::dims("A*B", a.shape(), b.shape()));
    }
    if b.cols() != c.rows() {
        return Err(Error::dims("B*C", b.shape(), c.shape()));
    }
    Ok(())
}

/// Products `AB`, `BC`, `ABC` of a chained triple.
pub(crate) struct Products {
    pub ab: Matrix,
    pub bc: Matrix,
    pub abc: Matrix,
}

impl Products {
    pub(crate) fn new(a: &Matrix, b: &Matrix, c: &Matrix) -> Result<Self> {
        check_chain(a, b, c)?;
        let ab = a.matmul(b)?;
        let bc = b.matmul(c)?;
        let abc = ab.matmul(c)?;
        Ok(Products { ab, bc, abc })
    }
}

pub fn rank_profile(a: &Matrix, b: &Matrix, c: &Matrix) -> Result<RankProfile> {
    let p = Products::new(a, b, c)?;
    let n1 = rank(b);
    let n2 = rank(&p.ab);
    let m1 = rank(&p.bc);
    let m2 = rank(&p.abc);
    let gap = (m2 + n1).checked_sub(n2 + m1).ok_or_else(|| {
        Error::InternalDisagreement(format!(
            "negative rank gap: rank(ABC)+rank(B)={} < rank(AB)+rank(BC)={}",
            m2 + n1,
            n2 + m1
        ))
    })?;
    Ok(RankProfile {
        n1,
        n2,
        m1,
        m2,
        gap,
    })
}

/// Basis `D_B V_B` of `Rg(B) ∩ Ker(A)`, where `D_B` holds the pivot columns
/// of `B` and `V_B` is the kernel basis of `A D_B`.
pub fn intersection_basis(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if a.cols() != b.rows() {
        return Err(Error::dims("intersection_basis", a.shape(), b.shape()));
    }
    let d_b = pivot_column_basis(b);
    let v_b = kernel_basis(&a.matmul(&d_b)?);
    d_b.matmul(&v_b)
}

/// Matrix of the induced map `T: Rg(B)/Rg(BC) -> Rg(AB)/Rg(ABC)`.
///
/// The result has shape `(n2 - m2) x (n1 - m1)`: column `k` holds the
/// quotient coordinates of `A b` for the `k`-th basis vector `b` of `Rg(B)`
/// lying outside the chosen basis of `Rg(BC)`.
pub fn quotient_map_matrix(a: &Matrix, b: &Matrix, c: &Matrix) -> Result<Matrix> {
    let p = Products::new(a, b, c)?;
    let sub_domain = pivot_column_basis(&p.bc);
    let domain = extend_basis(&sub_domain, b)?;
    let sub_codomain = pivot_column_basis(&p.abc);
    let codomain = extend_basis(&sub_codomain, &p.ab)?;

    let images = a.matmul(&domain)?;
    let coords = solve_right(&codomain, &images)?
        .ok_or_else(|| Error::InternalDisagreement("A maps Rg(B) outside Rg(AB)".into()))?;

    let (m1, n1) = (sub_domain.cols(), domain.cols());
    let (m2, n2) = (sub_codomain.cols(), codomain.cols());
    Ok(coords.row_range(m2, n2).column_range(m1, n1))
}

pub fn is_invertible_block(block: &Matrix) -> bool {
    block.rows() == block.cols() && rank(block) == block.rows()
}

pub fn equality_criteria(a: &Matrix, b: &Matrix, c: &Matrix) -> Result<CriteriaReport> {
    let profile = rank_profile(a, b, c)?;
    let gap_zero = profile.gap == 0;

    let quotient_block_invertible = is_invertible_block(&quotient_map_matrix(a, b, c)?);

    let bc = b.matmul(c)?;
    let w_b = intersection_basis(a, b)?;
    let w_bc = intersection_basis(a, &bc)?;

    // Rg(BC) ∩ Ker(A) always sits inside Rg(B) ∩ Ker(A); equal dimensions
    // then force equality.
    let contained = solve_right(&w_b, &w_bc)?.is_some();
    let intersections_equal = contained && w_b.cols() == w_bc.cols();

    let factor = solve_right(&w_bc, &w_b)?;
    let factor_exists = factor.is_some();

    let witness = if factor_exists {
        None
    } else {
        let mut found = None;
        for j in 0..w_b.cols() {
            let col = w_b.column(j);
            if solve_right(&w_bc, &col)?.is_none() {
                found = Some(InequalityWitness { vector: col });
                break;
            }
        }
        found
    };

    let flags = [
        gap_zero,
        quotient_block_invertible,
        intersections_equal,
        factor_exists,
    ];
    if flags.iter().any(|&f| f != gap_zero) || witness.is_some() == gap_zero {
        return Err(Error::InternalDisagreement(format!(
            "criteria disagree: gap_zero={gap_zero} quotient_block_invertible={quotient_block_invertible} \
             intersections_equal={intersections_equal} factor_exists={factor_exists}"
        )));
    }

    Ok(CriteriaReport {
        gap_zero,
        quotient_block_invertible,
        intersections_equal,
        factor_exists,
        factor,
        witness,
    })
}
