//! Construction and checking of pairs `(X, Y)` with `B = BCX + YAB`.
//!
//! The construction works on a basis of `Rg(B)` that starts with a basis
//! `D_B v_1 .. D_B v_s` of `Rg(B) ∩ Ker(A)` and is extended by
//! `D_B v_{s+1} .. D_B v_r`. Then:
//!
//! * `Y` sends `A D_B v_k` back to `D_B v_k` for `k > s` and is zero on a
//!   complement of `Rg(AB)`;
//! * `M` sends `D_B v_j` to some `ṽ_j` with `BC ṽ_j = D_B v_j` for `j <= s`
//!   and is zero elsewhere, and `X = M B`.

use crate::analysis::{equality_criteria, CriteriaReport, InequalityWitness, Products};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::Matrix;
use crate::reduce::{extend_basis, kernel_basis, map_from_basis, pivot_column_basis, solve_right};

/// Every intermediate of the construction, kept for inspection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionTrace {
    pub d_b: Matrix,
    /// Columns `v_1 .. v_s`, a basis of `Ker(A D_B)`.
    pub v_b: Matrix,
    /// dim(Rg(B) ∩ Ker(A))
    pub s: usize,
    /// rank(B)
    pub r: usize,
    /// `D_B v_1 .. D_B v_r`, a basis of `Rg(B)`.
    pub extended_basis: Matrix,
    /// Columns `ṽ_1 .. ṽ_s` with `BC ṽ_j = D_B v_j`.
    pub v_tilde: Matrix,
    pub m: Matrix,
    /// `A D_B v_k` for `k = s+1 .. r`, a basis of `Rg(AB)`.
    pub y_images: Matrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqualityCertificate {
    pub x: Matrix,
    pub y: Matrix,
    pub trace: ConstructionTrace,
}

#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Equality(EqualityCertificate),
    Strict(InequalityWitness),
}

/// Complement of the column span of `basis` in `F^n`, chosen greedily from
/// the standard basis.
fn standard_complement(basis: &Matrix) -> Result<Matrix> {
    let n = basis.rows();
    let full = extend_basis(basis, &Matrix::identity(basis.field(), n))?;
    Ok(full.column_range(basis.cols(), n))
}

pub fn construct_certificate(a: &Matrix, b: &Matrix, c: &Matrix) -> Result<Outcome> {
    let criteria = equality_criteria(a, b, c)?;
    construct_with_criteria(a, b, c, &criteria)
}

pub(crate) fn construct_with_criteria(
    a: &Matrix,
    b: &Matrix,
    c: &Matrix,
    criteria: &CriteriaReport,
) -> Result<Outcome> {
    if let Some(w) = &criteria.witness {
        return Ok(Outcome::Strict(w.clone()));
    }
    let Products { bc, .. } = Products::new(a, b, c)?;
    let field = b.field();
    let (m_dim, n_dim) = (a.rows(), b.rows());

    let d_b = pivot_column_basis(b);
    let r = d_b.cols();
    let v_b = kernel_basis(&a.matmul(&d_b)?);
    let s = v_b.cols();

    let kernel_part = d_b.matmul(&v_b)?;
    let extended_basis = extend_basis(&kernel_part, b)?;
    let outside = extended_basis.column_range(s, r);

    // Y: A D_B v_k -> D_B v_k, zero on the complement of Rg(AB)
    let y_images = a.matmul(&outside)?;
    let y_complement = standard_complement(&y_images)?;
    let y_domain = y_images.hstack(&y_complement)?;
    let y_targets = outside.hstack(&Matrix::zeros(field, n_dim, y_complement.cols()))?;
    let y = map_from_basis(&y_domain, &y_targets)?;

    let v_tilde = solve_right(&bc, &kernel_part)?
        .ok_or_else(|| Error::InternalDisagreement("Rg(B) ∩ Ker(A) is not inside Rg(BC)".into()))?;

    // M: D_B v_j -> ṽ_j for j <= s, zero on the rest of the basis and on the
    // complement of Rg(B)
    let q_dim = c.cols();
    let m_complement = standard_complement(&extended_basis)?;
    let m_domain = extended_basis.hstack(&m_complement)?;
    let m_targets = v_tilde.hstack(&Matrix::zeros(field, q_dim, n_dim - s))?;
    let m = map_from_basis(&m_domain, &m_targets)?;

    let x = m.matmul(b)?;
    debug_assert_eq!(y.shape(), (n_dim, m_dim));

    if !verify_certificate(a, b, c, &x, &y)? {
        return Err(Error::InternalDisagreement(
            "constructed certificate does not satisfy B = BCX + YAB".into(),
        ));
    }

    Ok(Outcome::Equality(EqualityCertificate {
        x,
        y,
        trace: ConstructionTrace {
            d_b,
            v_b,
            s,
            r,
            extended_basis,
            v_tilde,
            m,
            y_images,
        },
    }))
}

/// True iff `B - BC X - Y A B` is exactly zero.
pub fn verify_certificate(
    a: &Matrix,
    b: &Matrix,
    c: &Matrix,
    x: &Matrix,
    y: &Matrix,
) -> Result<bool> {
    let Products { ab, bc, .. } = Products::new(a, b, c)?;
    if x.shape() != (c.cols(), b.cols()) {
        return Err(Error::dims(
            "verify_certificate (X)",
            x.shape(),
            (c.cols(), b.cols()),
        ));
    }
    if y.shape() != (b.rows(), a.rows()) {
        return Err(Error::dims(
            "verify_certificate (Y)",
            y.shape(),
            (b.rows(), a.rows()),
        ));
    }
    let residual = b.sub(&bc.matmul(x)?)?.sub(&y.matmul(&ab)?)?;
    Ok(residual.is_zero())
}

/// Nonzero scalar multipliers in enumeration order: `1, -1, 2, -2, ...` over
/// the rationals, `1, 2, .., p-1` over `GF(p)`.
fn multipliers(field: FieldSpec) -> Box<dyn Iterator<Item = Scalar>> {
    match field {
        FieldSpec::Rationals => {
            Box::new((1i64..).flat_map(move |k| [field.from_i64(k), field.from_i64(-k)]))
        }
        FieldSpec::PrimeField(p) => Box::new((1..p.get() as i64).map(move |k| field.from_i64(k))),
    }
}

/// Further solutions derived from a verified pair.
///
/// Each member adds one rank-one perturbation to the base pair: either
/// `c * k e_j^T` to `X`, where `k` is a kernel basis vector of `BC` and `j` a
/// column slot of `X`, or `c * e_i l` to `Y`, where `l` is a basis row of the
/// left null space of `AB` and `i` a row slot of `Y`. Multipliers `c` form
/// the outer loop (see `multipliers`), then `X` perturbations before `Y`
/// perturbations, then basis vector, then slot. Over a prime field the
/// enumeration is finite and may yield fewer than `count` pairs.
pub fn solution_family(
    a: &Matrix,
    b: &Matrix,
    c: &Matrix,
    base_x: &Matrix,
    base_y: &Matrix,
    count: usize,
) -> Result<Vec<(Matrix, Matrix)>> {
    if !verify_certificate(a, b, c, base_x, base_y)? {
        return Err(Error::BaseInvalid);
    }
    let Products { ab, bc, .. } = Products::new(a, b, c)?;
    let field = b.field();

    let right_kernel = kernel_basis(&bc);
    let left_null = kernel_basis(&ab.transpose()).transpose();

    let x_slots = base_x.cols();
    let y_slots = base_y.rows();
    let per_multiplier = right_kernel.cols() * x_slots + left_null.rows() * y_slots;

    let mut out = Vec::new();
    if count == 0 || per_multiplier == 0 {
        return Ok(out);
    }

    'outer: for coeff in multipliers(field) {
        for k in 0..right_kernel.cols() {
            let dir = right_kernel.column(k).scale(&coeff);
            for slot in 0..x_slots {
                let mut x = base_x.clone();
                for i in 0..x.rows() {
                    x.set(i, slot, x.get(i, slot) + dir.get(i, 0));
                }
                out.push((x, base_y.clone()));
                if out.len() == count {
                    break 'outer;
                }
            }
        }
        for l in 0..left_null.rows() {
            let dir = left_null.row_range(l, l + 1).scale(&coeff);
            for slot in 0..y_slots {
                let mut y = base_y.clone();
                for j in 0..y.cols() {
                    y.set(slot, j, y.get(slot, j) + dir.get(0, j));
                }
                out.push((base_x.clone(), y));
                if out.len() == count {
                    break 'outer;
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn qm<R: AsRef<[i64]>>(rows: &[R]) -> Matrix {
        Matrix::from_int_rows(Q, rows)
    }

    fn parse(rows: &[&[&str]]) -> Matrix {
        Matrix::parse_rows(Q, rows).unwrap()
    }

    fn example() -> (Matrix, Matrix, Matrix) {
        (
            qm(&[[1, 1], [1, 1], [0, 0]]),
            qm(&[[1, 2, 3], [0, 1, 0]]),
            qm(&[[1, 1], [0, -1], [1, 0]]),
        )
    }

    fn certificate(a: &Matrix, b: &Matrix, c: &Matrix) -> EqualityCertificate {
        match construct_certificate(a, b, c).unwrap() {
            Outcome::Equality(cert) => cert,
            Outcome::Strict(w) => panic!("unexpected witness {w:?}"),
        }
    }

    #[test]
    fn example_trace() {
        let (a, b, c) = example();
        let cert = certificate(&a, &b, &c);
        let t = &cert.trace;
        assert_eq!(t.d_b, qm(&[[1, 2], [0, 1]]));
        assert_eq!(t.v_b, qm(&[[-3], [1]]));
        assert_eq!((t.s, t.r), (1, 2));
        assert_eq!(t.extended_basis, qm(&[[-1, 1], [1, 0]]));
        assert_eq!(t.v_tilde, parse(&[&["-1/2"], &["-1"]]));
        assert_eq!(t.m, parse(&[&["0", "-1/2"], &["0", "-1"]]));
        assert_eq!(t.y_images, qm(&[[1], [1], [0]]));
        assert_eq!(cert.x, parse(&[&["0", "-1/2", "0"], &["0", "-1", "0"]]));
        assert!(verify_certificate(&a, &b, &c, &cert.x, &cert.y).unwrap());
    }

    #[test]
    fn paper_pair_verifies() {
        let (a, b, c) = example();
        let x = parse(&[&["0", "-1/2", "0"], &["0", "-1", "0"]]);
        let y = qm(&[[1, 0, 0], [0, 0, 0]]);
        assert!(verify_certificate(&a, &b, &c, &x, &y).unwrap());
        assert!(
            !verify_certificate(&a, &b, &c, &Matrix::zeros(Q, 2, 3), &Matrix::zeros(Q, 2, 3))
                .unwrap()
        );
    }

    #[test]
    fn verify_identity_pair() {
        let b = qm(&[[1, 2], [3, 4], [5, 6]]);
        let a = Matrix::identity(Q, 3);
        let c = Matrix::identity(Q, 2);
        assert!(
            verify_certificate(&a, &b, &c, &Matrix::zeros(Q, 2, 2), &Matrix::identity(Q, 3))
                .unwrap()
        );
    }

    #[test]
    fn verify_rejects_bad_shapes() {
        let (a, b, c) = example();
        assert!(matches!(
            verify_certificate(&a, &b, &c, &Matrix::zeros(Q, 3, 3), &Matrix::zeros(Q, 2, 3)),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            verify_certificate(&a, &b, &c, &Matrix::zeros(Q, 2, 3), &Matrix::zeros(Q, 3, 3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn trace_invariants_hold_on_example() {
        let (a, b, c) = example();
        let t = certificate(&a, &b, &c).trace;
        let bc = b.matmul(&c).unwrap();
        let first = t.extended_basis.column_range(0, t.s);
        assert_eq!(bc.matmul(&t.v_tilde).unwrap(), first);
        assert!(a.matmul(&first).unwrap().is_zero());
        assert_eq!(crate::reduce::rank(&t.y_images), t.r - t.s);
    }

    #[test]
    fn zero_b_gives_zero_certificate() {
        let a = qm(&[[1, 2], [0, 1], [3, 3]]);
        let b = Matrix::zeros(Q, 2, 3);
        let c = qm(&[[1, 0, 1, 1], [0, 1, 1, 0], [2, 2, 0, 1]]);
        let cert = certificate(&a, &b, &c);
        assert!(cert.x.is_zero() && cert.y.is_zero());
        assert_eq!(cert.x.shape(), (4, 3));
        assert_eq!(cert.y.shape(), (2, 3));
    }

    #[test]
    fn strict_triple_gives_witness() {
        let p = qm(&[[1, 0], [0, 0]]);
        match construct_certificate(&p, &Matrix::identity(Q, 2), &p).unwrap() {
            Outcome::Strict(w) => assert_eq!(w.vector, qm(&[[0], [1]])),
            Outcome::Equality(_) => panic!("expected a witness"),
        }
    }

    #[test]
    fn family_on_example() {
        let (a, b, c) = example();
        let cert = certificate(&a, &b, &c);
        let fam = solution_family(&a, &b, &c, &cert.x, &cert.y, 1).unwrap();
        assert_eq!(fam.len(), 1);
        let (x, y) = &fam[0];
        assert_eq!(x, &cert.x);
        // left null space of AB starts with (-1, 1, 0)
        assert_eq!(y.sub(&cert.y).unwrap(), qm(&[[-1, 1, 0], [0, 0, 0]]));
        assert!(verify_certificate(&a, &b, &c, x, y).unwrap());

        let fam = solution_family(&a, &b, &c, &cert.x, &cert.y, 10).unwrap();
        assert_eq!(fam.len(), 10);
        let distinct: HashSet<_> = fam.iter().collect();
        assert_eq!(distinct.len(), 10);
        assert!(!fam.contains(&(cert.x.clone(), cert.y.clone())));
        for (x, y) in &fam {
            assert!(verify_certificate(&a, &b, &c, x, y).unwrap());
        }
    }

    #[test]
    fn family_empty_cases() {
        let (a, b, c) = example();
        let cert = certificate(&a, &b, &c);
        assert!(solution_family(&a, &b, &c, &cert.x, &cert.y, 0)
            .unwrap()
            .is_empty());

        let i = Matrix::identity(Q, 2);
        let inv = qm(&[[1, 1], [0, 1]]);
        let cert = certificate(&i, &inv, &i);
        assert!(solution_family(&i, &inv, &i, &cert.x, &cert.y, 5)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn family_is_finite_over_gf2() {
        let f2 = FieldSpec::prime(2).unwrap();
        let a = Matrix::from_int_rows(f2, &[[1, 1]]);
        let b = Matrix::identity(f2, 2);
        let c = Matrix::identity(f2, 2);
        let cert = match construct_certificate(&a, &b, &c).unwrap() {
            Outcome::Equality(cert) => cert,
            Outcome::Strict(_) => panic!(),
        };
        // Ker(BC) trivial, left null of AB trivial: AB = [1 1] has rank 1 = rows
        let fam = solution_family(&a, &b, &c, &cert.x, &cert.y, 100).unwrap();
        assert!(fam.is_empty());

        let c0 = Matrix::from_int_rows(f2, &[[1, 0], [0, 0]]);
        let a0 = Matrix::identity(f2, 2);
        let cert = match construct_certificate(&a0, &b, &c0).unwrap() {
            Outcome::Equality(cert) => cert,
            Outcome::Strict(_) => panic!(),
        };
        // one kernel vector of BC, two X column slots, multiplier 1 only
        let fam = solution_family(&a0, &b, &c0, &cert.x, &cert.y, 100).unwrap();
        assert_eq!(fam.len(), 2);
    }

    #[test]
    fn family_rejects_invalid_base() {
        let (a, b, c) = example();
        let z = Matrix::zeros(Q, 2, 3);
        assert_eq!(
            solution_family(&a, &b, &c, &z, &z, 3),
            Err(Error::BaseInvalid)
        );
    }
}
