//! Ground truth at desk scale.
//!
//! [`brute_force_solvable`] enumerates every `(X, Y)` over `GF(p)` with plain
//! residue arithmetic, independent of the elimination code in `reduce`.
//! [`random_instance`] draws triples from a fixed, documented generator so
//! test corpora are reproducible.

use num_bigint::BigInt;

use crate::analysis::check_chain;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::Matrix;

pub const DEFAULT_BUDGET: u64 = 1 << 20;

/// Dense residue matrix used by the enumerator.
struct Residues {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl Residues {
    fn of(m: &Matrix) -> Self {
        Residues {
            rows: m.rows(),
            cols: m.cols(),
            data: m
                .entries()
                .iter()
                .map(|s| s.residue().expect("prime field"))
                .collect(),
        }
    }

    fn mul(&self, rhs: &Residues, p: u64) -> Residues {
        let mut data = vec![0u64; self.rows * rhs.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u128;
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let cell = &mut data[i * rhs.cols + j];
                    *cell = ((*cell as u128 + a * rhs.data[k * rhs.cols + j] as u128) % p as u128)
                        as u64;
                }
            }
        }
        Residues {
            rows: self.rows,
            cols: rhs.cols,
            data,
        }
    }
}

/// Decides `B = BCX + YAB` by trying every `X` (q x p) and `Y` (n x m) over
/// `GF(p)`.
///
/// Candidates are visited as a single odometer over the entries of `X` in
/// row-major order followed by those of `Y` in row-major order; the last
/// entry of `Y` turns fastest. Fails with [`Error::BudgetExceeded`] when the
/// number of candidate pairs is above `budget`.
pub fn brute_force_solvable(a: &Matrix, b: &Matrix, c: &Matrix, budget: u64) -> Result<bool> {
    check_chain(a, b, c)?;
    let field = b.field();
    let FieldSpec::PrimeField(prime) = field else {
        return Err(Error::NotFiniteField(field));
    };
    let p = prime.get();
    let (m, n, pd, q) = (a.rows(), b.rows(), b.cols(), c.cols());
    let x_len = q * pd;
    let y_len = n * m;
    let digits = x_len + y_len;

    let needed = BigInt::from(p).pow(digits as u32);
    if needed > BigInt::from(budget) {
        return Err(Error::BudgetExceeded {
            needed: format!("{p}^{digits} = {needed}"),
            budget,
        });
    }

    let ra = Residues::of(a);
    let rb = Residues::of(b);
    let rc = Residues::of(c);
    let ab = ra.mul(&rb, p);
    let bc = rb.mul(&rc, p);

    let mut x = Residues {
        rows: q,
        cols: pd,
        data: vec![0; x_len],
    };
    let mut y = Residues {
        rows: n,
        cols: m,
        data: vec![0; y_len],
    };

    loop {
        let bcx = bc.mul(&x, p);
        let yab = y.mul(&ab, p);
        let hit = (0..n * pd).all(|i| (bcx.data[i] + yab.data[i]) % p == rb.data[i]);
        if hit {
            return Ok(true);
        }
        if !advance(&mut x.data, &mut y.data, p) {
            return Ok(false);
        }
    }
}

/// Steps the odometer; false once every candidate has been visited.
fn advance(x: &mut [u64], y: &mut [u64], p: u64) -> bool {
    for d in y.iter_mut().rev().chain(x.iter_mut().rev()) {
        *d += 1;
        if *d < p {
            return true;
        }
        *d = 0;
    }
    false
}

/// SplitMix64, the generator behind [`random_instance`].
///
/// State advances by `0x9E3779B97F4A7C15`; output is the state passed
/// through `z ^= z >> 30; z *= 0xBF58476D1CE4E5B9; z ^= z >> 27;
/// z *= 0x94D049BB133111EB; z ^= z >> 31` (wrapping arithmetic).
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform value in `0..n` by rejection of the biased tail.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        let zone = u64::MAX - (u64::MAX % n);
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % n;
            }
        }
    }
}

/// Rational entries are `a / d` with `a` uniform in
/// `[-numerator_bound, numerator_bound]` and `d` uniform in
/// `1..=max_denominator`. Ignored over prime fields, where entries are
/// uniform residues.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EntryPool {
    pub numerator_bound: i64,
    pub max_denominator: i64,
}

impl Default for EntryPool {
    fn default() -> Self {
        EntryPool {
            numerator_bound: 3,
            max_denominator: 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InstanceSpec {
    pub field: FieldSpec,
    /// `(m, n, p, q)`: A is m x n, B is n x p, C is p x q.
    pub dims: (usize, usize, usize, usize),
    pub seed: u64,
    pub pool: EntryPool,
}

impl InstanceSpec {
    pub fn new(field: FieldSpec, dims: (usize, usize, usize, usize), seed: u64) -> Self {
        InstanceSpec {
            field,
            dims,
            seed,
            pool: EntryPool::default(),
        }
    }
}

/// Draws a matrix's entries from `rng`, row-major.
pub fn random_matrix(
    rng: &mut SplitMix64,
    field: FieldSpec,
    pool: EntryPool,
    rows: usize,
    cols: usize,
) -> Matrix {
    Matrix::from_fn(field, rows, cols, |_, _| match field {
        FieldSpec::Rationals => {
            let span = (2 * pool.numerator_bound + 1) as u64;
            let numer = rng.below(span) as i64 - pool.numerator_bound;
            let denom = rng.below(pool.max_denominator as u64) as i64 + 1;
            field
                .from_ratio(&BigInt::from(numer), &BigInt::from(denom))
                .expect("nonzero denominator")
        }
        FieldSpec::PrimeField(p) => field.from_i64(rng.below(p.get()) as i64),
    })
}

/// Fills A, then B, then C from a generator seeded with `spec.seed`.
pub fn random_instance(spec: &InstanceSpec) -> (Matrix, Matrix, Matrix) {
    let (m, n, p, q) = spec.dims;
    let mut rng = SplitMix64::new(spec.seed);
    let a = random_matrix(&mut rng, spec.field, spec.pool, m, n);
    let b = random_matrix(&mut rng, spec.field, spec.pool, n, p);
    let c = random_matrix(&mut rng, spec.field, spec.pool, p, q);
    (a, b, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Scalar;
    use num_rational::BigRational;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn strict_fixture_unsolvable_over_gf2() {
        let f = gf(2);
        let p = Matrix::from_int_rows(f, &[[1, 0], [0, 0]]);
        let i = Matrix::identity(f, 2);
        assert!(!brute_force_solvable(&p, &i, &p, DEFAULT_BUDGET).unwrap());
    }

    #[test]
    fn identity_triple_solvable() {
        let i = Matrix::identity(gf(2), 2);
        assert!(brute_force_solvable(&i, &i, &i, DEFAULT_BUDGET).unwrap());
    }

    #[test]
    fn budget_and_field_errors() {
        let f = gf(3);
        let z = Matrix::zeros(f, 3, 3);
        assert!(matches!(
            brute_force_solvable(&z, &z, &z, DEFAULT_BUDGET),
            Err(Error::BudgetExceeded { .. })
        ));
        let q = Matrix::identity(FieldSpec::Rationals, 2);
        assert!(matches!(
            brute_force_solvable(&q, &q, &q, DEFAULT_BUDGET),
            Err(Error::NotFiniteField(_))
        ));
        // exactly at budget is allowed: 2^8 = 256
        let f2 = gf(2);
        let i = Matrix::identity(f2, 2);
        assert!(brute_force_solvable(&i, &i, &i, 256).unwrap());
        assert!(brute_force_solvable(&i, &i, &i, 255).is_err());
    }

    #[test]
    fn odometer_visits_everything_once() {
        let mut x = [0u64; 2];
        let mut y = [0u64; 1];
        let mut seen = vec![(x, y)];
        while advance(&mut x, &mut y, 3) {
            seen.push((x, y));
        }
        assert_eq!(seen.len(), 27);
        assert_eq!(seen[1], ([0, 0], [1]));
        assert_eq!(seen[3], ([0, 1], [0]));
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 27);
    }

    #[test]
    fn splitmix_reference_values() {
        // Reference outputs of SplitMix64 seeded with 0.
        let mut g = SplitMix64::new(0);
        assert_eq!(g.next_u64(), 0xE220_A839_7B1D_CDAF);
        assert_eq!(g.next_u64(), 0x6E78_9E6A_A1B9_65F4);
    }

    #[test]
    fn instances_are_reproducible() {
        let spec = InstanceSpec::new(gf(2), (2, 2, 2, 2), 0);
        let (a, b, c) = random_instance(&spec);
        assert_eq!((a.shape(), b.shape(), c.shape()), ((2, 2), (2, 2), (2, 2)));
        assert_eq!(random_instance(&spec), (a, b, c));
        let other = random_instance(&InstanceSpec::new(gf(2), (2, 2, 2, 2), 1));
        assert_ne!(other, random_instance(&spec));
    }

    #[test]
    fn rational_instances_respect_pool() {
        let spec = InstanceSpec::new(FieldSpec::Rationals, (3, 2, 2, 2), 7);
        let (a, b, c) = random_instance(&spec);
        assert_eq!((a.shape(), b.shape(), c.shape()), ((3, 2), (2, 2), (2, 2)));
        let allowed: Vec<Scalar> = (-3..=3)
            .flat_map(|n| {
                (1..=2).map(move |d| Scalar::Rational(BigRational::new(n.into(), d.into())))
            })
            .collect();
        for m in [&a, &b, &c] {
            assert!(m.entries().iter().all(|s| allowed.contains(s)));
        }
    }

    #[test]
    fn uniform_below_stays_in_range() {
        let mut g = SplitMix64::new(42);
        let mut counts = [0usize; 5];
        for _ in 0..5000 {
            counts[g.below(5) as usize] += 1;
        }
        assert!(counts.iter().all(|&c| c > 800 && c < 1200), "{counts:?}");
    }
}
