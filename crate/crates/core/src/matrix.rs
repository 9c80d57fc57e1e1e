use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

/// Dense row-major matrix of exact scalars.
///
/// Zero-row and zero-column matrices are allowed; a matrix with no columns
/// is the canonical basis of the trivial subspace.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn new(field: FieldSpec, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::dims("Matrix::new", (rows, cols), (data.len(), 1)));
        }
        if let Some(bad) = data.iter().find(|s| !field.contains(s)) {
            return Err(Error::FieldMismatch {
                left: field,
                right: bad.field(),
            });
        }
        Ok(Matrix {
            rows,
            cols,
            field,
            data,
        })
    }

    pub fn from_fn(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let s = f(i, j);
                debug_assert_eq!(s.field(), field);
                data.push(s);
            }
        }
        Matrix {
            rows,
            cols,
            field,
            data,
        }
    }

    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            field,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        Self::from_fn(field, n, n, |i, j| field.from_i64((i == j) as i64))
    }

    /// Builds a matrix from integer rows. All rows must have equal length.
    pub fn from_int_rows<R: AsRef<[i64]>>(field: FieldSpec, rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        assert!(rows.iter().all(|r| r.as_ref().len() == cols), "ragged rows");
        Self::from_fn(field, rows.len(), cols, |i, j| {
            field.from_i64(rows[i].as_ref()[j])
        })
    }

    /// Builds a matrix from rows of scalar strings such as `"-1/2"`.
    pub fn parse_rows<R: AsRef<[S]>, S: AsRef<str>>(field: FieldSpec, rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::Parse(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for s in row {
                data.push(field.parse_scalar(s.as_ref())?);
            }
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            field,
            data,
        })
    }

    /// A single-column matrix.
    pub fn column_vector(field: FieldSpec, entries: Vec<Scalar>) -> Result<Self> {
        let n = entries.len();
        Self::new(field, n, 1, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of bounds"
        );
        &self.data[i * self.cols + j]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, v: Scalar) {
        debug_assert_eq!(v.field(), self.field);
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Scalar]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| {
            self.get(j, i).clone()
        })
    }

    pub fn column(&self, j: usize) -> Matrix {
        self.select_columns(&[j])
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, idx.len(), |i, j| {
            self.get(i, idx[j]).clone()
        })
    }

    /// Columns `start..end`.
    pub fn column_range(&self, start: usize, end: usize) -> Matrix {
        let idx: Vec<usize> = (start..end).collect();
        self.select_columns(&idx)
    }

    /// Rows `start..end`.
    pub fn row_range(&self, start: usize, end: usize) -> Matrix {
        assert!(start <= end && end <= self.rows);
        Matrix {
            rows: end - start,
            cols: self.cols,
            field: self.field,
            data: self.data[start * self.cols..end * self.cols].to_vec(),
        }
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if self.rows != other.rows {
            return Err(Error::dims("hstack", self.shape(), other.shape()));
        }
        Ok(Matrix::from_fn(
            self.field,
            self.rows,
            self.cols + other.cols,
            |i, j| {
                if j < self.cols {
                    self.get(i, j).clone()
                } else {
                    other.get(i, j - self.cols).clone()
                }
            },
        ))
    }

    fn same_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field,
                right: other.field,
            });
        }
        Ok(())
    }

    pub fn matmul(&self, rhs: &Matrix) -> Result<Matrix> {
        matmul(self, rhs)
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.zip_with("add", rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix> {
        self.zip_with("sub", rhs, |a, b| a - b)
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            data: self.data.iter().map(|x| x * c).collect(),
            ..self.clone()
        }
    }

    fn zip_with(
        &self,
        op: &'static str,
        rhs: &Matrix,
        f: impl Fn(&Scalar, &Scalar) -> Scalar,
    ) -> Result<Matrix> {
        self.same_field(rhs)?;
        if self.shape() != rhs.shape() {
            return Err(Error::dims(op, self.shape(), rhs.shape()));
        }
        Ok(Matrix {
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| f(a, b))
                .collect(),
            ..self.clone()
        })
    }
}

/// Exact product `lhs * rhs`.
pub fn matmul(lhs: &Matrix, rhs: &Matrix) -> Result<Matrix> {
    lhs.same_field(rhs)?;
    if lhs.cols != rhs.rows {
        return Err(Error::dims("matmul", lhs.shape(), rhs.shape()));
    }
    let field = lhs.field;
    Ok(Matrix::from_fn(field, lhs.rows, rhs.cols, |i, j| {
        let mut acc = field.zero();
        for k in 0..lhs.cols {
            let a = lhs.get(i, k);
            if !a.is_zero() {
                acc = &acc + &(a * rhs.get(k, j));
            }
        }
        acc
    }))
}

/// Bracketed rows with exact scalars, one row per line.
impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows == 0 || self.cols == 0 {
            return write!(f, "[] ({}x{})", self.rows, self.cols);
        }
        for (i, row) in self.row_iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            f.write_str("[")?;
            for (j, s) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{s}")?;
            }
            f.write_str("]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn example_a() -> Matrix {
        Matrix::from_int_rows(Q, &[[1, 1], [1, 1], [0, 0]])
    }
    fn example_b() -> Matrix {
        Matrix::from_int_rows(Q, &[[1, 2, 3], [0, 1, 0]])
    }
    fn example_c() -> Matrix {
        Matrix::from_int_rows(Q, &[[1, 1], [0, -1], [1, 0]])
    }

    #[test]
    fn example_products() {
        let ab = example_a().matmul(&example_b()).unwrap();
        assert_eq!(
            ab,
            Matrix::from_int_rows(Q, &[[1, 3, 3], [1, 3, 3], [0, 0, 0]])
        );
        let bc = example_b().matmul(&example_c()).unwrap();
        assert_eq!(bc, Matrix::from_int_rows(Q, &[[4, -1], [0, -1]]));
        let abc = ab.matmul(&example_c()).unwrap();
        assert_eq!(abc, Matrix::from_int_rows(Q, &[[4, -2], [4, -2], [0, 0]]));
    }

    #[test]
    fn identity_is_neutral() {
        let b = example_b();
        assert_eq!(Matrix::identity(Q, 2).matmul(&b).unwrap(), b);
        assert_eq!(b.matmul(&Matrix::identity(Q, 3)).unwrap(), b);
    }

    #[test]
    fn matmul_errors() {
        assert!(matches!(
            example_a().matmul(&example_c()),
            Err(Error::DimensionMismatch { op: "matmul", .. })
        ));
        let f2 = FieldSpec::prime(2).unwrap();
        assert!(matches!(
            example_a().matmul(&Matrix::identity(f2, 2)),
            Err(Error::FieldMismatch { .. })
        ));
    }

    #[test]
    fn empty_shapes_multiply() {
        let a = Matrix::zeros(Q, 3, 0);
        let b = Matrix::zeros(Q, 0, 2);
        let p = a.matmul(&b).unwrap();
        assert_eq!(p.shape(), (3, 2));
        assert!(p.is_zero());
        assert_eq!(b.matmul(&Matrix::zeros(Q, 2, 0)).unwrap().shape(), (0, 0));
    }

    #[test]
    fn parse_and_display() {
        let m = Matrix::parse_rows(Q, &[["0", "-2/4", "0"], ["0", "-1", "0"]]).unwrap();
        assert_eq!(m.to_string(), "[0 -1/2 0]\n[0 -1 0]");
        assert!(Matrix::parse_rows(Q, &[vec!["1", "2"], vec!["3"]]).is_err());
        assert_eq!(Matrix::zeros(Q, 2, 0).to_string(), "[] (2x0)");
    }

    #[test]
    fn new_checks_field_and_length() {
        let f3 = FieldSpec::prime(3).unwrap();
        assert!(Matrix::new(Q, 1, 2, vec![Q.one()]).is_err());
        assert!(matches!(
            Matrix::new(Q, 1, 1, vec![f3.one()]),
            Err(Error::FieldMismatch { .. })
        ));
    }

    #[test]
    fn slicing_and_stacking() {
        let b = example_b();
        assert_eq!(b.column(2), Matrix::from_int_rows(Q, &[[3], [0]]));
        assert_eq!(
            b.column_range(0, 2),
            Matrix::from_int_rows(Q, &[[1, 2], [0, 1]])
        );
        assert_eq!(b.row_range(1, 2), Matrix::from_int_rows(Q, &[[0, 1, 0]]));
        let s = b.column_range(0, 1).hstack(&b.column_range(1, 3)).unwrap();
        assert_eq!(s, b);
        assert_eq!(b.transpose().transpose(), b);
        assert!(b.hstack(&example_a()).is_err());
    }
}
