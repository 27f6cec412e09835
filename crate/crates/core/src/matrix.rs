//! Dense matrices over an exact field: rank, inverses, division-free
//! characteristic polynomials, and commutant dimensions.

use std::fmt;

use serde::de::Error as DeError;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::poly::Poly;
use crate::scalar::{FieldSpec, Scalar};

/// A dense row-major matrix with entries in a single exact field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn new(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        entries: Vec<Scalar>,
    ) -> Result<Self, Error> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::BadShape);
        }
        if entries.iter().any(|e| e.field() != field) {
            return Err(Error::BadShape);
        }
        Ok(Matrix {
            rows,
            cols,
            field,
            entries,
        })
    }

    pub fn from_fn(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let entries = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Matrix {
            rows,
            cols,
            field,
            entries,
        }
    }

    /// Convenience constructor from integer rows; for tests and examples.
    pub fn from_i64_rows(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows[0].len();
        assert!(rows.iter().all(|row| row.len() == c));
        Matrix::from_fn(field, r, c, |i, j| field.from_i64(rows[i][j]))
    }

    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix::from_fn(field, rows, cols, |_, _| field.zero())
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        Matrix::from_fn(
            field,
            n,
            n,
            |i, j| if i == j { field.one() } else { field.zero() },
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert_eq!(v.field(), self.field, "mixed fields");
        self.entries[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| {
            self.get(j, i).clone()
        })
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        assert_eq!(self.field, rhs.field, "mixed fields");
        Matrix::from_fn(self.field, self.rows, rhs.cols, |i, j| {
            let mut acc = self.field.zero();
            for k in 0..self.cols {
                acc = acc.add(&self.get(i, k).mul(rhs.get(k, j)));
            }
            acc
        })
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        assert_eq!(self.field, rhs.field, "mixed fields");
        Matrix::from_fn(self.field, self.rows, self.cols, |i, j| {
            self.get(i, j).add(rhs.get(i, j))
        })
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        assert_eq!(self.field, rhs.field, "mixed fields");
        Matrix::from_fn(self.field, self.rows, self.cols, |i, j| {
            self.get(i, j).sub(rhs.get(i, j))
        })
    }

    /// `self - alpha * I`.
    pub fn shift(&self, alpha: &Scalar) -> Matrix {
        assert!(self.is_square());
        Matrix::from_fn(self.field, self.rows, self.cols, |i, j| {
            if i == j {
                self.get(i, j).sub(alpha)
            } else {
                self.get(i, j).clone()
            }
        })
    }

    /// Block-diagonal assembly; at least one block required.
    pub fn block_diag(blocks: &[Matrix]) -> Matrix {
        assert!(!blocks.is_empty());
        let field = blocks[0].field;
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zero(field, n, c);
        let (mut ro, mut co) = (0, 0);
        for b in blocks {
            assert_eq!(b.field, field, "mixed fields");
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(ro + i, co + j, b.get(i, j).clone());
                }
            }
            ro += b.rows;
            co += b.cols;
        }
        out
    }

    /// Exact rank by Gaussian elimination over the field.
    pub fn rank(&self) -> usize {
        let (r, c) = (self.rows, self.cols);
        let mut m = self.entries.clone();
        let mut rank = 0;
        for col in 0..c {
            if rank == r {
                break;
            }
            let Some(piv) = (rank..r).find(|&i| !m[i * c + col].is_zero()) else {
                continue;
            };
            if piv != rank {
                for j in 0..c {
                    m.swap(piv * c + j, rank * c + j);
                }
            }
            let inv = m[rank * c + col].inv();
            for j in col..c {
                m[rank * c + j] = m[rank * c + j].mul(&inv);
            }
            for i in (rank + 1)..r {
                if m[i * c + col].is_zero() {
                    continue;
                }
                let f = m[i * c + col].clone();
                for j in col..c {
                    let t = f.mul(&m[rank * c + j]);
                    m[i * c + j] = m[i * c + j].sub(&t);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(self.field, n);
        for col in 0..n {
            let piv = (col..n).find(|&i| !a.get(i, col).is_zero())?;
            if piv != col {
                for j in 0..n {
                    let t = a.get(piv, j).clone();
                    a.set(piv, j, a.get(col, j).clone());
                    a.set(col, j, t);
                    let t = inv.get(piv, j).clone();
                    inv.set(piv, j, inv.get(col, j).clone());
                    inv.set(col, j, t);
                }
            }
            let s = a.get(col, col).inv();
            for j in 0..n {
                a.set(col, j, a.get(col, j).mul(&s));
                inv.set(col, j, inv.get(col, j).mul(&s));
            }
            for i in 0..n {
                if i == col || a.get(i, col).is_zero() {
                    continue;
                }
                let f = a.get(i, col).clone();
                for j in 0..n {
                    let t = a.get(col, j).mul(&f);
                    a.set(i, j, a.get(i, j).sub(&t));
                    let t = inv.get(col, j).mul(&f);
                    inv.set(i, j, inv.get(i, j).sub(&t));
                }
            }
        }
        Some(inv)
    }

    /// Characteristic polynomial det(xI - A) by the division-free
    /// Samuelson-Berkowitz recursion, so small prime fields are handled
    /// uniformly.
    ///
    /// For the leading r x r block, with M the leading (r-1) x (r-1) block,
    /// R the left part of row r-1, S the top part of column r-1 and a the
    /// corner entry:
    ///
    ///   chi_r(x) = (x - a) chi_{r-1}(x) - sum_j (sum_i c_i R M^{j-i} S) x^{r-2-j}
    pub fn char_poly(&self) -> Result<Poly, Error> {
        if !self.is_square() {
            return Err(Error::NotSquare);
        }
        let n = self.rows;
        let f = self.field;
        // c[t] is the coefficient of x^{r-t} in chi_r, c[0] = 1.
        let mut c = vec![f.one(), self.get(0, 0).neg()];
        for r in 2..=n {
            // w[k] = R M^k S for k = 0 .. r-2
            let mut u: Vec<Scalar> = (0..r - 1).map(|i| self.get(i, r - 1).clone()).collect();
            let mut w = Vec::with_capacity(r - 1);
            for k in 0..r - 1 {
                let mut dot = f.zero();
                for (j, uj) in u.iter().enumerate() {
                    dot = dot.add(&self.get(r - 1, j).mul(uj));
                }
                w.push(dot);
                if k + 1 < r - 1 {
                    u = (0..r - 1)
                        .map(|i| {
                            let mut s = f.zero();
                            for (j, uj) in u.iter().enumerate() {
                                s = s.add(&self.get(i, j).mul(uj));
                            }
                            s
                        })
                        .collect();
                }
            }
            let a = self.get(r - 1, r - 1);
            let mut d = Vec::with_capacity(r + 1);
            for t in 0..=r {
                let mut v = if t < r { c[t].clone() } else { f.zero() };
                if t >= 1 {
                    v = v.sub(&a.mul(&c[t - 1]));
                }
                d.push(v);
            }
            for j in 0..=r - 2 {
                let mut s = f.zero();
                for i in 0..=j {
                    s = s.add(&c[i].mul(&w[j - i]));
                }
                d[j + 2] = d[j + 2].sub(&s);
            }
            c = d;
        }
        Ok(Poly::from_descending(f, c))
    }

    /// The n^2 x n^2 matrix of X -> AX - XA in the standard basis.
    pub fn commutation_operator(&self) -> Result<Matrix, Error> {
        if !self.is_square() {
            return Err(Error::NotSquare);
        }
        let n = self.rows;
        Ok(Matrix::from_fn(self.field, n * n, n * n, |rc, kl| {
            let (i, j) = (rc / n, rc % n);
            let (k, l) = (kl / n, kl % n);
            let mut v = self.field.zero();
            if j == l {
                v = v.add(self.get(i, k));
            }
            if i == k {
                v = v.sub(self.get(l, j));
            }
            v
        }))
    }

    /// Dimension of the commutant {X : AX = XA}, as n^2 minus the rank of
    /// the commutation operator. This is the rank oracle for the
    /// partition-formula centralizer dimensions.
    pub fn commutant_dim(&self) -> Result<usize, Error> {
        let n = self.rows;
        let op = self.commutation_operator()?;
        Ok(n * n - op.rank())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Matrix", 2)?;
        st.serialize_field("field", &self.field)?;
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect())
            .collect();
        st.serialize_field("entries", &rows)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            field: FieldSpec,
            entries: Vec<Vec<String>>,
        }
        let repr = Repr::deserialize(deserializer)?;
        let rows = repr.entries.len();
        if rows == 0 {
            return Err(D::Error::custom(Error::BadShape));
        }
        let cols = repr.entries[0].len();
        if cols == 0 || repr.entries.iter().any(|r| r.len() != cols) {
            return Err(D::Error::custom(Error::BadShape));
        }
        let mut entries = Vec::with_capacity(rows * cols);
        for row in &repr.entries {
            for s in row {
                entries.push(repr.field.parse(s).map_err(D::Error::custom)?);
            }
        }
        Matrix::new(repr.field, rows, cols, entries).map_err(D::Error::custom)
    }
}

#[cfg(test)]
pub(crate) mod testutil {
    use super::*;
    use rand::Rng;

    pub fn random_matrix(field: FieldSpec, n: usize, rng: &mut impl Rng) -> Matrix {
        Matrix::from_fn(field, n, n, |_, _| match field {
            FieldSpec::Rational => field.from_i64(rng.random_range(-5..=5)),
            FieldSpec::Prime(p) => field.from_i64(rng.random_range(0..p as i64)),
        })
    }

    pub fn random_invertible(field: FieldSpec, n: usize, rng: &mut impl Rng) -> Matrix {
        loop {
            let m = random_matrix(field, n, rng);
            if m.rank() == n {
                return m;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const Q: FieldSpec = FieldSpec::Rational;

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::zero(Q, 3, 3).rank(), 0);
        assert_eq!(Matrix::identity(Q, 4).rank(), 4);
        let m = Matrix::from_i64_rows(Q, &[&[1, 2], &[2, 4]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn rank_equals_transpose_rank_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for field in [Q, FieldSpec::Prime(5)] {
            for n in 1..=6 {
                for _ in 0..10 {
                    let m = testutil::random_matrix(field, n, &mut rng);
                    assert_eq!(m.rank(), m.transpose().rank());
                }
            }
        }
    }

    #[test]
    fn char_poly_companion() {
        // companion matrix of x^2 - x - 1
        let m = Matrix::from_i64_rows(Q, &[&[0, 1], &[1, 1]]);
        let chi = m.char_poly().unwrap();
        let expected = Poly::from_descending(Q, vec![Q.one(), Q.from_i64(-1), Q.from_i64(-1)]);
        assert_eq!(chi, expected);
    }

    #[test]
    fn char_poly_jordan_block_and_diag() {
        let j2 = Matrix::from_i64_rows(Q, &[&[3, 1], &[0, 3]]);
        let chi = j2.char_poly().unwrap();
        // (x-3)^2 = x^2 - 6x + 9
        assert_eq!(
            chi,
            Poly::from_descending(Q, vec![Q.one(), Q.from_i64(-6), Q.from_i64(9)])
        );

        let d = Matrix::from_i64_rows(Q, &[&[1, 0, 0], &[0, 2, 0], &[0, 0, 3]]);
        // (x-1)(x-2)(x-3) = x^3 - 6x^2 + 11x - 6
        assert_eq!(
            d.char_poly().unwrap(),
            Poly::from_descending(
                Q,
                vec![Q.one(), Q.from_i64(-6), Q.from_i64(11), Q.from_i64(-6)]
            )
        );
    }

    #[test]
    fn char_poly_division_free_over_small_prime() {
        // 3x3 over F_2: p <= n exercises the division-free path.
        let f2 = FieldSpec::Prime(2);
        let m = Matrix::from_i64_rows(f2, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        let chi = m.char_poly().unwrap();
        // det(xI - A) over F_2: x^3 + x^2 + ... compute by cofactor by hand:
        // (x-1)^3 - 1 = x^3 + 3x^2... over F_2: expand exactly below.
        // Independent check: evaluate at all field points equals det(xI - A).
        for v in 0..2 {
            let x = f2.from_i64(v);
            let xi = Matrix::from_fn(f2, 3, 3, |i, j| {
                if i == j {
                    x.sub(m.get(i, j))
                } else {
                    m.get(i, j).neg()
                }
            });
            // determinant via char_poly of 1x1 fallback: use rank trick instead
            let det_zero = xi.rank() < 3;
            assert_eq!(chi.eval(&x).is_zero(), det_zero);
        }
    }

    #[test]
    fn char_poly_similarity_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for field in [Q, FieldSpec::Prime(7)] {
            for n in 2..=5 {
                let a = testutil::random_matrix(field, n, &mut rng);
                let p = testutil::random_invertible(field, n, &mut rng);
                let conj = p.mul(&a).mul(&p.inverse().unwrap());
                assert_eq!(a.char_poly().unwrap(), conj.char_poly().unwrap());
            }
        }
    }

    #[test]
    fn commutant_examples() {
        let scalar3 = Matrix::from_i64_rows(Q, &[&[4, 0, 0], &[0, 4, 0], &[0, 0, 4]]);
        assert_eq!(scalar3.commutant_dim().unwrap(), 9);

        // single 4x4 Jordan block at 0: regular, commutant dim = n
        let j4 = Matrix::from_fn(Q, 4, 4, |i, j| if j == i + 1 { Q.one() } else { Q.zero() });
        assert_eq!(j4.commutant_dim().unwrap(), 4);

        let d = Matrix::from_i64_rows(Q, &[&[1, 0], &[0, 2]]);
        assert_eq!(d.commutant_dim().unwrap(), 2);
    }

    #[test]
    fn inverse_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for field in [Q, FieldSpec::Prime(5)] {
            let m = testutil::random_invertible(field, 4, &mut rng);
            let inv = m.inverse().unwrap();
            assert_eq!(m.mul(&inv), Matrix::identity(field, 4));
        }
        let singular = Matrix::from_i64_rows(Q, &[&[1, 2], &[2, 4]]);
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn json_format() {
        let m: Matrix = serde_json::from_str(
            r#"{"field":{"kind":"rational"},"entries":[["1/2","0"],["3","-1"]]}"#,
        )
        .unwrap();
        assert_eq!(m.get(0, 0).to_string(), "1/2");
        assert_eq!(m.get(1, 1).to_string(), "-1");
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(
            json,
            r#"{"field":{"kind":"rational"},"entries":[["1/2","0"],["3","-1"]]}"#
        );
        // ragged and empty shapes rejected
        assert!(serde_json::from_str::<Matrix>(
            r#"{"field":{"kind":"rational"},"entries":[["1"],["2","3"]]}"#
        )
        .is_err());
        assert!(
            serde_json::from_str::<Matrix>(r#"{"field":{"kind":"rational"},"entries":[]}"#)
                .is_err()
        );
    }
}
