//! Exact rational scalars, dense matrices and the elimination kernel.
//!
//! Everything in the engine is computed over `BigRational`; there is no
//! floating point anywhere. Elimination always pivots on the first nonzero
//! entry of a column so that kernel bases are reproducible bit for bit.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Scalar = BigRational;

/// Integer scalar.
pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// `num / den` in lowest terms. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `p`, `-p`, or `p/q` (surrounding whitespace allowed).
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let s = text.trim();
    let bad = || Error::Parse(format!("malformed rational '{text}'"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Scalar::new(num, den))
}

/// Canonical text: `p` for integers, `p/q` otherwise.
pub fn format_scalar(x: &Scalar) -> String {
    x.to_string()
}

/// Dense row-major matrix over `Scalar`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(format_scalar).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&x| int(x)).collect())
                .collect(),
        )
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn diagonal(entries: &[Scalar]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, x) in entries.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    /// Matrix unit `E_{ij}` of size `n`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m[(i, j)] = Scalar::one();
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)].clone())
            .fold(Scalar::zero(), |a, b| a + b)
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Matrix { data, ..*self })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Matrix { data, ..*self })
    }

    pub fn scale(&self, k: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a * k).collect();
        Matrix { data, ..*self }
    }

    /// `self += k * other`, shapes must agree.
    pub fn add_scaled(&mut self, k: &Scalar, other: &Matrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if k.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a += k * b;
            }
        }
    }

    /// Matrix product. Zero entries of the left factor are skipped, which keeps
    /// products of the very sparse representation matrices cheap.
    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..m.cols {
                    m.data.swap(p * m.cols + c, row * m.cols + c);
                }
            }
            let inv = m[(row, col)].recip();
            for c in col..m.cols {
                let x = &m[(row, c)] * &inv;
                m[(row, c)] = x;
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for c in col..m.cols {
                    if m[(row, c)].is_zero() {
                        continue;
                    }
                    let x = &factor * &m[(row, c)];
                    m[(r, c)] -= x;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space, one vector per free column, with that
    /// free variable set to one.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[free] = Scalar::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(row, free)].clone();
                }
                v
            })
            .collect()
    }

    pub fn determinant(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("determinant of non-square matrix".into()));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Scalar::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[(r, col)].is_zero()) else {
                return Ok(Scalar::zero());
            };
            if p != col {
                for c in 0..n {
                    m.data.swap(p * n + c, col * n + c);
                }
                det = -det;
            }
            let pivot = m[(col, col)].clone();
            det *= &pivot;
            for r in col + 1..n {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let factor = &m[(r, col)] / &pivot;
                for c in col..n {
                    let x = &factor * &m[(col, c)];
                    m[(r, c)] -= x;
                }
            }
        }
        Ok(det)
    }

    /// Leading principal minors `det(M[..k, ..k])` for `k = 1..=n`.
    pub fn leading_minors(&self) -> Result<Vec<Scalar>> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("minors of non-square matrix".into()));
        }
        (1..=self.rows)
            .map(|k| self.submatrix(&(0..k).collect::<Vec<_>>(), &(0..k).collect::<Vec<_>>()).determinant())
            .collect()
    }

    /// Sylvester's criterion; only meaningful for symmetric input.
    pub fn is_positive_definite(&self) -> bool {
        self.is_square()
            && *self == self.transpose()
            && self
                .leading_minors()
                .map(|ms| ms.iter().all(Signed::is_positive))
                .unwrap_or(false)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m[(i, j)] = self[(r, c)].clone();
            }
        }
        m
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, n + r)] = Scalar::one();
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(red.submatrix(&(0..n).collect::<Vec<_>>(), &(n..2 * n).collect::<Vec<_>>()))
    }

    /// Solves `self * x = b` exactly; `None` when inconsistent. Free variables are set to zero.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, self.cols)] = b[r].clone();
        }
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = red[(row, self.cols)].clone();
        }
        Some(x)
    }

    /// Largest `|numerator|` over all entries; zero exactly when the matrix is zero.
    pub fn max_abs_numerator(&self) -> BigInt {
        self.data
            .iter()
            .map(|x| x.numer().abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// Characteristic polynomial `det(xI - M)` as coefficients from the constant
    /// term up, monic. Faddeev–LeVerrier, exact over the rationals.
    pub fn char_poly(&self) -> Result<Vec<Scalar>> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("characteristic polynomial of non-square matrix".into()));
        }
        let n = self.rows;
        let mut coeffs = vec![Scalar::zero(); n + 1];
        coeffs[n] = Scalar::one();
        let mut m_k = Matrix::zeros(n, n);
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I
            let mut next = self.mul(&m_k)?;
            for i in 0..n {
                next[(i, i)] += &coeffs[n - k + 1];
            }
            let am = self.mul(&next)?;
            coeffs[n - k] = -am.trace() / int(k as i64);
            m_k = next;
        }
        Ok(coeffs)
    }
}

/// `ab - ba`.
pub fn commutator(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "commutator of {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    a.mul(b)?.sub(&b.mul(a)?)
}

/// Gram matrix `G[i][j] = form(v_i, v_j)`.
pub fn gram_matrix<V, F>(vectors: &[V], mut form: F) -> Matrix
where
    F: FnMut(&V, &V) -> Scalar,
{
    let n = vectors.len();
    let mut g = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            g[(i, j)] = form(&vectors[i], &vectors[j]);
        }
    }
    g
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Scalar::zero(), |acc, (x, y)| acc + x * y)
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Incrementally maintained span of dense vectors, kept in reduced echelon form.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    len: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
    originals: Vec<Vec<Scalar>>,
}

impl Echelon {
    pub fn new(len: usize) -> Self {
        Echelon {
            len,
            ..Default::default()
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut r = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (x, y) in r.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    /// Adds `v` if it is independent of the current span; returns whether it was added.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.len, "vector length mismatch");
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].recip();
        for x in r.iter_mut() {
            *x *= &inv;
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&r) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.rows.push(r);
        self.pivots.push(p);
        self.originals.push(v.to_vec());
        true
    }

    /// The inserted (independent) vectors in insertion order.
    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.originals
    }
}

/// Rank of a family of vectors of equal length.
pub fn rank_of(vectors: &[Vec<Scalar>]) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    let mut e = Echelon::new(first.len());
    for v in vectors {
        e.insert(v);
    }
    e.dim()
}

/// Rational roots (without multiplicity, ascending) of a polynomial given by
/// coefficients from the constant term up. Returns `None` if the integer
/// coefficients are too large for divisor enumeration.
pub fn rational_roots(coeffs: &[Scalar]) -> Option<Vec<Scalar>> {
    let mut c: Vec<Scalar> = coeffs.to_vec();
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    if c.len() <= 1 {
        return Some(Vec::new());
    }
    let mut roots = Vec::new();
    let shift = c.iter().position(|x| !x.is_zero()).unwrap_or(0);
    if shift > 0 {
        roots.push(Scalar::zero());
        c.drain(..shift);
    }
    if c.len() > 1 {
        let lcm = c
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = c.iter().map(|x| (x * Scalar::from_integer(lcm.clone())).to_integer()).collect();
        let a0 = ints[0].abs().to_u64()?;
        let an = ints[ints.len() - 1].abs().to_u64()?;
        for p in divisors(a0)? {
            for q in divisors(an)? {
                for sign in [-1i64, 1] {
                    let cand = Scalar::new(BigInt::from(p) * sign, BigInt::from(q));
                    if !roots.contains(&cand) && eval_poly(&c, &cand).is_zero() {
                        roots.push(cand);
                    }
                }
            }
        }
    }
    roots.sort();
    Some(roots)
}

fn divisors(n: u64) -> Option<Vec<u64>> {
    if n > 1 << 40 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    Some(out)
}

/// Horner evaluation, coefficients from the constant term up.
pub fn eval_poly(coeffs: &[Scalar], x: &Scalar) -> Scalar {
    coeffs
        .iter()
        .rev()
        .fold(Scalar::zero(), |acc, c| acc * x + c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(Matrix::identity(2).kernel_basis().is_empty());
    }

    #[test]
    fn kernel_of_single_equation() {
        let m = Matrix::from_i64(&[&[1, 1]]);
        assert_eq!(m.kernel_basis(), vec![v(&[-1, 1])]);
    }

    #[test]
    fn kernel_of_rank_one_square() {
        let m = Matrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.kernel_basis(), vec![v(&[-2, 1])]);
    }

    #[test]
    fn sl2_commutator_gives_h() {
        let x = Matrix::from_i64(&[&[0, 1], &[0, 0]]);
        let y = Matrix::from_i64(&[&[0, 0], &[1, 0]]);
        let h = Matrix::from_i64(&[&[1, 0], &[0, -1]]);
        assert_eq!(commutator(&x, &y).unwrap(), h);
    }

    #[test]
    fn commutator_trivial_cases() {
        let b = Matrix::from_i64(&[&[3, 5], &[7, 11]]);
        assert!(commutator(&Matrix::identity(2), &b).unwrap().is_zero());
        let d1 = Matrix::from_i64(&[&[1, 0], &[0, 2]]);
        let d2 = Matrix::from_i64(&[&[3, 0], &[0, 4]]);
        assert!(commutator(&d1, &d2).unwrap().is_zero());
    }

    #[test]
    fn commutator_rejects_mismatched_sizes() {
        let err = commutator(&Matrix::identity(2), &Matrix::identity(3)).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch(_)));
    }

    #[test]
    fn gram_examples() {
        let basis = vec![v(&[1, 0]), v(&[0, 1])];
        assert_eq!(gram_matrix(&basis, |a, b| dot(a, b)), Matrix::identity(2));
        let single = vec![v(&[1, 1])];
        assert_eq!(gram_matrix(&single, |a, b| dot(a, b)), Matrix::from_i64(&[&[2]]));
        let pair = vec![v(&[1, 0]), v(&[1, 1])];
        let g = gram_matrix(&pair, |a, b| dot(a, b));
        assert_eq!(g, Matrix::from_i64(&[&[1, 1], &[1, 2]]));
        assert_eq!(g.determinant().unwrap(), int(1));
        assert!(g.is_positive_definite());
    }

    #[test]
    fn scalar_text_round_trip() {
        assert_eq!(parse_scalar(" -6/4 ").unwrap(), ratio(-3, 2));
        assert_eq!(format_scalar(&ratio(-3, 2)), "-3/2");
        assert_eq!(format_scalar(&int(7)), "7");
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
    }

    #[test]
    fn inverse_and_solve() {
        let m = Matrix::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(2));
        assert_eq!(m.solve(&v(&[3, 2])).unwrap(), v(&[1, 1]));
        let singular = Matrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert!(singular.inverse().is_none());
        assert!(singular.solve(&v(&[1, 0])).is_none());
    }

    #[test]
    fn char_poly_and_roots() {
        // diag(1, 2, 2) -> (x-1)(x-2)^2 = x^3 - 5x^2 + 8x - 4
        let m = Matrix::diagonal(&v(&[1, 2, 2]));
        let cp = m.char_poly().unwrap();
        assert_eq!(cp, v(&[-4, 8, -5, 1]));
        assert_eq!(rational_roots(&cp).unwrap(), v(&[1, 2]));
        // x^2 - 2 has no rational roots
        assert!(rational_roots(&v(&[-2, 0, 1])).unwrap().is_empty());
        assert_eq!(rational_roots(&[ratio(-1, 4), int(0), int(1)]).unwrap(), vec![ratio(-1, 2), ratio(1, 2)]);
    }

    fn small_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..5, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec((-3i64..4, 1i64..3), r * c).prop_map(move |xs| {
                let rows = xs
                    .chunks(c)
                    .map(|ch| ch.iter().map(|&(n, d)| ratio(n, d)).collect())
                    .collect();
                Matrix::from_rows(rows)
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_matrix()) {
            let ker = m.kernel_basis();
            prop_assert_eq!(m.rank() + ker.len(), m.cols());
            prop_assert_eq!(rank_of(&ker), ker.len());
            for k in &ker {
                prop_assert!(is_zero_vec(&m.mul_vec(k).unwrap()));
            }
        }

        #[test]
        fn commutator_is_antisymmetric(a in small_matrix(), b in small_matrix()) {
            let n = a.rows().min(a.cols()).min(b.rows()).min(b.cols());
            let idx: Vec<usize> = (0..n).collect();
            let a = a.submatrix(&idx, &idx);
            let b = b.submatrix(&idx, &idx);
            let ab = commutator(&a, &b).unwrap();
            let ba = commutator(&b, &a).unwrap();
            prop_assert_eq!(ab, ba.scale(&int(-1)));
        }
    }
}
