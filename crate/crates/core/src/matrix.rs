//! Small dense square matrices over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::Zero;

use crate::labels::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    n: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![Rational::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, Rational::from_integer(1))
    }

    pub fn scalar(n: usize, value: Rational) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = value;
        }
        m
    }

    /// Upper-triangular Jordan-type block with `diag` on the diagonal and
    /// `sup` on the superdiagonal.
    pub fn jordan(n: usize, diag: Rational, sup: Rational) -> Self {
        let mut m = Self::scalar(n, diag);
        for i in 0..n.saturating_sub(1) {
            m[(i, i + 1)] = sup;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Self { n, data: rows.into_iter().flatten().collect() }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn scale(&self, k: Rational) -> Self {
        Self { n: self.n, data: self.data.iter().map(|x| *x * k).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_scalar(&self) -> bool {
        let d = self[(0, 0)];
        (0..self.n).all(|i| (0..self.n).all(|j| self[(i, j)] == if i == j { d } else { Rational::zero() }))
    }

    pub fn is_nilpotent(&self) -> bool {
        let mut acc = self.clone();
        for _ in 1..self.n {
            acc = &acc * self;
        }
        acc.is_zero()
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Rank by Gaussian elimination over Q.
    pub fn rank(&self) -> usize {
        let n = self.n;
        let mut m = self.data.clone();
        let mut rank = 0;
        for col in 0..n {
            let Some(pivot) = (rank..n).find(|&row| !m[row * n + col].is_zero()) else {
                continue;
            };
            for j in 0..n {
                m.swap(pivot * n + j, rank * n + j);
            }
            let inv = Rational::from_integer(1) / m[rank * n + col];
            for row in 0..n {
                if row != rank && !m[row * n + col].is_zero() {
                    let factor = m[row * n + col] * inv;
                    for j in 0..n {
                        let v = m[rank * n + j];
                        m[row * n + j] -= factor * v;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// True when the matrix is similar to a single Jordan block, i.e. its
    /// only eigenvalue (taken from the diagonal of an upper-triangular
    /// matrix) has geometric multiplicity one.
    pub fn is_single_jordan_block(&self) -> bool {
        let upper = (0..self.n).all(|i| (0..i).all(|j| self[(i, j)].is_zero()));
        assert!(upper, "is_single_jordan_block expects an upper-triangular matrix");
        let d = self[(0, 0)];
        if (0..self.n).any(|i| self[(i, i)] != d) {
            return false;
        }
        (self - &Self::scalar(self.n, d)).rank() + 1 == self.n
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.n + j]
    }
}

impl Add for &RatMatrix {
    type Output = RatMatrix;
    fn add(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.n, rhs.n);
        RatMatrix { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| *a + *b).collect() }
    }
}

impl Sub for &RatMatrix {
    type Output = RatMatrix;
    fn sub(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.n, rhs.n);
        RatMatrix { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| *a - *b).collect() }
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;
    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = RatMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
