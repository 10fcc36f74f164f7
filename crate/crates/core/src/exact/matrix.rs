//! 2×2 matrices over any [`Coeff`] ring.

use super::rational::{Coeff, Rational};

#[derive(Debug, Clone, PartialEq)]
pub struct Mat2<C> {
    pub e: [[C; 2]; 2],
}

impl<C: Coeff> Mat2<C> {
    pub fn new(a: C, b: C, c: C, d: C) -> Self {
        Mat2 { e: [[a, b], [c, d]] }
    }

    /// Diagonal matrix `diag(a, d)`.
    pub fn diag(a: C, d: C) -> Self {
        let z = a.zero_like();
        Mat2::new(a, z.clone(), z, d)
    }

    pub fn zero_like(&self) -> Self {
        let z = self.e[0][0].zero_like();
        Mat2::new(z.clone(), z.clone(), z.clone(), z)
    }

    pub fn identity_like(&self) -> Self {
        Mat2::diag(self.e[0][0].one_like(), self.e[0][0].one_like())
    }

    pub fn get(&self, i: usize, j: usize) -> &C {
        &self.e[i][j]
    }

    pub fn entries(&self) -> impl Iterator<Item = &C> {
        self.e.iter().flatten()
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Mat2<D> {
        let [[a, b], [c, d]] = &self.e;
        Mat2::new(f(a), f(b), f(c), f(d))
    }

    pub fn zip_with(&self, other: &Self, f: impl Fn(&C, &C) -> C) -> Self {
        let mut out = self.clone();
        for i in 0..2 {
            for j in 0..2 {
                out.e[i][j] = f(&self.e[i][j], &other.e[i][j]);
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.plus(b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.minus(b))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for i in 0..2 {
            for j in 0..2 {
                out.e[i][j] = self.e[i][0]
                    .times(&other.e[0][j])
                    .plus(&self.e[i][1].times(&other.e[1][j]));
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|x| x.scaled(c))
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn trace(&self) -> C {
        self.e[0][0].plus(&self.e[1][1])
    }

    pub fn det(&self) -> C {
        self.e[0][0]
            .times(&self.e[1][1])
            .minus(&self.e[0][1].times(&self.e[1][0]))
    }

    /// Traceless part `M - (tr M / 2) id`.
    pub fn traceless_part(&self) -> Self {
        let half = self.trace().scaled(&Rational::new(1.into(), 2.into()));
        self.sub(&Mat2::diag(half.clone(), half))
    }

    pub fn is_zero(&self) -> bool {
        self.entries().all(|c| c.vanishes())
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(self.identity_like(), |acc, _| acc.mul(self))
    }
}

impl Mat2<Rational> {
    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        use super::rational::int;
        Mat2::new(int(a), int(b), int(c), int(d))
    }

    /// Inverse, if the determinant is nonzero.
    pub fn inverse(&self) -> Option<Self> {
        let det = self.det();
        if Coeff::vanishes(&det) {
            return None;
        }
        let [[a, b], [c, d]] = &self.e;
        Some(Mat2::new(d / &det, -b / &det, -c / &det, a / &det))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    #[test]
    fn inverse_and_trace() {
        let g = Mat2::from_ints(2, 1, 1, 1);
        let gi = g.inverse().unwrap();
        assert_eq!(g.mul(&gi), g.identity_like());
        assert_eq!(g.trace(), int(3));
        assert!(Mat2::from_ints(1, 2, 2, 4).inverse().is_none());
        assert_eq!(g.traceless_part().trace(), int(0));
        assert_eq!(g.pow(2), g.mul(&g));
    }
}
