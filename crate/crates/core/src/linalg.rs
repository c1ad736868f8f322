//! Dense matrices over exact fields: rationals and prime fields.

use crate::error::{Error, Result};
use num::{BigRational, One, Zero};
use std::fmt;

pub type Rational = BigRational;

/// An exact field. Elements of a prime field need to know their modulus,
/// carried by `Ctx`.
pub trait Field: Clone + PartialEq + fmt::Debug {
    type Ctx: Copy + PartialEq + fmt::Debug;
    fn zero(ctx: Self::Ctx) -> Self;
    fn one(ctx: Self::Ctx) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Multiplicative inverse; the caller guarantees `self != 0`.
    fn inv(&self) -> Self;
}

impl Field for Rational {
    type Ctx = ();
    fn zero(_: ()) -> Self {
        Zero::zero()
    }
    fn one(_: ()) -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn inv(&self) -> Self {
        self.recip()
    }
}

/// `Z/p` for a prime `2^15 < p < 2^32`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

pub const DEFAULT_PRIME: u64 = 65521;
pub const SECOND_PRIME: u64 = 2_147_483_647;

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p <= 1 << 15 || p >= 1 << 32 || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn p(self) -> u64 {
        self.p
    }

    pub fn elem(self, v: u64) -> Fp {
        Fp { v: v % self.p, p: self.p }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    v: u64,
    p: u64,
}

impl Fp {
    pub fn value(self) -> u64 {
        self.v
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Field for Fp {
    type Ctx = PrimeField;
    fn zero(ctx: PrimeField) -> Self {
        ctx.elem(0)
    }
    fn one(ctx: PrimeField) -> Self {
        ctx.elem(1)
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn add(&self, other: &Self) -> Self {
        Fp { v: (self.v + other.v) % self.p, p: self.p }
    }
    fn sub(&self, other: &Self) -> Self {
        Fp { v: (self.v + self.p - other.v) % self.p, p: self.p }
    }
    fn mul(&self, other: &Self) -> Self {
        Fp { v: ((self.v as u128 * other.v as u128) % self.p as u128) as u64, p: self.p }
    }
    fn inv(&self) -> Self {
        // Fermat: v^(p-2).
        let (mut base, mut e, mut acc) = (*self, self.p - 2, Fp { v: 1, p: self.p });
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<F: Field> {
    ctx: F::Ctx,
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(ctx: F::Ctx, rows: usize, cols: usize) -> Self {
        Matrix { ctx, rows, cols, data: vec![F::zero(ctx); rows * cols] }
    }

    pub fn identity(ctx: F::Ctx, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.set(i, i, F::one(ctx));
        }
        m
    }

    pub fn from_rows(ctx: F::Ctx, rows: usize, cols: usize, data: Vec<F>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has the wrong length");
        Matrix { ctx, rows, cols, data }
    }

    pub fn ctx(&self) -> F::Ctx {
        self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn mul(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out: Matrix<F> = Matrix::zeros(self.ctx, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j).add(&a.mul(other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in difference");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect();
        Matrix { ctx: self.ctx, rows: self.rows, cols: self.cols, data }
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.rows, other.rows, "row mismatch in hstack");
        let mut out = Matrix::zeros(self.ctx, self.rows, self.cols + other.cols);
        out.paste(0, 0, self);
        out.paste(0, self.cols, other);
        out
    }

    /// `[self; other]`.
    pub fn vstack(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.cols, "column mismatch in vstack");
        let mut out = Matrix::zeros(self.ctx, self.rows + other.rows, self.cols);
        out.paste(0, 0, self);
        out.paste(self.rows, 0, other);
        out
    }

    /// Copies `block` with its top-left corner at `(r, c)`.
    pub fn paste(&mut self, r: usize, c: usize, block: &Matrix<F>) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r + i, c + j, block.get(i, j).clone());
            }
        }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            for j in 0..self.cols {
                self.data.swap(pr * self.cols + j, row * self.cols + j);
            }
            let inv = self.get(row, col).inv();
            for j in col..self.cols {
                let v = self.get(row, j).mul(&inv);
                self.set(row, j, v);
            }
            for r in 0..self.rows {
                if r == row || self.get(r, col).is_zero() {
                    continue;
                }
                let factor = self.get(r, col).clone();
                for j in col..self.cols {
                    let v = self.get(r, j).sub(&factor.mul(self.get(row, j)));
                    self.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.clone().rref().len()
    }

    /// A basis of `{x : self x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(self.ctx); self.cols];
                v[f] = F::one(self.ctx);
                for (r, &pc) in pivots.iter().enumerate() {
                    let x = m.get(r, f);
                    if !x.is_zero() {
                        v[pc] = F::zero(self.ctx).sub(x);
                    }
                }
                v
            })
            .collect()
    }

    pub fn apply(&self, x: &[F]) -> Vec<F> {
        assert_eq!(x.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).fold(F::zero(self.ctx), |acc, j| acc.add(&self.get(i, j).mul(&x[j]))))
            .collect()
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| format!("{:?}", self.get(r, c))).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for Matrix<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Integer to rational.
pub fn q(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qm(rows: usize, cols: usize, v: &[i64]) -> Matrix<Rational> {
        Matrix::from_rows((), rows, cols, v.iter().map(|&x| q(x)).collect())
    }

    #[test]
    fn rational_rank_and_kernel() {
        let m = qm(3, 3, &[1, 2, 3, 4, 5, 6, 7, 8, 9]);
        assert_eq!(m.rank(), 2);
        let ker = m.kernel();
        assert_eq!(ker.len(), 1);
        assert!(m.apply(&ker[0]).iter().all(Field::is_zero));
        assert_eq!(Matrix::<Rational>::zeros((), 0, 4).rank(), 0);
        assert_eq!(Matrix::<Rational>::zeros((), 3, 4).kernel().len(), 4);
        assert_eq!(Matrix::<Rational>::identity((), 5).rank(), 5);
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(DEFAULT_PRIME).unwrap();
        let x = f.elem(12345);
        assert_eq!(x.mul(&x.inv()), f.elem(1));
        assert_eq!(f.elem(3).sub(&f.elem(5)).value(), DEFAULT_PRIME - 2);
        let g = PrimeField::new(SECOND_PRIME).unwrap();
        let y = g.elem(SECOND_PRIME - 1);
        assert_eq!(y.mul(&y), g.elem(1));
        assert!(PrimeField::new(65535).is_err());
        assert!(PrimeField::new(7).is_err());
    }

    #[test]
    fn rank_depends_on_characteristic_only_through_the_entries() {
        let f = PrimeField::new(65537).unwrap();
        // [[1, 1], [1, 65538]] is singular mod 65537.
        let m = Matrix::from_rows(f, 2, 2, vec![f.elem(1), f.elem(1), f.elem(1), f.elem(65538)]);
        assert_eq!(m.rank(), 1);
        assert_eq!(qm(2, 2, &[1, 1, 1, 65538]).rank(), 2);
    }

    #[test]
    fn stacking_and_products() {
        let a = qm(2, 2, &[1, 2, 3, 4]);
        let b = qm(2, 1, &[1, 1]);
        assert_eq!(a.mul(&b), qm(2, 1, &[3, 7]));
        assert_eq!(a.hstack(&b).cols(), 3);
        assert_eq!(a.vstack(&a).rank(), 2);
        assert!(a.sub(&a).is_zero());
    }
}
