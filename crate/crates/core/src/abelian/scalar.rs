//! Integer scalars for the reduction kernels.
//!
//! Every kernel in [`super::normal_form`] is written once over [`Entry`]. It is
//! first run on `i128` with checked arithmetic; an overflow aborts the run
//! (`None`) and the caller repeats it on [`BigInt`], which never overflows.
//! Results are therefore always exact.

use std::cmp::Ordering;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub(crate) trait Entry: Clone + Eq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_big(v: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn add(&self, other: &Self) -> Option<Self>;
    fn sub(&self, other: &Self) -> Option<Self>;
    fn mul(&self, other: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    /// Floor division.
    fn div_floor(&self, other: &Self) -> Option<Self>;
    /// Exact division; caller guarantees divisibility.
    fn div_exact(&self, other: &Self) -> Option<Self>;
    fn is_multiple_of(&self, other: &Self) -> bool;
    fn cmp_abs(&self, other: &Self) -> Ordering;
}

// Inputs are admitted on the fast path only when they fit in i64, leaving
// headroom for the first few products.
const FAST_LIMIT: i128 = i64::MAX as i128;

impl Entry for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn from_big(v: &BigInt) -> Option<Self> {
        v.to_i128().filter(|x| x.abs() <= FAST_LIMIT)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn add(&self, other: &Self) -> Option<Self> {
        self.checked_add(*other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        self.checked_sub(*other)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn div_floor(&self, other: &Self) -> Option<Self> {
        if *self == i128::MIN && *other == -1 {
            return None;
        }
        Some(Integer::div_floor(self, other))
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        self.checked_div(*other)
    }
    fn is_multiple_of(&self, other: &Self) -> bool {
        if *other == 0 {
            *self == 0
        } else {
            self.checked_rem(*other).is_none_or(|r| r == 0)
        }
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
}

impl Entry for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn div_floor(&self, other: &Self) -> Option<Self> {
        Some(Integer::div_floor(self, other))
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        Some(self / other)
    }
    fn is_multiple_of(&self, other: &Self) -> bool {
        if Zero::is_zero(other) {
            Zero::is_zero(self)
        } else {
            Zero::is_zero(&(self % other))
        }
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.magnitude().cmp(other.magnitude())
    }
}

/// Row-major dense matrix used inside the kernels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Dense<E> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<E>,
}

impl<E: Entry> Dense<E> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Dense {
            rows,
            cols,
            data: vec![E::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = E::one();
        }
        m
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn negate_col(&mut self, c: usize) -> Option<()> {
        for r in 0..self.rows {
            let v = self.at(r, c).neg()?;
            self.set(r, c, v);
        }
        Some(())
    }

    pub fn negate_row(&mut self, r: usize) -> Option<()> {
        for c in 0..self.cols {
            let v = self.at(r, c).neg()?;
            self.set(r, c, v);
        }
        Some(())
    }

    /// col[dst] -= q * col[src]
    pub fn col_axpy(&mut self, dst: usize, src: usize, q: &E) -> Option<()> {
        if q.is_zero() {
            return Some(());
        }
        for r in 0..self.rows {
            let s = self.at(r, src);
            if s.is_zero() {
                continue;
            }
            let v = self.at(r, dst).sub(&q.mul(s)?)?;
            self.set(r, dst, v);
        }
        Some(())
    }

    /// row[dst] -= q * row[src]
    pub fn row_axpy(&mut self, dst: usize, src: usize, q: &E) -> Option<()> {
        if q.is_zero() {
            return Some(());
        }
        for c in 0..self.cols {
            let s = self.at(src, c);
            if s.is_zero() {
                continue;
            }
            let v = self.at(dst, c).sub(&q.mul(s)?)?;
            self.set(dst, c, v);
        }
        Some(())
    }

    pub fn mul(&self, other: &Self) -> Option<Self> {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.at(i, j).add(&a.mul(b)?)?;
                    out.set(i, j, v);
                }
            }
        }
        Some(out)
    }

    /// Keeps the listed columns, in order.
    pub fn select_cols(&self, cols: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.set(r, j, self.at(r, c).clone());
            }
        }
        out
    }
}
