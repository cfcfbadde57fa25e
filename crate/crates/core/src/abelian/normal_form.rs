//! Hermite and Smith normal forms, integer kernels and integer linear solves.
//!
//! All public entry points take and return [`IntMatrix`]. Internally each one
//! runs a checked `i128` pass and falls back to `BigInt` on overflow.

use std::cmp::Ordering;

use num_bigint::BigInt;

use super::matrix::IntMatrix;
use super::scalar::{Dense, Entry};

/// Pivot positions `(row, column)` of a column-echelon form.
type Pivots = Vec<(usize, usize)>;

struct Echelon<E> {
    h: Dense<E>,
    u: Option<Dense<E>>,
    pivots: Pivots,
}

/// Column-style echelon reduction: `a * u = h`, with pivot rows strictly
/// increasing, positive pivots, zero columns last. With `reduce` set the
/// entries left of each pivot are reduced into `[0, pivot)`, which makes `h`
/// the Hermite normal form.
fn echelon<E: Entry>(mut a: Dense<E>, track: bool, reduce: bool) -> Option<Echelon<E>> {
    let n = a.cols;
    let mut u = track.then(|| Dense::<E>::identity(n));
    let mut pivots = Vec::new();
    let mut p = 0;
    for i in 0..a.rows {
        if p == n {
            break;
        }
        let mut found = false;
        loop {
            let mut best: Option<usize> = None;
            for j in p..n {
                let v = a.at(i, j);
                if v.is_zero() {
                    continue;
                }
                if best.is_none_or(|b| v.cmp_abs(a.at(i, b)) == Ordering::Less) {
                    best = Some(j);
                }
            }
            let Some(b) = best else { break };
            found = true;
            a.swap_cols(b, p);
            if let Some(u) = u.as_mut() {
                u.swap_cols(b, p);
            }
            let pivot = a.at(i, p).clone();
            let mut clean = true;
            for j in p + 1..n {
                if a.at(i, j).is_zero() {
                    continue;
                }
                let q = a.at(i, j).div_floor(&pivot)?;
                a.col_axpy(j, p, &q)?;
                if let Some(u) = u.as_mut() {
                    u.col_axpy(j, p, &q)?;
                }
                if !a.at(i, j).is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if !found {
            continue;
        }
        if a.at(i, p).is_negative() {
            a.negate_col(p)?;
            if let Some(u) = u.as_mut() {
                u.negate_col(p)?;
            }
        }
        if reduce {
            let pivot = a.at(i, p).clone();
            for j in 0..p {
                let q = a.at(i, j).div_floor(&pivot)?;
                a.col_axpy(j, p, &q)?;
                if let Some(u) = u.as_mut() {
                    u.col_axpy(j, p, &q)?;
                }
            }
        }
        pivots.push((i, p));
        p += 1;
    }
    Some(Echelon { h: a, u, pivots })
}

struct Smith<E> {
    u: Option<Dense<E>>,
    s: Dense<E>,
    v: Option<Dense<E>>,
}

/// `u * a * v = s`, pivoting on the entry of least absolute value.
fn smith<E: Entry>(mut a: Dense<E>, track: bool) -> Option<Smith<E>> {
    let (m, n) = (a.rows, a.cols);
    let mut u = track.then(|| Dense::<E>::identity(m));
    let mut v = track.then(|| Dense::<E>::identity(n));
    for t in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let x = a.at(i, j);
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| x.cmp_abs(a.at(bi, bj)) == Ordering::Less) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return Some(Smith { u, s: a, v });
            };
            a.swap_rows(bi, t);
            a.swap_cols(bj, t);
            if let Some(u) = u.as_mut() {
                u.swap_rows(bi, t);
            }
            if let Some(v) = v.as_mut() {
                v.swap_cols(bj, t);
            }
            let pivot = a.at(t, t).clone();
            let mut clean = true;
            for i in t + 1..m {
                if a.at(i, t).is_zero() {
                    continue;
                }
                let q = a.at(i, t).div_floor(&pivot)?;
                a.row_axpy(i, t, &q)?;
                if let Some(u) = u.as_mut() {
                    u.row_axpy(i, t, &q)?;
                }
                clean &= a.at(i, t).is_zero();
            }
            for j in t + 1..n {
                if a.at(t, j).is_zero() {
                    continue;
                }
                let q = a.at(t, j).div_floor(&pivot)?;
                a.col_axpy(j, t, &q)?;
                if let Some(v) = v.as_mut() {
                    v.col_axpy(j, t, &q)?;
                }
                clean &= a.at(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            let offending = (t + 1..m).find(|&i| (t + 1..n).any(|j| !a.at(i, j).is_multiple_of(&pivot)));
            match offending {
                Some(i) => {
                    let minus_one = E::one().neg()?;
                    a.row_axpy(t, i, &minus_one)?;
                    if let Some(u) = u.as_mut() {
                        u.row_axpy(t, i, &minus_one)?;
                    }
                }
                None => break,
            }
        }
        if a.at(t, t).is_negative() {
            a.negate_row(t)?;
            if let Some(u) = u.as_mut() {
                u.negate_row(t)?;
            }
        }
    }
    Some(Smith { u, s: a, v })
}

/// Solves `a x = b` column by column given `a`'s echelon data. Outer `None`
/// signals arithmetic overflow; inner `None` that no integer solution exists.
fn solve_with<E: Entry>(ech: &Echelon<E>, b: &Dense<E>) -> Option<Option<Dense<E>>> {
    let u = ech.u.as_ref().expect("solve needs the transform");
    let rank = ech.pivots.len();
    let n = ech.h.cols;
    let mut y = Dense::<E>::zeros(n, b.cols);
    for col in 0..b.cols {
        let mut res: Vec<E> = (0..b.rows).map(|r| b.at(r, col).clone()).collect();
        for (j, &(r, pc)) in ech.pivots.iter().enumerate() {
            debug_assert_eq!(j, pc);
            if res[r].is_zero() {
                continue;
            }
            let pivot = ech.h.at(r, pc);
            if !res[r].is_multiple_of(pivot) {
                return Some(None);
            }
            let q = res[r].div_exact(pivot)?;
            for (rr, slot) in res.iter_mut().enumerate().skip(r) {
                let h = ech.h.at(rr, pc);
                if !h.is_zero() {
                    *slot = slot.sub(&q.mul(h)?)?;
                }
            }
            y.set(j, col, q);
        }
        if res.iter().any(|v| !v.is_zero()) {
            return Some(None);
        }
    }
    let lead: Vec<usize> = (0..rank).collect();
    let u_lead = u.select_cols(&lead);
    let y_lead = Dense {
        rows: rank,
        cols: b.cols,
        data: y.data[..rank * b.cols].to_vec(),
    };
    Some(Some(u_lead.mul(&y_lead)?))
}

macro_rules! fast_then_big {
    ($m:expr, |$d:ident : $t:ident| $body:expr) => {{
        let fast = $m.to_dense::<i128>().and_then(|$d: Dense<i128>| {
            type $t = i128;
            $body
        });
        match fast {
            Some(v) => v,
            None => {
                let $d: Dense<BigInt> = $m.to_dense::<BigInt>().expect("BigInt conversion is total");
                type $t = BigInt;
                ($body).expect("BigInt arithmetic cannot overflow")
            }
        }
    }};
}

/// Hermite normal form `(H, U)` with `m * U = H`, `U` unimodular.
///
/// Column style: pivot rows strictly increase from left to right, pivots are
/// positive, entries left of a pivot lie in `[0, pivot)` and zero columns come
/// last.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    fast_then_big!(m, |d: T| {
        echelon::<T>(d, true, true).map(|e| {
            (
                IntMatrix::from_dense(&e.h),
                IntMatrix::from_dense(e.u.as_ref().unwrap()),
            )
        })
    })
}

/// Smith normal form `(U, S, V)` with `U * m * V = S`.
///
/// `S` is diagonal with nonnegative entries forming a divisibility chain,
/// zeros last.
pub fn smith_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    fast_then_big!(m, |d: T| {
        smith::<T>(d, true).map(|s| {
            (
                IntMatrix::from_dense(s.u.as_ref().unwrap()),
                IntMatrix::from_dense(&s.s),
                IntMatrix::from_dense(s.v.as_ref().unwrap()),
            )
        })
    })
}

/// Nonzero diagonal entries of the Smith normal form, in order.
pub fn smith_invariants(m: &IntMatrix) -> Vec<BigInt> {
    fast_then_big!(m, |d: T| {
        smith::<T>(d, false).map(|s| {
            (0..s.s.rows.min(s.s.cols))
                .map(|i| s.s.at(i, i).to_big())
                .take_while(|v| !num_traits::Zero::is_zero(v))
                .collect::<Vec<_>>()
        })
    })
}

pub fn rank(m: &IntMatrix) -> usize {
    fast_then_big!(m, |d: T| echelon::<T>(d, false, false).map(|e| e.pivots.len()))
}

/// Basis (as columns) of the integer kernel `{x : m x = 0}`.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    fast_then_big!(m, |d: T| {
        let n = d.cols;
        echelon::<T>(d, true, false).map(|e| {
            let free: Vec<usize> = (e.pivots.len()..n).collect();
            IntMatrix::from_dense(&e.u.as_ref().unwrap().select_cols(&free))
        })
    })
}

/// Basis (as columns) of the lattice spanned by the columns of `m`.
pub fn column_span_basis(m: &IntMatrix) -> IntMatrix {
    fast_then_big!(m, |d: T| {
        echelon::<T>(d, false, true).map(|e| {
            let lead: Vec<usize> = (0..e.pivots.len()).collect();
            IntMatrix::from_dense(&e.h.select_cols(&lead))
        })
    })
}

/// An integer solution `X` of `a * X = b`, if one exists.
pub fn solve(a: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    assert_eq!(a.rows(), b.rows(), "solve: row mismatch");
    let fast = a.to_dense::<i128>().zip(b.to_dense::<i128>()).and_then(|(da, db)| {
        let e = echelon::<i128>(da, true, false)?;
        solve_with(&e, &db)
    });
    match fast {
        Some(x) => x.map(|x| IntMatrix::from_dense(&x)),
        None => {
            let e = echelon::<BigInt>(a.to_dense().unwrap(), true, false).unwrap();
            solve_with(&e, &b.to_dense().unwrap())
                .unwrap()
                .map(|x| IntMatrix::from_dense(&x))
        }
    }
}

/// Reusable membership test for the lattice spanned by a fixed set of columns.
#[derive(Clone, Debug)]
pub struct LatticeSolver {
    dim: usize,
    gens: IntMatrix,
    big: BigSolver,
}

#[derive(Clone, Debug)]
enum BigSolver {
    Fast(EchelonData<i128>),
    Big(EchelonData<BigInt>),
}

#[derive(Clone, Debug)]
struct EchelonData<E> {
    h: Dense<E>,
    u: Dense<E>,
    pivots: Pivots,
}

impl<E: Entry> EchelonData<E> {
    fn as_echelon(&self) -> Echelon<E> {
        Echelon {
            h: self.h.clone(),
            u: Some(self.u.clone()),
            pivots: self.pivots.clone(),
        }
    }
}

impl LatticeSolver {
    pub fn new(gens: &IntMatrix) -> Self {
        let fast = gens
            .to_dense::<i128>()
            .and_then(|d| echelon::<i128>(d, true, false))
            .map(|e| {
                BigSolver::Fast(EchelonData {
                    h: e.h,
                    u: e.u.unwrap(),
                    pivots: e.pivots,
                })
            });
        let big = fast.unwrap_or_else(|| {
            let e = echelon::<BigInt>(gens.to_dense().unwrap(), true, false).unwrap();
            BigSolver::Big(EchelonData {
                h: e.h,
                u: e.u.unwrap(),
                pivots: e.pivots,
            })
        });
        LatticeSolver {
            dim: gens.rows(),
            gens: gens.clone(),
            big,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coefficients `x` with `gens * x = b`, if `b`'s columns lie in the lattice.
    pub fn solve(&self, b: &IntMatrix) -> Option<IntMatrix> {
        assert_eq!(b.rows(), self.dim);
        if let BigSolver::Fast(e) = &self.big {
            if let Some(db) = b.to_dense::<i128>() {
                if let Some(x) = solve_with(&e.as_echelon(), &db) {
                    return x.map(|x| IntMatrix::from_dense(&x));
                }
            }
        }
        let e = match &self.big {
            BigSolver::Big(e) => e.as_echelon(),
            BigSolver::Fast(_) => echelon::<BigInt>(self.gens.to_dense().unwrap(), true, false).unwrap(),
        };
        solve_with(&e, &b.to_dense().unwrap())
            .unwrap()
            .map(|x| IntMatrix::from_dense(&x))
    }

    pub fn contains(&self, b: &IntMatrix) -> bool {
        if b.is_zero() {
            return true;
        }
        if self.gens.cols() == 0 {
            return false;
        }
        self.solve(b).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    #[test]
    fn smith_of_two_by_two() {
        let a = m(&[&[2, 4], &[6, 8]]);
        let (u, s, v) = smith_normal_form(&a);
        assert_eq!(s, m(&[&[2, 0], &[0, 4]]));
        assert_eq!(&(&u * &a) * &v, s);
    }

    #[test]
    fn smith_of_identity_and_zero() {
        let id = IntMatrix::identity(3);
        assert_eq!(smith_normal_form(&id).1, id);
        let z = IntMatrix::zeros(2, 3);
        assert_eq!(smith_normal_form(&z).1, z);
        assert!(smith_invariants(&z).is_empty());
    }

    #[test]
    fn hermite_examples() {
        assert_eq!(hermite_normal_form(&m(&[&[2], &[4]])).0, m(&[&[2], &[4]]));
        let id = IntMatrix::identity(2);
        assert_eq!(hermite_normal_form(&id).0, id);
        let a = m(&[&[4, 6]]);
        let (h, u) = hermite_normal_form(&a);
        assert_eq!(h, m(&[&[2, 0]]));
        assert_eq!(&a * &u, h);
    }

    #[test]
    fn kernel_and_solve() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = kernel_basis(&a);
        assert_eq!(k.cols(), 2);
        assert!((&a * &k).is_zero());
        let b = m(&[&[5], &[10]]);
        let x = solve(&a, &b).unwrap();
        assert_eq!(&a * &x, b);
        assert!(solve(&a, &m(&[&[1], &[1]])).is_none());
        assert!(solve(&m(&[&[2]]), &m(&[&[3]])).is_none());
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = i64::MAX / 3;
        let a = m(&[&[big, big - 1, 7], &[big - 5, big, 11], &[3, big - 2, big]]);
        let (u, s, v) = smith_normal_form(&a);
        assert_eq!(&(&u * &a) * &v, s);
        let (h, uu) = hermite_normal_form(&a);
        assert_eq!(&a * &uu, h);
    }

    #[test]
    fn empty_shapes() {
        let e = IntMatrix::zeros(0, 3);
        assert_eq!(kernel_basis(&e).cols(), 3);
        assert_eq!(rank(&e), 0);
        let e = IntMatrix::zeros(2, 0);
        assert_eq!(kernel_basis(&e).cols(), 0);
        assert!(solve(&e, &m(&[&[0], &[0]])).is_some());
        assert!(solve(&e, &m(&[&[1], &[0]])).is_none());
    }
}
