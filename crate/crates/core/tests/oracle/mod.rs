//! Reference computations kept independent of the library: fraction-free
//! `BigInt` elimination, determinantal divisors, a bar-resolution complex for
//! cyclic groups and simplicial cochains on poset nerves.

#![allow(dead_code)]

pub mod criteria;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Mat = Vec<Vec<BigInt>>;

pub fn mat(rows: &[Vec<i64>]) -> Mat {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// Determinant by Bareiss elimination.
pub fn det(m: &Mat) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Invariant factors `D_k / D_{k-1}` from the gcds `D_k` of all `k × k`
/// minors, up to the rank.
pub fn determinantal_invariants(m: &Mat) -> Vec<BigInt> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut out = Vec::new();
    let mut prev = BigInt::one();
    for k in 1..=rows.min(cols) {
        let mut g = BigInt::zero();
        for rs in combinations(rows, k) {
            for cs in combinations(cols, k) {
                let minor: Mat = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| m[r][c].clone()).collect())
                    .collect();
                g = g.gcd(&det(&minor));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

/// Rank over `Q` by fraction-free elimination.
pub fn rank(m: &Mat) -> usize {
    let mut a = m.clone();
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let (x, y) = (a[r][c].clone(), a[i][c].clone());
            for j in c..cols {
                a[i][j] = &a[i][j] * &x - &a[r][j] * &y;
            }
            let g = a[i].iter().fold(BigInt::zero(), |g, v| g.gcd(v));
            if !g.is_zero() && !g.is_one() {
                for v in a[i].iter_mut() {
                    *v = &*v / &g;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Rank over `Z/p`.
pub fn rank_mod(m: &Mat, p: i64) -> usize {
    let mut a: Vec<Vec<i64>> = m
        .iter()
        .map(|r| {
            r.iter()
                .map(|v| (v % BigInt::from(p)).try_into().map(|x: i64| x.rem_euclid(p)).unwrap())
                .collect()
        })
        .collect();
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let inv = |x: i64| (1..p).find(|&y| (x * y) % p == 1).unwrap();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let s = inv(a[r][c]);
        for v in a[r].iter_mut() {
            *v = (*v * s) % p;
        }
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for j in 0..cols {
                    a[i][j] = (a[i][j] - f * a[r][j]).rem_euclid(p);
                }
            }
        }
        r += 1;
    }
    r
}

/// Naive Smith diagonal: repeatedly move the smallest nonzero entry to the
/// corner and clear its row and column.
pub fn smith_diagonal(m: &Mat) -> Vec<BigInt> {
    let mut a = m.clone();
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !a[i][j].is_zero() && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return finish(diag);
            };
            a.swap(t, bi);
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t].div_floor(&a[t][t]);
                if !q.is_zero() {
                    for j in t..cols {
                        let v = &a[t][j] * &q;
                        a[i][j] -= v;
                    }
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                let q = a[t][j].div_floor(&a[t][t]);
                if !q.is_zero() {
                    for i in t..rows {
                        let v = &a[i][t] * &q;
                        a[i][j] -= v;
                    }
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // divisibility: fold a non-multiple row into row t and retry
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &a[t][t]).is_zero()));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => {
                    diag.push(a[t][t].abs());
                    break;
                }
            }
        }
    }
    finish(diag)
}

fn finish(mut diag: Vec<BigInt>) -> Vec<BigInt> {
    diag.retain(|d| !d.is_zero());
    diag.sort();
    diag
}

/// `(free rank, torsion factors ≥ 2)` of `H^n` for a complex of free
/// groups with differentials `d[n]: Z^{dims[n]} → Z^{dims[n+1]}` (matrices
/// `dims[n+1] × dims[n]`), for `n < d.len()`.
pub fn free_complex_cohomology(dims: &[usize], d: &[Mat]) -> Vec<(usize, Vec<BigInt>)> {
    (0..d.len())
        .map(|n| {
            let rk_out = rank(&d[n]);
            let (rk_in, torsion) = if n == 0 {
                (0, Vec::new())
            } else {
                let s = smith_diagonal(&d[n - 1]);
                (s.len(), s.into_iter().filter(|x| !x.is_one()).collect())
            };
            (dims[n] - rk_out - rk_in, torsion)
        })
        .collect()
}

/// `dim H^n` of the same complex with `Z/p` coefficients.
pub fn mod_p_cohomology(dims: &[usize], d: &[Mat], p: i64) -> Vec<usize> {
    (0..d.len())
        .map(|n| {
            let rk_out = rank_mod(&d[n], p);
            let rk_in = if n == 0 { 0 } else { rank_mod(&d[n - 1], p) };
            dims[n] - rk_out - rk_in
        })
        .collect()
}

fn zeros(r: usize, c: usize) -> Mat {
    vec![vec![BigInt::zero(); c]; r]
}

fn tuples(k: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..k).map(move |g| {
                    let mut t = t.clone();
                    t.push(g);
                    t
                })
            })
            .collect();
    }
    out
}

/// Inhomogeneous bar complex of `Z/k` with trivial coefficients in `Z`,
/// degrees `0..=top`: returns dimensions and the differentials `d^0..d^{top-1}`.
pub fn bar_complex(k: usize, top: usize) -> (Vec<usize>, Vec<Mat>) {
    let dims: Vec<usize> = (0..=top).map(|n| k.pow(n as u32)).collect();
    let index = |t: &[usize]| t.iter().fold(0, |acc, &g| acc * k + g);
    let mut ds = Vec::new();
    for n in 0..top {
        let mut d = zeros(dims[n + 1], dims[n]);
        for (row, g) in tuples(k, n + 1).iter().enumerate() {
            // (df)(g1..g_{n+1}) = f(g2..) + Σ (−1)^i f(.., g_i g_{i+1}, ..) + (−1)^{n+1} f(g1..g_n)
            d[row][index(&g[1..])] += 1;
            for i in 0..n {
                let mut t: Vec<usize> = g[..i].to_vec();
                t.push((g[i] + g[i + 1]) % k);
                t.extend_from_slice(&g[i + 2..]);
                let s = if (i + 1) % 2 == 0 { 1 } else { -1 };
                d[row][index(&t)] += s;
            }
            let s = if (n + 1) % 2 == 0 { 1 } else { -1 };
            d[row][index(&g[..n])] += s;
        }
        ds.push(d);
    }
    (dims, ds)
}

/// Simplicial cochain complex of the nerve of a finite poset given by its
/// strict order `less[a][b]`, on nondegenerate simplices `x0 < ⋯ < xn`.
pub fn nerve_complex(less: &[Vec<bool>], top: usize) -> (Vec<usize>, Vec<Mat>) {
    let n = less.len();
    let mut simplices: Vec<Vec<Vec<usize>>> = vec![(0..n).map(|x| vec![x]).collect()];
    for _ in 0..top {
        let last = simplices.last().unwrap();
        let next = last
            .iter()
            .flat_map(|s| {
                let tip = *s.last().unwrap();
                (0..n).filter(move |&y| less[tip][y]).map(move |y| {
                    let mut t = s.clone();
                    t.push(y);
                    t
                })
            })
            .collect();
        simplices.push(next);
    }
    let dims: Vec<usize> = simplices.iter().map(Vec::len).collect();
    let mut ds = Vec::new();
    for k in 0..top {
        let mut d = zeros(dims[k + 1], dims[k]);
        for (row, s) in simplices[k + 1].iter().enumerate() {
            for i in 0..s.len() {
                let mut face = s.clone();
                face.remove(i);
                let col = simplices[k].iter().position(|f| *f == face).unwrap();
                d[row][col] += if i % 2 == 0 { 1 } else { -1 };
            }
        }
        ds.push(d);
    }
    (dims, ds)
}
