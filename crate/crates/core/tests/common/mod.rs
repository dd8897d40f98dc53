//! Brute-force cohomology oracle shared by the integration tests.
//!
//! Deliberately shares nothing with the library beyond scalar arithmetic and
//! raw structure constants: cochains are full tensors `φ[o][x_1..x_k]`
//! (no canonical tuple basis), the α-compatibility, parity and
//! super-skewness conditions are imposed as plain linear equations, and rank /
//! null space come from a separate Gauss–Jordan elimination.

#![allow(dead_code)]

use hsuper_core::{HomLieSuperalgebra, Scalar};

pub struct Raw {
    n: usize,
    par: Vec<u8>,
    /// `c[i][j][o]`: coefficient of e_o in [e_i, e_j]
    c: Vec<Vec<Vec<Scalar>>>,
    /// `a[r][c]`: α as a matrix acting on columns
    a: Vec<Vec<Scalar>>,
}

impl Raw {
    pub fn of(g: &HomLieSuperalgebra) -> Raw {
        let n = g.dim();
        Raw {
            n,
            par: g.parity().to_vec(),
            c: (0..n)
                .map(|i| (0..n).map(|j| g.bracket_basis(i, j).clone()).collect())
                .collect(),
            a: (0..n)
                .map(|r| (0..n).map(|c| g.alpha()[(r, c)].clone()).collect())
                .collect(),
        }
    }

    fn len(&self, k: usize) -> usize {
        self.n.pow(k as u32 + 1)
    }

    fn idx(&self, o: usize, x: &[usize]) -> usize {
        x.iter().fold(o, |acc, &xi| acc * self.n + xi)
    }

    fn tuples(&self, k: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for _ in 0..k {
            out = out
                .into_iter()
                .flat_map(|t| {
                    (0..self.n).map(move |i| {
                        let mut t = t.clone();
                        t.push(i);
                        t
                    })
                })
                .collect();
        }
        out
    }

    fn psum(&self, x: &[usize]) -> u8 {
        x.iter().map(|&i| self.par[i]).sum::<u8>() % 2
    }

    /// Linear equations cutting out the parity-`p` part of C^k_α.
    fn constraints(&self, k: usize, p: u8) -> Vec<Vec<Scalar>> {
        let len = self.len(k);
        let mut eqs = vec![];
        for x in self.tuples(k) {
            for o in 0..self.n {
                let mut row = vec![Scalar::zero(); len];
                if self.par[o] != (p + self.psum(&x)) % 2 {
                    row[self.idx(o, &x)] = Scalar::one();
                    eqs.push(row);
                    continue;
                }
                for i in 0..k.saturating_sub(1) {
                    let mut y = x.clone();
                    y.swap(i, i + 1);
                    let mut row = vec![Scalar::zero(); len];
                    row[self.idx(o, &x)] = row[self.idx(o, &x)].clone() + Scalar::one();
                    let eps = if self.par[x[i]] * self.par[x[i + 1]] == 1 { -1 } else { 1 };
                    // φ(..x_i, x_{i+1}..) = −(−1)^{|x_i||x_{i+1}|} φ(..x_{i+1}, x_i..)
                    let j = self.idx(o, &y);
                    row[j] = row[j].clone() + Scalar::from_int(eps);
                    eqs.push(row);
                }
                // (α∘φ)(x) − φ(αx_1, …, αx_k), component o
                let mut row = vec![Scalar::zero(); len];
                for m in 0..self.n {
                    let j = self.idx(m, &x);
                    row[j] = row[j].clone() + self.a[o][m].clone();
                }
                for y in self.tuples(k) {
                    let mut coef = Scalar::one();
                    for (yj, xj) in y.iter().zip(&x) {
                        coef = coef * self.a[*yj][*xj].clone();
                    }
                    if !coef.is_zero() {
                        let j = self.idx(o, &y);
                        row[j] = row[j].clone() - coef;
                    }
                }
                eqs.push(row);
            }
        }
        eqs
    }

    pub fn cochains(&self, k: usize, p: u8) -> Vec<Vec<Scalar>> {
        null_space(&self.constraints(k, p), self.len(k))
    }

    fn eval(&self, phi: &[Scalar], args: &[Vec<Scalar>]) -> Vec<Scalar> {
        let k = args.len();
        let mut out = vec![Scalar::zero(); self.n];
        for y in self.tuples(k) {
            let mut coef = Scalar::one();
            for (j, &yj) in y.iter().enumerate() {
                coef = coef * args[j][yj].clone();
                if coef.is_zero() {
                    break;
                }
            }
            if coef.is_zero() {
                continue;
            }
            for (o, slot) in out.iter_mut().enumerate() {
                *slot = slot.clone() + coef.clone() * phi[self.idx(o, &y)].clone();
            }
        }
        out
    }

    fn col(&self, m: &[Vec<Scalar>], j: usize) -> Vec<Scalar> {
        (0..self.n).map(|r| m[r][j].clone()).collect()
    }

    fn alpha_pow(&self, e: usize) -> Vec<Vec<Scalar>> {
        let mut m: Vec<Vec<Scalar>> = (0..self.n)
            .map(|r| (0..self.n).map(|c| if r == c { Scalar::one() } else { Scalar::zero() }).collect())
            .collect();
        for _ in 0..e {
            m = (0..self.n)
                .map(|r| {
                    (0..self.n)
                        .map(|c| (0..self.n).map(|t| m[r][t].clone() * self.a[t][c].clone()).sum())
                        .collect()
                })
                .collect();
        }
        m
    }

    fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.n];
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                let coef = xi.clone() * yj.clone();
                if coef.is_zero() {
                    continue;
                }
                for (o, slot) in out.iter_mut().enumerate() {
                    *slot = slot.clone() + coef.clone() * self.c[i][j][o].clone();
                }
            }
        }
        out
    }

    /// δ of a degree-`k`, parity-`p` full-tensor cochain.
    pub fn delta(&self, phi: &[Scalar], k: usize, p: u8) -> Vec<Scalar> {
        let unit = |i: usize| {
            let mut v = vec![Scalar::zero(); self.n];
            v[i] = Scalar::one();
            v
        };
        let sgn = |e: u32| if e.is_multiple_of(2) { Scalar::one() } else { -Scalar::one() };
        let tw = self.alpha_pow(k.saturating_sub(1));
        let mut out = vec![Scalar::zero(); self.len(k + 1)];
        for x in self.tuples(k + 1) {
            let mut value = vec![Scalar::zero(); self.n];
            for s in 0..=k {
                for t in s + 1..=k {
                    let between: u32 = x[s + 1..t].iter().map(|&i| self.par[i] as u32).sum();
                    let sg = sgn(t as u32 + self.par[x[t]] as u32 * between);
                    let args: Vec<Vec<Scalar>> = (0..=k)
                        .filter(|&j| j != t)
                        .map(|j| {
                            if j == s {
                                self.c[x[s]][x[t]].clone()
                            } else {
                                self.col(&self.a, x[j])
                            }
                        })
                        .collect();
                    for (v, w) in value.iter_mut().zip(self.eval(phi, &args)) {
                        *v = v.clone() + sg.clone() * w;
                    }
                }
            }
            for s in 0..=k {
                let before: u32 = x[..s].iter().map(|&i| self.par[i] as u32).sum();
                let sg = sgn(s as u32 + self.par[x[s]] as u32 * (p as u32 + before));
                let rest: Vec<Vec<Scalar>> = (0..=k).filter(|&j| j != s).map(|j| unit(x[j])).collect();
                let inner = self.eval(phi, &rest);
                let term = self.bracket(&self.col(&tw, x[s]), &inner);
                for (v, w) in value.iter_mut().zip(term) {
                    *v = v.clone() + sg.clone() * w;
                }
            }
            for (o, v) in value.into_iter().enumerate() {
                let i = self.idx(o, &x);
                out[i] = v;
            }
        }
        out
    }
}

/// `[C, Z, B, H]` for degree `k` ∈ {1, 2}, per parity.
pub fn oracle_dims(g: &HomLieSuperalgebra, k: usize) -> [[usize; 4]; 2] {
    let r = Raw::of(g);
    let mut out = [[0; 4]; 2];
    for p in 0..2u8 {
        let c = r.cochains(k, p);
        let images: Vec<Vec<Scalar>> = c.iter().map(|phi| r.delta(phi, k, p)).collect();
        let z = c.len() - rank(&images);
        let b = if k == 1 {
            0
        } else {
            let prev: Vec<Vec<Scalar>> = r.cochains(k - 1, p).iter().map(|phi| r.delta(phi, k - 1, p)).collect();
            rank(&prev)
        };
        out[p as usize] = [c.len(), z, b, z - b];
    }
    out
}

fn reduce(rows: &[Vec<Scalar>], cols: usize) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let mut m: Vec<Vec<Scalar>> = rows.to_vec();
    let mut pivots = vec![];
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][c].inv().unwrap();
        m[r] = m[r].iter().map(|x| x.clone() * inv.clone()).collect();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(pivot_row) {
                    *x = x.clone() - f.clone() * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vec<Scalar>]) -> usize {
    match rows.first() {
        None => 0,
        Some(r0) => reduce(rows, r0.len()).1.len(),
    }
}

pub fn null_space(rows: &[Vec<Scalar>], cols: usize) -> Vec<Vec<Scalar>> {
    let (m, pivots) = reduce(rows, cols);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Scalar::zero(); cols];
            v[free] = Scalar::one();
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = -row[free].clone();
            }
            v
        })
        .collect()
}

pub fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

pub fn q(n: i64, d: i64) -> Scalar {
    Scalar::from_ratio(n, d)
}

use hsuper_core::{CatalogId, Family};

/// Parameter grid covering every family and delta branch. The second
/// h2_offdiag point violates (μ0−1)μ11 = 0 and must be rejected.
pub fn grid() -> Vec<CatalogId> {
    let i = Scalar::i;
    let pts: Vec<(Family, Scalar, Scalar)> = vec![
        (Family::H1Diag, s(2), s(3)),
        (Family::H1Diag, s(1), s(1)),
        (Family::H1Diag, s(1), s(2)),
        (Family::H1Diag, s(-1), s(-1)),
        (Family::H1Antidiag, s(2), s(3)),
        (Family::H1Antidiag, s(2), q(1, 2)),
        (Family::H1Antidiag, i(), -i()),
        (Family::H1Row, s(2), s(0)),
        (Family::H1Row, s(1), s(5)),
        (Family::H1Row, s(0), s(5)),
        (Family::H1Row, s(0), s(0)),
        (Family::H2Diag, s(2), s(3)),
        (Family::H2Diag, s(1), s(1)),
        (Family::H2Diag, s(0), s(4)),
        (Family::H2Diag, s(-1), s(2)),
        (Family::H2Diag, s(1), s(0)),
        (Family::H2Offdiag, s(1), s(3)),
        (Family::H2Offdiag, s(0), s(5)),
        (Family::H2Offdiag, s(0), s(0)),
        (Family::H2Offdiag, s(1), s(0)),
        (Family::H2Offdiag, s(2), s(0)),
    ];
    pts.into_iter()
        .map(|(f, a, b)| {
            let n = f.param_names();
            CatalogId::new(f, &[(n[0], a), (n[1], b)])
        })
        .collect()
}

pub fn id(f: Family, ps: &[Scalar]) -> CatalogId {
    let pairs: Vec<(&str, Scalar)> = f.param_names().iter().copied().zip(ps.iter().cloned()).collect();
    CatalogId::new(f, &pairs)
}
