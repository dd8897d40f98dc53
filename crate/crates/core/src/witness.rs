//! Search for isomorphism witnesses by solving the intertwining equations
//! `P[e_i,e_j]₁ = [Pe_i, Pe_j]₂`, `Pα₁ = α₂P` over ℚ(i).
//!
//! The system is quadratic in the entries of `P`. A small branching solver
//! handles it: eliminate variables that occur linearly with a constant
//! coefficient, split off monomial factors, solve univariate quadratics with
//! the exact square root, and fall back to trying small values. Every
//! candidate is checked with [`verify_isomorphism`], so the search can miss
//! witnesses but never reports a wrong one.

use std::collections::BTreeMap;

use crate::algebra::{verify_isomorphism, HomLieSuperalgebra};
use crate::field::Scalar;
use crate::linalg::{invert, Matrix};

#[derive(Clone, Debug, PartialEq, Eq)]
struct Poly {
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl Poly {
    fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    fn constant(n: usize, c: Scalar) -> Self {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(vec![0; n], c);
        }
        p
    }

    fn var(n: usize, k: usize) -> Self {
        let mut e = vec![0; n];
        e[k] = 1;
        let mut p = Poly::zero();
        p.terms.insert(e, Scalar::one());
        p
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, e: Vec<u32>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Scalar::zero);
        *entry += &c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    fn scale(&self, c: &Scalar) -> Poly {
        let mut out = Poly::zero();
        for (e, x) in &self.terms {
            out.add_term(e.clone(), x * c);
        }
        out
    }

    fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    fn degree_in(&self, k: usize) -> u32 {
        self.terms.keys().map(|e| e[k]).max().unwrap_or(0)
    }

    fn vars(&self) -> Vec<usize> {
        let n = self.terms.keys().next().map_or(0, Vec::len);
        (0..n).filter(|&k| self.degree_in(k) > 0).collect()
    }

    fn constant_value(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Splits `p = x_k·a + b` when `p` has degree 1 in `x_k`.
    fn split_linear(&self, k: usize) -> (Poly, Poly) {
        let mut a = Poly::zero();
        let mut b = Poly::zero();
        for (e, c) in &self.terms {
            if e[k] == 1 {
                let mut e2 = e.clone();
                e2[k] = 0;
                a.add_term(e2, c.clone());
            } else {
                b.add_term(e.clone(), c.clone());
            }
        }
        (a, b)
    }

    fn substitute(&self, k: usize, value: &Poly, n: usize) -> Poly {
        let mut powers = vec![Poly::constant(n, Scalar::one())];
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            let d = e[k] as usize;
            while powers.len() <= d {
                let next = powers.last().unwrap().mul(value);
                powers.push(next);
            }
            let mut e2 = e.clone();
            e2[k] = 0;
            let mono = Poly {
                terms: BTreeMap::from([(e2, c.clone())]),
            };
            out = out.add(&mono.mul(&powers[d]));
        }
        out
    }

    /// Largest power of `x_k` dividing every term.
    fn min_degree_in(&self, k: usize) -> u32 {
        self.terms.keys().map(|e| e[k]).min().unwrap_or(0)
    }

    fn divide_var(&self, k: usize, d: u32) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[k] -= d;
            out.add_term(e2, c.clone());
        }
        out
    }
}

/// Trial values for otherwise unconstrained unknowns.
fn guesses() -> Vec<Scalar> {
    vec![
        Scalar::one(),
        Scalar::from_int(-1),
        Scalar::from_int(2),
        Scalar::zero(),
        Scalar::i(),
        Scalar::from_ratio(1, 2),
        Scalar::from_int(3),
    ]
}

struct Search<'a> {
    n: usize,
    accept: &'a dyn Fn(&[Scalar]) -> bool,
    budget: usize,
}

impl Search<'_> {
    fn run(&mut self, eqs: Vec<Poly>, subs: Vec<(usize, Poly)>) -> Option<Vec<Scalar>> {
        if self.budget == 0 {
            return None;
        }
        self.budget -= 1;
        let mut eqs: Vec<Poly> = eqs.into_iter().filter(|p| !p.is_zero()).collect();
        if eqs.iter().any(|p| p.constant_value().is_some()) {
            return None;
        }
        eqs.sort_by_key(|p| p.terms.len());
        eqs.dedup();
        if eqs.is_empty() {
            return self.finish(&subs);
        }
        // linear elimination with a constant coefficient
        for (idx, p) in eqs.iter().enumerate() {
            for k in p.vars() {
                if p.degree_in(k) != 1 {
                    continue;
                }
                let (a, b) = p.split_linear(k);
                if let Some(c) = a.constant_value() {
                    let value = b.scale(&-c.inv().expect("nonzero"));
                    return self.eliminate(&eqs, idx, k, value, subs);
                }
            }
        }
        let p = eqs[0].clone();
        // monomial factor x_k^d · q: try q = 0 first, then x_k = 0
        for k in p.vars() {
            let d = p.min_degree_in(k);
            if d > 0 {
                let q = p.divide_var(k, d);
                let mut rest = eqs[1..].to_vec();
                rest.push(q);
                if let Some(s) = self.run(rest, subs.clone()) {
                    return Some(s);
                }
                return self.eliminate(&eqs, 0, k, Poly::zero(), subs);
            }
        }
        let vars = p.vars();
        if vars.len() == 1 && p.degree_in(vars[0]) == 2 {
            let k = vars[0];
            let coeff = |d: u32| {
                p.terms
                    .iter()
                    .find(|(e, _)| e[k] == d)
                    .map(|(_, c)| c.clone())
                    .unwrap_or_else(Scalar::zero)
            };
            let (a, b, c) = (coeff(2), coeff(1), coeff(0));
            let disc = &(&b * &b) - &(&Scalar::from_int(4) * &(&a * &c));
            let root = disc.sqrt()?;
            let two_a_inv = (&Scalar::from_int(2) * &a).inv().expect("degree 2");
            for r in [&(-b.clone()) + &root, &(-b.clone()) - &root] {
                let x = &r * &two_a_inv;
                if let Some(s) = self.eliminate(&eqs, 0, k, Poly::constant(self.n, x), subs.clone()) {
                    return Some(s);
                }
            }
            return None;
        }
        // guess a value for the variable of highest degree
        let k = *vars.iter().max_by_key(|&&k| p.degree_in(k)).expect("non-constant");
        for x in guesses() {
            let value = Poly::constant(self.n, x);
            let eqs2: Vec<Poly> = eqs.iter().map(|q| q.substitute(k, &value, self.n)).collect();
            let mut subs2 = subs.clone();
            subs2.push((k, value));
            if let Some(s) = self.run(eqs2, subs2) {
                return Some(s);
            }
        }
        None
    }

    fn eliminate(
        &mut self,
        eqs: &[Poly],
        skip: usize,
        k: usize,
        value: Poly,
        mut subs: Vec<(usize, Poly)>,
    ) -> Option<Vec<Scalar>> {
        let rest: Vec<Poly> = eqs
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, q)| q.substitute(k, &value, self.n))
            .collect();
        subs.push((k, value));
        self.run(rest, subs)
    }

    /// Assigns trial values to the still-free unknowns and back-substitutes.
    fn finish(&mut self, subs: &[(usize, Poly)]) -> Option<Vec<Scalar>> {
        let bound: Vec<usize> = subs.iter().map(|(k, _)| *k).collect();
        let free: Vec<usize> = (0..self.n).filter(|k| !bound.contains(k)).collect();
        let g = guesses();
        let tries = g.len().min(5);
        let total = tries.pow(free.len() as u32).min(4096);
        for code in 0..total {
            let mut values: Vec<Option<Scalar>> = vec![None; self.n];
            let mut c = code;
            for &k in &free {
                values[k] = Some(g[c % tries].clone());
                c /= tries;
            }
            for (k, expr) in subs.iter().rev() {
                let mut p = expr.clone();
                for (j, v) in values.iter().enumerate() {
                    if let Some(v) = v {
                        p = p.substitute(j, &Poly::constant(self.n, v.clone()), self.n);
                    }
                }
                values[*k] = Some(p.constant_value()?);
            }
            let values: Vec<Scalar> = values.into_iter().map(|v| v.expect("assigned")).collect();
            if (self.accept)(&values) {
                return Some(values);
            }
        }
        None
    }
}

/// Allowed nonzero positions of a witness matrix.
pub type Pattern = Vec<Vec<bool>>;

/// The zero pattern of a matrix.
pub fn pattern_of(m: &Matrix) -> Pattern {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| !m[(i, j)].is_zero()).collect())
        .collect()
}

/// Searches for an even `P` (restricted to `pattern` if given) with
/// `verify_isomorphism(g1, g2, P)`; with `match_alpha = false` only the
/// brackets are intertwined.
pub fn find_witness(
    g1: &HomLieSuperalgebra,
    g2: &HomLieSuperalgebra,
    pattern: Option<&Pattern>,
    match_alpha: bool,
) -> Option<Matrix> {
    let n = g1.dim();
    if g1.parity() != g2.parity() || g2.dim() != n {
        return None;
    }
    let p = g1.parity();
    let positions: Vec<(usize, usize)> = (0..n)
        .flat_map(|r| (0..n).map(move |c| (r, c)))
        .filter(|&(r, c)| p[r] == p[c] && pattern.is_none_or(|pat| pat[r][c]))
        .collect();
    let nv = positions.len();
    let mut w = vec![vec![Poly::zero(); n]; n];
    for (k, &(r, c)) in positions.iter().enumerate() {
        w[r][c] = Poly::var(nv, k);
    }
    let konst = |c: &Scalar| Poly::constant(nv, c.clone());
    let mut eqs = Vec::new();
    for i in 0..n {
        for j in i..n {
            let b1 = g1.bracket_basis(i, j);
            for o in 0..n {
                // (W b1)_o − Σ_{a,b} W[a][i] W[b][j] [e_a,e_b]₂,o
                let mut e = Poly::zero();
                for (k, x) in b1.iter().enumerate() {
                    if !x.is_zero() {
                        e = e.add(&w[o][k].scale(x));
                    }
                }
                for a in 0..n {
                    if w[a][i].is_zero() {
                        continue;
                    }
                    for b in 0..n {
                        let c = &g2.bracket_basis(a, b)[o];
                        if c.is_zero() || w[b][j].is_zero() {
                            continue;
                        }
                        e = e.add(&w[a][i].mul(&w[b][j]).scale(&-c.clone()));
                    }
                }
                eqs.push(e);
            }
        }
    }
    if match_alpha {
        let (a1, a2) = (g1.alpha(), g2.alpha());
        for r in 0..n {
            for c in 0..n {
                let mut e = Poly::zero();
                for k in 0..n {
                    e = e.add(&w[r][k].mul(&konst(&a1[(k, c)])));
                    e = e.add(&w[k][c].mul(&konst(&-a2[(r, k)].clone())));
                }
                eqs.push(e);
            }
        }
    }
    let build = |vals: &[Scalar]| {
        let mut m = Matrix::zeros(n, n);
        for (k, &(r, c)) in positions.iter().enumerate() {
            m[(r, c)] = vals[k].clone();
        }
        m
    };
    let accept = |vals: &[Scalar]| {
        let m = build(vals);
        if match_alpha {
            verify_isomorphism(g1, g2, &m)
        } else {
            invert(&m).expect("square").is_some()
                && g2
                    .with_alpha(&(&m * g1.alpha()) * &invert(&m).unwrap().unwrap())
                    .is_ok_and(|t| verify_isomorphism(g1, &t, &m))
        }
    };
    let mut search = Search {
        n: nv,
        accept: &accept,
        budget: 20_000,
    };
    search.run(eqs, Vec::new()).map(|v| build(&v))
}

/// Reason why no even `P` can satisfy `Pα₁ = α₂P`, if one is detectable
/// from per-parity similarity invariants (complete for blocks of size ≤ 2).
pub fn similarity_obstruction(parity: &[u8], a1: &Matrix, a2: &Matrix) -> Option<String> {
    for q in [0u8, 1] {
        let idx: Vec<usize> = (0..parity.len()).filter(|&i| parity[i] == q).collect();
        let block = |m: &Matrix| {
            let mut b = Matrix::zeros(idx.len(), idx.len());
            for (r, &i) in idx.iter().enumerate() {
                for (c, &j) in idx.iter().enumerate() {
                    b[(r, c)] = m[(i, j)].clone();
                }
            }
            b
        };
        let (b1, b2) = (block(a1), block(a2));
        let name = if q == 0 { "even" } else { "odd" };
        let trace = |m: &Matrix| (0..m.rows()).map(|i| m[(i, i)].clone()).sum::<Scalar>();
        if trace(&b1) != trace(&b2) || b1.determinant().ok() != b2.determinant().ok() {
            return Some(format!("{name} blocks of the twists have different characteristic polynomials"));
        }
        if b1.rank() != b2.rank() {
            return Some(format!("{name} blocks of the twists have different ranks"));
        }
        if idx.len() == 2 {
            let c = &trace(&b1) * &Scalar::from_ratio(1, 2);
            let shift = |m: &Matrix| m.sub(&Matrix::identity(2).scale(&c)).rank();
            let disc = &(&trace(&b1) * &trace(&b1)) - &(&Scalar::from_int(4) * &b1.determinant().unwrap());
            if disc.is_zero() && shift(&b1) != shift(&b2) {
                return Some(format!("{name} blocks of the twists have different Jordan types"));
            }
        }
    }
    None
}

/// Reason why the brackets cannot be isomorphic, from dimension invariants.
pub fn bracket_obstruction(g1: &HomLieSuperalgebra, g2: &HomLieSuperalgebra) -> Option<String> {
    let d = (g1.derived_ideal().dim(), g2.derived_ideal().dim());
    if d.0 != d.1 {
        return Some(format!("derived ideals have dimensions {} and {}", d.0, d.1));
    }
    let z = (g1.center().dim(), g2.center().dim());
    if z.0 != z.1 {
        return Some(format!("centers have dimensions {} and {}", z.0, z.1));
    }
    if g1.is_lie_superalgebra() != g2.is_lie_superalgebra() {
        return Some("exactly one bracket satisfies the super-Jacobi identity".into());
    }
    None
}
