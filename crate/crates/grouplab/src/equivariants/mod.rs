//! Polynomial maps and spaces of homogeneous equivariants.
//!
//! Monomials are ordered graded-lexicographically throughout, so coefficient
//! vectors, ranks, and leading-coefficient normalizations are deterministic.

mod dimension;
mod g3basis;
mod restriction;

pub use dimension::{
    equivariant_dimension, reynolds_average, reynolds_equivariant_basis, EquivariantBasis,
};
pub use g3basis::{g3_cubic_basis, gradient_check, invariant_i41, invariant_i42, radial_cubic};
pub use restriction::{restriction_rank, RestrictionReport};

use std::collections::BTreeMap;

use nalgebra::DMatrix;

/// Exponent vector with graded-lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u8>);

impl Monomial {
    pub fn degree(&self) -> usize {
        self.0.iter().map(|e| *e as usize).sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.degree(), &self.0).cmp(&(other.degree(), &other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials in `n` variables of total degree exactly `d`, in graded-lex
/// order.
pub fn monomials_of_degree(n: usize, d: usize) -> Vec<Monomial> {
    fn rec(n: usize, d: usize, prefix: &mut Vec<u8>, out: &mut Vec<Monomial>) {
        if n == 1 {
            prefix.push(d as u8);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in 0..=d {
            prefix.push(e as u8);
            rec(n - 1, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// A real polynomial in `nvars` variables.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    pub nvars: usize,
    pub terms: BTreeMap<Monomial, f64>,
}

const COEFF_EPS: f64 = 1e-12;

impl Poly {
    pub fn zero(nvars: usize) -> Poly {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn var(nvars: usize, i: usize) -> Poly {
        let mut e = vec![0u8; nvars];
        e[i] = 1;
        Poly::from_terms(nvars, vec![(Monomial(e), 1.0)])
    }

    pub fn constant(nvars: usize, c: f64) -> Poly {
        Poly::from_terms(nvars, vec![(Monomial(vec![0u8; nvars]), c)])
    }

    pub fn from_terms(nvars: usize, terms: Vec<(Monomial, f64)>) -> Poly {
        let mut map = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.0.len(), nvars);
            *map.entry(m).or_insert(0.0) += c;
        }
        map.retain(|_, c| c.abs() > COEFF_EPS);
        Poly { nvars, terms: map }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            *terms.entry(m.clone()).or_insert(0.0) += c;
        }
        terms.retain(|_, c| c.abs() > COEFF_EPS);
        Poly {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn scale(&self, s: f64) -> Poly {
        let mut terms = self.terms.clone();
        for c in terms.values_mut() {
            *c *= s;
        }
        terms.retain(|_, c| c.abs() > COEFF_EPS);
        Poly {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(-1.0))
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut terms: BTreeMap<Monomial, f64> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = Monomial(ma.0.iter().zip(mb.0.iter()).map(|(a, b)| a + b).collect());
                *terms.entry(m).or_insert(0.0) += ca * cb;
            }
        }
        terms.retain(|_, c| c.abs() > COEFF_EPS);
        Poly {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn eval(&self, v: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut t = *c;
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t *= v[i];
                }
            }
            acc += t;
        }
        acc
    }

    pub fn derivative(&self, i: usize) -> Poly {
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            if m.0[i] == 0 {
                continue;
            }
            let mut e = m.0.clone();
            let k = e[i] as f64;
            e[i] -= 1;
            terms.push((Monomial(e), c * k));
        }
        Poly::from_terms(self.nvars, terms)
    }

    /// Substitution `v = B w`: `B` has `nvars` rows; the result is a
    /// polynomial in `B.ncols()` variables.
    pub fn compose_linear(&self, b: &DMatrix<f64>) -> Poly {
        assert_eq!(b.nrows(), self.nvars);
        let m = b.ncols();
        let rows: Vec<Poly> = (0..self.nvars)
            .map(|i| {
                let terms = (0..m)
                    .filter(|&j| b[(i, j)].abs() > COEFF_EPS)
                    .map(|j| {
                        let mut e = vec![0u8; m];
                        e[j] = 1;
                        (Monomial(e), b[(i, j)])
                    })
                    .collect();
                Poly::from_terms(m, terms)
            })
            .collect();
        let mut acc = Poly::zero(m);
        for (mono, c) in &self.terms {
            let mut t = Poly::constant(m, *c);
            for (i, &e) in mono.0.iter().enumerate() {
                for _ in 0..e {
                    t = t.mul(&rows[i]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// A polynomial map; components need not match the variable count (e.g.
/// restrictions to a subspace are maps in the subspace coordinates).
#[derive(Debug, Clone, PartialEq)]
pub struct PolyMap {
    pub nvars: usize,
    pub components: Vec<Poly>,
}

impl PolyMap {
    pub fn zero(nvars: usize, ncomps: usize) -> PolyMap {
        PolyMap {
            nvars,
            components: vec![Poly::zero(nvars); ncomps],
        }
    }

    pub fn eval(&self, v: &[f64]) -> Vec<f64> {
        self.components.iter().map(|p| p.eval(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.components
            .iter()
            .map(|p| p.max_degree())
            .max()
            .unwrap_or(0)
    }

    /// Every monomial of every component has total degree exactly `d`.
    pub fn is_homogeneous(&self, d: usize) -> bool {
        self.components
            .iter()
            .all(|p| p.terms.keys().all(|m| m.degree() == d))
    }

    pub fn add(&self, other: &PolyMap) -> PolyMap {
        PolyMap {
            nvars: self.nvars,
            components: self
                .components
                .iter()
                .zip(other.components.iter())
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn scale(&self, s: f64) -> PolyMap {
        PolyMap {
            nvars: self.nvars,
            components: self.components.iter().map(|p| p.scale(s)).collect(),
        }
    }

    pub fn sub(&self, other: &PolyMap) -> PolyMap {
        self.add(&other.scale(-1.0))
    }

    /// `g . p := g^-1 p(g v)` for an orthogonal matrix `g` (the action used
    /// by the averaging projector).
    pub fn conjugate_by(&self, g: &DMatrix<f64>) -> PolyMap {
        let composed: Vec<Poly> = self
            .components
            .iter()
            .map(|p| p.compose_linear(g))
            .collect();
        let ginv = g.transpose();
        let comps = (0..self.components.len())
            .map(|r| {
                let mut acc = Poly::zero(self.nvars);
                for (c, comp) in composed.iter().enumerate() {
                    let w = ginv[(r, c)];
                    if w.abs() > COEFF_EPS {
                        acc = acc.add(&comp.scale(w));
                    }
                }
                acc
            })
            .collect();
        PolyMap {
            nvars: self.nvars,
            components: comps,
        }
    }

    /// Flat coefficient vector over (component, graded-lex monomial of
    /// degree `d`) positions.
    pub fn coeff_vector(&self, d: usize) -> Vec<f64> {
        let monos = monomials_of_degree(self.nvars, d);
        let mut out = Vec::with_capacity(self.components.len() * monos.len());
        for comp in &self.components {
            for m in &monos {
                out.push(comp.terms.get(m).copied().unwrap_or(0.0));
            }
        }
        out
    }

    /// Rescales so the first nonzero coefficient in (component, graded-lex)
    /// order is +1.
    pub fn normalize_leading(&self) -> PolyMap {
        let d = self.max_degree();
        for c in self.coeff_vector(d) {
            if c.abs() > 1e-9 {
                return self.scale(1.0 / c);
            }
        }
        self.clone()
    }

    /// Max deviation of `p(g v)` from `g p(v)` over sample points.
    pub fn equivariance_deviation(&self, g: &DMatrix<f64>, points: &[Vec<f64>]) -> f64 {
        let mut dev = 0.0f64;
        for v in points {
            let gv: Vec<f64> = {
                let x = nalgebra::DVector::from_column_slice(v);
                (g * x).iter().copied().collect()
            };
            let lhs = self.eval(&gv);
            let p = self.eval(v);
            let gp = g * nalgebra::DVector::from_vec(p);
            for (a, b) in lhs.iter().zip(gp.iter()) {
                dev = dev.max((a - b).abs());
            }
        }
        dev
    }
}

/// Inner product `<p(v), v>` as a polynomial (for square maps).
pub fn radial_component(p: &PolyMap) -> Poly {
    let mut acc = Poly::zero(p.nvars);
    for (i, comp) in p.components.iter().enumerate() {
        acc = acc.add(&comp.mul(&Poly::var(p.nvars, i)));
    }
    acc
}
