//! Multivariate polynomials with exact rational coefficients and
//! nonnegative exponents, plus the univariate helpers used by the
//! nondegeneracy certificates.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::rat::{format_rat, Rat};

/// A polynomial (or truncated power series) with finite support in
/// `Z_{>=0}^dim`. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    dim: usize,
    terms: BTreeMap<Vec<u64>, Rat>,
}

impl MultiPoly {
    pub fn zero(dim: usize) -> Self {
        MultiPoly {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(dim: usize, alpha: Vec<u64>, coeff: Rat) -> Self {
        let mut p = MultiPoly::zero(dim);
        p.add_term(alpha, coeff);
        p
    }

    pub fn constant(dim: usize, c: Rat) -> Self {
        MultiPoly::monomial(dim, vec![0; dim], c)
    }

    pub fn one(dim: usize) -> Self {
        MultiPoly::constant(dim, Rat::one())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, alpha: Vec<u64>, coeff: Rat) {
        assert_eq!(alpha.len(), self.dim);
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(alpha);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn coeff(&self, alpha: &[u64]) -> Rat {
        self.terms.get(alpha).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u64>, &Rat)> {
        self.terms.iter()
    }

    pub fn support(&self) -> Vec<Vec<u64>> {
        self.terms.keys().cloned().collect()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u64 {
        self.terms
            .keys()
            .map(|a| a.iter().sum())
            .max()
            .unwrap_or(0)
    }

    /// Order of vanishing at the origin: the smallest total degree carrying
    /// a nonzero term. Zero polynomials have no order.
    pub fn order(&self) -> Option<u64> {
        self.terms.keys().map(|a| a.iter().sum()).min()
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.dim, other.dim);
        let mut out = MultiPoly::zero(self.dim);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let e: Vec<u64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u64) -> MultiPoly {
        let mut acc = MultiPoly::one(self.dim);
        let mut sq = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        acc
    }

    pub fn scale(&self, f: &Rat) -> MultiPoly {
        if f.is_zero() {
            return MultiPoly::zero(self.dim);
        }
        MultiPoly {
            dim: self.dim,
            terms: self.terms.iter().map(|(a, c)| (a.clone(), c * f)).collect(),
        }
    }

    pub fn eval(&self, x: &[Rat]) -> Rat {
        assert_eq!(x.len(), self.dim);
        let mut acc = Rat::zero();
        for (a, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &e) in x.iter().zip(a) {
                if e > 0 {
                    t *= crate::rat::rat_pow(xi, e);
                }
            }
            acc += t;
        }
        acc
    }

    /// Drops every term of total degree `> bound`.
    pub fn truncate_above(&self, bound: u64) -> MultiPoly {
        MultiPoly {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(a, _)| a.iter().sum::<u64>() <= bound)
                .map(|(a, c)| (a.clone(), c.clone()))
                .collect(),
        }
    }

    /// The subsum of terms involving only the variables listed in `axes`,
    /// re-expressed in `axes.len()` variables (in the given order).
    pub fn restrict_to_axes(&self, axes: &[usize]) -> MultiPoly {
        let mut out = MultiPoly::zero(axes.len());
        'term: for (a, c) in &self.terms {
            for (i, &e) in a.iter().enumerate() {
                if e > 0 && !axes.contains(&i) {
                    continue 'term;
                }
            }
            out.add_term(axes.iter().map(|&i| a[i]).collect(), c.clone());
        }
        out
    }

    /// The terms minimizing `<weight, alpha>`.
    pub fn initial_form(&self, weight: &[Rat]) -> MultiPoly {
        assert_eq!(weight.len(), self.dim);
        let key = |a: &Vec<u64>| -> Rat {
            a.iter()
                .zip(weight)
                .map(|(&e, w)| crate::rat::rat(e as i64) * w)
                .sum()
        };
        let Some(min) = self.terms.keys().map(&key).min() else {
            return MultiPoly::zero(self.dim);
        };
        MultiPoly {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(a, _)| key(a) == min)
                .map(|(a, c)| (a.clone(), c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (a, c) in &self.terms {
            let s = format_rat(c);
            if first {
                write!(f, "{s}")?;
                first = false;
            } else if s.starts_with('-') {
                write!(f, " - {}", &s[1..])?;
            } else {
                write!(f, " + {s}")?;
            }
            for (i, &e) in a.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*x{}", i + 1)?,
                    _ => write!(f, "*x{}^{}", i + 1, e)?,
                }
            }
        }
        Ok(())
    }
}

/// Dense univariate polynomial, index = exponent. Trailing zeros trimmed.
pub fn trim(mut v: Vec<Rat>) -> Vec<Rat> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

pub fn univariate_degree(v: &[Rat]) -> Option<usize> {
    v.iter().rposition(|c| !c.is_zero())
}

fn univariate_rem(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let db = univariate_degree(b).expect("division by zero polynomial");
    let mut r = a.to_vec();
    while let Some(dr) = univariate_degree(&r) {
        if dr < db {
            break;
        }
        let f = &r[dr] / &b[db];
        for i in 0..=db {
            let v = &r[dr - db + i] - &f * &b[i];
            r[dr - db + i] = v;
        }
        r[dr] = Rat::zero();
    }
    trim(r)
}

/// Monic greatest common divisor over the rationals.
pub fn univariate_gcd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = univariate_rem(&a, &b);
        a = b;
        b = r;
    }
    if let Some(d) = univariate_degree(&a) {
        let lead = a[d].clone();
        for c in &mut a {
            *c /= lead.clone();
        }
    }
    a
}

/// Strips the lowest power of the variable, so the result has a nonzero
/// constant term (roots at zero are discarded).
pub fn strip_zero_roots(v: &[Rat]) -> Vec<Rat> {
    let v = trim(v.to_vec());
    match v.iter().position(|c| !c.is_zero()) {
        Some(k) => v[k..].to_vec(),
        None => v,
    }
}
