use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use super::coeff::{Field, Rational};
use super::monomial::Monomial;
use super::ring::Ring;
use crate::error::{Error, Result};

pub(crate) type Term<K> = (Monomial, K);

/// A polynomial with terms sorted decreasingly in the ring order and no zero
/// coefficients.
#[derive(Clone)]
pub struct Polynomial<K: Field = Rational> {
    ring: Arc<Ring>,
    terms: Vec<Term<K>>,
}

impl<K: Field> PartialEq for Polynomial<K> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring)
    }
}

impl<K: Field> Eq for Polynomial<K> {}

impl<K: Field> Polynomial<K> {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Arc<Ring>, c: K) -> Self {
        Polynomial::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Polynomial::constant(ring, K::one())
    }

    pub fn term(ring: &Arc<Ring>, m: Monomial, c: K) -> Self {
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial) -> Self {
        Polynomial::term(ring, m, K::one())
    }

    pub fn variable(ring: &Arc<Ring>, i: usize) -> Self {
        Polynomial::monomial(ring, Monomial::variable(ring.nvars(), i))
    }

    /// `a - b`.
    pub fn binomial(ring: &Arc<Ring>, a: Monomial, b: Monomial) -> Self {
        Polynomial::from_terms(ring, vec![(a, K::one()), (b, K::one().neg())])
    }

    /// Sorts, merges equal monomials and drops zeros.
    pub fn from_terms(ring: &Arc<Ring>, mut terms: Vec<Term<K>>) -> Self {
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        let mut out: Vec<Term<K>> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = lc.add(&c),
                _ => out.push((m, c)),
            }
            if out.last().is_some_and(|(_, c)| c.is_zero()) {
                out.pop();
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial { ring: ring.clone(), terms: out }
    }

    pub(crate) fn from_sorted(ring: &Arc<Ring>, terms: Vec<Term<K>>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, K)] {
        &self.terms
    }

    pub(crate) fn into_terms(self) -> Vec<Term<K>> {
        self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn lead_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn lead_coeff(&self) -> Option<&K> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].0.degree() == w[1].0.degree())
    }

    /// Two terms with coefficients `1` and `-1`.
    pub fn is_pure_difference_binomial(&self) -> bool {
        self.terms.len() == 2
            && ((self.terms[0].1.is_one() && self.terms[1].1.neg().is_one())
                || (self.terms[0].1.neg().is_one() && self.terms[1].1.is_one()))
    }

    /// Is a single term.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Indices of all variables occurring.
    pub fn support(&self) -> Vec<usize> {
        let mut seen = vec![false; self.ring.nvars()];
        for (m, _) in &self.terms {
            for i in m.support() {
                seen[i] = true;
            }
        }
        (0..seen.len()).filter(|&i| seen[i]).collect()
    }

    fn check_ring(&self, other: &Self) {
        assert!(Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring, "polynomials from different rings");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_ring(other);
        Polynomial { ring: self.ring.clone(), terms: merge(&self.ring, &self.terms, &other.terms, &K::one(), None) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_ring(other);
        Polynomial {
            ring: self.ring.clone(),
            terms: merge(&self.ring, &self.terms, &other.terms, &K::one().neg(), None),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&K::one().neg())
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c))).collect() }
    }

    /// Multiplication by a monomial preserves the term order.
    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.clone())).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_ring(other);
        let mut acc = Polynomial::zero(&self.ring);
        for (m, c) in &other.terms {
            let part = merge(&self.ring, &acc.terms, &self.terms, c, Some(m));
            acc.terms = part;
        }
        acc
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.lead_coeff() {
            Some(c) if !c.is_one() => self.scale(&c.inv()),
            _ => self.clone(),
        }
    }

    /// Exact division by a monomial dividing every term.
    pub fn div_monomial(&self, m: &Monomial) -> Option<Self> {
        if !self.terms.iter().all(|(t, _)| m.divides(t)) {
            return None;
        }
        Some(Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(t, c)| (t.div(m), c.clone())).collect() })
    }

    /// Largest monomial dividing every term.
    pub fn content_monomial(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::one(self.ring.nvars()),
            Some((first, _)) => it.fold(first.clone(), |g, (m, _)| g.gcd(m)),
        }
    }

    /// The same polynomial in another ring, with variable `i` sent to `map[i]`.
    pub fn remap(&self, target: &Arc<Ring>, map: &[usize]) -> Self {
        let n = target.nvars();
        Polynomial::from_terms(target, self.terms.iter().map(|(m, c)| (m.remap(n, map), c.clone())).collect())
    }

    /// The same polynomial in another ring containing all its variables.
    pub fn to_ring(&self, target: &Arc<Ring>) -> Result<Self> {
        if Arc::ptr_eq(&self.ring, target) || *self.ring == **target {
            return Ok(self.clone());
        }
        let support = self.support();
        let n = self.ring.nvars();
        let mut map = vec![usize::MAX; n];
        for i in support {
            map[i] = target.index_of(self.ring.var(i))?;
        }
        Ok(self.remap(target, &map))
    }

    /// Exponent difference `e⁺ − e⁻` of a pure-difference binomial, leading term positive.
    pub fn exponent_difference(&self) -> Result<Vec<i64>> {
        if !self.is_pure_difference_binomial() {
            return Err(Error::NotBinomial(self.to_string()));
        }
        let (a, b) = (&self.terms[0].0, &self.terms[1].0);
        Ok(a.exponents().iter().zip(b.exponents()).map(|(x, y)| i64::from(*x) - i64::from(*y)).collect())
    }

    pub fn map_coefficients<L: Field>(&self, f: impl Fn(&K) -> Option<L>) -> Option<Polynomial<L>> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let d = f(c)?;
            if !d.is_zero() {
                terms.push((m.clone(), d));
            }
        }
        Some(Polynomial { ring: self.ring.clone(), terms })
    }
}

/// `a + c·m·b` as a sorted term list, with `m = 1` when absent.
pub(crate) fn merge<K: Field>(ring: &Ring, a: &[Term<K>], b: &[Term<K>], c: &K, m: Option<&Monomial>) -> Vec<Term<K>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut j = 0;
    let shifted = |t: &Monomial| match m {
        Some(m) => t.mul(m),
        None => t.clone(),
    };
    let mut next_b: Option<Monomial> = b.first().map(|t| shifted(&t.0));
    while i < a.len() || next_b.is_some() {
        let ord = match (a.get(i), next_b.as_ref()) {
            (Some(x), Some(y)) => ring.cmp(&x.0, y),
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (None, None) => unreachable!(),
        };
        match ord {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let mb = next_b.take().expect("present");
                let v = b[j].1.mul(c);
                if !v.is_zero() {
                    out.push((mb, v));
                }
                j += 1;
                next_b = b.get(j).map(|t| shifted(&t.0));
            }
            Ordering::Equal => {
                let mb = next_b.take().expect("present");
                let v = a[i].1.add(&b[j].1.mul(c));
                if !v.is_zero() {
                    out.push((mb, v));
                }
                i += 1;
                j += 1;
                next_b = b.get(j).map(|t| shifted(&t.0));
            }
        }
    }
    out
}

impl<K: Field> fmt::Display for Polynomial<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::io::write_polynomial(self, f)
    }
}

impl<K: Field> fmt::Debug for Polynomial<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
