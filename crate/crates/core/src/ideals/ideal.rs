use std::sync::{Arc, OnceLock};

use super::coeff::{Field, Rational};
use super::groebner::{normal_form, reduced_groebner};
use super::monomial::Monomial;
use super::poly::Polynomial;
use super::ring::{MonomialOrder, Ring, Var};
use crate::error::{Error, Result};

/// An ideal given by generators, with its reduced Gröbner basis computed once
/// on first use.
pub struct Ideal<K: Field = Rational> {
    ring: Arc<Ring>,
    gens: Vec<Polynomial<K>>,
    gb: OnceLock<Vec<Polynomial<K>>>,
}

impl<K: Field> Clone for Ideal<K> {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(g) = self.gb.get() {
            let _ = gb.set(g.clone());
        }
        Ideal { ring: self.ring.clone(), gens: self.gens.clone(), gb }
    }
}

impl<K: Field> std::fmt::Debug for Ideal<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.gens.iter()).finish()
    }
}

/// A variable name not present in `ring`.
pub(crate) fn fresh_aux(ring: &Ring, base: &str) -> Var {
    let mut k = 0;
    loop {
        let v = Var::Aux(if k == 0 { base.to_string() } else { format!("{base}{k}") });
        if ring.table().get(&v).is_none() {
            return v;
        }
        k += 1;
    }
}

impl<K: Field> Ideal<K> {
    pub fn new(ring: &Arc<Ring>, gens: Vec<Polynomial<K>>) -> Result<Self> {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).map(|g| g.to_ring(ring)).collect::<Result<Vec<_>>>()?;
        Ok(Ideal { ring: ring.clone(), gens, gb: OnceLock::new() })
    }

    pub(crate) fn from_gens(ring: &Arc<Ring>, gens: Vec<Polynomial<K>>) -> Self {
        Ideal::new(ring, gens).expect("generators live in the ring")
    }

    pub fn zero(ring: &Arc<Ring>) -> Self {
        Ideal { ring: ring.clone(), gens: Vec::new(), gb: OnceLock::new() }
    }

    pub fn unit(ring: &Arc<Ring>) -> Self {
        Ideal::from_gens(ring, vec![Polynomial::one(ring)])
    }

    /// The ideal generated by the given variables.
    pub fn variables(ring: &Arc<Ring>, indices: impl IntoIterator<Item = usize>) -> Self {
        Ideal::from_gens(ring, indices.into_iter().map(|i| Polynomial::variable(ring, i)).collect())
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<K>] {
        &self.gens
    }

    pub fn groebner(&self) -> &[Polynomial<K>] {
        self.gb.get_or_init(|| reduced_groebner(&self.ring, &self.gens))
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        let gb = self.groebner();
        gb.len() == 1 && gb[0].is_constant()
    }

    pub fn normal_form(&self, f: &Polynomial<K>) -> Result<Polynomial<K>> {
        Ok(normal_form(&f.to_ring(&self.ring)?, self.groebner()))
    }

    pub fn contains(&self, f: &Polynomial<K>) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Every generator of `other` lies in `self`.
    pub fn contains_ideal(&self, other: &Ideal<K>) -> Result<bool> {
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality by reduced Gröbner bases in this ideal's order.
    pub fn equals(&self, other: &Ideal<K>) -> Result<bool> {
        let theirs = if other.ring == self.ring {
            other.groebner().to_vec()
        } else {
            let moved = other.gens.iter().map(|g| g.to_ring(&self.ring)).collect::<Result<Vec<_>>>()?;
            reduced_groebner(&self.ring, &moved)
        };
        Ok(self.groebner() == theirs.as_slice())
    }

    pub fn sum(&self, other: &Ideal<K>) -> Result<Ideal<K>> {
        let mut gens = self.gens.clone();
        for g in &other.gens {
            gens.push(g.to_ring(&self.ring)?);
        }
        Ideal::new(&self.ring, gens)
    }

    /// The same ideal in another ring containing its variables.
    pub fn to_ring(&self, ring: &Arc<Ring>) -> Result<Ideal<K>> {
        Ideal::new(ring, self.gens.clone())
    }

    /// Same generators, different monomial order.
    pub fn with_order(&self, order: MonomialOrder) -> Ideal<K> {
        let ring = self.ring.with_order(order);
        let map: Vec<usize> = (0..ring.nvars()).collect();
        Ideal::from_gens(&ring, self.gens.iter().map(|g| g.remap(&ring, &map)).collect())
    }

    /// Elements of the reduced basis of `gens` (in `big`, whose first `k`
    /// variables form an elimination block) free of those variables, moved
    /// to `self.ring`.
    fn eliminate_into(&self, big: &Arc<Ring>, gens: Vec<Polynomial<K>>, k: usize) -> Ideal<K> {
        let gb = reduced_groebner(big, &gens);
        let n = self.ring.nvars();
        let mut map = vec![usize::MAX; big.nvars()];
        for (i, m) in map.iter_mut().enumerate().skip(k) {
            *m = i - k;
        }
        let kept: Vec<Polynomial<K>> = gb
            .into_iter()
            .filter(|g| g.support().iter().all(|&i| i >= k))
            .map(|g| g.remap(&self.ring, &map))
            .collect();
        debug_assert!(kept.iter().all(|g| g.ring().nvars() == n));
        Ideal::from_gens(&self.ring, kept)
    }

    /// Index map into a ring with `k` variables prepended.
    fn lift(&self, k: usize) -> Vec<usize> {
        (0..self.ring.nvars()).map(|i| i + k).collect()
    }

    /// `I ∩ J` through a tag variable: `t·I + (1 − t)·J`, eliminate `t`.
    pub fn intersect(&self, other: &Ideal<K>) -> Result<Ideal<K>> {
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(&self.ring));
        }
        let other = other.to_ring(&self.ring)?;
        if self.is_unit() {
            return Ok(other);
        }
        if other.is_unit() {
            return Ok(self.clone());
        }
        let t = fresh_aux(&self.ring, "t");
        let big = self.ring.with_leading(vec![t]);
        let map = self.lift(1);
        let tv = Polynomial::variable(&big, 0);
        let one_minus_t = Polynomial::one(&big).sub(&tv);
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(g.remap(&big, &map).mul(&tv));
        }
        for g in &other.gens {
            gens.push(g.remap(&big, &map).mul(&one_minus_t));
        }
        Ok(self.eliminate_into(&big, gens, 1))
    }

    /// `(I : u^∞)` with an extra variable: `I + (1 − y·u)`, eliminate `y`.
    pub fn saturate(&self, u: &Monomial) -> Ideal<K> {
        if u.is_one() || self.is_zero() {
            return self.clone();
        }
        let y = fresh_aux(&self.ring, "y");
        let big = self.ring.with_leading(vec![y]);
        let map = self.lift(1);
        let mut gens: Vec<Polynomial<K>> = self.gens.iter().map(|g| g.remap(&big, &map)).collect();
        let yu = Polynomial::monomial(&big, u.remap(big.nvars(), &map)).mul(&Polynomial::variable(&big, 0));
        gens.push(Polynomial::one(&big).sub(&yu));
        self.eliminate_into(&big, gens, 1)
    }

    /// `(I : u)` as `(I ∩ (u)) / u`.
    pub fn colon(&self, u: &Monomial) -> Result<Ideal<K>> {
        let principal = Ideal::from_gens(&self.ring, vec![Polynomial::monomial(&self.ring, u.clone())]);
        let meet = self.intersect(&principal)?;
        let gens = meet
            .gens
            .iter()
            .map(|g| g.div_monomial(u).ok_or_else(|| Error::Parse("intersection element not divisible".into())))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(&self.ring, gens)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    /// `(I : x_i^∞)` for a homogeneous ideal: reduced basis in degrevlex with
    /// `x_i` smallest, then divide out `x_i`.
    pub fn saturate_variable(&self, i: usize) -> Ideal<K> {
        if !self.is_homogeneous() {
            return self.saturate(&Monomial::variable(self.ring.nvars(), i));
        }
        let (last, map) = self.ring.with_last(i);
        let moved: Vec<Polynomial<K>> = self.gens.iter().map(|g| g.remap(&last, &map)).collect();
        let gb = reduced_groebner(&last, &moved);
        let n = last.nvars();
        let mut back = vec![0; n];
        for (a, &b) in map.iter().enumerate() {
            back[b] = a;
        }
        let mut changed = false;
        let gens: Vec<Polynomial<K>> = gb
            .into_iter()
            .map(|g| {
                let k = g.content_monomial().exponent(n - 1);
                if k > 0 {
                    changed = true;
                    let mut e = vec![0u16; n];
                    e[n - 1] = k;
                    g.div_monomial(&Monomial::from_exponents(e)).expect("common power")
                } else {
                    g
                }
            })
            .map(|g| g.remap(&self.ring, &back))
            .collect();
        if changed {
            Ideal::from_gens(&self.ring, gens)
        } else {
            self.clone()
        }
    }

    /// `(I : (x_1···x_n)^∞)`, one variable at a time.
    pub fn saturate_all_variables(&self) -> Ideal<K> {
        if !self.is_homogeneous() {
            let u = Monomial::from_exponents(vec![1; self.ring.nvars()]);
            return self.saturate(&u);
        }
        let mut cur = self.clone();
        for i in 0..self.ring.nvars() {
            cur = cur.saturate_variable(i);
        }
        cur
    }

    /// Krull dimension of `S/I`: the largest set of variables containing the
    /// support of no leading monomial.
    pub fn dimension(&self) -> Result<usize> {
        if self.is_zero() {
            return Ok(self.ring.nvars());
        }
        if self.is_unit() {
            return Err(Error::UnitIdeal("dimension of the zero ring"));
        }
        let supports: Vec<Vec<usize>> =
            self.groebner().iter().map(|g| g.lead_monomial().expect("nonzero").support()).collect();
        Ok(self.ring.nvars() - min_hitting_set(&supports, self.ring.nvars()))
    }

    pub fn height(&self) -> Result<usize> {
        Ok(self.ring.nvars() - self.dimension()?)
    }

    /// All leading monomials of the reduced basis are squarefree.
    pub fn has_squarefree_initial(&self) -> bool {
        self.groebner().iter().all(|g| g.lead_monomial().is_some_and(|m| m.is_squarefree()))
    }

    /// Every reduced-basis element is a pure-difference binomial.
    pub fn groebner_is_pure_difference(&self) -> bool {
        self.groebner().iter().all(|g| g.is_pure_difference_binomial())
    }

    /// Contains some monomial, i.e. `(I : (x_1···x_n)^∞)` is the unit ideal.
    pub fn contains_monomial(&self) -> bool {
        self.saturate_all_variables().is_unit()
    }
}

/// Size of a smallest set meeting every set in `sets`.
pub(crate) fn min_hitting_set(sets: &[Vec<usize>], n: usize) -> usize {
    let mut sets: Vec<Vec<usize>> = sets.to_vec();
    sets.sort_by_key(|s| s.len());
    let mut minimal: Vec<Vec<usize>> = Vec::new();
    for s in sets {
        if !minimal.iter().any(|m| m.iter().all(|v| s.contains(v))) {
            minimal.push(s);
        }
    }
    let mut chosen = vec![false; n];
    let mut excluded = vec![false; n];
    let mut best = minimal.iter().flatten().collect::<std::collections::BTreeSet<_>>().len();
    hitting(&minimal, &mut chosen, &mut excluded, 0, &mut best);
    best
}

fn hitting(sets: &[Vec<usize>], chosen: &mut [bool], excluded: &mut [bool], count: usize, best: &mut usize) {
    if count >= *best {
        return;
    }
    let unhit: Vec<&Vec<usize>> = sets.iter().filter(|s| !s.iter().any(|&v| chosen[v])).collect();
    if unhit.is_empty() {
        *best = count;
        return;
    }
    // greedy packing of pairwise disjoint unhit sets bounds the remaining need
    let mut used = vec![false; chosen.len()];
    let mut packing = 0;
    for s in &unhit {
        let free: Vec<usize> = s.iter().copied().filter(|&v| !excluded[v]).collect();
        if free.is_empty() {
            return;
        }
        if free.iter().all(|&v| !used[v]) {
            packing += 1;
            for v in free {
                used[v] = true;
            }
        }
    }
    if count + packing >= *best {
        return;
    }
    let pick = unhit
        .iter()
        .min_by_key(|s| s.iter().filter(|&&v| !excluded[v]).count())
        .expect("nonempty");
    let options: Vec<usize> = pick.iter().copied().filter(|&v| !excluded[v]).collect();
    let mut newly = Vec::new();
    for v in options {
        chosen[v] = true;
        hitting(sets, chosen, excluded, count + 1, best);
        chosen[v] = false;
        excluded[v] = true;
        newly.push(v);
    }
    for v in newly {
        excluded[v] = false;
    }
}
