//! Buchberger's algorithm with the Gebauer–Möller criteria and sugar selection.
//!
//! S-pairs of minimal sugar are reduced as a batch (in parallel with the
//! `parallel` feature) against a snapshot of the basis; the results are then
//! re-reduced and inserted one by one in pair order, so the output does not
//! depend on the thread count.

use std::cmp::Ordering;
use std::sync::Arc;

use super::coeff::Field;
use super::monomial::Monomial;
use super::poly::{merge, Polynomial, Term};
use super::ring::Ring;
use crate::par;

/// Largest number of S-pairs reduced together.
const BATCH: usize = 256;

struct Element<K> {
    terms: Vec<Term<K>>,
    sugar: u32,
}

impl<K> Element<K> {
    fn lead(&self) -> &Monomial {
        &self.terms[0].0
    }
}

#[derive(Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

/// Full reduction of `f` modulo the polynomials `basis` (each monic, nonzero).
pub(crate) fn reduce<K: Field>(ring: &Ring, f: Vec<Term<K>>, basis: &[&[Term<K>]]) -> Vec<Term<K>> {
    let mut rem: Vec<Term<K>> = Vec::new();
    let mut p = f;
    let mut start = 0;
    while start < p.len() {
        let (lead, lc) = (&p[start].0, &p[start].1);
        let divisor = basis.iter().find(|g| g[0].0.divides(lead));
        match divisor {
            Some(g) => {
                let shift = lead.div(&g[0].0);
                let c = lc.div(&g[0].1).neg();
                p = merge(ring, &p[start..], g, &c, Some(&shift));
                start = 0;
            }
            None => {
                rem.push(p[start].clone());
                start += 1;
            }
        }
    }
    rem
}

fn monic<K: Field>(mut t: Vec<Term<K>>) -> Vec<Term<K>> {
    if let Some((_, c)) = t.first() {
        if !c.is_one() {
            let inv = c.inv();
            for (_, a) in t.iter_mut() {
                *a = a.mul(&inv);
            }
        }
    }
    t
}

fn spoly<K: Field>(ring: &Ring, f: &[Term<K>], g: &[Term<K>], lcm: &Monomial) -> Vec<Term<K>> {
    let sf = lcm.div(&f[0].0);
    let sg = lcm.div(&g[0].0);
    let left: Vec<Term<K>> = f[1..].iter().map(|(m, c)| (m.mul(&sf), c.clone())).collect();
    merge(ring, &left, &g[1..], &K::one().neg(), Some(&sg))
}

struct State<K> {
    ring: Arc<Ring>,
    elems: Vec<Element<K>>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
    unit: bool,
}

impl<K: Field> State<K> {
    fn active_terms(&self) -> Vec<&[Term<K>]> {
        self.active.iter().map(|&i| self.elems[i].terms.as_slice()).collect()
    }

    /// Gebauer–Möller update for a new reduced, monic element.
    fn insert(&mut self, terms: Vec<Term<K>>, sugar: u32) {
        if terms[0].0.is_one() {
            self.unit = true;
            return;
        }
        let h = self.elems.len();
        self.elems.push(Element { terms, sugar });
        let hl = self.elems[h].lead().clone();

        let candidates: Vec<Pair> = self
            .active
            .iter()
            .map(|&g| {
                let gl = self.elems[g].lead();
                let lcm = hl.lcm(gl);
                let sugar = (self.elems[h].sugar + lcm.degree() - hl.degree())
                    .max(self.elems[g].sugar + lcm.degree() - gl.degree());
                Pair { i: g, j: h, lcm, sugar }
            })
            .collect();
        let coprime: Vec<bool> = candidates.iter().map(|p| self.elems[p.i].lead().is_coprime(&hl)).collect();
        // chain criterion among the new pairs
        let mut keep = vec![true; candidates.len()];
        for a in 0..candidates.len() {
            if coprime[a] {
                continue;
            }
            for b in 0..candidates.len() {
                if a == b || !keep[b] {
                    continue;
                }
                let (la, lb) = (&candidates[a].lcm, &candidates[b].lcm);
                if lb.divides(la) && (lb != la || b < a) {
                    keep[a] = false;
                    break;
                }
            }
        }
        // coprime leads: pair reduces to zero, but it still shields others above
        let new_pairs: Vec<Pair> =
            candidates.into_iter().enumerate().filter(|(k, _)| keep[*k] && !coprime[*k]).map(|(_, p)| p).collect();

        let elems = &self.elems;
        self.pairs.retain(|p| {
            !(hl.divides(&p.lcm)
                && elems[p.i].lead().lcm(&hl) != p.lcm
                && elems[p.j].lead().lcm(&hl) != p.lcm)
        });
        self.pairs.extend(new_pairs);
        self.active.retain(|&g| !hl.divides(elems[g].lead()));
        self.active.push(h);
    }

    fn take_batch(&mut self) -> Vec<Pair> {
        let ring = self.ring.clone();
        self.pairs.sort_by(|a, b| {
            a.sugar
                .cmp(&b.sugar)
                .then_with(|| ring.cmp(&a.lcm, &b.lcm))
                .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
        });
        let min = self.pairs[0].sugar;
        let n = self.pairs.iter().take_while(|p| p.sugar == min).count().min(BATCH);
        self.pairs.drain(..n).collect()
    }
}

fn sort_desc<K: Field>(ring: &Ring, mut terms: Vec<Term<K>>) -> Vec<Term<K>> {
    terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
    terms
}

/// The reduced Gröbner basis: monic, sorted by increasing leading monomial.
/// The zero ideal yields an empty basis and the unit ideal yields `[1]`.
pub fn reduced_groebner<K: Field>(ring: &Arc<Ring>, gens: &[Polynomial<K>]) -> Vec<Polynomial<K>> {
    let mut inputs: Vec<Vec<Term<K>>> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| sort_desc(ring, g.to_ring(ring).expect("generator in ring").into_terms()))
        .collect();
    inputs.sort_by(|a, b| ring.cmp(&a[0].0, &b[0].0).then_with(|| a.len().cmp(&b.len())));
    let mut st = State { ring: ring.clone(), elems: Vec::new(), active: Vec::new(), pairs: Vec::new(), unit: false };
    for f in inputs {
        let sugar = f.iter().map(|t| t.0.degree()).max().unwrap_or(0);
        let r = {
            let basis = st.active_terms();
            reduce(ring, f, &basis)
        };
        if !r.is_empty() {
            st.insert(monic(r), sugar);
        }
        if st.unit {
            return vec![Polynomial::one(ring)];
        }
    }
    while !st.pairs.is_empty() {
        let batch = st.take_batch();
        let reduced: Vec<Vec<Term<K>>> = {
            let basis = st.active_terms();
            let elems = &st.elems;
            par::map(&batch, |p| reduce(ring, spoly(ring, &elems[p.i].terms, &elems[p.j].terms, &p.lcm), &basis))
        };
        for (p, r) in batch.iter().zip(reduced) {
            if r.is_empty() {
                continue;
            }
            let r = {
                let basis = st.active_terms();
                reduce(ring, r, &basis)
            };
            if !r.is_empty() {
                st.insert(monic(r), p.sugar);
                if st.unit {
                    return vec![Polynomial::one(ring)];
                }
            }
        }
    }
    interreduce(ring, &st)
}

fn interreduce<K: Field>(ring: &Arc<Ring>, st: &State<K>) -> Vec<Polynomial<K>> {
    let minimal: Vec<usize> = st.active.clone();
    let reduced: Vec<Vec<Term<K>>> = par::map(&minimal, |&g| {
        let others: Vec<&[Term<K>]> =
            minimal.iter().filter(|&&o| o != g).map(|&o| st.elems[o].terms.as_slice()).collect();
        let f = &st.elems[g].terms;
        let mut tail = reduce(ring, f[1..].to_vec(), &others);
        let mut out = vec![f[0].clone()];
        out.append(&mut tail);
        monic(out)
    });
    let mut polys: Vec<Polynomial<K>> = reduced.into_iter().map(|t| Polynomial::from_sorted(ring, t)).collect();
    polys.sort_by(|a, b| cmp_leads(ring, a, b));
    polys
}

fn cmp_leads<K: Field>(ring: &Ring, a: &Polynomial<K>, b: &Polynomial<K>) -> Ordering {
    ring.cmp(a.lead_monomial().expect("nonzero"), b.lead_monomial().expect("nonzero"))
}

/// Remainder of `f` modulo a Gröbner basis.
pub fn normal_form<K: Field>(f: &Polynomial<K>, gb: &[Polynomial<K>]) -> Polynomial<K> {
    let ring = f.ring().clone();
    let basis: Vec<&[Term<K>]> = gb.iter().map(|g| g.terms()).collect();
    let r = reduce(&ring, f.terms().to_vec(), &basis);
    Polynomial::from_sorted(&ring, r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::coeff::{Fp, Rational};
    use crate::ideals::ring::{MonomialOrder, Var, VariableTable};

    fn xyz(order: MonomialOrder) -> Arc<Ring> {
        Ring::new(VariableTable::new(["x", "y", "z"].iter().map(|s| Var::Aux(s.to_string())).collect()), order)
    }

    #[test]
    fn linear_system_in_lex() {
        let r = xyz(MonomialOrder::Lex);
        let v = |i| Polynomial::<Rational>::variable(&r, i);
        let gb = reduced_groebner(&r, &[v(0).sub(&v(1)), v(1).sub(&v(2))]);
        assert_eq!(gb.iter().map(|g| g.to_string()).collect::<Vec<_>>(), vec!["y - z", "x - z"]);
    }

    #[test]
    fn principal_ideal_is_made_monic() {
        let r = xyz(MonomialOrder::Degrevlex);
        let v = |i| Polynomial::<Rational>::variable(&r, i);
        let f = v(0).mul(&v(1)).scale(&Rational::from_i64(3)).sub(&v(2));
        let gb = reduced_groebner(&r, std::slice::from_ref(&f));
        assert_eq!(gb, vec![f.monic()]);
    }

    #[test]
    fn twisted_cubic() {
        // (y^2 - xz, yz - x^3?) keep homogeneous: 2-minors of [[x,y,z],[y,z,w]] need w; use x,y,z,w
        let r = Ring::new(
            VariableTable::new(["x", "y", "z", "w"].iter().map(|s| Var::Aux(s.to_string())).collect()),
            MonomialOrder::Degrevlex,
        );
        let v = |i| Polynomial::<Fp>::variable(&r, i);
        let gens = [
            v(0).mul(&v(2)).sub(&v(1).mul(&v(1))),
            v(0).mul(&v(3)).sub(&v(1).mul(&v(2))),
            v(1).mul(&v(3)).sub(&v(2).mul(&v(2))),
        ];
        let gb = reduced_groebner(&r, &gens);
        assert_eq!(gb.len(), 3);
        for g in &gens {
            assert!(normal_form(g, &gb).is_zero());
        }
    }

    #[test]
    fn inconsistent_system_gives_unit() {
        let r = xyz(MonomialOrder::Degrevlex);
        let v = |i| Polynomial::<Rational>::variable(&r, i);
        let one = Polynomial::one(&r);
        let gb = reduced_groebner(&r, &[v(0).sub(&one), v(0).add(&one)]);
        assert_eq!(gb, vec![one]);
    }
}
