use std::cmp::Ordering;

/// A monomial over a fixed number of variables, stored densely. The degree and
/// a 64-bit divisibility mask are cached.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Box<[u16]>,
    degree: u32,
    mask: u64,
}

fn mask_of(exps: &[u16]) -> u64 {
    let mut m = 0u64;
    for (i, &e) in exps.iter().enumerate() {
        if e > 0 {
            m |= 1 << (i % 64);
        }
    }
    m
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars].into_boxed_slice(), degree: 0, mask: 0 }
    }

    pub fn from_exponents(exps: Vec<u16>) -> Self {
        let degree = exps.iter().map(|&e| u32::from(e)).sum();
        let mask = mask_of(&exps);
        Monomial { exps: exps.into_boxed_slice(), degree, mask }
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial::from_exponents(e)
    }

    /// Sparse construction from `(index, exponent)` pairs; repeated indices add up.
    pub fn from_pairs(nvars: usize, pairs: &[(usize, u16)]) -> Self {
        let mut e = vec![0u16; nvars];
        for &(i, k) in pairs {
            e[i] = e[i].checked_add(k).expect("exponent overflow");
        }
        Monomial::from_exponents(e)
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn exponent(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    /// Nonzero `(index, exponent)` pairs in increasing index order.
    pub fn pairs(&self) -> Vec<(usize, u16)> {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, &e)| (i, e)).collect()
    }

    /// Indices of the variables that occur.
    pub fn support(&self) -> Vec<usize> {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i).collect()
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.mask & !other.mask == 0 && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps: Vec<u16> = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
            .collect();
        Monomial { exps: exps.into_boxed_slice(), degree: self.degree + other.degree, mask: self.mask | other.mask }
    }

    /// `self / other`; panics unless `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        let exps: Vec<u16> = self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a - b).collect();
        Monomial::from_exponents(exps)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Vec<u16> = self.exps.iter().zip(other.exps.iter()).map(|(a, b)| *a.max(b)).collect();
        Monomial::from_exponents(exps)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let exps: Vec<u16> = self.exps.iter().zip(other.exps.iter()).map(|(a, b)| *a.min(b)).collect();
        Monomial::from_exponents(exps)
    }

    /// No variable in common.
    pub fn is_coprime(&self, other: &Monomial) -> bool {
        if self.mask & other.mask == 0 {
            return true;
        }
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Removes the highest power of variable `i` dividing the monomial.
    pub fn strip_variable(&self, i: usize) -> Monomial {
        let mut e = self.exps.to_vec();
        e[i] = 0;
        Monomial::from_exponents(e)
    }

    /// Reindexes into a ring with `nvars` variables; `map[i]` is the new index of variable `i`.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> Monomial {
        let mut e = vec![0u16; nvars];
        for (i, &k) in self.exps.iter().enumerate() {
            if k > 0 {
                e[map[i]] = k;
            }
        }
        Monomial::from_exponents(e)
    }

    /// Graded reverse lexicographic comparison on the index range `range`.
    pub(crate) fn cmp_degrevlex(&self, other: &Monomial, range: std::ops::Range<usize>) -> Ordering {
        let da: u32 = self.exps[range.clone()].iter().map(|&e| u32::from(e)).sum();
        let db: u32 = other.exps[range.clone()].iter().map(|&e| u32::from(e)).sum();
        match da.cmp(&db) {
            Ordering::Equal => {}
            o => return o,
        }
        for i in range.rev() {
            match self.exps[i].cmp(&other.exps[i]) {
                Ordering::Equal => {}
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    }

    pub(crate) fn cmp_degrevlex_full(&self, other: &Monomial) -> Ordering {
        match self.degree.cmp(&other.degree) {
            Ordering::Equal => {}
            o => return o,
        }
        for i in (0..self.exps.len()).rev() {
            match self.exps[i].cmp(&other.exps[i]) {
                Ordering::Equal => {}
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    }

    pub(crate) fn cmp_lex(&self, other: &Monomial) -> Ordering {
        self.exps.cmp(&other.exps)
    }
}

impl std::fmt::Debug for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.pairs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisibility_and_lcm() {
        let a = Monomial::from_exponents(vec![1, 0, 2]);
        let b = Monomial::from_exponents(vec![1, 1, 2]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(a.lcm(&Monomial::from_exponents(vec![0, 3, 1])), Monomial::from_exponents(vec![1, 3, 2]));
        assert_eq!(b.div(&a), Monomial::variable(3, 1));
        assert!(Monomial::variable(3, 0).is_coprime(&Monomial::variable(3, 2)));
    }

    #[test]
    fn degrevlex_prefers_small_last_exponent() {
        // x0*x2 < x1^2 in degrevlex with x0 > x1 > x2
        let a = Monomial::from_exponents(vec![1, 0, 1]);
        let b = Monomial::from_exponents(vec![0, 2, 0]);
        assert_eq!(a.cmp_degrevlex_full(&b), Ordering::Less);
        assert_eq!(a.cmp_lex(&b), Ordering::Greater);
    }
}
