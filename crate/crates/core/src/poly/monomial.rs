use std::cmp::Ordering;

use smallvec::SmallVec;

/// A power product stored sparsely as `(variable, exponent)` pairs sorted by
/// variable, with no zero exponents.
///
/// `Ord` is degrevlex with `x0 > x1 > ... > xn`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: SmallVec<[(u16, u32); 4]>,
    degree: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(i: usize) -> Self {
        Self::var_pow(i, 1)
    }

    pub fn var_pow(i: usize, e: u32) -> Self {
        let mut m = Monomial::default();
        if e > 0 {
            m.exps.push((i as u16, e));
            m.degree = e;
        }
        m
    }

    /// From `(variable, exponent)` pairs in any order; repeated variables add.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, u32)>) -> Self {
        let mut m = Monomial::one();
        for (v, e) in pairs {
            m = m.mul(&Self::var_pow(v, e));
        }
        m
    }

    /// From a dense exponent slice.
    pub fn from_exponents(exps: &[u32]) -> Self {
        Self::from_pairs(exps.iter().enumerate().map(|(i, &e)| (i, e)))
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.exps
            .iter()
            .find(|&&(v, _)| v as usize == var)
            .map_or(0, |&(_, e)| e)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.exps.iter().map(|&(v, e)| (v as usize, e))
    }

    /// Largest variable index present.
    pub fn max_var(&self) -> Option<usize> {
        self.exps.last().map(|&(v, _)| v as usize)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = SmallVec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() || j < other.exps.len() {
            match (self.exps.get(i), other.exps.get(j)) {
                (Some(&(va, ea)), Some(&(vb, eb))) if va == vb => {
                    out.push((va, ea + eb));
                    i += 1;
                    j += 1;
                }
                (Some(&a), Some(&b)) if a.0 < b.0 => {
                    out.push(a);
                    i += 1;
                }
                (Some(_), Some(&b)) => {
                    out.push(b);
                    j += 1;
                }
                (Some(&a), None) => {
                    out.push(a);
                    i += 1;
                }
                (None, Some(&b)) => {
                    out.push(b);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Monomial { exps: out, degree: self.degree + other.degree }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        if self.degree > other.degree {
            return false;
        }
        let mut j = 0;
        for &(v, e) in &self.exps {
            while j < other.exps.len() && other.exps[j].0 < v {
                j += 1;
            }
            match other.exps.get(j) {
                Some(&(w, f)) if w == v && f >= e => {}
                _ => return false,
            }
        }
        true
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let mut out = SmallVec::new();
        for &(v, e) in &self.exps {
            let f = other.exponent(v as usize);
            if e > f {
                out.push((v, e - f));
            }
        }
        Some(Monomial { exps: out, degree: self.degree - other.degree })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut pairs: Vec<(usize, u32)> = self.pairs().collect();
        for (v, e) in other.pairs() {
            match pairs.iter_mut().find(|(w, _)| *w == v) {
                Some(slot) => slot.1 = slot.1.max(e),
                None => pairs.push((v, e)),
            }
        }
        Monomial::from_pairs(pairs)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().all(|&(v, _)| other.exponent(v as usize) == 0)
    }

    /// Bit set of the variables that occur.
    pub fn support_mask(&self) -> u64 {
        self.exps.iter().fold(0, |m, &(v, _)| m | (1u64 << v))
    }

    /// Drop variable `var` entirely; returns the exponent it had.
    pub fn split_var(&self, var: usize) -> (Monomial, u32) {
        let e = self.exponent(var);
        let exps: SmallVec<_> = self.exps.iter().copied().filter(|&(v, _)| v as usize != var).collect();
        (Monomial { exps, degree: self.degree - e }, e)
    }

    /// Multiply the exponent of `var` by nothing, just lower it by `by`.
    pub fn lower(&self, var: usize, by: u32) -> Option<Monomial> {
        self.div(&Monomial::var_pow(var, by))
    }

    /// All exponents divided by `p`, if they are all divisible.
    pub fn pth_root(&self, p: u32) -> Option<Monomial> {
        if self.exps.iter().any(|&(_, e)| e % p != 0) {
            return None;
        }
        let exps: SmallVec<_> = self.exps.iter().map(|&(v, e)| (v, e / p)).collect();
        Some(Monomial { exps, degree: self.degree / p })
    }

    pub fn pow(&self, n: u32) -> Monomial {
        let exps: SmallVec<_> = if n == 0 {
            SmallVec::new()
        } else {
            self.exps.iter().map(|&(v, e)| (v, e * n)).collect()
        };
        Monomial { exps, degree: self.degree * n }
    }

    /// Rename variables through `map` (old index -> new index).
    pub fn remap(&self, map: impl Fn(usize) -> usize) -> Monomial {
        Monomial::from_pairs(self.pairs().map(|(v, e)| (map(v), e)))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree.cmp(&other.degree) {
            Ordering::Equal => {}
            ord => return ord,
        }
        // Walk from the highest-index variable downwards; at the first
        // difference, the smaller exponent wins.
        let (mut i, mut j) = (self.exps.len(), other.exps.len());
        loop {
            let a = if i > 0 { Some(self.exps[i - 1]) } else { None };
            let b = if j > 0 { Some(other.exps[j - 1]) } else { None };
            match (a, b) {
                (None, None) => return Ordering::Equal,
                (Some((va, ea)), Some((vb, eb))) if va == vb => {
                    if ea != eb {
                        return eb.cmp(&ea);
                    }
                    i -= 1;
                    j -= 1;
                }
                (Some((va, _)), Some((vb, _))) => {
                    // the side holding the larger variable has a positive
                    // exponent where the other has zero
                    return if va > vb { Ordering::Less } else { Ordering::Greater };
                }
                (Some(_), None) => return Ordering::Less,
                (None, Some(_)) => return Ordering::Greater,
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense_degrevlex(a: &[u32], b: &[u32]) -> Ordering {
        let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
        if da != db {
            return da.cmp(&db);
        }
        for i in (0..a.len()).rev() {
            if a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    }

    #[test]
    fn order_matches_dense_reference() {
        let mut all = Vec::new();
        for e0 in 0..3 {
            for e1 in 0..3 {
                for e2 in 0..3 {
                    all.push([e0, e1, e2]);
                }
            }
        }
        for a in &all {
            for b in &all {
                assert_eq!(
                    Monomial::from_exponents(a).cmp(&Monomial::from_exponents(b)),
                    dense_degrevlex(a, b),
                    "{a:?} vs {b:?}"
                );
            }
        }
        assert!(Monomial::var(0) > Monomial::var(1));
        // x1^2 > x0 x2 in degrevlex
        assert!(Monomial::var_pow(1, 2) > Monomial::from_pairs([(0, 1), (2, 1)]));
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = Monomial::from_pairs([(0, 2), (2, 1)]);
        let b = Monomial::from_pairs([(0, 1)]);
        assert!(b.divides(&a));
        assert!(!a.divides(&b));
        assert_eq!(a.div(&b).unwrap(), Monomial::from_pairs([(0, 1), (2, 1)]));
        assert_eq!(a.lcm(&Monomial::var(1)), Monomial::from_pairs([(0, 2), (1, 1), (2, 1)]));
        assert!(Monomial::var(1).is_coprime(&a));
    }
}
