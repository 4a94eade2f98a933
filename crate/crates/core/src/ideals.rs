//! Reduced Groebner bases in degrevlex and the combinatorial dimension of the
//! affine zero set.

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::poly::{Monomial, Polynomial};

/// Reduced Groebner basis, monic, sorted ascending by leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    field: Arc<FieldSpec>,
    nvars: usize,
    polys: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_unit(&self) -> bool {
        self.polys.iter().any(Polynomial::is_constant)
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        reduce(f, &self.polys)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Affine Krull dimension of the zero set; -1 for the unit ideal.
    pub fn dimension(&self) -> i64 {
        if self.is_unit() {
            return -1;
        }
        let masks: Vec<u64> = self.polys.iter().map(|g| g.leading_monomial().unwrap().support_mask()).collect();
        let n = self.nvars;
        assert!(n < 64, "too many variables for subset enumeration");
        let mut best = 0;
        for s in 0u64..(1u64 << n) {
            let size = s.count_ones() as i64;
            if size > best && masks.iter().all(|&m| m & !s != 0) {
                best = size;
            }
        }
        best
    }
}

/// Full division remainder of `f` by the list `g` (leading terms removed
/// whenever some leading monomial divides them).
fn reduce(f: &Polynomial, g: &[Polynomial]) -> Polynomial {
    let field = f.field().clone();
    let mut p = f.clone();
    let mut r = Polynomial::zero(&field, f.nvars());
    let lts: Vec<(Monomial, _)> = g
        .iter()
        .filter(|gi| !gi.is_zero())
        .map(|gi| (gi.leading_monomial().unwrap().clone(), gi.leading_coeff()))
        .collect();
    let nonzero: Vec<&Polynomial> = g.iter().filter(|gi| !gi.is_zero()).collect();
    while let Some((m, c)) = p.pop_leading() {
        match lts.iter().position(|(lm, _)| lm.divides(&m)) {
            Some(k) => {
                let q = m.div(&lts[k].0).unwrap();
                let factor = field.neg(field.div(c, lts[k].1).unwrap());
                // the leading terms cancel; add the tail of -factor * q * g_k
                for (gm, gc) in nonzero[k].terms().rev().skip(1) {
                    p.add_term(gm.mul(&q), field.mul(factor, gc));
                }
            }
            None => r.add_term(m, c),
        }
    }
    r
}

fn s_polynomial(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let (la, lb) = (a.leading_monomial().unwrap(), b.leading_monomial().unwrap());
    let l = la.lcm(lb);
    let f = a.field();
    let ca = f.inv(a.leading_coeff()).unwrap();
    let cb = f.inv(b.leading_coeff()).unwrap();
    &a.mul_term(ca, &l.div(la).unwrap()) - &b.mul_term(cb, &l.div(lb).unwrap())
}

/// Reduced Groebner basis of the ideal generated by `gens`.
///
/// Pairs are processed in increasing `(deg lcm, lcm, i, j)` order, with the
/// coprime-leading-term and chain criteria.
pub fn groebner(gens: &[Polynomial]) -> Result<GroebnerBasis> {
    let first = gens.first().ok_or(Error::Precondition("empty generator list".into()))?;
    let (field, nvars) = (first.field().clone(), first.nvars());
    for g in gens {
        if !crate::field::same_field(g.field(), &field) {
            return Err(Error::FieldMismatch);
        }
        if g.nvars() != nvars {
            return Err(Error::VariableMismatch(nvars, g.nvars()));
        }
    }
    let mut g: Vec<Polynomial> = Vec::new();
    for p in gens {
        let r = reduce(p, &g);
        if !r.is_zero() {
            g.push(r.monic());
        }
    }
    if g.iter().any(Polynomial::is_constant) {
        return Ok(GroebnerBasis { field: field.clone(), nvars, polys: vec![Polynomial::one(&field, nvars)] });
    }

    let lcm_key = |g: &[Polynomial], i: usize, j: usize| {
        let l = g[i].leading_monomial().unwrap().lcm(g[j].leading_monomial().unwrap());
        (l.degree(), l, i, j)
    };
    let mut queue: BTreeSet<(u32, Monomial, usize, usize)> = BTreeSet::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    for j in 0..g.len() {
        for i in 0..j {
            queue.insert(lcm_key(&g, i, j));
            pending.insert((i, j));
        }
    }
    while let Some((_, lcm, i, j)) = queue.pop_first() {
        pending.remove(&(i, j));
        let (li, lj) = (g[i].leading_monomial().unwrap(), g[j].leading_monomial().unwrap());
        if li.is_coprime(lj) {
            continue;
        }
        let chain = (0..g.len()).any(|k| {
            k != i
                && k != j
                && g[k].leading_monomial().unwrap().divides(&lcm)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let r = reduce(&s_polynomial(&g[i], &g[j]), &g);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return Ok(GroebnerBasis { field: field.clone(), nvars, polys: vec![Polynomial::one(&field, nvars)] });
        }
        g.push(r.monic());
        let n = g.len() - 1;
        for k in 0..n {
            queue.insert(lcm_key(&g, k, n));
            pending.insert((k, n));
        }
    }

    // minimalize, then reduce tails
    let mut minimal: Vec<Polynomial> = Vec::new();
    for (a, ga) in g.iter().enumerate() {
        let la = ga.leading_monomial().unwrap();
        let redundant = g.iter().enumerate().any(|(b, gb)| {
            let lb = gb.leading_monomial().unwrap();
            b != a && lb.divides(la) && (lb != la || b < a)
        });
        if !redundant {
            minimal.push(ga.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for a in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal.iter().enumerate().filter(|(b, _)| *b != a).map(|(_, p)| p.clone()).collect();
        let (m, c) = minimal[a].leading_term().map(|(m, c)| (m.clone(), c)).unwrap();
        let mut tail = minimal[a].clone();
        tail.pop_leading();
        let mut out = reduce(&tail, &others);
        out.add_term(m, c);
        reduced.push(out.monic());
    }
    reduced.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    Ok(GroebnerBasis { field, nvars, polys: reduced })
}

/// Remainder of `f` modulo a Groebner basis; zero iff `f` lies in the ideal.
pub fn normal_form(f: &Polynomial, basis: &GroebnerBasis) -> Result<Polynomial> {
    if !crate::field::same_field(f.field(), &basis.field) {
        return Err(Error::FieldMismatch);
    }
    if f.nvars() != basis.nvars {
        return Err(Error::VariableMismatch(basis.nvars, f.nvars()));
    }
    Ok(basis.normal_form(f))
}

pub fn ideal_dimension(basis: &GroebnerBasis) -> i64 {
    basis.dimension()
}

/// Codimension of the zero set of `fs` in affine space; `nvars + 1` when the
/// zero set is empty.
pub fn zero_locus_codim(fs: &[Polynomial]) -> Result<usize> {
    let nonzero: Vec<Polynomial> = fs.iter().filter(|f| !f.is_zero()).cloned().collect();
    if nonzero.is_empty() {
        return Err(Error::ZeroInput);
    }
    let g = groebner(&nonzero)?;
    let nvars = g.nvars;
    Ok(match g.dimension() {
        -1 => nvars + 1,
        d => nvars - d as usize,
    })
}
