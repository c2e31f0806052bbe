//! Elimination, intersection, quotients and saturation.

use crate::error::{Error, Result};
use crate::poly::{MonomialOrder, MultiPoly, PolyRing};

use super::{GroebnerBasis, Ideal};

/// A variable name not used by `ring`, built from `base`.
fn fresh_name(ring: &PolyRing, base: &str) -> String {
    let mut name = base.to_string();
    let mut k = 0;
    while ring.index_of(&name).is_some() {
        k += 1;
        name = format!("{base}{k}");
    }
    name
}

/// `ring` with extra variables placed first under a block order, so that
/// they are eliminated.
fn elimination_ring(ring: &PolyRing, extra: &[String]) -> Result<PolyRing> {
    let mut vars: Vec<String> = extra.to_vec();
    vars.extend(ring.vars().iter().cloned());
    PolyRing::new(&vars, MonomialOrder::Block { split: extra.len() })
}

/// Elements of a Gröbner basis free of the first `k` variables, mapped into
/// `target` by name.
fn eliminated_part(gb: &GroebnerBasis, k: usize, target: &PolyRing) -> Result<Ideal> {
    let kept = gb
        .basis()
        .iter()
        .filter(|g| g.support_vars().iter().all(|&i| i >= k))
        .map(|g| g.map_into(target))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(target, kept)
}

/// `I ∩ k[remaining variables]`, returned in a grevlex ring on the variables
/// of `ideal` other than `vars`.
pub fn eliminate(ideal: &Ideal, vars: &[&str]) -> Result<Ideal> {
    let ring = ideal.ring();
    for v in vars {
        if ring.index_of(v).is_none() {
            return Err(Error::UnknownVariable(v.to_string()));
        }
    }
    let elim: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
    let kept: Vec<String> = ring
        .vars()
        .iter()
        .filter(|v| !elim.contains(v))
        .cloned()
        .collect();
    let mut order = elim.clone();
    order.extend(kept.iter().cloned());
    let big = PolyRing::new(&order, MonomialOrder::Block { split: elim.len() })?;
    let gens = ideal
        .gens()
        .iter()
        .map(|g| g.map_into(&big))
        .collect::<Result<Vec<_>>>()?;
    let gb = GroebnerBasis::compute(&big, &gens);
    let target = PolyRing::new(&kept, MonomialOrder::GrevLex)?;
    eliminated_part(&gb, elim.len(), &target)
}

/// `I ∩ J` via `t·I + (1 - t)·J`.
pub fn intersect(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    let ring = i.ring();
    if ring != j.ring() {
        return Err(Error::RingMismatch);
    }
    let t_name = fresh_name(ring, "_t");
    let big = elimination_ring(ring, std::slice::from_ref(&t_name))?;
    let t = big.var(&t_name)?;
    let one_minus_t = &big.one() - &t;
    let mut gens = Vec::new();
    for g in i.gens() {
        gens.push(&t * &g.map_into(&big)?);
    }
    for g in j.gens() {
        gens.push(&one_minus_t * &g.map_into(&big)?);
    }
    let gb = GroebnerBasis::compute(&big, &gens);
    eliminated_part(&gb, 1, ring)
}

/// `I : f`.
pub fn quotient(i: &Ideal, f: &MultiPoly) -> Result<Ideal> {
    if f.ring() != i.ring() {
        return Err(Error::RingMismatch);
    }
    if f.is_zero() {
        return Ok(Ideal::unit(i.ring()));
    }
    let fi = Ideal::new(i.ring(), vec![f.clone()])?;
    let cap = intersect(i, &fi)?;
    let gens = cap
        .gens()
        .iter()
        .map(|g| {
            g.exact_div(f)
                .ok_or_else(|| Error::Invalid("intersection element not divisible".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(i.ring(), gens)
}

/// `I : f^∞` by the Rabinowitsch trick: eliminate `z` from `I + ⟨1 - z f⟩`.
pub fn saturate(i: &Ideal, f: &MultiPoly) -> Result<Ideal> {
    let ring = i.ring();
    if f.ring() != ring {
        return Err(Error::RingMismatch);
    }
    if f.is_zero() {
        return Ok(Ideal::unit(ring));
    }
    let z_name = fresh_name(ring, "_z");
    let big = elimination_ring(ring, std::slice::from_ref(&z_name))?;
    let z = big.var(&z_name)?;
    let mut gens = i
        .gens()
        .iter()
        .map(|g| g.map_into(&big))
        .collect::<Result<Vec<_>>>()?;
    gens.push(&big.one() - &(&z * &f.map_into(&big)?));
    let gb = GroebnerBasis::compute(&big, &gens);
    eliminated_part(&gb, 1, ring)
}

/// `I : f^∞` by repeated quotients, giving up after `cap` steps.
pub fn saturate_by_quotients(i: &Ideal, f: &MultiPoly, cap: usize) -> Result<Ideal> {
    let mut cur = i.clone();
    for _ in 0..cap {
        let next = quotient(&cur, f)?;
        if cur.contains_ideal(&next) {
            return Ok(cur.reduced());
        }
        cur = next;
    }
    Err(Error::SaturationCap(cap))
}

/// Saturation by the irrelevant ideal `⟨x_1, …, x_n⟩`.
pub fn saturate_irrelevant(i: &Ideal) -> Result<Ideal> {
    let all: Vec<String> = i.ring().vars().to_vec();
    saturate_by_variables(i, &all)
}

/// Saturation by the ideal generated by the named variables, e.g. the
/// irrelevant ideal of one factor of a product of projective spaces.
pub fn saturate_by_variables<S: AsRef<str>>(i: &Ideal, vars: &[S]) -> Result<Ideal> {
    let ring = i.ring();
    let mut acc: Option<Ideal> = None;
    for v in vars {
        let s = saturate(i, &ring.var(v.as_ref())?)?;
        acc = Some(match acc {
            None => s,
            Some(a) => intersect(&a, &s)?,
        });
    }
    Ok(acc.unwrap_or_else(|| i.clone()))
}
