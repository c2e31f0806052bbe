//! Buchberger's algorithm over free modules with position-over-term order.
//!
//! An ideal is the rank-one case. Elements optionally carry cofactors: the
//! coordinates of the element with respect to the input generators.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};

use num::{One, Zero};

use crate::poly::{Monomial, MultiPoly, PolyRing};
use crate::rational::Rational;

/// Sparse module element; terms sorted decreasing, positions first
/// (position 0 is largest), then the ring order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Vector {
    pub terms: Vec<(usize, Monomial, Rational)>,
}

pub(crate) fn cmp_pos_term(ring: &PolyRing, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
    match b.0.cmp(&a.0) {
        Ordering::Equal => ring.cmp(a.1, b.1),
        o => o,
    }
}

impl Vector {
    pub fn zero() -> Self {
        Vector { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn unit(n: usize, pos: usize) -> Self {
        Vector {
            terms: vec![(pos, Monomial::one(n), Rational::one())],
        }
    }

    pub fn from_entries(entries: &[MultiPoly]) -> Self {
        let mut terms = Vec::new();
        for (i, p) in entries.iter().enumerate() {
            for (m, c) in p.terms() {
                terms.push((i, m.clone(), c.clone()));
            }
        }
        Vector { terms }
    }

    pub fn from_poly(p: &MultiPoly) -> Self {
        Vector {
            terms: p
                .terms()
                .iter()
                .map(|(m, c)| (0, m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn to_entries(&self, ring: &PolyRing, rank: usize) -> Vec<MultiPoly> {
        let mut parts: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); rank];
        for (p, m, c) in &self.terms {
            parts[*p].push((m.clone(), c.clone()));
        }
        parts
            .into_iter()
            .map(|t| MultiPoly::from_sorted(ring, t))
            .collect()
    }

    pub fn lead(&self) -> Option<&(usize, Monomial, Rational)> {
        self.terms.first()
    }

    pub fn scale(&self, c: &Rational) -> Vector {
        Vector {
            terms: self.terms.iter().map(|(p, m, d)| (*p, m.clone(), d * c)).collect(),
        }
    }

    /// `self + c * m * other`.
    pub fn add_scaled(&self, ring: &PolyRing, c: &Rational, m: &Monomial, other: &Vector) -> Vector {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        let mut bj: Option<(usize, Monomial, Rational)> = None;
        let next_b = |j: usize| -> Option<(usize, Monomial, Rational)> {
            b.get(j).map(|(p, t, d)| (*p, t.mul(m), d * c))
        };
        if j < b.len() {
            bj = next_b(j);
        }
        while i < a.len() && bj.is_some() {
            let (pb, mb, cb) = bj.as_ref().unwrap();
            let (pa, ma, ca) = &a[i];
            match cmp_pos_term(ring, (*pa, ma), (*pb, mb)) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(bj.take().unwrap());
                    j += 1;
                    bj = next_b(j);
                }
                Ordering::Equal => {
                    let s = ca + cb;
                    if !s.is_zero() {
                        out.push((*pa, ma.clone(), s));
                    }
                    i += 1;
                    j += 1;
                    bj = next_b(j);
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        while let Some(t) = bj.take() {
            out.push(t);
            j += 1;
            bj = next_b(j);
        }
        Vector { terms: out }
    }

    pub fn add(&self, ring: &PolyRing, other: &Vector) -> Vector {
        let n = other
            .terms
            .first()
            .map(|t| t.1.exps().len())
            .or_else(|| self.terms.first().map(|t| t.1.exps().len()))
            .unwrap_or(0);
        self.add_scaled(ring, &Rational::one(), &Monomial::one(n), other)
    }
}

/// Counters and event lines from one Buchberger run.
#[derive(Clone, Debug, Default)]
pub struct Transcript {
    pub pairs_created: usize,
    pub product_skips: usize,
    pub chain_skips: usize,
    pub zero_reductions: usize,
    pub events: Vec<String>,
}

pub(crate) struct GbRun {
    pub basis: Vec<Vector>,
    pub cofactors: Option<Vec<Vector>>,
    pub transcript: Transcript,
}

fn find_reducer(basis: &[Vector], pos: usize, m: &Monomial) -> Option<usize> {
    basis.iter().position(|g| {
        let (p, lm, _) = g.lead().expect("basis elements are nonzero");
        *p == pos && lm.divides(m)
    })
}

/// Full reduction of `f` by `basis`. When `quot` is given, records the
/// quotient terms per basis element so that `f = Σ quot[k]·basis[k] + rem`.
pub(crate) fn reduce_full(
    ring: &PolyRing,
    f: &Vector,
    basis: &[Vector],
    mut quot: Option<&mut Vec<Vec<(Monomial, Rational)>>>,
) -> Vector {
    let mut p = f.clone();
    let mut rem: Vec<(usize, Monomial, Rational)> = Vec::new();
    while let Some((pos, m, c)) = p.lead().cloned() {
        match find_reducer(basis, pos, &m) {
            Some(k) => {
                let (_, lm, lc) = basis[k].lead().unwrap();
                let q = m.div(lm).unwrap();
                let qc = &c / lc;
                p = p.add_scaled(ring, &(-qc.clone()), &q, &basis[k]);
                if let Some(qs) = quot.as_deref_mut() {
                    qs[k].push((q, qc));
                }
            }
            None => {
                rem.push(p.terms.remove(0));
            }
        }
    }
    Vector { terms: rem }
}

/// Applies quotient bookkeeping to cofactors: `cof(f) - Σ q_k cof_k`.
fn combine_cofactors(
    ring: &PolyRing,
    start: &Vector,
    quot: &[Vec<(Monomial, Rational)>],
    cofs: &[Vector],
) -> Vector {
    let mut out = start.clone();
    for (k, qs) in quot.iter().enumerate() {
        for (m, c) in qs {
            out = out.add_scaled(ring, &(-c.clone()), m, &cofs[k]);
        }
    }
    out
}

/// Runs Buchberger on `inputs` (module elements of arbitrary rank).
pub(crate) fn groebner(ring: &PolyRing, inputs: &[Vector], track: bool) -> GbRun {
    let n = ring.nvars();
    let module = inputs
        .iter()
        .any(|v| v.terms.iter().any(|t| t.0 != 0));
    let mut g: Vec<Vector> = Vec::new();
    let mut cof: Vec<Vector> = Vec::new();
    let mut queue: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let mut tr = Transcript::default();

    let add = |h: Vector,
               hc: Vector,
               g: &mut Vec<Vector>,
               cof: &mut Vec<Vector>,
               queue: &mut BTreeSet<(u32, usize, usize)>,
               pending: &mut HashSet<(usize, usize)>,
               tr: &mut Transcript| {
        let inv = h.lead().unwrap().2.recip();
        let h = h.scale(&inv);
        let hc = hc.scale(&inv);
        let k = g.len();
        let (hp, hm, _) = h.lead().unwrap().clone();
        for (i, gi) in g.iter().enumerate() {
            let (gp, gm, _) = gi.lead().unwrap();
            if *gp != hp {
                continue;
            }
            tr.pairs_created += 1;
            if !module && gm.is_coprime(&hm) {
                tr.product_skips += 1;
                continue;
            }
            let l = gm.lcm(&hm);
            queue.insert((l.degree(), k, i));
            pending.insert((i, k));
        }
        tr.events.push(format!("add #{k}: lead degree {}", hm.degree()));
        g.push(h);
        cof.push(hc);
    };

    for (t, f) in inputs.iter().enumerate() {
        if f.is_zero() {
            continue;
        }
        let mut quot = vec![Vec::new(); g.len()];
        let r = reduce_full(ring, f, &g, Some(&mut quot));
        if r.is_zero() {
            continue;
        }
        let rc = if track {
            combine_cofactors(ring, &Vector::unit(n, t), &quot, &cof)
        } else {
            Vector::zero()
        };
        add(r, rc, &mut g, &mut cof, &mut queue, &mut pending, &mut tr);
    }

    while let Some(entry) = queue.pop_first() {
        let (_, j, i) = entry;
        pending.remove(&(i, j));
        let (pi, mi, ci) = g[i].lead().unwrap().clone();
        let (_, mj, cj) = g[j].lead().unwrap().clone();
        let l = mi.lcm(&mj);
        let chain = (0..g.len()).any(|k| {
            if k == i || k == j {
                return false;
            }
            let (pk, mk, _) = g[k].lead().unwrap();
            *pk == pi
                && mk.divides(&l)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            tr.chain_skips += 1;
            continue;
        }
        let ui = l.div(&mi).unwrap();
        let uj = l.div(&mj).unwrap();
        let ai = ci.recip();
        let aj = -cj.recip();
        let s = Vector::zero()
            .add_scaled(ring, &ai, &ui, &g[i])
            .add_scaled(ring, &aj, &uj, &g[j]);
        let mut quot = vec![Vec::new(); g.len()];
        let r = reduce_full(ring, &s, &g, Some(&mut quot));
        if r.is_zero() {
            tr.zero_reductions += 1;
            continue;
        }
        let rc = if track {
            let sc = Vector::zero()
                .add_scaled(ring, &ai, &ui, &cof[i])
                .add_scaled(ring, &aj, &uj, &cof[j]);
            combine_cofactors(ring, &sc, &quot, &cof)
        } else {
            Vector::zero()
        };
        add(r, rc, &mut g, &mut cof, &mut queue, &mut pending, &mut tr);
    }

    let (basis, cofs) = interreduce(ring, g, cof, track);
    GbRun {
        basis,
        cofactors: track.then_some(cofs),
        transcript: tr,
    }
}

/// Turns a Gröbner basis into the reduced one, sorted by decreasing leading
/// term.
fn interreduce(
    ring: &PolyRing,
    g: Vec<Vector>,
    cof: Vec<Vector>,
    track: bool,
) -> (Vec<Vector>, Vec<Vector>) {
    let mut keep: Vec<usize> = Vec::new();
    for k in 0..g.len() {
        let (pk, mk, _) = g[k].lead().unwrap();
        let redundant = (0..g.len()).any(|l| {
            if l == k {
                return false;
            }
            let (pl, ml, _) = g[l].lead().unwrap();
            pl == pk && ml.divides(mk) && (ml != mk || l < k)
        });
        if !redundant {
            keep.push(k);
        }
    }
    let mut basis: Vec<Vector> = keep.iter().map(|&k| g[k].clone()).collect();
    let mut cofs: Vec<Vector> = keep.iter().map(|&k| cof[k].clone()).collect();
    for idx in 0..basis.len() {
        let others: Vec<Vector> = basis
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != idx)
            .map(|(_, v)| v.clone())
            .collect();
        let mut quot = vec![Vec::new(); others.len()];
        let head = Vector {
            terms: vec![basis[idx].terms[0].clone()],
        };
        let tail = Vector {
            terms: basis[idx].terms[1..].to_vec(),
        };
        let r = reduce_full(ring, &tail, &others, Some(&mut quot));
        let mut new = head;
        new.terms.extend(r.terms);
        let lc = new.terms[0].2.clone();
        let inv = lc.recip();
        if track {
            let other_cofs: Vec<Vector> = cofs
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != idx)
                .map(|(_, v)| v.clone())
                .collect();
            let c = combine_cofactors(ring, &cofs[idx], &quot, &other_cofs);
            cofs[idx] = c.scale(&inv);
        }
        basis[idx] = new.scale(&inv);
    }
    let mut order: Vec<usize> = (0..basis.len()).collect();
    order.sort_by(|&a, &b| {
        let (pa, ma, _) = basis[a].lead().unwrap();
        let (pb, mb, _) = basis[b].lead().unwrap();
        cmp_pos_term(ring, (*pb, mb), (*pa, ma))
    });
    let b2 = order.iter().map(|&i| basis[i].clone()).collect();
    let c2 = order.iter().map(|&i| cofs[i].clone()).collect();
    (b2, c2)
}

/// S-vector of basis elements `i`, `j` (same leading position), together
/// with its two multipliers.
pub(crate) fn s_vector(ring: &PolyRing, gi: &Vector, gj: &Vector) -> Option<(Vector, (Rational, Monomial), (Rational, Monomial))> {
    let (pi, mi, ci) = gi.lead()?.clone();
    let (pj, mj, cj) = gj.lead()?.clone();
    if pi != pj {
        return None;
    }
    let l = mi.lcm(&mj);
    let ui = l.div(&mi).unwrap();
    let uj = l.div(&mj).unwrap();
    let ai = ci.recip();
    let aj = -cj.recip();
    let s = Vector::zero()
        .add_scaled(ring, &ai, &ui, gi)
        .add_scaled(ring, &aj, &uj, gj);
    Some((s, (ai, ui), (aj, uj)))
}
