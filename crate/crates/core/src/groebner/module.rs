//! Free-module vectors, module Gröbner bases, syzygies and kernels.

use std::fmt;


use super::engine::{self, Vector};
use super::{GroebnerBasis, Ideal};
use crate::error::{Error, Result};
use crate::poly::{MultiPoly, PolyRing};

/// An element of the free module `R^rank`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModuleVector {
    ring: PolyRing,
    entries: Vec<MultiPoly>,
}

impl FreeModuleVector {
    pub fn new(ring: &PolyRing, entries: Vec<MultiPoly>) -> Result<Self> {
        if entries.iter().any(|e| e.ring() != ring) {
            return Err(Error::RingMismatch);
        }
        Ok(FreeModuleVector {
            ring: ring.clone(),
            entries,
        })
    }

    pub fn parse(ring: &PolyRing, entries: &[&str]) -> Result<Self> {
        let e = entries
            .iter()
            .map(|s| ring.parse(s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, e)
    }

    pub fn zero(ring: &PolyRing, rank: usize) -> Self {
        FreeModuleVector {
            ring: ring.clone(),
            entries: vec![ring.zero(); rank],
        }
    }

    pub fn unit(ring: &PolyRing, rank: usize, i: usize) -> Self {
        let mut v = Self::zero(ring, rank);
        v.entries[i] = ring.one();
        v
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn entries(&self) -> &[MultiPoly] {
        &self.entries
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// `Σ entries[i] * gens[i]`.
    pub fn dot(&self, gens: &[MultiPoly]) -> MultiPoly {
        assert_eq!(gens.len(), self.rank(), "dot product length");
        self.entries
            .iter()
            .zip(gens)
            .fold(self.ring.zero(), |acc, (a, b)| &acc + &(a * b))
    }

    pub fn add(&self, other: &Self) -> Self {
        FreeModuleVector {
            ring: self.ring.clone(),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        FreeModuleVector {
            ring: self.ring.clone(),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn mul_poly(&self, f: &MultiPoly) -> Self {
        FreeModuleVector {
            ring: self.ring.clone(),
            entries: self.entries.iter().map(|a| a * f).collect(),
        }
    }

    pub fn scale(&self, c: &crate::rational::Rational) -> Self {
        FreeModuleVector {
            ring: self.ring.clone(),
            entries: self.entries.iter().map(|a| a.scale(c)).collect(),
        }
    }

    /// Scaled so that the leading coefficient of the first nonzero entry
    /// is one.
    pub fn normalized(&self) -> Self {
        match self.entries.iter().find_map(|e| e.leading_coeff()) {
            Some(c) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Largest total degree among the entries (0 for the zero vector).
    pub fn max_degree(&self) -> u32 {
        self.entries
            .iter()
            .filter_map(|e| e.total_degree())
            .max()
            .unwrap_or(0)
    }

    pub(crate) fn to_vector(&self) -> Vector {
        Vector::from_entries(&self.entries)
    }

    pub(crate) fn from_vector(ring: &PolyRing, rank: usize, v: &Vector) -> Self {
        FreeModuleVector {
            ring: ring.clone(),
            entries: v.to_entries(ring, rank),
        }
    }
}

impl fmt::Display for FreeModuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Reduced Gröbner basis of a submodule of `R^rank` (position over term).
#[derive(Clone, Debug)]
pub struct ModuleGroebner {
    ring: PolyRing,
    rank: usize,
    basis: Vec<Vector>,
}

impl ModuleGroebner {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn basis(&self) -> Vec<FreeModuleVector> {
        self.basis
            .iter()
            .map(|v| FreeModuleVector::from_vector(&self.ring, self.rank, v))
            .collect()
    }

    pub fn normal_form(&self, v: &FreeModuleVector) -> FreeModuleVector {
        let r = engine::reduce_full(&self.ring, &v.to_vector(), &self.basis, None);
        FreeModuleVector::from_vector(&self.ring, self.rank, &r)
    }

    pub fn contains(&self, v: &FreeModuleVector) -> bool {
        engine::reduce_full(&self.ring, &v.to_vector(), &self.basis, None).is_zero()
    }

    pub fn s_pairs_reduce_to_zero(&self) -> bool {
        for i in 0..self.basis.len() {
            for j in i + 1..self.basis.len() {
                if let Some((s, _, _)) = engine::s_vector(&self.ring, &self.basis[i], &self.basis[j]) {
                    if !engine::reduce_full(&self.ring, &s, &self.basis, None).is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Gröbner basis of the submodule generated by `gens` inside `R^rank`.
pub fn module_groebner(ring: &PolyRing, rank: usize, gens: &[FreeModuleVector]) -> ModuleGroebner {
    let inputs: Vec<Vector> = gens.iter().map(|g| g.to_vector()).collect();
    let run = engine::groebner(ring, &inputs, false);
    ModuleGroebner {
        ring: ring.clone(),
        rank,
        basis: run.basis,
    }
}

/// Schreyer syzygies of arbitrary module elements, as vectors in
/// `R^{inputs.len()}` (unpruned).
fn raw_syzygies(ring: &PolyRing, inputs: &[Vector]) -> Vec<Vector> {
    let n = ring.nvars();
    let run = engine::groebner(ring, inputs, true);
    let g = run.basis;
    let t = run.cofactors.unwrap();
    let expand = |coeffs: &[Vec<(crate::poly::Monomial, crate::rational::Rational)>]| -> Vector {
        let mut out = Vector::zero();
        for (k, qs) in coeffs.iter().enumerate() {
            for (m, c) in qs {
                out = out.add_scaled(ring, c, m, &t[k]);
            }
        }
        out
    };
    let mut syz = Vec::new();
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            let Some((s, (ai, ui), (aj, uj))) = engine::s_vector(ring, &g[i], &g[j]) else {
                continue;
            };
            let mut quot = vec![Vec::new(); g.len()];
            let r = engine::reduce_full(ring, &s, &g, Some(&mut quot));
            debug_assert!(r.is_zero(), "S-vector of a Gröbner basis must reduce to zero");
            let mut coeffs = quot;
            for qs in coeffs.iter_mut() {
                for (_, c) in qs.iter_mut() {
                    *c = -c.clone();
                }
            }
            coeffs[i].push((ui, ai));
            coeffs[j].push((uj, aj));
            let v = expand(&coeffs);
            if !v.is_zero() {
                syz.push(v);
            }
        }
    }
    for (k, f) in inputs.iter().enumerate() {
        let mut quot = vec![Vec::new(); g.len()];
        let r = engine::reduce_full(ring, f, &g, Some(&mut quot));
        debug_assert!(r.is_zero());
        let v = Vector::unit(n, k).add(ring, &expand(&quot).scale(&(-crate::rational::int(1))));
        if !v.is_zero() {
            syz.push(v);
        }
    }
    syz
}

/// Drops generators that lie in the submodule spanned by the retained ones
/// together with `extra`; candidates are visited by increasing degree.
pub fn prune_generators(
    ring: &PolyRing,
    rank: usize,
    vecs: &[FreeModuleVector],
    extra: &[FreeModuleVector],
) -> Vec<FreeModuleVector> {
    let mut order: Vec<usize> = (0..vecs.len()).collect();
    order.sort_by_key(|&i| (vecs[i].max_degree(), vecs[i].entries.iter().map(|e| e.len()).sum::<usize>(), i));
    let mut kept: Vec<FreeModuleVector> = Vec::new();
    for i in order {
        let v = &vecs[i];
        if v.is_zero() {
            continue;
        }
        let mut span = kept.clone();
        span.extend(extra.iter().cloned());
        if !span.is_empty() && module_groebner(ring, rank, &span).contains(v) {
            continue;
        }
        kept.push(v.clone());
    }
    kept
}

/// Generators of the syzygy module of `gens`.
pub fn syzygies(gens: &[MultiPoly]) -> Vec<FreeModuleVector> {
    let Some(first) = gens.first() else {
        return Vec::new();
    };
    let ring = first.ring().clone();
    let inputs: Vec<Vector> = gens.iter().map(Vector::from_poly).collect();
    let raw: Vec<FreeModuleVector> = raw_syzygies(&ring, &inputs)
        .iter()
        .map(|v| FreeModuleVector::from_vector(&ring, gens.len(), v))
        .collect();
    prune_generators(&ring, gens.len(), &raw, &[])
}

/// Generators of the syzygies of `gens` over `R/⟨modulo⟩`, as lifted vectors
/// in `R^{gens.len()}`.
pub fn syzygies_modulo(gens: &[MultiPoly], modulo: &[MultiPoly]) -> Vec<FreeModuleVector> {
    let Some(first) = gens.first() else {
        return Vec::new();
    };
    let ring = first.ring().clone();
    let r = gens.len();
    let mut all: Vec<MultiPoly> = gens.to_vec();
    all.extend(modulo.iter().filter(|m| !m.is_zero()).cloned());
    let inputs: Vec<Vector> = all.iter().map(Vector::from_poly).collect();
    let raw: Vec<FreeModuleVector> = raw_syzygies(&ring, &inputs)
        .iter()
        .map(|v| {
            let full = FreeModuleVector::from_vector(&ring, all.len(), v);
            FreeModuleVector {
                ring: ring.clone(),
                entries: full.entries[..r].to_vec(),
            }
        })
        .collect();
    let extra = multiples_of_ideal(&ring, r, modulo);
    prune_generators(&ring, r, &raw, &extra)
}

/// Generators of the syzygies of module elements.
pub fn module_syzygies(ring: &PolyRing, gens: &[FreeModuleVector]) -> Vec<FreeModuleVector> {
    let inputs: Vec<Vector> = gens.iter().map(|g| g.to_vector()).collect();
    let raw: Vec<FreeModuleVector> = raw_syzygies(ring, &inputs)
        .iter()
        .map(|v| FreeModuleVector::from_vector(ring, gens.len(), v))
        .collect();
    prune_generators(ring, gens.len(), &raw, &[])
}

fn multiples_of_ideal(ring: &PolyRing, rank: usize, modulo: &[MultiPoly]) -> Vec<FreeModuleVector> {
    let mut out = Vec::new();
    for f in modulo.iter().filter(|f| !f.is_zero()) {
        for k in 0..rank {
            out.push(FreeModuleVector::unit(ring, rank, k).mul_poly(f));
        }
    }
    out
}

/// Generators of `{v ∈ (R/modulo)^cols : M v ≡ 0 mod modulo}` for a matrix
/// `m` given as rows, returned as lifted representatives.
pub fn module_kernel(m: &[Vec<MultiPoly>], cols: usize, modulo: &Ideal) -> Result<Vec<FreeModuleVector>> {
    let ring = modulo.ring().clone();
    if m.iter().any(|row| row.len() != cols) {
        return Err(Error::Dimension("ragged matrix".into()));
    }
    let rows = m.len();
    if rows == 0 {
        return Ok((0..cols)
            .map(|k| FreeModuleVector::unit(&ring, cols, k))
            .collect());
    }
    let mut inputs: Vec<Vector> = (0..cols)
        .map(|j| {
            let col: Vec<MultiPoly> = (0..rows).map(|i| m[i][j].clone()).collect();
            Vector::from_entries(&col)
        })
        .collect();
    for f in modulo.gens() {
        for r in 0..rows {
            let mut e = vec![ring.zero(); rows];
            e[r] = f.clone();
            inputs.push(Vector::from_entries(&e));
        }
    }
    let raw: Vec<FreeModuleVector> = raw_syzygies(&ring, &inputs)
        .iter()
        .map(|v| {
            let full = FreeModuleVector::from_vector(&ring, inputs.len(), v);
            FreeModuleVector {
                ring: ring.clone(),
                entries: full.entries[..cols].to_vec(),
            }
        })
        .collect();
    let mut extra = multiples_of_ideal(&ring, cols, modulo.gens());
    let gb = modulo.groebner();
    let reduced: Vec<FreeModuleVector> = raw
        .iter()
        .map(|v| FreeModuleVector {
            ring: ring.clone(),
            entries: v.entries.iter().map(|e| gb.normal_form(e)).collect(),
        })
        .filter(|v| !v.is_zero())
        .collect();
    extra.retain(|v| !v.is_zero());
    Ok(prune_generators(&ring, cols, &reduced, &extra)
        .into_iter()
        .map(|v| v.normalized())
        .collect())
}

/// Cached cofactor Gröbner basis for repeated lifting against fixed
/// generators.
#[derive(Clone, Debug)]
pub struct Lifter {
    gens: Vec<MultiPoly>,
    gb: GroebnerBasis,
    cofactors: Vec<Vec<MultiPoly>>,
}

impl Lifter {
    pub fn new(gens: &[MultiPoly]) -> Result<Self> {
        let ring = gens
            .first()
            .ok_or_else(|| Error::Invalid("no generators".into()))?
            .ring()
            .clone();
        let (gb, cofactors) = GroebnerBasis::compute_with_cofactors(&ring, gens);
        Ok(Lifter {
            gens: gens.to_vec(),
            gb,
            cofactors,
        })
    }

    pub fn groebner(&self) -> &GroebnerBasis {
        &self.gb
    }

    /// Coefficients `c` with `f = Σ c[t]·gens[t]`, if `f` is in the ideal.
    pub fn lift(&self, f: &MultiPoly) -> Option<Vec<MultiPoly>> {
        let ring = self.gb.ring();
        let (q, r) = self.gb.divide(f);
        if !r.is_zero() {
            return None;
        }
        let mut out = vec![ring.zero(); self.gens.len()];
        for (qk, cof) in q.iter().zip(&self.cofactors) {
            if qk.is_zero() {
                continue;
            }
            for (o, c) in out.iter_mut().zip(cof) {
                if !c.is_zero() {
                    *o = &*o + &(qk * c);
                }
            }
        }
        Some(out)
    }
}

/// Coefficients expressing `f` in terms of `gens`, if `f ∈ ⟨gens⟩`.
pub fn lift(f: &MultiPoly, gens: &[MultiPoly]) -> Option<Vec<MultiPoly>> {
    Lifter::new(gens).ok()?.lift(f)
}
