//! Gröbner bases, ideal operations, Hilbert polynomials and syzygies.

mod engine;
pub mod hilbert;
pub mod module;
pub mod ops;

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder, MultiPoly, PolyRing};
use crate::rational::Rational;

pub use engine::Transcript;
use engine::Vector;
pub use hilbert::{hilbert_polynomial, standard_monomials_of_weight, stanley_decomposition, Cone, UniPoly};
pub use module::{
    lift, module_groebner, module_kernel, module_syzygies, prune_generators, syzygies,
    syzygies_modulo, FreeModuleVector, ModuleGroebner,
};
pub use ops::{
    eliminate, intersect, quotient, saturate, saturate_by_quotients, saturate_by_variables,
    saturate_irrelevant,
};

/// An ideal given by generators in a fixed ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    ring: PolyRing,
    gens: Vec<MultiPoly>,
}

impl Ideal {
    /// Zero generators are dropped.
    pub fn new(ring: &PolyRing, gens: Vec<MultiPoly>) -> Result<Self> {
        for g in &gens {
            if g.ring() != ring {
                return Err(Error::RingMismatch);
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    /// Parses each generator in the textual syntax.
    pub fn parse(ring: &PolyRing, gens: &[&str]) -> Result<Self> {
        let g = gens
            .iter()
            .map(|s| ring.parse(s))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, g)
    }

    pub fn zero(ring: &PolyRing) -> Self {
        Ideal {
            ring: ring.clone(),
            gens: Vec::new(),
        }
    }

    pub fn unit(ring: &PolyRing) -> Self {
        Ideal {
            ring: ring.clone(),
            gens: vec![ring.one()],
        }
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn gens(&self) -> &[MultiPoly] {
        &self.gens
    }

    pub fn groebner(&self) -> GroebnerBasis {
        GroebnerBasis::compute(&self.ring, &self.gens)
    }

    pub fn contains(&self, f: &MultiPoly) -> bool {
        self.groebner().contains(f)
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        let gb = self.groebner();
        other.gens.iter().all(|g| gb.contains(g))
    }

    /// Equality as ideals, by mutual membership of generators.
    pub fn equals(&self, other: &Ideal) -> bool {
        self.contains_ideal(other) && other.contains_ideal(self)
    }

    pub fn is_unit(&self) -> bool {
        self.groebner().is_unit()
    }

    pub fn map_into(&self, ring: &PolyRing) -> Result<Ideal> {
        let g = self
            .gens
            .iter()
            .map(|f| f.map_into(ring))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, g)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, g)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let mut g = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                g.push(a * b);
            }
        }
        Ideal::new(&self.ring, g)
    }

    pub fn with_generator(&self, f: MultiPoly) -> Result<Ideal> {
        let mut g = self.gens.clone();
        g.push(f);
        Ideal::new(&self.ring, g)
    }

    /// Generators of the reduced Gröbner basis, as a new ideal.
    pub fn reduced(&self) -> Ideal {
        Ideal {
            ring: self.ring.clone(),
            gens: self.groebner().basis().to_vec(),
        }
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "<{}>", parts.join(", "))
    }
}

/// A reduced Gröbner basis with respect to the order of its ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: PolyRing,
    basis: Vec<MultiPoly>,
}

impl GroebnerBasis {
    pub fn compute(ring: &PolyRing, gens: &[MultiPoly]) -> Self {
        Self::compute_with_transcript(ring, gens).0
    }

    pub fn compute_with_transcript(ring: &PolyRing, gens: &[MultiPoly]) -> (Self, Transcript) {
        let inputs: Vec<Vector> = gens.iter().map(Vector::from_poly).collect();
        let run = engine::groebner(ring, &inputs, false);
        let basis = run
            .basis
            .iter()
            .map(|v| v.to_entries(ring, 1).remove(0))
            .collect();
        (
            GroebnerBasis {
                ring: ring.clone(),
                basis,
            },
            run.transcript,
        )
    }

    /// Basis together with cofactors: `basis[k] = Σ_t cof[k][t] * gens[t]`.
    pub fn compute_with_cofactors(ring: &PolyRing, gens: &[MultiPoly]) -> (Self, Vec<Vec<MultiPoly>>) {
        let inputs: Vec<Vector> = gens.iter().map(Vector::from_poly).collect();
        let run = engine::groebner(ring, &inputs, true);
        let basis = run
            .basis
            .iter()
            .map(|v| v.to_entries(ring, 1).remove(0))
            .collect();
        let cofs = run
            .cofactors
            .unwrap()
            .iter()
            .map(|v| v.to_entries(ring, gens.len()))
            .collect();
        (
            GroebnerBasis {
                ring: ring.clone(),
                basis,
            },
            cofs,
        )
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn basis(&self) -> &[MultiPoly] {
        &self.basis
    }

    pub fn order(&self) -> &MonomialOrder {
        self.ring.order()
    }

    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis
            .iter()
            .map(|g| g.leading_monomial().unwrap().clone())
            .collect()
    }

    fn vectors(&self) -> Vec<Vector> {
        self.basis.iter().map(Vector::from_poly).collect()
    }

    pub fn normal_form(&self, f: &MultiPoly) -> MultiPoly {
        assert!(f.ring() == &self.ring, "normal form across rings");
        let r = engine::reduce_full(&self.ring, &Vector::from_poly(f), &self.vectors(), None);
        r.to_entries(&self.ring, 1).remove(0)
    }

    /// `(q, r)` with `f = Σ q[k]·basis[k] + r`.
    pub fn divide(&self, f: &MultiPoly) -> (Vec<MultiPoly>, MultiPoly) {
        let mut quot = vec![Vec::new(); self.basis.len()];
        let r = engine::reduce_full(
            &self.ring,
            &Vector::from_poly(f),
            &self.vectors(),
            Some(&mut quot),
        );
        let q = quot
            .into_iter()
            .map(|t| MultiPoly::from_terms(&self.ring, t))
            .collect();
        (q, r.to_entries(&self.ring, 1).remove(0))
    }

    pub fn contains(&self, f: &MultiPoly) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Every S-polynomial of a pair of basis elements reduces to zero.
    pub fn s_pairs_reduce_to_zero(&self) -> bool {
        let vs = self.vectors();
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                let (s, _, _) = engine::s_vector(&self.ring, &vs[i], &vs[j]).unwrap();
                if !engine::reduce_full(&self.ring, &s, &vs, None).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Monic leading coefficients and no basis term divisible by another
    /// element's leading monomial.
    pub fn is_reduced(&self) -> bool {
        use num::One;
        let lms = self.leading_monomials();
        self.basis.iter().enumerate().all(|(i, g)| {
            g.leading_coeff().is_some_and(|c| c.is_one())
                && g.terms().iter().all(|(m, _)| {
                    lms.iter()
                        .enumerate()
                        .all(|(j, l)| j == i || !l.divides(m))
                })
        })
    }
}

/// Reduced Gröbner basis of `gens` with respect to `order`; the generators
/// are moved to a copy of their ring carrying that order.
pub fn buchberger(gens: &[MultiPoly], order: MonomialOrder) -> Result<GroebnerBasis> {
    let Some(first) = gens.first() else {
        return Err(Error::Invalid("no generators".into()));
    };
    let ring = first.ring().with_order(order)?;
    let mapped = gens
        .iter()
        .map(|g| {
            if g.ring().vars() != first.ring().vars() {
                Err(Error::RingMismatch)
            } else {
                g.map_into(&ring)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GroebnerBasis::compute(&ring, &mapped))
}

/// Coefficients of `f` in the basis `monos` (zero where absent).
pub fn coefficient_vector(f: &MultiPoly, monos: &[Monomial]) -> Vec<Rational> {
    monos.iter().map(|m| f.coefficient(m)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u_ring() -> PolyRing {
        PolyRing::grevlex(&["u3", "u1", "u_m1", "u_m3"])
    }

    pub(crate) fn twisted_cubic(r: &PolyRing) -> Ideal {
        Ideal::parse(r, &["u1^2 - u3*u_m1", "u1*u_m1 - u3*u_m3", "u_m1^2 - u_m3*u1"]).unwrap()
    }

    #[test]
    fn single_generator() {
        let r = PolyRing::grevlex(&["x"]);
        let gb = buchberger(&[r.parse("x").unwrap()], MonomialOrder::GrevLex).unwrap();
        assert_eq!(gb.basis(), &[r.parse("x").unwrap()]);
    }

    #[test]
    fn lex_parametric_parabola() {
        let r = PolyRing::lex(&["t", "x", "y"]);
        let gb = GroebnerBasis::compute(&r, &[r.parse("t - x").unwrap(), r.parse("t^2 - y").unwrap()]);
        assert!(gb.basis().contains(&r.parse("x^2 - y").unwrap()));
        assert!(gb.s_pairs_reduce_to_zero());
        assert!(gb.is_reduced());
    }

    #[test]
    fn twisted_cubic_basis() {
        let r = u_ring();
        let i = twisted_cubic(&r);
        let gb = i.groebner();
        assert_eq!(gb.basis().len(), 3);
        assert!(gb.s_pairs_reduce_to_zero());
        assert!(gb.is_reduced());
        let again = GroebnerBasis::compute(&r, gb.basis());
        assert_eq!(again, gb);
    }

    #[test]
    fn tangent_developable_contains_cubic() {
        let r = u_ring();
        let gb = twisted_cubic(&r).groebner();
        let q = r
            .parse("4*u_m3*u1^3 - 6*u3*u1*u_m1*u_m3 + 4*u3*u_m1^3 - 3*u1^2*u_m1^2 + u3^2*u_m3^2")
            .unwrap();
        assert!(gb.normal_form(&q).is_zero());
        assert_eq!(gb.normal_form(&r.var("u3").unwrap()), r.var("u3").unwrap());
    }

    #[test]
    fn cofactors_reconstruct_basis() {
        let r = u_ring();
        let i = twisted_cubic(&r);
        let (gb, cofs) = GroebnerBasis::compute_with_cofactors(&r, i.gens());
        for (g, c) in gb.basis().iter().zip(&cofs) {
            let mut acc = r.zero();
            for (ci, gi) in c.iter().zip(i.gens()) {
                acc = &acc + &(ci * gi);
            }
            assert_eq!(&acc, g);
        }
    }

    #[test]
    fn division_identity() {
        let r = u_ring();
        let gb = twisted_cubic(&r).groebner();
        let f = r.parse("u3^3*u_m3 + u1^3 - 2*u_m1*u3").unwrap();
        let (q, rem) = gb.divide(&f);
        let mut acc = rem.clone();
        for (qi, gi) in q.iter().zip(gb.basis()) {
            acc = &acc + &(qi * gi);
        }
        assert_eq!(acc, f);
        assert_eq!(rem, gb.normal_form(&f));
    }

    #[test]
    fn unit_ideal_detected() {
        let r = PolyRing::grevlex(&["x", "y"]);
        let i = Ideal::parse(&r, &["x*y - 1", "x"]).unwrap();
        assert!(i.is_unit());
    }
}
