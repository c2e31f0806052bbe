//! Tangent spaces `Hom(I_C, O_C)` of Hilbert schemes of curves at
//! torus-fixed points, computed weight by weight on charts and glued.

use std::collections::BTreeMap;

use num::Zero;

use crate::error::{Error, Result};
use crate::geometry::chart::{transition, ChartLabel, ChartPresentation, Transition};
use crate::geometry::{Atlas, CurveRecord};
use crate::groebner::module::Lifter;
use crate::groebner::{
    module_kernel, saturate, standard_monomials_of_weight, syzygies_modulo, FreeModuleVector,
    GroebnerBasis, Ideal,
};
use crate::linalg::{self, Matrix};
use crate::poly::{homogeneous_weight, Monomial, MultiPoly, WeightAssignment};
use crate::rational::Rational;

/// Images of the ordered generators of a curve ideal under a homomorphism
/// `I_C → O_C`, on one chart.
#[derive(Clone, Debug, PartialEq)]
pub struct HomElement {
    pub chart: ChartLabel,
    pub entries: Vec<MultiPoly>,
}

impl HomElement {
    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(MultiPoly::is_zero)
    }
}

/// True iff every syzygy of `gens` modulo `residual` contracts with the
/// column into `⟨gens⟩ + residual`.
pub fn verify_hom(column: &[MultiPoly], gens: &[MultiPoly], residual: &Ideal) -> Result<bool> {
    if column.len() != gens.len() {
        return Err(Error::Dimension(format!(
            "column has {} entries for {} generators",
            column.len(),
            gens.len()
        )));
    }
    let full = residual.sum(&Ideal::new(residual.ring(), gens.to_vec())?)?;
    let gb = full.groebner();
    Ok(syzygies_modulo(gens, residual.gens())
        .iter()
        .all(|s| gb.contains(&s.dot(column))))
}

/// `wt(generator) - wt(image)`, the same for every nonzero entry.
pub fn hom_weight(column: &[MultiPoly], gens: &[MultiPoly], wts: &WeightAssignment) -> Result<i64> {
    let mut out: Option<i64> = None;
    for (c, g) in column.iter().zip(gens) {
        if c.is_zero() {
            continue;
        }
        let w = homogeneous_weight(g, wts)? - homogeneous_weight(c, wts)?;
        match out {
            Some(v) if v != w => return Err(Error::Inhomogeneous),
            _ => out = Some(w),
        }
    }
    out.ok_or(Error::ZeroPolynomial)
}

/// Generators of `Hom(I, R/I)` as lifted columns, via the kernel of the
/// transposed syzygy matrix over `R/I`.
pub fn hom_module(gens: &[MultiPoly], residual: &Ideal) -> Result<Vec<FreeModuleVector>> {
    let syz = syzygies_modulo(gens, residual.gens());
    let rows: Vec<Vec<MultiPoly>> = syz.iter().map(|s| s.entries().to_vec()).collect();
    let full = residual.sum(&Ideal::new(residual.ring(), gens.to_vec())?)?;
    module_kernel(&rows, gens.len(), &full)
}

/// A curve ideal on one chart, prepared for weight-graded Hom computations.
#[derive(Clone, Debug)]
pub struct LocalHom {
    chart: ChartLabel,
    gens: Vec<MultiPoly>,
    gen_weights: Vec<i64>,
    syzygies: Vec<Vec<MultiPoly>>,
    gb: GroebnerBasis,
    weights: WeightAssignment,
}

impl LocalHom {
    pub fn new(pres: &ChartPresentation, gens: &[MultiPoly]) -> Result<LocalHom> {
        let weights = pres.weights().clone();
        let gen_weights = gens
            .iter()
            .map(|g| homogeneous_weight(g, &weights))
            .collect::<Result<Vec<_>>>()?;
        let full = pres
            .residual()
            .sum(&Ideal::new(pres.ring(), gens.to_vec())?)?;
        let mut syzygies = Vec::new();
        for s in syzygies_modulo(gens, pres.residual().gens()) {
            let mut parts: BTreeMap<i64, Vec<MultiPoly>> = BTreeMap::new();
            for (t, e) in s.entries().iter().enumerate() {
                for (w, p) in e.weight_components(&weights) {
                    let slot = parts
                        .entry(w + gen_weights[t])
                        .or_insert_with(|| vec![pres.ring().zero(); gens.len()]);
                    slot[t] = p;
                }
            }
            syzygies.extend(parts.into_values());
        }
        Ok(LocalHom {
            chart: pres.label(),
            gens: gens.to_vec(),
            gen_weights,
            syzygies,
            gb: full.groebner(),
            weights,
        })
    }

    pub fn chart(&self) -> ChartLabel {
        self.chart
    }

    pub fn gens(&self) -> &[MultiPoly] {
        &self.gens
    }

    pub fn groebner(&self) -> &GroebnerBasis {
        &self.gb
    }

    /// A basis of the homomorphisms of weight `k`, with entries reduced
    /// modulo the curve ideal.
    pub fn graded_piece(&self, k: i64) -> Result<Vec<HomElement>> {
        let ring = self.gb.ring();
        let mut slots: Vec<(usize, Monomial)> = Vec::new();
        for (t, &w) in self.gen_weights.iter().enumerate() {
            for m in standard_monomials_of_weight(&self.gb, &self.weights, w - k)? {
                slots.push((t, m));
            }
        }
        if slots.is_empty() {
            return Ok(Vec::new());
        }
        let images: Vec<MultiPoly> = slots
            .iter()
            .map(|(_, m)| ring.monomial(m.clone(), Rational::from_integer(1.into())))
            .collect();
        let mut rows: Vec<Vec<MultiPoly>> = Vec::new();
        for s in &self.syzygies {
            let row: Vec<MultiPoly> = slots
                .iter()
                .zip(&images)
                .map(|((t, _), img)| {
                    if s[*t].is_zero() {
                        ring.zero()
                    } else {
                        self.gb.normal_form(&(&s[*t] * img))
                    }
                })
                .collect();
            rows.push(row);
        }
        let m = coefficient_rows(&rows);
        let null = linalg::nullspace(&m, slots.len());
        Ok(null
            .into_iter()
            .map(|v| {
                let mut entries = vec![ring.zero(); self.gens.len()];
                for (c, ((t, _), img)) in v.iter().zip(slots.iter().zip(&images)) {
                    if !c.is_zero() {
                        entries[*t] = &entries[*t] + &img.scale(c);
                    }
                }
                HomElement {
                    chart: self.chart,
                    entries,
                }
            })
            .collect())
    }
}

/// One linear equation per monomial appearing in each row of polynomials;
/// column `j` collects the coefficients of `row[j]`.
fn coefficient_rows(rows: &[Vec<MultiPoly>]) -> Matrix {
    let mut out = Vec::new();
    for row in rows {
        let mut monos: Vec<Monomial> = row
            .iter()
            .flat_map(|p| p.terms().iter().map(|(m, _)| m.clone()))
            .collect();
        monos.sort_by(|a, b| a.exps().cmp(b.exps()));
        monos.dedup();
        for m in monos {
            out.push(row.iter().map(|p| p.coefficient(&m)).collect());
        }
    }
    out
}

/// Dimension of the glued weight-`k` piece and the local dimensions that fed
/// it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightPiece {
    pub weight: i64,
    pub dimension: usize,
    pub local_dimensions: Vec<(ChartLabel, usize)>,
}

/// Tangent weights of a Hilbert scheme at a fixed curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentReport {
    pub id: String,
    pub dimension: usize,
    /// Weights with multiplicity, in decreasing order.
    pub weights: Vec<i64>,
    pub pieces: Vec<WeightPiece>,
    pub cover: Vec<ChartLabel>,
    pub overlaps: Vec<(ChartLabel, ChartLabel)>,
    /// A nonzero piece sits at the edge of the scanned range.
    pub at_boundary: bool,
}

impl TangentReport {
    pub fn negative_count(&self) -> usize {
        self.weights.iter().filter(|&&w| w < 0).count()
    }

    pub fn has_zero_weight(&self) -> bool {
        self.weights.contains(&0)
    }
}

/// Data for comparing homomorphisms on chart `i` with those on chart `j`
/// over their overlap.
struct Overlap {
    i: usize,
    j: usize,
    to_j: Transition,
    e_gb: GroebnerBasis,
    /// Per generator of chart `j`: cofactors over the generators of chart
    /// `i`, and the power of `D` that was cleared.
    lifts: Vec<(Vec<MultiPoly>, u32)>,
}

const LIFT_CAP: u32 = 12;

fn overlap(
    atlas: &Atlas,
    locals: &[(ChartLabel, LocalHom)],
    i: usize,
    j: usize,
) -> Result<Option<Overlap>> {
    let (li, hi) = (&locals[i].0, &locals[i].1);
    let (lj, hj) = (&locals[j].0, &locals[j].1);
    let (pi, pj) = (atlas.chart(*li), atlas.chart(*lj));
    let Ok(to_j) = transition(pi, pj) else {
        return Ok(None);
    };
    let back = transition(pj, pi)?;
    let jj = pj.residual().sum(&Ideal::new(pj.ring(), hj.gens.clone())?)?;
    let sat = saturate(&jj, &to_j.e)?;
    if sat.is_unit() {
        return Ok(None);
    }
    let mut lift_gens = hi.gens.clone();
    lift_gens.extend(pi.residual().gens().iter().cloned());
    let lifter = Lifter::new(&lift_gens)?;
    let mut lifts = Vec::new();
    for h in &hj.gens {
        let (ht, n) = back.substitute(h, pj)?;
        let mut cur = ht;
        let mut found = None;
        for m in 0..=LIFT_CAP {
            if let Some(c) = lifter.lift(&cur) {
                found = Some((c[..hi.gens.len()].to_vec(), n + m));
                break;
            }
            cur = &cur * &back.e;
        }
        let f = found.ok_or_else(|| {
            Error::Invalid(format!("generator of {lj} does not lift to {li} on the overlap"))
        })?;
        lifts.push(f);
    }
    Ok(Some(Overlap {
        i,
        j,
        to_j,
        e_gb: sat.groebner(),
        lifts,
    }))
}

fn times_e_pow(p: &MultiPoly, e: &MultiPoly, n: u32, gb: &GroebnerBasis) -> MultiPoly {
    let mut cur = gb.normal_form(p);
    for _ in 0..n {
        if cur.is_zero() {
            break;
        }
        cur = gb.normal_form(&(&cur * e));
    }
    cur
}

impl Overlap {
    /// For each generator of chart `j`, the image under each basis element of
    /// chart `i` moved to chart `j` and under each basis element of chart
    /// `j`, both multiplied by a common power of `E` and reduced modulo the
    /// saturated ideal on the overlap.
    fn equations(
        &self,
        atlas: &Atlas,
        locals: &[(ChartLabel, LocalHom)],
        bi: &[HomElement],
        bj: &[HomElement],
    ) -> Result<Vec<(Vec<MultiPoly>, Vec<MultiPoly>)>> {
        let pi = atlas.chart(locals[self.i].0);
        let e = &self.to_j.e;
        let gb = &self.e_gb;
        let mut out = Vec::new();
        for (l, (cof, s)) in self.lifts.iter().enumerate() {
            let moved_cof: Vec<(MultiPoly, u32)> = cof
                .iter()
                .map(|c| self.to_j.substitute(c, pi))
                .collect::<Result<_>>()?;
            let moved_phi: Vec<Vec<(MultiPoly, u32)>> = bi
                .iter()
                .map(|b| {
                    b.entries
                        .iter()
                        .map(|p| self.to_j.substitute(p, pi))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<_>>()?;
            let mut top = 0u32;
            for phi in &moved_phi {
                for (t, (c, dc)) in moved_cof.iter().enumerate() {
                    if !c.is_zero() && !phi[t].0.is_zero() {
                        top = top.max(dc + phi[t].1);
                    }
                }
            }
            let big_n = top.saturating_sub(*s);
            let lhs: Vec<MultiPoly> = moved_phi
                .iter()
                .map(|phi| {
                    let mut acc = gb.ring().zero();
                    for (t, (c, dc)) in moved_cof.iter().enumerate() {
                        if c.is_zero() || phi[t].0.is_zero() {
                            continue;
                        }
                        let prod = gb.normal_form(&(&gb.normal_form(c) * &gb.normal_form(&phi[t].0)));
                        let k = big_n + s - dc - phi[t].1;
                        acc = &acc + &times_e_pow(&prod, e, k, gb);
                    }
                    acc
                })
                .collect();
            let rhs: Vec<MultiPoly> = bj
                .iter()
                .map(|b| times_e_pow(&b.entries[l], e, big_n, gb))
                .collect();
            out.push((lhs, rhs));
        }
        Ok(out)
    }
}

/// Weight range scanned by [`glue_tangent`].
pub const WEIGHT_RANGE: std::ops::RangeInclusive<i64> = -12..=12;

/// Glues the weight-graded local homomorphisms over the cover of a fixed
/// curve and reports the global tangent weights.
pub fn glue_tangent(atlas: &Atlas, record: &CurveRecord) -> Result<TangentReport> {
    let locals: Vec<(ChartLabel, LocalHom)> = record
        .locals
        .iter()
        .map(|l| Ok((l.chart, LocalHom::new(atlas.chart(l.chart), &l.gens)?)))
        .collect::<Result<_>>()?;
    let mut overlaps = Vec::new();
    for i in 0..locals.len() {
        for j in i + 1..locals.len() {
            if let Some(o) = overlap(atlas, &locals, i, j)? {
                overlaps.push(o);
            }
        }
    }
    let mut pieces = Vec::new();
    let mut weights = Vec::new();
    for k in WEIGHT_RANGE {
        let bases: Vec<Vec<HomElement>> = locals
            .iter()
            .map(|(_, h)| h.graded_piece(k))
            .collect::<Result<_>>()?;
        let offsets: Vec<usize> = bases
            .iter()
            .scan(0, |acc, b| {
                let o = *acc;
                *acc += b.len();
                Some(o)
            })
            .collect();
        let total: usize = bases.iter().map(Vec::len).sum();
        if total == 0 {
            continue;
        }
        let mut m: Matrix = Vec::new();
        for o in &overlaps {
            for (lhs, rhs) in o.equations(atlas, &locals, &bases[o.i], &bases[o.j])? {
                let mut row = vec![o.e_gb.ring().zero(); total];
                for (b, p) in lhs.into_iter().enumerate() {
                    row[offsets[o.i] + b] = p;
                }
                for (b, p) in rhs.into_iter().enumerate() {
                    row[offsets[o.j] + b] = -p;
                }
                m.extend(coefficient_rows(&[row]));
            }
        }
        let dim = total - linalg::rank(&m);
        if dim > 0 {
            weights.extend(std::iter::repeat_n(k, dim));
        }
        pieces.push(WeightPiece {
            weight: k,
            dimension: dim,
            local_dimensions: locals.iter().map(|(l, _)| *l).zip(bases.iter().map(Vec::len)).collect(),
        });
    }
    weights.sort_unstable_by(|a, b| b.cmp(a));
    let lo = *WEIGHT_RANGE.start();
    let hi = *WEIGHT_RANGE.end();
    let at_boundary = pieces
        .iter()
        .any(|p| p.dimension > 0 && (p.weight == lo || p.weight == hi));
    Ok(TangentReport {
        id: record.id.clone(),
        dimension: weights.len(),
        weights,
        pieces,
        cover: record.cover(),
        overlaps: overlaps
            .iter()
            .map(|o| (locals[o.i].0, locals[o.j].0))
            .collect(),
        at_boundary,
    })
}
