//! Affine charts of the threefold in `Gr(3, U_6)` around the four torus-fixed
//! points, their isotropy equations and chart transitions.

use std::fmt;
use std::str::FromStr;

use num::Zero;

use crate::error::{Error, Result};
use crate::groebner::{saturate, GroebnerBasis, Ideal};
use crate::poly::{MonomialOrder, MultiPoly, PolyRing, WeightAssignment};
use crate::skew_net::SkewNet;

/// Weight of the basis vector `w_{6-2i}` of `U_6`.
pub fn basis_weight(i: usize) -> i64 {
    6 - 2 * i as i64
}

/// The four torus-fixed points of the threefold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChartLabel {
    P12,
    P10,
    PM10,
    PM12,
}

impl ChartLabel {
    pub const ALL: [ChartLabel; 4] = [ChartLabel::P12, ChartLabel::P10, ChartLabel::PM10, ChartLabel::PM12];

    /// Columns of the decomposable 3-plane: `w6∧w4∧w2`, `w6∧w4∧w0` and mirrors.
    pub fn pinned(self) -> [usize; 3] {
        match self {
            ChartLabel::P12 => [0, 1, 2],
            ChartLabel::P10 => [0, 1, 3],
            ChartLabel::PM10 => [3, 5, 6],
            ChartLabel::PM12 => [4, 5, 6],
        }
    }

    /// Torus weight of the fixed point in `∧³U_6`.
    pub fn weight(self) -> i64 {
        self.pinned().iter().map(|&i| basis_weight(i)).sum()
    }

    pub fn mirror(self) -> ChartLabel {
        match self {
            ChartLabel::P12 => ChartLabel::PM12,
            ChartLabel::P10 => ChartLabel::PM10,
            ChartLabel::PM10 => ChartLabel::P10,
            ChartLabel::PM12 => ChartLabel::P12,
        }
    }

    /// Coordinate prefix: `a` on V12, `b` on V10, `d` on V-10, `c` on V-12.
    pub fn prefix(self) -> &'static str {
        match self {
            ChartLabel::P12 => "a",
            ChartLabel::P10 => "b",
            ChartLabel::PM10 => "d",
            ChartLabel::PM12 => "c",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ChartLabel::P12 => "p12",
            ChartLabel::P10 => "p10",
            ChartLabel::PM10 => "p-10",
            ChartLabel::PM12 => "p-12",
        }
    }

    fn is_primary(self) -> bool {
        matches!(self, ChartLabel::P12 | ChartLabel::P10)
    }

    /// Coordinates kept free by [`chart_parameterize`] by default.
    pub fn default_free(self) -> Vec<String> {
        let idx: &[usize] = match self {
            ChartLabel::P12 | ChartLabel::PM12 => &[9, 10, 11],
            ChartLabel::P10 | ChartLabel::PM10 => &[8, 9, 10, 12],
        };
        idx.iter().map(|k| format!("{}{k}", self.prefix())).collect()
    }
}

impl fmt::Display for ChartLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ChartLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "p12" => Ok(ChartLabel::P12),
            "p10" => Ok(ChartLabel::P10),
            "p-10" => Ok(ChartLabel::PM10),
            "p-12" => Ok(ChartLabel::PM12),
            _ => Err(Error::Invalid(format!("unknown chart `{s}`"))),
        }
    }
}

/// An affine chart: the 3×7 matrix with an identity block in the pinned
/// columns and twelve named coordinates elsewhere.
#[derive(Clone, Debug, PartialEq)]
pub struct Chart {
    label: ChartLabel,
    ring: PolyRing,
    positions: Vec<(usize, usize)>,
    weights: WeightAssignment,
}

impl Chart {
    pub fn new(label: ChartLabel) -> Chart {
        let base = if label.is_primary() { label } else { label.mirror() };
        let pinned = base.pinned();
        let free: Vec<usize> = (0..7).filter(|c| !pinned.contains(c)).collect();
        let mut positions = Vec::with_capacity(12);
        for r in 0..3 {
            for &c in &free {
                positions.push(if label.is_primary() { (r, c) } else { (2 - r, 6 - c) });
            }
        }
        let names: Vec<String> = (1..=12).map(|k| format!("{}{k}", label.prefix())).collect();
        let ring = PolyRing::grevlex(&names);
        let pinned = label.pinned();
        let w = positions
            .iter()
            .map(|&(r, c)| basis_weight(pinned[r]) - basis_weight(c))
            .collect();
        let weights = WeightAssignment::new(&ring, w).expect("one weight per coordinate");
        Chart {
            label,
            ring,
            positions,
            weights,
        }
    }

    pub fn label(&self) -> ChartLabel {
        self.label
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn weights(&self) -> &WeightAssignment {
        &self.weights
    }

    pub fn pinned(&self) -> [usize; 3] {
        self.label.pinned()
    }

    /// `(row, column)` of coordinate `k` (0-based).
    pub fn position(&self, k: usize) -> (usize, usize) {
        self.positions[k]
    }

    /// Index of the coordinate at `(row, column)`, if it is not pinned.
    pub fn coordinate_at(&self, r: usize, c: usize) -> Option<usize> {
        self.positions.iter().position(|&p| p == (r, c))
    }

    /// The chart matrix over the chart ring.
    pub fn template(&self) -> Vec<Vec<MultiPoly>> {
        self.template_over(&self.ring, &(0..12).map(|k| self.ring.var_at(k)).collect::<Vec<_>>())
    }

    /// The chart matrix with coordinate `k` replaced by `coords[k]`.
    pub fn template_over(&self, ring: &PolyRing, coords: &[MultiPoly]) -> Vec<Vec<MultiPoly>> {
        let mut m = vec![vec![ring.zero(); 7]; 3];
        for (r, &c) in self.pinned().iter().enumerate() {
            m[r][c] = ring.one();
        }
        for (k, &(r, c)) in self.positions.iter().enumerate() {
            m[r][c] = coords[k].clone();
        }
        m
    }

    /// Renames a polynomial in this chart's coordinates to the mirror chart.
    pub fn mirror_poly(&self, f: &MultiPoly) -> MultiPoly {
        let other = Chart::new(self.label.mirror());
        MultiPoly::from_terms(other.ring(), f.terms().to_vec())
    }
}

/// `P η_k Pᵀ` for a 3×7 matrix `p` and each matrix of the net.
pub fn isotropy_products(p: &[Vec<MultiPoly>], net: &SkewNet, ring: &PolyRing) -> Vec<Vec<Vec<MultiPoly>>> {
    net.matrices()
        .iter()
        .map(|eta| {
            let pe: Vec<Vec<MultiPoly>> = p
                .iter()
                .map(|row| {
                    (0..7)
                        .map(|j| {
                            let mut acc = ring.zero();
                            for (i, x) in row.iter().enumerate() {
                                if !x.is_zero() && !eta[i][j].is_zero() {
                                    acc = &acc + &x.scale(&eta[i][j]);
                                }
                            }
                            acc
                        })
                        .collect()
                })
                .collect();
            (0..3)
                .map(|a| {
                    (0..3)
                        .map(|b| {
                            let mut acc = ring.zero();
                            for j in 0..7 {
                                if !pe[a][j].is_zero() && !p[b][j].is_zero() {
                                    acc = &acc + &(&pe[a][j] * &p[b][j]);
                                }
                            }
                            acc
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// The nine entries above the diagonal of `P η_k Pᵀ`, `k = 2, 0, -2`.
pub fn chart_equation_list(chart: &Chart, net: &SkewNet) -> Vec<MultiPoly> {
    let prods = isotropy_products(&chart.template(), net, chart.ring());
    let mut out = Vec::with_capacity(9);
    for m in &prods {
        for (a, b) in [(0, 1), (0, 2), (1, 2)] {
            out.push(m[a][b].clone());
        }
    }
    out
}

/// The ideal of the chart in its twelve coordinates.
pub fn chart_equations(chart: &Chart, net: &SkewNet) -> Result<Ideal> {
    Ideal::new(chart.ring(), chart_equation_list(chart, net))
}

/// A chart solved over a subset of its coordinates: every coordinate is a
/// polynomial in the free ones, subject to a residual ideal.
#[derive(Clone, Debug)]
pub struct ChartPresentation {
    chart: Chart,
    free: Vec<String>,
    reduced: PolyRing,
    images: Vec<MultiPoly>,
    residual: Ideal,
    reduced_weights: WeightAssignment,
}

impl ChartPresentation {
    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn label(&self) -> ChartLabel {
        self.chart.label
    }

    pub fn free(&self) -> &[String] {
        &self.free
    }

    /// Polynomial ring on the free coordinates.
    pub fn ring(&self) -> &PolyRing {
        &self.reduced
    }

    pub fn weights(&self) -> &WeightAssignment {
        &self.reduced_weights
    }

    /// Image of coordinate `k` in the free coordinates.
    pub fn image(&self, k: usize) -> &MultiPoly {
        &self.images[k]
    }

    pub fn images(&self) -> &[MultiPoly] {
        &self.images
    }

    pub fn residual(&self) -> &Ideal {
        &self.residual
    }

    /// Rewrites a polynomial in chart coordinates over the free ones.
    pub fn pull(&self, f: &MultiPoly) -> Result<MultiPoly> {
        let f = f.map_into(self.chart.ring())?;
        Ok(f.compose(&self.images, &self.reduced))
    }

    /// Pulls an ideal in chart coordinates and adds the residual.
    pub fn pull_ideal(&self, i: &Ideal) -> Result<Ideal> {
        let mut g = i
            .gens()
            .iter()
            .map(|f| self.pull(f))
            .collect::<Result<Vec<_>>>()?;
        g.extend(self.residual.gens().iter().cloned());
        Ideal::new(&self.reduced, g)
    }

    /// The chart matrix over the free coordinates.
    pub fn matrix(&self) -> Vec<Vec<MultiPoly>> {
        self.chart.template_over(&self.reduced, &self.images)
    }
}

/// Solves the chart equations for all coordinates outside `free` by a lex
/// Gröbner basis. Fails unless each such coordinate is a leading monomial.
pub fn chart_parameterize(chart: &Chart, net: &SkewNet, free: &[String]) -> Result<ChartPresentation> {
    let ring = chart.ring();
    for v in free {
        if ring.index_of(v).is_none() {
            return Err(Error::UnknownVariable(v.clone()));
        }
    }
    let dependent: Vec<String> = ring.vars().iter().filter(|v| !free.contains(v)).cloned().collect();
    let mut order = dependent.clone();
    order.extend(free.iter().cloned());
    let lex = PolyRing::new(&order, MonomialOrder::Lex)?;
    let eqs = chart_equations(chart, net)?;
    let gens = eqs
        .gens()
        .iter()
        .map(|g| g.map_into(&lex))
        .collect::<Result<Vec<_>>>()?;
    let gb = GroebnerBasis::compute(&lex, &gens);
    let reduced = PolyRing::grevlex(free);
    let nd = dependent.len();
    let mut images = vec![reduced.zero(); 12];
    let mut solved = vec![false; nd];
    let mut residual = Vec::new();
    for g in gb.basis() {
        let lm = g.leading_monomial().unwrap();
        let head = (0..nd).find(|&i| lm.exps()[i] > 0);
        match head {
            None => residual.push(g.map_into(&reduced)?),
            Some(i) => {
                let is_var = lm.degree() == 1;
                let tail = g - &lex.var_at(i);
                let tail_free = tail.support_vars().iter().all(|&v| v >= nd);
                if !(is_var && tail_free && g.leading_coeff().is_some_and(num::One::is_one)) {
                    return Err(Error::NotSolvable(format!(
                        "`{}` is not solved by `{g}`",
                        dependent[i]
                    )));
                }
                solved[i] = true;
                let k = ring.index_of(&dependent[i]).unwrap();
                images[k] = (-tail).map_into(&reduced)?;
            }
        }
    }
    if let Some(i) = solved.iter().position(|s| !s) {
        return Err(Error::NotSolvable(format!("`{}` is not determined", dependent[i])));
    }
    for v in free {
        images[ring.index_of(v).unwrap()] = reduced.var(v)?;
    }
    let residual = Ideal::new(&reduced, residual)?;
    let reduced_weights = chart.weights().for_ring(&reduced)?;
    Ok(ChartPresentation {
        chart: chart.clone(),
        free: free.to_vec(),
        reduced,
        images,
        residual,
        reduced_weights,
    })
}

/// [`chart_parameterize`] with the default free coordinates.
pub fn chart_presentation(label: ChartLabel, net: &SkewNet) -> Result<ChartPresentation> {
    let chart = Chart::new(label);
    chart_parameterize(&chart, net, &label.default_free())
}

/// Determinant of a 3×3 polynomial matrix.
pub fn det3(m: &[Vec<MultiPoly>]) -> MultiPoly {
    let t = |a: usize, b: usize, c: usize| &(&m[0][a] * &m[1][b]) * &m[2][c];
    let pos = &(&t(0, 1, 2) + &t(1, 2, 0)) + &t(2, 0, 1);
    let neg = &(&t(2, 1, 0) + &t(0, 2, 1)) + &t(1, 0, 2);
    &pos - &neg
}

/// Adjugate of a 3×3 polynomial matrix.
pub fn adj3(m: &[Vec<MultiPoly>]) -> Vec<Vec<MultiPoly>> {
    let cof = |i: usize, j: usize| {
        let r: Vec<usize> = (0..3).filter(|&x| x != i).collect();
        let c: Vec<usize> = (0..3).filter(|&x| x != j).collect();
        let d = &(&m[r[0]][c[0]] * &m[r[1]][c[1]]) - &(&m[r[0]][c[1]] * &m[r[1]][c[0]]);
        if (i + j).is_multiple_of(2) {
            d
        } else {
            -d
        }
    };
    (0..3).map(|i| (0..3).map(|j| cof(j, i)).collect()).collect()
}

/// The change of coordinates from chart `from` to chart `to`, written over
/// the free coordinates of `to`: coordinate `k` of `from` equals
/// `alpha[k] / e`. `d` is the determinant of the `to`-pinned block of the
/// `from` matrix, over the free coordinates of `from`.
#[derive(Clone, Debug)]
pub struct Transition {
    pub from: ChartLabel,
    pub to: ChartLabel,
    pub alpha: Vec<MultiPoly>,
    pub e: MultiPoly,
    pub d: MultiPoly,
}

pub fn transition(from: &ChartPresentation, to: &ChartPresentation) -> Result<Transition> {
    let p_to = to.matrix();
    let pinned_from = from.chart().pinned();
    let m: Vec<Vec<MultiPoly>> = p_to
        .iter()
        .map(|row| pinned_from.iter().map(|&c| row[c].clone()).collect())
        .collect();
    let e = det3(&m);
    if e.is_zero() || to.residual().contains(&e) {
        return Err(Error::Invalid(format!(
            "charts {} and {} do not overlap",
            from.label(),
            to.label()
        )));
    }
    let adj = adj3(&m);
    let ring = to.ring();
    let mut alpha = Vec::with_capacity(12);
    for k in 0..12 {
        let (r, c) = from.chart().position(k);
        let mut acc = ring.zero();
        for j in 0..3 {
            acc = &acc + &(&adj[r][j] * &p_to[j][c]);
        }
        alpha.push(acc);
    }
    let p_from = from.matrix();
    let pinned_to = to.chart().pinned();
    let mf: Vec<Vec<MultiPoly>> = p_from
        .iter()
        .map(|row| pinned_to.iter().map(|&c| row[c].clone()).collect())
        .collect();
    Ok(Transition {
        from: from.label(),
        to: to.label(),
        alpha,
        e,
        d: det3(&mf),
    })
}

impl Transition {
    /// `(h, n)` with `f(alpha/e) = h / e^n`, for `f` over the free
    /// coordinates of `from` (given by `from_free` indices).
    pub fn substitute(&self, f: &MultiPoly, from: &ChartPresentation) -> Result<(MultiPoly, u32)> {
        let ring = self.e.ring().clone();
        let n = f.total_degree().unwrap_or(0);
        let images: Vec<MultiPoly> = from
            .free()
            .iter()
            .map(|v| self.alpha[from.chart().ring().index_of(v).unwrap()].clone())
            .collect();
        if f.ring() != from.ring() {
            return Err(Error::RingMismatch);
        }
        let mut pows = vec![ring.one()];
        for _ in 0..n {
            let last = pows.last().unwrap().clone();
            pows.push(&last * &self.e);
        }
        let mut acc = ring.zero();
        for (m, c) in f.terms() {
            let mut t = ring.constant(c.clone());
            for (i, &k) in m.exps().iter().enumerate() {
                if k > 0 {
                    t = &t * &images[i].pow(k);
                }
            }
            acc = &acc + &(&t * &pows[(n - m.degree()) as usize]);
        }
        Ok((acc, n))
    }
}

/// Moves an ideal over the free coordinates of `from` to those of `to`,
/// saturating by the transition determinant. Returns the unit ideal when
/// the curve misses the overlap.
pub fn transport_ideal(i: &Ideal, from: &ChartPresentation, to: &ChartPresentation) -> Result<Ideal> {
    let t = transition(from, to)?;
    let mut gens = Vec::new();
    for g in i.gens() {
        gens.push(t.substitute(g, from)?.0);
    }
    gens.extend(to.residual().gens().iter().cloned());
    let j = Ideal::new(to.ring(), gens)?;
    Ok(saturate(&j, &t.e)?.reduced())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chart_weights() {
        let c = Chart::new(ChartLabel::P12);
        let w: Vec<i64> = c.weights().weights().to_vec();
        assert_eq!(w, vec![6, 8, 10, 12, 4, 6, 8, 10, 2, 4, 6, 8]);
        let b = Chart::new(ChartLabel::P10);
        let w: Vec<i64> = b.weights().weights().to_vec();
        assert_eq!(w, vec![4, 8, 10, 12, 2, 6, 8, 10, -2, 2, 4, 6]);
        let m = Chart::new(ChartLabel::PM12);
        let neg: Vec<i64> = m.weights().weights().iter().map(|x| -x).collect();
        assert_eq!(neg, c.weights().weights());
        assert_eq!(ChartLabel::P10.weight(), 10);
        assert_eq!(ChartLabel::PM10.weight(), -10);
    }

    #[test]
    fn mirror_template_has_identity_block() {
        let m = Chart::new(ChartLabel::PM10);
        let t = m.template();
        for (r, &c) in m.pinned().iter().enumerate() {
            assert!(t[r][c].is_constant());
        }
        assert_eq!(m.position(0), (2, 4));
        assert_eq!("p-10".parse::<ChartLabel>().unwrap(), ChartLabel::PM10);
    }

    #[test]
    fn adjugate_identity() {
        let r = PolyRing::grevlex(&["x", "y"]);
        let p = |s: &str| r.parse(s).unwrap();
        let m = vec![
            vec![p("x"), p("1"), p("0")],
            vec![p("y"), p("x"), p("2")],
            vec![p("1"), p("0"), p("y")],
        ];
        let a = adj3(&m);
        let d = det3(&m);
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = r.zero();
                for k in 0..3 {
                    acc = &acc + &(&a[i][k] * &m[k][j]);
                }
                assert_eq!(acc, if i == j { d.clone() } else { r.zero() });
            }
        }
    }
}
