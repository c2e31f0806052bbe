//! Curves given by a 3×7 matrix over a parameter ring, and the family of
//! twisted cubics cut out by the universal net of quadrics.

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::groebner::{eliminate, Ideal};
use crate::linalg::{self, Matrix};
use crate::poly::{MultiPoly, PolyRing};
use crate::rational::Rational;
use crate::skew_net::SkewNet;
use crate::sl2::U6_BASIS;

use super::chart::{adj3, basis_weight, det3, isotropy_products, ChartPresentation};

/// Variables of the ambient `P³` carrying the cubics.
pub const U_VARS: [&str; 4] = ["u3", "u1", "u_m1", "u_m3"];

/// A 3×7 matrix over a parameter ring; its row span traces a curve in the
/// Grassmannian as the parameter `t` varies.
#[derive(Clone, Debug, PartialEq)]
pub struct ParametricCurve {
    ring: PolyRing,
    rows: Vec<Vec<MultiPoly>>,
}

impl ParametricCurve {
    pub fn new(ring: &PolyRing, rows: Vec<Vec<MultiPoly>>) -> Result<Self> {
        if rows.len() != 3 || rows.iter().any(|r| r.len() != 7) {
            return Err(Error::Dimension("a curve needs a 3×7 matrix".into()));
        }
        if rows.iter().flatten().any(|p| p.ring() != ring) {
            return Err(Error::RingMismatch);
        }
        Ok(ParametricCurve {
            ring: ring.clone(),
            rows,
        })
    }

    /// Parses rows of entry strings over `ring`.
    pub fn parse(ring: &PolyRing, rows: &[[&str; 7]; 3]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        ParametricCurve::new(ring, rows)
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn rows(&self) -> &[Vec<MultiPoly>] {
        &self.rows
    }

    /// Fixes the parameter `var` at `value`; the result lives in the ring of
    /// the remaining variables.
    pub fn specialize(&self, var: &str, value: &Rational) -> Result<ParametricCurve> {
        let i = self
            .ring
            .index_of(var)
            .ok_or_else(|| Error::UnknownVariable(var.into()))?;
        let rest: Vec<String> = self.ring.vars().iter().filter(|v| *v != var).cloned().collect();
        let target = PolyRing::grevlex(&rest);
        let images: Vec<MultiPoly> = (0..self.ring.nvars())
            .map(|k| {
                if k == i {
                    target.constant(value.clone())
                } else {
                    target.var(&self.ring.vars()[k]).unwrap()
                }
            })
            .collect();
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|p| p.compose(&images, &target)).collect())
            .collect();
        ParametricCurve::new(&target, rows)
    }

    /// The 35 maximal minors, indexed by increasing column triples.
    pub fn plucker_coordinates(&self) -> Vec<MultiPoly> {
        let mut out = Vec::with_capacity(35);
        for a in 0..7 {
            for b in a + 1..7 {
                for c in b + 1..7 {
                    let m: Vec<Vec<MultiPoly>> = self
                        .rows
                        .iter()
                        .map(|r| vec![r[a].clone(), r[b].clone(), r[c].clone()])
                        .collect();
                    out.push(det3(&m));
                }
            }
        }
        out
    }

    fn single_parameter(&self) -> Result<usize> {
        match self.ring.nvars() {
            1 => Ok(0),
            _ => Err(Error::Invalid(format!(
                "expected one parameter, found {:?}",
                self.ring.vars()
            ))),
        }
    }

    /// Degree of the curve under the Plücker embedding: the largest degree
    /// among the maximal minors once their common factor is removed.
    pub fn plucker_degree(&self) -> Result<u32> {
        self.single_parameter()?;
        let minors: Vec<Vec<Rational>> = self
            .plucker_coordinates()
            .iter()
            .map(univariate)
            .filter(|c| !c.is_empty())
            .collect();
        if minors.is_empty() {
            return Err(Error::Invalid("the matrix drops rank identically".into()));
        }
        let g = minors.iter().skip(1).fold(minors[0].clone(), |a, b| uni_gcd(&a, b));
        let dg = g.len() - 1;
        Ok(minors.iter().map(|m| (m.len() - 1 - dg) as u32).max().unwrap())
    }

    /// Torus weight `τ` of the parameter making the curve equivariant: each
    /// term `c·t^k` in row `r`, column `j` forces `k·τ = κ_r − wt(w_j)`.
    pub fn parameter_weight(&self) -> Result<Rational> {
        let t = self.single_parameter()?;
        let mut a: Matrix = Vec::new();
        let mut rhs = Vec::new();
        for (r, row) in self.rows.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                for (m, _) in p.terms() {
                    let mut eq = vec![Rational::zero(); 4];
                    eq[r] = Rational::one();
                    eq[3] = -Rational::from_integer(m.exps()[t].into());
                    a.push(eq);
                    rhs.push(Rational::from_integer(basis_weight(j).into()));
                }
            }
        }
        let sol = linalg::solve(&a, &rhs)
            .ok_or_else(|| Error::NotSolvable("the curve is not torus-invariant".into()))?;
        if linalg::nullspace(&a, 4).iter().any(|v| !v[3].is_zero()) {
            return Err(Error::NotSolvable("the parameter weight is not determined".into()));
        }
        Ok(sol[3].clone())
    }

    /// Nonzero entries `(k, i, j, value)` of `P η_k Pᵀ`, `i < j`.
    pub fn isotropy_defects(&self, net: &SkewNet) -> Vec<(usize, usize, usize, MultiPoly)> {
        let prods = isotropy_products(&self.rows, net, &self.ring);
        let mut out = Vec::new();
        for (k, m) in prods.into_iter().enumerate() {
            for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                if !m[i][j].is_zero() {
                    out.push((k, i, j, m[i][j].clone()));
                }
            }
        }
        out
    }

    /// The ideal of the closure of the curve in a chart, over its free
    /// coordinates.
    pub fn implicitize(&self, chart: &ChartPresentation) -> Result<Ideal> {
        let t = self.single_parameter()?;
        let tname = self.ring.vars()[t].clone();
        let mut names = vec![tname.clone(), "_z".to_string()];
        names.extend(chart.free().iter().cloned());
        let big = PolyRing::grevlex(&names);
        let lift = |p: &MultiPoly| p.map_into(&big);
        let pinned = chart.chart().pinned();
        let m: Vec<Vec<MultiPoly>> = self
            .rows
            .iter()
            .map(|r| pinned.iter().map(|&c| lift(&r[c])).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let d = det3(&m);
        if d.is_zero() {
            return Ok(Ideal::unit(chart.ring()));
        }
        let adj = adj3(&m);
        let rows: Vec<Vec<MultiPoly>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(lift).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let mut gens = Vec::new();
        for v in chart.free() {
            let k = chart.chart().ring().index_of(v).unwrap();
            let (r, c) = chart.chart().position(k);
            let mut num = big.zero();
            for (j, row) in rows.iter().enumerate() {
                num = &num + &(&adj[r][j] * &row[c]);
            }
            gens.push(&(&d * &big.var(v)?) - &num);
        }
        gens.push(&big.one() - &(&d * &big.var("_z")?));
        let e = eliminate(&Ideal::new(&big, gens)?, &[tname.as_str(), "_z"])?;
        Ok(e.map_into(chart.ring())?.reduced())
    }
}

fn univariate(p: &MultiPoly) -> Vec<Rational> {
    let mut c = Vec::new();
    for (m, v) in p.terms() {
        let k = m.exps().first().copied().unwrap_or(0) as usize;
        if c.len() <= k {
            c.resize(k + 1, Rational::zero());
        }
        c[k] += v;
    }
    trim(c)
}

fn trim(mut c: Vec<Rational>) -> Vec<Rational> {
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    c
}

fn uni_rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = a.to_vec();
    let lb = b.last().unwrap();
    while r.len() >= b.len() && !r.is_empty() {
        let q = r.last().unwrap() / lb;
        let s = r.len() - b.len();
        for (i, x) in b.iter().enumerate() {
            r[s + i] -= &q * x;
        }
        r = trim(r);
    }
    r
}

/// Monic gcd of two univariate polynomials, lowest degree first.
pub fn uni_gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = uni_rem(&a, &b);
        a = b;
        b = r;
    }
    if let Some(l) = a.last().cloned() {
        for x in &mut a {
            *x /= &l;
        }
    }
    a
}

/// The three quadrics in `u` cut out by the 3-plane with rows `rows`, in
/// the printed basis of `U_6`.
pub fn cubic_quadrics(rows: &[Vec<MultiPoly>], ring: &PolyRing) -> Result<Vec<MultiPoly>> {
    let basis: Vec<MultiPoly> = U6_BASIS
        .iter()
        .map(|s| ring.parse(s))
        .collect::<Result<_>>()?;
    Ok(rows
        .iter()
        .map(|r| {
            let mut acc = ring.zero();
            for (x, q) in r.iter().zip(&basis) {
                if !x.is_zero() {
                    acc = &acc + &(x * q);
                }
            }
            acc
        })
        .collect())
}

/// The universal net of quadrics over a chart: ring of free coordinates
/// and `u`, with one quadric per row of the chart matrix.
pub fn universal_cubic(chart: &ChartPresentation) -> Result<Ideal> {
    let mut names: Vec<String> = chart.free().to_vec();
    names.extend(U_VARS.iter().map(|s| s.to_string()));
    let ring = PolyRing::grevlex(&names);
    let rows: Vec<Vec<MultiPoly>> = chart
        .matrix()
        .iter()
        .map(|r| r.iter().map(|p| p.map_into(&ring)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let mut gens = cubic_quadrics(&rows, &ring)?;
    gens.extend(chart.residual().gens().iter().map(|g| g.map_into(&ring)).collect::<Result<Vec<_>>>()?);
    Ideal::new(&ring, gens)
}

/// The net of quadrics of the chart point with free coordinates `values`,
/// in `Q[u3, u1, u_m1, u_m3]`.
pub fn cubic_at(chart: &ChartPresentation, values: &[Rational]) -> Result<Ideal> {
    if values.len() != chart.free().len() {
        return Err(Error::Dimension("one value per free coordinate".into()));
    }
    if chart.residual().gens().iter().any(|g| !g.eval(values).is_zero()) {
        return Err(Error::Invalid("point is off the chart".into()));
    }
    let ring = PolyRing::grevlex(&U_VARS);
    let rows: Vec<Vec<MultiPoly>> = chart
        .matrix()
        .iter()
        .map(|r| r.iter().map(|p| ring.constant(p.eval(values))).collect())
        .collect();
    Ideal::new(&ring, cubic_quadrics(&rows, &ring)?)
}

/// 2×2 minors of a 3×2 matrix, in the order `(0,1), (0,2), (1,2)`.
pub fn minors_3x2(m: &[[MultiPoly; 2]; 3]) -> [MultiPoly; 3] {
    let minor = |i: usize, j: usize| &(&m[i][0] * &m[j][1]) - &(&m[i][1] * &m[j][0]);
    [minor(0, 1), minor(0, 2), minor(1, 2)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn gcd_of_univariates() {
        let a = vec![int(-1), int(0), int(1)];
        let b = vec![int(1), int(1)];
        assert_eq!(uni_gcd(&a, &b), vec![int(1), int(1)]);
        assert_eq!(uni_gcd(&a, &[int(2)]), vec![int(1)]);
    }

    #[test]
    fn constant_plane_has_degree_zero() {
        let r = PolyRing::grevlex(&["t"]);
        let c = ParametricCurve::parse(
            &r,
            &[
                ["1", "0", "0", "0", "0", "0", "0"],
                ["0", "1", "0", "0", "0", "0", "0"],
                ["0", "0", "1", "0", "0", "0", "0"],
            ],
        )
        .unwrap();
        assert_eq!(c.plucker_degree().unwrap(), 0);
    }

    #[test]
    fn line_through_two_points() {
        let r = PolyRing::grevlex(&["t"]);
        let c = ParametricCurve::parse(
            &r,
            &[
                ["1", "0", "0", "0", "0", "0", "0"],
                ["0", "1", "0", "0", "0", "0", "0"],
                ["0", "0", "1", "t", "0", "0", "0"],
            ],
        )
        .unwrap();
        assert_eq!(c.plucker_degree().unwrap(), 1);
        assert_eq!(c.parameter_weight().unwrap(), int(2));
    }
}
