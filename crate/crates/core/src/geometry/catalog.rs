//! Torus-fixed curves of degree 3 and 4 with their ideals on every chart
//! they meet.

use std::fmt;

use crate::error::{Error, Result};
use crate::groebner::{intersect, Ideal};
use crate::poly::{homogeneous_weight, MultiPoly, PolyRing};
use crate::rational::int;
use crate::skew_net::SkewNet;

use super::chart::{chart_presentation, transport_ideal, ChartLabel, ChartPresentation};
use super::curves::ParametricCurve;

/// The four charts with their presentations over the default free
/// coordinates.
#[derive(Clone, Debug)]
pub struct Atlas {
    net: SkewNet,
    charts: Vec<ChartPresentation>,
}

impl Atlas {
    pub fn new(net: &SkewNet) -> Result<Atlas> {
        let charts = ChartLabel::ALL
            .iter()
            .map(|&l| chart_presentation(l, net))
            .collect::<Result<Vec<_>>>()?;
        Ok(Atlas {
            net: net.clone(),
            charts,
        })
    }

    pub fn net(&self) -> &SkewNet {
        &self.net
    }

    pub fn chart(&self, label: ChartLabel) -> &ChartPresentation {
        let i = ChartLabel::ALL.iter().position(|&l| l == label).unwrap();
        &self.charts[i]
    }

    pub fn charts(&self) -> &[ChartPresentation] {
        &self.charts
    }
}

/// Which Hilbert scheme a fixed curve is a point of.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HilbertScheme {
    H3,
    H4,
}

impl HilbertScheme {
    pub fn degree(self) -> u32 {
        match self {
            HilbertScheme::H3 => 3,
            HilbertScheme::H4 => 4,
        }
    }

    /// Tangent dimension at any point: both schemes are smooth.
    pub fn dimension(self) -> usize {
        self.degree() as usize
    }
}

impl fmt::Display for HilbertScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H{}", self.degree())
    }
}

/// Generators of a curve ideal on one chart, over its free coordinates. The
/// chart residual is implicit.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalIdeal {
    pub chart: ChartLabel,
    pub gens: Vec<MultiPoly>,
}

impl LocalIdeal {
    /// The curve ideal together with the chart residual.
    pub fn ideal(&self, atlas: &Atlas) -> Result<Ideal> {
        let pres = atlas.chart(self.chart);
        let mut g = self.gens.clone();
        g.extend(pres.residual().gens().iter().cloned());
        Ideal::new(pres.ring(), g)
    }

    pub fn weights(&self, atlas: &Atlas) -> Result<Vec<i64>> {
        let w = atlas.chart(self.chart).weights();
        self.gens.iter().map(|g| homogeneous_weight(g, w)).collect()
    }
}

/// A torus-fixed curve.
#[derive(Clone, Debug)]
pub struct CurveRecord {
    pub id: String,
    pub name: String,
    pub scheme: HilbertScheme,
    pub home: ChartLabel,
    pub locals: Vec<LocalIdeal>,
    pub parametric: Option<ParametricCurve>,
    /// Tangent weights as printed for this curve.
    pub printed_weights: Vec<i64>,
}

impl CurveRecord {
    pub fn local(&self, chart: ChartLabel) -> Option<&LocalIdeal> {
        self.locals.iter().find(|l| l.chart == chart)
    }

    pub fn cover(&self) -> Vec<ChartLabel> {
        self.locals.iter().map(|l| l.chart).collect()
    }

    /// The image under `w_i ↔ w_{-i}`.
    pub fn mirror(&self, atlas: &Atlas) -> Result<CurveRecord> {
        let mut locals = Vec::new();
        for l in &self.locals {
            let target = atlas.chart(l.chart.mirror()).ring();
            let gens = l.gens.iter().map(|g| rename(g, target)).collect();
            locals.push(LocalIdeal {
                chart: l.chart.mirror(),
                gens,
            });
        }
        locals.sort_by_key(|l| l.chart);
        let id = match self.id.strip_suffix("_mirror") {
            Some(base) => base.to_string(),
            None => format!("{}_mirror", self.id),
        };
        let name = match self.name.strip_prefix("mirror ") {
            Some(base) => base.to_string(),
            None => format!("mirror {}", self.name),
        };
        Ok(CurveRecord {
            id,
            name,
            scheme: self.scheme,
            home: self.home.mirror(),
            locals,
            parametric: self.parametric.as_ref().map(mirror_curve).transpose()?,
            printed_weights: self.printed_weights.iter().map(|w| -w).collect(),
        })
    }
}

fn rename(f: &MultiPoly, target: &PolyRing) -> MultiPoly {
    MultiPoly::from_terms(target, f.terms().to_vec())
}

/// Reverses rows and columns of a curve matrix.
pub fn mirror_curve(c: &ParametricCurve) -> Result<ParametricCurve> {
    let rows = (0..3)
        .map(|r| (0..7).map(|j| c.rows()[2 - r][6 - j].clone()).collect())
        .collect();
    ParametricCurve::new(c.ring(), rows)
}

fn from_home(
    atlas: &Atlas,
    home: ChartLabel,
    gens: &[&str],
    cover: &[ChartLabel],
) -> Result<Vec<LocalIdeal>> {
    let pres = atlas.chart(home);
    let ambient = Ideal::parse(pres.chart().ring(), gens)?;
    let pulled: Vec<MultiPoly> = ambient
        .gens()
        .iter()
        .map(|g| pres.pull(g))
        .collect::<Result<_>>()?;
    let ideal = Ideal::new(pres.ring(), pulled.clone())?;
    let mut out = Vec::new();
    for &c in cover {
        if c == home {
            out.push(LocalIdeal { chart: c, gens: pulled.clone() });
            continue;
        }
        let j = transport_ideal(&ideal.sum(pres.residual())?, pres, atlas.chart(c))?;
        if j.is_unit() {
            return Err(Error::Invalid(format!("curve misses chart {c}")));
        }
        out.push(LocalIdeal {
            chart: c,
            gens: strip_residual(&j, atlas.chart(c)),
        });
    }
    out.sort_by_key(|l| l.chart);
    Ok(out)
}

fn strip_residual(j: &Ideal, pres: &ChartPresentation) -> Vec<MultiPoly> {
    let res = pres.residual();
    let mut kept: Vec<MultiPoly> = Vec::new();
    for g in j.gens() {
        let mut span = res.gens().to_vec();
        span.extend(kept.iter().cloned());
        if !Ideal::new(pres.ring(), span).unwrap().contains(g) {
            kept.push(g.clone());
        }
    }
    kept
}

fn implicitized(atlas: &Atlas, parts: &[ParametricCurve], cover: &[ChartLabel]) -> Result<Vec<LocalIdeal>> {
    let mut out = Vec::new();
    for &c in cover {
        let pres = atlas.chart(c);
        let mut acc: Option<Ideal> = None;
        for p in parts {
            let i = p.implicitize(pres)?;
            if i.is_unit() {
                continue;
            }
            acc = Some(match acc {
                None => i,
                Some(a) => intersect(&a, &i)?.reduced(),
            });
        }
        let i = acc.ok_or_else(|| Error::Invalid(format!("curve misses chart {c}")))?;
        out.push(LocalIdeal {
            chart: c,
            gens: strip_residual(&i, pres),
        });
    }
    Ok(out)
}

fn one_param(var: &str, rows: &[[&str; 7]; 3]) -> Result<ParametricCurve> {
    ParametricCurve::parse(&PolyRing::grevlex(&[var]), rows)
}

/// The fixed line through `p12` and `p10`.
pub fn fixed_line() -> Result<ParametricCurve> {
    one_param(
        "t",
        &[
            ["1", "0", "0", "0", "0", "0", "0"],
            ["0", "1", "0", "0", "0", "0", "0"],
            ["0", "0", "1", "t", "0", "0", "0"],
        ],
    )
}

/// The fixed conic through `p10` and `p-10`, at `s = 1`.
pub fn fixed_conic() -> Result<ParametricCurve> {
    ParametricCurve::parse(
        &PolyRing::grevlex(&["s", "t"]),
        &[
            ["s", "0", "0", "0", "0", "-9*t", "0"],
            ["0", "s", "0", "0", "0", "0", "t"],
            ["0", "0", "0", "1", "0", "0", "0"],
        ],
    )?
    .specialize("s", &int(1))
}

/// The fixed irreducible quartic through `p12` and `p-12`.
pub fn fixed_quartic() -> Result<ParametricCurve> {
    one_param(
        "t",
        &[
            ["-4", "0", "0", "-t", "0", "0", "5*t^2"],
            ["0", "-4", "0", "0", "2*t", "0", "0"],
            ["0", "0", "-4", "0", "0", "-10*t", "0"],
        ],
    )
}

use ChartLabel::{P10, P12, PM10, PM12};

/// The four fixed points of `H3` and the six of `H4`, mirror-closed.
pub fn fixed_curve_catalog(atlas: &Atlas) -> Result<Vec<CurveRecord>> {
    let triple = CurveRecord {
        id: "triple_line".into(),
        name: "triple line".into(),
        scheme: HilbertScheme::H3,
        home: P12,
        locals: from_home(atlas, P12, &["a4", "a8", "a12"], &[P12, P10])?,
        parametric: None,
        printed_weights: vec![6, 4, 2],
    };
    let line_conic = CurveRecord {
        id: "line_conic".into(),
        name: "line and conic".into(),
        scheme: HilbertScheme::H3,
        home: P10,
        locals: from_home(atlas, P10, &["b10", "b11", "b8*b9"], &[P12, P10, PM10])?,
        parametric: None,
        printed_weights: vec![4, 2, -2],
    };
    let mult4 = CurveRecord {
        id: "mult4_line".into(),
        name: "multiplicity-4 line".into(),
        scheme: HilbertScheme::H4,
        home: P10,
        locals: from_home(atlas, P10, &["b4", "b8", "b10*b12"], &[P12, P10])?,
        parametric: None,
        printed_weights: vec![6, 4, 4, 2],
    };
    let dlq = CurveRecord {
        id: "double_line_conic".into(),
        name: "double line and conic".into(),
        scheme: HilbertScheme::H4,
        home: P10,
        locals: from_home(atlas, P10, &["b4", "b11", "b8*b9"], &[P12, P10, PM10])?,
        parametric: None,
        printed_weights: vec![6, 2, 2, -2],
    };
    let quartic = fixed_quartic()?;
    let c4 = CurveRecord {
        id: "quartic".into(),
        name: "irreducible quartic".into(),
        scheme: HilbertScheme::H4,
        home: P12,
        locals: implicitized(atlas, std::slice::from_ref(&quartic), &[P12, PM12])?,
        parametric: Some(quartic),
        printed_weights: vec![4, 2, -2, -4],
    };
    let line = fixed_line()?;
    let parts = [line.clone(), mirror_curve(&line)?, fixed_conic()?];
    let llq = CurveRecord {
        id: "two_lines_conic".into(),
        name: "two lines and conic".into(),
        scheme: HilbertScheme::H4,
        home: P10,
        locals: implicitized(atlas, &parts, &ChartLabel::ALL)?,
        parametric: None,
        printed_weights: vec![4, 2, -2, -4],
    };
    Ok(vec![
        triple.clone(),
        line_conic.clone(),
        line_conic.mirror(atlas)?,
        triple.mirror(atlas)?,
        mult4.clone(),
        dlq.clone(),
        c4,
        llq,
        dlq.mirror(atlas)?,
        mult4.mirror(atlas)?,
    ])
}
