//! The six pipeline stages. Each returns a status, a JSON payload and the
//! mismatches it found against the fixtures.

use std::cell::OnceCell;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use mu_core::bb::{assemble, is_mirror_closed, smoothness_audit, FixedPointRecord};
use mu_core::deformation::{glue_tangent, hom_weight, verify_hom, TangentReport, WEIGHT_RANGE};
use mu_core::geometry::curves::ParametricCurve;
use mu_core::geometry::{
    chart_equations, cubic_at, fixed_curve_catalog, transition, universal_cubic, Atlas, Chart,
    ChartLabel, CurveRecord, HilbertScheme, U_VARS,
};
use mu_core::groebner::{hilbert_polynomial, saturate_by_variables, saturate_irrelevant, Ideal};
use mu_core::linalg::proportionality;
use mu_core::rational::{fmt_rational, int, rat};
use mu_core::skew_net::{self, SkewNet};
use mu_core::sl2::{self, DualConvention, Pairing};
use mu_core::{MultiPoly, PolyRing, Rational};

use crate::fixtures::{FixtureError, FixtureSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Stage {
    Rep,
    Net,
    Variety,
    Curves,
    Deform,
    Poincare,
}

impl Stage {
    pub const ALL: [Stage; 6] = [
        Stage::Rep,
        Stage::Net,
        Stage::Variety,
        Stage::Curves,
        Stage::Deform,
        Stage::Poincare,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Stage::Rep => "rep",
            Stage::Net => "net",
            Stage::Variety => "variety",
            Stage::Curves => "curves",
            Stage::Deform => "deform",
            Stage::Poincare => "poincare",
        }
    }

    pub fn requires(self) -> Option<Stage> {
        match self {
            Stage::Rep => None,
            Stage::Net => Some(Stage::Rep),
            Stage::Variety => Some(Stage::Net),
            Stage::Curves => Some(Stage::Variety),
            Stage::Deform => Some(Stage::Curves),
            Stage::Poincare => Some(Stage::Deform),
        }
    }

    /// The stage checking a fixture.
    pub fn owning(fixture: &str) -> Option<Stage> {
        Some(match fixture {
            "u6" => Stage::Rep,
            "eta" | "pfaffians" => Stage::Net,
            "v12" => Stage::Variety,
            "curves" | "ideals" => Stage::Curves,
            "hom" => Stage::Deform,
            "weights" => Stage::Deform,
            _ => return None,
        })
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Requested stages plus everything they depend on, in pipeline order.
pub fn closure(requested: &[Stage]) -> Vec<Stage> {
    let mut want: Vec<Stage> = Vec::new();
    for &s in requested {
        let mut cur = Some(s);
        while let Some(c) = cur {
            if !want.contains(&c) {
                want.push(c);
            }
            cur = c.requires();
        }
    }
    want.sort();
    want
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Mismatch,
    Error,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mismatch {
    pub fixture: Option<String>,
    pub message: String,
}

impl From<FixtureError> for Mismatch {
    fn from(e: FixtureError) -> Self {
        Mismatch {
            fixture: Some(e.file.trim_end_matches(".txt").rsplit('/').next().unwrap_or("").to_string()),
            message: e.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StageReport {
    pub status: Status,
    pub payload: Value,
    pub mismatches: Vec<Mismatch>,
}

impl StageReport {
    pub fn skipped() -> Self {
        StageReport {
            status: Status::Skipped,
            payload: Value::Null,
            mismatches: Vec::new(),
        }
    }

    pub fn error(msg: String) -> Self {
        StageReport {
            status: Status::Error,
            payload: json!({ "error": msg }),
            mismatches: Vec::new(),
        }
    }
}

#[derive(Default)]
struct Checks {
    count: usize,
    mismatches: Vec<Mismatch>,
}

impl Checks {
    fn check(&mut self, ok: bool, fixture: Option<&str>, msg: impl FnOnce() -> String) {
        self.count += 1;
        if !ok {
            self.mismatches.push(Mismatch {
                fixture: fixture.map(str::to_string),
                message: msg(),
            });
        }
    }

    fn fixture_err(&mut self, e: FixtureError) {
        self.count += 1;
        self.mismatches.push(e.into());
    }

    fn finish(self, mut payload: Value) -> StageReport {
        payload["checks"] = json!(self.count);
        StageReport {
            status: if self.mismatches.is_empty() {
                Status::Verified
            } else {
                Status::Mismatch
            },
            payload,
            mismatches: self.mismatches,
        }
    }
}

/// Shared state of one pipeline run; heavy objects are built on first use.
pub struct Context<'a> {
    pub fixtures: &'a FixtureSet,
    pub charts: Vec<ChartLabel>,
    net: OnceCell<SkewNet>,
    atlas: OnceCell<Atlas>,
    catalog: OnceCell<Vec<CurveRecord>>,
}

type Res<T> = mu_core::Result<T>;

impl<'a> Context<'a> {
    pub fn new(fixtures: &'a FixtureSet, charts: Vec<ChartLabel>) -> Self {
        Context {
            fixtures,
            charts,
            net: OnceCell::new(),
            atlas: OnceCell::new(),
            catalog: OnceCell::new(),
        }
    }

    fn net(&self) -> Res<&SkewNet> {
        if self.net.get().is_none() {
            let _ = self.net.set(skew_net::threefold_net()?);
        }
        Ok(self.net.get().unwrap())
    }

    fn atlas(&self) -> Res<&Atlas> {
        if self.atlas.get().is_none() {
            let a = Atlas::new(self.net()?)?;
            let _ = self.atlas.set(a);
        }
        Ok(self.atlas.get().unwrap())
    }

    fn catalog(&self) -> Res<&[CurveRecord]> {
        if self.catalog.get().is_none() {
            let c = fixed_curve_catalog(self.atlas()?)?;
            let _ = self.catalog.set(c);
        }
        Ok(self.catalog.get().unwrap())
    }

    /// Runs one stage; `done` holds the reports of earlier stages.
    pub fn run(&self, stage: Stage, done: &[(Stage, StageReport)]) -> Res<StageReport> {
        match stage {
            Stage::Rep => self.rep(),
            Stage::Net => self.net_stage(),
            Stage::Variety => self.variety(),
            Stage::Curves => self.curves(),
            Stage::Deform => self.deform(),
            Stage::Poincare => {
                let deform = done
                    .iter()
                    .find(|(s, _)| *s == Stage::Deform)
                    .map(|(_, r)| r)
                    .ok_or_else(|| mu_core::Error::Invalid("poincare needs the deform stage".into()))?;
                self.poincare(deform)
            }
        }
    }

    fn rep(&self) -> Res<StageReport> {
        let fx = self.fixtures.get("u6");
        let mut c = Checks::default();
        let orbit = sl2::u6_orbit();
        let s = orbit[0].space().clone();
        let r = sl2::base_ring(&s)?;
        let mut scalars: Vec<Value> = Vec::new();
        let keys = fx.indexed("u6");
        c.check(keys.len() == 7, Some("u6"), || format!("u6.txt: expected 7 entries u6[1..7], found {}", keys.len()));
        for (i, key) in keys.iter().enumerate() {
            let p = match fx.poly(key, &r) {
                Ok(p) => p,
                Err(e) => {
                    c.fixture_err(e);
                    continue;
                }
            };
            let v = sl2::poly_to_sym2(&s, &p)?;
            let ratio = orbit.get(i).and_then(|o| proportionality(v.coords(), o.coords()));
            c.check(ratio.is_some(), Some("u6"), || {
                fx.error(key, format!("not proportional to the orbit vector {}", i + 1)).to_string()
            });
            scalars.push(ratio.map_or(Value::Null, |x| json!(fmt_rational(&x))));
        }
        let generators: Vec<String> = orbit
            .iter()
            .map(|o| sl2::sym2_to_poly(o, &r).map(|f| f.primitive().to_string()))
            .collect::<Res<_>>()?;

        let q = sl2::net_q(DualConvention::Transpose);
        let sd = q[0].space().clone();
        let rd = sl2::base_ring(&sd)?;
        let mut printed_q = Vec::new();
        for key in fx.indexed("q") {
            match fx.poly(&key, &rd) {
                Ok(p) => printed_q.push(sl2::poly_to_sym2(&sd, &p)?),
                Err(e) => c.fixture_err(e),
            }
        }
        c.check(sl2::same_span(&q, &printed_q), Some("u6"), || {
            "u6.txt: q[1..3] do not span the derived quadric net".into()
        });
        let target = sl2::sym2(&sl2::w3());
        let ann = sl2::apolar_annihilator(&q, &target, Pairing::Polar)?;
        c.check(sl2::same_span(&ann, &orbit), None, || {
            format!("annihilator of q has dimension {}, not the span of U6", ann.len())
        });
        let relations = sl2::satisfies_sl2_relations(&s) && sl2::satisfies_sl2_relations(&sd);
        c.check(relations, None, || "[e,f] != h on a constructed module".into());

        let u = sl2::u6_module()?;
        let payload = json!({
            "dual_convention": "transpose",
            "u6_generators": generators,
            "u6_labels": u.labels(),
            "u6_weights": u.weights(),
            "orbit_scalars": scalars,
            "quadric_net": q.iter().map(|v| sl2::sym2_to_poly(v, &rd).map(|f| f.to_string())).collect::<Res<Vec<_>>>()?,
            "annihilator_dimension": ann.len(),
        });
        Ok(c.finish(payload))
    }

    fn net_stage(&self) -> Res<StageReport> {
        let mut c = Checks::default();
        let eta_fx = self.fixtures.get("eta");
        let pf_fx = self.fixtures.get("pfaffians");
        let (x, gens) = sl2::alternating_net(DualConvention::Transpose)?;
        let net = skew_net::net_from_forms(&gens)?;
        let y = skew_net::y_ring();
        for i in 1..=7 {
            for j in i + 1..=7 {
                let key = format!("eta[{i},{j}]");
                match eta_fx.poly(&key, &y) {
                    Ok(p) => {
                        let ours = net.entry(i, j);
                        c.check(p == ours, Some("eta"), || {
                            eta_fx.error(&key, format!("fixture has {p}, computed {ours}")).to_string()
                        });
                    }
                    Err(e) => c.fixture_err(e),
                }
            }
        }
        for e in &eta_fx.entries {
            if !is_upper_key(&e.key) {
                c.fixture_err(eta_fx.error(&e.key, "not an upper-triangle entry eta[i,j] with 1 <= i < j <= 7"));
            }
        }

        let pf = skew_net::principal_pfaffians(&net)?;
        let mut printed = Vec::new();
        for key in pf_fx.indexed("pf") {
            match pf_fx.poly(&key, &y) {
                Ok(p) => {
                    c.check(pf.iter().any(|q| proportional(q, &p)), Some("pfaffians"), || {
                        pf_fx.error(&key, format!("{p} is not proportional to any principal Pfaffian")).to_string()
                    });
                    printed.push(p);
                }
                Err(e) => c.fixture_err(e),
            }
        }
        let ours = Ideal::new(&y, pf.clone())?;
        let theirs = Ideal::new(&y, printed)?;
        c.check(ours.equals(&theirs), Some("pfaffians"), || {
            "pfaffians.txt: printed cubics and principal Pfaffians generate different ideals".into()
        });

        let f = skew_net::apolar_quartic(&pf)?;
        let double = skew_net::is_double_smooth_conic(&f);
        c.check(double, None, || format!("apolar quartic {f} is not a double smooth conic"));
        let n = x.restrict(
            &[gens[2].clone(), gens[1].clone(), gens[0].clone()],
            vec!["n2".into(), "n0".into(), "n_m2".into()],
        )?;
        let b = skew_net::invariant_form(&n)?;
        let transported = skew_net::equivariant_transport(&f, &b)?;
        let (printed_f, agrees) = match pf_fx.poly("quartic", &y) {
            Ok(p) => {
                let a = proportional(&transported, &p);
                (json!(p.to_string()), a)
            }
            Err(e) => {
                c.fixture_err(e);
                (Value::Null, false)
            }
        };
        let mut notes = Vec::new();
        if !agrees {
            notes.push(format!(
                "apolar quartic transported to y is {transported}, not proportional to the printed form; \
                 both are squares of smooth conics"
            ));
        }

        let payload = json!({
            "alternating_generators": gens.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "eta": (1..=7).map(|i| (1..=7).map(|j| net.entry(i, j).to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "eta_numeric": skew_net::Y_VARS.iter().zip(net.matrices().iter()).map(|(v, m)| json!({
                "variable": v,
                "matrix": m.iter().map(|row| row.iter().map(fmt_rational).collect::<Vec<_>>()).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "pfaffians": pf.iter().map(|p| p.primitive().to_string()).collect::<Vec<_>>(),
            "quartic": {
                "apolar": f.to_string(),
                "transported": transported.to_string(),
                "printed": printed_f,
                "proportional_to_printed": agrees,
                "double_smooth_conic": double,
            },
            "notes": notes,
        });
        Ok(c.finish(payload))
    }

    fn variety(&self) -> Res<StageReport> {
        let mut c = Checks::default();
        let fx = self.fixtures.get("v12");
        let net = self.net()?;
        let atlas = self.atlas()?;
        let v12 = Chart::new(ChartLabel::P12);
        let ours = chart_equations(&v12, net)?;
        let mut printed = Vec::new();
        for key in fx.indexed("v12") {
            match fx.poly(&key, v12.ring()) {
                Ok(p) => {
                    c.check(ours.contains(&p), Some("v12"), || {
                        fx.error(&key, "not in the ideal of the chart").to_string()
                    });
                    printed.push(p);
                }
                Err(e) => c.fixture_err(e),
            }
        }
        let theirs = Ideal::new(v12.ring(), printed)?;
        c.check(theirs.equals(&ours), Some("v12"), || {
            "v12.txt: printed equations generate a smaller ideal than the chart".into()
        });

        let mut charts = Vec::new();
        for &l in &self.charts {
            let p = atlas.chart(l);
            let transitions: Vec<Value> = ChartLabel::ALL
                .iter()
                .filter(|&&m| m != l)
                .map(|&m| {
                    let Ok(t) = transition(p, atlas.chart(m)) else {
                        return Ok(json!({ "to": m.name(), "overlap": false }));
                    };
                    let (dt, k) = t.substitute(&t.d, p)?;
                    let inverse = atlas.chart(m).residual().contains(&(&dt - &t.e.pow(k - 1)));
                    c.check(inverse, None, || format!("transition {l} -> {m}: d(alpha/e) != 1/e"));
                    Ok(json!({ "to": m.name(), "overlap": true, "determinant": t.d.to_string() }))
                })
                .collect::<Res<_>>()?;
            charts.push(json!({
                "chart": l.name(),
                "pinned_columns": l.pinned(),
                "free": p.free(),
                "weights": p.weights().weights(),
                "residual": p.residual().gens().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                "coordinates": p.images().iter().enumerate().map(|(k, f)| {
                    json!({ "name": format!("{}{}", l.prefix(), k + 1), "value": f.to_string() })
                }).collect::<Vec<_>>(),
                "transitions": transitions,
            }));
        }

        let p12 = atlas.chart(ChartLabel::P12);
        let points = [[int(0), int(0), int(0)], [int(1), int(0), int(0)], [int(0), int(1), int(0)], [int(0), int(0), int(1)], [rat(1, 2), int(-3), rat(2, 3)], [int(2), rat(-1, 5), int(7)]];
        let mut hilbert = Vec::new();
        for pt in &points {
            let i = saturate_irrelevant(&cubic_at(p12, pt)?)?;
            let h = hilbert_polynomial(&i.groebner()).to_string();
            c.check(h == "3*m + 1", None, || format!("cubic at {pt:?} has Hilbert polynomial {h}"));
            hilbert.push(json!({ "point": pt.iter().map(fmt_rational).collect::<Vec<_>>(), "hilbert_polynomial": h }));
        }

        let rows = universal_cubic(p12)?;
        let minors_match = match printed_minors(fx, &rows, p12) {
            Ok(m) => {
                let a = saturate_by_variables(&rows, &U_VARS)?;
                let b = saturate_by_variables(&m, &U_VARS)?;
                let ok = a.equals(&b);
                c.check(ok, Some("v12"), || "v12.txt: minors of cubic.row1..3 differ from the universal cubic".into());
                ok
            }
            Err(e) => {
                c.fixture_err(e);
                false
            }
        };

        let payload = json!({
            "v12_equations": ours.gens().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "charts": charts,
            "universal_cubic": {
                "quadrics": rows.gens().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                "matches_printed_minors": minors_match,
                "samples": hilbert,
            },
        });
        Ok(c.finish(payload))
    }

    fn curves(&self) -> Res<StageReport> {
        let mut c = Checks::default();
        let net = self.net()?;
        let atlas = self.atlas()?;
        let fx = self.fixtures.get("curves");
        let mut curves = Vec::new();
        for name in fx.heads() {
            match parametric(fx, &name) {
                Ok((curve, at, degree)) => {
                    let defects = curve.isotropy_defects(net);
                    c.check(defects.is_empty(), Some("curves"), || {
                        fx.error(&format!("{name}.row1"), format!("{} isotropy defects", defects.len())).to_string()
                    });
                    let curve = match &at {
                        Some((v, x)) => curve.specialize(v, x)?,
                        None => curve,
                    };
                    let d = curve.plucker_degree().ok();
                    if let Some(want) = degree {
                        c.check(d == Some(want), Some("curves"), || {
                            let got = d.map_or("no degree".to_string(), |d| d.to_string());
                            fx.error(&format!("{name}.degree"), format!("fixture has {want}, computed {got}")).to_string()
                        });
                    }
                    curves.push(json!({
                        "name": name,
                        "isotropic": defects.is_empty(),
                        "specialized": at.as_ref().map(|(v, x)| format!("{v} = {}", fmt_rational(x))),
                        "degree": d,
                        "parameter_weight": curve.parameter_weight().ok().map(|w| fmt_rational(&w)),
                    }));
                }
                Err(e) => c.fixture_err(e),
            }
        }

        let cat = self.catalog()?;
        let count = |s: HilbertScheme| cat.iter().filter(|r| r.scheme == s).count();
        c.check(count(HilbertScheme::H3) == 4, None, || format!("{} H3 fixed records", count(HilbertScheme::H3)));
        c.check(count(HilbertScheme::H4) == 6, None, || format!("{} H4 fixed records", count(HilbertScheme::H4)));
        for r in cat {
            let m = r.mirror(atlas)?;
            let mut found = false;
            for s in cat.iter().filter(|s| s.scheme == m.scheme && s.cover() == m.cover()) {
                let mut same = true;
                for (a, b) in s.locals.iter().zip(&m.locals) {
                    same &= a.ideal(atlas)?.equals(&b.ideal(atlas)?);
                }
                found |= same;
            }
            c.check(found, None, || format!("mirror of {} missing from the catalog", r.id));
        }

        let ideals = self.fixtures.get("ideals");
        for e in &ideals.entries {
            let parts: Vec<&str> = e.key.split('.').collect();
            let (id, chart) = (parts[0], parts.get(1).copied().unwrap_or(""));
            let Ok(label) = chart.parse::<ChartLabel>() else {
                c.fixture_err(ideals.error(&e.key, format!("unknown chart `{chart}`")));
                continue;
            };
            let Some(local) = cat.iter().find(|r| r.id == id).and_then(|r| r.local(label)) else {
                c.fixture_err(ideals.error(&e.key, "no such record on that chart"));
                continue;
            };
            let p = atlas.chart(label);
            match ideals.poly_list(&e.key, p.chart().ring()) {
                Ok(gens) => {
                    let mut pulled = gens.iter().map(|g| p.pull(g)).collect::<Res<Vec<_>>>()?;
                    pulled.extend(p.residual().gens().iter().cloned());
                    let ok = Ideal::new(p.ring(), pulled)?.equals(&local.ideal(atlas)?);
                    c.check(ok, Some("ideals"), || ideals.error(&e.key, "differs from the computed curve ideal").to_string());
                }
                Err(err) => c.fixture_err(err),
            }
        }

        let records = cat
            .iter()
            .map(|r| {
                let locals = r
                    .locals
                    .iter()
                    .map(|l| {
                        Ok(json!({
                            "chart": l.chart.name(),
                            "generators": l.gens.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                            "weights": l.weights(atlas)?,
                        }))
                    })
                    .collect::<Res<Vec<_>>>()?;
                Ok(json!({
                    "id": r.id,
                    "name": r.name,
                    "scheme": r.scheme.to_string(),
                    "degree": r.scheme.degree(),
                    "hilbert_polynomial": format!("{}*m + 1", r.scheme.degree()),
                    "home": r.home.name(),
                    "locals": locals,
                }))
            })
            .collect::<Res<Vec<_>>>()?;
        let payload = json!({
            "parametric": curves,
            "h3_fixed_count": count(HilbertScheme::H3),
            "h4_fixed_count": count(HilbertScheme::H4),
            "records": records,
        });
        Ok(c.finish(payload))
    }

    fn deform(&self) -> Res<StageReport> {
        let mut c = Checks::default();
        let atlas = self.atlas()?;
        let cat = self.catalog()?;
        let weights_fx = self.fixtures.get("weights");
        let reports: Vec<TangentReport> = cat
            .par_iter()
            .map(|r| glue_tangent(atlas, r))
            .collect::<Res<_>>()?;
        let mut records = Vec::new();
        for (r, t) in cat.iter().zip(&reports) {
            let (base, sign) = match r.id.strip_suffix("_mirror") {
                Some(b) => (b, -1),
                None => (r.id.as_str(), 1),
            };
            let printed = match weights_fx.int_list(base) {
                Ok(w) => Some(w.iter().map(|x| sign * x).collect::<Vec<i64>>()),
                Err(e) => {
                    c.fixture_err(e);
                    None
                }
            };
            if let Some(p) = &printed {
                let ok = sorted(p) == sorted(&t.weights);
                c.check(ok, Some("weights"), || {
                    weights_fx
                        .error(base, format!("{}: fixture gives {:?}, computed {:?}", r.id, p, t.weights))
                        .to_string()
                });
            }
            c.check(t.dimension == r.scheme.dimension(), None, || {
                format!("{}: tangent dimension {} in {}", r.id, t.dimension, r.scheme)
            });
            c.check(!t.has_zero_weight(), None, || format!("{}: zero tangent weight", r.id));
            c.check(!t.at_boundary, None, || format!("{}: weight range {:?} too small", r.id, WEIGHT_RANGE));
            records.push(json!({
                "id": r.id,
                "scheme": r.scheme.to_string(),
                "dimension": t.dimension,
                "weights": t.weights,
                "printed_weights": printed,
                "negative_count": t.negative_count(),
                "cover": t.cover.iter().map(|l| l.name()).collect::<Vec<_>>(),
                "overlaps": t.overlaps.iter().map(|(a, b)| [a.name(), b.name()]).collect::<Vec<_>>(),
                "pieces": t.pieces.iter().map(|p| json!({
                    "weight": p.weight,
                    "dimension": p.dimension,
                    "local_dimensions": p.local_dimensions.iter().map(|(l, d)| json!({ "chart": l.name(), "dimension": d })).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
            }));
        }

        let (columns, notes) = self.hom_columns(&mut c)?;
        let payload = json!({
            "weight_range": [WEIGHT_RANGE.start(), WEIGHT_RANGE.end()],
            "records": records,
            "hom_columns": columns,
            "notes": notes,
        });
        Ok(c.finish(payload))
    }

    fn hom_columns(&self, c: &mut Checks) -> Res<(Vec<Value>, Vec<String>)> {
        let atlas = self.atlas()?;
        let fx = self.fixtures.get("hom");
        let mut out = Vec::new();
        let mut notes = Vec::new();
        for e in fx.entries.iter().filter(|e| e.key.ends_with(".gens")) {
            let stem = e.key.trim_end_matches(".gens");
            let chart = stem.split('.').nth(1).unwrap_or("");
            let Ok(label) = chart.parse::<ChartLabel>() else {
                c.fixture_err(fx.error(&e.key, format!("unknown chart `{chart}`")));
                continue;
            };
            let p = atlas.chart(label);
            let pull = |v: Vec<MultiPoly>| v.iter().map(|g| p.pull(g)).collect::<Res<Vec<_>>>();
            let gens = match fx.poly_list(&e.key, p.chart().ring()) {
                Ok(g) => pull(g)?,
                Err(err) => {
                    c.fixture_err(err);
                    continue;
                }
            };
            for set in ["local", "global"] {
                let prefix = format!("{stem}.{set}");
                let mut weights = Vec::new();
                for key in fx.indexed(&prefix) {
                    let col = match fx.poly_list(&key, p.chart().ring()) {
                        Ok(col) => pull(col)?,
                        Err(err) => {
                            c.fixture_err(err);
                            continue;
                        }
                    };
                    let is_hom = verify_hom(&col, &gens, p.residual()).unwrap_or(false);
                    c.check(is_hom, Some("hom"), || fx.error(&key, "not a homomorphism").to_string());
                    let w = hom_weight(&col, &gens, p.weights()).ok();
                    c.check(w.is_some(), Some("hom"), || fx.error(&key, "column is not weight-homogeneous").to_string());
                    weights.push(w);
                    out.push(json!({
                        "key": key,
                        "chart": label.name(),
                        "column": col.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                        "is_hom": is_hom,
                        "weight": w,
                    }));
                }
                let wkey = format!("{prefix}.weights");
                if fx.get(&wkey).is_some() {
                    match fx.int_list(&wkey) {
                        Ok(want) => {
                            let got: Vec<i64> = weights.iter().map(|w| w.unwrap_or(i64::MIN)).collect();
                            c.check(got == want, Some("hom"), || {
                                fx.error(&wkey, format!("fixture has {want:?}, computed {got:?}")).to_string()
                            });
                        }
                        Err(err) => c.fixture_err(err),
                    }
                }
                if stem == "triple_line.p12" && set == "global" && !weights.is_empty() {
                    let got: Vec<i64> = weights.iter().flatten().copied().collect();
                    notes.push(format!(
                        "triple_line global columns have weights {got:?}; the printed text lists 4, 8, 6 for them"
                    ));
                }
            }
        }
        Ok((out, notes))
    }

    fn poincare(&self, deform: &StageReport) -> Res<StageReport> {
        let mut c = Checks::default();
        let fx = self.fixtures.get("weights");
        let records = deform.payload["records"]
            .as_array()
            .ok_or_else(|| mu_core::Error::Invalid("deform payload has no records".into()))?;
        let mut cells = Vec::new();
        let mut per = Vec::new();
        for scheme in [HilbertScheme::H3, HilbertScheme::H4] {
            let fixed: Vec<FixedPointRecord> = records
                .iter()
                .filter(|r| r["scheme"] == scheme.to_string())
                .map(|r| {
                    let w = r["weights"].as_array().map(|a| a.iter().filter_map(Value::as_i64).collect()).unwrap_or_default();
                    FixedPointRecord::new(r["id"].as_str().unwrap_or(""), w)
                })
                .collect();
            for f in &fixed {
                cells.push(json!({ "id": f.label, "scheme": scheme.to_string(), "cell_dimension": f.negative_count() }));
            }
            let p = assemble(&fixed)?;
            let key = scheme.to_string();
            match fx.require(&key) {
                Ok(e) => c.check(e.value == p.to_string(), Some("weights"), || {
                    fx.error(&key, format!("fixture has {}, assembled {p}", e.value)).to_string()
                }),
                Err(e) => c.fixture_err(e),
            }
            let smooth = smoothness_audit(&fixed, scheme.dimension());
            let mirror = is_mirror_closed(&fixed);
            c.check(smooth, None, || format!("{scheme}: smoothness audit failed"));
            c.check(mirror, None, || format!("{scheme}: fixed points not closed under the mirror"));
            c.check(p.is_palindromic(), None, || format!("{scheme}: {p} is not palindromic"));
            per.push((scheme, p, smooth, mirror));
        }
        let [(_, h3, s3, m3), (_, h4, s4, m4)] = <[_; 2]>::try_from(per).expect("two schemes");
        let payload = json!({
            "convention": "exponent of p is the number of negative tangent weights",
            "h3": h3.to_string(),
            "h3_coefficients": h3.coefficients(),
            "h4": h4.to_string(),
            "h4_coefficients": h4.coefficients(),
            "palindromic": h3.is_palindromic() && h4.is_palindromic(),
            "smooth": s3 && s4,
            "mirror_closed": m3 && m4,
            "cells": cells,
        });
        Ok(c.finish(payload))
    }
}

fn is_upper_key(key: &str) -> bool {
    let Some(inner) = key.strip_prefix("eta[").and_then(|k| k.strip_suffix(']')) else {
        return false;
    };
    let Some((i, j)) = inner.split_once(',') else {
        return false;
    };
    matches!((i.trim().parse::<usize>(), j.trim().parse::<usize>()), (Ok(i), Ok(j)) if 1 <= i && i < j && j <= 7)
}

fn proportional(a: &MultiPoly, b: &MultiPoly) -> bool {
    match (a.leading_coeff(), b.leading_coeff()) {
        (Some(ca), Some(cb)) => a.scale(cb) == b.scale(ca),
        (None, None) => true,
        _ => false,
    }
}

fn sorted(w: &[i64]) -> Vec<i64> {
    let mut w = w.to_vec();
    w.sort_unstable();
    w
}

fn printed_minors(
    fx: &crate::fixtures::Fixture,
    rows: &Ideal,
    p12: &mu_core::geometry::ChartPresentation,
) -> Result<Ideal, FixtureError> {
    let r = rows.ring().clone();
    let mut vars: Vec<String> = r.vars().to_vec();
    vars.push("a12".into());
    let ext = PolyRing::grevlex(&vars);
    let a12 = p12.image(11).map_into(&r).map_err(|e| fx.error("cubic.row3", e.to_string()))?;
    let mut images: Vec<MultiPoly> = (0..r.nvars()).map(|i| r.var_at(i)).collect();
    images.push(a12);
    let mut m: Vec<[MultiPoly; 2]> = Vec::new();
    for k in 1..=3 {
        let key = format!("cubic.row{k}");
        let row = fx.poly_list(&key, &ext)?;
        let [x, y]: [MultiPoly; 2] = row
            .try_into()
            .map_err(|_| fx.error(&key, "expected two entries"))?;
        m.push([x.compose(&images, &r), y.compose(&images, &r)]);
    }
    let m: [[MultiPoly; 2]; 3] = m.try_into().expect("three rows");
    let minors = mu_core::geometry::curves::minors_3x2(&m);
    Ideal::new(&r, minors.to_vec()).map_err(|e| fx.error("cubic.row1", e.to_string()))
}

type Parsed = (ParametricCurve, Option<(String, Rational)>, Option<u32>);

fn parametric(fx: &crate::fixtures::Fixture, name: &str) -> Result<Parsed, FixtureError> {
    let vars = fx.str_list(&format!("{name}.vars"))?;
    let ring = PolyRing::new(&vars, mu_core::MonomialOrder::GrevLex)
        .map_err(|e| fx.error(&format!("{name}.vars"), e.to_string()))?;
    let mut rows = Vec::new();
    for k in 1..=3 {
        let key = format!("{name}.row{k}");
        let row = fx.poly_list(&key, &ring)?;
        if row.len() != 7 {
            return Err(fx.error(&key, format!("expected 7 entries, found {}", row.len())));
        }
        rows.push(row);
    }
    let curve = ParametricCurve::new(&ring, rows).map_err(|e| fx.error(&format!("{name}.row1"), e.to_string()))?;
    let at_key = format!("{name}.at");
    let at = match fx.get(&at_key) {
        Some(_) => Some(fx.assignment(&at_key)?),
        None => None,
    };
    let deg_key = format!("{name}.degree");
    let degree = match fx.get(&deg_key) {
        Some(_) => {
            let d = fx.int_list(&deg_key)?;
            match d.as_slice() {
                [d] if *d >= 0 => Some(*d as u32),
                _ => return Err(fx.error(&deg_key, "expected one nonnegative integer")),
            }
        }
        None => None,
    };
    Ok((curve, at, degree))
}
