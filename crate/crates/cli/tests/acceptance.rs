//! One line per acceptance criterion. Criteria listed in `KNOWN_FAILURES`
//! must still fail; every other one must pass.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;

use mu_core::bb::{assemble, is_mirror_closed, FixedPointRecord};
use mu_core::deformation::glue_tangent;
use mu_core::geometry::curves::{minors_3x2, ParametricCurve};
use mu_core::geometry::{
    chart_equations, chart_presentation, cubic_at, fixed_curve_catalog, universal_cubic, Atlas,
    Chart, ChartLabel, HilbertScheme, U_VARS,
};
use mu_core::groebner::{
    hilbert_polynomial, saturate_by_variables, saturate_irrelevant, syzygies, Ideal,
};
use mu_core::linalg::{determinant, mat_mul, mat_sub, proportionality, Matrix};
use mu_core::rational::{int, rat};
use mu_core::skew_net::{self, SkewNet};
use mu_core::sl2::{self, DualConvention, Pairing, RepSpace};
use mu_core::{MultiPoly, PolyRing, Rational};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;

const KNOWN_FAILURES: [u32; 1] = [4];

type Outcome = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

const ETA: [[&str; 7]; 7] = [
    ["0", "0", "0", "0", "0", "-3/5*y2", "-9/5*y0"],
    ["0", "0", "0", "0", "y2", "1/5*y0", "-3/5*y_m2"],
    ["0", "0", "0", "-6*y2", "-y0", "y_m2", "0"],
    ["0", "0", "6*y2", "0", "-6*y_m2", "0", "0"],
    ["0", "-y2", "y0", "6*y_m2", "0", "0", "0"],
    ["3/5*y2", "-1/5*y0", "-y_m2", "0", "0", "0", "0"],
    ["9/5*y0", "3/5*y_m2", "0", "0", "0", "0", "0"],
];

const PFAFFIANS: [&str; 7] = [
    "y2^3",
    "y2^2*y0",
    "y2*y0^2 + y2^2*y_m2",
    "y0^3 + 6*y2*y0*y_m2",
    "y0^2*y_m2 + y2*y_m2^2",
    "y0*y_m2^2",
    "y_m2^3",
];

const V12: [&str; 9] = [
    "5*a2 + 3*a7",
    "a3 + 9*a8",
    "2*a2*a5 - 2*a1*a6 + a4/5",
    "10*a1 - a11",
    "5*a2 - 9*a12",
    "6*a2*a9 - 6*a1*a10 - a3",
    "6*a5 + a10",
    "5*a6 + a11",
    "2*a6*a9 - 2*a5*a10 - a7/3 - a12/5",
];

fn printed_eta() -> SkewNet {
    let r = skew_net::y_ring();
    let m: Vec<Vec<MultiPoly>> = ETA
        .iter()
        .map(|row| row.iter().map(|s| r.parse(s).unwrap()).collect())
        .collect();
    SkewNet::from_symbolic(&m).unwrap()
}

fn curve(vars: &[&str], rows: &[[&str; 7]; 3]) -> ParametricCurve {
    ParametricCurve::parse(&PolyRing::grevlex(vars), rows).unwrap()
}

fn u6_derivation() -> Outcome {
    let orbit = sl2::u6_orbit();
    ensure(orbit.len() == 7, || format!("orbit has {} vectors", orbit.len()))?;
    let s = orbit[0].space().clone();
    let r = sl2::base_ring(&s).map_err(|e| e.to_string())?;
    for (i, t) in sl2::U6_BASIS.iter().enumerate() {
        let p = sl2::poly_to_sym2(&s, &r.parse(t).unwrap()).unwrap();
        ensure(proportionality(orbit[i].coords(), p.coords()).is_some(), || {
            format!("orbit vector {} is not proportional to {t}", i + 1)
        })?;
    }
    Ok(())
}

fn apolarity() -> Outcome {
    let q = sl2::net_q(DualConvention::Transpose);
    let ann = sl2::apolar_annihilator(&q, &sl2::sym2(&sl2::w3()), Pairing::Polar)
        .map_err(|e| e.to_string())?;
    ensure(ann.len() == 7, || format!("annihilator has dimension {}", ann.len()))?;
    ensure(sl2::same_span(&ann, &sl2::u6_orbit()), || "annihilator differs from U6".into())
}

fn net_and_eta() -> Outcome {
    let (x, gens) = sl2::alternating_net(DualConvention::Transpose).map_err(|e| e.to_string())?;
    let v = |terms: &[(&str, Rational)]| x.vector_from_labels(terms).unwrap();
    let printed = vec![
        v(&[("ws4^ws_m6", rat(-3, 5)), ("ws2^ws_m4", int(1)), ("ws0^ws_m2", int(-6))]),
        v(&[("ws4^ws_m4", rat(1, 5)), ("ws6^ws_m6", rat(-9, 5)), ("ws2^ws_m2", int(-1))]),
        v(&[("ws4^ws_m2", int(1)), ("ws6^ws_m4", rat(-3, 5)), ("ws2^ws0", int(-6))]),
    ];
    ensure(gens == printed, || "alternating generators differ".into())?;
    let eta = skew_net::net_from_forms(&gens).map_err(|e| e.to_string())?;
    let diff = eta.differences(&printed_eta());
    ensure(diff.is_empty(), || format!("{} entries of eta differ", diff.len()))
}

fn pfaffians() -> Outcome {
    let r = skew_net::y_ring();
    let pf = skew_net::principal_pfaffians(&printed_eta()).map_err(|e| e.to_string())?;
    let printed: Vec<MultiPoly> = PFAFFIANS.iter().map(|s| r.parse(s).unwrap()).collect();
    let same = Ideal::new(&r, pf.clone()).unwrap().equals(&Ideal::new(&r, printed).unwrap());
    ensure(same, || "Pfaffian ideal differs from the printed cubics".into())?;
    let f = skew_net::apolar_quartic(&pf).map_err(|e| e.to_string())?;
    let want = r.parse("(y2*y_m2 + 1/4*y0^2)^2").unwrap();
    let (x, gens) = sl2::alternating_net(DualConvention::Transpose).unwrap();
    let n = x
        .restrict(
            &[gens[2].clone(), gens[1].clone(), gens[0].clone()],
            vec!["n2".into(), "n0".into(), "n_m2".into()],
        )
        .unwrap();
    let b = skew_net::invariant_form(&n).map_err(|e| e.to_string())?;
    let t = skew_net::equivariant_transport(&f, &b).map_err(|e| e.to_string())?;
    let lc = |p: &MultiPoly| p.leading_coeff().cloned().unwrap_or_else(|| int(0));
    ensure(t.scale(&lc(&want)) == want.scale(&lc(&t)), || {
        format!("apolar quartic is {t} in y, not proportional to {want}")
    })
}

fn chart_equations_v12() -> Outcome {
    let net = skew_net::threefold_net().map_err(|e| e.to_string())?;
    let c = Chart::new(ChartLabel::P12);
    let ours = chart_equations(&c, &net).map_err(|e| e.to_string())?;
    let printed = Ideal::parse(c.ring(), &V12).unwrap();
    ensure(ours.equals(&printed), || "chart ideal differs from the nine equations".into())?;
    let p = chart_presentation(ChartLabel::P12, &net).map_err(|e| e.to_string())?;
    ensure(p.free().len() == 3 && p.residual().gens().is_empty(), || {
        format!("chart is not affine 3-space: free {:?}", p.free())
    })
}

fn universal_cubics() -> Outcome {
    let net = skew_net::threefold_net().map_err(|e| e.to_string())?;
    let v12 = chart_presentation(ChartLabel::P12, &net).map_err(|e| e.to_string())?;
    let points = [
        [int(0), int(0), int(0)],
        [int(1), int(-2), int(3)],
        [rat(1, 2), int(5), rat(-2, 7)],
        [int(-4), rat(3, 5), int(1)],
        [rat(7, 3), rat(-1, 9), rat(5, 2)],
    ];
    for pt in &points {
        let i = saturate_irrelevant(&cubic_at(&v12, pt).unwrap()).unwrap();
        let h = hilbert_polynomial(&i.groebner()).to_string();
        ensure(h == "3*m + 1", || format!("Hilbert polynomial {h} at {pt:?}"))?;
    }
    let rows = universal_cubic(&v12).map_err(|e| e.to_string())?;
    let r = rows.ring().clone();
    let a12 = v12.image(11).map_into(&r).unwrap();
    let p = |s: &str| r.parse(s).unwrap();
    let m = [
        [p("6*u1 - a10*u_m3"), p("12*u_m1 + 6*a9*u_m3")],
        [p("-2*u3 - 3*a10*u_m1 - a11*u_m3"), p("6*u1 + 18*a9*u_m1 + 5*a10*u_m3")],
        [&p("-3*a11*u_m1") - &(&p("12*u_m3") * &a12), p("-10*u3 + 15*a10*u_m1 + 4*a11*u_m3")],
    ];
    let minors = Ideal::new(&r, minors_3x2(&m).to_vec()).unwrap();
    let a = saturate_by_variables(&rows, &U_VARS).unwrap();
    let b = saturate_by_variables(&minors, &U_VARS).unwrap();
    ensure(a.equals(&b), || "saturated universal cubic differs from the minor ideal".into())
}

fn curve_degrees() -> Outcome {
    let net = skew_net::threefold_net().map_err(|e| e.to_string())?;
    let quartic = curve(
        &["t"],
        &[
            ["-4", "0", "0", "-t", "0", "0", "5*t^2"],
            ["0", "-4", "0", "0", "2*t", "0", "0"],
            ["0", "0", "-4", "0", "0", "-10*t", "0"],
        ],
    );
    let conic = curve(
        &["s", "t"],
        &[
            ["s", "0", "0", "0", "0", "-9*t", "0"],
            ["0", "s", "0", "0", "0", "0", "t"],
            ["0", "0", "0", "1", "0", "0", "0"],
        ],
    );
    let sextic = curve(
        &["s"],
        &[
            ["1", "0", "2*s", "0", "-5/3*s^2", "0", "0"],
            ["0", "1", "0", "1/9*s", "0", "5/9*s^2", "0"],
            ["0", "0", "-27/5", "0", "18/5*s", "0", "s^2"],
        ],
    );
    let l1 = curve(
        &["a", "t"],
        &[
            ["a", "0", "0", "-3/5*t^2", "9/5*t", "-18/5", "0"],
            ["-2/3*a*t", "a", "0", "0", "0", "-3/5*t", "2/5"],
            ["0", "-2*a*t^2", "a*t", "-1/3*a", "0", "0", "1/5*t^2"],
        ],
    );
    for (name, c) in [("quartic", &quartic), ("conic", &conic), ("sextic", &sextic), ("l1", &l1)] {
        ensure(c.isotropy_defects(&net).is_empty(), || format!("{name} is not isotropic"))?;
    }
    let cases = [
        ("quartic", quartic, 4),
        ("conic", conic.specialize("s", &int(1)).unwrap(), 2),
        ("sextic", sextic, 6),
        ("l1 at a = 0", l1.specialize("a", &int(0)).unwrap(), 1),
    ];
    for (name, c, want) in cases {
        let d = c.plucker_degree().map_err(|e| e.to_string())?;
        ensure(d == want, || format!("{name} has degree {d}, expected {want}"))?;
    }
    Ok(())
}

fn tangent_records() -> Result<Vec<(HilbertScheme, String, Vec<i64>)>, String> {
    let a = Atlas::new(&skew_net::threefold_net().unwrap()).map_err(|e| e.to_string())?;
    let cat = fixed_curve_catalog(&a).map_err(|e| e.to_string())?;
    cat.iter()
        .map(|r| {
            let t = glue_tangent(&a, r).map_err(|e| e.to_string())?;
            ensure(t.dimension == r.scheme.dimension(), || format!("{}: dimension {}", r.id, t.dimension))?;
            ensure(!t.has_zero_weight(), || format!("{}: zero weight", r.id))?;
            Ok((r.scheme, r.id.clone(), t.weights))
        })
        .collect()
}

fn tangent_weights(recs: &[(HilbertScheme, String, Vec<i64>)]) -> Outcome {
    let printed: [(&str, &[i64]); 6] = [
        ("triple_line", &[6, 4, 2]),
        ("line_conic", &[4, 2, -2]),
        ("mult4_line", &[6, 4, 4, 2]),
        ("double_line_conic", &[6, 2, 2, -2]),
        ("quartic", &[4, 2, -2, -4]),
        ("two_lines_conic", &[4, 2, -2, -4]),
    ];
    ensure(recs.len() == 10, || format!("{} fixed records", recs.len()))?;
    for (id, want) in printed {
        let (_, _, w) = recs.iter().find(|(_, i, _)| i == id).ok_or(format!("no record {id}"))?;
        let mut got = w.clone();
        got.sort_unstable_by(|a, b| b.cmp(a));
        if id == "double_line_conic" {
            let neg = got.iter().filter(|&&x| x < 0).count();
            ensure(neg == 1, || format!("{id}: {neg} negative weights"))?;
        }
        ensure(got == want, || format!("{id}: computed {got:?}, printed {want:?}"))?;
    }
    Ok(())
}

fn poincare(recs: &[(HilbertScheme, String, Vec<i64>)]) -> Outcome {
    for (scheme, want) in [
        (HilbertScheme::H3, "1 + p + p^2 + p^3"),
        (HilbertScheme::H4, "1 + p + 2p^2 + p^3 + p^4"),
    ] {
        let fixed: Vec<FixedPointRecord> = recs
            .iter()
            .filter(|(s, _, _)| *s == scheme)
            .map(|(_, id, w)| FixedPointRecord::new(id.clone(), w.clone()))
            .collect();
        let p = assemble(&fixed).map_err(|e| e.to_string())?.to_string();
        ensure(p == want, || format!("P({scheme}) = {p}"))?;
    }
    Ok(())
}

fn bracket(v: &RepSpace) -> bool {
    mat_sub(&mat_mul(v.e(), v.f()), &mat_mul(v.f(), v.e())) == v.h()
}

fn properties(recs: &[(HilbertScheme, String, Vec<i64>)]) -> Outcome {
    let net = skew_net::threefold_net().unwrap();
    let atlas = Atlas::new(&net).unwrap();
    let mut ideals = vec![
        skew_net::principal_pfaffian_ideal(&net).unwrap(),
        chart_equations(&Chart::new(ChartLabel::P12), &net).unwrap(),
    ];
    for p in atlas.charts() {
        ideals.push(universal_cubic(p).unwrap());
    }
    for r in fixed_curve_catalog(&atlas).unwrap() {
        for l in &r.locals {
            ideals.push(l.ideal(&atlas).unwrap());
        }
    }
    for i in &ideals {
        let gb = i.groebner();
        ensure(gb.s_pairs_reduce_to_zero(), || format!("S-pairs do not vanish for {i}"))?;
        for s in syzygies(i.gens()) {
            ensure(s.dot(i.gens()).is_zero(), || format!("syzygy does not annihilate {i}"))?;
        }
    }

    let mut runner = TestRunner::deterministic();
    let entries = proptest::collection::vec(-7i64..=7, 15);
    let one = PolyRing::grevlex(&["x"]);
    for _ in 0..20 {
        let v = entries.new_tree(&mut runner).unwrap().current();
        let mut m: Matrix = vec![vec![int(0); 6]; 6];
        let mut k = 0;
        for i in 0..6 {
            for j in i + 1..6 {
                m[i][j] = int(v[k]);
                m[j][i] = int(-v[k]);
                k += 1;
            }
        }
        let pm: Vec<Vec<MultiPoly>> = m.iter().map(|r| r.iter().map(|c| one.constant(c.clone())).collect()).collect();
        let pf = skew_net::pfaffian(&pm).unwrap();
        let pf = pf.leading_coeff().cloned().unwrap_or_else(|| int(0));
        ensure(&pf * &pf == determinant(&m), || format!("pf^2 != det for {v:?}"))?;
    }

    let (x, _) = sl2::alternating_net(DualConvention::Transpose).unwrap();
    let mut spaces = vec![sl2::w3(), sl2::sym2(&sl2::w3()), sl2::u6_module().unwrap(), x];
    for d in 0..=4 {
        let s = sl2::sym_power_std(d);
        spaces.push(sl2::dual(&s, DualConvention::Transpose));
        spaces.push(sl2::dual(&s, DualConvention::Contragredient));
        spaces.push(sl2::wedge2(&s));
        spaces.push(sl2::tensor(&s, &sl2::w3()));
        spaces.push(s);
    }
    ensure(spaces.iter().all(bracket), || "[e,f] != h on a constructed module".into())?;

    for scheme in [HilbertScheme::H3, HilbertScheme::H4] {
        let fixed: Vec<FixedPointRecord> = recs
            .iter()
            .filter(|(s, _, _)| *s == scheme)
            .map(|(_, id, w)| FixedPointRecord::new(id.clone(), w.clone()))
            .collect();
        ensure(is_mirror_closed(&fixed), || format!("{scheme} is not mirror-closed"))?;
        ensure(assemble(&fixed).unwrap().is_palindromic(), || format!("P({scheme}) is not palindromic"))?;
    }

    let bin = env!("CARGO_BIN_EXE_mu-curves");
    let runs: Vec<Vec<u8>> = (0..2)
        .map(|_| {
            Command::new(bin)
                .args(["run", "--stages", "all", "--no-cache"])
                .output()
                .map(|o| o.stdout)
                .map_err(|e| e.to_string())
        })
        .collect::<Result<_, _>>()?;
    ensure(!runs[0].is_empty() && runs[0] == runs[1], || "pipeline reports differ between runs".into())
}

fn guarded(f: impl FnOnce() -> Outcome) -> Outcome {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    })
}

#[test]
fn acceptance() {
    let mut records = Vec::new();
    let recs = guarded(|| tangent_records().map(|r| records = r));
    let results: Vec<(u32, &str, Outcome)> = vec![
        (1, "U6 derivation", guarded(u6_derivation)),
        (2, "apolarity", guarded(apolarity)),
        (3, "net and eta", guarded(net_and_eta)),
        (4, "Pfaffians and apolar quartic", guarded(pfaffians)),
        (5, "chart equations", guarded(chart_equations_v12)),
        (6, "universal cubics", guarded(universal_cubics)),
        (7, "fixed curve degrees", guarded(curve_degrees)),
        (8, "tangent weights", recs.and_then(|_| guarded(|| tangent_weights(&records)))),
        (9, "Poincare polynomials", guarded(|| poincare(&records))),
        (10, "property suites", guarded(|| properties(&records))),
    ];
    let mut unexpected = Vec::new();
    for (n, name, r) in &results {
        match r {
            Ok(()) => println!("criterion {n:>2} {name}: PASS"),
            Err(e) => println!("criterion {n:>2} {name}: FAIL ({e})"),
        }
        if r.is_ok() == KNOWN_FAILURES.contains(n) {
            unexpected.push(*n);
        }
    }
    assert!(unexpected.is_empty(), "criteria with unexpected outcome: {unexpected:?}");
}
