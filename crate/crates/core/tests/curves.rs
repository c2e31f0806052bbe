use mu_core::geometry::curves::{minors_3x2, ParametricCurve};
use mu_core::geometry::{chart_presentation, cubic_at, universal_cubic, ChartLabel, U_VARS};
use mu_core::groebner::{hilbert_polynomial, saturate_by_variables, saturate_irrelevant, Ideal};
use mu_core::rational::{int, rat};
use mu_core::skew_net::threefold_net;
use mu_core::{PolyRing, Rational};
use proptest::prelude::*;

const L1_FAMILY: [[&str; 7]; 3] = [
    ["a", "0", "0", "-3/5*t^2", "9/5*t", "-18/5", "0"],
    ["-2/3*a*t", "a", "0", "0", "0", "-3/5*t", "2/5"],
    ["0", "-2*a*t^2", "a*t", "-1/3*a", "0", "0", "1/5*t^2"],
];

const L3_FAMILY: [[&str; 7]; 3] = [
    ["a", "0", "0", "0", "-1/3*t^2*a", "10/27", "10/27*t^3*a"],
    ["0", "a", "0", "1/9*t*a", "0", "5/9*t^2*a", "-10/243"],
    ["0", "0", "-27/5*t^2*a", "1", "18/5*t^3*a", "0", "t^4*a"],
];

const L3_OTHER_CHART: [[&str; 7]; 3] = [
    ["s^3*b", "0", "0", "0", "-1/3*s*b", "10/27*s", "10/27*b"],
    ["0", "s^2*b", "0", "1/9*s*b", "0", "5/9*b", "-10/243"],
    ["0", "0", "-27/5*s^2*b", "s^2", "18/5*s*b", "0", "b"],
];

const SEXTIC: [[&str; 7]; 3] = [
    ["1", "0", "2*s", "0", "-5/3*s^2", "0", "0"],
    ["0", "1", "0", "1/9*s", "0", "5/9*s^2", "0"],
    ["0", "0", "-27/5", "0", "18/5*s", "0", "s^2"],
];

const QUARTIC: [[&str; 7]; 3] = [
    ["-4", "0", "0", "-t", "0", "0", "5*t^2"],
    ["0", "-4", "0", "0", "2*t", "0", "0"],
    ["0", "0", "-4", "0", "0", "-10*t", "0"],
];

const CONIC: [[&str; 7]; 3] = [
    ["s", "0", "0", "0", "0", "-9*t", "0"],
    ["0", "s", "0", "0", "0", "0", "t"],
    ["0", "0", "0", "1", "0", "0", "0"],
];

fn curve(vars: &[&str], rows: &[[&str; 7]; 3]) -> ParametricCurve {
    ParametricCurve::parse(&PolyRing::grevlex(vars), rows).unwrap()
}

#[test]
fn printed_families_are_isotropic() {
    let net = threefold_net().unwrap();
    for (name, c) in [
        ("l1", curve(&["a", "t"], &L1_FAMILY)),
        ("l3", curve(&["a", "t"], &L3_FAMILY)),
        ("l3 other chart", curve(&["s", "b"], &L3_OTHER_CHART)),
        ("sextic", curve(&["s"], &SEXTIC)),
        ("quartic", curve(&["t"], &QUARTIC)),
        ("conic", curve(&["s", "t"], &CONIC)),
    ] {
        assert!(c.isotropy_defects(&net).is_empty(), "{name}");
    }
}

#[test]
fn perturbed_family_fails_isotropy() {
    let net = threefold_net().unwrap();
    let mut rows = L1_FAMILY;
    rows[1][6] = "3/5";
    let defects = curve(&["a", "t"], &rows).isotropy_defects(&net);
    assert!(!defects.is_empty());
}

#[test]
fn fixed_curve_degrees() {
    let q = curve(&["t"], &QUARTIC);
    assert_eq!(q.plucker_degree().unwrap(), 4);
    assert_eq!(q.parameter_weight().unwrap(), int(6));
    let c = curve(&["s", "t"], &CONIC).specialize("s", &int(1)).unwrap();
    assert_eq!(c.plucker_degree().unwrap(), 2);
    assert_eq!(c.parameter_weight().unwrap(), int(10));
    let sx = curve(&["s"], &SEXTIC);
    assert_eq!(sx.plucker_degree().unwrap(), 6);
    let line = curve(&["a", "t"], &L1_FAMILY).specialize("a", &int(0)).unwrap();
    assert_eq!(line.plucker_degree().unwrap(), 1);
    let cubic = curve(&["a", "t"], &L1_FAMILY).specialize("t", &int(2)).unwrap();
    assert_eq!(cubic.plucker_degree().unwrap(), 3);
}

#[test]
fn fixed_lines_and_conic_in_charts() {
    let net = threefold_net().unwrap();
    let v12 = chart_presentation(ChartLabel::P12, &net).unwrap();
    let v10 = chart_presentation(ChartLabel::P10, &net).unwrap();
    let l2 = curve(
        &["t"],
        &[
            ["1", "0", "0", "0", "0", "0", "0"],
            ["0", "1", "0", "0", "0", "0", "0"],
            ["0", "0", "1", "t", "0", "0", "0"],
        ],
    );
    let i = l2.implicitize(&v12).unwrap();
    assert!(i.equals(&Ideal::parse(v12.ring(), &["a10", "a11"]).unwrap()));
    let i = l2.implicitize(&v10).unwrap();
    assert!(i.equals(&Ideal::parse(v10.ring(), &["b8", "b10", "b12"]).unwrap()));
    let q = curve(&["s", "t"], &CONIC).specialize("s", &int(1)).unwrap();
    let i = q.implicitize(&v10).unwrap();
    assert!(i.equals(&Ideal::parse(v10.ring(), &["b9", "b10", "b12"]).unwrap()));
    assert!(q.implicitize(&v12).unwrap().is_unit());
}

#[test]
fn universal_cubic_at_origin_is_a_triple_line() {
    let net = threefold_net().unwrap();
    let v12 = chart_presentation(ChartLabel::P12, &net).unwrap();
    let i = cubic_at(&v12, &[int(0), int(0), int(0)]).unwrap();
    let want = Ideal::parse(i.ring(), &["u3^2", "u3*u1", "3*u1^2 + 2*u3*u_m1"]).unwrap();
    let si = saturate_irrelevant(&i).unwrap();
    assert!(si.equals(&saturate_irrelevant(&want).unwrap()));
    assert_eq!(hilbert_polynomial(&si.groebner()).to_string(), "3*m + 1");
}

#[test]
fn universal_cubic_matches_printed_minors() {
    let net = threefold_net().unwrap();
    let v12 = chart_presentation(ChartLabel::P12, &net).unwrap();
    let rows = universal_cubic(&v12).unwrap();
    let r = rows.ring().clone();
    let a12 = v12.image(11).map_into(&r).unwrap();
    let p = |s: &str| r.parse(s).unwrap();
    let m = [
        [p("6*u1 - a10*u_m3"), p("12*u_m1 + 6*a9*u_m3")],
        [
            p("-2*u3 - 3*a10*u_m1 - a11*u_m3"),
            p("6*u1 + 18*a9*u_m1 + 5*a10*u_m3"),
        ],
        [
            &p("-3*a11*u_m1") - &(&p("12*u_m3") * &a12),
            p("-10*u3 + 15*a10*u_m1 + 4*a11*u_m3"),
        ],
    ];
    let minors = Ideal::new(&r, minors_3x2(&m).to_vec()).unwrap();
    let s_rows = saturate_by_variables(&rows, &U_VARS).unwrap();
    let s_minors = saturate_by_variables(&minors, &U_VARS).unwrap();
    assert!(s_rows.equals(&s_minors));
}

fn small() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn universal_cubic_at_random_points_is_twisted_cubic(a9 in small(), a10 in small(), a11 in small()) {
        let net = threefold_net().unwrap();
        let v12 = chart_presentation(ChartLabel::P12, &net).unwrap();
        let i = cubic_at(&v12, &[a9, a10, a11]).unwrap();
        let s = saturate_irrelevant(&i).unwrap();
        prop_assert_eq!(hilbert_polynomial(&s.groebner()).to_string(), "3*m + 1");
    }
}

