use mu_core::groebner::Ideal;
use mu_core::linalg;
use mu_core::rational::{int, rat};
use mu_core::skew_net::{self, SkewNet};
use mu_core::sl2::{self, DualConvention, Pairing};
use mu_core::{MultiPoly, PolyRing, Rational};

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

fn printed_eta() -> SkewNet {
    let r = skew_net::y_ring();
    let m: Vec<Vec<MultiPoly>> = ETA
        .iter()
        .map(|row| row.iter().map(|s| r.parse(s).unwrap()).collect())
        .collect();
    SkewNet::from_symbolic(&m).unwrap()
}

#[test]
fn u6_orbit_is_proportional_to_printed_basis() {
    let orbit = sl2::u6_orbit();
    let s = orbit[0].space().clone();
    let r = sl2::base_ring(&s).unwrap();
    let printed: Vec<_> = sl2::U6_BASIS
        .iter()
        .map(|t| sl2::poly_to_sym2(&s, &r.parse(t).unwrap()).unwrap())
        .collect();
    let scalars = sl2::proportional_lists(&orbit, &printed).unwrap();
    let want: Vec<Rational> = [1, 6, 6, 12, 72, 720, 720].iter().map(|&k| int(k)).collect();
    assert_eq!(scalars, want);
}

#[test]
fn u6_action_matches_printed_table() {
    let u = sl2::u6_module().unwrap();
    let f_scalars = [6, 1, 2, 6, 10, 1];
    let e_scalars = [1, 10, 6, 2, 1, 6];
    for i in 0..6 {
        assert_eq!(u.basis_vector(i).act_f(), u.basis_vector(i + 1).scale(&int(f_scalars[i])));
        assert_eq!(u.basis_vector(i + 1).act_e(), u.basis_vector(i).scale(&int(e_scalars[i])));
    }
    assert!(u.basis_vector(6).act_f().is_zero());
    assert!(u.basis_vector(0).act_e().is_zero());
}

#[test]
fn polar_annihilator_of_q_is_u6() {
    let q = sl2::net_q(DualConvention::Transpose);
    assert_eq!(q.len(), 3);
    let sd = q[0].space().clone();
    let rd = sl2::base_ring(&sd).unwrap();
    let printed: Vec<_> = [
        "3*us_m3*us1 - us_m1^2",
        "9*us3*us_m3 - us1*us_m1",
        "3*us_m1*us3 - us1^2",
    ]
    .iter()
    .map(|t| sl2::poly_to_sym2(&sd, &rd.parse(t).unwrap()).unwrap())
    .collect();
    assert!(sl2::same_span(&q, &printed));
    assert!(sl2::proportional_lists(&q, &printed).is_some());

    let s = sl2::sym2(&sl2::w3());
    for pairing in [Pairing::Polar, Pairing::Differential] {
        let ann = sl2::apolar_annihilator(&q, &s, pairing).unwrap();
        assert_eq!(ann.len(), 7);
        assert!(sl2::same_span(&ann, &sl2::u6_orbit()));
    }
}

#[test]
fn twisted_cubic_quadrics_span_the_small_summand() {
    let s = sl2::sym2(&sl2::w3());
    let hw = sl2::highest_weight_vectors(&s, 2);
    let orbit = sl2::lowering_orbit(&hw[0]);
    let r = sl2::base_ring(&s).unwrap();
    let u3: Vec<_> = ["u1^2 - u3*u_m1", "u1*u_m1 - u3*u_m3", "u_m1^2 - u_m3*u1"]
        .iter()
        .map(|t| sl2::poly_to_sym2(&s, &r.parse(t).unwrap()).unwrap())
        .collect();
    assert!(sl2::same_span(&orbit, &u3));
}

#[test]
fn alternating_net_matches_printed_generators() {
    let (x, gens) = sl2::alternating_net(DualConvention::Transpose).unwrap();
    let v = |terms: &[(&str, Rational)]| x.vector_from_labels(terms).unwrap();
    // w*_a ∧ w*_b with a before b in the basis order is the label "ws_a^ws_b".
    let g1 = v(&[
        ("ws4^ws_m6", rat(-3, 5)),
        ("ws2^ws_m4", int(1)),
        ("ws0^ws_m2", int(-6)),
    ]);
    let g2 = v(&[
        ("ws4^ws_m4", rat(1, 5)),
        ("ws6^ws_m6", rat(-9, 5)),
        ("ws2^ws_m2", int(-1)),
    ]);
    let g3 = v(&[
        ("ws4^ws_m2", int(1)),
        ("ws6^ws_m4", rat(-3, 5)),
        ("ws2^ws0", int(-6)),
    ]);
    assert_eq!(gens, vec![g1, g2, g3]);
    let hw = sl2::highest_weight_vectors(&x, 2);
    assert_eq!(hw.len(), 1);
    assert_eq!(sl2::lowering_orbit(&hw[0]).len(), 3);
}

#[test]
fn eta_matches_printed_matrix() {
    let (_, gens) = sl2::alternating_net(DualConvention::Transpose).unwrap();
    let eta = skew_net::net_from_forms(&gens).unwrap();
    let printed = printed_eta();
    assert!(eta.differences(&printed).is_empty());
    let r = skew_net::y_ring();
    assert_eq!(eta.entry(1, 7), r.parse("-9/5*y0").unwrap());
    assert_eq!(eta.entry(4, 3), r.parse("6*y2").unwrap());
    for i in 1..=7 {
        assert!(eta.entry(i, i).is_zero());
    }
}

#[test]
fn pfaffian_ideal_matches_printed_list() {
    let eta = printed_eta();
    let pf = skew_net::principal_pfaffians(&eta).unwrap();
    let r = skew_net::y_ring();
    let printed: Vec<MultiPoly> = PFAFFIANS.iter().map(|s| r.parse(s).unwrap()).collect();
    for p in &pf {
        assert!(printed.iter().any(|q| linalg::proportionality(
            &coeffs(p, &r),
            &coeffs(q, &r)
        )
        .is_some()));
    }
    let ours = Ideal::new(&r, pf).unwrap();
    let theirs = Ideal::new(&r, printed).unwrap();
    assert!(ours.equals(&theirs));
}

fn coeffs(p: &MultiPoly, r: &PolyRing) -> Vec<Rational> {
    r.monomials_of_degree(3).iter().map(|m| p.coefficient(m)).collect()
}

#[test]
fn pfaffian_ideal_is_sl2_stable_and_mirror_symmetric() {
    let eta = printed_eta();
    let i = skew_net::principal_pfaffian_ideal(&eta).unwrap();
    let r = i.ring().clone();
    // e: y_m2 -> y0 -> 2 y2, f: y2 -> y0 -> 2 y_m2 (transpose of the action on N)
    let e = vec![
        vec![int(0), int(2), int(0)],
        vec![int(0), int(0), int(1)],
        vec![int(0), int(0), int(0)],
    ];
    let f = vec![
        vec![int(0), int(0), int(0)],
        vec![int(1), int(0), int(0)],
        vec![int(0), int(2), int(0)],
    ];
    let gb = i.groebner();
    for g in i.gens() {
        assert!(gb.contains(&skew_net::derivation(g, &e)));
        assert!(gb.contains(&skew_net::derivation(g, &f)));
    }
    let swap: Vec<MultiPoly> = vec![r.var("y_m2").unwrap(), r.var("y0").unwrap(), r.var("y2").unwrap()];
    let mirrored = Ideal::new(&r, i.gens().iter().map(|g| g.compose(&swap, &r)).collect()).unwrap();
    assert!(mirrored.equals(&i));
}

#[test]
fn apolar_quartic_of_pfaffians_is_a_double_conic() {
    let eta = printed_eta();
    let pf = skew_net::principal_pfaffians(&eta).unwrap();
    let f = skew_net::apolar_quartic(&pf).unwrap();
    let dr = skew_net::dual_y_ring();
    assert_eq!(f, dr.parse("(Y0^2 - Y2*Y_m2)^2").unwrap());
    assert!(skew_net::is_double_smooth_conic(&f));
    let back = skew_net::apolar_forms(&f, &skew_net::y_ring(), 3);
    assert_eq!(back.len(), 7);
    let r = skew_net::y_ring();
    assert!(Ideal::new(&r, back).unwrap().equals(&Ideal::new(&r, pf).unwrap()));
}

#[test]
fn invariant_transport_of_the_quartic() {
    let (x, gens) = sl2::alternating_net(DualConvention::Transpose).unwrap();
    let n = x
        .restrict(
            &[gens[2].clone(), gens[1].clone(), gens[0].clone()],
            vec!["n2".into(), "n0".into(), "n_m2".into()],
        )
        .unwrap();
    let b = skew_net::invariant_form(&n).unwrap();
    assert_eq!(b[0][2], int(-2) * &b[1][1]);
    let eta = printed_eta();
    let f = skew_net::apolar_quartic(&skew_net::principal_pfaffians(&eta).unwrap()).unwrap();
    let t = skew_net::equivariant_transport(&f, &b).unwrap();
    let r = skew_net::y_ring();
    assert_eq!(t, r.parse("(4*y2*y_m2 - y0^2)^2").unwrap());
}
