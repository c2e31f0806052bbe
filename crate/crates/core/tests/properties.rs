use mu_core::bb::{assemble, FixedPointRecord};
use mu_core::groebner::syzygies;
use mu_core::linalg::{determinant, mat_mul, mat_sub, Matrix};
use mu_core::rational::{int, rat};
use mu_core::sl2::{construct, dual, sym_power_std, ConstructionKind, DualConvention, RepSpace};
use mu_core::skew_net::pfaffian;
use mu_core::{GroebnerBasis, Monomial, MultiPoly, PolyRing, Rational};
use proptest::prelude::*;

fn ring() -> PolyRing {
    PolyRing::grevlex(&["x", "y", "z"])
}

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..20, 1i64..8).prop_map(|(n, d)| rat(n, d))
}

fn poly(max_terms: usize, max_exp: u32) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_exp, 3), -5i64..=5),
        1..=max_terms,
    )
    .prop_map(|ts| {
        let terms = ts.into_iter().map(|(e, c)| (Monomial(e), int(c))).collect();
        MultiPoly::from_terms(&ring(), terms)
    })
}

fn nonzero_poly(max_terms: usize, max_exp: u32) -> impl Strategy<Value = MultiPoly> {
    poly(max_terms, max_exp).prop_filter("nonzero", |p| !p.is_zero())
}

fn skew(n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-6i64..=6, n * (n - 1) / 2).prop_map(move |v| {
        let mut m = vec![vec![int(0); n]; n];
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                m[i][j] = int(v[k]);
                m[j][i] = -int(v[k]);
                k += 1;
            }
        }
        m
    })
}

fn bracket_is_h(v: &RepSpace) -> bool {
    let ef = mat_sub(&mat_mul(v.e(), v.f()), &mat_mul(v.f(), v.e()));
    ef == v.h()
}

proptest! {
    #[test]
    fn rationals_form_a_field(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        prop_assert_eq!(&a + &b, &b + &a);
        if b != int(0) {
            prop_assert_eq!((&a / &b) * &b, a.clone());
        }
    }

    #[test]
    fn polynomials_form_a_ring(f in poly(4, 3), g in poly(4, 3), h in poly(4, 3)) {
        let fg = f.checked_mul(&g).unwrap();
        prop_assert_eq!(&fg, &g.checked_mul(&f).unwrap());
        let lhs = f.checked_mul(&g.checked_add(&h).unwrap()).unwrap();
        let rhs = fg.checked_add(&f.checked_mul(&h).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(f.checked_sub(&f).unwrap().is_zero());
        let back = fg.to_string();
        prop_assert_eq!(MultiPoly::parse(&ring(), &back).unwrap(), fg);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn buchberger_bases_are_groebner(gens in prop::collection::vec(nonzero_poly(2, 2), 1..=3)) {
        let gb = GroebnerBasis::compute(&ring(), &gens);
        prop_assert!(gb.s_pairs_reduce_to_zero());
        prop_assert!(gb.is_reduced());
        for g in &gens {
            prop_assert!(gb.contains(g));
        }
    }

    #[test]
    fn syzygies_annihilate_generators(gens in prop::collection::vec(nonzero_poly(3, 1), 2..=3)) {
        for s in syzygies(&gens) {
            prop_assert!(s.dot(&gens).is_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn pfaffian_squares_to_determinant(n in prop::sample::select(vec![2usize, 4, 6]), m in skew(6)) {
        let m: Matrix = m.iter().take(n).map(|r| r[..n].to_vec()).collect();
        let r = PolyRing::grevlex(&["x"]);
        let pm: Vec<Vec<MultiPoly>> = m
            .iter()
            .map(|row| row.iter().map(|c| r.constant(c.clone())).collect())
            .collect();
        let pf = pfaffian(&pm).unwrap();
        let pf = if pf.is_zero() { int(0) } else { pf.terms()[0].1.clone() };
        prop_assert_eq!(&pf * &pf, determinant(&m));
    }

    #[test]
    fn constructed_modules_satisfy_the_bracket(d in 0u32..=4, d2 in 0u32..=3) {
        let v = sym_power_std(d);
        let w = sym_power_std(d2);
        prop_assert!(bracket_is_h(&v));
        for c in [DualConvention::Transpose, DualConvention::Contragredient] {
            prop_assert!(bracket_is_h(&dual(&v, c)));
        }
        for k in [ConstructionKind::Sym2, ConstructionKind::Wedge2] {
            prop_assert!(bracket_is_h(&construct(&[&v], k).unwrap()));
        }
        prop_assert!(bracket_is_h(&construct(&[&v, &w], ConstructionKind::Tensor).unwrap()));
    }

    #[test]
    fn mirror_closed_records_give_palindromes(
        ws in prop::collection::vec(prop::collection::vec(prop::sample::select(vec![-3i64, -2, -1, 1, 2, 3]), 3), 1..5)
    ) {
        let mut rs: Vec<FixedPointRecord> = ws.iter().map(|w| FixedPointRecord::new("r", w.clone())).collect();
        rs.extend(ws.iter().map(|w| FixedPointRecord::new("m", w.iter().map(|x| -x).collect())));
        let p = assemble(&rs).unwrap();
        let mut c = p.coefficients().to_vec();
        c.resize(4, 0);
        prop_assert!(c.iter().eq(c.iter().rev()));
    }
}
