use std::sync::OnceLock;

use mu_core::bb::{assemble, is_mirror_closed, smoothness_audit, FixedPointRecord};
use mu_core::deformation::{glue_tangent, TangentReport};
use mu_core::geometry::{fixed_curve_catalog, Atlas, CurveRecord, HilbertScheme};
use mu_core::skew_net::threefold_net;

fn reports() -> &'static [(CurveRecord, TangentReport)] {
    static CELL: OnceLock<Vec<(CurveRecord, TangentReport)>> = OnceLock::new();
    CELL.get_or_init(|| {
        let a = Atlas::new(&threefold_net().unwrap()).unwrap();
        fixed_curve_catalog(&a)
            .unwrap()
            .into_iter()
            .map(|r| {
                let t = glue_tangent(&a, &r).unwrap();
                (r, t)
            })
            .collect()
    })
}

fn sorted(w: &[i64]) -> Vec<i64> {
    let mut w = w.to_vec();
    w.sort_unstable();
    w
}

#[test]
fn weights_match_printed_statements() {
    for (r, t) in reports() {
        assert_eq!(sorted(&t.weights), sorted(&r.printed_weights), "{}", r.id);
    }
}

#[test]
fn tangent_spaces_are_smooth_and_isolated() {
    for (r, t) in reports() {
        assert_eq!(t.dimension, r.scheme.dimension(), "{}", r.id);
        assert!(!t.has_zero_weight(), "{}", r.id);
        assert!(!t.at_boundary, "{}", r.id);
    }
}

#[test]
fn mirror_negates_weights() {
    let rs = reports();
    for (r, t) in rs {
        let Some((_, m)) = rs.iter().find(|(s, _)| s.id == format!("{}_mirror", r.id)) else {
            continue;
        };
        let neg: Vec<i64> = t.weights.iter().map(|w| -w).collect();
        assert_eq!(sorted(&neg), sorted(&m.weights), "{}", r.id);
    }
}

#[test]
fn poincare_polynomials() {
    for (scheme, want) in [(HilbertScheme::H3, "1 + p + p^2 + p^3"), (HilbertScheme::H4, "1 + p + 2p^2 + p^3 + p^4")] {
        let fixed: Vec<FixedPointRecord> = reports()
            .iter()
            .filter(|(r, _)| r.scheme == scheme)
            .map(|(r, t)| FixedPointRecord::new(r.id.clone(), t.weights.clone()))
            .collect();
        assert!(smoothness_audit(&fixed, scheme.dimension()));
        assert!(is_mirror_closed(&fixed));
        let p = assemble(&fixed).unwrap();
        assert!(p.is_palindromic());
        assert_eq!(p.to_string(), want);
    }
}
