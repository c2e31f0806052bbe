use mu_core::deformation::{hom_weight, verify_hom};
use mu_core::geometry::{Atlas, ChartLabel};
use mu_core::skew_net::threefold_net;
use mu_core::MultiPoly;

use ChartLabel::{P10, P12};

/// Checks each printed column is a homomorphism and returns its weights.
fn weights(a: &Atlas, l: ChartLabel, gens: &[&str], cols: &[[&str; 3]]) -> Vec<i64> {
    let p = a.chart(l);
    let pull = |s: &str| p.pull(&MultiPoly::parse(p.chart().ring(), s).unwrap()).unwrap();
    let g: Vec<MultiPoly> = gens.iter().map(|s| pull(s)).collect();
    cols.iter()
        .map(|c| {
            let col: Vec<MultiPoly> = c.iter().map(|s| pull(s)).collect();
            assert!(verify_hom(&col, &g, p.residual()).unwrap(), "{c:?} on {l}");
            hom_weight(&col, &g, p.weights()).unwrap()
        })
        .collect()
}

fn atlas() -> Atlas {
    Atlas::new(&threefold_net().unwrap()).unwrap()
}

#[test]
fn triple_line_local_generators() {
    let a = atlas();
    let psi = [
        ["0", "a11", "0"],
        ["-3*a11", "a10", "0"],
        ["-5*a10", "2*a9", "0"],
        ["0", "0", "a10"],
        ["0", "0", "a11"],
        ["-2*a11", "0", "5*a9"],
    ];
    assert_eq!(weights(&a, P12, &["a4", "a8", "a12"], &psi), [4, 6, 8, 4, 2, 6]);
    let phi = [["0", "0", "1"], ["5*b10", "-2", "0"], ["0", "b11", "0"], ["-3*b11", "b10", "0"]];
    assert_eq!(weights(&a, P10, &["b4", "b8", "b12"], &phi), [6, 10, 6, 8]);
}

#[test]
fn triple_line_global_generators() {
    let a = atlas();
    let cols = [["a11/10", "-a10/6", "a9"], ["0", "-a11/5", "a10"], ["0", "0", "a11"]];
    assert_eq!(weights(&a, P12, &["a4", "a8", "a12"], &cols), [6, 4, 2]);
}

#[test]
fn line_conic_generators() {
    let a = atlas();
    let cols = [["b9", "0", "0"], ["1", "0", "0"], ["0", "0", "b8"]];
    assert_eq!(weights(&a, P10, &["b10", "b11", "b8*b9"], &cols), [4, 2, -2]);
}

#[test]
fn mult4_line_generators() {
    let a = atlas();
    let cols = [
        ["0", "0", "b11"],
        ["0", "0", "b12"],
        ["0", "b12", "-6*b9*b12"],
        ["3/2*b12", "-1/6*b11", "b9*b11 + 6*b10"],
    ];
    assert_eq!(weights(&a, P10, &["b4", "b8", "b10*b12"], &cols), [4, 2, 4, 6]);
}

#[test]
fn double_line_conic_generators() {
    let a = atlas();
    let cols = [["0", "0", "b10"], ["0", "0", "b8"], ["0", "b10", "0"], ["0", "b9", "0"]];
    assert_eq!(weights(&a, P10, &["b4", "b11", "b8*b9"], &cols), [6, -2, 2, 6]);
}

#[test]
fn perturbed_column_is_rejected() {
    let a = atlas();
    let p = a.chart(P12);
    let r = p.ring();
    let g: Vec<MultiPoly> = ["a4", "a8", "a12"]
        .iter()
        .map(|s| p.pull(&MultiPoly::parse(p.chart().ring(), s).unwrap()).unwrap())
        .collect();
    let good: Vec<MultiPoly> = ["a11/10", "-a10/6", "a9"].iter().map(|s| r.parse(s).unwrap()).collect();
    assert!(verify_hom(&good, &g, p.residual()).unwrap());
    let mut bad = good.clone();
    bad[0] = r.parse("a11/5").unwrap();
    assert!(!verify_hom(&bad, &g, p.residual()).unwrap());
    let unit: Vec<MultiPoly> = ["1", "0", "0"].iter().map(|s| r.parse(s).unwrap()).collect();
    assert!(!verify_hom(&unit, &g, p.residual()).unwrap());
    assert!(verify_hom(&good[..2], &g, p.residual()).is_err());
}
