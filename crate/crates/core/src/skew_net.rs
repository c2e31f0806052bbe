//! Nets of alternating forms as skew matrix pencils, Pfaffians and the
//! apolar quartic of the Pfaffian cubics.

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::linalg::{self, Matrix};
use crate::poly::{Monomial, MultiPoly, PolyRing};
use crate::rational::{int, Rational};
use crate::sl2::{Construction, RepSpace, RepVector};

/// Names of the net coordinates, in pencil order.
pub const Y_VARS: [&str; 3] = ["y2", "y0", "y_m2"];
/// Names of the dual coordinates used for apolarity.
pub const DUAL_Y_VARS: [&str; 3] = ["Y2", "Y0", "Y_m2"];
/// Torus weights of `y2, y0, y_m2`.
pub const Y_WEIGHTS: [i64; 3] = [2, 0, -2];

pub fn y_ring() -> PolyRing {
    PolyRing::grevlex(&Y_VARS)
}

pub fn dual_y_ring() -> PolyRing {
    PolyRing::grevlex(&DUAL_Y_VARS)
}

/// Three skew matrices, the coefficients of `y2`, `y0` and `y_m2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewNet {
    mats: [Matrix; 3],
}

fn is_skew(m: &Matrix) -> bool {
    let n = m.len();
    m.iter().all(|r| r.len() == n)
        && (0..n).all(|i| (0..n).all(|j| m[i][j] == -m[j][i].clone()))
}

impl SkewNet {
    pub fn new(mats: [Matrix; 3]) -> Result<Self> {
        let n = mats[0].len();
        for (k, m) in mats.iter().enumerate() {
            if m.len() != n {
                return Err(Error::Dimension("net matrices differ in size".into()));
            }
            if !is_skew(m) {
                return Err(Error::Invalid(format!("matrix of {} is not skew", Y_VARS[k])));
            }
        }
        Ok(SkewNet { mats })
    }

    /// Splits a symbolic skew matrix in `y2, y0, y_m2` into the pencil.
    pub fn from_symbolic(m: &[Vec<MultiPoly>]) -> Result<Self> {
        let n = m.len();
        let mut mats = [linalg::zeros(n, n), linalg::zeros(n, n), linalg::zeros(n, n)];
        for (i, row) in m.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Dimension("matrix is not square".into()));
            }
            for (j, p) in row.iter().enumerate() {
                let ring = p.ring();
                for (mono, c) in p.terms() {
                    let k = (0..3)
                        .find(|&k| {
                            ring.index_of(Y_VARS[k])
                                .is_some_and(|v| *mono == Monomial::var(ring.nvars(), v))
                        })
                        .ok_or_else(|| {
                            Error::Invalid(format!("entry ({}, {}) is not linear in y", i + 1, j + 1))
                        })?;
                    mats[k][i][j] = c.clone();
                }
            }
        }
        SkewNet::new(mats)
    }

    pub fn size(&self) -> usize {
        self.mats[0].len()
    }

    /// Coefficient matrix of `y2`, `y0` or `y_m2` (`k = 0, 1, 2`).
    pub fn matrix(&self, k: usize) -> &Matrix {
        &self.mats[k]
    }

    pub fn matrices(&self) -> &[Matrix; 3] {
        &self.mats
    }

    /// `y2·η2 + y0·η0 + y_m2·η_m2` over `ring`.
    pub fn symbolic(&self, ring: &PolyRing) -> Result<Vec<Vec<MultiPoly>>> {
        let ys = Y_VARS
            .iter()
            .map(|v| ring.var(v))
            .collect::<Result<Vec<_>>>()?;
        let n = self.size();
        Ok((0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut acc = ring.zero();
                        for k in 0..3 {
                            let c = &self.mats[k][i][j];
                            if !c.is_zero() {
                                acc = &acc + &ys[k].scale(c);
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect())
    }

    /// Entry `(i, j)`, 1-indexed, as a linear form in `y`.
    pub fn entry(&self, i: usize, j: usize) -> MultiPoly {
        let ring = y_ring();
        let mut acc = ring.zero();
        for k in 0..3 {
            acc = &acc + &ring.var_at(k).scale(&self.mats[k][i - 1][j - 1]);
        }
        acc
    }

    /// Entries where `self` and `other` differ, 1-indexed.
    pub fn differences(&self, other: &SkewNet) -> Vec<(usize, usize, MultiPoly, MultiPoly)> {
        let n = self.size();
        let mut out = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                let (a, b) = (self.entry(i, j), other.entry(i, j));
                if a != b {
                    out.push((i, j, a, b));
                }
            }
        }
        out
    }

    /// The net with rows and columns reversed.
    pub fn reversed(&self) -> SkewNet {
        let rev = |m: &Matrix| -> Matrix {
            m.iter().rev().map(|r| r.iter().rev().cloned().collect()).collect()
        };
        SkewNet {
            mats: [rev(&self.mats[0]), rev(&self.mats[1]), rev(&self.mats[2])],
        }
    }
}

/// The pencil of three forms in `∧² V`. Each form is attached to the
/// coordinate `y_k` with `k` minus its torus weight, and entry `(i, j)` of
/// its matrix is the coefficient of `v_i ∧ v_j` (`i < j`).
pub fn net_from_forms(forms: &[RepVector]) -> Result<SkewNet> {
    if forms.len() != 3 {
        return Err(Error::Dimension("a net has three forms".into()));
    }
    let space = forms[0].space();
    if space.kind() != &Construction::Wedge2 {
        return Err(Error::Invalid("forms must live in an exterior square".into()));
    }
    let n = space.base().map(RepSpace::dim).unwrap_or(0);
    let mut mats = [linalg::zeros(n, n), linalg::zeros(n, n), linalg::zeros(n, n)];
    let mut used = [false; 3];
    for v in forms {
        if v.space() != space {
            return Err(Error::Invalid("forms live in different spaces".into()));
        }
        let w = v
            .weight()
            .ok_or_else(|| Error::Invalid("form is not a weight vector".into()))?;
        let k = Y_WEIGHTS
            .iter()
            .position(|&y| y == -w)
            .ok_or_else(|| Error::Invalid(format!("form of weight {w} has no y-label")))?;
        if used[k] {
            return Err(Error::Invalid(format!("two forms of weight {w}")));
        }
        used[k] = true;
        for (c, &(i, j)) in v.coords().iter().zip(space.pairs()) {
            mats[k][i][j] = c.clone();
            mats[k][j][i] = -c.clone();
        }
    }
    SkewNet::new(mats)
}

/// The net `η` of the threefold, built from the sl2-module `N` with the
/// transpose dual.
pub fn threefold_net() -> Result<SkewNet> {
    let (_, gens) = crate::sl2::alternating_net(crate::sl2::DualConvention::Transpose)?;
    net_from_forms(&gens)
}

/// Pfaffian by expansion along the first row. Fails on odd size or a
/// non-skew matrix.
pub fn pfaffian(m: &[Vec<MultiPoly>]) -> Result<MultiPoly> {
    let n = m.len();
    let Some(ring) = m.first().and_then(|r| r.first()).map(|p| p.ring().clone()) else {
        return Err(Error::Dimension("empty matrix".into()));
    };
    if n % 2 == 1 {
        return Err(Error::Dimension("odd-size matrix".into()));
    }
    for i in 0..n {
        if m[i].len() != n {
            return Err(Error::Dimension("matrix is not square".into()));
        }
        for j in 0..n {
            if m[i][j] != -&m[j][i] {
                return Err(Error::Invalid(format!("not skew at ({}, {})", i + 1, j + 1)));
            }
        }
    }
    let idx: Vec<usize> = (0..n).collect();
    Ok(pf_rec(m, &idx, &ring))
}

fn pf_rec(m: &[Vec<MultiPoly>], idx: &[usize], ring: &PolyRing) -> MultiPoly {
    if idx.is_empty() {
        return ring.one();
    }
    let i = idx[0];
    let mut acc = ring.zero();
    for (pos, &j) in idx.iter().enumerate().skip(1) {
        if m[i][j].is_zero() {
            continue;
        }
        let rest: Vec<usize> = idx[1..].iter().copied().filter(|&k| k != j).collect();
        let term = &m[i][j] * &pf_rec(m, &rest, ring);
        acc = if pos % 2 == 1 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Determinant by cofactor expansion, for the small symbolic matrices here.
pub fn det_poly(m: &[Vec<MultiPoly>], ring: &PolyRing) -> MultiPoly {
    let n = m.len();
    if n == 0 {
        return ring.one();
    }
    let mut acc = ring.zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MultiPoly>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, p)| p.clone()).collect())
            .collect();
        let t = &m[0][j] * &det_poly(&minor, ring);
        acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
    }
    acc
}

/// The Pfaffians of the principal minors obtained by deleting row and
/// column `i`, for each `i` in order.
pub fn principal_pfaffians(net: &SkewNet) -> Result<Vec<MultiPoly>> {
    let ring = y_ring();
    let m = net.symbolic(&ring)?;
    let n = m.len();
    (0..n)
        .map(|del| {
            let sub: Vec<Vec<MultiPoly>> = (0..n)
                .filter(|&i| i != del)
                .map(|i| (0..n).filter(|&j| j != del).map(|j| m[i][j].clone()).collect())
                .collect();
            pfaffian(&sub)
        })
        .collect()
}

/// The ideal of the principal sub-Pfaffians in `ℚ[y2, y0, y_m2]`.
pub fn principal_pfaffian_ideal(net: &SkewNet) -> Result<Ideal> {
    Ideal::new(&y_ring(), principal_pfaffians(net)?)
}

/// `∂^α (Y^β)` as `(coefficient, exponent)`; `None` if it vanishes.
fn diff_monomial(alpha: &[u32], beta: &[u32]) -> Option<(Rational, Vec<u32>)> {
    let mut c = Rational::one();
    let mut out = Vec::with_capacity(beta.len());
    for (&a, &b) in alpha.iter().zip(beta) {
        if a > b {
            return None;
        }
        for k in 0..a {
            c *= int((b - k) as i64);
        }
        out.push(b - a);
    }
    Some((c, out))
}

/// Applies `p(∂)` to `f`, where variable `i` of `p` differentiates with
/// respect to variable `i` of `f`.
pub fn apply_differential(p: &MultiPoly, f: &MultiPoly) -> MultiPoly {
    let ring = f.ring();
    let mut terms = Vec::new();
    for (a, ca) in p.terms() {
        for (b, cb) in f.terms() {
            if let Some((c, e)) = diff_monomial(a.exps(), b.exps()) {
                terms.push((Monomial(e), c * ca * cb));
            }
        }
    }
    MultiPoly::from_terms(ring, terms)
}

/// The forms of degree `deg` in the variables of `p_ring` whose
/// differential action kills `f`.
pub fn apolar_forms(f: &MultiPoly, p_ring: &PolyRing, deg: u32) -> Vec<MultiPoly> {
    let monos = p_ring.monomials_of_degree(deg);
    let target = f.ring();
    let images: Vec<MultiPoly> = monos
        .iter()
        .map(|m| apply_differential(&p_ring.monomial(m.clone(), Rational::one()), f))
        .collect();
    let out_deg = f.total_degree().unwrap_or(0).saturating_sub(deg);
    let rows_m = target.monomials_of_degree(out_deg);
    let mat: Matrix = rows_m
        .iter()
        .map(|r| images.iter().map(|p| p.coefficient(r)).collect())
        .collect();
    linalg::nullspace(&mat, monos.len())
        .into_iter()
        .map(|v| {
            let terms = monos.iter().cloned().zip(v).collect();
            MultiPoly::from_terms(p_ring, terms)
        })
        .collect()
}

/// The quartic in `Y2, Y0, Y_m2`, unique up to scalar, killed by every
/// cubic of `cubics` acting as a differential operator (`y_k ↦ ∂/∂Y_k`).
/// Fails unless the solution space is one-dimensional.
pub fn apolar_quartic(cubics: &[MultiPoly]) -> Result<MultiPoly> {
    let dr = dual_y_ring();
    let quartics = dr.monomials_of_degree(4);
    let mut rows: Matrix = Vec::new();
    for c in cubics {
        if c.total_degree() != Some(3) || !c.is_homogeneous() {
            return Err(Error::Invalid(format!("`{c}` is not a cubic form")));
        }
        let cm = MultiPoly::from_terms(&dr, c.terms().to_vec());
        let imgs: Vec<MultiPoly> = quartics
            .iter()
            .map(|q| apply_differential(&cm, &dr.monomial(q.clone(), Rational::one())))
            .collect();
        for lin in dr.monomials_of_degree(1) {
            rows.push(imgs.iter().map(|p| p.coefficient(&lin)).collect());
        }
    }
    let ns = linalg::nullspace(&rows, quartics.len());
    if ns.len() != 1 {
        return Err(Error::NotSolvable(format!(
            "apolar quartics form a space of dimension {}",
            ns.len()
        )));
    }
    let f = MultiPoly::from_terms(&dr, quartics.into_iter().zip(ns.into_iter().next().unwrap()).collect());
    Ok(normalize_sign(f.primitive()))
}

fn normalize_sign(f: MultiPoly) -> MultiPoly {
    match f.leading_coeff() {
        Some(c) if c.is_negative() => -f,
        _ => f,
    }
}

/// `(s, q)` with `f = s·q²` and `q` monic, when `f` is a constant times a
/// square.
pub fn square_root(f: &MultiPoly) -> Option<(Rational, MultiPoly)> {
    let ring = f.ring();
    let (lm, lc) = f.leading_term()?.clone();
    if lm.exps().iter().any(|e| e % 2 == 1) {
        return None;
    }
    let g = f.scale(&lc.recip());
    let half = Monomial(lm.exps().iter().map(|e| e / 2).collect());
    let mut q = ring.monomial(half.clone(), Rational::one());
    let bound = g.len() + 2;
    for _ in 0..bound {
        let r = &g - &(&q * &q);
        let Some((m, c)) = r.leading_term().cloned() else {
            return Some((lc, q));
        };
        let t = m.div(&half)?;
        if ring.cmp(&t, &half) != std::cmp::Ordering::Less {
            return None;
        }
        q = &q + &ring.monomial(t, c / int(2));
    }
    None
}

/// Symmetric Gram matrix of a quadratic form.
pub fn quadric_matrix(q: &MultiPoly) -> Matrix {
    let ring = q.ring();
    let n = ring.nvars();
    let mut m = linalg::zeros(n, n);
    for (mono, c) in q.terms() {
        let vs: Vec<usize> = (0..n)
            .flat_map(|i| std::iter::repeat_n(i, mono.exps()[i] as usize))
            .collect();
        if let [i, j] = vs[..] {
            if i == j {
                m[i][i] += c;
            } else {
                let h = c / int(2);
                m[i][j] += &h;
                m[j][i] += &h;
            }
        }
    }
    m
}

/// True when `f` is a scalar times the square of a smooth conic.
pub fn is_double_smooth_conic(f: &MultiPoly) -> bool {
    match square_root(f) {
        Some((_, q)) => {
            q.total_degree() == Some(2)
                && q.is_homogeneous()
                && !linalg::determinant(&quadric_matrix(&q)).is_zero()
        }
        None => false,
    }
}

/// The symmetric invariant bilinear form on a module, unique up to scalar,
/// normalized so the first nonzero entry is one.
pub fn invariant_form(v: &RepSpace) -> Result<Matrix> {
    let n = v.dim();
    let idx = |i: usize, j: usize| i * n + j;
    let mut rows: Matrix = Vec::new();
    for op in [v.e(), v.f()] {
        for i in 0..n {
            for j in 0..n {
                // B(x·v_i, v_j) + B(v_i, x·v_j) = 0
                let mut row = vec![Rational::zero(); n * n];
                for k in 0..n {
                    row[idx(k, j)] += &op[k][i];
                    row[idx(i, k)] += &op[k][j];
                }
                rows.push(row);
            }
        }
    }
    for i in 0..n {
        for j in 0..i {
            let mut row = vec![Rational::zero(); n * n];
            row[idx(i, j)] = Rational::one();
            row[idx(j, i)] = -Rational::one();
            rows.push(row);
        }
    }
    let ns = linalg::nullspace(&rows, n * n);
    if ns.len() != 1 {
        return Err(Error::NotSolvable(format!(
            "invariant symmetric forms form a space of dimension {}",
            ns.len()
        )));
    }
    let b = &ns[0];
    let first = b.iter().find(|x| !x.is_zero()).unwrap().clone();
    Ok((0..n)
        .map(|i| (0..n).map(|j| &b[idx(i, j)] / &first).collect())
        .collect())
}

/// Rewrites a form in `Y2, Y0, Y_m2` in the coordinates `y2, y0, y_m2` by
/// `Y = B·y`, where `B` is the invariant form in the order `y2, y0, y_m2`.
pub fn equivariant_transport(f: &MultiPoly, b: &Matrix) -> Result<MultiPoly> {
    let yr = y_ring();
    if b.len() != 3 {
        return Err(Error::Dimension("form must be 3×3".into()));
    }
    let dr = f.ring();
    let mut images = Vec::new();
    for name in dr.vars() {
        let k = DUAL_Y_VARS
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.clone()))?;
        let mut acc = yr.zero();
        for (j, c) in b[k].iter().enumerate() {
            acc = &acc + &yr.var_at(j).scale(c);
        }
        images.push(acc);
    }
    Ok(normalize_sign(f.compose(&images, &yr).primitive()))
}

/// The action of `e` or `f` on `ℚ[y2, y0, y_m2]` as a derivation, where
/// `op[k][i]` is the coefficient of `y_k` in the image of `y_i`.
pub fn derivation(p: &MultiPoly, op: &Matrix) -> MultiPoly {
    let ring = p.ring();
    let mut acc = ring.zero();
    for i in 0..ring.nvars() {
        let d = p.derivative(i);
        if d.is_zero() {
            continue;
        }
        let mut img = ring.zero();
        for k in 0..ring.nvars() {
            img = &img + &ring.var_at(k).scale(&op[k][i]);
        }
        acc = &acc + &(&d * &img);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn skew_from(ring: &PolyRing, upper: &[&[&str]]) -> Vec<Vec<MultiPoly>> {
        let n = upper.len() + 1;
        let mut m = vec![vec![ring.zero(); n]; n];
        for (i, row) in upper.iter().enumerate() {
            for (k, s) in row.iter().enumerate() {
                let j = i + 1 + k;
                let p = ring.parse(s).unwrap();
                m[j][i] = -&p;
                m[i][j] = p;
            }
        }
        m
    }

    #[test]
    fn pfaffian_small_cases() {
        let r = PolyRing::grevlex(&["a", "b", "c", "d", "e", "f"]);
        let m2 = skew_from(&r, &[&["a"]]);
        assert_eq!(pfaffian(&m2).unwrap(), r.parse("a").unwrap());
        let m4 = skew_from(&r, &[&["a", "b", "c"], &["d", "e"], &["f"]]);
        assert_eq!(pfaffian(&m4).unwrap(), r.parse("a*f - b*e + c*d").unwrap());
        let p = pfaffian(&m4).unwrap();
        assert_eq!(&p * &p, det_poly(&m4, &r));
    }

    #[test]
    fn pfaffian_rejects_bad_input() {
        let r = PolyRing::grevlex(&["a"]);
        let a = r.parse("a").unwrap();
        let bad = vec![vec![r.zero(), a.clone()], vec![a, r.zero()]];
        assert!(pfaffian(&bad).is_err());
    }

    #[test]
    fn square_roots() {
        let r = dual_y_ring();
        let f = r.parse("3*(Y0^2 - Y2*Y_m2)^2").unwrap();
        let (s, q) = square_root(&f).unwrap();
        assert_eq!(s, int(3));
        assert_eq!(q, r.parse("Y0^2 - Y2*Y_m2").unwrap());
        assert!(is_double_smooth_conic(&f));
        assert!(!is_double_smooth_conic(&r.parse("Y0^4").unwrap()));
        assert!(square_root(&r.parse("Y0^3*Y2").unwrap()).is_none());
        assert!(!is_double_smooth_conic(&r.parse("(Y0^2 - Y2*Y_m2)*(Y0^2 + Y2*Y_m2)").unwrap()));
    }

    #[test]
    fn apolar_forms_of_square() {
        let r = dual_y_ring();
        let f = r.parse("(Y0^2 - Y2*Y_m2)^2").unwrap();
        let cubics = apolar_forms(&f, &y_ring(), 3);
        assert_eq!(cubics.len(), 7);
        let back = apolar_quartic(&cubics).unwrap();
        assert_eq!(back, r.parse("(Y0^2 - Y2*Y_m2)^2").unwrap());
    }

    #[test]
    fn differential_action() {
        let r = PolyRing::grevlex(&["x", "y"]);
        let f = r.parse("x^3*y").unwrap();
        let d = apply_differential(&r.parse("x^2").unwrap(), &f);
        assert_eq!(d, r.parse("6*x*y").unwrap());
        assert_eq!(apply_differential(&r.parse("y^2").unwrap(), &f), r.zero());
        assert_eq!(quadric_matrix(&r.parse("x*y").unwrap())[0][1], rat(1, 2));
    }
}
