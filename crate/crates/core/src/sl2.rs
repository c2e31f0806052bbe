//! Finite-dimensional sl2 weight modules with explicit e and f matrices.
//!
//! Matrices act on column vectors: column `j` of `e` holds the coordinates
//! of `e·v_j`. Every constructor checks that `[e, f]` is the diagonal weight
//! matrix and that `e` and `f` shift weights by exactly ±2.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::poly::{Monomial, MultiPoly, PolyRing};
use crate::rational::{fmt_rational, int, Rational};

/// How the dual module acts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DualConvention {
    /// `e* = eᵀ`, `f* = fᵀ`, so `h* = -hᵀ`. Matches the printed dual table.
    Transpose,
    /// `(g·φ)(v) = -φ(g·v)`, i.e. `e* = -eᵀ`, `f* = -fᵀ`.
    Contragredient,
}

/// Which construction produced a module. Products keep the index pairs of
/// their basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Construction {
    Standard(u32),
    Dual(DualConvention),
    Sym2,
    Wedge2,
    Tensor,
    Restricted,
}

#[derive(Debug)]
struct RepData {
    labels: Vec<String>,
    weights: Vec<i64>,
    e: Matrix,
    f: Matrix,
    kind: Construction,
    pairs: Vec<(usize, usize)>,
    base: Option<RepSpace>,
}

/// A weight module with explicit `e` and `f`. Cheap to clone.
#[derive(Clone, Debug)]
pub struct RepSpace(Arc<RepData>);

impl PartialEq for RepSpace {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.labels == other.0.labels
                && self.0.weights == other.0.weights
                && self.0.e == other.0.e
                && self.0.f == other.0.f)
    }
}

/// A vector in a [`RepSpace`].
#[derive(Clone, Debug, PartialEq)]
pub struct RepVector {
    space: RepSpace,
    coords: Vec<Rational>,
}

fn check_module(weights: &[i64], e: &Matrix, f: &Matrix) -> Result<()> {
    let n = weights.len();
    if e.len() != n || f.len() != n || e.iter().chain(f).any(|r| r.len() != n) {
        return Err(Error::Dimension("action matrices must be square".into()));
    }
    for i in 0..n {
        for j in 0..n {
            if !e[i][j].is_zero() && weights[i] != weights[j] + 2 {
                return Err(Error::Invalid(format!("e does not raise weight at ({i},{j})")));
            }
            if !f[i][j].is_zero() && weights[i] != weights[j] - 2 {
                return Err(Error::Invalid(format!("f does not lower weight at ({i},{j})")));
            }
        }
    }
    let h = linalg::mat_sub(&linalg::mat_mul(e, f), &linalg::mat_mul(f, e));
    for i in 0..n {
        for j in 0..n {
            let want = if i == j { int(weights[i]) } else { Rational::zero() };
            if h[i][j] != want {
                return Err(Error::Invalid(format!("[e,f] differs from h at ({i},{j})")));
            }
        }
    }
    Ok(())
}

/// Name of the basis vector `u_k` in the textual syntax (`u3`, `u_m1`).
pub fn weight_label(prefix: &str, k: i64) -> String {
    if k < 0 {
        format!("{prefix}_m{}", -k)
    } else {
        format!("{prefix}{k}")
    }
}

impl RepSpace {
    /// Builds a module from explicit data, checking the sl2 relations.
    pub fn new(labels: Vec<String>, weights: Vec<i64>, e: Matrix, f: Matrix) -> Result<Self> {
        if labels.len() != weights.len() {
            return Err(Error::Dimension("labels and weights differ in length".into()));
        }
        check_module(&weights, &e, &f)?;
        Ok(RepSpace(Arc::new(RepData {
            labels,
            weights,
            e,
            f,
            kind: Construction::Restricted,
            pairs: Vec::new(),
            base: None,
        })))
    }

    fn build(
        labels: Vec<String>,
        weights: Vec<i64>,
        e: Matrix,
        f: Matrix,
        kind: Construction,
        pairs: Vec<(usize, usize)>,
        base: Option<RepSpace>,
    ) -> Result<Self> {
        check_module(&weights, &e, &f)?;
        Ok(RepSpace(Arc::new(RepData {
            labels,
            weights,
            e,
            f,
            kind,
            pairs,
            base,
        })))
    }

    pub fn dim(&self) -> usize {
        self.0.weights.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    pub fn weights(&self) -> &[i64] {
        &self.0.weights
    }

    pub fn e(&self) -> &Matrix {
        &self.0.e
    }

    pub fn f(&self) -> &Matrix {
        &self.0.f
    }

    /// `ef - fe`.
    pub fn h(&self) -> Matrix {
        linalg::mat_sub(
            &linalg::mat_mul(&self.0.e, &self.0.f),
            &linalg::mat_mul(&self.0.f, &self.0.e),
        )
    }

    pub fn kind(&self) -> &Construction {
        &self.0.kind
    }

    /// Index pairs into the base module, for products.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.0.pairs
    }

    pub fn base(&self) -> Option<&RepSpace> {
        self.0.base.as_ref()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.0.labels.iter().position(|l| l == label)
    }

    pub fn basis_vector(&self, i: usize) -> RepVector {
        let mut c = vec![Rational::zero(); self.dim()];
        c[i] = Rational::one();
        RepVector {
            space: self.clone(),
            coords: c,
        }
    }

    pub fn zero_vector(&self) -> RepVector {
        RepVector {
            space: self.clone(),
            coords: vec![Rational::zero(); self.dim()],
        }
    }

    pub fn vector(&self, coords: Vec<Rational>) -> Result<RepVector> {
        if coords.len() != self.dim() {
            return Err(Error::Dimension(format!(
                "expected {} coordinates, got {}",
                self.dim(),
                coords.len()
            )));
        }
        Ok(RepVector {
            space: self.clone(),
            coords,
        })
    }

    /// Vector from `(label, coefficient)` pairs.
    pub fn vector_from_labels(&self, terms: &[(&str, Rational)]) -> Result<RepVector> {
        let mut v = self.zero_vector();
        for (l, c) in terms {
            let i = self
                .index_of(l)
                .ok_or_else(|| Error::UnknownVariable(l.to_string()))?;
            v.coords[i] += c;
        }
        Ok(v)
    }

    /// Indices of the basis vectors of weight `wt`.
    pub fn weight_indices(&self, wt: i64) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.0.weights[i] == wt).collect()
    }

    /// The submodule spanned by `basis`, re-expressed in that basis. Fails
    /// if the span is not invariant or `basis` is dependent.
    pub fn restrict(&self, basis: &[RepVector], labels: Vec<String>) -> Result<RepSpace> {
        let k = basis.len();
        if labels.len() != k {
            return Err(Error::Dimension("one label per basis vector".into()));
        }
        let cols: Matrix = linalg::transpose(&basis.iter().map(|v| v.coords.clone()).collect());
        if linalg::rank(&cols) != k {
            return Err(Error::Invalid("restriction basis is dependent".into()));
        }
        let mut weights = Vec::with_capacity(k);
        for v in basis {
            weights.push(v.weight().ok_or_else(|| {
                Error::Invalid("restriction basis vectors must be weight vectors".into())
            })?);
        }
        let express = |op: &Matrix| -> Result<Matrix> {
            let mut out = linalg::zeros(k, k);
            for (j, v) in basis.iter().enumerate() {
                let img = linalg::mat_vec(op, &v.coords);
                let x = linalg::solve(&cols, &img)
                    .ok_or_else(|| Error::Invalid("span is not invariant".into()))?;
                for i in 0..k {
                    out[i][j] = x[i].clone();
                }
            }
            Ok(out)
        };
        let e = express(&self.0.e)?;
        let f = express(&self.0.f)?;
        RepSpace::build(labels, weights, e, f, Construction::Restricted, Vec::new(), None)
    }
}

impl fmt::Display for RepSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.labels.join(", "))
    }
}

/// `W_d` with basis `u_d, u_{d-2}, …, u_{-d}`:
/// `e·u_{d-2i} = i·u_{d-2i+2}` and `f·u_{d-2i} = (d-i)·u_{d-2i-2}`.
pub fn sym_power_std(d: u32) -> RepSpace {
    let n = d as usize + 1;
    let mut e = linalg::zeros(n, n);
    let mut f = linalg::zeros(n, n);
    for i in 0..n {
        if i > 0 {
            e[i - 1][i] = int(i as i64);
        }
        if i + 1 < n {
            f[i + 1][i] = int(d as i64 - i as i64);
        }
    }
    let weights: Vec<i64> = (0..n).map(|i| d as i64 - 2 * i as i64).collect();
    let labels = weights.iter().map(|&k| weight_label("u", k)).collect();
    RepSpace::build(labels, weights, e, f, Construction::Standard(d), Vec::new(), None)
        .expect("standard module satisfies the sl2 relations")
}

/// Label of the dual basis vector: `u3 ↦ us3`, `w_m2 ↦ ws_m2`.
fn dual_label(l: &str) -> String {
    match l.find(|c: char| c.is_ascii_digit() || c == '_') {
        Some(p) => format!("{}s{}", &l[..p], &l[p..]),
        None => format!("{l}s"),
    }
}

/// The dual module with basis dual to that of `v`.
pub fn dual(v: &RepSpace, conv: DualConvention) -> RepSpace {
    let sign = match conv {
        DualConvention::Transpose => Rational::one(),
        DualConvention::Contragredient => -Rational::one(),
    };
    let tr = |m: &Matrix| -> Matrix {
        linalg::transpose(m)
            .into_iter()
            .map(|r| r.into_iter().map(|x| x * &sign).collect())
            .collect()
    };
    let labels = v.labels().iter().map(|l| dual_label(l)).collect();
    let weights = v.weights().iter().map(|w| -w).collect();
    RepSpace::build(
        labels,
        weights,
        tr(v.e()),
        tr(v.f()),
        Construction::Dual(conv),
        Vec::new(),
        Some(v.clone()),
    )
    .expect("dual of a module is a module")
}

/// Induced action on a product basis: `g·(x_i x_j) = (g·x_i) x_j + x_i (g·x_j)`
/// where `slot` maps an index pair to a basis index and a sign.
fn product_action(
    base: &Matrix,
    pairs: &[(usize, usize)],
    slot: &dyn Fn(usize, usize) -> Option<(usize, Rational)>,
) -> Matrix {
    let n = pairs.len();
    let mut out = linalg::zeros(n, n);
    for (col, &(i, j)) in pairs.iter().enumerate() {
        for (k, row) in base.iter().enumerate() {
            if !row[i].is_zero() {
                if let Some((t, s)) = slot(k, j) {
                    out[t][col] += &row[i] * s;
                }
            }
            if !row[j].is_zero() {
                if let Some((t, s)) = slot(i, k) {
                    out[t][col] += &row[j] * s;
                }
            }
        }
    }
    out
}

/// `Sym² V` with basis `v_i v_j`, `i ≤ j`, in lexicographic order.
pub fn sym2(v: &RepSpace) -> RepSpace {
    let n = v.dim();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let index: HashMap<(usize, usize), usize> =
        pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let slot = |a: usize, b: usize| Some((index[&(a.min(b), a.max(b))], Rational::one()));
    let e = product_action(v.e(), &pairs, &slot);
    let f = product_action(v.f(), &pairs, &slot);
    let labels = pairs
        .iter()
        .map(|&(i, j)| {
            if i == j {
                format!("{}^2", v.labels()[i])
            } else {
                format!("{}*{}", v.labels()[i], v.labels()[j])
            }
        })
        .collect();
    let weights = pairs
        .iter()
        .map(|&(i, j)| v.weights()[i] + v.weights()[j])
        .collect();
    RepSpace::build(labels, weights, e, f, Construction::Sym2, pairs, Some(v.clone()))
        .expect("symmetric square of a module is a module")
}

/// `∧² V` with basis `v_i ∧ v_j`, `i < j`, in lexicographic order.
pub fn wedge2(v: &RepSpace) -> RepSpace {
    let n = v.dim();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let index: HashMap<(usize, usize), usize> =
        pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let slot = |a: usize, b: usize| match a.cmp(&b) {
        std::cmp::Ordering::Less => Some((index[&(a, b)], Rational::one())),
        std::cmp::Ordering::Greater => Some((index[&(b, a)], -Rational::one())),
        std::cmp::Ordering::Equal => None,
    };
    let e = product_action(v.e(), &pairs, &slot);
    let f = product_action(v.f(), &pairs, &slot);
    let labels = pairs
        .iter()
        .map(|&(i, j)| format!("{}^{}", v.labels()[i], v.labels()[j]))
        .collect();
    let weights = pairs
        .iter()
        .map(|&(i, j)| v.weights()[i] + v.weights()[j])
        .collect();
    RepSpace::build(labels, weights, e, f, Construction::Wedge2, pairs, Some(v.clone()))
        .expect("exterior square of a module is a module")
}

/// `V ⊗ W` with basis `v_i ⊗ w_j` in lexicographic order.
pub fn tensor(v: &RepSpace, w: &RepSpace) -> RepSpace {
    let (n, m) = (v.dim(), w.dim());
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..m).map(move |j| (i, j))).collect();
    let dim = n * m;
    let act = |a: &Matrix, b: &Matrix| -> Matrix {
        let mut out = linalg::zeros(dim, dim);
        for (col, &(i, j)) in pairs.iter().enumerate() {
            for k in 0..n {
                if !a[k][i].is_zero() {
                    out[k * m + j][col] += &a[k][i];
                }
            }
            for k in 0..m {
                if !b[k][j].is_zero() {
                    out[i * m + k][col] += &b[k][j];
                }
            }
        }
        out
    };
    let e = act(v.e(), w.e());
    let f = act(v.f(), w.f());
    let labels = pairs
        .iter()
        .map(|&(i, j)| format!("{}(x){}", v.labels()[i], w.labels()[j]))
        .collect();
    let weights = pairs
        .iter()
        .map(|&(i, j)| v.weights()[i] + w.weights()[j])
        .collect();
    RepSpace::build(labels, weights, e, f, Construction::Tensor, pairs.clone(), None)
        .expect("tensor product of modules is a module")
}

/// The constructions of [`construct`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstructionKind {
    Dual(DualConvention),
    Sym2,
    Wedge2,
    Tensor,
}

/// Derived module from one base (two for `Tensor`).
pub fn construct(bases: &[&RepSpace], kind: ConstructionKind) -> Result<RepSpace> {
    match (kind, bases) {
        (ConstructionKind::Dual(c), [v]) => Ok(dual(v, c)),
        (ConstructionKind::Sym2, [v]) => Ok(sym2(v)),
        (ConstructionKind::Wedge2, [v]) => Ok(wedge2(v)),
        (ConstructionKind::Tensor, [v, w]) => Ok(tensor(v, w)),
        _ => Err(Error::Dimension("wrong number of base modules".into())),
    }
}

impl RepVector {
    pub fn space(&self) -> &RepSpace {
        &self.space
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn coefficient(&self, label: &str) -> Option<&Rational> {
        self.space.index_of(label).map(|i| &self.coords[i])
    }

    /// The common weight of the nonzero coordinates, if there is one.
    pub fn weight(&self) -> Option<i64> {
        let mut w = None;
        for (c, &k) in self.coords.iter().zip(self.space.weights()) {
            if c.is_zero() {
                continue;
            }
            match w {
                None => w = Some(k),
                Some(x) if x != k => return None,
                _ => {}
            }
        }
        w
    }

    fn apply(&self, m: &Matrix) -> RepVector {
        RepVector {
            space: self.space.clone(),
            coords: linalg::mat_vec(m, &self.coords),
        }
    }

    pub fn act_e(&self) -> RepVector {
        self.apply(self.space.e())
    }

    pub fn act_f(&self) -> RepVector {
        self.apply(self.space.f())
    }

    pub fn act_h(&self) -> RepVector {
        RepVector {
            space: self.space.clone(),
            coords: self
                .coords
                .iter()
                .zip(self.space.weights())
                .map(|(c, &w)| c * int(w))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> RepVector {
        RepVector {
            space: self.space.clone(),
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &RepVector) -> RepVector {
        RepVector {
            space: self.space.clone(),
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    /// `s` with `self = s · other`.
    pub fn ratio_to(&self, other: &RepVector) -> Option<Rational> {
        linalg::proportionality(&self.coords, &other.coords)
    }

    /// Rescaled so that the first nonzero coordinate is one.
    pub fn normalized(&self) -> RepVector {
        match self.coords.iter().find(|c| !c.is_zero()) {
            Some(c) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }
}

impl fmt::Display for RepVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, l) in self.coords.iter().zip(self.space.labels()) {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            if a.is_one() {
                write!(f, "{l}")?;
            } else {
                write!(f, "{}*{l}", fmt_rational(&a))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Basis of the weight-`wt` vectors killed by `e`.
pub fn highest_weight_vectors(v: &RepSpace, wt: i64) -> Vec<RepVector> {
    let idx = v.weight_indices(wt);
    if idx.is_empty() {
        return Vec::new();
    }
    let sub: Matrix = v
        .e()
        .iter()
        .map(|row| idx.iter().map(|&j| row[j].clone()).collect())
        .collect();
    linalg::nullspace(&sub, idx.len())
        .into_iter()
        .map(|x| {
            let mut c = vec![Rational::zero(); v.dim()];
            for (k, &j) in idx.iter().enumerate() {
                c[j] = x[k].clone();
            }
            RepVector {
                space: v.clone(),
                coords: c,
            }
            .normalized()
        })
        .collect()
}

/// `[v, f·v, f²·v, …]`, stopping before the first zero.
pub fn lowering_orbit(v: &RepVector) -> Vec<RepVector> {
    let mut out = Vec::new();
    let mut cur = v.clone();
    while !cur.is_zero() && out.len() <= v.space.dim() {
        let next = cur.act_f();
        out.push(cur);
        cur = next;
    }
    out
}

/// A basis of the smallest invariant subspace containing `vs`.
pub fn subrepresentation(vs: &[RepVector]) -> Vec<RepVector> {
    let mut basis: Vec<RepVector> = Vec::new();
    let mut queue: Vec<RepVector> = vs.to_vec();
    while let Some(v) = queue.pop() {
        if v.is_zero() {
            continue;
        }
        let mut rows: Vec<Vec<Rational>> = basis.iter().map(|b| b.coords.clone()).collect();
        let r0 = linalg::rank(&rows);
        rows.push(v.coords.clone());
        if linalg::rank(&rows) == r0 {
            continue;
        }
        queue.push(v.act_e());
        queue.push(v.act_f());
        basis.push(v);
    }
    basis
}

/// Dimensions of the irreducible summands, from the weight multiplicities.
pub fn irreducible_dimensions(v: &RepSpace) -> Vec<usize> {
    let mut mult: HashMap<i64, i64> = HashMap::new();
    for &w in v.weights() {
        *mult.entry(w).or_default() += 1;
    }
    let top = v.weights().iter().copied().max().unwrap_or(0);
    let mut out = Vec::new();
    let mut k = top;
    while k >= 0 {
        let here = mult.get(&k).copied().unwrap_or(0);
        let above = mult.get(&(k + 2)).copied().unwrap_or(0);
        for _ in 0..(here - above).max(0) {
            out.push(k as usize + 1);
        }
        k -= 1;
    }
    out
}

/// True when `[e, f]` equals the diagonal weight matrix.
pub fn satisfies_sl2_relations(v: &RepSpace) -> bool {
    check_module(v.weights(), v.e(), v.f()).is_ok()
}

/// Polynomial ring on the labels of a base module, for `Sym²` conversions.
pub fn base_ring(v: &RepSpace) -> Result<PolyRing> {
    let base = v
        .base()
        .ok_or_else(|| Error::Invalid("module has no base".into()))?;
    Ok(PolyRing::grevlex(base.labels()))
}

/// The quadric of a `Sym²` vector in the variables of the base module.
pub fn sym2_to_poly(v: &RepVector, ring: &PolyRing) -> Result<MultiPoly> {
    let space = v.space();
    if space.kind() != &Construction::Sym2 {
        return Err(Error::Invalid("not a symmetric square".into()));
    }
    let base = space.base().unwrap();
    let vars = base
        .labels()
        .iter()
        .map(|l| ring.var(l))
        .collect::<Result<Vec<_>>>()?;
    let mut acc = ring.zero();
    for (c, &(i, j)) in v.coords().iter().zip(space.pairs()) {
        if !c.is_zero() {
            acc = &acc + &(&vars[i] * &vars[j]).scale(c);
        }
    }
    Ok(acc)
}

/// The `Sym²` vector of a quadric in the base variables.
pub fn poly_to_sym2(space: &RepSpace, p: &MultiPoly) -> Result<RepVector> {
    if space.kind() != &Construction::Sym2 {
        return Err(Error::Invalid("not a symmetric square".into()));
    }
    let base = space.base().unwrap();
    let ring = p.ring();
    let idx = base
        .labels()
        .iter()
        .map(|l| ring.index_of(l).ok_or_else(|| Error::UnknownVariable(l.clone())))
        .collect::<Result<Vec<_>>>()?;
    let mut coords = vec![Rational::zero(); space.dim()];
    let mut seen = 0;
    for (k, &(i, j)) in space.pairs().iter().enumerate() {
        let mut e = vec![0u32; ring.nvars()];
        e[idx[i]] += 1;
        e[idx[j]] += 1;
        let c = p.coefficient(&Monomial(e));
        if !c.is_zero() {
            seen += 1;
        }
        coords[k] = c;
    }
    if seen != p.len() {
        return Err(Error::Invalid("polynomial is not a quadric in the base variables".into()));
    }
    Ok(RepVector {
        space: space.clone(),
        coords,
    })
}

/// Pairings between `Sym²(V*)` and `Sym² V`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pairing {
    /// `u*_k u*_l ⊗ u_m u_n ↦ δ / binom(2; k, l)`: 1 on squares, 1/2 on
    /// mixed monomials.
    Polar,
    /// `∂_k ∂_l (u_m u_n)`: 2 on squares, 1 on mixed monomials.
    Differential,
}

/// Subspace of `target = Sym² V` annihilated by every vector of `s ⊆ Sym²(V*)`.
pub fn apolar_annihilator(s: &[RepVector], target: &RepSpace, pairing: Pairing) -> Result<Vec<RepVector>> {
    if target.kind() != &Construction::Sym2 {
        return Err(Error::Invalid("target must be a symmetric square".into()));
    }
    for v in s {
        let sp = v.space();
        if sp.kind() != &Construction::Sym2 || sp.pairs() != target.pairs() {
            return Err(Error::Dimension("pairing needs matching Sym² bases".into()));
        }
        if !matches!(sp.base().map(|b| b.kind()), Some(Construction::Dual(_))) {
            return Err(Error::Invalid("functionals must live in Sym² of a dual".into()));
        }
    }
    let diag: Vec<Rational> = target
        .pairs()
        .iter()
        .map(|&(i, j)| match (pairing, i == j) {
            (Pairing::Polar, true) => Rational::one(),
            (Pairing::Polar, false) => Rational::new(1.into(), 2.into()),
            (Pairing::Differential, true) => int(2),
            (Pairing::Differential, false) => Rational::one(),
        })
        .collect();
    let m: Matrix = s
        .iter()
        .map(|v| v.coords().iter().zip(&diag).map(|(a, b)| a * b).collect())
        .collect();
    Ok(linalg::nullspace(&m, target.dim())
        .into_iter()
        .map(|c| RepVector {
            space: target.clone(),
            coords: c,
        })
        .collect())
}

/// The identification `6u*_{-3} = ∂_3`, `2u*_{-1} = ∂_1`, `2u*_1 = ∂_{-1}`,
/// `6u*_3 = ∂_{-3}` as `(dual label, derivative variable, scalar)`.
pub fn differential_identification() -> Vec<(String, String, Rational)> {
    vec![
        ("us_m3".into(), "u3".into(), int(6)),
        ("us_m1".into(), "u1".into(), int(2)),
        ("us1".into(), "u_m1".into(), int(2)),
        ("us3".into(), "u_m3".into(), int(6)),
    ]
}

/// True when the spans of `a` and `b` agree.
pub fn same_span(a: &[RepVector], b: &[RepVector]) -> bool {
    let ca: Vec<Vec<Rational>> = a.iter().map(|v| v.coords.clone()).collect();
    let cb: Vec<Vec<Rational>> = b.iter().map(|v| v.coords.clone()).collect();
    linalg::same_span(&ca, &cb)
}

/// Per-vector scalars `s_i` with `a_i = s_i · b_i`, or `None` if some pair
/// is not proportional.
pub fn proportional_lists(a: &[RepVector], b: &[RepVector]) -> Option<Vec<Rational>> {
    if a.len() != b.len() {
        return None;
    }
    a.iter().zip(b).map(|(x, y)| x.ratio_to(y)).collect()
}

/// `W_3` with basis `u3, u1, u_m1, u_m3`.
pub fn w3() -> RepSpace {
    sym_power_std(3)
}

/// The lowering orbit of `u3²` in `Sym² W_3`: seven vectors spanning `U_6`.
pub fn u6_orbit() -> Vec<RepVector> {
    let s = sym2(&w3());
    let top = highest_weight_vectors(&s, 6);
    lowering_orbit(&top[0])
}

/// The ordered basis `w6, …, w_m6` of `U_6` as quadrics in `u`.
pub const U6_BASIS: [&str; 7] = [
    "u3^2",
    "u3*u1",
    "3*u1^2 + 2*u3*u_m1",
    "9*u1*u_m1 + u3*u_m3",
    "3*u_m1^2 + 2*u1*u_m3",
    "u_m1*u_m3",
    "u_m3^2",
];

/// Labels `w6, w4, …, w_m6`.
pub fn u6_labels() -> Vec<String> {
    (0..7).map(|i| weight_label("w", 6 - 2 * i)).collect()
}

/// `U_6` with the action written in the basis [`U6_BASIS`].
pub fn u6_module() -> Result<RepSpace> {
    let s = sym2(&w3());
    let r = base_ring(&s)?;
    let basis = U6_BASIS
        .iter()
        .map(|t| poly_to_sym2(&s, &r.parse(t)?))
        .collect::<Result<Vec<_>>>()?;
    s.restrict(&basis, u6_labels())
}

/// The net `q ⊂ Sym²(W_3*)`: the weight-2 highest weight vector and its
/// lowering orbit.
pub fn net_q(conv: DualConvention) -> Vec<RepVector> {
    let s = sym2(&dual(&w3(), conv));
    let hw = highest_weight_vectors(&s, 2);
    lowering_orbit(&hw[0])
}

/// The alternating net `N ⊂ ∧²U_6*` as `(∧²U_6*, [g1, g2, g3])`: `g1` is the
/// weight-2 highest weight vector scaled to coefficient 3/5 on
/// `w*_m6 ∧ w*_4`, `g2 = f·g1 / 2` and `g3 = f²·g1 / 2`.
pub fn alternating_net(conv: DualConvention) -> Result<(RepSpace, Vec<RepVector>)> {
    let u6 = u6_module()?;
    let ud = dual(&u6, conv);
    let x = wedge2(&ud);
    let hw = highest_weight_vectors(&x, 2);
    if hw.len() != 1 {
        return Err(Error::Invalid(format!(
            "expected one highest weight vector of weight 2, found {}",
            hw.len()
        )));
    }
    let key = x
        .index_of("ws4^ws_m6")
        .ok_or_else(|| Error::Invalid("missing wedge label".into()))?;
    let c = &hw[0].coords()[key];
    if c.is_zero() {
        return Err(Error::Invalid("highest weight vector misses w*_m6 ∧ w*_4".into()));
    }
    // ws4^ws_m6 = -(w*_m6 ∧ w*_4)
    let g1 = hw[0].scale(&(Rational::new((-3).into(), 5.into()) / c));
    let half = Rational::new(1.into(), 2.into());
    let g2 = g1.act_f().scale(&half);
    let g3 = g1.act_f().act_f().scale(&half);
    Ok((x, vec![g1, g2, g3]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn w3_actions() {
        let w = sym_power_std(3);
        assert_eq!(w.labels(), &["u3", "u1", "u_m1", "u_m3"]);
        let u3 = w.basis_vector(0);
        assert_eq!(u3.act_f(), w.basis_vector(1).scale(&int(3)));
        assert!(u3.act_e().is_zero());
        let um1 = w.basis_vector(2);
        assert_eq!(um1.act_h(), um1.scale(&int(-1)));
    }

    #[test]
    fn dual_table() {
        let d = dual(&sym_power_std(3), DualConvention::Transpose);
        assert_eq!(d.labels(), &["us3", "us1", "us_m1", "us_m3"]);
        assert_eq!(d.weights(), &[-3, -1, 1, 3]);
        let e = |l: &str| d.basis_vector(d.index_of(l).unwrap()).act_e();
        assert_eq!(e("us3"), d.basis_vector(1));
        assert_eq!(e("us_m1"), d.basis_vector(3).scale(&int(3)));
        assert!(satisfies_sl2_relations(&d));
        let c = dual(&sym_power_std(3), DualConvention::Contragredient);
        assert!(satisfies_sl2_relations(&c));
    }

    #[test]
    fn sym2_lowering() {
        let s = sym2(&sym_power_std(3));
        assert_eq!(s.dim(), 10);
        let u3sq = s.basis_vector(s.index_of("u3^2").unwrap());
        let img = u3sq.act_f();
        assert_eq!(img.coefficient("u3*u1"), Some(&int(6)));
        assert_eq!(lowering_orbit(&u3sq).len(), 7);
        assert_eq!(irreducible_dimensions(&s), vec![7, 3]);
    }

    #[test]
    fn hwv_counts() {
        let w = sym_power_std(3);
        assert!(highest_weight_vectors(&w, 1).is_empty());
        assert_eq!(highest_weight_vectors(&w, 3).len(), 1);
        let lo = w.basis_vector(3);
        assert_eq!(lowering_orbit(&lo).len(), 1);
    }

    #[test]
    fn wedge_and_tensor_relations() {
        let w = sym_power_std(2);
        let x = wedge2(&w);
        assert!(satisfies_sl2_relations(&x));
        assert_eq!(irreducible_dimensions(&x), vec![3]);
        let t = tensor(&w, &sym_power_std(1));
        assert!(satisfies_sl2_relations(&t));
        assert_eq!(irreducible_dimensions(&t), vec![4, 2]);
    }

    #[test]
    fn quadric_round_trip() {
        let s = sym2(&sym_power_std(3));
        let r = base_ring(&s).unwrap();
        let p = r.parse("3*u1^2 + 2*u3*u_m1").unwrap();
        let v = poly_to_sym2(&s, &p).unwrap();
        assert_eq!(sym2_to_poly(&v, &r).unwrap(), p);
        assert!(poly_to_sym2(&s, &r.parse("u3").unwrap()).is_err());
    }

    #[test]
    fn restriction_of_twisted_cubic_quadrics() {
        let s = sym2(&sym_power_std(3));
        let hw = highest_weight_vectors(&s, 2);
        assert_eq!(hw.len(), 1);
        let orbit = lowering_orbit(&hw[0]);
        let labels = vec!["x".to_string(), "y".to_string(), "z".to_string()];
        let u3 = s.restrict(&orbit, labels).unwrap();
        assert_eq!(u3.weights(), &[2, 0, -2]);
        assert!(satisfies_sl2_relations(&u3));
        assert_eq!(orbit[0].ratio_to(&orbit[0].scale(&rat(1, 3))), Some(int(3)));
    }

    #[test]
    fn apolarity_extremes() {
        let w = sym_power_std(3);
        let s = sym2(&w);
        let sd = sym2(&dual(&w, DualConvention::Transpose));
        assert_eq!(apolar_annihilator(&[], &s, Pairing::Polar).unwrap().len(), 10);
        let all: Vec<RepVector> = (0..10).map(|i| sd.basis_vector(i)).collect();
        assert!(apolar_annihilator(&all, &s, Pairing::Polar).unwrap().is_empty());
    }
}
