//! Multivariate polynomials with exact rational coefficients.
//!
//! A [`PolyRing`] fixes the variable names and a monomial order. A
//! [`MultiPoly`] stores its nonzero terms sorted in decreasing order, so two
//! polynomials are equal exactly when their term lists are equal.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{fmt_rational, int, Rational};

/// Monomial orders supported by [`PolyRing`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Pure lexicographic order, first variable largest.
    Lex,
    /// Graded reverse lexicographic order.
    GrevLex,
    /// Elimination order: grevlex on the first `split` variables, ties broken
    /// by grevlex on the rest.
    Block { split: usize },
}

/// Exponent vector of fixed ring arity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(Monomial(out))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

#[derive(Debug, PartialEq, Eq, Hash)]
struct RingData {
    vars: Vec<String>,
    order: MonomialOrder,
}

/// A polynomial ring over the rationals: ordered variable names plus a
/// monomial order. Cheap to clone.
#[derive(Clone, Debug)]
pub struct PolyRing(Arc<RingData>);

impl PartialEq for PolyRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}
impl Eq for PolyRing {}

impl PolyRing {
    pub fn new<S: AsRef<str>>(vars: &[S], order: MonomialOrder) -> Result<Self> {
        let vars: Vec<String> = vars.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::DuplicateVariable(v.clone()));
            }
        }
        if let MonomialOrder::Block { split } = order {
            if split > vars.len() {
                return Err(Error::Invalid(format!(
                    "block split {split} exceeds {} variables",
                    vars.len()
                )));
            }
        }
        Ok(PolyRing(Arc::new(RingData { vars, order })))
    }

    pub fn grevlex<S: AsRef<str>>(vars: &[S]) -> Self {
        Self::new(vars, MonomialOrder::GrevLex).expect("distinct variable names")
    }

    pub fn lex<S: AsRef<str>>(vars: &[S]) -> Self {
        Self::new(vars, MonomialOrder::Lex).expect("distinct variable names")
    }

    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.0.vars
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.0.order
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.vars.iter().position(|v| v == name)
    }

    /// Same variables under another order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Self> {
        Self::new(&self.0.vars, order)
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.0.order {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::GrevLex => grevlex(&a.0, &b.0),
            MonomialOrder::Block { split } => {
                match grevlex(&a.0[..split], &b.0[..split]) {
                    Ordering::Equal => grevlex(&a.0[split..], &b.0[split..]),
                    o => o,
                }
            }
        }
    }

    pub fn var(&self, name: &str) -> Result<MultiPoly> {
        let i = self
            .index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(self.var_at(i))
    }

    pub fn var_at(&self, i: usize) -> MultiPoly {
        MultiPoly {
            ring: self.clone(),
            terms: vec![(Monomial::var(self.nvars(), i), Rational::one())],
        }
    }

    pub fn zero(&self) -> MultiPoly {
        MultiPoly {
            ring: self.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(&self) -> MultiPoly {
        self.constant(Rational::one())
    }

    pub fn constant(&self, c: Rational) -> MultiPoly {
        if c.is_zero() {
            return self.zero();
        }
        MultiPoly {
            ring: self.clone(),
            terms: vec![(Monomial::one(self.nvars()), c)],
        }
    }

    pub fn monomial(&self, m: Monomial, c: Rational) -> MultiPoly {
        assert_eq!(m.0.len(), self.nvars(), "monomial arity");
        if c.is_zero() {
            return self.zero();
        }
        MultiPoly {
            ring: self.clone(),
            terms: vec![(m, c)],
        }
    }

    pub fn parse(&self, s: &str) -> Result<MultiPoly> {
        MultiPoly::parse(self, s)
    }

    /// All monomials of total degree `d`, in decreasing ring order.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        let n = self.nvars();
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i + 1 == cur.len() {
                cur[i] = left;
                out.push(Monomial(cur.clone()));
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e;
                rec(i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        if n == 0 {
            if d == 0 {
                out.push(Monomial(vec![]));
            }
            return out;
        }
        rec(0, d, &mut cur, &mut out);
        out.sort_by(|a, b| self.cmp(b, a));
        out
    }
}

/// A polynomial over the rationals in a fixed [`PolyRing`].
#[derive(Clone, Debug)]
pub struct MultiPoly {
    ring: PolyRing,
    terms: Vec<(Monomial, Rational)>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}
impl Eq for MultiPoly {}

impl MultiPoly {
    /// Builds a polynomial from arbitrary terms, merging duplicates and
    /// dropping zeros.
    pub fn from_terms(ring: &PolyRing, terms: Vec<(Monomial, Rational)>) -> Self {
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            assert_eq!(m.0.len(), ring.nvars(), "monomial arity");
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        let mut terms: Vec<(Monomial, Rational)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        MultiPoly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Wraps terms that are already sorted, merged and nonzero.
    pub(crate) fn from_sorted(ring: &PolyRing, terms: Vec<(Monomial, Rational)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        MultiPoly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Rational)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.0[var]).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.iter().map(|(m, _)| m.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Variables that occur with positive exponent.
    pub fn support_vars(&self) -> Vec<usize> {
        let n = self.ring.nvars();
        (0..n)
            .filter(|&i| self.terms.iter().any(|(m, _)| m.0[i] > 0))
            .collect()
    }

    fn check_ring(&self, other: &MultiPoly) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn merge(&self, other: &MultiPoly, sign: bool) -> MultiPoly {
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ring.cmp(ma, mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb.clone(), if sign { cb.clone() } else { -cb }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if sign { ca + cb } else { ca - cb };
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(
            other.terms[j..]
                .iter()
                .map(|(m, c)| (m.clone(), if sign { c.clone() } else { -c })),
        );
        MultiPoly::from_sorted(ring, out)
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(self.ring.zero());
        }
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = self.ring.zero();
        for (m, c) in &small.terms {
            acc = acc.merge(&big.mul_term(c, m), true);
        }
        Ok(acc)
    }

    /// `c * m * self`; order is preserved because monomial orders are
    /// multiplicative.
    pub fn mul_term(&self, c: &Rational, m: &Monomial) -> MultiPoly {
        if c.is_zero() {
            return self.ring.zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|(t, d)| (t.mul(m), d * c))
            .collect();
        MultiPoly::from_sorted(&self.ring, terms)
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        self.mul_term(c, &Monomial::one(self.ring.nvars()))
    }

    /// Scales so the leading coefficient is 1.
    pub fn monic(&self) -> MultiPoly {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) => self.scale(&c.recip()),
        }
    }

    /// Scales by a positive rational so that all coefficients are coprime
    /// integers; keeps the sign of the leading coefficient.
    pub fn primitive(&self) -> MultiPoly {
        use num::Integer;
        if self.is_zero() {
            return self.clone();
        }
        let l = crate::rational::denominator_lcm(self.terms.iter().map(|t| &t.1));
        let scaled: Vec<num::BigInt> = self
            .terms
            .iter()
            .map(|(_, c)| (c * Rational::from_integer(l.clone())).to_integer())
            .collect();
        let g = scaled
            .iter()
            .fold(num::BigInt::zero(), |acc, v| acc.gcd(v));
        self.scale(&Rational::new(l, g))
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut result = self.ring.one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Partial derivative with respect to variable index `var`.
    pub fn derivative(&self, var: usize) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[var] > 0)
            .map(|(m, c)| {
                let mut e = m.0.clone();
                let k = e[var];
                e[var] -= 1;
                (Monomial(e), c * int(k as i64))
            })
            .collect();
        MultiPoly::from_terms(&self.ring, terms)
    }

    /// Re-expresses the polynomial in `target`, matching variables by name.
    pub fn map_into(&self, target: &PolyRing) -> Result<MultiPoly> {
        if &self.ring == target {
            return Ok(self.clone());
        }
        let idx: Vec<Option<usize>> = self
            .ring
            .vars()
            .iter()
            .map(|v| target.index_of(v))
            .collect();
        let n = target.nvars();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut e = vec![0u32; n];
            for (i, &k) in m.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                match idx[i] {
                    Some(j) => e[j] = k,
                    None => {
                        return Err(Error::UnknownVariable(self.ring.vars()[i].clone()));
                    }
                }
            }
            terms.push((Monomial(e), c.clone()));
        }
        Ok(MultiPoly::from_terms(target, terms))
    }

    /// Substitutes polynomials for variables. Variables without an entry in
    /// `sub` are mapped to the same-named variable of `target`.
    pub fn substitute(
        &self,
        sub: &HashMap<String, MultiPoly>,
        target: &PolyRing,
    ) -> Result<MultiPoly> {
        let mut images = Vec::with_capacity(self.ring.nvars());
        for (i, name) in self.ring.vars().iter().enumerate() {
            let used = self.terms.iter().any(|(m, _)| m.0[i] > 0);
            let img = match sub.get(name) {
                Some(p) => {
                    if p.ring() != target {
                        return Err(Error::RingMismatch);
                    }
                    p.clone()
                }
                None if !used => target.zero(),
                None => target.var(name)?,
            };
            images.push(img);
        }
        Ok(self.compose(&images, target))
    }

    /// Evaluates with `images[i]` substituted for variable `i`.
    pub fn compose(&self, images: &[MultiPoly], target: &PolyRing) -> MultiPoly {
        assert_eq!(images.len(), self.ring.nvars());
        let mut cache: HashMap<(usize, u32), MultiPoly> = HashMap::new();
        let mut acc = target.zero();
        for (m, c) in &self.terms {
            let mut t = target.constant(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = cache
                    .entry((i, e))
                    .or_insert_with(|| images[i].pow(e))
                    .clone();
                t = &t * &p;
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Evaluates at a rational point given in ring-variable order.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.ring.nvars());
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= num::pow(point[i].clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &MultiPoly) -> Option<MultiPoly> {
        if d.is_zero() || self.ring != d.ring {
            return None;
        }
        let (lm, lc) = d.leading_term().cloned()?;
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.leading_term().cloned() {
            let q = m.div(&lm)?;
            let qc = &c / &lc;
            rem = rem.merge(&d.mul_term(&qc, &q), false);
            quot.push((q, qc));
        }
        Some(MultiPoly::from_terms(&self.ring, quot))
    }

    /// Splits into torus-homogeneous parts, sorted by weight.
    pub fn weight_components(&self, wts: &WeightAssignment) -> Vec<(i64, MultiPoly)> {
        let mut parts: std::collections::BTreeMap<i64, Vec<(Monomial, Rational)>> =
            Default::default();
        for (m, c) in &self.terms {
            parts
                .entry(wts.monomial_weight(m))
                .or_default()
                .push((m.clone(), c.clone()));
        }
        parts
            .into_iter()
            .map(|(w, t)| (w, MultiPoly::from_sorted(&self.ring, t)))
            .collect()
    }

    pub fn parse(ring: &PolyRing, s: &str) -> Result<MultiPoly> {
        let mut p = Parser {
            ring,
            src: s.as_bytes(),
            pos: 0,
        };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(out)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl std::ops::$tr<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: &MultiPoly) -> MultiPoly {
                self.$f(rhs).expect("polynomials from the same ring")
            }
        }
        impl std::ops::$tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$f(&rhs).expect("polynomials from the same ring")
            }
        }
    };
}
binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl std::ops::Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        MultiPoly::from_sorted(&self.ring, terms)
    }
}

impl std::ops::Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

fn fmt_monomial(ring: &PolyRing, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(ring.vars()[i].clone()),
            _ => parts.push(format!("{}^{}", ring.vars()[i], e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{}", fmt_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{}", fmt_monomial(&self.ring, m))?;
            } else {
                write!(f, "{}*{}", fmt_rational(&a), fmt_monomial(&self.ring, m))?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    ring: &'a PolyRing,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.power()?;
                    if !d.is_constant() || d.is_zero() {
                        return Err(self.err("division by a non-constant or zero"));
                    }
                    let c = d.terms[0].1.clone();
                    acc = acc.scale(&c.recip());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let e: u32 = std::str::from_utf8(&self.src[start..self.pos])
                .ok()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| self.err("expected exponent"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.power()?)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let n: num::BigInt = s.parse().map_err(|_| self.err("bad integer"))?;
                Ok(self.ring.constant(Rational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                self.ring.var(name).map_err(|e| match e {
                    Error::UnknownVariable(v) => Error::Parse {
                        pos: start,
                        msg: format!("unknown variable `{v}`"),
                    },
                    other => other,
                })
            }
            _ => Err(self.err("expected a number, variable or `(`")),
        }
    }
}

/// Integer torus weights for the variables of a ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightAssignment {
    names: Vec<String>,
    weights: Vec<i64>,
}

/// Result of [`weight_of`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Weight(i64),
    Inhomogeneous,
}

impl WeightAssignment {
    /// Weights listed in ring-variable order.
    pub fn new(ring: &PolyRing, weights: Vec<i64>) -> Result<Self> {
        if weights.len() != ring.nvars() {
            return Err(Error::Dimension(format!(
                "{} weights for {} variables",
                weights.len(),
                ring.nvars()
            )));
        }
        Ok(WeightAssignment {
            names: ring.vars().to_vec(),
            weights,
        })
    }

    /// Weights given by name; must cover every variable of `ring`.
    pub fn from_map(ring: &PolyRing, map: &HashMap<String, i64>) -> Result<Self> {
        let mut weights = Vec::with_capacity(ring.nvars());
        for v in ring.vars() {
            weights.push(
                *map.get(v)
                    .ok_or_else(|| Error::UnknownVariable(v.clone()))?,
            );
        }
        Ok(WeightAssignment {
            names: ring.vars().to_vec(),
            weights,
        })
    }

    /// Restricts or reorders to the variables of `ring`, by name.
    pub fn for_ring(&self, ring: &PolyRing) -> Result<Self> {
        let map: HashMap<String, i64> = self
            .names
            .iter()
            .cloned()
            .zip(self.weights.iter().copied())
            .collect();
        Self::from_map(ring, &map)
    }

    pub fn get(&self, name: &str) -> Option<i64> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| self.weights[i])
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn monomial_weight(&self, m: &Monomial) -> i64 {
        m.0.iter()
            .zip(&self.weights)
            .map(|(&e, &w)| e as i64 * w)
            .sum()
    }
}

/// Torus weight shared by all terms of `f`.
pub fn weight_of(f: &MultiPoly, wts: &WeightAssignment) -> Result<Homogeneity> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if wts.names.as_slice() != f.ring().vars() {
        return Err(Error::RingMismatch);
    }
    let w0 = wts.monomial_weight(&f.terms[0].0);
    if f.terms.iter().all(|(m, _)| wts.monomial_weight(m) == w0) {
        Ok(Homogeneity::Weight(w0))
    } else {
        Ok(Homogeneity::Inhomogeneous)
    }
}

/// Convenience: the weight of a homogeneous nonzero polynomial, as an error
/// otherwise.
pub fn homogeneous_weight(f: &MultiPoly, wts: &WeightAssignment) -> Result<i64> {
    match weight_of(f, wts)? {
        Homogeneity::Weight(w) => Ok(w),
        Homogeneity::Inhomogeneous => Err(Error::Inhomogeneous),
    }
}
