//! Standard monomials, Stanley decompositions and Hilbert polynomials.

use std::fmt;

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{Monomial, WeightAssignment};
use crate::rational::{fmt_rational, int, Rational};

use super::GroebnerBasis;

/// The monomials `base · x^a` with `a` supported on `free`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    pub base: Monomial,
    pub free: Vec<usize>,
}

/// Splits the standard monomials of `gb` (those outside the leading-term
/// ideal) into disjoint cones.
pub fn stanley_decomposition(gb: &GroebnerBasis) -> Vec<Cone> {
    let n = gb.ring().nvars();
    let gens = gb.leading_monomials();
    let vars: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    split(&gens, &vars, Vec::new(), Monomial::one(n), &mut out);
    out
}

fn split(gens: &[Monomial], vars: &[usize], free: Vec<usize>, base: Monomial, out: &mut Vec<Cone>) {
    if gens.iter().any(|g| g.is_one()) {
        return;
    }
    let Some(&x) = vars.iter().find(|&&v| gens.iter().any(|g| g.exps()[v] > 0)) else {
        let mut f = free;
        f.extend_from_slice(vars);
        f.sort_unstable();
        out.push(Cone { base, free: f });
        return;
    };
    let rest: Vec<usize> = vars.iter().copied().filter(|&v| v != x).collect();
    let d = gens.iter().map(|g| g.exps()[x]).max().unwrap_or(0);
    let n = base.exps().len();
    for e in 0..=d {
        let sub: Vec<Monomial> = gens
            .iter()
            .filter(|g| g.exps()[x] <= e)
            .map(|g| {
                let mut v = g.exps().to_vec();
                v[x] = 0;
                Monomial(v)
            })
            .collect();
        let mut b = base.exps().to_vec();
        b[x] += e;
        let b = Monomial(b);
        debug_assert_eq!(b.exps().len(), n);
        if e < d {
            split(&sub, &rest, free.clone(), b, out);
        } else {
            let mut f = free.clone();
            f.push(x);
            split(&sub, &rest, f, b, out);
        }
    }
}

/// Univariate polynomial in `m` with rational coefficients, lowest degree
/// first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly(pub Vec<Rational>);

impl UniPoly {
    fn trimmed(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UniPoly(c)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.0.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, m: i64) -> Rational {
        let x = int(m);
        self.0
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * &x + c)
    }

    fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.0.len().max(other.0.len());
        let c = (0..n)
            .map(|i| {
                let a = self.0.get(i).cloned().unwrap_or_else(Rational::zero);
                let b = other.0.get(i).cloned().unwrap_or_else(Rational::zero);
                a + b
            })
            .collect();
        UniPoly::trimmed(c)
    }

    fn mul_linear(&self, a: &Rational, b: &Rational) -> UniPoly {
        let mut c = vec![Rational::zero(); self.0.len() + 1];
        for (i, x) in self.0.iter().enumerate() {
            c[i] += x * b;
            c[i + 1] += x * a;
        }
        UniPoly::trimmed(c)
    }

    /// `binom(m - s + k - 1, k - 1)` as a polynomial in `m`, for `k ≥ 1`.
    fn cone_count(s: i64, k: usize) -> UniPoly {
        let mut p = UniPoly(vec![Rational::one()]);
        for j in 1..k {
            let shift = int(j as i64 - s);
            p = p.mul_linear(&Rational::one(), &shift);
            p = UniPoly::trimmed(p.0.into_iter().map(|c| c / int(j as i64)).collect());
        }
        p
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "m".to_string(),
                _ => format!("m^{i}"),
            };
            if mono.is_empty() {
                write!(f, "{}", fmt_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", fmt_rational(&a))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Hilbert polynomial of `R / I` for a homogeneous ideal with the given
/// Gröbner basis (standard grading).
pub fn hilbert_polynomial(gb: &GroebnerBasis) -> UniPoly {
    let mut acc = UniPoly(Vec::new());
    for cone in stanley_decomposition(gb) {
        if cone.free.is_empty() {
            continue;
        }
        let s = cone.base.degree() as i64;
        acc = acc.add(&UniPoly::cone_count(s, cone.free.len()));
    }
    acc
}

/// Standard monomials of `gb` whose torus weight is `weight`, in decreasing
/// ring order. Fails when a cone has free variables of weight zero or of
/// both signs, since the graded piece could then be infinite.
pub fn standard_monomials_of_weight(
    gb: &GroebnerBasis,
    wts: &WeightAssignment,
    weight: i64,
) -> Result<Vec<Monomial>> {
    let ring = gb.ring();
    let w = wts.for_ring(ring)?;
    let ws = w.weights();
    let mut out = Vec::new();
    for cone in stanley_decomposition(gb) {
        let fw: Vec<i64> = cone.free.iter().map(|&i| ws[i]).collect();
        if fw.contains(&0)
            || (fw.iter().any(|&x| x > 0) && fw.iter().any(|&x| x < 0))
        {
            return Err(Error::Invalid(format!(
                "graded piece of weight {weight} is not finite"
            )));
        }
        let rem = weight - w.monomial_weight(&cone.base);
        let mut exps = cone.base.exps().to_vec();
        fill(&cone.free, &fw, 0, rem, &mut exps, &mut out);
    }
    out.sort_by(|a, b| ring.cmp(b, a));
    Ok(out)
}

fn fill(free: &[usize], fw: &[i64], k: usize, rem: i64, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if k == free.len() {
        if rem == 0 {
            out.push(Monomial(exps.clone()));
        }
        return;
    }
    let v = free[k];
    let start = exps[v];
    let mut r = rem;
    while r == 0 || r.signum() == fw[k].signum() {
        fill(free, fw, k + 1, r, exps, out);
        exps[v] += 1;
        r -= fw[k];
    }
    exps[v] = start;
}
