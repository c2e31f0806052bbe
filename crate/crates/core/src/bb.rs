//! Poincaré polynomials from isolated torus-fixed points by the
//! Białynicki-Birula decomposition.

use std::fmt;

use crate::error::{Error, Result};

/// Tangent weights at an isolated fixed point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointRecord {
    pub label: String,
    pub weights: Vec<i64>,
}

impl FixedPointRecord {
    pub fn new(label: impl Into<String>, weights: Vec<i64>) -> Self {
        FixedPointRecord {
            label: label.into(),
            weights,
        }
    }

    pub fn dimension(&self) -> usize {
        self.weights.len()
    }

    /// Dimension of the cell flowing into the point.
    pub fn negative_count(&self) -> usize {
        self.weights.iter().filter(|&&w| w < 0).count()
    }

    fn sorted(&self) -> Vec<i64> {
        let mut w = self.weights.clone();
        w.sort_unstable();
        w
    }
}

/// Negates every weight.
pub fn weyl_mirror(r: &FixedPointRecord) -> FixedPointRecord {
    FixedPointRecord {
        label: format!("{}'", r.label),
        weights: r.weights.iter().map(|w| -w).collect(),
    }
}

/// True iff the multiset of weight multisets is closed under negation.
pub fn is_mirror_closed(records: &[FixedPointRecord]) -> bool {
    let mut a: Vec<Vec<i64>> = records.iter().map(FixedPointRecord::sorted).collect();
    let mut b: Vec<Vec<i64>> = records.iter().map(|r| weyl_mirror(r).sorted()).collect();
    a.sort();
    b.sort();
    a == b
}

/// Polynomial in `p` with nonnegative integer coefficients, constant term
/// first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoincarePolynomial(pub Vec<u64>);

impl PoincarePolynomial {
    pub fn coefficients(&self) -> &[u64] {
        &self.0
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn is_palindromic(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }
}

impl fmt::Display for PoincarePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let mono = match k {
                0 => String::new(),
                1 => "p".to_string(),
                _ => format!("p^{k}"),
            };
            match (c, mono.is_empty()) {
                (_, true) => write!(f, "{c}")?,
                (1, false) => f.write_str(&mono)?,
                _ => write!(f, "{c}{mono}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// `Σ p^{#negative weights}` over the fixed points. Fails on a zero weight,
/// since the fixed point would then not be isolated.
pub fn assemble(records: &[FixedPointRecord]) -> Result<PoincarePolynomial> {
    let mut c: Vec<u64> = Vec::new();
    for r in records {
        if r.weights.contains(&0) {
            return Err(Error::Invalid(format!("zero tangent weight at {}", r.label)));
        }
        let k = r.negative_count();
        if c.len() <= k {
            c.resize(k + 1, 0);
        }
        c[k] += 1;
    }
    Ok(PoincarePolynomial(c))
}

/// True iff every record has the expected dimension and no zero weight.
pub fn smoothness_audit(records: &[FixedPointRecord], expected_dim: usize) -> bool {
    records
        .iter()
        .all(|r| r.dimension() == expected_dim && !r.weights.contains(&0))
}
