use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// A multivariate series truncated at a weighted total degree.
///
/// Every variable carries a positive integer weight (1 unless stated
/// otherwise); a term's degree is the weighted sum of its exponents. Stored
/// terms have degree in `0..=order`, and the only degree-0 term that can
/// arise from products of positive-degree terms is the constant. Individual
/// exponents may be negative when the weights allow it, which is how
/// Laurent-in-one-variable series such as `Z((Q))[[A]]` are truncated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    vars: Arc<[String]>,
    weights: Arc<[i64]>,
    order: i64,
    coeffs: BTreeMap<Vec<i64>, BigRational>,
}

impl TruncSeries {
    /// The zero series with unit weights.
    pub fn zero<S: AsRef<str>>(vars: &[S], order: i64) -> Self {
        let w = vec![1; vars.len()];
        Self::zero_weighted(vars, &w, order)
    }

    pub fn zero_weighted<S: AsRef<str>>(vars: &[S], weights: &[i64], order: i64) -> Self {
        assert_eq!(vars.len(), weights.len());
        assert!(weights.iter().all(|&w| w > 0), "weights must be positive");
        TruncSeries {
            vars: vars.iter().map(|v| v.as_ref().to_string()).collect(),
            weights: weights.into(),
            order: order.max(0),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one_like(&self) -> Self {
        let mut s = self.zero_like();
        s.add_term(vec![0; self.vars.len()], BigRational::one());
        s
    }

    pub fn zero_like(&self) -> Self {
        TruncSeries {
            vars: self.vars.clone(),
            weights: self.weights.clone(),
            order: self.order,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn degree(&self, exps: &[i64]) -> i64 {
        exps.iter().zip(self.weights.iter()).map(|(e, w)| e * w).sum()
    }

    /// Adds `c · x^exps`, dropping it when its degree exceeds the order.
    /// Negative degrees are rejected.
    pub fn add_term(&mut self, exps: Vec<i64>, c: BigRational) {
        assert_eq!(exps.len(), self.vars.len());
        let d = self.degree(&exps);
        assert!(d >= 0, "negative-degree term in a truncated series");
        if d > self.order || c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_int(&mut self, exps: Vec<i64>, c: i64) {
        self.add_term(exps, BigRational::from_integer(BigInt::from(c)));
    }

    pub fn coeff(&self, exps: &[i64]) -> BigRational {
        self.coeffs.get(exps).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &BigRational)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn compatible(&self, o: &Self) -> Result<()> {
        if self.vars != o.vars || self.weights != o.weights {
            return Err(Error::Invalid("series over different variables or gradings".into()));
        }
        Ok(())
    }

    /// Re-truncates at a lower order.
    pub fn truncate(&self, order: i64) -> Self {
        let order = order.min(self.order);
        let mut out = self.zero_like();
        out.order = order;
        for (e, c) in self.terms() {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.compatible(o)?;
        let order = self.order.min(o.order);
        let mut out = self.truncate(order);
        for (e, c) in o.terms() {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.compatible(o)?;
        let order = self.order.min(o.order);
        let mut out = self.zero_like();
        out.order = order;
        let rhs: Vec<(&Vec<i64>, &BigRational, i64)> = o.terms().map(|(e, c)| (e, c, o.degree(e))).collect();
        for (ea, ca) in self.terms() {
            let da = self.degree(ea);
            if da > order {
                continue;
            }
            for &(eb, cb, db) in &rhs {
                if da + db > order {
                    continue;
                }
                let e: Vec<i64> = ea.iter().zip(eb.iter()).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        let mut out = self.zero_like();
        for (e, c) in self.terms() {
            out.add_term(e.clone(), c * k);
        }
        out
    }

    /// Multiplies by a monomial with unit coefficient; the shifted series
    /// must stay in non-negative degrees.
    pub fn shift(&self, exps: &[i64]) -> Result<Self> {
        let mut out = self.zero_like();
        for (e, c) in self.terms() {
            let f: Vec<i64> = e.iter().zip(exps).map(|(a, b)| a + b).collect();
            if self.degree(&f) < 0 {
                return Err(Error::Invalid("shift leaves the non-negative degrees".into()));
            }
            out.add_term(f, c.clone());
        }
        Ok(out)
    }

    /// `(1 - w)^(-k)` for a monomial `w` of positive degree.
    pub fn one_minus_pow(&self, exps: &[i64], k: i64) -> Result<Self> {
        let d = self.degree(exps);
        if d <= 0 {
            return Err(Error::Divergence(format!("monomial {exps:?} has degree {d}")));
        }
        let mut out = self.zero_like();
        // (1-w)^(-k) = Σ_j C(k+j-1, j) w^j for k > 0, and a finite binomial
        // expansion with alternating signs for k < 0.
        let mut coeff = BigRational::one();
        let mut j: i64 = 0;
        while j * d <= self.order {
            if coeff.is_zero() {
                break;
            }
            out.add_term(exps.iter().map(|e| e * j).collect(), coeff.clone());
            let num = BigRational::from_integer(BigInt::from(k + j));
            let den = BigRational::from_integer(BigInt::from(j + 1));
            coeff = coeff * num / den;
            j += 1;
        }
        Ok(out)
    }

    /// The same series over renamed variables.
    pub fn renamed<S: AsRef<str>>(&self, vars: &[S]) -> Result<Self> {
        if vars.len() != self.vars.len() {
            return Err(Error::Invalid("renaming changes the number of variables".into()));
        }
        let mut out = self.clone();
        out.vars = vars.iter().map(|v| v.as_ref().to_string()).collect();
        Ok(out)
    }

    /// Checks that every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    /// The terms sorted by degree, then by descending exponent vector, which
    /// puts `Q^2` before `Q A_1` before `A_1^2`.
    pub fn sorted_terms(&self) -> Vec<(&Vec<i64>, &BigRational)> {
        let mut v: Vec<_> = self.terms().collect();
        v.sort_by(|a, b| self.degree(a.0).cmp(&self.degree(b.0)).then_with(|| b.0.cmp(a.0)));
        v
    }

    pub fn monomial_string(&self, exps: &[i64]) -> String {
        let parts: Vec<String> = exps
            .iter()
            .zip(self.vars.iter())
            .filter(|(e, _)| **e != 0)
            .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            write!(f, "0")?;
        }
        for (n, (e, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mono = self.monomial_string(e);
            match (a.is_one(), mono == "1") {
                (true, _) => write!(f, "{mono}")?,
                (false, true) => write!(f, "{a}")?,
                (false, false) => write!(f, "{a} {mono}")?,
            }
        }
        write!(f, " + O(deg {})", self.order + 1)
    }
}
