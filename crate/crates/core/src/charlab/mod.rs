//! Exact algebra of torus characters, line bundles on P¹ and truncated
//! power series.

mod bundle;
mod character;
mod monomial;
mod ohat;
mod registry;
mod series;
mod xy;

use std::sync::Arc;

pub use bundle::{chi_line, hcoh_p1, LineBundleSum};
pub use character::{char_arith, dual, ArithOp, Character};
pub use monomial::Monomial;
pub use ohat::{ohat_contribution, rat, OHat};
pub use registry::{VarRegistry, MAX_FRAMING};
pub use series::TruncSeries;
pub use xy::XyBundle;

use crate::{Error, Result};

/// The Γ = Z/m color `exp_x - exp_y mod m` of a monomial in a registry
/// containing `x` and `y`.
pub fn monomial_color(reg: &VarRegistry, w: &Monomial, m: usize) -> Result<usize> {
    let (xi, yi) = (reg.require("x")?, reg.require("y")?);
    match (w.int_exp(xi), w.int_exp(yi)) {
        (Some(a), Some(b)) => Ok((a as i64 - b as i64).rem_euclid(m as i64) as usize),
        _ => Err(Error::Precondition("half-integral x or y exponent".into())),
    }
}

/// Keeps the Γ-invariant terms, Γ = Z/m acting by `(ξx, ξ^{-1}y)`.
pub fn gamma_invariants(a: &Character, m: usize) -> Result<Character> {
    if m == 0 {
        return Err(Error::Precondition("m must be positive".into()));
    }
    for (w, _) in a.terms() {
        monomial_color(a.registry(), w, m)?;
    }
    let reg = a.registry().clone();
    Ok(a.filter(|w| monomial_color(&reg, w, m) == Ok(0)))
}

/// The same projection on line-bundle sums.
pub fn gamma_invariants_bundle(b: &LineBundleSum, m: usize) -> Result<LineBundleSum> {
    if m == 0 {
        return Err(Error::Precondition("m must be positive".into()));
    }
    for (w, _, _) in b.terms() {
        monomial_color(b.registry(), w, m)?;
    }
    let reg = b.registry().clone();
    Ok(b.filter(|w| monomial_color(&reg, w, m) == Ok(0)))
}

/// Splits a character by the sign of its pairing with a cocharacter,
/// returning `(pos, zero, neg)`.
pub fn attracting_split(a: &Character, sigma: &[(usize, i64)]) -> (Character, Character, Character) {
    let pos = a.filter(|w| w.pair2(sigma) > 0);
    let zero = a.filter(|w| w.pair2(sigma) == 0);
    let neg = a.filter(|w| w.pair2(sigma) < 0);
    (pos, zero, neg)
}

/// A cocharacter realizing a chain `v_1 ≫ v_2 ≫ ⋯ ≫ v_k > 0` of variable
/// groups. Each group is a list of (index, sign) pairs sharing one weight;
/// group `i` gets `B^{k-i}` with `B = 1 + 2·max|exponent|` over `a`, which
/// makes the pairing order-equivalent to lexicographic comparison.
pub fn chain_cocharacter(a: &Character, groups: &[Vec<(usize, i64)>]) -> Vec<(usize, i64)> {
    let max = a.terms().map(|(w, _)| w.max_abs_exp2() as i64).max().unwrap_or(0);
    let width = groups.iter().map(|g| g.len() as i64).max().unwrap_or(1);
    // Doubled exponents and groups with several variables both enlarge the
    // per-group contribution; the base absorbs them.
    let base = 1 + 2 * max * width;
    let k = groups.len() as u32;
    let mut sigma = Vec::new();
    for (i, g) in groups.iter().enumerate() {
        let w = base.pow(k - 1 - i as u32);
        for &(idx, s) in g {
            sigma.push((idx, s * w));
        }
    }
    sigma
}

/// `S^•(a) = ∏ (1 - w)^{-mult}` truncated at `order`, with unit weights on
/// the series variables.
pub fn plethystic_exp<S: AsRef<str>>(a: &Character, series_vars: &[S], order: i64) -> Result<TruncSeries> {
    let w = vec![1; series_vars.len()];
    plethystic_exp_weighted(a, series_vars, &w, order)
}

/// [`plethystic_exp`] with a weighted grading on the series variables.
pub fn plethystic_exp_weighted<S: AsRef<str>>(
    a: &Character,
    series_vars: &[S],
    weights: &[i64],
    order: i64,
) -> Result<TruncSeries> {
    let reg = a.registry();
    let idx: Vec<usize> = series_vars
        .iter()
        .map(|v| reg.require(v.as_ref()))
        .collect::<Result<_>>()?;
    let mut acc = TruncSeries::zero_weighted(series_vars, weights, order).one_like();
    for (w, k) in a.terms() {
        let exps = series_exponents(reg, w, &idx)?;
        let factor = acc.one_minus_pow(&exps, k)?;
        acc = acc.mul(&factor)?;
    }
    Ok(acc)
}

/// Exponent vector of `w` over the series variables `idx`; fails if `w`
/// involves anything else or a half-integral power.
pub(crate) fn series_exponents(reg: &Arc<VarRegistry>, w: &Monomial, idx: &[usize]) -> Result<Vec<i64>> {
    for (i, _) in w.iter() {
        if !idx.contains(&i) {
            return Err(Error::Precondition(format!(
                "variable {} must be substituted before summation",
                reg.name(i)
            )));
        }
    }
    idx.iter()
        .map(|&i| {
            w.int_exp(i)
                .map(|e| e as i64)
                .ok_or_else(|| Error::Precondition("half-integral series exponent".into()))
        })
        .collect()
}
