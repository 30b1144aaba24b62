use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Character, Monomial, VarRegistry};
use crate::{Error, Result};

/// The symmetrized localization weight of a virtual tangent character,
/// kept as a product so that square roots never have to be expanded:
/// a term `w` of multiplicity `k` contributes `(w^{1/2} - w^{-1/2})^{-k}`.
#[derive(Clone, Debug)]
pub struct OHat {
    reg: Arc<VarRegistry>,
    factors: Vec<(Monomial, i64)>,
}

impl OHat {
    pub fn factors(&self) -> &[(Monomial, i64)] {
        &self.factors
    }

    /// Evaluates at a point given by the square roots `s_v = v^{1/2}` of the
    /// variables; unspecified variables are set to 1. Every factor must have
    /// integral exponents.
    pub fn evaluate(&self, sqrt_point: &[(usize, BigRational)]) -> Result<BigRational> {
        let mut acc = BigRational::one();
        for (w, k) in &self.factors {
            let mut half = BigRational::one();
            for (i, e2) in w.iter() {
                if e2 % 2 != 0 {
                    return Err(Error::Precondition(format!(
                        "half-integral exponent of {} in a localization factor",
                        self.reg.name(i)
                    )));
                }
                let s = sqrt_point
                    .iter()
                    .find(|p| p.0 == i)
                    .map(|p| p.1.clone())
                    .unwrap_or_else(BigRational::one);
                if s.is_zero() {
                    return Err(Error::Singular(self.reg.name(i).to_string()));
                }
                half *= pow(&s, e2 / 2);
            }
            let f = &half - half.recip();
            if f.is_zero() {
                return Err(Error::Singular(w.display(&self.reg)));
            }
            acc *= pow(&f, -(*k as i32));
        }
        Ok(acc)
    }
}

fn pow(b: &BigRational, e: i32) -> BigRational {
    let p = num_traits::pow(b.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

/// Builds the symbolic product for `tvir`; a trivial-weight term is a fixed
/// part and must be split off by the caller.
pub fn ohat_contribution(tvir: &Character) -> Result<OHat> {
    let k = tvir.trivial_mult();
    if k != 0 {
        return Err(Error::FixedPart(k));
    }
    Ok(OHat {
        reg: tvir.registry().clone(),
        factors: tvir.terms().map(|(m, k)| (m.clone(), k)).collect(),
    })
}

/// Convenience: a rational `p/q` as a `BigRational`.
pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}
