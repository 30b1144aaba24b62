use std::collections::BTreeMap;
use std::sync::Arc;

use super::registry::same;
use super::{Character, Monomial, VarRegistry};
use crate::{Error, Result};

/// A finite sum of T-equivariant line bundles `w · O(d)` on P¹, where `O(d)`
/// carries the canonical linearization (weight `z^{-d}` at 0, trivial at ∞)
/// and `w` is a weight of the remaining torus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineBundleSum {
    reg: Arc<VarRegistry>,
    terms: BTreeMap<(Monomial, i64), i64>,
}

impl LineBundleSum {
    pub fn zero(reg: &Arc<VarRegistry>) -> Self {
        LineBundleSum {
            reg: reg.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, i64, i64)>>(reg: &Arc<VarRegistry>, it: I) -> Self {
        let mut b = Self::zero(reg);
        for (w, d, k) in it {
            b.add_term(w, d, k);
        }
        b
    }

    /// Degree-zero bundles with the weights of a character.
    pub fn trivial(c: &Character) -> Self {
        Self::from_terms(c.registry(), c.terms().map(|(m, k)| (m.clone(), 0, k)))
    }

    pub fn registry(&self) -> &Arc<VarRegistry> {
        &self.reg
    }

    pub fn add_term(&mut self, w: Monomial, d: i64, mult: i64) {
        if mult == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((w, d)) {
            Entry::Vacant(v) => {
                v.insert(mult);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += mult;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, i64, i64)> {
        self.terms.iter().map(|((w, d), k)| (w, *d, *k))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check(&self, o: &Self) -> Result<()> {
        if same(&self.reg, &o.reg) {
            Ok(())
        } else {
            Err(Error::RegistryMismatch)
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut out = self.clone();
        for (w, d, k) in o.terms() {
            out.add_term(w.clone(), d, k);
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut out = self.clone();
        for (w, d, k) in o.terms() {
            out.add_term(w.clone(), d, -k);
        }
        Ok(out)
    }

    /// Tensor product: `w·O(d) ⊗ w'·O(d') = ww'·O(d+d')`.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut acc: BTreeMap<(Monomial, i64), i64> = BTreeMap::new();
        for (a, da, ka) in self.terms() {
            for (b, db, kb) in o.terms() {
                *acc.entry((a.mul(b), da + db)).or_insert(0) += ka * kb;
            }
        }
        acc.retain(|_, v| *v != 0);
        Ok(LineBundleSum {
            reg: self.reg.clone(),
            terms: acc,
        })
    }

    /// Twists every summand by a degree-zero weight.
    pub fn twist(&self, w: &Monomial) -> Self {
        LineBundleSum {
            reg: self.reg.clone(),
            terms: self.terms.iter().map(|((m, d), k)| ((m.mul(w), *d), *k)).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::from_terms(&self.reg, self.terms().map(|(w, d, m)| (w.clone(), d, m * k)))
    }

    /// `(w·O(d))^∨ = w^{-1}·O(-d)`.
    pub fn dual(&self) -> Self {
        LineBundleSum {
            reg: self.reg.clone(),
            terms: self.terms.iter().map(|((m, d), k)| ((m.inv(), -*d), *k)).collect(),
        }
    }

    /// Keeps the summands whose weight satisfies `keep`.
    pub fn filter<F: Fn(&Monomial) -> bool>(&self, keep: F) -> Self {
        LineBundleSum {
            reg: self.reg.clone(),
            terms: self
                .terms
                .iter()
                .filter(|((m, _), _)| keep(m))
                .map(|(k, v)| (k.clone(), *v))
                .collect(),
        }
    }
}

/// Character of `H^•(P¹, O(d))` with the canonical linearization, in the
/// single variable `z`, as a map exponent ↦ multiplicity.
///
/// Localization gives `z^{-d}/(1-z) + 1/(1-z^{-1}) = (z^{-d} - z)/(1 - z)`;
/// the quotient is computed by exact long division.
pub fn chi_line(d: i64) -> BTreeMap<i64, i64> {
    // Numerator z^{-d} - z as a Laurent polynomial; shift to a polynomial.
    let lo = (-d).min(1);
    let mut num: Vec<i64> = vec![0; ((-d).max(1) - lo + 1) as usize];
    num[(-d - lo) as usize] += 1;
    num[(1 - lo) as usize] -= 1;
    // Divide by (1 - z), lowest degree first.
    let mut quot = vec![0i64; num.len()];
    let mut rem = num.clone();
    for i in 0..rem.len() {
        let c = rem[i];
        if c == 0 {
            continue;
        }
        quot[i] = c;
        rem[i] = 0;
        if i + 1 < rem.len() {
            rem[i + 1] += c;
        } else {
            unreachable!("(1 - z) divides z^(-d) - z");
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot.iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| (i as i64 + lo, c))
        .collect()
}

/// `H^•(P¹, b)` as a character in the registry of `b`, which must contain `z`.
pub fn hcoh_p1(b: &LineBundleSum) -> Result<Character> {
    let zi = b.registry().require("z")?;
    let mut cache: BTreeMap<i64, Vec<(Monomial, i64)>> = BTreeMap::new();
    let mut out = Character::zero(b.registry());
    for (w, d, k) in b.terms() {
        let chi = cache.entry(d).or_insert_with(|| {
            chi_line(d)
                .into_iter()
                .map(|(e, c)| (Monomial::var(zi, e as i32), c))
                .collect()
        });
        for (zm, c) in chi.iter() {
            out.add_term(w.mul(zm), k * c);
        }
    }
    Ok(out)
}
