use rustc_hash::FxHashMap as HashMap;

use super::{chi_line, Character, LineBundleSum, Monomial, VarRegistry};

/// A sum of `x^i y^j · O(d)` over the geometric registry, kept as a flat
/// integer table. The hot path of the `T^vir` sweeps: same algebra as
/// [`LineBundleSum`] without per-term allocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct XyBundle {
    terms: HashMap<(i32, i32, i64), i64>,
}

impl XyBundle {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, i: i32, j: i32, d: i64, k: i64) {
        if k != 0 {
            *self.terms.entry((i, j, d)).or_insert(0) += k;
        }
    }

    /// Adds `k · x^{di} y^{dj} · b`.
    pub fn add_twisted(&mut self, b: &XyBundle, (di, dj): (i32, i32), k: i64) {
        for (&(i, j, d), &c) in &b.terms {
            self.add_term(i + di, j + dj, d, k * c);
        }
    }

    /// Adds `k · x^{di} y^{dj} · a ⊗ b^∨`.
    pub fn add_hom(&mut self, a: &XyBundle, b: &XyBundle, (di, dj): (i32, i32), k: i64) {
        for (&(i, j, d), &c) in &a.terms {
            for (&(i2, j2, d2), &c2) in &b.terms {
                self.add_term(i - i2 + di, j - j2 + dj, d - d2, k * c * c2);
            }
        }
    }

    pub fn dual(&self) -> XyBundle {
        XyBundle {
            terms: self.terms.iter().map(|(&(i, j, d), &k)| ((-i, -j, -d), k)).collect(),
        }
    }

    /// Keeps the summands with `i − j ≡ 0 mod m`.
    pub fn gamma_invariants(&self, m: usize) -> XyBundle {
        XyBundle {
            terms: self
                .terms
                .iter()
                .filter(|(&(i, j, _), _)| (i - j).rem_euclid(m as i32) == 0)
                .map(|(&t, &k)| (t, k))
                .collect(),
        }
    }

    pub fn to_line_bundle_sum(&self) -> LineBundleSum {
        LineBundleSum::from_terms(
            &VarRegistry::geometric(),
            self.terms
                .iter()
                .map(|(&(i, j, d), &k)| (Monomial::from_exps([(0, i), (1, j)]), d, k)),
        )
    }

    /// `H^•(P¹, −)` as in [`super::hcoh_p1`]; with `normalized`, each
    /// `H^•(O(d))` is replaced by `H^•(O(d)) − 1`.
    pub fn cohomology(&self, normalized: bool) -> Character {
        let mut chis: HashMap<i64, Vec<(i64, i64)>> = HashMap::default();
        let mut acc: HashMap<(i32, i32, i32), i64> = HashMap::default();
        for (&(i, j, d), &k) in &self.terms {
            if k == 0 {
                continue;
            }
            let chi = chis.entry(d).or_insert_with(|| chi_line(d).into_iter().collect());
            for &(e, c) in chi.iter() {
                *acc.entry((i, j, e as i32)).or_insert(0) += k * c;
            }
            if normalized {
                *acc.entry((i, j, 0)).or_insert(0) -= k;
            }
        }
        Character::from_terms(
            &VarRegistry::geometric(),
            acc.into_iter()
                .filter(|&(_, k)| k != 0)
                .map(|((i, j, e), k)| (Monomial::from_exps([(0, i), (1, j), (2, e)]), k)),
        )
    }
}
