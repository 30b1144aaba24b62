use std::fmt::Write;

use num_rational::Rational64;
use smallvec::SmallVec;

use super::VarRegistry;

/// A Laurent monomial with half-integer exponents, stored doubled.
///
/// Entries are sorted by variable index and never zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps2: SmallVec<[(u16, i32); 3]>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    /// `v^e` for an integer exponent.
    pub fn var(idx: usize, exp: i32) -> Self {
        Self::from_exps2([(idx, 2 * exp)])
    }

    /// Builds a monomial from (index, doubled exponent) pairs; repeated
    /// indices are summed.
    pub fn from_exps2<I: IntoIterator<Item = (usize, i32)>>(it: I) -> Self {
        let mut v: SmallVec<[(u16, i32); 3]> = it.into_iter().map(|(i, e)| (i as u16, e)).collect();
        v.sort_unstable_by_key(|p| p.0);
        let mut out: SmallVec<[(u16, i32); 3]> = SmallVec::with_capacity(v.len());
        for (i, e) in v {
            match out.last_mut() {
                Some(last) if last.0 == i => last.1 += e,
                _ => out.push((i, e)),
            }
        }
        out.retain(|p| p.1 != 0);
        Monomial { exps2: out }
    }

    /// Builds a monomial from integer exponents.
    pub fn from_exps<I: IntoIterator<Item = (usize, i32)>>(it: I) -> Self {
        Self::from_exps2(it.into_iter().map(|(i, e)| (i, 2 * e)))
    }

    pub fn is_one(&self) -> bool {
        self.exps2.is_empty()
    }

    pub fn exp2(&self, idx: usize) -> i32 {
        self.exps2.iter().find(|p| p.0 as usize == idx).map_or(0, |p| p.1)
    }

    /// The exponent as an exact rational.
    pub fn exp(&self, idx: usize) -> Rational64 {
        Rational64::new(self.exp2(idx) as i64, 2)
    }

    /// Integer exponent, or `None` when it is half-integral.
    pub fn int_exp(&self, idx: usize) -> Option<i32> {
        let e = self.exp2(idx);
        (e % 2 == 0).then_some(e / 2)
    }

    pub fn is_integral(&self) -> bool {
        self.exps2.iter().all(|p| p.1 % 2 == 0)
    }

    /// (index, doubled exponent) pairs in index order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, i32)> + '_ {
        self.exps2.iter().map(|&(i, e)| (i as usize, e))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.exps2, &other.exps2);
        let mut out: SmallVec<[(u16, i32); 3]> = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { exps2: out }
    }

    pub fn inv(&self) -> Monomial {
        Monomial {
            exps2: self.exps2.iter().map(|&(i, e)| (i, -e)).collect(),
        }
    }

    pub fn pow(&self, k: i32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial {
            exps2: self.exps2.iter().map(|&(i, e)| (i, e * k)).collect(),
        }
    }

    /// Pairing with a cocharacter given as (index, weight); uses doubled
    /// exponents, which only rescales the result by 2.
    pub fn pair2(&self, sigma: &[(usize, i64)]) -> i64 {
        sigma.iter().map(|&(i, w)| w * self.exp2(i) as i64).sum()
    }

    pub fn max_abs_exp2(&self) -> i32 {
        self.exps2.iter().map(|p| p.1.abs()).max().unwrap_or(0)
    }

    /// Human-readable form such as `x^-1 y^2 u_1^(1/2)`; `1` for the unit.
    pub fn display(&self, reg: &VarRegistry) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut s = String::new();
        for (k, (i, e)) in self.iter().enumerate() {
            if k > 0 {
                s.push(' ');
            }
            s.push_str(reg.name(i));
            match (e % 2 == 0, e / 2) {
                (true, 1) => {}
                (true, q) => write!(s, "^{q}").unwrap(),
                (false, _) => write!(s, "^({e}/2)").unwrap(),
            }
        }
        s
    }
}
