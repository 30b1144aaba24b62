use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::registry::same;
use super::{Monomial, VarRegistry};
use crate::{Error, Result};

/// A virtual torus character: a finite sum of monomials with integer
/// multiplicities. Zero multiplicities are never stored.
#[derive(Clone, Debug)]
pub struct Character {
    reg: Arc<VarRegistry>,
    terms: BTreeMap<Monomial, i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl PartialEq for Character {
    fn eq(&self, other: &Self) -> bool {
        same(&self.reg, &other.reg) && self.terms == other.terms
    }
}

impl Eq for Character {}

impl Character {
    pub fn zero(reg: &Arc<VarRegistry>) -> Self {
        Character {
            reg: reg.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(reg: &Arc<VarRegistry>) -> Self {
        Self::monomial(reg, Monomial::one(), 1)
    }

    pub fn monomial(reg: &Arc<VarRegistry>, m: Monomial, mult: i64) -> Self {
        let mut c = Self::zero(reg);
        c.add_term(m, mult);
        c
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, i64)>>(reg: &Arc<VarRegistry>, it: I) -> Self {
        let mut c = Self::zero(reg);
        for (m, k) in it {
            c.add_term(m, k);
        }
        c
    }

    /// Parses a monomial written as `x^2 y^-1 u_1`, with `1` for the unit.
    pub fn parse_monomial(reg: &VarRegistry, s: &str) -> Result<Monomial> {
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(Monomial::one());
        }
        let mut pairs = Vec::new();
        for tok in s.split_whitespace() {
            let (name, e) = match tok.split_once('^') {
                Some((n, e)) => (n, e.trim_matches(|c| c == '(' || c == ')')),
                None => (tok, "1"),
            };
            let e2 = match e.split_once('/') {
                Some((p, "2")) => p.parse::<i32>().map_err(|_| Error::Invalid(tok.into()))?,
                Some(_) => return Err(Error::Invalid(tok.into())),
                None => 2 * e.parse::<i32>().map_err(|_| Error::Invalid(tok.into()))?,
            };
            pairs.push((reg.require(name)?, e2));
        }
        Ok(Monomial::from_exps2(pairs))
    }

    pub fn registry(&self) -> &Arc<VarRegistry> {
        &self.reg
    }

    pub fn add_term(&mut self, m: Monomial, mult: i64) {
        if mult == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
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

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, i64)> {
        self.terms.iter().map(|(m, &k)| (m, k))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn mult(&self, m: &Monomial) -> i64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    /// Multiplicity of the trivial weight.
    pub fn trivial_mult(&self) -> i64 {
        self.mult(&Monomial::one())
    }

    /// Virtual rank: the sum of multiplicities.
    pub fn rank(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn arith(&self, other: &Character, op: ArithOp) -> Result<Character> {
        if !same(&self.reg, &other.reg) {
            return Err(Error::RegistryMismatch);
        }
        let mut out = self.clone();
        match op {
            ArithOp::Add => {
                for (m, k) in other.terms() {
                    out.add_term(m.clone(), k);
                }
            }
            ArithOp::Sub => {
                for (m, k) in other.terms() {
                    out.add_term(m.clone(), -k);
                }
            }
            ArithOp::Mul => {
                let mut acc: BTreeMap<Monomial, i64> = BTreeMap::new();
                for (a, ka) in self.terms() {
                    for (b, kb) in other.terms() {
                        *acc.entry(a.mul(b)).or_insert(0) += ka * kb;
                    }
                }
                acc.retain(|_, v| *v != 0);
                out.terms = acc;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: i64) -> Character {
        let mut out = Self::zero(&self.reg);
        if k != 0 {
            out.terms = self.terms.iter().map(|(m, v)| (m.clone(), v * k)).collect();
        }
        out
    }

    /// Multiplies every term by a monomial.
    pub fn shift(&self, w: &Monomial) -> Character {
        Character {
            reg: self.reg.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.mul(w), *v)).collect(),
        }
    }

    /// Inverts every monomial.
    pub fn dual(&self) -> Character {
        Character {
            reg: self.reg.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.inv(), *v)).collect(),
        }
    }

    /// Keeps the terms satisfying `keep`.
    pub fn filter<F: Fn(&Monomial) -> bool>(&self, keep: F) -> Character {
        Character {
            reg: self.reg.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, v)| (m.clone(), *v))
                .collect(),
        }
    }

    /// Rewrites every term through `f`, possibly into another registry.
    pub fn map_monomials<F: FnMut(&Monomial) -> Result<Monomial>>(
        &self,
        target: &Arc<VarRegistry>,
        mut f: F,
    ) -> Result<Character> {
        let mut out = Character::zero(target);
        for (m, k) in self.terms() {
            out.add_term(f(m)?, k);
        }
        Ok(out)
    }

    /// Substitutes every variable of this character by a monomial in the
    /// target registry. Variables missing from `subst` are an error unless
    /// their exponent is zero.
    pub fn substitute(&self, target: &Arc<VarRegistry>, subst: &[(usize, Monomial)]) -> Result<Character> {
        self.map_monomials(target, |m| {
            let mut out = Monomial::one();
            for (i, e2) in m.iter() {
                let img = subst
                    .iter()
                    .find(|p| p.0 == i)
                    .map(|p| &p.1)
                    .ok_or_else(|| Error::UnknownVariable(self.reg.name(i).to_string()))?;
                if e2 % 2 == 0 {
                    out = out.mul(&img.pow(e2 / 2));
                } else if img.iter().all(|(_, f)| f % 2 == 0) {
                    let half = Monomial::from_exps2(img.iter().map(|(j, f)| (j, f / 2)));
                    out = out.mul(&half.pow(e2));
                } else {
                    return Err(Error::Precondition(format!(
                        "cannot take a square root while substituting {}",
                        self.reg.name(i)
                    )));
                }
            }
            Ok(out)
        })
    }
}

impl fmt::Display for Character {
    /// Terms in monomial order, e.g. `x^-1 + 2 y - z`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, k)) in self.terms().enumerate() {
            let mono = m.display(&self.reg);
            let sign = if k < 0 { "-" } else { "+" };
            if n == 0 {
                if k < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match (k.abs(), m.is_one()) {
                (1, _) => write!(f, "{mono}")?,
                (a, true) => write!(f, "{a}")?,
                (a, false) => write!(f, "{a} {mono}")?,
            }
        }
        Ok(())
    }
}

macro_rules! forward_op {
    ($tr:ident, $method:ident, $op:expr) => {
        impl std::ops::$tr<&Character> for &Character {
            type Output = Character;
            /// Panics on a registry mismatch; use [`Character::arith`] to
            /// handle that case.
            fn $method(self, rhs: &Character) -> Character {
                self.arith(rhs, $op).expect("registry mismatch")
            }
        }
    };
}

forward_op!(Add, add, ArithOp::Add);
forward_op!(Sub, sub, ArithOp::Sub);
forward_op!(Mul, mul, ArithOp::Mul);

/// `char_arith` in operation form.
pub fn char_arith(a: &Character, b: &Character, op: ArithOp) -> Result<Character> {
    a.arith(b, op)
}

/// Inverts every monomial.
pub fn dual(a: &Character) -> Character {
    a.dual()
}
