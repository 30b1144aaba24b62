//! Young diagrams, colorings and the m-core / m-quotient bijection.
//!
//! A cell is addressed as `(row, col)`, 0-indexed, and carries the torus
//! weight `x^col y^row`: rows extend along `x`. Its Γ-color is
//! `(col - row) mod m`, i.e. `exp_x - exp_y`.

use std::fmt;

use num_rational::Rational64;

use crate::{Error, Result};

/// A partition stored as its weakly decreasing positive parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid(format!("parts {parts:?} are not weakly decreasing")));
        }
        if parts.contains(&0) {
            return Err(Error::Invalid(format!("parts {parts:?} contain zero")));
        }
        Ok(Partition { parts })
    }

    /// Drops trailing zeros and sorts; for internal construction.
    fn normalized(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        parts.retain(|&p| p > 0);
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    /// Length of row `r` (0 beyond the last row).
    pub fn row(&self, r: usize) -> usize {
        self.parts.get(r).copied().unwrap_or(0)
    }

    /// Length of column `c`.
    pub fn col(&self, c: usize) -> usize {
        self.parts.iter().take_while(|&&p| p > c).count()
    }

    pub fn contains(&self, r: usize, c: usize) -> bool {
        c < self.row(r)
    }

    pub fn transpose(&self) -> Partition {
        let n = self.row(0);
        Partition {
            parts: (0..n).map(|c| self.col(c)).collect(),
        }
    }

    /// Cells in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
    }

    /// Arm, leg and hook length of the cell `(row, col)`.
    pub fn arm_leg_hook(&self, r: usize, c: usize) -> Result<(usize, usize, usize)> {
        if !self.contains(r, c) {
            return Err(Error::Invalid(format!("cell ({r},{c}) is outside {self}")));
        }
        let arm = self.row(r) - c - 1;
        let leg = self.col(c) - r - 1;
        Ok((arm, leg, arm + leg + 1))
    }

    /// Arm length of `(r, c)` relative to this diagram; negative outside it.
    pub fn arm_of(&self, r: usize, c: usize) -> i64 {
        self.row(r) as i64 - c as i64 - 1
    }

    /// Leg length of `(r, c)` relative to this diagram; negative outside it.
    pub fn leg_of(&self, r: usize, c: usize) -> i64 {
        self.col(c) as i64 - r as i64 - 1
    }

    /// `n(λ) = Σ_k (k - 1/2) λ_k` with 1-indexed rows.
    pub fn n_stat(&self) -> Rational64 {
        let twice: i64 = self
            .parts
            .iter()
            .enumerate()
            .map(|(k, &p)| (2 * k as i64 + 1) * p as i64)
            .sum();
        Rational64::new(twice, 2)
    }

    /// Number of cells of each color.
    pub fn color_counts(&self, m: usize) -> Vec<usize> {
        let mut counts = vec![0; m];
        for (r, c) in self.cells() {
            counts[color(c as i64, r as i64, m)] += 1;
        }
        counts
    }

    pub fn is_uniformly_colored(&self, m: usize) -> bool {
        let counts = self.color_counts(m);
        counts.iter().all(|&k| k == counts[0])
    }

    /// Beta-numbers with `b` beads: `λ_i + b - i` for `i = 1..b`.
    fn beta(&self, b: usize) -> Vec<usize> {
        (0..b).map(|i| self.row(i) + b - 1 - i).collect()
    }

    fn bead_count(&self, m: usize) -> usize {
        self.len().div_ceil(m).max(1) * m
    }

    /// The m-core: slide every bead on the m-runner abacus as far up as it
    /// goes.
    pub fn m_core(&self, m: usize) -> Partition {
        let b = self.bead_count(m);
        let mut per_runner = vec![0usize; m];
        for beta in self.beta(b) {
            per_runner[beta % m] += 1;
        }
        let mut betas: Vec<usize> = Vec::with_capacity(b);
        for (r, &k) in per_runner.iter().enumerate() {
            betas.extend((0..k).map(|p| p * m + r));
        }
        from_betas(betas)
    }

    /// The m-quotient `(q_0, …, q_{m-1})`: `q_r` is read off runner `r` of
    /// the abacus holding a multiple of `m` beads.
    pub fn m_quotient(&self, m: usize) -> MultiPartition {
        let b = self.bead_count(m);
        let mut runners: Vec<Vec<usize>> = vec![Vec::new(); m];
        for beta in self.beta(b) {
            runners[beta % m].push(beta / m);
        }
        let mut legs = vec![Partition::empty(); m];
        for (r, pos) in runners.into_iter().enumerate() {
            legs[runner_to_leg(r, m)] = from_betas(pos);
        }
        MultiPartition { legs }
    }

    /// The unique partition with empty m-core and the given m-quotient.
    pub fn from_quotient(q: &MultiPartition) -> Partition {
        let m = q.m();
        let k = q.legs.iter().map(|p| p.len()).max().unwrap_or(0).max(1);
        let mut betas = Vec::with_capacity(k * m);
        for r in 0..m {
            let leg = &q.legs[runner_to_leg(r, m)];
            betas.extend(leg.beta(k).into_iter().map(|pos| pos * m + r));
        }
        from_betas(betas)
    }
}

/// Which quotient component a runner feeds. With a multiple of `m` beads
/// the identity is the assignment under which the boxes of color `k` of
/// `λ` and of the resolved quiver data of the quotient agree on the
/// anti-diagonal torus.
fn runner_to_leg(r: usize, _m: usize) -> usize {
    r
}

/// Reads a partition off a set of beta-numbers (any bead count).
fn from_betas(mut betas: Vec<usize>) -> Partition {
    betas.sort_unstable_by(|a, b| b.cmp(a));
    let b = betas.len();
    Partition::normalized(betas.iter().enumerate().map(|(i, &beta)| beta + 1 + i - b).collect())
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", p.join(","))
    }
}

/// An m-tuple of partitions `(λ_0, …, λ_{m-1})`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiPartition {
    legs: Vec<Partition>,
}

impl MultiPartition {
    pub fn new(legs: Vec<Partition>) -> Result<Self> {
        if legs.is_empty() {
            return Err(Error::Invalid("a multipartition needs at least one component".into()));
        }
        Ok(MultiPartition { legs })
    }

    pub fn empty(m: usize) -> Self {
        MultiPartition {
            legs: vec![Partition::empty(); m.max(1)],
        }
    }

    /// `λ_a = λ` and every other leg empty.
    pub fn single(m: usize, a: usize, lambda: Partition) -> Self {
        let mut mp = Self::empty(m);
        mp.legs[a] = lambda;
        mp
    }

    pub fn m(&self) -> usize {
        self.legs.len()
    }

    pub fn legs(&self) -> &[Partition] {
        &self.legs
    }

    pub fn leg(&self, a: usize) -> &Partition {
        &self.legs[a]
    }

    pub fn size(&self) -> usize {
        self.legs.iter().map(Partition::size).sum()
    }
}

impl fmt::Display for MultiPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.legs.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", p.join(", "))
    }
}

/// Color of the weight `x^i y^j`.
pub fn color(i: i64, j: i64, m: usize) -> usize {
    (i - j).rem_euclid(m as i64) as usize
}

/// All partitions of `n`, lexicographically increasing by parts.
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in 1..=n.min(max) {
            cur.push(p);
            rec(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// All m-tuples of partitions of total size `n`, in lexicographic order.
pub fn enumerate_multipartitions(m: usize, n: usize) -> Vec<MultiPartition> {
    let tables: Vec<Vec<Partition>> = (0..=n).map(enumerate_partitions).collect();
    let mut out = Vec::new();
    let mut cur: Vec<Partition> = Vec::with_capacity(m);
    fn rec(m: usize, left: usize, tables: &[Vec<Partition>], cur: &mut Vec<Partition>, out: &mut Vec<MultiPartition>) {
        if cur.len() == m - 1 {
            for p in &tables[left] {
                cur.push(p.clone());
                out.push(MultiPartition { legs: cur.clone() });
                cur.pop();
            }
            return;
        }
        for k in 0..=left {
            for p in &tables[k] {
                cur.push(p.clone());
                rec(m, left - k, tables, cur, out);
                cur.pop();
            }
        }
    }
    if m == 0 {
        return out;
    }
    rec(m, n, &tables, &mut cur, &mut out);
    out.sort();
    out
}

/// All partitions of size at most `n`.
pub fn partitions_up_to(n: usize) -> Vec<Partition> {
    (0..=n).flat_map(enumerate_partitions).collect()
}
