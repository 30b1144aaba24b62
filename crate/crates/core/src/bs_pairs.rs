//! The sheaf side of the dictionary: rods on the exceptional chain of
//! `A_{m-1}`, local models, the equivariant McKay transform in K-theory and
//! the π-stability conditions, checked directly on box configurations.
//!
//! Conventions (fixed by requiring that the McKay image of a labeling, its
//! stability and its curve class all agree with the quasimap side):
//!
//! | hook square of `hk_a`   | exceptional curve | rod from `p_a` |
//! |-------------------------|-------------------|----------------|
//! | color 0 (origin)        | —                 | column box     |
//! | x-arm color `c ≤ a`     | `E_c`             | leftward       |
//! | y-arm color `c > a`     | `E_c`             | rightward      |
//!
//! `E_c` joins `p_{c-1}` and `p_c`; its coordinate at `p_{c-1}` is
//! `x_{c-1}` and at `p_c` it is `y_c = x_{c-1}^{-1}`. A local model with
//! degrees `e⃗` has plain column boxes `z^k □` for `k ≥ -e_0`, and at each
//! level `-e_c ≤ k < -e_0` the curve `E_c` is covered by a standard rod
//! generated by `z^k □`.

use std::collections::HashMap;
use std::fmt;

use crate::charlab::{monomial_color, Character, Monomial, VarRegistry, XyBundle};
use crate::partitions::MultiPartition;
use crate::qm_components::{xy_bundles, CurveClass, HookLabeling, Labeling};
use crate::quiver_geom::{chart_coordinates, hbar, xy_exps, HookShape};
use crate::{Error, Result};

const Z: usize = 2;

/// `H¹(E, R) = 0`: every degree is at least −1, with equality at most once.
pub fn rod_in_t(d: &[i64]) -> bool {
    d.iter().all(|&x| x >= -1) && d.iter().filter(|&&x| x == -1).count() <= 1
}

/// Degrees of the maximal exposed rod of length `len`: `(−2)` for a single
/// curve, otherwise `(−1, 0, …, 0, −1)`.
pub fn exposed_rod_max(len: usize) -> Vec<i64> {
    match len {
        0 => Vec::new(),
        1 => vec![-2],
        _ => {
            let mut d = vec![0; len];
            d[0] = -1;
            d[len - 1] = -1;
            d
        }
    }
}

/// An exposed rod is admissible iff it is a subsheaf of the maximal one.
pub fn exposed_admissible(d: &[i64]) -> bool {
    d.iter().zip(exposed_rod_max(d.len())).all(|(&x, y)| x <= y)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Leftward,
    Rightward,
}

/// A line bundle on the chain `E_start ∪ … ∪ E_end`, linearized by its
/// fiber at the leftmost fixed point `p_{start-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rod {
    m: usize,
    pub start: usize,
    pub end: usize,
    pub degrees: Vec<i64>,
    pub linearization: Monomial,
}

impl Rod {
    pub fn new(m: usize, start: usize, end: usize, degrees: Vec<i64>, linearization: Monomial) -> Result<Self> {
        if start < 1 || start > end || end >= m {
            return Err(Error::Invalid(format!("rod support [{start}, {end}] outside 1..{m}")));
        }
        if degrees.len() != end - start + 1 {
            return Err(Error::Invalid(format!(
                "rod over [{start}, {end}] needs {} degrees, got {}",
                end - start + 1,
                degrees.len()
            )));
        }
        Ok(Rod {
            m,
            start,
            end,
            degrees,
            linearization,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn covers(&self, c: usize) -> bool {
        (self.start..=self.end).contains(&c)
    }

    /// Fiber at `p_p`, for `start − 1 ≤ p ≤ end`.
    pub fn linearization_at(&self, p: usize) -> Monomial {
        assert!(p + 1 >= self.start && p <= self.end, "p_{p} is not on the rod");
        let mut w = self.linearization.clone();
        for c in self.start..=p {
            let (xc, _) = chart_coordinates(self.m, c - 1);
            w = w.mul(&xc.pow(self.degrees[c - self.start] as i32));
        }
        w
    }

    /// Sections over the chart `U_a`, as a numerator over
    /// `(1 − x_a)(1 − y_a)`.
    pub fn chart_numerator(&self, a: usize) -> Character {
        let reg = VarRegistry::geometric();
        if a + 1 < self.start || a > self.end {
            return Character::zero(&reg);
        }
        let (xa, ya) = chart_coordinates(self.m, a);
        let lin = self.linearization_at(a);
        let other = if a + 1 == self.start {
            // only E_{a+1} passes through p_a, along x_a
            ya
        } else if a == self.end {
            xa
        } else {
            xa.mul(&ya)
        };
        Character::from_terms(&reg, [(lin.clone(), 1), (lin.mul(&other), -1)])
    }
}

impl fmt::Display for Rod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let reg = VarRegistry::geometric();
        let d: Vec<String> = self.degrees.iter().map(|d| d.to_string()).collect();
        write!(
            f,
            "O(E_{}..E_{}; {}) @p_{} = {}",
            self.start,
            self.end,
            d.join(","),
            self.start - 1,
            self.linearization.display(&reg)
        )
    }
}

/// A rod inside a local model: its z-level, the direction it is emitted
/// in from the column, and the fixed point of its non-exposed generator
/// (`None` for a rod detached from the column, which is entirely exposed).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlacedRod {
    pub level: i64,
    pub direction: Direction,
    pub generator: Option<usize>,
    pub rod: Rod,
}

impl PlacedRod {
    /// Degrees of the exposed part: the rod minus its generator box.
    pub fn exposed_degrees(&self) -> Vec<i64> {
        let mut d = self.rod.degrees.clone();
        match self.generator {
            Some(p) if p + 1 == self.rod.start => d[0] -= 1,
            Some(p) if p == self.rod.end => *d.last_mut().expect("non-empty") -= 1,
            Some(_) => unreachable!("generators sit at an end"),
            None => {}
        }
        d
    }
}

/// A standard rod emitted from the column at `p_a` with generator fiber
/// `gen`: rightward `(0, …, 0, −1)` over `E_{a+1}..E_{a+len}` or leftward
/// `(−1, 0, …, 0)` over `E_{a-len+1}..E_a`.
pub fn standard_rod(m: usize, a: usize, dir: Direction, len: usize, gen: &Monomial) -> Result<Rod> {
    if len == 0 {
        return Err(Error::Invalid("rods have positive length".into()));
    }
    match dir {
        Direction::Rightward => {
            let mut d = vec![0; len];
            d[len - 1] = -1;
            Rod::new(m, a + 1, a + len, d, gen.clone())
        }
        Direction::Leftward => {
            if len > a {
                return Err(Error::Invalid(format!("leftward rod of length {len} from p_{a}")));
            }
            let mut d = vec![0; len];
            d[0] = -1;
            let (xs, _) = chart_coordinates(m, a - len);
            Rod::new(m, a - len + 1, a, d, gen.mul(&xs))
        }
    }
}

/// The leftmost fiber of a rod over `[start, end]` that agrees with the
/// standard rod from `p_a` on its support.
fn restricted_rod(m: usize, a: usize, dir: Direction, start: usize, end: usize, gen: &Monomial) -> Rod {
    let full = match dir {
        Direction::Rightward => standard_rod(m, a, dir, end - a, gen),
        Direction::Leftward => standard_rod(m, a, dir, a + 1 - start, gen),
    }
    .expect("run lies on the arm");
    let lin = full.linearization_at(start - 1);
    let degrees = full.degrees[start - full.start..=end - full.start].to_vec();
    Rod::new(m, start, end, degrees, lin).expect("sub-interval")
}

/// Rods at level `k` of the column `□` at `p_a` with degrees `e`, read off
/// from which hook squares are present at that level. Runs that do not
/// reach the column are reported with no generator.
fn level_rods(m: usize, a: usize, sq: &Monomial, e: &[i64], k: i64) -> Vec<PlacedRod> {
    if k >= -e[0] {
        return Vec::new();
    }
    let gen = sq.mul(&Monomial::var(Z, k as i32));
    let present = |c: usize| e[c] >= -k;
    let mut out = Vec::new();
    let mut emit = |dir: Direction, run: (usize, usize)| {
        let (s, t) = run;
        let generator = match dir {
            Direction::Leftward if t == a => Some(a),
            Direction::Rightward if s == a + 1 => Some(a),
            _ => None,
        };
        let rod = restricted_rod(m, a, dir, s, t, &gen);
        out.push(PlacedRod {
            level: k,
            direction: dir,
            generator,
            rod,
        });
    };
    for (dir, range) in [(Direction::Leftward, 1..a + 1), (Direction::Rightward, a + 1..m)] {
        let mut run: Option<(usize, usize)> = None;
        for c in range {
            if present(c) {
                run = Some(run.map_or((c, c), |(s, _)| (s, c)));
            } else if let Some(r) = run.take() {
                emit(dir, r);
            }
        }
        if let Some(r) = run {
            emit(dir, r);
        }
    }
    out
}

/// The π-stable pair with a single leg `λ_a = □`, described by
/// `e⃗ = (e_0, …, e_{m-1})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalModel {
    pub leg: usize,
    pub anchor: (usize, usize),
    pub e: Vec<i64>,
}

impl LocalModel {
    pub fn new(leg: usize, anchor: (usize, usize), e: Vec<i64>) -> Result<Self> {
        let m = e.len();
        if leg >= m {
            return Err(Error::Invalid(format!("leg {leg} out of range for m = {m}")));
        }
        if let Some(c) = (1..m).find(|&c| e[c] < e[0]) {
            return Err(Error::Invalid(format!(
                "negative rod count e_{c} − e_0 = {}",
                e[c] - e[0]
            )));
        }
        Ok(LocalModel { leg, anchor, e })
    }

    pub fn m(&self) -> usize {
        self.e.len()
    }

    /// Global weight of `□`.
    pub fn weight(&self) -> Monomial {
        HookShape::new(self.m(), self.leg, self.anchor).square(0)
    }

    /// Lowest level of the plain column, `−e_0`.
    pub fn base_level(&self) -> i64 {
        -self.e[0]
    }

    /// Levels carrying rods, `[−max e_c, −e_0)`.
    pub fn rod_levels(&self) -> std::ops::Range<i64> {
        let top = *self.e.iter().max().expect("m ≥ 1");
        -top..-self.e[0]
    }
}

/// The standard rods of a local model, ordered by level and then leftward
/// before rightward. A box emitting both rods carries multiplicity 2.
pub fn local_model_rods(lm: &LocalModel) -> Result<Vec<PlacedRod>> {
    let (m, a) = (lm.m(), lm.leg);
    let sq = lm.weight();
    let mut out = Vec::new();
    for k in lm.rod_levels() {
        for r in level_rods(m, a, &sq, &lm.e, k) {
            if r.generator.is_none() {
                return Err(Error::Invalid(format!(
                    "e⃗ = {:?} needs a rod over E_{}..E_{} detached from the column at level {k}",
                    lm.e, r.rod.start, r.rod.end
                )));
            }
            out.push(r);
        }
    }
    Ok(out)
}

/// The K-class of the McKay image of a skyscraper: `sign · [rod]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct McKayClass {
    pub sign: i64,
    pub rod: Option<Rod>,
    /// Numerators over `(1 − x_a)(1 − y_a)` of the sections on each `U_a`.
    pub charts: Vec<Character>,
}

/// Sections on `U_a` of the image of the skyscraper `w·O_0` on `C²`, as a
/// numerator over `(1 − x_a)(1 − y_a)`: every weight `u` of the Koszul
/// resolution `w(1 − x)(1 − y)` is matched with the square of `hk_a` of the
/// same color.
pub fn mckay_chart_numerator(w: &Monomial, m: usize, a: usize) -> Result<Character> {
    let reg = VarRegistry::geometric();
    let hook = HookShape::new(m, a, (0, 0));
    let mut out = Character::zero(&reg);
    for (dx, dy, s) in [(0, 0, 1), (1, 0, -1), (0, 1, -1), (1, 1, 1)] {
        let u = w.mul(&Monomial::from_exps([(0, dx), (1, dy)]));
        let c = monomial_color(&reg, &u, m)?;
        out.add_term(u.mul(&hook.square(c).inv()), s);
    }
    Ok(out)
}

/// Image of the skyscraper at the origin in the color-`k` representation:
/// `−[O_E(−2)]` linearized by `x_0` at `p_0` for `k = 0`, and
/// `[O_{E_k}(−1)]` linearized by `x_k` at `p_k` otherwise. The skyscraper
/// weights are `1` and `x^k x_k` respectively. For `m = 1` the transform is
/// the identity and no rod appears.
pub fn mckay_skyscraper(k: usize, m: usize) -> Result<McKayClass> {
    if m == 0 || k >= m {
        return Err(Error::Invalid(format!("color {k} out of range for m = {m}")));
    }
    let reg = VarRegistry::geometric();
    if m == 1 {
        let (x0, y0) = chart_coordinates(1, 0);
        let one = Monomial::one();
        let chart = Character::from_terms(
            &reg,
            [(one.clone(), 1), (x0.clone(), -1), (y0.clone(), -1), (x0.mul(&y0), 1)],
        );
        return Ok(McKayClass {
            sign: 1,
            rod: None,
            charts: vec![chart],
        });
    }
    let (sign, rod) = if k == 0 {
        let d = if m == 2 { vec![-2] } else { exposed_rod_max(m - 1) };
        (-1, Rod::new(m, 1, m - 1, d, chart_coordinates(m, 0).0)?)
    } else {
        let (xk, _) = chart_coordinates(m, k);
        let (xprev, _) = chart_coordinates(m, k - 1);
        // fiber x_k at p_k, degree −1 on E_k
        (1, Rod::new(m, k, k, vec![-1], xk.mul(&xprev))?)
    };
    let charts = (0..m).map(|a| rod.chart_numerator(a).scale(sign)).collect();
    Ok(McKayClass {
        sign,
        rod: Some(rod),
        charts,
    })
}

/// One column of a fixed π-stable pair: the local model at `□ ∈ λ_a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Column {
    pub model: LocalModel,
    pub rods: Vec<PlacedRod>,
}

/// Box-and-rod description of a fixed π-stable pair, assembled from its
/// local models.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SheafDescription {
    pub m: usize,
    pub legs: MultiPartition,
    pub columns: Vec<Column>,
}

impl SheafDescription {
    /// Sections on `U_a` minus those of the bare legs `O_C`, as a numerator
    /// over `(1 − x_a)(1 − y_a)`. Finite: leg tails cancel.
    pub fn chart_numerator(&self, a: usize) -> Character {
        let reg = VarRegistry::geometric();
        let (xa, ya) = chart_coordinates(self.m, a);
        let koszul = Character::from_terms(
            &reg,
            [
                (Monomial::one(), 1),
                (xa.clone(), -1),
                (ya.clone(), -1),
                (xa.mul(&ya), 1),
            ],
        );
        let mut out = Character::zero(&reg);
        for col in &self.columns {
            for r in &col.rods {
                out = &out + &r.rod.chart_numerator(a);
            }
            if col.model.leg != a {
                continue;
            }
            let sq = col.model.weight();
            let base = col.model.base_level();
            let (range, sign) = if base < 0 { (base..0, 1) } else { (0..base, -1) };
            for k in range {
                let w = sq.mul(&Monomial::var(Z, k as i32));
                out = &out + &koszul.shift(&w).scale(sign);
            }
        }
        out
    }

    pub fn rods(&self) -> impl Iterator<Item = &PlacedRod> {
        self.columns.iter().flat_map(|c| c.rods.iter())
    }
}

impl fmt::Display for SheafDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "legs {}", self.legs)?;
        for col in &self.columns {
            let lm = &col.model;
            writeln!(
                f,
                "column leg {} at {:?}: e = {:?}, plain from z^{}",
                lm.leg,
                lm.anchor,
                lm.e,
                lm.base_level()
            )?;
            for r in &col.rods {
                let dir = match r.direction {
                    Direction::Leftward => "left ",
                    Direction::Rightward => "right",
                };
                writeln!(f, "  z^{:<3} {dir} {}", r.level, r.rod)?;
            }
        }
        Ok(())
    }
}

/// The McKay image of a stable labeling: `e⃗^□ = d⃗^□` for every hook.
pub fn mckay_labeling_to_sheaf(l: &HookLabeling) -> Result<SheafDescription> {
    if !pi_stability_check(l) {
        return Err(Error::Precondition("labeling is not stable".into()));
    }
    let m = l.m();
    let mut columns = Vec::new();
    for (h, hook) in l.hooks().iter().enumerate() {
        let model = LocalModel::new(hook.leg, hook.anchor, l.by_color(h).to_vec())?;
        let rods = local_model_rods(&model)?;
        columns.push(Column { model, rods });
    }
    Ok(SheafDescription {
        m,
        legs: l.target().clone(),
        columns,
    })
}

/// `(n, β⃗)`: `n` is the renormalized box count `Σ e_0^□` and `β_c` counts
/// rods over `E_c`.
pub fn curve_class_from_sheaf(s: &SheafDescription) -> CurveClass {
    let n = s.columns.iter().map(|c| c.model.e[0]).sum();
    let beta = (1..s.m)
        .map(|c| s.rods().filter(|r| r.rod.covers(c)).count() as i64)
        .collect();
    CurveClass { n, beta }
}

/// `H^•((V + V^∨/xy − V V^∨ (1−x)(1−y)/xy)^Γ)` for the bundle `V` of all
/// labeled hook squares.
pub fn tvir_bs(l: &HookLabeling) -> Character {
    let mut v = XyBundle::new();
    for b in xy_bundles(l) {
        v.add_twisted(&b, (0, 0), 1);
    }
    let (hx, hy) = xy_exps(&hbar());
    let hb = (hx as i32, hy as i32);
    let mut t = v.clone();
    t.add_twisted(&v.dual(), hb, 1);
    for (shift, k) in [(hb, -1), ((-1, 0), 1), ((0, -1), 1), ((0, 0), -1)] {
        t.add_hom(&v, &v, shift, k);
    }
    t.gamma_invariants(l.m()).cohomology(false)
}

/// What a column looks like at one z-level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slice {
    Plain,
    /// Lengths of the leftward and rightward rods generated here.
    Rods(usize, usize),
}

impl Slice {
    fn at(e: &[i64], a: usize, k: i64) -> Slice {
        let m = e.len();
        if k >= -e[0] {
            return Slice::Plain;
        }
        let l = (1..=a).filter(|&c| e[c] >= -k).count();
        let r = (a + 1..m).filter(|&c| e[c] >= -k).count();
        Slice::Rods(l, r)
    }

    /// Number of x-arm squares present, counting the column box as the
    /// last one.
    fn xtail(self, a: usize) -> usize {
        match self {
            Slice::Plain => a + 1,
            Slice::Rods(l, _) => l,
        }
    }

    fn ytail(self, a: usize, m: usize) -> usize {
        match self {
            Slice::Plain => m - a,
            Slice::Rods(_, r) => r,
        }
    }

    /// Is the box `x^a □` (the tip of the x-arm) present?
    fn xtip(self, a: usize) -> bool {
        self == Slice::Plain || (a >= 1 && self.xtail(a) >= 1)
    }

    /// Is the box `y^{m-a-1} □` (the top of the y-arm) present?
    fn ytop(self, a: usize, m: usize) -> bool {
        self == Slice::Plain || (a + 2 <= m && self.ytail(a, m) >= 1)
    }
}

/// The π-stability conditions evaluated on the box configuration with
/// `e⃗^□ = d⃗^□`:
///
/// * every local model has non-negative rod counts, every rod it emits is
///   in `T` and every exposed part is bounded by [`exposed_rod_max`], with
///   rod lengths non-decreasing in the level;
/// * neighbouring columns form an `O_Y`-module: whatever `x_a`, `y_a` or
///   `x_a y_a` carries a box to must be present;
/// * `O_C` includes into the pair: each leg's corner column contains `z^0`.
pub fn pi_stability_check(l: &HookLabeling) -> bool {
    let m = l.m();
    let hooks = l.hooks();
    let es: Vec<&[i64]> = (0..hooks.len()).map(|h| l.by_color(h)).collect();
    let (lo, hi) = match l.labels().iter().copied().fold(None, |acc: Option<(i64, i64)>, d| {
        Some(acc.map_or((d, d), |(a, b)| (a.min(d), b.max(d))))
    }) {
        Some(r) => r,
        None => return true,
    };
    let levels = -hi - 1..=-lo + 1;

    for (hook, e) in hooks.iter().zip(&es) {
        let a = hook.leg;
        if e.iter().any(|&c| c < e[0]) {
            return false;
        }
        let sq = hook.square(0);
        let mut prev: Option<(usize, usize)> = None;
        for k in levels.clone() {
            let rods = level_rods(m, a, &sq, e, k);
            for r in &rods {
                if !rod_in_t(&r.rod.degrees) || !exposed_admissible(&r.exposed_degrees()) {
                    return false;
                }
            }
            let len = |d: Direction| {
                rods.iter()
                    .filter(|r| r.direction == d)
                    .map(|r| r.rod.len())
                    .sum::<usize>()
            };
            let now = (len(Direction::Leftward), len(Direction::Rightward));
            if k < -e[0] {
                if let Some(p) = prev {
                    if now.0 < p.0 || now.1 < p.1 {
                        return false;
                    }
                }
                prev = Some(now);
            }
        }
        if hook.is_origin() && e[0] < 0 {
            return false;
        }
    }

    let index: HashMap<(usize, (usize, usize)), usize> = hooks
        .iter()
        .enumerate()
        .map(|(h, hk)| ((hk.leg, hk.anchor), h))
        .collect();
    for (h, hook) in hooks.iter().enumerate() {
        let a = hook.leg;
        let (r, c) = hook.anchor;
        let right = index.get(&(a, (r, c + 1))).copied();
        let up = index.get(&(a, (r + 1, c))).copied();
        let diag = index.get(&(a, (r + 1, c + 1))).copied();
        for k in levels.clone() {
            let s = Slice::at(es[h], a, k);
            if let Some(g) = right {
                if s.xtip(a) && !Slice::at(es[g], a, k).ytop(a, m) {
                    return false;
                }
            }
            if let Some(g) = up {
                if s.ytop(a, m) && !Slice::at(es[g], a, k).xtip(a) {
                    return false;
                }
            }
            if let (Some(g), true) = (diag, m >= 2) {
                let t = Slice::at(es[g], a, k);
                let (xs, ys) = (s.xtail(a), s.ytail(a, m));
                if a >= 1 && xs >= 1 && t.xtail(a) < (xs + 1).min(a + 1) {
                    return false;
                }
                if a + 1 < m && ys >= 1 && t.ytail(a, m) < (ys + 1).min(m - a) {
                    return false;
                }
            }
        }
    }
    true
}
