//! Torus-fixed quasimap components, encoded as integer degree labelings of
//! the boxes of the quiver data.
//!
//! A label `d` on a box of weight `w` stands for the summand `w · O(d)` of
//! the quiver bundle on P¹. Resolved targets are labeled hook by hook
//! ([`HookLabeling`]); orbifold targets box by box ([`OrbifoldLabeling`]).
//! Both share one description as a list of [`Cell`]s so that stability,
//! degrees, tangent characters and enumeration are written once.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::charlab::{Character, LineBundleSum, Monomial, VarRegistry, XyBundle};
use crate::partitions::{color, MultiPartition, Partition};
use crate::quiver_geom::{hbar, resolved_hooks, xy_exps, HookShape};
use crate::{Error, Result};

/// One labeled box: its global position `x^i y^j`, its color, the summand
/// `V^{(a)}` it belongs to (`group`), and whether it is a framed origin
/// box whose label must be non-negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub pos: (i64, i64),
    pub color: usize,
    pub group: usize,
    pub framed: bool,
}

/// The poset underlying a family of labelings: `edges` lists pairs
/// `(u, v)` with `v = x·u` or `y·u` inside the same group, which stable
/// labelings must satisfy as `d_u ≤ d_v`.
#[derive(Clone, Debug)]
pub struct CellLayout {
    m: usize,
    cells: Vec<Cell>,
    edges: Vec<(usize, usize)>,
}

impl CellLayout {
    pub fn new(m: usize, cells: Vec<Cell>) -> Self {
        let mut at: HashMap<(usize, (i64, i64)), usize> = HashMap::new();
        for (k, c) in cells.iter().enumerate() {
            let prev = at.insert((c.group, c.pos), k);
            assert!(prev.is_none(), "a group of boxes must be multiplicity-free");
        }
        let mut edges = Vec::new();
        for (k, c) in cells.iter().enumerate() {
            for step in [(1, 0), (0, 1)] {
                let p = (c.pos.0 + step.0, c.pos.1 + step.1);
                if let Some(&v) = at.get(&(c.group, p)) {
                    edges.push((k, v));
                }
            }
        }
        CellLayout { m, cells, edges }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    fn is_monotone(&self, labels: &[i64]) -> bool {
        self.edges.iter().all(|&(u, v)| labels[u] <= labels[v])
    }

    fn framing_ok(&self, labels: &[i64]) -> bool {
        self.cells.iter().zip(labels).all(|(c, &d)| !c.framed || d >= 0)
    }

    fn degrees(&self, labels: &[i64]) -> Vec<i64> {
        let mut d = vec![0; self.m];
        for (c, &l) in self.cells.iter().zip(labels) {
            d[c.color] += l;
        }
        d
    }

    /// Reflexive-transitive closure: `below[v]` lists every `u ≤ v`.
    fn closure(&self) -> Vec<Vec<bool>> {
        let n = self.cells.len();
        let mut le = vec![vec![false; n]; n];
        for (i, row) in le.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(u, v) in &self.edges {
            le[u][v] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if le[i][k] {
                    let row = le[k].clone();
                    for (a, b) in le[i].iter_mut().zip(row) {
                        *a |= b;
                    }
                }
            }
        }
        le
    }
}

/// Anything that describes a labeled fixed quasimap.
pub trait Labeling {
    fn layout(&self) -> &CellLayout;
    fn labels(&self) -> &[i64];

    fn m(&self) -> usize {
        self.layout().m()
    }

    /// Weight monomial of each cell.
    fn weights(&self) -> Vec<Monomial> {
        self.layout()
            .cells()
            .iter()
            .map(|c| Monomial::from_exps([(0, c.pos.0 as i32), (1, c.pos.1 as i32)]))
            .collect()
    }
}

/// Degree labeling of the hooks of `V(λ⃗)`: `labels()[h·m + c]` is the
/// degree of the color-`c` square of hook `h`.
#[derive(Clone, Debug)]
pub struct HookLabeling {
    target: MultiPartition,
    hooks: Arc<[HookShape]>,
    layout: Arc<CellLayout>,
    labels: Vec<i64>,
}

impl PartialEq for HookLabeling {
    fn eq(&self, o: &Self) -> bool {
        self.target == o.target && self.labels == o.labels
    }
}

impl Eq for HookLabeling {}

/// The shared layout of all labelings of one resolved target.
#[derive(Clone, Debug)]
pub struct HookTarget {
    target: MultiPartition,
    hooks: Arc<[HookShape]>,
    layout: Arc<CellLayout>,
}

impl HookTarget {
    pub fn new(target: &MultiPartition) -> Self {
        let m = target.m();
        let hooks: Vec<HookShape> = resolved_hooks(target);
        let cells = hooks
            .iter()
            .flat_map(|h| {
                h.squares.iter().enumerate().map(move |(c, &pos)| Cell {
                    pos,
                    color: c,
                    group: h.leg,
                    framed: c == 0 && h.is_origin(),
                })
            })
            .collect();
        HookTarget {
            target: target.clone(),
            hooks: hooks.into(),
            layout: Arc::new(CellLayout::new(m, cells)),
        }
    }

    pub fn target(&self) -> &MultiPartition {
        &self.target
    }

    pub fn hooks(&self) -> &[HookShape] {
        &self.hooks
    }

    pub fn layout(&self) -> &CellLayout {
        &self.layout
    }

    /// Wraps flattened labels (hook-major, color-minor).
    pub fn labeling(&self, labels: Vec<i64>) -> Result<HookLabeling> {
        if labels.len() != self.layout.len() {
            return Err(Error::Invalid(format!(
                "expected {} labels, got {}",
                self.layout.len(),
                labels.len()
            )));
        }
        Ok(HookLabeling {
            target: self.target.clone(),
            hooks: self.hooks.clone(),
            layout: self.layout.clone(),
            labels,
        })
    }
}

impl HookLabeling {
    /// Builds a labeling from per-hook color vectors `d⃗^□`, hooks ordered as
    /// in [`resolved_hooks`].
    pub fn new(target: &MultiPartition, by_hook: &[Vec<i64>]) -> Result<Self> {
        let m = target.m();
        if by_hook.iter().any(|v| v.len() != m) {
            return Err(Error::Invalid(format!("every hook needs {m} labels")));
        }
        HookTarget::new(target).labeling(by_hook.concat())
    }

    pub fn zero(target: &MultiPartition) -> Self {
        let t = HookTarget::new(target);
        let n = t.layout.len();
        t.labeling(vec![0; n]).expect("sizes agree")
    }

    pub fn target(&self) -> &MultiPartition {
        &self.target
    }

    pub fn hooks(&self) -> &[HookShape] {
        &self.hooks
    }

    /// `d⃗^□` of hook `h`, indexed by color.
    pub fn by_color(&self, h: usize) -> &[i64] {
        let m = self.target.m();
        &self.labels[h * m..(h + 1) * m]
    }

    pub fn hook_vectors(&self) -> Vec<Vec<i64>> {
        (0..self.hooks.len()).map(|h| self.by_color(h).to_vec()).collect()
    }
}

impl Labeling for HookLabeling {
    fn layout(&self) -> &CellLayout {
        &self.layout
    }

    fn labels(&self) -> &[i64] {
        &self.labels
    }
}

/// Degree labeling of the boxes of a uniformly colored `λ`, for
/// `Hilb([C²/Γ])`; labels follow the row-major cell order.
#[derive(Clone, Debug)]
pub struct OrbifoldLabeling {
    lambda: Partition,
    layout: Arc<CellLayout>,
    labels: Vec<i64>,
}

impl PartialEq for OrbifoldLabeling {
    fn eq(&self, o: &Self) -> bool {
        self.lambda == o.lambda && self.m() == o.m() && self.labels == o.labels
    }
}

impl Eq for OrbifoldLabeling {}

/// Layout of the boxes of `λ` colored mod `m`, with the origin framed.
pub fn orbifold_layout(lambda: &Partition, m: usize) -> CellLayout {
    let cells = lambda
        .cells()
        .map(|(r, c)| Cell {
            pos: (c as i64, r as i64),
            color: color(c as i64, r as i64, m),
            group: 0,
            framed: (r, c) == (0, 0),
        })
        .collect();
    CellLayout::new(m, cells)
}

impl OrbifoldLabeling {
    pub fn new(lambda: &Partition, m: usize, labels: Vec<i64>) -> Result<Self> {
        if !lambda.is_uniformly_colored(m) {
            return Err(Error::Precondition(format!("{lambda} is not uniformly {m}-colored")));
        }
        if labels.len() != lambda.size() {
            return Err(Error::Invalid(format!("expected {} labels", lambda.size())));
        }
        Ok(OrbifoldLabeling {
            lambda: lambda.clone(),
            layout: Arc::new(orbifold_layout(lambda, m)),
            labels,
        })
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    /// Label of the box `(row, col)`.
    pub fn label(&self, r: usize, c: usize) -> Option<i64> {
        let k = self.lambda.cells().position(|cell| cell == (r, c))?;
        Some(self.labels[k])
    }
}

impl Labeling for OrbifoldLabeling {
    fn layout(&self) -> &CellLayout {
        &self.layout
    }

    fn labels(&self) -> &[i64] {
        &self.labels
    }
}

/// Labels weakly increase along every x- and y-step inside each `V^{(a)}`.
/// For hooks this covers the arms of a single hook as well as the
/// neighbouring hooks at `x_a□`, `y_a□` and `x_a y_a□`.
pub fn is_monotone<L: Labeling>(l: &L) -> bool {
    l.layout().is_monotone(l.labels())
}

/// Monotone, and every framed origin box has a non-negative label.
pub fn is_stable<L: Labeling>(l: &L) -> bool {
    is_monotone(l) && l.layout().framing_ok(l.labels())
}

/// `d⃗ = (deg V_0, …, deg V_{m-1})`.
pub fn degrees<L: Labeling>(l: &L) -> Vec<i64> {
    l.layout().degrees(l.labels())
}

/// Curve class `(n, β⃗)` with `n = d_0` and `β_i = d_i − d_0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveClass {
    pub n: i64,
    pub beta: Vec<i64>,
}

pub fn to_curve_class(d: &[i64]) -> CurveClass {
    let n = d.first().copied().unwrap_or(0);
    CurveClass {
        n,
        beta: d.iter().skip(1).map(|di| di - n).collect(),
    }
}

/// Inverse of [`to_curve_class`].
pub fn from_curve_class(c: &CurveClass) -> Vec<i64> {
    std::iter::once(c.n).chain(c.beta.iter().map(|b| b + c.n)).collect()
}

/// The quiver bundles `V_0, …, V_{m-1}` as sums of `w · O(d)`.
pub fn quiver_bundles<L: Labeling>(l: &L) -> Vec<LineBundleSum> {
    let reg = VarRegistry::geometric();
    let mut v = vec![LineBundleSum::zero(&reg); l.m()];
    for ((c, w), &d) in l.layout().cells().iter().zip(l.weights()).zip(l.labels()) {
        v[c.color].add_term(w, d, 1);
    }
    v
}

/// All line bundles as one sum (the bundle on the `C²` side).
pub fn total_bundle<L: Labeling>(l: &L) -> LineBundleSum {
    let reg = VarRegistry::geometric();
    let mut v = LineBundleSum::zero(&reg);
    for (w, &d) in l.weights().into_iter().zip(l.labels()) {
        v.add_term(w, d, 1);
    }
    v
}

/// `T^vir = H^•(T*(V_0 + x^{-1} Σ Hom(V_i, V_{i+1})) − (1+ħ) Σ Hom(V_i, V_i))`
/// for the trivially framed quiver bundle, unnormalized.
pub fn tvir_quasimap<L: Labeling>(l: &L) -> Character {
    quasimap_integrand(l).cohomology(false)
}

/// [`tvir_quasimap`] with every `H^•(O(n))` replaced by `H^•(O(n)) − 1`,
/// i.e. minus the tangent space at the image of `∞`. For isolated fixed
/// points its `Ô^vir` is `±1` on the Calabi–Yau locus `xyz = 1`; the
/// unnormalized character is not.
pub fn tvir_quasimap_normalized<L: Labeling>(l: &L) -> Character {
    quasimap_integrand(l).cohomology(true)
}

/// The line-bundle sum whose cohomology is [`tvir_quasimap`].
pub fn tvir_quasimap_bundle<L: Labeling>(l: &L) -> LineBundleSum {
    quasimap_integrand(l).to_line_bundle_sum()
}

/// Each cell as `x^col y^row · O(label)`, split by color.
pub(crate) fn xy_bundles<L: Labeling>(l: &L) -> Vec<XyBundle> {
    let mut v = vec![XyBundle::new(); l.m()];
    for (c, &d) in l.layout().cells().iter().zip(l.labels()) {
        v[c.color].add_term(c.pos.0 as i32, c.pos.1 as i32, d, 1);
    }
    v
}

fn quasimap_integrand<L: Labeling>(l: &L) -> XyBundle {
    let v = xy_bundles(l);
    let m = v.len();
    let hb = xy_exps(&hbar());
    let hb = (hb.0 as i32, hb.1 as i32);
    let mut defo = v[0].clone();
    let mut ends = XyBundle::new();
    for i in 0..m {
        defo.add_hom(&v[(i + 1) % m], &v[i], (-1, 0), 1);
        ends.add_hom(&v[i], &v[i], (0, 0), 1);
    }
    let mut t = defo.clone();
    t.add_twisted(&defo.dual(), hb, 1);
    t.add_twisted(&ends, (0, 0), -1);
    t.add_twisted(&ends, hb, -1);
    t
}

/// The trivial-weight multiplicity of `T^vir`, counted combinatorially from
/// the multisets of degrees on each global square: ordered pairs
/// `d > d'` with `□' ∈ {□, xy□}`, minus those with `□' ∈ {x□, y□}`, minus
/// the negative degrees at the origin.
pub fn fixed_term_dim<L: Labeling>(l: &L) -> i64 {
    let mut at: BTreeMap<(i64, i64), Vec<i64>> = BTreeMap::new();
    for (c, &d) in l.layout().cells().iter().zip(l.labels()) {
        at.entry(c.pos).or_default().push(d);
    }
    let pairs = |s: &[i64], t: Option<&Vec<i64>>| -> i64 {
        let Some(t) = t else { return 0 };
        s.iter().map(|&a| t.iter().filter(|&&b| a > b).count() as i64).sum()
    };
    let mut total = 0;
    for (&(i, j), ds) in &at {
        total += pairs(ds, Some(ds));
        total += pairs(ds, at.get(&(i + 1, j + 1)));
        total -= pairs(ds, at.get(&(i + 1, j)));
        total -= pairs(ds, at.get(&(i, j + 1)));
    }
    total -= at
        .get(&(0, 0))
        .map_or(0, |ds| ds.iter().filter(|&&d| d < 0).count() as i64);
    total
}

/// Which labelings an enumeration visits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Filter {
    /// Every labeling in the window.
    All,
    /// Only stable labelings.
    Stable,
}

/// A linear bound `Σ_cells weight[color] · label ≤ max` used to prune the
/// search and to filter its output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CostBound {
    pub color_weights: Vec<i64>,
    pub max: i64,
}

/// Admissible `[lo, hi]` for cell `k` given the labels fixed so far.
type LabelRange<'a> = dyn Fn(&[i64], usize, usize) -> (i64, i64) + 'a;

/// Visits every labeling of `layout` with labels in `lo..=hi` passing
/// `filter` (and `cost`, if given), in lexicographic order of the
/// flattened labels. Stable searches only generate monotone candidates.
pub fn for_each_labeling<F: FnMut(&[i64])>(
    layout: &CellLayout,
    lo: i64,
    hi: i64,
    filter: Filter,
    cost: Option<&CostBound>,
    mut visit: F,
) {
    let n = layout.len();
    if lo > hi {
        return;
    }
    let le = layout.closure();
    let framed_below: Vec<bool> = (0..n)
        .map(|v| (0..n).any(|u| le[u][v] && layout.cells[u].framed))
        .collect();
    let w: Vec<i64> = match cost {
        Some(c) => layout.cells.iter().map(|cell| c.color_weights[cell.color]).collect(),
        None => vec![0; n],
    };
    let stable = filter == Filter::Stable;
    let mut labels = vec![0i64; n];

    // Feasible range of cell `v` given the first `k` labels.
    let range = |labels: &[i64], k: usize, v: usize| -> (i64, i64) {
        let mut a = lo;
        let mut b = hi;
        if stable {
            if framed_below[v] {
                a = a.max(0);
            }
            for u in 0..k {
                if le[u][v] {
                    a = a.max(labels[u]);
                }
                if le[v][u] {
                    b = b.min(labels[u]);
                }
            }
        }
        (a, b)
    };

    let upsets = if cost.is_some() && stable {
        up_sets(&le, &w)
    } else {
        None
    };

    // Lower bound on the final cost given the first `k` labels. With the
    // up-sets at hand it is exact for the order constraints: slicing a
    // monotone labeling at every threshold `t` gives an up-set
    // `{v : l_v ≥ t}`, and the cheapest admissible up-set is taken per slice.
    // Otherwise the constraints among the remaining cells are relaxed.
    let bound = |labels: &[i64], k: usize| -> Option<i64> {
        let mut ab = Vec::with_capacity(n);
        for v in 0..n {
            let r = if v < k {
                (labels[v], labels[v])
            } else {
                range(labels, k, v)
            };
            if r.0 > r.1 {
                return None;
            }
            ab.push(r);
        }
        match &upsets {
            Some(ups) => sliced_min(&ab, &w, ups),
            None => Some(
                ab.iter()
                    .zip(&w)
                    .map(|(&(a, b), &wv)| if wv >= 0 { wv * a } else { wv * b })
                    .sum(),
            ),
        }
    };

    fn rec<F: FnMut(&[i64])>(
        k: usize,
        labels: &mut Vec<i64>,
        range: &LabelRange<'_>,
        bound: &dyn Fn(&[i64], usize) -> Option<i64>,
        cost: Option<&CostBound>,
        visit: &mut F,
    ) {
        let n = labels.len();
        if k == n {
            visit(labels);
            return;
        }
        let (a, b) = range(labels, k, k);
        for d in a..=b {
            labels[k] = d;
            if let Some(c) = cost {
                match bound(labels, k + 1) {
                    Some(t) if t <= c.max => {}
                    _ => continue,
                }
            }
            rec(k + 1, labels, range, bound, cost, visit);
        }
    }

    if n == 0 {
        if cost.is_none_or(|c| c.max >= 0) {
            visit(&labels);
        }
        return;
    }
    let check_framing = stable;
    rec(0, &mut labels, &range, &bound, cost, &mut |ls: &[i64]| {
        if !check_framing || (layout.is_monotone(ls) && layout.framing_ok(ls)) {
            visit(ls)
        }
    });
}

const MAX_UP_SETS: usize = 1 << 14;

/// Every up-set of the order `le` as a bit mask with its weight, or `None`
/// when there are too many (or too many cells) to be worth listing.
fn up_sets(le: &[Vec<bool>], w: &[i64]) -> Option<Vec<(u64, i64)>> {
    let n = le.len();
    if n > 64 {
        return None;
    }
    // maximal cells first, so a cell is decided after everything above it
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (0..n).filter(|&u| le[v][u]).count());
    let above: Vec<u64> = (0..n)
        .map(|v| (0..n).filter(|&u| u != v && le[v][u]).fold(0u64, |m, u| m | 1 << u))
        .collect();
    let mut out = Vec::new();
    let mut stack = vec![(0usize, 0u64, 0i64)];
    while let Some((i, mask, wt)) = stack.pop() {
        if i == n {
            out.push((mask, wt));
            if out.len() > MAX_UP_SETS {
                return None;
            }
            continue;
        }
        let v = order[i];
        stack.push((i + 1, mask, wt));
        if above[v] & !mask == 0 {
            stack.push((i + 1, mask | 1 << v, wt + w[v]));
        }
    }
    Some(out)
}

/// `min Σ w_v l_v` over monotone labelings with `l_v ∈ [a_v, b_v]`, by
/// thresholds; `None` if some threshold admits no up-set.
fn sliced_min(ab: &[(i64, i64)], w: &[i64], ups: &[(u64, i64)]) -> Option<i64> {
    let base = ab.iter().map(|r| r.0).min().unwrap_or(0);
    let top = ab.iter().map(|r| r.1).max().unwrap_or(0);
    let mut total = base * w.iter().sum::<i64>();
    // the forced sets only change just above some a_v or b_v
    let mut cuts: Vec<i64> = ab
        .iter()
        .flat_map(|&(a, b)| [a + 1, b + 1])
        .filter(|&t| t > base && t <= top)
        .collect();
    cuts.push(base + 1);
    cuts.push(top + 1);
    cuts.sort_unstable();
    cuts.dedup();
    for win in cuts.windows(2) {
        let (t, len) = (win[0], win[1] - win[0]);
        let (mut need, mut ban) = (0u64, 0u64);
        for (v, &(a, b)) in ab.iter().enumerate() {
            if a >= t {
                need |= 1 << v;
            }
            if b < t {
                ban |= 1 << v;
            }
        }
        let best = ups
            .iter()
            .filter(|(u, _)| u & need == need && u & ban == 0)
            .map(|&(_, wt)| wt)
            .min()?;
        total += best * len;
    }
    Some(total)
}

/// Stable labelings of `V(λ⃗)` with labels in `[-bound, bound]`, ordered by
/// degree vector and then by flattened labels.
pub fn enumerate_components(target: &MultiPartition, bound: i64) -> Vec<HookLabeling> {
    enumerate_components_in(target, -bound, bound, Filter::Stable)
}

/// [`enumerate_components`] with an arbitrary window and filter.
pub fn enumerate_components_in(target: &MultiPartition, lo: i64, hi: i64, filter: Filter) -> Vec<HookLabeling> {
    let t = HookTarget::new(target);
    let mut out: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
    for_each_labeling(t.layout(), lo, hi, filter, None, |ls| {
        out.push((t.layout().degrees(ls), ls.to_vec()));
    });
    out.sort();
    out.into_iter()
        .map(|(_, ls)| t.labeling(ls).expect("sizes agree"))
        .collect()
}

/// Stable labelings of a uniformly colored `λ` (colored reverse plane
/// partitions) with labels in `0..=bound`, in the same order.
pub fn enumerate_orbifold_components(lambda: &Partition, m: usize, bound: i64) -> Result<Vec<OrbifoldLabeling>> {
    let proto = OrbifoldLabeling::new(lambda, m, vec![0; lambda.size()])?;
    let mut out: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
    for_each_labeling(proto.layout(), -bound, bound, Filter::Stable, None, |ls| {
        out.push((proto.layout().degrees(ls), ls.to_vec()));
    });
    out.sort();
    Ok(out
        .into_iter()
        .map(|(_, ls)| OrbifoldLabeling {
            labels: ls,
            ..proto.clone()
        })
        .collect())
}
