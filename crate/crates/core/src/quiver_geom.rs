//! Fixed-point quiver data for `Hilb([C²/Γ])` and `Hilb(A_{m-1})`, and the
//! tangent characters of both, of `Hilb(C²)` and of rank-r instanton
//! moduli.
//!
//! On the resolved side the chart at `p_a` has coordinates
//! `x_a = x^{a+1} y^{-(m-a-1)}` and `y_a = x^{-a} y^{m-a}`, and every box of
//! `λ_a` is replaced by the m-hook `hk_a = 1 + x + … + x^a + y + … + y^{m-a-1}`.

use std::collections::BTreeMap;
use std::fmt::Write;
use std::sync::Arc;

use crate::charlab::{Character, Monomial, VarRegistry, MAX_FRAMING};
use crate::partitions::{color, MultiPartition, Partition};
use crate::{Error, Result};

const X: usize = 0;
const Y: usize = 1;

fn xy(i: i64, j: i64) -> Monomial {
    Monomial::from_exps([(X, i as i32), (Y, j as i32)])
}

/// `ħ = (xy)^{-1}`.
pub fn hbar() -> Monomial {
    xy(-1, -1)
}

/// The x- and y-exponents of an integral monomial in x, y.
pub fn xy_exps(w: &Monomial) -> (i64, i64) {
    (
        w.int_exp(X).expect("integral x exponent") as i64,
        w.int_exp(Y).expect("integral y exponent") as i64,
    )
}

/// Per-color quiver data `V_0, …, V_{m-1}` together with the framing weights
/// of `W_0` (a single trivial weight unless stated otherwise).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverData {
    m: usize,
    v: Vec<Character>,
    framing: Vec<Monomial>,
}

impl QuiverData {
    /// Splits a character in x, y by color. Every term must have integral
    /// x, y exponents.
    pub fn from_character(m: usize, total: &Character) -> Result<Self> {
        if m == 0 {
            return Err(Error::Invalid("m must be positive".into()));
        }
        let reg = total.registry().clone();
        let mut v = vec![Character::zero(&reg); m];
        for (w, k) in total.terms() {
            let c = crate::charlab::monomial_color(&reg, w, m)?;
            v[c].add_term(w.clone(), k);
        }
        Ok(QuiverData {
            m,
            v,
            framing: vec![Monomial::one()],
        })
    }

    /// Replaces the framing `W_0 = 1` by a sum of weights.
    pub fn with_framing(mut self, weights: Vec<Monomial>) -> Self {
        self.framing = weights;
        self
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn v(&self, k: usize) -> &Character {
        &self.v[k]
    }

    pub fn colors(&self) -> &[Character] {
        &self.v
    }

    pub fn framing(&self) -> &[Monomial] {
        &self.framing
    }

    /// `V = Σ_k V_k`.
    pub fn total(&self) -> Character {
        let reg = self.v[0].registry().clone();
        self.v.iter().fold(Character::zero(&reg), |acc, c| &acc + c)
    }

    pub fn dim(&self) -> i64 {
        self.v.iter().map(Character::rank).sum()
    }

    /// ASCII picture of `V` with y pointing up; see [`diagram`].
    pub fn diagram(&self) -> String {
        diagram(&self.total())
    }
}

/// One m-hook of the resolved quiver data: the hook `hk_a` placed at the
/// box `□ = (row, col)` of `λ_a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HookShape {
    pub leg: usize,
    /// `(row, col)` of the anchor box in `λ_a`; its weight is
    /// `x_a^{col} y_a^{row}`.
    pub anchor: (usize, usize),
    /// Global `(exp_x, exp_y)` of the hook square of each color.
    pub squares: Vec<(i64, i64)>,
}

impl HookShape {
    pub fn new(m: usize, leg: usize, anchor: (usize, usize)) -> Self {
        let (bx, by) = chart_position(m, leg, anchor.1 as i64, anchor.0 as i64);
        let squares = (0..m)
            .map(|c| {
                let (hx, hy) = hook_offset(m, leg, c);
                (bx + hx, by + hy)
            })
            .collect();
        HookShape { leg, anchor, squares }
    }

    pub fn m(&self) -> usize {
        self.squares.len()
    }

    /// The square of color `c` as a monomial.
    pub fn square(&self, c: usize) -> Monomial {
        let (i, j) = self.squares[c];
        xy(i, j)
    }

    pub fn is_origin(&self) -> bool {
        self.anchor == (0, 0)
    }
}

/// Offset of the color-`c` square inside `hk_a`: `x^c` on the x-arm
/// (`c ≤ a`), `y^{m-c}` on the y-arm.
pub fn hook_offset(m: usize, a: usize, c: usize) -> (i64, i64) {
    if c <= a {
        (c as i64, 0)
    } else {
        (0, (m - c) as i64)
    }
}

/// Global exponents of `x_a^i y_a^j`.
pub fn chart_position(m: usize, a: usize, i: i64, j: i64) -> (i64, i64) {
    let (m, a) = (m as i64, a as i64);
    (i * (a + 1) - j * a, -i * (m - a - 1) + j * (m - a))
}

/// The chart coordinates `(x_a, y_a)` as monomials.
pub fn chart_coordinates(m: usize, a: usize) -> (Monomial, Monomial) {
    let (xi, xj) = chart_position(m, a, 1, 0);
    let (yi, yj) = chart_position(m, a, 0, 1);
    (xy(xi, xj), xy(yi, yj))
}

/// `hk_a = 1 + x + … + x^a + y + … + y^{m-a-1}` (m terms).
pub fn m_hook(a: usize, m: usize) -> Result<Character> {
    if a >= m {
        return Err(Error::Invalid(format!("leg {a} out of range for m = {m}")));
    }
    let reg = VarRegistry::geometric();
    Ok(Character::from_terms(
        &reg,
        (0..m).map(|c| {
            let (i, j) = hook_offset(m, a, c);
            (xy(i, j), 1)
        }),
    ))
}

/// Weight of the universal bundle `V_k` at `p_a`.
pub fn universal_weight(k: usize, a: usize, m: usize) -> Result<Monomial> {
    if k >= m || a >= m {
        return Err(Error::Invalid(format!("indices ({k}, {a}) out of range for m = {m}")));
    }
    let (i, j) = hook_offset(m, a, k);
    Ok(xy(i, j))
}

/// Quiver data `V(λ⃗) = Σ_a hk_a Σ_{□∈λ_a} x_a^{i} y_a^{j}` and its hooks,
/// listed by leg and then by anchor in row-major order.
pub fn quiver_data_resolved(lambda: &MultiPartition) -> (QuiverData, Vec<HookShape>) {
    let m = lambda.m();
    let reg = VarRegistry::geometric();
    let hooks = resolved_hooks(lambda);
    let mut total = Character::zero(&reg);
    for h in &hooks {
        for c in 0..m {
            total.add_term(h.square(c), 1);
        }
    }
    let qd = QuiverData::from_character(m, &total).expect("integral weights");
    (qd, hooks)
}

/// The hooks of `V(λ⃗)` without assembling the character.
pub fn resolved_hooks(lambda: &MultiPartition) -> Vec<HookShape> {
    let m = lambda.m();
    lambda
        .legs()
        .iter()
        .enumerate()
        .flat_map(|(a, l)| l.cells().map(move |cell| HookShape::new(m, a, cell)))
        .collect()
}

/// `V_k(λ)` = the color-k boxes of a uniformly colored `λ`.
pub fn quiver_data_orbifold(lambda: &Partition, m: usize) -> Result<QuiverData> {
    if !lambda.is_uniformly_colored(m) {
        return Err(Error::Precondition(format!("{lambda} is not uniformly {m}-colored")));
    }
    Ok(quiver_data_boxes(lambda, m))
}

/// Box character of any partition split by color (no coloring check).
pub fn quiver_data_boxes(lambda: &Partition, m: usize) -> QuiverData {
    let reg = VarRegistry::geometric();
    let total = Character::from_terms(&reg, lambda.cells().map(|(r, c)| (xy(c as i64, r as i64), 1)));
    QuiverData::from_character(m, &total).expect("integral weights")
}

/// `T*(W^∨V_0 + x^{-1} Σ Hom(V_i, V_{i+1})) − (1+ħ) Σ Hom(V_i, V_i)` with
/// `T*w = w + ħ w^∨` and `Hom(A, B) = A^∨ B`.
pub fn tangent_quiver(q: &QuiverData) -> Character {
    let reg = q.v[0].registry().clone();
    let m = q.m;
    let w = Character::from_terms(&reg, q.framing.iter().map(|f| (f.clone(), 1)));
    let hb = hbar();
    let xinv = Character::monomial(&reg, xy(-1, 0), 1);
    let mut defo = &w.dual() * &q.v[0];
    let mut ends = Character::zero(&reg);
    for i in 0..m {
        let vi = &q.v[i];
        let next = &q.v[(i + 1) % m];
        defo = &defo + &(&xinv * &(&vi.dual() * next));
        ends = &ends + &(&vi.dual() * vi);
    }
    let tstar = &defo + &defo.dual().shift(&hb);
    &tstar - &(&ends + &ends.shift(&hb))
}

/// `T_λ Hilb(C²)`.
pub fn tangent_hilb_c2(lambda: &Partition) -> Character {
    t_pair(lambda, lambda)
}

/// `T_{λ,μ} = Σ_{□∈λ} x^{-a_λ(□)-1} y^{ℓ_μ(□)} + Σ_{□∈μ} x^{a_μ(□)} y^{-ℓ_λ(□)-1}`.
pub fn t_pair(lambda: &Partition, mu: &Partition) -> Character {
    let reg = VarRegistry::geometric();
    let mut out = Character::zero(&reg);
    for (r, c) in lambda.cells() {
        out.add_term(xy(-lambda.arm_of(r, c) - 1, mu.leg_of(r, c)), 1);
    }
    for (r, c) in mu.cells() {
        out.add_term(xy(mu.arm_of(r, c), -lambda.leg_of(r, c) - 1), 1);
    }
    out
}

/// Index of the framing weight `u_b` (1-based) in the geometric registry.
pub fn framing_var(b: usize) -> usize {
    assert!((1..=MAX_FRAMING).contains(&b), "framing index {b} out of range");
    2 + b
}

/// `T_{λ⃗} M_r(C²) = Σ_{a,b} (u_b/u_a) T_{λ_a, λ_b}`, with legs indexed
/// from 0 and framing weights `u_1..u_r`.
pub fn tangent_instanton(lambda: &[Partition]) -> Result<Character> {
    let r = lambda.len();
    if r == 0 || r > MAX_FRAMING {
        return Err(Error::Invalid(format!("rank {r} out of range 1..={MAX_FRAMING}")));
    }
    let reg = VarRegistry::geometric();
    let mut out = Character::zero(&reg);
    for a in 0..r {
        for b in 0..r {
            let u = Monomial::from_exps([(framing_var(b + 1), 1), (framing_var(a + 1), -1)]);
            out = &out + &t_pair(&lambda[a], &lambda[b]).shift(&u);
        }
    }
    Ok(out)
}

/// Rank-r quiver data for `M_r(C²)`: `V_0 = Σ_a u_a V(λ_a)`, framed by the
/// `u_a`.
pub fn instanton_quiver_data(lambda: &[Partition]) -> QuiverData {
    let reg = VarRegistry::geometric();
    let mut total = Character::zero(&reg);
    for (a, l) in lambda.iter().enumerate() {
        let u = Monomial::var(framing_var(a + 1), 1);
        for (r, c) in l.cells() {
            total.add_term(xy(c as i64, r as i64).mul(&u), 1);
        }
    }
    let framing = (0..lambda.len())
        .map(|a| Monomial::var(framing_var(a + 1), 1))
        .collect();
    QuiverData::from_character(1, &total)
        .expect("integral")
        .with_framing(framing)
}

/// Registry holding the single variable `t`.
pub fn t_registry() -> Arc<VarRegistry> {
    use std::sync::OnceLock;
    static REG: OnceLock<Arc<VarRegistry>> = OnceLock::new();
    REG.get_or_init(|| VarRegistry::new(&["t"]).expect("one name")).clone()
}

/// Restriction to the anti-diagonal torus: `x ↦ t`, `y ↦ t^{-1}`.
pub fn restrict_to_t(c: &Character) -> Character {
    let t = t_registry();
    c.map_monomials(&t, |w| {
        let (i, j) = xy_exps(w);
        Ok(Monomial::var(0, (i - j) as i32))
    })
    .expect("x, y only")
}

/// Checks `V_k(λ) ≡ V_k(q⃗(λ)) mod ħ` color by color.
pub fn check_a_equivariant_bijection(lambda: &Partition, m: usize) -> Result<bool> {
    let orb = quiver_data_orbifold(lambda, m)?;
    let (res, _) = quiver_data_resolved(&lambda.m_quotient(m));
    Ok((0..m).all(|k| restrict_to_t(orb.v(k)) == restrict_to_t(res.v(k))))
}

/// ASCII picture of a character in x, y: one cell per weight, y pointing
/// up, multiplicities as digits (`*` above 9, `-` for negative), `.` for
/// empty positions and `+` marking the empty origin.
pub fn diagram(c: &Character) -> String {
    let mut cells: BTreeMap<(i64, i64), i64> = BTreeMap::new();
    for (w, k) in c.terms() {
        *cells.entry(xy_exps(w)).or_insert(0) += k;
    }
    if cells.is_empty() {
        return "(empty)\n".into();
    }
    let xs = cells.keys().map(|p| p.0).chain([0]);
    let (x0, x1) = (xs.clone().min().unwrap(), xs.max().unwrap());
    let ys = cells.keys().map(|p| p.1).chain([0]);
    let (y0, y1) = (ys.clone().min().unwrap(), ys.max().unwrap());
    let mut s = String::new();
    for j in (y0..=y1).rev() {
        write!(s, "{j:>3} ").unwrap();
        for i in x0..=x1 {
            let ch = match cells.get(&(i, j)) {
                None if (i, j) == (0, 0) => '+',
                None => '.',
                Some(&k) if k < 0 => '-',
                Some(&k) if k > 9 => '*',
                Some(&k) => char::from_digit(k as u32, 10).unwrap(),
            };
            s.push(ch);
        }
        s.push('\n');
    }
    writeln!(s, "    x from {x0} to {x1}").unwrap();
    s
}

/// Colour of a global square.
pub fn square_color(sq: (i64, i64), m: usize) -> usize {
    color(sq.0, sq.1, m)
}
