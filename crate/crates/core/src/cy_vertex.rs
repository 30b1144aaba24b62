//! Calabi–Yau limits of the vertex: principal Schur specializations,
//! topological-vertex products, plethystic mirror formulas and the
//! brute-force (generalized) reverse plane partition sums they must match.
//!
//! Resolved series live in `Q, A_1, …, A_{m-1}` with the grading
//! `deg Q = 1`, `deg A_i = K` from [`resolved_weights`]; orbifold series live
//! in `z_0, …, z_{m-1}` with unit weights, related by `Q = z_0 ⋯ z_{m-1}` and
//! `A_i = z_i`. Every series is normalized to constant term 1.

use std::sync::Arc;

use num_rational::Rational64;

use crate::charlab::{
    attracting_split, chain_cocharacter, plethystic_exp_weighted, Character, Monomial, TruncSeries, VarRegistry,
};
use crate::partitions::{MultiPartition, Partition};
use crate::qm_components::{for_each_labeling, orbifold_layout, CostBound, Filter, HookTarget};
use crate::quiver_geom::{framing_var, t_pair, tangent_instanton};
use crate::{Error, Result};

const X: usize = 0;
const Y: usize = 1;

/// Attracting chambers for the mirror: `C_minus` is `u_1 ≫ ⋯ ≫ u_m ≫ t`
/// (resolved), `C_plus` is `t ≫ u_1 ≫ ⋯ ≫ u_m` (orbifold), with `t = x/y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Chamber {
    Minus,
    Plus,
}

impl Chamber {
    /// Variable groups of the chain, largest first.
    fn groups(self, m: usize) -> Vec<Vec<(usize, i64)>> {
        let t = vec![(X, 1), (Y, -1)];
        let us = (1..=m).map(|b| vec![(framing_var(b), 1)]);
        match self {
            Chamber::Minus => us.chain(std::iter::once(t)).collect(),
            Chamber::Plus => std::iter::once(t).chain(us).collect(),
        }
    }

    /// The cocharacter realizing this chamber on the terms of `c`.
    pub fn cocharacter(self, c: &Character, m: usize) -> Vec<(usize, i64)> {
        chain_cocharacter(c, &self.groups(m))
    }
}

/// Names `Q, A_1, …, A_{m-1}`.
pub fn resolved_vars(m: usize) -> Vec<String> {
    std::iter::once("Q".to_string())
        .chain((1..m).map(|i| format!("A_{i}")))
        .collect()
}

/// Names `z_0, …, z_{m-1}`.
pub fn orbifold_vars(m: usize) -> Vec<String> {
    (0..m).map(|i| format!("z_{i}")).collect()
}

fn registry(vars: &[String]) -> Arc<VarRegistry> {
    VarRegistry::new(vars).expect("distinct names")
}

/// `x ↦ Q`, `y ↦ Q^{-1}`, `u_b ↦ A_b ⋯ A_{m-1}` so that `u_a/u_b ↦ A_{ab}`.
fn resolved_subst(m: usize) -> Vec<(usize, Monomial)> {
    let mut s = vec![(X, Monomial::var(0, 1)), (Y, Monomial::var(0, -1))];
    for b in 1..=m {
        s.push((framing_var(b), Monomial::from_exps((b..m).map(|i| (i, 1)))));
    }
    s
}

/// The same map followed by `Q = z_0 ⋯ z_{m-1}`, `A_i = z_i`.
fn orbifold_subst(m: usize) -> Vec<(usize, Monomial)> {
    let q = Monomial::from_exps((0..m).map(|i| (i, 1)));
    let mut s = vec![(X, q.clone()), (Y, q.inv())];
    for b in 1..=m {
        s.push((framing_var(b), Monomial::from_exps((b..m).map(|i| (i, 1)))));
    }
    s
}

/// A series with a separately tracked leading power `Q^{q_power}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixedSeries {
    pub q_power: Rational64,
    pub series: TruncSeries,
}

/// `s_λ(Q^{1/2}, Q^{3/2}, …) = Q^{n(λ)} / Π_□ (1 − Q^{h(□)})`.
pub fn schur_principal(lambda: &Partition, order: i64) -> PrefixedSeries {
    let reg = registry(&["Q".to_string()]);
    let series = plethystic_exp_weighted(&hook_character(lambda, &reg), &["Q"], &[1], order).expect("positive hooks");
    PrefixedSeries {
        q_power: lambda.n_stat(),
        series,
    }
}

/// `Σ_□ Q^{h(□)}`.
fn hook_character(lambda: &Partition, reg: &Arc<VarRegistry>) -> Character {
    Character::from_terms(
        reg,
        lambda.cells().map(|(r, c)| {
            let (_, _, h) = lambda.arm_leg_hook(r, c).expect("cell of λ");
            (Monomial::var(0, h as i32), 1)
        }),
    )
}

/// `A · T_{λ,μ}^∨` in the geometric registry, `A` a product of framing
/// ratios.
fn bracket_character(lambda: &Partition, mu: &Partition, a: &Monomial) -> Character {
    t_pair(lambda, mu).dual().shift(a)
}

/// `[λμ]_A / [∅∅]_A = S^•(A · T_{λ,μ}^∨)` at `x = Q`, `y = Q^{-1}`. The
/// monomial `a` is given in the geometric registry (a ratio `u_a/u_b`) and
/// the result is over `vars` with `weights`.
pub fn bracket_ratio(
    lambda: &Partition,
    mu: &Partition,
    a: &Monomial,
    m: usize,
    weights: &[i64],
    order: i64,
) -> Result<TruncSeries> {
    let vars = resolved_vars(m);
    let c = bracket_character(lambda, mu, a).substitute(&registry(&vars), &resolved_subst(m))?;
    plethystic_exp_weighted(&c, &vars, weights, order)
}

/// `u_{a+1}/u_{b+1}`, which becomes `A_{ab} = A_{a+1} ⋯ A_b` for legs
/// `a < b` counted from 0.
pub fn a_ab(a: usize, b: usize) -> Monomial {
    Monomial::from_exps([(framing_var(a + 1), 1), (framing_var(b + 1), -1)])
}

/// The character whose plethystic exponential is the normalized
/// topological vertex, in `Q, A⃗`.
fn topological_character(lambda: &MultiPartition) -> Result<Character> {
    let m = lambda.m();
    let vars = resolved_vars(m);
    let reg = registry(&vars);
    let mut c = Character::zero(&reg);
    for l in lambda.legs() {
        c = &c + &hook_character(l, &reg);
    }
    let legs = lambda.legs();
    for a in 0..m {
        for b in a + 1..m {
            let br = bracket_character(&legs[a].transpose(), &legs[b].transpose(), &a_ab(a, b));
            c = &c + &br.substitute(&reg, &resolved_subst(m))?;
        }
    }
    Ok(c)
}

/// Weights `(1, K, …, K)` for `Q, A⃗`: the least `K ≥ 1` giving every term
/// `A_{ab} Q^k` of the vertex positive degree.
pub fn resolved_weights(lambda: &MultiPartition) -> Result<Vec<i64>> {
    Ok(grading_for(&topological_character(lambda)?, lambda.m()))
}

fn grading_for(c: &Character, m: usize) -> Vec<i64> {
    let mut k = 1i64;
    for (w, _) in c.terms() {
        let q = w.int_exp(0).unwrap_or(0) as i64;
        let s: i64 = (1..m).map(|i| w.int_exp(i).unwrap_or(0) as i64).sum();
        if s > 0 {
            // need s·K + q ≥ 1
            k = k.max((1 - q + s - 1).div_euclid(s));
        }
    }
    std::iter::once(1).chain(std::iter::repeat_n(k, m - 1)).collect()
}

/// `Π_a Q^{-n(λ_a)} s_{λ_a} · Π_{a<b} [λ_a^t λ_b^t]_{A_{ab}} / [∅∅]_{A_{ab}}`.
///
/// Both bracket arguments are transposed because boxes weigh `x^col y^row`
/// here; with this reading the product equals [`cy_vertex_mirror`] in
/// `C_minus` and the generalized plane partition count.
pub fn cy_vertex_topological(lambda: &MultiPartition, order: i64) -> Result<TruncSeries> {
    let m = lambda.m();
    let weights = resolved_weights(lambda)?;
    let vars = resolved_vars(m);
    let reg = registry(&vars);
    let mut out = TruncSeries::zero_weighted(&vars, &weights, order).one_like();
    for l in lambda.legs() {
        out = out.mul(&plethystic_exp_weighted(
            &hook_character(l, &reg),
            &vars,
            &weights,
            order,
        )?)?;
    }
    let legs = lambda.legs();
    for a in 0..m {
        for b in a + 1..m {
            out = out.mul(&bracket_ratio(
                &legs[a].transpose(),
                &legs[b].transpose(),
                &a_ab(a, b),
                m,
                &weights,
                order,
            )?)?;
        }
    }
    Ok(out)
}

/// `(T^{<0, C}_{λ⃗})^∨` for the rank-m instanton fixed point `λ⃗`, in the
/// geometric registry.
pub fn repelling_dual(lambda: &MultiPartition, chamber: Chamber) -> Result<Character> {
    let m = lambda.m();
    let t = tangent_instanton(lambda.legs())?;
    let sigma = chamber.cocharacter(&t, m);
    let (_, zero, neg) = attracting_split(&t, &sigma);
    if !zero.is_zero() {
        return Err(Error::Precondition("tangent weights fixed by the chamber".into()));
    }
    Ok(neg.dual())
}

/// The instanton fixed point mirror to the vertex label `λ⃗`: every leg
/// transposed, since boxes weigh `x^col y^row` here.
pub fn mirror_label(lambda: &MultiPartition) -> MultiPartition {
    MultiPartition::new(lambda.legs().iter().map(Partition::transpose).collect()).expect("same shape")
}

/// `S^•((T^{<0,C}_{λ⃗^t})^∨)` with `x = Q`, `y = Q^{-1}`, `u_a/u_b = A_{ab}`,
/// graded like [`resolved_weights`] but from its own terms.
pub fn cy_vertex_mirror(lambda: &MultiPartition, chamber: Chamber, order: i64) -> Result<TruncSeries> {
    let m = lambda.m();
    let vars = resolved_vars(m);
    let c = repelling_dual(&mirror_label(lambda), chamber)?.substitute(&registry(&vars), &resolved_subst(m))?;
    plethystic_exp_weighted(&c, &vars, &grading_for(&c, m), order)
        .map_err(|e| Error::Precondition(format!("chamber does not match the label: {e}")))
}

/// [`cy_vertex_mirror`] in the orbifold variables `z_0, …, z_{m-1}`.
pub fn cy_vertex_mirror_orbifold(lambda: &MultiPartition, chamber: Chamber, order: i64) -> Result<TruncSeries> {
    let m = lambda.m();
    let vars = orbifold_vars(m);
    let c = repelling_dual(&mirror_label(lambda), chamber)?.substitute(&registry(&vars), &orbifold_subst(m))?;
    plethystic_exp_weighted(&c, &vars, &vec![1; m], order)
        .map_err(|e| Error::Precondition(format!("chamber does not match the label: {e}")))
}

const MAX_WINDOW_STEPS: i64 = 64;

/// Sums `Π_c var_c^{d_c}`-type monomials over stable labelings in growing
/// windows until two consecutive windows agree.
fn stable_window_sum<F: Fn(i64) -> Result<TruncSeries>>(start: i64, sum: F) -> Result<TruncSeries> {
    let mut w = start;
    let mut prev = sum(w)?;
    for _ in 0..MAX_WINDOW_STEPS {
        let next = sum(w + 1)?;
        if next == prev {
            return Ok(prev);
        }
        prev = next;
        w += 1;
    }
    Err(Error::Precondition(format!(
        "enumeration window did not stabilize by {w}"
    )))
}

/// Generating series of colored reverse plane partitions of a uniformly
/// colored `λ`: `Σ_π Π_c z_c^{|π|_c}` in `z_0, …, z_{m-1}`.
pub fn rpp_series(lambda: &Partition, m: usize, order: i64) -> Result<TruncSeries> {
    if !lambda.is_uniformly_colored(m) {
        return Err(Error::Precondition(format!("{lambda} is not uniformly {m}-colored")));
    }
    let vars = orbifold_vars(m);
    let layout = orbifold_layout(lambda, m);
    let bound = CostBound {
        color_weights: vec![1; m],
        max: order,
    };
    stable_window_sum(order + 1, |w| {
        let mut s = TruncSeries::zero(&vars, order);
        for_each_labeling(&layout, -w, w, Filter::Stable, Some(&bound), |ls| {
            let mut d = vec![0; m];
            for (c, &l) in layout.cells().iter().zip(ls) {
                d[c.color] += l;
            }
            s.add_int(d, 1);
        });
        Ok(s)
    })
}

/// Generating series `Σ Q^n A⃗^β⃗` of generalized reverse plane partitions of
/// shape `V(λ⃗)` for a target with at most one non-empty leg.
pub fn grpp_series(lambda: &MultiPartition, order: i64) -> Result<TruncSeries> {
    let m = lambda.m();
    if lambda.legs().iter().filter(|l| l.size() > 0).count() > 1 {
        return Err(Error::Precondition(
            "generalized plane partitions need a single leg".into(),
        ));
    }
    let vars = resolved_vars(m);
    let weights = resolved_weights(lambda)?;
    let k = weights.get(1).copied().unwrap_or(1);
    // deg Q^{d_0} Π A_i^{d_i − d_0} = (1 − K(m−1)) d_0 + K Σ_{i≥1} d_i
    let mut color_weights = vec![k; m];
    color_weights[0] = 1 - k * (m as i64 - 1);
    let bound = CostBound {
        color_weights,
        max: order,
    };
    let target = HookTarget::new(lambda);
    let layout = target.layout();
    stable_window_sum(order + 1, |w| {
        let mut s = TruncSeries::zero_weighted(&vars, &weights, order);
        for_each_labeling(layout, -w, w, Filter::Stable, Some(&bound), |ls| {
            let mut d = vec![0; m];
            for (c, &l) in layout.cells().iter().zip(ls) {
                d[c.color] += l;
            }
            let e = std::iter::once(d[0]).chain(d[1..].iter().map(|di| di - d[0])).collect();
            s.add_int(e, 1);
        });
        Ok(s)
    })
}

/// Outcome of the crepant-resolution comparison: `V_+ = sign · z^exps · V_−`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrcOutcome {
    pub sign: i64,
    pub exps: Vec<i64>,
    pub holds: bool,
}

impl CrcOutcome {
    pub fn monomial_string(&self) -> String {
        let vars = orbifold_vars(self.exps.len());
        let mono: Vec<String> = self
            .exps
            .iter()
            .zip(&vars)
            .filter(|(e, _)| **e != 0)
            .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
            .collect();
        let body = if mono.is_empty() {
            "1".to_string()
        } else {
            mono.join(" ")
        };
        if self.sign < 0 {
            format!("-{body}")
        } else {
            body
        }
    }
}

/// Compares the orbifold vertex (chamber `C_plus`) with the resolved one
/// (chamber `C_minus`) at the m-quotient of `λ`, both in `z⃗`.
///
/// Terms `w` of the resolved character with a negative exponent are not
/// expandable in `z⃗`; they are traded via `S^•(w) = (−w^{-1}) S^•(w^{-1})`,
/// and the collected prefactors give the monomial.
pub fn crc_check(lambda: &Partition, m: usize, order: i64) -> Result<CrcOutcome> {
    if !lambda.is_uniformly_colored(m) {
        return Err(Error::Precondition(format!("{lambda} is not uniformly {m}-colored")));
    }
    let q = mirror_label(&lambda.m_quotient(m));
    let vars = orbifold_vars(m);
    let reg = registry(&vars);
    let plus = repelling_dual(&q, Chamber::Plus)?.substitute(&reg, &orbifold_subst(m))?;
    let minus = repelling_dual(&q, Chamber::Minus)?.substitute(&reg, &orbifold_subst(m))?;
    let mut flipped = Character::zero(&reg);
    let mut sign = 1i64;
    let mut exps = vec![0i64; m];
    for (w, k) in minus.terms() {
        let e: Vec<i64> = (0..m).map(|i| w.int_exp(i).unwrap_or(0) as i64).collect();
        if e.iter().any(|&x| x < 0) {
            // (1 − w)^{-k} = (−w^{-1})^{k} (1 − w^{-1})^{-k}
            flipped.add_term(w.inv(), k);
            if k % 2 != 0 {
                sign = -sign;
            }
            for (x, ei) in exps.iter_mut().zip(&e) {
                *x -= ei * k;
            }
        } else {
            flipped.add_term(w.clone(), k);
        }
    }
    let ones = vec![1; m];
    let v_plus = plethystic_exp_weighted(&plus, &vars, &ones, order)?;
    let v_minus = plethystic_exp_weighted(&flipped, &vars, &ones, order)?;
    let holds = v_plus == v_minus;
    Ok(CrcOutcome {
        sign,
        exps: exps.iter().map(|x| -x).collect(),
        holds,
    })
}
