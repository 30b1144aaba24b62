//! Exhaustive verification sweeps. Each returns a [`Report`] naming the
//! first failing case in enumeration order, so reports are deterministic
//! even though the cases run in parallel.

use std::fmt;

use num_rational::BigRational;
use num_traits::Signed;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use crate::bs_pairs::{curve_class_from_sheaf, mckay_labeling_to_sheaf, pi_stability_check, tvir_bs};
use crate::charlab::{ohat_contribution, rat, TruncSeries};
use crate::cy_vertex::{
    crc_check, cy_vertex_mirror, cy_vertex_mirror_orbifold, cy_vertex_topological, grpp_series, rpp_series,
    schur_principal, Chamber,
};
use crate::partitions::{enumerate_multipartitions, enumerate_partitions, partitions_up_to, MultiPartition, Partition};
use crate::qm_components::{
    degrees, enumerate_components, enumerate_components_in, enumerate_orbifold_components, fixed_term_dim, is_stable,
    to_curve_class, tvir_quasimap, tvir_quasimap_normalized, Filter, HookLabeling, Labeling,
};
use crate::quiver_geom::{
    check_a_equivariant_bijection, hbar, instanton_quiver_data, quiver_data_orbifold, quiver_data_resolved,
    tangent_instanton, tangent_quiver,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub id: String,
    pub title: String,
    pub cases: usize,
    pub failure: Option<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {} {} ({} cases)", self.id, self.title, self.cases)?;
        if let Some(e) = &self.failure {
            write!(f, ": first failure: {e}")?;
        }
        Ok(())
    }
}

/// Runs `check` on every case in parallel; the first failure is the one
/// earliest in `cases`.
fn sweep<T: Sync, F: Fn(&T) -> Option<String> + Sync + Send>(id: &str, title: &str, cases: &[T], check: F) -> Report {
    let results: Vec<Option<String>> = cases.par_iter().map(check).collect();
    Report {
        id: id.into(),
        title: title.into(),
        cases: cases.len(),
        failure: results.into_iter().flatten().next(),
    }
}

fn targets(ms: &[usize], max_size: usize) -> Vec<MultiPartition> {
    ms.iter()
        .flat_map(|&m| (0..=max_size).flat_map(move |n| enumerate_multipartitions(m, n)))
        .collect()
}

fn stable_labelings(ms: &[usize], max_size: usize, window: i64) -> Vec<HookLabeling> {
    targets(ms, max_size)
        .par_iter()
        .map(|t| enumerate_components(t, window))
        .collect::<Vec<_>>()
        .concat()
}

fn mp(legs: &[&[usize]]) -> MultiPartition {
    MultiPartition::new(
        legs.iter()
            .map(|l| Partition::new(l.to_vec()).expect("partition"))
            .collect(),
    )
    .expect("multipartition")
}

/// The two labelings drawn for the non-trivial fixed loci: a `P¹` over
/// `A_1` and a two-dimensional component over `A_2`.
pub fn figure_labelings() -> [(HookLabeling, i64); 2] {
    let a = HookLabeling::new(&mp(&[&[1], &[1]]), &[vec![0, 1], vec![1, 1]]).expect("labeling");
    let b =
        HookLabeling::new(&mp(&[&[1], &[1], &[1]]), &[vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 1]]).expect("labeling");
    [(a, 1), (b, 2)]
}

pub fn figures() -> Report {
    let cases = figure_labelings();
    sweep("1", "virtual dimension of the figure labelings", &cases, |(l, want)| {
        let d = fixed_term_dim(l);
        let t = tvir_quasimap(l).trivial_mult();
        (!is_stable(l) || d != *want || t != *want).then(|| {
            format!(
                "{:?}: fixed_term_dim {d}, tvir fixed part {t}, want {want}",
                l.hook_vectors()
            )
        })
    })
}

pub fn tvir_correspondence(ms: &[usize], max_size: usize, window: i64) -> Report {
    let cases = stable_labelings(ms, max_size, window);
    sweep("2", "T^vir of BS pairs equals T^vir of quasimaps", &cases, |l| {
        let (bs, qm) = (tvir_bs(l), tvir_quasimap(l));
        (bs != qm).then(|| format!("{} {:?}: {bs} != {qm}", l.target(), l.hook_vectors()))
    })
}

pub fn stability_correspondence(ms: &[usize], max_size: usize, window: i64) -> Report {
    let cases: Vec<HookLabeling> = targets(ms, max_size)
        .par_iter()
        .map(|t| enumerate_components_in(t, -window, window, Filter::All))
        .collect::<Vec<_>>()
        .concat();
    sweep("3", "π-stability equals quasimap stability", &cases, |l| {
        let (pi, qm) = (pi_stability_check(l), is_stable(l));
        (pi != qm).then(|| {
            format!(
                "{} {:?}: π-stable {pi}, quasimap-stable {qm}",
                l.target(),
                l.hook_vectors()
            )
        })
    })
}

pub fn curve_class_translation(ms: &[usize], max_size: usize, window: i64) -> Report {
    let cases = stable_labelings(ms, max_size, window);
    sweep(
        "4",
        "curve class of the sheaf equals the translated degree",
        &cases,
        |l| {
            let want = to_curve_class(&degrees(l));
            match mckay_labeling_to_sheaf(l) {
                Ok(s) => {
                    let got = curve_class_from_sheaf(&s);
                    (got != want).then(|| format!("{} {:?}: {got:?} != {want:?}", l.target(), l.hook_vectors()))
                }
                Err(e) => Some(format!("{} {:?}: {e}", l.target(), l.hook_vectors())),
            }
        },
    )
}

/// `Π_□ 1/(1 − Q^{h(□)})`, one factor at a time.
fn hook_product(lambda: &Partition, order: i64) -> TruncSeries {
    let one = TruncSeries::zero(&["Q"], order).one_like();
    lambda.cells().fold(one, |acc, (r, c)| {
        let (_, _, h) = lambda.arm_leg_hook(r, c).expect("cell");
        let f = acc.one_minus_pow(&[h as i64], 1).expect("positive hook");
        acc.mul(&f).expect("same ring")
    })
}

pub fn gansner(max_size: usize, order: i64) -> Report {
    let cases = partitions_up_to(max_size);
    sweep(
        "5",
        "reverse plane partitions, hook product and mirror agree (m = 1)",
        &cases,
        |l| {
            let run = || -> crate::Result<Option<String>> {
                let rpp = rpp_series(l, 1, order)?.renamed(&["Q"])?;
                let hooks = hook_product(l, order);
                let schur = schur_principal(l, order).series;
                let mirror = cy_vertex_mirror(&MultiPartition::new(vec![l.clone()])?, Chamber::Minus, order)?;
                Ok((rpp != hooks || rpp != schur || rpp != mirror)
                    .then(|| format!("{l}: rpp {rpp}, hooks {hooks}, mirror {mirror}")))
            };
            run().unwrap_or_else(|e| Some(format!("{l}: {e}")))
        },
    )
}

pub fn three_way(ms: &[usize], max_leg: usize, order: i64) -> Report {
    let cases: Vec<MultiPartition> = ms
        .iter()
        .flat_map(|&m| {
            (0..m).flat_map(move |a| {
                partitions_up_to(max_leg)
                    .into_iter()
                    .map(move |l| MultiPartition::single(m, a, l))
            })
        })
        .collect();
    sweep(
        "6",
        "generalized plane partitions, topological vertex and mirror agree",
        &cases,
        |t| {
            let run = || -> crate::Result<Option<String>> {
                let top = cy_vertex_topological(t, order)?;
                let grpp = grpp_series(t, order)?;
                let mirror = cy_vertex_mirror(t, Chamber::Minus, order)?;
                Ok((grpp != top || mirror != top)
                    .then(|| format!("{t}: grpp {grpp}, topological {top}, mirror {mirror}")))
            };
            run().unwrap_or_else(|e| Some(format!("{t}: {e}")))
        },
    )
}

fn colored(ms: &[usize], max_size: usize) -> Vec<(Partition, usize)> {
    ms.iter()
        .flat_map(|&m| {
            partitions_up_to(max_size)
                .into_iter()
                .filter(move |l| l.is_uniformly_colored(m))
                .map(move |l| (l, m))
        })
        .collect()
}

pub fn crc(ms: &[usize], max_size: usize, order: i64) -> Report {
    let cases = colored(ms, max_size);
    sweep(
        "7",
        "orbifold and resolved vertices differ by one monomial",
        &cases,
        |(l, m)| match crc_check(l, *m, order) {
            Ok(c) if c.holds => None,
            Ok(c) => Some(format!(
                "{l} m={m}: no monomial ratio (candidate {})",
                c.monomial_string()
            )),
            Err(e) => Some(format!("{l} m={m}: {e}")),
        },
    )
}

/// The colored orbifold identity: reverse plane partitions against the
/// mirror in `C_plus`.
pub fn orbifold_identity(ms: &[usize], max_size: usize, order: i64) -> Report {
    let cases = colored(ms, max_size);
    sweep(
        "7b",
        "colored reverse plane partitions equal the orbifold mirror",
        &cases,
        |(l, m)| {
            let run = || -> crate::Result<Option<String>> {
                let rpp = rpp_series(l, *m, order)?;
                let mirror = cy_vertex_mirror_orbifold(&l.m_quotient(*m), Chamber::Plus, order)?;
                Ok((rpp != mirror).then(|| format!("{l} m={m}: {rpp} != {mirror}")))
            };
            run().unwrap_or_else(|e| Some(format!("{l} m={m}: {e}")))
        },
    )
}

pub fn quotient_bijection(max_size: usize, max_m: usize, max_colored: usize) -> Report {
    let mut cases: Vec<(Partition, usize, bool)> = Vec::new();
    for m in 1..=max_m {
        for l in partitions_up_to(max_size) {
            cases.push((l, m, false));
        }
    }
    for (l, m) in colored(&[2, 3], max_colored) {
        cases.push((l, m, true));
    }
    sweep("8", "m-core and m-quotient bijection", &cases, |(l, m, equivariant)| {
        if *equivariant {
            return match check_a_equivariant_bijection(l, *m) {
                Ok(true) => None,
                Ok(false) => Some(format!("{l} m={m}: A'-characters differ")),
                Err(e) => Some(format!("{l} m={m}: {e}")),
            };
        }
        let (core, q) = (l.m_core(*m), l.m_quotient(*m));
        if core.size() + m * q.size() != l.size() || core.m_core(*m) != core {
            return Some(format!("{l} m={m}: core {core}, quotient {q}"));
        }
        if core.is_empty() != l.is_uniformly_colored(*m) {
            return Some(format!("{l} m={m}: empty core and uniform coloring disagree"));
        }
        (core.is_empty() && Partition::from_quotient(&q) != *l)
            .then(|| format!("{l} m={m}: quotient {q} does not invert"))
    })
}

#[derive(Clone, Debug)]
enum TangentCase {
    Resolved(MultiPartition),
    Orbifold(Partition, usize),
    Instanton(MultiPartition),
}

pub fn tangent_properties(max_n: usize, max_m: usize, max_r: usize) -> Report {
    let mut cases = Vec::new();
    for m in 1..=max_m {
        for n in 0..=max_n {
            cases.extend(enumerate_multipartitions(m, n).into_iter().map(TangentCase::Resolved));
            cases.extend(
                enumerate_partitions(n * m)
                    .into_iter()
                    .filter(|l| l.is_uniformly_colored(m))
                    .map(|l| TangentCase::Orbifold(l, m)),
            );
        }
    }
    for r in 1..=max_r {
        for n in 0..=max_n {
            cases.extend(enumerate_multipartitions(r, n).into_iter().map(TangentCase::Instanton));
        }
    }
    let hb = hbar();
    sweep(
        "9",
        "tangent spaces are symplectic with no fixed weights",
        &cases,
        |c| {
            let (t, rank, name) = match c {
                TangentCase::Resolved(l) => (tangent_quiver(&quiver_data_resolved(l).0), 2 * l.size(), format!("{l}")),
                TangentCase::Orbifold(l, m) => {
                    let q = quiver_data_orbifold(l, *m).ok()?;
                    (tangent_quiver(&q), 2 * l.size() / m, format!("{l} m={m}"))
                }
                TangentCase::Instanton(l) => {
                    let t = match tangent_instanton(l.legs()) {
                        Ok(t) => t,
                        Err(e) => return Some(format!("{l}: {e}")),
                    };
                    if t != tangent_quiver(&instanton_quiver_data(l.legs())) {
                        return Some(format!(
                            "instanton {l}: closed form differs from the quiver description"
                        ));
                    }
                    (t, 2 * l.m() * l.size(), format!("instanton {l}"))
                }
            };
            if t != t.dual().shift(&hb) {
                Some(format!("{name}: {t} is not ħ-self-dual"))
            } else if t.rank() != rank as i64 {
                Some(format!("{name}: rank {} != {rank}", t.rank()))
            } else if t.trivial_mult() != 0 || t.terms().any(|(_, k)| k < 0) {
                Some(format!("{name}: {t} has a trivial or virtual weight"))
            } else {
                None
            }
        },
    )
}

/// `|Ô^vir|` at random points of the Calabi–Yau locus `z = (xy)^{-1}`,
/// given by square roots `s_x, s_y` and `s_z = 1/(s_x s_y)`.
pub fn ohat_unit(ms: &[usize], max_size: usize, window: i64, points: usize, seed: u64) -> Report {
    let mut rng = StdRng::seed_from_u64(seed);
    let pts: Vec<(BigRational, BigRational)> = (0..points)
        .map(|_| {
            let mut r = || rat(rng.gen_range(2..40), rng.gen_range(1..40));
            (r(), r())
        })
        .collect();
    let cases: Vec<_> = colored(ms, max_size)
        .into_iter()
        .flat_map(|(l, m)| enumerate_orbifold_components(&l, m, window).expect("uniformly colored"))
        .filter(|c| tvir_quasimap_normalized(c).trivial_mult() == 0)
        .collect();
    sweep(
        "10",
        "Ô^vir of isolated orbifold components has unit magnitude on the Calabi–Yau locus",
        &cases,
        |c| {
            let t = tvir_quasimap_normalized(c);
            let o = match ohat_contribution(&t) {
                Ok(o) => o,
                Err(e) => return Some(format!("{} {:?}: {e}", c.lambda(), c.labels())),
            };
            for (sx, sy) in &pts {
                let sz = (sx * sy).recip();
                match o.evaluate(&[(0, sx.clone()), (1, sy.clone()), (2, sz)]) {
                    Ok(v) if v.abs() == rat(1, 1) => {}
                    Ok(v) => return Some(format!("{} {:?}: value {v} at ({sx}, {sy})", c.lambda(), c.labels())),
                    Err(e) => return Some(format!("{} {:?}: {e}", c.lambda(), c.labels())),
                }
            }
            None
        },
    )
}

/// The ten acceptance sweeps at their stated sizes, unevaluated.
pub fn acceptance_suites() -> Vec<fn() -> Report> {
    vec![
        figures,
        || tvir_correspondence(&[1, 2, 3], 3, 3),
        || stability_correspondence(&[2, 3], 2, 2),
        || curve_class_translation(&[1, 2, 3], 3, 3),
        || gansner(6, 10),
        || three_way(&[2, 3], 4, 6),
        || crc(&[2, 3], 8, 6),
        || quotient_bijection(12, 4, 10),
        || tangent_properties(4, 3, 2),
        || ohat_unit(&[1, 2, 3], 4, 2, 5, 0x5eed),
    ]
}

pub fn acceptance() -> Vec<Report> {
    acceptance_suites().into_iter().map(|f| f()).collect()
}
