use num_rational::Rational64;
use proptest::prelude::*;
use rayon::prelude::*;
use vertexlab::charlab::*;
use vertexlab::cy_vertex::*;
use vertexlab::partitions::*;
use vertexlab::quiver_geom::framing_var;

fn p(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn mp(legs: &[&[usize]]) -> MultiPartition {
    MultiPartition::new(legs.iter().map(|l| p(l)).collect()).unwrap()
}

/// `Π 1/(1 − w)` over the given exponent vectors.
fn geometric_product(vars: &[String], weights: &[i64], order: i64, ws: &[Vec<i64>]) -> TruncSeries {
    let mut out = TruncSeries::zero_weighted(vars, weights, order).one_like();
    for w in ws {
        out = out.mul(&out.one_minus_pow(w, 1).unwrap()).unwrap();
    }
    out
}

/// Hook product `Π_□ 1/(1 − Q^{h(□)})` built factor by factor.
fn hook_product(lambda: &Partition, order: i64) -> TruncSeries {
    let hooks: Vec<Vec<i64>> = lambda
        .cells()
        .map(|(r, c)| vec![lambda.arm_leg_hook(r, c).unwrap().2 as i64])
        .collect();
    geometric_product(&["Q".to_string()], &[1], order, &hooks)
}

/// Colored reverse plane partitions by direct recursion: labels are
/// non-negative and weakly increase along rows and columns; cells of
/// color `c` contribute to `z_c`. Only total size ≤ `order` is kept.
fn rpp_oracle(lambda: &Partition, m: usize, order: i64) -> TruncSeries {
    let cells: Vec<(usize, usize)> = lambda.cells().collect();
    let mut out = TruncSeries::zero(&orbifold_vars(m), order);
    let mut labels = vec![0i64; cells.len()];
    fn go(
        k: usize,
        cells: &[(usize, usize)],
        labels: &mut Vec<i64>,
        m: usize,
        order: i64,
        used: i64,
        out: &mut TruncSeries,
    ) {
        if k == cells.len() {
            let mut d = vec![0; m];
            for (&(r, c), &l) in cells.iter().zip(labels.iter()) {
                d[color(c as i64, r as i64, m)] += l;
            }
            out.add_int(d, 1);
            return;
        }
        let (r, c) = cells[k];
        let mut lo = 0;
        for (j, &(r2, c2)) in cells[..k].iter().enumerate() {
            if (r2 == r && c2 + 1 == c) || (c2 == c && r2 + 1 == r) {
                lo = lo.max(labels[j]);
            }
        }
        for l in lo..=order - used {
            labels[k] = l;
            go(k + 1, cells, labels, m, order, used + l, out);
        }
    }
    go(0, &cells, &mut labels, m, order, 0, &mut out);
    out
}

fn int(k: i64) -> num_rational::BigRational {
    num_rational::BigRational::from_integer(k.into())
}

fn single_leg_targets(m: usize, max: usize) -> Vec<MultiPartition> {
    (0..m)
        .flat_map(|a| {
            partitions_up_to(max)
                .into_iter()
                .map(move |l| MultiPartition::single(m, a, l))
        })
        .collect()
}

#[test]
fn schur_principal_examples() {
    let s = schur_principal(&p(&[1]), 4);
    assert_eq!(s.q_power, Rational64::new(1, 2));
    assert_eq!(s.series, hook_product(&p(&[1]), 4));
    let s = schur_principal(&p(&[2, 1]), 6);
    assert_eq!(s.q_power, Rational64::new(5, 2));
    assert_eq!(s.series, hook_product(&p(&[2, 1]), 6));
    let e = schur_principal(&Partition::empty(), 3);
    assert_eq!(e.q_power, Rational64::from_integer(0));
    assert_eq!(e.series.to_string(), "1 + O(deg 4)");
}

#[test]
fn bracket_ratio_examples() {
    let vars = resolved_vars(2);
    let b = bracket_ratio(&p(&[1]), &Partition::empty(), &a_ab(0, 1), 2, &[1, 1], 5).unwrap();
    assert_eq!(b, geometric_product(&vars, &[1, 1], 5, &[vec![0, 1]]));
    let e = bracket_ratio(&Partition::empty(), &Partition::empty(), &a_ab(0, 1), 2, &[1, 1], 5).unwrap();
    assert_eq!(e, TruncSeries::zero(&vars, 5).one_like());
    assert_eq!(
        a_ab(0, 2),
        Monomial::from_exps([(framing_var(1), 1), (framing_var(3), -1)])
    );
}

#[test]
fn topological_examples() {
    let q = geometric_product(&resolved_vars(1), &[1], 6, &[vec![1]]);
    assert_eq!(cy_vertex_topological(&mp(&[&[1]]), 6).unwrap(), q);
    let t = mp(&[&[1], &[]]);
    let want = geometric_product(&resolved_vars(2), &[1, 1], 6, &[vec![1, 0], vec![0, 1]]);
    assert_eq!(resolved_weights(&t).unwrap(), vec![1, 1]);
    assert_eq!(cy_vertex_topological(&t, 6).unwrap(), want);
    let e = cy_vertex_topological(&MultiPartition::empty(3), 4).unwrap();
    assert_eq!(e.to_string(), "1 + O(deg 5)");
}

#[test]
fn grading_makes_every_factor_positive() {
    // ((2), ∅) needs Q^{-1} A_1 in the vertex, so deg A_1 = 2.
    assert_eq!(resolved_weights(&mp(&[&[2], &[]])).unwrap(), vec![1, 2]);
    assert_eq!(resolved_weights(&mp(&[&[1, 1], &[]])).unwrap(), vec![1, 1]);
    assert_eq!(resolved_weights(&mp(&[&[4], &[], &[]])).unwrap(), vec![1, 4, 4]);
}

#[test]
fn mirror_examples() {
    let q = geometric_product(&resolved_vars(1), &[1], 6, &[vec![1]]);
    assert_eq!(cy_vertex_mirror(&mp(&[&[1]]), Chamber::Minus, 6).unwrap(), q);
    let want = geometric_product(&resolved_vars(2), &[1, 1], 6, &[vec![1, 0], vec![0, 1]]);
    assert_eq!(cy_vertex_mirror(&mp(&[&[1], &[]]), Chamber::Minus, 6).unwrap(), want);
    let e = cy_vertex_mirror(&MultiPartition::empty(2), Chamber::Minus, 6).unwrap();
    assert_eq!(e.to_string(), "1 + O(deg 7)");
    assert_eq!(mirror_label(&mp(&[&[2, 1, 1], &[3]])), mp(&[&[3, 1], &[1, 1, 1]]));
}

#[test]
fn wrong_chamber_is_reported() {
    // C_plus does not make the resolved vertex a power series in (Q, A).
    let err = cy_vertex_mirror(&mp(&[&[2], &[]]), Chamber::Plus, 6).unwrap_err();
    assert!(err.to_string().contains("chamber"), "{err}");
}

#[test]
fn enumeration_examples() {
    // 1/((1−Q)^2 (1−Q^3)) = 1 + 2Q + 3Q^2 + …
    let r = rpp_series(&p(&[2, 1]), 1, 6).unwrap();
    let want = geometric_product(&orbifold_vars(1), &[1], 6, &[vec![1], vec![1], vec![3]]);
    assert_eq!(r, want);
    assert_eq!(r.coeff(&[1]), int(2));
    assert_eq!(r.coeff(&[2]), int(3));
    let r = rpp_series(&p(&[1, 1]), 2, 8).unwrap();
    assert_eq!(
        r,
        geometric_product(&orbifold_vars(2), &[1, 1], 8, &[vec![1, 1], vec![0, 1]])
    );
    let g = grpp_series(&mp(&[&[1], &[]]), 6).unwrap();
    assert_eq!(
        g,
        geometric_product(&resolved_vars(2), &[1, 1], 6, &[vec![1, 0], vec![0, 1]])
    );
    assert!(rpp_series(&p(&[2]), 3, 4).is_err());
    assert!(grpp_series(&mp(&[&[1], &[1]]), 4).is_err());
}

#[test]
fn gansner_identity() {
    partitions_up_to(6).into_par_iter().for_each(|l| {
        let rpp = rpp_series(&l, 1, 10).unwrap();
        assert_eq!(rpp, rpp_oracle(&l, 1, 10), "{l}");
        // m = 1: Q = z_0
        let rpp = rpp.renamed(&["Q"]).unwrap();
        assert_eq!(rpp, hook_product(&l, 10), "{l}");
        assert_eq!(rpp, schur_principal(&l, 10).series, "{l}");
        let t = MultiPartition::new(vec![l.clone()]).unwrap();
        assert_eq!(rpp, cy_vertex_mirror(&t, Chamber::Minus, 10).unwrap(), "{l}");
    });
}

#[test]
fn three_way_agreement() {
    let targets: Vec<_> = [2, 3].into_iter().flat_map(|m| single_leg_targets(m, 4)).collect();
    targets.into_par_iter().for_each(|t| {
        let top = cy_vertex_topological(&t, 6).unwrap();
        assert_eq!(grpp_series(&t, 6).unwrap(), top, "{t}");
        assert_eq!(cy_vertex_mirror(&t, Chamber::Minus, 6).unwrap(), top, "{t}");
    });
}

#[test]
fn colored_orbifold_identity() {
    let cases: Vec<_> = [2usize, 3]
        .into_iter()
        .flat_map(|m| {
            partitions_up_to(6)
                .into_iter()
                .filter(move |l| l.is_uniformly_colored(m))
                .map(move |l| (l, m))
        })
        .collect();
    cases.into_par_iter().for_each(|(l, m)| {
        let rpp = rpp_series(&l, m, 6).unwrap();
        assert_eq!(rpp, rpp_oracle(&l, m, 6), "{l} m={m}");
        let mirror = cy_vertex_mirror_orbifold(&l.m_quotient(m), Chamber::Plus, 6).unwrap();
        assert_eq!(rpp, mirror, "{l} m={m}");
    });
}

#[test]
fn crc_examples() {
    let e = crc_check(&Partition::empty(), 2, 8).unwrap();
    assert_eq!((e.monomial_string(), e.holds), ("1".to_string(), true));
    let c = crc_check(&p(&[1, 1]), 2, 8).unwrap();
    assert_eq!((c.sign, c.exps.clone(), c.holds), (1, vec![0, 0], true));
    let c = crc_check(&p(&[2, 1, 1]), 2, 8).unwrap();
    assert_eq!(c.monomial_string(), "-z_0^-1");
    assert!(crc_check(&p(&[2]), 3, 4).is_err());
}

#[test]
fn crc_sweep() {
    let cases: Vec<_> = [2usize, 3]
        .into_iter()
        .flat_map(|m| {
            partitions_up_to(8)
                .into_iter()
                .filter(move |l| l.is_uniformly_colored(m))
                .map(move |l| (l, m))
        })
        .collect();
    assert!(cases.len() > 40);
    cases.into_par_iter().for_each(|(l, m)| {
        let c = crc_check(&l, m, 6).unwrap();
        assert!(c.holds, "{l} m={m}");
        assert!(c.sign == 1 || c.sign == -1);
    });
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn topological_matches_mirror_on_two_legs(
        a in proptest::collection::vec(1usize..3, 0..3),
        b in proptest::collection::vec(1usize..3, 0..3),
        third in any::<bool>(),
    ) {
        let mut a = a; a.sort_unstable_by(|x, y| y.cmp(x));
        let mut b = b; b.sort_unstable_by(|x, y| y.cmp(x));
        let mut legs = vec![Partition::new(a).unwrap(), Partition::new(b).unwrap()];
        if third {
            legs.push(Partition::empty());
        }
        let t = MultiPartition::new(legs).unwrap();
        let top = cy_vertex_topological(&t, 4).unwrap();
        prop_assert_eq!(cy_vertex_mirror(&t, Chamber::Minus, 4).unwrap(), top);
    }

    #[test]
    fn series_start_at_one(n in 0usize..5, m in 1usize..4, a in 0usize..3) {
        for l in enumerate_partitions(n) {
            let t = MultiPartition::single(m, a % m, l);
            let s = cy_vertex_topological(&t, 3).unwrap();
            prop_assert_eq!(s.coeff(&vec![0; m]), int(1));
        }
    }
}
