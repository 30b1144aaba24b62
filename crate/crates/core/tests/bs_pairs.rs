use rayon::prelude::*;
use vertexlab::bs_pairs::*;
use vertexlab::charlab::*;
use vertexlab::partitions::*;
use vertexlab::qm_components::*;
use vertexlab::quiver_geom::*;

fn p(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn mp(legs: &[&[usize]]) -> MultiPartition {
    MultiPartition::new(legs.iter().map(|l| p(l)).collect()).unwrap()
}

fn mono(s: &str) -> Monomial {
    Character::parse_monomial(&VarRegistry::geometric(), s).unwrap()
}

fn ch(terms: &[(&str, i64)]) -> Character {
    let r = VarRegistry::geometric();
    Character::from_terms(&r, terms.iter().map(|(m, k)| (mono(m), *k)))
}

fn targets(ms: &[usize], max_size: usize) -> Vec<MultiPartition> {
    ms.iter()
        .flat_map(|&m| (0..=max_size).flat_map(move |n| enumerate_multipartitions(m, n)))
        .collect()
}

#[test]
fn rod_lower_bound() {
    assert!(rod_in_t(&[0, 0, 0, -1]));
    assert!(rod_in_t(&[-1, 0]));
    assert!(!rod_in_t(&[-1, -1]));
    assert!(!rod_in_t(&[-2]));
    assert!(rod_in_t(&[]));
}

#[test]
fn rod_upper_bound() {
    assert_eq!(exposed_rod_max(1), vec![-2]);
    assert_eq!(exposed_rod_max(2), vec![-1, -1]);
    assert_eq!(exposed_rod_max(3), vec![-1, 0, -1]);
    assert!(!exposed_admissible(&[-1]));
    assert!(exposed_admissible(&[-2]));
    assert!(exposed_admissible(&[-3, -1]));
    assert!(!exposed_admissible(&[-1, 0, 0]));
}

#[test]
fn standard_rods_have_maximal_exposed_parts() {
    for m in 2..6 {
        for a in 0..m {
            for len in 1..m - a {
                let r = standard_rod(m, a, Direction::Rightward, len, &Monomial::one()).unwrap();
                assert!(rod_in_t(&r.degrees));
                let pr = PlacedRod {
                    level: -1,
                    direction: Direction::Rightward,
                    generator: Some(a),
                    rod: r,
                };
                assert_eq!(pr.exposed_degrees(), exposed_rod_max(len));
                assert_eq!(pr.rod.linearization_at(a), Monomial::one());
            }
            for len in 1..=a {
                let r = standard_rod(m, a, Direction::Leftward, len, &Monomial::one()).unwrap();
                assert!(rod_in_t(&r.degrees));
                assert_eq!(r.linearization_at(a), Monomial::one());
                let pr = PlacedRod {
                    level: -1,
                    direction: Direction::Leftward,
                    generator: Some(a),
                    rod: r,
                };
                assert_eq!(pr.exposed_degrees(), exposed_rod_max(len));
            }
        }
    }
}

#[test]
fn rod_linearization_example() {
    // O_E(1, −1) on A_2 generated at p_0 by z^{-1}.
    let r = Rod::new(3, 1, 2, vec![1, -1], mono("z^-1")).unwrap();
    assert_eq!(r.linearization_at(1), mono("x y^-2 z^-1"));
    assert_eq!(r.linearization_at(2), mono("x^-1 y^-1 z^-1"));
    assert!(Rod::new(3, 0, 1, vec![0, 0], Monomial::one()).is_err());
    assert!(Rod::new(3, 1, 2, vec![0], Monomial::one()).is_err());
}

#[test]
fn local_model_examples() {
    let lm = LocalModel::new(0, (0, 0), vec![0, 0, 0]).unwrap();
    assert!(local_model_rods(&lm).unwrap().is_empty());

    let lm = LocalModel::new(0, (0, 0), vec![0, 1]).unwrap();
    let rods = local_model_rods(&lm).unwrap();
    assert_eq!(rods.len(), 1);
    assert_eq!((rods[0].level, rods[0].direction), (-1, Direction::Rightward));
    assert_eq!((rods[0].rod.start, rods[0].rod.end), (1, 1));
    assert_eq!(rods[0].rod.degrees, vec![-1]);
    assert_eq!(rods[0].rod.linearization, mono("z^-1"));

    let lm = LocalModel::new(1, (0, 0), vec![0, 2, 1]).unwrap();
    let rods = local_model_rods(&lm).unwrap();
    let summary: Vec<_> = rods
        .iter()
        .map(|r| (r.level, r.direction, r.rod.start, r.rod.end))
        .collect();
    assert_eq!(
        summary,
        vec![
            (-2, Direction::Leftward, 1, 1),
            (-1, Direction::Leftward, 1, 1),
            (-1, Direction::Rightward, 2, 2),
        ]
    );

    assert!(LocalModel::new(0, (0, 0), vec![1, 0]).is_err());
    // a rod over E_1 cannot reach the column at p_2 without covering E_2
    let lm = LocalModel::new(2, (0, 0), vec![0, 1, 0]).unwrap();
    assert!(local_model_rods(&lm).is_err());
}

#[test]
fn local_model_rod_lengths_increase_with_level() {
    let lm = LocalModel::new(2, (1, 0), vec![-1, 2, 3, 1, 0]).unwrap();
    let rods = local_model_rods(&lm).unwrap();
    for dir in [Direction::Leftward, Direction::Rightward] {
        let lens: Vec<(i64, usize)> = rods
            .iter()
            .filter(|r| r.direction == dir)
            .map(|r| (r.level, r.rod.len()))
            .collect();
        assert!(lens.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 <= w[1].1), "{lens:?}");
    }
    let count = |c: usize| rods.iter().filter(|r| r.rod.covers(c)).count() as i64;
    for c in 1..5 {
        assert_eq!(count(c), lm.e[c] - lm.e[0]);
    }
}

#[test]
fn skyscraper_images() {
    let k0 = mckay_skyscraper(0, 2).unwrap();
    assert_eq!(k0.sign, -1);
    let rod = k0.rod.as_ref().unwrap();
    assert_eq!(rod.degrees, vec![-2]);
    assert_eq!(rod.linearization_at(0), chart_coordinates(2, 0).0);

    let k1 = mckay_skyscraper(1, 3).unwrap();
    assert_eq!(k1.sign, 1);
    let rod = k1.rod.as_ref().unwrap();
    assert_eq!((rod.start, rod.end, rod.degrees.clone()), (1, 1, vec![-1]));
    assert_eq!(rod.linearization_at(1), chart_coordinates(3, 1).0);

    for m in 2..7usize {
        let k0 = mckay_skyscraper(0, m).unwrap();
        let rod = k0.rod.as_ref().unwrap();
        assert_eq!(
            rod.degrees,
            exposed_rod_max(m - 1)
                .iter()
                .map(|&d| if m == 2 { -2 } else { d })
                .collect::<Vec<_>>()
        );
        let mm = m as i64 - 1;
        assert_eq!(k0.charts[0], ch(&[("x y", 1), (&format!("x y^{}", -mm), -1)]));
        for a in 1..m - 1 {
            assert_eq!(k0.charts[a], ch(&[("x y", 1), ("1", -1)]));
        }
        assert_eq!(k0.charts[m - 1], ch(&[("x y", 1), (&format!("x^{} y", -mm), -1)]));
    }
    assert!(mckay_skyscraper(3, 3).is_err());
    let id = mckay_skyscraper(0, 1).unwrap();
    assert!(id.rod.is_none());
    assert_eq!(id.charts[0], ch(&[("1", 1), ("x", -1), ("y", -1), ("x y", 1)]));
}

#[test]
fn skyscraper_images_match_koszul_rule() {
    for m in 1..6usize {
        for k in 0..m {
            let img = mckay_skyscraper(k, m).unwrap();
            let w = if k == 0 || m == 1 {
                Monomial::one()
            } else {
                Monomial::var(0, k as i32).mul(&chart_coordinates(m, k).0)
            };
            for a in 0..m {
                assert_eq!(
                    img.charts[a],
                    mckay_chart_numerator(&w, m, a).unwrap(),
                    "m={m} k={k} a={a}"
                );
            }
        }
    }
}

#[test]
fn hook_images_are_single_boxes() {
    // The skyscrapers of one hook at one level assemble to one box at p_a.
    for m in 1..6usize {
        for a in 0..m {
            let hook = HookShape::new(m, a, (1, 2));
            for b in 0..m {
                let mut sum = Character::zero(&VarRegistry::geometric());
                for c in 0..m {
                    sum = &sum + &mckay_chart_numerator(&hook.square(c), m, b).unwrap();
                }
                let expected = if a == b {
                    let (xa, ya) = chart_coordinates(m, a);
                    let w = hook.square(0);
                    Character::from_terms(
                        &VarRegistry::geometric(),
                        [
                            (w.clone(), 1),
                            (w.mul(&xa), -1),
                            (w.mul(&ya), -1),
                            (w.mul(&xa).mul(&ya), 1),
                        ],
                    )
                } else {
                    Character::zero(&VarRegistry::geometric())
                };
                assert_eq!(sum, expected, "m={m} a={a} chart {b}");
            }
        }
    }
}

/// The McKay image computed square by square and level by level.
fn koszul_image(l: &HookLabeling, a: usize) -> Character {
    let m = l.m();
    let mut out = Character::zero(&VarRegistry::geometric());
    for (w, &d) in l.weights().iter().zip(l.labels()) {
        let (range, sign) = if d > 0 { (-d..0, 1) } else { (0..-d, -1) };
        for k in range {
            let wk = w.mul(&Monomial::var(2, k as i32));
            out = &out + &mckay_chart_numerator(&wk, m, a).unwrap().scale(sign);
        }
    }
    out
}

#[test]
fn figure_configuration() {
    let l = HookLabeling::new(&mp(&[&[1], &[1]]), &[vec![0, 1], vec![1, 1]]).unwrap();
    let s = mckay_labeling_to_sheaf(&l).unwrap();
    assert_eq!(s.columns.len(), 2);
    assert_eq!(s.rods().count(), 1);
    let r = s.rods().next().unwrap();
    assert_eq!((r.level, r.direction, r.generator), (-1, Direction::Rightward, Some(0)));
    assert_eq!(s.columns[1].model.base_level(), -1);
    assert_eq!(curve_class_from_sheaf(&s), CurveClass { n: 1, beta: vec![1] });
    let text = s.to_string();
    assert!(text.contains("right"), "{text}");
}

#[test]
fn single_hook_with_one_rod() {
    let l = HookLabeling::new(&mp(&[&[1], &[]]), &[vec![0, 1]]).unwrap();
    let s = mckay_labeling_to_sheaf(&l).unwrap();
    let rods: Vec<_> = s.rods().collect();
    assert_eq!(rods.len(), 1);
    assert_eq!(rods[0].level, -1);
    assert_eq!(rods[0].rod.linearization, mono("z^-1"));
    assert_eq!(curve_class_from_sheaf(&s), CurveClass { n: 0, beta: vec![1] });
}

#[test]
fn pure_legs() {
    let t = mp(&[&[2, 1], &[1]]);
    let s = mckay_labeling_to_sheaf(&HookLabeling::zero(&t)).unwrap();
    assert_eq!(s.rods().count(), 0);
    assert_eq!(curve_class_from_sheaf(&s), CurveClass { n: 0, beta: vec![0] });
    for a in 0..2 {
        assert!(s.chart_numerator(a).is_zero());
    }
}

#[test]
fn unstable_labelings_are_rejected() {
    let t = mp(&[&[1], &[]]);
    let l = HookLabeling::new(&t, &[vec![-1, 0]]).unwrap();
    assert!(!pi_stability_check(&l));
    assert!(mckay_labeling_to_sheaf(&l).is_err());
    let l = HookLabeling::new(&t, &[vec![1, 0]]).unwrap();
    assert!(!pi_stability_check(&l));
}

#[test]
fn tvir_examples() {
    let t = mp(&[&[1]]);
    let l = HookLabeling::zero(&t);
    assert_eq!(tvir_bs(&l), ch(&[("x^-1", 1), ("y^-1", 1)]));
    let empty = HookLabeling::zero(&MultiPartition::empty(2));
    assert!(tvir_bs(&empty).is_zero());
}

#[test]
fn m1_is_pt_box_counting() {
    for n in 0..=3 {
        for t in enumerate_multipartitions(1, n) {
            for l in enumerate_components(&t, 2) {
                let s = mckay_labeling_to_sheaf(&l).unwrap();
                assert_eq!(s.rods().count(), 0);
                let boxes: i64 = s.columns.iter().map(|c| c.model.e[0]).sum();
                assert_eq!(curve_class_from_sheaf(&s).n, boxes);
            }
        }
    }
}

#[test]
fn stability_correspondence_sweep() {
    let ts = targets(&[1, 2, 3], 2);
    ts.par_iter().for_each(|t| {
        for l in enumerate_components_in(t, -2, 2, Filter::All) {
            assert_eq!(pi_stability_check(&l), is_stable(&l), "{} {:?}", t, l.hook_vectors());
        }
    });
}

#[test]
fn correspondence_on_stable_labelings() {
    let ts = targets(&[1, 2, 3], 2);
    ts.par_iter().for_each(|t| {
        for l in enumerate_components(t, 2) {
            assert_eq!(tvir_bs(&l), tvir_quasimap(&l), "{} {:?}", t, l.hook_vectors());
            let s = mckay_labeling_to_sheaf(&l).unwrap();
            assert_eq!(curve_class_from_sheaf(&s), to_curve_class(&degrees(&l)));
            for r in s.rods() {
                assert!(rod_in_t(&r.rod.degrees));
                assert!(exposed_admissible(&r.exposed_degrees()));
            }
            for a in 0..t.m() {
                assert_eq!(
                    s.chart_numerator(a),
                    koszul_image(&l, a),
                    "{} {:?} chart {a}",
                    t,
                    l.hook_vectors()
                );
            }
        }
    });
}

/// `H^•((V + V^∨/xy − V V^∨ (1−x)(1−y)/xy)^Γ)` with generic line-bundle arithmetic.
fn tvir_bs_oracle(l: &HookLabeling) -> Character {
    let reg = VarRegistry::geometric();
    let v = total_bundle(l);
    let koszul = LineBundleSum::from_terms(
        &reg,
        [
            (hbar(), 0, 1),
            (mono("x^-1"), 0, -1),
            (mono("y^-1"), 0, -1),
            (Monomial::one(), 0, 1),
        ],
    );
    let vv = v.mul(&v.dual()).unwrap().mul(&koszul).unwrap();
    let t = v.add(&v.dual().twist(&hbar())).unwrap().sub(&vv).unwrap();
    hcoh_p1(&gamma_invariants_bundle(&t, l.m()).unwrap()).unwrap()
}

#[test]
fn tvir_bs_matches_generic_algebra() {
    for m in 1..=3 {
        for n in 0..=2 {
            for t in enumerate_multipartitions(m, n) {
                for l in enumerate_components_in(&t, -2, 2, Filter::All) {
                    assert_eq!(tvir_bs(&l), tvir_bs_oracle(&l), "{:?}", l.hook_vectors());
                }
            }
        }
    }
}
