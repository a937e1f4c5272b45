use halllab_core::bounds::{
    chernoff_lower, chernoff_upper, closed_form_sum, event_bound, hb_independence_probability,
    union_bound_threshold, weight_lemma_bound, EventKind, EventParams, LogProb, UnionLimits,
    TOLERANCE,
};
use halllab_core::generators::{unrank_pair, SemiRegularPair};
use halllab_core::rational::{ratio, to_f64, Rational};
use halllab_core::Seed;

/// Configuration space of the pair model, enumerated exhaustively.
fn enumerate_independence(pair: &SemiRegularPair, zs: &[u32]) -> Vec<Rational> {
    let b_index = pair.b_index();
    let a = pair.a;
    let choices = a * (a - 1) / 2;
    let per_vertex: Vec<Vec<u32>> = pair
        .side_a()
        .iter()
        .map(|&v| {
            let nbrs = pair.graph.neighbors(v);
            (0..choices)
                .map(|k| {
                    let (i, j) = unrank_pair(a, k);
                    1 << b_index[nbrs[i]].unwrap() | 1 << b_index[nbrs[j]].unwrap()
                })
                .collect()
        })
        .collect();
    let total = choices.pow(per_vertex.len() as u32);
    let mut hits = vec![0u64; zs.len()];
    let mut digits = vec![0usize; per_vertex.len()];
    for _ in 0..total {
        for (h, &z) in hits.iter_mut().zip(zs) {
            if per_vertex.iter().zip(&digits).all(|(opts, &d)| opts[d] & z != opts[d]) {
                *h += 1;
            }
        }
        for (d, _) in digits.iter_mut().zip(&per_vertex) {
            *d += 1;
            if *d < choices {
                break;
            }
            *d = 0;
        }
    }
    hits.iter().map(|&h| Rational::new((h as i64).into(), (total as i64).into())).collect()
}

fn corpus() -> Vec<SemiRegularPair> {
    let mut out = vec![
        SemiRegularPair::cyclic(3, 4, 3).unwrap(),
        SemiRegularPair::cyclic(4, 3, 3).unwrap(),
        SemiRegularPair::cyclic(6, 2, 3).unwrap(),
        SemiRegularPair::cyclic(12, 1, 3).unwrap(),
        SemiRegularPair::cyclic(4, 1, 4).unwrap(),
        SemiRegularPair::cyclic(5, 1, 4).unwrap(),
    ];
    let shapes = [(3, 4), (4, 3), (6, 2), (12, 1), (3, 3), (5, 2), (8, 1), (10, 1)];
    for (i, &(b, q)) in shapes.iter().enumerate() {
        for s in 0..2 {
            out.push(SemiRegularPair::random(b, q, 3, Seed::new(i as u64 * 10 + s)).unwrap());
        }
    }
    out
}

fn z_masks(nb: usize, seed: u64) -> Vec<u32> {
    if nb <= 6 {
        return (0..1u32 << nb).collect();
    }
    let mut rng = Seed::new(seed).rng();
    let mut zs: Vec<u32> = (0..40).map(|_| rand::Rng::gen_range(&mut rng, 0..1u32 << nb)).collect();
    zs.push((1 << nb) - 1);
    zs
}

#[test]
fn hb_law_matches_enumeration() {
    let pairs = corpus();
    assert!(pairs.len() >= 20);
    for (i, pair) in pairs.iter().enumerate() {
        let b = pair.side_b();
        let configs = (pair.a * (pair.a - 1) / 2).pow(pair.side_a().len() as u32);
        assert!(configs <= 3usize.pow(12));
        let zs = z_masks(b.len(), i as u64);
        let freq = enumerate_independence(pair, &zs);
        for (&z, f) in zs.iter().zip(&freq) {
            let set: Vec<usize> = (0..b.len()).filter(|&k| z >> k & 1 == 1).map(|k| b[k]).collect();
            assert_eq!(&hb_independence_probability(pair, &set).unwrap(), f, "pair {i}, Z = {z:b}");
        }
    }
}

#[test]
fn hb_law_below_weight_bound() {
    let mut checked = 0;
    for pair in corpus() {
        let b = pair.side_b();
        let nb = b.len();
        let deg = pair.b_degrees();
        for z in 0..1u32 << nb {
            let set: Vec<usize> = (0..nb).filter(|&k| z >> k & 1 == 1).map(|k| b[k]).collect();
            let deg_z: usize = (0..nb).filter(|&k| z >> k & 1 == 1).map(|k| deg[k]).sum();
            if deg_z <= pair.q * nb {
                continue;
            }
            let p = to_f64(&hb_independence_probability(&pair, &set).unwrap());
            let bound = weight_lemma_bound(pair.a, pair.q, nb, deg_z).unwrap().bound;
            assert!(p <= bound.to_f64() * (1.0 + TOLERANCE), "{p} > {bound}");
            checked += 1;
        }
    }
    assert!(checked > 1000);
}

#[test]
fn chernoff_grids_are_monotone() {
    let mus = [0.5, 1.0, 5.0, 40.0, 80.0, 1000.0];
    let deltas = [0.1, 0.25, 0.5, 0.75, 1.0];
    for &d in &deltas {
        for w in mus.windows(2) {
            assert!(chernoff_upper(w[1], d).unwrap() <= chernoff_upper(w[0], d).unwrap());
            assert!(chernoff_lower(w[1], d).unwrap() <= chernoff_lower(w[0], d).unwrap());
        }
    }
    for &mu in &mus {
        for w in deltas.windows(2) {
            assert!(chernoff_upper(mu, w[1]).unwrap() <= chernoff_upper(mu, w[0]).unwrap());
            assert!(chernoff_lower(mu, w[1]).unwrap() <= chernoff_lower(mu, w[0]).unwrap());
        }
    }
    assert!(chernoff_upper(40.0, 1.0).unwrap().lt(LogProb::from_ln(-13.0)));
    assert_eq!(chernoff_lower(40.0, 0.5).unwrap().to_string(), "e^-5");
}

#[test]
fn event_bound_grid() {
    for big_m in 2..=4u32 {
        for root in [2.0, 3.0, 10.0, 100.0, 1000.0] {
            for m in 2..=big_m {
                for s in [1u64, 2, 3, 10, 100, 5000] {
                    for t in [4 * s, 4 * s + 3, 10 * s] {
                        let Ok(p) = EventParams::from_root(root, big_m, m, s, t) else { continue };
                        for kind in [EventKind::Branch, EventKind::Subdivision] {
                            let e = event_bound(kind, &p);
                            assert!(e.full.le_tol(e.simplified), "{kind:?} M={big_m} x={root} m={m} s={s} t={t}");
                        }
                        let e = event_bound(EventKind::Branch, &p);
                        // exponent 4s - 2t <= -2s
                        assert!(e.simplified.ln() <= 2.0 * t as f64 * (std::f64::consts::LN_2 + 1.0) - 2.0 * s as f64 * p.eps_k() * p.ln_n + 1e-6);
                    }
                }
            }
        }
    }
}

#[test]
fn event_bound_small_case() {
    let p = EventParams::new(65536.0, 2, 2, 1, 4).unwrap();
    let e = event_bound(EventKind::Branch, &p);
    assert!(!e.simplified_meets_target);
    assert!(e.target == LogProb::from_ln(-4.0 * 16f64.ln()));
}

#[test]
fn union_bound_for_m2() {
    let roots: Vec<u64> = (1..=12).map(|k| 1u64 << k).chain([3000, 5000]).collect();
    let mut sorted = roots.clone();
    sorted.sort();
    let r = union_bound_threshold(2, &sorted, UnionLimits::default()).unwrap();
    assert!(r.monotone);
    let min = r.minimal_passing.unwrap();
    let idx = r.candidates.iter().position(|c| c.root == min).unwrap();
    assert!(r.candidates[..idx].iter().all(|c| !c.passes));
    assert!(r.candidates[idx..].iter().all(|c| c.passes && c.b_at_most_n));
    assert_eq!(closed_form_sum(2), ratio(1, 16384));
}

#[test]
fn union_bound_reports_best_when_nothing_passes() {
    let r = union_bound_threshold(2, &[2, 3, 4], UnionLimits::default()).unwrap();
    assert!(r.minimal_passing.is_none());
    assert!(r.best().is_some());
}
