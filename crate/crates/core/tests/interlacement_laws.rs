use ustlab_core::graph::{
    make_complete, make_cycle, make_hypercube, make_path, make_random_connected,
};
use ustlab_core::interlacement::{sample_window, InterlacementSample, TrajectorySampler};
use ustlab_core::rng::{seeded, split_seed};
use ustlab_core::stats::{chi_square_two_sample, Tally};
use ustlab_core::ust::{wilson_fast, wired_tree_law};
use ustlab_core::{EdgeId, Error, Estimate, Network, VertexSet};

const P_MIN: f64 = 1e-3;

fn ab_law_at(g: &Network, w: &VertexSet, t: f64, samples: u64, seed: u64) -> Tally<Vec<EdgeId>> {
    let mut tally = Tally::new();
    for s in 0..samples {
        let mut window = sample_window(g, w, 0.0, t + 1.0, split_seed(seed, s)).unwrap();
        tally.add(window.ab_forest_extending(g, t).unwrap().edge_ids());
    }
    tally
}

#[test]
fn ab_forest_is_wired_ust() {
    let k4 = make_complete(4).unwrap();
    let c5 = make_cycle(5).unwrap();
    let p3 = make_path(3).unwrap();
    let cases = [
        (k4.clone(), VertexSet::singleton(&k4, 0).unwrap()),
        (c5.clone(), VertexSet::new(&c5, [0, 2]).unwrap()),
        (p3.clone(), VertexSet::new(&p3, [0, 2]).unwrap()),
    ];
    for (g, w) in cases {
        let law = wired_tree_law(&g, &w).unwrap();
        let ab = ab_law_at(&g, &w, 0.0, 100_000, 17);
        let c = ab.against(&law);
        assert!(c.p_value > P_MIN, "{c:?}");
        let mut wi = Tally::new();
        for s in 0..100_000 {
            wi.add(wilson_fast(&g, &w, s).unwrap().edge_ids());
        }
        assert!(ab.versus(&wi).p_value > P_MIN);
    }
}

#[test]
fn three_path_parent_split() {
    // b picks a or c with probability 1/2 each: two spanning trees of G/W.
    let g = make_path(3).unwrap();
    let w = VertexSet::new(&g, [0, 2]).unwrap();
    let law = wired_tree_law(&g, &w).unwrap();
    assert_eq!(law, vec![(vec![EdgeId(0)], 0.5), (vec![EdgeId(1)], 0.5)]);
}

#[test]
fn poisson_event_counts() {
    let g = make_cycle(6).unwrap();
    let w = VertexSet::new(&g, [0, 3]).unwrap();
    let counts: Vec<f64> = (0..10_000)
        .map(|s| sample_window(&g, &w, 0.0, 5.0, s).unwrap().events().len() as f64)
        .collect();
    let est = Estimate::mean_of(&counts);
    assert!(est.agrees_with(5.0, 4.0), "{est:?}");
}

#[test]
fn restriction_matches_direct_sample() {
    let g = make_cycle(6).unwrap();
    let w = VertexSet::singleton(&g, 0).unwrap();
    let bins = |xs: Vec<usize>| {
        let mut b = vec![0u64; 8];
        for x in xs {
            b[x.min(7)] += 1;
        }
        b
    };
    let restricted = bins(
        (0..20_000)
            .map(|s| {
                sample_window(&g, &w, 0.0, 2.0, s)
                    .unwrap()
                    .events_in(0.0, 1.0)
                    .len()
            })
            .collect(),
    );
    let direct = bins(
        (0..20_000)
            .map(|s| {
                sample_window(&g, &w, 0.0, 1.0, s + 1_000_000)
                    .unwrap()
                    .events()
                    .len()
            })
            .collect(),
    );
    assert!(chi_square_two_sample(&restricted, &direct).p_value > P_MIN);
}

// P(end = z) by iterating the absorbing chain until it settles.
fn endpoint_law(g: &Network, w: &VertexSet) -> Vec<f64> {
    let n = g.vertex_count();
    let mask = w.mask(n);
    let mut h = vec![vec![0.0; n]; n];
    for z in w.ids() {
        h[*z][*z] = 1.0;
    }
    for _ in 0..5000 {
        for x in (0..n).filter(|&x| !mask[x]) {
            for z in w.ids() {
                h[x][*z] = g
                    .neighbors(x)
                    .iter()
                    .map(|e| e.weight * h[e.neighbor][*z])
                    .sum::<f64>()
                    / g.degree(x);
            }
        }
    }
    let mut out = vec![0.0; n];
    for &u0 in w.ids() {
        for e in g.neighbors(u0) {
            for z in w.ids() {
                out[*z] += e.weight / w.volume() * h[e.neighbor][*z];
            }
        }
    }
    out
}

#[test]
fn trajectory_endpoints_follow_harmonic_measure() {
    let cases = [
        (make_hypercube(4).unwrap(), vec![0, 5, 10]),
        (make_random_connected(12, 0.25, 4).unwrap(), vec![1, 7]),
    ];
    for (g, w) in cases {
        let w = VertexSet::new(&g, w).unwrap();
        let exact = endpoint_law(&g, &w);
        let sampler = TrajectorySampler::new(&g, &w).unwrap();
        let mut rng = seeded(8);
        let mut counts = vec![0u64; g.vertex_count()];
        for _ in 0..50_000 {
            counts[sampler.sample(&g, &mut rng).end()] += 1;
        }
        let c = ustlab_core::stats::chi_square_gof(&counts, &exact);
        assert!(c.p_value > P_MIN, "{c:?} {exact:?}");
    }
}

#[test]
fn interlacement_set_matches_sigma() {
    let g = make_random_connected(10, 0.3, 2).unwrap();
    let w = VertexSet::new(&g, [0, 4]).unwrap();
    for s in 0..200 {
        let sample = sample_window(&g, &w, 0.0, 6.0, s).unwrap();
        let (a, b) = (1.0, 3.5);
        let scanned = sample.interlacement_set(a, b);
        let by_sigma: Vec<usize> = (0..g.vertex_count())
            .filter(|&v| match sample.sigma(v, a) {
                Ok(t) => t <= b,
                Err(Error::CoverageExhausted { .. }) => false,
                Err(e) => panic!("{e}"),
            })
            .collect();
        assert_eq!(scanned, by_sigma);
    }
}

fn chron_and_pasts_hold(g: &Network, sample: &InterlacementSample, a: f64, b: f64) -> bool {
    let fa = sample.ab_forest(g, a).unwrap();
    let fb = sample.ab_forest(g, b).unwrap();
    for v in 0..g.vertex_count() {
        if let Some(p) = fa.parent(v) {
            if sample.sigma(v, a).unwrap() < sample.sigma(p, a).unwrap() {
                return false;
            }
        }
    }
    for u in 0..g.vertex_count() {
        if sample.sigma(u, a).unwrap() > b {
            let pb = fb.past(u);
            if !fa.past(u).iter().all(|x| pb.contains(x)) {
                return false;
            }
        }
    }
    true
}

#[test]
fn chronology_and_nested_pasts() {
    let g = make_random_connected(9, 0.3, 6).unwrap();
    let w = VertexSet::new(&g, [0, 8]).unwrap();
    for s in 0..1000 {
        let mut sample = sample_window(&g, &w, 0.0, 4.0, s).unwrap();
        // make sure every σ used below exists
        while (0..9).any(|v| sample.sigma(v, 2.0).is_err()) || sample.ab_forest(&g, 2.0).is_err() {
            sample.extend(&g).unwrap();
        }
        assert!(chron_and_pasts_hold(&g, &sample, 0.5, 2.0));
    }
}

#[test]
fn forest_law_is_shift_invariant() {
    let g = make_complete(4).unwrap();
    let w = VertexSet::singleton(&g, 0).unwrap();
    let base = ab_law_at(&g, &w, 0.0, 10_000, 1);
    for x in [0.5, 3.0] {
        let shifted = ab_law_at(&g, &w, x, 10_000, 2 + x as u64);
        assert!(base.versus(&shifted).p_value > P_MIN);
    }
}
