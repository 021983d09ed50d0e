use super::exact::{capacity_exact, closeness_exact};
use super::{lazy_step, Estimate, StationarySampler, WalkLaw};
use crate::error::{Error, Result};
use crate::graph::{Network, VertexSet};
use crate::rng::seeded;

/// Fraction of `samples` lazy walks from stationary starts that meet `U`
/// within steps `0..r`.
pub fn capacity_monte_carlo(
    g: &Network,
    u_set: &VertexSet,
    r: usize,
    samples: usize,
    seed: u64,
) -> Result<Estimate> {
    if u_set.is_empty() {
        return Err(Error::EmptySet);
    }
    if r == 0 || samples == 0 {
        return Err(Error::invalid("capacity needs r >= 1 and samples >= 1"));
    }
    let mask = u_set.mask(g.vertex_count());
    let pi = StationarySampler::new(g);
    let mut rng = seeded(seed);
    let hits = (0..samples)
        .filter(|_| {
            let mut x = pi.sample(&mut rng);
            if mask[x] {
                return true;
            }
            for _ in 1..r {
                x = lazy_step(g, x, &mut rng);
                if mask[x] {
                    return true;
                }
            }
            false
        })
        .count();
    Ok(Estimate::proportion(hits, samples))
}

/// Fraction of walks that meet both `U₁` and `U₂` within steps `0..r`.
pub fn closeness_monte_carlo(
    g: &Network,
    u1: &VertexSet,
    u2: &VertexSet,
    r: usize,
    samples: usize,
    seed: u64,
) -> Result<Estimate> {
    if u1.is_empty() || u2.is_empty() {
        return Err(Error::EmptySet);
    }
    if r == 0 || samples == 0 {
        return Err(Error::invalid("closeness needs r >= 1 and samples >= 1"));
    }
    let n = g.vertex_count();
    let (m1, m2) = (u1.mask(n), u2.mask(n));
    let pi = StationarySampler::new(g);
    let mut rng = seeded(seed);
    let hits = (0..samples)
        .filter(|_| {
            let mut x = pi.sample(&mut rng);
            let (mut a, mut b) = (m1[x], m2[x]);
            for _ in 1..r {
                if a && b {
                    break;
                }
                x = lazy_step(g, x, &mut rng);
                a |= m1[x];
                b |= m2[x];
            }
            a && b
        })
        .count();
    Ok(Estimate::proportion(hits, samples))
}

/// `Cap_r(U)` with the requested backend.
pub fn capacity(g: &Network, u_set: &VertexSet, r: usize, law: WalkLaw) -> Result<Estimate> {
    match law {
        WalkLaw::Exact => capacity_exact(g, u_set, r).map(Estimate::exact),
        WalkLaw::MonteCarlo { samples, seed } => capacity_monte_carlo(g, u_set, r, samples, seed),
    }
}

/// `Close_r(U₁, U₂)` with the requested backend.
pub fn closeness(
    g: &Network,
    u1: &VertexSet,
    u2: &VertexSet,
    r: usize,
    law: WalkLaw,
) -> Result<Estimate> {
    match law {
        WalkLaw::Exact => closeness_exact(g, u1, u2, r).map(Estimate::exact),
        WalkLaw::MonteCarlo { samples, seed } => closeness_monte_carlo(g, u1, u2, r, samples, seed),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_complete, make_hypercube};

    #[test]
    fn monte_carlo_capacity_agrees_with_exact_on_k3() {
        let k3 = make_complete(3).unwrap();
        let u = VertexSet::new(&k3, [0]).unwrap();
        let law = WalkLaw::MonteCarlo {
            samples: 100_000,
            seed: 9,
        };
        let est = capacity(&k3, &u, 2, law).unwrap();
        assert!(est.agrees_with(0.5, 4.0), "{est:?}");
    }

    #[test]
    fn monte_carlo_closeness_agrees_with_exact() {
        let g = make_hypercube(4).unwrap();
        let a = VertexSet::new(&g, [0, 3]).unwrap();
        let b = VertexSet::new(&g, [5, 9, 12]).unwrap();
        let exact = closeness(&g, &a, &b, 6, WalkLaw::Exact).unwrap();
        let mc = closeness(
            &g,
            &a,
            &b,
            6,
            WalkLaw::MonteCarlo {
                samples: 100_000,
                seed: 1,
            },
        )
        .unwrap();
        assert!(mc.agrees_with(exact.value, 4.0), "{mc:?} vs {exact:?}");
    }
}
