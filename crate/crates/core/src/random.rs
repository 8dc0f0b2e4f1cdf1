//! Seeded random connected graphs and weight pools for the verification suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use num_traits::Zero;

use crate::algebra::{ratio, Rational};
use crate::graph::WeightedGraph;
use crate::spanning::weighted_complexity;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Signed weights used for the curve identities.
pub const SIGNED_POOL: [(i64, i64); 9] =
    [(1, 1), (-1, 1), (1, 2), (-1, 2), (2, 1), (-2, 1), (3, 1), (1, 3), (5, 1)];

pub const POSITIVE_POOL: [(i64, i64); 6] = [(1, 1), (1, 2), (2, 1), (3, 1), (1, 3), (5, 1)];

pub fn pool_weight<R: Rng>(rng: &mut R, pool: &[(i64, i64)]) -> Rational {
    let &(p, q) = pool.choose(rng).expect("non-empty pool");
    ratio(p, q)
}

/// Nonzero `p/q` with `|p| <= 5`, `1 <= q <= 4`.
pub fn nonzero_rational<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let p: i64 = rng.gen_range(-5..=5);
        if p != 0 {
            return ratio(p, rng.gen_range(1..=4));
        }
    }
}

/// Random spanning tree on `n` vertices plus `m - (n - 1)` further distinct edges.
pub fn random_connected<R: Rng>(
    rng: &mut R,
    n: usize,
    m: usize,
    mut weight: impl FnMut(&mut R) -> Rational,
) -> WeightedGraph {
    assert!(n >= 2 && m + 1 >= n && m <= n * (n - 1) / 2, "impossible shape n={n} m={m}");
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut pairs = Vec::with_capacity(m);
    for k in 1..n {
        let parent = order[rng.gen_range(0..k)];
        let v = order[k];
        pairs.push((parent.min(v), parent.max(v)));
    }
    let mut rest: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|p| !pairs.contains(p))
        .collect();
    rest.shuffle(rng);
    pairs.extend(rest.into_iter().take(m - (n - 1)));
    pairs.sort_unstable();
    let edges = pairs.into_iter().map(|(i, j)| (i, j, weight(rng))).collect();
    WeightedGraph::new(n, edges).expect("tree plus chords is connected and simple")
}

fn shape<R: Rng>(rng: &mut R, n_min: usize, n_max: usize, m_min_extra: usize, m_max: usize) -> (usize, usize) {
    loop {
        let n = rng.gen_range(n_min..=n_max);
        let lo = n - 1 + m_min_extra;
        let hi = m_max.min(n * (n - 1) / 2);
        if lo <= hi {
            return (n, rng.gen_range(lo..=hi));
        }
    }
}

/// `n <= 6`, `m <= 10`, arbitrary nonzero rational weights.
pub fn edge_vertex_case(seed: u64) -> WeightedGraph {
    let mut rng = seeded(seed);
    let (n, m) = shape(&mut rng, 2, 6, 0, 10);
    random_connected(&mut rng, n, m, nonzero_rational)
}

/// `n <= 7`, `m <= 14`, weights from [`SIGNED_POOL`], nonzero complexity.
pub fn curve_case(seed: u64) -> WeightedGraph {
    let mut rng = seeded(seed);
    let (n, m) = shape(&mut rng, 2, 7, 0, 14);
    loop {
        let g = random_connected(&mut rng, n, m, |r| pool_weight(r, &SIGNED_POOL));
        if !weighted_complexity(&g).is_zero() {
            return g;
        }
    }
}

/// `m >= n`, `n <= 7`, `m <= 14`, positive weights.
pub fn cyclic_case(seed: u64) -> WeightedGraph {
    let mut rng = seeded(seed);
    let (n, m) = shape(&mut rng, 3, 7, 1, 14);
    random_connected(&mut rng, n, m, |r| pool_weight(r, &POSITIVE_POOL))
}

/// `n <= 7`, arbitrary nonzero rational weights.
pub fn spanning_case(seed: u64) -> WeightedGraph {
    let mut rng = seeded(seed);
    let (n, m) = shape(&mut rng, 2, 7, 0, 21);
    random_connected(&mut rng, n, m, nonzero_rational)
}
