use std::collections::{BTreeSet, VecDeque};

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Digraph, GraphError, Vertex};

const MAX_RESTARTS: usize = 200;

/// Parameters for one of the built-in generators.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GenSpec {
    Circulant {
        n: usize,
        offsets: Vec<usize>,
    },
    OutregularRandom {
        n: usize,
        r: usize,
        seed: u64,
    },
    MfreeRandom {
        n: usize,
        m: usize,
        density: f64,
        seed: u64,
    },
    TransitiveTournament {
        n: usize,
    },
}

impl GenSpec {
    pub fn build(&self) -> Result<Digraph, GraphError> {
        match *self {
            GenSpec::Circulant { n, ref offsets } => circulant(n, offsets),
            GenSpec::OutregularRandom { n, r, seed } => random_outregular(n, r, seed),
            GenSpec::MfreeRandom {
                n,
                m,
                density,
                seed,
            } => Ok(random_mfree(n, m, density, seed)),
            GenSpec::TransitiveTournament { n } => Ok(transitive_tournament(n)),
        }
    }
}

/// Circulant digraph: `i -> i + s (mod n)` for every offset `s`.
pub fn circulant(n: usize, offsets: &[usize]) -> Result<Digraph, GraphError> {
    let set: BTreeSet<usize> = offsets.iter().copied().collect();
    for &s in &set {
        if s == 0 || s >= n {
            return Err(GraphError::InvalidOffset(s));
        }
        if set.contains(&(n - s)) {
            return Err(GraphError::DigonOffsetPair(s.min(n - s), s.max(n - s)));
        }
    }
    let out_adj = (0..n)
        .map(|i| set.iter().map(|&s| (i + s) % n).collect())
        .collect();
    Ok(Digraph::from_out_lists(n, out_adj))
}

pub fn directed_cycle(n: usize) -> Digraph {
    Digraph::from_out_lists(n, (0..n).map(|i| vec![(i + 1) % n]).collect())
}

pub fn transitive_tournament(n: usize) -> Digraph {
    Digraph::from_out_lists(n, (0..n).map(|i| (i + 1..n).collect()).collect())
}

/// Random digraph in which every vertex has outdegree exactly `r`.
///
/// Vertices are visited in order and draw `r` out-neighbors uniformly from
/// those still allowed (no loop, no digon). When some vertex has fewer than
/// `r` allowed targets the attempt restarts. Deterministic for a fixed seed.
pub fn random_outregular(n: usize, r: usize, seed: u64) -> Result<Digraph, GraphError> {
    if r > 0 && 2 * r >= n {
        return Err(GraphError::InfeasibleDegree { n, r });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'attempt: for _ in 0..MAX_RESTARTS {
        let mut bits = vec![FixedBitSet::with_capacity(n); n];
        let mut out_adj: Vec<Vec<Vertex>> = Vec::with_capacity(n);
        for v in 0..n {
            let mut allowed: Vec<Vertex> =
                (0..n).filter(|&w| w != v && !bits[w].contains(v)).collect();
            if allowed.len() < r {
                continue 'attempt;
            }
            let (chosen, _) = allowed.partial_shuffle(&mut rng, r);
            bits[v].extend(chosen.iter().copied());
            out_adj.push(chosen.to_vec());
        }
        return Ok(Digraph::from_out_lists(n, out_adj));
    }
    // near-tournament densities starve the sampler; a circulant with one
    // random offset from each pair {s, n - s}, randomly relabeled, always exists
    let mut pool: Vec<usize> = (1..=(n - 1) / 2).collect();
    pool.shuffle(&mut rng);
    let offsets: Vec<usize> = pool[..r]
        .iter()
        .map(|&s| if rng.random_bool(0.5) { s } else { n - s })
        .collect();
    let base = circulant(n, &offsets)?;
    let mut perm: Vec<Vertex> = (0..n).collect();
    perm.shuffle(&mut rng);
    Ok(base.relabeled(&perm))
}

/// Random digraph with no directed cycle of length at most `m`.
///
/// Candidate edges are tried in a seeded random order and kept only when no
/// path of length `<= m - 1` leads from the head back to the tail, so the
/// result is `m`-free by construction. `density` is the target fraction of
/// the `C(n, 2)` possible edges and is best effort.
pub fn random_mfree(n: usize, m: usize, density: f64, seed: u64) -> Digraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut candidates: Vec<(Vertex, Vertex)> = (0..n)
        .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
        .collect();
    candidates.shuffle(&mut rng);

    let max_edges = n * n.saturating_sub(1) / 2;
    let target = (density.clamp(0.0, 1.0) * max_edges as f64).round() as usize;
    let max_back = m.max(2) - 1;

    let mut out_adj: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    let mut bits = vec![FixedBitSet::with_capacity(n); n];
    let mut count = 0;
    for (u, v) in candidates {
        if count >= target {
            break;
        }
        if bits[u].contains(v) || bits[v].contains(u) {
            continue;
        }
        if reaches_within(&out_adj, v, u, max_back) {
            continue;
        }
        bits[u].insert(v);
        out_adj[u].push(v);
        count += 1;
    }
    Digraph::from_out_lists(n, out_adj)
}

/// Whether `to` is reachable from `from` in at most `limit` steps.
fn reaches_within(out_adj: &[Vec<Vertex>], from: Vertex, to: Vertex, limit: usize) -> bool {
    let mut dist = vec![usize::MAX; out_adj.len()];
    let mut queue = VecDeque::from([from]);
    dist[from] = 0;
    while let Some(x) = queue.pop_front() {
        if x == to {
            return true;
        }
        if dist[x] == limit {
            continue;
        }
        for &y in &out_adj[x] {
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    false
}
