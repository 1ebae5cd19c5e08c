//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero if any fail.

use std::time::{Duration, Instant};

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use girthlab::constants::{
    ab, alpha, beta_table, certify_theorem2, lambert_bound, shen_bounds, shen_constant, tau_star,
};
use girthlab::cycles::find_short_cycle_constructive;
use girthlab::fas::{backward_edges, beta_exact, check_fact1, check_lemma2, Fact1Verdict};
use girthlab::graph::{
    circulant, directed_cycle, random_mfree, random_outregular, transitive_tournament,
};
use girthlab::stats::compute_edge_stats;
use girthlab::{girth, Digraph};

const PRINTED_ALPHA: [f64; 6] = [0.35425, 0.28866, 0.24817, 0.21984, 0.19856, 0.18182];
const PRINTED_A: [f64; 6] = [1.18614, 1.26411, 1.30809, 1.33396, 1.35545, 1.37055];
const PRINTED_B: [f64; 6] = [0.58522, 0.61209, 0.62543, 0.63353, 0.63888, 0.64234];
const PRINTED_TAU: [f64; 6] = [0.4726, 0.4625, 0.4615, 0.4673, 0.4669, 0.4688];

type Criterion = (&'static str, fn(&mut Check));

struct Check {
    pass: bool,
    notes: Vec<String>,
}

impl Check {
    fn new() -> Self {
        Check {
            pass: true,
            notes: Vec::new(),
        }
    }

    fn require(&mut self, ok: bool, note: impl FnOnce() -> String) {
        if !ok {
            self.pass = false;
            self.notes.push(note());
        }
    }

    fn within(&mut self, elapsed: Duration, limit_secs: f64) {
        let secs = elapsed.as_secs_f64();
        self.require(secs < limit_secs, || {
            format!("runtime {secs:.2}s >= {limit_secs}s")
        });
    }
}

fn timed(f: impl FnOnce(&mut Check)) -> (Check, Duration) {
    let mut check = Check::new();
    let start = Instant::now();
    f(&mut check);
    (check, start.elapsed())
}

/// Rounds up at the fifth decimal.
fn ceil5(x: f64) -> f64 {
    (x * 1e5).ceil() / 1e5
}

fn criterion1(c: &mut Check) {
    let start = Instant::now();
    for m in 3..=8 {
        let a = alpha(m);
        let printed = PRINTED_ALPHA[m - 3];
        c.require((ceil5(a) - printed).abs() < 1e-12, || {
            format!(
                "m={m}: alpha={a:.10} rounds up to {:.5}, printed {printed}",
                ceil5(a)
            )
        });
        let gap = printed - a;
        c.require((0.0..=5e-6).contains(&gap), || {
            format!("m={m}: printed - alpha = {gap:.3e} not in [0, 5e-6]")
        });
    }
    c.within(start.elapsed(), 1.0);
}

fn criterion2(c: &mut Check) {
    let d3 = (alpha(3) - (3.0 - 7f64.sqrt())).abs();
    c.require(d3 < 1e-12, || {
        format!("|alpha(3) - (3 - sqrt 7)| = {d3:.3e}")
    });
    let d8 = (alpha(8) - 2.0 / 11.0).abs();
    c.require(d8 < 1e-12, || format!("|alpha(8) - 2/11| = {d8:.3e}"));
}

fn criterion3(c: &mut Check) {
    for m in 3..=8 {
        let (a, b) = ab(m, beta_table(m).unwrap());
        let (pa, pb) = (PRINTED_A[m - 3], PRINTED_B[m - 3]);
        c.require((a - pa).abs() <= 5e-6, || {
            format!("a_{m}={a:.7} vs {pa} (diff {:.2e})", a - pa)
        });
        c.require((b - pb).abs() <= 5e-6, || {
            format!("b_{m}={b:.7} vs {pb} (diff {:.2e})", b - pb)
        });
    }
}

fn criterion4(c: &mut Check) {
    for m in 3..=8 {
        let t = tau_star(m, beta_table(m).unwrap()).unwrap();
        let p = PRINTED_TAU[m - 3];
        c.require((t - p).abs() <= 1e-4, || format!("tau*_{m}={t:.6} vs {p}"));
    }
}

fn criterion5(c: &mut Check) {
    let start = Instant::now();
    for m in 3..=8 {
        let beta = beta_table(m).unwrap();
        match certify_theorem2(m, beta) {
            Ok(cert) => c.require(cert.is_certified(), || {
                format!("m={m}: failed at beta={beta}")
            }),
            Err(e) => c.require(false, || format!("m={m}: {e}")),
        }
    }
    match certify_theorem2(3, 0.34) {
        Ok(cert) => c.require(!cert.is_certified(), || {
            "m=3, alpha=0.34 certified".to_string()
        }),
        Err(e) => c.require(false, || format!("m=3, alpha=0.34: {e}")),
    }
    c.within(start.elapsed(), 10.0);
}

fn criterion6(c: &mut Check) {
    let start = Instant::now();
    for m in 3..=50 {
        let (a, l) = (alpha(m), lambert_bound(m));
        c.require(a <= l, || format!("m={m}: alpha={a} > lambert={l}"));
    }
    let s = shen_constant();
    c.require(s > 1.31202 && s < 1.3121, || format!("shen constant {s}"));
    let crossover = (4..=200).find(|&m| shen_bounds(m).unwrap().general < alpha(m));
    c.require(crossover == Some(14), || {
        let m = crossover.unwrap();
        format!(
            "first m with shen < alpha is {m} (shen {:.6} < alpha {:.6}), expected 14",
            shen_bounds(m).unwrap().general,
            alpha(m)
        )
    });
    c.within(start.elapsed(), 5.0);
}

/// Shortest cycle by enumerating simple paths from each minimum vertex.
fn dfs_girth(d: &Digraph) -> Option<usize> {
    fn walk(
        d: &Digraph,
        s: usize,
        v: usize,
        depth: usize,
        on: &mut [bool],
        best: &mut Option<usize>,
    ) {
        for &w in d.out_neighbors(v) {
            if w == s {
                *best = Some(best.map_or(depth, |b| b.min(depth)));
            } else if w > s && !on[w] {
                on[w] = true;
                walk(d, s, w, depth + 1, on, best);
                on[w] = false;
            }
        }
    }
    let mut best = None;
    for s in 0..d.n() {
        let mut on = vec![false; d.n()];
        on[s] = true;
        walk(d, s, s, 1, &mut on, &mut best);
    }
    best
}

fn random_digraph(rng: &mut ChaCha8Rng, n: usize) -> Digraph {
    let p: f64 = rng.random_range(0.1..0.9);
    let mut edges = Vec::new();
    for (u, v) in (0..n).tuple_combinations() {
        if rng.random_bool(p) {
            edges.push(if rng.random_bool(0.5) { (u, v) } else { (v, u) });
        }
    }
    Digraph::from_edge_list(n, edges).unwrap()
}

fn criterion7(c: &mut Check) {
    let pairs: Vec<(usize, usize)> = (0..4).tuple_combinations().collect();
    let mut count = 0;
    for code in 0..3usize.pow(pairs.len() as u32) {
        let mut x = code;
        let mut edges = Vec::new();
        for &(u, v) in &pairs {
            match x % 3 {
                1 => edges.push((u, v)),
                2 => edges.push((v, u)),
                _ => {}
            }
            x /= 3;
        }
        let d = Digraph::from_edge_list(4, edges).unwrap();
        c.require(girth(&d) == dfs_girth(&d), || {
            format!("4-vertex code {code}")
        });
        count += 1;
    }
    c.require(count == 729, || format!("enumerated {count} digraphs"));
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..500 {
        let n = rng.random_range(1..=7);
        let d = random_digraph(&mut rng, n);
        c.require(girth(&d) == dfs_girth(&d), || {
            format!("random instance {i}")
        });
    }
}

fn criterion8(c: &mut Check) {
    for n in 3..=60usize {
        for k in (1..).take_while(|&k| 2 * k < n) {
            let offsets: Vec<usize> = (1..=k).collect();
            let g = girth(&circulant(n, &offsets).unwrap());
            c.require(g == Some(n.div_ceil(k)), || {
                format!("n={n}, k={k}: girth {g:?}")
            });
        }
    }
}

/// `r` offsets, at most one from each pair `{s, n-s}`.
fn random_offsets(rng: &mut ChaCha8Rng, n: usize, r: usize) -> Vec<usize> {
    let mut pool: Vec<usize> = (1..=(n - 1) / 2).collect();
    let mut offsets = Vec::with_capacity(r);
    for _ in 0..r {
        let s = pool.swap_remove(rng.random_range(0..pool.len()));
        offsets.push(if rng.random_bool(0.5) { s } else { n - s });
    }
    offsets
}

fn criterion9(c: &mut Check) {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for i in 0..200u64 {
        let m = [3, 4, 5][i as usize % 3];
        let n = rng.random_range(9..=40);
        let a = alpha(m);
        let r = (a * n as f64).ceil() as usize;
        let d = if i % 2 == 0 {
            circulant(n, &random_offsets(&mut rng, n, r)).unwrap()
        } else {
            random_outregular(n, r, rng.random()).unwrap()
        };
        match find_short_cycle_constructive(&d, m, a) {
            Ok(res) => {
                let w = &res.witness;
                c.require(w.len() <= m, || {
                    format!("instance {i}: length {} > m={m}", w.len())
                });
                c.require(w.validate(&d).is_ok(), || {
                    format!("instance {i}: invalid witness")
                });
            }
            Err(e) => c.require(false, || format!("instance {i} (n={n}, m={m}): {e}")),
        }
    }
    c.within(start.elapsed(), 60.0);
}

fn brute_triangles(d: &Digraph) -> u64 {
    let n = d.n();
    let mut t = 0;
    for (a, b, x) in (0..n)
        .cartesian_product(0..n)
        .cartesian_product(0..n)
        .map(|((a, b), x)| (a, b, x))
    {
        if d.has_edge(a, b) && d.has_edge(a, x) && d.has_edge(b, x) {
            t += 1;
        }
    }
    t
}

fn criterion10(c: &mut Check) {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for i in 0..500 {
        let n = rng.random_range(3..=30);
        let r = rng.random_range(1..=(n - 1) / 2);
        let d = random_outregular(n, r, rng.random()).unwrap();
        let (stats, g) = compute_edge_stats(&d);
        for e in &stats.edges {
            c.require(e.p + e.t == r, || {
                format!("instance {i}: p+t != r on ({}, {})", e.u, e.v)
            });
        }
        c.require(g.sum_p == g.sum_q, || {
            format!("instance {i}: sum p != sum q")
        });
        for v in &stats.vertices {
            c.require(v.t + v.f == r * (r - 1) / 2, || {
                format!("instance {i}: t(v)+f(v) at {}", v.v)
            });
        }
        c.require(
            g.transitive_triangles == g.transitive_triangles_by_vertex,
            || format!("instance {i}: per-edge T != per-vertex T"),
        );
        if n <= 8 {
            c.require(g.transitive_triangles == brute_triangles(&d), || {
                format!("instance {i}: T != brute force")
            });
        }
        c.require(g.tau.is_some_and(|t| t < 0.5), || {
            format!("instance {i}: tau {:?}", g.tau)
        });
        c.require(g.sum_indegree_sq >= (n * r * r) as u64, || {
            format!("instance {i}: sum indeg^2 < n r^2")
        });
    }
}

fn brute_beta(d: &Digraph) -> usize {
    (0..d.n())
        .permutations(d.n())
        .map(|o| backward_edges(d, &o).len())
        .min()
        .unwrap_or(0)
}

fn criterion11(c: &mut Check) {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..200 {
        let n = rng.random_range(1..=7);
        let d = random_digraph(&mut rng, n);
        let exact = beta_exact(&d).unwrap().beta;
        c.require(exact == brute_beta(&d), || {
            format!("instance {i}: dp {exact}")
        });
    }
    for n in 3..=12 {
        c.require(beta_exact(&directed_cycle(n)).unwrap().beta == 1, || {
            format!("C_{n}")
        });
        c.require(
            beta_exact(&transitive_tournament(n)).unwrap().beta == 0,
            || format!("TT_{n}"),
        );
    }
    for i in 0..200 {
        let m = [3, 4, 5][i % 3];
        let n = rng.random_range(m + 1..=14);
        let density = rng.random_range(0.3..=1.0);
        let d = random_mfree(n, m, density, rng.random());
        match (check_fact1(&d, m), check_lemma2(&d, m)) {
            (Ok(f), Ok(l)) => {
                c.require(f.exact && f.verdict == Fact1Verdict::Holds, || {
                    format!("instance {i}: fact1 beta={} > {:.3}", f.beta, f.threshold)
                });
                c.require(l.holds, || {
                    format!(
                        "instance {i}: lemma2 {:?} > {:.3}",
                        l.min_out_degree, l.bound
                    )
                });
            }
            (f, l) => c.require(false, || format!("instance {i}: {f:?} {l:?}")),
        }
    }
    c.within(start.elapsed(), 120.0);
}

fn main() {
    let criteria: [Criterion; 11] = [
        (
            "alpha(3..8) matches the printed upper roundings",
            criterion1,
        ),
        ("closed forms for alpha(3) and alpha(8)", criterion2),
        ("a_m and b_m match the printed values", criterion3),
        ("tau*_m matches the printed values", criterion4),
        ("Theorem 2 certification", criterion5),
        ("Lambert and Shen comparison bounds", criterion6),
        ("girth agrees with DFS enumeration", criterion7),
        ("circulant girth law", criterion8),
        ("constructive finder", criterion9),
        ("counting identities", criterion10),
        ("feedback arc set, Fact 1 and Lemma 2", criterion11),
    ];
    let mut failed = 0;
    let mut floor_ok = true;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let id = i + 1;
        let (check, elapsed) = timed(f);
        let status = if check.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {id:>2} {status} [{:.2}s] {name}",
            elapsed.as_secs_f64()
        );
        for note in &check.notes {
            println!("    {note}");
        }
        if !check.pass {
            failed += 1;
            if id >= 7 {
                floor_ok = false;
            }
        }
    }
    let status = if floor_ok { "PASS" } else { "FAIL" };
    println!("criterion 12 {status} behavioral floor: criteria 7-11");
    if !floor_ok {
        failed += 1;
    }
    println!("acceptance: {} of 12 criteria pass", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
