//! Tab-separated rendering of report payloads.

use std::fmt::Write;

use crate::constants::{CertVerdict, Evidence};
use crate::cycles::CycleWitness;
use crate::report::Payload;
use crate::stats::{AuditReport, Subject, Verdict};

fn opt<T: std::fmt::Display>(x: Option<T>) -> String {
    x.map_or_else(|| "-".to_string(), |v| v.to_string())
}

fn fixed(x: Option<f64>) -> String {
    x.map_or_else(|| "-".to_string(), |v| format!("{v:.10}"))
}

fn cycle(w: &CycleWitness) -> String {
    w.vertices
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn kv(out: &mut String, key: &str, value: impl std::fmt::Display) {
    writeln!(out, "{key}\t{value}").unwrap();
}

fn audit(out: &mut String, r: &AuditReport) {
    writeln!(out, "# {}", r.inequality.name()).unwrap();
    out.push_str("subject\tlhs\trhs\tslack\tholds\n");
    for item in &r.items {
        let subject = match item.subject {
            Subject::Edge { u, v } => format!("{u}->{v}"),
            Subject::Vertex { v } => v.to_string(),
            Subject::Aggregate => "all".to_string(),
        };
        writeln!(
            out,
            "{subject}\t{:.10}\t{:.10}\t{:.10}\t{}",
            item.lhs,
            item.rhs,
            item.slack,
            item.holds()
        )
        .unwrap();
    }
    let verdict = match r.verdict {
        Verdict::AllHold => "all-hold".to_string(),
        Verdict::Violated { count } => format!("violated:{count}"),
    };
    kv(out, "verdict", verdict);
    kv(out, "min_slack", fixed(r.min_slack));
}

pub(super) fn render(payload: &Payload) -> String {
    let mut out = String::new();
    match payload {
        Payload::Constants(rows) => {
            out.push_str(
                "m\talpha\talpha_residual\tc\tbeta\ta\tb\ttau_star\tlambert\tshen_general\tshen_large\tbest\n",
            );
            for r in rows {
                let best = match r.best {
                    crate::constants::BestBound::Alpha => "alpha",
                    crate::constants::BestBound::ShenGeneral => "shen-general",
                    crate::constants::BestBound::ShenLarge => "shen-large",
                };
                writeln!(
                    out,
                    "{}\t{:.10}\t{:.3e}\t{:.10}\t{}\t{}\t{}\t{}\t{:.10}\t{}\t{}\t{best}",
                    r.m,
                    r.alpha,
                    r.alpha_residual,
                    r.c,
                    opt(r.beta_table),
                    fixed(r.a),
                    fixed(r.b),
                    fixed(r.tau_star),
                    r.lambert_bound,
                    fixed(r.shen_general),
                    fixed(r.shen_large),
                )
                .unwrap();
            }
        }
        Payload::Certificate(cert) => {
            let verdict = match cert.verdict {
                CertVerdict::Certified => "certified",
                CertVerdict::Failed => "failed",
            };
            match &cert.evidence {
                Evidence::Theorem1(e) => {
                    kv(&mut out, "theorem", 1);
                    kv(&mut out, "m", cert.m);
                    kv(&mut out, "alpha", format!("{:.15}", cert.alpha));
                    kv(&mut out, "verdict", verdict);
                    kv(&mut out, "alpha_root", format!("{:.15}", e.alpha_root));
                    kv(&mut out, "epsilon", e.epsilon);
                    kv(&mut out, "lhs", format!("{:.15}", e.lhs));
                    kv(&mut out, "rhs", format!("{:.15}", e.rhs));
                    kv(
                        &mut out,
                        "contradiction_below_root",
                        e.contradiction_below_root,
                    );
                }
                Evidence::Theorem2(e) => {
                    kv(&mut out, "theorem", 2);
                    kv(&mut out, "m", cert.m);
                    kv(&mut out, "alpha", cert.alpha);
                    kv(&mut out, "verdict", verdict);
                    kv(&mut out, "a", format!("{:.10}", e.a));
                    kv(&mut out, "b", format!("{:.10}", e.b));
                    kv(&mut out, "c", format!("{:.10}", e.c));
                    kv(&mut out, "tau_star", format!("{:.10}", e.tau_star));
                    kv(
                        &mut out,
                        "interval",
                        format!("[{:.10}, {}]", e.interval_lo, e.interval_hi),
                    );
                    kv(&mut out, "empty_interval", e.empty_interval);
                    kv(&mut out, "grid_points", e.grid_points);
                    kv(&mut out, "slope_bound", format!("{:.10}", e.slope_bound));
                    kv(&mut out, "max_sample", format!("{:.6e}", e.max_sample));
                    kv(&mut out, "argmax_tau", format!("{:.10}", e.argmax_tau));
                    kv(
                        &mut out,
                        "max_cell_bound",
                        format!("{:.6e}", e.max_cell_bound),
                    );
                }
            }
        }
        Payload::Girth(g) => {
            kv(&mut out, "girth", opt(g.girth));
            if let Some(w) = &g.witness {
                kv(&mut out, "cycle", cycle(w));
            }
        }
        Payload::FindCycle(f) => {
            let w = &f.result.witness;
            kv(&mut out, "length", w.len());
            kv(&mut out, "cycle", cycle(w));
            kv(
                &mut out,
                "provenance",
                serde_json::to_value(w.provenance)
                    .unwrap()
                    .as_str()
                    .unwrap(),
            );
            kv(&mut out, "recursion_depth", f.result.recursion_depth);
            kv(
                &mut out,
                "completed_expansions",
                f.result.completed_expansions,
            );
            kv(&mut out, "bfs_girth", opt(f.bfs_girth));
        }
        Payload::Stats(s) => {
            let g = &s.global;
            kv(&mut out, "n", g.n);
            kv(&mut out, "edges", g.edge_count);
            kv(&mut out, "r", opt(g.r));
            kv(&mut out, "transitive_triangles", g.transitive_triangles);
            kv(&mut out, "tau", fixed(g.tau));
            kv(&mut out, "sum_p", g.sum_p);
            kv(&mut out, "sum_q", g.sum_q);
            kv(&mut out, "sum_f_edge", g.sum_f_edge);
            kv(&mut out, "sum_f_vertex", g.sum_f_vertex);
            kv(&mut out, "sum_indegree_sq", g.sum_indegree_sq);
            kv(&mut out, "out2claws", g.out2claws);
            if let Some(detail) = &s.detail {
                out.push_str("u\tv\tp\tq\tt\tf\n");
                for e in &detail.edges {
                    writeln!(out, "{}\t{}\t{}\t{}\t{}\t{}", e.u, e.v, e.p, e.q, e.t, e.f).unwrap();
                }
                out.push_str("vertex\toutdeg\tindeg\tt\tf\n");
                for v in &detail.vertices {
                    writeln!(
                        out,
                        "{}\t{}\t{}\t{}\t{}",
                        v.v, v.out_degree, v.in_degree, v.t, v.f
                    )
                    .unwrap();
                }
            }
        }
        Payload::Audit(r) => audit(&mut out, r),
        Payload::AuditPair(p) => {
            audit(&mut out, &p.lemma4);
            audit(&mut out, &p.lemma5);
        }
        Payload::Fas(f) => {
            kv(&mut out, "beta", f.fas.beta);
            kv(&mut out, "exact", f.fas.exact);
            kv(
                &mut out,
                "order",
                f.fas
                    .order
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" "),
            );
            kv(
                &mut out,
                "removed",
                f.fas
                    .removed
                    .iter()
                    .map(|(u, v)| format!("{u}->{v}"))
                    .collect::<Vec<_>>()
                    .join(" "),
            );
            if let Some(r) = &f.fact1 {
                kv(&mut out, "gamma", r.gamma);
                kv(&mut out, "c_m", format!("{:.10}", r.c_m));
                kv(&mut out, "fact1_threshold", format!("{:.10}", r.threshold));
                kv(
                    &mut out,
                    "fact1",
                    serde_json::to_value(r.verdict).unwrap().as_str().unwrap(),
                );
            }
            if let Some(r) = &f.lemma2 {
                kv(&mut out, "min_outdeg", opt(r.min_out_degree));
                kv(&mut out, "lemma2_bound", format!("{:.10}", r.bound));
                kv(
                    &mut out,
                    "lemma2",
                    if r.holds { "holds" } else { "violated" },
                );
            }
            if let Some(s) = &f.sullivan {
                kv(&mut out, "beta_over_gamma", format!("{:.10}", s.ratio));
                kv(
                    &mut out,
                    "conjectured_ratio",
                    format!("{:.10}", s.conjectured),
                );
            }
        }
    }
    out
}
