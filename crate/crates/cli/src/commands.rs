use std::collections::BTreeSet;
use std::path::Path;
use std::sync::Arc;

use anyhow::{Context, Result};
use serde_json::json;
use tautilt::fundamental::{fundamental_group, Profile};
use tautilt::par::Exec;
use tautilt::rep::{format_module, module_header, parse_module, tau};
use tautilt::tilting::{mutation_quiver, StPair};
use tautilt::{Algebra, BoundQuiver, Field};

use crate::Report;

pub fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

pub fn load_algebra<F: Field>(path: &Path) -> Result<Arc<Algebra<F>>> {
    let text = read(path)?;
    let bq = BoundQuiver::parse(&text).with_context(|| path.display().to_string())?;
    Algebra::new(bq).with_context(|| path.display().to_string())
}

pub fn algebra_check<F: Field>(path: &Path) -> Result<Report> {
    let alg = load_algebra::<F>(path)?;
    let pres = fundamental_group(&alg, 0)?;
    let (kind, rank) = match &pres.profile {
        Profile::Free(g) => ("free", Some(g.len())),
        Profile::FreeAbelian(g) => ("free abelian", Some(g.len())),
        Profile::Undecided => ("undecided", None),
    };
    let pi1 = match rank {
        Some(r) => format!("pi1 {kind} rank {r}"),
        None => format!(
            "pi1 undecided ({} generators, {} relators)",
            pres.generators.len(),
            pres.relators.len()
        ),
    };
    let mut r = Report::default();
    r.line(
        format!("admissible, dim {}, {pi1}", alg.dim()),
        json!({
            "admissible": true,
            "dim": alg.dim(),
            "vertices": alg.vertex_count(),
            "nilpotency": alg.nilpotency(),
            "pi1": {"profile": kind, "rank": rank, "generators": pres.generator_names},
        }),
    );
    Ok(r)
}

pub fn module_tau<F: Field>(path: &Path, algebra: Option<&Path>) -> Result<Report> {
    let text = read(path)?;
    let alg_path = match algebra {
        Some(p) => p.to_path_buf(),
        None => {
            let named = module_header(&text).with_context(|| path.display().to_string())?;
            path.parent().unwrap_or(Path::new(".")).join(named)
        }
    };
    let alg = load_algebra::<F>(&alg_path)?;
    let m = parse_module(&text, &alg).with_context(|| path.display().to_string())?;
    let t = tau(&m);
    let over = alg_path
        .file_name()
        .map_or("algebra".into(), |n| n.to_string_lossy().into_owned());
    let body = format_module(&t, &over);
    let mut r = Report::default();
    r.line(body.trim_end(), json!({"tau": {"dims": t.dims(), "module": body}}));
    Ok(r)
}

/// `pentagon` and friends for a 2-regular connected exchange graph.
fn shape(n: usize, nbrs: &[BTreeSet<usize>]) -> String {
    let connected = {
        let mut seen = BTreeSet::from([0]);
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            for &w in &nbrs[v] {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == n
    };
    let edges: usize = nbrs.iter().map(BTreeSet::len).sum::<usize>() / 2;
    if n >= 3 && connected && nbrs.iter().all(|s| s.len() == 2) {
        match n {
            3 => "triangle".into(),
            4 => "square".into(),
            5 => "pentagon".into(),
            6 => "hexagon".into(),
            _ => format!("{n}-cycle"),
        }
    } else {
        format!("{edges} exchange edges")
    }
}

pub fn enumerate<F: Field>(path: &Path, dot: Option<&Path>, budget: usize, sequential: bool) -> Result<Report> {
    let alg = load_algebra::<F>(path)?;
    let exec = if sequential { Exec::Sequential } else { Exec::Parallel };
    let q = mutation_quiver(&StPair::projectives(&alg), budget, exec)?;
    if let Some(out) = dot {
        std::fs::write(out, q.to_dot()).with_context(|| format!("writing {}", out.display()))?;
    }
    let mut nbrs = vec![BTreeSet::new(); q.nodes.len()];
    for e in &q.edges {
        nbrs[e.from].insert(e.to);
        nbrs[e.to].insert(e.from);
    }
    let mut r = Report::default();
    let summary = if q.truncated {
        r.code = 4;
        format!(
            "budget of {budget} exceeded: {} pairs found, search incomplete",
            q.nodes.len()
        )
    } else {
        format!("{} pairs, {}", q.nodes.len(), shape(q.nodes.len(), &nbrs))
    };
    r.line(
        summary,
        json!({"pairs": q.nodes.len(), "edges": q.edges.len(), "complete": !q.truncated, "inconclusive": q.inconclusive}),
    );
    for (i, n) in q.nodes.iter().enumerate() {
        r.line(
            format!("  {i}: {}", n.label()),
            json!({"node": i, "dims": n.dim_vectors(), "proj": n.proj.iter().collect::<Vec<_>>()}),
        );
    }
    for e in &q.edges {
        r.line(
            format!("  {} -> {} ({}, {:?})", e.from, e.to, e.direction, e.position),
            json!({"from": e.from, "to": e.to, "direction": e.direction.to_string(), "position": format!("{:?}", e.position)}),
        );
    }
    Ok(r)
}
