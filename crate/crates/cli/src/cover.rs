use std::path::Path;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::json;
use tautilt::covering::{
    self, covering_check, lift_via_domain, orbit_mutate, string_module, CoverWindow, Fibering, Grading, OrbitPair,
    StringSpec,
};
use tautilt::fundamental::fundamental_group;
use tautilt::par::Exec;
use tautilt::rep::{format_module, is_isomorphic, parse_module, Rep};
use tautilt::samples;
use tautilt::tilting::{mutate, pairs_isomorphic, Position, StPair};
use tautilt::tower::Tower;
use tautilt::{Algebra, BoundQuiver, Field, Word};

use crate::commands::{load_algebra, read};
use crate::{Ctx, Report, WindowArgs};

fn build<F: Field>(alg: &Arc<Algebra<F>>, g: &Grading, w: &WindowArgs) -> Result<CoverWindow<F>> {
    let center = match &w.center {
        Some(name) => alg
            .quiver()
            .vertex(name)
            .ok_or_else(|| tautilt::Error::UnknownVertex(name.clone()))?,
        None => 0,
    };
    let cw = match (&w.tower, w.stage) {
        (Some(choices), Some(stage)) => {
            let words = choices
                .split(',')
                .map(|c| {
                    let e = g.group.parse_elem(c)?;
                    e.as_word()
                        .cloned()
                        .ok_or_else(|| tautilt::Error::Group("the tower needs a free group".into()))
                })
                .collect::<Result<Vec<Word>, tautilt::Error>>()?;
            let tower = Tower::with_choices(&g.group, &words)?;
            CoverWindow::with_fibering(alg, g, Fibering::Cosets { tower, stage }, center, w.radius)?
        }
        _ => CoverWindow::new(alg, g, center, w.radius)?,
    };
    Ok(cw)
}

fn load_window<F: Field>(w: &WindowArgs) -> Result<CoverWindow<F>> {
    let alg = load_algebra::<F>(&w.quiver)?;
    let g = Grading::parse(&read(&w.grading)?, alg.quiver()).with_context(|| w.grading.display().to_string())?;
    build(&alg, &g, w)
}

fn iso<F: Field>(a: &Rep<F>, b: &Rep<F>, ctx: &Ctx) -> Result<bool> {
    Ok(is_isomorphic(a, b, ctx.budget)?.is_iso())
}

fn file_name(p: &Path) -> String {
    p.file_name()
        .map_or("algebra".into(), |n| n.to_string_lossy().into_owned())
}

pub fn window<F: Field>(w: &WindowArgs) -> Result<Report> {
    let cw = load_window::<F>(w)?;
    let wq = cw.algebra().quiver();
    let check = covering_check(&cw);
    let mut r = Report::default();
    r.line(
        format!(
            "window of radius {}: {} vertices, {} arrows, {} relations, {} interior",
            cw.radius(),
            cw.vertex_count(),
            wq.arrow_count(),
            cw.algebra().bound_quiver().relations.len(),
            cw.interior().len()
        ),
        json!({
            "radius": cw.radius(),
            "vertices": cw.vertex_count(),
            "arrows": wq.arrow_count(),
            "relations": cw.algebra().bound_quiver().relations.len(),
            "interior": cw.interior().len(),
        }),
    );
    r.line(
        format!("covering check: {check}"),
        json!({"covering_ok": check.ok(), "checked": check.checked, "interior_failures": check.interior_failures, "boundary_failures": check.boundary_failures.len()}),
    );
    if !check.ok() {
        r.code = 1;
    }
    Ok(r)
}

pub fn pushdown<F: Field>(w: &WindowArgs, module: &Path) -> Result<Report> {
    let cw = load_window::<F>(w)?;
    let m = parse_module(&read(module)?, cw.algebra()).with_context(|| module.display().to_string())?;
    let down = cw.push_down(&m)?;
    let body = format_module(&down, &file_name(&w.quiver));
    let mut r = Report::default();
    r.line(
        body.trim_end(),
        json!({"push_down": {"dims": down.dims(), "module": body}}),
    );
    Ok(r)
}

pub fn lift_string<F: Field>(w: &WindowArgs, string: &str, start: &str, ctx: &Ctx) -> Result<Report> {
    let cw = load_window::<F>(w)?;
    let s = StringSpec::parse(cw.base().quiver(), string, None)?;
    let base = string_module(cw.base(), &s)?;
    let v = cw.find_by_name(start)?;
    let lifted = covering::lift_string(&cw, &s, v)?;
    let names: Vec<String> = lifted
        .walk
        .vertices(cw.algebra().quiver())
        .iter()
        .map(|&x| cw.vertex_name(x).to_string())
        .collect();
    let m = string_module(cw.algebra(), &lifted)?;
    let same = iso(&cw.push_down(&m)?, &base, ctx)?;
    let mut r = Report::default();
    r.line(
        format!("lift: {}", names.join(" ")),
        json!({"lift": names, "walk": lifted.format(cw.algebra().quiver())}),
    );
    r.line(
        format!(
            "push-down iso to M({}): {same} (seed {})",
            s.format(cw.base().quiver()),
            ctx.budget.seed
        ),
        json!({"push_down_iso": same, "seed": ctx.budget.seed}),
    );
    if !same {
        r.code = 1;
    }
    Ok(r)
}

fn parse_position<F: Field>(alg: &Algebra<F>, text: &str) -> Result<Position> {
    let (kind, arg) = text
        .trim()
        .split_once(':')
        .ok_or_else(|| anyhow!("position `{text}` is not `summand:K` or `vertex:X`"))?;
    match kind {
        "summand" => Ok(Position::Summand(
            arg.parse().with_context(|| format!("summand index `{arg}`"))?,
        )),
        "vertex" => Ok(Position::Vertex(
            alg.quiver()
                .vertex(arg)
                .ok_or_else(|| tautilt::Error::UnknownVertex(arg.into()))?,
        )),
        _ => bail!("position `{text}` is not `summand:K` or `vertex:X`"),
    }
}

pub fn mutate_orbit<F: Field>(w: &WindowArgs, path: &str, ctx: &Ctx) -> Result<Report> {
    let cw = load_window::<F>(w)?;
    let mut up = OrbitPair::projectives(&cw)?;
    let mut down = StPair::projectives(cw.base());
    let mut r = Report::default();
    r.line(
        format!("start: {}", up.label(&cw)),
        json!({"step": 0, "pair": up.label(&cw)}),
    );
    for (i, text) in path.split(',').enumerate() {
        let pos = parse_position(cw.base(), text)?;
        let m = orbit_mutate(&cw, &up, pos)?;
        let b = mutate(&down, pos)?;
        let agrees = m.direction == b.direction && pairs_isomorphic(&m.pair.push_down(&cw)?, &b.pair)?;
        let translates: Vec<String> = m.translates.iter().map(|g| cw.grading().format_elem(g)).collect();
        r.line(
            format!(
                "{}: {} mutation at {:?}, exchange multiplicity {}, translates [{}], pair {}; push-down matches base: {agrees}",
                i + 1,
                m.direction,
                pos,
                m.multiplicity,
                translates.join(", "),
                m.pair.label(&cw)
            ),
            json!({
                "step": i + 1,
                "position": format!("{pos:?}"),
                "direction": m.direction.to_string(),
                "multiplicity": m.multiplicity,
                "translates": translates,
                "pair": m.pair.label(&cw),
                "push_down_matches": agrees,
            }),
        );
        if !agrees {
            r.code = 1;
        }
        up = m.pair;
        down = b.pair;
    }
    r.line(format!("seed {}", ctx.budget.seed), json!({"seed": ctx.budget.seed}));
    Ok(r)
}

pub fn verify_commute<F: Field>(w: &WindowArgs, depth: usize, sequential: bool) -> Result<Report> {
    let cw = load_window::<F>(w)?;
    let exec = if sequential { Exec::Sequential } else { Exec::Parallel };
    let seed = OrbitPair::projectives(&cw)?;
    let rep = covering::verify_commute(&cw, &seed, depth, exec)?;
    let mut r = Report::default();
    r.line(
        rep.to_string(),
        json!({
            "ok": rep.ok(),
            "nodes": rep.nodes,
            "mutations": rep.mutations,
            "radius": rep.radius,
            "divergence": rep.divergence,
        }),
    );
    if !rep.ok() {
        r.code = 1;
    }
    Ok(r)
}

/// The worked example: the algebra, its string `u`, the lifts `u₁` to the
/// `Z`-cover and `u₂` to the stage-2 cover, and the lift of `M(u₂)` to the
/// Galois cover through the fundamental domain `F₂`.
pub fn paper_example<F: Field>(ctx: &Ctx) -> Result<Report> {
    let alg: Arc<Algebra<F>> = Algebra::new(BoundQuiver::parse(samples::EXAMPLE)?)?;
    let pres = fundamental_group(&alg, 0)?;
    let mut r = Report::default();
    r.line(
        format!(
            "algebra: dim {}, pi1 rank {}",
            alg.dim(),
            pres.rank().map_or("?".into(), |k| k.to_string())
        ),
        json!({"dim": alg.dim(), "pi1_rank": pres.rank()}),
    );
    let u = StringSpec::parse(alg.quiver(), "c^-1 e a d^-1 b", None)?;
    let mu = string_module(&alg, &u)?;
    r.line(
        format!("M(u) for u = {}: dim vector {:?}", u.format(alg.quiver()), mu.dims()),
        json!({"string": u.format(alg.quiver()), "dims": mu.dims()}),
    );

    let names = |cw: &CoverWindow<F>, s: &StringSpec| -> Vec<String> {
        s.walk
            .vertices(cw.algebra().quiver())
            .iter()
            .map(|&v| cw.vertex_name(v).to_string())
            .collect()
    };

    let z = Grading::parse(samples::EXAMPLE_Z_GRADING, alg.quiver())?;
    let o1 = CoverWindow::new(&alg, &z, 1, 8)?;
    let u1 = covering::lift_string(&o1, &u, o1.find_by_name("2@0")?)?;
    let m1 = string_module(o1.algebra(), &u1)?;
    let one = iso(&o1.push_down(&m1)?, &mu, ctx)?;
    r.line(
        format!("u1: {}", names(&o1, &u1).join(" ")),
        json!({"u1": names(&o1, &u1), "push_down_iso": one}),
    );

    let free = Grading::parse(samples::EXAMPLE_FREE_GRADING, alg.quiver())?;
    let tower = Tower::with_choices(&free.group, &[Word::generator(1), Word::generator(0)])?;
    let o2 = CoverWindow::with_fibering(&alg, &free, Fibering::Cosets { tower, stage: 2 }, 1, 8)?;
    let start = o2
        .algebra()
        .quiver()
        .vertex("2_0,-1")
        .ok_or_else(|| anyhow!("stage-2 window lacks 2_0,-1"))?;
    let u2 = covering::lift_string(&o2, &u, start)?;
    let m2 = string_module(o2.algebra(), &u2)?;
    let two = iso(&o2.push_down(&m2)?, &mu, ctx)?;
    r.line(
        format!("u2: {}", names(&o2, &u2).join(" ")),
        json!({"u2": names(&o2, &u2), "push_down_iso": two}),
    );

    let gamma = CoverWindow::new(&alg, &free, 1, 8)?;
    let n = lift_via_domain(&m2, &o2, &gamma, start, 6)?;
    let domain = iso(&gamma.push_down_to(&n, &o2)?, &m2, ctx)? && iso(&gamma.push_down(&n)?, &mu, ctx)?;
    let support: Vec<String> = n.support().iter().map(|&v| gamma.vertex_name(v).to_string()).collect();
    r.line(
        format!("lift through F_2: support {}", support.join(" ")),
        json!({"domain_lift": support, "push_down_iso": domain}),
    );

    let mark = |ok: bool| if ok { "" } else { " FAILED" };
    let all = one && two && domain;
    r.line(
        format!(
            "{}: F_λ M(u₁) ≅ M(u){}; F_λ M(u₂) ≅ M(u){}; lift via F₂ domain {} (seed {})",
            if all { "OK" } else { "FAIL" },
            mark(one),
            mark(two),
            if domain { "OK" } else { "FAILED" },
            ctx.budget.seed
        ),
        json!({"ok": all, "seed": ctx.budget.seed}),
    );
    if !all {
        r.code = 1;
    }
    Ok(r)
}
