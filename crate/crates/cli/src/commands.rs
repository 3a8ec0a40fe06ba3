use bsk::affine::j_affine;
use bsk::embedding::{
    check_injectivity, check_stabilizer, enumerate_ball, properness_profile, Bounds, CheckReport,
};
use bsk::haagerup::{
    c0_profile, cocycle, cocycle_identity_check, cocycle_inverse_check, hyperbolic_orbit,
    tree_gram, witness, witness_gram, GramReport,
};
use bsk::tree::{self, distance, neighbors, vertex_of, Vertex};
use bsk::words::{britton_reduce, parse_word, NormalForm};
use bsk::GroupSpec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::output::{sig12, Output};
use crate::{Command, Failure, Format, KernelKind, SampleArgs, Status};

use Format::{Csv, Dot, Json, Text};

fn element(word: &str, spec: &GroupSpec) -> Result<NormalForm, Failure> {
    let w = parse_word(word, spec)
        .map_err(|e| Failure::Usage(format!("cannot parse {word:?}: {e}")))?;
    Ok(britton_reduce(&w, spec))
}

pub fn dispatch(
    cmd: &Command,
    spec: &GroupSpec,
    bounds: &Bounds,
    out: &mut Output,
) -> Result<Status, Failure> {
    match cmd {
        Command::Reduce { word } => {
            out.expect(&[Text, Json], "reduce")?;
            let g = element(word, spec)?;
            match out.format {
                Json => {
                    out.json(&json!({ "normal_form": g.to_string(), "t_length": g.t_length() }))?
                }
                _ => out.line(g.to_string()),
            }
        }
        Command::Wp { word } => {
            out.expect(&[Text, Json], "wp")?;
            let trivial = element(word, spec)?.is_identity();
            match out.format {
                Json => out.json(&json!({ "trivial": trivial }))?,
                _ => out.line(if trivial { "trivial" } else { "nontrivial" }),
            }
        }
        Command::Ball(args) => {
            out.expect(&[Text, Json, Csv], "ball")?;
            let ball = enumerate_ball(args.length, spec, bounds)?;
            let rows: Vec<(usize, String)> = ball
                .elements()
                .iter()
                .enumerate()
                .map(|(i, g)| (ball.length(i), g.to_string()))
                .collect();
            match out.format {
                Json => out.json(
                    &rows
                        .iter()
                        .map(|(l, g)| json!({ "length": l, "normal_form": g }))
                        .collect::<Vec<_>>(),
                )?,
                Csv => out.csv(
                    &["length", "normal_form"],
                    rows.iter().map(|(l, g)| [l.to_string(), g.clone()]),
                )?,
                _ => {
                    for (l, g) in &rows {
                        out.line(format!("{l}\t{g}"));
                    }
                }
            }
        }
        Command::Vertex { word } => {
            out.expect(&[Text, Json], "vertex")?;
            let v = vertex_of(&element(word, spec)?);
            match out.format {
                Json => out.json(&json!({ "vertex": v.label(), "depth": v.depth() }))?,
                _ => out.line(v.label()),
            }
        }
        Command::Dist { word, other } => {
            out.expect(&[Text, Json], "dist")?;
            let u = vertex_of(&element(word, spec)?);
            let w = match other {
                Some(o) => vertex_of(&element(o, spec)?),
                None => Vertex::base(),
            };
            let d = distance(&w, &u);
            match out.format {
                Json => out.json(&json!({ "distance": d }))?,
                _ => out.line(d.to_string()),
            }
        }
        Command::Neighbors { word } => {
            out.expect(&[Text, Json], "neighbors")?;
            let labels: Vec<String> = neighbors(&vertex_of(&element(word, spec)?), spec)
                .iter()
                .map(Vertex::label)
                .collect();
            match out.format {
                Json => out.json(&labels)?,
                _ => labels.iter().for_each(|l| out.line(l)),
            }
        }
        Command::Orbit { word } => {
            out.expect(&[Text, Json], "orbit")?;
            let p = hyperbolic_orbit::<f64>(&j_affine(&element(word, spec)?, spec), spec)?;
            match out.format {
                Json => out.json(&json!({ "x": p.x, "y": p.y }))?,
                _ => out.line(format!("{} {}", sig12(p.x), sig12(p.y))),
            }
        }
        Command::Dot { radius } => {
            out.expect(&[Text, Dot, Csv], "dot")?;
            let ball = tree::ball(&Vertex::base(), *radius, spec, bounds.max_tree_radius)?;
            match out.format {
                Csv => out.csv(
                    &["parent", "child", "sign", "residue"],
                    tree::edge_rows(&ball),
                )?,
                _ => out.raw(&tree::to_dot(&ball)),
            }
        }
        Command::Affine { word } => {
            out.expect(&[Text, Json], "affine")?;
            let e = j_affine(&element(word, spec)?, spec);
            match out.format {
                Json => {
                    let a: Vec<String> = e.a.coords().iter().map(ToString::to_string).collect();
                    out.json(&json!({ "k": e.k, "a": a }))?
                }
                _ => out.line(e.to_string()),
            }
        }
        Command::InjectCheck(args) => {
            let ball = enumerate_ball(args.length, spec, bounds)?;
            return report_check(&check_injectivity(&ball, spec), out);
        }
        Command::StabCheck(args) => {
            let ball = enumerate_ball(args.length, spec, bounds)?;
            return report_check(&check_stabilizer(&ball, spec), out);
        }
        Command::Proper { length, thresholds } => {
            out.expect(&[Text, Json, Csv], "proper")?;
            let p = properness_profile(*length, thresholds, spec, bounds)?;
            match out.format {
                Json => out.json(&p)?,
                Csv => out.csv(
                    &["threshold", "length", "count"],
                    p.rows.iter().map(|r| {
                        [
                            r.threshold.to_string(),
                            r.length.to_string(),
                            r.count.to_string(),
                        ]
                    }),
                )?,
                _ => {
                    for (r, stable) in p.thresholds.iter().zip(&p.stabilized) {
                        let counts: Vec<String> =
                            p.counts(*r).iter().map(ToString::to_string).collect();
                        let flag = if *stable {
                            "stabilized"
                        } else {
                            "not stabilized"
                        };
                        out.line(format!("R={r}: {} ({flag})", counts.join(" ")));
                    }
                }
            }
            if !p.all_stabilized() {
                return Ok(Status::Violations);
            }
        }
        Command::Cocycle { word } => {
            out.expect(&[Text, Json], "cocycle")?;
            let b = cocycle(&element(word, spec)?);
            let edges: Vec<(String, String, i64)> = b
                .edges()
                .map(|(p, c, k)| (p.label(), c.label(), k))
                .collect();
            match out.format {
                Json => out.json(&json!({
                    "edges": edges.iter().map(|(p, c, k)| json!({ "from": p, "to": c, "coefficient": k })).collect::<Vec<_>>(),
                    "norm_sq": b.norm_sq(),
                }))?,
                _ => {
                    for (p, c, k) in &edges {
                        out.line(format!("{p} -> {c}\t{k:+}"));
                    }
                    out.line(format!("norm^2 = {}", b.norm_sq()));
                }
            }
        }
        Command::CocycleCheck {
            length,
            pairs,
            seed,
        } => {
            return cocycle_check(*length, *pairs, *seed, spec, bounds, out);
        }
        Command::Gram { sample, kernel } => return gram(sample, *kernel, spec, bounds, out),
        Command::Witness { word, s } => {
            out.expect(&[Text, Json], "witness")?;
            let v = witness(&element(word, spec)?, *s, spec)?;
            match out.format {
                Json => out.json(&json!({ "s": s, "witness": v }))?,
                _ => out.line(sig12(v)),
            }
        }
        Command::C0 { length, s } => {
            out.expect(&[Text, Json, Csv], "c0")?;
            let rows = c0_profile(*length, *s, spec, bounds)?;
            match out.format {
                Json => out.json(&rows)?,
                Csv => out.csv(
                    &["L", "max_psi", "argmax"],
                    rows.iter()
                        .map(|r| [r.length.to_string(), sig12(r.max), r.argmax.clone()]),
                )?,
                _ => {
                    for r in &rows {
                        out.line(format!("{}\t{}\t{}", r.length, sig12(r.max), r.argmax));
                    }
                }
            }
        }
    }
    Ok(Status::Ok)
}

fn summary(violations: usize, total: usize, unit: &str) -> String {
    let head = if violations == 0 { "OK" } else { "FAIL" };
    format!("{head}: {violations} violations / {total} {unit}")
}

fn report_check(r: &CheckReport, out: &mut Output) -> Result<Status, Failure> {
    out.expect(&[Text, Json], r.check)?;
    match out.format {
        Json => out.json(r)?,
        _ => {
            out.line(summary(r.violations.len(), r.elements, "elements"));
            for v in &r.violations {
                out.line(format!("{}: {}", v.element, v.reason));
            }
        }
    }
    Ok(if r.is_ok() {
        Status::Ok
    } else {
        Status::Violations
    })
}

fn cocycle_check(
    length: usize,
    pairs: usize,
    seed: u64,
    spec: &GroupSpec,
    bounds: &Bounds,
    out: &mut Output,
) -> Result<Status, Failure> {
    out.expect(&[Text, Json], "cocycle-check")?;
    let ball = enumerate_ball(length, spec, bounds)?;
    let els = ball.elements();
    let mut failures = Vec::new();
    for g in els {
        let b = cocycle(g);
        if b.norm_sq() != distance(&Vertex::base(), &vertex_of(g)) as i64 {
            failures.push(format!(
                "{g}: norm^2 {} differs from the tree distance",
                b.norm_sq()
            ));
        }
        if !cocycle_inverse_check(g, spec) {
            failures.push(format!("{g}: inverse identity fails"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..pairs {
        let (a, b) = (
            &els[rng.random_range(0..els.len())],
            &els[rng.random_range(0..els.len())],
        );
        if !cocycle_identity_check(a, b, spec) {
            failures.push(format!("({a}, {b}): cocycle law fails"));
        }
    }
    let checks = 2 * els.len() + pairs;
    match out.format {
        Json => out.json(&json!({ "checks": checks, "violations": failures }))?,
        _ => {
            out.line(summary(failures.len(), checks, "checks"));
            failures.iter().for_each(|f| out.line(f));
        }
    }
    Ok(if failures.is_empty() {
        Status::Ok
    } else {
        Status::Violations
    })
}

fn gram(
    args: &SampleArgs,
    kernel: KernelKind,
    spec: &GroupSpec,
    bounds: &Bounds,
    out: &mut Output,
) -> Result<Status, Failure> {
    out.expect(&[Text, Json, Csv], "gram")?;
    let ball = enumerate_ball(args.length, spec, bounds)?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut reports: Vec<(usize, GramReport<f64>)> = Vec::new();
    for i in 0..args.samples {
        let sample = ball.sample(args.size, &mut rng)?;
        for &s in &args.s {
            let r = match kernel {
                KernelKind::Tree => tree_gram(&sample, s, spec)?,
                KernelKind::Witness => witness_gram(&sample, s, spec)?,
            };
            reports.push((i, r));
        }
    }
    let bad = reports.iter().filter(|(_, r)| !r.psd).count();
    match out.format {
        Json => out.json(&reports.iter().map(|(_, r)| r).collect::<Vec<_>>())?,
        Csv => out.csv(
            &["sample", "s", "min_eigenvalue", "tolerance", "psd"],
            reports.iter().map(|(i, r)| {
                [
                    i.to_string(),
                    sig12(r.s),
                    sig12(r.min_eigenvalue),
                    sig12(r.tolerance),
                    r.psd.to_string(),
                ]
            }),
        )?,
        _ => {
            out.line(summary(bad, reports.len(), "reports"));
            for (i, r) in &reports {
                let verdict = if r.psd { "PSD" } else { "not PSD" };
                out.line(format!(
                    "sample {i} s={} min_eigenvalue={} tolerance={} {verdict}",
                    sig12(r.s),
                    sig12(r.min_eigenvalue),
                    sig12(r.tolerance)
                ));
            }
        }
    }
    Ok(if bad == 0 {
        Status::Ok
    } else {
        Status::Violations
    })
}
