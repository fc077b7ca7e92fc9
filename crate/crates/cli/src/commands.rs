use std::collections::BTreeMap;
use std::fmt::Write as _;

use anyhow::{Context, Result};
use logw_core::characters::graded_dims;
use logw_core::lambda::{act, alcove_level};
use logw_core::{
    alcove_lambdas, central_charge, check_alcove, check_novel, check_strict_alcove,
    cohomology_dim, compare_sides, condequiv_scan, enumerate_lambdas, epsilon_chain, epsilon_of,
    euler_character, format_table2, graded_basis, kernel_graded_dims, relation_suite,
    rhs_character, table2_generate, Caps, CharSide, Hat, LambdaParam, Rat, RootSystem, Weight,
};
use serde::Serialize;
use serde_json::json;

use crate::args::*;
use crate::render::{self, no_csv, term_rows, terms};
use crate::{Report, Usage};

type Out = Result<Report>;

fn done(body: String) -> Out {
    Ok(Report { body, verified: true })
}

pub(crate) fn run(cli: &Cli) -> Out {
    let caps = Caps::from_env();
    let f = cli.format;
    match &cli.command {
        Command::Root { cmd: RootCmd::Info(t) } => root_info(t, f),
        Command::Lambda { cmd: LambdaCmd::List { level, alcove } } => lambda_list(level, *alcove, f, &caps),
        Command::Epsilon { cmd } => match cmd {
            EpsilonCmd::Chain { module, word } => eps_chain(module, word.as_deref(), f),
            EpsilonCmd::Of { module, word } => eps_of(module, word, f),
            EpsilonCmd::Table2 { module } => eps_table2(module, f),
        },
        Command::Cond { cmd } => match cmd {
            CondCmd::Check { module, j } => cond_check(module, j.as_deref(), f),
            CondCmd::Scan { level } => cond_scan(level, f, &caps),
        },
        Command::Char { cmd } => match cmd {
            CharCmd::Euler(a) => char_side(a, true, f, &caps),
            CharCmd::Rhs(a) => char_side(a, false, f, &caps),
            CharCmd::Compare(a) => char_compare(a, f, &caps),
        },
        Command::Fock { cmd } => match cmd {
            FockCmd::Basis(g) => fock_basis(g, f, &caps),
            FockCmd::Kernel { graded, j, refine, compare } => {
                fock_kernel(graded, j.as_deref(), *refine, *compare, f, &caps)
            }
            FockCmd::Relations { level, deltamax } => fock_relations(level, deltamax, f, &caps),
        },
        Command::Dims(a) => dims(a, f),
    }
}

fn root_system(t: &TypeArg) -> Result<RootSystem> {
    Ok(t.ty.parse::<RootSystem>()?)
}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn parse_list(s: &str) -> Result<Vec<i64>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| usage(format!("not an integer: {x:?}"))))
        .collect()
}

fn parse_indices(rs: &RootSystem, s: &str) -> Result<Vec<usize>> {
    parse_list(s)?
        .into_iter()
        .map(|i| {
            if (1..=rs.rank as i64).contains(&i) {
                Ok(i as usize)
            } else {
                Err(usage(format!("index {i} outside 1..={}", rs.rank)))
            }
        })
        .collect()
}

fn parse_rat(name: &str, s: &str) -> Result<Rat> {
    s.trim()
        .parse::<Rat>()
        .map_err(|_| usage(format!("--{name}: not a rational number: {s:?}")))
}

/// `0`, or `hat=<k|0>,s=<c1,...,cl>`; either part may be omitted.
pub(crate) fn parse_lambda(rs: &RootSystem, p: i64, spec: &str) -> Result<LambdaParam> {
    let spec = spec.trim();
    if spec == "0" {
        return Ok(LambdaParam::zero(rs, p)?);
    }
    let (hat_part, s_part) = match spec.find("s=") {
        Some(at) => (spec[..at].trim_end_matches(','), Some(&spec[at + 2..])),
        None => (spec, None),
    };
    let hat = match hat_part.strip_prefix("hat=") {
        Some(h) => {
            let h = h.trim().trim_start_matches(['w', 'W']);
            match h.parse::<usize>() {
                Ok(0) => Hat::Zero,
                Ok(k) => Hat::Omega(k),
                Err(_) => return Err(usage(format!("--lambda: bad hat index in {spec:?}"))),
            }
        }
        None if hat_part.is_empty() => Hat::Zero,
        None => return Err(usage(format!("--lambda: expected `0` or `hat=<k|0>,s=<...>`, got {spec:?}"))),
    };
    let s = match s_part {
        Some(list) => parse_list(list)?,
        None => vec![0; rs.rank],
    };
    Ok(LambdaParam::new(rs, p, hat, s)?)
}

fn module(m: &Module) -> Result<(RootSystem, LambdaParam)> {
    let rs = root_system(&m.level.ty)?;
    let lam = parse_lambda(&rs, m.level.p, &m.lambda)?;
    Ok((rs, lam))
}

fn root_info(t: &TypeArg, f: Format) -> Out {
    let rs = root_system(t)?;
    let blocks: Vec<_> = rs
        .w0_application_blocks()
        .into_iter()
        .map(|((u, l), w)| json!({ "block": format!("({u},{l})"), "word": w }))
        .collect();
    let cinv: Vec<Vec<String>> =
        rs.cartan_inv.iter().map(|row| row.iter().map(|x| x.to_string()).collect()).collect();
    let order = rs.weyl_order().to_string();
    match f {
        Format::Json => done(render::json(&json!({
            "type": rs.label(),
            "rank": rs.rank,
            "cartan": rs.cartan,
            "cartan_inverse": cinv,
            "coxeter": rs.coxeter,
            "dim_g": rs.dim_g,
            "weyl_order": order,
            "rho": rs.rho,
            "theta": rs.theta,
            "minuscule": rs.minuscule,
            "positive_roots": rs.positive_roots,
            "w0_word": rs.w0_word,
            "w0_blocks": blocks,
        }))?),
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "type: {}", rs.label())?;
            writeln!(s, "rank: {}", rs.rank)?;
            writeln!(s, "coxeter: {}", rs.coxeter)?;
            writeln!(s, "dim_g: {}", rs.dim_g)?;
            writeln!(s, "weyl_order: {order}")?;
            writeln!(s, "positive_roots: {}", rs.positive_roots.len())?;
            writeln!(s, "rho: {}", rs.rho)?;
            writeln!(s, "theta: {}", rs.theta)?;
            writeln!(s, "minuscule: {:?}", rs.minuscule)?;
            writeln!(s, "w0_word: {:?}", rs.w0_word)?;
            for row in &rs.cartan {
                writeln!(s, "cartan: {row:?}")?;
            }
            done(s)
        }
        Format::Csv => Err(no_csv("root info")),
    }
}

fn lambda_list(level: &Level, alcove_only: bool, f: Format, caps: &Caps) -> Out {
    let rs = root_system(&level.ty)?;
    let all = if alcove_only { alcove_lambdas(&rs, level.p)? } else { enumerate_lambdas(&rs, level.p, caps)? };
    let rows: Vec<Vec<String>> = all
        .iter()
        .map(|l| {
            vec![
                l.to_string(),
                alcove_level(&rs, l).to_string(),
                check_alcove(&rs, l).to_string(),
                check_strict_alcove(&rs, l).to_string(),
            ]
        })
        .collect();
    match f {
        Format::Json => {
            let items: Vec<_> = all
                .iter()
                .map(|l| {
                    json!({
                        "lambda": l.to_string(),
                        "level": alcove_level(&rs, l),
                        "alcove": check_alcove(&rs, l),
                        "strict_alcove": check_strict_alcove(&rs, l),
                    })
                })
                .collect();
            done(render::json(&json!({
                "type": rs.label(), "p": level.p, "count": all.len(), "lambdas": items,
            }))?)
        }
        Format::Csv => done(render::csv(&["lambda", "level", "alcove", "strict_alcove"], &rows)?),
        Format::Text => done(rows.iter().map(|r| r.join(" ") + "\n").collect()),
    }
}

fn eps_chain(m: &Module, word: Option<&str>, f: Format) -> Out {
    let (rs, lam) = module(m)?;
    let word = match word {
        Some(w) => parse_indices(&rs, w)?,
        None => rs.w0_application_order(),
    };
    let c = epsilon_chain(&rs, &lam, &word)?;
    let rows: Vec<Vec<String>> = c
        .word
        .iter()
        .zip(&c.steps)
        .enumerate()
        .map(|(n, (i, e))| vec![(n + 1).to_string(), i.to_string(), e.omega_string()])
        .collect();
    match f {
        Format::Json => {
            let steps: Vec<_> = c
                .word
                .iter()
                .zip(&c.steps)
                .map(|(i, e)| json!({ "letter": i, "epsilon": e, "omega": e.omega_string() }))
                .collect();
            done(render::json(&json!({
                "type": rs.label(),
                "p": lam.p,
                "lambda": lam.to_string(),
                "word": c.word,
                "steps": steps,
                "cumulative": c.cumulative,
                "step_sum": c.step_sum(),
                "stepwise_condition": c.stepwise_condition,
                "first_violation": c.first_violation,
            }))?)
        }
        Format::Csv => done(render::csv(&["position", "letter", "epsilon"], &rows)?),
        Format::Text => {
            let mut s: String = rows.iter().map(|r| format!("{} s{} {}\n", r[0], r[1], r[2])).collect();
            writeln!(s, "cumulative {}", c.cumulative.omega_string())?;
            writeln!(s, "stepwise_condition {}", c.stepwise_condition)?;
            done(s)
        }
    }
}

fn eps_of(m: &Module, word: &str, f: Format) -> Out {
    let (rs, lam) = module(m)?;
    let word = parse_indices(&rs, word)?;
    let w = rs.element(&word)?;
    let eps = epsilon_of(&rs, &lam, &w)?;
    let (image, _) = act(&rs, &lam, &w);
    match f {
        Format::Json => done(render::json(&json!({
            "type": rs.label(),
            "p": lam.p,
            "lambda": lam.to_string(),
            "word": word,
            "epsilon": eps,
            "omega": eps.omega_string(),
            "image": image.to_string(),
        }))?),
        Format::Csv => done(render::csv(
            &["lambda", "word", "epsilon", "image"],
            &[vec![lam.to_string(), format!("{word:?}"), eps.omega_string(), image.to_string()]],
        )?),
        Format::Text => done(format!("{}\n", eps.omega_string())),
    }
}

fn eps_table2(m: &Module, f: Format) -> Out {
    let (rs, lam) = module(m)?;
    let blocks = table2_generate(&rs, &lam)?;
    match f {
        Format::Text => done(format_table2(&blocks)),
        Format::Csv => {
            let mut rows = Vec::new();
            for b in &blocks {
                for (n, e) in b.steps.iter().enumerate() {
                    rows.push(vec![format!("({},{})", b.upper, b.lower), (n + 1).to_string(), e.omega_string()]);
                }
            }
            done(render::csv(&["block", "position", "epsilon"], &rows)?)
        }
        Format::Json => {
            let mut sum = Weight::zero(rs.rank);
            let items: Vec<_> = blocks
                .iter()
                .map(|b| {
                    for e in &b.steps {
                        sum += e;
                    }
                    let steps: Vec<String> = b.steps.iter().map(|e| e.omega_string()).collect();
                    json!({ "block": format!("({},{})", b.upper, b.lower), "steps": steps })
                })
                .collect();
            done(render::json(&json!({
                "type": rs.label(),
                "p": lam.p,
                "lambda": lam.to_string(),
                "strict_alcove": check_strict_alcove(&rs, &lam),
                "blocks": items,
                "total": sum.omega_string(),
            }))?)
        }
    }
}

fn cond_check(m: &Module, j: Option<&str>, f: Format) -> Out {
    let (rs, lam) = module(m)?;
    let j = match j {
        Some(s) => parse_indices(&rs, s)?,
        None => (1..=rs.rank).collect(),
    };
    let chain = epsilon_chain(&rs, &lam, &rs.w0_application_order())?;
    let alcove = check_alcove(&rs, &lam);
    let novel = check_novel(&rs, &lam, &j)?;
    let agrees = chain.stepwise_condition == alcove;
    let verified = agrees && (!alcove || novel);
    let body = match f {
        Format::Json => render::json(&json!({
            "type": rs.label(),
            "p": lam.p,
            "lambda": lam.to_string(),
            "level": alcove_level(&rs, &lam),
            "alcove": alcove,
            "strict_alcove": check_strict_alcove(&rs, &lam),
            "stepwise_condition": chain.stepwise_condition,
            "first_violation": chain.first_violation,
            "J": j,
            "novel": novel,
            "agrees": agrees,
        }))?,
        Format::Csv => render::csv(
            &["lambda", "alcove", "stepwise_condition", "novel", "agrees"],
            &[vec![
                lam.to_string(),
                alcove.to_string(),
                chain.stepwise_condition.to_string(),
                novel.to_string(),
                agrees.to_string(),
            ]],
        )?,
        Format::Text => format!(
            "alcove {alcove}\nstepwise_condition {}\nnovel {novel}\nagrees {agrees}\n",
            chain.stepwise_condition
        ),
    };
    Ok(Report { body, verified })
}

fn cond_scan(level: &Level, f: Format, caps: &Caps) -> Out {
    let rs = root_system(&level.ty)?;
    let rep = condequiv_scan(&rs, level.p, caps)?;
    let verified =
        rep.mismatches.is_empty() && rep.prefix_sum_failures.is_empty() && rep.alcove_not_novel.is_empty();
    let lists = [
        ("mismatch", &rep.mismatches),
        ("prefix_sum_failure", &rep.prefix_sum_failures),
        ("novel_outside_alcove", &rep.novel_outside_alcove),
        ("alcove_not_novel", &rep.alcove_not_novel),
    ];
    let body = match f {
        Format::Json => {
            let names = |v: &Vec<LambdaParam>| v.iter().map(|l| l.to_string()).collect::<Vec<_>>();
            render::json(&json!({
                "type": rep.type_label,
                "p": rep.p,
                "total": rep.total,
                "alcove": rep.alcove,
                "mismatches": names(&rep.mismatches),
                "prefix_sum_failures": names(&rep.prefix_sum_failures),
                "novel_outside_alcove": names(&rep.novel_outside_alcove),
                "alcove_not_novel": names(&rep.alcove_not_novel),
            }))?
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = lists
                .iter()
                .flat_map(|(kind, v)| v.iter().map(move |l| vec![kind.to_string(), l.to_string()]))
                .collect();
            render::csv(&["kind", "lambda"], &rows)?
        }
        Format::Text => {
            let mut s = format!("{} p={}: {} parameters, {} in the alcove\n", rep.type_label, rep.p, rep.total, rep.alcove);
            for (kind, v) in lists {
                writeln!(s, "{kind}: {}", v.len())?;
            }
            s
        }
    };
    Ok(Report { body, verified })
}

struct Sides {
    rs: RootSystem,
    euler: Option<CharSide>,
    rhs: Option<CharSide>,
}

fn sides(a: &CharArgs, euler: bool, rhs: bool, caps: &Caps) -> Result<Sides> {
    let (rs, lam) = module(&a.module)?;
    let n = parse_rat("qmax", &a.qmax)?;
    let weyl = rs.enumerate_weyl(caps.max_weyl)?;
    let e = if euler { Some(euler_character(&rs, &weyl, &lam, n)?) } else { None };
    let h = if rhs {
        Some(rhs_character(&rs, &weyl, &lam, n, a.allow_outside).with_context(|| {
            if check_alcove(&rs, &lam) { String::new() } else { "pass --unsafe to evaluate outside the alcove".into() }
        })?)
    } else {
        None
    };
    Ok(Sides { rs, euler: e, rhs: h })
}

fn char_side(a: &CharArgs, euler: bool, f: Format, caps: &Caps) -> Out {
    let s = sides(a, euler, !euler, caps)?;
    let side = s.euler.or(s.rhs).unwrap();
    match f {
        Format::Text => done(side.series.dump_text()),
        Format::Csv => done(render::csv(&["q", "z", "coefficient"], &term_rows(&side.series))?),
        Format::Json => done(render::json(&json!({
            "side": if euler { "euler" } else { "rhs" },
            "type": s.rs.label(),
            "p": side.lambda.p,
            "lambda": side.lambda.to_string(),
            "order": side.order.to_string(),
            "conjectural": side.conjectural,
            "terms": terms(&side.series),
        }))?),
    }
}

fn char_compare(a: &CharArgs, f: Format, caps: &Caps) -> Out {
    let s = sides(a, true, true, caps)?;
    let (e, h) = (s.euler.unwrap(), s.rhs.unwrap());
    let rep = compare_sides(&e, &h)?;
    let body = match f {
        Format::Json => render::json(&json!({
            "type": s.rs.label(),
            "p": e.lambda.p,
            "lambda": e.lambda.to_string(),
            "order": rep.order,
            "conjectural": h.conjectural,
            "matches": rep.matches,
            "terms": e.series.len(),
            "diffs": rep.diffs,
        }))?,
        Format::Csv => {
            let rows: Vec<Vec<String>> =
                rep.diffs.iter().map(|d| vec![d.q.clone(), d.z.to_string(), d.lhs.clone(), d.rhs.clone()]).collect();
            render::csv(&["q", "z", "euler", "rhs"], &rows)?
        }
        Format::Text => {
            let mut out = format!("matches {}\n", rep.matches);
            for d in &rep.diffs {
                writeln!(out, "q^{{{}}} z^{} : {} vs {}", d.q, d.z, d.lhs, d.rhs)?;
            }
            out
        }
    };
    Ok(Report { body, verified: rep.matches })
}

fn graded(g: &Graded) -> Result<(RootSystem, LambdaParam, Rat)> {
    let (rs, lam) = module(&g.module)?;
    let d = parse_rat("deltamax", &g.deltamax)?;
    if d < Rat::from(0) {
        return Err(usage(format!("--deltamax must be nonnegative, got {d}")));
    }
    Ok((rs, lam, d))
}

fn fock_basis(g: &Graded, f: Format, caps: &Caps) -> Out {
    let (rs, lam, d) = graded(g)?;
    let basis = graded_basis(&rs, &lam, d, caps)?;
    let mut rows: Vec<(Rat, String)> = basis.iter().map(|v| (v.conformal_weight(&rs, lam.p), v.to_string())).collect();
    rows.sort();
    match f {
        Format::Json => {
            let items: Vec<_> = rows.iter().map(|(d, v)| json!({ "delta": d.to_string(), "vector": v })).collect();
            done(render::json(&json!({
                "type": rs.label(),
                "p": lam.p,
                "lambda": lam.to_string(),
                "deltamax": d.to_string(),
                "count": rows.len(),
                "vectors": items,
            }))?)
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = rows.into_iter().map(|(d, v)| vec![d.to_string(), v]).collect();
            done(render::csv(&["delta", "vector"], &rows)?)
        }
        Format::Text => done(rows.iter().map(|(d, v)| format!("{d} {v}\n")).collect()),
    }
}

#[derive(Serialize)]
struct GradeDiff {
    delta: String,
    kernel: String,
    character: String,
}

fn fock_kernel(g: &Graded, j: Option<&str>, refine: bool, compare: bool, f: Format, caps: &Caps) -> Out {
    let (rs, lam, d) = graded(g)?;
    let j = match j {
        Some(s) => parse_indices(&rs, s)?,
        None => (1..=rs.rank).collect(),
    };
    let rep = kernel_graded_dims(&rs, &lam, &j, d, refine, caps)?;
    let mut diffs = Vec::new();
    if compare {
        if j.len() != rs.rank {
            return Err(usage("--compare needs the full index set"));
        }
        let weyl = rs.enumerate_weyl(caps.max_weyl)?;
        let c24 = central_charge(&rs, lam.p) / 24;
        let h = rhs_character(&rs, &weyl, &lam, d - c24, false)?;
        let dims: BTreeMap<Rat, String> = graded_dims(&h.series).into_iter().map(|(q, c)| (q, c.to_string())).collect();
        let mut seen = Vec::new();
        for e in &rep.entries {
            let q = e.delta - c24;
            seen.push(q);
            let want = dims.get(&q).cloned().unwrap_or_else(|| "0".into());
            if want != e.kernel.to_string() {
                diffs.push(GradeDiff { delta: e.delta.to_string(), kernel: e.kernel.to_string(), character: want });
            }
        }
        for (q, c) in &dims {
            if !seen.contains(q) {
                diffs.push(GradeDiff { delta: (*q + c24).to_string(), kernel: "0".into(), character: c.clone() });
            }
        }
    }
    let body = match f {
        Format::Json => {
            let mut v = serde_json::to_value(&rep)?;
            v["type"] = json!(rs.label());
            v["lambda"] = json!(lam.to_string());
            if compare {
                v["comparison"] = json!({ "matches": diffs.is_empty(), "diffs": diffs });
            }
            render::json(&v)?
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = rep
                .entries
                .iter()
                .map(|e| vec![e.delta.to_string(), e.ambient.to_string(), e.kernel.to_string()])
                .collect();
            render::csv(&["delta", "ambient", "kernel"], &rows)?
        }
        Format::Text => {
            let mut s = String::new();
            for e in &rep.entries {
                writeln!(s, "{} {} {}", e.delta, e.ambient, e.kernel)?;
            }
            for x in &diffs {
                writeln!(s, "mismatch delta={} kernel={} character={}", x.delta, x.kernel, x.character)?;
            }
            s
        }
    };
    Ok(Report { body, verified: diffs.is_empty() })
}

fn fock_relations(level: &Level, deltamax: &str, f: Format, caps: &Caps) -> Out {
    let rs = root_system(&level.ty)?;
    let d = parse_rat("deltamax", deltamax)?;
    if d < Rat::from(0) {
        return Err(usage(format!("--deltamax must be nonnegative, got {d}")));
    }
    let rep = relation_suite(&rs, level.p, d, caps)?;
    let body = match f {
        Format::Json => render::json(&rep)?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = rep
                .checks
                .iter()
                .map(|c| vec![c.name.clone(), c.cases.to_string(), c.failures.len().to_string()])
                .collect();
            render::csv(&["check", "cases", "failures"], &rows)?
        }
        Format::Text => {
            let mut s = String::new();
            for c in &rep.checks {
                writeln!(s, "{} {} cases, {} failures", c.name, c.cases, c.failures.len())?;
                for x in &c.failures {
                    writeln!(s, "  {x}")?;
                }
            }
            writeln!(s, "passed {}", rep.passed)?;
            s
        }
    };
    Ok(Report { body, verified: rep.passed })
}

fn dims(a: &DimsArgs, f: Format) -> Out {
    let mu = Weight(parse_list(&a.mu)?);
    let h0 = cohomology_dim(&mu, a.i, 0)?;
    let h1 = cohomology_dim(&mu, a.i, 1)?;
    let m = mu.coord(a.i);
    match f {
        Format::Json => done(render::json(&json!({ "mu": mu, "i": a.i, "pairing": m, "H0": h0, "H1": h1 }))?),
        Format::Csv => done(render::csv(
            &["mu", "i", "pairing", "H0", "H1"],
            &[vec![mu.to_string(), a.i.to_string(), m.to_string(), h0.to_string(), h1.to_string()]],
        )?),
        Format::Text => done(format!("H0 {h0}\nH1 {h1}\n")),
    }
}
