use serde_json::json;

use qcover_core::congruence::Congruence;
use qcover_core::covers::{
    centralize, connected_component, endpoint_cover, frq, fundamental_skeleton, horn_analyze, is_covering,
    is_normal_ext, is_trivial_ext, pi0, Horn, HornStep,
};
use qcover_core::hom::pullback;
use qcover_core::io::RackFile;
use qcover_core::paths::{abelianization, pth_presentation, word_eq3, RewriteBudget, Separation, WordEquality};
use qcover_core::{Error, FiniteRack, GroupWord, RackHom, Result};

use crate::report::Report;

fn rack_json(r: &FiniteRack) -> serde_json::Value {
    json!(RackFile::from_rack(None, r))
}

fn hom_json(f: &RackHom) -> serde_json::Value {
    json!({ "dom": RackFile::from_rack(None, f.dom()), "cod": RackFile::from_rack(None, f.cod()), "map": f.map() })
}

fn table_text(r: &FiniteRack) -> String {
    let width = r.labels().iter().map(String::len).max().unwrap_or(1);
    let mut out = format!("{:>width$} |", "◁");
    for y in r.labels() {
        out.push_str(&format!(" {y:>width$}"));
    }
    out.push('\n');
    for x in 0..r.order() {
        out.push_str(&format!("{:>width$} |", r.label(x)));
        for y in 0..r.order() {
            out.push_str(&format!(" {:>width$}", r.label(r.op(x, y))));
        }
        out.push('\n');
    }
    out
}

fn classes_text(r: &FiniteRack, c: &Congruence) -> String {
    c.display_with(r)
}

fn named_classes(r: &FiniteRack, c: &Congruence) -> Vec<Vec<String>> {
    c.classes()
        .into_iter()
        .map(|cl| cl.into_iter().map(|x| r.label(x).to_string()).collect())
        .collect()
}

fn plural(n: usize, word: &str) -> String {
    match (n, word.ends_with('s')) {
        (1, _) => format!("1 {word}"),
        (_, true) => format!("{n} {word}es"),
        _ => format!("{n} {word}s"),
    }
}

/// Cycle notation, with labels that would read as cycles put in brackets.
fn cycles(p: &qcover_core::Perm, labels: &[String]) -> String {
    let safe: Vec<String> = labels
        .iter()
        .map(|l| {
            if l.contains(['(', ')', ' ']) {
                format!("[{l}]")
            } else {
                l.clone()
            }
        })
        .collect();
    p.cycle_string(&safe)
}

pub fn validate(r: Result<FiniteRack>) -> Result<Report> {
    match r {
        Ok(r) => Ok(Report::new("validate", format!("valid rack of order {}", r.order()))
            .verdict(true)
            .result(json!({ "order": r.order() }))),
        Err(e @ (Error::NotBijectiveColumn { .. } | Error::SelfDistributivityFail { .. })) => {
            let witness = match &e {
                Error::NotBijectiveColumn { column } => json!({ "column": column }),
                Error::SelfDistributivityFail { x, y, z } => json!({ "x": x, "y": y, "z": z }),
                _ => unreachable!(),
            };
            Ok(Report::new("validate", format!("invalid: {e}")).verdict(false).witness(witness))
        }
        Err(e) => Err(e),
    }
}

pub fn classify(r: &FiniteRack) -> Report {
    let c = r.classify();
    let kind = match (c.is_trivial, c.is_quandle, c.is_involutive) {
        (true, _, _) => "trivial quandle",
        (false, true, true) => "involutive quandle",
        (false, true, false) => "quandle",
        (false, false, true) => "involutive rack",
        (false, false, false) => "rack",
    };
    Report::new("classify", format!("{kind} of order {}", r.order())).result(json!({
        "order": r.order(),
        "quandle": c.is_quandle,
        "involutive": c.is_involutive,
        "trivial": c.is_trivial,
    }))
}

pub fn conj(labels: Vec<String>, cayley: &[Vec<usize>]) -> Result<Report> {
    let r = FiniteRack::conj_of_group(cayley, labels)?;
    let file = RackFile::from_rack(Some("conj"), &r);
    Ok(Report::new("conj", serde_json::to_string_pretty(&file).expect("rack serializes")).result(file))
}

pub fn pi0_report(r: &FiniteRack) -> Result<Report> {
    let (co, _, _) = pi0(r)?;
    let text = format!("{}: {}", plural(co.class_count(), "component"), classes_text(r, &co));
    let mut dot = String::from("digraph pi0 {\n");
    for (i, cl) in co.classes().iter().enumerate() {
        dot.push_str(&format!("  subgraph cluster_{i} {{\n    label=\"component {i}\";\n"));
        for &x in cl {
            dot.push_str(&format!("    \"{}\";\n", r.label(x)));
        }
        dot.push_str("  }\n");
    }
    dot.push_str("}\n");
    Ok(Report::new("pi0", text)
        .result(json!({ "count": co.class_count(), "components": named_classes(r, &co) }))
        .dot(dot))
}

pub fn component(r: &FiniteRack, a: usize) -> Result<Report> {
    let c = connected_component(r, a)?;
    let (co, _, _) = pi0(&c)?;
    let text = format!(
        "component of {} has {} and itself {}: {}\n{}",
        r.label(a),
        plural(c.order(), "element"),
        plural(co.class_count(), "component"),
        classes_text(&c, &co),
        table_text(&c)
    );
    Ok(Report::new("component", text).result(json!({
        "rack": rack_json(&c),
        "components": named_classes(&c, &co),
    })))
}

pub fn inn(r: &FiniteRack, cap: usize) -> Result<Report> {
    let mut g = r.inn_group(cap)?;
    let order = g.order(cap)?;
    let gens = g.reduced_generators();
    let cycles: Vec<String> = gens.iter().map(|p| cycles(p, r.labels())).collect();
    let mut text = format!("|Inn| = {order}");
    for c in &cycles {
        text.push_str(&format!("\n  {c}"));
    }
    Ok(Report::new("inn", text).result(json!({ "order": order, "generators": cycles })))
}

pub fn pth(r: &FiniteRack) -> Report {
    let p = pth_presentation(r);
    let relators: Vec<String> = p.relations().iter().map(|w| w.display_with(r.labels())).collect();
    Report::new("pth", p.to_text()).result(json!({ "generators": r.labels(), "relators": relators }))
}

pub fn abelianize(r: &FiniteRack) -> Result<Report> {
    let ab = abelianization(&pth_presentation(r))?;
    Ok(Report::new("abelianize", ab.to_string()).result(&ab))
}

pub fn covering(f: &RackHom, cap: usize) -> Result<Report> {
    let rep = is_covering(f, cap)?;
    let d = f.dom();
    let text = match rep.witness {
        None => "covering".to_string(),
        Some(w) => format!(
            "not a covering: x = {}, a = {}, b = {} with f(a) = f(b), x◁a = {} ≠ {} = x◁b, (x◁a)◁⁻¹b = {} ≠ x",
            d.label(w.x),
            d.label(w.a),
            d.label(w.b),
            d.label(d.op(w.x, w.a)),
            d.label(d.op(w.x, w.b)),
            d.label(w.endpoint)
        ),
    };
    Ok(Report::new("covering", text)
        .verdict(rep.verdict)
        .witness(rep.witness)
        .methods(&rep.methods))
}

pub fn trivial(f: &RackHom) -> Result<Report> {
    let (ok, w) = is_trivial_ext(f)?;
    let d = f.dom();
    let text = match &w {
        None => "trivial extension".to_string(),
        Some(w) => {
            let trail: Vec<String> = w
                .trail
                .iter()
                .map(|&(y, s)| format!("{}{}", if s < 0 { "◁⁻¹" } else { "◁" }, d.label(y)))
                .collect();
            format!(
                "not trivial: {} and {} are connected ({} {}) and have the same image",
                d.label(w.a),
                d.label(w.b),
                d.label(w.a),
                trail.join(" ")
            )
        }
    };
    Ok(Report::new("trivial", text).verdict(ok).witness(w))
}

pub fn normal(f: &RackHom) -> Result<Report> {
    let rep = is_normal_ext(f)?;
    let text = match &rep.witness {
        None => "normal extension".to_string(),
        Some((p, m)) => format!("not normal: projection {p} of the kernel pair is not trivial, membrane {m:?}"),
    };
    Ok(Report::new("normal", text)
        .verdict(rep.verdict)
        .witness(&rep.witness)
        .methods(json!({
            "first_projection_trivial": rep.first_projection_trivial,
            "second_projection_trivial": rep.second_projection_trivial,
        })))
}

pub fn centralize_report(f: &RackHom, cap: usize) -> Result<Report> {
    let c = centralize(f, cap)?;
    let d = f.dom();
    let text = format!(
        "C₁(f) has {}: {}\nF₁(f) is a covering of {} onto {}",
        plural(c.congruence.class_count(), "class"),
        classes_text(d, &c.congruence),
        c.central.dom().order(),
        c.central.cod().order()
    );
    Ok(Report::new("centralize", text)
        .methods(&c.methods)
        .result(json!({ "classes": named_classes(d, &c.congruence), "central": hom_json(&c.central) })))
}

pub fn frq_report(r: &FiniteRack, cap: usize) -> Result<Report> {
    let q = frq(r, cap)?;
    let text = format!(
        "Frq has {}: {}\n{}",
        plural(q.quandle.order(), "element"),
        classes_text(r, &q.congruence),
        table_text(&q.quandle)
    );
    Ok(Report::new("frq", text).result(json!({
        "classes": named_classes(r, &q.congruence),
        "quandle": rack_json(&q.quandle),
        "unit": q.unit.map(),
    })))
}

pub fn pullback_report(f: &RackHom, g: &RackHom, cap: usize) -> Result<Report> {
    let (p, to_f, to_g) = pullback(f, g)?;
    let cf = is_covering(&to_f, cap)?.verdict;
    let cg = is_covering(&to_g, cap)?.verdict;
    let says = |c: bool| if c { "covering" } else { "not a covering" };
    let text = format!(
        "pullback of order {}\nprojection to the domain of f: {}\nprojection to the domain of g: {}\n{}",
        p.order(),
        says(cf),
        says(cg),
        table_text(&p)
    );
    Ok(Report::new("pullback", text).result(json!({
        "rack": rack_json(&p),
        "to_f_domain": { "map": to_f.map(), "covering": cf },
        "to_g_domain": { "map": to_g.map(), "covering": cg },
    })))
}

pub fn endpoint_cover_report(r: &FiniteRack, cap: usize) -> Result<Report> {
    let e = endpoint_cover(r, cap)?;
    let text = format!(
        "endpoint cover of order {} = {} × |Inn| {}\nelements: {}",
        e.cover.order(),
        r.order(),
        e.inn.len(),
        e.cover.labels().join(" ")
    );
    Ok(Report::new("endpoint-cover", text)
        .verdict(true)
        .result(json!({ "cover": rack_json(&e.cover), "endpoint": e.endpoint.map() })))
}

pub fn skeleton(r: &FiniteRack, pointing: Option<&[usize]>, cap: usize) -> Result<Report> {
    let s = fundamental_skeleton(r, pointing, cap)?;
    let labels = r.labels();
    let mut text = format!("{}, |Inn| = {}\n", plural(s.components.len(), "component"), s.inn_order);
    let mut dot = String::from("digraph skeleton {\n");
    for (i, l) in s.loops.iter().enumerate() {
        let names: Vec<&str> = l.component.iter().map(|&x| r.label(x)).collect();
        let gens: Vec<String> = l.generators.iter().map(|g| cycles(g, labels)).collect();
        text.push_str(&format!(
            "  {{{}}} at {}: loop image of order {}{}{}\n",
            names.join(","),
            r.label(l.representative),
            l.order,
            if gens.is_empty() { "" } else { " generated by " },
            gens.join(", ")
        ));
        dot.push_str(&format!("  c{i} [label=\"{}\"];\n", r.label(l.representative)));
        for g in &gens {
            dot.push_str(&format!("  c{i} -> c{i} [label=\"{g}\"];\n"));
        }
    }
    text.push_str("(loop images in Inn only)");
    dot.push_str("}\n");
    Ok(Report::new("skeleton", text).result(&s).dot(dot))
}

/// Steps are `a,b` or `a,b,-` separated by `;`.
pub fn parse_steps(f: &RackHom, text: &str) -> Result<Vec<HornStep>> {
    let d = f.dom();
    text.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            let parts: Vec<&str> = s.split(',').map(str::trim).collect();
            let sign = match parts.get(2) {
                None | Some(&"+") | Some(&"+1") | Some(&"1") => 1,
                Some(&"-") | Some(&"-1") => -1,
                Some(other) => return Err(Error::Parse(format!("bad sign {other:?}"))),
            };
            if parts.len() < 2 || parts.len() > 3 {
                return Err(Error::Parse(format!("bad horn step {s:?}")));
            }
            Ok(HornStep {
                a: crate::input::element(d, parts[0])?,
                b: crate::input::element(d, parts[1])?,
                sign,
            })
        })
        .collect()
}

pub fn horn(f: &RackHom, base: usize, steps: Vec<HornStep>) -> Result<Report> {
    let h = Horn { base, steps };
    let a = horn_analyze(f, &h)?;
    let d = f.dom();
    let text = format!(
        "endpoints {} and {}: {}, {}",
        d.label(a.endpoints.0),
        d.label(a.endpoints.1),
        if a.closes { "closes" } else { "does not close" },
        if a.retracts { "retracts" } else { "does not retract" }
    );
    Ok(Report::new("horn", text).verdict(a.closes).result(a))
}

pub fn word_eq(r: &FiniteRack, u: &str, v: &str, depth: usize) -> Result<Report> {
    let labels = r.labels();
    let (u, v) = (GroupWord::parse(u, labels)?, GroupWord::parse(v, labels)?);
    let budget = RewriteBudget {
        depth,
        ..RewriteBudget::default()
    };
    let res = word_eq3(r, &u, &v, budget)?;
    let (verdict, text) = match &res {
        WordEquality::Equal { proof_depth } => (Some(true), format!("equal ({proof_depth} relator insertions)")),
        WordEquality::NotEqual(Separation::Excess { left, right }) => (
            Some(false),
            format!(
                "not equal: images in Inn differ, {} vs {}",
                cycles(left, labels),
                cycles(right, labels)
            ),
        ),
        WordEquality::NotEqual(Separation::Abelian { difference }) => (
            Some(false),
            format!("not equal: exponent sums differ by {difference:?}, outside the relation lattice"),
        ),
        WordEquality::Unknown => (None, format!("unknown within rewriting depth {depth}")),
    };
    let mut rep = Report::new("word-eq", text).result(&res);
    if let Some(v) = verdict {
        rep = rep.verdict(v);
    }
    if let WordEquality::NotEqual(s) = &res {
        rep = rep.witness(s);
    }
    Ok(rep)
}
