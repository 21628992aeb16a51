//! End-to-end acceptance checks, one line per criterion.
//!
//! Counts and partitions are recomputed here from raw tables with
//! brute-force code that shares nothing with the library beyond the
//! `FiniteRack` table accessors.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::process::ExitCode;
use std::time::Instant;

use qcover_core::congruence::Congruence;
use qcover_core::corpus;
use qcover_core::covers::{
    centralize, connected_component, endpoint_cover, frq, is_covering, is_normal_ext, is_trivial_ext, pi0,
};
use qcover_core::io::{parse_group, parse_rack};
use qcover_core::paths::{abelianization, kernel_image_subgroup, pth_presentation};
use qcover_core::random::{random_rack, random_surjection, sample_rng, DEFAULT_SEED};
use qcover_core::suite::{run_named, RunConfig};
use qcover_core::{FiniteRack, DEFAULT_CLOSURE_CAP as CAP};

type Outcome = Result<String, String>;

macro_rules! check {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

// ---- independent brute-force helpers -------------------------------------

fn table(r: &FiniteRack) -> Vec<Vec<usize>> {
    r.table()
}

/// Connected components: classes of the equivalence generated by
/// `x ~ x ◁ y`.
fn components(t: &[Vec<usize>]) -> Vec<BTreeSet<usize>> {
    let n = t.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for x in 0..n {
        for y in 0..n {
            let (a, b) = (find(&mut parent, x), find(&mut parent, t[x][y]));
            parent[a] = b;
        }
    }
    let mut by_root: std::collections::BTreeMap<usize, BTreeSet<usize>> = Default::default();
    for x in 0..n {
        by_root.entry(find(&mut parent, x)).or_default().insert(x);
    }
    by_root.into_values().collect()
}

/// Order of the group generated by the columns of the table, as
/// permutations of the rows.
fn inn_order(t: &[Vec<usize>]) -> usize {
    let n = t.len();
    let gens: Vec<Vec<usize>> = (0..n).map(|y| (0..n).map(|x| t[x][y]).collect()).collect();
    let id: Vec<usize> = (0..n).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in &gens {
            let q: Vec<usize> = p.iter().map(|&i| g[i]).collect();
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    seen.len()
}

/// `|G / [G, G]|` for a group given by its Cayley table.
fn abelianized_order(cayley: &[Vec<usize>]) -> usize {
    let n = cayley.len();
    let e = (0..n).find(|&i| (0..n).all(|j| cayley[i][j] == j)).unwrap();
    let inv = |g: usize| (0..n).find(|&h| cayley[g][h] == e).unwrap();
    let mut sub: BTreeSet<usize> = BTreeSet::from([e]);
    for g in 0..n {
        for h in 0..n {
            sub.insert(cayley[cayley[cayley[g][h]][inv(g)]][inv(h)]);
        }
    }
    loop {
        let grown: BTreeSet<usize> = sub.iter().flat_map(|&a| sub.iter().map(move |&b| cayley[a][b])).collect();
        if grown.len() == sub.len() {
            break;
        }
        sub = grown;
    }
    n / sub.len()
}

fn partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                let top = p.iter().max().map_or(0, |m| m + 1);
                (0..=top).map(move |b| {
                    let mut q = p.clone();
                    q.push(b);
                    q
                })
            })
            .collect();
    }
    out
}

/// The least partition of the domain that is a congruence, refines the
/// kernel of `f`, and identifies `x ◁ a ◁⁻¹ b` with `x` whenever
/// `f(a) = f(b)`.
fn least_centralizing(t: &[Vec<usize>], f: &[usize]) -> Vec<usize> {
    let n = t.len();
    let inv = |x: usize, y: usize| (0..n).find(|&z| t[z][y] == x).unwrap();
    let ok = |p: &[usize]| {
        (0..n).all(|x| {
            (0..n).all(|y| {
                (p[x] != p[y] || f[x] == f[y])
                    && (0..n).all(|z| p[x] != p[y] || (p[t[x][z]] == p[t[y][z]] && p[t[z][x]] == p[t[z][y]]))
                    && (0..n).all(|a| f[a] != f[y] || p[inv(t[x][a], y)] == p[x])
            })
        })
    };
    let good: Vec<Vec<usize>> = partitions(n).into_iter().filter(|p| ok(p)).collect();
    let finer = |p: &[usize], q: &[usize]| (0..n).all(|x| (0..n).all(|y| p[x] != p[y] || q[x] == q[y]));
    let least: Vec<&Vec<usize>> = good.iter().filter(|p| good.iter().all(|q| finer(p, q))).collect();
    assert_eq!(least.len(), 1, "centralizing partitions have a least element");
    least[0].clone()
}

fn same_partition(c: &Congruence, labels: &[usize]) -> bool {
    let n = labels.len();
    (0..n).all(|x| (0..n).all(|y| c.related(x, y) == (labels[x] == labels[y])))
}

fn named_classes(r: &FiniteRack, c: &Congruence) -> BTreeSet<BTreeSet<String>> {
    c.classes()
        .into_iter()
        .map(|cl| cl.into_iter().map(|x| r.label(x).to_string()).collect())
        .collect()
}

fn battery(cfg: &RunConfig, names: &[&str]) -> Outcome {
    let mut counts = Vec::new();
    for name in names {
        let rep = run_named(cfg, name).ok_or_else(|| format!("no property {name}"))?;
        if let Some(f) = &rep.failure {
            return Err(format!("{name}: sample {}: {}", f.sample, f.message));
        }
        counts.push(format!("{name} {}/{}", rep.passed, rep.total));
    }
    Ok(counts.join(", "))
}

// ---- criteria --------------------------------------------------------------

fn qabs_golden() -> Outcome {
    let text = r#"{"elements": ["a", "b", "s"], "table": [[0, 0, 1], [1, 1, 0], [2, 2, 2]]}"#;
    let q = parse_rack(text, false).map_err(err)?;
    let c = q.classify();
    check!(c.is_quandle && c.is_involutive && !c.is_trivial, "classified as {c:?}");
    let (co, _, _) = pi0(&q).map_err(err)?;
    check!(co.class_count() == 2, "{} components", co.class_count());
    check!(components(&table(&q)).len() == 2, "brute force disagrees");
    let comp = connected_component(&q, q.index_of("a").unwrap()).map_err(err)?;
    check!(comp.order() == 2, "component of a has {} elements", comp.order());
    let (cc, _, _) = pi0(&comp).map_err(err)?;
    check!(cc.class_count() == 2, "component of a has {} components", cc.class_count());
    Ok("involutive quandle, 2 components, component of a = 2 trivial points".into())
}

fn qabs_paths() -> Outcome {
    let ab = abelianization(&pth_presentation(&corpus::qabs())).map_err(err)?;
    check!(ab.rank_free == 2 && ab.torsion.is_empty(), "abelianization {ab}");
    Ok(format!("ab Pth = {ab}"))
}

fn qabs_unit() -> Outcome {
    let f = corpus::eta_qabs();
    let cov = is_covering(&f, CAP).map_err(err)?;
    check!(cov.verdict, "not a covering");
    let ker = kernel_image_subgroup(&f, CAP).map_err(err)?.order(CAP).map_err(err)?;
    check!(ker == 1, "kernel image has order {ker}");
    check!(is_normal_ext(&f).map_err(err)?.verdict, "not normal");
    check!(!is_trivial_ext(&f).map_err(err)?.0, "trivial");
    let (inn_d, inn_c) = (inn_order(&table(f.dom())), inn_order(&table(f.cod())));
    check!(inn_d == 2 && inn_c == 1, "Inn orders {inn_d}, {inn_c}");
    Ok("covering, normal, not trivial; |Inn| 2 over 1".into())
}

fn rack6_centralization() -> Outcome {
    let f = corpus::rack6_to_t2();
    let r = f.dom();
    let idx = |s: &str| r.index_of(s).unwrap();
    let cov = is_covering(&f, CAP).map_err(err)?;
    check!(!cov.verdict, "reported a covering");
    let w = cov.witness.ok_or("no witness")?;
    let pair: BTreeSet<usize> = [w.a, w.b].into();
    check!(
        pair == BTreeSet::from([idx("1"), idx("2")]) && r.op(w.x, w.a) != r.op(w.x, w.b),
        "witness {w:?}"
    );
    let expected: BTreeSet<BTreeSet<String>> = [vec!["a", "a2"], vec!["b", "b2"], vec!["1"], vec!["2"]]
        .into_iter()
        .map(|c| c.into_iter().map(String::from).collect())
        .collect();
    let c = centralize(&f, CAP).map_err(err)?;
    check!(named_classes(r, &c.congruence) == expected, "C₁ = {:?}", c.congruence.classes());
    let fm: Vec<usize> = f.map().to_vec();
    check!(same_partition(&c.congruence, &least_centralizing(&table(r), &fm)), "brute force disagrees");
    check!(is_covering(&c.central, CAP).map_err(err)?.verdict, "F₁(f) is not a covering");
    let q = frq(r, CAP).map_err(err)?;
    check!(named_classes(r, &q.congruence) == expected, "Frq classes {:?}", q.congruence.classes());
    Ok(format!(
        "witness {}◁{} ≠ {}◁{}; classes {{a,a2}} {{b,b2}} {{1}} {{2}}",
        r.label(w.x),
        r.label(w.a),
        r.label(w.x),
        r.label(w.b)
    ))
}

fn conj_s3() -> Outcome {
    let (labels, _, cayley) = parse_group(corpus::S3_JSON).map_err(err)?;
    let r = FiniteRack::conj_of_group(&cayley, labels).map_err(err)?;
    let (co, _, _) = pi0(&r).map_err(err)?;
    check!(co.class_count() == 3, "{} components", co.class_count());
    check!(components(&table(&r)).len() == 3, "brute force disagrees");
    let ab = abelianization(&pth_presentation(&r)).map_err(err)?;
    check!(ab.rank_free == 3 && ab.torsion.is_empty(), "abelianization {ab}");
    let abs3 = abelianized_order(&cayley);
    check!(abs3 == 2, "|ab S3| = {abs3}");
    Ok(format!("3 components, ab Pth = {ab}, |ab S3| = {abs3}"))
}

fn components_vs_paths() -> Outcome {
    for i in 0..200 {
        let r = random_rack(&mut sample_rng(DEFAULT_SEED, i), 6);
        let ab = abelianization(&pth_presentation(&r)).map_err(err)?;
        let k = components(&table(&r)).len();
        check!(ab.rank_free == k && ab.torsion.is_empty(), "rack {i}: {ab} vs {k} components");
    }
    Ok("200/200 racks".into())
}

fn covering_battery() -> Outcome {
    let cfg = RunConfig::default();
    let lib = battery(
        &cfg,
        &[
            "covering-methods-agree",
            "centralize-three-routes",
            "centralize-minimal",
            "pullback-stability",
            "trivial-normal-covering",
            "horns-retract",
            "centralizer-permutes",
            "quandle-congruence-permutes",
        ],
    )?;
    let mut checked = 0;
    for i in 0..200 {
        let f = random_surjection(&mut sample_rng(DEFAULT_SEED ^ 0xACCE, i), 5);
        let c1 = centralize(&f, CAP).map_err(err)?.congruence;
        let oracle = least_centralizing(&table(f.dom()), f.map());
        check!(same_partition(&c1, &oracle), "surjection {i}: C₁ {:?} vs {oracle:?}", c1.classes());
        checked += 1;
    }
    Ok(format!("{lib}; brute-force C₁ {checked}/200"))
}

fn free_battery() -> Outcome {
    let cfg = RunConfig::default();
    battery(
        &cfg,
        &["free-rack-axioms", "free-quandle-axioms", "free-action", "kernel-pairing-round-trip"],
    )
}

fn endpoint_covers() -> Outcome {
    let mut racks: Vec<(String, FiniteRack)> =
        corpus::racks().into_iter().map(|(n, r)| (n.to_string(), r)).collect();
    for i in 0..50 {
        racks.push((format!("random {i}"), random_rack(&mut sample_rng(DEFAULT_SEED ^ 0xE9D, i), 5)));
    }
    for (name, r) in &racks {
        let e = endpoint_cover(r, CAP).map_err(err)?;
        check!(is_covering(&e.endpoint, CAP).map_err(err)?.verdict, "{name}: not a covering");
        let want = r.order() * inn_order(&table(r));
        check!(e.cover.order() == want, "{name}: order {} ≠ {want}", e.cover.order());
    }
    Ok(format!("{} racks", racks.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("qabs golden facts", qabs_golden),
        ("qabs path group abelianization", qabs_paths),
        ("qabs unit is a non-trivial covering", qabs_unit),
        ("six-element rack centralization", rack6_centralization),
        ("Conj(S3) components vs ab", conj_s3),
        ("components = rank ab Pth on random racks", components_vs_paths),
        ("covering battery", covering_battery),
        ("free-structure battery", free_battery),
        ("endpoint covers", endpoint_covers),
    ];
    let start = Instant::now();
    let mut results = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let status = if out.is_ok() { "PASS" } else { "FAIL" };
        let detail = out.as_ref().map_or_else(|e| e.clone(), |s| s.clone());
        println!("{status} {:>2}. {name}: {detail} ({:.2?})", i + 1, t.elapsed());
        results.push(out.is_ok());
    }
    let shadows = results[5..9].iter().all(|&ok| ok);
    println!(
        "{} 10. categorical statements via finite batteries 6-9",
        if shadows { "PASS" } else { "FAIL" }
    );
    results.push(shadows);
    let failed = results.iter().filter(|&&ok| !ok).count();
    println!("{} criteria, {failed} failed, {:.2?}", results.len(), start.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
