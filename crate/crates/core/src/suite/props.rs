use rand::seq::SliceRandom;
use rand::Rng;

use crate::congruence::{
    congruence_from_pairs, orbit_congruence, quotient, relations_permute, same_quotient, Congruence,
    Relation,
};
use crate::covers::{
    centralize, endpoint_cover, frq, frq_congruence, horn_analyze, is_covering, is_normal_ext,
    is_trivial_ext, pi0,
};
use crate::free::{fq_act, fq_normalize, fq_op, fr_op, FreeQuandleElem, FreeRackElem};
use crate::hom::{pullback, RackHom};
use crate::paths::{
    abelianization, act, excess, kernel_image_subgroup, pth_presentation, word_eq3, RewriteBudget,
    WordEquality,
};
use crate::perm::PermGroup;
use crate::rack::FiniteRack;
use crate::random::{
    equal_symmetry_congruence, random_congruence, random_horn, random_internal_relation, random_word,
    random_kernel_word, SampleRng,
};
use crate::words::{kernel_pairing, GroupWord, KernelPairing, Letter};

use super::oracle::congruences_below;
use super::{ensure, Check, Fail, Kind, Property, RunConfig, SampleCount};

fn rack(
    name: &'static str,
    module: &'static str,
    max_order: Option<usize>,
    check: fn(&FiniteRack, &RunConfig, &mut SampleRng) -> Check,
) -> Property {
    Property {
        name,
        module,
        count: SampleCount::Samples,
        kind: Kind::Rack { max_order, check },
    }
}

fn surj(
    name: &'static str,
    max_order: Option<usize>,
    check: fn(&RackHom, &RunConfig, &mut SampleRng) -> Check,
) -> Property {
    Property {
        name,
        module: "galois-covers",
        count: SampleCount::Samples,
        kind: Kind::Surjection { max_order, check },
    }
}

fn free(name: &'static str, count: SampleCount, check: fn(&RunConfig, &mut SampleRng) -> Check) -> Property {
    Property {
        name,
        module: "free-words",
        count,
        kind: Kind::Free { check },
    }
}

/// The property batteries, in run order.
pub fn properties() -> Vec<Property> {
    vec![
        rack("unfolding-identities", "rack-core", None, unfolding_identities),
        rack("weak-idempotency", "rack-core", None, weak_idempotency),
        rack("components-two-routes", "rack-core", None, components_two_routes),
        rack("discrete-quotient-iso", "rack-core", None, discrete_quotient),
        rack("orbit-relations-permute", "rack-core", None, orbit_relations_permute),
        free("free-rack-axioms", SampleCount::FreeSamples, free_rack_axioms),
        free("free-quandle-axioms", SampleCount::FreeSamples, free_quandle_axioms),
        free("free-action", SampleCount::FreeSamples, free_action),
        free("kernel-pairing-round-trip", SampleCount::KernelWords, kernel_pairing_round_trip),
        rack("excess-kills-relations", "path-groups", None, excess_kills_relations),
        rack("augmented-identities", "path-groups", None, augmented_identities),
        rack("abelianized-paths-count-components", "path-groups", None, fa_pi0_ab_pth),
        rack("word-eq-soundness", "path-groups", None, word_eq_soundness),
        surj("kernel-image-vs-symmetries", None, kernel_image_vs_symmetries),
        surj("covering-methods-agree", None, covering_methods_agree),
        surj("centralize-three-routes", None, centralize_three_routes),
        surj("centralize-minimal", Some(5), centralize_minimal),
        surj("pullback-stability", None, pullback_stability),
        surj("trivial-normal-covering", None, trivial_normal_covering),
        surj("horns-retract", None, horns_retract),
        surj("centralizer-permutes", None, centralizer_permutes),
        rack("quandle-congruence-permutes", "galois-covers", None, frq_permutes),
        rack("double-extension-quotient", "galois-covers", None, double_extension_quotient),
        rack("frq-unit", "galois-covers", None, frq_unit),
        surj("frq-centralize-commute", None, frq_centralize_commute),
        rack("endpoint-cover", "galois-covers", Some(5), endpoint_cover_prop),
    ]
}

fn triple_witness(r: &FiniteRack, x: usize, y: usize, z: usize) -> String {
    format!("(x, y, z) = ({}, {}, {})", r.label(x), r.label(y), r.label(z))
}

fn unfolding_identities(r: &FiniteRack, _: &RunConfig, _: &mut SampleRng) -> Check {
    let n = r.order();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (p, m) = (|a, b| r.op(a, b), |a, b| r.op_inv(a, b));
                let ok = p(x, p(y, z)) == p(p(m(x, z), y), z)
                    && p(x, m(y, z)) == m(p(p(x, z), y), z)
                    && m(x, m(y, z)) == m(m(p(x, z), y), z)
                    && m(x, p(y, z)) == p(m(m(x, z), y), z)
                    && p(p(x, y), z) == p(p(x, z), p(y, z));
                if !ok {
                    return Err(Fail::new("self-distributivity unfolding fails")
                        .with_witness(triple_witness(r, x, y, z)));
                }
            }
        }
    }
    Ok(())
}

fn weak_idempotency(r: &FiniteRack, _: &RunConfig, _: &mut SampleRng) -> Check {
    for x in 0..r.order() {
        for y in 0..r.order() {
            for k in -3..=3 {
                let yk = r.op_pow(y, y, k);
                ensure!(r.op(x, yk) == r.op(x, y), "x ◁ (y ◁^{k} y) ≠ x ◁ y at x={x}, y={y}");
            }
        }
    }
    Ok(())
}

fn components_two_routes(r: &FiniteRack, _: &RunConfig, _: &mut SampleRng) -> Check {
    let by_orbits = orbit_congruence(r, &r.inn_generators())?;
    let pairs: Vec<(usize, usize)> = (0..r.order())
        .flat_map(|x| (0..r.order()).map(move |y| (x, y)))
        .map(|(x, y)| (x, r.op(x, y)))
        .collect();
    let by_pairs = congruence_from_pairs(r, &pairs);
    ensure!(by_orbits == by_pairs, "orbits {by_orbits:?} vs generated {by_pairs:?}");
    Ok(())
}

fn discrete_quotient(r: &FiniteRack, _: &RunConfig, _: &mut SampleRng) -> Check {
    let (q, h) = quotient(r, &Congruence::discrete(r.order()))?;
    ensure!(q.table() == r.table(), "discrete quotient changes the table");
    ensure!(h.map().iter().enumerate().all(|(i, &j)| i == j), "discrete quotient map is not the identity");
    let (q2, _) = quotient(&q, &Congruence::discrete(q.order()))?;
    ensure!(q2.table() == q.table(), "re-quotienting is not idempotent");
    Ok(())
}

fn orbit_relations_permute(r: &FiniteRack, cfg: &RunConfig, rng: &mut SampleRng) -> Check {
    let mut inn = r.inn_group(cfg.closure_cap)?;
    let elems = inn.materialize(cfg.closure_cap)?.to_vec();
    let seeds: Vec<_> = elems.choose_multiple(rng, 2).cloned().collect();
    let normal = r.inn_generators().normal_closure(&seeds, cfg.closure_cap)?;
    let orbits = orbit_congruence(r, &normal)?;
    for _ in 0..3 {
        let s = random_internal_relation(rng, r);
        ensure!(relations_permute(&orbits, &s), "orbit congruence {orbits:?} and {s:?} do not permute");
    }
    Ok(())
}

const FREE_GENS: usize = 4;

fn free_rack_elem(rng: &mut SampleRng) -> FreeRackElem {
    FreeRackElem::new(rng.gen_range(0..FREE_GENS), random_word(rng, FREE_GENS, 6))
}

fn free_quandle_elem(rng: &mut SampleRng) -> FreeQuandleElem {
    fq_normalize(rng.gen_range(0..FREE_GENS), &random_word(rng, FREE_GENS, 6))
}

fn free_rack_axioms(_: &RunConfig, rng: &mut SampleRng) -> Check {
    let (x, y, z) = (free_rack_elem(rng), free_rack_elem(rng), free_rack_elem(rng));
    ensure!(fr_op(&fr_op(&x, &y, 1), &y, -1) == x, "R1 fails for {x:?}, {y:?}");
    ensure!(fr_op(&fr_op(&x, &y, -1), &y, 1) == x, "R1 fails for {x:?}, {y:?}");
    ensure!(
        fr_op(&fr_op(&x, &y, 1), &z, 1) == fr_op(&fr_op(&x, &z, 1), &fr_op(&y, &z, 1), 1),
        "R2 fails for {x:?}, {y:?}, {z:?}"
    );
    Ok(())
}

fn free_quandle_axioms(_: &RunConfig, rng: &mut SampleRng) -> Check {
    let (x, y, z) = (free_quandle_elem(rng), free_quandle_elem(rng), free_quandle_elem(rng));
    ensure!(fq_op(&x, &x, 1)? == x, "Q1 fails for {x:?}");
    ensure!(fq_op(&fq_op(&x, &y, 1)?, &y, -1)? == x, "R1 fails for {x:?}, {y:?}");
    ensure!(fq_op(&fq_op(&x, &y, -1)?, &y, 1)? == x, "R1 fails for {x:?}, {y:?}");
    let lhs = fq_op(&fq_op(&x, &y, 1)?, &z, 1)?;
    let rhs = fq_op(&fq_op(&x, &z, 1)?, &fq_op(&y, &z, 1)?, 1)?;
    ensure!(lhs == rhs, "R2 fails for {x:?}, {y:?}, {z:?}");
    ensure!(x.path().characteristic() == 0 && lhs.path().characteristic() == 0, "nonzero characteristic");
    Ok(())
}

fn free_action(_: &RunConfig, rng: &mut SampleRng) -> Check {
    let x = free_rack_elem(rng);
    let h = random_word(rng, FREE_GENS, 6);
    ensure!((x.act(&h) == x) == h.is_empty(), "acting by {h:?} on {x:?}");

    let q = free_quandle_elem(rng);
    let g = random_word(rng, FREE_GENS, 6);
    let h0 = g.mul(&GroupWord::generator(0).pow(-g.characteristic()));
    ensure!((fq_act(&q, &h0)? == q) == h0.is_empty(), "acting by {h0:?} on {q:?}");
    Ok(())
}

fn kernel_pairing_round_trip(_: &RunConfig, rng: &mut SampleRng) -> Check {
    let n = rng.gen_range(1..=5);
    let m = rng.gen_range(1..=n);
    let f: Vec<usize> = (0..n).map(|i| if i < m { i } else { rng.gen_range(0..m) }).collect();
    let u = random_kernel_word(rng, &f, 4);
    match kernel_pairing(&f, &u) {
        KernelPairing::NotInKernel => return Err(Fail::new(format!("kernel word {u:?} rejected"))),
        KernelPairing::Witness(w) => {
            let nu = GroupWord::from_letters(w.nu.iter().copied());
            let nu_p = GroupWord::from_letters(w.nu_prime.iter().copied());
            ensure!(nu.mul(&nu_p.inverse()) == u, "ν ν′⁻¹ ≠ u for {u:?}");
            ensure!(nu_p.is_empty(), "ν′ does not reduce to the empty word for {u:?}");
            let image = |ls: &[Letter]| -> Vec<Letter> {
                ls.iter().map(|l| Letter { gen: f[l.gen], sign: l.sign }).collect()
            };
            ensure!(image(&w.nu) == image(&w.nu_prime), "ν and ν′ differ letterwise under f");
        }
    }
    let v = random_word(rng, n, 6);
    let in_kernel = v.map_generators(&f).is_empty();
    ensure!(
        matches!(kernel_pairing(&f, &v), KernelPairing::Witness(_)) == in_kernel,
        "pairing disagrees with the image of {v:?}"
    );
    Ok(())
}

fn excess_kills_relations(r: &FiniteRack, _: &RunConfig, _: &mut SampleRng) -> Check {
    let p = pth_presentation(r);
    ensure!(p.relations().len() == r.order() * r.order(), "wrong relation count");
    for w in p.relations() {
        ensure!(w.characteristic() == 0, "relation {w:?} has nonzero characteristic");
        ensure!(excess(r, w).is_identity(), "relation {w:?} survives in Inn");
    }
    Ok(())
}

fn augmented_identities(r: &FiniteRack, _: &RunConfig, rng: &mut SampleRng) -> Check {
    let n = r.order();
    let (u, v) = (random_word(rng, n, 5), random_word(rng, n, 5));
    let (x, y) = (rng.gen_range(0..n), rng.gen_range(0..n));
    ensure!(act(r, x, &u.mul(&v)) == act(r, act(r, x, &u), &v), "x·(uv) ≠ (x·u)·v");
    ensure!(act(r, x, &GroupWord::empty()) == x, "x·e ≠ x");
    ensure!(
        act(r, r.op(x, y), &u) == r.op(act(r, x, &u), act(r, y, &u)),
        "(x◁y)·u ≠ (x·u)◁(y·u)"
    );
    let g = excess(r, &u);
    ensure!(r.symmetry(act(r, x, &u)) == r.symmetry(x).conjugate_by(&g), "S_(x·u) ≠ g⁻¹ S_x g");
    Ok(())
}

fn fa_pi0_ab_pth(r: &FiniteRack, _: &RunConfig, _: &mut SampleRng) -> Check {
    let ab = abelianization(&pth_presentation(r))?;
    let components = pi0(r)?.0.class_count();
    ensure!(
        ab.rank_free == components && ab.torsion.is_empty(),
        "abelianization {ab} for {components} components"
    );
    Ok(())
}

fn word_eq_soundness(r: &FiniteRack, cfg: &RunConfig, rng: &mut SampleRng) -> Check {
    let n = r.order();
    let budget = RewriteBudget {
        depth: cfg.rewrite_depth,
        ..RewriteBudget::default()
    };
    let p = pth_presentation(r);
    let u = random_word(rng, n, 4);
    let rel = p.relations().choose(rng).expect("n² ≥ 1 relations");
    let w = random_word(rng, n, 2);
    let conj = w.inverse().mul(rel).mul(&w);
    let pos = rng.gen_range(0..=u.len());
    let v = u.insert_at(pos, &conj);
    let verdict = word_eq3(r, &u, &v, budget)?;
    ensure!(!matches!(verdict, WordEquality::NotEqual(_)), "equal words {u:?}, {v:?} separated");
    let other = random_word(rng, n, 4);
    if let WordEquality::Equal { .. } = word_eq3(r, &u, &other, budget)? {
        ensure!(excess(r, &u) == excess(r, &other), "Equal verdict with different excess");
    }
    Ok(())
}

fn kernel_image_vs_symmetries(f: &RackHom, cfg: &RunConfig, _: &mut SampleRng) -> Check {
    let trivial = kernel_image_subgroup(f, cfg.closure_cap)?.order(cfg.closure_cap)? == 1;
    let syms = f.dom().symmetries();
    let same = f.kernel_pairs().iter().all(|&(a, b)| syms[a] == syms[b]);
    ensure!(trivial == same, "kernel image trivial: {trivial}, kernel pairs act alike: {same}");
    Ok(())
}

fn covering_methods_agree(f: &RackHom, cfg: &RunConfig, _: &mut SampleRng) -> Check {
    let r = is_covering(f, cfg.closure_cap)?;
    ensure!(r.methods.triple_scan == r.methods.kernel_image_trivial, "methods disagree");
    if let Some(w) = r.witness {
        let dom = f.dom();
        ensure!(
            f.apply(w.a) == f.apply(w.b) && dom.op_inv(dom.op(w.x, w.a), w.b) == w.endpoint && w.endpoint != w.x,
            "witness {w:?} does not check"
        );
    }
    Ok(())
}

fn centralize_three_routes(f: &RackHom, cfg: &RunConfig, _: &mut SampleRng) -> Check {
    let c = centralize(f, cfg.closure_cap)?;
    ensure!(c.methods.agree, "routes disagree: {:?}", c.methods);
    ensure!(c.congruence.is_finer_than(&Congruence::kernel(f)), "C₁ not below Eq(f)");
    ensure!(is_covering(&c.central, cfg.closure_cap)?.verdict, "F₁(f) is not a covering");
    ensure!(
        c.unit.then(&c.central)?.map() == f.map(),
        "F₁(f) ∘ unit ≠ f"
    );
    Ok(())
}

fn centralize_minimal(f: &RackHom, cfg: &RunConfig, _: &mut SampleRng) -> Check {
    let c1 = centralize(f, cfg.closure_cap)?.congruence;
    let candidates = congruences_below(f);
    ensure!(candidates.contains(&c1), "C₁ = {c1:?} is not among the centralizing congruences");
    for d in &candidates {
        ensure!(c1.is_finer_than(d), "{d:?} centralizes f but does not contain C₁ = {c1:?}");
    }
    Ok(())
}

/// Coverings over the codomain of `f` to pull back.
fn coverings_over(f: &RackHom, cfg: &RunConfig) -> crate::error::Result<Vec<RackHom>> {
    let b = f.cod();
    let mut out = vec![f.clone(), RackHom::identity(b), centralize(f, cfg.closure_cap)?.central];
    let inn = b.inn_group(cfg.closure_cap)?.order(cfg.closure_cap)?;
    if b.order() * inn <= 200 {
        out.push(endpoint_cover(b, cfg.closure_cap)?.endpoint);
    }
    Ok(out)
}

fn pullback_stability(f: &RackHom, cfg: &RunConfig, _: &mut SampleRng) -> Check {
    for c in coverings_over(f, cfg)? {
        let (_, along, _) = pullback(f, &c)?;
        let down = is_covering(&c, cfg.closure_cap)?.verdict;
        let up = is_covering(&along, cfg.closure_cap)?.verdict;
        ensure!(down == up, "c covering: {down}, its pullback along f: {up}");
    }
    Ok(())
}

fn trivial_normal_covering(f: &RackHom, cfg: &RunConfig, _: &mut SampleRng) -> Check {
    let t = is_trivial_ext(f)?.0;
    let n = is_normal_ext(f)?.verdict;
    let c = is_covering(f, cfg.closure_cap)?.verdict;
    ensure!(!t || n, "trivial but not normal");
    ensure!(!n || c, "normal but not covering");
    Ok(())
}

fn horns_retract(f: &RackHom, cfg: &RunConfig, rng: &mut SampleRng) -> Check {
    let report = is_covering(f, cfg.closure_cap)?;
    if let Some(w) = report.witness {
        let a = horn_analyze(f, &w.as_horn())?;
        ensure!(!a.closes, "covering witness {w:?} gives a closing horn");
        return Ok(());
    }
    for _ in 0..cfg.horn_samples {
        let mut h = random_horn(rng, f, 6);
        if !horn_analyze(f, &h)?.retracts {
            // drop steps while the horn still fails to retract
            let mut i = 0;
            while i < h.steps.len() {
                let mut shorter = h.clone();
                shorter.steps.remove(i);
                if !horn_analyze(f, &shorter)?.retracts {
                    h = shorter;
                } else {
                    i += 1;
                }
            }
            return Err(Fail::new("horn over a covering does not retract").with_witness(format!("{h:?}")));
        }
    }
    Ok(())
}

fn centralizer_permutes(f: &RackHom, cfg: &RunConfig, rng: &mut SampleRng) -> Check {
    let c1 = centralize(f, cfg.closure_cap)?.congruence;
    for _ in 0..3 {
        let d = random_congruence(rng, f.dom());
        ensure!(
            relations_permute(&c1, &Relation::from_congruence(&d)),
            "C₁ = {c1:?} and {d:?} do not permute"
        );
    }
    Ok(())
}

fn frq_permutes(r: &FiniteRack, _: &RunConfig, rng: &mut SampleRng) -> Check {
    let q = frq_congruence(r);
    ensure!(q.is_compatible(r), "Q_X is not a congruence");
    for _ in 0..3 {
        let s = random_internal_relation(rng, r);
        ensure!(relations_permute(&q, &s), "Q_X = {q:?} and {s:?} do not permute");
    }
    Ok(())
}

/// `X → X/R`, `X → X/S` with `X → X/S` a covering; when `R` and `S`
/// permute, `X/R → X/(R ∨ S)` is a covering.
fn double_extension_quotient(r: &FiniteRack, cfg: &RunConfig, rng: &mut SampleRng) -> Check {
    let s = equal_symmetry_congruence(rng, r);
    let (_, qs) = quotient(r, &s)?;
    ensure!(is_covering(&qs, cfg.closure_cap)?.verdict, "X → X/S is not a covering");
    let rr = random_congruence(rng, r);
    if !relations_permute(&rr, &Relation::from_congruence(&s)) {
        return Ok(());
    }
    let join = rr.join(&s);
    let (xr, qr) = quotient(r, &rr)?;
    let pairs: Vec<(usize, usize)> = (0..r.order())
        .map(|x| (qr.apply(x), qr.apply(join.root(x))))
        .collect();
    let induced = Congruence::equivalence_from_pairs(xr.order(), &pairs);
    let (_, g) = quotient(&xr, &induced)?;
    ensure!(g.cod().order() == join.class_count(), "induced quotient has the wrong size");
    ensure!(is_covering(&g, cfg.closure_cap)?.verdict, "X/R → X/(R ∨ S) is not a covering");
    Ok(())
}

fn frq_unit(r: &FiniteRack, cfg: &RunConfig, _: &mut SampleRng) -> Check {
    let q = frq(r, cfg.closure_cap)?;
    ensure!(q.quandle.classify().is_quandle, "Frq(X) is not a quandle");
    ensure!(is_covering(&q.unit, cfg.closure_cap)?.verdict, "unit is not a covering");
    ensure!(!r.classify().is_quandle || q.congruence.is_discrete(), "Frq of a quandle is not an isomorphism");
    Ok(())
}

/// `Frq(f) : Frq(A) → Frq(B)`.
fn frq_map(f: &RackHom, cfg: &RunConfig) -> crate::error::Result<(RackHom, RackHom)> {
    let a = frq(f.dom(), cfg.closure_cap)?;
    let b = frq(f.cod(), cfg.closure_cap)?;
    let mut map = vec![0; a.quandle.order()];
    for x in 0..f.dom().order() {
        map[a.unit.apply(x)] = b.unit.apply(f.apply(x));
    }
    Ok((a.unit, RackHom::new(a.quandle, b.quandle, map)?))
}

fn frq_centralize_commute(f: &RackHom, cfg: &RunConfig, _: &mut SampleRng) -> Check {
    let (unit_a, frq_f) = frq_map(f, cfg)?;
    let left = unit_a.then(&centralize(&frq_f, cfg.closure_cap)?.unit)?;
    let c = centralize(f, cfg.closure_cap)?;
    let right = c.unit.then(&frq(c.central.dom(), cfg.closure_cap)?.unit)?;
    let (kl, kr) = (Congruence::kernel(&left), Congruence::kernel(&right));
    ensure!(
        same_quotient(f.dom(), &kl, &kr)?,
        "F₁(Frq f) gives {kl:?}, Frq(F₁ f) gives {kr:?}"
    );
    Ok(())
}

fn endpoint_cover_prop(r: &FiniteRack, cfg: &RunConfig, _: &mut SampleRng) -> Check {
    let e = endpoint_cover(r, cfg.closure_cap)?;
    let inn = PermGroup::new(r.order(), r.symmetries())?.order(cfg.closure_cap)?;
    ensure!(e.cover.order() == r.order() * inn, "cover has order {}", e.cover.order());
    ensure!(is_covering(&e.endpoint, cfg.closure_cap)?.verdict, "endpoint map is not a covering");
    Ok(())
}
