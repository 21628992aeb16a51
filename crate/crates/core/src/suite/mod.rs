//! Seeded property batteries with per-property pass counts and shrinking.
//!
//! Each property draws its samples from `sample_rng(seed, index)`. A failing
//! rack is shrunk to a smaller closed subset that still fails; a failing
//! horn is shrunk by dropping steps.

mod oracle;
mod props;

use std::fmt;
use std::panic::{catch_unwind, AssertUnwindSafe};

use serde::Serialize;

use crate::error::Error;
use crate::hom::RackHom;
use crate::par::{map_indices, Exec};
use crate::perm::DEFAULT_CLOSURE_CAP;
use crate::rack::FiniteRack;
use crate::random::{random_rack, random_surjection, sample_rng, SampleRng, DEFAULT_SEED};

pub use oracle::{congruences_below, set_partitions};
pub use props::properties;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputMode {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub seed: u64,
    pub closure_cap: usize,
    pub horn_samples: usize,
    pub rewrite_depth: usize,
    pub output: OutputMode,
    /// Samples per rack or surjection battery.
    pub samples: usize,
    /// Triples per free-structure battery.
    pub free_samples: usize,
    /// Words per kernel-pairing battery.
    pub kernel_words: usize,
    pub max_order: usize,
    /// Replace every generated rack by a table with one column corrupted.
    pub mutate: bool,
    #[serde(skip)]
    pub exec: Exec,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: DEFAULT_SEED,
            closure_cap: DEFAULT_CLOSURE_CAP,
            horn_samples: 1000,
            rewrite_depth: 4,
            output: OutputMode::Text,
            samples: 200,
            free_samples: 10_000,
            kernel_words: 1000,
            max_order: 6,
            mutate: false,
            exec: Exec::default(),
        }
    }
}

/// What a property is checked against.
#[derive(Clone, Copy)]
pub enum Kind {
    Rack {
        max_order: Option<usize>,
        check: fn(&FiniteRack, &RunConfig, &mut SampleRng) -> Check,
    },
    Surjection {
        max_order: Option<usize>,
        check: fn(&RackHom, &RunConfig, &mut SampleRng) -> Check,
    },
    Free {
        check: fn(&RunConfig, &mut SampleRng) -> Check,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SampleCount {
    Samples,
    FreeSamples,
    KernelWords,
}

#[derive(Clone, Copy)]
pub struct Property {
    pub name: &'static str,
    pub module: &'static str,
    pub count: SampleCount,
    pub kind: Kind,
}

impl Property {
    pub fn samples(&self, cfg: &RunConfig) -> usize {
        match self.count {
            SampleCount::Samples => cfg.samples,
            SampleCount::FreeSamples => cfg.free_samples,
            SampleCount::KernelWords => cfg.kernel_words,
        }
    }
}

/// Result of one sample: `Err` carries a message and, where the property
/// has one, a rendered witness.
pub type Check = Result<(), Fail>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fail {
    pub message: String,
    pub witness: Option<String>,
}

impl Fail {
    pub fn new(message: impl Into<String>) -> Self {
        Fail {
            message: message.into(),
            witness: None,
        }
    }

    pub fn with_witness(mut self, w: impl Into<String>) -> Self {
        self.witness = Some(w.into());
        self
    }
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::new(e.to_string())
    }
}

/// Early return with a failure unless `cond` holds.
macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err($crate::suite::Fail::new(format!($($fmt)+)));
        }
    };
}
pub(crate) use ensure;

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub sample: usize,
    pub message: String,
    pub witness: Option<String>,
    /// Table of the shrunk counterexample, for rack and surjection batteries.
    pub shrunk: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyReport {
    pub name: &'static str,
    pub module: &'static str,
    pub passed: usize,
    pub total: usize,
    pub failure: Option<Failure>,
}

impl PropertyReport {
    pub fn ok(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub mutate: bool,
    pub properties: Vec<PropertyReport>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.properties.iter().all(PropertyReport::ok)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed {:#x}{}", self.seed, if self.mutate { " (mutated tables)" } else { "" })?;
        for p in &self.properties {
            let status = if p.ok() { "ok  " } else { "FAIL" };
            writeln!(f, "{status} {:<14} {:<34} {}/{}", p.module, p.name, p.passed, p.total)?;
            if let Some(fail) = &p.failure {
                writeln!(f, "     sample {}: {}", fail.sample, fail.message)?;
                if let Some(w) = &fail.witness {
                    writeln!(f, "     witness: {w}")?;
                }
                if let Some(s) = &fail.shrunk {
                    for line in s.lines() {
                        writeln!(f, "     {line}")?;
                    }
                }
            }
        }
        let failed = self.properties.iter().filter(|p| !p.ok()).count();
        write!(f, "{} properties, {} failed", self.properties.len(), failed)
    }
}

fn guarded<T>(f: impl FnOnce() -> Result<T, Fail>) -> Result<T, Fail> {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(r) => r,
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(Fail::new(format!("panicked: {msg}")))
        }
    }
}

fn sample_rack(cfg: &RunConfig, rng: &mut SampleRng, max_order: Option<usize>) -> FiniteRack {
    let r = random_rack(rng, max_order.unwrap_or(cfg.max_order));
    if cfg.mutate {
        r.mutated_for_self_test()
    } else {
        r
    }
}

/// Stream index of sample `i` of property `p`, so properties draw
/// independent samples.
fn stream(p: usize, i: usize) -> u64 {
    ((p as u64) << 32) | i as u64
}

pub fn run_property(index: usize, prop: &Property, cfg: &RunConfig) -> PropertyReport {
    let total = prop.samples(cfg);
    let outcomes: Vec<Check> = map_indices(cfg.exec, total, |i| {
        let mut rng = sample_rng(cfg.seed, stream(index, i));
        guarded(|| match prop.kind {
            Kind::Rack { max_order, check } => {
                let rack = sample_rack(cfg, &mut rng, max_order);
                check(&rack, cfg, &mut rng)
            }
            Kind::Surjection { max_order, check } => {
                let f = random_surjection(&mut rng, max_order.unwrap_or(cfg.max_order));
                check(&f, cfg, &mut rng)
            }
            Kind::Free { check } => check(cfg, &mut rng),
        })
    });
    let passed = outcomes.iter().filter(|o| o.is_ok()).count();
    let failure = outcomes.iter().position(|o| o.is_err()).map(|i| {
        let fail = outcomes[i].clone().unwrap_err();
        Failure {
            sample: i,
            message: fail.message,
            witness: fail.witness,
            shrunk: shrink_sample(index, prop, cfg, i),
        }
    });
    PropertyReport {
        name: prop.name,
        module: prop.module,
        passed,
        total,
        failure,
    }
}

/// Re-draws the failing sample and shrinks it to a minimal closed subset of
/// the (domain) rack on which the check still fails.
fn shrink_sample(index: usize, prop: &Property, cfg: &RunConfig, i: usize) -> Option<String> {
    let fresh = || sample_rng(cfg.seed, stream(index, i));
    match prop.kind {
        Kind::Rack { max_order, check } => {
            let mut rng = fresh();
            let rack = sample_rack(cfg, &mut rng, max_order);
            let after = rng.clone();
            let fails = |r: &FiniteRack| guarded(|| check(r, cfg, &mut after.clone())).is_err();
            let small = shrink_rack(&rack, &fails);
            Some(render_table("rack", &small))
        }
        Kind::Surjection { max_order, check } => {
            let mut rng = fresh();
            let f = random_surjection(&mut rng, max_order.unwrap_or(cfg.max_order));
            let after = rng.clone();
            let fails = |g: &RackHom| guarded(|| check(g, cfg, &mut after.clone())).is_err();
            let small = shrink_hom(&f, &fails);
            Some(format!(
                "{}\nmap {:?}",
                render_table("domain", small.dom()),
                small.map()
            ))
        }
        Kind::Free { .. } => None,
    }
}

fn render_table(title: &str, r: &FiniteRack) -> String {
    let mut s = format!("{title} of order {}:", r.order());
    for row in r.table() {
        s.push_str(&format!("\n  {row:?}"));
    }
    s
}

/// Greedily replaces `rack` by the closed subset generated by all but one
/// element while the property keeps failing.
pub fn shrink_rack(rack: &FiniteRack, fails: &dyn Fn(&FiniteRack) -> bool) -> FiniteRack {
    let mut cur = rack.clone();
    'outer: loop {
        let n = cur.order();
        for drop in 0..n {
            let rest: Vec<usize> = (0..n).filter(|&x| x != drop).collect();
            if rest.is_empty() {
                continue;
            }
            let members = cur.generated_subset(&rest);
            if members.len() == n {
                continue;
            }
            if let Ok((sub, _)) = cur.restrict_unchecked(&members) {
                if fails(&sub) {
                    cur = sub;
                    continue 'outer;
                }
            }
        }
        return cur;
    }
}

/// As [`shrink_rack`] for the domain of a surjection, restricting the
/// codomain to the image.
pub fn shrink_hom(f: &RackHom, fails: &dyn Fn(&RackHom) -> bool) -> RackHom {
    let mut cur = f.clone();
    'outer: loop {
        let dom = cur.dom();
        let n = dom.order();
        for drop in 0..n {
            let rest: Vec<usize> = (0..n).filter(|&x| x != drop).collect();
            if rest.is_empty() {
                continue;
            }
            let members = dom.generated_subset(&rest);
            if members.len() == n {
                continue;
            }
            if let Some(g) = restrict_hom(&cur, &members) {
                if fails(&g) {
                    cur = g;
                    continue 'outer;
                }
            }
        }
        return cur;
    }
}

fn restrict_hom(f: &RackHom, members: &[usize]) -> Option<RackHom> {
    let (sub, incl) = f.dom().subrack(members).ok()?;
    let mut image: Vec<usize> = incl.iter().map(|&x| f.apply(x)).collect();
    image.sort_unstable();
    image.dedup();
    let (cod, cincl) = f.cod().subrack(&image).ok()?;
    let map = incl
        .iter()
        .map(|&x| cincl.binary_search(&f.apply(x)).expect("image member"))
        .collect();
    RackHom::new(sub, cod, map).ok()
}

/// Runs every property in order.
pub fn run_suite(cfg: &RunConfig) -> SuiteReport {
    let properties = properties()
        .iter()
        .enumerate()
        .map(|(i, p)| run_property(i, p, cfg))
        .collect();
    SuiteReport {
        seed: cfg.seed,
        mutate: cfg.mutate,
        properties,
    }
}

/// Runs the properties of one module, keeping their global stream indices.
pub fn run_module(cfg: &RunConfig, module: &str) -> Vec<PropertyReport> {
    properties()
        .iter()
        .enumerate()
        .filter(|(_, p)| p.module == module)
        .map(|(i, p)| run_property(i, p, cfg))
        .collect()
}

/// Runs the named property.
pub fn run_named(cfg: &RunConfig, name: &str) -> Option<PropertyReport> {
    properties()
        .iter()
        .enumerate()
        .find(|(_, p)| p.name == name)
        .map(|(i, p)| run_property(i, p, cfg))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> RunConfig {
        RunConfig {
            samples: 20,
            free_samples: 200,
            kernel_words: 50,
            horn_samples: 50,
            ..RunConfig::default()
        }
    }

    #[test]
    fn at_least_twelve_properties_with_unique_names() {
        let ps = properties();
        assert!(ps.len() >= 12);
        let mut names: Vec<_> = ps.iter().map(|p| p.name).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), ps.len());
    }

    #[test]
    fn small_run_passes() {
        let r = run_suite(&small());
        assert!(r.all_passed(), "{r}");
    }

    #[test]
    fn mutation_is_caught_with_a_shrunk_witness() {
        let r = run_suite(&RunConfig {
            mutate: true,
            ..small()
        });
        assert!(!r.all_passed());
        let fail = r.properties.iter().find_map(|p| p.failure.as_ref()).unwrap();
        assert!(fail.shrunk.is_some());
    }

    #[test]
    fn sequential_and_parallel_reports_match() {
        let a = run_suite(&RunConfig {
            exec: Exec::Sequential,
            ..small()
        });
        let b = run_suite(&RunConfig {
            exec: Exec::Parallel,
            ..small()
        });
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn shrinking_reaches_a_small_subrack() {
        // fails whenever the rack has an element moved by some symmetry
        let fails = |r: &FiniteRack| !r.classify().is_trivial;
        let big = crate::corpus::conj_s3();
        let small = shrink_rack(&big, &fails);
        assert!(small.order() < big.order());
        assert!(fails(&small));
    }
}
