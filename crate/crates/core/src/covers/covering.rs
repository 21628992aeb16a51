use serde::Serialize;

use crate::error::{Error, Result};
use crate::hom::{pullback, RackHom};
use crate::paths::kernel_image_subgroup;
use crate::rack::FiniteRack;

use super::{is_trivial_ext, TrivialityWitness};

/// `(x, a, b)` with `f(a) = f(b)` and `(x ◁ a) ◁⁻¹ b ≠ x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CoveringWitness {
    pub x: usize,
    pub a: usize,
    pub b: usize,
    pub endpoint: usize,
}

impl CoveringWitness {
    /// The length-1 horn `(x, [(a, b, +1)])`. Its endpoints `x◁a` and `x◁b`
    /// differ exactly when `(x◁a)◁⁻¹b ≠ x`.
    pub fn as_horn(&self) -> Horn {
        Horn {
            base: self.x,
            steps: vec![HornStep {
                a: self.a,
                b: self.b,
                sign: 1,
            }],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoveringMethods {
    /// Direct scan over `(x, a, b)` with `f(a) = f(b)`.
    pub triple_scan: bool,
    /// Triviality of the excess image of the kernel of the induced map.
    pub kernel_image_trivial: bool,
    pub kernel_image_order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoveringReport {
    pub verdict: bool,
    pub witness: Option<CoveringWitness>,
    pub methods: CoveringMethods,
}

/// Decides whether `f` is a covering by two independent routes that must
/// agree; disagreement is reported as an internal error.
pub fn is_covering(f: &RackHom, cap: usize) -> Result<CoveringReport> {
    f.require_surjective()?;
    let dom = f.dom();
    let n = dom.order();
    let fibers = fibers(f);
    let mut witness = None;
    // Pairs are compared against the first member of each fibre: if every
    // member acts like it, every pair acts alike.
    'scan: for fiber in &fibers {
        let Some(&a) = fiber.first() else { continue };
        for &b in &fiber[1..] {
            for x in 0..n {
                let e = dom.op_inv(dom.op(x, a), b);
                if e != x {
                    witness = Some(CoveringWitness { x, a, b, endpoint: e });
                    break 'scan;
                }
            }
        }
    }
    let triple_scan = witness.is_none();
    let mut kernel = kernel_image_subgroup(f, cap)?;
    let kernel_image_order = kernel.order(cap)?;
    let kernel_image_trivial = kernel_image_order == 1;
    if triple_scan != kernel_image_trivial {
        return Err(Error::MethodDisagreement {
            op: "is_covering",
            detail: format!(
                "triple scan says {triple_scan}, kernel image has order {kernel_image_order}"
            ),
        });
    }
    Ok(CoveringReport {
        verdict: triple_scan,
        witness,
        methods: CoveringMethods {
            triple_scan,
            kernel_image_trivial,
            kernel_image_order,
        },
    })
}

fn fibers(f: &RackHom) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); f.cod().order()];
    for x in 0..f.dom().order() {
        out[f.apply(x)].push(x);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HornStep {
    pub a: usize,
    pub b: usize,
    pub sign: i8,
}

/// Two primitive paths over `f` from a common base point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Horn {
    pub base: usize,
    pub steps: Vec<HornStep>,
}

/// Two primitive paths over `f` from an `f`-related pair of base points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Membrane {
    pub base: (usize, usize),
    pub steps: Vec<HornStep>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HornAnalysis {
    pub endpoints: (usize, usize),
    pub closes: bool,
    pub retracts: bool,
}

fn check_steps(f: &RackHom, steps: &[HornStep]) -> Result<()> {
    for (i, s) in steps.iter().enumerate() {
        if s.a >= f.dom().order() || s.b >= f.dom().order() || f.apply(s.a) != f.apply(s.b) {
            return Err(Error::InvalidHorn { step: i });
        }
    }
    Ok(())
}

/// Endpoints of a membrane: `a₀ · g_a` and `b₀ · g_b`.
pub fn membrane_endpoints(f: &RackHom, m: &Membrane) -> Result<(usize, usize)> {
    check_steps(f, &m.steps)?;
    let dom = f.dom();
    if f.apply(m.base.0) != f.apply(m.base.1) {
        return Err(Error::InvalidHorn { step: 0 });
    }
    Ok(walk(dom, m.base, &m.steps, |_, _| {}))
}

fn walk(
    dom: &FiniteRack,
    (mut u, mut v): (usize, usize),
    steps: &[HornStep],
    mut visit: impl FnMut(usize, usize),
) -> (usize, usize) {
    for s in steps {
        u = dom.op_signed(u, s.a, s.sign);
        v = dom.op_signed(v, s.b, s.sign);
        visit(u, v);
    }
    (u, v)
}

pub fn horn_analyze(f: &RackHom, h: &Horn) -> Result<HornAnalysis> {
    check_steps(f, &h.steps)?;
    let mut retracts = true;
    let endpoints = walk(f.dom(), (h.base, h.base), &h.steps, |u, v| retracts &= u == v);
    Ok(HornAnalysis {
        endpoints,
        closes: endpoints.0 == endpoints.1,
        retracts,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalReport {
    pub verdict: bool,
    pub first_projection_trivial: bool,
    pub second_projection_trivial: bool,
    /// The failing projection (1 or 2) and a membrane in `Eq(f)` joining
    /// two distinct connected pairs it identifies.
    pub witness: Option<(u8, Membrane)>,
}

/// `f` is normal when both projections of its kernel pair are trivial
/// extensions.
pub fn is_normal_ext(f: &RackHom) -> Result<NormalReport> {
    f.require_surjective()?;
    let (_, p1, p2) = pullback(f, f)?;
    let (t1, w1) = is_trivial_ext(&p1)?;
    let (t2, w2) = is_trivial_ext(&p2)?;
    let witness = match (w1, w2) {
        (Some(w), _) => Some((1, to_membrane(&p1, &p2, &w))),
        (None, Some(w)) => Some((2, to_membrane(&p1, &p2, &w))),
        _ => None,
    };
    Ok(NormalReport {
        verdict: t1 && t2,
        first_projection_trivial: t1,
        second_projection_trivial: t2,
        witness,
    })
}

fn to_membrane(p1: &RackHom, p2: &RackHom, w: &TrivialityWitness) -> Membrane {
    Membrane {
        base: (p1.apply(w.a), p2.apply(w.a)),
        steps: w
            .trail
            .iter()
            .map(|&(y, sign)| HornStep {
                a: p1.apply(y),
                b: p2.apply(y),
                sign,
            })
            .collect(),
    }
}
