//! Covering theory of finite racks: connected components, trivial, normal
//! and covering extensions, horns, centralization, the quandle reflection,
//! the endpoint cover and the fundamental-groupoid skeleton.

mod centralize;
mod covering;
mod universal;

pub use centralize::{centralize, frq, frq_congruence, Centralization, CentralizeMethods, Frq};
pub use covering::{
    horn_analyze, is_covering, is_normal_ext, membrane_endpoints, CoveringMethods, CoveringReport,
    CoveringWitness, Horn, HornAnalysis, HornStep, Membrane, NormalReport,
};
pub use universal::{endpoint_cover, fundamental_skeleton, EndpointCover, LoopImage, SkeletonReport};

use std::collections::VecDeque;

use serde::Serialize;

use crate::congruence::{orbit_congruence, quotient, Congruence};
use crate::error::Result;
use crate::hom::RackHom;
use crate::rack::FiniteRack;

/// Connected components: the congruence `Co`, the trivial quotient rack and
/// the unit `η_X`.
pub fn pi0(rack: &FiniteRack) -> Result<(Congruence, FiniteRack, RackHom)> {
    let co = orbit_congruence(rack, &rack.inn_generators())?;
    let (q, eta) = quotient(rack, &co)?;
    Ok((co, q, eta))
}

/// Subrack on the connected component of `a`.
pub fn connected_component(rack: &FiniteRack, a: usize) -> Result<FiniteRack> {
    let (co, _, _) = pi0(rack)?;
    let members: Vec<usize> = (0..rack.order()).filter(|&x| co.related(x, a)).collect();
    Ok(rack.subrack(&members)?.0)
}

/// A primitive trail `x ◁^δ₁ y₁ ⋯` from `x` to `y`, found by breadth-first
/// search, as `(acting element, sign)` steps.
pub fn connecting_trail(rack: &FiniteRack, from: usize, to: usize) -> Option<Vec<(usize, i8)>> {
    let n = rack.order();
    let mut prev: Vec<Option<(usize, usize, i8)>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        if x == to {
            break;
        }
        for y in 0..n {
            for sign in [1i8, -1] {
                let z = rack.op_signed(x, y, sign);
                if !seen[z] {
                    seen[z] = true;
                    prev[z] = Some((x, y, sign));
                    queue.push_back(z);
                }
            }
        }
    }
    if !seen[to] {
        return None;
    }
    let mut steps = Vec::new();
    let mut cur = to;
    while let Some((p, y, s)) = prev[cur] {
        steps.push((y, s));
        cur = p;
    }
    steps.reverse();
    Some(steps)
}

/// Two distinct connected elements with the same image, and a trail
/// joining them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrivialityWitness {
    pub a: usize,
    pub b: usize,
    pub trail: Vec<(usize, i8)>,
}

/// Decides whether `f` is injective on connected components
/// (`Eq(f) ∩ Co = Δ`).
pub fn is_trivial_ext(f: &RackHom) -> Result<(bool, Option<TrivialityWitness>)> {
    f.require_surjective()?;
    let dom = f.dom();
    let (co, _, _) = pi0(dom)?;
    for a in 0..dom.order() {
        for b in a + 1..dom.order() {
            if co.related(a, b) && f.apply(a) == f.apply(b) {
                let trail = connecting_trail(dom, a, b).expect("connected elements have a trail");
                return Ok((false, Some(TrivialityWitness { a, b, trail })));
            }
        }
    }
    Ok((true, None))
}
