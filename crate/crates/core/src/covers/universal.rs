use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hom::RackHom;
use crate::perm::Perm;
use crate::rack::FiniteRack;

use super::{is_covering, pi0};

/// `X ⋊ Inn(X)` with the endpoint map `(a, g) ↦ a · g`.
#[derive(Clone, Debug)]
pub struct EndpointCover {
    pub cover: FiniteRack,
    pub endpoint: RackHom,
    /// `inn[i]` is the group element in the second coordinate of
    /// `(a, i)`, stored at index `a · |Inn| + i`.
    pub inn: Vec<Perm>,
}

/// Builds the Inn-truncated endpoint cover and checks that the endpoint
/// map is a covering.
pub fn endpoint_cover(rack: &FiniteRack, cap: usize) -> Result<EndpointCover> {
    let mut inn = rack.inn_group(cap)?;
    let elems: Vec<Perm> = inn.materialize(cap)?.to_vec();
    let m = elems.len();
    let index: HashMap<&Perm, usize> = elems.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let syms = rack.symmetries();
    let n = rack.order();

    // (b, h) acts on the second coordinate by right multiplication with
    // h⁻¹ S_b h, independently of the first.
    let mut act = vec![vec![0usize; m]; n * m];
    for b in 0..n {
        for (hi, h) in elems.iter().enumerate() {
            let t = h.inverse().then(&syms[b]).then(h);
            for (gi, g) in elems.iter().enumerate() {
                act[b * m + hi][gi] = index[&g.then(&t)];
            }
        }
    }
    let size = n * m;
    let table: Vec<Vec<usize>> = (0..size)
        .map(|x| {
            let (a, gi) = (x / m, x % m);
            (0..size).map(|y| a * m + act[y][gi]).collect()
        })
        .collect();
    let labels: Vec<String> = (0..size)
        .map(|x| format!("({},{})", rack.label(x / m), elems[x % m].cycle_string(rack.labels())))
        .collect();
    let cover = FiniteRack::validate(&table, labels)?;
    let map = (0..size).map(|x| elems[x % m].apply(x / m)).collect();
    let endpoint = RackHom::new(cover.clone(), rack.clone(), map)?;
    if !is_covering(&endpoint, cap)?.verdict {
        return Err(Error::MethodDisagreement {
            op: "endpoint_cover",
            detail: "endpoint map is not a covering".into(),
        });
    }
    Ok(EndpointCover {
        cover,
        endpoint,
        inn: elems,
    })
}

/// Image in `Inn(X)` of the loop group at a chosen representative: its
/// stabilizer.
#[derive(Clone, Debug, Serialize)]
pub struct LoopImage {
    pub component: Vec<usize>,
    pub representative: usize,
    pub generators: Vec<Perm>,
    pub order: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SkeletonReport {
    pub components: Vec<Vec<usize>>,
    pub pointing: Vec<usize>,
    pub loops: Vec<LoopImage>,
    pub inn_order: usize,
    /// Always true: only the image of each loop group in `Inn(X)` is
    /// computed, not the loop group itself.
    pub inn_truncated: bool,
}

/// One vertex per connected component with the stabilizer of its
/// representative. Without a pointing, the least member is used.
pub fn fundamental_skeleton(
    rack: &FiniteRack,
    pointing: Option<&[usize]>,
    cap: usize,
) -> Result<SkeletonReport> {
    let (co, _, _) = pi0(rack)?;
    let components = co.classes();
    let pointing: Vec<usize> = match pointing {
        None => components.iter().map(|c| c[0]).collect(),
        Some(p) => order_pointing(rack, &co.class_index(), components.len(), p)?,
    };
    let inn = rack.inn_generators();
    let inn_order = rack.inn_group(cap)?.order(cap)?;
    let mut loops = Vec::with_capacity(components.len());
    for (component, &rep) in components.iter().zip(&pointing) {
        let mut stab = inn.stabilizer(rep);
        let order = stab.order(cap)?;
        loops.push(LoopImage {
            component: component.clone(),
            representative: rep,
            generators: stab.reduced_generators(),
            order,
        });
    }
    Ok(SkeletonReport {
        components,
        pointing,
        loops,
        inn_order,
        inn_truncated: true,
    })
}

/// Sorts a user pointing into component order, checking that it hits every
/// component exactly once.
fn order_pointing(rack: &FiniteRack, class: &[usize], count: usize, p: &[usize]) -> Result<Vec<usize>> {
    let mut out = vec![usize::MAX; count];
    for &x in p {
        if x >= rack.order() {
            return Err(Error::BadPointing(format!("element {x} out of range")));
        }
        let c = class[x];
        if out[c] != usize::MAX {
            return Err(Error::BadPointing(format!(
                "{} and {} lie in the same component",
                rack.label(out[c]),
                rack.label(x)
            )));
        }
        out[c] = x;
    }
    if let Some(c) = out.iter().position(|&x| x == usize::MAX) {
        return Err(Error::BadPointing(format!("component {c} has no representative")));
    }
    Ok(out)
}
