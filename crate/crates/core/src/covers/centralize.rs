use std::collections::HashSet;

use serde::Serialize;

use crate::congruence::{congruence_from_pairs, orbit_congruence, quotient, Congruence};
use crate::error::{Error, Result};
use crate::hom::RackHom;
use crate::paths::kernel_image_subgroup;
use crate::rack::FiniteRack;

use super::is_covering;

/// Class counts found by each route to the centralizing congruence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralizeMethods {
    pub from_pairs: usize,
    pub horn_endpoints: usize,
    pub kernel_orbits: usize,
    pub agree: bool,
}

#[derive(Clone, Debug)]
pub struct Centralization {
    pub congruence: Congruence,
    /// `A → A / C₁(f)`.
    pub unit: RackHom,
    /// The induced covering `F₁(f) : A / C₁(f) → B`.
    pub central: RackHom,
    pub methods: CentralizeMethods,
}

/// Pairs `(x ◁ a ◁⁻¹ b, x)` over all `x` and `f(a) = f(b)`.
fn kernel_action_pairs(f: &RackHom) -> Vec<(usize, usize)> {
    let dom = f.dom();
    let kp = f.kernel_pairs();
    let mut out = Vec::new();
    for x in 0..dom.order() {
        for &(a, b) in &kp {
            let y = dom.op_inv(dom.op(x, a), b);
            if y != x {
                out.push((y, x));
            }
        }
    }
    out
}

/// Equivalence generated by the endpoint pairs of all `f`-horns, found by
/// exploring the pair graph from the diagonal.
fn horn_endpoint_equivalence(f: &RackHom) -> Congruence {
    let dom = f.dom();
    let n = dom.order();
    let kp = f.kernel_pairs();
    let mut seen: HashSet<(usize, usize)> = (0..n).map(|x| (x, x)).collect();
    let mut stack: Vec<(usize, usize)> = seen.iter().copied().collect();
    while let Some((u, v)) = stack.pop() {
        for &(a, b) in &kp {
            for sign in [1i8, -1] {
                let next = (dom.op_signed(u, a, sign), dom.op_signed(v, b, sign));
                if seen.insert(next) {
                    stack.push(next);
                }
            }
        }
    }
    let pairs: Vec<(usize, usize)> = seen.into_iter().filter(|(u, v)| u != v).collect();
    Congruence::equivalence_from_pairs(n, &pairs)
}

/// Induced map `A / C → B` for a congruence `C ≤ Eq(f)`.
fn induced(f: &RackHom, q: &FiniteRack, unit: &RackHom) -> Result<RackHom> {
    let mut map = vec![usize::MAX; q.order()];
    for x in 0..f.dom().order() {
        map[unit.apply(x)] = f.apply(x);
    }
    RackHom::new(q.clone(), f.cod().clone(), map)
}

/// The centralizing congruence `C₁(f)`, computed three ways, with the unit
/// and the induced covering.
pub fn centralize(f: &RackHom, cap: usize) -> Result<Centralization> {
    f.require_surjective()?;
    let dom = f.dom();
    let by_pairs = congruence_from_pairs(dom, &kernel_action_pairs(f));
    let by_horns = horn_endpoint_equivalence(f);
    let by_kernel = orbit_congruence(dom, &kernel_image_subgroup(f, cap)?)?;
    let agree = by_pairs == by_horns && by_pairs == by_kernel;
    let methods = CentralizeMethods {
        from_pairs: by_pairs.class_count(),
        horn_endpoints: by_horns.class_count(),
        kernel_orbits: by_kernel.class_count(),
        agree,
    };
    if !agree {
        return Err(Error::MethodDisagreement {
            op: "centralize",
            detail: format!("pairs {by_pairs:?}, horns {by_horns:?}, kernel orbits {by_kernel:?}"),
        });
    }
    if !by_pairs.is_finer_than(&Congruence::kernel(f)) {
        return Err(Error::MethodDisagreement {
            op: "centralize",
            detail: "centralizing congruence is not below the kernel pair".into(),
        });
    }
    let (q, unit) = quotient(dom, &by_pairs)?;
    let central = induced(f, &q, &unit)?;
    if !is_covering(&central, cap)?.verdict {
        return Err(Error::MethodDisagreement {
            op: "centralize",
            detail: "induced map is not a covering".into(),
        });
    }
    Ok(Centralization {
        congruence: by_pairs,
        unit,
        central,
        methods,
    })
}

/// `Q_X`: each `y` is identified with its orbit under its own symmetry.
pub fn frq_congruence(rack: &FiniteRack) -> Congruence {
    let n = rack.order();
    let mut pairs = Vec::new();
    for y in 0..n {
        let mut z = rack.op(y, y);
        while z != y {
            pairs.push((y, z));
            z = rack.op(z, y);
        }
    }
    Congruence::equivalence_from_pairs(n, &pairs)
}

#[derive(Clone, Debug)]
pub struct Frq {
    pub congruence: Congruence,
    pub quandle: FiniteRack,
    pub unit: RackHom,
}

/// The universal quandle quotient and its unit.
pub fn frq(rack: &FiniteRack, cap: usize) -> Result<Frq> {
    let congruence = frq_congruence(rack);
    let pairs: Vec<(usize, usize)> = (0..rack.order()).map(|y| (y, rack.op(y, y))).collect();
    if congruence != congruence_from_pairs(rack, &pairs) {
        return Err(Error::MethodDisagreement {
            op: "frq",
            detail: "symmetry orbits differ from the generated congruence".into(),
        });
    }
    let (quandle, unit) = quotient(rack, &congruence)?;
    if !quandle.classify().is_quandle || !is_covering(&unit, cap)?.verdict {
        return Err(Error::MethodDisagreement {
            op: "frq",
            detail: "unit is not a covering onto a quandle".into(),
        });
    }
    Ok(Frq {
        congruence,
        quandle,
        unit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::perm::DEFAULT_CLOSURE_CAP as CAP;

    #[test]
    fn r3_to_point_collapses() {
        let c = centralize(&corpus::r3_to_point(), CAP).unwrap();
        assert_eq!(c.congruence.class_count(), 1);
        assert_eq!(c.central.dom().order(), 1);
    }

    #[test]
    fn rack6_centralization() {
        let f = corpus::rack6_to_t2();
        let c = centralize(&f, CAP).unwrap();
        assert_eq!(c.congruence.classes(), vec![vec![0, 1], vec![2, 3], vec![4], vec![5]]);
        let q = c.central.dom();
        assert!(q.classify().is_quandle);
        assert_eq!(q.symmetry(2), q.symmetry(3));
        assert_eq!(q.order(), 4);
    }

    #[test]
    fn coverings_are_fixed() {
        let f = corpus::eta_qabs();
        let c = centralize(&f, CAP).unwrap();
        assert!(c.congruence.is_discrete());
        assert_eq!(c.central.map(), f.map());
    }

    #[test]
    fn frq_examples() {
        let q = corpus::qabs();
        assert!(frq(&q, CAP).unwrap().congruence.is_discrete());
        let r = frq(&corpus::rack6(), CAP).unwrap();
        assert_eq!(r.congruence.classes(), vec![vec![0, 1], vec![2, 3], vec![4], vec![5]]);
        assert_eq!(r.quandle.order(), 4);
        assert_eq!(frq(&FiniteRack::trivial(3), CAP).unwrap().quandle.order(), 3);
    }
}
