//! The path group of a finite rack, handled through its presentation: the
//! excess map to `Inn(X)`, the abelianization, kernel images of induced
//! maps, and a sound three-valued word equality.
//!
//! The path group itself is never materialized. Every answer factors
//! through the excess image in `Inn(X)`, through the abelianization, or
//! through a bounded relator-insertion search.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hom::RackHom;
use crate::perm::{Perm, PermGroup};
use crate::rack::FiniteRack;
use crate::smith::{smith_decompose, SmithDecomposition, SmithResult, DEFAULT_MAGNITUDE_GUARD};
use crate::words::{GroupWord, Letter};

/// Generators `x̄` (one per element) and one relator
/// `(x◁a)̄⁻¹ ā⁻¹ x̄ ā` per pair `(x, a)`, row-major.
#[derive(Clone, Debug)]
pub struct PathPresentation {
    rack: FiniteRack,
    relations: Vec<GroupWord>,
}

impl PathPresentation {
    pub fn rack(&self) -> &FiniteRack {
        &self.rack
    }

    pub fn generator_count(&self) -> usize {
        self.rack.order()
    }

    pub fn relations(&self) -> &[GroupWord] {
        &self.relations
    }

    /// Exponent-sum rows of the relators.
    pub fn relation_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.generator_count();
        self.relations.iter().map(|r| r.exponent_vector(n)).collect()
    }

    /// Plain-text export: a `generators:` line, then one relator per line.
    pub fn to_text(&self) -> String {
        let labels = self.rack.labels();
        let mut out = format!("generators: {}\nrelators:\n", labels.join(" "));
        for r in &self.relations {
            out.push_str(&r.display_with(labels));
            out.push('\n');
        }
        out
    }
}

pub fn pth_presentation(rack: &FiniteRack) -> PathPresentation {
    let n = rack.order();
    let mut relations = Vec::with_capacity(n * n);
    for x in 0..n {
        for a in 0..n {
            let c = rack.op(x, a);
            relations.push(GroupWord::from_letters([
                Letter::neg(c),
                Letter::neg(a),
                Letter::pos(x),
                Letter::pos(a),
            ]));
        }
    }
    PathPresentation {
        rack: rack.clone(),
        relations,
    }
}

/// Image of a path in `Inn(X)`: `S_{x₁}^{δ₁} ⋯ S_{x_k}^{δ_k}`, composed
/// left to right.
pub fn excess(rack: &FiniteRack, u: &GroupWord) -> Perm {
    let mut p = Perm::identity(rack.order());
    for l in u.letters() {
        let s = rack.symmetry(l.gen);
        p = if l.sign > 0 { p.then(&s) } else { p.then(&s.inverse()) };
    }
    p
}

/// `x · u`: the endpoint of the trail `(x, u)`.
pub fn act(rack: &FiniteRack, x: usize, u: &GroupWord) -> usize {
    u.letters()
        .iter()
        .fold(x, |acc, l| rack.op_signed(acc, l.gen, l.sign))
}

pub fn abelianization(p: &PathPresentation) -> Result<SmithResult> {
    Ok(abelian_decomposition(p)?.result)
}

fn abelian_decomposition(p: &PathPresentation) -> Result<SmithDecomposition> {
    smith_decompose(&p.relation_matrix(), p.generator_count(), DEFAULT_MAGNITUDE_GUARD)
}

/// The words `x̄₀ x̄ᵢ⁻¹` against the first element as base.
pub fn pth0_generators(rack: &FiniteRack) -> Result<Vec<GroupWord>> {
    if rack.order() == 0 {
        return Err(Error::EmptyRack);
    }
    Ok((1..rack.order())
        .map(|i| GroupWord::from_letters([Letter::pos(0), Letter::neg(i)]))
        .collect())
}

/// Excess image of the kernel of the induced map on path groups: the normal
/// closure in `Inn(dom f)` of `{S_a S_b⁻¹ : f(a) = f(b)}`, materialized.
pub fn kernel_image_subgroup(f: &RackHom, cap: usize) -> Result<PermGroup> {
    f.require_surjective()?;
    let dom = f.dom();
    let syms = dom.symmetries();
    let mut seeds = Vec::new();
    let mut seen = HashSet::new();
    for (a, b) in f.kernel_pairs() {
        let g = syms[a].then(&syms[b].inverse());
        if !g.is_identity() && seen.insert(g.clone()) {
            seeds.push(g);
        }
    }
    dom.inn_generators().normal_closure(&seeds, cap)
}

/// Search budget for [`word_eq3`].
#[derive(Clone, Copy, Debug)]
pub struct RewriteBudget {
    pub depth: usize,
    pub max_len: usize,
}

impl Default for RewriteBudget {
    fn default() -> Self {
        RewriteBudget {
            depth: 4,
            max_len: 32,
        }
    }
}

/// The invariant that separates two paths.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Separation {
    /// Different images in `Inn(X)`.
    Excess { left: Perm, right: Perm },
    /// Exponent-sum difference outside the relation lattice.
    Abelian { difference: Vec<i64> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum WordEquality {
    /// `proof_depth` relator insertions sufficed (0 = freely equal).
    Equal { proof_depth: usize },
    NotEqual(Separation),
    Unknown,
}

/// Sound partial decision of `u = v` in the path group. `NotEqual` carries
/// the separating invariant; `Equal` is only returned when `u v⁻¹` was
/// reduced to the empty word by inserting conjugates of relators.
pub fn word_eq3(
    rack: &FiniteRack,
    u: &GroupWord,
    v: &GroupWord,
    budget: RewriteBudget,
) -> Result<WordEquality> {
    let w = u.mul(&v.inverse());
    if w.is_empty() {
        return Ok(WordEquality::Equal { proof_depth: 0 });
    }
    let pres = pth_presentation(rack);
    let dec = abelian_decomposition(&pres)?;
    let difference = w.exponent_vector(rack.order());
    if !dec.row_lattice_contains(&difference)? {
        return Ok(WordEquality::NotEqual(Separation::Abelian { difference }));
    }
    let (eu, ev) = (excess(rack, u), excess(rack, v));
    if eu != ev {
        return Ok(WordEquality::NotEqual(Separation::Excess {
            left: eu,
            right: ev,
        }));
    }
    match rewrite_to_empty(&pres, &w, budget) {
        Some(depth) => Ok(WordEquality::Equal { proof_depth: depth }),
        None => Ok(WordEquality::Unknown),
    }
}

/// Cyclic conjugates of every nontrivial relator and its inverse.
fn relator_conjugates(pres: &PathPresentation) -> Vec<GroupWord> {
    let mut set = HashSet::new();
    let mut out = Vec::new();
    for r in pres.relations() {
        if r.is_empty() {
            continue;
        }
        for base in [r.clone(), r.inverse()] {
            for k in 0..base.len() {
                let c = base.rotate(k);
                if c.len() == base.len() && set.insert(c.clone()) {
                    out.push(c);
                }
            }
        }
    }
    out
}

/// Breadth-first search over words reachable by inserting a cyclic relator
/// conjugate somewhere, keeping only insertions that cancel against a
/// neighbour. Returns the number of insertions used.
fn rewrite_to_empty(pres: &PathPresentation, w: &GroupWord, budget: RewriteBudget) -> Option<usize> {
    let rels = relator_conjugates(pres);
    let mut seen: HashSet<GroupWord> = HashSet::new();
    seen.insert(w.clone());
    let mut frontier = vec![w.clone()];
    for depth in 1..=budget.depth {
        let mut next = Vec::new();
        for cur in &frontier {
            let ls = cur.letters();
            for pos in 0..=ls.len() {
                let left = pos.checked_sub(1).map(|i| ls[i]);
                let right = ls.get(pos).copied();
                for r in &rels {
                    let rl = r.letters();
                    let cancels_left = left.is_some_and(|l| l == rl[0].inverse());
                    let cancels_right = right.is_some_and(|l| l == rl[rl.len() - 1].inverse());
                    if !cancels_left && !cancels_right {
                        continue;
                    }
                    let cand = cur.insert_at(pos, r);
                    if cand.is_empty() {
                        return Some(depth);
                    }
                    if cand.len() <= budget.max_len && seen.insert(cand.clone()) {
                        next.push(cand);
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort_by_key(GroupWord::len);
        frontier = next;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn word(rack: &FiniteRack, s: &str) -> GroupWord {
        GroupWord::parse(s, rack.labels()).unwrap()
    }

    #[test]
    fn presentation_of_point_and_qabs() {
        let p = pth_presentation(&FiniteRack::trivial(1));
        assert_eq!(p.relations().len(), 1);
        assert!(p.relations()[0].is_empty());

        let q = corpus::qabs();
        let p = pth_presentation(&q);
        assert_eq!(p.relations().len(), 9);
        assert!(p.relations().contains(&word(&q, "b^-1 s^-1 a s")));
        assert!(p.relations().iter().all(|r| r.characteristic() == 0));
        assert!(p.to_text().starts_with("generators: a b s\nrelators:\n"));
    }

    #[test]
    fn trivial_rack_relations_are_commutators() {
        let t = FiniteRack::trivial(3);
        let p = pth_presentation(&t);
        assert!(p.relation_matrix().iter().flatten().all(|&v| v == 0));
        assert_eq!(abelianization(&p).unwrap().rank_free, 3);
    }

    #[test]
    fn excess_and_action_examples() {
        let q = corpus::qabs();
        assert!(excess(&q, &GroupWord::empty()).is_identity());
        assert_eq!(excess(&q, &word(&q, "s")).images(), &[1, 0, 2]);
        assert!(excess(&q, &word(&q, "b^-1 s^-1 a s")).is_identity());
        assert_eq!(act(&q, 0, &word(&q, "s")), 1);
        assert_eq!(act(&q, 0, &GroupWord::empty()), 0);
        // s s reduces to nothing only in Inn; as a word it is s s.
        assert_eq!(act(&q, 0, &word(&q, "s s")), 0);
    }

    #[test]
    fn abelianizations() {
        let q = corpus::qabs();
        let r = abelianization(&pth_presentation(&q)).unwrap();
        assert_eq!((r.rank_free, r.torsion.len()), (2, 0));
        let s3 = corpus::conj_s3();
        let r = abelianization(&pth_presentation(&s3)).unwrap();
        assert_eq!((r.rank_free, r.torsion.len()), (3, 0));
    }

    #[test]
    fn pth0_examples() {
        assert!(pth0_generators(&FiniteRack::trivial(1)).unwrap().is_empty());
        let q = corpus::qabs();
        assert_eq!(
            pth0_generators(&q).unwrap(),
            vec![word(&q, "a b^-1"), word(&q, "a s^-1")]
        );
        assert_eq!(pth0_generators(&FiniteRack::trivial(2)).unwrap().len(), 1);
    }

    #[test]
    fn kernel_images() {
        let q = corpus::qabs();
        let mut k = kernel_image_subgroup(&RackHom::identity(&q), 100).unwrap();
        assert_eq!(k.order(100).unwrap(), 1);
        let mut k = kernel_image_subgroup(&corpus::eta_qabs(), 100).unwrap();
        assert_eq!(k.order(100).unwrap(), 1);
        let mut k = kernel_image_subgroup(&corpus::r3_to_point(), 100).unwrap();
        assert_eq!(k.order(100).unwrap(), 3);
    }

    #[test]
    fn word_equality_examples() {
        let q = corpus::qabs();
        let b = RewriteBudget::default();
        let a = word(&q, "a");
        assert_eq!(word_eq3(&q, &a, &a, b).unwrap(), WordEquality::Equal { proof_depth: 0 });
        assert!(matches!(
            word_eq3(&q, &a, &word(&q, "s"), b).unwrap(),
            WordEquality::NotEqual(Separation::Abelian { .. })
        ));
        assert!(matches!(
            word_eq3(&q, &a, &word(&q, "b"), b).unwrap(),
            WordEquality::Equal { .. }
        ));
        let r3 = corpus::r3();
        assert!(matches!(
            word_eq3(&r3, &word(&r3, "0"), &word(&r3, "1"), b).unwrap(),
            WordEquality::NotEqual(Separation::Excess { .. })
        ));
    }
}
