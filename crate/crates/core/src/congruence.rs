//! Congruences on finite racks, quotients, orbit congruences and
//! permutability of relations.

use std::fmt;

use crate::error::{Error, Result};
use crate::hom::RackHom;
use crate::perm::PermGroup;
use crate::rack::FiniteRack;

/// An equivalence relation compatible with `◁` and `◁⁻¹`.
///
/// Stored as a fully compressed union-find: `parent[x]` is the least member
/// of the class of `x`, so two congruences are equal iff their parent
/// arrays are.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Congruence {
    parent: Vec<usize>,
    class_count: usize,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    /// Keeps the smaller index as root. Returns true when a merge happened.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.0[hi] = lo;
        true
    }

    fn into_congruence(mut self) -> Congruence {
        let n = self.0.len();
        let parent: Vec<usize> = (0..n).map(|x| self.find(x)).collect();
        let class_count = parent.iter().enumerate().filter(|&(i, &p)| i == p).count();
        Congruence { parent, class_count }
    }
}

impl Congruence {
    pub fn discrete(n: usize) -> Self {
        Congruence {
            parent: (0..n).collect(),
            class_count: n,
        }
    }

    /// Equivalence relation from class labels, without a compatibility check.
    fn from_labels_raw(labels: &[usize]) -> Self {
        let mut uf = UnionFind::new(labels.len());
        let mut first = std::collections::HashMap::new();
        for (x, &l) in labels.iter().enumerate() {
            if let Some(&y) = first.get(&l) {
                uf.union(x, y);
            } else {
                first.insert(l, x);
            }
        }
        uf.into_congruence()
    }

    /// Equivalence relation whose classes are given by `labels[x]`; checked
    /// for compatibility with both rack operations.
    pub fn from_partition(rack: &FiniteRack, labels: &[usize]) -> Result<Self> {
        if labels.len() != rack.order() {
            return Err(Error::Shape("partition length does not match rack order".into()));
        }
        let c = Self::from_labels_raw(labels);
        if let Some((a, b, c2)) = c.compatibility_witness(rack) {
            return Err(Error::IncompatiblePartition(format!(
                "{} ≡ {} but acting with or on {} separates them",
                rack.label(a),
                rack.label(b),
                rack.label(c2)
            )));
        }
        Ok(c)
    }

    /// Kernel pair `Eq(f)` as a congruence on the domain.
    pub fn kernel(f: &RackHom) -> Self {
        Self::from_labels_raw(f.map())
    }

    /// Equivalence relation generated by `pairs`, without closing under the
    /// rack operations.
    pub fn equivalence_from_pairs(n: usize, pairs: &[(usize, usize)]) -> Self {
        let mut uf = UnionFind::new(n);
        for &(a, b) in pairs {
            uf.union(a, b);
        }
        uf.into_congruence()
    }

    pub fn order(&self) -> usize {
        self.parent.len()
    }

    pub fn class_count(&self) -> usize {
        self.class_count
    }

    /// Least member of the class of `x`.
    #[inline]
    pub fn root(&self, x: usize) -> usize {
        self.parent[x]
    }

    pub fn parent(&self) -> &[usize] {
        &self.parent
    }

    #[inline]
    pub fn related(&self, a: usize, b: usize) -> bool {
        self.parent[a] == self.parent[b]
    }

    pub fn is_discrete(&self) -> bool {
        self.class_count == self.parent.len()
    }

    /// Index of the class of `x` in the order of least members.
    pub fn class_index(&self) -> Vec<usize> {
        let mut idx = vec![usize::MAX; self.order()];
        let mut next = 0;
        for x in 0..self.order() {
            let r = self.parent[x];
            if idx[r] == usize::MAX {
                idx[r] = next;
                next += 1;
            }
            idx[x] = idx[r];
        }
        idx
    }

    /// Classes as sorted member lists, ordered by least member.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let idx = self.class_index();
        let mut out = vec![Vec::new(); self.class_count];
        for (x, &i) in idx.iter().enumerate() {
            out[i].push(x);
        }
        out
    }

    /// `self ⊆ other` as sets of pairs.
    pub fn is_finer_than(&self, other: &Congruence) -> bool {
        (0..self.order()).all(|x| other.related(x, self.parent[x]))
    }

    /// Least equivalence containing both.
    pub fn join(&self, other: &Congruence) -> Congruence {
        let mut uf = UnionFind::new(self.order());
        for x in 0..self.order() {
            uf.union(x, self.parent[x]);
            uf.union(x, other.parent[x]);
        }
        uf.into_congruence()
    }

    /// `(a, b, c)` with `a ≡ b` but some product with `c` not related.
    fn compatibility_witness(&self, rack: &FiniteRack) -> Option<(usize, usize, usize)> {
        let n = rack.order();
        for a in 0..n {
            let b = self.parent[a];
            if a == b {
                continue;
            }
            for c in 0..n {
                if !self.related(rack.op(a, c), rack.op(b, c))
                    || !self.related(rack.op_inv(a, c), rack.op_inv(b, c))
                    || !self.related(rack.op(c, a), rack.op(c, b))
                    || !self.related(rack.op_inv(c, a), rack.op_inv(c, b))
                {
                    return Some((a, b, c));
                }
            }
        }
        None
    }

    pub fn is_compatible(&self, rack: &FiniteRack) -> bool {
        self.compatibility_witness(rack).is_none()
    }

    /// Formats classes with rack labels, e.g. `{a,b} {s}`.
    pub fn display_with(&self, rack: &FiniteRack) -> String {
        self.classes()
            .iter()
            .map(|c| {
                let names: Vec<&str> = c.iter().map(|&x| rack.label(x)).collect();
                format!("{{{}}}", names.join(","))
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Debug for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.classes())
    }
}

/// Smallest congruence containing `pairs`: union-find closed under
/// `(a,b),(c,d) ⇒ (a◁c, b◁d)` and the same for `◁⁻¹`, iterated to a fixpoint.
pub fn congruence_from_pairs(rack: &FiniteRack, pairs: &[(usize, usize)]) -> Congruence {
    let n = rack.order();
    let mut uf = UnionFind::new(n);
    for &(a, b) in pairs {
        uf.union(a, b);
    }
    loop {
        let mut changed = false;
        for a in 0..n {
            let b = uf.find(a);
            if a == b {
                continue;
            }
            for c in 0..n {
                changed |= uf.union(rack.op(a, c), rack.op(b, c));
                changed |= uf.union(rack.op_inv(a, c), rack.op_inv(b, c));
                changed |= uf.union(rack.op(c, a), rack.op(c, b));
                changed |= uf.union(rack.op_inv(c, a), rack.op_inv(c, b));
            }
        }
        if !changed {
            break;
        }
    }
    uf.into_congruence()
}

/// Quotient rack on the classes of `c` (ordered by least member) and the
/// canonical surjection. Singleton classes keep their label; larger classes
/// are labelled `{x,y,..}`.
pub fn quotient(rack: &FiniteRack, c: &Congruence) -> Result<(FiniteRack, RackHom)> {
    if c.order() != rack.order() {
        return Err(Error::Shape("congruence and rack have different orders".into()));
    }
    if let Some((a, b, w)) = c.compatibility_witness(rack) {
        return Err(Error::IncompatiblePartition(format!(
            "{} ≡ {} separated by {}",
            rack.label(a),
            rack.label(b),
            rack.label(w)
        )));
    }
    let classes = c.classes();
    let idx = c.class_index();
    let table: Vec<Vec<usize>> = classes
        .iter()
        .map(|cx| classes.iter().map(|cy| idx[rack.op(cx[0], cy[0])]).collect())
        .collect();
    let labels = classes
        .iter()
        .map(|cl| {
            if cl.len() == 1 {
                rack.label(cl[0]).to_string()
            } else {
                let names: Vec<&str> = cl.iter().map(|&x| rack.label(x)).collect();
                format!("{{{}}}", names.join(","))
            }
        })
        .collect();
    let q = FiniteRack::validate(&table, labels)?;
    let hom = RackHom::new(rack.clone(), q.clone(), idx)?;
    Ok((q, hom))
}

/// Partition of the rack into orbits of a permutation group.
pub fn orbit_congruence(rack: &FiniteRack, group: &PermGroup) -> Result<Congruence> {
    if group.degree() != rack.order() {
        return Err(Error::DegreeMismatch {
            expected: rack.order(),
            found: group.degree(),
        });
    }
    let mut labels = vec![0; rack.order()];
    for (i, orbit) in group.orbits().iter().enumerate() {
        for &x in orbit {
            labels[x] = i;
        }
    }
    Ok(Congruence::from_labels_raw(&labels))
}

/// A binary relation on `0..n` as a dense boolean matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Relation {
    n: usize,
    bits: Vec<bool>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Relation {
            n,
            bits: vec![false; n * n],
        }
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Self {
        let mut r = Self::empty(n);
        for &(a, b) in pairs {
            r.insert(a, b);
        }
        r
    }

    pub fn reflexive_from_pairs(n: usize, pairs: &[(usize, usize)]) -> Self {
        let mut r = Self::from_pairs(n, pairs);
        for x in 0..n {
            r.insert(x, x);
        }
        r
    }

    pub fn from_congruence(c: &Congruence) -> Self {
        let n = c.order();
        let mut r = Self::empty(n);
        for a in 0..n {
            for b in 0..n {
                if c.related(a, b) {
                    r.insert(a, b);
                }
            }
        }
        r
    }

    /// Internal reflexive relation generated by `pairs`: the subrack of
    /// `X × X` generated by the diagonal and the pairs.
    pub fn internal_from_pairs(rack: &FiniteRack, pairs: &[(usize, usize)]) -> Self {
        let n = rack.order();
        let mut r = Self::reflexive_from_pairs(n, pairs);
        let mut members: Vec<(usize, usize)> = r.pairs();
        let mut i = 0;
        while i < members.len() {
            let (a, b) = members[i];
            for j in 0..members.len() {
                let (c, d) = members[j];
                for (p, q) in [
                    (rack.op(a, c), rack.op(b, d)),
                    (rack.op_inv(a, c), rack.op_inv(b, d)),
                    (rack.op(c, a), rack.op(d, b)),
                    (rack.op_inv(c, a), rack.op_inv(d, b)),
                ] {
                    if !r.contains(p, q) {
                        r.insert(p, q);
                        members.push((p, q));
                    }
                }
            }
            i += 1;
        }
        r
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.bits[a * self.n + b]
    }

    pub fn insert(&mut self, a: usize, b: usize) {
        self.bits[a * self.n + b] = true;
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                if self.contains(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// `self ; other`: `x (self;other) z` iff `x self y` and `y other z`
    /// for some `y`.
    pub fn compose(&self, other: &Relation) -> Relation {
        let n = self.n;
        let mut out = Relation::empty(n);
        for x in 0..n {
            for y in 0..n {
                if !self.contains(x, y) {
                    continue;
                }
                for z in 0..n {
                    if other.contains(y, z) {
                        out.insert(x, z);
                    }
                }
            }
        }
        out
    }

    /// True when the relation is compatible with both rack operations.
    pub fn is_internal(&self, rack: &FiniteRack) -> bool {
        let ps = self.pairs();
        ps.iter().all(|&(a, b)| {
            ps.iter().all(|&(c, d)| {
                self.contains(rack.op(a, c), rack.op(b, d))
                    && self.contains(rack.op_inv(a, c), rack.op_inv(b, d))
            })
        })
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.pairs())
    }
}

/// Whether `R ∘ S = S ∘ R` as composites of relations.
pub fn relations_permute(r: &Congruence, s: &Relation) -> bool {
    let rr = Relation::from_congruence(r);
    rr.compose(s) == s.compose(&rr)
}

/// Canonical comparison of two quotients of the same rack: equal congruence
/// and equal induced tables in class order.
pub fn same_quotient(rack: &FiniteRack, a: &Congruence, b: &Congruence) -> Result<bool> {
    if a.class_count() != b.class_count() {
        return Ok(false);
    }
    let (qa, _) = quotient(rack, a)?;
    let (qb, _) = quotient(rack, b)?;
    Ok(a == b && qa.table() == qb.table())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn empty_pairs_give_discrete_congruence() {
        let r = corpus::r3();
        let c = congruence_from_pairs(&r, &[]);
        assert_eq!(c.class_count(), 3);
        assert!(c.is_discrete());
    }

    #[test]
    fn qabs_pair_ab_closes_to_two_classes() {
        let q = corpus::qabs();
        let c = congruence_from_pairs(&q, &[(0, 1)]);
        assert_eq!(c.classes(), vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn transitivity_on_trivial_rack() {
        let t = FiniteRack::trivial(3);
        let c = congruence_from_pairs(&t, &[(0, 1), (1, 2)]);
        assert_eq!(c.class_count(), 1);
    }

    #[test]
    fn dihedral_pair_collapses_everything() {
        let r = corpus::r3();
        // 0 ≡ 1 forces 0◁0 = 0 ≡ 0◁1 = 2.
        assert_eq!(congruence_from_pairs(&r, &[(0, 1)]).class_count(), 1);
    }

    #[test]
    fn quotients() {
        let q = corpus::qabs();
        let c = congruence_from_pairs(&q, &[(0, 1)]);
        let (t, h) = quotient(&q, &c).unwrap();
        assert!(t.classify().is_trivial);
        assert_eq!(t.order(), 2);
        assert_eq!(h.map(), &[0, 0, 1]);
        assert_eq!(t.labels(), &["{a,b}".to_string(), "s".to_string()]);

        let (d, h) = quotient(&q, &Congruence::discrete(3)).unwrap();
        assert_eq!(d, q);
        assert_eq!(h.map(), &[0, 1, 2]);
    }

    #[test]
    fn incompatible_partition_is_rejected() {
        let r = corpus::r3();
        assert!(matches!(
            Congruence::from_partition(&r, &[0, 0, 1]),
            Err(Error::IncompatiblePartition(_))
        ));
    }

    #[test]
    fn rack6_letters_and_numbers() {
        let r = corpus::rack6();
        let c = Congruence::from_partition(&r, &[0, 0, 0, 0, 1, 1]).unwrap();
        let (t, _) = quotient(&r, &c).unwrap();
        assert!(t.classify().is_trivial);
        assert_eq!(t.order(), 2);
    }

    #[test]
    fn orbit_congruences() {
        let q = corpus::qabs();
        let c = orbit_congruence(&q, &q.inn_generators()).unwrap();
        assert_eq!(c.classes(), vec![vec![0, 1], vec![2]]);
        let r = corpus::r3();
        assert_eq!(orbit_congruence(&r, &r.inn_generators()).unwrap().class_count(), 1);
        let d = orbit_congruence(&r, &PermGroup::trivial(3)).unwrap();
        assert!(d.is_discrete());
        assert!(matches!(
            orbit_congruence(&r, &PermGroup::trivial(4)),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn permutability_examples() {
        let t = FiniteRack::trivial(3);
        let r = Congruence::from_partition(&t, &[0, 0, 1]).unwrap();
        let s = Relation::from_congruence(&Congruence::from_partition(&t, &[0, 1, 1]).unwrap());
        assert!(!relations_permute(&r, &s));
        assert!(relations_permute(&r, &Relation::reflexive_from_pairs(3, &[])));
    }

    #[test]
    fn co_of_qabs_permutes_with_internal_relations() {
        let q = corpus::qabs();
        let co = orbit_congruence(&q, &q.inn_generators()).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                let s = Relation::internal_from_pairs(&q, &[(a, b)]);
                assert!(s.is_internal(&q));
                assert!(relations_permute(&co, &s), "({a},{b})");
            }
        }
    }

    #[test]
    fn arbitrary_relation_need_not_permute_with_co() {
        let q = corpus::qabs();
        let co = orbit_congruence(&q, &q.inn_generators()).unwrap();
        let s = Relation::reflexive_from_pairs(3, &[(0, 2)]);
        assert!(!s.is_internal(&q));
        assert!(!relations_permute(&co, &s));
    }
}
