//! Permutations acting on the right and finite permutation groups given by
//! generators.
//!
//! A [`Perm`] is stored as its image table: `x · p = p[x]`. Products compose
//! left to right, so `x · (p * q) = (x · p) · q`, which matches the way a
//! primitive path acts on a rack element one symmetry at a time.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default bound on the number of group elements materialized by a closure.
pub const DEFAULT_CLOSURE_CAP: usize = 1_000_000;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree).collect())
    }

    /// Builds a permutation from its image table, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &y in &images {
            if y >= n || seen[y] {
                return Err(Error::Shape(format!("{images:?} is not a permutation")));
            }
            seen[y] = true;
        }
        Ok(Perm(images))
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        Perm(images)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Perm(inv)
    }

    /// `self * other`: apply `self` first, then `other`.
    pub fn then(&self, other: &Perm) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Perm(self.0.iter().map(|&x| other.0[x]).collect())
    }

    /// `g⁻¹ · self · g`.
    pub fn conjugate_by(&self, g: &Perm) -> Self {
        g.inverse().then(self).then(g)
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = Perm::identity(self.degree());
        for _ in 0..k.unsigned_abs() {
            acc = acc.then(&base);
        }
        acc
    }

    /// Disjoint cycle notation over the given labels, e.g. `(a b)(c d e)`.
    pub fn cycle_string(&self, labels: &[String]) -> String {
        let mut seen = vec![false; self.degree()];
        let mut out = String::new();
        for start in 0..self.degree() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(labels.get(x).cloned().unwrap_or_else(|| x.to_string()));
                x = self.0[x];
            }
            out.push('(');
            out.push_str(&cycle.join(" "));
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl Mul for &Perm {
    type Output = Perm;
    fn mul(self, rhs: &Perm) -> Perm {
        self.then(rhs)
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = (0..self.degree()).map(|i| i.to_string()).collect();
        write!(f, "{}", self.cycle_string(&labels))
    }
}

/// A finite permutation group given by generators, with an optional
/// materialized element list.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Option<Vec<Perm>>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        Ok(PermGroup {
            degree,
            generators,
            elements: None,
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
            elements: None,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// Generators with identities and duplicates removed, in first-seen order.
    pub fn reduced_generators(&self) -> Vec<Perm> {
        let mut seen = HashSet::new();
        self.generators
            .iter()
            .filter(|g| !g.is_identity() && seen.insert((*g).clone()))
            .cloned()
            .collect()
    }

    /// True when every generator is the identity. No closure needed.
    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(Perm::is_identity)
    }

    /// Materializes the group by breadth-first multiplication by generators.
    /// Elements are listed in discovery order starting from the identity.
    pub fn materialize(&mut self, cap: usize) -> Result<&[Perm]> {
        if self.elements.is_none() {
            self.elements = Some(closure(self.degree, &self.generators, cap)?);
        }
        Ok(self.elements.as_deref().unwrap())
    }

    pub fn elements(&self) -> Option<&[Perm]> {
        self.elements.as_deref()
    }

    pub fn order(&mut self, cap: usize) -> Result<usize> {
        Ok(self.materialize(cap)?.len())
    }

    pub fn contains(&mut self, p: &Perm, cap: usize) -> Result<bool> {
        Ok(self.materialize(cap)?.contains(p))
    }

    /// Orbits of the generated group on `0..degree`, each sorted, listed by
    /// least member.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut label = vec![usize::MAX; self.degree];
        let mut orbits = Vec::new();
        for start in 0..self.degree {
            if label[start] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            let mut orbit = vec![start];
            label[start] = id;
            let mut i = 0;
            while i < orbit.len() {
                let x = orbit[i];
                for g in &self.generators {
                    let y = g.apply(x);
                    if label[y] == usize::MAX {
                        label[y] = id;
                        orbit.push(y);
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits
    }

    /// Orbit of `point` together with a transversal: `transversal[y]` maps
    /// `point` to `y`.
    pub fn orbit_transversal(&self, point: usize) -> (Vec<usize>, HashMap<usize, Perm>) {
        let mut transversal = HashMap::new();
        transversal.insert(point, Perm::identity(self.degree));
        let mut orbit = vec![point];
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            let tx = transversal[&x].clone();
            for g in &self.generators {
                let y = g.apply(x);
                if let std::collections::hash_map::Entry::Vacant(e) = transversal.entry(y) {
                    e.insert(tx.then(g));
                    orbit.push(y);
                }
            }
            i += 1;
        }
        (orbit, transversal)
    }

    /// Schreier generators of the stabilizer of `point`.
    pub fn stabilizer(&self, point: usize) -> PermGroup {
        let (orbit, transversal) = self.orbit_transversal(point);
        let mut seen = HashSet::new();
        let mut gens = Vec::new();
        for &x in &orbit {
            let tx = &transversal[&x];
            for g in &self.generators {
                let y = g.apply(x);
                let s = tx.then(g).then(&transversal[&y].inverse());
                if !s.is_identity() && seen.insert(s.clone()) {
                    gens.push(s);
                }
            }
        }
        PermGroup {
            degree: self.degree,
            generators: gens,
            elements: None,
        }
    }

    /// Normal closure of `seeds` under conjugation by this group.
    pub fn normal_closure(&self, seeds: &[Perm], cap: usize) -> Result<PermGroup> {
        let mut gens: Vec<Perm> = Vec::new();
        let mut members: HashSet<Perm> = HashSet::new();
        members.insert(Perm::identity(self.degree));
        let mut queue: VecDeque<Perm> = seeds.iter().cloned().collect();
        while let Some(c) = queue.pop_front() {
            if c.degree() != self.degree {
                return Err(Error::DegreeMismatch {
                    expected: self.degree,
                    found: c.degree(),
                });
            }
            if members.contains(&c) {
                continue;
            }
            gens.push(c.clone());
            extend_closure(&mut members, &gens, cap)?;
            for s in &self.generators {
                queue.push_back(c.conjugate_by(s));
            }
        }
        let mut elements: Vec<Perm> = members.into_iter().collect();
        elements.sort();
        Ok(PermGroup {
            degree: self.degree,
            generators: gens,
            elements: Some(elements),
        })
    }
}

fn closure(degree: usize, generators: &[Perm], cap: usize) -> Result<Vec<Perm>> {
    let id = Perm::identity(degree);
    let mut seen: HashSet<Perm> = HashSet::new();
    seen.insert(id.clone());
    let mut out = vec![id];
    let mut i = 0;
    while i < out.len() {
        for g in generators {
            let p = out[i].then(g);
            if !seen.contains(&p) {
                if out.len() >= cap {
                    return Err(Error::ClosureCapExceeded { cap });
                }
                seen.insert(p.clone());
                out.push(p);
            }
        }
        i += 1;
    }
    Ok(out)
}

fn extend_closure(members: &mut HashSet<Perm>, gens: &[Perm], cap: usize) -> Result<()> {
    let mut frontier: Vec<Perm> = members.iter().cloned().collect();
    while let Some(p) = frontier.pop() {
        for g in gens {
            let q = p.then(g);
            if !members.contains(&q) {
                if members.len() >= cap {
                    return Err(Error::ClosureCapExceeded { cap });
                }
                members.insert(q.clone());
                frontier.push(q);
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Perm {
        Perm::from_images(v.to_vec()).unwrap()
    }

    #[test]
    fn composition_is_left_to_right() {
        let a = p(&[1, 0, 2]);
        let b = p(&[0, 2, 1]);
        // 0 -a-> 1 -b-> 2
        assert_eq!(a.then(&b).apply(0), 2);
        assert_eq!((&a * &b).inverse().then(&a.then(&b)), Perm::identity(3));
    }

    #[test]
    fn symmetric_group_closure_and_stabilizer() {
        let mut g = PermGroup::new(3, vec![p(&[1, 0, 2]), p(&[1, 2, 0])]).unwrap();
        assert_eq!(g.order(100).unwrap(), 6);
        let mut st = g.stabilizer(0);
        assert_eq!(st.order(100).unwrap(), 2);
        assert!(st.generators().iter().all(|s| s.apply(0) == 0));
    }

    #[test]
    fn closure_cap_is_enforced() {
        let mut g = PermGroup::new(4, vec![p(&[1, 0, 2, 3]), p(&[1, 2, 3, 0])]).unwrap();
        assert_eq!(g.order(5), Err(Error::ClosureCapExceeded { cap: 5 }));
    }

    #[test]
    fn normal_closure_of_transposition_in_s3_is_s3() {
        let g = PermGroup::new(3, vec![p(&[1, 0, 2]), p(&[1, 2, 0])]).unwrap();
        let mut n = g.normal_closure(&[p(&[1, 0, 2])], 100).unwrap();
        assert_eq!(n.order(100).unwrap(), 6);
        let mut a3 = g.normal_closure(&[p(&[1, 2, 0])], 100).unwrap();
        assert_eq!(a3.order(100).unwrap(), 3);
    }

    #[test]
    fn orbits_are_listed_by_least_member() {
        let g = PermGroup::new(5, vec![p(&[0, 3, 2, 1, 4]), p(&[4, 1, 2, 3, 0])]).unwrap();
        assert_eq!(g.orbits(), vec![vec![0, 4], vec![1, 3], vec![2]]);
    }
}
