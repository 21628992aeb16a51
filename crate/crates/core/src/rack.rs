//! Finite racks and quandles stored as validated operation tables.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{Perm, PermGroup};

/// A finite rack. `op(x, y)` is `x ◁ y`: the row is the element acted upon,
/// the column the acting element. The inverse table is derived from the
/// forward one by inverting each column permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteRack {
    labels: Vec<String>,
    pos: Vec<usize>,
    neg: Vec<usize>,
}

/// Which of the quandle, involutive and trivial identities hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub is_quandle: bool,
    pub is_involutive: bool,
    pub is_trivial: bool,
}

/// Table, labels and sorted member indices of a restriction.
type Restricted = (Vec<Vec<usize>>, Vec<String>, Vec<usize>);

fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

impl FiniteRack {
    /// Validates `table[x][y] = x ◁ y` against both rack axioms.
    ///
    /// Reports the first column that is not a permutation, or the first
    /// triple `(x, y, z)` in lexicographic order with
    /// `(x◁y)◁z ≠ (x◁z)◁(y◁z)`.
    pub fn validate(table: &[Vec<usize>], labels: Vec<String>) -> Result<Self> {
        let rack = Self::from_table_unchecked(table, labels)?;
        if rack.symmetries_conjugate_correctly() {
            return Ok(rack);
        }
        let n = rack.order();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = rack.op(rack.op(x, y), z);
                    let rhs = rack.op(rack.op(x, z), rack.op(y, z));
                    if lhs != rhs {
                        return Err(Error::SelfDistributivityFail { x, y, z });
                    }
                }
            }
        }
        unreachable!("symmetry check and triple scan disagree")
    }

    /// Self-distributivity in the form `S_{y◁z} = S_z⁻¹ S_y S_z`, with
    /// conjugates memoized per pair of distinct symmetries. Racks built
    /// from group actions have far fewer distinct symmetries than elements.
    fn symmetries_conjugate_correctly(&self) -> bool {
        let n = self.order();
        let syms = self.symmetries();
        let mut ids: HashMap<&Perm, usize> = HashMap::new();
        let mut distinct: Vec<&Perm> = Vec::new();
        let sym_id: Vec<usize> = syms
            .iter()
            .map(|s| {
                *ids.entry(s).or_insert_with(|| {
                    distinct.push(s);
                    distinct.len() - 1
                })
            })
            .collect();
        let k = distinct.len();
        let mut memo: Vec<Option<Option<usize>>> = vec![None; k * k];
        for y in 0..n {
            for z in 0..n {
                let key = sym_id[y] * k + sym_id[z];
                let expected = *memo[key].get_or_insert_with(|| {
                    let c = distinct[sym_id[y]].conjugate_by(distinct[sym_id[z]]);
                    ids.get(&c).copied()
                });
                if expected != Some(sym_id[self.op(y, z)]) {
                    return false;
                }
            }
        }
        true
    }

    /// Same as [`validate`](Self::validate) for a table printed with the
    /// acting element on the rows, i.e. `printed[y][x] = x ◁ y`.
    pub fn validate_row_acts(printed: &[Vec<usize>], labels: Vec<String>) -> Result<Self> {
        let n = printed.len();
        for row in printed {
            if row.len() != n {
                return Err(Error::Shape(format!(
                    "expected a {n}x{n} table, found a row of length {}",
                    row.len()
                )));
            }
        }
        let transposed: Vec<Vec<usize>> = (0..n)
            .map(|x| (0..n).map(|y| printed[y][x]).collect())
            .collect();
        Self::validate(&transposed, labels)
    }

    /// Checks shape, label count and R1, but not self-distributivity.
    fn from_table_unchecked(table: &[Vec<usize>], labels: Vec<String>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::EmptyRack);
        }
        if labels.len() != n {
            return Err(Error::Shape(format!(
                "{} labels for a table of order {n}",
                labels.len()
            )));
        }
        let mut sorted = labels.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != n {
            return Err(Error::Shape("element labels are not distinct".into()));
        }
        let mut pos = Vec::with_capacity(n * n);
        for row in table {
            if row.len() != n {
                return Err(Error::Shape(format!(
                    "expected a {n}x{n} table, found a row of length {}",
                    row.len()
                )));
            }
            for &v in row {
                if v >= n {
                    return Err(Error::Shape(format!("entry {v} out of range for order {n}")));
                }
            }
            pos.extend_from_slice(row);
        }
        let mut neg = vec![usize::MAX; n * n];
        for y in 0..n {
            for x in 0..n {
                let z = pos[x * n + y];
                if neg[z * n + y] != usize::MAX {
                    return Err(Error::NotBijectiveColumn { column: y });
                }
                neg[z * n + y] = x;
            }
        }
        Ok(FiniteRack { labels, pos, neg })
    }

    /// Builds a rack from a closure that is known to satisfy the axioms,
    /// checking them anyway.
    pub fn from_fn(n: usize, labels: Vec<String>, op: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let table: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| op(x, y)).collect()).collect();
        Self::validate(&table, labels)
    }

    /// Trivial rack `T_n` with labels `0..n`.
    pub fn trivial(n: usize) -> Self {
        Self::from_fn(n, default_labels(n), |x, _| x).expect("trivial rack")
    }

    /// Dihedral quandle `R_n`: `x ◁ y = 2y − x mod n`.
    pub fn dihedral(n: usize) -> Self {
        Self::from_fn(n, default_labels(n), |x, y| (2 * y + n - x) % n).expect("dihedral quandle")
    }

    /// The rack `x ◁ y = x · σ` for a fixed permutation `σ`.
    pub fn permutation_rack(sigma: &Perm) -> Self {
        let n = sigma.degree();
        Self::from_fn(n, default_labels(n), |x, _| sigma.apply(x)).expect("permutation rack")
    }

    /// Conjugation quandle of a group given by its Cayley table
    /// (`cayley[g][h] = g·h`): `x ◁ a = a⁻¹ x a`.
    pub fn conj_of_group(cayley: &[Vec<usize>], labels: Vec<String>) -> Result<Self> {
        let group = CayleyGroup::new(cayley)?;
        let n = group.order();
        Self::from_fn(n, labels, |x, a| {
            group.mul(group.mul(group.inverse(a), x), a)
        })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// `x ◁ y`.
    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.pos[x * self.order() + y]
    }

    /// `x ◁⁻¹ y`.
    #[inline]
    pub fn op_inv(&self, x: usize, y: usize) -> usize {
        self.neg[x * self.order() + y]
    }

    /// `x ◁^sign y` with `sign` = ±1.
    #[inline]
    pub fn op_signed(&self, x: usize, y: usize, sign: i8) -> usize {
        if sign >= 0 {
            self.op(x, y)
        } else {
            self.op_inv(x, y)
        }
    }

    /// `x ◁^k y` for any integer `k`.
    pub fn op_pow(&self, mut x: usize, y: usize, k: i64) -> usize {
        let sign = if k < 0 { -1 } else { 1 };
        for _ in 0..k.unsigned_abs() {
            x = self.op_signed(x, y, sign);
        }
        x
    }

    /// Forward table as rows, `table()[x][y] = x ◁ y`.
    pub fn table(&self) -> Vec<Vec<usize>> {
        self.pos.chunks(self.order()).map(<[usize]>::to_vec).collect()
    }

    /// The symmetry `S_y : x ↦ x ◁ y`.
    pub fn symmetry(&self, y: usize) -> Perm {
        Perm::from_images_unchecked((0..self.order()).map(|x| self.op(x, y)).collect())
    }

    pub fn symmetries(&self) -> Vec<Perm> {
        (0..self.order()).map(|y| self.symmetry(y)).collect()
    }

    pub fn classify(&self) -> Classification {
        let n = self.order();
        let is_quandle = (0..n).all(|x| self.op(x, x) == x);
        let is_involutive = (0..n).all(|x| (0..n).all(|y| self.op(self.op(x, y), y) == x));
        let is_trivial = (0..n).all(|x| (0..n).all(|y| self.op(x, y) == x));
        Classification {
            is_quandle,
            is_involutive,
            is_trivial,
        }
    }

    /// `Inn(X)`, generated by all symmetries, materialized up to `cap`.
    pub fn inn_group(&self, cap: usize) -> Result<PermGroup> {
        let mut g = self.inn_generators();
        g.materialize(cap)?;
        Ok(g)
    }

    /// `Inn(X)` by generators only (no closure).
    pub fn inn_generators(&self) -> PermGroup {
        PermGroup::new(self.order(), self.symmetries()).expect("symmetries have the rack's degree")
    }

    /// Subrack on `members`, which must be closed under both operations.
    /// Returns the subrack and the inclusion as an index list.
    pub fn subrack(&self, members: &[usize]) -> Result<(FiniteRack, Vec<usize>)> {
        let (table, labels, members) = self.restricted_table(members)?;
        Ok((Self::validate(&table, labels)?, members))
    }

    /// Restriction to a closed subset without re-checking self-distributivity.
    /// Used to shrink tables that are not racks.
    pub(crate) fn restrict_unchecked(&self, members: &[usize]) -> Result<(FiniteRack, Vec<usize>)> {
        let (table, labels, members) = self.restricted_table(members)?;
        Ok((Self::from_table_unchecked(&table, labels)?, members))
    }

    fn restricted_table(&self, members: &[usize]) -> Result<Restricted> {
        let mut members = members.to_vec();
        members.sort_unstable();
        members.dedup();
        let n = self.order();
        let mut local = vec![usize::MAX; n];
        for (i, &m) in members.iter().enumerate() {
            local[m] = i;
        }
        let mut table = Vec::with_capacity(members.len());
        for &x in &members {
            let mut row = Vec::with_capacity(members.len());
            for &y in &members {
                let z = self.op(x, y);
                if local[z] == usize::MAX || local[self.op_inv(x, y)] == usize::MAX {
                    return Err(Error::Shape(format!(
                        "subset is not closed: {} ◁± {} leaves it",
                        self.label(x),
                        self.label(y)
                    )));
                }
                row.push(local[z]);
            }
            table.push(row);
        }
        let labels = members.iter().map(|&m| self.labels[m].clone()).collect();
        Ok((table, labels, members))
    }

    /// Smallest subset containing `seeds` and closed under both operations,
    /// sorted.
    pub fn generated_subset(&self, seeds: &[usize]) -> Vec<usize> {
        let n = self.order();
        let mut inside = vec![false; n];
        let mut members: Vec<usize> = Vec::new();
        for &s in seeds {
            if !inside[s] {
                inside[s] = true;
                members.push(s);
            }
        }
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for j in 0..=i {
                let y = members[j];
                for z in [self.op(x, y), self.op_inv(x, y), self.op(y, x), self.op_inv(y, x)] {
                    if !inside[z] {
                        inside[z] = true;
                        members.push(z);
                    }
                }
            }
            i += 1;
        }
        members.sort_unstable();
        members
    }

    /// Relabels elements without touching the table.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.order() {
            return Err(Error::Shape("label count does not match order".into()));
        }
        self.labels = labels;
        Ok(self)
    }

    /// Builds a table that passes R1 but whose forward table has two
    /// entries of one column swapped. Used only to exercise the
    /// property-suite failure path; the result is generally not a rack.
    #[doc(hidden)]
    pub fn mutated_for_self_test(&self) -> FiniteRack {
        let n = self.order();
        if n < 2 {
            return self.clone();
        }
        let mut table = self.table();
        let col = n - 1;
        let (a, b) = (0, 1);
        let t = table[a][col];
        table[a][col] = table[b][col];
        table[b][col] = t;
        Self::from_table_unchecked(&table, self.labels.clone()).expect("column swap keeps R1")
    }
}

/// A finite group given by a validated Cayley table.
#[derive(Clone, Debug)]
pub struct CayleyGroup {
    n: usize,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
}

impl CayleyGroup {
    pub fn new(cayley: &[Vec<usize>]) -> Result<Self> {
        let n = cayley.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for row in cayley {
            if row.len() != n || row.iter().any(|&v| v >= n) {
                return Err(Error::Shape("Cayley table must be square with entries in range".into()));
            }
            table.extend_from_slice(row);
        }
        let m = |a: usize, b: usize| table[a * n + b];
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| m(e, x) == x && m(x, e) == x))
            .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if m(m(a, b), c) != m(a, m(b, c)) {
                        return Err(Error::NotAGroup(format!("associativity fails at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let mut inverses = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| m(a, b) == identity && m(b, a) == identity)
                .ok_or_else(|| Error::NotAGroup(format!("element {a} has no inverse")))?;
            inverses.push(inv);
        }
        Ok(CayleyGroup {
            n,
            table,
            identity,
            inverses,
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    #[inline]
    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// Order of the commutator subgroup, by closing the set of commutators.
    pub fn derived_subgroup_order(&self) -> usize {
        let mut members = vec![false; self.n];
        members[self.identity] = true;
        let mut list = vec![self.identity];
        let comms: Vec<usize> = (0..self.n)
            .flat_map(|a| (0..self.n).map(move |b| (a, b)))
            .map(|(a, b)| self.mul(self.mul(self.inverse(a), self.inverse(b)), self.mul(a, b)))
            .collect();
        let mut i = 0;
        while i < list.len() {
            for &c in &comms {
                let p = self.mul(list[i], c);
                if !members[p] {
                    members[p] = true;
                    list.push(p);
                }
            }
            i += 1;
        }
        list.len()
    }
}

/// Cayley table of the symmetric group on three points, elements listed as
/// `e, (12), (13), (23), (123), (132)` acting on the right.
pub fn s3_cayley() -> (Vec<String>, Vec<Vec<usize>>) {
    let perms: Vec<Perm> = [
        [0, 1, 2],
        [1, 0, 2],
        [2, 1, 0],
        [0, 2, 1],
        [1, 2, 0],
        [2, 0, 1],
    ]
    .iter()
    .map(|v| Perm::from_images(v.to_vec()).unwrap())
    .collect();
    let labels = ["e", "(12)", "(13)", "(23)", "(123)", "(132)"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let table = perms
        .iter()
        .map(|a| {
            perms
                .iter()
                .map(|b| perms.iter().position(|p| *p == a.then(b)).unwrap())
                .collect()
        })
        .collect();
    (labels, table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn qabs_table_is_an_involutive_quandle() {
        let t = vec![vec![0, 0, 1], vec![1, 1, 0], vec![2, 2, 2]];
        let q = FiniteRack::validate(&t, labels(&["a", "b", "s"])).unwrap();
        let c = q.classify();
        assert!(c.is_quandle && c.is_involutive && !c.is_trivial);
        assert_eq!(q.op_inv(1, 2), 0);
    }

    #[test]
    fn non_injective_column_is_rejected() {
        let t = vec![vec![0, 1], vec![1, 1]];
        assert_eq!(
            FiniteRack::validate(&t, labels(&["0", "1"])),
            Err(Error::NotBijectiveColumn { column: 1 })
        );
    }

    #[test]
    fn self_distributivity_witness_is_first_failing_triple() {
        // Column permutations are fine but R2 fails.
        let t = vec![vec![1, 0, 0], vec![0, 1, 1], vec![2, 2, 2]];
        let err = FiniteRack::validate(&t, labels(&["0", "1", "2"])).unwrap_err();
        let Error::SelfDistributivityFail { x, y, z } = err else {
            panic!("unexpected {err:?}");
        };
        let lhs = t[t[x][y]][z];
        let rhs = t[t[x][z]][t[y][z]];
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn shape_errors() {
        assert!(matches!(
            FiniteRack::validate(&[vec![0, 1]], labels(&["a"])),
            Err(Error::Shape(_))
        ));
        assert!(matches!(
            FiniteRack::validate(&[vec![0, 3], vec![1, 0]], labels(&["a", "b"])),
            Err(Error::Shape(_))
        ));
        assert!(matches!(
            FiniteRack::validate(&[vec![0, 0], vec![1, 1]], labels(&["a", "a"])),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn conjugation_of_small_groups() {
        let z3 = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]];
        let c = FiniteRack::conj_of_group(&z3, labels(&["0", "1", "2"])).unwrap();
        assert!(c.classify().is_trivial);
        let one = FiniteRack::conj_of_group(&[vec![0]], labels(&["e"])).unwrap();
        assert_eq!(one.order(), 1);
        let (l, s3) = s3_cayley();
        let q = FiniteRack::conj_of_group(&s3, l).unwrap();
        assert!(q.classify().is_quandle);
        assert!(!q.classify().is_trivial);
    }

    #[test]
    fn not_a_group_is_rejected() {
        let bad = vec![vec![0, 1], vec![1, 1]];
        assert!(matches!(
            FiniteRack::conj_of_group(&bad, labels(&["e", "x"])),
            Err(Error::NotAGroup(_))
        ));
    }

    #[test]
    fn s3_derived_subgroup_has_order_three() {
        let (_, s3) = s3_cayley();
        let g = CayleyGroup::new(&s3).unwrap();
        assert_eq!(g.derived_subgroup_order(), 3);
        assert_eq!(g.order() / g.derived_subgroup_order(), 2);
    }

    #[test]
    fn inn_orders() {
        assert_eq!(FiniteRack::trivial(4).inn_group(100).unwrap().order(100).unwrap(), 1);
        assert_eq!(FiniteRack::dihedral(3).inn_group(100).unwrap().order(100).unwrap(), 6);
    }

    #[test]
    fn row_acts_ingestion_transposes() {
        // printed[y][x] = x ◁ y for Q_ab*
        let printed = vec![vec![0, 1, 2], vec![0, 1, 2], vec![1, 0, 2]];
        let q = FiniteRack::validate_row_acts(&printed, labels(&["a", "b", "s"])).unwrap();
        assert_eq!(q.op(0, 2), 1);
    }

    #[test]
    fn op_pow_matches_repeated_application() {
        let r = FiniteRack::dihedral(5);
        assert_eq!(r.op_pow(1, 3, 2), r.op(r.op(1, 3), 3));
        assert_eq!(r.op_pow(1, 3, -1), r.op_inv(1, 3));
        assert_eq!(r.op_pow(1, 3, 0), 1);
    }

    #[test]
    fn mutated_table_breaks_self_distributivity() {
        let r = FiniteRack::dihedral(3);
        let m = r.mutated_for_self_test();
        assert_ne!(m, r);
        assert!(FiniteRack::validate(&m.table(), m.labels().to_vec()).is_err());
    }
}
