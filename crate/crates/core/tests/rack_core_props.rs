mod common;

use common::{rack, rack_with};
use proptest::prelude::*;
use qcover_core::congruence::{
    congruence_from_pairs, orbit_congruence, quotient, relations_permute, Congruence, Relation,
};
use qcover_core::perm::PermGroup;
use qcover_core::{FiniteRack, DEFAULT_CLOSURE_CAP as CAP};

fn all_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |x| (0..n).map(move |y| (x, y)))
}

proptest! {
    #[test]
    fn unfolding_identities((r, v) in rack_with(6, 3)) {
        let (x, y, z) = (v[0], v[1], v[2]);
        let p = |a, b| r.op(a, b);
        let m = |a, b| r.op_inv(a, b);
        prop_assert_eq!(p(x, p(y, z)), p(p(m(x, z), y), z));
        prop_assert_eq!(p(x, m(y, z)), m(p(p(x, z), y), z));
        prop_assert_eq!(m(x, p(y, z)), p(m(m(x, z), y), z));
        prop_assert_eq!(m(x, m(y, z)), m(m(p(x, z), y), z));
    }

    #[test]
    fn inverse_undoes_op((r, v) in rack_with(6, 2)) {
        prop_assert_eq!(r.op_inv(r.op(v[0], v[1]), v[1]), v[0]);
        prop_assert_eq!(r.op(r.op_inv(v[0], v[1]), v[1]), v[0]);
    }

    #[test]
    fn weak_idempotency((r, v) in rack_with(6, 2), k in -3i64..=3) {
        prop_assert_eq!(r.op(v[0], r.op_pow(v[1], v[1], k)), r.op(v[0], v[1]));
    }

    #[test]
    fn table_round_trips_through_validation(r in rack(6)) {
        let again = FiniteRack::validate(&r.table(), r.labels().to_vec()).unwrap();
        prop_assert_eq!(again.table(), r.table());
    }

    #[test]
    fn components_by_orbits_and_by_pairs(r in rack(6)) {
        let pairs: Vec<_> = all_pairs(r.order()).map(|(x, y)| (x, r.op(x, y))).collect();
        prop_assert_eq!(
            orbit_congruence(&r, &r.inn_generators()).unwrap(),
            congruence_from_pairs(&r, &pairs)
        );
    }

    #[test]
    fn generated_congruences_are_compatible(r in rack(6), seeds in prop::collection::vec((0usize..6, 0usize..6), 0..4)) {
        let n = r.order();
        let pairs: Vec<_> = seeds.iter().map(|&(a, b)| (a % n, b % n)).collect();
        let c = congruence_from_pairs(&r, &pairs);
        for &(a, b) in &pairs {
            prop_assert!(c.related(a, b));
        }
        for (a, b) in all_pairs(n).filter(|&(a, b)| c.related(a, b)) {
            for z in 0..n {
                prop_assert!(c.related(r.op(a, z), r.op(b, z)));
                prop_assert!(c.related(r.op(z, a), r.op(z, b)));
            }
        }
        let (q, h) = quotient(&r, &c).unwrap();
        prop_assert_eq!(q.order(), c.class_count());
        for (x, y) in all_pairs(n) {
            prop_assert_eq!(h.apply(r.op(x, y)), q.op(h.apply(x), h.apply(y)));
        }
    }

    #[test]
    fn discrete_quotient_is_an_isomorphism(r in rack(6)) {
        let (q, h) = quotient(&r, &Congruence::discrete(r.order())).unwrap();
        prop_assert_eq!(q.table(), r.table());
        prop_assert!(h.map().iter().enumerate().all(|(i, &j)| i == j));
    }

    #[test]
    fn inn_closure_is_a_group(r in rack(5)) {
        let mut g = r.inn_group(CAP).unwrap();
        let elems = g.materialize(CAP).unwrap().to_vec();
        prop_assert!(elems.iter().any(|p| p.is_identity()));
        for p in &elems {
            prop_assert!(elems.contains(&p.inverse()));
            for q in elems.iter().take(8) {
                prop_assert!(elems.contains(&p.then(q)));
            }
        }
        let size = elems.len();
        prop_assert_eq!(r.inn_group(size).map(|mut g| g.order(size).unwrap()).ok(), Some(size));
        if size > 1 {
            prop_assert!(r.inn_group(size - 1).and_then(|mut g| g.order(size - 1)).is_err());
        }
    }

    #[test]
    fn normal_orbits_permute_with_internal_relations(
        r in rack(6),
        picks in prop::collection::vec(any::<prop::sample::Index>(), 1..3),
        pairs in prop::collection::vec((0usize..6, 0usize..6), 0..4),
    ) {
        let n = r.order();
        let mut inn = r.inn_group(CAP).unwrap();
        let elems = inn.materialize(CAP).unwrap().to_vec();
        let seeds: Vec<_> = picks.iter().map(|i| i.get(&elems).clone()).collect();
        let h: PermGroup = r.inn_generators().normal_closure(&seeds, CAP).unwrap();
        let orbits = orbit_congruence(&r, &h).unwrap();
        let pairs: Vec<_> = pairs.iter().map(|&(a, b)| (a % n, b % n)).collect();
        let s = Relation::internal_from_pairs(&r, &pairs);
        prop_assert!(relations_permute(&orbits, &s));
    }
}
