mod common;

use common::word;
use proptest::prelude::*;
use qcover_core::free::{fq_act, fq_normalize, fq_op, fr_op, FreeQuandleElem, FreeRackElem};
use qcover_core::words::{kernel_pairing, GroupWord, KernelPairing, Letter};

const GENS: usize = 3;

fn fr_elem() -> impl Strategy<Value = FreeRackElem> {
    (0..GENS, word(GENS, 6)).prop_map(|(h, w)| FreeRackElem::new(h, w))
}

fn fq_elem() -> impl Strategy<Value = FreeQuandleElem> {
    (0..GENS, word(GENS, 6)).prop_map(|(h, w)| fq_normalize(h, &w))
}

fn reduced(w: &GroupWord) -> bool {
    w.letters().windows(2).all(|p| !(p[0].gen == p[1].gen && p[0].sign == -p[1].sign))
}

proptest! {
    #[test]
    fn words_stay_reduced(u in word(GENS, 10), v in word(GENS, 10)) {
        let uv = u.mul(&v);
        prop_assert!(reduced(&u) && reduced(&uv));
        prop_assert_eq!(GroupWord::from_letters(uv.letters().iter().copied()), uv.clone());
        prop_assert!(u.mul(&u.inverse()).is_empty());
        prop_assert_eq!(uv.characteristic(), u.characteristic() + v.characteristic());
    }

    #[test]
    fn words_parse_back(u in word(GENS, 10)) {
        let labels: Vec<String> = ["a", "b", "c"].map(String::from).to_vec();
        prop_assert_eq!(GroupWord::parse(&u.display_with(&labels), &labels).unwrap(), u);
    }

    #[test]
    fn free_rack_axioms(x in fr_elem(), y in fr_elem(), z in fr_elem()) {
        prop_assert_eq!(fr_op(&fr_op(&x, &y, 1), &y, -1), x.clone());
        prop_assert_eq!(fr_op(&fr_op(&x, &y, -1), &y, 1), x.clone());
        prop_assert_eq!(
            fr_op(&fr_op(&x, &y, 1), &z, 1),
            fr_op(&fr_op(&x, &z, 1), &fr_op(&y, &z, 1), 1)
        );
    }

    #[test]
    fn free_quandle_axioms(x in fq_elem(), y in fq_elem(), z in fq_elem()) {
        prop_assert_eq!(x.path().characteristic(), 0);
        prop_assert_eq!(fq_op(&x, &x, 1).unwrap(), x.clone());
        prop_assert_eq!(fq_op(&fq_op(&x, &y, 1).unwrap(), &y, -1).unwrap(), x.clone());
        prop_assert_eq!(
            fq_op(&fq_op(&x, &y, 1).unwrap(), &z, 1).unwrap(),
            fq_op(&fq_op(&x, &z, 1).unwrap(), &fq_op(&y, &z, 1).unwrap(), 1).unwrap()
        );
    }

    #[test]
    fn free_rack_action_is_free(x in fr_elem(), h in word(GENS, 6)) {
        prop_assert_eq!(x.act(&h) == x, h.is_empty());
    }

    #[test]
    fn free_quandle_action_is_free(x in fq_elem(), g in word(GENS, 6)) {
        let h = g.mul(&GroupWord::generator(0).pow(-g.characteristic()));
        prop_assert_eq!(h.characteristic(), 0);
        prop_assert_eq!(fq_act(&x, &h).unwrap() == x, h.is_empty());
    }

    #[test]
    fn kernel_pairing_round_trip(
        fibres in prop::collection::vec(0usize..3, 1..6),
        u in word(5, 12),
    ) {
        let n = fibres.len();
        let f: Vec<usize> = fibres;
        let u = GroupWord::from_letters(u.letters().iter().map(|l| Letter { gen: l.gen % n, sign: l.sign }));
        match kernel_pairing(&f, &u) {
            KernelPairing::Witness(w) => {
                let nu = GroupWord::from_letters(w.nu.iter().copied());
                let nu_p = GroupWord::from_letters(w.nu_prime.iter().copied());
                prop_assert_eq!(nu.mul(&nu_p.inverse()), u.clone());
                prop_assert!(nu_p.is_empty());
                let image = |ls: &[Letter]| ls.iter().map(|l| (f[l.gen], l.sign)).collect::<Vec<_>>();
                prop_assert_eq!(image(&w.nu), image(&w.nu_prime));
                prop_assert!(u.map_generators(&f).is_empty());
            }
            KernelPairing::NotInKernel => prop_assert!(!u.map_generators(&f).is_empty()),
        }
    }
}
