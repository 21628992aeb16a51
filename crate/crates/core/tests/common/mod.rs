#![allow(dead_code)]

use proptest::prelude::*;
use qcover_core::hom::RackHom;
use qcover_core::random::{random_rack, random_surjection, sample_rng};
use qcover_core::words::{GroupWord, Letter};
use qcover_core::FiniteRack;

pub fn rack(max_order: usize) -> impl Strategy<Value = FiniteRack> {
    any::<u64>().prop_map(move |s| random_rack(&mut sample_rng(s, 0), max_order))
}

pub fn surjection(max_order: usize) -> impl Strategy<Value = RackHom> {
    any::<u64>().prop_map(move |s| random_surjection(&mut sample_rng(s, 1), max_order))
}

pub fn letter(gens: usize) -> impl Strategy<Value = Letter> {
    (0..gens, any::<bool>()).prop_map(|(gen, pos)| Letter { gen, sign: if pos { 1 } else { -1 } })
}

pub fn word(gens: usize, max_len: usize) -> impl Strategy<Value = GroupWord> {
    prop::collection::vec(letter(gens), 0..=max_len).prop_map(GroupWord::from_letters)
}

/// A rack together with `k` element indices into it.
pub fn rack_with(max_order: usize, k: usize) -> impl Strategy<Value = (FiniteRack, Vec<usize>)> {
    rack(max_order).prop_flat_map(move |r| {
        let n = r.order();
        (Just(r), prop::collection::vec(0..n, k))
    })
}
