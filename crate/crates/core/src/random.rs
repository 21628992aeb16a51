//! Seeded generators for racks, surjections, horns and relations.
//!
//! Every sample draws from its own stream, `sample_rng(seed, index)`, so a
//! batch gives the same results however it is split across threads.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::congruence::{congruence_from_pairs, quotient, Congruence, Relation};
use crate::covers::{Horn, HornStep};
use crate::hom::RackHom;
use crate::perm::{Perm, PermGroup};
use crate::rack::FiniteRack;
use crate::words::{GroupWord, Letter};

pub type SampleRng = ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 0xC0FFEE;

pub fn sample_rng(seed: u64, index: u64) -> SampleRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn random_perm(rng: &mut impl Rng, n: usize) -> Perm {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    Perm::from_images(images).expect("shuffle is a bijection")
}

/// A random rack of order `1..=max_order`.
///
/// Picks `G ≤ S_n` from one or two random generators, then on each
/// `G`-orbit a representative `r` and an element `∂(r)` centralizing the
/// stabilizer of `r`, extended by `∂(r·h) = h⁻¹ ∂(r) h`. The rack is
/// `x ◁ y = x · ∂(y)`. Choosing `∂(r)` inside the stabilizer makes `y` a
/// fixed point of its own symmetry.
pub fn random_rack(rng: &mut impl Rng, max_order: usize) -> FiniteRack {
    let n = rng.gen_range(1..=max_order.max(1));
    // Trivial draws are common when G is large; redraw a few times.
    let mut rack = augmented_rack(rng, n);
    for _ in 0..3 {
        if !rack.classify().is_trivial {
            break;
        }
        rack = augmented_rack(rng, n);
    }
    rack
}

fn augmented_rack(rng: &mut impl Rng, n: usize) -> FiniteRack {
    let gens: Vec<Perm> = (0..rng.gen_range(1..=2)).map(|_| random_perm(rng, n)).collect();
    let mut group = PermGroup::new(n, gens).expect("degree matches");
    let elements = group.materialize(usize::MAX).expect("subgroup of S_n").to_vec();
    let quandle_bias = rng.gen_bool(0.5);

    let mut partial: Vec<Option<Perm>> = vec![None; n];
    for orbit in group.orbits() {
        let r = orbit[0];
        let stab: Vec<&Perm> = elements.iter().filter(|g| g.apply(r) == r).collect();
        let candidates: Vec<&Perm> = elements
            .iter()
            .filter(|g| stab.iter().all(|s| g.then(s) == s.then(g)))
            .filter(|g| !quandle_bias || g.apply(r) == r)
            .collect();
        let moving: Vec<&Perm> = candidates.iter().copied().filter(|g| !g.is_identity()).collect();
        let pool = if !moving.is_empty() && rng.gen_bool(0.8) { &moving } else { &candidates };
        let d = (*pool.choose(rng).expect("identity is a candidate")).clone();
        let (_, transversal) = group.orbit_transversal(r);
        for &y in &orbit {
            partial[y] = Some(d.conjugate_by(&transversal[&y]));
        }
    }
    let partial: Vec<Perm> = partial.into_iter().map(|p| p.expect("orbits cover")).collect();
    FiniteRack::from_fn(n, (0..n).map(|i| i.to_string()).collect(), |x, y| partial[y].apply(x))
        .expect("augmented construction gives a rack")
}

/// A random surjection out of a random rack: the quotient by a congruence
/// chosen from a few families, so that coverings, trivial extensions and
/// general surjections all appear.
pub fn random_surjection(rng: &mut impl Rng, max_order: usize) -> RackHom {
    let rack = random_rack(rng, max_order);
    random_surjection_from(rng, &rack)
}

pub fn random_surjection_from(rng: &mut impl Rng, rack: &FiniteRack) -> RackHom {
    let n = rack.order();
    let c = match rng.gen_range(0..5) {
        0 => Congruence::discrete(n),
        1 => Congruence::equivalence_from_pairs(n, &(1..n).map(|i| (0, i)).collect::<Vec<_>>()),
        2 => equal_symmetry_congruence(rng, rack),
        3 => crate::covers::pi0(rack).expect("orbits of Inn").0,
        _ => random_congruence(rng, rack),
    };
    let c = if c.is_discrete() && rng.gen_bool(0.5) {
        random_congruence(rng, rack)
    } else {
        c
    };
    quotient(rack, &c).expect("compatible by construction").1
}

/// Congruence generated by a few random pairs.
pub fn random_congruence(rng: &mut impl Rng, rack: &FiniteRack) -> Congruence {
    let pairs = random_pairs(rng, rack.order(), 2);
    congruence_from_pairs(rack, &pairs)
}

/// Congruence generated by random pairs of elements with equal symmetry;
/// quotients by these are coverings.
pub fn equal_symmetry_congruence(rng: &mut impl Rng, rack: &FiniteRack) -> Congruence {
    let syms = rack.symmetries();
    let n = rack.order();
    let pool: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|&(a, b)| syms[a] == syms[b])
        .collect();
    let k = rng.gen_range(0..=pool.len().min(3));
    let pairs: Vec<(usize, usize)> = pool.choose_multiple(rng, k).copied().collect();
    congruence_from_pairs(rack, &pairs)
}

pub fn random_pairs(rng: &mut impl Rng, n: usize, max: usize) -> Vec<(usize, usize)> {
    (0..rng.gen_range(0..=max))
        .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
        .collect()
}

/// Reflexive internal relation generated by a few random pairs.
pub fn random_internal_relation(rng: &mut impl Rng, rack: &FiniteRack) -> Relation {
    let pairs = random_pairs(rng, rack.order(), 3);
    Relation::internal_from_pairs(rack, &pairs)
}

/// Geometric with mean 3 on `0, 1, 2, …`, truncated at `cap`.
pub fn horn_length(rng: &mut impl Rng, cap: usize) -> usize {
    let mut len = 0;
    while len < cap && !rng.gen_bool(0.25) {
        len += 1;
    }
    len
}

/// A random `f`-horn: uniform base, uniform `f`-related step pairs.
pub fn random_horn(rng: &mut impl Rng, f: &RackHom, max_len: usize) -> Horn {
    let kp = f.kernel_pairs();
    let len = horn_length(rng, max_len);
    Horn {
        base: rng.gen_range(0..f.dom().order()),
        steps: (0..len)
            .map(|_| {
                let (a, b) = *kp.choose(rng).expect("kernel pairs include the diagonal");
                HornStep {
                    a,
                    b,
                    sign: if rng.gen_bool(0.5) { 1 } else { -1 },
                }
            })
            .collect(),
    }
}

/// Random reduced word of length at most `max_len` over `gens` generators.
pub fn random_word(rng: &mut impl Rng, gens: usize, max_len: usize) -> GroupWord {
    let len = rng.gen_range(0..=max_len);
    GroupWord::from_letters((0..len).map(|_| Letter {
        gen: rng.gen_range(0..gens),
        sign: if rng.gen_bool(0.5) { 1 } else { -1 },
    }))
}

/// Random word in the kernel of the letter map `f`: a product of
/// conjugates `w (a b⁻¹)^± w⁻¹` with `f(a) = f(b)`.
pub fn random_kernel_word(rng: &mut impl Rng, f: &[usize], max_factors: usize) -> GroupWord {
    let n = f.len();
    let mut out = GroupWord::empty();
    for _ in 0..rng.gen_range(0..=max_factors) {
        let a = rng.gen_range(0..n);
        let same: Vec<usize> = (0..n).filter(|&b| f[b] == f[a]).collect();
        let b = *same.choose(rng).expect("a is in its own fibre");
        let core = GroupWord::from_letters([Letter::pos(a), Letter::neg(b)]);
        let core = if rng.gen_bool(0.5) { core } else { core.inverse() };
        let w = random_word(rng, n, 3);
        out = out.mul(&w).mul(&core).mul(&w.inverse());
    }
    out
}
