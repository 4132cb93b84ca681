//! Seeded random inputs shared by the integration tests.

#![allow(dead_code)]

use easy_diagrams::pairing::{enumerate, Point};
use easy_diagrams::{Family, PairingDiagram, Permutation};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;

pub fn random_permutation<R: Rng>(rng: &mut R, k: usize) -> Permutation {
    let mut images: Vec<usize> = (1..=k).collect();
    images.shuffle(rng);
    Permutation::new(images).unwrap()
}

pub fn random_pairing<R: Rng>(rng: &mut R, k: usize, l: usize) -> PairingDiagram {
    let mut order: Vec<usize> = (0..k + l).collect();
    order.shuffle(rng);
    let point = |i: usize| if i < k { Point::Upper(i + 1) } else { Point::Lower(i - k + 1) };
    let pairs: Vec<(Point, Point)> = order.chunks(2).map(|c| (point(c[0]), point(c[1]))).collect();
    PairingDiagram::new(k, l, &pairs).unwrap()
}

/// A pairing of the given shape drawn from one family, uniformly within it.
pub fn random_in_family<R: Rng>(rng: &mut R, k: usize, l: usize, family: Family) -> PairingDiagram {
    enumerate(k, l, family).unwrap().choose(rng).unwrap().clone()
}

/// Whether `d` lies in `family` but not in the next smaller family.
pub fn strictly_in(d: &PairingDiagram, family: Family) -> bool {
    match family {
        Family::Noncrossing => d.is_noncrossing(),
        Family::Matching => d.is_matching() && !d.is_noncrossing(),
        Family::All => !d.is_matching(),
    }
}

/// One or two generators from `family`, at least one of them outside the
/// smaller families, each with at most `max_points` points (at least 6 for
/// the matching family, whose smaller pairings are all noncrossing). With
/// `even_rows` both rows of every generator have even length.
pub fn random_generators<R: Rng>(
    rng: &mut R,
    family: Family,
    max_points: usize,
    even_rows: bool,
) -> Vec<PairingDiagram> {
    let draw = |rng: &mut R, strict: bool| loop {
        let total = 2 * rng.random_range(1..=max_points / 2);
        let k = rng.random_range(0..=total);
        if even_rows && k % 2 == 1 {
            continue;
        }
        let d = random_in_family(rng, k, total - k, family);
        if !strict || strictly_in(&d, family) {
            break d;
        }
    };
    let mut gens = vec![draw(rng, true)];
    if rng.random_bool(0.5) {
        gens.push(draw(rng, false));
    }
    gens.shuffle(rng);
    gens
}
