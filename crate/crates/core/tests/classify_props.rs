mod common;

use easy_diagrams::classify::{
    classify_easy, classify_projective, classify_projectively_easy, classify_sphere, shift_completion,
    witness, Witness,
};
use easy_diagrams::duality::projective_to_affine;
use easy_diagrams::{
    CategoryTruncation, Family, FilteredClosure, PairingDiagram, Permutation, ProjClass,
    ProjectiveCategoryTruncation, QGClass, SphereClass,
};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn p(s: &str) -> Permutation {
    s.parse().unwrap()
}

/// Verdict read off the closure contents.
fn closure_verdict(gens: &[Permutation], cap: usize) -> SphereClass {
    let c = FilteredClosure::new(gens, cap).unwrap();
    if c.elements().any(|x| !x.is_parity_preserving()) {
        SphereClass::Classical
    } else if c.elements().any(|x| !x.is_identity()) {
        SphereClass::HalfLiberated
    } else {
        SphereClass::Free
    }
}

fn random_perm_set<R: Rng>(rng: &mut R) -> Vec<Permutation> {
    let count = rng.random_range(1..=2);
    (0..count)
        .map(|_| {
            let k = rng.random_range(2..=5);
            // Bias towards parity-preserving permutations so that every
            // verdict shows up.
            loop {
                let s = common::random_permutation(rng, k);
                if rng.random_bool(0.3) || s.is_parity_preserving() {
                    break s;
                }
            }
        })
        .collect()
}

#[test]
fn classifier_agrees_with_closure_contents() {
    for k in 1..=4 {
        for sigma in Permutation::all(k) {
            assert_eq!(classify_sphere(std::slice::from_ref(&sigma)), closure_verdict(std::slice::from_ref(&sigma), 6), "{sigma}");
        }
    }
}

#[test]
fn sphere_verdicts_are_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut seen = std::collections::BTreeSet::new();
    for case in 0..500 {
        let gens = random_perm_set(&mut rng);
        let verdict = classify_sphere(&gens);
        seen.insert(verdict);
        let g = gens.choose(&mut rng).unwrap();
        let h = gens.choose(&mut rng).unwrap();
        let transformed = match case % 5 {
            0 => g.pad_right(),
            1 => g.pad_left(),
            2 => g.inverse(),
            3 => Permutation::tensor(g, h),
            _ => {
                // Relabel by an element of the generated level.
                let cap = gens.iter().map(Permutation::len).max().unwrap();
                let c = FilteredClosure::new(&gens, cap).unwrap();
                let level: Vec<_> = c.level(g.len()).iter().cloned().collect();
                let x = level.choose(&mut rng).unwrap();
                Permutation::compose(&x.inverse(), &Permutation::compose(g, x).unwrap()).unwrap()
            }
        };
        let mut extended = gens.clone();
        extended.push(transformed.clone());
        assert_eq!(classify_sphere(&extended), verdict, "{gens:?} + {transformed}");
        if gens.len() == 1 && case % 5 != 4 {
            assert_eq!(classify_sphere(std::slice::from_ref(&transformed)), verdict, "{gens:?} -> {transformed}");
        }
    }
    assert_eq!(seen.len(), 3);
}

#[test]
fn adding_generators_never_frees() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..300 {
        let a = random_perm_set(&mut rng);
        let b = random_perm_set(&mut rng);
        let both: Vec<Permutation> = a.iter().chain(&b).cloned().collect();
        let v = classify_sphere(&both);
        assert!(v <= classify_sphere(&a));
        assert!(v <= classify_sphere(&b));
        assert_eq!(v, classify_sphere(&a).min(classify_sphere(&b)));
    }
}

#[test]
fn projective_verdicts_follow_the_sphere_trichotomy() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..200 {
        let k = 2 * rng.random_range(1..=3);
        let gens = vec![common::random_permutation(&mut rng, k)];
        let v = classify_projective(&gens).unwrap();
        let expected = match classify_sphere(&gens) {
            SphereClass::Classical => ProjClass::RealProjective,
            SphereClass::HalfLiberated => ProjClass::ComplexProjective,
            SphereClass::Free => ProjClass::FreeProjective,
        };
        assert_eq!(v.verdict, expected);
        let completed: Vec<Permutation> = shift_completion(&gens).into_iter().collect();
        let again = classify_projective(&completed).unwrap();
        assert_eq!(again.verdict, v.verdict);
        assert!(again.input_shift_stable);
    }
}

#[test]
fn easy_verdicts_are_invariant_under_category_operations() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for case in 0..300 {
        let family = Family::ALL[case % 3];
        let gens = common::random_generators(&mut rng, family, 6, false);
        let verdict = classify_easy(&gens);
        let g = gens.choose(&mut rng).unwrap();
        let extra = match case % 4 {
            0 => g.involution(),
            1 => g.rotate_ccw().or_else(|_| g.rotate_cw()).unwrap(),
            2 => PairingDiagram::tensor(g, &PairingDiagram::identity(1)),
            _ => PairingDiagram::tensor(g, g),
        };
        let mut extended = gens.clone();
        extended.push(extra);
        assert_eq!(classify_easy(&extended), verdict);
    }
}

#[test]
fn easy_verdicts_name_the_generated_category() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for trial in 0..6 {
        let family = Family::ALL[trial % 3];
        let gens = common::random_generators(&mut rng, family, 6, false);
        let c = CategoryTruncation::closure(&gens, 6).unwrap();
        let expected = match classify_easy(&gens) {
            QGClass::OPlus => Family::Noncrossing,
            QGClass::OStar => Family::Matching,
            QGClass::O => Family::All,
        };
        assert_eq!(expected, family);
        assert_eq!(c, CategoryTruncation::from_family(family, 6), "{gens:?}");
    }
}

#[test]
fn projectively_easy_verdicts_commute_with_reconstruction() {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    for trial in 0..9 {
        let family = Family::ALL[trial % 3];
        let gens = common::random_generators(&mut rng, family, 6, true);
        let verdict = classify_projectively_easy(&gens).unwrap();
        let e = ProjectiveCategoryTruncation::closure(&gens, 3).unwrap();
        let d = projective_to_affine(&e);
        let all: Vec<PairingDiagram> = d.diagrams().cloned().collect();
        assert_eq!(classify_easy(&all).projective(), verdict, "{gens:?}");
        // Below the top level the reconstruction is exactly the family.
        let reference = CategoryTruncation::from_family(family, 4);
        for (&(k, l), cell) in reference.cells() {
            assert_eq!(d.cell(k, l), Some(cell), "{gens:?} ({k},{l})");
        }
    }
}

#[test]
fn witnesses_corroborate_the_verdict() {
    for k in 2..=4 {
        for sigma in Permutation::all(k).into_iter().filter(|s| !s.is_identity()) {
            let w = witness(std::slice::from_ref(&sigma), 6).unwrap();
            let expected = if sigma.is_parity_preserving() { p("3,2,1") } else { p("2,1") };
            assert_eq!(w.target(), &expected);
            match w {
                Witness::Found { derivation, .. } => {
                    assert!(derivation.is_valid());
                    assert_eq!(derivation.target(), Some(&expected));
                }
                Witness::NotFoundWithinCap { .. } => panic!("{sigma}: no witness at cap 6"),
            }
        }
    }
    assert!(matches!(
        witness(&[p("3,2,5,4,1")], 4),
        Err(easy_diagrams::Error::CapTooSmall { .. })
    ));
}
