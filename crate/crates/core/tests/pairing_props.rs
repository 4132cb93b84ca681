use std::collections::BTreeSet;

use easy_diagrams::pairing::{enumerate, Point};
use easy_diagrams::{CategoryTruncation, Family, PairingDiagram, Permutation};
use proptest::prelude::*;

fn pd(s: &str) -> PairingDiagram {
    s.parse().unwrap()
}

/// Random pairing with `k + l ≤ max_points`.
fn diagram_strategy(max_points: usize) -> impl Strategy<Value = PairingDiagram> {
    (0..=max_points / 2)
        .prop_flat_map(|m| (0..=2 * m).prop_map(move |k| (k, 2 * m - k)))
        .prop_flat_map(|(k, l)| diagram_of_shape(k, l))
}

fn diagram_of_shape(k: usize, l: usize) -> impl Strategy<Value = PairingDiagram> {
    Just((0..k + l).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(move |order| {
            let point = |i: usize| if i < k { Point::Upper(i + 1) } else { Point::Lower(i - k + 1) };
            let pairs: Vec<(Point, Point)> = order
                .chunks(2)
                .map(|c| (point(c[0]), point(c[1])))
                .collect();
            PairingDiagram::new(k, l, &pairs).unwrap()
        })
}

/// Two diagrams that can be stacked: `b` on top of `a`.
fn composable(max_points: usize) -> impl Strategy<Value = (PairingDiagram, PairingDiagram)> {
    (0..=max_points, 0..=max_points, 0..=max_points)
        .prop_filter("even shapes", |(x, m, y)| (x + m) % 2 == 0 && (m + y) % 2 == 0)
        .prop_flat_map(|(x, m, y)| (diagram_of_shape(m, x), diagram_of_shape(y, m)))
}

fn composable_triple() -> impl Strategy<Value = (PairingDiagram, PairingDiagram, PairingDiagram)> {
    (0..=4usize, 0..=4usize, 0..=4usize, 0..=4usize)
        .prop_filter("even shapes", |(a, b, c, d)| (a + b) % 2 == 0 && (b + c) % 2 == 0 && (c + d) % 2 == 0)
        .prop_flat_map(|(a, b, c, d)| (diagram_of_shape(b, a), diagram_of_shape(c, b), diagram_of_shape(d, c)))
}

/// Boundary order `u1 … uk, l_l … l1`, checked by a bracket scan.
fn noncrossing_oracle(d: &PairingDiagram) -> bool {
    let (k, l) = d.shape();
    let pos = |p: Point| match p {
        Point::Upper(i) => i - 1,
        Point::Lower(j) => k + l - j,
    };
    let mut partner = vec![0; k + l];
    for (a, b) in d.pairs() {
        partner[pos(a)] = pos(b);
        partner[pos(b)] = pos(a);
    }
    let mut stack = Vec::new();
    for (i, &j) in partner.iter().enumerate() {
        if j > i {
            stack.push(i);
        } else if stack.pop() != Some(j) {
            return false;
        }
    }
    true
}

/// Through strings join equal-parity positions, same-row strings join
/// opposite-parity positions.
fn matching_oracle(d: &PairingDiagram) -> bool {
    d.pairs().iter().all(|&(a, b)| match (a, b) {
        (Point::Upper(i), Point::Lower(j)) | (Point::Lower(j), Point::Upper(i)) => i % 2 == j % 2,
        (Point::Upper(i), Point::Upper(j)) | (Point::Lower(i), Point::Lower(j)) => i % 2 != j % 2,
    })
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let parent = self.0[x];
        if parent == x {
            return x;
        }
        let root = self.find(parent);
        self.0[x] = root;
        root
    }
    fn union(&mut self, x: usize, y: usize) {
        let (a, b) = (self.find(x), self.find(y));
        self.0[a] = b;
    }
}

/// Stacks `top` on `bottom` as a graph: top row of `top`, shared middle row,
/// bottom row of `bottom`. Returns the surviving pairs and the loop count.
fn compose_oracle(bottom: &PairingDiagram, top: &PairingDiagram) -> (BTreeSet<(Point, Point)>, usize) {
    let (k, m) = top.shape();
    let l = bottom.lower();
    // Nodes: 0..k top row, k..k+m middle, k+m..k+m+l bottom row.
    let mut uf = UnionFind::new(k + m + l);
    let top_node = |p: Point| match p {
        Point::Upper(i) => i - 1,
        Point::Lower(j) => k + j - 1,
    };
    let bottom_node = |p: Point| match p {
        Point::Upper(i) => k + i - 1,
        Point::Lower(j) => k + m + j - 1,
    };
    for (a, b) in top.pairs() {
        uf.union(top_node(a), top_node(b));
    }
    for (a, b) in bottom.pairs() {
        uf.union(bottom_node(a), bottom_node(b));
    }
    let outer: Vec<(usize, Point)> = (0..k)
        .map(|i| (i, Point::Upper(i + 1)))
        .chain((0..l).map(|j| (k + m + j, Point::Lower(j + 1))))
        .collect();
    let mut pairs = BTreeSet::new();
    for (x, &(nx, px)) in outer.iter().enumerate() {
        for &(ny, py) in &outer[x + 1..] {
            if uf.find(nx) == uf.find(ny) {
                pairs.insert((px, py));
            }
        }
    }
    let outer_roots: BTreeSet<usize> = outer.iter().map(|&(n, _)| uf.find(n)).collect();
    let middle_roots: BTreeSet<usize> = (k..k + m).map(|n| uf.find(n)).collect();
    let loops = middle_roots.difference(&outer_roots).count();
    (pairs, loops)
}

fn normalized_pairs(d: &PairingDiagram) -> BTreeSet<(Point, Point)> {
    d.pairs().into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect()
}

fn double_factorial(n: usize) -> usize {
    (1..=n).rev().step_by(2).product()
}

fn catalan(m: usize) -> usize {
    let mut c = vec![1usize; m + 1];
    for n in 1..=m {
        c[n] = (0..n).map(|i| c[i] * c[n - 1 - i]).sum();
    }
    c[m]
}

#[test]
fn family_counts() {
    for m in 0..=5 {
        let all = enumerate(2 * m, 0, Family::All).unwrap().len();
        let nc = enumerate(2 * m, 0, Family::Noncrossing).unwrap().len();
        let star = enumerate(2 * m, 0, Family::Matching).unwrap().len();
        assert_eq!(all, double_factorial(2 * m - usize::from(m > 0)).max(1), "m = {m}");
        assert_eq!(nc, catalan(m), "m = {m}");
        // Odd positions are matched bijectively with even ones.
        assert_eq!(star, (1..=m).product::<usize>(), "m = {m}");
    }
    assert_eq!(
        (1..=5).map(|m| enumerate(2 * m, 0, Family::All).unwrap().len()).collect::<Vec<_>>(),
        vec![1, 3, 15, 105, 945]
    );
    assert_eq!(
        (1..=5).map(|m| enumerate(2 * m, 0, Family::Noncrossing).unwrap().len()).collect::<Vec<_>>(),
        vec![1, 2, 5, 14, 42]
    );
    assert_eq!(enumerate(6, 0, Family::Matching).unwrap().len(), 6);
    assert!(enumerate(2, 1, Family::All).is_err());
}

#[test]
fn families_agree_with_oracles_and_nest() {
    for total in (0..=8).step_by(2) {
        for k in 0..=total {
            let l = total - k;
            let all = enumerate(k, l, Family::All).unwrap();
            assert_eq!(all.len(), double_factorial(total.saturating_sub(1)).max(1));
            let distinct: BTreeSet<_> = all.iter().collect();
            assert_eq!(distinct.len(), all.len());
            let nc: BTreeSet<_> = enumerate(k, l, Family::Noncrossing).unwrap().into_iter().collect();
            let star: BTreeSet<_> = enumerate(k, l, Family::Matching).unwrap().into_iter().collect();
            for d in &all {
                assert_eq!(nc.contains(d), noncrossing_oracle(d), "{d}");
                assert_eq!(star.contains(d), matching_oracle(d), "{d}");
            }
            assert!(nc.is_subset(&star));
        }
    }
}

#[test]
fn rotation_keeps_families() {
    for total in (2..=8).step_by(2) {
        for k in 1..=total {
            for d in enumerate(k, total - k, Family::All).unwrap() {
                let r = d.rotate_ccw().unwrap();
                assert_eq!(r.shape(), (k - 1, total - k + 1));
                assert_eq!(r.rotate_cw().unwrap(), d);
                assert_eq!(r.is_noncrossing(), d.is_noncrossing());
                assert_eq!(r.is_matching(), d.is_matching());
            }
        }
    }
    assert!(PairingDiagram::cup().rotate_ccw().is_err());
    assert!(PairingDiagram::cap().rotate_cw().is_err());
}

#[test]
fn permutations_are_pairings() {
    for k in 0..=5 {
        for sigma in Permutation::all(k) {
            let d = PairingDiagram::from_permutation(&sigma);
            assert_eq!(d.to_permutation(), Some(sigma.clone()));
            assert_eq!(d.through_strings(), k);
            assert_eq!(d.is_matching(), sigma.is_parity_preserving());
            assert_eq!(d.is_noncrossing(), sigma.is_identity());
        }
    }
    assert_eq!(PairingDiagram::cupcap().to_permutation(), None);
}

#[test]
fn category_closures_are_the_three_families() {
    let hl = PairingDiagram::from_permutation(&"3,2,1".parse().unwrap());
    let cases = [
        (vec![], Family::Noncrossing),
        (vec![hl], Family::Matching),
        (vec![PairingDiagram::crossing()], Family::All),
    ];
    for (gens, family) in cases {
        let c = CategoryTruncation::closure(&gens, 6).unwrap();
        let expected = CategoryTruncation::from_family(family, 6);
        assert_eq!(c.differing_cells(&expected), vec![]);
        assert_eq!(c, expected);
    }
}

#[test]
fn parse_errors() {
    for bad in ["u1-u1", "u1-l1,u1-l2", "x1-l1", "u1-l", "u1", "u0-l1", "u1-l1-l2"] {
        assert!(bad.parse::<PairingDiagram>().is_err(), "{bad}");
    }
    assert_eq!(pd("u1-l2,u2-l1"), PairingDiagram::crossing());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn compose_matches_graph_oracle((a, b) in composable(5)) {
        let (got, loops) = PairingDiagram::compose(&a, &b).unwrap();
        let (pairs, expected_loops) = compose_oracle(&a, &b);
        prop_assert_eq!(normalized_pairs(&got), pairs);
        prop_assert_eq!(loops, expected_loops);
        prop_assert_eq!(got.shape(), (b.upper(), a.lower()));
    }

    #[test]
    fn compose_is_associative_with_loops((a, b, c) in composable_triple()) {
        let (ab, x) = PairingDiagram::compose(&a, &b).unwrap();
        let (ab_c, y) = PairingDiagram::compose(&ab, &c).unwrap();
        let (bc, u) = PairingDiagram::compose(&b, &c).unwrap();
        let (a_bc, v) = PairingDiagram::compose(&a, &bc).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        prop_assert_eq!(x + y, u + v);
    }

    #[test]
    fn involution_reverses_composition((a, b) in composable(5)) {
        let (ab, loops) = PairingDiagram::compose(&a, &b).unwrap();
        let (ba, loops2) = PairingDiagram::compose(&b.involution(), &a.involution()).unwrap();
        prop_assert_eq!(ab.involution(), ba);
        prop_assert_eq!(loops, loops2);
    }

    #[test]
    fn tensor_interchange((a, b) in composable(3), (c, d) in composable(3)) {
        let (ab, x) = PairingDiagram::compose(&a, &b).unwrap();
        let (cd, y) = PairingDiagram::compose(&c, &d).unwrap();
        let (whole, z) = PairingDiagram::compose(
            &PairingDiagram::tensor(&a, &c),
            &PairingDiagram::tensor(&b, &d),
        ).unwrap();
        prop_assert_eq!(whole, PairingDiagram::tensor(&ab, &cd));
        prop_assert_eq!(z, x + y);
    }

    #[test]
    fn identities_are_neutral(d in diagram_strategy(8)) {
        let (k, l) = d.shape();
        prop_assert_eq!(PairingDiagram::compose(&d, &PairingDiagram::identity(k)).unwrap(), (d.clone(), 0));
        prop_assert_eq!(PairingDiagram::compose(&PairingDiagram::identity(l), &d).unwrap(), (d.clone(), 0));
        prop_assert_eq!(d.involution().involution(), d.clone());
        prop_assert_eq!(PairingDiagram::tensor(&d, &PairingDiagram::empty()), d);
    }

    #[test]
    fn families_are_closed_under_operations((a, b) in composable(4)) {
        let (ab, _) = PairingDiagram::compose(&a, &b).unwrap();
        let t = PairingDiagram::tensor(&a, &b);
        for family in Family::ALL {
            if a.is_in(family) && b.is_in(family) {
                prop_assert!(ab.is_in(family));
                prop_assert!(t.is_in(family));
                prop_assert!(a.involution().is_in(family));
            }
        }
    }

    #[test]
    fn display_round_trips(d in diagram_strategy(10)) {
        let text = d.to_string();
        prop_assert_eq!(text.parse::<PairingDiagram>().unwrap(), d);
    }
}
