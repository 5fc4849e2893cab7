mod common;

use std::collections::BTreeSet;

use common::{all_valid_codes, is_prime, levels};
use tangle_core::enumerate::{children, enumerate_levels, extension_sites, Class, CountsTable};
use tangle_core::rootcode::{candidate_roots, face_code, label_vertices, symmetries};
use tangle_core::{
    canonical_code, genealogy, invariant_root_code, CascadeCode, DihedralElement, Pattern, PlanarMap, Root,
};

fn code(s: &str) -> CascadeCode {
    s.parse().unwrap()
}

#[test]
fn expansions_are_connected_with_expected_darts() {
    for n in 1..=5 {
        for c in all_valid_codes(n) {
            let m = c.expand().unwrap();
            let widths = c.width_profile().unwrap();
            assert!(m.is_connected(), "{c}");
            assert_eq!(m.crossing_count(), n);
            assert_eq!(m.leg_count(), *widths.last().unwrap());
            assert_eq!(4 * n, 2 * m.internal_edge_count() + m.leg_count());
        }
    }
}

#[test]
fn first_level_position_does_not_matter() {
    // Attaching the first level anywhere on the start crossing draws the
    // same projection up to a boundary symmetry.
    let one = PlanarMap::single_crossing();
    for up in 1..=3 {
        let base = invariant_or_none(&one.attach(up, 0).0);
        for p in 1..4 {
            assert!(one.attach(up, p).0.is_isomorphic(&one.attach(up, 0).0));
            assert_eq!(invariant_or_none(&one.attach(up, p).0), base);
        }
    }
}

fn invariant_or_none(m: &PlanarMap) -> Option<Vec<u8>> {
    is_prime(m).then(|| invariant_root_code(m).unwrap().0 .0)
}

#[test]
fn labeling_is_a_breadth_first_bijection() {
    for n in 1..=5 {
        for c in all_valid_codes(n) {
            let m = c.expand().unwrap();
            if !is_prime(&m) {
                continue;
            }
            for root in Root::all(&m) {
                let labels = label_vertices(&m, root).unwrap();
                let set: BTreeSet<usize> = labels.iter().copied().collect();
                assert_eq!(set, (1..=n).collect(), "{c}");
                assert_eq!(labels[root.vertex()], 1);
                // Every other crossing is reached from a smaller label.
                let adj = m.adjacency();
                for v in 0..n {
                    if labels[v] > 1 {
                        assert!((0..n).any(|w| adj[v] >> w & 1 == 1 && labels[w] < labels[v]));
                    }
                }
            }
        }
    }
}

#[test]
fn two_crossing_labels() {
    for c in [code("2;X 0"), code("2;P 0")] {
        let m = c.expand().unwrap();
        for root in Root::all(&m) {
            let labels = label_vertices(&m, root).unwrap();
            assert_eq!(labels[root.vertex()], 1);
            assert_eq!(labels[1 - root.vertex()], 2);
        }
    }
}

#[test]
fn single_crossing_codes() {
    let m = PlanarMap::single_crossing();
    for root in Root::all(&m) {
        assert_eq!(face_code(&m, root).unwrap().0, vec![2, 2, 2, 2]);
    }
    let (rc, roots) = invariant_root_code(&m).unwrap();
    assert_eq!(rc.to_string(), "0 0 0 0");
    assert_eq!(roots.len(), 8);
    assert_eq!(symmetries(&m).unwrap().len(), 8);
}

#[test]
fn root_set_is_never_empty_for_prime_maps() {
    let mut sizes = Vec::new();
    for level in levels(7) {
        for c in &level {
            let m = c.expand().unwrap();
            let r = candidate_roots(&m).unwrap();
            assert!(!r.is_empty());
            sizes.push(r.len());
        }
    }
    assert!(sizes.iter().all(|&s| s > 0));
}

#[test]
fn three_crossing_oracle_has_six_codes() {
    let codes: BTreeSet<Vec<u8>> = all_valid_codes(3)
        .iter()
        .map(|c| c.expand().unwrap())
        .filter(is_prime)
        .map(|m| invariant_root_code(&m).unwrap().0 .0)
        .collect();
    assert_eq!(codes.len(), 6);
}

#[test]
fn symmetry_groups_are_closed() {
    for level in levels(6) {
        for c in &level {
            let m = c.expand().unwrap();
            let g = symmetries(&m).unwrap();
            assert!(g.iter().any(DihedralElement::is_identity));
            for a in &g {
                assert!(g.contains(&a.inverse()));
                for b in &g {
                    assert!(g.contains(&a.compose(b)), "{c}");
                }
            }
        }
    }
}

#[test]
fn canonical_codes_draw_the_same_projection() {
    for n in 1..=5 {
        for c in all_valid_codes(n) {
            let m = c.expand().unwrap();
            if !is_prime(&m) {
                continue;
            }
            let canon = canonical_code(&m).unwrap();
            let again = canon.expand().unwrap();
            assert!(again.is_isomorphic(&m), "{c} -> {canon}");
            assert_eq!(invariant_root_code(&again).unwrap().0, invariant_root_code(&m).unwrap().0);
        }
    }
}

#[test]
fn genealogies() {
    for c in &levels(5)[4] {
        let g = genealogy(c).unwrap();
        assert_eq!(g.prefixes.len(), 5);
    }
    for c in &levels(3)[2] {
        let g = genealogy(c).unwrap();
        assert_eq!(g.prefixes.len(), 3);
        for p in &g.prefixes {
            assert!(p.width_profile().unwrap().iter().all(|&w| w >= 4), "{c}");
        }
    }
    // The six-crossing example: six nested ancestors ending at the start.
    let example = code("6;X 0;X 0;P 1;X 5;X 2");
    let canon = canonical_code(&example.expand().unwrap()).unwrap();
    let patterns: Vec<Pattern> = canon.steps.iter().map(|s| s.pattern).collect();
    assert_eq!(patterns, [Pattern::X, Pattern::X, Pattern::P, Pattern::X, Pattern::X]);
    let g = genealogy(&canon).unwrap();
    assert_eq!(g.prefixes.len(), 6);
    assert_eq!(g.prefixes[0], CascadeCode::empty());
    assert_eq!(canon.width_profile().unwrap(), vec![4, 4, 4, 6, 6, 6]);
}

#[test]
fn non_canonical_genealogy_names_the_prefix() {
    // A valid drawing whose code is not the canonical one.
    let c = all_valid_codes(4)
        .into_iter()
        .find(|c| {
            let m = c.expand().unwrap();
            is_prime(&m) && canonical_code(&m).unwrap() != *c
        })
        .unwrap();
    assert!(genealogy(&c).is_err());
    assert!(children(&c).is_err());
}

#[test]
fn asymmetric_parents_have_all_sites() {
    for c in &levels(5)[4] {
        let m = c.expand().unwrap();
        let g = symmetries(&m).unwrap();
        if g.len() == 1 {
            assert_eq!(extension_sites(&m, &g).len(), 3 * m.leg_count());
        }
    }
}

#[test]
fn children_split_by_legs() {
    let mut by_k = [0u64; 6];
    for parent in &levels(3)[2] {
        for c in children(parent).unwrap() {
            by_k[c.expand().unwrap().k()] += 1;
        }
    }
    assert_eq!(by_k[2..], [6, 8, 8, 5]);
}

#[test]
fn reduced_totals_to_five() {
    let mut t = CountsTable::new(Class::Reduced);
    enumerate_levels(5, |n, codes| t.tally_level(n, codes, PlanarMap::is_reduced)).unwrap();
    assert_eq!(t.totals(), vec![1, 1, 3, 8, 31]);
    let mut p = CountsTable::new(Class::Projections);
    enumerate_levels(5, |n, codes| p.tally_level(n, codes, |_| true)).unwrap();
    assert_eq!(p.totals(), vec![1, 2, 6, 27, 136]);
}

#[test]
fn two_crossing_reducedness() {
    assert!(code("2;P 0").expand().unwrap().is_reduced());
    assert!(!code("2;X 0").expand().unwrap().is_reduced());
    assert!(PlanarMap::single_crossing().is_reduced());
}
