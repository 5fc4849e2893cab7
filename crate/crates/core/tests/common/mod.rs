#![allow(dead_code)]

use tangle_core::enumerate::enumerate_levels;
use tangle_core::{CascadeCode, DihedralElement, Pattern, PlanarMap, Step};

/// Every valid code with exactly `n` crossings (all patterns, all shifts).
pub fn all_valid_codes(n: usize) -> Vec<CascadeCode> {
    let mut level = vec![CascadeCode::empty()];
    for _ in 1..n {
        let mut next = Vec::new();
        for c in &level {
            let w = *c.validate().unwrap().last().unwrap();
            let shifts = if c.steps.is_empty() { 1 } else { w };
            for p in Pattern::ALL {
                for m in 0..shifts {
                    let d = c.pushed(Step::new(p, m));
                    if d.validate().is_ok() {
                        next.push(d);
                    }
                }
            }
        }
        level = next;
    }
    level
}

/// Enumerated levels `1..=n_max`; entry `i` holds the codes with `i + 1`
/// crossings.
pub fn levels(n_max: usize) -> Vec<Vec<CascadeCode>> {
    let mut out = Vec::new();
    enumerate_levels(n_max, |_, codes| {
        out.push(codes.to_vec());
        Ok(())
    })
    .unwrap();
    out
}

pub fn is_prime(m: &PlanarMap) -> bool {
    m.is_connected() && (m.crossing_count() == 1 || !m.is_composite())
}

/// All relabelings of `m`: every boundary symmetry composed with a
/// renumbering of the crossings.
pub fn relabelings(m: &PlanarMap, perm: &[usize]) -> Vec<PlanarMap> {
    DihedralElement::all(m.leg_count())
        .map(|g| m.transformed(&g).relabeled(perm))
        .collect()
}

/// A fixed non-trivial renumbering of `n` crossings.
pub fn reversal(n: usize) -> Vec<usize> {
    (0..n).rev().collect()
}
