//! Canonical cascade codes, built by repeatedly peeling the canonical
//! root-vertex, and the genealogy they induce.

use crate::cascade::{expand_with_reference, CascadeCode, Pattern, Step};
use crate::error::{Error, Result};
use crate::map::PlanarMap;
use crate::rootcode::{invariant_root_code, Root};

/// Codes of the nested projections `P_1 ← P_2 ← … ← P_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Genealogy {
    pub prefixes: Vec<CascadeCode>,
}

/// A sub-map whose canonical code is already known: removing `vertex`
/// from the map being canonicalized yields a map isomorphic to `map`,
/// the expansion of `code`, whose last reference strand is `reference`.
pub(crate) struct KnownParent<'a> {
    pub vertex: usize,
    pub code: &'a CascadeCode,
    pub map: &'a PlanarMap,
    pub reference: usize,
}

pub fn canonical_code(map: &PlanarMap) -> Result<CascadeCode> {
    if !map.is_connected() {
        return Err(Error::Disconnected);
    }
    if map.crossing_count() > 1 && map.is_composite() {
        return Err(Error::Composite);
    }
    canonical_inner(map, None)
}

/// Like [`canonical_code`] for a prime connected map, reusing the known
/// code of the map left after removing `known.vertex`.
pub(crate) fn canonical_code_with(map: &PlanarMap, known: &KnownParent<'_>) -> Result<CascadeCode> {
    canonical_inner(map, Some(known))
}

fn canonical_inner(map: &PlanarMap, known: Option<&KnownParent<'_>>) -> Result<CascadeCode> {
    if map.crossing_count() == 1 {
        return Ok(CascadeCode::empty());
    }
    let (_, mut canonical) = invariant_root_code(map)?;
    if let Some(k) = known {
        // Prefer the known vertex as the representative of its class.
        canonical.sort_by_key(|r| r.vertex() != k.vertex);
    }
    let mut best: Option<CascadeCode> = None;
    for v in class_representatives(map, &canonical) {
        let peeled = map
            .remove_vertex(v)
            .map_err(|e| Error::Defect(format!("canonical root-vertex {v} cannot be peeled: {e}")))?;
        let pattern = Pattern::from_up_degree(peeled.up_degree)
            .ok_or_else(|| Error::Defect(format!("peeled crossing has {} up edges", peeled.up_degree)))?;
        let owned;
        let (code, parent_map, reference) = match known {
            Some(k) if k.vertex == v => (k.code, k.map, k.reference),
            _ => {
                let c = canonical_inner(&peeled.map, None)?;
                let (m, r) = expand_with_reference(&c)?;
                owned = (c, m);
                (&owned.0, &owned.1, r)
            }
        };
        let w = parent_map.leg_count();
        for g in peeled.map.isomorphisms(parent_map) {
            let q = g.apply_interval(peeled.block_start, peeled.up_degree);
            let shift = (q + w - reference) % w;
            let step = Step::new(pattern, shift);
            let better = match &best {
                None => true,
                Some(b) => {
                    let ord = code.steps.iter().chain([&step]).cmp(b.steps.iter());
                    ord.is_lt()
                }
            };
            if better {
                best = Some(code.pushed(step));
            }
        }
    }
    best.ok_or_else(|| Error::Defect("peeled map is not isomorphic to its own expansion".into()))
}

/// One root-vertex per automorphism class of canonical roots, keeping the
/// order of `canonical`.
fn class_representatives(map: &PlanarMap, canonical: &[Root]) -> Vec<usize> {
    let mut covered = vec![false; canonical.len()];
    let mut reps = Vec::new();
    for i in 0..canonical.len() {
        if covered[i] {
            continue;
        }
        let r0 = canonical[i];
        covered[i] = true;
        if !reps.contains(&r0.vertex()) {
            reps.push(r0.vertex());
        }
        for j in i + 1..canonical.len() {
            if covered[j] {
                continue;
            }
            let r = canonical[j];
            let flip = r.direction != r0.direction;
            if r.vertex() == r0.vertex() || map.rooted_isomorphism(map, r0.dart, r.dart, flip).is_some() {
                covered[j] = true;
            }
        }
    }
    reps
}

pub fn parent(code: &CascadeCode) -> Result<CascadeCode> {
    if code.steps.is_empty() {
        return Err(Error::NoParent(code.crossing_count()));
    }
    Ok(code.prefix(code.steps.len() - 1))
}

/// All prefixes of a canonical code, each checked to be canonical itself.
pub fn genealogy(code: &CascadeCode) -> Result<Genealogy> {
    let mut prefixes = Vec::with_capacity(code.crossing_count());
    for len in 0..=code.steps.len() {
        let p = code.prefix(len);
        let map = p.expand()?;
        if canonical_code(&map)? != p {
            return Err(Error::NotCanonical { prefix_len: len });
        }
        prefixes.push(p);
    }
    Ok(Genealogy { prefixes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cascade::Pattern::*;
    use crate::dihedral::DihedralElement;

    fn code(pairs: &[(Pattern, usize)]) -> CascadeCode {
        CascadeCode::from_pairs(pairs)
    }

    #[test]
    fn small_round_trips() {
        assert_eq!(canonical_code(&PlanarMap::single_crossing()).unwrap(), code(&[]));
        for c in [code(&[(X, 0)]), code(&[(P, 0)])] {
            assert_eq!(canonical_code(&c.expand().unwrap()).unwrap(), c);
        }
    }

    #[test]
    fn rejects_composite_and_disconnected() {
        let k1 = code(&[(Q, 0)]).expand().unwrap();
        assert!(matches!(canonical_code(&k1), Err(Error::Composite)));
    }

    #[test]
    fn canonical_form_is_dihedral_invariant() {
        let c = code(&[(P, 0), (X, 3), (P, 2)]);
        let m = c.expand().unwrap();
        let want = canonical_code(&m).unwrap();
        assert_eq!(want.crossing_count(), 4);
        for g in DihedralElement::all(m.leg_count()) {
            assert_eq!(canonical_code(&m.transformed(&g)).unwrap(), want, "{g}");
        }
        let again = canonical_code(&want.expand().unwrap()).unwrap();
        assert_eq!(again, want);
    }

    #[test]
    fn parents() {
        assert_eq!(parent(&code(&[(X, 0)])).unwrap(), code(&[]));
        assert_eq!(parent(&code(&[(X, 0), (P, 1)])).unwrap(), code(&[(X, 0)]));
        assert!(matches!(parent(&code(&[])), Err(Error::NoParent(1))));
    }

    #[test]
    fn genealogy_of_trivial_code() {
        let g = genealogy(&code(&[])).unwrap();
        assert_eq!(g.prefixes, vec![code(&[])]);
    }
}
