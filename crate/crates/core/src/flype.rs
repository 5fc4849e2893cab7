//! Flype moves and flype classes of projections.
//!
//! A flype site is a disk inside the projection met by exactly four edges,
//! holding a pivot crossing and a core tangle. Two of the four edges end on
//! the pivot; the other two on the core. The move carries the pivot across
//! to the core's other pair of ends and turns the core over, which in the
//! projection mirrors it.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::canonical::canonical_code;
use crate::cascade::CascadeCode;
use crate::enumerate::CountsTable;
use crate::enumerate::Class;
use crate::error::{Error, Result};
use crate::map::{full_mask, reach, succ, vertex_of, End, PlanarMap};

/// A flype site. `cut` lists the four darts leaving the disk: the pivot's
/// two, in counterclockwise order, then the core's two, the first sharing
/// a face with the pivot's second.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FlypeSite {
    pub cut: [usize; 4],
    pub pivot: usize,
    pub core: Vec<usize>,
}

impl FlypeSite {
    fn core_mask(&self) -> u64 {
        self.core.iter().fold(0, |m, &v| m | 1 << v)
    }
}

/// Every flype site of a prime connected map. Only the side of the curve
/// away from the boundary circle is used as the disk.
pub fn flype_sites(map: &PlanarMap) -> Vec<FlypeSite> {
    let n = map.crossing_count();
    if n < 3 {
        return Vec::new();
    }
    let adj = map.adjacency();
    let all = full_mask(n);
    let faces = map.face_table().face_of;
    let mut out = Vec::new();
    for pivot in 0..n {
        let others = all & !(1 << pivot);
        // Enumerate non-empty subsets of the other crossings as the core.
        let mut core = others;
        while core != 0 {
            if let Some(site) = site_for(map, &adj, &faces, pivot, core) {
                out.push(site);
            }
            core = (core - 1) & others;
        }
    }
    out
}

fn leaving(map: &PlanarMap, d: usize, inside: u64) -> bool {
    match map.twin(d) {
        End::Leg(_) => true,
        End::Dart(e) => inside >> vertex_of(e) & 1 == 0,
    }
}

fn site_for(map: &PlanarMap, adj: &[u64], faces: &[usize], pivot: usize, core: u64) -> Option<FlypeSite> {
    let n = map.crossing_count();
    let inside = core | 1 << pivot;
    // The pivot's two outer darts must be adjacent.
    let p = 4 * pivot;
    let outer: Vec<usize> = (p..p + 4).filter(|&d| leaving(map, d, inside)).collect();
    if outer.len() != 2 {
        return None;
    }
    let o1 = if succ(outer[0]) == outer[1] { outer[0] } else { outer[1] };
    let o2 = succ(o1);
    if o2 != outer[0] && o2 != outer[1] {
        return None;
    }
    let ia = succ(o2);
    let ib = succ(ia);
    if map.neighbor(ia).map_or(true, |w| core >> w & 1 == 0) || map.neighbor(ib).map_or(true, |w| core >> w & 1 == 0) {
        return None;
    }
    let mut core_out = Vec::with_capacity(2);
    let mut bits = core;
    while bits != 0 {
        let v = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        for d in 4 * v..4 * v + 4 {
            if leaving(map, d, inside) {
                if core_out.len() == 2 {
                    return None;
                }
                core_out.push(d);
            }
        }
    }
    if core_out.len() != 2 {
        return None;
    }
    // Both sides of the curve must be connected (the boundary circle joins
    // everything outside), otherwise it is not a simple closed curve.
    if reach(adj, map.neighbor(ia)?, core) != core {
        return None;
    }
    let outside = full_mask(n) & !inside;
    if outside != 0 {
        let mut from_boundary = 0u64;
        for &d in map.legs() {
            let v = vertex_of(d);
            if outside >> v & 1 == 1 && from_boundary >> v & 1 == 0 {
                from_boundary |= reach(adj, v, outside);
            }
        }
        if from_boundary != outside {
            return None;
        }
    }
    // The core dart following the pivot along the face below it.
    let (x, y) = if faces[core_out[0]] == faces[ia] {
        (core_out[0], core_out[1])
    } else if faces[core_out[1]] == faces[ia] {
        (core_out[1], core_out[0])
    } else {
        return None;
    };
    let ring = [faces[o1], faces[o2], faces[x], faces[y]];
    if (0..4).any(|i| (i + 1..4).any(|j| ring[i] == ring[j])) {
        return None;
    }
    let mut core_list = Vec::new();
    let mut bits = core;
    while bits != 0 {
        core_list.push(bits.trailing_zeros() as usize);
        bits &= bits - 1;
    }
    Some(FlypeSite {
        cut: [o1, o2, x, y],
        pivot,
        core: core_list,
    })
}

/// Performs the flype. The pivot keeps its crossing index; the core's
/// rotations are reversed. Leg positions are unchanged.
pub fn apply_flype(map: &PlanarMap, site: &FlypeSite) -> Result<PlanarMap> {
    let n = map.crossing_count();
    let bad = |m: &str| Error::InvalidSite(m.to_string());
    let [o1, o2, x, y] = site.cut;
    let core = site.core_mask();
    if site.pivot >= n || site.core.iter().any(|&v| v >= n || v == site.pivot) || core == 0 {
        return Err(bad("crossing out of range"));
    }
    if vertex_of(o1) != site.pivot || succ(o1) != o2 {
        return Err(bad("pivot darts are not adjacent"));
    }
    if core >> vertex_of(x) & 1 == 0 || core >> vertex_of(y) & 1 == 0 || x == y {
        return Err(bad("cut darts do not leave the core"));
    }
    let ia = succ(o2);
    let ib = succ(ia);
    let (a, b) = match (map.twin(ia), map.twin(ib)) {
        (End::Dart(a), End::Dart(b)) if core >> vertex_of(a) & 1 == 1 && core >> vertex_of(b) & 1 == 1 => (a, b),
        _ => return Err(bad("pivot is not joined to the core twice")),
    };
    let inside = core | 1 << site.pivot;
    for v in (0..n).filter(|v| inside >> v & 1 == 1) {
        for d in 4 * v..4 * v + 4 {
            let expected = d == o1 || d == o2 || d == x || d == y;
            if leaving(map, d, inside) != expected {
                return Err(bad("the disk is not met by exactly the four cut edges"));
            }
        }
    }
    let in_core = |d: usize| core >> vertex_of(d) & 1 == 1;
    let mirror = |d: usize| if in_core(d) { (d & !3) | ((4 - (d & 3)) & 3) } else { d };

    let mut twin: Vec<End> = (0..map.dart_count()).map(|d| map.twin(d)).collect();
    let mut legs = map.legs().to_vec();
    // Inside the core every dart and its partner are mirrored.
    let mut next = vec![End::Leg(usize::MAX); twin.len()];
    for d in 0..twin.len() {
        if in_core(d) {
            next[mirror(d)] = match twin[d] {
                End::Dart(e) if in_core(e) => End::Dart(mirror(e)),
                other => other,
            };
        } else if vertex_of(d) != site.pivot {
            next[d] = twin[d];
        }
    }
    let link = |d: usize, end: End, next: &mut Vec<End>, legs: &mut Vec<usize>| {
        next[d] = end;
        match end {
            End::Dart(e) => next[e] = End::Dart(d),
            End::Leg(p) => legs[p] = d,
        }
    };
    let (e1, e2, e3, e4) = (twin[o1], twin[o2], twin[x], twin[y]);
    // The outer ends the pivot used now meet the core's former pivot ends.
    link(mirror(a), e1, &mut next, &mut legs);
    link(mirror(b), e2, &mut next, &mut legs);
    // The pivot sits between the core's former outer darts and their ends.
    link(o1, End::Dart(mirror(x)), &mut next, &mut legs);
    link(o2, End::Dart(mirror(y)), &mut next, &mut legs);
    link(ia, e3, &mut next, &mut legs);
    link(ib, e4, &mut next, &mut legs);
    twin = next;
    let out = PlanarMap::new(twin, legs)?;
    if out.crossing_count() != n || out.leg_count() != map.leg_count() {
        return Err(Error::Defect("flype changed the crossing or leg count".into()));
    }
    if !out.is_connected() || out.is_composite() {
        return Err(Error::Defect("flype produced a composite or disconnected map".into()));
    }
    Ok(out)
}

/// The site of `flyped` (the result of flyping at `site`) that undoes the
/// move: same pivot and core, seen from the other side.
pub fn transported_site(flyped: &PlanarMap, site: &FlypeSite) -> Option<FlypeSite> {
    flype_sites(flyped)
        .into_iter()
        .find(|s| s.pivot == site.pivot && s.core == site.core)
}

/// Canonical codes of every map flype-equivalent to `code`.
pub fn flype_class(code: &CascadeCode) -> Result<BTreeSet<CascadeCode>> {
    let start = canonical_code(&code.expand()?)?;
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(c) = queue.pop_front() {
        for next in flype_neighbors(&c)? {
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Ok(seen)
}

/// Canonical codes one flype away from `code`.
pub fn flype_neighbors(code: &CascadeCode) -> Result<Vec<CascadeCode>> {
    let map = code.expand()?;
    let mut out = Vec::new();
    for site in flype_sites(&map) {
        let c = canonical_code(&apply_flype(&map, &site)?)?;
        if c != *code && !out.contains(&c) {
            out.push(c);
        }
    }
    Ok(out)
}

/// Flype neighbours of every code, computed on `workers` threads.
fn all_neighbors(codes: &[CascadeCode], workers: usize) -> Result<Vec<Vec<CascadeCode>>> {
    let workers = workers.max(1);
    if workers == 1 || codes.len() < 2 * workers {
        return codes.iter().map(flype_neighbors).collect();
    }
    let parts: Vec<Result<Vec<(usize, Vec<CascadeCode>)>>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                s.spawn(move || {
                    (w..codes.len())
                        .step_by(workers)
                        .map(|i| Ok((i, flype_neighbors(&codes[i])?)))
                        .collect()
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Err(Error::Defect("worker panicked".into()))))
            .collect()
    });
    let mut out = vec![Vec::new(); codes.len()];
    for p in parts {
        for (i, v) in p? {
            out[i] = v;
        }
    }
    Ok(out)
}

/// Flype orbits of one level of canonical codes (all sharing `n`), each
/// listed with its least code first.
pub fn orbits(codes: &[CascadeCode]) -> Result<Vec<Vec<CascadeCode>>> {
    orbits_with(codes, 1)
}

/// [`orbits`] with the flype moves spread over `workers` threads.
pub fn orbits_with(codes: &[CascadeCode], workers: usize) -> Result<Vec<Vec<CascadeCode>>> {
    let index: HashMap<&CascadeCode, usize> = codes.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut parent: Vec<usize> = (0..codes.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for (i, (c, nbrs)) in codes.iter().zip(all_neighbors(codes, workers)?).enumerate() {
        for next in nbrs {
            let j = *index
                .get(&next)
                .ok_or_else(|| Error::Defect(format!("flype of {c} left the level: {next}")))?;
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for i in 0..codes.len() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    let mut out: Vec<Vec<CascadeCode>> = groups
        .into_values()
        .map(|mut g| {
            g.sort_by(|&i, &j| codes[i].cmp(&codes[j]));
            g.into_iter().map(|i| codes[i].clone()).collect()
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Adds the per-`k` orbit counts of one level to `table`.
pub fn tally_orbits(
    table: &mut CountsTable,
    n: usize,
    codes: &[CascadeCode],
    workers: usize,
) -> Result<Vec<Vec<CascadeCode>>> {
    debug_assert_eq!(table.class, Class::Alternating);
    let orbits = orbits_with(codes, workers)?;
    table.entries.entry((n, 2)).or_insert(0);
    for o in &orbits {
        table.add(n, o[0].expand()?.k(), 1);
    }
    Ok(orbits)
}

/// Orbit dump line: representative first, then the other members.
pub fn orbit_line(orbit: &[CascadeCode]) -> String {
    orbit.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("\t")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cascade::Pattern::*;
    use crate::enumerate::enumerate_levels;
    use crate::rootcode::invariant_root_code;

    fn level(n: usize) -> Vec<CascadeCode> {
        let mut out = Vec::new();
        enumerate_levels(n, |m, codes| {
            if m == n {
                out = codes.to_vec();
            }
            Ok(())
        })
        .unwrap();
        out
    }

    #[test]
    fn small_maps_have_no_sites() {
        for c in level(2) {
            assert!(flype_sites(&c.expand().unwrap()).is_empty());
            assert_eq!(flype_class(&c).unwrap().len(), 1);
        }
    }

    #[test]
    fn maximal_leg_maps_have_no_sites() {
        for c in level(5) {
            let m = c.expand().unwrap();
            if m.k() == 6 {
                assert!(flype_sites(&m).is_empty(), "{c}");
            }
        }
    }

    #[test]
    fn four_crossing_two_leg_pair_merges_once() {
        let codes: Vec<CascadeCode> = level(4)
            .into_iter()
            .filter(|c| c.expand().unwrap().k() == 2)
            .collect();
        assert_eq!(codes.len(), 6);
        assert!(codes.iter().any(|c| !flype_sites(&c.expand().unwrap()).is_empty()));
        let orbits = orbits(&codes).unwrap();
        assert_eq!(orbits.len(), 5);
        assert_eq!(orbits.iter().filter(|o| o.len() == 2).count(), 1);
    }

    #[test]
    fn flype_preserves_counts_and_undoes_itself() {
        for c in level(5) {
            let m = c.expand().unwrap();
            let faces = m.face_table().degree.len();
            for site in flype_sites(&m) {
                let f = apply_flype(&m, &site).unwrap();
                assert_eq!((f.crossing_count(), f.k()), (m.crossing_count(), m.k()));
                assert_eq!(f.face_table().degree.len(), faces);
                let back_site = transported_site(&f, &site).expect("transported site");
                let back = apply_flype(&f, &back_site).unwrap();
                assert_eq!(
                    invariant_root_code(&back).unwrap().0,
                    invariant_root_code(&m).unwrap().0,
                    "{c}"
                );
            }
        }
    }

    #[test]
    fn malformed_site_is_rejected() {
        let m = CascadeCode::from_pairs(&[(X, 0), (X, 1), (X, 2)]).expand().unwrap();
        let site = FlypeSite {
            cut: [0, 2, 4, 5],
            pivot: 0,
            core: vec![1],
        };
        assert!(matches!(apply_flype(&m, &site), Err(Error::InvalidSite(_))));
    }

    #[test]
    fn orbit_dump_line() {
        let a = CascadeCode::from_pairs(&[(X, 0)]);
        let b = CascadeCode::from_pairs(&[(P, 0)]);
        assert_eq!(orbit_line(&[a, b]), "2;X 0\t2;P 0");
    }
}
