//! Generation of all prime connected projections by canonical augmentation.
//!
//! A projection with `n + 1` crossings is produced from its parent (the
//! prefix of its canonical code) by adding one level. A child survives
//! only if the new crossing is in the restricted root set, the child is
//! prime, the new crossing is a canonical root-vertex and the child's
//! canonical code extends the parent's code.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::canonical::{canonical_code, canonical_code_with, KnownParent};
use crate::cascade::{expand_with_reference, CascadeCode, Pattern};
use crate::dihedral::DihedralElement;
use crate::error::{Error, Result};
use crate::map::PlanarMap;
use crate::rootcode::{candidate_roots_with, least_code_among, symmetries_from, invariant_root_code};

/// Where a new level is attached: `pattern.up_degree()` consecutive legs
/// starting at `position`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtensionSite {
    pub pattern: Pattern,
    pub position: usize,
}

/// One site per orbit of the boundary symmetry group acting on all
/// `3 · 2k` raw sites.
pub fn extension_sites(map: &PlanarMap, symmetries: &[DihedralElement]) -> Vec<ExtensionSite> {
    let l = map.leg_count();
    let mut out = Vec::with_capacity(3 * l);
    for pattern in Pattern::ALL {
        let up = pattern.up_degree();
        if up > l {
            continue;
        }
        let mut seen = vec![false; l];
        for position in 0..l {
            if seen[position] {
                continue;
            }
            seen[position] = true;
            for g in symmetries {
                seen[g.apply_interval(position, up)] = true;
            }
            out.push(ExtensionSite { pattern, position });
        }
    }
    out
}

/// Canonical children of a canonical code.
pub fn children(parent: &CascadeCode) -> Result<Vec<CascadeCode>> {
    let map = parent.expand()?;
    if canonical_code(&map)? != *parent {
        return Err(Error::NotCanonical {
            prefix_len: parent.steps.len(),
        });
    }
    children_of_canonical(parent)
}

/// [`children`] without re-checking that `parent` is canonical.
pub fn children_of_canonical(parent: &CascadeCode) -> Result<Vec<CascadeCode>> {
    let (map, reference) = expand_with_reference(parent)?;
    let n = map.crossing_count();
    let symmetries = if n == 1 {
        DihedralElement::all(4).collect()
    } else {
        let (_, canonical) = invariant_root_code(&map)?;
        symmetries_from(&map, &canonical)
    };
    let known = KnownParent {
        vertex: n,
        code: parent,
        map: &map,
        reference,
    };
    let mut out = Vec::new();
    for site in extension_sites(&map, &symmetries) {
        let (child, _) = map.attach(site.pattern.up_degree(), site.position);
        if let Some(code) = accept_child(&child, &known)? {
            if !out.contains(&code) {
                out.push(code);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Applies the rejection rules to a child whose last crossing is new.
fn accept_child(child: &PlanarMap, known: &KnownParent<'_>) -> Result<Option<CascadeCode>> {
    let v = known.vertex;
    let table = child.face_table();
    // Composite children can have an empty root set; they are rejected anyway.
    let Ok(roots) = candidate_roots_with(child, &table) else {
        return Ok(None);
    };
    if !roots.iter().any(|r| r.vertex() == v) {
        return Ok(None);
    }
    if child.is_composite() {
        return Ok(None);
    }
    let (_, canonical) = least_code_among(child, &roots)?;
    if !canonical.iter().any(|r| r.vertex() == v) {
        return Ok(None);
    }
    let code = canonical_code_with(child, known)?;
    if code.steps[..code.steps.len() - 1] != known.code.steps[..] {
        return Ok(None);
    }
    Ok(Some(code))
}

/// Crossing counts at which a projection with `n` crossings can be
/// generated; `2k` never exceeds `2n + 2`.
pub fn max_k(n: usize) -> usize {
    n + 1
}

/// Breadth-first generation of every level up to `n_max`. `visit` sees
/// each level (crossing count and its canonical codes, sorted) once.
pub fn enumerate_levels<F>(n_max: usize, mut visit: F) -> Result<()>
where
    F: FnMut(usize, &[CascadeCode]) -> Result<()>,
{
    enumerate_from(vec![CascadeCode::empty()], n_max, 1, &mut visit)
}

/// Continues generation from a complete level of canonical codes, spreading
/// the parents of each level over `workers` threads.
pub fn enumerate_from<F>(mut level: Vec<CascadeCode>, n_max: usize, workers: usize, visit: &mut F) -> Result<()>
where
    F: FnMut(usize, &[CascadeCode]) -> Result<()>,
{
    let Some(first) = level.first() else {
        return Ok(());
    };
    let mut n = first.crossing_count();
    if n > n_max {
        return Ok(());
    }
    visit(n, &level)?;
    while n < n_max {
        level = next_level(&level, workers)?;
        n += 1;
        visit(n, &level)?;
    }
    Ok(())
}

/// All canonical children of a level, sorted.
pub fn next_level(level: &[CascadeCode], workers: usize) -> Result<Vec<CascadeCode>> {
    let workers = workers.max(1);
    let mut next = if workers == 1 || level.len() < 2 * workers {
        let mut out = Vec::new();
        for parent in level {
            out.extend(children_of_canonical(parent)?);
        }
        out
    } else {
        // Interleave parents so each worker gets a similar mix.
        let parts: Vec<Result<Vec<CascadeCode>>> = std::thread::scope(|s| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    s.spawn(move || {
                        let mut out = Vec::new();
                        for parent in level.iter().skip(w).step_by(workers) {
                            out.extend(children_of_canonical(parent)?);
                        }
                        Ok(out)
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().unwrap_or_else(|_| Err(Error::Defect("worker panicked".into()))))
                .collect()
        });
        let mut out = Vec::new();
        for p in parts {
            out.extend(p?);
        }
        out
    };
    next.sort_unstable();
    Ok(next)
}

/// Projection classes that can be counted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Class {
    /// All prime connected projections.
    Projections,
    /// Flype classes of projections.
    Alternating,
    /// Projections without bigons.
    Reduced,
    /// Projections where no crossing carries two legs.
    WeakFilter,
}

impl Class {
    pub const ALL: [Class; 4] = [Class::Projections, Class::Alternating, Class::Reduced, Class::WeakFilter];

    pub fn tag(self) -> &'static str {
        match self {
            Class::Projections => "proj",
            Class::Alternating => "alt",
            Class::Reduced => "reduced",
            Class::WeakFilter => "weakfilter",
        }
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Class {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Class::ALL
            .into_iter()
            .find(|c| c.tag() == s)
            .ok_or_else(|| Error::Parse(format!("unknown class {s:?}")))
    }
}

/// Counts per `(n, k)` for one class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountsTable {
    pub class: Class,
    pub entries: BTreeMap<(usize, usize), u64>,
}

impl CountsTable {
    pub fn new(class: Class) -> Self {
        CountsTable {
            class,
            entries: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, n: usize, k: usize, count: u64) {
        *self.entries.entry((n, k)).or_insert(0) += count;
    }

    pub fn get(&self, n: usize, k: usize) -> u64 {
        self.entries.get(&(n, k)).copied().unwrap_or(0)
    }

    pub fn total(&self, n: usize) -> u64 {
        self.entries
            .range((n, 0)..=(n, usize::MAX))
            .map(|(_, &c)| c)
            .sum()
    }

    pub fn max_n(&self) -> usize {
        self.entries.keys().map(|&(n, _)| n).max().unwrap_or(0)
    }

    pub fn totals(&self) -> Vec<u64> {
        (1..=self.max_n()).map(|n| self.total(n)).collect()
    }

    /// Tallies one level of codes with a per-map predicate.
    pub fn tally_level<F>(&mut self, n: usize, codes: &[CascadeCode], mut keep: F) -> Result<()>
    where
        F: FnMut(&PlanarMap) -> bool,
    {
        // Make the level visible even when empty.
        self.entries.entry((n, 2)).or_insert(0);
        for c in codes {
            let m = c.expand()?;
            if keep(&m) {
                self.add(n, m.k(), 1);
            }
        }
        Ok(())
    }
}

/// Candidate representatives of weak equivalence classes: no crossing
/// carries two or more legs. The single crossing is accepted as the
/// trivial class.
pub fn weak_filter(map: &PlanarMap) -> bool {
    map.crossing_count() == 1 || (0..map.crossing_count()).all(|v| map.legs_at(v) <= 1)
}
