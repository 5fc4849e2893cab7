//! Root-induced labelings and the invariant root-code of a projection.
//!
//! A root is a crossing, one of its darts and one of the two faces beside
//! that dart; the face fixes the labeling direction. Each root numbers the
//! crossings breadth-first and yields an adjacency list (the root-code).
//! The invariant root-code is the least root-code over the restricted root
//! set R: roots at boundary, non-cut crossings with the most legs whose
//! boundary face-code is least.

use std::cmp::Ordering;
use std::fmt;

use crate::dihedral::DihedralElement;
use crate::error::{Error, Result};
use crate::map::{pred, succ, vertex_of, End, FaceTable, PlanarMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Ccw,
    Cw,
}

impl Direction {
    #[inline]
    fn step(self, d: usize) -> usize {
        match self {
            Direction::Ccw => succ(d),
            Direction::Cw => pred(d),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    pub dart: usize,
    pub direction: Direction,
}

impl Root {
    pub fn new(dart: usize, direction: Direction) -> Self {
        Root { dart, direction }
    }

    pub fn vertex(&self) -> usize {
        vertex_of(self.dart)
    }

    /// Face id (in `table`) of the root face: the sector swept from the
    /// root dart in the labeling direction.
    pub fn face(&self, table: &FaceTable) -> usize {
        match self.direction {
            Direction::Ccw => table.face_of[succ(self.dart)],
            Direction::Cw => table.face_of[self.dart],
        }
    }

    /// All `8n` roots of a map.
    pub fn all(map: &PlanarMap) -> impl Iterator<Item = Root> {
        (0..map.dart_count())
            .flat_map(|d| [Root::new(d, Direction::Ccw), Root::new(d, Direction::Cw)])
    }
}

/// Flattened adjacency list, four entries per crossing; 0 marks a leg.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootCode(pub Vec<u8>);

impl fmt::Display for RootCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// Edge degrees of the boundary faces, read in the labeling direction from
/// the root face.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceCode(pub Vec<usize>);

/// Numbering induced by `root`: `labels[v]` is in `1..=n`, the root
/// crossing gets 1. Crossings are numbered in increasing order of the
/// crossing that reaches them; around each crossing the scan follows the
/// labeling direction starting at the dart it was first reached through.
pub fn label_vertices(map: &PlanarMap, root: Root) -> Result<Vec<usize>> {
    let n = map.crossing_count();
    let mut labels = vec![0u8; n];
    let mut order = vec![0usize; n];
    let count = labeling(map, root, &mut labels, &mut order);
    if count != n {
        return Err(Error::Disconnected);
    }
    Ok(labels.into_iter().map(usize::from).collect())
}

/// Fills `labels` (0 = unlabeled) and `order` (crossing numbered `i + 1`
/// together with its entry dart, packed as a dart) and returns how many
/// crossings were reached.
fn labeling(map: &PlanarMap, root: Root, labels: &mut [u8], order: &mut [usize]) -> usize {
    labels.iter_mut().for_each(|x| *x = 0);
    let dir = root.direction;
    labels[root.vertex()] = 1;
    order[0] = root.dart;
    let mut count = 1;
    let mut head = 0;
    while head < count {
        let entry = order[head];
        head += 1;
        let mut d = entry;
        for _ in 0..4 {
            if let End::Dart(t) = map.twin(d) {
                let w = vertex_of(t);
                if labels[w] == 0 {
                    count += 1;
                    labels[w] = count as u8;
                    order[count - 1] = t;
                }
            }
            d = dir.step(d);
        }
    }
    count
}

fn write_code(map: &PlanarMap, root: Root, labels: &[u8], order: &[usize], out: &mut Vec<u8>) {
    out.clear();
    let dir = root.direction;
    for &entry in order {
        let mut line = [0u8; 4];
        let mut d = entry;
        for x in line.iter_mut() {
            *x = match map.twin(d) {
                End::Dart(t) => labels[vertex_of(t)],
                End::Leg(_) => 0,
            };
            d = dir.step(d);
        }
        out.extend_from_slice(&min_rotation(line));
    }
}

#[inline]
fn min_rotation(line: [u8; 4]) -> [u8; 4] {
    let mut best = line;
    for r in 1..4 {
        let cand = [line[r], line[(r + 1) & 3], line[(r + 2) & 3], line[(r + 3) & 3]];
        if cand < best {
            best = cand;
        }
    }
    best
}

pub fn root_code(map: &PlanarMap, root: Root) -> Result<RootCode> {
    let n = map.crossing_count();
    let mut labels = vec![0u8; n];
    let mut order = vec![0usize; n];
    if labeling(map, root, &mut labels, &mut order) != n {
        return Err(Error::Disconnected);
    }
    let mut out = Vec::with_capacity(4 * n);
    write_code(map, root, &labels, &order, &mut out);
    Ok(RootCode(out))
}

/// Reusable buffers for evaluating many roots of one map.
pub(crate) struct RootCoder<'a> {
    map: &'a PlanarMap,
    labels: Vec<u8>,
    order: Vec<usize>,
}

impl<'a> RootCoder<'a> {
    pub(crate) fn new(map: &'a PlanarMap) -> Self {
        let n = map.crossing_count();
        RootCoder {
            map,
            labels: vec![0; n],
            order: vec![0; n],
        }
    }

    pub(crate) fn code_into(&mut self, root: Root, out: &mut Vec<u8>) -> Result<()> {
        let n = self.map.crossing_count();
        if labeling(self.map, root, &mut self.labels, &mut self.order) != n {
            return Err(Error::Disconnected);
        }
        write_code(self.map, root, &self.labels, &self.order, out);
        Ok(())
    }
}

pub fn face_code(map: &PlanarMap, root: Root) -> Result<FaceCode> {
    let table = map.face_table();
    let j = table.boundary_index[root.face(&table)].ok_or(Error::NotBoundaryFace)?;
    let degs: Vec<usize> = table.boundary_faces.iter().map(|&f| table.degree[f]).collect();
    let l = degs.len();
    let code = (0..l)
        .map(|i| match root.direction {
            Direction::Ccw => degs[(j + i) % l],
            Direction::Cw => degs[(j + l - i) % l],
        })
        .collect();
    Ok(FaceCode(code))
}

/// Compares the boundary degree sequence read from `(j1, d1)` with the one
/// read from `(j2, d2)`.
#[inline]
fn cmp_face_codes(degs: &[usize], j1: usize, d1: Direction, j2: usize, d2: Direction) -> Ordering {
    let l = degs.len();
    let at = |j: usize, d: Direction, i: usize| match d {
        Direction::Ccw => degs[(j + i) % l],
        Direction::Cw => degs[(j + l - i) % l],
    };
    for i in 0..l {
        match at(j1, d1, i).cmp(&at(j2, d2, i)) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    Ordering::Equal
}

/// The restricted root set R.
pub fn candidate_roots(map: &PlanarMap) -> Result<Vec<Root>> {
    let table = map.face_table();
    candidate_roots_with(map, &table)
}

pub(crate) fn candidate_roots_with(map: &PlanarMap, table: &FaceTable) -> Result<Vec<Root>> {
    let n = map.crossing_count();
    let cut = map.cut_mask();
    let mut best_legs = 0;
    let mut vertices = 0u64;
    for v in 0..n {
        if cut >> v & 1 == 1 {
            continue;
        }
        let legs = map.legs_at(v);
        if legs == 0 || legs < best_legs {
            continue;
        }
        if legs > best_legs {
            best_legs = legs;
            vertices = 0;
        }
        vertices |= 1 << v;
    }
    if vertices == 0 {
        return Err(Error::Defect("no boundary non-cut crossing".into()));
    }
    let degs: Vec<usize> = table.boundary_faces.iter().map(|&f| table.degree[f]).collect();
    let mut best: Option<(usize, Direction)> = None;
    let mut out = Vec::new();
    let mut vs = vertices;
    while vs != 0 {
        let v = vs.trailing_zeros() as usize;
        vs &= vs - 1;
        for d in 4 * v..4 * v + 4 {
            for dir in [Direction::Ccw, Direction::Cw] {
                let root = Root::new(d, dir);
                let Some(j) = table.boundary_index[root.face(table)] else {
                    continue;
                };
                let ord = match best {
                    None => Ordering::Less,
                    Some((bj, bd)) => cmp_face_codes(&degs, j, dir, bj, bd),
                };
                match ord {
                    Ordering::Less => {
                        best = Some((j, dir));
                        out.clear();
                        out.push(root);
                    }
                    Ordering::Equal => out.push(root),
                    Ordering::Greater => {}
                }
            }
        }
    }
    if out.is_empty() {
        return Err(Error::Defect("restricted root set is empty".into()));
    }
    Ok(out)
}

/// Least root-code over R, and the canonical roots attaining it.
pub fn invariant_root_code(map: &PlanarMap) -> Result<(RootCode, Vec<Root>)> {
    let roots = candidate_roots(map)?;
    least_code_among(map, &roots)
}

pub(crate) fn least_code_among(map: &PlanarMap, roots: &[Root]) -> Result<(RootCode, Vec<Root>)> {
    let mut coder = RootCoder::new(map);
    let mut best: Vec<u8> = Vec::new();
    let mut buf = Vec::with_capacity(4 * map.crossing_count());
    let mut canonical = Vec::new();
    for &r in roots {
        coder.code_into(r, &mut buf)?;
        if canonical.is_empty() || buf < best {
            std::mem::swap(&mut best, &mut buf);
            canonical.clear();
            canonical.push(r);
        } else if buf == best {
            canonical.push(r);
        }
    }
    Ok((RootCode(best), canonical))
}

/// Boundary actions of the automorphisms of a prime connected map. Every
/// automorphism sends canonical roots to canonical roots, so it is found by
/// testing which canonical root a fixed one can be carried to.
pub fn symmetries(map: &PlanarMap) -> Result<Vec<DihedralElement>> {
    let (_, canonical) = invariant_root_code(map)?;
    Ok(symmetries_from(map, &canonical))
}

pub(crate) fn symmetries_from(map: &PlanarMap, canonical: &[Root]) -> Vec<DihedralElement> {
    let r0 = canonical[0];
    let mut out: Vec<DihedralElement> = Vec::with_capacity(canonical.len());
    for r in canonical {
        let flip = r.direction != r0.direction;
        if let Some(g) = map.rooted_isomorphism(map, r0.dart, r.dart, flip) {
            if !out.contains(&g) {
                out.push(g);
            }
        }
    }
    out.sort();
    out
}
