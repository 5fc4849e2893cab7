//! Dart-based combinatorial maps of tangle projections in a disk.
//!
//! Crossing `v` owns darts `4v..4v+4`, listed in counterclockwise order.
//! Every dart is either glued to another dart (an internal edge) or ends
//! on the boundary circle at a leg position `0..2k`, numbered
//! counterclockwise.

use std::fmt;

use crate::dihedral::DihedralElement;
use crate::error::{Error, Result};

/// What sits at the far end of a dart.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    Dart(usize),
    Leg(usize),
}

/// Largest crossing count supported; vertex sets are held in `u64` masks.
pub const MAX_CROSSINGS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlanarMap {
    twin: Vec<End>,
    legs: Vec<usize>,
}

/// A face of the map. `darts` lists, in traversal order, every dart having
/// this face on its clockwise side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub darts: Vec<usize>,
    /// `Some(j)` for the boundary face lying between legs `j` and `j + 1`.
    pub boundary: Option<usize>,
    pub edge_degree: usize,
}

impl Face {
    pub fn is_boundary(&self) -> bool {
        self.boundary.is_some()
    }
}

/// Face lookup tables used by the root machinery.
#[derive(Clone, Debug)]
pub struct FaceTable {
    /// Face id of the sector between `pred(d)` and `d`.
    pub face_of: Vec<usize>,
    pub degree: Vec<usize>,
    /// Face id of boundary face `j`.
    pub boundary_faces: Vec<usize>,
    /// Inverse of `boundary_faces`.
    pub boundary_index: Vec<Option<usize>>,
}

/// Result of removing a boundary crossing.
#[derive(Clone, Debug)]
pub struct Peeled {
    pub map: PlanarMap,
    /// First leg of the block formed by the removed crossing's edges.
    pub block_start: usize,
    pub up_degree: usize,
    pub down_degree: usize,
}

#[inline]
pub fn vertex_of(d: usize) -> usize {
    d >> 2
}

#[inline]
pub fn succ(d: usize) -> usize {
    (d & !3) | ((d + 1) & 3)
}

#[inline]
pub fn pred(d: usize) -> usize {
    (d & !3) | ((d + 3) & 3)
}

impl PlanarMap {
    pub fn new(twin: Vec<End>, legs: Vec<usize>) -> Result<Self> {
        let map = PlanarMap { twin, legs };
        map.validate()?;
        Ok(map)
    }

    pub(crate) fn from_raw(twin: Vec<End>, legs: Vec<usize>) -> Self {
        let map = PlanarMap { twin, legs };
        debug_assert!(map.validate().is_ok(), "{:?}", map.validate());
        map
    }

    /// The single crossing with four legs.
    pub fn single_crossing() -> Self {
        PlanarMap {
            twin: (0..4).map(End::Leg).collect(),
            legs: (0..4).collect(),
        }
    }

    pub fn crossing_count(&self) -> usize {
        self.twin.len() / 4
    }

    /// Number of legs, `2k`.
    pub fn leg_count(&self) -> usize {
        self.legs.len()
    }

    /// `k`, half the number of legs.
    pub fn k(&self) -> usize {
        self.legs.len() / 2
    }

    pub fn dart_count(&self) -> usize {
        self.twin.len()
    }

    #[inline]
    pub fn twin(&self, d: usize) -> End {
        self.twin[d]
    }

    #[inline]
    pub fn leg_dart(&self, pos: usize) -> usize {
        self.legs[pos]
    }

    pub fn legs(&self) -> &[usize] {
        &self.legs
    }

    pub fn legs_at(&self, v: usize) -> usize {
        (4 * v..4 * v + 4)
            .filter(|&d| matches!(self.twin[d], End::Leg(_)))
            .count()
    }

    pub fn internal_edge_count(&self) -> usize {
        (self.twin.len() - self.legs.len()) / 2
    }

    /// Crossing at the far end of dart `d`, if it is internal.
    #[inline]
    pub fn neighbor(&self, d: usize) -> Option<usize> {
        match self.twin[d] {
            End::Dart(e) => Some(vertex_of(e)),
            End::Leg(_) => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Structural(m));
        if self.twin.is_empty() || self.twin.len() % 4 != 0 {
            return bad(format!("dart count {} is not a positive multiple of 4", self.twin.len()));
        }
        if self.crossing_count() > MAX_CROSSINGS {
            return bad(format!("more than {MAX_CROSSINGS} crossings"));
        }
        if self.legs.len() < 2 {
            return bad("a projection needs at least one pair of legs".into());
        }
        for (d, &t) in self.twin.iter().enumerate() {
            match t {
                End::Dart(e) => {
                    if e >= self.twin.len() || e == d || self.twin[e] != End::Dart(d) {
                        return bad(format!("dart {d}: twin {e} is not an involution partner"));
                    }
                    if vertex_of(e) == vertex_of(d) {
                        return bad(format!("dart {d}: loop edge"));
                    }
                }
                End::Leg(p) => {
                    if p >= self.legs.len() || self.legs[p] != d {
                        return bad(format!("dart {d}: leg {p} does not point back"));
                    }
                }
            }
        }
        for (p, &d) in self.legs.iter().enumerate() {
            if d >= self.twin.len() || self.twin[d] != End::Leg(p) {
                return bad(format!("leg {p}: dart {d} does not point back"));
            }
        }
        // Euler check with the boundary circle closed up; components
        // without legs are traced as separate spheres.
        let faces = self.faces();
        let internal_faces = faces.iter().filter(|f| !f.is_boundary()).count() as i64;
        // Boundary faces shared between components close up fewer regions.
        let boundary_faces = faces.len() as i64 - internal_faces;
        let closed = self
            .components()
            .iter()
            .filter(|&&c| (0..64).filter(|v| c >> v & 1 == 1).all(|v| self.legs_at(v) == 0))
            .count() as i64;
        let chi = self.crossing_count() as i64 - self.internal_edge_count() as i64 + internal_faces
            + boundary_faces
            - self.legs.len() as i64;
        if chi != 1 + 2 * closed {
            return bad(format!("not a planar disk map (Euler value {chi})"));
        }
        Ok(())
    }

    #[inline]
    fn face_next(&self, d: usize) -> usize {
        match self.twin[d] {
            End::Dart(t) => succ(t),
            End::Leg(i) => {
                let l = self.legs.len();
                succ(self.legs[(i + l - 1) % l])
            }
        }
    }

    pub fn face_table(&self) -> FaceTable {
        let m = self.twin.len();
        let l = self.legs.len();
        let mut face_of = vec![usize::MAX; m];
        let mut degree = Vec::new();
        let mut boundary_index = Vec::new();
        let mut boundary_faces = vec![usize::MAX; l];
        // Boundary faces first, in leg order; face j holds the dart of leg j+1.
        for j in 0..l {
            let start = self.legs[(j + 1) % l];
            if face_of[start] != usize::MAX {
                boundary_faces[j] = face_of[start];
                continue;
            }
            let id = degree.len();
            let len = self.trace(start, id, &mut face_of);
            degree.push(len);
            boundary_index.push(Some(j));
            boundary_faces[j] = id;
        }
        for d in 0..m {
            if face_of[d] == usize::MAX {
                let id = degree.len();
                let len = self.trace(d, id, &mut face_of);
                degree.push(len);
                boundary_index.push(None);
            }
        }
        FaceTable {
            face_of,
            degree,
            boundary_faces,
            boundary_index,
        }
    }

    /// Marks the face of `start` and returns its edge degree: one per dart,
    /// plus one per leg entered from the boundary circle.
    fn trace(&self, start: usize, id: usize, face_of: &mut [usize]) -> usize {
        let mut d = start;
        let mut len = 0;
        loop {
            face_of[d] = id;
            len += 1;
            if let End::Leg(_) = self.twin[d] {
                len += 1;
            }
            d = self.face_next(d);
            if d == start {
                return len;
            }
        }
    }

    /// All faces; boundary faces come first in counterclockwise order
    /// starting from the face after leg 0.
    pub fn faces(&self) -> Vec<Face> {
        let table = self.face_table();
        let mut faces: Vec<Face> = table
            .degree
            .iter()
            .zip(&table.boundary_index)
            .map(|(&edge_degree, &boundary)| Face {
                darts: Vec::new(),
                boundary,
                edge_degree,
            })
            .collect();
        let mut seen = vec![false; faces.len()];
        for d in 0..self.twin.len() {
            let f = table.face_of[d];
            if seen[f] {
                continue;
            }
            seen[f] = true;
            // Start boundary faces at their leg dart so the order is stable.
            let start = match faces[f].boundary {
                Some(j) => self.legs[(j + 1) % self.legs.len()],
                None => d,
            };
            let mut e = start;
            loop {
                faces[f].darts.push(e);
                e = self.face_next(e);
                if e == start {
                    break;
                }
            }
        }
        faces
    }

    /// Degrees of the boundary faces, indexed by boundary position.
    pub fn boundary_face_degrees(&self) -> Vec<usize> {
        let t = self.face_table();
        t.boundary_faces.iter().map(|&f| t.degree[f]).collect()
    }

    /// Neighbour mask of every crossing along internal edges.
    pub fn adjacency(&self) -> Vec<u64> {
        let n = self.crossing_count();
        let mut adj = vec![0u64; n];
        for d in 0..self.twin.len() {
            if let End::Dart(e) = self.twin[d] {
                adj[vertex_of(d)] |= 1 << vertex_of(e);
            }
        }
        adj
    }

    fn components(&self) -> Vec<u64> {
        let adj = self.adjacency();
        let n = self.crossing_count();
        let mut left = full_mask(n);
        let mut out = Vec::new();
        while left != 0 {
            let c = reach(&adj, left.trailing_zeros() as usize, left);
            out.push(c);
            left &= !c;
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        let adj = self.adjacency();
        let all = full_mask(adj.len());
        reach(&adj, 0, all) == all
    }

    /// Crossings carrying at least one leg.
    pub fn boundary_vertices(&self) -> Vec<usize> {
        (0..self.crossing_count()).filter(|&v| self.legs_at(v) > 0).collect()
    }

    /// Crossings whose removal disconnects the remaining crossings.
    pub fn cut_vertices(&self) -> Vec<usize> {
        let mask = self.cut_mask();
        (0..self.crossing_count()).filter(|v| mask >> v & 1 == 1).collect()
    }

    pub(crate) fn cut_mask(&self) -> u64 {
        let adj = self.adjacency();
        cut_mask_of(&adj)
    }

    /// True when some simple closed curve meets the projection in exactly
    /// two points and encloses at least one crossing, i.e. when the graph
    /// obtained by collapsing the boundary circle to one vertex has an edge
    /// cut of size two.
    pub fn is_composite(&self) -> bool {
        let n = self.crossing_count();
        let boundary = n;
        let mut edges: Vec<(usize, usize)> = Vec::with_capacity(self.twin.len());
        for d in 0..self.twin.len() {
            match self.twin[d] {
                End::Dart(e) if d < e => edges.push((vertex_of(d), vertex_of(e))),
                End::Dart(_) => {}
                End::Leg(_) => edges.push((vertex_of(d), boundary)),
            }
        }
        let mut incident: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n + 1];
        for (id, &(a, b)) in edges.iter().enumerate() {
            incident[a].push((b, id));
            incident[b].push((a, id));
        }
        let mut scratch = BridgeScratch::new(n + 1);
        if scratch.has_bridge(&incident, usize::MAX) {
            return true;
        }
        (0..edges.len()).any(|skip| scratch.has_bridge(&incident, skip))
    }

    /// True when no two crossings are joined by more than one edge.
    pub fn is_reduced(&self) -> bool {
        (0..self.crossing_count()).all(|v| {
            let mut seen = 0u64;
            (4 * v..4 * v + 4).all(|d| match self.neighbor(d) {
                Some(w) => {
                    let fresh = seen >> w & 1 == 0;
                    seen |= 1 << w;
                    fresh
                }
                None => true,
            })
        })
    }

    /// True when some internal face is bounded by exactly two edges.
    pub fn has_internal_bigon(&self) -> bool {
        let t = self.face_table();
        t.degree
            .iter()
            .zip(&t.boundary_index)
            .any(|(&deg, b)| b.is_none() && deg == 2)
    }

    /// Adds a crossing whose `up` darts are glued to the legs at positions
    /// `position, position + 1, ...` (cyclically) and whose remaining
    /// `4 - up` darts become new legs in their place. Returns the new map
    /// and the position of its first new leg.
    pub fn attach(&self, up: usize, position: usize) -> (PlanarMap, usize) {
        let w = self.legs.len();
        assert!((1..=3).contains(&up) && up <= w, "cannot attach {up} strands to width {w}");
        let down = 4 - up;
        let position = position % w;
        let base = self.twin.len();
        let mut twin = self.twin.clone();
        twin.extend([End::Leg(0); 4]);
        for j in 0..up {
            let old = self.legs[(position + j) % w];
            let ud = base + down + (up - 1 - j);
            twin[old] = End::Dart(ud);
            twin[ud] = End::Dart(old);
        }
        let mut legs = Vec::with_capacity(w - up + down);
        let first;
        if position + up <= w {
            legs.extend_from_slice(&self.legs[..position]);
            first = legs.len();
            legs.extend(base..base + down);
            legs.extend_from_slice(&self.legs[position + up..]);
        } else {
            legs.extend_from_slice(&self.legs[position + up - w..position]);
            first = legs.len();
            legs.extend(base..base + down);
        }
        for (i, &d) in legs.iter().enumerate() {
            twin[d] = End::Leg(i);
        }
        (PlanarMap::from_raw(twin, legs), first)
    }

    /// Removes a boundary crossing whose legs are consecutive, turning its
    /// other edges into new legs. The removed crossing's edges occupy the
    /// legs `block_start..block_start + up_degree` of the result, in the
    /// order `attach` would glue them back.
    pub fn remove_vertex(&self, v: usize) -> Result<Peeled> {
        let n = self.crossing_count();
        if v >= n {
            return Err(Error::Structural(format!("no crossing {v}")));
        }
        if n == 1 {
            return Err(Error::Structural("cannot remove the only crossing".into()));
        }
        let is_leg = |d: usize| matches!(self.twin[d], End::Leg(_));
        let down = self.legs_at(v);
        if !(1..=3).contains(&down) {
            return Err(Error::Structural(format!("crossing {v} has {down} legs")));
        }
        let up = 4 - down;
        let starts: Vec<usize> = (4 * v..4 * v + 4)
            .filter(|&d| is_leg(d) && !is_leg(pred(d)))
            .collect();
        if starts.len() != 1 {
            return Err(Error::Structural(format!("legs of crossing {v} are not contiguous")));
        }
        let s = starts[0];
        let l = self.legs.len();
        let a = match self.twin[s] {
            End::Leg(p) => p,
            End::Dart(_) => unreachable!(),
        };
        let mut d = s;
        for t in 0..down {
            if self.twin[d] != End::Leg((a + t) % l) {
                return Err(Error::Structural(format!(
                    "legs of crossing {v} are not consecutive on the boundary"
                )));
            }
            d = succ(d);
        }
        let remap = |d: usize| if vertex_of(d) > v { d - 4 } else { d };
        let mut legs = Vec::with_capacity(l - down + up);
        for t in 0..l - down {
            legs.push(remap(self.legs[(a + down + t) % l]));
        }
        let block_start = legs.len();
        // The up darts follow the legs counterclockwise as up_{u-1}..up_0.
        let mut ud = pred(s);
        for _ in 0..up {
            match self.twin[ud] {
                End::Dart(e) => legs.push(remap(e)),
                End::Leg(_) => unreachable!(),
            }
            ud = pred(ud);
        }
        let mut twin = Vec::with_capacity(self.twin.len() - 4);
        for (d, &t) in self.twin.iter().enumerate() {
            if vertex_of(d) == v {
                continue;
            }
            twin.push(match t {
                End::Dart(e) if vertex_of(e) != v => End::Dart(remap(e)),
                _ => End::Leg(0),
            });
        }
        for (i, &d) in legs.iter().enumerate() {
            twin[d] = End::Leg(i);
        }
        let map = PlanarMap::new(twin, legs)?;
        Ok(Peeled {
            map,
            block_start,
            up_degree: up,
            down_degree: down,
        })
    }

    /// Image of the map under a boundary symmetry; reflections reverse every
    /// vertex rotation.
    pub fn transformed(&self, g: &DihedralElement) -> PlanarMap {
        assert_eq!(g.legs, self.legs.len());
        let nd = |d: usize| {
            if g.reflect {
                (d & !3) | ((4 - (d & 3)) & 3)
            } else {
                d
            }
        };
        let mut twin = vec![End::Leg(0); self.twin.len()];
        let mut legs = vec![0; self.legs.len()];
        for (d, &t) in self.twin.iter().enumerate() {
            twin[nd(d)] = match t {
                End::Dart(e) => End::Dart(nd(e)),
                End::Leg(i) => End::Leg(g.apply(i)),
            };
        }
        for (i, &d) in self.legs.iter().enumerate() {
            legs[g.apply(i)] = nd(d);
        }
        PlanarMap::from_raw(twin, legs)
    }

    /// Renames crossing `v` to `perm[v]`.
    pub fn relabeled(&self, perm: &[usize]) -> PlanarMap {
        let nd = |d: usize| 4 * perm[vertex_of(d)] + (d & 3);
        let mut twin = vec![End::Leg(0); self.twin.len()];
        for (d, &t) in self.twin.iter().enumerate() {
            twin[nd(d)] = match t {
                End::Dart(e) => End::Dart(nd(e)),
                leg => leg,
            };
        }
        let legs = self.legs.iter().map(|&d| nd(d)).collect();
        PlanarMap::from_raw(twin, legs)
    }

    /// Tries to extend `a ↦ b` (darts of `self` and `other`) to an
    /// isomorphism of connected maps. With `flip` the isomorphism reverses
    /// orientation. Returns the induced action on legs.
    pub fn rooted_isomorphism(
        &self,
        other: &PlanarMap,
        a: usize,
        b: usize,
        flip: bool,
    ) -> Option<DihedralElement> {
        let n = self.crossing_count();
        let l = self.legs.len();
        if n != other.crossing_count() || l != other.legs.len() {
            return None;
        }
        // image[v] = image of dart 4v.
        let mut image = [usize::MAX; MAX_CROSSINGS];
        let mut stack = [0usize; MAX_CROSSINGS];
        let mut top = 0;
        let map_dart = |image: &[usize], d: usize| -> usize {
            let base = image[vertex_of(d)];
            let s = d & 3;
            if flip {
                (base & !3) | ((base + 4 - s) & 3)
            } else {
                (base & !3) | ((base + s) & 3)
            }
        };
        // Dart 4*va maps to the dart that makes a ↦ b.
        let va = vertex_of(a);
        let sa = a & 3;
        image[va] = if flip {
            (b & !3) | ((b + sa) & 3)
        } else {
            (b & !3) | ((b + 4 - sa) & 3)
        };
        stack[0] = va;
        top += 1;
        let mut mapped = 1;
        let mut rotation: Option<usize> = None;
        while top > 0 {
            top -= 1;
            let v = stack[top];
            for d in 4 * v..4 * v + 4 {
                let e = map_dart(&image, d);
                match (self.twin[d], other.twin[e]) {
                    (End::Dart(dt), End::Dart(et)) => {
                        let w = vertex_of(dt);
                        if image[w] == usize::MAX {
                            let s = dt & 3;
                            image[w] = if flip {
                                (et & !3) | ((et + s) & 3)
                            } else {
                                (et & !3) | ((et + 4 - s) & 3)
                            };
                            stack[top] = w;
                            top += 1;
                            mapped += 1;
                        } else if map_dart(&image, dt) != et {
                            return None;
                        }
                    }
                    (End::Leg(i), End::Leg(j)) => {
                        let r = if flip { (j + i) % l } else { (j + l - i) % l };
                        match rotation {
                            None => rotation = Some(r),
                            Some(r0) if r0 != r => return None,
                            Some(_) => {}
                        }
                    }
                    _ => return None,
                }
            }
        }
        if mapped != n {
            return None;
        }
        // Every map has legs, so the rotation is known.
        rotation.map(|r| DihedralElement::new(r, flip, l))
    }

    /// Leg actions of every isomorphism `self → other`.
    pub fn isomorphisms(&self, other: &PlanarMap) -> Vec<DihedralElement> {
        let mut out = Vec::new();
        if self.crossing_count() != other.crossing_count() || self.legs.len() != other.legs.len() {
            return out;
        }
        // Root at a leg dart of self: far fewer candidate images to try.
        let a = self.legs[0];
        for &b in &other.legs {
            for flip in [false, true] {
                if let Some(g) = self.rooted_isomorphism(other, a, b, flip) {
                    if !out.contains(&g) {
                        out.push(g);
                    }
                }
            }
        }
        out
    }

    pub fn is_isomorphic(&self, other: &PlanarMap) -> bool {
        !self.isomorphisms(other).is_empty()
    }
}

/// One line per crossing listing where its darts lead, counterclockwise:
/// `v.s` for slot `s` of crossing `v`, `Lp` for leg `p`.
impl fmt::Display for PlanarMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "crossings {} legs {}", self.crossing_count(), self.legs.len())?;
        for v in 0..self.crossing_count() {
            write!(f, "{v}:")?;
            for d in 4 * v..4 * v + 4 {
                match self.twin[d] {
                    End::Dart(e) => write!(f, " {}.{}", vertex_of(e), e & 3)?,
                    End::Leg(p) => write!(f, " L{p}")?,
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Vertices reachable from `start` inside `allowed`.
#[inline]
pub(crate) fn reach(adj: &[u64], start: usize, allowed: u64) -> u64 {
    let mut seen = 1u64 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = adj[v] & allowed & !seen;
        seen |= new;
        frontier |= new;
    }
    seen
}

pub(crate) fn cut_mask_of(adj: &[u64]) -> u64 {
    let n = adj.len();
    let all = full_mask(n);
    let mut cut = 0u64;
    if n < 3 {
        return 0;
    }
    for v in 0..n {
        let rest = all & !(1 << v);
        let start = rest.trailing_zeros() as usize;
        if reach(adj, start, rest) != rest {
            cut |= 1 << v;
        }
    }
    cut
}

struct BridgeScratch {
    disc: Vec<usize>,
    low: Vec<usize>,
}

impl BridgeScratch {
    fn new(n: usize) -> Self {
        BridgeScratch {
            disc: vec![0; n],
            low: vec![0; n],
        }
    }

    /// Whether the multigraph without edge `skip` has a bridge or is
    /// disconnected.
    fn has_bridge(&mut self, incident: &[Vec<(usize, usize)>], skip: usize) -> bool {
        self.disc.iter_mut().for_each(|x| *x = 0);
        let mut time = 0;
        if self.dfs(incident, skip, 0, usize::MAX, &mut time) {
            return true;
        }
        self.disc.iter().any(|&x| x == 0)
    }

    fn dfs(
        &mut self,
        incident: &[Vec<(usize, usize)>],
        skip: usize,
        v: usize,
        via: usize,
        time: &mut usize,
    ) -> bool {
        *time += 1;
        self.disc[v] = *time;
        self.low[v] = *time;
        for &(w, id) in &incident[v] {
            if id == skip || id == via {
                continue;
            }
            if self.disc[w] == 0 {
                if self.dfs(incident, skip, w, id, time) {
                    return true;
                }
                self.low[v] = self.low[v].min(self.low[w]);
                if self.low[w] > self.disc[v] {
                    return true;
                }
            } else {
                self.low[v] = self.low[v].min(self.disc[w]);
            }
        }
        false
    }
}
