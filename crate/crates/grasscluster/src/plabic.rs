//! Plabic graphs as combinatorial maps: the grid graph Γ_{a,n}, zig-zag strands,
//! dominating sets, quiver extraction and local moves.
//!
//! A graph is a set of half-edges with an involution `twin` and, at every vertex,
//! the counter-clockwise cyclic order of outgoing half-edges. Boundary vertex `i`
//! additionally carries two virtual arcs to `i+1` and `i-1`, so the boundary
//! circle is part of the map and faces can be traced without geometry.

use crate::confspace::plucker_set;
use crate::error::{Error, Result};
use crate::exact::{plucker, RatMatrix, Rational};
use crate::quiver::{check_params, frozen_rotation, grid_vertices, rho_sequence, standard_quiver, Quiver, VertexId};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

/// Vertex colour; boundary vertices carry their label `1..=n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Black,
    White,
    Boundary(usize),
}

/// A plabic graph on a disk with `n` boundary points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlabicGraph {
    a: usize,
    n: usize,
    colors: Vec<Color>,
    /// Outgoing half-edges at each vertex in counter-clockwise order.
    rotation: Vec<Vec<usize>>,
    origin: Vec<usize>,
    twin: Vec<usize>,
    arc: Vec<bool>,
}

/// Faces traced with the face on the left of each half-edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Faces {
    pub cycles: Vec<Vec<usize>>,
    pub face_of: Vec<usize>,
    pub outer: usize,
}

impl Faces {
    /// Faces other than the outer one.
    pub fn inner(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.cycles.len()).filter(move |&f| f != self.outer)
    }
}

/// A zig-zag strand from boundary `start` to boundary `end`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Strand {
    pub start: usize,
    pub end: usize,
    pub half_edges: Vec<usize>,
}

impl PlabicGraph {
    fn empty(a: usize, n: usize) -> Self {
        PlabicGraph { a, n, colors: vec![], rotation: vec![], origin: vec![], twin: vec![], arc: vec![] }
    }

    fn add_vertex(&mut self, c: Color) -> usize {
        self.colors.push(c);
        self.rotation.push(vec![]);
        self.colors.len() - 1
    }

    /// Adds the pair `u -> v`, `v -> u` without touching rotations.
    fn add_edge(&mut self, u: usize, v: usize, arc: bool) -> (usize, usize) {
        let h = self.origin.len();
        self.origin.extend([u, v]);
        self.twin.extend([h + 1, h]);
        self.arc.extend([arc, arc]);
        (h, h + 1)
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn origin(&self, h: usize) -> usize {
        self.origin[h]
    }

    pub fn head(&self, h: usize) -> usize {
        self.origin[self.twin[h]]
    }

    pub fn twin(&self, h: usize) -> usize {
        self.twin[h]
    }

    pub fn is_arc(&self, h: usize) -> bool {
        self.arc[h]
    }

    /// Vertex ids of internal vertices.
    pub fn internal_vertices(&self) -> Vec<usize> {
        (0..self.colors.len()).filter(|&v| !matches!(self.colors[v], Color::Boundary(_))).collect()
    }

    /// Vertex id of boundary point `i`.
    pub fn boundary_vertex(&self, i: usize) -> Result<usize> {
        self.colors
            .iter()
            .position(|&c| c == Color::Boundary(i))
            .ok_or_else(|| Error::Index(format!("no boundary point {i}")))
    }

    fn rotate_by(&self, h: usize, step: isize) -> usize {
        let r = &self.rotation[self.origin[h]];
        let k = r.iter().position(|&x| x == h).expect("half-edge in its rotation");
        r[(k as isize + step).rem_euclid(r.len() as isize) as usize]
    }

    fn cw_next(&self, h: usize) -> usize {
        self.rotate_by(h, -1)
    }

    fn ccw_next(&self, h: usize) -> usize {
        self.rotate_by(h, 1)
    }

    fn face_next(&self, h: usize) -> usize {
        self.cw_next(self.twin[h])
    }

    fn live_half_edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.rotation.iter().flatten().copied()
    }

    /// Traces all faces; the outer face is the cycle of arcs `i -> i+1`.
    pub fn faces(&self) -> Result<Faces> {
        let mut face_of = vec![usize::MAX; self.origin.len()];
        let mut cycles = vec![];
        for h in self.live_half_edges() {
            if face_of[h] != usize::MAX {
                continue;
            }
            let mut cyc = vec![];
            let mut x = h;
            while face_of[x] == usize::MAX {
                face_of[x] = cycles.len();
                cyc.push(x);
                x = self.face_next(x);
            }
            if x != h {
                return Err(Error::Internal("face tracing did not close".into()));
            }
            cycles.push(cyc);
        }
        let outer: Vec<usize> = (0..cycles.len())
            .filter(|&f| {
                cycles[f].iter().all(|&h| {
                    self.arc[h]
                        && match (self.colors[self.origin[h]], self.colors[self.head(h)]) {
                            (Color::Boundary(i), Color::Boundary(j)) => j == i % self.n + 1,
                            _ => false,
                        }
                })
            })
            .collect();
        match outer[..] {
            [o] => Ok(Faces { cycles, face_of, outer: o }),
            _ => Err(Error::Internal(format!("expected one outer face, found {}", outer.len()))),
        }
    }

    /// Zig-zag strands: turn to the clockwise-next edge at white vertices and the
    /// counter-clockwise-next edge at black vertices.
    pub fn strands(&self) -> Result<Vec<Strand>> {
        let limit = 2 * self.origin.len() + 2;
        (1..=self.n)
            .map(|i| {
                let v = self.boundary_vertex(i)?;
                let mut h = self.inward(v)?;
                let mut path = vec![h];
                loop {
                    let w = self.head(h);
                    let t = self.twin[h];
                    h = match self.colors[w] {
                        Color::Boundary(j) => return Ok(Strand { start: i, end: j, half_edges: path }),
                        Color::White => self.cw_next(t),
                        Color::Black => self.ccw_next(t),
                    };
                    path.push(h);
                    if path.len() > limit {
                        return Err(Error::NotReduced(format!("strand from {i} does not terminate")));
                    }
                }
            })
            .collect()
    }

    fn inward(&self, v: usize) -> Result<usize> {
        let inner: Vec<usize> = self.rotation[v].iter().copied().filter(|&h| !self.arc[h]).collect();
        match inner[..] {
            [h] => Ok(h),
            _ => Err(Error::Invariant(format!("boundary vertex {v} has {} edges", inner.len()))),
        }
    }

    /// The permutation `i -> end of strand i`, indexed from 1 (entry 0 unused).
    pub fn strand_permutation(&self) -> Result<Vec<usize>> {
        let mut p = vec![0; self.n + 1];
        for s in self.strands()? {
            p[s.start] = s.end;
        }
        Ok(p)
    }

    /// Strands with repeated edges or pairs crossing twice in the same order.
    pub fn strand_defects(&self) -> Result<Vec<String>> {
        let st = self.strands()?;
        let edge = |h: usize| h.min(self.twin[h]);
        let mut out = vec![];
        let orders: Vec<HashMap<usize, usize>> = st
            .iter()
            .map(|s| s.half_edges.iter().enumerate().map(|(k, &h)| (edge(h), k)).collect())
            .collect();
        for (s, ord) in st.iter().zip(&orders) {
            if ord.len() != s.half_edges.len() {
                out.push(format!("strand {} self-intersects", s.start));
            }
        }
        for x in 0..st.len() {
            for y in x + 1..st.len() {
                let mut shared: Vec<(usize, usize)> = orders[x]
                    .iter()
                    .filter_map(|(e, &kx)| orders[y].get(e).map(|&ky| (kx, ky)))
                    .collect();
                shared.sort();
                if shared.windows(2).any(|w| w[0].1 < w[1].1) {
                    out.push(format!("strands {} and {} form a parallel bigon", st[x].start, st[y].start));
                }
            }
        }
        Ok(out)
    }

    /// Fails unless strands realise `i -> i+a` without defects and the face count is minimal.
    pub fn check_reduced(&self) -> Result<()> {
        let p = self.strand_permutation()?;
        for i in 1..=self.n {
            if p[i] != (i + self.a - 1) % self.n + 1 {
                return Err(Error::NotReduced(format!("strand {i} ends at {}", p[i])));
            }
        }
        if let Some(d) = self.strand_defects()?.into_iter().next() {
            return Err(Error::NotReduced(d));
        }
        let faces = self.faces()?.cycles.len() - 1;
        if faces != self.a * (self.n - self.a) + 1 {
            return Err(Error::NotReduced(format!("{faces} faces")));
        }
        Ok(())
    }

    /// Dominating set of every inner face: the strands having the face on their left.
    pub fn dominating_sets(&self) -> Result<BTreeMap<usize, Vec<usize>>> {
        self.check_reduced()?;
        let faces = self.faces()?;
        let mut sets: BTreeMap<usize, BTreeSet<usize>> = faces.inner().map(|f| (f, BTreeSet::new())).collect();
        for s in self.strands()? {
            let used: BTreeSet<usize> = s.half_edges.iter().flat_map(|&h| [h, self.twin[h]]).collect();
            let mut left: BTreeSet<usize> = s.half_edges.iter().map(|&h| faces.face_of[h]).collect();
            let mut stack: Vec<usize> = left.iter().copied().collect();
            while let Some(f) = stack.pop() {
                for &h in &faces.cycles[f] {
                    if used.contains(&h) {
                        continue;
                    }
                    let g = faces.face_of[self.twin[h]];
                    if g != faces.outer && left.insert(g) {
                        stack.push(g);
                    }
                }
            }
            for f in left {
                sets.get_mut(&f).ok_or_else(|| Error::Internal("strand left of outer face".into()))?.insert(s.start);
            }
        }
        let out: BTreeMap<usize, Vec<usize>> = sets.into_iter().map(|(f, s)| (f, s.into_iter().collect())).collect();
        if let Some((f, s)) = out.iter().find(|(_, s)| s.len() != self.a) {
            return Err(Error::NotReduced(format!("face {f} has dominating set of size {}", s.len())));
        }
        Ok(out)
    }

    /// Face carrying the given dominating set.
    pub fn face_with_set(&self, set: &[usize]) -> Result<usize> {
        let want = sorted(set);
        self.dominating_sets()?
            .into_iter()
            .find(|(_, s)| *s == want)
            .map(|(f, _)| f)
            .ok_or_else(|| Error::MoveNotApplicable(format!("no face with dominating set {want:?}")))
    }

    /// Quiver with faces named through `labels` (dominating set -> vertex id).
    ///
    /// Every black vertex contributes a clockwise 3-cycle on its adjacent faces;
    /// faces touching the boundary circle are frozen.
    pub fn quiver_with_labels(&self, labels: &BTreeMap<Vec<usize>, VertexId>) -> Result<Quiver> {
        let faces = self.faces()?;
        let sets = self.dominating_sets()?;
        let ids: Vec<usize> = sets.keys().copied().collect();
        let pos: HashMap<usize, usize> = ids.iter().enumerate().map(|(k, &f)| (f, k)).collect();
        let vertices: Vec<VertexId> = ids
            .iter()
            .map(|f| {
                labels.get(&sets[f]).copied().ok_or_else(|| Error::Index(format!("no label for {:?}", sets[f])))
            })
            .collect::<Result<_>>()?;
        let m = ids.len();
        let mut eps = vec![vec![0i64; m]; m];
        for v in 0..self.colors.len() {
            if self.colors[v] != Color::Black {
                continue;
            }
            let r = &self.rotation[v];
            for k in 0..r.len() {
                let from = pos[&faces.face_of[r[k]]];
                let to = pos[&faces.face_of[r[(k + r.len() - 1) % r.len()]]];
                eps[to][from] += 1;
                eps[from][to] -= 1;
            }
        }
        let frozen = ids.iter().map(|&f| faces.cycles[f].iter().any(|&h| self.arc[h])).collect();
        Quiver::new(self.a, self.n, vertices, frozen, eps)
    }

    /// Quiver with faces named by the Γ_{a,n} labelling `I(i,j) -> (i,j)`.
    pub fn quiver_of(&self) -> Result<Quiver> {
        self.quiver_with_labels(&standard_labels(self.a, self.n)?)
    }

    /// Contracts the two black neighbours of a bivalent white vertex `w` and
    /// re-expands the resulting 4-valent vertex the other way.
    ///
    /// With `swap` the two black neighbours trade roles, which selects which of
    /// the two faces beside `w` shrinks.
    pub fn contract_expand(&self, w: usize, swap: bool) -> Result<PlabicGraph> {
        let na = |m: &str| Error::MoveNotApplicable(format!("vertex {w}: {m}"));
        if self.colors.get(w) != Some(&Color::White) || self.rotation[w].len() != 2 {
            return Err(na("not a bivalent white vertex"));
        }
        let (mut h0, mut h1) = (self.rotation[w][0], self.rotation[w][1]);
        if swap {
            std::mem::swap(&mut h0, &mut h1);
        }
        let (b1, b2) = (self.head(h0), self.head(h1));
        if b1 == b2 || self.colors[b1] != Color::Black || self.colors[b2] != Color::Black {
            return Err(na("neighbours are not two distinct black vertices"));
        }
        let (t1, t2) = (self.twin[h0], self.twin[h1]);
        let after = |b: usize, t: usize| {
            let r = &self.rotation[b];
            let k = r.iter().position(|&x| x == t).expect("twin at head");
            (r[(k + 1) % 3], r[(k + 2) % 3])
        };
        let (x, y) = after(b1, t1);
        let (z, ww) = after(b2, t2);
        let mut g = self.clone();
        g.rotation[b1] = vec![t1, y, z];
        g.rotation[b2] = vec![t2, ww, x];
        g.origin[z] = b1;
        g.origin[x] = b2;
        g.validate()?;
        Ok(g)
    }

    /// Inserts a bivalent white vertex on the edge of half-edge `h`.
    fn subdivide(&mut self, h: usize) -> usize {
        let t = self.twin[h];
        let (u, v) = (self.origin[h], self.origin[t]);
        let w = self.add_vertex(Color::White);
        let (p, _) = self.add_edge(w, u, false);
        let (q, _) = self.add_edge(w, v, false);
        // Reuse `h` and `t` as the outer halves; the fresh twins are discarded.
        self.twin[h] = p;
        self.twin[p] = h;
        self.twin[t] = q;
        self.twin[q] = t;
        self.rotation[w] = vec![p, q];
        w
    }

    /// Type I square move at the face with dominating set `face`.
    ///
    /// The face must be a quadrilateral `B1, W1, B2, W3`. Edges from its black
    /// corners to the boundary are first subdivided by a bivalent white vertex.
    pub fn square_move(&self, face: &[usize]) -> Result<PlabicGraph> {
        let f = self.face_with_set(face)?;
        let faces = self.faces()?;
        let mut cyc = faces.cycles[f].clone();
        if cyc.len() != 4 || cyc.iter().any(|&h| self.arc[h]) {
            return Err(Error::MoveNotApplicable(format!("face {face:?} is not an interior square")));
        }
        let k = cyc.iter().position(|&h| self.colors[self.origin[h]] == Color::Black).expect("bipartite");
        cyc.rotate_left(k);
        let [f0, f1, f2, f3] = [cyc[0], cyc[1], cyc[2], cyc[3]];
        let (b1, c1, b2, c3) = (self.origin[f0], self.origin[f1], self.origin[f2], self.origin[f3]);
        if self.colors[c1] != Color::White || self.colors[c3] != Color::White || self.colors[b2] != Color::Black {
            return Err(Error::MoveNotApplicable("square face does not alternate colours".into()));
        }
        let third = |b: usize, x: usize, y: usize| self.rotation[b].iter().copied().find(|&h| h != x && h != y);
        let e0 = third(b1, f0, self.twin[f3]).ok_or_else(|| Error::Internal("black vertex degree".into()))?;
        let e2 = third(b2, f2, self.twin[f1]).ok_or_else(|| Error::Internal("black vertex degree".into()))?;
        for e in [e0, e2] {
            if matches!(self.colors[self.head(e)], Color::Boundary(_)) {
                let mut g = self.clone();
                g.subdivide(e);
                return g.square_move(face);
            }
        }
        let (c0, c2) = (self.head(e0), self.head(e2));
        if c0 == c2 || [c0, c2].iter().any(|c| *c == c1 || *c == c3) {
            return Err(Error::MoveNotApplicable("square face touches itself".into()));
        }
        let mut g = self.clone();
        let d1 = g.add_vertex(Color::Black);
        let d3 = g.add_vertex(Color::Black);
        let (d1c2, c2d1) = g.add_edge(d1, c2, false);
        let (d1c0, c0d1) = g.add_edge(d1, c0, false);
        let (d1c1, c1d1) = g.add_edge(d1, c1, false);
        let (d3c2, c2d3) = g.add_edge(d3, c2, false);
        let (d3c3, c3d3) = g.add_edge(d3, c3, false);
        let (d3c0, c0d3) = g.add_edge(d3, c0, false);
        g.rotation[d1] = vec![d1c2, d1c0, d1c1];
        g.rotation[d3] = vec![d3c2, d3c3, d3c0];
        g.splice(c0, &[self.twin[e0]], &[c0d1, c0d3])?;
        g.splice(c2, &[self.twin[e2]], &[c2d3, c2d1])?;
        g.splice(c1, &[f1, self.twin[f0]], &[c1d1])?;
        g.splice(c3, &[f3, self.twin[f2]], &[c3d3])?;
        g.rotation[b1].clear();
        g.rotation[b2].clear();
        let g = g.compact();
        g.validate()?;
        Ok(g)
    }

    /// Applies [`contract_expand`](Self::contract_expand) at bivalent white
    /// vertices of the face until it is a square, then [`square_move`](Self::square_move).
    pub fn normalized_square_move(&self, face: &[usize]) -> Result<PlabicGraph> {
        let mut g = self.clone();
        let face_len = |g: &PlabicGraph| -> Result<(usize, usize)> {
            let f = g.face_with_set(face)?;
            let fs = g.faces()?;
            Ok((fs.cycles[f].len(), fs.cycles.len()))
        };
        loop {
            let (len, count) = face_len(&g)?;
            if len <= 4 {
                return g.square_move(face);
            }
            let f = g.face_with_set(face)?;
            let cyc = g.faces()?.cycles[f].clone();
            let mut next = None;
            'search: for &h in &cyc {
                let w = g.origin[h];
                if g.colors[w] != Color::White || g.rotation[w].len() != 2 {
                    continue;
                }
                for swap in [false, true] {
                    if let Ok(g2) = g.contract_expand(w, swap) {
                        if matches!(face_len(&g2), Ok((l2, c2)) if l2 < len && c2 == count) {
                            next = Some(g2);
                            break 'search;
                        }
                    }
                }
            }
            g = next.ok_or_else(|| Error::MoveNotApplicable(format!("face {face:?} cannot be made square")))?;
        }
    }

    /// Replaces the contiguous run `old` in the rotation at `v` by `new`.
    fn splice(&mut self, v: usize, old: &[usize], new: &[usize]) -> Result<()> {
        let r = &self.rotation[v];
        let m = r.len();
        for s in 0..m {
            if (0..old.len()).all(|t| r[(s + t) % m] == old[t]) {
                let mut out = new.to_vec();
                out.extend((0..m - old.len()).map(|t| r[(s + old.len() + t) % m]));
                for &h in new {
                    self.origin[h] = v;
                }
                self.rotation[v] = out;
                return Ok(());
            }
        }
        Err(Error::Internal(format!("rotation at {v} lacks {old:?}")))
    }

    /// Drops vertices with empty rotation and unreferenced half-edges.
    fn compact(&self) -> PlabicGraph {
        let keep_v: Vec<usize> = (0..self.colors.len())
            .filter(|&v| !self.rotation[v].is_empty() || matches!(self.colors[v], Color::Boundary(_)))
            .collect();
        let vmap: HashMap<usize, usize> = keep_v.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let mut live: Vec<usize> = self.live_half_edges().collect();
        live.sort_unstable();
        let hmap: HashMap<usize, usize> = live.iter().enumerate().map(|(k, &h)| (h, k)).collect();
        PlabicGraph {
            a: self.a,
            n: self.n,
            colors: keep_v.iter().map(|&v| self.colors[v]).collect(),
            rotation: keep_v.iter().map(|&v| self.rotation[v].iter().map(|h| hmap[h]).collect()).collect(),
            origin: live.iter().map(|&h| vmap[&self.origin[h]]).collect(),
            twin: live.iter().map(|&h| hmap[&self.twin[h]]).collect(),
            arc: live.iter().map(|&h| self.arc[h]).collect(),
        }
    }

    /// Structural checks: involution, rotation consistency, colours and degrees.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Invariant(m));
        let mut seen = vec![false; self.origin.len()];
        for (v, r) in self.rotation.iter().enumerate() {
            for &h in r {
                if self.origin[h] != v || std::mem::replace(&mut seen[h], true) {
                    return bad(format!("half-edge {h} misplaced at vertex {v}"));
                }
            }
        }
        for h in self.live_half_edges() {
            let t = self.twin[h];
            if self.twin[t] != h || !seen[t] || t == h {
                return bad(format!("half-edge {h} has no live twin"));
            }
            if !self.arc[h] {
                let (cu, cv) = (self.colors[self.origin[h]], self.colors[self.head(h)]);
                if cu == cv {
                    return bad(format!("edge {h} joins two {cu:?} vertices"));
                }
                if matches!((cu, cv), (Color::Boundary(_), Color::Boundary(_))) {
                    return bad(format!("edge {h} joins two boundary vertices"));
                }
            }
        }
        for (v, c) in self.colors.iter().enumerate() {
            let deg = self.rotation[v].iter().filter(|&&h| !self.arc[h]).count();
            match c {
                Color::Black if deg != 3 => return bad(format!("black vertex {v} has degree {deg}")),
                Color::Boundary(_) if deg != 1 => return bad(format!("boundary vertex {v} has degree {deg}")),
                Color::White if deg == 0 && !self.rotation[v].is_empty() => {
                    return bad(format!("white vertex {v} is isolated"))
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// Graphviz rendering.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph plabic {\n  node [shape=circle, label=\"\"];\n");
        for (v, c) in self.colors.iter().enumerate() {
            if self.rotation[v].is_empty() {
                continue;
            }
            let attrs = match c {
                Color::Black => "style=filled, fillcolor=black".to_string(),
                Color::White => "style=filled, fillcolor=white".to_string(),
                Color::Boundary(i) => format!("shape=plaintext, label=\"{i}\""),
            };
            let _ = writeln!(s, "  v{v} [{attrs}];");
        }
        for h in self.live_half_edges() {
            if h < self.twin[h] {
                let style = if self.arc[h] { " [style=dotted]" } else { "" };
                let _ = writeln!(s, "  v{} -- v{}{style};", self.origin[h], self.head(h));
            }
        }
        s.push_str("}\n");
        s
    }
}

fn sorted(set: &[usize]) -> Vec<usize> {
    let mut s = set.to_vec();
    s.sort_unstable();
    s
}

/// The Γ_{a,n} labelling `I(i,j) -> (i,j)` of Q_{a,n} vertices.
pub fn standard_labels(a: usize, n: usize) -> Result<BTreeMap<Vec<usize>, VertexId>> {
    check_params(a, n)?;
    let mut out = BTreeMap::new();
    for v in grid_vertices(a, n - a) {
        out.insert(plucker_set(a, n, v)?, v);
    }
    Ok(out)
}

/// The grid-shaped reduced plabic graph Γ_{a,n}.
///
/// Rows `r = 2..=a` hold white vertices `W(c,r)` and black vertices `B(c,r)`
/// for `c = 0..b`; a top white vertex `T` joins boundary point 1 to row 2.
/// Black `B(c,r)` meets `W(c,r)`, `W(c+1,r)` (boundary `r` when `c = b-1`)
/// and `W(c,r-1)` (`T` when `r = 2`). Bottom whites `W(c,a)` meet boundary `n-c`.
pub fn standard_graph(a: usize, n: usize) -> Result<PlabicGraph> {
    check_params(a, n)?;
    let b = n - a;
    let mut g = PlabicGraph::empty(a, n);
    let mut pos: Vec<(i64, i64)> = vec![];
    let mut vertex = |g: &mut PlabicGraph, c: Color, p: (i64, i64)| {
        pos.push(p);
        g.add_vertex(c)
    };
    let (ai, bi) = (a as i64, b as i64);
    let mut bnd = vec![0; n + 1];
    for i in 1..=n {
        let p = if i == 1 {
            (bi - 1, 2 * ai + 1)
        } else if i <= a {
            (2 * bi + 1, 2 * (ai - i as i64) + 1)
        } else {
            (2 * (n - i) as i64, -2)
        };
        bnd[i] = vertex(&mut g, Color::Boundary(i), p);
    }
    let top = vertex(&mut g, Color::White, (bi - 1, 2 * ai - 1));
    let mut white = HashMap::new();
    let mut black = HashMap::new();
    for r in 2..=a {
        let y = 2 * (ai - r as i64);
        for c in 0..b {
            white.insert((c, r), vertex(&mut g, Color::White, (2 * c as i64, y)));
            black.insert((c, r), vertex(&mut g, Color::Black, (2 * c as i64 + 1, y + 1)));
        }
    }
    let mut adj: Vec<Vec<usize>> = vec![vec![]; g.colors.len()];
    let mut link = |u: usize, v: usize| {
        adj[u].push(v);
        adj[v].push(u);
    };
    link(bnd[1], top);
    if a == 1 {
        for i in 2..=n {
            link(top, bnd[i]);
        }
    }
    for r in 2..=a {
        for c in 0..b {
            let k = black[&(c, r)];
            link(k, white[&(c, r)]);
            link(k, if c + 1 < b { white[&(c + 1, r)] } else { bnd[r] });
            link(k, if r > 2 { white[&(c, r - 1)] } else { top });
        }
    }
    if a >= 2 {
        for c in 0..b {
            link(white[&(c, a)], bnd[n - c]);
        }
    }
    let mut he = HashMap::new();
    for u in 0..adj.len() {
        for &v in &adj[u] {
            if u < v {
                let (h, t) = g.add_edge(u, v, false);
                he.insert((u, v), h);
                he.insert((v, u), t);
            }
        }
    }
    let mut arcs = HashMap::new();
    for i in 1..=n {
        let j = i % n + 1;
        let (h, t) = g.add_edge(bnd[i], bnd[j], true);
        arcs.insert((i, j, true), h);
        arcs.insert((j, i, false), t);
    }
    for v in 0..g.colors.len() {
        g.rotation[v] = match g.colors[v] {
            Color::Boundary(i) => {
                let prev = (i + n - 2) % n + 1;
                vec![arcs[&(i, i % n + 1, true)], arcs[&(i, prev, false)], he[&(v, adj[v][0])]]
            }
            _ => {
                let (px, py) = pos[v];
                let mut nb = adj[v].clone();
                nb.sort_by(|&x, &y| {
                    let ang = |w: usize| ((pos[w].1 - py) as f64).atan2((pos[w].0 - px) as f64);
                    ang(x).total_cmp(&ang(y))
                });
                nb.iter().map(|&w| he[&(v, w)]).collect()
            }
        };
    }
    g.validate()?;
    Ok(g)
}

/// Replaces `J ∪ {i,k}` by `J ∪ {j,l}` given the four neighbouring sets.
pub fn exchange_set(center: &[usize], neighbours: &[Vec<usize>]) -> Result<Vec<usize>> {
    if neighbours.len() != 4 {
        return Err(Error::MoveNotApplicable(format!("{} neighbours, need 4", neighbours.len())));
    }
    let sets: Vec<BTreeSet<usize>> = neighbours.iter().map(|s| s.iter().copied().collect()).collect();
    let union: BTreeSet<usize> = sets.iter().flatten().copied().collect();
    let meet: BTreeSet<usize> = sets.iter().skip(1).fold(sets[0].clone(), |m, s| &m & s);
    let c: BTreeSet<usize> = center.iter().copied().collect();
    if union.len() != meet.len() + 4 || !meet.is_subset(&c) || c.len() != meet.len() + 2 || sets.contains(&c) {
        return Err(Error::MoveNotApplicable("sets are not in exchange position".into()));
    }
    Ok(meet.union(&(&union - &c)).copied().collect())
}

/// Splits four neighbouring sets into the two opposite pairs of a three-term relation.
pub fn opposite_pairs(neighbours: &[Vec<usize>]) -> Result<[(Vec<usize>, Vec<usize>); 2]> {
    let union: BTreeSet<usize> = neighbours.iter().flatten().copied().collect();
    let covers = |x: &Vec<usize>, y: &Vec<usize>| x.iter().chain(y).collect::<BTreeSet<_>>().len() == union.len();
    if neighbours.len() != 4 {
        return Err(Error::MoveNotApplicable(format!("{} neighbours, need 4", neighbours.len())));
    }
    let p = (1..4)
        .find(|&p| covers(&neighbours[0], &neighbours[p]))
        .ok_or_else(|| Error::MoveNotApplicable("sets are not in exchange position".into()))?;
    let rest: Vec<usize> = (1..4).filter(|&k| k != p).collect();
    let pair0 = (neighbours[0].clone(), neighbours[p].clone());
    let pair1 = (neighbours[rest[0]].clone(), neighbours[rest[1]].clone());
    if !covers(&pair1.0, &pair1.1) {
        return Err(Error::MoveNotApplicable("sets are not in exchange position".into()));
    }
    Ok([pair0, pair1])
}

/// Checks Δ_{I} Δ_{I'} = Δ_{S} Δ_{N} + Δ_{E} Δ_{W} on a point of the Grassmannian.
pub fn plucker_exchange_holds(
    m: &RatMatrix,
    old: &[usize],
    new: &[usize],
    neighbours: &[Vec<usize>],
) -> Result<bool> {
    let [(s, nn), (e, w)] = opposite_pairs(neighbours)?;
    let d = |x: &[usize]| plucker(m, x);
    let lhs: Rational = d(old)? * d(new)?;
    Ok(lhs == d(&s)? * d(&nn)? + d(&e)? * d(&w)?)
}

/// One step of the rotation schedule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScheduleStep {
    pub vertex: VertexId,
    pub old: Vec<usize>,
    pub new: Vec<usize>,
    pub neighbours: Vec<Vec<usize>>,
}

/// Labels after mutating along ρ, with every exchange performed on dominating sets.
pub fn set_level_schedule(a: usize, n: usize) -> Result<(BTreeMap<VertexId, Vec<usize>>, Vec<ScheduleStep>)> {
    let mut q = standard_quiver(a, n)?;
    let mut labels: BTreeMap<VertexId, Vec<usize>> =
        standard_labels(a, n)?.into_iter().map(|(s, v)| (v, s)).collect();
    let mut steps = vec![];
    for k in rho_sequence(a, n)? {
        let nb: Vec<VertexId> = q.vertices().iter().copied().filter(|&u| q.eps(u, k) != 0).collect();
        if nb.len() != 4 || nb.iter().any(|&u| q.eps(u, k).abs() != 1) {
            return Err(Error::MoveNotApplicable(format!("vertex {k} is not 4-valent")));
        }
        let neighbours: Vec<Vec<usize>> = nb.iter().map(|u| labels[u].clone()).collect();
        let old = labels[&k].clone();
        let new = exchange_set(&old, &neighbours)?;
        labels.insert(k, new.clone());
        steps.push(ScheduleStep { vertex: k, old, new, neighbours });
        q = q.mutate(k)?;
    }
    Ok((labels, steps))
}

/// The same schedule realised by moves on Γ_{a,n}; returns the final graph and labels.
pub fn graph_level_schedule(a: usize, n: usize) -> Result<(PlabicGraph, BTreeMap<VertexId, Vec<usize>>)> {
    let mut g = standard_graph(a, n)?;
    let mut labels: BTreeMap<VertexId, Vec<usize>> =
        standard_labels(a, n)?.into_iter().map(|(s, v)| (v, s)).collect();
    for k in rho_sequence(a, n)? {
        let old = labels[&k].clone();
        g = g.normalized_square_move(&old)?;
        let known: BTreeSet<&Vec<usize>> = labels.iter().filter(|(v, _)| **v != k).map(|(_, s)| s).collect();
        let sets = g.dominating_sets()?;
        let fresh: Vec<&Vec<usize>> = sets.values().filter(|s| !known.contains(s)).collect();
        match fresh[..] {
            [s] => {
                labels.insert(k, s.clone());
            }
            _ => return Err(Error::Internal(format!("square move at {k} changed {} labels", fresh.len()))),
        }
    }
    Ok((g, labels))
}

/// Expected labels after ρ: vertex `v` carries `I'(ρ(v))`, with ρ the frozen rotation.
pub fn rotated_labels(a: usize, n: usize) -> Result<BTreeMap<VertexId, Vec<usize>>> {
    let perm = frozen_rotation(a, n)?;
    let mut out = BTreeMap::new();
    for v in grid_vertices(a, n - a) {
        let target = perm.get(&v).copied().unwrap_or(v);
        out.insert(v, crate::confspace::plucker_set_rotated(a, n, target)?);
    }
    Ok(out)
}
