//! Triangulations of a convex polygon, flip distance, and the sphere obtained
//! by gluing two triangulations along their common boundary.
//!
//! Polygon vertices `0..v` are in counterclockwise order, so a triangle
//! `(i, j, k)` with `i < j < k` is counterclockwise. A flip path from α to β
//! gives a tetration of the glued sphere with one tet per flip, so flip
//! distance bounds tet-volume from above.

use std::collections::{BTreeMap, HashMap, VecDeque};

use thiserror::Error;

use crate::complex::{canonical_code, validate_triation, Chain3, ComplexError, Triation, Vertex};
use crate::opt::{tetvol, OptError};

pub type Diagonal = [Vertex; 2];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FlipError {
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooSmall(u32),
    #[error("{0:?} is not a diagonal of a {1}-gon")]
    NotADiagonal(Diagonal, u32),
    #[error("diagonals {0:?} and {1:?} cross")]
    Crossing(Diagonal, Diagonal),
    #[error("a triangulation of a {v}-gon has {expected} diagonals, got {got}")]
    Count { v: u32, expected: usize, got: usize },
    #[error("diagonal {0:?} is not in the triangulation")]
    Missing(Diagonal),
    #[error("triangulations of different polygons ({0} and {1} vertices)")]
    SizeMismatch(u32, u32),
    #[error("both triangulations contain the diagonal {0:?}")]
    SharedDiagonal(Diagonal),
    #[error("no path within {0} flips")]
    CapExceeded(u32),
    #[error("malformed line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Opt(#[from] OptError),
}

fn crosses(d: Diagonal, e: Diagonal) -> bool {
    let [a, b] = d;
    let [c, x] = e;
    (a < c && c < b && b < x) || (c < a && a < x && x < b)
}

/// A set of `v - 3` pairwise non-crossing diagonals, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolygonTriangulation {
    v: u32,
    diagonals: Vec<Diagonal>,
}

impl PolygonTriangulation {
    pub fn new(v: u32, diagonals: &[Diagonal]) -> Result<Self, FlipError> {
        if v < 3 {
            return Err(FlipError::TooSmall(v));
        }
        let mut ds: Vec<Diagonal> = diagonals.iter().map(|&[i, j]| [i.min(j), i.max(j)]).collect();
        ds.sort_unstable();
        ds.dedup();
        for &d in &ds {
            let [i, j] = d;
            if j >= v || j - i < 2 || (i == 0 && j == v - 1) {
                return Err(FlipError::NotADiagonal(d, v));
            }
        }
        for (k, &d) in ds.iter().enumerate() {
            if let Some(&e) = ds[k + 1..].iter().find(|&&e| crosses(d, e)) {
                return Err(FlipError::Crossing(d, e));
            }
        }
        if ds.len() != v as usize - 3 {
            return Err(FlipError::Count { v, expected: v as usize - 3, got: ds.len() });
        }
        Ok(PolygonTriangulation { v, diagonals: ds })
    }

    /// All diagonals from `apex`.
    pub fn fan(v: u32, apex: Vertex) -> Result<Self, FlipError> {
        let ds: Vec<Diagonal> =
            (0..v).filter(|&x| x != apex && (x + 1) % v != apex && (apex + 1) % v != x).map(|x| [apex, x]).collect();
        Self::new(v, &ds)
    }

    pub fn v(&self) -> u32 {
        self.v
    }

    pub fn diagonals(&self) -> &[Diagonal] {
        &self.diagonals
    }

    fn is_edge(&self, i: Vertex, j: Vertex) -> bool {
        let (i, j) = (i.min(j), i.max(j));
        j - i == 1 || (i == 0 && j == self.v - 1) || self.diagonals.binary_search(&[i, j]).is_ok()
    }

    /// The `v - 2` triangles, each sorted.
    pub fn triangles(&self) -> Vec<[Vertex; 3]> {
        let mut out = Vec::with_capacity(self.v as usize - 2);
        for i in 0..self.v {
            for j in i + 1..self.v {
                if !self.is_edge(i, j) {
                    continue;
                }
                for k in j + 1..self.v {
                    if self.is_edge(j, k) && self.is_edge(i, k) {
                        out.push([i, j, k]);
                    }
                }
            }
        }
        out
    }

    /// The diagonal that replaces `d`, and the sorted quadrilateral both live in.
    fn opposite(&self, d: Diagonal) -> Result<(Diagonal, [Vertex; 4]), FlipError> {
        if self.diagonals.binary_search(&d).is_err() {
            return Err(FlipError::Missing(d));
        }
        let [i, j] = d;
        let k = self.apex(d, i + 1..j);
        let l = self.apex(d, (j + 1..self.v).chain(0..i));
        let mut quad = [i, j, k, l];
        quad.sort_unstable();
        Ok(([k.min(l), k.max(l)], quad))
    }

    /// Third vertex of the face on one side of `d`. With no interior vertices
    /// every triangle of edges is a face, so the first hit is it.
    fn apex(&self, d: Diagonal, mut side: impl Iterator<Item = Vertex>) -> Vertex {
        let [i, j] = d;
        side.find(|&k| self.is_edge(i, k) && self.is_edge(k, j)).expect("a triangulation has a face on each side")
    }

    /// Replaces `d` by the other diagonal of its quadrilateral.
    pub fn flip(&self, d: Diagonal) -> Result<Self, FlipError> {
        let d = [d[0].min(d[1]), d[0].max(d[1])];
        let (e, _) = self.opposite(d)?;
        let mut ds = self.diagonals.clone();
        let pos = ds.binary_search(&d).expect("present");
        ds.remove(pos);
        let at = ds.binary_search(&e).unwrap_err();
        ds.insert(at, e);
        Ok(PolygonTriangulation { v: self.v, diagonals: ds })
    }

    /// Every triangulation one flip away, in diagonal order.
    pub fn neighbors(&self) -> Vec<Self> {
        self.diagonals.iter().map(|&d| self.flip(d).expect("own diagonal")).collect()
    }

    pub fn shares_diagonal(&self, other: &Self) -> Option<Diagonal> {
        self.diagonals.iter().copied().find(|d| other.diagonals.binary_search(d).is_ok())
    }

    /// `p <v>` then one `d <i> <j>` line per diagonal.
    pub fn to_text(&self) -> String {
        let mut s = format!("p {}\n", self.v);
        for [i, j] in &self.diagonals {
            s.push_str(&format!("d {i} {j}\n"));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self, FlipError> {
        let mut v = None;
        let mut ds = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |m: &str| FlipError::Parse { line: n + 1, message: format!("{m}: `{line}`") };
            let parts: Vec<&str> = line.split_whitespace().collect();
            let nums: Vec<u32> =
                parts[1..].iter().map(|p| p.parse()).collect::<Result<_, _>>().map_err(|_| err("bad number"))?;
            match (parts[0], nums.as_slice(), v) {
                ("p", [n], None) => v = Some(*n),
                ("d", [i, j], Some(_)) if i < j => ds.push([*i, *j]),
                _ => return Err(err("expected `p v` then `d i j` with i < j")),
            }
        }
        let v = v.ok_or(FlipError::Parse { line: 1, message: "missing `p` line".into() })?;
        Self::new(v, &ds)
    }
}

/// All triangulations of the `v`-gon, sorted.
pub fn all_triangulations(v: u32) -> Vec<PolygonTriangulation> {
    fn rec(i: Vertex, j: Vertex, memo: &mut HashMap<(Vertex, Vertex), Vec<Vec<Diagonal>>>) -> Vec<Vec<Diagonal>> {
        if j - i < 2 {
            return vec![Vec::new()];
        }
        if let Some(r) = memo.get(&(i, j)) {
            return r.clone();
        }
        let mut out = Vec::new();
        for k in i + 1..j {
            let left = rec(i, k, memo);
            let right = rec(k, j, memo);
            for l in &left {
                for r in &right {
                    let mut ds = l.clone();
                    ds.extend(r);
                    if k - i >= 2 {
                        ds.push([i, k]);
                    }
                    if j - k >= 2 {
                        ds.push([k, j]);
                    }
                    out.push(ds);
                }
            }
        }
        memo.insert((i, j), out.clone());
        out
    }
    if v < 3 {
        return Vec::new();
    }
    let mut all: Vec<PolygonTriangulation> = rec(0, v - 1, &mut HashMap::new())
        .into_iter()
        .map(|ds| PolygonTriangulation::new(v, &ds).expect("valid by construction"))
        .collect();
    all.sort();
    all
}

/// A start triangulation and the flips applied to it, as (removed, inserted).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlipPath {
    start: PolygonTriangulation,
    steps: Vec<(Diagonal, Diagonal)>,
    end: PolygonTriangulation,
}

impl FlipPath {
    pub fn new(start: PolygonTriangulation) -> Self {
        FlipPath { end: start.clone(), start, steps: Vec::new() }
    }

    pub fn push(&mut self, d: Diagonal) -> Result<(), FlipError> {
        let d = [d[0].min(d[1]), d[0].max(d[1])];
        let (e, _) = self.end.opposite(d)?;
        self.end = self.end.flip(d)?;
        self.steps.push((d, e));
        Ok(())
    }

    pub fn start(&self) -> &PolygonTriangulation {
        &self.start
    }

    pub fn end(&self) -> &PolygonTriangulation {
        &self.end
    }

    pub fn steps(&self) -> &[(Diagonal, Diagonal)] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Flip distance by bidirectional breadth-first search. Fails when the
/// distance exceeds `cap`.
pub fn flip_distance(alpha: &PolygonTriangulation, beta: &PolygonTriangulation, cap: u32) -> Result<u32, FlipError> {
    if alpha.v != beta.v {
        return Err(FlipError::SizeMismatch(alpha.v, beta.v));
    }
    if alpha == beta {
        return Ok(0);
    }
    let mut seen = [HashMap::from([(alpha.clone(), 0u32)]), HashMap::from([(beta.clone(), 0u32)])];
    let mut frontier = [vec![alpha.clone()], vec![beta.clone()]];
    let mut radius = [0u32, 0u32];
    while radius[0] + radius[1] < cap {
        let side = if frontier[0].len() <= frontier[1].len() { 0 } else { 1 };
        if frontier[side].is_empty() {
            break;
        }
        radius[side] += 1;
        let mut next = Vec::new();
        let mut best: Option<u32> = None;
        for t in &frontier[side] {
            for n in t.neighbors() {
                if seen[side].contains_key(&n) {
                    continue;
                }
                if let Some(&d) = seen[1 - side].get(&n) {
                    let total = radius[side] + d;
                    best = Some(best.map_or(total, |b| b.min(total)));
                }
                seen[side].insert(n.clone(), radius[side]);
                next.push(n);
            }
        }
        if let Some(b) = best {
            return Ok(b);
        }
        frontier[side] = next;
    }
    Err(FlipError::CapExceeded(cap))
}

/// A shortest flip path, by breadth-first search from `alpha`.
pub fn shortest_path(alpha: &PolygonTriangulation, beta: &PolygonTriangulation) -> Result<FlipPath, FlipError> {
    if alpha.v != beta.v {
        return Err(FlipError::SizeMismatch(alpha.v, beta.v));
    }
    let mut parent: HashMap<PolygonTriangulation, (PolygonTriangulation, Diagonal)> = HashMap::new();
    let mut queue = VecDeque::from([alpha.clone()]);
    let mut found = alpha == beta;
    while let Some(t) = queue.pop_front() {
        if found {
            break;
        }
        for &d in &t.diagonals {
            let n = t.flip(d)?;
            if n == *alpha || parent.contains_key(&n) {
                continue;
            }
            parent.insert(n.clone(), (t.clone(), d));
            if n == *beta {
                found = true;
                break;
            }
            queue.push_back(n);
        }
    }
    let mut flips = Vec::new();
    let mut at = beta.clone();
    while at != *alpha {
        let (prev, d) = parent.get(&at).expect("beta was reached").clone();
        flips.push(d);
        at = prev;
    }
    let mut path = FlipPath::new(alpha.clone());
    for d in flips.into_iter().rev() {
        path.push(d)?;
    }
    Ok(path)
}

/// The sphere `α - β`: α's triangles counterclockwise, β's reversed.
pub fn glue(alpha: &PolygonTriangulation, beta: &PolygonTriangulation) -> Result<Triation, FlipError> {
    if alpha.v != beta.v {
        return Err(FlipError::SizeMismatch(alpha.v, beta.v));
    }
    if let Some(d) = alpha.shares_diagonal(beta) {
        return Err(FlipError::SharedDiagonal(d));
    }
    let mut faces = alpha.triangles();
    faces.extend(beta.triangles().into_iter().map(|[i, j, k]| [i, k, j]));
    Ok(validate_triation(&faces)?)
}

/// One tet per flip on the flipped quadrilateral `a < b < c < d`: `-[abcd]`
/// when `ac` becomes `bd`, `+[abcd]` the other way. The boundary telescopes
/// to `α - β`.
pub fn path_to_chain(path: &FlipPath) -> Chain3 {
    let mut tau = Chain3::new();
    let mut at = path.start.clone();
    for &(removed, _) in &path.steps {
        let (_, quad) = at.opposite(removed).expect("path was validated when built");
        let coef = if removed == [quad[0], quad[2]] { -1 } else { 1 };
        tau.add_canonical(quad, coef);
        at = at.flip(removed).expect("path was validated when built");
    }
    tau
}

/// Flip graph of the `v`-gon over [`all_triangulations`] order.
#[derive(Clone, Debug)]
pub struct FlipGraph {
    pub nodes: Vec<PolygonTriangulation>,
    pub adjacency: Vec<Vec<u32>>,
}

impl FlipGraph {
    pub fn new(v: u32) -> Self {
        let nodes = all_triangulations(v);
        let index: HashMap<&PolygonTriangulation, u32> = nodes.iter().enumerate().map(|(i, t)| (t, i as u32)).collect();
        let adjacency = nodes.iter().map(|t| t.neighbors().iter().map(|n| index[n]).collect()).collect();
        FlipGraph { nodes, adjacency }
    }

    pub fn distances_from(&self, start: usize) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.nodes.len()];
        dist[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &y in &self.adjacency[x] {
                if dist[y as usize] == u32::MAX {
                    dist[y as usize] = dist[x] + 1;
                    queue.push_back(y as usize);
                }
            }
        }
        dist
    }

    pub fn diameter(&self) -> u32 {
        (0..self.nodes.len()).map(|i| self.distances_from(i).into_iter().max().unwrap_or(0)).max().unwrap_or(0)
    }
}

/// Tet-volumes of glued spheres, shared between spheres equal up to
/// relabeling or reversal.
#[derive(Default)]
pub struct TetvolCache {
    values: BTreeMap<Vec<u32>, (u64, bool)>,
    node_budget: u64,
}

impl TetvolCache {
    pub fn new(node_budget: u64) -> Self {
        TetvolCache { values: BTreeMap::new(), node_budget }
    }

    /// `(tetvol, proved)`.
    pub fn get(&mut self, sigma: &Triation) -> Result<(u64, bool), FlipError> {
        let key = canonical_code(sigma).min(canonical_code(&sigma.reversed()));
        if let Some(&r) = self.values.get(&key) {
            return Ok(r);
        }
        let r = tetvol(sigma, self.node_budget)?;
        self.values.insert(key, (r.value, r.proved));
        Ok((r.value, r.proved))
    }

    /// Distinct spheres solved so far.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Flip distance against tet-volume over every ordered pair without a
/// common diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Survey {
    pub v: u32,
    pub triangulations: usize,
    pub pairs: u64,
    /// Distinct glued spheres up to relabeling and reversal.
    pub spheres: usize,
    pub min_gap: i64,
    pub max_gap: i64,
    pub max_flipdist: u32,
    /// Pairs with flip distance below tet-volume; must be empty.
    pub violations: Vec<(usize, usize)>,
    pub unproven: usize,
}

pub fn survey(v: u32, node_budget: u64) -> Result<Survey, FlipError> {
    let graph = FlipGraph::new(v);
    let mut cache = TetvolCache::new(node_budget);
    let n = graph.nodes.len();
    let mut out = Survey {
        v,
        triangulations: n,
        pairs: 0,
        spheres: 0,
        min_gap: i64::MAX,
        max_gap: i64::MIN,
        max_flipdist: 0,
        violations: Vec::new(),
        unproven: 0,
    };
    for i in 0..n {
        let dist = graph.distances_from(i);
        for j in 0..n {
            let (a, b) = (&graph.nodes[i], &graph.nodes[j]);
            if a.shares_diagonal(b).is_some() {
                continue;
            }
            let (tv, proved) = cache.get(&glue(a, b)?)?;
            out.pairs += 1;
            out.unproven += usize::from(!proved);
            let gap = dist[j] as i64 - tv as i64;
            out.min_gap = out.min_gap.min(gap);
            out.max_gap = out.max_gap.max(gap);
            out.max_flipdist = out.max_flipdist.max(dist[j]);
            if gap < 0 {
                out.violations.push((i, j));
            }
        }
    }
    out.spheres = cache.len();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapPair {
    pub alpha: PolygonTriangulation,
    pub beta: PolygonTriangulation,
    pub tetvol: u64,
    pub flipdist: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GapPairSearch {
    Found(GapPair),
    /// Every candidate was examined.
    None,
    /// The sphere budget ran out first.
    Budget,
}

/// Looks for a pair with flip distance above the tet-volume of the glued
/// sphere. Pairs without a common diagonal are tried by decreasing flip
/// distance, then in triangulation order; at most `budget` distinct spheres
/// are solved.
pub fn find_gap_pair(v: u32, budget: usize) -> Result<GapPairSearch, FlipError> {
    let graph = FlipGraph::new(v);
    let n = graph.nodes.len();
    let mut pairs: Vec<(u32, usize, usize)> = Vec::new();
    for i in 0..n {
        let dist = graph.distances_from(i);
        for j in i + 1..n {
            if graph.nodes[i].shares_diagonal(&graph.nodes[j]).is_none() {
                pairs.push((dist[j], i, j));
            }
        }
    }
    pairs.sort_by(|x, y| y.0.cmp(&x.0).then((x.1, x.2).cmp(&(y.1, y.2))));
    let mut cache = TetvolCache::new(u64::MAX);
    for (d, i, j) in pairs {
        let sigma = glue(&graph.nodes[i], &graph.nodes[j])?;
        if cache.len() >= budget {
            let key = canonical_code(&sigma).min(canonical_code(&sigma.reversed()));
            if !cache.values.contains_key(&key) {
                return Ok(GapPairSearch::Budget);
            }
        }
        let (tv, _) = cache.get(&sigma)?;
        if (d as u64) > tv {
            return Ok(GapPairSearch::Found(GapPair {
                alpha: graph.nodes[i].clone(),
                beta: graph.nodes[j].clone(),
                tetvol: tv,
                flipdist: d,
            }));
        }
    }
    Ok(GapPairSearch::None)
}
