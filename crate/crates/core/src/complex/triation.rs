//! Oriented simplicial 2-spheres.

use std::collections::{BTreeMap, BTreeSet};

use super::chain::{Chain2, Chain3};
use super::simplex::{sort_with_sign, Vertex};
use super::ComplexError;

/// An oriented simplicial 2-sphere on labels `0..v`.
///
/// Faces are kept as (sorted triple, sign) pairs in ascending triple order,
/// which is also the serialization order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Triation {
    v: u32,
    faces: Vec<([Vertex; 3], i8)>,
}

impl Triation {
    pub fn v(&self) -> u32 {
        self.v
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Canonical (sorted, sign) faces in ascending order.
    pub fn canonical_faces(&self) -> &[([Vertex; 3], i8)] {
        &self.faces
    }

    /// Faces as oriented triples: `(a,b,c)` for sign +1, `(a,c,b)` for -1.
    pub fn faces(&self) -> impl Iterator<Item = [Vertex; 3]> + '_ {
        self.faces.iter().map(|&(t, s)| oriented(t, s))
    }

    /// The fundamental class as a 2-chain (every face with coefficient 1).
    pub fn chain<C: num_traits::Signed + Clone>(&self) -> Chain2<C> {
        let mut c = Chain2::new();
        for &(t, s) in &self.faces {
            c.add_canonical(t, if s > 0 { C::one() } else { -C::one() });
        }
        c
    }

    /// Number of faces at each vertex (equal to the number of edges there).
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.v as usize];
        for (t, _) in &self.faces {
            for &x in t {
                deg[x as usize] += 1;
            }
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// A vertex of maximum degree, smallest label first.
    pub fn max_degree_vertex(&self) -> Vertex {
        let deg = self.degrees();
        let m = deg.iter().copied().max().unwrap_or(0);
        deg.iter().position(|&d| d == m).unwrap_or(0) as Vertex
    }

    /// Undirected edges `[a,b]` with `a < b`, ascending.
    pub fn edges(&self) -> Vec<[Vertex; 2]> {
        let mut set = BTreeSet::new();
        for (t, _) in &self.faces {
            set.insert([t[0], t[1]]);
            set.insert([t[0], t[2]]);
            set.insert([t[1], t[2]]);
        }
        set.into_iter().collect()
    }

    /// Neighbours of each vertex in cyclic order around it, following the
    /// orientation: for a face `(x, a, b)` at `x`, `b` follows `a`.
    pub fn rotation_system(&self) -> Vec<Vec<Vertex>> {
        let mut next: Vec<BTreeMap<Vertex, Vertex>> = vec![BTreeMap::new(); self.v as usize];
        for f in self.faces() {
            for k in 0..3 {
                let (x, a, b) = (f[k], f[(k + 1) % 3], f[(k + 2) % 3]);
                next[x as usize].insert(a, b);
            }
        }
        next.into_iter()
            .map(|m| {
                let Some((&start, _)) = m.iter().next() else {
                    return Vec::new();
                };
                let mut cyc = vec![start];
                let mut cur = m[&start];
                while cur != start && cyc.len() <= m.len() {
                    cyc.push(cur);
                    cur = m[&cur];
                }
                cyc
            })
            .collect()
    }

    /// Applies a relabeling `x -> perm[x]`; `perm` must be a permutation of `0..v`.
    pub fn relabel(&self, perm: &[Vertex]) -> Result<Triation, ComplexError> {
        let faces: Vec<[Vertex; 3]> = self
            .faces()
            .map(|f| [perm[f[0] as usize], perm[f[1] as usize], perm[f[2] as usize]])
            .collect();
        validate_triation(&faces)
    }

    /// Same faces with every orientation reversed.
    pub fn reversed(&self) -> Triation {
        Triation {
            v: self.v,
            faces: self.faces.iter().map(|&(t, s)| (t, -s)).collect(),
        }
    }

    /// `v <count>` followed by one `f a b c` line per face.
    pub fn to_text(&self) -> String {
        let mut s = format!("v {}\n", self.v);
        for f in self.faces() {
            s.push_str(&format!("f {} {} {}\n", f[0], f[1], f[2]));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Triation, ComplexError> {
        let mut declared: Option<u32> = None;
        let mut faces = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| ComplexError::Parse { line: i + 1, message };
            let mut parts = line.split_whitespace();
            let tag = parts.next().unwrap_or_default();
            let nums: Vec<u32> = parts
                .map(|p| p.parse::<u32>())
                .collect::<Result<_, _>>()
                .map_err(|e| err(format!("bad label: {e}")))?;
            match (tag, nums.as_slice()) {
                ("v", [n]) if declared.is_none() => declared = Some(*n),
                ("f", [a, b, c]) => faces.push([*a, *b, *c]),
                _ => return Err(err(format!("unexpected line `{line}`"))),
            }
        }
        let t = validate_triation(&faces)?;
        match declared {
            Some(n) if n != t.v => Err(ComplexError::Parse {
                line: 1,
                message: format!("header says v={n} but faces use {} labels", t.v),
            }),
            _ => Ok(t),
        }
    }
}

fn oriented(t: [Vertex; 3], sign: i8) -> [Vertex; 3] {
    if sign > 0 {
        t
    } else {
        [t[0], t[2], t[1]]
    }
}

/// Checks that an oriented face list is a simplicial 2-sphere on dense labels.
/// Reports the first failed check.
pub fn validate_triation(faces: &[[Vertex; 3]]) -> Result<Triation, ComplexError> {
    if faces.is_empty() {
        return Err(ComplexError::Empty);
    }
    let mut canon: Vec<([Vertex; 3], i8)> = Vec::with_capacity(faces.len());
    for f in faces {
        if f[0] == f[1] || f[1] == f[2] || f[0] == f[2] {
            return Err(ComplexError::DuplicateLabel(f.to_vec()));
        }
        canon.push(sort_with_sign(*f));
    }
    canon.sort();
    for w in canon.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(ComplexError::DuplicateFace(w[0].0));
        }
    }

    let labels: BTreeSet<Vertex> = canon.iter().flat_map(|(t, _)| t.iter().copied()).collect();
    let v = labels.iter().next_back().map_or(0, |&m| m + 1);
    if let Some(missing) = (0..v).find(|x| !labels.contains(x)) {
        return Err(ComplexError::SparseLabels { expected: v, missing });
    }

    // directed edge counts per undirected edge
    let mut edge_dirs: BTreeMap<[Vertex; 2], (usize, usize)> = BTreeMap::new();
    for &(t, s) in &canon {
        let f = oriented(t, s);
        for k in 0..3 {
            let (a, b) = (f[k], f[(k + 1) % 3]);
            let e = edge_dirs.entry([a.min(b), a.max(b)]).or_default();
            if a < b {
                e.0 += 1;
            } else {
                e.1 += 1;
            }
        }
    }
    for (edge, &(fwd, back)) in &edge_dirs {
        if fwd + back != 2 {
            return Err(ComplexError::NonManifoldEdge { edge: *edge, count: fwd + back });
        }
    }
    let bad: Vec<[Vertex; 2]> = edge_dirs
        .iter()
        .filter(|(_, &(fwd, back))| fwd != 1 || back != 1)
        .map(|(e, _)| *e)
        .collect();
    if !bad.is_empty() {
        return Err(ComplexError::InconsistentOrientation(bad));
    }

    let tri = Triation { v, faces: canon };

    // Each vertex link must be one cycle: the "next" map at a vertex is a
    // bijection on its neighbours once edges pair up, so count its orbits.
    let rot = tri.rotation_system();
    let mut nbr_count = vec![0usize; v as usize];
    for e in edge_dirs.keys() {
        nbr_count[e[0] as usize] += 1;
        nbr_count[e[1] as usize] += 1;
    }
    for x in 0..v as usize {
        if rot[x].len() != nbr_count[x] {
            return Err(ComplexError::VertexLink(x as Vertex));
        }
    }

    let mut seen = vec![false; v as usize];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for &y in &rot[x] {
            if !seen[y as usize] {
                seen[y as usize] = true;
                stack.push(y as usize);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(ComplexError::Disconnected);
    }

    let (vv, e, f) = (v as usize, edge_dirs.len(), tri.faces.len());
    let chi = vv as i64 - e as i64 + f as i64;
    if chi != 2 {
        return Err(ComplexError::Euler { v: vv, e, f, chi });
    }
    Ok(tri)
}

/// Tetration by coning from `a`: `[a b c d]` for every face `(b c d)` avoiding `a`.
/// It has `2v - 4 - deg(a)` tets.
pub fn cone(sigma: &Triation, a: Vertex) -> Result<Chain3, ComplexError> {
    if a >= sigma.v {
        return Err(ComplexError::VertexOutOfRange { vertex: a, v: sigma.v });
    }
    let mut tau = Chain3::new();
    for f in sigma.faces() {
        if !f.contains(&a) {
            tau.add_simplex([a, f[0], f[1], f[2]], 1)?;
        }
    }
    Ok(tau)
}

/// The icosahedron: apex 0, upper ring 1..=5, lower ring 6..=10, apex 11.
pub fn icosahedron() -> Triation {
    let u = |i: u32| 1 + i % 5;
    let l = |i: u32| 6 + i % 5;
    let mut faces = Vec::with_capacity(20);
    for i in 0..5 {
        faces.push([0, u(i), u(i + 1)]);
        faces.push([u(i), l(i), u(i + 1)]);
        faces.push([u(i + 1), l(i), l(i + 1)]);
        faces.push([11, l(i + 1), l(i)]);
    }
    validate_triation(&faces).expect("icosahedron face list is a sphere")
}
