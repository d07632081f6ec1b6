//! Orientation-preserving isomorphism of triations via a canonical code.
//!
//! Rooting a BFS at a dart (directed edge) and walking each rotation from the
//! edge a vertex was discovered along labels the whole sphere
//! deterministically. The smallest code over all darts is an invariant that
//! determines the triation up to orientation-preserving relabeling.

use std::collections::VecDeque;

use super::triation::Triation;
use super::simplex::Vertex;

const SEP: u32 = u32::MAX;

/// Lexicographically smallest BFS code over all darts.
pub fn canonical_code(sigma: &Triation) -> Vec<u32> {
    let rot = sigma.rotation_system();
    let deg: Vec<usize> = rot.iter().map(Vec::len).collect();
    // Rooting only at maximum-degree vertices is still relabeling-invariant.
    let max = *deg.iter().max().unwrap_or(&0);
    let mut best: Option<Vec<u32>> = None;
    for x in 0..rot.len() {
        if deg[x] != max {
            continue;
        }
        for i in 0..rot[x].len() {
            let (code, _) = code_from_dart(&rot, x as Vertex, i);
            if best.as_ref().is_none_or(|b| code < *b) {
                best = Some(code);
            }
        }
    }
    let mut out = vec![sigma.v()];
    out.extend(best.unwrap_or_default());
    out
}

/// BFS code from a dart, and the label each vertex received.
fn code_from_dart(rot: &[Vec<Vertex>], root: Vertex, first: usize) -> (Vec<u32>, Vec<u32>) {
    let n = rot.len();
    let mut label = vec![SEP; n];
    // entry[x] = index into rot[x] where the walk around x starts
    let mut entry = vec![0usize; n];
    label[root as usize] = 0;
    entry[root as usize] = first;
    let mut next = 1u32;
    let mut queue = VecDeque::from([root]);
    let mut code = Vec::with_capacity(n * 7);
    while let Some(x) = queue.pop_front() {
        let r = &rot[x as usize];
        code.push(r.len() as u32);
        for k in 0..r.len() {
            let y = r[(entry[x as usize] + k) % r.len()];
            if label[y as usize] == SEP {
                label[y as usize] = next;
                next += 1;
                let ry = &rot[y as usize];
                entry[y as usize] = ry.iter().position(|&z| z == x).unwrap_or(0);
                queue.push_back(y);
            }
            code.push(label[y as usize]);
        }
    }
    (code, label)
}

/// All orientation-preserving automorphisms, each as the image of every
/// vertex; the identity comes first.
pub fn automorphisms(sigma: &Triation) -> Vec<Vec<Vertex>> {
    let rot = sigma.rotation_system();
    if rot.is_empty() {
        return Vec::new();
    }
    let (code0, label0) = code_from_dart(&rot, 0, 0);
    let mut out = Vec::new();
    for x in 0..rot.len() {
        if rot[x].len() != rot[0].len() {
            continue;
        }
        for i in 0..rot[x].len() {
            let (code, label) = code_from_dart(&rot, x as Vertex, i);
            if code != code0 {
                continue;
            }
            // vertex with label k under the root dart maps to the vertex with label k here
            let mut by_label = vec![0 as Vertex; rot.len()];
            for (y, &l) in label.iter().enumerate() {
                by_label[l as usize] = y as Vertex;
            }
            out.push(label0.iter().map(|&l| by_label[l as usize]).collect());
        }
    }
    out
}

/// True when a label bijection maps the faces of `a` onto those of `b`
/// preserving orientation.
pub fn isomorphic(a: &Triation, b: &Triation) -> bool {
    if a.v() != b.v() || a.face_count() != b.face_count() {
        return false;
    }
    let mut da = a.degrees();
    let mut db = b.degrees();
    da.sort_unstable();
    db.sort_unstable();
    da == db && canonical_code(a) == canonical_code(b)
}
