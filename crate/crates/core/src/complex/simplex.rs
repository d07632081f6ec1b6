//! Ordered vertex tuples and their canonical (sorted, signed) form.

use super::ComplexError;

pub type Vertex = u32;

/// An ordered tuple of distinct vertex labels; the order carries orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex<const N: usize>([Vertex; N]);

pub type OrientedTriple = Simplex<3>;
pub type OrientedTet = Simplex<4>;

impl<const N: usize> Simplex<N> {
    pub fn new(vertices: [Vertex; N]) -> Result<Self, ComplexError> {
        for i in 0..N {
            for j in i + 1..N {
                if vertices[i] == vertices[j] {
                    return Err(ComplexError::DuplicateLabel(vertices.to_vec()));
                }
            }
        }
        Ok(Simplex(vertices))
    }

    pub fn vertices(&self) -> [Vertex; N] {
        self.0
    }

    /// Sorted tuple and the parity (+1/-1) of the sorting permutation.
    pub fn canonical(&self) -> ([Vertex; N], i8) {
        sort_with_sign(self.0)
    }
}

/// Sorts distinct labels ascending, returning the parity of the permutation.
pub fn canonicalize<const N: usize>(tuple: [Vertex; N]) -> Result<([Vertex; N], i8), ComplexError> {
    Ok(Simplex::new(tuple)?.canonical())
}

/// Insertion sort counting transpositions; callers guarantee distinct labels.
pub(crate) fn sort_with_sign<const N: usize>(mut tuple: [Vertex; N]) -> ([Vertex; N], i8) {
    let mut sign = 1i8;
    for i in 1..N {
        let mut j = i;
        while j > 0 && tuple[j - 1] > tuple[j] {
            tuple.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    (tuple, sign)
}

/// Oriented boundary faces of a tet `[a b c d]`:
/// `+[bcd] -[acd] +[abd] -[abc]`.
pub fn tet_faces(tet: [Vertex; 4]) -> [([Vertex; 3], i8); 4] {
    let [a, b, c, d] = tet;
    [([b, c, d], 1), ([a, c, d], -1), ([a, b, d], 1), ([a, b, c], -1)]
}
