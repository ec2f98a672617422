//! Small simplicial complexes with exact reduced homology ranks.

use crate::error::{Error, Result};
use crate::linalg::{rank, CoefficientField};

/// Cap on the number of faces a complex may hold.
pub const FACE_CAP: u64 = 1 << 20;

/// A simplicial complex on at most 32 vertices, stored as bitmask faces
/// (downward closed).  The empty face (mask 0) belongs to every nonempty
/// complex; a complex with no faces at all is the void complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplexSmall {
    vertices: Vec<usize>,
    facets: Vec<u32>,
    faces: Vec<u32>,
}

impl SimplicialComplexSmall {
    /// Downward closure of a set of facets given as local bitmasks.
    pub fn from_facets(vertices: Vec<usize>, facets: Vec<u32>) -> Result<Self> {
        assert!(vertices.len() <= 32);
        let mut maximal: Vec<u32> = Vec::new();
        for f in facets {
            debug_assert!(f < (1u64 << vertices.len()) as u32 || vertices.len() == 32);
            if maximal.iter().any(|&m| m | f == m) {
                continue;
            }
            maximal.retain(|&m| m | f != f || m == f);
            maximal.push(f);
        }
        let budget: u64 = maximal.iter().map(|&m| 1u64 << m.count_ones()).sum();
        if budget > FACE_CAP {
            return Err(Error::ResourceLimit {
                what: "simplicial complex faces".into(),
                required: budget,
                limit: FACE_CAP,
            });
        }
        let mut faces: Vec<u32> = Vec::new();
        for &m in &maximal {
            let mut sub = m;
            loop {
                faces.push(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & m;
            }
        }
        faces.sort_unstable();
        faces.dedup();
        Ok(SimplicialComplexSmall {
            vertices,
            facets: maximal,
            faces,
        })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn facets(&self) -> &[u32] {
        &self.facets
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn is_void(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn dimension(&self) -> Option<i32> {
        self.faces
            .iter()
            .map(|f| f.count_ones() as i32 - 1)
            .max()
    }

    /// Ranks of the reduced homology groups over the field; entry d+1 is
    /// the rank in dimension d, for d = -1 .. dim.  The void complex has no
    /// homology; the complex {∅} has rank one in dimension -1.
    pub fn reduced_homology_ranks(&self, field: CoefficientField) -> Vec<u64> {
        if self.is_void() {
            return Vec::new();
        }
        // A cone is contractible.
        let common = self.facets.iter().fold(u32::MAX, |acc, &f| acc & f);
        if common != 0 {
            let dim = self.dimension().expect("nonempty");
            return vec![0; (dim + 2) as usize];
        }
        let dim = self.dimension().expect("nonempty");
        // Faces grouped by dimension; group k holds the (k-1)-dimensional
        // faces (popcount k), group 0 the empty face.
        let mut by_dim: Vec<Vec<u32>> = vec![Vec::new(); (dim + 2) as usize];
        for &f in &self.faces {
            by_dim[f.count_ones() as usize].push(f);
        }
        // boundary_rank[k] = rank of the boundary map from group k+1 into
        // group k (i.e. from dimension k to dimension k-1).
        let groups = by_dim.len();
        let mut boundary_rank = vec![0usize; groups + 1];
        for k in 1..groups {
            boundary_rank[k] = rank(&boundary_matrix(&by_dim[k - 1], &by_dim[k]), field);
        }
        let mut ranks = Vec::with_capacity(groups);
        for k in 0..groups {
            let faces_k = by_dim[k].len();
            let next_rank = if k + 1 < groups { boundary_rank[k + 1] } else { 0 };
            ranks.push((faces_k - boundary_rank[k] - next_rank) as u64);
        }
        ranks
    }
}

/// Rows indexed by the lower faces, columns by the upper faces; the entry
/// for removing the j-th smallest vertex is (-1)^j.
fn boundary_matrix(lower: &[u32], upper: &[u32]) -> Vec<Vec<i64>> {
    let index_of = |mask: u32| -> usize {
        lower.binary_search(&mask).expect("faces are downward closed")
    };
    let mut m = vec![vec![0i64; upper.len()]; lower.len()];
    for (col, &face) in upper.iter().enumerate() {
        let mut sign = 1i64;
        let mut rest = face;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            m[index_of(face ^ bit)][col] = sign;
            sign = -sign;
            rest ^= bit;
        }
    }
    m
}
