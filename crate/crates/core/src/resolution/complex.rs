use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::field::Field;
use crate::error::{Error, Result};
use crate::graph::VertexSet;

pub const MAX_FACES: usize = 1 << 22;

/// A simplicial complex given by its facets (bitmasks over a ground set).
/// No facets is the void complex; the single facet `∅` is the empty complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialComplex {
    pub ground: VertexSet,
    facets: Vec<u32>,
}

impl SimplicialComplex {
    pub fn void(ground: VertexSet) -> Self {
        SimplicialComplex {
            ground,
            facets: Vec::new(),
        }
    }

    pub fn empty(ground: VertexSet) -> Self {
        SimplicialComplex {
            ground,
            facets: vec![0],
        }
    }

    /// Keeps only the maximal sets among `faces`.
    pub fn from_faces(ground: VertexSet, faces: impl IntoIterator<Item = u32>) -> Self {
        let mut all: Vec<u32> = faces.into_iter().collect();
        all.sort_unstable_by_key(|f| std::cmp::Reverse(f.count_ones()));
        all.dedup();
        let mut facets: Vec<u32> = Vec::new();
        for f in all {
            if !facets.iter().any(|&g| f & g == f) {
                facets.push(f);
            }
        }
        facets.sort_unstable();
        SimplicialComplex { ground, facets }
    }

    pub fn facets(&self) -> &[u32] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn contains(&self, face: u32) -> bool {
        self.facets.iter().any(|&f| face & f == face)
    }

    /// `-1` for the empty complex; `None` for the void complex.
    pub fn dim(&self) -> Option<i32> {
        self.facets.iter().map(|f| f.count_ones() as i32 - 1).max()
    }

    /// All faces with `k + 1` vertices, sorted.
    pub fn faces_of_dim(&self, k: i32) -> Vec<u32> {
        if k < -1 {
            return Vec::new();
        }
        let size = (k + 1) as u32;
        let mut out = Vec::new();
        for &f in &self.facets {
            if f.count_ones() >= size {
                subsets_of_size(f, size, &mut out);
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Repeatedly deletes dominated vertices (every facet through `v` also
    /// contains some `w ≠ v`). The result is homotopy equivalent.
    pub fn strong_collapse(&self) -> SimplicialComplex {
        let mut facets = self.facets.clone();
        loop {
            let verts = facets.iter().fold(0u32, |a, &f| a | f);
            let mut changed = false;
            let mut bits = verts;
            while bits != 0 {
                let v = bits.trailing_zeros();
                bits &= bits - 1;
                let through = facets
                    .iter()
                    .filter(|&&f| f >> v & 1 == 1)
                    .fold(verts, |a, &f| a & f);
                if through & !(1 << v) != 0 {
                    let removed: Vec<u32> = facets.iter().map(|&f| f & !(1 << v)).collect();
                    facets = SimplicialComplex::from_faces(self.ground, removed).facets;
                    changed = true;
                    break;
                }
            }
            if !changed {
                break;
            }
        }
        SimplicialComplex {
            ground: self.ground,
            facets,
        }
    }

    fn face_count(&self) -> usize {
        self.facets.iter().map(|f| 1usize << f.count_ones()).sum()
    }

    /// `dim H̃_k` for `k = -1 ..= dim`, index 0 holding `H̃_{-1}`.
    pub fn reduced_homology_dims(&self, field: Field) -> Result<Vec<usize>> {
        let Some(top) = self.dim() else {
            return Ok(Vec::new());
        };
        self.check_size()?;
        let mut chains = ChainCache::new(self, field);
        Ok((-1..=top).map(|k| chains.homology(k)).collect())
    }

    /// Least `k ≤ kmax` with `H̃_k ≠ 0`.
    pub fn lowest_homology(&self, field: Field, kmax: i32) -> Result<Option<i32>> {
        let Some(top) = self.dim() else {
            return Ok(None);
        };
        self.check_size()?;
        let mut chains = ChainCache::new(self, field);
        Ok((-1..=top.min(kmax)).find(|&k| chains.homology(k) != 0))
    }

    fn check_size(&self) -> Result<()> {
        let faces = self.face_count();
        if faces > MAX_FACES {
            return Err(Error::CapExceeded {
                what: "complex faces",
                value: faces,
                limit: MAX_FACES,
            });
        }
        Ok(())
    }
}

fn subsets_of_size(set: u32, size: u32, out: &mut Vec<u32>) {
    fn rec(rest: u32, need: u32, acc: u32, out: &mut Vec<u32>) {
        if need == 0 {
            out.push(acc);
            return;
        }
        if rest.count_ones() < need {
            return;
        }
        let v = rest.trailing_zeros();
        let rest = rest & (rest - 1);
        rec(rest, need - 1, acc | 1 << v, out);
        rec(rest, need, acc, out);
    }
    rec(set, size, 0, out);
}

/// Faces and boundary ranks, filled lazily.
struct ChainCache<'a> {
    complex: &'a SimplicialComplex,
    field: Field,
    faces: HashMap<i32, Vec<u32>>,
    ranks: HashMap<i32, usize>,
}

impl<'a> ChainCache<'a> {
    fn new(complex: &'a SimplicialComplex, field: Field) -> Self {
        ChainCache {
            complex,
            field,
            faces: HashMap::new(),
            ranks: HashMap::new(),
        }
    }

    fn faces(&mut self, k: i32) -> &Vec<u32> {
        let complex = self.complex;
        self.faces.entry(k).or_insert_with(|| complex.faces_of_dim(k))
    }

    /// Rank of `∂_k : C_k → C_{k-1}`.
    fn rank(&mut self, k: i32) -> usize {
        if k <= -1 {
            return 0;
        }
        if let Some(&r) = self.ranks.get(&k) {
            return r;
        }
        let lower = self.faces(k - 1).clone();
        let index: HashMap<u32, u32> = lower.iter().enumerate().map(|(i, &f)| (f, i as u32)).collect();
        let cols: Vec<Vec<(u32, i32)>> = self
            .faces(k)
            .iter()
            .map(|&f| {
                let mut col = Vec::with_capacity(f.count_ones() as usize);
                let mut bits = f;
                let mut sign = 1;
                while bits != 0 {
                    let v = bits.trailing_zeros();
                    bits &= bits - 1;
                    col.push((index[&(f & !(1 << v))], sign));
                    sign = -sign;
                }
                col
            })
            .collect();
        let r = self.field.rank(lower.len(), &cols);
        self.ranks.insert(k, r);
        r
    }

    fn homology(&mut self, k: i32) -> usize {
        let c = self.faces(k).len();
        c - self.rank(k) - self.rank(k + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(faces: &[u32]) -> SimplicialComplex {
        let ground = VertexSet::from_bits(faces.iter().fold(0, |a, &f| a | f));
        SimplicialComplex::from_faces(ground, faces.iter().copied())
    }

    #[test]
    fn conventions() {
        let g = VertexSet::full(3);
        assert!(SimplicialComplex::void(g).reduced_homology_dims(Field::default()).unwrap().is_empty());
        assert_eq!(
            SimplicialComplex::empty(g).reduced_homology_dims(Field::default()).unwrap(),
            vec![1]
        );
        assert_eq!(cx(&[0b1]).reduced_homology_dims(Field::default()).unwrap(), vec![0, 0]);
    }

    #[test]
    fn circle_and_sphere() {
        let hollow = cx(&[0b011, 0b110, 0b101]);
        assert_eq!(hollow.reduced_homology_dims(Field::default()).unwrap(), vec![0, 0, 1]);
        assert_eq!(hollow.reduced_homology_dims(Field::Rational).unwrap(), vec![0, 0, 1]);
        let sphere = cx(&[0b0111, 0b1011, 0b1101, 0b1110]);
        assert_eq!(sphere.reduced_homology_dims(Field::default()).unwrap(), vec![0, 0, 0, 1]);
        assert_eq!(sphere.lowest_homology(Field::default(), 5).unwrap(), Some(2));
        assert_eq!(sphere.lowest_homology(Field::default(), 1).unwrap(), None);
        let points = cx(&[0b001, 0b010, 0b100]);
        assert_eq!(points.reduced_homology_dims(Field::default()).unwrap(), vec![0, 2]);
    }

    #[test]
    fn projective_plane_depends_on_characteristic() {
        // six-vertex triangulation of RP^2
        let tri = [
            [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1],
            [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3],
        ];
        let rp2 = cx(&tri.map(|t| t.iter().fold(0u32, |a, &v| a | 1 << v)));
        assert_eq!(rp2.reduced_homology_dims(Field::Prime(2)).unwrap(), vec![0, 0, 1, 1]);
        assert_eq!(rp2.reduced_homology_dims(Field::default()).unwrap(), vec![0, 0, 0, 0]);
        assert_eq!(rp2.reduced_homology_dims(Field::Rational).unwrap(), vec![0, 0, 0, 0]);
    }

    #[test]
    fn collapse_keeps_homology() {
        // cone over a circle plus a dangling edge
        let c = cx(&[0b0011 | 0b1000, 0b0110 | 0b1000, 0b0101 | 0b1000, 0b1_0001]);
        let s = c.strong_collapse();
        assert_eq!(s.facets().len(), 1);
        let hollow = cx(&[0b011, 0b110, 0b101]);
        assert_eq!(hollow.strong_collapse(), hollow);
    }
}
