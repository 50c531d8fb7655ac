//! Subspaces of a fixed coordinate space, held in canonical form.
//!
//! A `SubspaceBasis` stores the reduced-row-echelon basis of its span, so
//! two values are structurally equal exactly when they span the same
//! subspace, and membership, intersection, sum, and basis extension are
//! all small exact eliminations.

use serde::Serialize;

use crate::matrix::Matrix;
use crate::rat::Rat;

/// A subspace of `Q^ambient`, stored as its unique reduced-echelon basis.
#[derive(Clone, PartialEq, Serialize)]
pub struct SubspaceBasis {
    ambient: usize,
    vectors: Vec<Vec<Rat>>,
}

impl SubspaceBasis {
    /// The zero subspace.
    pub fn zero(ambient: usize) -> Self {
        SubspaceBasis {
            ambient,
            vectors: Vec::new(),
        }
    }

    /// Canonicalizes an arbitrary spanning set.
    pub fn from_spanning(ambient: usize, spanning: Vec<Vec<Rat>>) -> Self {
        assert!(
            spanning.iter().all(|v| v.len() == ambient),
            "spanning vector with wrong ambient dimension"
        );
        if spanning.is_empty() {
            return SubspaceBasis::zero(ambient);
        }
        let reduced = Matrix::from_rows(spanning).rref();
        let vectors = (0..reduced.pivot_cols.len())
            .map(|i| reduced.matrix.row(i).to_vec())
            .collect();
        SubspaceBasis { ambient, vectors }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<Rat>] {
        &self.vectors
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.ambient, "ambient dimension mismatch");
        if v.iter().all(Rat::is_zero) {
            return true;
        }
        let mut rows = self.vectors.clone();
        rows.push(v.to_vec());
        Matrix::from_rows(rows).rank() == self.dim()
    }

    pub fn contains_subspace(&self, other: &SubspaceBasis) -> bool {
        other.vectors.iter().all(|v| self.contains(v))
    }

    /// Canonical bases make span equality structural equality.
    pub fn same_span(&self, other: &SubspaceBasis) -> bool {
        self == other
    }

    pub fn sum(&self, other: &SubspaceBasis) -> SubspaceBasis {
        assert_eq!(self.ambient, other.ambient, "ambient dimension mismatch");
        let mut all = self.vectors.clone();
        all.extend(other.vectors.clone());
        SubspaceBasis::from_spanning(self.ambient, all)
    }

    /// Exact intersection: solutions of `sum a_i u_i = sum b_j w_j` read off
    /// from the nullspace of the stacked coefficient system.
    pub fn intersect(&self, other: &SubspaceBasis) -> SubspaceBasis {
        assert_eq!(self.ambient, other.ambient, "ambient dimension mismatch");
        if self.dim() == 0 || other.dim() == 0 {
            return SubspaceBasis::zero(self.ambient);
        }
        let cols = self.dim() + other.dim();
        let system = Matrix::from_fn(self.ambient, cols, |i, j| {
            if j < self.dim() {
                self.vectors[j][i].clone()
            } else {
                -&other.vectors[j - self.dim()][i]
            }
        });
        let members = system
            .nullspace_basis()
            .into_iter()
            .map(|coeffs| {
                let mut v = vec![Rat::zero(); self.ambient];
                for (u, c) in self.vectors.iter().zip(&coeffs) {
                    for (slot, x) in v.iter_mut().zip(u) {
                        *slot += &(c * x);
                    }
                }
                v
            })
            .collect();
        SubspaceBasis::from_spanning(self.ambient, members)
    }

    /// Vectors of `pool`, in order, that extend this basis to a larger
    /// independent set. Returns the chosen vectors; together with `self`
    /// they span `self + span(pool)`.
    pub fn extension_from(&self, pool: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
        let mut current = self.clone();
        let mut chosen = Vec::new();
        for v in pool {
            if !current.contains(v) {
                let mut rows = current.vectors.clone();
                rows.push(v.clone());
                current = SubspaceBasis::from_spanning(self.ambient, rows);
                chosen.push(v.clone());
            }
        }
        chosen
    }
}

impl std::fmt::Debug for SubspaceBasis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "SubspaceBasis(dim {} in Q^{})", self.dim(), self.ambient)?;
        for v in &self.vectors {
            let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", parts.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| Rat::int(x)).collect()
    }

    #[test]
    fn canonicalization_makes_equality_structural() {
        let a = SubspaceBasis::from_spanning(3, vec![v(&[1, 1, 0]), v(&[0, 0, 1])]);
        let b = SubspaceBasis::from_spanning(3, vec![v(&[2, 2, 2]), v(&[1, 1, 3]), v(&[3, 3, 5])]);
        assert_eq!(a.dim(), 2);
        assert!(a.same_span(&b));
        assert_eq!(a, b);
    }

    #[test]
    fn membership() {
        let s = SubspaceBasis::from_spanning(3, vec![v(&[1, 0, 1]), v(&[0, 1, 1])]);
        assert!(s.contains(&v(&[1, 1, 2])));
        assert!(s.contains(&v(&[0, 0, 0])));
        assert!(!s.contains(&v(&[1, 0, 0])));
    }

    #[test]
    fn intersection_of_two_planes_in_three_space_is_a_line() {
        let s = SubspaceBasis::from_spanning(3, vec![v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let t = SubspaceBasis::from_spanning(3, vec![v(&[0, 1, 0]), v(&[0, 0, 1])]);
        let cap = s.intersect(&t);
        assert_eq!(cap.dim(), 1);
        assert!(cap.contains(&v(&[0, 5, 0])));
    }

    #[test]
    fn intersection_is_contained_in_both() {
        let s = SubspaceBasis::from_spanning(4, vec![v(&[1, 2, 0, 1]), v(&[0, 1, 1, 0])]);
        let t = SubspaceBasis::from_spanning(4, vec![v(&[1, 3, 1, 1]), v(&[1, 0, 0, 1])]);
        let cap = s.intersect(&t);
        assert!(s.contains_subspace(&cap));
        assert!(t.contains_subspace(&cap));
        // Dimension formula: dim(S) + dim(T) = dim(S+T) + dim(S cap T).
        assert_eq!(s.dim() + t.dim(), s.sum(&t).dim() + cap.dim());
    }

    #[test]
    fn extension_completes_a_basis() {
        let s = SubspaceBasis::from_spanning(3, vec![v(&[1, 0, 0])]);
        let pool = [v(&[1, 1, 0]), v(&[2, 1, 0]), v(&[0, 0, 1])];
        let extra = s.extension_from(&pool);
        assert_eq!(extra.len(), 2);
        assert_eq!(extra[0], v(&[1, 1, 0]));
        assert_eq!(extra[1], v(&[0, 0, 1]));
    }
}
