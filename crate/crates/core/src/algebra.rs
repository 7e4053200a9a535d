//! Graded nilpotent Lie algebras with exact structure constants.
//!
//! A degree-`i` basis block for each entry of `graded_dims`; brackets of
//! homogeneous elements land exactly in the degree-`i+j` block (zero beyond
//! the top degree). Antisymmetry, grading, and the Jacobi identity are
//! verified exactly on construction.

use crate::error::{Error, Result};
use crate::matrix::rank_of_rows;
use crate::scalar::Scalar;
use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedNilpotentLieAlgebra {
    graded_dims: Vec<usize>,
    /// brackets[i][j] = coordinates of [e_i, e_j] in the full basis.
    brackets: Vec<Vec<Vec<Scalar>>>,
}

impl GradedNilpotentLieAlgebra {
    /// Build from the brackets of basis pairs `i < j`; antisymmetry fills the
    /// rest. All three Lie axioms are checked exactly before returning.
    pub fn new(
        graded_dims: Vec<usize>,
        pairs: impl IntoIterator<Item = ((usize, usize), Vec<Scalar>)>,
    ) -> Result<Self> {
        let dim: usize = graded_dims.iter().sum();
        if graded_dims.is_empty() || graded_dims.contains(&0) {
            return Err(Error::AlgebraCheck("graded dimensions must be positive".into()));
        }
        let mut brackets = vec![vec![vec![Scalar::zero(); dim]; dim]; dim];
        for ((i, j), v) in pairs {
            if i >= j || j >= dim {
                return Err(Error::AlgebraCheck(format!(
                    "bracket pair ({i}, {j}) out of order or range"
                )));
            }
            if v.len() != dim {
                return Err(Error::Dimension {
                    expected: dim,
                    got: v.len(),
                });
            }
            brackets[j][i] = v.iter().map(|c| -c).collect();
            brackets[i][j] = v;
        }
        let alg = GradedNilpotentLieAlgebra {
            graded_dims,
            brackets,
        };
        alg.verify()?;
        Ok(alg)
    }

    pub fn abelian(graded_dims: Vec<usize>) -> Self {
        let dim: usize = graded_dims.iter().sum();
        GradedNilpotentLieAlgebra {
            graded_dims,
            brackets: vec![vec![vec![Scalar::zero(); dim]; dim]; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.graded_dims.iter().sum()
    }

    pub fn graded_dims(&self) -> &[usize] {
        &self.graded_dims
    }

    pub fn step(&self) -> usize {
        self.graded_dims.len()
    }

    /// Degree (1-based) of a basis index.
    pub fn degree(&self, index: usize) -> usize {
        let mut acc = 0;
        for (g, d) in self.graded_dims.iter().enumerate() {
            acc += d;
            if index < acc {
                return g + 1;
            }
        }
        panic!("basis index {index} out of range");
    }

    /// Basis index range of a degree (1-based).
    pub fn block(&self, degree: usize) -> std::ops::Range<usize> {
        let start: usize = self.graded_dims[..degree - 1].iter().sum();
        start..start + self.graded_dims[degree - 1]
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Scalar] {
        &self.brackets[i][j]
    }

    /// Bracket of two coordinate vectors.
    pub fn bracket(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let dim = self.dim();
        let mut out = vec![Scalar::zero(); dim];
        for i in 0..dim {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..dim {
                if b[j].is_zero() {
                    continue;
                }
                let f = &a[i] * &b[j];
                for k in 0..dim {
                    let c = &self.brackets[i][j][k];
                    if !c.is_zero() {
                        out[k] += &(c * &f);
                    }
                }
            }
        }
        out
    }

    pub fn check_antisymmetry(&self) -> Result<()> {
        let dim = self.dim();
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let anti = -&self.brackets[j][i][k];
                    if self.brackets[i][j][k] != anti {
                        return Err(Error::AlgebraCheck(format!(
                            "antisymmetry fails at [e{i}, e{j}] component {k}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn check_grading(&self) -> Result<()> {
        let dim = self.dim();
        for i in 0..dim {
            for j in 0..dim {
                let target = self.degree(i) + self.degree(j);
                for k in 0..dim {
                    if !self.brackets[i][j][k].is_zero() && self.degree(k) != target {
                        return Err(Error::AlgebraCheck(format!(
                            "grading fails: [e{i}, e{j}] (degrees {} + {}) meets degree {} at e{k}",
                            self.degree(i),
                            self.degree(j),
                            self.degree(k)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn check_jacobi(&self) -> Result<()> {
        let dim = self.dim();
        for a in 0..dim {
            for b in a + 1..dim {
                let ab = &self.brackets[a][b];
                for c in b + 1..dim {
                    let bc = &self.brackets[b][c];
                    let ca = &self.brackets[c][a];
                    let mut acc = self.bracket_with_basis(ab, c);
                    for (k, v) in self.bracket_with_basis(bc, a).into_iter().enumerate() {
                        acc[k] += &v;
                    }
                    for (k, v) in self.bracket_with_basis(ca, b).into_iter().enumerate() {
                        acc[k] += &v;
                    }
                    if acc.iter().any(|s| !s.is_zero()) {
                        return Err(Error::AlgebraCheck(format!(
                            "Jacobi identity fails on basis triple ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn bracket_with_basis(&self, v: &[Scalar], basis: usize) -> Vec<Scalar> {
        let dim = self.dim();
        let mut out = vec![Scalar::zero(); dim];
        for i in 0..dim {
            if v[i].is_zero() {
                continue;
            }
            for k in 0..dim {
                let c = &self.brackets[i][basis][k];
                if !c.is_zero() {
                    out[k] += &(c * &v[i]);
                }
            }
        }
        out
    }

    pub fn verify(&self) -> Result<()> {
        self.check_antisymmetry()?;
        self.check_grading()?;
        self.check_jacobi()
    }

    /// Dimensions of the lower central series `g ⊇ [g,g] ⊇ [g,[g,g]] ⊇ ...`,
    /// ending with the first zero term.
    pub fn lower_central_series_dims(&self) -> Vec<usize> {
        let dim = self.dim();
        let mut dims = vec![dim];
        let mut current: Vec<Vec<Scalar>> = (0..dim)
            .map(|i| {
                let mut e = vec![Scalar::zero(); dim];
                e[i] = Scalar::one();
                e
            })
            .collect();
        loop {
            let mut next: Vec<Vec<Scalar>> = Vec::new();
            for v in &current {
                for e in 0..dim {
                    let w = self.bracket_with_basis(v, e);
                    if w.iter().any(|s| !s.is_zero()) {
                        next.push(w);
                    }
                }
            }
            let r = rank_of_rows(&next);
            dims.push(r);
            if r == 0 {
                break;
            }
            current = next;
        }
        dims
    }

    /// Direct sum with block-diagonal brackets; grades are merged blockwise.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let steps = self.step().max(other.step());
        let mut graded_dims = vec![0usize; steps];
        for (g, d) in self.graded_dims.iter().enumerate() {
            graded_dims[g] += d;
        }
        for (g, d) in other.graded_dims.iter().enumerate() {
            graded_dims[g] += d;
        }
        let dim: usize = graded_dims.iter().sum();
        let mut offsets = vec![0usize; steps + 1];
        for g in 0..steps {
            offsets[g + 1] = offsets[g] + graded_dims[g];
        }
        let embed = |alg: &Self, shift_in_block: &dyn Fn(usize) -> usize| -> Vec<usize> {
            (0..alg.dim())
                .map(|i| {
                    let g = alg.degree(i) - 1;
                    let within = i - alg.block(g + 1).start;
                    offsets[g] + shift_in_block(g) + within
                })
                .collect()
        };
        let map_a = embed(self, &|_| 0);
        let map_b = embed(other, &|g| {
            if g < self.step() {
                self.graded_dims[g]
            } else {
                0
            }
        });
        let mut brackets = vec![vec![vec![Scalar::zero(); dim]; dim]; dim];
        for (alg, map) in [(self, &map_a), (other, &map_b)] {
            for i in 0..alg.dim() {
                for j in 0..alg.dim() {
                    for k in 0..alg.dim() {
                        let c = &alg.brackets[i][j][k];
                        if !c.is_zero() {
                            brackets[map[i]][map[j]][map[k]] = c.clone();
                        }
                    }
                }
            }
        }
        GradedNilpotentLieAlgebra {
            graded_dims,
            brackets,
        }
    }

    /// Structure constants in a new basis whose rows (in old coordinates) are
    /// given; fails if the rows are not a basis or the result is not exactly
    /// graded in the new block structure.
    pub fn change_basis(&self, rows: &[Vec<Scalar>], graded_dims: Vec<usize>) -> Result<Self> {
        let dim = self.dim();
        if rows.len() != dim || graded_dims.iter().sum::<usize>() != dim {
            return Err(Error::Dimension {
                expected: dim,
                got: rows.len(),
            });
        }
        // coordinates of a vector in the new basis: solve rows^T x = v
        let mat = crate::matrix::ExactMatrix::from_rows(rows.to_vec()).transpose();
        let mut pairs = Vec::new();
        for i in 0..dim {
            for j in i + 1..dim {
                let v = self.bracket(&rows[i], &rows[j]);
                let coords = mat.solve(&v).ok_or(Error::DependentBasis)?;
                pairs.push(((i, j), coords));
            }
        }
        GradedNilpotentLieAlgebra::new(graded_dims, pairs)
    }

    pub fn to_file(&self) -> AlgebraFile {
        let dim = self.dim();
        let mut entries = Vec::new();
        for i in 0..dim {
            for j in i + 1..dim {
                let v = &self.brackets[i][j];
                if v.iter().any(|s| !s.is_zero()) {
                    entries.push(BracketEntry {
                        i,
                        j,
                        coeffs: v.iter().map(Scalar::to_string).collect(),
                    });
                }
            }
        }
        AlgebraFile {
            schema_version: crate::SCHEMA_VERSION.to_string(),
            graded_dims: self.graded_dims.clone(),
            brackets: entries,
        }
    }

    pub fn from_file(file: &AlgebraFile) -> Result<Self> {
        let pairs = file
            .brackets
            .iter()
            .map(|e| {
                let coeffs = e
                    .coeffs
                    .iter()
                    .map(|s| Scalar::parse(s))
                    .collect::<Result<Vec<_>>>()?;
                Ok(((e.i, e.j), coeffs))
            })
            .collect::<Result<Vec<_>>>()?;
        GradedNilpotentLieAlgebra::new(file.graded_dims.clone(), pairs)
    }
}

/// On-disk JSON form: exact rationals as strings.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct AlgebraFile {
    pub schema_version: String,
    pub graded_dims: Vec<usize>,
    pub brackets: Vec<BracketEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub coeffs: Vec<String>,
}

/// The Heisenberg algebra: grades (2, 1), single bracket [e0, e1] = e2.
pub fn heisenberg() -> GradedNilpotentLieAlgebra {
    let mut v = vec![Scalar::zero(); 3];
    v[2] = Scalar::one();
    GradedNilpotentLieAlgebra::new(vec![2, 1], [((0, 1), v)]).expect("heisenberg is a Lie algebra")
}

/// Free 2-generator step-3 nilpotent algebra: grades (2, 1, 2) with
/// [e0,e1]=e2, [e0,e2]=e3, [e1,e2]=e4.
pub fn free_two_step_three() -> GradedNilpotentLieAlgebra {
    let e = |k: usize| {
        let mut v = vec![Scalar::zero(); 5];
        v[k] = Scalar::one();
        v
    };
    GradedNilpotentLieAlgebra::new(
        vec![2, 1, 2],
        [((0, 1), e(2)), ((0, 2), e(3)), ((1, 2), e(4))],
    )
    .expect("free step-3 algebra is a Lie algebra")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heisenberg_passes_axioms() {
        let h = heisenberg();
        assert_eq!(h.graded_dims(), &[2, 1]);
        assert_eq!(h.lower_central_series_dims(), vec![3, 1, 0]);
    }

    #[test]
    fn grading_violation_rejected() {
        // [e0, e1] = e0 would map degree 2 into degree 1
        let mut v = vec![Scalar::zero(); 3];
        v[0] = Scalar::one();
        assert!(GradedNilpotentLieAlgebra::new(vec![2, 1], [((0, 1), v)]).is_err());
    }

    #[test]
    fn corrupted_table_rejected() {
        let mut bad = heisenberg();
        bad.brackets[1][0][2] = Scalar::one(); // breaks antisymmetry
        assert!(bad.verify().is_err());
    }

    #[test]
    fn free_step_three_series() {
        let f = free_two_step_three();
        assert_eq!(f.lower_central_series_dims(), vec![5, 3, 2, 0]);
    }

    #[test]
    fn direct_sum_merges_grades() {
        let h = heisenberg();
        let s = h.direct_sum(&h);
        assert_eq!(s.graded_dims(), &[4, 2]);
        s.verify().unwrap();
        // summand brackets survive in the merged blocks
        let mut a = vec![Scalar::zero(); 6];
        a[0] = Scalar::one();
        let mut b = vec![Scalar::zero(); 6];
        b[1] = Scalar::one();
        let ab = s.bracket(&a, &b);
        assert!(!ab[4].is_zero());
    }

    #[test]
    fn file_round_trip() {
        let f = free_two_step_three();
        let file = f.to_file();
        let back = GradedNilpotentLieAlgebra::from_file(&file).unwrap();
        assert_eq!(f, back);
        let json = serde_json::to_string_pretty(&file).unwrap();
        let parsed: AlgebraFile = serde_json::from_str(&json).unwrap();
        assert_eq!(file, parsed);
    }

    #[test]
    fn change_basis_round_trip() {
        let f = free_two_step_three();
        // permute the two degree-3 basis vectors and rescale the degree-2 one
        let mut rows = Vec::new();
        for i in 0..5 {
            let mut r = vec![Scalar::zero(); 5];
            r[i] = Scalar::one();
            rows.push(r);
        }
        rows.swap(3, 4);
        rows[2][2] = Scalar::from_int(2);
        let g = f.change_basis(&rows, vec![2, 1, 2]).unwrap();
        g.verify().unwrap();
        assert_eq!(g.bracket_basis(0, 1)[2], Scalar::ratio(1, 2).unwrap());
        assert_eq!(g.bracket_basis(0, 2)[4], Scalar::from_int(2));
    }
}
