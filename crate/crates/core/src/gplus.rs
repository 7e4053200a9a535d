//! The step-3 graded nilpotent Lie algebra attached to a nondegenerate cubic
//! form, its characteristic null spaces, and the recognition algorithm that
//! recovers the cubic from an abstract structure-constant table.
//!
//! With U of dimension 2, V of dimension m, and a trivialized value line, the
//! graded pieces are g1 = U⊗V, g2 = V^∨, g3 = U (the wedge and value-line
//! factors are absorbed by the trivialization). In the canonical basis
//! x_a = u1⊗v_a, y_a = u2⊗v_a, w_c = v_c^∨, z_i = u_i the brackets are
//!
//!   [x_a, y_b] = sum_c F(v_a, v_b, v_c) w_c
//!   [w_c, x_a] = delta_ca z1,   [w_c, y_a] = delta_ca z2
//!
//! and every other pair of basis brackets vanishes.

use crate::algebra::GradedNilpotentLieAlgebra;
use crate::cubic::{CubicForm, NondegeneracyVerdict};
use crate::error::{Error, Result};
use crate::matrix::{rank_of_rows, span_eq, ExactMatrix};
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct GPlusAlgebra {
    m: usize,
    cubic: CubicForm,
    algebra: GradedNilpotentLieAlgebra,
}

impl GPlusAlgebra {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn cubic(&self) -> &CubicForm {
        &self.cubic
    }

    pub fn algebra(&self) -> &GradedNilpotentLieAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        3 * self.m + 2
    }

    /// Canonical basis labels: x1..xm, y1..ym, w1..wm, z1, z2.
    pub fn label(&self, index: usize) -> String {
        let m = self.m;
        if index < m {
            format!("x{}", index + 1)
        } else if index < 2 * m {
            format!("y{}", index - m + 1)
        } else if index < 3 * m {
            format!("w{}", index - 2 * m + 1)
        } else {
            format!("z{}", index - 3 * m + 1)
        }
    }

    /// Null space of `a ∘ ς` where ς is the degree-3 component of the bracket
    /// on g1 ⊕ g2 and `a` is a covector on g3 (coordinates in the z-basis).
    /// Verifies the expected shape: the kernel has dimension m, lies in g1,
    /// and equals `a^⊥ ⊗ V` for the annihilated line `a^⊥ ⊂ U`.
    pub fn null_space(&self, a: &[Scalar]) -> Result<Vec<Vec<Scalar>>> {
        if a.len() != 2 || a.iter().all(Scalar::is_zero) {
            return Err(Error::Invalid("covector on g3 must be nonzero of length 2".into()));
        }
        let m = self.m;
        let basis = sigma_null_space(&self.algebra, a)?;
        if basis.len() != m {
            return Err(Error::ConstructionBug(format!(
                "null space dimension {} != m = {m}",
                basis.len()
            )));
        }
        for v in &basis {
            for c in &v[2 * m..3 * m] {
                if !c.is_zero() {
                    return Err(Error::ConstructionBug("null space leaks into g2".into()));
                }
            }
        }
        // a^⊥ = span(a2 u1 - a1 u2), so the expected basis is a2 x_v - a1 y_v.
        let expected: Vec<Vec<Scalar>> = (0..m)
            .map(|v| {
                let mut row = vec![Scalar::zero(); self.dim()];
                row[v] = a[1].clone();
                row[m + v] = -&a[0];
                row
            })
            .collect();
        if !span_eq(&basis, &expected) {
            return Err(Error::ConstructionBug(
                "null space differs from a^⊥ ⊗ V".into(),
            ));
        }
        Ok(basis)
    }
}

/// Construct the graded algebra of a nondegenerate cubic form; the three
/// defining bracket families are expanded in the canonical basis and the Lie
/// axioms are verified exactly before returning.
pub fn make_gplus(f: &CubicForm) -> Result<GPlusAlgebra> {
    if let NondegeneracyVerdict::Degenerate { witness } = f.nondegeneracy() {
        return Err(Error::DegenerateCubic(
            witness
                .iter()
                .map(Scalar::to_string)
                .collect::<Vec<_>>()
                .join(", "),
        ));
    }
    let m = f.m();
    let dim = 3 * m + 2;
    let mut pairs = Vec::new();
    // [x_a, y_b] = sum_c F(v_a, v_b, v_c) w_c; the pair (a, m+b) is ordered.
    for a in 0..m {
        for b in 0..m {
            let mut v = vec![Scalar::zero(); dim];
            for c in 0..m {
                v[2 * m + c] = f.coeff(a, b, c);
            }
            pairs.push(((a, m + b), v));
        }
    }
    // [x_a, w_a] = -z1 and [y_a, w_a] = -z2 (stored with the g1 index first).
    for a in 0..m {
        let mut v1 = vec![Scalar::zero(); dim];
        v1[3 * m] = -Scalar::one();
        pairs.push(((a, 2 * m + a), v1));
        let mut v2 = vec![Scalar::zero(); dim];
        v2[3 * m + 1] = -Scalar::one();
        pairs.push(((m + a, 2 * m + a), v2));
    }
    let algebra = GradedNilpotentLieAlgebra::new(vec![2 * m, m, 2], pairs)?;
    // Nondegeneracy forces [g1, g1] = g2: the degree-1 brackets span.
    let g2_span: Vec<Vec<Scalar>> = (0..m)
        .flat_map(|a| (0..m).map(move |b| (a, b)))
        .map(|(a, b)| algebra.bracket_basis(a, m + b).to_vec())
        .collect();
    if rank_of_rows(&g2_span) != m {
        return Err(Error::ConstructionBug(
            "[g1, g1] does not span g2 despite nondegeneracy".into(),
        ));
    }
    Ok(GPlusAlgebra {
        m,
        cubic: f.clone(),
        algebra,
    })
}

/// Kernel of `a ∘ ς` on g1 ⊕ g2 for any step-3 graded algebra; ς is the
/// bracket component into g3 and `a` is a covector in g3-block coordinates.
/// Returned vectors use full algebra coordinates (g3 block zero).
pub fn sigma_null_space(g: &GradedNilpotentLieAlgebra, a: &[Scalar]) -> Result<Vec<Vec<Scalar>>> {
    if g.step() != 3 {
        return Err(Error::Invalid(format!(
            "sigma needs a step-3 algebra, got step {}",
            g.step()
        )));
    }
    let block3 = g.block(3);
    if a.len() != block3.len() {
        return Err(Error::Dimension {
            expected: block3.len(),
            got: a.len(),
        });
    }
    if a.iter().all(Scalar::is_zero) {
        return Err(Error::Invalid("covector on g3 must be nonzero".into()));
    }
    let n12 = g.block(1).len() + g.block(2).len();
    let mut m = ExactMatrix::zeros(n12, n12);
    for p in 0..n12 {
        for q in 0..n12 {
            let br = g.bracket_basis(p, q);
            let mut acc = Scalar::zero();
            for (t, at) in block3.clone().zip(a) {
                acc += &(&br[t] * at);
            }
            m.set(p, q, acc);
        }
    }
    let (_, kernel) = m.rank_kernel();
    Ok(kernel
        .into_iter()
        .map(|mut v| {
            v.resize(g.dim(), Scalar::zero());
            v
        })
        .collect())
}

/// Machine-readable reasons for recognition failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RejectReason {
    GradedDims,
    NullSpaceDim { covector: String, dim: usize },
    NullSpaceNotInG1 { covector: String },
    NullSpacesNotTransverse,
    PencilNotGraph,
    G2ActsTrivially,
    StructureMismatch { detail: String },
    DegenerateCubic,
}

impl RejectReason {
    pub fn code(&self) -> &'static str {
        match self {
            RejectReason::GradedDims => "graded dims",
            RejectReason::NullSpaceDim { .. } => "null space dimension",
            RejectReason::NullSpaceNotInG1 { .. } => "null space not in g1",
            RejectReason::NullSpacesNotTransverse => "null spaces not transverse",
            RejectReason::PencilNotGraph => "null pencil is not a graph",
            RejectReason::G2ActsTrivially => "degree-2 block acts trivially",
            RejectReason::StructureMismatch { .. } => "structure constants mismatch",
            RejectReason::DegenerateCubic => "recovered cubic is degenerate",
        }
    }
}

#[derive(Clone, Debug)]
pub enum RecognizeOutcome {
    Recognized {
        cubic: CubicForm,
        /// Rows: the adapted basis (x_a, y_a, w_c, z1, z2) in input coordinates.
        basis: Vec<Vec<Scalar>>,
    },
    Rejected(RejectReason),
}

impl RecognizeOutcome {
    pub fn cubic(&self) -> Option<&CubicForm> {
        match self {
            RecognizeOutcome::Recognized { cubic, .. } => Some(cubic),
            RecognizeOutcome::Rejected(_) => None,
        }
    }
}

/// Decide whether an abstract graded algebra is of cubic type, and if so
/// recover the cubic form in an adapted basis.
///
/// The pencil of null spaces of `a ∘ ς` over covectors on g3 must sweep a
/// rank-(2, m) tensor decomposition of g1; two members split g1, a third
/// pins the pairing between them, and the cubic is read off the degree-1
/// brackets. Every defining relation is then re-verified globally by an
/// exact structure-constant comparison with the canonical model.
pub fn recognize_gplus(g: &GradedNilpotentLieAlgebra) -> Result<RecognizeOutcome> {
    use RecognizeOutcome::Rejected;
    let dims = g.graded_dims();
    if dims.len() != 3 || dims[2] != 2 || dims[0] != 2 * dims[1] || dims[1] == 0 {
        return Ok(Rejected(RejectReason::GradedDims));
    }
    let m = dims[1];
    let dim = g.dim();

    // Three sample covectors: two to split g1, one to pin the pairing.
    let z1d = [Scalar::one(), Scalar::zero()];
    let z2d = [Scalar::zero(), Scalar::one()];
    let mix = [Scalar::one(), -Scalar::one()];
    let mut spaces = Vec::new();
    for (label, a) in [("z2*", &z2d), ("z1*", &z1d), ("z1*-z2*", &mix)] {
        let basis = sigma_null_space(g, a.as_slice())?;
        if basis.len() != m {
            return Ok(Rejected(RejectReason::NullSpaceDim {
                covector: label.to_string(),
                dim: basis.len(),
            }));
        }
        for v in &basis {
            if v[2 * m..3 * m].iter().any(|c| !c.is_zero()) {
                return Ok(Rejected(RejectReason::NullSpaceNotInG1 {
                    covector: label.to_string(),
                }));
            }
        }
        spaces.push(basis);
    }
    let (n1, n2, n3) = (&spaces[0], &spaces[1], &spaces[2]);
    {
        let mut both = n1.clone();
        both.extend(n2.iter().cloned());
        if rank_of_rows(&both) != 2 * m {
            return Ok(Rejected(RejectReason::NullSpacesNotTransverse));
        }
    }

    // The third member is the graph of an isomorphism n1 -> n2: solve
    // x_a = sum c_i n3_i - sum d_i n2_i in g1 coordinates.
    let mut columns: Vec<Vec<Scalar>> = Vec::new();
    for v in n3 {
        columns.push(v[..2 * m].to_vec());
    }
    for v in n2 {
        columns.push(v[..2 * m].iter().map(|s| -s).collect());
    }
    let solver = ExactMatrix::from_rows(columns).transpose();
    let x_basis: Vec<Vec<Scalar>> = n1.clone();
    let mut y_basis: Vec<Vec<Scalar>> = Vec::new();
    for x in &x_basis {
        let Some(cd) = solver.solve(&x[..2 * m]) else {
            return Ok(Rejected(RejectReason::PencilNotGraph));
        };
        let mut y = vec![Scalar::zero(); dim];
        for (d, v) in cd[m..2 * m].iter().zip(n2) {
            for (t, s) in y.iter_mut().zip(v) {
                *t += &(d * s);
            }
        }
        if y.iter().all(Scalar::is_zero) {
            return Ok(Rejected(RejectReason::PencilNotGraph));
        }
        y_basis.push(y);
    }
    if rank_of_rows(&y_basis) != m {
        return Ok(Rejected(RejectReason::PencilNotGraph));
    }

    // Degree-3 labels from the F-independent g2 x g1 bracket: the first
    // nonzero bracket of a g2 basis vector with an x fixes the scale of z1,
    // and the same pair with y fixes z2 consistently.
    let mut z_pair: Option<(Vec<Scalar>, Vec<Scalar>)> = None;
    'search: for c in 0..m {
        let mut e2 = vec![Scalar::zero(); dim];
        e2[2 * m + c] = Scalar::one();
        for (x, y) in x_basis.iter().zip(&y_basis) {
            let zx = g.bracket(&e2, x);
            if zx.iter().any(|s| !s.is_zero()) {
                let zy = g.bracket(&e2, y);
                z_pair = Some((zx, zy));
                break 'search;
            }
        }
    }
    let Some((z1, z2)) = z_pair else {
        return Ok(Rejected(RejectReason::G2ActsTrivially));
    };
    if rank_of_rows(&[z1.clone(), z2.clone()]) != 2 {
        return Ok(Rejected(RejectReason::StructureMismatch {
            detail: "degree-3 labels are dependent".into(),
        }));
    }
    // Solve in the 2-dimensional g3 block.
    let z_solver = ExactMatrix::from_rows(vec![
        z1[3 * m..].to_vec(),
        z2[3 * m..].to_vec(),
    ])
    .transpose();

    // Read the cubic off double brackets [[x_a, y_b], x_c] = F_abc z1 and
    // cross-check [[x_a, y_b], y_c] = F_abc z2 and full symmetry.
    let mut table = vec![vec![vec![Scalar::zero(); m]; m]; m];
    for a in 0..m {
        for b in 0..m {
            let ab = g.bracket(&x_basis[a], &y_basis[b]);
            for c in 0..m {
                let thru_x = g.bracket(&ab, &x_basis[c]);
                let Some(sol) = z_solver.solve(&thru_x[3 * m..]) else {
                    return Ok(Rejected(RejectReason::StructureMismatch {
                        detail: "double bracket escapes g3".into(),
                    }));
                };
                if !sol[1].is_zero() {
                    return Ok(Rejected(RejectReason::StructureMismatch {
                        detail: format!("[[x{a},y{b}],x{c}] has a z2 component"),
                    }));
                }
                let thru_y = g.bracket(&ab, &y_basis[c]);
                let Some(sol_y) = z_solver.solve(&thru_y[3 * m..]) else {
                    return Ok(Rejected(RejectReason::StructureMismatch {
                        detail: "double bracket escapes g3".into(),
                    }));
                };
                if !sol_y[0].is_zero() || sol_y[1] != sol[0] {
                    return Ok(Rejected(RejectReason::StructureMismatch {
                        detail: format!("[[x{a},y{b}],y{c}] disagrees with the z1 reading"),
                    }));
                }
                table[a][b][c] = sol[0].clone();
            }
        }
    }
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                let v = &table[a][b][c];
                if v != &table[b][a][c] || v != &table[a][c][b] {
                    return Ok(Rejected(RejectReason::StructureMismatch {
                        detail: "recovered table is not symmetric".into(),
                    }));
                }
            }
        }
    }
    let mut entries = Vec::new();
    for a in 0..m {
        for b in a..m {
            for c in b..m {
                entries.push(([a, b, c], table[a][b][c].clone()));
            }
        }
    }
    let cubic = CubicForm::new(m, entries)?;
    if !cubic.is_nondegenerate() {
        return Ok(Rejected(RejectReason::DegenerateCubic));
    }

    // Degree-2 labels w_c paired to the chosen z scale:
    // [w_c, x_a] = delta_ca z1 and [w_c, y_a] = delta_ca z2.
    let mut w_basis: Vec<Vec<Scalar>> = Vec::new();
    for c in 0..m {
        // unknowns: coordinates of w in the g2 block
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        let mut rhs: Vec<Scalar> = Vec::new();
        for a in 0..m {
            for (vecs, z) in [(&x_basis, &z1), (&y_basis, &z2)] {
                // bracket(e2_t, v)[g3] forms the coefficient of unknown t
                let mut coeff_rows = vec![Vec::with_capacity(m); 2];
                for t in 0..m {
                    let mut e2 = vec![Scalar::zero(); dim];
                    e2[2 * m + t] = Scalar::one();
                    let br = g.bracket(&e2, &vecs[a]);
                    coeff_rows[0].push(br[3 * m].clone());
                    coeff_rows[1].push(br[3 * m + 1].clone());
                }
                let target = if a == c { Scalar::one() } else { Scalar::zero() };
                for (k, row) in coeff_rows.into_iter().enumerate() {
                    rows.push(row);
                    rhs.push(&target * &z[3 * m + k]);
                }
            }
        }
        let Some(lambda) = ExactMatrix::from_rows(rows).solve(&rhs) else {
            return Ok(Rejected(RejectReason::StructureMismatch {
                detail: format!("no g2 vector pairs as w{}", c + 1),
            }));
        };
        let mut w = vec![Scalar::zero(); dim];
        for (t, l) in lambda.iter().enumerate() {
            w[2 * m + t] = l.clone();
        }
        w_basis.push(w);
    }

    // Adapted basis and the global exact verification: transported structure
    // constants must equal the canonical model of the recovered cubic.
    let mut basis = Vec::with_capacity(dim);
    basis.extend(x_basis.iter().cloned());
    basis.extend(y_basis.iter().cloned());
    basis.extend(w_basis.iter().cloned());
    basis.push(z1.clone());
    basis.push(z2.clone());
    if rank_of_rows(&basis) != dim {
        return Ok(Rejected(RejectReason::StructureMismatch {
            detail: "adapted vectors are not a basis".into(),
        }));
    }
    let transported = match g.change_basis(&basis, vec![2 * m, m, 2]) {
        Ok(t) => t,
        Err(_) => {
            return Ok(Rejected(RejectReason::StructureMismatch {
                detail: "transported brackets are not graded".into(),
            }))
        }
    };
    let model = make_gplus(&cubic)?;
    if &transported != model.algebra() {
        return Ok(Rejected(RejectReason::StructureMismatch {
            detail: "transported constants differ from the canonical model".into(),
        }));
    }
    Ok(RecognizeOutcome::Recognized { cubic, basis })
}
