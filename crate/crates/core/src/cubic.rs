//! Cubic forms as symmetric trilinear tables over exact rationals.
//!
//! The table stores `F(e_a, e_b, e_c)` for `a <= b <= c`; conversion to and
//! from the cubic polynomial `F(v, v, v)` carries the exact multinomial
//! factors. Nondegeneracy means the contraction `v -> F(v, _, _)` is
//! injective.

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::poly::{Poly, Vars};
use crate::sample::Sampler;
use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CubicForm {
    m: usize,
    /// Nonzero entries on sorted index triples (0-based).
    coeffs: BTreeMap<[usize; 3], Scalar>,
}

impl CubicForm {
    pub fn new(m: usize, entries: impl IntoIterator<Item = ([usize; 3], Scalar)>) -> Result<Self> {
        if m == 0 {
            return Err(Error::Invalid("cubic form needs dimension >= 1".into()));
        }
        let mut coeffs = BTreeMap::new();
        for (mut idx, c) in entries {
            idx.sort_unstable();
            if idx[2] >= m {
                return Err(Error::Dimension {
                    expected: m,
                    got: idx[2] + 1,
                });
            }
            if c.is_zero() {
                continue;
            }
            if coeffs.insert(idx, c).is_some() {
                return Err(Error::Invalid(format!(
                    "duplicate cubic entry ({}, {}, {})",
                    idx[0] + 1,
                    idx[1] + 1,
                    idx[2] + 1
                )));
            }
        }
        Ok(CubicForm { m, coeffs })
    }

    pub fn zero(m: usize) -> Self {
        CubicForm {
            m,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&[usize; 3], &Scalar)> {
        self.coeffs.iter()
    }

    /// `F(e_a, e_b, e_c)` for arbitrary index order.
    pub fn coeff(&self, a: usize, b: usize, c: usize) -> Scalar {
        let mut idx = [a, b, c];
        idx.sort_unstable();
        self.coeffs.get(&idx).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Full trilinear evaluation `F(x, y, z)`.
    pub fn eval(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Scalar {
        let mut acc = Scalar::zero();
        for a in 0..self.m {
            if x[a].is_zero() {
                continue;
            }
            for b in 0..self.m {
                if y[b].is_zero() {
                    continue;
                }
                for c in 0..self.m {
                    if z[c].is_zero() {
                        continue;
                    }
                    let f = self.coeff(a, b, c);
                    if !f.is_zero() {
                        acc += &(&(&f * &x[a]) * &(&y[b] * &z[c]));
                    }
                }
            }
        }
        acc
    }

    /// The contraction `F(v1, v2, _)` as a covector.
    pub fn contract2(&self, v1: &[Scalar], v2: &[Scalar]) -> Vec<Scalar> {
        (0..self.m)
            .map(|c| {
                let mut e = vec![Scalar::zero(); self.m];
                e[c] = Scalar::one();
                self.eval(v1, v2, &e)
            })
            .collect()
    }

    /// Matrix of the linear map `V -> Sym^2 V^∨`, `v -> F(v, _, _)`:
    /// rows indexed by pairs `b <= c`, columns by `a`.
    pub fn contraction_matrix(&self) -> ExactMatrix {
        let m = self.m;
        let pairs: Vec<(usize, usize)> = (0..m)
            .flat_map(|b| (b..m).map(move |c| (b, c)))
            .collect();
        let mut mat = ExactMatrix::zeros(pairs.len(), m);
        for (row, &(b, c)) in pairs.iter().enumerate() {
            for a in 0..m {
                mat.set(row, a, self.coeff(a, b, c));
            }
        }
        mat
    }

    /// Nondegeneracy verdict; on failure carries a kernel witness vector.
    pub fn nondegeneracy(&self) -> NondegeneracyVerdict {
        let (rank, kernel) = self.contraction_matrix().rank_kernel();
        if rank == self.m {
            NondegeneracyVerdict::Nondegenerate
        } else {
            NondegeneracyVerdict::Degenerate {
                witness: kernel.into_iter().next().unwrap_or_default(),
            }
        }
    }

    pub fn is_nondegenerate(&self) -> bool {
        matches!(self.nondegeneracy(), NondegeneracyVerdict::Nondegenerate)
    }

    /// The cubic polynomial `p(v) = F(v, v, v)` in the given ring.
    pub fn to_polynomial(&self, vars: &Vars) -> Result<Poly> {
        if vars.len() != self.m {
            return Err(Error::Dimension {
                expected: self.m,
                got: vars.len(),
            });
        }
        let mut p = Poly::zero(vars.clone());
        for (idx, c) in &self.coeffs {
            let mult = multinomial(idx);
            let term = Poly::var(vars.clone(), idx[0])
                .mul(&Poly::var(vars.clone(), idx[1]))?
                .mul(&Poly::var(vars.clone(), idx[2]))?
                .scale(&(c * &Scalar::from_int(mult)));
            p = p.add(&term)?;
        }
        Ok(p)
    }

    /// Recover the trilinear table from a cubic polynomial, dividing out the
    /// multinomial factors exactly.
    pub fn from_polynomial(p: &Poly) -> Result<CubicForm> {
        let m = p.vars().len();
        let mut entries = Vec::new();
        for (mono, c) in p.terms() {
            if mono.total_degree() != 3 {
                return Err(Error::Invalid(format!(
                    "polynomial is not homogeneous cubic (term of degree {})",
                    mono.total_degree()
                )));
            }
            let mut idx = Vec::new();
            for (i, &e) in mono.0.iter().enumerate() {
                for _ in 0..e {
                    idx.push(i);
                }
            }
            let idx = [idx[0], idx[1], idx[2]];
            let denom = Scalar::from_int(multinomial(&idx));
            entries.push((idx, c / &denom));
        }
        CubicForm::new(m, entries)
    }

    /// Text format: a line `m <dim>`, then lines `a b c coeff` with 1-based
    /// sorted indices. `#` starts a comment.
    pub fn to_text(&self) -> String {
        let mut out = format!("m {}\n", self.m);
        for (idx, c) in &self.coeffs {
            out.push_str(&format!("{} {} {} {}\n", idx[0] + 1, idx[1] + 1, idx[2] + 1, c));
        }
        out
    }

    pub fn parse_text(src: &str) -> Result<CubicForm> {
        let mut m: Option<usize> = None;
        let mut entries = Vec::new();
        for (ln, raw) in src.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            if m.is_none() {
                if toks.len() != 2 || toks[0] != "m" {
                    return Err(Error::parse(ln + 1, 1, "expected `m <dim>`"));
                }
                m = Some(
                    toks[1]
                        .parse()
                        .map_err(|_| Error::parse(ln + 1, 3, "bad dimension"))?,
                );
                continue;
            }
            if toks.len() != 4 {
                return Err(Error::parse(ln + 1, 1, "expected `a b c coeff`"));
            }
            let parse_idx = |s: &str| -> Result<usize> {
                let v: usize = s
                    .parse()
                    .map_err(|_| Error::parse(ln + 1, 1, format!("bad index `{s}`")))?;
                if v == 0 {
                    return Err(Error::parse(ln + 1, 1, "indices are 1-based"));
                }
                Ok(v - 1)
            };
            let a = parse_idx(toks[0])?;
            let b = parse_idx(toks[1])?;
            let c = parse_idx(toks[2])?;
            if !(a <= b && b <= c) {
                return Err(Error::parse(ln + 1, 1, "indices must satisfy a <= b <= c"));
            }
            let coeff = Scalar::parse(toks[3])
                .map_err(|e| Error::parse(ln + 1, 1, format!("bad coefficient: {e}")))?;
            entries.push(([a, b, c], coeff));
        }
        let m = m.ok_or_else(|| Error::parse(1, 1, "missing `m <dim>` header"))?;
        CubicForm::new(m, entries)
    }
}

impl fmt::Display for CubicForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(idx, c)| format!("F{}{}{}={}", idx[0] + 1, idx[1] + 1, idx[2] + 1, c))
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Number of distinct orderings of a sorted index triple (1, 3, or 6).
fn multinomial(idx: &[usize; 3]) -> i64 {
    if idx[0] == idx[1] && idx[1] == idx[2] {
        1
    } else if idx[0] == idx[1] || idx[1] == idx[2] {
        3
    } else {
        6
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NondegeneracyVerdict {
    Nondegenerate,
    Degenerate { witness: Vec<Scalar> },
}

/// The two cubic families attached to the classical homogeneous examples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EkpKind {
    /// Hyperplane union quadric cone: `F(v) = v1 (v1^2 - v2^2 - ... - vm^2)`,
    /// needs m >= 2.
    HyperplaneCone(usize),
    /// Determinant of a symmetric 3x3 matrix of coordinates; m = 6.
    SeveriDeterminant,
}

pub fn ekp_cubic(kind: EkpKind) -> Result<CubicForm> {
    match kind {
        EkpKind::HyperplaneCone(m) => {
            if m < 2 {
                return Err(Error::Invalid(
                    "hyperplane-cone cubic needs a hyperplane and a cone in >= 2 variables".into(),
                ));
            }
            let mut entries = vec![([0usize, 0, 0], Scalar::one())];
            for i in 1..m {
                entries.push(([0, i, i], Scalar::ratio(-1, 3)?));
            }
            CubicForm::new(m, entries)
        }
        EkpKind::SeveriDeterminant => {
            // coordinates (v1..v6) fill the symmetric matrix
            // [[v1, v2, v3], [v2, v4, v5], [v3, v5, v6]];
            // det = v1 v4 v6 + 2 v2 v3 v5 - v1 v5^2 - v4 v3^2 - v6 v2^2.
            CubicForm::new(
                6,
                [
                    ([0usize, 3, 5], Scalar::ratio(1, 6)?),
                    ([1, 2, 4], Scalar::ratio(1, 3)?),
                    ([0, 4, 4], Scalar::ratio(-1, 3)?),
                    ([2, 2, 3], Scalar::ratio(-1, 3)?),
                    ([1, 1, 5], Scalar::ratio(-1, 3)?),
                ],
            )
        }
    }
}

/// Seeded random cubic with entries in [-9, 9] (may be degenerate).
pub fn random_cubic(m: usize, sampler: &mut Sampler) -> CubicForm {
    let mut entries = Vec::new();
    for a in 0..m {
        for b in a..m {
            for c in b..m {
                entries.push(([a, b, c], sampler.scalar()));
            }
        }
    }
    CubicForm::new(m, entries).expect("indices in range")
}

/// Seeded random nondegenerate cubic; retries until the oracle passes.
pub fn random_nondegenerate_cubic(m: usize, sampler: &mut Sampler) -> CubicForm {
    loop {
        let f = random_cubic(m, sampler);
        if f.is_nondegenerate() {
            return f;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::vars;

    #[test]
    fn m1_nonzero_is_nondegenerate() {
        let f = CubicForm::new(1, [([0, 0, 0], Scalar::one())]).unwrap();
        assert!(f.is_nondegenerate());
    }

    #[test]
    fn zero_form_degenerate_with_witness() {
        let f = CubicForm::zero(3);
        match f.nondegeneracy() {
            NondegeneracyVerdict::Degenerate { witness } => {
                assert_eq!(witness.len(), 3);
                assert!(witness.iter().any(|s| !s.is_zero()));
            }
            _ => panic!("zero form must be degenerate"),
        }
    }

    #[test]
    fn v1_cubed_on_plane_degenerate() {
        // F = v1^3 in two variables: contraction has rank 1 and e2 is a witness
        let f = CubicForm::new(2, [([0, 0, 0], Scalar::one())]).unwrap();
        match f.nondegeneracy() {
            NondegeneracyVerdict::Degenerate { witness } => {
                assert!(witness[0].is_zero());
                assert!(!witness[1].is_zero());
            }
            _ => panic!("v1^3 is degenerate for m = 2"),
        }
    }

    #[test]
    fn polynomial_round_trip_with_multinomials() {
        let vs = vars(&["v1", "v2"]);
        // p = v1^3 - v1 v2^2: T111 = 1, T122 = -1/3
        let v1 = Poly::var(vs.clone(), 0);
        let v2 = Poly::var(vs.clone(), 1);
        let p = v1.pow(3).sub(&v1.mul(&v2.pow(2)).unwrap()).unwrap();
        let f = CubicForm::from_polynomial(&p).unwrap();
        assert_eq!(f.coeff(0, 0, 0), Scalar::one());
        assert_eq!(f.coeff(0, 1, 1), Scalar::ratio(-1, 3).unwrap());
        assert_eq!(f.to_polynomial(&vs).unwrap(), p);
    }

    #[test]
    fn ekp_hyperplane_cone() {
        assert!(matches!(
            ekp_cubic(EkpKind::HyperplaneCone(1)),
            Err(Error::Invalid(_))
        ));
        for m in 2..=6 {
            let f = ekp_cubic(EkpKind::HyperplaneCone(m)).unwrap();
            assert!(f.is_nondegenerate(), "hyperplane-cone m={m}");
        }
    }

    #[test]
    fn ekp_severi_determinant() {
        let f = ekp_cubic(EkpKind::SeveriDeterminant).unwrap();
        assert_eq!(f.m(), 6);
        assert!(f.is_nondegenerate());
        // cross-check the trilinear table against the actual determinant
        let vs = vars(&["v1", "v2", "v3", "v4", "v5", "v6"]);
        let v = |i: usize| Poly::var(vs.clone(), i);
        let det = v(0)
            .mul(&v(3)).unwrap().mul(&v(5)).unwrap()
            .add(&v(1).mul(&v(2)).unwrap().mul(&v(4)).unwrap().scale(&Scalar::from_int(2))).unwrap()
            .sub(&v(0).mul(&v(4)).unwrap().mul(&v(4)).unwrap()).unwrap()
            .sub(&v(3).mul(&v(2)).unwrap().mul(&v(2)).unwrap()).unwrap()
            .sub(&v(5).mul(&v(1)).unwrap().mul(&v(1)).unwrap()).unwrap();
        assert_eq!(f.to_polynomial(&vs).unwrap(), det);
    }

    #[test]
    fn text_round_trip() {
        let f = ekp_cubic(EkpKind::HyperplaneCone(3)).unwrap();
        let text = f.to_text();
        let back = CubicForm::parse_text(&text).unwrap();
        assert_eq!(f, back);
        assert_eq!(back.to_text(), text);
    }

    #[test]
    fn random_nondegenerate_is_nondegenerate() {
        let mut s = Sampler::new(0, "cubic test");
        for m in 1..=4 {
            let f = random_nondegenerate_cubic(m, &mut s);
            assert!(f.is_nondegenerate());
        }
    }
}
