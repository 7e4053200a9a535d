//! Symplectic vector spaces, Lagrangian subspaces, parametrized Legendrian
//! cones, their second and third fundamental forms, and the nondegeneracy
//! suite for the fundamental forms.
//!
//! Conventions fixed once per space: the 1-dimensional value line of the
//! symplectic form is trivialized by a chosen basis vector, so pairings are
//! plain scalars; with a cone representative p fixed, the two quotient
//! identifications induced by the form are `n -> omega(n, _)` on the
//! perp-of-p quotient and `w -> omega(p, w)` on the final value line.

use crate::cubic::CubicForm;
use crate::check::{Check, CheckList};
use crate::error::{Error, Result};
use crate::matrix::{rank_of_rows, span_eq, ExactMatrix};
use crate::parse::parse_ratfn;
use crate::poly::Vars;
use crate::ratfn::RatFn;
use crate::sample::Sampler;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticSpace {
    dim: usize,
    omega: ExactMatrix,
}

impl SymplecticSpace {
    /// An antisymmetric Gram matrix of full exact rank.
    pub fn new(omega: ExactMatrix) -> Result<Self> {
        let dim = omega.rows();
        if omega.cols() != dim || dim % 2 != 0 || dim < 4 {
            return Err(Error::Invalid(
                "symplectic form needs an even square matrix of dimension >= 4".into(),
            ));
        }
        for i in 0..dim {
            for j in 0..dim {
                let anti = -omega.get(j, i);
                if *omega.get(i, j) != anti {
                    return Err(Error::Invalid("symplectic matrix is not antisymmetric".into()));
                }
            }
        }
        if omega.rank() != dim {
            return Err(Error::Invalid("symplectic matrix is degenerate".into()));
        }
        Ok(SymplecticSpace { dim, omega })
    }

    /// The standard pairing on coordinates (a, v_1..v_m, xi_1..xi_m, b):
    /// omega(u, u') = b a' - b' a + xi(v') - xi'(v).
    pub fn standard(m: usize) -> SymplecticSpace {
        let dim = 2 * m + 2;
        let mut omega = ExactMatrix::zeros(dim, dim);
        omega.set(0, dim - 1, -Scalar::one());
        omega.set(dim - 1, 0, Scalar::one());
        for i in 0..m {
            omega.set(1 + i, 1 + m + i, -Scalar::one());
            omega.set(1 + m + i, 1 + i, Scalar::one());
        }
        SymplecticSpace { dim, omega }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn m(&self) -> usize {
        (self.dim - 2) / 2
    }

    pub fn omega(&self) -> &ExactMatrix {
        &self.omega
    }

    pub fn pair(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        let mut acc = Scalar::zero();
        for i in 0..self.dim {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                let o = self.omega.get(i, j);
                if !o.is_zero() && !v[j].is_zero() {
                    acc += &(&(&u[i] * o) * &v[j]);
                }
            }
        }
        acc
    }

    /// Symbolic pairing of rational-function vectors.
    pub fn pair_fn(&self, u: &[RatFn], v: &[RatFn]) -> Result<RatFn> {
        let vars = u[0].vars().clone();
        let mut acc = RatFn::zero(vars.clone());
        for i in 0..self.dim {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                let o = self.omega.get(i, j);
                if o.is_zero() || v[j].is_zero() {
                    continue;
                }
                acc = acc.add(&u[i].mul(&v[j])?.scale(o))?;
            }
        }
        Ok(acc)
    }

    /// The perp of a single vector: kernel of `omega(_, p)`.
    pub fn perp_of_vector(&self, p: &[Scalar]) -> Vec<Vec<Scalar>> {
        let mut row = vec![Scalar::zero(); self.dim];
        for (j, r) in row.iter_mut().enumerate() {
            for i in 0..self.dim {
                // omega(w, p) = sum_ij w_i omega_ij p_j; coefficient of w_j
                *r += &(self.omega.get(j, i) * &p[i]);
            }
        }
        let (_, kernel) = ExactMatrix::from_rows(vec![row]).rank_kernel();
        kernel
    }
}

/// Lagrangian test for a subspace given by an independent basis: the span
/// must have dimension m+1 and the form must vanish on all basis pairs.
pub fn is_lagrangian(space: &SymplecticSpace, basis: &[Vec<Scalar>]) -> Result<bool> {
    if rank_of_rows(basis) != basis.len() {
        return Err(Error::DependentBasis);
    }
    if basis.len() != space.m() + 1 {
        return Ok(false);
    }
    for (i, u) in basis.iter().enumerate() {
        for v in basis.iter().skip(i + 1) {
            if !space.pair(u, v).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A rational parametrization of the affine cone over a Legendrian
/// submanifold, with the affine-chart convention that the parametrization is
/// a slice of the cone (the cone point itself is `t * map(v)`).
#[derive(Clone, Debug)]
pub struct ParamLegendrian {
    space: SymplecticSpace,
    params: Vars,
    cone_map: Vec<RatFn>,
    base_param: Vec<Scalar>,
}

impl ParamLegendrian {
    pub fn new(
        space: SymplecticSpace,
        params: Vars,
        cone_map: Vec<RatFn>,
        base_param: Vec<Scalar>,
    ) -> Result<Self> {
        let m = space.m();
        if params.len() != m {
            return Err(Error::Dimension {
                expected: m,
                got: params.len(),
            });
        }
        if cone_map.len() != space.dim() {
            return Err(Error::Dimension {
                expected: space.dim(),
                got: cone_map.len(),
            });
        }
        if base_param.len() != m {
            return Err(Error::Dimension {
                expected: m,
                got: base_param.len(),
            });
        }
        let s = ParamLegendrian {
            space,
            params,
            cone_map,
            base_param,
        };
        // immersed at the base parameter, tangent Lagrangian there
        let t_hat = s.affine_tangent(&s.base_param)?;
        if !is_lagrangian(&s.space, &t_hat)? {
            return Err(Error::NotLagrangian(0, 1));
        }
        Ok(s)
    }

    pub fn space(&self) -> &SymplecticSpace {
        &self.space
    }

    pub fn params(&self) -> &Vars {
        &self.params
    }

    pub fn cone_map(&self) -> &[RatFn] {
        &self.cone_map
    }

    pub fn base_param(&self) -> &[Scalar] {
        &self.base_param
    }

    pub fn m(&self) -> usize {
        self.space.m()
    }

    fn eval_map(&self, at: &[Scalar]) -> Result<Vec<Scalar>> {
        self.cone_map.iter().map(|c| c.eval(at)).collect()
    }

    fn first_derivatives(&self) -> Vec<Vec<RatFn>> {
        (0..self.m())
            .map(|i| self.cone_map.iter().map(|c| c.derivative_index(i)).collect())
            .collect()
    }

    /// Value plus first derivatives at a parameter point; errors if the
    /// immersion rank drops there.
    pub fn affine_tangent(&self, at: &[Scalar]) -> Result<Vec<Vec<Scalar>>> {
        let mut rows = vec![self.eval_map(at)?];
        for d in self.first_derivatives() {
            rows.push(d.iter().map(|c| c.eval(at)).collect::<Result<_>>()?);
        }
        if rank_of_rows(&rows) != self.m() + 1 {
            return Err(Error::ImmersionDrop(format_point(at)));
        }
        Ok(rows)
    }

    /// Exact symbolic Legendrian test: the form must vanish identically on
    /// all pairs from (map, first derivatives).
    pub fn verify_legendrian_symbolically(&self) -> Result<()> {
        let mut rows: Vec<Vec<RatFn>> = vec![self.cone_map.clone()];
        rows.extend(self.first_derivatives());
        for (i, u) in rows.iter().enumerate() {
            for (j, v) in rows.iter().enumerate().skip(i + 1) {
                if !self.space.pair_fn(u, v)?.is_zero() {
                    return Err(Error::NotLagrangian(i, j));
                }
            }
        }
        Ok(())
    }

    /// Text format: the symplectic matrix block, parameter names, base point,
    /// and one `cone` line per component.
    pub fn to_text(&self) -> String {
        let mut out = format!("symplectic {}\n", self.space.dim());
        for i in 0..self.space.dim() {
            let row: Vec<String> = (0..self.space.dim())
                .map(|j| self.space.omega().get(i, j).to_string())
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out.push_str(&format!("params {}\n", self.params.join(" ")));
        let base: Vec<String> = self.base_param.iter().map(Scalar::to_string).collect();
        out.push_str(&format!("base {}\n", base.join(" ")));
        for c in &self.cone_map {
            out.push_str(&format!("cone {c}\n"));
        }
        out
    }

    pub fn parse_text(src: &str) -> Result<ParamLegendrian> {
        let mut lines = src.lines().enumerate().peekable();
        let mut dim;
        let mut omega_rows: Vec<Vec<Scalar>> = Vec::new();
        let mut params: Option<Vars> = None;
        let mut base: Option<Vec<Scalar>> = None;
        let mut cone: Vec<String> = Vec::new();
        let mut cone_lines: Vec<usize> = Vec::new();
        while let Some((ln, raw)) = lines.next() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks[0] {
                "symplectic" => {
                    dim = toks
                        .get(1)
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| Error::parse(ln + 1, 1, "expected `symplectic <dim>`"))?;
                    for _ in 0..dim {
                        let Some((ln2, raw2)) = lines.next() else {
                            return Err(Error::parse(ln + 1, 1, "truncated symplectic block"));
                        };
                        let row = raw2
                            .split_whitespace()
                            .map(Scalar::parse)
                            .collect::<Result<Vec<_>>>()
                            .map_err(|e| Error::parse(ln2 + 1, 1, e.to_string()))?;
                        if row.len() != dim {
                            return Err(Error::parse(ln2 + 1, 1, "bad symplectic row length"));
                        }
                        omega_rows.push(row);
                    }
                }
                "params" => {
                    params = Some(toks[1..].iter().map(|s| s.to_string()).collect::<Vec<_>>().into());
                }
                "base" => {
                    base = Some(
                        toks[1..]
                            .iter()
                            .map(|s| Scalar::parse(s))
                            .collect::<Result<Vec<_>>>()
                            .map_err(|e| Error::parse(ln + 1, 1, e.to_string()))?,
                    );
                }
                "cone" => {
                    cone.push(line["cone".len()..].trim().to_string());
                    cone_lines.push(ln + 1);
                }
                other => {
                    return Err(Error::parse(ln + 1, 1, format!("unknown directive `{other}`")));
                }
            }
        }
        let params = params.ok_or_else(|| Error::parse(1, 1, "missing `params` line"))?;
        let base = base.ok_or_else(|| Error::parse(1, 1, "missing `base` line"))?;
        let space = SymplecticSpace::new(ExactMatrix::from_rows(omega_rows))?;
        let cone_map = cone
            .iter()
            .zip(&cone_lines)
            .map(|(src, &ln)| parse_ratfn(src, &params, ln))
            .collect::<Result<Vec<_>>>()?;
        ParamLegendrian::new(space, params, cone_map, base)
    }
}

/// Raw derivative data of the cone at a parameter point, with the pieces the
/// nondegeneracy suite consumes.
#[derive(Clone, Debug)]
pub struct FundamentalFormsData {
    pub value: Vec<Scalar>,
    /// First derivatives (m rows).
    pub tangent: Vec<Vec<Scalar>>,
    /// Second derivatives, symmetric in (i, j).
    pub second: Vec<Vec<Vec<Scalar>>>,
    /// Third derivatives, symmetric in (i, j, k).
    pub third: Vec<Vec<Vec<Vec<Scalar>>>>,
    /// Rank of the second fundamental form (dimension of the image in W/T̂).
    pub ii_rank: usize,
    /// The third form pushed to the final value line via omega(p, _):
    /// a scalar symmetric trilinear table on the tangent directions.
    pub iii_table: Vec<Vec<Vec<Scalar>>>,
}

pub fn fundamental_forms(s: &ParamLegendrian, at: &[Scalar]) -> Result<FundamentalFormsData> {
    let m = s.m();
    let value = s.eval_map(at)?;
    let firsts = s.first_derivatives();
    let tangent: Vec<Vec<Scalar>> = firsts
        .iter()
        .map(|d| d.iter().map(|c| c.eval(at)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    {
        let mut rows = vec![value.clone()];
        rows.extend(tangent.iter().cloned());
        if rank_of_rows(&rows) != m + 1 {
            return Err(Error::ImmersionDrop(format_point(at)));
        }
    }
    let seconds_fn: Vec<Vec<Vec<RatFn>>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| firsts[i].iter().map(|c| c.derivative_index(j)).collect())
                .collect()
        })
        .collect();
    let second: Vec<Vec<Vec<Scalar>>> = seconds_fn
        .iter()
        .map(|row| {
            row.iter()
                .map(|d| d.iter().map(|c| c.eval(at)).collect::<Result<_>>())
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    let third: Vec<Vec<Vec<Vec<Scalar>>>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    (0..m)
                        .map(|k| {
                            seconds_fn[i][j]
                                .iter()
                                .map(|c| c.derivative_index(k).eval(at))
                                .collect::<Result<Vec<_>>>()
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    // rank of II: second-derivative classes modulo the affine tangent
    let mut rows = vec![value.clone()];
    rows.extend(tangent.iter().cloned());
    let t_rank = rows.len();
    for i in 0..m {
        for j in i..m {
            rows.push(second[i][j].clone());
        }
    }
    let ii_rank = rank_of_rows(&rows) - t_rank;

    // III through the value-line identification omega(p, _)
    let mut iii_table = vec![vec![vec![Scalar::zero(); m]; m]; m];
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                iii_table[i][j][k] = s.space.pair(&value, &third[i][j][k]);
            }
        }
    }
    Ok(FundamentalFormsData {
        value,
        tangent,
        second,
        third,
        ii_rank,
        iii_table,
    })
}

#[derive(Clone, Debug)]
pub struct FormsVerdicts {
    pub checks: CheckList,
    /// The scalar cubic extracted from the third form, for proportionality
    /// tests against a source cubic.
    pub iii_cubic: CubicForm,
}

/// The four nondegenerate-fundamental-forms conditions at a point:
/// (i) the second form has locally constant rank (sampled),
/// (ii) its image fills the perp-of-the-point quotient,
/// (iii) the third form is a nondegenerate cubic on the tangent space,
/// (iv) the third form contracted with a tangent vector reproduces the
///      second form under the two form-induced identifications.
pub fn check_nondegenerate_forms(
    s: &ParamLegendrian,
    at: &[Scalar],
    seed: u64,
) -> Result<FormsVerdicts> {
    let m = s.m();
    let mut checks = CheckList::new();
    let data = fundamental_forms(s, at)?;

    // (i) rank of II at 5 nearby sampled points
    let mut sampler = Sampler::new(seed, "forms local constancy");
    let mut agree = true;
    let mut witness = String::new();
    let mut done = 0;
    let mut tries = 0;
    while done < 5 && tries < 500 {
        tries += 1;
        let p = sampler.point(m);
        match fundamental_forms(s, &p) {
            Ok(other) => {
                if other.ii_rank != data.ii_rank {
                    agree = false;
                    witness = format!(
                        "rank {} at ({}) vs {} at the point",
                        other.ii_rank,
                        format_point(&p),
                        data.ii_rank
                    );
                    break;
                }
                done += 1;
            }
            Err(Error::Pole(_)) | Err(Error::ImmersionDrop(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    checks.push(Check::of("ii-rank-locally-constant", agree && done == 5, witness));

    // (ii) image of II equals perp(p)/T̂ as exact subspaces
    let mut t_rows = vec![data.value.clone()];
    t_rows.extend(data.tangent.iter().cloned());
    let mut ii_span = t_rows.clone();
    for i in 0..m {
        for j in i..m {
            ii_span.push(data.second[i][j].clone());
        }
    }
    let mut perp_span = t_rows.clone();
    perp_span.extend(s.space.perp_of_vector(&data.value));
    checks.push(Check::of(
        "n2-equals-perp-quotient",
        span_eq(&ii_span, &perp_span),
        format!(
            "II image has rank {}, perp quotient has dimension {}",
            data.ii_rank,
            rank_of_rows(&perp_span) - rank_of_rows(&t_rows)
        ),
    ));

    // (iii) III is a nondegenerate cubic on the tangent space
    let mut entries = Vec::new();
    for i in 0..m {
        for j in i..m {
            for k in j..m {
                entries.push(([i, j, k], data.iii_table[i][j][k].clone()));
            }
        }
    }
    let iii_cubic = CubicForm::new(m, entries)?;
    match iii_cubic.nondegeneracy() {
        crate::cubic::NondegeneracyVerdict::Nondegenerate => {
            checks.push(Check::pass("iii-nondegenerate"));
        }
        crate::cubic::NondegeneracyVerdict::Degenerate { witness } => {
            let w: Vec<String> = witness.iter().map(Scalar::to_string).collect();
            checks.push(Check::fail(
                "iii-nondegenerate",
                format!("kernel witness ({})", w.join(", ")),
            ));
        }
    }

    // (iv) III(v1, v2, _) equals II(v1, v2) after the omega-identifications:
    // in coordinates, omega(p, d3_ijk) = omega(d2_ij, d1_k) for all i, j, k.
    let mut iv_ok = true;
    let mut iv_witness = String::new();
    'outer: for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                let lhs = &data.iii_table[i][j][k];
                let rhs = s.space.pair(&data.second[i][j], &data.tangent[k]);
                if *lhs != rhs {
                    iv_ok = false;
                    iv_witness = format!("at slots ({i}, {j}, {k}): {lhs} vs {rhs}");
                    break 'outer;
                }
            }
        }
    }
    checks.push(Check::of("iii-matches-ii", iv_ok, iv_witness));

    Ok(FormsVerdicts { checks, iii_cubic })
}

/// The Legendrian cone of a cubic form: in W = C ⊕ V ⊕ V^∨ ⊕ C with the
/// standard pairing, the slice parametrization v ↦ (1, v, grad g(v), -g(v))
/// of the graph of the differential of the 2-homogeneous function g(v)/a,
/// where g(v) = F(v, v, v)/6. The Lagrangian property is verified
/// symbolically before returning. Degenerate cubics are allowed (the cone is
/// still Legendrian; the nondegeneracy suite is what fails on them).
pub fn legendrian_of_cubic(f: &CubicForm) -> Result<ParamLegendrian> {
    let m = f.m();
    let space = SymplecticSpace::standard(m);
    let params: Vars = (1..=m).map(|i| format!("v{i}")).collect::<Vec<_>>().into();
    let g = f
        .to_polynomial(&params)?
        .scale(&Scalar::ratio(1, 6)?);
    let mut cone: Vec<RatFn> = Vec::with_capacity(2 * m + 2);
    cone.push(RatFn::one(params.clone()));
    for i in 0..m {
        cone.push(RatFn::var(params.clone(), i));
    }
    for i in 0..m {
        cone.push(RatFn::from_poly(g.derivative_index(i)));
    }
    cone.push(RatFn::from_poly(g.neg()));
    let s = ParamLegendrian::new(space, params.clone(), cone, vec![Scalar::zero(); m])
        .map_err(|e| Error::ConstructionBug(format!("cubic cone is not Legendrian at 0: {e}")))?;
    s.verify_legendrian_symbolically()
        .map_err(|e| Error::ConstructionBug(format!("cubic cone fails the symbolic test: {e}")))?;
    Ok(s)
}

/// A linear Legendrian plane (flat negative control): the cone over the
/// coordinate Lagrangian (a, v)-plane.
pub fn linear_legendrian(m: usize) -> Result<ParamLegendrian> {
    legendrian_of_cubic(&CubicForm::zero(m))
}

fn format_point(p: &[Scalar]) -> String {
    p.iter()
        .map(Scalar::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{vars, Poly};

    fn unit_m1() -> CubicForm {
        // F(e,e,e) = 6 so that g(v) = v^3
        CubicForm::new(1, [([0, 0, 0], Scalar::from_int(6))]).unwrap()
    }

    #[test]
    fn standard_lagrangians() {
        let sp = SymplecticSpace::standard(1);
        let e = |i: usize| {
            let mut v = vec![Scalar::zero(); 4];
            v[i] = Scalar::one();
            v
        };
        assert!(is_lagrangian(&sp, &[e(0), e(1)]).unwrap());
        assert!(!is_lagrangian(&sp, &[e(0), e(3)]).unwrap());
        assert!(matches!(
            is_lagrangian(&sp, &[e(0), e(0)]),
            Err(Error::DependentBasis)
        ));
    }

    #[test]
    fn cubic_cone_m1_explicit() {
        let s = legendrian_of_cubic(&unit_m1()).unwrap();
        // v ↦ (1, v, 3v^2, -v^3)
        let vs = s.params().clone();
        let v = Poly::var(vs.clone(), 0);
        assert_eq!(s.cone_map()[0], RatFn::one(vs.clone()));
        assert_eq!(s.cone_map()[1], RatFn::from_poly(v.clone()));
        assert_eq!(
            s.cone_map()[2],
            RatFn::from_poly(v.pow(2).scale(&Scalar::from_int(3)))
        );
        assert_eq!(s.cone_map()[3], RatFn::from_poly(v.pow(3).neg()));
        // tangent at v=0 is the coordinate Lagrangian
        let t = s.affine_tangent(&[Scalar::zero()]).unwrap();
        assert_eq!(t[0], vec![Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::zero()]);
        assert_eq!(t[1], vec![Scalar::zero(), Scalar::one(), Scalar::zero(), Scalar::zero()]);
    }

    #[test]
    fn cubic_cone_m1_forms_at_zero() {
        let s = legendrian_of_cubic(&unit_m1()).unwrap();
        let data = fundamental_forms(&s, &[Scalar::zero()]).unwrap();
        // second derivative (0, 0, 6, 0): the xi-direction, rank 1
        assert_eq!(data.second[0][0], vec![
            Scalar::zero(), Scalar::zero(), Scalar::from_int(6), Scalar::zero()
        ]);
        assert_eq!(data.ii_rank, 1);
        // third derivative (0, 0, 0, -6) survives to the value line
        assert_eq!(data.third[0][0][0], vec![
            Scalar::zero(), Scalar::zero(), Scalar::zero(), Scalar::from_int(-6)
        ]);
        assert!(!data.iii_table[0][0][0].is_zero());
    }

    #[test]
    fn nondegenerate_suite_m1() {
        let s = legendrian_of_cubic(&unit_m1()).unwrap();
        for p in [[Scalar::zero()], [Scalar::from_int(2)], [Scalar::from_int(-5)]] {
            let v = check_nondegenerate_forms(&s, &p, 0).unwrap();
            assert!(v.checks.all_passed(), "failed at {:?}: {:?}", p, v.checks);
            // III recovers the cubic exactly with these conventions
            assert_eq!(v.iii_cubic, unit_m1());
        }
    }

    #[test]
    fn linear_plane_fails_iii() {
        let s = linear_legendrian(2).unwrap();
        let v = check_nondegenerate_forms(&s, &[Scalar::zero(), Scalar::zero()], 0).unwrap();
        let by_name: std::collections::HashMap<_, _> = v
            .checks
            .checks
            .iter()
            .map(|c| (c.name.as_str(), c.verdict))
            .collect();
        assert_eq!(by_name["iii-nondegenerate"], crate::check::Verdict::Fail);
        // (iv) holds trivially for the flat plane
        assert_eq!(by_name["iii-matches-ii"], crate::check::Verdict::Pass);
    }

    #[test]
    fn degenerate_cubic_fails_iii_with_witness() {
        // F = v1^3 on two variables
        let f = CubicForm::new(2, [([0, 0, 0], Scalar::from_int(1))]).unwrap();
        let s = legendrian_of_cubic(&f).unwrap();
        let mut sampler = Sampler::new(7, "degenerate points");
        for _ in 0..4 {
            let p = sampler.point(2);
            let v = match check_nondegenerate_forms(&s, &p, 0) {
                Ok(v) => v,
                Err(Error::ImmersionDrop(_)) => continue,
                Err(e) => panic!("{e}"),
            };
            let iii = v
                .checks
                .checks
                .iter()
                .find(|c| c.name == "iii-nondegenerate")
                .unwrap();
            assert_eq!(iii.verdict, crate::check::Verdict::Fail);
            let w = iii.witness.as_ref().unwrap();
            assert!(w.contains("0, 1") || w.contains("0, -1"), "witness: {w}");
        }
    }

    #[test]
    fn text_round_trip() {
        let s = legendrian_of_cubic(&unit_m1()).unwrap();
        let text = s.to_text();
        let back = ParamLegendrian::parse_text(&text).unwrap();
        assert_eq!(back.to_text(), text);
        assert_eq!(back.cone_map(), s.cone_map());
    }

    #[test]
    fn tangent_lagrangian_at_generic_parameter_symbolic() {
        let s = legendrian_of_cubic(&unit_m1()).unwrap();
        s.verify_legendrian_symbolically().unwrap();
        let _ = vars(&["unused"]);
    }
}
