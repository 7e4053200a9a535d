//! The contact lift of a flat model: projectivized annihilator of the
//! derived distribution, the corank-1 restriction of the tautological form,
//! its Cauchy characteristic of rank m, and the induced contact form on the
//! quotient.
//!
//! Only the affine fiber chart `alpha = a1 + t a2` is materialized; the point
//! at infinity is covered by a second run with the two annihilator fields
//! swapped.

use crate::chart::Chart;
use crate::check::{Check, CheckList};
use crate::distribution::{derived_flag, levi_null_space, DistributionSpec};
use crate::error::{Error, Result};
use crate::field::{evaluate_frame, VectorField};
use crate::flat::FlatModel;
use crate::matrix::{intersection_dim, rank_of_rows, ratfn_kernel, ratfn_rank, span_eq, ExactMatrix};
use crate::poly::{Poly, Vars};
use crate::ratfn::RatFn;
use crate::sample::Sampler;
use crate::scalar::Scalar;
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct LiftChart {
    pub m: usize,
    /// Base chart of dimension 3m+2.
    base_chart: Arc<Chart>,
    /// Total chart: base coordinates plus the fiber coordinate `t`.
    total_chart: Arc<Chart>,
    /// The two annihilator covector fields of the derived distribution,
    /// polynomial in the base coordinates.
    a1: Vec<Poly>,
    a2: Vec<Poly>,
    /// Derived distribution (adapted frame, rank 3m).
    derived: DistributionSpec,
}

impl LiftChart {
    pub fn total_chart(&self) -> &Arc<Chart> {
        &self.total_chart
    }

    pub fn base_dim(&self) -> usize {
        self.base_chart.dim()
    }

    pub fn annihilators(&self) -> (&[Poly], &[Poly]) {
        (&self.a1, &self.a2)
    }

    pub fn derived(&self) -> &DistributionSpec {
        &self.derived
    }

    /// The chart covering the opposite end of the fiber line.
    pub fn swapped(&self) -> Result<LiftChart> {
        Ok(LiftChart {
            m: self.m,
            base_chart: self.base_chart.clone(),
            total_chart: self.total_chart.clone(),
            a1: self.a2.clone(),
            a2: self.a1.clone(),
            derived: self.derived.clone(),
        })
    }

    /// The covector `a1 + t a2` on the total chart (no dt component).
    pub fn alpha(&self) -> Result<Vec<Poly>> {
        let tvars = self.total_chart.coords().clone();
        let t = Poly::var(tvars.clone(), tvars.len() - 1);
        let mut out = Vec::with_capacity(self.base_dim() + 1);
        for (p1, p2) in self.a1.iter().zip(&self.a2) {
            let e1 = p1.rename_into(&tvars)?;
            let e2 = p2.rename_into(&tvars)?;
            out.push(e1.add(&e2.mul(&t)?)?);
        }
        out.push(Poly::zero(tvars));
        Ok(out)
    }

    /// Value of `a1 + t a2` at a base point and fiber value, as a covector on
    /// the base.
    pub fn alpha_at(&self, base: &[Scalar], t: &Scalar) -> Result<Vec<Scalar>> {
        self.a1
            .iter()
            .zip(&self.a2)
            .map(|(p1, p2)| Ok(p1.eval(base)? + (p2.eval(base)? * t.clone())))
            .collect()
    }
}

/// Solve for the rank-2 annihilator of the derived distribution and set up
/// the fiber chart. Requires growth vector (2m, 3m, 3m+2).
pub fn build_lift(model: &FlatModel, max_steps: usize) -> Result<LiftChart> {
    let d = model.distribution()?;
    let flag = derived_flag(&d, max_steps)?;
    let m2 = d.rank();
    if m2 % 2 != 0 {
        return Err(Error::GrowthShape(flag.ranks.clone(), "(2m, 3m, 3m+2)".into()));
    }
    let m = m2 / 2;
    let expected = vec![2 * m, 3 * m, 3 * m + 2];
    if flag.ranks != expected || !flag.stabilized {
        return Err(Error::GrowthShape(flag.ranks.clone(), "(2m, 3m, 3m+2)".into()));
    }
    let base_chart = d.chart().clone();
    let vars = base_chart.coords().clone();
    let derived = flag.distribution(1)?;

    // Covectors annihilating the derived frame over the whole chart: the
    // kernel of the (3m) x (3m+2) coefficient matrix over the function field.
    let rows: Vec<Vec<RatFn>> = derived.frame().iter().map(|f| f.coeffs().to_vec()).collect();
    let kernel = ratfn_kernel(&rows, &vars);
    if kernel.len() != 2 {
        return Err(Error::AnnihilatorRank(kernel.len()));
    }
    let a1 = kernel[0].clone();
    let a2 = kernel[1].clone();
    let at_base: Vec<Vec<Scalar>> = [&a1, &a2]
        .iter()
        .map(|a| a.iter().map(|p| p.eval(base_chart.base_point())).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    if rank_of_rows(&at_base) != 2 {
        return Err(Error::AnnihilatorRank(1));
    }

    let mut names: Vec<String> = vars.iter().cloned().collect();
    names.push("t".to_string());
    let total_vars: Vars = names.into();
    let mut base_point = base_chart.base_point().to_vec();
    base_point.push(Scalar::zero());
    let total_chart = Chart::new(format!("{}_pw", base_chart.name), total_vars, base_point)?;

    Ok(LiftChart {
        m,
        base_chart,
        total_chart,
        a1,
        a2,
        derived,
    })
}

/// Frame of the corank-1 distribution cut out by the tautological form on
/// the fiber chart. The derived-frame fields are annihilated by both
/// covectors, hence are sections already; one extra base field
/// `Z = alpha_i0 d/dx_j0 - alpha_j0 d/dx_i0` completes the base directions,
/// and the fiber direction closes the frame. The result is a genuine frame
/// wherever the derived frame stays independent and `(alpha_i0, alpha_j0)`
/// stays away from zero (in particular at the base point).
pub fn restricted_tautological_distribution(lift: &LiftChart) -> Result<Vec<VectorField>> {
    let alpha = lift.alpha()?;
    let n = lift.base_dim();
    let total = lift.total_chart().clone();
    let total_vars = total.coords().clone();
    let base0 = total.base_point();

    let mut frame = Vec::with_capacity(n);
    let mut values: Vec<Vec<Scalar>> = Vec::new();
    for f in lift.derived().frame() {
        let mut coeffs: Vec<RatFn> = f
            .coeffs()
            .iter()
            .map(|c| c.rename_into(&total_vars))
            .collect::<Result<_>>()?;
        coeffs.push(RatFn::zero(total_vars.clone()));
        let lifted = VectorField::new(total.clone(), coeffs)?;
        values.push(lifted.eval(base0)?);
        frame.push(lifted);
    }

    let pivot = (0..n)
        .find(|&i| alpha[i].eval(base0).map(|v| !v.is_zero()).unwrap_or(false))
        .ok_or_else(|| Error::ConstructionBug("alpha vanishes at the base point".into()))?;
    let mut completed = false;
    for j in 0..n {
        if j == pivot {
            continue;
        }
        let mut value = vec![Scalar::zero(); n + 1];
        value[j] = alpha[pivot].eval(base0)?;
        value[pivot] = -alpha[j].eval(base0)?;
        let mut candidate = values.clone();
        candidate.push(value);
        if rank_of_rows(&candidate) == values.len() + 1 {
            let mut coeffs: Vec<RatFn> =
                (0..=n).map(|_| RatFn::zero(total_vars.clone())).collect();
            coeffs[j] = RatFn::from_poly(alpha[pivot].clone());
            coeffs[pivot] = RatFn::from_poly(alpha[j].neg());
            frame.push(VectorField::new(total.clone(), coeffs)?);
            completed = true;
            break;
        }
    }
    if !completed {
        return Err(Error::ConstructionBug(
            "no completing base direction for the lifted distribution".into(),
        ));
    }
    frame.push(VectorField::coordinate(total, n));
    Ok(frame)
}

#[derive(Clone, Debug)]
pub struct LiftReport {
    pub checks: CheckList,
    pub ch_rank: usize,
    /// Dimension of the contact quotient: total chart minus the leaves.
    pub quotient_contact_dim: usize,
}

/// Run the full suite of lift verdicts on one fiber chart: corank, Cauchy
/// characteristic rank at base and samples, exact Frobenius closure, fiber
/// transversality, the induced-form rank, and the cross-check against the
/// Levi null spaces downstairs.
pub fn verify_tlines(lift: &LiftChart, seed: u64, samples: usize) -> Result<LiftReport> {
    let mut checks = CheckList::new();
    let m = lift.m;
    let n = lift.base_dim();
    let total_dim = n + 1;
    let total_vars = lift.total_chart().coords().clone();
    let frame = restricted_tautological_distribution(lift)?;

    checks.push(Check::of(
        "corank-one",
        frame.len() + 1 == total_dim,
        format!("frame size {} on chart dim {total_dim}", frame.len()),
    ));
    // the fiber direction lies in the distribution: alpha has no dt part
    let alpha = lift.alpha()?;
    checks.push(Check::of(
        "fiber-direction-in-distribution",
        alpha[n].is_zero(),
        "alpha has a dt component".to_string(),
    ));
    // both covector fields annihilate the derived frame identically
    let mut annih = true;
    for cov in [&lift.a1, &lift.a2] {
        for f in lift.derived().frame() {
            let mut acc = RatFn::zero(total_vars.clone());
            for (c, a) in f.coeffs().iter().zip(cov) {
                acc = acc.add(
                    &c.rename_into(&total_vars)?
                        .mul(&RatFn::from_poly(a.rename_into(&total_vars)?))?,
                )?;
            }
            if !acc.is_zero() {
                annih = false;
            }
        }
    }
    checks.push(Check::of(
        "annihilator-exact",
        annih,
        "a covector field fails to annihilate the derived frame".to_string(),
    ));

    // Levi form of the frame against alpha, over the function field.
    let k = frame.len();
    let mut levi = vec![vec![RatFn::zero(total_vars.clone()); k]; k];
    for i in 0..k {
        for j in i + 1..k {
            let b = frame[i].lie_bracket(&frame[j])?;
            let mut acc = RatFn::zero(total_vars.clone());
            for (c, a) in b.coeffs().iter().zip(&alpha) {
                if c.is_zero() || a.is_zero() {
                    continue;
                }
                acc = acc.add(&c.mul(&RatFn::from_poly(a.clone()))?)?;
            }
            levi[j][i] = acc.neg();
            levi[i][j] = acc;
        }
    }

    // Pointwise verdicts at the base point and sampled points.
    let eval_levi = |point: &[Scalar]| -> Result<Option<ExactMatrix>> {
        let mut mat = ExactMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                match levi[i][j].eval(point) {
                    Ok(v) => mat.set(i, j, v),
                    Err(Error::Pole(_)) => return Ok(None),
                    Err(e) => return Err(e),
                }
            }
        }
        Ok(Some(mat))
    };
    let frame_ok = |point: &[Scalar]| -> Result<bool> {
        match evaluate_frame(&frame, point) {
            Ok(mat) => Ok(mat.rank() == k),
            Err(Error::Pole(_)) => Ok(false),
            Err(e) => Err(e),
        }
    };

    let base0 = lift.total_chart().base_point().to_vec();
    let mut points = vec![base0.clone()];
    {
        let mut sampler = Sampler::new(seed, "lift verify points");
        let mut tries = 0;
        while points.len() < samples + 1 && tries < 100 * (samples + 1) {
            tries += 1;
            let p = sampler.point(total_dim);
            if frame_ok(&p)? {
                points.push(p);
            }
        }
        if points.len() < samples + 1 {
            return Err(Error::TooManyRetries(tries));
        }
    }

    let mut ch_rank_ok = true;
    let mut induced_ok = true;
    let mut witness = String::new();
    for p in &points {
        let Some(mat) = eval_levi(p)? else {
            return Err(Error::Pole(format_point(p)));
        };
        let (rank, kernel) = mat.rank_kernel();
        if kernel.len() != m {
            ch_rank_ok = false;
            witness = format!("Ch rank {} at ({})", kernel.len(), format_point(p));
            break;
        }
        if rank != 2 * m + 2 {
            induced_ok = false;
            witness = format!("induced form rank {rank} at ({})", format_point(p));
            break;
        }
    }
    checks.push(Check::of(
        format!("cauchy-rank-{m}-at-{}-points", points.len()),
        ch_rank_ok,
        witness.clone(),
    ));
    checks.push(Check::of(
        format!("induced-form-rank-{}", 2 * m + 2),
        ch_rank_ok && induced_ok,
        witness.clone(),
    ));
    checks.push(Check::of(
        "dimension-bookkeeping",
        (2 * m + 2) + m + 1 == total_dim,
        format!("{} + {} + 1 != {}", 2 * m + 2, m, total_dim),
    ));

    // Cauchy characteristic as fields: kernel of the Levi matrix over the
    // function field, re-expanded in the frame.
    let kernel_rows: Vec<Vec<RatFn>> = (0..k)
        .map(|j| (0..k).map(|i| levi[i][j].clone()).collect())
        .collect();
    let ch_coeffs = ratfn_kernel(&kernel_rows, &total_vars);
    let ch_fields: Vec<VectorField> = ch_coeffs
        .iter()
        .map(|coeffs| {
            let mut acc = VectorField::zero(lift.total_chart().clone());
            for (c, f) in coeffs.iter().zip(&frame) {
                acc = acc.add(&f.scale_fn(&RatFn::from_poly(c.clone()))?)?;
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    checks.push(Check::of(
        "cauchy-field-rank",
        ch_fields.len() == m,
        format!("function-field kernel has dimension {}", ch_fields.len()),
    ));

    // Exact Frobenius closure of the characteristic fields.
    let mut frobenius = true;
    let mut frob_witness = String::new();
    if ch_fields.len() > 1 {
        let rows: Vec<Vec<RatFn>> = ch_fields.iter().map(|f| f.coeffs().to_vec()).collect();
        let base_rank = ratfn_rank(&rows, &total_vars);
        'outer: for a in 0..ch_fields.len() {
            for b in a + 1..ch_fields.len() {
                let br = ch_fields[a].lie_bracket(&ch_fields[b])?;
                let mut stacked = rows.clone();
                stacked.push(br.coeffs().to_vec());
                if ratfn_rank(&stacked, &total_vars) != base_rank {
                    frobenius = false;
                    frob_witness = format!("bracket ({a}, {b}) leaves the span");
                    break 'outer;
                }
            }
        }
    }
    checks.push(Check::of("cauchy-frobenius-exact", frobenius, frob_witness));

    // Fiber-pair transversality: base projections of the characteristic at
    // (y, t1) and (y, t2) intersect in zero.
    let mut sampler = Sampler::new(seed, "lift fiber pairs");
    let mut pair_ok = true;
    let mut pair_witness = String::new();
    let mut pairs_done = 0;
    let mut tries = 0;
    while pairs_done < samples && tries < 100 * samples.max(1) {
        tries += 1;
        let t1 = Scalar::from_int(sampler.small_int());
        let t2 = Scalar::from_int(sampler.small_int());
        if t1 == t2 {
            continue;
        }
        let proj = |t: &Scalar| -> Result<Option<Vec<Vec<Scalar>>>> {
            let mut p = lift.base_chart.base_point().to_vec();
            p.push(t.clone());
            if !frame_ok(&p)? {
                return Ok(None);
            }
            let Some(mat) = eval_levi(&p)? else {
                return Ok(None);
            };
            let (_, kernel) = mat.rank_kernel();
            let frame_vals: Vec<Vec<Scalar>> = frame
                .iter()
                .map(|f| f.eval(&p))
                .collect::<Result<_>>()?;
            Ok(Some(
                kernel
                    .iter()
                    .map(|c| {
                        let mut v = vec![Scalar::zero(); n];
                        for (ci, row) in c.iter().zip(&frame_vals) {
                            for (tgt, r) in v.iter_mut().zip(row.iter().take(n)) {
                                *tgt += &(ci * r);
                            }
                        }
                        v
                    })
                    .collect(),
            ))
        };
        let (Some(p1), Some(p2)) = (proj(&t1)?, proj(&t2)?) else {
            continue;
        };
        let meet = intersection_dim(&p1, &p2);
        if meet != 0 {
            pair_ok = false;
            pair_witness = format!("projections at t={t1} and t={t2} meet in dimension {meet}");
            break;
        }
        pairs_done += 1;
    }
    checks.push(Check::of(
        format!("fiber-pair-transversality-{pairs_done}"),
        pair_ok && pairs_done == samples,
        if pair_witness.is_empty() {
            format!("completed only {pairs_done} of {samples} pairs")
        } else {
            pair_witness
        },
    ));

    // Cross-check: the base projection of the characteristic at (y, t)
    // equals the null space of (a1 + t a2) against the derived Levi form.
    let mut cross_ok = true;
    let mut cross_witness = String::new();
    let mut sampler = Sampler::new(seed, "lift cross-check");
    let mut done = 0;
    let mut tries = 0;
    while done < samples.min(5) && tries < 100 * samples.max(1) {
        tries += 1;
        let y = sampler.point(n);
        let t = Scalar::from_int(sampler.small_int());
        // stay where the frames are honest
        let frame_vals = match evaluate_frame(lift.derived().frame(), &y) {
            Ok(v) => v,
            Err(Error::Pole(_)) => continue,
            Err(e) => return Err(e),
        };
        if frame_vals.rank() != lift.derived().rank() {
            continue;
        }
        let mut total_point = y.clone();
        total_point.push(t.clone());
        if !frame_ok(&total_point)? {
            continue;
        }
        let Some(mat) = eval_levi(&total_point)? else {
            continue;
        };
        let (_, kernel) = mat.rank_kernel();
        let frame_vals_total: Vec<Vec<Scalar>> = frame
            .iter()
            .map(|f| f.eval(&total_point))
            .collect::<Result<_>>()?;
        let proj: Vec<Vec<Scalar>> = kernel
            .iter()
            .map(|c| {
                let mut v = vec![Scalar::zero(); n];
                for (ci, row) in c.iter().zip(&frame_vals_total) {
                    for (tgt, r) in v.iter_mut().zip(row.iter().take(n)) {
                        *tgt += &(ci * r);
                    }
                }
                v
            })
            .collect();
        let alpha_y = lift.alpha_at(&y, &t)?;
        let moved = match lift.derived().at_point(y.clone()) {
            Ok(mv) => mv,
            Err(_) => continue,
        };
        let null = levi_null_space(&moved, &alpha_y)?;
        if !span_eq(&proj, &null.ambient) {
            cross_ok = false;
            cross_witness = format!("mismatch at t={t}");
            break;
        }
        done += 1;
    }
    checks.push(Check::of(
        "cross-check-levi-null-space",
        cross_ok && done > 0,
        if cross_witness.is_empty() {
            "no valid sample points".to_string()
        } else {
            cross_witness
        },
    ));

    Ok(LiftReport {
        checks,
        ch_rank: m,
        quotient_contact_dim: 2 * m + 3,
    })
}

fn format_point(p: &[Scalar]) -> String {
    p.iter()
        .map(Scalar::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}
