//! Derived flags, small growth vectors, regularity sampling, Levi tensors,
//! symbol algebras, Cauchy characteristics, and Levi null spaces.
//!
//! All ranks are taken pointwise at the chart base point; genericity is
//! certified probabilistically by resampling the growth vector at nearby
//! rational points.

use crate::algebra::GradedNilpotentLieAlgebra;
use crate::chart::Chart;
use crate::error::{Error, Result};
use crate::field::{evaluate_frame, VectorField};
use crate::matrix::{
    intersection_dim, normalize_rational_vector, rank_of_rows, ratfn_kernel, ratfn_rank,
    span_eq, ExactMatrix,
};
use crate::ratfn::RatFn;
use crate::sample::Sampler;
use crate::scalar::Scalar;
use std::sync::Arc;

pub const DEFAULT_MAX_STEPS: usize = 6;

/// A distribution given by a frame of vector fields on a chart, pointwise
/// independent at the base point.
#[derive(Clone, Debug)]
pub struct DistributionSpec {
    chart: Arc<Chart>,
    frame: Vec<VectorField>,
}

impl DistributionSpec {
    pub fn new(chart: Arc<Chart>, frame: Vec<VectorField>) -> Result<Self> {
        if frame.is_empty() {
            return Err(Error::Invalid("empty frame".into()));
        }
        for f in &frame {
            if !f.chart().compatible(&chart) {
                return Err(Error::ChartMismatch(chart.name.clone(), f.chart().name.clone()));
            }
        }
        let values = evaluate_frame(&frame, chart.base_point())?;
        let rank = values.rank();
        if rank != frame.len() {
            return Err(Error::DependentFrame {
                rank,
                size: frame.len(),
            });
        }
        Ok(DistributionSpec { chart, frame })
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn frame(&self) -> &[VectorField] {
        &self.frame
    }

    pub fn rank(&self) -> usize {
        self.frame.len()
    }

    /// The same distribution with the base point moved.
    pub fn at_point(&self, point: Vec<Scalar>) -> Result<DistributionSpec> {
        let chart = self.chart.at_point(point)?;
        let frame = self
            .frame
            .iter()
            .map(|f| f.on_chart(chart.clone()))
            .collect::<Result<Vec<_>>>()?;
        DistributionSpec::new(chart, frame)
    }
}

/// One level of the weak derived system.
#[derive(Clone, Debug)]
pub struct FlagLevel {
    /// Adapted frame: fields whose base-point values extend the previous
    /// level to a pointwise basis of this level.
    pub adapted_new: Vec<VectorField>,
}

#[derive(Clone, Debug)]
pub struct DerivedFlag {
    pub ranks: Vec<usize>,
    levels: Vec<FlagLevel>,
    pub stabilized: bool,
    chart: Arc<Chart>,
}

impl DerivedFlag {
    /// Cumulative adapted frame spanning flag level `level` at the base point.
    pub fn adapted_frame(&self, level: usize) -> Vec<VectorField> {
        self.levels[..=level]
            .iter()
            .flat_map(|l| l.adapted_new.iter().cloned())
            .collect()
    }

    /// Fields adjoined at exactly this level by the adapted choice.
    pub fn adapted_new(&self, level: usize) -> &[VectorField] {
        &self.levels[level].adapted_new
    }

    pub fn depth(&self) -> usize {
        self.ranks.len() - 1
    }

    /// The level-`l` distribution as a spec of its own (frame = adapted).
    pub fn distribution(&self, level: usize) -> Result<DistributionSpec> {
        DistributionSpec::new(self.chart.clone(), self.adapted_frame(level))
    }
}

/// Compute the weak derived system of `d` at the base point: each new level
/// adjoins brackets of the previous level's new fields with the original
/// frame, and ranks are evaluated exactly at the base point. Stops when the
/// rank stabilizes (or the chart dimension is reached) or after `max_steps`
/// levels.
pub fn derived_flag(d: &DistributionSpec, max_steps: usize) -> Result<DerivedFlag> {
    let chart = d.chart().clone();
    let base = chart.base_point();
    let dim = chart.dim();

    let mut new_fields: Vec<VectorField> = d.frame().to_vec();
    let mut adapted_values: Vec<Vec<Scalar>> = Vec::new();
    let mut level0 = Vec::new();
    for f in d.frame() {
        adapted_values.push(f.eval(base)?);
        level0.push(f.clone());
    }
    let mut ranks = vec![d.rank()];
    let mut levels = vec![FlagLevel { adapted_new: level0 }];
    let mut stabilized = ranks[0] == dim;

    while !stabilized && ranks.len() <= max_steps {
        let mut adapted_new = Vec::new();
        let mut rank = *ranks.last().unwrap();
        let mut next_new = Vec::new();
        for x in &new_fields {
            for y in d.frame() {
                let b = x.lie_bracket(y)?;
                if b.is_zero() {
                    continue;
                }
                let v = b.eval(base)?;
                if v.iter().any(|s| !s.is_zero()) {
                    adapted_values.push(v);
                    if rank_of_rows(&adapted_values) > rank {
                        adapted_new.push(b.clone());
                        rank += 1;
                    } else {
                        adapted_values.pop();
                    }
                }
                next_new.push(b);
            }
        }
        new_fields = next_new;
        if rank == *ranks.last().unwrap() {
            stabilized = true;
            break;
        }
        ranks.push(rank);
        levels.push(FlagLevel { adapted_new });
        if rank == dim {
            stabilized = true;
        }
    }

    Ok(DerivedFlag {
        ranks,
        levels,
        stabilized,
        chart,
    })
}

/// The growth vector is the rank sequence of the derived flag.
pub fn small_growth_vector(d: &DistributionSpec, max_steps: usize) -> Result<Vec<usize>> {
    Ok(derived_flag(d, max_steps)?.ranks)
}

/// Growth vector computed at an arbitrary point of the chart (the frame need
/// not stay independent there; the first entry is its pointwise rank).
pub fn growth_vector_at(
    d: &DistributionSpec,
    point: &[Scalar],
    max_steps: usize,
) -> Result<Vec<usize>> {
    let frame_rank = evaluate_frame(d.frame(), point)?.rank();
    if frame_rank < d.rank() {
        // The frame degenerates here; report the honest pointwise rank.
        return Ok(vec![frame_rank]);
    }
    let moved = d.at_point(point.to_vec())?;
    small_growth_vector(&moved, max_steps)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegularityVerdict {
    /// Growth vector agreed at every sampled point.
    Regular { samples: usize },
    RankJump {
        witness: Vec<Scalar>,
        expected: Vec<usize>,
        found: Vec<usize>,
    },
}

impl RegularityVerdict {
    pub fn is_regular(&self) -> bool {
        matches!(self, RegularityVerdict::Regular { .. })
    }
}

/// Recompute the growth vector at `sample_count` random pole-free points and
/// compare with the base point; a disagreement is returned with its witness.
pub fn check_regular(
    d: &DistributionSpec,
    sample_count: usize,
    seed: u64,
    max_steps: usize,
) -> Result<RegularityVerdict> {
    let expected = small_growth_vector(d, max_steps)?;
    let dim = d.chart().dim();
    let mut sampler = Sampler::new(seed, "check_regular");
    let mut done = 0;
    let mut tries = 0;
    let max_tries = 100 * sample_count.max(1);
    while done < sample_count {
        if tries >= max_tries {
            return Err(Error::TooManyRetries(max_tries));
        }
        tries += 1;
        let p = sampler.point(dim);
        match growth_vector_at(d, &p, max_steps) {
            Ok(found) => {
                if found != expected {
                    return Ok(RegularityVerdict::RankJump {
                        witness: p,
                        expected,
                        found,
                    });
                }
                done += 1;
            }
            Err(Error::Pole(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(RegularityVerdict::Regular { samples: done })
}

/// Which quotient the Levi tensor is valued in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LeviCodomain {
    /// (∂D / D) at the base point.
    DerivedQuotient,
    /// (TM / D) at the base point.
    FullTangentQuotient,
}

/// The Levi form at the base point: brackets of frame fields reduced modulo
/// the distribution, expressed in an adapted quotient basis.
#[derive(Clone, Debug)]
pub struct LeviData {
    pub domain_dim: usize,
    pub codomain_dim: usize,
    /// form[i][j] = class of [X_i, X_j](base), as quotient coordinates.
    pub form: Vec<Vec<Vec<Scalar>>>,
    /// Rows: representatives of the quotient basis in ambient coordinates.
    pub quotient_basis: Vec<Vec<Scalar>>,
}

impl LeviData {
    pub fn is_zero(&self) -> bool {
        self.form
            .iter()
            .flatten()
            .all(|v| v.iter().all(Scalar::is_zero))
    }
}

/// Compute the Levi tensor of `d` at its base point.
pub fn levi_tensor(d: &DistributionSpec, codomain: LeviCodomain) -> Result<LeviData> {
    let base = d.chart().base_point();
    let dim = d.chart().dim();
    let k = d.rank();
    let frame_values: Vec<Vec<Scalar>> = d
        .frame()
        .iter()
        .map(|f| f.eval(base))
        .collect::<Result<_>>()?;

    // Adapted quotient basis: flag level values beyond D, then coordinate
    // directions if the full tangent quotient is requested.
    let mut spanning = frame_values.clone();
    let mut quotient_basis: Vec<Vec<Scalar>> = Vec::new();
    let flag = derived_flag(d, DEFAULT_MAX_STEPS)?;
    let top = match codomain {
        LeviCodomain::DerivedQuotient => 1.min(flag.depth()),
        LeviCodomain::FullTangentQuotient => flag.depth(),
    };
    for level in 1..=top {
        for f in flag.adapted_new(level) {
            let v = f.eval(base)?;
            spanning.push(v.clone());
            quotient_basis.push(v);
        }
    }
    if codomain == LeviCodomain::FullTangentQuotient {
        for i in 0..dim {
            if spanning.len() == dim {
                break;
            }
            let mut e = vec![Scalar::zero(); dim];
            e[i] = Scalar::one();
            let r = rank_of_rows(&spanning);
            spanning.push(e.clone());
            if rank_of_rows(&spanning) > r {
                quotient_basis.push(e);
            } else {
                spanning.pop();
            }
        }
    }
    let q = quotient_basis.len();

    // Express each bracket value in [frame | quotient] coordinates; the
    // quotient block is the Levi value.
    let mut basis_rows = frame_values;
    basis_rows.extend(quotient_basis.iter().cloned());
    let solver = ExactMatrix::from_rows(basis_rows).transpose();

    let zero = vec![Scalar::zero(); q];
    let mut form = vec![vec![zero; k]; k];
    for i in 0..k {
        for j in i + 1..k {
            let b = d.frame()[i].lie_bracket(&d.frame()[j])?;
            let v = b.eval(base)?;
            let coords = solver.solve(&v).ok_or(Error::NotRegular)?;
            let class: Vec<Scalar> = coords[k..k + q].to_vec();
            form[j][i] = class.iter().map(|s| -s).collect();
            form[i][j] = class;
        }
    }
    Ok(LeviData {
        domain_dim: k,
        codomain_dim: q,
        form,
        quotient_basis,
    })
}

/// Exact null space of `alpha ∘ Levi` on D at the base point, for a covector
/// `alpha` (ambient cotangent coordinates) annihilating D there.
pub struct LeviNullSpace {
    pub frame_coords: Vec<Vec<Scalar>>,
    pub ambient: Vec<Vec<Scalar>>,
}

pub fn levi_null_space(d: &DistributionSpec, alpha: &[Scalar]) -> Result<LeviNullSpace> {
    let base = d.chart().base_point();
    if alpha.len() != d.chart().dim() {
        return Err(Error::Dimension {
            expected: d.chart().dim(),
            got: alpha.len(),
        });
    }
    if alpha.iter().all(Scalar::is_zero) {
        return Err(Error::NotAnnihilating);
    }
    let values: Vec<Vec<Scalar>> = d
        .frame()
        .iter()
        .map(|f| f.eval(base))
        .collect::<Result<_>>()?;
    for v in &values {
        if !dot(v, alpha).is_zero() {
            return Err(Error::NotAnnihilating);
        }
    }
    let k = d.rank();
    let mut m = ExactMatrix::zeros(k, k);
    for i in 0..k {
        for j in i + 1..k {
            let b = d.frame()[i].lie_bracket(&d.frame()[j])?;
            let pair = dot(&b.eval(base)?, alpha);
            m.set(i, j, pair.clone());
            m.set(j, i, -pair);
        }
    }
    let (_, kernel) = m.rank_kernel();
    let ambient = kernel
        .iter()
        .map(|c| {
            let mut v = vec![Scalar::zero(); d.chart().dim()];
            for (ci, row) in c.iter().zip(&values) {
                for (t, r) in v.iter_mut().zip(row) {
                    *t += &(ci * r);
                }
            }
            normalize_rational_vector(v)
        })
        .collect();
    Ok(LeviNullSpace {
        frame_coords: kernel,
        ambient,
    })
}

fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter()
        .zip(b)
        .fold(Scalar::zero(), |acc, (x, y)| acc + (x * y))
}

/// Symbol algebra at the base point: the graded algebra on the flag quotients
/// with brackets of adapted representatives reduced modulo lower levels.
pub fn symbol_algebra(d: &DistributionSpec, max_steps: usize) -> Result<GradedNilpotentLieAlgebra> {
    let flag = derived_flag(d, max_steps)?;
    if !flag.stabilized {
        return Err(Error::NotStabilized(max_steps));
    }
    let frames: Vec<Vec<VectorField>> = (0..=flag.depth())
        .map(|l| flag.adapted_new(l).to_vec())
        .collect();
    symbol_algebra_with_frames(d, &frames)
}

/// Symbol algebra computed from caller-supplied adapted representatives, one
/// list of fields per flag level. The supplied values must realize the flag
/// filtration at the base point exactly.
pub fn symbol_algebra_with_frames(
    d: &DistributionSpec,
    frames: &[Vec<VectorField>],
) -> Result<GradedNilpotentLieAlgebra> {
    let base = d.chart().base_point();
    let flag = derived_flag(d, DEFAULT_MAX_STEPS)?;
    if !flag.stabilized {
        return Err(Error::NotStabilized(DEFAULT_MAX_STEPS));
    }
    if frames.len() != flag.depth() + 1 {
        return Err(Error::Dimension {
            expected: flag.depth() + 1,
            got: frames.len(),
        });
    }
    // Validate adaptedness: cumulative values must span exactly each level.
    let mut values: Vec<Vec<Scalar>> = Vec::new();
    let mut degrees: Vec<usize> = Vec::new();
    let mut graded_dims = Vec::new();
    for (level, fs) in frames.iter().enumerate() {
        let expected_new = flag.ranks[level] - if level == 0 { 0 } else { flag.ranks[level - 1] };
        if fs.len() != expected_new {
            return Err(Error::Dimension {
                expected: expected_new,
                got: fs.len(),
            });
        }
        for f in fs {
            values.push(f.eval(base)?);
            degrees.push(level);
        }
        if rank_of_rows(&values) != flag.ranks[level] {
            return Err(Error::Invalid(format!(
                "supplied frames are not adapted to the flag at level {level}"
            )));
        }
        let level_values: Vec<Vec<Scalar>> = flag
            .adapted_frame(level)
            .iter()
            .map(|f| f.eval(base))
            .collect::<Result<_>>()?;
        if !span_eq(&values, &level_values) {
            return Err(Error::Invalid(format!(
                "supplied frames span a different level-{level} subspace"
            )));
        }
        graded_dims.push(fs.len());
    }

    let n = values.len();
    let solver = ExactMatrix::from_rows(values.clone()).transpose();
    let all_fields: Vec<&VectorField> = frames.iter().flatten().collect();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let b = all_fields[i].lie_bracket(all_fields[j])?;
            let v = b.eval(base)?;
            let coords = solver.solve(&v).ok_or(Error::NotRegular)?;
            let target = degrees[i] + degrees[j] + 1;
            let mut graded = vec![Scalar::zero(); n];
            for (k, c) in coords.into_iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if degrees[k] > target {
                    // Bracket escaped the filtration: not a regular point.
                    return Err(Error::NotRegular);
                }
                if degrees[k] == target {
                    graded[k] = c;
                }
            }
            pairs.push(((i, j), graded));
        }
    }
    GradedNilpotentLieAlgebra::new(graded_dims, pairs).map_err(|e| {
        Error::AlgebraCheck(format!("symbol bracket is not a graded Lie algebra here: {e}"))
    })
}

/// Cauchy characteristic: the null distribution of the Levi tensor (full
/// tangent quotient), returned as rational-function combinations of the
/// frame so the span tracks the null spaces over the whole chart.
pub struct CauchyCharacteristic {
    pub rank: usize,
    pub frame: Vec<VectorField>,
    /// Exact Frobenius closure: brackets of the frame lie in its span as an
    /// identity of rational functions.
    pub frobenius_integrable: bool,
}

pub fn cauchy_characteristic(
    d: &DistributionSpec,
    sample_count: usize,
    seed: u64,
) -> Result<CauchyCharacteristic> {
    let chart = d.chart();
    let vars = chart.coords().clone();
    let dim = chart.dim();
    let k = d.rank();

    // Quotient modulo D over the function field: complement directions are
    // chosen at the base point and reused across the chart.
    let base_values: Vec<Vec<Scalar>> = d
        .frame()
        .iter()
        .map(|f| f.eval(chart.base_point()))
        .collect::<Result<_>>()?;
    let mut complement: Vec<usize> = Vec::new();
    {
        let mut spanning = base_values.clone();
        for i in 0..dim {
            if spanning.len() == dim {
                break;
            }
            let mut e = vec![Scalar::zero(); dim];
            e[i] = Scalar::one();
            let r = rank_of_rows(&spanning);
            spanning.push(e.clone());
            if rank_of_rows(&spanning) > r {
                complement.push(i);
            } else {
                spanning.pop();
            }
        }
    }
    let q = complement.len();
    if q == 0 {
        // D is the whole tangent space: the quotient is trivial, so the null
        // space is everything and Frobenius closure is automatic.
        return Ok(CauchyCharacteristic {
            rank: k,
            frame: d.frame().to_vec(),
            frobenius_integrable: true,
        });
    }

    // Levi classes over the function field, per frame pair.
    let frame_matrix: Vec<Vec<RatFn>> = d.frame().iter().map(|f| f.coeffs().to_vec()).collect();
    let mut columns: Vec<Vec<RatFn>> = frame_matrix;
    for &c in &complement {
        let mut e: Vec<RatFn> = (0..dim).map(|_| RatFn::zero(vars.clone())).collect();
        e[c] = RatFn::one(vars.clone());
        columns.push(e);
    }
    let zero_class = vec![RatFn::zero(vars.clone()); q];
    let mut classes: Vec<Vec<Vec<RatFn>>> = vec![vec![zero_class; k]; k];
    for i in 0..k {
        for j in i + 1..k {
            let b = d.frame()[i].lie_bracket(&d.frame()[j])?;
            let class = ratfn_quotient_class(&columns, b.coeffs(), k, &vars)?;
            classes[j][i] = class.iter().map(RatFn::neg).collect();
            classes[i][j] = class;
        }
    }

    // Null condition: for v = sum c_i X_i, require sum_i c_i class(i, j) = 0
    // for every j and quotient direction.
    let mut rows: Vec<Vec<RatFn>> = Vec::new();
    for j in 0..k {
        for t in 0..q {
            rows.push((0..k).map(|i| classes[i][j][t].clone()).collect());
        }
    }
    let kernel = ratfn_kernel(&rows, &vars);
    let frame: Vec<VectorField> = kernel
        .iter()
        .map(|coeffs| {
            let mut acc = VectorField::zero(chart.clone());
            for (c, f) in coeffs.iter().zip(d.frame()) {
                acc = acc.add(&f.scale_fn(&RatFn::from_poly(c.clone()))?)?;
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    let rank = frame.len();

    // Pointwise null-space dimensions must match the generic rank at the base
    // point and at samples, else the null spaces jump.
    let check_point = |point: &[Scalar]| -> Result<Option<usize>> {
        let mut m = ExactMatrix::zeros(k * q, k);
        for j in 0..k {
            for t in 0..q {
                for i in 0..k {
                    match classes[i][j][t].eval(point) {
                        Ok(v) => m.set(j * q + t, i, v),
                        Err(Error::Pole(_)) => return Ok(None),
                        Err(e) => return Err(e),
                    }
                }
            }
        }
        let (r, _) = m.rank_kernel();
        Ok(Some(k - r))
    };
    match check_point(chart.base_point())? {
        Some(nd) if nd == rank => {}
        Some(nd) => {
            return Err(Error::RankJump {
                witness: format_point(chart.base_point()),
                detail: format!(
                    "null space dim {nd} at base vs generic {rank}; not a distribution here"
                ),
            })
        }
        None => return Err(Error::Pole(format_point(chart.base_point()))),
    }
    let mut sampler = Sampler::new(seed, "cauchy_characteristic");
    let mut done = 0;
    let mut tries = 0;
    while done < sample_count && tries < 100 * sample_count.max(1) {
        tries += 1;
        let p = sampler.point(dim);
        match check_point(&p)? {
            Some(nd) if nd == rank => done += 1,
            Some(nd) => {
                return Err(Error::RankJump {
                    witness: format_point(&p),
                    detail: format!("null space dim {nd} vs generic {rank}; not a distribution here"),
                })
            }
            None => continue,
        }
    }

    // Exact Frobenius closure over the function field.
    let mut frobenius = true;
    if rank > 1 {
        let ch_rows: Vec<Vec<RatFn>> = frame.iter().map(|f| f.coeffs().to_vec()).collect();
        let base_rank = ratfn_rank(&ch_rows, &vars);
        'outer: for a in 0..rank {
            for b in a + 1..rank {
                let br = frame[a].lie_bracket(&frame[b])?;
                let mut stacked = ch_rows.clone();
                stacked.push(br.coeffs().to_vec());
                if ratfn_rank(&stacked, &vars) != base_rank {
                    frobenius = false;
                    break 'outer;
                }
            }
        }
    }

    Ok(CauchyCharacteristic {
        rank,
        frame,
        frobenius_integrable: frobenius,
    })
}

/// Class of a vector modulo the span of the first `k` generators, in the
/// complement coordinates; all entries are rational functions.
fn ratfn_quotient_class(
    columns: &[Vec<RatFn>],
    vector: &[RatFn],
    k: usize,
    vars: &crate::poly::Vars,
) -> Result<Vec<RatFn>> {
    // Solve columns^T x = vector via the kernel of [columns^T | -vector].
    let dim = vector.len();
    let n = columns.len();
    let mut rows: Vec<Vec<RatFn>> = Vec::with_capacity(dim);
    for r in 0..dim {
        let mut row: Vec<RatFn> = Vec::with_capacity(n + 1);
        for col in columns {
            row.push(col[r].clone());
        }
        row.push(vector[r].neg());
        rows.push(row);
    }
    let kernel = ratfn_kernel(&rows, vars);
    for kv in &kernel {
        if !kv[n].is_zero() {
            let last = RatFn::from_poly(kv[n].clone());
            let mut class = Vec::with_capacity(n - k);
            for item in kv.iter().take(n).skip(k) {
                class.push(RatFn::from_poly(item.clone()).div(&last)?);
            }
            return Ok(class);
        }
    }
    Err(Error::NotRegular)
}

fn format_point(p: &[Scalar]) -> String {
    p.iter()
        .map(Scalar::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

/// Exact equality of Cauchy characteristic and distribution at the base
/// point (integrable distributions satisfy Ch(D) = D).
pub fn cauchy_equals_distribution(ch: &CauchyCharacteristic, d: &DistributionSpec) -> Result<bool> {
    if ch.rank != d.rank() {
        return Ok(false);
    }
    let base = d.chart().base_point();
    let a: Vec<Vec<Scalar>> = ch.frame.iter().map(|f| f.eval(base)).collect::<Result<_>>()?;
    let b: Vec<Vec<Scalar>> = d.frame().iter().map(|f| f.eval(base)).collect::<Result<_>>()?;
    Ok(span_eq(&a, &b))
}

/// Intersection dimension of two subspaces given by ambient spanning rows.
pub fn subspace_intersection_dim(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> usize {
    intersection_dim(a, b)
}

/// Parse the distribution text format:
///
/// ```text
/// chart x1 x2 x3
/// base 0 0 0
/// field X1 = 1 * d/dx1
/// field X2 = 1 * d/dx2 + x1 * d/dx3
/// ```
///
/// `#` starts a comment. Field names are accepted but not retained; the
/// canonical serializer always writes X1..Xk.
pub fn parse_distribution_text(src: &str) -> Result<DistributionSpec> {
    let mut coords: Option<crate::poly::Vars> = None;
    let mut base: Option<Vec<Scalar>> = None;
    let mut fields: Vec<(usize, String)> = Vec::new();
    for (ln, raw) in src.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("chart ") {
            coords = Some(
                rest.split_whitespace()
                    .map(str::to_string)
                    .collect::<Vec<_>>()
                    .into(),
            );
        } else if let Some(rest) = line.strip_prefix("base ") {
            base = Some(
                rest.split_whitespace()
                    .map(Scalar::parse)
                    .collect::<Result<_>>()
                    .map_err(|e| Error::parse(ln + 1, 1, e.to_string()))?,
            );
        } else if let Some(rest) = line.strip_prefix("field ") {
            let Some((_, rhs)) = rest.split_once('=') else {
                return Err(Error::parse(ln + 1, 1, "expected `field <name> = <expr>`"));
            };
            fields.push((ln + 1, rhs.trim().to_string()));
        } else {
            return Err(Error::parse(ln + 1, 1, format!("unknown directive `{line}`")));
        }
    }
    let coords = coords.ok_or_else(|| Error::parse(1, 1, "missing `chart` line"))?;
    let base = base.ok_or_else(|| Error::parse(1, 1, "missing `base` line"))?;
    let chart = Chart::new("main", coords, base)?;
    if fields.is_empty() {
        return Err(Error::parse(1, 1, "no `field` lines"));
    }
    let frame = fields
        .into_iter()
        .map(|(ln, rhs)| VectorField::parse(chart.clone(), &rhs, ln))
        .collect::<Result<Vec<_>>>()?;
    DistributionSpec::new(chart, frame)
}

/// Canonical text serialization of a distribution (fields named X1..Xk).
pub fn distribution_to_text(d: &DistributionSpec) -> String {
    let chart = d.chart();
    let mut out = format!("chart {}\n", chart.coords().join(" "));
    let base: Vec<String> = chart.base_point().iter().map(Scalar::to_string).collect();
    out.push_str(&format!("base {}\n", base.join(" ")));
    for (i, f) in d.frame().iter().enumerate() {
        out.push_str(&format!("field X{} = {}\n", i + 1, f));
    }
    out
}
