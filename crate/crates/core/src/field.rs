//! Vector fields with rational-function coefficients and their Lie brackets.

use crate::chart::Chart;
use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::parse::parse_field_expr;
use crate::ratfn::RatFn;
use crate::scalar::Scalar;
use std::fmt;
use std::sync::Arc;

/// Degree past which bracket results trigger a runaway-input warning.
pub const DEGREE_CAP: u32 = 12;

/// A derivation `sum_i c_i d/dx_i` on a chart.
#[derive(Clone, PartialEq, Eq)]
pub struct VectorField {
    chart: Arc<Chart>,
    coeffs: Vec<RatFn>,
}

impl VectorField {
    pub fn new(chart: Arc<Chart>, coeffs: Vec<RatFn>) -> Result<VectorField> {
        if coeffs.len() != chart.dim() {
            return Err(Error::Dimension {
                expected: chart.dim(),
                got: coeffs.len(),
            });
        }
        Ok(VectorField { chart, coeffs })
    }

    pub fn zero(chart: Arc<Chart>) -> VectorField {
        let coeffs = (0..chart.dim())
            .map(|_| RatFn::zero(chart.coords().clone()))
            .collect();
        VectorField { chart, coeffs }
    }

    /// The coordinate field `d/dx_i`.
    pub fn coordinate(chart: Arc<Chart>, index: usize) -> VectorField {
        let mut f = VectorField::zero(chart);
        f.coeffs[index] = RatFn::one(f.chart.coords().clone());
        f
    }

    pub fn parse(chart: Arc<Chart>, src: &str, line: usize) -> Result<VectorField> {
        let coeffs = parse_field_expr(src, chart.coords(), line)?;
        VectorField::new(chart, coeffs)
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn coeffs(&self) -> &[RatFn] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(RatFn::is_zero)
    }

    fn check_chart(&self, other: &VectorField) -> Result<()> {
        if self.chart.compatible(&other.chart) {
            Ok(())
        } else {
            Err(Error::ChartMismatch(
                self.chart.name.clone(),
                other.chart.name.clone(),
            ))
        }
    }

    pub fn add(&self, other: &VectorField) -> Result<VectorField> {
        self.check_chart(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        Ok(VectorField {
            chart: self.chart.clone(),
            coeffs,
        })
    }

    pub fn sub(&self, other: &VectorField) -> Result<VectorField> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> VectorField {
        VectorField {
            chart: self.chart.clone(),
            coeffs: self.coeffs.iter().map(RatFn::neg).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> VectorField {
        VectorField {
            chart: self.chart.clone(),
            coeffs: self.coeffs.iter().map(|r| r.scale(c)).collect(),
        }
    }

    /// Multiply by a function (module structure over the ring of functions).
    pub fn scale_fn(&self, f: &RatFn) -> Result<VectorField> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|r| r.mul(f))
            .collect::<Result<_>>()?;
        Ok(VectorField {
            chart: self.chart.clone(),
            coeffs,
        })
    }

    /// Apply the derivation to a function: `X(f) = sum_i c_i df/dx_i`.
    pub fn apply(&self, f: &RatFn) -> Result<RatFn> {
        let mut acc = RatFn::zero(self.chart.coords().clone());
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&c.mul(&f.derivative_index(i))?)?;
        }
        Ok(acc)
    }

    /// Lie bracket `[X, Y]_i = X(Y_i) - Y(X_i)`, exact.
    pub fn lie_bracket(&self, other: &VectorField) -> Result<VectorField> {
        self.check_chart(other)?;
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for i in 0..self.coeffs.len() {
            coeffs.push(self.apply(&other.coeffs[i])?.sub(&other.apply(&self.coeffs[i])?)?);
        }
        let out = VectorField {
            chart: self.chart.clone(),
            coeffs,
        };
        if let Some(d) = out.coeffs.iter().map(RatFn::max_degree).max() {
            if d > DEGREE_CAP {
                eprintln!(
                    "warning: bracket on chart `{}` reached degree {d} (cap {DEGREE_CAP}); inputs may be runaway",
                    out.chart.name
                );
            }
        }
        Ok(out)
    }

    /// Exact coefficient values at a point.
    pub fn eval(&self, point: &[Scalar]) -> Result<Vec<Scalar>> {
        self.coeffs.iter().map(|c| c.eval(point)).collect()
    }

    pub fn eval_at_base(&self) -> Result<Vec<Scalar>> {
        self.eval(self.chart.base_point())
    }

    /// Rebase the field onto the same chart at another point.
    pub fn on_chart(&self, chart: Arc<Chart>) -> Result<VectorField> {
        if !self.chart.compatible(&chart) {
            return Err(Error::ChartMismatch(
                self.chart.name.clone(),
                chart.name.clone(),
            ));
        }
        Ok(VectorField {
            chart,
            coeffs: self.coeffs.clone(),
        })
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            // multi-term polynomial coefficients need grouping to re-parse
            let multi = c.is_polynomial() && c.numerator().terms().count() > 1;
            if multi {
                parts.push(format!("({}) * d/d{}", c, self.chart.coords()[i]));
            } else {
                parts.push(format!("{} * d/d{}", c, self.chart.coords()[i]));
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Rows are the coefficient vectors of the frame at the point.
pub fn evaluate_frame(frame: &[VectorField], point: &[Scalar]) -> Result<ExactMatrix> {
    let rows = frame
        .iter()
        .map(|f| f.eval(point))
        .collect::<Result<Vec<_>>>()?;
    Ok(ExactMatrix::from_rows(rows))
}
