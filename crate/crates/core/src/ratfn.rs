//! Rational functions: quotients of sparse polynomials in canonical form.
//!
//! Canonical means the numerator/denominator gcd is a unit, the denominator
//! is primitive with positive leading coefficient, and the rational content
//! sits entirely in the numerator.

use crate::error::{Error, Result};
use crate::poly::{Poly, Vars};
use crate::scalar::Scalar;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    /// Build `num/den`, reducing to canonical form. Fails if `den` is the
    /// zero polynomial.
    pub fn new(num: Poly, den: Poly) -> Result<RatFn> {
        if den.is_zero() {
            return Err(Error::DivisionByZero("denominator polynomial"));
        }
        let mut r = RatFn { num, den };
        r.reduce();
        Ok(r)
    }

    pub fn from_poly(p: Poly) -> RatFn {
        let den = Poly::one(p.vars().clone());
        RatFn { num: p, den }
    }

    pub fn zero(vars: Vars) -> RatFn {
        RatFn::from_poly(Poly::zero(vars))
    }

    pub fn one(vars: Vars) -> RatFn {
        RatFn::from_poly(Poly::one(vars))
    }

    pub fn constant(vars: Vars, c: Scalar) -> RatFn {
        RatFn::from_poly(Poly::constant(vars, c))
    }

    pub fn var(vars: Vars, index: usize) -> RatFn {
        RatFn::from_poly(Poly::var(vars, index))
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn vars(&self) -> &Vars {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The polynomial content, if the denominator is trivial.
    pub fn as_poly(&self) -> Option<Poly> {
        if self.den.is_constant() {
            let c = self.den.constant_value();
            Some(self.num.scale(&c.recip().expect("nonzero denominator")))
        } else {
            None
        }
    }

    pub fn max_degree(&self) -> u32 {
        self.num.total_degree().max(self.den.total_degree())
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = Poly::one(self.num.vars().clone());
            return;
        }
        let g = self.num.gcd(&self.den);
        if !g.is_constant() {
            self.num = self.num.div_exact(&g).expect("gcd divides");
            self.den = self.den.div_exact(&g).expect("gcd divides");
        }
        // Push the denominator's content into the numerator and fix the sign.
        let c = self.den.content();
        self.den = self.den.scale(&c.recip().expect("nonzero"));
        self.num = self.num.scale(&c.recip().expect("nonzero"));
    }

    pub fn add(&self, other: &RatFn) -> Result<RatFn> {
        let num = self
            .num
            .mul(&other.den)?
            .add(&other.num.mul(&self.den)?)?;
        RatFn::new(num, self.den.mul(&other.den)?)
    }

    pub fn sub(&self, other: &RatFn) -> Result<RatFn> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatFn {
        RatFn {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RatFn) -> Result<RatFn> {
        RatFn::new(self.num.mul(&other.num)?, self.den.mul(&other.den)?)
    }

    pub fn div(&self, other: &RatFn) -> Result<RatFn> {
        if other.is_zero() {
            return Err(Error::DivisionByZero("rational function"));
        }
        RatFn::new(self.num.mul(&other.den)?, self.den.mul(&other.num)?)
    }

    pub fn scale(&self, c: &Scalar) -> RatFn {
        let mut r = RatFn {
            num: self.num.scale(c),
            den: self.den.clone(),
        };
        r.reduce();
        r
    }

    /// Partial derivative (quotient rule), canonical output.
    pub fn derivative(&self, var: &str) -> Result<RatFn> {
        let idx = self.num.var_index(var)?;
        Ok(self.derivative_index(idx))
    }

    pub fn derivative_index(&self, idx: usize) -> RatFn {
        let dn = self.num.derivative_index(idx);
        let dd = self.den.derivative_index(idx);
        if dd.is_zero() {
            return RatFn::new(dn, self.den.clone()).expect("nonzero denominator");
        }
        let num = dn
            .mul(&self.den)
            .and_then(|a| a.sub(&self.num.mul(&dd).expect("same ring")))
            .expect("same ring");
        let den = self.den.mul(&self.den).expect("same ring");
        RatFn::new(num, den).expect("nonzero denominator")
    }

    /// Re-express in a superset ring (see `Poly::rename_into`).
    pub fn rename_into(&self, target: &Vars) -> Result<RatFn> {
        RatFn::new(self.num.rename_into(target)?, self.den.rename_into(target)?)
    }

    /// Exact evaluation; pole error when the denominator vanishes at the
    /// point (callers re-sample).
    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            let coords: Vec<String> = point.iter().map(|s| s.to_string()).collect();
            return Err(Error::Pole(coords.join(", ")));
        }
        Ok(self.num.eval(point)? / d)
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.as_poly().expect("polynomial"))
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::vars;

    fn ring() -> Vars {
        vars(&["x", "y"])
    }

    #[test]
    fn eval_and_pole() {
        // x/y at (1,2) -> 1/2, pole at (1,0)
        let r = RatFn::new(Poly::var(ring(), 0), Poly::var(ring(), 1)).unwrap();
        assert_eq!(
            r.eval(&[Scalar::from_int(1), Scalar::from_int(2)]).unwrap(),
            Scalar::ratio(1, 2).unwrap()
        );
        assert!(matches!(
            r.eval(&[Scalar::from_int(1), Scalar::from_int(0)]),
            Err(Error::Pole(_))
        ));
    }

    #[test]
    fn canonical_reduction() {
        // (x^2 - y^2)/(x + y) reduces to x - y
        let x = Poly::var(ring(), 0);
        let y = Poly::var(ring(), 1);
        let r = RatFn::new(x.pow(2).sub(&y.pow(2)).unwrap(), x.add(&y).unwrap()).unwrap();
        assert!(r.is_polynomial());
        assert_eq!(r.as_poly().unwrap(), x.sub(&y).unwrap());
    }

    #[test]
    fn quotient_rule() {
        // d/dy (x/y) = -x/y^2
        let r = RatFn::new(Poly::var(ring(), 0), Poly::var(ring(), 1)).unwrap();
        let d = r.derivative("y").unwrap();
        let expected = RatFn::new(
            Poly::var(ring(), 0).neg(),
            Poly::var(ring(), 1).pow(2),
        )
        .unwrap();
        assert_eq!(d, expected);
    }

    #[test]
    fn denominator_sign_normalized() {
        // x/(-y) -> -x/y with positive-leading denominator
        let r = RatFn::new(Poly::var(ring(), 0), Poly::var(ring(), 1).neg()).unwrap();
        assert_eq!(r.to_string(), "(-x)/(y)");
    }
}
