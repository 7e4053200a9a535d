//! Sparse multivariate polynomials over exact rationals.
//!
//! Terms are kept in a map ordered by graded-lexicographic monomial order;
//! derived-flag brackets produce sparse low-degree polynomials, so a sparse
//! term map is the right shape. No zero coefficients are ever stored.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Shared, ordered list of variable names for a polynomial ring.
pub type Vars = Arc<[String]>;

pub fn vars(names: &[&str]) -> Vars {
    names.iter().map(|s| s.to_string()).collect::<Vec<_>>().into()
}

/// Exponent vector with graded-lexicographic ordering (total degree first,
/// then lexicographic on exponents).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise division; `None` when `other` does not divide `self`.
    fn div(&self, other: &Mono) -> Option<Mono> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(Mono(out))
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    vars: Vars,
    terms: BTreeMap<Mono, Scalar>,
}

impl Poly {
    pub fn zero(vars: Vars) -> Self {
        Poly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: Vars, c: Scalar) -> Self {
        let mut p = Poly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Mono(vec![0; p.vars.len()]), c);
        }
        p
    }

    pub fn one(vars: Vars) -> Self {
        Poly::constant(vars, Scalar::one())
    }

    /// The variable with the given index, as a polynomial.
    pub fn var(vars: Vars, index: usize) -> Self {
        assert!(index < vars.len());
        let mut exp = vec![0; vars.len()];
        exp[index] = 1;
        let mut p = Poly::zero(vars);
        p.terms.insert(Mono(exp), Scalar::one());
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().total_degree() == 0)
    }

    /// The constant term's value (zero if absent).
    pub fn constant_value(&self) -> Scalar {
        self.terms
            .get(&Mono(vec![0; self.vars.len()]))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().next_back().map_or(0, Mono::total_degree)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Scalar)> {
        self.terms.iter()
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Mono, &Scalar)> {
        self.terms.iter().next_back()
    }

    fn insert(&mut self, m: Mono, c: Scalar) {
        if !c.is_zero() {
            self.terms.insert(m, c);
        }
    }

    fn add_term(&mut self, m: Mono, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    fn check_vars(&self, other: &Poly) -> Result<()> {
        if self.vars == other.vars || *self.vars == *other.vars {
            Ok(())
        } else {
            Err(Error::VariableMismatch(
                self.vars.join(","),
                other.vars.join(","),
            ))
        }
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check_vars(other)?;
        let mut out = Poly::zero(self.vars.clone());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.vars.clone());
        }
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut out = Poly::one(self.vars.clone());
        for _ in 0..n {
            out = out.mul(self).expect("same ring");
        }
        out
    }

    /// Exact partial derivative with respect to a variable of this ring.
    pub fn derivative(&self, var: &str) -> Result<Poly> {
        let idx = self.var_index(var)?;
        Ok(self.derivative_index(idx))
    }

    pub fn derivative_index(&self, idx: usize) -> Poly {
        let mut out = Poly::zero(self.vars.clone());
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e == 0 {
                continue;
            }
            let mut exp = m.0.clone();
            exp[idx] = e - 1;
            out.insert(Mono(exp), c * &Scalar::from_int(e as i64));
        }
        out
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.vars.len() {
            return Err(Error::Dimension {
                expected: self.vars.len(),
                got: point.len(),
            });
        }
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t *= &point[i];
                }
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Exact division: returns `None` unless `self = q * d` exactly.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.vars.clone());
        let (dm, dc) = {
            let (m, c) = d.leading().unwrap();
            (m.clone(), c.clone())
        };
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.div(&dm)?;
            let qc = rc / &dc;
            let mut t = Poly::zero(self.vars.clone());
            t.insert(qm.clone(), qc.clone());
            quot.add_term(qm, &qc);
            rem = rem.sub(&t.mul(d).ok()?).ok()?;
        }
        Some(quot)
    }

    /// Rational content: the positive rational `c` such that `self / c` has
    /// coprime integer coefficients; sign chosen so the primitive part has a
    /// positive leading coefficient.
    pub fn content(&self) -> Scalar {
        if self.is_zero() {
            return Scalar::zero();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut content = Scalar::from_big(num_gcd, den_lcm).expect("nonzero lcm");
        if self.leading().unwrap().1.is_negative() {
            content = -content;
        }
        content
    }

    /// Primitive part: `self / content()`. Zero stays zero.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        self.scale(&c.recip().expect("nonzero content"))
    }

    /// Degree in one variable.
    pub fn degree_in(&self, idx: usize) -> u32 {
        self.terms.keys().map(|m| m.0[idx]).max().unwrap_or(0)
    }

    /// Collect as a univariate polynomial in variable `idx` with `Poly`
    /// coefficients (still over the full ring, exponent of `idx` zeroed).
    fn collect(&self, idx: usize) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[idx];
            let mut exp = m.0.clone();
            exp[idx] = 0;
            out.entry(e)
                .or_insert_with(|| Poly::zero(self.vars.clone()))
                .add_term(Mono(exp), c);
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    fn from_collected(vars: Vars, idx: usize, coeffs: &BTreeMap<u32, Poly>) -> Poly {
        let mut out = Poly::zero(vars.clone());
        for (e, p) in coeffs {
            for (m, c) in &p.terms {
                let mut exp = m.0.clone();
                exp[idx] += e;
                out.add_term(Mono(exp), c);
            }
        }
        out
    }

    /// First variable index that actually occurs, if any.
    fn main_var(&self) -> Option<usize> {
        (0..self.vars.len()).find(|&i| self.degree_in(i) > 0)
    }

    /// Multivariate gcd by the subresultant pseudo-remainder sequence,
    /// recursing on the coefficient ring only for contents. Result is
    /// primitive with positive leading coefficient; gcd of constants is 1.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.primitive();
        }
        if other.is_zero() {
            return self.primitive();
        }
        if self.is_constant() || other.is_constant() {
            return Poly::one(self.vars.clone());
        }
        // equal or divisible inputs are common in rational-function reduction
        if self == other || *self == other.neg() {
            return self.primitive();
        }
        if self.total_degree() >= other.total_degree() && self.div_exact(other).is_some() {
            return other.primitive();
        }
        if other.total_degree() >= self.total_degree() && other.div_exact(self).is_some() {
            return self.primitive();
        }
        let v = self
            .main_var()
            .into_iter()
            .chain(other.main_var())
            .min()
            .expect("nonconstant");
        if self.degree_in(v) == 0 || other.degree_in(v) == 0 {
            // One side is free of the chosen main variable: gcd divides its
            // coefficient content in that variable.
            let (free, bound) = if self.degree_in(v) == 0 {
                (self, other)
            } else {
                (other, self)
            };
            let mut acc = free.primitive();
            for coeff in bound.collect(v).values() {
                acc = acc.gcd(coeff);
                if acc.is_constant() {
                    return Poly::one(self.vars.clone());
                }
            }
            return acc;
        }

        let (cont_a, pp_a) = self.cont_pp(v);
        let (cont_b, pp_b) = other.cont_pp(v);
        let cont_gcd = cont_a.gcd(&cont_b);

        let mut a = pp_a;
        let mut b = pp_b;
        if a.degree_in(v) < b.degree_in(v) {
            std::mem::swap(&mut a, &mut b);
        }
        // Subresultant PRS: exact divisions by g * h^delta keep coefficient
        // growth polynomial without per-step content recursion.
        let mut g = Poly::one(self.vars.clone());
        let mut h = Poly::one(self.vars.clone());
        loop {
            let delta = a.degree_in(v) - b.degree_in(v);
            let r = a.pseudo_rem(&b, v);
            if r.is_zero() {
                break;
            }
            if r.degree_in(v) == 0 {
                // primitive parts are coprime in v
                return cont_gcd.primitive();
            }
            a = b;
            let denom = g.mul(&h.pow(delta)).expect("same ring");
            b = r.div_exact(&denom).expect("subresultant division is exact");
            g = a.collect(v).remove(&a.degree_in(v)).expect("leading coefficient");
            h = if delta == 0 {
                h
            } else {
                g.pow(delta)
                    .div_exact(&h.pow(delta - 1))
                    .expect("subresultant h-update is exact")
            };
        }
        cont_gcd.mul(&b.primitive_in(v)).expect("same ring").primitive()
    }

    /// Content and primitive part with respect to variable `v`: content is the
    /// recursive gcd of the `v`-coefficients.
    fn cont_pp(&self, v: usize) -> (Poly, Poly) {
        let coeffs = self.collect(v);
        let mut cont = Poly::zero(self.vars.clone());
        for p in coeffs.values() {
            cont = cont.gcd(p);
            if cont.is_constant() && !cont.is_zero() {
                cont = Poly::one(self.vars.clone());
                break;
            }
        }
        let pp = self.div_exact(&cont).expect("content divides");
        (cont, pp)
    }

    fn primitive_in(&self, v: usize) -> Poly {
        self.cont_pp(v).1
    }

    /// Pseudo-remainder of `self` by `d` in variable `v`:
    /// `lc(d)^(deg a - deg d + 1) * a  mod  d`.
    fn pseudo_rem(&self, d: &Poly, v: usize) -> Poly {
        let deg_d = d.degree_in(v);
        let d_coeffs = d.collect(v);
        let lc_d = d_coeffs.get(&deg_d).unwrap().clone();
        let mut r = self.clone();
        let mut steps = self.degree_in(v).saturating_sub(deg_d) + 1;
        while !r.is_zero() && r.degree_in(v) >= deg_d && steps > 0 {
            let deg_r = r.degree_in(v);
            let r_coeffs = r.collect(v);
            let lc_r = r_coeffs.get(&deg_r).unwrap().clone();
            // r := lc_d * r - lc_r * v^(deg_r - deg_d) * d
            let mut shift = BTreeMap::new();
            shift.insert(deg_r - deg_d, lc_r);
            let shifted = Poly::from_collected(self.vars.clone(), v, &shift)
                .mul(d)
                .expect("same ring");
            r = r.scale_poly(&lc_d).sub(&shifted).expect("same ring");
            steps -= 1;
        }
        if !r.is_zero() && r.degree_in(v) >= deg_d {
            // Remaining multiplier applications to keep the classical form.
            while steps > 0 {
                r = r.scale_poly(&lc_d);
                steps -= 1;
            }
        }
        r
    }

    fn scale_poly(&self, p: &Poly) -> Poly {
        self.mul(p).expect("same ring")
    }

    /// Re-express in a superset ring: every variable of `self` must occur in
    /// `target` (matched by name); new variables get exponent zero.
    pub fn rename_into(&self, target: &Vars) -> Result<Poly> {
        let mapping: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                target
                    .iter()
                    .position(|w| w == v)
                    .ok_or_else(|| Error::UnknownVariable(v.clone()))
            })
            .collect::<Result<_>>()?;
        let mut out = Poly::zero(target.clone());
        for (m, c) in &self.terms {
            let mut exp = vec![0u32; target.len()];
            for (old, &e) in m.0.iter().enumerate() {
                exp[mapping[old]] = e;
            }
            out.insert(Mono(exp), c.clone());
        }
        Ok(out)
    }

    /// Least common multiple via gcd; primitive normalization.
    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.vars.clone());
        }
        let g = self.gcd(other);
        self.div_exact(&g)
            .expect("gcd divides")
            .mul(other)
            .expect("same ring")
            .primitive()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars[i].clone()),
                    _ => factors.push(format!("{}^{}", self.vars[i], e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Vars {
        vars(&["x", "y"])
    }

    fn x() -> Poly {
        Poly::var(ring(), 0)
    }

    fn y() -> Poly {
        Poly::var(ring(), 1)
    }

    #[test]
    fn derivative_power_rule() {
        // d/dx (x^2 y) = 2xy
        let p = x().pow(2).mul(&y()).unwrap();
        let d = p.derivative("x").unwrap();
        let expected = x().mul(&y()).unwrap().scale(&Scalar::from_int(2));
        assert_eq!(d, expected);
    }

    #[test]
    fn derivative_constant_in_var() {
        // d/dx (y) = 0
        assert!(y().derivative("x").unwrap().is_zero());
    }

    #[test]
    fn derivative_cubic() {
        // d/dx (x^3 - 3x) = 3x^2 - 3
        let p = x().pow(3).sub(&x().scale(&Scalar::from_int(3))).unwrap();
        let d = p.derivative("x").unwrap();
        let expected = x()
            .pow(2)
            .scale(&Scalar::from_int(3))
            .sub(&Poly::constant(ring(), Scalar::from_int(3)))
            .unwrap();
        assert_eq!(d, expected);
    }

    #[test]
    fn derivative_unknown_variable() {
        assert_eq!(
            x().derivative("z"),
            Err(Error::UnknownVariable("z".into()))
        );
    }

    #[test]
    fn eval_exact() {
        let p = x().pow(2).add(&y()).unwrap();
        let v = p.eval(&[Scalar::from_int(2), Scalar::from_int(3)]).unwrap();
        assert_eq!(v, Scalar::from_int(7));
    }

    #[test]
    fn exact_division() {
        let p = x().pow(2).sub(&y().pow(2)).unwrap();
        let d = x().add(&y()).unwrap();
        let q = p.div_exact(&d).unwrap();
        assert_eq!(q, x().sub(&y()).unwrap());
        assert!(x().div_exact(&y()).is_none());
    }

    #[test]
    fn gcd_simple() {
        // gcd(x^2 - y^2, x^2 + 2xy + y^2) = x + y
        let a = x().pow(2).sub(&y().pow(2)).unwrap();
        let b = x().add(&y()).unwrap().pow(2);
        assert_eq!(a.gcd(&b), x().add(&y()).unwrap());
    }

    #[test]
    fn gcd_is_primitive() {
        // gcd is canonicalized to the primitive representative: rational
        // content is a unit over Q, so gcd(2x, 4xy) = x.
        let a = x().scale(&Scalar::from_int(2));
        let b = x().mul(&y()).unwrap().scale(&Scalar::from_int(4));
        assert_eq!(a.gcd(&b), x());
    }

    #[test]
    fn grlex_leading_term() {
        // x^2 beats xy? No: same degree, lex on exponents (2,0) > (1,1).
        let p = x().pow(2).add(&x().mul(&y()).unwrap()).unwrap();
        let (m, _) = p.leading().unwrap();
        assert_eq!(m.0, vec![2, 0]);
    }

    #[test]
    fn display_readable() {
        let p = x()
            .pow(2)
            .scale(&Scalar::from_int(3))
            .sub(&y().scale(&Scalar::ratio(1, 2).unwrap()))
            .unwrap()
            .add(&Poly::constant(ring(), Scalar::from_int(4)))
            .unwrap();
        assert_eq!(p.to_string(), "3*x^2 - 1/2*y + 4");
    }
}
