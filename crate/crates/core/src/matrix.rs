//! Exact linear algebra: fraction-free (Bareiss) elimination for ranks and
//! kernels over the rationals, and the same machinery over polynomial
//! entries for function-field solves.

use crate::poly::{Poly, Vars};
use crate::ratfn::RatFn;
use crate::scalar::Scalar;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        ExactMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut t = ExactMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for j in 0..self.cols {
                    acc += &(self.get(i, j) * &v[j]);
                }
                acc
            })
            .collect()
    }

    /// Clear denominators row by row, producing integer entries.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let mut lcm = BigInt::one();
                for j in 0..self.cols {
                    lcm = lcm.lcm(self.get(i, j).denom());
                }
                (0..self.cols)
                    .map(|j| {
                        let s = self.get(i, j);
                        s.numer() * (&lcm / s.denom())
                    })
                    .collect()
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.rank_kernel().0
    }

    /// Exact rank and a basis of the right kernel.
    ///
    /// Fraction-free elimination on the denominator-cleared matrix, then
    /// rational back-substitution per free column. Kernel vectors are
    /// normalized to coprime integers with positive first nonzero entry.
    pub fn rank_kernel(&self) -> (usize, Vec<Vec<Scalar>>) {
        let mut m = self.integer_rows();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..cols {
            if r >= rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            for i in r + 1..rows {
                for j in c + 1..cols {
                    let t = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                    let (q, rem) = t.div_rem(&prev);
                    debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                    m[i][j] = q;
                }
                m[i][c] = BigInt::zero();
            }
            prev = m[r][c].clone();
            pivots.push((r, c));
            r += 1;
        }
        let rank = pivots.len();
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let free_cols: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
        let mut kernel = Vec::with_capacity(free_cols.len());
        for &f in &free_cols {
            let mut x = vec![Scalar::zero(); cols];
            x[f] = Scalar::one();
            for &(pr, pc) in pivots.iter().rev() {
                let mut acc = Scalar::zero();
                for j in pc + 1..cols {
                    if m[pr][j].is_zero() || x[j].is_zero() {
                        continue;
                    }
                    acc += &(Scalar::from_big(m[pr][j].clone(), BigInt::one()).unwrap() * &x[j]);
                }
                let piv = Scalar::from_big(m[pr][pc].clone(), BigInt::one()).unwrap();
                x[pc] = -(acc / piv);
            }
            kernel.push(normalize_rational_vector(x));
        }
        (rank, kernel)
    }

    /// Particular solution of `self * x = rhs`, or `None` if inconsistent.
    pub fn solve(&self, rhs: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(rhs.len(), self.rows);
        // Rational Gauss-Jordan on the augmented matrix; sizes here are small.
        let cols = self.cols;
        let mut aug: Vec<Vec<Scalar>> = (0..self.rows)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.push(rhs[i].clone());
                row
            })
            .collect();
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r >= aug.len() {
                break;
            }
            let Some(p) = (r..aug.len()).find(|&i| !aug[i][c].is_zero()) else {
                continue;
            };
            aug.swap(r, p);
            let inv = aug[r][c].recip().expect("pivot nonzero");
            for j in c..=cols {
                aug[r][j] = &aug[r][j] * &inv;
            }
            for i in 0..aug.len() {
                if i != r && !aug[i][c].is_zero() {
                    let f = aug[i][c].clone();
                    for j in c..=cols {
                        let t = &aug[r][j] * &f;
                        aug[i][j] = &aug[i][j] - &t;
                    }
                }
            }
            pivots.push((r, c));
            r += 1;
        }
        // Inconsistent if a zero row has nonzero rhs.
        for row in aug.iter().skip(r) {
            if !row[cols].is_zero() {
                return None;
            }
        }
        let mut x = vec![Scalar::zero(); cols];
        for &(pr, pc) in &pivots {
            x[pc] = aug[pr][cols].clone();
        }
        Some(x)
    }
}

/// Scale to coprime integer entries with positive first nonzero entry.
pub fn normalize_rational_vector(v: Vec<Scalar>) -> Vec<Scalar> {
    let mut lcm = BigInt::one();
    for s in &v {
        lcm = lcm.lcm(s.denom());
    }
    let mut ints: Vec<BigInt> = v.iter().map(|s| s.numer() * (&lcm / s.denom())).collect();
    let mut g = BigInt::zero();
    for n in &ints {
        g = g.gcd(n);
    }
    if g.is_zero() {
        return v;
    }
    if let Some(first) = ints.iter().find(|n| !n.is_zero()) {
        if first.is_negative() {
            g = -g;
        }
    }
    for n in ints.iter_mut() {
        *n = &*n / &g;
    }
    ints.into_iter()
        .map(|n| Scalar::from_big(n, BigInt::one()).unwrap())
        .collect()
}

pub fn rank_of_rows(rows: &[Vec<Scalar>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    ExactMatrix::from_rows(rows.to_vec()).rank()
}

/// Does `v` lie in the row span?
pub fn span_contains(rows: &[Vec<Scalar>], v: &[Scalar]) -> bool {
    let base = rank_of_rows(rows);
    let mut all = rows.to_vec();
    all.push(v.to_vec());
    rank_of_rows(&all) == base
}

/// Exact subspace equality of two row spans.
pub fn span_eq(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> bool {
    let ra = rank_of_rows(a);
    let rb = rank_of_rows(b);
    if ra != rb {
        return false;
    }
    let mut all = a.to_vec();
    all.extend(b.iter().cloned());
    rank_of_rows(&all) == ra
}

/// Dimension of the intersection of two row spans.
pub fn intersection_dim(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> usize {
    let ra = rank_of_rows(a);
    let rb = rank_of_rows(b);
    let mut all = a.to_vec();
    all.extend(b.iter().cloned());
    ra + rb - rank_of_rows(&all)
}

// ---- elimination over polynomial entries (function-field linear algebra) ----

/// Fraction-free echelon form of a polynomial matrix. Returns the reduced
/// rows and the pivot (row, col) list. Division steps are exact by the
/// Sylvester determinant identity.
fn poly_echelon(mut m: Vec<Vec<Poly>>, vars: &Vars) -> (Vec<Vec<Poly>>, Vec<(usize, usize)>) {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut prev = Poly::one(vars.clone());
    let mut r = 0;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        // Prefer the lowest-degree nonzero pivot to limit fill-in growth.
        let cand = (r..rows)
            .filter(|&i| !m[i][c].is_zero())
            .min_by_key(|&i| (m[i][c].total_degree(), m[i][c].terms().count(), i));
        let Some(p) = cand else { continue };
        m.swap(r, p);
        for i in r + 1..rows {
            if m[i][c].is_zero() && m[i].iter().all(Poly::is_zero) {
                continue;
            }
            for j in c + 1..cols {
                let t = m[r][c]
                    .mul(&m[i][j])
                    .unwrap()
                    .sub(&m[i][c].mul(&m[r][j]).unwrap())
                    .unwrap();
                m[i][j] = t.div_exact(&prev).expect("fraction-free step divides");
            }
            m[i][c] = Poly::zero(vars.clone());
        }
        prev = m[r][c].clone();
        pivots.push((r, c));
        r += 1;
    }
    (m, pivots)
}

/// Rank of a matrix of rational functions over the function field.
pub fn ratfn_rank(rows: &[Vec<RatFn>], vars: &Vars) -> usize {
    let cleared = clear_denominators(rows, vars);
    poly_echelon(cleared, vars).1.len()
}

fn clear_denominators(rows: &[Vec<RatFn>], vars: &Vars) -> Vec<Vec<Poly>> {
    rows.iter()
        .map(|row| {
            let mut lcm = Poly::one(vars.clone());
            for e in row {
                lcm = lcm.lcm(e.denominator());
            }
            row.iter()
                .map(|e| {
                    let co = lcm.div_exact(e.denominator()).expect("lcm divides");
                    e.numerator().mul(&co).unwrap()
                })
                .collect()
        })
        .collect()
}

/// Fraction-free Gauss-Jordan elimination: the pivot update runs over every
/// other row, so after the last step all pivot entries equal the final pivot
/// and kernel vectors read off without any division.
fn poly_jordan(mut m: Vec<Vec<Poly>>, vars: &Vars) -> (Vec<Vec<Poly>>, Vec<(usize, usize)>) {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut prev = Poly::one(vars.clone());
    let mut r = 0;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        let cand = (r..rows)
            .filter(|&i| !m[i][c].is_zero())
            .min_by_key(|&i| (m[i][c].total_degree(), m[i][c].terms().count(), i));
        let Some(p) = cand else { continue };
        m.swap(r, p);
        for i in 0..rows {
            if i == r {
                continue;
            }
            for j in 0..cols {
                if j == c {
                    continue;
                }
                let t = m[r][c]
                    .mul(&m[i][j])
                    .unwrap()
                    .sub(&m[i][c].mul(&m[r][j]).unwrap())
                    .unwrap();
                m[i][j] = t.div_exact(&prev).expect("fraction-free step divides");
            }
            m[i][c] = Poly::zero(vars.clone());
        }
        prev = m[r][c].clone();
        pivots.push((r, c));
        r += 1;
    }
    (m, pivots)
}

/// Basis of the right kernel of a rational-function matrix, returned as
/// polynomial vectors (denominator-cleared, content-normalized, positive
/// leading coefficient in the first nonzero entry).
///
/// The computation stays inside the polynomial ring: fraction-free Jordan
/// elimination followed by the division-free kernel read-off.
pub fn ratfn_kernel(rows: &[Vec<RatFn>], vars: &Vars) -> Vec<Vec<Poly>> {
    let cleared = clear_denominators(rows, vars);
    let cols = cleared.first().map_or(0, Vec::len);
    let (m, pivots) = poly_jordan(cleared, vars);
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let free_cols: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    let last_pivot = pivots
        .last()
        .map(|&(r, c)| m[r][c].clone())
        .unwrap_or_else(|| Poly::one(vars.clone()));
    let mut kernel = Vec::with_capacity(free_cols.len());
    for &f in &free_cols {
        let mut x: Vec<Poly> = (0..cols).map(|_| Poly::zero(vars.clone())).collect();
        x[f] = last_pivot.clone();
        for &(pr, pc) in &pivots {
            x[pc] = m[pr][f].neg();
        }
        kernel.push(normalize_poly_vector(x, vars));
    }
    kernel
}

fn normalize_poly_vector(mut polys: Vec<Poly>, vars: &Vars) -> Vec<Poly> {
    // Full gcd normalization is only attempted on small vectors; the cheap
    // rational-content pass always runs. Larger vectors keep a common
    // polynomial factor, which is harmless for spanning purposes.
    let total_terms: usize = polys.iter().map(|p| p.terms().count()).sum();
    if total_terms > 0 && total_terms <= 500 {
        let mut g = Poly::zero(vars.clone());
        for p in &polys {
            g = g.gcd(p);
            if g.is_constant() && !g.is_zero() {
                break;
            }
        }
        if !g.is_zero() && !g.is_constant() {
            for p in polys.iter_mut() {
                *p = p.div_exact(&g).expect("common factor divides");
            }
        }
    }
    let mut content = Scalar::zero();
    for p in &polys {
        if p.is_zero() {
            continue;
        }
        let c = p.content().abs();
        content = if content.is_zero() {
            c
        } else {
            gcd_rational(&content, &c)
        };
    }
    if !content.is_zero() && !content.is_one() {
        let inv = content.recip().unwrap();
        for p in polys.iter_mut() {
            *p = p.scale(&inv);
        }
    }
    if let Some(first) = polys.iter().find(|p| !p.is_zero()) {
        if first.content().is_negative() {
            for p in polys.iter_mut() {
                *p = p.neg();
            }
        }
    }
    polys
}

fn gcd_rational(a: &Scalar, b: &Scalar) -> Scalar {
    let num = a.numer().gcd(b.numer());
    let den = a.denom().lcm(b.denom());
    Scalar::from_big(num, den).unwrap()
}
