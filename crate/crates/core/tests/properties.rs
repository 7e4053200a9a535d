//! Algebraic laws checked on randomized inputs: ring axioms for the sparse
//! polynomials, rank/kernel bookkeeping for exact matrices, the Leibniz rule,
//! and the Lie-bracket identities for vector fields.

use proptest::prelude::*;
use sgv_core::chart::Chart;
use sgv_core::field::VectorField;
use sgv_core::matrix::ExactMatrix;
use sgv_core::poly::{vars, Poly, Vars};
use sgv_core::ratfn::RatFn;
use sgv_core::sample::Sampler;
use sgv_core::scalar::Scalar;
use std::sync::Arc;

fn ring() -> Vars {
    vars(&["x", "y", "z"])
}

fn arb_poly() -> impl Strategy<Value = Poly> {
    proptest::collection::vec(
        (
            proptest::collection::vec(0u32..3, 3),
            -9i64..=9,
        ),
        0..5,
    )
    .prop_map(|terms| {
        let vs = ring();
        let mut p = Poly::zero(vs.clone());
        for (exp, c) in terms {
            let mut t = Poly::constant(vs.clone(), Scalar::from_int(c));
            for (i, &e) in exp.iter().enumerate() {
                t = t.mul(&Poly::var(vs.clone(), i).pow(e)).unwrap();
            }
            p = p.add(&t).unwrap();
        }
        p
    })
}

fn arb_matrix() -> impl Strategy<Value = ExactMatrix> {
    (1usize..5, 1usize..6)
        .prop_flat_map(|(r, c)| {
            proptest::collection::vec((-9i64..=9, 1i64..4), r * c)
                .prop_map(move |entries| {
                    let rows: Vec<Vec<Scalar>> = entries
                        .chunks(c)
                        .map(|row| {
                            row.iter()
                                .map(|&(n, d)| Scalar::ratio(n, d).unwrap())
                                .collect()
                        })
                        .collect();
                    ExactMatrix::from_rows(rows)
                })
        })
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 64,
        failure_persistence: None,
        rng_seed: proptest::test_runner::RngSeed::Fixed(0),
        ..ProptestConfig::default()
    })]

    #[test]
    fn poly_ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        // associativity and distributivity, exactly
        let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
        let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
        let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let add_assoc_l = a.add(&b).unwrap().add(&c).unwrap();
        let add_assoc_r = a.add(&b.add(&c).unwrap()).unwrap();
        prop_assert_eq!(add_assoc_l, add_assoc_r);
    }

    #[test]
    fn derivative_linear_and_leibniz(a in arb_poly(), b in arb_poly()) {
        let da = a.derivative("x").unwrap();
        let db = b.derivative("x").unwrap();
        let sum = a.add(&b).unwrap().derivative("x").unwrap();
        prop_assert_eq!(sum, da.add(&db).unwrap());
        let prod = a.mul(&b).unwrap().derivative("x").unwrap();
        let leibniz = da.mul(&b).unwrap().add(&a.mul(&db).unwrap()).unwrap();
        prop_assert_eq!(prod, leibniz);
    }

    #[test]
    fn rank_plus_kernel_is_cols(m in arb_matrix()) {
        let (rank, kernel) = m.rank_kernel();
        prop_assert_eq!(rank + kernel.len(), m.cols());
        for k in &kernel {
            let image = m.mul_vec(k);
            prop_assert!(image.iter().all(Scalar::is_zero));
        }
        // kernel vectors are independent
        if !kernel.is_empty() {
            prop_assert_eq!(sgv_core::matrix::rank_of_rows(&kernel), kernel.len());
        }
    }

    #[test]
    fn gcd_divides_both(a in arb_poly(), b in arb_poly()) {
        prop_assume!(!a.is_zero() || !b.is_zero());
        let g = a.gcd(&b);
        prop_assert!(!g.is_zero());
        if !a.is_zero() {
            prop_assert!(a.div_exact(&g).is_some());
        }
        if !b.is_zero() {
            prop_assert!(b.div_exact(&g).is_some());
        }
    }

    #[test]
    fn ratfn_field_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assume!(!b.is_zero() && !c.is_zero());
        let x = RatFn::new(a.clone(), b.clone()).unwrap();
        let y = RatFn::new(c.clone(), b.clone()).unwrap();
        // (a/b) + (c/b) = (a + c)/b
        let sum = x.add(&y).unwrap();
        let direct = RatFn::new(a.add(&c).unwrap(), b).unwrap();
        prop_assert_eq!(sum, direct);
        if !x.is_zero() {
            let inv = RatFn::one(ring()).div(&x).unwrap();
            prop_assert_eq!(x.mul(&inv).unwrap(), RatFn::one(ring()));
        }
    }
}

// ---- seeded vector-field identities ----

fn chart3() -> Arc<Chart> {
    Chart::origin("props", ring())
}

/// Random polynomial field of degree <= 2.
fn random_field(chart: &Arc<Chart>, sampler: &mut Sampler) -> VectorField {
    let vs = chart.coords().clone();
    let coeffs = (0..chart.dim())
        .map(|_| {
            let mut p = Poly::constant(vs.clone(), sampler.scalar());
            for i in 0..chart.dim() {
                p = p
                    .add(&Poly::var(vs.clone(), i).scale(&sampler.scalar()))
                    .unwrap();
                for j in i..chart.dim() {
                    let quad = Poly::var(vs.clone(), i)
                        .mul(&Poly::var(vs.clone(), j))
                        .unwrap();
                    p = p.add(&quad.scale(&sampler.scalar())).unwrap();
                }
            }
            RatFn::from_poly(p)
        })
        .collect();
    VectorField::new(chart.clone(), coeffs).unwrap()
}

#[test]
fn bracket_antisymmetry_and_jacobi() {
    let chart = chart3();
    let mut sampler = Sampler::new(0, "bracket identities");
    for _ in 0..8 {
        let x = random_field(&chart, &mut sampler);
        let y = random_field(&chart, &mut sampler);
        let z = random_field(&chart, &mut sampler);
        let xy = x.lie_bracket(&y).unwrap();
        let yx = y.lie_bracket(&x).unwrap();
        assert_eq!(xy, yx.neg());
        let jacobi = xy
            .lie_bracket(&z)
            .unwrap()
            .add(&y.lie_bracket(&z).unwrap().lie_bracket(&x).unwrap())
            .unwrap()
            .add(&z.lie_bracket(&x).unwrap().lie_bracket(&y).unwrap())
            .unwrap();
        // [[x,y],z] + [[y,z],x] + [[z,x],y] = 0
        assert!(jacobi.is_zero(), "jacobi failed:\n{jacobi}");
    }
}

#[test]
fn bracket_bilinear_and_function_linear() {
    let chart = chart3();
    let mut sampler = Sampler::new(1, "bracket module rule");
    for _ in 0..8 {
        let x = random_field(&chart, &mut sampler);
        let y = random_field(&chart, &mut sampler);
        let a = sampler.scalar();
        let b = sampler.scalar();
        // bilinearity over scalars
        let lhs = x.scale(&a).add(&y.scale(&b)).unwrap().lie_bracket(&x).unwrap();
        let rhs = x
            .lie_bracket(&x)
            .unwrap()
            .scale(&a)
            .add(&y.lie_bracket(&x).unwrap().scale(&b))
            .unwrap();
        assert_eq!(lhs, rhs);
        // [fX, Y] = f [X, Y] - Y(f) X
        let f = {
            let vs = chart.coords().clone();
            let mut p = Poly::constant(vs.clone(), sampler.scalar());
            for i in 0..3 {
                p = p.add(&Poly::var(vs.clone(), i).scale(&sampler.scalar())).unwrap();
            }
            RatFn::from_poly(p)
        };
        let fx = x.scale_fn(&f).unwrap();
        let left = fx.lie_bracket(&y).unwrap();
        let right = x
            .lie_bracket(&y)
            .unwrap()
            .scale_fn(&f)
            .unwrap()
            .sub(&x.scale_fn(&y.apply(&f).unwrap()).unwrap())
            .unwrap();
        assert_eq!(left, right);
    }
}
