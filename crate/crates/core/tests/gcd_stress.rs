// quick stress: products of random cubics over 3 vars, gcd of the products
use sgv_core::poly::{vars, Poly};
use sgv_core::sample::Sampler;
use sgv_core::scalar::Scalar;
use std::time::Instant;

#[test]
fn gcd_stress_products() {
    let vs = vars(&["x", "y", "z"]);
    let mut s = Sampler::new(99, "gcd stress");
    let mut rand_poly = |terms: usize, maxdeg: u32| {
        let mut p = Poly::zero(vs.clone());
        for _ in 0..terms {
            let mut t = Poly::constant(vs.clone(), Scalar::from_int(s.small_nonzero()));
            for i in 0..3 {
                let e = (s.small_int().unsigned_abs() as u32) % (maxdeg + 1);
                t = t.mul(&Poly::var(vs.clone(), i).pow(e)).unwrap();
            }
            p = p.add(&t).unwrap();
        }
        p
    };
    let t0 = Instant::now();
    for round in 0..12 {
        let a = rand_poly(4, 2);
        let b = rand_poly(4, 2);
        let c = rand_poly(4, 2);
        if a.is_zero() || b.is_zero() || c.is_zero() { continue; }
        let ab = a.mul(&b).unwrap();
        let cb = c.mul(&b).unwrap();
        let g = ab.gcd(&cb);
        // b divides the gcd
        assert!(g.div_exact(&b.primitive()).is_some() || b.primitive().div_exact(&g).is_some(),
            "round {round}");
        assert!(ab.div_exact(&g).is_some() && cb.div_exact(&g).is_some());
    }
    println!("12 product gcds: {:?}", t0.elapsed());
    assert!(t0.elapsed().as_secs() < 60);
}
