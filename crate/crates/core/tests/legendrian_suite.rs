//! The nondegenerate-fundamental-forms suite on cubic cones: positive runs
//! across dimensions and sampled points, the extracted-cubic proportionality,
//! and degenerate negatives.

use sgv_core::check::Verdict;
use sgv_core::cubic::{random_nondegenerate_cubic, CubicForm};
use sgv_core::legendrian::{check_nondegenerate_forms, legendrian_of_cubic};
use sgv_core::sample::Sampler;
use sgv_core::scalar::Scalar;

#[test]
fn cones_are_legendrian_symbolically() {
    let mut sampler = Sampler::new(10, "legendrian cones");
    for m in 1..=3usize {
        let f = random_nondegenerate_cubic(m, &mut sampler);
        let s = legendrian_of_cubic(&f).unwrap();
        s.verify_legendrian_symbolically().unwrap();
        // degenerate cubics still give Legendrian cones
        let d = legendrian_of_cubic(&CubicForm::zero(m)).unwrap();
        d.verify_legendrian_symbolically().unwrap();
    }
}

#[test]
fn nondegenerate_suite_at_ten_points() {
    let mut sampler = Sampler::new(11, "legendrian positive");
    for m in 1..=2usize {
        let f = random_nondegenerate_cubic(m, &mut sampler);
        let s = legendrian_of_cubic(&f).unwrap();
        let mut point_sampler = Sampler::new(12, "legendrian points");
        let mut ratio: Option<Scalar> = None;
        let mut done = 0;
        let mut tries = 0;
        while done < 10 && tries < 1000 {
            tries += 1;
            let p = point_sampler.point(m);
            let verdicts = match check_nondegenerate_forms(&s, &p, 0) {
                Ok(v) => v,
                Err(sgv_core::Error::ImmersionDrop(_)) | Err(sgv_core::Error::Pole(_)) => continue,
                Err(e) => panic!("{e}"),
            };
            for c in &verdicts.checks.checks {
                assert_eq!(
                    c.verdict,
                    Verdict::Pass,
                    "m={m} at {:?}: {} failed ({:?})",
                    p,
                    c.name,
                    c.witness
                );
            }
            // the extracted third form is proportional to the source cubic by
            // one global scalar, identical across sample points
            let extracted = verdicts.iii_cubic;
            let (idx, base) = f.entries().next().map(|(i, c)| (*i, c.clone())).unwrap();
            let r = extracted.coeff(idx[0], idx[1], idx[2]) / base;
            assert!(!r.is_zero());
            for (i, c) in f.entries() {
                assert_eq!(extracted.coeff(i[0], i[1], i[2]), c * &r);
            }
            for (i, c) in extracted.entries() {
                assert_eq!(*c, &f.coeff(i[0], i[1], i[2]) * &r);
            }
            match &ratio {
                None => ratio = Some(r),
                Some(prev) => assert_eq!(prev, &r, "scalar drifted between points"),
            }
            done += 1;
        }
        assert_eq!(done, 10, "m={m}: not enough usable sample points");
    }
}

#[test]
fn degenerate_cubic_fails_condition_three_everywhere() {
    // F = v1^3 on two variables: the kernel witness is the e2 line
    let f = CubicForm::new(2, [([0, 0, 0], Scalar::one())]).unwrap();
    let s = legendrian_of_cubic(&f).unwrap();
    let mut point_sampler = Sampler::new(13, "legendrian negative");
    let mut done = 0;
    let mut tries = 0;
    while done < 10 && tries < 1000 {
        tries += 1;
        let p = point_sampler.point(2);
        let verdicts = match check_nondegenerate_forms(&s, &p, 0) {
            Ok(v) => v,
            Err(sgv_core::Error::ImmersionDrop(_)) | Err(sgv_core::Error::Pole(_)) => continue,
            Err(e) => panic!("{e}"),
        };
        let iii = verdicts
            .checks
            .checks
            .iter()
            .find(|c| c.name == "iii-nondegenerate")
            .unwrap();
        assert_eq!(iii.verdict, Verdict::Fail, "at {p:?}");
        let w = iii.witness.as_ref().unwrap();
        assert!(
            w.contains("(0, 1)") || w.contains("(0, -1)"),
            "witness should be the e2 line, got {w}"
        );
        done += 1;
    }
    assert_eq!(done, 10);
}
