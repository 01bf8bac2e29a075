use heightlab::divisor::{
    certify_very_large, make_very_large, ord_along, rr_basis, strata, CertifyOutcome, HypersurfaceDivisor, MakeOutcome,
    SearchBudget,
};
use heightlab::scalar::rat;
use heightlab::MPoly;

fn v(i: usize) -> MPoly {
    MPoly::var(3, i)
}

fn divisors() -> Vec<HypersurfaceDivisor> {
    let p1 = |pts: &[(Option<i64>, u32)]| {
        HypersurfaceDivisor::p1(&pts.iter().map(|(a, m)| (a.map(rat), *m)).collect::<Vec<_>>()).unwrap()
    };
    let conic = &(&v(0) * &v(0)) + &(&(&v(1) * &v(1)) - &(&v(2) * &v(2)));
    vec![
        p1(&[(Some(0), 1)]),
        p1(&[(Some(0), 1), (None, 1)]),
        p1(&[(Some(0), 1), (Some(1), 1), (None, 1)]),
        p1(&[(Some(0), 2), (Some(1), 1), (None, 1)]),
        p1(&[(Some(0), 1), (Some(1), 1), (Some(-1), 1), (None, 1)]),
        HypersurfaceDivisor::new(2, vec![(v(0), 1), (v(1), 1), (v(2), 1)]).unwrap(),
        HypersurfaceDivisor::new(2, vec![(v(0), 1), (v(1), 1), (v(2), 1), (&(&v(0) + &v(1)) + &v(2), 1)]).unwrap(),
        HypersurfaceDivisor::new(2, vec![(conic, 1), (v(0), 1)]).unwrap(),
    ]
}

#[test]
fn riemann_roch_basis_is_effective() {
    for d in divisors() {
        let b = rr_basis(&d);
        for g in &b.numerators {
            for c in d.components() {
                let o = ord_along(g, &b.denominator, &c.form).unwrap();
                assert!(o + c.mult as i64 >= 0);
            }
        }
    }
}

#[test]
fn strata_witnesses_lie_on_exactly_their_pattern() {
    for d in divisors() {
        for s in strata(&d).unwrap() {
            assert_eq!(s.containment(&d), s.pattern, "{:?}", s.pattern);
        }
    }
}

#[test]
fn certificates_reverify() {
    let mut certified = 0;
    for d in divisors() {
        if let CertifyOutcome::Certified(c) = certify_very_large(&d, SearchBudget::default()).unwrap() {
            c.verify().unwrap();
            for e in &c.entries {
                assert!(e.order_sums.iter().all(|(_, s)| *s > 0));
            }
            certified += 1;
        }
    }
    assert!(certified >= 3);
}

#[test]
fn make_very_large_keeps_support() {
    let d = HypersurfaceDivisor::p1(&[(Some(rat(0)), 1), (None, 1), (Some(rat(1)), 1)]).unwrap();
    match make_very_large(&d, 2, SearchBudget::default()).unwrap() {
        MakeOutcome::Found { certificate, .. } => {
            certificate.verify().unwrap();
            let mut a = d.support();
            let mut b = certificate.divisor.support();
            a.sort_by_key(|f| f.to_string());
            b.sort_by_key(|f| f.to_string());
            assert_eq!(a, b);
        }
        other => panic!("{other:?}"),
    }
}
