use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use superconn::random::{random_form, random_scalar};
use superconn::scalar::{RingSpec, Scalar, Wirtinger};
use superconn::Form;

fn ring_of(code: u8) -> RingSpec {
    match code % 5 {
        0 => RingSpec::poly(1),
        1 => RingSpec::poly(2),
        2 => RingSpec::poly(3),
        3 => RingSpec::p1(),
        _ => RingSpec::poly(2).with_dual(true),
    }
}

fn scalar(rng: &mut ChaCha8Rng, ring: RingSpec) -> Scalar {
    let s = random_scalar(rng, ring, 3, 3);
    if ring.dual && rng.gen_bool(0.5) {
        &s + &(&Scalar::eps(ring) * &random_scalar(rng, ring, 2, 2))
    } else {
        s
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn commutative_ring_axioms(seed in any::<u64>(), code in any::<u8>()) {
        let ring = ring_of(code);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (scalar(&mut rng, ring), scalar(&mut rng, ring), scalar(&mut rng, ring));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &Scalar::zero(ring), a.clone());
        prop_assert_eq!(&a * &Scalar::one(ring), a.clone());
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!(a.conj().conj(), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn wirtinger_derivatives_commute_and_obey_leibniz(seed in any::<u64>(), code in any::<u8>()) {
        let ring = ring_of(code);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (scalar(&mut rng, ring), scalar(&mut rng, ring));
        let n = ring.n();
        for i in 1..=n {
            for j in 1..=n {
                for (ki, kj) in [(Wirtinger::Z, Wirtinger::Zbar), (Wirtinger::Z, Wirtinger::Z), (Wirtinger::Zbar, Wirtinger::Zbar)] {
                    let lhs = a.wirtinger(ki, i).unwrap().wirtinger(kj, j).unwrap();
                    let rhs = a.wirtinger(kj, j).unwrap().wirtinger(ki, i).unwrap();
                    prop_assert_eq!(lhs, rhs);
                }
            }
            for k in [Wirtinger::Z, Wirtinger::Zbar] {
                let lhs = (&a * &b).wirtinger(k, i).unwrap();
                let rhs = &(&a.wirtinger(k, i).unwrap() * &b) + &(&a * &b.wirtinger(k, i).unwrap());
                prop_assert_eq!(lhs, rhs);
            }
            // conj intertwines d/dz and d/dzbar
            prop_assert_eq!(a.conj().wirtinger(Wirtinger::Zbar, i).unwrap(), a.wirtinger(Wirtinger::Z, i).unwrap().conj());
        }
    }

    #[test]
    fn canonical_antiderivative_inverts_zbar_derivative(seed in any::<u64>(), n in 1usize..=3) {
        let ring = RingSpec::poly(n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = scalar(&mut rng, ring);
        for m in 1..=n {
            let f = c.antideriv_zbar(m).unwrap();
            prop_assert_eq!(f.wirtinger(Wirtinger::Zbar, m).unwrap(), c.clone());
            for l in (1..=n).filter(|&l| l != m) {
                prop_assert_eq!(
                    f.wirtinger(Wirtinger::Z, l).unwrap(),
                    c.wirtinger(Wirtinger::Z, l).unwrap().antideriv_zbar(m).unwrap()
                );
            }
        }
    }

    /// `∫ ∂̄(f dz) = 0` for `f = z^a zbar^b (1+|z|^2)^-m` decaying faster than `|z|^-1`.
    #[test]
    fn stokes_on_the_projective_line(a in 0u32..4, b in 0u32..4, extra in 0u32..3, re in -5i64..5) {
        let ring = RingSpec::p1();
        let m = (a + b + 2).div_ceil(2) + extra;
        let f = &(&Scalar::z(ring, 1).pow(a) * &Scalar::zbar(ring, 1).pow(b)) * &Scalar::p1_weight(ring, m);
        let f = f.scale_rational(&superconn::scalar::rat(re, 1));
        let exact = Form::scalar(f).wedge(&Form::dz(ring, 1)).d();
        let coefficient = exact.coefficient(&superconn::FormBasis { dz: 1, dzbar: 1 });
        prop_assert!(coefficient.integrate_p1().unwrap().value.is_zero());
    }

    #[test]
    fn dolbeault_differentials_on_forms(seed in any::<u64>(), code in any::<u8>()) {
        let ring = ring_of(code);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (random_form(&mut rng, ring, 2, 3), random_form(&mut rng, ring, 2, 3));
        prop_assert!(a.del().del().is_zero());
        prop_assert!(a.delbar().delbar().is_zero());
        prop_assert!((&a.del().delbar() + &a.delbar().del()).is_zero());
        prop_assert_eq!(a.wedge(&b).d(), &a.d().wedge(&b) + &a.parity_twist().wedge(&b.d()));
        prop_assert_eq!(a.conj().delbar(), a.del().conj());
    }
}
