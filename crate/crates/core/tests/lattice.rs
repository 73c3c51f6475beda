use knotcalc_core::lattice::{find_zeta, is_primitive, phi_zeta, ExtendedLatticeElement, Vec2};
use knotcalc_core::LatticeVector;
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

fn primitive() -> impl Strategy<Value = (i64, i64)> {
    (-200i64..=200, -200i64..=200).prop_filter("primitive", |(a, b)| a.gcd(b) == 1)
}

proptest! {
    #[test]
    fn zeta_conditions((a, b) in primitive(), m in 1i64..=30, t in -50i64..=50) {
        let omega: LatticeVector = Vec2::from_i64(a, b);
        let c = find_zeta(&omega, &BigInt::from(m), &BigInt::from(t)).unwrap();
        prop_assert!(c.verify().is_ok());
        prop_assert!(is_primitive(&c.zeta).unwrap());
        let e = ExtendedLatticeElement::omega_over_m(omega.clone(), BigInt::from(m)).unwrap();
        let unit = phi_zeta(&e, &c).unwrap();
        let whole = ExtendedLatticeElement::from_lattice(omega.clone(), omega, BigInt::from(m)).unwrap();
        prop_assert_eq!(phi_zeta(&whole, &c).unwrap(), unit * m);
    }

    #[test]
    fn phi_is_additive((a, b) in primitive(), m in 2i64..=9, x in -20i64..=20, y in -20i64..=20, k in -30i64..=30) {
        let omega: LatticeVector = Vec2::from_i64(a, b);
        let c = find_zeta(&omega, &BigInt::from(m), &BigInt::from(0)).unwrap();
        let m = BigInt::from(m);
        let u = ExtendedLatticeElement::new(Vec2::from_i64(x, y), omega.clone(), m.clone(), BigInt::from(k)).unwrap();
        let v = ExtendedLatticeElement::omega_over_m(omega, m).unwrap();
        let sum = u.add(&v).unwrap();
        prop_assert_eq!(phi_zeta(&sum, &c).unwrap(), phi_zeta(&u, &c).unwrap() + phi_zeta(&v, &c).unwrap());
    }
}

#[test]
fn rejects_bad_input() {
    let omega: LatticeVector = Vec2::from_i64(4, 6);
    assert!(find_zeta(&omega, &BigInt::from(3), &BigInt::from(0)).is_err());
    let omega: LatticeVector = Vec2::from_i64(1, 0);
    assert!(find_zeta(&omega, &BigInt::from(0), &BigInt::from(0)).is_err());
    assert!(find_zeta(&omega, &BigInt::from(-2), &BigInt::from(0)).is_err());
}
