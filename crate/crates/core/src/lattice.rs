//! Peripheral lattice arithmetic: primitive vectors, the choice of `zeta`,
//! the rank-one quotient and the extended lattice `Z^2 + Z (omega / m)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::LatticeError;
use crate::scalar::Integral;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vec2<T> {
    pub x: T,
    pub y: T,
}

impl<T: Integral> Vec2<T> {
    pub fn new(x: T, y: T) -> Self {
        Vec2 { x, y }
    }

    pub fn from_i64(x: i64, y: i64) -> Self {
        Vec2 { x: T::from_small(x), y: T::from_small(y) }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Vec2::new(self.x.clone() + o.x.clone(), self.y.clone() + o.y.clone())
    }

    pub fn neg(&self) -> Self {
        Vec2::new(-self.x.clone(), -self.y.clone())
    }

    pub fn scale(&self, k: &T) -> Self {
        Vec2::new(self.x.clone() * k.clone(), self.y.clone() * k.clone())
    }

    /// `x*o.y - y*o.x`.
    pub fn cross(&self, o: &Self) -> T {
        self.x.clone() * o.y.clone() - self.y.clone() * o.x.clone()
    }

    /// Exact division by `m` when both coordinates are multiples of it.
    pub fn div_exact(&self, m: &T) -> Option<Self> {
        let (qx, rx) = self.x.div_rem(m);
        let (qy, ry) = self.y.div_rem(m);
        (rx.is_zero() && ry.is_zero()).then(|| Vec2::new(qx, qy))
    }
}

impl<T: fmt::Display> fmt::Display for Vec2<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Primitive means nonzero with coprime coordinates.
pub fn is_primitive<T: Integral>(v: &Vec2<T>) -> Result<bool, LatticeError> {
    if v.is_zero() {
        return Err(LatticeError::ZeroVector);
    }
    Ok(v.x.gcd(&v.y).is_one())
}

/// Solves `a x + b y = 1` for coprime `(a, b)`, returning the solution with
/// the smallest `|x|` (ties broken towards `x >= 0`).
pub fn solve_diophantine<T: Integral>(a: &T, b: &T) -> Result<(T, T), LatticeError> {
    if a.is_zero() && b.is_zero() {
        return Err(LatticeError::ZeroVector);
    }
    if !a.gcd(b).is_one() {
        return Err(LatticeError::NotCoprime(a.to_string(), b.to_string()));
    }
    if b.is_zero() {
        // a = +-1, so x = a.
        return Ok((a.clone(), T::zero()));
    }
    let ext = a.extended_gcd(b);
    let g = ext.gcd;
    let x0 = ext.x * g.clone();
    let modulus = b.abs();
    let r = x0.mod_floor(&modulus);
    let other = modulus.clone() - r.clone();
    let x = if other < r { -other } else { r };
    let y = (T::one() - a.clone() * x.clone()) / b.clone();
    debug_assert!((a.clone() * x.clone() + b.clone() * y.clone()).is_one());
    Ok((x, y))
}

/// A choice of `zeta` for `omega / m`, with the Bezout pair it came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaChoice<T> {
    pub omega: Vec2<T>,
    pub m: T,
    pub t: T,
    /// `a x + b y = 1` for `omega = (a, b)`.
    pub x: T,
    pub y: T,
    pub zeta: Vec2<T>,
}

impl<T: Integral> ZetaChoice<T> {
    /// `(omega + zeta) / m`, which is `(y, -x)`.
    pub fn lift(&self) -> Vec2<T> {
        Vec2::new(self.y.clone(), -self.x.clone())
    }

    /// Re-checks primitivity of `zeta` and `omega + zeta in m Z^2`.
    pub fn verify(&self) -> Result<(), LatticeError> {
        if !is_primitive(&self.zeta).unwrap_or(false) {
            return Err(LatticeError::Certificate("zeta primitive".into()));
        }
        match self.omega.add(&self.zeta).div_exact(&self.m) {
            Some(l) if l == self.lift() => Ok(()),
            _ => Err(LatticeError::Certificate("omega + zeta in m Z^2".into())),
        }
    }
}

/// `zeta = (m y - a, -m x - b)` where `(x, y) = (x* + b t, y* - a t)` and
/// `(x*, y*)` is the normalized Bezout solution for `omega = (a, b)`.
pub fn find_zeta<T: Integral>(omega: &Vec2<T>, m: &T, t: &T) -> Result<ZetaChoice<T>, LatticeError> {
    if !m.is_positive() {
        return Err(LatticeError::BadDenominator(m.to_string()));
    }
    if !is_primitive(omega)? {
        return Err(LatticeError::NotPrimitive(omega.x.to_string(), omega.y.to_string()));
    }
    let (a, b) = (omega.x.clone(), omega.y.clone());
    let (x0, y0) = solve_diophantine(&a, &b)?;
    let x = x0 + b.clone() * t.clone();
    let y = y0 - a.clone() * t.clone();
    let zeta = Vec2::new(m.clone() * y.clone() - a, -(m.clone() * x.clone()) - b);
    let choice = ZetaChoice { omega: omega.clone(), m: m.clone(), t: t.clone(), x, y, zeta };
    choice.verify()?;
    Ok(choice)
}

/// The quotient `Z^2 -> Z^2 / <zeta> = Z`, `v -> zeta.x v.y - zeta.y v.x`.
pub fn quotient_image<T: Integral>(v: &Vec2<T>, zeta: &Vec2<T>) -> T {
    zeta.cross(v)
}

/// `base + k * (omega / m)` with `0 <= k < m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExtendedLatticeElement<T> {
    pub base: Vec2<T>,
    pub omega: Vec2<T>,
    pub m: T,
    pub k: T,
}

impl<T: Integral> ExtendedLatticeElement<T> {
    /// Normalizes `k` into `[0, m)`, carrying multiples of `omega` into `base`.
    pub fn new(base: Vec2<T>, omega: Vec2<T>, m: T, k: T) -> Result<Self, LatticeError> {
        if !m.is_positive() {
            return Err(LatticeError::BadDenominator(m.to_string()));
        }
        let (q, r) = k.div_mod_floor(&m);
        let base = base.add(&omega.scale(&q));
        Ok(ExtendedLatticeElement { base, omega, m, k: r })
    }

    pub fn from_lattice(v: Vec2<T>, omega: Vec2<T>, m: T) -> Result<Self, LatticeError> {
        Self::new(v, omega, m, T::zero())
    }

    /// The generator `omega / m`.
    pub fn omega_over_m(omega: Vec2<T>, m: T) -> Result<Self, LatticeError> {
        Self::new(Vec2::new(T::zero(), T::zero()), omega, m, T::one())
    }

    fn same_frame(&self, o: &Self) -> Result<(), LatticeError> {
        if self.omega == o.omega && self.m == o.m {
            Ok(())
        } else {
            Err(LatticeError::Mismatch)
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self, LatticeError> {
        self.same_frame(o)?;
        Self::new(self.base.add(&o.base), self.omega.clone(), self.m.clone(), self.k.clone() + o.k.clone())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.base.neg(), self.omega.clone(), self.m.clone(), -self.k.clone()).expect("m already checked")
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.base.scale(c), self.omega.clone(), self.m.clone(), self.k.clone() * c.clone())
            .expect("m already checked")
    }

    pub fn is_lattice_point(&self) -> bool {
        self.k.is_zero()
    }
}

/// `phi_zeta(base + k omega/m) = q(base) + k q((omega + zeta)/m)`.
pub fn phi_zeta<T: Integral>(e: &ExtendedLatticeElement<T>, choice: &ZetaChoice<T>) -> Result<T, LatticeError> {
    if e.omega != choice.omega || e.m != choice.m {
        return Err(LatticeError::Mismatch);
    }
    let q = |v: &Vec2<T>| quotient_image(v, &choice.zeta);
    let unit = q(&choice.lift());
    if choice.m.clone() * unit.clone() != q(&choice.omega) {
        return Err(LatticeError::Certificate("m q((omega + zeta)/m) = q(omega)".into()));
    }
    Ok(q(&e.base) + e.k.clone() * unit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type V = Vec2<BigInt>;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn primitivity() {
        assert!(is_primitive(&V::from_i64(2, 3)).unwrap());
        assert!(!is_primitive(&V::from_i64(2, 4)).unwrap());
        assert!(is_primitive(&V::from_i64(0, -1)).unwrap());
        assert_eq!(is_primitive(&V::from_i64(0, 0)), Err(LatticeError::ZeroVector));
    }

    #[test]
    fn diophantine_examples() {
        assert_eq!(solve_diophantine(&b(2), &b(3)).unwrap(), (b(-1), b(1)));
        assert_eq!(solve_diophantine(&b(1), &b(0)).unwrap(), (b(1), b(0)));
        assert_eq!(solve_diophantine(&b(5), &b(7)).unwrap(), (b(3), b(-2)));
        assert_eq!(solve_diophantine(&b(-1), &b(0)).unwrap(), (b(-1), b(0)));
        assert_eq!(solve_diophantine(&b(0), &b(-1)).unwrap(), (b(0), b(-1)));
        assert!(matches!(solve_diophantine(&b(4), &b(6)), Err(LatticeError::NotCoprime(..))));
    }

    #[test]
    fn diophantine_tie_prefers_nonnegative() {
        // 3x + 2y = 1: x in {1, -1} (mod 2); pick 1.
        assert_eq!(solve_diophantine(&b(3), &b(2)).unwrap(), (b(1), b(-1)));
        assert_eq!(solve_diophantine(&3i64, &-2i64).unwrap(), (1, 1));
    }

    #[test]
    fn zeta_examples() {
        let z = find_zeta(&V::from_i64(2, 3), &b(3), &b(0)).unwrap();
        assert_eq!(z.zeta, V::from_i64(1, 0));
        let z = find_zeta(&V::from_i64(2, 3), &b(3), &b(1)).unwrap();
        assert_eq!(z.zeta, V::from_i64(-5, -9));
        let z = find_zeta(&V::from_i64(1, 0), &b(2), &b(0)).unwrap();
        assert_eq!(z.zeta, V::from_i64(-1, -2));
        assert!(matches!(find_zeta(&V::from_i64(2, 4), &b(3), &b(0)), Err(LatticeError::NotPrimitive(..))));
        assert!(matches!(find_zeta(&V::from_i64(2, 3), &b(0), &b(0)), Err(LatticeError::BadDenominator(_))));
    }

    #[test]
    fn phi_examples() {
        let omega = V::from_i64(2, 3);
        let z = find_zeta(&omega, &b(3), &b(0)).unwrap();
        let gen = ExtendedLatticeElement::omega_over_m(omega.clone(), b(3)).unwrap();
        assert_eq!(phi_zeta(&gen, &z).unwrap(), b(1));
        let whole = ExtendedLatticeElement::from_lattice(omega.clone(), omega.clone(), b(3)).unwrap();
        assert_eq!(phi_zeta(&whole, &z).unwrap(), b(3));
        assert_eq!(gen.scale(&b(3)), whole);
        let zeta_elt = ExtendedLatticeElement::from_lattice(z.zeta.clone(), omega.clone(), b(3)).unwrap();
        assert_eq!(phi_zeta(&zeta_elt, &z).unwrap(), b(0));
    }

    #[test]
    fn extended_normalization() {
        let omega = V::from_i64(1, 2);
        let e = ExtendedLatticeElement::new(V::from_i64(0, 0), omega.clone(), b(3), b(-1)).unwrap();
        assert_eq!(e.k, b(2));
        assert_eq!(e.base, V::from_i64(-1, -2));
        let other = ExtendedLatticeElement::from_lattice(V::from_i64(0, 0), omega, b(4)).unwrap();
        assert_eq!(e.add(&other), Err(LatticeError::Mismatch));
    }

    use proptest::prelude::*;

    proptest! {
        #[test]
        fn phi_is_additive(
            a in -30i64..30, c in -30i64..30, m in 1i64..10, t in -20i64..20,
            b1 in (-50i64..50, -50i64..50, -20i64..20),
            b2 in (-50i64..50, -50i64..50, -20i64..20),
        ) {
            let omega = V::from_i64(a, c);
            prop_assume!(!omega.is_zero() && is_primitive(&omega).unwrap());
            let z = find_zeta(&omega, &b(m), &b(t)).unwrap();
            let e1 = ExtendedLatticeElement::new(V::from_i64(b1.0, b1.1), omega.clone(), b(m), b(b1.2)).unwrap();
            let e2 = ExtendedLatticeElement::new(V::from_i64(b2.0, b2.1), omega.clone(), b(m), b(b2.2)).unwrap();
            let sum = phi_zeta(&e1.add(&e2).unwrap(), &z).unwrap();
            prop_assert_eq!(sum, phi_zeta(&e1, &z).unwrap() + phi_zeta(&e2, &z).unwrap());
            prop_assert_eq!(phi_zeta(&e1.neg(), &z).unwrap(), -phi_zeta(&e1, &z).unwrap());
        }

        #[test]
        fn diophantine_minimal(a in -200i64..200, c in -200i64..200) {
            prop_assume!((a, c) != (0, 0) && num_integer::gcd(a, c) == 1);
            let (x, y) = solve_diophantine(&a, &c).unwrap();
            prop_assert_eq!(a * x + c * y, 1);
            // Brute force over the solution family.
            if c != 0 {
                for s in -5i64..=5 {
                    let other = x + c * s;
                    prop_assert!(other.abs() > x.abs() || (other.abs() == x.abs() && (other == x || x >= 0)));
                }
            }
        }
    }
}
