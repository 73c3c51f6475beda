//! Scalar abstractions.
//!
//! The exact modules are generic over [`Integral`] (any signed integer type
//! from `num-traits`); the numerical bounds are generic over [`Real`], which
//! is implemented for the primitive floats and for [`Interval`], a
//! multiprecision interval type whose endpoints are produced with directed
//! rounding so that every decided comparison is certified.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt::{Debug, Display};
use std::hash::Hash;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Float, FloatConst, FromPrimitive, Signed, ToPrimitive, Zero};

use crate::error::ParseNumberError;

/// Signed integer scalar usable by the exact-arithmetic modules.
///
/// Fixed-width types (`i64`, `i128`) are accepted for speed on small inputs;
/// they overflow silently like any primitive integer. [`BigInt`] is the
/// default everywhere arbitrary precision matters.
pub trait Integral:
    Clone + Debug + Display + Hash + Ord + Integer + Signed + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    fn from_small(v: i64) -> Self {
        Self::from_i64(v).expect("small constant fits every Integral type")
    }

    fn to_bigint(&self) -> BigInt {
        // Display is exact for every integer type we admit.
        self.to_string().parse().expect("integer display round-trips")
    }
}

impl<T> Integral for T where
    T: Clone + Debug + Display + Hash + Ord + Integer + Signed + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
}

/// Real scalar with an explicit evaluation context.
///
/// The context carries precision (and constant caches) per call so there is
/// no process-wide numeric state. Transcendental functions are only required
/// on the domains the bound formulas use; `sin` in particular is only relied
/// upon on `[-pi/2, pi/2]`.
pub trait Real: Clone + Debug {
    type Ctx;

    fn from_i64(v: i64, ctx: &Self::Ctx) -> Self;
    fn from_bigint(v: &BigInt, ctx: &Self::Ctx) -> Self;
    fn pi(ctx: &Self::Ctx) -> Self;

    fn add(&self, rhs: &Self, ctx: &Self::Ctx) -> Self;
    fn sub(&self, rhs: &Self, ctx: &Self::Ctx) -> Self;
    fn mul(&self, rhs: &Self, ctx: &Self::Ctx) -> Self;
    fn div(&self, rhs: &Self, ctx: &Self::Ctx) -> Self;
    fn neg(&self) -> Self;

    fn sqrt(&self, ctx: &Self::Ctx) -> Self;
    fn ln(&self, ctx: &Self::Ctx) -> Self;
    fn exp(&self, ctx: &Self::Ctx) -> Self;
    fn sin(&self, ctx: &Self::Ctx) -> Self;
    fn sinh(&self, ctx: &Self::Ctx) -> Self;
    fn asinh(&self, ctx: &Self::Ctx) -> Self;
    fn acosh(&self, ctx: &Self::Ctx) -> Self;

    /// Best point estimate as an `f64`.
    fn to_f64(&self) -> f64;

    /// Ordering of `self` against `other`, or `None` when it cannot be
    /// decided at the current precision.
    fn cmp_certified(&self, other: &Self) -> Option<Ordering>;

    /// Floor, and whether it is certain at the current precision.
    fn floor_certified(&self) -> (BigInt, bool);

    fn from_ratio(v: &BigRational, ctx: &Self::Ctx) -> Self {
        Self::from_bigint(v.numer(), ctx).div(&Self::from_bigint(v.denom(), ctx), ctx)
    }

    fn certainly_gt(&self, other: &Self) -> bool {
        self.cmp_certified(other) == Some(Ordering::Greater)
    }

    fn certainly_lt(&self, other: &Self) -> bool {
        self.cmp_certified(other) == Some(Ordering::Less)
    }
}

impl<F> Real for F
where
    F: Float + FloatConst + FromPrimitive + Debug,
{
    type Ctx = ();

    fn from_i64(v: i64, _: &()) -> Self {
        F::from_i64(v).expect("float from i64")
    }

    fn from_bigint(v: &BigInt, _: &()) -> Self {
        v.to_f64().and_then(F::from_f64).unwrap_or_else(|| {
            if v.is_negative() {
                F::neg_infinity()
            } else {
                F::infinity()
            }
        })
    }

    fn pi(_: &()) -> Self {
        F::PI()
    }

    fn add(&self, rhs: &Self, _: &()) -> Self {
        *self + *rhs
    }

    fn sub(&self, rhs: &Self, _: &()) -> Self {
        *self - *rhs
    }

    fn mul(&self, rhs: &Self, _: &()) -> Self {
        *self * *rhs
    }

    fn div(&self, rhs: &Self, _: &()) -> Self {
        *self / *rhs
    }

    fn neg(&self) -> Self {
        -*self
    }

    fn sqrt(&self, _: &()) -> Self {
        Float::sqrt(*self)
    }

    fn ln(&self, _: &()) -> Self {
        Float::ln(*self)
    }

    fn exp(&self, _: &()) -> Self {
        Float::exp(*self)
    }

    fn sin(&self, _: &()) -> Self {
        Float::sin(*self)
    }

    fn sinh(&self, _: &()) -> Self {
        Float::sinh(*self)
    }

    fn asinh(&self, _: &()) -> Self {
        Float::asinh(*self)
    }

    fn acosh(&self, _: &()) -> Self {
        Float::acosh(*self)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn cmp_certified(&self, other: &Self) -> Option<Ordering> {
        self.partial_cmp(other)
    }

    fn floor_certified(&self) -> (BigInt, bool) {
        let f = self.floor();
        match f.to_f64().and_then(BigInt::from_f64) {
            Some(v) => (v, true),
            None => (BigInt::zero(), false),
        }
    }
}

/// Guard bits added on top of the requested decimal precision.
const GUARD_BITS: usize = 16;

/// Evaluation context for [`Interval`]: working precision plus the constant
/// cache astro-float needs for `pi` and the transcendental functions.
pub struct IntervalCtx {
    bits: usize,
    digits: u32,
    consts: RefCell<Consts>,
}

impl IntervalCtx {
    pub fn with_digits(digits: u32) -> Self {
        let digits = digits.max(1);
        let bits = (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as usize + GUARD_BITS;
        IntervalCtx {
            bits,
            digits,
            consts: RefCell::new(Consts::new().expect("astro-float constant cache")),
        }
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// A context with at least `bits` of working precision.
    pub fn at_least_bits(&self, bits: usize) -> IntervalCtx {
        if bits <= self.bits {
            return IntervalCtx::with_digits(self.digits);
        }
        let digits = ((bits - GUARD_BITS) as f64 / std::f64::consts::LOG2_10).ceil() as u32;
        IntervalCtx::with_digits(digits.max(self.digits))
    }

    fn with_consts<R>(&self, f: impl FnOnce(&mut Consts) -> R) -> R {
        f(&mut self.consts.borrow_mut())
    }
}

impl Default for IntervalCtx {
    fn default() -> Self {
        IntervalCtx::with_digits(50)
    }
}

impl Debug for IntervalCtx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IntervalCtx").field("digits", &self.digits).field("bits", &self.bits).finish()
    }
}

/// Closed interval `[lo, hi]` of multiprecision binary floats.
///
/// Every operation rounds the lower endpoint toward negative infinity and the
/// upper endpoint toward positive infinity; astro-float rounds all arithmetic
/// and elementary functions correctly, so the true value is always enclosed.
#[derive(Clone, Debug)]
pub struct Interval {
    lo: BigFloat,
    hi: BigFloat,
}

fn bf_min(a: BigFloat, b: BigFloat) -> BigFloat {
    match a.cmp(&b) {
        Some(o) if o <= 0 => a,
        Some(_) => b,
        None => astro_float::NAN,
    }
}

fn bf_max(a: BigFloat, b: BigFloat) -> BigFloat {
    match a.cmp(&b) {
        Some(o) if o >= 0 => a,
        Some(_) => b,
        None => astro_float::NAN,
    }
}

fn bf_le(a: &BigFloat, b: &BigFloat) -> bool {
    matches!(a.cmp(b), Some(o) if o <= 0)
}

fn bf_lt(a: &BigFloat, b: &BigFloat) -> bool {
    matches!(a.cmp(b), Some(o) if o < 0)
}

impl Interval {
    pub fn lo(&self) -> &BigFloat {
        &self.lo
    }

    pub fn hi(&self) -> &BigFloat {
        &self.hi
    }

    fn new(lo: BigFloat, hi: BigFloat) -> Self {
        Interval { lo, hi }
    }

    fn everything() -> Self {
        Interval::new(astro_float::INF_NEG, astro_float::INF_POS)
    }

    pub fn is_valid(&self) -> bool {
        !self.lo.is_nan() && !self.hi.is_nan() && bf_le(&self.lo, &self.hi)
    }

    /// Hull of two intervals.
    pub fn hull(&self, other: &Interval) -> Interval {
        Interval::new(bf_min(self.lo.clone(), other.lo.clone()), bf_max(self.hi.clone(), other.hi.clone()))
    }

    pub fn midpoint(&self, ctx: &IntervalCtx) -> BigFloat {
        self.lo.add(&self.hi, ctx.bits, RoundingMode::ToEven).div(
            &BigFloat::from_i64(2, ctx.bits),
            ctx.bits,
            RoundingMode::ToEven,
        )
    }

    /// Degenerate interval at the midpoint.
    pub fn mid(&self, ctx: &IntervalCtx) -> Interval {
        let m = self.midpoint(ctx);
        Interval::new(m.clone(), m)
    }

    /// Width relative to the larger endpoint magnitude (absolute width when
    /// the interval straddles zero).
    pub fn relative_width(&self) -> f64 {
        let w = bf_to_f64(&self.hi) - bf_to_f64(&self.lo);
        let m = bf_to_f64(&self.lo).abs().max(bf_to_f64(&self.hi).abs());
        if m == 0.0 || !m.is_finite() {
            w
        } else {
            w / m
        }
    }

    /// `true` when `self` lies entirely below `x`.
    pub fn below(&self, x: &Interval) -> bool {
        bf_lt(&self.hi, &x.lo)
    }

    /// Lower endpoint as a decimal string with `sig` significant digits,
    /// rounded toward negative infinity.
    pub fn lower_decimal(&self, sig: usize, ctx: &IntervalCtx) -> String {
        outward_decimal(&self.lo, sig, false, ctx)
    }

    /// Upper endpoint as a decimal string with `sig` significant digits,
    /// rounded toward positive infinity.
    pub fn upper_decimal(&self, sig: usize, ctx: &IntervalCtx) -> String {
        outward_decimal(&self.hi, sig, true, ctx)
    }

    /// Midpoint as a decimal string with `sig` significant digits.
    pub fn mid_decimal(&self, sig: usize, ctx: &IntervalCtx) -> String {
        outward_decimal(&self.midpoint(ctx), sig, false, ctx)
    }

    /// Largest integer certified to be `<= self`, and whether the floor is
    /// decided (both endpoints have the same floor).
    pub fn floor(&self) -> (BigInt, bool) {
        let lo = bf_floor_int(&self.lo);
        let hi = bf_floor_int(&self.hi);
        let decided = lo == hi;
        (lo, decided)
    }

    fn monotone(&self, ctx: &IntervalCtx, f: impl Fn(&BigFloat, RoundingMode, &mut Consts) -> BigFloat) -> Interval {
        ctx.with_consts(|cc| {
            let lo = f(&self.lo, RoundingMode::Down, cc);
            let hi = f(&self.hi, RoundingMode::Up, cc);
            Interval::new(lo, hi)
        })
    }
}

fn bf_to_f64(x: &BigFloat) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_inf_pos() {
        return f64::INFINITY;
    }
    if x.is_inf_neg() {
        return f64::NEG_INFINITY;
    }
    let mut cc = Consts::new().expect("astro-float constant cache");
    match x.format(Radix::Dec, RoundingMode::ToEven, &mut cc) {
        Ok(s) => s.parse().unwrap_or(f64::NAN),
        Err(_) => f64::NAN,
    }
}

fn bf_floor_int(x: &BigFloat) -> BigInt {
    let f = x.floor();
    let mut cc = Consts::new().expect("astro-float constant cache");
    let s = f.format(Radix::Dec, RoundingMode::ToEven, &mut cc).unwrap_or_default();
    let (sign, digits, exp) = split_decimal(&s);
    let mut digits = digits;
    let shift = exp + 1 - digits.len() as i64;
    if shift >= 0 {
        digits.extend(std::iter::repeat(b'0').take(shift as usize));
    } else {
        let keep = (digits.len() as i64 + shift).max(0) as usize;
        digits.truncate(keep);
    }
    if digits.is_empty() {
        return BigInt::zero();
    }
    let v = BigInt::parse_bytes(&digits, 10).unwrap_or_default();
    if sign {
        -v
    } else {
        v
    }
}

/// Splits astro-float's decimal format `[-]d.ddd e[+-]x` into
/// (negative, mantissa digits without the point, decimal exponent of the
/// first digit).
fn split_decimal(s: &str) -> (bool, Vec<u8>, i64) {
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (mant, exp) = match body.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i64>().unwrap_or(0)),
        None => (body, 0),
    };
    let (int_part, frac_part) = mant.split_once('.').unwrap_or((mant, ""));
    let mut digits: Vec<u8> = int_part.bytes().chain(frac_part.bytes()).collect();
    let mut exp = exp + int_part.len() as i64 - 1;
    while digits.len() > 1 && digits[0] == b'0' {
        digits.remove(0);
        exp -= 1;
    }
    if digits.iter().all(|&d| d == b'0') {
        return (neg, vec![b'0'], 0);
    }
    (neg, digits, exp)
}

fn outward_decimal(x: &BigFloat, sig: usize, up: bool, ctx: &IntervalCtx) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_inf_pos() {
        return "inf".into();
    }
    if x.is_inf_neg() {
        return "-inf".into();
    }
    let rm = if up { RoundingMode::Up } else { RoundingMode::Down };
    let s = ctx
        .with_consts(|cc| x.format(Radix::Dec, rm, cc))
        .unwrap_or_else(|_| "NaN".into());
    let (neg, mut digits, mut exp) = split_decimal(&s);
    let sig = sig.max(1);
    if digits.len() > sig {
        let dropped_nonzero = digits[sig..].iter().any(|&d| d != b'0');
        digits.truncate(sig);
        // Away from zero when rounding up a positive or down a negative value.
        if dropped_nonzero && (up != neg) {
            let mut i = digits.len();
            loop {
                if i == 0 {
                    digits.insert(0, b'1');
                    digits.truncate(sig);
                    exp += 1;
                    break;
                }
                i -= 1;
                if digits[i] == b'9' {
                    digits[i] = b'0';
                } else {
                    digits[i] += 1;
                    break;
                }
            }
        }
    }
    while digits.len() > 1 && *digits.last().unwrap() == b'0' {
        digits.pop();
    }
    let mut out = String::new();
    if neg && digits != [b'0'] {
        out.push('-');
    }
    out.push(digits[0] as char);
    if digits.len() > 1 {
        out.push('.');
        out.extend(digits[1..].iter().map(|&d| d as char));
    }
    if exp != 0 {
        out.push('e');
        out.push_str(&exp.to_string());
    }
    out
}

impl Real for Interval {
    type Ctx = IntervalCtx;

    fn from_i64(v: i64, ctx: &IntervalCtx) -> Self {
        let x = BigFloat::from_i64(v, 64);
        let mut lo = x.clone();
        let mut hi = x;
        lo.set_precision(ctx.bits.max(64), RoundingMode::Down).expect("set precision");
        hi.set_precision(ctx.bits.max(64), RoundingMode::Up).expect("set precision");
        Interval::new(lo, hi)
    }

    fn from_bigint(v: &BigInt, ctx: &IntervalCtx) -> Self {
        // Horner over 64-bit limbs at a precision wide enough to be exact,
        // then directed rounding down to the working precision.
        let limbs = v.magnitude().to_u64_digits();
        let exact = 64 * (limbs.len() + 2);
        let half = BigFloat::from_u64(1 << 32, 64);
        let base = half.mul(&half, 128, RoundingMode::None);
        let mut acc = BigFloat::from_u64(0, 64);
        for &w in limbs.iter().rev() {
            acc = acc.mul(&base, exact, RoundingMode::None).add(&BigFloat::from_u64(w, 64), exact, RoundingMode::None);
        }
        if v.is_negative() {
            acc = acc.neg();
        }
        let p = ctx.bits.max(128);
        let mut lo = acc.clone();
        let mut hi = acc;
        lo.set_precision(p, RoundingMode::Down).expect("set precision");
        hi.set_precision(p, RoundingMode::Up).expect("set precision");
        Interval::new(lo, hi)
    }

    fn pi(ctx: &IntervalCtx) -> Self {
        ctx.with_consts(|cc| Interval::new(cc.pi(ctx.bits, RoundingMode::Down), cc.pi(ctx.bits, RoundingMode::Up)))
    }

    fn add(&self, rhs: &Self, ctx: &IntervalCtx) -> Self {
        Interval::new(
            self.lo.add(&rhs.lo, ctx.bits, RoundingMode::Down),
            self.hi.add(&rhs.hi, ctx.bits, RoundingMode::Up),
        )
    }

    fn sub(&self, rhs: &Self, ctx: &IntervalCtx) -> Self {
        Interval::new(
            self.lo.sub(&rhs.hi, ctx.bits, RoundingMode::Down),
            self.hi.sub(&rhs.lo, ctx.bits, RoundingMode::Up),
        )
    }

    fn mul(&self, rhs: &Self, ctx: &IntervalCtx) -> Self {
        let p = ctx.bits;
        let pairs = [(&self.lo, &rhs.lo), (&self.lo, &rhs.hi), (&self.hi, &rhs.lo), (&self.hi, &rhs.hi)];
        let mut lo: Option<BigFloat> = None;
        let mut hi: Option<BigFloat> = None;
        for (a, b) in pairs {
            let d = a.mul(b, p, RoundingMode::Down);
            let u = a.mul(b, p, RoundingMode::Up);
            lo = Some(match lo {
                None => d,
                Some(cur) => bf_min(cur, d),
            });
            hi = Some(match hi {
                None => u,
                Some(cur) => bf_max(cur, u),
            });
        }
        Interval::new(lo.unwrap(), hi.unwrap())
    }

    fn div(&self, rhs: &Self, ctx: &IntervalCtx) -> Self {
        let zero = BigFloat::from_i64(0, 64);
        if bf_le(&rhs.lo, &zero) && bf_le(&zero, &rhs.hi) {
            return Interval::everything();
        }
        let p = ctx.bits;
        let recip = Interval::new(
            BigFloat::from_i64(1, 64).div(&rhs.hi, p, RoundingMode::Down),
            BigFloat::from_i64(1, 64).div(&rhs.lo, p, RoundingMode::Up),
        );
        self.mul(&recip, ctx)
    }

    fn neg(&self) -> Self {
        Interval::new(self.hi.neg(), self.lo.neg())
    }

    fn sqrt(&self, ctx: &IntervalCtx) -> Self {
        let zero = BigFloat::from_i64(0, 64);
        if bf_lt(&self.hi, &zero) {
            return Interval::new(astro_float::NAN, astro_float::NAN);
        }
        let lo = if bf_lt(&self.lo, &zero) { zero } else { self.lo.clone() };
        Interval::new(lo.sqrt(ctx.bits, RoundingMode::Down), self.hi.sqrt(ctx.bits, RoundingMode::Up))
    }

    fn ln(&self, ctx: &IntervalCtx) -> Self {
        let p = ctx.bits;
        self.monotone(ctx, |x, rm, cc| x.ln(p, rm, cc))
    }

    fn exp(&self, ctx: &IntervalCtx) -> Self {
        let p = ctx.bits;
        self.monotone(ctx, |x, rm, cc| x.exp(p, rm, cc))
    }

    fn sin(&self, ctx: &IntervalCtx) -> Self {
        let p = ctx.bits;
        // Monotone on [-pi/2, pi/2]; 1.5 < pi/2 keeps the check simple.
        let limit = BigFloat::from_f64(1.5, 64);
        if bf_le(&limit.neg(), &self.lo) && bf_le(&self.hi, &limit) {
            self.monotone(ctx, |x, rm, cc| x.sin(p, rm, cc))
        } else {
            Interval::new(BigFloat::from_i64(-1, 64), BigFloat::from_i64(1, 64))
        }
    }

    fn sinh(&self, ctx: &IntervalCtx) -> Self {
        let p = ctx.bits;
        self.monotone(ctx, |x, rm, cc| x.sinh(p, rm, cc))
    }

    fn asinh(&self, ctx: &IntervalCtx) -> Self {
        let p = ctx.bits;
        self.monotone(ctx, |x, rm, cc| x.asinh(p, rm, cc))
    }

    fn acosh(&self, ctx: &IntervalCtx) -> Self {
        let p = ctx.bits;
        let one = BigFloat::from_i64(1, 64);
        let clamped = Interval::new(bf_max(self.lo.clone(), one.clone()), bf_max(self.hi.clone(), one));
        clamped.monotone(ctx, |x, rm, cc| x.acosh(p, rm, cc))
    }

    fn to_f64(&self) -> f64 {
        let lo = bf_to_f64(&self.lo);
        let hi = bf_to_f64(&self.hi);
        if lo == hi {
            lo
        } else {
            lo + (hi - lo) / 2.0
        }
    }

    fn floor_certified(&self) -> (BigInt, bool) {
        self.floor()
    }

    fn cmp_certified(&self, other: &Self) -> Option<Ordering> {
        if !self.is_valid() || !other.is_valid() {
            return None;
        }
        if bf_lt(&self.hi, &other.lo) {
            Some(Ordering::Less)
        } else if bf_lt(&other.hi, &self.lo) {
            Some(Ordering::Greater)
        } else if self.lo.cmp(&self.hi) == Some(0)
            && other.lo.cmp(&other.hi) == Some(0)
            && self.lo.cmp(&other.lo) == Some(0)
        {
            Some(Ordering::Equal)
        } else {
            None
        }
    }
}

/// Parses a decimal literal (`12`, `-0.5`, `1.01494`, `3e-4`) into an exact
/// rational.
pub fn parse_decimal(text: &str) -> Result<BigRational, ParseNumberError> {
    let err = || ParseNumberError(text.to_string());
    let t = text.trim();
    if t.is_empty() {
        return Err(err());
    }
    let (mant, exp) = match t.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i64>().map_err(|_| err())?),
        None => (t, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int_part, frac_part) = mant.split_once('.').unwrap_or((mant, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(err());
    }
    let digits = format!("{int_part}{frac_part}");
    let mut numer: BigInt = digits.parse().map_err(|_| err())?;
    if neg {
        numer = -numer;
    }
    let scale = exp - frac_part.len() as i64;
    if scale.unsigned_abs() > 100_000 {
        return Err(err());
    }
    let ten = BigInt::from(10);
    let p = num_traits::pow(ten, scale.unsigned_abs() as usize);
    Ok(if scale >= 0 {
        BigRational::from_integer(numer * p)
    } else {
        BigRational::new(numer, p)
    })
}

/// Parses `p/q` or a decimal literal into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational, ParseNumberError> {
    let Some((n, d)) = text.split_once('/') else { return parse_decimal(text) };
    let err = || ParseNumberError(text.to_string());
    let n: BigInt = n.trim().parse().map_err(|_| err())?;
    let d: BigInt = d.trim().parse().map_err(|_| err())?;
    if d.is_zero() {
        return Err(err());
    }
    Ok(BigRational::new(n, d))
}

/// Exact decimal rendering of a rational when its denominator divides a
/// power of ten, `p/q` otherwise.
pub fn format_rational(v: &BigRational) -> String {
    if v.denom() == &BigInt::from(1) {
        return v.numer().to_string();
    }
    let mut d = v.denom().clone();
    let (mut twos, mut fives) = (0usize, 0usize);
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    while d.is_even() {
        d /= &two;
        twos += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        fives += 1;
    }
    if d != BigInt::from(1) {
        return format!("{}/{}", v.numer(), v.denom());
    }
    let places = twos.max(fives);
    let scaled = v.numer() * num_traits::pow(BigInt::from(10), places) / v.denom();
    let (sign, mag) = (scaled.sign(), scaled.magnitude().to_string());
    let padded = format!("{:0>width$}", mag, width = places + 1);
    let (i, f) = padded.split_at(padded.len() - places);
    let s = format!("{i}.{f}");
    if sign == Sign::Minus {
        format!("-{s}")
    } else {
        s
    }
}
