use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Signed, Zero};
use serde::Serialize;

use crate::error::BoundsError;
use crate::num_serde;
use crate::scalar::{Interval, IntervalCtx, Real};

/// `T(n) = 2 * 3^n` and `A(n) / pi = 27^n (9n^2 + 4n)`, exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundConstants {
    #[serde(rename = "T", with = "num_serde::bigint")]
    pub t: BigInt,
    #[serde(rename = "A_over_pi", with = "num_serde::bigint")]
    pub a_over_pi: BigInt,
}

pub fn bound_constants(n: u64) -> BoundConstants {
    let nn = BigInt::from(n);
    let t = BigInt::from(2) * Pow::pow(BigInt::from(3), n);
    let a_over_pi = Pow::pow(BigInt::from(27), n) * (BigInt::from(9) * &nn * &nn + BigInt::from(4) * &nn);
    BoundConstants { t, a_over_pi }
}

fn int<R: Real>(v: i64, ctx: &R::Ctx) -> R {
    R::from_i64(v, ctx)
}

fn show<R: Real>(v: &R) -> String {
    format!("{:.6e}", v.to_f64())
}

/// `c = 4 pi l / sqrt(3)`.
fn cgm_c<R: Real>(l: &R, ctx: &R::Ctx) -> R {
    int::<R>(4, ctx).mul(&R::pi(ctx), ctx).mul(l, ctx).div(&int::<R>(3, ctx).sqrt(ctx), ctx)
}

/// Right end of the admissible length range, `(sqrt 3 / 2 pi)(sqrt 2 - 1)`.
pub fn cgm_domain_end<R: Real>(ctx: &R::Ctx) -> R {
    let s2m1 = int::<R>(2, ctx).sqrt(ctx).sub(&int::<R>(1, ctx), ctx);
    int::<R>(3, ctx).sqrt(ctx).mul(&s2m1, ctx).div(&int::<R>(2, ctx).mul(&R::pi(ctx), ctx), ctx)
}

/// `sinh^2 r = sqrt(1 - c) / c - 1/2` with no domain check.
pub fn cgm_sinh2<R: Real>(l: &R, ctx: &R::Ctx) -> R {
    let c = cgm_c(l, ctx);
    let one = int::<R>(1, ctx);
    one.sub(&c, ctx).sqrt(ctx).div(&c, ctx).sub(&one.div(&int::<R>(2, ctx), ctx), ctx)
}

fn check_length<R: Real>(l: &R, ctx: &R::Ctx) -> Result<(), BoundsError> {
    let end = cgm_domain_end::<R>(ctx);
    if l.certainly_gt(&int::<R>(0, ctx)) && l.certainly_lt(&end) {
        Ok(())
    } else {
        Err(BoundsError::Domain {
            quantity: "l".into(),
            value: show(l),
            domain: format!("(0, (sqrt 3 / 2 pi)(sqrt 2 - 1) = {})", show(&end)),
        })
    }
}

/// Embedded tube radius around a closed geodesic of length `l`.
pub fn cgm_tube_radius<R: Real>(l: &R, ctx: &R::Ctx) -> Result<R, BoundsError> {
    check_length(l, ctx)?;
    Ok(cgm_sinh2(l, ctx).sqrt(ctx).asinh(ctx))
}

/// Embedded cone radius about a cone axis of order `q`; `0` for `q <= 6`.
pub fn martin_cone_radius<R: Real>(q: &BigInt, ctx: &R::Ctx) -> Result<R, BoundsError> {
    if q < &BigInt::from(2) {
        return Err(BoundsError::Domain { quantity: "q".into(), value: q.to_string(), domain: "q >= 2".into() });
    }
    if q <= &BigInt::from(6) {
        return Ok(int::<R>(0, ctx));
    }
    let s = R::pi(ctx).div(&R::from_bigint(q, ctx), ctx).sin(ctx);
    Ok(int::<R>(1, ctx).div(&int::<R>(2, ctx).mul(&s, ctx), ctx).acosh(ctx))
}

fn decide(o: Option<Ordering>) -> Option<bool> {
    o.map(|o| o == Ordering::Greater)
}

/// Whether `pi sinh^2 r(l) > A(plen)`, or `None` if undecided.
pub fn tube_inequality(l: &Interval, plen: u64, ctx: &IntervalCtx) -> Option<bool> {
    let k = Interval::from_bigint(&bound_constants(plen).a_over_pi, ctx);
    decide(cgm_sinh2(l, ctx).cmp_certified(&k))
}

/// Whether `pi sinh^2 r(q) > A(plen)` for the cone radius, with
/// `sinh^2 r = 1 / (4 sin^2(pi/q)) - 1`.
pub fn cone_inequality(q: &BigInt, plen: u64, ctx: &IntervalCtx) -> Option<bool> {
    if q <= &BigInt::from(6) {
        return Some(false);
    }
    let k = Interval::from_bigint(&bound_constants(plen).a_over_pi, ctx);
    let s = Interval::pi(ctx).div(&Interval::from_bigint(q, ctx), ctx).sin(ctx);
    let s2 = Interval::from_i64(1, ctx)
        .div(&Interval::from_i64(4, ctx).mul(&s, ctx).mul(&s, ctx), ctx)
        .sub(&Interval::from_i64(1, ctx), ctx);
    decide(s2.cmp_certified(&k))
}

/// Certified bracket for the critical geodesic length: the tube inequality
/// holds at `below` and fails at `above`, both exact points.
#[derive(Clone, Debug)]
pub struct CriticalLength {
    pub below: Interval,
    pub above: Interval,
    /// True when `above` is the domain end itself (no inequality to fail).
    pub at_domain_end: bool,
}

impl CriticalLength {
    pub fn estimate(&self) -> Interval {
        self.below.hull(&self.above)
    }
}

pub fn critical_geodesic_length(plen: u64, ctx: &IntervalCtx) -> Result<CriticalLength, BoundsError> {
    let k = bound_constants(plen).a_over_pi;
    let end = cgm_domain_end::<Interval>(ctx);
    if k.is_zero() {
        return Ok(CriticalLength { below: end.mid(ctx), above: end.mid(ctx), at_domain_end: true });
    }
    // With M = K + 1/2 the crossing has c in [1/(2M), 1/M].
    let m = Interval::from_ratio(&(BigRational::from(k) + BigRational::new(1.into(), 2.into())), ctx);
    let to_l = |c: Interval| c.mul(&Interval::from_i64(3, ctx).sqrt(ctx), ctx).div(&Interval::from_i64(4, ctx).mul(&Interval::pi(ctx), ctx), ctx);
    let one = Interval::from_i64(1, ctx);
    let mut lo = to_l(one.div(&Interval::from_i64(2, ctx).mul(&m, ctx), ctx)).mid(ctx);
    let mut hi = to_l(one.div(&m, ctx)).mid(ctx);
    let precision = || BoundsError::Precision("critical geodesic length".into());
    for _ in 0..64 {
        match tube_inequality(&lo, plen, ctx) {
            Some(true) => break,
            Some(false) => lo = lo.div(&Interval::from_i64(2, ctx), ctx).mid(ctx),
            None => return Err(precision()),
        }
    }
    if tube_inequality(&lo, plen, ctx) != Some(true) || tube_inequality(&hi, plen, ctx) != Some(false) {
        return Err(precision());
    }
    for _ in 0..ctx.bits() {
        let mid = lo.hull(&hi).mid(ctx);
        match tube_inequality(&mid, plen, ctx) {
            Some(true) => lo = mid,
            Some(false) => hi = mid,
            None => break,
        }
        if lo.hull(&hi).relative_width() < f64::powi(2.0, -(ctx.bits() as i32 - 8).min(1000)) {
            break;
        }
    }
    Ok(CriticalLength { below: lo, above: hi, at_domain_end: false })
}

/// Smallest `q` with `pi sinh^2 r(q) > A(plen)`, certified by the inequality
/// failing at `q - 1` and holding at `q`.
pub fn critical_cone_order(plen: u64, ctx: &IntervalCtx) -> Result<BigInt, BoundsError> {
    let k = bound_constants(plen).a_over_pi;
    // Precision must resolve consecutive q near 2 pi sqrt(K + 1).
    let work = ctx.at_least_bits(k.bits() as usize + 128);
    let guess = Interval::from_i64(2, &work)
        .mul(&Interval::pi(&work), &work)
        .mul(&Interval::from_bigint(&(&k + 1), &work).sqrt(&work), &work);
    let mut q = guess.floor_certified().0.max(BigInt::from(7));
    let err = || BoundsError::Precision("critical cone order".into());
    loop {
        match cone_inequality(&q, plen, &work) {
            Some(true) => break,
            Some(false) => q += 1,
            None => return Err(err()),
        }
    }
    loop {
        let prev = &q - 1;
        match cone_inequality(&prev, plen, &work) {
            Some(true) => q = prev,
            Some(false) => break,
            None => return Err(err()),
        }
    }
    Ok(q)
}

/// Volume, covering degree and diameter bounds for a closed hyperbolic
/// manifold whose fundamental group has presentation length `plen`.
#[derive(Clone, Debug)]
pub struct GlobalBounds {
    pub plen: u64,
    pub constants: BoundConstants,
    /// `pi * plen`.
    pub volume_bound: Interval,
    /// `floor(pi * plen / vol)`.
    pub degree_bound: Option<BigInt>,
    /// `2 eps plen / (sinh eps - eps)`.
    pub diam_thick: Option<Interval>,
    /// `arcsinh sqrt(A(plen) / pi)`.
    pub tube_r_max: Interval,
    /// `diam_thick + 2 (eps + 2 tube_r_max)`.
    pub diam_total: Option<Interval>,
}

/// `arcsinh sqrt(K)` with `K = 27^n (9n^2 + 4n)`, via logarithms so large
/// `n` never forms `K` as a float.
pub fn tube_radius_max(plen: u64, ctx: &IntervalCtx) -> Interval {
    if plen == 0 {
        return Interval::from_i64(0, ctx);
    }
    let n = BigInt::from(plen);
    let poly = BigInt::from(9) * &n * &n + BigInt::from(4) * &n;
    let half_log = Interval::from_bigint(&n, ctx)
        .mul(&Interval::from_i64(27, ctx).ln(ctx), ctx)
        .add(&Interval::from_bigint(&poly, ctx).ln(ctx), ctx)
        .div(&Interval::from_i64(2, ctx), ctx);
    let one = Interval::from_i64(1, ctx);
    let tail = half_log.mul(&Interval::from_i64(-2, ctx), ctx).exp(ctx);
    half_log.add(&one.add(&one.add(&tail, ctx).sqrt(ctx), ctx).ln(ctx), ctx)
}

pub fn global_bounds(
    plen: u64,
    vol: Option<&BigRational>,
    eps: Option<&BigRational>,
    ctx: &IntervalCtx,
) -> Result<GlobalBounds, BoundsError> {
    let l = Interval::from_bigint(&BigInt::from(plen), ctx);
    let volume_bound = Interval::pi(ctx).mul(&l, ctx);
    let degree_bound = match vol {
        None => None,
        Some(v) if !v.is_positive() => {
            return Err(BoundsError::Domain { quantity: "vol".into(), value: v.to_string(), domain: "vol > 0".into() })
        }
        Some(_) if plen == 0 => Some(BigInt::zero()),
        Some(v) => {
            let (d, sure) = volume_bound.div(&Interval::from_ratio(v, ctx), ctx).floor_certified();
            if !sure {
                return Err(BoundsError::Precision("degree bound".into()));
            }
            Some(d)
        }
    };
    let tube_r_max = tube_radius_max(plen, ctx);
    let (diam_thick, diam_total) = match eps {
        None => (None, None),
        Some(e) if !e.is_positive() => {
            return Err(BoundsError::Domain { quantity: "eps".into(), value: e.to_string(), domain: "eps > 0".into() })
        }
        Some(e) => {
            let e = Interval::from_ratio(e, ctx);
            let denom = e.sinh(ctx).sub(&e, ctx);
            if !denom.certainly_gt(&Interval::from_i64(0, ctx)) {
                return Err(BoundsError::Precision("sinh(eps) - eps".into()));
            }
            let thick = Interval::from_i64(2, ctx).mul(&e, ctx).mul(&l, ctx).div(&denom, ctx);
            let two = Interval::from_i64(2, ctx);
            let total = thick.add(&two.mul(&e.add(&two.mul(&tube_r_max, ctx), ctx), ctx), ctx);
            (Some(thick), Some(total))
        }
    };
    Ok(GlobalBounds {
        plen,
        constants: bound_constants(plen),
        volume_bound,
        degree_bound,
        diam_thick,
        tube_r_max,
        diam_total,
    })
}
