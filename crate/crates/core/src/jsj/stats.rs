use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::validate::structural_diagnostics;
use super::{DecoratedTree, HyperbolicCatalog, NodeKind};
use crate::bounds::bound_constants;
use crate::error::JsjError;
use crate::num_serde;
use crate::scalar::{parse_decimal, Interval, IntervalCtx, Real};

/// Enclosure of the regular ideal tetrahedron volume.
pub const GROMOV_V3_LO: &str = "1.01494";
pub const GROMOV_V3_HI: &str = "1.01495";

/// Largest JSJ piece count, `4n - 3`, for a knot group of rank `n`.
pub fn weidmann_cap(rank: u64) -> i128 {
    4 * rank as i128 - 3
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PieceStats {
    pub pieces: usize,
    /// Smallest rank `n >= 1` with `pieces <= 4n - 3`.
    pub min_rank: u64,
    pub rank: Option<u64>,
    pub weidmann_cap: Option<i128>,
    pub weidmann_ok: Option<bool>,
    pub hyperbolic_pieces: usize,
    #[serde(with = "num_serde::rational")]
    pub volume_sum: BigRational,
    /// `volume_sum <= pi * plen`; true only when certified.
    pub volume_ok: bool,
    /// False when the comparison could not be decided at working precision.
    pub volume_decided: bool,
    /// `volume_sum / v3` with `v3` in its stated enclosure.
    #[serde(with = "num_serde::rational")]
    pub gromov_norm_lo: BigRational,
    #[serde(with = "num_serde::rational")]
    pub gromov_norm_hi: BigRational,
    pub max_cable_q: Option<i64>,
    #[serde(with = "num_serde::bigint")]
    pub cable_q_cutoff: BigInt,
    pub cable_q_ok: bool,
}

/// Piece count against the rank cap, hyperbolic volume against `pi * plen`,
/// and cable parameters against `2 * 3^plen`.
pub fn piece_stats(
    t: &DecoratedTree,
    cat: &HyperbolicCatalog,
    plen: u64,
    rank: Option<u64>,
    ctx: &IntervalCtx,
) -> Result<PieceStats, JsjError> {
    let d = structural_diagnostics(t);
    if !d.is_empty() {
        return Err(JsjError::Invalid(d));
    }
    let pieces = t.vertex_count();
    let mut volume_sum = BigRational::zero();
    let mut hyperbolic_pieces = 0;
    let mut max_cable_q: Option<i64> = None;
    for n in &t.nodes {
        match &n.kind {
            NodeKind::Hyperbolic { catalog_id, .. } => {
                volume_sum += cat.resolve(catalog_id)?.volume_exact()?;
                hyperbolic_pieces += 1;
            }
            NodeKind::Cable { q, .. } => max_cable_q = Some(max_cable_q.map_or(*q, |m| m.max(*q))),
            _ => {}
        }
    }

    let (volume_ok, volume_decided) = if volume_sum.is_zero() {
        (true, true)
    } else {
        let bound = Interval::pi(ctx).mul(&Interval::from_i64(plen as i64, ctx), ctx);
        match Interval::from_ratio(&volume_sum, ctx).cmp_certified(&bound) {
            Some(Ordering::Greater) => (false, true),
            Some(_) => (true, true),
            None => (false, false),
        }
    };

    let v3_lo = parse_decimal(GROMOV_V3_LO)?;
    let v3_hi = parse_decimal(GROMOV_V3_HI)?;
    let cable_q_cutoff = bound_constants(plen).t;
    let cable_q_ok = max_cable_q.map_or(true, |q| BigInt::from(q) <= cable_q_cutoff);
    let min_rank = ((pieces as u64 + 3).div_ceil(4)).max(1);
    let cap = rank.map(weidmann_cap);

    Ok(PieceStats {
        pieces,
        min_rank,
        rank,
        weidmann_cap: cap,
        weidmann_ok: cap.map(|c| pieces as i128 <= c),
        hyperbolic_pieces,
        gromov_norm_lo: &volume_sum / &v3_hi,
        gromov_norm_hi: &volume_sum / &v3_lo,
        volume_sum,
        volume_ok,
        volume_decided,
        max_cable_q,
        cable_q_cutoff,
        cable_q_ok,
    })
}
