//! Witten zeta functions of type I (symmetric spaces) and type II (groups).

use crate::dims::{rank_one_factored, DimEvaluator, WeylEvaluator};
use crate::error::{Error, Result};
use crate::rat::to_f64;
use crate::rootdata::{lookup_group, lookup_space, SymmetricSpaceDescriptor};
use crate::series::{max_terms, EvalResult, PowerFactor, PowerProductSeries};
use crate::specfun::{hurwitz_zeta, neumaier};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZetaRequest {
    pub target: String,
    pub s: f64,
    pub tolerance: f64,
    pub max_box: u64,
}

impl ZetaRequest {
    pub fn new(target: &str, s: f64) -> Self {
        ZetaRequest {
            target: target.to_string(),
            s,
            tolerance: 1e-8,
            max_box: 4096,
        }
    }

    pub fn tol(mut self, t: f64) -> Self {
        self.tolerance = t;
        self
    }

    pub fn max_box(mut self, b: u64) -> Self {
        self.max_box = b;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0) {
            return Err(Error::Domain("tolerance must be positive".into()));
        }
        if !self.s.is_finite() {
            return Err(Error::Domain("s must be finite".into()));
        }
        Ok(())
    }
}

/// Sum of `f` over weights whose largest coordinate lies in (lo, hi].
/// Chunks are reduced in a fixed order so the result does not depend on
/// the thread count.
pub(crate) fn shell_sum<F>(rank: usize, lo: Option<u64>, hi: u64, f: F) -> Result<(f64, u64)>
where
    F: Fn(&[u64]) -> Result<f64> + Sync,
{
    let side = hi + 1;
    let total = (side as f64).powi(rank as i32);
    if total > 4e9 {
        return Err(Error::NotConverged(format!("box {hi} in rank {rank} is too large")));
    }
    let total = side.pow(rank as u32);
    const CHUNK: u64 = 1 << 14;
    let chunks = total.div_ceil(CHUNK);
    let parts: Vec<Result<(f64, f64, u64)>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut s = 0.0;
            let mut comp = 0.0;
            let mut count = 0;
            let mut w = vec![0u64; rank];
            for idx in c * CHUNK..((c + 1) * CHUNK).min(total) {
                let mut r = idx;
                let mut mx = 0;
                for x in w.iter_mut() {
                    *x = r % side;
                    mx = mx.max(*x);
                    r /= side;
                }
                if lo.is_some_and(|lo| mx <= lo) {
                    continue;
                }
                neumaier(&mut s, &mut comp, f(&w)?);
                count += 1;
            }
            Ok((s, comp, count))
        })
        .collect();
    let mut s = 0.0;
    let mut comp = 0.0;
    let mut n = 0;
    for p in parts {
        let (a, b, k) = p?;
        neumaier(&mut s, &mut comp, a);
        neumaier(&mut s, &mut comp, b);
        n += k;
    }
    Ok((s + comp, n))
}

/// Growing-box summation with a doubling schedule. Converged when two
/// consecutive boxes differ by less than tol/2; the tail is a geometric
/// extrapolation of the last two increments and is flagged heuristic.
pub(crate) fn growing_box<F>(rank: usize, tol: f64, max_box: u64, start: u64, f: F) -> Result<EvalResult>
where
    F: Fn(&[u64]) -> Result<f64> + Sync,
{
    let cap = max_terms();
    let (mut total, mut terms) = shell_sum(rank, None, start, &f)?;
    let mut b = start;
    let mut prev_inc = f64::INFINITY;
    loop {
        let nb = (b * 2).min(max_box.max(start));
        if nb == b || (nb + 1).saturating_pow(rank as u32) > cap {
            return Ok(EvalResult {
                value: total,
                tail_bound: if prev_inc.is_finite() { prev_inc } else { f64::INFINITY },
                terms_used: terms,
                converged: false,
                rigorous: false,
            });
        }
        let (inc, k) = shell_sum(rank, Some(b), nb, &f)?;
        total += inc;
        terms += k;
        b = nb;
        let inc = inc.abs();
        if inc < tol / 2.0 {
            let r = if prev_inc.is_finite() && prev_inc > 0.0 {
                inc / prev_inc
            } else {
                0.5
            };
            let tail = if r < 1.0 { inc * r / (1.0 - r) } else { inc };
            if tail <= tol {
                return Ok(EvalResult {
                    value: total,
                    tail_bound: tail,
                    terms_used: terms,
                    converged: true,
                    rigorous: false,
                });
            }
        }
        prev_inc = inc;
    }
}

fn rank_one_series(space: &SymmetricSpaceDescriptor, s: f64) -> Result<PowerProductSeries> {
    let f = rank_one_factored(space)?;
    let factors = f
        .factors
        .iter()
        .map(|(k, xi)| {
            let k = to_f64(k);
            PowerFactor {
                a: k,
                b: k,
                e: s * *xi as f64,
            }
        })
        .collect();
    Ok(PowerProductSeries::new(factors, 0))
}

pub fn zeta_type_I(req: &ZetaRequest) -> Result<EvalResult> {
    req.validate()?;
    let space = lookup_space(&req.target)?;
    zeta_type_I_space(&space, req)
}

pub fn zeta_type_I_space(space: &SymmetricSpaceDescriptor, req: &ZetaRequest) -> Result<EvalResult> {
    req.validate()?;
    let s = req.s;
    if space.rank == 1 {
        let deg = (space.dim - 1) as f64;
        if !(s * deg > 1.0) {
            return Err(Error::Divergence(format!(
                "s * (dim - 1) = {} <= 1 for {}",
                s * deg,
                space.space_id
            )));
        }
        return rank_one_series(space, s)?.sum(req.tolerance);
    }
    if !(s > 0.0) {
        return Err(Error::Divergence(format!("s = {s} <= 0")));
    }
    let ev = DimEvaluator::new(space)?;
    growing_box(space.rank, req.tolerance, req.max_box, 8, |w| {
        Ok(ev.eval_f64(w)?.powf(-s))
    })
}

/// Type I zeta by the growing-box route even for rank one (cross-check path).
pub fn zeta_type_I_box(space: &SymmetricSpaceDescriptor, req: &ZetaRequest) -> Result<EvalResult> {
    req.validate()?;
    let ev = DimEvaluator::new(space)?;
    let s = req.s;
    growing_box(space.rank, req.tolerance, req.max_box, 8, |w| {
        Ok(ev.eval_f64(w)?.powf(-s))
    })
}

pub fn zeta_type_II(req: &ZetaRequest) -> Result<EvalResult> {
    req.validate()?;
    let group = lookup_group(&req.target)?;
    let s = req.s;
    let rank = group.root_system.rank;
    if rank == 1 {
        // every simply connected rank-one group is SU(2): d_n = n + 1
        if !(s > 1.0) {
            return Err(Error::Divergence(format!("s = {s} <= 1 for a rank-one group")));
        }
        let series = PowerProductSeries::new(vec![PowerFactor { a: 1.0, b: 1.0, e: s }], 0);
        return series.sum(req.tolerance);
    }
    if !(s > 0.0) {
        return Err(Error::Divergence(format!("s = {s} <= 0")));
    }
    let ev = WeylEvaluator::new(&group);
    growing_box(rank, req.tolerance, req.max_box, 8, |w| Ok(ev.eval_f64(w)?.powf(-s)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HurwitzReport {
    pub s: f64,
    pub zeta_type_i: f64,
    pub tail_bound: f64,
    pub hurwitz_half: f64,
    pub scaled_hurwitz: f64,
    pub difference: f64,
}

/// Compares the type I zeta of S^2 with 2^-s zeta(s, 1/2). The series
/// sum_n (2n+1)^-s equals the scaled Hurwitz value, not zeta(s, 1/2) itself.
pub fn hurwitz_relation_check(m: u32, s: f64) -> Result<HurwitzReport> {
    if m != 2 {
        return Err(Error::Domain(format!(
            "the Hurwitz relation is modelled for S^2 only, got m = {m}"
        )));
    }
    let z = zeta_type_I(&ZetaRequest::new("S:2", s).tol(1e-13))?;
    let h = hurwitz_zeta(s, 0.5)?;
    let scaled = 2f64.powf(-s) * h;
    Ok(HurwitzReport {
        s,
        zeta_type_i: z.value,
        tail_bound: z.tail_bound,
        hurwitz_half: h,
        scaled_hurwitz: scaled,
        difference: (z.value - scaled).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn type_one_examples() {
        let r = zeta_type_I(&ZetaRequest::new("S:3", 1.0)).unwrap();
        assert!((r.value - PI * PI / 6.0).abs() < 1e-8);
        assert!(r.converged && r.rigorous);
        let r = zeta_type_I(&ZetaRequest::new("S:2", 2.0)).unwrap();
        assert!((r.value - PI * PI / 8.0).abs() < 1e-8);
        assert!(r.tail_bound < 1e-8);
    }

    #[test]
    fn divergence_threshold() {
        assert!(matches!(
            zeta_type_I(&ZetaRequest::new("S:2", 1.0)),
            Err(Error::Divergence(_))
        ));
        assert!(zeta_type_I(&ZetaRequest::new("S:2", 1.01)).is_ok());
        assert!(matches!(
            zeta_type_I(&ZetaRequest::new("S:3", 0.5)),
            Err(Error::Divergence(_))
        ));
        assert!(matches!(
            zeta_type_II(&ZetaRequest::new("SU:2", 1.0)),
            Err(Error::Divergence(_))
        ));
        assert!(matches!(
            zeta_type_I(&ZetaRequest::new("EVII", 2.0)),
            Err(Error::UnsupportedSpace { .. })
        ));
    }

    #[test]
    fn type_two_su2() {
        let r = zeta_type_II(&ZetaRequest::new("SU:2", 2.0)).unwrap();
        assert!((r.value - PI * PI / 6.0).abs() < 1e-8);
        let r = zeta_type_II(&ZetaRequest::new("SU:2", 4.0).tol(1e-12)).unwrap();
        assert!((r.value - PI.powi(4) / 90.0).abs() < 1e-10);
    }

    #[test]
    fn su3_at_two_is_four_thirds_zeta_six() {
        let r = zeta_type_II(&ZetaRequest::new("SU:3", 2.0)).unwrap();
        let z6 = PI.powi(6) / 945.0;
        assert!((r.value - 4.0 * z6 / 3.0).abs() < 1e-7, "{r:?}");
        assert!(!r.rigorous);
    }

    #[test]
    fn decreasing_in_s_and_limit_one() {
        for id in ["S:4", "CP:2", "AI:3"] {
            let mut last = f64::INFINITY;
            for s in [1.5, 2.0, 2.5, 3.0, 4.0] {
                let v = zeta_type_I(&ZetaRequest::new(id, s).tol(1e-9)).unwrap().value;
                assert!(v < last, "{id} s={s}");
                last = v;
            }
            let v = zeta_type_I(&ZetaRequest::new(id, 40.0)).unwrap().value;
            assert!(v >= 1.0 && v - 1.0 < 1e-6, "{id}");
        }
    }

    #[test]
    fn rank_one_paths_agree() {
        for id in ["S:5", "CP:2"] {
            let s = lookup_space(id).unwrap();
            let req = ZetaRequest::new(id, 2.0).tol(1e-10);
            let a = zeta_type_I_space(&s, &req).unwrap();
            let b = zeta_type_I_box(&s, &req).unwrap();
            assert!((a.value - b.value).abs() < 1e-8, "{id}: {} vs {}", a.value, b.value);
        }
    }

    #[test]
    fn hurwitz_report() {
        for s in [2.0, 3.0] {
            let r = hurwitz_relation_check(2, s).unwrap();
            assert!(r.difference < 1e-10);
        }
        assert!(hurwitz_relation_check(2, 1.2).unwrap().difference < 1e-8);
        let r = hurwitz_relation_check(2, 2.0).unwrap();
        assert!((r.zeta_type_i - PI * PI / 8.0).abs() < 1e-12);
        assert!(hurwitz_relation_check(3, 2.0).is_err());
    }

    #[test]
    fn max_box_exhaustion_reports_unconverged() {
        let r = zeta_type_II(&ZetaRequest::new("SU:3", 1.0).max_box(16)).unwrap();
        assert!(!r.converged);
    }
}
