//! 2d Yang-Mills partition functions on closed and bordered surfaces.
//!
//! Z^II = sum_nu q^{c2(nu)} d_nu^{-(2g-2)} over dominant weights of a group and
//! Z^I = sum_nu q^{c2(nu)} d_nu^{-(2g-1)} over class-one weights of U/K, with
//! q = exp(-area). At q = 1 they reduce to the zeta functions at s = 2g-2 and
//! s = 2g-1.

use crate::dims::{DimEvaluator, WeylEvaluator};
use crate::error::{Error, Result};
use crate::rootdata::{lookup_group, lookup_space};
use crate::series::{max_terms, EvalResult};
use crate::specfun::{neumaier, sin_pi};
use crate::zeta::{shell_sum, zeta_type_I, zeta_type_II, ZetaRequest};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurfaceParams {
    pub genus: u32,
    pub area: f64,
    pub holonomy_angles: Vec<f64>,
}

impl SurfaceParams {
    pub fn closed(genus: u32, area: f64) -> Self {
        SurfaceParams {
            genus,
            area,
            holonomy_angles: vec![],
        }
    }

    pub fn with_holes(genus: u32, area: f64, angles: Vec<f64>) -> Self {
        SurfaceParams {
            genus,
            area,
            holonomy_angles: angles,
        }
    }

    pub fn n_holes(&self) -> usize {
        self.holonomy_angles.len()
    }

    pub fn q(&self) -> f64 {
        (-self.area).exp()
    }

    fn validate(&self) -> Result<()> {
        if !(self.area >= 0.0) || !self.area.is_finite() {
            return Err(Error::Domain(format!(
                "area must be finite and >= 0, got {}",
                self.area
            )));
        }
        Ok(())
    }
}

/// Sum of a rank-one series t_n = exp(-area c2(n)) g(n) with |g(n)| <= d(n)^p.
///
/// Once the ratio bound r_n = q^{c2(n+1)-c2(n)} (d(n+1)/d(n))^max(p,0) drops
/// below one it keeps decreasing (c2 is convex, d(n+1)/d(n) decreases), so the
/// remainder is at most |t|_n r_n / (1 - r_n).
fn rank_one_q_series(
    area: f64,
    tol: f64,
    c2: impl Fn(u64) -> f64,
    d: impl Fn(u64) -> f64,
    p: f64,
    term: impl Fn(u64) -> f64,
) -> Result<EvalResult> {
    let cap = max_terms();
    let mut s = 0.0;
    let mut comp = 0.0;
    let mut n = 0u64;
    loop {
        let t = term(n);
        neumaier(&mut s, &mut comp, t);
        let major = (-area * c2(n)).exp() * d(n).powf(p);
        let r = (-area * (c2(n + 1) - c2(n))).exp() * (d(n + 1) / d(n)).powf(p.max(0.0));
        n += 1;
        if r < 1.0 {
            let bound = major * r / (1.0 - r);
            if bound <= tol * 0.5 || major == 0.0 {
                let v = s + comp;
                return Ok(EvalResult {
                    value: v,
                    tail_bound: bound + 4.0 * f64::EPSILON * v.abs() * (n as f64).sqrt(),
                    terms_used: n,
                    converged: true,
                    rigorous: true,
                });
            }
        }
        if n >= cap {
            return Ok(EvalResult {
                value: s + comp,
                tail_bound: f64::INFINITY,
                terms_used: n,
                converged: false,
                rigorous: true,
            });
        }
    }
}

/// Shell-by-shell summation for rank >= 2 with gaussian damping. Stops once a
/// shell contributes less than tol * (1 - r) / 2 where r is the ratio of the
/// last two shells; flagged heuristic.
fn shells_q_series<F>(rank: usize, tol: f64, f: F) -> Result<EvalResult>
where
    F: Fn(&[u64]) -> Result<f64> + Sync,
{
    let cap = max_terms();
    let (mut total, mut terms) = shell_sum(rank, None, 0, &f)?;
    let mut prev = f64::INFINITY;
    let mut b = 0u64;
    loop {
        let (inc, k) = shell_sum(rank, Some(b), b + 1, &f)?;
        b += 1;
        total += inc;
        terms += k;
        let a = inc.abs();
        if a == 0.0 && b >= 2 {
            return Ok(EvalResult {
                value: total,
                tail_bound: 0.0,
                terms_used: terms,
                converged: true,
                rigorous: false,
            });
        }
        let r = if prev.is_finite() && prev > 0.0 { a / prev } else { 1.0 };
        if r < 1.0 && a * r / (1.0 - r) <= tol * 0.5 && b >= 3 {
            return Ok(EvalResult {
                value: total,
                tail_bound: a * r / (1.0 - r),
                terms_used: terms,
                converged: true,
                rigorous: false,
            });
        }
        if (b + 2).saturating_pow(rank as u32) > cap {
            return Ok(EvalResult {
                value: total,
                tail_bound: f64::INFINITY,
                terms_used: terms,
                converged: false,
                rigorous: false,
            });
        }
        prev = a;
    }
}

pub fn partition_type_II(group_id: &str, surface: &SurfaceParams, tol: f64) -> Result<EvalResult> {
    surface.validate()?;
    let e = 2.0 * surface.genus as f64 - 2.0;
    if surface.area == 0.0 {
        return zeta_type_II(&ZetaRequest::new(group_id, e).tol(tol));
    }
    let group = lookup_group(group_id)?;
    let ev = WeylEvaluator::new(&group);
    let area = surface.area;
    if group.root_system.rank == 1 {
        let d = |n: u64| (n + 1) as f64;
        let c2 = |n: u64| ev.casimir_f64(&[n]);
        return rank_one_q_series(area, tol, c2, d, -e, |n| (-area * c2(n)).exp() * d(n).powf(-e));
    }
    shells_q_series(group.root_system.rank, tol, |w| {
        Ok((-area * ev.casimir_f64(w)).exp() * ev.eval_f64(w)?.powf(-e))
    })
}

pub fn partition_type_I(space_id: &str, surface: &SurfaceParams, tol: f64) -> Result<EvalResult> {
    surface.validate()?;
    let e = 2.0 * surface.genus as f64 - 1.0;
    if surface.area == 0.0 {
        return zeta_type_I(&ZetaRequest::new(space_id, e).tol(tol));
    }
    let space = lookup_space(space_id)?;
    let ev = DimEvaluator::new(&space)?;
    let area = surface.area;
    if space.rank == 1 {
        let d = |n: u64| ev.eval_f64(&[n]).unwrap();
        let c2 = |n: u64| ev.casimir_f64(&[n]);
        return rank_one_q_series(area, tol, c2, d, -e, |n| (-area * c2(n)).exp() * d(n).powf(-e));
    }
    shells_q_series(space.rank, tol, |w| {
        Ok((-area * ev.casimir_f64(w)).exp() * ev.eval_f64(w)?.powf(-e))
    })
}

/// Character of the n-th class-one representation at holonomy angle theta.
///
/// S^2 = SO(3)/SO(2): chi_n = sin((2n+1) theta/2) / sin(theta/2).
/// S^3 = SO(4)/SO(3) (d = (n+1)^2): chi_n = [sin((n+1) theta/2) / sin(theta/2)]^2.
/// At theta = 0 both return d_n.
pub fn boundary_character(space_id: &str, n: u64, theta: f64) -> Result<f64> {
    let nf = n as f64;
    let half = theta / 2.0;
    let s = sin_pi(half / std::f64::consts::PI);
    match space_id.trim().to_ascii_uppercase().as_str() {
        "S:2" => {
            if s == 0.0 {
                return Ok(2.0 * nf + 1.0);
            }
            Ok(sin_pi((2.0 * nf + 1.0) * half / std::f64::consts::PI) / s)
        }
        "S:3" => {
            if s == 0.0 {
                return Ok((nf + 1.0) * (nf + 1.0));
            }
            let r = sin_pi((nf + 1.0) * half / std::f64::consts::PI) / s;
            Ok(r * r)
        }
        other => Err(Error::UnsupportedSpace {
            id: other.to_string(),
            reason: "boundary characters are modelled for S:2 and S:3 only".into(),
        }),
    }
}

/// sum_n q^{c2(n)} prod_i chi_n(theta_i) / d_n^{2g + holes - 1}.
pub fn boundary_state(space_id: &str, surface: &SurfaceParams, tol: f64) -> Result<EvalResult> {
    surface.validate()?;
    boundary_character(space_id, 0, 0.0)?;
    for &t in &surface.holonomy_angles {
        if !(0.0..2.0 * std::f64::consts::PI).contains(&t) {
            return Err(Error::Domain(format!("holonomy angle {t} outside [0, 2 pi)")));
        }
    }
    let holes = surface.n_holes();
    if holes == 0 {
        return partition_type_I(space_id, surface, tol);
    }
    if surface.area == 0.0 {
        return Err(Error::Divergence("boundary sums need a positive area".into()));
    }
    let space = lookup_space(space_id)?;
    let ev = DimEvaluator::new(&space)?;
    let area = surface.area;
    let e = 2.0 * surface.genus as f64 + holes as f64 - 1.0;
    let d = |n: u64| ev.eval_f64(&[n]).unwrap();
    let c2 = |n: u64| ev.casimir_f64(&[n]);
    let term = |n: u64| {
        let chi: f64 = surface
            .holonomy_angles
            .iter()
            .map(|&t| boundary_character(space_id, n, t).unwrap())
            .product();
        (-area * c2(n)).exp() * chi * d(n).powf(-e)
    };
    // |chi_n| <= d_n, so |term| <= q^{c2} d^{holes - e}.
    rank_one_q_series(area, tol, c2, d, holes as f64 - e, term)
}
