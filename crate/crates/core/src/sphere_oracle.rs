//! Zonal spherical functions on S^2 = SO(3)/SO(2), which are Legendre
//! polynomials in cos(theta). Used to check orthogonality against the class-one
//! dimensions and the delta-kernel expansion sum_n d_n P_n(cos theta).
//!
//! The normalised bi-invariant measure on [0, pi] is sin(theta)/2 d theta.

use crate::dims::DimEvaluator;
use crate::error::{Error, Result};
use crate::rootdata::lookup_space;
use crate::specfun::{gauss_legendre_nodes, legendre_p};
use serde::Serialize;
use std::f64::consts::PI;

pub fn zsf_s2(n: usize, theta: f64) -> Result<f64> {
    if !(0.0..=PI).contains(&theta) {
        return Err(Error::Domain(format!("theta = {theta} outside [0, pi]")));
    }
    if theta == 0.0 {
        return Ok(1.0);
    }
    Ok(legendre_p(n, theta.cos()))
}

fn s2_dims(upto: usize) -> Result<Vec<f64>> {
    let ev = DimEvaluator::new(&lookup_space("S:2")?)?;
    (0..=upto as u64).map(|n| ev.eval_f64(&[n])).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrthogonalityReport {
    pub n: usize,
    pub m: usize,
    pub integral: f64,
    pub expected: f64,
    pub residual: f64,
}

/// |int P_n P_m dmu - delta_nm / d_n| by Gauss-Legendre in x = cos(theta).
pub fn orthogonality_check(n: usize, m: usize, quad_order: usize) -> Result<OrthogonalityReport> {
    if quad_order < n + m + 1 {
        return Err(Error::Domain(format!(
            "quadrature order {quad_order} < n + m + 1 = {}",
            n + m + 1
        )));
    }
    let (x, w) = gauss_legendre_nodes(quad_order)?;
    let integral: f64 = x
        .iter()
        .zip(&w)
        .map(|(&x, &w)| 0.5 * w * legendre_p(n, x) * legendre_p(m, x))
        .sum();
    let expected = if n == m { 1.0 / s2_dims(n)?[n] } else { 0.0 };
    Ok(OrthogonalityReport {
        n,
        m,
        integral,
        expected,
        residual: (integral - expected).abs(),
    })
}

const DELTA_NODES: usize = 512;

/// |int_0^pi K_N(theta) f(theta) sin(theta)/2 d theta - f(0)| with
/// K_N = sum_{n <= N} d_n P_n(cos theta).
pub fn delta_kernel_test(big_n: usize, f: impl Fn(f64) -> f64) -> Result<f64> {
    let d = s2_dims(big_n)?;
    let (x, w) = gauss_legendre_nodes(DELTA_NODES)?;
    let mut total = 0.0;
    for (&x, &w) in x.iter().zip(&w) {
        let theta = 0.5 * PI * (x + 1.0);
        let c = theta.cos();
        // three-term recurrence for P_0..P_N at c
        let (mut p0, mut p1) = (1.0, c);
        let mut k = d[0];
        if big_n >= 1 {
            k += d[1] * p1;
        }
        for n in 1..big_n {
            let nf = n as f64;
            let p2 = ((2.0 * nf + 1.0) * c * p1 - nf * p0) / (nf + 1.0);
            p0 = p1;
            p1 = p2;
            k += d[n + 1] * p1;
        }
        total += w * 0.5 * PI * k * f(theta) * 0.5 * theta.sin();
    }
    Ok((total - f(0.0)).abs())
}

/// K_N(0) = sum_{n <= N} d_n, which telescopes to (N+1)^2.
pub fn kernel_at_zero(big_n: usize) -> Result<f64> {
    Ok(s2_dims(big_n)?.iter().sum())
}
