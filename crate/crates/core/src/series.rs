//! Summation of power-product series with certified tails.
//!
//! Everything here sums `sum_{n >= n0} prod_j ((n + a_j) / b_j)^(-e_j)`.
//! The head is summed directly; the tail is expanded in inverse powers of n and
//! resummed through Hurwitz zeta values, with a majorant bounding the
//! truncation of that expansion.

use crate::error::{Error, Result};
use crate::specfun::{hurwitz_em, neumaier};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalResult {
    pub value: f64,
    pub tail_bound: f64,
    pub terms_used: u64,
    pub converged: bool,
    /// False when `tail_bound` is an extrapolation rather than a proof.
    pub rigorous: bool,
}

impl EvalResult {
    pub fn exact(value: f64, terms: u64) -> Self {
        EvalResult {
            value,
            tail_bound: 0.0,
            terms_used: terms,
            converged: true,
            rigorous: true,
        }
    }
}

/// Upper bound on series length, overridable via `WZ_MAX_TERMS`.
pub fn max_terms() -> u64 {
    std::env::var("WZ_MAX_TERMS")
        .ok()
        .and_then(|v| v.trim().parse::<u64>().ok())
        .filter(|v| *v > 0)
        .unwrap_or(50_000_000)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerFactor {
    pub a: f64,
    pub b: f64,
    pub e: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PowerProductSeries {
    pub factors: Vec<PowerFactor>,
    pub n0: u64,
}

impl PowerProductSeries {
    pub fn new(factors: Vec<PowerFactor>, n0: u64) -> Self {
        PowerProductSeries { factors, n0 }
    }

    pub fn total_power(&self) -> f64 {
        self.factors.iter().map(|f| f.e).sum()
    }

    pub fn term(&self, n: u64) -> f64 {
        let nf = n as f64;
        let l: f64 = self.factors.iter().map(|f| f.e * ((nf + f.a) / f.b).ln()).sum();
        (-l).exp()
    }

    fn check(&self) -> Result<()> {
        if self.factors.is_empty() {
            return Err(Error::Divergence("empty product: every term equals 1".into()));
        }
        for f in &self.factors {
            if !(f.e > 0.0 && f.b > 0.0 && f.a.is_finite()) {
                return Err(Error::Domain(format!("bad factor {f:?}")));
            }
            if !(self.n0 as f64 + f.a > 0.0) {
                return Err(Error::Domain(format!("n + a must stay positive, a = {}", f.a)));
            }
        }
        let p = self.total_power();
        if !(p > 1.0) {
            return Err(Error::Divergence(format!("total power {p} <= 1")));
        }
        Ok(())
    }

    /// Tail `sum_{n >= big_n}` as (value, bound). `big_n` must exceed
    /// `2 max|a_j|`.
    fn tail(&self, big_n: u64, target: f64) -> (f64, f64) {
        let nf = big_n as f64;
        let p = self.total_power();
        let amax = self.factors.iter().map(|f| f.a.abs()).fold(0.0, f64::max);
        let esum = p;
        // ln of the common prefactor prod b^e * N^(1-P)
        let ln_c: f64 = self.factors.iter().map(|f| f.e * f.b.ln()).sum::<f64>() - (p - 1.0) * nf.ln();
        let c = ln_c.exp();
        // log-series coefficients L_k of prod (1 + a u)^(-e), then exponentiate.
        const KMAX: usize = 80;
        let mut g = vec![1.0f64];
        let mut lk = vec![0.0f64];
        let mut sum = 0.0;
        let mut comp = 0.0;
        let mut bound = f64::INFINITY;
        let q = amax / nf;
        let mut h = 1.0; // majorant coefficient binom(E+k-1, k) (amax/N)^k
        for k in 0..=KMAX {
            if k > 0 {
                let kf = k as f64;
                let l: f64 = self.factors.iter().map(|f| f.e * (-f.a).powi(k as i32) / kf).sum();
                lk.push(l);
                let mut gk = 0.0;
                for i in 1..=k {
                    gk += i as f64 * lk[i] * g[k - i];
                }
                g.push(gk / kf);
                h *= q * (esum + kf - 1.0) / kf;
            }
            // zeta~(P+k, N) = N^(P+k-1) zeta_H(P+k, N)
            let s = p + k as f64;
            let (zt, zerr) = hurwitz_em(s, nf, (s - 1.0) * nf.ln());
            let term = g[k] * nf.powi(-(k as i32)) * zt;
            neumaier(&mut sum, &mut comp, term);
            let _ = zerr;
            // Remainder of the majorant beyond k, times the largest remaining
            // zeta~ value (zeta~ decreases in s).
            let kf = k as f64;
            let ratio = q * (esum + kf) / (kf + 1.0);
            let ratio = ratio.max(q);
            if ratio < 1.0 {
                let next = h * q * (esum + kf) / (kf + 1.0);
                let (zn, _) = hurwitz_em(s + 1.0, nf, s * nf.ln());
                let b = c * next * zn / (1.0 - ratio);
                bound = b;
                if b < target * 1e-3 || amax == 0.0 {
                    if amax == 0.0 {
                        bound = 0.0;
                    }
                    break;
                }
            }
        }
        let v = c * (sum + comp);
        // Euler-Maclaurin error in each zeta value is at the 1e-16 relative level.
        (v, bound + 1e-15 * v.abs())
    }

    /// Sum to an absolute tolerance.
    pub fn sum(&self, tol: f64) -> Result<EvalResult> {
        self.check()?;
        let amax = self.factors.iter().map(|f| f.a.abs()).fold(0.0, f64::max);
        let ea: f64 = self.factors.iter().map(|f| f.e * f.a.abs()).sum();
        let mut big_n = (self.n0 as f64).max(2.0 * amax + 1.0).max(ea).max(16.0).ceil() as u64;
        let cap = max_terms();
        if big_n > cap {
            return Err(Error::NotConverged(format!("need {big_n} direct terms, cap is {cap}")));
        }
        loop {
            let mut s = 0.0;
            let mut c = 0.0;
            for n in self.n0..big_n {
                neumaier(&mut s, &mut c, self.term(n));
            }
            let head = s + c;
            let (tv, tb) = self.tail(big_n, tol);
            let rounding = 2.0 * f64::EPSILON * head.abs();
            let bound = tb + rounding;
            if bound <= tol || big_n.saturating_mul(4) > cap {
                return Ok(EvalResult {
                    value: head + tv,
                    tail_bound: bound,
                    terms_used: big_n - self.n0,
                    converged: bound <= tol,
                    rigorous: true,
                });
            }
            big_n *= 4;
        }
    }
}
