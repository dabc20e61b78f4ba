//! Multi-factor series zeta[Pi] = sum_{n>=1} prod_j (n + kappa_j)^-(1 + pi_j),
//! their generating series in auxiliary variables T_j, and the partial-fraction
//! evaluation of the first-order generating series through digamma values.

use crate::dims::rank_one_factored;
use crate::error::{Error, Result};
use crate::rat::{to_f64, Q};
use crate::rootdata::SymmetricSpaceDescriptor;
use crate::series::{EvalResult, PowerFactor, PowerProductSeries};
use crate::specfun::{digamma, neumaier};
use num_traits::{One, Zero};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PiData {
    pub pi: Vec<u32>,
    pub kappa: Vec<f64>,
}

impl PiData {
    pub fn new(pi: Vec<u32>, kappa: Vec<f64>) -> Result<Self> {
        if pi.is_empty() || pi.len() != kappa.len() {
            return Err(Error::Domain(format!(
                "pi and kappa need the same nonzero length, got {} and {}",
                pi.len(),
                kappa.len()
            )));
        }
        if let Some(k) = kappa.iter().find(|k| !(**k > 0.0) || !k.is_finite()) {
            return Err(Error::Domain(format!("kappa must be positive, got {k}")));
        }
        Ok(PiData { pi, kappa })
    }

    pub fn total_power(&self) -> u32 {
        self.pi.iter().map(|p| p + 1).sum()
    }
}

fn check_power(p: f64) -> Result<()> {
    if p < 2.0 {
        return Err(Error::Divergence(format!(
            "total power {p} < 2: the harmonic tail diverges"
        )));
    }
    Ok(())
}

pub fn pi_series(data: &PiData, tol: f64) -> Result<EvalResult> {
    check_power(data.total_power() as f64)?;
    let factors = data
        .pi
        .iter()
        .zip(&data.kappa)
        .map(|(&p, &k)| PowerFactor {
            a: k,
            b: 1.0,
            e: (p + 1) as f64,
        })
        .collect();
    PowerProductSeries::new(factors, 1).sum(tol)
}

fn shifted(kappa: &[f64], t: &[f64]) -> Result<Vec<f64>> {
    if kappa.len() != t.len() {
        return Err(Error::Domain(format!(
            "kappa has {} entries, T has {}",
            kappa.len(),
            t.len()
        )));
    }
    let a: Vec<f64> = kappa.iter().zip(t).map(|(k, t)| k - t).collect();
    if let Some(x) = a.iter().find(|x| !(1.0 + **x > 0.0)) {
        return Err(Error::Domain(format!("1 + kappa - T = {} must be positive", 1.0 + x)));
    }
    Ok(a)
}

/// sum_{n>=1} prod_j 1/(n + kappa_j - T_j).
pub fn gen_series_direct(kappa: &[f64], t: &[f64], tol: f64) -> Result<EvalResult> {
    let a = shifted(kappa, t)?;
    check_power(a.len() as f64)?;
    let factors = a.iter().map(|&a| PowerFactor { a, b: 1.0, e: 1.0 }).collect();
    PowerProductSeries::new(factors, 1).sum(tol)
}

/// c_nu = prod_{mu != nu} 1/(a_mu - a_nu) with a = kappa - T.
pub fn partial_fraction_coefficients(kappa: &[f64], t: &[f64]) -> Result<Vec<f64>> {
    let a = shifted(kappa, t)?;
    let scale = a.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    let mut c = Vec::with_capacity(a.len());
    for (nu, an) in a.iter().enumerate() {
        let mut p = 1.0;
        for (mu, am) in a.iter().enumerate() {
            if mu == nu {
                continue;
            }
            let d = am - an;
            if d.abs() < 1e-12 * scale {
                return Err(Error::DegenerateConfiguration(format!(
                    "shifted kappas {mu} and {nu} coincide ({am} vs {an})"
                )));
            }
            p /= d;
        }
        c.push(p);
    }
    Ok(c)
}

/// Partial-fraction value sum_nu c_nu * (-psi(1 + kappa_nu - T_nu)).
///
/// Each single-factor series diverges; it is replaced by -psi(1 + a), which
/// differs from sum_{n=1}^N 1/(n + a) by a constant (ln N) that cancels
/// because the coefficients add up to zero.
pub fn gen_series_mf(kappa: &[f64], t: &[f64]) -> Result<f64> {
    let a = shifted(kappa, t)?;
    check_power(a.len() as f64)?;
    let c = partial_fraction_coefficients(kappa, t)?;
    let mut s = 0.0;
    let mut comp = 0.0;
    for (c, a) in c.iter().zip(&a) {
        neumaier(&mut s, &mut comp, -c * digamma(1.0 + a)?);
    }
    Ok(s + comp)
}

pub fn zero_identity_check(kappa: &[f64], t: &[f64]) -> Result<f64> {
    if kappa.len() < 2 {
        return Err(Error::Domain("the identity needs at least two factors".into()));
    }
    let c = partial_fraction_coefficients(kappa, t)?;
    let mut s = 0.0;
    let mut comp = 0.0;
    for x in c {
        neumaier(&mut s, &mut comp, x);
    }
    Ok((s + comp).abs())
}

/// The same sum in exact arithmetic.
pub fn zero_identity_exact(kappa: &[Q], t: &[Q]) -> Result<Q> {
    if kappa.len() < 2 || kappa.len() != t.len() {
        return Err(Error::Domain(
            "need matching kappa and T with at least two entries".into(),
        ));
    }
    let a: Vec<Q> = kappa.iter().zip(t).map(|(k, t)| k - t).collect();
    let mut total = Q::zero();
    for (nu, an) in a.iter().enumerate() {
        let mut p = Q::one();
        for (mu, am) in a.iter().enumerate() {
            if mu == nu {
                continue;
            }
            let d = am - an;
            if d.is_zero() {
                return Err(Error::DegenerateConfiguration(format!(
                    "shifted kappas {mu} and {nu} coincide"
                )));
            }
            p /= d;
        }
        total += p;
    }
    Ok(total)
}

/// Rank-one type I zeta through the factored dimension d(n) = c prod (n+kappa)^xi:
/// zeta(s) = 1 + c^-s zeta[Pi] with pi_k = s xi_k - 1.
///
/// The series is summed with every factor normalised by its n = 1 value, so
/// the prefactor becomes d(1)^-s and nothing under- or overflows for large
/// c or s.
pub fn zeta_values_from_rank_one(space: &SymmetricSpaceDescriptor, s: u32, tol: f64) -> Result<EvalResult> {
    let f = rank_one_factored(space)?;
    let sf = s as f64;
    check_power(sf * f.degree() as f64)?;
    let factors = f
        .factors
        .iter()
        .map(|(k, xi)| {
            let k = to_f64(k);
            PowerFactor {
                a: k,
                b: 1.0 + k,
                e: sf * *xi as f64,
            }
        })
        .collect();
    let ln_d1 = crate::rat::ln_abs(&f.eval(&Q::one()));
    let scale = (-sf * ln_d1).exp();
    let r = PowerProductSeries::new(factors, 1).sum(tol / scale.max(f64::MIN_POSITIVE))?;
    Ok(EvalResult {
        value: 1.0 + scale * r.value,
        tail_bound: scale * r.tail_bound,
        ..r
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::qf;
    use crate::rootdata::lookup_space;
    use crate::specfun::riemann_zeta;
    use std::f64::consts::PI;

    #[test]
    fn pi_series_examples() {
        let z2 = PI * PI / 6.0;
        let r = pi_series(&PiData::new(vec![1, 1], vec![1.0, 2.0]).unwrap(), 1e-13).unwrap();
        assert!((r.value - (2.0 * z2 - 13.0 / 4.0)).abs() < 1e-12);
        let r = pi_series(&PiData::new(vec![1], vec![2.0]).unwrap(), 1e-13).unwrap();
        assert!((r.value - (z2 - 1.25)).abs() < 1e-12);
        assert!(matches!(
            pi_series(&PiData::new(vec![0], vec![3.0]).unwrap(), 1e-8),
            Err(Error::Divergence(_))
        ));
        assert!(PiData::new(vec![0, 0], vec![1.0]).is_err());
    }

    #[test]
    fn direct_examples() {
        let r = gen_series_direct(&[1.0, 2.0], &[0.0, 0.0], 1e-13).unwrap();
        assert!((r.value - 0.5).abs() < 1e-12);
        let r = gen_series_direct(&[0.5, 1.0], &[0.0, 0.0], 1e-13).unwrap();
        assert!((r.value - (4.0 * 2f64.ln() - 2.0)).abs() < 1e-12);
        let r = gen_series_direct(&[1.0, 2.0, 3.0], &[0.0; 3], 1e-13).unwrap();
        // sum_{n>=1} 1/((n+1)(n+2)(n+3)) = 1/12
        let mut brute = 0.0;
        for n in (1..1_000_000u64).rev() {
            let x = n as f64;
            brute += 1.0 / ((x + 1.0) * (x + 2.0) * (x + 3.0));
        }
        assert!((r.value - brute).abs() < 1e-11);
        assert!((r.value - 1.0 / 12.0).abs() < 1e-12);
        assert!(matches!(
            gen_series_direct(&[1.0], &[0.0], 1e-8),
            Err(Error::Divergence(_))
        ));
    }

    #[test]
    fn mf_examples() {
        assert_eq!(
            partial_fraction_coefficients(&[1.0, 2.0], &[0.0, 0.0]).unwrap(),
            vec![1.0, -1.0]
        );
        assert!((gen_series_mf(&[1.0, 2.0], &[0.0, 0.0]).unwrap() - 0.5).abs() < 1e-14);
        assert!((gen_series_mf(&[1.0, 2.0, 3.0], &[0.0; 3]).unwrap() - 1.0 / 12.0).abs() < 1e-14);
        let t = [0.1, -0.1];
        let d = gen_series_direct(&[1.0, 2.0], &t, 1e-14).unwrap().value;
        assert!((gen_series_mf(&[1.0, 2.0], &t).unwrap() - d).abs() < 1e-10);
        assert!(matches!(
            gen_series_mf(&[1.0, 1.5], &[0.0, 0.5]),
            Err(Error::DegenerateConfiguration(_))
        ));
    }

    #[test]
    fn zero_identity() {
        assert_eq!(zero_identity_check(&[1.0, 2.0], &[0.0, 0.0]).unwrap(), 0.0);
        assert!(zero_identity_check(&[1.0, 2.0, 4.0], &[0.0; 3]).unwrap() < 1e-15);
        let k = [qf(1, 1), qf(2, 1), qf(4, 1)];
        let t = [qf(0, 1), qf(1, 3), qf(-1, 7)];
        assert!(zero_identity_exact(&k, &t).unwrap().is_zero());
    }

    // Coefficient extraction from the generating series by central differences.
    fn stencil(order: u32) -> (Vec<f64>, f64) {
        match order {
            0 => (vec![0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0], 1.0),
            1 => (vec![-1.0, 9.0, -45.0, 0.0, 45.0, -9.0, 1.0], 60.0),
            _ => (vec![2.0, -27.0, 270.0, -490.0, 270.0, -27.0, 2.0], 180.0 * 2.0),
        }
    }

    fn taylor_coefficient(kappa: &[f64], pi: &[u32], h: f64) -> f64 {
        let m = kappa.len();
        let st: Vec<(Vec<f64>, f64)> = pi.iter().map(|&p| stencil(p)).collect();
        let mut total = 0.0;
        let count = 7usize.pow(m as u32);
        for idx in 0..count {
            let mut r = idx;
            let mut w = 1.0;
            let mut t = vec![0.0; m];
            for j in 0..m {
                let k = r % 7;
                r /= 7;
                w *= st[j].0[k];
                t[j] = (k as f64 - 3.0) * h;
            }
            if w == 0.0 {
                continue;
            }
            total += w * gen_series_direct(kappa, &t, 1e-15).unwrap().value;
        }
        let denom: f64 = st.iter().zip(pi).map(|((_, d), &p)| d * h.powi(p as i32)).product();
        total / denom
    }

    #[test]
    fn taylor_consistency() {
        let cases: [(&[f64], &[u32]); 5] = [
            (&[1.0, 2.0], &[1, 0]),
            (&[1.0, 2.0], &[1, 1]),
            (&[0.5, 2.0], &[2, 1]),
            (&[1.0, 1.5, 3.0], &[1, 0, 2]),
            (&[1.0, 2.0, 3.0], &[2, 2, 1]),
        ];
        for (kappa, pi) in cases {
            let want = pi_series(&PiData::new(pi.to_vec(), kappa.to_vec()).unwrap(), 1e-14)
                .unwrap()
                .value;
            let got = taylor_coefficient(kappa, pi, 0.05);
            assert!((got - want).abs() < 1e-6, "{kappa:?} {pi:?}: {got} vs {want}");
        }
    }

    #[test]
    fn rank_one_examples() {
        let z2 = PI * PI / 6.0;
        let r = zeta_values_from_rank_one(&lookup_space("S:3").unwrap(), 1, 1e-12).unwrap();
        assert!((r.value - z2).abs() < 1e-11);
        let r = zeta_values_from_rank_one(&lookup_space("S:2").unwrap(), 2, 1e-12).unwrap();
        assert!((r.value - PI * PI / 8.0).abs() < 1e-11);
        let r = zeta_values_from_rank_one(&lookup_space("CP:2").unwrap(), 1, 1e-12).unwrap();
        assert!((r.value - riemann_zeta(3.0).unwrap()).abs() < 1e-11);
        assert!(zeta_values_from_rank_one(&lookup_space("S:2").unwrap(), 1, 1e-8).is_err());
    }

    #[test]
    fn rank_one_large_constant() {
        // FII has c ~ 6e-11 and degree 15.
        let s = lookup_space("FII").unwrap();
        let a = zeta_values_from_rank_one(&s, 3, 1e-14).unwrap().value;
        let b = crate::zeta::zeta_type_I(&crate::zeta::ZetaRequest::new("FII", 3.0).tol(1e-14))
            .unwrap()
            .value;
        assert!((a - b).abs() < 1e-13);
        assert!((a - 1.0 - 26f64.powi(-3)).abs() < 1e-5);
    }
}
