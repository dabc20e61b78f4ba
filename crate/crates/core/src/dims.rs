//! Class-one and Weyl dimensions, Casimir values and the c-function.
//!
//! Exact dimensions come from per-root polynomial factors in x = (lambda + rho_X, alpha_0).
//! With m = m_alpha, m2 = m_2alpha the factor is prod_k (x + s_k) / (rho_alpha + s_k)
//! for a shift list s_k that depends only on (m, m2):
//!
//! * m2 = 0, m = 2l+1: 0 and +-(k + 1/2) for k < l
//! * m2 = 0, m = 2l:   0, 0 and +-k for 1 <= k < l
//! * m2 odd, m = 4l:   0, +-(2k+1) for k < l, +-(2k+1) for k < l + j
//! * m2 odd, m = 4l+2: 0, 0, 0, +-2k for 1 <= k <= l, +-2k for 1 <= k <= l + j
//!
//! where j = (m2 - 1)/2. The numeric path instead evaluates the gamma ratio of
//! the Gindikin-Karpelevich product and never touches these lists.

use crate::error::{Error, Result};
use crate::rat::{fmt_q, is_integer, ln_abs, q, qf, to_f64, Q};
use crate::rootdata::{CompactGroupDescriptor, SymmetricSpaceDescriptor};
use crate::specfun::{ln_gamma_sign, log_gamma_complex};
use crate::weights::{class_one_basis, class_one_vector, dominant_vector, ClassOneWeight, DominantWeight};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FactorCase {
    /// m_alpha = m_2alpha = 0: the root carries no factor.
    Trivial,
    Odd,
    Even,
    CaseA,
    CaseB,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerRootFactorParams {
    pub m_alpha: u32,
    pub m_2alpha: u32,
    pub l_alpha: u32,
    pub j_alpha: u32,
    pub r_alpha: u32,
    pub rho_pairing: Q,
    pub case: FactorCase,
}

impl PerRootFactorParams {
    pub fn new(m_alpha: u32, m_2alpha: u32, rho_pairing: Q) -> Result<Self> {
        let bad = Err(Error::InconsistentMultiplicities { m_alpha, m_2alpha });
        let (case, l, j) = match (m_alpha, m_2alpha) {
            (0, 0) => (FactorCase::Trivial, 0, 0),
            (m, 0) if m % 2 == 1 => (FactorCase::Odd, (m - 1) / 2, 0),
            (m, 0) => (FactorCase::Even, m / 2, 0),
            (m, m2) if m2 % 2 == 1 && m % 4 == 0 => (FactorCase::CaseA, m / 4, (m2 - 1) / 2),
            (m, m2) if m2 % 2 == 1 && m % 4 == 2 => (FactorCase::CaseB, (m - 2) / 4, (m2 - 1) / 2),
            _ => return bad,
        };
        if !rho_pairing.is_positive() {
            return Err(Error::Domain(format!(
                "rho pairing {} must be positive",
                fmt_q(&rho_pairing)
            )));
        }
        let p = PerRootFactorParams {
            m_alpha,
            m_2alpha,
            l_alpha: l,
            j_alpha: j,
            r_alpha: l + j,
            rho_pairing,
            case,
        };
        if p.shifts().iter().any(|s| (s + &p.rho_pairing).is_zero()) {
            return Err(Error::Domain("vanishing normalisation in a root factor".into()));
        }
        Ok(p)
    }

    /// Pairing step: user coordinate n corresponds to x = rho + step n.
    pub fn step(&self) -> i64 {
        if self.m_2alpha == 0 {
            1
        } else {
            2
        }
    }

    pub fn shifts(&self) -> Vec<Q> {
        let (l, r) = (self.l_alpha as i64, self.r_alpha as i64);
        let mut s = Vec::new();
        let pm = |v: Q, s: &mut Vec<Q>| {
            s.push(v.clone());
            s.push(-v);
        };
        match self.case {
            FactorCase::Trivial => {}
            FactorCase::Odd => {
                s.push(Q::zero());
                for k in 0..l {
                    pm(qf(2 * k + 1, 2), &mut s);
                }
            }
            FactorCase::Even => {
                s.extend([Q::zero(), Q::zero()]);
                for k in 1..l {
                    pm(q(k), &mut s);
                }
            }
            FactorCase::CaseA => {
                s.push(Q::zero());
                for k in 0..l {
                    pm(q(2 * k + 1), &mut s);
                }
                for k in 0..r {
                    pm(q(2 * k + 1), &mut s);
                }
            }
            FactorCase::CaseB => {
                s.extend([Q::zero(), Q::zero(), Q::zero()]);
                for k in 1..=l {
                    pm(q(2 * k), &mut s);
                }
                for k in 1..=r {
                    pm(q(2 * k), &mut s);
                }
            }
        }
        s
    }

    /// Polynomial degree of the factor in n.
    pub fn degree(&self) -> usize {
        self.shifts().len()
    }
}

/// The per-root factor d_alpha(n) with d_alpha(0) = 1.
pub fn dim_factor(params: &PerRootFactorParams, n_alpha: u64) -> Q {
    let rho = &params.rho_pairing;
    let x = rho + q(params.step() * n_alpha as i64);
    params
        .shifts()
        .iter()
        .fold(Q::one(), |acc, s| acc * (&x + s) / (rho + s))
}

/// c0(x,l) = -x^2 prod_{k=1}^{l-1} (k^2 - x^2).
pub fn c0(x: &Q, l: u32) -> Q {
    let x2 = x * x;
    (1..l as i64).fold(-x2.clone(), |acc, k| acc * (q(k * k) - &x2))
}

/// c1(x,l) = prod_{k=0}^{l-1} ((k + 1/2)^2 - x^2).
pub fn c1(x: &Q, l: u32) -> Q {
    let x2 = x * x;
    (0..l as i64).fold(Q::one(), |acc, k| acc * (qf((2 * k + 1) * (2 * k + 1), 4) - &x2))
}

pub fn c0_f64(x: f64, l: u32) -> f64 {
    (1..l).fold(-x * x, |acc, k| acc * ((k * k) as f64 - x * x))
}

pub fn c1_f64(x: f64, l: u32) -> f64 {
    (0..l).fold(1.0, |acc, k| acc * ((k as f64 + 0.5).powi(2) - x * x))
}

#[derive(Debug, Clone)]
struct RootTerm {
    /// Pairing (mu_i, alpha_0) of each basis weight: nonnegative integers.
    coef: Vec<i64>,
    params: PerRootFactorParams,
    /// L * (rho + s_k) as integers.
    scaled_offsets: Vec<i64>,
}

/// Precomputed exact evaluator of class-one dimensions for one space.
#[derive(Debug, Clone)]
pub struct DimEvaluator {
    pub rank: usize,
    terms: Vec<RootTerm>,
    scale: i64,
    denominator: BigInt,
    gram: Vec<Vec<Q>>,
    rho_dot: Vec<Q>,
}

impl DimEvaluator {
    pub fn new(space: &SymmetricSpaceDescriptor) -> Result<Self> {
        let basis = class_one_basis(space);
        let mut raw = Vec::new();
        for (i, m, m2) in space.active_roots() {
            let a = &space.root_system.positive_roots[i];
            let a0 = a.alpha0();
            let coef: Vec<i64> = basis
                .iter()
                .map(|b| {
                    let c = b.dot(&a0);
                    assert!(is_integer(&c) && !c.is_negative());
                    c.to_integer().to_i64().unwrap()
                })
                .collect();
            let params = PerRootFactorParams::new(m, m2, space.rho_pairing(i))?;
            raw.push((coef, params));
        }
        let mut scale = BigInt::one();
        for (_, p) in &raw {
            scale = scale.lcm(p.rho_pairing.denom());
            for s in p.shifts() {
                scale = scale.lcm(s.denom());
            }
        }
        let scale_q = Q::from_integer(scale.clone());
        let mut denominator = BigInt::one();
        let terms = raw
            .into_iter()
            .map(|(coef, params)| {
                let scaled_offsets: Vec<i64> = params
                    .shifts()
                    .iter()
                    .map(|s| ((&params.rho_pairing + s) * &scale_q).to_integer().to_i64().unwrap())
                    .collect();
                for &o in &scaled_offsets {
                    denominator *= o;
                }
                RootTerm {
                    coef,
                    params,
                    scaled_offsets,
                }
            })
            .collect();
        let gram = basis.iter().map(|a| basis.iter().map(|b| a.dot(b)).collect()).collect();
        let rho_dot = basis.iter().map(|b| b.dot(&space.rho_x)).collect();
        Ok(DimEvaluator {
            rank: space.rank,
            terms,
            scale: scale.to_i64().unwrap(),
            denominator,
            gram,
            rho_dot,
        })
    }

    fn check(&self, w: &[u64]) -> Result<()> {
        if w.len() != self.rank {
            return Err(Error::InvalidWeight(format!(
                "expected {} coordinates, got {}",
                self.rank,
                w.len()
            )));
        }
        Ok(())
    }

    /// n_alpha for each active root: (lambda, alpha_0) / step.
    pub fn root_coordinates(&self, w: &[u64]) -> Vec<u64> {
        self.terms
            .iter()
            .map(|t| {
                let p: i64 = t.coef.iter().zip(w).map(|(c, &n)| c * n as i64).sum();
                (p / t.params.step()) as u64
            })
            .collect()
    }

    fn numerator(&self, w: &[u64]) -> BigInt {
        let mut acc: u128 = 1;
        let mut big: Option<BigInt> = None;
        for t in &self.terms {
            let p: i64 = t.coef.iter().zip(w).map(|(c, &n)| c * n as i64).sum();
            let base = p * self.scale;
            for &o in &t.scaled_offsets {
                let v = base + o;
                match (&mut big, v >= 0) {
                    (None, true) => match acc.checked_mul(v as u128) {
                        Some(x) => acc = x,
                        None => big = Some(BigInt::from(acc) * v),
                    },
                    (None, false) => big = Some(BigInt::from(acc) * v),
                    (Some(b), _) => *b *= v,
                }
            }
        }
        big.unwrap_or_else(|| BigInt::from(acc))
    }

    pub fn eval(&self, w: &[u64]) -> Result<Q> {
        self.check(w)?;
        Ok(Q::new(self.numerator(w), self.denominator.clone()))
    }

    /// The exact dimension rounded to f64.
    pub fn eval_f64(&self, w: &[u64]) -> Result<f64> {
        self.check(w)?;
        let num = self.numerator(w);
        let (qt, r) = num.div_rem(&self.denominator);
        if r.is_zero() {
            if let Some(v) = qt.to_f64() {
                return Ok(v);
            }
        }
        Ok(to_f64(&Q::new(num, self.denominator.clone())))
    }

    pub fn casimir(&self, w: &[u64]) -> Q {
        let n: Vec<Q> = w.iter().map(|&x| q(x as i64)).collect();
        let mut c = Q::zero();
        for i in 0..self.rank {
            for j in 0..self.rank {
                c += &n[i] * &n[j] * &self.gram[i][j];
            }
            c += q(2) * &n[i] * &self.rho_dot[i];
        }
        c
    }

    pub fn casimir_f64(&self, w: &[u64]) -> f64 {
        to_f64(&self.casimir(w))
    }

    /// Total degree of the dimension polynomial along a generic ray.
    pub fn degree(&self) -> usize {
        self.terms.iter().map(|t| t.params.degree()).sum()
    }

    pub fn root_params(&self) -> Vec<PerRootFactorParams> {
        self.terms.iter().map(|t| t.params.clone()).collect()
    }

    /// Pairing coefficients of each active root on the weight coordinates.
    pub fn root_coefficients(&self) -> Vec<Vec<i64>> {
        self.terms.iter().map(|t| t.coef.clone()).collect()
    }
}

pub fn dim_class_one(space: &SymmetricSpaceDescriptor, weight: &ClassOneWeight) -> Result<Q> {
    DimEvaluator::new(space)?.eval(&weight.coords)
}

// ---------------------------------------------------------------------------
// Gamma-ratio path

/// Leading Laurent term of Gamma(z0 + delta eps) as eps -> 0:
/// (ln|coef|, sign, order of eps).
fn gamma_leading(z0: &Q, delta: f64) -> Result<(f64, f64, i32)> {
    if is_integer(z0) && !z0.is_positive() {
        let k = (-z0).to_integer().to_i64().unwrap();
        // Gamma(-k + t) ~ (-1)^k / (k! t)
        let (lf, _) = ln_gamma_sign(k as f64 + 1.0)?;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 } * delta.signum();
        return Ok((-lf - delta.abs().ln(), sign, -1));
    }
    let (l, s) = ln_gamma_sign(to_f64(z0))?;
    Ok((l, s, 0))
}

/// F(y) = Gamma(a + y/2) Gamma(a - y/2) Gamma(b + y/2) Gamma(b - y/2) / (Gamma(y) Gamma(-y))
/// with a = m/4 + 1/2, b = m/4 + m2/2, as a Laurent leading term in a common
/// displacement y -> y + eps.
fn gk_leading(m: u32, m2: u32, y: &Q) -> Result<(f64, f64, i32)> {
    let a = qf(m as i64, 4) + qf(1, 2);
    let b = qf(m as i64, 4) + qf(m2 as i64, 2);
    let h = y * qf(1, 2);
    let mut ln = 0.0;
    let mut sign = 1.0;
    let mut order = 0;
    for (z, d, num) in [
        (&a + &h, 0.5, true),
        (&a - &h, -0.5, true),
        (&b + &h, 0.5, true),
        (&b - &h, -0.5, true),
        (y.clone(), 1.0, false),
        (-y, -1.0, false),
    ] {
        let (l, s, o) = gamma_leading(&z, d)?;
        sign *= s;
        if num {
            ln += l;
            order += o;
        } else {
            ln -= l;
            order -= o;
        }
    }
    Ok((ln, sign, order))
}

/// ln of the root factor F(x)/F(rho) and its sign.
pub fn ln_factor_numeric(m: u32, m2: u32, rho: &Q, x: &Q) -> Result<(f64, f64)> {
    if m == 0 && m2 == 0 {
        return Ok((0.0, 1.0));
    }
    let (ln_x, s_x, o_x) = gk_leading(m, m2, x)?;
    let (ln_r, s_r, o_r) = gk_leading(m, m2, rho)?;
    if o_x != o_r {
        return Err(Error::Domain(format!(
            "gamma ratio has no finite limit at x = {} (orders {o_x}, {o_r})",
            fmt_q(x)
        )));
    }
    Ok((ln_x - ln_r, s_x * s_r))
}

/// Numeric class-one dimension through the gamma-ratio product, in log space.
pub fn ln_dim_class_one_numeric(space: &SymmetricSpaceDescriptor, weight: &ClassOneWeight) -> Result<f64> {
    let lambda = class_one_vector(space, weight)?;
    let shifted = lambda.add(&space.rho_x);
    let mut ln = 0.0;
    let mut sign = 1.0;
    for (i, m, m2) in space.active_roots() {
        let a = &space.root_system.positive_roots[i];
        let n2 = a.norm2();
        let x = shifted.dot(a) / &n2;
        let rho = space.rho_x.dot(a) / &n2;
        let (l, s) = ln_factor_numeric(m, m2, &rho, &x)?;
        ln += l;
        sign *= s;
    }
    if sign < 0.0 {
        return Err(Error::Domain("negative gamma ratio".into()));
    }
    Ok(ln)
}

pub fn dim_class_one_numeric(space: &SymmetricSpaceDescriptor, weight: &ClassOneWeight) -> Result<f64> {
    let ln = ln_dim_class_one_numeric(space, weight)?;
    if ln > 709.0 {
        return Err(Error::NumericOverflow(format!("ln d = {ln:.3} exceeds the f64 range")));
    }
    Ok(ln.exp())
}

/// The gamma-ratio path with per-root data precomputed, for sweeps.
///
/// Every gamma argument is held as an integer over a per-root denominator so
/// that poles are still detected exactly.
#[derive(Debug, Clone)]
pub struct GammaRatioEvaluator {
    pub rank: usize,
    roots: Vec<GammaRoot>,
}

#[derive(Debug, Clone)]
struct GammaRoot {
    /// (mu_i, alpha)/(alpha, alpha) times `den`.
    coef: Vec<i64>,
    den: i64,
    a: i64,
    b: i64,
    rho: i64,
    at_rho: (f64, f64, i32),
}

fn gamma_leading_scaled(z: i64, den: i64, delta: f64) -> Result<(f64, f64, i32)> {
    if z <= 0 && z % den == 0 {
        let k = -z / den;
        let (lf, _) = ln_gamma_sign(k as f64 + 1.0)?;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 } * delta.signum();
        return Ok((-lf - delta.abs().ln(), sign, -1));
    }
    let (l, s) = ln_gamma_sign(z as f64 / den as f64)?;
    Ok((l, s, 0))
}

impl GammaRoot {
    fn leading(&self, y: i64) -> Result<(f64, f64, i32)> {
        let h = y / 2;
        let mut ln = 0.0;
        let mut sign = 1.0;
        let mut order = 0;
        for (z, d, num) in [
            (self.a + h, 0.5, true),
            (self.a - h, -0.5, true),
            (self.b + h, 0.5, true),
            (self.b - h, -0.5, true),
            (y, 1.0, false),
            (-y, -1.0, false),
        ] {
            let (l, s, o) = gamma_leading_scaled(z, self.den, d)?;
            sign *= s;
            if num {
                ln += l;
                order += o;
            } else {
                ln -= l;
                order -= o;
            }
        }
        Ok((ln, sign, order))
    }
}

impl GammaRatioEvaluator {
    pub fn new(space: &SymmetricSpaceDescriptor) -> Result<Self> {
        let basis = class_one_basis(space);
        let mut roots = Vec::new();
        for (i, m, m2) in space.active_roots() {
            let alpha = &space.root_system.positive_roots[i];
            let n2 = alpha.norm2();
            let rho = space.rho_pairing(i);
            let den = 4 * rho.denom().to_i64().unwrap();
            let dq = q(den);
            let coef = basis
                .iter()
                .map(|mu| {
                    let c = mu.dot(alpha) / &n2 * &dq;
                    assert!(is_integer(&c));
                    c.to_integer().to_i64().unwrap()
                })
                .collect();
            let mut r = GammaRoot {
                coef,
                den,
                a: den * (m as i64 + 2) / 4,
                b: den * (m as i64 + 2 * m2 as i64) / 4,
                rho: (rho * &dq).to_integer().to_i64().unwrap(),
                at_rho: (0.0, 1.0, 0),
            };
            r.at_rho = r.leading(r.rho)?;
            roots.push(r);
        }
        Ok(GammaRatioEvaluator {
            rank: space.rank,
            roots,
        })
    }

    pub fn ln_eval(&self, w: &[u64]) -> Result<f64> {
        if w.len() != self.rank {
            return Err(Error::InvalidWeight(format!(
                "expected {} coordinates, got {}",
                self.rank,
                w.len()
            )));
        }
        let mut ln = 0.0;
        let mut sign = 1.0;
        for r in &self.roots {
            let y = r.rho + r.coef.iter().zip(w).map(|(c, &n)| c * n as i64).sum::<i64>();
            let (l, s, o) = r.leading(y)?;
            if o != r.at_rho.2 {
                return Err(Error::Domain(format!(
                    "gamma ratio has no finite limit (orders {o}, {})",
                    r.at_rho.2
                )));
            }
            ln += l - r.at_rho.0;
            sign *= s * r.at_rho.1;
        }
        if sign < 0.0 {
            return Err(Error::Domain("negative gamma ratio".into()));
        }
        Ok(ln)
    }
}

// ---------------------------------------------------------------------------
// Rank one

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredDimPolynomial {
    pub c: Q,
    /// (kappa_k, xi_k) sorted by kappa.
    pub factors: Vec<(Q, u32)>,
}

impl FactoredDimPolynomial {
    pub fn eval(&self, n: &Q) -> Q {
        self.factors.iter().fold(self.c.clone(), |acc, (k, xi)| {
            let b = n + k;
            (0..*xi).fold(acc, |a, _| a * &b)
        })
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|f| f.1).sum()
    }

    /// Coefficients in the monomial basis, constant term first.
    pub fn expand(&self) -> Vec<Q> {
        let mut p = vec![self.c.clone()];
        for (k, xi) in &self.factors {
            for _ in 0..*xi {
                let mut next = vec![Q::zero(); p.len() + 1];
                for (i, c) in p.iter().enumerate() {
                    next[i] += c * k;
                    next[i + 1] += c;
                }
                p = next;
            }
        }
        p
    }

    pub fn from_factors(c: Q, kappas: &[(Q, u32)]) -> Self {
        let mut f: Vec<(Q, u32)> = Vec::new();
        for (k, xi) in kappas {
            if let Some(e) = f.iter_mut().find(|e| e.0 == *k) {
                e.1 += xi;
            } else {
                f.push((k.clone(), *xi));
            }
        }
        f.sort_by(|a, b| a.0.cmp(&b.0));
        FactoredDimPolynomial { c, factors: f }
    }
}

pub fn rank_one_factored(space: &SymmetricSpaceDescriptor) -> Result<FactoredDimPolynomial> {
    if space.rank != 1 {
        return Err(Error::NotRankOne(space.space_id.clone()));
    }
    let roots = space.active_roots();
    let (i, m, m2) = roots[0];
    let p = PerRootFactorParams::new(m, m2, space.rho_pairing(i))?;
    let step = q(p.step());
    // rho + s + step n = step (n + kappa)
    let kappas: Vec<(Q, u32)> = p.shifts().iter().map(|s| ((&p.rho_pairing + s) / &step, 1)).collect();
    let mut c = Q::one();
    for (k, _) in &kappas {
        c /= k;
    }
    Ok(FactoredDimPolynomial::from_factors(c, &kappas))
}

// ---------------------------------------------------------------------------
// Type II

#[derive(Debug, Clone)]
pub struct WeylEvaluator {
    pub rank: usize,
    /// 2 (omega_i, alpha)/(alpha, alpha) per root.
    coef: Vec<Vec<i64>>,
    /// 2 (rho, alpha)/(alpha, alpha) per root.
    height: Vec<i64>,
    denominator: BigInt,
    gram: Vec<Vec<Q>>,
    rho_dot: Vec<Q>,
}

impl WeylEvaluator {
    pub fn new(group: &CompactGroupDescriptor) -> Self {
        let sys = &group.root_system;
        let mut coef = Vec::new();
        let mut height = Vec::new();
        for a in &sys.positive_roots {
            let k = q(2) / a.norm2();
            coef.push(
                group
                    .fundamental_weights
                    .iter()
                    .map(|w| (w.dot(a) * &k).to_integer().to_i64().unwrap())
                    .collect(),
            );
            height.push((group.rho.dot(a) * &k).to_integer().to_i64().unwrap());
        }
        let denominator = height.iter().fold(BigInt::one(), |acc, &h| acc * h);
        let fw = &group.fundamental_weights;
        WeylEvaluator {
            rank: sys.rank,
            coef,
            height,
            denominator,
            gram: fw.iter().map(|a| fw.iter().map(|b| a.dot(b)).collect()).collect(),
            rho_dot: fw.iter().map(|b| b.dot(&group.rho)).collect(),
        }
    }

    fn numerator(&self, w: &[u64]) -> BigInt {
        let mut acc: u128 = 1;
        let mut big: Option<BigInt> = None;
        for (c, h) in self.coef.iter().zip(&self.height) {
            let v = c.iter().zip(w).map(|(c, &n)| c * n as i64).sum::<i64>() + h;
            match &mut big {
                None => match acc.checked_mul(v as u128) {
                    Some(x) => acc = x,
                    None => big = Some(BigInt::from(acc) * v),
                },
                Some(b) => *b *= v,
            }
        }
        big.unwrap_or_else(|| BigInt::from(acc))
    }

    pub fn eval(&self, w: &[u64]) -> Result<BigInt> {
        if w.len() != self.rank {
            return Err(Error::InvalidWeight(format!(
                "expected {} coordinates, got {}",
                self.rank,
                w.len()
            )));
        }
        let (qt, r) = self.numerator(w).div_rem(&self.denominator);
        debug_assert!(r.is_zero());
        Ok(qt)
    }

    pub fn eval_f64(&self, w: &[u64]) -> Result<f64> {
        let d = self.eval(w)?;
        Ok(d.to_f64().unwrap_or(f64::INFINITY))
    }

    pub fn casimir(&self, w: &[u64]) -> Q {
        let n: Vec<Q> = w.iter().map(|&x| q(x as i64)).collect();
        let mut c = Q::zero();
        for i in 0..self.rank {
            for j in 0..self.rank {
                c += &n[i] * &n[j] * &self.gram[i][j];
            }
            c += q(2) * &n[i] * &self.rho_dot[i];
        }
        c
    }

    pub fn casimir_f64(&self, w: &[u64]) -> f64 {
        to_f64(&self.casimir(w))
    }
}

pub fn dim_type_II(group: &CompactGroupDescriptor, weight: &DominantWeight) -> Result<BigInt> {
    WeylEvaluator::new(group).eval(&weight.coords)
}

/// (lambda, lambda + 2 rho_X) in the ambient metric.
pub fn casimir_type_I(space: &SymmetricSpaceDescriptor, weight: &ClassOneWeight) -> Result<Q> {
    let l = class_one_vector(space, weight)?;
    let t = l.add(&space.rho_x.scale(&q(2)));
    Ok(l.dot(&t))
}

/// (nu, nu + 2 rho) in the ambient metric.
pub fn casimir_type_II(group: &CompactGroupDescriptor, weight: &DominantWeight) -> Result<Q> {
    let v = dominant_vector(group, weight)?;
    let t = v.add(&group.rho.scale(&q(2)));
    Ok(v.dot(&t))
}

// ---------------------------------------------------------------------------
// Harish-Chandra c-function

/// Unnormalised c_alpha as a function of w = i (lambda, alpha_0):
/// 2^-w Gamma(w) / (Gamma(m/4 + 1/2 + w/2) Gamma(m/4 + m2/2 + w/2)).
pub fn ln_c_alpha(m: u32, m2: u32, w: Complex64) -> Result<Complex64> {
    let a = m as f64 / 4.0 + 0.5;
    let b = m as f64 / 4.0 + m2 as f64 / 2.0;
    let lg = log_gamma_complex(w)? - log_gamma_complex(w * 0.5 + a)?;
    let lb = if b == 0.0 && w == Complex64::new(0.0, 0.0) {
        return Err(Error::Pole(0.0));
    } else {
        log_gamma_complex(w * 0.5 + b)?
    };
    Ok(lg - lb - w * std::f64::consts::LN_2)
}

/// The m_2alpha = 0 form after the duplication formula:
/// 2^(m/2 - 1) Gamma(w) / (sqrt(pi) Gamma(m/2 + w)).
pub fn ln_c_alpha_simplified(m: u32, w: Complex64) -> Result<Complex64> {
    let mh = m as f64 / 2.0;
    Ok(
        log_gamma_complex(w)? - log_gamma_complex(w + mh)? + (mh - 1.0) * std::f64::consts::LN_2
            - 0.5 * std::f64::consts::PI.ln(),
    )
}

/// c(lambda) = prod over indivisible positive roots, normalised so that
/// c(-i rho_X) = 1. `lambda` is given in ambient coordinates.
pub fn c_function(space: &SymmetricSpaceDescriptor, lambda: &[Complex64]) -> Result<Complex64> {
    let i = Complex64::new(0.0, 1.0);
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, m, m2) in space.active_roots() {
        let a0 = space.root_system.positive_roots[k].alpha0().to_f64();
        if a0.len() != lambda.len() {
            return Err(Error::Domain("lambda has the wrong dimension".into()));
        }
        let pair: Complex64 = lambda.iter().zip(&a0).map(|(l, a)| l * a).sum();
        let rho = to_f64(&space.rho_pairing(k));
        acc += ln_c_alpha(m, m2, i * pair)? - ln_c_alpha(m, m2, Complex64::new(rho, 0.0))?;
    }
    Ok(acc.exp())
}

/// Dimension from the c-function ratio c(i rho) c(-i rho) / (c(i mu) c(-i mu)), mu = lambda + rho_X.
///
/// At class-one weights numerator and denominator both sit on gamma poles.
/// The ratio is analytic in a displacement mu -> mu + eps rho_X, so we take
/// the mean over a circle in eps, which returns the value at eps = 0.
pub fn dim_via_c_function(space: &SymmetricSpaceDescriptor, weight: &ClassOneWeight) -> Result<f64> {
    let lambda = class_one_vector(space, weight)?;
    let mu = lambda.add(&space.rho_x).to_f64();
    let rho = space.rho_x.to_f64();
    // Radius: half the distance to the nearest zero of the shifted polynomial.
    let mut radius = f64::INFINITY;
    for (k, m, m2) in space.active_roots() {
        let p = PerRootFactorParams::new(m, m2, space.rho_pairing(k))?;
        for s in p.shifts() {
            let r = to_f64(&(&p.rho_pairing + &s)).abs() / to_f64(&p.rho_pairing);
            radius = radius.min(r);
        }
    }
    let radius = (radius / 2.0).min(0.25);
    const K: usize = 64;
    let mut sum = Complex64::new(0.0, 0.0);
    for j in 0..K {
        let t = 2.0 * std::f64::consts::PI * (j as f64 + 0.5) / K as f64;
        let eps = Complex64::from_polar(radius, t);
        let shifted_mu: Vec<Complex64> = mu.iter().zip(&rho).map(|(m, r)| *m + eps * r).collect();
        let shifted_rho: Vec<Complex64> = rho.iter().map(|r| eps * r + r).collect();
        let i = Complex64::new(0.0, 1.0);
        let ln = |v: &[Complex64], sign: f64| -> Result<Complex64> {
            let arg: Vec<Complex64> = v.iter().map(|z| i * z * sign).collect();
            Ok(c_function(space, &arg)?.ln())
        };
        let num = ln(&shifted_rho, 1.0)? + ln(&shifted_rho, -1.0)?;
        let den = ln(&shifted_mu, 1.0)? + ln(&shifted_mu, -1.0)?;
        sum += (num - den).exp();
    }
    Ok((sum / K as f64).re)
}

/// Degree of the rank-one polynomial, with its log for huge values.
pub fn ln_dim_exact(d: &Q) -> f64 {
    ln_abs(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{lookup_group, lookup_space};
    use crate::weights::enumerate_class_one;

    fn w(c: &[u64]) -> ClassOneWeight {
        ClassOneWeight::new(c.to_vec())
    }

    fn dim(id: &str, c: &[u64]) -> Q {
        dim_class_one(&lookup_space(id).unwrap(), &w(c)).unwrap()
    }

    #[test]
    fn factor_examples() {
        let rho = qf(7, 3);
        let p1 = PerRootFactorParams::new(1, 0, rho.clone()).unwrap();
        let p2 = PerRootFactorParams::new(2, 0, rho.clone()).unwrap();
        for n in 0..10u64 {
            let r = (q(n as i64) + &rho) / &rho;
            assert_eq!(dim_factor(&p1, n), r);
            assert_eq!(dim_factor(&p2, n), &r * &r);
        }
        let s2 = PerRootFactorParams::new(1, 0, qf(1, 2)).unwrap();
        assert_eq!(dim_factor(&s2, 3), q(7));
        assert!(matches!(
            PerRootFactorParams::new(3, 1, q(2)),
            Err(Error::InconsistentMultiplicities { .. })
        ));
        assert!(PerRootFactorParams::new(4, 2, q(5)).is_err());
    }

    #[test]
    fn rj_bookkeeping() {
        let p = PerRootFactorParams::new(8, 7, q(11)).unwrap();
        assert_eq!((p.l_alpha, p.j_alpha, p.r_alpha), (2, 3, 5));
        assert_eq!(p.case, FactorCase::CaseA);
        let p = PerRootFactorParams::new(6, 3, q(6)).unwrap();
        assert_eq!((p.l_alpha, p.j_alpha, p.r_alpha, p.case), (1, 1, 2, FactorCase::CaseB));
        for (m, m2) in [(1, 0), (2, 0), (5, 0), (6, 0), (0, 3), (4, 1), (2, 1), (8, 7), (6, 1)] {
            let p = PerRootFactorParams::new(m, m2, q(20)).unwrap();
            assert_eq!(p.degree() as u32, m + m2, "m={m} m2={m2}");
            assert_eq!(dim_factor(&p, 0), Q::one());
        }
    }

    #[test]
    fn class_one_examples() {
        assert_eq!(dim("S:2", &[3]), q(7));
        assert_eq!(dim("CP:2", &[2]), q(27));
        for id in ["S:5", "EIII", "AI:4", "FII", "GI"] {
            let s = lookup_space(id).unwrap();
            assert_eq!(dim_class_one(&s, &w(&vec![0; s.rank])).unwrap(), Q::one());
        }
    }

    // Dimensions of known spherical representations.
    #[test]
    fn known_spherical_dimensions() {
        assert_eq!(dim("EIII", &[1, 0]), q(78));
        assert_eq!(dim("EIII", &[0, 1]), q(650));
        assert_eq!(dim("EIII", &[1, 1]), q(34749));
        // SU(3)/SO(3): symmetric square Sym^2(C^3) has dimension 6.
        let ai3 = lookup_space("AI:3").unwrap();
        assert_eq!(dim_class_one(&ai3, &w(&[1, 0])).unwrap(), q(6));
        assert_eq!(dim_class_one(&ai3, &w(&[0, 1])).unwrap(), q(6));
        assert_eq!(dim("AI:3", &[1, 1]), q(27));
        // Grassmannian SU(4)/S(U(2)xU(2)): adjoint 15, then 20 and 175.
        let mut v = vec![
            dim("AIII:2,2", &[1, 0]),
            dim("AIII:2,2", &[0, 1]),
            dim("AIII:2,2", &[1, 1]),
        ];
        v.sort();
        assert_eq!(v, vec![q(15), q(20), q(175)]);
        assert_eq!(dim("FII", &[1]), q(26));
        assert_eq!(dim("FII", &[2]), q(324));
        assert_eq!(dim("HP:2", &[1]), q(14));
        assert_eq!(dim("HP:2", &[2]), q(90));
        // EIV = E6/F4: the first spherical representation is the 27.
        assert_eq!(dim("EIV", &[1, 0]), q(27));
        // G2/SO(4): 7 and 27 for the two fundamental rays.
        let mut g = [dim("GI", &[1, 0]), dim("GI", &[0, 1])];
        g.sort();
        assert_eq!(g[0], q(27));
    }

    #[test]
    fn sphere_harmonics() {
        // dim of degree-n harmonics on S^m.
        for m in 2..9i64 {
            let s = lookup_space(&format!("S:{m}")).unwrap();
            let ev = DimEvaluator::new(&s).unwrap();
            for n in 0..30i64 {
                let binom = |a: i64, b: i64| -> Q { (0..b).fold(Q::one(), |acc, i| acc * q(a - i) / q(i + 1)) };
                let want = binom(n + m, m) - if n >= 2 { binom(n + m - 2, m) } else { Q::zero() };
                assert_eq!(ev.eval(&[n as u64]).unwrap(), want, "S:{m} n={n}");
            }
        }
    }

    #[test]
    fn dims_are_positive_integers() {
        for e in crate::rootdata::catalog() {
            let Ok(s) = e.space else { continue };
            let ev = DimEvaluator::new(&s).unwrap();
            let b = if s.rank <= 2 {
                6
            } else if s.rank <= 4 {
                2
            } else {
                1
            };
            for wt in enumerate_class_one(&s, b).unwrap() {
                let d = ev.eval(&wt.coords).unwrap();
                assert!(is_integer(&d), "{} {:?}", e.id, wt.coords);
                assert!(d >= Q::one());
                assert_eq!(d == Q::one(), wt.is_zero(), "{} {:?}", e.id, wt.coords);
            }
        }
    }

    #[test]
    fn gamma_evaluator_matches_reference_path() {
        for id in [
            "S:4", "CP:3", "FII", "AI:3", "AIII:3,2", "DIII:5", "CII:2,2", "EIII", "GI", "EVIII",
        ] {
            let s = lookup_space(id).unwrap();
            let g = GammaRatioEvaluator::new(&s).unwrap();
            for k in 0..4u64 {
                let c: Vec<u64> = (0..s.rank as u64).map(|i| (i * 5 + k * 3) % 7).collect();
                let a = g.ln_eval(&c).unwrap();
                let b = ln_dim_class_one_numeric(&s, &w(&c)).unwrap();
                assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0), "{id} {c:?}");
            }
        }
    }

    #[test]
    fn numeric_examples() {
        let s3 = lookup_space("S:3").unwrap();
        assert!((dim_class_one_numeric(&s3, &w(&[1])).unwrap() - 4.0).abs() < 1e-9);
        let hp1 = lookup_space("HP:1").unwrap();
        assert!((dim_class_one_numeric(&hp1, &w(&[1])).unwrap() - 5.0).abs() < 1e-9);
        let f = lookup_space("FII").unwrap();
        assert!((dim_class_one_numeric(&f, &w(&[0])).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn numeric_overflow_reported() {
        let s = lookup_space("EVIII").unwrap();
        let r = dim_class_one_numeric(&s, &w(&[400; 8]));
        assert!(matches!(r, Err(Error::NumericOverflow(_))));
        // log space still works
        let ln = ln_dim_class_one_numeric(&s, &w(&[400; 8])).unwrap();
        let exact = dim_class_one(&s, &w(&[400; 8])).unwrap();
        assert!(((ln - ln_abs(&exact)) / ln).abs() < 1e-12);
    }

    #[test]
    fn rank_one_factored_forms() {
        let s4 = rank_one_factored(&lookup_space("S:4").unwrap()).unwrap();
        assert_eq!(s4.c, qf(1, 3));
        assert_eq!(s4.factors, vec![(q(1), 1), (qf(3, 2), 1), (q(2), 1)]);
        let cp3 = rank_one_factored(&lookup_space("CP:3").unwrap()).unwrap();
        assert_eq!(cp3.factors, vec![(q(1), 2), (qf(3, 2), 1), (q(2), 2)]);
        // Normalised so that d(0) = 1.
        assert_eq!(cp3.c, qf(1, 6));
        let f = rank_one_factored(&lookup_space("FII").unwrap()).unwrap();
        assert_eq!(f.degree(), 15);
        assert_eq!(f.eval(&Q::zero()), Q::one());
        assert!(matches!(
            rank_one_factored(&lookup_space("AI:3").unwrap()),
            Err(Error::NotRankOne(_))
        ));
    }

    #[test]
    fn factored_matches_exact_on_long_range() {
        for id in [
            "S:2", "S:3", "S:6", "S:9", "CP:1", "CP:2", "CP:5", "HP:1", "HP:3", "FII", "CI:1", "DIII:3", "CII:1,1",
        ] {
            let s = lookup_space(id).unwrap();
            let f = rank_one_factored(&s).unwrap();
            let ev = DimEvaluator::new(&s).unwrap();
            for n in 0..=200u64 {
                assert_eq!(f.eval(&q(n as i64)), ev.eval(&[n]).unwrap(), "{id} n={n}");
            }
            assert_eq!(f.degree() as u64, s.dim - 1);
            assert_eq!(f.expand().len() as u64, s.dim);
            for (k, xi) in &f.factors {
                assert!(is_integer(&(k * q(2))));
                assert!((1..=3).contains(xi), "{id}");
            }
        }
    }

    #[test]
    fn type_two_examples() {
        let su2 = lookup_group("SU:2").unwrap();
        for n in 0..20u64 {
            assert_eq!(
                dim_type_II(&su2, &DominantWeight::new(vec![n])).unwrap(),
                BigInt::from(n + 1)
            );
        }
        let su3 = lookup_group("SU:3").unwrap();
        assert_eq!(
            dim_type_II(&su3, &DominantWeight::new(vec![1, 1])).unwrap(),
            BigInt::from(8)
        );
        assert_eq!(
            dim_type_II(&su3, &DominantWeight::new(vec![1, 0])).unwrap(),
            BigInt::from(3)
        );
        let g2 = lookup_group("G2").unwrap();
        let mut d: Vec<BigInt> = [[1, 0], [0, 1]]
            .iter()
            .map(|c| dim_type_II(&g2, &DominantWeight::new(c.to_vec())).unwrap())
            .collect();
        d.sort();
        assert_eq!(d, vec![BigInt::from(7), BigInt::from(14)]);
        let e8 = lookup_group("E8").unwrap();
        let mut fund: Vec<BigInt> = (0..8)
            .map(|i| {
                let mut c = vec![0; 8];
                c[i] = 1;
                dim_type_II(&e8, &DominantWeight::new(c)).unwrap()
            })
            .collect();
        fund.sort();
        assert_eq!(fund[0], BigInt::from(248));
        assert_eq!(fund[1], BigInt::from(3875));
    }

    #[test]
    fn casimir_examples() {
        let su2 = lookup_group("SU:2").unwrap();
        assert_eq!(casimir_type_II(&su2, &DominantWeight::new(vec![1])).unwrap(), qf(3, 2));
        assert_eq!(casimir_type_II(&su2, &DominantWeight::new(vec![0])).unwrap(), Q::zero());
        let s2 = lookup_space("S:2").unwrap();
        assert_eq!(casimir_type_I(&s2, &w(&[1])).unwrap(), q(2));
        let ev = DimEvaluator::new(&s2).unwrap();
        assert_eq!(ev.casimir(&[1]), q(2));
        let we = WeylEvaluator::new(&su2);
        assert_eq!(we.casimir(&[1]), qf(3, 2));
    }

    #[test]
    fn group_manifold_check() {
        let s3 = lookup_space("S:3").unwrap();
        let su2 = lookup_group("SU:2").unwrap();
        for n in 0..100u64 {
            let a = dim_class_one(&s3, &w(&[n])).unwrap();
            let b = dim_type_II(&su2, &DominantWeight::new(vec![n])).unwrap();
            assert_eq!(a, Q::from_integer(&b * &b));
        }
    }

    #[test]
    fn isomorphisms() {
        let hp1 = DimEvaluator::new(&lookup_space("HP:1").unwrap()).unwrap();
        let s4 = DimEvaluator::new(&lookup_space("S:4").unwrap()).unwrap();
        let cp1 = DimEvaluator::new(&lookup_space("CP:1").unwrap()).unwrap();
        let s2 = DimEvaluator::new(&lookup_space("S:2").unwrap()).unwrap();
        for n in 0..=200u64 {
            assert_eq!(hp1.eval(&[n]).unwrap(), s4.eval(&[n]).unwrap());
            assert_eq!(cp1.eval(&[n]).unwrap(), s2.eval(&[n]).unwrap());
        }
    }

    #[test]
    fn c_function_simplified_form_agrees() {
        for m in [1u32, 2, 3, 4, 7] {
            for w in [
                Complex64::new(0.0, 2.7),
                Complex64::new(1.3, -0.4),
                Complex64::new(0.2, 5.0),
            ] {
                let a = ln_c_alpha(m, 0, w).unwrap().exp();
                let b = ln_c_alpha_simplified(m, w).unwrap().exp();
                assert!(((a - b) / b).norm() < 1e-10, "m={m} w={w}");
            }
        }
        // S:5 at lambda = 2.7 i alpha_0-dual
        let s5 = lookup_space("S:5").unwrap();
        let a = s5.root_system.positive_roots[0].to_f64();
        let lam: Vec<Complex64> = a.iter().map(|x| Complex64::new(0.0, 2.7) * x).collect();
        let c = c_function(&s5, &lam).unwrap();
        let w = Complex64::new(0.0, 1.0) * Complex64::new(0.0, 2.7);
        let direct =
            (ln_c_alpha_simplified(4, w).unwrap() - ln_c_alpha_simplified(4, Complex64::new(2.0, 0.0)).unwrap()).exp();
        assert!(((c - direct) / direct).norm() < 1e-10);
    }

    #[test]
    fn c_function_normalised() {
        for id in ["S:4", "CP:3", "EIII", "AI:3"] {
            let s = lookup_space(id).unwrap();
            let lam: Vec<Complex64> = s.rho_x.to_f64().iter().map(|r| Complex64::new(0.0, -1.0) * r).collect();
            let c = c_function(&s, &lam).unwrap();
            assert!((c - 1.0).norm() < 1e-12, "{id}");
        }
    }

    #[test]
    fn c_function_ratio_gives_dimensions() {
        for (id, b) in [
            ("S:2", 5u64),
            ("S:5", 5),
            ("CP:3", 4),
            ("HP:2", 3),
            ("FII", 3),
            ("AI:3", 2),
            ("EIII", 2),
            ("AIII:3,2", 1),
        ] {
            let s = lookup_space(id).unwrap();
            for wt in enumerate_class_one(&s, b).unwrap() {
                let exact = to_f64(&dim_class_one(&s, &wt).unwrap());
                let via_c = dim_via_c_function(&s, &wt).unwrap();
                assert!(
                    ((via_c - exact) / exact).abs() < 1e-8,
                    "{id} {:?}: {via_c} vs {exact}",
                    wt.coords
                );
            }
        }
    }

    #[test]
    fn c_magnitude_monotone_in_multiplicity() {
        // BC1 with all multiplicities doubled: |c(t i)| at fixed t varies monotonically.
        let t = Complex64::new(1.7, 0.0);
        let mags: Vec<f64> = [(2u32, 1u32), (4, 2), (8, 4)]
            .iter()
            .map(|&(m, m2)| ln_c_alpha(m, m2, t).unwrap().re)
            .collect();
        assert!(mags[0] > mags[1] && mags[1] > mags[2]);
    }

    #[test]
    fn c_polynomials_against_gamma() {
        use crate::specfun::gamma;
        for l in 1..=6u32 {
            for x in [0.13, 0.37, 1.21, 2.45] {
                let lf = l as f64;
                let c0g = gamma(lf + x).unwrap() * gamma(lf - x).unwrap() / (gamma(x).unwrap() * gamma(-x).unwrap());
                assert!(((c0_f64(x, l) - c0g) / c0g).abs() < 1e-9, "c0 l={l} x={x}");
                let c1g = gamma(lf + 0.5 + x).unwrap() * gamma(lf + 0.5 - x).unwrap()
                    / (gamma(0.5 + x).unwrap() * gamma(0.5 - x).unwrap());
                assert!(((c1_f64(x, l) - c1g) / c1g).abs() < 1e-9, "c1 l={l} x={x}");
            }
        }
        assert_eq!(c0(&qf(1, 3), 3), -qf(1, 9) * (q(1) - qf(1, 9)) * (q(4) - qf(1, 9)));
        assert_eq!(c1(&qf(1, 3), 1), qf(1, 4) - qf(1, 9));
    }
}
