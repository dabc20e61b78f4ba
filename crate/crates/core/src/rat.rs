//! Small helpers over `BigRational`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_f64(x: &Q) -> f64 {
    if let Some(v) = x.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // Ratio of huge integers: scale both down by the same power of two.
    let n = x.numer();
    let d = x.denom();
    let shift = n.bits().max(d.bits()).saturating_sub(900);
    let nf = (n >> shift).to_f64().unwrap_or(f64::NAN);
    let df = (d >> shift).to_f64().unwrap_or(f64::NAN);
    nf / df
}

/// Natural log of a positive rational, accurate even when it overflows f64.
pub fn ln_abs(x: &Q) -> f64 {
    ln_abs_int(x.numer()) - ln_abs_int(x.denom())
}

pub fn ln_abs_int(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits < 1000 {
        return n.abs().to_f64().unwrap().ln();
    }
    let shift = bits - 60;
    let top = (n.abs() >> shift).to_f64().unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

pub fn is_integer(x: &Q) -> bool {
    x.denom().is_one()
}

pub fn floor_i64(x: &Q) -> i64 {
    x.floor().to_integer().to_i64().expect("rational out of i64 range")
}

pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let n: BigInt = a.trim().parse().ok()?;
        let d: BigInt = b.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Q::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(Q::from_integer(n))
    }
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

/// Solve `a x = b` exactly by Gaussian elimination. Returns None if singular.
#[allow(clippy::needless_range_loop)]
pub fn solve(mut a: Vec<Vec<Q>>, mut b: Vec<Q>) -> Option<Vec<Q>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        let p = a[col][col].clone();
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = &a[r][col] / &p;
                for c in col..n {
                    let t = &f * &a[col][c];
                    a[r][c] -= t;
                }
                let t = &f * &b[col];
                b[r] -= t;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}
