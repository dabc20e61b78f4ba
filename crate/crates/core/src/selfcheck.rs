//! Quick invariant suite behind `wzeta selfcheck`.

use crate::dims::{dim_class_one, dim_class_one_numeric, dim_via_c_function, rank_one_factored, DimEvaluator};
use crate::genseries::{gen_series_direct, gen_series_mf, zeta_values_from_rank_one};
use crate::rat::{q, to_f64};
use crate::rootdata::{catalog, lookup_space};
use crate::sphere_oracle::{delta_kernel_test, kernel_at_zero, orthogonality_check};
use crate::weights::{class_one_vector, is_class_one, ClassOneWeight};
use crate::zeta::{hurwitz_relation_check, zeta_type_I, zeta_type_II, ZetaRequest};
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &str, f: impl FnOnce() -> crate::Result<(bool, String)>) -> CheckResult {
    match f() {
        Ok((passed, detail)) => CheckResult {
            name: name.into(),
            passed,
            detail,
        },
        Err(e) => CheckResult {
            name: name.into(),
            passed: false,
            detail: format!("error: {e}"),
        },
    }
}

pub fn run_selfcheck() -> Vec<CheckResult> {
    let mut out = Vec::new();

    out.push(check("trivial weight has dimension one", || {
        let mut bad = Vec::new();
        for e in catalog() {
            let Ok(s) = e.space else { continue };
            if dim_class_one(&s, &ClassOneWeight::new(vec![0; s.rank]))? != q(1) {
                bad.push(e.id);
            }
        }
        Ok((bad.is_empty(), format!("failures: {bad:?}")))
    }));

    out.push(check("exact and gamma-ratio dimensions agree", || {
        let mut worst = 0.0f64;
        for e in catalog() {
            let Ok(s) = e.space else { continue };
            for k in 0..3u64 {
                let w = ClassOneWeight::new((0..s.rank as u64).map(|i| (i + k) % 3).collect());
                let a = to_f64(&dim_class_one(&s, &w)?);
                let b = dim_class_one_numeric(&s, &w)?;
                worst = worst.max(((a - b) / a).abs());
            }
        }
        Ok((worst < 1e-9, format!("max relative gap {worst:.2e}")))
    }));

    out.push(check("c-function ratio matches closed form", || {
        let mut worst = 0.0f64;
        for id in ["S:4", "CP:3", "HP:2", "FII", "AI:3", "EIII", "GI"] {
            let s = lookup_space(id)?;
            let w = ClassOneWeight::new(vec![1; s.rank]);
            let a = to_f64(&dim_class_one(&s, &w)?);
            worst = worst.max(((a - dim_via_c_function(&s, &w)?) / a).abs());
        }
        Ok((worst < 1e-8, format!("max relative gap {worst:.2e}")))
    }));

    out.push(check("class-one basis satisfies the highest-weight conditions", || {
        let mut bad = Vec::new();
        for e in catalog() {
            let Ok(s) = e.space else { continue };
            let w = ClassOneWeight::new(vec![1; s.rank]);
            if !is_class_one(&s, &class_one_vector(&s, &w)?) {
                bad.push(e.id);
            }
        }
        Ok((bad.is_empty(), format!("failures: {bad:?}")))
    }));

    out.push(check("rank-one factored polynomial degree is dim - 1", || {
        let mut bad = Vec::new();
        for e in catalog() {
            let Ok(s) = e.space else { continue };
            if s.rank == 1 && rank_one_factored(&s)?.degree() as u64 != s.dim - 1 {
                bad.push(e.id);
            }
        }
        Ok((bad.is_empty(), format!("failures: {bad:?}")))
    }));

    out.push(check("isomorphic spaces share dimensions", || {
        let pairs = [("HP:1", "S:4"), ("CP:1", "S:2")];
        for (a, b) in pairs {
            let ea = DimEvaluator::new(&lookup_space(a)?)?;
            let eb = DimEvaluator::new(&lookup_space(b)?)?;
            for n in 0..=200u64 {
                if ea.eval(&[n])? != eb.eval(&[n])? {
                    return Ok((false, format!("{a} vs {b} differ at n = {n}")));
                }
            }
        }
        Ok((true, "n <= 200".into()))
    }));

    out.push(check("known zeta values", || {
        let z2 = PI * PI / 6.0;
        let a = zeta_type_II(&ZetaRequest::new("SU:2", 2.0))?.value - z2;
        let b = zeta_type_I(&ZetaRequest::new("S:3", 1.0))?.value - z2;
        let c = zeta_type_I(&ZetaRequest::new("S:2", 2.0))?.value - PI * PI / 8.0;
        let worst = a.abs().max(b.abs()).max(c.abs());
        Ok((worst < 1e-8, format!("max error {worst:.2e}")))
    }));

    out.push(check("Hurwitz relation for S^2", || {
        let mut worst = 0.0f64;
        for s in [2.0, 3.0, 5.0] {
            worst = worst.max(hurwitz_relation_check(2, s)?.difference);
        }
        Ok((worst < 1e-10, format!("max difference {worst:.2e}")))
    }));

    out.push(check("generating series via ζ[Π] matches direct zeta", || {
        let mut worst = 0.0f64;
        for id in ["S:2", "S:5", "CP:3", "HP:2", "FII"] {
            let s = lookup_space(id)?;
            let a = zeta_values_from_rank_one(&s, 2, 1e-12)?.value;
            let b = zeta_type_I(&ZetaRequest::new(id, 2.0).tol(1e-12))?.value;
            worst = worst.max((a - b).abs());
        }
        Ok((worst < 1e-9, format!("max difference {worst:.2e}")))
    }));

    out.push(check("partial fractions match direct summation", || {
        let k = [1.0, 2.5, 4.0];
        let t = [0.1, -0.2, 0.3];
        let d = (gen_series_mf(&k, &t)? - gen_series_direct(&k, &t, 1e-14)?.value).abs();
        Ok((d < 1e-10, format!("difference {d:.2e}")))
    }));

    out.push(check("Legendre orthogonality on S^2", || {
        let mut worst = 0.0f64;
        for n in 0..=20 {
            for m in 0..=20 {
                worst = worst.max(orthogonality_check(n, m, 128)?.residual);
            }
        }
        Ok((worst < 1e-12, format!("max residual {worst:.2e}")))
    }));

    out.push(check("delta kernel", || {
        let e8 = delta_kernel_test(8, |t| (-t * t).exp())?;
        let e32 = delta_kernel_test(32, |t| (-t * t).exp())?;
        let k = kernel_at_zero(16)?;
        Ok((
            e32 < e8 && k == 289.0,
            format!("errors {e8:.2e} -> {e32:.2e}, K_16(0) = {k}"),
        ))
    }));

    out
}
