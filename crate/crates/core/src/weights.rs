//! Dominant weights of compact groups and class-one weights of symmetric spaces.

use crate::error::{Error, Result};
use crate::rat::{q, Q};
use crate::rootdata::{dual_basis, is_nonneg_int, CompactGroupDescriptor, RootVector, SymmetricSpaceDescriptor};
use serde::{Deserialize, Serialize};

/// Coordinates on the class-one fundamental weights, one per simple root.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ClassOneWeight {
    pub coords: Vec<u64>,
}

/// Coordinates on the fundamental weights of an ordinary root system.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DominantWeight {
    pub coords: Vec<u64>,
}

impl ClassOneWeight {
    pub fn new(coords: Vec<u64>) -> Self {
        ClassOneWeight { coords }
    }
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl DominantWeight {
    pub fn new(coords: Vec<u64>) -> Self {
        DominantWeight { coords }
    }
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

/// 2 when 2 alpha_j is a root (the pairing with alpha_j must then be even).
pub fn simple_step(space: &SymmetricSpaceDescriptor, j: usize) -> i64 {
    if space.root_system.is_divisible(space.root_system.simple_roots[j]) {
        2
    } else {
        1
    }
}

/// Basis mu_i with (mu_i, alpha_j)/(alpha_j, alpha_j) = step_j delta_ij.
pub fn class_one_basis(space: &SymmetricSpaceDescriptor) -> Vec<RootVector> {
    let sys = &space.root_system;
    dual_basis(sys, |j| {
        Q::from_integer(1.into()) / (q(simple_step(space, j)) * sys.simple(j).norm2())
    })
}

pub fn class_one_vector(space: &SymmetricSpaceDescriptor, w: &ClassOneWeight) -> Result<RootVector> {
    combine(&class_one_basis(space), &w.coords)
}

pub fn dominant_vector(group: &CompactGroupDescriptor, w: &DominantWeight) -> Result<RootVector> {
    combine(&group.fundamental_weights, &w.coords)
}

fn combine(basis: &[RootVector], coords: &[u64]) -> Result<RootVector> {
    if basis.len() != coords.len() {
        return Err(Error::InvalidWeight(format!(
            "expected {} coordinates, got {}",
            basis.len(),
            coords.len()
        )));
    }
    let dim = basis.first().map(|b| b.coords.len()).unwrap_or(0);
    let mut v = RootVector::zero(dim);
    for (b, &n) in basis.iter().zip(coords) {
        v = v.add(&b.scale(&q(n as i64)));
    }
    Ok(v)
}

/// Check both class-one conditions against every positive root.
pub fn is_class_one(space: &SymmetricSpaceDescriptor, lambda: &RootVector) -> bool {
    let sys = &space.root_system;
    sys.positive_roots.iter().enumerate().all(|(i, a)| {
        let p = lambda.dot(a) / a.norm2();
        if !is_nonneg_int(&p) {
            return false;
        }
        !sys.is_divisible(i) || p.to_integer() % 2 == 0.into()
    })
}

pub fn is_dominant(group: &CompactGroupDescriptor, nu: &RootVector) -> bool {
    group
        .root_system
        .positive_roots
        .iter()
        .all(|a| is_nonneg_int(&(q(2) * nu.dot(a) / a.norm2())))
}

/// All coordinate vectors in [0, bound]^rank, ordered by total degree and
/// then lexicographically.
pub fn box_weights(rank: usize, bound: u64) -> Result<Vec<Vec<u64>>> {
    let side = bound
        .checked_add(1)
        .ok_or_else(|| Error::Domain("box bound overflow".into()))?;
    let count = (side as f64).powi(rank as i32);
    if count > 5e7 {
        return Err(Error::Domain(format!(
            "box of {count:.3e} weights is too large to list"
        )));
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut cur = vec![0u64; rank];
    loop {
        out.push(cur.clone());
        let mut i = rank;
        loop {
            if i == 0 {
                out.sort_by(|a, b| {
                    let sa: u64 = a.iter().sum();
                    let sb: u64 = b.iter().sum();
                    sa.cmp(&sb).then_with(|| a.cmp(b))
                });
                return Ok(out);
            }
            i -= 1;
            if cur[i] < bound {
                cur[i] += 1;
                break;
            }
            cur[i] = 0;
        }
    }
}

pub fn enumerate_class_one(space: &SymmetricSpaceDescriptor, box_bound: u64) -> Result<Vec<ClassOneWeight>> {
    Ok(box_weights(space.rank, box_bound)?
        .into_iter()
        .map(ClassOneWeight::new)
        .collect())
}

pub fn enumerate_dominant(group: &CompactGroupDescriptor, box_bound: u64) -> Result<Vec<DominantWeight>> {
    Ok(box_weights(group.root_system.rank, box_bound)?
        .into_iter()
        .map(DominantWeight::new)
        .collect())
}
