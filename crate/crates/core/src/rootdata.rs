//! Root systems and the catalog of compact symmetric spaces and groups.

use crate::error::{Error, Result};
use crate::rat::{dot, fmt_q, q, qf, solve, to_f64, Q};
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    BC,
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::BC => "BC",
            Family::E6 => "E6",
            Family::E7 => "E7",
            Family::E8 => "E8",
            Family::F4 => "F4",
            Family::G2 => "G2",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_uppercase().as_str() {
            "A" => Family::A,
            "B" => Family::B,
            "C" => Family::C,
            "D" => Family::D,
            "BC" => Family::BC,
            "E6" => Family::E6,
            "E7" => Family::E7,
            "E8" => Family::E8,
            "F4" => Family::F4,
            "G2" => Family::G2,
            _ => {
                return Err(Error::UnsupportedFamily {
                    family: s.to_string(),
                    rank: 0,
                })
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootVector {
    pub coords: Vec<Q>,
}

impl RootVector {
    pub fn new(coords: Vec<Q>) -> Self {
        RootVector { coords }
    }

    pub fn zero(dim: usize) -> Self {
        RootVector {
            coords: vec![Q::zero(); dim],
        }
    }

    pub fn dot(&self, other: &RootVector) -> Q {
        dot(&self.coords, &other.coords)
    }

    pub fn norm2(&self) -> Q {
        self.dot(self)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, k: &Q) -> RootVector {
        RootVector {
            coords: self.coords.iter().map(|c| c * k).collect(),
        }
    }

    pub fn add(&self, o: &RootVector) -> RootVector {
        RootVector {
            coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &RootVector) -> RootVector {
        RootVector {
            coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> RootVector {
        RootVector {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    /// alpha / (alpha, alpha)
    pub fn alpha0(&self) -> RootVector {
        self.scale(&(Q::from_integer(1.into()) / self.norm2()))
    }

    /// Reflection of `v` in the hyperplane orthogonal to `self`.
    pub fn reflect(&self, v: &RootVector) -> RootVector {
        let k = q(2) * v.dot(self) / self.norm2();
        v.sub(&self.scale(&k))
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(to_f64).collect()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coords.iter().map(fmt_q).collect()
    }
}

fn lex_desc(a: &RootVector, b: &RootVector) -> Ordering {
    b.coords.cmp(&a.coords)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RestrictedRootSystem {
    pub family: Family,
    pub rank: usize,
    pub ambient_dim: usize,
    /// Simple roots occupy indices `0..rank`.
    pub positive_roots: Vec<RootVector>,
    pub simple_roots: Vec<usize>,
    pub indivisible_positive: Vec<usize>,
    /// Positive roots alpha for which 2 alpha is also a root.
    pub divisible: Vec<usize>,
    /// For each positive root, the index of its double when present.
    pub double_of: Vec<Option<usize>>,
    /// Expansion of each positive root in the simple roots.
    pub simple_coeffs: Vec<Vec<i64>>,
}

impl RestrictedRootSystem {
    pub fn simple(&self, i: usize) -> &RootVector {
        &self.positive_roots[self.simple_roots[i]]
    }

    pub fn is_divisible(&self, i: usize) -> bool {
        self.double_of[i].is_some()
    }

    pub fn label(&self) -> String {
        match self.family {
            Family::E6 | Family::E7 | Family::E8 | Family::F4 | Family::G2 => self.family.to_string(),
            f => format!("{}{}", f, self.rank),
        }
    }
}

pub fn standard_positive_count(family: Family, rank: usize) -> usize {
    match family {
        Family::A => rank * (rank + 1) / 2,
        Family::B | Family::C => rank * rank,
        Family::D => rank * (rank - 1),
        Family::BC => rank * rank + rank,
        Family::E6 => 36,
        Family::E7 => 63,
        Family::E8 => 120,
        Family::F4 => 24,
        Family::G2 => 6,
    }
}

// Roots are generated with doubled integer coordinates so E8's half-integer
// vectors stay exact.
fn pm_pairs(n: usize, out: &mut Vec<Vec<i64>>, dim: usize) {
    for i in 0..n {
        for j in i + 1..n {
            for (si, sj) in [(2, 2), (2, -2), (-2, 2), (-2, -2)] {
                let mut v = vec![0; dim];
                v[i] = si;
                v[j] = sj;
                out.push(v);
            }
        }
    }
}

fn singles(n: usize, k: i64, out: &mut Vec<Vec<i64>>) {
    for i in 0..n {
        for s in [k, -k] {
            let mut v = vec![0; n];
            v[i] = s;
            out.push(v);
        }
    }
}

fn all_roots(family: Family, n: usize) -> (Vec<Vec<i64>>, Vec<i64>) {
    let mut r = Vec::new();
    let desc: Vec<i64> = (1..=n as i64).rev().collect();
    match family {
        Family::A => {
            let d = n + 1;
            for i in 0..d {
                for j in 0..d {
                    if i != j {
                        let mut v = vec![0; d];
                        v[i] = 2;
                        v[j] = -2;
                        r.push(v);
                    }
                }
            }
            return (r, (1..=d as i64).rev().collect());
        }
        Family::B => {
            pm_pairs(n, &mut r, n);
            singles(n, 2, &mut r);
        }
        Family::C => {
            pm_pairs(n, &mut r, n);
            singles(n, 4, &mut r);
        }
        Family::D => pm_pairs(n, &mut r, n),
        Family::BC => {
            pm_pairs(n, &mut r, n);
            singles(n, 2, &mut r);
            singles(n, 4, &mut r);
        }
        Family::F4 => {
            pm_pairs(4, &mut r, 4);
            singles(4, 2, &mut r);
            for mask in 0..16u32 {
                r.push((0..4).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect());
            }
            return (r, vec![8, 4, 2, 1]);
        }
        Family::E6 | Family::E7 | Family::E8 => {
            let mut e8 = Vec::new();
            pm_pairs(8, &mut e8, 8);
            for mask in 0..256u32 {
                if mask.count_ones() % 2 == 0 {
                    e8.push((0..8).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect());
                }
            }
            let keep = |v: &Vec<i64>| match family {
                Family::E8 => true,
                Family::E7 => v[6] + v[7] == 0,
                _ => v[6] + v[7] == 0 && v[5] == v[6],
            };
            r = e8.into_iter().filter(keep).collect();
            return (r, vec![1, 2, 3, 4, 5, 6, 7, 100]);
        }
        Family::G2 => {
            for i in 0..3 {
                for j in 0..3 {
                    if i != j {
                        let mut v = vec![0; 3];
                        v[i] = 2;
                        v[j] = -2;
                        r.push(v);
                    }
                }
                for s in [2, -2] {
                    let mut v = vec![-s; 3];
                    v[i] = 2 * s;
                    r.push(v);
                }
            }
            return (r, vec![1, 2, 4]);
        }
    }
    (r, desc)
}

pub fn build_root_system(family: Family, rank: usize) -> Result<RestrictedRootSystem> {
    let ok = match family {
        Family::A | Family::B | Family::C | Family::BC => rank >= 1,
        Family::D => rank >= 2,
        Family::E6 => rank == 6,
        Family::E7 => rank == 7,
        Family::E8 => rank == 8,
        Family::F4 => rank == 4,
        Family::G2 => rank == 2,
    };
    if !ok || rank > 64 {
        return Err(Error::UnsupportedFamily {
            family: family.to_string(),
            rank,
        });
    }
    let (raw, v) = all_roots(family, rank);
    let ambient_dim = v.len();
    let mut pos: Vec<Vec<i64>> = Vec::new();
    for r in raw {
        let p: i64 = r.iter().zip(&v).map(|(a, b)| a * b).sum();
        assert!(p != 0, "root orthogonal to the ordering vector");
        if p > 0 && !pos.contains(&r) {
            pos.push(r);
        }
    }
    let is_simple = |r: &Vec<i64>| {
        !pos.iter().any(|a| {
            let b: Vec<i64> = r.iter().zip(a).map(|(x, y)| x - y).collect();
            pos.contains(&b)
        })
    };
    let to_root = |r: &Vec<i64>| RootVector::new(r.iter().map(|&c| qf(c, 2)).collect());
    let mut simple: Vec<RootVector> = pos.iter().filter(|r| is_simple(r)).map(to_root).collect();
    let mut rest: Vec<RootVector> = pos.iter().filter(|r| !is_simple(r)).map(to_root).collect();
    simple.sort_by(lex_desc);
    rest.sort_by(lex_desc);
    if simple.len() != rank {
        return Err(Error::UnsupportedFamily {
            family: family.to_string(),
            rank,
        });
    }
    let mut positive_roots = simple;
    positive_roots.extend(rest);
    let np = positive_roots.len();
    let two = q(2);
    let double_of: Vec<Option<usize>> = (0..np)
        .map(|i| {
            let d = positive_roots[i].scale(&two);
            positive_roots.iter().position(|r| *r == d)
        })
        .collect();
    let halves: Vec<bool> = (0..np).map(|j| double_of.contains(&Some(j))).collect();
    let indivisible_positive = (0..np).filter(|&i| !halves[i]).collect();
    let divisible = (0..np).filter(|&i| double_of[i].is_some()).collect();
    // coefficients in the simple basis via the Gram system
    let gram: Vec<Vec<Q>> = (0..rank)
        .map(|i| (0..rank).map(|j| positive_roots[i].dot(&positive_roots[j])).collect())
        .collect();
    let simple_coeffs = positive_roots
        .iter()
        .map(|r| {
            let rhs: Vec<Q> = (0..rank).map(|i| positive_roots[i].dot(r)).collect();
            let x = solve(gram.clone(), rhs).expect("simple roots are independent");
            x.iter().map(|c| c.to_integer().to_i64().unwrap()).collect()
        })
        .collect();
    Ok(RestrictedRootSystem {
        family,
        rank,
        ambient_dim,
        positive_roots,
        simple_roots: (0..rank).collect(),
        indivisible_positive,
        divisible,
        double_of,
        simple_coeffs,
    })
}

/// Multiplicities indexed like `positive_roots`. For a root alpha whose
/// double is a root, `m_2alpha` is the multiplicity of 2 alpha; the doubled
/// root itself carries its multiplicity in `m_alpha`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiplicityFunction {
    pub m_alpha: Vec<u32>,
    pub m_2alpha: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricSpaceDescriptor {
    pub space_id: String,
    pub cartan_label: String,
    /// The table's `*` marker, carried as metadata only.
    pub normal_marker: bool,
    pub root_system: RestrictedRootSystem,
    pub mult: MultiplicityFunction,
    pub rank: usize,
    pub dim: u64,
    pub rho_x: RootVector,
}

impl SymmetricSpaceDescriptor {
    /// (rho_X, alpha) / (alpha, alpha) for positive root index `i`.
    pub fn rho_pairing(&self, i: usize) -> Q {
        let a = &self.root_system.positive_roots[i];
        self.rho_x.dot(a) / a.norm2()
    }

    /// Indivisible roots together with (m_alpha, m_2alpha), skipping roots of
    /// multiplicity zero in both slots.
    pub fn active_roots(&self) -> Vec<(usize, u32, u32)> {
        self.root_system
            .indivisible_positive
            .iter()
            .map(|&i| (i, self.mult.m_alpha[i], self.mult.m_2alpha[i]))
            .filter(|&(_, m, m2)| m + m2 > 0)
            .collect()
    }
}

/// rho_X = 1/2 sum over indivisible positive roots of (m_alpha + 2 m_2alpha) alpha.
pub fn compute_rho(sys: &RestrictedRootSystem, mult: &MultiplicityFunction) -> RootVector {
    let mut rho = RootVector::zero(sys.ambient_dim);
    for &i in &sys.indivisible_positive {
        let w = q(mult.m_alpha[i] as i64 + 2 * mult.m_2alpha[i] as i64);
        rho = rho.add(&sys.positive_roots[i].scale(&w));
    }
    rho.scale(&qf(1, 2))
}

/// Build a descriptor, deriving multiplicities from root lengths.
/// `by_norm2` maps doubled squared length (2 (alpha, alpha)) to multiplicity.
fn make_space(
    id: &str,
    label: &str,
    normal_marker: bool,
    family: Family,
    rank: usize,
    by_norm2: &[(i64, u32)],
) -> Result<SymmetricSpaceDescriptor> {
    let sys = build_root_system(family, rank)?;
    let np = sys.positive_roots.len();
    let lookup = |i: usize| -> u32 {
        let n2 = sys.positive_roots[i].norm2() * q(2);
        let key = n2.to_integer().to_i64().unwrap();
        by_norm2.iter().find(|(k, _)| *k == key).map(|(_, m)| *m).unwrap_or(0)
    };
    let own: Vec<u32> = (0..np).map(lookup).collect();
    let m_2alpha: Vec<u32> = (0..np).map(|i| sys.double_of[i].map(|j| own[j]).unwrap_or(0)).collect();
    let mult = MultiplicityFunction { m_alpha: own, m_2alpha };
    let rho_x = compute_rho(&sys, &mult);
    let dim = rank as u64 + mult.m_alpha.iter().map(|&m| m as u64).sum::<u64>();
    Ok(SymmetricSpaceDescriptor {
        space_id: id.to_string(),
        cartan_label: label.to_string(),
        normal_marker,
        rank,
        dim,
        rho_x,
        mult,
        root_system: sys,
    })
}

fn parse_args(s: &str, n: usize) -> Option<Vec<u64>> {
    let v: Vec<u64> = s.split(',').map(|t| t.trim().parse().ok()).collect::<Option<_>>()?;
    (v.len() == n).then_some(v)
}

fn bad(id: &str, why: &str) -> Error {
    Error::UnknownSpace(format!("{id} ({why})"))
}

pub const BLOCKED_EVII: &str = "multiplicities for EVII are not tabulated";

/// Resolve a space id such as `S:4`, `CP:3`, `BDI:5,2` or `EIII`.
pub fn lookup_space(space_id: &str) -> Result<SymmetricSpaceDescriptor> {
    let id = space_id.trim().to_ascii_uppercase();
    let (head, args) = match id.split_once(':') {
        Some((h, a)) => (h.to_string(), Some(a.to_string())),
        None => (id.clone(), None),
    };
    let one = |what: &str| -> Result<u64> {
        let a = args.as_deref().ok_or_else(|| bad(&id, what))?;
        Ok(parse_args(a, 1).ok_or_else(|| bad(&id, what))?[0])
    };
    let two = |what: &str| -> Result<(u64, u64)> {
        let a = args.as_deref().ok_or_else(|| bad(&id, what))?;
        let v = parse_args(a, 2).ok_or_else(|| bad(&id, what))?;
        Ok((v[0], v[1]))
    };
    let no_args = || -> Result<()> {
        if args.is_some() {
            Err(bad(&id, "takes no parameters"))
        } else {
            Ok(())
        }
    };
    let ex = |label: &str, star: bool, fam: Family, rank: usize, m: &[(i64, u32)]| {
        no_args()?;
        make_space(&id, label, star, fam, rank, m)
    };
    match head.as_str() {
        "S" => {
            let m = one("expected S:<m>")?;
            if m < 2 {
                return Err(bad(&id, "sphere dimension must be >= 2"));
            }
            make_space(&id, &format!("BDI({m},1)"), true, Family::B, 1, &[(2, (m - 1) as u32)])
        }
        "CP" => {
            let m = one("expected CP:<m>")?;
            match m {
                0 => Err(bad(&id, "m must be >= 1")),
                1 => make_space(&id, "AIII(1,1)", false, Family::B, 1, &[(2, 1)]),
                _ => make_space(
                    &id,
                    &format!("AIII({m},1)"),
                    false,
                    Family::BC,
                    1,
                    &[(2, 2 * (m as u32 - 1)), (8, 1)],
                ),
            }
        }
        "HP" => {
            let m = one("expected HP:<m>")?;
            if m == 0 {
                return Err(bad(&id, "m must be >= 1"));
            }
            make_space(
                &id,
                &format!("CII({m},1)"),
                false,
                Family::BC,
                1,
                &[(2, 4 * (m as u32 - 1)), (8, 3)],
            )
        }
        "FII" => ex("FII", false, Family::BC, 1, &[(2, 8), (8, 7)]),
        "AI" => {
            let n = one("expected AI:<n>")?;
            if n < 2 {
                return Err(bad(&id, "n must be >= 2"));
            }
            make_space(&id, &format!("AI({n})"), false, Family::A, n as usize - 1, &[(4, 1)])
        }
        "AII" => {
            let n = one("expected AII:<n>")?;
            if n < 2 {
                return Err(bad(&id, "n must be >= 2"));
            }
            make_space(&id, &format!("AII({n})"), false, Family::A, n as usize - 1, &[(4, 4)])
        }
        "AIII" => {
            let (p, qq) = two("expected AIII:<p>,<q>")?;
            if qq < 1 || p < qq {
                return Err(bad(&id, "requires p >= q >= 1"));
            }
            let label = format!("AIII({p},{qq})");
            if p == qq {
                make_space(&id, &label, false, Family::C, qq as usize, &[(4, 2), (8, 1)])
            } else {
                let mb = 2 * (p - qq) as u32;
                make_space(&id, &label, false, Family::BC, qq as usize, &[(4, 2), (2, mb), (8, 1)])
            }
        }
        "BDI" => {
            let (p, qq) = two("expected BDI:<p>,<q>")?;
            if qq < 1 || p < qq || p + qq < 3 {
                return Err(bad(&id, "requires p >= q >= 1 and p + q >= 3"));
            }
            let label = format!("BDI({p},{qq})");
            if p == qq {
                make_space(&id, &label, true, Family::D, qq as usize, &[(4, 1)])
            } else {
                make_space(
                    &id,
                    &label,
                    true,
                    Family::B,
                    qq as usize,
                    &[(4, 1), (2, (p - qq) as u32)],
                )
            }
        }
        "DIII" => {
            let n = one("expected DIII:<n>")?;
            if n < 2 {
                return Err(bad(&id, "n must be >= 2"));
            }
            let label = format!("DIII({n})");
            let r = (n / 2) as usize;
            if n % 2 == 0 {
                make_space(&id, &label, false, Family::C, r, &[(4, 4), (8, 1)])
            } else {
                make_space(&id, &label, false, Family::BC, r, &[(4, 4), (2, 4), (8, 1)])
            }
        }
        "CI" => {
            let n = one("expected CI:<n>")?;
            if n < 1 {
                return Err(bad(&id, "n must be >= 1"));
            }
            make_space(&id, &format!("CI({n})"), true, Family::C, n as usize, &[(4, 1), (8, 1)])
        }
        "CII" => {
            let (p, qq) = two("expected CII:<p>,<q>")?;
            if qq < 1 || p < qq {
                return Err(bad(&id, "requires p >= q >= 1"));
            }
            let label = format!("CII({p},{qq})");
            if p == qq {
                make_space(&id, &label, false, Family::C, qq as usize, &[(4, 4), (8, 3)])
            } else {
                let mb = 4 * (p - qq) as u32;
                make_space(&id, &label, false, Family::BC, qq as usize, &[(4, 4), (2, mb), (8, 3)])
            }
        }
        "EI" => ex("EI", true, Family::E6, 6, &[(4, 1)]),
        "EII" => ex("EII", false, Family::F4, 4, &[(4, 1), (2, 2)]),
        "EIII" => ex("EIII", false, Family::BC, 2, &[(4, 6), (2, 8), (8, 1)]),
        "EIV" => ex("EIV", false, Family::A, 2, &[(4, 8)]),
        "EV" => ex("EV", true, Family::E7, 7, &[(4, 1)]),
        "EVI" => ex("EVI", false, Family::F4, 4, &[(4, 1), (2, 4)]),
        "EVII" => {
            no_args()?;
            Err(Error::UnsupportedSpace {
                id,
                reason: BLOCKED_EVII.into(),
            })
        }
        "EVIII" => ex("EVIII", true, Family::E8, 8, &[(4, 1)]),
        "EIX" => ex("EIX", false, Family::F4, 4, &[(4, 1), (2, 8)]),
        "FI" => ex("FI", true, Family::F4, 4, &[(4, 1), (2, 1)]),
        "GI" => ex("GI", true, Family::G2, 2, &[(4, 1), (12, 1)]),
        _ => Err(Error::UnknownSpace(space_id.to_string())),
    }
}

/// A representative list of catalog ids, one or more per table row.
pub fn catalog_ids() -> Vec<&'static str> {
    vec![
        "S:2", "S:3", "S:4", "S:5", "S:6", "S:7", "S:8", "CP:1", "CP:2", "CP:3", "CP:4", "CP:5", "HP:1", "HP:2",
        "HP:3", "FII", "AI:2", "AI:3", "AI:4", "AI:5", "AII:2", "AII:3", "AII:4", "AIII:2,1", "AIII:2,2", "AIII:3,2",
        "AIII:3,3", "AIII:5,2", "BDI:3,2", "BDI:2,2", "BDI:3,3", "BDI:5,2", "BDI:4,3", "DIII:4", "DIII:5", "DIII:6",
        "DIII:7", "CI:1", "CI:2", "CI:3", "CII:1,1", "CII:2,1", "CII:2,2", "CII:3,2", "EI", "EII", "EIII", "EIV", "EV",
        "EVI", "EVII", "EVIII", "EIX", "FI", "GI",
    ]
}

pub struct CatalogEntry {
    pub id: &'static str,
    pub space: Result<SymmetricSpaceDescriptor>,
}

pub fn catalog() -> Vec<CatalogEntry> {
    catalog_ids()
        .into_iter()
        .map(|id| CatalogEntry {
            id,
            space: lookup_space(id),
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogRecord {
    pub id: String,
    pub label: Option<String>,
    pub root_system: Option<String>,
    pub rank: Option<usize>,
    pub dim: Option<u64>,
    /// Indivisible positive roots, ambient coordinates as exact strings.
    pub roots: Vec<Vec<String>>,
    pub m: Vec<u32>,
    pub m2: Vec<u32>,
    pub rho_pairings: Vec<String>,
    pub normal_marker: bool,
    pub blocked: Option<String>,
}

pub fn catalog_record(id: &str, space: &Result<SymmetricSpaceDescriptor>) -> CatalogRecord {
    match space {
        Ok(s) => {
            let idx: Vec<usize> = s.root_system.indivisible_positive.clone();
            CatalogRecord {
                id: id.to_string(),
                label: Some(s.cartan_label.clone()),
                root_system: Some(s.root_system.label()),
                rank: Some(s.rank),
                dim: Some(s.dim),
                roots: idx
                    .iter()
                    .map(|&i| s.root_system.positive_roots[i].to_strings())
                    .collect(),
                m: idx.iter().map(|&i| s.mult.m_alpha[i]).collect(),
                m2: idx.iter().map(|&i| s.mult.m_2alpha[i]).collect(),
                rho_pairings: idx.iter().map(|&i| fmt_q(&s.rho_pairing(i))).collect(),
                normal_marker: s.normal_marker,
                blocked: None,
            }
        }
        Err(e) => CatalogRecord {
            id: id.to_string(),
            label: None,
            root_system: None,
            rank: None,
            dim: None,
            roots: vec![],
            m: vec![],
            m2: vec![],
            rho_pairings: vec![],
            normal_marker: false,
            blocked: Some(e.to_string()),
        },
    }
}

/// A compact simply connected group with its ordinary root system.
#[derive(Debug, Clone, PartialEq)]
pub struct CompactGroupDescriptor {
    pub group_id: String,
    pub root_system: RestrictedRootSystem,
    pub rho: RootVector,
    /// Fundamental weights, dual to the simple coroots.
    pub fundamental_weights: Vec<RootVector>,
}

pub fn lookup_group(group_id: &str) -> Result<CompactGroupDescriptor> {
    let id = group_id.trim().to_ascii_uppercase();
    let unknown = || Error::UnknownGroup(group_id.to_string());
    let (family, rank) = match id.split_once(':') {
        Some((h, a)) => {
            let n: usize = a.trim().parse().map_err(|_| unknown())?;
            match h {
                "SU" if n >= 2 => (Family::A, n - 1),
                "SO" if n >= 3 && n % 2 == 1 => (Family::B, n / 2),
                "SO" if n >= 4 && n % 2 == 0 => (Family::D, n / 2),
                "SP" if n >= 1 => (Family::C, n),
                _ => return Err(unknown()),
            }
        }
        None => match id.as_str() {
            "G2" => (Family::G2, 2),
            "F4" => (Family::F4, 4),
            "E6" => (Family::E6, 6),
            "E7" => (Family::E7, 7),
            "E8" => (Family::E8, 8),
            _ => return Err(unknown()),
        },
    };
    let sys = build_root_system(family, rank)?;
    let mut rho = RootVector::zero(sys.ambient_dim);
    for r in &sys.positive_roots {
        rho = rho.add(r);
    }
    let rho = rho.scale(&qf(1, 2));
    let fundamental_weights = dual_basis(&sys, |j| q(2) / sys.simple(j).norm2());
    Ok(CompactGroupDescriptor {
        group_id: id,
        root_system: sys,
        rho,
        fundamental_weights,
    })
}

/// Vectors mu_i in the span of the simple roots with
/// (mu_i, alpha_j) * scale(j) = delta_ij.
pub(crate) fn dual_basis(sys: &RestrictedRootSystem, scale: impl Fn(usize) -> Q) -> Vec<RootVector> {
    let r = sys.rank;
    // mu_i = sum_k x_k alpha_k; (mu_i, alpha_j) = sum_k x_k (alpha_k, alpha_j)
    let gram: Vec<Vec<Q>> = (0..r)
        .map(|j| (0..r).map(|k| sys.simple(k).dot(sys.simple(j))).collect())
        .collect();
    (0..r)
        .map(|i| {
            let rhs: Vec<Q> = (0..r)
                .map(|j| {
                    if i == j {
                        Q::from_integer(1.into()) / scale(j)
                    } else {
                        Q::zero()
                    }
                })
                .collect();
            let x = solve(gram.clone(), rhs).expect("simple roots are independent");
            let mut v = RootVector::zero(sys.ambient_dim);
            for (k, c) in x.iter().enumerate() {
                v = v.add(&sys.simple(k).scale(c));
            }
            v
        })
        .collect()
}

pub(crate) fn is_nonneg_int(x: &Q) -> bool {
    x.denom() == &1.into() && !x.is_negative()
}
