use serde::Serialize;

use super::linalg::{reduce_f2, reduce_fp, rref_f2, rref_fp};
use crate::config::{BRUTE_FORCE_LIMIT, TABLE_LIMIT};
use crate::error::{Error, Result};
use crate::ring::{ElemId, Ring};

/// Canonical description of an annihilator ideal. Equal fingerprints mean
/// equal ideals; comparison is on the full serialization.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Fingerprint {
    /// Membership bitset over element ids.
    Bits(Vec<u64>),
    /// Kernel of the multiplication map over `F_2`, given by the RREF of
    /// the map's row space. Element ids are coordinate bitmasks.
    KernelF2 { dim: u32, rows: Vec<u64> },
    /// Same over `F_p`, `p > 2`.
    KernelFp {
        p: u32,
        dim: u32,
        rows: Vec<Vec<u32>>,
    },
}

/// `ann(owner)` as an ideal of the ring.
#[derive(Clone, Debug)]
pub struct AnnSet {
    owner: ElemId,
    fp: Fingerprint,
}

impl PartialEq for AnnSet {
    fn eq(&self, other: &Self) -> bool {
        self.fp == other.fp
    }
}

impl Eq for AnnSet {}

impl AnnSet {
    pub fn owner(&self) -> ElemId {
        self.owner
    }

    pub fn fingerprint(&self) -> &Fingerprint {
        &self.fp
    }

    pub fn contains(&self, y: ElemId) -> bool {
        match &self.fp {
            Fingerprint::Bits(w) => w[y as usize / 64] >> (y % 64) & 1 == 1,
            Fingerprint::KernelF2 { rows, .. } => rows
                .iter()
                .all(|&r| (r & y as u64).count_ones().is_multiple_of(2)),
            Fingerprint::KernelFp { p, dim, rows } => {
                let v = digits(y, *p, *dim);
                rows.iter().all(|r| {
                    r.iter().zip(&v).fold(0u64, |acc, (&a, &b)| {
                        (acc + a as u64 * b as u64) % *p as u64
                    }) == 0
                })
            }
        }
    }

    /// Number of elements.
    pub fn len(&self) -> u64 {
        match &self.fp {
            Fingerprint::Bits(w) => w.iter().map(|x| x.count_ones() as u64).sum(),
            Fingerprint::KernelF2 { dim, rows } => 1 << (*dim as usize - rows.len()),
            Fingerprint::KernelFp { p, dim, rows } => (*p as u64).pow(*dim - rows.len() as u32),
        }
    }

    /// Never true: every annihilator contains zero.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Only `{0}`.
    pub fn is_trivial(&self) -> bool {
        self.len() == 1
    }

    /// `self ⊆ other`. Both sets must come from the same ring and route.
    pub fn is_subset(&self, other: &AnnSet) -> bool {
        match (&self.fp, &other.fp) {
            (Fingerprint::Bits(a), Fingerprint::Bits(b)) => {
                a.iter().zip(b).all(|(x, y)| x & !y == 0)
            }
            // ker A ⊆ ker B iff rowspace(B) ⊆ rowspace(A)
            (Fingerprint::KernelF2 { rows: a, .. }, Fingerprint::KernelF2 { rows: b, .. }) => {
                b.iter().all(|&r| reduce_f2(a, r) == 0)
            }
            (Fingerprint::KernelFp { p, rows: a, .. }, Fingerprint::KernelFp { rows: b, .. }) => {
                b.iter().all(|r| {
                    let mut v = r.clone();
                    reduce_fp(a, &mut v, *p);
                    v.iter().all(|&c| c == 0)
                })
            }
            _ => panic!("annihilators from different routes compared"),
        }
    }

    pub fn is_proper_subset(&self, other: &AnnSet) -> bool {
        self.fp != other.fp && self.is_subset(other)
    }

    /// Member ids in ascending order, given the ring order `n`.
    pub fn members(&self, n: usize) -> Vec<ElemId> {
        match &self.fp {
            Fingerprint::Bits(w) => w
                .iter()
                .enumerate()
                .flat_map(|(i, &word)| {
                    (0..64)
                        .filter(move |b| word >> b & 1 == 1)
                        .map(move |b| (i * 64 + b) as ElemId)
                })
                .collect(),
            _ => (0..n as ElemId).filter(|&y| self.contains(y)).collect(),
        }
    }
}

fn digits(mut y: ElemId, p: u32, dim: u32) -> Vec<u32> {
    (0..dim)
        .map(|_| {
            let d = y % p;
            y /= p;
            d
        })
        .collect()
}

/// How annihilators are computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AnnRoute {
    /// Scan `x * y` for every `y`.
    BruteForce,
    /// Kernel of the multiplication map, for rings that are `F_p`-algebras
    /// in their coordinates.
    Linear,
}

/// Linear route when available and the ring is too large for a table,
/// brute force otherwise.
pub fn choose_route(ring: &Ring) -> Result<AnnRoute> {
    if ring.prime_field().is_some() && ring.order() > TABLE_LIMIT {
        return Ok(AnnRoute::Linear);
    }
    if ring.order() <= BRUTE_FORCE_LIMIT {
        return Ok(AnnRoute::BruteForce);
    }
    if ring.prime_field().is_some() {
        return Ok(AnnRoute::Linear);
    }
    Err(Error::CapExceeded(format!(
        "{} has {} elements; annihilators beyond {BRUTE_FORCE_LIMIT} elements need prime-field coordinates",
        ring.name(),
        ring.order()
    )))
}

/// Computes annihilators along one route.
pub(crate) enum Annihilator<'a> {
    Brute(&'a Ring),
    F2 {
        dim: u32,
        prod: Vec<u64>,
    },
    Fp {
        p: u32,
        dim: u32,
        prod: Vec<Vec<u32>>,
    },
}

impl<'a> Annihilator<'a> {
    pub(crate) fn new(ring: &'a Ring, route: AnnRoute) -> Result<Self> {
        match route {
            AnnRoute::BruteForce => Ok(Annihilator::Brute(ring)),
            AnnRoute::Linear => {
                let (p, coords) = ring.prime_field().zip(ring.coords()).ok_or_else(|| {
                    Error::Domain(format!("{} is not an F_p-algebra", ring.name()))
                })?;
                let d = coords.len();
                let e: Vec<ElemId> = (0..d).map(|i| coords.unit_vector(i)).collect();
                if p == 2 && d <= 64 {
                    let prod = (0..d * d)
                        .map(|ij| ring.mul(e[ij / d], e[ij % d]) as u64)
                        .collect();
                    Ok(Annihilator::F2 {
                        dim: d as u32,
                        prod,
                    })
                } else {
                    let prod = (0..d * d)
                        .map(|ij| digits(ring.mul(e[ij / d], e[ij % d]), p as u32, d as u32))
                        .collect();
                    Ok(Annihilator::Fp {
                        p: p as u32,
                        dim: d as u32,
                        prod,
                    })
                }
            }
        }
    }

    pub(crate) fn of(&self, x: ElemId) -> AnnSet {
        let fp = match self {
            Annihilator::Brute(ring) => {
                let n = ring.order();
                let mut w = vec![0u64; n.div_ceil(64)];
                for y in ring.elements() {
                    if ring.mul(x, y) == ring.zero() {
                        w[y as usize / 64] |= 1 << (y % 64);
                    }
                }
                Fingerprint::Bits(w)
            }
            Annihilator::F2 { dim, prod } => {
                let d = *dim as usize;
                // column j of the multiplication map is x * e_j
                let mut cols = vec![0u64; d];
                for i in (0..d).filter(|i| x >> i & 1 == 1) {
                    for (j, c) in cols.iter_mut().enumerate() {
                        *c ^= prod[i * d + j];
                    }
                }
                let rows = (0..d)
                    .map(|k| {
                        cols.iter()
                            .enumerate()
                            .fold(0u64, |m, (j, &c)| m | (c >> k & 1) << j)
                    })
                    .collect();
                Fingerprint::KernelF2 {
                    dim: *dim,
                    rows: rref_f2(rows),
                }
            }
            Annihilator::Fp { p, dim, prod } => {
                let d = *dim as usize;
                let pp = *p as u64;
                let xs = digits(x, *p, *dim);
                let mut rows = vec![vec![0u32; d]; d];
                for (i, &xi) in xs.iter().enumerate().filter(|(_, &xi)| xi != 0) {
                    for j in 0..d {
                        for (k, &c) in prod[i * d + j].iter().enumerate() {
                            if c != 0 {
                                let cell = &mut rows[k][j];
                                *cell = ((*cell as u64 + xi as u64 * c as u64) % pp) as u32;
                            }
                        }
                    }
                }
                Fingerprint::KernelFp {
                    p: *p,
                    dim: *dim,
                    rows: rref_fp(rows, *p),
                }
            }
        };
        AnnSet { owner: x, fp }
    }
}

/// `{ y : x y = 0 }`; `x = 0` is rejected since `ann(0)` is the whole ring.
pub fn annihilator(ring: &Ring, x: ElemId) -> Result<AnnSet> {
    if x == ring.zero() {
        return Err(Error::Domain("ann(0) is the whole ring".into()));
    }
    if x as usize >= ring.order() {
        return Err(Error::Domain(format!("element id {x} out of range")));
    }
    Ok(Annihilator::new(ring, choose_route(ring)?)?.of(x))
}

pub fn annihilator_via(ring: &Ring, x: ElemId, route: AnnRoute) -> Result<AnnSet> {
    if x == ring.zero() {
        return Err(Error::Domain("ann(0) is the whole ring".into()));
    }
    Ok(Annihilator::new(ring, route)?.of(x))
}
