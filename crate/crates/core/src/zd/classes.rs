use std::collections::HashMap;

use rayon::prelude::*;

use super::ann::{choose_route, AnnRoute, AnnSet, Annihilator, Fingerprint};
use crate::error::Result;
use crate::ring::{ElemId, Ring};

/// Marker in `class_of` for zero and for non-zero-divisors.
pub const NO_CLASS: u32 = u32::MAX;

const CHUNK: usize = 1 << 14;

/// One class `[x]` of nonzero zero divisors sharing an annihilator.
#[derive(Clone, Debug)]
pub struct ZdClass {
    /// Smallest member id.
    pub rep: ElemId,
    /// Member ids, ascending.
    pub members: Vec<ElemId>,
    pub ann: AnnSet,
}

impl ZdClass {
    pub fn weight(&self) -> usize {
        self.members.len()
    }
}

/// Partition of `Z*(R)` into annihilator classes.
#[derive(Clone, Debug)]
pub struct ZdStructure {
    ring: Ring,
    route: AnnRoute,
    classes: Vec<ZdClass>,
    class_of: Vec<u32>,
}

impl ZdStructure {
    pub fn new(ring: &Ring) -> Result<Self> {
        ZdStructure::with_route(ring, choose_route(ring)?)
    }

    pub fn with_route(ring: &Ring, route: AnnRoute) -> Result<Self> {
        let ann = Annihilator::new(ring, route)?;
        let n = ring.order();
        let zero = ring.zero();
        let mut index: HashMap<Fingerprint, u32> = HashMap::new();
        let mut classes: Vec<ZdClass> = Vec::new();
        let mut class_of = vec![NO_CLASS; n];
        for start in (0..n).step_by(CHUNK) {
            let end = (start + CHUNK).min(n);
            let batch: Vec<Option<AnnSet>> = (start..end)
                .into_par_iter()
                .map(|x| {
                    let x = x as ElemId;
                    if x == zero {
                        return None;
                    }
                    let a = ann.of(x);
                    (!a.is_trivial()).then_some(a)
                })
                .collect();
            for (x, a) in (start as ElemId..).zip(batch) {
                let Some(a) = a else { continue };
                let next = classes.len() as u32;
                let c = *index.entry(a.fingerprint().clone()).or_insert(next);
                if c == next {
                    classes.push(ZdClass {
                        rep: x,
                        members: vec![x],
                        ann: a,
                    });
                } else {
                    classes[c as usize].members.push(x);
                }
                class_of[x as usize] = c;
            }
        }
        Ok(ZdStructure {
            ring: ring.clone(),
            route,
            classes,
            class_of,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn route(&self) -> AnnRoute {
        self.route
    }

    pub fn classes(&self) -> &[ZdClass] {
        &self.classes
    }

    pub fn into_classes(self) -> Vec<ZdClass> {
        self.classes
    }

    /// Class index of `x`, or `None` for zero and non-zero-divisors.
    pub fn class_of(&self, x: ElemId) -> Option<usize> {
        let c = self.class_of[x as usize];
        (c != NO_CLASS).then_some(c as usize)
    }

    /// Number of nonzero zero divisors.
    pub fn zero_divisor_count(&self) -> usize {
        self.classes.iter().map(ZdClass::weight).sum()
    }

    /// Class products: `[a][b] = 0`, decided on representatives.
    pub fn class_product_zero(&self, a: usize, b: usize) -> bool {
        let (ca, cb) = (&self.classes[a], &self.classes[b]);
        match self.route {
            AnnRoute::BruteForce => self.ring.mul(ca.rep, cb.rep) == self.ring.zero(),
            AnnRoute::Linear => ca.ann.contains(cb.rep),
        }
    }
}

/// The classes of nonzero zero divisors, ordered by representative.
pub fn zero_divisor_classes(ring: &Ring) -> Result<Vec<ZdClass>> {
    Ok(ZdStructure::new(ring)?.into_classes())
}
