//! Elementary collapses.

use std::collections::BTreeMap;

use crate::complex::{Complex, GeneralComplex};
use crate::simplex::Simplex;

/// One elementary collapse: `free` was a proper face of `facet` only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollapseStep {
    pub free: Simplex,
    pub facet: Simplex,
}

#[derive(Clone, Debug)]
pub struct CollapseOutcome {
    pub result: GeneralComplex,
    pub log: Vec<CollapseStep>,
}

impl CollapseOutcome {
    /// The collapse ended at a single vertex.
    pub fn is_point(&self) -> bool {
        self.result.count(0) == 1 && self.result.dim() == 0
    }
}

/// Collapses `x` as far as possible.
///
/// A nonempty face is free when exactly one face covers it. The free face
/// removed at each step is the lexicographically smallest one; its unique
/// cover is removed with it. The empty face is never collapsed, so a
/// collapsible complex stops at a point.
pub fn collapse(x: &GeneralComplex) -> CollapseOutcome {
    // face -> number of faces one dimension up that contain it
    let mut covers: BTreeMap<Simplex, usize> = x.iter().map(|s| (s.clone(), 0)).collect();
    for s in x.iter() {
        for (f, _) in s.boundary() {
            *covers.get_mut(&f).expect("complex is closed") += 1;
        }
    }
    let mut log = Vec::new();
    loop {
        let free = covers.iter().find(|(s, c)| **c == 1 && !s.is_empty()).map(|(s, _)| s.clone());
        let Some(free) = free else { break };
        let facet = cover_of(&covers, &free, x.n());
        for (f, _) in facet.boundary() {
            *covers.get_mut(&f).unwrap() -= 1;
        }
        for (f, _) in free.boundary() {
            *covers.get_mut(&f).unwrap() -= 1;
        }
        covers.remove(&facet);
        covers.remove(&free);
        log.push(CollapseStep { free, facet });
    }
    let result = GeneralComplex::new(x.n(), covers.into_keys())
        .expect("collapse keeps the face set closed")
        .with_ground(x.ground())
        .expect("ground set unchanged");
    CollapseOutcome { result, log }
}

fn cover_of(covers: &BTreeMap<Simplex, usize>, face: &Simplex, n: usize) -> Simplex {
    (0..n as u32)
        .filter(|v| !face.contains_vertex(*v))
        .map(|v| face.with_vertex(v))
        .find(|s| covers.contains_key(s))
        .expect("free face has a cover")
}
