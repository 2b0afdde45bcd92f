//! The lattice graph: lattice points joined by Markov moves, its metric,
//! and balls around the origin.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::MarkovBasis;
use crate::lattice::{LatticeBasis, LatticePoint};

/// Edge directions of the lattice graph, closed under negation and sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MoveSet {
    moves: Vec<LatticePoint>,
}

impl MoveSet {
    pub fn new(vectors: impl IntoIterator<Item = LatticePoint>) -> Result<Self> {
        let mut moves: Vec<LatticePoint> = Vec::new();
        for v in vectors {
            if v.is_zero() {
                return Err(Error::InvalidArgument("zero move".into()));
            }
            moves.push(v.neg());
            moves.push(v);
        }
        if moves.is_empty() {
            return Err(Error::InvalidArgument("empty move set".into()));
        }
        moves.sort();
        moves.dedup();
        Ok(Self { moves })
    }

    pub fn as_slice(&self) -> &[LatticePoint] {
        &self.moves
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.moves[0].len()
    }
}

/// `±(g⁺ − g⁻)` for every Markov element.
pub fn moves(mb: &MarkovBasis) -> Result<MoveSet> {
    MoveSet::new(mb.vectors())
}

/// All lattice points within graph distance `radius` of the origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ball {
    pub radius: usize,
    /// Sorted lexicographically.
    pub points: Vec<LatticePoint>,
    pub distance: BTreeMap<LatticePoint, usize>,
}

impl Ball {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        self.distance.contains_key(p)
    }

    /// Points at exactly distance `d`.
    pub fn sphere(&self, d: usize) -> Vec<&LatticePoint> {
        self.points.iter().filter(|p| self.distance[*p] == d).collect()
    }
}

pub fn ball(ms: &MoveSet, radius: usize) -> Ball {
    let origin = LatticePoint::zero(ms.dim());
    let mut distance = BTreeMap::new();
    distance.insert(origin.clone(), 0);
    let mut frontier = vec![origin];
    for d in 1..=radius {
        let mut next = Vec::new();
        for p in &frontier {
            for m in ms.as_slice() {
                let q = p.add(m);
                if !distance.contains_key(&q) {
                    distance.insert(q.clone(), d);
                    next.push(q);
                }
            }
        }
        next.sort();
        frontier = next;
    }
    let points = distance.keys().cloned().collect();
    Ball { radius, points, distance }
}

/// Graph distance between two points of `H`, or `None` if it exceeds `cap`.
pub fn distance(
    basis: &LatticeBasis,
    ms: &MoveSet,
    u: &[i64],
    v: &[i64],
    cap: usize,
) -> Result<Option<usize>> {
    for p in [u, v] {
        if !basis.member(p)? {
            return Err(Error::NotInLattice(LatticePoint::from(p.to_vec()).to_string()));
        }
    }
    let target = LatticePoint::from(v.iter().zip(u).map(|(a, b)| a - b).collect::<Vec<_>>());
    Ok(bidirectional_bfs(ms, &target, cap))
}

fn bidirectional_bfs(ms: &MoveSet, target: &LatticePoint, cap: usize) -> Option<usize> {
    if target.is_zero() {
        return Some(0);
    }
    let mut seen = [HashMap::new(), HashMap::new()];
    let mut frontier = [vec![LatticePoint::zero(target.len())], vec![target.clone()]];
    seen[0].insert(frontier[0][0].clone(), 0usize);
    seen[1].insert(target.clone(), 0usize);
    let mut depth = [0usize, 0usize];
    while depth[0] + depth[1] < cap {
        let side = usize::from(frontier[1].len() < frontier[0].len());
        depth[side] += 1;
        let mut next = Vec::new();
        let mut best: Option<usize> = None;
        let mut visited: HashSet<LatticePoint> = HashSet::new();
        for p in &frontier[side] {
            for m in ms.as_slice() {
                let q = p.add(m);
                if seen[side].contains_key(&q) || !visited.insert(q.clone()) {
                    continue;
                }
                if let Some(&e) = seen[1 - side].get(&q) {
                    let total = depth[side] + e;
                    best = Some(best.map_or(total, |b| b.min(total)));
                }
                next.push(q);
            }
        }
        if let Some(b) = best {
            return (b <= cap).then_some(b);
        }
        if next.is_empty() {
            return None;
        }
        for q in &next {
            seen[side].insert(q.clone(), depth[side]);
        }
        frontier[side] = next;
    }
    None
}
