//! Pure-difference binomial ideals: term orders, Buchberger's algorithm,
//! saturation to the lattice ideal, minimal Markov bases and fiber graphs.
//!
//! A binomial `x^u − x^v` is kept as its two exponent vectors. Generators of
//! intermediate ideals may share variables, so the lattice vector `u − v`
//! alone is not enough to represent them.

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, HashMap, HashSet};
use std::fmt;

use serde::Serialize;

use crate::counting::{degree_fiber, fiber};
use crate::error::{Error, Result};
use crate::lattice::{LatticeBasis, LatticePoint, QuotientClass, WeightVector};

/// Renders an exponent vector as `x1^2*x3`, with `1` for the zero vector.
pub fn monomial_string(exps: &[i64]) -> String {
    let parts: Vec<String> = exps
        .iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, e) })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// Graded reverse lexicographic order, graded by a positive weight vector.
///
/// `perm` lists the variables from most to least expensive; ties in degree
/// are broken by looking at the cheapest variable first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TermOrder {
    weight: Vec<i64>,
    perm: Vec<usize>,
}

impl TermOrder {
    /// Graded by `weight`, variables in their natural order.
    pub fn weighted_grevlex(weight: &WeightVector) -> Self {
        Self { weight: weight.as_slice().to_vec(), perm: (0..weight.dim()).collect() }
    }

    /// Ordinary grevlex on `n` variables.
    pub fn grevlex(n: usize) -> Self {
        Self { weight: vec![1; n], perm: (0..n).collect() }
    }

    pub fn with_permutation(weight: &WeightVector, perm: Vec<usize>) -> Result<Self> {
        let mut seen = perm.clone();
        seen.sort_unstable();
        if seen != (0..weight.dim()).collect::<Vec<_>>() {
            return Err(Error::InvalidArgument(format!("{perm:?} is not a permutation")));
        }
        Ok(Self { weight: weight.as_slice().to_vec(), perm })
    }

    /// Same grading, with variable `i` moved to the cheapest position.
    pub fn with_cheapest(&self, i: usize) -> Self {
        let mut perm: Vec<usize> = self.perm.iter().copied().filter(|&j| j != i).collect();
        perm.push(i);
        Self { weight: self.weight.clone(), perm }
    }

    pub fn dim(&self) -> usize {
        self.weight.len()
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn degree(&self, u: &[i64]) -> i64 {
        self.weight.iter().zip(u).map(|(w, e)| w * e).sum()
    }

    pub fn cmp(&self, u: &[i64], v: &[i64]) -> Ordering {
        self.degree(u).cmp(&self.degree(v)).then_with(|| {
            for &i in self.perm.iter().rev() {
                if u[i] != v[i] {
                    // more of the cheapest variable means smaller
                    return v[i].cmp(&u[i]);
                }
            }
            Ordering::Equal
        })
    }
}

/// The binomial `x^head − x^tail`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Binomial {
    head: Vec<i64>,
    tail: Vec<i64>,
}

impl Binomial {
    pub fn from_monomials(head: Vec<i64>, tail: Vec<i64>) -> Result<Self> {
        if head.len() != tail.len() {
            return Err(Error::DimensionMismatch { expected: head.len(), found: tail.len() });
        }
        if head.iter().chain(&tail).any(|&e| e < 0) {
            return Err(Error::InvalidArgument("monomial exponents must be nonnegative".into()));
        }
        if head == tail {
            return Err(Error::InvalidArgument("zero binomial".into()));
        }
        Ok(Self { head, tail })
    }

    /// `x^{v⁺} − x^{v⁻}` for a nonzero vector.
    pub fn from_vector(v: &LatticePoint) -> Result<Self> {
        if v.is_zero() {
            return Err(Error::InvalidArgument("zero vector".into()));
        }
        Ok(Self { head: v.positive_part().into_inner(), tail: v.negative_part().into_inner() })
    }

    pub fn head(&self) -> &[i64] {
        &self.head
    }

    pub fn tail(&self) -> &[i64] {
        &self.tail
    }

    pub fn dim(&self) -> usize {
        self.head.len()
    }

    /// `head − tail`.
    pub fn vector(&self) -> LatticePoint {
        LatticePoint::from(self.head.iter().zip(&self.tail).map(|(h, t)| h - t).collect::<Vec<_>>())
    }

    /// True when the two monomials share no variable.
    pub fn is_coprime(&self) -> bool {
        self.head.iter().zip(&self.tail).all(|(&h, &t)| h == 0 || t == 0)
    }

    /// Swaps the terms if needed so that the head is the larger monomial.
    pub fn oriented(mut self, ord: &TermOrder) -> Self {
        if ord.cmp(&self.head, &self.tail) == Ordering::Less {
            std::mem::swap(&mut self.head, &mut self.tail);
        }
        self
    }
}

impl fmt::Display for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} - {}", monomial_string(&self.head), monomial_string(&self.tail))
    }
}

impl Serialize for Binomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn divides(u: &[i64], v: &[i64]) -> bool {
    u.iter().zip(v).all(|(a, b)| a <= b)
}

fn lcm(u: &[i64], v: &[i64]) -> Vec<i64> {
    u.iter().zip(v).map(|(&a, &b)| a.max(b)).collect()
}

/// Normal form of a monomial: rewrite `head → tail` until no head divides it.
fn reduce_monomial(m: &[i64], gb: &[Binomial]) -> Vec<i64> {
    let mut m = m.to_vec();
    'outer: loop {
        for g in gb {
            if divides(&g.head, &m) {
                for (x, (t, h)) in m.iter_mut().zip(g.tail.iter().zip(&g.head)) {
                    *x += t - h;
                }
                continue 'outer;
            }
        }
        return m;
    }
}

/// Normal form of `x^u − x^v`, or `None` when it reduces to zero.
fn reduce(u: &[i64], v: &[i64], gb: &[Binomial], ord: &TermOrder) -> Option<Binomial> {
    let ru = reduce_monomial(u, gb);
    let rv = reduce_monomial(v, gb);
    (ru != rv).then(|| Binomial { head: ru, tail: rv }.oriented(ord))
}

fn check_dims(gens: &[Binomial], n: usize) -> Result<()> {
    for g in gens {
        if g.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: g.dim() });
        }
    }
    Ok(())
}

/// Reduced Gröbner basis of the ideal generated by `gens`, sorted ascending
/// by head under `ord`.
pub fn buchberger(gens: &[Binomial], ord: &TermOrder) -> Result<Vec<Binomial>> {
    check_dims(gens, ord.dim())?;
    let mut g: Vec<Binomial> = Vec::new();
    for b in gens {
        if let Some(r) = reduce(&b.head, &b.tail, &g, ord) {
            g.push(r);
        }
    }
    let mut pairs = BinaryHeap::new();
    for j in 0..g.len() {
        for i in 0..j {
            push_pair(&mut pairs, &g, i, j, ord);
        }
    }
    while let Some(Reverse((_, i, j))) = pairs.pop() {
        let l = lcm(&g[i].head, &g[j].head);
        let s1: Vec<i64> = (0..l.len()).map(|t| l[t] - g[i].head[t] + g[i].tail[t]).collect();
        let s2: Vec<i64> = (0..l.len()).map(|t| l[t] - g[j].head[t] + g[j].tail[t]).collect();
        if let Some(r) = reduce(&s1, &s2, &g, ord) {
            g.push(r);
            let new = g.len() - 1;
            for i in 0..new {
                push_pair(&mut pairs, &g, i, new, ord);
            }
        }
    }
    Ok(interreduce(g, ord))
}

fn push_pair(
    pairs: &mut BinaryHeap<Reverse<(i64, usize, usize)>>,
    g: &[Binomial],
    i: usize,
    j: usize,
    ord: &TermOrder,
) {
    let (a, b) = (&g[i].head, &g[j].head);
    // coprime heads: the S-polynomial reduces to zero
    if a.iter().zip(b).all(|(&x, &y)| x == 0 || y == 0) {
        return;
    }
    pairs.push(Reverse((ord.degree(&lcm(a, b)), i, j)));
}

fn interreduce(mut g: Vec<Binomial>, ord: &TermOrder) -> Vec<Binomial> {
    g.sort_by(|x, y| ord.cmp(&x.head, &y.head).then_with(|| ord.cmp(&x.tail, &y.tail)));
    let mut kept: Vec<Binomial> = Vec::new();
    for b in g {
        if !kept.iter().any(|k| divides(&k.head, &b.head)) {
            kept.push(b);
        }
    }
    let snapshot = kept.clone();
    for b in kept.iter_mut() {
        b.tail = reduce_monomial(&b.tail, &snapshot);
    }
    kept
}

/// Whether `b` lies in the ideal with Gröbner basis `gb` (taken under `ord`).
pub fn in_ideal(b: &Binomial, gb: &[Binomial]) -> bool {
    reduce_monomial(&b.head, gb) == reduce_monomial(&b.tail, gb)
}

/// `(I : x_i^∞)` for every variable, repeated until no generator is divisible.
pub fn saturate(gens: &[Binomial], ord: &TermOrder) -> Result<Vec<Binomial>> {
    let mut g = gens.to_vec();
    loop {
        let mut divided = false;
        for i in 0..ord.dim() {
            let oi = ord.with_cheapest(i);
            g = buchberger(&g, &oi)?;
            for b in g.iter_mut() {
                let e = b.head[i].min(b.tail[i]);
                if e > 0 {
                    b.head[i] -= e;
                    b.tail[i] -= e;
                    divided = true;
                }
            }
        }
        if !divided {
            return buchberger(&g, ord);
        }
    }
}

/// Greedy minimal generating subset: candidates are visited by increasing
/// degree (ties by `ord`) and kept only if not in the ideal of those kept.
pub fn minimalise(gens: &[Binomial], ord: &TermOrder) -> Result<Vec<Binomial>> {
    check_dims(gens, ord.dim())?;
    let mut cands: Vec<Binomial> = gens.iter().map(|b| b.clone().oriented(ord)).collect();
    cands.sort_by(|x, y| ord.cmp(&x.head, &y.head).then_with(|| ord.cmp(&x.tail, &y.tail)));
    cands.dedup();
    let mut kept: Vec<Binomial> = Vec::new();
    let mut gb: Vec<Binomial> = Vec::new();
    for c in cands {
        if !in_ideal(&c, &gb) {
            kept.push(c);
            gb = buchberger(&kept, ord)?;
        }
    }
    Ok(kept)
}

/// Whether two binomial sets generate the same ideal.
pub fn ideal_equal(a: &[Binomial], b: &[Binomial]) -> Result<bool> {
    let n = match a.first().or(b.first()) {
        Some(x) => x.dim(),
        None => return Ok(true),
    };
    let ord = TermOrder::grevlex(n);
    let ga = buchberger(a, &ord)?;
    let gb = buchberger(b, &ord)?;
    Ok(a.iter().all(|x| in_ideal(x, &gb)) && b.iter().all(|x| in_ideal(x, &ga)))
}

/// A minimal binomial generating set of the lattice ideal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MarkovBasis {
    pub elements: Vec<Binomial>,
    pub order_used: TermOrder,
}

impl MarkovBasis {
    pub fn dim(&self) -> usize {
        self.order_used.dim()
    }

    pub fn vectors(&self) -> Vec<LatticePoint> {
        self.elements.iter().map(Binomial::vector).collect()
    }
}

/// `I_L` for the lattice spanned by `basis`, as a minimal Markov basis.
pub fn lattice_ideal(basis: &LatticeBasis) -> Result<MarkovBasis> {
    let ord = TermOrder::weighted_grevlex(basis.weight());
    let gens: Vec<Binomial> = basis.vectors().iter().map(Binomial::from_vector).collect::<Result<_>>()?;
    let sat = saturate(&gens, &ord)?;
    let elements = minimalise(&sat, &ord)?;
    Ok(MarkovBasis { elements, order_used: ord })
}

/// A fiber whose points are joined by Markov moves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberGraph {
    pub points: Vec<LatticePoint>,
    /// Index pairs `(i, j)` with `i < j`.
    pub edges: Vec<(usize, usize)>,
    /// Component id of each point (smallest point index in the component).
    pub component: Vec<usize>,
}

impl FiberGraph {
    fn build(points: Vec<LatticePoint>, mb: &MarkovBasis) -> Self {
        let moves: HashSet<LatticePoint> = mb.vectors().into_iter().flat_map(|v| [v.neg(), v]).collect();
        let index: HashMap<&LatticePoint, usize> = points.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut edges = Vec::new();
        for (i, p) in points.iter().enumerate() {
            for m in &moves {
                if let Some(&j) = index.get(&p.add(m)) {
                    if i < j {
                        edges.push((i, j));
                    }
                }
            }
        }
        edges.sort_unstable();
        edges.dedup();
        let mut parent: Vec<usize> = (0..points.len()).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut y = x;
            while parent[y] != r {
                let next = parent[y];
                parent[y] = r;
                y = next;
            }
            r
        }
        for &(i, j) in &edges {
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
        let component = (0..points.len()).map(|i| find(&mut parent, i)).collect();
        Self { points, edges, component }
    }

    pub fn same_component(&self, i: usize, j: usize) -> bool {
        self.component[i] == self.component[j]
    }

    pub fn component_size(&self, i: usize) -> usize {
        self.component.iter().filter(|&&c| c == self.component[i]).count()
    }

    pub fn position(&self, p: &LatticePoint) -> Option<usize> {
        self.points.iter().position(|q| q == p)
    }
}

/// Fiber graph on the nonnegative points of one class.
pub fn fiber_graph(basis: &LatticeBasis, mb: &MarkovBasis, c: &QuotientClass) -> Result<FiberGraph> {
    Ok(FiberGraph::build(fiber(basis, c)?.points, mb))
}

/// Fiber graph on all nonnegative points of one weighted degree.
pub fn degree_fiber_graph(weight: &WeightVector, mb: &MarkovBasis, degree: i64) -> FiberGraph {
    FiberGraph::build(degree_fiber(weight, degree), mb)
}
