//! Generalised lattice modules `M^(k)`: Laurent monomials whose exponent
//! dominates at least `k` lattice points.
//!
//! Generators are found as least common multiples of `k` points of the ball
//! `N^(k−1)(0)` that include the origin, then minimalised under divisibility
//! up to translation by the lattice.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::counting::{self, CountTable};
use crate::error::{Error, Result};
use crate::frobenius::{scan_table, Scan};
use crate::ideal::{lattice_ideal, monomial_string, MarkovBasis};
use crate::lattice::{LatticeBasis, LatticePoint, QuotientClass};
use crate::neighbourhood::{ball, moves, Ball, MoveSet};

/// A monomial with integer (possibly negative) exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentMonomial {
    exponent: Vec<i64>,
}

impl LaurentMonomial {
    pub fn new(exponent: Vec<i64>) -> Self {
        Self { exponent }
    }

    pub fn unit(n: usize) -> Self {
        Self { exponent: vec![0; n] }
    }

    pub fn exponent(&self) -> &[i64] {
        &self.exponent
    }

    pub fn dim(&self) -> usize {
        self.exponent.len()
    }

    pub fn is_unit(&self) -> bool {
        self.exponent.iter().all(|&e| e == 0)
    }

    pub fn point(&self) -> LatticePoint {
        LatticePoint::from(self.exponent.clone())
    }

    /// Coordinatewise maximum of exponents.
    pub fn lcm(&self, other: &Self) -> Self {
        Self::new(self.exponent.iter().zip(&other.exponent).map(|(&a, &b)| a.max(b)).collect())
    }

    /// Plain divisibility: `self ≤ other` coordinatewise.
    pub fn divides(&self, other: &Self) -> bool {
        self.exponent.iter().zip(&other.exponent).all(|(a, b)| a <= b)
    }

    pub fn dominates_origin(&self) -> bool {
        self.exponent.iter().all(|&e| e >= 0)
    }

    /// Multiplication by `x^l`.
    pub fn translate(&self, l: &[i64]) -> Self {
        Self::new(self.exponent.iter().zip(l).map(|(a, b)| a + b).collect())
    }

    /// Parses `x1^-1*x2*x3^2` (or `1`) in `n` variables.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let bad = || Error::Parse(format!("monomial '{s}'"));
        let mut exponent = vec![0i64; n];
        let s = s.trim();
        if s == "1" {
            return Ok(Self { exponent });
        }
        for factor in s.split('*') {
            let factor = factor.trim();
            let rest = factor.strip_prefix('x').ok_or_else(bad)?;
            let (var, exp) = match rest.split_once('^') {
                Some((v, e)) => (v, e.parse::<i64>().map_err(|_| bad())?),
                None => (rest, 1),
            };
            let i: usize = var.parse().map_err(|_| bad())?;
            if i == 0 || i > n {
                return Err(bad());
            }
            exponent[i - 1] += exp;
        }
        Ok(Self { exponent })
    }
}

impl fmt::Display for LaurentMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&monomial_string(&self.exponent))
    }
}

impl Serialize for LaurentMonomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `φ` on a syzygy between two generators: their least common multiple.
pub fn phi(g1: &LaurentMonomial, g2: &LaurentMonomial) -> LaurentMonomial {
    g1.lcm(g2)
}

/// Candidate generators of `M^(k)` before minimalisation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateSet {
    pub k: usize,
    /// Number of `k`-subsets of the ball that contain the origin.
    pub subsets: u64,
    /// How many of those were skipped by the degree bound.
    pub pruned: u64,
    pub lcms: BTreeSet<LaurentMonomial>,
}

/// Minimal generators of `M^(k)`, one per lattice orbit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModuleGens {
    pub k: usize,
    pub m_k: i64,
    /// Sorted by degree, then exponent.
    pub generators: Vec<LaurentMonomial>,
    /// Lattice points dominated by each generator, sorted.
    pub supports: Vec<Vec<LatticePoint>>,
    /// A generator of degree `m_k`.
    pub min_degree_witness: LaurentMonomial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum GeneratorCase {
    Exceptional,
    SyzygyOfTwoGenerators,
    SyzygyWithUnit,
}

impl fmt::Display for GeneratorCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Exceptional => "Exceptional",
            Self::SyzygyOfTwoGenerators => "SyzygyOfTwoGenerators",
            Self::SyzygyWithUnit => "SyzygyWithUnit",
        })
    }
}

/// How a generator of `M^(k)` arises from `M^(k−1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorClassification {
    pub generator: LaurentMonomial,
    pub case: GeneratorCase,
    pub support: Vec<LatticePoint>,
    /// Exceptional: the generator itself. Two generators: the incomparable
    /// pair of subset lcms. Unit: the subset lcm shifted by `translation`.
    pub witnesses: Vec<LaurentMonomial>,
    /// For the unit case, `q` with `lcm(witness, 1)·x^q = generator`.
    pub translation: LatticePoint,
}

impl GeneratorClassification {
    /// Recomputes the lcm identity behind the case.
    pub fn verify(&self) -> bool {
        let g = &self.generator;
        match self.case {
            GeneratorCase::Exceptional => self.witnesses.iter().all(|w| w == g),
            GeneratorCase::SyzygyOfTwoGenerators => {
                let [w1, w2] = &self.witnesses[..] else { return false };
                !w1.divides(w2) && !w2.divides(w1) && &phi(w1, w2) == g
            }
            GeneratorCase::SyzygyWithUnit => {
                let [w] = &self.witnesses[..] else { return false };
                let unit = LaurentMonomial::unit(g.dim());
                &phi(w, &unit).translate(&self.translation) == g && !w.dominates_origin()
            }
        }
    }
}

fn binomial(n: u64, r: u64) -> u64 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Shared data for the module computations of one lattice.
#[derive(Debug)]
pub struct Analysis {
    basis: LatticeBasis,
    markov: MarkovBasis,
    moves: MoveSet,
    table: CountTable,
    f1: i64,
    m: Vec<i64>,
    k_max: usize,
    gens: Vec<OnceLock<ModuleGens>>,
}

impl Analysis {
    /// Prepares everything needed for `k = 1..=k_max + 1`.
    pub fn new(basis: &LatticeBasis, k_max: usize) -> Result<Self> {
        if k_max == 0 {
            return Err(Error::InvalidArgument("k_max must be at least 1".into()));
        }
        let markov = lattice_ideal(basis)?;
        let moves = moves(&markov)?;
        let top = k_max as u64 + 1;
        let mut table = CountTable::new(basis, 128, top)?;
        let f1 = loop {
            if let Scan::Done(f) = scan_table(&table, 1) {
                break f;
            }
            grow(&mut table)?;
        };
        let m_top = loop {
            if let Some(m) = counting::m_value_in(&table, top) {
                break m;
            }
            grow(&mut table)?;
        };
        let a_max = *basis.weight().as_slice().iter().max().unwrap();
        let need = m_top.checked_add(f1.max(0) + a_max).ok_or(Error::Overflow("degree window"))?;
        table.extend_to(need)?;
        let m = (1..=top).map(|k| counting::m_value_in(&table, k).unwrap()).collect();
        Ok(Self {
            basis: basis.clone(),
            markov,
            moves,
            table,
            f1,
            m,
            k_max,
            gens: (0..=k_max + 1).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn basis(&self) -> &LatticeBasis {
        &self.basis
    }

    pub fn markov(&self) -> &MarkovBasis {
        &self.markov
    }

    pub fn moves(&self) -> &MoveSet {
        &self.moves
    }

    pub fn table(&self) -> &CountTable {
        &self.table
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    /// The classical Frobenius number `F₁`.
    pub fn f1(&self) -> i64 {
        self.f1
    }

    fn check_k(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.k_max + 1 {
            return Err(Error::InvalidArgument(format!("k = {k} outside 1..={}", self.k_max + 1)));
        }
        Ok(())
    }

    pub fn m_value(&self, k: usize) -> Result<i64> {
        self.check_k(k)?;
        Ok(self.m[k - 1])
    }

    /// `F_k` from the count table.
    pub fn frobenius(&self, k: usize) -> Result<i64> {
        self.check_k(k)?;
        match scan_table(&self.table, k as u64) {
            Scan::Done(f) => Ok(f),
            Scan::NeedMore => Err(Error::ScanCapExceeded(self.table.max_degree())),
        }
    }

    /// Upper end of the degree window `[m_k, m_k + F₁]`.
    pub fn window_top(&self, k: usize) -> Result<i64> {
        Ok(self.m_value(k)? + self.f1.max(0))
    }

    pub fn class_of(&self, m: &LaurentMonomial) -> Result<QuotientClass> {
        self.basis.class_label(m.exponent())
    }

    /// Whether a class contains a nonnegative point, using the table when possible.
    pub fn has_nonneg_rep(&self, c: &QuotientClass) -> bool {
        match self.table.get(c) {
            Some(n) => n > 0,
            None => counting::has_nonneg_rep(&self.basis, c),
        }
    }

    /// `x^m · x^l` divides `x^{m'}` for some `l ∈ H`.
    pub fn divides_mod_l(&self, m: &LaurentMonomial, m2: &LaurentMonomial) -> Result<bool> {
        let d: Vec<i64> = m2.exponent().iter().zip(m.exponent()).map(|(a, b)| a - b).collect();
        Ok(self.has_nonneg_rep(&self.basis.class_label(&d)?))
    }

    /// Lattice points dominated by `m`, sorted.
    pub fn support(&self, m: &LaurentMonomial) -> Result<Vec<LatticePoint>> {
        counting::dominated_points(&self.basis, m.exponent())
    }

    /// The ball `N^(r)(0)` of the lattice graph.
    pub fn ball(&self, r: usize) -> Ball {
        ball(&self.moves, r)
    }

    pub fn candidate_lcms(&self, k: usize) -> Result<CandidateSet> {
        self.check_k(k)?;
        let b = self.ball(k - 1);
        if k > b.len() {
            return Err(Error::InvalidArgument(format!(
                "k = {k} exceeds the {} points of the ball",
                b.len()
            )));
        }
        let others: Vec<&LatticePoint> = b.points.iter().filter(|p| !p.is_zero()).collect();
        let bound = self.window_top(k)?;
        let weight = self.basis.weight().as_slice();
        let n = self.basis.dim();
        let ctx = Dfs { pts: &others, weight, bound };
        let (lcms, pruned) = ctx.run(k - 1, n);
        Ok(CandidateSet { k, subsets: binomial(others.len() as u64, k as u64 - 1), pruned, lcms })
    }

    /// Minimal generators of `M^(k)`, cached per `k`.
    pub fn minimal_generators(&self, k: usize) -> Result<&ModuleGens> {
        self.check_k(k)?;
        if let Some(g) = self.gens[k].get() {
            return Ok(g);
        }
        let computed = self.compute_generators(k)?;
        Ok(self.gens[k].get_or_init(|| computed))
    }

    fn compute_generators(&self, k: usize) -> Result<ModuleGens> {
        let cands = self.candidate_lcms(k)?;
        // one candidate per class: same class means same orbit
        let mut orbits: BTreeMap<QuotientClass, LaurentMonomial> = BTreeMap::new();
        for c in cands.lcms {
            orbits.entry(self.class_of(&c)?).or_insert(c);
        }
        let classes: Vec<&QuotientClass> = orbits.keys().collect();
        let mut minimal = Vec::new();
        for &c in &classes {
            let divisible =
                classes.iter().any(|&o| o != c && self.has_nonneg_rep(&self.basis.sub_classes(c, o)));
            if !divisible {
                minimal.push(self.canonical_rep(&orbits[c])?);
            }
        }
        let weight = self.basis.weight();
        let mut keyed: Vec<(i64, LaurentMonomial)> =
            minimal.into_iter().map(|g| Ok((weight.degree(g.exponent())?, g))).collect::<Result<_>>()?;
        keyed.sort();
        let generators: Vec<LaurentMonomial> = keyed.into_iter().map(|(_, g)| g).collect();
        let supports = generators.iter().map(|g| self.support(g)).collect::<Result<Vec<_>>>()?;
        let min_degree_witness = generators[0].clone();
        Ok(ModuleGens { k, m_k: self.m_value(k)?, generators, supports, min_degree_witness })
    }

    /// The lexicographically smallest translate of `g` that dominates the origin.
    pub fn canonical_rep(&self, g: &LaurentMonomial) -> Result<LaurentMonomial> {
        let support = self.support(g)?;
        support
            .iter()
            .map(|s| g.translate(&s.neg()))
            .min()
            .ok_or_else(|| Error::InvalidArgument(format!("{g} dominates no lattice point")))
    }

    /// The generator set of the modified module (`M^(k)` with the unit
    /// adjoined), cut down to a finite window: the unit plus every translate
    /// of a generator that does not dominate the origin and whose whole
    /// support lies in `N^(k)(0)`.
    pub fn modified_min_gens(&self, k: usize) -> Result<Vec<LaurentMonomial>> {
        let n = self.basis.dim();
        let mut out = BTreeSet::new();
        out.insert(LaurentMonomial::unit(n));
        if k == 1 {
            return Ok(out.into_iter().collect());
        }
        let gens = self.minimal_generators(k)?;
        let b = self.ball(k);
        for (g, support) in gens.generators.iter().zip(&gens.supports) {
            for s in support {
                for p in &b.points {
                    let l = p.sub(s);
                    let t = g.translate(&l);
                    if t.dominates_origin() || out.contains(&t) {
                        continue;
                    }
                    if support.iter().all(|q| b.contains(&q.add(&l))) {
                        out.insert(t);
                    }
                }
            }
        }
        Ok(out.into_iter().collect())
    }

    /// Classifies a minimal generator `g` of `M^(k_next)` by the lcms of the
    /// `(k_next − 1)`-subsets of its support.
    pub fn classify(&self, g: &LaurentMonomial, k_next: usize) -> Result<GeneratorClassification> {
        if k_next < 2 {
            return Err(Error::InvalidArgument("classification needs k ≥ 2".into()));
        }
        let gens = self.minimal_generators(k_next)?;
        let class = self.class_of(g)?;
        let mut is_minimal = false;
        for r in &gens.generators {
            if self.class_of(r)? == class {
                is_minimal = true;
            }
        }
        if !is_minimal {
            return Err(Error::NotMinimal(g.to_string(), k_next));
        }
        let support = self.support(g)?;
        let n = g.dim();
        let exceptional = |support| GeneratorClassification {
            generator: g.clone(),
            case: GeneratorCase::Exceptional,
            support,
            witnesses: vec![g.clone()],
            translation: LatticePoint::zero(n),
        };
        if support.len() > k_next {
            return Ok(exceptional(support));
        }
        let subsets = combinations(support.len(), k_next - 1);
        let lcms: Vec<LaurentMonomial> = subsets
            .iter()
            .map(|t| {
                t.iter().fold(LaurentMonomial::new(vec![i64::MIN; n]), |acc, &i| {
                    acc.lcm(&LaurentMonomial::new(support[i].coords().to_vec()))
                })
            })
            .collect();
        for i in 0..lcms.len() {
            for j in i + 1..lcms.len() {
                if !lcms[i].divides(&lcms[j]) && !lcms[j].divides(&lcms[i]) {
                    return Ok(GeneratorClassification {
                        generator: g.clone(),
                        case: GeneratorCase::SyzygyOfTwoGenerators,
                        support,
                        witnesses: vec![lcms[i].clone(), lcms[j].clone()],
                        translation: LatticePoint::zero(n),
                    });
                }
            }
        }
        match lcms.iter().position(|l| l != g) {
            None => Ok(exceptional(support)),
            Some(i) => {
                let q = (0..support.len())
                    .find(|j| !subsets[i].contains(j))
                    .map(|j| support[j].clone())
                    .expect("support is larger than the subset");
                Ok(GeneratorClassification {
                    generator: g.clone(),
                    case: GeneratorCase::SyzygyWithUnit,
                    support,
                    witnesses: vec![lcms[i].translate(&q.neg())],
                    translation: q,
                })
            }
        }
    }

    /// Whether some generator of `M^(k)` divides class `c` up to `H`.
    pub fn covered(&self, k: usize, c: &QuotientClass) -> Result<bool> {
        for g in &self.minimal_generators(k)?.generators {
            let gc = self.class_of(g)?;
            if self.has_nonneg_rep(&self.basis.sub_classes(c, &gc)) {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// `F_k` through the module: `m_k` plus the last offset in the degree
    /// window with an uncovered class, or `m_k − 1` when the window is full.
    pub fn frobenius_via_module(&self, k: usize) -> Result<i64> {
        let m_k = self.m_value(k)?;
        for d in (m_k..=self.window_top(k)?).rev() {
            for c in self.basis.classes_of_degree(d) {
                if !self.covered(k, &c)? {
                    return Ok(d);
                }
            }
        }
        Ok(m_k - 1)
    }
}

fn grow(table: &mut CountTable) -> Result<()> {
    let next = table.max_degree().checked_mul(2).ok_or(Error::Overflow("degree scan"))?;
    table.extend_to(next)
}

/// All `r`-subsets of `0..n` as sorted index lists, in lexicographic order.
fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, r, &mut Vec::with_capacity(r), &mut out);
    out
}

/// Depth-first subset enumeration with a running lcm and a degree bound.
struct Dfs<'a> {
    pts: &'a [&'a LatticePoint],
    weight: &'a [i64],
    bound: i64,
}

impl Dfs<'_> {
    fn run(&self, r: usize, n: usize) -> (BTreeSet<LaurentMonomial>, u64) {
        let zero = vec![0i64; n];
        if r == 0 {
            return (BTreeSet::from([LaurentMonomial::new(zero)]), 0);
        }
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            (0..self.pts.len()).into_par_iter().map(|i| self.branch(i, r, &zero)).reduce(
                || (BTreeSet::new(), 0),
                |mut a, b| {
                    a.0.extend(b.0);
                    (a.0, a.1 + b.1)
                },
            )
        }
        #[cfg(not(feature = "parallel"))]
        {
            let mut out = BTreeSet::new();
            let mut pruned = 0;
            for i in 0..self.pts.len() {
                let (s, p) = self.branch(i, r, &zero);
                out.extend(s);
                pruned += p;
            }
            (out, pruned)
        }
    }

    /// Subsets whose smallest chosen index is `i`.
    fn branch(&self, i: usize, r: usize, acc: &[i64]) -> (BTreeSet<LaurentMonomial>, u64) {
        let mut out = BTreeSet::new();
        let mut pruned = 0;
        let mut cur = acc.to_vec();
        self.step(i, r, &mut cur, &mut out, &mut pruned);
        (out, pruned)
    }

    fn step(
        &self,
        i: usize,
        r: usize,
        cur: &mut Vec<i64>,
        out: &mut BTreeSet<LaurentMonomial>,
        pruned: &mut u64,
    ) {
        let saved = cur.clone();
        for (c, &x) in cur.iter_mut().zip(self.pts[i].coords()) {
            *c = (*c).max(x);
        }
        let deg: i64 = cur.iter().zip(self.weight).map(|(a, b)| a * b).sum();
        let left = (self.pts.len() - i - 1) as u64;
        if deg > self.bound {
            *pruned += binomial(left, r as u64 - 1);
        } else if r == 1 {
            out.insert(LaurentMonomial::new(cur.clone()));
        } else {
            for j in i + 1..self.pts.len() {
                self.step(j, r - 1, cur, out, pruned);
            }
        }
        *cur = saved;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{kernel_basis, WeightVector};

    fn analysis(a: &[i64], k_max: usize) -> Analysis {
        let b = kernel_basis(&WeightVector::new(a.to_vec()).unwrap()).unwrap();
        Analysis::new(&b, k_max).unwrap()
    }

    fn mono(s: &str) -> LaurentMonomial {
        LaurentMonomial::parse(s, 3).unwrap()
    }

    fn same_orbits(an: &Analysis, got: &[LaurentMonomial], want: &[&str]) -> bool {
        let mut a: Vec<QuotientClass> = got.iter().map(|g| an.class_of(g).unwrap()).collect();
        let mut b: Vec<QuotientClass> = want.iter().map(|w| an.class_of(&mono(w)).unwrap()).collect();
        a.sort();
        b.sort();
        a == b
    }

    #[test]
    fn monomial_text_roundtrip() {
        for s in ["1", "x3", "x1^-1*x2*x3^2", "x1^5", "x1^4*x2^2"] {
            assert_eq!(mono(s).to_string(), s);
        }
        assert!(LaurentMonomial::parse("y2", 3).is_err());
        assert!(LaurentMonomial::parse("x4", 3).is_err());
    }

    #[test]
    fn phi_examples() {
        let u = LaurentMonomial::unit(3);
        assert_eq!(phi(&mono("x1^-1*x2^-1*x3^2"), &mono("x1^-2*x2*x3^2")), mono("x1^-1*x2*x3^2"));
        assert_eq!(phi(&mono("x1^-1*x2^-1*x3^2"), &u), mono("x3^2"));
        assert_eq!(phi(&mono("x3"), &mono("x3")), mono("x3"));
    }

    #[test]
    fn candidates() {
        let an = analysis(&[3, 5, 8], 3);
        let c = an.candidate_lcms(2).unwrap();
        let want: BTreeSet<_> = ["x3", "x1*x2", "x2^3", "x1^5"].iter().map(|s| mono(s)).collect();
        assert_eq!(c.lcms, want);
        assert_eq!(an.candidate_lcms(1).unwrap().lcms, BTreeSet::from([LaurentMonomial::unit(3)]));

        let an = analysis(&[3, 4, 11], 4);
        assert_eq!(an.candidate_lcms(3).unwrap().subsets, 66);
    }

    #[test]
    fn divisibility_up_to_lattice() {
        let an = analysis(&[3, 5, 8], 2);
        assert!(an.divides_mod_l(&mono("x3"), &mono("x1*x2")).unwrap());
        assert!(!an.divides_mod_l(&mono("x3"), &mono("x2^3")).unwrap());
        assert!(!an.divides_mod_l(&mono("x2^3"), &mono("x3")).unwrap());
    }

    #[test]
    fn generators() {
        let an = analysis(&[3, 5, 8], 3);
        assert!(same_orbits(&an, &an.minimal_generators(2).unwrap().generators, &["x3", "x2^3"]));
        assert_eq!(an.minimal_generators(1).unwrap().generators, vec![LaurentMonomial::unit(3)]);

        let an = analysis(&[3, 4, 11], 4);
        let g3 = an.minimal_generators(3).unwrap();
        assert!(same_orbits(&an, &g3.generators, &["x1^5", "x1^4*x2^2"]));
        let g4 = an.minimal_generators(4).unwrap();
        assert!(same_orbits(&an, &g4.generators, &["x3^2", "x1^-1*x2*x3^2", "x1^3*x2*x3"]));

        let an = analysis(&[2, 5, 10], 2);
        assert!(same_orbits(&an, &an.minimal_generators(2).unwrap().generators, &["x3"]));
    }

    #[test]
    fn modified_generators() {
        let an = analysis(&[3, 4, 11], 3);
        assert_eq!(an.modified_min_gens(1).unwrap(), vec![LaurentMonomial::unit(3)]);
        let m3 = an.modified_min_gens(3).unwrap();
        assert!(m3.contains(&LaurentMonomial::unit(3)));
        assert!(m3.contains(&mono("x1^-1*x2^-1*x3^2")));
        assert!(m3.contains(&mono("x1^-2*x2*x3^2")));
    }

    #[test]
    fn classification() {
        let an = analysis(&[2, 5, 10], 2);
        let c = an.classify(&mono("x3"), 2).unwrap();
        assert_eq!(c.case, GeneratorCase::Exceptional);
        let want: Vec<LatticePoint> =
            vec![vec![-5, 0, 1].into(), vec![0, -2, 1].into(), vec![0, 0, 0].into()];
        assert_eq!(c.support, want);
        assert!(c.verify());

        let an = analysis(&[3, 4, 11], 4);
        let c = an.classify(&mono("x1^-1*x2*x3^2"), 4).unwrap();
        assert_eq!(c.case, GeneratorCase::SyzygyOfTwoGenerators);
        let ws: BTreeSet<_> = c.witnesses.iter().cloned().collect();
        assert_eq!(ws, BTreeSet::from([mono("x1^-1*x2^-1*x3^2"), mono("x1^-2*x2*x3^2")]));
        assert!(c.verify());

        let c = an.classify(&mono("x3^2"), 4).unwrap();
        assert_eq!(c.case, GeneratorCase::SyzygyWithUnit);
        assert_eq!(c.witnesses, vec![mono("x1^-1*x2^-1*x3^2")]);
        assert!(c.verify());

        assert!(matches!(an.classify(&mono("x3^3"), 4), Err(Error::NotMinimal(..))));
    }

    #[test]
    fn module_route_frobenius() {
        let an = analysis(&[3, 5, 8], 6);
        for k in 1..=6 {
            assert_eq!(an.frobenius_via_module(k).unwrap(), an.frobenius(k).unwrap());
        }
    }
}
