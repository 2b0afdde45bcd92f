//! The structure poset of a lattice (classes of degree `0..=F₁` ordered by
//! "the difference has a nonnegative representative") and the subposets cut
//! out by the modules `M^(k)`.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::QuotientClass;
use crate::module::Analysis;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructurePoset {
    /// Sorted by degree, then torsion.
    pub elements: Vec<QuotientClass>,
    /// Cover relations `(lower, upper)` as element indices.
    pub hasse: Vec<(usize, usize)>,
    #[serde(skip)]
    leq: Vec<Vec<bool>>,
    #[serde(skip)]
    index: HashMap<QuotientClass, usize>,
}

impl StructurePoset {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, c: &QuotientClass) -> Option<usize> {
        self.index.get(c).copied()
    }

    /// `b ≤ a` by element index.
    pub fn leq_at(&self, b: usize, a: usize) -> bool {
        self.leq[b][a]
    }

    /// `b ≤ a`; both classes must lie in the poset.
    pub fn leq(&self, b: &QuotientClass, a: &QuotientClass) -> Result<bool> {
        let pos = |c: &QuotientClass| {
            self.position(c).ok_or_else(|| Error::InvalidArgument(format!("class {c} is outside the poset")))
        };
        Ok(self.leq_at(pos(b)?, pos(a)?))
    }

    /// Cover relations as class pairs `(lower, upper)`.
    pub fn hasse_classes(&self) -> Vec<(QuotientClass, QuotientClass)> {
        self.hasse.iter().map(|&(i, j)| (self.elements[i].clone(), self.elements[j].clone())).collect()
    }

    /// Minimal elements of the subposet on `subset` (indices).
    pub fn minimal_of(&self, subset: &[usize]) -> Vec<usize> {
        subset.iter().copied().filter(|&i| !subset.iter().any(|&j| j != i && self.leq[j][i])).collect()
    }

    /// Size of a largest antichain: by Dilworth, the element count minus a
    /// maximum matching in the strict comparability graph.
    pub fn max_antichain_size(&self) -> usize {
        let n = self.len();
        let mut match_upper: Vec<Option<usize>> = vec![None; n];
        let mut matched = 0;
        for i in 0..n {
            let mut seen = vec![false; n];
            if self.augment(i, &mut seen, &mut match_upper) {
                matched += 1;
            }
        }
        n - matched
    }

    fn augment(&self, i: usize, seen: &mut [bool], match_upper: &mut [Option<usize>]) -> bool {
        for j in 0..self.len() {
            if i != j && self.leq[i][j] && !seen[j] {
                seen[j] = true;
                if match_upper[j].is_none_or(|o| self.augment(o, seen, match_upper)) {
                    match_upper[j] = Some(i);
                    return true;
                }
            }
        }
        false
    }

    /// Graphviz rendering of the Hasse diagram. Members of `highlight` are
    /// drawn filled, its minimal elements with a double border.
    pub fn to_dot(&self, highlight: Option<&ModulePoset>) -> String {
        let mut out = String::from("digraph structure_poset {\n  rankdir=BT;\n  node [shape=circle];\n");
        for c in &self.elements {
            let mut attrs = Vec::new();
            if let Some(mp) = highlight {
                if mp.labels.contains(c) {
                    attrs.push("style=filled".to_string());
                    attrs.push("fillcolor=lightgrey".to_string());
                }
                if mp.minimal.contains(c) {
                    attrs.push("peripheries=2".to_string());
                }
            }
            if attrs.is_empty() {
                let _ = writeln!(out, "  \"{c}\";");
            } else {
                let _ = writeln!(out, "  \"{c}\" [{}];", attrs.join(", "));
            }
        }
        for (lo, hi) in self.hasse_classes() {
            let _ = writeln!(out, "  \"{lo}\" -> \"{hi}\";");
        }
        out.push_str("}\n");
        out
    }
}

/// The structure poset of the analysed lattice; empty when `F₁ = −1`.
pub fn structure_poset(an: &Analysis) -> StructurePoset {
    let basis = an.basis();
    let elements: Vec<QuotientClass> = (0..=an.f1()).flat_map(|d| basis.classes_of_degree(d)).collect();
    let n = elements.len();
    let leq: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| an.has_nonneg_rep(&basis.sub_classes(&elements[j], &elements[i]))).collect())
        .collect();
    let mut hasse = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && leq[i][j] && !(0..n).any(|m| m != i && m != j && leq[i][m] && leq[m][j]) {
                hasse.push((i, j));
            }
        }
    }
    let index = elements.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
    StructurePoset { elements, hasse, leq, index }
}

/// The classes covered by `M^(k)` in its degree window, shifted down by `m_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModulePoset {
    pub k: usize,
    pub m_k: i64,
    /// Offsets `(degree − m_k, torsion)`, sorted.
    pub labels: Vec<QuotientClass>,
    /// Minimal labels under the induced order, one per generator orbit.
    pub minimal: Vec<QuotientClass>,
    /// Classes of degree `m_k` reached by `M^(k)`: the different ways the
    /// poset sits inside the quotient.
    pub embeddings: Vec<QuotientClass>,
}

pub fn module_poset(an: &Analysis, sp: &StructurePoset, k: usize) -> Result<ModulePoset> {
    let m_k = an.m_value(k)?;
    let cap = k as u64;
    let table = an.table();
    let mut labels = Vec::new();
    let mut embeddings = Vec::new();
    for c in &sp.elements {
        let shifted = QuotientClass { degree: c.degree + m_k, torsion: c.torsion.clone() };
        let count = table.get(&shifted).ok_or(Error::ScanCapExceeded(table.max_degree()))?;
        if count >= cap {
            labels.push(c.clone());
            if c.degree == 0 {
                embeddings.push(shifted);
            }
        }
    }
    let idx: Vec<usize> = labels.iter().map(|c| sp.position(c).unwrap()).collect();
    let minimal = sp.minimal_of(&idx).into_iter().map(|i| sp.elements[i].clone()).collect();
    Ok(ModulePoset { k, m_k, labels, minimal, embeddings })
}

impl ModulePoset {
    /// Whether every element of the structure poset is present.
    pub fn is_full(&self, sp: &StructurePoset) -> bool {
        self.labels.len() == sp.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FinitenessEntry {
    pub k: usize,
    pub m_k: i64,
    pub f_k: i64,
    pub b: i64,
    pub labels: Vec<QuotientClass>,
    pub full: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FinitenessReport {
    pub entries: Vec<FinitenessEntry>,
    /// Distinct label sets, in order of first appearance. Counted as labelled
    /// subsets of the structure poset.
    pub distinct_label_sets: Vec<Vec<QuotientClass>>,
    /// Distinct `b` values seen, ascending.
    pub observed_b_set: Vec<i64>,
    /// Every full module poset has `F_k = m_k − 1`.
    pub full_implies_tight: bool,
}

pub fn finiteness_report(an: &Analysis, k_max: usize) -> Result<FinitenessReport> {
    if k_max == 0 {
        return Err(Error::InvalidArgument("k_max must be at least 1".into()));
    }
    let sp = structure_poset(an);
    let mut entries = Vec::with_capacity(k_max);
    let mut distinct: Vec<Vec<QuotientClass>> = Vec::new();
    for k in 1..=k_max {
        let mp = module_poset(an, &sp, k)?;
        let f_k = an.frobenius(k)?;
        if !distinct.contains(&mp.labels) {
            distinct.push(mp.labels.clone());
        }
        entries.push(FinitenessEntry {
            k,
            m_k: mp.m_k,
            f_k,
            b: f_k - mp.m_k,
            full: mp.is_full(&sp),
            labels: mp.labels,
        });
    }
    let observed_b_set = entries.iter().map(|e| e.b).collect::<BTreeSet<_>>().into_iter().collect();
    let full_implies_tight = entries.iter().all(|e| !e.full || e.f_k == e.m_k - 1);
    Ok(FinitenessReport { entries, distinct_label_sets: distinct, observed_b_set, full_implies_tight })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{kernel_basis, LatticeBasis, WeightVector};

    fn analysis(a: &[i64], k_max: usize) -> Analysis {
        let b = kernel_basis(&WeightVector::new(a.to_vec()).unwrap()).unwrap();
        Analysis::new(&b, k_max).unwrap()
    }

    fn deg(d: i64) -> QuotientClass {
        QuotientClass { degree: d, torsion: vec![] }
    }

    fn degrees(cs: &[QuotientClass]) -> Vec<i64> {
        cs.iter().map(|c| c.degree).collect()
    }

    #[test]
    fn structure_poset_3_5_8() {
        let an = analysis(&[3, 5, 8], 6);
        let sp = structure_poset(&an);
        assert_eq!(degrees(&sp.elements), (0..=7).collect::<Vec<_>>());
        let mut edges: Vec<(i64, i64)> =
            sp.hasse_classes().into_iter().map(|(a, b)| (a.degree, b.degree)).collect();
        edges.sort();
        assert_eq!(edges, vec![(0, 3), (0, 5), (1, 4), (1, 6), (2, 5), (2, 7), (3, 6), (4, 7)]);
        assert!(sp.leq(&deg(0), &deg(3)).unwrap());
        assert!(!sp.leq(&deg(0), &deg(1)).unwrap());
        assert!(sp.leq(&deg(4), &deg(4)).unwrap());
        assert!(sp.leq(&deg(0), &deg(8)).is_err());
    }

    #[test]
    fn structure_poset_2_3() {
        let an = analysis(&[2, 3], 1);
        let sp = structure_poset(&an);
        assert_eq!(degrees(&sp.elements), vec![0, 1]);
        assert!(sp.hasse.is_empty());
        assert_eq!(sp.max_antichain_size(), 2);
    }

    #[test]
    fn empty_when_one_is_a_weight() {
        let an = analysis(&[1, 3], 2);
        let sp = structure_poset(&an);
        assert!(sp.is_empty());
        let r = finiteness_report(&an, 2).unwrap();
        assert!(r.entries.iter().all(|e| e.full && e.b == -1));
    }

    #[test]
    fn module_posets_3_5_8() {
        let an = analysis(&[3, 5, 8], 6);
        let sp = structure_poset(&an);
        let want: [&[i64]; 6] = [
            &[0, 3, 5, 6],
            &[0, 3, 5, 6, 7],
            &[0, 2, 3, 4, 5, 6, 7],
            &[0, 2, 3, 4, 5, 6, 7],
            &[0, 2, 3, 4, 5, 6, 7],
            &[0, 1, 2, 3, 4, 5, 6, 7],
        ];
        for (k, w) in (1..=6).zip(want) {
            let mp = module_poset(&an, &sp, k).unwrap();
            assert_eq!(degrees(&mp.labels), w.to_vec(), "k = {k}");
            let gens = an.minimal_generators(k).unwrap();
            assert_eq!(mp.minimal.len(), gens.generators.len());
        }
        assert_eq!(degrees(&module_poset(&an, &sp, 2).unwrap().minimal), vec![0, 7]);
        assert!(module_poset(&an, &sp, 6).unwrap().is_full(&sp));
    }

    #[test]
    fn finiteness_3_5_8() {
        let an = analysis(&[3, 5, 8], 6);
        let r = finiteness_report(&an, 6).unwrap();
        assert_eq!(r.distinct_label_sets.len(), 4);
        let b: Vec<i64> = r.entries.iter().map(|e| e.b).collect();
        assert_eq!(b, vec![7, 4, 1, 1, 1, -1]);
        assert!(r.full_implies_tight);
    }

    #[test]
    fn two_variable_single_poset() {
        let an = analysis(&[3, 5], 5);
        let r = finiteness_report(&an, 5).unwrap();
        assert_eq!(r.distinct_label_sets.len(), 1);
        assert_eq!(r.observed_b_set, vec![7]);
    }

    #[test]
    fn sublattice_poset_has_torsion_labels() {
        let h = LatticeBasis::new(
            WeightVector::new(vec![3, 5, 8]).unwrap(),
            vec![vec![2, 2, -2].into(), vec![5, -3, 0].into()],
        )
        .unwrap();
        let an = Analysis::new(&h, 3).unwrap();
        let sp = structure_poset(&an);
        assert_eq!(sp.len() as i64, 2 * (an.f1() + 1));
        for k in 1..=3 {
            let mp = module_poset(&an, &sp, k).unwrap();
            assert_eq!(mp.minimal.len(), an.minimal_generators(k).unwrap().generators.len());
            assert_eq!(an.frobenius_via_module(k).unwrap(), an.frobenius(k).unwrap());
        }
    }

    #[test]
    fn antichain_matches_brute_force() {
        for a in [[3, 5, 8], [3, 4, 11], [4, 5, 6], [5, 7, 9]] {
            let sp = structure_poset(&analysis(&a, 1));
            let n = sp.len();
            assert!(n <= 20);
            let mut best = 0;
            for mask in 0u32..(1 << n) {
                let set: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                let anti = set.iter().all(|&i| set.iter().all(|&j| i == j || !sp.leq_at(i, j)));
                if anti {
                    best = best.max(set.len());
                }
            }
            assert_eq!(sp.max_antichain_size(), best, "{a:?}");
        }
    }

    #[test]
    fn dot_export() {
        let an = analysis(&[3, 5, 8], 2);
        let sp = structure_poset(&an);
        let mp = module_poset(&an, &sp, 2).unwrap();
        let dot = sp.to_dot(Some(&mp));
        assert!(dot.starts_with("digraph"));
        assert!(dot.contains("\"0\" -> \"3\";"));
        assert!(dot.contains("\"7\" [style=filled, fillcolor=lightgrey, peripheries=2];"));
    }
}
