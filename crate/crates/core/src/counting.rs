//! Class-graded denumerants.
//!
//! For each class `c ∈ ℤⁿ/H` the table stores how many `u ∈ ℕⁿ` have
//! `class(u) = c`, saturated at a cap. With `H` the full kernel this is the
//! restricted partition function of the weights.

use crate::error::{Error, Result};
use crate::lattice::{LatticeBasis, LatticePoint, QuotientClass, WeightVector};

/// Saturating counts `min(#{u ∈ ℕⁿ : class(u) = c}, cap)` for every class of
/// degree `0..=max_degree`. Growable in the degree direction.
#[derive(Debug, Clone)]
pub struct CountTable {
    basis: LatticeBasis,
    cap: u64,
    classes: usize,
    /// `(weight, torsion shift table)` for each variable: `shift[t]` is the
    /// torsion index of `t − class(eᵢ)`.
    steps: Vec<(usize, Vec<usize>)>,
    /// `layers[i][d * classes + t]` counts points using variables `0..=i`.
    layers: Vec<Vec<u64>>,
    max_degree: i64,
}

impl CountTable {
    pub fn new(basis: &LatticeBasis, max_degree: i64, cap: u64) -> Result<Self> {
        if cap == 0 || cap > u64::MAX / 2 {
            return Err(Error::InvalidArgument(format!("count cap {cap} out of range")));
        }
        if max_degree < 0 {
            return Err(Error::InvalidArgument("max_degree must be nonnegative".into()));
        }
        let n = basis.dim();
        let classes =
            usize::try_from(basis.sublattice_index()).map_err(|_| Error::Overflow("class count"))?;
        let mut steps = Vec::with_capacity(n);
        for i in 0..n {
            let unit = basis.class_label(&LatticePoint::unit(n, i))?;
            let shift = (0..classes)
                .map(|t| {
                    let c = QuotientClass { degree: 0, torsion: basis.torsion_from_index(t) };
                    let prev = basis.sub_classes(&c, &unit);
                    basis.torsion_index(&prev.torsion)
                })
                .collect();
            steps.push((basis.weight()[i] as usize, shift));
        }
        let mut table =
            Self { basis: basis.clone(), cap, classes, steps, layers: vec![Vec::new(); n], max_degree: -1 };
        table.extend_to(max_degree)?;
        Ok(table)
    }

    pub fn basis(&self) -> &LatticeBasis {
        &self.basis
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn max_degree(&self) -> i64 {
        self.max_degree
    }

    /// Number of classes per degree (the sublattice index).
    pub fn classes_per_degree(&self) -> usize {
        self.classes
    }

    #[allow(clippy::needless_range_loop)]
    pub fn extend_to(&mut self, max_degree: i64) -> Result<()> {
        if max_degree <= self.max_degree {
            return Ok(());
        }
        let cells = usize::try_from(max_degree + 1)
            .ok()
            .and_then(|d| d.checked_mul(self.classes))
            .ok_or(Error::Overflow("count table size"))?;
        let k = self.classes;
        for layer in self.layers.iter_mut() {
            layer.resize(cells, 0);
        }
        for d in (self.max_degree + 1) as usize..=max_degree as usize {
            for i in 0..self.steps.len() {
                let (w, ref shift) = self.steps[i];
                for t in 0..k {
                    let below =
                        if i == 0 { u64::from(d == 0 && t == 0) } else { self.layers[i - 1][d * k + t] };
                    let step = if d >= w { self.layers[i][(d - w) * k + shift[t]] } else { 0 };
                    self.layers[i][d * k + t] = (below + step).min(self.cap);
                }
            }
        }
        self.max_degree = max_degree;
        Ok(())
    }

    /// Saturated count of a class, or `None` past `max_degree`.
    pub fn get(&self, c: &QuotientClass) -> Option<u64> {
        if c.degree < 0 {
            return Some(0);
        }
        if c.degree > self.max_degree {
            return None;
        }
        Some(self.at(c.degree, self.basis.torsion_index(&c.torsion)))
    }

    /// Like [`get`](Self::get) but panics past `max_degree`.
    pub fn count(&self, c: &QuotientClass) -> u64 {
        self.get(c).unwrap_or_else(|| panic!("degree {} beyond table ({})", c.degree, self.max_degree))
    }

    /// Count at `(degree, torsion index)`.
    pub fn at(&self, degree: i64, torsion: usize) -> u64 {
        if degree < 0 {
            return 0;
        }
        let k = self.classes;
        self.layers.last().unwrap()[degree as usize * k + torsion]
    }

    /// Smallest count over the classes of one degree.
    pub fn min_at(&self, degree: i64) -> u64 {
        (0..self.classes).map(|t| self.at(degree, t)).min().unwrap()
    }

    pub fn max_at(&self, degree: i64) -> u64 {
        (0..self.classes).map(|t| self.at(degree, t)).max().unwrap()
    }
}

/// Free-function constructor matching the table's contract.
pub fn count_table(basis: &LatticeBasis, max_degree: i64, cap: u64) -> Result<CountTable> {
    CountTable::new(basis, max_degree, cap)
}

/// The nonnegative points of one class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fiber {
    pub class: QuotientClass,
    pub points: Vec<LatticePoint>,
}

/// All `u ∈ ℕⁿ` with `a·u = degree`, in lexicographic order.
pub fn degree_fiber(weight: &WeightVector, degree: i64) -> Vec<LatticePoint> {
    let mut out = Vec::new();
    if degree < 0 {
        return out;
    }
    let mut cur = vec![0i64; weight.dim()];
    fiber_dfs(weight.as_slice(), 0, degree, &mut cur, &mut |u| {
        out.push(LatticePoint::from(u.to_vec()));
        true
    });
    out
}

/// Depth-first enumeration with degree pruning; `visit` returns `false` to stop.
fn fiber_dfs(
    a: &[i64],
    i: usize,
    rem: i64,
    cur: &mut Vec<i64>,
    visit: &mut dyn FnMut(&[i64]) -> bool,
) -> bool {
    if i == a.len() - 1 {
        if rem % a[i] == 0 {
            cur[i] = rem / a[i];
            let go = visit(cur);
            cur[i] = 0;
            return go;
        }
        return true;
    }
    for x in 0..=rem / a[i] {
        cur[i] = x;
        if !fiber_dfs(a, i + 1, rem - x * a[i], cur, visit) {
            cur[i] = 0;
            return false;
        }
    }
    cur[i] = 0;
    true
}

pub fn fiber(basis: &LatticeBasis, class: &QuotientClass) -> Result<Fiber> {
    let mut points = Vec::new();
    if class.degree >= 0 {
        let mut cur = vec![0i64; basis.dim()];
        let mut err = None;
        fiber_dfs(basis.weight().as_slice(), 0, class.degree, &mut cur, &mut |u| {
            match basis.class_label(u) {
                Ok(c) if &c == class => points.push(LatticePoint::from(u.to_vec())),
                Ok(_) => {}
                Err(e) => {
                    err = Some(e);
                    return false;
                }
            }
            true
        });
        if let Some(e) = err {
            return Err(e);
        }
    }
    Ok(Fiber { class: class.clone(), points })
}

/// Lattice points `q ∈ H` with `q ≤ p`; equal to `p − fiber(class(p))`.
pub fn dominated_points(basis: &LatticeBasis, p: &[i64]) -> Result<Vec<LatticePoint>> {
    let class = basis.class_label(p)?;
    let p = LatticePoint::from(p.to_vec());
    let mut pts: Vec<LatticePoint> = fiber(basis, &class)?.points.iter().map(|u| p.sub(u)).collect();
    pts.sort();
    Ok(pts)
}

/// Whether a class contains a point of `ℕⁿ`.
pub fn has_nonneg_rep(basis: &LatticeBasis, class: &QuotientClass) -> bool {
    nonneg_rep(basis, class).is_some()
}

/// A nonnegative representative of `class`, if any.
pub fn nonneg_rep(basis: &LatticeBasis, class: &QuotientClass) -> Option<LatticePoint> {
    if class.degree < 0 {
        return None;
    }
    let mut found = None;
    let mut cur = vec![0i64; basis.dim()];
    fiber_dfs(basis.weight().as_slice(), 0, class.degree, &mut cur, &mut |u| {
        if basis.class_label(u).map(|c| &c == class).unwrap_or(false) {
            found = Some(LatticePoint::from(u.to_vec()));
            return false;
        }
        true
    });
    found
}

/// `m_k`: the smallest degree carrying a class with at least `k` points.
pub fn m_value(basis: &LatticeBasis, k: u64) -> Result<i64> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let mut table = CountTable::new(basis, 64, k)?;
    let mut d = 0;
    loop {
        while d <= table.max_degree() {
            if table.max_at(d) >= k {
                return Ok(d);
            }
            d += 1;
        }
        let next = table.max_degree().checked_mul(2).ok_or(Error::Overflow("degree scan"))?;
        table.extend_to(next)?;
    }
}

/// Smallest degree in `table` with some class reaching `k`, if present.
pub(crate) fn m_value_in(table: &CountTable, k: u64) -> Option<i64> {
    (0..=table.max_degree()).find(|&d| table.max_at(d) >= k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::kernel_basis;

    fn kernel(a: &[i64]) -> LatticeBasis {
        kernel_basis(&WeightVector::new(a.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn first_degrees_reaching_each_count() {
        let b = kernel(&[3, 5, 8]);
        let ms: Vec<i64> = (1..=6).map(|k| m_value(&b, k).unwrap()).collect();
        assert_eq!(ms, vec![0, 8, 16, 21, 24, 29]);
    }

    #[test]
    fn degree_zero_and_eight() {
        let b = kernel(&[3, 5, 8]);
        let t = CountTable::new(&b, 10, 100).unwrap();
        assert_eq!(t.count(&b.zero_class()), 1);
        assert_eq!(t.at(8, 0), 2);
        let f = fiber(&b, &QuotientClass { degree: 8, torsion: vec![] }).unwrap();
        let pts: Vec<Vec<i64>> = f.points.into_iter().map(|p| p.into_inner()).collect();
        assert_eq!(pts, vec![vec![0, 0, 1], vec![1, 1, 0]]);
        assert_eq!(t.at(7, 0), 0);
    }

    #[test]
    fn fiber_of_degree_zero() {
        let b = kernel(&[3, 5, 8]);
        let f = fiber(&b, &b.zero_class()).unwrap();
        assert_eq!(f.points, vec![LatticePoint::zero(3)]);
    }

    #[test]
    fn fiber_2_5_10() {
        let b = kernel(&[2, 5, 10]);
        let c = b.class_label(&[0, 0, 1]).unwrap();
        let f = fiber(&b, &c).unwrap();
        let pts: Vec<Vec<i64>> = f.points.into_iter().map(|p| p.into_inner()).collect();
        assert_eq!(pts, vec![vec![0, 0, 1], vec![0, 2, 0], vec![5, 0, 0]]);
    }

    #[test]
    fn dominated_points_examples() {
        let b = kernel(&[2, 5, 10]);
        let got = dominated_points(&b, &[0, 0, 1]).unwrap();
        let want: Vec<LatticePoint> =
            vec![vec![-5, 0, 1].into(), vec![0, -2, 1].into(), vec![0, 0, 0].into()];
        assert_eq!(got, want);

        let b = kernel(&[3, 4, 11]);
        let got = dominated_points(&b, &[-1, 1, 2]).unwrap();
        let mut want: Vec<LatticePoint> = vec![
            vec![-1, -2, 1].into(),
            vec![-2, -4, 2].into(),
            vec![-6, -1, 2].into(),
            vec![-5, 1, 1].into(),
        ];
        want.sort();
        assert_eq!(got, want);

        assert_eq!(dominated_points(&b, &[0, 0, 0]).unwrap(), vec![LatticePoint::zero(3)]);
        assert!(dominated_points(&b, &[-1, 0, 0]).unwrap().is_empty());
    }

    #[test]
    fn two_variable_m_values() {
        let b = kernel(&[3, 5]);
        for k in 1..=6 {
            assert_eq!(m_value(&b, k).unwrap(), (k as i64 - 1) * 15);
        }
    }

    #[test]
    fn nonneg_representatives() {
        let b = kernel(&[3, 5, 8]);
        assert!(!has_nonneg_rep(&b, &QuotientClass { degree: 7, torsion: vec![] }));
        assert!(has_nonneg_rep(&b, &b.zero_class()));
        let w = nonneg_rep(&b, &QuotientClass { degree: 5, torsion: vec![] }).unwrap();
        assert_eq!(w.coords(), &[0, 1, 0]);
        assert!(!has_nonneg_rep(&b, &QuotientClass { degree: -3, torsion: vec![] }));
    }

    #[test]
    fn sublattice_classes_split_counts() {
        // H = <(2,-2)> in (1,1)^⊥: degree d points split by parity of the first coordinate
        let h =
            LatticeBasis::new(WeightVector::new(vec![1, 1]).unwrap(), vec![LatticePoint::from(vec![2, -2])])
                .unwrap();
        let t = CountTable::new(&h, 6, 100).unwrap();
        for d in 0..=6i64 {
            let total: u64 = (0..2).map(|i| t.at(d, i)).sum();
            assert_eq!(total, d as u64 + 1);
        }
        assert_eq!(t.min_at(0), 0);
    }

    #[test]
    fn cap_saturates() {
        let b = kernel(&[1, 2]);
        let t = CountTable::new(&b, 40, 3).unwrap();
        assert_eq!(t.at(40, 0), 3);
        assert!(CountTable::new(&b, 5, 0).is_err());
        assert!(CountTable::new(&b, 5, u64::MAX).is_err());
    }

    #[test]
    fn table_matches_fibers() {
        let h = LatticeBasis::new(
            WeightVector::new(vec![3, 5, 8]).unwrap(),
            vec![vec![2, 2, -2].into(), vec![5, -3, 0].into()],
        )
        .unwrap();
        let t = CountTable::new(&h, 30, 1000).unwrap();
        for d in 0..=30 {
            for c in h.classes_of_degree(d) {
                assert_eq!(t.count(&c), fiber(&h, &c).unwrap().points.len() as u64);
            }
        }
    }
}
