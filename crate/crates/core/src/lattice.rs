//! Integer lattice primitives.
//!
//! A [`LatticeBasis`] describes a finite-index sublattice `H` of the kernel
//! lattice `a^⊥ ∩ ℤⁿ`. On construction the Smith normal form of the basis
//! matrix is computed once; the left transform gives canonical labels for
//! the quotient group `ℤⁿ/H ≅ ℤ ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/d_r`, whose free coordinate is
//! the weighted degree `a·p`.

use std::fmt;
use std::ops::{Deref, Index};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

fn gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a.abs()
}

/// Checked dot product.
pub(crate) fn dot(u: &[i64], v: &[i64]) -> Result<i64> {
    u.iter().zip(v).try_fold(0i64, |acc, (x, y)| {
        x.checked_mul(*y).and_then(|p| acc.checked_add(p)).ok_or(Error::Overflow("dot product"))
    })
}

/// The positive weights `(a₁,…,aₙ)`, with `n ≥ 2` and `gcd = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightVector(Vec<i64>);

impl WeightVector {
    pub fn new(a: Vec<i64>) -> Result<Self> {
        if a.len() < 2 {
            return Err(Error::InvalidWeights(format!("need at least two weights, got {}", a.len())));
        }
        if let Some(w) = a.iter().find(|&&w| w < 1) {
            return Err(Error::InvalidWeights(format!("weight {w} is not positive")));
        }
        let g = a.iter().fold(0, |g, &w| gcd(g, w));
        if g != 1 {
            return Err(Error::InvalidWeights(format!("gcd of weights is {g}, not 1")));
        }
        Ok(Self(a))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    /// Weighted degree `a·p`.
    pub fn degree(&self, p: &[i64]) -> Result<i64> {
        self.check_dim(p.len())?;
        dot(&self.0, p)
    }

    pub fn min_weight(&self) -> i64 {
        *self.0.iter().min().unwrap()
    }

    pub(crate) fn check_dim(&self, found: usize) -> Result<()> {
        if found != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found });
        }
        Ok(())
    }
}

impl Index<usize> for WeightVector {
    type Output = i64;

    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

impl Serialize for WeightVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

fn write_tuple(f: &mut fmt::Formatter<'_>, v: &[i64]) -> fmt::Result {
    write!(f, "(")?;
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, ")")
}

/// An integer vector in `ℤⁿ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint(Vec<i64>);

impl LatticePoint {
    pub fn new(coords: Vec<i64>) -> Self {
        Self(coords)
    }

    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Self(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<i64> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|a| -a).collect())
    }

    pub fn positive_part(&self) -> Self {
        Self(self.0.iter().map(|&a| a.max(0)).collect())
    }

    pub fn negative_part(&self) -> Self {
        Self(self.0.iter().map(|&a| (-a).max(0)).collect())
    }

    /// Coordinatewise maximum.
    pub fn join(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(&a, &b)| a.max(b)).collect())
    }

    /// `self ≥ other` coordinatewise.
    pub fn dominates(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }
}

impl Deref for LatticePoint {
    type Target = [i64];

    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl From<Vec<i64>> for LatticePoint {
    fn from(v: Vec<i64>) -> Self {
        Self(v)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

impl Serialize for LatticePoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// Element of `ℤⁿ/H`: the weighted degree plus residues modulo the
/// nontrivial invariant factors of `H` inside the kernel lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuotientClass {
    pub degree: i64,
    pub torsion: Vec<i64>,
}

impl QuotientClass {
    pub fn is_zero(&self) -> bool {
        self.degree == 0 && self.torsion.iter().all(|&t| t == 0)
    }
}

/// A plain integer for saturated lattices, otherwise the `7[1,0]` text form.
impl Serialize for QuotientClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.torsion.is_empty() {
            s.serialize_i64(self.degree)
        } else {
            s.collect_str(self)
        }
    }
}

impl fmt::Display for QuotientClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.degree)?;
        if !self.torsion.is_empty() {
            write!(f, "[")?;
            for (i, t) in self.torsion.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{t}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

struct Smith {
    diag: Vec<i64>,
    /// Unimodular `U` with `U·M·V = D`.
    left: Vec<Vec<i64>>,
}

fn row_axpy(rows: &mut [Vec<i64>], dst: usize, q: i64, src: usize) -> Result<()> {
    // rows[dst] -= q * rows[src]
    for j in 0..rows[dst].len() {
        let v = q
            .checked_mul(rows[src][j])
            .and_then(|p| rows[dst][j].checked_sub(p))
            .ok_or(Error::Overflow("Smith normal form"))?;
        rows[dst][j] = v;
    }
    Ok(())
}

fn col_axpy(m: &mut [Vec<i64>], dst: usize, q: i64, src: usize) -> Result<()> {
    for row in m.iter_mut() {
        row[dst] = q
            .checked_mul(row[src])
            .and_then(|p| row[dst].checked_sub(p))
            .ok_or(Error::Overflow("Smith normal form"))?;
    }
    Ok(())
}

/// Smith normal form of an `rows × cols` integer matrix, tracking the left
/// transform only.
fn smith_normal_form(m: &[Vec<i64>]) -> Result<Smith> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a: Vec<Vec<i64>> = m.to_vec();
    let mut left: Vec<Vec<i64>> = (0..rows).map(|i| (0..rows).map(|j| i64::from(i == j)).collect()).collect();
    let mut diag = Vec::new();

    for t in 0..rows.min(cols) {
        loop {
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[i][j] != 0 && pivot.is_none_or(|(pi, pj)| a[i][j].abs() < a[pi][pj].abs()) {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                // remaining block is zero
                diag.extend(std::iter::repeat_n(0, rows.min(cols) - t));
                return Ok(Smith { diag, left });
            };
            a.swap(t, pi);
            left.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }

            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t] / a[t][t];
                if q != 0 {
                    row_axpy(&mut a, i, q, t)?;
                    row_axpy(&mut left, i, q, t)?;
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = a[t][j] / a[t][t];
                if q != 0 {
                    col_axpy(&mut a, j, q, t)?;
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }

            let p = a[t][t];
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0));
            match offender {
                Some(i) => {
                    row_axpy(&mut a, t, -1, i)?;
                    row_axpy(&mut left, t, -1, i)?;
                }
                None => break,
            }
        }
        if a[t][t] < 0 {
            a[t][t] = -a[t][t];
            for x in left[t].iter_mut() {
                *x = -*x;
            }
        }
        diag.push(a[t][t]);
    }
    Ok(Smith { diag, left })
}

/// Basis of a finite-index sublattice `H ⊆ a^⊥ ∩ ℤⁿ` together with the
/// data needed to label `ℤⁿ/H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeBasis {
    weight: WeightVector,
    vectors: Vec<LatticePoint>,
    /// Invariant factors greater than one.
    moduli: Vec<i64>,
    /// Rows of the Smith left transform matching `moduli`.
    torsion_rows: Vec<Vec<i64>>,
    index: u64,
}

impl LatticeBasis {
    /// Validates `vectors` as a basis of a finite-index sublattice of the
    /// kernel of `weight`.
    pub fn new(weight: WeightVector, vectors: Vec<LatticePoint>) -> Result<Self> {
        let n = weight.dim();
        if vectors.len() != n - 1 {
            return Err(Error::InvalidBasis(format!("expected {} vectors, got {}", n - 1, vectors.len())));
        }
        for v in &vectors {
            weight.check_dim(v.len())?;
            if weight.degree(v)? != 0 {
                return Err(Error::InvalidBasis(format!("{v} has nonzero weighted degree")));
            }
        }
        // n × (n−1) matrix whose columns are the basis vectors
        let m: Vec<Vec<i64>> = (0..n).map(|i| vectors.iter().map(|v| v[i]).collect()).collect();
        let smith = smith_normal_form(&m)?;
        if smith.diag.contains(&0) {
            return Err(Error::InvalidBasis("vectors are linearly dependent".into()));
        }
        // the last row of U annihilates H, so it is ±a since a is primitive
        let mut left = smith.left;
        let last = &mut left[n - 1];
        if last.iter().zip(weight.as_slice()).all(|(x, w)| -x == *w) {
            for x in last.iter_mut() {
                *x = -*x;
            }
        }
        if last.as_slice() != weight.as_slice() {
            return Err(Error::InvalidBasis("annihilator is not the weight vector".into()));
        }
        let mut moduli = Vec::new();
        let mut torsion_rows = Vec::new();
        let mut index: u64 = 1;
        for (i, &d) in smith.diag.iter().enumerate() {
            index = index.checked_mul(d as u64).ok_or(Error::Overflow("sublattice index"))?;
            if d > 1 {
                moduli.push(d);
                torsion_rows.push(left[i].clone());
            }
        }
        Ok(Self { weight, vectors, moduli, torsion_rows, index })
    }

    /// Basis of the whole kernel lattice `a^⊥ ∩ ℤⁿ`.
    pub fn kernel(weight: WeightVector) -> Result<Self> {
        let n = weight.dim();
        let column: Vec<Vec<i64>> = weight.as_slice().iter().map(|&w| vec![w]).collect();
        let smith = smith_normal_form(&column)?;
        // U·aᵀ = e₁, so rows 1.. of U span the kernel
        let mut vectors: Vec<LatticePoint> =
            smith.left[1..].iter().cloned().map(LatticePoint::from).collect();
        size_reduce(&mut vectors)?;
        debug_assert_eq!(vectors.len(), n - 1);
        Self::new(weight, vectors)
    }

    /// Recovers the weight vector from a basis alone: the primitive normal
    /// of the hyperplane spanned by the vectors, oriented positive.
    pub fn weight_from_vectors(vectors: &[LatticePoint]) -> Result<WeightVector> {
        let Some(first) = vectors.first() else {
            return Err(Error::InvalidBasis("empty basis".into()));
        };
        let n = first.len();
        if vectors.len() + 1 != n {
            return Err(Error::InvalidBasis(format!(
                "expected {} vectors in dimension {n}, got {}",
                n.saturating_sub(1),
                vectors.len()
            )));
        }
        if let Some(v) = vectors.iter().find(|v| v.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: v.len() });
        }
        let m: Vec<Vec<i64>> = (0..n).map(|i| vectors.iter().map(|v| v[i]).collect()).collect();
        let smith = smith_normal_form(&m)?;
        if smith.diag.contains(&0) {
            return Err(Error::InvalidBasis("vectors are linearly dependent".into()));
        }
        let mut normal = smith.left[n - 1].clone();
        if normal.iter().all(|&x| x <= 0) {
            normal.iter_mut().for_each(|x| *x = -*x);
        }
        if normal.iter().any(|&x| x <= 0) {
            return Err(Error::InvalidBasis("hyperplane normal is not a positive weight vector".into()));
        }
        WeightVector::new(normal)
    }

    pub fn weight(&self) -> &WeightVector {
        &self.weight
    }

    pub fn vectors(&self) -> &[LatticePoint] {
        &self.vectors
    }

    pub fn dim(&self) -> usize {
        self.weight.dim()
    }

    /// Index of `H` in the full kernel lattice.
    pub fn sublattice_index(&self) -> u64 {
        self.index
    }

    /// Nontrivial invariant factors of `ℤⁿ/H`'s torsion part.
    pub fn moduli(&self) -> &[i64] {
        &self.moduli
    }

    pub fn member(&self, v: &[i64]) -> Result<bool> {
        Ok(self.class_label(v)?.is_zero())
    }

    pub fn class_label(&self, p: &[i64]) -> Result<QuotientClass> {
        self.weight.check_dim(p.len())?;
        let degree = dot(self.weight.as_slice(), p)?;
        let torsion = self
            .torsion_rows
            .iter()
            .zip(&self.moduli)
            .map(|(row, &d)| Ok(dot(row, p)?.rem_euclid(d)))
            .collect::<Result<Vec<_>>>()?;
        Ok(QuotientClass { degree, torsion })
    }

    pub fn zero_class(&self) -> QuotientClass {
        QuotientClass { degree: 0, torsion: vec![0; self.moduli.len()] }
    }

    pub fn add_classes(&self, x: &QuotientClass, y: &QuotientClass) -> QuotientClass {
        QuotientClass {
            degree: x.degree + y.degree,
            torsion: self
                .moduli
                .iter()
                .enumerate()
                .map(|(i, &d)| (x.torsion[i] + y.torsion[i]).rem_euclid(d))
                .collect(),
        }
    }

    pub fn sub_classes(&self, x: &QuotientClass, y: &QuotientClass) -> QuotientClass {
        QuotientClass {
            degree: x.degree - y.degree,
            torsion: self
                .moduli
                .iter()
                .enumerate()
                .map(|(i, &d)| (x.torsion[i] - y.torsion[i]).rem_euclid(d))
                .collect(),
        }
    }

    /// Mixed-radix index of a torsion vector, in `0..sublattice_index()`.
    pub fn torsion_index(&self, torsion: &[i64]) -> usize {
        torsion.iter().zip(&self.moduli).fold(0usize, |acc, (&t, &d)| acc * d as usize + t as usize)
    }

    pub fn torsion_from_index(&self, mut idx: usize) -> Vec<i64> {
        let mut t = vec![0; self.moduli.len()];
        for (slot, &d) in t.iter_mut().zip(&self.moduli).rev() {
            *slot = (idx % d as usize) as i64;
            idx /= d as usize;
        }
        t
    }

    /// All classes of the given degree, ordered by torsion index.
    pub fn classes_of_degree(&self, degree: i64) -> impl Iterator<Item = QuotientClass> + '_ {
        (0..self.index as usize).map(move |i| QuotientClass { degree, torsion: self.torsion_from_index(i) })
    }
}

/// Free-function form of [`LatticeBasis::kernel`].
pub fn kernel_basis(a: &WeightVector) -> Result<LatticeBasis> {
    LatticeBasis::kernel(a.clone())
}

fn norm2(v: &[i64]) -> Result<i64> {
    dot(v, v)
}

/// Pairwise size reduction: subtract rounded multiples while the norm drops.
fn size_reduce(vs: &mut [LatticePoint]) -> Result<()> {
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..vs.len() {
            for j in 0..vs.len() {
                if i == j {
                    continue;
                }
                let nj = norm2(&vs[j])?;
                if nj == 0 {
                    continue;
                }
                let num = dot(&vs[i], &vs[j])?;
                let q = (2 * num as i128 + nj as i128).div_euclid(2 * nj as i128) as i64;
                if q == 0 {
                    continue;
                }
                let cand: Vec<i64> = vs[i]
                    .iter()
                    .zip(vs[j].iter())
                    .map(|(&a, &b)| {
                        q.checked_mul(b)
                            .and_then(|p| a.checked_sub(p))
                            .ok_or(Error::Overflow("basis reduction"))
                    })
                    .collect::<Result<_>>()?;
                if norm2(&cand)? < norm2(&vs[i])? {
                    vs[i] = LatticePoint::from(cand);
                    changed = true;
                }
            }
        }
    }
    Ok(())
}
