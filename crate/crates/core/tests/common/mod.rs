#![allow(dead_code)]

use genfrob_core::module::{Analysis, LaurentMonomial};
use genfrob_core::{kernel_basis, LatticeBasis, LatticePoint, QuotientClass, WeightVector};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn weights(a: &[i64]) -> WeightVector {
    WeightVector::new(a.to_vec()).unwrap()
}

pub fn kernel(a: &[i64]) -> LatticeBasis {
    kernel_basis(&weights(a)).unwrap()
}

pub fn analysis(a: &[i64], k_max: usize) -> Analysis {
    Analysis::new(&kernel(a), k_max).unwrap()
}

pub fn mono(s: &str, n: usize) -> LaurentMonomial {
    LaurentMonomial::parse(s, n).unwrap()
}

pub fn point(v: &[i64]) -> LatticePoint {
    LatticePoint::from(v.to_vec())
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// `n` weights in `lo..=hi` with gcd 1.
pub fn random_weights(rng: &mut ChaCha8Rng, n: usize, lo: i64, hi: i64) -> WeightVector {
    loop {
        let a: Vec<i64> = (0..n).map(|_| rng.gen_range(lo..=hi)).collect();
        if a.iter().fold(0, |g, &x| gcd(g, x)) == 1 {
            return WeightVector::new(a).unwrap();
        }
    }
}

/// A finite-index sublattice of the kernel: one basis vector scaled by 1..=3
/// and the basis mixed by a random shear.
pub fn random_sublattice(rng: &mut ChaCha8Rng, w: &WeightVector) -> LatticeBasis {
    let full = kernel_basis(w).unwrap();
    let mut vs: Vec<Vec<i64>> = full.vectors().iter().map(|v| v.coords().to_vec()).collect();
    let i = rng.gen_range(0..vs.len());
    let f = rng.gen_range(1..=3);
    vs[i].iter_mut().for_each(|x| *x *= f);
    if vs.len() > 1 {
        let j = (i + 1) % vs.len();
        let c = rng.gen_range(-1..=1);
        let src = vs[i].clone();
        vs[j].iter_mut().zip(&src).for_each(|(x, s)| *x += c * s);
    }
    LatticeBasis::new(w.clone(), vs.into_iter().map(LatticePoint::from).collect()).unwrap()
}

/// A random integer combination of the basis vectors.
pub fn random_lattice_point(rng: &mut ChaCha8Rng, b: &LatticeBasis, r: i64) -> LatticePoint {
    let mut p = LatticePoint::zero(b.dim());
    for v in b.vectors() {
        let c = rng.gen_range(-r..=r);
        p = p.add(&LatticePoint::from(v.iter().map(|x| x * c).collect::<Vec<_>>()));
    }
    p
}

pub fn classes(an: &Analysis, ms: &[LaurentMonomial]) -> Vec<QuotientClass> {
    let mut out: Vec<QuotientClass> = ms.iter().map(|m| an.class_of(m).unwrap()).collect();
    out.sort();
    out
}

/// Same set of lattice orbits (orbits are classes of the quotient).
pub fn same_orbits(an: &Analysis, got: &[LaurentMonomial], want: &[&str]) -> bool {
    let n = an.basis().dim();
    let want: Vec<LaurentMonomial> = want.iter().map(|s| mono(s, n)).collect();
    got.len() == want.len() && classes(an, got) == classes(an, &want)
}
