//! Property tests for Markov bases, lattice balls, the modules `M^(k)` and
//! their posets, over seeded random weights and sublattices.

mod common;

use common::*;
use genfrob_core::counting::dominated_points;
use genfrob_core::ideal::{fiber_graph, ideal_equal, saturate, Binomial};
use genfrob_core::module::{Analysis, LaurentMonomial};
use genfrob_core::neighbourhood::distance;
use genfrob_core::poset::{finiteness_report, module_poset, structure_poset};
use genfrob_core::{LatticeBasis, LatticePoint};

const K_MAX: usize = 3;

/// Kernels and sublattices of small weight vectors, with their analyses.
fn samples(seed: u64, count: usize) -> Vec<Analysis> {
    let mut r = rng(seed);
    (0..count)
        .map(|i| {
            let w = random_weights(&mut r, 3, 2, 12);
            let b = if i % 2 == 0 {
                genfrob_core::kernel_basis(&w).unwrap()
            } else {
                random_sublattice(&mut r, &w)
            };
            Analysis::new(&b, K_MAX).unwrap()
        })
        .collect()
}

fn positive_part(v: &LatticePoint) -> LatticePoint {
    LatticePoint::from(v.iter().map(|&x| x.max(0)).collect::<Vec<_>>())
}

#[test]
fn markov_bases_are_coprime_saturated_and_minimal() {
    for an in samples(0x3A2, 40) {
        let mb = an.markov();
        let basis = an.basis();
        assert!(mb.elements.iter().all(Binomial::is_coprime));
        for v in mb.vectors() {
            assert!(basis.member(&v).unwrap(), "{v} not in the lattice");
        }
        let resat = saturate(&mb.elements, &mb.order_used).unwrap();
        assert!(ideal_equal(&resat, &mb.elements).unwrap());
        for i in 0..mb.elements.len() {
            let rest: Vec<Binomial> =
                mb.elements.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, b)| b.clone()).collect();
            assert!(!ideal_equal(&rest, &mb.elements).unwrap(), "{} is redundant", mb.elements[i]);
        }
    }
}

#[test]
fn markov_fibers_are_connected() {
    for an in samples(0x3A3, 40) {
        let basis = an.basis();
        for v in an.markov().vectors() {
            let p = positive_part(&v);
            let c = basis.class_label(&p).unwrap();
            let g = fiber_graph(basis, an.markov(), &c).unwrap();
            let i = g.position(&p).unwrap();
            assert_eq!(g.component_size(i), g.points.len());
            assert_eq!(dominated_points(basis, &p).unwrap().len(), g.points.len());
        }
    }
}

#[test]
fn balls_are_nested_and_bounded() {
    for an in samples(0x3A4, 30) {
        let moves = an.moves().len();
        let mut prev = an.ball(0);
        assert_eq!(prev.points, vec![LatticePoint::zero(an.basis().dim())]);
        for r in 1..=3 {
            let b = an.ball(r);
            for p in &prev.points {
                assert_eq!(b.distance[p], prev.distance[p]);
            }
            let bound: usize = (0..=r as u32).map(|i| moves.pow(i)).sum();
            assert!(b.len() <= bound);
            assert!(!b.sphere(r).is_empty());
            for p in &b.points {
                assert!(an.basis().member(p).unwrap());
            }
            prev = b;
        }
    }
}

#[test]
fn distance_agrees_with_balls_and_translations() {
    let mut r = rng(0x3A5);
    for an in samples(0x3A6, 30) {
        let basis = an.basis();
        let ball = an.ball(2);
        let zero = vec![0; basis.dim()];
        for p in &ball.points {
            assert_eq!(distance(basis, an.moves(), &zero, p, 4).unwrap(), Some(ball.distance[p]));
        }
        for _ in 0..5 {
            let u = random_lattice_point(&mut r, basis, 2);
            let v = random_lattice_point(&mut r, basis, 2);
            let l = random_lattice_point(&mut r, basis, 2);
            let d = distance(basis, an.moves(), &u, &v, 6).unwrap();
            assert_eq!(d, distance(basis, an.moves(), &v, &u, 6).unwrap());
            assert_eq!(d, distance(basis, an.moves(), &u.add(&l), &v.add(&l), 6).unwrap());
        }
    }
}

#[test]
fn generators_sit_in_the_degree_window() {
    for an in samples(0x3A7, 40) {
        let weight = an.basis().weight();
        for k in 1..=K_MAX {
            let gens = an.minimal_generators(k).unwrap();
            let m_k = an.m_value(k).unwrap();
            let top = an.window_top(k).unwrap();
            let degrees: Vec<i64> =
                gens.generators.iter().map(|g| weight.degree(g.exponent()).unwrap()).collect();
            assert_eq!(degrees[0], m_k);
            assert!(degrees.iter().all(|d| (m_k..=top).contains(d)));
            for s in &gens.supports {
                assert!(s.len() >= k);
            }
        }
    }
}

#[test]
fn generators_are_pairwise_non_dividing() {
    for an in samples(0x3A8, 40) {
        for k in 1..=K_MAX {
            let gens = &an.minimal_generators(k).unwrap().generators;
            for (i, g) in gens.iter().enumerate() {
                for (j, h) in gens.iter().enumerate() {
                    if i != j {
                        assert!(!an.divides_mod_l(g, h).unwrap(), "{g} divides {h} at k={k}");
                    }
                }
            }
        }
    }
}

#[test]
fn coverage_matches_counts() {
    for an in samples(0x3A9, 40) {
        for k in 1..=K_MAX {
            let m_k = an.m_value(k).unwrap();
            for d in m_k..=an.window_top(k).unwrap() {
                for c in an.basis().classes_of_degree(d) {
                    let count = an.table().get(&c).unwrap();
                    assert_eq!(an.covered(k, &c).unwrap(), count >= k as u64, "class {c} at k={k}");
                }
            }
            assert_eq!(an.frobenius_via_module(k).unwrap(), an.frobenius(k).unwrap());
        }
    }
}

#[test]
fn canonical_representatives_are_stable() {
    for an in samples(0x3AA, 30) {
        for k in 1..=K_MAX {
            for g in &an.minimal_generators(k).unwrap().generators {
                assert!(g.dominates_origin());
                assert_eq!(&an.canonical_rep(g).unwrap(), g);
                let l = an.ball(1).points.last().unwrap().clone();
                let moved = g.translate(l.coords());
                assert_eq!(an.class_of(&moved).unwrap(), an.class_of(g).unwrap());
                assert_eq!(&an.canonical_rep(&moved).unwrap(), g);
            }
        }
    }
}

#[test]
fn every_generator_classifies_and_verifies() {
    for an in samples(0x3AB, 40) {
        for k in 2..=K_MAX {
            for g in &an.minimal_generators(k).unwrap().generators {
                let c = an.classify(g, k).unwrap();
                assert!(c.verify(), "{g} at k={k}: {:?}", c.case);
                assert_eq!(c.support, an.support(g).unwrap());
            }
        }
    }
}

#[test]
fn modified_generators_stay_in_the_ball() {
    for an in samples(0x3AC, 30) {
        let n = an.basis().dim();
        for k in 1..=K_MAX {
            let gens = an.modified_min_gens(k).unwrap();
            assert!(gens.contains(&LaurentMonomial::unit(n)));
            let ball = an.ball(k);
            for g in gens.iter().filter(|g| !g.is_unit()) {
                assert!(!g.dominates_origin());
                assert!(an.support(g).unwrap().iter().all(|p| ball.contains(p)));
            }
        }
    }
}

#[test]
fn structure_poset_shape() {
    for an in samples(0x3AD, 40) {
        let sp = structure_poset(&an);
        let f1 = an.f1();
        assert_eq!(sp.len() as i64, an.basis().sublattice_index() as i64 * (f1 + 1));
        for i in 0..sp.len() {
            assert!(sp.leq_at(i, i));
            for j in 0..sp.len() {
                if i != j && sp.elements[i].degree == sp.elements[j].degree {
                    assert!(!sp.leq_at(i, j));
                }
                if i != j && sp.leq_at(i, j) {
                    assert!(!sp.leq_at(j, i));
                    assert!(sp.elements[i].degree < sp.elements[j].degree);
                }
            }
        }
        for &(i, j) in &sp.hasse {
            assert!(sp.leq_at(i, j));
        }
    }
}

#[test]
fn module_posets_track_generator_orbits() {
    for an in samples(0x3AE, 40) {
        let sp = structure_poset(&an);
        if sp.is_empty() {
            continue;
        }
        let width = sp.max_antichain_size();
        for k in 1..=K_MAX {
            let mp = module_poset(&an, &sp, k).unwrap();
            let gens = an.minimal_generators(k).unwrap();
            assert_eq!(mp.minimal.len(), gens.generators.len(), "k={k}");
            assert!(mp.minimal.len() <= width);
            let f_k = an.frobenius(k).unwrap();
            if mp.is_full(&sp) {
                assert_eq!(f_k, mp.m_k - 1);
            } else {
                assert!(f_k >= mp.m_k);
            }
        }
        let report = finiteness_report(&an, K_MAX).unwrap();
        assert!(report.full_implies_tight);
        for e in &report.entries {
            assert_eq!(e.b, e.f_k - e.m_k);
            assert!(report.observed_b_set.contains(&e.b));
        }
    }
}

#[test]
fn sublattice_samples_are_proper() {
    let mut r = rng(0x3AF);
    let mut proper = 0;
    for _ in 0..40 {
        let w = random_weights(&mut r, 3, 2, 12);
        let b: LatticeBasis = random_sublattice(&mut r, &w);
        if b.sublattice_index() > 1 {
            proper += 1;
        }
    }
    assert!(proper > 5, "only {proper} proper sublattices");
}
