mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use artinsum::decompose::{certify_indecomposable, check_split, h2_bound_check, split_witness, structure_decompose, Status};
use artinsum::graded::{associated_graded, classify, iarrobino, is_gls};
use artinsum::grobner::contract;
use artinsum::quotient::build_algebra;
use artinsum::sums::{connected_sum, fibre_product, ConnectedSumSpec};

use common::*;

#[test]
fn fibre_products_are_additive() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (r, s) in gorenstein_pairs(&mut rng, 100) {
        let p = fibre_product(&r, &s).unwrap().algebra;
        assert_eq!(p.length() + 1, r.length() + s.length());
        assert_eq!(p.embedding_dimension(), r.embedding_dimension() + s.embedding_dimension());
        assert_eq!(p.socle_type(), r.socle_type() + s.socle_type());

        // each factor is recovered as a contraction
        let m = r.nvars();
        let y: Vec<usize> = (0..m).collect();
        let z: Vec<usize> = (m..p.nvars()).collect();
        assert_eq!(build_algebra(&contract(p.ideal(), &y).unwrap()).unwrap(), r);
        assert_eq!(build_algebra(&contract(p.ideal(), &z).unwrap()).unwrap(), s);
    }
}

#[test]
fn connected_sums_are_additive_and_split_back() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for (r, s) in gorenstein_pairs(&mut rng, 100) {
        let u = random_scalar(&mut rng, true);
        let q = connected_sum(&ConnectedSumSpec::new(r.clone(), s.clone()).unwrap().with_unit(u.clone())).unwrap();
        assert!(!q.trivial);
        let q = q.algebra;
        assert!(q.is_gorenstein());
        assert_eq!(q.length() + 2, r.length() + s.length());
        assert_eq!(q.embedding_dimension(), r.embedding_dimension() + s.embedding_dimension());
        assert!(h2_bound_check(&r, &s, &q));
        assert!(certify_indecomposable(&q).is_empty(), "certificate fired on {:?}", q.reduced_basis());

        let m = r.nvars();
        let y: Vec<usize> = (0..m).collect();
        let z: Vec<usize> = (m..q.nvars()).collect();
        let c = check_split(&q, &y, &z).unwrap();
        assert!(c.ok, "{:?}", c.reasons);
        assert_eq!(c.r, r);
        assert_eq!(c.s, s);
        assert_eq!(c.unit, Some(u));
    }
}

#[test]
fn structure_theorem_on_constructed_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for inst in structure_instances(&mut rng, 25) {
        let q = &inst.q;
        assert!(h2_bound_check(&inst.r, &inst.s, q));
        assert!(certify_indecomposable(q).is_empty(), "{}", inst.label);
        let rep = structure_decompose(q).unwrap();
        assert_eq!(rep.status, Status::Decomposed, "{}: {:?} {:?}", inst.label, rep.identities, rep.reasons);
        assert!(rep.all_identities_hold());
        let (r, s) = rep.components.unwrap();
        assert_eq!(s.loewy_length(), 2, "{}", inst.label);
        assert_eq!(r.length() + s.length(), q.length() + 2);
        assert_eq!(r.hilbert_function(), inst.r.hilbert_function(), "{}", inst.label);
        assert_eq!(s.embedding_dimension(), inst.s.embedding_dimension());
    }
}

#[test]
fn square_annihilator_structure() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for inst in structure_instances(&mut rng, 25) {
        let q = &inst.q;
        let s = q.loewy_length();
        let g = associated_graded(q).unwrap();
        assert!(is_gls(&g).unwrap().gls);
        let n = g.algebra().socle_type() - 1;
        assert!(n >= 1);
        let w = q.colon(&q.power(2));
        let top = q.power(s - 1);
        assert_eq!(w.intersect(&q.power(2)), top, "{}", inst.label);
        assert_eq!(w.dim() - top.dim(), n);
        let soc = q.socle();
        let witness = split_witness(q).unwrap().unwrap();
        for z in &witness.z_elements {
            assert_eq!(q.mul_by_max(&q.span([z.clone()])), soc);
        }
        // a random element of W outside m^(s-1)
        let mut v = q.zero();
        for row in w.rows() {
            v = q.add(&v, &q.scale(&random_scalar(&mut rng, false), row));
        }
        if !top.contains(&v) {
            assert_eq!(q.mul_by_max(&q.span([v])), soc);
        }
    }
}

#[test]
fn iarrobino_quotients() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for inst in structure_instances(&mut rng, 12) {
        let h = inst.q.hilbert_function();
        let c = classify(&inst.q).unwrap();
        let q0 = iarrobino(&inst.q).unwrap().q0;
        assert!(q0.algebra().is_gorenstein());
        if c.stretched {
            assert_eq!(q0.hilbert_function(), vec![1; h.len()], "{}", inst.label);
        }
        if c.short {
            assert_eq!(q0.hilbert_function(), [1, h[2], h[2], 1], "{}", inst.label);
        }
        assert!(c.stretched || c.short);
    }
}
