//! Coassociativity and counit laws of the copy maps, checked on random
//! vectors. The cofree-inspired copy is not counital; its residuals are
//! computed and compared with the closed forms instead.

mod common;

use bangl_core::tensor::{copy_delta, counit_e, fock_build, CopyMode, Tensor};
use common::*;
use rand::Rng;

fn assert_comonoid(v: &Tensor, mode: CopyMode) {
    let (l, r) = both_sides(v, mode);
    assert!(
        l.max_abs_diff(&r) <= 1e-9,
        "coassociativity fails under {mode}"
    );
    let (l, r) = counit_sides(v, mode);
    assert!(l.max_abs_diff(v) <= 1e-9, "left counit fails under {mode}");
    assert!(r.max_abs_diff(v) <= 1e-9, "right counit fails under {mode}");
}

#[test]
fn cogebra_is_a_comonoid() {
    let mut r = rng(31);
    for _ in 0..100 {
        let d = r.gen_range(1..=8);
        assert_comonoid(&random_tensor(&mut r, vec![d]), CopyMode::Cogebra);
    }
}

#[test]
fn fock_grouplike_is_a_comonoid() {
    let mut r = rng(32);
    for _ in 0..100 {
        let f = fock_build(r.gen_range(0..=5), 12).unwrap();
        assert_comonoid(
            &random_tensor(&mut r, vec![f.dim()]),
            CopyMode::FockGrouplike,
        );
    }
}

#[test]
fn cofree_counit_residual_is_e_of_v_times_k_plus_nk_minus_one_v() {
    let mut r = rng(33);
    for _ in 0..100 {
        let n = r.gen_range(1..=8);
        let k: f64 = r.gen_range(-2.0..2.0);
        let mode = CopyMode::cofree(k);
        let v = random_tensor(&mut r, vec![n]);
        let ev = counit_e(&v, mode);
        let expected = Tensor::from_fn(vec![n], |x| ev * k + (n as f64 * k - 1.0) * v.data()[x[0]]);
        let (l, rt) = counit_sides(&v, mode);
        assert!(l.add(&v.scale(-1.0)).max_abs_diff(&expected) <= 1e-9);
        assert!(rt.add(&v.scale(-1.0)).max_abs_diff(&expected) <= 1e-9);
    }
    // and the residual really is nonzero for k = 1
    let v = Tensor::vector(vec![1.0, 2.0]);
    let (l, _) = counit_sides(&v, CopyMode::cofree(1.0));
    assert!(l.max_abs_diff(&v) > 1.0);
}

#[test]
fn cofree_coassociativity_defect_is_k_squared_times_vc_minus_va() {
    let mut r = rng(34);
    for _ in 0..100 {
        let n = r.gen_range(1..=8);
        let k: f64 = r.gen_range(-2.0..2.0);
        let v = random_tensor(&mut r, vec![n]);
        let (l, rt) = both_sides(&v, CopyMode::cofree(k));
        let expected =
            Tensor::from_fn(vec![n, n, n], |x| k * k * (v.data()[x[2]] - v.data()[x[0]]));
        assert!(l.add(&rt.scale(-1.0)).max_abs_diff(&expected) <= 1e-9);
    }
}

#[test]
fn full_copy_is_coassociative_but_not_linear() {
    let mut r = rng(35);
    for _ in 0..20 {
        let n = r.gen_range(1..=6);
        let v = random_tensor(&mut r, vec![n]);
        let w = random_tensor(&mut r, vec![n]);
        let dv = copy_delta(&v, CopyMode::Full);
        // v⊗v⊗v either way round
        let t = Tensor::from_fn(vec![n, n, n], |x| dv.get(&[x[0], x[1]]) * v.data()[x[2]]);
        let u = Tensor::from_fn(vec![n, n, n], |x| v.data()[x[0]] * dv.get(&[x[1], x[2]]));
        assert!(t.max_abs_diff(&u) <= 1e-12);
        let sum = copy_delta(&v.add(&w), CopyMode::Full);
        let parts = copy_delta(&v, CopyMode::Full).add(&copy_delta(&w, CopyMode::Full));
        assert!(sum.max_abs_diff(&parts) > 1e-6);
    }
}
