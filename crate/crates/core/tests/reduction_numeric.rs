use plog_core::numeval::{verify_identity, VerifyOptions};
use plog_core::reduction::*;
use plog_core::symbols::{parse_symbol, Layer};

fn opts(trials: usize, tol: f64) -> VerifyOptions {
    VerifyOptions {
        trials,
        tol,
        seed: 5,
        ..Default::default()
    }
}

#[test]
fn lowered_swap_is_exact() {
    let s = parse_symbol("H(a0 | a1, a2, a3 // x | a4)").unwrap();
    for i in 1..=3 {
        let id = lowered_swap_identity(&s, i, Layer::Exact).unwrap();
        let r = verify_identity(&id, &opts(5, 1e-6)).unwrap();
        assert!(r.pass, "i={i} max {}", r.max_residual);
    }
}

#[test]
fn transposition_is_exact() {
    let s = parse_symbol("H(a0 | a1, a2, a3 // x | a4)").unwrap();
    let id = transposition(&s, 1, 2, Layer::Exact).unwrap();
    let r = verify_identity(&id, &opts(5, 1e-6)).unwrap();
    assert!(r.pass, "max {}", r.max_residual);
}

#[test]
fn reduction_three_exact() {
    let (a0, w, e, x) = generic_points(3);
    let out = reduce_symbol(&a0, &w, &e, &x, Layer::Exact).unwrap();
    let r = verify_identity(&out.identity(), &opts(5, 1e-3)).unwrap();
    assert!(r.pass, "max {}", r.max_residual);
}
