//! Double-mutation chains whose every intermediate algebra is known.

mod common;

#[test]
fn chains_reproduce_with_constant_coxeter_polynomial() {
    for c in common::chains() {
        assert_eq!(common::chain_mismatch(&c), None, "from {}", c.start);
    }
}
