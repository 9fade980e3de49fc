//! Laws for relation moves, exhaustive on small algebras and sampled up to
//! eleven vertices.

use nakayama_core::moves::{insert_vertex, remove_vertex};
use nakayama_core::{coxeter, enumerate_algebras, Extension, Move, NakayamaAlgebra};
use proptest::prelude::*;

fn derived_moves(n: usize) -> Vec<Move> {
    let mut moves = vec![Move::StripLengthTwo];
    moves.extend((1..=n).map(Move::Left));
    moves.extend((1..=n).map(Move::Right));
    moves
}

fn check_derived_invariance(a: &NakayamaAlgebra) {
    let poly = coxeter(a).polynomial;
    for m in derived_moves(a.n()) {
        if let Ok(b) = m.apply(a) {
            assert_eq!(
                NakayamaAlgebra::from_relations(b.n(), b.relations().iter().map(|r| (r.start, r.end))),
                Ok(b.clone())
            );
            assert_eq!(coxeter(&b).polynomial, poly, "{m} on {a}");
        }
    }
}

fn check_insert_remove(a: &NakayamaAlgebra) {
    for i in 0..=a.n() {
        let b = insert_vertex(a, i, Extension::None).unwrap();
        assert_eq!(remove_vertex(&b, i + 1).unwrap(), *a, "ins:{i}:none on {a}");
    }
}

#[test]
fn exhaustive_up_to_eight_vertices() {
    for n in 1..=8 {
        for a in enumerate_algebras(n) {
            check_derived_invariance(&a);
            check_insert_remove(&a);
        }
    }
}

fn algebra(max_n: usize) -> impl Strategy<Value = NakayamaAlgebra> {
    (1..=max_n).prop_flat_map(|n| {
        // c_i in 2..=c_{i+1}+1, built from the right.
        proptest::collection::vec(0usize..6, n).prop_map(move |draws| {
            let mut c = vec![1usize; n];
            for i in (0..n.saturating_sub(1)).rev() {
                c[i] = 2 + draws[i] % c[i + 1];
            }
            let k = nakayama_core::KupischSeries::new(c).unwrap();
            NakayamaAlgebra::from_kupisch(&k)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn derived_moves_preserve_coxeter_polynomial(a in algebra(11)) {
        check_derived_invariance(&a);
    }

    #[test]
    fn insertion_then_removal_is_identity(a in algebra(11)) {
        check_insert_remove(&a);
    }

    #[test]
    fn every_move_output_is_valid(a in algebra(11), i in 0usize..12, which in 0usize..5) {
        let ext = match which {
            0 => Extension::None,
            1 => Extension::RetargetEnd,
            2 => Extension::RetargetStart,
            3 => Extension::RelationFrom(1 + i / 2),
            _ => Extension::RelationTo(i + 2),
        };
        for m in [Move::Insert(i, ext), Move::Remove(i), Move::Left(i), Move::Right(i)] {
            if let Ok(b) = m.apply(&a) {
                let rebuilt = NakayamaAlgebra::from_relations(
                    b.n(),
                    b.relations().iter().map(|r| (r.start, r.end)),
                );
                prop_assert_eq!(rebuilt, Ok(b));
            }
        }
    }
}
