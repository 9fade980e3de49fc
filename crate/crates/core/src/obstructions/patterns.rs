//! Local relation patterns that rule out piecewise heredity.

use crate::algebra::{NakayamaAlgebra, Relation};
use crate::obstructions::certificate::Evidence;

/// Arrows shared by the paths of `alpha` and `beta` (negative if disjoint).
fn overlap(alpha: &Relation, beta: &Relation) -> isize {
    alpha.end as isize - beta.start as isize
}

/// Two relations overlapping by at least six arrows, offset by at least three
/// at both ends, with no relation from `s_β - 2` or `s_β - 1` to `t_α + 1` or
/// `t_α + 2`.
pub fn overlap_six_holds(a: &NakayamaAlgebra, alpha: &Relation, beta: &Relation) -> bool {
    alpha.start < beta.start
        && overlap(alpha, beta) >= 6
        && beta.start - alpha.start >= 3
        && beta.end >= alpha.end + 3
        && !a.relations().iter().any(|r| {
            (beta.start.saturating_sub(2)..beta.start).contains(&r.start)
                && (alpha.end + 1..=alpha.end + 2).contains(&r.end)
        })
}

pub fn pattern_overlap_six(a: &NakayamaAlgebra) -> Option<Evidence> {
    let rels = a.relations();
    for (k, alpha) in rels.iter().enumerate() {
        for beta in &rels[k + 1..] {
            if overlap_six_holds(a, alpha, beta) {
                return Some(Evidence::PatternOverlapSix {
                    alpha: *alpha,
                    beta: *beta,
                });
            }
        }
    }
    None
}

fn sandwich_core(a: &NakayamaAlgebra, alpha: &Relation, beta: &Relation) -> bool {
    let n = a.n();
    let left_clear = alpha.start == 1
        || !a
            .relations()
            .iter()
            .any(|r| r.start == alpha.start - 1 && r.end <= beta.start + 1);
    let right_clear = beta.end == n
        || !a
            .relations()
            .iter()
            .any(|r| r.end == beta.end + 1 && r.start + 1 >= alpha.end);
    n >= 9 && alpha.start < beta.start && overlap(alpha, beta) >= 2 && left_clear && right_clear
}

/// Overlapping pair `alpha`, `beta` with a relation of length at least three
/// on each side.
pub fn sandwich_holds(
    a: &NakayamaAlgebra,
    alpha: &Relation,
    beta: &Relation,
    left: &Relation,
    right: &Relation,
) -> bool {
    sandwich_core(a, alpha, beta)
        && left.len() >= 3
        && left.end <= beta.start
        && right.len() >= 3
        && right.start >= alpha.end
}

pub fn pattern_sandwich(a: &NakayamaAlgebra) -> Option<Evidence> {
    if a.n() < 9 {
        return None;
    }
    let rels = a.relations();
    for (k, alpha) in rels.iter().enumerate() {
        for beta in &rels[k + 1..] {
            if !sandwich_core(a, alpha, beta) {
                continue;
            }
            let left = rels.iter().find(|r| r.len() >= 3 && r.end <= beta.start);
            let right = rels.iter().find(|r| r.len() >= 3 && r.start >= alpha.end);
            if let (Some(left), Some(right)) = (left, right) {
                return Some(Evidence::PatternSandwich {
                    alpha: *alpha,
                    beta: *beta,
                    left: *left,
                    right: *right,
                });
            }
        }
    }
    None
}

/// A pair overlapping by at least two arrows, every left relation arrow-disjoint
/// from `alpha` and every right relation arrow-disjoint from `beta`.
pub fn three_blocks_holds(
    left: &[Relation],
    alpha: &Relation,
    beta: &Relation,
    right: &[Relation],
) -> bool {
    !left.is_empty()
        && !right.is_empty()
        && alpha.start < beta.start
        && overlap(alpha, beta) >= 2
        && left.iter().all(|r| r.end <= alpha.start)
        && right.iter().all(|r| r.start >= beta.end)
}

pub fn pattern_three_blocks(a: &NakayamaAlgebra) -> Option<Evidence> {
    let rels = a.relations();
    for (k, alpha) in rels.iter().enumerate() {
        for beta in &rels[k + 1..] {
            let left = rels.iter().find(|r| r.end <= alpha.start);
            let right = rels.iter().find(|r| r.start >= beta.end);
            if let (Some(l), Some(r)) = (left, right) {
                if three_blocks_holds(&[*l], alpha, beta, &[*r]) {
                    return Some(Evidence::ThreeBlocks {
                        left: vec![*l],
                        alpha: *alpha,
                        beta: *beta,
                        right: vec![*r],
                    });
                }
            }
        }
    }
    None
}
