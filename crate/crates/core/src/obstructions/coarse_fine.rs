//! Coarse and fine sequences.
//!
//! Both sequences start at the end of a long relation and walk leftwards
//! through the relations, the coarse one as fast as possible and the fine one
//! as slowly as possible. When the fine sequence is at least two longer and the
//! strands intertwine, their merged complex is indecomposable and may sit on a
//! path `P_1[i] -> C -> P_1` with `i >= 1`. The path itself is confirmed by
//! computing both Hom spaces; the sequence lengths alone do not guarantee it.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::NakayamaAlgebra;
use crate::complex::{EngineError, PerfectComplex};
use crate::engine::{hom_dim, two_strand_indecomposable};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoarseFineResult {
    pub c: Vec<usize>,
    pub f: Vec<usize>,
    pub l_c: usize,
    pub l_f: usize,
    pub fires: bool,
    pub intertwine_ok: bool,
    /// Shift of the path through the merged complex, when one was found.
    pub path_shift: Option<i32>,
    /// Why the test did not fire, if it did not.
    pub diagnostic: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CoarseFine {
    /// No relation of length at least three.
    Inapplicable,
    Computed(CoarseFineResult),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RadicalLengthError {
    #[error("radical power {0} is below three")]
    PowerBelowThree(usize),
    #[error("need more than {m} vertices, got {n}")]
    TooFewVertices { n: usize, m: usize },
}

/// The relation that supplies the shared head of both sequences.
fn head_relation(a: &NakayamaAlgebra) -> Option<crate::algebra::Relation> {
    a.relations().iter().rev().copied().find(|r| {
        if r.len() < 3 {
            return false;
        }
        let t = r.end;
        let excluded = r.len() == 3
            && a.relation_ending_at(t - 1).is_some()
            && a.relation_ending_at(t - 2).is_none();
        !excluded
    })
}

pub fn coarse_fine_sequences(a: &NakayamaAlgebra) -> CoarseFine {
    let Some(head) = head_relation(a) else {
        return CoarseFine::Inapplicable;
    };
    let c1 = head.end;
    let c2 = (head.start + 2..c1)
        .rev()
        .find(|&x| a.relation_ending_at(x).is_none())
        .unwrap_or(c1 - 1);

    let mut c = vec![c1, c2];
    while let Some(r) = a.last_relation_ending_by(*c.last().unwrap()) {
        let next = r.start + 1;
        if next <= 1 {
            break;
        }
        c.push(next);
    }

    let mut f = vec![c1, c2 - 1];
    loop {
        let k = f.len();
        let (before, last) = (f[k - 2], f[k - 1]);
        // A zero composite into the next term needs a relation inside
        // [next, before]; without one the sequence cannot continue.
        let Some(zero) = a.last_relation_ending_by(before) else {
            break;
        };
        let mut next = zero.start;
        if let Some(r) = a.last_relation_ending_by(last) {
            next = next.min(r.end - 1);
        }
        if next <= 1 {
            break;
        }
        f.push(next);
    }

    let (l_c, l_f) = (c.len(), f.len());
    let mut coarse = c.clone();
    coarse.push(1);
    let (intertwine_ok, strand_issue) = match two_strand_indecomposable(a, &coarse, &f) {
        Ok(ok) => (ok, None),
        Err(e) => (false, Some(e.to_string())),
    };
    let long_enough = l_f >= l_c + 2;
    let (path_shift, path_issue) = if long_enough && intertwine_ok {
        match forbidden_path_shift(a, &coarse, &f) {
            Ok(s) => (s, None),
            Err(e) => (None, Some(e.to_string())),
        }
    } else {
        (None, None)
    };
    let fires = long_enough && intertwine_ok && path_shift.is_some();
    let diagnostic = if fires {
        None
    } else if !long_enough {
        Some(format!("l_f = {l_f} < l_c + 2 = {}", l_c + 2))
    } else if !intertwine_ok {
        Some(strand_issue.unwrap_or_else(|| "strands do not intertwine".into()))
    } else {
        Some(path_issue.unwrap_or_else(|| "no nonzero map from the merged complex to a shift of P1".into()))
    };
    CoarseFine::Computed(CoarseFineResult {
        c,
        f,
        l_c,
        l_f,
        fires,
        intertwine_ok,
        path_shift,
        diagnostic,
    })
}

/// The two strands glued along their shared head, which sits in degree 0.
/// Every nonzero entry is the canonical map.
pub fn merged_complex(
    a: &NakayamaAlgebra,
    coarse: &[usize],
    fine: &[usize],
) -> Result<PerfectComplex, EngineError> {
    let len = coarse.len().max(fine.len());
    let strands = [coarse, fine];
    // Position of each strand's summand inside every degree.
    let slots: Vec<Vec<Option<usize>>> = (0..len)
        .map(|k| {
            let mut next = 0;
            strands
                .iter()
                .enumerate()
                .map(|(s, strand)| {
                    let present = k < strand.len() && (k > 0 || s == 0);
                    present.then(|| {
                        next += 1;
                        next - 1
                    })
                })
                .collect()
        })
        .collect();
    let terms: Vec<Vec<usize>> = (0..len)
        .map(|k| {
            strands
                .iter()
                .zip(&slots[k])
                .filter_map(|(strand, slot)| slot.map(|_| strand[k]))
                .collect()
        })
        .collect();
    let diffs = (0..len - 1)
        .map(|k| {
            let mut m = Matrix::zeros(terms[k + 1].len(), terms[k].len());
            for s in 0..2 {
                let source = if k == 0 { slots[0][0] } else { slots[k][s] };
                if let (Some(i), Some(j)) = (slots[k + 1][s], source) {
                    m.set(i, j, Scalar::one());
                }
            }
            m
        })
        .collect();
    PerfectComplex::new(Arc::new(a.clone()), 0, terms, diffs)
}

/// Smallest `i >= 1` with nonzero maps `P_1[i] -> C -> P_1` (up to a common
/// shift), where `C` is the merged complex and `P_1` enters as the last term
/// of the coarse strand.
pub fn forbidden_path_shift(
    a: &NakayamaAlgebra,
    coarse: &[usize],
    fine: &[usize],
) -> Result<Option<i32>, EngineError> {
    if coarse.last() != Some(&1) {
        return Err(EngineError::InvalidStrand("coarse strand must end at P1".into()));
    }
    let cx = merged_complex(a, coarse, fine)?;
    let arc = cx.algebra_arc().clone();
    let p = coarse.len() as i32 - 1;
    if hom_dim(&PerfectComplex::stalk(arc.clone(), 1, p)?, &cx) == 0 {
        return Ok(None);
    }
    for q in p + 1..=cx.hi() {
        if hom_dim(&cx, &PerfectComplex::stalk(arc.clone(), 1, q)?) > 0 {
            return Ok(Some(q - p));
        }
    }
    Ok(None)
}

/// Terms of the merged complex: the shared head, then one pair per position.
pub fn merged_terms(coarse: &[usize], fine: &[usize]) -> Vec<Vec<usize>> {
    let len = coarse.len().max(fine.len());
    (0..len)
        .map(|k| {
            let mut t: Vec<usize> = [coarse.get(k), fine.get(k)]
                .into_iter()
                .flatten()
                .copied()
                .collect();
            if k == 0 {
                t.truncate(1);
            }
            t.sort_unstable();
            t
        })
        .collect()
}

/// Closed-form sequence lengths for `kA_n / rad^m`.
pub fn coarse_fine_radical_lengths(n: usize, m: usize) -> Result<(usize, usize), RadicalLengthError> {
    if m < 3 {
        return Err(RadicalLengthError::PowerBelowThree(m));
    }
    if n <= m {
        return Err(RadicalLengthError::TooFewVertices { n, m });
    }
    let l_c = (n - 3) / (m - 1) + 2;
    let l_f = (2 * ((n - 4) / m) + 2).max(2 * ((n - 2) / m) + 1);
    Ok((l_c, l_f))
}
