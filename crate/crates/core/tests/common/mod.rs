//! Reference data shared by the integration tests.

#![allow(dead_code)]

use nakayama_core::obstructions::tau_orbit::tau_orbit;
use nakayama_core::{apply_chain, coxeter, parse_chain, NakayamaAlgebra, PerfectComplex};

pub fn alg(n: usize, rels: &[(usize, usize)]) -> NakayamaAlgebra {
    NakayamaAlgebra::from_relations(n, rels.iter().copied()).unwrap()
}

pub fn a9() -> NakayamaAlgebra {
    alg(9, &[(1, 4), (3, 6), (4, 7), (6, 9)])
}

pub fn a10_single() -> NakayamaAlgebra {
    alg(10, &[(1, 5), (2, 7), (4, 9), (6, 10)])
}

pub fn a10_double() -> [NakayamaAlgebra; 2] {
    [
        alg(10, &[(1, 4), (2, 6), (3, 8), (5, 9), (7, 10)]),
        alg(10, &[(1, 6), (3, 8), (5, 10)]),
    ]
}

pub fn simpleminded() -> NakayamaAlgebra {
    alg(10, &[(1, 4), (2, 5), (4, 7), (5, 8), (7, 10)])
}

/// One τ-iterate: `(degree, summands)` for every nonzero degree.
pub type Row = &'static [(i32, &'static [usize])];

pub struct TauTable {
    pub algebra: NakayamaAlgebra,
    pub start: usize,
    /// Rows for `τ^1, τ^2, ...`; the stalk itself is implicit.
    pub rows: Vec<Row>,
}

pub fn tau_tables() -> Vec<TauTable> {
    vec![
        TauTable {
            algebra: NakayamaAlgebra::rad_power(11, 5).unwrap(),
            start: 1,
            rows: vec![
                &[(-3, &[11]), (-2, &[7]), (-1, &[6]), (0, &[2]), (1, &[1])],
                &[(-2, &[8])],
                &[(-1, &[4])],
                &[(-4, &[11]), (-3, &[10]), (-2, &[6]), (-1, &[5]), (0, &[1])],
                &[(-3, &[11])],
                &[(-2, &[7])],
                &[(-1, &[3])],
                &[(-4, &[11]), (-3, &[9]), (-2, &[6]), (-1, &[4]), (0, &[1])],
                &[(-3, &[10])],
                &[(-2, &[6])],
                &[(-1, &[2])],
                &[(-4, &[11]), (-3, &[8]), (-2, &[6]), (-1, &[3]), (0, &[1])],
                &[(-3, &[9])],
                &[(-2, &[5])],
                &[(-1, &[1])],
            ],
        },
        TauTable {
            algebra: alg(11, &[(1, 5), (2, 8), (5, 11)]),
            start: 1,
            rows: vec![
                &[(-3, &[11]), (-2, &[8]), (-1, &[5]), (0, &[2]), (1, &[1])],
                &[(-2, &[9])],
                &[(-3, &[11]), (-2, &[10]), (-1, &[3])],
                &[(-2, &[5, 6]), (-1, &[3, 4]), (0, &[1])],
                &[(-3, &[8, 11]), (-2, &[6, 7]), (-1, &[2, 4]), (0, &[1])],
                &[(-3, &[9]), (-2, &[6, 7]), (-1, &[2]), (0, &[1])],
                &[(-3, &[10]), (-2, &[7]), (-1, &[2])],
                &[(-2, &[5]), (-1, &[2]), (0, &[1])],
                &[(-3, &[11]), (-2, &[6]), (-1, &[3])],
                &[(-3, &[8]), (-2, &[5, 6, 7]), (-1, &[2, 4]), (0, &[1])],
                &[(-3, &[8, 9]), (-2, &[6, 7]), (-1, &[2, 2]), (0, &[1])],
                &[(-4, &[11]), (-3, &[9, 10]), (-2, &[5, 7]), (-1, &[2]), (0, &[1])],
                &[(-3, &[10]), (-2, &[3]), (-1, &[2])],
                &[(-2, &[4])],
                &[(-1, &[1])],
            ],
        },
        TauTable {
            algebra: alg(11, &[(2, 8), (4, 10)]),
            start: 6,
            rows: vec![
                &[(-1, &[8]), (0, &[7]), (1, &[1])],
                &[(-2, &[10]), (-1, &[9]), (0, &[3]), (1, &[2])],
                &[(-2, &[11]), (-1, &[5]), (0, &[4])],
                &[(-1, &[6])],
            ],
        },
    ]
}

pub fn sorted_terms(x: &PerfectComplex) -> Vec<(i32, Vec<usize>)> {
    x.degrees()
        .map(|d| {
            let mut t = x.terms(d).to_vec();
            t.sort_unstable();
            (d, t)
        })
        .collect()
}

/// First row that differs from the computed orbit, if any.
pub fn table_mismatch(t: &TauTable) -> Option<String> {
    let orbit = tau_orbit(&t.algebra, t.start, t.rows.len()).map_err(|e| e.to_string());
    let orbit = match orbit {
        Ok(o) => o,
        Err(e) => return Some(e),
    };
    for (k, (x, row)) in orbit.iter().zip(&t.rows).enumerate() {
        let expected: Vec<(i32, Vec<usize>)> = row.iter().map(|(d, s)| (*d, s.to_vec())).collect();
        if sorted_terms(x) != expected {
            return Some(format!(
                "{}: tau^{}(P{}) is {}",
                t.algebra,
                k + 1,
                t.start,
                x.render()
            ));
        }
    }
    None
}

pub struct Chain {
    pub start: NakayamaAlgebra,
    pub moves: &'static str,
    pub steps: Vec<NakayamaAlgebra>,
}

pub fn chains() -> Vec<Chain> {
    vec![
        Chain {
            start: alg(11, &[(1, 5), (2, 8), (5, 11)]),
            moves: "L:8,L:9,L:10,L:8,R:2,R:7,R:4",
            steps: vec![
                alg(11, &[(1, 6), (2, 8), (3, 9), (6, 11)]),
                alg(11, &[(1, 7), (3, 9), (4, 10), (7, 11)]),
                alg(11, &[(1, 8), (4, 10), (8, 11)]),
                alg(11, &[(1, 8), (2, 9), (5, 10), (8, 11)]),
                alg(11, &[(1, 7), (2, 9), (4, 10), (7, 11)]),
                alg(11, &[(1, 7), (2, 8), (4, 9), (6, 10), (7, 11)]),
                NakayamaAlgebra::rad_power(11, 5).unwrap(),
            ],
        },
        Chain {
            start: alg(13, &[(1, 8), (3, 9), (5, 11), (6, 13)]),
            moves: "R:1,R:1,L:13,L:13",
            steps: vec![
                alg(13, &[(1, 8), (2, 9), (4, 11), (5, 13)]),
                alg(13, &[(1, 8), (3, 11), (4, 13)]),
                alg(13, &[(1, 9), (3, 12), (4, 13)]),
                alg(13, &[(1, 10), (4, 13)]),
            ],
        },
    ]
}

/// First step whose output or Coxeter polynomial differs, if any.
pub fn chain_mismatch(c: &Chain) -> Option<String> {
    let moves = parse_chain(c.moves).unwrap();
    let records = match apply_chain(&c.start, &moves) {
        Ok(r) => r,
        Err((k, e)) => return Some(format!("move {} failed: {e}", k + 1)),
    };
    if records.len() != c.steps.len() {
        return Some("wrong number of steps".into());
    }
    let poly = coxeter(&c.start).polynomial;
    for (k, (rec, expected)) in records.iter().zip(&c.steps).enumerate() {
        if &rec.output != expected {
            return Some(format!("step {} ({}) gave {}", k + 1, rec.kind, rec.output));
        }
        if coxeter(&rec.output).polynomial != poly {
            return Some(format!("step {} changed the Coxeter polynomial", k + 1));
        }
    }
    None
}
