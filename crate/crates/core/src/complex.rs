//! Bounded complexes of interval modules with scalar differentials.
//!
//! Every indecomposable module over a linear Nakayama algebra is an interval
//! `M[u,v]` (top `S_u`, socle `S_v`). Between two intervals there is at most a
//! one-dimensional space of maps, spanned by a canonical map, so a differential
//! is just a scalar matrix. Composites of canonical maps are canonical or zero,
//! which turns every composition into a masked matrix product.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, NakayamaAlgebra};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("M[{top},{socle}] is not a module over this algebra")]
    InvalidInterval { top: usize, socle: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("degree {degree}: entry from {from} to {target} has no canonical map")]
    UnsupportedEntry {
        degree: i32,
        from: String,
        target: String,
    },
    #[error("d∘d is nonzero starting in degree {degree}")]
    NotAComplex { degree: i32 },
    #[error("chain map condition fails in degree {degree}")]
    NotAChainMap { degree: i32 },
    #[error("complexes live over different algebras")]
    AlgebraMismatch,
    #[error("the zero complex has no translate")]
    ZeroComplex,
    #[error("invalid strand: {0}")]
    InvalidStrand(String),
    #[error("audit failed: {0}")]
    AuditFailed(String),
}

/// The uniserial module `M[top, socle]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IntervalModule {
    pub top: usize,
    pub socle: usize,
}

impl IntervalModule {
    pub fn new(a: &NakayamaAlgebra, top: usize, socle: usize) -> Result<Self, EngineError> {
        if top < 1 || socle > a.n() || !a.path_nonzero(top, socle) {
            return Err(EngineError::InvalidInterval { top, socle });
        }
        Ok(IntervalModule { top, socle })
    }

    pub fn projective(a: &NakayamaAlgebra, i: usize) -> Self {
        IntervalModule {
            top: i,
            socle: a.proj_end(i),
        }
    }

    pub fn simple(i: usize) -> Self {
        IntervalModule { top: i, socle: i }
    }

    pub fn injective(a: &NakayamaAlgebra, v: usize) -> Self {
        IntervalModule {
            top: a.inj_start(v),
            socle: v,
        }
    }

    pub fn contains(&self, i: usize) -> bool {
        self.top <= i && i <= self.socle
    }
}

impl fmt::Display for IntervalModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M[{},{}]", self.top, self.socle)
    }
}

/// A direct summand type: a projective index or an interval module.
pub trait Summand: Copy + Eq + Ord + Hash + fmt::Debug + Send + Sync {
    fn interval(&self, a: &NakayamaAlgebra) -> (usize, usize);
    fn label(&self) -> String;
    fn validate(&self, a: &NakayamaAlgebra) -> Result<(), EngineError>;
}

impl Summand for usize {
    fn interval(&self, a: &NakayamaAlgebra) -> (usize, usize) {
        (*self, a.proj_end(*self))
    }

    fn label(&self) -> String {
        format!("P{self}")
    }

    fn validate(&self, a: &NakayamaAlgebra) -> Result<(), EngineError> {
        Ok(a.check_vertex(*self)?)
    }
}

impl Summand for IntervalModule {
    fn interval(&self, _: &NakayamaAlgebra) -> (usize, usize) {
        (self.top, self.socle)
    }

    fn label(&self) -> String {
        self.to_string()
    }

    fn validate(&self, a: &NakayamaAlgebra) -> Result<(), EngineError> {
        IntervalModule::new(a, self.top, self.socle).map(|_| ())
    }
}

/// Whether the canonical map `from -> to` between interval modules exists.
pub fn canonical_map_exists(from: (usize, usize), to: (usize, usize)) -> bool {
    let ((u, v), (u2, v2)) = (from, to);
    u2 <= u && u <= v2 && v2 <= v
}

/// Bounded cochain complex; `diffs[k]` maps degree `lo + k` to `lo + k + 1`,
/// with rows indexed by target terms and columns by source terms.
#[derive(Clone, PartialEq, Eq)]
pub struct Complex<S> {
    algebra: Arc<NakayamaAlgebra>,
    lo: i32,
    terms: Vec<Vec<S>>,
    diffs: Vec<Matrix>,
}

/// Complex of indecomposable projectives, each term given by its vertex.
pub type PerfectComplex = Complex<usize>;
pub type ModuleComplex = Complex<IntervalModule>;

/// Cohomology dimension vectors by degree; degrees with zero cohomology are
/// omitted.
pub type HomologyDims = BTreeMap<i32, Vec<usize>>;

impl<S: Summand> Complex<S> {
    /// Validated constructor.
    pub fn new(
        algebra: Arc<NakayamaAlgebra>,
        lo: i32,
        terms: Vec<Vec<S>>,
        diffs: Vec<Matrix>,
    ) -> Result<Self, EngineError> {
        for t in terms.iter().flatten() {
            t.validate(&algebra)?;
        }
        if diffs.len() != terms.len().saturating_sub(1) {
            return Err(EngineError::Shape(format!(
                "{} degrees need {} differentials, got {}",
                terms.len(),
                terms.len().saturating_sub(1),
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.rows() != terms[k + 1].len() || d.cols() != terms[k].len() {
                return Err(EngineError::Shape(format!(
                    "differential out of degree {} is {}x{}, expected {}x{}",
                    lo + k as i32,
                    d.rows(),
                    d.cols(),
                    terms[k + 1].len(),
                    terms[k].len()
                )));
            }
        }
        let c = Complex {
            algebra,
            lo,
            terms,
            diffs,
        };
        c.check_support()?;
        c.check_d_squared()?;
        Ok(c.trimmed())
    }

    /// Constructor for internally produced data; validated in debug builds.
    pub(crate) fn from_parts(
        algebra: Arc<NakayamaAlgebra>,
        lo: i32,
        terms: Vec<Vec<S>>,
        diffs: Vec<Matrix>,
    ) -> Self {
        let c = Complex {
            algebra,
            lo,
            terms,
            diffs,
        };
        if cfg!(debug_assertions) {
            c.check_support().expect("unsupported differential entry");
            c.check_d_squared().expect("d∘d ≠ 0");
        }
        c.trimmed()
    }

    pub fn zero(algebra: Arc<NakayamaAlgebra>) -> Self {
        Complex {
            algebra,
            lo: 0,
            terms: Vec::new(),
            diffs: Vec::new(),
        }
    }

    pub fn stalk_of(algebra: Arc<NakayamaAlgebra>, s: S, degree: i32) -> Result<Self, EngineError> {
        s.validate(&algebra)?;
        Ok(Complex {
            algebra,
            lo: degree,
            terms: vec![vec![s]],
            diffs: Vec::new(),
        })
    }

    pub fn algebra(&self) -> &NakayamaAlgebra {
        &self.algebra
    }

    pub fn algebra_arc(&self) -> &Arc<NakayamaAlgebra> {
        &self.algebra
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest nonzero degree (0 for the zero complex).
    pub fn lo(&self) -> i32 {
        self.lo
    }

    /// Highest nonzero degree (`lo - 1` for the zero complex).
    pub fn hi(&self) -> i32 {
        self.lo + self.terms.len() as i32 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.lo()..=self.hi()
    }

    fn index(&self, d: i32) -> Option<usize> {
        let k = d - self.lo;
        (k >= 0 && (k as usize) < self.terms.len()).then_some(k as usize)
    }

    pub fn terms(&self, d: i32) -> &[S] {
        self.index(d).map_or(&[], |k| &self.terms[k])
    }

    /// Differential from degree `d` to `d + 1`, if both degrees are nonzero.
    pub fn diff(&self, d: i32) -> Option<&Matrix> {
        self.index(d).and_then(|k| self.diffs.get(k))
    }

    pub fn diff_or_zero(&self, d: i32) -> Matrix {
        self.diff(d)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.terms(d + 1).len(), self.terms(d).len()))
    }

    pub fn total_terms(&self) -> usize {
        self.terms.iter().map(Vec::len).sum()
    }

    pub fn interval(&self, s: &S) -> (usize, usize) {
        s.interval(&self.algebra)
    }

    pub fn map_exists(&self, from: &S, to: &S) -> bool {
        canonical_map_exists(self.interval(from), self.interval(to))
    }

    /// `(X[k])^d = X^{d+k}`; differentials pick up the sign `(-1)^k`.
    pub fn shift(&self, k: i32) -> Self {
        let diffs = if k % 2 == 0 {
            self.diffs.clone()
        } else {
            self.diffs.iter().map(Matrix::neg).collect()
        };
        Complex {
            algebra: self.algebra.clone(),
            lo: if self.is_zero() { 0 } else { self.lo - k },
            terms: self.terms.clone(),
            diffs,
        }
    }

    fn check_support(&self) -> Result<(), EngineError> {
        for (k, d) in self.diffs.iter().enumerate() {
            for (b, tb) in self.terms[k + 1].iter().enumerate() {
                for (a, ta) in self.terms[k].iter().enumerate() {
                    if !d.get(b, a).is_zero() && !self.map_exists(ta, tb) {
                        return Err(EngineError::UnsupportedEntry {
                            degree: self.lo + k as i32,
                            from: ta.label(),
                            target: tb.label(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Composite `later ∘ earlier` of maps `src -> mid -> dst` given by scalar
    /// matrices over canonical maps.
    pub fn compose(&self, later: &Matrix, earlier: &Matrix, src: &[S], dst: &[S]) -> Matrix {
        later.mul_masked(earlier, |i, j| self.map_exists(&src[j], &dst[i]))
    }

    pub fn check_d_squared(&self) -> Result<(), EngineError> {
        for k in 0..self.diffs.len().saturating_sub(1) {
            let dd = self.compose(
                &self.diffs[k + 1],
                &self.diffs[k],
                &self.terms[k],
                &self.terms[k + 2],
            );
            if !dd.is_zero() {
                return Err(EngineError::NotAComplex {
                    degree: self.lo + k as i32,
                });
            }
        }
        Ok(())
    }

    /// Drops zero degrees at both ends.
    fn trimmed(mut self) -> Self {
        while self.terms.last().is_some_and(Vec::is_empty) {
            self.terms.pop();
            if !self.diffs.is_empty() {
                self.diffs.pop();
            }
        }
        let lead = self.terms.iter().take_while(|t| t.is_empty()).count();
        if lead == self.terms.len() {
            return Complex::zero(self.algebra);
        }
        if lead > 0 {
            self.terms.drain(..lead);
            self.diffs.drain(..lead);
            self.lo += lead as i32;
        }
        self
    }

    /// Positions of the degree-`d` summands whose support contains vertex `i`.
    pub fn vertex_basis(&self, d: i32, i: usize) -> Vec<usize> {
        self.terms(d)
            .iter()
            .enumerate()
            .filter(|(_, s)| {
                let (u, v) = self.interval(s);
                u <= i && i <= v
            })
            .map(|(k, _)| k)
            .collect()
    }

    /// The differential out of degree `d` evaluated at vertex `i`.
    pub fn vertex_map(&self, d: i32, i: usize) -> Matrix {
        let src = self.vertex_basis(d, i);
        let dst = self.vertex_basis(d + 1, i);
        match self.diff(d) {
            Some(m) => m.select(&dst, &src),
            None => Matrix::zeros(dst.len(), src.len()),
        }
    }

    pub fn homology_dims(&self) -> HomologyDims {
        let n = self.algebra.n();
        let mut out = BTreeMap::new();
        for d in self.degrees() {
            let dims: Vec<usize> = (1..=n)
                .map(|i| {
                    let dim = self.vertex_basis(d, i).len();
                    let out_rank = self.vertex_map(d, i).rank();
                    let in_rank = self.vertex_map(d - 1, i).rank();
                    dim - out_rank - in_rank
                })
                .collect();
            if dims.iter().any(|&x| x > 0) {
                out.insert(d, dims);
            }
        }
        out
    }

    /// Alternating sum of the cohomology dimension vectors.
    pub fn homology_class(&self) -> Vec<i64> {
        let mut class = vec![0i64; self.algebra.n()];
        for (d, dims) in self.homology_dims() {
            let sign = if d % 2 == 0 { 1 } else { -1 };
            for (c, x) in class.iter_mut().zip(dims) {
                *c += sign * x as i64;
            }
        }
        class
    }

    /// Sorted `(degree, summand)` pairs; equal for isomorphic minimal complexes.
    pub fn term_key(&self) -> Vec<(i32, S)> {
        let mut key: Vec<(i32, S)> = self
            .degrees()
            .flat_map(|d| self.terms(d).iter().map(move |s| (d, *s)))
            .collect();
        key.sort();
        key
    }

    /// Sorts the summands of every degree, permuting differentials to match.
    pub fn canonical_order(&self) -> Self {
        let perms: Vec<Vec<usize>> = self
            .terms
            .iter()
            .map(|t| {
                let mut p: Vec<usize> = (0..t.len()).collect();
                p.sort_by_key(|&k| t[k]);
                p
            })
            .collect();
        let terms = self
            .terms
            .iter()
            .zip(&perms)
            .map(|(t, p)| p.iter().map(|&k| t[k]).collect())
            .collect();
        let diffs = self
            .diffs
            .iter()
            .enumerate()
            .map(|(k, m)| m.select(&perms[k + 1], &perms[k]))
            .collect();
        Complex {
            algebra: self.algebra.clone(),
            lo: self.lo,
            terms,
            diffs,
        }
    }

    /// One-line rendering, e.g. `deg -1: P8 | deg 0: P5+P6`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.degrees()
            .map(|d| format!("deg {d}: {}", self.degree_label(d)))
            .collect::<Vec<_>>()
            .join(" | ")
    }

    /// Summands of one degree joined by `+`, or an empty string.
    pub fn degree_label(&self, d: i32) -> String {
        self.terms(d)
            .iter()
            .map(Summand::label)
            .collect::<Vec<_>>()
            .join("+")
    }

    pub fn to_json(&self) -> serde_json::Value
    where
        S: Serialize,
    {
        let diffs: Vec<Vec<Vec<String>>> = self
            .diffs
            .iter()
            .map(|m| {
                m.to_rows()
                    .iter()
                    .map(|r| r.iter().map(Scalar::to_string).collect())
                    .collect()
            })
            .collect();
        serde_json::json!({
            "lo": self.lo,
            "terms": self.terms,
            "diffs": diffs,
        })
    }
}

impl PerfectComplex {
    pub fn stalk(algebra: Arc<NakayamaAlgebra>, i: usize, degree: i32) -> Result<Self, EngineError> {
        Complex::stalk_of(algebra, i, degree)
    }

    /// Alternating sum of projective multiplicities, in the basis of
    /// indecomposable projectives.
    pub fn k_class(&self) -> Vec<i64> {
        let mut class = vec![0i64; self.algebra.n()];
        for d in self.degrees() {
            let sign = if d % 2 == 0 { 1 } else { -1 };
            for &p in self.terms(d) {
                class[p - 1] += sign;
            }
        }
        class
    }

    /// Whether the complex is exactly `P_i` placed in degree `-m`.
    pub fn is_stalk_shift(&self, i: usize, m: i32) -> bool {
        self.terms.len() == 1 && self.lo == -m && self.terms[0] == [i]
    }

    pub fn as_stalk(&self) -> Option<(usize, i32)> {
        (self.terms.len() == 1 && self.terms[0].len() == 1).then(|| (self.terms[0][0], self.lo))
    }
}

impl<S: Summand> fmt::Debug for Complex<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())?;
        for (k, d) in self.diffs.iter().enumerate() {
            write!(f, "\n  d^{} = {:?}", self.lo + k as i32, d)?;
        }
        Ok(())
    }
}

impl<S: Summand> fmt::Display for Complex<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Arc<NakayamaAlgebra> {
        Arc::new(NakayamaAlgebra::hereditary(2).unwrap())
    }

    #[test]
    fn shift_moves_terms_down() {
        let x = PerfectComplex::stalk(a2(), 1, 0).unwrap();
        assert_eq!(x.shift(1), PerfectComplex::stalk(a2(), 1, -1).unwrap());
        assert_eq!(x.shift(1).shift(-1), x);
        assert!(PerfectComplex::stalk(a2(), 2, -1).unwrap().is_stalk_shift(2, 1));
        assert!(PerfectComplex::stalk(a2(), 3, 0).is_err());
    }

    #[test]
    fn validation_rejects_bad_entries() {
        // P_1 -> P_2 has no canonical map over kA_2.
        let bad = PerfectComplex::new(
            a2(),
            0,
            vec![vec![1], vec![2]],
            vec![Matrix::from_int_rows(&[&[1]])],
        );
        assert!(matches!(bad, Err(EngineError::UnsupportedEntry { .. })));
        let shape = PerfectComplex::new(a2(), 0, vec![vec![2], vec![1]], vec![]);
        assert!(matches!(shape, Err(EngineError::Shape(_))));
    }

    #[test]
    fn d_squared_is_checked() {
        // P_3 -> P_2 -> P_1 over kA_3: the composite P_3 -> P_1 is nonzero.
        let a = Arc::new(NakayamaAlgebra::hereditary(3).unwrap());
        let one = || Matrix::from_int_rows(&[&[1]]);
        let r = PerfectComplex::new(a, -2, vec![vec![3], vec![2], vec![1]], vec![one(), one()]);
        assert_eq!(r.unwrap_err(), EngineError::NotAComplex { degree: -2 });
        // Over kA_3 / rad^2 the same composite vanishes.
        let b = Arc::new(NakayamaAlgebra::rad_power(3, 2).unwrap());
        let ok = PerfectComplex::new(b, -2, vec![vec![3], vec![2], vec![1]], vec![one(), one()]);
        assert!(ok.is_ok());
    }

    #[test]
    fn homology_of_radical_inclusion() {
        let x = PerfectComplex::new(
            a2(),
            -1,
            vec![vec![2], vec![1]],
            vec![Matrix::from_int_rows(&[&[1]])],
        )
        .unwrap();
        let h = x.homology_dims();
        assert_eq!(h.len(), 1);
        assert_eq!(h[&0], vec![1, 0]);
    }

    #[test]
    fn stalk_homology_is_projective() {
        let a9 = Arc::new(
            NakayamaAlgebra::from_relations(9, [(1, 4), (3, 6), (4, 7), (6, 9)]).unwrap(),
        );
        let h = PerfectComplex::stalk(a9, 1, 0).unwrap().homology_dims();
        assert_eq!(h[&0], vec![1, 1, 1, 0, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn zero_degrees_are_trimmed() {
        let x = PerfectComplex::new(
            a2(),
            -3,
            vec![vec![], vec![1], vec![]],
            vec![Matrix::zeros(1, 0), Matrix::zeros(0, 1)],
        )
        .unwrap();
        assert_eq!((x.lo(), x.hi()), (-2, -2));
        assert_eq!(x.render(), "deg -2: P1");
    }

    #[test]
    fn canonical_map_rule() {
        assert!(canonical_map_exists((2, 5), (1, 3)));
        assert!(!canonical_map_exists((2, 5), (3, 6)));
        assert!(!canonical_map_exists((2, 3), (1, 5)));
        assert!(!canonical_map_exists((4, 5), (1, 3)));
    }
}
