//! Linear Nakayama algebras `kA_n / J` given by monomial relations.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("an algebra needs at least one vertex")]
    NoVertices,
    #[error("relation ({start},{end}) does not fit on {n} vertices")]
    RelationOutOfRange { start: usize, end: usize, n: usize },
    #[error("relation ({start},{end}) has length below two")]
    LengthBelowTwo { start: usize, end: usize },
    #[error("relation {outer} contains relation {inner}")]
    NestedOrDuplicateRelation { outer: Relation, inner: Relation },
    #[error("invalid Kupisch series: {0}")]
    InvalidKupisch(String),
    #[error("radical power {0} is below two")]
    PowerBelowTwo(usize),
    #[error("vertex {vertex} is outside 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("cannot parse algebra: {0}")]
    Parse(String),
}

/// The zero path from `start` to `end`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(usize, usize)", into = "(usize, usize)")]
pub struct Relation {
    pub start: usize,
    pub end: usize,
}

impl Relation {
    pub fn new(start: usize, end: usize) -> Self {
        Relation { start, end }
    }

    /// Number of arrows in the path.
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end == self.start
    }

    /// Whether the path of `other` is a subpath of this one.
    pub fn contains(&self, other: &Relation) -> bool {
        self.start <= other.start && other.end <= self.end
    }
}

impl From<(usize, usize)> for Relation {
    fn from((start, end): (usize, usize)) -> Self {
        Relation { start, end }
    }
}

impl From<Relation> for (usize, usize) {
    fn from(r: Relation) -> Self {
        (r.start, r.end)
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.start, self.end)
    }
}

/// Removes every relation whose path contains another relation's path.
pub fn antichain_reduce(mut rels: Vec<Relation>) -> Vec<Relation> {
    rels.sort();
    rels.dedup();
    let keep: Vec<bool> = rels
        .iter()
        .map(|r| !rels.iter().any(|o| o != r && r.contains(o)))
        .collect();
    rels.into_iter()
        .zip(keep)
        .filter_map(|(r, k)| k.then_some(r))
        .collect()
}

/// A linear Nakayama algebra on vertices `1..=n`.
///
/// The relation list is sorted and forms an antichain, so starts and ends are
/// both strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawAlgebra", into = "RawAlgebra")]
pub struct NakayamaAlgebra {
    n: usize,
    relations: Vec<Relation>,
    kupisch: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawAlgebra {
    n: usize,
    relations: Vec<Relation>,
}

impl TryFrom<RawAlgebra> for NakayamaAlgebra {
    type Error = AlgebraError;
    fn try_from(raw: RawAlgebra) -> Result<Self, Self::Error> {
        NakayamaAlgebra::from_relations(raw.n, raw.relations.iter().map(|r| (r.start, r.end)))
    }
}

impl From<NakayamaAlgebra> for RawAlgebra {
    fn from(a: NakayamaAlgebra) -> Self {
        RawAlgebra {
            n: a.n,
            relations: a.relations,
        }
    }
}

impl NakayamaAlgebra {
    pub fn from_relations(
        n: usize,
        rels: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, AlgebraError> {
        if n == 0 {
            return Err(AlgebraError::NoVertices);
        }
        let mut relations = Vec::new();
        for (start, end) in rels {
            if start < 1 || end > n || start >= end {
                return Err(AlgebraError::RelationOutOfRange { start, end, n });
            }
            if end - start < 2 {
                return Err(AlgebraError::LengthBelowTwo { start, end });
            }
            relations.push(Relation::new(start, end));
        }
        relations.sort();
        for w in relations.windows(2) {
            let (a, b) = (w[0], w[1]);
            if a.contains(&b) {
                return Err(AlgebraError::NestedOrDuplicateRelation { outer: a, inner: b });
            }
            if b.contains(&a) {
                return Err(AlgebraError::NestedOrDuplicateRelation { outer: b, inner: a });
            }
        }
        let kupisch = kupisch_of(n, &relations);
        Ok(NakayamaAlgebra {
            n,
            relations,
            kupisch,
        })
    }

    pub fn hereditary(n: usize) -> Result<Self, AlgebraError> {
        Self::from_relations(n, [])
    }

    pub fn from_kupisch(series: &KupischSeries) -> Self {
        let c = &series.0;
        let n = c.len();
        let relations: Vec<Relation> = (1..n)
            .filter(|&s| s + c[s - 1] <= n && c[s - 1] <= c[s])
            .map(|s| Relation::new(s, s + c[s - 1]))
            .collect();
        NakayamaAlgebra {
            n,
            relations,
            kupisch: c.clone(),
        }
    }

    /// `kA_n / rad^m`.
    pub fn rad_power(n: usize, m: usize) -> Result<Self, AlgebraError> {
        if m < 2 {
            return Err(AlgebraError::PowerBelowTwo(m));
        }
        let rels = (1..=n.saturating_sub(m)).map(|i| (i, i + m));
        Self::from_relations(n, rels)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn to_kupisch(&self) -> KupischSeries {
        KupischSeries(self.kupisch.clone())
    }

    /// Composition length of `P_i`.
    pub fn c(&self, i: usize) -> usize {
        self.kupisch[i - 1]
    }

    pub fn check_vertex(&self, i: usize) -> Result<(), AlgebraError> {
        if (1..=self.n).contains(&i) {
            Ok(())
        } else {
            Err(AlgebraError::VertexOutOfRange {
                vertex: i,
                n: self.n,
            })
        }
    }

    /// Socle vertex of `P_i`.
    pub fn proj_end(&self, i: usize) -> usize {
        i + self.c(i) - 1
    }

    /// Top vertex of the injective hull `I_v` of the simple at `v`.
    pub fn inj_start(&self, v: usize) -> usize {
        (1..=v)
            .find(|&w| v <= self.proj_end(w))
            .expect("every vertex lies in its own projective")
    }

    /// Whether the path from `a` to `b` (with `a <= b`) is nonzero.
    pub fn path_nonzero(&self, a: usize, b: usize) -> bool {
        a <= b && b <= self.proj_end(a)
    }

    /// Whether `Hom(P_a, P_b)` is nonzero, i.e. `P_a` sits inside `P_b`.
    pub fn proj_hom(&self, a: usize, b: usize) -> bool {
        self.path_nonzero(b, a)
    }

    pub fn relation_ending_at(&self, t: usize) -> Option<Relation> {
        self.relations.iter().copied().find(|r| r.end == t)
    }

    pub fn relation_starting_at(&self, s: usize) -> Option<Relation> {
        self.relations.iter().copied().find(|r| r.start == s)
    }

    /// The relation with the largest end point `<= x`.
    pub fn last_relation_ending_by(&self, x: usize) -> Option<Relation> {
        self.relations.iter().rev().copied().find(|r| r.end <= x)
    }

    pub fn is_hereditary(&self) -> bool {
        self.relations.is_empty()
    }
}

fn kupisch_of(n: usize, relations: &[Relation]) -> Vec<usize> {
    let mut c = vec![0; n];
    let mut next = relations.len();
    for i in (1..=n).rev() {
        while next > 0 && relations[next - 1].start >= i {
            next -= 1;
        }
        // relations[next..] are those starting at or after i; the first has the
        // smallest end because ends increase with starts.
        c[i - 1] = match relations.get(next) {
            Some(r) => r.end - i,
            None => n - i + 1,
        };
    }
    c
}

impl fmt::Display for NakayamaAlgebra {
    /// Canonical text form, e.g. `n=9;rels=1-4,3-6`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self
            .relations
            .iter()
            .map(|r| format!("{}-{}", r.start, r.end))
            .collect();
        write!(f, "n={};rels={}", self.n, rels.join(","))
    }
}

fn parse_usize(s: &str) -> Result<usize, AlgebraError> {
    s.trim()
        .parse()
        .map_err(|_| AlgebraError::Parse(format!("expected a nonnegative integer, got {s:?}")))
}

fn parse_list(s: &str) -> Result<Vec<usize>, AlgebraError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_usize).collect()
}

impl FromStr for NakayamaAlgebra {
    type Err = AlgebraError;

    /// Accepts the text form, `kupisch=...`, `radpow=n,m`, or the JSON form.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.starts_with('{') {
            return serde_json::from_str(s).map_err(|e| AlgebraError::Parse(e.to_string()));
        }
        if let Some(rest) = s.strip_prefix("kupisch=") {
            let series = KupischSeries::new(parse_list(rest)?)?;
            return Ok(NakayamaAlgebra::from_kupisch(&series));
        }
        if let Some(rest) = s.strip_prefix("radpow=") {
            let v = parse_list(rest)?;
            let [n, m] = v[..] else {
                return Err(AlgebraError::Parse(format!("radpow needs two values, got {rest:?}")));
            };
            return NakayamaAlgebra::rad_power(n, m);
        }
        let mut n = None;
        let mut rels = Vec::new();
        for part in s.split(';').filter(|p| !p.trim().is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| AlgebraError::Parse(format!("expected key=value, got {part:?}")))?;
            match key.trim() {
                "n" => n = Some(parse_usize(value)?),
                "rels" => {
                    for item in value.split(',').filter(|r| !r.trim().is_empty()) {
                        let (a, b) = item.split_once('-').ok_or_else(|| {
                            AlgebraError::Parse(format!("relation must be s-t, got {item:?}"))
                        })?;
                        rels.push((parse_usize(a)?, parse_usize(b)?));
                    }
                }
                other => return Err(AlgebraError::Parse(format!("unknown key {other:?}"))),
            }
        }
        let n = n.ok_or_else(|| AlgebraError::Parse("missing n=".into()))?;
        NakayamaAlgebra::from_relations(n, rels)
    }
}

/// Composition lengths `c_1, ..., c_n` of the indecomposable projectives.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct KupischSeries(Vec<usize>);

impl KupischSeries {
    pub fn new(c: Vec<usize>) -> Result<Self, AlgebraError> {
        let n = c.len();
        if n == 0 {
            return Err(AlgebraError::NoVertices);
        }
        if c[n - 1] != 1 {
            return Err(AlgebraError::InvalidKupisch(format!(
                "last entry must be 1, got {}",
                c[n - 1]
            )));
        }
        for i in 0..n - 1 {
            if c[i] < 2 || c[i] > c[i + 1] + 1 {
                return Err(AlgebraError::InvalidKupisch(format!(
                    "entry {} = {} must lie in 2..={}",
                    i + 1,
                    c[i],
                    c[i + 1] + 1
                )));
            }
        }
        Ok(KupischSeries(c))
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for KupischSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "kupisch={}", parts.join(","))
    }
}

/// All algebras on `n` vertices in lexicographic order of Kupisch series.
pub fn enumerate_algebras(n: usize) -> impl Iterator<Item = NakayamaAlgebra> {
    KupischIter::new(n).map(|c| NakayamaAlgebra::from_kupisch(&c))
}

/// Depth-first walk over valid Kupisch series, read left to right.
///
/// Reading a series from the left, entry `k + 1` may take any value in
/// `max(2, c_k - 1)..=n - k` (the cap keeps `P_{k+1}` inside the quiver),
/// except that the last entry is forced to 1.
struct KupischIter {
    n: usize,
    current: Vec<usize>,
    started: bool,
}

impl KupischIter {
    fn new(n: usize) -> Self {
        KupischIter {
            n,
            current: Vec::new(),
            started: false,
        }
    }

    fn bounds(&self, pos: usize, prev: Option<usize>) -> (usize, usize) {
        let n = self.n;
        if pos == n - 1 {
            return (1, 1);
        }
        let hi = n - pos;
        let lo = match prev {
            Some(p) => p.saturating_sub(1).max(2),
            None => 2,
        };
        (lo, hi)
    }

    fn fill_from(&mut self, pos: usize) {
        for p in pos..self.n {
            let prev = p.checked_sub(1).map(|q| self.current[q]);
            let (lo, _) = self.bounds(p, prev);
            self.current.push(lo);
        }
    }
}

impl Iterator for KupischIter {
    type Item = KupischSeries;

    fn next(&mut self) -> Option<KupischSeries> {
        if self.n == 0 {
            return None;
        }
        if !self.started {
            self.started = true;
            self.fill_from(0);
            return Some(KupischSeries(self.current.clone()));
        }
        while let Some(last) = self.current.pop() {
            let pos = self.current.len();
            let prev = pos.checked_sub(1).map(|q| self.current[q]);
            let (_, hi) = self.bounds(pos, prev);
            if last < hi {
                self.current.push(last + 1);
                self.fill_from(pos + 1);
                return Some(KupischSeries(self.current.clone()));
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(n: usize, rels: &[(usize, usize)]) -> NakayamaAlgebra {
        NakayamaAlgebra::from_relations(n, rels.iter().copied()).unwrap()
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(
            NakayamaAlgebra::from_relations(9, [(1, 4), (2, 9), (3, 6)]),
            Err(AlgebraError::NestedOrDuplicateRelation { outer, inner })
                if outer == Relation::new(2, 9) && inner == Relation::new(3, 6)
        ));
        assert!(matches!(
            NakayamaAlgebra::from_relations(5, [(1, 2)]),
            Err(AlgebraError::LengthBelowTwo { .. })
        ));
        assert!(matches!(
            NakayamaAlgebra::from_relations(5, [(3, 6)]),
            Err(AlgebraError::RelationOutOfRange { .. })
        ));
        assert!(matches!(
            NakayamaAlgebra::from_relations(5, [(1, 3), (1, 3)]),
            Err(AlgebraError::NestedOrDuplicateRelation { .. })
        ));
    }

    #[test]
    fn relations_are_sorted() {
        let a = alg(9, &[(6, 9), (1, 4), (4, 7), (3, 6)]);
        let starts: Vec<usize> = a.relations().iter().map(|r| r.start).collect();
        assert_eq!(starts, vec![1, 3, 4, 6]);
    }

    #[test]
    fn kupisch_examples() {
        let a9 = alg(9, &[(1, 4), (3, 6), (4, 7), (6, 9)]);
        assert_eq!(a9.to_kupisch().values(), &[3, 4, 3, 3, 4, 3, 3, 2, 1]);
        assert_eq!(
            NakayamaAlgebra::hereditary(4).unwrap().to_kupisch().values(),
            &[4, 3, 2, 1]
        );
        let r = NakayamaAlgebra::rad_power(11, 5).unwrap();
        assert_eq!(r.to_kupisch().values(), &[5, 5, 5, 5, 5, 5, 5, 4, 3, 2, 1]);
        assert_eq!(NakayamaAlgebra::from_kupisch(&a9.to_kupisch()), a9);
    }

    #[test]
    fn rad_power_examples() {
        let r = NakayamaAlgebra::rad_power(11, 5).unwrap();
        assert_eq!(
            r.relations(),
            &[(1, 6), (2, 7), (3, 8), (4, 9), (5, 10), (6, 11)].map(Relation::from)
        );
        assert!(NakayamaAlgebra::rad_power(2, 2).unwrap().is_hereditary());
        assert_eq!(NakayamaAlgebra::rad_power(12, 7).unwrap().relations().len(), 5);
        assert_eq!(
            NakayamaAlgebra::rad_power(5, 1),
            Err(AlgebraError::PowerBelowTwo(1))
        );
    }

    #[test]
    fn text_forms_round_trip() {
        let a = alg(9, &[(1, 4), (3, 6), (4, 7), (6, 9)]);
        assert_eq!(a.to_string(), "n=9;rels=1-4,3-6,4-7,6-9");
        assert_eq!(a.to_string().parse::<NakayamaAlgebra>().unwrap(), a);
        assert_eq!(
            "kupisch=3,4,3,3,4,3,3,2,1".parse::<NakayamaAlgebra>().unwrap(),
            a
        );
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, r#"{"n":9,"relations":[[1,4],[3,6],[4,7],[6,9]]}"#);
        assert_eq!(json.parse::<NakayamaAlgebra>().unwrap(), a);
        assert_eq!(
            "radpow=11,5".parse::<NakayamaAlgebra>().unwrap(),
            NakayamaAlgebra::rad_power(11, 5).unwrap()
        );
        assert_eq!("n=3;rels=".parse::<NakayamaAlgebra>().unwrap().n(), 3);
        assert!("n=3;rels=1-x".parse::<NakayamaAlgebra>().is_err());
        assert!(r#"{"n":9,"relations":[[1,4],[2,9],[3,6]]}"#
            .parse::<NakayamaAlgebra>()
            .is_err());
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_algebras(1).count(), 1);
        let two: Vec<_> = enumerate_algebras(2).collect();
        assert_eq!(two, vec![NakayamaAlgebra::hereditary(2).unwrap()]);
        assert_eq!(enumerate_algebras(5).count(), 14);
        assert_eq!(enumerate_algebras(9).count(), 1430);
    }

    #[test]
    fn injective_tops() {
        let r = NakayamaAlgebra::rad_power(11, 5).unwrap();
        assert_eq!(r.inj_start(1), 1);
        assert_eq!(r.inj_start(7), 3);
        assert_eq!(r.inj_start(11), 7);
    }

    #[test]
    fn antichain_reduction() {
        let rels = [(2, 9), (3, 9), (1, 7)].map(Relation::from).to_vec();
        assert_eq!(
            antichain_reduce(rels),
            [(1, 7), (3, 9)].map(Relation::from).to_vec()
        );
    }
}
