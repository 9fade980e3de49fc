//! Combinatorial moves on relation sets.
//!
//! Stripping length-two relations and the double mutations `L_t`, `R_s`
//! preserve the derived category. Inserting a vertex preserves
//! non-piecewise-heredity; removing one reflects it.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{antichain_reduce, AlgebraError, NakayamaAlgebra, Relation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("no relation ends at vertex {0}")]
    NoRelationEndingAt(usize),
    #[error("no relation starts at vertex {0}")]
    NoRelationStartingAt(usize),
    #[error("no neighbouring relation at vertex {0}")]
    MissingNeighborRelation(usize),
    #[error("a relation at vertex {0} blocks the move")]
    BlockedByRelationAt(usize),
    #[error("illegal extension descriptor: {0}")]
    IllegalExtensionDescriptor(String),
    #[error("vertex {vertex} is outside 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("relation {0} cannot be extended past the end of the quiver")]
    ExtensionFallsOffQuiver(Relation),
    #[error("removing vertex {0} would make the spliced arrow zero")]
    SplicedArrowVanishes(usize),
    #[error("cannot parse move {0:?}")]
    Parse(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// How a vertex inserted between old vertices `i` and `i + 1` meets the
/// relations. `From` and `To` name old vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Extension {
    /// No new relation; relations across the new vertex gain an arrow.
    None,
    /// The relation ending at old `i + 1` now ends at the new vertex.
    RetargetEnd,
    /// New relation from old vertex `s` to the new vertex.
    RelationFrom(usize),
    /// The relation starting at old `i` now starts at the new vertex.
    RetargetStart,
    /// New relation from the new vertex to old vertex `t`.
    RelationTo(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Move {
    StripLengthTwo,
    Left(usize),
    Right(usize),
    Insert(usize, Extension),
    Remove(usize),
}

impl Move {
    pub fn apply(&self, a: &NakayamaAlgebra) -> Result<NakayamaAlgebra, MoveError> {
        match *self {
            Move::StripLengthTwo => Ok(strip_length_two(a)),
            Move::Left(t) => left_mutation(a, t),
            Move::Right(s) => right_mutation(a, s),
            Move::Insert(i, ext) => insert_vertex(a, i, ext),
            Move::Remove(i) => remove_vertex(a, i),
        }
    }

    /// Whether the move is known to preserve the derived category.
    pub fn is_derived_equivalence(&self) -> bool {
        matches!(self, Move::StripLengthTwo | Move::Left(_) | Move::Right(_))
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::StripLengthTwo => write!(f, "strip2"),
            Move::Left(t) => write!(f, "L:{t}"),
            Move::Right(s) => write!(f, "R:{s}"),
            Move::Remove(i) => write!(f, "rm:{i}"),
            Move::Insert(i, ext) => {
                write!(f, "ins:{i}:")?;
                match ext {
                    Extension::None => write!(f, "none"),
                    Extension::RetargetEnd => write!(f, "retarget-end"),
                    Extension::RelationFrom(s) => write!(f, "rel-from={s}"),
                    Extension::RetargetStart => write!(f, "retarget-start"),
                    Extension::RelationTo(t) => write!(f, "rel-to={t}"),
                }
            }
        }
    }
}

impl FromStr for Move {
    type Err = MoveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || MoveError::Parse(s.to_string());
        let num = |x: &str| x.trim().parse::<usize>().map_err(|_| bad());
        let s = s.trim();
        if s == "strip2" {
            return Ok(Move::StripLengthTwo);
        }
        let mut parts = s.splitn(3, ':');
        let head = parts.next().ok_or_else(bad)?;
        let arg = parts.next().ok_or_else(bad)?;
        let rest = parts.next();
        match (head, rest) {
            ("L", None) => Ok(Move::Left(num(arg)?)),
            ("R", None) => Ok(Move::Right(num(arg)?)),
            ("rm", None) => Ok(Move::Remove(num(arg)?)),
            ("ins", Some(desc)) => {
                let ext = match desc {
                    "none" => Extension::None,
                    "retarget-end" => Extension::RetargetEnd,
                    "retarget-start" => Extension::RetargetStart,
                    _ => {
                        if let Some(v) = desc.strip_prefix("rel-from=") {
                            Extension::RelationFrom(num(v)?)
                        } else if let Some(v) = desc.strip_prefix("rel-to=") {
                            Extension::RelationTo(num(v)?)
                        } else {
                            return Err(bad());
                        }
                    }
                };
                Ok(Move::Insert(num(arg)?, ext))
            }
            _ => Err(bad()),
        }
    }
}

impl TryFrom<String> for Move {
    type Error = MoveError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<Move> for String {
    fn from(m: Move) -> Self {
        m.to_string()
    }
}

/// Parses a comma-separated chain such as `L:8,L:9,R:2`.
pub fn parse_chain(s: &str) -> Result<Vec<Move>, MoveError> {
    s.split(',')
        .map(str::trim)
        .filter(|m| !m.is_empty())
        .map(str::parse)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MoveRecord {
    pub kind: Move,
    pub input: NakayamaAlgebra,
    pub output: NakayamaAlgebra,
}

/// Applies `moves` left to right. On failure reports the index of the move
/// that failed.
pub fn apply_chain(
    a: &NakayamaAlgebra,
    moves: &[Move],
) -> Result<Vec<MoveRecord>, (usize, MoveError)> {
    let mut current = a.clone();
    let mut records = Vec::with_capacity(moves.len());
    for (k, m) in moves.iter().enumerate() {
        let next = m.apply(&current).map_err(|e| (k, e))?;
        records.push(MoveRecord {
            kind: *m,
            input: current,
            output: next.clone(),
        });
        current = next;
    }
    Ok(records)
}

fn rebuild(n: usize, rels: Vec<Relation>) -> Result<NakayamaAlgebra, MoveError> {
    let rels = antichain_reduce(rels);
    Ok(NakayamaAlgebra::from_relations(
        n,
        rels.into_iter().map(|r| (r.start, r.end)),
    )?)
}

pub fn strip_length_two(a: &NakayamaAlgebra) -> NakayamaAlgebra {
    let rels = a.relations().iter().filter(|r| r.len() != 2);
    NakayamaAlgebra::from_relations(a.n(), rels.map(|r| (r.start, r.end)))
        .expect("a subset of an antichain is an antichain")
}

/// `L_t`: for the relation `(s, t)`, add `(s+1, t+1)` and push relations
/// that start or end strictly inside `(s, t)` one step to the right.
pub fn left_mutation(a: &NakayamaAlgebra, t: usize) -> Result<NakayamaAlgebra, MoveError> {
    let r = a.relation_ending_at(t).ok_or(MoveError::NoRelationEndingAt(t))?;
    let s = r.start;
    if s != 1 && a.relation_starting_at(s - 1).is_none() {
        return Err(MoveError::MissingNeighborRelation(s - 1));
    }
    if a.relation_starting_at(t - 1).is_some() {
        return Err(MoveError::BlockedByRelationAt(t - 1));
    }
    let mut rels: Vec<Relation> = a
        .relations()
        .iter()
        .map(|&q| {
            if q == r {
                q
            } else if s < q.start && q.start < t {
                Relation::new(q.start + 1, q.end)
            } else if s < q.end && q.end < t {
                Relation::new(q.start, q.end + 1)
            } else {
                q
            }
        })
        .collect();
    if t < a.n() {
        rels.push(Relation::new(s + 1, t + 1));
    }
    rebuild(a.n(), rels)
}

/// `R_s`, the mirror image of [`left_mutation`].
pub fn right_mutation(a: &NakayamaAlgebra, s: usize) -> Result<NakayamaAlgebra, MoveError> {
    let r = a
        .relation_starting_at(s)
        .ok_or(MoveError::NoRelationStartingAt(s))?;
    let t = r.end;
    if t != a.n() && a.relation_ending_at(t + 1).is_none() {
        return Err(MoveError::MissingNeighborRelation(t + 1));
    }
    if a.relation_ending_at(s + 1).is_some() {
        return Err(MoveError::BlockedByRelationAt(s + 1));
    }
    let mut rels: Vec<Relation> = a
        .relations()
        .iter()
        .map(|&q| {
            if q == r {
                q
            } else if s < q.end && q.end < t {
                Relation::new(q.start, q.end - 1)
            } else if s < q.start && q.start < t {
                Relation::new(q.start - 1, q.end)
            } else {
                q
            }
        })
        .collect();
    if s > 1 {
        rels.push(Relation::new(s - 1, t - 1));
    }
    rebuild(a.n(), rels)
}

/// Inserts a vertex between old vertices `i` and `i + 1` (`0 <= i <= n`).
/// The new vertex is `i + 1`; old vertices above `i` move up by one.
pub fn insert_vertex(
    a: &NakayamaAlgebra,
    i: usize,
    ext: Extension,
) -> Result<NakayamaAlgebra, MoveError> {
    let n = a.n();
    let illegal = |why: String| MoveError::IllegalExtensionDescriptor(why);
    if i > n {
        return Err(illegal(format!("position {i} is outside 0..={n}")));
    }
    let up = |v: usize| if v <= i { v } else { v + 1 };
    let star = i + 1;
    let mut rels: Vec<Relation> = a
        .relations()
        .iter()
        .map(|r| Relation::new(up(r.start), up(r.end)))
        .collect();
    let at_end = i == 0 || i == n;
    match ext {
        Extension::None => {}
        Extension::RetargetEnd | Extension::RetargetStart if at_end => {
            return Err(illegal(format!("{ext:?} needs an interior position")));
        }
        Extension::RetargetEnd => {
            let r = a
                .relation_ending_at(i + 1)
                .ok_or_else(|| illegal(format!("no relation ends at {}", i + 1)))?;
            let k = rels.iter().position(|q| q.start == r.start).unwrap();
            rels[k] = Relation::new(r.start, star);
        }
        Extension::RetargetStart => {
            let r = a
                .relation_starting_at(i)
                .ok_or_else(|| illegal(format!("no relation starts at {i}")))?;
            let k = rels.iter().position(|q| q.start == r.start).unwrap();
            rels[k] = Relation::new(star, up(r.end));
        }
        Extension::RelationFrom(s) => {
            if s < 1 || s > i {
                return Err(illegal(format!("a relation into the new vertex cannot start at {s}")));
            }
            if !at_end {
                let r = a
                    .relation_ending_at(i + 1)
                    .ok_or_else(|| illegal(format!("no relation ends at {}", i + 1)))?;
                if s >= r.start {
                    return Err(illegal(format!(
                        "new relation must start before {}, the start of {r}",
                        r.start
                    )));
                }
            } else if i == 0 {
                return Err(illegal("nothing lies before the first vertex".into()));
            }
            rels.push(Relation::new(s, star));
        }
        Extension::RelationTo(t) => {
            if t <= i || t > n {
                return Err(illegal(format!("a relation out of the new vertex cannot end at {t}")));
            }
            if !at_end {
                let r = a
                    .relation_starting_at(i)
                    .ok_or_else(|| illegal(format!("no relation starts at {i}")))?;
                if t <= r.end {
                    return Err(illegal(format!(
                        "new relation must end after {}, the end of {r}",
                        r.end
                    )));
                }
            } else if i == n {
                return Err(illegal("nothing lies after the last vertex".into()));
            }
            rels.push(Relation::new(star, up(t)));
        }
    }
    let reduced = antichain_reduce(rels.clone());
    if reduced.len() != rels.len() {
        return Err(illegal(format!("{ext:?} at {i} would create nested relations")));
    }
    NakayamaAlgebra::from_relations(n + 1, rels.into_iter().map(|r| (r.start, r.end)))
        .map_err(|e| illegal(e.to_string()))
}

/// Deletes vertex `i` and composes the two arrows through it. A relation
/// ending (starting) at `i` is extended by one arrow to the right (left).
pub fn remove_vertex(a: &NakayamaAlgebra, i: usize) -> Result<NakayamaAlgebra, MoveError> {
    let n = a.n();
    if i < 1 || i > n || n < 2 {
        return Err(MoveError::VertexOutOfRange { vertex: i, n });
    }
    let down = |v: usize| if v > i { v - 1 } else { v };
    let mut rels = Vec::new();
    for &r in a.relations() {
        let (s, t) = if r.end == i {
            if i == n {
                return Err(MoveError::ExtensionFallsOffQuiver(r));
            }
            (r.start, i + 1)
        } else if r.start == i {
            if i == 1 {
                return Err(MoveError::ExtensionFallsOffQuiver(r));
            }
            (i - 1, r.end)
        } else {
            (r.start, r.end)
        };
        let (s, t) = (down(s), down(t));
        if t - s < 2 {
            return Err(MoveError::SplicedArrowVanishes(i));
        }
        rels.push(Relation::new(s, t));
    }
    rebuild(n - 1, rels)
}
