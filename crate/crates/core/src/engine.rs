//! Derived-category operations on perfect complexes: resolutions,
//! minimization, cones, the Nakayama functor, the Auslander–Reiten translate,
//! and Hom dimensions.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::NakayamaAlgebra;
use crate::complex::{
    Complex, EngineError, IntervalModule, ModuleComplex, PerfectComplex, Summand,
};
use crate::coxeter;
use crate::linalg::{Echelon, Matrix};
use crate::scalar::Scalar;

/// Minimal projective resolution of `M[u,v]`, ending in degree 0.
pub fn resolve(a: &Arc<NakayamaAlgebra>, m: IntervalModule) -> PerfectComplex {
    let mut tops = Vec::new();
    let (mut u, mut v) = (m.top, m.socle);
    loop {
        tops.push(u);
        let end = a.proj_end(u);
        if v == end {
            break;
        }
        (u, v) = (v + 1, end);
    }
    tops.reverse();
    let lo = 1 - tops.len() as i32;
    let diffs = vec![Matrix::identity(1); tops.len() - 1];
    let terms = tops.into_iter().map(|t| vec![t]).collect();
    Complex::from_parts(a.clone(), lo, terms, diffs)
}

/// Strips contractible summands `P_j --c--> P_j` by Gaussian elimination.
///
/// Pivots are taken lowest degree first, then by source and target position,
/// and the result is put in canonical term order.
pub fn minimize(x: &PerfectComplex) -> PerfectComplex {
    let a = x.algebra_arc().clone();
    let lo = x.lo();
    let mut terms: Vec<Vec<usize>> = x.degrees().map(|d| x.terms(d).to_vec()).collect();
    let mut diffs: Vec<Matrix> = x.degrees().filter_map(|d| x.diff(d).cloned()).collect();
    'search: loop {
        for k in 0..diffs.len() {
            let m = &diffs[k];
            for (col, &src) in terms[k].iter().enumerate() {
                for (row, &dst) in terms[k + 1].iter().enumerate() {
                    if src == dst && !m.get(row, col).is_zero() {
                        eliminate(&a, &mut terms, &mut diffs, k, col, row);
                        continue 'search;
                    }
                }
            }
        }
        break;
    }
    Complex::from_parts(a, lo, terms, diffs).canonical_order()
}

/// Removes the isomorphism component `terms[k][col] -> terms[k+1][row]`.
fn eliminate(
    a: &NakayamaAlgebra,
    terms: &mut [Vec<usize>],
    diffs: &mut [Matrix],
    k: usize,
    col: usize,
    row: usize,
) {
    let m = &diffs[k];
    let pivot_inv = m.get(row, col).recip();
    let keep_src: Vec<usize> = (0..terms[k].len()).filter(|&c| c != col).collect();
    let keep_dst: Vec<usize> = (0..terms[k + 1].len()).filter(|&r| r != row).collect();
    let mut reduced = m.select(&keep_dst, &keep_src);
    for (i, &y) in keep_dst.iter().enumerate() {
        let gamma = m.get(y, col);
        if gamma.is_zero() {
            continue;
        }
        let gamma = gamma * &pivot_inv;
        for (j, &x) in keep_src.iter().enumerate() {
            let beta = m.get(row, x);
            if beta.is_zero() || !a.proj_hom(terms[k][x], terms[k + 1][y]) {
                continue;
            }
            let v = reduced.get(i, j) - &(&gamma * beta);
            reduced.set(i, j, v);
        }
    }
    diffs[k] = reduced;
    if k > 0 {
        let prev = &diffs[k - 1];
        let rows: Vec<usize> = keep_src.clone();
        let cols: Vec<usize> = (0..prev.cols()).collect();
        diffs[k - 1] = prev.select(&rows, &cols);
    }
    if k + 1 < diffs.len() {
        let next = &diffs[k + 1];
        let rows: Vec<usize> = (0..next.rows()).collect();
        diffs[k + 1] = next.select(&rows, &keep_dst);
    }
    terms[k].remove(col);
    terms[k + 1].remove(row);
}

/// A degree-0 map of complexes, given degreewise by scalar matrices.
#[derive(Clone, Debug)]
pub struct ChainMap {
    source: PerfectComplex,
    target: PerfectComplex,
    maps: BTreeMap<i32, Matrix>,
}

impl ChainMap {
    pub fn new(
        source: PerfectComplex,
        target: PerfectComplex,
        maps: BTreeMap<i32, Matrix>,
    ) -> Result<Self, EngineError> {
        if source.algebra() != target.algebra() {
            return Err(EngineError::AlgebraMismatch);
        }
        let a = source.algebra();
        for (&d, m) in &maps {
            let (s, t) = (source.terms(d), target.terms(d));
            if m.rows() != t.len() || m.cols() != s.len() {
                return Err(EngineError::Shape(format!(
                    "chain map component in degree {d} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    t.len(),
                    s.len()
                )));
            }
            for (i, &b) in t.iter().enumerate() {
                for (j, &p) in s.iter().enumerate() {
                    if !m.get(i, j).is_zero() && !a.proj_hom(p, b) {
                        return Err(EngineError::UnsupportedEntry {
                            degree: d,
                            from: p.label(),
                            target: b.label(),
                        });
                    }
                }
            }
        }
        let f = ChainMap {
            source,
            target,
            maps,
        };
        let lo = f.source.lo().min(f.target.lo());
        let hi = f.source.hi().max(f.target.hi());
        for d in lo..=hi {
            let src = f.source.terms(d);
            let dst = f.target.terms(d + 1);
            let left = f
                .source
                .compose(&f.target.diff_or_zero(d), &f.component(d), src, dst);
            let right = f
                .source
                .compose(&f.component(d + 1), &f.source.diff_or_zero(d), src, dst);
            if left != right {
                return Err(EngineError::NotAChainMap { degree: d });
            }
        }
        Ok(f)
    }

    pub fn identity(x: &PerfectComplex) -> Self {
        let maps = x
            .degrees()
            .map(|d| (d, Matrix::identity(x.terms(d).len())))
            .collect();
        ChainMap {
            source: x.clone(),
            target: x.clone(),
            maps,
        }
    }

    pub fn source(&self) -> &PerfectComplex {
        &self.source
    }

    pub fn target(&self) -> &PerfectComplex {
        &self.target
    }

    pub fn component(&self, d: i32) -> Matrix {
        self.maps.get(&d).cloned().unwrap_or_else(|| {
            Matrix::zeros(self.target.terms(d).len(), self.source.terms(d).len())
        })
    }
}

/// Cone with terms `X^{d+1} ⊕ Y^d` and differential `[-d_X, 0; f, d_Y]`.
pub fn mapping_cone(f: &ChainMap) -> PerfectComplex {
    let (x, y) = (f.source(), f.target());
    if x.is_zero() && y.is_zero() {
        return x.clone();
    }
    let lo = if x.is_zero() {
        y.lo()
    } else if y.is_zero() {
        x.lo() - 1
    } else {
        (x.lo() - 1).min(y.lo())
    };
    let hi = (x.hi() - 1).max(y.hi());
    let term = |d: i32| -> Vec<usize> {
        let mut t = x.terms(d + 1).to_vec();
        t.extend_from_slice(y.terms(d));
        t
    };
    let terms: Vec<Vec<usize>> = (lo..=hi).map(term).collect();
    let diffs = (lo..hi)
        .map(|d| {
            let (xs, ys) = (x.terms(d + 1).len(), y.terms(d).len());
            let (xt, yt) = (x.terms(d + 2).len(), y.terms(d + 1).len());
            let mut m = Matrix::zeros(xt + yt, xs + ys);
            m.set_block(0, 0, &x.diff_or_zero(d + 1).neg());
            m.set_block(xt, 0, &f.component(d + 1));
            m.set_block(xt, xs, &y.diff_or_zero(d));
            m
        })
        .collect();
    Complex::from_parts(x.algebra_arc().clone(), lo, terms, diffs)
}

/// Replaces each `P_a` by the injective `I_a`, keeping all scalars.
pub fn nakayama_functor(x: &PerfectComplex) -> ModuleComplex {
    let a = x.algebra_arc().clone();
    let terms = x
        .degrees()
        .map(|d| {
            x.terms(d)
                .iter()
                .map(|&p| IntervalModule::injective(&a, p))
                .collect()
        })
        .collect();
    let diffs = x.degrees().filter_map(|d| x.diff(d).cloned()).collect();
    Complex::from_parts(a, x.lo(), terms, diffs)
}

/// Arrow action from vertex `i - 1` to `i` on a vertexwise coordinate vector.
fn transport(from: &[usize], to: &[usize], v: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); to.len()];
    let mut k = 0;
    for (pos, &summand) in from.iter().enumerate() {
        while k < to.len() && to[k] < summand {
            k += 1;
        }
        if k < to.len() && to[k] == summand {
            out[k] = v[pos].clone();
        }
    }
    out
}

/// Minimal perfect complex quasi-isomorphic to `c`.
///
/// Builds a quasi-isomorphism `P -> C` one degree at a time from the top,
/// choosing projective generators that cover the cycles of the partial cone
/// not yet hit by boundaries. Works vertex by vertex over the representation.
pub fn resolve_complex(c: &ModuleComplex) -> Result<PerfectComplex, EngineError> {
    let a = c.algebra_arc().clone();
    let n = a.n();
    if c.is_zero() {
        return Ok(Complex::zero(a));
    }
    let proj_basis = |terms: &[usize], i: usize| -> Vec<usize> {
        terms
            .iter()
            .enumerate()
            .filter(|(_, &p)| p <= i && i <= a.proj_end(p))
            .map(|(k, _)| k)
            .collect()
    };
    // Built from the top degree downwards.
    let mut p_terms: Vec<Vec<usize>> = Vec::new();
    let mut p_diffs: Vec<Matrix> = Vec::new();
    let mut eps: Vec<Matrix> = Vec::new();
    let empty: Vec<usize> = Vec::new();
    let mut d = c.hi();
    let limit = c.lo() - n as i32 - 2;
    loop {
        assert!(d >= limit, "resolution did not terminate");
        let (p1, p2): (&[usize], &[usize]) = match p_terms.len() {
            0 => (&empty, &empty),
            1 => (&p_terms[0], &empty),
            k => (&p_terms[k - 1], &p_terms[k - 2]),
        };
        if d < c.lo() && p1.is_empty() {
            break;
        }
        let dp1 = match p_diffs.last() {
            Some(m) if p_terms.len() >= 2 => m.clone(),
            _ => Matrix::zeros(p2.len(), p1.len()),
        };
        let eps1 = eps
            .last()
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(c.terms(d + 1).len(), p1.len()));
        let dc0 = c.diff_or_zero(d);
        let dc_prev = c.diff_or_zero(d - 1);

        let mut new_terms = Vec::new();
        let mut new_dp_cols: Vec<Vec<(usize, Scalar)>> = Vec::new();
        let mut new_eps_cols: Vec<Vec<(usize, Scalar)>> = Vec::new();
        let mut prev: Option<(Vec<usize>, Vec<usize>, Vec<Vec<Scalar>>)> = None;
        for i in 1..=n {
            let pb1 = proj_basis(p1, i);
            let pb2 = proj_basis(p2, i);
            let cb0 = c.vertex_basis(d, i);
            let cb1 = c.vertex_basis(d + 1, i);
            let cbm = c.vertex_basis(d - 1, i);
            let width = pb1.len() + cb0.len();
            let mut delta = Matrix::zeros(pb2.len() + cb1.len(), width);
            delta.set_block(0, 0, &dp1.select(&pb2, &pb1).neg());
            delta.set_block(pb2.len(), 0, &eps1.select(&cb1, &pb1));
            delta.set_block(pb2.len(), pb1.len(), &dc0.select(&cb1, &cb0));
            let cycles = delta.kernel();

            let mut span = Echelon::new(width);
            let boundary = dc_prev.select(&cb0, &cbm);
            for k in 0..boundary.cols() {
                let mut v = vec![Scalar::zero(); pb1.len()];
                v.extend(boundary.column(k));
                span.insert(v);
            }
            if let Some((ppb1, pcb0, pcycles)) = &prev {
                for z in pcycles {
                    let mut v = transport(ppb1, &pb1, &z[..ppb1.len()]);
                    v.extend(transport(pcb0, &cb0, &z[ppb1.len()..]));
                    span.insert(v);
                }
            }
            for z in &cycles {
                if span.insert(z.clone()) {
                    new_terms.push(i);
                    new_dp_cols.push(
                        pb1.iter()
                            .zip(&z[..pb1.len()])
                            .filter(|(_, x)| !x.is_zero())
                            .map(|(&k, x)| (k, -x))
                            .collect(),
                    );
                    new_eps_cols.push(
                        cb0.iter()
                            .zip(&z[pb1.len()..])
                            .filter(|(_, x)| !x.is_zero())
                            .map(|(&k, x)| (k, x.clone()))
                            .collect(),
                    );
                }
            }
            prev = Some((pb1, cb0, cycles));
        }

        if d < c.lo() && new_terms.is_empty() {
            break;
        }
        let mut dp = Matrix::zeros(p1.len(), new_terms.len());
        let mut e = Matrix::zeros(c.terms(d).len(), new_terms.len());
        for (j, col) in new_dp_cols.into_iter().enumerate() {
            for (k, v) in col {
                dp.set(k, j, v);
            }
        }
        for (j, col) in new_eps_cols.into_iter().enumerate() {
            for (k, v) in col {
                e.set(k, j, v);
            }
        }
        if !p_terms.is_empty() {
            p_diffs.push(dp);
        }
        p_terms.push(new_terms);
        eps.push(e);
        d -= 1;
    }
    // p_terms[0] sits in degree c.hi(); reverse into ascending order.
    let lo = c.hi() - p_terms.len() as i32 + 1;
    p_terms.reverse();
    p_diffs.reverse();
    let p = minimize(&Complex::from_parts(a, lo, p_terms, p_diffs));
    if p.homology_dims() != c.homology_dims() {
        return Err(EngineError::AuditFailed(
            "resolution changed cohomology".into(),
        ));
    }
    Ok(p)
}

/// Auslander–Reiten translate `τX = ν(X)[-1]`, recomputed as a minimal
/// perfect complex.
pub fn tau(x: &PerfectComplex) -> Result<PerfectComplex, EngineError> {
    if x.is_zero() {
        return Err(EngineError::ZeroComplex);
    }
    let resolved = resolve_complex(&nakayama_functor(x))?;
    let t = minimize(&resolved.shift(-1));
    let phi = coxeter::coxeter_matrix(x.algebra());
    if t.k_class() != coxeter::apply(&phi, &x.k_class()) {
        return Err(EngineError::AuditFailed(
            "class of the translate disagrees with the Coxeter matrix".into(),
        ));
    }
    Ok(t)
}

/// Variables and equations describing degree-0 chain maps `X -> Y`.
struct HomSystem {
    /// `(degree, target position, source position)` of each unknown.
    vars: Vec<(i32, usize, usize)>,
    index: BTreeMap<(i32, usize, usize), usize>,
    equations: Matrix,
}

impl HomSystem {
    fn new(x: &PerfectComplex, y: &PerfectComplex) -> Self {
        let a = x.algebra();
        let mut vars = Vec::new();
        let mut index = BTreeMap::new();
        for d in x.lo().max(y.lo())..=x.hi().min(y.hi()) {
            for (j, &p) in x.terms(d).iter().enumerate() {
                for (i, &q) in y.terms(d).iter().enumerate() {
                    if a.proj_hom(p, q) {
                        index.insert((d, i, j), vars.len());
                        vars.push((d, i, j));
                    }
                }
            }
        }
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        // (d_Y f - f d_X)[c][s] = 0 for s in X^d, c in Y^{d+1}.
        for d in x.lo()..=x.hi() {
            let (dx, dy) = (x.diff_or_zero(d), y.diff_or_zero(d));
            for (s, &p) in x.terms(d).iter().enumerate() {
                for (c, &q) in y.terms(d + 1).iter().enumerate() {
                    if !a.proj_hom(p, q) {
                        continue;
                    }
                    let mut row = vec![Scalar::zero(); vars.len()];
                    for b in 0..y.terms(d).len() {
                        if let Some(&v) = index.get(&(d, b, s)) {
                            row[v] = &row[v] + dy.get(c, b);
                        }
                    }
                    for t in 0..x.terms(d + 1).len() {
                        if let Some(&v) = index.get(&(d + 1, c, t)) {
                            row[v] = &row[v] - dx.get(t, s);
                        }
                    }
                    if row.iter().any(|e| !e.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
        let equations = if rows.is_empty() {
            Matrix::zeros(0, vars.len())
        } else {
            Matrix::from_rows(rows)
        };
        HomSystem {
            vars,
            index,
            equations,
        }
    }

    /// Matrix of `h ↦ d_Y h + h d_X` from homotopies into the unknowns.
    fn homotopies(&self, x: &PerfectComplex, y: &PerfectComplex) -> Matrix {
        let a = x.algebra();
        let mut cols: Vec<Vec<Scalar>> = Vec::new();
        for d in x.lo()..=x.hi() {
            for (s, &p) in x.terms(d).iter().enumerate() {
                for (b, &q) in y.terms(d - 1).iter().enumerate() {
                    if !a.proj_hom(p, q) {
                        continue;
                    }
                    // h = canonical P_p (deg d) -> P_q (deg d-1).
                    let mut col = vec![Scalar::zero(); self.vars.len()];
                    let dy = y.diff_or_zero(d - 1);
                    for (c, &r) in y.terms(d).iter().enumerate() {
                        if a.proj_hom(p, r) {
                            if let Some(&v) = self.index.get(&(d, c, s)) {
                                col[v] = &col[v] + dy.get(c, b);
                            }
                        }
                    }
                    let dx = x.diff_or_zero(d - 1);
                    for (t, &r) in x.terms(d - 1).iter().enumerate() {
                        if a.proj_hom(r, q) {
                            if let Some(&v) = self.index.get(&(d - 1, b, t)) {
                                col[v] = &col[v] + dx.get(s, t);
                            }
                        }
                    }
                    cols.push(col);
                }
            }
        }
        if cols.is_empty() {
            return Matrix::zeros(self.vars.len(), 0);
        }
        Matrix::from_rows(cols).transpose()
    }

    fn to_chain_map(&self, x: &PerfectComplex, y: &PerfectComplex, v: &[Scalar]) -> ChainMap {
        let mut maps: BTreeMap<i32, Matrix> = BTreeMap::new();
        for (k, &(d, i, j)) in self.vars.iter().enumerate() {
            let m = maps
                .entry(d)
                .or_insert_with(|| Matrix::zeros(y.terms(d).len(), x.terms(d).len()));
            m.set(i, j, v[k].clone());
        }
        ChainMap {
            source: x.clone(),
            target: y.clone(),
            maps,
        }
    }
}

/// `dim Hom(X, Y)` in the homotopy category.
pub fn hom_dim(x: &PerfectComplex, y: &PerfectComplex) -> usize {
    let sys = HomSystem::new(x, y);
    let cycles = sys.vars.len() - sys.equations.rank();
    cycles - sys.homotopies(x, y).rank()
}

/// Basis of the space of degree-0 chain maps `X -> Y`.
pub fn chain_maps(x: &PerfectComplex, y: &PerfectComplex) -> Vec<ChainMap> {
    let sys = HomSystem::new(x, y);
    sys.equations
        .kernel()
        .iter()
        .map(|v| sys.to_chain_map(x, y, v))
        .collect()
}

/// Whether a chain map between minimal complexes is an isomorphism: in each
/// degree, the block between copies of the same projective must be invertible.
fn is_isomorphism(f: &ChainMap) -> bool {
    let (x, y) = (f.source(), f.target());
    for d in x.degrees() {
        let m = f.component(d);
        let (s, t) = (x.terms(d), y.terms(d));
        let mut indices: Vec<usize> = s.to_vec();
        indices.dedup();
        for &p in &indices {
            let rows: Vec<usize> = (0..t.len()).filter(|&i| t[i] == p).collect();
            let cols: Vec<usize> = (0..s.len()).filter(|&j| s[j] == p).collect();
            if !m.select(&rows, &cols).is_invertible() {
                return false;
            }
        }
    }
    true
}

/// Isomorphism test for minimal complexes.
///
/// Minimal complexes are isomorphic in the derived category exactly when they
/// are isomorphic as complexes. The invertible chain maps form a Zariski-open
/// subset of the chain-map space, so basis elements are tried first and then a
/// fixed sequence of pseudo-random combinations.
pub fn are_isomorphic(x: &PerfectComplex, y: &PerfectComplex) -> bool {
    if x.algebra() != y.algebra() || x.term_key() != y.term_key() {
        return false;
    }
    if x.is_zero() {
        return true;
    }
    let x = x.canonical_order();
    let y = y.canonical_order();
    let sys = HomSystem::new(&x, &y);
    let basis = sys.equations.kernel();
    if basis.is_empty() {
        return false;
    }
    if basis
        .iter()
        .any(|v| is_isomorphism(&sys.to_chain_map(&x, &y, v)))
    {
        return true;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..16 {
        let mut v = vec![Scalar::zero(); sys.vars.len()];
        for b in &basis {
            let coeff = Scalar::from_int(rng.gen_range(-97..=97));
            for (x, e) in v.iter_mut().zip(b) {
                *x = &*x + &(&coeff * e);
            }
        }
        if is_isomorphism(&sys.to_chain_map(&x, &y, &v)) {
            return true;
        }
    }
    false
}

/// Checks that `seq` is a chain of nonzero canonical maps with zero
/// composites, read as `P_{x_1} -> P_{x_2} -> ...`.
fn validate_strand(a: &NakayamaAlgebra, seq: &[usize]) -> Result<(), EngineError> {
    for &x in seq {
        a.check_vertex(x)?;
    }
    for w in seq.windows(2) {
        if w[1] >= w[0] || !a.proj_hom(w[0], w[1]) {
            return Err(EngineError::InvalidStrand(format!(
                "no nonzero map P{} -> P{}",
                w[0], w[1]
            )));
        }
    }
    for w in seq.windows(3) {
        if a.proj_hom(w[0], w[2]) {
            return Err(EngineError::InvalidStrand(format!(
                "composite P{} -> P{} -> P{} is nonzero",
                w[0], w[1], w[2]
            )));
        }
    }
    Ok(())
}

/// Intertwining test for two strands sharing their first term: one strand is
/// smaller at position 2 and larger at a later position, with the strands
/// agreeing in between. This makes the merged two-strand complex
/// indecomposable.
pub fn two_strand_indecomposable(
    a: &NakayamaAlgebra,
    c: &[usize],
    f: &[usize],
) -> Result<bool, EngineError> {
    validate_strand(a, c)?;
    validate_strand(a, f)?;
    if c.is_empty() || c.first() != f.first() {
        return Err(EngineError::InvalidStrand(
            "strands must share their first term".into(),
        ));
    }
    let crosses = |low: &[usize], high: &[usize]| -> bool {
        if low.len() < 2 || high.len() < 2 || low[1] >= high[1] {
            return false;
        }
        for i in 2..low.len().min(high.len()) {
            if low[i] > high[i] {
                return true;
            }
            if low[i] != high[i] {
                return false;
            }
        }
        false
    };
    Ok(crosses(c, f) || crosses(f, c))
}
