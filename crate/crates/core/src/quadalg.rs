//! Graded quadratic algebras `T = k<V>/(R)` with `R ⊆ V ⊗ V`.
//!
//! Degree pieces are built one at a time: `T_n` is the quotient of `T_{n-1} ⊗ V`
//! by the image of `T_{n-2} ⊗ R`. Each piece keeps the projection from
//! `T_{n-1} ⊗ V` onto its basis, which is enough for multiplication, module
//! structures and recovering the ideal component inside `V^{⊗n}`.
//!
//! Words in `V^{⊗n}` are indexed left-factor-major: `x_{a_1}...x_{a_n}` has
//! index `sum a_j g^{n-j}` where `g = dim V`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{ElemRepr, Field, FieldElem, FieldSpec, GfError, Matrix, Subspace};

/// Default guard on `g^N`, the coordinate count of a vector in `V^{⊗N}`.
pub const DEFAULT_WORD_BUDGET: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuadError {
    #[error("{gens}^{degree} coordinates exceed the budget of {budget}")]
    BudgetExceeded { gens: usize, degree: usize, budget: u64 },
    #[error("vector has length {got}, expected {expected} for degree {degree}")]
    DegreeMismatch { degree: usize, expected: usize, got: usize },
    #[error("Hilbert function never reaches 0 up to degree {cutoff}: {dims:?}")]
    Inconclusive { cutoff: usize, dims: Vec<usize> },
    #[error("invalid relation: {0}")]
    BadRelation(String),
    #[error("malformed presentation: {0}")]
    Malformed(String),
    #[error(transparent)]
    Field(#[from] GfError),
}

/// One degree of the algebra.
#[derive(Clone, Debug)]
pub struct GradedPiece {
    pub degree: usize,
    pub dim: usize,
    /// Word index in `V^{⊗n}` of each quotient basis element (normal words).
    pub quotient_basis: Vec<usize>,
    /// Basis element `β` of `T_n` is `(basis element α of T_{n-1}) · x_k`,
    /// stored as `(α, k)`.
    pub parent: Vec<(usize, usize)>,
    /// Row `α * g + k` holds the coordinates of `e_α · x_k` in `T_n`.
    pub projection: Matrix,
}

/// `sum c x_i x_j` terms of a quadratic relation.
pub type RelationTerms = Vec<(FieldElem, usize, usize)>;

pub struct QuadAlgebra {
    field: Field,
    names: Vec<String>,
    relations: Subspace,
    supplied: usize,
    word_budget: u64,
    cache: RwLock<Vec<Arc<GradedPiece>>>,
}

impl Clone for QuadAlgebra {
    fn clone(&self) -> Self {
        QuadAlgebra {
            field: self.field.clone(),
            names: self.names.clone(),
            relations: self.relations.clone(),
            supplied: self.supplied,
            word_budget: self.word_budget,
            cache: RwLock::new(self.cache.read().expect("cache lock").clone()),
        }
    }
}

impl fmt::Debug for QuadAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QuadAlgebra")
            .field("field", &self.field)
            .field("generators", &self.names)
            .field("relations", &self.relations_display())
            .finish()
    }
}

impl PartialEq for QuadAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.names == other.names && self.relations == other.relations
    }
}

impl QuadAlgebra {
    /// Builds `k<V>/(R)`; `R` is the span of `relation_vectors` in `V ⊗ V`,
    /// coordinate `i * g + j` standing for `x_i x_j`.
    pub fn new(field: &Field, names: &[&str], relation_vectors: &[Vec<FieldElem>]) -> Result<QuadAlgebra, QuadError> {
        let g = names.len();
        for v in relation_vectors {
            if v.len() != g * g {
                return Err(QuadError::BadRelation(format!(
                    "relation has {} coordinates, expected {}",
                    v.len(),
                    g * g
                )));
            }
        }
        Ok(QuadAlgebra {
            field: field.clone(),
            names: names.iter().map(|s| s.to_string()).collect(),
            relations: Subspace::span(field, g * g, relation_vectors),
            supplied: relation_vectors.len(),
            word_budget: DEFAULT_WORD_BUDGET,
            cache: RwLock::new(Vec::new()),
        })
    }

    /// Builds from term lists `[(c, i, j)]`, each meaning `sum c x_i x_j`.
    pub fn from_terms(field: &Field, names: &[&str], relations: &[RelationTerms]) -> Result<QuadAlgebra, QuadError> {
        let g = names.len();
        let mut vecs = Vec::with_capacity(relations.len());
        for rel in relations {
            let mut v = vec![FieldElem::ZERO; g * g];
            for &(c, i, j) in rel {
                if i >= g || j >= g {
                    return Err(QuadError::BadRelation(format!("monomial ({i},{j}) uses a missing generator")));
                }
                v[i * g + j] = field.add(v[i * g + j], c);
            }
            vecs.push(v);
        }
        QuadAlgebra::new(field, names, &vecs)
    }

    pub fn with_word_budget(mut self, budget: u64) -> QuadAlgebra {
        self.word_budget = budget;
        self
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n_gens(&self) -> usize {
        self.names.len()
    }

    pub fn gen_names(&self) -> &[String] {
        &self.names
    }

    pub fn relations(&self) -> &Subspace {
        &self.relations
    }

    /// Number of supplied relation vectors that were linearly dependent on the others.
    pub fn dependent_relations(&self) -> usize {
        self.supplied - self.relations.dim()
    }

    /// Human-readable relations, one per basis vector, e.g. `x2x1 - x1x2`.
    pub fn relations_display(&self) -> Vec<String> {
        let g = self.n_gens();
        self.relations
            .basis_vectors()
            .iter()
            .map(|v| {
                let mut out = String::new();
                for (idx, &c) in v.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let mono = format!("{}{}", self.names[idx / g], self.names[idx % g]);
                    let coef = self.field.format(c);
                    let term = if c == FieldElem::ONE { mono } else { format!("({coef}){mono}") };
                    if !out.is_empty() {
                        out.push_str(" + ");
                    }
                    out.push_str(&term);
                }
                out
            })
            .collect()
    }

    fn check_budget(&self, n: usize) -> Result<(), QuadError> {
        let g = self.n_gens() as u64;
        let words = (0..n).try_fold(1u64, |acc, _| acc.checked_mul(g));
        match words {
            Some(w) if w <= self.word_budget => Ok(()),
            _ => Err(QuadError::BudgetExceeded { gens: self.n_gens(), degree: n, budget: self.word_budget }),
        }
    }

    /// The degree-n piece, computing and caching lower degrees as needed.
    pub fn piece(&self, n: usize) -> Result<Arc<GradedPiece>, QuadError> {
        if let Some(p) = self.cache.read().expect("cache lock").get(n) {
            return Ok(p.clone());
        }
        self.check_budget(n)?;
        let mut cache = self.cache.write().expect("cache lock");
        while cache.len() <= n {
            let next = self.next_piece(&cache);
            cache.push(Arc::new(next));
        }
        Ok(cache[n].clone())
    }

    fn next_piece(&self, lower: &[Arc<GradedPiece>]) -> GradedPiece {
        let f = &self.field;
        let g = self.n_gens();
        let n = lower.len();
        if n == 0 {
            return GradedPiece {
                degree: 0,
                dim: 1,
                quotient_basis: vec![0],
                parent: Vec::new(),
                projection: Matrix::zeros(f, 0, 1),
            };
        }
        let prev = &lower[n - 1];
        let ambient = prev.dim * g;
        // image of T_{n-2} ⊗ R inside T_{n-1} ⊗ V
        let mut spans = Vec::new();
        if n >= 2 {
            let pp = &lower[n - 2];
            let proj = &prev.projection;
            for gamma in 0..pp.dim {
                for r in 0..self.relations.dim() {
                    let rel = self.relations.basis().row(r);
                    let mut v = vec![FieldElem::ZERO; ambient];
                    for (ab, &c) in rel.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let (a, b) = (ab / g, ab % g);
                        let left = proj.row(gamma * g + a);
                        for (alpha, &x) in left.iter().enumerate() {
                            if !x.is_zero() {
                                let idx = alpha * g + b;
                                v[idx] = f.add(v[idx], f.mul(c, x));
                            }
                        }
                    }
                    spans.push(v);
                }
            }
        }
        let k = Subspace::span(f, ambient, &spans);
        let mut is_pivot = vec![None; ambient];
        for (r, &pc) in k.pivots().iter().enumerate() {
            is_pivot[pc] = Some(r);
        }
        let free: Vec<usize> = (0..ambient).filter(|&c| is_pivot[c].is_none()).collect();
        let mut position = vec![usize::MAX; ambient];
        for (q, &c) in free.iter().enumerate() {
            position[c] = q;
        }
        let dim = free.len();
        let mut projection = Matrix::zeros(f, ambient, dim);
        for c in 0..ambient {
            match is_pivot[c] {
                None => projection.set(c, position[c], FieldElem::ONE),
                Some(r) => {
                    let row = k.basis().row(r);
                    for (q, &fc) in free.iter().enumerate() {
                        let x = row[fc];
                        if !x.is_zero() {
                            projection.set(c, q, f.neg(x));
                        }
                    }
                }
            }
        }
        let parent: Vec<(usize, usize)> = free.iter().map(|&c| (c / g, c % g)).collect();
        let quotient_basis = parent.iter().map(|&(alpha, kk)| prev.quotient_basis[alpha] * g + kk).collect();
        GradedPiece { degree: n, dim, quotient_basis, parent, projection }
    }

    /// `(dim T_0, ..., dim T_N)`.
    pub fn hilbert(&self, max_deg: usize) -> Result<Vec<usize>, QuadError> {
        self.piece(max_deg)?;
        (0..=max_deg).map(|n| self.piece(n).map(|p| p.dim)).collect()
    }

    /// Letters of a word index of length `n`.
    pub fn word_letters(&self, word: usize, n: usize) -> Vec<usize> {
        let g = self.n_gens();
        let mut letters = vec![0; n];
        let mut w = word;
        for slot in letters.iter_mut().rev() {
            *slot = w % g;
            w /= g;
        }
        letters
    }

    /// Normal word of each basis element of `T_n`, e.g. `x1x2x2`.
    pub fn basis_words(&self, n: usize) -> Result<Vec<String>, QuadError> {
        let piece = self.piece(n)?;
        Ok(piece
            .quotient_basis
            .iter()
            .map(|&w| {
                let s: String = self.word_letters(w, n).iter().map(|&k| self.names[k].as_str()).collect();
                if s.is_empty() {
                    "1".to_string()
                } else {
                    s
                }
            })
            .collect())
    }

    /// `v · x_k` for `v ∈ T_n`.
    pub fn mul_letter(&self, n: usize, v: &[FieldElem], k: usize) -> Result<Vec<FieldElem>, QuadError> {
        let cur = self.piece(n)?;
        if v.len() != cur.dim {
            return Err(QuadError::DegreeMismatch { degree: n, expected: cur.dim, got: v.len() });
        }
        let next = self.piece(n + 1)?;
        let g = self.n_gens();
        let f = &self.field;
        let mut out = vec![FieldElem::ZERO; next.dim];
        for (alpha, &c) in v.iter().enumerate() {
            f.axpy(&mut out, c, next.projection.row(alpha * g + k));
        }
        Ok(out)
    }

    /// Product of `u ∈ T_n` and `v ∈ T_m` in `T_{n+m}`.
    pub fn graded_multiply(
        &self,
        n: usize,
        m: usize,
        u: &[FieldElem],
        v: &[FieldElem],
    ) -> Result<Vec<FieldElem>, QuadError> {
        let pn = self.piece(n)?;
        let pm = self.piece(m)?;
        if u.len() != pn.dim {
            return Err(QuadError::DegreeMismatch { degree: n, expected: pn.dim, got: u.len() });
        }
        if v.len() != pm.dim {
            return Err(QuadError::DegreeMismatch { degree: m, expected: pm.dim, got: v.len() });
        }
        let f = &self.field;
        let target = self.piece(n + m)?;
        let mut out = vec![FieldElem::ZERO; target.dim];
        for (beta, &c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut cur = u.to_vec();
            for (deg, k) in self.word_letters(pm.quotient_basis[beta], m).into_iter().enumerate() {
                cur = self.mul_letter(n + deg, &cur, k)?;
            }
            f.axpy(&mut out, c, &cur);
        }
        Ok(out)
    }

    /// `g^n x dim T_n` matrix sending each word to its class in `T_n`.
    pub fn word_projection(&self, n: usize) -> Result<Matrix, QuadError> {
        self.check_budget(n)?;
        let f = &self.field;
        let g = self.n_gens();
        let mut cur = Matrix::identity(f, 1);
        for deg in 1..=n {
            let piece = self.piece(deg)?;
            let mut next = Matrix::zeros(f, cur.rows() * g, piece.dim);
            for w in 0..cur.rows() {
                for k in 0..g {
                    let mut row = vec![FieldElem::ZERO; piece.dim];
                    for (alpha, &c) in cur.row(w).iter().enumerate() {
                        f.axpy(&mut row, c, piece.projection.row(alpha * g + k));
                    }
                    next.row_mut(w * g + k).copy_from_slice(&row);
                }
            }
            cur = next;
        }
        Ok(cur)
    }

    /// The degree-n component of the ideal `(R)` inside `V^{⊗n}`.
    pub fn ideal_component(&self, n: usize) -> Result<Subspace, QuadError> {
        Ok(self.word_projection(n)?.transpose().kernel())
    }

    /// `dim(R ⊗ V ∩ V ⊗ R)` inside `V^{⊗3}`.
    pub fn overlap_dim(&self) -> usize {
        let (rv, vr) = self.r_v_and_v_r();
        rv.intersect(&vr).expect("same ambient").dim()
    }

    pub(crate) fn r_v_and_v_r(&self) -> (Subspace, Subspace) {
        let g = self.n_gens();
        let f = &self.field;
        let mut rv = Vec::new();
        let mut vr = Vec::new();
        for r in self.relations.basis_vectors() {
            for k in 0..g {
                let mut a = vec![FieldElem::ZERO; g * g * g];
                let mut b = vec![FieldElem::ZERO; g * g * g];
                for (ab, &c) in r.iter().enumerate() {
                    a[ab * g + k] = c;
                    b[k * g * g + ab] = c;
                }
                rv.push(a);
                vr.push(b);
            }
        }
        (Subspace::span(f, g * g * g, &rv), Subspace::span(f, g * g * g, &vr))
    }

    /// Quadratic dual `k<V*>/(R^⊥)` with generators `y1, y2, ...`.
    pub fn koszul_dual(&self) -> QuadAlgebra {
        let names: Vec<String> = (1..=self.n_gens()).map(|i| format!("y{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let perp = self.relations.perp();
        QuadAlgebra::new(&self.field, &refs, &perp.basis_vectors()).expect("perp lives in V ⊗ V")
    }

    pub fn to_presentation(&self) -> Presentation {
        let g = self.n_gens();
        Presentation {
            field: FieldSpec::of(&self.field),
            generators: self.names.clone(),
            relations: self
                .relations
                .basis_vectors()
                .iter()
                .map(|v| {
                    v.iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(idx, &c)| Term { monomial: [idx / g, idx % g], coeff: ElemRepr::of(&self.field, c) })
                        .collect()
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub monomial: [usize; 2],
    pub coeff: ElemRepr,
}

/// JSON presentation `{field, generators, relations}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub field: FieldSpec,
    pub generators: Vec<String>,
    pub relations: Vec<Vec<Term>>,
}

impl Presentation {
    pub fn build(&self) -> Result<QuadAlgebra, QuadError> {
        let field = self.field.build()?;
        if self.generators.is_empty() {
            return Err(QuadError::Malformed("at least one generator is required".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for name in &self.generators {
            if !seen.insert(name) {
                return Err(QuadError::Malformed(format!("generator {name:?} is repeated")));
            }
        }
        let mut rels = Vec::with_capacity(self.relations.len());
        for (r, terms) in self.relations.iter().enumerate() {
            let mut rel = Vec::with_capacity(terms.len());
            for (t, term) in terms.iter().enumerate() {
                let c = term
                    .coeff
                    .to_elem(&field)
                    .map_err(|e| QuadError::Malformed(format!("relations[{r}][{t}].coeff: {e}")))?;
                rel.push((c, term.monomial[0], term.monomial[1]));
            }
            rels.push(rel);
        }
        let names: Vec<&str> = self.generators.iter().map(String::as_str).collect();
        QuadAlgebra::from_terms(&field, &names, &rels)
    }
}

/// Outcome of the Frobenius certificate on a finite-dimensional quadratic algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrobeniusReport {
    pub finite: bool,
    pub dims: Vec<usize>,
    pub top_degree: usize,
    pub top_dim_one: bool,
    pub symmetric: bool,
    /// Rank of the pairing `B_i × B_{d-i} -> B_d` for each i.
    pub pairing_ranks: Vec<usize>,
    pub pairings_nondegenerate: bool,
}

impl FrobeniusReport {
    pub fn passed(&self) -> bool {
        self.finite && self.top_dim_one && self.symmetric && self.pairings_nondegenerate
    }
}

/// Checks that `B` is finite dimensional within `cutoff`, with 1-dimensional top
/// degree `d`, symmetric Hilbert function and nondegenerate pairings into `B_d`.
pub fn frobenius_check(b: &QuadAlgebra, cutoff: usize) -> Result<FrobeniusReport, QuadError> {
    let dims = b.hilbert(cutoff.max(1))?;
    let Some(first_zero) = dims.iter().position(|&d| d == 0) else {
        return Err(QuadError::Inconclusive { cutoff, dims });
    };
    let finite = dims[first_zero..].iter().all(|&d| d == 0);
    let top = first_zero - 1;
    let top_dim_one = dims[top] == 1;
    let symmetric = (0..=top).all(|i| dims[i] == dims[top - i]);
    let f = b.field();
    let mut pairing_ranks = Vec::with_capacity(top + 1);
    let mut nondegenerate = top_dim_one && symmetric;
    for i in 0..=top {
        let (di, dj) = (dims[i], dims[top - i]);
        // rows: e_a ⊗ e_b, columns: coordinates in B_top
        let mut m = Matrix::zeros(f, di * dj, dims[top]);
        for a in 0..di {
            let mut ea = vec![FieldElem::ZERO; di];
            ea[a] = FieldElem::ONE;
            for bb in 0..dj {
                let mut eb = vec![FieldElem::ZERO; dj];
                eb[bb] = FieldElem::ONE;
                let prod = b.graded_multiply(i, top - i, &ea, &eb)?;
                m.row_mut(a * dj + bb).copy_from_slice(&prod);
            }
        }
        let rank = if top_dim_one {
            // bilinear form matrix di x dj
            Matrix::from_vec(f, di, dj, m.column(0)).rank()
        } else {
            m.rank()
        };
        pairing_ranks.push(rank);
        if !(top_dim_one && rank == di && rank == dj) {
            nondegenerate = false;
        }
    }
    Ok(FrobeniusReport {
        finite,
        dims,
        top_degree: top,
        top_dim_one,
        symmetric,
        pairing_ranks,
        pairings_nondegenerate: nondegenerate,
    })
}

/// Term-list helper: `rel(&f, &[(1, 1, 0), (-1, 0, 1)])` is `x2x1 - x1x2`.
pub fn rel(field: &Field, terms: &[(i64, usize, usize)]) -> RelationTerms {
    terms.iter().map(|&(c, i, j)| (field.from_int(c), i, j)).collect()
}

/// `k[x_1..x_n]`.
pub fn polynomial_ring(field: &Field, n: usize) -> QuadAlgebra {
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut rels = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            rels.push(rel(field, &[(1, j, i), (-1, i, j)]));
        }
    }
    QuadAlgebra::from_terms(field, &refs, &rels).expect("generators exist")
}

/// Skew polynomial ring with `x_j x_i = q_{ij} x_i x_j` for `i < j`; `q` is
/// keyed by `(i, j)` and missing entries are 1.
pub fn skew_polynomial_ring(field: &Field, n: usize, q: &BTreeMap<(usize, usize), FieldElem>) -> QuadAlgebra {
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut rels = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let qij = q.get(&(i, j)).copied().unwrap_or(FieldElem::ONE);
            rels.push(vec![(FieldElem::ONE, j, i), (field.neg(qij), i, j)]);
        }
    }
    QuadAlgebra::from_terms(field, &refs, &rels).expect("generators exist")
}
