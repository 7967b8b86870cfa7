//! U-actions on quadratic algebras.
//!
//! `u` and `w` are primitive, so they act on `T = k<V>/(R)` as derivations
//! extending their action on `V`. Such an extension exists exactly when both
//! derivations of the tensor algebra map `R` into `R`. A derivation vanishing on
//! `V` vanishes on `T`, and `u^p`, `w^p - w`, `[w, u] - u` are again derivations
//! in characteristic p, so the module relations need only be checked on `V`.

use std::path::Path;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{ElemRepr, Field, FieldElem, Matrix, Subspace};
use crate::quadalg::{Presentation, QuadAlgebra, QuadError};
use crate::umod::{self, check_relations, Decomposition, ModError, UModule};

/// Default cap on the nominal search size `|F|^(2 dim D)` of [`solve_actions`].
pub const DEFAULT_ACTION_BUDGET: u64 = 100_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ActionError {
    #[error("matrices do not define a U-module: {0}")]
    NotUModule(String),
    #[error("the derivation extension of {0} does not preserve the relations")]
    RelationsNotPreserved(&'static str),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("search space |F|^(2 dim D) = {q}^{exponent} exceeds the budget {budget}")]
    BudgetExceeded { q: u32, exponent: usize, budget: u64 },
    #[error("malformed action file: {0}")]
    Malformed(String),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Module(#[from] ModError),
}

/// An algebra together with a U-module structure on its generators whose
/// derivation extension preserves the relations.
#[derive(Clone, Debug)]
pub struct UAction {
    algebra: Arc<QuadAlgebra>,
    v: UModule,
}

/// `(X ⊗ 1 + 1 ⊗ X)` applied to a vector of `V ⊗ V`.
fn apply_derivation(x: &Matrix, v: &[FieldElem]) -> Vec<FieldElem> {
    let f = x.field();
    let g = x.rows();
    let mut out = vec![FieldElem::ZERO; g * g];
    for (ab, &c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (a, b) = (ab / g, ab % g);
        for j in 0..g {
            let xa = x.get(j, a);
            if !xa.is_zero() {
                out[j * g + b] = f.add(out[j * g + b], f.mul(c, xa));
            }
            let xb = x.get(j, b);
            if !xb.is_zero() {
                out[a * g + j] = f.add(out[a * g + j], f.mul(c, xb));
            }
        }
    }
    out
}

/// Whether `X ⊗ 1 + 1 ⊗ X` maps the relation space into itself.
pub fn preserves_relations(alg: &QuadAlgebra, x: &Matrix) -> bool {
    let r = alg.relations();
    (0..r.dim()).all(|i| r.contains(&apply_derivation(x, r.basis().row(i))).expect("ambient g^2"))
}

pub fn make_action(alg: Arc<QuadAlgebra>, rho_u: Matrix, rho_w: Matrix) -> Result<UAction, ActionError> {
    let g = alg.n_gens();
    for (name, m) in [("rho_u", &rho_u), ("rho_w", &rho_w)] {
        if m.rows() != g || m.cols() != g {
            return Err(ActionError::Shape(format!("{name} is {}x{}, expected {g}x{g}", m.rows(), m.cols())));
        }
        if m.field() != alg.field() {
            return Err(ActionError::Shape(format!("{name} is over {}, algebra over {}", m.field(), alg.field())));
        }
    }
    check_relations(&rho_u, &rho_w).map_err(ActionError::NotUModule)?;
    if !preserves_relations(&alg, &rho_u) {
        return Err(ActionError::RelationsNotPreserved("u"));
    }
    if !preserves_relations(&alg, &rho_w) {
        return Err(ActionError::RelationsNotPreserved("w"));
    }
    let v = UModule::new(rho_u, rho_w)?;
    Ok(UAction { algebra: alg, v })
}

impl UAction {
    pub fn algebra(&self) -> &Arc<QuadAlgebra> {
        &self.algebra
    }

    pub fn v_module(&self) -> &UModule {
        &self.v
    }

    pub fn field(&self) -> &Field {
        self.algebra.field()
    }

    pub fn p(&self) -> u32 {
        self.v.p()
    }

    /// Inner-faithful iff `u` acts nontrivially on `V`.
    pub fn is_inner_faithful(&self) -> bool {
        !self.v.mat_u().is_zero()
    }

    /// Matrices of `u` and `w` on `T_0, ..., T_N` in the quotient bases.
    pub fn induced_matrices(&self, max_deg: usize) -> Result<Vec<(Matrix, Matrix)>, ActionError> {
        let alg = &self.algebra;
        let f = alg.field();
        let g = alg.n_gens();
        let mut out: Vec<(Matrix, Matrix)> = Vec::with_capacity(max_deg + 1);
        let zero = Matrix::zeros(f, 1, 1);
        out.push((zero.clone(), zero));
        for n in 1..=max_deg {
            let piece = alg.piece(n)?;
            let prev_dim = alg.piece(n - 1)?.dim;
            let mut pair = Vec::with_capacity(2);
            for (k_idx, x) in [self.v.mat_u(), self.v.mat_w()].into_iter().enumerate() {
                let prev = if k_idx == 0 { &out[n - 1].0 } else { &out[n - 1].1 };
                let mut d = Matrix::zeros(f, piece.dim, piece.dim);
                for (beta, &(alpha, k)) in piece.parent.iter().enumerate() {
                    let mut col = vec![FieldElem::ZERO; piece.dim];
                    // (D e_α) ⊗ x_k
                    for gamma in 0..prev_dim {
                        let c = prev.get(gamma, alpha);
                        f.axpy(&mut col, c, piece.projection.row(gamma * g + k));
                    }
                    // e_α ⊗ (X x_k)
                    for j in 0..g {
                        f.axpy(&mut col, x.get(j, k), piece.projection.row(alpha * g + j));
                    }
                    for (r, &c) in col.iter().enumerate() {
                        d.set(r, beta, c);
                    }
                }
                pair.push(d);
            }
            let w = pair.pop().expect("two matrices");
            let u = pair.pop().expect("two matrices");
            out.push((u, w));
        }
        Ok(out)
    }

    /// `T_n` as a U-module; checks the module relations on the result.
    pub fn induced_module(&self, n: usize) -> Result<UModule, ActionError> {
        let (u, w) = self.induced_matrices(n)?.pop().expect("degree n present");
        Ok(UModule::new(u, w)?)
    }

    pub fn graded_decompose(&self, max_deg: usize) -> Result<Vec<Decomposition>, ActionError> {
        self.induced_matrices(max_deg)?.into_iter().map(|(u, w)| Ok(umod::decompose(&UModule::new(u, w)?))).collect()
    }

    /// `dim(ker u ∩ ker w)` on each `T_n`, as an intersection of kernels.
    pub fn invariant_dims(&self, max_deg: usize) -> Result<Vec<usize>, ActionError> {
        Ok(self
            .induced_matrices(max_deg)?
            .iter()
            .map(|(u, w)| u.kernel().intersect(&w.kernel()).expect("same ambient").dim())
            .collect())
    }

    /// Same quantity as [`UAction::invariant_dims`], via the kernel of `u` and `w` stacked.
    pub fn invariant_dims_stacked(&self, max_deg: usize) -> Result<Vec<usize>, ActionError> {
        Ok(self.induced_matrices(max_deg)?.iter().map(|(u, w)| u.vstack(w).kernel().dim()).collect())
    }

    /// Elements `sum c_ij u^i w^j` (coordinate `i * p + j`) acting as zero on
    /// `T_0 ⊕ ... ⊕ T_N`.
    pub fn annihilator(&self, max_deg: usize) -> Result<Subspace, ActionError> {
        let p = self.p() as usize;
        let f = self.field();
        let mats = self.induced_matrices(max_deg)?;
        let rows: usize = mats.iter().map(|(u, _)| u.rows() * u.rows()).sum();
        let mut sys = Matrix::zeros(f, rows, p * p);
        let mut offset = 0;
        for (u, w) in &mats {
            let n = u.rows();
            let mut upow = Matrix::identity(f, n);
            for i in 0..p {
                let mut word = upow.clone();
                for j in 0..p {
                    for (e, &x) in word.entries().iter().enumerate() {
                        sys.set(offset + e, i * p + j, x);
                    }
                    word = word.mul(w);
                }
                upow = upow.mul(u);
            }
            offset += n * n;
        }
        Ok(sys.kernel())
    }
}

/// The element `wu = uw + u` of U in PBW coordinates.
pub fn pbw_wu(field: &Field) -> Vec<FieldElem> {
    let p = field.characteristic() as usize;
    let mut v = vec![FieldElem::ZERO; p * p];
    v[p] = FieldElem::ONE; // u
    v[p + 1] = FieldElem::ONE; // uw
    v
}

/// A pair of matrices on `V` satisfying the module relations and preserving `R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionSolution {
    pub rho_u: Matrix,
    pub rho_w: Matrix,
    pub derivation_space_dim: usize,
}

impl ActionSolution {
    pub fn is_inner_faithful(&self) -> bool {
        !self.rho_u.is_zero()
    }
}

/// `D = {X : (X ⊗ 1 + 1 ⊗ X)(R) ⊆ R}` as a subspace of `g × g` matrices, with
/// `X[r][c]` at coordinate `r * g + c`.
pub fn derivation_space(alg: &QuadAlgebra) -> Subspace {
    let f = alg.field();
    let g = alg.n_gens();
    let rel = alg.relations();
    let perp = rel.perp();
    let mut sys = Matrix::zeros(f, perp.dim() * rel.dim(), g * g);
    for (pi, phi) in perp.basis_vectors().iter().enumerate() {
        for ri in 0..rel.dim() {
            let row = pi * rel.dim() + ri;
            for (ab, &c) in rel.basis().row(ri).iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (a, b) = (ab / g, ab % g);
                for j in 0..g {
                    // X[j][a] contributes c·phi[j g + b]; X[j][b] contributes c·phi[a g + j]
                    let t = f.mul(c, phi[j * g + b]);
                    let cur = sys.get(row, j * g + a);
                    sys.set(row, j * g + a, f.add(cur, t));
                    let t = f.mul(c, phi[a * g + j]);
                    let cur = sys.get(row, j * g + b);
                    sys.set(row, j * g + b, f.add(cur, t));
                }
            }
        }
    }
    sys.kernel()
}

fn matrix_key(m: &Matrix) -> Vec<u32> {
    m.entries().iter().map(|e| e.packed()).collect()
}

/// All `(ρ_u, ρ_w) ∈ D × D` satisfying the module relations, sorted by their
/// packed entries. Fails when the nominal search size `|F|^(2 dim D)` exceeds
/// `budget`.
///
/// The search runs over `D` once to collect nilpotent candidates (`N^p = 0`)
/// and candidates with `W^p = W`, then pairs them; this visits exactly the
/// solutions of the full `D × D` enumeration.
pub fn solve_actions(alg: &QuadAlgebra, budget: u64) -> Result<Vec<ActionSolution>, ActionError> {
    let f = alg.field().clone();
    let g = alg.n_gens();
    let q = f.order();
    let d = derivation_space(alg);
    let m = d.dim();
    let exponent = 2 * m;
    let nominal = (0..exponent).try_fold(1u64, |acc, _| acc.checked_mul(q as u64));
    if nominal.is_none_or(|n| n > budget) {
        return Err(ActionError::BudgetExceeded { q, exponent, budget });
    }
    let p = f.characteristic() as u64;
    let basis: Vec<Matrix> = d.basis_vectors().into_iter().map(|v| Matrix::from_vec(&f, g, g, v)).collect();
    let count = (q as u64).pow(m as u32);
    let element = |mut t: u64| {
        let mut x = Matrix::zeros(&f, g, g);
        for b in &basis {
            let c = f.from_packed((t % q as u64) as u32).expect("digit below q");
            t /= q as u64;
            if !c.is_zero() {
                x = x.add(&b.scale(c));
            }
        }
        x
    };
    let (nilpotent, semisimple): (Vec<Option<Matrix>>, Vec<Option<Matrix>>) = (0..count)
        .into_par_iter()
        .map(|t| {
            let x = element(t);
            let xp = x.pow(p);
            let n = xp.is_zero().then(|| x.clone());
            let s = (xp == x).then_some(x);
            (n, s)
        })
        .unzip();
    let nilpotent: Vec<Matrix> = nilpotent.into_iter().flatten().collect();
    let semisimple: Vec<Matrix> = semisimple.into_iter().flatten().collect();
    let mut out: Vec<ActionSolution> = nilpotent
        .par_iter()
        .flat_map_iter(|n| {
            semisimple.iter().filter(|&w| w.mul(n).sub(&n.mul(w)) == *n).map(|w| ActionSolution {
                rho_u: n.clone(),
                rho_w: w.clone(),
                derivation_space_dim: m,
            })
        })
        .collect();
    out.sort_by_key(|a| (matrix_key(&a.rho_u), matrix_key(&a.rho_w)));
    Ok(out)
}

/// Where an action file finds its algebra: inline, or a path relative to the file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraSource {
    Inline(Presentation),
    Path(String),
}

/// JSON form `{algebra, rho_u, rho_w}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionFile {
    pub algebra: AlgebraSource,
    pub rho_u: Vec<Vec<ElemRepr>>,
    pub rho_w: Vec<Vec<ElemRepr>>,
}

impl ActionFile {
    pub fn of(act: &UAction) -> ActionFile {
        ActionFile {
            algebra: AlgebraSource::Inline(act.algebra.to_presentation()),
            rho_u: act.v.mat_u().to_repr(),
            rho_w: act.v.mat_w().to_repr(),
        }
    }

    /// Resolves a path-valued algebra against `base_dir`.
    pub fn build(&self, base_dir: &Path) -> Result<UAction, ActionError> {
        let pres = match &self.algebra {
            AlgebraSource::Inline(p) => p.clone(),
            AlgebraSource::Path(rel) => {
                let path = base_dir.join(rel);
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| ActionError::Malformed(format!("{}: {e}", path.display())))?;
                serde_json::from_str(&text).map_err(|e| ActionError::Malformed(format!("{}: {e}", path.display())))?
            }
        };
        let alg = pres.build()?;
        let g = alg.n_gens();
        let rho_u = umod::square_matrix(alg.field(), g, &self.rho_u, "rho_u")?;
        let rho_w = umod::square_matrix(alg.field(), g, &self.rho_w, "rho_w")?;
        make_action(Arc::new(alg), rho_u, rho_w)
    }
}
