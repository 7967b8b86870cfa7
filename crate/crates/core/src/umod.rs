//! Finite-dimensional U-modules, where `U = k<u, w>/(u^p, w^p - w, wu - uw - u)`.
//!
//! A module is a pair of square matrices for the actions of `u` and `w`. Every
//! constructor checks the three defining relations, so a [`UModule`] value is
//! always a genuine module.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{ElemRepr, Field, FieldElem, FieldSpec, GfError, Matrix, Subspace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModError {
    #[error("length {l} is outside [1, {p}]")]
    BadLength { l: u32, p: u32 },
    #[error("not a U-module: {0}")]
    InvalidModule(String),
    #[error("modules are defined over different fields")]
    FieldMismatch,
    #[error("malformed module: {0}")]
    Malformed(String),
    #[error(transparent)]
    Field(#[from] GfError),
}

/// Label `(l, i)` of the indecomposable `M(l, i)`: dimension `l`, top weight `i`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    pub l: u32,
    pub i: u32,
}

impl Label {
    pub fn new(l: u32, i: u32) -> Label {
        Label { l, i }
    }

    pub fn is_valid(self, p: u32) -> bool {
        (1..=p).contains(&self.l) && self.i < p
    }

    /// Map key used in JSON: `"l,i"`.
    pub fn key(self) -> String {
        format!("{},{}", self.l, self.i)
    }

    pub fn parse_key(s: &str) -> Option<Label> {
        let (l, i) = s.split_once(',')?;
        Some(Label::new(l.trim().parse().ok()?, i.trim().parse().ok()?))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.l == 1 {
            write!(f, "S_{}", self.i)
        } else {
            write!(f, "M({},{})", self.l, self.i)
        }
    }
}

/// Multiset of indecomposable summands.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Decomposition {
    pub p: u32,
    pub mult: BTreeMap<Label, u64>,
}

impl Decomposition {
    pub fn new(p: u32) -> Decomposition {
        Decomposition { p, mult: BTreeMap::new() }
    }

    pub fn from_pairs(p: u32, pairs: &[((u32, u32), u64)]) -> Decomposition {
        let mut d = Decomposition::new(p);
        for &((l, i), n) in pairs {
            d.add(Label::new(l, i), n);
        }
        d
    }

    pub fn add(&mut self, label: Label, n: u64) {
        if n > 0 {
            *self.mult.entry(label).or_insert(0) += n;
        }
    }

    pub fn get(&self, label: Label) -> u64 {
        self.mult.get(&label).copied().unwrap_or(0)
    }

    /// Total dimension `sum l * mult`.
    pub fn dim(&self) -> u64 {
        self.mult.iter().map(|(lab, &n)| lab.l as u64 * n).sum()
    }

    pub fn to_key_map(&self) -> BTreeMap<String, u64> {
        self.mult.iter().map(|(lab, &n)| (lab.key(), n)).collect()
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mult.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .mult
            .iter()
            .rev()
            .map(|(lab, &n)| if n == 1 { lab.to_string() } else { format!("{n}{lab}") })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// A U-module given by the matrices of `u` and `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UModule {
    field: Field,
    u: Matrix,
    w: Matrix,
}

/// Checks `u^p = 0`, `w^p = w`, `wu - uw = u`. On failure, names the first
/// identity that does not hold.
pub fn check_relations(u: &Matrix, w: &Matrix) -> Result<(), String> {
    let p = u.field().characteristic() as u64;
    if !u.is_square() || !w.is_square() || u.rows() != w.rows() {
        return Err("u and w must be square matrices of the same size".into());
    }
    if u.field() != w.field() {
        return Err("u and w are over different fields".into());
    }
    if !u.pow(p).is_zero() {
        return Err("u^p = 0 fails".into());
    }
    if w.pow(p) != *w {
        return Err("w^p = w fails".into());
    }
    if w.mul(u).sub(&u.mul(w)) != *u {
        return Err("wu - uw = u fails".into());
    }
    Ok(())
}

/// Boolean form of [`check_relations`].
pub fn validate(u: &Matrix, w: &Matrix) -> bool {
    check_relations(u, w).is_ok()
}

impl UModule {
    pub fn new(u: Matrix, w: Matrix) -> Result<UModule, ModError> {
        check_relations(&u, &w).map_err(ModError::InvalidModule)?;
        Ok(UModule { field: u.field().clone(), u, w })
    }

    pub fn zero(field: &Field) -> UModule {
        UModule { field: field.clone(), u: Matrix::zeros(field, 0, 0), w: Matrix::zeros(field, 0, 0) }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn p(&self) -> u32 {
        self.field.characteristic()
    }

    pub fn dim(&self) -> usize {
        self.u.rows()
    }

    pub fn mat_u(&self) -> &Matrix {
        &self.u
    }

    pub fn mat_w(&self) -> &Matrix {
        &self.w
    }

    /// Action of the PBW word `u^i w^j`.
    pub fn pbw_action(&self, i: u64, j: u64) -> Matrix {
        self.u.pow(i).mul(&self.w.pow(j))
    }
}

/// `M(l, i)`: basis `x_1..x_l` with `u x_j = x_{j+1}`, `u x_l = 0` and
/// `w x_j = (i + j - 1) x_j`.
pub fn standard_module(field: &Field, l: u32, i: u32) -> Result<UModule, ModError> {
    let p = field.characteristic();
    if !(1..=p).contains(&l) {
        return Err(ModError::BadLength { l, p });
    }
    let n = l as usize;
    let mut u = Matrix::zeros(field, n, n);
    for j in 0..n - 1 {
        u.set(j + 1, j, FieldElem::ONE);
    }
    let diag: Vec<FieldElem> = (0..n).map(|j| field.from_int(i as i64 + j as i64)).collect();
    Ok(UModule { field: field.clone(), u, w: Matrix::diagonal(field, &diag) })
}

pub fn simple_module(field: &Field, i: u32) -> UModule {
    standard_module(field, 1, i).expect("length 1 is always valid")
}

/// U acting on itself by left multiplication, in the PBW basis `u^a w^b`
/// (index `a * p + b`).
pub fn regular_module(field: &Field) -> UModule {
    let p = field.characteristic() as usize;
    let n = p * p;
    let mut u = Matrix::zeros(field, n, n);
    let mut w = Matrix::zeros(field, n, n);
    for a in 0..p {
        for b in 0..p {
            let col = a * p + b;
            if a + 1 < p {
                u.set((a + 1) * p + b, col, FieldElem::ONE);
            }
            // w u^a w^b = u^a (w + a) w^b, and w^p = w
            let next_b = if b + 1 == p { 1 } else { b + 1 };
            let cur = w.get(a * p + next_b, col);
            w.set(a * p + next_b, col, field.add(cur, FieldElem::ONE));
            let cur = w.get(col, col);
            w.set(col, col, field.add(cur, field.from_int(a as i64)));
        }
    }
    UModule::new(u, w).expect("left regular representation is a module")
}

fn same_field(a: &UModule, b: &UModule) -> Result<(), ModError> {
    if a.field != b.field {
        return Err(ModError::FieldMismatch);
    }
    Ok(())
}

pub fn direct_sum(a: &UModule, b: &UModule) -> Result<UModule, ModError> {
    same_field(a, b)?;
    Ok(UModule { field: a.field.clone(), u: a.u.block_diag(&b.u), w: a.w.block_diag(&b.w) })
}

/// Tensor product under the primitive coproduct: `X (x) 1 + 1 (x) X`. The basis
/// vector `x_i (x) y_j` has index `i * dim b + j`.
pub fn tensor(a: &UModule, b: &UModule) -> Result<UModule, ModError> {
    same_field(a, b)?;
    let f = &a.field;
    let ia = Matrix::identity(f, a.dim());
    let ib = Matrix::identity(f, b.dim());
    let u = a.u.kron(&ib).add(&ia.kron(&b.u));
    let w = a.w.kron(&ib).add(&ia.kron(&b.w));
    debug_assert!(validate(&u, &w));
    Ok(UModule { field: f.clone(), u, w })
}

/// `M[i] = ker(w - i)` for `i = 0..p`.
pub fn weight_spaces(m: &UModule) -> Vec<Subspace> {
    let f = &m.field;
    let n = m.dim();
    let spaces: Vec<Subspace> =
        (0..m.p()).map(|i| m.w.sub(&Matrix::identity(f, n).scale(f.from_int(i as i64))).kernel()).collect();
    debug_assert_eq!(spaces.iter().map(Subspace::dim).sum::<usize>(), n);
    spaces
}

pub fn socle(m: &UModule) -> Subspace {
    m.u.kernel()
}

pub fn radical(m: &UModule) -> Subspace {
    m.u.image()
}

/// Multiplicity of each weight in the head `M / uM`, indexed by weight.
pub fn head_weights(m: &UModule) -> Vec<usize> {
    let rad = radical(m);
    weight_spaces(m).iter().map(|ws| ws.dim() - ws.intersect(&rad).expect("same ambient").dim()).collect()
}

/// Krull–Schmidt decomposition. A summand `M(l, i)` contributes one string of
/// length `l` ending in the socle at weight `i + l - 1`, so its multiplicity is
/// `dim(ker u ∩ u^{l-1}M ∩ M[c]) - dim(ker u ∩ u^l M ∩ M[c])` with `c = i + l - 1`.
pub fn decompose(m: &UModule) -> Decomposition {
    let p = m.p();
    let mut out = Decomposition::new(p);
    if m.dim() == 0 {
        return out;
    }
    let ker = socle(m);
    let weights = weight_spaces(m);
    let mut images = Vec::with_capacity(p as usize + 1);
    let mut power = Matrix::identity(&m.field, m.dim());
    for _ in 0..=p {
        images.push(power.image());
        power = m.u.mul(&power);
    }
    for (c, ws) in weights.iter().enumerate() {
        let base = ker.intersect(ws).expect("same ambient");
        if base.dim() == 0 {
            continue;
        }
        let dims: Vec<usize> = images.iter().map(|im| base.intersect(im).expect("same ambient").dim()).collect();
        for l in 1..=p {
            let n = dims[l as usize - 1] - dims[l as usize];
            let i = (c as u32 + p - (l - 1)) % p;
            out.add(Label::new(l, i), n as u64);
        }
    }
    debug_assert_eq!(out.dim(), m.dim() as u64);
    out
}

/// Dimension of `Hom_U(a, b)`.
pub fn hom_dim(a: &UModule, b: &UModule) -> Result<usize, ModError> {
    same_field(a, b)?;
    let f = &a.field;
    let (na, nb) = (a.dim(), b.dim());
    let unknowns = na * nb;
    if unknowns == 0 {
        return Ok(0);
    }
    // F is nb x na, vec(F)[r * na + c] = F[r][c]; rows encode (F A - B F)[r][c] = 0
    let mut sys = Matrix::zeros(f, 2 * unknowns, unknowns);
    for (block, (ma, mb)) in [(&a.u, &b.u), (&a.w, &b.w)].into_iter().enumerate() {
        for r in 0..nb {
            for c in 0..na {
                let row = block * unknowns + r * na + c;
                for k in 0..na {
                    let x = ma.get(k, c);
                    if !x.is_zero() {
                        let idx = r * na + k;
                        let cur = sys.get(row, idx);
                        sys.set(row, idx, f.add(cur, x));
                    }
                }
                for k in 0..nb {
                    let x = mb.get(r, k);
                    if !x.is_zero() {
                        let idx = k * na + c;
                        let cur = sys.get(row, idx);
                        sys.set(row, idx, f.sub(cur, x));
                    }
                }
            }
        }
    }
    Ok(unknowns - sys.rank())
}

pub fn is_isomorphic(a: &UModule, b: &UModule) -> bool {
    a.field == b.field && decompose(a) == decompose(b)
}

/// Direct sum of standard modules, in the order given.
pub fn module_from_decomposition(field: &Field, d: &Decomposition) -> Result<UModule, ModError> {
    let mut m = UModule::zero(field);
    for (lab, &n) in &d.mult {
        let s = standard_module(field, lab.l, lab.i)?;
        for _ in 0..n {
            m = direct_sum(&m, &s)?;
        }
    }
    Ok(m)
}

/// JSON form `{p, field, dim, mat_u, mat_w}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleFile {
    pub p: u32,
    pub field: FieldSpec,
    pub dim: usize,
    pub mat_u: Vec<Vec<ElemRepr>>,
    pub mat_w: Vec<Vec<ElemRepr>>,
}

impl ModuleFile {
    pub fn of(m: &UModule) -> ModuleFile {
        ModuleFile {
            p: m.p(),
            field: FieldSpec::of(&m.field),
            dim: m.dim(),
            mat_u: m.u.to_repr(),
            mat_w: m.w.to_repr(),
        }
    }

    pub fn build(&self) -> Result<UModule, ModError> {
        if self.field.p != self.p {
            return Err(ModError::Malformed(format!("p = {} but field has characteristic {}", self.p, self.field.p)));
        }
        let field = self.field.build()?;
        let u = square_matrix(&field, self.dim, &self.mat_u, "mat_u")?;
        let w = square_matrix(&field, self.dim, &self.mat_w, "mat_w")?;
        UModule::new(u, w)
    }
}

pub(crate) fn square_matrix(field: &Field, n: usize, rows: &[Vec<ElemRepr>], what: &str) -> Result<Matrix, ModError> {
    if rows.len() != n {
        return Err(ModError::Malformed(format!("{what} has {} rows, expected {n}", rows.len())));
    }
    Matrix::from_repr(field, n, rows)?
        .ok_or_else(|| ModError::Malformed(format!("{what} rows must each have {n} entries")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> Field {
        Field::prime(p).unwrap()
    }

    fn m(p: u32, l: u32, i: u32) -> UModule {
        standard_module(&f(p), l, i).unwrap()
    }

    fn d(p: u32, pairs: &[((u32, u32), u64)]) -> Decomposition {
        Decomposition::from_pairs(p, pairs)
    }

    #[test]
    fn standard_module_examples() {
        let s2 = m(3, 1, 2);
        assert_eq!(s2.dim(), 1);
        assert!(s2.mat_u().is_zero());
        assert_eq!(s2.mat_w().get(0, 0), f(3).from_int(2));

        let m30 = m(3, 3, 0);
        assert_eq!(*m30.mat_w(), Matrix::from_ints(&f(3), 3, 3, &[0, 0, 0, 0, 1, 0, 0, 0, 2]));
        assert_eq!(*m30.mat_u(), Matrix::from_ints(&f(3), 3, 3, &[0, 0, 0, 1, 0, 0, 0, 1, 0]));

        let m21 = m(2, 2, 1);
        assert_eq!(*m21.mat_w(), Matrix::from_ints(&f(2), 2, 2, &[1, 0, 0, 0]));

        assert_eq!(standard_module(&f(3), 4, 0).unwrap_err(), ModError::BadLength { l: 4, p: 3 });
    }

    #[test]
    fn validate_examples() {
        assert!(validate(m(5, 4, 3).mat_u(), m(5, 4, 3).mat_w()));
        let f3 = f(3);
        assert!(!validate(&Matrix::identity(&f3, 2), &Matrix::zeros(&f3, 2, 2)));
        let w = Matrix::diagonal(&f3, &[f3.from_int(2), f3.from_int(0), f3.from_int(1)]);
        assert!(validate(&Matrix::zeros(&f3, 3, 3), &w));
        assert_eq!(
            check_relations(&Matrix::identity(&f3, 2), &Matrix::zeros(&f3, 2, 2)),
            Err("u^p = 0 fails".to_string())
        );
    }

    #[test]
    fn direct_sum_examples() {
        let s = direct_sum(&m(3, 2, 0), &m(3, 1, 1)).unwrap();
        assert_eq!(s.dim(), 3);
        let a = m(3, 3, 1);
        assert_eq!(direct_sum(&a, &UModule::zero(&f(3))).unwrap(), a);
        let x = direct_sum(&direct_sum(&m(3, 2, 0), &m(3, 2, 0)).unwrap(), &m(3, 1, 1)).unwrap();
        assert_eq!(decompose(&x), d(3, &[((2, 0), 2), ((1, 1), 1)]));
        assert_eq!(direct_sum(&m(3, 1, 0), &m(2, 1, 0)), Err(ModError::FieldMismatch));
    }

    #[test]
    fn tensor_examples() {
        for p in [2, 3, 5] {
            for r in 0..p {
                for l in 1..=p {
                    for r2 in 0..p {
                        let t = tensor(&m(p, 1, r), &m(p, l, r2)).unwrap();
                        assert_eq!(decompose(&t), d(p, &[((l, (r + r2) % p), 1)]));
                    }
                }
            }
        }
        let x = m(3, 3, 2);
        assert!(is_isomorphic(&tensor(&m(3, 1, 0), &x).unwrap(), &x));
        let t = tensor(&m(2, 2, 0), &m(2, 2, 0)).unwrap();
        assert_eq!(decompose(&t), d(2, &[((2, 0), 1), ((2, 1), 1)]));
    }

    #[test]
    fn weight_space_examples() {
        let dims = |x: &UModule| weight_spaces(x).iter().map(Subspace::dim).collect::<Vec<_>>();
        assert_eq!(dims(&m(3, 3, 0)), vec![1, 1, 1]);
        assert_eq!(dims(&m(5, 1, 2)), vec![0, 0, 1, 0, 0]);
        assert_eq!(dims(&tensor(&m(3, 2, 0), &m(3, 2, 0)).unwrap()), vec![1, 2, 1]);
    }

    #[test]
    fn socle_radical_head() {
        for p in [2, 3, 5] {
            for l in 1..=p {
                for i in 0..p {
                    let x = m(p, l, i);
                    let soc = socle(&x);
                    assert_eq!(soc.dim(), 1);
                    let top = weight_spaces(&x)[((i + l - 1) % p) as usize].clone();
                    assert!(top.contains_subspace(&soc).unwrap());
                    let mut head = vec![0; p as usize];
                    head[i as usize] = 1;
                    assert_eq!(head_weights(&x), head);
                }
            }
        }
        let f3 = f(3);
        let semi =
            UModule::new(Matrix::zeros(&f3, 2, 2), Matrix::diagonal(&f3, &[f3.from_int(1), f3.from_int(2)])).unwrap();
        assert_eq!(socle(&semi).dim(), 2);
        assert_eq!(radical(&semi).dim(), 0);
        assert_eq!(socle(&tensor(&m(5, 2, 0), &m(5, 3, 0)).unwrap()).dim(), 2);
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(decompose(&m(5, 3, 4)), d(5, &[((3, 4), 1)]));
        assert_eq!(decompose(&tensor(&m(3, 2, 0), &m(3, 2, 0)).unwrap()), d(3, &[((1, 1), 1), ((3, 0), 1)]));
        assert_eq!(decompose(&tensor(&m(5, 2, 0), &m(5, 3, 0)).unwrap()), d(5, &[((2, 1), 1), ((4, 0), 1)]));
    }

    #[test]
    fn regular_module_is_sum_of_projectives() {
        for p in [2, 3, 5] {
            let reg = regular_module(&f(p));
            let expect: Vec<_> = (0..p).map(|i| ((p, i), 1)).collect();
            assert_eq!(decompose(&reg), d(p, &expect));
        }
    }

    #[test]
    fn hom_dims() {
        for p in [2, 3, 5] {
            for l in 1..=p {
                for i in 0..p {
                    assert_eq!(hom_dim(&m(p, l, i), &m(p, l, i)).unwrap(), 1);
                    assert_eq!(hom_dim(&m(p, 1, (i + l - 1) % p), &m(p, l, i)).unwrap(), 1);
                }
            }
        }
        assert_eq!(hom_dim(&m(3, 1, 0), &m(3, 1, 1)).unwrap(), 0);
    }

    #[test]
    fn isomorphism() {
        assert!(is_isomorphic(&m(2, 2, 1), &m(2, 2, 1)));
        assert!(!is_isomorphic(&m(2, 2, 1), &m(2, 2, 0)));
        let (a, b) = (m(5, 3, 1), m(5, 4, 2));
        assert!(is_isomorphic(&tensor(&a, &b).unwrap(), &tensor(&b, &a).unwrap()));
    }

    #[test]
    fn json_round_trip() {
        let x = tensor(&m(3, 2, 1), &m(3, 2, 0)).unwrap();
        let file = ModuleFile::of(&x);
        let text = serde_json::to_string(&file).unwrap();
        let back: ModuleFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.build().unwrap(), x);

        let bad = ModuleFile { mat_u: Matrix::identity(&f(3), 4).to_repr(), ..file };
        assert!(matches!(bad.build(), Err(ModError::InvalidModule(_))));
    }
}
