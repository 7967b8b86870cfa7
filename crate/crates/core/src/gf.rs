//! Exact arithmetic over finite fields `F_{p^k}` and dense linear algebra.
//!
//! Elements of `F_{p^k}` are stored packed as `sum c_i p^i` where `c_0 + c_1 t +
//! ... + c_{k-1} t^{k-1}` is the polynomial representative modulo the field's
//! monic irreducible modulus. All values here are immutable once built, so a
//! [`Field`] handle can be shared freely across threads.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported field order. Multiplication in extension fields goes
/// through log/exp tables of this many entries.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not prime")]
    NonPrime(u32),
    #[error("modulus {modulus:?} is reducible over F_{p}")]
    ReducibleModulus { p: u32, modulus: Vec<u32> },
    #[error("modulus must be a monic polynomial of degree {degree} with coefficients below {p}, got {modulus:?}")]
    BadModulus { p: u32, degree: u32, modulus: Vec<u32> },
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of order {p}^{k} is larger than the supported maximum {MAX_FIELD_ORDER}")]
    TooLarge { p: u32, k: u32 },
    #[error("coefficient sequence {coeffs:?} is not an element of F_{p}^{k}")]
    BadElement { p: u32, k: u32, coeffs: Vec<u32> },
    #[error("ambient dimensions differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("operands are defined over different fields")]
    FieldMismatch,
}

/// A field element, packed relative to some [`Field`].
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem(u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    /// Packed representation `sum c_i p^i`.
    pub fn packed(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct FieldData {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus, constant term first; length k + 1.
    modulus: Vec<u32>,
    /// exp[i] = g^i for a fixed primitive element g (extension fields only).
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// The finite field `F_{p^k}`.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.k == other.0.k && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.k == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "F_{}[t]/({})", self.0.q, poly_to_string(&self.0.modulus))
        }
    }
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn poly_to_string(c: &[u32]) -> String {
    let mut terms = Vec::new();
    for (deg, &coef) in c.iter().enumerate().rev() {
        if coef == 0 {
            continue;
        }
        let mono = match deg {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{deg}"),
        };
        terms.push(match (coef, deg) {
            (_, 0) => coef.to_string(),
            (1, _) => mono,
            _ => format!("{coef}{mono}"),
        });
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

// Polynomials over F_p as coefficient vectors, constant term first.

fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn inv_mod_prime(a: u32, p: u32) -> u32 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(b: u32, mut e: u32, p: u32) -> u32 {
    let mut acc = 1u64 % p as u64;
    let mut base = (b % p) as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let mut m = m.to_vec();
    poly_trim(&mut m);
    let dm = m.len() - 1;
    let lead_inv = inv_mod_prime(m[dm], p) as u64;
    while r.len() > dm {
        let top = r.len() - 1;
        let factor = r[top] as u64 * lead_inv % p as u64;
        let shift = top - dm;
        for (i, &mc) in m.iter().enumerate() {
            let sub = factor * mc as u64 % p as u64;
            r[shift + i] = ((r[shift + i] as u64 + p as u64 - sub) % p as u64) as u32;
        }
        poly_trim(&mut r);
    }
    r
}

fn poly_mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
    poly_rem(&prod, m, p)
}

/// Monic polynomial of degree `deg` whose lower coefficients are the base-p
/// digits of `index`.
fn monic_from_index(index: u64, deg: u32, p: u32) -> Vec<u32> {
    let mut c = Vec::with_capacity(deg as usize + 1);
    let mut n = index;
    for _ in 0..deg {
        c.push((n % p as u64) as u32);
        n /= p as u64;
    }
    c.push(1);
    c
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let deg = (modulus.len() - 1) as u32;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d);
        for idx in 0..count {
            let f = monic_from_index(idx, d, p);
            if poly_rem(modulus, &f, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl Field {
    /// Builds `F_{p^k}`. Without an explicit modulus, the default is the monic
    /// irreducible of degree k whose lower coefficients, read as base-p digits
    /// (constant term least significant), form the smallest integer.
    pub fn new(p: u32, k: u32, modulus: Option<Vec<u32>>) -> Result<Field, GfError> {
        if !is_prime(p) {
            return Err(GfError::NonPrime(p));
        }
        if k == 0 {
            return Err(GfError::ZeroDegree);
        }
        let q = (p as u64).checked_pow(k).filter(|&q| q <= MAX_FIELD_ORDER);
        let q = q.ok_or(GfError::TooLarge { p, k })? as u32;

        let modulus = match modulus {
            Some(m) => {
                let ok = m.len() == k as usize + 1 && m[k as usize] == 1 && m.iter().all(|&c| c < p);
                if !ok {
                    return Err(GfError::BadModulus { p, degree: k, modulus: m });
                }
                if k > 1 && !is_irreducible(&m, p) {
                    return Err(GfError::ReducibleModulus { p, modulus: m });
                }
                m
            }
            None if k == 1 => vec![0, 1],
            None => (0..(p as u64).pow(k))
                .map(|idx| monic_from_index(idx, k, p))
                .find(|m| is_irreducible(m, p))
                .expect("an irreducible polynomial of every degree exists"),
        };

        let (exp, log) = if k > 1 { Self::log_tables(p, k, q, &modulus) } else { (Vec::new(), Vec::new()) };
        Ok(Field(Arc::new(FieldData { p, k, q, modulus, exp, log })))
    }

    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Field, GfError> {
        Field::new(p, 1, None)
    }

    fn log_tables(p: u32, k: u32, q: u32, modulus: &[u32]) -> (Vec<u32>, Vec<u32>) {
        let unpack = |mut n: u32| {
            let mut c = Vec::with_capacity(k as usize);
            for _ in 0..k {
                c.push(n % p);
                n /= p;
            }
            poly_trim(&mut c);
            c
        };
        let pack = |c: &[u32]| c.iter().rev().fold(0u32, |acc, &x| acc * p + x);
        let order = q - 1;
        for candidate in 2..q.max(3) {
            let g = unpack(candidate);
            let mut exp = Vec::with_capacity(order as usize);
            let mut cur = vec![1u32];
            let mut primitive = true;
            for i in 0..order {
                let packed = pack(&cur);
                if i > 0 && packed == 1 {
                    primitive = false;
                    break;
                }
                exp.push(packed);
                cur = poly_mul_mod(&cur, &g, modulus, p);
            }
            if primitive {
                let mut log = vec![0u32; q as usize];
                for (i, &e) in exp.iter().enumerate() {
                    log[e as usize] = i as u32;
                }
                return (exp, log);
            }
        }
        unreachable!("the multiplicative group of a finite field is cyclic")
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.k
    }

    pub fn order(&self) -> u32 {
        self.0.q
    }

    /// Monic modulus, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem::ZERO
    }

    pub fn one(&self) -> FieldElem {
        FieldElem::ONE
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElem {
        FieldElem(n.rem_euclid(self.0.p as i64) as u32)
    }

    /// Element with the given polynomial coefficients (constant first). Shorter
    /// sequences are zero-padded.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElem, GfError> {
        let d = &*self.0;
        if coeffs.len() > d.k as usize && coeffs[d.k as usize..].iter().any(|&c| c != 0)
            || coeffs.iter().any(|&c| c >= d.p)
        {
            return Err(GfError::BadElement { p: d.p, k: d.k, coeffs: coeffs.to_vec() });
        }
        let packed = coeffs.iter().take(d.k as usize).rev().fold(0u32, |acc, &x| acc * d.p + x);
        Ok(FieldElem(packed))
    }

    /// Element from its packed representation.
    pub fn from_packed(&self, packed: u32) -> Option<FieldElem> {
        (packed < self.0.q).then_some(FieldElem(packed))
    }

    /// Coefficient sequence of length k, constant term first.
    pub fn coeffs(&self, a: FieldElem) -> Vec<u32> {
        let mut n = a.0;
        (0..self.0.k)
            .map(|_| {
                let c = n % self.0.p;
                n /= self.0.p;
                c
            })
            .collect()
    }

    /// `Some(r)` when `a` lies in the prime subfield, with `0 <= r < p`.
    pub fn to_prime(&self, a: FieldElem) -> Option<u32> {
        (a.0 < self.0.p).then_some(a.0)
    }

    /// All field elements in packed order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.0.q).map(FieldElem)
    }

    pub fn format(&self, a: FieldElem) -> String {
        if self.0.k == 1 {
            a.0.to_string()
        } else {
            poly_to_string(&self.coeffs(a))
        }
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let d = &*self.0;
        if d.k == 1 {
            let s = a.0 + b.0;
            return FieldElem(if s >= d.p { s - d.p } else { s });
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..d.k {
            out += ((x % d.p + y % d.p) % d.p) * place;
            x /= d.p;
            y /= d.p;
            place *= d.p;
        }
        FieldElem(out)
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        let d = &*self.0;
        if d.k == 1 {
            return FieldElem(if a.0 == 0 { 0 } else { d.p - a.0 });
        }
        let mut x = a.0;
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..d.k {
            out += ((d.p - x % d.p) % d.p) * place;
            x /= d.p;
            place *= d.p;
        }
        FieldElem(out)
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let d = &*self.0;
        if d.k == 1 {
            return FieldElem((a.0 as u64 * b.0 as u64 % d.p as u64) as u32);
        }
        if a.0 == 0 || b.0 == 0 {
            return FieldElem::ZERO;
        }
        let e = (d.log[a.0 as usize] + d.log[b.0 as usize]) % (d.q - 1);
        FieldElem(d.exp[e as usize])
    }

    pub fn inv(&self, a: FieldElem) -> Option<FieldElem> {
        if a.is_zero() {
            return None;
        }
        let d = &*self.0;
        if d.k == 1 {
            return Some(FieldElem(inv_mod_prime(a.0, d.p)));
        }
        let e = (d.q - 1 - d.log[a.0 as usize]) % (d.q - 1);
        Some(FieldElem(d.exp[e as usize]))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Option<FieldElem> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: FieldElem, mut e: u64) -> FieldElem {
        let mut acc = FieldElem::ONE;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `dst += factor * src`, elementwise.
    #[inline]
    pub(crate) fn axpy(&self, dst: &mut [FieldElem], factor: FieldElem, src: &[FieldElem]) {
        if factor.is_zero() {
            return;
        }
        let d = &*self.0;
        if d.k == 1 {
            let p = d.p as u64;
            let f = factor.0 as u64;
            for (x, &y) in dst.iter_mut().zip(src) {
                if y.0 != 0 {
                    x.0 = ((x.0 as u64 + f * y.0 as u64) % p) as u32;
                }
            }
        } else {
            for (x, &y) in dst.iter_mut().zip(src) {
                if y.0 != 0 {
                    *x = self.add(*x, self.mul(factor, y));
                }
            }
        }
    }

    pub(crate) fn scale_slice(&self, v: &mut [FieldElem], factor: FieldElem) {
        for x in v.iter_mut() {
            *x = self.mul(*x, factor);
        }
    }

    pub fn dot(&self, a: &[FieldElem], b: &[FieldElem]) -> FieldElem {
        a.iter().zip(b).fold(FieldElem::ZERO, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }
}

/// Dense row-major matrix over a finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|&x| self.field.format(x)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Compact `[[a, b], [c, d]]`.
impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|r| {
                let row: Vec<String> = self.row(r).iter().map(|&x| self.field.format(x)).collect();
                format!("[{}]", row.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// Result of Gauss–Jordan elimination.
#[derive(Clone, Debug)]
pub struct Rref {
    /// Reduced row echelon form, same shape as the input (zero rows at the bottom).
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: vec![FieldElem::ZERO; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, FieldElem::ONE);
        }
        m
    }

    pub fn from_vec(field: &Field, rows: usize, cols: usize, data: Vec<FieldElem>) -> Matrix {
        assert_eq!(data.len(), rows * cols, "entry count must equal rows * cols");
        Matrix { field: field.clone(), rows, cols, data }
    }

    /// Row-major integer entries, reduced into the prime subfield.
    pub fn from_ints(field: &Field, rows: usize, cols: usize, entries: &[i64]) -> Matrix {
        assert_eq!(entries.len(), rows * cols);
        Matrix::from_vec(field, rows, cols, entries.iter().map(|&x| field.from_int(x)).collect())
    }

    pub fn from_rows(field: &Field, cols: usize, rows: &[Vec<FieldElem>]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend_from_slice(r);
        }
        Matrix::from_vec(field, rows.len(), cols, data)
    }

    pub fn diagonal(field: &Field, diag: &[FieldElem]) -> Matrix {
        let mut m = Matrix::zeros(field, diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> FieldElem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: FieldElem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldElem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [FieldElem] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<FieldElem> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn entries(&self) -> &[FieldElem] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = Matrix::zeros(&self.field, self.rows, other.cols);
        for r in 0..self.rows {
            let (lo, hi) = (r * other.cols, (r + 1) * other.cols);
            for k in 0..self.cols {
                let a = self.get(r, k);
                if !a.is_zero() {
                    self.field.axpy(&mut out.data[lo..hi], a, other.row(k));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|r| self.field.dot(self.row(r), v)).collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        assert_eq!(self.rows, v.len());
        let mut out = vec![FieldElem::ZERO; self.cols];
        for (r, &a) in v.iter().enumerate() {
            self.field.axpy(&mut out, a, self.row(r));
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| self.field.add(a, b)).collect();
        Matrix::from_vec(&self.field, self.rows, self.cols, data)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| self.field.sub(a, b)).collect();
        Matrix::from_vec(&self.field, self.rows, self.cols, data)
    }

    pub fn scale(&self, s: FieldElem) -> Matrix {
        let data = self.data.iter().map(|&a| self.field.mul(a, s)).collect();
        Matrix::from_vec(&self.field, self.rows, self.cols, data)
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        assert!(self.is_square());
        let mut acc = Matrix::identity(&self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Kronecker product; index of `(i, j)` is `i * other.dim + j`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Matrix::zeros(&self.field, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * other.rows + k, j * other.cols + l, self.field.mul(a, b));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c));
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                out.set(self.rows + r, self.cols + c, other.get(r, c));
            }
        }
        out
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix::from_vec(&self.field, self.rows + other.rows, self.cols, data)
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut lead = 0usize;
        for c in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(pr) = (lead..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                continue;
            };
            if pr != lead {
                for k in 0..m.cols {
                    m.data.swap(pr * m.cols + k, lead * m.cols + k);
                }
            }
            let inv = f.inv(m.get(lead, c)).expect("pivot is nonzero");
            f.scale_slice(m.row_mut(lead), inv);
            let pivot_row: Vec<FieldElem> = m.row(lead)[c..].to_vec();
            for r in 0..m.rows {
                if r == lead {
                    continue;
                }
                let factor = m.get(r, c);
                if !factor.is_zero() {
                    let neg = f.neg(factor);
                    let cols = m.cols;
                    f.axpy(&mut m.data[r * cols + c..(r + 1) * cols], neg, &pivot_row);
                }
            }
            pivots.push(c);
            lead += 1;
        }
        Rref { matrix: m, rank: pivots.len(), pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Right null space `{x : self * x = 0}`.
    pub fn kernel(&self) -> Subspace {
        let Rref { matrix, pivots, .. } = self.rref();
        let f = &self.field;
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![FieldElem::ZERO; self.cols];
            v[free] = FieldElem::ONE;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(matrix.get(r, free));
            }
            basis.push(v);
        }
        Subspace::span(f, self.cols, &basis)
    }

    /// Column space, as a subspace of `F^rows`.
    pub fn image(&self) -> Subspace {
        Subspace::from_rows(&self.transpose())
    }

    pub fn row_space(&self) -> Subspace {
        Subspace::from_rows(self)
    }
}

/// A linear subspace of `F^n`, canonicalised by the reduced row echelon form of
/// a basis. Two subspaces are equal iff their bases are identical.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}) ", self.dim(), self.ambient)?;
        self.basis.fmt(f)
    }
}

impl Subspace {
    pub fn zero(field: &Field, ambient: usize) -> Subspace {
        Subspace { ambient, basis: Matrix::zeros(field, 0, ambient), pivots: Vec::new() }
    }

    pub fn full(field: &Field, ambient: usize) -> Subspace {
        Subspace { ambient, basis: Matrix::identity(field, ambient), pivots: (0..ambient).collect() }
    }

    /// Span of the rows of `m`.
    pub fn from_rows(m: &Matrix) -> Subspace {
        let Rref { matrix, rank, pivots } = m.rref();
        let data = matrix.data[..rank * m.cols].to_vec();
        Subspace { ambient: m.cols, basis: Matrix::from_vec(&m.field, rank, m.cols, data), pivots }
    }

    pub fn span(field: &Field, ambient: usize, vectors: &[Vec<FieldElem>]) -> Subspace {
        Subspace::from_rows(&Matrix::from_rows(field, ambient, vectors))
    }

    pub fn field(&self) -> &Field {
        &self.basis.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    /// Basis rows in reduced row echelon form.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vectors(&self) -> Vec<Vec<FieldElem>> {
        (0..self.dim()).map(|r| self.basis.row(r).to_vec()).collect()
    }

    /// Reduces `v` against the basis; the result vanishes on every pivot column.
    pub fn reduce(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        assert_eq!(v.len(), self.ambient);
        let f = self.field();
        let mut out = v.to_vec();
        for (r, &pc) in self.pivots.iter().enumerate() {
            let c = out[pc];
            if !c.is_zero() {
                f.axpy(&mut out, f.neg(c), self.basis.row(r));
            }
        }
        out
    }

    pub fn contains(&self, v: &[FieldElem]) -> Result<bool, GfError> {
        if v.len() != self.ambient {
            return Err(GfError::AmbientMismatch(self.ambient, v.len()));
        }
        Ok(self.reduce(v).iter().all(|x| x.is_zero()))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool, GfError> {
        self.check_compatible(other)?;
        for r in 0..other.dim() {
            if !self.contains(other.basis.row(r))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn check_compatible(&self, other: &Subspace) -> Result<(), GfError> {
        if self.ambient != other.ambient {
            return Err(GfError::AmbientMismatch(self.ambient, other.ambient));
        }
        if self.field() != other.field() {
            return Err(GfError::FieldMismatch);
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, GfError> {
        self.check_compatible(other)?;
        Ok(Subspace::from_rows(&self.basis.vstack(&other.basis)))
    }

    /// Annihilator `{x : <b, x> = 0 for every basis row b}` under the standard
    /// dot product.
    pub fn perp(&self) -> Subspace {
        self.basis.kernel()
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, GfError> {
        self.check_compatible(other)?;
        let inter = self.perp().sum(&other.perp())?.perp();
        debug_assert_eq!(inter.dim() + self.sum(other)?.dim(), self.dim() + other.dim(), "dimension formula");
        Ok(inter)
    }
}

/// JSON form of a field: `{p, k, modulus}` with the modulus omitted for prime fields.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    #[serde(default = "one_u32")]
    pub k: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

fn one_u32() -> u32 {
    1
}

impl FieldSpec {
    pub fn of(field: &Field) -> FieldSpec {
        FieldSpec {
            p: field.characteristic(),
            k: field.degree(),
            modulus: (field.degree() > 1).then(|| field.modulus().to_vec()),
        }
    }

    pub fn build(&self) -> Result<Field, GfError> {
        Field::new(self.p, self.k, self.modulus.clone())
    }
}

/// JSON form of a field element. Output is always the coefficient sequence;
/// input also accepts a bare integer, read in the prime subfield.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElemRepr {
    Int(i64),
    Coeffs(Vec<u32>),
}

impl ElemRepr {
    pub fn of(field: &Field, a: FieldElem) -> ElemRepr {
        ElemRepr::Coeffs(field.coeffs(a))
    }

    pub fn to_elem(&self, field: &Field) -> Result<FieldElem, GfError> {
        match self {
            ElemRepr::Int(n) => Ok(field.from_int(*n)),
            ElemRepr::Coeffs(c) => field.from_coeffs(c),
        }
    }
}

impl Matrix {
    /// Rows of coefficient sequences.
    pub fn to_repr(&self) -> Vec<Vec<ElemRepr>> {
        (0..self.rows).map(|r| self.row(r).iter().map(|&x| ElemRepr::of(&self.field, x)).collect()).collect()
    }

    /// Inverse of [`Matrix::to_repr`]; `None` if rows are ragged. An empty row
    /// list gives a `0 x cols` matrix.
    pub fn from_repr(field: &Field, cols: usize, rows: &[Vec<ElemRepr>]) -> Result<Option<Matrix>, GfError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Ok(None);
            }
            for e in r {
                data.push(e.to_elem(field)?);
            }
        }
        Ok(Some(Matrix::from_vec(field, rows.len(), cols, data)))
    }
}
