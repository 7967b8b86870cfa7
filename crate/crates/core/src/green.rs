//! The Green ring r(U): integer combinations of the classes `[M(l, i)]`, with
//! multiplication given by closed-form tensor product rules.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;
use thiserror::Error;

use crate::umod::{Decomposition, Label};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GreenError {
    #[error("label ({l},{i}) is not valid for p = {p}")]
    BadLabel { l: u32, i: u32, p: u32 },
    #[error("length {l} is outside [1, {p}]")]
    BadLength { l: u32, p: u32 },
    #[error("elements have characteristics {0} and {1}")]
    CharacteristicMismatch(u32, u32),
    #[error("presentation check failed: {0}")]
    CheckFailed(String),
    #[error("fpdim closed form is only available for p = 2 and p = 3, not p = {0}")]
    UnsupportedCharacteristic(u32),
    #[error("cannot parse Green ring element: {0}")]
    Parse(String),
}

/// An element of r(U), possibly virtual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreenElem {
    p: u32,
    coeffs: BTreeMap<Label, i64>,
}

impl GreenElem {
    pub fn zero(p: u32) -> GreenElem {
        GreenElem { p, coeffs: BTreeMap::new() }
    }

    /// `[M(l, i)]`, with `i` reduced mod p.
    pub fn basis(p: u32, l: u32, i: u32) -> Result<GreenElem, GreenError> {
        if !(1..=p).contains(&l) {
            return Err(GreenError::BadLabel { l, i, p });
        }
        let mut g = GreenElem::zero(p);
        g.coeffs.insert(Label::new(l, i % p), 1);
        Ok(g)
    }

    /// The unit `[S_0]`.
    pub fn one(p: u32) -> GreenElem {
        GreenElem::basis(p, 1, 0).expect("S_0 exists")
    }

    /// `a = [S_1]`.
    pub fn a(p: u32) -> GreenElem {
        GreenElem::basis(p, 1, 1).expect("S_1 exists")
    }

    /// `x = [M(2, 0)]`.
    pub fn x(p: u32) -> GreenElem {
        GreenElem::basis(p, 2, 0).expect("p >= 2")
    }

    pub fn from_int(p: u32, n: i64) -> GreenElem {
        GreenElem::one(p).scale(n)
    }

    pub fn from_decomposition(d: &Decomposition) -> GreenElem {
        let mut g = GreenElem::zero(d.p);
        for (&lab, &n) in &d.mult {
            g.add_term(lab, n as i64);
        }
        g
    }

    /// `None` if some coefficient is negative.
    pub fn to_decomposition(&self) -> Option<Decomposition> {
        let mut d = Decomposition::new(self.p);
        for (&lab, &c) in &self.coeffs {
            d.add(lab, u64::try_from(c).ok()?);
        }
        Some(d)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &BTreeMap<Label, i64> {
        &self.coeffs
    }

    pub fn coeff(&self, l: u32, i: u32) -> i64 {
        self.coeffs.get(&Label::new(l, i)).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_term(&mut self, lab: Label, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.coeffs.entry(lab).or_insert(0);
        *e += c;
        if *e == 0 {
            self.coeffs.remove(&lab);
        }
    }

    pub fn scale(&self, n: i64) -> GreenElem {
        let mut g = GreenElem::zero(self.p);
        for (&lab, &c) in &self.coeffs {
            g.add_term(lab, c * n);
        }
        g
    }

    /// Dimension `sum l * coeff`.
    pub fn dim(&self) -> i64 {
        self.coeffs.iter().map(|(lab, &c)| lab.l as i64 * c).sum()
    }

    pub fn try_add(&self, other: &GreenElem) -> Result<GreenElem, GreenError> {
        self.check_p(other)?;
        let mut g = self.clone();
        for (&lab, &c) in &other.coeffs {
            g.add_term(lab, c);
        }
        Ok(g)
    }

    pub fn try_mul(&self, other: &GreenElem) -> Result<GreenElem, GreenError> {
        self.check_p(other)?;
        let mut g = GreenElem::zero(self.p);
        for (&a, &ca) in &self.coeffs {
            for (&b, &cb) in &other.coeffs {
                let prod = basis_product(self.p, a, b)?;
                for (&lab, &c) in &prod.coeffs {
                    g.add_term(lab, ca * cb * c);
                }
            }
        }
        Ok(g)
    }

    pub fn pow(&self, e: u32) -> GreenElem {
        (0..e).fold(GreenElem::one(self.p), |acc, _| &acc * self)
    }

    fn check_p(&self, other: &GreenElem) -> Result<(), GreenError> {
        if self.p != other.p {
            return Err(GreenError::CharacteristicMismatch(self.p, other.p));
        }
        Ok(())
    }

    /// JSON map `"l,i" -> coefficient`.
    pub fn to_key_map(&self) -> BTreeMap<String, i64> {
        self.coeffs.iter().map(|(lab, &c)| (lab.key(), c)).collect()
    }

    pub fn from_key_map(p: u32, map: &BTreeMap<String, i64>) -> Result<GreenElem, GreenError> {
        let mut g = GreenElem::zero(p);
        for (k, &c) in map {
            let lab = Label::parse_key(k).ok_or_else(|| GreenError::Parse(format!("bad key {k:?}")))?;
            if !lab.is_valid(p) {
                return Err(GreenError::BadLabel { l: lab.l, i: lab.i, p });
            }
            g.add_term(lab, c);
        }
        Ok(g)
    }

    /// Parses sums such as `M(3,0) + 2S_1 - M(2,1)`.
    pub fn parse(p: u32, s: &str) -> Result<GreenElem, GreenError> {
        let err = || GreenError::Parse(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "0" {
            return Ok(GreenElem::zero(p));
        }
        let mut g = GreenElem::zero(p);
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let sign = match rest.as_bytes()[0] {
                b'-' => {
                    rest = &rest[1..];
                    -1
                }
                b'+' => {
                    rest = &rest[1..];
                    1
                }
                _ => 1,
            };
            let digits = rest.bytes().take_while(u8::is_ascii_digit).count();
            let coef: i64 = if digits == 0 { 1 } else { rest[..digits].parse().map_err(|_| err())? };
            rest = &rest[digits..];
            let (lab, used) = if let Some(r) = rest.strip_prefix("S_") {
                let n = r.bytes().take_while(u8::is_ascii_digit).count();
                if n == 0 {
                    return Err(err());
                }
                (Label::new(1, r[..n].parse().map_err(|_| err())?), 2 + n)
            } else if let Some(r) = rest.strip_prefix("M(") {
                let close = r.find(')').ok_or_else(err)?;
                (Label::parse_key(&r[..close]).ok_or_else(err)?, 2 + close + 1)
            } else {
                return Err(err());
            };
            if !lab.is_valid(p) {
                return Err(GreenError::BadLabel { l: lab.l, i: lab.i, p });
            }
            g.add_term(lab, sign * coef);
            rest = &rest[used..];
        }
        Ok(g)
    }
}

impl fmt::Display for GreenElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (lab, &c) in self.coeffs.iter().rev() {
            let mag = c.unsigned_abs();
            let body = if mag == 1 { lab.to_string() } else { format!("{mag}{lab}") };
            match (first, c < 0) {
                (true, false) => write!(f, "{body}")?,
                (true, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, " + {body}")?,
                (false, true) => write!(f, " - {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl Add for &GreenElem {
    type Output = GreenElem;
    fn add(self, rhs: &GreenElem) -> GreenElem {
        self.try_add(rhs).expect("same characteristic")
    }
}

impl Sub for &GreenElem {
    type Output = GreenElem;
    fn sub(self, rhs: &GreenElem) -> GreenElem {
        self.try_add(&rhs.scale(-1)).expect("same characteristic")
    }
}

impl Neg for &GreenElem {
    type Output = GreenElem;
    fn neg(self) -> GreenElem {
        self.scale(-1)
    }
}

impl Mul for &GreenElem {
    type Output = GreenElem;
    fn mul(self, rhs: &GreenElem) -> GreenElem {
        self.try_mul(rhs).expect("same characteristic")
    }
}

/// `[M(l, r)] * [M(m, r')]` by the closed-form tensor product rules.
pub fn basis_product(p: u32, a: Label, b: Label) -> Result<GreenElem, GreenError> {
    for lab in [a, b] {
        if !lab.is_valid(p) {
            return Err(GreenError::BadLabel { l: lab.l, i: lab.i, p });
        }
    }
    let (Label { l, i: r1 }, Label { l: m, i: r2 }) = if a.l <= b.l { (a, b) } else { (b, a) };
    let s = r1 + r2;
    let mut g = GreenElem::zero(p);
    let mut put = |len: u32, w: u32| g.add_term(Label::new(len, w % p), 1);
    if l == 1 {
        put(m, s);
    } else if m == p {
        for i in 0..l {
            put(p, s + i);
        }
    } else if l + m <= p {
        for i in 1..=l {
            put(m + 2 * i - l - 1, s + l - i);
        }
    } else {
        for i in 1..=p - m {
            put(m + 2 * i - l - 1, s + l - i);
        }
        for i in 1..=l + m - p {
            put(p, s + i - 1);
        }
    }
    debug_assert_eq!(g.dim(), (l * m) as i64);
    Ok(g)
}

pub fn mul(a: &GreenElem, b: &GreenElem) -> Result<GreenElem, GreenError> {
    a.try_mul(b)
}

/// `u_l` from `u_1 = 1`, `u_2 = x`, `u_l = x u_{l-1} - a u_{l-2}`, checked
/// against `[M(l, 0)]`.
pub fn chebyshev_class(p: u32, l: u32) -> Result<GreenElem, GreenError> {
    if !(1..=p).contains(&l) {
        return Err(GreenError::BadLength { l, p });
    }
    let (a, x) = (GreenElem::a(p), GreenElem::x(p));
    let mut prev = GreenElem::one(p);
    if l == 1 {
        return Ok(prev);
    }
    let mut cur = x.clone();
    for _ in 3..=l {
        let next = &(&x * &cur) - &(&a * &prev);
        prev = cur;
        cur = next;
    }
    let expected = GreenElem::basis(p, l, 0)?;
    if cur != expected {
        return Err(GreenError::CheckFailed(format!("u_{l} = {cur}, expected {expected}")));
    }
    Ok(cur)
}

/// Polynomial in `Z[y, z]`, keyed by `(deg_y, deg_z)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntPoly2 {
    terms: BTreeMap<(u32, u32), i64>,
}

impl IntPoly2 {
    pub fn zero() -> IntPoly2 {
        IntPoly2::default()
    }

    pub fn monomial(c: i64, dy: u32, dz: u32) -> IntPoly2 {
        let mut f = IntPoly2::zero();
        f.add_term(dy, dz, c);
        f
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), i64> {
        &self.terms
    }

    pub fn coeff(&self, dy: u32, dz: u32) -> i64 {
        self.terms.get(&(dy, dz)).copied().unwrap_or(0)
    }

    fn add_term(&mut self, dy: u32, dz: u32, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry((dy, dz)).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&(dy, dz));
        }
    }

    pub fn deg_z(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, dz)| dz).max()
    }

    pub fn add(&self, other: &IntPoly2) -> IntPoly2 {
        let mut f = self.clone();
        for (&(dy, dz), &c) in &other.terms {
            f.add_term(dy, dz, c);
        }
        f
    }

    pub fn sub(&self, other: &IntPoly2) -> IntPoly2 {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, n: i64) -> IntPoly2 {
        let mut f = IntPoly2::zero();
        for (&(dy, dz), &c) in &self.terms {
            f.add_term(dy, dz, c * n);
        }
        f
    }

    pub fn mul(&self, other: &IntPoly2) -> IntPoly2 {
        let mut f = IntPoly2::zero();
        for (&(a, b), &c) in &self.terms {
            for (&(d, e), &g) in &other.terms {
                f.add_term(a + d, b + e, c * g);
            }
        }
        f
    }

    /// Substitutes ring elements for `y` and `z`.
    pub fn eval(&self, y: &GreenElem, z: &GreenElem) -> GreenElem {
        let p = y.p();
        let mut out = GreenElem::zero(p);
        for (&(dy, dz), &c) in &self.terms {
            out = &out + &(&y.pow(dy) * &z.pow(dz)).scale(c);
        }
        out
    }
}

impl fmt::Display for IntPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mono = |v: &str, d: u32| match d {
            0 => String::new(),
            1 => v.to_string(),
            _ => format!("{v}^{d}"),
        };
        let mut first = true;
        // highest z-degree first
        let mut keys: Vec<_> = self.terms.iter().collect();
        keys.sort_by_key(|&(&(dy, dz), _)| (std::cmp::Reverse(dz), dy));
        for (&(dy, dz), &c) in keys {
            let m = format!("{}{}", mono("y", dy), mono("z", dz));
            let mag = c.unsigned_abs();
            let body = match (mag, m.is_empty()) {
                (_, true) => mag.to_string(),
                (1, false) => m,
                _ => format!("{mag}{m}"),
            };
            match (first, c < 0) {
                (true, false) => write!(f, "{body}")?,
                (true, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, " + {body}")?,
                (false, true) => write!(f, " - {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

fn binomial(n: u64, k: u64) -> i64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 0..k {
        acc = acc * (n - j) as u128 / (j + 1) as u128;
    }
    acc as i64
}

/// `f_n = sum_i (-1)^i C(n-1-i, i) y^i z^(n-1-2i)`.
pub fn f_poly_closed(n: u32) -> IntPoly2 {
    assert!(n >= 1);
    let mut f = IntPoly2::zero();
    for i in 0..=(n - 1) / 2 {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        f.add_term(i, n - 1 - 2 * i, sign * binomial((n - 1 - i) as u64, i as u64));
    }
    f
}

/// `f_1 = 1`, `f_2 = z`, `f_n = z f_{n-1} - y f_{n-2}`.
pub fn f_poly_recursive(n: u32) -> IntPoly2 {
    assert!(n >= 1);
    let (y, z) = (IntPoly2::monomial(1, 1, 0), IntPoly2::monomial(1, 0, 1));
    let mut prev = IntPoly2::monomial(1, 0, 0);
    if n == 1 {
        return prev;
    }
    let mut cur = z.clone();
    for _ in 3..=n {
        let next = z.mul(&cur).sub(&y.mul(&prev));
        prev = cur;
        cur = next;
    }
    cur
}

/// `f_n`, computed both ways; panics if the two disagree.
pub fn f_poly(n: u32) -> IntPoly2 {
    let closed = f_poly_closed(n);
    assert_eq!(closed, f_poly_recursive(n), "closed form and recursion for f_{n} disagree");
    closed
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresentationReport {
    pub p: u32,
    /// `a^p = 1`.
    pub a_order_p: bool,
    /// `(x - a - 1) u_p = 0`.
    pub annihilates_up: bool,
    /// `{a^r u_l}` is exactly the set of basis classes `[M(l, r)]`.
    pub basis_recovered: bool,
    /// `u_l = [M(l, 0)]` for every l.
    pub chebyshev_matches: bool,
    /// `y^p - 1` and `(z - y - 1) f_p` vanish at `(y, z) = (a, x)`.
    pub ideal_generators_vanish: bool,
    /// `f_l(a, x) = u_l` for every l.
    pub f_poly_evaluates_to_u: bool,
}

impl PresentationReport {
    pub fn passed(&self) -> bool {
        self.a_order_p
            && self.annihilates_up
            && self.basis_recovered
            && self.chebyshev_matches
            && self.ideal_generators_vanish
            && self.f_poly_evaluates_to_u
    }
}

/// Checks the identities behind the presentation `r(U) = Z[y, z]/(y^p - 1,
/// (z - y - 1) f_p(y, z))` with `y -> a`, `z -> x`.
pub fn presentation_check(p: u32) -> Result<PresentationReport, GreenError> {
    let one = GreenElem::one(p);
    let (a, x) = (GreenElem::a(p), GreenElem::x(p));

    let a_order_p = a.pow(p) == one && (1..p).all(|r| a.pow(r) != one);
    if !a_order_p {
        return Err(GreenError::CheckFailed(format!("a^{p} = {} != 1 or a has smaller order", a.pow(p))));
    }

    // chebyshev_class fails with CheckFailed on the first mismatch
    let us = (1..=p).map(|l| chebyshev_class(p, l)).collect::<Result<Vec<_>, _>>()?;
    let chebyshev_matches = true;
    let up = &us[p as usize - 1];
    let factor = &(&x - &a) - &one;
    let annihilates_up = (&factor * up).is_zero();
    if !annihilates_up {
        return Err(GreenError::CheckFailed(format!("(x - a - 1) u_{p} = {}", &factor * up)));
    }

    let mut seen = std::collections::BTreeSet::new();
    for r in 0..p {
        for (l, u) in us.iter().enumerate() {
            let prod = &a.pow(r) * u;
            let expect = GreenElem::basis(p, l as u32 + 1, r)?;
            if prod != expect {
                return Err(GreenError::CheckFailed(format!("a^{r} u_{} = {prod}, expected {expect}", l + 1)));
            }
            seen.insert((l as u32 + 1, r));
        }
    }
    let basis_recovered = seen.len() == (p * p) as usize;

    let fp = f_poly(p);
    let y = IntPoly2::monomial(1, 1, 0);
    let gen1 = IntPoly2::monomial(1, p, 0).sub(&IntPoly2::monomial(1, 0, 0));
    let gen2 = IntPoly2::monomial(1, 0, 1).sub(&y).sub(&IntPoly2::monomial(1, 0, 0)).mul(&fp);
    let ideal_generators_vanish = gen1.eval(&a, &x).is_zero() && gen2.eval(&a, &x).is_zero();
    if !ideal_generators_vanish {
        return Err(GreenError::CheckFailed("an ideal generator does not vanish at (a, x)".into()));
    }
    let f_poly_evaluates_to_u = us.iter().enumerate().all(|(l, u)| f_poly(l as u32 + 1).eval(&a, &x) == *u);
    if !f_poly_evaluates_to_u {
        return Err(GreenError::CheckFailed("f_l(a, x) != u_l".into()));
    }

    Ok(PresentationReport {
        p,
        a_order_p,
        annihilates_up,
        basis_recovered,
        chebyshev_matches,
        ideal_generators_vanish,
        f_poly_evaluates_to_u,
    })
}

/// Frobenius–Perron dimension of `sum a_{li} M(l, i)` by the closed formulas
/// for p = 2 (the dimension) and p = 3.
pub fn fpdim(p: u32, d: &Decomposition) -> Result<f64, GreenError> {
    let a = |l: u32, i: u32| d.get(Label::new(l, i)) as f64;
    match p {
        2 => Ok(d.dim() as f64),
        3 => {
            let alpha: f64 = (0..3).map(|i| a(1, i) + 2.0 * a(2, i) + 3.0 * a(3, i)).sum();
            let beta = a(1, 2) + a(2, 1) + a(2, 2) + a(3, 0) + a(3, 1) + a(3, 2);
            let gamma = a(1, 0) + a(2, 2) + a(3, 1);
            Ok(0.5 * ((alpha + gamma) + ((alpha - gamma).powi(2) + 4.0 * beta * beta).sqrt()))
        }
        _ => Err(GreenError::UnsupportedCharacteristic(p)),
    }
}

/// Spectral radius of multiplication by `g` on `r(U) (x) R`, by power iteration
/// on the nonnegative p^2 x p^2 structure matrix. Reported as data only.
pub fn multiplication_spectral_radius(g: &GreenElem) -> f64 {
    let p = g.p();
    let labels: Vec<Label> = (1..=p).flat_map(|l| (0..p).map(move |i| Label::new(l, i))).collect();
    let n = labels.len();
    let index: BTreeMap<Label, usize> = labels.iter().enumerate().map(|(k, &lab)| (lab, k)).collect();
    let mut mat = vec![vec![0.0f64; n]; n];
    for (col, &lab) in labels.iter().enumerate() {
        let prod = g * &GreenElem::basis(p, lab.l, lab.i).expect("valid label");
        for (l2, &c) in prod.coeffs() {
            mat[index[l2]][col] = c as f64;
        }
    }
    // shift by the identity so periodic (permutation-like) parts converge
    let mut v = vec![1.0f64; n];
    let mut lambda = 0.0;
    for _ in 0..5000 {
        let mut next: Vec<f64> = (0..n).map(|r| v[r] + (0..n).map(|c| mat[r][c] * v[c]).sum::<f64>()).collect();
        let norm = next.iter().cloned().fold(0.0f64, f64::max);
        if norm == 0.0 {
            return 0.0;
        }
        next.iter_mut().for_each(|x| *x /= norm);
        let diff: f64 = next.iter().zip(&v).map(|(a, b)| (a - b).abs()).sum();
        lambda = norm - 1.0;
        v = next;
        if diff < 1e-14 {
            break;
        }
    }
    lambda
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lab(l: u32, i: u32) -> Label {
        Label::new(l, i)
    }

    fn g(p: u32, s: &str) -> GreenElem {
        GreenElem::parse(p, s).unwrap()
    }

    #[test]
    fn f_poly_examples() {
        assert_eq!(f_poly(1), IntPoly2::monomial(1, 0, 0));
        assert_eq!(f_poly(2), IntPoly2::monomial(1, 0, 1));
        assert_eq!(f_poly(3), IntPoly2::monomial(1, 0, 2).sub(&IntPoly2::monomial(1, 1, 0)));
        let f5 = IntPoly2::monomial(1, 0, 4).add(&IntPoly2::monomial(-3, 1, 2)).add(&IntPoly2::monomial(1, 2, 0));
        assert_eq!(f_poly(5), f5);
        assert_eq!(f_poly(5).to_string(), "z^4 - 3yz^2 + y^2");
        for n in 1..=20 {
            assert_eq!(f_poly(n).deg_z(), Some(n - 1));
        }
    }

    #[test]
    fn basis_product_examples() {
        assert_eq!(basis_product(3, lab(2, 0), lab(2, 0)).unwrap(), g(3, "S_1 + M(3,0)"));
        assert_eq!(basis_product(5, lab(2, 0), lab(3, 0)).unwrap(), g(5, "M(2,1) + M(4,0)"));
        assert_eq!(basis_product(2, lab(2, 0), lab(2, 1)).unwrap(), g(2, "M(2,1) + M(2,0)"));
        assert_eq!(basis_product(3, lab(4, 0), lab(1, 0)), Err(GreenError::BadLabel { l: 4, i: 0, p: 3 }));
    }

    #[test]
    fn mul_examples() {
        for p in [2, 3, 5] {
            let any = g(p, "M(2,1) + 3S_0");
            assert_eq!(&GreenElem::one(p) * &any, any);
            assert_eq!(GreenElem::a(p).pow(p), GreenElem::one(p));
            let mp = GreenElem::basis(p, p, 0).unwrap();
            let rhs = &(&GreenElem::a(p) + &GreenElem::one(p)) * &mp;
            assert_eq!(&GreenElem::x(p) * &mp, rhs);
        }
        assert_eq!(mul(&GreenElem::one(2), &GreenElem::one(3)), Err(GreenError::CharacteristicMismatch(2, 3)));
    }

    #[test]
    fn chebyshev_examples() {
        assert_eq!(chebyshev_class(3, 1).unwrap(), GreenElem::one(3));
        assert_eq!(chebyshev_class(3, 2).unwrap(), GreenElem::x(3));
        assert_eq!(chebyshev_class(3, 3).unwrap(), g(3, "M(3,0)"));
        assert_eq!(chebyshev_class(5, 5).unwrap(), g(5, "M(5,0)"));
        assert_eq!(chebyshev_class(3, 4), Err(GreenError::BadLength { l: 4, p: 3 }));
    }

    #[test]
    fn presentation_passes() {
        for p in [2, 3, 5, 7] {
            assert!(presentation_check(p).unwrap().passed());
        }
        let a = GreenElem::a(5);
        let simples: Vec<_> = (0..5).map(|r| a.pow(r)).collect();
        let expect: Vec<_> = (0..5).map(|r| GreenElem::basis(5, 1, r).unwrap()).collect();
        assert_eq!(simples, expect);
    }

    #[test]
    fn fpdim_examples() {
        let one = |l, i, p| Decomposition::from_pairs(p, &[((l, i), 1)]);
        assert_eq!(fpdim(2, &one(2, 1, 2)).unwrap(), 2.0);
        assert_eq!(fpdim(3, &one(1, 0, 3)).unwrap(), 1.0);
        let m30 = fpdim(3, &one(3, 0, 3)).unwrap();
        assert!((m30 - (3.0 + 13f64.sqrt()) / 2.0).abs() < 1e-12);
        assert_eq!(fpdim(5, &one(1, 0, 5)), Err(GreenError::UnsupportedCharacteristic(5)));
    }

    #[test]
    fn spectral_radius_of_simples_is_one() {
        for p in [2, 3] {
            for i in 0..p {
                let r = multiplication_spectral_radius(&GreenElem::basis(p, 1, i).unwrap());
                assert!((r - 1.0).abs() < 1e-9, "p={p} i={i} r={r}");
            }
        }
        let r = multiplication_spectral_radius(&GreenElem::basis(2, 2, 0).unwrap());
        assert!((r - 2.0).abs() < 1e-9);
    }

    #[test]
    fn parse_and_display() {
        let x = g(3, "M(3,0) + 2S_1 - M(2,2)");
        assert_eq!(x.to_string(), "M(3,0) - M(2,2) + 2S_1");
        assert_eq!(GreenElem::parse(3, &x.to_string()).unwrap(), x);
        assert_eq!(GreenElem::from_key_map(3, &x.to_key_map()).unwrap(), x);
        assert!(GreenElem::parse(3, "M(4,0)").is_err());
        assert!(GreenElem::parse(3, "T_1").is_err());
    }
}
