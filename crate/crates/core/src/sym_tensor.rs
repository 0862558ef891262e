//! Bi-homogeneous elements of `S^k C^N ⊗ S^l (C^N)*`.
//!
//! Elements are written as polynomials in commuting variables `x_1..x_N`
//! (the symmetric algebra of `C^N`) and `d_1..d_N` (the dual basis, acting
//! as the partial derivatives). Every element uses the orientation
//! `x-part ⊗ d-part`, so the swap between `(C^N)* ⊗ S^m C^N` and
//! `S^m C^N ⊗ (C^N)*` is the identity on the stored data.
//!
//! The Lie algebra sl(N) acts by derivations: `E_ij x_m = δ_jm x_i` and
//! `E_ij d_m = -δ_im d_j`.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};

use crate::error::{check_dims, Error, ParseError, Result};
use crate::poly::{binomial, falling_factorial, format_monomial, ExpVec, Poly, Rat};

type Key = (ExpVec, ExpVec);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorElement {
    n: usize,
    xdeg: i64,
    ddeg: i64,
    terms: BTreeMap<Key, Rat>,
}

impl TensorElement {
    pub fn zero(n: usize, xdeg: i64, ddeg: i64) -> Self {
        TensorElement {
            n,
            xdeg,
            ddeg,
            terms: BTreeMap::new(),
        }
    }

    /// `1 ⊗ 1`, the unit of bi-degree (0, 0).
    pub fn one(n: usize) -> Self {
        Self::monomial(n, ExpVec::zeros(n), ExpVec::zeros(n), Rat::one())
    }

    pub fn monomial(n: usize, a: ExpVec, b: ExpVec, c: Rat) -> Self {
        assert!(a.len() == n && b.len() == n, "exponent vector length");
        assert!(
            a.is_nonnegative() && b.is_nonnegative(),
            "tensor exponents are nonnegative"
        );
        let mut t = Self::zero(n, a.degree(), b.degree());
        t.add_term(a, b, c);
        t
    }

    /// `P ⊗ Q` for homogeneous `P` in the x-variables and `Q` in the d-variables.
    pub fn from_product(p: &Poly, q: &Poly) -> Result<Self> {
        check_dims(p.nvars(), q.nvars())?;
        if p.is_laurent() || q.is_laurent() {
            return Err(Error::Unsupported("Laurent tensor factor".into()));
        }
        if !p.is_homogeneous() || !q.is_homogeneous() {
            return Err(Error::Domain("tensor factors must be homogeneous".into()));
        }
        let mut t = Self::zero(p.nvars(), p.degree().unwrap_or(0), q.degree().unwrap_or(0));
        for (a, ca) in p.terms() {
            for (b, cb) in q.terms() {
                t.add_term(a.clone(), b.clone(), ca * cb);
            }
        }
        Ok(t)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bidegree(&self) -> (i64, i64) {
        (self.xdeg, self.ddeg)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExpVec, &ExpVec, &Rat)> {
        self.terms.iter().map(|((a, b), c)| (a, b, c))
    }

    pub fn coeff(&self, a: &ExpVec, b: &ExpVec) -> Rat {
        self.terms
            .get(&(a.clone(), b.clone()))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    fn add_term(&mut self, a: ExpVec, b: ExpVec, c: Rat) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(a.degree(), self.xdeg);
        debug_assert_eq!(b.degree(), self.ddeg);
        let key = (a, b);
        let entry = self.terms.entry(key.clone()).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    fn check_same_space(&self, other: &TensorElement) -> Result<()> {
        check_dims(self.n, other.n)?;
        if self.bidegree() != other.bidegree() {
            return Err(Error::Domain(format!(
                "bi-degrees {:?} and {:?} differ",
                self.bidegree(),
                other.bidegree()
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &TensorElement) -> Result<TensorElement> {
        self.check_same_space(other)?;
        let mut out = self.clone();
        for ((a, b), c) in &other.terms {
            out.add_term(a.clone(), b.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &TensorElement) -> Result<TensorElement> {
        self.checked_add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> TensorElement {
        let mut out = Self::zero(self.n, self.xdeg, self.ddeg);
        for ((a, b), v) in &self.terms {
            out.add_term(a.clone(), b.clone(), v * c);
        }
        out
    }

    /// `(P ⊗ Q)(P' ⊗ Q') = PP' ⊗ QQ'`.
    pub fn tensor_mul(&self, other: &TensorElement) -> Result<TensorElement> {
        check_dims(self.n, other.n)?;
        let mut out = Self::zero(self.n, self.xdeg + other.xdeg, self.ddeg + other.ddeg);
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &other.terms {
                out.add_term(a1.add(a2), b1.add(b2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> TensorElement {
        let mut acc = TensorElement::one(self.n);
        for _ in 0..k {
            acc = acc.tensor_mul(self).expect("same rank");
        }
        acc
    }

    /// The x-part as a polynomial when the d-degree is zero.
    pub fn to_poly(&self) -> Option<Poly> {
        if self.ddeg != 0 {
            return None;
        }
        Some(Poly::from_terms(
            self.n,
            self.terms.iter().map(|((a, _), c)| (a.clone(), c.clone())),
        ))
    }

    /// Parses `1*x1^2|d1 + -3*x1x2|d2`; a term is `x-polynomial | d-polynomial`.
    pub fn parse(text: &str, n: usize) -> Result<TensorElement> {
        let trimmed = text.trim();
        if trimmed == "0" {
            return Ok(TensorElement::zero(n, 0, 0));
        }
        let mut depth = 0i32;
        let mut pieces = Vec::new();
        let mut start = 0;
        for (i, ch) in trimmed.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                '+' if depth == 0 => {
                    pieces.push((start, &trimmed[start..i]));
                    start = i + 1;
                }
                _ => {}
            }
        }
        pieces.push((start, &trimmed[start..]));
        let mut acc: Option<TensorElement> = None;
        for (offset, piece) in pieces {
            let (left, right) = piece.split_once('|').ok_or_else(|| {
                Error::Parse(ParseError {
                    line: 1,
                    column: offset + 1,
                    message: "tensor term needs the form 'x-part|d-part'".into(),
                })
            })?;
            let p = crate::poly::text::parse_with_letters(left.trim(), n, &['x'])?;
            let q = crate::poly::text::parse_with_letters(right.trim(), n, &['d'])?;
            let t = TensorElement::from_product(&p, &q)?;
            acc = Some(match acc {
                None => t,
                Some(prev) if prev.is_zero() => t,
                Some(prev) if t.is_zero() => prev,
                Some(prev) => prev.checked_add(&t)?,
            });
        }
        Ok(acc.unwrap_or_else(|| TensorElement::zero(n, 0, 0)))
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, ((a, b), c)) in self.terms.iter().rev().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            let xm = format_monomial(&a.0, 'x', "");
            let dm = format_monomial(&b.0, 'd', "");
            write!(
                f,
                "{}*{}|{}",
                c,
                if xm.is_empty() { "1".into() } else { xm },
                if dm.is_empty() { "1".into() } else { dm }
            )?;
        }
        Ok(())
    }
}

/// Basis element of sl(N), indices one-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LieBasisElem {
    /// The matrix unit `E_ij`, `i != j`.
    OffDiagonal { i: usize, j: usize },
    /// `E_ii - E_{i+1,i+1}`.
    Cartan { i: usize },
}

impl LieBasisElem {
    /// The standard basis of sl(n): `n(n-1)` matrix units and `n-1` Cartan elements.
    pub fn basis(n: usize) -> Vec<LieBasisElem> {
        let mut out = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                if i != j {
                    out.push(LieBasisElem::OffDiagonal { i, j });
                }
            }
        }
        for i in 1..n {
            out.push(LieBasisElem::Cartan { i });
        }
        out
    }

    /// The element as a sum of matrix units `(coef, i, j)`, zero-based.
    fn units(self) -> Vec<(i32, usize, usize)> {
        match self {
            LieBasisElem::OffDiagonal { i, j } => vec![(1, i - 1, j - 1)],
            LieBasisElem::Cartan { i } => vec![(1, i - 1, i - 1), (-1, i, i)],
        }
    }

    fn check(self, n: usize) -> Result<()> {
        let ok = match self {
            LieBasisElem::OffDiagonal { i, j } => {
                i != j && (1..=n).contains(&i) && (1..=n).contains(&j)
            }
            LieBasisElem::Cartan { i } => (1..n).contains(&i),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Index(format!(
                "{:?} is not a basis element of sl({})",
                self, n
            )))
        }
    }
}

/// `E_ij x^a = a_j x^{a - e_j + e_i}` as a list of (exponents, factor).
fn act_on_x(units: &[(i32, usize, usize)], a: &ExpVec) -> Vec<(ExpVec, i64)> {
    let mut out = Vec::new();
    for &(s, i, j) in units {
        let aj = a.0[j] as i64;
        if aj == 0 {
            continue;
        }
        let mut e = a.clone();
        e.0[j] -= 1;
        e.0[i] += 1;
        out.push((e, s as i64 * aj));
    }
    out
}

/// `E_ij d^b = -b_i d^{b - e_i + e_j}`.
fn act_on_d(units: &[(i32, usize, usize)], b: &ExpVec) -> Vec<(ExpVec, i64)> {
    let mut out = Vec::new();
    for &(s, i, j) in units {
        let bi = b.0[i] as i64;
        if bi == 0 {
            continue;
        }
        let mut e = b.clone();
        e.0[i] -= 1;
        e.0[j] += 1;
        out.push((e, -(s as i64) * bi));
    }
    out
}

/// Action of a basis element on a tensor element (a derivation in both factors).
pub fn lie_act(x: LieBasisElem, t: &TensorElement) -> Result<TensorElement> {
    x.check(t.n)?;
    let units = x.units();
    let mut out = TensorElement::zero(t.n, t.xdeg, t.ddeg);
    for ((a, b), c) in &t.terms {
        for (na, f) in act_on_x(&units, a) {
            out.add_term(na, b.clone(), c * Rat::from_integer(f.into()));
        }
        for (nb, f) in act_on_d(&units, b) {
            out.add_term(a.clone(), nb, c * Rat::from_integer(f.into()));
        }
    }
    Ok(out)
}

/// Action on the symmetric algebra `S C^N` alone.
pub fn lie_act_poly(x: LieBasisElem, p: &Poly) -> Result<Poly> {
    x.check(p.nvars())?;
    if p.is_laurent() {
        return Err(Error::Unsupported(
            "Lie action on a Laurent polynomial".into(),
        ));
    }
    let units = x.units();
    let mut terms = Vec::new();
    for (a, c) in p.terms() {
        for (na, f) in act_on_x(&units, a) {
            terms.push((na, c * Rat::from_integer(f.into())));
        }
    }
    Ok(Poly::from_terms(p.nvars(), terms))
}

/// `div(P ⊗ Q) = Q(∂)P`; zero when the x-degree is below the d-degree.
pub fn div_map(t: &TensorElement) -> Poly {
    if t.xdeg < t.ddeg {
        return Poly::zero(t.n);
    }
    let mut terms = Vec::new();
    for ((a, b), c) in &t.terms {
        if !a.dominates(b) {
            continue;
        }
        let mut factor = num::BigInt::one();
        for (&am, &bm) in a.0.iter().zip(&b.0) {
            factor *= falling_factorial(am as i64, bm as i64);
        }
        terms.push((a.sub(b), c * Rat::from_integer(factor)));
    }
    Poly::from_terms(t.n, terms)
}

/// `E(p) = sum_i (p x_i) ⊗ d_i` for homogeneous `p` of degree `k`; the
/// result has bi-degree `(k + 1, 1)`.
pub fn euler_map(p: &Poly) -> Result<TensorElement> {
    if p.is_laurent() {
        return Err(Error::Unsupported(
            "Euler map of a Laurent polynomial".into(),
        ));
    }
    if !p.is_homogeneous() {
        return Err(Error::Domain(
            "Euler map needs a homogeneous polynomial".into(),
        ));
    }
    let n = p.nvars();
    let k = p.degree().unwrap_or(0);
    let mut out = TensorElement::zero(n, k + 1, 1);
    for i in 0..n {
        for (a, c) in p.terms() {
            let mut e = a.clone();
            e.0[i] += 1;
            out.add_term(e, ExpVec::unit(n, i), c.clone());
        }
    }
    Ok(out)
}

/// [`euler_map`] with the degree stated explicitly, so that the zero
/// polynomial lands in the right bi-degree.
pub fn euler_map_of_degree(p: &Poly, k: i64) -> Result<TensorElement> {
    if p.is_zero() {
        return Ok(TensorElement::zero(p.nvars(), k + 1, 1));
    }
    if p.degree() != Some(k) {
        return Err(Error::Domain(format!("polynomial is not of degree {}", k)));
    }
    euler_map(p)
}

fn check_psi_domain(t: &TensorElement) -> Result<()> {
    if t.xdeg < t.ddeg - 1 {
        return Err(Error::Domain(format!(
            "Psi needs k >= l - 1, got bi-degree {:?}",
            t.bidegree()
        )));
    }
    Ok(())
}

/// `Psi(sum P_j ⊗ Q_j) = sum_j sum_i Q_j(∂)(P_j x_i) ⊗ d_i`, bi-degree
/// `(k - l + 1, 1)`.
pub fn psi_map(t: &TensorElement) -> Result<TensorElement> {
    check_psi_domain(t)?;
    let n = t.n;
    let mut out = TensorElement::zero(n, t.xdeg - t.ddeg + 1, 1);
    for ((a, b), c) in &t.terms {
        let base = Poly::monomial(n, a.clone(), c.clone());
        let alpha: Vec<u32> = b.0.iter().map(|&e| e as u32).collect();
        for i in 0..n {
            let lifted = &base * &Poly::var(n, i);
            let derived = lifted.derive_multi(&alpha)?;
            for (e, v) in derived.terms() {
                out.add_term(e.clone(), ExpVec::unit(n, i), v.clone());
            }
        }
    }
    Ok(out)
}

/// `Psi` assembled literally as `σ ∘ (id ⊗ div) ∘ (E ⊗ id)`.
pub fn psi_composite(t: &TensorElement) -> Result<TensorElement> {
    check_psi_domain(t)?;
    let n = t.n;
    // E ⊗ id: one S^{k+1} ⊗ S^l slot per dual basis vector d_i.
    let mut slots: Vec<TensorElement> = (0..n)
        .map(|_| TensorElement::zero(n, t.xdeg + 1, t.ddeg))
        .collect();
    for ((a, b), c) in &t.terms {
        let e = euler_map(&Poly::monomial(n, a.clone(), c.clone()))?;
        for ((ea, eb), ec) in &e.terms {
            let i =
                eb.0.iter()
                    .position(|&v| v == 1)
                    .expect("degree-one dual part");
            slots[i].add_term(ea.clone(), b.clone(), ec.clone());
        }
    }
    // id ⊗ div, then σ: P_i ⊗ d_i.
    let mut out = TensorElement::zero(n, t.xdeg - t.ddeg + 1, 1);
    for (i, slot) in slots.iter().enumerate() {
        let p = div_map(slot);
        for (e, v) in p.terms() {
            out.add_term(e.clone(), ExpVec::unit(n, i), v.clone());
        }
    }
    Ok(out)
}

/// The swap `Σ d_i ⊗ P_i ↦ Σ P_i ⊗ d_i`. With the fixed storage orientation
/// it returns its input unchanged.
pub fn sigma(t: &TensorElement) -> TensorElement {
    t.clone()
}

/// All monomials `x^a ⊗ d^b` with `|a| = k`, `|b| = l`.
pub fn bihomogeneous_basis(n: usize, k: i64, l: i64) -> Vec<(ExpVec, ExpVec)> {
    let xs = exponents_of_degree(n, k);
    let ds = exponents_of_degree(n, l);
    let mut out = Vec::with_capacity(xs.len() * ds.len());
    for a in &xs {
        for b in &ds {
            out.push((a.clone(), b.clone()));
        }
    }
    out
}

/// All exponent vectors of length `n` and total degree `k`.
pub fn exponents_of_degree(n: usize, k: i64) -> Vec<ExpVec> {
    fn rec(pos: usize, left: i32, cur: &mut Vec<i32>, out: &mut Vec<ExpVec>) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(ExpVec(cur.clone()));
            return;
        }
        for v in (0..=left).rev() {
            cur[pos] = v;
            rec(pos + 1, left - v, cur, out);
        }
    }
    if k < 0 || n == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    rec(0, k as i32, &mut vec![0; n], &mut out);
    debug_assert_eq!(
        num::BigInt::from(out.len()),
        binomial((n as i64 + k - 1) as u64, k as u64)
    );
    out
}
