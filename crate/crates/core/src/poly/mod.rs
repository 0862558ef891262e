//! Exact multivariate polynomials over the rationals.
//!
//! A [`Poly`] stores its terms in a `BTreeMap` keyed by [`ExpVec`], which is
//! ordered graded-lexicographically. Iteration order is therefore
//! deterministic and the last entry is always the leading term. The same type
//! carries Laurent polynomials (negative exponents) behind a flag so that
//! torus characters share the ring arithmetic.

pub(crate) mod text;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{check_dims, Error, Result};

pub use text::parse_poly;

/// Exact rational scalar, always kept in lowest terms with positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n! / (n - k)!` as an exact integer; zero when `k > n`.
pub fn falling_factorial(n: i64, k: i64) -> BigInt {
    if k > n || n < 0 {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= BigInt::from(n - i);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    falling_factorial(n as i64, k as i64) / factorial(k)
}

/// Exponent vector of a monomial, ordered graded-lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExpVec(pub Vec<i32>);

impl ExpVec {
    pub fn zeros(n: usize) -> Self {
        ExpVec(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        ExpVec(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    pub fn add(&self, other: &ExpVec) -> ExpVec {
        ExpVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &ExpVec) -> ExpVec {
        ExpVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Componentwise `self >= other`.
    pub fn dominates(&self, other: &ExpVec) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }
}

impl Ord for ExpVec {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExpVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<i32>> for ExpVec {
    fn from(v: Vec<i32>) -> Self {
        ExpVec(v)
    }
}

/// Sparse multivariate (optionally Laurent) polynomial with rational coefficients.
#[derive(Debug, Clone)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<ExpVec, Rat>,
    laurent: bool,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
            laurent: false,
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        Self::monomial(nvars, ExpVec::zeros(nvars), c)
    }

    /// The coordinate function `x_{i+1}` (zero-based index).
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(nvars, ExpVec::unit(nvars, i), Rat::one())
    }

    pub fn monomial(nvars: usize, exps: ExpVec, c: Rat) -> Self {
        assert_eq!(exps.len(), nvars, "exponent vector length");
        let laurent = !exps.is_nonnegative();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Poly {
            nvars,
            terms,
            laurent,
        }
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging
    /// duplicates and dropping zeros.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (ExpVec, Rat)>,
    {
        let mut p = Poly::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    /// Marks the polynomial as living in the Laurent ring.
    pub fn into_laurent(mut self) -> Self {
        self.laurent = true;
        self
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_laurent(&self) -> bool {
        self.laurent
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

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExpVec, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &ExpVec) -> Rat {
        self.terms.get(e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading_term(&self) -> Option<(&ExpVec, &Rat)> {
        self.terms.iter().next_back()
    }

    /// Largest total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().map(ExpVec::degree).max()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().map(ExpVec::degree).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        match (self.min_degree(), self.degree()) {
            (Some(a), Some(b)) => a == b,
            _ => true,
        }
    }

    pub(crate) fn add_term(&mut self, e: ExpVec, c: Rat) {
        if c.is_zero() {
            return;
        }
        if !e.is_nonnegative() {
            self.laurent = true;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        check_dims(self.nvars, other.nvars)?;
        let mut out = self.clone();
        out.laurent |= other.laurent;
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.checked_add(&-other)
    }

    /// Exact product; errors when the variable counts differ.
    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.mul_trunc(other, None)
    }

    /// Product with every term of total degree above `trunc` discarded.
    pub fn mul_trunc(&self, other: &Poly, trunc: Option<i64>) -> Result<Poly> {
        check_dims(self.nvars, other.nvars)?;
        let mut out = Poly::zero(self.nvars);
        out.laurent = self.laurent || other.laurent;
        for (ea, ca) in &self.terms {
            let da = ea.degree();
            for (eb, cb) in &other.terms {
                if let Some(t) = trunc {
                    if da + eb.degree() > t {
                        continue;
                    }
                }
                out.add_term(ea.add(eb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            let mut z = Poly::zero(self.nvars);
            z.laurent = self.laurent;
            return z;
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
            laurent: self.laurent,
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        self.pow_trunc(k, None)
    }

    pub fn pow_trunc(&self, k: u32, trunc: Option<i64>) -> Poly {
        let mut acc = Poly::one(self.nvars);
        acc.laurent = self.laurent;
        for _ in 0..k {
            acc = acc.mul_trunc(self, trunc).expect("same ring");
        }
        acc
    }

    /// Drops every term of total degree above `d`.
    pub fn truncate(&self, d: i64) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.degree() <= d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
            laurent: self.laurent,
        }
    }

    /// The sum of the terms of total degree exactly `k`.
    pub fn homogeneous_component(&self, k: i64) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.degree() == k)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
            laurent: self.laurent,
        }
    }

    /// Iterated partial derivative `∂^order / ∂x_var^order`.
    pub fn partial_derive(&self, var: usize, order: u32) -> Result<Poly> {
        if self.laurent {
            return Err(Error::Unsupported(
                "differentiation of a Laurent polynomial".into(),
            ));
        }
        if var >= self.nvars {
            return Err(Error::Index(format!(
                "variable {} of a {}-variable polynomial",
                var + 1,
                self.nvars
            )));
        }
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            let a = e.0[var] as i64;
            if a < order as i64 {
                continue;
            }
            let mut ne = e.clone();
            ne.0[var] -= order as i32;
            let factor = Rat::from_integer(falling_factorial(a, order as i64));
            out.add_term(ne, c * factor);
        }
        Ok(out)
    }

    /// Applies the mixed derivative `∂^alpha`.
    pub fn derive_multi(&self, alpha: &[u32]) -> Result<Poly> {
        check_dims(self.nvars, alpha.len())?;
        let mut out = self.clone();
        for (i, &a) in alpha.iter().enumerate() {
            if a > 0 {
                out = out.partial_derive(i, a)?;
            }
            if out.is_zero() {
                break;
            }
        }
        Ok(out)
    }

    /// Composition `p(images)` with all terms of total degree above `trunc`
    /// discarded.
    pub fn substitute(&self, images: &[Poly], trunc: i64) -> Result<Poly> {
        check_dims(self.nvars, images.len())?;
        let m = images.first().map(|p| p.nvars).unwrap_or(0);
        for img in images {
            check_dims(m, img.nvars)?;
            if img.laurent {
                return Err(Error::Unsupported("Laurent substitution image".into()));
            }
        }
        if self.laurent {
            return Err(Error::Unsupported(
                "substitution into a Laurent polynomial".into(),
            ));
        }
        let mut powers: Vec<Vec<Poly>> = vec![vec![Poly::one(m)]; self.nvars];
        let mut out = Poly::zero(m);
        for (e, c) in &self.terms {
            let mut term = Poly::constant(m, c.clone());
            for (i, &k) in e.0.iter().enumerate() {
                let cache = &mut powers[i];
                while cache.len() <= k as usize {
                    let next = cache.last().unwrap().mul_trunc(&images[i], Some(trunc))?;
                    cache.push(next);
                }
                if k > 0 {
                    term = term.mul_trunc(&cache[k as usize], Some(trunc))?;
                }
                if term.is_zero() {
                    break;
                }
            }
            out = out.checked_add(&term)?;
        }
        Ok(out.truncate(trunc))
    }

    /// Coefficient of the monomial with all exponents zero.
    pub fn constant_term(&self) -> Rat {
        self.coeff(&ExpVec::zeros(self.nvars))
    }

    /// Exact division; errors if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Poly> {
        check_dims(self.nvars, divisor.nvars)?;
        let (de, dc) = divisor
            .leading_term()
            .ok_or_else(|| Error::Domain("division by zero polynomial".into()))?;
        let (de, dc) = (de.clone(), dc.clone());
        let allow_negative = self.laurent || divisor.laurent;
        let floor = match (self.min_degree(), divisor.min_degree()) {
            (Some(a), Some(b)) => a - b,
            _ => 0,
        };
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.nvars);
        quot.laurent = allow_negative;
        while let Some((re, rc)) = rem.leading_term() {
            let qe = re.sub(&de);
            if (!allow_negative && !qe.is_nonnegative()) || qe.degree() < floor {
                return Err(Error::Domain("polynomial is not divisible".into()));
            }
            let qc = rc / &dc;
            for (e, c) in &divisor.terms {
                rem.add_term(qe.add(e), -(c * &qc));
            }
            quot.add_term(qe, qc);
        }
        Ok(quot)
    }

    pub fn eval(&self, point: &[Rat]) -> Result<Rat> {
        check_dims(self.nvars, point.len())?;
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(&e.0) {
                if k >= 0 {
                    t *= num::pow::pow(x.clone(), k as usize);
                } else {
                    if x.is_zero() {
                        return Err(Error::Domain("negative power of zero".into()));
                    }
                    t /= num::pow::pow(x.clone(), (-k) as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Renames variables: variable `i` becomes variable `perm[i]`.
    pub fn permute_vars(&self, perm: &[usize]) -> Poly {
        assert_eq!(perm.len(), self.nvars, "permutation length");
        let mut out = Poly::zero(self.nvars);
        out.laurent = self.laurent;
        for (e, c) in &self.terms {
            let mut ne = vec![0; self.nvars];
            for (i, &k) in e.0.iter().enumerate() {
                ne[perm[i]] = k;
            }
            out.add_term(ExpVec(ne), c.clone());
        }
        out
    }

    /// Invariance under the transposition (1 2) and the cycle (1 2 … n),
    /// which together generate the full symmetric group.
    pub fn is_symmetric(&self) -> bool {
        let n = self.nvars;
        if n < 2 {
            return true;
        }
        let mut swap: Vec<usize> = (0..n).collect();
        swap.swap(0, 1);
        let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        self.permute_vars(&swap) == *self && self.permute_vars(&cycle) == *self
    }

    /// Multiplies every exponent vector by `shift` (a monomial translation).
    pub fn shift(&self, shift: &ExpVec) -> Poly {
        let mut out = Poly::zero(self.nvars);
        out.laurent = self.laurent;
        for (e, c) in &self.terms {
            out.add_term(e.add(shift), c.clone());
        }
        out
    }

    /// Maximal componentwise-common monomial factor exponent (the gcd monomial).
    pub fn min_exponents(&self) -> Option<ExpVec> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, e| {
            ExpVec(acc.0.iter().zip(&e.0).map(|(a, b)| *a.min(b)).collect())
        }))
    }

    pub(crate) fn var_letter(&self) -> char {
        if self.laurent {
            'z'
        } else {
            'x'
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let letter = self.var_letter();
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono = format_monomial(&e.0, letter, "*");
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{}", abs)?,
                (false, true) => write!(f, "{}", mono)?,
                (false, false) => write!(f, "{}*{}", abs, mono)?,
            }
        }
        Ok(())
    }
}

/// `x1^2*x3` style rendering; empty string for the unit monomial.
pub(crate) fn format_monomial(exps: &[i32], letter: char, sep: &str) -> String {
    let mut parts = Vec::new();
    for (i, &k) in exps.iter().enumerate() {
        match k {
            0 => {}
            1 => parts.push(format!("{}{}", letter, i + 1)),
            _ => parts.push(format!("{}{}^{}", letter, i + 1, k)),
        }
    }
    parts.join(sep)
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rat::one())
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs)
            .expect("polynomial variable counts must agree")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs)
            .expect("polynomial variable counts must agree")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs)
            .expect("polynomial variable counts must agree")
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}
