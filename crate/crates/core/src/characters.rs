//! Characters of SU(N) as symmetric polynomials on the diagonal torus.
//!
//! The character of `V(lambda)` is the Schur polynomial of the partition of
//! `lambda`, computed as the alternant `a_{p+delta}` divided exactly by the
//! Vandermonde `a_delta`. A symmetric polynomial is decomposed by repeatedly
//! subtracting the Schur polynomial of its leading partition. Partitions that
//! differ by a full column `(c, …, c)` restrict to the same SU(N) character,
//! so exponent vectors are reduced to last part zero when turned into weights.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num::{BigInt, One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{check_dims, Error, Result};
use crate::poly::{ExpVec, Poly, Rat};
use crate::roots::{RootSystemA, Weight};

/// Largest N accepted by the character routines.
pub const MAX_N: usize = 8;
/// Largest total degree of a polynomial handed to the alternant machinery.
pub const MAX_DEGREE: i64 = 40;

/// A class function on SU(N), stored as a symmetric polynomial in `x1..xN`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharClassFn {
    n: usize,
    poly: Poly,
}

impl CharClassFn {
    pub fn new(n: usize, poly: Poly) -> Result<Self> {
        check_dims(n, poly.nvars())?;
        if !poly.is_symmetric() {
            return Err(Error::Domain("class function must be symmetric".into()));
        }
        Ok(CharClassFn { n, poly })
    }

    pub fn one(n: usize) -> Self {
        CharClassFn {
            n,
            poly: Poly::one(n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn mul(&self, other: &CharClassFn) -> Result<CharClassFn> {
        check_dims(self.n, other.n)?;
        Ok(CharClassFn {
            n: self.n,
            poly: self.poly.checked_mul(&other.poly)?,
        })
    }

    pub fn add(&self, other: &CharClassFn) -> Result<CharClassFn> {
        check_dims(self.n, other.n)?;
        Ok(CharClassFn {
            n: self.n,
            poly: self.poly.checked_add(&other.poly)?,
        })
    }

    pub fn scale(&self, c: &Rat) -> CharClassFn {
        CharClassFn {
            n: self.n,
            poly: self.poly.scale(c),
        }
    }

    pub fn pow(&self, k: u32) -> Result<CharClassFn> {
        let mut acc = CharClassFn::one(self.n);
        for _ in 0..k {
            acc = acc.mul(self)?;
            guard_degree(&acc.poly)?;
        }
        Ok(acc)
    }

    /// Value at the identity element, i.e. the dimension for a genuine character.
    pub fn at_identity(&self) -> Rat {
        self.poly
            .eval(&vec![Rat::one(); self.n])
            .expect("evaluation at ones")
    }
}

/// Multiplicities of irreducible characters, keyed by dominant highest weight.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SchurExpansion {
    terms: BTreeMap<Weight, Rat>,
}

impl SchurExpansion {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(w: Weight) -> Self {
        let mut e = Self::new();
        e.add(w, Rat::one());
        e
    }

    pub fn add(&mut self, w: Weight, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w.clone()).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn get(&self, w: &Weight) -> Rat {
        self.terms.get(w).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&Weight, &Rat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when every multiplicity is a nonnegative integer.
    pub fn is_genuine(&self) -> bool {
        self.terms
            .values()
            .all(|c| c.is_integer() && !c.is_negative())
    }

    /// `sum mult * dim V(lambda)`.
    pub fn dimension(&self, rs: &RootSystemA) -> Result<Rat> {
        let mut acc = Rat::zero();
        for (w, c) in &self.terms {
            acc += c * Rat::from_integer(rs.weyl_dim(w)?);
        }
        Ok(acc)
    }

    /// The class function `sum mult * chi_lambda`.
    pub fn to_class_fn(&self, rs: &RootSystemA) -> Result<CharClassFn> {
        let mut poly = Poly::zero(rs.n());
        for (w, c) in &self.terms {
            poly = poly.checked_add(&character_of(rs, w)?.poly.scale(c))?;
        }
        Ok(CharClassFn { n: rs.n(), poly })
    }
}

impl fmt::Display for SchurExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (w, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({}): {}", w, c)?;
        }
        write!(f, "}}")
    }
}

#[derive(Serialize)]
struct ExpansionEntry<'a> {
    weight: &'a Weight,
    multiplicity: String,
}

impl Serialize for SchurExpansion {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.terms.iter().map(|(w, c)| ExpansionEntry {
            weight: w,
            multiplicity: c.to_string(),
        }))
    }
}

fn guard_n(n: usize) -> Result<()> {
    if n > MAX_N {
        return Err(Error::Resource(format!(
            "character computations are limited to N <= {}",
            MAX_N
        )));
    }
    Ok(())
}

fn guard_degree(p: &Poly) -> Result<()> {
    let d = p.degree().unwrap_or(0).max(-p.min_degree().unwrap_or(0));
    if d > MAX_DEGREE {
        return Err(Error::Resource(format!(
            "character degree {} exceeds the limit {}",
            d, MAX_DEGREE
        )));
    }
    Ok(())
}

fn all_permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    // Heap's algorithm; each swap flips the sign.
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut even = true;
    let mut out = vec![(perm.clone(), even)];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            even = !even;
            out.push((perm.clone(), even));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// `sum_sigma sign(sigma) x^{sigma(e)}`.
pub fn alternant(n: usize, exps: &[i64]) -> Poly {
    let terms = all_permutations(n).into_iter().map(|(perm, even)| {
        let mut e = vec![0i32; n];
        for (i, &p) in perm.iter().enumerate() {
            e[p] = exps[i] as i32;
        }
        let c = if even { Rat::one() } else { -Rat::one() };
        (ExpVec(e), c)
    });
    Poly::from_terms(n, terms)
}

/// Schur polynomial of a partition (weakly decreasing, nonnegative).
pub fn schur_polynomial(n: usize, partition: &[i64]) -> Result<Poly> {
    check_dims(n, partition.len())?;
    guard_n(n)?;
    if partition.windows(2).any(|w| w[0] < w[1]) || partition.iter().any(|&p| p < 0) {
        return Err(Error::Domain(format!("{:?} is not a partition", partition)));
    }
    let size: i64 = partition.iter().sum();
    if size > MAX_DEGREE {
        return Err(Error::Resource(format!(
            "partition size {} exceeds the limit {}",
            size, MAX_DEGREE
        )));
    }
    static CACHE: OnceLock<Mutex<HashMap<Vec<i64>, Poly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(partition) {
        return Ok(p.clone());
    }
    let shifted: Vec<i64> = partition
        .iter()
        .enumerate()
        .map(|(i, &p)| p + (n - 1 - i) as i64)
        .collect();
    let mut q = alternant(n, &shifted);
    for i in 0..n {
        for j in i + 1..n {
            let factor = &Poly::var(n, i) - &Poly::var(n, j);
            q = q.div_exact(&factor)?;
        }
    }
    cache.lock().unwrap().insert(partition.to_vec(), q.clone());
    Ok(q)
}

/// Character of the irreducible representation with highest weight `lambda`.
pub fn character_of(rs: &RootSystemA, lambda: &Weight) -> Result<CharClassFn> {
    check_dims(rs.rank(), lambda.rank())?;
    if !lambda.is_dominant() {
        return Err(Error::Domain(format!(
            "weight ({}) is not dominant",
            lambda
        )));
    }
    Ok(CharClassFn {
        n: rs.n(),
        poly: schur_polynomial(rs.n(), &lambda.to_partition())?,
    })
}

/// Writes a symmetric polynomial as a combination of irreducible characters.
pub fn schur_decompose(f: &CharClassFn) -> Result<SchurExpansion> {
    guard_n(f.n)?;
    if !f.poly.is_symmetric() {
        return Err(Error::Domain(
            "cannot decompose an asymmetric polynomial".into(),
        ));
    }
    guard_degree(&f.poly)?;
    let n = f.n;
    let mut rem = f.poly.clone();
    let mut out = SchurExpansion::new();
    while let Some((e, c)) = rem.leading_term() {
        let lead: Vec<i64> = e.0.iter().map(|&a| a as i64).collect();
        let c = c.clone();
        let column = lead[n - 1];
        let reduced: Vec<i64> = lead.iter().map(|a| a - column).collect();
        let shift = ExpVec(vec![column as i32; n]);
        for (se, sc) in schur_polynomial(n, &reduced)?.terms() {
            rem.add_term(se.add(&shift), -(sc * &c));
        }
        out.add(Weight::from_exponents(&lead), c);
    }
    Ok(out)
}

/// Decomposition of `V(lambda) ⊗ V(mu)` into irreducibles.
pub fn tensor_decompose(rs: &RootSystemA, lambda: &Weight, mu: &Weight) -> Result<SchurExpansion> {
    let a = character_of(rs, lambda)?;
    let b = character_of(rs, mu)?;
    schur_decompose(&a.mul(&b)?)
}

/// Weight multiplicities of `V(lambda)`, read off the monomials of its character.
pub fn weight_multiplicities(rs: &RootSystemA, lambda: &Weight) -> Result<BTreeMap<Weight, u64>> {
    let chi = character_of(rs, lambda)?;
    let mut out = BTreeMap::new();
    for (e, c) in chi.poly.terms() {
        let a: Vec<i64> = e.0.iter().map(|&x| x as i64).collect();
        let m = c
            .to_integer()
            .to_u64()
            .ok_or_else(|| Error::Domain("non-integral weight multiplicity".into()))?;
        *out.entry(Weight::from_exponents(&a)).or_insert(0) += m;
    }
    Ok(out)
}

/// Normalized Haar integral of a class function: its trivial-isotypic coefficient.
pub fn haar_integral_class(f: &CharClassFn) -> Result<Rat> {
    let dec = schur_decompose(f)?;
    Ok(dec.get(&Weight::zero(f.n - 1)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub n: usize,
    pub a_n: String,
    pub b_n: String,
}

/// Moments `a_n = ∫ f^n` and `b_n = ∫ f^n h` up to a finite horizon.
///
/// This is evidence over `1..=horizon` only; nothing is extrapolated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub group_n: usize,
    pub horizon: usize,
    pub rows: Vec<ScanRow>,
    /// All `a_n` vanish up to the horizon.
    pub hypothesis_holds: bool,
    /// Least `n0` with `b_n = 0` for every `n0 <= n <= horizon`.
    pub b_vanishes_from: Option<usize>,
    pub finite_horizon: bool,
    #[serde(skip)]
    pub a: Vec<Rat>,
    #[serde(skip)]
    pub b: Vec<Rat>,
}

/// Finite-horizon scan of the moment sequences of a class function `f`
/// against a class function `h`, both given in the character basis.
pub fn mathieu_scan_class(
    rs: &RootSystemA,
    f: &SchurExpansion,
    h: &SchurExpansion,
    nmax: usize,
) -> Result<ScanReport> {
    if nmax == 0 {
        return Err(Error::Domain("scan horizon must be at least 1".into()));
    }
    let f_fn = f.to_class_fn(rs)?;
    let h_fn = h.to_class_fn(rs)?;
    let zero = rs.zero();
    let mut power = SchurExpansion::single(zero.clone());
    let (mut a, mut b) = (Vec::with_capacity(nmax), Vec::with_capacity(nmax));
    for _ in 1..=nmax {
        let prod = power.to_class_fn(rs)?.mul(&f_fn)?;
        power = schur_decompose(&prod)?;
        a.push(power.get(&zero));
        let with_h = power.to_class_fn(rs)?.mul(&h_fn)?;
        b.push(haar_integral_class(&with_h)?);
    }
    let hypothesis_holds = a.iter().all(Zero::is_zero);
    let mut b_vanishes_from = None;
    for idx in (0..nmax).rev() {
        if b[idx].is_zero() {
            b_vanishes_from = Some(idx + 1);
        } else {
            break;
        }
    }
    let rows = (0..nmax)
        .map(|i| ScanRow {
            n: i + 1,
            a_n: a[i].to_string(),
            b_n: b[i].to_string(),
        })
        .collect();
    Ok(ScanReport {
        group_n: rs.n(),
        horizon: nmax,
        rows,
        hypothesis_holds,
        b_vanishes_from,
        finite_horizon: true,
        a,
        b,
    })
}

/// Parses `3*[1,0] - [0,1] + 2*[0,0]` into a character combination.
pub fn parse_combination(text: &str, rank: usize) -> Result<SchurExpansion> {
    let mut out = SchurExpansion::new();
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() || s == "0" {
        return Ok(out);
    }
    let bad = |msg: String| {
        Error::Parse(crate::error::ParseError {
            line: 1,
            column: 1,
            message: msg,
        })
    };
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let mut sign = Rat::one();
        if i > 0 || chars[i] == '+' || chars[i] == '-' {
            match chars[i] {
                '+' => i += 1,
                '-' => {
                    sign = -sign;
                    i += 1
                }
                c if i > 0 => return Err(bad(format!("expected '+' or '-' before '{}'", c))),
                _ => {}
            }
        }
        let start = i;
        while i < chars.len() && chars[i] != '[' {
            i += 1;
        }
        let coef_text: String = chars[start..i].iter().collect();
        let coef = if coef_text.is_empty() {
            Rat::one()
        } else {
            let t = coef_text
                .strip_suffix('*')
                .ok_or_else(|| bad(format!("expected '*' after coefficient '{}'", coef_text)))?;
            parse_rat(t).ok_or_else(|| bad(format!("bad coefficient '{}'", t)))?
        };
        if i >= chars.len() {
            return Err(bad("expected '[' weight".into()));
        }
        let close = chars[i..]
            .iter()
            .position(|&c| c == ']')
            .ok_or_else(|| bad("unclosed '['".into()))?
            + i;
        let inner: String = chars[i + 1..close].iter().collect();
        let w: Weight = inner
            .parse()
            .map_err(|_| bad(format!("bad weight '[{}]'", inner)))?;
        if w.rank() != rank {
            return Err(bad(format!(
                "weight [{}] has {} labels, expected {}",
                inner,
                w.rank(),
                rank
            )));
        }
        if !w.is_dominant() {
            return Err(bad(format!("weight [{}] is not dominant", inner)));
        }
        out.add(w, sign * coef);
        i = close + 1;
    }
    Ok(out)
}

fn parse_rat(t: &str) -> Option<Rat> {
    match t.split_once('/') {
        Some((a, b)) => {
            let n: BigInt = a.parse().ok()?;
            let d: BigInt = b.parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rat::new(n, d))
            }
        }
        None => t.parse::<BigInt>().ok().map(Rat::from_integer),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, parse_poly};

    fn rs(n: usize) -> RootSystemA {
        RootSystemA::new(n).unwrap()
    }

    fn w(s: &str) -> Weight {
        s.parse().unwrap()
    }

    fn class(s: &str, n: usize) -> CharClassFn {
        CharClassFn::new(n, parse_poly(s, n).unwrap()).unwrap()
    }

    #[test]
    fn standard_and_dual_characters() {
        let r = rs(3);
        assert_eq!(
            character_of(&r, &w("1,0")).unwrap(),
            class("x1 + x2 + x3", 3)
        );
        assert_eq!(character_of(&r, &w("0,0")).unwrap(), CharClassFn::one(3));
        assert_eq!(
            character_of(&r, &w("0,1")).unwrap(),
            class("x1*x2 + x1*x3 + x2*x3", 3)
        );
        assert!(matches!(
            character_of(&r, &w("1,-1")),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn decompositions() {
        let r = rs(3);
        let chi = character_of(&r, &w("2,1")).unwrap();
        assert_eq!(
            schur_decompose(&chi).unwrap(),
            SchurExpansion::single(w("2,1"))
        );

        let e = schur_decompose(&class("(x1+x2+x3)*(x1*x2+x1*x3+x2*x3)", 3)).unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(e.get(&w("1,1")), int(1));
        assert_eq!(e.get(&w("0,0")), int(1));

        let sq = schur_decompose(&class("(x1+x2+x3)^2", 3)).unwrap();
        assert_eq!(sq.len(), 2);
        assert_eq!(sq.get(&w("2,0")), int(1));
        assert_eq!(sq.get(&w("0,1")), int(1));
        assert_eq!(sq.dimension(&r).unwrap(), int(9));

        let asym = CharClassFn {
            n: 2,
            poly: parse_poly("x1", 2).unwrap(),
        };
        assert!(matches!(schur_decompose(&asym), Err(Error::Domain(_))));
    }

    #[test]
    fn tensor_products() {
        let r = rs(3);
        let e = tensor_decompose(&r, &w("2,0"), &w("0,1")).unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(e.get(&w("2,1")), int(1));
        assert_eq!(e.get(&w("1,0")), int(1));
        let lam = w("1,2");
        assert_eq!(
            tensor_decompose(&r, &lam, &w("0,0")).unwrap(),
            SchurExpansion::single(lam)
        );
        let e = tensor_decompose(&r, &w("1,0"), &w("1,0")).unwrap();
        assert_eq!(e.get(&w("2,0")), int(1));
        assert_eq!(e.get(&w("0,1")), int(1));
        assert!(matches!(
            tensor_decompose(&r, &w("1,0"), &w("1,0,0")),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn multiplicities() {
        let r = rs(3);
        let std = weight_multiplicities(&r, &w("1,0")).unwrap();
        assert_eq!(std.len(), 3);
        assert!(std.values().all(|&m| m == 1));
        let triv = weight_multiplicities(&r, &w("0,0")).unwrap();
        assert_eq!(triv.into_iter().collect::<Vec<_>>(), vec![(w("0,0"), 1)]);
        let adj = weight_multiplicities(&r, &w("1,1")).unwrap();
        assert_eq!(adj.len(), 7);
        assert_eq!(adj[&w("0,0")], 2);
        assert_eq!(adj.values().filter(|&&m| m == 1).count(), 6);
        assert_eq!(adj.values().sum::<u64>(), 8);
    }

    #[test]
    fn haar_integrals() {
        let r = rs(3);
        let s = character_of(&r, &w("1,0")).unwrap();
        let d = character_of(&r, &w("0,1")).unwrap();
        assert_eq!(haar_integral_class(&s.mul(&d).unwrap()).unwrap(), int(1));
        assert_eq!(haar_integral_class(&CharClassFn::one(3)).unwrap(), int(1));
        assert_eq!(haar_integral_class(&s.mul(&s).unwrap()).unwrap(), int(0));
    }

    #[test]
    fn su2_scan() {
        let r = rs(2);
        let chi1 = SchurExpansion::single(w("1"));
        let rep = mathieu_scan_class(&r, &chi1, &chi1, 6).unwrap();
        let a: Vec<i64> = vec![0, 1, 0, 2, 0, 5];
        let b: Vec<i64> = vec![1, 0, 2, 0, 5, 0];
        assert_eq!(rep.a, a.into_iter().map(int).collect::<Vec<_>>());
        assert_eq!(rep.b, b.into_iter().map(int).collect::<Vec<_>>());
        assert!(!rep.hypothesis_holds);
        assert_eq!(rep.b_vanishes_from, Some(6));

        let zero = SchurExpansion::new();
        let rep = mathieu_scan_class(&r, &zero, &chi1, 4).unwrap();
        assert!(rep.a.iter().chain(&rep.b).all(Zero::is_zero));
        assert!(rep.hypothesis_holds);
        assert_eq!(rep.b_vanishes_from, Some(1));
    }

    #[test]
    fn su3_standard_powers() {
        let r = rs(3);
        let f = SchurExpansion::single(w("1,0"));
        let h = SchurExpansion::single(w("0,1"));
        let rep = mathieu_scan_class(&r, &f, &h, 4).unwrap();
        assert_eq!(rep.a, vec![int(0), int(0), int(1), int(0)]);
    }

    #[test]
    fn combination_grammar() {
        let e = parse_combination("3*[1,0] - [0,1] + 2*[0,0]", 2).unwrap();
        assert_eq!(e.get(&w("1,0")), int(3));
        assert_eq!(e.get(&w("0,1")), int(-1));
        assert_eq!(e.get(&w("0,0")), int(2));
        assert!(parse_combination("0", 2).unwrap().is_empty());
        assert_eq!(
            parse_combination("-1/2*[1]", 1).unwrap().get(&w("1")),
            crate::poly::rat(-1, 2)
        );
        assert!(parse_combination("[1,0", 2).is_err());
        assert!(parse_combination("[1]", 2).is_err());
        assert!(parse_combination("2[1,0]", 2).is_err());
    }

    #[test]
    fn resource_guards() {
        let r = rs(2);
        assert!(matches!(
            character_of(&r, &w("41")),
            Err(Error::Resource(_))
        ));
        let f = SchurExpansion::single(w("1"));
        assert!(matches!(
            mathieu_scan_class(&r, &f, &f, 45),
            Err(Error::Resource(_))
        ));
        assert!(matches!(
            RootSystemA::new(9).map(|r| character_of(&r, &r.zero())),
            Ok(Err(Error::Resource(_)))
        ));
    }
}
