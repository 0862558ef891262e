//! Polynomial maps `f = x - h` with `h` homogeneous, their formal inverses,
//! and the `Q^k` identities linking the inverse to the tensor maps div and Psi.
//!
//! Two independent inverters are provided. [`formal_inverse`] iterates
//! `G <- x + h(G)` with truncation until it stabilises. [`abcw_inverse`]
//! evaluates the closed sum `F_i = sum_alpha (1/alpha!) d^alpha(x_i j(f) h^alpha)`
//! which, for Keller maps (`j(f) = 1`), is the familiar
//! `sum_alpha (1/alpha!) d^alpha(h^alpha x_i)`.

use std::fmt;

use num::{BigInt, One};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, ParseError, Result};
use crate::poly::{factorial, parse_poly, ExpVec, Poly, Rat};
use crate::sym_tensor::{div_map, exponents_of_degree, psi_map, TensorElement};

/// Largest total degree the Q pipeline will materialise.
pub const MAX_PIPELINE_DEGREE: i64 = 64;

/// `f_i = x_i - h_i` with every `h_i` zero or homogeneous of degree `d >= 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMap {
    n: usize,
    d: u32,
    h: Vec<Poly>,
}

impl PolyMap {
    pub fn new(d: u32, h: Vec<Poly>) -> Result<Self> {
        let n = h.len();
        if n == 0 {
            return Err(Error::Domain("a map needs at least one component".into()));
        }
        if d < 2 {
            return Err(Error::Domain(format!("degree d must be >= 2, got {}", d)));
        }
        for (i, hi) in h.iter().enumerate() {
            if hi.nvars() != n {
                return Err(Error::Dimension {
                    expected: n,
                    found: hi.nvars(),
                });
            }
            if hi.is_laurent() {
                return Err(Error::Unsupported(format!(
                    "h{} is a Laurent polynomial",
                    i + 1
                )));
            }
            if !hi.is_zero() && (!hi.is_homogeneous() || hi.degree() != Some(d as i64)) {
                return Err(Error::Domain(format!(
                    "h{} = {} is not homogeneous of degree {}",
                    i + 1,
                    hi,
                    d
                )));
            }
        }
        Ok(PolyMap { n, d, h })
    }

    /// The identity map `h = 0`.
    pub fn identity(n: usize, d: u32) -> Self {
        PolyMap {
            n,
            d,
            h: vec![Poly::zero(n); n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn h(&self) -> &[Poly] {
        &self.h
    }

    /// The components `f_i = x_i - h_i`.
    pub fn components(&self) -> Vec<Poly> {
        self.h
            .iter()
            .enumerate()
            .map(|(i, hi)| &Poly::var(self.n, i) - hi)
            .collect()
    }

    /// Parses the map file format:
    ///
    /// ```text
    /// # comment
    /// n = 2
    /// d = 2
    /// h1 = x2^2
    /// h2 = 0
    /// ```
    pub fn parse_map_file(text: &str) -> Result<PolyMap> {
        let mut n: Option<usize> = None;
        let mut d: Option<u32> = None;
        let mut entries: Vec<(usize, usize, usize, String)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| {
                Error::Parse(ParseError {
                    line: lineno + 1,
                    column: 1,
                    message: msg,
                })
            };
            let eq = raw
                .find('=')
                .ok_or_else(|| err(format!("expected 'key = value', got '{}'", line)))?;
            let (key, rest) = (raw[..eq].trim(), &raw[eq + 1..]);
            let value = rest.split('#').next().unwrap_or("");
            let value_col = eq + 1 + (value.len() - value.trim_start().len());
            let value = value.trim();
            match key {
                "n" => {
                    n = Some(
                        value
                            .parse()
                            .map_err(|_| err(format!("bad n '{}'", value)))?,
                    )
                }
                "d" => {
                    d = Some(
                        value
                            .parse()
                            .map_err(|_| err(format!("bad d '{}'", value)))?,
                    )
                }
                k if k.starts_with('h') => {
                    let idx: usize = k[1..]
                        .parse()
                        .map_err(|_| err(format!("bad component name '{}'", k)))?;
                    entries.push((lineno + 1, value_col, idx, value.to_string()));
                }
                other => return Err(err(format!("unknown key '{}'", other))),
            }
        }
        let missing = |what: &str| {
            Error::Parse(ParseError {
                line: 0,
                column: 0,
                message: format!("map file does not set {}", what),
            })
        };
        let n = n.ok_or_else(|| missing("n"))?;
        let d = d.ok_or_else(|| missing("d"))?;
        let mut h: Vec<Option<Poly>> = vec![None; n];
        for (line, value_col, idx, value) in entries {
            if idx == 0 || idx > n {
                return Err(Error::Parse(ParseError {
                    line,
                    column: 1,
                    message: format!("component h{} out of range for n = {}", idx, n),
                }));
            }
            let p = parse_poly(&value, n).map_err(|e| match e {
                Error::Parse(pe) => Error::Parse(ParseError {
                    line,
                    column: pe.column + value_col,
                    message: pe.message,
                }),
                other => other,
            })?;
            h[idx - 1] = Some(p);
        }
        let h = h
            .into_iter()
            .enumerate()
            .map(|(i, p)| p.ok_or_else(|| missing(&format!("h{}", i + 1))))
            .collect::<Result<Vec<_>>>()?;
        PolyMap::new(d, h)
    }

    pub fn to_map_text(&self) -> String {
        let mut s = format!("n = {}\nd = {}\n", self.n, self.d);
        for (i, hi) in self.h.iter().enumerate() {
            s.push_str(&format!("h{} = {}\n", i + 1, hi));
        }
        s
    }
}

impl fmt::Display for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components().iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Determinant of a square polynomial matrix by cofactor expansion.
pub fn poly_det(m: &[Vec<Poly>], nvars: usize) -> Poly {
    match m.len() {
        0 => Poly::one(nvars),
        1 => m[0][0].clone(),
        size => {
            let mut acc = Poly::zero(nvars);
            for col in 0..size {
                if m[0][col].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Poly>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(j, _)| *j != col)
                            .map(|(_, p)| p.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][col] * &poly_det(&minor, nvars);
                acc = if col % 2 == 0 {
                    &acc + &term
                } else {
                    &acc - &term
                };
            }
            acc
        }
    }
}

/// `j(f) = det(∂f_i/∂x_j)`.
pub fn jacobian_det(f: &PolyMap) -> Poly {
    let comps = f.components();
    let m: Vec<Vec<Poly>> = comps
        .iter()
        .map(|fi| {
            (0..f.n)
                .map(|j| fi.partial_derive(j, 1).expect("polynomial map"))
                .collect()
        })
        .collect();
    poly_det(&m, f.n)
}

pub fn is_keller(f: &PolyMap) -> bool {
    jacobian_det(f) == Poly::one(f.n)
}

/// Truncated formal inverse `F` with `f(F) = F(f) = x` modulo degree > `trunc`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalInverse {
    pub n: usize,
    pub trunc: i64,
    pub components: Vec<Poly>,
}

impl FormalInverse {
    /// `F_i^{(m)}`, the degree-`m` part of component `i` (zero-based).
    pub fn homogeneous(&self, i: usize, m: i64) -> Poly {
        self.components[i].homogeneous_component(m)
    }

    /// Degrees `m` at which some component has a nonzero part.
    pub fn support_degrees(&self) -> Vec<i64> {
        (0..=self.trunc)
            .filter(|&m| (0..self.n).any(|i| !self.homogeneous(i, m).is_zero()))
            .collect()
    }
}

fn identity_images(n: usize) -> Vec<Poly> {
    (0..n).map(|i| Poly::var(n, i)).collect()
}

/// Checks `f(F) ≡ x` and `F(f) ≡ x` modulo degree > `trunc`.
pub fn verify_inverse(f: &PolyMap, inv: &[Poly], trunc: i64) -> Result<bool> {
    let comps = f.components();
    let id = identity_images(f.n);
    for (i, fi) in comps.iter().enumerate() {
        if fi.substitute(inv, trunc)? != id[i] {
            return Ok(false);
        }
    }
    for (i, fi_inv) in inv.iter().enumerate() {
        if fi_inv.substitute(&comps, trunc)? != id[i] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Fixpoint iteration `G <- x + h(G)` truncated at degree `trunc`.
pub fn formal_inverse(f: &PolyMap, trunc: i64) -> Result<FormalInverse> {
    if trunc < 1 {
        return Err(Error::Domain("truncation degree must be >= 1".into()));
    }
    let id = identity_images(f.n);
    let mut g = id.clone();
    // Each pass fixes at least one more degree, so `trunc` passes suffice.
    for _ in 0..=trunc {
        let next: Vec<Poly> =
            f.h.iter()
                .zip(&id)
                .map(|(hi, xi)| Ok(xi + &hi.substitute(&g, trunc)?))
                .collect::<Result<_>>()?;
        if next == g {
            break;
        }
        g = next;
    }
    if !verify_inverse(f, &g, trunc)? {
        return Err(Error::Precondition(
            "fixpoint iteration failed to invert the map".into(),
        ));
    }
    Ok(FormalInverse {
        n: f.n,
        trunc,
        components: g,
    })
}

/// Multi-indices of length `n` with `|alpha| = k`.
fn multi_indices(n: usize, k: i64) -> Vec<Vec<u32>> {
    exponents_of_degree(n, k)
        .into_iter()
        .map(|e| e.0.into_iter().map(|v| v as u32).collect())
        .collect()
}

fn inv_alpha_factorial(alpha: &[u32]) -> Rat {
    let den = alpha
        .iter()
        .fold(BigInt::one(), |acc, &a| acc * factorial(a as u64));
    Rat::new(BigInt::one(), den)
}

/// `h^alpha` truncated at `trunc`, with powers of each `h_i` cached.
struct HPowers<'a> {
    h: &'a [Poly],
    cache: Vec<Vec<Poly>>,
    trunc: i64,
}

impl<'a> HPowers<'a> {
    fn new(h: &'a [Poly], trunc: i64) -> Self {
        let n = h.len();
        HPowers {
            h,
            cache: vec![vec![Poly::one(h.first().map(|p| p.nvars()).unwrap_or(n))]; n],
            trunc,
        }
    }

    fn power(&mut self, i: usize, k: u32) -> Poly {
        while self.cache[i].len() <= k as usize {
            let next = self.cache[i]
                .last()
                .unwrap()
                .mul_trunc(&self.h[i], Some(self.trunc))
                .expect("same ring");
            self.cache[i].push(next);
        }
        self.cache[i][k as usize].clone()
    }

    fn monomial(&mut self, alpha: &[u32]) -> Poly {
        let mut acc = self.power(0, alpha[0]);
        for (i, &a) in alpha.iter().enumerate().skip(1) {
            if acc.is_zero() {
                break;
            }
            if a > 0 {
                acc = acc
                    .mul_trunc(&self.power(i, a), Some(self.trunc))
                    .expect("same ring");
            }
        }
        acc
    }
}

/// `sum_{|alpha| = k} (1/alpha!) d^alpha(base · h^alpha)`, truncated at `trunc`
/// after differentiation.
fn graded_bracket_term(f: &PolyMap, base: &Poly, k: i64, trunc: i64) -> Result<Poly> {
    let mut powers = HPowers::new(&f.h, trunc + k);
    let mut acc = Poly::zero(f.n);
    for alpha in multi_indices(f.n, k) {
        let ha = powers.monomial(&alpha);
        if ha.is_zero() {
            continue;
        }
        let inner = base.mul_trunc(&ha, Some(trunc + k))?;
        let term = inner
            .derive_multi(&alpha)?
            .scale(&inv_alpha_factorial(&alpha));
        acc = &acc + &term;
    }
    Ok(acc.truncate(trunc))
}

/// Closed-form inverse `F_i = sum_alpha (1/alpha!) d^alpha(x_i j(f) h^alpha)`,
/// summed over `|alpha| (d - 1) + 1 <= trunc`.
pub fn abcw_inverse(f: &PolyMap, trunc: i64) -> Result<FormalInverse> {
    if trunc < 1 {
        return Err(Error::Domain("truncation degree must be >= 1".into()));
    }
    let j = jacobian_det(f);
    let step = f.d as i64 - 1;
    let kmax = (trunc - 1) / step;
    let mut comps = Vec::with_capacity(f.n);
    for i in 0..f.n {
        let base = &Poly::var(f.n, i) * &j;
        let mut acc = Poly::zero(f.n);
        for k in 0..=kmax {
            acc = &acc + &graded_bracket_term(f, &base, k, trunc)?;
        }
        comps.push(acc);
    }
    Ok(FormalInverse {
        n: f.n,
        trunc,
        components: comps,
    })
}

/// `{U, f} = sum_alpha (1/alpha!) d^alpha(U(f) j(f) (x - f)^alpha)` truncated
/// at degree `trunc`; equals `U` modulo higher terms.
pub fn bracket_u_f(u: &Poly, f: &PolyMap, trunc: i64) -> Result<Poly> {
    if u.is_laurent() {
        return Err(Error::Unsupported("bracket of a Laurent polynomial".into()));
    }
    crate::error::check_dims(f.n, u.nvars())?;
    let comps = f.components();
    let u_deg = u.degree().unwrap_or(0);
    let u_of_f = u.substitute(&comps, i64::MAX)?;
    let base = &u_of_f * &jacobian_det(f);
    let step = f.d as i64 - 1;
    let kmax = (trunc + u_deg) / step;
    let mut acc = Poly::zero(f.n);
    for k in 0..=kmax {
        acc = &acc + &graded_bracket_term(f, &base, k, trunc)?;
    }
    Ok(acc)
}

/// `sum_{|alpha| = k} (1/alpha!) d^alpha h^alpha`; identically zero for
/// Keller maps and `k >= 1`.
pub fn telescoping_sum(f: &PolyMap, k: i64) -> Result<Poly> {
    let trunc = k * f.d as i64;
    graded_bracket_term(f, &Poly::one(f.n), k, trunc)
}

/// `Q = sum_i h_i ⊗ d_i`, bi-degree `(d, 1)`.
pub fn build_q(f: &PolyMap) -> TensorElement {
    let n = f.n;
    let mut q = TensorElement::zero(n, f.d as i64, 1);
    for (i, hi) in f.h.iter().enumerate() {
        if hi.is_zero() {
            continue;
        }
        let di = Poly::var(n, i);
        let piece = TensorElement::from_product(hi, &di).expect("homogeneous factors");
        q = q.checked_add(&piece).expect("same bi-degree");
    }
    q
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PipelineRecord {
    pub k: usize,
    pub div_zero: bool,
    pub psi_matches_inverse: bool,
    pub psi_is_zero: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PipelineReport {
    pub records: Vec<PipelineRecord>,
}

impl PipelineReport {
    pub fn all_div_zero(&self) -> bool {
        self.records.iter().all(|r| r.div_zero)
    }

    pub fn all_psi_match(&self) -> bool {
        self.records.iter().all(|r| r.psi_matches_inverse)
    }

    /// First `k` from which every recorded `Psi(Q^k)` vanishes.
    pub fn psi_zero_from(&self) -> Option<usize> {
        let mut from = None;
        for r in self.records.iter().rev() {
            if r.psi_is_zero {
                from = Some(r.k);
            } else {
                break;
            }
        }
        from
    }
}

/// `k! sum_i F_i^{(k(d-1)+1)} ⊗ d_i`.
pub fn expected_psi(f: &PolyMap, inv: &FormalInverse, k: usize) -> TensorElement {
    let n = f.n;
    let m = k as i64 * (f.d as i64 - 1) + 1;
    let scale = Rat::from_integer(factorial(k as u64));
    let mut out = TensorElement::zero(n, m, 1);
    for i in 0..n {
        let part = inv.homogeneous(i, m).scale(&scale);
        if part.is_zero() {
            continue;
        }
        let t = TensorElement::from_product(&part, &Poly::var(n, i)).expect("homogeneous");
        out = out.checked_add(&t).expect("same bi-degree");
    }
    out
}

/// Verifies `div(Q^k) = 0` and `Psi(Q^k) = k! sum_i F_i^{(k(d-1)+1)} ⊗ d_i`
/// for `k = 1..=kmax`, recording where `Psi(Q^k)` vanishes.
pub fn q_pipeline(f: &PolyMap, kmax: usize) -> Result<PipelineReport> {
    let det = jacobian_det(f);
    if det != Poly::one(f.n) {
        return Err(Error::Precondition(format!(
            "map is not Keller: det J(f) = {}",
            det
        )));
    }
    let top = kmax as i64 * (f.d as i64 - 1) + 1;
    if top > MAX_PIPELINE_DEGREE {
        return Err(Error::Resource(format!(
            "pipeline degree {} exceeds the limit {}",
            top, MAX_PIPELINE_DEGREE
        )));
    }
    let inv = formal_inverse(f, top)?;
    let q = build_q(f);
    let mut qk = TensorElement::one(f.n);
    let mut records = Vec::with_capacity(kmax);
    for k in 1..=kmax {
        qk = qk.tensor_mul(&q)?;
        let div_zero = div_map(&qk).is_zero();
        let psi = psi_map(&qk)?;
        let expected = expected_psi(f, &inv, k);
        records.push(PipelineRecord {
            k,
            div_zero,
            psi_matches_inverse: psi == expected,
            psi_is_zero: psi.is_zero(),
        });
    }
    Ok(PipelineReport { records })
}

/// A triangular map: `h_i` depends only on `x_{i+1}..x_n`, so `j(f) = 1`.
pub fn random_tame_map(n: usize, d: u32, seed: u64) -> Result<PolyMap> {
    if n < 2 || d < 2 {
        return Err(Error::Domain(format!(
            "tame maps need n >= 2 and d >= 2, got n = {}, d = {}",
            n, d
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut h = Vec::with_capacity(n);
    for i in 0..n {
        let later = n - i - 1;
        if later == 0 {
            h.push(Poly::zero(n));
            continue;
        }
        let monos = exponents_of_degree(later, d as i64);
        let mut terms = Vec::new();
        for m in &monos {
            if rng.gen_bool(0.5) {
                terms.push((m.clone(), random_coefficient(&mut rng)));
            }
        }
        if terms.is_empty() {
            let pick = rng.gen_range(0..monos.len());
            terms.push((monos[pick].clone(), random_coefficient(&mut rng)));
        }
        let full = terms.into_iter().map(|(m, c)| {
            let mut e = vec![0; n];
            e[i + 1..].copy_from_slice(&m.0);
            (ExpVec(e), c)
        });
        h.push(Poly::from_terms(n, full));
    }
    PolyMap::new(d, h)
}

fn random_coefficient(rng: &mut ChaCha8Rng) -> Rat {
    let mut num = 0;
    while num == 0 {
        num = rng.gen_range(-3i64..=3);
    }
    let den = if rng.gen_bool(0.25) { 2 } else { 1 };
    Rat::new(num.into(), BigInt::from(den))
}

/// True when `F^{(m)} = 0` for every `m` not congruent to 1 modulo `d - 1`.
pub fn inverse_is_sparse(inv: &FormalInverse, d: u32) -> bool {
    let step = d as i64 - 1;
    inv.support_degrees()
        .iter()
        .all(|&m| step == 1 || (m - 1) % step == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Poly {
        parse_poly(s, n).unwrap()
    }

    fn map(d: u32, hs: &[&str]) -> PolyMap {
        let n = hs.len();
        PolyMap::new(d, hs.iter().map(|s| p(s, n)).collect()).unwrap()
    }

    #[test]
    fn determinants() {
        assert_eq!(jacobian_det(&map(2, &["x2^2", "0"])), Poly::one(2));
        assert_eq!(jacobian_det(&PolyMap::identity(3, 2)), Poly::one(3));
        assert_eq!(jacobian_det(&map(2, &["-x1^2", "0"])), p("1 + 2*x1", 2));
        // 3x3 oracle: triangular with unit diagonal
        assert_eq!(jacobian_det(&map(2, &["x2*x3", "x3^2", "0"])), Poly::one(3));
    }

    #[test]
    fn catalan_inverse() {
        let f = map(2, &["x1^2"]);
        let inv = formal_inverse(&f, 5).unwrap();
        assert_eq!(
            inv.components[0],
            p("x1 + x1^2 + 2*x1^3 + 5*x1^4 + 14*x1^5", 1)
        );
        assert_eq!(abcw_inverse(&f, 5).unwrap(), inv);
    }

    #[test]
    fn nilpotent_inverse() {
        let f = map(2, &["x2^2", "0"]);
        for trunc in 2..=7 {
            let inv = formal_inverse(&f, trunc).unwrap();
            assert_eq!(inv.components, vec![p("x1 + x2^2", 2), p("x2", 2)]);
            assert_eq!(abcw_inverse(&f, trunc).unwrap(), inv);
        }
        let id = PolyMap::identity(2, 2);
        let inv = formal_inverse(&id, 6).unwrap();
        assert_eq!(inv.components, vec![p("x1", 2), p("x2", 2)]);
        assert_eq!(abcw_inverse(&id, 6).unwrap(), inv);
    }

    #[test]
    fn brackets() {
        let f = map(2, &["x2^2", "0"]);
        for m in 0..=3u32 {
            let u = Poly::var(2, 0).pow(m);
            assert_eq!(bracket_u_f(&u, &f, 6).unwrap(), u.truncate(6));
        }
        assert_eq!(bracket_u_f(&Poly::one(2), &f, 6).unwrap(), Poly::one(2));
        let g = random_tame_map(2, 2, 7).unwrap();
        let u = p("x1^3 - 2*x1*x2 + 1/3*x2^2 + x1 - 5", 2);
        assert_eq!(bracket_u_f(&u, &g, 8).unwrap(), u);
    }

    #[test]
    fn bracket_on_non_keller_map() {
        // Holds for any formally invertible f = x - h, not only Keller maps.
        let f = map(2, &["x1^2"]);
        let u = p("x1^2 + x1", 1);
        assert_eq!(bracket_u_f(&u, &f, 7).unwrap(), u);
    }

    #[test]
    fn q_elements() {
        assert_eq!(
            build_q(&map(2, &["x2^2", "0"])),
            TensorElement::parse("1*x2^2|d1", 2).unwrap()
        );
        assert!(build_q(&PolyMap::identity(2, 2)).is_zero());
        assert_eq!(
            build_q(&map(3, &["x2^3", "0"])),
            TensorElement::parse("1*x2^3|d1", 2).unwrap()
        );
    }

    #[test]
    fn pipeline_hand_example() {
        let f = map(2, &["x2^2", "0"]);
        let rep = q_pipeline(&f, 3).unwrap();
        assert!(rep.all_div_zero());
        assert!(rep.all_psi_match());
        assert!(!rep.records[0].psi_is_zero);
        assert!(rep.records[1].psi_is_zero && rep.records[2].psi_is_zero);
        assert_eq!(rep.psi_zero_from(), Some(2));
        let q = build_q(&f);
        assert_eq!(psi_map(&q).unwrap(), q);

        let rep = q_pipeline(&PolyMap::identity(2, 2), 4).unwrap();
        assert!(rep
            .records
            .iter()
            .all(|r| r.div_zero && r.psi_is_zero && r.psi_matches_inverse));

        let cubic = map(3, &["x2^3", "0"]);
        let rep = q_pipeline(&cubic, 2).unwrap();
        assert!(rep.all_psi_match());
        assert!(!rep.records[0].psi_is_zero);
        assert!(rep.records[1].psi_is_zero);
    }

    #[test]
    fn pipeline_rejects_non_keller() {
        let err = q_pipeline(&map(2, &["-x1^2", "0"]), 2).unwrap_err();
        match err {
            Error::Precondition(msg) => assert!(msg.contains("2*x1 + 1"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            q_pipeline(&map(2, &["x2^2", "0"]), 64),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn tame_maps() {
        let f = random_tame_map(2, 2, 3).unwrap();
        assert!(f.h()[1].is_zero());
        assert_eq!(f.h()[0].len(), 1);
        assert_eq!(f.h()[0].leading_term().unwrap().0, &ExpVec(vec![0, 2]));

        let g = random_tame_map(3, 3, 1).unwrap();
        for (a, _) in g.h()[0].terms() {
            assert_eq!(a.0[0], 0);
        }
        for (a, _) in g.h()[1].terms() {
            assert_eq!((a.0[0], a.0[1]), (0, 0));
        }
        assert!(g.h()[2].is_zero());
        assert!(is_keller(&g));
        assert_eq!(random_tame_map(3, 3, 1).unwrap(), g);
        assert!(random_tame_map(1, 2, 0).is_err());
    }

    #[test]
    fn map_files() {
        let text = "# sample\nn = 2\nd = 2\n\nh1 = x2^2   # nilpotent\nh2 = 0\n";
        let f = PolyMap::parse_map_file(text).unwrap();
        assert_eq!(f, map(2, &["x2^2", "0"]));
        assert_eq!(PolyMap::parse_map_file(&f.to_map_text()).unwrap(), f);
        let err = PolyMap::parse_map_file("n = 2\nd = 2\nh1 = x1 + x2^2\nh2 = 0\n").unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
        let err = PolyMap::parse_map_file("n = 2\nd = 2\nh1 = x3^2\nh2 = 0\n").unwrap_err();
        match err {
            Error::Parse(pe) => assert_eq!((pe.line, pe.column), (3, 6)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(PolyMap::parse_map_file("n = 2\nd = 2\nh1 = 0\n").is_err());
    }

    #[test]
    fn telescoping() {
        let f = random_tame_map(3, 2, 11).unwrap();
        for k in 1..=4 {
            assert!(telescoping_sum(&f, k).unwrap().is_zero());
        }
        assert_eq!(telescoping_sum(&f, 0).unwrap(), Poly::one(3));
        // non-Keller: the k = 1 term is d/dx (x^2) = 2x
        assert_eq!(
            telescoping_sum(&map(2, &["x1^2"]), 1).unwrap(),
            p("2*x1", 1)
        );
    }
}
