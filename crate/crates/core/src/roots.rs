//! The root system of type A_{N-1}, i.e. of SU(N) and SL(N, C).
//!
//! Weights live in Dynkin labels, the coordinates with respect to the
//! fundamental weights. Two auxiliary coordinate systems are used internally:
//!
//! * partition coordinates `p` with `p_i - p_{i+1} = label_i` and `p_N = 0`,
//!   on which the Weyl group S_N acts by permuting entries;
//! * root coordinates `C^{-1} label`, which decide the dominance order.
//!
//! Positive roots are intervals `[i..j]` standing for `alpha_i + ... + alpha_j`.
//! Coroots are additive along such an interval, so every pairing is a sum of
//! consecutive labels.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::{BigInt, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{check_dims, Error, Result};
use crate::poly::Rat;

/// Largest N for which the full Weyl group is enumerated.
pub const MAX_WEYL_RANK: usize = 8;

/// Weight in the fundamental-weight basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    /// The fundamental weight `omega_j`, `j` one-based.
    pub fn fundamental(rank: usize, j: usize) -> Self {
        let mut v = vec![0; rank];
        v[j - 1] = 1;
        Weight(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn labels(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&l| l == 0)
    }

    /// Dominant iff every Dynkin label is nonnegative.
    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&l| l >= 0)
    }

    /// Partition coordinates with last entry zero.
    pub fn to_partition(&self) -> Vec<i64> {
        let mut p = vec![0; self.0.len() + 1];
        for i in (0..self.0.len()).rev() {
            p[i] = p[i + 1] + self.0[i];
        }
        p
    }

    /// Inverse of [`Weight::to_partition`], taken modulo the all-ones vector.
    pub fn from_exponents(a: &[i64]) -> Self {
        Weight(a.windows(2).map(|w| w[0] - w[1]).collect())
    }

    /// Total of the Dynkin labels.
    pub fn label_sum(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Weight(Vec::new()));
        }
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Domain(format!("bad Dynkin label '{}'", t.trim())))
            })
            .collect::<Result<Vec<_>>>()
            .map(Weight)
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        assert_eq!(self.rank(), rhs.rank(), "weight ranks must agree");
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        assert_eq!(self.rank(), rhs.rank(), "weight ranks must agree");
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<&Weight> for i64 {
    type Output = Weight;
    fn mul(self, rhs: &Weight) -> Weight {
        Weight(rhs.0.iter().map(|a| self * a).collect())
    }
}

/// Positive root `alpha_i + ... + alpha_j`, one-based and inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PosRoot {
    pub i: usize,
    pub j: usize,
}

impl PosRoot {
    pub fn height(&self) -> usize {
        self.j - self.i + 1
    }
}

impl fmt::Display for PosRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a[{}..{}]", self.i, self.j)
    }
}

impl FromStr for PosRoot {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Domain(format!("bad positive root '{}'", s));
        let inner = s
            .trim()
            .strip_prefix("a[")
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(bad)?;
        let (a, b) = inner.split_once("..").ok_or_else(bad)?;
        Ok(PosRoot {
            i: a.trim().parse().map_err(|_| bad())?,
            j: b.trim().parse().map_err(|_| bad())?,
        })
    }
}

/// Permutation of the partition coordinates `{1..N}` (stored zero-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElem {
    pub perm: Vec<usize>,
}

impl WeylElem {
    pub fn identity(n: usize) -> Self {
        WeylElem {
            perm: (0..n).collect(),
        }
    }

    /// The longest element, reversing the coordinate order.
    pub fn longest(n: usize) -> Self {
        WeylElem {
            perm: (0..n).rev().collect(),
        }
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &WeylElem) -> WeylElem {
        WeylElem {
            perm: other.perm.iter().map(|&i| self.perm[i]).collect(),
        }
    }

    pub fn inverse(&self) -> WeylElem {
        let mut inv = vec![0; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        WeylElem { perm: inv }
    }

    pub fn is_bijection(&self) -> bool {
        let mut seen = vec![false; self.perm.len()];
        for &p in &self.perm {
            if p >= seen.len() || seen[p] {
                return false;
            }
            seen[p] = true;
        }
        true
    }

    /// Moves coordinate `i` of the partition vector to slot `perm[i]`.
    pub fn act(&self, w: &Weight) -> Weight {
        let a = w.to_partition();
        let mut b = vec![0; a.len()];
        for (i, &x) in a.iter().enumerate() {
            b[self.perm[i]] = x;
        }
        Weight::from_exponents(&b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystemA {
    n: usize,
    cartan: Vec<Vec<i64>>,
    inv_cartan: Vec<Vec<Rat>>,
    pos_roots: Vec<PosRoot>,
    rho: Weight,
}

impl RootSystemA {
    /// Root system of SU(n); requires `n >= 2`.
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!("A_(N-1) needs N >= 2, got {}", n)));
        }
        let r = n - 1;
        let cartan = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| match i.abs_diff(j) {
                        0 => 2,
                        1 => -1,
                        _ => 0,
                    })
                    .collect()
            })
            .collect();
        // (C^{-1})_{ij} = min(i, j) - i j / N with one-based indices.
        let inv_cartan = (1..=r)
            .map(|i| {
                (1..=r)
                    .map(|j| {
                        Rat::from_integer(BigInt::from(i.min(j)))
                            - Rat::new(BigInt::from(i * j), BigInt::from(n))
                    })
                    .collect()
            })
            .collect();
        let pos_roots = (1..=r)
            .flat_map(|i| (i..=r).map(move |j| PosRoot { i, j }))
            .collect();
        Ok(RootSystemA {
            n,
            cartan,
            inv_cartan,
            pos_roots,
            rho: Weight(vec![1; r]),
        })
    }

    /// The N of SU(N).
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.n - 1
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn inv_cartan(&self) -> &[Vec<Rat>] {
        &self.inv_cartan
    }

    pub fn positive_roots(&self) -> &[PosRoot] {
        &self.pos_roots
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn zero(&self) -> Weight {
        Weight::zero(self.rank())
    }

    pub fn fundamental(&self, j: usize) -> Weight {
        Weight::fundamental(self.rank(), j)
    }

    /// `alpha_j` in Dynkin labels: the j-th column of the Cartan matrix.
    pub fn simple_root(&self, j: usize) -> Weight {
        Weight(self.cartan.iter().map(|row| row[j - 1]).collect())
    }

    /// The positive root `[i..j]` itself as a weight.
    pub fn root_weight(&self, beta: PosRoot) -> Weight {
        (beta.i..=beta.j).fold(self.zero(), |acc, k| &acc + &self.simple_root(k))
    }

    fn check_rank(&self, w: &Weight) -> Result<()> {
        check_dims(self.rank(), w.rank())
    }

    /// `lambda(H_beta)`: the sum of labels over the interval of `beta`.
    pub fn pairing(&self, lambda: &Weight, beta: PosRoot) -> Result<i64> {
        self.check_rank(lambda)?;
        if beta.i < 1 || beta.i > beta.j || beta.j > self.rank() {
            return Err(Error::Index(format!(
                "{} is not a positive root of A_{}",
                beta,
                self.rank()
            )));
        }
        Ok(lambda.0[beta.i - 1..beta.j].iter().sum())
    }

    /// Coordinates of `lambda` in the simple-root basis.
    pub fn root_coordinates(&self, lambda: &Weight) -> Result<Vec<Rat>> {
        self.check_rank(lambda)?;
        Ok(self
            .inv_cartan
            .iter()
            .map(|row| {
                row.iter().zip(&lambda.0).fold(Rat::zero(), |acc, (c, &l)| {
                    acc + c * Rat::from_integer(l.into())
                })
            })
            .collect())
    }

    /// `mu ⪯ lambda`: `lambda - mu` is a nonnegative integer combination of
    /// simple roots.
    pub fn preceq(&self, mu: &Weight, lambda: &Weight) -> Result<bool> {
        self.check_rank(mu)?;
        self.check_rank(lambda)?;
        let coords = self.root_coordinates(&(lambda - mu))?;
        Ok(coords.iter().all(|c| c.is_integer() && !c.is_negative()))
    }

    /// The orbit `W·lambda`, via distinct permutations of the partition
    /// coordinates.
    pub fn weyl_orbit(&self, lambda: &Weight) -> Result<BTreeSet<Weight>> {
        self.check_rank(lambda)?;
        if self.n > MAX_WEYL_RANK {
            return Err(Error::Resource(format!(
                "Weyl orbit enumeration limited to N <= {}",
                MAX_WEYL_RANK
            )));
        }
        let mut coords = lambda.to_partition();
        coords.sort_unstable();
        let mut out = BTreeSet::new();
        loop {
            out.insert(Weight::from_exponents(&coords));
            if !next_permutation(&mut coords) {
                break;
            }
        }
        Ok(out)
    }

    /// All N! elements of the Weyl group.
    pub fn weyl_group(&self) -> Result<Vec<WeylElem>> {
        if self.n > MAX_WEYL_RANK {
            return Err(Error::Resource(format!(
                "Weyl group enumeration limited to N <= {}",
                MAX_WEYL_RANK
            )));
        }
        let mut perm: Vec<usize> = (0..self.n).collect();
        let mut out = Vec::new();
        loop {
            out.push(WeylElem { perm: perm.clone() });
            if !next_permutation(&mut perm) {
                break;
            }
        }
        Ok(out)
    }

    fn require_dominant(&self, lambda: &Weight) -> Result<()> {
        self.check_rank(lambda)?;
        if lambda.is_dominant() {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "weight ({}) is not dominant",
                lambda
            )))
        }
    }

    /// Nonzero dominant weight whose pairings with positive roots lie in {0, 1}.
    pub fn is_minuscule(&self, lambda: &Weight) -> Result<bool> {
        self.require_dominant(lambda)?;
        if lambda.is_zero() {
            return Ok(false);
        }
        for &beta in &self.pos_roots {
            if !(0..=1).contains(&self.pairing(lambda, beta)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Weyl dimension formula as an exact integer.
    pub fn weyl_dim(&self, lambda: &Weight) -> Result<BigInt> {
        self.require_dominant(lambda)?;
        let shifted = lambda + &self.rho;
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for &beta in &self.pos_roots {
            num *= BigInt::from(self.pairing(&shifted, beta)?);
            den *= BigInt::from(self.pairing(&self.rho, beta)?);
        }
        debug_assert!((&num % &den).is_zero());
        Ok(num / den)
    }

    /// `lambda* = -w0 lambda`: the highest weight of the dual representation.
    pub fn dual_weight(&self, lambda: &Weight) -> Weight {
        Weight(lambda.0.iter().rev().copied().collect())
    }

    /// Every dominant weight with label sum at most `max_sum`.
    pub fn dominant_weights_up_to(&self, max_sum: i64) -> Vec<Weight> {
        let mut out = Vec::new();
        let mut cur = vec![0i64; self.rank()];
        fn rec(pos: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Weight>) {
            if pos == cur.len() {
                out.push(Weight(cur.clone()));
                return;
            }
            for v in 0..=left {
                cur[pos] = v;
                rec(pos + 1, left - v, cur, out);
            }
            cur[pos] = 0;
        }
        rec(0, max_sum, &mut cur, &mut out);
        out
    }
}

/// Lexicographic successor; false once the sequence is non-increasing.
fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
