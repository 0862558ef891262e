use std::collections::BTreeMap;

use mathieu_core::characters::{
    character_of, haar_integral_class, mathieu_scan_class, parse_combination, schur_decompose,
    tensor_decompose, weight_multiplicities, CharClassFn, SchurExpansion,
};
use mathieu_core::poly::{binomial, int, Poly};
use mathieu_core::{Rat, RootSystemA, Weight};
use num::{BigInt, ToPrimitive, Zero};
use proptest::prelude::*;

/// Multiplicities read off as coefficients of `x^(p + delta)` in `f * prod_{i<j}(x_i - x_j)`.
fn vandermonde_oracle(f: &CharClassFn) -> BTreeMap<Weight, Rat> {
    let n = f.n();
    let mut vdm = Poly::one(n);
    for i in 0..n {
        for j in i + 1..n {
            vdm = &vdm * &(&Poly::var(n, i) - &Poly::var(n, j));
        }
    }
    let prod = &vdm * f.poly();
    let mut out: BTreeMap<Weight, Rat> = BTreeMap::new();
    for (e, c) in prod.terms() {
        if e.0.windows(2).all(|w| w[0] > w[1]) {
            let p: Vec<i64> =
                e.0.iter()
                    .enumerate()
                    .map(|(i, &a)| a as i64 - (n - 1 - i) as i64)
                    .collect();
            let w = Weight::from_exponents(&p);
            *out.entry(w).or_insert_with(Rat::zero) += c;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn as_map(e: &SchurExpansion) -> BTreeMap<Weight, Rat> {
    e.iter().map(|(w, c)| (w.clone(), c.clone())).collect()
}

/// Number of walks `0 -> 0` of length `2m` on the nonnegative integers, built by
/// iterating `V(j) ⊗ V(1) = V(j+1) ⊕ V(j-1)`.
fn clebsch_gordan_paths(steps: usize) -> Vec<u64> {
    let mut counts = vec![0u64; steps + 2];
    counts[0] = 1;
    let mut out = Vec::new();
    for _ in 0..steps {
        let mut next = vec![0u64; steps + 2];
        for (j, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            next[j + 1] += c;
            if j > 0 {
                next[j - 1] += c;
            }
        }
        counts = next;
        out.push(counts[0]);
    }
    out
}

fn catalan(m: u64) -> BigInt {
    binomial(2 * m, m) / BigInt::from(m + 1)
}

#[test]
fn decomposition_matches_vandermonde_oracle() {
    for n in 2..=4 {
        let rs = RootSystemA::new(n).unwrap();
        let ws = rs.dominant_weights_up_to(2);
        for a in &ws {
            for b in &ws {
                let f = character_of(&rs, a)
                    .unwrap()
                    .mul(&character_of(&rs, b).unwrap())
                    .unwrap();
                assert_eq!(
                    as_map(&schur_decompose(&f).unwrap()),
                    vandermonde_oracle(&f),
                    "{a} x {b}"
                );
            }
        }
    }
}

#[test]
fn su2_moments_match_path_counting() {
    let rs = RootSystemA::new(2).unwrap();
    let chi1 = character_of(&rs, &Weight(vec![1])).unwrap();
    let paths = clebsch_gordan_paths(16);
    for m in 1..=8u32 {
        let moment = haar_integral_class(&chi1.pow(2 * m).unwrap()).unwrap();
        assert_eq!(moment, Rat::from_integer(catalan(m as u64)));
        assert_eq!(moment, int(paths[2 * m as usize - 1] as i64));
    }
}

#[test]
fn scan_matches_path_counting() {
    let rs = RootSystemA::new(2).unwrap();
    let f = parse_combination("[1]", 1).unwrap();
    let rep = mathieu_scan_class(&rs, &f, &f, 10).unwrap();
    let paths = clebsch_gordan_paths(11);
    for n in 0..10 {
        assert_eq!(rep.a[n], int(paths[n] as i64));
        assert_eq!(rep.b[n], int(paths[n + 1] as i64));
    }
    assert!(!rep.hypothesis_holds);
}

#[test]
fn orthogonality() {
    for n in 2..=4 {
        let rs = RootSystemA::new(n).unwrap();
        let ws = rs.dominant_weights_up_to(3);
        for a in &ws {
            for b in &ws {
                let f = character_of(&rs, a)
                    .unwrap()
                    .mul(&character_of(&rs, &rs.dual_weight(b)).unwrap())
                    .unwrap();
                let expected = if a == b { int(1) } else { int(0) };
                assert_eq!(haar_integral_class(&f).unwrap(), expected, "{a} {b} N={n}");
            }
        }
    }
}

#[test]
fn multiplicity_free_and_minuscule_translates() {
    for n in 2..=4 {
        let rs = RootSystemA::new(n).unwrap();
        for mu in rs.dominant_weights_up_to(2) {
            let wm = weight_multiplicities(&rs, &mu).unwrap();
            if !wm.values().all(|&m| m == 1) {
                continue;
            }
            for lambda in rs.dominant_weights_up_to(2) {
                let dec = tensor_decompose(&rs, &lambda, &mu).unwrap();
                for (nu, c) in dec.iter() {
                    assert!(*c <= int(1));
                    assert!(wm.contains_key(&(nu - &lambda)));
                }
                if !mu.is_zero() && rs.is_minuscule(&mu).unwrap() {
                    for v in wm.keys() {
                        let nu = &lambda + v;
                        assert_eq!(nu.is_dominant(), dec.get(&nu) == int(1), "{lambda} + {v}");
                    }
                }
            }
        }
    }
}

#[test]
fn decomposition_identity_grid() {
    for n in 2..=6usize {
        let rs = RootSystemA::new(n).unwrap();
        for k in 1..=8i64 {
            let lhs = BigInt::from(n) * binomial((n as i64 + k - 1) as u64, k as u64);
            let top = &(k * &rs.fundamental(1)) + &rs.fundamental(n - 1);
            let rhs =
                rs.weyl_dim(&top).unwrap() + binomial((n as i64 + k - 2) as u64, (k - 1) as u64);
            assert_eq!(lhs, rhs);
        }
    }
}

fn arb_pair() -> impl Strategy<Value = (usize, Vec<i64>, Vec<i64>)> {
    (2..=4usize).prop_flat_map(|n| {
        (
            Just(n),
            prop::collection::vec(0..=2i64, n - 1),
            prop::collection::vec(0..=2i64, n - 1),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn dimension_conservation((n, a, b) in arb_pair()) {
        let rs = RootSystemA::new(n).unwrap();
        let (a, b) = (Weight(a), Weight(b));
        let dec = tensor_decompose(&rs, &a, &b).unwrap();
        let total = dec.dimension(&rs).unwrap();
        let expected = rs.weyl_dim(&a).unwrap() * rs.weyl_dim(&b).unwrap();
        prop_assert_eq!(total, Rat::from_integer(expected));
        prop_assert!(dec.is_genuine());
        prop_assert_eq!(dec.get(&(&a + &b)), int(1));
        let gap = &a - &rs.dual_weight(&b);
        if gap.is_dominant() {
            prop_assert_eq!(dec.get(&gap), int(1));
        }
        let trivial = dec.get(&rs.zero());
        prop_assert_eq!(trivial == int(1), b == rs.dual_weight(&a));
        prop_assert!(trivial <= int(1));
    }

    #[test]
    fn character_at_identity_is_dimension((n, a, _b) in arb_pair()) {
        let rs = RootSystemA::new(n).unwrap();
        let a = Weight(a);
        let chi = character_of(&rs, &a).unwrap();
        prop_assert_eq!(chi.at_identity(), Rat::from_integer(rs.weyl_dim(&a).unwrap()));
        prop_assert_eq!(schur_decompose(&chi).unwrap(), SchurExpansion::single(a.clone()));
    }

    #[test]
    fn weight_multiplicities_are_weyl_invariant((n, a, _b) in arb_pair()) {
        let rs = RootSystemA::new(n).unwrap();
        let a = Weight(a);
        let wm = weight_multiplicities(&rs, &a).unwrap();
        let mass: u64 = wm.values().sum();
        prop_assert_eq!(Some(mass), rs.weyl_dim(&a).unwrap().to_u64());
        for w in rs.weyl_group().unwrap() {
            for (v, m) in &wm {
                prop_assert_eq!(wm.get(&w.act(v)), Some(m));
            }
        }
    }
}
