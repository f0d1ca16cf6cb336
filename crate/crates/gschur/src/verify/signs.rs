//! Seeded and exhaustive checks of the sign conventions on letter words.

use rand::Rng;
use serde::Serialize;

use crate::bialgebra::seeded_rng;
use crate::combinatorics::{
    act, brute_stabilizer_order, enumerate_canonical, factorial_weights, is_admissible, odd_mask, sign_bracket, sign_pair, sign_sigma, Letter,
};
use crate::exactlin::Scalar;
use crate::superalgebra::SuperalgebraPresentation;

#[derive(Clone, Debug, Default, Serialize)]
pub struct SignTally {
    pub instances: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl SignTally {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(what());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

fn random_perm(rng: &mut impl Rng, d: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..d).collect();
    for i in (1..d).rev() {
        v.swap(i, rng.gen_range(0..=i));
    }
    v
}

fn random_word(rng: &mut impl Rng, n: usize, d: usize) -> Vec<u32> {
    (0..d).map(|_| rng.gen_range(1..=n as u32)).collect()
}

fn random_basis_word(rng: &mut impl Rng, p: &SuperalgebraPresentation, d: usize) -> Vec<usize> {
    (0..d).map(|_| rng.gen_range(0..p.dim())).collect()
}

fn zip(b: &[usize], r: &[u32], s: &[u32]) -> Vec<Letter> {
    b.iter().zip(r.iter().zip(s)).map(|(&b, (&r, &s))| Letter::new(b, r as usize, s as usize)).collect()
}

/// The parity of the bracket of a word plus that of its permuted word equals
/// the parity of odd pairs reordered by the permutation.
pub fn bracket_under_permutation(p: &SuperalgebraPresentation, n: usize, samples: usize, seed: u64) -> SignTally {
    let mut rng = seeded_rng(seed);
    let mut tally = SignTally::default();
    while tally.instances < samples {
        let d = rng.gen_range(1..=6);
        let w = zip(&random_basis_word(&mut rng, p, d), &random_word(&mut rng, n, d), &random_word(&mut rng, n, d));
        if !is_admissible(&w, p) {
            continue;
        }
        let sigma = random_perm(&mut rng, d);
        let lhs = (sign_bracket(&w, p) + sign_bracket(&act(&w, &sigma), p)) % 2;
        let rhs = sign_sigma(&sigma, &odd_mask(&w, p)) % 2;
        tally.record(lhs == rhs, || format!("word {w:?}, permutation {sigma:?}"));
    }
    tally
}

/// For composable triples `(a, r, t)` and `(c, t, u)` the combined bracket
/// parity is unchanged by a simple transposition `s_k` whenever the parities
/// of `a` and `c` agree at position `k` or `k+1`.
pub fn composable_brackets_under_transposition(p: &SuperalgebraPresentation, n: usize, samples: usize, seed: u64) -> SignTally {
    let mut rng = seeded_rng(seed);
    let mut tally = SignTally::default();
    while tally.instances < samples {
        let d = rng.gen_range(2..=6);
        let (a, c) = (random_basis_word(&mut rng, p, d), random_basis_word(&mut rng, p, d));
        let (r, t, u) = (random_word(&mut rng, n, d), random_word(&mut rng, n, d), random_word(&mut rng, n, d));
        let (x, y) = (zip(&a, &r, &t), zip(&c, &t, &u));
        if !is_admissible(&x, p) || !is_admissible(&y, p) {
            continue;
        }
        let ks: Vec<usize> = (0..d - 1).filter(|&k| p.is_odd(a[k]) == p.is_odd(c[k]) || p.is_odd(a[k + 1]) == p.is_odd(c[k + 1])).collect();
        if ks.is_empty() {
            continue;
        }
        let k = ks[rng.gen_range(0..ks.len())];
        let mut sk: Vec<usize> = (0..d).collect();
        sk.swap(k, k + 1);
        let total = |x: &[Letter], y: &[Letter]| (sign_bracket(x, p) + sign_bracket(y, p) + sign_pair(&odd_mask(x, p), &odd_mask(y, p))) % 2;
        let before = total(&x, &y);
        let after = total(&act(&x, &sk), &act(&y, &sk));
        tally.record(before == after, || format!("triples {x:?} and {y:?} at position {k}"));
    }
    tally
}

/// Stabilizer order of every canonical triple of degree `≤ max_d` with
/// `≤ max_n` rows equals its factorial weight; scanned exhaustively.
pub fn stabilizer_orders(p: &SuperalgebraPresentation, max_n: usize, max_d: usize) -> SignTally {
    let mut tally = SignTally::default();
    for n in 1..=max_n {
        for d in 0..=max_d {
            for t in enumerate_canonical(p, n, d) {
                let w = factorial_weights(t.letters(), p);
                let ok = Scalar::from(brute_stabilizer_order(t.letters())) == w.all;
                tally.record(ok, || t.to_text(p));
            }
        }
    }
    tally
}
