//! Words, triples, orbit representatives, sign counts and factorial weights.
//!
//! A triple of length `d` is stored as a sequence of letters `(b, r, s)`
//! (basis index, row, column). Letters are ordered by basis declaration
//! order, then row, then column; the canonical representative of an orbit
//! under place permutations is the weakly increasing rearrangement.
//! Permutations are 0-based vectors `σ[k] = σ(k)` acting on the right:
//! `(xσ)_k = x_{σ(k)}`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::exactlin::Scalar;
use crate::superalgebra::{Sector, SuperalgebraPresentation};

/// One position of a triple: basis index, row index, column index (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub b: u32,
    pub r: u32,
    pub s: u32,
}

impl Letter {
    pub fn new(b: usize, r: usize, s: usize) -> Self {
        Letter { b: b as u32, r: r as u32, s: s as u32 }
    }

    pub fn basis(self) -> usize {
        self.b as usize
    }
}

/// Weakly increasing letter sequence with no repeated odd letter.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CanonicalTriple(Vec<Letter>);

impl CanonicalTriple {
    /// Wraps letters already known to be canonical.
    pub fn from_sorted_unchecked(letters: Vec<Letter>) -> Self {
        debug_assert!(letters.windows(2).all(|w| w[0] <= w[1]));
        CanonicalTriple(letters)
    }

    pub fn empty() -> Self {
        CanonicalTriple(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn rows(&self) -> Vec<u32> {
        self.0.iter().map(|l| l.r).collect()
    }

    pub fn cols(&self) -> Vec<u32> {
        self.0.iter().map(|l| l.s).collect()
    }

    pub fn basis_word(&self) -> Vec<usize> {
        self.0.iter().map(|l| l.basis()).collect()
    }

    /// Distinct letters with multiplicities, in order.
    pub fn runs(&self) -> Vec<(Letter, usize)> {
        runs(&self.0)
    }

    /// Text form `b1,b2|r1,r2|s1,s2`.
    pub fn to_text(&self, p: &SuperalgebraPresentation) -> String {
        triple_text(&self.0, p)
    }

    /// Parses the text form and canonicalizes it.
    pub fn parse(text: &str, p: &SuperalgebraPresentation, n: usize) -> Result<(Option<CanonicalTriple>, i32)> {
        let letters = parse_letters(text, p, n)?;
        Ok(match canonicalize(&letters, p) {
            Some((t, s)) => (Some(t), s),
            None => (None, 0),
        })
    }
}

/// Text form of an arbitrary letter sequence.
pub fn triple_text(letters: &[Letter], p: &SuperalgebraPresentation) -> String {
    let b: Vec<&str> = letters.iter().map(|l| p.label(l.basis())).collect();
    let r: Vec<String> = letters.iter().map(|l| l.r.to_string()).collect();
    let s: Vec<String> = letters.iter().map(|l| l.s.to_string()).collect();
    format!("{}|{}|{}", b.join(","), r.join(","), s.join(","))
}

/// Parses `b1,...|r1,...|s1,...` into letters (no canonicalization).
pub fn parse_letters(text: &str, p: &SuperalgebraPresentation, n: usize) -> Result<Vec<Letter>> {
    let parts: Vec<&str> = text.trim().split('|').collect();
    if parts.len() != 3 {
        return Err(Error::Parse(format!("expected three '|'-separated fields in {text:?}")));
    }
    let split = |s: &str| -> Vec<String> {
        let s = s.trim();
        if s.is_empty() {
            Vec::new()
        } else {
            s.split(',').map(|x| x.trim().to_string()).collect()
        }
    };
    let (b, r, s) = (split(parts[0]), split(parts[1]), split(parts[2]));
    if b.len() != r.len() || b.len() != s.len() {
        return Err(Error::Parse(format!("fields of {text:?} have different lengths")));
    }
    let num = |x: &str, what: &str| -> Result<u32> {
        let v: u32 = x.parse().map_err(|_| Error::Parse(format!("bad {what} index {x:?} in {text:?}")))?;
        if v == 0 || v as usize > n {
            return Err(Error::Parse(format!("{what} index {v} outside [1,{n}] in {text:?}")));
        }
        Ok(v)
    };
    b.iter()
        .zip(r.iter().zip(s.iter()))
        .map(|(bl, (rl, sl))| Ok(Letter { b: p.require_index(bl)? as u32, r: num(rl, "row")?, s: num(sl, "column")? }))
        .collect()
}

impl fmt::Display for CanonicalTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|l| format!("({},{},{})", l.b, l.r, l.s)).collect();
        write!(f, "[{}]", parts.join(""))
    }
}

pub fn runs<T: PartialEq + Copy>(xs: &[T]) -> Vec<(T, usize)> {
    let mut out: Vec<(T, usize)> = Vec::new();
    for &x in xs {
        match out.last_mut() {
            Some((y, m)) if *y == x => *m += 1,
            _ => out.push((x, 1)),
        }
    }
    out
}

/// Number of pairs `k < l` of odd letters with `letter_k > letter_l`.
pub fn sign_bracket(letters: &[Letter], p: &SuperalgebraPresentation) -> usize {
    let mut count = 0;
    for k in 0..letters.len() {
        if !p.is_odd(letters[k].basis()) {
            continue;
        }
        for l in (k + 1)..letters.len() {
            if p.is_odd(letters[l].basis()) && letters[k] > letters[l] {
                count += 1;
            }
        }
    }
    count
}

/// True when the letters form an element of the triple set (odd letters
/// never repeat).
pub fn is_admissible(letters: &[Letter], p: &SuperalgebraPresentation) -> bool {
    let mut sorted = letters.to_vec();
    sorted.sort_unstable();
    sorted.windows(2).all(|w| w[0] != w[1] || !p.is_odd(w[0].basis()))
}

/// Sorts the letters; returns the canonical triple and the sign relating the
/// input to it, or `None` when an odd letter repeats.
pub fn canonicalize(letters: &[Letter], p: &SuperalgebraPresentation) -> Option<(CanonicalTriple, i32)> {
    let mut sorted = letters.to_vec();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1] && p.is_odd(w[0].basis())) {
        return None;
    }
    let sign = if sign_bracket(letters, p).is_multiple_of(2) { 1 } else { -1 };
    Some((CanonicalTriple(sorted), sign))
}

/// `⟨σ; p⟩`: pairs `k < l` of odd positions whose order σ reverses.
pub fn sign_sigma(sigma: &[usize], odd: &[bool]) -> usize {
    let inv = inverse(sigma);
    let mut count = 0;
    for k in 0..odd.len() {
        if !odd[k] {
            continue;
        }
        for l in (k + 1)..odd.len() {
            if odd[l] && inv[k] > inv[l] {
                count += 1;
            }
        }
    }
    count
}

/// `⟨p, p'⟩`: pairs `k > l` with `p_k` odd and `p'_l` odd.
pub fn sign_pair(odd_p: &[bool], odd_q: &[bool]) -> usize {
    let mut count = 0;
    let mut odd_q_before = 0usize;
    for k in 0..odd_p.len() {
        if odd_p[k] {
            count += odd_q_before;
        }
        if k < odd_q.len() && odd_q[k] {
            odd_q_before += 1;
        }
    }
    count
}

pub fn odd_mask(letters: &[Letter], p: &SuperalgebraPresentation) -> Vec<bool> {
    letters.iter().map(|l| p.is_odd(l.basis())).collect()
}

pub fn factorial(n: usize) -> Scalar {
    (1..=n).fold(Scalar::one(), |acc, k| acc * Scalar::from(k))
}

/// `[t]!`, `[t]!_a`, `[t]!_c`: products of multiplicity factorials over all
/// letters, sector-a letters and sector-c letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorialWeights {
    pub all: Scalar,
    pub a: Scalar,
    pub c: Scalar,
}

pub fn factorial_weights(letters: &[Letter], p: &SuperalgebraPresentation) -> FactorialWeights {
    let mut sorted = letters.to_vec();
    sorted.sort_unstable();
    let mut w = FactorialWeights { all: Scalar::one(), a: Scalar::one(), c: Scalar::one() };
    for (l, m) in runs(&sorted) {
        if m < 2 {
            continue;
        }
        let f = factorial(m);
        match p.sector(l.basis()) {
            Sector::A => w.a *= &f,
            Sector::C => w.c *= &f,
            Sector::Odd => {}
        }
        w.all *= f;
    }
    w
}

/// Sector-c factorial weight of a canonical triple.
pub fn c_factorial(t: &CanonicalTriple, p: &SuperalgebraPresentation) -> Scalar {
    sector_factorial(t, p, Sector::C)
}

/// Sector-a factorial weight of a canonical triple.
pub fn a_factorial(t: &CanonicalTriple, p: &SuperalgebraPresentation) -> Scalar {
    sector_factorial(t, p, Sector::A)
}

/// Full factorial weight of a canonical triple.
pub fn full_factorial(t: &CanonicalTriple) -> Scalar {
    t.runs().iter().fold(Scalar::one(), |acc, (_, m)| acc * factorial(*m))
}

fn sector_factorial(t: &CanonicalTriple, p: &SuperalgebraPresentation, s: Sector) -> Scalar {
    t.runs().iter().filter(|(l, _)| p.sector(l.basis()) == s).fold(Scalar::one(), |acc, (_, m)| acc * factorial(*m))
}

/// All letters over `n`, in the fixed total order.
pub fn alphabet(p: &SuperalgebraPresentation, n: usize) -> Vec<Letter> {
    let mut out = Vec::with_capacity(p.dim() * n * n);
    for b in 0..p.dim() {
        for r in 1..=n {
            for s in 1..=n {
                out.push(Letter::new(b, r, s));
            }
        }
    }
    out
}

/// Every canonical triple of degree `d`, in increasing order.
pub fn enumerate_canonical(p: &SuperalgebraPresentation, n: usize, d: usize) -> Vec<CanonicalTriple> {
    enumerate_canonical_filtered(p, n, d, |_| true)
}

/// Canonical triples whose letters all satisfy `keep`.
pub fn enumerate_canonical_filtered(
    p: &SuperalgebraPresentation,
    n: usize,
    d: usize,
    keep: impl Fn(&Letter) -> bool,
) -> Vec<CanonicalTriple> {
    let alpha: Vec<Letter> = alphabet(p, n).into_iter().filter(|l| keep(l)).collect();
    let odd: Vec<bool> = alpha.iter().map(|l| p.is_odd(l.basis())).collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(d);
    fn rec(alpha: &[Letter], odd: &[bool], start: usize, d: usize, cur: &mut Vec<Letter>, out: &mut Vec<CanonicalTriple>) {
        if cur.len() == d {
            out.push(CanonicalTriple(cur.clone()));
            return;
        }
        for i in start..alpha.len() {
            cur.push(alpha[i]);
            rec(alpha, odd, if odd[i] { i + 1 } else { i }, d, cur, out);
            cur.pop();
        }
    }
    rec(&alpha, &odd, 0, d, &mut cur, &mut out);
    out
}

/// All ways to write `t` as a concatenation of an `l`-letter and a
/// `(d-l)`-letter canonical triple, with the sign of the reordering.
pub fn splits(t: &CanonicalTriple, l: usize, p: &SuperalgebraPresentation) -> Vec<(CanonicalTriple, CanonicalTriple, i32)> {
    let rs = t.runs();
    let mut out = Vec::new();
    let mut take = vec![0usize; rs.len()];
    fn rec(
        rs: &[(Letter, usize)],
        i: usize,
        left: usize,
        take: &mut Vec<usize>,
        p: &SuperalgebraPresentation,
        out: &mut Vec<(CanonicalTriple, CanonicalTriple, i32)>,
    ) {
        if i == rs.len() {
            if left != 0 {
                return;
            }
            let mut a = Vec::new();
            let mut b = Vec::new();
            for (k, (x, m)) in rs.iter().enumerate() {
                a.extend(std::iter::repeat_n(*x, take[k]));
                b.extend(std::iter::repeat_n(*x, m - take[k]));
            }
            let mut cat = a.clone();
            cat.extend_from_slice(&b);
            let sign = if sign_bracket(&cat, p).is_multiple_of(2) { 1 } else { -1 };
            out.push((CanonicalTriple(a), CanonicalTriple(b), sign));
            return;
        }
        let remaining: usize = rs[i..].iter().map(|e| e.1).sum();
        if remaining < left {
            return;
        }
        for k in 0..=rs[i].1.min(left) {
            take[i] = k;
            rec(rs, i + 1, left - k, take, p, out);
        }
        take[i] = 0;
    }
    if l <= t.degree() {
        rec(&rs, 0, l, &mut take, p, &mut out);
    }
    out
}

/// `(xσ)_k = x_{σ(k)}`.
pub fn act<T: Clone>(x: &[T], sigma: &[usize]) -> Vec<T> {
    sigma.iter().map(|&k| x[k].clone()).collect()
}

/// `(στ)(k) = σ(τ(k))`.
pub fn compose(sigma: &[usize], tau: &[usize]) -> Vec<usize> {
    tau.iter().map(|&k| sigma[k]).collect()
}

pub fn inverse(sigma: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; sigma.len()];
    for (k, &v) in sigma.iter().enumerate() {
        inv[v] = k;
    }
    inv
}

pub fn identity_perm(d: usize) -> Vec<usize> {
    (0..d).collect()
}

/// All permutations of `0..d` in lexicographic order.
pub fn all_permutations(d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..d).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..d).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
        let j = (i..d).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// Permutation length (number of inversions).
pub fn perm_length(sigma: &[usize]) -> usize {
    let mut c = 0;
    for i in 0..sigma.len() {
        for j in (i + 1)..sigma.len() {
            if sigma[i] > sigma[j] {
                c += 1;
            }
        }
    }
    c
}

pub fn perm_sign(sigma: &[usize]) -> i32 {
    if perm_length(sigma).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Shortest representatives σ of the cosets of the stabilizer of `w`, one for
/// each distinct rearrangement `wσ`, returned as `(σ, wσ)` in lexicographic
/// order of `wσ`.
pub fn coset_representatives<T: Ord + Clone>(w: &[T]) -> Vec<(Vec<usize>, Vec<T>)> {
    let mut counts: BTreeMap<T, usize> = BTreeMap::new();
    for x in w {
        *counts.entry(x.clone()).or_default() += 1;
    }
    let distinct: Vec<T> = counts.keys().cloned().collect();
    let mut mult: Vec<usize> = counts.values().copied().collect();
    // positions of each value in w, in order
    let positions: Vec<Vec<usize>> = distinct.iter().map(|v| (0..w.len()).filter(|&k| &w[k] == v).collect()).collect();
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::with_capacity(w.len());
    fn rec<T: Clone>(
        distinct: &[T],
        mult: &mut [usize],
        positions: &[Vec<usize>],
        d: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<(Vec<usize>, Vec<T>)>,
    ) {
        if cur.len() == d {
            let mut used = vec![0usize; distinct.len()];
            let mut sigma = Vec::with_capacity(d);
            for &v in cur.iter() {
                sigma.push(positions[v][used[v]]);
                used[v] += 1;
            }
            let word = cur.iter().map(|&v| distinct[v].clone()).collect();
            out.push((sigma, word));
            return;
        }
        for v in 0..distinct.len() {
            if mult[v] > 0 {
                mult[v] -= 1;
                cur.push(v);
                rec(distinct, mult, positions, d, cur, out);
                cur.pop();
                mult[v] += 1;
            }
        }
    }
    rec(&distinct, &mut mult, &positions, w.len(), &mut cur, &mut out);
    out
}

/// Order of the stabilizer of `w` by scanning all permutations.
pub fn brute_stabilizer_order<T: PartialEq + Clone>(w: &[T]) -> usize {
    all_permutations(w.len()).into_iter().filter(|s| act(w, s) == w).count()
}

/// A composition `λ = (λ_1, …, λ_n)` of `d`.
pub type Composition = Vec<usize>;

/// All compositions of `d` with `n` parts, in reverse lexicographic order
/// (`(d,0,…)` first).
pub fn compositions(n: usize, d: usize) -> Vec<Composition> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
        if cur.len() + 1 == n {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for k in (0..=left).rev() {
            cur.push(k);
            rec(n, left - k, cur, out);
            cur.pop();
        }
    }
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, d, &mut cur, &mut out);
    out
}

/// The word `1^{λ_1} 2^{λ_2} …`.
pub fn leading_word(lambda: &[usize]) -> Vec<u32> {
    let mut w = Vec::new();
    for (r, &m) in lambda.iter().enumerate() {
        w.extend(std::iter::repeat_n(r as u32 + 1, m));
    }
    w
}

/// Content of a word: `ω_r` = number of entries equal to `r`.
pub fn word_content(w: &[u32], n: usize) -> Composition {
    let mut c = vec![0; n];
    for &x in w {
        c[x as usize - 1] += 1;
    }
    c
}

/// A multicomposition: one composition of some degree per index in a family.
pub type MultiComposition = Vec<Composition>;

/// All multicompositions with `parts` components, each with `n` entries, of
/// total size `d`.
pub fn multicompositions(parts: usize, n: usize, d: usize) -> Vec<MultiComposition> {
    let flat = compositions(parts * n, d);
    flat.into_iter().map(|f| f.chunks(n).map(<[usize]>::to_vec).collect()).collect()
}

pub fn binomial(n: usize, k: usize) -> Scalar {
    if k > n {
        return Scalar::from(0);
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalgebra::{make_extended_zigzag, make_zigzag};
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_letters(rng: &mut ChaCha8Rng, p: &SuperalgebraPresentation, n: usize, d: usize) -> Vec<Letter> {
        loop {
            let v: Vec<Letter> = (0..d)
                .map(|_| Letter::new(rng.gen_range(0..p.dim()), rng.gen_range(1..=n), rng.gen_range(1..=n)))
                .collect();
            if is_admissible(&v, p) {
                return v;
            }
        }
    }

    fn random_perm(rng: &mut ChaCha8Rng, d: usize) -> Vec<usize> {
        let mut v: Vec<usize> = (0..d).collect();
        v.shuffle(rng);
        v
    }

    #[test]
    fn canonicalize_basics() {
        let z = make_extended_zigzag(1).unwrap();
        let a01 = z.index_of("a0_1").unwrap();
        let a10 = z.index_of("a1_0").unwrap();
        let e0 = z.index_of("e0").unwrap();
        let sorted = vec![Letter::new(e0, 1, 1), Letter::new(a01, 1, 2), Letter::new(a10, 1, 1)];
        let (t, s) = canonicalize(&sorted, &z).unwrap();
        assert_eq!(t.letters(), &sorted[..]);
        assert_eq!(s, 1);
        let swapped = vec![sorted[0], sorted[2], sorted[1]];
        let (t2, s2) = canonicalize(&swapped, &z).unwrap();
        assert_eq!(t2, t);
        assert_eq!(s2, -1);
        assert!(canonicalize(&[Letter::new(a01, 1, 1), Letter::new(a01, 1, 1)], &z).is_none());
        let (t3, s3) = canonicalize(t.letters(), &z).unwrap();
        assert_eq!((t3, s3), (t, 1));
    }

    #[test]
    fn bracket_trivial_cases() {
        let z = make_extended_zigzag(1).unwrap();
        let e0 = z.index_of("e0").unwrap();
        let a01 = z.index_of("a0_1").unwrap();
        assert_eq!(sign_bracket(&[Letter::new(e0, 2, 1), Letter::new(e0, 1, 1)], &z), 0);
        assert_eq!(sign_bracket(&[Letter::new(a01, 2, 1), Letter::new(e0, 1, 1)], &z), 0);
        assert_eq!(sign_sigma(&[0, 1, 2], &[true, true, true]), 0);
        assert_eq!(sign_sigma(&[1, 0], &[false, false]), 0);
        assert_eq!(sign_sigma(&[1, 0], &[true, true]), 1);
    }

    #[test]
    fn bracket_permutation_identity() {
        let z = make_extended_zigzag(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..300 {
            let d = rng.gen_range(1..=5);
            let t = random_letters(&mut rng, &z, 2, d);
            let sigma = random_perm(&mut rng, d);
            let ts = act(&t, &sigma);
            let lhs = (sign_bracket(&t, &z) + sign_bracket(&ts, &z)) % 2;
            assert_eq!(lhs, sign_sigma(&sigma, &odd_mask(&t, &z)) % 2);
        }
    }

    #[test]
    fn sign_cocycle() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..200 {
            let d = rng.gen_range(1..=6);
            let odd: Vec<bool> = (0..d).map(|_| rng.gen_bool(0.5)).collect();
            let s = random_perm(&mut rng, d);
            let t = random_perm(&mut rng, d);
            let lhs = sign_sigma(&compose(&s, &t), &odd) % 2;
            let rhs = (sign_sigma(&s, &odd) + sign_sigma(&t, &act(&odd, &s))) % 2;
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn factorial_weight_examples() {
        let z = make_extended_zigzag(1).unwrap();
        let c0 = z.index_of("c0").unwrap();
        let e0 = z.index_of("e0").unwrap();
        let w = factorial_weights(&[Letter::new(c0, 1, 1); 3], &z);
        assert_eq!((w.all, w.a, w.c), (6.into(), 1.into(), 6.into()));
        let w = factorial_weights(&[Letter::new(c0, 1, 1), Letter::new(e0, 1, 2)], &z);
        assert_eq!((w.all, w.a, w.c), (1.into(), 1.into(), 1.into()));
    }

    #[test]
    fn stabilizer_orders_match_weights() {
        let z = make_zigzag(1).unwrap();
        for n in 1..=2 {
            for d in 0..=4 {
                for t in enumerate_canonical(&z, n, d) {
                    let w = factorial_weights(t.letters(), &z);
                    assert_eq!(Scalar::from(brute_stabilizer_order(t.letters())), w.all);
                }
            }
        }
    }

    #[test]
    fn enumeration_counts() {
        let z = make_extended_zigzag(1).unwrap();
        assert_eq!(enumerate_canonical(&z, 1, 1).len(), 5);
        // orbits of letters over the 20-letter alphabet: 12 even letters, 8 odd
        let (ev, od) = (12usize, 8usize);
        let closed = ev * (ev + 1) / 2 + ev * od + od * (od - 1) / 2;
        assert_eq!(enumerate_canonical(&z, 2, 2).len(), closed);
        // brute force over all words
        let alpha = alphabet(&z, 2);
        let mut set = std::collections::BTreeSet::new();
        for x in &alpha {
            for y in &alpha {
                if let Some((t, _)) = canonicalize(&[*x, *y], &z) {
                    set.insert(t);
                }
            }
        }
        assert_eq!(set.len(), closed);
        let odd_only = crate::superalgebra::SuperalgebraPresentation::new(
            "odd",
            vec![crate::superalgebra::BasisElement {
                label: "x".into(),
                parity: crate::superalgebra::Parity::Odd,
                sector: Sector::Odd,
            }],
            vec![],
            None,
            None,
        )
        .unwrap();
        assert!(enumerate_canonical(&odd_only, 1, 2).is_empty());
        assert_eq!(enumerate_canonical(&z, 2, 0), vec![CanonicalTriple::empty()]);
    }

    #[test]
    fn split_examples() {
        let z = make_extended_zigzag(1).unwrap();
        let e0 = z.index_of("e0").unwrap();
        let t = CanonicalTriple::from_sorted_unchecked(vec![Letter::new(e0, 1, 1); 2]);
        let s0 = splits(&t, 0, &z);
        assert_eq!(s0, vec![(CanonicalTriple::empty(), t.clone(), 1)]);
        let s1 = splits(&t, 1, &z);
        assert_eq!(s1.len(), 1);
        assert_eq!(s1[0].0.degree(), 1);
        // splits at l and d-l correspond via swap with the supercommutation sign
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            let d = rng.gen_range(1..=4);
            let (t, _) = canonicalize(&random_letters(&mut rng, &z, 2, d), &z).unwrap();
            for l in 0..=d {
                let a = splits(&t, l, &z);
                let b = splits(&t, d - l, &z);
                assert_eq!(a.len(), b.len());
                for (x, y, s) in &a {
                    let (_, _, s2) = b.iter().find(|(u, v, _)| u == y && v == x).expect("mirror split");
                    let px = x.letters().iter().filter(|l| z.is_odd(l.basis())).count();
                    let py = y.letters().iter().filter(|l| z.is_odd(l.basis())).count();
                    let sc = if (px * py) % 2 == 0 { 1 } else { -1 };
                    assert_eq!(*s, s2 * sc);
                }
            }
        }
    }

    #[test]
    fn coset_representatives_counts() {
        let w = [1, 2, 3];
        assert_eq!(coset_representatives(&w).len(), 6);
        let w = [7, 7, 7];
        let r = coset_representatives(&w);
        assert_eq!(r, vec![(vec![0, 1, 2], vec![7, 7, 7])]);
        let w = [2, 1, 2, 1];
        let r = coset_representatives(&w);
        assert_eq!(r.len(), 24 / 4);
        for (sigma, v) in &r {
            assert_eq!(&act(&w, sigma), v);
            // shortest: no other σ' with the same image is shorter
            for other in all_permutations(4) {
                if &act(&w, &other) == v {
                    assert!(perm_length(&other) >= perm_length(sigma));
                }
            }
        }
    }

    #[test]
    fn compositions_and_words() {
        assert_eq!(compositions(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(leading_word(&[1, 1]), vec![1, 2]);
        for n in 1..=6 {
            for d in 0..=6 {
                assert_eq!(Scalar::from(compositions(n, d).len()), binomial(n + d - 1, d));
            }
        }
        assert_eq!(multicompositions(2, 2, 1).len(), 4);
    }

    #[test]
    fn pair_sign_definition() {
        // k > l with p_k odd, q_l odd
        assert_eq!(sign_pair(&[true, true], &[true, true]), 1);
        assert_eq!(sign_pair(&[false, true], &[true, false]), 1);
        assert_eq!(sign_pair(&[true, false], &[false, true]), 0);
    }

    #[test]
    fn text_round_trip() {
        let z = make_extended_zigzag(1).unwrap();
        let (t, s) = CanonicalTriple::parse("a1_0,a0_1|1,1|1,2", &z, 2).unwrap();
        let t = t.unwrap();
        assert_eq!(s, -1);
        assert_eq!(t.to_text(&z), "a0_1,a1_0|1,1|2,1");
        assert!(CanonicalTriple::parse("a0_1|1|3", &z, 2).is_err());
        assert!(CanonicalTriple::parse("a0_1,e0|1|1", &z, 2).is_err());
    }
}
