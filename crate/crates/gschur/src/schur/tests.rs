use super::*;
use crate::combinatorics::{compositions, multicompositions, all_permutations};
use crate::superalgebra::{make_extended_zigzag, make_matrix_diagonal_pair, make_matrix_superalgebra, make_zigzag};

fn zz(ell: usize, n: usize) -> SchurAlgebra {
    SchurAlgebra::new(make_extended_zigzag(ell).unwrap(), n)
}

fn all_pairs_agree(alg: &SchurAlgebra, d: usize, tag: Basis) {
    let basis = alg.basis(d);
    for x in &basis {
        let ex = alg.basis_element(x, tag);
        for y in &basis {
            let ey = alg.basis_element(y, tag);
            let fast = ex.mul(&ey).unwrap();
            let slow = multiply_oracle(&ex, &ey).unwrap();
            assert_eq!(fast, slow, "{} * {}", ex.to_text(), ey.to_text());
        }
    }
}

#[test]
fn fast_product_matches_tensor_model_zigzag() {
    for (n, d) in [(1, 1), (2, 1), (2, 2), (1, 3)] {
        all_pairs_agree(&zz(1, n), d, Basis::Xi);
        all_pairs_agree(&zz(1, n), d, Basis::Eta);
    }
}

#[test]
fn fast_product_matches_tensor_model_matrix() {
    let alg = SchurAlgebra::new(make_matrix_superalgebra(1, 1).unwrap(), 1);
    all_pairs_agree(&alg, 3, Basis::Xi);
    let alg = SchurAlgebra::new(make_matrix_superalgebra(1, 1).unwrap(), 2);
    all_pairs_agree(&alg, 2, Basis::Eta);
}

#[test]
fn cache_does_not_change_results() {
    let alg = zz(1, 2);
    let b = alg.basis(2);
    let x = alg.basis_element(&b[3], Basis::Xi);
    let y = alg.basis_element(&b[17], Basis::Xi);
    let with = x.mul(&y).unwrap();
    alg.set_cache_enabled(false);
    assert_eq!(with, x.mul(&y).unwrap());
    alg.set_cache_enabled(true);
    assert!(alg.cache_len() > 0);
}

#[test]
fn basis_elements_are_invariant_tensors() {
    let alg = zz(1, 2);
    for t in alg.basis(2) {
        assert!(to_tensor(&alg.basis_element(&t, Basis::Xi)).is_invariant());
    }
}

#[test]
fn non_invariant_tensor_is_rejected() {
    let alg = zz(1, 2);
    let mut t = TensorElement::zero(alg.presentation_arc(), 2);
    t.add_term(vec![Letter::new(0, 1, 1), Letter::new(0, 1, 2)], Scalar::one());
    assert!(from_tensor(&alg, &t).is_err());
}

#[test]
fn star_closed_form_matches_shuffles() {
    let alg = zz(1, 2);
    for tag in [Basis::Xi, Basis::Eta] {
        for x in alg.basis(1) {
            for y in alg.basis(1) {
                let ex = alg.basis_element(&x, tag);
                let ey = alg.basis_element(&y, tag);
                assert_eq!(ex.star(&ey).unwrap(), star_oracle(&ex, &ey).unwrap());
            }
        }
        for x in alg.basis(2).iter().step_by(7) {
            for y in alg.basis(1) {
                let ex = alg.basis_element(x, tag);
                let ey = alg.basis_element(&y, tag);
                assert_eq!(ex.star(&ey).unwrap(), star_oracle(&ex, &ey).unwrap());
            }
        }
    }
}

#[test]
fn expand_general_matches_tensor_expansion() {
    let alg = zz(1, 2);
    let p = alg.presentation();
    let x = p.element(&[("e0", 1), ("c0", 2)]).unwrap();
    let y = p.element(&[("a0_1", 1)]).unwrap();
    let e = alg.expand_general(&[x.clone(), x.clone(), y.clone()], &[1, 1, 2], &[1, 1, 1]).unwrap();
    // direct orbit sum of x⊗x⊗y
    let mut t = TensorElement::zero(alg.presentation_arc(), 3);
    for (b1, c1) in x.terms() {
        for (b2, c2) in x.terms() {
            let w = vec![Letter::new(b1, 1, 1), Letter::new(b2, 1, 1), Letter::new(p.require_index("a0_1").unwrap(), 2, 1)];
            t.add_term(w, c1 * c2);
        }
    }
    let mut orbit = TensorElement::zero(alg.presentation_arc(), 3);
    for s in all_permutations(3) {
        orbit = orbit.add(&t.act(&s));
    }
    // the stabilizer of (x, x, y) has order 2
    let expected = from_tensor(&alg, &orbit).unwrap().scale(&Scalar::from(1));
    assert_eq!(e.scale(&Scalar::from(2)), expected);
}

#[test]
fn identity_and_weight_idempotents() {
    let alg = zz(1, 2);
    let one = identity(&alg, 2).unwrap();
    for t in alg.basis(2).iter().step_by(5) {
        let x = alg.basis_element(t, Basis::Xi);
        assert_eq!(one.mul(&x).unwrap(), x);
        assert_eq!(x.mul(&one).unwrap(), x);
    }
    let lams = compositions(2, 2);
    let mut sum = alg.zero(2, Basis::Xi);
    for l in &lams {
        let a = xi_lambda(&alg, l).unwrap();
        sum = sum.add(&a).unwrap();
        for m in &lams {
            let b = xi_lambda(&alg, m).unwrap();
            let prod = a.mul(&b).unwrap();
            if l == m {
                assert_eq!(prod, a);
            } else {
                assert!(prod.is_zero());
            }
        }
    }
    assert_eq!(sum, one);
}

#[test]
fn weight_idempotents_act_on_basis_by_row_and_column_content() {
    let alg = zz(1, 2);
    for t in alg.basis(2) {
        let x = alg.basis_element(&t, Basis::Xi);
        let rows = crate::combinatorics::word_content(&t.rows(), 2);
        let cols = crate::combinatorics::word_content(&t.cols(), 2);
        for l in compositions(2, 2) {
            let e = xi_lambda(&alg, &l).unwrap();
            let left = e.mul(&x).unwrap();
            let right = x.mul(&e).unwrap();
            assert_eq!(left == x, l == rows);
            assert_eq!(left.is_zero(), l != rows);
            assert_eq!(right == x, l == cols);
            assert_eq!(right.is_zero(), l != cols);
        }
    }
}

#[test]
fn window_idempotent_truncates() {
    let big = zz(1, 3);
    let w = xi_window(&big, 2, 2).unwrap();
    assert_eq!(w.mul(&w).unwrap(), w);
    let mut sum = big.zero(2, Basis::Xi);
    for l in compositions(3, 2).into_iter().filter(|l| l[2] == 0) {
        sum = sum.add(&xi_lambda(&big, &l).unwrap()).unwrap();
    }
    assert_eq!(sum, w);
    // the truncated basis is exactly the triples with indices ≤ 2
    let small = zz(1, 2);
    let inside: Vec<_> = big.basis(2).into_iter().filter(|t| t.rows().iter().chain(&t.cols()).all(|&r| r <= 2)).collect();
    assert_eq!(inside, small.basis(2));
    for t in &inside {
        let x = big.basis_element(t, Basis::Xi);
        assert_eq!(w.mul(&x).unwrap().mul(&w).unwrap(), x);
    }
}

fn zigzag_idems(alg: &SchurAlgebra) -> Vec<AlgebraElement> {
    let p = alg.presentation();
    (0..=1).map(|i| p.element(&[(&format!("e{i}"), 1)]).unwrap()).collect()
}

#[test]
fn permutation_elements_compose_and_conjugate() {
    let alg = zz(1, 2);
    let idems = zigzag_idems(&alg);
    check_orthogonal_idempotents(&alg, &idems).unwrap();
    let perms = all_permutations(2);
    let families: Vec<Vec<Vec<usize>>> = perms.iter().flat_map(|a| perms.iter().map(move |b| vec![a.clone(), b.clone()])).collect();
    let d = 2;
    for s in &families {
        let xs = xi_permutation(&alg, &idems, s, d).unwrap();
        for t in &families {
            let xt = xi_permutation(&alg, &idems, t, d).unwrap();
            let st: Vec<Vec<usize>> = s.iter().zip(t).map(|(a, b)| crate::combinatorics::compose(a, b)).collect();
            assert_eq!(xs.mul(&xt).unwrap(), xi_permutation(&alg, &idems, &st, d).unwrap());
        }
        let inv: Vec<Vec<usize>> = s.iter().map(|a| crate::combinatorics::inverse(a)).collect();
        let xinv = xi_permutation(&alg, &idems, &inv, d).unwrap();
        for lam in multicompositions(2, 2, d) {
            let e = e_multicomposition(&alg, &idems, &lam).unwrap();
            let conj = xs.mul(&e).unwrap().mul(&xinv).unwrap();
            assert_eq!(conj, e_multicomposition(&alg, &idems, &permute_multicomposition(s, &lam)).unwrap());
        }
    }
}

#[test]
fn multicomposition_idempotents_are_orthogonal() {
    let alg = zz(1, 2);
    let idems = zigzag_idems(&alg);
    let lams = multicompositions(2, 2, 2);
    let all: Vec<_> = lams.iter().map(|l| e_multicomposition(&alg, &idems, l).unwrap()).collect();
    for (i, a) in all.iter().enumerate() {
        for (j, b) in all.iter().enumerate() {
            let p = a.mul(b).unwrap();
            if i == j {
                assert_eq!(&p, a);
            } else {
                assert!(p.is_zero());
            }
        }
    }
    let mut sum = alg.zero(2, Basis::Xi);
    for a in &all {
        sum = sum.add(a).unwrap();
    }
    assert_eq!(sum, identity(&alg, 2).unwrap());
    assert_eq!(multicomposition_degree(&lams[0]), 2);
    assert_eq!(add_multicompositions(&lams[0], &lams[1]), vec![vec![3, 1], vec![0, 0]]);
}

#[test]
fn eta_products_are_integral() {
    let alg = zz(1, 2);
    let (basis, table) = structure_table(&alg, 2, Basis::Eta).unwrap();
    assert_eq!(basis.len(), 202);
    assert!(!table.is_empty());
}

#[test]
fn diagonal_counterexample_coefficients() {
    let alg = SchurAlgebra::new(make_matrix_diagonal_pair(2).unwrap(), 2);
    let x = alg.parse_triple("E12,E12|1,1|1,1", Basis::Eta).unwrap();
    let e11 = |s: &str| alg.parse_triple(&format!("E11,E11|1,1|{s}"), Basis::Eta).unwrap();
    for (s, k) in [("1,1", 4), ("2,2", 4), ("1,2", 2)] {
        let y = alg.parse_triple(&format!("E21,E21|1,1|{s}"), Basis::Eta).unwrap();
        let prod = x.mul(&y).unwrap();
        assert_eq!(prod, e11(s).scale(&Scalar::from(k)), "columns {s}");
        assert_eq!(prod, multiply_oracle(&x, &y).unwrap());
    }
}

#[test]
fn tau_is_an_involution() {
    let alg = zz(1, 2);
    for t in alg.basis(2) {
        let x = alg.basis_element(&t, Basis::Eta);
        assert_eq!(apply_tau(&apply_tau(&x).unwrap()).unwrap(), x);
        assert_eq!(apply_tau_signed(&apply_tau_signed(&x).unwrap()).unwrap(), x);
    }
    let p = alg.presentation();
    let x = alg.parse_triple("a0_1|1|2", Basis::Xi).unwrap();
    let swapped = apply_tau(&x).unwrap();
    assert_eq!(swapped, alg.parse_triple("a1_0|2|1", Basis::Xi).unwrap());
    let lam = xi_lambda(&alg, &[1, 1]).unwrap();
    assert_eq!(apply_tau(&lam).unwrap(), lam);
    assert_eq!(p.name(), "ext-zigzag:1");
}

#[test]
fn signed_tau_is_anti_multiplicative() {
    let algs = [zz(1, 2), SchurAlgebra::new(make_matrix_superalgebra(1, 1).unwrap(), 2)];
    for alg in &algs {
        let basis = alg.basis(2);
        for x in &basis {
            for y in basis.iter().step_by(3) {
                let ex = alg.basis_element(x, Basis::Xi);
                let ey = alg.basis_element(y, Basis::Xi);
                let lhs = apply_tau_signed(&ex.mul(&ey).unwrap()).unwrap();
                let rhs = apply_tau_signed(&ey).unwrap().mul(&apply_tau_signed(&ex).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "{} {}", ex.to_text(), ey.to_text());
            }
        }
    }
}

#[test]
fn letterwise_tau_is_not_anti_multiplicative_up_to_parity_sign() {
    let alg = zz(1, 2);
    let x = alg.parse_triple("e0,a0_1|1,1|1,1", Basis::Xi).unwrap();
    let y = alg.parse_triple("a0_1,a1_0|1,1|1,2", Basis::Xi).unwrap();
    let lhs = apply_tau(&x.mul(&y).unwrap()).unwrap();
    let rhs = apply_tau(&y).unwrap().mul(&apply_tau(&x).unwrap()).unwrap();
    assert!(!lhs.is_zero());
    assert_eq!(lhs, rhs.neg());
    // x odd, y even: a parity sign would be +1
    assert_eq!(x.parity(), Some(Parity::Odd));
    assert_eq!(y.parity(), Some(Parity::Even));
}

#[test]
fn parse_and_print_round_trip() {
    let alg = zz(1, 2);
    let e = alg.parse_element("2*(e0,c0|1,1|1,2) - (a0_1,a1_0|1,2|2,1)", Basis::Xi).unwrap();
    assert_eq!(alg.parse_element(&e.to_text(), Basis::Xi).unwrap(), e);
    assert!(alg.parse_element("(e0|3|1)", Basis::Xi).is_err());
    assert!(alg.parse_element("", Basis::Xi).is_err());
    let odd_twice = alg.parse_triple("a0_1,a0_1|1,1|2,2", Basis::Xi).unwrap();
    assert!(odd_twice.is_zero());
}

#[test]
fn eta_conversion() {
    let alg = zz(1, 2);
    let t = alg.parse_triple("c0,c0|1,1|2,2", Basis::Eta).unwrap();
    let xi = t.to_xi();
    assert_eq!(xi.terms().next().unwrap().1, &Scalar::from(2));
    assert_eq!(xi.to_eta().unwrap(), t);
    let half = alg.parse_triple("c0,c0|1,1|2,2", Basis::Xi).unwrap();
    assert!(half.to_eta().is_err());
    assert!(!half.is_eta_integral());
}

#[test]
fn truncation_keeps_zigzag_letters() {
    let alg = zz(1, 1);
    let p = alg.presentation();
    let e = p.element(&[("e0", 1)]).unwrap();
    let keep = surviving_labels(p, &e).unwrap();
    let kept: Vec<&str> = (0..p.dim()).filter(|&i| keep[i]).map(|i| p.label(i)).collect();
    assert_eq!(kept, vec!["e0", "c0"]);
    assert_eq!(make_zigzag(1).unwrap().dim(), 2);
    assert_eq!(truncation_basis(&alg, 2, &e).unwrap().len(), 3);
}

