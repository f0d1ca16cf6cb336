use gschur::combinatorics::{act, canonicalize, Letter};
use gschur::exactlin::{determinant, smith_normal_form, smith_normal_form_with_transforms};
use gschur::schur::{multiply_oracle, Basis, SchurAlgebra};
use gschur::superalgebra::make_extended_zigzag;
use gschur::{IntMatrix, Scalar};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn word_strategy(dim: usize, n: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec((0..dim, 1..=n, 1..=n), 1..=5).prop_map(|v| v.into_iter().map(|(b, r, s)| Letter::new(b, r, s)).collect())
}

fn mul_dense(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter().map(|row| (0..cols).map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum()).collect()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_form_is_orbit_invariant(w in word_strategy(5, 2), seed in any::<u64>()) {
        let p = make_extended_zigzag(1).unwrap();
        let mut sigma: Vec<usize> = (0..w.len()).collect();
        let mut x = seed;
        for i in (1..sigma.len()).rev() {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            sigma.swap(i, (x >> 33) as usize % (i + 1));
        }
        let moved = act(&w, &sigma);
        match (canonicalize(&w, &p), canonicalize(&moved, &p)) {
            (Some((a, _)), Some((b, _))) => {
                prop_assert_eq!(&a, &b);
                let (again, sign) = canonicalize(a.letters(), &p).unwrap();
                prop_assert_eq!(again, a);
                prop_assert_eq!(sign, 1);
            }
            (None, None) => {}
            _ => prop_assert!(false, "admissibility differs across an orbit"),
        }
    }

    #[test]
    fn smith_form_matches_transforms_and_determinant(rows in prop::collection::vec(prop::collection::vec(-6i64..=6, 4), 4)) {
        let m = IntMatrix::from_i64(&rows);
        let snf = smith_normal_form(&m);
        let t = smith_normal_form_with_transforms(&m);
        prop_assert_eq!(&snf, &t.form);
        prop_assert!(snf.divisors.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
        let prod = mul_dense(&mul_dense(&t.u, &m.to_dense()), &t.v);
        prop_assert_eq!(prod, t.diagonal.clone());
        let det = determinant(&m);
        if snf.rank == 4 {
            prop_assert_eq!(det.abs(), snf.torsion_order());
        } else {
            prop_assert!(det.is_zero());
        }
    }

    #[test]
    fn eta_product_is_associative_and_matches_oracle(i in 0usize..74, j in 0usize..74, k in 0usize..74) {
        let alg = SchurAlgebra::new(make_extended_zigzag(1).unwrap(), 2);
        let basis = alg.basis(2);
        let pick = |i: usize| alg.basis_element(&basis[i % basis.len()], Basis::Eta);
        let (x, y, z) = (pick(i), pick(j), pick(k));
        let left = x.mul(&y).unwrap().mul(&z).unwrap().to_eta().unwrap();
        let right = x.mul(&y.mul(&z).unwrap()).unwrap().to_eta().unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(x.mul(&y).unwrap().to_eta().unwrap(), multiply_oracle(&x, &y).unwrap().to_eta().unwrap());
    }
}
