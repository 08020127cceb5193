use num_complex::Complex64;
use proptest::prelude::*;
use verlinde::abelian::{exponent, orthogonality_matrix, product_of_cyclic};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn characters_are_orthogonal_homomorphisms(orders in prop::collection::vec(1usize..=6, 1..=3)) {
        let g = product_of_cyclic(&orders);
        let n: usize = orders.iter().product();
        prop_assert_eq!(g.order(), n);
        prop_assert_eq!(g.invariants().iter().product::<usize>(), n);
        let chars = g.characters();
        prop_assert_eq!(chars.len(), n);
        prop_assert!(chars[0].is_trivial());
        let gram = orthogonality_matrix(&chars);
        for i in 0..n {
            for j in 0..n {
                let expected = if i == j { Complex64::new(n as f64, 0.0) } else { Complex64::new(0.0, 0.0) };
                prop_assert!((gram[i][j] - expected).norm() < 1e-9);
            }
        }
        for psi in &chars {
            for a in 0..n {
                for b in 0..n {
                    let lhs = psi.value(g.multiply(a, b));
                    prop_assert!((lhs - psi.value(a) * psi.value(b)).norm() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn invariants_divide_in_chain(orders in prop::collection::vec(1usize..=8, 1..=3)) {
        let g = product_of_cyclic(&orders);
        let inv = g.invariants();
        for w in inv.windows(2) {
            prop_assert!(w[0] % w[1] == 0 || w[1] % w[0] == 0);
        }
        let e = exponent(&g);
        prop_assert!((0..g.order()).all(|a| e.is_multiple_of(g.element_order(a))));
    }
}
