use proptest::prelude::*;
use xedp_core::ratpoly::*;

#[test]
fn hermite_three_term_recurrence() {
    let x = Polynomial::x();
    for n in 1..15usize {
        let lhs = hermite(n + 1);
        let rhs = &(&x * &hermite(n)).scale(&int(2)) - &hermite(n - 1).scale(&int(2 * n as i64));
        assert_eq!(lhs, rhs, "n={n}");
    }
}

#[test]
fn hermite_derivative_identity() {
    for n in 1..=10usize {
        assert_eq!(derivative(&hermite(n)), hermite(n - 1).scale(&int(2 * n as i64)));
    }
}

#[test]
fn laguerre_derivative_identity() {
    for alpha in [int(0), int(5), rat(-1, 2), rat(7, 3)] {
        for n in 1..=10usize {
            let want = -&laguerre(n - 1, &(&alpha + int(1)));
            assert_eq!(derivative(&laguerre(n, &alpha)), want, "n={n} α={alpha}");
        }
    }
}

#[test]
fn jacobi_derivative_identity() {
    // d/dx P_n^{(a,b)} = (n+a+b+1)/2 · P_{n-1}^{(a+1,b+1)}
    for (a, b) in [(int(1), int(1)), (rat(-3, 2), int(0)), (int(-2), int(0)), (rat(1, 3), int(2))] {
        for n in 1..=8usize {
            let k = (int(n as i64) + &a + &b + int(1)) / int(2);
            let want = jacobi(n - 1, &(&a + int(1)), &(&b + int(1))).scale(&k);
            assert_eq!(derivative(&jacobi(n, &a, &b)), want, "n={n}");
        }
    }
}

#[test]
fn jacobi_recurrence_matches_explicit_sum() {
    for (a, b) in [(int(-2), int(0)), (int(-1), int(-1)), (rat(5, 2), rat(-1, 2)), (int(3), int(1))] {
        for n in 0..=7usize {
            assert_eq!(jacobi(n, &a, &b), jacobi_explicit(n, &a, &b), "n={n} a={a} b={b}");
        }
    }
}

#[test]
fn wronskian_degree_formula() {
    // all λ ⊆ {0..5} with 1 ≤ |λ| ≤ 3
    for mask in 1u32..64 {
        let ls: Vec<usize> = (0..6).filter(|k| mask & (1 << k) != 0).collect();
        if ls.len() > 3 {
            continue;
        }
        let m = ls.len();
        let hs: Vec<Polynomial> = ls.iter().map(|&l| hermite(l)).collect();
        let want = ls.iter().sum::<usize>() - m * (m - 1) / 2;
        assert_eq!(wronskian(&hs).degree(), Some(want), "λ={ls:?}");
    }
}

fn small_poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(-20i64..20, 0..6).prop_map(|c| Polynomial::from_ints(&c))
}

proptest! {
    #[test]
    fn wronskian_column_swap_flips_sign(ps in prop::collection::vec(small_poly(), 2..4), i in 0usize..3, j in 0usize..3) {
        let k = ps.len();
        let (i, j) = (i % k, j % k);
        prop_assume!(i != j);
        let mut swapped = ps.clone();
        swapped.swap(i, j);
        prop_assert_eq!(wronskian(&swapped), -&wronskian(&ps));
    }

    #[test]
    fn wronskian_is_linear_in_each_column(ps in prop::collection::vec(small_poly(), 2..4), q in small_poly(), c in -5i64..5) {
        let mut mixed = ps.clone();
        mixed[0] = &ps[0].scale(&int(c)) + &q;
        let mut other = ps.clone();
        other[0] = q;
        let want = &wronskian(&ps).scale(&int(c)) + &wronskian(&other);
        prop_assert_eq!(wronskian(&mixed), want);
    }

    #[test]
    fn exact_and_float_evaluation_agree(p in small_poly(), num in -40i64..40) {
        let x = rat(num, 8);
        let exact = rat_to_f64(&p.eval(&x));
        let approx = p.eval_f64(num as f64 / 8.0);
        prop_assert!((exact - approx).abs() <= 1e-12 * (1.0 + exact.abs()));
    }

    #[test]
    fn negate_argument_is_an_involution(p in small_poly()) {
        prop_assert_eq!(negate_argument(&negate_argument(&p)), p);
    }
}
