use num_bigint::BigInt;
use proptest::prelude::*;

use qlam_core::ring_core::{q_binomial, q_int, Exp, Monomial, QuotientSpec, SparsePoly};

fn term() -> impl Strategy<Value = (i64, i64, i64, i64, i64)> {
    (-6i64..=6, 0i64..=4, 1i64..=2, 0i64..=3, 0i64..=2)
}

/// Polynomials in `q^{1/2}`, `x1`, `x2` with small coefficients.
fn poly() -> impl Strategy<Value = SparsePoly> {
    prop::collection::vec(term(), 0..6).prop_map(|terms| {
        SparsePoly::from_terms(terms.into_iter().map(|(c, qn, qd, a, b)| {
            let m = Monomial::from_exps(vec![Exp::new(qn, qd), Exp::from_integer(a), Exp::from_integer(b)]);
            (m, BigInt::from(c))
        }))
    })
}

fn q_poly() -> impl Strategy<Value = SparsePoly> {
    prop::collection::vec((-6i64..=6, 0i64..=6), 0..5).prop_map(|terms| {
        SparsePoly::from_terms(terms.into_iter().map(|(c, e)| (Monomial::from_exps(vec![Exp::new(e, 2)]), BigInt::from(c))))
    })
}

fn specs() -> Vec<QuotientSpec> {
    ["2^3", "(q - 1)^3", "2^4, (q^(1/2) - 1)^5", "3^2, [3]_q", "[4]_q", "5, q^2 + q + 1", "[2]_q^(1/2)"]
        .iter()
        .map(|s| QuotientSpec::parse(s).unwrap())
        .collect()
}

proptest! {
    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        prop_assert_eq!(&a * &SparsePoly::one(), a);
    }

    #[test]
    fn literal_round_trip(a in poly()) {
        prop_assert_eq!(a.to_string().parse::<SparsePoly>().unwrap(), a);
    }

    #[test]
    fn reduction_is_a_ring_homomorphism(f in poly(), g in poly()) {
        for spec in specs() {
            let lhs = spec.reduce(&(&f * &g));
            let rhs = spec.reduce(&(&spec.reduce(&f) * &spec.reduce(&g)));
            prop_assert_eq!(&lhs, &rhs, "spec {}", spec);
            prop_assert_eq!(spec.reduce(&(&f + &g)), spec.reduce(&(&spec.reduce(&f) + &spec.reduce(&g))));
            prop_assert_eq!(spec.reduce(&lhs), lhs);
        }
    }

    #[test]
    fn truncated_inverse_multiplies_back(g in q_poly(), unit in prop::sample::select(vec![1i64, 3, -1, 5])) {
        // an element of the form unit + (q^{1/2} - 1)·g is invertible modulo (2^4, (q^{1/2} - 1)^6)
        let spec = QuotientSpec::parse("2^4, (q^(1/2) - 1)^6").unwrap();
        let t = &SparsePoly::q_pow(Exp::new(1, 2)) - &SparsePoly::one();
        let f = &SparsePoly::constant(unit) + &(&t * &g);
        let inv = spec.truncated_inverse(&f).unwrap();
        prop_assert!(spec.eq_mod(&(&f * &inv), &SparsePoly::one()));
    }
}

#[test]
fn q_integer_multiplicativity() {
    for m in 1..=12i64 {
        for n in 1..=12i64 {
            let lhs = q_int(m * n, 1).unwrap();
            let rhs = &q_int(m, 1).unwrap() * &q_int(n, 1).unwrap().scale_exponents(Exp::from_integer(m));
            assert_eq!(lhs, rhs, "[{m}*{n}]_q");
        }
    }
}

#[test]
fn q_pascal() {
    let q = SparsePoly::q();
    for n in 1..=12i64 {
        for k in 1..n {
            let rhs = &q_binomial(n - 1, k - 1).unwrap() + &(&q.pow(k as u32) * &q_binomial(n - 1, k).unwrap());
            assert_eq!(q_binomial(n, k).unwrap(), rhs, "binom({n}, {k})");
        }
    }
}

#[test]
fn gaussian_binomial_against_counting_oracle() {
    // binom(n, k)_q counts k-subsets of {0..n-1} by the statistic Σ s_i - k(k-1)/2
    for n in 0..=9u32 {
        for k in 0..=n {
            let mut coeffs = vec![0i64; (k * (n - k) + 1) as usize];
            for mask in 0u32..(1 << n) {
                if mask.count_ones() == k {
                    let s: u32 = (0..n).filter(|i| mask >> i & 1 == 1).sum();
                    coeffs[(s - k * k.saturating_sub(1) / 2) as usize] += 1;
                }
            }
            let oracle = SparsePoly::from_terms(
                coeffs.iter().enumerate().map(|(e, &c)| (Monomial::from_ints(&[e as i64]), BigInt::from(c))),
            );
            assert_eq!(q_binomial(n as i64, k as i64).unwrap(), oracle, "binom({n}, {k})");
        }
    }
}
