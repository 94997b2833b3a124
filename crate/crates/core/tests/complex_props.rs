mod common;

use num_bigint::BigInt;
use num_rational::Ratio;
use proptest::prelude::*;

use qlam_core::cartier::{frobenius_chain_map, frobenius_form};
use qlam_core::linalg::{invariant_factors, Euclidean, FpPoly, Matrix, RatPoly};
use qlam_core::qdrham::{
    build_complex, cohomology, decalage, differential_factors, tensor, weight_piece, weights, CochainComplex, Coeff,
    ComplexKind, Form,
};
use qlam_core::qdrw::{
    adams_after_verschiebung, build_lattice, frac_nabla, lattice_generator, specialize_q1, telescoping_holds,
};
use qlam_core::ring_core::{q_int, Exp, Monomial, SparsePoly};

fn exps(v: &[i64]) -> Vec<Exp> {
    v.iter().map(|&x| Exp::from_integer(x)).collect()
}

#[test]
fn differentials_square_to_zero() {
    for kind in [ComplexKind::QOmega, ComplexKind::Twisted] {
        for d in 1..=3 {
            let c = build_complex(kind, d, 5).unwrap();
            for k in 0..d as i64 - 1 {
                assert!(c.diff(k + 1).mul(&c.diff(k)).unwrap().is_zero(), "{kind:?} d = {d} degree {k}");
            }
        }
    }
}

fn non_units<R: Euclidean>(ring: &R, v: &[R::Elem]) -> Vec<R::Elem> {
    v.iter().filter(|e| !ring.is_unit(e)).cloned().collect()
}

/// Compares the cohomology of the bounded complex with the direct sum of the
/// cohomologies of its weight pieces, as modules over `ring`.
fn check_weight_decomposition<R: Euclidean>(ring: &R, d: usize, bound: u32) {
    let bounded = build_complex(ComplexKind::QOmega, d, bound).unwrap();
    let whole = differential_factors(ring, &bounded).unwrap();
    let mut ranks = vec![0usize; d];
    let mut torsion: Vec<Vec<R::Elem>> = vec![Vec::new(); d];
    for w in weights(d, bound) {
        let piece = weight_piece(ComplexKind::QOmega, &w).unwrap().widen(0, d as i64).unwrap();
        for (k, f) in differential_factors(ring, &piece).unwrap().into_iter().enumerate() {
            ranks[k] += f.len();
            torsion[k].extend(non_units(ring, &f));
        }
    }
    for k in 0..d {
        assert_eq!(whole[k].len(), ranks[k], "{} d = {d}: rank of D_{k}", ring.name());
        let n = torsion[k].len();
        let mut diag: Matrix<R::Elem> = vec![vec![ring.zero(); n]; n];
        for (i, t) in torsion[k].iter().enumerate() {
            diag[i][i] = t.clone();
        }
        let summed = non_units(ring, &invariant_factors(ring, &diag));
        assert_eq!(non_units(ring, &whole[k]), summed, "{} d = {d}: torsion after D_{k}", ring.name());
    }
}

#[test]
fn weight_decomposition_of_cohomology() {
    for d in 1..=2 {
        let bound = if d == 1 { 8 } else { 6 };
        check_weight_decomposition(&RatPoly, d, bound);
        for p in [2, 3, 5] {
            check_weight_decomposition(&FpPoly::new(p), d, bound);
        }
    }
}

#[test]
fn decalage_rescales_back() {
    let qm1: SparsePoly = "q - 1".parse().unwrap();
    for d in 1..=3 {
        let t = build_complex(ComplexKind::Twisted, d, 4).unwrap();
        let (c, _) = decalage(&t, &qm1).unwrap();
        for (a, b) in c.diffs().iter().zip(t.diffs()) {
            assert_eq!(&a.scale(&qm1), b);
        }
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

#[test]
fn kunneth_for_one_variable_pieces() {
    for m in 0..=6i64 {
        for n in 0..=6i64 {
            let a = weight_piece(ComplexKind::QOmega, &exps(&[m])).unwrap();
            let b = weight_piece(ComplexKind::QOmega, &exps(&[n])).unwrap();
            let h = cohomology(&tensor(&a, &b).unwrap().widen(0, 2).unwrap(), Coeff::Qq).unwrap();
            let ha = cohomology(&a.widen(0, 1).unwrap(), Coeff::Qq).unwrap();
            let hb = cohomology(&b.widen(0, 1).unwrap(), Coeff::Qq).unwrap();
            // free ranks multiply
            let free = |i: usize, j: usize| ha[i].free_rank * hb[j].free_rank;
            assert_eq!(h[0].free_rank, free(0, 0));
            assert_eq!(h[1].free_rank, free(0, 1) + free(1, 0));
            assert_eq!(h[2].free_rank, free(1, 1));
            // ℚ[q]/[m] ⊗ ℚ[q]/[n] = Tor(ℚ[q]/[m], ℚ[q]/[n]) = ℚ[q]/[gcd(m, n)]
            if m > 0 && n > 0 {
                let g = gcd(m, n);
                let want: Vec<String> = if g > 1 { vec![q_int(g, 1).unwrap().to_string()] } else { vec![] };
                assert_eq!(h[2].torsion, want, "({m}, {n})");
                assert_eq!(h[1].torsion, want, "({m}, {n})");
            }
        }
    }
}

#[test]
fn frobenius_chain_law() {
    for p in [2, 3] {
        for d in 1..=2 {
            let t = build_complex(ComplexKind::Twisted, d, 8).unwrap();
            assert!(frobenius_chain_map(p, &t).is_ok(), "p = {p}, d = {d}");
        }
    }
}

fn form() -> impl Strategy<Value = Form> {
    let coeff = prop::collection::vec((-3i64..=3, 0i64..=2, 0i64..=2, 0i64..=2), 0..4).prop_map(|t| {
        SparsePoly::from_terms(t.into_iter().map(|(c, a, b, e)| (Monomial::from_ints(&[a, b, e]), BigInt::from(c))))
    });
    (prop::sample::select(vec![vec![], vec![1], vec![2], vec![1, 2]]), coeff).prop_map(|(w, c)| Form::term(w, c))
}

proptest! {
    #[test]
    fn frobenius_is_semilinear(omega in form(), p in prop::sample::select(vec![2u64, 3])) {
        let q = SparsePoly::q();
        let lhs = frobenius_form(p, &omega.scale(&q)).unwrap();
        let rhs = frobenius_form(p, &omega).unwrap().scale(&q.pow(p as u32));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn adams_after_verschiebung_is_multiplication_by_p(
        terms in prop::collection::vec((-3i64..=3, 0i64..=4, 0i64..=4), 0..4),
        p in prop::sample::select(vec![2u64, 3]),
    ) {
        let a = SparsePoly::from_terms(terms.into_iter().map(|(c, e, f)| {
            (Monomial::from_exps(vec![Exp::new(e, p as i64), Exp::new(f, p as i64)]), BigInt::from(c))
        }));
        let got = adams_after_verschiebung(p, 2, &a).unwrap();
        prop_assert_eq!(got, &q_int(p as i64, 1).unwrap() * &a);
    }
}

#[test]
fn lattice_generators_have_integral_derivative() {
    for p in [2u64, 3] {
        for depth in 0..=2 {
            let l = build_lattice(p, depth, 6).unwrap();
            assert!(l.all_maximal());
            for (alpha, _, _) in &l.weights {
                let g = lattice_generator(p, depth, *alpha).unwrap();
                for t in frac_nabla(&g).unwrap() {
                    assert!(t.integral().is_some(), "p = {p}, N = {depth}, weight {alpha}");
                }
            }
        }
    }
}

#[test]
fn telescoping_products() {
    for p in [2, 3] {
        for n in 0..=4 {
            assert!(telescoping_holds(p, n).unwrap());
        }
    }
}

#[test]
fn specialization_matches_de_rham_witt() {
    for p in [2u64, 3] {
        for depth in 0..=2 {
            for w in specialize_q1(&build_lattice(p, depth, 6).unwrap()).unwrap() {
                let alpha: Ratio<i64> = w.weight.parse().unwrap();
                let order: i64 = w.h1_order.as_deref().unwrap().parse().unwrap();
                let mut p_part = 1;
                let mut rest = order;
                while rest % p as i64 == 0 {
                    rest /= p as i64;
                    p_part *= p as i64;
                }
                assert_eq!(p_part, common::de_rham_witt_h1_order(p, alpha), "p = {p}, N = {depth}, {alpha}");
            }
        }
    }
}

#[test]
fn cochain_complex_rejects_nonzero_square() {
    let bad = CochainComplex::from_literals(0, &[&[&["1"]], &[&["1"]]]);
    assert!(bad.is_err());
}
