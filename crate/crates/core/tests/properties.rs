//! Randomized algebraic invariants, exercised with proptest over exact rationals.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use proptest::prelude::*;

use sqw_core::interp::{Grid, GridTag};
use sqw_core::mpoly::{SymBasis, SymPoly};
use sqw_core::partitions::{enumerate_partitions, interlaces, Partition};
use sqw_core::qkit::{gaussian_binomial_coeffs, q_pochhammer, q_pochhammer_inf};
use sqw_core::sample::Sampler;
use sqw_core::scalar::Scalar;
use sqw_core::series::TruncSeries;
use sqw_core::sqw::{f_skew, f_symbolic};
use sqw_core::Rat;

fn rational() -> impl Strategy<Value = Rat> {
    (-50i64..=50, 1i64..=50).prop_map(|(n, d)| Rat::new(n.into(), d.into()))
}

fn nonzero_rational() -> impl Strategy<Value = Rat> {
    rational().prop_filter("nonzero", |r| !Zero::is_zero(r))
}

fn partition(max_len: usize, max_part: usize) -> impl Strategy<Value = Partition> {
    proptest::collection::vec(0..=max_part, 0..=max_len)
        .prop_map(|mut parts| {
            parts.sort_unstable_by(|a, b| b.cmp(a));
            parts.retain(|&p| p > 0);
            Partition::new(parts).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // Field axioms hold exactly for rationals.
    #[test]
    fn rational_field_axioms(a in rational(), b in rational(), c in nonzero_rational()) {
        prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
        prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        prop_assert_eq!(&c * &c.recip(), Rat::from_integer(1.into()));
    }

    // a · inv(a) ≡ 1 mod t^{D+1} whenever the constant term is a unit.
    #[test]
    fn series_inverse_roundtrip(
        c0 in nonzero_rational(),
        tail in proptest::collection::vec(rational(), 0..=32),
    ) {
        let mut coeffs = vec![c0];
        coeffs.extend(tail);
        let a = TruncSeries::from_coeffs(coeffs);
        let inv = a.inv().unwrap();
        let one = TruncSeries::constant(Rat::from_integer(1.into()), a.order());
        prop_assert_eq!(a * inv, one);
    }

    // expand_basis followed by assemble is the identity, in both bases.
    #[test]
    fn sympoly_expansion_roundtrip(
        coeffs in proptest::collection::btree_map(partition(3, 4), rational(), 0..5),
    ) {
        let coeffs: BTreeMap<Partition, Rat> =
            coeffs.into_iter().filter(|(_, c)| !Zero::is_zero(c)).collect();
        let p = SymPoly::from_m_coeffs(3, coeffs).unwrap();
        for basis in [SymBasis::MonomialSymmetric, SymBasis::Elementary] {
            let expansion = p.expand_basis(basis).unwrap();
            let back = SymPoly::assemble(3, basis, &expansion).unwrap();
            prop_assert_eq!(&back, &p);
        }
    }

    // (x;q)_{n+m} = (x;q)_n · (x q^n;q)_m for signed indices, where both sides exist.
    #[test]
    fn pochhammer_addition_law(
        x in nonzero_rational(),
        q in nonzero_rational(),
        n in -4i64..=4,
        m in -4i64..=4,
    ) {
        let whole = q_pochhammer(&x, &q, n + m);
        let first = q_pochhammer(&x, &q, n);
        let shifted = &x * Scalar::powi(&q, n).unwrap();
        let second = q_pochhammer(&shifted, &q, m);
        if let (Ok(w), Ok(f), Ok(s)) = (whole, first, second) {
            prop_assert_eq!(w, f * s);
        }
    }

    // The infinite product agrees with any long enough finite product mod t^{D+1}.
    #[test]
    fn pochhammer_inf_matches_long_finite_product(
        x_hat in nonzero_rational(),
        q_hat in nonzero_rational(),
        d in 1usize..=10,
        extra in 1i64..=4,
    ) {
        // Both x and q carry the grading substitution (x → t·x̂, q → t·q̂), so every
        // factor (1 − x q^k) with k > D is ≡ 1 mod t^{D+1} and the product stabilizes.
        let x = TruncSeries::graded(x_hat, d);
        let q = TruncSeries::graded(q_hat, d);
        let inf = q_pochhammer_inf(&x, &q).unwrap();
        let fin = q_pochhammer(&x, &q, d as i64 + extra).unwrap();
        prop_assert_eq!(inf, fin);
    }

    // Conjugation is an involution and reverses containment of rectangles.
    #[test]
    fn conjugation_involution(la in partition(5, 6)) {
        prop_assert_eq!(la.conjugate().conjugate(), la);
    }

    // Interlacing implies containment and a length gap of at most one.
    #[test]
    fn interlacing_implies_containment(la in partition(5, 6), mu in partition(5, 6)) {
        if interlaces(&la, &mu) {
            prop_assert!(mu.contained_in(&la));
            prop_assert!(la.len() >= mu.len() && la.len() - mu.len() <= 1);
        }
    }

    // Grid tables survive a JSON round trip exactly.
    #[test]
    fn grid_json_roundtrip(
        rows in proptest::collection::vec(
            proptest::collection::vec(rational(), 4),
            1..=3,
        ),
    ) {
        let g = Grid::new(rows, GridTag::Raw).unwrap();
        let back = Grid::from_json(&g.to_json()).unwrap();
        prop_assert_eq!(back, g);
    }

    // The symbolic polynomial and the direct evaluator agree at random points.
    #[test]
    fn symbolic_matches_evaluated(seed in 0u64..1_000_000, la in partition(2, 3)) {
        let mut s = Sampler::new(seed);
        let (q, a, b) = s.parameter_pair(la.len() + 5, 4);
        let point = s.distinct_rationals(2);
        let empty = Partition::empty();
        let symbolic = f_symbolic(&la, &empty, 2, &a, &b, &q).unwrap();
        let direct = f_skew(&la, &empty, &point, &a, &b, &q).unwrap();
        prop_assert_eq!(symbolic.eval(&point), direct);
    }
}

// Gaussian binomial coefficients are nonnegative integers (positivity of the
// q-multinomial ratio as a polynomial in q).
#[test]
fn gaussian_binomials_have_nonnegative_integer_coefficients() {
    for j in 0..=6usize {
        for l in 0..=j {
            let coeffs = gaussian_binomial_coeffs(j, l);
            assert!(!coeffs.is_empty());
            for c in &coeffs {
                assert!(!c.is_negative(), "negative coefficient in [{j} choose {l}]_q");
            }
        }
    }
}

// Partition enumeration matches the standard counting recurrence.
#[test]
fn enumeration_count_matches_recurrence() {
    // p(n parts <= k, weight w) via dynamic programming over allowed part sizes.
    fn count(max_len: usize, max_weight: usize) -> usize {
        let mut table = vec![vec![0usize; max_weight + 1]; max_len + 1];
        for row in table.iter_mut() {
            row[0] = 1;
        }
        for len in 1..=max_len {
            for w in 1..=max_weight {
                // Either no part of this index, or reduce every part by one.
                table[len][w] = table[len - 1][w]
                    + if w >= len { table[len][w - len] } else { 0 };
            }
        }
        (0..=max_weight).map(|w| table[max_len][w]).sum()
    }
    for max_len in 0..=4 {
        for max_weight in 0..=8 {
            assert_eq!(
                enumerate_partitions(max_len, max_weight).len(),
                count(max_len, max_weight),
                "count mismatch at ({max_len}, {max_weight})"
            );
        }
    }
}
