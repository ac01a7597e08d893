//! q-Pochhammer symbols and q-multinomial ratios, with signed-index conventions.
//!
//! The finite symbol is extended to negative indices by
//! (x;q)_{-n} = ∏_{i=1}^{n} (1 − x q^{-i})^{-1}, which makes 1/(q;q)_n vanish for n < 0;
//! that convention is what lets the vertex weights encode their support conditions through
//! plain products of Pochhammer ratios.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::TruncSeries;

/// (x;q)_n for signed n.
///
/// n ≥ 0 → ∏_{i=1}^{n}(1 − x q^{i−1});  n < 0 → ∏_{i=1}^{−n}(1 − x q^{−i})^{−1}.
pub fn q_pochhammer<S: Scalar>(x: &S, q: &S, n: i64) -> Result<S> {
    let one = x.one_like();
    if n >= 0 {
        let mut acc = one.clone();
        let mut qp = one;
        for _ in 0..n {
            acc = acc * (x.one_like() - x.clone() * qp.clone());
            qp = qp * q.clone();
        }
        Ok(acc)
    } else {
        let qinv = q.inv().map_err(|_| Error::DivisionByZero)?;
        let mut acc = one;
        let mut qp = qinv.clone();
        for _ in 0..(-n) {
            let factor = x.one_like() - x.clone() * qp.clone();
            acc = acc * factor.inv().map_err(|_| Error::DivisionByZero)?;
            qp = qp * qinv.clone();
        }
        Ok(acc)
    }
}

/// (x;q)_∞ = ∏_{k≥0}(1 − x q^k), truncated at the order carried by the inputs.
///
/// Requires valuation(q) ≥ 1 in the grading variable, so the product terminates after at
/// most order+1 factors.
pub fn q_pochhammer_inf(x: &TruncSeries, q: &TruncSeries) -> Result<TruncSeries> {
    if q.valuation().map_or(false, |v| v == 0) {
        return Err(Error::DivergentProduct);
    }
    let order = x.order();
    let one = TruncSeries::constant(num_traits::One::one(), order);
    let mut acc = one.clone();
    let mut xq = x.clone();
    loop {
        if xq.is_zero() {
            break;
        }
        acc = acc * (one.clone() - xq.clone());
        xq = xq * q.clone();
    }
    Ok(acc)
}

/// (q;q)_{top} / ∏_i (q;q)_{bottoms_i} under the signed-index convention.
///
/// Requires Σ bottoms = top and at most one negative bottom; a single negative bottom
/// forces the value 0, two negative bottoms are an error (the ratio is ill-defined).
pub fn q_multinomial_ratio<S: Scalar>(top: i64, bottoms: &[i64], q: &S) -> Result<S> {
    if bottoms.iter().sum::<i64>() != top {
        return Err(Error::Invalid(format!(
            "q-multinomial bottoms {bottoms:?} do not sum to top {top}"
        )));
    }
    let negatives = bottoms.iter().filter(|&&b| b < 0).count();
    match negatives {
        0 => {
            let mut acc = q_pochhammer(q, q, top)?;
            for &b in bottoms {
                acc = acc.div(&q_pochhammer(q, q, b)?)?;
            }
            Ok(acc)
        }
        1 => Ok(q.zero_like()),
        _ => Err(Error::BadSignature),
    }
}

/// Coefficients of the Gaussian binomial [J choose L]_q as a polynomial in q, built from
/// the Pascal-type recurrence (independent of the Pochhammer-ratio code path).
pub fn gaussian_binomial_coeffs(j: usize, l: usize) -> Vec<num_bigint::BigInt> {
    use num_bigint::BigInt;
    if l > j {
        return vec![BigInt::from(0)];
    }
    // row[l] = [j choose l]_q as coefficient vector; recurrence over j.
    let mut row: Vec<Vec<BigInt>> = vec![vec![BigInt::from(1)]];
    for jj in 1..=j {
        let mut next: Vec<Vec<BigInt>> = Vec::with_capacity(jj + 1);
        for ll in 0..=jj {
            if ll == 0 || ll == jj {
                next.push(vec![BigInt::from(1)]);
                continue;
            }
            // [jj,ll] = [jj-1,ll-1] + q^ll [jj-1,ll]
            let a = &row[ll - 1];
            let b = &row[ll];
            let mut c = vec![BigInt::from(0); a.len().max(b.len() + ll)];
            for (k, v) in a.iter().enumerate() {
                c[k] += v;
            }
            for (k, v) in b.iter().enumerate() {
                c[k + ll] += v;
            }
            next.push(c);
        }
        row = next;
    }
    row.swap_remove(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratq, Rat};
    use num_traits::{One, Zero};

    #[test]
    fn finite_pochhammer() {
        // (x;q)_0 = 1
        assert_eq!(q_pochhammer(&rat(7), &rat(5), 0).unwrap(), rat(1));
        // (2;3)_2 = (1−2)(1−6) = 5
        assert_eq!(q_pochhammer(&rat(2), &rat(3), 2).unwrap(), rat(5));
        // (2;3)_{−1} = 1/(1−2/3) = 3
        assert_eq!(q_pochhammer(&rat(2), &rat(3), -1).unwrap(), rat(3));
        // singular negative factor: x=q gives 1−q·q^{-1}=0
        assert_eq!(
            q_pochhammer(&rat(3), &rat(3), -1),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn infinite_pochhammer() {
        let order = 2;
        // x=0 → 1
        let zero = TruncSeries::zero(order);
        let q = TruncSeries::graded(Rat::one(), order);
        assert_eq!(
            q_pochhammer_inf(&zero, &q).unwrap(),
            TruncSeries::constant(Rat::one(), order)
        );
        // x = t, q = t, D=2 → (1−t)(1−t²) = 1 − t − t² mod t³
        let x = TruncSeries::graded(Rat::one(), order);
        let got = q_pochhammer_inf(&x, &q).unwrap();
        assert_eq!(got.coeffs(), &[rat(1), rat(-1), rat(-1)]);
        // x = 2 constant, q = t, D=1 → (1−2)(1−2t) = −1 + 2t
        let x2 = TruncSeries::constant(rat(2), 1);
        let q1 = TruncSeries::graded(Rat::one(), 1);
        assert_eq!(
            q_pochhammer_inf(&x2, &q1).unwrap().coeffs(),
            &[rat(-1), rat(2)]
        );
        // valuation(q)=0 diverges
        let qc = TruncSeries::constant(ratq(1, 2), 2);
        assert_eq!(
            q_pochhammer_inf(&x, &qc),
            Err(Error::DivergentProduct)
        );
    }

    #[test]
    fn infinite_matches_long_finite_product() {
        let order = 6;
        let x = TruncSeries::graded(ratq(2, 3), order);
        let q = TruncSeries::graded(ratq(5, 7), order);
        let inf = q_pochhammer_inf(&x, &q).unwrap();
        let fin = q_pochhammer(&x, &q, (order + 3) as i64).unwrap();
        assert_eq!(inf, fin);
    }

    #[test]
    fn multinomial_ratio() {
        // top=2, bottoms=[1,1], q=2 → 1+q = 3
        assert_eq!(
            q_multinomial_ratio(2, &[1, 1], &rat(2)).unwrap(),
            rat(3)
        );
        // top=k, bottoms=[k,0] → 1
        assert_eq!(q_multinomial_ratio(5, &[5, 0], &rat(7)).unwrap(), rat(1));
        // one negative bottom → 0
        assert_eq!(
            q_multinomial_ratio(1, &[2, -1], &rat(2)).unwrap(),
            Rat::zero()
        );
        // two negative bottoms → BadSignature
        assert_eq!(
            q_multinomial_ratio(-2, &[-1, -1], &rat(2)),
            Err(Error::BadSignature)
        );
        // mismatch → Invalid
        assert!(matches!(
            q_multinomial_ratio(2, &[1, 0], &rat(2)),
            Err(Error::Invalid(_))
        ));
    }

    #[test]
    fn gaussian_binomials_positive_and_consistent() {
        for j in 0..=6usize {
            for l in 0..=j {
                let coeffs = gaussian_binomial_coeffs(j, l);
                assert!(coeffs.iter().all(|c| c >= &num_bigint::BigInt::from(0)));
                // Same value as the Pochhammer-ratio path at q = 2.
                let value: Rat = coeffs
                    .iter()
                    .enumerate()
                    .map(|(k, c)| Rat::from_integer(c.clone()) * rat(2).pow(k as i32))
                    .sum();
                assert_eq!(
                    q_multinomial_ratio(j as i64, &[l as i64, (j - l) as i64], &rat(2)).unwrap(),
                    value
                );
            }
        }
    }
}
