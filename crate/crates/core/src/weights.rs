//! Vertex weights Φ, W^a, W^b, R and the two inhomogeneous Yang-Baxter checkers.
//!
//! All weights are rational functions of q and the edge parameters, computed exactly in any
//! scalar domain. Labels are compositions (vectors of integers); the support conditions
//! (conservation I+J=K+L, componentwise nonnegativity) are encoded by the weights vanishing
//! outside their support, matching the signed q-Pochhammer conventions in `qkit`.

use crate::error::{Error, Result};
use crate::partitions::Composition;
use crate::qkit::{q_multinomial_ratio, q_pochhammer};
use crate::scalar::Scalar;

/// The basic building block of all vertex weights:
///
/// Φ(X,Y;a,b) = b^{|X|} q^{Σ_{i<j} X_i Y_j} (a;q)_{|X|}(b;q)_{|Y|}/(ab;q)_{|X+Y|}
///              ∏_i (q;q)_{X_i+Y_i} / ((q;q)_{X_i}(q;q)_{Y_i}).
///
/// Defined whenever X_i + Y_i ≥ 0 for every i; vanishes unless X_i ≥ 0 and Y_i ≥ 0 for
/// every i. Components with X_i + Y_i < 0 are rejected with `BadSignature`.
pub fn phi<S: Scalar>(x: &[i64], y: &[i64], a: &S, b: &S, q: &S) -> Result<S> {
    assert_eq!(x.len(), y.len(), "Φ needs compositions of equal length");
    for i in 0..x.len() {
        if x[i] + y[i] < 0 {
            return Err(Error::BadSignature);
        }
        if x[i] < 0 || y[i] < 0 {
            return Ok(q.zero_like());
        }
    }
    let xw: i64 = x.iter().sum();
    let yw: i64 = y.iter().sum();
    let mut cross = 0i64;
    for i in 0..x.len() {
        for j in i + 1..y.len() {
            cross += x[i] * y[j];
        }
    }
    let mut comp = q.one_like();
    for i in 0..x.len() {
        comp = comp * q_multinomial_ratio(x[i] + y[i], &[x[i], y[i]], q)?;
    }
    let num = q_pochhammer(a, q, xw)? * q_pochhammer(b, q, yw)?;
    let den = q_pochhammer(&(a.clone() * b.clone()), q, xw + yw)?;
    Ok(b.powi(xw)? * q.powi(cross)? * num.div(&den)? * comp)
}

fn conserving(i: &[i64], j: &[i64], k: &[i64], l: &[i64]) -> bool {
    i.len() == j.len()
        && j.len() == k.len()
        && k.len() == l.len()
        && (0..i.len()).all(|r| i[r] + j[r] == k[r] + l[r])
}

fn comp_sub(x: &[i64], y: &[i64]) -> Composition {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

/// Which of the two equivalent sum representations of the R weight to use.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RForm {
    /// Σ_P Φ(L−P, K; a1/a2, a2/b2) Φ(P, J−P; a2/b1, b1/b2), with 0 ≤ P ≤ min(J, L).
    First,
    /// Σ_P Φ(L, K−P; a1/b1, b1/b2) Φ(I−P, P; a1/a2, a2/b1), with 0 ≤ P ≤ min(I, K).
    Second,
}

/// Iterates all integer vectors 0 ≤ p ≤ max componentwise.
fn box_points(max: &[i64]) -> Vec<Composition> {
    let mut out = vec![vec![]];
    for &m in max {
        let mut next = Vec::new();
        for prefix in &out {
            for v in 0..=m.max(0) {
                let mut p = prefix.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// R_{a1,b1,a2,b2}(I,J,K,L): swaps both parameters of two crossing lines.
pub fn weight_r<S: Scalar>(
    q: &S,
    a1: &S,
    b1: &S,
    a2: &S,
    b2: &S,
    i: &[i64],
    j: &[i64],
    k: &[i64],
    l: &[i64],
    form: RForm,
) -> Result<S> {
    if !conserving(i, j, k, l) {
        return Ok(q.zero_like());
    }
    let mut acc = q.zero_like();
    match form {
        RForm::First => {
            let max: Composition = (0..j.len()).map(|r| j[r].min(l[r])).collect();
            for p in box_points(&max) {
                let t1 = phi(&comp_sub(l, &p), k, &a1.div(a2)?, &a2.div(b2)?, q)?;
                if t1.is_zero() {
                    continue;
                }
                let t2 = phi(&p, &comp_sub(j, &p), &a2.div(b1)?, &b1.div(b2)?, q)?;
                acc = acc + t1 * t2;
            }
        }
        RForm::Second => {
            let max: Composition = (0..i.len()).map(|r| i[r].min(k[r])).collect();
            for p in box_points(&max) {
                let t1 = phi(l, &comp_sub(k, &p), &a1.div(b1)?, &b1.div(b2)?, q)?;
                if t1.is_zero() {
                    continue;
                }
                let t2 = phi(&comp_sub(i, &p), &p, &a1.div(a2)?, &a2.div(b1)?, q)?;
                acc = acc + t1 * t2;
            }
        }
    }
    Ok(acc)
}

/// W^a with explicit q (the preferred entry point).
pub fn wa<S: Scalar>(
    q: &S,
    a1: &S,
    a2: &S,
    b1: &S,
    i: &[i64],
    j: &[i64],
    k: &[i64],
    l: &[i64],
) -> Result<S> {
    if !conserving(i, j, k, l) {
        return Ok(q.zero_like());
    }
    phi(&comp_sub(i, k), k, &a1.div(a2)?, &a2.div(b1)?, q)
}

/// W^b with explicit q (the preferred entry point).
pub fn wb<S: Scalar>(
    q: &S,
    a2: &S,
    b1: &S,
    b2: &S,
    i: &[i64],
    j: &[i64],
    k: &[i64],
    l: &[i64],
) -> Result<S> {
    if !conserving(i, j, k, l) {
        return Ok(q.zero_like());
    }
    phi(l, &comp_sub(j, l), &a2.div(b1)?, &b1.div(b2)?, q)
}

/// Both sides of the all-W^b triangle identity
///
/// Σ_C W^b_{a3,b1,b2}(C1,C2,B2,B1) W^b_{a2,b1,b3}(A1,C3,B3,C1) W^b_{a3,b2,b3}(A2,A3,C3,C2)
///   = Σ_C W^b_{a2,b2,b3}(C2,C3,B3,B2) W^b_{a3,b1,b3}(C1,A3,C3,B1) W^b_{a2,b1,b2}(A1,A2,C2,C1),
///
/// for boundary labels A = (A1,A2,A3), B = (B1,B2,B3). Returns (lhs, rhs).
pub fn ybe_bbb_sides<S: Scalar>(
    q: &S,
    a: &[S; 3],
    b: &[S; 3],
    av: &[Composition; 3],
    bv: &[Composition; 3],
) -> Result<(S, S)> {
    let n = av[0].len();
    let mut lhs = q.zero_like();
    // Inner labels on the left: C3+C2 = A2+A3 (bottom vertex), C1 = A1+C3−B3 (middle),
    // and the top vertex enforces C1+C2 = B1+B2.
    let c3max: Composition = (0..n).map(|r| av[1][r] + av[2][r]).collect();
    for c3 in box_points(&c3max) {
        let c2 = comp_sub(&c3max, &c3);
        let c1: Composition = (0..n).map(|r| av[0][r] + c3[r] - bv[2][r]).collect();
        if c1.iter().any(|&v| v < 0) {
            continue;
        }
        if (0..n).any(|r| c1[r] + c2[r] != bv[0][r] + bv[1][r]) {
            continue;
        }
        let w1 = wb(q, &a[2], &b[0], &b[1], &c1, &c2, &bv[1], &bv[0])?;
        if w1.is_zero() {
            continue;
        }
        let w2 = wb(q, &a[1], &b[0], &b[2], &av[0], &c3, &bv[2], &c1)?;
        if w2.is_zero() {
            continue;
        }
        let w3 = wb(q, &a[2], &b[1], &b[2], &av[1], &av[2], &c3, &c2)?;
        lhs = lhs + w1 * w2 * w3;
    }
    let mut rhs = q.zero_like();
    // Inner labels on the right: C1+C2 = A1+A2, C3 = C1+A3−B1, and C2+C3 = B2+B3.
    let c2max: Composition = (0..n).map(|r| av[0][r] + av[1][r]).collect();
    for c2 in box_points(&c2max) {
        let c1 = comp_sub(&c2max, &c2);
        let c3: Composition = (0..n).map(|r| c1[r] + av[2][r] - bv[0][r]).collect();
        if c3.iter().any(|&v| v < 0) {
            continue;
        }
        if (0..n).any(|r| c2[r] + c3[r] != bv[1][r] + bv[2][r]) {
            continue;
        }
        let w1 = wb(q, &a[1], &b[1], &b[2], &c2, &c3, &bv[2], &bv[1])?;
        if w1.is_zero() {
            continue;
        }
        let w2 = wb(q, &a[2], &b[0], &b[2], &c1, &av[2], &c3, &bv[0])?;
        if w2.is_zero() {
            continue;
        }
        let w3 = wb(q, &a[1], &b[0], &b[1], &av[0], &av[1], &c2, &c1)?;
        rhs = rhs + w1 * w2 * w3;
    }
    Ok((lhs, rhs))
}

/// Both sides of the mixed triangle identity involving W^a, W^b and R:
///
/// Σ_C W^b_{a2,b1,b3}(C1,C2,B2,B1) R_{a1,b1,a3,b2}(A1,C3,B3,C1) W^a_{a2,a3,b2}(A2,A3,C3,C2)
///   = Σ_C W^a_{a1,a3,b2}(C2,C3,B3,B2) R_{a2,b1,a3,b3}(C1,A3,C3,B1) W^b_{a2,b1,b2}(A1,A2,C2,C1).
pub fn ybe_mixed_sides<S: Scalar>(
    q: &S,
    a: &[S; 3],
    b: &[S; 3],
    av: &[Composition; 3],
    bv: &[Composition; 3],
) -> Result<(S, S)> {
    let n = av[0].len();
    let mut lhs = q.zero_like();
    let c3max: Composition = (0..n).map(|r| av[1][r] + av[2][r]).collect();
    for c3 in box_points(&c3max) {
        let c2 = comp_sub(&c3max, &c3);
        let c1: Composition = (0..n).map(|r| av[0][r] + c3[r] - bv[2][r]).collect();
        if c1.iter().any(|&v| v < 0) {
            continue;
        }
        if (0..n).any(|r| c1[r] + c2[r] != bv[1][r] + bv[0][r]) {
            continue;
        }
        let w1 = wb(q, &a[1], &b[0], &b[2], &c1, &c2, &bv[1], &bv[0])?;
        if w1.is_zero() {
            continue;
        }
        let w2 = weight_r(
            q,
            &a[0],
            &b[0],
            &a[2],
            &b[1],
            &av[0],
            &c3,
            &bv[2],
            &c1,
            RForm::First,
        )?;
        if w2.is_zero() {
            continue;
        }
        let w3 = wa(q, &a[1], &a[2], &b[1], &av[1], &av[2], &c3, &c2)?;
        lhs = lhs + w1 * w2 * w3;
    }
    let mut rhs = q.zero_like();
    let c2max: Composition = (0..n).map(|r| av[0][r] + av[1][r]).collect();
    for c2 in box_points(&c2max) {
        let c1 = comp_sub(&c2max, &c2);
        let c3: Composition = (0..n).map(|r| c1[r] + av[2][r] - bv[0][r]).collect();
        if c3.iter().any(|&v| v < 0) {
            continue;
        }
        if (0..n).any(|r| c2[r] + c3[r] != bv[2][r] + bv[1][r]) {
            continue;
        }
        let w1 = wa(q, &a[0], &a[2], &b[1], &c2, &c3, &bv[2], &bv[1])?;
        if w1.is_zero() {
            continue;
        }
        let w2 = weight_r(
            q,
            &a[1],
            &b[0],
            &a[2],
            &b[2],
            &c1,
            &av[2],
            &c3,
            &bv[0],
            RForm::Second,
        )?;
        if w2.is_zero() {
            continue;
        }
        let w3 = wb(q, &a[1], &b[0], &b[1], &av[0], &av[1], &c2, &c1)?;
        rhs = rhs + w1 * w2 * w3;
    }
    Ok((lhs, rhs))
}

/// All boundary pairs (A, B) of rank-1 triples with labels ≤ `max_label` satisfying the
/// global conservation law |A| = |B|.
pub fn conserving_boundaries(max_label: i64) -> Vec<([Composition; 3], [Composition; 3])> {
    let mut out = Vec::new();
    for a1 in 0..=max_label {
        for a2 in 0..=max_label {
            for a3 in 0..=max_label {
                for b1 in 0..=max_label {
                    for b2 in 0..=max_label {
                        for b3 in 0..=max_label {
                            if a1 + a2 + a3 == b1 + b2 + b3 {
                                out.push((
                                    [vec![a1], vec![a2], vec![a3]],
                                    [vec![b1], vec![b2], vec![b3]],
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::Sampler;
    use crate::scalar::{rat, Rat};

    fn pt(s: &mut Sampler) -> (Rat, [Rat; 3], [Rat; 3]) {
        let (q, a, b) = s.parameter_pair(4, 4);
        (
            q,
            [a.get(1).unwrap(), a.get(2).unwrap(), a.get(3).unwrap()],
            [b.get(1).unwrap(), b.get(2).unwrap(), b.get(3).unwrap()],
        )
    }

    #[test]
    fn phi_rank_one_closed_forms() {
        let (a, b, q) = (rat(2), rat(3), rat(5));
        // Φ((1),(0)) = b(1−a)/(1−ab)
        let want = &b * (rat(1) - &a) / (rat(1) - &a * &b);
        assert_eq!(phi(&[1], &[0], &a, &b, &q).unwrap(), want);
        // Φ((0),(0)) = 1, Φ with a negative entry but nonnegative sum = 0
        assert_eq!(phi(&[0], &[0], &a, &b, &q).unwrap(), rat(1));
        assert_eq!(phi(&[-1], &[2], &a, &b, &q).unwrap(), rat(0));
        assert_eq!(phi(&[2], &[-1], &a, &b, &q).unwrap(), rat(0));
        // Both entries too negative is ill-defined.
        assert_eq!(phi(&[-1], &[0], &a, &b, &q), Err(Error::BadSignature));
    }

    #[test]
    fn wa_wb_rank_one_examples() {
        let (q, a1, a2, b1, b2) = (rat(7), rat(2), rat(3), rat(5), rat(11));
        // W^a(1,0,0,1) = Φ(1,0; a1/a2, a2/b1) = (a2/b1)(1−a1/a2)/(1−a1/b1)
        let want = (&a2 / &b1) * (rat(1) - &a1 / &a2) / (rat(1) - &a1 / &b1);
        assert_eq!(
            wa(&q, &a1, &a2, &b1, &[1], &[0], &[0], &[1]).unwrap(),
            want
        );
        // W^b(0,1,0,1) = Φ(1,0; a2/b1, b1/b2) = (b1/b2)(1−a2/b1)/(1−a2/b2)
        let want = (&b1 / &b2) * (rat(1) - &a2 / &b1) / (rat(1) - &a2 / &b2);
        assert_eq!(
            wb(&q, &a2, &b1, &b2, &[0], &[1], &[0], &[1]).unwrap(),
            want
        );
        // Support conditions: W^a vanishes unless I ≥ K, W^b unless J ≥ L.
        assert_eq!(
            wa(&q, &a1, &a2, &b1, &[0], &[1], &[1], &[0]).unwrap(),
            rat(0)
        );
        assert_eq!(
            wb(&q, &a2, &b1, &b2, &[1], &[0], &[0], &[1]).unwrap(),
            rat(0)
        );
        // Conservation: zero when I+J ≠ K+L.
        assert_eq!(
            wa(&q, &a1, &a2, &b1, &[2], &[0], &[0], &[1]).unwrap(),
            rat(0)
        );
    }

    #[test]
    fn r_forms_agree_rank_one_and_two() {
        let mut s = Sampler::new(11);
        for _ in 0..3 {
            let (q, a, b) = pt(&mut s);
            // Rank 1, all conserving labels up to 3.
            for i in 0..=3i64 {
                for j in 0..=3i64 {
                    for k in 0..=i + j {
                        let l = i + j - k;
                        let f1 = weight_r(
                            &q, &a[0], &b[0], &a[1], &b[1],
                            &[i], &[j], &[k], &[l], RForm::First,
                        )
                        .unwrap();
                        let f2 = weight_r(
                            &q, &a[0], &b[0], &a[1], &b[1],
                            &[i], &[j], &[k], &[l], RForm::Second,
                        )
                        .unwrap();
                        assert_eq!(f1, f2, "R forms differ at ({i},{j},{k},{l})");
                    }
                }
            }
            // A rank-2 spot check.
            let f1 = weight_r(
                &q, &a[0], &b[0], &a[1], &b[1],
                &[1, 2], &[2, 0], &[0, 1], &[3, 1], RForm::First,
            )
            .unwrap();
            let f2 = weight_r(
                &q, &a[0], &b[0], &a[1], &b[1],
                &[1, 2], &[2, 0], &[0, 1], &[3, 1], RForm::Second,
            )
            .unwrap();
            assert_eq!(f1, f2);
        }
    }

    #[test]
    fn r_identity_like_values() {
        let mut s = Sampler::new(5);
        let (q, a, b) = pt(&mut s);
        // Empty occupation: R(0,0,0,0) = 1.
        assert_eq!(
            weight_r(&q, &a[0], &b[0], &a[1], &b[1], &[0], &[0], &[0], &[0], RForm::First)
                .unwrap(),
            rat(1)
        );
        // Nonconserving boundaries vanish.
        assert_eq!(
            weight_r(&q, &a[0], &b[0], &a[1], &b[1], &[1], &[0], &[0], &[0], RForm::First)
                .unwrap(),
            rat(0)
        );
    }

    #[test]
    fn ybe_all_b_holds_at_random_points() {
        let mut s = Sampler::new(23);
        let boundaries = conserving_boundaries(2);
        for _ in 0..2 {
            let (q, a, b) = pt(&mut s);
            for (av, bv) in &boundaries {
                let (lhs, rhs) = ybe_bbb_sides(&q, &a, &b, av, bv).unwrap();
                assert_eq!(lhs, rhs, "all-b triangle fails at A={av:?} B={bv:?}");
            }
        }
    }

    #[test]
    fn ybe_mixed_holds_at_random_points() {
        let mut s = Sampler::new(29);
        let boundaries = conserving_boundaries(2);
        for _ in 0..2 {
            let (q, a, b) = pt(&mut s);
            for (av, bv) in &boundaries {
                let (lhs, rhs) = ybe_mixed_sides(&q, &a, &b, av, bv).unwrap();
                assert_eq!(lhs, rhs, "mixed triangle fails at A={av:?} B={bv:?}");
            }
        }
    }

    #[test]
    fn mixed_triangle_degenerates_to_plain_yang_baxter() {
        // With a1 = a2 and b2 = b3 both R weights and the W weights collapse so that the
        // mixed identity reduces to a plain Yang-Baxter relation; the sides must still match.
        let mut s = Sampler::new(31);
        let (q, a, b) = pt(&mut s);
        let a = [a[0].clone(), a[0].clone(), a[2].clone()];
        let b = [b[0].clone(), b[1].clone(), b[1].clone()];
        for (av, bv) in conserving_boundaries(2) {
            let (lhs, rhs) = ybe_mixed_sides(&q, &a, &b, &av, &bv).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}
