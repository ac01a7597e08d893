//! Row operators built from the rank-one vertex weights, and the two series identities
//! they satisfy: the q-Gauss summation and the exchange relation between the row operator
//! B(x) and its dual B*(y).
//!
//! All matrix elements here are grouped so that they stay polynomial in the spectral
//! variable (x for the b-row, v = y⁻¹ for the a-row). This makes the same code usable over
//! plain rationals and over truncated power series, where the spectral variables carry
//! positive valuation and cannot be inverted.

use crate::error::Result;
use crate::partitions::{interlaces, ParamSeq, Partition};
use crate::qkit::{q_multinomial_ratio, q_pochhammer, q_pochhammer_inf};
use crate::sample::Sampler;
use crate::scalar::Scalar;
use crate::series::TruncSeries;

/// ψ_λ(𝒜,ℬ) = ∏_{r≥0} (b_r/a_r)^{λ_{r+1}} ∏_{r≥1} (q;q)_{λ_r−λ_{r+1}} / (a_r/b_r;q)_{λ_r−λ_{r+1}}.
///
/// The duality weight relating B and B*. Factors with zero exponent or zero Pochhammer
/// index are skipped, so only the parameter prefix up to index l(λ) is ever read.
pub fn psi<S: Scalar>(lambda: &Partition, a: &ParamSeq, b: &ParamSeq, q: &S) -> Result<S> {
    let mut acc = q.one_like();
    let l = lambda.len();
    for r in 0..l {
        let e = lambda.part(r + 1) as i64;
        if e != 0 {
            let ratio = b.get_in(r, q)?.div(&a.get_in(r, q)?)?;
            acc = acc * ratio.powi(e)?;
        }
    }
    for r in 1..=l {
        let k = (lambda.part(r) - lambda.part(r + 1)) as i64;
        if k != 0 {
            let ab = a.get_in(r, q)?.div(&b.get_in(r, q)?)?;
            acc = acc * q_pochhammer(q, q, k)?.div(&q_pochhammer(&ab, q, k)?)?;
        }
    }
    Ok(acc)
}

/// W^b_{a,x,b}(I,J,K,L) grouped as a polynomial in the spectral variable x:
///
/// δ_{I+J=K+L} δ_{J≥L≥0} b^{−L} ∏_{t=1}^{L}(x − a q^{t−1}) · (x/b;q)_{J−L} / (a/b;q)_J
///   · (q;q)_J / ((q;q)_L (q;q)_{J−L}).
pub fn wb_row<S: Scalar>(q: &S, a: &S, x: &S, b: &S, i: i64, j: i64, k: i64, l: i64) -> Result<S> {
    if i + j != k + l || l < 0 || j < l || i < 0 || k < 0 {
        return Ok(q.zero_like());
    }
    let mut acc = b.powi(-l)?;
    let mut qp = q.one_like();
    for _ in 0..l {
        acc = acc * (x.clone() - a.clone() * qp.clone());
        qp = qp * q.clone();
    }
    acc = acc * q_pochhammer(&x.div(b)?, q, j - l)?;
    acc = acc.div(&q_pochhammer(&a.div(b)?, q, j)?)?;
    Ok(acc * q_multinomial_ratio(j, &[l, j - l], q)?)
}

/// v^I · W^a_{a,y,b}(I,J,K,L) with y = v⁻¹, grouped as a polynomial in v:
///
/// δ_{I+J=K+L} δ_{I≥K≥0} b^{−(I−K)} (a v;q)_{I−K} · b^{−K} ∏_{t=1}^{K}(b v − q^{t−1})
///   / (a/b;q)_I · (q;q)_I / ((q;q)_{I−K} (q;q)_K).
pub fn wa_row_v<S: Scalar>(
    q: &S,
    a: &S,
    v: &S,
    b: &S,
    i: i64,
    j: i64,
    k: i64,
    l: i64,
) -> Result<S> {
    if i + j != k + l || k < 0 || i < k || j < 0 || l < 0 {
        return Ok(q.zero_like());
    }
    let mut acc = b.powi(-i)?; // b^{−(I−K)} · b^{−K}
    acc = acc * q_pochhammer(&(a.clone() * v.clone()), q, i - k)?;
    let mut qp = q.one_like();
    for _ in 0..k {
        acc = acc * (b.clone() * v.clone() - qp.clone());
        qp = qp * q.clone();
    }
    acc = acc.div(&q_pochhammer(&a.div(b)?, q, i)?)?;
    Ok(acc * q_multinomial_ratio(i, &[i - k, k], q)?)
}

/// ⟨λ| T^{b,N}_{I,L}(x | 𝒜,ℬ) |μ⟩: a single row of b-type vertices.
///
/// With J_r = μ_r − μ_{r+1}, K_r = λ_r − λ_{r+1}, L_0 = I and L_r = L_{r−1} + J_r − K_r,
/// the value is ∏_{r=1}^N W^b_{a_{r+1}, x, b_r}(L_{r−1}, J_r, K_r, L_r), zero unless all
/// intermediate L_r are nonnegative and L_N equals the requested right label.
pub fn tb_element<S: Scalar>(
    lambda: &Partition,
    mu: &Partition,
    i_label: i64,
    l_label: i64,
    x: &S,
    a: &ParamSeq,
    b: &ParamSeq,
    q: &S,
) -> Result<S> {
    let n = lambda.len().max(mu.len());
    let mut acc = q.one_like();
    let mut left = i_label;
    for r in 1..=n {
        let j = (mu.part(r) - mu.part(r + 1)) as i64;
        let k = (lambda.part(r) - lambda.part(r + 1)) as i64;
        let right = left + j - k;
        if right < 0 {
            return Ok(q.zero_like());
        }
        let w = wb_row(
            q,
            &a.get_in(r + 1, q)?,
            x,
            &b.get_in(r, q)?,
            left,
            j,
            k,
            right,
        )?;
        if w.is_zero() {
            return Ok(q.zero_like());
        }
        acc = acc * w;
        left = right;
    }
    if left != l_label {
        return Ok(q.zero_like());
    }
    Ok(acc)
}

/// ⟨μ| T^{a,N}_{K,J}(y | 𝒜,ℬ) |λ⟩ expressed through v = y⁻¹: a single row of a-type
/// vertices with the per-vertex prefactor (y/b_0)^{−I_r} absorbed.
///
/// With I_r = λ_r − λ_{r+1}, L_r = μ_r − μ_{r+1}, J_0 = K and J_r = J_{r−1} + L_r − I_r,
/// the value is b_0^{λ_1} ∏_{r=1}^N v^{I_r} W^a_{a_r, y, b_r}(I_r, J_r, J_{r−1}, L_r),
/// zero unless all J_r ≥ 0 and J_N equals the requested right label.
pub fn ta_element<S: Scalar>(
    lambda: &Partition,
    mu: &Partition,
    k_label: i64,
    j_label: i64,
    v: &S,
    a: &ParamSeq,
    b: &ParamSeq,
    q: &S,
) -> Result<S> {
    let n = lambda.len().max(mu.len());
    let mut acc = b.get_in(0, q)?.powi(lambda.part(1) as i64)?;
    let mut left = k_label;
    for r in 1..=n {
        let i = (lambda.part(r) - lambda.part(r + 1)) as i64;
        let l = (mu.part(r) - mu.part(r + 1)) as i64;
        let right = left + l - i;
        if right < 0 {
            return Ok(q.zero_like());
        }
        let w = wa_row_v(
            q,
            &a.get_in(r, q)?,
            v,
            &b.get_in(r, q)?,
            i,
            right,
            left,
            l,
        )?;
        if w.is_zero() {
            return Ok(q.zero_like());
        }
        acc = acc * w;
        left = right;
    }
    if left != j_label {
        return Ok(q.zero_like());
    }
    Ok(acc)
}

/// ⟨λ| B(x | 𝒜,ℬ) |μ⟩ = b_0^{−I} ∏_{t=1}^{I}(x − a_1 q^{t−1}) / (q;q)_I
///   · ⟨λ| T^b_{I,0}(x | 𝒜,ℬ) |μ⟩ with I = λ_1 − μ_1; zero unless μ ≺ λ.
pub fn b_element<S: Scalar>(
    lambda: &Partition,
    mu: &Partition,
    x: &S,
    a: &ParamSeq,
    b: &ParamSeq,
    q: &S,
) -> Result<S> {
    if lambda.part(1) < mu.part(1) {
        return Ok(q.zero_like());
    }
    let i = (lambda.part(1) - mu.part(1)) as i64;
    let t = tb_element(lambda, mu, i, 0, x, a, b, q)?;
    if t.is_zero() {
        return Ok(q.zero_like());
    }
    let a1 = a.get_in(1, q)?;
    let mut pre = b.get_in(0, q)?.powi(-i)?;
    let mut qp = q.one_like();
    for _ in 0..i {
        pre = pre * (x.clone() - a1.clone() * qp.clone());
        qp = qp * q.clone();
    }
    pre = pre.div(&q_pochhammer(q, q, i)?)?;
    Ok(pre * t)
}

/// ⟨μ| B*(y | 𝒜,ℬ) |λ⟩ = ⟨μ| T^a_{λ_1−μ_1, 0}(y | 𝒜,ℬ) |λ⟩, in the variable v = y⁻¹;
/// zero unless μ ≺ λ.
pub fn b_star_element<S: Scalar>(
    lambda: &Partition,
    mu: &Partition,
    v: &S,
    a: &ParamSeq,
    b: &ParamSeq,
    q: &S,
) -> Result<S> {
    if lambda.part(1) < mu.part(1) {
        return Ok(q.zero_like());
    }
    let k = (lambda.part(1) - mu.part(1)) as i64;
    ta_element(lambda, mu, k, 0, v, a, b, q)
}

/// The dual route to the same matrix element:
/// ⟨μ| B*(y | 𝒜,ℬ) |λ⟩ = ψ_λ(𝒜,ℬ)/ψ_μ(𝒜,τℬ) · ⟨λ| B(y⁻¹ | ℬ̄, 𝒜̄) |μ⟩.
///
/// Used as an independent cross-check of [`b_star_element`] at rational points.
pub fn b_star_element_dual<S: Scalar>(
    lambda: &Partition,
    mu: &Partition,
    v: &S,
    a: &ParamSeq,
    b: &ParamSeq,
    q: &S,
) -> Result<S> {
    let num = psi(lambda, a, b, q)?;
    let den = psi(mu, a, &b.shift(1), q)?;
    let core = b_element(lambda, mu, v, &b.bar(), &a.bar(), q)?;
    num.div(&den).map(|r| r * core)
}

/// All λ with μ ≺ λ and ν ≺ λ and λ_1 ≤ max_first (the support of B†·B terms).
///
/// The interlacing constraints read λ_i ≥ max(μ_i, ν_i) and λ_{i+1} ≤ min(μ_i, ν_i), so λ
/// has at most max(l(μ), l(ν)) + 1 parts and each part ranges over an explicit interval.
pub fn interlacing_above(mu: &Partition, nu: &Partition, max_first: usize) -> Vec<Partition> {
    let depth = mu.len().max(nu.len()) + 1;
    let mut out = Vec::new();
    fn rec(
        parts: &mut Vec<usize>,
        i: usize,
        depth: usize,
        mu: &Partition,
        nu: &Partition,
        max_first: usize,
        out: &mut Vec<Partition>,
    ) {
        if i > depth {
            out.push(Partition::new(parts.clone()).unwrap());
            return;
        }
        let lo = mu.part(i).max(nu.part(i));
        let hi = if i == 1 {
            max_first
        } else {
            mu.part(i - 1).min(nu.part(i - 1)).min(parts[i - 2])
        };
        for p in lo..=hi {
            parts.push(p);
            rec(parts, i + 1, depth, mu, nu, max_first, out);
            parts.pop();
        }
    }
    rec(&mut Vec::new(), 1, depth, mu, nu, max_first, &mut out);
    out.sort();
    out
}

/// All λ with λ ≺ μ and λ ≺ ν (the finite support of B·B† terms).
pub fn interlacing_below(mu: &Partition, nu: &Partition) -> Vec<Partition> {
    let depth = mu.len().max(nu.len());
    let mut out = Vec::new();
    let mut parts: Vec<usize> = Vec::new();
    fn rec(
        parts: &mut Vec<usize>,
        i: usize,
        depth: usize,
        mu: &Partition,
        nu: &Partition,
        out: &mut Vec<Partition>,
    ) {
        if i > depth {
            out.push(Partition::new(parts.clone()).unwrap());
            return;
        }
        let lo = mu.part(i + 1).max(nu.part(i + 1));
        let mut hi = mu.part(i).min(nu.part(i));
        if i >= 2 {
            hi = hi.min(parts[i - 2]);
        }
        for p in lo..=hi {
            parts.push(p);
            rec(parts, i + 1, depth, mu, nu, out);
            parts.pop();
        }
    }
    rec(&mut parts, 1, depth, mu, nu, &mut out);
    out.sort();
    out.retain(|l| interlaces(mu, l) && interlaces(nu, l));
    out
}

/// The regrouped summand of the q-Gauss summation, as a function of I:
///
/// (x/y)^I (a/x;q)_I/(q;q)_I · R_{a,x,y,b}(I, J, I+J−L, L)
///
/// rewritten in terms of v = y⁻¹ so that every factor is a polynomial in x and v except a
/// single P-independent exact division (present only when I < L). Callers over series must
/// run at a guarded order, since the exact division computes top coefficients as if the
/// dividend's tail were zero.
pub fn qgauss_summand<S: Scalar>(
    i: i64,
    j: i64,
    l: i64,
    x: &S,
    v: &S,
    a: &S,
    b: &S,
    q: &S,
    div: &dyn Fn(&S, &S) -> Result<S>,
) -> Result<S> {
    let k = i + j - l;
    if i < 0 || k < 0 {
        return Ok(q.zero_like());
    }
    // Leading block: v^I (x/y)^I (a/x;q)_I /(q;q)_I · b^{−I} regrouped as
    // b^{−I} ∏_{t=1}^I (x − a q^{t−1}) / (q;q)_I.
    let mut lead = b.powi(-i)?;
    let mut qp = q.one_like();
    for _ in 0..i {
        lead = lead * (x.clone() - a.clone() * qp.clone());
        qp = qp * q.clone();
    }
    lead = lead.div(&q_pochhammer(q, q, i)?)?;
    // P-independent ratio v^{K−J} b^{K−J} (y/b;q)_K/(y/b;q)_J:
    //   ∏_{t=J+1}^{K}(b v − q^{t−1})            when K ≥ J,
    //   1/∏_{t=K+1}^{J}(b v − q^{t−1})          when K < J (exact division).
    let bv_ratio_num = |lo: i64, hi: i64| -> Result<S> {
        let mut acc = q.one_like();
        for t in lo..hi {
            acc = acc * (b.clone() * v.clone() - q.powi(t)?);
        }
        Ok(acc)
    };
    let ab = a.div(b)?;
    let xb = x.div(b)?;
    let mut inner = q.zero_like();
    for p in 0..=j.min(l) {
        // Φ(L−P, K; a/y, y/b) · Φ(P, J−P; y/x, x/b) with all v-powers distributed.
        let mut term = q_pochhammer(&(a.clone() * v.clone()), q, l - p)?;
        let mut qp = q.one_like();
        for _ in 0..p {
            term = term * (x.clone() * v.clone() - qp.clone());
            qp = qp * q.clone();
        }
        term = term * q_pochhammer(&xb, q, j - p)?;
        term = term.div(&q_pochhammer(&ab, q, l - p + k)?)?;
        term = term * q_pochhammer(q, q, l - p + k)?;
        term = term * q_pochhammer(q, q, j)?;
        term = term.div(&q_pochhammer(q, q, l - p)?)?;
        term = term.div(&q_pochhammer(q, q, k)?)?;
        term = term.div(&q_pochhammer(q, q, p)?)?;
        term = term.div(&q_pochhammer(q, q, j - p)?)?;
        inner = inner + term;
    }
    let total = if k >= j {
        lead * bv_ratio_num(j, k)? * inner
    } else {
        div(&(lead * inner), &bv_ratio_num(k, j)?)?
    };
    Ok(total)
}

/// Checks the q-Gauss summation
///
/// Σ_{I≥0, K=I+J−L≥0} (x/y)^I (a/x;q)_I/(q;q)_I R_{a,x,y,b}(I,J,K,L)
///   = (a/y;q)_∞ (x/b;q)_∞ / ((a/b;q)_∞ (x/y;q)_∞) · (x/b)^L (a/x;q)_L/(q;q)_L
///
/// in ℚ[t]/(t^{D+1}) under x → t·x̂, y⁻¹ → t·ŷ, q → t·q̂ at a seeded random point.
/// Returns (lhs, rhs) truncated to order `d`.
pub fn check_qgauss(
    j: i64,
    l: i64,
    d: usize,
    sampler: &mut Sampler,
) -> Result<(TruncSeries, TruncSeries)> {
    // Guarded internal order: the exact division by ∏(bv − q^{t−1}) (only for I < L)
    // computes top coefficients from an unknown tail, so give it headroom.
    let w = d + 2 * (l.max(0) as usize) + 6;
    let a = sampler.unit_free_rational();
    let b = loop {
        let b = sampler.unit_free_rational();
        if b != a {
            break b;
        }
    };
    let qh = sampler.unit_free_rational();
    let xh = sampler.unit_free_rational();
    let yh = sampler.unit_free_rational();
    let q = TruncSeries::graded(qh, w);
    let x = TruncSeries::graded(xh, w);
    let v = TruncSeries::graded(yh, w);
    let ac = TruncSeries::constant(a.clone(), w);
    let bc = TruncSeries::constant(b.clone(), w);

    let div = |num: &TruncSeries, den: &TruncSeries| num.div_exact(den);
    let mut lhs = TruncSeries::zero(w);
    let i_max = (w / 2 + 2) as i64;
    for i in 0.max(l - j)..=i_max {
        lhs = lhs + qgauss_summand(i, j, l, &x, &v, &ac, &bc, &q, &div)?;
    }

    // Right-hand side: infinite Pochhammer prefactor times the L-indexed block.
    let pre = q_pochhammer_inf(&(ac.clone() * v.clone()), &q)?
        * q_pochhammer_inf(&x.clone().div(&bc)?, &q)?;
    let pre = pre
        .div_exact(&q_pochhammer_inf(&ac.clone().div(&bc)?, &q)?)?
        .div_exact(&q_pochhammer_inf(&(x.clone() * v.clone()), &q)?)?;
    let mut block = bc.powi(-l)?;
    let mut qp = q.one_like();
    for _ in 0..l {
        block = block * (x.clone() - ac.clone() * qp.clone());
        qp = qp * q.clone();
    }
    block = block.div(&q_pochhammer(&q, &q, l)?)?;
    let rhs = pre * block;

    Ok((lhs.truncated(d), rhs.truncated(d)))
}

/// Checks the exchange relation
///
/// Σ_λ ⟨ν|B*(y|𝒜,ℬ)|λ⟩⟨λ|B(x|𝒜,ℬ)|μ⟩
///   = (a_1/y;q)_∞(x/b_1;q)_∞ / ((a_1/b_1;q)_∞(x/y;q)_∞)
///     · Σ_λ ⟨ν|B(x|𝒜,τℬ)|λ⟩⟨λ|B*(y|τ𝒜,ℬ)|μ⟩
///
/// in ℚ[t]/(t^{D+1}) at a seeded random point. Returns (lhs, rhs, contributing λ on the
/// left).
pub fn check_exchange(
    mu: &Partition,
    nu: &Partition,
    d: usize,
    sampler: &mut Sampler,
) -> Result<(TruncSeries, TruncSeries, Vec<Partition>)> {
    // The left λ-sum is infinite; the term for λ has valuation at least
    // (λ_1−μ_1−1) + (λ_1−ν_1−1), so truncate once that exceeds D.
    let cap = (d + mu.part(1) + nu.part(1) + 2) / 2 + 1;
    let plen = mu.len().max(nu.len()) + 4 + 1;
    let (qh, a, b) = sampler.parameter_pair(plen, 3);
    let xh = sampler.unit_free_rational();
    let yh = sampler.unit_free_rational();
    let q = TruncSeries::graded(qh, d);
    let x = TruncSeries::graded(xh, d);
    let v = TruncSeries::graded(yh, d);

    let lambdas = interlacing_above(mu, nu, cap);
    let mut lhs = TruncSeries::zero(d);
    for lam in &lambdas {
        let bs = b_star_element(lam, nu, &v, &a, &b, &q)?;
        if bs.is_zero() {
            continue;
        }
        let be = b_element(lam, mu, &x, &a, &b, &q)?;
        lhs = lhs + bs * be;
    }

    let a1 = TruncSeries::constant(a.get(1)?, d);
    let b1 = TruncSeries::constant(b.get(1)?, d);
    let pre = q_pochhammer_inf(&(a1.clone() * v.clone()), &q)?
        * q_pochhammer_inf(&x.clone().div(&b1)?, &q)?;
    let pre = pre
        .div_exact(&q_pochhammer_inf(&a1.div(&b1)?, &q)?)?
        .div_exact(&q_pochhammer_inf(&(x.clone() * v.clone()), &q)?)?;

    let mut rhs_sum = TruncSeries::zero(d);
    for lam in interlacing_below(mu, nu) {
        let be = b_element(nu, &lam, &x, &a, &b.shift(1), &q)?;
        if be.is_zero() {
            continue;
        }
        let bs = b_star_element(mu, &lam, &v, &a.shift(1), &b, &q)?;
        rhs_sum = rhs_sum + be * bs;
    }
    let rhs = pre * rhs_sum;

    Ok((lhs, rhs, lambdas))
}
