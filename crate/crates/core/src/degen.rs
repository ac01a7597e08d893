//! Two degenerations of the polynomial family: the ℬ→∞ interpolation q-Whittaker
//! polynomials F̃_{λ/μ}(x | 𝒜, ∞) and the ε→0 interpolation elementary polynomials
//! F^el_{λ/μ}(r | 𝒞, ∞), with their vanishing values, top-component oracles, and the
//! series-based limit consistency check.

use crate::error::Result;
use crate::mpoly::MPoly;
use crate::partitions::{
    enumerate_partitions, grid_point_lin, grid_point_q, interlaces, ParamSeq, Partition,
};
use crate::qkit::q_pochhammer;
use crate::scalar::{rat, Rat, Scalar};
use crate::series::TruncSeries;
use crate::sqw::interlacing_between;

// ---------------------------------------------------------------------------
// ℬ → ∞ family: F̃.
// ---------------------------------------------------------------------------

/// One-variable F̃_{λ/μ}(x | 𝒜, ∞) with 𝒜 given as a slice (`a[r-1]` is a_r):
/// ∏_r ∏_{i=1}^{k₁}(x − a_r q^{i−1}) · (q;q)_{k₃} / ((q;q)_{k₁}(q;q)_{k₂}) on μ ≺ λ.
///
/// The slice form lets the same core run with series-valued parameters in limit tests.
pub fn f_tilde_one_var<S: Scalar>(
    lambda: &Partition,
    mu: &Partition,
    x: &S,
    a: &[S],
    q: &S,
) -> Result<S> {
    if !interlaces(lambda, mu) {
        return Ok(q.zero_like());
    }
    let mut acc = q.one_like();
    for r in 1..=lambda.len() {
        let k1 = (lambda.part(r) - mu.part(r)) as i64;
        let k2 = (mu.part(r) - lambda.part(r + 1)) as i64;
        let k3 = (mu.part(r) - mu.part(r + 1)) as i64;
        if k1 > 0 {
            let ar = &a[r - 1];
            let mut qp = q.one_like();
            for _ in 0..k1 {
                acc = acc * (x.clone() - ar.clone() * qp.clone());
                qp = qp * q.clone();
            }
            acc = acc.div(&q_pochhammer(q, q, k1)?)?;
        }
        if k2 > 0 {
            acc = acc.div(&q_pochhammer(q, q, k2)?)?;
        }
        if k3 > 0 {
            acc = acc * q_pochhammer(q, q, k3)?;
        }
    }
    Ok(acc)
}

/// Multi-variable F̃ via the branching rule (parameter shift τ𝒜 per variable).
pub fn f_tilde_multi<S: Scalar>(
    lambda: &Partition,
    nu: &Partition,
    xs: &[S],
    a: &[S],
    q: &S,
) -> Result<S> {
    match xs.len() {
        0 => Ok(if lambda == nu {
            q.one_like()
        } else {
            q.zero_like()
        }),
        1 => f_tilde_one_var(lambda, nu, &xs[0], a, q),
        n => {
            if !nu.contained_in(lambda) || lambda.len() > nu.len() + n {
                return Ok(q.zero_like());
            }
            let mut acc = q.zero_like();
            for mu in interlacing_between(lambda, nu) {
                let head = f_tilde_one_var(lambda, &mu, &xs[0], a, q)?;
                if Scalar::is_zero(&head) {
                    continue;
                }
                acc = acc + head * f_tilde_multi(&mu, nu, &xs[1..], &a[1..], q)?;
            }
            Ok(acc)
        }
    }
}

fn seq_prefix<S: Scalar>(seq: &ParamSeq, len: usize, proto: &S) -> Result<Vec<S>> {
    (1..=len).map(|r| seq.get_in(r, proto)).collect()
}

/// F̃_{λ/ν}(x_1,…,x_n | 𝒜, ∞) with 𝒜 as a parameter sequence.
pub fn f_tilde<S: Scalar>(
    lambda: &Partition,
    nu: &Partition,
    xs: &[S],
    a: &ParamSeq,
    q: &S,
) -> Result<S> {
    if xs.is_empty() {
        return Ok(if lambda == nu { q.one_like() } else { q.zero_like() });
    }
    if !nu.contained_in(lambda) || lambda.len() > nu.len() + xs.len() {
        return Ok(q.zero_like());
    }
    // Along every nonzero branching chain the parameter index stays ≤ l(ν) + n.
    let a_vals = seq_prefix(a, nu.len() + xs.len(), q)?;
    f_tilde_multi(lambda, nu, xs, &a_vals, q)
}

/// F̃_{λ/ν} as a symbolic polynomial in n variables.
pub fn f_tilde_symbolic(
    lambda: &Partition,
    nu: &Partition,
    n: usize,
    a: &ParamSeq,
    q: &Rat,
) -> Result<MPoly> {
    let xs: Vec<MPoly> = (0..n).map(|i| MPoly::var(n, i)).collect();
    let qm = MPoly::constant(n, q.clone());
    f_tilde(lambda, nu, &xs, a, &qm)
}

/// Nonzero vanishing value H̃_λ(𝒜) = F̃_λ(𝐱ⁿ_𝒜(λ) | 𝒜, ∞):
/// (−1)^{λ_1} q^{(λ_1²−λ_1)/2} ∏_{i=1}^n a_i^{λ_i}
///   ∏_{i,j=1}^n (q^{λ_{i+1}−λ_i} a_{j+i}/a_i;q)_{λ_{j+i}−λ_{j+i+1}}.
pub fn h_tilde<S: Scalar>(lambda: &Partition, a: &ParamSeq, q: &S, n: usize) -> Result<S> {
    let l1 = lambda.part(1) as i64;
    let mut acc = q.powi(l1 * (l1 - 1) / 2)?;
    if l1 % 2 == 1 {
        acc = -acc;
    }
    for i in 1..=n {
        let e = lambda.part(i) as i64;
        if e != 0 {
            acc = acc * a.get_in(i, q)?.powi(e)?;
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            let len = (lambda.part(j + i) - lambda.part(j + i + 1)) as i64;
            if len == 0 {
                continue;
            }
            let gap = lambda.part(i + 1) as i64 - lambda.part(i) as i64;
            let base = q.powi(gap)? * a.get_in(j + i, q)?.div(&a.get_in(i, q)?)?;
            acc = acc * q_pochhammer(&base, q, len)?;
        }
    }
    Ok(acc)
}

/// Independent q-Whittaker oracle P_{λ/ν}(x_1,…,x_n; q, 0), built from the classical
/// branching weight x^{|λ|−|μ|}(q;q)_{μ_r−μ_{r+1}} / ((q;q)_{λ_r−μ_r}(q;q)_{μ_r−λ_{r+1}})
/// (no inhomogeneity, no parameter shifts): used to check top components of F̃.
pub fn qwhittaker<S: Scalar>(
    lambda: &Partition,
    nu: &Partition,
    xs: &[S],
    q: &S,
) -> Result<S> {
    fn one_var<S: Scalar>(lambda: &Partition, mu: &Partition, x: &S, q: &S) -> Result<S> {
        if !interlaces(lambda, mu) {
            return Ok(q.zero_like());
        }
        let deg = (lambda.weight() - mu.weight()) as i64;
        let mut acc = x.powi(deg)?;
        for r in 1..=lambda.len() {
            let k1 = (lambda.part(r) - mu.part(r)) as i64;
            let k2 = (mu.part(r) - lambda.part(r + 1)) as i64;
            let k3 = (mu.part(r) - mu.part(r + 1)) as i64;
            if k3 > 0 {
                acc = acc * q_pochhammer(q, q, k3)?;
            }
            if k1 > 0 {
                acc = acc.div(&q_pochhammer(q, q, k1)?)?;
            }
            if k2 > 0 {
                acc = acc.div(&q_pochhammer(q, q, k2)?)?;
            }
        }
        Ok(acc)
    }
    match xs.len() {
        0 => Ok(if lambda == nu {
            q.one_like()
        } else {
            q.zero_like()
        }),
        1 => one_var(lambda, nu, &xs[0], q),
        n => {
            if !nu.contained_in(lambda) || lambda.len() > nu.len() + n {
                return Ok(q.zero_like());
            }
            let mut acc = q.zero_like();
            for mu in interlacing_between(lambda, nu) {
                let head = one_var(lambda, &mu, &xs[0], q)?;
                if Scalar::is_zero(&head) {
                    continue;
                }
                acc = acc + head * qwhittaker(&mu, nu, &xs[1..], q)?;
            }
            Ok(acc)
        }
    }
}

/// Symbolic q-Whittaker oracle in n variables.
pub fn qwhittaker_symbolic(lambda: &Partition, n: usize, q: &Rat) -> Result<MPoly> {
    let xs: Vec<MPoly> = (0..n).map(|i| MPoly::var(n, i)).collect();
    let qm = MPoly::constant(n, q.clone());
    qwhittaker(lambda, &Partition::empty(), &xs, &qm)
}

// ---------------------------------------------------------------------------
// Elementary family: F^el.
// ---------------------------------------------------------------------------

fn factorial<S: Scalar>(k: i64, proto: &S) -> S {
    let mut acc = proto.one_like();
    for i in 2..=k {
        acc = acc * proto.embed_int(i);
    }
    acc
}

/// One-variable F^el_{λ/μ}(r | 𝒞, ∞) with 𝒞 given as a slice (`c[i-1]` is c_i):
/// ∏_i (μ_i−μ_{i+1})! ∏_{j=0}^{λ_i−μ_i−1}(r − c_i − jd) / ((λ_i−μ_i)!(μ_i−λ_{i+1})!) on μ ≺ λ.
pub fn f_el_one_var<S: Scalar>(
    lambda: &Partition,
    mu: &Partition,
    r: &S,
    c: &[S],
    d: &S,
) -> Result<S> {
    if !interlaces(lambda, mu) {
        return Ok(d.zero_like());
    }
    let mut acc = d.one_like();
    for i in 1..=lambda.len() {
        let k1 = (lambda.part(i) - mu.part(i)) as i64;
        let k2 = (mu.part(i) - lambda.part(i + 1)) as i64;
        let k3 = (mu.part(i) - mu.part(i + 1)) as i64;
        acc = acc * factorial(k3, d);
        acc = acc.div(&(factorial(k1, d) * factorial(k2, d)))?;
        let ci = &c[i - 1];
        for j in 0..k1 {
            acc = acc * (r.clone() - ci.clone() - d.clone() * d.embed_int(j));
        }
    }
    Ok(acc)
}

/// Multi-variable F^el via branching (parameter shift τ𝒞 per variable).
pub fn f_el_multi<S: Scalar>(
    lambda: &Partition,
    nu: &Partition,
    rs: &[S],
    c: &[S],
    d: &S,
) -> Result<S> {
    match rs.len() {
        0 => Ok(if lambda == nu {
            d.one_like()
        } else {
            d.zero_like()
        }),
        1 => f_el_one_var(lambda, nu, &rs[0], c, d),
        n => {
            if !nu.contained_in(lambda) || lambda.len() > nu.len() + n {
                return Ok(d.zero_like());
            }
            let mut acc = d.zero_like();
            for mu in interlacing_between(lambda, nu) {
                let head = f_el_one_var(lambda, &mu, &rs[0], c, d)?;
                if Scalar::is_zero(&head) {
                    continue;
                }
                acc = acc + head * f_el_multi(&mu, nu, &rs[1..], &c[1..], d)?;
            }
            Ok(acc)
        }
    }
}

/// F^el_{λ/ν}(r_1,…,r_n | 𝒞, ∞) with 𝒞 as a parameter sequence.
pub fn f_el<S: Scalar>(
    lambda: &Partition,
    nu: &Partition,
    rs: &[S],
    c: &ParamSeq,
    d: &S,
) -> Result<S> {
    if rs.is_empty() {
        return Ok(if lambda == nu { d.one_like() } else { d.zero_like() });
    }
    if !nu.contained_in(lambda) || lambda.len() > nu.len() + rs.len() {
        return Ok(d.zero_like());
    }
    let c_vals = seq_prefix(c, nu.len() + rs.len(), d)?;
    f_el_multi(lambda, nu, rs, &c_vals, d)
}

/// F^el_{λ/ν} as a symbolic polynomial in n variables.
pub fn f_el_symbolic(
    lambda: &Partition,
    nu: &Partition,
    n: usize,
    c: &ParamSeq,
    d: &Rat,
) -> Result<MPoly> {
    let rs: Vec<MPoly> = (0..n).map(|i| MPoly::var(n, i)).collect();
    let dm = MPoly::constant(n, d.clone());
    f_el(lambda, nu, &rs, c, &dm)
}

/// Nonzero vanishing value H^el_λ(𝒞, d) = F^el_λ(𝐫ⁿ_𝒞(λ) | 𝒞, ∞):
/// (−1)^{|λ|}(−d)^{λ_1} ∏_{i,j=1}^n ∏_{k=1}^{λ_{i+j}−λ_{i+j+1}} (c_{j+i} − c_i + d(λ_{i+1}−λ_i+k−1)).
pub fn h_el<S: Scalar>(lambda: &Partition, c: &ParamSeq, d: &S, n: usize) -> Result<S> {
    let mut acc = (-d.clone()).powi(lambda.part(1) as i64)?;
    if lambda.weight() % 2 == 1 {
        acc = -acc;
    }
    for i in 1..=n {
        for j in 1..=n {
            let len = (lambda.part(i + j) - lambda.part(i + j + 1)) as i64;
            let gap = lambda.part(i + 1) as i64 - lambda.part(i) as i64;
            for k in 1..=len {
                let shift = d.clone() * d.embed_int(gap + k - 1);
                acc = acc * (c.get_in(j + i, d)? - c.get_in(i, d)? + shift);
            }
        }
    }
    Ok(acc)
}

/// The constant ∏_{i≥1} (λ_i − λ_{i+1})! relating the elementary family to the monic
/// normalization: it equals both hook(λ)/H^el_λ on a linear grid and the factor making
/// the top homogeneous component of F^el_λ exactly e_{λ'}. (The branching weight
/// k₃!/(k₁!k₂!) differs from the monic weight (k₁+k₂)!/(k₁!k₂!) by the telescoping
/// gauge ∏(μ_i−μ_{i+1})! / ∏(λ_i−λ_{i+1})!, leaving this constant at μ = ∅.)
pub fn elementary_normalization(lambda: &Partition) -> Rat {
    let mut acc = rat(1);
    for i in 1..=lambda.len() {
        let k = (lambda.part(i) - lambda.part(i + 1)) as i64;
        for f in 2..=k {
            acc = acc * rat(f);
        }
    }
    acc
}

// ---------------------------------------------------------------------------
// Limit checks and vanishing tables.
// ---------------------------------------------------------------------------

/// One-variable F̃ for series-valued data whose (q;q)-denominators have positive
/// valuation (the ε-scaling regime): numerator and denominator are accumulated
/// separately and divided with `div_exact`, so callers must run at a guarded order and
/// trust only coefficients below order − val(denominator).
fn ft_one_series(
    lambda: &Partition,
    mu: &Partition,
    x: &TruncSeries,
    a: &[TruncSeries],
    q: &TruncSeries,
) -> Result<TruncSeries> {
    if !interlaces(lambda, mu) {
        return Ok(q.zero_like());
    }
    let mut num = q.one_like();
    let mut den = q.one_like();
    for r in 1..=lambda.len() {
        let k1 = (lambda.part(r) - mu.part(r)) as i64;
        let k2 = (mu.part(r) - lambda.part(r + 1)) as i64;
        let k3 = (mu.part(r) - mu.part(r + 1)) as i64;
        if k1 > 0 {
            let ar = &a[r - 1];
            let mut qp = q.one_like();
            for _ in 0..k1 {
                num = num * (x.clone() - ar.clone() * qp.clone());
                qp = qp * q.clone();
            }
            den = den * q_pochhammer(q, q, k1)?;
        }
        if k2 > 0 {
            den = den * q_pochhammer(q, q, k2)?;
        }
        if k3 > 0 {
            num = num * q_pochhammer(q, q, k3)?;
        }
    }
    num.div_exact(&den)
}

/// Multi-variable F̃ in the series regime (same branching as `f_tilde_multi`).
fn ft_multi_series(
    lambda: &Partition,
    nu: &Partition,
    xs: &[TruncSeries],
    a: &[TruncSeries],
    q: &TruncSeries,
) -> Result<TruncSeries> {
    match xs.len() {
        0 => Ok(if lambda == nu {
            q.one_like()
        } else {
            q.zero_like()
        }),
        1 => ft_one_series(lambda, nu, &xs[0], a, q),
        n => {
            if !nu.contained_in(lambda) || lambda.len() > nu.len() + n {
                return Ok(q.zero_like());
            }
            let mut acc = q.zero_like();
            for mu in interlacing_between(lambda, nu) {
                let head = ft_one_series(lambda, &mu, &xs[0], a, q)?;
                if Scalar::is_zero(&head) {
                    continue;
                }
                acc = acc + head * ft_multi_series(&mu, nu, &xs[1..], &a[1..], q)?;
            }
            Ok(acc)
        }
    }
}

/// exp(εu) as a truncated series in ε.
fn exp_series(u: &Rat, order: usize) -> TruncSeries {
    let mut coeffs = vec![Rat::from_integer(0.into()); order + 1];
    let mut term = rat(1);
    coeffs[0] = term.clone();
    for k in 1..=order {
        term = term * u / rat(k as i64);
        coeffs[k] = term.clone();
    }
    TruncSeries::from_coeffs(coeffs)
}

/// Computes F^el_{λ/μ}(r | 𝒞, ∞) through the scaling limit: evaluates F̃ with
/// x_i = e^{εr_i}, a_i = e^{εc_i}, q = e^{εd} as truncated series in ε, checks that the
/// series vanishes below order v = (|λ|−λ_1) − (|μ|−μ_1), and returns
/// (−d)^{λ_1−μ_1} · [ε^v] F̃.
pub fn f_el_from_limit(
    lambda: &Partition,
    mu: &Partition,
    rs: &[Rat],
    c: &ParamSeq,
    d: &Rat,
) -> Result<Rat> {
    if !mu.contained_in(lambda) || lambda.len() > mu.len() + rs.len() {
        return Ok(rat(0));
    }
    // Guard order: each branching step loses up to |λ| coefficients to div_exact, and
    // only coefficients up to |λ| are read off at the end.
    let order = lambda.weight() * (rs.len() + 1) + 4;
    let xs: Vec<TruncSeries> = rs.iter().map(|r| exp_series(r, order)).collect();
    let a_len = mu.len() + rs.len();
    let a_vals: Vec<TruncSeries> = (1..=a_len)
        .map(|i| Ok(exp_series(&c.get(i)?, order)))
        .collect::<Result<_>>()?;
    let q = exp_series(d, order);
    let series = ft_multi_series(lambda, mu, &xs, &a_vals, &q)?;
    let v = (lambda.weight() - lambda.part(1)) as i64 - (mu.weight() - mu.part(1)) as i64;
    if v < 0 {
        // |λ|−λ_1 ≥ |μ|−μ_1 whenever the value is nonzero; treat the rest as zero.
        return Ok(rat(0));
    }
    let v = v as usize;
    for k in 0..v {
        if !num_traits::Zero::is_zero(series.coeff(k)) {
            return Err(crate::error::Error::Invalid(format!(
                "scaling limit of F̃ did not vanish to order {v} for λ={lambda}, μ={mu}"
            )));
        }
    }
    let scale = Scalar::powi(&-d.clone(), (lambda.part(1) as i64) - (mu.part(1) as i64))?;
    Ok(scale * series.coeff(v))
}

/// Vanishing scan shared by both degenerate families.
pub struct DegenVanishing {
    pub partitions: Vec<Partition>,
    pub violations: Vec<(Partition, Partition)>,
    pub diagonal_failures: Vec<Partition>,
}

impl DegenVanishing {
    pub fn pass(&self) -> bool {
        self.violations.is_empty() && self.diagonal_failures.is_empty()
    }
}

/// F̃_λ(𝐱ⁿ_𝒜(μ)) over all λ, μ ∈ 𝕐ⁿ of weight ≤ wmax: zero unless λ ⊆ μ, diagonal H̃_λ.
pub fn vanishing_tilde(n: usize, wmax: usize, a: &ParamSeq, q: &Rat) -> Result<DegenVanishing> {
    let partitions = enumerate_partitions(n, wmax);
    let empty = Partition::empty();
    let mut violations = Vec::new();
    let mut diagonal_failures = Vec::new();
    for mu in &partitions {
        let point = grid_point_q(a, q, mu, n)?;
        for la in &partitions {
            let v = f_tilde(la, &empty, &point, a, q)?;
            if !la.contained_in(mu) && !Scalar::is_zero(&v) {
                violations.push((la.clone(), mu.clone()));
            }
            if la == mu {
                let h = h_tilde(la, a, q, n)?;
                if v != h || Scalar::is_zero(&v) {
                    diagonal_failures.push(la.clone());
                }
            }
        }
    }
    Ok(DegenVanishing {
        partitions,
        violations,
        diagonal_failures,
    })
}

/// F^el_λ(𝐫ⁿ_𝒞(μ)) over all λ, μ ∈ 𝕐ⁿ of weight ≤ wmax: zero unless λ ⊆ μ, diagonal H^el_λ.
pub fn vanishing_el(n: usize, wmax: usize, c: &ParamSeq, d: &Rat) -> Result<DegenVanishing> {
    let partitions = enumerate_partitions(n, wmax);
    let empty = Partition::empty();
    let mut violations = Vec::new();
    let mut diagonal_failures = Vec::new();
    for mu in &partitions {
        let point = grid_point_lin(c, d, mu, n)?;
        for la in &partitions {
            let v = f_el(la, &empty, &point, c, d)?;
            if !la.contained_in(mu) && !Scalar::is_zero(&v) {
                violations.push((la.clone(), mu.clone()));
            }
            if la == mu {
                let h = h_el(la, c, d, n)?;
                if v != h || Scalar::is_zero(&v) {
                    diagonal_failures.push(la.clone());
                }
            }
        }
    }
    Ok(DegenVanishing {
        partitions,
        violations,
        diagonal_failures,
    })
}
