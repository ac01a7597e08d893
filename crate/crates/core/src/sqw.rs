//! Inhomogeneous spin q-Whittaker polynomials F_{λ/μ}, their duals F*, the companion
//! G-basis, the vanishing values H_λ, and the Cauchy / basis-transition verifiers.
//!
//! The one-variable function is a closed product over rows; more variables are handled
//! by the branching recursion over interlacing partitions. Everything is generic over
//! [`Scalar`], so the same code evaluates at rational points, produces symbolic
//! polynomials, and sums truncated power series for the Cauchy identity.

use crate::error::Result;
use crate::linsolve;
use crate::mpoly::MPoly;
use crate::partitions::{enumerate_partitions, grid_point_q, interlaces, ParamSeq, Partition};
use crate::qkit::{q_pochhammer, q_pochhammer_inf};
use crate::sample::Sampler;
use crate::scalar::{Rat, Scalar};
use crate::series::TruncSeries;
use crate::transfer::psi;

/// One-variable skew polynomial F_{λ/μ}(x | 𝒜, ℬ).
///
/// Zero unless μ ≺ λ; otherwise the row product
/// ∏_r b_{r−1}^{−k₁} ∏_{i=1}^{k₁}(x − a_r q^{i−1}) · (x/b_r;q)_{k₂} (q;q)_{k₃}
///        / ((q;q)_{k₁} (q;q)_{k₂} (a_{r+1}/b_r;q)_{k₃})
/// with k₁ = λ_r−μ_r, k₂ = μ_r−λ_{r+1}, k₃ = μ_r−μ_{r+1}. The x^{|λ|−|μ|}(a_r/x;q)_{k₁}
/// prefactor has been absorbed into the polynomial factors ∏(x − a_r q^{i−1}), so no
/// division by x ever occurs and the result is a polynomial in x.
pub fn f_one_var<S: Scalar>(
    lambda: &Partition,
    mu: &Partition,
    x: &S,
    a: &ParamSeq,
    b: &ParamSeq,
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
            acc = acc * b.get_in(r - 1, q)?.powi(-k1)?;
            let ar = a.get_in(r, q)?;
            let mut qp = q.one_like();
            for _ in 0..k1 {
                acc = acc * (x.clone() - ar.clone() * qp.clone());
                qp = qp * q.clone();
            }
            acc = acc.div(&q_pochhammer(q, q, k1)?)?;
        }
        if k2 > 0 {
            let xb = x.clone() * q.embed(&b.get(r)?).inv()?;
            acc = acc * q_pochhammer(&xb, q, k2)?.div(&q_pochhammer(q, q, k2)?)?;
        }
        if k3 > 0 {
            let ab = a.get_in(r + 1, q)?.div(&b.get_in(r, q)?)?;
            acc = acc * q_pochhammer(q, q, k3)?.div(&q_pochhammer(&ab, q, k3)?)?;
        }
    }
    Ok(acc)
}

/// All μ with μ ≺ λ and ν ⊆ μ (the support of one branching step above ν).
pub fn interlacing_between(lambda: &Partition, nu: &Partition) -> Vec<Partition> {
    if nu.len() > lambda.len() {
        return Vec::new();
    }
    let n = lambda.len();
    let mut out = Vec::new();
    let mut parts: Vec<usize> = Vec::with_capacity(n);
    fn rec(
        i: usize,
        n: usize,
        lambda: &Partition,
        nu: &Partition,
        parts: &mut Vec<usize>,
        out: &mut Vec<Partition>,
    ) {
        if i > n {
            out.push(Partition::new(parts.clone()).expect("ranges produce valid partitions"));
            return;
        }
        let lo = lambda.part(i + 1).max(nu.part(i));
        let hi = lambda.part(i);
        for v in lo..=hi {
            parts.push(v);
            rec(i + 1, n, lambda, nu, parts, out);
            parts.pop();
        }
    }
    rec(1, n, lambda, nu, &mut parts, &mut out);
    out
}

/// Skew polynomial F_{λ/ν}(x_1, …, x_n | 𝒜, ℬ) via the branching recursion
/// F_{λ/ν}(x_1,…,x_n) = Σ_{μ≺λ} F_{λ/μ}(x_1 | 𝒜,ℬ) F_{μ/ν}(x_2,…,x_n | τ𝒜,ℬ).
///
/// With no variables the result is the Kronecker delta δ_{λν}. Zero unless ν ⊆ λ and
/// l(λ) ≤ l(ν) + n.
pub fn f_skew<S: Scalar>(
    lambda: &Partition,
    nu: &Partition,
    xs: &[S],
    a: &ParamSeq,
    b: &ParamSeq,
    q: &S,
) -> Result<S> {
    match xs.len() {
        0 => Ok(if lambda == nu {
            q.one_like()
        } else {
            q.zero_like()
        }),
        1 => f_one_var(lambda, nu, &xs[0], a, b, q),
        n => {
            if !nu.contained_in(lambda) || lambda.len() > nu.len() + n {
                return Ok(q.zero_like());
            }
            let mut acc = q.zero_like();
            let shifted = a.shift(1);
            for mu in interlacing_between(lambda, nu) {
                let head = f_one_var(lambda, &mu, &xs[0], a, b, q)?;
                if Scalar::is_zero(&head) {
                    continue;
                }
                let tail = f_skew(&mu, nu, &xs[1..], &shifted, b, q)?;
                acc = acc + head * tail;
            }
            Ok(acc)
        }
    }
}

/// F_{λ/ν} as a symbolic polynomial in n variables (rational q and parameters).
pub fn f_symbolic(
    lambda: &Partition,
    nu: &Partition,
    n: usize,
    a: &ParamSeq,
    b: &ParamSeq,
    q: &Rat,
) -> Result<MPoly> {
    let xs: Vec<MPoly> = (0..n).map(|i| MPoly::var(n, i)).collect();
    let qm = MPoly::constant(n, q.clone());
    f_skew(lambda, nu, &xs, a, b, &qm)
}

/// Dual polynomial F*_{λ/μ}(y_1, …, y_m | 𝒜, ℬ) = ψ_λ(𝒜,ℬ)/ψ_μ(τ^m𝒜,ℬ) · F_{λ/μ}(y | 𝒜,ℬ).
pub fn f_dual<S: Scalar>(
    lambda: &Partition,
    mu: &Partition,
    ys: &[S],
    a: &ParamSeq,
    b: &ParamSeq,
    q: &S,
) -> Result<S> {
    let value = f_skew(lambda, mu, ys, a, b, q)?;
    if Scalar::is_zero(&value) {
        return Ok(value);
    }
    let num = psi(lambda, a, b, q)?;
    let den = psi(mu, &a.shift(ys.len()), b, q)?;
    Ok(num.div(&den)? * value)
}

/// The companion basis element G^n_μ(x_1,…,x_n | 𝒜,ℬ)
/// = ∏_{i=1}^n ∏_{r≥1} (x_i/b_r;q)_{μ_r−μ_{r+1}} / (a_i/b_r;q)_{μ_r−μ_{r+1}}.
pub fn g_value<S: Scalar>(
    mu: &Partition,
    xs: &[S],
    a: &ParamSeq,
    b: &ParamSeq,
    q: &S,
) -> Result<S> {
    let mut acc = q.one_like();
    for (i, x) in xs.iter().enumerate() {
        let ai = a.get_in(i + 1, q)?;
        for r in 1..=mu.len() {
            let k = (mu.part(r) - mu.part(r + 1)) as i64;
            if k == 0 {
                continue;
            }
            let br_inv = q.embed(&b.get(r)?).inv()?;
            let num = q_pochhammer(&(x.clone() * br_inv.clone()), q, k)?;
            let den = q_pochhammer(&(ai.clone() * br_inv), q, k)?;
            acc = acc * num.div(&den)?;
        }
    }
    Ok(acc)
}

/// The nonzero vanishing value H_λ(𝒜,ℬ) = F_λ(𝐱ⁿ_𝒜(λ) | 𝒜,ℬ):
/// (−1)^{λ_1} q^{λ_1(λ_1−1)/2} ∏_{i=1}^n (a_i/b_{i−1})^{λ_i}
///   ∏_{i,j=1}^n (q^{λ_{i+1}−λ_i} a_{j+i}/a_i;q)_{λ_{j+i}−λ_{j+i+1}} / (a_{j+i}/b_j;q)_{λ_{j+i}−λ_{j+i+1}}.
/// Requires the 𝒜-prefix up to index 2n.
pub fn h_value<S: Scalar>(
    lambda: &Partition,
    a: &ParamSeq,
    b: &ParamSeq,
    q: &S,
    n: usize,
) -> Result<S> {
    let l1 = lambda.part(1) as i64;
    let mut acc = q.powi(l1 * (l1 - 1) / 2)?;
    if l1 % 2 == 1 {
        acc = -acc;
    }
    for i in 1..=n {
        let e = lambda.part(i) as i64;
        if e != 0 {
            acc = acc * a.get_in(i, q)?.div(&b.get_in(i - 1, q)?)?.powi(e)?;
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            let len = (lambda.part(j + i) - lambda.part(j + i + 1)) as i64;
            if len == 0 {
                continue;
            }
            let gap = lambda.part(i + 1) as i64 - lambda.part(i) as i64;
            let num_base = q.powi(gap)? * a.get_in(j + i, q)?.div(&a.get_in(i, q)?)?;
            let den_base = a.get_in(j + i, q)?.div(&b.get_in(j, q)?)?;
            acc = acc
                * q_pochhammer(&num_base, q, len)?.div(&q_pochhammer(&den_base, q, len)?)?;
        }
    }
    Ok(acc)
}

/// Exhaustive vanishing table: F_λ(𝐱ⁿ_𝒜(μ)) over all λ, μ ∈ 𝕐ⁿ with weight ≤ wmax.
pub struct VanishingTable {
    pub partitions: Vec<Partition>,
    /// entries[μ-index][λ-index] = F_λ(𝐱ⁿ_𝒜(μ)).
    pub entries: Vec<Vec<Rat>>,
    /// (λ, μ) pairs with λ ⊄ μ where the value failed to vanish.
    pub violations: Vec<(Partition, Partition)>,
    /// Diagonal entries that differ from H_λ, or vanish.
    pub diagonal_failures: Vec<Partition>,
}

impl VanishingTable {
    pub fn pass(&self) -> bool {
        self.violations.is_empty() && self.diagonal_failures.is_empty()
    }
}

pub fn vanishing_table(
    n: usize,
    wmax: usize,
    a: &ParamSeq,
    b: &ParamSeq,
    q: &Rat,
) -> Result<VanishingTable> {
    let partitions = enumerate_partitions(n, wmax);
    let empty = Partition::empty();
    let mut entries = Vec::with_capacity(partitions.len());
    let mut violations = Vec::new();
    let mut diagonal_failures = Vec::new();
    for mu in &partitions {
        let point = grid_point_q(a, q, mu, n)?;
        let mut row = Vec::with_capacity(partitions.len());
        for la in &partitions {
            let v = f_skew(la, &empty, &point, a, b, q)?;
            if !la.contained_in(mu) && !Scalar::is_zero(&v) {
                violations.push((la.clone(), mu.clone()));
            }
            if la == mu {
                let h = h_value(la, a, b, q, n)?;
                if v != h || Scalar::is_zero(&v) {
                    diagonal_failures.push(la.clone());
                }
            }
            row.push(v);
        }
        entries.push(row);
    }
    Ok(VanishingTable {
        partitions,
        entries,
        violations,
        diagonal_failures,
    })
}

/// Transition data expressing each G^n_μ in the basis {F_λ : |λ| ≤ wmax}.
pub struct GfTransition {
    pub partitions: Vec<Partition>,
    /// coeffs[μ-index][λ-index] = c_{λμ} with G^n_μ = Σ_λ c_{λμ} F_λ.
    pub coeffs: Vec<Vec<Rat>>,
    /// c_{λμ} = 0 whenever λ ⊄ μ.
    pub triangular: bool,
    /// c_{μμ} ≠ 0 for every μ.
    pub diagonal_nonzero: bool,
    /// G^n_μ(x*) = Σ_λ c_{λμ} F_λ(x*) at a random off-grid point x*.
    pub identity_ok: bool,
}

impl GfTransition {
    pub fn pass(&self) -> bool {
        self.triangular && self.diagonal_nonzero && self.identity_ok
    }
}

/// Solves for the G→F transition coefficients from evaluations at the points 𝐱ⁿ_𝒜(ν),
/// then verifies containment-triangularity, nonzero diagonal, and the resulting
/// polynomial identity at an independent random point.
pub fn gf_transition(
    n: usize,
    wmax: usize,
    a: &ParamSeq,
    b: &ParamSeq,
    q: &Rat,
    sampler: &mut Sampler,
) -> Result<GfTransition> {
    let partitions = enumerate_partitions(n, wmax);
    let empty = Partition::empty();
    let count = partitions.len();
    // Evaluation matrix M[ν][λ] = F_λ(𝐱ⁿ_𝒜(ν)): lower-triangular in containment.
    let mut matrix = Vec::with_capacity(count);
    let mut g_rows = Vec::with_capacity(count);
    for nu in &partitions {
        let point = grid_point_q(a, q, nu, n)?;
        let mut row = Vec::with_capacity(count);
        for la in &partitions {
            row.push(f_skew(la, &empty, &point, a, b, q)?);
        }
        let mut g_row = Vec::with_capacity(count);
        for mu in &partitions {
            g_row.push(g_value(mu, &point, a, b, q)?);
        }
        matrix.push(row);
        g_rows.push(g_row);
    }
    let mut coeffs = Vec::with_capacity(count);
    for mu_idx in 0..count {
        let rhs: Vec<Rat> = (0..count).map(|nu_idx| g_rows[nu_idx][mu_idx].clone()).collect();
        coeffs.push(linsolve::solve(&matrix, &rhs)?);
    }
    let mut triangular = true;
    let mut diagonal_nonzero = true;
    for (mu_idx, mu) in partitions.iter().enumerate() {
        for (la_idx, la) in partitions.iter().enumerate() {
            let c = &coeffs[mu_idx][la_idx];
            if !la.contained_in(mu) && !Scalar::is_zero(c) {
                triangular = false;
            }
            if la_idx == mu_idx && Scalar::is_zero(c) {
                diagonal_nonzero = false;
            }
        }
    }
    // Off-grid spot check of G^n_μ = Σ_λ c_{λμ} F_λ as an identity of functions.
    let point = sampler.distinct_rationals(n);
    let f_vals: Vec<Rat> = partitions
        .iter()
        .map(|la| f_skew(la, &empty, &point, a, b, q))
        .collect::<Result<_>>()?;
    let mut identity_ok = true;
    for (mu_idx, mu) in partitions.iter().enumerate() {
        let lhs = g_value(mu, &point, a, b, q)?;
        let mut rhs = Rat::from_integer(0.into());
        for la_idx in 0..count {
            rhs += &coeffs[mu_idx][la_idx] * &f_vals[la_idx];
        }
        if lhs != rhs {
            identity_ok = false;
        }
    }
    Ok(GfTransition {
        partitions,
        coeffs,
        triangular,
        diagonal_nonzero,
        identity_ok,
    })
}

/// Outcome of a truncated Cauchy-identity check.
pub struct CauchyCheck {
    pub lhs: TruncSeries,
    pub rhs: TruncSeries,
    pub contributing: Vec<Partition>,
    pub q_hat: Rat,
    pub x_hat: Vec<Rat>,
    pub y_hat: Vec<Rat>,
    pub a: ParamSeq,
    pub b: ParamSeq,
}

impl CauchyCheck {
    pub fn pass(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Verifies the skew Cauchy identity
///   Σ_λ F_{λ/μ}(x|𝒜,ℬ) F*_{λ/ν}(y|ℬ̄,𝒜̄)
///   = ∏_{i,j} (a_i y_j;q)_∞ (x_i/b_j;q)_∞ / ((x_i y_j;q)_∞ (a_i/b_j;q)_∞)
///     · Σ_λ F*_{μ/λ}(y|ℬ̄,τⁿ𝒜̄) F_{ν/λ}(x|𝒜,τ^mℬ)
/// in ℚ[t]/(t^{D+1}) under x_i → t·x̂_i, y_j → t·ŷ_j, q → t·q̂.
///
/// The left sum is infinite; it is truncated using the t-adic bound
/// val(term) ≥ Σ_r max(0, λ_r−μ_r−n) + Σ_r max(0, λ_r−ν_r−m), which follows from the
/// factors ∏(x − a q^{i−1}) of the one-variable formula (only one factor per row per
/// variable has t-valuation 0). The right λ-sum is finite (λ ⊆ μ and λ ⊆ ν).
pub fn check_cauchy(
    mu: &Partition,
    nu: &Partition,
    n: usize,
    m: usize,
    d: usize,
    sampler: &mut Sampler,
) -> Result<CauchyCheck> {
    let lmax = (n + mu.len()).min(m + nu.len());
    let prefix = lmax + n + m + 3;
    let (q_hat, a, b) = sampler.parameter_pair(prefix, d.max(4) as i64);
    let x_hat = sampler.distinct_rationals(n);
    let y_hat = sampler.distinct_rationals(m);
    let q = TruncSeries::graded(q_hat.clone(), d);
    let xs: Vec<TruncSeries> = x_hat.iter().map(|r| TruncSeries::graded(r.clone(), d)).collect();
    let ys: Vec<TruncSeries> = y_hat.iter().map(|r| TruncSeries::graded(r.clone(), d)).collect();
    let a_bar = a.bar();
    let b_bar = b.bar();

    // Left side: λ ⊇ μ, λ ⊇ ν, l(λ) ≤ lmax, pruned by the valuation bound.
    let valuation_bound = |la: &Partition| -> usize {
        let mut bound = 0usize;
        for r in 1..=la.len() {
            bound += la.part(r).saturating_sub(mu.part(r) + n);
            bound += la.part(r).saturating_sub(nu.part(r) + m);
        }
        bound
    };
    let cap = (d + mu.part(1) + n + nu.part(1) + m) / 2 + 1;
    let mut lhs = TruncSeries::zero(d);
    let mut contributing = Vec::new();
    for la in enumerate_partitions(lmax, cap * lmax.max(1)) {
        if la.part(1) > cap
            || !mu.contained_in(&la)
            || !nu.contained_in(&la)
            || valuation_bound(&la) > d
        {
            continue;
        }
        let left = f_skew(&la, mu, &xs, &a, &b, &q)?;
        if Scalar::is_zero(&left) {
            continue;
        }
        let right = f_dual(&la, nu, &ys, &b_bar, &a_bar, &q)?;
        let term = left * right;
        if !Scalar::is_zero(&term) {
            contributing.push(la);
            lhs = lhs + term;
        }
    }

    // Right side: the infinite-product prefactor times the finite λ-sum.
    let mut rhs = TruncSeries::constant(Rat::from_integer(1.into()), d);
    for i in 1..=n {
        let ai = a.get(i)?;
        for j in 1..=m {
            let bj_inv = b.get(j)?.inv()?;
            let ay = TruncSeries::graded(&ai * &y_hat[j - 1], d);
            let xb = TruncSeries::graded(&x_hat[i - 1] * &bj_inv, d);
            let mut xy = TruncSeries::zero(d);
            if d >= 2 {
                let mut coeffs = vec![Rat::from_integer(0.into()); d + 1];
                coeffs[2] = &x_hat[i - 1] * &y_hat[j - 1];
                xy = TruncSeries::from_coeffs(coeffs);
            }
            let ab = TruncSeries::constant(&ai * &bj_inv, d);
            rhs = rhs * q_pochhammer_inf(&ay, &q)? * q_pochhammer_inf(&xb, &q)?;
            rhs = rhs.div(&q_pochhammer_inf(&xy, &q)?)?;
            rhs = rhs.div(&q_pochhammer_inf(&ab, &q)?)?;
        }
    }
    let mut rsum = TruncSeries::zero(d);
    let inner_cap = mu.weight().min(nu.weight());
    for la in enumerate_partitions(mu.len().min(nu.len()), inner_cap) {
        if !la.contained_in(mu) || !la.contained_in(nu) {
            continue;
        }
        let left = f_dual(mu, &la, &ys, &b_bar, &a_bar.shift(n), &q)?;
        if Scalar::is_zero(&left) {
            continue;
        }
        let right = f_skew(nu, &la, &xs, &a, &b.shift(m), &q)?;
        rsum = rsum + left * right;
    }
    rhs = rhs * rsum;

    Ok(CauchyCheck {
        lhs,
        rhs,
        contributing,
        q_hat,
        x_hat,
        y_hat,
        a,
        b,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::SymPoly;
    use crate::scalar::rat;
    use crate::transfer::b_element;

    fn params(len: usize, seed: u64) -> (Rat, ParamSeq, ParamSeq, Sampler) {
        let mut s = Sampler::new(seed);
        let (q, a, b) = s.parameter_pair(len, 6);
        (q, a, b, s)
    }

    #[test]
    fn one_variable_base_cases() {
        let (q, a, b, mut s) = params(4, 11);
        let x = s.rational();
        // F_{(1)/∅}(x) = (x − a_1)/(b_0 (1−q)).
        let la = Partition::new(vec![1]).unwrap();
        let got = f_one_var(&la, &Partition::empty(), &x, &a, &b, &q).unwrap();
        let expect = (&x - a.get(1).unwrap()) / (b.get(0).unwrap() * (rat(1) - &q));
        assert_eq!(got, expect);
        // Interlacing failure vanishes.
        let tall = Partition::new(vec![1, 1]).unwrap();
        assert!(Scalar::is_zero(
            &f_one_var(&tall, &Partition::empty(), &x, &a, &b, &q).unwrap()
        ));
        // Empty over empty is 1.
        assert_eq!(
            f_one_var(&Partition::empty(), &Partition::empty(), &x, &a, &b, &q).unwrap(),
            rat(1)
        );
    }

    #[test]
    fn one_variable_matches_row_operator() {
        // Independent code path: the one-variable closed product equals the
        // row-operator matrix element ⟨λ|B(x)|μ⟩ for all |λ|,|μ| ≤ 4.
        let (q, a, b, mut s) = params(7, 23);
        let parts = enumerate_partitions(4, 4);
        for _ in 0..3 {
            let x = s.rational();
            for la in &parts {
                for mu in &parts {
                    let lhs = f_one_var(la, mu, &x, &a, &b, &q).unwrap();
                    let rhs = b_element(la, mu, &x, &a, &b, &q).unwrap();
                    assert_eq!(lhs, rhs, "λ={la}, μ={mu}");
                }
            }
        }
    }

    #[test]
    fn branching_matches_operator_product() {
        // F_{λ/ν}(x₁,x₂) = Σ_μ ⟨λ|B(x₁|𝒜,ℬ)|μ⟩⟨μ|B(x₂|τ𝒜,ℬ)|ν⟩.
        let (q, a, b, mut s) = params(8, 37);
        let x1 = s.rational();
        let x2 = s.rational();
        let xs = [x1.clone(), x2.clone()];
        let parts = enumerate_partitions(3, 4);
        let mids = enumerate_partitions(3, 6);
        for la in &parts {
            for nu in &parts {
                let direct = f_skew(la, nu, &xs, &a, &b, &q).unwrap();
                let mut composed = rat(0);
                for mu in &mids {
                    composed += b_element(la, mu, &x1, &a, &b, &q).unwrap()
                        * b_element(mu, nu, &x2, &a.shift(1), &b, &q).unwrap();
                }
                assert_eq!(direct, composed, "λ={la}, ν={nu}");
            }
        }
    }

    #[test]
    fn symbolic_output_is_symmetric() {
        let (q, a, b, mut s) = params(7, 51);
        for la in enumerate_partitions(2, 4) {
            let p = f_symbolic(&la, &Partition::empty(), 2, &a, &b, &q).unwrap();
            let sym = SymPoly::from_mpoly(&p);
            assert!(sym.is_ok(), "F_{la} not symmetric");
            // Symbolic and numeric paths agree.
            let point = s.distinct_rationals(2);
            let numeric = f_skew(&la, &Partition::empty(), &point, &a, &b, &q).unwrap();
            assert_eq!(p.eval(&point), numeric);
        }
    }

    #[test]
    fn h_value_base_cases_and_grid_diagonal() {
        let (q, a, b, _s) = params(9, 67);
        // n=1, λ=(1): H = −a_1/b_0.
        let la1 = Partition::new(vec![1]).unwrap();
        assert_eq!(
            h_value(&la1, &a, &b, &q, 1).unwrap(),
            -(a.get(1).unwrap() / b.get(0).unwrap())
        );
        // Diagonal agreement with the direct evaluation, n = 2.
        for la in enumerate_partitions(2, 4) {
            let point = grid_point_q(&a, &q, &la, 2).unwrap();
            let direct = f_skew(&la, &Partition::empty(), &point, &a, &b, &q).unwrap();
            let closed = h_value(&la, &a, &b, &q, 2).unwrap();
            assert_eq!(direct, closed, "λ={la}");
            assert!(!Scalar::is_zero(&closed));
        }
    }

    #[test]
    fn g_value_rank_one() {
        let (q, a, b, mut s) = params(4, 71);
        let x = s.rational();
        let mu = Partition::new(vec![1]).unwrap();
        let got = g_value(&mu, &[x.clone()], &a, &b, &q).unwrap();
        let b1 = b.get(1).unwrap();
        let expect = (rat(1) - &x / &b1) / (rat(1) - a.get(1).unwrap() / &b1);
        assert_eq!(got, expect);
    }

    #[test]
    fn vanishing_table_small() {
        let (q, a, b, _s) = params(7, 83);
        let table = vanishing_table(2, 3, &a, &b, &q).unwrap();
        assert!(table.violations.is_empty(), "{:?}", table.violations);
        assert!(table.diagonal_failures.is_empty());
        // λ = ∅ row: always 1.
        for (mu_idx, _) in table.partitions.iter().enumerate() {
            assert_eq!(table.entries[mu_idx][0], rat(1));
        }
    }

    #[test]
    fn gf_transition_small_and_closed_form() {
        let (q, a, b, mut s) = params(8, 97);
        let t = gf_transition(2, 3, &a, &b, &q, &mut s).unwrap();
        assert!(t.triangular);
        assert!(t.diagonal_nonzero);
        assert!(t.identity_ok);
        // Closed form: c_{λμ} = ψ_λ(ℬ̄,𝒜̄) · F_λ(𝐱ⁿ_ℬ̄(μ) | ℬ̄,𝒜̄).
        let a_bar = a.bar();
        let b_bar = b.bar();
        for (mu_idx, mu) in t.partitions.iter().enumerate() {
            let point = grid_point_q(&b_bar, &q, mu, 2).unwrap();
            for (la_idx, la) in t.partitions.iter().enumerate() {
                let closed = psi(la, &b_bar, &a_bar, &q).unwrap()
                    * f_skew(la, &Partition::empty(), &point, &b_bar, &a_bar, &q).unwrap();
                assert_eq!(t.coeffs[mu_idx][la_idx], closed, "λ={la}, μ={mu}");
            }
        }
    }

    #[test]
    fn cauchy_straight_small() {
        let mut s = Sampler::new(5);
        let check = check_cauchy(&Partition::empty(), &Partition::empty(), 1, 1, 6, &mut s).unwrap();
        assert_eq!(check.lhs, check.rhs);
        // Because q is graded too, every λ with the first column ≤ 1 contributes at
        // order t⁰ and the constant coefficient telescopes to ∏ 1/(1−a_i/b_j).
        let expected_t0 =
            (rat(1) - check.a.get(1).unwrap() / check.b.get(1).unwrap()).recip();
        assert_eq!(check.lhs.coeff(0), &expected_t0);
        assert!(check.contributing.len() > 1);
    }

    #[test]
    fn cauchy_skew_small() {
        let mut s = Sampler::new(9);
        let mu = Partition::new(vec![1]).unwrap();
        let check = check_cauchy(&mu, &Partition::empty(), 1, 1, 6, &mut s).unwrap();
        assert_eq!(check.lhs, check.rhs);
        let nu = Partition::new(vec![1]).unwrap();
        let check2 = check_cauchy(&mu, &nu, 1, 1, 6, &mut s).unwrap();
        assert_eq!(check2.lhs, check2.rhs);
    }
}
