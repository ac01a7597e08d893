//! Sparse multivariate polynomials and their symmetric-canonical form.
//!
//! [`MPoly`] is the computational workhorse: it implements [`Scalar`], so any generic
//! formula in the crate can be evaluated symbolically by passing variables as polynomials.
//! [`SymPoly`] is the canonical view of a symmetric polynomial — one entry per monomial
//! orbit, keyed by the sorted exponent vector — which doubles as its expansion in the
//! monomial-symmetric basis m_λ.

use std::collections::BTreeMap;

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::scalar::{Rat, Scalar};

/// A sparse polynomial in `nvars` variables over big rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<usize>, Rat>, // exponent vector (len nvars) → coefficient
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, r: Rat) -> Self {
        let mut p = MPoly::zero(nvars);
        if !num_traits::Zero::is_zero(&r) {
            p.terms.insert(vec![0; nvars], r);
        }
        p
    }

    /// The variable x_i (0-based i).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut exp = vec![0; nvars];
        exp[i] = 1;
        let mut p = MPoly::zero(nvars);
        p.terms.insert(exp, Rat::from_integer(1.into()));
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, Rat> {
        &self.terms
    }

    fn insert(&mut self, exp: Vec<usize>, c: Rat) {
        if num_traits::Zero::is_zero(&c) {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if num_traits::Zero::is_zero(e.get()) {
                    e.remove();
                }
            }
        }
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Rat::zero();
        for (exp, c) in &self.terms {
            let mut m = c.clone();
            for (e, x) in exp.iter().zip(point) {
                for _ in 0..*e {
                    m *= x;
                }
            }
            acc += m;
        }
        acc
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(mut self, rhs: MPoly) -> MPoly {
        assert_eq!(self.nvars, rhs.nvars);
        for (e, c) in rhs.terms {
            self.insert(e, c);
        }
        self
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(self, rhs: MPoly) -> MPoly {
        self + (-rhs)
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(mut self) -> MPoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, rhs: MPoly) -> MPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = MPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exp = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.insert(exp, ca * cb);
            }
        }
        out
    }
}

impl Scalar for MPoly {
    fn embed(&self, r: &Rat) -> Self {
        MPoly::constant(self.nvars, r.clone())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Only constant polynomials are invertible; every division performed by the generic
    /// formulas divides by parameter-only (variable-free) factors.
    fn inv(&self) -> Result<Self> {
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&vec![0; self.nvars][..]) {
                return Ok(MPoly::constant(self.nvars, c.recip()));
            }
        }
        Err(Error::DivisionByZero)
    }
}

/// A symmetric polynomial in canonical form: one coefficient per monomial orbit,
/// keyed by the exponents sorted decreasingly (i.e. by a partition of length ≤ nvars).
/// The term map *is* the expansion over the monomial-symmetric basis m_λ.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymPoly {
    nvars: usize,
    terms: BTreeMap<Partition, Rat>,
}

/// Basis choice for [`SymPoly::expand_basis`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SymBasis {
    MonomialSymmetric,
    Elementary,
}

impl SymPoly {
    pub fn zero(nvars: usize) -> Self {
        SymPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Partition, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Builds from monomial-symmetric coefficients directly.
    pub fn from_m_coeffs(nvars: usize, coeffs: BTreeMap<Partition, Rat>) -> Result<Self> {
        for lam in coeffs.keys() {
            if lam.len() > nvars {
                return Err(Error::OutOfRange(format!(
                    "m_{lam} does not exist in {nvars} variables"
                )));
            }
        }
        let mut terms = coeffs;
        terms.retain(|_, c| !num_traits::Zero::is_zero(c));
        Ok(SymPoly { nvars, terms })
    }

    /// Canonicalizes a polynomial, verifying it is symmetric under all permutations.
    pub fn from_mpoly(p: &MPoly) -> Result<Self> {
        let nvars = p.nvars();
        let mut terms: BTreeMap<Partition, Rat> = BTreeMap::new();
        for (exp, c) in p.terms() {
            let mut sorted = exp.clone();
            sorted.sort_unstable_by(|a, b| b.cmp(a));
            let lam = Partition::new(sorted).expect("sorted exponents");
            match terms.get(&lam) {
                None => {
                    terms.insert(lam, c.clone());
                }
                Some(prev) if prev == c => {}
                Some(_) => return Err(Error::NotSymmetric),
            }
        }
        // Every orbit must be fully populated in p.
        let orbit_total: usize = terms.keys().map(|lam| orbit_size(lam, nvars)).sum();
        if orbit_total != p.terms().len() {
            return Err(Error::NotSymmetric);
        }
        Ok(SymPoly { nvars, terms })
    }

    /// Expands back into a full (non-canonical) polynomial.
    pub fn to_mpoly(&self) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (lam, c) in &self.terms {
            for exp in orbit_exponents(lam, self.nvars) {
                out.insert(exp, c.clone());
            }
        }
        out
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[Rat]) -> Rat {
        self.to_mpoly().eval(point)
    }

    /// Coefficient of m_λ (zero if absent).
    pub fn m_coeff(&self, lam: &Partition) -> Rat {
        self.terms.get(lam).cloned().unwrap_or_else(Rat::zero)
    }

    /// Multiplies every coefficient by the scalar `c`.
    pub fn scale(&self, c: &Rat) -> SymPoly {
        if num_traits::Zero::is_zero(c) {
            return SymPoly::zero(self.nvars);
        }
        SymPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(l, v)| (l.clone(), v * c)).collect(),
        }
    }

    /// The top-degree homogeneous component. Errors on the zero polynomial.
    pub fn top_component(&self) -> Result<SymPoly> {
        let top = self
            .terms
            .keys()
            .map(Partition::weight)
            .max()
            .ok_or(Error::ZeroPolynomial)?;
        Ok(SymPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(l, _)| l.weight() == top)
                .map(|(l, c)| (l.clone(), c.clone()))
                .collect(),
        })
    }

    /// Expansion over the requested basis; reassembling the result reproduces `self`.
    pub fn expand_basis(&self, basis: SymBasis) -> Result<BTreeMap<Partition, Rat>> {
        match basis {
            SymBasis::MonomialSymmetric => Ok(self.terms.clone()),
            SymBasis::Elementary => {
                // Peel leading orbits: e_{λ'} has m-leading term m_λ with coefficient 1,
                // where "leading" is the lex-greatest exponent partition of a given degree.
                let mut rem = self.clone();
                let mut out = BTreeMap::new();
                while let Some(lam) = rem.lex_leading() {
                    let c = rem.m_coeff(&lam);
                    let idx = lam.conjugate();
                    let e = elementary_product(&idx, self.nvars);
                    rem = SymPoly::from_mpoly(
                        &(rem.to_mpoly() - e.to_mpoly() * MPoly::constant(self.nvars, c.clone())),
                    )?;
                    out.insert(idx, c);
                }
                Ok(out)
            }
        }
    }

    /// Reassemble from an expansion (inverse of `expand_basis`).
    pub fn assemble(
        nvars: usize,
        basis: SymBasis,
        coeffs: &BTreeMap<Partition, Rat>,
    ) -> Result<SymPoly> {
        match basis {
            SymBasis::MonomialSymmetric => SymPoly::from_m_coeffs(nvars, coeffs.clone()),
            SymBasis::Elementary => {
                let mut acc = MPoly::zero(nvars);
                for (idx, c) in coeffs {
                    acc = acc
                        + elementary_product(idx, nvars).to_mpoly()
                            * MPoly::constant(nvars, c.clone());
                }
                SymPoly::from_mpoly(&acc)
            }
        }
    }

    /// The lex-greatest key among the top-degree terms (None when zero).
    fn lex_leading(&self) -> Option<Partition> {
        self.terms
            .keys()
            .max_by(|a, b| {
                a.weight()
                    .cmp(&b.weight())
                    .then_with(|| a.parts().cmp(b.parts()))
            })
            .cloned()
    }
}

/// Number of distinct permutations of the exponent vector of m_λ in `nvars` variables.
fn orbit_size(lam: &Partition, nvars: usize) -> usize {
    let mut exp = lam.parts().to_vec();
    exp.resize(nvars, 0);
    let mut mult: BTreeMap<usize, usize> = BTreeMap::new();
    for e in &exp {
        *mult.entry(*e).or_default() += 1;
    }
    let fact = |k: usize| (1..=k).product::<usize>();
    fact(nvars) / mult.values().map(|&m| fact(m)).product::<usize>()
}

/// All distinct permutations of λ padded to `nvars` entries.
fn orbit_exponents(lam: &Partition, nvars: usize) -> Vec<Vec<usize>> {
    let mut exp = lam.parts().to_vec();
    exp.resize(nvars, 0);
    exp.sort_unstable();
    let mut out = Vec::new();
    loop {
        out.push(exp.clone());
        // next_permutation in ascending lex order
        let Some(i) = (0..nvars.saturating_sub(1)).rev().find(|&i| exp[i] < exp[i + 1]) else {
            break;
        };
        let j = (i + 1..nvars).rev().find(|&j| exp[j] > exp[i]).unwrap();
        exp.swap(i, j);
        exp[i + 1..].reverse();
    }
    out
}

/// The elementary symmetric polynomial e_k in `nvars` variables (0 if k > nvars).
pub fn elementary(k: usize, nvars: usize) -> SymPoly {
    if k > nvars {
        return SymPoly::zero(nvars);
    }
    let mut ones = vec![1usize; k];
    ones.resize(k, 1);
    let lam = Partition::new(ones).unwrap();
    let mut terms = BTreeMap::new();
    terms.insert(lam, Rat::from_integer(1.into()));
    SymPoly { nvars, terms }
}

/// e_μ = ∏ e_{μ_i}.
pub fn elementary_product(mu: &Partition, nvars: usize) -> SymPoly {
    let mut acc = MPoly::constant(nvars, Rat::from_integer(1.into()));
    for &part in mu.parts() {
        acc = acc * elementary(part, nvars).to_mpoly();
    }
    SymPoly::from_mpoly(&acc).expect("product of symmetric polynomials is symmetric")
}
