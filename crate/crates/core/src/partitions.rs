//! Partitions, compositions, interlacing, parameter sequences, and evaluation points.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Rat, Scalar};

/// An integer partition: weakly decreasing positive parts, no trailing zeros stored.
/// Indexing past the length reads 0, matching the usual convention λ_r = 0 for r > l(λ).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition, stripping trailing zeros. Errors on increasing part lists.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(Error::Invalid(format!(
                "parts not weakly decreasing: {parts:?}"
            )));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: vec![] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// λ_r with 1-based index r; reads 0 past the length.
    pub fn part(&self, r: usize) -> usize {
        if r >= 1 && r <= self.parts.len() {
            self.parts[r - 1]
        } else {
            0
        }
    }

    /// Containment of Young diagrams: self ⊆ other.
    pub fn contained_in(&self, other: &Partition) -> bool {
        (1..=self.len()).all(|i| self.part(i) <= other.part(i))
    }

    /// Conjugate (transposed) partition.
    pub fn conjugate(&self) -> Partition {
        let cols = self.part(1);
        let parts = (1..=cols)
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count())
            .collect();
        Partition { parts }
    }

    /// λ + 1ⁿ: adds one box to each of the first n rows (requires l(λ) ≤ n).
    pub fn plus_column(&self, n: usize) -> Result<Partition> {
        if self.len() > n {
            return Err(Error::OutOfRange(format!(
                "partition has {} parts, cannot add a column of height {n}",
                self.len()
            )));
        }
        let parts = (1..=n).map(|i| self.part(i) + 1).collect();
        Partition::new(parts)
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl std::fmt::Debug for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Display::fmt(self, f)
    }
}

/// A fixed-length vector of signed integers (vertex-model edge labels).
pub type Composition = Vec<i64>;

/// True iff μ interlaces λ (written μ ≺ λ): λ_i ≥ μ_i ≥ λ_{i+1} for all i.
pub fn interlaces(lambda: &Partition, mu: &Partition) -> bool {
    let n = lambda.len().max(mu.len());
    (1..=n).all(|i| lambda.part(i) >= mu.part(i) && mu.part(i) >= lambda.part(i + 1))
}

/// All partitions with at most `max_len` parts and weight ≤ `max_weight`,
/// ordered by (weight, reverse-lexicographic).
pub fn enumerate_partitions(max_len: usize, max_weight: usize) -> Vec<Partition> {
    fn rec(
        prefix: &mut Vec<usize>,
        max_part: usize,
        rem_len: usize,
        rem_weight: usize,
        grouped: &mut [Vec<Partition>],
        weight: usize,
    ) {
        grouped[weight].push(Partition {
            parts: prefix.clone(),
        });
        if rem_len == 0 {
            return;
        }
        // Largest next parts first: within a fixed weight this yields reverse-lex order.
        for p in (1..=max_part.min(rem_weight)).rev() {
            prefix.push(p);
            rec(prefix, p, rem_len - 1, rem_weight - p, grouped, weight + p);
            prefix.pop();
        }
    }
    let mut grouped: Vec<Vec<Partition>> = vec![Vec::new(); max_weight + 1];
    rec(&mut Vec::new(), max_weight, max_len, max_weight, &mut grouped, 0);
    grouped.into_iter().flatten().collect()
}

/// Sequence label, matching the three parameter families used in formulas.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum SeqLabel {
    A,
    B,
    C,
}

/// A finite prefix of an infinite parameter sequence (a_0, a_1, …) with cheap
/// shift (τ) and inversion (bar) views. Indexing is 0-based: the first stored entry is a_0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParamSeq {
    label: SeqLabel,
    values: Vec<Rat>,
    offset: usize,
    inverted: bool,
}

impl ParamSeq {
    pub fn new(label: SeqLabel, values: Vec<Rat>) -> Self {
        ParamSeq {
            label,
            values,
            offset: 0,
            inverted: false,
        }
    }

    pub fn label(&self) -> SeqLabel {
        self.label
    }

    /// The r-th entry (after shift/inversion views). Fails loudly past the prefix.
    pub fn get(&self, r: usize) -> Result<Rat> {
        let idx = r + self.offset;
        let v = self
            .values
            .get(idx)
            .ok_or(Error::PrefixTooShort(idx))?
            .clone();
        if self.inverted {
            v.inv()
        } else {
            Ok(v)
        }
    }

    /// Entry embedded into an arbitrary scalar domain.
    pub fn get_in<S: Scalar>(&self, r: usize, proto: &S) -> Result<S> {
        Ok(proto.embed(&self.get(r)?))
    }

    /// The shift view τ^k: (χ_k, χ_{k+1}, …).
    pub fn shift(&self, k: usize) -> Self {
        let mut s = self.clone();
        s.offset += k;
        s
    }

    /// The inversion view: (χ_0⁻¹, χ_1⁻¹, …). Shift and inversion commute.
    pub fn bar(&self) -> Self {
        let mut s = self.clone();
        s.inverted = !s.inverted;
        s
    }
}

/// The q-geometric evaluation point 𝐱ⁿ_𝒜(μ) = (a_1 q^{μ_1−μ_2}, …, a_n q^{μ_n}).
pub fn grid_point_q(a: &ParamSeq, q: &Rat, mu: &Partition, n: usize) -> Result<Vec<Rat>> {
    if mu.len() > n {
        return Err(Error::OutOfRange(format!(
            "partition length {} exceeds rank {n}",
            mu.len()
        )));
    }
    (1..=n)
        .map(|i| {
            let e = (mu.part(i) - mu.part(i + 1)) as i64;
            Ok(a.get(i)? * q.powi(e)?)
        })
        .collect()
}

/// The linear evaluation point 𝐫ⁿ_𝒞(μ) = (c_1 + (μ_1−μ_2)d, …, c_n + μ_n d).
pub fn grid_point_lin(c: &ParamSeq, d: &Rat, mu: &Partition, n: usize) -> Result<Vec<Rat>> {
    if mu.len() > n {
        return Err(Error::OutOfRange(format!(
            "partition length {} exceeds rank {n}",
            mu.len()
        )));
    }
    (1..=n)
        .map(|i| {
            let e = (mu.part(i) - mu.part(i + 1)) as i64;
            Ok(c.get(i)? + d * crate::scalar::rat(e))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn interlacing_basics() {
        assert!(interlaces(&p(&[3, 1]), &p(&[2])));
        assert!(!interlaces(&p(&[3, 1]), &p(&[3, 2])));
        assert!(interlaces(&Partition::empty(), &Partition::empty()));
        assert!(interlaces(&p(&[1]), &Partition::empty()));
        assert!(!interlaces(&p(&[1, 1]), &Partition::empty()));
    }

    #[test]
    fn enumeration_order() {
        let got: Vec<_> = enumerate_partitions(2, 2);
        assert_eq!(
            got,
            vec![Partition::empty(), p(&[1]), p(&[2]), p(&[1, 1])]
        );
        assert_eq!(
            enumerate_partitions(1, 3),
            vec![Partition::empty(), p(&[1]), p(&[2]), p(&[3])]
        );
        assert_eq!(enumerate_partitions(0, 5), vec![Partition::empty()]);
    }

    #[test]
    fn conjugation() {
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        assert_eq!(p(&[3, 1]).conjugate().conjugate(), p(&[3, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
    }

    #[test]
    fn param_seq_views() {
        let s = ParamSeq::new(SeqLabel::A, vec![rat(2), rat(3), rat(5)]);
        assert_eq!(s.get(1).unwrap(), rat(3));
        assert_eq!(s.shift(1).get(1).unwrap(), rat(5));
        assert_eq!(s.bar().get(0).unwrap(), crate::scalar::ratq(1, 2));
        assert_eq!(s.bar().shift(2).get(0).unwrap(), crate::scalar::ratq(1, 5));
        assert_eq!(s.get(3), Err(Error::PrefixTooShort(3)));
    }

    #[test]
    fn evaluation_points() {
        let a = ParamSeq::new(SeqLabel::A, vec![rat(1), rat(3), rat(5)]);
        // μ=∅ → (a_1, a_2)
        assert_eq!(
            grid_point_q(&a, &rat(2), &Partition::empty(), 2).unwrap(),
            vec![rat(3), rat(5)]
        );
        // n=2, μ=(2,1), A=(·,3,5), q=2 → (6, 10)
        assert_eq!(
            grid_point_q(&a, &rat(2), &p(&[2, 1]), 2).unwrap(),
            vec![rat(6), rat(10)]
        );
        // n=2, μ=(2,1), C=(·,3,5), d=2 → (5, 7)
        assert_eq!(
            grid_point_lin(&a, &rat(2), &p(&[2, 1]), 2).unwrap(),
            vec![rat(5), rat(7)]
        );
        assert_eq!(
            grid_point_lin(&a, &rat(1), &p(&[3]), 1).unwrap(),
            vec![rat(6)]
        );
    }
}
