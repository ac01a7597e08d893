//! Python bindings for the exact-arithmetic core.
//!
//! Everything crosses the boundary in exact form: rationals as fraction strings
//! ("3/7", "-2"), partitions as lists of parts, symmetric polynomials as lists of
//! (monomial-symmetric shape, coefficient) pairs in deterministic order, and grid
//! tables as the same JSON documents the CLI reads and writes.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use sqw_core::degen::{f_el, f_el_symbolic, f_tilde, f_tilde_symbolic, h_el, h_tilde};
use sqw_core::interp::{classify_grid, hook_value, pieri_residual, solve_f, Grid};
use sqw_core::mpoly::SymPoly;
use sqw_core::partitions::{ParamSeq, Partition, SeqLabel};
use sqw_core::sample::Sampler;
use sqw_core::scalar::{rat_from_str, Rat};
use sqw_core::sqw::{check_cauchy, f_skew, f_symbolic, h_value};
use sqw_core::suite;

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn partition(parts: Vec<usize>) -> PyResult<Partition> {
    Partition::new(parts).map_err(err)
}

fn rationals(values: &[String]) -> PyResult<Vec<Rat>> {
    values.iter().map(|s| rat_from_str(s).map_err(err)).collect()
}

/// Parameter lists are 0-based: the first entry is χ_0, matching the sequence
/// conventions of the core library.
fn sequence(label: SeqLabel, values: &[String]) -> PyResult<ParamSeq> {
    Ok(ParamSeq::new(label, rationals(values)?))
}

/// A symmetric polynomial as (shape, coefficient) pairs over the monomial basis.
fn poly_pairs(p: &SymPoly) -> Vec<(Vec<usize>, String)> {
    p.terms()
        .iter()
        .map(|(la, c)| (la.parts().to_vec(), c.to_string()))
        .collect()
}

/// F_{λ/μ}(x | 𝒜, ℬ) evaluated at rational points.
#[pyfunction]
fn f_value(
    lambda: Vec<usize>,
    mu: Vec<usize>,
    xs: Vec<String>,
    a: Vec<String>,
    b: Vec<String>,
    q: &str,
) -> PyResult<String> {
    let la = partition(lambda)?;
    let mu = partition(mu)?;
    let xs = rationals(&xs)?;
    let a = sequence(SeqLabel::A, &a)?;
    let b = sequence(SeqLabel::B, &b)?;
    let q = rat_from_str(q).map_err(err)?;
    Ok(f_skew(&la, &mu, &xs, &a, &b, &q).map_err(err)?.to_string())
}

/// F_{λ/μ} in n variables as monomial-symmetric coefficients.
#[pyfunction]
fn f_polynomial(
    lambda: Vec<usize>,
    mu: Vec<usize>,
    n: usize,
    a: Vec<String>,
    b: Vec<String>,
    q: &str,
) -> PyResult<Vec<(Vec<usize>, String)>> {
    let la = partition(lambda)?;
    let mu = partition(mu)?;
    let a = sequence(SeqLabel::A, &a)?;
    let b = sequence(SeqLabel::B, &b)?;
    let q = rat_from_str(q).map_err(err)?;
    let m = f_symbolic(&la, &mu, n, &a, &b, &q).map_err(err)?;
    Ok(poly_pairs(&SymPoly::from_mpoly(&m).map_err(err)?))
}

/// The one-parameter degeneration F̃_{λ/μ}(x | 𝒜, ∞) at rational points.
#[pyfunction]
fn f_tilde_value(
    lambda: Vec<usize>,
    mu: Vec<usize>,
    xs: Vec<String>,
    a: Vec<String>,
    q: &str,
) -> PyResult<String> {
    let la = partition(lambda)?;
    let mu = partition(mu)?;
    let xs = rationals(&xs)?;
    let a = sequence(SeqLabel::A, &a)?;
    let q = rat_from_str(q).map_err(err)?;
    Ok(f_tilde(&la, &mu, &xs, &a, &q).map_err(err)?.to_string())
}

/// F̃_{λ/μ} in n variables as monomial-symmetric coefficients.
#[pyfunction]
fn f_tilde_polynomial(
    lambda: Vec<usize>,
    mu: Vec<usize>,
    n: usize,
    a: Vec<String>,
    q: &str,
) -> PyResult<Vec<(Vec<usize>, String)>> {
    let la = partition(lambda)?;
    let mu = partition(mu)?;
    let a = sequence(SeqLabel::A, &a)?;
    let q = rat_from_str(q).map_err(err)?;
    let m = f_tilde_symbolic(&la, &mu, n, &a, &q).map_err(err)?;
    Ok(poly_pairs(&SymPoly::from_mpoly(&m).map_err(err)?))
}

/// The elementary-type limit F^el_{λ/μ}(r | 𝒞, d) at rational points.
#[pyfunction]
fn f_el_value(
    lambda: Vec<usize>,
    mu: Vec<usize>,
    rs: Vec<String>,
    c: Vec<String>,
    d: &str,
) -> PyResult<String> {
    let la = partition(lambda)?;
    let mu = partition(mu)?;
    let rs = rationals(&rs)?;
    let c = sequence(SeqLabel::C, &c)?;
    let d = rat_from_str(d).map_err(err)?;
    Ok(f_el(&la, &mu, &rs, &c, &d).map_err(err)?.to_string())
}

/// F^el_{λ/μ} in n variables as monomial-symmetric coefficients.
#[pyfunction]
fn f_el_polynomial(
    lambda: Vec<usize>,
    mu: Vec<usize>,
    n: usize,
    c: Vec<String>,
    d: &str,
) -> PyResult<Vec<(Vec<usize>, String)>> {
    let la = partition(lambda)?;
    let mu = partition(mu)?;
    let c = sequence(SeqLabel::C, &c)?;
    let d = rat_from_str(d).map_err(err)?;
    let m = f_el_symbolic(&la, &mu, n, &c, &d).map_err(err)?;
    Ok(poly_pairs(&SymPoly::from_mpoly(&m).map_err(err)?))
}

/// The nonzero diagonal value H_λ of the general family's vanishing grid.
#[pyfunction]
fn diagonal_value(
    lambda: Vec<usize>,
    a: Vec<String>,
    b: Vec<String>,
    q: &str,
    n: usize,
) -> PyResult<String> {
    let la = partition(lambda)?;
    let a = sequence(SeqLabel::A, &a)?;
    let b = sequence(SeqLabel::B, &b)?;
    let q = rat_from_str(q).map_err(err)?;
    Ok(h_value(&la, &a, &b, &q, n).map_err(err)?.to_string())
}

/// Diagonal value H̃_λ of the one-parameter degeneration.
#[pyfunction]
fn diagonal_value_tilde(lambda: Vec<usize>, a: Vec<String>, q: &str, n: usize) -> PyResult<String> {
    let la = partition(lambda)?;
    let a = sequence(SeqLabel::A, &a)?;
    let q = rat_from_str(q).map_err(err)?;
    Ok(h_tilde(&la, &a, &q, n).map_err(err)?.to_string())
}

/// Diagonal value H^el_λ of the elementary-type limit.
#[pyfunction]
fn diagonal_value_el(lambda: Vec<usize>, c: Vec<String>, d: &str, n: usize) -> PyResult<String> {
    let la = partition(lambda)?;
    let c = sequence(SeqLabel::C, &c)?;
    let d = rat_from_str(d).map_err(err)?;
    Ok(h_el(&la, &c, &d, n).map_err(err)?.to_string())
}

/// Checks the skew Cauchy identity mod t^{D+1} at a seeded random point.
#[pyfunction]
fn verify_cauchy(
    mu: Vec<usize>,
    nu: Vec<usize>,
    n: usize,
    m: usize,
    d: usize,
    seed: u64,
) -> PyResult<bool> {
    let mu = partition(mu)?;
    let nu = partition(nu)?;
    let mut s = Sampler::new(seed);
    Ok(check_cauchy(&mu, &nu, n, m, d, &mut s).map_err(err)?.pass())
}

/// Runs one acceptance criterion (1..=12); returns (index, name, pass, detail).
#[pyfunction]
fn run_criterion(index: usize, seed: u64) -> PyResult<(usize, String, bool, String)> {
    let o = suite::run_criterion(index, seed).map_err(err)?;
    Ok((o.index, o.name.to_string(), o.pass, o.detail))
}

/// Runs the full acceptance suite; returns a list of (index, name, pass, detail).
#[pyfunction]
fn run_suite(seed: u64) -> PyResult<Vec<(usize, String, bool, String)>> {
    Ok(suite::run_all(seed)
        .map_err(err)?
        .into_iter()
        .map(|o| (o.index, o.name.to_string(), o.pass, o.detail))
        .collect())
}

/// An interpolation grid table ℧(i;j), 1 ≤ i ≤ n, 0 ≤ j ≤ depth.
#[pyclass(name = "Grid", skip_from_py_object)]
#[derive(Clone)]
struct PyGrid {
    inner: Grid,
}

#[pymethods]
impl PyGrid {
    /// Geometric rows ℧(i;j) = c + a_i q^j.
    #[staticmethod]
    fn q_type(c: &str, q: &str, a: Vec<String>, depth: usize) -> PyResult<Self> {
        let c = rat_from_str(c).map_err(err)?;
        let q = rat_from_str(q).map_err(err)?;
        let a = rationals(&a)?;
        Ok(PyGrid {
            inner: Grid::q_type(&c, &q, &a, depth).map_err(err)?,
        })
    }

    /// Arithmetic rows ℧(i;j) = c_i + jd.
    #[staticmethod]
    fn linear_type(d: &str, c: Vec<String>, depth: usize) -> PyResult<Self> {
        let d = rat_from_str(d).map_err(err)?;
        let c = rationals(&c)?;
        Ok(PyGrid {
            inner: Grid::linear_type(&d, &c, depth).map_err(err)?,
        })
    }

    /// Parses the JSON table format used by the CLI.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let v: serde_json::Value = serde_json::from_str(text).map_err(err)?;
        Ok(PyGrid {
            inner: Grid::from_json(&v).map_err(err)?,
        })
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn depth(&self) -> usize {
        self.inner.depth()
    }

    /// ℧(i;j) as a fraction string (i is 1-based, j is 0-based).
    fn value(&self, i: usize, j: usize) -> PyResult<String> {
        Ok(self.inner.value(i, j).map_err(err)?.to_string())
    }

    fn set_value(&mut self, i: usize, j: usize, v: &str) -> PyResult<()> {
        let v = rat_from_str(v).map_err(err)?;
        self.inner.set_value(i, j, v).map_err(err)
    }

    fn nondegenerate(&self) -> bool {
        self.inner.nondegenerate()
    }

    /// The interpolation polynomial F_λ as monomial-symmetric coefficients.
    fn solve(&self, lambda: Vec<usize>) -> PyResult<Vec<(Vec<usize>, String)>> {
        let la = partition(lambda)?;
        Ok(poly_pairs(&solve_f(&self.inner, &la).map_err(err)?))
    }

    /// The hook-product value F_λ(℧(λ)).
    fn hook(&self, lambda: Vec<usize>) -> PyResult<String> {
        let la = partition(lambda)?;
        Ok(hook_value(&self.inner, &la).map_err(err)?.to_string())
    }

    /// The symbolic Pieri residual at level k (empty list means the rule holds).
    fn pieri_residual(&self, k: usize) -> PyResult<Vec<(Vec<usize>, String)>> {
        Ok(poly_pairs(&pieri_residual(&self.inner, k).map_err(err)?))
    }

    /// Classification as a JSON string: q-type, linear-type, or not-perfect.
    fn classify(&self) -> PyResult<String> {
        Ok(classify_grid(&self.inner).map_err(err)?.to_json().to_string())
    }

    fn __repr__(&self) -> String {
        format!("Grid(n={}, depth={})", self.inner.n(), self.inner.depth())
    }
}

#[pymodule]
fn sqw_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGrid>()?;
    m.add_function(wrap_pyfunction!(f_value, m)?)?;
    m.add_function(wrap_pyfunction!(f_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(f_tilde_value, m)?)?;
    m.add_function(wrap_pyfunction!(f_tilde_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(f_el_value, m)?)?;
    m.add_function(wrap_pyfunction!(f_el_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(diagonal_value, m)?)?;
    m.add_function(wrap_pyfunction!(diagonal_value_tilde, m)?)?;
    m.add_function(wrap_pyfunction!(diagonal_value_el, m)?)?;
    m.add_function(wrap_pyfunction!(verify_cauchy, m)?)?;
    m.add_function(wrap_pyfunction!(run_criterion, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    // The bindings are thin adapters; these tests cover the conversion layer without
    // needing a Python interpreter.

    #[test]
    fn poly_pairs_are_sorted_and_exact() {
        let g = Grid::q_type(
            &rat_from_str("1").unwrap(),
            &rat_from_str("2").unwrap(),
            &[rat_from_str("3").unwrap(), rat_from_str("5").unwrap()],
            4,
        )
        .unwrap();
        let f1 = solve_f(&g, &Partition::new(vec![1]).unwrap()).unwrap();
        // F_(1) = x1 + x2 − ℧(1;0) − ℧(2;0) = m[1] − 10.
        assert_eq!(
            poly_pairs(&f1),
            vec![(vec![], "-10".to_string()), (vec![1], "1".to_string())]
        );
    }

    #[test]
    fn sequences_are_zero_based() {
        let s = sequence(SeqLabel::A, &["7".into(), "11".into()]).unwrap();
        assert_eq!(s.get(0).unwrap(), rat_from_str("7").unwrap());
        assert_eq!(s.get(1).unwrap(), rat_from_str("11").unwrap());
    }
}
