//! JSON forms of matrices, vectors, states, Hamiltonians and saturating specs.
//!
//! Matrices are `{"dim": n, "re": [...], "im": [...]}` with `n²` row-major
//! entries per part; vectors are `{"re": [...], "im": [...]}`. Density
//! matrices and Hamiltonians both use the matrix form.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::{c, ComplexMatrix, ComplexVector};
use crate::saturation::SaturatingSpec;
use crate::states::{DensityMatrix, Hamiltonian};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub dim: usize,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorJson {
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl From<&ComplexMatrix> for MatrixJson {
    fn from(m: &ComplexMatrix) -> Self {
        let n = m.nrows();
        let mut re = Vec::with_capacity(n * n);
        let mut im = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..m.ncols() {
                re.push(m[(i, j)].re);
                im.push(m[(i, j)].im);
            }
        }
        Self { dim: n, re, im }
    }
}

impl TryFrom<&MatrixJson> for ComplexMatrix {
    type Error = Error;

    fn try_from(m: &MatrixJson) -> Result<Self> {
        let n = m.dim;
        if n == 0 || m.re.len() != n * n || m.im.len() != n * n {
            return Err(Error::Schema(format!(
                "matrix of dim {n} needs {} real and imaginary entries, got {} and {}",
                n * n,
                m.re.len(),
                m.im.len()
            )));
        }
        let entries: Vec<_> = m.re.iter().zip(&m.im).map(|(&a, &b)| c(a, b)).collect();
        Ok(ComplexMatrix::from_row_slice(n, n, &entries))
    }
}

impl From<&ComplexVector> for VectorJson {
    fn from(v: &ComplexVector) -> Self {
        Self {
            re: v.iter().map(|z| z.re).collect(),
            im: v.iter().map(|z| z.im).collect(),
        }
    }
}

impl TryFrom<&VectorJson> for ComplexVector {
    type Error = Error;

    fn try_from(v: &VectorJson) -> Result<Self> {
        if v.re.len() != v.im.len() || v.re.is_empty() {
            return Err(Error::Schema(format!(
                "vector parts have lengths {} and {}",
                v.re.len(),
                v.im.len()
            )));
        }
        Ok(ComplexVector::from_iterator(
            v.re.len(),
            v.re.iter().zip(&v.im).map(|(&a, &b)| c(a, b)),
        ))
    }
}

impl From<&DensityMatrix> for MatrixJson {
    fn from(rho: &DensityMatrix) -> Self {
        rho.matrix().into()
    }
}

impl From<&Hamiltonian> for MatrixJson {
    fn from(h: &Hamiltonian) -> Self {
        h.matrix().into()
    }
}

pub fn density_matrix_from_json(m: &MatrixJson) -> Result<DensityMatrix> {
    DensityMatrix::new(m.try_into()?)
}

pub fn hamiltonian_from_json(m: &MatrixJson) -> Result<Hamiltonian> {
    Hamiltonian::new(m.try_into()?)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SaturatingSpecJson {
    pub hamiltonian: MatrixJson,
    pub level0: usize,
    pub level1: usize,
    pub delta: f64,
    pub weights: Vec<f64>,
    pub pairing: Vec<(VectorJson, VectorJson)>,
}

impl From<&SaturatingSpec> for SaturatingSpecJson {
    fn from(s: &SaturatingSpec) -> Self {
        Self {
            hamiltonian: (&s.hamiltonian).into(),
            level0: s.level0,
            level1: s.level1,
            delta: s.delta,
            weights: s.weights.clone(),
            pairing: s.pairing.iter().map(|(a, b)| (a.into(), b.into())).collect(),
        }
    }
}

impl TryFrom<&SaturatingSpecJson> for SaturatingSpec {
    type Error = Error;

    fn try_from(s: &SaturatingSpecJson) -> Result<Self> {
        let pairing = s
            .pairing
            .iter()
            .map(|(a, b)| Ok((a.try_into()?, b.try_into()?)))
            .collect::<Result<_>>()?;
        Ok(Self {
            hamiltonian: hamiltonian_from_json(&s.hamiltonian)?,
            level0: s.level0,
            level1: s.level1,
            delta: s.delta,
            weights: s.weights.clone(),
            pairing,
        })
    }
}

/// Deserialize, reporting failures as schema errors with line and column.
pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Schema(format!("{}: {e}", path.display())))?;
    parse_json(&text).map_err(|e| match e {
        Error::Schema(msg) => Error::Schema(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn read_spec(path: &Path) -> Result<SaturatingSpec> {
    let json: SaturatingSpecJson = read_json(path)?;
    (&json).try_into()
}

pub fn read_state(path: &Path) -> Result<DensityMatrix> {
    density_matrix_from_json(&read_json(path)?)
}

pub fn read_hamiltonian(path: &Path) -> Result<Hamiltonian> {
    hamiltonian_from_json(&read_json(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::frobenius;

    #[test]
    fn matrix_round_trip_is_row_major() {
        let m = ComplexMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(2.0, 0.5), c(3.0, -0.5), c(4.0, 0.0)]);
        let json = MatrixJson::from(&m);
        assert_eq!(json.re, vec![1.0, 2.0, 3.0, 4.0]);
        let back = ComplexMatrix::try_from(&json).unwrap();
        assert_eq!(frobenius(&(back - m)), 0.0);
    }

    #[test]
    fn schema_errors_carry_position() {
        let err = parse_json::<MatrixJson>("{\n  \"dim\": 2,\n  \"re\": [1, 2]\n}").unwrap_err();
        match err {
            Error::Schema(msg) => assert!(msg.contains("line"), "{msg}"),
            other => panic!("{other:?}"),
        }
        let short = MatrixJson {
            dim: 2,
            re: vec![1.0],
            im: vec![0.0],
        };
        assert!(matches!(ComplexMatrix::try_from(&short), Err(Error::Schema(_))));
    }

    #[test]
    fn spec_round_trip() {
        let h = Hamiltonian::diagonal(&[0.0, 0.0, 1.0, 1.0]).unwrap();
        let spec = SaturatingSpec::with_level_bases(h, 0, 1, 0.5, vec![0.5, 0.5]).unwrap();
        let text = serde_json::to_string(&SaturatingSpecJson::from(&spec)).unwrap();
        let back = SaturatingSpec::try_from(&parse_json::<SaturatingSpecJson>(&text).unwrap()).unwrap();
        assert_eq!(back.weights, spec.weights);
        assert_eq!(back.pairing, spec.pairing);
    }
}
