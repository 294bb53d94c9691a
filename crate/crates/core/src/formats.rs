//! JSON file formats.
//!
//! Rationals are written as strings (`"3"`, `"-1/2"`); integers are also
//! accepted on input. Output is canonical: object keys sorted, two-space
//! indentation, trailing newline. Every document is parsed back and compared
//! before it is returned.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::exactalg::Matrix;
use crate::kronecker::KroneckerModule;
use crate::linsys::ProjSubspace;
use crate::poly::LinForm;
use crate::scalar::{format_rational, parse_rational, Field, Rational};
use crate::schemes::{FatPoint, PointConfig, SimplePoint};

/// A rational number in a JSON document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q(pub Rational);

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(Q(Rational::from_i64(v))),
            Raw::Text(s) => parse_rational(&s).map(Q).map_err(serde::de::Error::custom),
        }
    }
}

fn qs<const N: usize>(v: &[Rational; N]) -> [Q; N] {
    std::array::from_fn(|i| Q(v[i].clone()))
}

fn rs<const N: usize>(v: &[Q; N]) -> [Rational; N] {
    std::array::from_fn(|i| v[i].0.clone())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FatPointFile {
    /// Redundant with the first chart column; checked when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub support: Option<[Q; 3]>,
    /// Row-major; column 0 is the support.
    pub chart: [[Q; 3]; 3],
    /// Coefficients of `h`, from `y^0` upward.
    #[serde(default)]
    pub h: Vec<Q>,
    pub mult: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub degree: usize,
    pub simple: Vec<[Q; 3]>,
    #[serde(default)]
    pub fat: Vec<FatPointFile>,
}

impl ConfigFile {
    pub fn from_config(cfg: &PointConfig<Rational>) -> Self {
        ConfigFile {
            degree: cfg.degree(),
            simple: cfg.simple().iter().map(|p| qs(p.coords())).collect(),
            fat: cfg
                .fat()
                .iter()
                .map(|f| FatPointFile {
                    support: Some(qs(f.support().coords())),
                    chart: std::array::from_fn(|i| std::array::from_fn(|j| Q(f.chart()[(i, j)].clone()))),
                    h: f.h().iter().cloned().map(Q).collect(),
                    mult: f.mult(),
                })
                .collect(),
        }
    }

    pub fn to_config(&self) -> Result<PointConfig<Rational>, Error> {
        let simple = self
            .simple
            .iter()
            .map(|p| SimplePoint::new(rs(p)))
            .collect::<Result<_, _>>()?;
        let fat = self
            .fat
            .iter()
            .map(|f| {
                let chart = Matrix::from_rows(f.chart.iter().map(|r| rs(r).to_vec()).collect(), 3)?;
                let point = FatPoint::new(chart, f.h.iter().map(|q| q.0.clone()).collect(), f.mult)?;
                if let Some(s) = &f.support {
                    if SimplePoint::new(rs(s))? != point.support() {
                        return Err(Error::InvalidPoint("support is not the first chart column".into()));
                    }
                }
                Ok(point)
            })
            .collect::<Result<_, Error>>()?;
        PointConfig::new(self.degree, simple, fat)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KroneckerFile {
    pub n: usize,
    /// Row-major; each entry is the coefficient triple of a linear form.
    pub entries: Vec<Vec<[Q; 3]>>,
}

impl KroneckerFile {
    pub fn from_module(phi: &KroneckerModule<Rational>) -> Self {
        KroneckerFile {
            n: phi.n(),
            entries: phi
                .entries()
                .iter()
                .map(|row| row.iter().map(|l| qs(&l.coeffs)).collect())
                .collect(),
        }
    }

    pub fn to_module(&self) -> Result<KroneckerModule<Rational>, Error> {
        if self.entries.len() != self.n {
            return Err(Error::Format(format!(
                "n = {} but {} rows given",
                self.n,
                self.entries.len()
            )));
        }
        KroneckerModule::new(
            self.entries
                .iter()
                .map(|row| row.iter().map(|c| LinForm::new(rs(c))).collect())
                .collect(),
        )
    }
}

/// A projective subspace by its echelon-form functionals.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceFile {
    pub ambient_dim: usize,
    pub codim: usize,
    pub functionals: Vec<Vec<Q>>,
}

impl SubspaceFile {
    pub fn from_subspace(s: &ProjSubspace<Rational>) -> Self {
        let f = s.functionals();
        SubspaceFile {
            ambient_dim: s.ambient_dim(),
            codim: s.codim(),
            functionals: (0..f.rows())
                .map(|i| f.row(i).iter().cloned().map(Q).collect())
                .collect(),
        }
    }

    pub fn to_subspace(&self) -> Result<ProjSubspace<Rational>, Error> {
        let rows = self
            .functionals
            .iter()
            .map(|r| r.iter().map(|q| q.0.clone()).collect())
            .collect();
        let s = ProjSubspace::new(self.ambient_dim, &Matrix::from_rows(rows, self.ambient_dim + 1)?)?;
        if s.codim() != self.codim {
            return Err(Error::Format(format!(
                "codim {} declared, functionals have rank {}",
                self.codim,
                s.codim()
            )));
        }
        Ok(s)
    }
}

/// Input of a local freeness query.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalfreeInput {
    pub f: String,
    /// Coefficients of `h`, from `y^0` upward.
    #[serde(default)]
    pub h: Vec<Q>,
    pub mult: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalfreeOutput {
    pub member: bool,
    pub regular: bool,
    pub u0: Option<String>,
    pub free: Option<bool>,
    pub oracle: bool,
    pub truncation: usize,
}

/// Canonical JSON for `value`, verified by a parse round trip.
pub fn to_canonical_json<S>(value: &S) -> Result<String, Error>
where
    S: Serialize + DeserializeOwned + PartialEq,
{
    let tree = serde_json::to_value(value).map_err(|e| Error::Format(e.to_string()))?;
    let mut text = serde_json::to_string_pretty(&tree).map_err(|e| Error::Format(e.to_string()))?;
    text.push('\n');
    let back: S = serde_json::from_str(&text).map_err(|e| Error::Format(format!("output does not re-parse: {e}")))?;
    if &back != value {
        return Err(Error::Format("output does not round-trip".into()));
    }
    Ok(text)
}

pub fn from_json<S: DeserializeOwned>(text: &str) -> Result<S, Error> {
    serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
}

pub fn read_config(text: &str) -> Result<PointConfig<Rational>, Error> {
    from_json::<ConfigFile>(text)?.to_config()
}

pub fn write_config(cfg: &PointConfig<Rational>) -> Result<String, Error> {
    to_canonical_json(&ConfigFile::from_config(cfg))
}
