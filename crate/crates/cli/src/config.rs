//! Configuration: which root datum and real form to work with.

use num_rational::Rational64;
use orbint::{CartanDatum, CharacterLattice, Error, RealFormSpec, Result};
use serde::{Deserialize, Serialize};

/// A rational entry, kept as written so configs round-trip verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalInput {
    Integer(i64),
    Text(String),
}

impl RationalInput {
    pub fn value(&self) -> Result<Rational64> {
        match self {
            RationalInput::Integer(n) => Ok(Rational64::from_integer(*n)),
            RationalInput::Text(s) => s.trim().parse::<Rational64>().map_err(|_| Error::Parse {
                what: "rational",
                input: s.clone(),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DatumConfig {
    Named(String),
    Matrix {
        matrix: Vec<Vec<i64>>,
        symmetrizer: Vec<RationalInput>,
    },
}

impl DatumConfig {
    pub fn build(&self) -> Result<CartanDatum> {
        match self {
            DatumConfig::Named(name) => CartanDatum::named(name),
            DatumConfig::Matrix {
                matrix,
                symmetrizer,
            } => {
                let d = symmetrizer
                    .iter()
                    .map(RationalInput::value)
                    .collect::<Result<Vec<_>>>()?;
                CartanDatum::new(matrix.clone(), d)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RealFormConfig {
    Preset(String),
    /// Indices into the root list: positive roots by height, then their negatives.
    CompactRoots {
        compact_roots: Vec<usize>,
    },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verbosity {
    Quiet,
    #[default]
    Normal,
    Verbose,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub datum: Option<DatumConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub real_form: Option<RealFormConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spin_sign: Option<i8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<CharacterLattice>,
    #[serde(default)]
    pub verbosity: Verbosity,
}

impl Config {
    pub fn parse(text: &str) -> Result<Config> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            what: "config",
            input: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }

    pub fn datum(&self) -> Result<CartanDatum> {
        match (&self.datum, &self.real_form) {
            (Some(d), _) => d.build(),
            (None, Some(RealFormConfig::Preset(_))) => Ok(self.spec()?.datum().clone()),
            _ => Err(Error::InvalidDatum(
                "no datum configured (use --datum, --preset or --config)".into(),
            )),
        }
    }

    /// Resolves the real form. A datum without a real form means its compact form.
    pub fn spec(&self) -> Result<RealFormSpec> {
        let spec = match (&self.real_form, &self.datum) {
            (Some(RealFormConfig::Preset(name)), datum) => {
                let spec = RealFormSpec::preset(name)?;
                if let Some(d) = datum {
                    if d.build()?.rows() != spec.datum().rows() {
                        return Err(Error::InvalidRealForm(format!(
                            "preset {name} does not match the configured datum"
                        )));
                    }
                }
                spec
            }
            (Some(RealFormConfig::CompactRoots { compact_roots }), Some(d)) => {
                RealFormSpec::new(d.build()?, compact_roots, 1)?
            }
            (Some(RealFormConfig::CompactRoots { .. }), None) => {
                return Err(Error::InvalidRealForm(
                    "compact root indices need a datum".into(),
                ))
            }
            (None, Some(d)) => {
                let datum = d.build()?;
                let all: Vec<usize> = (0..datum.roots().len()).collect();
                RealFormSpec::new(datum, &all, 1)?
            }
            (None, None) => {
                return Err(Error::InvalidRealForm(
                    "no real form configured (use --preset or --config)".into(),
                ))
            }
        };
        let spec = match self.spin_sign {
            Some(s) => spec.with_spin_sign(s)?,
            None => spec,
        };
        Ok(match self.lattice {
            Some(l) => spec.with_lattice(l),
            None => spec,
        })
    }
}
