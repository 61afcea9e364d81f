//! JSON schemas for input files and emitted reports. Rationals travel as
//! "p/q" strings; integers are also accepted on input.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::QMatrix;
use crate::covering::TruncSeries;
use crate::primitives::Layer;
use crate::seifert::{Ring, SeifertForm, SeifertModule, Violation};
use crate::witt::invariants::{InvariantReport, Verdict, WittReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InputError {
    #[error("schema: {0}")]
    Schema(String),
    #[error("invalid input: {0}")]
    Violation(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum Projections {
    Blocks { sizes: Vec<usize> },
    Matrices { pi: Vec<QMatrix> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormSpec {
    pub zeta: i8,
    pub phi: QMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeifertInputFile {
    pub mu: usize,
    pub ring: Ring,
    pub dim: usize,
    pub s: QMatrix,
    pub projections: Projections,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<FormSpec>,
}

fn square(name: &str, m: &QMatrix, n: usize) -> Result<(), InputError> {
    if m.rows() != n || (n > 0 && m.cols() != n) {
        return Err(InputError::Schema(format!("{name} must be {n} x {n}")));
    }
    Ok(())
}

impl SeifertInputFile {
    pub fn parse(text: &str) -> Result<Self, InputError> {
        let f: SeifertInputFile = serde_json::from_str(text).map_err(|e| InputError::Schema(e.to_string()))?;
        f.check_shape()?;
        Ok(f)
    }

    /// Shape constraints that belong to the schema rather than the algebra.
    pub fn check_shape(&self) -> Result<(), InputError> {
        if self.mu == 0 {
            return Err(InputError::Schema("mu must be positive".into()));
        }
        square("s", &self.s, self.dim)?;
        match &self.projections {
            Projections::Blocks { sizes } => {
                if sizes.len() != self.mu {
                    return Err(InputError::Schema(format!("expected {} block sizes", self.mu)));
                }
                if sizes.iter().sum::<usize>() != self.dim {
                    return Err(InputError::Schema("block sizes must sum to dim".into()));
                }
            }
            Projections::Matrices { pi } => {
                if pi.len() != self.mu {
                    return Err(InputError::Schema(format!("expected {} projection matrices", self.mu)));
                }
                for p in pi {
                    square("projection", p, self.dim)?;
                }
            }
        }
        if let Some(form) = &self.form {
            square("phi", &form.phi, self.dim)?;
            if form.zeta != 1 && form.zeta != -1 {
                return Err(InputError::Schema("zeta must be 1 or -1".into()));
            }
        }
        Ok(())
    }

    pub fn module(&self) -> Result<SeifertModule, InputError> {
        let mut v = match &self.projections {
            Projections::Blocks { sizes } => SeifertModule::with_blocks(self.s.clone(), sizes),
            Projections::Matrices { pi } => SeifertModule::new(self.mu, self.s.clone(), pi.clone()),
        };
        v.ring = self.ring;
        v.validate().map_err(|e: Violation| InputError::Violation(e.to_string()))?;
        Ok(v)
    }

    pub fn form(&self) -> Result<SeifertForm, InputError> {
        let fs = self.form.as_ref().ok_or_else(|| InputError::Schema("input has no form".into()))?;
        let f = SeifertForm::new(self.module()?, fs.zeta, fs.phi.clone());
        f.validate().map_err(|e| InputError::Violation(e.to_string()))?;
        if f.module.ring == Ring::Z && !f.phi.data().iter().all(|x| x.is_integer()) {
            return Err(InputError::Violation("integrality".into()));
        }
        Ok(f)
    }

    pub fn from_module(v: &SeifertModule) -> Self {
        SeifertInputFile {
            mu: v.mu,
            ring: v.ring,
            dim: v.dim(),
            s: v.s.clone(),
            projections: Projections::Matrices { pi: v.proj.clone() },
            form: None,
        }
    }

    pub fn from_form(f: &SeifertForm) -> Self {
        SeifertInputFile { form: Some(FormSpec { zeta: f.zeta, phi: f.phi.clone() }), ..Self::from_module(&f.module) }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serialisable")
    }
}

/// Output of `flk invariants`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportFile {
    pub seed: u64,
    pub degree: usize,
    pub zeta: i8,
    pub mu: usize,
    pub pieces: Vec<InvariantReport>,
    pub verdict: Verdict,
    pub log: Vec<String>,
}

impl ReportFile {
    pub fn new(report: WittReport, log: Vec<String>, seed: u64, degree: usize) -> Self {
        ReportFile { seed, degree, zeta: report.zeta, mu: report.mu, pieces: report.pieces, verdict: report.verdict, log }
    }

    /// Any piece outside the supported algebra kinds.
    pub fn unsupported(&self) -> bool {
        self.pieces.iter().any(|p| matches!(p.status, crate::witt::invariants::Status::Unsupported(_)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "reason", rename_all = "kebab-case")]
pub enum CobordismVerdict {
    CobordantByTheseInvariants,
    NotCobordant,
    Undetermined(String),
}

impl From<&Verdict> for CobordismVerdict {
    fn from(v: &Verdict) -> Self {
        match v {
            Verdict::WittTrivial => CobordismVerdict::CobordantByTheseInvariants,
            Verdict::Nontrivial => CobordismVerdict::NotCobordant,
            Verdict::Undetermined(r) => CobordismVerdict::Undetermined(r.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CobordantFile {
    pub cobordism: CobordismVerdict,
    pub difference: ReportFile,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessStatus {
    pub found: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub support: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Vec<String>>>,
}

/// Output of `flk cover`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverFile {
    pub mu: usize,
    pub degree: usize,
    pub sigma: Vec<Vec<String>>,
    pub sigma_inverse: Vec<Vec<TruncSeries>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairing: Option<Vec<Vec<TruncSeries>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetry: Option<WitnessStatus>,
}

/// Output of `flk primitive`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimitiveFile {
    pub dim: usize,
    pub primitive: bool,
    pub layers: Vec<Layer>,
    /// Basis vectors of the largest primitive submodule.
    pub max_primitive: Vec<Vec<String>>,
    /// Basis vectors of the smallest coprimitive submodule.
    pub min_coprimitive: Vec<Vec<String>>,
}
