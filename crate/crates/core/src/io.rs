//! JSON input files.
//!
//! ```json
//! {"kind": "comm_presentation", "base_field": {"type": "Q"},
//!  "vars": ["x", "y"], "relations": ["x^2 + y^2 - 1"]}
//! ```
//!
//! Every file carries a `kind` and a `base_field`; algebraic data is written
//! as expression strings, structure constants as `[i, j, k, value]`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::comm::CommPresentation;
use crate::error::{Error, Result};
use crate::essential::LocalizationWitness;
use crate::field::{BaseField, Scalar};
use crate::homology::{Bimodule, FinDimAlgebra};
use crate::lie::{validate_lie, LieAlgebra, LieModule};
use crate::linalg::Matrix;
use crate::nc::{AlgebraMorphism, NcPresentation, Target};

/// A field element written as an integer or a string such as `"-3/4"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Int(i64),
    Text(String),
}

impl Number {
    fn scalar(&self, field: BaseField) -> Result<Scalar> {
        match self {
            Number::Int(v) => Ok(field.from_i64(*v)),
            Number::Text(s) => field.parse_scalar(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Constant(pub usize, pub usize, pub usize, pub Number);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NcSpec {
    pub generators: Vec<String>,
    #[serde(default)]
    pub relations: Vec<String>,
    #[serde(default = "yes")]
    pub unital: bool,
}

fn yes() -> bool {
    true
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CommSpec {
    pub vars: Vec<String>,
    #[serde(default)]
    pub relations: Vec<String>,
}

/// A finite-dimensional algebra: explicit constants, a named family, or a
/// zero-dimensional commutative presentation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FinDimSpec {
    Constants { dim: usize, constants: Vec<Constant>, unit: Vec<Number> },
    Family {
        family: FamilyName,
        #[serde(default)]
        n: usize,
    },
    Presentation {
        vars: Vec<String>,
        #[serde(default)]
        relations: Vec<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyName {
    Ground,
    ProductOfFields,
    TruncatedPolynomial,
    MatrixAlgebra,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LieSpec {
    pub names: Vec<String>,
    #[serde(default)]
    pub constants: Vec<Constant>,
    /// `"trivial"` (default), `"adjoint"`, or explicit action matrices.
    #[serde(default)]
    pub module: Option<ModuleSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModuleSpec {
    Named(String),
    Action { dim: usize, action: Vec<Vec<Vec<Number>>> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BimoduleSpec {
    pub algebra: FinDimSpec,
    pub dim: usize,
    /// One `dim × dim` matrix per basis element of the algebra.
    pub left: Vec<Vec<Vec<Number>>>,
    pub right: Vec<Vec<Vec<Number>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TargetSpec {
    NcPresentation(NcSpec),
    CommPresentation(CommSpec),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MorphismSpec {
    pub source: NcSpec,
    pub target: TargetSpec,
    pub images: Vec<String>,
    /// Element of the source's standardization being inverted.
    #[serde(default)]
    pub element: Option<String>,
    #[serde(default)]
    pub witness: Option<LocalizationWitness>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    NcPresentation(NcSpec),
    CommPresentation(CommSpec),
    FindimAlgebra(FinDimSpec),
    LieAlgebra(LieSpec),
    Bimodule(BimoduleSpec),
    Morphism(MorphismSpec),
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::NcPresentation(_) => "nc_presentation",
            Payload::CommPresentation(_) => "comm_presentation",
            Payload::FindimAlgebra(_) => "findim_algebra",
            Payload::LieAlgebra(_) => "lie_algebra",
            Payload::Bimodule(_) => "bimodule",
            Payload::Morphism(_) => "morphism",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PresentationFile {
    pub base_field: BaseField,
    #[serde(flatten)]
    pub payload: Payload,
}

fn strs(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

fn matrix(rows: &[Vec<Number>], n: usize, field: BaseField) -> Result<Matrix> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Input(format!("expected a {n}×{n} matrix")));
    }
    let rows = rows.iter().map(|r| r.iter().map(|x| x.scalar(field)).collect()).collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(rows, field))
}

fn constants(cs: &[Constant], field: BaseField) -> Result<Vec<(usize, usize, usize, Scalar)>> {
    cs.iter().map(|Constant(i, j, k, v)| Ok((*i, *j, *k, v.scalar(field)?))).collect()
}

impl NcSpec {
    pub fn build(&self, field: BaseField) -> Result<NcPresentation> {
        NcPresentation::parse(&strs(&self.generators), &strs(&self.relations), self.unital, field.validate()?)
    }
}

impl CommSpec {
    pub fn build(&self, field: BaseField) -> Result<CommPresentation> {
        CommPresentation::parse(&strs(&self.vars), &strs(&self.relations), field.validate()?)
    }
}

impl FinDimSpec {
    pub fn build(&self, field: BaseField) -> Result<FinDimAlgebra> {
        let field = field.validate()?;
        match self {
            FinDimSpec::Constants { dim, constants: cs, unit } => {
                let unit = unit.iter().map(|u| u.scalar(field)).collect::<Result<Vec<_>>>()?;
                FinDimAlgebra::new(*dim, field, &constants(cs, field)?, unit)
            }
            FinDimSpec::Family { family, n } if *n == 0 && *family != FamilyName::Ground => {
                Err(Error::Input(format!("family {family:?} needs n >= 1")))
            }
            FinDimSpec::Family { family, n } => Ok(match family {
                FamilyName::Ground => FinDimAlgebra::ground(field),
                FamilyName::ProductOfFields => FinDimAlgebra::product_of_fields(*n, field),
                FamilyName::TruncatedPolynomial => FinDimAlgebra::truncated_polynomial(*n, field),
                FamilyName::MatrixAlgebra => FinDimAlgebra::matrix_algebra(*n, field),
            }),
            FinDimSpec::Presentation { vars, relations } => {
                FinDimAlgebra::from_comm_presentation(&CommPresentation::parse(&strs(vars), &strs(relations), field)?)
            }
        }
    }
}

impl LieSpec {
    pub fn build(&self, field: BaseField) -> Result<(LieAlgebra, LieModule)> {
        let field = field.validate()?;
        let g = LieAlgebra::new(self.names.clone(), field, &constants(&self.constants, field)?)?;
        validate_lie(&g).map_err(|v| Error::Invalid(format!("not a Lie algebra: {v}")))?;
        let m = match &self.module {
            None => LieModule::trivial(&g),
            Some(ModuleSpec::Named(s)) if s == "trivial" => LieModule::trivial(&g),
            Some(ModuleSpec::Named(s)) if s == "adjoint" => LieModule::adjoint(&g),
            Some(ModuleSpec::Named(s)) => return Err(Error::Input(format!("unknown module {s:?}"))),
            Some(ModuleSpec::Action { dim, action }) => {
                let mats = action.iter().map(|a| matrix(a, *dim, field)).collect::<Result<Vec<_>>>()?;
                LieModule::new(&g, *dim, mats)?
            }
        };
        Ok((g, m))
    }
}

impl BimoduleSpec {
    pub fn build(&self, field: BaseField) -> Result<(FinDimAlgebra, Bimodule)> {
        let a = self.algebra.build(field)?;
        let left = self.left.iter().map(|m| matrix(m, self.dim, field)).collect::<Result<Vec<_>>>()?;
        let right = self.right.iter().map(|m| matrix(m, self.dim, field)).collect::<Result<Vec<_>>>()?;
        let m = Bimodule::new(&a, self.dim, left, right)?;
        Ok((a, m))
    }
}

impl MorphismSpec {
    pub fn build(&self, field: BaseField) -> Result<AlgebraMorphism> {
        let source = self.source.build(field)?;
        let target = match &self.target {
            TargetSpec::NcPresentation(s) => Target::NonCommutative(s.build(field)?),
            TargetSpec::CommPresentation(s) => Target::Commutative(s.build(field)?),
        };
        AlgebraMorphism::parse(source, target, &strs(&self.images))
    }
}

impl PresentationFile {
    pub fn from_json(src: &str) -> Result<Self> {
        let f: PresentationFile = serde_json::from_str(src).map_err(|e| Error::Parse(format!("input file: {e}")))?;
        f.base_field.validate()?;
        Ok(f)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let src = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
        Self::from_json(&src)
    }

    pub fn kind(&self) -> &'static str {
        self.payload.kind()
    }

    fn wrong_kind(&self, wanted: &str) -> Error {
        Error::Input(format!("expected a {wanted} file, found {}", self.kind()))
    }

    pub fn nc(&self) -> Result<NcPresentation> {
        match &self.payload {
            Payload::NcPresentation(s) => s.build(self.base_field),
            _ => Err(self.wrong_kind("nc_presentation")),
        }
    }

    pub fn comm(&self) -> Result<CommPresentation> {
        match &self.payload {
            Payload::CommPresentation(s) => s.build(self.base_field),
            _ => Err(self.wrong_kind("comm_presentation")),
        }
    }

    pub fn findim(&self) -> Result<FinDimAlgebra> {
        match &self.payload {
            Payload::FindimAlgebra(s) => s.build(self.base_field),
            _ => Err(self.wrong_kind("findim_algebra")),
        }
    }

    pub fn lie(&self) -> Result<(LieAlgebra, LieModule)> {
        match &self.payload {
            Payload::LieAlgebra(s) => s.build(self.base_field),
            _ => Err(self.wrong_kind("lie_algebra")),
        }
    }

    pub fn bimodule(&self) -> Result<(FinDimAlgebra, Bimodule)> {
        match &self.payload {
            Payload::Bimodule(s) => s.build(self.base_field),
            _ => Err(self.wrong_kind("bimodule")),
        }
    }

    pub fn morphism(&self) -> Result<(AlgebraMorphism, &MorphismSpec)> {
        match &self.payload {
            Payload::Morphism(s) => Ok((s.build(self.base_field)?, s)),
            _ => Err(self.wrong_kind("morphism")),
        }
    }

    /// A commutative presentation, standardizing noncommutative input.
    pub fn commutative(&self) -> Result<CommPresentation> {
        match &self.payload {
            Payload::CommPresentation(s) => s.build(self.base_field),
            Payload::NcPresentation(s) => Ok(crate::nc::standardize(&s.build(self.base_field)?)?.presentation),
            _ => Err(self.wrong_kind("comm_presentation or nc_presentation")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_each_kind() {
        let f = PresentationFile::from_json(
            r#"{"kind":"comm_presentation","base_field":{"type":"Q"},"vars":["x","y"],"relations":["x^2+y^2-1"]}"#,
        )
        .unwrap();
        assert_eq!(f.comm().unwrap().vars(), ["x", "y"]);
        assert!(f.nc().is_err());

        let f = PresentationFile::from_json(
            r#"{"kind":"nc_presentation","base_field":{"type":"Fp","p":2},"generators":["x"],"relations":["x*x - x"]}"#,
        )
        .unwrap();
        assert!(f.nc().unwrap().is_unital());

        let f = PresentationFile::from_json(
            r#"{"kind":"findim_algebra","base_field":{"type":"Q"},"dim":2,
                "constants":[[0,0,0,1],[0,1,1,1],[1,0,1,1]],"unit":[1,"0"]}"#,
        )
        .unwrap();
        assert_eq!(f.findim().unwrap(), FinDimAlgebra::truncated_polynomial(2, BaseField::Rational));

        let f = PresentationFile::from_json(
            r#"{"kind":"findim_algebra","base_field":{"type":"Q"},"family":"matrix_algebra","n":2}"#,
        )
        .unwrap();
        assert_eq!(f.findim().unwrap().dim(), 4);

        let f = PresentationFile::from_json(
            r#"{"kind":"lie_algebra","base_field":{"type":"Q"},"names":["f","h","e"],
                "constants":[[1,2,2,2],[2,1,2,-2],[1,0,0,-2],[0,1,0,2],[2,0,1,1],[0,2,1,-1]]}"#,
        )
        .unwrap();
        assert_eq!(f.lie().unwrap().0, LieAlgebra::sl2(BaseField::Rational));

        let f = PresentationFile::from_json(
            r#"{"kind":"morphism","base_field":{"type":"Q"},
                "source":{"generators":["x","y"],"unital":false},
                "target":{"kind":"comm_presentation","vars":["x","y"]},
                "images":["x","y"],"element":"x"}"#,
        )
        .unwrap();
        let (m, spec) = f.morphism().unwrap();
        assert_eq!(m.images().len(), 2);
        assert_eq!(spec.element.as_deref(), Some("x"));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(PresentationFile::from_json("{"), Err(Error::Parse(_))));
        assert!(PresentationFile::from_json(r#"{"kind":"comm_presentation","base_field":{"type":"Fp","p":4},"vars":[]}"#).is_err());
        let f = PresentationFile::from_json(
            r#"{"kind":"findim_algebra","base_field":{"type":"Q"},"dim":1,"constants":[[0,0,0,2]],"unit":[1]}"#,
        )
        .unwrap();
        assert!(matches!(f.findim(), Err(Error::Invalid(_))));
    }

    #[test]
    fn bimodule_files() {
        let f = PresentationFile::from_json(
            r#"{"kind":"bimodule","base_field":{"type":"Q"},
                "algebra":{"family":"ground","n":1},"dim":2,
                "left":[[[1,0],[0,1]]],"right":[[[1,0],[0,1]]]}"#,
        )
        .unwrap();
        let (a, m) = f.bimodule().unwrap();
        assert_eq!((a.dim(), m.dim()), (1, 2));
    }
}
