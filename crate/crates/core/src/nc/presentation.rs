use super::poly::{parse_nc, NcPolynomial};
use crate::error::{Error, Result};
use crate::field::BaseField;
use crate::poly::is_identifier;

/// A finitely presented associative algebra `k<generators>/(relations)`.
///
/// Nonunital presentations live inside the free nonunital algebra, so their
/// relations never carry a constant term.
#[derive(Clone, Debug, PartialEq)]
pub struct NcPresentation {
    generators: Vec<String>,
    relations: Vec<NcPolynomial>,
    unital: bool,
    field: BaseField,
    /// Generator playing the idempotent `(1_A, 0)` of a product-model unitization.
    product_unit: Option<usize>,
}

impl NcPresentation {
    pub fn new(generators: Vec<String>, relations: Vec<NcPolynomial>, unital: bool, field: BaseField) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if !is_identifier(g) || generators[..i].contains(g) {
                return Err(Error::Input(format!("bad or repeated generator name {g:?}")));
            }
        }
        for (k, r) in relations.iter().enumerate() {
            if r.field() != field {
                return Err(Error::Input(format!("relation {k} lives over another field")));
            }
            if r.max_letter().is_some_and(|l| l as usize >= generators.len()) {
                return Err(Error::Input(format!("relation {k} uses an unknown generator")));
            }
            if !unital && r.constant_term().is_some() {
                return Err(Error::Input(format!(
                    "relation {k} has a constant term, which a nonunital presentation cannot express"
                )));
            }
        }
        Ok(NcPresentation { generators, relations, unital, field, product_unit: None })
    }

    pub fn parse(generators: &[&str], relations: &[&str], unital: bool, field: BaseField) -> Result<Self> {
        let names: Vec<String> = generators.iter().map(|g| g.to_string()).collect();
        let rels = relations.iter().map(|r| parse_nc(r, &names, field)).collect::<Result<Vec<_>>>()?;
        Self::new(names, rels, unital, field)
    }

    /// The free algebra on `generators`.
    pub fn free(generators: &[&str], unital: bool, field: BaseField) -> Result<Self> {
        Self::parse(generators, &[], unital, field)
    }

    pub(crate) fn with_product_unit(mut self, e: usize) -> Self {
        self.product_unit = Some(e);
        self
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relations(&self) -> &[NcPolynomial] {
        &self.relations
    }

    pub fn is_unital(&self) -> bool {
        self.unital
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn product_unit(&self) -> Option<usize> {
        self.product_unit
    }

    pub fn parse_element(&self, src: &str) -> Result<NcPolynomial> {
        let p = parse_nc(src, &self.generators, self.field)?;
        if !self.unital && p.constant_term().is_some() {
            return Err(Error::Input(format!("{src:?} has a constant term in a nonunital algebra")));
        }
        Ok(p)
    }

    pub fn display(&self, p: &NcPolynomial) -> String {
        p.display_with(&self.generators)
    }
}
