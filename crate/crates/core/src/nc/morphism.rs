use std::fmt;

use serde::Serialize;

use super::functors::commutative_image;
use super::poly::{parse_nc, NcPolynomial};
use super::presentation::NcPresentation;
use super::rewriting::RewriteSystem;
use crate::comm::CommPresentation;
use crate::error::{Error, Result};

/// Codomain of an [`AlgebraMorphism`].
#[derive(Clone, Debug)]
pub enum Target {
    Commutative(CommPresentation),
    NonCommutative(NcPresentation),
}

impl Target {
    pub fn generator_names(&self) -> &[String] {
        match self {
            Target::Commutative(c) => c.vars(),
            Target::NonCommutative(n) => n.generators(),
        }
    }

    pub fn is_unital(&self) -> bool {
        match self {
            Target::Commutative(_) => true,
            Target::NonCommutative(n) => n.is_unital(),
        }
    }

    pub fn field(&self) -> crate::field::BaseField {
        match self {
            Target::Commutative(c) => c.field(),
            Target::NonCommutative(n) => n.field(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerificationStatus {
    Verified,
    VerifiedUpToDegree(usize),
    Unverified,
}

impl fmt::Display for VerificationStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerificationStatus::Verified => write!(f, "verified"),
            VerificationStatus::VerifiedUpToDegree(d) => write!(f, "verified-up-to-degree({d})"),
            VerificationStatus::Unverified => write!(f, "unverified"),
        }
    }
}

impl Serialize for VerificationStatus {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A homomorphism given by the images of the source generators.
///
/// From a unital source the morphism is taken to preserve the unit, so
/// constants in source relations map to constants of the target.
#[derive(Clone, Debug)]
pub struct AlgebraMorphism {
    source: NcPresentation,
    target: Target,
    images: Vec<NcPolynomial>,
}

impl AlgebraMorphism {
    pub fn new(source: NcPresentation, target: Target, images: Vec<NcPolynomial>) -> Result<Self> {
        if images.len() != source.generators().len() {
            return Err(Error::Input(format!(
                "{} generator images for {} generators",
                images.len(),
                source.generators().len()
            )));
        }
        if source.field() != target.field() {
            return Err(Error::Input("source and target live over different fields".into()));
        }
        if source.is_unital() && !target.is_unital() {
            return Err(Error::Unsupported("unital source with a nonunital target".into()));
        }
        let n = target.generator_names().len();
        for (i, img) in images.iter().enumerate() {
            if img.max_letter().is_some_and(|l| l as usize >= n) {
                return Err(Error::Input(format!("image {i} uses letters outside the target")));
            }
            if !target.is_unital() && img.constant_term().is_some() {
                return Err(Error::Input(format!("image {i} has a constant term in a nonunital target")));
            }
        }
        Ok(AlgebraMorphism { source, target, images })
    }

    /// Parses generator images written in the target's alphabet.
    pub fn parse(source: NcPresentation, target: Target, images: &[&str]) -> Result<Self> {
        let names = target.generator_names().to_vec();
        let field = target.field();
        let imgs = images.iter().map(|s| parse_nc(s, &names, field)).collect::<Result<Vec<_>>>()?;
        Self::new(source, target, imgs)
    }

    pub fn identity(a: &NcPresentation) -> Self {
        let images = (0..a.generators().len() as u32).map(|i| NcPolynomial::letter(a.field(), i)).collect();
        AlgebraMorphism { source: a.clone(), target: Target::NonCommutative(a.clone()), images }
    }

    pub fn source(&self) -> &NcPresentation {
        &self.source
    }

    pub fn target(&self) -> &Target {
        &self.target
    }

    pub fn images(&self) -> &[NcPolynomial] {
        &self.images
    }

    /// Image of a source element in the free algebra on the target generators.
    pub fn apply(&self, p: &NcPolynomial) -> NcPolynomial {
        p.substitute(&self.images, self.target.field())
    }

    /// Certifies that every relation of the source maps to zero.
    ///
    /// Commutative targets are decided by Gröbner normal forms. Noncommutative
    /// targets use a rewriting completion up to `degree_bound`; a nonzero
    /// remainder rejects the morphism only when that completion is confluent
    /// up to the bound, and leaves it unverified otherwise.
    pub fn verify(&self, degree_bound: usize) -> Result<VerificationStatus> {
        match &self.target {
            Target::Commutative(c) => {
                for (k, r) in self.source.relations().iter().enumerate() {
                    let img = commutative_image(&self.apply(r), c.ring());
                    let nf = c.normal_form(&img)?;
                    if !nf.is_zero() {
                        return Err(Error::MorphismRejected { relation: k, image: nf.to_string() });
                    }
                }
                Ok(VerificationStatus::Verified)
            }
            Target::NonCommutative(t) => {
                if self.source.relations().is_empty() {
                    return Ok(VerificationStatus::Verified);
                }
                let sys = RewriteSystem::complete(t.relations(), t.field(), degree_bound)?;
                let mut status = VerificationStatus::VerifiedUpToDegree(degree_bound);
                for (k, r) in self.source.relations().iter().enumerate() {
                    let img = self.apply(r);
                    if img.degree().unwrap_or(0) > degree_bound {
                        status = VerificationStatus::Unverified;
                        continue;
                    }
                    let nf = sys.reduce(&img);
                    if nf.is_zero() {
                        continue;
                    }
                    if sys.confluent_up_to_bound() {
                        return Err(Error::MorphismRejected { relation: k, image: t.display(&nf) });
                    }
                    status = VerificationStatus::Unverified;
                }
                Ok(status)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::BaseField;

    const Q: BaseField = BaseField::Rational;

    #[test]
    fn inclusion_into_a_localization() {
        let src = NcPresentation::free(&["x"], false, Q).unwrap();
        let tgt = CommPresentation::parse(&["x", "t"], &["t*x - 1"], Q).unwrap();
        let f = AlgebraMorphism::parse(src, Target::Commutative(tgt), &["x"]).unwrap();
        assert_eq!(f.verify(4).unwrap(), VerificationStatus::Verified);
    }

    #[test]
    fn swap_on_commutative_plane() {
        let a = NcPresentation::parse(&["x", "y"], &["x*y - y*x"], true, Q).unwrap();
        let f = AlgebraMorphism::parse(a.clone(), Target::NonCommutative(a), &["y", "x"]).unwrap();
        assert!(matches!(
            f.verify(4).unwrap(),
            VerificationStatus::Verified | VerificationStatus::VerifiedUpToDegree(4)
        ));
    }

    #[test]
    fn square_zero_does_not_map_into_cube_zero() {
        let src = NcPresentation::parse(&["x"], &["x^2"], true, Q).unwrap();
        let tgt = CommPresentation::parse(&["x"], &["x^3"], Q).unwrap();
        let f = AlgebraMorphism::parse(src, Target::Commutative(tgt), &["x"]).unwrap();
        match f.verify(4) {
            Err(Error::MorphismRejected { relation: 0, image }) => assert_eq!(image, "x^2"),
            other => panic!("expected rejection, got {other:?}"),
        }
    }

    #[test]
    fn identities_verify() {
        for a in [
            NcPresentation::parse(&["x", "y"], &["x*y - y*x - 1"], true, Q).unwrap(),
            NcPresentation::parse(&["x"], &["x^3"], false, Q).unwrap(),
            NcPresentation::free(&[], true, Q).unwrap(),
        ] {
            assert_ne!(AlgebraMorphism::identity(&a).verify(4).unwrap(), VerificationStatus::Unverified);
        }
    }

    #[test]
    fn noncommutative_rejection() {
        let src = NcPresentation::parse(&["x", "y"], &["x*y - y*x"], true, Q).unwrap();
        let free = NcPresentation::free(&["a", "b"], true, Q).unwrap();
        let f = AlgebraMorphism::parse(src, Target::NonCommutative(free), &["a", "b"]).unwrap();
        assert!(matches!(f.verify(3), Err(Error::MorphismRejected { .. })));
    }

    #[test]
    fn malformed_images() {
        let src = NcPresentation::free(&["x"], false, Q).unwrap();
        let tgt = NcPresentation::free(&["y"], false, Q).unwrap();
        assert!(AlgebraMorphism::parse(src.clone(), Target::NonCommutative(tgt.clone()), &["y + 1"]).is_err());
        assert!(AlgebraMorphism::parse(src, Target::NonCommutative(tgt), &["y", "y"]).is_err());
    }
}
