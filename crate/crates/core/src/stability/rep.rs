//! Points of representation varieties `Hom(Gamma, G)` for finitely
//! presented `Gamma`.

use crate::linalg::Matrix;
use crate::onepar::{GroupPoint, PointKind};

use super::classify::{classify_with_seed, ClassificationReport};
use super::StabilityError;

/// A letter of a relator: generator index and exponent `+1` or `-1`.
pub type Letter = (usize, i32);

/// `<gamma_1, ..., gamma_N | r_1, ..., r_M>`. An empty relator is the
/// trivial word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepPresentation {
    generators: usize,
    relators: Vec<Vec<Letter>>,
}

impl RepPresentation {
    pub fn new(generators: usize, relators: Vec<Vec<Letter>>) -> Result<RepPresentation, StabilityError> {
        if generators == 0 {
            return Err(StabilityError::BadRelator { relator: 0, reason: "at least one generator is required".into() });
        }
        for (r, word) in relators.iter().enumerate() {
            for &(g, e) in word {
                if g >= generators {
                    return Err(StabilityError::BadRelator {
                        relator: r,
                        reason: format!("generator index {g} out of range"),
                    });
                }
                if e != 1 && e != -1 {
                    return Err(StabilityError::BadRelator { relator: r, reason: format!("exponent {e} is not +1 or -1") });
                }
            }
        }
        Ok(RepPresentation { generators, relators })
    }

    /// The free group on `generators` letters.
    pub fn free(generators: usize) -> RepPresentation {
        RepPresentation { generators, relators: Vec::new() }
    }

    /// `Z^2 = <a, b | a b a^-1 b^-1>`.
    pub fn z2() -> RepPresentation {
        RepPresentation { generators: 2, relators: vec![vec![(0, 1), (1, 1), (0, -1), (1, -1)]] }
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relators(&self) -> &[Vec<Letter>] {
        &self.relators
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepReport {
    pub reductive: bool,
    pub irreducible: bool,
    pub good: bool,
    pub classification: ClassificationReport,
    pub notes: Vec<String>,
}

pub const NOTE_GOOD_CENTRAL: &str =
    "good is identified with equicentral only under the centrality hypothesis G_X = Z(G)";

/// Evaluate a word in the images.
pub fn evaluate_word(images: &GroupPoint, word: &[Letter], inverses: &[Matrix]) -> Matrix {
    word.iter().fold(Matrix::identity(images.n(), images.field()), |acc, &(g, e)| {
        let m = if e > 0 { &images.mats()[g] } else { &inverses[g] };
        &acc * m
    })
}

/// Check the relators on `images` and classify the representation.
pub fn classify_rep(p: &RepPresentation, images: &GroupPoint, seed: u64) -> Result<RepReport, StabilityError> {
    if images.kind() != PointKind::Group {
        return Err(StabilityError::ShapeMismatch("representation images must be a group tuple".into()));
    }
    if images.len() != p.generators {
        return Err(StabilityError::GeneratorCount { expected: p.generators, found: images.len() });
    }
    let inverses: Vec<Matrix> = images.mats().iter().map(|m| m.inverse().expect("group element")).collect();
    for (r, word) in p.relators.iter().enumerate() {
        if !evaluate_word(images, word, &inverses).is_identity() {
            return Err(StabilityError::NotARepresentation { relator: r });
        }
    }
    let classification = classify_with_seed(images, seed)?;
    Ok(RepReport {
        reductive: classification.labels.polystable,
        irreducible: classification.labels.stable,
        good: classification.flags.isotropic,
        classification,
        notes: vec![NOTE_GOOD_CENTRAL.to_string()],
    })
}
