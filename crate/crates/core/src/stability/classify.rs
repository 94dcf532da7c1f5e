use crate::algebra::{self, AlgebraData};
use crate::linalg::{Flag, Subspace};
use crate::onepar::{flag_to_cochar, limit_tuple, Cochar, GroupPoint, GroupType};

use super::orbit::orbit_member;
use super::pool::invariant_subspaces;
use super::StabilityError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Flags {
    pub irreducible: bool,
    pub completely_reducible: bool,
    pub isotropic: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Labels {
    pub polystable: bool,
    pub stable: bool,
    pub equicentral: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Dims {
    pub algebra_dim: usize,
    pub radical_dim: usize,
    pub commutant_dim: usize,
    /// Dimension of the stabilizer `G_x`, the unit group of the commutant
    /// intersected with `G`.
    pub stabilizer_dim: usize,
}

/// A one-parameter subgroup pushing `x` to the boundary of its orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DestabWitness {
    pub cochar: Cochar,
    pub limit: GroupPoint,
    pub limit_in_orbit: bool,
    /// The invariant flag `cochar` was built from.
    pub flag: Flag,
    /// Flag refinements used until the limit became polystable.
    pub refinements: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub flags: Flags,
    pub labels: Labels,
    pub dims: Dims,
    pub witness: Option<DestabWitness>,
    pub notes: Vec<String>,
}

impl ClassificationReport {
    /// `G_x` is finite modulo the center.
    pub fn stabilizer_is_central(&self, group: GroupType) -> bool {
        self.dims.stabilizer_dim == group.center_dim()
    }
}

pub const NOTE_CENTRAL_ACTION: &str =
    "equicentral assumes G_X = Z(G), which holds for the conjugation action on the full product";
pub const NOTE_STABLE_EQUICENTRAL: &str =
    "for GL_n and SL_n tuples stable and equicentral coincide (the commutant of an irreducible tuple is scalar)";
pub const NOTE_RANK_ONE: &str = "n = 1: every tuple is irreducible and stable";
pub const NOTE_NO_RATIONAL_SUBSPACE: &str =
    "reducible over the algebraic closure, but no proper invariant subspace found over the working field";

pub fn flags_of(a: &AlgebraData, group: GroupType) -> Flags {
    Flags {
        irreducible: algebra::is_irreducible(a),
        completely_reducible: algebra::is_completely_reducible(a),
        isotropic: algebra::is_isotropic(a, group),
    }
}

/// Place `x` in the stability hierarchy from the algebra it generates.
pub fn classify(x: &GroupPoint) -> Result<ClassificationReport, StabilityError> {
    classify_with_seed(x, 0)
}

pub fn classify_with_seed(x: &GroupPoint, seed: u64) -> Result<ClassificationReport, StabilityError> {
    let a = algebra::algebra_closure(x);
    let flags = flags_of(&a, x.group());
    let labels = Labels {
        polystable: flags.completely_reducible,
        stable: flags.irreducible,
        equicentral: flags.isotropic,
    };
    let dims = Dims {
        algebra_dim: a.dim(),
        radical_dim: a.radical_dim(),
        commutant_dim: a.commutant_dim(),
        stabilizer_dim: a.commutant_dim() - (1 - x.group().center_dim()),
    };
    let mut notes = vec![NOTE_CENTRAL_ACTION.to_string(), NOTE_STABLE_EQUICENTRAL.to_string()];
    if x.n() == 1 {
        notes.push(NOTE_RANK_ONE.to_string());
    }
    let witness = if flags.completely_reducible {
        None
    } else {
        let (w, orbit_notes) = destabilize_with(x, &a, seed)?;
        notes.extend(orbit_notes);
        w
    };
    if !flags.irreducible && flags.completely_reducible && invariant_subspaces(x, &a).is_empty() {
        notes.push(NOTE_NO_RATIONAL_SUBSPACE.to_string());
    }
    Ok(ClassificationReport { flags, labels, dims, witness, notes })
}

/// Destabilizing witness from the radical filtration `J^k V`, or `None`
/// when the radical vanishes (the orbit is closed).
pub fn destabilize(x: &GroupPoint) -> Result<Option<DestabWitness>, StabilityError> {
    Ok(destabilize_with(x, &algebra::algebra_closure(x), 0)?.0)
}

/// The filtration `V > J V > ... > J^m V = 0` is invariant, and `J` acts by
/// zero on each quotient `J^k V / J^(k+1) V`, which is therefore a module
/// over the semisimple `A / J`. The limit along the adapted cocharacter is
/// the associated graded tuple, so a single step reaches a polystable
/// point; the radical check on the limit only verifies that. Also returns
/// the orbit-membership notes.
pub(crate) fn destabilize_with(
    x: &GroupPoint,
    a: &AlgebraData,
    seed: u64,
) -> Result<(Option<DestabWitness>, Vec<String>), StabilityError> {
    if a.radical_dim() == 0 {
        return Ok((None, Vec::new()));
    }
    let filtration = a.radical_filtration();
    let steps: Vec<Subspace> = filtration[1..filtration.len() - 1].iter().rev().cloned().collect();
    let flag = Flag::new(steps)?;
    debug_assert!(x.mats().iter().all(|m| flag.is_invariant_under(m)));
    let cochar = flag_to_cochar(&flag, x.group());
    let limit = limit_tuple(&cochar, x)?
        .ok_or_else(|| StabilityError::Internal("invariant flag gave no limit".into()))?;
    let refinements = 1;
    let limit_algebra = algebra::algebra_closure(&limit);
    if !algebra::is_completely_reducible(&limit_algebra) {
        return Err(StabilityError::Internal(format!(
            "associated graded still has a radical of dimension {}",
            limit_algebra.radical_dim()
        )));
    }
    let orbit = orbit_member(x, &limit, seed)?;
    let witness = DestabWitness { cochar, limit, limit_in_orbit: orbit.member, flag, refinements };
    Ok((Some(witness), orbit.notes))
}
