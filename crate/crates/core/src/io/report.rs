//! Output documents. Field order is the serialization order.

use serde::{Deserialize, Serialize};

use crate::stability::{ClassificationReport, DestabWitness, HApprox, HmReport, OrbitMembership, OrbitMethod};

use super::dto::{cochar_to_dto, matrix_to_dto, point_to_dto, CocharDto, MatrixDto, PointDto};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlagsDto {
    pub irreducible: bool,
    pub completely_reducible: bool,
    pub isotropic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelsDto {
    pub polystable: bool,
    pub stable: bool,
    pub equicentral: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DimsDto {
    pub algebra_dim: usize,
    pub radical_dim: usize,
    pub commutant_dim: usize,
    pub stabilizer_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessDto {
    pub cochar: CocharDto,
    pub limit: PointDto,
    pub limit_in_orbit: bool,
    /// Row-echelon basis of each flag step, smallest first.
    pub flag: Vec<Vec<Vec<String>>>,
    pub refinements: usize,
    /// Seed of the orbit-membership check, for replay.
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDto {
    pub flags: FlagsDto,
    pub labels: LabelsDto,
    pub dims: DimsDto,
    pub witness: Option<WitnessDto>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDto {
    pub dim: usize,
    pub radical_dim: usize,
    pub commutant_dim: usize,
    pub irreducible: bool,
    pub completely_reducible: bool,
    pub isotropic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CentralizerDto {
    pub commutant_dim: usize,
    pub stabilizer_dim: usize,
    pub central: bool,
    pub basis: Vec<MatrixDto>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LimitDto {
    pub exists: bool,
    pub limit: Option<PointDto>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentDto {
    pub weight: i64,
    pub matrix: MatrixDto,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MuDto {
    pub components: Vec<ComponentDto>,
    pub mu: i64,
    pub limit_exists: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitDto {
    pub member: bool,
    pub conjugator: Option<MatrixDto>,
    pub solution_dim: usize,
    /// `trivial`, `grid` or `random`.
    pub method: String,
    pub seed: u64,
    pub trials: Option<usize>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DestabDto {
    pub witness: Option<WitnessDto>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckDto {
    pub conjugator: usize,
    pub weights: Vec<i64>,
    pub central: bool,
    pub limit_in_orbit: Option<bool>,
    pub opposite_fixes_limit: Option<bool>,
    pub opposite_in_sample: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HmDto {
    pub bound: i64,
    pub seed: u64,
    pub polystable: bool,
    pub stable: bool,
    pub conjugators: Vec<MatrixDto>,
    pub checks: Vec<CheckDto>,
    pub witness_ok: Option<bool>,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MemberDto {
    pub matrix: MatrixDto,
    pub contained: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HApproxDto {
    pub bound: i64,
    pub sampled: usize,
    pub noncentral: usize,
    pub group_dim: usize,
    pub upper_bound_dim: usize,
    pub envelope_dim: usize,
    pub envelope_contained: bool,
    pub basis: Vec<MatrixDto>,
    pub members: Vec<MemberDto>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepDto {
    pub reductive: bool,
    pub irreducible: bool,
    pub good: bool,
    pub report: ReportDto,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseDto {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusDto {
    pub cases: Vec<CaseDto>,
    pub passed: usize,
    pub total: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErrorBody {
    pub code: String,
    pub message: String,
    pub location: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErrorDto {
    pub error: ErrorBody,
}

pub fn witness_to_dto(w: &DestabWitness, seed: u64) -> WitnessDto {
    WitnessDto {
        cochar: cochar_to_dto(&w.cochar),
        limit: point_to_dto(&w.limit),
        limit_in_orbit: w.limit_in_orbit,
        flag: w
            .flag
            .steps()
            .iter()
            .map(|s| s.basis().iter().map(|v| v.iter().map(|c| c.to_string()).collect()).collect())
            .collect(),
        refinements: w.refinements,
        seed,
    }
}

pub fn report_to_dto(r: &ClassificationReport, seed: u64) -> ReportDto {
    ReportDto {
        flags: FlagsDto {
            irreducible: r.flags.irreducible,
            completely_reducible: r.flags.completely_reducible,
            isotropic: r.flags.isotropic,
        },
        labels: LabelsDto { polystable: r.labels.polystable, stable: r.labels.stable, equicentral: r.labels.equicentral },
        dims: DimsDto {
            algebra_dim: r.dims.algebra_dim,
            radical_dim: r.dims.radical_dim,
            commutant_dim: r.dims.commutant_dim,
            stabilizer_dim: r.dims.stabilizer_dim,
        },
        witness: r.witness.as_ref().map(|w| witness_to_dto(w, seed)),
        notes: r.notes.clone(),
    }
}

pub fn orbit_to_dto(o: &OrbitMembership, seed: u64) -> OrbitDto {
    let (method, trials) = match o.method {
        OrbitMethod::Trivial => ("trivial", None),
        OrbitMethod::Grid => ("grid", None),
        OrbitMethod::Random { trials, .. } => ("random", Some(trials)),
    };
    OrbitDto {
        member: o.member,
        conjugator: o.conjugator.as_ref().map(matrix_to_dto),
        solution_dim: o.solution_dim,
        method: method.to_string(),
        seed,
        trials,
        notes: o.notes.clone(),
    }
}

pub fn hm_to_dto(r: &HmReport, seed: u64) -> HmDto {
    HmDto {
        bound: r.bound,
        seed,
        polystable: r.classification.labels.polystable,
        stable: r.classification.labels.stable,
        conjugators: r.conjugators.iter().map(matrix_to_dto).collect(),
        checks: r
            .checks
            .iter()
            .map(|c| CheckDto {
                conjugator: c.conjugator,
                weights: c.weights.clone(),
                central: c.central,
                limit_in_orbit: c.limit_in_orbit,
                opposite_fixes_limit: c.opposite_fixes_limit,
                opposite_in_sample: c.opposite_in_sample,
            })
            .collect(),
        witness_ok: r.witness_ok,
        violations: r.violations.clone(),
    }
}

pub fn h_approx_to_dto(h: &HApprox, members: Vec<MemberDto>) -> HApproxDto {
    HApproxDto {
        bound: h.bound,
        sampled: h.sampled,
        noncentral: h.noncentral,
        group_dim: h.group_dim,
        upper_bound_dim: h.upper_bound_dim,
        envelope_dim: h.envelope_dim,
        envelope_contained: h.envelope_contained,
        basis: h.parabolic_basis.iter().map(matrix_to_dto).collect(),
        members,
    }
}
