//! Embedded worked examples, run by the `corpus` command.

use crate::algebra;
use crate::linalg::{Field, Matrix, Scalar};
use crate::onepar::{lambda_sample, permutation_matrices, weight_grid, Cochar, GroupPoint, GroupType};
use crate::stability::{self, conjugator_pool, RepPresentation, StabilityError};

use super::report::{CaseDto, CorpusDto};
use super::{parse_input, Command, JobInput, Options};

/// `(file name, contents)` of every embedded input document.
pub const CORPUS_FILES: &[(&str, &str)] = &[
    ("sl2_diagonal.json", include_str!("../../data/sl2_diagonal.json")),
    ("sl2_scalar.json", include_str!("../../data/sl2_scalar.json")),
    ("sl2_unipotent.json", include_str!("../../data/sl2_unipotent.json")),
    ("sl2_nilpotent_shift.json", include_str!("../../data/sl2_nilpotent_shift.json")),
    ("quaternion_pair.json", include_str!("../../data/quaternion_pair.json")),
    ("sl2_det_two.json", include_str!("../../data/sl2_det_two.json")),
    ("z2_commuting.json", include_str!("../../data/z2_commuting.json")),
    ("z2_noncommuting.json", include_str!("../../data/z2_noncommuting.json")),
    ("free_quaternion_pair.json", include_str!("../../data/free_quaternion_pair.json")),
    ("limit_trivial.json", include_str!("../../data/limit_trivial.json")),
];

fn file(name: &str) -> &'static str {
    CORPUS_FILES.iter().find(|(n, _)| *n == name).map(|(_, c)| *c).expect("embedded file")
}

fn point(name: &str) -> Result<GroupPoint, String> {
    match parse_input(Command::Classify, file(name), Options::default()).map_err(|e| e.to_string())?.input {
        JobInput::Point(x) => Ok(x),
        _ => unreachable!("classify parses a point"),
    }
}

type CaseResult = Result<Vec<String>, String>;

fn check(ok: bool, what: &str, failures: &mut Vec<String>) {
    if !ok {
        failures.push(what.to_string());
    }
}

fn diagonal_case(bound: i64, seed: u64) -> CaseResult {
    let x = point("sl2_diagonal.json")?;
    let r = stability::classify_with_seed(&x, seed).map_err(|e| e.to_string())?;
    let h = stability::h_approx(&x, 1, &[]).map_err(|e| e.to_string())?;
    let hm = stability::hm_crosscheck(&x, bound, seed, &[]).map_err(|e| e.to_string())?;
    let mut f = Vec::new();
    check(r.labels.polystable, "polystable", &mut f);
    check(!r.labels.stable, "not stable", &mut f);
    check(r.dims.commutant_dim == 2, "commutant_dim = 2", &mut f);
    check(h.upper_bound_dim == 1, "H_Lambda is the diagonal torus (dim 1)", &mut f);
    check(hm.violations.is_empty(), "no cross-check violations", &mut f);
    Ok(f)
}

fn scalar_case(bound: i64, seed: u64) -> CaseResult {
    let x = point("sl2_scalar.json")?;
    let r = stability::classify_with_seed(&x, seed).map_err(|e| e.to_string())?;
    let pool = conjugator_pool(&x, &algebra::algebra_closure(&x), &[]).map_err(|e| e.to_string())?;
    let sample = lambda_sample(&x, bound, &pool).map_err(|e| e.to_string())?;
    let everything = pool.iter().all(|h| {
        weight_grid(2, bound, GroupType::SL).into_iter().all(|w| {
            let c = Cochar::new(w, h.clone()).expect("invertible pool");
            sample.iter().any(|s| s.conjugator() == c.conjugator() && s.weights() == c.weights())
        })
    });
    let h = stability::h_approx(&x, bound, &[]).map_err(|e| e.to_string())?;
    let minus_one = Matrix::scalar(2, &Scalar::from_i64(Field::Q, -1));
    let center_in = h.contains(&Matrix::identity(2, Field::Q)).map_err(|e| e.to_string())?
        && h.contains(&minus_one).map_err(|e| e.to_string())?;
    let mut f = Vec::new();
    check(r.labels.polystable, "polystable (fixed point)", &mut f);
    check(!r.labels.stable, "not stable", &mut f);
    check(everything, "Lambda sample is every sampled cocharacter", &mut f);
    check(center_in, "H_Lambda contains the center {I, -I}", &mut f);
    Ok(f)
}

fn unipotent_case(seed: u64) -> CaseResult {
    let x = point("sl2_unipotent.json")?;
    let r = stability::classify_with_seed(&x, seed).map_err(|e| e.to_string())?;
    let h = stability::h_approx(&x, 2, &[]).map_err(|e| e.to_string())?;
    let mut f = Vec::new();
    check(!r.labels.polystable, "not polystable", &mut f);
    match &r.witness {
        Some(w) => {
            check(w.cochar.weights() == [1, -1], "witness weights (1, -1)", &mut f);
            check(w.limit.mats()[0].is_identity(), "witness limit is I", &mut f);
            check(!w.limit_in_orbit, "witness limit outside the orbit", &mut f);
        }
        None => f.push("witness present".into()),
    }
    check(h.upper_bound_dim == 2, "H_Lambda is the upper Borel (dim 2)", &mut f);
    Ok(f)
}

fn quaternion_case(bound: i64, seed: u64) -> CaseResult {
    let x = point("quaternion_pair.json")?;
    let r = stability::classify_with_seed(&x, seed).map_err(|e| e.to_string())?;
    let hm = stability::hm_crosscheck(&x, bound, seed, &[]).map_err(|e| e.to_string())?;
    let mut f = Vec::new();
    check(r.labels.polystable && r.labels.stable && r.labels.equicentral, "labels all true", &mut f);
    check(r.dims.algebra_dim == 4, "algebra dim 4", &mut f);
    check(r.dims.commutant_dim == 1, "commutant_dim 1", &mut f);
    check(hm.noncentral_count() == 0, "no non-central cocharacter in the sample", &mut f);
    check(hm.violations.is_empty(), "no cross-check violations", &mut f);
    Ok(f)
}

fn nilpotent_exp_case(bound: i64) -> CaseResult {
    let nilpotents = [
        Matrix::from_i64(Field::Q, &[&[0, 1], &[0, 0]]),
        Matrix::from_i64(Field::Q, &[&[0, 0], &[1, 0]]),
        Matrix::from_i64(Field::Q, &[&[1, -1], &[1, -1]]),
        Matrix::from_i64(Field::Q, &[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]),
        Matrix::from_i64(Field::Q, &[&[0, 0, 2], &[0, 0, 0], &[0, 0, 0]]),
        Matrix::from_i64(Field::Q, &[&[0, 0, 0], &[1, 0, 0], &[0, 3, 0]]),
    ];
    let mut f = Vec::new();
    let mut checked = 0;
    for v in &nilpotents {
        let n = v.nrows();
        let e = v.exp_nilpotent().map_err(|e| e.to_string())?;
        for h in permutation_matrices(n, Field::Q) {
            for w in weight_grid(n, bound, GroupType::GL) {
                let c = Cochar::new(w, h.clone()).map_err(|e| e.to_string())?;
                let lie = c.limit_conj(v).map_err(|e| e.to_string())?.is_some();
                let grp = c.limit_conj(&e).map_err(|e| e.to_string())?.is_some();
                checked += 1;
                if lie != grp {
                    f.push(format!("{v:?} along {:?}: exp limit {grp}, lie limit {lie}", c.weights()));
                }
            }
        }
    }
    check(checked > 0, "some cocharacters checked", &mut f);
    Ok(f)
}

fn rep_images(name: &str) -> Result<(RepPresentation, GroupPoint), String> {
    match parse_input(Command::CheckRep, file(name), Options::default()).map_err(|e| e.to_string())?.input {
        JobInput::Rep { presentation, images } => Ok((presentation, images)),
        _ => unreachable!("check-rep parses a representation"),
    }
}

fn representation_case(seed: u64) -> CaseResult {
    let mut f = Vec::new();
    let (p, x) = rep_images("z2_commuting.json")?;
    let r = stability::classify_rep(&p, &x, seed).map_err(|e| e.to_string())?;
    check(r.reductive && !r.irreducible, "commuting pair reductive, not irreducible", &mut f);
    let (p, x) = rep_images("z2_noncommuting.json")?;
    check(
        stability::classify_rep(&p, &x, seed) == Err(StabilityError::NotARepresentation { relator: 0 }),
        "non-commuting pair rejected at relator 0",
        &mut f,
    );
    let (p, x) = rep_images("free_quaternion_pair.json")?;
    let r = stability::classify_rep(&p, &x, seed).map_err(|e| e.to_string())?;
    check(r.good, "free quaternion pair is good", &mut f);
    Ok(f)
}

/// Run every embedded case. Cases are independent and reported in a
/// fixed order.
pub fn run_corpus(bound: i64, seed: u64) -> CorpusDto {
    let cases: Vec<(&str, CaseResult)> = vec![
        ("sl2-diagonal", diagonal_case(bound, seed)),
        ("sl2-scalar", scalar_case(bound, seed)),
        ("sl2-unipotent", unipotent_case(seed)),
        ("quaternion-pair", quaternion_case(bound, seed)),
        ("nilpotent-exp", nilpotent_exp_case(bound)),
        ("representations", representation_case(seed)),
    ];
    let cases: Vec<CaseDto> = cases
        .into_iter()
        .map(|(name, res)| {
            let (pass, detail) = match res {
                Ok(f) if f.is_empty() => (true, "ok".to_string()),
                Ok(f) => (false, format!("failed: {}", f.join("; "))),
                Err(e) => (false, format!("error: {e}")),
            };
            CaseDto { name: name.to_string(), pass, detail }
        })
        .collect();
    let passed = cases.iter().filter(|c| c.pass).count();
    CorpusDto { total: cases.len(), passed, cases }
}
