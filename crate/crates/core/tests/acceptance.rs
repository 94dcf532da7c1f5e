//! Acceptance suite. One line per criterion; exits nonzero if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use conjstab::algebra::{ad_matrices, algebra_closure, is_irreducible, is_isotropic};
use conjstab::io::report::report_to_dto;
use conjstab::linalg::{Field, Matrix, Scalar};
use conjstab::onepar::{
    lambda_sample, permutation_matrices, weight_grid, Cochar, GroupPoint, GroupType, PointKind,
};
use conjstab::stability::{
    classify, classify_rep, conjugator_pool, h_approx, hm_crosscheck, orbit_member, ClassificationReport,
    RepPresentation, StabilityError,
};

const TIME_LIMIT: Duration = Duration::from_secs(60);

struct Outcome {
    failures: Vec<String>,
    summary: String,
}

impl Outcome {
    fn new() -> Outcome {
        Outcome { failures: Vec::new(), summary: String::new() }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }
}

fn q(v: i64) -> Scalar {
    Scalar::from_i64(Field::Q, v)
}

fn sl_lie(rows: &[&[i64]]) -> GroupPoint {
    GroupPoint::new(GroupType::SL, PointKind::Lie, vec![Matrix::from_i64(Field::Q, rows)]).unwrap()
}

fn quaternion_pair(group: GroupType) -> GroupPoint {
    let i = Scalar::i();
    GroupPoint::new(
        group,
        PointKind::Group,
        vec![Matrix::diag(&[i.clone(), -&i]).unwrap(), Matrix::from_i64(Field::QI, &[&[0, 1], &[-1, 0]])],
    )
    .unwrap()
}

fn sl2_worked_cases() -> Outcome {
    let mut o = Outcome::new();
    let swap = Matrix::from_i64(Field::Q, &[&[0, 1], &[1, 0]]);
    let id = Matrix::identity(2, Field::Q);

    // Distinct eigenvalues.
    let x = sl_lie(&[&[1, 0], &[0, 2]]);
    let r = classify(&x).unwrap();
    o.check(r.labels.polystable, "diag(1,2): polystable");
    o.check(!r.labels.stable, "diag(1,2): not stable");
    let h = h_approx(&x, 1, &[id.clone(), swap.clone()]).unwrap();
    o.check(h.upper_bound_dim == 1, format!("diag(1,2): H_Lambda dim {} != 1", h.upper_bound_dim));
    let diag = Matrix::diag(&[q(3), Scalar::from_ratio(Field::Q, 1, 3)]).unwrap();
    o.check(h.contains(&diag).unwrap(), "diag(1,2): diagonal torus lies in H_Lambda");
    o.check(!h.contains(&Matrix::from_i64(Field::Q, &[&[1, 1], &[0, 1]])).unwrap(), "diag(1,2): U not in H_Lambda");

    // Scalar: a fixed point.
    let x = sl_lie(&[&[1, 0], &[0, 1]]);
    let r = classify(&x).unwrap();
    o.check(r.labels.polystable, "scalar: polystable");
    o.check(!r.labels.stable, "scalar: not stable");
    let pool = conjugator_pool(&x, &algebra_closure(&x), &[]).unwrap();
    let sample = lambda_sample(&x, 2, &pool).unwrap();
    let full = pool.len() * weight_grid(2, 2, GroupType::SL).len();
    o.check(sample.len() == full, format!("scalar: sampled {} of {full} cocharacters", sample.len()));

    // Unipotent.
    let x = sl_lie(&[&[1, 1], &[0, 1]]);
    let r = classify(&x).unwrap();
    o.check(!r.labels.polystable, "unipotent: not polystable");
    match &r.witness {
        Some(w) => {
            o.check(w.cochar.weights() == [1, -1], format!("unipotent: weights {:?}", w.cochar.weights()));
            o.check(w.limit.mats()[0] == id, "unipotent: limit is I");
            let member = orbit_member(&x, &w.limit, 0).unwrap().member;
            o.check(!member && !w.limit_in_orbit, "unipotent: limit outside the orbit");
        }
        None => o.check(false, "unipotent: witness missing"),
    }
    o.summary = "three SL2 cases on gl2, exact".into();
    o
}

fn quaternion_pair_case() -> Outcome {
    let mut o = Outcome::new();
    let x = quaternion_pair(GroupType::GL);
    let r = classify(&x).unwrap();
    o.check(r.labels.polystable && r.labels.stable && r.labels.equicentral, "labels all true");
    o.check(r.dims.commutant_dim == 1, format!("commutant_dim {}", r.dims.commutant_dim));
    let oracle_dim = oracle_word_span_dim(x.mats(), 2);
    o.check(oracle_dim == 4, format!("word oracle dim {oracle_dim}"));
    o.check(r.dims.algebra_dim == oracle_dim, format!("algebra dim {} vs oracle {oracle_dim}", r.dims.algebra_dim));

    // Adjoint action on sl2: both entries have determinant one.
    let x_sl = quaternion_pair(GroupType::SL);
    let ad = ad_matrices(&x_sl).unwrap();
    let ad_alg = algebra_closure(&ad);
    let ad_oracle = oracle_word_span_dim(ad.mats(), 4);
    let ad_irreducible = is_irreducible(&ad_alg);
    o.check(
        ad_irreducible,
        format!("Ad-envelope on sl2 has dim {} (word oracle {ad_oracle}), irreducibility needs 9", ad_alg.dim()),
    );
    let ad_irr_implies_isotropic = !ad_irreducible || is_isotropic(&algebra_closure(&x), GroupType::GL);
    o.check(ad_irr_implies_isotropic, "Ad-irreducible implies isotropic");
    o.summary = format!("dim {}, commutant {}, Ad-envelope dim {}", r.dims.algebra_dim, r.dims.commutant_dim, ad_alg.dim());
    o
}

fn random_points(seed: u64, count: usize, max_len: usize) -> Vec<GroupPoint> {
    let mut rng = rng(seed);
    let combos = [
        (GroupType::GL, PointKind::Group),
        (GroupType::SL, PointKind::Group),
        (GroupType::GL, PointKind::Lie),
        (GroupType::SL, PointKind::Lie),
    ];
    (0..count)
        .map(|k| {
            let (group, kind) = combos[k % combos.len()];
            let n = 2 + (k / combos.len()) % 2;
            let len = 1 + (k / (2 * combos.len())) % max_len;
            random_tuple(&mut rng, group, kind, n, len)
        })
        .collect()
}

fn criterion_equivalence() -> Outcome {
    let mut o = Outcome::new();
    let points = random_points(0xA3, 600, 3);
    let (mut irr, mut cr_red, mut non_cr) = (0, 0, 0);
    for (k, x) in points.iter().enumerate() {
        let a = algebra_closure(x);
        let irreducible = a.dim() == x.n() * x.n();
        let cr = a.radical_dim() == 0;
        o.check(irreducible == (cr && a.commutant_dim() == 1), format!("tuple {k}: {x:?}"));
        match (irreducible, cr) {
            (true, _) => irr += 1,
            (false, true) => cr_red += 1,
            (false, false) => non_cr += 1,
        }
    }
    o.check(irr > 0 && cr_red > 0 && non_cr > 0, "corpus covers all three regimes");
    o.summary = format!("{} tuples: {irr} irreducible, {cr_red} CR reducible, {non_cr} not CR", points.len());
    o
}

fn criterion_hilbert_mumford() -> Outcome {
    let mut o = Outcome::new();
    let points = random_points(0x48, 240, 2);
    let (mut poly, mut stable, mut witnessed, mut checks) = (0, 0, 0, 0);
    for (k, x) in points.iter().enumerate() {
        let r = hm_crosscheck(x, 2, k as u64, &[]).unwrap();
        checks += r.checks.len();
        if !r.violations.is_empty() {
            o.check(false, format!("tuple {k} {x:?}: {:?}", r.violations));
        }
        poly += r.classification.labels.polystable as usize;
        stable += r.classification.labels.stable as usize;
        witnessed += (r.witness_ok == Some(true)) as usize;
    }
    o.check(poly > 0 && stable > 0 && witnessed > 0, "corpus covers polystable, stable and destabilized tuples");
    o.summary = format!(
        "{} tuples, {checks} sampled cocharacters: {poly} polystable, {stable} stable, {witnessed} witnesses",
        points.len()
    );
    o
}

fn invariant_view(r: &ClassificationReport) -> String {
    let w = r.witness.as_ref().map(|w| (w.cochar.weights().to_vec(), w.limit_in_orbit, w.refinements, w.flag.dims()));
    format!("{:?} {:?} {:?} {:?} {:?}", r.flags, r.labels, r.dims, w, r.notes)
}

fn criterion_invariance() -> Outcome {
    let mut o = Outcome::new();
    let mut rng = rng(0x55);
    let mut fixed = vec![
        sl_lie(&[&[1, 0], &[0, 2]]),
        sl_lie(&[&[1, 0], &[0, 1]]),
        sl_lie(&[&[1, 1], &[0, 1]]),
        sl_lie(&[&[0, 1], &[0, 0]]),
        quaternion_pair(GroupType::GL),
    ];
    fixed.extend(random_points(0x56, 7, 2));
    let mut conjugations = 0;
    for (k, x) in fixed.iter().enumerate() {
        let base = invariant_view(&classify(x).unwrap());
        for _ in 0..100 {
            let g = invertible(&mut rng, x.n(), x.field());
            let y = x.conjugate(&g).unwrap();
            let view = invariant_view(&classify(&y).unwrap());
            conjugations += 1;
            if view != base {
                o.check(false, format!("fixed tuple {k} changed under {g:?}: {base} vs {view}"));
                break;
            }
        }
    }

    let lifted = random_points(0x57, 60, 3);
    for (k, x) in lifted.iter().enumerate() {
        let over_q = serde_json::to_string(&report_to_dto(&classify(x).unwrap(), 0)).unwrap();
        let xi = x.to_field(Field::QI).unwrap();
        let over_qi = serde_json::to_string(&report_to_dto(&classify(&xi).unwrap(), 0)).unwrap();
        o.check(over_q == over_qi, format!("field lift changed tuple {k}"));
    }

    let mut witnesses = 0;
    for (k, x) in random_points(0x58, 160, 3).iter().enumerate() {
        let Some(w) = classify(x).unwrap().witness else { continue };
        witnesses += 1;
        for word in words(x.len(), 3) {
            if x.word(&word).trace() != w.limit.word(&word).trace() {
                o.check(false, format!("tuple {k}: trace of word {word:?} differs on the witness limit"));
            }
        }
    }
    o.check(witnesses > 0, "some witnesses checked");
    o.summary = format!(
        "{conjugations} conjugations of {} tuples, {} field lifts, {witnesses} witness limits",
        fixed.len(),
        lifted.len()
    );
    o
}

fn sampled_cochars(rng: &mut rand_chacha::ChaCha8Rng, n: usize, bound: i64, extra: usize) -> Vec<Cochar> {
    let mut hs = permutation_matrices(n, Field::Q);
    for _ in 0..extra {
        hs.push(unimodular(rng, n, Field::Q));
    }
    hs.iter()
        .flat_map(|h| weight_grid(n, bound, GroupType::GL).into_iter().map(move |w| Cochar::new(w, h.clone()).unwrap()))
        .collect()
}

fn criterion_exp() -> Outcome {
    let mut o = Outcome::new();
    let mut rng = rng(0x420);
    let mut pairs = 0;
    let mut existing = 0;
    for k in 0..120 {
        let n = 2 + k % 2;
        let v = random_nilpotent(&mut rng, n);
        let e = v.exp_nilpotent().unwrap();
        let bound = if n == 2 { 2 } else { 1 };
        for c in sampled_cochars(&mut rng, n, bound, 2) {
            let lie = c.limit_conj(&v).unwrap().is_some();
            let grp = c.limit_conj(&e).unwrap().is_some();
            pairs += 1;
            existing += lie as usize;
            if lie != grp {
                o.check(false, format!("v = {v:?}, weights {:?}: lie {lie}, exp {grp}", c.weights()));
            }
        }
    }
    o.check(existing > 0 && existing < pairs, "both outcomes occur");
    o.summary = format!("120 nilpotents, {pairs} (v, lambda) pairs, {existing} with a limit");
    o
}

fn criterion_mu() -> Outcome {
    let mut o = Outcome::new();
    let mut rng = rng(0x30);
    let mut pairs = 0;
    let mut zeros = 0;
    let mut count = 0;
    while count < 120 {
        let v = Matrix::from_fn(2, 2, Field::Q, |_, _| q(small(&mut rng)));
        if v.is_zero() {
            continue;
        }
        count += 1;
        for c in sampled_cochars(&mut rng, 2, 2, 2) {
            let mu = c.mu(&v).unwrap();
            let limit = c.limit_conj(&v).unwrap();
            pairs += 1;
            o.check((mu >= 0) == limit.is_some(), format!("v = {v:?}, weights {:?}: mu {mu}", c.weights()));
            if mu == 0 {
                zeros += 1;
                o.check(limit.as_ref().is_some_and(|l| !l.is_zero()), format!("v = {v:?}: mu = 0 with zero limit"));
            }
        }
    }
    o.check(zeros > 0, "mu = 0 occurs");
    o.summary = format!("{count} nonzero v in gl2, {pairs} pairs, {zeros} with mu = 0");
    o
}

fn criterion_representations() -> Outcome {
    let mut o = Outcome::new();
    let gl = |mats| GroupPoint::new(GroupType::GL, PointKind::Group, mats).unwrap();
    let a = Matrix::from_i64(Field::Q, &[&[1, 0], &[0, 2]]);
    let b = Matrix::diag(&[q(3), Scalar::from_ratio(Field::Q, 1, 3)]).unwrap();
    let r = classify_rep(&RepPresentation::z2(), &gl(vec![a.clone(), b]), 0).unwrap();
    o.check(r.reductive && !r.irreducible, "commuting pair: reductive, not irreducible");
    let swap = Matrix::from_i64(Field::Q, &[&[0, 1], &[1, 0]]);
    let res = classify_rep(&RepPresentation::z2(), &gl(vec![a, swap]), 0);
    o.check(
        res == Err(StabilityError::NotARepresentation { relator: 0 }),
        format!("non-commuting pair: {res:?}"),
    );
    let r = classify_rep(&RepPresentation::free(2), &quaternion_pair(GroupType::GL), 0).unwrap();
    o.check(r.good && r.reductive && r.irreducible, "free quaternion pair: good");
    o.summary = "commuting pair, relator violation, free pair".into();
    o
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("SL2 on gl2 worked cases", sl2_worked_cases),
        ("quaternion pair over Q(i)", quaternion_pair_case),
        ("irreducible <=> CR and scalar commutant", criterion_equivalence),
        ("Hilbert-Mumford cross-check", criterion_hilbert_mumford),
        ("invariance under conjugation, field lift, witness limits", criterion_invariance),
        ("exp vs. nilpotent limits", criterion_exp),
        ("mu-function", criterion_mu),
        ("representation checker", criterion_representations),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Outcome { failures: vec![format!("panicked: {}", msg.unwrap_or_default())], summary: String::new() }
        });
        let secs = t.elapsed().as_secs_f64();
        if outcome.failures.is_empty() {
            println!("criterion {} PASS  {name}: {} ({secs:.1}s)", k + 1, outcome.summary);
        } else {
            failed += 1;
            println!("criterion {} FAIL  {name}: {} ({secs:.1}s)", k + 1, outcome.summary);
            for f in outcome.failures.iter().take(5) {
                println!("    {f}");
            }
            if outcome.failures.len() > 5 {
                println!("    ... {} more", outcome.failures.len() - 5);
            }
        }
    }
    let total = start.elapsed();
    let in_time = total <= TIME_LIMIT;
    println!(
        "runtime {}  {:.1}s total (limit {}s)",
        if in_time { "PASS" } else { "FAIL" },
        total.as_secs_f64(),
        TIME_LIMIT.as_secs()
    );
    if !in_time {
        failed += 1;
    }
    if failed > 0 {
        println!("acceptance: {failed} failing");
        std::process::exit(1);
    }
    println!("acceptance: all criteria pass");
}
