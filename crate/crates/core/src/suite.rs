//! Verification suites shared by the command-line driver and the acceptance tests.
//!
//! Every suite returns its reports in a fixed order (parallel work is collected
//! order-stably), so output does not depend on the number of worker threads.

use std::fmt;

use rand::Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::axioms::identities::check_virasoro;
use crate::axioms::{
    check_commutators, check_conjugation, check_creation, check_jacobi, check_skew_symmetry,
    s3_transform_check, Perm,
};
use crate::contragredient::{
    build_contragredient, build_invariant_form, check_contragredient_jacobi, check_defining_relation,
    check_double_contragredient, check_dual_derivative, check_virasoro_adjoint, combine_direct_sum,
    direct_sum::{check_copy_of_v, check_direct_sum},
};
use crate::formal::{check_delta_identity, DeltaIdentity, FormalSeries, Window};
use crate::fusion::{
    build_verlinde, check_associativity, check_commutativity, check_intertwiner, check_s3_symmetry,
    module_action, skew_module_action, vertex_operator_of_v, FusionError, FusionTensor,
};
use crate::moduli::{check_operad_axioms, check_sewing_axiom, sampling_rng, ModuliElement, ModuliError};
use crate::rational::{cx_int, q, q_frac};
use crate::report::VerificationReport;
use crate::voa::{
    build_fock_module, build_heisenberg, monomial, partitions_up_to, vacuum, GradedVector, Partition,
    VOAInstance,
};

pub const ONE_LABEL_FIXTURE: &str = include_str!("../fixtures/one_label.fus");
pub const ISING_FIXTURE: &str = include_str!("../fixtures/ising.fus");
pub const Z3_FIXTURE: &str = include_str!("../fixtures/z3.fus");

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("{file}: {source}")]
    FusionFixture { file: String, source: FusionError },
    #[error("{file}: {source}")]
    ModuliFixture { file: String, source: ModuliError },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Delta,
    Creation,
    Skew,
    Commutators,
    Virasoro,
    Jacobi,
    Conjugation,
    S3,
    Contragredient,
    DirectSum,
    Fusion,
    Moduli,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::Delta,
        Suite::Creation,
        Suite::Skew,
        Suite::Commutators,
        Suite::Virasoro,
        Suite::Jacobi,
        Suite::Conjugation,
        Suite::S3,
        Suite::Contragredient,
        Suite::DirectSum,
        Suite::Fusion,
        Suite::Moduli,
    ];
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Delta => "delta",
            Suite::Creation => "creation",
            Suite::Skew => "skew",
            Suite::Commutators => "commutators",
            Suite::Virasoro => "virasoro",
            Suite::Jacobi => "jacobi",
            Suite::Conjugation => "conjugation",
            Suite::S3 => "s3",
            Suite::Contragredient => "contragredient",
            Suite::DirectSum => "direct-sum",
            Suite::Fusion => "fusion",
            Suite::Moduli => "moduli",
        })
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// Truncation level `L` of the Heisenberg algebra.
    pub level: usize,
    /// Half-width of the symmetric exponent window.
    pub window: i64,
    /// Series order for skew-symmetry, creation and conjugation.
    pub order: i64,
    /// Intermediate-weight cutoffs for the sewing-axiom comparison (strictly increasing).
    pub cutoffs: Vec<usize>,
    /// Truncation order `M` of local coordinates.
    pub moduli_order: usize,
    pub seed: u64,
    /// Number of triples in the permutation suite.
    pub s3_triples: usize,
    /// Level used by the `V ⊕ W` suite.
    pub direct_sum_level: usize,
    /// `(name, contents)` of fusion fixtures.
    pub fusion_fixtures: Vec<(String, String)>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            level: 6,
            window: 3,
            order: 6,
            cutoffs: vec![4, 8, 12],
            moduli_order: 8,
            seed: 2024,
            s3_triples: 50,
            direct_sum_level: 4,
            fusion_fixtures: vec![
                ("one_label.fus".into(), ONE_LABEL_FIXTURE.into()),
                ("ising.fus".into(), ISING_FIXTURE.into()),
                ("z3.fus".into(), Z3_FIXTURE.into()),
            ],
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<(), SuiteError> {
        if self.window < 0 {
            return Err(SuiteError::Config(format!("window must be nonnegative, got {}", self.window)));
        }
        if self.order < 0 {
            return Err(SuiteError::Config(format!("order must be nonnegative, got {}", self.order)));
        }
        if self.cutoffs.is_empty() || self.cutoffs.windows(2).any(|w| w[0] >= w[1]) {
            return Err(SuiteError::Config(format!(
                "cutoff schedule must be nonempty and strictly increasing, got {:?}",
                self.cutoffs
            )));
        }
        if self.moduli_order == 0 {
            return Err(SuiteError::Config("moduli order must be at least 1".into()));
        }
        Ok(())
    }
}

fn basis_vectors(max_weight: usize) -> Vec<GradedVector> {
    partitions_up_to(max_weight).into_iter().map(GradedVector::basis).collect()
}

/// Basis triples of total weight at most `max_total`, in a fixed order.
pub fn basis_triples(max_total: usize) -> Vec<[Partition; 3]> {
    let ps = partitions_up_to(max_total);
    let mut out = Vec::new();
    for a in &ps {
        for b in &ps {
            for c in &ps {
                if a.weight() + b.weight() + c.weight() <= max_total {
                    out.push([a.clone(), b.clone(), c.clone()]);
                }
            }
        }
    }
    out
}

/// `p(0), p(1), …` from Euler's pentagonal recurrence.
pub fn partition_counts(n: usize) -> Vec<usize> {
    let mut p = vec![0i64; n + 1];
    p[0] = 1;
    for m in 1..=n as i64 {
        let mut acc = 0i64;
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let s = if k % 2 == 1 { 1 } else { -1 };
            acc += s * p[(m - g1) as usize];
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= m {
                acc += s * p[(m - g2) as usize];
            }
        }
        p[m as usize] = acc;
    }
    p.into_iter().map(|x| x as usize).collect()
}

fn random_laurent(rng: &mut impl Rng) -> FormalSeries {
    let mut terms: Vec<(Vec<i64>, crate::rational::Q)> = Vec::new();
    for e in -6..=6 {
        if rng.gen_bool(0.4) {
            terms.push((vec![e], q_frac(rng.gen_range(-9..=9), rng.gen_range(1..=4))));
        }
    }
    FormalSeries::polynomial(&["x"], terms)
}

pub fn delta_suite(cfg: &SuiteConfig) -> Vec<VerificationReport> {
    let mut rng = sampling_rng(cfg.seed);
    let polys: Vec<FormalSeries> = (0..25).map(|_| random_laurent(&mut rng)).collect();
    let w1 = Window::symmetric(1, cfg.window);
    let mut fundamental = VerificationReport::new(
        DeltaIdentity::Fundamental(FormalSeries::polynomial(&["x"], vec![])).to_string(),
        format!("polynomials=25,window=[{},{}]", -cfg.window, cfg.window),
    );
    for r in polys
        .into_par_iter()
        .map(|f| check_delta_identity(&DeltaIdentity::Fundamental(f), &w1).expect("one-variable identity"))
        .collect::<Vec<_>>()
    {
        fundamental.absorb(r);
    }
    let w3 = Window::symmetric(3, cfg.window);
    vec![
        fundamental,
        check_delta_identity(&DeltaIdentity::TwoTerm, &w3).expect("three variables"),
        check_delta_identity(&DeltaIdentity::ThreeTerm, &w3).expect("three variables"),
    ]
}

pub fn creation_suite(alg: &VOAInstance, cfg: &SuiteConfig) -> Vec<VerificationReport> {
    basis_vectors(alg.level())
        .par_iter()
        .map(|v| check_creation(alg, v, cfg.order))
        .collect()
}

pub fn skew_suite(alg: &VOAInstance, cfg: &SuiteConfig) -> Vec<VerificationReport> {
    let ps = basis_vectors(alg.level());
    let pairs: Vec<(&GradedVector, &GradedVector)> = ps
        .iter()
        .flat_map(|u| ps.iter().map(move |v| (u, v)))
        .filter(|(u, v)| u.max_weight().unwrap_or(0) + v.max_weight().unwrap_or(0) <= alg.level())
        .collect();
    pairs
        .par_iter()
        .map(|(u, v)| check_skew_symmetry(alg, u, v, cfg.order))
        .collect()
}

pub fn commutator_suite(alg: &VOAInstance, cfg: &SuiteConfig) -> Vec<VerificationReport> {
    basis_vectors(alg.level())
        .par_iter()
        .map(|v| check_commutators(alg, v, -cfg.window, cfg.window))
        .collect()
}

/// Virasoro relations with `c = 1` for `|m|, |n| ≤ 4` on weight `≤ 4`, and the weight-space dimensions.
pub fn virasoro_suite(alg: &VOAInstance) -> Vec<VerificationReport> {
    let bracket = check_virasoro(alg, alg.central_charge(), 4, alg.level().min(4));
    let mut dims = VerificationReport::new("weight-space-dimensions", format!("level={}", alg.level()));
    let expected = partition_counts(alg.level());
    for (n, (got, want)) in alg.dims().into_iter().zip(expected).enumerate() {
        dims.checked += 1;
        dims.compare(&[n as i64], "dim", q(got as i64), q(want as i64));
    }
    vec![bracket, dims]
}

/// The Jacobi identity for every basis triple of total weight below the level.
pub fn jacobi_suite(alg: &VOAInstance, cfg: &SuiteConfig) -> Vec<VerificationReport> {
    let win = Window::symmetric(3, cfg.window);
    let triples = basis_triples(alg.level().saturating_sub(1));
    let reports: Vec<VerificationReport> = triples
        .par_iter()
        .map(|[u, v, w]| {
            let (u, v, w) = (GradedVector::basis(u.clone()), GradedVector::basis(v.clone()), GradedVector::basis(w.clone()));
            check_jacobi(alg, &u, &v, &w, &win)
        })
        .collect();
    let mut total = VerificationReport::new(
        "jacobi",
        format!("level={},window={},triples={}", alg.level(), cfg.window, triples.len()),
    );
    for r in reports {
        total.absorb(r);
    }
    vec![total]
}

pub fn conjugation_suite(alg: &VOAInstance, cfg: &SuiteConfig) -> Vec<VerificationReport> {
    basis_vectors(alg.level())
        .par_iter()
        .map(|v| check_conjugation(alg, v, cfg.order))
        .collect()
}

/// Both transposition steps and all six permuted identities on a deterministic sample of triples.
pub fn s3_suite(alg: &VOAInstance, cfg: &SuiteConfig) -> Vec<VerificationReport> {
    let win = Window::symmetric(3, cfg.window);
    let mut triples = basis_triples(alg.level().saturating_sub(1));
    let mut rng = sampling_rng(cfg.seed ^ 0x53);
    let mut chosen = Vec::new();
    while chosen.len() < cfg.s3_triples && !triples.is_empty() {
        chosen.push(triples.swap_remove(rng.gen_range(0..triples.len())));
    }
    let jobs: Vec<([Partition; 3], Perm)> = chosen
        .iter()
        .flat_map(|t| Perm::ALL.iter().map(move |p| (t.clone(), *p)))
        .collect();
    let reports: Vec<(Perm, VerificationReport)> = jobs
        .par_iter()
        .map(|([u, v, w], p)| {
            let (u, v, w) = (GradedVector::basis(u.clone()), GradedVector::basis(v.clone()), GradedVector::basis(w.clone()));
            (*p, s3_transform_check(alg, &u, &v, &w, *p, &win))
        })
        .collect();
    Perm::ALL
        .iter()
        .map(|p| {
            let mut total = VerificationReport::new(
                format!("s3-{p}"),
                format!("level={},triples={},window={}", alg.level(), chosen.len(), cfg.window),
            );
            for (_, r) in reports.iter().filter(|(q, _)| q == p) {
                total.absorb(r.clone());
            }
            total
        })
        .collect()
}

pub fn contragredient_suite(alg: &VOAInstance, cfg: &SuiteConfig) -> Vec<VerificationReport> {
    let mut out = Vec::new();
    let mut form_report = VerificationReport::new("invariant-form", format!("level={}", alg.level()));
    match build_invariant_form(alg, alg, &q(1)) {
        Ok(f) => {
            form_report.record(f.pair(&vacuum(), &vacuum()) == q(1), &[0], "(1,1) = 1");
            form_report.record(f.symmetric, &[1], "symmetric");
            form_report.record(f.is_nondegenerate(), &[2], "nondegenerate blocks");
            form_report.record(f.pair(alg.omega(), alg.omega()) == q_frac(1, 2), &[3], "(omega,omega) = 1/2");
            let ps = partitions_up_to(alg.level());
            let off_block = ps.iter().all(|a| {
                ps.iter().all(|b| {
                    a.weight() == b.weight()
                        || f.pair(&GradedVector::basis(a.clone()), &GradedVector::basis(b.clone())) == q(0)
                })
            });
            form_report.record(off_block, &[4], "weight-block-diagonal");
        }
        Err(e) => form_report.record(false, &[0], e),
    }
    out.push(form_report);

    let dual = build_contragredient(alg, alg);
    let vs = basis_vectors(alg.level());
    let lo = -cfg.window;
    let hi = cfg.window;
    out.extend(
        vs.par_iter()
            .map(|v| check_defining_relation(alg, &dual, v, lo, hi))
            .collect::<Vec<_>>(),
    );
    out.push(check_virasoro_adjoint(&dual, alg.level() as i64));
    out.extend(
        vs.par_iter()
            .map(|v| check_dual_derivative(alg, &dual, v, lo, hi))
            .collect::<Vec<_>>(),
    );
    let win = Window::symmetric(3, cfg.window);
    let triples = basis_triples(3);
    out.extend(
        triples
            .par_iter()
            .map(|[u, v, w]| {
                let (u, v, w) = (GradedVector::basis(u.clone()), GradedVector::basis(v.clone()), GradedVector::basis(w.clone()));
                check_contragredient_jacobi(alg, &dual, &u, &v, &w, &win)
            })
            .collect::<Vec<_>>(),
    );
    out.push(check_double_contragredient(alg, alg, alg.level(), alg.level() as i64));
    let m = build_fock_module(alg.level().min(4), q(1));
    out.push(check_double_contragredient(alg, &m, 2, 3));
    out
}

pub fn direct_sum_suite(cfg: &SuiteConfig) -> Vec<VerificationReport> {
    let v = build_heisenberg(cfg.direct_sum_level);
    let w = build_heisenberg(cfg.direct_sum_level);
    let (fv, fw) = match (build_invariant_form(&v, &v, &q(1)), build_invariant_form(&v, &w, &q(1))) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            let mut r = VerificationReport::new("direct-sum", "form");
            r.record(false, &[], e);
            return vec![r];
        }
    };
    match combine_direct_sum(&v, &w, fv, fw) {
        Ok(ds) => vec![check_direct_sum(&ds, cfg.window), check_copy_of_v(&ds, cfg.window)],
        Err(e) => {
            let mut r = VerificationReport::new("direct-sum", "combine");
            r.record(false, &[], e);
            vec![r]
        }
    }
}

/// S3 symmetry, commutativity, unit detection and associativity for one fusion tensor.
pub fn fusion_tensor_reports(name: &str, t: &FusionTensor) -> Vec<VerificationReport> {
    let tag = |mut r: VerificationReport| {
        r.params = format!("file={name},{}", r.params);
        r
    };
    let mut out = vec![tag(check_s3_symmetry(t))];
    match build_verlinde(t) {
        Ok(a) => {
            out.push(tag(check_commutativity(&a)));
            out.push(tag(check_associativity(&a)));
            let mut unit = VerificationReport::new("verlinde-unit", format!("labels={}", a.size()));
            unit.record(a.unit, &[], format!("{} is a two-sided unit", a.labels()[0]));
            out.push(tag(unit));
        }
        Err(e) => {
            let mut r = VerificationReport::new(e.kind(), format!("labels={}", t.size()));
            r.record(false, &[], e);
            out.push(tag(r));
        }
    }
    out
}

/// The canonical intertwiners `Y_V`, `Y_M` and its skew partner on `M(1)`.
pub fn intertwiner_reports(level: usize, window: i64) -> Vec<VerificationReport> {
    let v = build_heisenberg(level);
    let m = build_fock_module(level, q(1));
    let win = Window::symmetric(3, window);
    let data = [vertex_operator_of_v(&v), module_action(&v, &m), skew_module_action(&v, &m)];
    let out = data.iter().map(|d| check_intertwiner(d, &win, 1)).collect();
    out
}

pub fn fusion_suite(cfg: &SuiteConfig) -> Result<Vec<VerificationReport>, SuiteError> {
    let mut out = Vec::new();
    for (name, text) in &cfg.fusion_fixtures {
        let t = FusionTensor::parse(text).map_err(|source| SuiteError::FusionFixture {
            file: name.clone(),
            source,
        })?;
        out.extend(fusion_tensor_reports(name, &t));
    }
    out.extend(intertwiner_reports(cfg.level.min(4), cfg.window.min(2)));
    Ok(out)
}

/// Operad axioms on a random sample, and the sewing axiom with `I` and with `P(2) _1∞_0 P(1)`.
pub fn moduli_suite(cfg: &SuiteConfig) -> Vec<VerificationReport> {
    let m = cfg.moduli_order;
    let mut out = check_operad_axioms(cfg.seed, 20, m);
    let v = build_heisenberg(cfg.level);
    let p2 = ModuliElement::p(cx_int(2), m).expect("valid");
    let p1 = ModuliElement::p(cx_int(1), m).expect("valid");
    let a = monomial(&[1]);
    let vectors = [monomial(&[1, 1]), a.clone(), a.clone()];
    let dual = GradedVector::from_terms([(Partition::new(vec![1]), q(1)), (Partition::new(vec![2]), q(1))]);
    for (q2, name, vs) in [
        (ModuliElement::identity(m), "Q2=I", &vectors[..2]),
        (p1, "Q2=P(1)", &vectors[..]),
    ] {
        match check_sewing_axiom(&v, &p2, 1, &q2, vs, &dual, &cfg.cutoffs) {
            Ok((mut r, _)) => {
                r.params = format!("{name},{}", r.params);
                out.push(r);
            }
            Err(e) => {
                let mut r = VerificationReport::new("sewing-axiom", name);
                r.record(false, &[], e);
                out.push(r);
            }
        }
    }
    out
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<Vec<VerificationReport>, SuiteError> {
    cfg.validate()?;
    let alg = || build_heisenberg(cfg.level);
    Ok(match suite {
        Suite::Delta => delta_suite(cfg),
        Suite::Creation => creation_suite(&alg(), cfg),
        Suite::Skew => skew_suite(&alg(), cfg),
        Suite::Commutators => commutator_suite(&alg(), cfg),
        Suite::Virasoro => virasoro_suite(&alg()),
        Suite::Jacobi => jacobi_suite(&alg(), cfg),
        Suite::Conjugation => conjugation_suite(&alg(), cfg),
        Suite::S3 => s3_suite(&alg(), cfg),
        Suite::Contragredient => contragredient_suite(&alg(), cfg),
        Suite::DirectSum => direct_sum_suite(cfg),
        Suite::Fusion => fusion_suite(cfg)?,
        Suite::Moduli => moduli_suite(cfg),
    })
}

/// Runs the given suites in order on a pool of `jobs` threads.
pub fn run(suites: &[Suite], cfg: &SuiteConfig, jobs: usize) -> Result<Vec<(Suite, VerificationReport)>, SuiteError> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| SuiteError::Config(e.to_string()))?;
    pool.install(|| {
        let mut out = Vec::new();
        for &s in suites {
            out.extend(run_suite(s, cfg)?.into_iter().map(|r| (s, r)));
        }
        Ok(out)
    })
}
