//! The partial-operad axioms for sewing: associativity in its three index regimes,
//! equivariance under permutations, and the identity `I`.

use num::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::element::{LocalCoordinate, ModuliElement};
use super::sewing::sew;
use super::ModuliError;
use crate::rational::{cx, q_frac, Cx};
use crate::report::VerificationReport;

fn sewn(q1: &ModuliElement, i: usize, q2: &ModuliElement) -> Result<ModuliElement, ModuliError> {
    sew(q1, i, q2).map(|r| r.element)
}

/// Records `lhs == rhs`, or a skip when either side is outside the supported subclass.
fn record(
    report: &mut VerificationReport,
    tag: &[i64],
    what: &str,
    lhs: Result<ModuliElement, ModuliError>,
    rhs: Result<ModuliElement, ModuliError>,
) {
    match (lhs, rhs) {
        (Ok(l), Ok(r)) => report.record(l == r, tag, what),
        (Err(ModuliError::UnsupportedSewing(_)), _)
        | (Err(ModuliError::SewingUndefined(_)), _)
        | (_, Err(ModuliError::UnsupportedSewing(_)))
        | (_, Err(ModuliError::SewingUndefined(_))) => report.skipped += 1,
        (Err(e), _) | (_, Err(e)) => report.record(false, tag, format!("{what}: {e}")),
    }
}

/// `Q _i∞_0 I = I _1∞_0 Q = Q`.
pub fn check_identity_axiom(sample: &[ModuliElement]) -> VerificationReport {
    let mut report = VerificationReport::new("operad-identity", format!("elements={}", sample.len()));
    for (s, q) in sample.iter().enumerate() {
        let id = ModuliElement::identity(q.order);
        for i in 1..=q.arity() {
            record(&mut report, &[s as i64, i as i64], "Q_i I", sewn(q, i, &id), Ok(q.clone()));
        }
        record(&mut report, &[s as i64, 0], "I_1 Q", sewn(&id, 1, q), Ok(q.clone()));
    }
    report
}

/// `Q(a) _1∞_0 Q(b) = Q(ab)`.
pub fn check_scaling_composition(pairs: &[(Cx, Cx)], order: usize) -> VerificationReport {
    let mut report = VerificationReport::new("operad-scaling", format!("pairs={},order={order}", pairs.len()));
    for (s, (a, b)) in pairs.iter().enumerate() {
        let lhs = sewn(&ModuliElement::scaling(a.clone(), order), 1, &ModuliElement::scaling(b.clone(), order));
        record(&mut report, &[s as i64], "Q(a) Q(b)", lhs, Ok(ModuliElement::scaling(a * b, order)));
    }
    report
}

/// Which of the three cases of the associativity axiom `(i1, i2)` falls into.
pub fn associativity_regime(i1: usize, i2: usize, k: usize) -> usize {
    if i2 < i1 {
        0
    } else if i2 < i1 + k {
        1
    } else {
        2
    }
}

/// `(Q1 _{i1}∞ Q2) _{i2}∞ Q3` against the rearrangement prescribed by its regime.
pub fn associativity_instance(
    q1: &ModuliElement,
    q2: &ModuliElement,
    q3: &ModuliElement,
    i1: usize,
    i2: usize,
) -> (Result<ModuliElement, ModuliError>, Result<ModuliElement, ModuliError>) {
    let (k, l) = (q2.arity(), q3.arity());
    let lhs = sewn(q1, i1, q2).and_then(|x| sewn(&x, i2, q3));
    let rhs = match associativity_regime(i1, i2, k) {
        0 => sewn(q1, i2, q3).and_then(|x| sewn(&x, l + i1 - 1, q2)),
        1 => sewn(q2, i2 - i1 + 1, q3).and_then(|y| sewn(q1, i1, &y)),
        _ => sewn(q1, i2 + 1 - k, q3).and_then(|x| sewn(&x, i1, q2)),
    };
    (lhs, rhs)
}

/// Associativity over every admissible `(i1, i2)` for each triple; reports per-regime counts in notes.
pub fn check_associativity(triples: &[(ModuliElement, ModuliElement, ModuliElement)]) -> VerificationReport {
    let mut report = VerificationReport::new("operad-associativity", format!("triples={}", triples.len()));
    let mut per_regime = [0usize; 3];
    for (s, (q1, q2, q3)) in triples.iter().enumerate() {
        let (j, k) = (q1.arity(), q2.arity());
        for i1 in 1..=j {
            for i2 in 1..(j + k) {
                let (lhs, rhs) = associativity_instance(q1, q2, q3, i1, i2);
                let regime = associativity_regime(i1, i2, k);
                let before = report.checked;
                record(&mut report, &[s as i64, i1 as i64, i2 as i64, regime as i64], "associativity", lhs, rhs);
                per_regime[regime] += report.checked - before;
            }
        }
    }
    report.notes.push(format!(
        "checked per regime: i2<i1 {}, i1<=i2<i1+k {}, i2>=i1+k {}",
        per_regime[0], per_regime[1], per_regime[2]
    ));
    report
}

/// Composition `(στ)(k) = σ(τ(k))` of permutations in image notation.
pub fn compose_perm(sigma: &[usize], tau: &[usize]) -> Vec<usize> {
    tau.iter().map(|&t| sigma[t - 1]).collect()
}

pub fn invert_perm(sigma: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; sigma.len()];
    for (k, &s) in sigma.iter().enumerate() {
        inv[s - 1] = k + 1;
    }
    inv
}

/// The permutation of `Q1 _{σ^{-1}(i)}∞ Q2`'s punctures that yields `σ(Q1) _i∞ Q2`: the
/// `k` punctures of `Q2` move as a block, the others follow `σ`.
pub fn block_permutation(sigma: &[usize], i: usize, k: usize) -> Vec<usize> {
    let j = sigma.len();
    let i_old = invert_perm(sigma)[i - 1];
    let place = |l: usize, at: usize| if l < at { l } else { l + k - 1 };
    let mut out = vec![0; j + k - 1];
    for l in 1..=j {
        if l != i_old {
            out[place(l, i_old) - 1] = place(sigma[l - 1], i);
        }
    }
    for t in 1..=k {
        out[i_old + t - 2] = i + t - 1;
    }
    out
}

/// `1 ⊕ … ⊕ τ ⊕ … ⊕ 1` with `τ` acting on the block of positions `i, …, i + k - 1`.
pub fn inserted_permutation(tau: &[usize], i: usize, j: usize) -> Vec<usize> {
    let k = tau.len();
    (1..j + k).map(|p| if p >= i && p < i + k { i - 1 + tau[p - i] } else { p }).collect()
}

/// Equivariance for each `(Q1, Q2, σ, τ)`: `σ(Q1) _i∞ Q2` and `Q1 _i∞ τ(Q2)` against the
/// permuted sewings, for every puncture `i` of `Q1`; plus the group-action law `σ(τQ) = (στ)Q`.
pub fn check_equivariance(
    instances: &[(ModuliElement, ModuliElement, Vec<usize>, Vec<usize>)],
) -> VerificationReport {
    let mut report = VerificationReport::new("operad-equivariance", format!("instances={}", instances.len()));
    for (s, (q1, q2, sigma, tau)) in instances.iter().enumerate() {
        let (j, k) = (q1.arity(), q2.arity());
        let s = s as i64;
        for i in 1..=j {
            let i_old = invert_perm(sigma)[i - 1];
            let lhs = q1.permute(sigma).and_then(|p| sewn(&p, i, q2));
            let rhs = sewn(q1, i_old, q2).and_then(|x| x.permute(&block_permutation(sigma, i, k)));
            record(&mut report, &[s, 0, i as i64], "sigma(Q1) Q2", lhs, rhs);
            let lhs = q2.permute(tau).and_then(|p| sewn(q1, i, &p));
            let rhs = sewn(q1, i, q2).and_then(|x| x.permute(&inserted_permutation(tau, i, j)));
            record(&mut report, &[s, 1, i as i64], "Q1 tau(Q2)", lhs, rhs);
        }
        let twice = q1.permute(sigma).and_then(|x| x.permute(sigma));
        record(&mut report, &[s, 2], "sigma(sigma Q1)", twice, q1.permute(&compose_perm(sigma, sigma)));
        let back = q2.permute(tau).and_then(|x| x.permute(&invert_perm(tau)));
        record(&mut report, &[s, 3], "tau^-1(tau Q2)", back, Ok(q2.clone()));
    }
    report
}

/// Runs every axiom family on a deterministic random sample.
pub fn check_operad_axioms(seed: u64, count: usize, order: usize) -> Vec<VerificationReport> {
    let mut rng = sampling_rng(seed);
    let sample: Vec<ModuliElement> = (0..count).map(|_| random_element(&mut rng, order, true)).collect();
    let pairs: Vec<(Cx, Cx)> = (0..count).map(|_| (random_scale(&mut rng), random_scale(&mut rng))).collect();
    let triples: Vec<_> = (0..count.div_ceil(4))
        .map(|_| {
            let q1 = random_spread(&mut rng, 3, order);
            let q2 = random_cluster(&mut rng, 2, order, 8);
            let l = rng.gen_range(1..=2);
            let q3 = random_cluster(&mut rng, l, order, 100);
            (q1, q2, q3)
        })
        .collect();
    let instances: Vec<_> = (0..count.div_ceil(4))
        .map(|_| {
            let q1 = random_spread(&mut rng, 3, order);
            let q2 = random_cluster(&mut rng, 2, order, 8);
            (q1, q2, random_perm(&mut rng, 3), random_perm(&mut rng, 2))
        })
        .collect();
    vec![
        check_identity_axiom(&sample),
        check_scaling_composition(&pairs, order),
        check_associativity(&triples),
        check_equivariance(&instances),
    ]
}

pub fn sampling_rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_rational(rng: &mut ChaCha8Rng, num: i64, den: i64) -> Cx {
    cx(q_frac(rng.gen_range(-num..=num), rng.gen_range(1..=den)))
}

pub fn random_scale(rng: &mut ChaCha8Rng) -> Cx {
    loop {
        let s = random_rational(rng, 4, 3);
        if !Zero::is_zero(&s) {
            return s;
        }
    }
}

fn distinct_positions(rng: &mut ChaCha8Rng, count: usize, mut draw: impl FnMut(&mut ChaCha8Rng) -> Cx) -> Vec<Cx> {
    let mut z: Vec<Cx> = Vec::new();
    while z.len() < count {
        let p = draw(rng);
        if !Zero::is_zero(&p) && !z.contains(&p) {
            z.push(p);
        }
    }
    z
}

/// A random element of arity 1–3; with `curved`, coordinates away from puncture 1 get random
/// higher coefficients and the coordinate at `∞` may have its pole moved off 0.
pub fn random_element(rng: &mut ChaCha8Rng, order: usize, curved: bool) -> ModuliElement {
    let n = rng.gen_range(1..=3);
    let z = distinct_positions(rng, n - 1, |r| {
        let re = random_rational(r, 6, 2);
        if r.gen_bool(0.25) {
            Cx::new(re.re, q_frac(r.gen_range(-3..=3), 1))
        } else {
            re
        }
    });
    let coords = (0..n)
        .map(|k| {
            let mut c = LocalCoordinate::standard(random_scale(rng), order);
            if curved && k > 0 {
                for a in c.a.iter_mut() {
                    *a = random_rational(rng, 2, 3);
                }
            }
            c
        })
        .collect();
    let mut infinity = vec![Cx::zero(); order];
    if curved && rng.gen_bool(0.5) {
        // a Möbius coordinate 1/(w - t) at ∞
        infinity[0] = random_rational(rng, 3, 2);
    }
    let e = ModuliElement {
        order,
        z,
        infinity,
        coords,
        det: Cx::one(),
    };
    e.validate().expect("valid random element");
    e
}

/// Standard coordinates, punctures at least 2 apart.
fn random_spread(rng: &mut ChaCha8Rng, n: usize, order: usize) -> ModuliElement {
    let z = distinct_positions(rng, n - 1, |r| cx(q_frac(4 * r.gen_range(-3..=3), 1) + q_frac(r.gen_range(-2..=2), 4)));
    let scales = (0..n).map(|_| random_scale(rng)).collect();
    ModuliElement::standard(z, scales, order).expect("valid")
}

/// Standard coordinates, punctures within `1/2` of the origin on a `1/den` grid.
fn random_cluster(rng: &mut ChaCha8Rng, n: usize, order: usize, den: i64) -> ModuliElement {
    let z = distinct_positions(rng, n - 1, |r| cx(q_frac(r.gen_range(-den / 2..=den / 2), den)));
    let scales = (0..n)
        .map(|_| cx(q_frac(if rng.gen_bool(0.5) { 1 } else { -1 } * rng.gen_range(1..=3), 1)))
        .collect();
    ModuliElement::standard(z, scales, order).expect("valid")
}

pub fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (1..=n).collect();
    for k in (1..n).rev() {
        p.swap(k, rng.gen_range(0..=k));
    }
    p
}
