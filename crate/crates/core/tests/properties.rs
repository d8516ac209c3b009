use proptest::prelude::*;

use voa_verify::axioms::identities::virasoro_bracket_defect;
use voa_verify::axioms::{check_creation, check_jacobi, check_skew_symmetry, s3_transform_check, Perm};
use voa_verify::contragredient::{build_contragredient, build_invariant_form, check_defining_relation, pair};
use voa_verify::formal::{
    binomial_expand, check_delta_identity, series_multiply, DeltaIdentity, ExpansionDirection, FormalSeries,
    Window,
};
use voa_verify::fusion::{build_verlinde, check_associativity, check_commutativity, FusionTensor};
use voa_verify::moduli::{
    check_identity_axiom, check_sewing_axiom, compose_perm, random_element, random_perm, sampling_rng, sew,
    ModuliElement,
};
use voa_verify::rational::{cx, q, q_frac, Q};
use voa_verify::suite::partition_counts;
use voa_verify::voa::{build_heisenberg, partitions_up_to, GradedVector, Partition, VOAInstance, VertexModule};

const L: usize = 5;

fn alg() -> &'static VOAInstance {
    static ALG: std::sync::OnceLock<VOAInstance> = std::sync::OnceLock::new();
    ALG.get_or_init(|| build_heisenberg(L))
}

fn rational() -> impl Strategy<Value = Q> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| q_frac(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Q> {
    (prop_oneof![-6i64..=-1, 1i64..=6], 1i64..=4).prop_map(|(n, d)| q_frac(n, d))
}

fn laurent(nvars: usize) -> impl Strategy<Value = FormalSeries> {
    let names = ["x0", "x1", "x2"];
    prop::collection::vec((prop::collection::vec(-6i64..=6, nvars), rational()), 0..6)
        .prop_map(move |terms| FormalSeries::polynomial(&names[..nvars], terms))
}

fn partition(max_weight: usize) -> impl Strategy<Value = Partition> {
    let all = partitions_up_to(max_weight);
    (0..all.len()).prop_map(move |i| all[i].clone())
}

fn basis(max_weight: usize) -> impl Strategy<Value = GradedVector> {
    partition(max_weight).prop_map(GradedVector::basis)
}

fn triple(max_total: usize) -> impl Strategy<Value = [GradedVector; 3]> {
    (basis(max_total), basis(max_total), basis(max_total))
        .prop_filter("within the weight budget", move |(a, b, c)| {
            let w = |v: &GradedVector| v.max_weight().unwrap_or(0);
            w(a) + w(b) + w(c) <= max_total
        })
        .prop_map(|(a, b, c)| [a, b, c])
}

/// Self-dual labels `0..n` with symmetric multiplicities and `0` as unit.
fn symmetric_tensor() -> impl Strategy<Value = FusionTensor> {
    (2usize..=4)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(0u64..=2, n * n * n)))
        .prop_map(|(n, raw)| {
            let labels = (0..n).map(|i| format!("l{i}")).collect();
            let mut t = FusionTensor::new(labels, (0..n).collect()).unwrap();
            for i in 0..n {
                for j in i..n {
                    for k in j..n {
                        let v = if i == 0 { u64::from(j == k) } else { raw[(i * n + j) * n + k] };
                        for [a, b, c] in [[i, j, k], [i, k, j], [j, i, k], [j, k, i], [k, i, j], [k, j, i]] {
                            t.set(a, b, c, v);
                        }
                    }
                }
            }
            t
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn fundamental_delta_property(f in laurent(1), r in 0i64..=5) {
        let rep = check_delta_identity(&DeltaIdentity::Fundamental(f), &Window::symmetric(1, r)).unwrap();
        prop_assert!(rep.passed(), "{}", rep);
    }

    #[test]
    fn two_and_three_term_identities(lo in -4i64..=0, width in 0i64..=4) {
        let w = Window::cube(3, lo, lo + width);
        for id in [DeltaIdentity::TwoTerm, DeltaIdentity::ThreeTerm] {
            let rep = check_delta_identity(&id, &w).unwrap();
            prop_assert!(rep.passed(), "{}", rep);
        }
    }

    #[test]
    fn product_is_commutative_and_associative(a in laurent(2), b in laurent(2), c in laurent(2)) {
        let w = Window::symmetric(2, 20);
        let ab = series_multiply(&a, &b, &w).unwrap();
        let ba = series_multiply(&b, &a, &w).unwrap();
        prop_assert_eq!(ab.terms().collect::<Vec<_>>(), ba.terms().collect::<Vec<_>>());
        let left = series_multiply(&ab, &c, &w).unwrap();
        let right = series_multiply(&a, &series_multiply(&b, &c, &w).unwrap(), &w).unwrap();
        prop_assert_eq!(left.terms().collect::<Vec<_>>(), right.terms().collect::<Vec<_>>());
    }

    #[test]
    fn binomial_powers_are_inverse(n in -6i64..=6, r in 0i64..=6, swap in any::<bool>()) {
        let vars = ["x", "y"];
        let dir = if swap { ExpansionDirection::new("y", "x") } else { ExpansionDirection::new("x", "y") }.unwrap();
        let big = n.abs() + 2 * r + 2;
        let wide = Window::cube(2, -big, big);
        let p = binomial_expand(&vars, "x", "y", n, &dir, &wide).unwrap();
        let m = binomial_expand(&vars, "x", "y", -n, &dir, &wide).unwrap();
        let prod = series_multiply(&p, &m, &Window::symmetric(2, r)).unwrap();
        for e in prod.window().points() {
            let expected = if e == [0, 0] { q(1) } else { q(0) };
            prop_assert_eq!(prod.coeff(&e), expected, "at {:?}", e);
        }
    }

    #[test]
    fn virasoro_bracket(m in -3i64..=3, n in -3i64..=3, v in basis(2)) {
        let (lhs, rhs) = virasoro_bracket_defect(alg().space(), &q(1), m, n, &v);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn modes_are_homogeneous(u in basis(3), v in basis(3), n in -4i64..=4) {
        let out = alg().space().act(&u, n, &v);
        let expected = u.max_weight().unwrap() as i64 + v.max_weight().unwrap() as i64 - n - 1;
        for (p, _) in out.terms() {
            prop_assert_eq!(p.weight() as i64, expected);
        }
    }

    #[test]
    fn lower_truncation(u in basis(4), v in basis(4), extra in 0i64..=4) {
        let n = (u.max_weight().unwrap() + v.max_weight().unwrap()) as i64 + extra;
        prop_assert!(alg().space().act(&u, n, &v).is_zero());
    }

    #[test]
    fn creation_property(v in basis(L)) {
        let r = check_creation(alg(), &v, 5);
        prop_assert!(r.passed(), "{}", r);
    }

    #[test]
    fn skew_symmetry_property(u in basis(3), v in basis(2)) {
        let r = check_skew_symmetry(alg(), &u, &v, 5);
        prop_assert!(r.passed(), "{}", r);
    }

    #[test]
    fn jacobi_and_permutations(t in triple(L - 1), p in 0usize..6) {
        let win = Window::symmetric(3, 2);
        let [u, v, w] = &t;
        let r = check_jacobi(alg(), u, v, w, &win);
        prop_assert!(r.passed(), "{}", r);
        let r = s3_transform_check(alg(), u, v, w, Perm::ALL[p], &win);
        prop_assert!(r.passed(), "{}", r);
    }

    #[test]
    fn contragredient_relation(v in basis(3)) {
        let dual = build_contragredient(alg(), alg());
        let r = check_defining_relation(alg(), &dual, &v, -2, 2);
        prop_assert!(r.passed(), "{}", r);
    }

    #[test]
    fn virasoro_adjointness(n in -(L as i64)..=(L as i64), a in partition(L), b in partition(L)) {
        let dual = build_contragredient(alg(), alg());
        let (av, bv) = (GradedVector::basis(a), GradedVector::basis(b));
        let lhs = pair(&dual.virasoro(n, &av), &bv);
        let rhs = pair(&av, &alg().space().virasoro(-n, &bv));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn verlinde_commutative_and_associativity_matches_oracle(t in symmetric_tensor()) {
        let a = build_verlinde(&t).unwrap();
        prop_assert!(check_commutativity(&a).passed());
        let n = a.size();
        let mut associative = true;
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    let left = a.multiply(&a.multiply(&a.basis_vector(i), &a.basis_vector(j)), &a.basis_vector(l));
                    let right = a.multiply(&a.basis_vector(i), &a.multiply(&a.basis_vector(j), &a.basis_vector(l)));
                    associative &= left == right;
                }
            }
        }
        prop_assert_eq!(check_associativity(&a).passed(), associative);
    }

    #[test]
    fn moduli_identity_axiom(seed in any::<u64>()) {
        let mut rng = sampling_rng(seed);
        let sample: Vec<ModuliElement> = (0..3).map(|_| random_element(&mut rng, 6, true)).collect();
        let r = check_identity_axiom(&sample);
        prop_assert!(r.passed(), "{}", r);
    }

    #[test]
    fn scalings_compose(a in nonzero_rational(), b in nonzero_rational()) {
        let s = sew(&ModuliElement::scaling(cx(a.clone()), 6), 1, &ModuliElement::scaling(cx(b.clone()), 6)).unwrap();
        prop_assert_eq!(s.element, ModuliElement::scaling(cx(a * b), 6));
    }

    #[test]
    fn permutations_act(seed in any::<u64>()) {
        let mut rng = sampling_rng(seed);
        let e = random_element(&mut rng, 6, true);
        let n = e.arity();
        let (s, t) = (random_perm(&mut rng, n), random_perm(&mut rng, n));
        let step = e.permute(&t).unwrap().permute(&s).unwrap();
        prop_assert_eq!(step, e.permute(&compose_perm(&s, &t)).unwrap());
    }

    #[test]
    fn sewing_with_identity_is_exact(z in 2i64..=6, i in 1usize..=2) {
        let p = ModuliElement::p(cx(q(z)), 8).unwrap();
        let a = GradedVector::basis(Partition::new(vec![1]));
        let (r, diffs) = check_sewing_axiom(alg(), &p, i, &ModuliElement::identity(8), &[a.clone(), a], &GradedVector::basis(Partition::empty()), &[2, 4, 6]).unwrap();
        prop_assert!(r.passed(), "{}", r);
        prop_assert!(diffs.iter().all(|d| *d == q(0)));
    }
}

#[test]
fn dimensions_are_partition_numbers() {
    let p = partition_counts(8);
    for level in 0..=8 {
        assert_eq!(build_heisenberg(level).dims(), p[..=level].to_vec());
    }
}

#[test]
fn invariant_form_is_block_diagonal() {
    let f = build_invariant_form(alg(), alg(), &q(1)).unwrap();
    let ps = partitions_up_to(L);
    for a in &ps {
        for b in &ps {
            if a.weight() != b.weight() {
                assert_eq!(f.pair(&GradedVector::basis(a.clone()), &GradedVector::basis(b.clone())), q(0));
            }
        }
    }
    assert!(f.is_nondegenerate() && f.symmetric);
}
