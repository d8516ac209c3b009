//! Intertwining operators `I(w1, x) w2 = Σ_n (w1)_n w2 x^{-n-1}`, `n ∈ h + Z`,
//! with a generic checker for lower truncation, the Jacobi identity and the
//! `L(-1)`-derivative property.

use std::collections::HashMap;

use crate::axioms::{compare_vectors, run_jacobi, window_label, JacobiSides};
use crate::formal::Window;
use crate::rational::{factorial, q, sign, Q};
use crate::report::VerificationReport;
use crate::voa::{partitions_up_to, GradedVector, Partition, VOAInstance, VertexModule};

type ModeTable<'a> = dyn Fn(&Partition, i64, &Partition) -> GradedVector + Send + Sync + 'a;
type Key = (Partition, i64, Partition);

/// Mode data of an intertwining operator of type `(W3; W1 W2)`.
///
/// Modes are indexed by the integer offset `k`, standing for `(w1)_{h+k}`.
pub struct IntertwinerData<'a> {
    pub name: String,
    pub w1: &'a dyn VertexModule,
    pub w2: &'a dyn VertexModule,
    pub w3: &'a dyn VertexModule,
    pub shift: Q,
    table: Box<ModeTable<'a>>,
    overrides: HashMap<Key, GradedVector>,
}

impl<'a> IntertwinerData<'a> {
    pub fn new(
        name: impl Into<String>,
        modules: [&'a dyn VertexModule; 3],
        shift: Q,
        table: Box<ModeTable<'a>>,
    ) -> Self {
        IntertwinerData {
            name: name.into(),
            w1: modules[0],
            w2: modules[1],
            w3: modules[2],
            shift,
            table,
            overrides: HashMap::new(),
        }
    }

    pub fn cap(&self) -> usize {
        self.w1.cap().min(self.w2.cap()).min(self.w3.cap())
    }

    pub fn mode_basis(&self, a: &Partition, k: i64, b: &Partition) -> GradedVector {
        let key = (a.clone(), k, b.clone());
        match self.overrides.get(&key) {
            Some(v) => v.clone(),
            None => (self.table)(a, k, b),
        }
    }

    /// `(w1)_{h+k} w2`.
    pub fn mode(&self, w1: &GradedVector, k: i64, w2: &GradedVector) -> GradedVector {
        let mut out = GradedVector::zero();
        for (a, ca) in w1.terms() {
            for (b, cb) in w2.terms() {
                out.add_scaled(&self.mode_basis(a, k, b), &(ca * cb));
            }
        }
        out
    }

    /// Replaces one entry of the mode data: component `at` of `(a)_{h+k} b` moves by `delta`.
    pub fn perturb(&mut self, a: &Partition, k: i64, b: &Partition, at: Partition, delta: Q) {
        let mut v = self.mode_basis(a, k, b);
        v.add_term(at, delta);
        self.overrides.insert((a.clone(), k, b.clone()), v);
    }
}

/// `Y` of `V` as an intertwining operator of type `(V; V V)`.
pub fn vertex_operator_of_v(alg: &VOAInstance) -> IntertwinerData<'_> {
    IntertwinerData::new(
        "Y_V",
        [alg, alg, alg],
        q(0),
        Box::new(move |a, k, b| alg.space().act_basis(a, k, b)),
    )
}

/// The module action of `V` on `M` as an intertwining operator of type `(M; V M)`.
pub fn module_action<'a>(alg: &'a VOAInstance, m: &'a dyn VertexModule) -> IntertwinerData<'a> {
    IntertwinerData::new(
        format!("Y_{}", m.describe()),
        [alg, m, m],
        q(0),
        Box::new(move |a, k, b| m.act_basis(a, k, b)),
    )
}

/// `I(w, x) v = e^{xL(-1)} Y_M(v, -x) w`, of type `(M; M V)`.
pub fn skew_module_action<'a>(alg: &'a VOAInstance, m: &'a dyn VertexModule) -> IntertwinerData<'a> {
    IntertwinerData::new(
        format!("skew-Y_{}", m.describe()),
        [m, alg, m],
        q(0),
        Box::new(move |w, k, v| {
            let (wv, vv) = (GradedVector::basis(w.clone()), GradedVector::basis(v.clone()));
            let top = (w.weight() + v.weight()) as i64;
            let mut out = GradedVector::zero();
            for j in 0..=(top - 1 - k).max(-1) {
                let mm = k + j;
                let mut x = m.act(&vv, mm, &wv);
                for _ in 0..j {
                    x = m.virasoro(-1, &x);
                }
                out.add_scaled(&x, &(sign(mm + 1) * factorial(j as u32).recip()));
            }
            out
        }),
    )
}

/// Lower truncation, Jacobi identity on `win` for algebra basis vectors of weight
/// `≤ max_u`, and the derivative property, over all basis pairs within the truncation.
pub fn check_intertwiner(
    data: &IntertwinerData<'_>,
    win: &Window,
    max_u: usize,
) -> VerificationReport {
    let mut report = VerificationReport::new(
        "intertwiner",
        format!(
            "type={},h={},window={},u-weight<={max_u}",
            data.name,
            data.shift,
            window_label(win.bounds())
        ),
    );
    let cap = data.cap();
    let pairs: Vec<(Partition, Partition)> = partitions_up_to(cap)
        .into_iter()
        .flat_map(|a| partitions_up_to(cap).into_iter().map(move |b| (a.clone(), b)))
        .filter(|(a, b)| a.weight() + b.weight() <= cap)
        .collect();

    // lower truncation: (w1)_{h+k} w2 = 0 once the output level would be negative
    for (a, b) in &pairs {
        let start = (a.weight() + b.weight()) as i64;
        for k in start..start + 3 {
            let v = data.mode_basis(a, k, b);
            report.record(v.is_zero(), &[0, a.weight() as i64, b.weight() as i64, k], format!("{a}_{k}{b}"));
        }
    }

    // derivative: (L(-1)w1)_n = -n (w1)_{n-1}
    let bounds = win.bounds();
    let (klo, khi) = (bounds[2].0.min(bounds[1].0), bounds[2].1.max(bounds[1].1));
    for (a, b) in &pairs {
        if a.weight() + 1 > cap {
            continue;
        }
        let av = GradedVector::basis(a.clone());
        let bv = GradedVector::basis(b.clone());
        let la = data.w1.virasoro(-1, &av);
        for k in klo..=khi {
            let out = (a.weight() + b.weight()) as i64 - k;
            if out > cap as i64 {
                report.skipped += 1;
                continue;
            }
            let lhs = data.mode(&la, k, &bv);
            let n = &data.shift + q(k);
            let rhs = data.mode(&av, k - 1, &bv).scale(&-n);
            compare_vectors(&mut report, &[1, a.weight() as i64, b.weight() as i64, k], &lhs, &rhs);
        }
    }

    // Jacobi identity with u in V
    for u in partitions_up_to(max_u.min(cap)) {
        let uv = GradedVector::basis(u.clone());
        for (a, b) in &pairs {
            if u.weight() + a.weight() + b.weight() > cap {
                continue;
            }
            let av = GradedVector::basis(a.clone());
            let bv = GradedVector::basis(b.clone());
            let ab = |p: i64, k: i64| data.w3.act(&uv, p, &data.mode(&av, k, &bv));
            let ba = |p: i64, k: i64| data.mode(&av, k, &data.w2.act(&uv, p, &bv));
            let it = |r: i64, k: i64| data.mode(&data.w1.act(&uv, r, &av), k, &bv);
            let sides = JacobiSides {
                levels: [u.weight() as i64, a.weight() as i64, b.weight() as i64],
                cap: cap as i64,
                ab: &ab,
                ba: &ba,
                iterate: &it,
            };
            let mut sub = VerificationReport::new("", "");
            run_jacobi(std::slice::from_ref(&sides), win, &mut sub);
            report.checked += sub.checked;
            report.skipped += sub.skipped;
            for mut d in sub.differences {
                d.component = format!("jacobi u={u} w1={a} w2={b}: {}", d.component);
                report.differences.push(d);
            }
        }
    }
    report
}
