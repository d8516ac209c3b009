//! Fusion tensors, the associated commutative algebra, and intertwining operators.

mod intertwiner;
mod tensor;
mod verlinde;

use thiserror::Error;

pub use intertwiner::{
    check_intertwiner, module_action, skew_module_action, vertex_operator_of_v, IntertwinerData,
};
pub use tensor::{check_s3_symmetry, readings_differ, FusionTensor};
pub use verlinde::{build_verlinde, check_associativity, check_commutativity, VerlindeAlgebra};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FusionError {
    #[error("line {0}: {1}")]
    Parse(usize, String),
    #[error("line {0}: unknown label `{1}`")]
    UnknownLabel(usize, String),
    #[error("dual map is not an involution: {0}")]
    NotInvolution(String),
    #[error("symmetry violation: {0}")]
    SymmetryViolation(String),
    #[error("missing vacuum channel for `{0}`")]
    VacuumChannel(String),
}

impl FusionError {
    pub fn kind(&self) -> &'static str {
        match self {
            FusionError::Parse(..) => "ParseError",
            FusionError::UnknownLabel(..) => "UnknownLabel",
            FusionError::NotInvolution(_) => "NotInvolution",
            FusionError::SymmetryViolation(_) => "SymmetryViolation",
            FusionError::VacuumChannel(_) => "VacuumChannel",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal::Window;
    use crate::rational::q;
    use crate::voa::{build_fock_module, build_heisenberg, Partition};

    fn fixture(name: &str) -> FusionTensor {
        let text = match name {
            "one" => include_str!("../../fixtures/one_label.fus"),
            "ising" => include_str!("../../fixtures/ising.fus"),
            "z3" => include_str!("../../fixtures/z3.fus"),
            "bad" => include_str!("../../fixtures/bad_s3.fus"),
            _ => include_str!("../../fixtures/non_associative.fus"),
        };
        FusionTensor::parse(text).unwrap()
    }

    #[test]
    fn good_fixtures_pass() {
        for name in ["one", "ising", "z3"] {
            let t = fixture(name);
            assert!(check_s3_symmetry(&t).passed(), "{name}");
            let a = build_verlinde(&t).unwrap();
            assert!(a.unit);
            assert!(check_associativity(&a).passed(), "{name}");
            assert!(check_commutativity(&a).passed(), "{name}");
        }
        assert!(readings_differ(&fixture("z3")));
        assert!(!readings_differ(&fixture("ising")));
    }

    #[test]
    fn bad_fixtures_fail() {
        assert!(matches!(build_verlinde(&fixture("bad")), Err(FusionError::SymmetryViolation(_))));
        let a = build_verlinde(&fixture("nonassoc")).unwrap();
        assert!(!check_associativity(&a).passed());
        let mut ising = build_verlinde(&fixture("ising")).unwrap();
        ising.perturb(1, 2, 2, 1);
        assert!(!check_associativity(&ising).passed());
        assert!(!check_commutativity(&ising).passed());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(FusionTensor::parse("V V V 1"), Err(FusionError::Parse(..))));
        assert!(matches!(
            FusionTensor::parse("labels: V\nV W V 1"),
            Err(FusionError::UnknownLabel(2, _))
        ));
        assert!(matches!(
            FusionTensor::parse("labels: V a b\ndual: a->b"),
            Err(FusionError::NotInvolution(_))
        ));
        let t = FusionTensor::parse("labels: V a\na a a 1").unwrap();
        assert_eq!(build_verlinde(&t), Err(FusionError::VacuumChannel("V".into())));
        let t = fixture("z3");
        assert_eq!(FusionTensor::parse(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn canonical_intertwiners() {
        let v = build_heisenberg(4);
        let m = build_fock_module(4, q(1));
        let win = Window::cube(3, -2, 2);
        for data in [vertex_operator_of_v(&v), module_action(&v, &m), skew_module_action(&v, &m)] {
            let r = check_intertwiner(&data, &win, 1);
            assert!(r.passed(), "{r}");
            assert!(r.checked > 50, "{}", r.checked);
        }
    }

    #[test]
    fn perturbed_intertwiner_fails() {
        let v = build_heisenberg(4);
        let m = build_fock_module(4, q(1));
        let mut data = module_action(&v, &m);
        let a = Partition::new(vec![1]);
        data.perturb(&a, 0, &Partition::new(vec![1]), Partition::new(vec![1]), q(1));
        let r = check_intertwiner(&data, &Window::cube(3, -3, 3), 1);
        assert!(!r.passed());
    }
}
