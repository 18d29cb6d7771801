//! The JSON certificate emitted for a group and character.

use serde::{Deserialize, Serialize};

use crate::exactnum::CycNum;
use crate::polyring::{poly_to_json, DiffForm, TermJson};

use super::{CheckResult, GeneratorCertificate, SemiInvariantContext};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub group: String,
    pub character: String,
    pub q_chi: Vec<TermJson>,
    pub q_chi_det: Vec<TermJson>,
    pub generators: Vec<DiffForm>,
    pub witness_scalar: Option<CycNum>,
    pub checks: Vec<CheckResult>,
}

impl Certificate {
    pub fn new(ctx: &SemiInvariantContext, cert: Option<&GeneratorCertificate>, checks: Vec<CheckResult>) -> Certificate {
        Certificate {
            group: ctx.group().name().to_string(),
            character: ctx.chi().name().to_string(),
            q_chi: poly_to_json(ctx.q_chi()),
            q_chi_det: poly_to_json(ctx.q_chi_det()),
            generators: cert.map_or_else(Vec::new, |c| c.forms.clone()),
            witness_scalar: cert.map(|c| c.witness_scalar.clone()),
            checks,
        }
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

#[cfg(test)]
mod tests {
    use super::super::testing::{b2, ctx};
    use super::super::{basic_invariants, find_generators};
    use super::*;

    #[test]
    fn json_round_trip() {
        let a = b2();
        let c = ctx(&a, 1);
        let (cert, _) = find_generators(&c, &basic_invariants(&a).unwrap(), 8).unwrap();
        let out = Certificate::new(&c, Some(&cert), vec![CheckResult::new("criterion", true, "ok")]);
        let text = serde_json::to_string_pretty(&out).unwrap();
        let back: Certificate = serde_json::from_str(&text).unwrap();
        assert_eq!(back, out);
        assert_eq!(serde_json::to_string_pretty(&back).unwrap(), text);
    }
}
