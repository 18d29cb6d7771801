//! Regenerates `fixtures/g26_det3_forms.json` from the coefficient expressions.
//!
//! Usage: `cargo run -p semiinv-core --example make_g26_fixture > fixtures/g26_det3_forms.json`

use semiinv_core::golden::{G26Fixture, FORM_EXPRESSIONS, NOTE, Q_DET4_PRINTED};
use semiinv_core::polyring::{parse_poly, DiffForm};

fn main() {
    let forms: Vec<DiffForm> = FORM_EXPRESSIONS
        .iter()
        .map(|row| {
            let comps = row
                .iter()
                .enumerate()
                .map(|(i, s)| (vec![i as u8], parse_poly(s, 3, 12).expect("expression parses")));
            DiffForm::from_components(3, 12, 1, comps).expect("1-form")
        })
        .collect();
    let fixture = G26Fixture {
        group: "G26".into(),
        character: "det^3".into(),
        note: NOTE.into(),
        expressions: FORM_EXPRESSIONS.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect(),
        q_det4_printed: Q_DET4_PRINTED.into(),
        forms,
    };
    println!("{}", serde_json::to_string_pretty(&fixture).expect("serializes"));
}
