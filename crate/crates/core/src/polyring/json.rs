//! JSON encodings for polynomials and forms.
//!
//! A polynomial is a list of `{"exp": [...], "coeff": [...]}` terms; a form
//! is `{"nvars", "conductor", "degree", "terms"}` where each term also carries
//! a one-based `"index"`.

use serde::{Deserialize, Serialize, Serializer};

use crate::exactnum::CycNum;

use super::{DiffForm, MPoly, Monomial, PolyError};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<Vec<u8>>,
    pub exp: Vec<u16>,
    pub coeff: CycNum,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FormJson {
    pub nvars: usize,
    pub conductor: u32,
    pub degree: usize,
    pub terms: Vec<TermJson>,
}

pub fn poly_to_json(f: &MPoly) -> Vec<TermJson> {
    f.terms()
        .rev()
        .map(|(m, c)| TermJson {
            index: None,
            exp: m.exps().to_vec(),
            coeff: c.clone(),
        })
        .collect()
}

pub fn poly_from_json(terms: &[TermJson], nvars: usize, m: u32) -> Result<MPoly, PolyError> {
    let mut out = MPoly::zero(nvars, m);
    for t in terms {
        check_term(t, nvars, m)?;
        out.add_term(Monomial::new(&t.exp), &t.coeff);
    }
    Ok(out)
}

fn check_term(t: &TermJson, nvars: usize, m: u32) -> Result<(), PolyError> {
    if t.exp.len() != nvars {
        return Err(PolyError::Parse(format!("exponent {:?} has wrong length for {nvars} variables", t.exp)));
    }
    if t.coeff.conductor() != m {
        return Err(PolyError::ConductorMismatch {
            left: m,
            right: t.coeff.conductor(),
        });
    }
    Ok(())
}

impl Serialize for MPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        poly_to_json(self).serialize(serializer)
    }
}

impl From<&DiffForm> for FormJson {
    fn from(w: &DiffForm) -> FormJson {
        let mut terms = Vec::new();
        for (idx, f) in w.components() {
            for mut t in poly_to_json(f) {
                t.index = Some(idx.iter().map(|&i| i + 1).collect());
                terms.push(t);
            }
        }
        FormJson {
            nvars: w.nvars(),
            conductor: w.conductor(),
            degree: w.degree(),
            terms,
        }
    }
}

impl TryFrom<FormJson> for DiffForm {
    type Error = PolyError;

    fn try_from(j: FormJson) -> Result<DiffForm, PolyError> {
        if j.degree > j.nvars {
            return Err(PolyError::BadIndex(format!("form degree {} exceeds {}", j.degree, j.nvars)));
        }
        let mut comps = Vec::new();
        for t in &j.terms {
            check_term(t, j.nvars, j.conductor)?;
            let idx = t.index.clone().unwrap_or_default();
            if idx.iter().any(|&i| i == 0) {
                return Err(PolyError::BadIndex("indices are one-based".into()));
            }
            let idx: Vec<u8> = idx.iter().map(|&i| i - 1).collect();
            comps.push((idx, MPoly::monomial(j.nvars, j.conductor, Monomial::new(&t.exp), t.coeff.clone())));
        }
        DiffForm::from_components(j.nvars, j.conductor, j.degree, comps)
    }
}

impl Serialize for DiffForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        FormJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DiffForm {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let j = FormJson::deserialize(deserializer)?;
        DiffForm::try_from(j).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_poly;

    #[test]
    fn poly_round_trip() {
        let f = parse_poly("x^2*E(12) - 3/7*y + 1", 2, 12).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        let terms: Vec<TermJson> = serde_json::from_str(&s).unwrap();
        let g = poly_from_json(&terms, 2, 12).unwrap();
        assert_eq!(f, g);
        assert_eq!(serde_json::to_string(&g).unwrap(), s);
    }

    #[test]
    fn form_round_trip() {
        let f = parse_poly("x*y - z^2", 3, 3).unwrap();
        let w = DiffForm::dx(3, 3, 2).mul_poly(&f).wedge(&DiffForm::dx(3, 3, 0)).unwrap();
        let s = serde_json::to_string(&w).unwrap();
        assert!(s.contains("\"index\":[1,3]"));
        let back: DiffForm = serde_json::from_str(&s).unwrap();
        assert_eq!(back, w);
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }

    #[test]
    fn rejects_bad_terms() {
        let bad = r#"{"nvars":2,"conductor":1,"degree":1,"terms":[{"index":[0],"exp":[1,0],"coeff":["1"]}]}"#;
        assert!(serde_json::from_str::<DiffForm>(bad).is_err());
        let bad = r#"{"nvars":2,"conductor":1,"degree":1,"terms":[{"index":[1],"exp":[1],"coeff":["1"]}]}"#;
        assert!(serde_json::from_str::<DiffForm>(bad).is_err());
    }
}
