//! Multiplicative (degree-one) characters.
//!
//! Values are roots of unity in the coefficient field, so a character is
//! stored as an exponent table: `chi(g_i) = exp(2 pi i e_i / N)` where `N` is
//! the number of roots of unity in Q(zeta_m). Products become sums mod `N`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exactnum::CycNum;

use super::{GroupError, Hyperplane, ReflectionGroup};

/// How a character is specified.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CharacterSpec {
    DetPower(i64),
    /// Values on the generators, extended multiplicatively.
    GeneratorValues { generator_values: Vec<CycNum> },
    /// One value per element, in element order.
    Values { values: Vec<CycNum> },
}

impl CharacterSpec {
    /// Parses `det^k`, `det`, `trivial` or `1`.
    pub fn parse(s: &str) -> Result<CharacterSpec, GroupError> {
        let t = s.trim().replace(' ', "");
        if t == "det" {
            return Ok(CharacterSpec::DetPower(1));
        }
        if t == "trivial" || t == "1" {
            return Ok(CharacterSpec::DetPower(0));
        }
        if let Some(k) = t.strip_prefix("det^") {
            let k = k.trim_start_matches('(').trim_end_matches(')');
            return k
                .parse()
                .map(CharacterSpec::DetPower)
                .map_err(|_| GroupError::Character(format!("bad exponent in {s:?}")));
        }
        Err(GroupError::Character(format!("unrecognized character spec {s:?}")))
    }
}

#[derive(Clone)]
pub struct Character {
    name: String,
    m: u32,
    big_n: u32,
    exps: Vec<u32>,
}

impl Character {
    pub fn new(g: &ReflectionGroup, spec: &CharacterSpec) -> Result<Character, GroupError> {
        let big_n = g.roots_count();
        let (name, exps) = match spec {
            CharacterSpec::DetPower(k) => {
                let kk = k.rem_euclid(big_n as i64) as u64;
                let exps = g.elements().iter().map(|e| ((e.det_exp() as u64 * kk) % big_n as u64) as u32).collect();
                (det_name(*k), exps)
            }
            CharacterSpec::GeneratorValues { generator_values } => {
                if generator_values.len() != g.generators().len() {
                    return Err(GroupError::Character(format!(
                        "expected {} generator values, found {}",
                        g.generators().len(),
                        generator_values.len()
                    )));
                }
                let gexp = values_to_exps(g, generator_values)?;
                let mut exps: Vec<Option<u32>> = vec![None; g.order()];
                exps[0] = Some(0);
                for i in 0..g.order() {
                    let e = exps[i].expect("BFS order visits parents first");
                    for (j, ge) in gexp.iter().enumerate() {
                        let k = g.right_mul_generator(i, j);
                        let v = (e + ge) % big_n;
                        match exps[k] {
                            None => exps[k] = Some(v),
                            Some(w) if w != v => {
                                return Err(GroupError::Character("generator values do not extend to a homomorphism".into()))
                            }
                            _ => {}
                        }
                    }
                }
                ("table".to_string(), exps.into_iter().map(|e| e.expect("connected")).collect())
            }
            CharacterSpec::Values { values } => {
                if values.len() != g.order() {
                    return Err(GroupError::Character(format!("expected {} values, found {}", g.order(), values.len())));
                }
                ("table".to_string(), values_to_exps(g, values)?)
            }
        };
        let chi = Character {
            name,
            m: g.conductor(),
            big_n,
            exps,
        };
        chi.validate(g)?;
        Ok(chi)
    }

    pub fn det_power(g: &ReflectionGroup, k: i64) -> Character {
        Character::new(g, &CharacterSpec::DetPower(k)).expect("powers of det are characters")
    }

    pub fn trivial(g: &ReflectionGroup) -> Character {
        Character::det_power(g, 0)
    }

    /// Exhaustive homomorphism check over all pairs.
    fn validate(&self, g: &ReflectionGroup) -> Result<(), GroupError> {
        if self.exps[0] != 0 {
            return Err(GroupError::Character("identity must map to 1".into()));
        }
        g.ensure_mult_table();
        for i in 0..g.order() {
            for j in 0..g.order() {
                if self.exps[g.mul(i, j)] != (self.exps[i] + self.exps[j]) % self.big_n {
                    return Err(GroupError::Character(format!("chi(g h) != chi(g) chi(h) for elements {i}, {j}")));
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Character {
        self.name = name.to_string();
        self
    }

    /// The exponent table, one entry per element.
    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn value(&self, i: usize) -> CycNum {
        CycNum::from_root_exponent(self.m, self.exps[i])
    }

    pub fn values(&self) -> Vec<CycNum> {
        (0..self.exps.len()).map(|i| self.value(i)).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn inverse(&self) -> Character {
        Character {
            name: format!("({})^-1", self.name),
            m: self.m,
            big_n: self.big_n,
            exps: self.exps.iter().map(|&e| (self.big_n - e) % self.big_n).collect(),
        }
    }

    pub fn mul(&self, other: &Character) -> Character {
        Character {
            name: format!("{}*{}", self.name, other.name),
            m: self.m,
            big_n: self.big_n,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| (a + b) % self.big_n).collect(),
        }
    }

    /// `chi * det^k`.
    pub fn twist(&self, g: &ReflectionGroup, k: i64) -> Character {
        let d = Character::det_power(g, k);
        let name = match parse_det_name(&self.name) {
            Some(j) => det_name(j + k),
            None => format!("{}*{}", self.name, det_name(k)),
        };
        self.mul(&d).with_name(&name)
    }

    /// a_H(chi): the least `a` in `[0, o(s_H))` with `chi(s_H) = det(s_H)^(-a)`.
    pub fn a_h(&self, g: &ReflectionGroup, h: &Hyperplane) -> Result<u32, GroupError> {
        self.a_h_with(g, h, h.stab_generator())
    }

    /// a_H computed with an arbitrary element `s` in place of the chosen generator.
    pub fn a_h_with(&self, g: &ReflectionGroup, h: &Hyperplane, s: usize) -> Result<u32, GroupError> {
        let ce = self.exps[s] as u64;
        let de = g.element(s).det_exp() as u64;
        let n = self.big_n as u64;
        (0..h.stab_order())
            .find(|&a| (ce + a as u64 * de) % n == 0)
            .ok_or_else(|| GroupError::Character(format!("no a_H for hyperplane {}", h.alpha())))
    }
}

impl PartialEq for Character {
    /// Characters compare by value; the display name is ignored.
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.exps == other.exps
    }
}

impl Eq for Character {}

fn det_name(k: i64) -> String {
    match k {
        0 => "trivial".to_string(),
        1 => "det".to_string(),
        _ => format!("det^{k}"),
    }
}

fn parse_det_name(s: &str) -> Option<i64> {
    match s {
        "trivial" => Some(0),
        "det" => Some(1),
        _ => s.strip_prefix("det^").and_then(|k| k.parse().ok()),
    }
}

fn values_to_exps(g: &ReflectionGroup, values: &[CycNum]) -> Result<Vec<u32>, GroupError> {
    values
        .iter()
        .map(|v| {
            if v.conductor() != g.conductor() {
                return Err(GroupError::Character("character value has the wrong conductor".into()));
            }
            v.root_of_unity_exponent()
                .ok_or_else(|| GroupError::Character(format!("value {v} is not a root of unity")))
        })
        .collect()
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Character({})", self.name)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

#[cfg(test)]
mod tests {
    use crate::exactnum::Matrix;
    use crate::reflgroup::group::DEFAULT_CAP;

    use super::*;

    fn cyclic(m: u32) -> ReflectionGroup {
        let z = Matrix::from_rows(vec![vec![CycNum::root_of_unity(m, 1)]]).unwrap();
        ReflectionGroup::generate("Z", vec![z], DEFAULT_CAP).unwrap()
    }

    #[test]
    fn cyclic_a_h() {
        for m in [2u32, 3, 5, 6] {
            let g = cyclic(m);
            let h = &g.arrangement()[0];
            assert_eq!(h.stab_order(), m);
            for k in -3..8i64 {
                let chi = Character::det_power(&g, k);
                assert_eq!(chi.a_h(&g, h).unwrap() as i64, (-k).rem_euclid(m as i64), "m={m} k={k}");
            }
        }
    }

    #[test]
    fn spec_parsing() {
        assert_eq!(CharacterSpec::parse("det^3").unwrap(), CharacterSpec::DetPower(3));
        assert_eq!(CharacterSpec::parse("det^-1").unwrap(), CharacterSpec::DetPower(-1));
        assert_eq!(CharacterSpec::parse("det").unwrap(), CharacterSpec::DetPower(1));
        assert!(CharacterSpec::parse("chi").is_err());
    }

    #[test]
    fn bad_tables_rejected() {
        let g = cyclic(3);
        let two = CycNum::from_int(3, 2);
        let err = Character::new(&g, &CharacterSpec::GeneratorValues { generator_values: vec![two] });
        assert!(matches!(err, Err(GroupError::Character(_))));
        // -1 on a generator of order 3 is not a homomorphism.
        let minus = CycNum::from_int(3, -1);
        let err = Character::new(&g, &CharacterSpec::GeneratorValues { generator_values: vec![minus] });
        assert!(matches!(err, Err(GroupError::Character(_))));
    }

    #[test]
    fn twist_names() {
        let g = cyclic(6);
        let chi = Character::det_power(&g, 2);
        let t = chi.twist(&g, 1);
        assert_eq!(t.name(), "det^3");
        assert_eq!(t, Character::det_power(&g, 3));
    }
}
