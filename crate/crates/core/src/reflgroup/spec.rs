//! Group specification files.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::exactnum::{CycNum, Matrix};

use super::{GroupError, ReflectionGroup};

/// `{"conductor": m, "dim": n, "generators": [n x n matrices], "name": ...}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub name: String,
    pub conductor: u32,
    pub dim: usize,
    pub generators: Vec<Vec<Vec<CycNum>>>,
}

impl GroupSpec {
    pub fn from_json(text: &str) -> Result<GroupSpec, GroupError> {
        let spec: GroupSpec = serde_json::from_str(text).map_err(|e| GroupError::Spec(e.to_string()))?;
        spec.check()?;
        Ok(spec)
    }

    pub fn load(path: &Path) -> Result<GroupSpec, GroupError> {
        let text = std::fs::read_to_string(path).map_err(|e| GroupError::Io(format!("{}: {e}", path.display())))?;
        GroupSpec::from_json(&text)
    }

    fn check(&self) -> Result<(), GroupError> {
        if self.dim == 0 {
            return Err(GroupError::Spec("dimension must be positive".into()));
        }
        for (k, g) in self.generators.iter().enumerate() {
            if g.len() != self.dim || g.iter().any(|row| row.len() != self.dim) {
                return Err(GroupError::DimensionMismatch { index: k });
            }
            if g.iter().flatten().any(|c| c.conductor() != self.conductor) {
                return Err(GroupError::ConductorMismatch { index: k });
            }
        }
        Ok(())
    }

    pub fn matrices(&self) -> Result<Vec<Matrix>, GroupError> {
        self.generators
            .iter()
            .map(|g| Matrix::from_rows(g.clone()).map_err(|e| GroupError::Spec(e.to_string())))
            .collect()
    }

    pub fn build(&self, cap: usize) -> Result<ReflectionGroup, GroupError> {
        self.check()?;
        ReflectionGroup::generate(&self.name, self.matrices()?, cap)
    }

    pub fn from_group(g: &ReflectionGroup) -> GroupSpec {
        GroupSpec {
            name: g.name().to_string(),
            conductor: g.conductor(),
            dim: g.dim(),
            generators: g.generators().iter().map(|e| e.matrix().to_rows()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reflgroup::DEFAULT_CAP;

    #[test]
    fn parse_and_build() {
        let text = r#"{"name":"S2","conductor":2,"dim":2,
            "generators":[[[["0","0"],["1","0"]],[["1","0"],["0","0"]]]]}"#;
        let spec = GroupSpec::from_json(text).unwrap();
        let g = spec.build(DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), 2);
        let back = serde_json::to_string(&GroupSpec::from_group(&g)).unwrap();
        assert_eq!(GroupSpec::from_json(&back).unwrap(), spec);
    }

    #[test]
    fn wrong_conductor() {
        let text = r#"{"name":"bad","conductor":3,"dim":1,"generators":[[[["0","1"]]]]}"#;
        assert_eq!(GroupSpec::from_json(text).unwrap_err(), GroupError::ConductorMismatch { index: 0 });
    }
}
