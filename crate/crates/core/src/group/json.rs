use serde::{Deserialize, Serialize};

use super::{Element, FiniteGroup, GroupError};

/// On-disk group format: `{"order": n, "identity": 0, "mult": [[...]], "names": [...]}`.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct GroupJson {
    pub order: usize,
    pub identity: Element,
    pub mult: Vec<Vec<Element>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl GroupJson {
    pub fn from_group(g: &FiniteGroup) -> Self {
        Self {
            order: g.order(),
            identity: g.identity(),
            mult: g.table(),
            names: Some(g.element_names().to_vec()),
            name: g.name().map(str::to_string),
        }
    }

    /// Strict load: the declared order and identity must match the table.
    pub fn into_group(self) -> Result<FiniteGroup, GroupError> {
        if self.mult.len() != self.order {
            return Err(GroupError::Json(format!(
                "declared order {} but the table has {} rows",
                self.order,
                self.mult.len()
            )));
        }
        if self.identity >= self.order {
            return Err(GroupError::Json(format!("identity {} out of range", self.identity)));
        }
        let declared = self.identity;
        let row_ok = self.mult[declared].iter().enumerate().all(|(x, &y)| x == y);
        let col_ok = self.mult.iter().enumerate().all(|(x, row)| row.get(declared) == Some(&x));
        if !(row_ok && col_ok) {
            return Err(GroupError::NoIdentity);
        }
        let g = FiniteGroup::from_table(self.mult, self.names)?;
        Ok(match self.name {
            Some(n) => g.with_name(n),
            None => g,
        })
    }

    pub fn parse(text: &str) -> Result<FiniteGroup, GroupError> {
        let raw: GroupJson = serde_json::from_str(text).map_err(|e| GroupError::Json(e.to_string()))?;
        raw.into_group()
    }

    pub fn to_string_pretty(g: &FiniteGroup) -> String {
        serde_json::to_string_pretty(&Self::from_group(g)).expect("group JSON serializes")
    }
}
