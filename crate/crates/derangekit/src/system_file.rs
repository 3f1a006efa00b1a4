//! JSON constraint files.
//!
//! ```json
//! { "m": 3, "n": 3, "class": "functions",
//!   "constraints": [ { "x": [1], "y": [1, 2], "relation": "containment" } ] }
//! ```

use derangekit_core::counting::Violations;
use derangekit_core::{Block, Constraint, ConstraintSystem, FunctionClass, Relation};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SystemFileError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("validation error: {0}")]
    Validation(Violations),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum ClassDoc {
    Functions,
    Injections,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum RelationDoc {
    Containment,
    Equality,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConstraintDoc {
    x: Vec<u32>,
    y: Vec<u32>,
    relation: RelationDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SystemDoc {
    m: u32,
    n: u32,
    class: ClassDoc,
    constraints: Vec<ConstraintDoc>,
}

fn block(values: Vec<u32>, field: &str, index: usize) -> Result<Block, SystemFileError> {
    Block::new(values)
        .map_err(|e| SystemFileError::Schema(format!("constraints[{index}].{field}: {e}")))
}

/// Parses and validates a constraint file.
pub fn parse_constraint_file(text: &str) -> Result<ConstraintSystem, SystemFileError> {
    let doc: SystemDoc = serde_json::from_str(text).map_err(|e| {
        if e.is_data() {
            SystemFileError::Schema(e.to_string())
        } else {
            SystemFileError::Syntax(e.to_string())
        }
    })?;
    let class = match doc.class {
        ClassDoc::Functions => FunctionClass::AllFunctions,
        ClassDoc::Injections => FunctionClass::Injections,
    };
    let constraints = doc
        .constraints
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            let relation = match c.relation {
                RelationDoc::Containment => Relation::Containment,
                RelationDoc::Equality => Relation::ImageEquality,
            };
            Ok(Constraint::new(block(c.x, "x", i)?, block(c.y, "y", i)?, relation))
        })
        .collect::<Result<Vec<_>, SystemFileError>>()?;
    let system = ConstraintSystem::new(doc.m, doc.n, class, constraints);
    system
        .validate()
        .map_err(|v| SystemFileError::Validation(Violations(v)))?;
    Ok(system)
}

/// Serializes a system in the constraint-file format.
pub fn to_constraint_file(system: &ConstraintSystem) -> String {
    let doc = SystemDoc {
        m: system.m,
        n: system.n,
        class: match system.class {
            FunctionClass::AllFunctions => ClassDoc::Functions,
            FunctionClass::Injections => ClassDoc::Injections,
        },
        constraints: system
            .constraints
            .iter()
            .map(|c| ConstraintDoc {
                x: c.domain.elements().to_vec(),
                y: c.codomain.elements().to_vec(),
                relation: match c.relation {
                    Relation::Containment => RelationDoc::Containment,
                    Relation::ImageEquality => RelationDoc::Equality,
                },
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("constraint documents always serialize")
}
