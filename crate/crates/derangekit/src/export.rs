//! JSON export of the sequence catalog, one object per row.

use derangekit_core::catalog::{Params, TableEntry};
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct EntryDoc {
    pub table: String,
    pub row: u32,
    pub a_number: String,
    pub malformed: bool,
    pub family: String,
    /// Parameter expressions by name; empty when unbound.
    pub binding: serde_json::Map<String, serde_json::Value>,
    pub free_index: String,
    pub start_index: Option<u32>,
}

impl From<&TableEntry> for EntryDoc {
    fn from(e: &TableEntry) -> Self {
        let mut binding = serde_json::Map::new();
        let mut put = |name: &str, p: &dyn ToString| {
            binding.insert(name.into(), p.to_string().into());
        };
        match e.binding.params {
            Params::Mnk { m, n, k } => {
                put("m", &m);
                put("n", &n);
                put("k", &k);
            }
            Params::Nk { n, k } => {
                put("n", &n);
                put("k", &k);
            }
            Params::Unbound => {}
        }
        EntryDoc {
            table: e.table.to_string(),
            row: e.row,
            a_number: e.a_number.to_string(),
            malformed: e.a_number.is_malformed(),
            family: e.binding.family.to_string(),
            start_index: e.binding.is_bound().then_some(e.binding.start_index),
            free_index: e.binding.free_index.to_string(),
            binding,
        }
    }
}

pub fn catalog_json(entries: &[TableEntry]) -> String {
    let docs: Vec<EntryDoc> = entries.iter().map(EntryDoc::from).collect();
    serde_json::to_string_pretty(&docs).expect("catalog serializes")
}
