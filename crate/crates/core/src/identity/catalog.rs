use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::identity::{IdentityDef, IdentityDoc};

const CATALOG_JSON: &str = include_str!("catalog.json");

/// Names that are macros inside catalog identities rather than identities.
const MACROS: &[&str] = &["right-jacobian"];

fn entries() -> &'static [IdentityDef] {
    static CATALOG: OnceLock<Vec<IdentityDef>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        let docs: Vec<IdentityDoc> = serde_json::from_str(CATALOG_JSON).expect("catalog.json is well formed");
        docs.into_iter().map(|d| d.into_identity().expect("catalog entries are valid")).collect()
    })
}

pub fn catalog() -> Vec<IdentityDef> {
    entries().to_vec()
}

pub fn lookup(name: &str) -> Result<IdentityDef> {
    if MACROS.contains(&name) {
        return Err(Error::Macro(name.to_string()));
    }
    entries()
        .iter()
        .find(|id| id.name == name)
        .cloned()
        .ok_or_else(|| Error::UnknownIdentity(name.to_string()))
}
