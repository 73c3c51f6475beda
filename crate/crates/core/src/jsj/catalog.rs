use std::collections::HashSet;

use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Diagnostic, JsjError, ParseNumberError};
use crate::scalar::parse_decimal;

/// One hyperbolic piece: boundary 0 is the parent cusp, `1..boundary_count`
/// are child slots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub catalog_id: String,
    pub boundary_count: u32,
    /// Decimal string, kept exactly as given.
    pub volume: String,
    pub meridian_choices: u32,
    pub longitude_choices_per_boundary: u32,
}

impl CatalogEntry {
    pub fn new(id: &str, boundary_count: u32, volume: &str, meridian_choices: u32, longitude_choices: u32) -> Self {
        CatalogEntry {
            catalog_id: id.to_string(),
            boundary_count,
            volume: volume.to_string(),
            meridian_choices,
            longitude_choices_per_boundary: longitude_choices,
        }
    }

    pub fn child_slots(&self) -> u32 {
        self.boundary_count.saturating_sub(1)
    }

    pub fn volume_exact(&self) -> Result<BigRational, ParseNumberError> {
        parse_decimal(&self.volume)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HyperbolicCatalog {
    pub entries: Vec<CatalogEntry>,
}

impl<'de> Deserialize<'de> for HyperbolicCatalog {
    /// Accepts `{"entries": [...]}` or a bare list of entries.
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Wrapped { entries: Vec<CatalogEntry> },
            Bare(Vec<CatalogEntry>),
        }
        Ok(match Raw::deserialize(d)? {
            Raw::Wrapped { entries } | Raw::Bare(entries) => HyperbolicCatalog { entries },
        })
    }
}

/// Characters that would make canonical encodings ambiguous.
pub(crate) const RESERVED_ID_CHARS: &[char] = &['(', ')', '[', ']', ',', ';', ':', '/', '='];

impl HyperbolicCatalog {
    pub fn new(entries: Vec<CatalogEntry>) -> Self {
        HyperbolicCatalog { entries }
    }

    pub fn get(&self, id: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.catalog_id == id)
    }

    pub fn resolve(&self, id: &str) -> Result<&CatalogEntry, JsjError> {
        self.get(id).ok_or_else(|| JsjError::UnknownCatalogId(id.to_string()))
    }

    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        for e in &self.entries {
            let item = format!("catalog:{}", e.catalog_id);
            if e.catalog_id.is_empty() || e.catalog_id.contains(RESERVED_ID_CHARS) {
                out.push(Diagnostic::new(&item, "catalog id must be nonempty and avoid ()[],;:/="));
            }
            if !seen.insert(e.catalog_id.as_str()) {
                out.push(Diagnostic::new(&item, "duplicate catalog id"));
            }
            if e.boundary_count < 1 {
                out.push(Diagnostic::new(&item, "boundary_count must be at least 1"));
            }
            if !(1..=3).contains(&e.meridian_choices) {
                out.push(Diagnostic::new(&item, "meridian_choices must lie in 1..3"));
            }
            if e.longitude_choices_per_boundary < 1 {
                out.push(Diagnostic::new(&item, "longitude_choices_per_boundary must be at least 1"));
            }
            match e.volume_exact() {
                Ok(v) if v.is_positive() => {}
                Ok(_) => out.push(Diagnostic::new(&item, "volume must be positive")),
                Err(err) => out.push(Diagnostic::new(&item, err.to_string())),
            }
        }
        out
    }

    pub fn ensure_valid(&self) -> Result<(), JsjError> {
        let d = self.validate();
        if d.is_empty() {
            Ok(())
        } else {
            Err(JsjError::Invalid(d))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_forms() {
        let wrapped: HyperbolicCatalog = serde_json::from_str(
            r#"{"entries":[{"catalog_id":"m004","boundary_count":1,"volume":"2.0298832128",
                "meridian_choices":1,"longitude_choices_per_boundary":1}]}"#,
        )
        .unwrap();
        let bare: HyperbolicCatalog = serde_json::from_str(
            r#"[{"catalog_id":"m004","boundary_count":1,"volume":"2.0298832128",
                "meridian_choices":1,"longitude_choices_per_boundary":1}]"#,
        )
        .unwrap();
        assert_eq!(wrapped, bare);
        assert!(wrapped.validate().is_empty());
    }

    #[test]
    fn catalog_rules() {
        let cat = HyperbolicCatalog::new(vec![
            CatalogEntry::new("a", 0, "1", 1, 1),
            CatalogEntry::new("b(1)", 1, "x", 4, 0),
            CatalogEntry::new("a", 2, "-1", 1, 1),
        ]);
        let d = cat.validate();
        assert_eq!(d.len(), 7);
    }
}
