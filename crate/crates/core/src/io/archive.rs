use std::collections::BTreeMap;
use std::path::Path;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;

use super::json::TensorDocument;
use crate::error::{Error, Result};
use crate::tensors::InteractionTensor;

pub const ARCHIVE_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub atom: String,
    /// Cartesian position in Å.
    pub xyz: [f64; 3],
}

/// Persisted molecular problem: geometry, electron count and spin, and the
/// spin-orbital integrals. The integrals are parsed on first access.
#[derive(Debug)]
pub struct MolecularArchive {
    pub geometry: Vec<Atom>,
    pub basis: String,
    pub multiplicity: u32,
    pub charge: i32,
    pub n_electrons: usize,
    pub n_orbitals: usize,
    pub reference_energies: BTreeMap<String, f64>,
    pub provenance: String,
    integrals: LazyIntegrals,
}

#[derive(Debug)]
enum LazyIntegrals {
    Loaded(InteractionTensor),
    Pending {
        raw: Box<RawValue>,
        parsed: OnceLock<std::result::Result<InteractionTensor, (String, String)>>,
    },
}

#[derive(Serialize, Deserialize)]
struct ArchiveDocument<I> {
    version: u32,
    geometry: Vec<Atom>,
    basis: String,
    multiplicity: u32,
    charge: i32,
    n_electrons: usize,
    n_orbitals: usize,
    integrals: I,
    #[serde(default)]
    reference_energies: BTreeMap<String, f64>,
    #[serde(default)]
    provenance: String,
}

#[derive(Deserialize)]
struct VersionProbe {
    version: Option<u32>,
}

impl MolecularArchive {
    pub fn new(
        geometry: Vec<Atom>,
        basis: impl Into<String>,
        multiplicity: u32,
        charge: i32,
        n_electrons: usize,
        integrals: InteractionTensor,
    ) -> Result<Self> {
        let archive = MolecularArchive {
            geometry,
            basis: basis.into(),
            multiplicity,
            charge,
            n_electrons,
            n_orbitals: integrals.n_modes() / 2,
            reference_energies: BTreeMap::new(),
            provenance: String::new(),
            integrals: LazyIntegrals::Loaded(integrals),
        };
        archive.validate()?;
        Ok(archive)
    }

    fn validate(&self) -> Result<()> {
        if self.multiplicity < 1 {
            return Err(Error::schema("multiplicity", "must be at least 1"));
        }
        // 2S + 1 is odd exactly when the electron count is even.
        if (self.n_electrons + self.multiplicity as usize).is_multiple_of(2) {
            return Err(Error::schema(
                "multiplicity",
                format!(
                    "multiplicity {} is impossible with {} electrons",
                    self.multiplicity, self.n_electrons
                ),
            ));
        }
        if let LazyIntegrals::Loaded(t) = &self.integrals {
            if t.n_modes() != 2 * self.n_orbitals {
                return Err(Error::schema(
                    "integrals",
                    format!(
                        "{} spin-orbitals for {} spatial orbitals",
                        t.n_modes(),
                        self.n_orbitals
                    ),
                ));
            }
        }
        Ok(())
    }

    /// Spin-orbital integrals, parsed from the file on first call.
    pub fn integrals(&self) -> Result<&InteractionTensor> {
        match &self.integrals {
            LazyIntegrals::Loaded(t) => Ok(t),
            LazyIntegrals::Pending { raw, parsed } => {
                let n_orbitals = self.n_orbitals;
                let result = parsed.get_or_init(|| {
                    let doc: TensorDocument = serde_json::from_str(raw.get())
                        .map_err(|e| ("integrals".to_string(), e.to_string()))?;
                    let t = doc.into_tensor("integrals").map_err(|e| match e {
                        Error::Schema { path, message } => (path, message),
                        other => ("integrals".to_string(), other.to_string()),
                    })?;
                    if t.n_modes() != 2 * n_orbitals {
                        return Err((
                            "integrals.n".to_string(),
                            format!(
                                "{} spin-orbitals for {n_orbitals} spatial orbitals",
                                t.n_modes()
                            ),
                        ));
                    }
                    Ok(t)
                });
                result
                    .as_ref()
                    .map_err(|(path, message)| Error::schema(path.clone(), message.clone()))
            }
        }
    }

    pub fn integrals_loaded(&self) -> bool {
        match &self.integrals {
            LazyIntegrals::Loaded(_) => true,
            LazyIntegrals::Pending { parsed, .. } => parsed.get().is_some(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        self.validate()?;
        let integrals = TensorDocument::from_tensor(self.integrals()?);
        let doc = ArchiveDocument {
            version: ARCHIVE_VERSION,
            geometry: self.geometry.clone(),
            basis: self.basis.clone(),
            multiplicity: self.multiplicity,
            charge: self.charge,
            n_electrons: self.n_electrons,
            n_orbitals: self.n_orbitals,
            integrals,
            reference_energies: self.reference_energies.clone(),
            provenance: self.provenance.clone(),
        };
        Ok(serde_json::to_string(&doc)?)
    }

    /// Reads everything except the integrals, which stay as raw JSON until
    /// [`MolecularArchive::integrals`] is called.
    pub fn from_json(text: &str) -> Result<Self> {
        let probe: VersionProbe =
            serde_json::from_str(text).map_err(|e| Error::schema("", e.to_string()))?;
        match probe.version {
            Some(ARCHIVE_VERSION) => {}
            Some(found) => {
                return Err(Error::Version {
                    found,
                    expected: ARCHIVE_VERSION,
                })
            }
            None => return Err(Error::schema("version", "missing field")),
        }
        let doc: ArchiveDocument<Box<RawValue>> =
            serde_json::from_str(text).map_err(|e| Error::schema(field_of(&e), e.to_string()))?;
        let archive = MolecularArchive {
            geometry: doc.geometry,
            basis: doc.basis,
            multiplicity: doc.multiplicity,
            charge: doc.charge,
            n_electrons: doc.n_electrons,
            n_orbitals: doc.n_orbitals,
            reference_energies: doc.reference_energies,
            provenance: doc.provenance,
            integrals: LazyIntegrals::Pending {
                raw: doc.integrals,
                parsed: OnceLock::new(),
            },
        };
        archive.validate()?;
        Ok(archive)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

/// Field name quoted in a serde error message, if any.
fn field_of(e: &serde_json::Error) -> String {
    let msg = e.to_string();
    msg.split('`').nth(1).unwrap_or("").to_string()
}

impl PartialEq for MolecularArchive {
    fn eq(&self, other: &Self) -> bool {
        self.geometry == other.geometry
            && self.basis == other.basis
            && self.multiplicity == other.multiplicity
            && self.charge == other.charge
            && self.n_electrons == other.n_electrons
            && self.n_orbitals == other.n_orbitals
            && self.reference_energies == other.reference_energies
            && self.provenance == other.provenance
            && match (self.integrals(), other.integrals()) {
                (Ok(a), Ok(b)) => a == b,
                _ => false,
            }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn sample() -> MolecularArchive {
        let mut t = InteractionTensor::zeros(4);
        t.constant = Complex64::new(0.7, 0.0);
        t.one_body[[0, 0]] = Complex64::new(-1.25, 0.0);
        t.two_body[[0, 1, 1, 0]] = Complex64::new(0.67, 0.0);
        let geometry = vec![
            Atom {
                atom: "H".into(),
                xyz: [0.0, 0.0, 0.0],
            },
            Atom {
                atom: "H".into(),
                xyz: [0.0, 0.0, 0.74],
            },
        ];
        let mut a = MolecularArchive::new(geometry, "sto-3g", 1, 0, 2, t).unwrap();
        a.reference_energies.insert("fci".into(), -1.137);
        a
    }

    #[test]
    fn round_trip_is_lazy() {
        let a = sample();
        let b = MolecularArchive::from_json(&a.to_json().unwrap()).unwrap();
        assert!(!b.integrals_loaded());
        assert_eq!(a, b);
        assert!(b.integrals_loaded());
    }

    #[test]
    fn optional_energies_and_version() {
        let text = sample().to_json().unwrap();
        let mut value: serde_json::Value = serde_json::from_str(&text).unwrap();
        value.as_object_mut().unwrap().remove("reference_energies");
        let b = MolecularArchive::from_json(&value.to_string()).unwrap();
        assert!(b.reference_energies.is_empty());
        value["version"] = 7.into();
        assert!(matches!(
            MolecularArchive::from_json(&value.to_string()),
            Err(Error::Version { found: 7, .. })
        ));
    }

    #[test]
    fn corrupted_two_body_names_field() {
        let text = sample().to_json().unwrap();
        let mut value: serde_json::Value = serde_json::from_str(&text).unwrap();
        value["integrals"]["two_body"][0][0][0]
            .as_array_mut()
            .unwrap()
            .pop();
        let b = MolecularArchive::from_json(&value.to_string()).unwrap();
        match b.integrals() {
            Err(Error::Schema { path, .. }) => assert_eq!(path, "integrals.two_body"),
            other => panic!("expected schema error, got {other:?}"),
        }
    }

    #[test]
    fn invalid_spin() {
        let t = InteractionTensor::zeros(4);
        assert!(MolecularArchive::new(vec![], "x", 2, 0, 2, t.clone()).is_err());
        assert!(MolecularArchive::new(vec![], "x", 0, 0, 2, t).is_err());
    }
}
