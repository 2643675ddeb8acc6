//! Case-insensitive gate registry.

use crate::gate::{builtin_gate, GateError, GateSpec, BUILTIN_NAMES};
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RegistryError {
    #[error("unknown gate `{0}`")]
    UnknownGate(String),
    #[error("gate `{0}` is already defined")]
    DuplicateName(String),
}

/// Name-to-gate map. Lookup is case-insensitive; redefining an existing
/// name (builtin or user) is an error.
#[derive(Clone, Debug)]
pub struct GateRegistry {
    gates: BTreeMap<String, Arc<GateSpec>>,
    aliases: BTreeMap<String, String>,
}

impl GateRegistry {
    /// A registry containing only the library gates.
    pub fn with_builtins() -> Self {
        let mut gates = BTreeMap::new();
        for name in BUILTIN_NAMES {
            let gate = builtin_gate(name).expect("builtin");
            gates.insert(name.to_string(), Arc::new(gate));
        }
        let mut aliases = BTreeMap::new();
        aliases.insert("FG".to_string(), "CNOT".to_string());
        GateRegistry { gates, aliases }
    }

    /// An empty registry (no builtins, no aliases).
    pub fn empty() -> Self {
        GateRegistry {
            gates: BTreeMap::new(),
            aliases: BTreeMap::new(),
        }
    }

    pub fn lookup(&self, name: &str) -> Result<Arc<GateSpec>, RegistryError> {
        let upper = name.to_ascii_uppercase();
        let key = self.aliases.get(&upper).unwrap_or(&upper);
        self.gates
            .get(key)
            .cloned()
            .ok_or_else(|| RegistryError::UnknownGate(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.lookup(name).is_ok()
    }

    /// Adds a user-defined gate under its canonical name.
    pub fn register(&mut self, gate: GateSpec) -> Result<Arc<GateSpec>, RegistryError> {
        let name = gate.name().to_string();
        if self.gates.contains_key(&name) || self.aliases.contains_key(&name) {
            return Err(RegistryError::DuplicateName(name));
        }
        let gate = Arc::new(gate);
        self.gates.insert(name, gate.clone());
        Ok(gate)
    }

    /// All registered gates in name order.
    pub fn iter(&self) -> impl Iterator<Item = &Arc<GateSpec>> {
        self.gates.values()
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }
}

impl Default for GateRegistry {
    fn default() -> Self {
        Self::with_builtins()
    }
}

impl From<GateError> for RegistryError {
    fn from(e: GateError) -> Self {
        match e {
            GateError::UnknownGate(name) => RegistryError::UnknownGate(name),
            other => RegistryError::UnknownGate(other.to_string()),
        }
    }
}
