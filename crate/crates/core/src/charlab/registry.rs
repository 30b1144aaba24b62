use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use crate::{Error, Result};

/// Number of framing weights `u_1..u_R` carried by the geometric registry.
pub const MAX_FRAMING: usize = 16;

/// An ordered list of variable names. Monomials refer to variables by index.
#[derive(Debug, PartialEq, Eq)]
pub struct VarRegistry {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl VarRegistry {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Arc<Self>> {
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            let n = n.as_ref();
            if index.insert(n.to_string(), i).is_some() {
                return Err(Error::DuplicateVariable(n.to_string()));
            }
        }
        let names = names.iter().map(|n| n.as_ref().to_string()).collect();
        Ok(Arc::new(VarRegistry { names, index }))
    }

    /// The shared registry `x, y, z, u_1, …, u_16` used for all geometric
    /// characters produced by this crate.
    pub fn geometric() -> Arc<Self> {
        static REG: OnceLock<Arc<VarRegistry>> = OnceLock::new();
        REG.get_or_init(|| {
            let mut names = vec!["x".to_string(), "y".to_string(), "z".to_string()];
            names.extend((1..=MAX_FRAMING).map(|i| format!("u_{i}")));
            VarRegistry::new(&names).expect("distinct names")
        })
        .clone()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }
}

/// Two registries are compatible when they are the same object or list the
/// same names in the same order.
pub(crate) fn same(a: &Arc<VarRegistry>, b: &Arc<VarRegistry>) -> bool {
    Arc::ptr_eq(a, b) || a.names == b.names
}
