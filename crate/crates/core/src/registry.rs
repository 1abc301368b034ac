//! Name-keyed registries of interchangeable strategies.
//!
//! Each algorithm family (calibration, factorization, discrete logarithm)
//! exposes a trait; concrete variants are registered under a stable name and
//! selected at runtime from configuration or the command line.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Something that can be registered: it must report the name it is looked up by.
pub trait Named {
    fn name(&self) -> &'static str;
}

pub struct Registry<T: ?Sized> {
    kind: &'static str,
    default: Option<&'static str>,
    entries: BTreeMap<&'static str, Arc<T>>,
}

impl<T: ?Sized + Named> Registry<T> {
    pub fn new(kind: &'static str) -> Self {
        Registry {
            kind,
            default: None,
            entries: BTreeMap::new(),
        }
    }

    /// Registers a strategy, replacing any previous entry with the same name.
    pub fn register(&mut self, strategy: Arc<T>) -> &mut Self {
        self.entries.insert(strategy.name(), strategy);
        self
    }

    pub fn with_default(mut self, name: &'static str) -> Self {
        assert!(
            self.entries.contains_key(name),
            "default {} strategy '{name}' is not registered",
            self.kind
        );
        self.default = Some(name);
        self
    }

    pub fn get(&self, name: &str) -> Result<Arc<T>> {
        self.entries
            .get(name)
            .cloned()
            .ok_or_else(|| Error::UnknownStrategy {
                kind: self.kind,
                name: name.to_string(),
                available: self.names().join(", "),
            })
    }

    pub fn default_strategy(&self) -> Arc<T> {
        let name = self.default.expect("registry has no default");
        self.entries[name].clone()
    }

    pub fn default_name(&self) -> Option<&'static str> {
        self.default
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.keys().copied().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    trait Greeter: Named {
        fn greet(&self) -> String;
    }

    struct Hello;
    impl Named for Hello {
        fn name(&self) -> &'static str {
            "hello"
        }
    }
    impl Greeter for Hello {
        fn greet(&self) -> String {
            "hello".into()
        }
    }

    struct Hi;
    impl Named for Hi {
        fn name(&self) -> &'static str {
            "hi"
        }
    }
    impl Greeter for Hi {
        fn greet(&self) -> String {
            "hi".into()
        }
    }

    #[test]
    fn lookup_by_name() {
        let mut reg: Registry<dyn Greeter> = Registry::new("greeter");
        reg.register(Arc::new(Hello)).register(Arc::new(Hi));
        let reg = reg.with_default("hi");
        assert_eq!(reg.get("hello").unwrap().greet(), "hello");
        assert_eq!(reg.default_strategy().greet(), "hi");
        assert_eq!(reg.names(), vec!["hello", "hi"]);
        let err = reg.get("hey").err().unwrap().to_string();
        assert!(err.contains("hello, hi"), "{err}");
    }
}
