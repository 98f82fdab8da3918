//! Size budgets for constructed categories and exhaustive searches.
//!
//! Every construction that can blow up combinatorially takes a [`Caps`] and
//! fails with an explicit cap error instead of truncating silently.

/// Budgets for generated categories and enumeration loops.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Maximum number of objects in any constructed category.
    pub max_objects: usize,
    /// Maximum number of morphisms in any constructed category.
    pub max_morphisms: usize,
    /// Maximum number of candidates visited by an exhaustive search
    /// (functor enumeration, transformation enumeration, sieve and
    /// exponential tables).
    pub max_enum: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_objects: 64,
            max_morphisms: 512,
            max_enum: 1_000_000,
        }
    }
}

impl Caps {
    /// A permissive budget for tests that deliberately build large instances.
    pub fn relaxed() -> Self {
        Caps {
            max_objects: 4096,
            max_morphisms: 65_536,
            max_enum: 50_000_000,
        }
    }

    /// Read overrides from `CATHEDRA_MAX_OBJECTS`, `CATHEDRA_MAX_MORPHISMS`
    /// and `CATHEDRA_MAX_ENUM`, falling back to `self` for unset or
    /// malformed variables.
    pub fn with_env_overrides(mut self) -> Self {
        fn read(name: &str) -> Option<usize> {
            std::env::var(name).ok()?.trim().parse().ok()
        }
        if let Some(v) = read("CATHEDRA_MAX_OBJECTS") {
            self.max_objects = v;
        }
        if let Some(v) = read("CATHEDRA_MAX_MORPHISMS") {
            self.max_morphisms = v;
        }
        if let Some(v) = read("CATHEDRA_MAX_ENUM") {
            self.max_enum = v;
        }
        self
    }
}
