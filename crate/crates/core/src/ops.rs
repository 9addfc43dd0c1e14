use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

/// Shared elementary-operation counter.
///
/// Clones share the same underlying count, so every structure owned by one
/// engine can tick a single total.
#[derive(Debug, Clone, Default)]
pub struct OpCounter(Arc<AtomicU64>);

impl OpCounter {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn tick(&self, k: u64) {
        self.0.fetch_add(k, Ordering::Relaxed);
    }

    pub fn get(&self) -> u64 {
        self.0.load(Ordering::Relaxed)
    }
}
