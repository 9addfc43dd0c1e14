use crate::error::Result;
use crate::graph::{Edge, UpdateEvent};

/// Common interface of every dynamic matching engine.
pub trait MatchingEngine {
    fn name(&self) -> &'static str;

    /// Number of user-visible vertices.
    fn n(&self) -> usize;

    fn apply(&mut self, ev: UpdateEvent) -> Result<()>;

    /// Current matching, canonical edges in ascending order.
    fn matching(&self) -> Vec<Edge>;

    /// Elementary operations performed so far.
    fn op_count(&self) -> u64;
}
