/// Resource budgets shared by the search procedures.
///
/// Every search that can blow up reports [`crate::Error::ResourceExceeded`]
/// instead of running unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of reachability-graph states explored.
    pub max_states: usize,
    /// Maximum size of one permutation-equivalence class, and node budget
    /// for the Parikh-equivalent search.
    pub class_guard: usize,
    /// Maximum number of firing sequences enumerated by the SPE checks.
    pub max_sequences: usize,
}

impl Limits {
    pub const DEFAULT_MAX_STATES: usize = 100_000;
    pub const DEFAULT_CLASS_GUARD: usize = 1_000_000;
    pub const DEFAULT_MAX_SEQUENCES: usize = 5_000_000;
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_states: Self::DEFAULT_MAX_STATES,
            class_guard: Self::DEFAULT_CLASS_GUARD,
            max_sequences: Self::DEFAULT_MAX_SEQUENCES,
        }
    }
}
