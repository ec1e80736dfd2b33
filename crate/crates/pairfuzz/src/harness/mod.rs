//! Execution harness: deterministic instrumented targets and edge coverage.
//!
//! Targets are interpreted state machines with statically assigned edge
//! ids (no hash collisions), so coverage is exact and every execution is a
//! pure function of the input bytes. A bug is a designated poison edge;
//! reaching it sets `crashed` with the bug id.

pub mod targets;

use crate::mutation::InputBuffer;
use crate::{Error, Result};

/// Slots in a coverage map; power of two, large enough for every target.
pub const COVERAGE_MAP_SLOTS: usize = 65536;

/// Fixed-size edge bitmap with a cached popcount.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoverageMap {
    words: Vec<u64>,
    count: u32,
}

impl CoverageMap {
    pub fn new() -> Self {
        Self { words: vec![0; COVERAGE_MAP_SLOTS / 64], count: 0 }
    }

    /// Sets an edge bit; returns true when the bit was previously clear.
    pub fn set(&mut self, edge: u16) -> bool {
        let word = &mut self.words[edge as usize / 64];
        let mask = 1u64 << (edge % 64);
        if *word & mask == 0 {
            *word |= mask;
            self.count += 1;
            true
        } else {
            false
        }
    }

    pub fn contains(&self, edge: u16) -> bool {
        self.words[edge as usize / 64] & (1u64 << (edge % 64)) != 0
    }

    /// Number of set bits.
    pub fn count(&self) -> u32 {
        self.count
    }

    pub fn edges(&self) -> Vec<u16> {
        let mut out = Vec::with_capacity(self.count as usize);
        for (w, &word) in self.words.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let b = bits.trailing_zeros();
                out.push((w * 64) as u16 + b as u16);
                bits &= bits - 1;
            }
        }
        out
    }
}

impl Default for CoverageMap {
    fn default() -> Self {
        Self::new()
    }
}

/// Collects the edges of one execution, deduplicated in first-hit order.
pub struct EdgeSink {
    seen: Vec<u64>,
    edges: Vec<u16>,
    bug: Option<&'static str>,
}

impl EdgeSink {
    pub fn new() -> Self {
        Self { seen: vec![0; COVERAGE_MAP_SLOTS / 64], edges: Vec::with_capacity(256), bug: None }
    }

    #[inline]
    pub fn hit(&mut self, edge: u16) {
        let word = &mut self.seen[edge as usize / 64];
        let mask = 1u64 << (edge % 64);
        if *word & mask == 0 {
            *word |= mask;
            self.edges.push(edge);
        }
    }

    #[inline]
    pub fn bug(&mut self, id: &'static str) {
        self.bug = Some(id);
    }

    pub fn edges(&self) -> &[u16] {
        &self.edges
    }

    /// Clears only the touched bits, keeping resets O(edges hit).
    fn reset(&mut self) {
        for &e in &self.edges {
            self.seen[e as usize / 64] &= !(1u64 << (e % 64));
        }
        self.edges.clear();
        self.bug = None;
    }
}

impl Default for EdgeSink {
    fn default() -> Self {
        Self::new()
    }
}

/// Outcome of one execution.
pub struct ExecResult {
    pub coverage: CoverageMap,
    pub crashed: bool,
    pub bug_id: Option<&'static str>,
    pub exec_index: u64,
}

/// A deterministic instrumented toy target.
pub struct Target {
    pub name: &'static str,
    /// Total number of statically assigned edges.
    pub edge_count: u16,
    run: fn(&[u8], &mut EdgeSink),
    seeds: fn() -> Vec<Vec<u8>>,
    auto_tokens: fn() -> Vec<Vec<u8>>,
}

impl Target {
    /// Runs the target, emitting edges into the sink.
    pub fn run(&self, bytes: &[u8], sink: &mut EdgeSink) {
        (self.run)(bytes, sink)
    }

    /// The shipped initial seed corpus for this target.
    pub fn seeds(&self) -> Vec<Vec<u8>> {
        (self.seeds)()
    }

    /// Auto-dictionary tokens (magics, field constants) for mutators 25/26.
    pub fn auto_tokens(&self) -> Vec<Vec<u8>> {
        (self.auto_tokens)()
    }
}

/// The built-in targets.
pub fn builtin_targets() -> &'static [Target] {
    &targets::TARGETS
}

/// Looks a target up by name.
pub fn find_target(name: &str) -> Result<&'static Target> {
    builtin_targets()
        .iter()
        .find(|t| t.name == name)
        .ok_or_else(|| {
            let known: Vec<&str> = builtin_targets().iter().map(|t| t.name).collect();
            Error::Config(format!("unknown target '{name}' (known: {})", known.join(", ")))
        })
}

/// True iff the execution covered at least one edge absent from `global`;
/// when true, `global` becomes the union (the update and the test are one
/// operation).
pub fn is_interesting(global: &mut CoverageMap, exec: &ExecResult) -> bool {
    let mut new_edge = false;
    for edge in exec.coverage.edges() {
        if global.set(edge) {
            new_edge = true;
        }
    }
    new_edge
}

/// Per-trial executor owning the reusable sink and the execution counter.
pub struct Executor {
    pub target: &'static Target,
    sink: EdgeSink,
    execs: u64,
}

/// Borrowed view of one execution, valid until the next run.
pub struct RunView<'a> {
    pub edges: &'a [u16],
    pub crashed: bool,
    pub bug_id: Option<&'static str>,
    pub exec_index: u64,
}

impl Executor {
    pub fn new(target: &'static Target) -> Self {
        Self { target, sink: EdgeSink::new(), execs: 0 }
    }

    pub fn execs(&self) -> u64 {
        self.execs
    }

    /// Fast path for the fuzzing loop: no allocation, borrowed edge list.
    pub fn run(&mut self, bytes: &[u8]) -> RunView<'_> {
        self.sink.reset();
        self.target.run(bytes, &mut self.sink);
        let exec_index = self.execs;
        self.execs += 1;
        RunView {
            edges: self.sink.edges(),
            crashed: self.sink.bug.is_some(),
            bug_id: self.sink.bug,
            exec_index,
        }
    }

    /// Contract path: owned result with a full coverage map.
    pub fn execute(&mut self, input: &InputBuffer) -> ExecResult {
        let view = self.run(input.as_slice());
        let exec_index = view.exec_index;
        let crashed = view.crashed;
        let bug_id = view.bug_id;
        let mut coverage = CoverageMap::new();
        for &e in self.sink.edges() {
            coverage.set(e);
        }
        ExecResult { coverage, crashed, bug_id, exec_index }
    }
}

/// One-shot execution, for tests and replay.
pub fn execute(target: &'static Target, input: &InputBuffer) -> ExecResult {
    Executor::new(target).execute(input)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_counts_match_popcount() {
        let mut map = CoverageMap::new();
        assert_eq!(map.count(), 0);
        assert!(map.set(5));
        assert!(map.set(64));
        assert!(!map.set(5));
        assert_eq!(map.count(), 2);
        assert_eq!(map.edges(), vec![5, 64]);
    }

    #[test]
    fn is_interesting_updates_union() {
        let mut global = CoverageMap::new();
        global.set(1);
        global.set(5);

        let mut cov = CoverageMap::new();
        cov.set(5);
        cov.set(9);
        let exec = ExecResult { coverage: cov, crashed: false, bug_id: None, exec_index: 0 };
        assert!(is_interesting(&mut global, &exec));
        assert_eq!(global.count(), 3);
        assert!(global.contains(9));

        let mut cov = CoverageMap::new();
        cov.set(1);
        let exec = ExecResult { coverage: cov, crashed: false, bug_id: None, exec_index: 1 };
        assert!(!is_interesting(&mut global, &exec));
        assert_eq!(global.count(), 3);
    }

    #[test]
    fn empty_global_everything_interesting() {
        let mut global = CoverageMap::new();
        let mut cov = CoverageMap::new();
        cov.set(0);
        let exec = ExecResult { coverage: cov, crashed: false, bug_id: None, exec_index: 0 };
        assert!(is_interesting(&mut global, &exec));
    }

    #[test]
    fn executor_counts_and_fast_path_matches_execute() {
        let target = find_target("chunkfmt").unwrap();
        let mut ex = Executor::new(target);
        let input = InputBuffer::from_bytes(target.seeds()[0].clone());

        let view_edges: Vec<u16> = ex.run(input.as_slice()).edges.to_vec();
        let result = ex.execute(&input);
        assert_eq!(result.exec_index, 1);
        assert_eq!(result.coverage.count() as usize, view_edges.len());
        for e in view_edges {
            assert!(result.coverage.contains(e));
        }
    }

    #[test]
    fn unknown_target_is_config_error() {
        assert!(find_target("nope").is_err());
    }
}
