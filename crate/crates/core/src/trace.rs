//! Step-by-step event log for the constructive procedures.

use std::fmt;

use crate::arith::PolyFp;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceEvent {
    /// A non-invertible `z`, its minimal relation and the idempotent built from it.
    Split { z: Vec<u64>, relation: PolyFp, idempotent: Vec<u64> },
    /// A branch of the splitting recursion ended in a field of the given dimension.
    Field { dim: usize },
    /// Reverse-induction step `j` found `v(c_{j-1}) = 0`.
    Case1 { j: usize },
    /// Reverse-induction step `j` found `x·α_{j-1}` outside the prime.
    Case2 { j: usize },
    /// Reverse-induction step `j` continues downward.
    Case3 { j: usize },
    /// Frobenius iteration while lifting an idempotent.
    Lift { iteration: usize },
}

fn vec_str(v: &[u64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

impl fmt::Display for TraceEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceEvent::Split { z, relation, idempotent } => write!(
                f,
                "SPLIT{{z={}, relation={}, idempotent={}}}",
                vec_str(z),
                relation,
                vec_str(idempotent)
            ),
            TraceEvent::Field { dim } => write!(f, "FIELD{{dim={dim}}}"),
            TraceEvent::Case1 { j } => write!(f, "CASE1{{j={j}}}"),
            TraceEvent::Case2 { j } => write!(f, "CASE2{{j={j}}}"),
            TraceEvent::Case3 { j } => write!(f, "CASE3{{j={j}}}"),
            TraceEvent::Lift { iteration } => write!(f, "LIFT{{iteration={iteration}}}"),
        }
    }
}

/// Collects events when enabled; a disabled trace drops everything.
#[derive(Debug, Clone, Default)]
pub struct Trace {
    enabled: bool,
    events: Vec<TraceEvent>,
}

impl Trace {
    pub fn enabled() -> Self {
        Trace { enabled: true, events: Vec::new() }
    }

    pub fn disabled() -> Self {
        Trace::default()
    }

    pub fn is_enabled(&self) -> bool {
        self.enabled
    }

    pub fn record(&mut self, event: impl FnOnce() -> TraceEvent) {
        if self.enabled {
            self.events.push(event());
        }
    }

    pub fn events(&self) -> &[TraceEvent] {
        &self.events
    }

    pub fn lines(&self) -> Vec<String> {
        self.events.iter().map(|e| e.to_string()).collect()
    }
}
