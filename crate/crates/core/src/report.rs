use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::dilation::DilationSet;
use crate::driver::{DriverType, InputPattern, Verdict};
use crate::graph::NodeSet;

/// Per-condition structural check of a driver set.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Verification {
    /// Nodes with no path from a driver (empty when connectivity holds).
    pub unreachable: NodeSet,
    /// `n - srank([A | B])` (zero when the rank condition holds).
    pub rank_deficit: usize,
}

impl Verification {
    pub fn input_connected(&self) -> bool {
        self.unreachable.is_empty()
    }

    pub fn rank_full(&self) -> bool {
        self.rank_deficit == 0
    }

    pub fn passed(&self) -> bool {
        self.input_connected() && self.rank_full()
    }

    pub fn verdict(&self) -> Verdict {
        if !self.input_connected() {
            Verdict::FailsConnectivity {
                unreachable: self.unreachable.clone(),
            }
        } else if !self.rank_full() {
            Verdict::FailsRank {
                deficit: self.rank_deficit,
            }
        } else {
            Verdict::Controllable
        }
    }
}

/// Result of driver-node selection.
///
/// Serializes to the report JSON: `pairings` holds 0-based positions into
/// `dilations` and `child_sccs`; `input_pattern` holds 1-based
/// `[row, column]` nonzeros.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DriverReport {
    pub n_min: usize,
    pub drivers: NodeSet,
    pub types: BTreeMap<usize, Vec<DriverType>>,
    pub dilations: Vec<DilationSet>,
    pub child_sccs: Vec<NodeSet>,
    pub pairings: Vec<(usize, usize, usize)>,
    pub input_pattern: InputPattern,
    pub verified: bool,
    #[serde(skip)]
    pub verification: Verification,
}

impl DriverReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    /// Fixed human-readable layout.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "minimum driver nodes: {}", self.n_min);
        let _ = writeln!(out, "drivers: {}", self.drivers);
        let _ = writeln!(out, "driver types:");
        for (node, tags) in &self.types {
            let tags: Vec<String> = tags.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "  {node}: {}", tags.join(", "));
        }
        let _ = writeln!(out, "dilation sets ({}):", self.dilations.len());
        for (i, d) in self.dilations.iter().enumerate() {
            let _ = writeln!(
                out,
                "  D{}: anchor {} members {}",
                i + 1,
                d.anchor,
                d.members
            );
        }
        let _ = writeln!(out, "child SCCs ({}):", self.child_sccs.len());
        for (j, s) in self.child_sccs.iter().enumerate() {
            let _ = writeln!(out, "  S{}: {}", j + 1, s);
        }
        let _ = writeln!(out, "pairings ({}):", self.pairings.len());
        for &(i, j, v) in &self.pairings {
            let _ = writeln!(out, "  D{} + S{} via node {v}", i + 1, j + 1);
        }
        let _ = writeln!(out, "input pattern:");
        for line in self.input_pattern.to_string().lines() {
            let _ = writeln!(out, "  {line}");
        }
        let status = |ok: bool| if ok { "pass" } else { "FAIL" };
        let _ = writeln!(
            out,
            "verification: input-connectivity {}, rank {}",
            status(self.verification.input_connected()),
            status(self.verification.rank_full())
        );
        out
    }
}
