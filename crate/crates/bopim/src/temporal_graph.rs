//! Timestamped contact lists and their aggregation into snapshot sequences.
//!
//! A temporal graph here is a fixed node set plus `T` snapshot edge sets,
//! obtained by splitting the observed timestamp range into `T` equal-width
//! windows. Contacts are undirected, self-loops are dropped at parse time,
//! and repeated contacts inside one window collapse to a single edge: a
//! snapshot is an edge *set*, so it grants exactly one transmission attempt
//! per round in the diffusion process.

use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;

use thiserror::Error;

/// Dense node identifier in `0..n`.
pub type NodeId = u32;

/// A single undirected contact `(u, v)` observed at time `t`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Contact {
    pub u: NodeId,
    pub v: NodeId,
    pub t: f64,
}

/// Raw contact data with dense node ids, ready for aggregation.
#[derive(Clone, Debug)]
pub struct ContactList {
    contacts: Vec<Contact>,
    n_hint: Option<usize>,
}

impl ContactList {
    /// Build from already-dense contacts. Self-loops are rejected.
    pub fn new(contacts: Vec<Contact>) -> Result<Self, ParseError> {
        if contacts.is_empty() {
            return Err(ParseError::EmptyInput);
        }
        if contacts.iter().any(|c| c.u == c.v) {
            return Err(ParseError::SelfLoop);
        }
        Ok(ContactList {
            contacts,
            n_hint: None,
        })
    }

    /// Declare the true node count, for datasets whose highest-degree-zero
    /// nodes never appear in any contact.
    pub fn with_n_hint(mut self, n: usize) -> Self {
        self.n_hint = Some(n);
        self
    }

    pub fn contacts(&self) -> &[Contact] {
        &self.contacts
    }

    pub fn len(&self) -> usize {
        self.contacts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.contacts.is_empty()
    }

    /// Observed `(t_min, t_max)` over all contacts.
    pub fn time_range(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for c in &self.contacts {
            lo = lo.min(c.t);
            hi = hi.max(c.t);
        }
        (lo, hi)
    }

    fn node_count(&self) -> Result<usize, AggregateError> {
        let max_id = self.contacts.iter().map(|c| c.u.max(c.v)).max().unwrap_or(0);
        let required = max_id as usize + 1;
        match self.n_hint {
            Some(hint) if hint < required => Err(AggregateError::NodeCountTooSmall {
                hint,
                required,
            }),
            Some(hint) => Ok(hint),
            None => Ok(required),
        }
    }
}

/// Column positions of `u`, `v`, `t` in a whitespace-delimited contact file.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ColumnOrder {
    pub u: usize,
    pub v: usize,
    pub t: usize,
}

impl Default for ColumnOrder {
    fn default() -> Self {
        ColumnOrder { u: 0, v: 1, t: 2 }
    }
}

impl FromStr for ColumnOrder {
    type Err = ParseError;

    /// Parse a spec like `"u v t"` or `"t u v"`.
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let names: Vec<&str> = s.split_whitespace().collect();
        if names.len() != 3 {
            return Err(ParseError::BadColumnSpec(s.to_string()));
        }
        let pos = |name: &str| names.iter().position(|&f| f == name);
        match (pos("u"), pos("v"), pos("t")) {
            (Some(u), Some(v), Some(t)) => Ok(ColumnOrder { u, v, t }),
            _ => Err(ParseError::BadColumnSpec(s.to_string())),
        }
    }
}

/// What happened during parsing: kept/dropped line counts and the node-id
/// relabeling, if one was required to make ids dense.
#[derive(Clone, Debug, Default)]
pub struct ParseReport {
    pub lines_read: usize,
    pub comment_lines: usize,
    pub contacts_kept: usize,
    pub self_loops_dropped: usize,
    /// `relabel_map[new_id] = original_id`; `None` when the raw id space was
    /// already dense `0..n`.
    pub relabel_map: Option<Vec<u64>>,
}

impl ParseReport {
    pub fn relabeled(&self) -> bool {
        self.relabel_map.is_some()
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum ParseError {
    #[error("no valid contact lines in input")]
    EmptyInput,
    #[error("line {line}: malformed field `{field}`")]
    MalformedLine { line: usize, field: String },
    #[error("column spec `{0}` must name u, v and t exactly once")]
    BadColumnSpec(String),
    #[error("contact list contains a self-loop")]
    SelfLoop,
}

/// Parse a whitespace-delimited contact file into a [`ContactList`].
///
/// Lines starting with `#` are comments and blank lines are skipped.
/// Self-loop lines are silently dropped and counted in the report. Node ids
/// are relabeled to dense `0..n` (in ascending original-id order) whenever
/// the raw id space has gaps, and the mapping is returned in the report.
pub fn parse_contacts(
    text: &str,
    columns: &ColumnOrder,
) -> Result<(ContactList, ParseReport), ParseError> {
    let needed = columns.u.max(columns.v).max(columns.t) + 1;
    let mut raw: Vec<(u64, u64, f64)> = Vec::new();
    let mut report = ParseReport::default();

    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed.starts_with('#') {
            report.comment_lines += 1;
            continue;
        }
        report.lines_read += 1;
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        if fields.len() < needed {
            return Err(ParseError::MalformedLine {
                line: line_no,
                field: trimmed.to_string(),
            });
        }
        let parse_id = |s: &str| {
            s.parse::<u64>().map_err(|_| ParseError::MalformedLine {
                line: line_no,
                field: s.to_string(),
            })
        };
        let u = parse_id(fields[columns.u])?;
        let v = parse_id(fields[columns.v])?;
        let t = fields[columns.t]
            .parse::<f64>()
            .map_err(|_| ParseError::MalformedLine {
                line: line_no,
                field: fields[columns.t].to_string(),
            })?;
        if !t.is_finite() {
            return Err(ParseError::MalformedLine {
                line: line_no,
                field: fields[columns.t].to_string(),
            });
        }
        if u == v {
            report.self_loops_dropped += 1;
            continue;
        }
        raw.push((u, v, t));
    }

    if raw.is_empty() {
        return Err(ParseError::EmptyInput);
    }

    // Relabel to dense ids when needed. The map is derived from the sorted
    // id set, so it does not depend on line order.
    let ids: BTreeSet<u64> = raw.iter().flat_map(|&(u, v, _)| [u, v]).collect();
    let max_id = *ids.iter().next_back().expect("non-empty id set");
    let dense = max_id as usize + 1 == ids.len();
    let lookup: Option<BTreeMap<u64, NodeId>> = if dense {
        None
    } else {
        let map: BTreeMap<u64, NodeId> = ids
            .iter()
            .enumerate()
            .map(|(new, &orig)| (orig, new as NodeId))
            .collect();
        report.relabel_map = Some(ids.iter().copied().collect());
        Some(map)
    };

    let contacts: Vec<Contact> = raw
        .into_iter()
        .map(|(u, v, t)| {
            let (u, v) = match &lookup {
                Some(map) => (map[&u], map[&v]),
                None => (u as NodeId, v as NodeId),
            };
            Contact { u, v, t }
        })
        .collect();
    report.contacts_kept = contacts.len();

    Ok((
        ContactList {
            contacts,
            n_hint: None,
        },
        report,
    ))
}

/// A node set plus `T` ordered snapshot edge sets. Immutable after
/// construction and safe to share across threads.
#[derive(Clone, Debug, PartialEq)]
pub struct TemporalGraph {
    n: usize,
    /// Each snapshot is sorted and deduplicated with `u < v`.
    snapshots: Vec<Vec<(NodeId, NodeId)>>,
}

#[derive(Debug, Error, PartialEq)]
pub enum AggregateError {
    #[error("snapshot count must be at least 1")]
    InvalidT,
    #[error("declared node count {hint} is below the observed {required}")]
    NodeCountTooSmall { hint: usize, required: usize },
    #[error("edge endpoint {node} is out of range for {n} nodes")]
    EndpointOutOfRange { node: NodeId, n: usize },
    #[error("graph must have at least one node and one snapshot")]
    Empty,
}

impl TemporalGraph {
    /// Build directly from per-snapshot edge lists (used by generators and
    /// tests). Edges are normalized to `u < v`, deduplicated, and self-loops
    /// rejected via the out-of-range check path below.
    pub fn from_snapshot_edges(
        n: usize,
        snapshots: Vec<Vec<(NodeId, NodeId)>>,
    ) -> Result<Self, AggregateError> {
        if n == 0 || snapshots.is_empty() {
            return Err(AggregateError::Empty);
        }
        let mut normalized = Vec::with_capacity(snapshots.len());
        for edges in snapshots {
            let mut set = BTreeSet::new();
            for (u, v) in edges {
                if u as usize >= n {
                    return Err(AggregateError::EndpointOutOfRange { node: u, n });
                }
                if v as usize >= n {
                    return Err(AggregateError::EndpointOutOfRange { node: v, n });
                }
                if u == v {
                    continue;
                }
                set.insert((u.min(v), u.max(v)));
            }
            normalized.push(set.into_iter().collect());
        }
        Ok(TemporalGraph {
            n,
            snapshots: normalized,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of snapshots `T`.
    pub fn num_snapshots(&self) -> usize {
        self.snapshots.len()
    }

    pub fn snapshot(&self, t: usize) -> &[(NodeId, NodeId)] {
        &self.snapshots[t]
    }

    pub fn snapshots(&self) -> &[Vec<(NodeId, NodeId)>] {
        &self.snapshots
    }

    /// Edge set of the aggregated (union) graph.
    pub fn union_edges(&self) -> BTreeSet<(NodeId, NodeId)> {
        self.snapshots.iter().flatten().copied().collect()
    }

    /// `m`: number of unique edges across all snapshots.
    pub fn union_edge_count(&self) -> usize {
        self.union_edges().len()
    }
}

/// Split the timestamp range into `t_windows` half-open equal-width windows
/// (the last window is closed at `t_max`) and collect one deduplicated edge
/// set per window.
///
/// When every contact carries the same timestamp the range is degenerate and
/// all contacts land in snapshot 0; the remaining snapshots are empty. That
/// case is legal, not an error.
pub fn aggregate(contacts: &ContactList, t_windows: usize) -> Result<TemporalGraph, AggregateError> {
    if t_windows < 1 {
        return Err(AggregateError::InvalidT);
    }
    let n = contacts.node_count()?;
    let (t_min, t_max) = contacts.time_range();
    let span = t_max - t_min;

    let mut sets: Vec<BTreeSet<(NodeId, NodeId)>> = vec![BTreeSet::new(); t_windows];
    for c in contacts.contacts() {
        let idx = if span == 0.0 {
            0
        } else {
            let w = ((c.t - t_min) / span * t_windows as f64).floor() as usize;
            w.min(t_windows - 1)
        };
        sets[idx].insert((c.u.min(c.v), c.u.max(c.v)));
    }

    Ok(TemporalGraph {
        n,
        snapshots: sets.into_iter().map(|s| s.into_iter().collect()).collect(),
    })
}

/// Per-node degree on the aggregated union graph.
#[derive(Clone, Debug, PartialEq)]
pub struct DegreeVector(Vec<u32>);

impl DegreeVector {
    pub fn new(d: Vec<u32>) -> Self {
        DegreeVector(d)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of all degrees; equals `2m` on an undirected union graph.
    pub fn total(&self) -> u64 {
        self.0.iter().map(|&d| d as u64).sum()
    }
}

/// Number of distinct neighbors of each node in the union of all snapshots.
pub fn aggregate_degrees(g: &TemporalGraph) -> DegreeVector {
    let mut d = vec![0u32; g.n()];
    for (u, v) in g.union_edges() {
        d[u as usize] += 1;
        d[v as usize] += 1;
    }
    DegreeVector(d)
}
