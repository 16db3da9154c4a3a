// SPDX-License-Identifier: Apache-2.0

//! Bundled networks and the local dataset cache.
//!
//! Only Zachary's karate club ships with the crate. Larger public networks
//! (Lusseau's dolphins, Newman's `as-22july06`) are looked up by name in
//! the directory named by `EQRANK_DATA_DIR`, or `~/.cache/eqrank` when
//! unset.

use std::path::PathBuf;

use crate::graph::Graph;
use crate::io::{parse_edge_list, EdgeListOptions};

/// Zachary's karate club as an edge list with 1-based member numbers.
pub const ZACHARY_EDGE_LIST: &str = include_str!("../data/zachary.txt");

pub fn zachary() -> Graph {
    parse_edge_list(ZACHARY_EDGE_LIST, &EdgeListOptions::default())
        .expect("bundled edge list parses")
        .graph
}

pub const DATA_DIR_ENV: &str = "EQRANK_DATA_DIR";

pub fn data_dir() -> PathBuf {
    if let Some(dir) = std::env::var_os(DATA_DIR_ENV) {
        return PathBuf::from(dir);
    }
    let home = std::env::var_os("HOME")
        .map(PathBuf::from)
        .unwrap_or_default();
    home.join(".cache").join("eqrank")
}

/// Finds `name` in the data directory, trying the bare name and then the
/// `.gml` and `.txt` extensions.
pub fn locate(name: &str) -> Option<PathBuf> {
    let dir = data_dir();
    [
        name.to_string(),
        format!("{name}.gml"),
        format!("{name}.txt"),
    ]
    .into_iter()
    .map(|f| dir.join(f))
    .find(|p| p.is_file())
}

#[cfg(test)]
mod tests {
    #[test]
    fn zachary_size() {
        let g = super::zachary();
        assert_eq!((g.node_count(), g.edge_count()), (34, 78));
        assert_eq!(g.degree(g.index_of("34").unwrap()), 17);
        assert!(!g.has_edge(g.index_of("1").unwrap(), g.index_of("34").unwrap()));
    }
}
