//! Shared oracle helpers for the integration suites. Each suite uses its own
//! subset, so silence per-target dead-code lints.
#![allow(dead_code)]

use mdim::Graph;

/// Decodes a Prüfer sequence (length n-2, entries in 0..n) into the edge set
/// of the labeled tree it encodes. Every labeled tree on n vertices
/// corresponds to exactly one sequence, which makes exhaustive sweeps over
/// all n^(n-2) sequences an independent oracle for tree enumeration.
pub fn prufer_to_edges(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    assert!(n >= 2);
    assert_eq!(seq.len(), n - 2);
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    // The smallest current leaf pairs with the next sequence entry.
    let mut ptr = 0; // smallest label that might still be an unused leaf
    let mut leaf = usize::MAX;
    for &s in seq {
        if leaf == usize::MAX {
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
            ptr += 1;
        }
        edges.push((leaf.min(s), leaf.max(s)));
        degree[s] -= 1;
        // If s just became a leaf and is below the scan pointer, it is the
        // next leaf to remove; otherwise the pointer will find the minimum.
        if degree[s] == 1 && s < ptr {
            leaf = s;
        } else {
            leaf = usize::MAX;
        }
    }
    let u = if leaf != usize::MAX {
        leaf
    } else {
        while degree[ptr] != 1 {
            ptr += 1;
        }
        let u = ptr;
        ptr += 1;
        u
    };
    degree[u] = 0;
    let mut v = if ptr <= u { u + 1 } else { ptr };
    while degree[v] != 1 {
        v += 1;
    }
    edges.push((u.min(v), u.max(v)));
    edges
}

pub fn prufer_to_graph(seq: &[usize], n: usize) -> Graph {
    Graph::from_edge_list(n, &prufer_to_edges(seq, n)).expect("a decoded tree is a valid graph")
}

/// The `idx`-th Prüfer sequence of length n-2 in base-n positional order.
pub fn prufer_sequence(idx: u64, n: usize) -> Vec<usize> {
    let mut seq = vec![0usize; n - 2];
    let mut x = idx;
    for d in seq.iter_mut() {
        *d = (x % n as u64) as usize;
        x /= n as u64;
    }
    seq
}
