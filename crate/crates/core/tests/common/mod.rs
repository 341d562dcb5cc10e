//! Slow, independent oracles shared by the integration tests. Nothing here
//! calls the solver, the walk search or the subdigraph builder.

#![allow(dead_code)]

use std::collections::BTreeSet;

use dbwalk::Digraph;

const SYMBOLS: &str = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ";

/// Every string of length `n` over `a` symbols, lexicographic.
pub fn all_strings(a: usize, n: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                SYMBOLS[..a].chars().map(move |c| {
                    let mut s = prefix.clone();
                    s.push(c);
                    s
                })
            })
            .collect();
    }
    out
}

/// Cyclic windows by slicing the doubled text.
pub fn windows(text: &str, k: usize) -> Vec<String> {
    let doubled: String = text.repeat(1 + k.div_ceil(text.len().max(1)));
    (0..text.len())
        .map(|i| doubled[i..i + k].to_string())
        .collect()
}

fn is_shift(from: &str, to: &str) -> bool {
    from[1..] == to[..to.len() - 1]
}

/// Generated subdigraph by scanning every `k`-string of the alphabet.
pub fn brute_force_subdigraph(
    text: &str,
    a: usize,
    k: usize,
) -> (BTreeSet<String>, BTreeSet<(String, String)>) {
    let tour: BTreeSet<String> = windows(text, k).into_iter().collect();
    let vertices: BTreeSet<String> = all_strings(a, k)
        .into_iter()
        .filter(|s| tour.contains(s) || tour.iter().any(|w| is_shift(w, s)))
        .collect();
    let arcs = vertices
        .iter()
        .flat_map(|u| {
            vertices
                .iter()
                .filter(move |v| is_shift(u, v))
                .map(move |v| (u.clone(), v.clone()))
        })
        .collect();
    (vertices, arcs)
}

fn dominates(g: &Digraph, visited: &[usize]) -> bool {
    let mut seen = vec![false; g.vertex_count()];
    for &v in visited {
        seen[v] = true;
    }
    for &(u, v) in g.arcs() {
        if visited.contains(&u) {
            seen[v] = true;
        }
    }
    seen.into_iter().all(|s| s)
}

fn extend_all(g: &Digraph, path: &mut Vec<usize>, len: usize, out: &mut dyn FnMut(&[usize])) {
    if path.len() == len {
        if g.arcs().contains(&(*path.last().unwrap(), path[0])) && dominates(g, path) {
            out(path);
        }
        return;
    }
    let last = *path.last().unwrap();
    for v in 0..g.vertex_count() {
        if g.arcs().contains(&(last, v)) {
            path.push(v);
            extend_all(g, path, len, out);
            path.pop();
        }
    }
}

/// Every closed dominating walk with exactly `len` arcs, as raw vertex
/// sequences (all rotations included).
pub fn naive_walks(g: &Digraph, len: usize) -> Vec<Vec<usize>> {
    let mut found = Vec::new();
    if len == 0 {
        for v in 0..g.vertex_count() {
            if dominates(g, &[v]) {
                found.push(vec![v]);
            }
        }
        return found;
    }
    for start in 0..g.vertex_count() {
        let mut path = vec![start];
        extend_all(g, &mut path, len, &mut |p| found.push(p.to_vec()));
    }
    found
}

/// Shortest closed dominating walk length, trying lengths `0..=max_len` in
/// order by exhaustive enumeration.
pub fn naive_min_walk(g: &Digraph, max_len: usize) -> Option<usize> {
    (0..=max_len).find(|&len| !naive_walks(g, len).is_empty())
}

/// Least rotation of a vertex sequence.
pub fn least_rotation(walk: &[usize]) -> Vec<usize> {
    (0..walk.len())
        .map(|r| {
            let mut w = walk.to_vec();
            w.rotate_left(r);
            w
        })
        .min()
        .unwrap_or_default()
}
