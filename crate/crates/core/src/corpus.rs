//! Exhaustive generation of small projections of a fixed graph.
//!
//! A candidate is a Gauss word on `cr` labels cut into one piece per edge,
//! a crossing orientation per label and a cyclic order of edge ends at
//! every vertex. Candidates that close up on the sphere (per connected
//! component) are kept. Every projection with `cr` double points arises
//! this way, usually several times under different labels.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::catalog::matching_words;
use crate::diagram::{default_rotations, EdgeEnd, GaussData, Projection};
use crate::graph::{families, AbstractGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Circle,
    Theta,
    Handcuff,
    K4,
    TwoUnknots,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown graph family `{0}` (expected circle, theta, handcuff, k4 or two-unknots)")]
pub struct UnknownFamily(String);

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Circle,
        Family::Theta,
        Family::Handcuff,
        Family::K4,
        Family::TwoUnknots,
    ];

    pub fn graph(self) -> AbstractGraph {
        match self {
            Family::Circle => families::circle(),
            Family::Theta => families::theta(),
            Family::Handcuff => families::handcuff(),
            Family::K4 => families::k4(),
            Family::TwoUnknots => families::two_unknots(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Circle => "circle",
            Family::Theta => "theta",
            Family::Handcuff => "handcuff",
            Family::K4 => "k4",
            Family::TwoUnknots => "two-unknots",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = UnknownFamily;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownFamily(s.to_string()))
    }
}

/// Ways to cut a word of length `len` into `parts` consecutive pieces,
/// as piece lengths.
pub fn compositions(len: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if len == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    if parts == 1 {
        return vec![vec![len]];
    }
    let mut out = Vec::new();
    for first in 0..=len {
        for mut rest in compositions(len - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Cyclic orders of `ends`: the first stays put, the rest are permuted.
fn cyclic_orders(ends: &[EdgeEnd]) -> Vec<Vec<EdgeEnd>> {
    fn permute(rest: &mut Vec<EdgeEnd>, k: usize, head: EdgeEnd, out: &mut Vec<Vec<EdgeEnd>>) {
        if k == rest.len() {
            let mut v = vec![head];
            v.extend_from_slice(rest);
            out.push(v);
            return;
        }
        for i in k..rest.len() {
            rest.swap(k, i);
            permute(rest, k + 1, head, out);
            rest.swap(k, i);
        }
    }
    match ends.split_first() {
        None => vec![Vec::new()],
        Some((&head, rest)) => {
            let mut out = Vec::new();
            permute(&mut rest.to_vec(), 0, head, &mut out);
            out
        }
    }
}

/// All rotation systems of `g`, in a fixed order.
pub fn rotation_systems(g: &AbstractGraph) -> Vec<Vec<Vec<EdgeEnd>>> {
    let per_vertex: Vec<Vec<Vec<EdgeEnd>>> = default_rotations(g).iter().map(|r| cyclic_orders(r)).collect();
    let mut out = vec![Vec::new()];
    for choices in per_vertex {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<Vec<EdgeEnd>>| {
                choices.iter().map(move |c| {
                    let mut p = prefix.clone();
                    p.push(c.clone());
                    p
                })
            })
            .collect();
    }
    out
}

/// Applies `f` to every projection of `g` with exactly `cr` double points
/// and collects the results that are `Some`, in generation order. Work is
/// spread over the current rayon pool; the output order does not depend
/// on it.
pub fn map_projections<R, F>(g: &AbstractGraph, cr: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(Projection) -> Option<R> + Sync,
{
    let rotations = rotation_systems(g);
    let outer: Vec<(Vec<usize>, Vec<usize>)> = matching_words(cr)
        .into_iter()
        .flat_map(|w| {
            compositions(2 * cr, g.edge_count())
                .into_iter()
                .map(move |c| (w.clone(), c))
        })
        .collect();
    outer
        .par_iter()
        .flat_map_iter(|(word, cut)| {
            let mut sequences = Vec::with_capacity(cut.len());
            let mut at = 0;
            for &len in cut {
                sequences.push(word[at..at + len].to_vec());
                at += len;
            }
            let mut found = Vec::new();
            for bits in 0..1u32 << cr {
                let flip: Vec<bool> = (0..cr).map(|i| bits >> i & 1 == 1).collect();
                for rot in &rotations {
                    let gd = GaussData {
                        graph: g.clone(),
                        sequences: sequences.clone(),
                        flip: flip.clone(),
                        rotations: rot.clone(),
                    };
                    if let Some(r) = gd.realize().and_then(&f) {
                        found.push(r);
                    }
                }
            }
            found
        })
        .collect()
}

pub fn projections(g: &AbstractGraph, cr: usize) -> Vec<Projection> {
    map_projections(g, cr, Some)
}

/// Every projection of the family's graph with at most `max_cr` double
/// points, by increasing double point count.
pub fn generate_corpus(family: Family, max_cr: usize) -> Vec<Projection> {
    let g = family.graph();
    (0..=max_cr).flat_map(|cr| projections(&g, cr)).collect()
}

/// The first embedding of `g` in the sphere found by rotation search.
pub fn embedding(g: &AbstractGraph) -> Option<Projection> {
    rotation_systems(g).into_iter().find_map(|rotations| {
        GaussData {
            graph: g.clone(),
            sequences: vec![Vec::new(); g.edge_count()],
            flip: Vec::new(),
            rotations,
        }
        .realize()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{canonical_form, catalog};
    use std::collections::BTreeSet;

    #[test]
    fn composition_counts() {
        assert_eq!(compositions(4, 3).len(), 15);
        assert_eq!(compositions(0, 2), vec![vec![0, 0]]);
    }

    #[test]
    fn rotation_systems_and_embeddings() {
        assert_eq!(rotation_systems(&families::k4()).len(), 16);
        assert!(embedding(&families::k4()).is_some());
        assert!(embedding(&families::k5()).is_none());
    }

    #[test]
    fn circle_corpus_covers_catalog() {
        let codes: BTreeSet<_> = generate_corpus(Family::Circle, 3)
            .iter()
            .map(|p| canonical_form(p, catalog().mirror_identified).unwrap())
            .collect();
        let all: BTreeSet<_> = catalog().classes.iter().map(|c| c.code.clone()).collect();
        assert_eq!(codes, all);
    }

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("k5".parse::<Family>().is_err());
    }
}
