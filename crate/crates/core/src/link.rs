//! Oriented link diagrams on the sphere.
//!
//! A diagram with `n` crossings has `4n` slots. Slot `4c + s` is position
//! `s` in the counterclockwise order around crossing `c`; slots `s` and
//! `s + 2` belong to the same strand, and `s % 2` is the strand's parity.
//! `next` is the involution joining the two ends of every arc. Components
//! without crossings are kept as a count of free loops.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::UnionFind;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinkError {
    #[error("component count: expected {expected}, found {found}")]
    ComponentCount { expected: usize, found: usize },
    #[error("overlapping components")]
    OverlappingComponents,
    #[error("malformed diagram: {0}")]
    Malformed(String),
}

/// Passage of a component through a crossing, entering at `slot`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Visit {
    pub crossing: usize,
    pub slot: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkDiagram {
    /// Parity of the over strand at each crossing.
    pub(crate) over: Vec<u8>,
    /// Entry slot of each parity's strand at each crossing.
    pub(crate) entry: Vec<[usize; 2]>,
    pub(crate) next: Vec<usize>,
    /// Component index of every slot.
    pub(crate) component: Vec<usize>,
    /// Components that meet no crossing.
    pub(crate) free_loops: Vec<usize>,
    pub(crate) components: usize,
}

pub(crate) fn slot(c: usize, s: usize) -> usize {
    4 * c + s % 4
}

pub(crate) fn opposite(x: usize) -> usize {
    slot(x / 4, x % 4 + 2)
}

impl LinkDiagram {
    /// Trivial diagram of `k` disjoint circles.
    pub fn unlink(k: usize) -> Self {
        LinkDiagram {
            over: Vec::new(),
            entry: Vec::new(),
            next: Vec::new(),
            component: Vec::new(),
            free_loops: (0..k).collect(),
            components: k,
        }
    }

    pub fn unknot() -> Self {
        Self::unlink(1)
    }

    /// Builds a diagram from the cyclic sequence of crossing visits along
    /// each component. Every crossing must be visited exactly twice, once
    /// through each parity, and `over[c]` names the over parity.
    pub fn from_walks(over: Vec<u8>, walks: &[Vec<Visit>]) -> Result<Self, LinkError> {
        let n = over.len();
        let mut entry = vec![[usize::MAX; 2]; n];
        let mut next = vec![usize::MAX; 4 * n];
        let mut component = vec![usize::MAX; 4 * n];
        let mut free_loops = Vec::new();
        for (k, walk) in walks.iter().enumerate() {
            if walk.is_empty() {
                free_loops.push(k);
                continue;
            }
            for (i, v) in walk.iter().enumerate() {
                if v.crossing >= n || v.slot >= 4 {
                    return Err(LinkError::Malformed(format!("visit {v:?} out of range")));
                }
                let parity = v.slot % 2;
                if entry[v.crossing][parity] != usize::MAX {
                    return Err(LinkError::Malformed(format!(
                        "crossing {} visited twice by parity {parity}",
                        v.crossing
                    )));
                }
                entry[v.crossing][parity] = v.slot;
                let (inn, out) = (slot(v.crossing, v.slot), slot(v.crossing, v.slot + 2));
                component[inn] = k;
                component[out] = k;
                let w = walk[(i + 1) % walk.len()];
                let to = slot(w.crossing, w.slot);
                next[out] = to;
                next[to] = out;
            }
        }
        if entry.iter().flatten().any(|&e| e == usize::MAX) {
            return Err(LinkError::Malformed("crossing visited fewer than twice".into()));
        }
        let d = LinkDiagram {
            over,
            entry,
            next,
            component,
            free_loops,
            components: walks.len(),
        };
        d.check()?;
        Ok(d)
    }

    pub(crate) fn check(&self) -> Result<(), LinkError> {
        let n = self.crossing_count();
        if self.next.len() != 4 * n || self.component.len() != 4 * n {
            return Err(LinkError::Malformed("slot table size".into()));
        }
        for (x, &y) in self.next.iter().enumerate() {
            if y >= 4 * n || self.next[y] != x || y == x {
                return Err(LinkError::Malformed(format!("slot {x} is not paired")));
            }
            if self.is_exit(x) == self.is_exit(y) {
                return Err(LinkError::Malformed(format!(
                    "arc at slot {x} is not coherently oriented"
                )));
            }
        }
        if !self.is_spherical() {
            return Err(LinkError::Malformed("not spherical".into()));
        }
        Ok(())
    }

    pub fn crossing_count(&self) -> usize {
        self.over.len()
    }

    pub fn component_count(&self) -> usize {
        self.components
    }

    pub fn free_loop_count(&self) -> usize {
        self.free_loops.len()
    }

    pub fn over_parity(&self, c: usize) -> u8 {
        self.over[c]
    }

    /// Whether the strand leaves its crossing through slot `x`.
    pub fn is_exit(&self, x: usize) -> bool {
        let (c, s) = (x / 4, x % 4);
        self.entry[c][s % 2] != s
    }

    pub fn slot_component(&self, x: usize) -> usize {
        self.component[x]
    }

    /// Components of the two strands at crossing `c`, by parity.
    pub fn crossing_components(&self, c: usize) -> [usize; 2] {
        [self.component[slot(c, 0)], self.component[slot(c, 1)]]
    }

    /// Sign of crossing `c`: +1 iff the under strand enters one step
    /// counterclockwise after the over strand.
    pub fn sign(&self, c: usize) -> i32 {
        let o = self.over[c] as usize;
        let (oi, ui) = (self.entry[c][o], self.entry[c][1 - o]);
        if ui == (oi + 1) % 4 {
            1
        } else {
            -1
        }
    }

    /// Face successor on the 4-valent map; the face lies to the right.
    pub(crate) fn face_next(&self, x: usize) -> usize {
        let y = self.next[x];
        slot(y / 4, y % 4 + 1)
    }

    pub(crate) fn faces(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.next.len()];
        let mut faces = Vec::new();
        for s in 0..self.next.len() {
            if seen[s] {
                continue;
            }
            let mut face = Vec::new();
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                face.push(x);
                x = self.face_next(x);
            }
            faces.push(face);
        }
        faces
    }

    /// Connected pieces of the crossing graph: per crossing, a piece index.
    pub(crate) fn pieces(&self) -> Vec<usize> {
        let n = self.crossing_count();
        let mut uf = UnionFind::new(n);
        for (x, &y) in self.next.iter().enumerate() {
            uf.union(x / 4, y / 4);
        }
        (0..n).map(|c| uf.find(c)).collect()
    }

    /// Every connected piece with crossings has V - E + F = 2.
    pub fn is_spherical(&self) -> bool {
        let pieces = self.pieces();
        let roots: BTreeSet<usize> = pieces.iter().copied().collect();
        let faces = self.faces();
        roots.iter().all(|&r| {
            let v = pieces.iter().filter(|&&p| p == r).count() as i64;
            let f = faces.iter().filter(|face| pieces[face[0] / 4] == r).count() as i64;
            v - 2 * v + f == 2
        })
    }

    /// All crossings switched.
    pub fn switched(&self) -> LinkDiagram {
        let mut d = self.clone();
        for o in &mut d.over {
            *o = 1 - *o;
        }
        d
    }

    /// Reflection of the sphere: counterclockwise order reversed.
    pub fn mirrored(&self) -> LinkDiagram {
        let n = self.crossing_count();
        let m = |x: usize| slot(x / 4, 4 - x % 4);
        let mut d = self.clone();
        for c in 0..n {
            for p in 0..2 {
                d.entry[c][p] = m(slot(c, self.entry[c][p])) % 4;
            }
        }
        for x in 0..4 * n {
            d.next[m(x)] = m(self.next[x]);
            d.component[m(x)] = self.component[x];
        }
        d
    }

    /// Orientation of component `k` reversed.
    pub fn reversed_component(&self, k: usize) -> LinkDiagram {
        let mut d = self.clone();
        for c in 0..self.crossing_count() {
            for p in 0..2 {
                if self.component[slot(c, p)] == k {
                    d.entry[c][p] = (self.entry[c][p] + 2) % 4;
                }
            }
        }
        d
    }

    /// Cyclic sequences of visits per component, starting from the lowest
    /// entry slot.
    pub fn walks(&self) -> Vec<Vec<Visit>> {
        let mut walks = vec![Vec::new(); self.components];
        let mut seen = vec![false; self.next.len()];
        for x in 0..self.next.len() {
            if self.is_exit(x) || seen[x] {
                continue;
            }
            let k = self.component[x];
            let mut y = x;
            while !seen[y] {
                seen[y] = true;
                walks[k].push(Visit {
                    crossing: y / 4,
                    slot: y % 4,
                });
                y = self.next[opposite(y)];
            }
        }
        walks
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn v(crossing: usize, slot: usize) -> Visit {
        Visit { crossing, slot }
    }

    /// One-crossing kink: in at 0, out at 2, back in at 1, out at 3.
    pub(crate) fn kink(over: u8) -> LinkDiagram {
        LinkDiagram::from_walks(vec![over], &[vec![v(0, 0), v(0, 1)]]).unwrap()
    }

    /// Standard 3-crossing diagram with alternating crossings. Each
    /// crossing is visited first through parity 0 and then parity 1.
    pub(crate) fn trefoil(over: [u8; 3]) -> LinkDiagram {
        // the over/under pattern alternates iff over = [0, 1, 0] style
        // choices agree with traversal order
        let walk = vec![v(0, 0), v(1, 3), v(2, 0), v(0, 3), v(1, 0), v(2, 3)];
        LinkDiagram::from_walks(over.to_vec(), &[walk]).unwrap()
    }

    /// Two circles crossing twice.
    pub(crate) fn two_crossing_link(over: [u8; 2]) -> LinkDiagram {
        let a = vec![v(0, 0), v(1, 0)];
        let b = vec![v(1, 1), v(0, 3)];
        LinkDiagram::from_walks(over.to_vec(), &[a, b]).unwrap()
    }

    #[test]
    fn kink_is_spherical() {
        assert!(kink(0).is_spherical());
        assert_eq!(kink(0).faces().len(), 3);
    }

    #[test]
    fn trefoil_builds() {
        let t = trefoil([0, 0, 0]);
        assert_eq!(t.crossing_count(), 3);
        assert_eq!(t.faces().len(), 5);
    }

    #[test]
    fn two_crossing_link_builds() {
        let h = two_crossing_link([0, 0]);
        assert_eq!(h.component_count(), 2);
        assert_eq!(h.faces().len(), 4);
    }

    #[test]
    fn torus_walk_is_rejected() {
        // word 0101 cannot close up on the sphere
        let walk = vec![v(0, 0), v(1, 0), v(0, 1), v(1, 1)];
        assert!(LinkDiagram::from_walks(vec![0, 0], &[walk]).is_err());
    }

    #[test]
    fn walks_round_trip() {
        let t = trefoil([0, 1, 0]);
        let again = LinkDiagram::from_walks(t.over.clone(), &t.walks()).unwrap();
        assert_eq!(again, t);
    }

    #[test]
    fn mirror_and_reverse_are_involutions() {
        let t = trefoil([0, 1, 0]);
        assert_eq!(t.mirrored().mirrored(), t);
        assert_eq!(t.reversed_component(0).reversed_component(0), t);
        assert!(t.mirrored().check().is_ok());
        assert!(t.reversed_component(0).check().is_ok());
    }
}
