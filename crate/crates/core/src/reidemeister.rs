//! Reidemeister moves on [`LinkDiagram`]s, used to test invariance.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::link::{opposite, slot, LinkDiagram};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Move {
    R1Add,
    R1Remove,
    R2Add,
    R2Remove,
    R3,
}

impl LinkDiagram {
    fn push_crossing(&mut self, over: u8, entry: [usize; 2], component: usize) -> usize {
        let c = self.over.len();
        self.over.push(over);
        self.entry.push(entry);
        self.next.extend([usize::MAX; 4]);
        self.component.extend([component; 4]);
        c
    }

    fn join(&mut self, x: usize, y: usize) {
        self.next[x] = y;
        self.next[y] = x;
    }

    /// Orientation-respecting pair (from, to) of the arc through slot `x`.
    fn directed(&self, x: usize) -> (usize, usize) {
        let y = self.next[x];
        if self.is_exit(x) {
            (x, y)
        } else {
            (y, x)
        }
    }

    /// Adds a kink on the arc through slot `x`, or on free loop `k` when
    /// `x` is `None`. The kink's loop occupies the corner after slot 2 or
    /// before it, depending on `left`.
    pub fn r1_add(&mut self, x: Option<usize>, free: usize, left: bool, over: u8) {
        let back = if left { 3 } else { 1 };
        let out_slot = 4 - back;
        match x {
            Some(x) => {
                let (from, to) = self.directed(x);
                let c = self.push_crossing(over, [0, back], self.component[from]);
                self.join(from, slot(c, 0));
                self.join(slot(c, 2), slot(c, back));
                self.join(slot(c, out_slot), to);
            }
            None => {
                let k = self.free_loops.remove(free);
                let c = self.push_crossing(over, [0, back], k);
                self.join(slot(c, 2), slot(c, back));
                self.join(slot(c, out_slot), slot(c, 0));
            }
        }
    }

    /// Deletes `crossings`, letting every strand run straight through
    /// them. Components left without crossings become free loops.
    fn remove_crossings(&mut self, crossings: &[usize]) {
        let n = self.crossing_count();
        let gone = |x: usize| crossings.contains(&(x / 4));
        let mut relink = Vec::new();
        for x in 0..4 * n {
            if gone(x) || !gone(self.next[x]) {
                continue;
            }
            let mut y = self.next[x];
            while gone(y) {
                y = self.next[opposite(y)];
            }
            relink.push((x, y));
        }
        for (x, y) in relink {
            self.next[x] = y;
        }
        let keep: Vec<usize> = (0..n).filter(|c| !crossings.contains(c)).collect();
        let mut new_index = vec![usize::MAX; n];
        for (i, &c) in keep.iter().enumerate() {
            new_index[c] = i;
        }
        let map = |x: usize| slot(new_index[x / 4], x % 4);
        let mut next = vec![0; 4 * keep.len()];
        let mut component = vec![0; 4 * keep.len()];
        for &c in &keep {
            for s in 0..4 {
                let x = slot(c, s);
                next[map(x)] = map(self.next[x]);
                component[map(x)] = self.component[x];
            }
        }
        let lost: Vec<usize> = (0..self.components)
            .filter(|k| !self.free_loops.contains(k) && !component.contains(k))
            .collect();
        self.free_loops.extend(lost);
        self.free_loops.sort_unstable();
        self.over = keep.iter().map(|&c| self.over[c]).collect();
        self.entry = keep.iter().map(|&c| self.entry[c]).collect();
        self.next = next;
        self.component = component;
    }

    /// Crossings that are the vertex of a monogon.
    pub fn r1_remove_candidates(&self) -> Vec<usize> {
        (0..self.crossing_count())
            .filter(|&c| {
                (0..4).any(|s| self.next[slot(c, s)] / 4 == c && self.next[slot(c, s)] != opposite(slot(c, s)))
            })
            .collect()
    }

    pub fn r1_remove(&mut self, c: usize) {
        self.remove_crossings(&[c]);
    }

    /// Bigon faces whose two crossings share an over strand: pairs of
    /// crossings that an inverse second move can delete.
    pub fn r2_remove_candidates(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for face in self.faces() {
            if face.len() != 2 {
                continue;
            }
            let (d1, d2) = (face[0], face[1]);
            let (k1, k2) = (d1 / 4, d2 / 4);
            if k1 == k2 {
                continue;
            }
            // strand of the side leaving k1 through d1 arrives at k2 through next[d1]
            let t = self.next[d1];
            let p1 = (d1 % 2) as u8;
            let p2 = (t % 2) as u8;
            let top = self.over[k1] == p1 && self.over[k2] == p2;
            let bottom = self.over[k1] != p1 && self.over[k2] != p2;
            if top || bottom {
                out.push((k1.min(k2), k1.max(k2)));
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn r2_remove(&mut self, k1: usize, k2: usize) {
        self.remove_crossings(&[k1, k2]);
    }

    /// Pairs of distinct arcs on a common face, given by the face-walk
    /// darts at their starts.
    pub fn r2_add_candidates(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for face in self.faces() {
            for (i, &p) in face.iter().enumerate() {
                for &q in &face[i + 1..] {
                    let same_arc = q == p || q == self.next[p];
                    if !same_arc {
                        out.push((p, q));
                    }
                }
            }
        }
        out
    }

    /// Pushes a finger of the arc starting at face dart `px` across the
    /// face and over (or under) the arc starting at face dart `py`.
    pub fn r2_add(&mut self, py: usize, px: usize, x_over: bool) {
        let (qy, qx) = (self.next[py], self.next[px]);
        let y_forward = self.is_exit(py);
        let x_forward = self.is_exit(px);
        let over = u8::from(x_over);
        let y_entry = if y_forward { 0 } else { 2 };
        let (e1, e2) = if x_forward { (1, 3) } else { (3, 1) };
        let k1 = self.push_crossing(over, [y_entry, e1], self.component[py]);
        let k2 = self.push_crossing(over, [y_entry, e2], self.component[py]);
        for s in [1, 3] {
            self.component[slot(k1, s)] = self.component[px];
            self.component[slot(k2, s)] = self.component[px];
        }
        self.join(py, slot(k2, 0));
        self.join(slot(k2, 2), slot(k1, 0));
        self.join(slot(k1, 2), qy);
        self.join(px, slot(k1, 1));
        self.join(slot(k1, 3), slot(k2, 3));
        self.join(slot(k2, 1), qx);
    }

    /// Triangle faces with three distinct crossings and a strand that is
    /// over at both of its crossings or under at both.
    pub fn r3_candidates(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for face in self.faces() {
            if face.len() != 3 {
                continue;
            }
            let cs: Vec<usize> = face.iter().map(|d| d / 4).collect();
            if cs[0] == cs[1] || cs[1] == cs[2] || cs[0] == cs[2] {
                continue;
            }
            let movable = (0..3).any(|i| {
                let d = face[i];
                let t = self.next[d];
                let (a, pa) = (d / 4, (d % 2) as u8);
                let (b, pb) = (t / 4, (t % 2) as u8);
                (self.over[a] == pa && self.over[b] == pb) || (self.over[a] != pa && self.over[b] != pb)
            });
            if movable {
                out.push([face[0], face[1], face[2]]);
            }
        }
        out
    }

    /// Third move across the triangle face given by its three darts: every
    /// side's strand is slid past the opposite crossing.
    pub fn r3(&mut self, face: [usize; 3]) {
        // side i runs from face[i] (inner end at P) to next[face[i]] (at Q);
        // the outer end beyond P moves to Q's inner slot and vice versa
        let mut moved: Vec<(usize, usize)> = Vec::new();
        for &p in &face {
            let q = self.next[p];
            moved.push((opposite(p), q));
            moved.push((opposite(q), p));
        }
        let target = |x: usize| moved.iter().find(|m| m.0 == x).map_or(x, |m| m.1);
        let rewired: Vec<(usize, usize)> = moved.iter().map(|&(x, to)| (to, target(self.next[x]))).collect();
        for (x, y) in rewired {
            self.join(x, y);
        }
        for pair in moved.chunks(2) {
            self.join(pair[0].0, pair[1].0);
        }
    }

    pub fn candidates(&self, m: Move) -> usize {
        match m {
            Move::R1Add => 4 * self.crossing_count() + self.free_loop_count(),
            Move::R1Remove => self.r1_remove_candidates().len(),
            Move::R2Add => self.r2_add_candidates().len(),
            Move::R2Remove => self.r2_remove_candidates().len(),
            Move::R3 => self.r3_candidates().len(),
        }
    }

    /// Applies a random applicable move, keeping at most `max_crossings`.
    /// Returns the move applied.
    pub fn random_move<R: Rng>(&mut self, rng: &mut R, max_crossings: usize) -> Option<Move> {
        let mut moves = vec![Move::R1Remove, Move::R2Remove, Move::R3];
        if self.crossing_count() < max_crossings {
            moves.push(Move::R1Add);
        }
        if self.crossing_count() + 2 <= max_crossings {
            moves.push(Move::R2Add);
        }
        moves.retain(|&m| self.candidates(m) > 0);
        let &m = moves.choose(rng)?;
        match m {
            Move::R1Add => {
                let n = 4 * self.crossing_count();
                let k = rng.gen_range(0..n + self.free_loop_count());
                let (x, free) = if k < n { (Some(k), 0) } else { (None, k - n) };
                self.r1_add(x, free, rng.gen(), rng.gen_range(0..2));
            }
            Move::R1Remove => {
                let c = *self.r1_remove_candidates().choose(rng).unwrap();
                self.r1_remove(c);
            }
            Move::R2Add => {
                let &(a, b) = self.r2_add_candidates().choose(rng).unwrap();
                let (py, px) = if rng.gen() { (a, b) } else { (b, a) };
                self.r2_add(py, px, rng.gen());
            }
            Move::R2Remove => {
                let &(a, b) = self.r2_remove_candidates().choose(rng).unwrap();
                self.r2_remove(a, b);
            }
            Move::R3 => {
                let &f = self.r3_candidates().choose(rng).unwrap();
                self.r3(f);
            }
        }
        Some(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{linking_number, normalized_bracket, tricolor_count, writhe};
    use crate::link::tests::{kink, trefoil, two_crossing_link};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn kink_on_free_loop_then_removed() {
        for left in [false, true] {
            let mut d = LinkDiagram::unknot();
            d.r1_add(None, 0, left, 0);
            assert!(d.check().is_ok());
            assert_eq!(d.crossing_count(), 1);
            assert_eq!(d.r1_remove_candidates(), vec![0]);
            d.r1_remove(0);
            assert_eq!(d, LinkDiagram::unknot());
        }
    }

    #[test]
    fn every_single_move_keeps_a_valid_diagram() {
        let bases = [trefoil([0, 1, 0]), two_crossing_link([0, 0]), kink(1)];
        for base in &bases {
            for x in 0..4 * base.crossing_count() {
                for left in [false, true] {
                    let mut d = base.clone();
                    d.r1_add(Some(x), 0, left, 1);
                    d.check().unwrap();
                    assert_eq!(normalized_bracket(&d), normalized_bracket(base));
                }
            }
            for (a, b) in base.r2_add_candidates() {
                for (py, px) in [(a, b), (b, a)] {
                    for top in [false, true] {
                        let mut d = base.clone();
                        d.r2_add(py, px, top);
                        d.check().unwrap();
                        assert_eq!(normalized_bracket(&d), normalized_bracket(base));
                        assert!(!d.r2_remove_candidates().is_empty());
                    }
                }
            }
        }
    }

    #[test]
    fn r3_after_finger_move() {
        // a finger pushed across a crossing's corner creates a triangle
        let base = trefoil([0, 1, 0]);
        let mut tried = 0;
        for (a, b) in base.r2_add_candidates() {
            let mut d = base.clone();
            d.r2_add(a, b, true);
            for f in d.r3_candidates() {
                let mut e = d.clone();
                e.r3(f);
                e.check().unwrap();
                assert_eq!(normalized_bracket(&e), normalized_bracket(&base));
                assert_eq!(tricolor_count(&e), tricolor_count(&base));
                tried += 1;
            }
        }
        assert!(tried > 0);
    }

    #[test]
    fn random_walks_preserve_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let base = two_crossing_link([1, 1]);
        let (f, lk, t) = (
            normalized_bracket(&base),
            linking_number(&base).unwrap(),
            tricolor_count(&base),
        );
        let mut d = base.clone();
        for _ in 0..200 {
            d.random_move(&mut rng, 7).unwrap();
            d.check().unwrap();
            assert_eq!(normalized_bracket(&d), f);
            assert_eq!(linking_number(&d).unwrap(), lk);
            assert_eq!(tricolor_count(&d), t);
        }
        let _ = writhe(&d);
    }
}
