//! Diagram invariants and the classification of links with at most three
//! crossings.
//!
//! Bracket convention: at a crossing whose over strand occupies slots `o`
//! and `o + 2`, the A-smoothing joins slot `o` to `o - 1` and `o + 2` to
//! `o + 1`, opening a channel between the two regions swept when the over
//! strand turns counterclockwise. Loops count `-A^2 - A^-2` each beyond the
//! first.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::UnionFind;
use crate::link::{slot, LinkDiagram, LinkError};
use crate::poly::LaurentPoly;

pub fn writhe(d: &LinkDiagram) -> i32 {
    (0..d.crossing_count()).map(|c| d.sign(c)).sum()
}

pub fn linking_number(d: &LinkDiagram) -> Result<i32, LinkError> {
    if d.component_count() != 2 {
        return Err(LinkError::ComponentCount {
            expected: 2,
            found: d.component_count(),
        });
    }
    let mixed: i32 = (0..d.crossing_count())
        .filter(|&c| {
            let [a, b] = d.crossing_components(c);
            a != b
        })
        .map(|c| d.sign(c))
        .sum();
    Ok(mixed / 2)
}

fn loops_in_state(d: &LinkDiagram, state: u64) -> usize {
    let n = d.crossing_count();
    let mut uf = UnionFind::new(4 * n);
    for (x, &y) in d.next.iter().enumerate() {
        uf.union(x, y);
    }
    for c in 0..n {
        let o = d.over_parity(c) as usize;
        if state >> c & 1 == 0 {
            uf.union(slot(c, o), slot(c, o + 3));
            uf.union(slot(c, o + 2), slot(c, o + 1));
        } else {
            uf.union(slot(c, o), slot(c, o + 1));
            uf.union(slot(c, o + 2), slot(c, o + 3));
        }
    }
    uf.count() + d.free_loop_count()
}

/// State sum over all `2^n` smoothings. Bit `c` of a state selects the
/// B-smoothing at crossing `c`.
pub fn kauffman_bracket(d: &LinkDiagram) -> LaurentPoly {
    let n = d.crossing_count();
    assert!(n < 63, "state sum over {n} crossings");
    // (a - b, loops) -> number of states
    let mut tally: BTreeMap<(i32, usize), i64> = BTreeMap::new();
    for state in 0..1u64 << n {
        let b = state.count_ones() as i32;
        *tally.entry((n as i32 - 2 * b, loops_in_state(d, state))).or_default() += 1;
    }
    let delta = LaurentPoly::delta();
    let mut out = LaurentPoly::zero();
    for ((exp, loops), count) in tally {
        out = out + delta.pow(loops as u32 - 1).shift(exp) * LaurentPoly::monomial(count, 0);
    }
    out
}

/// `(-A^3)^-w <D>`, invariant under all three Reidemeister moves.
pub fn normalized_bracket(d: &LinkDiagram) -> LaurentPoly {
    let w = writhe(d);
    let sign = if w % 2 == 0 { 1 } else { -1 };
    kauffman_bracket(d).shift(-3 * w) * LaurentPoly::monomial(sign, 0)
}

/// Rank of an integer matrix over GF(3).
fn rank_mod3(mut rows: Vec<Vec<u8>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        // scale so the pivot is 1 (2 is its own inverse mod 3)
        let inv = rows[rank][col];
        for x in &mut rows[rank] {
            *x = *x * inv % 3;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let f = rows[r][col];
                for k in 0..cols {
                    rows[r][k] = (rows[r][k] + 3 * 3 - f * rows[rank][k]) % 3;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Fox arcs: runs of a strand from one undercrossing to the next. Returns
/// the arc index of every slot and the number of arcs.
fn fox_arcs(d: &LinkDiagram) -> (Vec<usize>, usize) {
    let n = d.crossing_count();
    let mut uf = UnionFind::new(4 * n);
    for (x, &y) in d.next.iter().enumerate() {
        uf.union(x, y);
    }
    for c in 0..n {
        let o = d.over_parity(c) as usize;
        uf.union(slot(c, o), slot(c, o + 2));
    }
    let mut ids = BTreeMap::new();
    let arcs: Vec<usize> = (0..4 * n)
        .map(|x| {
            let r = uf.find(x);
            let k = ids.len();
            *ids.entry(r).or_insert(k)
        })
        .collect();
    (arcs, ids.len())
}

/// Number of Fox 3-colorings: `3^(arcs - rank)` of the crossing relations
/// `2 over - under - under = 0 (mod 3)`.
pub fn tricolor_count(d: &LinkDiagram) -> u64 {
    let n = d.crossing_count();
    let (arc, m) = fox_arcs(d);
    let rows: Vec<Vec<u8>> = (0..n)
        .map(|c| {
            let o = d.over_parity(c) as usize;
            let mut row = vec![0u8; m];
            row[arc[slot(c, o)]] = (row[arc[slot(c, o)]] + 2) % 3;
            for s in [o + 1, o + 3] {
                let a = arc[slot(c, s)];
                row[a] = (row[a] + 2) % 3;
            }
            row
        })
        .collect();
    let free = m - rank_mod3(rows) + d.free_loop_count();
    3u64.pow(free as u32)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LinkClass {
    Unknot,
    Unlink(usize),
    Hopf(i32),
    Trefoil(i32),
    Unclassified,
}

impl LinkClass {
    /// Hopf link or trefoil.
    pub fn is_obstruction(&self) -> bool {
        matches!(self, LinkClass::Hopf(_) | LinkClass::Trefoil(_))
    }

    /// Class with orientation and chirality data dropped.
    pub fn unsigned(&self) -> LinkClass {
        match self {
            LinkClass::Hopf(_) => LinkClass::Hopf(0),
            LinkClass::Trefoil(_) => LinkClass::Trefoil(0),
            other => *other,
        }
    }
}

impl fmt::Display for LinkClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinkClass::Unknot => write!(f, "unknot"),
            LinkClass::Unlink(k) => write!(f, "unlink({k})"),
            LinkClass::Hopf(0) => write!(f, "hopf"),
            LinkClass::Hopf(s) => write!(f, "hopf({s:+})"),
            LinkClass::Trefoil(0) => write!(f, "trefoil"),
            LinkClass::Trefoil(c) => write!(f, "trefoil({})", if *c > 0 { "right" } else { "left" }),
            LinkClass::Unclassified => write!(f, "unclassified"),
        }
    }
}

/// Normalized bracket of the trefoil whose standard diagram has three
/// positive crossings.
pub fn right_trefoil_bracket() -> LaurentPoly {
    LaurentPoly::from_terms([(-4, 1), (-12, 1), (-16, -1)])
}

/// Classifies diagrams with at most three crossings. At that size the
/// unlinks, the Hopf links and the two trefoils are the only links, and
/// the normalized bracket and linking number separate them.
pub fn classify_small_link(d: &LinkDiagram) -> LinkClass {
    if d.crossing_count() > 3 {
        return LinkClass::Unclassified;
    }
    let k = d.component_count();
    let f = normalized_bracket(d);
    if k >= 1 && f == LaurentPoly::delta().pow(k as u32 - 1) {
        return if k == 1 {
            LinkClass::Unknot
        } else {
            LinkClass::Unlink(k)
        };
    }
    if k == 2 {
        if let Ok(lk) = linking_number(d) {
            if lk.abs() == 1 {
                return LinkClass::Hopf(lk);
            }
        }
    }
    if k == 1 {
        if f == right_trefoil_bracket() {
            return LinkClass::Trefoil(1);
        }
        if f == right_trefoil_bracket().invert_variable() {
            return LinkClass::Trefoil(-1);
        }
    }
    LinkClass::Unclassified
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::link::tests::{kink, trefoil, two_crossing_link};

    fn brute_force_colorings(d: &LinkDiagram) -> u64 {
        let (arc, m) = fox_arcs(d);
        let mut count = 0;
        for code in 0..3u64.pow(m as u32) {
            let color = |a: usize| (code / 3u64.pow(a as u32) % 3) as i64;
            let ok = (0..d.crossing_count()).all(|c| {
                let o = d.over_parity(c) as usize;
                (2 * color(arc[slot(c, o)]) - color(arc[slot(c, o + 1)]) - color(arc[slot(c, o + 3)])).rem_euclid(3)
                    == 0
            });
            count += u64::from(ok);
        }
        count * 3u64.pow(d.free_loop_count() as u32)
    }

    #[test]
    fn unknot_values() {
        let u = LinkDiagram::unknot();
        assert_eq!(kauffman_bracket(&u), LaurentPoly::one());
        assert_eq!(writhe(&u), 0);
        assert_eq!(tricolor_count(&u), 3);
        assert_eq!(classify_small_link(&u), LinkClass::Unknot);
    }

    #[test]
    fn kink_bracket() {
        // two states: one loop and two loops
        for over in [0, 1] {
            let k = kink(over);
            let b = kauffman_bracket(&k);
            let w = writhe(&k);
            assert_eq!(w.abs(), 1);
            assert_eq!(b, LaurentPoly::monomial(-1, 3 * w));
            assert_eq!(normalized_bracket(&k), LaurentPoly::one());
            assert_eq!(tricolor_count(&k), 3);
        }
    }

    #[test]
    fn trefoil_oracles() {
        let mut saw = [false; 2];
        for bits in 0..8u8 {
            let over = [bits & 1, bits >> 1 & 1, bits >> 2 & 1];
            let t = trefoil(over);
            let class = classify_small_link(&t);
            assert_eq!(tricolor_count(&t), brute_force_colorings(&t));
            match class {
                LinkClass::Trefoil(c) => {
                    assert_eq!(writhe(&t), 3 * c);
                    assert_eq!(tricolor_count(&t), 9);
                    saw[usize::from(c > 0)] = true;
                }
                LinkClass::Unknot => assert_eq!(tricolor_count(&t), 3),
                other => panic!("unexpected {other:?}"),
            }
        }
        assert_eq!(saw, [true, true]);
    }

    #[test]
    fn linking_numbers() {
        let mut values = Vec::new();
        for bits in 0..4u8 {
            let h = two_crossing_link([bits & 1, bits >> 1]);
            let lk = linking_number(&h).unwrap();
            values.push(lk);
            match classify_small_link(&h) {
                LinkClass::Hopf(s) => assert_eq!(s, lk),
                LinkClass::Unlink(2) => assert_eq!(lk, 0),
                other => panic!("unexpected {other:?}"),
            }
        }
        values.sort();
        assert_eq!(values, vec![-1, 0, 0, 1]);
        assert!(matches!(
            linking_number(&kink(0)),
            Err(LinkError::ComponentCount { expected: 2, found: 1 })
        ));
        assert_eq!(linking_number(&LinkDiagram::unlink(2)), Ok(0));
    }

    #[test]
    fn reversing_a_component_keeps_the_unsigned_class() {
        for bits in 0..4u8 {
            let h = two_crossing_link([bits & 1, bits >> 1]);
            let a = classify_small_link(&h);
            let b = classify_small_link(&h.reversed_component(1));
            assert_eq!(a.unsigned(), b.unsigned());
        }
    }

    #[test]
    fn mirror_switch_keeps_class() {
        for bits in 0..8u8 {
            let t = trefoil([bits & 1, bits >> 1 & 1, bits >> 2 & 1]);
            assert_eq!(
                classify_small_link(&t).unsigned(),
                classify_small_link(&t.mirrored().switched()).unsigned()
            );
            assert_eq!(
                normalized_bracket(&t.mirrored()),
                normalized_bracket(&t).invert_variable()
            );
        }
    }

    #[test]
    fn rank_mod3_small() {
        assert_eq!(rank_mod3(vec![vec![1, 2], vec![2, 1]]), 1);
        assert_eq!(rank_mod3(vec![vec![1, 1], vec![1, 2]]), 2);
    }
}
