//! Complete resolutions of a closed braid diagram and the circles they produce.
//!
//! The diagram is modelled by vertical segments `(position, gap)`: strand
//! position `position` (0-based here) between letters `gap` and `gap + 1`.
//! Crossing `i` sits between gaps `i` and `i + 1`; the closure arc at each
//! position joins `(j, c)` to `(j, 0)`. A circle is non-trivial in the annulus
//! iff it runs through an odd number of closure arcs.

use serde::{Deserialize, Serialize};

use crate::braid::{BasepointAddress, BraidWord};

/// A vertex of the cube: bit `i` is the smoothing chosen at crossing `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Resolution(pub u64);

impl Resolution {
    pub fn weight(self) -> u32 {
        self.0.count_ones()
    }

    pub fn bit(self, crossing: usize) -> bool {
        self.0 >> crossing & 1 == 1
    }

    pub fn with_bit(self, crossing: usize) -> Self {
        Resolution(self.0 | 1 << crossing)
    }
}

/// 0 on positive crossings, 1 on negative ones: the resolution whose closure
/// is the braidlike n-component unlink.
pub fn oriented_resolution(braid: &BraidWord) -> Resolution {
    Resolution(
        braid
            .letters()
            .iter()
            .enumerate()
            .filter(|(_, &g)| g < 0)
            .fold(0, |acc, (i, _)| acc | 1 << i),
    )
}

/// Whether crossing `i` is smoothed vertically (the braidlike smoothing) in `res`.
pub fn is_identity_smoothing(braid: &BraidWord, res: Resolution, crossing: usize) -> bool {
    (braid.letters()[crossing] > 0) != res.bit(crossing)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircleSet {
    strands: usize,
    circle_of_segment: Vec<usize>,
    nontrivial: Vec<bool>,
}

impl CircleSet {
    pub fn circle_count(&self) -> usize {
        self.nontrivial.len()
    }

    pub fn is_nontrivial(&self, circle: usize) -> bool {
        self.nontrivial[circle]
    }

    pub fn nontrivial_count(&self) -> usize {
        self.nontrivial.iter().filter(|&&b| b).count()
    }

    /// Bitmask of non-trivial circles.
    pub fn nontrivial_mask(&self) -> u64 {
        self.nontrivial
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .fold(0, |acc, (i, _)| acc | 1 << i)
    }

    /// Circle through segment `(position, gap)`, position 0-based.
    pub fn circle_at(&self, position: usize, gap: usize) -> usize {
        self.circle_of_segment[gap * self.strands + position]
    }

    pub fn circle_of_basepoint(&self, p: BasepointAddress) -> usize {
        self.circle_at(p.position - 1, p.gap)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(len: usize) -> Self {
        Self {
            parent: (0..len).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Circle decomposition of the resolved closed diagram.
///
/// Circles are numbered in order of their first segment under the gap-major
/// segment ordering, so the numbering does not depend on union order.
pub fn circles(braid: &BraidWord, res: Resolution) -> CircleSet {
    let n = braid.strands();
    let c = braid.crossings();
    let seg = |j: usize, t: usize| t * n + j;
    let mut uf = UnionFind::new(n * (c + 1));
    for (i, &g) in braid.letters().iter().enumerate() {
        let a = g.unsigned_abs() as usize - 1;
        for j in 0..n {
            if j != a && j != a + 1 {
                uf.union(seg(j, i), seg(j, i + 1));
            }
        }
        if is_identity_smoothing(braid, res, i) {
            uf.union(seg(a, i), seg(a, i + 1));
            uf.union(seg(a + 1, i), seg(a + 1, i + 1));
        } else {
            uf.union(seg(a, i), seg(a + 1, i));
            uf.union(seg(a, i + 1), seg(a + 1, i + 1));
        }
    }
    for j in 0..n {
        uf.union(seg(j, c), seg(j, 0));
    }

    let len = n * (c + 1);
    let mut index_of_root = vec![usize::MAX; len];
    let mut count = 0;
    let circle_of_segment: Vec<usize> = (0..len)
        .map(|s| {
            let r = uf.find(s);
            if index_of_root[r] == usize::MAX {
                index_of_root[r] = count;
                count += 1;
            }
            index_of_root[r]
        })
        .collect();
    let mut nontrivial = vec![false; count];
    for j in 0..n {
        let k = circle_of_segment[seg(j, 0)];
        nontrivial[k] = !nontrivial[k];
    }
    CircleSet {
        strands: n,
        circle_of_segment,
        nontrivial,
    }
}

/// A canonical generator: a resolution with a v₊/v₋ labelling of its circles.
/// Bit `i` of `labels` set means circle `i` carries v₊.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Generator {
    pub res: Resolution,
    pub labels: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Gradings {
    pub h: i64,
    pub q: i64,
    pub k: i64,
}

/// k-grading of a labelling: non-trivial v₊ circles minus non-trivial v₋ circles.
pub fn k_grading(circles: &CircleSet, labels: u64) -> i64 {
    let nt = circles.nontrivial_mask();
    let plus = (labels & nt).count_ones() as i64;
    plus - (circles.nontrivial_count() as i64 - plus)
}

/// Gradings of a generator whose resolution has the circle set `circles`.
pub fn gradings_with(braid: &BraidWord, circles: &CircleSet, g: &Generator) -> Gradings {
    let weight = i64::from(g.res.weight());
    let n_pos = braid.positive_count() as i64;
    let n_neg = braid.negative_count() as i64;
    let plus = i64::from(g.labels.count_ones());
    let minus = circles.circle_count() as i64 - plus;
    Gradings {
        h: weight - n_neg,
        q: plus - minus + weight + n_pos - 2 * n_neg,
        k: k_grading(circles, g.labels),
    }
}

pub fn gradings(braid: &BraidWord, g: &Generator) -> Gradings {
    gradings_with(braid, &circles(braid, g.res), g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{flype_pair, parse_braid, self_linking};

    #[test]
    fn oriented_masks() {
        let b = parse_braid("1 -2", Some(3)).unwrap();
        assert_eq!(oriented_resolution(&b), Resolution(0b10));
        let pos = parse_braid("1 2 1 2", Some(3)).unwrap();
        assert_eq!(oriented_resolution(&pos), Resolution(0));
        let a00 = flype_pair(0, 0).0;
        let r = oriented_resolution(&a00);
        assert_eq!(r.weight(), 4);
        // negatives at letters 1, 2, 6, 7
        assert_eq!(r.0, 1 << 1 | 1 << 2 | 1 << 6 | 1 << 7);
    }

    #[test]
    fn two_strand_circles() {
        let s = parse_braid("1", Some(2)).unwrap();
        let id = circles(&s, Resolution(0));
        assert_eq!(id.circle_count(), 2);
        assert!(id.is_nontrivial(0) && id.is_nontrivial(1));

        let capcup = circles(&s, Resolution(1));
        assert_eq!(capcup.circle_count(), 1);
        assert!(!capcup.is_nontrivial(0));
    }

    #[test]
    fn identity_braid_circles() {
        let cs = circles(&BraidWord::identity(3), Resolution(0));
        assert_eq!(cs.circle_count(), 3);
        assert_eq!(cs.nontrivial_count(), 3);
    }

    #[test]
    fn oriented_resolution_is_braidlike() {
        for word in ["1 -2 1 1 -2", "-1 -1 -1", "2 1 -3 2 -1 3", ""] {
            let b = parse_braid(word, Some(4)).unwrap();
            let cs = circles(&b, oriented_resolution(&b));
            assert_eq!(cs.circle_count(), 4, "{word}");
            assert_eq!(cs.nontrivial_count(), 4, "{word}");
        }
    }

    #[test]
    fn psi_gradings() {
        for word in ["1 -2 1 1 -2", "-1 -1 -1", "2 1 -3 2 -1 3"] {
            let b = parse_braid(word, Some(4)).unwrap();
            let psi = Generator {
                res: oriented_resolution(&b),
                labels: 0,
            };
            let g = gradings(&b, &psi);
            assert_eq!(
                g,
                Gradings {
                    h: 0,
                    q: self_linking(&b),
                    k: -4
                }
            );
        }
        let all_plus = Generator {
            res: Resolution(0),
            labels: 0b111,
        };
        assert_eq!(gradings(&BraidWord::identity(3), &all_plus).k, 3);
    }

    #[test]
    fn negative_crossing_capcup_gradings() {
        let b = parse_braid("-1", Some(2)).unwrap();
        let g = Generator {
            res: Resolution(0),
            labels: 0,
        };
        assert_eq!(gradings(&b, &g), Gradings { h: -1, q: -3, k: 0 });
    }

    #[test]
    fn basepoint_closure_identification() {
        let b = parse_braid("1 -2 -1 2", Some(3)).unwrap();
        for bits in 0..16 {
            let cs = circles(&b, Resolution(bits));
            for j in 0..3 {
                assert_eq!(cs.circle_at(j, 0), cs.circle_at(j, 4));
            }
        }
    }

    #[test]
    fn k_parity_and_bounds() {
        let b = parse_braid("1 -2 3 -1 2 2 -3", Some(4)).unwrap();
        for bits in 0..(1u64 << b.crossings()) {
            let cs = circles(&b, Resolution(bits));
            assert_eq!(cs.nontrivial_count() % 2, 0, "nontrivial count has the parity of n");
            assert!(cs.nontrivial_count() <= 4);
            for labels in 0..(1u64 << cs.circle_count()) {
                let k = k_grading(&cs, labels);
                assert_eq!(k.rem_euclid(2), 0);
                assert!(k.abs() <= 4);
            }
        }
    }
}
