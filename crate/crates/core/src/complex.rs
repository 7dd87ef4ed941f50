//! Graded slices of the Khovanov complex of a braid closure over GF(2) and the
//! differential between them.
//!
//! Slices are built one homological degree at a time from the resolutions of
//! the matching weight, so the full cube is never materialised.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::braid::{BasepointAddress, BraidWord};
use crate::diagram::{circles, k_grading, CircleSet, Generator, Resolution};
use crate::f2linalg::{ChainF2, SparseMatrixF2};

/// Which complex: the full one, or one of the two reductions at a basepoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    Unreduced,
    /// `ker x_p`: generators with v₋ on the basepoint circle.
    ReducedSub(BasepointAddress),
    /// `coker x_p`, via representatives with v₊ on the basepoint circle.
    ReducedQuot(BasepointAddress),
}

impl Variant {
    pub fn basepoint(self) -> Option<BasepointAddress> {
        match self {
            Variant::Unreduced => None,
            Variant::ReducedSub(p) | Variant::ReducedQuot(p) => Some(p),
        }
    }

    /// Label forced on the basepoint circle (`true` = v₊).
    fn forced_label(self) -> Option<(BasepointAddress, bool)> {
        match self {
            Variant::Unreduced => None,
            Variant::ReducedSub(p) => Some((p, false)),
            Variant::ReducedQuot(p) => Some((p, true)),
        }
    }
}

/// Generators of fixed `(h, q)` with `k ≤ k_max`, ordered by
/// (resolution, labelling).
#[derive(Debug, Clone)]
pub struct GradedSlice {
    pub variant: Variant,
    pub h: i64,
    pub q: i64,
    /// `None` means no cutoff.
    pub k_max: Option<i64>,
    basis: Vec<Generator>,
    k: Vec<i64>,
    index: HashMap<Generator, usize>,
}

impl GradedSlice {
    fn from_parts(variant: Variant, h: i64, q: i64, k_max: Option<i64>, parts: Vec<(Generator, i64)>) -> Self {
        let index = parts.iter().enumerate().map(|(i, (g, _))| (*g, i)).collect();
        let (basis, k) = parts.into_iter().unzip();
        Self {
            variant,
            h,
            q,
            k_max,
            basis,
            k,
            index,
        }
    }

    pub fn basis(&self) -> &[Generator] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// k-grading of basis element `i`.
    pub fn k_of(&self, i: usize) -> i64 {
        self.k[i]
    }

    pub fn k_values(&self) -> &[i64] {
        &self.k
    }

    pub fn index_of(&self, g: &Generator) -> Option<usize> {
        self.index.get(g).copied()
    }

    /// Indices of basis elements with `k ≤ level`, ascending.
    pub fn indices_up_to(&self, level: i64) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.k[i] <= level).collect()
    }

    /// Indices of basis elements with `k == level`, ascending.
    pub fn indices_at(&self, level: i64) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.k[i] == level).collect()
    }

    /// The chain of the given generators; `None` if one is not in the basis.
    pub fn chain_of(&self, gens: &[Generator]) -> Option<ChainF2> {
        gens.iter()
            .map(|g| self.index_of(g))
            .collect::<Option<Vec<_>>>()
            .map(ChainF2::from_indices)
    }

    pub fn generators_of(&self, chain: &ChainF2) -> Vec<Generator> {
        chain.support().iter().map(|&i| self.basis[i]).collect()
    }

    /// Largest k over the support; `None` for the zero chain.
    pub fn k_of_chain(&self, chain: &ChainF2) -> Option<i64> {
        chain.support().iter().map(|&i| self.k[i]).max()
    }
}

/// Matrix of `d` from `source` to `target`; column `j` is `d(source[j])`.
#[derive(Debug, Clone)]
pub struct DifferentialMatrix {
    pub source: GradedSlice,
    pub target: GradedSlice,
    pub matrix: SparseMatrixF2,
}

/// How the circles change when one crossing switches from its 0- to its
/// 1-smoothing.
#[derive(Debug, Clone)]
enum Saddle {
    Merge { a: usize, b: usize, into: usize },
    Split { from: usize, x: usize, y: usize },
}

#[derive(Debug, Clone)]
struct Edge {
    target: Resolution,
    target_circles: CircleSet,
    /// Target circle of each untouched source circle (`usize::MAX` for local ones).
    carry: Vec<usize>,
    saddle: Saddle,
}

impl Edge {
    fn new(braid: &BraidWord, res: Resolution, cs: &CircleSet, crossing: usize) -> Self {
        let target = res.with_bit(crossing);
        let tcs = circles(braid, target);
        let a = braid.letters()[crossing].unsigned_abs() as usize - 1;
        let local = [
            (a, crossing),
            (a + 1, crossing),
            (a, crossing + 1),
            (a + 1, crossing + 1),
        ];
        let distinct = |set: &CircleSet| {
            let mut v: Vec<usize> = local.iter().map(|&(j, t)| set.circle_at(j, t)).collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        let src_local = distinct(cs);
        let tgt_local = distinct(&tcs);
        let saddle = match (src_local.as_slice(), tgt_local.as_slice()) {
            (&[a, b], &[into]) => Saddle::Merge { a, b, into },
            (&[from], &[x, y]) => Saddle::Split { from, x, y },
            _ => unreachable!("a saddle either merges two circles or splits one"),
        };
        let mut carry = vec![usize::MAX; cs.circle_count()];
        let n = braid.strands();
        for t in 0..=braid.crossings() {
            for j in 0..n {
                let c = cs.circle_at(j, t);
                if carry[c] == usize::MAX && !src_local.contains(&c) {
                    carry[c] = tcs.circle_at(j, t);
                }
            }
        }
        Edge {
            target,
            target_circles: tcs,
            carry,
            saddle,
        }
    }

    /// Target labellings of `d` applied to one source labelling along this edge.
    fn apply(&self, labels: u64, out: &mut Vec<u64>) {
        let mut base = 0u64;
        for (c, &t) in self.carry.iter().enumerate() {
            if t != usize::MAX && labels >> c & 1 == 1 {
                base |= 1 << t;
            }
        }
        match self.saddle {
            Saddle::Merge { a, b, into } => match (labels >> a & 1, labels >> b & 1) {
                (1, 1) => out.push(base | 1 << into),
                (0, 0) => {}
                _ => out.push(base),
            },
            Saddle::Split { from, x, y } => {
                if labels >> from & 1 == 1 {
                    out.push(base | 1 << x);
                    out.push(base | 1 << y);
                } else {
                    out.push(base);
                }
            }
        }
    }
}

#[cfg(feature = "parallel")]
fn map_ordered<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_ordered<T, R>(items: &[T], f: impl Fn(&T) -> R) -> Vec<R> {
    items.iter().map(f).collect()
}

/// Bit masks of size `r` drawn from the listed positions, ascending.
fn subsets(positions: &[usize], r: usize) -> Vec<u64> {
    let len = positions.len();
    if r > len {
        return Vec::new();
    }
    let mut out = Vec::new();
    if r == 0 {
        out.push(0);
        return out;
    }
    let mut sel: u128 = (1 << r) - 1;
    let limit: u128 = 1 << len;
    while sel < limit {
        let mut mask = 0u64;
        let mut s = sel;
        while s != 0 {
            mask |= 1 << positions[s.trailing_zeros() as usize];
            s &= s - 1;
        }
        out.push(mask);
        // Gosper's hack
        let c = sel & sel.wrapping_neg();
        let r2 = sel + c;
        sel = (((r2 ^ sel) >> 2) / c) | r2;
    }
    out
}

/// Resolutions of the given weight on `c` crossings, ascending.
pub fn resolutions_of_weight(c: usize, weight: usize) -> Vec<Resolution> {
    let all: Vec<usize> = (0..c).collect();
    let mut v = subsets(&all, weight);
    v.sort_unstable();
    v.into_iter().map(Resolution).collect()
}

/// The Khovanov complex of a closed braid (or one of its reductions).
#[derive(Debug, Clone)]
pub struct KhovanovComplex {
    braid: BraidWord,
    variant: Variant,
    n_pos: i64,
    n_neg: i64,
}

impl KhovanovComplex {
    /// # Panics
    /// If the braid has more than 64 crossings, or the basepoint is not on the
    /// diagram.
    pub fn new(braid: &BraidWord, variant: Variant) -> Self {
        assert!(braid.crossings() <= 64, "at most 64 crossings are supported");
        if let Some(p) = variant.basepoint() {
            assert!(
                p.position >= 1 && p.position <= braid.strands() && p.gap <= braid.crossings(),
                "basepoint {p} is not on the diagram"
            );
        }
        Self {
            braid: braid.clone(),
            variant,
            n_pos: braid.positive_count() as i64,
            n_neg: braid.negative_count() as i64,
        }
    }

    pub fn braid(&self) -> &BraidWord {
        &self.braid
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// Range of homological degrees carrying generators.
    pub fn h_range(&self) -> std::ops::RangeInclusive<i64> {
        -self.n_neg..=self.n_pos
    }

    fn weight_of(&self, h: i64) -> Option<usize> {
        let w = h + self.n_neg;
        (0..=self.braid.crossings() as i64).contains(&w).then_some(w as usize)
    }

    /// Labellings of one resolution with `#v₊ − #v₋ = balance` and `k ≤ k_max`,
    /// honouring the variant's basepoint label. Ascending.
    fn labelings(&self, cs: &CircleSet, balance: i64, k_max: Option<i64>) -> Vec<(u64, i64)> {
        let m = cs.circle_count() as i64;
        if (m + balance).rem_euclid(2) != 0 || balance.abs() > m {
            return Vec::new();
        }
        let plus_total = ((m + balance) / 2) as usize;
        let forced = self
            .variant
            .forced_label()
            .map(|(p, plus)| (cs.circle_of_basepoint(p), plus));
        let (mut nontrivial, mut trivial) = (Vec::new(), Vec::new());
        for c in 0..cs.circle_count() {
            if forced.is_some_and(|(f, _)| f == c) {
                continue;
            }
            if cs.is_nontrivial(c) {
                nontrivial.push(c);
            } else {
                trivial.push(c);
            }
        }
        let (fixed_mask, fixed_plus, fixed_k) = match forced {
            Some((c, plus)) => {
                let dk = if cs.is_nontrivial(c) {
                    if plus {
                        1
                    } else {
                        -1
                    }
                } else {
                    0
                };
                (if plus { 1u64 << c } else { 0 }, usize::from(plus), dk)
            }
            None => (0, 0, 0),
        };
        let Some(free_plus) = plus_total.checked_sub(fixed_plus) else {
            return Vec::new();
        };
        let nt = nontrivial.len();
        let mut out = Vec::new();
        let lo = free_plus.saturating_sub(trivial.len());
        let hi = free_plus.min(nt);
        for a in lo..=hi {
            let k = fixed_k + 2 * a as i64 - nt as i64;
            if k_max.is_some_and(|km| k > km) {
                continue;
            }
            let tri = subsets(&trivial, free_plus - a);
            for ntm in subsets(&nontrivial, a) {
                for &tm in &tri {
                    out.push((fixed_mask | ntm | tm, k));
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn balance_for(&self, res: Resolution, q: i64) -> i64 {
        q - i64::from(res.weight()) - self.n_pos + 2 * self.n_neg
    }

    /// The `(h, q, k ≤ k_max)` slice.
    pub fn slice(&self, h: i64, q: i64, k_max: Option<i64>) -> GradedSlice {
        let Some(w) = self.weight_of(h) else {
            return GradedSlice::from_parts(self.variant, h, q, k_max, Vec::new());
        };
        let resolutions = resolutions_of_weight(self.braid.crossings(), w);
        let per_res = map_ordered(&resolutions, |&res| {
            let cs = circles(&self.braid, res);
            self.labelings(&cs, self.balance_for(res, q), k_max)
                .into_iter()
                .map(|(labels, k)| (Generator { res, labels }, k))
                .collect::<Vec<_>>()
        });
        GradedSlice::from_parts(self.variant, h, q, k_max, per_res.into_iter().flatten().collect())
    }

    /// Every non-empty slice in degree `h`, by ascending q, without k cutoff.
    pub fn slices_at(&self, h: i64) -> Vec<GradedSlice> {
        let Some(w) = self.weight_of(h) else {
            return Vec::new();
        };
        let resolutions = resolutions_of_weight(self.braid.crossings(), w);
        let per_res = map_ordered(&resolutions, |&res| {
            let cs = circles(&self.braid, res);
            let m = cs.circle_count() as i64;
            let mut gens = Vec::new();
            let mut balance = -m;
            while balance <= m {
                let q = balance + i64::from(res.weight()) + self.n_pos - 2 * self.n_neg;
                for (labels, k) in self.labelings(&cs, balance, None) {
                    gens.push((q, Generator { res, labels }, k));
                }
                balance += 2;
            }
            gens
        });
        let mut by_q: std::collections::BTreeMap<i64, Vec<(Generator, i64)>> = Default::default();
        for (q, g, k) in per_res.into_iter().flatten() {
            by_q.entry(q).or_default().push((g, k));
        }
        by_q.into_iter()
            .map(|(q, mut parts)| {
                parts.sort_unstable_by_key(|(g, _)| *g);
                GradedSlice::from_parts(self.variant, h, q, None, parts)
            })
            .collect()
    }

    /// Matrix of `d: source → target`.
    ///
    /// # Panics
    /// If the slices do not belong to this complex in adjacent degrees with the
    /// same q, or if `target` is missing a generator `d` reaches (its k cutoff
    /// is below the source's). Also asserts that every entry is k-non-increasing.
    pub fn differential_into(&self, source: &GradedSlice, target: &GradedSlice) -> SparseMatrixF2 {
        assert_eq!(source.variant, self.variant);
        assert_eq!(target.variant, self.variant);
        assert_eq!(target.h, source.h + 1, "d raises h by one");
        assert_eq!(target.q, source.q, "d preserves q");

        // group source columns by resolution (contiguous by construction)
        let mut groups: Vec<(Resolution, std::ops::Range<usize>)> = Vec::new();
        for (i, g) in source.basis().iter().enumerate() {
            match groups.last_mut() {
                Some((r, range)) if *r == g.res => range.end = i + 1,
                _ => groups.push((g.res, i..i + 1)),
            }
        }
        let quot_p = match self.variant {
            Variant::ReducedQuot(p) => Some(p),
            _ => None,
        };
        let sub_p = match self.variant {
            Variant::ReducedSub(p) => Some(p),
            _ => None,
        };
        let columns = map_ordered(&groups, |(res, range)| {
            let cs = circles(&self.braid, *res);
            let edges: Vec<Edge> = (0..self.braid.crossings())
                .filter(|&i| !res.bit(i))
                .map(|i| Edge::new(&self.braid, *res, &cs, i))
                .collect();
            let mut cols = Vec::with_capacity(range.len());
            let mut scratch = Vec::new();
            for j in range.clone() {
                let labels = source.basis()[j].labels;
                let k_src = source.k_of(j);
                let mut rows = Vec::new();
                for e in &edges {
                    scratch.clear();
                    e.apply(labels, &mut scratch);
                    for &t in &scratch {
                        if let Some(p) = quot_p {
                            if t >> e.target_circles.circle_of_basepoint(p) & 1 == 0 {
                                continue;
                            }
                        }
                        if let Some(p) = sub_p {
                            assert_eq!(
                                t >> e.target_circles.circle_of_basepoint(p) & 1,
                                0,
                                "differential left the reduced subcomplex"
                            );
                        }
                        let g = Generator {
                            res: e.target,
                            labels: t,
                        };
                        let k_tgt = k_grading(&e.target_circles, t);
                        assert!(k_tgt <= k_src, "differential increased k");
                        let row = target.index_of(&g).unwrap_or_else(|| {
                            panic!("target slice lacks {g:?} (k = {k_tgt}); its k cutoff is too low")
                        });
                        rows.push(row);
                    }
                }
                cols.push(ChainF2::from_indices(rows));
            }
            cols
        });
        SparseMatrixF2::new(target.len(), columns.into_iter().flatten().collect())
            .expect("rows come from the target index")
    }

    /// `d` out of `source` into the full `(h+1, q)` slice.
    pub fn differential(&self, source: &GradedSlice) -> DifferentialMatrix {
        let target = self.slice(source.h + 1, source.q, None);
        let matrix = self.differential_into(source, &target);
        DifferentialMatrix {
            source: source.clone(),
            target,
            matrix,
        }
    }

    /// `d` applied to a formal sum of generators of this complex (mod 2).
    /// For the quotient variant, summands with v₋ at the basepoint are dropped.
    pub fn apply_differential(&self, chain: &[Generator]) -> Vec<Generator> {
        let mut out = Vec::new();
        let mut scratch = Vec::new();
        for g in chain {
            let cs = circles(&self.braid, g.res);
            for i in (0..self.braid.crossings()).filter(|&i| !g.res.bit(i)) {
                let e = Edge::new(&self.braid, g.res, &cs, i);
                scratch.clear();
                e.apply(g.labels, &mut scratch);
                for &t in &scratch {
                    if let Variant::ReducedQuot(p) = self.variant {
                        if t >> e.target_circles.circle_of_basepoint(p) & 1 == 0 {
                            continue;
                        }
                    }
                    out.push(Generator {
                        res: e.target,
                        labels: t,
                    });
                }
            }
        }
        out.sort_unstable();
        let mut reduced: Vec<Generator> = Vec::with_capacity(out.len());
        for g in out {
            if reduced.last() == Some(&g) {
                reduced.pop();
            } else {
                reduced.push(g);
            }
        }
        reduced
    }
}

/// Free-function form of [`KhovanovComplex::slice`].
pub fn build_slice(braid: &BraidWord, variant: Variant, h: i64, q: i64, k_max: Option<i64>) -> GradedSlice {
    KhovanovComplex::new(braid, variant).slice(h, q, k_max)
}

/// Free-function form of [`KhovanovComplex::differential`].
pub fn differential(braid: &BraidWord, source: &GradedSlice) -> DifferentialMatrix {
    KhovanovComplex::new(braid, source.variant).differential(source)
}
