//! Brute-force reference implementation of the Khovanov complex of a closed
//! braid over GF(2), sharing no code with the library's complex or solver.
//!
//! Circles are found by breadth-first search over an explicit adjacency list,
//! non-triviality is measured with the cut ray placed at the middle gap
//! instead of across the closure arcs, saddles are classified by comparing
//! circle counts, and all linear algebra is dense row reduction.

#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};

use kappa_core::BraidWord;
use rand::Rng;

pub struct Circles {
    pub of_segment: Vec<usize>,
    pub nontrivial: Vec<bool>,
}

fn seg(n: usize, j: usize, t: usize) -> usize {
    t * n + j
}

pub fn oracle_circles(b: &BraidWord, bits: u64) -> Circles {
    let n = b.strands();
    let c = b.crossings();
    let len = n * (c + 1);
    let mut adj = vec![Vec::new(); len];
    let mut link = |x: usize, y: usize| {
        adj[x].push(y);
        adj[y].push(x);
    };
    for (i, &g) in b.letters().iter().enumerate() {
        let a = g.unsigned_abs() as usize - 1;
        for j in (0..n).filter(|&j| j != a && j != a + 1) {
            link(seg(n, j, i), seg(n, j, i + 1));
        }
        let one = bits >> i & 1 == 1;
        let vertical = if g > 0 { !one } else { one };
        if vertical {
            link(seg(n, a, i), seg(n, a, i + 1));
            link(seg(n, a + 1, i), seg(n, a + 1, i + 1));
        } else {
            link(seg(n, a, i), seg(n, a + 1, i));
            link(seg(n, a, i + 1), seg(n, a + 1, i + 1));
        }
    }
    for j in 0..n {
        link(seg(n, j, c), seg(n, j, 0));
    }
    let mut of_segment = vec![usize::MAX; len];
    let mut count = 0;
    for start in 0..len {
        if of_segment[start] != usize::MAX {
            continue;
        }
        let mut queue = VecDeque::from([start]);
        of_segment[start] = count;
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if of_segment[y] == usize::MAX {
                    of_segment[y] = count;
                    queue.push_back(y);
                }
            }
        }
        count += 1;
    }
    // ray across the strands at the middle gap
    let t = c / 2;
    let mut nontrivial = vec![false; count];
    for j in 0..n {
        let k = of_segment[seg(n, j, t)];
        nontrivial[k] = !nontrivial[k];
    }
    Circles { of_segment, nontrivial }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Gen {
    pub bits: u64,
    pub labels: u64,
}

pub struct OracleComplex {
    pub braid: BraidWord,
    pub gens: Vec<Gen>,
    pub h: Vec<i64>,
    pub q: Vec<i64>,
    pub k: Vec<i64>,
    pub index: HashMap<Gen, usize>,
    /// `d(gens[j])` as a list of generator indices (mod 2 reduced).
    pub d: Vec<Vec<usize>>,
    /// For reduced variants: circle of the basepoint segment in each resolution.
    pub basepoint: Option<(usize, usize)>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OracleVariant {
    Unreduced,
    Sub(usize, usize),
    Quot(usize, usize),
}

fn cancel_pairs(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    let mut out: Vec<usize> = Vec::new();
    for x in v {
        if out.last() == Some(&x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

impl OracleComplex {
    /// The whole complex (every resolution, every labelling).
    pub fn new(b: &BraidWord, variant: OracleVariant) -> Self {
        Self::new_filtered(b, variant, None)
    }

    /// Only generators whose `(h, q)` is listed; `d` into anything else is dropped.
    pub fn new_filtered(b: &BraidWord, variant: OracleVariant, keep: Option<&[(i64, i64)]>) -> Self {
        let n = b.strands();
        let c = b.crossings();
        assert!(c <= 16, "oracle is exponential in the crossing number");
        let n_neg = b.letters().iter().filter(|&&g| g < 0).count() as i64;
        let n_pos = c as i64 - n_neg;
        let bp = match variant {
            OracleVariant::Unreduced => None,
            OracleVariant::Sub(p, g) | OracleVariant::Quot(p, g) => Some((p, g)),
        };
        let bp_seg = bp.map(|(p, g)| seg(n, p - 1, g));
        let mut circles = Vec::with_capacity(1 << c);
        for bits in 0..(1u64 << c) {
            circles.push(oracle_circles(b, bits));
        }
        let mut gens = Vec::new();
        let (mut hs, mut qs, mut ks) = (Vec::new(), Vec::new(), Vec::new());
        for bits in 0..(1u64 << c) {
            let cs = &circles[bits as usize];
            let m = cs.nontrivial.len();
            for labels in 0..(1u64 << m) {
                if let Some(s) = bp_seg {
                    let at_p = labels >> cs.of_segment[s] & 1 == 1;
                    match variant {
                        OracleVariant::Sub(..) if at_p => continue,
                        OracleVariant::Quot(..) if !at_p => continue,
                        _ => {}
                    }
                }
                let w = bits.count_ones() as i64;
                let plus = labels.count_ones() as i64;
                let mut k = 0;
                for (ci, &nt) in cs.nontrivial.iter().enumerate() {
                    if nt {
                        k += if labels >> ci & 1 == 1 { 1 } else { -1 };
                    }
                }
                let (h, q) = (w - n_neg, plus - (m as i64 - plus) + w + n_pos - 2 * n_neg);
                if keep.is_some_and(|kp| !kp.contains(&(h, q))) {
                    continue;
                }
                gens.push(Gen { bits, labels });
                hs.push(h);
                qs.push(q);
                ks.push(k);
            }
        }
        let index: HashMap<Gen, usize> = gens.iter().enumerate().map(|(i, g)| (*g, i)).collect();

        let mut d = Vec::with_capacity(gens.len());
        for g in &gens {
            let src = &circles[g.bits as usize];
            let mut out = Vec::new();
            for i in 0..c {
                if g.bits >> i & 1 == 1 {
                    continue;
                }
                let tbits = g.bits | 1 << i;
                let tgt = &circles[tbits as usize];
                // overlap relation between source and target circles
                let mut tgt_of_src: Vec<Vec<usize>> = vec![Vec::new(); src.nontrivial.len()];
                for s in 0..src.of_segment.len() {
                    let (a, bb) = (src.of_segment[s], tgt.of_segment[s]);
                    if !tgt_of_src[a].contains(&bb) {
                        tgt_of_src[a].push(bb);
                    }
                }
                let mut images: Vec<u64> = Vec::new();
                if tgt.nontrivial.len() + 1 == src.nontrivial.len() {
                    // merge: two source circles share a target circle
                    let mut into = usize::MAX;
                    let mut merged = Vec::new();
                    let mut base = 0u64;
                    for (a, ts) in tgt_of_src.iter().enumerate() {
                        let t = ts[0];
                        let shared = tgt_of_src.iter().filter(|o| o[0] == t).count() == 2;
                        if shared {
                            into = t;
                            merged.push(g.labels >> a & 1);
                        } else if g.labels >> a & 1 == 1 {
                            base |= 1 << t;
                        }
                    }
                    match merged.iter().sum::<u64>() {
                        2 => images.push(base | 1 << into),
                        1 => images.push(base),
                        _ => {}
                    }
                } else {
                    assert_eq!(tgt.nontrivial.len(), src.nontrivial.len() + 1);
                    let mut base = 0u64;
                    let mut split = None;
                    for (a, ts) in tgt_of_src.iter().enumerate() {
                        if ts.len() == 2 {
                            split = Some((a, ts[0], ts[1]));
                        } else if g.labels >> a & 1 == 1 {
                            base |= 1 << ts[0];
                        }
                    }
                    let (a, x, y) = split.expect("one circle splits");
                    if g.labels >> a & 1 == 1 {
                        images.push(base | 1 << x);
                        images.push(base | 1 << y);
                    } else {
                        images.push(base);
                    }
                }
                for labels in images {
                    if let Some(s) = bp_seg {
                        let at_p = labels >> tgt.of_segment[s] & 1 == 1;
                        if matches!(variant, OracleVariant::Quot(..)) && !at_p {
                            continue;
                        }
                    }
                    match (index.get(&Gen { bits: tbits, labels }), keep) {
                        (Some(&t), _) => out.push(t),
                        (None, Some(_)) => {}
                        (None, None) => panic!("differential left the complex"),
                    }
                }
            }
            d.push(cancel_pairs(out));
        }
        OracleComplex {
            braid: b.clone(),
            gens,
            h: hs,
            q: qs,
            k: ks,
            index,
            d,
            basepoint: bp,
        }
    }

    pub fn psi_index(&self, variant: OracleVariant) -> usize {
        let bits = self
            .braid
            .letters()
            .iter()
            .enumerate()
            .filter(|(_, &g)| g < 0)
            .fold(0u64, |acc, (i, _)| acc | 1 << i);
        let labels = match variant {
            OracleVariant::Quot(p, g) => {
                let cs = oracle_circles(&self.braid, bits);
                1 << cs.of_segment[seg(self.braid.strands(), p - 1, g)]
            }
            _ => 0,
        };
        self.index[&Gen { bits, labels }]
    }
}

/// Dense GF(2) rank of the given column vectors (each a list of row indices).
pub fn dense_rank(columns: &[Vec<usize>], rows: usize) -> usize {
    let words = rows.div_ceil(64).max(1);
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    for col in columns {
        let mut v = vec![0u64; words];
        for &r in col {
            v[r / 64] ^= 1 << (r % 64);
        }
        for (pivot, b) in &basis {
            if v[pivot / 64] >> (pivot % 64) & 1 == 1 {
                for (x, y) in v.iter_mut().zip(b) {
                    *x ^= y;
                }
            }
        }
        if let Some(w) = v.iter().position(|&x| x != 0) {
            let pivot = w * 64 + v[w].trailing_zeros() as usize;
            for (p2, b2) in basis.iter_mut() {
                if b2[pivot / 64] >> (pivot % 64) & 1 == 1 {
                    for (x, y) in b2.iter_mut().zip(&v) {
                        *x ^= y;
                    }
                }
                let _ = p2;
            }
            basis.push((pivot, v));
        }
    }
    basis.len()
}

/// κ by brute force: the least level `i` (from −n+2 to `top`) such that ψ lies
/// in the span of `d` applied to all generators with `k ≤ i`, across the whole
/// complex. Returns `n + i`, or `None` for ∞.
pub fn oracle_kappa(b: &BraidWord, variant: OracleVariant) -> Option<i64> {
    oracle_kappa_in(&OracleComplex::new(b, variant), variant)
}

/// As [`oracle_kappa`], on the `h ∈ {−1, 0}` part of the complex at ψ's q only.
pub fn oracle_kappa_near_psi(b: &BraidWord, variant: OracleVariant) -> Option<i64> {
    let full_psi_q = {
        let sl = b.letters().iter().map(|g| g.signum() as i64).sum::<i64>() - b.strands() as i64;
        if matches!(variant, OracleVariant::Quot(..)) {
            sl + 2
        } else {
            sl
        }
    };
    let keep = [(-1, full_psi_q), (0, full_psi_q)];
    oracle_kappa_in(&OracleComplex::new_filtered(b, variant, Some(&keep)), variant)
}

fn oracle_kappa_in(cx: &OracleComplex, variant: OracleVariant) -> Option<i64> {
    let b = &cx.braid;
    let n = b.strands() as i64;
    let top = if matches!(variant, OracleVariant::Quot(..)) {
        n
    } else {
        n - 2
    };
    let psi = cx.psi_index(variant);
    let rows = cx.gens.len();
    let mut level = 2 - n;
    while level <= top {
        let cols: Vec<Vec<usize>> = (0..rows)
            .filter(|&j| cx.k[j] <= level)
            .map(|j| cx.d[j].clone())
            .collect();
        let r = dense_rank(&cols, rows);
        let mut with_psi = cols;
        with_psi.push(vec![psi]);
        if dense_rank(&with_psi, rows) == r {
            return Some(n + level);
        }
        level += 2;
    }
    None
}

/// Associated-graded homology by brute force over the whole complex.
pub fn oracle_skh(b: &BraidWord, variant: OracleVariant) -> HashMap<(i64, i64, i64), usize> {
    let cx = OracleComplex::new(b, variant);
    let mut groups: HashMap<(i64, i64, i64), Vec<usize>> = HashMap::new();
    for i in 0..cx.gens.len() {
        groups.entry((cx.h[i], cx.q[i], cx.k[i])).or_default().push(i);
    }
    let rank_of = |src: &[usize], tgt_key: (i64, i64, i64)| -> usize {
        let Some(tgt) = groups.get(&tgt_key) else { return 0 };
        let pos: HashMap<usize, usize> = tgt.iter().enumerate().map(|(a, &b)| (b, a)).collect();
        let cols: Vec<Vec<usize>> = src
            .iter()
            .map(|&j| cx.d[j].iter().filter_map(|r| pos.get(r).copied()).collect())
            .collect();
        dense_rank(&cols, tgt.len())
    };
    let mut out = HashMap::new();
    for (&(h, q, k), members) in &groups {
        let r_out = rank_of(members, (h + 1, q, k));
        let r_in = groups.get(&(h - 1, q, k)).map_or(0, |src| rank_of(src, (h, q, k)));
        let dim = members.len() - r_out - r_in;
        if dim > 0 {
            out.insert((h, q, k), dim);
        }
    }
    out
}

/// Random braid word with `1 ≤ n ≤ max_n` strands and at most `max_c` letters.
pub fn random_braid<R: Rng>(rng: &mut R, min_n: usize, max_n: usize, max_c: usize) -> BraidWord {
    let n = rng.gen_range(min_n..=max_n);
    let c = if n == 1 { 0 } else { rng.gen_range(0..=max_c) };
    let letters = (0..c)
        .map(|_| {
            let g = rng.gen_range(1..n as i32);
            if rng.gen_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect();
    BraidWord::new(n, letters).unwrap()
}
