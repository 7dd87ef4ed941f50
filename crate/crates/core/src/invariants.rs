//! The transverse element ψ, its annular refinement κ (and the reduced κ̃_p,
//! κ̲_p), annular Khovanov homology, spectral-sequence pages, and the decision
//! procedures that only need to know whether κ = 2.
//!
//! Every search for a bounding chain happens in the `(h = −1, q = q(ψ))` slice:
//! `d` preserves q and raises h by one, and ψ sits at `(0, q(ψ))`. For the
//! unreduced and sub variants `q(ψ) = sl`; the quotient ψ̲ sits at `sl + 2`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::braid::{mirror, BraidWord};
use crate::complex::{GradedSlice, KhovanovComplex, Variant};
use crate::diagram::{circles, gradings_with, oriented_resolution, Generator, Gradings};
use crate::f2linalg::{kernel_basis, rank, rank_of_span_union, ChainF2, Eliminator, SparseMatrixF2};

/// An even integer or ∞.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kappa {
    Finite(i64),
    Infinite,
}

impl Kappa {
    pub fn is_finite(self) -> bool {
        matches!(self, Kappa::Finite(_))
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Kappa::Finite(v) => Some(v),
            Kappa::Infinite => None,
        }
    }
}

impl fmt::Display for Kappa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kappa::Finite(v) => write!(f, "{v}"),
            Kappa::Infinite => f.write_str("infinity"),
        }
    }
}

/// A chain `y` in the `(−1, q(ψ))` slice with `dy = ψ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub generators: Vec<Generator>,
    /// Filtration level: the largest k over the summands.
    pub k: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KappaResult {
    pub value: Kappa,
    pub witness: Option<Witness>,
    pub variant: Variant,
}

/// ψ for the given variant: the all-v₋ labelling of the oriented resolution,
/// or for the quotient the representative with v₊ on the basepoint circle.
pub fn psi(braid: &BraidWord, variant: Variant) -> Generator {
    let res = oriented_resolution(braid);
    let labels = match variant {
        Variant::ReducedQuot(p) => 1 << circles(braid, res).circle_of_basepoint(p),
        _ => 0,
    };
    Generator { res, labels }
}

pub fn psi_gradings(braid: &BraidWord, variant: Variant) -> Gradings {
    let g = psi(braid, variant);
    gradings_with(braid, &circles(braid, g.res), &g)
}

/// Highest filtration level the κ search visits.
fn top_level(n: i64, variant: Variant) -> i64 {
    match variant {
        Variant::ReducedQuot(_) => n,
        _ => n - 2,
    }
}

/// `(source, target, d)` for the ψ search with both slices cut at `level`.
fn psi_problem(cx: &KhovanovComplex, level: i64) -> (GradedSlice, GradedSlice, SparseMatrixF2) {
    let q = psi_gradings(cx.braid(), cx.variant()).q;
    let source = cx.slice(-1, q, Some(level));
    let target = cx.slice(0, q, Some(level));
    let d = cx.differential_into(&source, &target);
    (source, target, d)
}

/// κ, κ̃_p or κ̲_p with a realizing chain.
///
/// Columns of the `(−1, q(ψ))` slice are fed to one incremental eliminator in
/// ascending k; the first level at which ψ enters the span gives the value.
pub fn kappa(braid: &BraidWord, variant: Variant) -> KappaResult {
    let n = braid.strands() as i64;
    let low = 2 - n;
    let top = top_level(n, variant);
    let infinite = KappaResult {
        value: Kappa::Infinite,
        witness: None,
        variant,
    };
    if low > top {
        return infinite;
    }
    let cx = KhovanovComplex::new(braid, variant);
    let (source, target, d) = psi_problem(&cx, top);
    let psi_row = target.index_of(&psi(braid, variant)).expect("ψ lies in its own slice");
    let rhs = ChainF2::basis(psi_row);

    let mut elim = Eliminator::new(target.len());
    let mut pushed: Vec<usize> = Vec::new();
    let mut level = low;
    while level <= top {
        for j in 0..source.len() {
            let k = source.k_of(j);
            let fresh = if level == low { k <= low } else { k == level };
            if fresh {
                elim.push_column(d.column(j)).expect("rows index the target");
                pushed.push(j);
            }
        }
        if let Some(combo) = elim.solve(&rhs).expect("rows index the target") {
            let chain = ChainF2::from_indices(combo.support().iter().map(|&c| pushed[c]));
            let k = source.k_of_chain(&chain).expect("ψ ≠ 0, so the witness is nonzero");
            debug_assert_eq!(k, level);
            return KappaResult {
                value: Kappa::Finite(n + level),
                witness: Some(Witness {
                    generators: source.generators_of(&chain),
                    k,
                }),
                variant,
            };
        }
        level += 2;
    }
    infinite
}

/// Whether ψ bounds a chain of filtration level at most `level`, by a direct
/// solve on the cut slices (no incremental state). Returns the chain if so.
pub fn psi_bounds_within(braid: &BraidWord, variant: Variant, level: i64) -> Option<Vec<Generator>> {
    let cx = KhovanovComplex::new(braid, variant);
    let (source, target, d) = psi_problem(&cx, level);
    let row = target.index_of(&psi(braid, variant))?;
    crate::f2linalg::solve(&d, &ChainF2::basis(row))
        .expect("rows index the target")
        .map(|x| source.generators_of(&x))
}

/// The κ = 2 test: does ψ bound inside `F_{2−n}`?
pub fn kappa_is_two(braid: &BraidWord) -> bool {
    let n = braid.strands() as i64;
    n >= 2 && psi_bounds_within(braid, Variant::Unreduced, 2 - n).is_some()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WordProblem {
    Trivial,
    Nontrivial,
}

/// Decides whether the word is the identity: it is iff neither the braid nor
/// its mirror has κ = 2.
pub fn word_problem(braid: &BraidWord) -> WordProblem {
    if kappa_is_two(braid) || kappa_is_two(&mirror(braid)) {
        WordProblem::Nontrivial
    } else {
        WordProblem::Trivial
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Veering {
    RightVeering,
    Unknown,
}

/// Non-right-veering braids have κ = 2, so κ ≠ 2 certifies right-veering.
pub fn certify_right_veering(braid: &BraidWord) -> Veering {
    if kappa_is_two(braid) {
        Veering::Unknown
    } else {
        Veering::RightVeering
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Destabilization {
    Obstructed,
    Unknown,
}

/// Negative stabilizations have κ = 2; κ ≠ 2 rules out negative destabilization.
pub fn negative_destab_obstruction(braid: &BraidWord) -> Destabilization {
    if kappa_is_two(braid) {
        Destabilization::Unknown
    } else {
        Destabilization::Obstructed
    }
}

/// The explicit bounding chain at a negative crossing: that crossing
/// 0-smoothed, every other crossing smoothed as in the oriented resolution, all
/// circles v₋. It bounds ψ when the crossing is a negative stabilization or its
/// generator index occurs only negatively. `None` if the letter is positive.
pub fn negative_crossing_witness(braid: &BraidWord, crossing: usize) -> Option<Generator> {
    if braid.letters().get(crossing).is_none_or(|&g| g > 0) {
        return None;
    }
    let res = oriented_resolution(braid);
    Some(Generator {
        res: crate::diagram::Resolution(res.0 & !(1 << crossing)),
        labels: 0,
    })
}

/// Checks `d(witness) = ψ` and `k(witness) = κ − n`.
pub fn verify_kappa(braid: &BraidWord, result: &KappaResult) -> bool {
    let n = braid.strands() as i64;
    match (result.value, &result.witness) {
        (Kappa::Infinite, None) => true,
        (Kappa::Finite(v), Some(w)) => {
            let cx = KhovanovComplex::new(braid, result.variant);
            let image = cx.apply_differential(&w.generators);
            let k = w
                .generators
                .iter()
                .map(|g| gradings_with(braid, &circles(braid, g.res), g).k)
                .max();
            image == vec![psi(braid, result.variant)] && k == Some(v - n) && w.k == v - n
        }
        _ => false,
    }
}

/// Trigraded dimensions `(h, q, k) ↦ dim`, zero entries omitted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkhTable {
    entries: BTreeMap<(i64, i64, i64), usize>,
}

impl SkhTable {
    pub fn get(&self, h: i64, q: i64, k: i64) -> usize {
        self.entries.get(&(h, q, k)).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = ((i64, i64, i64), usize)> + '_ {
        self.entries.iter().map(|(&key, &d)| (key, d))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.entries.values().sum()
    }
}

fn k_block(d: &SparseMatrixF2, source: &GradedSlice, target: &GradedSlice, k: i64) -> SparseMatrixF2 {
    d.select_columns(&source.indices_at(k))
        .select_rows(&target.indices_at(k))
}

/// Annular Khovanov homology: homology of the k-preserving part of `d`.
pub fn skh_dims(braid: &BraidWord, variant: Variant) -> SkhTable {
    let cx = KhovanovComplex::new(braid, variant);
    let levels: BTreeMap<i64, BTreeMap<i64, GradedSlice>> = cx
        .h_range()
        .map(|h| (h, cx.slices_at(h).into_iter().map(|s| (s.q, s)).collect()))
        .collect();
    let mut entries = BTreeMap::new();
    for (&h, slices) in &levels {
        for (&q, s) in slices {
            let out = levels
                .get(&(h + 1))
                .and_then(|m| m.get(&q))
                .map(|t| (t, cx.differential_into(s, t)));
            let inc = levels
                .get(&(h - 1))
                .and_then(|m| m.get(&q))
                .map(|u| (u, cx.differential_into(u, s)));
            let mut ks: Vec<i64> = s.k_values().to_vec();
            ks.sort_unstable();
            ks.dedup();
            for k in ks {
                let dim = s.indices_at(k).len();
                let r_out = out.as_ref().map_or(0, |(t, d)| rank(&k_block(d, s, t, k)));
                let r_in = inc.as_ref().map_or(0, |(u, d)| rank(&k_block(d, u, s, k)));
                let homology = dim - r_out - r_in;
                if homology > 0 {
                    entries.insert((h, q, k), homology);
                }
            }
        }
    }
    SkhTable { entries }
}

fn chain_from_local(local: &ChainF2, map: &[usize]) -> ChainF2 {
    ChainF2::from_indices(local.support().iter().map(|&i| map[i]))
}

/// `dim E^r_{h,k}` in the q-summand `q` of the spectral sequence of the k filtration.
///
/// `E^r = Z / (Z ∩ F_{k−1} + d(F_{k+r−1}) ∩ F_k)` with
/// `Z = {x ∈ F_k C_h : dx ∈ F_{k−r}}`; after projecting to the associated
/// graded piece `F_k / F_{k−1}` this is `rank[PZ | PB] − rank PB`.
pub fn ss_page_dim_variant(braid: &BraidWord, variant: Variant, r: u32, h: i64, q: i64, k: i64) -> usize {
    assert!(r >= 1, "pages start at E^1");
    let r = i64::from(r);
    let cx = KhovanovComplex::new(braid, variant);
    let s = cx.slice(h, q, None);
    let at_k = s.indices_at(k);
    if at_k.is_empty() {
        return 0;
    }
    let t = cx.slice(h + 1, q, None);
    let u = cx.slice(h - 1, q, None);

    // Z: kernel of d followed by projection away from F_{k−r}
    let v = s.indices_up_to(k);
    let d_out = cx.differential_into(&s, &t);
    let above: Vec<usize> = (0..t.len()).filter(|&i| t.k_of(i) > k - r).collect();
    let z_basis = kernel_basis(&d_out.select_columns(&v).select_rows(&above));
    let pz = SparseMatrixF2::new(s.len(), z_basis.iter().map(|z| chain_from_local(z, &v)).collect())
        .expect("indices from the slice")
        .select_rows(&at_k);

    // boundaries d(y) with y ∈ F_{k+r−1} and dy ∈ F_k
    let w = u.indices_up_to(k + r - 1);
    let d_in = cx.differential_into(&u, &s);
    let above_k: Vec<usize> = (0..s.len()).filter(|&i| s.k_of(i) > k).collect();
    let pre = kernel_basis(&d_in.select_columns(&w).select_rows(&above_k));
    let pb = SparseMatrixF2::new(
        s.len(),
        pre.iter()
            .map(|y| d_in.mul_chain(&chain_from_local(y, &w)).expect("in range"))
            .collect(),
    )
    .expect("indices from the slice")
    .select_rows(&at_k);

    rank_of_span_union(&pz, &pb).expect("same row count") - rank(&pb)
}

/// `dim E^r_{h,k}` of the unreduced complex at quantum grading `q`.
pub fn ss_page_dim(braid: &BraidWord, r: u32, h: i64, q: i64, k: i64) -> usize {
    ss_page_dim_variant(braid, Variant::Unreduced, r, h, q, k)
}

/// First page on which the class of ψ is zero, `None` for ∞.
///
/// Computed from its definition: the least `r` with ψ ∈ d(F_{−n+r−1}).
pub fn psi_death_page(braid: &BraidWord) -> Option<u32> {
    let n = braid.strands() as i64;
    (1..=(2 * n + 1) as u32).find(|&r| psi_bounds_within(braid, Variant::Unreduced, -n + i64::from(r) - 1).is_some())
}
