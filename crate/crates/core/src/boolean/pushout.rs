//! Internal push-outs of Boolean algebras and their fiber-product construction.
//!
//! `B` is the internal push-out of subalgebras `S` and `A` when `⟨S ∪ A⟩ = B`
//! and every disjoint pair `a ∧ s = 0` is separated by some `r ∈ A ∩ S`
//! (`a ≤ r`, `s ≤ r̄`). The equivalent form asks for `a ≤ r ≤ s` whenever
//! `a ≤ s`. Both forms are checked independently, block by block:
//!
//! * disjoint form fails iff some block `α` of `A` has its `A∩S`-block
//!   reaching outside the smallest element of `S` above `α`;
//! * order form fails iff some block `σ` of `S` has its `A∩S`-block
//!   reaching outside the smallest element of `A` above `σ`.
//!
//! The canonical interpolant for a disjoint pair `(a, s)` is the least
//! element of `A ∩ S` above `a`; any interpolant lies above it, so it is
//! unique and needs no tie-breaking.

use serde::Serialize;

use super::algebra::{AtomSet, FiniteBoolAlg, Subalgebra};
use super::embedding::DualSurjection;
use crate::error::{domain, Result};

/// Outcome of [`is_internal_pushout`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PushoutVerdict {
    /// `A ∩ S`, computed exactly.
    pub intersection: Subalgebra,
    /// Two atoms of `B` not separated by `⟨S ∪ A⟩`.
    pub generation_gap: Option<(usize, usize)>,
    /// A pair `(a, s)` with `a ∧ s = 0` and no `r ∈ A∩S` with `a ≤ r ≤ s̄`.
    pub disjoint_violation: Option<(AtomSet, AtomSet)>,
    /// A pair `(a, s)` with `a ≤ s` and no `r ∈ A∩S` with `a ≤ r ≤ s`.
    pub order_violation: Option<(AtomSet, AtomSet)>,
}

impl PushoutVerdict {
    pub fn holds(&self) -> bool {
        self.generation_gap.is_none() && self.disjoint_violation.is_none() && self.order_violation.is_none()
    }

    /// Whether the two interpolation forms gave the same answer.
    pub fn forms_agree(&self) -> bool {
        self.disjoint_violation.is_some() == self.order_violation.is_some()
    }
}

/// One row of an interpolant table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Interpolant {
    pub a: AtomSet,
    pub s: AtomSet,
    pub r: AtomSet,
}

fn check_sub(b: &FiniteBoolAlg, x: &Subalgebra, name: &str) -> Result<()> {
    if x.parent_atoms() != b.len() {
        Err(domain(format!("{name} is not a subalgebra of B (atom count differs)")))
    } else {
        Ok(())
    }
}

/// Decides whether `B` is the internal push-out of `S` and `A`.
pub fn is_internal_pushout(b: &FiniteBoolAlg, s: &Subalgebra, a: &Subalgebra) -> Result<PushoutVerdict> {
    check_sub(b, s, "S")?;
    check_sub(b, a, "A")?;
    let n = b.len();
    let r = s.meet(a);

    let generated = s.join(a);
    let generation_gap = generated
        .blocks()
        .iter()
        .find(|blk| blk.len() > 1)
        .map(|blk| {
            let mut it = blk.indices();
            (it.next().unwrap(), it.next().unwrap())
        });

    // Disjoint form, scanned over the blocks of A.
    let disjoint_violation = a.blocks().iter().find_map(|&alpha| {
        let rho = r.above(alpha);
        let up_s = s.above(alpha);
        (!rho.subset_of(up_s)).then(|| (alpha, up_s.complement(n)))
    });

    // Order form, scanned over the blocks of S.
    let order_violation = s.blocks().iter().find_map(|&sigma| {
        let rho = r.above(sigma);
        let up_a = a.above(sigma);
        if rho.subset_of(up_a) {
            return None;
        }
        let witness = a
            .blocks()
            .iter()
            .copied()
            .find(|alpha| alpha.subset_of(rho) && alpha.disjoint(up_a))
            .expect("an A-block inside the R-block avoids the A-hull of sigma");
        Some((witness, sigma.complement(n)))
    });

    Ok(PushoutVerdict {
        intersection: r,
        generation_gap,
        disjoint_violation,
        order_violation,
    })
}

/// True when `(a, s)` with `a ≤ s` admits no `r ∈ A∩S` with `a ≤ r ≤ s`.
pub fn is_order_violation(s: &Subalgebra, a: &Subalgebra, pair: (AtomSet, AtomSet)) -> bool {
    let (x, y) = pair;
    let r = s.meet(a);
    a.contains(x) && s.contains(y) && x.subset_of(y) && !x.subset_of(r.below(y))
}

/// The canonical interpolant for a disjoint pair, if the pair is separated.
pub fn interpolant(s: &Subalgebra, a: &Subalgebra, x: AtomSet, y: AtomSet) -> Option<AtomSet> {
    let r = s.meet(a).above(x);
    r.disjoint(y).then_some(r)
}

/// Full interpolant table: one row per disjoint pair `(a, s)`.
pub fn interpolant_table(n: usize, s: &Subalgebra, a: &Subalgebra) -> Result<Vec<Interpolant>> {
    let r = s.meet(a);
    let mut table = Vec::new();
    for x in a.elements()? {
        let room = s.below(x.complement(n));
        for y in s.elements()? {
            if !y.subset_of(room) {
                continue;
            }
            let rr = r.above(x);
            if !rr.disjoint(y) {
                return Err(domain("pair without interpolant; not a push-out"));
            }
            table.push(Interpolant { a: x, s: y, r: rr });
        }
    }
    Ok(table)
}

/// A commuting square of embeddings `R → S → B`, `R → A → B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PushoutSquare {
    pub r_to_s: DualSurjection,
    pub r_to_a: DualSurjection,
    pub s_to_b: DualSurjection,
    pub a_to_b: DualSurjection,
}

impl PushoutSquare {
    /// Assembles a square, checking that the embeddings line up and commute.
    pub fn new(
        r_to_s: DualSurjection,
        r_to_a: DualSurjection,
        s_to_b: DualSurjection,
        a_to_b: DualSurjection,
    ) -> Result<Self> {
        if r_to_s.source() != r_to_a.source() {
            return Err(domain("R → S and R → A have different sources"));
        }
        if r_to_s.target() != s_to_b.source() || r_to_a.target() != a_to_b.source() {
            return Err(domain("square edges do not compose"));
        }
        if s_to_b.target() != a_to_b.target() {
            return Err(domain("S → B and A → B have different targets"));
        }
        let sq = PushoutSquare {
            r_to_s,
            r_to_a,
            s_to_b,
            a_to_b,
        };
        if !sq.commutes() {
            return Err(domain("square does not commute"));
        }
        Ok(sq)
    }

    /// The square `S ∩ A → S, A → B` of inclusions, with subalgebra atoms
    /// labelled by their blocks, e.g. `{x,y}`.
    pub fn from_subalgebras(b: &FiniteBoolAlg, s: &Subalgebra, a: &Subalgebra) -> Result<Self> {
        check_sub(b, s, "S")?;
        check_sub(b, a, "A")?;
        let r = s.meet(a);
        let name = |blk: AtomSet| format!("{{{}}}", b.labels_of(blk).join(","));
        let alg = |x: &Subalgebra| FiniteBoolAlg::new(x.blocks().iter().map(|&blk| name(blk)));
        let (rb, sb, ab) = (alg(&r)?, alg(s)?, alg(a)?);
        let coarse = |x: &Subalgebra, from: FiniteBoolAlg, to: FiniteBoolAlg| {
            let map = x.blocks().iter().map(|blk| r.block_of(blk.min_index().unwrap())).collect();
            DualSurjection::new(from, to, map)
        };
        PushoutSquare::new(
            coarse(s, rb.clone(), sb.clone())?,
            coarse(a, rb, ab.clone())?,
            DualSurjection::new(sb, b.clone(), s.labelling())?,
            DualSurjection::new(ab, b.clone(), a.labelling())?,
        )
    }

    pub fn commutes(&self) -> bool {
        let via_s = self.r_to_s.then(&self.s_to_b);
        let via_a = self.r_to_a.then(&self.a_to_b);
        matches!((via_s, via_a), (Ok(x), Ok(y)) if x.atom_map() == y.atom_map())
    }

    pub fn b(&self) -> &FiniteBoolAlg {
        self.s_to_b.target()
    }

    pub fn s_image(&self) -> Subalgebra {
        self.s_to_b.image()
    }

    pub fn a_image(&self) -> Subalgebra {
        self.a_to_b.image()
    }

    pub fn r_image(&self) -> Subalgebra {
        self.r_to_s
            .then(&self.s_to_b)
            .expect("square edges compose")
            .image()
    }

    /// Internal push-out verdict for the images of `S` and `A` in `B`.
    pub fn verdict(&self) -> PushoutVerdict {
        is_internal_pushout(self.b(), &self.s_image(), &self.a_image())
            .expect("images are subalgebras of B")
    }

    /// A push-out diagram: `R = S ∩ A` inside `B` and `B` is the internal push-out.
    pub fn is_pushout_diagram(&self) -> bool {
        let v = self.verdict();
        v.holds() && v.intersection == self.r_image()
    }

    pub fn interpolant_table(&self) -> Result<Vec<Interpolant>> {
        interpolant_table(self.b().len(), &self.s_image(), &self.a_image())
    }

    /// Each atom of `B` as its pair of (S-atom, A-atom) coordinates, sorted.
    pub fn coordinate_pairs(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<(usize, usize)> = self
            .s_to_b
            .atom_map()
            .iter()
            .zip(self.a_to_b.atom_map())
            .map(|(&s, &a)| (s, a))
            .collect();
        v.sort_unstable();
        v
    }

    /// Isomorphic over `R`, `S`, `A` (same coordinate pairs up to relabeling of `B`).
    pub fn isomorphic_to(&self, other: &PushoutSquare) -> bool {
        self.r_to_s == other.r_to_s
            && self.r_to_a == other.r_to_a
            && self.coordinate_pairs() == other.coordinate_pairs()
    }

    /// The same square with the roles of `S` and `A` exchanged.
    pub fn swapped(&self) -> PushoutSquare {
        PushoutSquare {
            r_to_s: self.r_to_a.clone(),
            r_to_a: self.r_to_s.clone(),
            s_to_b: self.a_to_b.clone(),
            a_to_b: self.s_to_b.clone(),
        }
    }
}

/// Completes `u: R → S`, `v: R → A` to a push-out square.
///
/// Dually `atoms(B)` is the fiber product `{(s, a) : u(s) = v(a)}`, listed
/// in lexicographic order, with the coordinate projections as the new edges.
pub fn pushout(u: &DualSurjection, v: &DualSurjection) -> Result<PushoutSquare> {
    if u.source() != v.source() {
        return Err(domain("pushout needs two embeddings with a common source"));
    }
    let s = u.target();
    let a = v.target();
    let mut labels = Vec::new();
    let mut to_s = Vec::new();
    let mut to_a = Vec::new();
    for (si, &rs) in u.atom_map().iter().enumerate() {
        for (ai, &ra) in v.atom_map().iter().enumerate() {
            if rs == ra {
                labels.push(format!("({},{})", s.atoms()[si], a.atoms()[ai]));
                to_s.push(si);
                to_a.push(ai);
            }
        }
    }
    let b = FiniteBoolAlg::new(labels)?;
    let s_to_b = DualSurjection::new(s.clone(), b.clone(), to_s)?;
    let a_to_b = DualSurjection::new(a.clone(), b, to_a)?;
    let sq = PushoutSquare::new(u.clone(), v.clone(), s_to_b, a_to_b)?;
    debug_assert!(sq.is_pushout_diagram());
    Ok(sq)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[usize]) -> AtomSet {
        AtomSet::from_indices(xs.iter().copied())
    }

    /// Direct transcription of both interpolation conditions over all element pairs.
    fn brute(n: usize, s: &Subalgebra, a: &Subalgebra) -> (bool, bool, bool) {
        let r = s.meet(a);
        let rs = r.elements().unwrap();
        let gen = s.join(a).is_full();
        let mut c2 = true;
        let mut c2p = true;
        for x in a.elements().unwrap() {
            for y in s.elements().unwrap() {
                if x.disjoint(y) && !rs.iter().any(|&z| x.subset_of(z) && y.subset_of(z.complement(n))) {
                    c2 = false;
                }
                if x.subset_of(y) && !rs.iter().any(|&z| x.subset_of(z) && z.subset_of(y)) {
                    c2p = false;
                }
            }
        }
        (gen, c2, c2p)
    }

    #[test]
    fn block_criteria_match_brute_force_on_all_small_pairs() {
        // Every pair of partitions of a 4-atom set.
        let parts: Vec<Subalgebra> = (0..4usize.pow(4))
            .map(|code| Subalgebra::from_labelling((0..4).map(|i| code / 4usize.pow(i as u32) % 4)))
            .collect();
        let b = FiniteBoolAlg::numbered(4).unwrap();
        for s in &parts {
            for a in &parts {
                let v = is_internal_pushout(&b, s, a).unwrap();
                let (gen, c2, c2p) = brute(4, s, a);
                assert_eq!(v.generation_gap.is_none(), gen);
                assert_eq!(v.disjoint_violation.is_none(), c2);
                assert_eq!(v.order_violation.is_none(), c2p);
                assert!(v.forms_agree());
            }
        }
    }

    #[test]
    fn product_of_coordinates_is_a_pushout() {
        // atoms (s,a) in {0,1}^2 indexed 2s+a
        let b = FiniteBoolAlg::numbered(4).unwrap();
        let s = Subalgebra::from_blocks(4, vec![set(&[0, 1]), set(&[2, 3])]).unwrap();
        let a = Subalgebra::from_blocks(4, vec![set(&[0, 2]), set(&[1, 3])]).unwrap();
        assert!(is_internal_pushout(&b, &s, &a).unwrap().holds());
        let full = Subalgebra::full(4);
        assert!(is_internal_pushout(&b, &full, &full).unwrap().holds());
    }

    #[test]
    fn foreign_subalgebra_is_a_domain_error() {
        let b = FiniteBoolAlg::numbered(4).unwrap();
        assert!(is_internal_pushout(&b, &Subalgebra::full(3), &Subalgebra::full(4)).is_err());
    }

    #[test]
    fn fiber_product_example() {
        let r = FiniteBoolAlg::new(["r1", "r2"]).unwrap();
        let a = FiniteBoolAlg::new(["a1", "a2", "a3"]).unwrap();
        let s = FiniteBoolAlg::new(["s1", "s2", "s3"]).unwrap();
        let v = DualSurjection::from_labels(r.clone(), a, [("a1", "r1"), ("a2", "r1"), ("a3", "r2")]).unwrap();
        let u = DualSurjection::from_labels(r, s, [("s1", "r1"), ("s2", "r2"), ("s3", "r2")]).unwrap();
        let sq = pushout(&u, &v).unwrap();
        assert_eq!(sq.b().atoms(), &["(s1,a1)", "(s1,a2)", "(s2,a3)", "(s3,a3)"]);
        assert!(sq.is_pushout_diagram());
        assert!(sq.swapped().is_pushout_diagram());
        let rev = pushout(&v, &u).unwrap();
        assert!(rev.isomorphic_to(&sq.swapped()));
        for row in sq.interpolant_table().unwrap() {
            assert!(row.a.subset_of(row.r) && row.s.disjoint(row.r));
        }
    }

    #[test]
    fn free_sum_over_trivial() {
        let r = FiniteBoolAlg::trivial();
        let s = FiniteBoolAlg::numbered(2).unwrap();
        let a = FiniteBoolAlg::numbered(2).unwrap();
        let sq = pushout(
            &DualSurjection::new(r.clone(), s, vec![0, 0]).unwrap(),
            &DualSurjection::new(r, a, vec![0, 0]).unwrap(),
        )
        .unwrap();
        assert_eq!(sq.b().len(), 4);
    }

    #[test]
    fn isomorphism_edge_gives_isomorphic_other_side() {
        let r = FiniteBoolAlg::numbered(2).unwrap();
        let a = FiniteBoolAlg::numbered(3).unwrap();
        let u = DualSurjection::identity(&r);
        let v = DualSurjection::new(r, a, vec![0, 1, 1]).unwrap();
        let sq = pushout(&u, &v).unwrap();
        assert!(sq.a_to_b.is_isomorphism());
    }

    #[test]
    fn mismatched_sources_are_rejected() {
        let r1 = FiniteBoolAlg::numbered(1).unwrap();
        let r2 = FiniteBoolAlg::numbered(2).unwrap();
        let u = DualSurjection::identity(&r1);
        let v = DualSurjection::identity(&r2);
        assert!(pushout(&u, &v).is_err());
    }
}
