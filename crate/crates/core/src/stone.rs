//! Finite Stone duality: algebras ↔ atom spaces, push-outs ↔ pull-backs.
//!
//! A finite Stone space is discrete, so zero-dimensional covers are the
//! identity and every map between finite spaces is continuous.

use std::collections::HashSet;

use crate::boolean::{DualSurjection, FiniteBoolAlg, PushoutSquare};
use crate::error::{domain, precondition, Result};

/// A nonempty finite discrete space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteSpace {
    points: Vec<String>,
}

impl FiniteSpace {
    pub fn new<S: Into<String>>(points: impl IntoIterator<Item = S>) -> Result<Self> {
        let points: Vec<String> = points.into_iter().map(Into::into).collect();
        if points.is_empty() {
            return Err(domain("a space needs at least one point"));
        }
        let mut seen = HashSet::new();
        if let Some(p) = points.iter().find(|p| !seen.insert(p.as_str())) {
            return Err(domain(format!("duplicate point {p:?}")));
        }
        Ok(FiniteSpace { points })
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.points.iter().position(|p| p == label)
    }
}

/// A surjection of finite spaces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SurjectionMap {
    source: FiniteSpace,
    target: FiniteSpace,
    map: Vec<usize>,
}

impl SurjectionMap {
    pub fn new(source: FiniteSpace, target: FiniteSpace, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.len() {
            return Err(domain("point map must be total on the source"));
        }
        let mut hit = vec![false; target.len()];
        for &y in &map {
            *hit.get_mut(y).ok_or_else(|| domain(format!("point map value {y} out of range")))? = true;
        }
        if let Some(y) = hit.iter().position(|h| !h) {
            return Err(domain(format!("map misses {:?}", target.points[y])));
        }
        Ok(SurjectionMap { source, target, map })
    }

    pub fn source(&self) -> &FiniteSpace {
        &self.source
    }

    pub fn target(&self) -> &FiniteSpace {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }
}

/// A square `f: K → L`, `g: K → S`, `u: S → R`, `v: L → R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareOfSpaces {
    pub f: SurjectionMap,
    pub g: SurjectionMap,
    pub u: SurjectionMap,
    pub v: SurjectionMap,
}

impl SquareOfSpaces {
    /// Assembles a square after checking that the maps line up.
    pub fn new(f: SurjectionMap, g: SurjectionMap, u: SurjectionMap, v: SurjectionMap) -> Result<Self> {
        if f.source != g.source || g.target != u.source || f.target != v.source || u.target != v.target {
            return Err(domain("square maps do not line up"));
        }
        Ok(SquareOfSpaces { f, g, u, v })
    }

    pub fn k(&self) -> &FiniteSpace {
        &self.f.source
    }

    /// First point `k` with `u(g(k)) ≠ v(f(k))`.
    pub fn commutation_failure(&self) -> Option<usize> {
        (0..self.k().len()).find(|&k| self.u.apply(self.g.apply(k)) != self.v.apply(self.f.apply(k)))
    }
}

/// Outcome of [`is_pullback_diagram`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PullbackVerdict {
    /// Two points of `K` with the same image under both `f` and `g`.
    pub injectivity_violation: Option<(usize, usize)>,
    /// A compatible pair `(s, l)`, `u(s) = v(l)`, hit by no point of `K`.
    pub surjectivity_violation: Option<(usize, usize)>,
}

impl PullbackVerdict {
    pub fn holds(&self) -> bool {
        self.injectivity_violation.is_none() && self.surjectivity_violation.is_none()
    }
}

pub fn is_pullback_diagram(sq: &SquareOfSpaces) -> Result<PullbackVerdict> {
    if let Some(k) = sq.commutation_failure() {
        return Err(precondition(format!(
            "square does not commute at point {:?}",
            sq.k().points[k]
        )));
    }
    let n = sq.k().len();
    let ls = sq.f.target.len();
    let mut owner: Vec<Option<usize>> = vec![None; sq.g.target.len() * ls];
    let mut injectivity_violation = None;
    for k in 0..n {
        let slot = &mut owner[sq.g.apply(k) * ls + sq.f.apply(k)];
        match slot {
            Some(prev) if injectivity_violation.is_none() => injectivity_violation = Some((*prev, k)),
            Some(_) => {}
            None => *slot = Some(k),
        }
    }
    let mut surjectivity_violation = None;
    'outer: for (s, &rs) in sq.u.map.iter().enumerate() {
        for (l, &rl) in sq.v.map.iter().enumerate() {
            if rs == rl && owner[s * ls + l].is_none() {
                surjectivity_violation = Some((s, l));
                break 'outer;
            }
        }
    }
    Ok(PullbackVerdict {
        injectivity_violation,
        surjectivity_violation,
    })
}

/// Fiber product `K = {(s, l) : u(s) = v(l)}` with its projections.
pub fn pullback(u: &SurjectionMap, v: &SurjectionMap) -> Result<SquareOfSpaces> {
    if u.target != v.target {
        return Err(domain("pullback needs two maps onto a common space"));
    }
    let mut labels = Vec::new();
    let mut to_s = Vec::new();
    let mut to_l = Vec::new();
    for (s, &rs) in u.map.iter().enumerate() {
        for (l, &rl) in v.map.iter().enumerate() {
            if rs == rl {
                labels.push(format!("({},{})", u.source.points[s], v.source.points[l]));
                to_s.push(s);
                to_l.push(l);
            }
        }
    }
    let k = FiniteSpace::new(labels)?;
    let f = SurjectionMap::new(k.clone(), v.source.clone(), to_l)?;
    let g = SurjectionMap::new(k, u.source.clone(), to_s)?;
    SquareOfSpaces::new(f, g, u.clone(), v.clone())
}

/// The space of ultrafilters of `A`: its atoms.
pub fn stone_dual(a: &FiniteBoolAlg) -> FiniteSpace {
    FiniteSpace {
        points: a.atoms().to_vec(),
    }
}

/// The algebra of clopen (here: all) subsets of `K`.
pub fn clopen_algebra(k: &FiniteSpace) -> FiniteBoolAlg {
    FiniteBoolAlg::new(k.points.iter().cloned()).expect("space points are valid atom labels")
}

/// The dual of an embedding `A → B` as a surjection `St(B) → St(A)`.
pub fn dual_map(e: &DualSurjection) -> SurjectionMap {
    SurjectionMap {
        source: stone_dual(e.target()),
        target: stone_dual(e.source()),
        map: e.atom_map().to_vec(),
    }
}

/// The embedding `Clop(L) → Clop(K)` dual to a surjection `K → L`.
pub fn clopen_map(m: &SurjectionMap) -> DualSurjection {
    DualSurjection::new(clopen_algebra(&m.target), clopen_algebra(&m.source), m.map.clone())
        .expect("surjections dualize to embeddings")
}

/// The dual square: `K = St(B)`, `f, g` dual to `A → B`, `S → B`.
pub fn dual_square(po: &PushoutSquare) -> SquareOfSpaces {
    SquareOfSpaces {
        f: dual_map(&po.a_to_b),
        g: dual_map(&po.s_to_b),
        u: dual_map(&po.r_to_s),
        v: dual_map(&po.r_to_a),
    }
}

/// The square of clopen algebras; `S = Clop(S)` and `A = Clop(L)`.
pub fn clopen_square(sq: &SquareOfSpaces) -> Result<PushoutSquare> {
    PushoutSquare::new(
        clopen_map(&sq.u),
        clopen_map(&sq.v),
        clopen_map(&sq.g),
        clopen_map(&sq.f),
    )
}

/// Dualizes a square of embeddings and checks the pull-back property.
///
/// Also checks that dualizing back recovers the square exactly.
pub fn duality_square_check(po: &PushoutSquare) -> bool {
    let dual = dual_square(po);
    let round_trip = clopen_square(&dual).map(|back| back == *po).unwrap_or(false);
    round_trip && is_pullback_diagram(&dual).map(|v| v.holds()).unwrap_or(false)
}

/// The converse direction: a square of spaces is a pull-back iff its
/// clopen square is a push-out diagram. Returns the push-out side verdict.
pub fn clopen_square_check(sq: &SquareOfSpaces) -> Result<bool> {
    Ok(clopen_square(sq)?.is_pushout_diagram())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolean::{pushout, AtomSet, Subalgebra};

    fn space(n: usize, tag: &str) -> FiniteSpace {
        FiniteSpace::new((0..n).map(|i| format!("{tag}{i}"))).unwrap()
    }

    #[test]
    fn round_trip() {
        let a = FiniteBoolAlg::numbered(3).unwrap();
        let k = stone_dual(&a);
        assert_eq!(k.len(), 3);
        assert_eq!(clopen_algebra(&k), a);
        let inc = DualSurjection::from_trivial(&a);
        let d = dual_map(&inc);
        assert_eq!(d.target().len(), 1);
        assert_eq!(clopen_map(&d), inc);
    }

    #[test]
    fn fiber_counting() {
        let r = space(2, "r");
        let u = SurjectionMap::new(space(3, "s"), r.clone(), vec![0, 0, 1]).unwrap();
        let v = SurjectionMap::new(space(3, "l"), r.clone(), vec![0, 1, 1]).unwrap();
        let sq = pullback(&u, &v).unwrap();
        assert_eq!(sq.k().len(), 4);
        assert!(is_pullback_diagram(&sq).unwrap().holds());

        let pt = space(1, "r");
        let u = SurjectionMap::new(space(3, "s"), pt.clone(), vec![0; 3]).unwrap();
        let v = SurjectionMap::new(space(2, "l"), pt, vec![0; 2]).unwrap();
        assert_eq!(pullback(&u, &v).unwrap().k().len(), 6);
    }

    #[test]
    fn mutations_are_detected() {
        let r = space(2, "r");
        let u = SurjectionMap::new(space(3, "s"), r.clone(), vec![0, 0, 1]).unwrap();
        let v = SurjectionMap::new(space(3, "l"), r, vec![0, 1, 1]).unwrap();
        let sq = pullback(&u, &v).unwrap();

        // duplicate point 0
        let mut fm = sq.f.map.clone();
        let mut gm = sq.g.map.clone();
        fm.push(fm[0]);
        gm.push(gm[0]);
        let k = space(fm.len(), "k");
        let dup = SquareOfSpaces::new(
            SurjectionMap::new(k.clone(), sq.f.target.clone(), fm).unwrap(),
            SurjectionMap::new(k, sq.g.target.clone(), gm).unwrap(),
            u.clone(),
            v.clone(),
        )
        .unwrap();
        let verdict = is_pullback_diagram(&dup).unwrap();
        assert_eq!(verdict.injectivity_violation, Some((0, 4)));
        assert!(verdict.surjectivity_violation.is_none());

        // drop (s0, l0) from a product; the remaining maps stay surjective
        let pt = space(1, "r");
        let u = SurjectionMap::new(space(2, "s"), pt.clone(), vec![0, 0]).unwrap();
        let v = SurjectionMap::new(space(2, "l"), pt, vec![0, 0]).unwrap();
        let sq = pullback(&u, &v).unwrap();
        let k = space(3, "k");
        let drop = SquareOfSpaces::new(
            SurjectionMap::new(k.clone(), sq.f.target.clone(), sq.f.map[1..].to_vec()).unwrap(),
            SurjectionMap::new(k, sq.g.target.clone(), sq.g.map[1..].to_vec()).unwrap(),
            u,
            v,
        )
        .unwrap();
        let verdict = is_pullback_diagram(&drop).unwrap();
        assert!(verdict.injectivity_violation.is_none());
        assert_eq!(verdict.surjectivity_violation, Some((0, 0)));
    }

    #[test]
    fn non_commuting_square_is_rejected() {
        let r = space(2, "r");
        let id = SurjectionMap::new(r.clone(), r.clone(), vec![0, 1]).unwrap();
        let swap = SurjectionMap::new(r.clone(), r, vec![1, 0]).unwrap();
        let sq = SquareOfSpaces::new(id.clone(), id.clone(), id, swap).unwrap();
        assert!(is_pullback_diagram(&sq).is_err());
    }

    #[test]
    fn pushout_dualizes_to_pullback() {
        let r = FiniteBoolAlg::new(["r1", "r2"]).unwrap();
        let a = FiniteBoolAlg::new(["a1", "a2", "a3"]).unwrap();
        let s = FiniteBoolAlg::new(["s1", "s2", "s3"]).unwrap();
        let v = DualSurjection::new(r.clone(), a, vec![0, 0, 1]).unwrap();
        let u = DualSurjection::new(r, s, vec![0, 1, 1]).unwrap();
        let po = pushout(&u, &v).unwrap();
        assert!(duality_square_check(&po));
        let pb = pullback(&dual_map(&u), &dual_map(&v)).unwrap();
        assert_eq!(pb, dual_square(&po));
        assert!(clopen_square_check(&pb).unwrap());
    }

    #[test]
    fn trivial_square() {
        let b = FiniteBoolAlg::numbered(3).unwrap();
        let full = Subalgebra::full(3);
        let sq = PushoutSquare::from_subalgebras(&b, &full, &full).unwrap();
        assert!(duality_square_check(&sq));
    }

    #[test]
    fn failed_pushout_fails_on_the_dual_side() {
        // product square with one atom missing
        let b = FiniteBoolAlg::numbered(3).unwrap();
        let s = Subalgebra::from_blocks(3, vec![AtomSet::from_indices([0, 1]), AtomSet::singleton(2)]).unwrap();
        let a = Subalgebra::from_blocks(3, vec![AtomSet::from_indices([0, 2]), AtomSet::singleton(1)]).unwrap();
        let sq = PushoutSquare::from_subalgebras(&b, &s, &a).unwrap();
        assert!(!sq.is_pushout_diagram());
        assert!(!duality_square_check(&sq));
    }
}
