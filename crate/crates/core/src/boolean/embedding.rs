use super::algebra::{AtomSet, FiniteBoolAlg, Subalgebra};
use crate::error::{domain, Result};

/// An embedding `A → B` carried dually as a surjection `atoms(B) → atoms(A)`.
///
/// The embedding sends `a` to the preimage of its atom set.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DualSurjection {
    source: FiniteBoolAlg,
    target: FiniteBoolAlg,
    atom_map: Vec<usize>,
}

impl DualSurjection {
    pub fn new(source: FiniteBoolAlg, target: FiniteBoolAlg, atom_map: Vec<usize>) -> Result<Self> {
        if atom_map.len() != target.len() {
            return Err(domain(format!(
                "atom map has {} entries but the larger algebra has {} atoms",
                atom_map.len(),
                target.len()
            )));
        }
        let mut hit = AtomSet::EMPTY;
        for &a in &atom_map {
            if a >= source.len() {
                return Err(domain(format!("atom map value {a} out of range")));
            }
            hit = hit.join(AtomSet::singleton(a));
        }
        if hit != source.top() {
            let missing = source.top().minus(hit).min_index().unwrap_or_default();
            return Err(domain(format!(
                "atom map is not surjective: atom {:?} has empty preimage",
                source.atoms()[missing]
            )));
        }
        Ok(DualSurjection {
            source,
            target,
            atom_map,
        })
    }

    /// Builds the map from labels: `pairs[b_label] = a_label`.
    pub fn from_labels<'a>(
        source: FiniteBoolAlg,
        target: FiniteBoolAlg,
        pairs: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Self> {
        let mut map: Vec<Option<usize>> = vec![None; target.len()];
        for (b, a) in pairs {
            let bi = target
                .index_of(b)
                .ok_or_else(|| domain(format!("{b:?} is not an atom of the larger algebra")))?;
            let ai = source
                .index_of(a)
                .ok_or_else(|| domain(format!("{a:?} is not an atom of the smaller algebra")))?;
            map[bi] = Some(ai);
        }
        let map = map
            .into_iter()
            .enumerate()
            .map(|(i, m)| m.ok_or_else(|| domain(format!("atom {:?} is not mapped", target.atoms()[i]))))
            .collect::<Result<Vec<_>>>()?;
        DualSurjection::new(source, target, map)
    }

    pub fn identity(alg: &FiniteBoolAlg) -> Self {
        DualSurjection {
            source: alg.clone(),
            target: alg.clone(),
            atom_map: (0..alg.len()).collect(),
        }
    }

    /// The inclusion `{0,1} → alg`.
    pub fn from_trivial(alg: &FiniteBoolAlg) -> Self {
        DualSurjection {
            source: FiniteBoolAlg::trivial(),
            target: alg.clone(),
            atom_map: vec![0; alg.len()],
        }
    }

    /// Inclusion of a subalgebra, with the subalgebra's atoms named by `labels`.
    pub fn from_subalgebra(sub: &Subalgebra, target: &FiniteBoolAlg, labels: Vec<String>) -> Result<Self> {
        if sub.parent_atoms() != target.len() {
            return Err(domain("subalgebra belongs to a different algebra"));
        }
        let source = FiniteBoolAlg::new(labels)?;
        if source.len() != sub.num_blocks() {
            return Err(domain("one label per block required"));
        }
        DualSurjection::new(source, target.clone(), sub.labelling())
    }

    pub fn source(&self) -> &FiniteBoolAlg {
        &self.source
    }

    pub fn target(&self) -> &FiniteBoolAlg {
        &self.target
    }

    pub fn atom_map(&self) -> &[usize] {
        &self.atom_map
    }

    /// Image of an element of the smaller algebra.
    pub fn apply(&self, a: AtomSet) -> AtomSet {
        AtomSet::from_indices(
            self.atom_map
                .iter()
                .enumerate()
                .filter(|(_, &s)| a.contains(s))
                .map(|(i, _)| i),
        )
    }

    /// The image of the embedding as a subalgebra of the larger algebra.
    pub fn image(&self) -> Subalgebra {
        Subalgebra::from_labelling(self.atom_map.iter().copied())
    }

    /// `other ∘ self` for `self: A → B`, `other: B → C`.
    pub fn then(&self, other: &DualSurjection) -> Result<DualSurjection> {
        if other.source != self.target {
            return Err(domain("embeddings do not compose: codomain and domain differ"));
        }
        Ok(DualSurjection {
            source: self.source.clone(),
            target: other.target.clone(),
            atom_map: other.atom_map.iter().map(|&b| self.atom_map[b]).collect(),
        })
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.len() == self.target.len()
    }

    /// Checks that the preimage map preserves 0, 1, ∨, ∧ and complement on
    /// every pair of elements (or on the first `limit` elements when the
    /// source is large) and is injective.
    pub fn verify_homomorphism(&self, limit: usize) -> bool {
        let n = self.source.len();
        let count = if n >= 20 { limit } else { (1usize << n).min(limit) };
        let elems: Vec<AtomSet> = (0..count as u128).map(AtomSet).collect();
        if self.apply(AtomSet::EMPTY) != AtomSet::EMPTY || self.apply(self.source.top()) != self.target.top() {
            return false;
        }
        for &x in &elems {
            let fx = self.apply(x);
            if self.apply(x.complement(n)) != fx.complement(self.target.len()) {
                return false;
            }
            for &y in &elems {
                let fy = self.apply(y);
                if self.apply(x.join(y)) != fx.join(fy) || self.apply(x.meet(y)) != fx.meet(fy) {
                    return false;
                }
                if x != y && fx == fy {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surjectivity_is_required() {
        let a = FiniteBoolAlg::numbered(2).unwrap();
        let b = FiniteBoolAlg::numbered(3).unwrap();
        assert!(DualSurjection::new(a.clone(), b.clone(), vec![0, 0, 0]).is_err());
        assert!(DualSurjection::new(a, b, vec![0, 1, 1]).is_ok());
    }

    #[test]
    fn preimage_is_an_injective_homomorphism() {
        let a = FiniteBoolAlg::numbered(3).unwrap();
        let b = FiniteBoolAlg::numbered(5).unwrap();
        let e = DualSurjection::new(a, b, vec![0, 2, 1, 2, 0]).unwrap();
        assert!(e.verify_homomorphism(usize::MAX));
        assert_eq!(e.apply(AtomSet::singleton(2)), AtomSet::from_indices([1, 3]));
        assert_eq!(e.image().num_blocks(), 3);
    }

    #[test]
    fn composition() {
        let a = FiniteBoolAlg::numbered(2).unwrap();
        let b = FiniteBoolAlg::numbered(3).unwrap();
        let c = FiniteBoolAlg::numbered(4).unwrap();
        let f = DualSurjection::new(a, b.clone(), vec![0, 1, 1]).unwrap();
        let g = DualSurjection::new(b, c, vec![2, 0, 1, 2]).unwrap();
        let h = f.then(&g).unwrap();
        assert_eq!(h.atom_map(), &[1, 0, 1, 1]);
        assert!(g.then(&f).is_err());
    }
}
