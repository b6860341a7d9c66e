//! Finite stages of Hall's tower: `G1 = C3` and `G(k+1) = Sym(Gk)`, each
//! stage sitting in the next through its left-regular action.
//!
//! Stages 1 to 3 (orders 3, 6, 720) are materialized. Stage 4 is `Sym(G3)`,
//! of order 720!, and is only available symbolically: its elements are
//! degree-720 permutations built on demand.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::families;
use crate::group::FiniteGroup;
use crate::morphism::{Morphism, PermRepresentation};
use crate::perm::Permutation;
use crate::search;

pub const MAX_STAGE: usize = 4;

#[derive(Clone, Debug)]
pub struct TowerStage {
    index: usize,
    /// The stage group, for stages 1 to 3.
    group: Option<Arc<FiniteGroup>>,
    /// The previous stage, whose elements are the points this stage permutes.
    lower: Option<Arc<FiniteGroup>>,
}

/// Builds stage `k` (1 ≤ k ≤ 4).
pub fn build_stage(k: usize) -> Result<TowerStage> {
    if !(1..=MAX_STAGE).contains(&k) {
        return Err(Error::StageOutOfRange(k));
    }
    let base = Arc::new(families::cyclic(3));
    let mut stage = TowerStage {
        index: 1,
        group: Some(base),
        lower: None,
    };
    while stage.index < k {
        let lower = stage.group.clone().expect("stages below 4 are materialized");
        let degree = lower.order();
        let group = if stage.index + 1 < MAX_STAGE {
            Some(Arc::new(FiniteGroup::from_permutations(
                degree,
                &families::symmetric_generators(degree),
            )?))
        } else {
            None
        };
        stage = TowerStage {
            index: stage.index + 1,
            group,
            lower: Some(lower),
        };
    }
    Ok(stage)
}

impl TowerStage {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn is_symbolic(&self) -> bool {
        self.group.is_none()
    }

    pub fn group(&self) -> Option<&Arc<FiniteGroup>> {
        self.group.as_ref()
    }

    /// The previous stage (the point set of this stage's permutations).
    pub fn lower(&self) -> Option<&Arc<FiniteGroup>> {
        self.lower.as_ref()
    }

    /// `|Gk|`, when it fits in a `usize`-sized materialized group.
    pub fn order(&self) -> Option<usize> {
        self.group.as_ref().map(|g| g.order())
    }

    /// Number of points permuted by the stage (`|G(k-1)|`); stage 1 is not
    /// presented as a permutation group.
    pub fn degree(&self) -> Option<usize> {
        self.lower.as_ref().map(|g| g.order())
    }

    /// Checks that `p` is an element of the (symbolic or materialized) stage.
    pub fn contains_permutation(&self, p: &Permutation) -> bool {
        match (&self.group, self.degree()) {
            (Some(g), _) => g.index_of(p).is_some(),
            (None, Some(d)) => p.degree() == d,
            (None, None) => false,
        }
    }

    /// `g -> (x -> g·x)` from this stage into the permutations of the next.
    pub fn regular_embedding(&self) -> Result<PermRepresentation> {
        match &self.group {
            Some(g) => Ok(PermRepresentation::regular(g.clone())),
            None => Err(Error::StageOutOfRange(self.index + 1)),
        }
    }

    /// The regular embedding as a morphism into the materialized next stage.
    pub fn embedding_up(&self, next: &TowerStage) -> Result<Morphism> {
        if next.index != self.index + 1 {
            return Err(Error::InvalidInput("stages are not adjacent".into()));
        }
        let reg = self.regular_embedding()?;
        let target = next.group.clone().ok_or(Error::StageOutOfRange(next.index))?;
        let images = reg
            .images()
            .iter()
            .map(|p| target.index_of(p).expect("Sym(Gk) contains every permutation"))
            .collect();
        Morphism::new(reg.domain().clone(), target, images)
    }
}

/// Left-regular action of `k` on its own elements, padded with fixed points
/// up to `degree`.
fn padded_regular(k: &FiniteGroup, degree: usize) -> Vec<Permutation> {
    k.elements()
        .map(|g| {
            let images = (0..degree)
                .map(|x| if x < k.order() { k.mul(g, x) } else { x })
                .collect();
            Permutation::from_images_unchecked(images)
        })
        .collect()
}

/// Cayley embedding of `k` into the permutations moved by `stage` (k ≥ 2),
/// including the symbolic stage 4.
pub fn embed_into_stage_permutations(
    k: &Arc<FiniteGroup>,
    stage: &TowerStage,
) -> Result<PermRepresentation> {
    let degree = stage.degree().ok_or(Error::TooLargeForStage {
        order: k.order(),
        stage: stage.index,
        degree: 0,
    })?;
    if k.order() > degree {
        return Err(Error::TooLargeForStage {
            order: k.order(),
            stage: stage.index,
            degree,
        });
    }
    PermRepresentation::new(k.clone(), degree, padded_regular(k, degree))
}

/// Embeds `k` into a materialized stage group.
///
/// Stages 2 and 3 use the padded Cayley embedding. Stage 1 (`C3`) is not a
/// symmetric group; there `k` embeds exactly when it is isomorphic to a
/// subgroup of `C3`.
pub fn embed_finite_group(k: &Arc<FiniteGroup>, stage: &TowerStage) -> Result<Morphism> {
    let target = stage
        .group
        .clone()
        .ok_or_else(|| Error::InvalidInput("stage 4 is symbolic; embed as permutations".into()))?;
    if stage.index == 1 {
        let too_large = Error::TooLargeForStage {
            order: k.order(),
            stage: 1,
            degree: target.order(),
        };
        return match k.order() {
            1 => Ok(Morphism::from_images_unchecked(k.clone(), target, alloc::vec![0])),
            3 => {
                let iso = search::isomorphism(k, &target).ok_or(too_large)?;
                Ok(iso)
            }
            _ => Err(too_large),
        };
    }
    let rep = embed_into_stage_permutations(k, stage)?;
    let images = rep
        .images()
        .iter()
        .map(|p| target.index_of(p).expect("stage is the full symmetric group"))
        .collect();
    Morphism::new(k.clone(), target, images)
}

/// Embeds `k` into `Alt(2|k|)`: the regular action on `|k|` points, run
/// identically on a second copy so that every image is even.
pub fn embed_into_alternating(k: &Arc<FiniteGroup>) -> PermRepresentation {
    let n = k.order();
    let images = k
        .elements()
        .map(|g| {
            let images = (0..2 * n)
                .map(|x| if x < n { k.mul(g, x) } else { n + k.mul(g, x - n) })
                .collect();
            Permutation::from_images_unchecked(images)
        })
        .collect();
    PermRepresentation::new(k.clone(), 2 * n, images).expect("degree is consistent")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Involutions {
    pub elements: Vec<usize>,
    /// Whether the involutions generate the whole group.
    pub generating: bool,
}

pub fn involutions(g: &FiniteGroup) -> Involutions {
    let elements = g.involutions();
    let generating = g.closure(&elements).len() == g.order();
    Involutions {
        elements,
        generating,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    #[test]
    fn stage_orders() {
        assert_eq!(build_stage(1).unwrap().order(), Some(3));
        assert_eq!(build_stage(2).unwrap().order(), Some(6));
        assert_eq!(build_stage(3).unwrap().order(), Some(720));
        let s4 = build_stage(4).unwrap();
        assert!(s4.is_symbolic());
        assert_eq!(s4.degree(), Some(720));
        assert_eq!(build_stage(0).unwrap_err(), Error::StageOutOfRange(0));
        assert_eq!(build_stage(5).unwrap_err(), Error::StageOutOfRange(5));
    }

    #[test]
    fn regular_embedding_of_base() {
        let g1 = build_stage(1).unwrap();
        let reg = g1.regular_embedding().unwrap();
        assert!(reg.image(0).is_identity());
        assert_eq!(reg.image(1).cycle_type(), alloc::vec![3]);
        assert!(reg.is_free());
    }

    #[test]
    fn regular_embedding_of_sym3_all_pairs() {
        let g2 = build_stage(2).unwrap();
        let g3 = build_stage(3).unwrap();
        let up = g2.embedding_up(&g3).unwrap();
        let g = g2.group().unwrap();
        assert!(oracle::is_homomorphism_all_pairs(g, g3.group().unwrap(), up.images()));
        assert!(up.is_injective());
        let reg = g2.regular_embedding().unwrap();
        for x in g.elements() {
            for y in g.elements() {
                assert_eq!(reg.image(g.mul(x, y)), &reg.image(x).compose(reg.image(y)));
            }
        }
        assert!(reg.is_free());
    }

    #[test]
    fn composite_embeddings_are_injective_homomorphisms() {
        // k = 1: C3 -> Sym(3) -> Sym(6), all materialized.
        let (s1, s2, s3) = (build_stage(1).unwrap(), build_stage(2).unwrap(), build_stage(3).unwrap());
        let first = s1.embedding_up(&s2).unwrap();
        let second = s2.embedding_up(&s3).unwrap();
        let comp = second.compose(&first).unwrap();
        assert!(comp.is_injective());
        assert!(oracle::is_homomorphism_all_pairs(s1.group().unwrap(), s3.group().unwrap(), comp.images()));

        // k = 2: Sym(3) -> Sym(6) -> Sym(720), the last step symbolic.
        let reg3 = s3.regular_embedding().unwrap();
        let g2 = s2.group().unwrap();
        let images: Vec<&Permutation> = g2.elements().map(|x| reg3.image(second.apply(x))).collect();
        for x in g2.elements() {
            for y in g2.elements() {
                assert_eq!(images[g2.mul(x, y)], &images[x].compose(images[y]));
            }
        }
        let mut sorted = images.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 6);
        assert!(images.iter().skip(1).all(|p| p.fixed_points() == 0));
    }

    #[test]
    fn embed_small_groups() {
        let stage2 = build_stage(2).unwrap();
        let c2 = Arc::new(families::cyclic(2));
        let m = embed_finite_group(&c2, &stage2).unwrap();
        let p = stage2.group().unwrap().permutation(m.apply(1)).unwrap();
        assert_eq!(p.images(), &[1, 0, 2]);
        assert!(m.is_injective());

        let stage3 = build_stage(3).unwrap();
        let s3 = Arc::new(families::symmetric(3));
        let m = embed_finite_group(&s3, &stage3).unwrap();
        assert!(m.is_injective());
        assert!(oracle::is_homomorphism_all_pairs(&s3, stage3.group().unwrap(), m.images()));

        let c7 = Arc::new(families::cyclic(7));
        assert!(matches!(
            embed_finite_group(&c7, &stage2),
            Err(Error::TooLargeForStage { .. })
        ));

        let stage1 = build_stage(1).unwrap();
        assert!(embed_finite_group(&Arc::new(families::cyclic(3)), &stage1).is_ok());
        assert!(embed_finite_group(&c2, &stage1).is_err());

        let stage4 = build_stage(4).unwrap();
        let rep = embed_into_stage_permutations(&Arc::new(families::symmetric(4)), &stage4).unwrap();
        assert_eq!(rep.degree(), 720);
        assert!(rep.is_homomorphism() && rep.is_injective());
    }

    #[test]
    fn alternating_embeddings() {
        let c2 = Arc::new(families::cyclic(2));
        let rep = embed_into_alternating(&c2);
        assert_eq!(rep.degree(), 4);
        assert_eq!(rep.image(1).cycles(), alloc::vec![alloc::vec![0, 1], alloc::vec![2, 3]]);
        assert!(rep.all_even());

        let trivial = Arc::new(families::cyclic(1));
        let rep = embed_into_alternating(&trivial);
        assert_eq!(rep.degree(), 2);
        assert!(rep.image(0).is_identity());

        let s3 = Arc::new(families::symmetric(3));
        let rep = embed_into_alternating(&s3);
        assert_eq!(rep.degree(), 12);
        assert!(rep.all_even() && rep.is_injective() && rep.is_homomorphism());
    }

    #[test]
    fn involution_inventories() {
        let s3 = involutions(&families::symmetric(3));
        assert_eq!((s3.elements.len(), s3.generating), (3, true));
        let s4 = involutions(&families::symmetric(4));
        assert_eq!((s4.elements.len(), s4.generating), (9, true));
        let c3 = involutions(&families::cyclic(3));
        assert_eq!((c3.elements.len(), c3.generating), (0, false));
        let g3 = build_stage(3).unwrap();
        assert!(involutions(g3.group().unwrap()).generating);
    }
}
