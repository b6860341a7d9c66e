//! Conjugators between isomorphic subgroups, one stage up.
//!
//! For subgroups `A, B ≤ G` and an isomorphism `φ: A → B`, the regular
//! embedding `λ: G → Sym(G)` turns `φ` into a conjugation: `A` acts freely
//! on `G` by left multiplication with orbits the right cosets `A x`, and `B`
//! does the same. Matching the orbits in order of their least elements and
//! setting `σ(a x_i) = φ(a) y_i` gives `σ λ(a) σ⁻¹ = λ(φ(a))`.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Limits};
use crate::morphism::{same_group, Morphism};
use crate::perm::Permutation;
use crate::search;
use crate::subgroup::SubgroupHandle;

/// An isomorphism between two subgroups of the same group, on parent indices:
/// `images[i]` is the image of `source.members()[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupIsomorphism {
    source: SubgroupHandle,
    target: SubgroupHandle,
    images: Vec<usize>,
}

impl SubgroupIsomorphism {
    pub fn new(source: SubgroupHandle, target: SubgroupHandle, images: Vec<usize>) -> Result<Self> {
        if !same_group(source.parent(), target.parent()) {
            return Err(Error::NotSubgroup("subgroups of different groups".into()));
        }
        if images.len() != source.order() {
            return Err(Error::NotIsomorphism(format!(
                "{} images for a subgroup of order {}",
                images.len(),
                source.order()
            )));
        }
        if source.order() != target.order() {
            return Err(Error::NotIsomorphism("orders differ".into()));
        }
        let mut hit = vec![false; target.order()];
        for &y in &images {
            let Some(i) = target.local_index(y) else {
                return Err(Error::NotIsomorphism(format!("image {y} outside target")));
            };
            if core::mem::replace(&mut hit[i], true) {
                return Err(Error::NotIsomorphism(format!("image {y} repeated")));
            }
        }
        let iso = SubgroupIsomorphism {
            source,
            target,
            images,
        };
        let g = iso.source.parent().clone();
        for &a in iso.source.members() {
            for &b in iso.source.members() {
                if iso.apply(g.mul(a, b)) != g.mul(iso.apply(a), iso.apply(b)) {
                    return Err(Error::NotIsomorphism(format!("φ({a}·{b}) ≠ φ({a})·φ({b})")));
                }
            }
        }
        Ok(iso)
    }

    /// From a morphism between the subgroups viewed as standalone groups
    /// (local indices, see [`SubgroupHandle::to_group`]).
    pub fn from_local(source: SubgroupHandle, target: SubgroupHandle, local: &Morphism) -> Result<Self> {
        if local.images().len() != source.order() {
            return Err(Error::NotIsomorphism("size mismatch".into()));
        }
        let images = local
            .images()
            .iter()
            .map(|&i| target.members().get(i).copied())
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::NotIsomorphism("image outside target".into()))?;
        SubgroupIsomorphism::new(source, target, images)
    }

    pub fn identity(k: SubgroupHandle) -> Self {
        let images = k.members().to_vec();
        SubgroupIsomorphism {
            source: k.clone(),
            target: k,
            images,
        }
    }

    pub fn source(&self) -> &SubgroupHandle {
        &self.source
    }

    pub fn target(&self) -> &SubgroupHandle {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Image of a parent element lying in the source subgroup.
    pub fn apply(&self, x: usize) -> usize {
        self.images[self.source.local_index(x).expect("element of the source subgroup")]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SubgroupIsomorphism) -> Result<SubgroupIsomorphism> {
        if self.target != other.source {
            return Err(Error::InvalidInput("target and source differ".into()));
        }
        Ok(SubgroupIsomorphism {
            source: self.source.clone(),
            target: other.target.clone(),
            images: self.images.iter().map(|&y| other.apply(y)).collect(),
        })
    }
}

/// `σ ∈ Sym(G)` realizing `iso` by conjugation of regular images.
#[derive(Clone, Debug)]
pub struct ConjugationCertificate {
    pub ambient_degree: usize,
    pub sigma: Permutation,
    pub iso: SubgroupIsomorphism,
}

impl ConjugationCertificate {
    pub fn source(&self) -> &SubgroupHandle {
        &self.iso.source
    }

    pub fn target(&self) -> &SubgroupHandle {
        &self.iso.target
    }

    /// Checks `σ λ(a) σ⁻¹ = λ(φ(a))` for every `a` in the source.
    pub fn verify(&self) -> bool {
        let g = self.iso.source.parent();
        if self.sigma.degree() != g.order() || self.ambient_degree != g.order() {
            return false;
        }
        let sigma_inv = self.sigma.inverse();
        self.iso.source.members().iter().all(|&a| {
            let b = self.iso.apply(a);
            // σ λ(a) σ⁻¹ (x) = b x  for all x
            g.elements()
                .all(|x| self.sigma.apply(g.mul(a, sigma_inv.apply(x))) == g.mul(b, x))
        })
    }

    /// Certificate for the composite `other ∘ self`: `σ_other ∘ σ_self`.
    pub fn then(&self, other: &ConjugationCertificate) -> Result<ConjugationCertificate> {
        Ok(ConjugationCertificate {
            ambient_degree: self.ambient_degree,
            sigma: other.sigma.compose(&self.sigma),
            iso: self.iso.then(&other.iso)?,
        })
    }
}

/// Least-first orbit representatives of left multiplication by `k`
/// (equivalently, the least element of each right coset `k x`).
fn coset_representatives(k: &SubgroupHandle) -> Vec<usize> {
    let g = k.parent();
    let mut seen = vec![false; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if seen[x] {
            continue;
        }
        reps.push(x);
        for &a in k.members() {
            seen[g.mul(a, x)] = true;
        }
    }
    reps
}

/// Builds `σ` by matching the orbits of the free `A`-action with those of
/// the `φ`-twisted `B`-action.
pub fn conjugator(iso: &SubgroupIsomorphism) -> Result<ConjugationCertificate> {
    let g = iso.source.parent();
    let source_reps = coset_representatives(&iso.source);
    let target_reps = coset_representatives(&iso.target);
    debug_assert_eq!(source_reps.len(), target_reps.len());
    let mut images = vec![usize::MAX; g.order()];
    for (&x, &y) in source_reps.iter().zip(&target_reps) {
        for (&a, &b) in iso.source.members().iter().zip(&iso.images) {
            images[g.mul(a, x)] = g.mul(b, y);
        }
    }
    let sigma = Permutation::from_images(images)
        .map_err(|e| Error::ConstructionFailed(format!("orbit matching: {e}")))?;
    let cert = ConjugationCertificate {
        ambient_degree: g.order(),
        sigma,
        iso: iso.clone(),
    };
    debug_assert!(cert.verify());
    Ok(cert)
}

/// Convenience form taking member lists and parent-index images.
pub fn conjugator_for(
    g: &Arc<FiniteGroup>,
    a: &[usize],
    b: &[usize],
    phi_images: &[usize],
) -> Result<ConjugationCertificate> {
    let source = SubgroupHandle::new(g.clone(), a.to_vec())?;
    let target = SubgroupHandle::new(g.clone(), b.to_vec())?;
    // `phi_images` follows the order of `a` as given; realign to sorted members.
    if phi_images.len() != a.len() {
        return Err(Error::NotIsomorphism("one image per element of A required".into()));
    }
    let mut pairs: Vec<(usize, usize)> = a.iter().copied().zip(phi_images.iter().copied()).collect();
    pairs.sort_unstable();
    pairs.dedup();
    if pairs.len() != source.order() || pairs.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(Error::NotIsomorphism("φ is not a function on A".into()));
    }
    let images = pairs.into_iter().map(|(_, y)| y).collect();
    let iso = SubgroupIsomorphism::new(source, target, images)?;
    conjugator(&iso)
}

/// The partial automorphism `φ` of `G` is realized by a conjugation in
/// `Sym(G)` whose restriction along the regular embedding is `φ`.
pub fn extend_partial_automorphism(iso: &SubgroupIsomorphism) -> Result<ConjugationCertificate> {
    conjugator(iso)
}

/// An automorphism viewed as a permutation of the group's element list.
/// Conjugation by it sends `λ(g)` to `λ(f(g))`.
pub fn lift(f: &Morphism) -> Result<Permutation> {
    if !f.is_automorphism() {
        return Err(Error::NotIsomorphism("not an automorphism".into()));
    }
    f.as_permutation()
}

/// Every automorphism of `G` with its lift to `Sym(G)`.
#[derive(Clone, Debug)]
pub struct CoherentLift {
    pub group: Arc<FiniteGroup>,
    pub automorphisms: Vec<Morphism>,
    pub lifts: Vec<Permutation>,
}

pub fn coherent_lift(g: &Arc<FiniteGroup>) -> Result<CoherentLift> {
    coherent_lift_with(g, &Limits::DEFAULT, &mut Budget::unlimited())
}

pub fn coherent_lift_with(g: &Arc<FiniteGroup>, limits: &Limits, budget: &mut Budget) -> Result<CoherentLift> {
    let automorphisms = search::automorphisms_with(g, limits, budget)?;
    let lifts = automorphisms.iter().map(lift).collect::<Result<Vec<_>>>()?;
    Ok(CoherentLift {
        group: g.clone(),
        automorphisms,
        lifts,
    })
}

impl CoherentLift {
    /// `lift(f ∘ h) = lift(f) ∘ lift(h)` for the pair `(i, j)`.
    pub fn respects_composition(&self, i: usize, j: usize) -> bool {
        let fh = self.automorphisms[i]
            .compose(&self.automorphisms[j])
            .expect("same group");
        match lift(&fh) {
            Ok(p) => p == self.lifts[i].compose(&self.lifts[j]),
            Err(_) => false,
        }
    }

    pub fn is_injective(&self) -> bool {
        let mut sorted: Vec<&Permutation> = self.lifts.iter().collect();
        sorted.sort();
        sorted.windows(2).all(|w| w[0] != w[1])
    }

    /// Conjugation by `lift(f)` fixes `λ(G)` setwise and induces `f` on it.
    pub fn is_equivariant(&self, i: usize) -> bool {
        let g = &self.group;
        let p = &self.lifts[i];
        let p_inv = p.inverse();
        let f = &self.automorphisms[i];
        g.elements().all(|a| {
            let fa = f.apply(a);
            g.elements()
                .all(|x| p.apply(g.mul(a, p_inv.apply(x))) == g.mul(fa, x))
        })
    }
}

/// The automorphism sending `basis[i]` to `basis[π(i)]`, when the basis
/// generates `G` and the assignment extends.
pub fn basis_permutation_automorphism(
    g: &Arc<FiniteGroup>,
    basis: &[usize],
    pi: &Permutation,
) -> Result<Morphism> {
    if pi.degree() != basis.len() {
        return Err(Error::DegreeMismatch {
            expected: basis.len(),
            found: pi.degree(),
        });
    }
    let targets: Vec<usize> = (0..basis.len()).map(|i| basis[pi.apply(i)]).collect();
    let images = search::extend_generator_images(g, basis, &targets, g, true)
        .ok_or_else(|| Error::NotExtendable("basis permutation is not a homomorphism".into()))?;
    if images.iter().any(|&y| y == usize::MAX) {
        return Err(Error::InvalidInput("basis does not generate the group".into()));
    }
    Morphism::new(g.clone(), g.clone(), images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::oracle;
    use crate::subgroup::subgroups;

    fn arc(g: FiniteGroup) -> Arc<FiniteGroup> {
        Arc::new(g)
    }

    fn perm_index(g: &FiniteGroup, cycles: &[&[usize]]) -> usize {
        g.index_of(&Permutation::from_cycles(g.degree().unwrap(), cycles).unwrap())
            .unwrap()
    }

    #[test]
    fn identity_gives_identity_sigma() {
        let s3 = arc(families::symmetric(3));
        for k in subgroups(&s3, 6) {
            let cert = conjugator(&SubgroupIsomorphism::identity(k)).unwrap();
            assert!(cert.sigma.is_identity());
            assert!(cert.verify());
        }
    }

    #[test]
    fn klein_order_two_subgroups() {
        let v = arc(families::klein_four());
        let cert = conjugator_for(&v, &[0, 1], &[0, 2], &[0, 2]).unwrap();
        assert!(cert.verify());
        assert_eq!(cert.ambient_degree, 4);
    }

    #[test]
    fn sym3_transposition_subgroups() {
        let s3 = arc(families::symmetric(3));
        let t01 = perm_index(&s3, &[&[0, 1]]);
        let t12 = perm_index(&s3, &[&[1, 2]]);
        let cert = conjugator_for(&s3, &[0, t01], &[0, t12], &[0, t12]).unwrap();
        assert!(cert.verify());
        assert_eq!(cert.sigma.degree(), 6);
        let scan = oracle::conjugators_by_scan(&s3, &[t01], &[t12]);
        assert!(scan.contains(&cert.sigma.images().to_vec()));
    }

    #[test]
    fn inverse_on_three_cycle() {
        let s3 = arc(families::symmetric(3));
        let c = perm_index(&s3, &[&[0, 1, 2]]);
        let ci = s3.inv(c);
        let cert = conjugator_for(&s3, &[0, c, ci], &[0, c, ci], &[0, ci, c]).unwrap();
        assert!(cert.verify());
        assert!(!cert.sigma.is_identity());
    }

    #[test]
    fn composing_certificates() {
        let s3 = arc(families::symmetric(3));
        let inv = s3.involutions();
        let a = SubgroupHandle::new(s3.clone(), vec![0, inv[0]]).unwrap();
        let b = SubgroupHandle::new(s3.clone(), vec![0, inv[1]]).unwrap();
        let c = SubgroupHandle::new(s3.clone(), vec![0, inv[2]]).unwrap();
        let ab = SubgroupIsomorphism::new(a, b.clone(), vec![0, inv[1]]).unwrap();
        let bc = SubgroupIsomorphism::new(b, c, vec![0, inv[2]]).unwrap();
        let c1 = extend_partial_automorphism(&ab).unwrap();
        let c2 = extend_partial_automorphism(&bc).unwrap();
        let comp = c1.then(&c2).unwrap();
        assert!(comp.verify());
        assert_eq!(comp.iso.images(), &[0, inv[2]]);
    }

    #[test]
    fn rejects_bad_input() {
        let s3 = arc(families::symmetric(3));
        let inv = s3.involutions();
        let c = perm_index(&s3, &[&[0, 1, 2]]);
        // not a subgroup
        assert!(matches!(
            conjugator_for(&s3, &[0, inv[0], inv[1]], &[0, inv[0], inv[1]], &[0, inv[0], inv[1]]),
            Err(Error::NotSubgroup(_))
        ));
        // orders differ
        assert!(matches!(
            conjugator_for(&s3, &[0, inv[0]], &[0, c, s3.inv(c)], &[0, c]),
            Err(Error::NotIsomorphism(_))
        ));
        // not a homomorphism: sends the 3-cycle to the identity twice
        assert!(matches!(
            conjugator_for(&s3, &[0, c, s3.inv(c)], &[0, c, s3.inv(c)], &[0, 0, c]),
            Err(Error::NotIsomorphism(_))
        ));
    }

    #[test]
    fn scan_oracle_agrees_on_small_groups() {
        for g in [families::cyclic(4), families::klein_four(), families::symmetric(3), families::cyclic(6)] {
            let g = arc(g);
            let subs = subgroups(&g, g.order());
            for a in &subs {
                for b in &subs {
                    let (ga, gb) = (arc(a.to_group()), arc(b.to_group()));
                    let Some(iso) = search::isomorphism(&ga, &gb) else { continue };
                    let phi = SubgroupIsomorphism::from_local(a.clone(), b.clone(), &iso).unwrap();
                    let cert = conjugator(&phi).unwrap();
                    assert!(cert.verify());
                    let scan = oracle::conjugators_by_scan(&g, a.members(), phi.images());
                    assert!(scan.contains(&cert.sigma.images().to_vec()));
                }
            }
        }
    }

    #[test]
    fn lift_of_klein_is_coherent() {
        let v = arc(families::klein_four());
        let cl = coherent_lift(&v).unwrap();
        assert_eq!(cl.automorphisms.len(), 6);
        assert!(cl.lifts[0].is_identity());
        for i in 0..6 {
            assert!(cl.is_equivariant(i));
            for j in 0..6 {
                assert!(cl.respects_composition(i, j));
            }
        }
        assert!(cl.is_injective());
    }

    #[test]
    fn basis_permutations_of_f2_cubed() {
        let g = arc(families::elementary_abelian(2, 3));
        let basis = [1, 2, 4];
        let perms: Vec<Permutation> = oracle::all_permutations(3)
            .into_iter()
            .map(|v| Permutation::from_images(v).unwrap())
            .collect();
        let lifts: Vec<Permutation> = perms
            .iter()
            .map(|pi| lift(&basis_permutation_automorphism(&g, &basis, pi).unwrap()).unwrap())
            .collect();
        for (i, p) in perms.iter().enumerate() {
            for (j, q) in perms.iter().enumerate() {
                let pq = p.compose(q);
                let k = perms.iter().position(|r| *r == pq).unwrap();
                assert_eq!(lifts[k], lifts[i].compose(&lifts[j]));
            }
        }
        let mut sorted = lifts.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 6);
    }
}
