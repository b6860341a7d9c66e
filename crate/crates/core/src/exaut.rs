//! The bounded two-sorted structure over a finite ambient group.
//!
//! First sort: automorphisms of the ambient group. Second sort: pairs
//! `(K, L)` with `K` a subgroup of order at most `max_order` and `L` a
//! subgroup of `Aut(K)`; `K` alone is identified with `(K, {id})`.
//!
//! Relations:
//! - `P_A`: the pairs with trivial `L`;
//! - `P_L`: one label per isomorphism class of `Aut(K)`;
//! - `≤_EA`: `K1 ≤ K2`, `K1` invariant under `L2`, and `L2` restricted to
//!   `K1` lands in `L1` (pairs with non-invariant `K1` are unrelated);
//! - `≤_A`: subgroup inclusion;
//! - `P_min`: the nontrivial subgroups minimal under inclusion.
//!
//! Operations: composition of automorphisms, `Op(f, K) = f(K)` and
//! `Op(f, (K, L)) = (f(K), { f π f⁻¹ : π ∈ L })`.
//!
//! Everything is bounded by the ambient stage and `max_order`; a missing
//! witness means "unknown within bounds", not a refutation.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Limits};
use crate::morphism::{same_group, Morphism};
use crate::search;
use crate::subgroup::{subgroups, SubgroupHandle};

/// A map on a subgroup's members in parent indices: `map[i]` is the image of
/// `members()[i]`.
pub type MemberMap = Vec<usize>;

/// `(K, L)` with `L ≤ Aut(K)`, maps stored on parent indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpandedPair {
    subgroup: SubgroupHandle,
    maps: Vec<MemberMap>,
}

impl ExpandedPair {
    /// Validates that every map is an automorphism of `K` and that the set
    /// is closed under composition and inversion.
    pub fn new(subgroup: SubgroupHandle, mut maps: Vec<MemberMap>) -> Result<ExpandedPair> {
        maps.sort_unstable();
        maps.dedup();
        let g = subgroup.parent().clone();
        for m in &maps {
            if m.len() != subgroup.order() {
                return Err(Error::InvalidInput("map length differs from subgroup order".into()));
            }
            let mut hit = vec![false; subgroup.order()];
            for &y in m {
                match subgroup.local_index(y) {
                    Some(i) if !hit[i] => hit[i] = true,
                    _ => return Err(Error::NotIsomorphism("map is not a bijection of K".into())),
                }
            }
            let at = |x: usize| m[subgroup.local_index(x).unwrap()];
            for &a in subgroup.members() {
                for &b in subgroup.members() {
                    if at(g.mul(a, b)) != g.mul(at(a), at(b)) {
                        return Err(Error::NotHomomorphism(format!(
                            "map fails on {a}·{b}"
                        )));
                    }
                }
            }
        }
        let pair = ExpandedPair { subgroup, maps };
        if !pair.maps.contains(&pair.subgroup.members().to_vec()) {
            return Err(Error::InvalidInput("L must contain the identity".into()));
        }
        let set: BTreeSet<&MemberMap> = pair.maps.iter().collect();
        for a in &pair.maps {
            if !set.contains(&pair.invert(a)) {
                return Err(Error::InvalidInput("L not closed under inversion".into()));
            }
            for b in &pair.maps {
                if !set.contains(&pair.compose(a, b)) {
                    return Err(Error::InvalidInput("L not closed under composition".into()));
                }
            }
        }
        Ok(pair)
    }

    /// `(K, {id_K})`.
    pub fn bare(subgroup: SubgroupHandle) -> ExpandedPair {
        let maps = vec![subgroup.members().to_vec()];
        ExpandedPair { subgroup, maps }
    }

    pub fn subgroup(&self) -> &SubgroupHandle {
        &self.subgroup
    }

    pub fn maps(&self) -> &[MemberMap] {
        &self.maps
    }

    pub fn is_bare(&self) -> bool {
        self.maps.len() == 1
    }

    fn at(&self, m: &MemberMap, x: usize) -> usize {
        m[self.subgroup.local_index(x).expect("member of K")]
    }

    fn compose(&self, a: &MemberMap, b: &MemberMap) -> MemberMap {
        b.iter().map(|&y| self.at(a, y)).collect()
    }

    fn invert(&self, a: &MemberMap) -> MemberMap {
        let mut inv = vec![0; a.len()];
        for (i, &y) in a.iter().enumerate() {
            inv[self.subgroup.local_index(y).unwrap()] = self.subgroup.members()[i];
        }
        inv
    }

    /// `L` restricted to `sub`, if `sub ≤ K` is invariant under every map.
    pub fn restrict_to(&self, sub: &SubgroupHandle) -> Option<BTreeSet<MemberMap>> {
        if !sub.is_subset_of(&self.subgroup) {
            return None;
        }
        let mut out = BTreeSet::new();
        for m in &self.maps {
            let r: MemberMap = sub.members().iter().map(|&x| self.at(m, x)).collect();
            if r.iter().any(|&y| !sub.contains(y)) {
                return None;
            }
            out.insert(r);
        }
        Some(out)
    }

    /// `≤_EA`.
    pub fn leq_ea(&self, other: &ExpandedPair) -> bool {
        match other.restrict_to(&self.subgroup) {
            Some(restricted) => restricted.iter().all(|r| self.maps.binary_search(r).is_ok()),
            None => false,
        }
    }

    pub fn is_cyclic(&self) -> bool {
        // L is cyclic iff some element's powers exhaust it.
        self.maps.iter().any(|m| {
            let mut count = 1;
            let mut cur = m.clone();
            let id = self.subgroup.members().to_vec();
            while cur != id {
                cur = self.compose(m, &cur);
                count += 1;
            }
            count == self.maps.len()
        })
    }
}

/// `Op(f, K) = f(K)` for an automorphism `f` of the ambient group.
pub fn op_subgroup(f: &Morphism, k: &SubgroupHandle) -> SubgroupHandle {
    k.image_under(f.images())
}

/// `Op(f, (K, L)) = (f(K), { f π f⁻¹ : π ∈ L })`.
pub fn op_apply(f: &Morphism, p: &ExpandedPair) -> Result<ExpandedPair> {
    if !f.is_endomorphism() || !same_group(f.domain(), p.subgroup.parent()) {
        return Err(Error::InvalidInput("automorphism of a different group".into()));
    }
    let image = op_subgroup(f, &p.subgroup);
    let f_inv = f.inverse()?;
    let mut maps: Vec<MemberMap> = p
        .maps
        .iter()
        .map(|m| {
            image
                .members()
                .iter()
                .map(|&y| f.apply(p.at(m, f_inv.apply(y))))
                .collect()
        })
        .collect();
    maps.sort_unstable();
    Ok(ExpandedPair {
        subgroup: image,
        maps,
    })
}

/// Per-subgroup data: automorphism group and its class label.
#[derive(Clone, Debug)]
pub struct SubgroupNode {
    pub subgroup: SubgroupHandle,
    /// Every automorphism of `K`, as member maps, sorted (identity first).
    pub automorphisms: Vec<MemberMap>,
    /// `P_L` label: index of the isomorphism class of `Aut(K)`.
    pub label: usize,
    pub minimal: bool,
}

impl SubgroupNode {
    pub fn aut_order(&self) -> usize {
        self.automorphisms.len()
    }
}

/// The subgroup layer shared by the full structure and the lattice data:
/// subgroups up to `max_order`, their automorphism groups and `P_L` labels.
#[derive(Clone, Debug)]
pub struct SubgroupLayer {
    pub ambient: Arc<FiniteGroup>,
    pub max_order: usize,
    pub nodes: Vec<SubgroupNode>,
    /// `Aut(K)` representatives, one per label.
    pub label_groups: Vec<Arc<FiniteGroup>>,
    aut_groups: Vec<Arc<FiniteGroup>>,
}

impl SubgroupLayer {
    pub fn build(ambient: &Arc<FiniteGroup>, max_order: usize, limits: &Limits, budget: &mut Budget) -> Result<Self> {
        if max_order == 0 {
            return Err(Error::InvalidInput("max_order must be at least 1".into()));
        }
        let subs = subgroups(ambient, max_order);
        let mut nodes = Vec::with_capacity(subs.len());
        let mut aut_groups = Vec::with_capacity(subs.len());
        let mut label_groups: Vec<Arc<FiniteGroup>> = Vec::new();
        // Label lookup keyed by cheap invariants, then confirmed by search.
        let mut by_invariant: BTreeMap<(usize, Vec<usize>, bool), Vec<usize>> = BTreeMap::new();
        for k in &subs {
            let local = Arc::new(k.to_group());
            let (aut, maps) = search::automorphism_group(&local, limits, budget)?;
            let aut = Arc::new(aut);
            let automorphisms: Vec<MemberMap> = maps
                .iter()
                .map(|m| m.images().iter().map(|&i| k.members()[i]).collect())
                .collect();
            let mut profile = aut.element_orders().to_vec();
            profile.sort_unstable();
            let key = (aut.order(), profile, aut.is_abelian());
            let candidates = by_invariant.entry(key).or_default();
            let mut label = None;
            for &l in candidates.iter() {
                if search::are_isomorphic(&aut, &label_groups[l], budget)? {
                    label = Some(l);
                    break;
                }
            }
            let label = match label {
                Some(l) => l,
                None => {
                    label_groups.push(aut.clone());
                    candidates.push(label_groups.len() - 1);
                    label_groups.len() - 1
                }
            };
            nodes.push(SubgroupNode {
                subgroup: k.clone(),
                automorphisms,
                label,
                minimal: false,
            });
            aut_groups.push(aut);
        }
        for i in 0..nodes.len() {
            let k = &nodes[i].subgroup;
            nodes[i].minimal = !k.is_trivial()
                && nodes
                    .iter()
                    .all(|n| n.subgroup.is_trivial() || n.subgroup == *k || !n.subgroup.is_subset_of(k));
        }
        Ok(SubgroupLayer {
            ambient: ambient.clone(),
            max_order,
            nodes,
            label_groups,
            aut_groups,
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn index_of(&self, members: &[usize]) -> Option<usize> {
        self.nodes.iter().position(|n| n.subgroup.members() == members)
    }

    /// `Aut(K_i)` as an abstract group (local indices follow `automorphisms`).
    pub fn aut_group(&self, i: usize) -> &Arc<FiniteGroup> {
        &self.aut_groups[i]
    }

    /// `≤_A`.
    pub fn leq_a(&self, i: usize, j: usize) -> bool {
        self.nodes[i].subgroup.is_subset_of(&self.nodes[j].subgroup)
    }
}

#[derive(Clone, Debug)]
pub struct ExAutStructure {
    layer: SubgroupLayer,
    /// First sort: automorphisms of the ambient group, sorted.
    automorphisms: Vec<Morphism>,
    /// Second sort, grouped by subgroup.
    pairs: Vec<ExpandedPair>,
    pair_subgroup: Vec<usize>,
    pair_range: Vec<core::ops::Range<usize>>,
}

pub fn build_exaut(ambient: &Arc<FiniteGroup>, max_order: usize) -> Result<ExAutStructure> {
    build_exaut_with(ambient, max_order, &Limits::DEFAULT, &mut Budget::unlimited())
}

pub fn build_exaut_with(
    ambient: &Arc<FiniteGroup>,
    max_order: usize,
    limits: &Limits,
    budget: &mut Budget,
) -> Result<ExAutStructure> {
    let automorphisms = search::automorphisms_with(ambient, limits, budget)?;
    let layer = SubgroupLayer::build(ambient, max_order, limits, budget)?;
    let mut pairs = Vec::new();
    let mut pair_subgroup = Vec::new();
    let mut pair_range = Vec::new();
    for (i, node) in layer.nodes.iter().enumerate() {
        let start = pairs.len();
        let aut = layer.aut_group(i).clone();
        for l in subgroups(&aut, aut.order()) {
            let maps = l.members().iter().map(|&a| node.automorphisms[a].clone()).collect();
            pairs.push(ExpandedPair {
                subgroup: node.subgroup.clone(),
                maps,
            });
            pair_subgroup.push(i);
        }
        // subgroups() lists the trivial subgroup first, so the bare pair of
        // each K comes first in its range.
        pair_range.push(start..pairs.len());
    }
    for p in &mut pairs {
        p.maps.sort_unstable();
    }
    Ok(ExAutStructure {
        layer,
        automorphisms,
        pairs,
        pair_subgroup,
        pair_range,
    })
}

/// Which side of `K` a lattice neighbour lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    Below,
    Above,
}

/// Bounded quantifier-free type of a subgroup: its own label and minimality,
/// plus the multiset of (direction, label, minimal) over every enumerated
/// proper subgroup and proper overgroup.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QfType {
    pub order_class: usize,
    pub minimal: bool,
    pub lattice_fingerprint: Vec<(Direction, usize, bool)>,
}

pub fn qf_equal(a: &QfType, b: &QfType) -> bool {
    a == b
}

impl ExAutStructure {
    pub fn ambient(&self) -> &Arc<FiniteGroup> {
        &self.layer.ambient
    }

    pub fn max_order(&self) -> usize {
        self.layer.max_order
    }

    pub fn layer(&self) -> &SubgroupLayer {
        &self.layer
    }

    pub fn subgroup_count(&self) -> usize {
        self.layer.len()
    }

    pub fn subgroup(&self, i: usize) -> &SubgroupHandle {
        &self.layer.nodes[i].subgroup
    }

    pub fn node(&self, i: usize) -> &SubgroupNode {
        &self.layer.nodes[i]
    }

    pub fn subgroup_index(&self, members: &[usize]) -> Option<usize> {
        self.layer.index_of(members)
    }

    pub fn automorphisms(&self) -> &[Morphism] {
        &self.automorphisms
    }

    pub fn pairs(&self) -> &[ExpandedPair] {
        &self.pairs
    }

    pub fn pair(&self, p: usize) -> &ExpandedPair {
        &self.pairs[p]
    }

    /// The subgroup index of pair `p`.
    pub fn pair_subgroup(&self, p: usize) -> usize {
        self.pair_subgroup[p]
    }

    /// Pair indices `(K_i, L)` for every `L ≤ Aut(K_i)`.
    pub fn pairs_of(&self, i: usize) -> core::ops::Range<usize> {
        self.pair_range[i].clone()
    }

    /// The pair identified with `K_i` itself.
    pub fn bare_pair(&self, i: usize) -> usize {
        self.pair_range[i].start
    }

    pub fn pair_index(&self, p: &ExpandedPair) -> Option<usize> {
        let i = self.subgroup_index(p.subgroup.members())?;
        self.pairs_of(i).find(|&q| self.pairs[q].maps == p.maps)
    }

    // Relations.

    pub fn p_a(&self, p: usize) -> bool {
        self.pairs[p].is_bare()
    }

    pub fn p_l(&self, i: usize) -> usize {
        self.layer.nodes[i].label
    }

    pub fn leq_ea(&self, p: usize, q: usize) -> bool {
        let (i, j) = (self.pair_subgroup[p], self.pair_subgroup[q]);
        self.layer.leq_a(i, j) && self.pairs[p].leq_ea(&self.pairs[q])
    }

    pub fn leq_a(&self, i: usize, j: usize) -> bool {
        self.layer.leq_a(i, j)
    }

    pub fn p_min(&self, i: usize) -> bool {
        self.layer.nodes[i].minimal
    }

    // Operations.

    /// Composition in the first sort: index of `auts[f] ∘ auts[g]`.
    pub fn compose(&self, f: usize, g: usize) -> usize {
        let c = self.automorphisms[f].compose(&self.automorphisms[g]).expect("same group");
        self.automorphisms
            .binary_search_by(|m| m.images().cmp(c.images()))
            .expect("Aut(G) is closed")
    }

    /// `Op(f, K_i)` as a subgroup index.
    pub fn op_subgroup(&self, f: usize, i: usize) -> Result<usize> {
        let image = op_subgroup(&self.automorphisms[f], self.subgroup(i));
        self.subgroup_index(image.members())
            .ok_or(Error::ResultOutsideBounds {
                order: image.order(),
                max_order: self.max_order(),
            })
    }

    /// `Op(f, pair p)` as a pair index.
    pub fn op_pair(&self, f: usize, p: usize) -> Result<usize> {
        let image = op_apply(&self.automorphisms[f], &self.pairs[p])?;
        self.pair_index(&image).ok_or(Error::ResultOutsideBounds {
            order: image.subgroup.order(),
            max_order: self.max_order(),
        })
    }

    pub fn qf_type(&self, i: usize) -> QfType {
        let nodes = &self.layer.nodes;
        let mut fingerprint: Vec<(Direction, usize, bool)> = Vec::new();
        for (j, n) in nodes.iter().enumerate() {
            if j == i {
                continue;
            }
            if self.leq_a(j, i) {
                fingerprint.push((Direction::Below, n.label, n.minimal));
            } else if self.leq_a(i, j) {
                fingerprint.push((Direction::Above, n.label, n.minimal));
            }
        }
        fingerprint.sort_unstable();
        QfType {
            order_class: nodes[i].label,
            minimal: nodes[i].minimal,
            lattice_fingerprint: fingerprint,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn s3_structure() -> ExAutStructure {
        build_exaut(&Arc::new(families::symmetric(3)), 6).unwrap()
    }

    #[test]
    fn sym3_minimal_subgroups() {
        let s = s3_structure();
        let minimal: Vec<usize> = (0..s.subgroup_count())
            .filter(|&i| s.p_min(i))
            .map(|i| s.subgroup(i).order())
            .collect();
        assert_eq!(minimal, vec![2, 2, 2, 3]);
        assert!(!s.p_min(0), "the trivial subgroup is excluded");
    }

    #[test]
    fn sym3_labels() {
        let s = s3_structure();
        let order2: Vec<usize> = (0..s.subgroup_count())
            .filter(|&i| s.subgroup(i).order() == 2)
            .map(|i| s.p_l(i))
            .collect();
        assert_eq!(order2.len(), 3);
        assert!(order2.iter().all(|&l| l == order2[0]));
        // Aut(1) and Aut(C2) are both trivial.
        assert_eq!(s.p_l(0), order2[0]);
        let c3 = (0..s.subgroup_count()).find(|&i| s.subgroup(i).order() == 3).unwrap();
        assert_ne!(s.p_l(c3), order2[0]);
        // Aut(S3) ≅ S3: six pairs (one per subgroup of Aut) for the top.
        let top = s.subgroup_count() - 1;
        assert_eq!(s.pairs_of(top).len(), 6);
        assert!(s.p_a(s.bare_pair(top)));
    }

    #[test]
    fn op_identity_and_conjugation() {
        let s = s3_structure();
        let g = s.ambient().clone();
        let id = Morphism::identity(g.clone());
        for p in s.pairs() {
            assert_eq!(&op_apply(&id, p).unwrap(), p);
        }
        let conj = Morphism::conjugation(g.clone(), 1).unwrap();
        for p in s.pairs() {
            let q = op_apply(&conj, p).unwrap();
            assert_eq!(q.subgroup().members(), p.subgroup().conjugate_by(1).members());
            let revalidated = ExpandedPair::new(q.subgroup().clone(), q.maps().to_vec()).unwrap();
            assert_eq!(revalidated, q);
        }
    }

    #[test]
    fn op_preserves_leq_ea_on_sym3() {
        let s = s3_structure();
        let n = s.pairs().len();
        for f in 0..s.automorphisms().len() {
            let images: Vec<usize> = (0..n).map(|p| s.op_pair(f, p).unwrap()).collect();
            for p in 0..n {
                for q in 0..n {
                    assert_eq!(s.leq_ea(p, q), s.leq_ea(images[p], images[q]));
                }
            }
        }
    }

    #[test]
    fn qf_types() {
        let s = s3_structure();
        let order = |i: usize| s.subgroup(i).order();
        let twos: Vec<usize> = (0..s.subgroup_count()).filter(|&i| order(i) == 2).collect();
        let c3 = (0..s.subgroup_count()).find(|&i| order(i) == 3).unwrap();
        assert!(qf_equal(&s.qf_type(twos[0]), &s.qf_type(twos[1])));
        assert!(!qf_equal(&s.qf_type(twos[0]), &s.qf_type(c3)));
        assert!(s.qf_type(c3).minimal);
    }

    #[test]
    fn pair_validation() {
        let s = s3_structure();
        let top = s.subgroup(s.subgroup_count() - 1).clone();
        let full = s.pair(s.pairs_of(s.subgroup_count() - 1).end - 1).clone();
        assert_eq!(full.maps().len(), 6);
        assert!(ExpandedPair::new(top.clone(), full.maps().to_vec()).is_ok());
        let without_id: Vec<MemberMap> = full.maps().iter().skip(1).take(1).cloned().collect();
        assert!(ExpandedPair::new(top, without_id).is_err());
    }
}
