//! Subgroups as sorted member sets of a shared parent group.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::group::{closure_into, FiniteGroup};
use crate::perm::Permutation;

#[derive(Clone)]
pub struct SubgroupHandle {
    parent: Arc<FiniteGroup>,
    members: Vec<usize>,
}

impl PartialEq for SubgroupHandle {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
            && (Arc::ptr_eq(&self.parent, &other.parent) || self.parent == other.parent)
    }
}

impl Eq for SubgroupHandle {}

impl fmt::Debug for SubgroupHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SubgroupHandle")
            .field("order", &self.members.len())
            .field("members", &self.members)
            .finish()
    }
}

impl SubgroupHandle {
    /// Checks that `members` is a subgroup of `parent`.
    pub fn new(parent: Arc<FiniteGroup>, mut members: Vec<usize>) -> Result<SubgroupHandle> {
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            parent.check_element(m)?;
        }
        if members.first() != Some(&0) {
            return Err(Error::NotSubgroup("identity missing".into()));
        }
        let contains = |x: usize| members.binary_search(&x).is_ok();
        for &a in &members {
            if !contains(parent.inv(a)) {
                return Err(Error::NotSubgroup(format!("inverse of {a} missing")));
            }
        }
        // A finite subset containing the identity and closed under products
        // of members by its own generators is closed.
        let gens = parent_closure_generators(&parent, &members);
        for &a in &members {
            for &g in &gens {
                if !contains(parent.mul(a, g)) {
                    return Err(Error::NotSubgroup(format!(
                        "product of {a} and {g} missing"
                    )));
                }
            }
        }
        if closure_of(&parent, &gens).len() != members.len() {
            return Err(Error::NotSubgroup("not closed".into()));
        }
        Ok(SubgroupHandle { parent, members })
    }

    pub(crate) fn from_sorted_unchecked(parent: Arc<FiniteGroup>, members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        debug_assert_eq!(members.first(), Some(&0));
        SubgroupHandle { parent, members }
    }

    /// The subgroup generated by `gens`.
    pub fn generated(parent: Arc<FiniteGroup>, gens: &[usize]) -> Result<SubgroupHandle> {
        for &g in gens {
            parent.check_element(g)?;
        }
        let members = parent.closure(gens);
        Ok(SubgroupHandle { parent, members })
    }

    pub fn trivial(parent: Arc<FiniteGroup>) -> SubgroupHandle {
        SubgroupHandle {
            parent,
            members: vec![0],
        }
    }

    pub fn whole(parent: Arc<FiniteGroup>) -> SubgroupHandle {
        let members = parent.elements().collect();
        SubgroupHandle { parent, members }
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    /// Position of parent element `x` in the member list.
    pub fn local_index(&self, x: usize) -> Option<usize> {
        self.members.binary_search(&x).ok()
    }

    pub fn is_subset_of(&self, other: &SubgroupHandle) -> bool {
        self.members.len() <= other.members.len()
            && self.members.iter().all(|&x| other.contains(x))
    }

    pub fn is_abelian(&self) -> bool {
        let gens = parent_closure_generators(&self.parent, &self.members);
        gens.iter()
            .enumerate()
            .all(|(i, &a)| gens[i + 1..].iter().all(|&b| self.parent.commutes(a, b)))
    }

    /// `c K c⁻¹`.
    pub fn conjugate_by(&self, c: usize) -> SubgroupHandle {
        let mut members: Vec<usize> = self.members.iter().map(|&x| self.parent.conj(c, x)).collect();
        members.sort_unstable();
        SubgroupHandle {
            parent: self.parent.clone(),
            members,
        }
    }

    /// Image under a map of parent indices (an automorphism of the parent).
    pub fn image_under(&self, images: &[usize]) -> SubgroupHandle {
        let mut members: Vec<usize> = self.members.iter().map(|&x| images[x]).collect();
        members.sort_unstable();
        SubgroupHandle {
            parent: self.parent.clone(),
            members,
        }
    }

    pub fn is_normal(&self) -> bool {
        let gens = self.parent.generators();
        self.members
            .iter()
            .all(|&x| gens.iter().all(|&g| self.contains(self.parent.conj(g, x))))
    }

    /// A generating set for this subgroup, chosen greedily in member order.
    pub fn generators(&self) -> Vec<usize> {
        parent_closure_generators(&self.parent, &self.members)
    }

    /// The subgroup as a standalone group.
    ///
    /// Local element `i` is parent element `members()[i]`; for permutation
    /// parents the result is again a permutation group with the same points.
    pub fn to_group(&self) -> FiniteGroup {
        let parent = &self.parent;
        if let Some(degree) = parent.degree() {
            let perms: Vec<Permutation> = self
                .members
                .iter()
                .map(|&x| parent.permutation(x).unwrap().clone())
                .collect();
            let gens = self
                .generators()
                .into_iter()
                .map(|g| self.local_index(g).unwrap())
                .collect();
            return FiniteGroup::from_sorted_perms(degree, perms, gens);
        }
        let table: Vec<Vec<usize>> = self
            .members
            .iter()
            .map(|&a| {
                self.members
                    .iter()
                    .map(|&b| self.local_index(parent.mul(a, b)).unwrap())
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(&table).expect("subgroup table is a group")
    }
}

fn closure_of(parent: &FiniteGroup, gens: &[usize]) -> Vec<usize> {
    parent.closure(gens)
}

/// Greedy generators of the set spanned by `members` (which contains 0).
fn parent_closure_generators(parent: &FiniteGroup, members: &[usize]) -> Vec<usize> {
    let mut mark = vec![false; parent.order()];
    let mut gens = Vec::new();
    let mut covered = vec![false; parent.order()];
    covered[0] = true;
    for &x in members {
        if covered[x] {
            continue;
        }
        gens.push(x);
        mark.iter_mut().for_each(|m| *m = false);
        let c = closure_into(parent.order(), &gens, &mut mark, members.len(), |a, b| {
            parent.mul(a, b)
        });
        match c {
            Some(c) => {
                for y in c {
                    covered[y] = true;
                }
            }
            // Escaped the member set: not closed, report what we have.
            None => return gens,
        }
    }
    gens
}

/// `{ g ∈ G : g s = s g for all s ∈ S }`.
pub fn centralizer(parent: &Arc<FiniteGroup>, set: &[usize]) -> Result<SubgroupHandle> {
    for &s in set {
        parent.check_element(s)?;
    }
    // Commuting with a generating set of ⟨S⟩ suffices.
    let span = parent.closure(set);
    let gens = parent_closure_generators(parent, &span);
    let members = parent
        .elements()
        .filter(|&g| gens.iter().all(|&s| parent.commutes(g, s)))
        .collect();
    Ok(SubgroupHandle::from_sorted_unchecked(parent.clone(), members))
}

pub fn center(parent: &Arc<FiniteGroup>) -> SubgroupHandle {
    let gens = parent.generators().to_vec();
    centralizer(parent, &gens).expect("generators are elements")
}

/// All subgroups of order at most `max_order`, found by cyclic extension:
/// every subgroup is reached from a smaller one by adjoining one cyclic
/// generator. Sorted by (order, members).
pub fn subgroups(parent: &Arc<FiniteGroup>, max_order: usize) -> Vec<SubgroupHandle> {
    let n = parent.order();
    let mul = |a: usize, b: usize| parent.mul(a, b);
    let mut mark = vec![false; n];

    // One representative element per cyclic subgroup.
    let mut cyclic_reps = Vec::new();
    let mut cyclic_seen = BTreeSet::new();
    for x in 1..n {
        if parent.element_order(x) > max_order {
            continue;
        }
        mark.iter_mut().for_each(|m| *m = false);
        let c = closure_into(n, &[x], &mut mark, usize::MAX, mul).unwrap();
        if cyclic_seen.insert(c) {
            cyclic_reps.push(x);
        }
    }

    let mut found: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    let mut queue: Vec<(Vec<usize>, Vec<usize>)> = vec![(vec![0], Vec::new())];
    found.insert(vec![0], Vec::new());
    let mut head = 0;
    while head < queue.len() {
        let (members, gens) = queue[head].clone();
        head += 1;
        if members.len() * 2 > max_order {
            continue;
        }
        for &x in &cyclic_reps {
            if members.binary_search(&x).is_ok() {
                continue;
            }
            let mut ext = gens.clone();
            ext.push(x);
            mark.iter_mut().for_each(|m| *m = false);
            let Some(c) = closure_into(n, &ext, &mut mark, max_order, mul) else {
                continue;
            };
            if !found.contains_key(&c) {
                found.insert(c.clone(), ext.clone());
                queue.push((c, ext));
            }
        }
    }

    let mut out: Vec<SubgroupHandle> = found
        .into_keys()
        .filter(|m| m.len() <= max_order)
        .map(|m| SubgroupHandle::from_sorted_unchecked(parent.clone(), m))
        .collect();
    out.sort_by(|a, b| (a.order(), &a.members).cmp(&(b.order(), &b.members)));
    out
}
