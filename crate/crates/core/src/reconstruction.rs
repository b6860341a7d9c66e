//! Automorphisms rebuilt from their action on involutions, and the probes
//! around them.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::families;
use crate::group::FiniteGroup;
use crate::morphism::{same_group, Morphism, PermRepresentation};
use crate::perm::Permutation;
use crate::search;
use crate::subgroup::{centralizer, SubgroupHandle};
use crate::tower;

/// `K0 = ⟨xs⟩` embedded into `Alt(2|K0|)`.
#[derive(Clone, Debug)]
pub struct AlternatingEnvelope {
    pub subgroup: SubgroupHandle,
    /// `2|K0|`.
    pub degree: usize,
    /// On `K0` in local indices (`subgroup.members()[i]` is local `i`).
    pub representation: PermRepresentation,
    /// The image of each input element, in input order.
    pub images: Vec<Permutation>,
}

pub fn alternating_envelope(xs: &[usize], g: &Arc<FiniteGroup>) -> Result<AlternatingEnvelope> {
    for &x in xs {
        g.check_element(x)?;
    }
    let subgroup = SubgroupHandle::generated(g.clone(), xs)?;
    let local = Arc::new(subgroup.to_group());
    let representation = tower::embed_into_alternating(&local);
    let images = xs
        .iter()
        .map(|&x| representation.image(subgroup.local_index(x).expect("generator")).clone())
        .collect();
    Ok(AlternatingEnvelope {
        degree: representation.degree(),
        subgroup,
        representation,
        images,
    })
}

/// A partial injective map between involutions of one group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutionMap {
    group: Arc<FiniteGroup>,
    assignment: BTreeMap<usize, usize>,
}

impl InvolutionMap {
    pub fn new(group: Arc<FiniteGroup>, assignment: BTreeMap<usize, usize>) -> Result<Self> {
        let mut hit = vec![false; group.order()];
        for (&x, &y) in &assignment {
            group.check_element(x)?;
            group.check_element(y)?;
            if group.element_order(x) != 2 || group.element_order(y) != 2 {
                return Err(Error::InvalidInput(format!("{x} -> {y} is not between involutions")));
            }
            if core::mem::replace(&mut hit[y], true) {
                return Err(Error::InvalidInput(format!("{y} assigned twice")));
            }
        }
        Ok(InvolutionMap { group, assignment })
    }

    /// The restriction of an automorphism to the involutions.
    pub fn restriction_of(f: &Morphism) -> Result<Self> {
        if !f.is_endomorphism() {
            return Err(Error::InvalidInput("not an endomorphism".into()));
        }
        let g = f.domain().clone();
        let assignment = g.involutions().into_iter().map(|x| (x, f.apply(x))).collect();
        Self::new(g, assignment)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn assignment(&self) -> &BTreeMap<usize, usize> {
        &self.assignment
    }

    pub fn get(&self, x: usize) -> Option<usize> {
        self.assignment.get(&x).copied()
    }
}

/// The automorphism extending `m`, built word by word.
///
/// Elements are reached breadth-first from the identity, multiplying on the
/// right by involutions in ascending order, and mapped letter by letter.
/// Every edge `x -> x t` is then checked against `m(t)`, which is exactly
/// the homomorphism condition on a generating set.
pub fn reconstruct_from_involutions(m: &InvolutionMap) -> Result<Morphism> {
    let g = m.group();
    let invs = g.involutions();
    if g.closure(&invs).len() != g.order() {
        return Err(Error::NotGenerated);
    }
    let letters: Vec<(usize, usize)> = invs
        .iter()
        .map(|&t| {
            m.get(t)
                .map(|u| (t, u))
                .ok_or_else(|| Error::InvalidInput(format!("involution {t} is unassigned")))
        })
        .collect::<Result<_>>()?;
    const NONE: usize = usize::MAX;
    let mut images = vec![NONE; g.order()];
    images[0] = 0;
    let mut queue = vec![0];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for &(t, u) in &letters {
            let y = g.mul(x, t);
            if images[y] == NONE {
                images[y] = g.mul(images[x], u);
                queue.push(y);
            }
        }
    }
    for x in g.elements() {
        for &(t, u) in &letters {
            if images[g.mul(x, t)] != g.mul(images[x], u) {
                return Err(Error::NotExtendable(format!(
                    "the word for {} maps inconsistently",
                    g.mul(x, t)
                )));
            }
        }
    }
    let f = Morphism::new(g.clone(), g.clone(), images)?;
    if !f.is_bijective() {
        return Err(Error::NotExtendable("extension is not injective".into()));
    }
    Ok(f)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PairChecks {
    pub order_two: bool,
    pub commuting: bool,
    pub f_maps_a_to_b: bool,
    pub outside_k: bool,
}

impl PairChecks {
    pub fn all(&self) -> bool {
        self.order_two && self.commuting && self.f_maps_a_to_b && self.outside_k
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairSearchResult {
    pub found: bool,
    pub pair: Option<(usize, usize)>,
    pub checks: PairChecks,
}

/// Recomputes the four checks for a candidate `(a, b)`: distinct
/// involutions, commuting, `f(a) = b`, both in `C_G(K) − K`.
pub fn check_pair(f: &Morphism, k: &SubgroupHandle, a: usize, b: usize) -> Result<PairChecks> {
    let g = k.parent();
    let c = centralizer(g, k.members())?;
    let outside = |x: usize| c.contains(x) && !k.contains(x);
    Ok(PairChecks {
        order_two: a != b && g.element_order(a) == 2 && g.element_order(b) == 2,
        commuting: g.commutes(a, b),
        f_maps_a_to_b: f.apply(a) == b,
        outside_k: outside(a) && outside(b),
    })
}

/// The least involution `a ∈ C_G(K) − K` for which `b = f(a)` completes a
/// valid pair. Exhaustion gives `found = false`.
pub fn find_commuting_involution_pair(f: &Morphism, k: &SubgroupHandle) -> Result<PairSearchResult> {
    let g = k.parent();
    if !f.is_automorphism() || !same_group(f.domain(), g) {
        return Err(Error::InvalidInput("f must be an automorphism of K's parent".into()));
    }
    let c = centralizer(g, k.members())?;
    for &a in c.members() {
        if k.contains(a) || g.element_order(a) != 2 {
            continue;
        }
        let b = f.apply(a);
        let checks = check_pair(f, k, a, b)?;
        if checks.all() {
            return Ok(PairSearchResult {
                found: true,
                pair: Some((a, b)),
                checks,
            });
        }
    }
    Ok(PairSearchResult {
        found: false,
        pair: None,
        checks: PairChecks::default(),
    })
}

/// The order of `g⁻¹ ∘ f⁻¹ ∘ g ∘ f`.
pub fn commutator_order_probe(f: &Morphism, g: &Morphism) -> Result<usize> {
    if !f.is_automorphism() || !g.is_automorphism() || !same_group(f.domain(), g.domain()) {
        return Err(Error::InvalidInput("f and g must be automorphisms of one group".into()));
    }
    let word = g.inverse()?.compose(&f.inverse()?)?.compose(g)?.compose(f)?;
    word.automorphism_order()
}

/// A non-inner automorphism of `Sym(6)`.
///
/// Sends `(0 1)` to a product of three transpositions and `(0 1 2 3 4 5)`
/// to an element of order six, trying candidates in ascending order until
/// the generator images extend to an automorphism.
pub fn outer_s6() -> Result<Morphism> {
    outer_s6_with(&mut Budget::unlimited())
}

pub fn outer_s6_with(budget: &mut Budget) -> Result<Morphism> {
    let s6 = Arc::new(families::symmetric(6));
    let find = |p: Result<Permutation>| -> Result<usize> {
        p.and_then(|p| s6.index_of(&p).ok_or(Error::ConstructionFailed("missing generator".into())))
    };
    let t = find(Permutation::from_cycles(6, &[&[0, 1]]))?;
    let c = find(Permutation::from_cycles(6, &[&[0, 1, 2, 3, 4, 5]]))?;
    let triple: Vec<usize> = s6
        .involutions()
        .into_iter()
        .filter(|&x| s6.permutation(x).is_some_and(|p| p.fixed_points() == 0))
        .collect();
    let order_six: Vec<usize> = s6.elements().filter(|&x| s6.element_order(x) == 6).collect();
    for &u in &triple {
        for &v in &order_six {
            budget.tick(1)?;
            let Some(images) = search::extend_generator_images(&s6, &[t, c], &[u, v], &s6, true) else {
                continue;
            };
            if images.contains(&usize::MAX) {
                continue;
            }
            let f = Morphism::new(s6.clone(), s6.clone(), images)?;
            if f.is_bijective() && search::inner_conjugator(&s6, &f).is_none() {
                return Ok(f);
            }
        }
    }
    Err(Error::ConstructionFailed("no outer automorphism found".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn arc(g: FiniteGroup) -> Arc<FiniteGroup> {
        Arc::new(g)
    }

    fn index(g: &FiniteGroup, degree: usize, cycles: &[&[usize]]) -> usize {
        g.index_of(&Permutation::from_cycles(degree, cycles).unwrap()).unwrap()
    }

    #[test]
    fn envelopes() {
        let s4 = arc(families::symmetric(4));
        let x = index(&s4, 4, &[&[0, 1], &[2, 3]]);
        let e = alternating_envelope(&[x], &s4).unwrap();
        assert_eq!((e.subgroup.order(), e.degree), (2, 4));
        assert!(e.representation.all_even() && e.representation.is_injective());
        let e = alternating_envelope(&[], &s4).unwrap();
        assert_eq!(e.degree, 2);
        let s3 = arc(families::symmetric(3));
        let e = alternating_envelope(&[1, 2], &s3).unwrap();
        assert_eq!(e.degree, 12);
        assert!(e.images.iter().all(|p| p.is_even()));
        assert!(e.representation.is_homomorphism());
    }

    #[test]
    fn reconstructs_every_automorphism_of_small_symmetric_groups() {
        for n in 3..=5 {
            let g = arc(families::symmetric(n));
            for f in search::automorphisms(&g).unwrap() {
                let m = InvolutionMap::restriction_of(&f).unwrap();
                assert_eq!(reconstruct_from_involutions(&m).unwrap(), f);
            }
        }
    }

    #[test]
    fn rejects_forged_maps() {
        let s4 = arc(families::symmetric(4));
        let a = index(&s4, 4, &[&[0, 1]]);
        let b = index(&s4, 4, &[&[0, 1], &[2, 3]]);
        let mut assignment: BTreeMap<usize, usize> = s4.involutions().into_iter().map(|x| (x, x)).collect();
        assignment.insert(a, b);
        assignment.insert(b, a);
        let m = InvolutionMap::new(s4.clone(), assignment).unwrap();
        assert!(matches!(reconstruct_from_involutions(&m), Err(Error::NotExtendable(_))));
        let c4 = arc(families::cyclic(4));
        let m = InvolutionMap::new(c4, [(2, 2)].into_iter().collect()).unwrap();
        assert_eq!(reconstruct_from_involutions(&m).unwrap_err(), Error::NotGenerated);
    }

    #[test]
    fn conjugation_recovered() {
        let s4 = arc(families::symmetric(4));
        let f = Morphism::conjugation(s4.clone(), index(&s4, 4, &[&[0, 1]])).unwrap();
        let m = InvolutionMap::restriction_of(&f).unwrap();
        assert_eq!(reconstruct_from_involutions(&m).unwrap().images(), f.images());
    }

    #[test]
    fn pair_search() {
        let s4 = arc(families::symmetric(4));
        let k = SubgroupHandle::trivial(s4.clone());
        let id = Morphism::identity(s4.clone());
        assert!(!find_commuting_involution_pair(&id, &k).unwrap().found);
        let f = Morphism::conjugation(s4.clone(), index(&s4, 4, &[&[0, 1, 2]])).unwrap();
        let r = find_commuting_involution_pair(&f, &k).unwrap();
        assert!(r.found);
        let (a, b) = r.pair.unwrap();
        assert!(check_pair(&f, &k, a, b).unwrap().all());
    }

    #[test]
    fn commutator_probe() {
        let s3 = arc(families::symmetric(3));
        let f = Morphism::conjugation(s3.clone(), index(&s3, 3, &[&[0, 1]])).unwrap();
        let g = Morphism::conjugation(s3.clone(), index(&s3, 3, &[&[0, 2]])).unwrap();
        assert_eq!(commutator_order_probe(&f, &f).unwrap(), 1);
        assert_eq!(commutator_order_probe(&f, &g).unwrap(), 3);
        let c5 = arc(families::cyclic(5));
        let auts = search::automorphisms(&c5).unwrap();
        assert_eq!(commutator_order_probe(&auts[1], &auts[2]).unwrap(), 1);
    }

    #[test]
    fn outer_automorphism_of_sym6() {
        let f = outer_s6().unwrap();
        let s6 = f.domain().clone();
        assert!(f.is_automorphism());
        assert!(search::inner_conjugator(&s6, &f).is_none());
        assert!(oracle::inner_conjugator_by_scan(&s6, f.images()).is_none());
        let square = f.compose(&f).unwrap();
        assert!(search::inner_conjugator(&s6, &square).is_some());
        let m = InvolutionMap::restriction_of(&f).unwrap();
        assert_eq!(reconstruct_from_involutions(&m).unwrap(), f);
    }
}
