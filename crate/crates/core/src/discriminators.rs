//! Recognising group properties from lattice and automorphism-class data.
//!
//! Each discriminator answers from the expanded data only (subgroup
//! inclusions, `P_L` labels, minimality, `|Aut(K)|`), and carries the direct
//! computation alongside so every verdict can be cross-checked.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::exaut::{ExAutStructure, SubgroupLayer};
use crate::group::{FiniteGroup, Limits};
use crate::morphism::Morphism;
use crate::search;
use crate::subgroup::{center, SubgroupHandle};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Answer {
    True,
    False,
    /// No witness within the enumerated bounds.
    Unknown,
}

impl Answer {
    pub fn from_bool(b: bool) -> Answer {
        if b {
            Answer::True
        } else {
            Answer::False
        }
    }

    pub fn as_bool(self) -> Option<bool> {
        match self {
            Answer::True => Some(true),
            Answer::False => Some(false),
            Answer::Unknown => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Answer::True => "true",
            Answer::False => "false",
            Answer::Unknown => "unknown-within-bounds",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict<W> {
    pub answer: Answer,
    pub witness: Option<W>,
    /// The direct computation, when one was made.
    pub ground_truth: Option<bool>,
}

impl<W> Verdict<W> {
    /// A definite answer never contradicts the ground truth.
    pub fn is_consistent(&self) -> bool {
        match (self.answer.as_bool(), self.ground_truth) {
            (Some(a), Some(g)) => a == g,
            _ => true,
        }
    }
}

/// Direct facts about a node, kept apart from the lattice data the
/// discriminators read.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeGround {
    pub order: usize,
    pub abelian: bool,
    pub cyclic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeNode {
    pub members: Vec<usize>,
    pub label: usize,
    pub minimal: bool,
    pub aut_order: usize,
    /// Whether every subgroup of this node is present in the data.
    pub complete_below: bool,
    pub ground: NodeGround,
}

/// Subgroup nodes with `P_L` labels, minimality and `≤_A`.
#[derive(Clone, Debug)]
pub struct LatticeData {
    nodes: Vec<LatticeNode>,
    /// `below[i]`: nodes `j` with `K_j ≤ K_i`, including `i`, ascending.
    below: Vec<Vec<usize>>,
}

impl LatticeData {
    pub fn from_layer(layer: &SubgroupLayer) -> LatticeData {
        let nodes: Vec<LatticeNode> = layer
            .nodes
            .iter()
            .map(|n| {
                let k = &n.subgroup;
                let orders = k.parent().element_orders();
                LatticeNode {
                    members: k.members().to_vec(),
                    label: n.label,
                    minimal: n.minimal,
                    aut_order: n.aut_order(),
                    complete_below: true,
                    ground: NodeGround {
                        order: k.order(),
                        abelian: k.is_abelian(),
                        cyclic: k.members().iter().any(|&x| orders[x] == k.order()),
                    },
                }
            })
            .collect();
        let below = (0..nodes.len())
            .map(|i| (0..nodes.len()).filter(|&j| layer.leq_a(j, i)).collect())
            .collect();
        LatticeData { nodes, below }
    }

    pub fn from_structure(s: &ExAutStructure) -> LatticeData {
        Self::from_layer(s.layer())
    }

    /// The full lattice of `g`.
    pub fn of_group(g: &Arc<FiniteGroup>) -> Result<LatticeData> {
        let layer = SubgroupLayer::build(g, g.order(), &Limits::DEFAULT, &mut Budget::unlimited())?;
        Ok(Self::from_layer(&layer))
    }

    /// Keeps only the listed nodes; a node whose subgroups were dropped is
    /// marked incomplete.
    pub fn restrict(&self, keep: &[usize]) -> LatticeData {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let renumber: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(n, &o)| (o, n)).collect();
        let nodes = keep
            .iter()
            .map(|&o| {
                let mut node = self.nodes[o].clone();
                node.complete_below &= self.below[o].iter().all(|j| renumber.contains_key(j));
                node
            })
            .collect();
        let below = keep
            .iter()
            .map(|&o| self.below[o].iter().filter_map(|j| renumber.get(j).copied()).collect())
            .collect();
        LatticeData { nodes, below }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, i: usize) -> &LatticeNode {
        &self.nodes[i]
    }

    pub fn nodes(&self) -> &[LatticeNode] {
        &self.nodes
    }

    pub fn below(&self, i: usize) -> &[usize] {
        &self.below[i]
    }

    /// The node with no proper subgroup present, i.e. the trivial subgroup.
    pub fn bottom(&self) -> Option<usize> {
        (0..self.len()).find(|&i| self.below[i] == [i])
    }

    /// A node that contains every other node.
    pub fn top(&self) -> Option<usize> {
        (0..self.len()).find(|&i| self.below[i].len() == self.len())
    }

    fn is_trivial(&self, i: usize) -> bool {
        self.below[i].len() == 1
    }

    fn require_complete(&self, i: usize) -> Result<()> {
        if self.nodes[i].complete_below {
            Ok(())
        } else {
            Err(Error::IncompleteLattice(i))
        }
    }

    /// Primes `aut_order + 1` over the minimal nodes below `i`, with the
    /// number of minimal nodes carrying each.
    fn minimal_primes(&self, i: usize) -> BTreeMap<usize, usize> {
        let mut primes = BTreeMap::new();
        for &j in &self.below[i] {
            if self.nodes[j].minimal {
                *primes.entry(self.nodes[j].aut_order + 1).or_insert(0) += 1;
            }
        }
        primes
    }
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

pub fn totient(n: usize) -> usize {
    if n == 0 {
        return 0;
    }
    (1..=n).filter(|&a| crate::perm::gcd(a, n) == 1).count()
}

/// A nontrivial node with nothing strictly between it and the bottom has
/// prime order `p = |Aut| + 1`.
pub fn is_prime_order_qf(d: &LatticeData, node: usize) -> Verdict<usize> {
    let nontrivial = !d.is_trivial(node);
    let no_proper = d.below[node].iter().all(|&j| j == node || d.is_trivial(j));
    let prime = nontrivial && no_proper;
    Verdict {
        answer: Answer::from_bool(prime),
        witness: prime.then(|| d.nodes[node].aut_order + 1),
        ground_truth: Some(is_prime(d.nodes[node].ground.order)),
    }
}

/// Abelian, and a unique minimal subgroup per prime.
pub fn is_cyclic_qf(d: &LatticeData, node: usize) -> Result<Verdict<()>> {
    d.require_complete(node)?;
    let cyclic = d.nodes[node].ground.abelian && d.minimal_primes(node).values().all(|&c| c == 1);
    Ok(Verdict {
        answer: Answer::from_bool(cyclic),
        witness: None,
        ground_truth: Some(d.nodes[node].ground.cyclic),
    })
}

/// `∏ p^n_p`, where `n_p` counts the nontrivial nodes below `node` whose only
/// prime is `p` (the `p`-power subgroups).
pub fn cyclic_order_qf(d: &LatticeData, node: usize) -> Result<usize> {
    if is_cyclic_qf(d, node)?.answer != Answer::True {
        return Err(Error::NotCyclic(node));
    }
    let mut order = 1;
    for &p in d.minimal_primes(node).keys() {
        let count = d.below[node]
            .iter()
            .filter(|&&j| {
                let primes = d.minimal_primes(j);
                primes.len() == 1 && primes.contains_key(&p)
            })
            .count();
        order *= p.pow(count as u32);
    }
    Ok(order)
}

/// `1 + Σ φ(|C|)` over the nontrivial cyclic nodes `C` below `node`.
pub fn order_qf(d: &LatticeData, node: usize) -> Result<usize> {
    d.require_complete(node)?;
    let mut order = 1;
    for &j in &d.below[node] {
        if !d.is_trivial(j) && is_cyclic_qf(d, j)?.answer == Answer::True {
            order += totient(cyclic_order_qf(d, j)?);
        }
    }
    Ok(order)
}

/// A cyclic `L1 ≤ Aut(K)` (pair index) and an overgroup `K*` (subgroup
/// index) such that no `L2 ≤ Aut(K*)` restricts exactly onto `L1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AbelianWitness {
    pub l1: usize,
    pub overgroup: usize,
}

/// Searches for an [`AbelianWitness`] over every cyclic `L1 ≤ Aut(K)` and
/// every proper overgroup of order at most `max_overgroup_order` present in
/// `s`. A found witness gives `True`; exhaustion gives `Unknown`, never
/// `False`.
pub fn abelian_witness_search(
    s: &ExAutStructure,
    k: usize,
    max_overgroup_order: Option<usize>,
) -> Verdict<AbelianWitness> {
    let bound = max_overgroup_order.unwrap_or(usize::MAX);
    let ground_truth = Some(s.subgroup(k).is_abelian());
    let overgroups: Vec<usize> = (0..s.subgroup_count())
        .filter(|&j| j != k && s.leq_a(k, j) && s.subgroup(j).order() <= bound)
        .collect();
    for l1 in s.pairs_of(k) {
        let pair = s.pair(l1);
        if !pair.is_cyclic() {
            continue;
        }
        for &j in &overgroups {
            let restricts_onto = s.pairs_of(j).any(|q| match s.pair(q).restrict_to(s.subgroup(k)) {
                Some(r) => r.len() == pair.maps().len() && r.iter().eq(pair.maps().iter()),
                None => false,
            });
            if !restricts_onto {
                return Verdict {
                    answer: Answer::True,
                    witness: Some(AbelianWitness { l1, overgroup: j }),
                    ground_truth,
                };
            }
        }
    }
    Verdict {
        answer: Answer::Unknown,
        witness: None,
        ground_truth,
    }
}

/// Union-find orbits of `Aut(K)` on the elements of `K`.
fn automorphism_orbits(k: &FiniteGroup, limits: &Limits, budget: &mut Budget) -> Result<Vec<Vec<usize>>> {
    let n = k.order();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    search::for_each_automorphism(k, limits, budget, |images| {
        for (x, &y) in images.iter().enumerate() {
            let (a, b) = (find(&mut parent, x), find(&mut parent, y));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        ControlFlow::Continue(())
    })?;
    let mut orbits: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for x in 0..n {
        let root = find(&mut parent, x);
        orbits.entry(root).or_default().push(x);
    }
    Ok(orbits.into_values().collect())
}

/// Whether `K` has a proper nontrivial characteristic subgroup.
///
/// Every characteristic subgroup is a union of `Aut(K)`-orbits, so one
/// exists iff some non-identity orbit generates a proper subgroup. The
/// witness is the least such subgroup found, as sorted element indices.
pub fn has_characteristic_subgroup(k: &FiniteGroup) -> Result<Verdict<Vec<usize>>> {
    has_characteristic_subgroup_with(k, &Limits::DEFAULT, &mut Budget::unlimited())
}

pub fn has_characteristic_subgroup_with(
    k: &FiniteGroup,
    limits: &Limits,
    budget: &mut Budget,
) -> Result<Verdict<Vec<usize>>> {
    let orbits = automorphism_orbits(k, limits, budget)?;
    Ok(characteristic_from_orbits(k, &orbits))
}

fn characteristic_from_orbits(k: &FiniteGroup, orbits: &[Vec<usize>]) -> Verdict<Vec<usize>> {
    let mut witness: Option<Vec<usize>> = None;
    for orbit in orbits {
        if orbit == &[0] {
            continue;
        }
        let mut gens = Vec::new();
        let mut span = vec![0];
        for &x in orbit {
            if span.binary_search(&x).is_err() {
                gens.push(x);
                span = k.closure(&gens);
                if span.len() == k.order() {
                    break;
                }
            }
        }
        if span.len() < k.order() && witness.as_ref().map_or(true, |w| span.len() < w.len()) {
            witness = Some(span);
        }
    }
    Verdict {
        answer: Answer::from_bool(witness.is_some()),
        witness,
        ground_truth: None,
    }
}

/// Conjugation as a map `x -> (f_x(g) for g in gens)`, for lookup of inner
/// automorphisms by their generator images.
fn inner_lookup(k: &FiniteGroup) -> BTreeMap<Vec<usize>, usize> {
    let gens = k.generators();
    let mut map = BTreeMap::new();
    for c in k.elements() {
        map.entry(gens.iter().map(|&g| k.conj(c, g)).collect()).or_insert(c);
    }
    map
}

/// `|Aut(K)|` when every automorphism is inner, `None` otherwise.
fn all_inner(k: &FiniteGroup, limits: &Limits, budget: &mut Budget) -> Result<Option<usize>> {
    let lookup = inner_lookup(k);
    let gens = k.generators().to_vec();
    let mut count = 0;
    let mut inner = true;
    search::for_each_automorphism(k, limits, budget, |images| {
        count += 1;
        let key: Vec<usize> = gens.iter().map(|&g| images[g]).collect();
        if lookup.contains_key(&key) {
            ControlFlow::Continue(())
        } else {
            inner = false;
            ControlFlow::Break(())
        }
    })?;
    Ok(inner.then_some(count))
}

/// Complete: centerless with every automorphism inner.
pub fn is_complete(k: &Arc<FiniteGroup>, limits: &Limits, budget: &mut Budget) -> Result<bool> {
    Ok(center(k).is_trivial() && all_inner(k, limits, budget)? == Some(k.order()))
}

/// For complete `K1` and centerless `K2` with `Aut(K1) ≅ Aut(K2)`, builds
/// `K1 -> K2` through `K2 -> Inn(K2) ≤ Aut(K2) ≅ Aut(K1) ≅ K1` and inverts
/// it. The answer is `False` when the composite is not onto, i.e. when
/// `K2` is not complete.
pub fn complete_centerless_match(k1: &Arc<FiniteGroup>, k2: &Arc<FiniteGroup>) -> Result<Verdict<Morphism>> {
    complete_centerless_match_with(k1, k2, &Limits::DEFAULT, &mut Budget::unlimited())
}

pub fn complete_centerless_match_with(
    k1: &Arc<FiniteGroup>,
    k2: &Arc<FiniteGroup>,
    limits: &Limits,
    budget: &mut Budget,
) -> Result<Verdict<Morphism>> {
    if !is_complete(k1, limits, budget)? {
        return Err(Error::PreconditionFailed("K1 is not complete".into()));
    }
    if !center(k2).is_trivial() {
        return Err(Error::PreconditionFailed("K2 has center".into()));
    }
    let (aut1, maps1) = search::automorphism_group(k1, limits, budget)?;
    let (aut2, maps2) = search::automorphism_group(k2, limits, budget)?;
    let (aut1, aut2) = (Arc::new(aut1), Arc::new(aut2));
    let Some(psi) = search::isomorphism_with(&aut2, &aut1, budget)? else {
        return Err(Error::PreconditionFailed("Aut(K1) and Aut(K2) are not isomorphic".into()));
    };
    // Aut(K1) element -> the c in K1 inducing it.
    let lookup1 = inner_lookup(k1);
    let gens1 = k1.generators().to_vec();
    let index2 = |images: &[usize]| {
        maps2
            .binary_search_by(|m| m.images().cmp(images))
            .expect("inner automorphisms are automorphisms")
    };
    let forward: Vec<usize> = k2
        .elements()
        .map(|x| {
            let inner: Vec<usize> = k2.elements().map(|y| k2.conj(x, y)).collect();
            let f1 = &maps1[psi.apply(index2(&inner))];
            let key: Vec<usize> = gens1.iter().map(|&g| f1.apply(g)).collect();
            lookup1[&key]
        })
        .collect();
    let to_k1 = Morphism::new(k2.clone(), k1.clone(), forward)?;
    if !to_k1.is_bijective() {
        return Ok(Verdict {
            answer: Answer::False,
            witness: None,
            ground_truth: Some(false),
        });
    }
    let witness = to_k1.inverse()?;
    let ground_truth = search::are_isomorphic(k1, k2, budget)?;
    Ok(Verdict {
        answer: Answer::True,
        witness: Some(witness),
        ground_truth: Some(ground_truth),
    })
}

/// The four ingredients of the alternating-group certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Ingredient {
    /// (a) `K` is nonabelian.
    Nonabelian,
    /// (b) `K` has no proper nontrivial characteristic subgroup.
    NoCharacteristicSubgroup,
    /// (c) an index-2 overgroup that is centerless and complete.
    CompleteOvergroup,
    /// (d) `K` is the unique index-2 subgroup of that overgroup.
    UniqueIndexTwo,
}

impl Ingredient {
    pub fn letter(self) -> char {
        match self {
            Ingredient::Nonabelian => 'a',
            Ingredient::NoCharacteristicSubgroup => 'b',
            Ingredient::CompleteOvergroup => 'c',
            Ingredient::UniqueIndexTwo => 'd',
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Ingredient::Nonabelian => "nonabelian",
            Ingredient::NoCharacteristicSubgroup => "no-characteristic-subgroup",
            Ingredient::CompleteOvergroup => "complete-centerless-overgroup",
            Ingredient::UniqueIndexTwo => "unique-index-two",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlternatingCertificate {
    pub subgroup: SubgroupHandle,
    /// A pair of non-commuting elements of `K`.
    pub noncommuting: (usize, usize),
    /// Number of `Aut(K)`-orbits on `K`; each non-identity orbit generates `K`.
    pub orbit_count: usize,
    /// The overgroup `K⁺` with `[K⁺ : K] = 2`.
    pub overgroup: SubgroupHandle,
    /// `|Aut(K⁺)|`, equal to `|K⁺|` with every automorphism inner.
    pub overgroup_aut_order: usize,
    /// `|⟨x² : x ∈ K⁺⟩|`, equal to `|K|`.
    pub squares_span: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlternatingOutcome {
    Certificate(AlternatingCertificate),
    Failure { missing: Ingredient, detail: String },
}

pub fn alternating_certificate(k: &SubgroupHandle) -> Result<AlternatingOutcome> {
    alternating_certificate_with(k, &Limits::DEFAULT, &mut Budget::unlimited())
}

pub fn alternating_certificate_with(
    k: &SubgroupHandle,
    limits: &Limits,
    budget: &mut Budget,
) -> Result<AlternatingOutcome> {
    let g = k.parent().clone();
    let fail = |missing, detail: String| Ok(AlternatingOutcome::Failure { missing, detail });

    // (a)
    let noncommuting = k
        .members()
        .iter()
        .flat_map(|&x| k.generators().into_iter().map(move |y| (x, y)))
        .find(|&(x, y)| !g.commutes(x, y));
    let Some(noncommuting) = noncommuting else {
        return fail(Ingredient::Nonabelian, "K is abelian".into());
    };

    // (b)
    let local = k.to_group();
    let orbits = automorphism_orbits(&local, limits, budget)?;
    if let Some(w) = characteristic_from_orbits(&local, &orbits).witness {
        let members: Vec<usize> = w.iter().map(|&i| k.members()[i]).collect();
        return fail(
            Ingredient::NoCharacteristicSubgroup,
            format!("characteristic subgroup of order {}: {:?}", members.len(), members),
        );
    }

    // (c) and (d), over every index-2 overgroup inside the ambient group.
    let mut seen: Vec<Vec<usize>> = Vec::new();
    let mut furthest: Option<(Ingredient, String)> = None;
    let gens = k.generators();
    for t in g.elements() {
        if k.contains(t) || !k.contains(g.mul(t, t)) || !gens.iter().all(|&x| k.contains(g.conj(t, x))) {
            continue;
        }
        let mut members: Vec<usize> = k.members().to_vec();
        members.extend(k.members().iter().map(|&x| g.mul(t, x)));
        members.sort_unstable();
        if seen.contains(&members) {
            continue;
        }
        seen.push(members.clone());
        let plus = SubgroupHandle::new(g.clone(), members)?;
        let plus_group = Arc::new(plus.to_group());
        if !center(&plus_group).is_trivial() {
            furthest.get_or_insert((Ingredient::CompleteOvergroup, "overgroup has a center".into()));
            continue;
        }
        let Some(aut_order) = all_inner(&plus_group, limits, budget)? else {
            furthest.get_or_insert((Ingredient::CompleteOvergroup, "overgroup has an outer automorphism".into()));
            continue;
        };
        let squares: Vec<usize> = plus.members().iter().map(|&x| g.mul(x, x)).collect();
        let span = g.closure(&squares);
        if span != k.members() {
            furthest = Some((
                Ingredient::UniqueIndexTwo,
                format!("squares generate a subgroup of order {}", span.len()),
            ));
            continue;
        }
        return Ok(AlternatingOutcome::Certificate(AlternatingCertificate {
            subgroup: k.clone(),
            noncommuting,
            orbit_count: orbits.len(),
            overgroup: plus,
            overgroup_aut_order: aut_order,
            squares_span: span.len(),
        }));
    }
    let (missing, detail) =
        furthest.unwrap_or((Ingredient::CompleteOvergroup, "no index-2 overgroup in the ambient group".into()));
    fail(missing, detail)
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

    fn node_of_order(d: &LatticeData, order: usize) -> usize {
        (0..d.len()).find(|&i| d.node(i).ground.order == order).unwrap()
    }

    #[test]
    fn prime_order() {
        let d = LatticeData::of_group(&arc(families::cyclic(5))).unwrap();
        let top = d.top().unwrap();
        let v = is_prime_order_qf(&d, top);
        assert_eq!((v.answer, v.witness), (Answer::True, Some(5)));
        assert_eq!(is_prime_order_qf(&d, d.bottom().unwrap()).answer, Answer::False);
        let v4 = LatticeData::of_group(&arc(families::klein_four())).unwrap();
        assert_eq!(is_prime_order_qf(&v4, v4.top().unwrap()).answer, Answer::False);
    }

    #[test]
    fn cyclic_checks() {
        let c6 = LatticeData::of_group(&arc(families::cyclic(6))).unwrap();
        assert_eq!(is_cyclic_qf(&c6, c6.top().unwrap()).unwrap().answer, Answer::True);
        assert_eq!(cyclic_order_qf(&c6, c6.top().unwrap()).unwrap(), 6);
        let c4 = LatticeData::of_group(&arc(families::cyclic(4))).unwrap();
        assert_eq!(cyclic_order_qf(&c4, c4.top().unwrap()).unwrap(), 4);
        assert_eq!(cyclic_order_qf(&c4, c4.bottom().unwrap()).unwrap(), 1);
        let v4 = LatticeData::of_group(&arc(families::klein_four())).unwrap();
        assert_eq!(is_cyclic_qf(&v4, v4.top().unwrap()).unwrap().answer, Answer::False);
        assert_eq!(cyclic_order_qf(&v4, v4.top().unwrap()), Err(Error::NotCyclic(v4.top().unwrap())));
        let s3 = LatticeData::of_group(&arc(families::symmetric(3))).unwrap();
        assert_eq!(is_cyclic_qf(&s3, s3.top().unwrap()).unwrap().answer, Answer::False);
    }

    #[test]
    fn order_recovery() {
        for g in [families::symmetric(3), families::quaternion(), families::cyclic(1), families::dihedral(6)] {
            let order = g.order();
            let d = LatticeData::of_group(&arc(g)).unwrap();
            assert_eq!(order_qf(&d, d.top().unwrap()).unwrap(), order);
        }
    }

    #[test]
    fn incomplete_lattice() {
        let d = LatticeData::of_group(&arc(families::cyclic(6))).unwrap();
        let top = d.top().unwrap();
        let two = node_of_order(&d, 2);
        let keep: Vec<usize> = (0..d.len()).filter(|&i| i != two).collect();
        let r = d.restrict(&keep);
        let new_top = r.top().unwrap();
        assert_eq!(r.node(new_top).members, d.node(top).members);
        assert_eq!(order_qf(&r, new_top), Err(Error::IncompleteLattice(new_top)));
    }

    #[test]
    fn characteristic_examples() {
        let yes = |g: FiniteGroup| has_characteristic_subgroup(&g).unwrap().answer;
        assert_eq!(yes(families::klein_four()), Answer::False);
        assert_eq!(yes(families::cyclic(4)), Answer::True);
        assert_eq!(yes(families::symmetric(3)), Answer::True);
        assert_eq!(yes(families::cyclic(5)), Answer::False);
        assert_eq!(yes(families::alternating(4)), Answer::True);
    }

    #[test]
    fn characteristic_matches_definition() {
        let corpus = [
            families::cyclic(8),
            families::cyclic(12),
            families::klein_four(),
            families::elementary_abelian(2, 3),
            families::quaternion(),
            families::dihedral(4),
            families::dihedral(6),
            families::symmetric(4),
            families::alternating(4),
            families::direct_product(&families::symmetric(3), &families::cyclic(2)),
        ];
        for g in corpus {
            let g = arc(g);
            let auts = oracle::automorphisms_by_bijections(&g);
            let direct = subgroups(&g, g.order()).iter().any(|h| {
                !h.is_trivial()
                    && h.order() < g.order()
                    && auts.iter().all(|f| h.members().iter().all(|&x| h.contains(f[x])))
            });
            assert_eq!(has_characteristic_subgroup(&g).unwrap().answer, Answer::from_bool(direct));
        }
    }

    #[test]
    fn complete_centerless() {
        let s3 = arc(families::symmetric(3));
        let v = complete_centerless_match(&s3, &s3).unwrap();
        assert_eq!(v.answer, Answer::True);
        assert!(v.witness.unwrap().is_bijective());
        assert_eq!(
            complete_centerless_match(&s3, &arc(families::cyclic(6))).unwrap_err(),
            Error::PreconditionFailed("K2 has center".into())
        );
        assert!(matches!(
            complete_centerless_match(&arc(families::cyclic(6)), &s3),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn alternating_small_failures() {
        let s4 = arc(families::symmetric(4));
        let cycle = |c: &[usize]| s4.index_of(&crate::Permutation::from_cycles(4, &[c]).unwrap()).unwrap();
        let a4 = SubgroupHandle::generated(s4.clone(), &[cycle(&[0, 1, 2]), cycle(&[1, 2, 3])]).unwrap();
        assert_eq!(a4.order(), 12);
        match alternating_certificate(&a4).unwrap() {
            AlternatingOutcome::Failure { missing, .. } => assert_eq!(missing, Ingredient::NoCharacteristicSubgroup),
            other => panic!("unexpected {other:?}"),
        }
        let c2 = SubgroupHandle::generated(s4.clone(), &[1]).unwrap();
        match alternating_certificate(&c2).unwrap() {
            AlternatingOutcome::Failure { missing, .. } => assert_eq!(missing, Ingredient::Nonabelian),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn abelian_search_never_contradicts() {
        let s = crate::exaut::build_exaut(&arc(families::symmetric(4)), 12).unwrap();
        let mut found = 0;
        for k in 0..s.subgroup_count() {
            let v = abelian_witness_search(&s, k, None);
            assert!(v.is_consistent(), "subgroup {:?}", s.subgroup(k).members());
            if v.answer == Answer::True {
                found += 1;
            }
        }
        assert!(found > 0);
    }
}
