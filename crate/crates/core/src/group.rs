//! Concrete finite groups.
//!
//! Elements are the indices `0..order`, with `0` the identity. Groups given
//! by a table keep the input order; permutation groups list their elements
//! sorted lexicographically by one-line image array (so the identity comes
//! first).

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, NotAGroupReason, Result};
use crate::perm::Permutation;

/// Groups up to this order always carry a full multiplication table.
/// Larger permutation groups multiply by composing and looking up.
const TABLE_LIMIT: usize = 1024;

/// How many non-member candidates a generating-set round inspects before
/// settling for the largest closure seen.
const GENERATOR_SCAN: usize = 64;

/// Order ceilings guarding the exhaustive searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest group produced by closing a set of permutations.
    pub closure_ceiling: usize,
    /// Largest group whose automorphisms are enumerated.
    pub automorphism_ceiling: usize,
}

impl Limits {
    pub const DEFAULT: Limits = Limits {
        closure_ceiling: 10_080,
        automorphism_ceiling: 5_040,
    };
}

impl Default for Limits {
    fn default() -> Self {
        Limits::DEFAULT
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Origin {
    Table,
    Permutation {
        degree: usize,
        /// Indices of the generating permutations, as supplied.
        generators: Vec<usize>,
    },
}

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    order: usize,
    table: Option<Vec<u32>>,
    perms: Option<Vec<Permutation>>,
    /// Untabled groups of degree at most 16: each element packed into 4-bit
    /// fields, point 0 highest, so the order matches `perms`.
    packed: Option<Vec<u64>>,
    inverses: Vec<usize>,
    element_orders: Vec<usize>,
    generators: Vec<usize>,
    origin: Origin,
    labels: Option<Vec<String>>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        if self.order != other.order || self.perms != other.perms {
            return false;
        }
        if self.perms.is_some() {
            return true;
        }
        self.table == other.table
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Validates a Cayley table and wraps it as a group.
    ///
    /// The identity must be element `0`.
    pub fn from_table(table: &[Vec<usize>]) -> Result<FiniteGroup> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidInput("empty table".into()));
        }
        if n > u32::MAX as usize {
            return Err(Error::InvalidInput("table too large".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidInput(format!(
                    "row {i} has length {}, expected {n}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::InvalidInput(format!(
                    "entry {bad} in row {i} out of range"
                )));
            }
        }
        let flat: Vec<u32> = table.iter().flatten().map(|&x| x as u32).collect();
        let at = |a: usize, b: usize| flat[a * n + b] as usize;

        let mut seen = vec![0usize; n];
        for a in 0..n {
            for b in 0..n {
                let v = at(a, b);
                if seen[v] == 2 * a + 1 {
                    return Err(Error::NotAGroup(NotAGroupReason::NotLatinSquare));
                }
                seen[v] = 2 * a + 1;
            }
        }
        seen.iter_mut().for_each(|s| *s = 0);
        for b in 0..n {
            for a in 0..n {
                let v = at(a, b);
                if seen[v] == b + 1 {
                    return Err(Error::NotAGroup(NotAGroupReason::NotLatinSquare));
                }
                seen[v] = b + 1;
            }
        }
        if (0..n).any(|x| at(0, x) != x || at(x, 0) != x) {
            return Err(Error::NotAGroup(NotAGroupReason::NoIdentity));
        }
        let mut inverses = vec![0; n];
        for x in 0..n {
            // Latin rows guarantee a unique right inverse.
            let y = (0..n).find(|&y| at(x, y) == 0).unwrap();
            if at(y, x) != 0 {
                return Err(Error::NotAGroup(NotAGroupReason::NoInverse));
            }
            inverses[x] = y;
        }

        // Light's test: it is enough to check (x g) y = x (g y) for g in a set
        // whose right-multiplication closure from the identity is everything.
        let magma_gens = greedy_generators(n, |a, b| at(a, b));
        for &g in &magma_gens {
            for x in 0..n {
                let xg = at(x, g);
                for y in 0..n {
                    if at(xg, y) != at(x, at(g, y)) {
                        return Err(Error::NotAGroup(NotAGroupReason::NonAssociative));
                    }
                }
            }
        }

        let element_orders = compute_orders(n, |a, b| at(a, b));
        Ok(FiniteGroup {
            order: n,
            table: Some(flat),
            perms: None,
            packed: None,
            inverses,
            element_orders,
            generators: magma_gens,
            origin: Origin::Table,
            labels: None,
        })
    }

    /// Closes a set of permutations under composition, with the default ceiling.
    pub fn from_permutations(degree: usize, generators: &[Permutation]) -> Result<FiniteGroup> {
        FiniteGroup::from_permutations_bounded(degree, generators, Limits::DEFAULT.closure_ceiling)
    }

    pub fn from_permutations_bounded(
        degree: usize,
        generators: &[Permutation],
        ceiling: usize,
    ) -> Result<FiniteGroup> {
        if degree == 0 {
            return Err(Error::InvalidInput("degree must be positive".into()));
        }
        for g in generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let mut seen: BTreeSet<Permutation> = BTreeSet::new();
        let identity = Permutation::identity(degree);
        seen.insert(identity.clone());
        let mut queue = vec![identity];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head].clone();
            head += 1;
            for g in generators {
                let y = x.compose(g);
                if !seen.contains(&y) {
                    if seen.len() >= ceiling {
                        return Err(Error::OrderCeilingExceeded { ceiling });
                    }
                    seen.insert(y.clone());
                    queue.push(y);
                }
            }
        }
        let elements: Vec<Permutation> = seen.into_iter().collect();
        let gen_indices = generators
            .iter()
            .map(|g| elements.binary_search(g).unwrap())
            .collect();
        Ok(FiniteGroup::from_sorted_perms(degree, elements, gen_indices))
    }

    /// Wraps a sorted list of permutations already known to form a group.
    pub(crate) fn from_sorted_perms(
        degree: usize,
        elements: Vec<Permutation>,
        given_generators: Vec<usize>,
    ) -> FiniteGroup {
        let n = elements.len();
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(elements[0].is_identity());
        let lookup = |p: &Permutation| elements.binary_search(p).expect("closed under composition");
        let table = if n <= TABLE_LIMIT {
            let mut t = Vec::with_capacity(n * n);
            for a in &elements {
                for b in &elements {
                    t.push(lookup(&a.compose(b)) as u32);
                }
            }
            Some(t)
        } else {
            None
        };
        let packed = (table.is_none() && degree <= 16)
            .then(|| elements.iter().map(|p| pack(p.images())).collect());
        let inverses: Vec<usize> = elements.iter().map(|p| lookup(&p.inverse())).collect();
        let element_orders: Vec<usize> = elements.iter().map(|p| p.order()).collect();
        let mut group = FiniteGroup {
            order: n,
            table,
            perms: Some(elements),
            packed,
            inverses,
            element_orders,
            generators: Vec::new(),
            origin: Origin::Permutation {
                degree,
                generators: given_generators,
            },
            labels: None,
        };
        group.generators = greedy_generators(n, |a, b| group.mul(a, b));
        group
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<FiniteGroup> {
        if labels.len() != self.order {
            return Err(Error::InvalidInput(format!(
                "{} labels for a group of order {}",
                labels.len(),
                self.order
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn elements(&self) -> core::ops::Range<usize> {
        0..self.order
    }

    pub fn origin(&self) -> &Origin {
        &self.origin
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Permutation degree, for permutation groups.
    pub fn degree(&self) -> Option<usize> {
        match self.origin {
            Origin::Permutation { degree, .. } => Some(degree),
            Origin::Table => None,
        }
    }

    pub fn permutation(&self, x: usize) -> Option<&Permutation> {
        self.perms.as_ref().map(|p| &p[x])
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.perms.as_ref()?.binary_search(p).ok()
    }

    /// A small generating set, chosen deterministically.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.order + b] as usize,
            None if self.packed.is_some() => {
                let packed = self.packed.as_ref().unwrap();
                let degree = self.degree().unwrap();
                packed
                    .binary_search(&compose_packed(packed[a], packed[b], degree))
                    .expect("closed under composition")
            }
            None => {
                let perms = self.perms.as_ref().unwrap();
                perms
                    .binary_search(&perms[a].compose(&perms[b]))
                    .expect("closed under composition")
            }
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `c x c⁻¹`.
    pub fn conj(&self, c: usize, x: usize) -> usize {
        self.mul(self.mul(c, x), self.inverses[c])
    }

    pub fn pow(&self, a: usize, mut k: usize) -> usize {
        let mut base = a;
        let mut acc = 0;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.element_orders[a]
    }

    pub fn element_orders(&self) -> &[usize] {
        &self.element_orders
    }

    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter()
            .enumerate()
            .all(|(i, &a)| gens[i + 1..].iter().all(|&b| self.commutes(a, b)))
    }

    pub fn check_element(&self, x: usize) -> Result<()> {
        if x < self.order {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange {
                index: x,
                order: self.order,
            })
        }
    }

    /// All elements of order exactly two, in canonical order.
    pub fn involutions(&self) -> Vec<usize> {
        self.elements()
            .filter(|&x| self.element_orders[x] == 2)
            .collect()
    }

    /// Sorted closure of `gens` (the subgroup they generate).
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut mark = vec![false; self.order];
        closure_into(self.order, gens, &mut mark, usize::MAX, |a, b| self.mul(a, b))
            .expect("unbounded closure")
    }

    pub fn cayley_table(&self) -> Vec<Vec<usize>> {
        self.elements()
            .map(|a| self.elements().map(|b| self.mul(a, b)).collect())
            .collect()
    }

    /// A human-readable name for element `x`.
    pub fn element_name(&self, x: usize) -> String {
        if let Some(labels) = &self.labels {
            return labels[x].clone();
        }
        match &self.perms {
            Some(p) => format!("{}", p[x]),
            None => format!("{x}"),
        }
    }
}

/// Right-multiplication closure from the identity, writing membership into
/// `mark` (which must be all false on entry). Returns `None` once more than
/// `cap` elements are reached; `mark` is left dirty in that case.
fn pack(images: &[usize]) -> u64 {
    images.iter().fold(0, |acc, &x| (acc << 4) | x as u64)
}

/// `a ∘ b` on packed permutations.
#[inline]
fn compose_packed(a: u64, b: u64, degree: usize) -> u64 {
    let field = |p: u64, i: usize| (p >> (4 * (degree - 1 - i))) & 15;
    (0..degree).fold(0, |acc, i| (acc << 4) | field(a, field(b, i) as usize))
}

pub(crate) fn closure_into(
    n: usize,
    gens: &[usize],
    mark: &mut [bool],
    cap: usize,
    mul: impl Fn(usize, usize) -> usize,
) -> Option<Vec<usize>> {
    debug_assert_eq!(mark.len(), n);
    let mut members = vec![0];
    mark[0] = true;
    let mut head = 0;
    while head < members.len() {
        let x = members[head];
        head += 1;
        for &g in gens {
            let y = mul(x, g);
            if !mark[y] {
                mark[y] = true;
                members.push(y);
                if members.len() > cap {
                    return None;
                }
            }
        }
    }
    members.sort_unstable();
    Some(members)
}

/// Deterministic small generating set: start from the first element of
/// largest order, then repeatedly add the candidate whose closure is largest
/// among the first few non-members, stopping early on one that finishes.
fn greedy_generators(n: usize, mul: impl Fn(usize, usize) -> usize) -> Vec<usize> {
    if n == 1 {
        return Vec::new();
    }
    let orders = compute_orders(n, &mul);
    let mut first = 1;
    for x in 1..n {
        if orders[x] > orders[first] {
            first = x;
        }
    }
    let mut gens = vec![first];
    let mut mark = vec![false; n];
    let mut current = closure_into(n, &gens, &mut mark, usize::MAX, &mul).unwrap();
    while current.len() < n {
        let mut member = vec![false; n];
        for &m in &current {
            member[m] = true;
        }
        let mut best: Option<(usize, Vec<usize>)> = None;
        let mut scanned = 0;
        for x in 0..n {
            if member[x] {
                continue;
            }
            scanned += 1;
            gens.push(x);
            mark.iter_mut().for_each(|m| *m = false);
            let c = closure_into(n, &gens, &mut mark, usize::MAX, &mul).unwrap();
            gens.pop();
            let done = c.len() == n;
            if best.as_ref().map_or(true, |(_, b)| c.len() > b.len()) {
                best = Some((x, c));
            }
            if done || scanned >= GENERATOR_SCAN {
                break;
            }
        }
        let (x, c) = best.expect("a non-member exists");
        gens.push(x);
        current = c;
    }
    gens
}

fn compute_orders(n: usize, mul: impl Fn(usize, usize) -> usize) -> Vec<usize> {
    (0..n)
        .map(|x| {
            let mut k = 1;
            let mut y = x;
            while y != 0 {
                y = mul(y, x);
                k += 1;
                if k > n {
                    // Not a group; the caller rejects it before this matters.
                    return 0;
                }
            }
            k
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn cyclic_table(n: usize) -> Vec<Vec<usize>> {
        (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()
    }

    #[test]
    fn trivial_table() {
        let g = FiniteGroup::from_table(&[vec![0]]).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.is_abelian());
        assert!(g.generators().is_empty());
    }

    #[test]
    fn cyclic_three_table() {
        let g = FiniteGroup::from_table(&cyclic_table(3)).unwrap();
        assert_eq!(g.order(), 3);
        assert!(g.is_abelian());
        assert_eq!(g.element_order(1), 3);
        assert_eq!(g.inv(1), 2);
    }

    #[test]
    fn repeated_row_is_not_latin() {
        let mut t = cyclic_table(3);
        t[1] = t[0].clone();
        assert_eq!(
            FiniteGroup::from_table(&t),
            Err(Error::NotAGroup(NotAGroupReason::NotLatinSquare))
        );
    }

    #[test]
    fn identity_must_be_first() {
        // Z/2 with the identity listed second.
        let t = vec![vec![1, 0], vec![0, 1]];
        assert_eq!(
            FiniteGroup::from_table(&t),
            Err(Error::NotAGroup(NotAGroupReason::NoIdentity))
        );
    }

    #[test]
    fn non_associative_latin_square() {
        // A loop of order 5 that is not a group (the smallest such order).
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert_eq!(
            FiniteGroup::from_table(&t),
            Err(Error::NotAGroup(NotAGroupReason::NonAssociative))
        );
    }

    #[test]
    fn one_sided_inverse_rejected() {
        // Latin, identity 0, but 1*2 = 0 while 2*1 != 0.
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 3, 0, 4, 2],
            vec![2, 4, 3, 1, 0],
            vec![3, 2, 4, 0, 1],
            vec![4, 0, 1, 2, 3],
        ];
        let err = FiniteGroup::from_table(&t).unwrap_err();
        assert!(matches!(err, Error::NotAGroup(_)));
    }

    #[test]
    fn permutation_closure() {
        let c = Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        assert_eq!(FiniteGroup::from_permutations(3, &[c.clone()]).unwrap().order(), 3);
        let t = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let s3 = FiniteGroup::from_permutations(3, &[t, c]).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert!(s3.permutation(0).unwrap().is_identity());
        let trivial = FiniteGroup::from_permutations(5, &[]).unwrap();
        assert_eq!(trivial.order(), 1);
    }

    #[test]
    fn permutation_closure_errors() {
        let c = Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        assert_eq!(
            FiniteGroup::from_permutations(4, &[c]),
            Err(Error::DegreeMismatch {
                expected: 4,
                found: 3
            })
        );
        let s5 = families::symmetric_generators(5);
        assert_eq!(
            FiniteGroup::from_permutations_bounded(5, &s5, 100),
            Err(Error::OrderCeilingExceeded { ceiling: 100 })
        );
    }

    #[test]
    fn large_group_without_table_agrees() {
        let s7 = families::symmetric(7);
        assert_eq!(s7.order(), 5040);
        assert!(s7.table.is_none());
        let a = 1234;
        let b = 4000;
        let pa = s7.permutation(a).unwrap();
        let pb = s7.permutation(b).unwrap();
        assert_eq!(s7.permutation(s7.mul(a, b)).unwrap(), &pa.compose(pb));
        assert_eq!(s7.closure(s7.generators()).len(), 5040);
        assert!(s7.generators().len() <= 3);
    }

    #[test]
    fn generators_generate() {
        for g in [families::dihedral(6), families::quaternion(), families::elementary_abelian(2, 3)] {
            assert_eq!(g.closure(g.generators()).len(), g.order());
        }
    }
}
