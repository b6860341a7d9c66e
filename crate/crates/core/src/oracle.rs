//! Brute-force reference computations.
//!
//! Nothing here shares code with the algorithms it checks: subgroups are
//! found by scanning subsets, automorphisms and isomorphisms by element-wise
//! bijection search, conjugators by scanning the whole symmetric group. They
//! are only practical for small inputs.

use alloc::vec;
use alloc::vec::Vec;

use crate::group::FiniteGroup;

/// Every subset containing the identity that is closed under multiplication.
/// Exponential; intended for groups of order at most 8.
pub fn subgroups_by_subsets(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let n = g.order();
    assert!(n <= 16, "subset oracle is exponential");
    let mut out = Vec::new();
    for mask in 0u32..(1 << (n - 1)) {
        let set: Vec<usize> = core::iter::once(0)
            .chain((1..n).filter(|&i| mask & (1 << (i - 1)) != 0))
            .collect();
        let member = |x: usize| x == 0 || mask & (1 << (x - 1)) != 0;
        if set.iter().all(|&a| set.iter().all(|&b| member(g.mul(a, b)))) {
            out.push(set);
        }
    }
    out
}

/// All bijections `a -> b` (as image arrays) preserving multiplication, by
/// assigning images element by element and checking every product whose
/// three entries are already assigned.
pub fn isomorphisms_by_bijections(a: &FiniteGroup, b: &FiniteGroup) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if a.order() != b.order() {
        return out;
    }
    let n = a.order();
    let mut images = vec![usize::MAX; n];
    let mut used = vec![false; n];
    images[0] = 0;
    used[0] = true;
    bijection_step(a, b, 1, &mut images, &mut used, &mut out);
    out
}

fn bijection_step(
    a: &FiniteGroup,
    b: &FiniteGroup,
    x: usize,
    images: &mut [usize],
    used: &mut [bool],
    out: &mut Vec<Vec<usize>>,
) {
    let n = a.order();
    if x == n {
        out.push(images.to_vec());
        return;
    }
    for y in 0..n {
        if used[y] {
            continue;
        }
        images[x] = y;
        if consistent_upto(a, b, x, images) {
            used[y] = true;
            bijection_step(a, b, x + 1, images, used, out);
            used[y] = false;
        }
    }
    images[x] = usize::MAX;
}

fn consistent_upto(a: &FiniteGroup, b: &FiniteGroup, x: usize, images: &[usize]) -> bool {
    for p in 0..=x {
        for q in 0..=x {
            let r = a.mul(p, q);
            if r > x || (p != x && q != x && r != x) {
                continue;
            }
            if b.mul(images[p], images[q]) != images[r] {
                return false;
            }
        }
    }
    true
}

pub fn automorphisms_by_bijections(g: &FiniteGroup) -> Vec<Vec<usize>> {
    isomorphisms_by_bijections(g, g)
}

/// Every permutation of `0..n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![cur.clone()];
    loop {
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// Image array of left multiplication by `a`.
pub fn left_mult(g: &FiniteGroup, a: usize) -> Vec<usize> {
    g.elements().map(|x| g.mul(a, x)).collect()
}

/// Compose image arrays: `(s ∘ t)(x) = s(t(x))`.
pub fn compose(s: &[usize], t: &[usize]) -> Vec<usize> {
    t.iter().map(|&x| s[x]).collect()
}

pub fn invert(s: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; s.len()];
    for (x, &y) in s.iter().enumerate() {
        inv[y] = x;
    }
    inv
}

/// All `σ ∈ Sym(G)` with `σ λ(a) σ⁻¹ = λ(φ(a))` for every `a` in `domain`,
/// where `phi[i]` is the image of `domain[i]`.
pub fn conjugators_by_scan(g: &FiniteGroup, domain: &[usize], phi: &[usize]) -> Vec<Vec<usize>> {
    let n = g.order();
    all_permutations(n)
        .into_iter()
        .filter(|sigma| {
            let sigma_inv = invert(sigma);
            domain.iter().zip(phi).all(|(&a, &b)| {
                compose(&compose(sigma, &left_mult(g, a)), &sigma_inv) == left_mult(g, b)
            })
        })
        .collect()
}

/// Elements commuting with every element of `set`, by direct scan.
pub fn centralizer_by_scan(g: &FiniteGroup, set: &[usize]) -> Vec<usize> {
    g.elements()
        .filter(|&x| set.iter().all(|&s| g.mul(x, s) == g.mul(s, x)))
        .collect()
}

pub fn is_abelian_by_scan(g: &FiniteGroup) -> bool {
    g.elements()
        .all(|a| g.elements().all(|b| g.mul(a, b) == g.mul(b, a)))
}

/// Whether `images` is a homomorphism `a -> b`, checking every pair.
pub fn is_homomorphism_all_pairs(a: &FiniteGroup, b: &FiniteGroup, images: &[usize]) -> bool {
    a.elements().all(|x| {
        a.elements()
            .all(|y| images[a.mul(x, y)] == b.mul(images[x], images[y]))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn oracle_counts() {
        assert_eq!(subgroups_by_subsets(&families::symmetric(3)).len(), 6);
        assert_eq!(subgroups_by_subsets(&families::klein_four()).len(), 5);
        assert_eq!(automorphisms_by_bijections(&families::cyclic(1)).len(), 1);
        assert_eq!(automorphisms_by_bijections(&families::cyclic(3)).len(), 2);
        assert_eq!(automorphisms_by_bijections(&families::klein_four()).len(), 6);
        assert_eq!(all_permutations(4).len(), 24);
    }
}

/// Least `c` with `images[x] = c x c⁻¹` for every element `x`.
pub fn inner_conjugator_by_scan(g: &FiniteGroup, images: &[usize]) -> Option<usize> {
    g.elements()
        .find(|&c| g.elements().all(|x| images[x] == g.mul(g.mul(c, x), g.inv(c))))
}
