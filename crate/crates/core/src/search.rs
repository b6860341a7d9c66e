//! Backtracking over generator images.
//!
//! A homomorphism out of a group is fixed by the images of a generating set.
//! The search picks images for the generators one at a time, restricted to
//! elements of the same order (and the same centralizer size for groups
//! small enough to tabulate it), and after each choice extends the map over
//! the subgroup generated so far by breadth-first search on the Cayley graph.
//! Any inconsistency (a word reaching the same element with two different
//! images, or two elements sharing an image) prunes the branch.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Limits};
use crate::morphism::Morphism;

const NONE: usize = usize::MAX;

/// Groups up to this order get centralizer sizes as an extra invariant.
const CENTRALIZER_INVARIANT_LIMIT: usize = 1024;

/// Extends `gen_images[j]` = image of `gens[j]` to a map on `⟨gens⟩`.
///
/// Returns the image array over all of `domain` (entries outside `⟨gens⟩`
/// are `usize::MAX`), or `None` when the assignment is inconsistent or, with
/// `injective`, not injective.
pub fn extend_generator_images(
    domain: &FiniteGroup,
    gens: &[usize],
    gen_images: &[usize],
    codomain: &FiniteGroup,
    injective: bool,
) -> Option<Vec<usize>> {
    debug_assert_eq!(gens.len(), gen_images.len());
    let mut images = vec![NONE; domain.order()];
    let mut used = if injective {
        vec![false; codomain.order()]
    } else {
        Vec::new()
    };
    images[0] = 0;
    if injective {
        used[0] = true;
    }
    let mut queue = vec![0];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (&g, &h) in gens.iter().zip(gen_images) {
            let y = domain.mul(x, g);
            let val = codomain.mul(images[x], h);
            if images[y] == NONE {
                if injective {
                    if used[val] {
                        return None;
                    }
                    used[val] = true;
                }
                images[y] = val;
                queue.push(y);
            } else if images[y] != val {
                return None;
            }
        }
    }
    Some(images)
}

fn centralizer_sizes(g: &FiniteGroup) -> Option<Vec<usize>> {
    if g.order() > CENTRALIZER_INVARIANT_LIMIT {
        return None;
    }
    Some(
        g.elements()
            .map(|x| g.elements().filter(|&y| g.commutes(x, y)).count())
            .collect(),
    )
}

fn order_profile(g: &FiniteGroup) -> Vec<usize> {
    let mut v = g.element_orders().to_vec();
    v.sort_unstable();
    v
}

/// Visits every isomorphism `a -> b` as an image array, in lexicographic
/// order of generator images. The visitor may stop the search early.
pub fn for_each_isomorphism(
    a: &FiniteGroup,
    b: &FiniteGroup,
    budget: &mut Budget,
    mut visit: impl FnMut(&[usize]) -> ControlFlow<()>,
) -> Result<()> {
    if a.order() != b.order() || order_profile(a) != order_profile(b) {
        return Ok(());
    }
    let gens = a.generators();
    if gens.is_empty() {
        let _ = visit(&[0]);
        return Ok(());
    }
    let (ca, cb) = match (centralizer_sizes(a), centralizer_sizes(b)) {
        (Some(x), Some(y)) => (Some(x), Some(y)),
        _ => (None, None),
    };
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            b.elements()
                .filter(|&y| b.element_order(y) == a.element_order(g))
                .filter(|&y| match (&ca, &cb) {
                    (Some(ca), Some(cb)) => ca[g] == cb[y],
                    _ => true,
                })
                .collect()
        })
        .collect();
    let mut chosen = Vec::with_capacity(gens.len());
    dfs(a, b, gens, &candidates, &mut chosen, budget, &mut visit).map(|_| ())
}

fn dfs(
    a: &FiniteGroup,
    b: &FiniteGroup,
    gens: &[usize],
    candidates: &[Vec<usize>],
    chosen: &mut Vec<usize>,
    budget: &mut Budget,
    visit: &mut impl FnMut(&[usize]) -> ControlFlow<()>,
) -> Result<ControlFlow<()>> {
    let level = chosen.len();
    for &y in &candidates[level] {
        budget.tick(1)?;
        chosen.push(y);
        let ext = extend_generator_images(a, &gens[..=level], chosen, b, true);
        if let Some(images) = ext {
            let flow = if level + 1 == gens.len() {
                visit(&images)
            } else {
                dfs(a, b, gens, candidates, chosen, budget, visit)?
            };
            if flow.is_break() {
                chosen.pop();
                return Ok(ControlFlow::Break(()));
            }
        }
        chosen.pop();
    }
    Ok(ControlFlow::Continue(()))
}

/// Visits every automorphism of `g` as an image array.
pub fn for_each_automorphism(
    g: &FiniteGroup,
    limits: &Limits,
    budget: &mut Budget,
    visit: impl FnMut(&[usize]) -> ControlFlow<()>,
) -> Result<()> {
    if g.order() > limits.automorphism_ceiling {
        return Err(Error::OrderCeilingExceeded {
            ceiling: limits.automorphism_ceiling,
        });
    }
    for_each_isomorphism(g, g, budget, visit)
}

/// All automorphisms of `g`, sorted by image array (identity first).
pub fn automorphisms(g: &Arc<FiniteGroup>) -> Result<Vec<Morphism>> {
    automorphisms_with(g, &Limits::DEFAULT, &mut Budget::unlimited())
}

pub fn automorphisms_with(
    g: &Arc<FiniteGroup>,
    limits: &Limits,
    budget: &mut Budget,
) -> Result<Vec<Morphism>> {
    let mut all = Vec::new();
    for_each_automorphism(g, limits, budget, |images| {
        all.push(images.to_vec());
        ControlFlow::Continue(())
    })?;
    all.sort_unstable();
    Ok(all
        .into_iter()
        .map(|images| Morphism::from_images_unchecked(g.clone(), g.clone(), images))
        .collect())
}

pub fn automorphism_count(g: &FiniteGroup, limits: &Limits, budget: &mut Budget) -> Result<usize> {
    let mut count = 0;
    for_each_automorphism(g, limits, budget, |_| {
        count += 1;
        ControlFlow::Continue(())
    })?;
    Ok(count)
}

/// The lexicographically least isomorphism `a -> b`, if any.
pub fn isomorphism(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> Option<Morphism> {
    isomorphism_with(a, b, &mut Budget::unlimited()).expect("unlimited budget")
}

pub fn isomorphism_with(
    a: &Arc<FiniteGroup>,
    b: &Arc<FiniteGroup>,
    budget: &mut Budget,
) -> Result<Option<Morphism>> {
    let mut best: Option<Vec<usize>> = None;
    for_each_isomorphism(a, b, budget, |images| {
        if best.as_deref().map_or(true, |cur| images < cur) {
            best = Some(images.to_vec());
        }
        ControlFlow::Continue(())
    })?;
    Ok(best.map(|images| Morphism::from_images_unchecked(a.clone(), b.clone(), images)))
}

/// Whether any isomorphism exists; stops at the first one.
pub fn are_isomorphic(a: &FiniteGroup, b: &FiniteGroup, budget: &mut Budget) -> Result<bool> {
    let mut found = false;
    for_each_isomorphism(a, b, budget, |_| {
        found = true;
        ControlFlow::Break(())
    })?;
    Ok(found)
}

/// Least `c` with `f(x) = c x c⁻¹` for all `x`, scanning every element.
pub fn inner_conjugator(g: &FiniteGroup, f: &Morphism) -> Option<usize> {
    let gens = g.generators();
    g.elements()
        .find(|&c| gens.iter().all(|&x| f.apply(x) == g.conj(c, x)))
}

/// `Aut(G)` as a group under composition (`f·g = f ∘ g`), together with the
/// automorphism behind each element. Element 0 is the identity map.
pub fn automorphism_group(
    g: &Arc<FiniteGroup>,
    limits: &Limits,
    budget: &mut Budget,
) -> Result<(FiniteGroup, Vec<Morphism>)> {
    let auts = automorphisms_with(g, limits, budget)?;
    let arrays: Vec<&[usize]> = auts.iter().map(|m| m.images()).collect();
    let index = |images: &[usize]| arrays.binary_search(&images).expect("closed under composition");
    let table: Vec<Vec<usize>> = auts
        .iter()
        .map(|f| {
            auts.iter()
                .map(|h| {
                    let c: Vec<usize> = h.images().iter().map(|&x| f.apply(x)).collect();
                    index(&c)
                })
                .collect()
        })
        .collect();
    let group = FiniteGroup::from_table(&table)?;
    Ok((group, auts))
}
