//! The `Sym(6)` outer-automorphism fixture document.

use std::sync::Arc;

use hall_core::reconstruction::{self, InvolutionMap};
use hall_core::subgroup::SubgroupHandle;
use hall_core::{search, Budget, Morphism, Permutation};
use serde_json::{json, Value};

use crate::doc::GroupDoc;
use crate::LabError;

pub fn outer_s6_document(budget: &mut Budget) -> Result<Value, LabError> {
    let f = reconstruction::outer_s6_with(budget)?;
    let g = f.domain().clone();
    let name = |x: usize| g.element_name(x);
    let generator = |cycles: &[&[usize]]| -> Result<Value, LabError> {
        let x = g
            .index_of(&Permutation::from_cycles(6, cycles)?)
            .expect("Sym(6) contains every permutation");
        Ok(json!({ "element": name(x), "image": name(f.apply(x)) }))
    };
    let square = f.compose(&f)?;
    let square_conjugator = search::inner_conjugator(&g, &square);
    let recovered = reconstruction::reconstruct_from_involutions(&InvolutionMap::restriction_of(&f)?)?;
    let pair = reconstruction::find_commuting_involution_pair(&f, &SubgroupHandle::trivial(g.clone()))?;
    let transposition = g
        .index_of(&Permutation::from_cycles(6, &[&[0, 1]])?)
        .expect("Sym(6) contains every permutation");
    let inner = Morphism::conjugation(g.clone(), transposition)?;
    Ok(json!({
        "group": GroupDoc::of_group(&g, Some("symmetric-6".into())),
        "images": f.images(),
        "generator_images": [generator(&[&[0, 1]])?, generator(&[&[0, 1, 2, 3, 4, 5]])?],
        "automorphism_order": f.automorphism_order()?,
        "inner_conjugator": search::inner_conjugator(&g, &f),
        "square_inner_conjugator": square_conjugator.map(|c| json!({ "index": c, "element": name(c) })),
        "reconstructed_from_involutions": recovered == f,
        "commuting_involution_pair": pair_json(&g, &pair),
        "commutator_order_with_inner": {
            "g": name(transposition),
            "order": reconstruction::commutator_order_probe(&f, &inner)?,
        },
    }))
}

pub fn pair_json(g: &Arc<hall_core::FiniteGroup>, r: &reconstruction::PairSearchResult) -> Value {
    json!({
        "found": r.found,
        "a": r.pair.map(|(a, _)| json!({ "index": a, "element": g.element_name(a) })),
        "b": r.pair.map(|(_, b)| json!({ "index": b, "element": g.element_name(b) })),
        "checks": {
            "order_two": r.checks.order_two,
            "commuting": r.checks.commuting,
            "f_maps_a_to_b": r.checks.f_maps_a_to_b,
            "outside_k": r.checks.outside_k,
        },
    })
}
