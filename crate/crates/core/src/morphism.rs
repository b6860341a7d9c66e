//! Homomorphisms as explicit image arrays.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::perm::Permutation;

pub(crate) fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// `images[x]` is the image of domain element `x`.
#[derive(Clone, Debug)]
pub struct Morphism {
    domain: Arc<FiniteGroup>,
    codomain: Arc<FiniteGroup>,
    images: Vec<usize>,
}

impl PartialEq for Morphism {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images
            && same_group(&self.domain, &other.domain)
            && same_group(&self.codomain, &other.codomain)
    }
}

impl Eq for Morphism {}

impl Morphism {
    /// Checks the homomorphism property before wrapping.
    pub fn new(
        domain: Arc<FiniteGroup>,
        codomain: Arc<FiniteGroup>,
        images: Vec<usize>,
    ) -> Result<Morphism> {
        if images.len() != domain.order() {
            return Err(Error::NotHomomorphism(format!(
                "{} images for a domain of order {}",
                images.len(),
                domain.order()
            )));
        }
        for &y in &images {
            codomain.check_element(y)?;
        }
        let m = Morphism {
            domain,
            codomain,
            images,
        };
        if let Some((x, y)) = m.first_violation() {
            return Err(Error::NotHomomorphism(format!(
                "f({x}·{y}) ≠ f({x})·f({y})"
            )));
        }
        Ok(m)
    }

    pub(crate) fn from_images_unchecked(
        domain: Arc<FiniteGroup>,
        codomain: Arc<FiniteGroup>,
        images: Vec<usize>,
    ) -> Morphism {
        Morphism {
            domain,
            codomain,
            images,
        }
    }

    pub fn identity(group: Arc<FiniteGroup>) -> Morphism {
        let images = group.elements().collect();
        Morphism {
            domain: group.clone(),
            codomain: group,
            images,
        }
    }

    /// The inner automorphism `x -> c x c⁻¹`.
    pub fn conjugation(group: Arc<FiniteGroup>, c: usize) -> Result<Morphism> {
        group.check_element(c)?;
        let images = group.elements().map(|x| group.conj(c, x)).collect();
        Ok(Morphism {
            domain: group.clone(),
            codomain: group,
            images,
        })
    }

    pub fn domain(&self) -> &Arc<FiniteGroup> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FiniteGroup> {
        &self.codomain
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// First pair `(x, g)`, `g` a domain generator, with `f(xg) ≠ f(x)f(g)`.
    /// Checking generators suffices: the identity then extends to all words.
    fn first_violation(&self) -> Option<(usize, usize)> {
        let d = &self.domain;
        if self.images[0] != 0 {
            return Some((0, 0));
        }
        for x in d.elements() {
            for &g in d.generators() {
                if self.images[d.mul(x, g)] != self.codomain.mul(self.images[x], self.images[g]) {
                    return Some((x, g));
                }
            }
        }
        None
    }

    pub fn is_homomorphism(&self) -> bool {
        self.first_violation().is_none()
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.codomain.order()];
        self.images.iter().all(|&y| !core::mem::replace(&mut seen[y], true))
    }

    pub fn is_bijective(&self) -> bool {
        self.domain.order() == self.codomain.order() && self.is_injective()
    }

    pub fn is_endomorphism(&self) -> bool {
        same_group(&self.domain, &self.codomain)
    }

    pub fn is_automorphism(&self) -> bool {
        self.is_endomorphism() && self.is_bijective() && self.is_homomorphism()
    }

    pub fn is_identity(&self) -> bool {
        self.is_endomorphism() && self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Morphism) -> Result<Morphism> {
        if !same_group(&other.codomain, &self.domain) {
            return Err(Error::InvalidInput(
                "composition: codomain of the right factor differs from domain of the left".into(),
            ));
        }
        Ok(Morphism {
            domain: other.domain.clone(),
            codomain: self.codomain.clone(),
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        })
    }

    pub fn inverse(&self) -> Result<Morphism> {
        if !self.is_bijective() {
            return Err(Error::NotIsomorphism("not bijective".into()));
        }
        let mut inv = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        Ok(Morphism {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            images: inv,
        })
    }

    /// Order of an automorphism under composition.
    pub fn automorphism_order(&self) -> Result<usize> {
        if !self.is_endomorphism() || !self.is_bijective() {
            return Err(Error::NotIsomorphism("not an automorphism".into()));
        }
        let mut cur = self.images.clone();
        let mut k = 1;
        while cur.iter().enumerate().any(|(i, &x)| i != x) {
            cur = cur.iter().map(|&x| self.images[x]).collect();
            k += 1;
        }
        Ok(k)
    }

    /// The automorphism viewed as a permutation of the domain's element list.
    pub fn as_permutation(&self) -> Result<Permutation> {
        if !self.is_endomorphism() {
            return Err(Error::NotIsomorphism("not an endomorphism".into()));
        }
        Permutation::from_images(self.images.clone())
    }
}

/// A homomorphism into a symmetric group given by permutation images, for
/// codomains too large to enumerate (`Alt(2|K|)`, `Sym(720)`).
#[derive(Clone, Debug)]
pub struct PermRepresentation {
    domain: Arc<FiniteGroup>,
    degree: usize,
    images: Vec<Permutation>,
}

impl PermRepresentation {
    pub fn new(domain: Arc<FiniteGroup>, degree: usize, images: Vec<Permutation>) -> Result<Self> {
        if images.len() != domain.order() {
            return Err(Error::NotHomomorphism(format!(
                "{} images for a domain of order {}",
                images.len(),
                domain.order()
            )));
        }
        if let Some(p) = images.iter().find(|p| p.degree() != degree) {
            return Err(Error::DegreeMismatch {
                expected: degree,
                found: p.degree(),
            });
        }
        Ok(PermRepresentation {
            domain,
            degree,
            images,
        })
    }

    /// Left-regular action `g -> (x -> g·x)` on the group's own element list.
    pub fn regular(group: Arc<FiniteGroup>) -> PermRepresentation {
        let images = group
            .elements()
            .map(|g| {
                Permutation::from_images_unchecked(group.elements().map(|x| group.mul(g, x)).collect())
            })
            .collect();
        PermRepresentation {
            degree: group.order(),
            domain: group,
            images,
        }
    }

    pub fn domain(&self) -> &Arc<FiniteGroup> {
        &self.domain
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn images(&self) -> &[Permutation] {
        &self.images
    }

    pub fn image(&self, x: usize) -> &Permutation {
        &self.images[x]
    }

    /// Checks `ρ(x g) = ρ(x) ∘ ρ(g)` for every `x` and every domain generator.
    pub fn is_homomorphism(&self) -> bool {
        let d = &self.domain;
        self.images[0].is_identity()
            && d.elements().all(|x| {
                d.generators()
                    .iter()
                    .all(|&g| self.images[d.mul(x, g)] == self.images[x].compose(&self.images[g]))
            })
    }

    pub fn is_injective(&self) -> bool {
        let mut sorted: Vec<&Permutation> = self.images.iter().collect();
        sorted.sort();
        sorted.windows(2).all(|w| w[0] != w[1])
    }

    pub fn all_even(&self) -> bool {
        self.images.iter().all(|p| p.is_even())
    }

    /// Whether every non-identity image moves every point.
    pub fn is_free(&self) -> bool {
        self.images
            .iter()
            .skip(1)
            .all(|p| p.fixed_points() == 0)
    }
}
