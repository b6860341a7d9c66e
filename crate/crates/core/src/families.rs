//! Standard small groups used as test corpus and building blocks.

use alloc::vec;
use alloc::vec::Vec;

use crate::group::FiniteGroup;
use crate::perm::Permutation;

fn from_rule(n: usize, rule: impl Fn(usize, usize) -> usize) -> FiniteGroup {
    let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| rule(a, b)).collect()).collect();
    FiniteGroup::from_table(&table).expect("family tables are groups")
}

/// Cyclic group `Z/n`, element `i` being `i mod n`.
pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1);
    from_rule(n, |a, b| (a + b) % n)
}

/// Dihedral group of order `2n`: element `i + n·j` is `r^i s^j`.
pub fn dihedral(n: usize) -> FiniteGroup {
    assert!(n >= 1);
    from_rule(2 * n, |x, y| {
        let (a, b) = (x % n, x / n);
        let (c, d) = (y % n, y / n);
        let rot = if b == 0 { (a + c) % n } else { (a + n - c) % n };
        rot + n * ((b + d) % 2)
    })
}

/// `(Z/p)^k`, element index read as base-`p` digits.
pub fn elementary_abelian(p: usize, k: u32) -> FiniteGroup {
    let n = p.pow(k);
    from_rule(n, |mut a, mut b| {
        let mut out = 0;
        let mut place = 1;
        for _ in 0..k {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    })
}

pub fn klein_four() -> FiniteGroup {
    elementary_abelian(2, 2)
}

/// Quaternion group: `0..4` are `1, i, -1, -i` and `4..8` are `j, k, -j, -k`
/// (element `a + 4b` is `i^a j^b`).
pub fn quaternion() -> FiniteGroup {
    // j i = i^3 j, j^2 = i^2
    from_rule(8, |x, y| {
        let (a, b) = (x % 4, x / 4);
        let (c, d) = (y % 4, y / 4);
        let c = if b == 1 { (4 - c) % 4 } else { c };
        let mut e = (a + c) % 4;
        let mut f = b + d;
        if f == 2 {
            e = (e + 2) % 4;
            f = 0;
        }
        e + 4 * f
    })
}

pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
    let m = h.order();
    from_rule(g.order() * m, |x, y| {
        g.mul(x / m, y / m) * m + h.mul(x % m, y % m)
    })
}

pub fn symmetric_generators(n: usize) -> Vec<Permutation> {
    if n < 2 {
        return Vec::new();
    }
    let cycle: Vec<usize> = (0..n).collect();
    vec![
        Permutation::from_cycles(n, &[&[0, 1]]).unwrap(),
        Permutation::from_cycles(n, &[&cycle]).unwrap(),
    ]
}

pub fn symmetric(n: usize) -> FiniteGroup {
    assert!(n >= 1);
    FiniteGroup::from_permutations(n, &symmetric_generators(n)).expect("within ceiling")
}

pub fn alternating_generators(n: usize) -> Vec<Permutation> {
    (2..n)
        .map(|k| Permutation::from_cycles(n, &[&[0, 1, k]]).unwrap())
        .collect()
}

pub fn alternating(n: usize) -> FiniteGroup {
    assert!(n >= 1);
    FiniteGroup::from_permutations(n, &alternating_generators(n)).expect("within ceiling")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(cyclic(7).order(), 7);
        assert_eq!(dihedral(5).order(), 10);
        assert!(!dihedral(3).is_abelian());
        assert!(dihedral(2).is_abelian());
        assert_eq!(quaternion().involutions().len(), 1);
        assert!(!quaternion().is_abelian());
        assert_eq!(elementary_abelian(2, 3).involutions().len(), 7);
        assert_eq!(symmetric(4).order(), 24);
        assert_eq!(alternating(5).order(), 60);
        assert_eq!(alternating(3).order(), 3);
        assert_eq!(alternating(2).order(), 1);
        assert_eq!(direct_product(&cyclic(2), &cyclic(3)).order(), 6);
        assert!(direct_product(&cyclic(2), &cyclic(3)).is_abelian());
    }
}
