//! Brute-force structure analysis of small finite groups given by explicit
//! multiplication: closures, normal closures, centre, derived and lower
//! central series.

use std::collections::{HashMap, HashSet, VecDeque};
use std::hash::Hash;

use serde::Serialize;
use thiserror::Error;

/// Enumeration cap used when the caller does not pick one.
pub const DEFAULT_ENUM_CAP: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("cap exceeded: the generated group has more than {cap} elements")]
    CapExceeded { cap: usize },
}

/// Multiplication, inversion and identity for some family of group elements.
pub trait GroupOps {
    type Elem: Clone + Eq + Hash;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    /// `[a, b] = a^-1 b^-1 a b`
    fn commutator(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let ai = self.inv(a);
        let bi = self.inv(b);
        self.mul(&self.mul(&ai, &bi), &self.mul(a, b))
    }

    fn conjugate(&self, x: &Self::Elem, by: &Self::Elem) -> Self::Elem {
        self.mul(&self.mul(&self.inv(by), x), by)
    }

    fn is_identity(&self, a: &Self::Elem) -> bool {
        *a == self.identity()
    }

    fn order_of(&self, a: &Self::Elem) -> usize {
        let one = self.identity();
        let mut x = a.clone();
        let mut k = 1;
        while x != one {
            x = self.mul(&x, a);
            k += 1;
        }
        k
    }
}

/// An explicitly enumerated subgroup together with a generating set.
#[derive(Debug, Clone)]
pub struct Subgroup<E> {
    elements: Vec<E>,
    index: HashMap<E, usize>,
    gens: Vec<E>,
}

impl<E: Clone + Eq + Hash> Subgroup<E> {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn generators(&self) -> &[E] {
        &self.gens
    }

    pub fn contains(&self, x: &E) -> bool {
        self.index.contains_key(x)
    }

    pub fn position(&self, x: &E) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn element_set(&self) -> HashSet<E> {
        self.elements.iter().cloned().collect()
    }
}

/// Breadth-first closure of `gens` under right multiplication.
pub fn closure<G: GroupOps>(
    group: &G,
    gens: &[G::Elem],
    cap: usize,
) -> Result<Subgroup<G::Elem>, GroupError> {
    let one = group.identity();
    let mut elements = vec![one.clone()];
    let mut index = HashMap::from([(one, 0usize)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in gens {
            let y = group.mul(&elements[i], g);
            if !index.contains_key(&y) {
                if elements.len() >= cap {
                    return Err(GroupError::CapExceeded { cap });
                }
                index.insert(y.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(y);
            }
        }
    }
    Ok(Subgroup {
        elements,
        index,
        gens: gens.to_vec(),
    })
}

/// Smallest subgroup containing `seeds` and normalised by every element of
/// `conjugators`.
pub fn normal_closure<G: GroupOps>(
    group: &G,
    seeds: &[G::Elem],
    conjugators: &[G::Elem],
    cap: usize,
) -> Result<Subgroup<G::Elem>, GroupError> {
    let mut gens: Vec<G::Elem> = Vec::new();
    for s in seeds {
        if !group.is_identity(s) && !gens.contains(s) {
            gens.push(s.clone());
        }
    }
    let mut sub = closure(group, &gens, cap)?;
    let mut i = 0;
    while i < gens.len() {
        for h in conjugators {
            let y = group.conjugate(&gens[i], h);
            if !sub.contains(&y) {
                gens.push(y);
                sub = closure(group, &gens, cap)?;
            }
        }
        i += 1;
    }
    Ok(sub)
}

/// `[H, H]` for `H = <gens>`.
pub fn derived_subgroup<G: GroupOps>(
    group: &G,
    gens: &[G::Elem],
    cap: usize,
) -> Result<Subgroup<G::Elem>, GroupError> {
    let mut comms = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            comms.push(group.commutator(a, b));
        }
    }
    normal_closure(group, &comms, gens, cap)
}

/// Elements of `sub` commuting with all of its generators.
pub fn center<G: GroupOps>(group: &G, sub: &Subgroup<G::Elem>) -> Vec<G::Elem> {
    sub.elements
        .iter()
        .filter(|x| sub.gens.iter().all(|g| group.mul(x, g) == group.mul(g, x)))
        .cloned()
        .collect()
}

pub fn exponent<G: GroupOps>(group: &G, sub: &Subgroup<G::Elem>) -> usize {
    sub.elements
        .iter()
        .map(|x| group.order_of(x))
        .fold(1, num_integer::lcm)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub order: usize,
    pub exponent: usize,
    pub center_order: usize,
    /// Orders of `G = G^(0) > G^(1) > ...`, ending at the first repeated or
    /// trivial term.
    pub derived_series: Vec<usize>,
    /// `None` when the series stalls above the trivial group.
    pub derived_length: Option<usize>,
    pub lower_central_series: Vec<usize>,
    /// `None` when the lower central series stalls above the trivial group.
    pub nilpotency_class: Option<usize>,
}

/// Enumerates `<gens>` and reports its basic structure.
pub fn analyze<G: GroupOps>(
    group: &G,
    gens: &[G::Elem],
    cap: usize,
) -> Result<StructureReport, GroupError> {
    let whole = closure(group, gens, cap)?;
    let center_order = center(group, &whole).len();
    let exponent = exponent(group, &whole);

    let mut derived_series = vec![whole.order()];
    let mut current = whole.clone();
    let derived_length = loop {
        if current.order() == 1 {
            break Some(derived_series.len() - 1);
        }
        let next = derived_subgroup(group, current.generators(), cap)?;
        if next.order() == current.order() {
            break None;
        }
        derived_series.push(next.order());
        current = next;
    };

    let mut lower_central_series = vec![whole.order()];
    let mut current = whole.clone();
    let nilpotency_class = loop {
        if current.order() == 1 {
            break Some(lower_central_series.len() - 1);
        }
        let mut comms = Vec::new();
        for x in current.generators() {
            for h in whole.generators() {
                comms.push(group.commutator(x, h));
            }
        }
        let next = normal_closure(group, &comms, whole.generators(), cap)?;
        if next.order() == current.order() {
            break None;
        }
        lower_central_series.push(next.order());
        current = next;
    };

    Ok(StructureReport {
        order: whole.order(),
        exponent,
        center_order,
        derived_series,
        derived_length,
        lower_central_series,
        nilpotency_class,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Permutations of {0..k} composed left to right.
    struct Perms;

    impl GroupOps for Perms {
        type Elem = Vec<usize>;
        fn identity(&self) -> Vec<usize> {
            (0..4).collect()
        }
        fn mul(&self, a: &Vec<usize>, b: &Vec<usize>) -> Vec<usize> {
            a.iter().map(|&i| b[i]).collect()
        }
        fn inv(&self, a: &Vec<usize>) -> Vec<usize> {
            let mut out = vec![0; a.len()];
            for (i, &j) in a.iter().enumerate() {
                out[j] = i;
            }
            out
        }
    }

    #[test]
    fn symmetric_group_s4() {
        let gens = vec![vec![1, 0, 2, 3], vec![1, 2, 3, 0]];
        let r = analyze(&Perms, &gens, 100).unwrap();
        assert_eq!(r.order, 24);
        assert_eq!(r.exponent, 12);
        assert_eq!(r.center_order, 1);
        assert_eq!(r.derived_series, vec![24, 12, 4, 1]);
        assert_eq!(r.derived_length, Some(3));
        assert_eq!(r.nilpotency_class, None);
        assert_eq!(r.lower_central_series, vec![24, 12]);
    }

    #[test]
    fn dihedral_group_of_order_8() {
        let gens = vec![vec![1, 2, 3, 0], vec![0, 3, 2, 1]];
        let r = analyze(&Perms, &gens, 100).unwrap();
        assert_eq!(r.order, 8);
        assert_eq!(r.center_order, 2);
        assert_eq!(r.nilpotency_class, Some(2));
        assert_eq!(r.derived_length, Some(2));
    }

    #[test]
    fn trivial_and_cap() {
        let r = analyze(&Perms, &[], 10).unwrap();
        assert_eq!(
            (r.order, r.derived_length, r.nilpotency_class),
            (1, Some(0), Some(0))
        );
        let gens = vec![vec![1, 0, 2, 3], vec![1, 2, 3, 0]];
        assert_eq!(
            closure(&Perms, &gens, 10).unwrap_err(),
            GroupError::CapExceeded { cap: 10 }
        );
    }
}
