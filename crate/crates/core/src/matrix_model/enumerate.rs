use std::collections::{HashMap, VecDeque};

use crate::group::{GroupError, GroupOps, Subgroup};
use crate::mat3::Mat3;
use crate::word::Word;

use super::ModelError;

/// Matrices in GL(3, F2[t, 1/t]) under multiplication.
///
/// Inversion panics on a non-unit determinant; elements produced by
/// [`enumerate_subgroup`] are always invertible.
#[derive(Debug, Clone, Copy, Default)]
pub struct MatrixGroup;

impl GroupOps for MatrixGroup {
    type Elem = Mat3;

    fn identity(&self) -> Mat3 {
        Mat3::identity()
    }

    fn mul(&self, a: &Mat3, b: &Mat3) -> Mat3 {
        a.mul(b)
    }

    fn inv(&self, a: &Mat3) -> Mat3 {
        a.inverse().expect("group elements have unit determinant")
    }
}

/// A finite matrix group enumerated breadth-first from labelled generators.
#[derive(Debug, Clone)]
pub struct FiniteGroupTable {
    elements: Vec<Mat3>,
    words: Vec<Word>,
    index: HashMap<Mat3, usize>,
    gens: Vec<Mat3>,
    /// `right_mul[i][g]` is the index of `elements[i] * gens[g]`.
    right_mul: Vec<Vec<usize>>,
}

impl FiniteGroupTable {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Mat3] {
        &self.elements
    }

    /// A word over the generator labels representing `elements()[i]`.
    pub fn word(&self, i: usize) -> &Word {
        &self.words[i]
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn generators(&self) -> &[Mat3] {
        &self.gens
    }

    pub fn position(&self, m: &Mat3) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Index of `elements()[i] * elements()[j]`.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.index[&self.elements[i].mul(&self.elements[j])]
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.index[&MatrixGroup.inv(&self.elements[i])]
    }

    pub fn right_mul_by_generator(&self, i: usize, g: usize) -> usize {
        self.right_mul[i][g]
    }

    pub fn as_subgroup(&self) -> Subgroup<Mat3> {
        crate::group::closure(&MatrixGroup, &self.gens, self.order().max(1))
            .expect("table is closed")
    }
}

/// Enumerates the group generated by `gens`, each paired with the word it
/// stands for. Fails with a cap error once more than `cap` elements appear.
pub fn enumerate_subgroup(
    gens: &[(Word, Mat3)],
    cap: usize,
) -> Result<FiniteGroupTable, EnumerateError> {
    for (_, m) in gens {
        m.inverse().map_err(ModelError::from)?;
    }
    let mats: Vec<Mat3> = gens.iter().map(|(_, m)| m.clone()).collect();
    let mut elements = vec![Mat3::identity()];
    let mut words = vec![Word::empty()];
    let mut index = HashMap::from([(Mat3::identity(), 0usize)]);
    let mut right_mul: Vec<Vec<usize>> = vec![Vec::new()];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for (label, m) in gens {
            let y = elements[i].mul(m);
            let j = match index.get(&y) {
                Some(&j) => j,
                None => {
                    if elements.len() >= cap {
                        return Err(GroupError::CapExceeded { cap }.into());
                    }
                    let j = elements.len();
                    index.insert(y.clone(), j);
                    words.push(words[i].mul(label));
                    elements.push(y);
                    right_mul.push(Vec::new());
                    queue.push_back(j);
                    j
                }
            };
            right_mul[i].push(j);
        }
    }
    Ok(FiniteGroupTable {
        elements,
        words,
        index,
        gens: mats,
        right_mul,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnumerateError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Model(#[from] ModelError),
}
