//! Finite complete measure spaces.
//!
//! The σ-algebra is the full powerset of the atoms, so every subset is
//! measurable and the space is complete. Atoms of weight zero make up the
//! null ideal. Sets are bitmasks over the atom list, in ascending order.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Hard ceiling on atoms; transforms are stored as full `2^n` tables.
pub const MAX_ATOMS: usize = 20;

/// A measurable set, as a bitmask over the atoms of a fixed space.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct MSet(pub u64);

impl MSet {
    pub const EMPTY: MSet = MSet(0);

    pub fn from_atoms(atoms: &[usize]) -> MSet {
        MSet(atoms.iter().fold(0, |m, &a| m | (1 << a)))
    }

    pub fn singleton(atom: usize) -> MSet {
        MSet(1 << atom)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, atom: usize) -> bool {
        self.0 >> atom & 1 == 1
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: MSet) -> MSet {
        MSet(self.0 | other.0)
    }

    pub fn intersection(self, other: MSet) -> MSet {
        MSet(self.0 & other.0)
    }

    pub fn difference(self, other: MSet) -> MSet {
        MSet(self.0 & !other.0)
    }

    pub fn symmetric_difference(self, other: MSet) -> MSet {
        MSet(self.0 ^ other.0)
    }

    pub fn is_subset(self, other: MSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn atoms(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..64).filter(move |i| bits >> i & 1 == 1)
    }
}

impl fmt::Debug for MSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.atoms()).finish()
    }
}

/// A finite atomic measure space with exact rational weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasureSpace {
    weights: Vec<Rational>,
    positive: MSet,
}

impl MeasureSpace {
    /// Builds the space; atom ids are `0..weights.len()`.
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::NoAtoms);
        }
        if weights.len() > MAX_ATOMS {
            return Err(Error::TooManyAtoms {
                atoms: weights.len(),
                max: MAX_ATOMS,
            });
        }
        if let Some(index) = weights.iter().position(|w| w.is_negative()) {
            return Err(Error::NegativeWeight { index });
        }
        let positive = MSet(
            weights
                .iter()
                .enumerate()
                .filter(|(_, w)| w.is_positive())
                .fold(0, |m, (i, _)| m | 1 << i),
        );
        if positive.is_empty() {
            return Err(Error::AllWeightsZero);
        }
        Ok(MeasureSpace { weights, positive })
    }

    /// Convenience constructor from integer weights.
    pub fn from_integers(weights: &[i64]) -> Result<Self> {
        Self::new(
            weights
                .iter()
                .map(|&w| Rational::from_integer(BigInt::from(w)))
                .collect(),
        )
    }

    pub fn atom_count(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, atom: usize) -> &Rational {
        &self.weights[atom]
    }

    /// The whole space `X`.
    pub fn full(&self) -> MSet {
        MSet((1u64 << self.weights.len()) - 1)
    }

    /// Atoms of positive weight.
    pub fn positive_atoms(&self) -> MSet {
        self.positive
    }

    /// Atoms of zero weight; every subset of this is null.
    pub fn null_atoms(&self) -> MSet {
        self.full().difference(self.positive)
    }

    /// Number of measurable sets, `2^n`.
    pub fn set_count(&self) -> usize {
        1 << self.weights.len()
    }

    /// All measurable sets in ascending bitmask order.
    pub fn sets(&self) -> impl Iterator<Item = MSet> {
        (0..self.set_count() as u64).map(MSet)
    }

    pub fn complement(&self, q: MSet) -> MSet {
        self.full().difference(q)
    }

    pub fn check_set(&self, q: MSet) -> Result<()> {
        if q.is_subset(self.full()) {
            Ok(())
        } else {
            Err(Error::SetOutOfRange {
                mask: q.0,
                atoms: self.atom_count(),
            })
        }
    }

    pub fn measure(&self, q: MSet) -> Rational {
        q.atoms()
            .fold(Rational::zero(), |acc, a| acc + &self.weights[a])
    }

    pub fn total_measure(&self) -> Rational {
        self.measure(self.full())
    }

    pub fn is_null(&self, q: MSet) -> bool {
        q.intersection(self.positive).is_empty()
    }

    pub fn is_averageable(&self, q: MSet) -> bool {
        !self.is_null(q)
    }

    /// `μ(Q Δ R) = 0`. Weights are non-negative, so this is exactly the
    /// absence of positive atoms from the symmetric difference.
    pub fn ae_equal(&self, q: MSet, r: MSet) -> bool {
        self.is_null(q.symmetric_difference(r))
    }

    /// The averageable sets `{Q : μ(Q) > 0}` in ascending bitmask order.
    pub fn averageable_sets(&self) -> Vec<MSet> {
        self.sets().filter(|&q| self.is_averageable(q)).collect()
    }

    /// Index over the averageable sets, the ground set of every filter-kernel.
    pub fn averageable_index(&self) -> AverageableIndex {
        let sets = self.averageable_sets();
        let mut position = vec![None; self.set_count()];
        for (i, q) in sets.iter().enumerate() {
            position[q.0 as usize] = Some(i);
        }
        AverageableIndex { sets, position }
    }

    pub fn indicator(&self, q: MSet) -> PartialFunction {
        PartialFunction::total(
            (0..self.atom_count())
                .map(|a| {
                    if q.contains(a) {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect(),
        )
    }

    /// `⟨Q | Q'⟩ = μ(Q ∩ Q') / μ(Q')`.
    pub fn conditional_prob(&self, q: MSet, given: MSet) -> Result<Rational> {
        if !self.is_averageable(given) {
            return Err(Error::NotAverageable { mask: given.0 });
        }
        Ok(self.measure(q.intersection(given)) / self.measure(given))
    }
}

/// The averageable sets of a space together with their positions.
#[derive(Clone, Debug)]
pub struct AverageableIndex {
    sets: Vec<MSet>,
    position: Vec<Option<usize>>,
}

impl AverageableIndex {
    pub fn sets(&self) -> &[MSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn set(&self, index: usize) -> MSet {
        self.sets[index]
    }

    pub fn index_of(&self, q: MSet) -> Option<usize> {
        self.position.get(q.0 as usize).copied().flatten()
    }
}

/// A rational-valued function defined on some of the atoms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialFunction {
    values: Vec<Option<Rational>>,
}

impl PartialFunction {
    pub fn new(values: Vec<Option<Rational>>) -> Self {
        PartialFunction { values }
    }

    pub fn total(values: Vec<Rational>) -> Self {
        PartialFunction {
            values: values.into_iter().map(Some).collect(),
        }
    }

    pub fn from_integers(values: &[i64]) -> Self {
        Self::total(
            values
                .iter()
                .map(|&v| Rational::from_integer(BigInt::from(v)))
                .collect(),
        )
    }

    pub fn nowhere_defined(atoms: usize) -> Self {
        PartialFunction {
            values: vec![None; atoms],
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn domain(&self) -> MSet {
        MSet(
            self.values
                .iter()
                .enumerate()
                .filter(|(_, v)| v.is_some())
                .fold(0, |m, (i, _)| m | 1 << i),
        )
    }

    pub fn get(&self, atom: usize) -> Option<&Rational> {
        self.values.get(atom).and_then(Option::as_ref)
    }

    pub fn values(&self) -> &[Option<Rational>] {
        &self.values
    }

    /// Defined with equal values at every positive atom.
    pub fn ae_equal(&self, space: &MeasureSpace, other: &PartialFunction) -> bool {
        space
            .positive_atoms()
            .atoms()
            .all(|a| matches!((self.get(a), other.get(a)), (Some(x), Some(y)) if x == y))
    }

    /// First positive atom where the two functions disagree or either is
    /// undefined.
    pub fn first_ae_mismatch(
        &self,
        space: &MeasureSpace,
        other: &PartialFunction,
    ) -> Option<usize> {
        space
            .positive_atoms()
            .atoms()
            .find(|&a| !matches!((self.get(a), other.get(a)), (Some(x), Some(y)) if x == y))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s1() -> MeasureSpace {
        MeasureSpace::from_integers(&[1, 1, 0]).unwrap()
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    const A: usize = 0;
    const B: usize = 1;
    const N: usize = 2;

    #[test]
    fn build_rejects_bad_weights() {
        assert_eq!(
            MeasureSpace::from_integers(&[0, 0]),
            Err(Error::AllWeightsZero)
        );
        assert_eq!(
            MeasureSpace::from_integers(&[1, -1]),
            Err(Error::NegativeWeight { index: 1 })
        );
        assert_eq!(MeasureSpace::from_integers(&[]), Err(Error::NoAtoms));
        let one = MeasureSpace::from_integers(&[1]).unwrap();
        assert_eq!(one.atom_count(), 1);
    }

    #[test]
    fn measure_of_fixture_sets() {
        let s = s1();
        assert_eq!(s.measure(MSet::from_atoms(&[A, N])), r(1, 1));
        assert_eq!(s.measure(MSet::EMPTY), r(0, 1));
        assert_eq!(s.measure(s.full()), r(2, 1));
    }

    #[test]
    fn ae_equality() {
        let s = s1();
        assert!(s.ae_equal(MSet::singleton(A), MSet::from_atoms(&[A, N])));
        assert!(!s.ae_equal(MSet::singleton(A), MSet::singleton(B)));
        for q in s.sets() {
            assert!(s.ae_equal(q, q));
        }
    }

    #[test]
    fn ae_equal_matches_measure_of_symmetric_difference() {
        let s = MeasureSpace::from_integers(&[2, 0, 3, 0]).unwrap();
        for q in s.sets() {
            for r in s.sets() {
                assert_eq!(
                    s.ae_equal(q, r),
                    s.measure(q.symmetric_difference(r)).is_zero()
                );
            }
        }
    }

    #[test]
    fn averageable_sets_of_fixture() {
        let s = s1();
        let z = s.averageable_sets();
        let expected: Vec<MSet> = [
            vec![A],
            vec![B],
            vec![A, B],
            vec![A, N],
            vec![B, N],
            vec![A, B, N],
        ]
        .iter()
        .map(|v| MSet::from_atoms(v))
        .collect();
        assert_eq!(z, expected);
        assert_eq!(z.len(), (1 << 3) - 2);

        let one = MeasureSpace::from_integers(&[1]).unwrap();
        assert_eq!(one.averageable_sets(), vec![MSet::singleton(0)]);
    }

    #[test]
    fn indicator_values() {
        let s = s1();
        assert_eq!(
            s.indicator(MSet::singleton(A)),
            PartialFunction::from_integers(&[1, 0, 0])
        );
        assert_eq!(
            s.indicator(MSet::EMPTY),
            PartialFunction::from_integers(&[0, 0, 0])
        );
        assert_eq!(
            s.indicator(s.full()),
            PartialFunction::from_integers(&[1, 1, 1])
        );
    }

    #[test]
    fn conditional_probabilities() {
        let s = s1();
        assert_eq!(
            s.conditional_prob(MSet::singleton(A), MSet::from_atoms(&[A, B]))
                .unwrap(),
            r(1, 2)
        );
        assert_eq!(
            s.conditional_prob(MSet::singleton(B), MSet::from_atoms(&[A, N]))
                .unwrap(),
            r(0, 1)
        );
        for q in s.averageable_sets() {
            assert_eq!(s.conditional_prob(q, q).unwrap(), r(1, 1));
        }
        assert_eq!(
            s.conditional_prob(MSet::singleton(A), MSet::singleton(N)),
            Err(Error::NotAverageable { mask: 0b100 })
        );
    }

    #[test]
    fn measure_is_monotone_and_additive() {
        let s = MeasureSpace::from_integers(&[3, 0, 1, 2, 0, 5]).unwrap();
        for q in s.sets() {
            for r in s.sets() {
                if q.intersection(r).is_empty() {
                    assert_eq!(s.measure(q.union(r)), s.measure(q) + s.measure(r));
                }
                if q.is_subset(r) {
                    assert!(s.measure(q) <= s.measure(r));
                }
            }
        }
    }

    #[test]
    fn ae_equal_sets_have_equal_conditional_probabilities() {
        let s = MeasureSpace::from_integers(&[1, 0, 2, 0]).unwrap();
        let z = s.averageable_sets();
        for q in s.sets() {
            for r in s.sets().filter(|&r| s.ae_equal(q, r)) {
                for &given in &z {
                    assert_eq!(
                        s.conditional_prob(q, given).unwrap(),
                        s.conditional_prob(r, given).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn averageable_sets_closed_under_union() {
        let s = MeasureSpace::from_integers(&[1, 0, 2, 0]).unwrap();
        let index = s.averageable_index();
        for &q in index.sets() {
            for r in s.sets() {
                assert!(index.index_of(q.union(r)).is_some());
            }
        }
    }
}
