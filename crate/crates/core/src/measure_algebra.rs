//! The measure algebra of a finite space, set transforms and liftings.
//!
//! A class of the quotient by null sets is stored as the set of positive
//! atoms it contains, so two sets share a class iff they agree on every
//! positive atom.

use std::collections::BTreeMap;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::filter_calculus::Filter;
use crate::measure_space::{MSet, MeasureSpace};

/// An element of the measure algebra.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct AlgebraClass(pub u64);

impl AlgebraClass {
    pub fn bottom() -> Self {
        AlgebraClass(0)
    }

    pub fn top(space: &MeasureSpace) -> Self {
        AlgebraClass(space.positive_atoms().bits())
    }

    pub fn join(self, other: Self) -> Self {
        AlgebraClass(self.0 | other.0)
    }

    pub fn meet(self, other: Self) -> Self {
        AlgebraClass(self.0 & other.0)
    }

    pub fn complement(self, space: &MeasureSpace) -> Self {
        AlgebraClass(space.positive_atoms().bits() & !self.0)
    }

    /// The canonical representative: the positive atoms of the class.
    pub fn representative(self) -> MSet {
        MSet(self.0)
    }
}

/// The natural projection onto the measure algebra.
pub fn project(space: &MeasureSpace, q: MSet) -> AlgebraClass {
    AlgebraClass(q.intersection(space.positive_atoms()).bits())
}

/// Every class of the measure algebra, ascending.
pub fn quotient_classes(space: &MeasureSpace) -> Vec<AlgebraClass> {
    let positive = space.positive_atoms().bits();
    let mut classes = Vec::with_capacity(1 << space.positive_atoms().len());
    // Enumerate submasks of `positive` in ascending order.
    let mut sub = 0u64;
    loop {
        classes.push(AlgebraClass(sub));
        if sub == positive {
            break;
        }
        sub = (sub.wrapping_sub(positive)) & positive;
    }
    classes
}

/// A map from measurable sets to sets, stored as a full table indexed by
/// bitmask.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SetTransform {
    atoms: usize,
    table: Vec<MSet>,
}

impl SetTransform {
    pub fn new(space: &MeasureSpace, table: Vec<MSet>) -> Result<Self> {
        let expected = space.set_count();
        if table.len() != expected {
            return Err(Error::TransformShape {
                got: table.len(),
                expected,
            });
        }
        for &q in &table {
            space.check_set(q)?;
        }
        Ok(SetTransform {
            atoms: space.atom_count(),
            table,
        })
    }

    pub fn identity(space: &MeasureSpace) -> Self {
        Self::from_fn(space, |q| q)
    }

    pub fn constant(space: &MeasureSpace, value: MSet) -> Self {
        Self::from_fn(space, |_| value)
    }

    pub fn from_fn(space: &MeasureSpace, f: impl Fn(MSet) -> MSet) -> Self {
        let full = space.full();
        SetTransform {
            atoms: space.atom_count(),
            table: space.sets().map(|q| f(q).intersection(full)).collect(),
        }
    }

    pub fn atom_count(&self) -> usize {
        self.atoms
    }

    pub fn apply(&self, q: MSet) -> MSet {
        self.table[q.bits() as usize]
    }

    pub fn table(&self) -> &[MSet] {
        &self.table
    }

    pub fn compose(&self, inner: &SetTransform) -> SetTransform {
        SetTransform {
            atoms: self.atoms,
            table: inner.table.iter().map(|&q| self.apply(q)).collect(),
        }
    }
}

impl fmt::Debug for SetTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(
                self.table
                    .iter()
                    .enumerate()
                    .map(|(i, v)| (MSet(i as u64), v)),
            )
            .finish()
    }
}

/// The checkable properties of a set transform `φ`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum TransformProperty {
    /// Measurable sets go to measurable sets.
    PreservesMeasurableSets,
    /// `φ(X) = X`.
    PreservesAmbientSpace,
    /// `φ(Q ∩ R) = φ(Q) ∩ φ(R)`.
    PreservesFiniteIntersections,
    /// `φ(Q)` is a.e. equal to `Q`.
    AlmostEverywhereIdentity,
    /// `φ(∅) = ∅`.
    PreservesEmptySet,
    /// `Q ≡ R ⇒ φ(Q) = φ(R)`.
    StronglyPreservesMeasureClass,
    /// `φ(∁Q) = ∁φ(Q)`.
    CommutesWithComplement,
    /// `φ(Q ∪ R) = φ(Q) ∪ φ(R)`.
    PreservesFiniteUnions,
    /// `Q ≡ ∅ ⇒ φ(Q) = φ(∅)`.
    StronglyPreservesNullClass,
}

impl TransformProperty {
    pub const ALL: [TransformProperty; 9] = [
        TransformProperty::PreservesMeasurableSets,
        TransformProperty::PreservesAmbientSpace,
        TransformProperty::PreservesFiniteIntersections,
        TransformProperty::AlmostEverywhereIdentity,
        TransformProperty::PreservesEmptySet,
        TransformProperty::StronglyPreservesMeasureClass,
        TransformProperty::CommutesWithComplement,
        TransformProperty::PreservesFiniteUnions,
        TransformProperty::StronglyPreservesNullClass,
    ];

    pub fn code(self) -> &'static str {
        match self {
            TransformProperty::PreservesMeasurableSets => "PMS",
            TransformProperty::PreservesAmbientSpace => "PAS",
            TransformProperty::PreservesFiniteIntersections => "PFI",
            TransformProperty::AlmostEverywhereIdentity => "AEI",
            TransformProperty::PreservesEmptySet => "PES",
            TransformProperty::StronglyPreservesMeasureClass => "SPMC",
            TransformProperty::CommutesWithComplement => "CWTC",
            TransformProperty::PreservesFiniteUnions => "PFU",
            TransformProperty::StronglyPreservesNullClass => "SPMCNS",
        }
    }

    pub fn from_code(code: &str) -> Option<Self> {
        Self::ALL
            .into_iter()
            .find(|p| p.code().eq_ignore_ascii_case(code))
    }
}

/// Which check a violation belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Check {
    Property(TransformProperty),
    Idempotence,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Check::Property(p) => f.write_str(p.code()),
            Check::Idempotence => f.write_str("idempotence"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Witness {
    Set(MSet),
    Pair(MSet, MSet),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Set(q) => write!(f, "{q:?}"),
            Witness::Pair(q, r) => write!(f, "({q:?}, {r:?})"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Violation {
    pub check: Check,
    pub witness: Witness,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at {}", self.check, self.witness)
    }
}

pub type Verdict = std::result::Result<(), Violation>;

fn fail(property: TransformProperty, witness: Witness) -> Verdict {
    Err(Violation {
        check: Check::Property(property),
        witness,
    })
}

fn check_sets(
    space: &MeasureSpace,
    property: TransformProperty,
    ok: impl Fn(MSet) -> bool,
) -> Verdict {
    match space.sets().find(|&q| !ok(q)) {
        Some(q) => fail(property, Witness::Set(q)),
        None => Ok(()),
    }
}

fn check_pairs(
    space: &MeasureSpace,
    property: TransformProperty,
    ok: impl Fn(MSet, MSet) -> bool,
) -> Verdict {
    for q in space.sets() {
        for r in space.sets() {
            if !ok(q, r) {
                return fail(property, Witness::Pair(q, r));
            }
        }
    }
    Ok(())
}

/// Exhaustive check of one property. Failures carry the first witness in
/// ascending order.
pub fn check_property(
    space: &MeasureSpace,
    t: &SetTransform,
    property: TransformProperty,
) -> Verdict {
    use TransformProperty::*;
    let full = space.full();
    match property {
        // Every subset of a finite complete space is measurable.
        PreservesMeasurableSets => Ok(()),
        PreservesAmbientSpace => {
            if t.apply(full) == full {
                Ok(())
            } else {
                fail(property, Witness::Set(full))
            }
        }
        PreservesFiniteIntersections => check_pairs(space, property, |q, r| {
            t.apply(q.intersection(r)) == t.apply(q).intersection(t.apply(r))
        }),
        AlmostEverywhereIdentity => check_sets(space, property, |q| space.ae_equal(t.apply(q), q)),
        PreservesEmptySet => {
            if t.apply(MSet::EMPTY).is_empty() {
                Ok(())
            } else {
                fail(property, Witness::Set(MSet::EMPTY))
            }
        }
        StronglyPreservesMeasureClass => {
            // Every class contains `Q ∩ P`, so comparing against it covers
            // all a.e. equal pairs.
            let positive = space.positive_atoms();
            for q in space.sets() {
                let core = q.intersection(positive);
                if t.apply(q) != t.apply(core) {
                    return fail(property, Witness::Pair(core, q));
                }
            }
            Ok(())
        }
        CommutesWithComplement => check_sets(space, property, |q| {
            t.apply(space.complement(q)) == space.complement(t.apply(q))
        }),
        PreservesFiniteUnions => check_pairs(space, property, |q, r| {
            t.apply(q.union(r)) == t.apply(q).union(t.apply(r))
        }),
        StronglyPreservesNullClass => {
            let at_empty = t.apply(MSet::EMPTY);
            check_sets(space, property, |q| {
                !space.is_null(q) || t.apply(q) == at_empty
            })
        }
    }
}

fn check_all(space: &MeasureSpace, t: &SetTransform, properties: &[TransformProperty]) -> Verdict {
    properties
        .iter()
        .try_for_each(|&p| check_property(space, t, p))
}

const LOWER_DENSITY: [TransformProperty; 5] = [
    TransformProperty::PreservesAmbientSpace,
    TransformProperty::PreservesEmptySet,
    TransformProperty::PreservesFiniteIntersections,
    TransformProperty::AlmostEverywhereIdentity,
    TransformProperty::StronglyPreservesMeasureClass,
];

pub fn is_lower_density(space: &MeasureSpace, t: &SetTransform) -> Verdict {
    check_all(space, t, &LOWER_DENSITY)
}

/// A lower density preserving finite unions. Also confirms that the
/// transform commutes with complements and is idempotent.
pub fn is_lifting(space: &MeasureSpace, t: &SetTransform) -> Verdict {
    is_lower_density(space, t)?;
    check_all(
        space,
        t,
        &[
            TransformProperty::PreservesFiniteUnions,
            TransformProperty::CommutesWithComplement,
        ],
    )?;
    match space.sets().find(|&q| t.apply(t.apply(q)) != t.apply(q)) {
        Some(q) => Err(Violation {
            check: Check::Idempotence,
            witness: Witness::Set(q),
        }),
        None => Ok(()),
    }
}

/// Result of checking an implication on one transform.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Implication {
    /// Some premise fails.
    Vacuous,
    /// Premises and conclusion hold.
    Satisfied,
    /// Premises hold but the conclusion fails.
    Violated,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ImplicationReport {
    /// SPMCNS ∧ CWTC ∧ PFI ∧ PES ∧ PFU ⇒ SPMC.
    pub null_class_to_measure_class: Implication,
    /// CWTC ∧ PFI ⇒ PFU.
    pub complement_to_unions: Implication,
}

impl ImplicationReport {
    pub fn any_violated(&self) -> bool {
        self.null_class_to_measure_class == Implication::Violated
            || self.complement_to_unions == Implication::Violated
    }
}

fn implication(
    space: &MeasureSpace,
    t: &SetTransform,
    premises: &[TransformProperty],
    conclusion: TransformProperty,
) -> Implication {
    if check_all(space, t, premises).is_err() {
        Implication::Vacuous
    } else if check_property(space, t, conclusion).is_ok() {
        Implication::Satisfied
    } else {
        Implication::Violated
    }
}

pub fn implication_suite(space: &MeasureSpace, t: &SetTransform) -> ImplicationReport {
    use TransformProperty::*;
    ImplicationReport {
        null_class_to_measure_class: implication(
            space,
            t,
            &[
                StronglyPreservesNullClass,
                CommutesWithComplement,
                PreservesFiniteIntersections,
                PreservesEmptySet,
                PreservesFiniteUnions,
            ],
            StronglyPreservesMeasureClass,
        ),
        complement_to_unions: implication(
            space,
            t,
            &[CommutesWithComplement, PreservesFiniteIntersections],
            PreservesFiniteUnions,
        ),
    }
}

/// Checks `λ(Q) ⊆ Λ(Q) ⊆ ∁λ(∁Q)` for all `Q`; returns the first failing `Q`.
pub fn is_subordinate(
    space: &MeasureSpace,
    lambda: &SetTransform,
    lifting: &SetTransform,
) -> std::result::Result<(), MSet> {
    match space.sets().find(|&q| {
        let upper = space.complement(lambda.apply(space.complement(q)));
        !(lambda.apply(q).is_subset(lifting.apply(q)) && lifting.apply(q).is_subset(upper))
    }) {
        Some(q) => Err(q),
        None => Ok(()),
    }
}

/// The lower density determined by assigning to each null atom a nonempty
/// set of positive atoms: `λ(Q) = (Q ∩ P) ∪ {x null : supports[x] ⊆ Q}`.
/// Entries for positive atoms are ignored.
pub fn lower_density_from_supports(
    space: &MeasureSpace,
    supports: &[MSet],
) -> Result<SetTransform> {
    if supports.len() != space.atom_count() {
        return Err(Error::FunctionShape {
            got: supports.len(),
            expected: space.atom_count(),
        });
    }
    let positive = space.positive_atoms();
    for x in space.null_atoms().atoms() {
        let s = supports[x];
        if s.is_empty() || !s.is_subset(positive) {
            return Err(Error::NotLowerDensity(format!(
                "support {s:?} of null atom {x} must be a nonempty set of positive atoms"
            )));
        }
    }
    Ok(SetTransform::from_fn(space, |q| {
        let mut image = q.intersection(positive);
        for x in space.null_atoms().atoms() {
            if supports[x].is_subset(q) {
                image = image.union(MSet::singleton(x));
            }
        }
        image
    }))
}

/// For each atom `x`, the family `{Q : x ∈ λ(Q)}` as a filter base on the
/// atoms. A lower density makes each family nonempty and closed under
/// intersections.
fn point_filter(space: &MeasureSpace, lambda: &SetTransform, x: usize) -> Result<Filter> {
    let n = space.atom_count();
    let base: Vec<FixedBitSet> = space
        .sets()
        .filter(|&q| lambda.apply(q).contains(x))
        .map(|q| crate::filter_calculus::subset_of(n, &q.atoms().collect::<Vec<_>>()))
        .collect();
    Filter::from_base(n, &base)
}

/// Retraction `g` onto the positive atoms obtained by refining each point
/// filter of `λ` to the ultrafilter at its lowest kernel atom.
pub fn refine_to_retraction(space: &MeasureSpace, lambda: &SetTransform) -> Result<Vec<usize>> {
    (0..space.atom_count())
        .map(|x| {
            let filter = point_filter(space, lambda, x)?;
            Ok(filter
                .ultrafilter_refine()
                .ultrafilter_point()
                .expect("refinement is an ultrafilter"))
        })
        .collect()
}

/// Builds a lifting subordinate to the lower density `lambda`.
pub fn lower_density_to_lifting(
    space: &MeasureSpace,
    lambda: &SetTransform,
) -> Result<SetTransform> {
    is_lower_density(space, lambda).map_err(|v| Error::NotLowerDensity(v.to_string()))?;
    let g = refine_to_retraction(space, lambda)?;
    lifting_from_retraction(space, &g)
}

/// `Λ(Q) = {x : g(x) ∈ Q}` for a retraction `g` onto the positive atoms.
pub fn lifting_from_retraction(space: &MeasureSpace, g: &[usize]) -> Result<SetTransform> {
    check_retraction(space, g)?;
    Ok(SetTransform::from_fn(space, |q| {
        MSet(
            (0..g.len())
                .filter(|&x| q.contains(g[x]))
                .fold(0, |m, x| m | 1 << x),
        )
    }))
}

fn check_retraction(space: &MeasureSpace, g: &[usize]) -> Result<()> {
    if g.len() != space.atom_count() {
        return Err(Error::FunctionShape {
            got: g.len(),
            expected: space.atom_count(),
        });
    }
    let positive = space.positive_atoms();
    for (x, &gx) in g.iter().enumerate() {
        if gx >= g.len() || !positive.contains(gx) || (positive.contains(x) && gx != x) {
            return Err(Error::NotLifting(format!(
                "atom {x} maps to {gx}; a retraction must fix positive atoms and land in them"
            )));
        }
    }
    Ok(())
}

/// Recovers the retraction of a lifting: `g(x)` is the positive atom `p`
/// with `x ∈ Λ({p})`.
pub fn retraction_of(space: &MeasureSpace, lifting: &SetTransform) -> Result<Vec<usize>> {
    is_lifting(space, lifting).map_err(|v| Error::NotLifting(v.to_string()))?;
    let positive: Vec<usize> = space.positive_atoms().atoms().collect();
    Ok((0..space.atom_count())
        .map(|x| {
            *positive
                .iter()
                .find(|&&p| lifting.apply(MSet::singleton(p)).contains(x))
                .expect("the images of positive singletons partition the atoms")
        })
        .collect())
}

/// All retractions onto the positive atoms, lexicographic in the images of
/// the null atoms taken in ascending order.
pub fn enumerate_retractions(space: &MeasureSpace) -> Vec<Vec<usize>> {
    let positive: Vec<usize> = space.positive_atoms().atoms().collect();
    let nulls: Vec<usize> = space.null_atoms().atoms().collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; nulls.len()];
    loop {
        let mut g: Vec<usize> = (0..space.atom_count()).collect();
        for (k, &x) in nulls.iter().enumerate() {
            g[x] = positive[choice[k]];
        }
        out.push(g);
        // odometer with the last null atom varying fastest
        let mut k = nulls.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            choice[k] += 1;
            if choice[k] < positive.len() {
                break;
            }
            choice[k] = 0;
        }
    }
}

/// Every lifting of the space, in the order of [`enumerate_retractions`].
pub fn enumerate_liftings(space: &MeasureSpace) -> Vec<SetTransform> {
    enumerate_retractions(space)
        .iter()
        .map(|g| lifting_from_retraction(space, g).expect("enumerated retractions are valid"))
        .collect()
}

/// A map from measure-algebra classes to sets.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BooleanHom {
    map: BTreeMap<AlgebraClass, MSet>,
}

impl BooleanHom {
    /// The map must be defined on every class.
    pub fn new(space: &MeasureSpace, map: BTreeMap<AlgebraClass, MSet>) -> Result<Self> {
        let classes = quotient_classes(space);
        if map.len() != classes.len() || classes.iter().any(|c| !map.contains_key(c)) {
            return Err(Error::TransformShape {
                got: map.len(),
                expected: classes.len(),
            });
        }
        for &q in map.values() {
            space.check_set(q)?;
        }
        Ok(BooleanHom { map })
    }

    pub fn apply(&self, class: AlgebraClass) -> MSet {
        self.map[&class]
    }

    pub fn entries(&self) -> impl Iterator<Item = (AlgebraClass, MSet)> + '_ {
        self.map.iter().map(|(&c, &q)| (c, q))
    }
}

/// `ρ(π(Q)) = Λ(Q)`.
pub fn lifting_to_right_inverse(
    space: &MeasureSpace,
    lifting: &SetTransform,
) -> Result<BooleanHom> {
    is_lifting(space, lifting).map_err(|v| Error::NotLifting(v.to_string()))?;
    let map = quotient_classes(space)
        .into_iter()
        .map(|c| (c, lifting.apply(c.representative())))
        .collect();
    BooleanHom::new(space, map)
}

/// The first Boolean operation a map fails to preserve.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HomViolation {
    Bottom,
    Top,
    Join(AlgebraClass, AlgebraClass),
    Meet(AlgebraClass, AlgebraClass),
    Complement(AlgebraClass),
}

impl fmt::Display for HomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomViolation::Bottom => write!(f, "bottom is not sent to the empty set"),
            HomViolation::Top => write!(f, "top is not sent to the whole space"),
            HomViolation::Join(a, b) => write!(
                f,
                "join of {:?} and {:?} not preserved",
                a.representative(),
                b.representative()
            ),
            HomViolation::Meet(a, b) => write!(
                f,
                "meet of {:?} and {:?} not preserved",
                a.representative(),
                b.representative()
            ),
            HomViolation::Complement(a) => {
                write!(f, "complement of {:?} not preserved", a.representative())
            }
        }
    }
}

pub fn is_boolean_homomorphism(
    space: &MeasureSpace,
    rho: &BooleanHom,
) -> std::result::Result<(), HomViolation> {
    if !rho.apply(AlgebraClass::bottom()).is_empty() {
        return Err(HomViolation::Bottom);
    }
    if rho.apply(AlgebraClass::top(space)) != space.full() {
        return Err(HomViolation::Top);
    }
    let classes = quotient_classes(space);
    for &a in &classes {
        for &b in &classes {
            if rho.apply(a.join(b)) != rho.apply(a).union(rho.apply(b)) {
                return Err(HomViolation::Join(a, b));
            }
            if rho.apply(a.meet(b)) != rho.apply(a).intersection(rho.apply(b)) {
                return Err(HomViolation::Meet(a, b));
            }
        }
        if rho.apply(a.complement(space)) != space.complement(rho.apply(a)) {
            return Err(HomViolation::Complement(a));
        }
    }
    Ok(())
}

/// Checks `π ∘ ρ = id`; returns the first class that is not fixed.
pub fn is_right_inverse(
    space: &MeasureSpace,
    rho: &BooleanHom,
) -> std::result::Result<(), AlgebraClass> {
    match quotient_classes(space)
        .into_iter()
        .find(|&c| project(space, rho.apply(c)) != c)
    {
        Some(c) => Err(c),
        None => Ok(()),
    }
}
