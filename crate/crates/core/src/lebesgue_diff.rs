//! Mean values over averageable sets and their inversion by filter-kernels.
//!
//! A filter-kernel assigns to every atom a filter on the averageable sets.
//! Its limiting operator reads a function back from its table of mean
//! values by taking limits along those filters. Liftings produce kernels
//! that invert the mean-value map, and such kernels produce liftings again.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;

use crate::error::{Error, Result};
use crate::filter_calculus::{tail_filter, Filter};
use crate::measure_algebra::{
    is_boolean_homomorphism, is_lifting, is_lower_density, is_right_inverse, is_subordinate,
    lifting_to_right_inverse, lower_density_to_lifting, retraction_of, SetTransform,
};
use crate::measure_space::{MSet, MeasureSpace, PartialFunction, Rational};

/// A function defined at least on every positive atom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegrableFunction(PartialFunction);

impl IntegrableFunction {
    pub fn new(space: &MeasureSpace, f: PartialFunction) -> Result<Self> {
        if f.len() != space.atom_count() {
            return Err(Error::FunctionShape {
                got: f.len(),
                expected: space.atom_count(),
            });
        }
        if let Some(atom) = space.positive_atoms().atoms().find(|&a| f.get(a).is_none()) {
            return Err(Error::NotIntegrable { atom });
        }
        Ok(IntegrableFunction(f))
    }

    pub fn function(&self) -> &PartialFunction {
        &self.0
    }
}

/// Mean values of a function, one per averageable set in ascending order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LebesgueTransform {
    values: Vec<Rational>,
}

impl LebesgueTransform {
    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn get(&self, index: usize) -> &Rational {
        &self.values[index]
    }
}

pub fn lebesgue_transform(space: &MeasureSpace, f: &IntegrableFunction) -> LebesgueTransform {
    let f = f.function();
    let values = space
        .averageable_sets()
        .into_iter()
        .map(|q| {
            let integral = q
                .intersection(space.positive_atoms())
                .atoms()
                .fold(Rational::zero(), |acc, a| {
                    acc + space.weight(a) * f.get(a).expect("integrable")
                });
            integral / space.measure(q)
        })
        .collect();
    LebesgueTransform { values }
}

/// One filter on the averageable sets per atom.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FilterKernel {
    filters: Vec<Filter>,
}

impl FilterKernel {
    pub fn new(space: &MeasureSpace, filters: Vec<Filter>) -> Result<Self> {
        if filters.len() != space.atom_count() {
            return Err(Error::FunctionShape {
                got: filters.len(),
                expected: space.atom_count(),
            });
        }
        let ground = space.averageable_sets().len();
        if let Some(f) = filters.iter().find(|f| f.ground() != ground) {
            return Err(Error::GroundMismatch {
                left: f.ground(),
                right: ground,
            });
        }
        Ok(FilterKernel { filters })
    }

    /// The trivial filter at every atom.
    pub fn trivial(space: &MeasureSpace) -> Self {
        let ground = space.averageable_sets().len();
        let filter = Filter::trivial(ground).expect("at least one averageable set");
        FilterKernel {
            filters: vec![filter; space.atom_count()],
        }
    }

    pub fn filter(&self, atom: usize) -> &Filter {
        &self.filters[atom]
    }

    pub fn filters(&self) -> &[Filter] {
        &self.filters
    }

    pub fn all_ultrafilters(&self) -> bool {
        self.filters.iter().all(Filter::is_ultrafilter)
    }
}

/// Limits of `lam` along each `Φ(x)`; undefined where no limit exists.
pub fn limiting_operator(kernel: &FilterKernel, lam: &[Rational]) -> PartialFunction {
    PartialFunction::new(
        kernel
            .filters
            .iter()
            .map(|f| f.limit_discrete(lam))
            .collect(),
    )
}

/// A member of the finite family used to test differentiation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TestFunction {
    Indicator(MSet),
    /// Takes the values `1, 2, ...` on the positive atoms in order and `0`
    /// on null atoms.
    Separating,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct DifferentiationFailure {
    pub function: TestFunction,
    /// First positive atom where the function is not recovered.
    pub atom: usize,
}

impl std::fmt::Display for DifferentiationFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.function {
            TestFunction::Indicator(q) => {
                write!(f, "indicator of {q:?} not recovered at atom {}", self.atom)
            }
            TestFunction::Separating => {
                write!(f, "separating function not recovered at atom {}", self.atom)
            }
        }
    }
}

pub fn separating_function(space: &MeasureSpace) -> PartialFunction {
    let positive = space.positive_atoms();
    let mut next = 0i64;
    let values: Vec<i64> = (0..space.atom_count())
        .map(|a| {
            if positive.contains(a) {
                next += 1;
                next
            } else {
                0
            }
        })
        .collect();
    PartialFunction::from_integers(&values)
}

/// Seeded random function with small rational values.
pub fn random_function(space: &MeasureSpace, rng: &mut impl Rng) -> PartialFunction {
    PartialFunction::total(
        (0..space.atom_count())
            .map(|_| {
                let num: i64 = rng.gen_range(-50..=50);
                let den: i64 = rng.gen_range(1..=12);
                Rational::new(BigInt::from(num), BigInt::from(den))
            })
            .collect(),
    )
}

/// First positive atom where the kernel fails to recover `f` from its mean
/// values.
pub fn recovery_failure(
    space: &MeasureSpace,
    kernel: &FilterKernel,
    f: &IntegrableFunction,
) -> Option<usize> {
    let lam = lebesgue_transform(space, f);
    limiting_operator(kernel, lam.values()).first_ae_mismatch(space, f.function())
}

/// Checks a.e. recovery of every indicator (ascending) and of the
/// separating function.
pub fn differentiates(
    space: &MeasureSpace,
    kernel: &FilterKernel,
) -> std::result::Result<(), DifferentiationFailure> {
    let tests = space
        .sets()
        .map(|q| (TestFunction::Indicator(q), space.indicator(q)))
        .chain(std::iter::once((
            TestFunction::Separating,
            separating_function(space),
        )));
    for (function, f) in tests {
        let f = IntegrableFunction::new(space, f).expect("total function");
        if let Some(atom) = recovery_failure(space, kernel, &f) {
            return Err(DifferentiationFailure { function, atom });
        }
    }
    Ok(())
}

/// `λ(Q) = {x : the mean values of 1_Q converge to 1 along Φ(x)}`.
pub fn lower_density_from_kernel(
    space: &MeasureSpace,
    kernel: &FilterKernel,
) -> Result<SetTransform> {
    differentiates(space, kernel).map_err(|e| Error::NotDifferentiating(e.to_string()))?;
    let one = Rational::from_integer(BigInt::from(1));
    let table: Vec<MSet> = space
        .sets()
        .map(|q| {
            let f = IntegrableFunction::new(space, space.indicator(q)).expect("total function");
            let limits = limiting_operator(kernel, lebesgue_transform(space, &f).values());
            MSet(
                (0..space.atom_count())
                    .filter(|&x| limits.get(x) == Some(&one))
                    .fold(0, |m, x| m | 1 << x),
            )
        })
        .collect();
    SetTransform::new(space, table)
}

/// A family of averageable sets together with, for every atom, the members
/// containing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferentiationBasis {
    members: Vec<MSet>,
    families: Vec<Vec<MSet>>,
    support: MSet,
}

impl DifferentiationBasis {
    /// Checks that every nonempty per-point family is directed downward and
    /// that the points with a nonempty family form a set of full measure.
    pub fn new(space: &MeasureSpace, mut members: Vec<MSet>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        for &q in &members {
            space.check_set(q)?;
            if !space.is_averageable(q) {
                return Err(Error::InvalidBasis(format!("{q:?} has measure zero")));
            }
        }
        let families: Vec<Vec<MSet>> = (0..space.atom_count())
            .map(|x| members.iter().copied().filter(|q| q.contains(x)).collect())
            .collect();
        for (x, family) in families.iter().enumerate() {
            for &a in family {
                for &b in family {
                    let meet = a.intersection(b);
                    if !family.iter().any(|c| c.is_subset(meet)) {
                        return Err(Error::InvalidBasis(format!(
                            "members {a:?} and {b:?} through atom {x} have no common refinement"
                        )));
                    }
                }
            }
        }
        let support = MSet(
            families
                .iter()
                .enumerate()
                .filter(|(_, f)| !f.is_empty())
                .fold(0, |m, (x, _)| m | 1 << x),
        );
        if !space.is_null(space.complement(support)) {
            return Err(Error::InvalidBasis(format!(
                "support {support:?} does not have full measure"
            )));
        }
        Ok(DifferentiationBasis {
            members,
            families,
            support,
        })
    }

    pub fn members(&self) -> &[MSet] {
        &self.members
    }

    /// Members containing `x`, ascending.
    pub fn family(&self, x: usize) -> &[MSet] {
        &self.families[x]
    }

    pub fn support(&self) -> MSet {
        self.support
    }

    /// Smallest member containing `x`, when the family has a minimum.
    pub fn minimum(&self, x: usize) -> Option<MSet> {
        let family = &self.families[x];
        family
            .iter()
            .copied()
            .find(|&m| family.iter().all(|&c| m.is_subset(c)))
    }
}

/// The averageable sets fixed by the lifting.
pub fn basis_from_lifting(
    space: &MeasureSpace,
    lifting: &SetTransform,
) -> Result<DifferentiationBasis> {
    is_lifting(space, lifting).map_err(|v| Error::NotLifting(v.to_string()))?;
    let members = space
        .averageable_sets()
        .into_iter()
        .filter(|&q| lifting.apply(q) == q)
        .collect();
    DifferentiationBasis::new(space, members)
}

/// `Φ(x)` is the image in the averageable sets of the tail filter of the
/// basis sets through `x`; points outside the support get the trivial
/// filter.
pub fn kernel_from_lifting(space: &MeasureSpace, lifting: &SetTransform) -> Result<FilterKernel> {
    let basis = basis_from_lifting(space, lifting)?;
    let index = space.averageable_index();
    let ground = index.len();
    let filters = (0..space.atom_count())
        .map(|x| {
            let family = basis.family(x);
            if family.is_empty() {
                return Filter::trivial(ground);
            }
            let inclusion: Vec<usize> = family
                .iter()
                .map(|&q| index.index_of(q).expect("basis sets are averageable"))
                .collect();
            tail_filter(family)?.direct_image(&inclusion, ground)
        })
        .collect::<Result<Vec<_>>>()?;
    FilterKernel::new(space, filters)
}

/// Outcome of the round trip lifting → kernel → lower density → lifting
/// for one starting lifting. Each stage holds `Err(reason)` on failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftingRun {
    pub retraction: Vec<usize>,
    pub differentiates: std::result::Result<(), String>,
    pub lower_density: std::result::Result<(), String>,
    pub lifting: std::result::Result<(), String>,
    pub subordinate: std::result::Result<(), String>,
    pub boolean_hom: std::result::Result<(), String>,
    pub right_inverse: std::result::Result<(), String>,
    /// The kernel's lower density equals the starting lifting.
    pub density_round_trip: bool,
    /// The final lifting equals the starting lifting.
    pub round_trip: bool,
}

impl LiftingRun {
    pub fn passed(&self) -> bool {
        self.differentiates.is_ok()
            && self.lower_density.is_ok()
            && self.lifting.is_ok()
            && self.subordinate.is_ok()
            && self.boolean_hom.is_ok()
            && self.right_inverse.is_ok()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub runs: Vec<LiftingRun>,
}

impl EquivalenceReport {
    pub fn passed(&self) -> bool {
        !self.runs.is_empty() && self.runs.iter().all(LiftingRun::passed)
    }

    pub fn round_trips(&self) -> bool {
        self.runs
            .iter()
            .all(|r| r.round_trip && r.density_round_trip)
    }
}

fn not_reached() -> std::result::Result<(), String> {
    Err("not reached".into())
}

/// Runs both directions starting from one lifting.
pub fn run_lifting(space: &MeasureSpace, start: &SetTransform) -> Result<LiftingRun> {
    let retraction = retraction_of(space, start)?;
    let kernel = kernel_from_lifting(space, start)?;
    let mut run = LiftingRun {
        retraction,
        differentiates: differentiates(space, &kernel).map_err(|e| e.to_string()),
        lower_density: not_reached(),
        lifting: not_reached(),
        subordinate: not_reached(),
        boolean_hom: not_reached(),
        right_inverse: not_reached(),
        density_round_trip: false,
        round_trip: false,
    };
    let Ok(density) = lower_density_from_kernel(space, &kernel) else {
        return Ok(run);
    };
    run.density_round_trip = &density == start;
    run.lower_density = is_lower_density(space, &density).map_err(|v| v.to_string());
    let Ok(lifted) = lower_density_to_lifting(space, &density) else {
        return Ok(run);
    };
    run.round_trip = &lifted == start;
    run.lifting = is_lifting(space, &lifted).map_err(|v| v.to_string());
    run.subordinate =
        is_subordinate(space, &density, &lifted).map_err(|q| format!("sandwich fails at {q:?}"));
    let rho = lifting_to_right_inverse(space, &lifted)?;
    run.boolean_hom = is_boolean_homomorphism(space, &rho).map_err(|v| v.to_string());
    run.right_inverse = is_right_inverse(space, &rho)
        .map_err(|c| format!("class {:?} is not fixed", c.representative()));
    Ok(run)
}

/// Runs [`run_lifting`] for every lifting of the space.
pub fn verify_equivalence(space: &MeasureSpace) -> Result<EquivalenceReport> {
    let runs = crate::measure_algebra::enumerate_liftings(space)
        .iter()
        .map(|l| run_lifting(space, l))
        .collect::<Result<_>>()?;
    Ok(EquivalenceReport { runs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure_algebra::lifting_from_retraction;

    const A: usize = 0;
    const B: usize = 1;
    const N: usize = 2;

    fn s1() -> MeasureSpace {
        MeasureSpace::from_integers(&[1, 1, 0]).unwrap()
    }

    fn lambda_a(space: &MeasureSpace) -> SetTransform {
        lifting_from_retraction(space, &[A, B, A]).unwrap()
    }

    fn int(v: i64) -> Rational {
        Rational::from_integer(BigInt::from(v))
    }

    fn integrable(space: &MeasureSpace, values: &[i64]) -> IntegrableFunction {
        IntegrableFunction::new(space, PartialFunction::from_integers(values)).unwrap()
    }

    #[test]
    fn transform_of_fixture_function() {
        let s = s1();
        let t = lebesgue_transform(&s, &integrable(&s, &[2, 4, 100]));
        // order: {a},{b},{a,b},{a,n},{b,n},X
        let expected: Vec<Rational> = [2, 4, 3, 2, 4, 3].iter().map(|&v| int(v)).collect();
        assert_eq!(t.values(), expected.as_slice());
    }

    #[test]
    fn transform_ignores_null_atoms() {
        let s = s1();
        let f = PartialFunction::new(vec![Some(int(2)), Some(int(4)), None]);
        let f = IntegrableFunction::new(&s, f).unwrap();
        assert_eq!(
            lebesgue_transform(&s, &f),
            lebesgue_transform(&s, &integrable(&s, &[2, 4, -7]))
        );
        let missing = PartialFunction::new(vec![None, Some(int(4)), Some(int(1))]);
        assert_eq!(
            IntegrableFunction::new(&s, missing),
            Err(Error::NotIntegrable { atom: 0 })
        );
    }

    #[test]
    fn transform_of_indicator_is_conditional_probability() {
        let s = MeasureSpace::from_integers(&[3, 1, 0, 2]).unwrap();
        let index = s.averageable_index();
        for q in s.sets() {
            let t = lebesgue_transform(&s, &IntegrableFunction::new(&s, s.indicator(q)).unwrap());
            for (i, &r) in index.sets().iter().enumerate() {
                assert_eq!(t.get(i), &s.conditional_prob(q, r).unwrap());
            }
        }
    }

    #[test]
    fn constant_function_has_constant_transform() {
        let s = s1();
        let t = lebesgue_transform(&s, &integrable(&s, &[5, 5, 5]));
        assert!(t.values().iter().all(|v| v == &int(5)));
    }

    #[test]
    fn trivial_kernel_limits() {
        let s = s1();
        let kernel = FilterKernel::trivial(&s);
        let varying = lebesgue_transform(&s, &integrable(&s, &[2, 4, 0]));
        assert_eq!(
            limiting_operator(&kernel, varying.values()),
            PartialFunction::nowhere_defined(3)
        );
        let constant = lebesgue_transform(&s, &integrable(&s, &[7, 7, 7]));
        assert_eq!(
            limiting_operator(&kernel, constant.values()),
            PartialFunction::from_integers(&[7, 7, 7])
        );
        assert_eq!(
            differentiates(&s, &kernel),
            Err(DifferentiationFailure {
                function: TestFunction::Indicator(MSet::singleton(A)),
                atom: A,
            })
        );
    }

    #[test]
    fn basis_of_lambda_a() {
        let s = s1();
        let basis = basis_from_lifting(&s, &lambda_a(&s)).unwrap();
        let set = MSet::from_atoms;
        assert_eq!(basis.members(), &[set(&[B]), set(&[A, N]), set(&[A, B, N])]);
        assert_eq!(basis.family(A), &[set(&[A, N]), set(&[A, B, N])]);
        assert_eq!(basis.minimum(A), Some(set(&[A, N])));
        assert_eq!(basis.support(), s.full());

        let identity_space = MeasureSpace::from_integers(&[1, 2]).unwrap();
        let basis =
            basis_from_lifting(&identity_space, &SetTransform::identity(&identity_space)).unwrap();
        assert_eq!(
            basis.members(),
            identity_space.averageable_sets().as_slice()
        );
    }

    #[test]
    fn basis_axioms_are_enforced() {
        let s = s1();
        let set = MSet::from_atoms;
        assert!(matches!(
            DifferentiationBasis::new(&s, vec![set(&[A, B]), set(&[A, N])]),
            Err(Error::InvalidBasis(_))
        ));
        assert!(matches!(
            DifferentiationBasis::new(&s, vec![set(&[A])]),
            Err(Error::InvalidBasis(_))
        ));
        assert!(matches!(
            DifferentiationBasis::new(&s, vec![set(&[N])]),
            Err(Error::InvalidBasis(_))
        ));
        // {n} misses the basis but is null
        assert!(DifferentiationBasis::new(&s, vec![set(&[A]), set(&[B])]).is_ok());
    }

    #[test]
    fn kernel_of_lambda_a() {
        let s = s1();
        let kernel = kernel_from_lifting(&s, &lambda_a(&s)).unwrap();
        let index = s.averageable_index();
        let at = |q: MSet| Filter::principal_ultrafilter(6, index.index_of(q).unwrap()).unwrap();
        assert_eq!(kernel.filter(A), &at(MSet::from_atoms(&[A, N])));
        assert_eq!(kernel.filter(N), &at(MSet::from_atoms(&[A, N])));
        assert_eq!(kernel.filter(B), &at(MSet::from_atoms(&[B])));
        assert!(kernel.all_ultrafilters());

        let lam = lebesgue_transform(&s, &integrable(&s, &[2, 4, 9]));
        assert_eq!(
            limiting_operator(&kernel, lam.values()),
            PartialFunction::from_integers(&[2, 4, 2])
        );
        assert_eq!(differentiates(&s, &kernel), Ok(()));
    }

    #[test]
    fn lower_density_of_lambda_a_kernel() {
        let s = s1();
        let l = lambda_a(&s);
        let kernel = kernel_from_lifting(&s, &l).unwrap();
        let density = lower_density_from_kernel(&s, &kernel).unwrap();
        assert_eq!(density.apply(MSet::singleton(A)), MSet::from_atoms(&[A, N]));
        assert_eq!(density.apply(MSet::EMPTY), MSet::EMPTY);
        assert_eq!(density.apply(s.full()), s.full());
        assert_eq!(density, l);
        assert!(matches!(
            lower_density_from_kernel(&s, &FilterKernel::trivial(&s)),
            Err(Error::NotDifferentiating(_))
        ));
    }

    #[test]
    fn one_positive_atom_kernels_differentiate() {
        let s = MeasureSpace::from_integers(&[0, 3, 0]).unwrap();
        let kernel =
            kernel_from_lifting(&s, &crate::measure_algebra::enumerate_liftings(&s)[0]).unwrap();
        let index = s.averageable_index();
        let min = index.index_of(MSet::from_atoms(&[0, 1, 2])).unwrap();
        for x in 0..3 {
            assert_eq!(kernel.filter(x).kernel_points(), vec![min]);
        }
        // any kernel at all: every mean value is the value at the positive atom
        let ground = index.len();
        let any = FilterKernel::new(&s, vec![Filter::trivial(ground).unwrap(); 3]).unwrap();
        assert_eq!(differentiates(&s, &any), Ok(()));
    }

    #[test]
    fn equivalence_on_fixtures() {
        let report = verify_equivalence(&s1()).unwrap();
        assert_eq!(report.runs.len(), 2);
        assert!(report.passed());
        assert!(report.round_trips());

        let report =
            verify_equivalence(&MeasureSpace::from_integers(&[1, 1, 0, 0]).unwrap()).unwrap();
        assert_eq!(report.runs.len(), 4);
        assert!(report.passed() && report.round_trips());

        let report = verify_equivalence(&MeasureSpace::from_integers(&[2, 5]).unwrap()).unwrap();
        assert_eq!(report.runs.len(), 1);
        assert!(report.passed() && report.round_trips());
    }
}
