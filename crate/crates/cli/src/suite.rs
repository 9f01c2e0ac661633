//! Exhaustive and oracle-backed sweeps over small instances. Each sweep
//! returns one [`CheckResult`] whose counts do not depend on scheduling.

use std::collections::BTreeSet;

use liftlab::category_kernel::{
    all_functors, all_nat_homs, all_nat_trans, cat_from_rpm, check_nat_hom, check_nat_trans,
    hom_from_nat, library_entry, nat_from_hom, rpm_from_cat, Functor, NatHom, NatTrans,
};
use liftlab::filter_calculus::{subset_of, Filter};
use liftlab::lebesgue_diff::{
    differentiates, kernel_from_lifting, random_function, recovery_failure, run_lifting,
    verify_equivalence, IntegrableFunction,
};
use liftlab::measure_algebra::{enumerate_liftings, is_lifting, SetTransform};
use liftlab::partial_magma::{
    classify, hmul, interchange_check, pair_of, single_unit_totality, vmul, PartialMagma,
    RegularMagma,
};
use liftlab::yoneda_finite::{yoneda_roundtrip, ProbeFamily};
use liftlab::{MSet, MeasureSpace, Rational};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::report::{CheckResult, Report};
use crate::RunOptions;

/// Random functions tried per lifting kernel.
pub const RANDOM_FUNCTIONS: usize = 100;

/// Largest raw family count for which NatHoms are also found by trying
/// every assignment of pairs to arrows.
pub const RAW_NAT_HOM_LIMIT: u64 = 1_000_000;

/// `f(0), ..., f(n-1)` in order, on the rayon pool when `parallel`.
fn map_range<R: Send>(parallel: bool, n: u64, f: impl Fn(u64) -> R + Sync + Send) -> Vec<R> {
    if parallel {
        (0..n).into_par_iter().map(f).collect()
    } else {
        (0..n).map(f).collect()
    }
}

fn filter_range(parallel: bool, n: u64, keep: impl Fn(u64) -> bool + Sync + Send) -> Vec<u64> {
    if parallel {
        (0..n).into_par_iter().filter(|&c| keep(c)).collect()
    } else {
        (0..n).filter(|&c| keep(c)).collect()
    }
}

fn map_items<T: Sync, R: Send>(
    parallel: bool,
    items: &[T],
    f: impl Fn(&T) -> R + Sync + Send,
) -> Vec<R> {
    if parallel {
        items.par_iter().map(f).collect()
    } else {
        items.iter().map(f).collect()
    }
}

/// Sums per-item tallies and keeps the first witness in item order.
#[derive(Clone, Debug, Default)]
struct Tally {
    counts: Vec<u64>,
    witness: Option<String>,
}

impl Tally {
    fn new(counts: Vec<u64>, witness: Option<String>) -> Self {
        Tally { counts, witness }
    }

    fn merge(items: Vec<Tally>, width: usize) -> Tally {
        let mut total = Tally::new(vec![0; width], None);
        for t in items {
            for (a, b) in total.counts.iter_mut().zip(&t.counts) {
                *a += b;
            }
            if total.witness.is_none() {
                total.witness = t.witness;
            }
        }
        total
    }

    fn outcome(&self) -> Result<(), String> {
        match &self.witness {
            Some(w) => Err(w.clone()),
            None => Ok(()),
        }
    }
}

/// `[w0, w1, ...]` with weights in lowest terms.
pub fn weights_label(space: &MeasureSpace) -> String {
    let w: Vec<String> = space.weights().iter().map(|w| w.to_string()).collect();
    format!("[{}]", w.join(", "))
}

fn s1() -> MeasureSpace {
    MeasureSpace::from_integers(&[1, 1, 0]).expect("valid weights")
}

fn transform_from_code(space: &MeasureSpace, mut code: u64) -> SetTransform {
    let sets = space.set_count() as u64;
    let table = (0..sets)
        .map(|_| {
            let v = code % sets;
            code /= sets;
            MSet(v)
        })
        .collect();
    SetTransform::new(space, table).expect("entries are in range")
}

/// Every set transform of the three-atom fixture `[1, 1, 0]` filtered by
/// the lifting check, against the retraction enumeration.
pub fn lifting_enumeration(opts: &RunOptions) -> CheckResult {
    let space = s1();
    let sets = space.set_count() as u64;
    let total = sets.pow(sets as u32);
    let passing = filter_range(opts.parallel, total, |code| {
        is_lifting(&space, &transform_from_code(&space, code)).is_ok()
    });
    let brute: BTreeSet<Vec<MSet>> = passing
        .iter()
        .map(|&c| transform_from_code(&space, c).table().to_vec())
        .collect();
    let enumerated: BTreeSet<Vec<MSet>> = enumerate_liftings(&space)
        .iter()
        .map(|t| t.table().to_vec())
        .collect();
    let outcome = if brute == enumerated {
        Ok(())
    } else {
        Err(format!(
            "brute force finds {} liftings, enumeration {}",
            brute.len(),
            enumerated.len()
        ))
    };
    CheckResult::new("lifting enumeration matches brute force", outcome)
        .count("transforms", total)
        .count("brute_force_liftings", brute.len() as u64)
        .count("enumerated_liftings", enumerated.len() as u64)
}

/// Every space with at most five atoms of which at most two are null,
/// one per null pattern. Positive atom `i` weighs `(2i + 1)/(i + 2)`.
pub fn small_spaces() -> Vec<MeasureSpace> {
    let mut out = Vec::new();
    for n in 1..=5usize {
        for nulls in 0u64..1 << n {
            if nulls.count_ones() > 2 || nulls.count_ones() as usize == n {
                continue;
            }
            let weights = (0..n)
                .map(|i| {
                    if nulls >> i & 1 == 1 {
                        Rational::from_integer(0.into())
                    } else {
                        Rational::new((2 * i as i64 + 1).into(), (i as i64 + 2).into())
                    }
                })
                .collect();
            out.push(MeasureSpace::new(weights).expect("positive total"));
        }
    }
    out
}

fn lifting_items(spaces: &[MeasureSpace]) -> Vec<(usize, usize, SetTransform)> {
    spaces
        .iter()
        .enumerate()
        .flat_map(|(s, space)| {
            enumerate_liftings(space)
                .into_iter()
                .enumerate()
                .map(move |(l, t)| (s, l, t))
        })
        .collect()
}

/// Kernels built from liftings recover every indicator, the separating
/// function, and seeded random rational functions exactly a.e.
pub fn lifting_kernels_differentiate(opts: &RunOptions) -> CheckResult {
    let spaces = small_spaces();
    let items = lifting_items(&spaces);
    let tallies = map_items(opts.parallel, &items, |(s, l, lifting)| {
        let space = &spaces[*s];
        let label = format!("space {}, lifting {l}", weights_label(space));
        let kernel = match kernel_from_lifting(space, lifting) {
            Ok(k) => k,
            Err(e) => return Tally::new(vec![0, 0, 1], Some(format!("{label}: {e}"))),
        };
        let mut witness = differentiates(space, &kernel)
            .err()
            .map(|e| format!("{label}: {e}"));
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        rng.set_stream((*s as u64) << 32 | *l as u64);
        let mut failures = u64::from(witness.is_some());
        for i in 0..RANDOM_FUNCTIONS {
            let f = IntegrableFunction::new(space, random_function(space, &mut rng))
                .expect("random functions are total");
            if let Some(atom) = recovery_failure(space, &kernel, &f) {
                failures += 1;
                witness.get_or_insert_with(|| {
                    format!("{label}: random function {i} not recovered at atom {atom}")
                });
            }
        }
        Tally::new(
            vec![
                1u64 << space.atom_count(),
                RANDOM_FUNCTIONS as u64,
                failures,
            ],
            witness,
        )
    });
    let total = Tally::merge(tallies, 3);
    CheckResult::new("lifting kernels differentiate", total.outcome())
        .count("spaces", spaces.len() as u64)
        .count("liftings", items.len() as u64)
        .count("indicators", total.counts[0])
        .count("random_functions", total.counts[1])
        .count("failures", total.counts[2])
}

/// From each lifting kernel back to a lower density, a lifting and a
/// Boolean right inverse of the projection, with round trips on the
/// integer fixtures.
pub fn differentiation_gives_liftings(opts: &RunOptions) -> CheckResult {
    let spaces = small_spaces();
    let items = lifting_items(&spaces);
    let tallies = map_items(opts.parallel, &items, |(s, l, lifting)| {
        let space = &spaces[*s];
        let label = format!("space {}, lifting {l}", weights_label(space));
        let run = match run_lifting(space, lifting) {
            Ok(r) => r,
            Err(e) => return Tally::new(vec![0, 0], Some(format!("{label}: {e}"))),
        };
        let stages = [
            ("differentiation", &run.differentiates),
            ("lower density", &run.lower_density),
            ("lifting", &run.lifting),
            ("subordination", &run.subordinate),
            ("boolean homomorphism", &run.boolean_hom),
            ("right inverse", &run.right_inverse),
        ];
        let witness = stages
            .iter()
            .find_map(|(stage, r)| r.as_ref().err().map(|e| format!("{label}: {stage}: {e}")));
        let round_trip = run.round_trip && run.density_round_trip;
        Tally::new(
            vec![u64::from(witness.is_none()), u64::from(round_trip)],
            witness,
        )
    });
    let mut total = Tally::merge(tallies, 2);
    let mut fixture_round_trips = 0;
    for weights in [&[1, 1, 0][..], &[1, 1, 0, 0]] {
        let space = MeasureSpace::from_integers(weights).expect("valid weights");
        match verify_equivalence(&space) {
            Ok(report) if report.passed() && report.round_trips() => fixture_round_trips += 1,
            Ok(_) => {
                total
                    .witness
                    .get_or_insert_with(|| format!("round trip fails on {weights:?}"));
            }
            Err(e) => {
                total
                    .witness
                    .get_or_insert_with(|| format!("{weights:?}: {e}"));
            }
        }
    }
    CheckResult::new("differentiating kernels give liftings", total.outcome())
        .count("liftings", items.len() as u64)
        .count("passed", total.counts[0])
        .count("round_trips", total.counts[1])
        .count("fixture_round_trips", fixture_round_trips)
}

/// Upward closure of the finite intersections of `base`, as a bitmask over
/// the subsets of a ground of at most four points.
fn literal_filter(ground: usize, base: u64) -> u64 {
    let subsets = 1usize << ground;
    let mut closed = base;
    loop {
        let mut grown = closed;
        for a in (0..subsets).filter(|&a| closed >> a & 1 == 1) {
            for b in (0..subsets).filter(|&b| closed >> b & 1 == 1) {
                grown |= 1 << (a & b);
            }
            for s in (0..subsets).filter(|&s| s & a == a) {
                grown |= 1 << s;
            }
        }
        if grown == closed {
            return closed;
        }
        closed = grown;
    }
}

fn points_of(mask: usize, ground: usize) -> Vec<usize> {
    (0..ground).filter(|&p| mask >> p & 1 == 1).collect()
}

/// Every base on grounds of size at most four: the kernel membership test
/// against the literal generated family.
pub fn filter_principality(opts: &RunOptions) -> CheckResult {
    let mut tallies = Vec::new();
    for ground in 1..=4usize {
        let subsets = 1usize << ground;
        let part = map_range(opts.parallel, 1u64 << subsets, |family| {
            if family == 0 {
                return Tally::new(vec![0, 0], None);
            }
            let base: Vec<_> = (0..subsets)
                .filter(|&s| family >> s & 1 == 1)
                .map(|s| subset_of(ground, &points_of(s, ground)))
                .collect();
            let closed = literal_filter(ground, family);
            let witness = match Filter::from_base(ground, &base) {
                Ok(filter) => (0..subsets)
                    .find(|&s| {
                        filter.contains(&subset_of(ground, &points_of(s, ground)))
                            != (closed >> s & 1 == 1)
                    })
                    .map(|s| format!("ground {ground}, base {family:#b}: membership of {s:#b}")),
                Err(_) if closed & 1 == 1 => None,
                Err(e) => Some(format!("ground {ground}, base {family:#b}: {e}")),
            };
            Tally::new(vec![1, u64::from(closed & 1 == 0)], witness)
        });
        tallies.extend(part);
    }
    let total = Tally::merge(tallies, 2);
    CheckResult::new("filters are determined by their kernels", total.outcome())
        .count("bases", total.counts[0])
        .count("proper_filters", total.counts[1])
}

/// Quadruples of pairs where both sides of the interchange law are
/// defined, and how many of those disagree.
pub fn interchange_tally(pm: &PartialMagma) -> (u64, u64) {
    let n = pm.size();
    let pairs: Vec<(usize, usize)> = (0..n * n).map(|i| pair_of(n, i)).collect();
    let (mut defined, mut differ) = (0, 0);
    for &xp in &pairs {
        for &zp in &pairs {
            let Some(top) = vmul(pm, xp, zp) else {
                continue;
            };
            for &x in &pairs {
                let Some(left) = hmul(xp, x) else {
                    continue;
                };
                for &z in &pairs {
                    let Some(lhs) = vmul(pm, x, z).and_then(|bottom| hmul(top, bottom)) else {
                        continue;
                    };
                    let Some(rhs) = hmul(zp, z).and_then(|right| vmul(pm, left, right)) else {
                        continue;
                    };
                    defined += 1;
                    differ += u64::from(lhs != rhs);
                }
            }
        }
    }
    (defined, differ)
}

/// Every partial operation on three elements.
pub fn interchange_law(opts: &RunOptions) -> CheckResult {
    let n = 3;
    let tables = PartialMagma::table_count(n);
    let tallies = map_range(opts.parallel, tables, |code| {
        let pm = PartialMagma::from_code(n, code);
        let (defined, differ) = interchange_tally(&pm);
        let witness = match (differ, interchange_check(&pm)) {
            (0, Ok(())) => None,
            (0, Err(v)) => Some(format!("table {code}: checker reports {v:?}")),
            (k, Ok(())) => Some(format!(
                "table {code}: {k} violations missed by the checker"
            )),
            (_, Err(v)) => Some(format!("table {code}: {v:?}")),
        };
        Tally::new(vec![defined, differ], witness)
    });
    let total = Tally::merge(tallies, 2);
    CheckResult::new(
        "interchange law on all three-element tables",
        total.outcome(),
    )
    .count("tables", tables)
    .count("quadruples", tables * (n as u64).pow(8))
    .count("both_sides_defined", total.counts[0])
    .count("violations", total.counts[1])
}

fn all_tables(max: usize) -> Vec<(usize, u64)> {
    (1..=max)
        .flat_map(|n| (0..PartialMagma::table_count(n)).map(move |c| (n, c)))
        .collect()
}

fn regular_tables(opts: &RunOptions, max: usize) -> Vec<(usize, u64)> {
    let tables = all_tables(max);
    let keep = map_items(opts.parallel, &tables, |&(n, c)| {
        classify(&PartialMagma::from_code(n, c)).regular
    });
    tables
        .into_iter()
        .zip(keep)
        .filter_map(|(t, k)| k.then_some(t))
        .collect()
}

/// A regular magma has one unit exactly when its product is total.
pub fn single_unit_totality_sweep(opts: &RunOptions) -> CheckResult {
    let tables = all_tables(3);
    let regular = regular_tables(opts, 3);
    let tallies = map_items(opts.parallel, &regular, |&(n, c)| {
        let pm = PartialMagma::from_code(n, c);
        match single_unit_totality(&pm) {
            Ok(s) if s.holds() => Tally::new(vec![u64::from(s.single_unit), 0], None),
            Ok(s) => Tally::new(
                vec![u64::from(s.single_unit), 1],
                Some(format!(
                    "size {n}, table {c}: single unit {}, total {}",
                    s.single_unit, s.total
                )),
            ),
            Err(e) => Tally::new(vec![0, 1], Some(format!("size {n}, table {c}: {e}"))),
        }
    });
    let total = Tally::merge(tallies, 2);
    CheckResult::new("single unit exactly when total", total.outcome())
        .count("tables", tables.len() as u64)
        .count("regular", regular.len() as u64)
        .count("monoids", total.counts[0])
        .count("violations", total.counts[1])
}

fn category_round_trip(pm: &PartialMagma) -> Result<(), String> {
    let cat = cat_from_rpm(pm).map_err(|e| e.to_string())?;
    let back = rpm_from_cat(&cat);
    if &back != pm {
        return Err("arrows to category and back changes the table".into());
    }
    match cat_from_rpm(&back) {
        Ok(again) if again == cat => Ok(()),
        Ok(_) => Err("category to arrows and back changes the category".into()),
        Err(e) => Err(e.to_string()),
    }
}

pub const LIBRARY_CATEGORIES: [&str; 5] = ["one", "two", "discrete_two", "three", "square"];

/// Categories and regular magmas are the same structure.
pub fn category_round_trips(opts: &RunOptions) -> CheckResult {
    let mut witness = None;
    for name in LIBRARY_CATEGORIES {
        let entry = library_entry(name).expect("library entry");
        if let Err(e) = category_round_trip(&entry.magma) {
            witness.get_or_insert(format!("{name}: {e}"));
        }
    }
    let regular = regular_tables(opts, 3);
    let tallies = map_items(opts.parallel, &regular, |&(n, c)| {
        let e = category_round_trip(&PartialMagma::from_code(n, c)).err();
        Tally::new(vec![], e.map(|e| format!("size {n}, table {c}: {e}")))
    });
    let mut total = Tally::merge(tallies, 0);
    if witness.is_some() {
        total.witness = witness;
    }
    CheckResult::new("categories are regular magmas", total.outcome())
        .count("library", LIBRARY_CATEGORIES.len() as u64)
        .count("regular_tables", regular.len() as u64)
}

fn nat_families_raw(c: &RegularMagma, d: &RegularMagma, from: &Functor, to: &Functor) -> u64 {
    let objects = c.units().len() as u32;
    let total = (d.size() as u64).pow(objects);
    (0..total)
        .filter(|&code| {
            let mut rest = code;
            let components = (0..objects)
                .map(|_| {
                    let v = (rest % d.size() as u64) as usize;
                    rest /= d.size() as u64;
                    v
                })
                .collect();
            let tau = NatTrans {
                from: from.clone(),
                to: to.clone(),
                components,
            };
            check_nat_trans(c, d, &tau).is_ok()
        })
        .count() as u64
}

fn nat_homs_raw(c: &RegularMagma, d: &RegularMagma, from: &Functor, to: &Functor) -> Option<u64> {
    let pairs = (d.size() * d.size()) as u64;
    let total = pairs.checked_pow(c.size() as u32)?;
    if total > RAW_NAT_HOM_LIMIT {
        return None;
    }
    let valid = (0..total)
        .filter(|&code| {
            let mut rest = code;
            let components = (0..c.size())
                .map(|_| {
                    let v = (rest % pairs) as usize;
                    rest /= pairs;
                    pair_of(d.size(), v)
                })
                .collect();
            let alpha = NatHom {
                from: from.clone(),
                to: to.clone(),
                components,
            };
            check_nat_hom(c, d, &alpha).is_ok()
        })
        .count();
    Some(valid as u64)
}

pub const NAT_PAIRS: [(&str, &str); 3] = [("two", "three"), ("three", "three"), ("two", "square")];

/// Totals from comparing the two encodings of natural transformations.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NatComparison {
    pub functor_pairs: u64,
    pub nat_homs: u64,
    pub natural_families: u64,
    /// Functor pairs whose NatHoms were also counted over raw families.
    pub raw_checked: u64,
    pub witness: Option<String>,
}

fn compare_functor_pair(
    c: &RegularMagma,
    d: &RegularMagma,
    t: &Functor,
    s: &Functor,
    label: &str,
) -> Tally {
    let homs = all_nat_homs(c, d, t, s);
    let trans = all_nat_trans(c, d, t, s);
    let raw_trans = nat_families_raw(c, d, t, s);
    let raw_homs = nat_homs_raw(c, d, t, s);
    let mut witness = None;
    if homs.len() != trans.len() || raw_trans != trans.len() as u64 {
        witness = Some(format!(
            "{label}: {} homs, {} natural families, {raw_trans} by brute force",
            homs.len(),
            trans.len()
        ));
    }
    if let Some(raw) = raw_homs.filter(|&r| r != homs.len() as u64) {
        witness.get_or_insert(format!(
            "{label}: {} homs, {raw} by brute force",
            homs.len()
        ));
    }
    let converted: BTreeSet<Vec<usize>> = homs
        .iter()
        .filter_map(|alpha| nat_from_hom(c, d, alpha).ok())
        .map(|tau| tau.components)
        .collect();
    let expected: BTreeSet<Vec<usize>> = trans.iter().map(|tau| tau.components.clone()).collect();
    if converted != expected {
        witness.get_or_insert(format!("{label}: conversion is not a bijection"));
    }
    for alpha in &homs {
        let back = nat_from_hom(c, d, alpha).and_then(|tau| hom_from_nat(c, d, &tau));
        if back.as_ref() != Ok(alpha) {
            witness.get_or_insert(format!("{label}: hom round trip fails"));
        }
    }
    for tau in &trans {
        let back = hom_from_nat(c, d, tau).and_then(|a| nat_from_hom(c, d, &a));
        if back.as_ref() != Ok(tau) {
            witness.get_or_insert(format!("{label}: natural family round trip fails"));
        }
    }
    Tally::new(
        vec![
            1,
            homs.len() as u64,
            trans.len() as u64,
            u64::from(raw_homs.is_some()),
        ],
        witness,
    )
}

/// Compares NatHoms with natural families for every pair of functors
/// `c → d`: equal counts, agreement with raw enumeration, and converters
/// that are mutually inverse.
pub fn compare_nat_encodings(
    c: &RegularMagma,
    d: &RegularMagma,
    name: &str,
    parallel: bool,
) -> NatComparison {
    let functors = all_functors(c, d);
    let pairs: Vec<(usize, usize)> = (0..functors.len())
        .flat_map(|i| (0..functors.len()).map(move |j| (i, j)))
        .collect();
    let tallies = map_items(parallel, &pairs, |&(i, j)| {
        let label = format!("{name}, functors {i} ⇒ {j}");
        compare_functor_pair(c, d, &functors[i], &functors[j], &label)
    });
    let total = Tally::merge(tallies, 4);
    NatComparison {
        functor_pairs: total.counts[0],
        nat_homs: total.counts[1],
        natural_families: total.counts[2],
        raw_checked: total.counts[3],
        witness: total.witness,
    }
}

/// NatHoms and natural transformations between library categories.
pub fn natural_transformation_encodings(opts: &RunOptions) -> CheckResult {
    let mut total = NatComparison::default();
    for (cname, dname) in NAT_PAIRS {
        let c = library_entry(cname).expect("library entry").regular();
        let d = library_entry(dname).expect("library entry").regular();
        let part = compare_nat_encodings(&c, &d, &format!("{cname} → {dname}"), opts.parallel);
        total.functor_pairs += part.functor_pairs;
        total.nat_homs += part.nat_homs;
        total.natural_families += part.natural_families;
        total.raw_checked += part.raw_checked;
        if total.witness.is_none() {
            total.witness = part.witness;
        }
    }
    let outcome = total.witness.clone().map_or(Ok(()), Err);
    CheckResult::new("natural transformations are functor homomorphisms", outcome)
        .count("functor_pairs", total.functor_pairs)
        .count("nat_homs", total.nat_homs)
        .count("natural_families", total.natural_families)
        .count("pairs_checked_raw", total.raw_checked)
}

/// Probe-natural candidates correspond to ultrafilter kernels.
pub fn yoneda_correspondence(opts: &RunOptions) -> CheckResult {
    let cases: Vec<(usize, usize)> = (1..=3).flat_map(|z| (1..=2).map(move |x| (z, x))).collect();
    let tallies = map_items(opts.parallel, &cases, |&(z, x)| {
        let probes = ProbeFamily::up_to(z, 3).expect("sizes include 1 and z");
        match yoneda_roundtrip(z, x, &probes) {
            Ok(r) if r.passed() && r.natural_candidates == z.pow(x as u32) => {
                Tally::new(vec![r.natural_candidates as u64], None)
            }
            Ok(r) => Tally::new(
                vec![r.natural_candidates as u64],
                Some(format!("|Z| = {z}, |X| = {x}: {r:?}")),
            ),
            Err(e) => Tally::new(vec![0], Some(format!("|Z| = {z}, |X| = {x}: {e}"))),
        }
    });
    let total = Tally::merge(tallies, 1);
    CheckResult::new(
        "natural candidates are ultrafilter kernels",
        total.outcome(),
    )
    .count("cases", cases.len() as u64)
    .count("natural_candidates", total.counts[0])
}

pub type Sweep = fn(&RunOptions) -> CheckResult;

/// The sweeps of the full suite, in report order.
pub const SWEEPS: [Sweep; 9] = [
    lifting_enumeration,
    lifting_kernels_differentiate,
    differentiation_gives_liftings,
    filter_principality,
    interchange_law,
    single_unit_totality_sweep,
    category_round_trips,
    natural_transformation_encodings,
    yoneda_correspondence,
];

pub fn run_suite(opts: &RunOptions) -> Report {
    let mut report = Report::new("report", opts.seed);
    for sweep in SWEEPS {
        report.push(sweep(opts));
    }
    report.fact("random_functions_per_lifting", RANDOM_FUNCTIONS as u64);
    report.fact("spaces", small_spaces().len() as u64);
    report
}
