use anyhow::{bail, Result};
use liftlab::category_kernel::{
    functor_category, hom_set, is_isomorphism, library_entry, twin_category, twin_hom_cases,
};
use liftlab::lebesgue_diff::{
    kernel_from_lifting, random_function, recovery_failure, verify_equivalence, IntegrableFunction,
};
use liftlab::measure_algebra::{
    check_property, enumerate_liftings, enumerate_retractions, implication_suite, is_lifting,
    is_lower_density, quotient_classes, retraction_of, Implication, SetTransform,
    TransformProperty,
};
use liftlab::partial_magma::{
    classify, interchange_check, single_unit_totality, PMClassification, PartialMagma, RegularMagma,
};
use liftlab::yoneda_finite::{yoneda_roundtrip, ProbeFamily};
use liftlab::MeasureSpace;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::input::{self, InputDocument, Scenario};
use crate::report::{CheckResult, Report};
use crate::suite::{self, compare_nat_encodings, interchange_tally, RANDOM_FUNCTIONS};
use crate::RunOptions;

/// Enumeration sweeps refuse spaces with more liftings than this.
pub const MAX_LIFTINGS: usize = 1024;

/// `cat twin` refuses categories whose twin category is larger than this.
pub const MAX_TWIN_ARROWS: usize = 512;

/// Largest `|Z|`, `|X|` and probe size accepted by `yoneda roundtrip`.
pub const MAX_YONEDA_SIZE: usize = 4;

fn space_of(doc: &InputDocument, opts: &RunOptions) -> Result<(MeasureSpace, Option<Vec<u64>>)> {
    match doc {
        InputDocument::MeasureSpace { weights, transform } => Ok((
            input::measure_space(weights, opts.max_atoms)?,
            transform.clone(),
        )),
        _ => bail!("expected a measure_space document"),
    }
}

/// The magma of a `partial_magma` or `category` document, and whether
/// regularity was requested.
fn magma_of(doc: &InputDocument, opts: &RunOptions) -> Result<(PartialMagma, bool)> {
    match doc {
        InputDocument::PartialMagma { n, table } => {
            Ok((input::magma(*n, table, opts.max_elems)?, false))
        }
        InputDocument::Category {
            n,
            table,
            check_regular,
        } => Ok((input::magma(*n, table, opts.max_elems)?, *check_regular)),
        _ => bail!("expected a partial_magma or category document"),
    }
}

fn describe(p: TransformProperty) -> &'static str {
    use TransformProperty::*;
    match p {
        PreservesMeasurableSets => "measurable sets go to measurable sets",
        PreservesAmbientSpace => "whole space is fixed",
        PreservesFiniteIntersections => "intersections are preserved",
        AlmostEverywhereIdentity => "every image is a.e. equal to its set",
        PreservesEmptySet => "empty set is fixed",
        StronglyPreservesMeasureClass => "a.e. equal sets have equal images",
        CommutesWithComplement => "complements are preserved",
        PreservesFiniteUnions => "unions are preserved",
        StronglyPreservesNullClass => "null sets share the image of the empty set",
    }
}

fn implication_name(i: Implication) -> &'static str {
    match i {
        Implication::Vacuous => "vacuous",
        Implication::Satisfied => "satisfied",
        Implication::Violated => "violated",
    }
}

fn space_facts(report: &mut Report, space: &MeasureSpace) {
    let weights: Vec<String> = space.weights().iter().map(|w| w.to_string()).collect();
    report.fact("weights", weights);
    report.fact(
        "positive_atoms",
        space.positive_atoms().atoms().collect::<Vec<_>>(),
    );
    report.fact("null_atoms", space.null_atoms().atoms().collect::<Vec<_>>());
    report.fact("averageable_sets", space.averageable_sets().len());
    report.fact("classes", quotient_classes(space).len());
}

/// Every property, idempotence and the two implications for a given
/// transform.
pub fn space_check(doc: &InputDocument, opts: &RunOptions) -> Result<Report> {
    let (space, table) = space_of(doc, opts)?;
    let Some(table) = table else {
        bail!("space check needs a transform");
    };
    let t = input::transform(&space, &table)?;
    let mut report = Report::new("space check", opts.seed);
    space_facts(&mut report, &space);
    for p in TransformProperty::ALL {
        let name = format!("{} {}", p.code(), describe(p));
        report.check(
            name,
            check_property(&space, &t, p).map_err(|v| v.witness.to_string()),
        );
    }
    let idempotent = match space.sets().find(|&q| t.apply(t.apply(q)) != t.apply(q)) {
        Some(q) => Err(format!("{q:?}")),
        None => Ok(()),
    };
    report.check("idempotence", idempotent);
    let implications = implication_suite(&space, &t);
    for (name, i) in [
        (
            "null-class rule with the Boolean laws gives the measure-class rule",
            implications.null_class_to_measure_class,
        ),
        (
            "complements with intersections give unions",
            implications.complement_to_unions,
        ),
    ] {
        let outcome = if i == Implication::Violated {
            Err("premises hold, conclusion fails".to_string())
        } else {
            Ok(())
        };
        report.push(CheckResult::new(name, outcome));
        report.fact(&format!("implication: {name}"), implication_name(i));
    }
    report.fact("lower_density", is_lower_density(&space, &t).is_ok());
    report.fact("lifting", is_lifting(&space, &t).is_ok());
    Ok(report)
}

fn lifting_count(space: &MeasureSpace) -> Result<usize> {
    let count = space
        .positive_atoms()
        .len()
        .checked_pow(space.null_atoms().len() as u32)
        .filter(|&c| c <= MAX_LIFTINGS);
    match count {
        Some(c) => Ok(c),
        None => bail!("the space has more than {MAX_LIFTINGS} liftings"),
    }
}

/// Enumerates liftings through retractions and verifies each.
pub fn space_liftings(doc: &InputDocument, opts: &RunOptions) -> Result<Report> {
    let (space, _) = space_of(doc, opts)?;
    let expected = lifting_count(&space)?;
    let mut report = Report::new("space liftings", opts.seed);
    space_facts(&mut report, &space);
    let retractions = enumerate_retractions(&space);
    let liftings = enumerate_liftings(&space);
    report.push(
        CheckResult::new(
            "one lifting per retraction",
            if liftings.len() == expected {
                Ok(())
            } else {
                Err(format!("{} liftings, expected {expected}", liftings.len()))
            },
        )
        .count("liftings", liftings.len() as u64),
    );
    let mut verified = Ok(());
    let mut recovered = Ok(());
    for (g, t) in retractions.iter().zip(&liftings) {
        if let Err(v) = is_lifting(&space, t) {
            verified = Err(format!("retraction {g:?}: {v}"));
            break;
        }
        if retraction_of(&space, t).ok().as_ref() != Some(g) {
            recovered = Err(format!("retraction {g:?} is not recovered"));
            break;
        }
    }
    report.check("every enumerated transform is a lifting", verified);
    report.check("liftings determine their retractions", recovered);
    report.fact("retractions", retractions);
    Ok(report)
}

fn lifting_label(space: &MeasureSpace, t: &SetTransform) -> String {
    match retraction_of(space, t) {
        Ok(g) => format!("{g:?}"),
        Err(_) => "?".into(),
    }
}

/// Lifting to kernel to lower density to lifting, for every lifting, plus
/// seeded random recovery.
pub fn space_equivalence(doc: &InputDocument, opts: &RunOptions) -> Result<Report> {
    let (space, _) = space_of(doc, opts)?;
    lifting_count(&space)?;
    let mut report = Report::new("space theorem1", opts.seed);
    space_facts(&mut report, &space);
    let equivalence = verify_equivalence(&space)?;
    let liftings = enumerate_liftings(&space);
    for (i, (run, t)) in equivalence.runs.iter().zip(&liftings).enumerate() {
        let label = format!("lifting {}", lifting_label(&space, t));
        let stages = [
            ("kernel differentiates", &run.differentiates),
            ("kernel gives a lower density", &run.lower_density),
            ("lower density gives a lifting", &run.lifting),
            ("lifting is subordinate", &run.subordinate),
            ("right inverse is a Boolean homomorphism", &run.boolean_hom),
            ("right inverse is a section", &run.right_inverse),
        ];
        for (stage, outcome) in stages {
            report.check(format!("{label}: {stage}"), outcome.clone());
        }
        let round_trip = if run.round_trip && run.density_round_trip {
            Ok(())
        } else {
            Err("the pipeline returns a different lifting".into())
        };
        report.check(format!("{label}: round trip"), round_trip);

        let kernel = kernel_from_lifting(&space, t)?;
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        rng.set_stream(i as u64);
        let mut random = Ok(());
        for k in 0..RANDOM_FUNCTIONS {
            let f = IntegrableFunction::new(&space, random_function(&space, &mut rng))?;
            if let Some(atom) = recovery_failure(&space, &kernel, &f) {
                random = Err(format!("function {k} not recovered at atom {atom}"));
                break;
            }
        }
        report.push(
            CheckResult::new(format!("{label}: random functions recovered"), random)
                .count("functions", RANDOM_FUNCTIONS as u64),
        );
    }
    report.fact("liftings", equivalence.runs.len());
    report.fact(
        "round_trip",
        if equivalence.round_trips() {
            "OK"
        } else {
            "FAILED"
        },
    );
    Ok(report)
}

fn classification_verdict(c: &PMClassification) -> String {
    if c.regular {
        return if c.monoid { "monoid" } else { "regular" }.to_string();
    }
    let mut reasons = Vec::new();
    if !c.unital {
        reasons.push("non-unital");
    }
    if c.associative.is_err() {
        reasons.push("non-associative");
    }
    if c.unital && !c.fastened {
        reasons.push("non-fastened");
    }
    reasons.join(", ")
}

fn classification_facts(report: &mut Report, pm: &PartialMagma, c: &PMClassification) {
    report.fact("size", pm.size());
    report.fact("units", c.units.clone());
    report.fact("unital", c.unital);
    report.fact("associative", c.associative.is_ok());
    if let Err(f) = &c.associative {
        report.fact("associativity_witness", f.to_string());
    }
    report.fact("left_fastened", c.left_fastened.is_ok());
    report.fact("right_fastened", c.right_fastened.is_ok());
    report.fact("fastened", c.fastened);
    report.fact("regular", c.regular);
    report.fact("monoid", c.monoid);
    report.fact("total", c.total);
    report.fact("classification", classification_verdict(c));
}

fn regularity(c: &PMClassification) -> Result<(), String> {
    if c.regular {
        return Ok(());
    }
    if !c.unital {
        return Err("no units".into());
    }
    if let Err(f) = &c.associative {
        return Err(f.to_string());
    }
    if let Err(x) = c.left_fastened {
        return Err(format!("element {x} has no left pin"));
    }
    if let Err(x) = c.right_fastened {
        return Err(format!("element {x} has no right pin"));
    }
    Err("not regular".into())
}

/// Classification of a partial magma; a category document also checks
/// regularity when asked.
pub fn pm_classify(doc: &InputDocument, opts: &RunOptions) -> Result<Report> {
    let (pm, check_regular) = magma_of(doc, opts)?;
    let mut report = Report::new("pm classify", opts.seed);
    let c = classify(&pm);
    classification_facts(&mut report, &pm, &c);
    if check_regular {
        report.check("regular", regularity(&c));
    }
    if c.regular {
        let r = RegularMagma::new(pm.clone())?;
        report.fact("dom", (0..r.size()).map(|x| r.dom(x)).collect::<Vec<_>>());
        report.fact("cod", (0..r.size()).map(|x| r.cod(x)).collect::<Vec<_>>());
        report.check(
            "dom and cod laws",
            r.verify_dom_cod_laws()
                .map_err(|(x, y)| format!("pair ({x}, {y})")),
        );
        let s = single_unit_totality(&pm)?;
        report.check(
            "single unit exactly when total",
            if s.holds() {
                Ok(())
            } else {
                Err(format!("single unit {}, total {}", s.single_unit, s.total))
            },
        );
    }
    Ok(report)
}

/// Both sides of the interchange law on every quadruple of pairs.
pub fn pm_interchange(doc: &InputDocument, opts: &RunOptions) -> Result<Report> {
    let (pm, _) = magma_of(doc, opts)?;
    let mut report = Report::new("pm interchange", opts.seed);
    report.fact("size", pm.size());
    let (defined, differ) = interchange_tally(&pm);
    let n = pm.size() as u64;
    report.push(
        CheckResult::new(
            "interchange law",
            interchange_check(&pm).map_err(|v| {
                format!(
                    "x' = {:?}, x = {:?}, z' = {:?}, z = {:?}",
                    v.x_prime, v.x, v.z_prime, v.z
                )
            }),
        )
        .count("quadruples", n.pow(8))
        .count("both_sides_defined", defined)
        .count("violations", differ),
    );
    Ok(report)
}

fn regular_or_report(pm: PartialMagma, report: &mut Report, role: &str) -> Option<RegularMagma> {
    let c = classify(&pm);
    let outcome = regularity(&c);
    report.check(format!("{role} is regular"), outcome);
    RegularMagma::new(pm).ok()
}

/// The twin category and its description as functors out of `two`.
pub fn cat_twin(doc: &InputDocument, opts: &RunOptions) -> Result<Report> {
    let (pm, _) = magma_of(doc, opts)?;
    let mut report = Report::new("cat twin", opts.seed);
    report.fact("size", pm.size());
    let Some(c) = regular_or_report(pm, &mut report, "category") else {
        return Ok(report);
    };
    let n = c.size();
    let count: usize = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .map(|(x, y)| twin_hom_cases(&c, x, y).len())
        .sum();
    if count > MAX_TWIN_ARROWS {
        bail!("the twin category has {count} arrows, above the cap of {MAX_TWIN_ARROWS}");
    }
    report.fact("objects", c.units().len());
    let twin = match twin_category(&c) {
        Ok(t) => t,
        Err(e) => {
            report.check("twin category is regular", Err(e.to_string()));
            return Ok(report);
        }
    };
    report.check("twin category is regular", Ok(()));
    report.fact("twin_arrows", twin.arrows.len());
    let listed: Vec<Value> = twin
        .arrows
        .iter()
        .map(|&(x, y, (z0, z1))| json!([x, y, z0, z1]))
        .collect();
    report.fact("twin_arrow_list", listed);

    let mut recaptured = Ok(());
    'units: for &u in c.units() {
        for &v in c.units() {
            let diagonal: Vec<(usize, usize)> =
                hom_set(&c, u, v)?.into_iter().map(|x| (x, x)).collect();
            if twin_hom_cases(&c, u, v) != diagonal {
                recaptured = Err(format!("units {u} and {v}"));
                break 'units;
            }
        }
    }
    report.check("twin arrows between units are arrows", recaptured);

    let two_entry = library_entry("two").expect("library entry");
    let two = two_entry.regular();
    let arrow = two_entry.element("A21");
    let fun = functor_category(&two, &c)?;
    let map: Option<Vec<usize>> = fun
        .arrows
        .iter()
        .map(|alpha| {
            let key = (
                alpha.from.apply(arrow),
                alpha.to.apply(arrow),
                alpha.components[arrow],
            );
            twin.arrows.iter().position(|&t| t == key)
        })
        .collect();
    let iso = match map {
        Some(m) if is_isomorphism(&m, fun.magma.magma(), twin.magma.magma()) => Ok(()),
        Some(_) => Err("the induced map is not an isomorphism".into()),
        None => Err("a functor homomorphism has no twin arrow".into()),
    };
    report.check("functors out of two form the twin category", iso);
    Ok(report)
}

/// NatHoms against natural transformations between two categories.
pub fn cat_natequiv(doc: &InputDocument, opts: &RunOptions) -> Result<Report> {
    let InputDocument::Scenario(Scenario::Natequiv { source, target }) = doc else {
        bail!("expected a natequiv scenario");
    };
    let mut report = Report::new("cat natequiv", opts.seed);
    let c = regular_or_report(source.resolve(opts.max_elems)?, &mut report, "source");
    let d = regular_or_report(target.resolve(opts.max_elems)?, &mut report, "target");
    let (Some(c), Some(d)) = (c, d) else {
        return Ok(report);
    };
    let cmp = compare_nat_encodings(&c, &d, "source → target", opts.parallel);
    report.push(
        CheckResult::new(
            "natural transformations are functor homomorphisms",
            cmp.witness.map_or(Ok(()), Err),
        )
        .count("functor_pairs", cmp.functor_pairs)
        .count("nat_homs", cmp.nat_homs)
        .count("natural_families", cmp.natural_families)
        .count("pairs_checked_raw", cmp.raw_checked),
    );
    Ok(report)
}

/// Probe-natural candidates against ultrafilter kernels for each size pair.
pub fn yoneda(doc: &InputDocument, opts: &RunOptions) -> Result<Report> {
    let InputDocument::Scenario(Scenario::YonedaRoundtrip { z, x, probe_max }) = doc else {
        bail!("expected a yoneda_roundtrip scenario");
    };
    for &s in z.iter().chain(x).chain([probe_max]) {
        if s == 0 || s > MAX_YONEDA_SIZE {
            bail!("sizes must lie in 1..={MAX_YONEDA_SIZE}, got {s}");
        }
    }
    let mut report = Report::new("yoneda roundtrip", opts.seed);
    for &zs in z {
        for &xs in x {
            let probes = ProbeFamily::up_to(zs, *probe_max)?;
            let r = yoneda_roundtrip(zs, xs, &probes)?;
            let expected = zs.pow(xs as u32);
            let outcome = if !r.passed() {
                Err(format!("{r:?}"))
            } else if r.natural_candidates != expected {
                Err(format!(
                    "{} natural candidates, expected {expected}",
                    r.natural_candidates
                ))
            } else {
                Ok(())
            };
            report.push(
                CheckResult::new(format!("|Z| = {zs}, |X| = {xs}"), outcome)
                    .count("natural_candidates", r.natural_candidates as u64)
                    .count("kernels", r.kernels as u64)
                    .count("probe_spaces", r.probe_sizes.len() as u64),
            );
        }
    }
    Ok(report)
}

/// The full suite.
pub fn full_report(opts: &RunOptions) -> Report {
    suite::run_suite(opts)
}
