//! Finite categories, both as explicit object/arrow data and as regular
//! partial magmas, together with functors, twin categories and the two
//! encodings of natural transformations.
//!
//! Arrow composition is written as a product: `g · f` is "`g` after `f`".
//! In a regular magma `dom(x)` is the right pin of `x` and `cod(x)` its left
//! pin, both units.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::partial_magma::{is_pm_hom, matrix_magma, Matrix, PartialMagma, RegularMagma};

/// A finite category with explicit objects, identities and composition.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteCategory {
    objects: usize,
    identities: Vec<usize>,
    dom: Vec<usize>,
    cod: Vec<usize>,
    compose: Vec<Option<u32>>,
}

impl FiniteCategory {
    /// Validates the category axioms. `compose(g, f)` is `g ∘ f`.
    pub fn new(
        objects: usize,
        identities: Vec<usize>,
        dom: Vec<usize>,
        cod: Vec<usize>,
        compose: impl Fn(usize, usize) -> Option<usize>,
    ) -> Result<Self> {
        let arrows = dom.len();
        let bad = |msg: String| Err(Error::InvalidCategory(msg));
        if cod.len() != arrows || identities.len() != objects {
            return bad("dom, cod and identities have inconsistent lengths".into());
        }
        if dom.iter().chain(&cod).any(|&o| o >= objects) {
            return bad("an arrow has an endpoint outside the objects".into());
        }
        for (o, &id) in identities.iter().enumerate() {
            if id >= arrows || dom[id] != o || cod[id] != o {
                return bad(format!("identity of object {o} is not a loop at it"));
            }
        }
        let mut table = Vec::with_capacity(arrows * arrows);
        for g in 0..arrows {
            for f in 0..arrows {
                let c = compose(g, f);
                match c {
                    Some(h) if dom[g] != cod[f] => {
                        return bad(format!("{g} ∘ {f} = {h} although the arrows do not meet"));
                    }
                    None if dom[g] == cod[f] => {
                        return bad(format!("{g} ∘ {f} is missing"));
                    }
                    Some(h) if h >= arrows || dom[h] != dom[f] || cod[h] != cod[g] => {
                        return bad(format!("{g} ∘ {f} = {h} has the wrong endpoints"));
                    }
                    _ => {}
                }
                table.push(c.map(|h| h as u32));
            }
        }
        let cat = FiniteCategory {
            objects,
            identities,
            dom,
            cod,
            compose: table,
        };
        for f in 0..arrows {
            if cat.compose(cat.identities[cat.cod[f]], f) != Some(f)
                || cat.compose(f, cat.identities[cat.dom[f]]) != Some(f)
            {
                return bad(format!("identities do not act trivially on {f}"));
            }
        }
        for h in 0..arrows {
            for g in 0..arrows {
                let Some(hg) = cat.compose(h, g) else {
                    continue;
                };
                for f in 0..arrows {
                    let Some(gf) = cat.compose(g, f) else {
                        continue;
                    };
                    if cat.compose(hg, f) != cat.compose(h, gf) {
                        return bad(format!("composition of {h}, {g}, {f} is not associative"));
                    }
                }
            }
        }
        Ok(cat)
    }

    pub fn object_count(&self) -> usize {
        self.objects
    }

    pub fn arrow_count(&self) -> usize {
        self.dom.len()
    }

    pub fn identity(&self, object: usize) -> usize {
        self.identities[object]
    }

    pub fn dom(&self, arrow: usize) -> usize {
        self.dom[arrow]
    }

    pub fn cod(&self, arrow: usize) -> usize {
        self.cod[arrow]
    }

    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.compose[g * self.arrow_count() + f].map(|h| h as usize)
    }

    /// Arrows from `u` to `v`.
    pub fn hom(&self, u: usize, v: usize) -> Vec<usize> {
        (0..self.arrow_count())
            .filter(|&x| self.dom[x] == u && self.cod[x] == v)
            .collect()
    }
}

/// Reads a regular magma as a category: objects are the units in ascending
/// order, `dom` and `cod` the right and left pins.
pub fn cat_from_rpm(pm: &PartialMagma) -> Result<FiniteCategory> {
    let regular = RegularMagma::new(pm.clone())?;
    let units = regular.units().to_vec();
    let object_of = |u: usize| units.binary_search(&u).expect("pins are units");
    let n = pm.size();
    FiniteCategory::new(
        units.len(),
        units.clone(),
        (0..n).map(|x| object_of(regular.dom(x))).collect(),
        (0..n).map(|x| object_of(regular.cod(x))).collect(),
        |g, f| pm.mul(g, f),
    )
    .map_err(|e| Error::NotRegular(format!("pins do not form a category: {e}")))
}

/// The arrows of a category under composition.
pub fn rpm_from_cat(cat: &FiniteCategory) -> PartialMagma {
    PartialMagma::from_fn(cat.arrow_count(), |g, f| cat.compose(g, f))
}

/// Arrows `x` with `dom(x) = u` and `cod(x) = v`, for units `u`, `v`.
pub fn hom_set(cat: &RegularMagma, u: usize, v: usize) -> Result<Vec<usize>> {
    for w in [u, v] {
        if w >= cat.size() || !cat.is_unit(w) {
            return Err(Error::NotAUnit(w));
        }
    }
    Ok((0..cat.size())
        .filter(|&x| cat.dom(x) == u && cat.cod(x) == v)
        .collect())
}

/// Is `z = (z.0, z.1)` a twin arrow from `x` to `y`: are `z.1 · x` and
/// `y · z.0` both defined and equal?
pub fn is_twin_arrow(cat: &RegularMagma, x: usize, y: usize, z: (usize, usize)) -> bool {
    match (cat.mul(z.1, x), cat.mul(y, z.0)) {
        (Some(a), Some(b)) => a == b,
        _ => false,
    }
}

/// All twin arrows from `x` to `y`, ascending.
pub fn twin_hom_cases(cat: &RegularMagma, x: usize, y: usize) -> Vec<(usize, usize)> {
    let n = cat.size();
    let mut out = Vec::new();
    for z0 in 0..n {
        for z1 in 0..n {
            if is_twin_arrow(cat, x, y, (z0, z1)) {
                out.push((z0, z1));
            }
        }
    }
    out
}

/// The category whose objects are the arrows of `cat` and whose arrows are
/// twin arrows, composed componentwise.
#[derive(Clone, Debug)]
pub struct TwinCategory {
    /// Element `i` of the magma is the twin arrow `arrows[i].2` from
    /// `arrows[i].0` to `arrows[i].1`.
    pub arrows: Vec<(usize, usize, (usize, usize))>,
    pub magma: RegularMagma,
}

impl TwinCategory {
    /// The element representing the identity at an arrow `x`.
    pub fn identity_at(&self, cat: &RegularMagma, x: usize) -> usize {
        let key = (x, x, (cat.dom(x), cat.cod(x)));
        self.arrows
            .iter()
            .position(|&a| a == key)
            .expect("identity twin arrow")
    }
}

pub fn twin_category(cat: &RegularMagma) -> Result<TwinCategory> {
    let n = cat.size();
    let mut arrows = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in twin_hom_cases(cat, x, y) {
                arrows.push((x, y, z));
            }
        }
    }
    let index: HashMap<_, _> = arrows.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let pm = PartialMagma::from_fn(arrows.len(), |g, f| {
        let (y, w, zp) = arrows[g];
        let (x, y2, z) = arrows[f];
        if y != y2 {
            return None;
        }
        let composite = (cat.mul(zp.0, z.0)?, cat.mul(zp.1, z.1)?);
        index.get(&(x, w, composite)).copied()
    });
    let magma = RegularMagma::new(pm)?;
    Ok(TwinCategory { arrows, magma })
}

/// A unital homomorphism between regular magmas, arrows only.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Functor {
    map: Vec<usize>,
}

impl Functor {
    pub fn new(source: &RegularMagma, target: &RegularMagma, map: Vec<usize>) -> Result<Self> {
        is_pm_hom(&map, source.magma(), target.magma(), true)
            .map_err(|e| Error::InvalidFunctor(e.to_string()))?;
        Ok(Functor { map })
    }

    pub fn identity(cat: &RegularMagma) -> Self {
        Functor {
            map: (0..cat.size()).collect(),
        }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn then(&self, next: &Functor) -> Functor {
        Functor {
            map: self.map.iter().map(|&x| next.map[x]).collect(),
        }
    }
}

/// Every functor from `source` to `target`, in lexicographic order of
/// arrow images.
pub fn all_functors(source: &RegularMagma, target: &RegularMagma) -> Vec<Functor> {
    let n = source.size();
    let mut out = Vec::new();
    let mut map = vec![usize::MAX; n];
    extend_functor(source, target, &mut map, 0, &mut out);
    out
}

fn extend_functor(
    source: &RegularMagma,
    target: &RegularMagma,
    map: &mut Vec<usize>,
    next: usize,
    out: &mut Vec<Functor>,
) {
    if next == map.len() {
        out.push(Functor { map: map.clone() });
        return;
    }
    for image in 0..target.size() {
        if source.is_unit(next) && !target.is_unit(image) {
            continue;
        }
        map[next] = image;
        if products_consistent(source, target, map, next) {
            extend_functor(source, target, map, next + 1, out);
        }
    }
    map[next] = usize::MAX;
}

/// Checks every product whose factors and result are assigned, and
/// which involves the newly assigned arrow.
fn products_consistent(
    source: &RegularMagma,
    target: &RegularMagma,
    map: &[usize],
    last: usize,
) -> bool {
    let assigned = |x: usize| x <= last;
    for x in 0..=last {
        for (a, b) in [(x, last), (last, x)] {
            if let Some(p) = source.mul(a, b) {
                if assigned(p) && target.mul(map[a], map[b]) != Some(map[p]) {
                    return false;
                }
            }
        }
        // `last` may be the product of two earlier arrows.
        for y in 0..=last {
            if source.mul(x, y) == Some(last) && target.mul(map[x], map[y]) != Some(map[last]) {
                return false;
            }
        }
    }
    true
}

/// A homomorphism of functors `T ⇒ S`: for every arrow `x` of the source a
/// twin arrow from `T(x)` to `S(x)`, multiplicative for `⊖`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NatHom {
    pub from: Functor,
    pub to: Functor,
    pub components: Vec<(usize, usize)>,
}

/// An object-indexed natural transformation `T ⇒ S`; `components[i]` is the
/// arrow at the `i`-th unit of the source.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NatTrans {
    pub from: Functor,
    pub to: Functor,
    pub components: Vec<usize>,
}

fn twin_hmul(x: (usize, usize), y: (usize, usize)) -> Option<(usize, usize)> {
    crate::partial_magma::hmul(x, y)
}

/// Validates a homomorphism of functors, reporting the first problem.
pub fn check_nat_hom(c: &RegularMagma, d: &RegularMagma, alpha: &NatHom) -> Result<()> {
    let bad = |msg: String| Err(Error::InvalidNatHom(msg));
    if alpha.components.len() != c.size() {
        return bad(format!(
            "{} components for {} arrows",
            alpha.components.len(),
            c.size()
        ));
    }
    for (x, &z) in alpha.components.iter().enumerate() {
        if z.0 >= d.size() || z.1 >= d.size() {
            return bad(format!("component at {x} leaves the target"));
        }
        if !is_twin_arrow(d, alpha.from.apply(x), alpha.to.apply(x), z) {
            return bad(format!(
                "component at {x} is not a twin arrow from T({x}) to S({x})"
            ));
        }
    }
    for x in 0..c.size() {
        for y in 0..c.size() {
            if let Some(p) = c.mul(x, y) {
                if twin_hmul(alpha.components[x], alpha.components[y]) != Some(alpha.components[p])
                {
                    return bad(format!(
                        "component at {x}·{y} is not the product of the components"
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Validates an object-indexed transformation, reporting the first
/// failing component or naturality square.
pub fn check_nat_trans(c: &RegularMagma, d: &RegularMagma, tau: &NatTrans) -> Result<()> {
    let units = c.units();
    if tau.components.len() != units.len() {
        return Err(Error::NotNatural(format!(
            "{} components for {} objects",
            tau.components.len(),
            units.len()
        )));
    }
    for (i, &u) in units.iter().enumerate() {
        let t = tau.components[i];
        if t >= d.size() || d.dom(t) != tau.from.apply(u) || d.cod(t) != tau.to.apply(u) {
            return Err(Error::NotNatural(format!(
                "component at object {u} has the wrong endpoints"
            )));
        }
    }
    for x in 0..c.size() {
        let (s, t) = component_pair(c, tau, x);
        if d.mul(tau.to.apply(x), s) != d.mul(t, tau.from.apply(x)) {
            return Err(Error::NotNatural(format!(
                "square at arrow {x} does not commute"
            )));
        }
    }
    Ok(())
}

fn object_index(c: &RegularMagma, u: usize) -> usize {
    c.units().binary_search(&u).expect("unit")
}

/// `(τ(dom x), τ(cod x))`.
fn component_pair(c: &RegularMagma, tau: &NatTrans, x: usize) -> (usize, usize) {
    (
        tau.components[object_index(c, c.dom(x))],
        tau.components[object_index(c, c.cod(x))],
    )
}

/// `τ(u)` is the arrow with `α(1_u) = (τ(u), τ(u))`.
pub fn nat_from_hom(c: &RegularMagma, d: &RegularMagma, alpha: &NatHom) -> Result<NatTrans> {
    check_nat_hom(c, d, alpha)?;
    let components = c
        .units()
        .iter()
        .map(|&u| {
            let (a, b) = alpha.components[u];
            if a == b {
                Ok(a)
            } else {
                Err(Error::InvalidNatHom(format!(
                    "component at unit {u} is not diagonal"
                )))
            }
        })
        .collect::<Result<_>>()?;
    let tau = NatTrans {
        from: alpha.from.clone(),
        to: alpha.to.clone(),
        components,
    };
    check_nat_trans(c, d, &tau)?;
    Ok(tau)
}

/// `α(x) = (τ(dom x), τ(cod x))`.
pub fn hom_from_nat(c: &RegularMagma, d: &RegularMagma, tau: &NatTrans) -> Result<NatHom> {
    check_nat_trans(c, d, tau)?;
    let alpha = NatHom {
        from: tau.from.clone(),
        to: tau.to.clone(),
        components: (0..c.size()).map(|x| component_pair(c, tau, x)).collect(),
    };
    check_nat_hom(c, d, &alpha)?;
    Ok(alpha)
}

/// `x ↦ (T(dom x), T(cod x))`.
pub fn identity_nat(c: &RegularMagma, functor: &Functor) -> NatHom {
    NatHom {
        from: functor.clone(),
        to: functor.clone(),
        components: (0..c.size())
            .map(|x| (functor.apply(c.dom(x)), functor.apply(c.cod(x))))
            .collect(),
    }
}

/// Vertical composite `(β ∘ α)(x) = β(x) ⊗ α(x)`.
pub fn compose_nat(d: &RegularMagma, beta: &NatHom, alpha: &NatHom) -> Result<NatHom> {
    if alpha.to != beta.from {
        return Err(Error::FunctorMismatch(
            "target functor of the first factor differs from the source of the second".into(),
        ));
    }
    let components = beta
        .components
        .iter()
        .zip(&alpha.components)
        .map(|(&b, &a)| Some((d.mul(b.0, a.0)?, d.mul(b.1, a.1)?)))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::InvalidNatHom("components do not compose".into()))?;
    Ok(NatHom {
        from: alpha.from.clone(),
        to: beta.to.clone(),
        components,
    })
}

/// Every homomorphism of functors `T ⇒ S`, found by choosing a twin arrow
/// for each arrow and keeping the multiplicative choices.
pub fn all_nat_homs(
    c: &RegularMagma,
    d: &RegularMagma,
    from: &Functor,
    to: &Functor,
) -> Vec<NatHom> {
    let candidates: Vec<Vec<(usize, usize)>> = (0..c.size())
        .map(|x| twin_hom_cases(d, from.apply(x), to.apply(x)))
        .collect();
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(c.size());
    choose_components(&candidates, &mut chosen, &mut |components| {
        let alpha = NatHom {
            from: from.clone(),
            to: to.clone(),
            components: components.to_vec(),
        };
        if check_nat_hom(c, d, &alpha).is_ok() {
            out.push(alpha);
        }
    });
    out
}

fn choose_components<T: Copy>(
    candidates: &[Vec<T>],
    chosen: &mut Vec<T>,
    emit: &mut impl FnMut(&[T]),
) {
    if chosen.len() == candidates.len() {
        emit(chosen);
        return;
    }
    for &z in &candidates[chosen.len()] {
        chosen.push(z);
        choose_components(candidates, chosen, emit);
        chosen.pop();
    }
}

/// Every natural transformation `T ⇒ S`, found by choosing an arrow
/// `T(u) → S(u)` for each object and keeping the natural choices.
pub fn all_nat_trans(
    c: &RegularMagma,
    d: &RegularMagma,
    from: &Functor,
    to: &Functor,
) -> Vec<NatTrans> {
    let candidates: Vec<Vec<usize>> = c
        .units()
        .iter()
        .map(|&u| hom_set(d, from.apply(u), to.apply(u)).expect("functors send units to units"))
        .collect();
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(candidates.len());
    choose_components(&candidates, &mut chosen, &mut |components| {
        let tau = NatTrans {
            from: from.clone(),
            to: to.clone(),
            components: components.to_vec(),
        };
        if check_nat_trans(c, d, &tau).is_ok() {
            out.push(tau);
        }
    });
    out
}

/// The functor category: all homomorphisms of functors between all pairs
/// of functors, multiplied by vertical composition.
#[derive(Clone, Debug)]
pub struct FunctorCategory {
    pub functors: Vec<Functor>,
    pub arrows: Vec<NatHom>,
    pub magma: RegularMagma,
}

pub fn functor_category(c: &RegularMagma, d: &RegularMagma) -> Result<FunctorCategory> {
    let functors = all_functors(c, d);
    let mut arrows = Vec::new();
    for t in &functors {
        for s in &functors {
            arrows.extend(all_nat_homs(c, d, t, s));
        }
    }
    let index: HashMap<&NatHom, usize> = arrows.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let pm = PartialMagma::from_fn(arrows.len(), |b, a| {
        let composite = compose_nat(d, &arrows[b], &arrows[a]).ok()?;
        Some(
            *index
                .get(&composite)
                .expect("composites of homomorphisms are homomorphisms"),
        )
    });
    let magma = RegularMagma::new(pm)?;
    Ok(FunctorCategory {
        functors,
        arrows,
        magma,
    })
}

/// Is `f` a bijection whose inverse is also a unital homomorphism?
pub fn is_isomorphism(f: &[usize], source: &PartialMagma, target: &PartialMagma) -> bool {
    if f.len() != source.size() || source.size() != target.size() {
        return false;
    }
    let mut inverse = vec![usize::MAX; target.size()];
    for (x, &y) in f.iter().enumerate() {
        if y >= target.size() || inverse[y] != usize::MAX {
            return false;
        }
        inverse[y] = x;
    }
    is_pm_hom(f, source, target, true).is_ok() && is_pm_hom(&inverse, target, source, true).is_ok()
}

/// A named magma from the example library, with element labels.
#[derive(Clone, Debug)]
pub struct LibraryEntry {
    pub name: &'static str,
    pub labels: Vec<&'static str>,
    pub magma: PartialMagma,
}

impl LibraryEntry {
    pub fn element(&self, label: &str) -> usize {
        self.labels
            .iter()
            .position(|&l| l == label)
            .unwrap_or_else(|| panic!("{label} is not an element of {}", self.name))
    }

    pub fn regular(&self) -> RegularMagma {
        RegularMagma::new(self.magma.clone()).expect("library categories are regular")
    }
}

fn matrix_entry(name: &'static str, labels: &[&'static str]) -> LibraryEntry {
    let matrices: Vec<Matrix> = labels
        .iter()
        .map(|l| {
            let digits: Vec<usize> = l
                .chars()
                .filter_map(|c| c.to_digit(10))
                .map(|d| d as usize)
                .collect();
            match (l.as_bytes()[0], digits.as_slice()) {
                (b'I', [k]) => Matrix::identity_like(*k, *k),
                (b'A', [r, c]) => Matrix::identity_like(*r, *c),
                _ => unreachable!("malformed label {l}"),
            }
        })
        .collect();
    LibraryEntry {
        name,
        labels: labels.to_vec(),
        magma: matrix_magma(&matrices),
    }
}

/// The small categories built from identity-like matrices (`Ik` is the
/// identity of order `k`, `Arc` the `r × c` matrix with a unit diagonal),
/// followed by the natural numbers `0..=3` under partial subtraction.
pub fn example_library() -> Vec<LibraryEntry> {
    vec![
        matrix_entry("one", &["I1"]),
        matrix_entry("two", &["I1", "I2", "A21"]),
        matrix_entry("discrete_two", &["I1", "I2"]),
        matrix_entry("three", &["I1", "I2", "I3", "A21", "A32", "A31"]),
        matrix_entry(
            "square",
            &["I1", "I2", "I3", "I4", "A21", "A32", "A31", "A41", "A34"],
        ),
        LibraryEntry {
            name: "nat_subtraction",
            labels: vec!["0", "1", "2", "3"],
            magma: crate::partial_magma::nat_subtraction(3),
        },
    ]
}

pub fn library_entry(name: &str) -> Option<LibraryEntry> {
    example_library().into_iter().find(|e| e.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(name: &str) -> LibraryEntry {
        library_entry(name).unwrap()
    }

    #[test]
    fn library_shapes() {
        let sq = entry("square");
        let r = sq.regular();
        assert_eq!(r.units().len(), 4);
        assert_eq!(sq.magma.size() - 4, 5);
        let a31 = sq.element("A31");
        assert_eq!(
            sq.magma.mul(sq.element("A32"), sq.element("A21")),
            Some(a31)
        );
        assert_eq!(
            sq.magma.mul(sq.element("A34"), sq.element("A41")),
            Some(a31)
        );

        let ii = entry("discrete_two").regular();
        assert_eq!(hom_set(&ii, 0, 1).unwrap(), Vec::<usize>::new());
        assert_eq!(hom_set(&ii, 1, 0).unwrap(), Vec::<usize>::new());
        assert!(!classify_regular(&entry("nat_subtraction").magma));
    }

    fn classify_regular(pm: &PartialMagma) -> bool {
        crate::partial_magma::classify(pm).regular
    }

    #[test]
    fn hom_sets() {
        let two = entry("two");
        let r = two.regular();
        let (i1, i2, a21) = (two.element("I1"), two.element("I2"), two.element("A21"));
        assert_eq!(hom_set(&r, i1, i2).unwrap(), vec![a21]);
        assert_eq!(hom_set(&r, i1, i1).unwrap(), vec![i1]);
        assert_eq!(hom_set(&r, a21, i1), Err(Error::NotAUnit(a21)));

        let three = entry("three");
        let r = three.regular();
        assert_eq!(
            hom_set(&r, three.element("I1"), three.element("I3")).unwrap(),
            vec![three.element("A31")]
        );
    }

    #[test]
    fn hom_sets_partition_the_arrows() {
        for e in example_library()
            .iter()
            .filter(|e| e.name != "nat_subtraction")
        {
            let r = e.regular();
            let mut count = 0;
            for &u in r.units() {
                for &v in r.units() {
                    count += hom_set(&r, u, v).unwrap().len();
                }
            }
            assert_eq!(count, r.size(), "{}", e.name);
        }
    }

    #[test]
    fn three_from_matrices_matches_hand_built_category() {
        // objects 0,1,2; arrows: identities 0,1,2, then 0→1, 1→2, 0→2
        let dom = vec![0, 1, 2, 0, 1, 0];
        let cod = vec![0, 1, 2, 1, 2, 2];
        let hand = FiniteCategory::new(3, vec![0, 1, 2], dom.clone(), cod.clone(), |g, f| {
            if dom[g] != cod[f] {
                None
            } else if g < 3 {
                Some(f)
            } else if f < 3 {
                Some(g)
            } else {
                Some(5)
            }
        })
        .unwrap();
        assert_eq!(cat_from_rpm(&entry("three").magma).unwrap(), hand);
        assert_eq!(rpm_from_cat(&hand), entry("three").magma);
    }

    #[test]
    fn category_axioms_are_enforced() {
        // composition missing for a composable pair
        let err = FiniteCategory::new(1, vec![0], vec![0, 0], vec![0, 0], |g, f| {
            (g == 0 || f == 0).then(|| g.max(f))
        });
        assert!(matches!(err, Err(Error::InvalidCategory(_))));
        // non-associative: two loops e with e∘e = id
        let ok = FiniteCategory::new(1, vec![0], vec![0, 0], vec![0, 0], |g, f| Some((g + f) % 2));
        assert!(ok.is_ok());
        assert!(matches!(
            cat_from_rpm(&crate::partial_magma::nat_subtraction(3)),
            Err(Error::NotRegular(_))
        ));
    }

    #[test]
    fn round_trips_on_library() {
        for e in example_library()
            .iter()
            .filter(|e| e.name != "nat_subtraction")
        {
            let cat = cat_from_rpm(&e.magma).unwrap();
            assert_eq!(rpm_from_cat(&cat), e.magma);
            assert_eq!(cat_from_rpm(&rpm_from_cat(&cat)).unwrap(), cat);
        }
        assert_eq!(cat_from_rpm(&entry("one").magma).unwrap().object_count(), 1);
        let three = cat_from_rpm(&entry("three").magma).unwrap();
        assert_eq!((three.object_count(), three.arrow_count() - 3), (3, 3));
    }

    #[test]
    fn twin_category_shapes() {
        let one = twin_category(&entry("one").regular()).unwrap();
        assert_eq!(one.magma.size(), 1);

        let two = entry("two");
        let twin = twin_category(&two.regular()).unwrap();
        let objects: std::collections::BTreeSet<usize> = twin.arrows.iter().map(|a| a.0).collect();
        assert_eq!(objects.len(), 3);
        assert_eq!(twin.magma.units().len(), 3);
    }

    #[test]
    fn twin_arrows_in_three() {
        let three = entry("three");
        let r = three.regular();
        let (i1, a21, a32, a31) = (
            three.element("I1"),
            three.element("A21"),
            three.element("A32"),
            three.element("A31"),
        );
        assert_eq!(twin_hom_cases(&r, i1, a32), vec![(a21, a31)]);
        assert_eq!(twin_hom_cases(&r, i1, i1), vec![(i1, i1)]);
        // nothing maps the arrow A32 onto the identity at I1
        assert!(twin_hom_cases(&r, a32, i1).is_empty());
    }

    #[test]
    fn twin_homs_between_objects_recapture_hom_sets() {
        let three = entry("three");
        let r = three.regular();
        for &u in r.units() {
            for &v in r.units() {
                let diagonal: Vec<(usize, usize)> = hom_set(&r, u, v)
                    .unwrap()
                    .into_iter()
                    .map(|x| (x, x))
                    .collect();
                assert_eq!(twin_hom_cases(&r, u, v), diagonal);
            }
        }
    }

    #[test]
    fn twin_hom_cases_for_object_sources() {
        // when x is a unit, z is determined by z.0 and y: z.1 = y · z.0
        let sq = entry("square");
        let r = sq.regular();
        for &u in r.units() {
            for y in 0..r.size() {
                for z in twin_hom_cases(&r, u, y) {
                    assert_eq!(r.mul(y, z.0), Some(z.1));
                }
                for x in 0..r.size() {
                    if r.is_unit(y) {
                        for z in twin_hom_cases(&r, x, y) {
                            assert_eq!(r.mul(z.1, x), Some(z.0));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn one_is_terminal() {
        let one = entry("one").regular();
        for e in example_library()
            .iter()
            .filter(|e| e.name != "nat_subtraction")
        {
            assert_eq!(all_functors(&e.regular(), &one).len(), 1, "{}", e.name);
        }
    }

    #[test]
    fn functor_enumeration_matches_brute_force() {
        let (two, three) = (entry("two").regular(), entry("three").regular());
        let fast = all_functors(&two, &three);
        let mut slow = Vec::new();
        for code in 0..6usize.pow(3) {
            let map: Vec<usize> = (0..3).map(|i| code / 6usize.pow(i) % 6).collect();
            if let Ok(f) = Functor::new(&two, &three, map) {
                slow.push(f);
            }
        }
        slow.sort_by(|a, b| a.map().cmp(b.map()));
        assert_eq!(fast, slow);
        // one functor per arrow of 3 (including identities)
        assert_eq!(fast.len(), 6);
    }

    #[test]
    fn natural_transformation_encodings_agree() {
        let (two, three) = (entry("two").regular(), entry("three").regular());
        let functors = all_functors(&two, &three);
        for t in &functors {
            for s in &functors {
                let homs = all_nat_homs(&two, &three, t, s);
                let trans = all_nat_trans(&two, &three, t, s);
                assert_eq!(homs.len(), trans.len());
                for alpha in &homs {
                    let tau = nat_from_hom(&two, &three, alpha).unwrap();
                    assert_eq!(&hom_from_nat(&two, &three, &tau).unwrap(), alpha);
                    assert!(trans.contains(&tau));
                }
            }
        }
    }

    #[test]
    fn identity_nat_is_a_unit_for_composition() {
        let (two, three) = (entry("two").regular(), entry("three").regular());
        let functors = all_functors(&two, &three);
        for t in &functors {
            let id = identity_nat(&two, t);
            assert_eq!(check_nat_hom(&two, &three, &id), Ok(()));
            let tau = nat_from_hom(&two, &three, &id).unwrap();
            let objects: Vec<usize> = two.units().iter().map(|&u| t.apply(u)).collect();
            assert_eq!(tau.components, objects);
            for s in &functors {
                for alpha in all_nat_homs(&two, &three, t, s) {
                    assert_eq!(compose_nat(&three, &alpha, &id).unwrap(), alpha);
                    assert_eq!(
                        compose_nat(&three, &identity_nat(&two, s), &alpha).unwrap(),
                        alpha
                    );
                }
            }
        }
    }

    #[test]
    fn composition_is_associative_and_checked() {
        let (two, three) = (entry("two").regular(), entry("three").regular());
        let fun = functor_category(&two, &three).unwrap();
        assert_eq!(
            crate::partial_magma::check_associative(fun.magma.magma()),
            Ok(())
        );
        assert_eq!(fun.magma.units().len(), fun.functors.len());
        let a = &fun.arrows[0];
        if let Some(b) = fun.arrows.iter().find(|b| b.from != a.to) {
            assert!(matches!(
                compose_nat(&three, b, a),
                Err(Error::FunctorMismatch(_))
            ));
        }
    }

    #[test]
    fn functors_from_one_recover_the_category() {
        let one = entry("one").regular();
        for name in ["two", "three"] {
            let c = entry(name).regular();
            let fun = functor_category(&one, &c).unwrap();
            // α ↦ τ at the single object
            let map: Vec<usize> = fun.arrows.iter().map(|a| a.components[0].0).collect();
            assert!(is_isomorphism(&map, fun.magma.magma(), c.magma()), "{name}");
        }
    }

    #[test]
    fn functors_from_two_recover_the_twin_category() {
        let two_entry = entry("two");
        let two = two_entry.regular();
        let a21 = two_entry.element("A21");
        for name in ["two", "three"] {
            let c = entry(name).regular();
            let fun = functor_category(&two, &c).unwrap();
            let twin = twin_category(&c).unwrap();
            let map: Vec<usize> = fun
                .arrows
                .iter()
                .map(|alpha| {
                    let key = (
                        alpha.from.apply(a21),
                        alpha.to.apply(a21),
                        alpha.components[a21],
                    );
                    twin.arrows.iter().position(|&t| t == key).unwrap()
                })
                .collect();
            assert!(
                is_isomorphism(&map, fun.magma.magma(), twin.magma.magma()),
                "{name}"
            );
        }
    }

    #[test]
    fn non_natural_family_is_rejected() {
        let (two, three) = (entry("two").regular(), entry("three").regular());
        let functors = all_functors(&two, &three);
        // constant functors at I1 and at I2 admit only the A21 components
        let at = |u: usize| {
            functors
                .iter()
                .find(|f| f.map().iter().all(|&x| x == u))
                .unwrap()
                .clone()
        };
        let (t, s) = (at(0), at(1));
        let tau = NatTrans {
            from: t.clone(),
            to: s.clone(),
            components: vec![3, 1],
        };
        assert!(matches!(
            check_nat_trans(&two, &three, &tau),
            Err(Error::NotNatural(_))
        ));
        let ok = NatTrans {
            from: t,
            to: s,
            components: vec![3, 3],
        };
        assert_eq!(check_nat_trans(&two, &three, &ok), Ok(()));
    }
}
