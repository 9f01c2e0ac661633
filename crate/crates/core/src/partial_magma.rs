//! Finite sets with a partially defined binary operation.
//!
//! Elements are the indices `0..n`. The operation table is stored row-major;
//! `mul(x, y)` is the product `x · y` when defined.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartialMagma {
    n: usize,
    table: Vec<Option<u32>>,
}

impl fmt::Debug for PartialMagma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

impl PartialMagma {
    /// Builds a magma from an `n × n` table of optional products.
    pub fn new(n: usize, rows: &[Vec<Option<usize>>]) -> Result<Self> {
        if rows.len() != n {
            return Err(Error::TableShape {
                got: rows.len(),
                expected: n,
            });
        }
        let mut table = Vec::with_capacity(n * n);
        for (row, entries) in rows.iter().enumerate() {
            if entries.len() != n {
                return Err(Error::TableShape {
                    got: entries.len(),
                    expected: n,
                });
            }
            for (col, &entry) in entries.iter().enumerate() {
                if let Some(value) = entry {
                    if value >= n {
                        return Err(Error::TableEntryOutOfRange {
                            row,
                            col,
                            value,
                            size: n,
                        });
                    }
                }
                table.push(entry.map(|v| v as u32));
            }
        }
        Ok(PartialMagma { n, table })
    }

    /// Builds a magma from a product function; results must be below `n`.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Option<usize>) -> Self {
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let v = f(x, y);
                debug_assert!(v.is_none_or(|v| v < n));
                table.push(v.map(|v| v as u32));
            }
        }
        PartialMagma { n, table }
    }

    /// Nothing is defined.
    pub fn empty(n: usize) -> Self {
        PartialMagma {
            n,
            table: vec![None; n * n],
        }
    }

    /// Number of distinct tables on `n` elements, `(n + 1)^(n²)`.
    pub fn table_count(n: usize) -> u64 {
        (n as u64 + 1).pow((n * n) as u32)
    }

    /// Decodes table number `code` in `0..table_count(n)`: base `n + 1`
    /// digits, least significant first, digit 0 meaning undefined.
    pub fn from_code(n: usize, mut code: u64) -> Self {
        let base = n as u64 + 1;
        let table = (0..n * n)
            .map(|_| {
                let digit = code % base;
                code /= base;
                digit.checked_sub(1).map(|v| v as u32)
            })
            .collect();
        PartialMagma { n, table }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> Option<usize> {
        self.table[x * self.n + y].map(|v| v as usize)
    }

    pub fn defined(&self, x: usize, y: usize) -> bool {
        self.table[x * self.n + y].is_some()
    }

    pub fn rows(&self) -> Vec<Vec<Option<usize>>> {
        (0..self.n)
            .map(|x| (0..self.n).map(|y| self.mul(x, y)).collect())
            .collect()
    }

    pub fn is_total(&self) -> bool {
        self.table.iter().all(Option::is_some)
    }

    /// `x · x` is defined and `x` acts as an identity wherever it is
    /// multiplied on either side.
    pub fn is_unit(&self, x: usize) -> bool {
        self.defined(x, x)
            && (0..self.n).all(|y| {
                self.mul(x, y).is_none_or(|p| p == y) && self.mul(y, x).is_none_or(|p| p == y)
            })
    }

    pub fn units(&self) -> Vec<usize> {
        (0..self.n).filter(|&x| self.is_unit(x)).collect()
    }

    /// Units `l` with `l · x` defined.
    pub fn left_pins(&self, x: usize) -> Vec<usize> {
        self.units()
            .into_iter()
            .filter(|&l| self.defined(l, x))
            .collect()
    }

    /// Units `r` with `x · r` defined.
    pub fn right_pins(&self, x: usize) -> Vec<usize> {
        self.units()
            .into_iter()
            .filter(|&r| self.defined(x, r))
            .collect()
    }

    /// The magma with elements renamed by `perm`: `perm[x]` is the new name
    /// of `x`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let mut inverse = vec![0; self.n];
        for (x, &p) in perm.iter().enumerate() {
            inverse[p] = x;
        }
        PartialMagma::from_fn(self.n, |x, y| {
            self.mul(inverse[x], inverse[y]).map(|p| perm[p])
        })
    }
}

/// First triple, in lexicographic order, breaking associativity.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct AssociativityFailure {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    /// `true` when both bracketings are defined but differ; otherwise the
    /// three definedness conditions disagree.
    pub values_differ: bool,
}

impl fmt::Display for AssociativityFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (x, y, z) = (self.x, self.y, self.z);
        if self.values_differ {
            write!(f, "({x}·{y})·{z} ≠ {x}·({y}·{z})")
        } else {
            write!(
                f,
                "definedness of ({x}·{y})·{z}, {x}·({y}·{z}) and the two factors disagree"
            )
        }
    }
}

pub fn check_associative(pm: &PartialMagma) -> std::result::Result<(), AssociativityFailure> {
    let n = pm.size();
    for x in 0..n {
        for y in 0..n {
            let xy = pm.mul(x, y);
            for z in 0..n {
                let yz = pm.mul(y, z);
                let left = xy.and_then(|p| pm.mul(p, z));
                let right = yz.and_then(|p| pm.mul(x, p));
                let both = xy.is_some() && yz.is_some();
                if left.is_some() != both || right.is_some() != both {
                    return Err(AssociativityFailure {
                        x,
                        y,
                        z,
                        values_differ: false,
                    });
                }
                if left != right {
                    return Err(AssociativityFailure {
                        x,
                        y,
                        z,
                        values_differ: true,
                    });
                }
            }
        }
    }
    Ok(())
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PMClassification {
    pub units: Vec<usize>,
    pub unital: bool,
    pub associative: std::result::Result<(), AssociativityFailure>,
    /// First element without a left pin.
    pub left_fastened: std::result::Result<(), usize>,
    /// First element without a right pin.
    pub right_fastened: std::result::Result<(), usize>,
    pub fastened: bool,
    pub regular: bool,
    pub monoid: bool,
    pub total: bool,
}

pub fn classify(pm: &PartialMagma) -> PMClassification {
    let units = pm.units();
    let n = pm.size();
    let left_fastened = match (0..n).find(|&x| !units.iter().any(|&l| pm.defined(l, x))) {
        Some(x) => Err(x),
        None => Ok(()),
    };
    let right_fastened = match (0..n).find(|&x| !units.iter().any(|&r| pm.defined(x, r))) {
        Some(x) => Err(x),
        None => Ok(()),
    };
    let unital = !units.is_empty();
    let associative = check_associative(pm);
    // Fastening is only defined for unital magmas.
    let fastened = unital && left_fastened.is_ok() && right_fastened.is_ok();
    let regular = unital && associative.is_ok() && fastened;
    PMClassification {
        monoid: regular && units.len() == 1,
        total: pm.is_total(),
        units,
        unital,
        associative,
        left_fastened,
        right_fastened,
        fastened,
        regular,
    }
}

/// `x ⊖ y` on ordered pairs: defined iff `y.1 = x.0`, giving `(y.0, x.1)`.
pub fn hmul(x: (usize, usize), y: (usize, usize)) -> Option<(usize, usize)> {
    (y.1 == x.0).then_some((y.0, x.1))
}

/// `x ⊗ y` on ordered pairs: componentwise product.
pub fn vmul(pm: &PartialMagma, x: (usize, usize), y: (usize, usize)) -> Option<(usize, usize)> {
    Some((pm.mul(x.0, y.0)?, pm.mul(x.1, y.1)?))
}

/// Pairs over a carrier of size `n` are indexed by `a * n + b` for `(a, b)`.
pub fn pair_index(n: usize, p: (usize, usize)) -> usize {
    p.0 * n + p.1
}

pub fn pair_of(n: usize, index: usize) -> (usize, usize) {
    (index / n, index % n)
}

/// The pairs of `0..n` under horizontal multiplication.
pub fn twin(n: usize) -> PartialMagma {
    PartialMagma::from_fn(n * n, |x, y| {
        hmul(pair_of(n, x), pair_of(n, y)).map(|p| pair_index(n, p))
    })
}

/// The pairs of a magma's elements under vertical multiplication.
pub fn square(pm: &PartialMagma) -> PartialMagma {
    let n = pm.size();
    PartialMagma::from_fn(n * n, |x, y| {
        vmul(pm, pair_of(n, x), pair_of(n, y)).map(|p| pair_index(n, p))
    })
}

/// The projections of the square onto each component.
pub fn square_projections(n: usize) -> (Vec<usize>, Vec<usize>) {
    (
        (0..n * n).map(|i| pair_of(n, i).0).collect(),
        (0..n * n).map(|i| pair_of(n, i).1).collect(),
    )
}

/// The induced map into the square, `q ↦ (f(q), g(q))`.
pub fn pairing(n: usize, f: &[usize], g: &[usize]) -> Vec<usize> {
    f.iter()
        .zip(g)
        .map(|(&a, &b)| pair_index(n, (a, b)))
        .collect()
}

/// Pairs `(x', x, z', z)` of the carrier for which both sides of
/// `(x' ⊗ z') ⊖ (x ⊗ z) = (x' ⊖ x) ⊗ (z' ⊖ z)` are defined and differ.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct InterchangeViolation {
    pub x_prime: (usize, usize),
    pub x: (usize, usize),
    pub z_prime: (usize, usize),
    pub z: (usize, usize),
}

/// Exhaustive check of the interchange law on all quadruples of pairs.
pub fn interchange_check(pm: &PartialMagma) -> std::result::Result<(), InterchangeViolation> {
    let n = pm.size();
    let pairs: Vec<(usize, usize)> = (0..n * n).map(|i| pair_of(n, i)).collect();
    for &xp in &pairs {
        for &zp in &pairs {
            let Some(top) = vmul(pm, xp, zp) else {
                continue;
            };
            for &x in &pairs {
                let Some(left_h) = hmul(xp, x) else { continue };
                for &z in &pairs {
                    let Some(bottom) = vmul(pm, x, z) else {
                        continue;
                    };
                    let Some(lhs) = hmul(top, bottom) else {
                        continue;
                    };
                    let Some(right_h) = hmul(zp, z) else { continue };
                    let Some(rhs) = vmul(pm, left_h, right_h) else {
                        continue;
                    };
                    if lhs != rhs {
                        return Err(InterchangeViolation {
                            x_prime: xp,
                            x,
                            z_prime: zp,
                            z,
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// A magma known to be unital, associative and fastened, with its
/// domain and codomain maps.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RegularMagma {
    pm: PartialMagma,
    units: Vec<usize>,
    dom: Vec<usize>,
    cod: Vec<usize>,
}

impl RegularMagma {
    pub fn new(pm: PartialMagma) -> Result<Self> {
        let c = classify(&pm);
        if !c.unital {
            return Err(Error::NotRegular("no unit".into()));
        }
        if let Err(w) = c.associative {
            return Err(Error::NotRegular(format!("not associative: {w}")));
        }
        if let Err(x) = c.left_fastened {
            return Err(Error::NotRegular(format!("element {x} has no left pin")));
        }
        if let Err(x) = c.right_fastened {
            return Err(Error::NotRegular(format!("element {x} has no right pin")));
        }
        // Pins are unique in a regular magma, so the first one found is it.
        let dom = (0..pm.size()).map(|x| pm.right_pins(x)[0]).collect();
        let cod = (0..pm.size()).map(|x| pm.left_pins(x)[0]).collect();
        Ok(RegularMagma {
            units: c.units,
            pm,
            dom,
            cod,
        })
    }

    pub fn magma(&self) -> &PartialMagma {
        &self.pm
    }

    pub fn into_magma(self) -> PartialMagma {
        self.pm
    }

    pub fn size(&self) -> usize {
        self.pm.size()
    }

    pub fn units(&self) -> &[usize] {
        &self.units
    }

    pub fn is_unit(&self, x: usize) -> bool {
        self.units.binary_search(&x).is_ok()
    }

    pub fn mul(&self, x: usize, y: usize) -> Option<usize> {
        self.pm.mul(x, y)
    }

    /// The right pin `s(x)`.
    pub fn dom(&self, x: usize) -> usize {
        self.dom[x]
    }

    /// The left pin `t(x)`.
    pub fn cod(&self, x: usize) -> usize {
        self.cod[x]
    }

    pub fn dom_cod(&self, x: usize) -> (usize, usize) {
        (self.dom[x], self.cod[x])
    }

    /// `x · z` is defined exactly when `s(x) = t(z)`.
    pub fn chain_rule(&self, x: usize, z: usize) -> bool {
        self.dom[x] == self.cod[z]
    }

    /// Checks the chain rule, uniqueness of pins, and
    /// `t(x·y) = t(x)`, `s(x·y) = s(y)` on all pairs; returns the first
    /// failing pair.
    pub fn verify_dom_cod_laws(&self) -> std::result::Result<(), (usize, usize)> {
        let n = self.size();
        for x in 0..n {
            if self.pm.left_pins(x).len() != 1 || self.pm.right_pins(x).len() != 1 {
                return Err((x, x));
            }
            for y in 0..n {
                let product = self.pm.mul(x, y);
                if product.is_some() != self.chain_rule(x, y) {
                    return Err((x, y));
                }
                if let Some(p) = product {
                    if self.cod[p] != self.cod[x] || self.dom[p] != self.dom[y] {
                        return Err((x, y));
                    }
                }
            }
        }
        Ok(())
    }
}

pub fn dom_cod(pm: &PartialMagma, x: usize) -> Result<(usize, usize)> {
    Ok(RegularMagma::new(pm.clone())?.dom_cod(x))
}

pub fn chain_rule(pm: &PartialMagma, x: usize, z: usize) -> Result<bool> {
    Ok(RegularMagma::new(pm.clone())?.chain_rule(x, z))
}

/// Both sides of "one unit ⟺ total" for a regular magma.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SingleUnitTotality {
    pub single_unit: bool,
    pub total: bool,
}

impl SingleUnitTotality {
    pub fn holds(&self) -> bool {
        self.single_unit == self.total
    }
}

pub fn single_unit_totality(pm: &PartialMagma) -> Result<SingleUnitTotality> {
    let regular = RegularMagma::new(pm.clone())?;
    Ok(SingleUnitTotality {
        single_unit: regular.units().len() == 1,
        total: pm.is_total(),
    })
}

/// Why a map fails to be a homomorphism.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HomFailure {
    /// The map has the wrong length or leaves the target.
    Shape,
    /// `x · y` is defined but `f(x) · f(y)` is undefined or differs from
    /// `f(x · y)`.
    Product(usize, usize),
    /// A unit is sent to a non-unit.
    Unit(usize),
}

impl fmt::Display for HomFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomFailure::Shape => write!(f, "map does not fit the carriers"),
            HomFailure::Product(x, y) => write!(f, "product of {x} and {y} not preserved"),
            HomFailure::Unit(x) => write!(f, "unit {x} is sent to a non-unit"),
        }
    }
}

pub fn is_pm_hom(
    f: &[usize],
    source: &PartialMagma,
    target: &PartialMagma,
    unital: bool,
) -> std::result::Result<(), HomFailure> {
    if f.len() != source.size() || f.iter().any(|&v| v >= target.size()) {
        return Err(HomFailure::Shape);
    }
    for x in 0..source.size() {
        for y in 0..source.size() {
            if let Some(p) = source.mul(x, y) {
                if target.mul(f[x], f[y]) != Some(f[p]) {
                    return Err(HomFailure::Product(x, y));
                }
            }
        }
    }
    if unital {
        if let Some(u) = source.units().into_iter().find(|&u| !target.is_unit(f[u])) {
            return Err(HomFailure::Unit(u));
        }
    }
    Ok(())
}

/// The map of pairs `(a, b) ↦ (f(a), f(b))` from pairs of `0..f.len()` to
/// pairs of `0..target`.
pub fn square_of_function(f: &[usize], target: usize) -> Vec<usize> {
    let n = f.len();
    (0..n * n)
        .map(|i| {
            let (a, b) = pair_of(n, i);
            pair_index(target, (f[a], f[b]))
        })
        .collect()
}

/// `0..=max` with `i · j = i − j`, defined when `i ≥ j`.
pub fn nat_subtraction(max: usize) -> PartialMagma {
    PartialMagma::from_fn(max + 1, |i, j| i.checked_sub(j))
}

/// An integer matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<i64>,
}

impl Matrix {
    /// The `rows × cols` matrix with ones on the diagonal.
    pub fn identity_like(rows: usize, cols: usize) -> Self {
        let mut entries = vec![0; rows * cols];
        for i in 0..rows.min(cols) {
            entries[i * cols + i] = 1;
        }
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Defined when the column count of `self` equals the row count of
    /// `other`.
    pub fn mul(&self, other: &Matrix) -> Option<Matrix> {
        if self.cols != other.rows {
            return None;
        }
        let mut entries = vec![0; self.rows * other.cols];
        for i in 0..self.rows {
            for j in 0..other.cols {
                entries[i * other.cols + j] = (0..self.cols)
                    .map(|k| self.entries[i * self.cols + k] * other.entries[k * other.cols + j])
                    .sum();
            }
        }
        Some(Matrix {
            rows: self.rows,
            cols: other.cols,
            entries,
        })
    }
}

/// The set of matrices under matrix multiplication. A product whose result
/// falls outside the set is left undefined.
pub fn matrix_magma(matrices: &[Matrix]) -> PartialMagma {
    PartialMagma::from_fn(matrices.len(), |x, y| {
        let product = matrices[x].mul(&matrices[y])?;
        matrices.iter().position(|m| *m == product)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_validates_shape_and_range() {
        assert_eq!(
            PartialMagma::new(2, &[vec![None, None]]),
            Err(Error::TableShape {
                got: 1,
                expected: 2
            })
        );
        assert_eq!(
            PartialMagma::new(1, &[vec![Some(1)]]),
            Err(Error::TableEntryOutOfRange {
                row: 0,
                col: 0,
                value: 1,
                size: 1
            })
        );
        let empty = PartialMagma::new(2, &[vec![None, None], vec![None, None]]).unwrap();
        assert_eq!(empty, PartialMagma::empty(2));
    }

    #[test]
    fn codes_enumerate_every_table_once() {
        let mut seen = std::collections::HashSet::new();
        for code in 0..PartialMagma::table_count(2) {
            assert!(seen.insert(PartialMagma::from_code(2, code)));
        }
        assert_eq!(seen.len(), 81);
        assert_eq!(PartialMagma::from_code(2, 0), PartialMagma::empty(2));
    }

    #[test]
    fn subtraction_is_unital_but_not_regular() {
        let pm = nat_subtraction(3);
        let c = classify(&pm);
        assert_eq!(c.units, vec![0]);
        assert!(c.unital);
        assert!(c.associative.is_err());
        assert!(c.right_fastened.is_ok());
        assert_eq!(c.left_fastened, Err(1));
        assert!((0..4).all(|x| pm.left_pins(x).is_empty() == (x != 0)));
        assert!(!c.regular && !c.total);
    }

    #[test]
    fn subtraction_associativity_witness() {
        // 0·(1·1) = 0 is defined although 0·1 is not.
        let w = check_associative(&nat_subtraction(3)).unwrap_err();
        assert_eq!(
            w,
            AssociativityFailure {
                x: 0,
                y: 1,
                z: 1,
                values_differ: false
            }
        );
        // 2, 1, 1: both bracketings defined, (2−1)−1 = 0 but 2−(1−1) = 2.
        let pm = nat_subtraction(3);
        assert_eq!(pm.mul(1, 1).and_then(|p| pm.mul(2, p)), Some(2));
        assert_eq!(pm.mul(2, 1).and_then(|p| pm.mul(p, 1)), Some(0));
    }

    #[test]
    fn twin_is_regular_with_diagonal_units() {
        for n in 1..=3 {
            let t = twin(n);
            let c = classify(&t);
            assert!(c.regular, "n = {n}");
            let diagonal: Vec<usize> = (0..n).map(|a| pair_index(n, (a, a))).collect();
            assert_eq!(c.units, diagonal);
            let r = RegularMagma::new(t).unwrap();
            for i in 0..n * n {
                let (a, b) = pair_of(n, i);
                assert_eq!(r.dom(i), pair_index(n, (a, a)));
                assert_eq!(r.cod(i), pair_index(n, (b, b)));
            }
        }
    }

    #[test]
    fn one_element_total_magma_is_a_monoid() {
        let c = classify(&PartialMagma::from_fn(1, |_, _| Some(0)));
        assert!(c.monoid && c.total && c.regular);
    }

    #[test]
    fn horizontal_multiplication_rule() {
        let (a, b, c) = (0, 1, 2);
        assert_eq!(hmul((b, c), (a, b)), Some((a, c)));
        assert_eq!(hmul((a, a), (a, a)), Some((a, a)));
        assert_eq!(hmul((a, b), (a, b)), None);
    }

    fn matrices_three() -> (PartialMagma, [usize; 6]) {
        // I1, I2, I3, A21, A32, A31
        let m = [
            Matrix::identity_like(1, 1),
            Matrix::identity_like(2, 2),
            Matrix::identity_like(3, 3),
            Matrix::identity_like(2, 1),
            Matrix::identity_like(3, 2),
            Matrix::identity_like(3, 1),
        ];
        (matrix_magma(&m), [0, 1, 2, 3, 4, 5])
    }

    #[test]
    fn matrix_magma_products() {
        let (pm, [i1, i2, i3, a21, a32, a31]) = matrices_three();
        assert_eq!(pm.mul(a32, a21), Some(a31));
        assert_eq!(pm.mul(a21, i1), Some(a21));
        assert_eq!(pm.mul(i2, a21), Some(a21));
        assert_eq!(pm.mul(i1, a21), None);
        assert_eq!(pm.mul(a21, a32), None);
        let r = RegularMagma::new(pm.clone()).unwrap();
        assert_eq!(r.dom_cod(a32), (i2, i3));
        assert!(r.chain_rule(a32, a21));
        assert!(!r.chain_rule(a21, a32));
        assert!(r.chain_rule(i2, i2));
        assert_eq!(r.verify_dom_cod_laws(), Ok(()));
        assert!(matches!(
            dom_cod(&nat_subtraction(2), 0),
            Err(Error::NotRegular(_))
        ));
        assert!(matches!(
            chain_rule(&nat_subtraction(2), 0, 0),
            Err(Error::NotRegular(_))
        ));
    }

    #[test]
    fn vertical_multiplication_on_matrix_pairs() {
        let (pm, [_, i2, _, a21, a32, a31]) = matrices_three();
        assert_eq!(vmul(&pm, (a32, a32), (a21, a21)), Some((a31, a31)));
        assert_eq!(vmul(&pm, (i2, i2), (i2, i2)), Some((i2, i2)));
        assert_eq!(vmul(&pm, (a32, a21), (a21, a21)), None);
    }

    #[test]
    fn square_of_regular_is_regular() {
        let (pm, _) = matrices_three();
        assert!(classify(&square(&pm)).regular);
        let c = classify(&square(&pm));
        let units = pm.units();
        let expected: Vec<usize> = (0..36)
            .filter(|&i| {
                let (a, b) = pair_of(6, i);
                units.contains(&a) && units.contains(&b)
            })
            .collect();
        assert_eq!(c.units, expected);
    }

    #[test]
    fn square_universal_property() {
        let (pm, _) = matrices_three();
        let sq = square(&pm);
        let (p1, p2) = square_projections(6);
        assert_eq!(is_pm_hom(&p1, &sq, &pm, true), Ok(()));
        assert_eq!(is_pm_hom(&p2, &sq, &pm, true), Ok(()));
        // cone from the category 2 = {I1, I2, A21}: inclusion and a shift
        let two = matrix_magma(&[
            Matrix::identity_like(1, 1),
            Matrix::identity_like(2, 2),
            Matrix::identity_like(2, 1),
        ]);
        let f = [0, 1, 3];
        let g = [1, 2, 4];
        assert_eq!(is_pm_hom(&f, &two, &pm, true), Ok(()));
        assert_eq!(is_pm_hom(&g, &two, &pm, true), Ok(()));
        let h = pairing(6, &f, &g);
        assert_eq!(is_pm_hom(&h, &two, &sq, true), Ok(()));
        for q in 0..3 {
            assert_eq!((p1[h[q]], p2[h[q]]), (f[q], g[q]));
        }
    }

    #[test]
    fn interchange_on_examples() {
        let (pm, _) = matrices_three();
        assert_eq!(interchange_check(&pm), Ok(()));
        assert_eq!(interchange_check(&PartialMagma::empty(3)), Ok(()));
        assert_eq!(interchange_check(&nat_subtraction(3)), Ok(()));
        // pairs of a 2-element set, multiplied vertically in a total monoid
        let z2 = PartialMagma::from_fn(2, |x, y| Some((x + y) % 2));
        assert_eq!(interchange_check(&z2), Ok(()));
    }

    #[test]
    fn homomorphism_checks() {
        let (pm, [i1, i2, ..]) = matrices_three();
        let id: Vec<usize> = (0..6).collect();
        assert_eq!(is_pm_hom(&id, &pm, &pm, true), Ok(()));

        // the two-element set {I1, I2} sent into the empty magma on 2
        // elements preserves nothing it needs to, since I1·I1 is defined
        let ii = matrix_magma(&[Matrix::identity_like(1, 1), Matrix::identity_like(2, 2)]);
        assert_eq!(
            is_pm_hom(&[0, 1], &ii, &PartialMagma::empty(2), false),
            Err(HomFailure::Product(0, 0))
        );

        // A magma where 1 is not a unit but 1·1 = 1 is defined.
        let target = PartialMagma::from_fn(2, |x, y| {
            if x == 1 && y == 1 {
                Some(1)
            } else if x == 0 && y == 0 {
                Some(0)
            } else if y == 0 {
                Some(x)
            } else {
                None
            }
        });
        assert!(!target.is_unit(1));
        let one = PartialMagma::from_fn(1, |_, _| Some(0));
        assert_eq!(is_pm_hom(&[1], &one, &target, false), Ok(()));
        assert_eq!(
            is_pm_hom(&[1], &one, &target, true),
            Err(HomFailure::Unit(0))
        );
        assert_eq!(
            is_pm_hom(&[i1, i2, 7], &ii, &pm, false),
            Err(HomFailure::Shape)
        );
    }

    #[test]
    fn square_of_functions_is_a_twin_homomorphism() {
        for u in 1..=3usize {
            for v in 1..=3usize {
                let (tu, tv) = (twin(u), twin(v));
                for code in 0..v.pow(u as u32) {
                    let f: Vec<usize> = (0..u).map(|i| code / v.pow(i as u32) % v).collect();
                    let sf = square_of_function(&f, v);
                    assert_eq!(is_pm_hom(&sf, &tu, &tv, true), Ok(()));
                }
            }
        }
    }

    #[test]
    fn single_unit_versus_totality() {
        let i1 = matrix_magma(&[Matrix::identity_like(1, 1)]);
        let r = single_unit_totality(&i1).unwrap();
        assert!(r.single_unit && r.total && r.holds());

        let ii = matrix_magma(&[Matrix::identity_like(1, 1), Matrix::identity_like(2, 2)]);
        let r = single_unit_totality(&ii).unwrap();
        assert!(!r.single_unit && !r.total && r.holds());

        assert!(single_unit_totality(&nat_subtraction(2)).is_err());
    }

    #[test]
    fn relabelling_preserves_classification() {
        let (pm, _) = matrices_three();
        let perm = [5, 3, 1, 0, 2, 4];
        let moved = pm.relabel(&perm);
        let (a, b) = (classify(&pm), classify(&moved));
        assert_eq!(a.regular, b.regular);
        assert_eq!(a.units.len(), b.units.len());
        let mut mapped: Vec<usize> = a.units.iter().map(|&u| perm[u]).collect();
        mapped.sort_unstable();
        assert_eq!(mapped, b.units);
        assert_eq!(is_pm_hom(&perm, &pm, &moved, true), Ok(()));
    }
}
