//! Filters on finite ground sets and limits along them.
//!
//! On a finite set every filter is principal: it consists of all supersets of
//! its kernel, the intersection of its members. Filters are therefore stored
//! by kernel alone. Ground sets are `0..ground`.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::measure_space::MSet;

/// A proper filter on `0..ground`, represented by its nonempty kernel.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Filter {
    ground: usize,
    kernel: FixedBitSet,
}

pub fn subset_of(ground: usize, points: &[usize]) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(ground);
    for &p in points {
        s.insert(p);
    }
    s
}

impl Filter {
    /// Filter with the given kernel; the kernel must be nonempty.
    pub fn with_kernel(ground: usize, kernel: FixedBitSet) -> Result<Self> {
        if kernel.len() != ground {
            return Err(Error::GroundMismatch {
                left: kernel.len(),
                right: ground,
            });
        }
        if kernel.is_clear() {
            return Err(Error::ImproperFilter);
        }
        Ok(Filter { ground, kernel })
    }

    /// The trivial filter `{ground}`.
    pub fn trivial(ground: usize) -> Result<Self> {
        let mut kernel = FixedBitSet::with_capacity(ground);
        kernel.insert_range(..);
        Self::with_kernel(ground, kernel)
    }

    /// `δ(q)`, all subsets containing `q`.
    pub fn principal_ultrafilter(ground: usize, q: usize) -> Result<Self> {
        if q >= ground {
            return Err(Error::PointOutOfRange { point: q, ground });
        }
        Ok(Filter {
            ground,
            kernel: subset_of(ground, &[q]),
        })
    }

    /// The filter generated by a base: its kernel is the intersection of
    /// the base members.
    pub fn from_base(ground: usize, base: &[FixedBitSet]) -> Result<Self> {
        let (first, rest) = base.split_first().ok_or(Error::EmptyBase)?;
        for b in base {
            if b.len() != ground {
                return Err(Error::GroundMismatch {
                    left: b.len(),
                    right: ground,
                });
            }
        }
        let mut kernel = first.clone();
        for b in rest {
            kernel.intersect_with(b);
        }
        Self::with_kernel(ground, kernel)
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn kernel(&self) -> &FixedBitSet {
        &self.kernel
    }

    pub fn kernel_points(&self) -> Vec<usize> {
        self.kernel.ones().collect()
    }

    /// Membership: `S ∈ F ⟺ S ⊇ kernel`.
    pub fn contains(&self, set: &FixedBitSet) -> bool {
        self.kernel.is_subset(set)
    }

    /// A filter on a finite set is maximal exactly when its kernel is a
    /// single point.
    pub fn is_ultrafilter(&self) -> bool {
        self.kernel.count_ones(..) == 1
    }

    /// The point of an ultrafilter.
    pub fn ultrafilter_point(&self) -> Option<usize> {
        if self.is_ultrafilter() {
            self.kernel.ones().next()
        } else {
            None
        }
    }

    /// `self ⊆ other` as families of sets.
    pub fn is_coarser_than(&self, other: &Filter) -> bool {
        self.ground == other.ground && other.kernel.is_subset(&self.kernel)
    }

    /// An ultrafilter containing `self`, at the lowest-indexed kernel point.
    pub fn ultrafilter_refine(&self) -> Filter {
        let q = self.kernel.ones().next().expect("kernel is nonempty");
        Filter {
            ground: self.ground,
            kernel: subset_of(self.ground, &[q]),
        }
    }

    /// Direct image along `map: 0..ground → 0..target`; the kernel of the
    /// image is the image of the kernel.
    pub fn direct_image(&self, map: &[usize], target: usize) -> Result<Filter> {
        if map.len() != self.ground {
            return Err(Error::GroundMismatch {
                left: map.len(),
                right: self.ground,
            });
        }
        let mut kernel = FixedBitSet::with_capacity(target);
        for p in self.kernel.ones() {
            let image = map[p];
            if image >= target {
                return Err(Error::PointOutOfRange {
                    point: image,
                    ground: target,
                });
            }
            kernel.insert(image);
        }
        Filter::with_kernel(target, kernel)
    }

    /// Limit of `values` along the filter when the codomain is discrete:
    /// exists iff `values` is constant on the kernel.
    pub fn limit_discrete<T: PartialEq + Clone>(&self, values: &[T]) -> Option<T> {
        let mut points = self.kernel.ones();
        let first = &values[points.next()?];
        if points.all(|p| &values[p] == first) {
            Some(first.clone())
        } else {
            None
        }
    }

    /// All limits of `map` along the filter in `space`: the points `y` with
    /// `map(kernel)` inside the minimal open neighbourhood of `y`.
    pub fn limits_in(&self, map: &[usize], space: &FiniteTopSpace) -> Vec<usize> {
        let image: u64 = self.kernel.ones().fold(0, |m, p| m | 1 << map[p]);
        (0..space.points())
            .filter(|&y| image & !space.minimal_open(y) == 0)
            .collect()
    }

    /// The lowest-indexed limit, unique when `space` is Hausdorff.
    pub fn limit_in(&self, map: &[usize], space: &FiniteTopSpace) -> Option<usize> {
        self.limits_in(map, space).first().copied()
    }
}

/// A finite topological space on points `0..n` (`n ≤ 16`), opens as bitmasks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTopSpace {
    points: usize,
    opens: Vec<u64>,
    minimal: Vec<u64>,
}

impl FiniteTopSpace {
    pub const MAX_POINTS: usize = 16;

    /// Validates the topology axioms on the given open sets.
    pub fn new(points: usize, opens: &[u64]) -> Result<Self> {
        if points > Self::MAX_POINTS {
            return Err(Error::InvalidTopology(format!(
                "{points} points exceed {}",
                Self::MAX_POINTS
            )));
        }
        let full = (1u64 << points) - 1;
        let mut opens: Vec<u64> = opens.to_vec();
        opens.sort_unstable();
        opens.dedup();
        if let Some(o) = opens.iter().find(|&&o| o & !full != 0) {
            return Err(Error::InvalidTopology(format!(
                "open set {o:#b} leaves the space"
            )));
        }
        if opens.binary_search(&0).is_err() || opens.binary_search(&full).is_err() {
            return Err(Error::InvalidTopology(
                "empty set and whole space must be open".into(),
            ));
        }
        for &a in &opens {
            for &b in &opens {
                if opens.binary_search(&(a | b)).is_err() || opens.binary_search(&(a & b)).is_err()
                {
                    return Err(Error::InvalidTopology(format!(
                        "opens {a:#b} and {b:#b} are not closed under union and intersection"
                    )));
                }
            }
        }
        let minimal = (0..points)
            .map(|y| {
                opens
                    .iter()
                    .filter(|&&o| o >> y & 1 == 1)
                    .fold(full, |m, &o| m & o)
            })
            .collect();
        Ok(FiniteTopSpace {
            points,
            opens,
            minimal,
        })
    }

    /// Every subset open.
    pub fn discrete(points: usize) -> Self {
        let opens: Vec<u64> = (0..1u64 << points).collect();
        FiniteTopSpace {
            points,
            opens,
            minimal: (0..points).map(|y| 1 << y).collect(),
        }
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn opens(&self) -> &[u64] {
        &self.opens
    }

    /// Smallest open set containing `y`.
    pub fn minimal_open(&self, y: usize) -> u64 {
        self.minimal[y]
    }

    /// The neighbourhood filter `N(y)`, principal at the minimal open set.
    pub fn neighbourhood_filter(&self, y: usize) -> Filter {
        let mut kernel = FixedBitSet::with_capacity(self.points);
        for p in 0..self.points {
            if self.minimal[y] >> p & 1 == 1 {
                kernel.insert(p);
            }
        }
        Filter {
            ground: self.points,
            kernel,
        }
    }

    pub fn is_discrete(&self) -> bool {
        (0..self.points).all(|y| self.minimal[y] == 1 << y)
    }

    /// Distinct points have disjoint open neighbourhoods.
    pub fn is_hausdorff(&self) -> bool {
        (0..self.points).all(|x| {
            (x + 1..self.points).all(|y| {
                self.opens.iter().any(|&u| {
                    u >> x & 1 == 1 && self.opens.iter().any(|&v| v >> y & 1 == 1 && u & v == 0)
                })
            })
        })
    }

    /// Preimages of open sets are open.
    pub fn is_continuous(&self, map: &[usize], target: &FiniteTopSpace) -> bool {
        target.opens.iter().all(|&v| {
            let pre = (0..self.points)
                .filter(|&p| v >> map[p] & 1 == 1)
                .fold(0u64, |m, p| m | 1 << p);
            self.opens.binary_search(&pre).is_ok()
        })
    }
}

/// Filter on the family, generated by its final segments
/// `{C ∈ family : C ⊆ A}`. The family must be directed downward under
/// inclusion; its kernel is then the set of minimal members.
pub fn tail_filter(family: &[MSet]) -> Result<Filter> {
    if family.is_empty() {
        return Err(Error::EmptyBase);
    }
    for (i, &a) in family.iter().enumerate() {
        for (j, &b) in family.iter().enumerate().skip(i + 1) {
            let meet = a.intersection(b);
            if !family.iter().any(|c| c.is_subset(meet)) {
                return Err(Error::NotDirected(i, j));
            }
        }
    }
    let n = family.len();
    let segments: Vec<FixedBitSet> = family
        .iter()
        .map(|&a| {
            let below: Vec<usize> = (0..n).filter(|&c| family[c].is_subset(a)).collect();
            subset_of(n, &below)
        })
        .collect();
    Filter::from_base(n, &segments)
}

/// `lim_βD`: sends an ultrafilter on the points of a Hausdorff space to its
/// unique limit point.
pub fn lim_beta(space: &FiniteTopSpace, ultrafilter: &Filter) -> Result<usize> {
    if !space.is_hausdorff() {
        return Err(Error::NotHausdorff);
    }
    if ultrafilter.ground() != space.points() {
        return Err(Error::GroundMismatch {
            left: ultrafilter.ground(),
            right: space.points(),
        });
    }
    if !ultrafilter.is_ultrafilter() {
        return Err(Error::NotUltrafilter);
    }
    let identity: Vec<usize> = (0..space.points()).collect();
    let limits = ultrafilter.limits_in(&identity, space);
    debug_assert_eq!(limits.len(), 1);
    Ok(limits[0])
}

/// Checks `lim_βE ∘ β(φ) = φ ∘ lim_βD` on every ultrafilter of `D`.
/// Returns the first point of `D` whose square fails.
pub fn lim_beta_naturality(
    source: &FiniteTopSpace,
    target: &FiniteTopSpace,
    map: &[usize],
) -> Result<Option<usize>> {
    for y in 0..source.points() {
        let u = Filter::principal_ultrafilter(source.points(), y)?;
        let left = lim_beta(target, &u.direct_image(map, target.points())?)?;
        let right = map[lim_beta(source, &u)?];
        if left != right {
            return Ok(Some(y));
        }
    }
    Ok(None)
}
