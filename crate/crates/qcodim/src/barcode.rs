//! Bars, barcodes, and the interacting-pair combinatorics.
//!
//! A barcode is a finite multiset of intervals (`Bar`s) together with a
//! descriptor of the index set the persistence module lives over: either all
//! of the reals (`IndexSet::DenseReal`) or a finite grid of reals
//! (`IndexSet::FiniteGrid`). Two bars form an *interacting pair* when they
//! are interlaced (`b < beta <= d < delta`) or non-separated (`d < beta` with
//! no index-set element strictly between). The number of interacting pairs,
//! counted with multiplicity, is the quiver codimension `Qcodim` of the
//! module.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

/// Element of the extended real line: `-inf < finite < +inf`.
///
/// Finite values are guaranteed non-NaN, with `-0.0` normalized to `0.0` so
/// that equality and the total order agree.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExtReal {
    NegInf,
    Finite(f64),
    PosInf,
}

impl ExtReal {
    /// Wraps a finite value. Panics on NaN; normalizes `-0.0` to `0.0`.
    pub fn finite(x: f64) -> ExtReal {
        assert!(!x.is_nan(), "NaN is not an index value");
        if x.is_infinite() {
            return if x > 0.0 { ExtReal::PosInf } else { ExtReal::NegInf };
        }
        // -0.0 + 0.0 == +0.0, everything else is unchanged
        ExtReal::Finite(x + 0.0)
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    /// The finite value, if any.
    pub fn as_finite(self) -> Option<f64> {
        match self {
            ExtReal::Finite(x) => Some(x),
            _ => None,
        }
    }
}

impl Eq for ExtReal {}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtReal {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtReal::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            // non-NaN and sign-normalized, so total_cmp agrees with ==
            (Finite(a), Finite(b)) => a.total_cmp(b),
        }
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::NegInf => write!(f, "-inf"),
            ExtReal::Finite(x) => write!(f, "{x}"),
            ExtReal::PosInf => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum BarcodeError {
    #[error("grid must contain at least one point")]
    EmptyGrid,
    #[error("grid points must be strictly increasing and finite (violated near index {0})")]
    GridNotIncreasing(usize),
    #[error("bar birth {birth} exceeds death {death}")]
    BirthAfterDeath { birth: ExtReal, death: ExtReal },
    #[error("bar birth cannot be +inf and death cannot be -inf")]
    InfiniteWrongSide,
    #[error("bar multiplicity must be at least 1")]
    ZeroMultiplicity,
    #[error("bar endpoint {0} is not a member of the finite grid")]
    EndpointOffGrid(ExtReal),
}

/// A strictly increasing, nonempty list of finite grid points.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid {
    points: Vec<f64>,
}

impl Grid {
    pub fn new(points: Vec<f64>) -> Result<Grid, BarcodeError> {
        if points.is_empty() {
            return Err(BarcodeError::EmptyGrid);
        }
        for (i, w) in points.windows(2).enumerate() {
            if !(w[0] < w[1]) {
                return Err(BarcodeError::GridNotIncreasing(i));
            }
        }
        if points.iter().any(|p| !p.is_finite()) {
            return Err(BarcodeError::GridNotIncreasing(0));
        }
        let points = points.into_iter().map(|p| p + 0.0).collect();
        Ok(Grid { points })
    }

    /// Grid `{1, 2, ..., n}`, the index set of an n-vertex quiver.
    pub fn integer(n: usize) -> Grid {
        assert!(n >= 1);
        Grid {
            points: (1..=n).map(|i| i as f64).collect(),
        }
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn min(&self) -> f64 {
        self.points[0]
    }

    pub fn max(&self) -> f64 {
        *self.points.last().unwrap()
    }

    pub fn contains(&self, x: f64) -> bool {
        self.position_of(x).is_some()
    }

    /// Index of `x` among the grid points, if it is one.
    pub fn position_of(&self, x: f64) -> Option<usize> {
        self.points
            .binary_search_by(|p| p.total_cmp(&(x + 0.0)))
            .ok()
    }

    /// Least grid point `>= x`, i.e. where a birth snaps under restriction.
    pub fn snap_up(&self, x: ExtReal) -> Option<f64> {
        match x {
            ExtReal::NegInf => Some(self.min()),
            ExtReal::PosInf => None,
            ExtReal::Finite(v) => {
                let i = self.points.partition_point(|p| *p < v);
                self.points.get(i).copied()
            }
        }
    }

    /// Greatest grid point `<= x`, i.e. where a death snaps under restriction.
    pub fn snap_down(&self, x: ExtReal) -> Option<f64> {
        match x {
            ExtReal::PosInf => Some(self.max()),
            ExtReal::NegInf => None,
            ExtReal::Finite(v) => {
                let i = self.points.partition_point(|p| *p <= v);
                i.checked_sub(1).map(|i| self.points[i])
            }
        }
    }

    /// Number of grid points in the closed interval `[a, b]`.
    pub fn count_in_closed(&self, a: f64, b: f64) -> usize {
        let lo = self.points.partition_point(|p| *p < a);
        let hi = self.points.partition_point(|p| *p <= b);
        hi.saturating_sub(lo)
    }
}

/// Descriptor of the index set a barcode lives over.
#[derive(Clone, Debug, PartialEq)]
pub enum IndexSet {
    /// All of the real line.
    DenseReal,
    FiniteGrid(Grid),
}

impl IndexSet {
    /// Is there an element of the index set strictly between `x` and `y`?
    ///
    /// This is the gap test of the non-separated criterion. Over the dense
    /// reals it holds whenever `x < y`; over a finite grid it asks for an
    /// actual grid point in the open interval.
    pub fn exists_strictly_between(&self, x: ExtReal, y: ExtReal) -> bool {
        match self {
            IndexSet::DenseReal => x < y,
            IndexSet::FiniteGrid(grid) => {
                let lo = match x {
                    ExtReal::NegInf => 0,
                    ExtReal::PosInf => return false,
                    ExtReal::Finite(v) => grid.points.partition_point(|p| *p <= v),
                };
                match y {
                    ExtReal::PosInf => lo < grid.points.len(),
                    ExtReal::NegInf => false,
                    ExtReal::Finite(v) => grid.points.get(lo).is_some_and(|p| *p < v),
                }
            }
        }
    }
}

/// An interval with extended-real endpoints, `birth <= death`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Bar {
    birth: ExtReal,
    death: ExtReal,
}

impl Bar {
    pub fn new(birth: ExtReal, death: ExtReal) -> Result<Bar, BarcodeError> {
        if birth == ExtReal::PosInf || death == ExtReal::NegInf {
            return Err(BarcodeError::InfiniteWrongSide);
        }
        if birth > death {
            return Err(BarcodeError::BirthAfterDeath { birth, death });
        }
        Ok(Bar { birth, death })
    }

    /// Bar with two finite endpoints.
    pub fn finite(birth: f64, death: f64) -> Result<Bar, BarcodeError> {
        Bar::new(ExtReal::finite(birth), ExtReal::finite(death))
    }

    /// Bar `[birth, inf)`.
    pub fn half_infinite(birth: f64) -> Bar {
        Bar {
            birth: ExtReal::finite(birth),
            death: ExtReal::PosInf,
        }
    }

    pub fn birth(&self) -> ExtReal {
        self.birth
    }

    pub fn death(&self) -> ExtReal {
        self.death
    }

    /// Birth equals death at a finite value.
    pub fn is_pointbar(&self) -> bool {
        self.birth.is_finite() && self.birth == self.death
    }
}

impl fmt::Display for Bar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.birth, self.death)
    }
}

/// Outcome of classifying a pair of bars against an index set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairKind {
    NotInteracting,
    Interlaced,
    NonSeparated,
}

/// Classifies an unordered pair of bars.
///
/// With the bars ordered so that `b <= beta` (ties broken by death), the pair
/// is interlaced when `b < beta <= d < delta` and non-separated when
/// `d < beta` with no element of `s` strictly between `d` and `beta`. The
/// result is symmetric in the two bars, and only the endpoint values matter.
pub fn classify_pair(first: &Bar, second: &Bar, s: &IndexSet) -> PairKind {
    let (i, j) = if (first.birth, first.death) <= (second.birth, second.death) {
        (first, second)
    } else {
        (second, first)
    };
    if i.birth < j.birth && j.birth <= i.death && i.death < j.death {
        PairKind::Interlaced
    } else if i.death < j.birth && !s.exists_strictly_between(i.death, j.birth) {
        PairKind::NonSeparated
    } else {
        PairKind::NotInteracting
    }
}

/// One bar type together with its multiplicity in the barcode.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BarcodeEntry {
    pub bar: Bar,
    pub multiplicity: u64,
}

/// A finite multiset of bars over an index set.
///
/// Entries are kept sorted by (birth, death) with distinct endpoint pairs;
/// constructing a barcode merges coinciding bars by summing multiplicities.
/// Over a finite grid every endpoint must be a grid member.
#[derive(Clone, Debug, PartialEq)]
pub struct Barcode {
    index_set: IndexSet,
    entries: Vec<BarcodeEntry>,
}

impl Barcode {
    pub fn new(
        index_set: IndexSet,
        bars: impl IntoIterator<Item = (Bar, u64)>,
    ) -> Result<Barcode, BarcodeError> {
        let mut entries: Vec<BarcodeEntry> = Vec::new();
        for (bar, multiplicity) in bars {
            if multiplicity == 0 {
                return Err(BarcodeError::ZeroMultiplicity);
            }
            if let IndexSet::FiniteGrid(grid) = &index_set {
                for endpoint in [bar.birth, bar.death] {
                    let on_grid = endpoint
                        .as_finite()
                        .map(|v| grid.contains(v))
                        .unwrap_or(false);
                    if !on_grid {
                        return Err(BarcodeError::EndpointOffGrid(endpoint));
                    }
                }
            }
            entries.push(BarcodeEntry { bar, multiplicity });
        }
        entries.sort_by_key(|e| (e.bar.birth, e.bar.death));
        entries.dedup_by(|next, kept| {
            if kept.bar == next.bar {
                kept.multiplicity += next.multiplicity;
                true
            } else {
                false
            }
        });
        Ok(Barcode { index_set, entries })
    }

    pub fn empty(index_set: IndexSet) -> Barcode {
        Barcode {
            index_set,
            entries: Vec::new(),
        }
    }

    pub fn index_set(&self) -> &IndexSet {
        &self.index_set
    }

    pub fn entries(&self) -> &[BarcodeEntry] {
        &self.entries
    }

    /// Total number of bar instances, counted with multiplicity.
    pub fn total_bars(&self) -> u64 {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    /// The quiver codimension: interacting pairs counted with multiplicity.
    ///
    /// Distinct entry types I, J with an interacting classification
    /// contribute `m_I * m_J`; two instances of the same type share their
    /// endpoints and can never interact.
    pub fn qcodim(&self) -> u64 {
        let mut total = 0u64;
        for (i, a) in self.entries.iter().enumerate() {
            for b in &self.entries[i + 1..] {
                if classify_pair(&a.bar, &b.bar, &self.index_set) != PairKind::NotInteracting {
                    total += a.multiplicity * b.multiplicity;
                }
            }
        }
        total
    }

    /// Sorted, deduplicated list of all finite endpoints.
    pub fn critical_points(&self) -> Vec<f64> {
        let mut values: Vec<f64> = self
            .entries
            .iter()
            .flat_map(|e| [e.bar.birth, e.bar.death])
            .filter_map(ExtReal::as_finite)
            .collect();
        values.sort_by(f64::total_cmp);
        values.dedup();
        values
    }

    /// True if some bar has birth `-inf` (resp. death `+inf`).
    pub fn has_infinite_birth(&self) -> bool {
        self.entries.iter().any(|e| e.bar.birth == ExtReal::NegInf)
    }

    pub fn has_infinite_death(&self) -> bool {
        self.entries.iter().any(|e| e.bar.death == ExtReal::PosInf)
    }

    /// Restricts the barcode to a finite grid.
    ///
    /// Bars are treated as closed: birth snaps up to the least grid point
    /// `>= b`, death snaps down to the greatest grid point `<= d`. An
    /// infinite birth snaps to the grid minimum and an infinite death to the
    /// grid maximum. A bar whose snapped endpoints cross (or fall off the
    /// grid) does not restrict and is dropped; coinciding restricted bars
    /// have their multiplicities summed.
    pub fn restrict(&self, grid: &Grid) -> Barcode {
        let mut bars = Vec::new();
        for e in &self.entries {
            let (Some(b), Some(d)) = (grid.snap_up(e.bar.birth), grid.snap_down(e.bar.death))
            else {
                continue;
            };
            if b > d {
                continue;
            }
            let bar = Bar::finite(b, d).expect("snapped endpoints are ordered grid members");
            bars.push((bar, e.multiplicity));
        }
        Barcode::new(IndexSet::FiniteGrid(grid.clone()), bars)
            .expect("restricted endpoints are grid members")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bar(b: f64, d: f64) -> Bar {
        Bar::finite(b, d).unwrap()
    }

    fn grid(points: &[f64]) -> Grid {
        Grid::new(points.to_vec()).unwrap()
    }

    fn dense_barcode(bars: &[(Bar, u64)]) -> Barcode {
        Barcode::new(IndexSet::DenseReal, bars.iter().copied()).unwrap()
    }

    #[test]
    fn ext_real_total_order() {
        let neg = ExtReal::NegInf;
        let pos = ExtReal::PosInf;
        let x = ExtReal::finite(-1e300);
        let y = ExtReal::finite(1e300);
        assert!(neg < x && x < y && y < pos);
        assert_eq!(ExtReal::finite(-0.0), ExtReal::finite(0.0));
        assert_eq!(ExtReal::finite(-0.0).cmp(&ExtReal::finite(0.0)), Ordering::Equal);
    }

    #[test]
    fn bar_invariants() {
        assert!(Bar::finite(2.0, 1.0).is_err());
        assert!(Bar::new(ExtReal::PosInf, ExtReal::PosInf).is_err());
        assert!(Bar::new(ExtReal::NegInf, ExtReal::NegInf).is_err());
        assert!(bar(1.0, 1.0).is_pointbar());
        assert!(!Bar::half_infinite(1.0).is_pointbar());
    }

    #[test]
    fn interlaced_a4_example() {
        // first/third bars of the A4 barcode, read as intervals
        let kind = classify_pair(&bar(1.0, 3.0), &bar(3.0, 4.0), &IndexSet::DenseReal);
        assert_eq!(kind, PairKind::Interlaced);
    }

    #[test]
    fn non_separated_on_grid() {
        let s = IndexSet::FiniteGrid(grid(&[0.0, 1.0, 2.0, 3.0]));
        let kind = classify_pair(&bar(0.0, 1.0), &bar(2.0, 3.0), &s);
        assert_eq!(kind, PairKind::NonSeparated);
    }

    #[test]
    fn separated_over_dense_reals() {
        let kind = classify_pair(&bar(0.0, 1.0), &bar(2.0, 3.0), &IndexSet::DenseReal);
        assert_eq!(kind, PairKind::NotInteracting);
    }

    #[test]
    fn identical_pointbars_do_not_interact() {
        let p = bar(2.0, 2.0);
        for s in [
            IndexSet::DenseReal,
            IndexSet::FiniteGrid(grid(&[1.0, 2.0, 3.0])),
        ] {
            assert_eq!(classify_pair(&p, &p, &s), PairKind::NotInteracting);
        }
    }

    #[test]
    fn gap_test_with_infinite_endpoints() {
        let dense = IndexSet::DenseReal;
        assert!(dense.exists_strictly_between(ExtReal::NegInf, ExtReal::finite(0.0)));
        assert!(dense.exists_strictly_between(ExtReal::finite(0.0), ExtReal::PosInf));
        assert!(dense.exists_strictly_between(ExtReal::NegInf, ExtReal::PosInf));
        assert!(!dense.exists_strictly_between(ExtReal::finite(1.0), ExtReal::finite(1.0)));

        let g = IndexSet::FiniteGrid(grid(&[0.0, 1.0]));
        assert!(g.exists_strictly_between(ExtReal::NegInf, ExtReal::finite(0.5)));
        assert!(g.exists_strictly_between(ExtReal::finite(0.5), ExtReal::PosInf));
        assert!(!g.exists_strictly_between(ExtReal::finite(0.0), ExtReal::finite(1.0)));
        assert!(g.exists_strictly_between(ExtReal::finite(-0.5), ExtReal::finite(0.5)));
    }

    #[test]
    fn qcodim_a4_barcode() {
        let g = grid(&[1.0, 2.0, 3.0, 4.0]);
        let bc = Barcode::new(
            IndexSet::FiniteGrid(g),
            [
                (bar(1.0, 3.0), 2),
                (bar(1.0, 4.0), 1),
                (bar(3.0, 4.0), 1),
            ],
        )
        .unwrap();
        assert_eq!(bc.qcodim(), 2);
    }

    #[test]
    fn qcodim_empty() {
        assert_eq!(Barcode::empty(IndexSet::DenseReal).qcodim(), 0);
    }

    #[test]
    fn qcodim_sawtooth() {
        let bc = dense_barcode(&[
            (Bar::half_infinite(-1.0), 1),
            (bar(0.0, 1.0), 1),
            (bar(1.0, 2.0), 1),
            (bar(2.0, 3.0), 1),
        ]);
        assert_eq!(bc.qcodim(), 2);
    }

    #[test]
    fn qcodim_counts_multiplicity_products() {
        // 3 copies of [0,2] and 2 copies of [1,3]: every cross pair is interlaced
        let bc = dense_barcode(&[(bar(0.0, 2.0), 3), (bar(1.0, 3.0), 2)]);
        assert_eq!(bc.qcodim(), 6);
    }

    #[test]
    fn critical_points_examples() {
        let bc = dense_barcode(&[
            (Bar::half_infinite(-1.0), 1),
            (bar(0.0, 1.0), 1),
            (bar(1.0, 2.0), 1),
        ]);
        assert_eq!(bc.critical_points(), vec![-1.0, 0.0, 1.0, 2.0]);
        assert!(Barcode::empty(IndexSet::DenseReal).critical_points().is_empty());
        let point = dense_barcode(&[(bar(0.5, 0.5), 1)]);
        assert_eq!(point.critical_points(), vec![0.5]);
    }

    #[test]
    fn restrict_snaps_inward() {
        let g = grid(&[0.0, 1.0, 2.0, 3.0]);
        let bc = dense_barcode(&[(bar(1.0, 2.5), 1)]);
        let r = bc.restrict(&g);
        assert_eq!(r.entries().len(), 1);
        assert_eq!(r.entries()[0].bar, bar(1.0, 2.0));
    }

    #[test]
    fn restrict_drops_bar_between_grid_points() {
        let g = grid(&[0.0, 1.0, 2.0, 3.0]);
        let bc = dense_barcode(&[(bar(1.1, 1.4), 1)]);
        assert!(bc.restrict(&g).entries().is_empty());
    }

    #[test]
    fn restrict_sawtooth_preserves_qcodim() {
        let g = grid(&[-1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0]);
        let bc = dense_barcode(&[
            (Bar::half_infinite(-1.0), 1),
            (bar(0.0, 1.0), 1),
            (bar(1.0, 2.0), 1),
            (bar(2.0, 3.0), 1),
        ]);
        let r = bc.restrict(&g);
        let expect: Vec<Bar> = vec![bar(-1.0, 3.0), bar(0.0, 1.0), bar(1.0, 2.0), bar(2.0, 3.0)];
        let got: Vec<Bar> = r.entries().iter().map(|e| e.bar).collect();
        assert_eq!(got, expect);
        assert_eq!(r.qcodim(), 2);
    }

    #[test]
    fn restrict_merges_multiplicities() {
        let g = grid(&[0.0, 1.0]);
        let bc = dense_barcode(&[(bar(0.0, 1.2), 2), (bar(-0.3, 1.0), 3)]);
        let r = bc.restrict(&g);
        assert_eq!(r.entries().len(), 1);
        assert_eq!(r.entries()[0].multiplicity, 5);
    }

    #[test]
    fn barcode_merges_duplicate_bars() {
        let bc = dense_barcode(&[(bar(0.0, 1.0), 2), (bar(0.0, 1.0), 3)]);
        assert_eq!(bc.entries().len(), 1);
        assert_eq!(bc.entries()[0].multiplicity, 5);
        assert_eq!(bc.total_bars(), 5);
    }

    #[test]
    fn grid_barcode_rejects_off_grid_endpoint() {
        let g = grid(&[1.0, 2.0]);
        let err = Barcode::new(IndexSet::FiniteGrid(g), [(bar(1.0, 1.5), 1)]);
        assert!(matches!(err, Err(BarcodeError::EndpointOffGrid(_))));
    }
}
