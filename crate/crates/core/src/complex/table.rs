use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use crate::error::Error;

/// Closed range `[lo, hi]` of internal (polynomial) degrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Result<Self, Error> {
        if lo > hi {
            return Err(Error::Dimension(format!("empty window [{lo}, {hi}]")));
        }
        Ok(Self { lo, hi })
    }

    /// The default window `[-n-2, 6]` for an ambient space of dimension `n`.
    pub fn default_for(n: usize) -> Self {
        Self { lo: -(n as i64) - 2, hi: 6 }
    }

    pub fn degrees(&self) -> RangeInclusive<i64> {
        self.lo..=self.hi
    }

    pub fn contains(&self, t: i64) -> bool {
        (self.lo..=self.hi).contains(&t)
    }

    pub fn shifted(&self, by: i64) -> Self {
        Self { lo: self.lo + by, hi: self.hi + by }
    }
}

/// Dimensions indexed by `(cohomological degree, internal degree)`.
///
/// Only nonzero entries are stored; a missing key means 0. Tor_k lives in
/// cohomological degree `-k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HilbertTable {
    window: Window,
    entries: BTreeMap<(i64, i64), u64>,
}

impl HilbertTable {
    pub fn new(window: Window) -> Self {
        Self { window, entries: BTreeMap::new() }
    }

    /// Builds a table by evaluating `f(cohomological, internal)` over the given
    /// cohomological degrees and the whole window.
    pub fn from_fn(window: Window, cohomological: impl IntoIterator<Item = i64>, mut f: impl FnMut(i64, i64) -> u64) -> Self {
        let mut table = Self::new(window);
        for i in cohomological {
            for t in window.degrees() {
                table.set(i, t, f(i, t));
            }
        }
        table
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn get(&self, cohomological: i64, internal: i64) -> u64 {
        self.entries.get(&(cohomological, internal)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, cohomological: i64, internal: i64, value: u64) {
        assert!(self.window.contains(internal), "internal degree {internal} outside {:?}", self.window);
        if value == 0 {
            self.entries.remove(&(cohomological, internal));
        } else {
            self.entries.insert((cohomological, internal), value);
        }
    }

    pub fn add_to(&mut self, cohomological: i64, internal: i64, value: u64) {
        let v = self.get(cohomological, internal) + value;
        self.set(cohomological, internal, v);
    }

    pub fn entries(&self) -> impl Iterator<Item = ((i64, i64), u64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Cohomological degrees carrying a nonzero entry, ascending.
    pub fn cohomological_degrees(&self) -> Vec<i64> {
        let mut d: Vec<i64> = self.entries.keys().map(|&(i, _)| i).collect();
        d.dedup();
        d
    }

    /// Dimensions in one cohomological degree across the window.
    pub fn row(&self, cohomological: i64) -> Vec<u64> {
        self.window.degrees().map(|t| self.get(cohomological, t)).collect()
    }

    /// Entrywise sum; both tables must share a window.
    pub fn sum(&self, other: &Self) -> Self {
        assert_eq!(self.window, other.window, "summing tables over different windows");
        let mut out = self.clone();
        for ((i, t), v) in other.entries() {
            out.add_to(i, t, v);
        }
        out
    }

    /// Table of `C[a](b)`: entry `(i, t)` moves to `(i - a, t - b)`, window included.
    pub fn shifted(&self, cohomological: i64, internal: i64) -> Self {
        Self {
            window: self.window.shifted(-internal),
            entries: self.entries.iter().map(|(&(i, t), &v)| ((i - cohomological, t - internal), v)).collect(),
        }
    }

    /// Entries whose internal degree lies in `window`.
    pub fn restricted(&self, window: Window) -> Self {
        Self {
            window,
            entries: self.entries.iter().filter(|((_, t), _)| window.contains(*t)).map(|(&k, &v)| (k, v)).collect(),
        }
    }
}

/// Two tables that are expected to agree, with labels for reporting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub name: String,
    pub left_label: String,
    pub left: HilbertTable,
    pub right_label: String,
    pub right: HilbertTable,
}

/// One disagreeing bidegree of a [`Comparison`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub cohomological: i64,
    pub internal: i64,
    pub left: u64,
    pub right: u64,
}

impl Comparison {
    pub fn new(
        name: impl Into<String>,
        left_label: impl Into<String>,
        left: HilbertTable,
        right_label: impl Into<String>,
        right: HilbertTable,
    ) -> Self {
        Self { name: name.into(), left_label: left_label.into(), left, right_label: right_label.into(), right }
    }

    pub fn passed(&self) -> bool {
        self.left == self.right
    }

    pub fn mismatches(&self) -> Vec<Mismatch> {
        let mut keys: Vec<(i64, i64)> = self.left.entries().chain(self.right.entries()).map(|(k, _)| k).collect();
        keys.sort_unstable();
        keys.dedup();
        keys.into_iter()
            .filter_map(|(i, t)| {
                let (l, r) = (self.left.get(i, t), self.right.get(i, t));
                (l != r).then_some(Mismatch { cohomological: i, internal: t, left: l, right: r })
            })
            .collect()
    }
}
