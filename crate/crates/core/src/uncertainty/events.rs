use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Upper bound on the number of elementary events, keeping `2^n` subset
/// tables tractable.
pub const MAX_EVENTS: usize = 24;

/// An ordered, finite set of named elementary events.
#[derive(Clone, Debug)]
pub struct EventSpace {
    labels: Arc<[String]>,
}

impl PartialEq for EventSpace {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.labels, &other.labels) || self.labels == other.labels
    }
}

impl Eq for EventSpace {}

impl std::hash::Hash for EventSpace {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.labels.hash(h);
    }
}

impl EventSpace {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyEventSpace);
        }
        if labels.len() > MAX_EVENTS {
            return Err(Error::TooManyEvents(labels.len()));
        }
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() {
                return Err(Error::EmptyLabel);
            }
            if labels[..i].contains(l) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(Self {
            labels: labels.into(),
        })
    }

    /// Events named `e1 .. en`.
    pub fn numbered(n: usize) -> Result<Self> {
        Self::new((1..=n).map(|i| format!("e{i}")))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn full(&self) -> EventSet {
        EventSet::full(self.len())
    }

    pub fn empty(&self) -> EventSet {
        EventSet::empty(self.len())
    }

    pub fn singleton(&self, i: usize) -> EventSet {
        EventSet::empty(self.len()).with(i)
    }

    pub fn set<S: AsRef<str>>(&self, names: &[S]) -> Result<EventSet> {
        let mut set = self.empty();
        for name in names {
            let name = name.as_ref();
            let i = self
                .index_of(name)
                .ok_or_else(|| Error::UnknownEvent(name.to_string()))?;
            set = set.with(i);
        }
        Ok(set)
    }

    /// Label list of a set, in space order.
    pub fn names(&self, set: EventSet) -> Vec<String> {
        set.iter().map(|i| self.labels[i].clone()).collect()
    }

    /// Human readable `{a,b}` rendering.
    pub fn describe(&self, set: EventSet) -> String {
        format!("{{{}}}", self.names(set).join(","))
    }

    /// All `2^n` subsets in bitmask order.
    pub fn subsets(&self) -> impl Iterator<Item = EventSet> {
        let n = self.len();
        (0..1u32 << n).map(move |bits| EventSet::from_bits(n, bits))
    }

    pub(crate) fn check(&self, set: EventSet) -> Result<()> {
        if set.universe() == self.len() {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }
}

/// A subset of an [`EventSpace`], stored as an `n`-bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EventSet {
    bits: u32,
    n: u8,
}

impl fmt::Debug for EventSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EventSet({:0width$b})", self.bits, width = self.n as usize)
    }
}

impl EventSet {
    pub fn empty(n: usize) -> Self {
        debug_assert!(n <= MAX_EVENTS);
        Self { bits: 0, n: n as u8 }
    }

    pub fn full(n: usize) -> Self {
        Self {
            bits: mask(n),
            n: n as u8,
        }
    }

    /// Bits above `n` are discarded.
    pub fn from_bits(n: usize, bits: u32) -> Self {
        Self {
            bits: bits & mask(n),
            n: n as u8,
        }
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    /// Size of the event space this set lives in.
    pub fn universe(self) -> usize {
        self.n as usize
    }

    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn is_full(self) -> bool {
        self.bits == mask(self.n as usize)
    }

    pub fn contains(self, i: usize) -> bool {
        i < self.n as usize && self.bits & (1 << i) != 0
    }

    pub fn with(self, i: usize) -> Self {
        assert!(i < self.n as usize, "event index {i} out of range");
        Self {
            bits: self.bits | (1 << i),
            n: self.n,
        }
    }

    pub fn without(self, i: usize) -> Self {
        Self {
            bits: self.bits & !(1 << i),
            n: self.n,
        }
    }

    pub fn union(self, other: Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        Self {
            bits: self.bits | other.bits,
            n: self.n,
        }
    }

    pub fn intersection(self, other: Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        Self {
            bits: self.bits & other.bits,
            n: self.n,
        }
    }

    pub fn difference(self, other: Self) -> Self {
        Self {
            bits: self.bits & !other.bits,
            n: self.n,
        }
    }

    pub fn complement(self) -> Self {
        Self {
            bits: !self.bits & mask(self.n as usize),
            n: self.n,
        }
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.bits & other.bits == 0
    }

    /// Indices of member events in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let bits = self.bits;
        (0..self.n as usize).filter(move |i| bits & (1 << i) != 0)
    }

    /// Subsets of `self`, including `self` and the empty set.
    pub fn subsets(self) -> impl Iterator<Item = EventSet> {
        let n = self.n;
        let full = self.bits;
        let mut next = Some(full);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == 0 { None } else { Some((cur - 1) & full) };
            Some(EventSet { bits: cur, n })
        })
    }
}

fn mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

impl BitOr for EventSet {
    type Output = EventSet;
    fn bitor(self, rhs: Self) -> Self {
        self.union(rhs)
    }
}

impl BitAnd for EventSet {
    type Output = EventSet;
    fn bitand(self, rhs: Self) -> Self {
        self.intersection(rhs)
    }
}

impl Sub for EventSet {
    type Output = EventSet;
    fn sub(self, rhs: Self) -> Self {
        self.difference(rhs)
    }
}

impl Not for EventSet {
    type Output = EventSet;
    fn not(self) -> Self {
        self.complement()
    }
}
