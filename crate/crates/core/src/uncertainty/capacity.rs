use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::{EventSet, EventSpace, ProbabilityVector};
use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};

/// Möbius masses of a belief function: positive weights on distinct,
/// non-empty focal sets, summing to one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MassAssignment {
    space: EventSpace,
    /// Sorted by focal-set bitmask.
    entries: Vec<(EventSet, Rational)>,
}

impl MassAssignment {
    pub fn new(space: EventSpace, entries: Vec<(EventSet, Rational)>) -> Result<Self> {
        let mut entries = entries;
        for (set, mass) in &entries {
            space.check(*set)?;
            if set.is_empty() {
                return Err(Error::InvalidMasses("mass on the empty set".into()));
            }
            if *mass <= Rational::zero() {
                return Err(Error::InvalidMasses(format!(
                    "non-positive mass {} on {}",
                    format_rational(mass),
                    space.describe(*set)
                )));
            }
        }
        entries.sort_by_key(|(s, _)| s.bits());
        if let Some(w) = entries.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidMasses(format!(
                "focal set {} listed twice",
                space.describe(w[0].0)
            )));
        }
        let total: Rational = entries.iter().map(|(_, m)| m).sum();
        if !total.is_one() {
            return Err(Error::InvalidMasses(format!(
                "masses sum to {}",
                format_rational(&total)
            )));
        }
        Ok(Self { space, entries })
    }

    /// Point masses of an additive probability (zero weights dropped).
    pub fn from_probability(p: &ProbabilityVector) -> Self {
        let space = p.space().clone();
        let entries = p
            .weights()
            .iter()
            .enumerate()
            .filter(|(_, w)| !w.is_zero())
            .map(|(i, w)| (space.singleton(i), w.clone()))
            .collect();
        Self { space, entries }
    }

    pub fn space(&self) -> &EventSpace {
        &self.space
    }

    pub fn entries(&self) -> &[(EventSet, Rational)] {
        &self.entries
    }

    pub fn mass(&self, set: EventSet) -> Rational {
        self.entries
            .iter()
            .find(|(s, _)| *s == set)
            .map(|(_, m)| m.clone())
            .unwrap_or_else(Rational::zero)
    }

    fn belief(&self, a: EventSet) -> Rational {
        self.entries
            .iter()
            .filter(|(s, _)| s.is_subset_of(a))
            .map(|(_, m)| m)
            .sum()
    }
}

/// `Π(A) = Σ { φ(B) : B ⊆ A }`.
pub fn lower_probability(m: &MassAssignment, a: EventSet) -> Result<Rational> {
    m.space.check(a)?;
    Ok(m.belief(a))
}

#[derive(Clone)]
enum Repr {
    Masses(Arc<MassAssignment>),
    Envelope(Arc<[ProbabilityVector]>),
    Table(Arc<[Rational]>),
    Conditional { base: Arc<Capacity>, given: EventSet },
}

/// A set function on the events of a space. Mass-backed and envelope-backed
/// capacities are valid by construction; explicit tables are checked with
/// [`validate_capacity`].
#[derive(Clone)]
pub struct Capacity {
    space: EventSpace,
    repr: Repr,
}

impl fmt::Debug for Capacity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.repr {
            Repr::Masses(_) => "masses",
            Repr::Envelope(_) => "envelope",
            Repr::Table(_) => "table",
            Repr::Conditional { .. } => "conditional",
        };
        f.debug_struct("Capacity")
            .field("kind", &kind)
            .field("events", &self.space.labels())
            .finish()
    }
}

impl Capacity {
    pub fn from_masses(m: MassAssignment) -> Self {
        Self {
            space: m.space.clone(),
            repr: Repr::Masses(Arc::new(m)),
        }
    }

    /// Lower envelope `Π(A) = min_p p(A)`.
    pub fn from_envelope(ps: Vec<ProbabilityVector>) -> Result<Self> {
        let first = ps.first().ok_or(Error::EmptyEnvelope)?;
        let space = first.space().clone();
        if ps.iter().any(|p| *p.space() != space) {
            return Err(Error::SpaceMismatch);
        }
        Ok(Self {
            space,
            repr: Repr::Envelope(ps.into()),
        })
    }

    pub fn additive(p: ProbabilityVector) -> Self {
        Self {
            space: p.space().clone(),
            repr: Repr::Envelope(vec![p].into()),
        }
    }

    /// Explicit table indexed by subset bitmask. Only the length is checked.
    pub fn from_table(space: EventSpace, values: Vec<Rational>) -> Result<Self> {
        let expected = 1usize << space.len();
        if values.len() != expected {
            return Err(Error::TableSize {
                expected,
                got: values.len(),
            });
        }
        Ok(Self {
            space,
            repr: Repr::Table(values.into()),
        })
    }

    pub fn space(&self) -> &EventSpace {
        &self.space
    }

    pub fn masses(&self) -> Option<&MassAssignment> {
        match &self.repr {
            Repr::Masses(m) => Some(m),
            _ => None,
        }
    }

    pub fn envelope(&self) -> Option<&[ProbabilityVector]> {
        match &self.repr {
            Repr::Envelope(ps) => Some(ps),
            _ => None,
        }
    }

    pub fn table_values(&self) -> Option<&[Rational]> {
        match &self.repr {
            Repr::Table(t) => Some(t),
            _ => None,
        }
    }

    /// `Π(A)`. Panics if `a` is not a subset of this capacity's space.
    pub fn value(&self, a: EventSet) -> Rational {
        assert_eq!(a.universe(), self.space.len(), "event set from another space");
        match &self.repr {
            Repr::Masses(m) => m.belief(a),
            Repr::Envelope(ps) => ps
                .iter()
                .map(|p| p.prob(a))
                .min()
                .expect("envelope is non-empty"),
            Repr::Table(t) => t[a.bits() as usize].clone(),
            Repr::Conditional { base, given } => {
                let inside = a & *given;
                if inside == *given {
                    return Rational::one();
                }
                let lower = base.value(inside);
                if lower.is_zero() {
                    return lower;
                }
                let denom = &lower + Rational::one() - base.value(inside | !*given);
                lower / denom
            }
        }
    }

    pub fn try_value(&self, a: EventSet) -> Result<Rational> {
        self.space.check(a)?;
        Ok(self.value(a))
    }

    /// Materializes all `2^n` values, indexed by bitmask.
    pub fn to_table(&self) -> Vec<Rational> {
        match &self.repr {
            Repr::Table(t) => t.to_vec(),
            Repr::Masses(m) => {
                let n = self.space.len();
                let mut t = vec![Rational::zero(); 1 << n];
                for (s, w) in &m.entries {
                    t[s.bits() as usize] = w.clone();
                }
                // subset-sum (zeta) transform
                for bit in 0..n {
                    for mask in 0..t.len() {
                        if mask & (1 << bit) != 0 {
                            let lower = t[mask ^ (1 << bit)].clone();
                            t[mask] += lower;
                        }
                    }
                }
                t
            }
            _ => self.space.subsets().map(|a| self.value(a)).collect(),
        }
    }

    pub fn materialize(&self) -> Capacity {
        Capacity {
            space: self.space.clone(),
            repr: Repr::Table(self.to_table().into()),
        }
    }

    /// Plausibility `1 - Π(Aᶜ)`.
    pub fn plausibility(&self, a: EventSet) -> Rational {
        Rational::one() - self.value(!a)
    }

    /// Generalized Bayesian conditioning:
    /// `Π(A|B) = Π(A∩B) / [Π(A∩B) + 1 - Π((A∩B) ∪ Bᶜ)]`.
    pub fn condition(&self, given: EventSet) -> Result<Capacity> {
        self.space.check(given)?;
        if self.plausibility(given).is_zero() {
            return Err(Error::ConditioningOnImplausibleEvent {
                event: self.space.describe(given),
            });
        }
        if given.is_full() {
            return Ok(self.clone());
        }
        Ok(Capacity {
            space: self.space.clone(),
            repr: Repr::Conditional {
                base: Arc::new(self.clone()),
                given,
            },
        })
    }

    pub fn validate(&self) -> CapacityReport {
        validate_capacity(self)
    }

    pub fn mobius(&self) -> MobiusTransform {
        mobius_inversion(self)
    }
}

pub fn capacity_from_masses(m: &MassAssignment) -> Capacity {
    Capacity::from_masses(m.clone())
}

pub fn min_envelope(ps: &[ProbabilityVector]) -> Result<Capacity> {
    Capacity::from_envelope(ps.to_vec())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CapacityViolation {
    EmptySetNotZero { value: Rational },
    FullSetNotOne { value: Rational },
    OutOfRange { set: EventSet, value: Rational },
    /// `subset ⊂ superset` but `Π(subset) > Π(superset)`.
    NotMonotone {
        subset: EventSet,
        superset: EventSet,
        lower: Rational,
        upper: Rational,
    },
}

impl CapacityViolation {
    pub fn describe(&self, space: &EventSpace) -> String {
        match self {
            Self::EmptySetNotZero { value } => {
                format!("capacity of the empty set is {}", format_rational(value))
            }
            Self::FullSetNotOne { value } => {
                format!("capacity of the sure event is {}", format_rational(value))
            }
            Self::OutOfRange { set, value } => format!(
                "capacity of {} is {}, outside [0, 1]",
                space.describe(*set),
                format_rational(value)
            ),
            Self::NotMonotone {
                subset,
                superset,
                lower,
                upper,
            } => format!(
                "not monotone: {} has {} but its superset {} has {}",
                space.describe(*subset),
                format_rational(lower),
                space.describe(*superset),
                format_rational(upper)
            ),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CapacityReport {
    pub violations: Vec<CapacityViolation>,
}

impl CapacityReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks normalization, range and monotonicity. Monotonicity is checked on
/// covering pairs `A ⊂ A ∪ {e}`, which is equivalent to checking all pairs.
pub fn validate_capacity(c: &Capacity) -> CapacityReport {
    let table = c.to_table();
    let n = c.space.len();
    let mut violations = Vec::new();
    let zero = Rational::zero();
    let one = Rational::one();
    if table[0] != zero {
        violations.push(CapacityViolation::EmptySetNotZero {
            value: table[0].clone(),
        });
    }
    let full = table.len() - 1;
    if table[full] != one {
        violations.push(CapacityViolation::FullSetNotOne {
            value: table[full].clone(),
        });
    }
    for (bits, v) in table.iter().enumerate() {
        if (bits != 0 && bits != full) && (*v < zero || *v > one) {
            violations.push(CapacityViolation::OutOfRange {
                set: EventSet::from_bits(n, bits as u32),
                value: v.clone(),
            });
        }
    }
    for (bits, v) in table.iter().enumerate() {
        for e in 0..n {
            if bits & (1 << e) == 0 {
                let sup = bits | (1 << e);
                if *v > table[sup] {
                    violations.push(CapacityViolation::NotMonotone {
                        subset: EventSet::from_bits(n, bits as u32),
                        superset: EventSet::from_bits(n, sup as u32),
                        lower: v.clone(),
                        upper: table[sup].clone(),
                    });
                }
            }
        }
    }
    CapacityReport { violations }
}

/// Signed Möbius masses of a capacity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MobiusTransform {
    space: EventSpace,
    /// Non-zero masses, sorted by bitmask.
    pub masses: Vec<(EventSet, Rational)>,
    /// Sets carrying a negative mass.
    pub negative: Vec<EventSet>,
}

impl MobiusTransform {
    /// Non-negative transform of a normalized capacity, i.e. a belief
    /// function.
    pub fn is_belief_function(&self) -> bool {
        self.negative.is_empty()
    }

    pub fn to_mass_assignment(&self) -> Option<MassAssignment> {
        if !self.is_belief_function() {
            return None;
        }
        MassAssignment::new(self.space.clone(), self.masses.clone()).ok()
    }

    /// Rebuilds `Π(A) = Σ_{B ⊆ A} m(B)` from the signed masses.
    pub fn resynthesize(&self) -> Vec<Rational> {
        let n = self.space.len();
        let mut t = vec![Rational::zero(); 1 << n];
        for (s, w) in &self.masses {
            t[s.bits() as usize] = w.clone();
        }
        for bit in 0..n {
            for mask in 0..t.len() {
                if mask & (1 << bit) != 0 {
                    let lower = t[mask ^ (1 << bit)].clone();
                    t[mask] += lower;
                }
            }
        }
        t
    }
}

/// `m(A) = Σ_{B ⊆ A} (-1)^{|A∖B|} Π(B)`, computed by the fast inverse
/// subset-sum transform.
pub fn mobius_inversion(c: &Capacity) -> MobiusTransform {
    let n = c.space.len();
    let mut t = c.to_table();
    for bit in 0..n {
        for mask in 0..t.len() {
            if mask & (1 << bit) != 0 {
                let lower = t[mask ^ (1 << bit)].clone();
                t[mask] -= lower;
            }
        }
    }
    let zero = Rational::zero();
    let masses: Vec<(EventSet, Rational)> = t
        .into_iter()
        .enumerate()
        .filter(|(_, w)| !w.is_zero())
        .map(|(bits, w)| (EventSet::from_bits(n, bits as u32), w))
        .collect();
    let negative = masses
        .iter()
        .filter(|(_, w)| *w < zero)
        .map(|(s, _)| *s)
        .collect();
    MobiusTransform {
        space: c.space.clone(),
        masses,
        negative,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rational::rat;
    use proptest::prelude::*;

    fn ex2() -> (EventSpace, Capacity) {
        let m = fixtures::example2_masses();
        (m.space().clone(), Capacity::from_masses(m))
    }

    fn big_e(space: &EventSpace, k: usize) -> EventSet {
        fixtures::example2_block(space, k)
    }

    #[test]
    fn example2_lower_probabilities() {
        let m = fixtures::example2_masses();
        let s = m.space().clone();
        let e = |k| big_e(&s, k);
        assert_eq!(lower_probability(&m, e(1)).unwrap(), rat(1, 8));
        assert_eq!(lower_probability(&m, e(2)).unwrap(), rat(1, 8));
        assert_eq!(lower_probability(&m, e(3)).unwrap(), rat(1, 16));
        assert_eq!(lower_probability(&m, e(4)).unwrap(), rat(1, 16));
        assert_eq!(lower_probability(&m, e(1) | e(3)).unwrap(), rat(3, 16));
        assert_eq!(lower_probability(&m, e(1) | e(4)).unwrap(), rat(3, 16));
        assert_eq!(lower_probability(&m, s.full()).unwrap(), rat(1, 1));
        // 1/8 + 1/8 + 1/4
        assert_eq!(lower_probability(&m, e(1) | e(2)).unwrap(), rat(1, 2));
    }

    #[test]
    fn lower_probability_rejects_foreign_sets() {
        let m = fixtures::example2_masses();
        assert_eq!(
            lower_probability(&m, EventSet::full(3)),
            Err(Error::SpaceMismatch)
        );
    }

    #[test]
    fn mass_assignment_invariants() {
        let s = EventSpace::numbered(2).unwrap();
        let a = s.singleton(0);
        assert!(MassAssignment::new(s.clone(), vec![(a, rat(1, 2))]).is_err());
        assert!(MassAssignment::new(s.clone(), vec![(s.empty(), rat(1, 1))]).is_err());
        assert!(MassAssignment::new(
            s.clone(),
            vec![(a, rat(1, 2)), (a, rat(1, 2))]
        )
        .is_err());
        assert!(MassAssignment::new(
            s.clone(),
            vec![(a, rat(3, 2)), (s.full(), rat(-1, 2))]
        )
        .is_err());
    }

    #[test]
    fn vacuous_and_additive_capacities() {
        let s = EventSpace::numbered(3).unwrap();
        let vac = Capacity::from_masses(MassAssignment::new(s.clone(), vec![(s.full(), rat(1, 1))]).unwrap());
        for a in s.subsets() {
            let expect = if a.is_full() { rat(1, 1) } else { rat(0, 1) };
            assert_eq!(vac.value(a), expect);
        }
        let p = ProbabilityVector::new(s.clone(), vec![rat(1, 2), rat(1, 3), rat(1, 6)]).unwrap();
        let add = Capacity::from_masses(MassAssignment::from_probability(&p));
        for a in s.subsets() {
            assert_eq!(add.value(a), p.prob(a));
        }
    }

    #[test]
    fn example2_table_and_round_trip() {
        let (s, c) = ex2();
        assert_eq!(c.value(big_e(&s, 4)), rat(1, 16));
        let table = c.to_table();
        for a in s.subsets() {
            assert_eq!(table[a.bits() as usize], c.value(a));
        }
        let back = mobius_inversion(&c.materialize());
        assert!(back.is_belief_function());
        assert_eq!(back.to_mass_assignment().unwrap(), fixtures::example2_masses());
        assert_eq!(
            back.masses
                .iter()
                .find(|(set, _)| *set == big_e(&s, 1) | big_e(&s, 2))
                .map(|(_, w)| w.clone()),
            Some(rat(1, 4))
        );
    }

    #[test]
    fn mobius_of_measure_is_pointwise() {
        let s = EventSpace::numbered(3).unwrap();
        let p = ProbabilityVector::new(s.clone(), vec![rat(1, 5), rat(0, 1), rat(4, 5)]).unwrap();
        let t = mobius_inversion(&Capacity::additive(p));
        assert_eq!(
            t.masses,
            vec![(s.singleton(0), rat(1, 5)), (s.singleton(2), rat(4, 5))]
        );
    }

    #[test]
    fn mobius_of_envelope_resynthesizes() {
        // min-envelope of two distinct probabilities on three events
        let s = EventSpace::numbered(3).unwrap();
        let p = ProbabilityVector::new(s.clone(), vec![rat(1, 2), rat(1, 2), rat(0, 1)]).unwrap();
        let q = ProbabilityVector::new(s.clone(), vec![rat(0, 1), rat(1, 2), rat(1, 2)]).unwrap();
        let c = min_envelope(&[p, q]).unwrap();
        let t = mobius_inversion(&c);
        assert_eq!(t.resynthesize(), c.to_table());
        assert_eq!(t.is_belief_function(), t.to_mass_assignment().is_some());
    }

    #[test]
    fn signed_masses_are_flagged() {
        // Π = min of (1/2,1/2,0,0) and (0,0,1/2,1/2) restricted to pairs
        // gives a capacity that is not 2-monotone.
        let s = EventSpace::numbered(4).unwrap();
        let p = ProbabilityVector::new(s.clone(), vec![rat(1, 2), rat(1, 2), rat(0, 1), rat(0, 1)]).unwrap();
        let q = ProbabilityVector::new(s.clone(), vec![rat(0, 1), rat(1, 2), rat(1, 2), rat(0, 1)]).unwrap();
        let r = ProbabilityVector::new(s.clone(), vec![rat(1, 2), rat(0, 1), rat(0, 1), rat(1, 2)]).unwrap();
        let c = min_envelope(&[p, q, r]).unwrap();
        let t = mobius_inversion(&c);
        assert!(!t.is_belief_function());
        assert!(t.to_mass_assignment().is_none());
        assert_eq!(t.resynthesize(), c.to_table());
    }

    #[test]
    fn validation_reports() {
        let (_, c) = ex2();
        assert!(validate_capacity(&c).is_valid());

        let s = EventSpace::numbered(2).unwrap();
        let bad_norm = Capacity::from_table(
            s.clone(),
            vec![rat(0, 1), rat(0, 1), rat(0, 1), rat(9, 10)],
        )
        .unwrap();
        assert_eq!(
            validate_capacity(&bad_norm).violations,
            vec![CapacityViolation::FullSetNotOne { value: rat(9, 10) }]
        );

        let s3 = EventSpace::numbered(3).unwrap();
        let mut table = vec![rat(0, 1); 8];
        table[0b001] = rat(1, 2);
        table[0b011] = rat(1, 4);
        table[0b101] = rat(1, 2);
        table[0b111] = rat(1, 1);
        table[0b110] = rat(1, 2);
        let bad_mono = Capacity::from_table(s3.clone(), table).unwrap();
        let v = validate_capacity(&bad_mono).violations;
        assert_eq!(
            v,
            vec![CapacityViolation::NotMonotone {
                subset: s3.singleton(0),
                superset: s3.set(&["e1", "e2"]).unwrap(),
                lower: rat(1, 2),
                upper: rat(1, 4),
            }]
        );
        assert!(v[0].describe(&s3).contains("{e1,e2}"));
    }

    #[test]
    fn table_size_checked() {
        let s = EventSpace::numbered(2).unwrap();
        assert_eq!(
            Capacity::from_table(s, vec![rat(0, 1); 3]).unwrap_err(),
            Error::TableSize { expected: 4, got: 3 }
        );
    }

    #[test]
    fn example2_conditionals() {
        let (s, c) = ex2();
        let e = |k| big_e(&s, k);
        let cond = |a: EventSet, b: EventSet| c.condition(b).unwrap().value(a);
        assert_eq!(cond(e(1), e(1) | e(2)), rat(1, 4));
        assert_eq!(cond(e(4), e(3) | e(4)), rat(1, 8));
        assert_eq!(cond(e(1), e(1) | e(3)), rat(2, 9));
        assert_eq!(cond(e(4), e(2) | e(4)), rat(1, 7));
    }

    #[test]
    fn conditioning_on_sure_event_is_identity() {
        let (s, c) = ex2();
        let given = c.condition(s.full()).unwrap();
        assert_eq!(given.to_table(), c.to_table());
    }

    #[test]
    fn conditioning_on_implausible_event_fails() {
        let s = EventSpace::numbered(2).unwrap();
        let c = Capacity::additive(ProbabilityVector::degenerate(&s, 0));
        assert!(matches!(
            c.condition(s.singleton(1)),
            Err(Error::ConditioningOnImplausibleEvent { .. })
        ));
    }

    #[test]
    fn conditional_is_a_capacity_on_the_event() {
        let (s, c) = ex2();
        let b = big_e(&s, 2) | big_e(&s, 3);
        let cb = c.condition(b).unwrap();
        assert!(validate_capacity(&cb).is_valid());
        assert_eq!(cb.value(b), rat(1, 1));
        for i in (!b).iter() {
            assert_eq!(cb.value(s.singleton(i)), rat(0, 1));
        }
    }

    #[test]
    fn example1_envelope_values() {
        let fx = fixtures::Example1::new(fixtures::default_epsilon()).unwrap();
        let c = &fx.capacity;
        let s = c.space();
        assert_eq!(c.value(s.set(&["HR", "TR"]).unwrap()), rat(1, 3));
        assert_eq!(c.value(s.set(&["HB", "TY"]).unwrap()), rat(1, 3));
        // min(1/6 + 0, 1/6 + 1/3)
        assert_eq!(c.value(s.set(&["HR", "TY"]).unwrap()), rat(1, 6));
        let single = min_envelope(&fx.extreme_products[..1]).unwrap();
        for a in s.subsets() {
            assert_eq!(single.value(a), fx.extreme_products[0].prob(a));
        }
        assert!(min_envelope(&[]).is_err());
    }

    fn arb_masses(n: usize) -> impl Strategy<Value = MassAssignment> {
        prop::collection::btree_map(1u32..(1 << n), 1i64..20, 1..6).prop_map(move |raw| {
            let space = EventSpace::numbered(n).unwrap();
            let total: i64 = raw.values().sum();
            let entries = raw
                .into_iter()
                .map(|(bits, w)| (EventSet::from_bits(n, bits), rat(w, total)))
                .collect();
            MassAssignment::new(space, entries).unwrap()
        })
    }

    fn arb_probability(n: usize) -> impl Strategy<Value = ProbabilityVector> {
        prop::collection::vec(0i64..10, n)
            .prop_filter("non-zero", |w| w.iter().any(|x| *x > 0))
            .prop_map(move |w| {
                let total: i64 = w.iter().sum();
                ProbabilityVector::new(
                    EventSpace::numbered(n).unwrap(),
                    w.iter().map(|x| rat(*x, total)).collect(),
                )
                .unwrap()
            })
    }

    proptest! {
        #[test]
        fn masses_round_trip_exactly(m in arb_masses(4)) {
            let c = capacity_from_masses(&m);
            prop_assert_eq!(mobius_inversion(&c).to_mass_assignment(), Some(m));
        }

        #[test]
        fn belief_is_monotone(m in arb_masses(4), a in 0u32..16, b in 0u32..16) {
            let a = EventSet::from_bits(4, a);
            let ab = a | EventSet::from_bits(4, b);
            prop_assert!(lower_probability(&m, a).unwrap() <= lower_probability(&m, ab).unwrap());
            prop_assert!(validate_capacity(&capacity_from_masses(&m)).is_valid());
        }

        #[test]
        fn conditioning_contains_given(m in arb_masses(4), b in 1u32..16, a in 0u32..16) {
            let c = capacity_from_masses(&m);
            let b = EventSet::from_bits(4, b);
            if let Ok(cb) = c.condition(b) {
                prop_assert_eq!(cb.value(b | EventSet::from_bits(4, a)), rat(1, 1));
            }
        }

        #[test]
        fn additive_conditioning_is_bayes(p in arb_probability(4), b in 1u32..16) {
            let b = EventSet::from_bits(4, b);
            let c = Capacity::additive(p.clone());
            let pb = p.prob(b);
            if pb > Rational::zero() {
                let cb = c.condition(b).unwrap();
                for a in p.space().subsets() {
                    prop_assert_eq!(cb.value(a), p.prob(a & b) / &pb);
                }
            }
        }

        #[test]
        fn envelope_is_valid(ps in prop::collection::vec(arb_probability(3), 1..4)) {
            prop_assert!(validate_capacity(&min_envelope(&ps).unwrap()).is_valid());
        }
    }
}
