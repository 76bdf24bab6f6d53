//! Finite unital rings as dense operation tables.
//!
//! A ring here is an indexed carrier `0..order` with materialized addition
//! and multiplication tables, a precomputed additive-inverse table, and a
//! per-element display string. Rings are immutable after construction and
//! safe to share across threads.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Element of a finite ring, as an index into its carrier.
pub type Elem = u32;

/// Hard ceiling on carrier size; constructions above this fail fast.
pub const DEFAULT_MAX_ORDER: usize = 65_536;

/// Exhaustive ternary-axiom validation is cubic; above this order the
/// validator switches to seeded sampling.
pub const EXHAUSTIVE_VALIDATION_LIMIT: usize = 512;

const SAMPLED_TRIPLES: usize = 10_000;
const SAMPLE_SEED: u64 = 0xF1E1D;

#[derive(Debug, Error)]
pub enum RingError {
    #[error("table shape mismatch: expected {expected} entries, got {got}")]
    TableShape { expected: usize, got: usize },
    #[error("table entry {value} out of range for order {order}")]
    EntryOutOfRange { value: Elem, order: usize },
    #[error("distinguished element {value} out of range for order {order}")]
    ConstantOutOfRange { value: Elem, order: usize },
    #[error("order must be at least 1, got {0}")]
    EmptyCarrier(usize),
    #[error("element {0} has no additive inverse in the given table")]
    MissingAdditiveInverse(Elem),
    #[error("render table must name each element distinctly ({0} collides)")]
    RenderCollision(String),
    #[error("ring axioms violated: {0}")]
    AxiomsViolated(ValidationReport),
    #[error("homomorphism map has {got} entries, source has order {expected}")]
    HomLength { expected: usize, got: usize },
}

/// A finite unital associative ring with materialized operation tables.
pub struct FiniteRing {
    label: String,
    coord_doc: String,
    order: usize,
    zero: Elem,
    one: Elem,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    render: Vec<String>,
    pub(crate) caches: crate::structure::Caches,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("label", &self.label)
            .field("order", &self.order)
            .field("zero", &self.zero)
            .field("one", &self.one)
            .finish_non_exhaustive()
    }
}

impl FiniteRing {
    /// Builds a ring from raw tables, checking shape, index validity and
    /// render distinctness, and deriving the additive-inverse table.
    ///
    /// Axiom validation is separate (`validate_axioms`), so defective tables
    /// (e.g. `one == zero`, or a corrupted product entry) are representable
    /// and reportable.
    pub fn assemble(
        label: impl Into<String>,
        coord_doc: impl Into<String>,
        order: usize,
        zero: Elem,
        one: Elem,
        add: Vec<Elem>,
        mul: Vec<Elem>,
        render: Vec<String>,
    ) -> Result<FiniteRing, RingError> {
        if order == 0 {
            return Err(RingError::EmptyCarrier(order));
        }
        let expected = order * order;
        for table in [&add, &mul] {
            if table.len() != expected {
                return Err(RingError::TableShape {
                    expected,
                    got: table.len(),
                });
            }
            if let Some(&bad) = table.iter().find(|&&v| (v as usize) >= order) {
                return Err(RingError::EntryOutOfRange { value: bad, order });
            }
        }
        for value in [zero, one] {
            if value as usize >= order {
                return Err(RingError::ConstantOutOfRange { value, order });
            }
        }
        if render.len() != order {
            return Err(RingError::TableShape {
                expected: order,
                got: render.len(),
            });
        }
        let mut seen = std::collections::HashSet::with_capacity(order);
        for name in &render {
            if !seen.insert(name.as_str()) {
                return Err(RingError::RenderCollision(name.clone()));
            }
        }
        let mut neg = vec![0 as Elem; order];
        for a in 0..order {
            let inv = (0..order)
                .find(|&b| add[a * order + b] == zero)
                .ok_or(RingError::MissingAdditiveInverse(a as Elem))?;
            neg[a] = inv as Elem;
        }
        Ok(FiniteRing {
            label: label.into(),
            coord_doc: coord_doc.into(),
            order,
            zero,
            one,
            add,
            mul,
            neg,
            render,
            caches: crate::structure::Caches::default(),
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Describes the element-index enumeration this constructor used.
    pub fn coord_doc(&self) -> &str {
        &self.coord_doc
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + 'static {
        (0..self.order as Elem).into_iter()
    }

    #[inline]
    fn at(&self, a: Elem, b: Elem) -> usize {
        debug_assert!((a as usize) < self.order && (b as usize) < self.order);
        a as usize * self.order + b as usize
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[self.at(a, b)]
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[self.at(a, b)]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    /// `a^k` under ring multiplication, with `pow(a, 0) = one`.
    pub fn pow(&self, a: Elem, k: u32) -> Elem {
        let mut acc = self.one;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn render(&self, a: Elem) -> &str {
        &self.render[a as usize]
    }

    pub fn renders(&self) -> &[String] {
        &self.render
    }

    /// Raw row-major tables, for persistence.
    pub fn add_table(&self) -> &[Elem] {
        &self.add
    }

    pub fn mul_table(&self) -> &[Elem] {
        &self.mul
    }

    pub fn neg_table(&self) -> &[Elem] {
        &self.neg
    }

    /// True when both rings have identical order, constants and tables
    /// (element-for-element equality, ignoring labels and renders).
    pub fn same_tables(&self, other: &FiniteRing) -> bool {
        self.order == other.order
            && self.zero == other.zero
            && self.one == other.one
            && self.add == other.add
            && self.mul == other.mul
    }

    /// Checks every ring axiom on the tables.
    ///
    /// Unary and binary axioms are always exhaustive. Ternary axioms
    /// (associativity, distributivity) are exhaustive up to order
    /// `EXHAUSTIVE_VALIDATION_LIMIT` and seeded-sampled beyond, with the mode
    /// flagged in the report. Never aborts; violations are data.
    pub fn validate_axioms(&self) -> ValidationReport {
        let n = self.order as Elem;
        let mut violations: Vec<AxiomViolation> = Vec::new();
        let record = |axiom: Axiom, witness: [Elem; 3], violations: &mut Vec<AxiomViolation>| {
            if !violations.iter().any(|v| v.axiom == axiom) {
                violations.push(AxiomViolation { axiom, witness });
            }
        };

        if self.one == self.zero {
            record(Axiom::OneNotZero, [self.one, self.zero, 0], &mut violations);
        }
        for a in 0..n {
            if self.add(self.zero, a) != a || self.add(a, self.zero) != a {
                record(Axiom::AddIdentity, [a, self.zero, 0], &mut violations);
                break;
            }
        }
        for a in 0..n {
            if self.add(a, self.neg(a)) != self.zero {
                record(Axiom::AddInverse, [a, self.neg(a), 0], &mut violations);
                break;
            }
        }
        'comm: for a in 0..n {
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    record(Axiom::AddCommutative, [a, b, 0], &mut violations);
                    break 'comm;
                }
            }
        }
        for a in 0..n {
            if self.mul(self.one, a) != a || self.mul(a, self.one) != a {
                record(Axiom::OneIdentity, [a, self.one, 0], &mut violations);
                break;
            }
        }
        for a in 0..n {
            if self.mul(self.zero, a) != self.zero || self.mul(a, self.zero) != self.zero {
                record(Axiom::ZeroAnnihilates, [a, self.zero, 0], &mut violations);
                break;
            }
        }

        let check_triple = |a: Elem, b: Elem, c: Elem, violations: &mut Vec<AxiomViolation>| {
            if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                record(Axiom::AddAssociative, [a, b, c], violations);
            }
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                record(Axiom::MulAssociative, [a, b, c], violations);
            }
            if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                record(Axiom::LeftDistributive, [a, b, c], violations);
            }
            if self.mul(self.add(a, b), c) != self.add(self.mul(a, c), self.mul(b, c)) {
                record(Axiom::RightDistributive, [a, b, c], violations);
            }
        };

        let mode = if self.order <= EXHAUSTIVE_VALIDATION_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check_triple(a, b, c, &mut violations);
                    }
                }
            }
            ValidationMode::Exhaustive
        } else {
            let mut state = SAMPLE_SEED;
            for _ in 0..SAMPLED_TRIPLES {
                let a = (splitmix64(&mut state) % self.order as u64) as Elem;
                let b = (splitmix64(&mut state) % self.order as u64) as Elem;
                let c = (splitmix64(&mut state) % self.order as u64) as Elem;
                check_triple(a, b, c, &mut violations);
            }
            ValidationMode::Sampled {
                triples: SAMPLED_TRIPLES,
                seed: SAMPLE_SEED,
            }
        };

        ValidationReport { mode, violations }
    }
}

/// SplitMix64 step; deterministic across platforms.
fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    OneNotZero,
    AddIdentity,
    AddInverse,
    AddCommutative,
    AddAssociative,
    OneIdentity,
    ZeroAnnihilates,
    MulAssociative,
    LeftDistributive,
    RightDistributive,
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub witness: [Elem; 3],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ValidationMode {
    Exhaustive,
    Sampled { triples: usize, seed: u64 },
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub mode: ValidationMode,
    pub violations: Vec<AxiomViolation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok ({:?})", self.mode);
        }
        let list: Vec<String> = self
            .violations
            .iter()
            .map(|v| format!("{:?} at {:?}", v.axiom, v.witness))
            .collect();
        write!(f, "{}", list.join("; "))
    }
}

/// An ordered, duplicate-free set of element indices of one ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementSubset {
    ambient: usize,
    members: Vec<Elem>,
    bits: Vec<bool>,
}

impl ElementSubset {
    pub fn from_members(ambient: usize, mut members: Vec<Elem>) -> ElementSubset {
        members.sort_unstable();
        members.dedup();
        debug_assert!(members.iter().all(|&m| (m as usize) < ambient));
        let mut bits = vec![false; ambient];
        for &m in &members {
            bits[m as usize] = true;
        }
        ElementSubset {
            ambient,
            members,
            bits,
        }
    }

    pub fn from_bits(bits: Vec<bool>) -> ElementSubset {
        let members = bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i as Elem)
            .collect();
        ElementSubset {
            ambient: bits.len(),
            members,
            bits,
        }
    }

    pub fn empty(ambient: usize) -> ElementSubset {
        ElementSubset {
            ambient,
            members: Vec::new(),
            bits: vec![false; ambient],
        }
    }

    pub fn ambient_order(&self) -> usize {
        self.ambient
    }

    #[inline]
    pub fn contains(&self, a: Elem) -> bool {
        self.bits[a as usize]
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.members.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_subset_of(&self, other: &ElementSubset) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    /// Sorted indices plus rendered element strings, for reports.
    pub fn describe(&self, ring: &FiniteRing) -> Vec<(Elem, String)> {
        self.members
            .iter()
            .map(|&m| (m, ring.render(m).to_string()))
            .collect()
    }
}

impl Serialize for ElementSubset {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.members.serialize(serializer)
    }
}

/// Which homomorphism law failed, with the offending operands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HomLaw {
    PreservesZero,
    PreservesOne,
    Additive,
    Multiplicative,
}

#[derive(Debug, Clone, Serialize)]
pub struct HomViolation {
    pub law: HomLaw,
    pub witness: (Elem, Elem),
}

#[derive(Debug, Clone, Serialize)]
pub struct HomReport {
    pub violation: Option<HomViolation>,
    pub injective: bool,
    pub surjective: bool,
    pub kernel: ElementSubset,
    pub kernel_in_radical: bool,
}

impl HomReport {
    pub fn is_ok(&self) -> bool {
        self.violation.is_none()
    }
}

/// An explicit element map between two rings.
#[derive(Clone)]
pub struct RingHom {
    pub source: Arc<FiniteRing>,
    pub target: Arc<FiniteRing>,
    map: Vec<Elem>,
}

impl RingHom {
    pub fn new(
        source: Arc<FiniteRing>,
        target: Arc<FiniteRing>,
        map: Vec<Elem>,
    ) -> Result<RingHom, RingError> {
        if map.len() != source.order() {
            return Err(RingError::HomLength {
                expected: source.order(),
                got: map.len(),
            });
        }
        if let Some(&bad) = map.iter().find(|&&v| (v as usize) >= target.order()) {
            return Err(RingError::EntryOutOfRange {
                value: bad,
                order: target.order(),
            });
        }
        Ok(RingHom {
            source,
            target,
            map,
        })
    }

    #[inline]
    pub fn apply(&self, a: Elem) -> Elem {
        self.map[a as usize]
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    /// Exhaustively checks the four homomorphism laws; returns the first
    /// violation. Touches nothing beyond the two operation tables.
    pub fn check_laws(&self) -> Option<HomViolation> {
        let src = &*self.source;
        let tgt = &*self.target;

        if self.apply(src.zero()) != tgt.zero() {
            return Some(HomViolation {
                law: HomLaw::PreservesZero,
                witness: (src.zero(), src.zero()),
            });
        }
        if self.apply(src.one()) != tgt.one() {
            return Some(HomViolation {
                law: HomLaw::PreservesOne,
                witness: (src.one(), src.one()),
            });
        }
        for a in src.elements() {
            for b in src.elements() {
                if self.apply(src.add(a, b)) != tgt.add(self.apply(a), self.apply(b)) {
                    return Some(HomViolation {
                        law: HomLaw::Additive,
                        witness: (a, b),
                    });
                }
                if self.apply(src.mul(a, b)) != tgt.mul(self.apply(a), self.apply(b)) {
                    return Some(HomViolation {
                        law: HomLaw::Multiplicative,
                        witness: (a, b),
                    });
                }
            }
        }
        None
    }

    /// Checks all four homomorphism laws exhaustively and reports
    /// injectivity, surjectivity and whether the kernel sits inside the
    /// Jacobson radical of the source.
    pub fn verify(&self) -> HomReport {
        let src = &*self.source;
        let tgt = &*self.target;
        let violation = self.check_laws();

        let mut hit = vec![false; tgt.order()];
        for &v in &self.map {
            hit[v as usize] = true;
        }
        let surjective = hit.iter().all(|&h| h);
        let mut seen = vec![false; tgt.order()];
        let mut injective = true;
        for &v in &self.map {
            if seen[v as usize] {
                injective = false;
                break;
            }
            seen[v as usize] = true;
        }

        let kernel = ElementSubset::from_members(
            src.order(),
            src.elements().filter(|&a| self.apply(a) == tgt.zero()).collect(),
        );
        let kernel_in_radical = kernel.is_subset_of(crate::structure::jacobson_radical(src));

        HomReport {
            violation,
            injective,
            surjective,
            kernel,
            kernel_in_radical,
        }
    }

    /// True iff the map is a bijective homomorphism.
    pub fn is_isomorphism(&self) -> bool {
        let report = self.verify();
        report.is_ok() && report.injective && report.surjective
    }
}

impl fmt::Debug for RingHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "RingHom({} -> {}, {} entries)",
            self.source.label(),
            self.target.label(),
            self.map.len()
        )
    }
}

/// Cache-file payload shared by the JSON and binary persistence formats.
#[derive(Debug, Serialize, Deserialize)]
pub struct RingTables {
    pub version: u32,
    pub label: String,
    pub order: usize,
    pub zero: Elem,
    pub one: Elem,
    pub add: Vec<Vec<Elem>>,
    pub mul: Vec<Vec<Elem>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::zmod;

    fn z4_tables() -> (Vec<Elem>, Vec<Elem>) {
        let mut add = vec![0; 16];
        let mut mul = vec![0; 16];
        for a in 0..4u32 {
            for b in 0..4u32 {
                add[(a * 4 + b) as usize] = (a + b) % 4;
                mul[(a * 4 + b) as usize] = (a * b) % 4;
            }
        }
        (add, mul)
    }

    fn renders(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    #[test]
    fn zmod4_validates_clean() {
        let r = zmod(4).unwrap();
        let report = r.validate_axioms();
        assert!(report.is_ok(), "unexpected violations: {report}");
        assert_eq!(report.mode, ValidationMode::Exhaustive);
    }

    #[test]
    fn corrupted_product_entry_is_detected() {
        let (add, mut mul) = z4_tables();
        // 2*2 should be 0 mod 4
        mul[2 * 4 + 2] = 1;
        let r = FiniteRing::assemble("Z(4)/corrupt", "", 4, 0, 1, add, mul, renders(4)).unwrap();
        let report = r.validate_axioms();
        assert!(!report.is_ok());
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(
                v.axiom,
                Axiom::MulAssociative | Axiom::LeftDistributive | Axiom::RightDistributive
            )));
    }

    #[test]
    fn one_equal_zero_is_reported() {
        // order-1 tables: everything collapses, one == zero
        let r = FiniteRing::assemble("triv", "", 1, 0, 0, vec![0], vec![0], renders(1)).unwrap();
        let report = r.validate_axioms();
        assert!(report
            .violations
            .iter()
            .any(|v| v.axiom == Axiom::OneNotZero));
    }

    #[test]
    fn arithmetic_lookups() {
        let r = zmod(4).unwrap();
        assert_eq!(r.mul(3, 3), 1);
        assert_eq!(r.pow(2, 2), 0);
        assert_eq!(r.pow(3, 0), r.one());
        for a in r.elements() {
            assert_eq!(r.add(a, r.neg(a)), r.zero());
        }
    }

    #[test]
    fn identity_hom_on_z4() {
        let r = zmod(4).unwrap();
        let h = RingHom::new(r.clone(), r.clone(), (0..4).collect()).unwrap();
        let report = h.verify();
        assert!(report.is_ok());
        assert!(report.injective && report.surjective);
        assert!(h.is_isomorphism());
    }

    #[test]
    fn reduction_z4_to_z2() {
        let z4 = zmod(4).unwrap();
        let z2 = zmod(2).unwrap();
        let h = RingHom::new(z4.clone(), z2.clone(), vec![0, 1, 0, 1]).unwrap();
        let report = h.verify();
        assert!(report.is_ok());
        assert!(report.surjective);
        assert!(!report.injective);
        assert!(!h.is_isomorphism());
        assert_eq!(report.kernel.members(), &[0, 2]);
        // Ker = {0,2} = J(Z4)
        assert!(report.kernel_in_radical);
    }

    #[test]
    fn unit_map_violation() {
        let z2 = zmod(2).unwrap();
        let z4 = zmod(4).unwrap();
        let h = RingHom::new(z2, z4, vec![0, 2]).unwrap();
        let report = h.verify();
        assert_eq!(report.violation.unwrap().law, HomLaw::PreservesOne);
    }

    #[test]
    fn hom_length_mismatch_rejected() {
        let z2 = zmod(2).unwrap();
        let z4 = zmod(4).unwrap();
        assert!(RingHom::new(z2, z4, vec![0, 1, 2]).is_err());
    }

    #[test]
    fn render_collision_rejected() {
        let (add, mul) = z4_tables();
        let bad = vec!["a".into(), "a".into(), "c".into(), "d".into()];
        assert!(matches!(
            FiniteRing::assemble("bad", "", 4, 0, 1, add, mul, bad),
            Err(RingError::RenderCollision(_))
        ));
    }

    #[test]
    fn subset_roundtrip() {
        let s = ElementSubset::from_members(6, vec![4, 2, 2, 0]);
        assert_eq!(s.members(), &[0, 2, 4]);
        assert!(s.contains(2) && !s.contains(1));
        assert_eq!(s.len(), 3);
    }
}
