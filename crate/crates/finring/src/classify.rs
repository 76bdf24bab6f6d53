//! Element-wise and ring-wise classification across the clean-decomposition
//! taxonomy, with replayable witnesses.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::ring::{Elem, FiniteRing};
use crate::structure;

/// Ring properties the classifier knows about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    Clean,
    UniquelyClean,
    StronglyClean,
    StronglyUniquelyClean,
    NilClean,
    StronglyNilClean,
    StronglyJClean,
    Exchange,
    Uuc,
    Cuc,
    Unituc,
    Boolean,
    Reduced,
    Abelian,
    Local,
    DedekindFinite,
}

pub const PROPERTY_COUNT: usize = 16;

impl Property {
    pub const ALL: [Property; PROPERTY_COUNT] = [
        Property::Clean,
        Property::UniquelyClean,
        Property::StronglyClean,
        Property::StronglyUniquelyClean,
        Property::NilClean,
        Property::StronglyNilClean,
        Property::StronglyJClean,
        Property::Exchange,
        Property::Uuc,
        Property::Cuc,
        Property::Unituc,
        Property::Boolean,
        Property::Reduced,
        Property::Abelian,
        Property::Local,
        Property::DedekindFinite,
    ];

    pub(crate) fn index(self) -> usize {
        Property::ALL.iter().position(|&p| p == self).unwrap()
    }

    pub fn name(self) -> &'static str {
        match self {
            Property::Clean => "clean",
            Property::UniquelyClean => "uniquely-clean",
            Property::StronglyClean => "strongly-clean",
            Property::StronglyUniquelyClean => "strongly-uniquely-clean",
            Property::NilClean => "nil-clean",
            Property::StronglyNilClean => "strongly-nil-clean",
            Property::StronglyJClean => "strongly-j-clean",
            Property::Exchange => "exchange",
            Property::Uuc => "uuc",
            Property::Cuc => "cuc",
            Property::Unituc => "unituc",
            Property::Boolean => "boolean",
            Property::Reduced => "reduced",
            Property::Abelian => "abelian",
            Property::Local => "local",
            Property::DedekindFinite => "dedekind-finite",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = String;

    fn from_str(s: &str) -> Result<Property, String> {
        Property::ALL
            .iter()
            .copied()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown property '{s}'"))
    }
}

/// Failure evidence, re-checkable by table arithmetic alone.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// an element failing a pointwise law (boolean, reduced)
    Element { element: Elem, display: String },
    /// element with no decomposition of the required shape
    NoDecomposition { element: Elem, display: String },
    /// element with two distinct decompositions `e + u = f + v`
    ExtraPair {
        element: Elem,
        e: Elem,
        u: Elem,
        f: Elem,
        v: Elem,
        display: String,
    },
    /// clean pairs whose idempotents are not conjugate
    NonConjugatePairs {
        element: Elem,
        e: Elem,
        u: Elem,
        f: Elem,
        v: Elem,
        display: String,
    },
    /// idempotent and a partner it fails to commute with
    NonCommutingPair { e: Elem, x: Elem, display: String },
    /// two non-units whose sum is a unit
    NonUnitSum { a: Elem, b: Elem, display: String },
    /// `ab = 1` without `ba = 1`
    OneSidedInverse { a: Elem, b: Elem, display: String },
    /// suite-level free-form context
    Note { text: String },
}

#[derive(Debug, Clone, Serialize)]
pub struct PropertyVerdict {
    pub property: Property,
    pub holds: bool,
    pub witness: Option<Witness>,
}

/// One clean decomposition `element = idempotent + unit`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CleanPair {
    pub idempotent: Elem,
    pub unit: Elem,
    pub commutes: bool,
}

/// All clean decompositions of one element, with the idempotents grouped by
/// conjugacy.
#[derive(Debug, Clone, Serialize)]
pub struct DecompositionRecord {
    pub element: Elem,
    pub pairs: Vec<CleanPair>,
    pub conjugacy_partition: Vec<Vec<Elem>>,
}

/// Scans all idempotents and keeps those with `element - e` a unit.
pub fn clean_decompositions(r: &FiniteRing, element: Elem) -> DecompositionRecord {
    let ids = structure::idempotents(r);
    let units = structure::units(r);
    let classes = structure::conjugacy_classes(r);
    let mut pairs = Vec::new();
    let mut partition: Vec<(usize, Vec<Elem>)> = Vec::new();
    for e in ids.iter() {
        let u = r.sub(element, e);
        if !units.contains(u) {
            continue;
        }
        pairs.push(CleanPair {
            idempotent: e,
            unit: u,
            commutes: r.mul(e, u) == r.mul(u, e),
        });
        let class = classes.class_of(e).expect("idempotent without class");
        match partition.iter_mut().find(|(c, _)| *c == class) {
            Some((_, block)) => block.push(e),
            None => partition.push((class, vec![e])),
        }
    }
    DecompositionRecord {
        element,
        pairs,
        conjugacy_partition: partition.into_iter().map(|(_, block)| block).collect(),
    }
}

/// Exactly one idempotent `e` with `a - e` a unit.
pub fn element_is_uniquely_clean(r: &FiniteRing, a: Elem) -> bool {
    clean_decompositions(r, a).pairs.len() == 1
}

/// Clean, and all decomposition idempotents conjugate.
pub fn element_is_unituc(r: &FiniteRing, a: Elem) -> bool {
    let record = clean_decompositions(r, a);
    !record.pairs.is_empty() && record.conjugacy_partition.len() == 1
}

fn pair_idempotents<'a>(
    r: &'a FiniteRing,
    a: Elem,
) -> impl Iterator<Item = Elem> + 'a {
    let units = structure::units(r);
    structure::idempotents(r)
        .iter()
        .filter(move |&e| units.contains(r.sub(a, e)))
}

fn elem_witness(r: &FiniteRing, element: Elem, what: &str) -> Witness {
    Witness::NoDecomposition {
        element,
        display: format!("{} admits no {what}", r.render(element)),
    }
}

fn extra_pair_witness(r: &FiniteRing, a: Elem, e: Elem, f: Elem) -> Witness {
    Witness::ExtraPair {
        element: a,
        e,
        u: r.sub(a, e),
        f,
        v: r.sub(a, f),
        display: format!(
            "{} = {} + {} = {} + {}",
            r.render(a),
            r.render(e),
            r.render(r.sub(a, e)),
            r.render(f),
            r.render(r.sub(a, f)),
        ),
    }
}

fn compute_property(r: &FiniteRing, property: Property) -> PropertyVerdict {
    let holds_with = |witness: Option<Witness>| PropertyVerdict {
        property,
        holds: witness.is_none(),
        witness,
    };
    match property {
        Property::Boolean => holds_with(structure::is_boolean(r).err().map(|a| Witness::Element {
            element: a,
            display: format!("{}^2 != {}", r.render(a), r.render(a)),
        })),
        Property::Reduced => holds_with(structure::is_reduced(r).err().map(|a| Witness::Element {
            element: a,
            display: format!("{} is a nonzero nilpotent", r.render(a)),
        })),
        Property::Abelian => {
            holds_with(structure::is_abelian(r).err().map(|(e, x)| Witness::NonCommutingPair {
                e,
                x,
                display: format!("idempotent {} does not commute with {}", r.render(e), r.render(x)),
            }))
        }
        Property::Local => {
            holds_with(structure::is_local(r).err().map(|(a, b)| Witness::NonUnitSum {
                a,
                b,
                display: format!(
                    "non-units {} + {} is a unit",
                    r.render(a),
                    r.render(b)
                ),
            }))
        }
        Property::DedekindFinite => {
            for a in r.elements() {
                for b in r.elements() {
                    if r.mul(a, b) == r.one() && r.mul(b, a) != r.one() {
                        return holds_with(Some(Witness::OneSidedInverse {
                            a,
                            b,
                            display: format!(
                                "{}·{} = 1 but {}·{} != 1",
                                r.render(a),
                                r.render(b),
                                r.render(b),
                                r.render(a)
                            ),
                        }));
                    }
                }
            }
            holds_with(None)
        }
        Property::Clean => {
            for a in r.elements() {
                if pair_idempotents(r, a).next().is_none() {
                    return holds_with(Some(elem_witness(r, a, "clean decomposition")));
                }
            }
            holds_with(None)
        }
        Property::UniquelyClean => {
            for a in r.elements() {
                let mut it = pair_idempotents(r, a);
                match (it.next(), it.next()) {
                    (None, _) => {
                        return holds_with(Some(elem_witness(r, a, "clean decomposition")))
                    }
                    (Some(e), Some(f)) => {
                        return holds_with(Some(extra_pair_witness(r, a, e, f)))
                    }
                    _ => {}
                }
            }
            holds_with(None)
        }
        Property::StronglyClean => {
            for a in r.elements() {
                let any = pair_idempotents(r, a).any(|e| {
                    let u = r.sub(a, e);
                    r.mul(e, u) == r.mul(u, e)
                });
                if !any {
                    return holds_with(Some(elem_witness(r, a, "commuting clean decomposition")));
                }
            }
            holds_with(None)
        }
        Property::StronglyUniquelyClean => {
            for a in r.elements() {
                let mut commuting = pair_idempotents(r, a).filter(|&e| {
                    let u = r.sub(a, e);
                    r.mul(e, u) == r.mul(u, e)
                });
                match (commuting.next(), commuting.next()) {
                    (None, _) => {
                        return holds_with(Some(elem_witness(
                            r,
                            a,
                            "commuting clean decomposition",
                        )))
                    }
                    (Some(e), Some(f)) => {
                        return holds_with(Some(extra_pair_witness(r, a, e, f)))
                    }
                    _ => {}
                }
            }
            holds_with(None)
        }
        Property::NilClean => {
            let nil = structure::nilpotents(r);
            for a in r.elements() {
                let any = structure::idempotents(r)
                    .iter()
                    .any(|e| nil.contains(r.sub(a, e)));
                if !any {
                    return holds_with(Some(elem_witness(r, a, "nil-clean decomposition")));
                }
            }
            holds_with(None)
        }
        Property::StronglyNilClean => {
            let nil = structure::nilpotents(r);
            for a in r.elements() {
                let any = structure::idempotents(r).iter().any(|e| {
                    let b = r.sub(a, e);
                    nil.contains(b) && r.mul(e, b) == r.mul(b, e)
                });
                if !any {
                    return holds_with(Some(elem_witness(
                        r,
                        a,
                        "commuting nil-clean decomposition",
                    )));
                }
            }
            holds_with(None)
        }
        Property::StronglyJClean => {
            let rad = structure::jacobson_radical(r);
            for a in r.elements() {
                let any = structure::idempotents(r).iter().any(|e| {
                    let j = r.sub(a, e);
                    rad.contains(j) && r.mul(e, j) == r.mul(j, e)
                });
                if !any {
                    return holds_with(Some(elem_witness(
                        r,
                        a,
                        "commuting J-clean decomposition",
                    )));
                }
            }
            holds_with(None)
        }
        Property::Exchange => {
            let ids = structure::idempotents(r);
            let n = r.order();
            let mut left = vec![false; n];
            let mut right = vec![false; n];
            for a in r.elements() {
                left.fill(false);
                right.fill(false);
                let comp = r.sub(r.one(), a);
                for t in r.elements() {
                    left[r.mul(t, a) as usize] = true;
                    right[r.mul(t, comp) as usize] = true;
                }
                let any = ids
                    .iter()
                    .any(|e| left[e as usize] && right[r.sub(r.one(), e) as usize]);
                if !any {
                    return holds_with(Some(elem_witness(r, a, "exchange idempotent")));
                }
            }
            holds_with(None)
        }
        Property::Uuc => {
            for u in structure::units(r).subset.iter() {
                let mut it = pair_idempotents(r, u);
                let first = it.next();
                if let (Some(e), Some(f)) = (first, it.next()) {
                    return holds_with(Some(extra_pair_witness(r, u, e, f)));
                }
            }
            holds_with(None)
        }
        Property::Cuc => {
            for a in r.elements() {
                let mut it = pair_idempotents(r, a);
                let first = it.next();
                if let (Some(e), Some(f)) = (first, it.next()) {
                    return holds_with(Some(extra_pair_witness(r, a, e, f)));
                }
            }
            holds_with(None)
        }
        Property::Unituc => {
            let classes = structure::conjugacy_classes(r);
            for a in r.elements() {
                let mut es = pair_idempotents(r, a);
                let Some(e0) = es.next() else {
                    return holds_with(Some(elem_witness(r, a, "clean decomposition")));
                };
                let class0 = classes.class_of(e0).expect("idempotent without class");
                if let Some(f) = es.find(|&f| classes.class_of(f) != Some(class0)) {
                    return holds_with(Some(Witness::NonConjugatePairs {
                        element: a,
                        e: e0,
                        u: r.sub(a, e0),
                        f,
                        v: r.sub(a, f),
                        display: format!(
                            "{} = {} + {} = {} + {}, idempotents not conjugate",
                            r.render(a),
                            r.render(e0),
                            r.render(r.sub(a, e0)),
                            r.render(f),
                            r.render(r.sub(a, f)),
                        ),
                    }));
                }
            }
            holds_with(None)
        }
    }
}

/// Cached ring-level verdict for one property.
pub fn has_property(r: &FiniteRing, property: Property) -> &PropertyVerdict {
    r.caches.verdicts[property.index()].get_or_init(|| compute_property(r, property))
}

/// Evaluates the whole taxonomy, cheap structural predicates first.
pub fn all_properties(r: &FiniteRing) -> Vec<&PropertyVerdict> {
    // population order: structural predicates, then decomposition scans
    for p in [
        Property::Boolean,
        Property::Reduced,
        Property::Abelian,
        Property::Local,
    ] {
        let _ = has_property(r, p);
    }
    Property::ALL.iter().map(|&p| has_property(r, p)).collect()
}

/// Characterization route: exchange and Boolean modulo the radical.
/// Independent of the definitional `Unituc` scan.
pub fn unituc_oracle(r: &FiniteRing) -> bool {
    if !has_property(r, Property::Exchange).holds {
        return false;
    }
    let (quotient, _) = structure::radical_quotient(r);
    structure::is_boolean(quotient).is_ok()
}

/// One violated implication between property verdicts.
#[derive(Debug, Clone, Serialize)]
pub struct ImplicationViolation {
    pub ring: String,
    pub implication: &'static str,
}

/// Pure implication check over a verdict table plus the two radical facts.
/// Exposed separately so tests can audit corrupted tables.
pub fn audit_verdict_table(
    ring: &str,
    holds: &dyn Fn(Property) -> bool,
    two_in_radical: bool,
    quotient_boolean: bool,
) -> Vec<ImplicationViolation> {
    let mut violations = Vec::new();
    let mut imply = |name: &'static str, lhs: bool, rhs: bool| {
        if lhs && !rhs {
            violations.push(ImplicationViolation {
                ring: ring.to_string(),
                implication: name,
            });
        }
    };
    imply(
        "uniquely-clean => strongly-uniquely-clean",
        holds(Property::UniquelyClean),
        holds(Property::StronglyUniquelyClean),
    );
    imply(
        "strongly-uniquely-clean => unituc",
        holds(Property::StronglyUniquelyClean),
        holds(Property::Unituc),
    );
    imply("unituc => uuc", holds(Property::Unituc), holds(Property::Uuc));
    imply(
        "strongly-nil-clean => strongly-uniquely-clean",
        holds(Property::StronglyNilClean),
        holds(Property::StronglyUniquelyClean),
    );
    imply("cuc => uuc", holds(Property::Cuc), holds(Property::Uuc));
    imply(
        "unituc => 2 in J(R)",
        holds(Property::Unituc),
        two_in_radical,
    );
    imply(
        "unituc => dedekind-finite",
        holds(Property::Unituc),
        holds(Property::DedekindFinite),
    );
    imply(
        "unituc => R/J(R) boolean",
        holds(Property::Unituc),
        quotient_boolean,
    );
    imply(
        "boolean => unituc",
        holds(Property::Boolean),
        holds(Property::Unituc),
    );
    imply(
        "clean => exchange",
        holds(Property::Clean),
        holds(Property::Exchange),
    );
    violations
}

/// Evaluates all properties and checks the taxonomy's implication arrows.
pub fn implication_audit(r: &FiniteRing) -> Vec<ImplicationViolation> {
    let _ = all_properties(r);
    let two = r.add(r.one(), r.one());
    let two_in_radical = structure::jacobson_radical(r).contains(two);
    let (quotient, _) = structure::radical_quotient(r);
    let quotient_boolean = structure::is_boolean(quotient).is_ok();
    audit_verdict_table(
        r.label(),
        &|p| has_property(r, p).holds,
        two_in_radical,
        quotient_boolean,
    )
}

impl PropertyVerdict {
    /// Re-checks a failure witness through table arithmetic alone.
    /// Returns true when the witness indeed demonstrates the failure
    /// (vacuously true for passing verdicts).
    pub fn replay(&self, r: &FiniteRing) -> bool {
        let Some(witness) = &self.witness else {
            return self.holds;
        };
        if self.holds {
            return true; // success witnesses are informational
        }
        let is_unit = |x: Elem| structure::units(r).contains(x);
        let is_idem = |x: Elem| r.mul(x, x) == x;
        let is_nilpotent = |x: Elem| {
            let mut acc = x;
            for _ in 0..r.order() {
                if acc == r.zero() {
                    return true;
                }
                acc = r.mul(acc, x);
            }
            false
        };
        match (self.property, witness) {
            (Property::Boolean, Witness::Element { element, .. }) => {
                r.mul(*element, *element) != *element
            }
            (Property::Reduced, Witness::Element { element, .. }) => {
                *element != r.zero() && is_nilpotent(*element)
            }
            (Property::Abelian, Witness::NonCommutingPair { e, x, .. }) => {
                is_idem(*e) && r.mul(*e, *x) != r.mul(*x, *e)
            }
            (Property::Local, Witness::NonUnitSum { a, b, .. }) => {
                !is_unit(*a) && !is_unit(*b) && is_unit(r.add(*a, *b))
            }
            (Property::DedekindFinite, Witness::OneSidedInverse { a, b, .. }) => {
                r.mul(*a, *b) == r.one() && r.mul(*b, *a) != r.one()
            }
            (
                Property::Clean | Property::UniquelyClean | Property::Cuc,
                Witness::NoDecomposition { element, .. },
            ) => pair_idempotents(r, *element).next().is_none(),
            (
                Property::StronglyClean | Property::StronglyUniquelyClean,
                Witness::NoDecomposition { element, .. },
            ) => !pair_idempotents(r, *element).any(|e| {
                let u = r.sub(*element, e);
                r.mul(e, u) == r.mul(u, e)
            }),
            (Property::NilClean | Property::StronglyNilClean, Witness::NoDecomposition { element, .. }) => {
                !structure::idempotents(r).iter().any(|e| {
                    let b = r.sub(*element, e);
                    is_nilpotent(b)
                        && (self.property == Property::NilClean
                            || r.mul(e, b) == r.mul(b, e))
                })
            }
            (Property::StronglyJClean, Witness::NoDecomposition { element, .. }) => {
                let rad = structure::jacobson_radical(r);
                !structure::idempotents(r).iter().any(|e| {
                    let j = r.sub(*element, e);
                    rad.contains(j) && r.mul(e, j) == r.mul(j, e)
                })
            }
            (Property::Exchange, Witness::NoDecomposition { element, .. }) => {
                let comp = r.sub(r.one(), *element);
                !structure::idempotents(r).iter().any(|e| {
                    let in_ra = r.elements().any(|t| r.mul(t, *element) == e);
                    let ce = r.sub(r.one(), e);
                    let in_rc = r.elements().any(|t| r.mul(t, comp) == ce);
                    in_ra && in_rc
                })
            }
            (
                Property::UniquelyClean
                | Property::StronglyUniquelyClean
                | Property::Uuc
                | Property::Cuc,
                Witness::ExtraPair { element, e, u, f, v, .. },
            ) => {
                let strong = self.property == Property::StronglyUniquelyClean;
                e != f
                    && is_idem(*e)
                    && is_idem(*f)
                    && is_unit(*u)
                    && is_unit(*v)
                    && r.add(*e, *u) == *element
                    && r.add(*f, *v) == *element
                    && (!strong
                        || (r.mul(*e, *u) == r.mul(*u, *e) && r.mul(*f, *v) == r.mul(*v, *f)))
            }
            (Property::Unituc, Witness::NoDecomposition { element, .. }) => {
                pair_idempotents(r, *element).next().is_none()
            }
            (Property::Unituc, Witness::NonConjugatePairs { element, e, u, f, v, .. }) => {
                is_idem(*e)
                    && is_idem(*f)
                    && is_unit(*u)
                    && is_unit(*v)
                    && r.add(*e, *u) == *element
                    && r.add(*f, *v) == *element
                    && structure::are_conjugate(r, *e, *f)
                        .map(|w| w.is_none())
                        .unwrap_or(false)
            }
            _ => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{
        direct_product, galois_field, group_ring, cyclic_group, matrix_ring, pack_coords,
        poly_quot, upper_triangular, zmod,
    };

    #[test]
    fn decompositions_in_small_rings() {
        let z2 = zmod(2).unwrap();
        let rec = clean_decompositions(&z2, 0);
        assert_eq!(rec.pairs.len(), 1);
        assert_eq!(rec.pairs[0].idempotent, 1);
        assert_eq!(rec.pairs[0].unit, 1);

        // Z4: Id = {0,1}; 2 - 0 = 2 is not a unit, 2 - 1 = 1 is
        let z4 = zmod(4).unwrap();
        let rec = clean_decompositions(&z4, 2);
        assert_eq!(rec.pairs.len(), 1);
        assert_eq!(rec.pairs[0].idempotent, 1);
        assert_eq!(rec.pairs[0].unit, 1);
        assert!(z4.elements().all(|a| element_is_uniquely_clean(&z4, a)));
    }

    #[test]
    fn identity_of_m2_is_uniquely_clean_but_units_are_not() {
        // I - e is singular for every nonzero idempotent e, so (0, I) is the
        // only clean pair of the identity. The UnitUC failure instead comes
        // from a unit like [[1,1],[1,0]] = 0 + u = 1 + (u - 1).
        let z2 = zmod(2).unwrap();
        let m2 = matrix_ring(2, &z2).unwrap();
        let rec = clean_decompositions(&m2, m2.one());
        assert_eq!(rec.pairs.len(), 1);
        assert_eq!(rec.pairs[0].idempotent, m2.zero());
        assert!(element_is_uniquely_clean(&m2, m2.one()));

        let u = pack_coords(2, &[1, 1, 1, 0]);
        assert!(structure::units(&m2).contains(u));
        let rec = clean_decompositions(&m2, u);
        assert!(rec.pairs.len() >= 2);
        // idempotents land in the classes of 0, 1 and the rank-ones
        assert_eq!(rec.conjugacy_partition.len(), 3);
        assert!(!element_is_unituc(&m2, u));
    }

    #[test]
    fn idempotents_and_central_nilpotents_are_unituc_elements() {
        let z4 = zmod(4).unwrap();
        assert!(element_is_unituc(&z4, 2)); // central nilpotent
        let z2 = zmod(2).unwrap();
        let m2 = matrix_ring(2, &z2).unwrap();
        for e in structure::idempotents(&m2).iter() {
            assert!(element_is_unituc(&m2, e));
        }
        let p = direct_product(&[z2.clone(), z2.clone()]).unwrap();
        assert!(element_is_uniquely_clean(&p, pack_coords(2, &[1, 0])));
    }

    #[test]
    fn ring_level_verdicts() {
        let z4 = zmod(4).unwrap();
        assert!(has_property(&z4, Property::Unituc).holds);
        assert!(has_property(&z4, Property::UniquelyClean).holds);

        let z2 = zmod(2).unwrap();
        let m2 = matrix_ring(2, &z2).unwrap();
        let verdict = has_property(&m2, Property::Unituc);
        assert!(!verdict.holds);
        assert!(verdict.replay(&m2));
        // the witness pairs a unit decomposition against u + v = 1
        match verdict.witness.as_ref().unwrap() {
            Witness::NonConjugatePairs { e, f, .. } => {
                assert_ne!(
                    structure::conjugacy_classes(&m2).class_of(*e),
                    structure::conjugacy_classes(&m2).class_of(*f)
                );
            }
            w => panic!("unexpected witness {w:?}"),
        }

        let f4 = galois_field(2, 2, None).unwrap();
        assert!(!has_property(&f4, Property::Unituc).holds);
    }

    #[test]
    fn oracle_route_agrees() {
        for ring in [
            zmod(8).unwrap(),
            zmod(4).unwrap(),
            zmod(3).unwrap(),
            galois_field(2, 2, None).unwrap(),
        ] {
            assert_eq!(
                has_property(&ring, Property::Unituc).holds,
                unituc_oracle(&ring),
                "oracle mismatch on {}",
                ring.label()
            );
        }
        // T3(Z4) is UnitUC; F2[C3] is not (quotient not Boolean)
        let z4 = zmod(4).unwrap();
        let t3 = upper_triangular(3, &z4).unwrap();
        assert!(unituc_oracle(&t3));
        assert!(has_property(&t3, Property::Unituc).holds);
        let z2 = zmod(2).unwrap();
        let c3 = cyclic_group(3).unwrap();
        let rg = group_ring(&z2, &c3).unwrap().ring;
        assert!(!unituc_oracle(&rg));
        assert!(!has_property(&rg, Property::Unituc).holds);
    }

    #[test]
    fn audit_is_clean_on_samples_and_detects_corruption() {
        let z4 = zmod(4).unwrap();
        assert!(implication_audit(&z4).is_empty());
        // 1 + 1 = 2 lands in J(Z4)
        assert!(structure::jacobson_radical(&z4).contains(z4.add(z4.one(), z4.one())));

        let z2 = zmod(2).unwrap();
        let m2 = matrix_ring(2, &z2).unwrap();
        assert!(implication_audit(&m2).is_empty());

        // corrupted verdict table: claim unituc without dedekind-finite
        let violations = audit_verdict_table(
            "fixture",
            &|p| matches!(p, Property::Unituc | Property::Clean | Property::Exchange),
            true,
            true,
        );
        assert!(violations
            .iter()
            .any(|v| v.implication == "unituc => dedekind-finite"));
    }

    #[test]
    fn polyquot_is_unituc_over_z2() {
        let z2 = zmod(2).unwrap();
        let pq = poly_quot(&z2, 3).unwrap();
        assert!(has_property(&pq, Property::Unituc).holds);
        assert!(unituc_oracle(&pq));
    }
}
