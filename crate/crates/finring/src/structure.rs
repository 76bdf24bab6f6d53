//! Structural invariants of a finite ring: idempotents, units, nilpotents,
//! Jacobson radical, center, ideal closure, and idempotent conjugacy.
//!
//! Every invariant is computed once per ring and cached on the ring itself;
//! reads after population are lock-free and concurrent-safe.

use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::construct::quotient_tables;
use crate::ring::{Elem, ElementSubset, FiniteRing};

#[derive(Debug, Error)]
pub enum StructureError {
    #[error("element {0} is not idempotent")]
    NotIdempotent(Elem),
}

/// Per-ring lazily-populated structural data.
#[derive(Default)]
pub(crate) struct Caches {
    idempotents: OnceLock<ElementSubset>,
    units: OnceLock<UnitGroup>,
    nilpotents: OnceLock<ElementSubset>,
    radical: OnceLock<RadicalBundle>,
    center: OnceLock<ElementSubset>,
    conjugacy: OnceLock<ConjugacyClasses>,
    pub(crate) verdicts: [OnceLock<crate::classify::PropertyVerdict>; crate::classify::PROPERTY_COUNT],
}

/// The unit group with its inverse table.
pub struct UnitGroup {
    pub subset: ElementSubset,
    inverse: Vec<Elem>, // u32::MAX on non-units
}

impl UnitGroup {
    #[inline]
    pub fn contains(&self, a: Elem) -> bool {
        self.subset.contains(a)
    }

    pub fn inverse(&self, a: Elem) -> Option<Elem> {
        let v = self.inverse[a as usize];
        (v != u32::MAX).then_some(v)
    }
}

/// Partition of the idempotents into orbits under `u^-1 (.) u`.
pub struct ConjugacyClasses {
    /// classes listed by least member, members ascending
    pub classes: Vec<Vec<Elem>>,
    class_of: Vec<u32>, // u32::MAX on non-idempotents
}

impl ConjugacyClasses {
    pub fn class_of(&self, e: Elem) -> Option<usize> {
        let v = self.class_of[e as usize];
        (v != u32::MAX).then_some(v as usize)
    }
}

struct RadicalBundle {
    radical: ElementSubset,
    quotient: Arc<FiniteRing>,
    coset_map: Vec<Elem>,
}

/// `Id(R)`: all elements with `e·e = e`, ascending.
pub fn idempotents(r: &FiniteRing) -> &ElementSubset {
    r.caches.idempotents.get_or_init(|| {
        ElementSubset::from_members(r.order(), r.elements().filter(|&e| r.mul(e, e) == e).collect())
    })
}

/// `U(R)`: two-sided invertibles with their inverse table.
pub fn units(r: &FiniteRing) -> &UnitGroup {
    r.caches.units.get_or_init(|| {
        let n = r.order();
        let mut inverse = vec![u32::MAX; n];
        let mut members = Vec::new();
        for a in r.elements() {
            for b in r.elements() {
                if r.mul(a, b) == r.one() && r.mul(b, a) == r.one() {
                    inverse[a as usize] = b;
                    members.push(a);
                    break;
                }
            }
        }
        UnitGroup {
            subset: ElementSubset::from_members(n, members),
            inverse,
        }
    })
}

/// `N(R)`: elements with a vanishing power, found by iterating powers with
/// cycle detection.
pub fn nilpotents(r: &FiniteRing) -> &ElementSubset {
    r.caches.nilpotents.get_or_init(|| {
        let n = r.order();
        let mut seen = vec![false; n];
        let mut marked: Vec<Elem> = Vec::new();
        let mut members = Vec::new();
        for a in r.elements() {
            let mut acc = a;
            let nil = loop {
                if acc == r.zero() {
                    break true;
                }
                if seen[acc as usize] {
                    break false; // power cycle without reaching zero
                }
                seen[acc as usize] = true;
                marked.push(acc);
                acc = r.mul(acc, a);
            };
            for m in marked.drain(..) {
                seen[m as usize] = false;
            }
            if nil {
                members.push(a);
            }
        }
        ElementSubset::from_members(n, members)
    })
}

fn raw_radical_members(r: &FiniteRing) -> Vec<Elem> {
    let u = units(r);
    r.elements()
        .filter(|&x| {
            r.elements()
                .all(|t| u.contains(r.sub(r.one(), r.mul(t, x))))
        })
        .collect()
}

/// Checks that a subset is a two-sided ideal.
pub fn check_ideal(r: &FiniteRing, subset: &ElementSubset) -> Result<(), String> {
    if !subset.contains(r.zero()) {
        return Err("zero missing".into());
    }
    for i in subset.iter() {
        if !subset.contains(r.neg(i)) {
            return Err(format!("not closed under negation at {i}"));
        }
        for j in subset.iter() {
            if !subset.contains(r.add(i, j)) {
                return Err(format!("not closed under addition at ({i},{j})"));
            }
        }
        for x in r.elements() {
            if !subset.contains(r.mul(x, i)) || !subset.contains(r.mul(i, x)) {
                return Err(format!("not absorbing at ({x},{i})"));
            }
        }
    }
    Ok(())
}

fn radical_bundle(r: &FiniteRing) -> &RadicalBundle {
    r.caches.radical.get_or_init(|| {
        let n = r.order();
        let u = units(r);
        let left = raw_radical_members(r);
        // finite rings are Dedekind-finite, so the right-sided scan must agree
        let right: Vec<Elem> = r
            .elements()
            .filter(|&x| {
                r.elements()
                    .all(|t| u.contains(r.sub(r.one(), r.mul(x, t))))
            })
            .collect();
        if left != right {
            panic!(
                "radical cross-check failed on {}: left and right quasi-regular scans disagree",
                r.label()
            );
        }
        let radical = ElementSubset::from_members(n, left);

        // post-verification; failure means the engine itself is broken
        if let Err(why) = check_ideal(r, &radical) {
            panic!("radical of {} is not a two-sided ideal: {why}", r.label());
        }
        for j in radical.iter() {
            if !u.contains(r.add(r.one(), j)) {
                panic!("1 + J not a unit at {j} in {}", r.label());
            }
        }
        let (quotient, coset_map) = quotient_tables(r, &radical)
            .unwrap_or_else(|e| panic!("quotient by radical failed on {}: {e}", r.label()));
        if radical.len() > 1 {
            // J(R/J) must vanish; for J = {0} this is the scan we just did
            let qr = raw_radical_members(&quotient);
            if qr != vec![quotient.zero()] {
                panic!("J(R/J) is nonzero on {}", r.label());
            }
        }
        RadicalBundle {
            radical,
            quotient,
            coset_map,
        }
    })
}

/// `J(R)` by the quasi-regularity characterization, cross-checked on both
/// sides and post-verified (ideal, `1+J` in `U(R)`, `J(R/J) = 0`).
pub fn jacobson_radical(r: &FiniteRing) -> &ElementSubset {
    &radical_bundle(r).radical
}

/// `R/J(R)` with the element-to-coset map.
pub fn radical_quotient(r: &FiniteRing) -> (&Arc<FiniteRing>, &[Elem]) {
    let b = radical_bundle(r);
    (&b.quotient, &b.coset_map)
}

/// Smallest two-sided ideal containing `gens`.
pub fn ideal_closure(r: &FiniteRing, gens: &[Elem]) -> ElementSubset {
    let n = r.order();
    let mut bits = vec![false; n];
    let mut members: Vec<Elem> = Vec::new();
    let mut queue: Vec<Elem> = Vec::new();
    let push = |x: Elem, bits: &mut Vec<bool>, members: &mut Vec<Elem>, queue: &mut Vec<Elem>| {
        if !bits[x as usize] {
            bits[x as usize] = true;
            members.push(x);
            queue.push(x);
        }
    };
    push(r.zero(), &mut bits, &mut members, &mut queue);
    for &g in gens {
        push(g, &mut bits, &mut members, &mut queue);
    }
    while let Some(x) = queue.pop() {
        push(r.neg(x), &mut bits, &mut members, &mut queue);
        // sums with everything currently in the set: each unordered pair is
        // covered when its later member is popped
        for i in 0..members.len() {
            let y = members[i];
            push(r.add(x, y), &mut bits, &mut members, &mut queue);
        }
        for t in r.elements() {
            push(r.mul(t, x), &mut bits, &mut members, &mut queue);
            push(r.mul(x, t), &mut bits, &mut members, &mut queue);
        }
    }
    ElementSubset::from_members(n, members)
}

/// `C(R)`: elements commuting with everything.
pub fn center(r: &FiniteRing) -> &ElementSubset {
    r.caches.center.get_or_init(|| {
        ElementSubset::from_members(
            r.order(),
            r.elements()
                .filter(|&c| r.elements().all(|x| r.mul(c, x) == r.mul(x, c)))
                .collect(),
        )
    })
}

/// Least-index unit `u` with `e = u^-1 f u`, if the idempotents are
/// conjugate.
pub fn are_conjugate(r: &FiniteRing, e: Elem, f: Elem) -> Result<Option<Elem>, StructureError> {
    for x in [e, f] {
        if (x as usize) >= r.order() || r.mul(x, x) != x {
            return Err(StructureError::NotIdempotent(x));
        }
    }
    let u = units(r);
    for w in u.subset.iter() {
        let w_inv = u.inverse(w).expect("unit table inconsistent");
        if r.mul(r.mul(w_inv, f), w) == e {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Orbits of `Id(R)` under conjugation by every unit.
pub fn conjugacy_classes(r: &FiniteRing) -> &ConjugacyClasses {
    r.caches.conjugacy.get_or_init(|| {
        let ids = idempotents(r);
        let u = units(r);
        let mut class_of = vec![u32::MAX; r.order()];
        let mut classes: Vec<Vec<Elem>> = Vec::new();
        for e in ids.iter() {
            if class_of[e as usize] != u32::MAX {
                continue;
            }
            let id = classes.len() as u32;
            let mut orbit = Vec::new();
            for w in u.subset.iter() {
                let w_inv = u.inverse(w).expect("unit table inconsistent");
                let conj = r.mul(r.mul(w_inv, e), w);
                if class_of[conj as usize] == u32::MAX {
                    class_of[conj as usize] = id;
                    orbit.push(conj);
                }
            }
            orbit.sort_unstable();
            classes.push(orbit);
        }
        ConjugacyClasses { classes, class_of }
    })
}

/// Boolean check: `x^2 = x` for every element; witness is the least failure.
pub fn is_boolean(r: &FiniteRing) -> Result<(), Elem> {
    match r.elements().find(|&a| r.mul(a, a) != a) {
        None => Ok(()),
        Some(a) => Err(a),
    }
}

/// Reduced check: no nonzero nilpotents; witness is the least one.
pub fn is_reduced(r: &FiniteRing) -> Result<(), Elem> {
    match nilpotents(r).iter().find(|&a| a != r.zero()) {
        None => Ok(()),
        Some(a) => Err(a),
    }
}

/// Abelian check: every idempotent is central; witness is the least
/// non-commuting pair `(e, x)`.
pub fn is_abelian(r: &FiniteRing) -> Result<(), (Elem, Elem)> {
    for e in idempotents(r).iter() {
        if let Some(x) = r.elements().find(|&x| r.mul(e, x) != r.mul(x, e)) {
            return Err((e, x));
        }
    }
    Ok(())
}

/// Local check: the non-units are closed under addition; witness is a pair
/// of non-units with a unit sum. When the check passes, the non-units are
/// cross-checked to coincide with `J(R)`.
pub fn is_local(r: &FiniteRing) -> Result<(), (Elem, Elem)> {
    let u = units(r);
    let non_units: Vec<Elem> = r.elements().filter(|&a| !u.contains(a)).collect();
    for &a in &non_units {
        for &b in &non_units {
            if u.contains(r.add(a, b)) {
                return Err((a, b));
            }
        }
    }
    let j = jacobson_radical(r);
    if j.len() != non_units.len() || !non_units.iter().all(|&a| j.contains(a)) {
        panic!(
            "local cross-check failed on {}: non-units closed under addition but differ from J(R)",
            r.label()
        );
    }
    Ok(())
}
