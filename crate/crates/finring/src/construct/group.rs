//! Finite groups as Cayley tables, and group rings with their augmentation
//! data.

use std::sync::Arc;

use super::{build_power_ring, sum_render, ConstructError};
use crate::ring::{Elem, ElementSubset, FiniteRing, RingHom};

/// A finite group as a Cayley table; element 0 is the identity.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    label: String,
    order: usize,
    cayley: Vec<u32>,
    inv: Vec<u32>,
    names: Vec<String>,
    is_two_group: bool,
}

impl FiniteGroup {
    fn assemble(
        label: String,
        order: usize,
        cayley: Vec<u32>,
        names: Vec<String>,
    ) -> FiniteGroup {
        debug_assert_eq!(cayley.len(), order * order);
        // identity, inverses, associativity; group inputs are tiny
        for a in 0..order as u32 {
            debug_assert_eq!(cayley[a as usize], a, "element 0 must be the identity");
            debug_assert_eq!(cayley[a as usize * order], a);
        }
        let mut inv = vec![u32::MAX; order];
        for a in 0..order {
            let b = (0..order)
                .find(|&b| cayley[a * order + b] == 0)
                .expect("group table lacks an inverse");
            inv[a] = b as u32;
        }
        #[cfg(debug_assertions)]
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    let ab_c = cayley[cayley[a * order + b] as usize * order + c];
                    let a_bc = cayley[a * order + cayley[b * order + c] as usize];
                    debug_assert_eq!(ab_c, a_bc, "group table not associative");
                }
            }
        }
        let is_two_group = order.is_power_of_two();
        FiniteGroup {
            label,
            order,
            cayley,
            inv,
            names,
            is_two_group,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> u32 {
        0
    }

    #[inline]
    pub fn op(&self, a: u32, b: u32) -> u32 {
        self.cayley[a as usize * self.order + b as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    pub fn name(&self, a: u32) -> &str {
        &self.names[a as usize]
    }

    /// True when the order is a power of two (the trivial group counts).
    pub fn is_two_group(&self) -> bool {
        self.is_two_group
    }
}

/// The cyclic group of order `n`.
pub fn cyclic_group(n: usize) -> Result<FiniteGroup, ConstructError> {
    if n < 1 {
        return Err(ConstructError::ArgRange {
            what: "group order",
            got: n as u64,
            min: 1,
        });
    }
    let mut cayley = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            cayley[a * n + b] = ((a + b) % n) as u32;
        }
    }
    let names = (0..n)
        .map(|i| match i {
            0 => "e".to_string(),
            1 => "g".to_string(),
            _ => format!("g^{i}"),
        })
        .collect();
    Ok(FiniteGroup::assemble(format!("C({n})"), n, cayley, names))
}

/// Direct product of two groups; pairs run lexicographically.
pub fn group_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let n = a.order() * b.order();
    let encode = |x: u32, y: u32| x * b.order() as u32 + y;
    let mut cayley = vec![0u32; n * n];
    for xa in 0..a.order() as u32 {
        for ya in 0..b.order() as u32 {
            for xb in 0..a.order() as u32 {
                for yb in 0..b.order() as u32 {
                    let lhs = encode(xa, ya) as usize;
                    let rhs = encode(xb, yb) as usize;
                    cayley[lhs * n + rhs] = encode(a.op(xa, xb), b.op(ya, yb));
                }
            }
        }
    }
    let names = (0..a.order() as u32)
        .flat_map(|x| {
            (0..b.order() as u32).map(move |y| (x, y))
        })
        .map(|(x, y)| format!("({},{})", a.name(x), b.name(y)))
        .collect();
    FiniteGroup::assemble(
        format!("GxG({},{})", a.label(), b.label()),
        n,
        cayley,
        names,
    )
}

/// A group ring together with its augmentation map and augmentation ideal.
pub struct GroupRingParts {
    pub ring: Arc<FiniteRing>,
    /// coefficient-sum map onto the base ring, verified
    pub augmentation: RingHom,
    /// kernel of the augmentation
    pub augmentation_ideal: ElementSubset,
}

/// The group ring `RG`: functions `G -> R` under convolution, indexed
/// lexicographically by coefficient tuple (identity coefficient first).
pub fn group_ring(
    base: &Arc<FiniteRing>,
    group: &FiniteGroup,
) -> Result<GroupRingParts, ConstructError> {
    let g = group.order();
    let mut one_coords = vec![base.zero(); g];
    one_coords[0] = base.one();
    let symbols: Vec<String> = (0..g as u32).map(|i| group.name(i).to_string()).collect();

    let b1 = base.clone();
    let b2 = base.clone();
    let grp = group.clone();
    let ring = build_power_ring(
        base,
        g,
        format!("GR({},{})", base.label(), group.label()),
        "coefficients per group element, identity first, lexicographic".into(),
        &one_coords,
        move |a, b, out| {
            out.fill(b1.zero());
            for x in 0..g {
                if a[x] == b1.zero() {
                    continue;
                }
                for y in 0..g {
                    let target = grp.op(x as u32, y as u32) as usize;
                    out[target] = b1.add(out[target], b1.mul(a[x], b[y]));
                }
            }
            Ok(())
        },
        move |coords| sum_render(&b2, coords, &symbols),
    )?;

    // augmentation: sum of coefficients
    let mut eps = vec![0 as Elem; ring.order()];
    let mut coords = vec![0 as Elem; g];
    for idx in ring.elements() {
        super::unpack_coords(base.order(), g, idx, &mut coords);
        let mut sum = base.zero();
        for &c in &coords {
            sum = base.add(sum, c);
        }
        eps[idx as usize] = sum;
    }
    let augmentation = RingHom::new(ring.clone(), base.clone(), eps)?;
    if let Some(v) = augmentation.check_laws() {
        // the augmentation of a convolution ring is always a homomorphism;
        // reaching this means the table build is broken
        panic!("augmentation failed to verify: {v:?}");
    }
    let augmentation_ideal = ElementSubset::from_members(
        ring.order(),
        ring.elements()
            .filter(|&x| augmentation.apply(x) == base.zero())
            .collect(),
    );

    Ok(GroupRingParts {
        ring,
        augmentation,
        augmentation_ideal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{pack_coords, poly_quot, zmod};

    #[test]
    fn two_group_flags() {
        assert!(cyclic_group(4).unwrap().is_two_group());
        assert!(!cyclic_group(3).unwrap().is_two_group());
        assert!(cyclic_group(1).unwrap().is_two_group());
    }

    #[test]
    fn klein_four_group() {
        let c2 = cyclic_group(2).unwrap();
        let v4 = group_product(&c2, &c2);
        assert_eq!(v4.order(), 4);
        // exponent 2: every element is its own inverse
        for a in 0..4 {
            assert_eq!(v4.op(a, a), v4.identity());
        }
        assert!(v4.is_two_group());
    }

    #[test]
    fn f2c2_augmentation() {
        let z2 = zmod(2).unwrap();
        let c2 = cyclic_group(2).unwrap();
        let parts = group_ring(&z2, &c2).unwrap();
        assert_eq!(parts.ring.order(), 4);
        let report = parts.augmentation.verify();
        assert!(report.is_ok());
        assert!(report.surjective);
        // eps(g) = 1 for every group element g
        let g = pack_coords(2, &[0, 1]);
        assert_eq!(parts.augmentation.apply(g), z2.one());
        assert_eq!(parts.augmentation_ideal.len(), 2);
    }

    #[test]
    fn f2c2_is_z2_adjoin_nilpotent() {
        // RG = Z2[C2] = Z2[x]/<x^2> via g -> 1 + x
        let z2 = zmod(2).unwrap();
        let c2 = cyclic_group(2).unwrap();
        let rg = group_ring(&z2, &c2).unwrap().ring;
        let pq = poly_quot(&z2, 2).unwrap();
        // (r_e, r_g) -> r_e + r_g(1+x) = (r_e + r_g, r_g)
        let map: Vec<Elem> = rg
            .elements()
            .map(|idx| {
                let mut c = [0u32; 2];
                crate::construct::unpack_coords(2, 2, idx, &mut c);
                pack_coords(2, &[(c[0] + c[1]) % 2, c[1]])
            })
            .collect();
        let h = RingHom::new(rg, pq, map).unwrap();
        assert!(h.is_isomorphism());
    }

    #[test]
    fn trivial_group_ring_is_base() {
        let z2 = zmod(2).unwrap();
        let c1 = cyclic_group(1).unwrap();
        let rg = group_ring(&z2, &c1).unwrap().ring;
        assert!(rg.same_tables(&z2));
    }

    #[test]
    fn augmentation_ideal_is_generated_by_one_minus_g() {
        for (base, group) in [
            (zmod(2).unwrap(), cyclic_group(4).unwrap()),
            (zmod(4).unwrap(), cyclic_group(2).unwrap()),
        ] {
            let parts = group_ring(&base, &group).unwrap();
            let rg = &parts.ring;
            let mut gens = Vec::new();
            for g in 0..group.order() as u32 {
                // the group element g as a ring element: coefficient 1 at g
                let mut coords = vec![base.zero(); group.order()];
                coords[g as usize] = base.one();
                let g_elt = pack_coords(base.order(), &coords);
                assert_eq!(parts.augmentation.apply(g_elt), base.one());
                gens.push(rg.sub(rg.one(), g_elt));
            }
            let closure = crate::structure::ideal_closure(rg, &gens);
            assert_eq!(closure, parts.augmentation_ideal);
        }
    }
}
