//! Constructors for every ring family the engine works with.
//!
//! Each constructor enumerates its free coordinates lexicographically (first
//! declared coordinate most significant) unless documented otherwise, labels
//! the result with a canonical expression string, and validates the ring
//! axioms before handing the ring out.

mod group;
mod pattern;

pub use group::{cyclic_group, group_product, group_ring, FiniteGroup, GroupRingParts};
pub use pattern::{
    constant_diag_triangular, family_anm, family_bnm, family_snm, family_tnm, family_un,
    matrix_pattern_ring, matrix_ring, upper_triangular, MatrixPattern,
};

use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::ring::{Elem, FiniteRing, RingError, ValidationReport, DEFAULT_MAX_ORDER};

#[derive(Debug, Error)]
pub enum ConstructError {
    #[error("{label}: order {order} exceeds the cap {cap}")]
    CapExceeded {
        label: String,
        order: u128,
        cap: usize,
    },
    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("an irreducible polynomial of degree {k} over Z_{p} must be supplied")]
    MissingIrreducible { p: u64, k: u32 },
    #[error("bad irreducible polynomial: {0}")]
    BadIrreducible(String),
    #[error("direct product needs at least one factor")]
    EmptyProduct,
    #[error("element {0} is not central")]
    NotCentral(Elem),
    #[error("element {0} is not a nonzero idempotent")]
    NotIdempotent(Elem),
    #[error("subset is not a two-sided ideal: {0}")]
    NotAnIdeal(String),
    #[error("map is not a ring endomorphism ({0})")]
    InvalidEndomorphism(String),
    #[error("{label}: product of elements {lhs} and {rhs} left the coordinate span")]
    ClosureViolation {
        label: String,
        lhs: Elem,
        rhs: Elem,
    },
    #[error("{what} must be at least {min}, got {got}")]
    ArgRange {
        what: &'static str,
        got: u64,
        min: u64,
    },
    #[error("{label}: constructed tables violate ring axioms: {report}")]
    Axioms {
        label: String,
        report: ValidationReport,
    },
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Active carrier-size cap: `FINRING_MAX_ORDER` when set and valid,
/// otherwise `DEFAULT_MAX_ORDER`.
pub fn order_cap() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var("FINRING_MAX_ORDER")
            .ok()
            .and_then(|v| v.parse::<usize>().ok())
            .filter(|&v| v >= 2)
            .unwrap_or(DEFAULT_MAX_ORDER)
    })
}

pub(crate) fn ensure_cap(label: &str, order: u128) -> Result<usize, ConstructError> {
    let cap = order_cap();
    if order > cap as u128 || order == 0 {
        return Err(ConstructError::CapExceeded {
            label: label.to_string(),
            order,
            cap,
        });
    }
    Ok(order as usize)
}

/// Assembles, validates and wraps a constructed ring.
pub(crate) fn finalize(
    label: String,
    coord_doc: String,
    order: usize,
    zero: Elem,
    one: Elem,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    render: Vec<String>,
) -> Result<Arc<FiniteRing>, ConstructError> {
    let ring = FiniteRing::assemble(label, coord_doc, order, zero, one, add, mul, render)?;
    let report = ring.validate_axioms();
    if !report.is_ok() {
        return Err(ConstructError::Axioms {
            label: ring.label().to_string(),
            report,
        });
    }
    Ok(Arc::new(ring))
}

/// Packs coordinates lexicographically over a uniform base order
/// (first coordinate most significant).
pub fn pack_coords(base_order: usize, coords: &[Elem]) -> Elem {
    let mut idx: usize = 0;
    for &c in coords {
        idx = idx * base_order + c as usize;
    }
    idx as Elem
}

/// Inverse of `pack_coords`.
pub fn unpack_coords(base_order: usize, arity: usize, mut idx: Elem, out: &mut [Elem]) {
    debug_assert_eq!(out.len(), arity);
    for slot in out.iter_mut().rev() {
        *slot = (idx as usize % base_order) as Elem;
        idx = (idx as usize / base_order) as Elem;
    }
}

/// Builds a ring on the carrier `R^arity` with componentwise addition and a
/// caller-supplied coordinatewise product.
pub(crate) fn build_power_ring<M, Rn>(
    base: &FiniteRing,
    arity: usize,
    label: String,
    coord_doc: String,
    one_coords: &[Elem],
    mut mul_fn: M,
    mut render_fn: Rn,
) -> Result<Arc<FiniteRing>, ConstructError>
where
    M: FnMut(&[Elem], &[Elem], &mut [Elem]) -> Result<(), ConstructError>,
    Rn: FnMut(&[Elem]) -> String,
{
    let bo = base.order();
    let order_wide = (bo as u128)
        .checked_pow(arity as u32)
        .ok_or_else(|| ConstructError::CapExceeded {
            label: label.clone(),
            order: u128::MAX,
            cap: order_cap(),
        })?;
    let order = ensure_cap(&label, order_wide)?;

    // Precompute every element's coordinate tuple.
    let mut tuples = vec![0 as Elem; order * arity];
    for idx in 0..order {
        unpack_coords(bo, arity, idx as Elem, &mut tuples[idx * arity..(idx + 1) * arity]);
    }
    let coords_of = |idx: usize| &tuples[idx * arity..(idx + 1) * arity];

    let zero_coords = vec![base.zero(); arity];
    let zero = pack_coords(bo, &zero_coords);
    let one = pack_coords(bo, one_coords);

    let mut add = vec![0 as Elem; order * order];
    let mut mul = vec![0 as Elem; order * order];
    let mut acc = vec![0 as Elem; arity];
    for x in 0..order {
        for y in 0..order {
            let (cx, cy) = (coords_of(x), coords_of(y));
            for t in 0..arity {
                acc[t] = base.add(cx[t], cy[t]);
            }
            add[x * order + y] = pack_coords(bo, &acc);
            mul_fn(cx, cy, &mut acc)?;
            mul[x * order + y] = pack_coords(bo, &acc);
        }
    }

    let render: Vec<String> = (0..order).map(|idx| render_fn(coords_of(idx))).collect();
    finalize(label, coord_doc, order, zero, one, add, mul, render)
}

/// Renders `coeff·sym`, dropping a unit coefficient and wrapping composite
/// coefficient strings in parentheses.
pub(crate) fn term(coeff: &str, coeff_is_one: bool, sym: &str) -> String {
    if sym.is_empty() {
        return coeff.to_string();
    }
    if coeff_is_one {
        return sym.to_string();
    }
    if coeff.contains('+') || coeff.contains(' ') {
        format!("({coeff}){sym}")
    } else {
        format!("{coeff}{sym}")
    }
}

/// Canonical sum-of-terms display over a monomial basis; injective because
/// zero terms are dropped and the basis order is fixed.
pub(crate) fn sum_render(base: &FiniteRing, coords: &[Elem], symbols: &[String]) -> String {
    let mut parts = Vec::new();
    for (t, &c) in coords.iter().enumerate() {
        if c != base.zero() {
            parts.push(term(base.render(c), c == base.one(), &symbols[t]));
        }
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join("+")
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The ring of integers modulo `n`; index `i` is the residue `i`.
pub fn zmod(n: usize) -> Result<Arc<FiniteRing>, ConstructError> {
    if n < 2 {
        return Err(ConstructError::ModulusTooSmall(n as u64));
    }
    let order = ensure_cap("Z", n as u128)?;
    let mut add = vec![0 as Elem; order * order];
    let mut mul = vec![0 as Elem; order * order];
    for a in 0..order {
        for b in 0..order {
            add[a * order + b] = ((a + b) % order) as Elem;
            mul[a * order + b] = ((a * b) % order) as Elem;
        }
    }
    let render = (0..order).map(|i| i.to_string()).collect();
    finalize(
        format!("Z({n})"),
        format!("index i is the residue i mod {n}"),
        order,
        0,
        1,
        add,
        mul,
        render,
    )
}

// Polynomial helpers over Z_p, little-endian coefficient vectors.

fn poly_trim(p: &mut Vec<u64>) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

fn poly_rem(mut num: Vec<u64>, den: &[u64], p: u64) -> Vec<u64> {
    // den is monic
    poly_trim(&mut num);
    while num.len() >= den.len() {
        let shift = num.len() - den.len();
        let lead = num[num.len() - 1];
        for (i, &d) in den.iter().enumerate() {
            let idx = shift + i;
            num[idx] = (num[idx] + p * p - (lead * d) % p) % p;
        }
        poly_trim(&mut num);
    }
    num
}

fn poly_is_irreducible(irr: &[u64], p: u64) -> bool {
    let k = irr.len() - 1;
    // Trial division by every monic polynomial of degree 1..=k/2.
    for d in 1..=(k / 2) {
        let count = p.pow(d as u32);
        for enc in 0..count {
            let mut g: Vec<u64> = Vec::with_capacity(d + 1);
            let mut e = enc;
            for _ in 0..d {
                g.push(e % p);
                e /= p;
            }
            g.push(1); // monic
            if poly_rem(irr.to_vec(), &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn builtin_irreducible(p: u64, k: u32) -> Option<Vec<u64>> {
    match (p, k) {
        (2, 2) => Some(vec![1, 1, 1]),    // x^2 + x + 1
        (2, 3) => Some(vec![1, 1, 0, 1]), // x^3 + x + 1
        _ => None,
    }
}

/// The field of order `p^k`. The element index encodes the coefficient
/// tuple base `p`, little-endian (constant coefficient least significant).
///
/// `irr` is the monic degree-`k` modulus, little-endian; required for
/// `k >= 2` except GF(4) and GF(8), which have built-ins.
pub fn galois_field(
    p: u64,
    k: u32,
    irr: Option<Vec<u64>>,
) -> Result<Arc<FiniteRing>, ConstructError> {
    if !is_prime(p) {
        return Err(ConstructError::NotPrime(p));
    }
    if k < 1 {
        return Err(ConstructError::ArgRange {
            what: "field degree",
            got: k as u64,
            min: 1,
        });
    }
    let label = match &irr {
        Some(coeffs) if k >= 2 => format!(
            "GF({p},{k},[{}])",
            coeffs
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",")
        ),
        _ => format!("GF({p},{k})"),
    };
    let irr = if k == 1 {
        vec![0, 1] // reduction mod x is never used; keep shape sane
    } else {
        let supplied = irr
            .or_else(|| builtin_irreducible(p, k))
            .ok_or(ConstructError::MissingIrreducible { p, k })?;
        if supplied.len() != k as usize + 1 {
            return Err(ConstructError::BadIrreducible(format!(
                "expected degree {k} (length {}), got length {}",
                k + 1,
                supplied.len()
            )));
        }
        if supplied.last() != Some(&1) {
            return Err(ConstructError::BadIrreducible("must be monic".into()));
        }
        if supplied.iter().any(|&c| c >= p) {
            return Err(ConstructError::BadIrreducible(format!(
                "coefficients must be reduced mod {p}"
            )));
        }
        if !poly_is_irreducible(&supplied, p) {
            return Err(ConstructError::BadIrreducible(format!(
                "polynomial is reducible over Z_{p}"
            )));
        }
        supplied
    };

    let order_wide = (p as u128).checked_pow(k).unwrap_or(u128::MAX);
    let order = ensure_cap(&label, order_wide)?;
    let kk = k as usize;

    let decode = |idx: usize| -> Vec<u64> {
        let mut c = Vec::with_capacity(kk);
        let mut e = idx as u64;
        for _ in 0..kk {
            c.push(e % p);
            e /= p;
        }
        c
    };
    let encode = |c: &[u64]| -> Elem {
        let mut idx: u64 = 0;
        for &v in c.iter().rev() {
            idx = idx * p + v;
        }
        idx as Elem
    };

    let mut add = vec![0 as Elem; order * order];
    let mut mul = vec![0 as Elem; order * order];
    for a in 0..order {
        let ca = decode(a);
        for b in 0..order {
            let cb = decode(b);
            let sum: Vec<u64> = ca.iter().zip(&cb).map(|(&x, &y)| (x + y) % p).collect();
            add[a * order + b] = encode(&sum);
            let mut prod = vec![0u64; 2 * kk - 1];
            for (i, &x) in ca.iter().enumerate() {
                for (j, &y) in cb.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            let mut rem = poly_rem(prod, &irr, p);
            rem.resize(kk, 0);
            mul[a * order + b] = encode(&rem);
        }
    }

    let render = (0..order)
        .map(|idx| {
            let c = decode(idx);
            let mut parts = Vec::new();
            for i in (0..kk).rev() {
                if c[i] == 0 {
                    continue;
                }
                let sym = match i {
                    0 => String::new(),
                    1 => "w".to_string(),
                    _ => format!("w^{i}"),
                };
                if sym.is_empty() {
                    parts.push(c[i].to_string());
                } else if c[i] == 1 {
                    parts.push(sym);
                } else {
                    parts.push(format!("{}{}", c[i], sym));
                }
            }
            if parts.is_empty() {
                "0".into()
            } else {
                parts.join("+")
            }
        })
        .collect();

    finalize(
        label,
        format!("index encodes the coefficient tuple base {p}, little-endian"),
        order,
        0,
        1,
        add,
        mul,
        render,
    )
}

/// Componentwise direct product; element indices run lexicographically over
/// the factor tuple (first factor most significant).
pub fn direct_product(factors: &[Arc<FiniteRing>]) -> Result<Arc<FiniteRing>, ConstructError> {
    if factors.is_empty() {
        return Err(ConstructError::EmptyProduct);
    }
    let label = format!(
        "Prod({})",
        factors
            .iter()
            .map(|r| r.label().to_string())
            .collect::<Vec<_>>()
            .join(",")
    );
    let mut order_wide: u128 = 1;
    for f in factors {
        order_wide = order_wide
            .checked_mul(f.order() as u128)
            .unwrap_or(u128::MAX);
    }
    let order = ensure_cap(&label, order_wide)?;
    let k = factors.len();

    let decode = |idx: usize| -> Vec<Elem> {
        let mut out = vec![0 as Elem; k];
        let mut e = idx;
        for t in (0..k).rev() {
            let fo = factors[t].order();
            out[t] = (e % fo) as Elem;
            e /= fo;
        }
        out
    };
    let encode = |coords: &[Elem]| -> Elem {
        let mut idx: usize = 0;
        for (t, &c) in coords.iter().enumerate() {
            idx = idx * factors[t].order() + c as usize;
        }
        idx as Elem
    };

    let tuples: Vec<Vec<Elem>> = (0..order).map(decode).collect();
    let zero = encode(&factors.iter().map(|f| f.zero()).collect::<Vec<_>>());
    let one = encode(&factors.iter().map(|f| f.one()).collect::<Vec<_>>());

    let mut add = vec![0 as Elem; order * order];
    let mut mul = vec![0 as Elem; order * order];
    let mut acc = vec![0 as Elem; k];
    for x in 0..order {
        for y in 0..order {
            for t in 0..k {
                acc[t] = factors[t].add(tuples[x][t], tuples[y][t]);
            }
            add[x * order + y] = encode(&acc);
            for t in 0..k {
                acc[t] = factors[t].mul(tuples[x][t], tuples[y][t]);
            }
            mul[x * order + y] = encode(&acc);
        }
    }

    let render = (0..order)
        .map(|idx| {
            let parts: Vec<&str> = (0..k).map(|t| factors[t].render(tuples[idx][t])).collect();
            format!("({})", parts.join(","))
        })
        .collect();

    finalize(
        label,
        "tuple of factor elements, lexicographic".into(),
        order,
        zero,
        one,
        add,
        mul,
        render,
    )
}

/// `R[x]/<x^n>`: truncated polynomials, coordinates are the coefficients of
/// `1, x, ..., x^(n-1)`.
pub fn poly_quot(base: &Arc<FiniteRing>, n: usize) -> Result<Arc<FiniteRing>, ConstructError> {
    let identity: Vec<Elem> = base.elements().collect();
    skew_poly_core(base, n, &identity, format!("PolyQuot({},{n})", base.label()))
}

/// `R[x,a]/<x^n>` with `x·r = a(r)·x` for a verified endomorphism `a`.
pub fn skew_poly_quot(
    base: &Arc<FiniteRing>,
    n: usize,
    alpha: &[Elem],
) -> Result<Arc<FiniteRing>, ConstructError> {
    skew_poly_core(
        base,
        n,
        alpha,
        format!("SkewPolyQuot({},{n},explicit)", base.label()),
    )
}

fn skew_poly_core(
    base: &Arc<FiniteRing>,
    n: usize,
    alpha: &[Elem],
    label: String,
) -> Result<Arc<FiniteRing>, ConstructError> {
    if n < 1 {
        return Err(ConstructError::ArgRange {
            what: "truncation degree",
            got: n as u64,
            min: 1,
        });
    }
    check_endomorphism(base, alpha)?;

    // alpha^i for each power occurring in the product rule
    let mut alpha_pows: Vec<Vec<Elem>> = Vec::with_capacity(n);
    alpha_pows.push(base.elements().collect());
    for i in 1..n {
        let prev = &alpha_pows[i - 1];
        alpha_pows.push(base.elements().map(|a| alpha[prev[a as usize] as usize]).collect());
    }

    let mut one_coords = vec![base.zero(); n];
    one_coords[0] = base.one();
    let symbols: Vec<String> = (0..n)
        .map(|i| match i {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        })
        .collect();

    let base_ref = base.clone();
    build_power_ring(
        base,
        n,
        label,
        "coefficients of 1, x, ..., x^(n-1), lexicographic".into(),
        &one_coords,
        move |a, b, out| {
            out.fill(base_ref.zero());
            for i in 0..n {
                if a[i] == base_ref.zero() {
                    continue;
                }
                for j in 0..n - i {
                    let twisted = alpha_pows[i][b[j] as usize];
                    let prod = base_ref.mul(a[i], twisted);
                    out[i + j] = base_ref.add(out[i + j], prod);
                }
            }
            Ok(())
        },
        {
            let base_ref = base.clone();
            move |coords| sum_render(&base_ref, coords, &symbols)
        },
    )
}

/// Checks that `alpha` is a ring endomorphism of `base`.
fn check_endomorphism(base: &FiniteRing, alpha: &[Elem]) -> Result<(), ConstructError> {
    if alpha.len() != base.order() {
        return Err(ConstructError::InvalidEndomorphism(format!(
            "map has {} entries, ring has order {}",
            alpha.len(),
            base.order()
        )));
    }
    if alpha.iter().any(|&v| (v as usize) >= base.order()) {
        return Err(ConstructError::InvalidEndomorphism(
            "map entry out of range".into(),
        ));
    }
    if alpha[base.zero() as usize] != base.zero() {
        return Err(ConstructError::InvalidEndomorphism("zero not fixed".into()));
    }
    if alpha[base.one() as usize] != base.one() {
        return Err(ConstructError::InvalidEndomorphism("one not fixed".into()));
    }
    for a in base.elements() {
        for b in base.elements() {
            if alpha[base.add(a, b) as usize]
                != base.add(alpha[a as usize], alpha[b as usize])
            {
                return Err(ConstructError::InvalidEndomorphism(format!(
                    "additivity fails at ({a},{b})"
                )));
            }
            if alpha[base.mul(a, b) as usize]
                != base.mul(alpha[a as usize], alpha[b as usize])
            {
                return Err(ConstructError::InvalidEndomorphism(format!(
                    "multiplicativity fails at ({a},{b})"
                )));
            }
        }
    }
    Ok(())
}

/// The Frobenius map `a -> a^c` where `c` is the characteristic (additive
/// order of 1).
pub fn frobenius_map(base: &FiniteRing) -> Vec<Elem> {
    let mut c = 1u32;
    let mut acc = base.one();
    while acc != base.zero() {
        acc = base.add(acc, base.one());
        c += 1;
        if c as usize > base.order() + 1 {
            break;
        }
    }
    base.elements().map(|a| base.pow(a, c)).collect()
}

/// The power map `a -> a^j`.
pub fn power_map(base: &FiniteRing, j: u32) -> Vec<Elem> {
    base.elements().map(|a| base.pow(a, j)).collect()
}

/// Trivial extension `T(R, R^k)`: pairs `(r, m)` with
/// `(r,m)(s,n) = (rs, rn + ms)`, both module actions componentwise.
pub fn trivial_extension(
    base: &Arc<FiniteRing>,
    k: usize,
) -> Result<Arc<FiniteRing>, ConstructError> {
    if k < 1 {
        return Err(ConstructError::ArgRange {
            what: "module rank",
            got: k as u64,
            min: 1,
        });
    }
    let label = format!("TrivExt({},{k})", base.label());
    let arity = k + 1;
    let mut one_coords = vec![base.zero(); arity];
    one_coords[0] = base.one();

    let b1 = base.clone();
    let b2 = base.clone();
    build_power_ring(
        base,
        arity,
        label,
        "pair (r, m) with m in R^k, lexicographic".into(),
        &one_coords,
        move |a, b, out| {
            out[0] = b1.mul(a[0], b[0]);
            for t in 1..arity {
                out[t] = b1.add(b1.mul(a[0], b[t]), b1.mul(a[t], b[0]));
            }
            Ok(())
        },
        move |coords| {
            let m: Vec<&str> = coords[1..].iter().map(|&c| b2.render(c)).collect();
            if k == 1 {
                format!("({}, {})", b2.render(coords[0]), m[0])
            } else {
                format!("({}, [{}])", b2.render(coords[0]), m.join(","))
            }
        },
    )
}

fn check_central(base: &FiniteRing, s: Elem) -> Result<(), ConstructError> {
    if (s as usize) >= base.order() {
        return Err(ConstructError::NotCentral(s));
    }
    for x in base.elements() {
        if base.mul(s, x) != base.mul(x, s) {
            return Err(ConstructError::NotCentral(s));
        }
    }
    Ok(())
}

/// The generalized 2x2 matrix ring `K_s(R)` over a central `s`: carrier
/// `R^4` as blocks `(a, x, y, b)` with context products twisted by `s`.
pub fn formal_ks(base: &Arc<FiniteRing>, s: Elem) -> Result<Arc<FiniteRing>, ConstructError> {
    check_central(base, s)?;
    let label = format!("Ks({},{s})", base.label());
    let one_coords = [base.one(), base.zero(), base.zero(), base.one()];

    let b1 = base.clone();
    let b2 = base.clone();
    build_power_ring(
        base,
        4,
        label,
        "blocks (a, x, y, b), lexicographic".into(),
        &one_coords,
        move |p, q, out| {
            let (a1, x1, y1, b1_) = (p[0], p[1], p[2], p[3]);
            let (a2, x2, y2, b2_) = (q[0], q[1], q[2], q[3]);
            out[0] = b1.add(b1.mul(a1, a2), b1.mul(s, b1.mul(x1, y2)));
            out[1] = b1.add(b1.mul(a1, x2), b1.mul(x1, b2_));
            out[2] = b1.add(b1.mul(y1, a2), b1.mul(b1_, y2));
            out[3] = b1.add(b1.mul(s, b1.mul(y1, x2)), b1.mul(b1_, b2_));
            Ok(())
        },
        move |c| {
            format!(
                "[[{},{}],[{},{}]]",
                b2.render(c[0]),
                b2.render(c[1]),
                b2.render(c[2]),
                b2.render(c[3])
            )
        },
    )
}

/// Exponent of `s` attached to the `(i,k,j)` term of the `M_n(R;s)` product;
/// always lands in {0, 1, 2}.
pub fn mns_exponent(i: usize, k: usize, j: usize) -> u32 {
    let d = |a: usize, b: usize| (a == b) as i32;
    (1 + d(i, j) - d(i, k) - d(k, j)) as u32
}

/// The n x n formal matrix ring `M_n(R; s)` over a central `s`:
/// `c_ij = sum_k s^e(i,k,j) a_ik b_kj`.
pub fn formal_mns(
    base: &Arc<FiniteRing>,
    n: usize,
    s: Elem,
) -> Result<Arc<FiniteRing>, ConstructError> {
    if n < 2 {
        return Err(ConstructError::ArgRange {
            what: "matrix size",
            got: n as u64,
            min: 2,
        });
    }
    check_central(base, s)?;
    let label = format!("MnS({n},{},{s})", base.label());
    let s_pow = [base.one(), s, base.mul(s, s)];

    let mut one_coords = vec![base.zero(); n * n];
    for i in 0..n {
        one_coords[i * n + i] = base.one();
    }

    let b1 = base.clone();
    let b2 = base.clone();
    build_power_ring(
        base,
        n * n,
        label,
        "matrix entries row-major, lexicographic".into(),
        &one_coords,
        move |a, b, out| {
            for i in 0..n {
                for j in 0..n {
                    let mut acc = b1.zero();
                    for k in 0..n {
                        let e = mns_exponent(i, k, j) as usize;
                        let prod = b1.mul(s_pow[e], b1.mul(a[i * n + k], b[k * n + j]));
                        acc = b1.add(acc, prod);
                    }
                    out[i * n + j] = acc;
                }
            }
            Ok(())
        },
        move |c| render_matrix(&b2, n, |i, j| c[i * n + j]),
    )
}

pub(crate) fn render_matrix(
    base: &FiniteRing,
    n: usize,
    entry: impl Fn(usize, usize) -> Elem,
) -> String {
    let rows: Vec<String> = (0..n)
        .map(|i| {
            let cells: Vec<&str> = (0..n).map(|j| base.render(entry(i, j))).collect();
            format!("[{}]", cells.join(","))
        })
        .collect();
    format!("[{}]", rows.join(","))
}

/// The corner ring `eRe` for a nonzero idempotent `e`, with identity `e`.
/// Carrier indices are re-enumerated ascending over the parent subset.
pub struct CornerRing {
    pub ring: Arc<FiniteRing>,
    /// corner index -> parent index
    pub embed: Vec<Elem>,
}

pub fn corner_ring(base: &Arc<FiniteRing>, e: Elem) -> Result<CornerRing, ConstructError> {
    if (e as usize) >= base.order() || base.mul(e, e) != e || e == base.zero() {
        return Err(ConstructError::NotIdempotent(e));
    }
    let mut members: Vec<Elem> = base
        .elements()
        .map(|x| base.mul(base.mul(e, x), e))
        .collect();
    members.sort_unstable();
    members.dedup();
    let order = members.len();
    let mut rank = vec![u32::MAX; base.order()];
    for (i, &m) in members.iter().enumerate() {
        rank[m as usize] = i as u32;
    }
    let mut add = vec![0 as Elem; order * order];
    let mut mul = vec![0 as Elem; order * order];
    for (i, &x) in members.iter().enumerate() {
        for (j, &y) in members.iter().enumerate() {
            add[i * order + j] = rank[base.add(x, y) as usize];
            mul[i * order + j] = rank[base.mul(x, y) as usize];
        }
    }
    let render = members
        .iter()
        .map(|&m| base.render(m).to_string())
        .collect();
    let ring = finalize(
        format!("Corner({},{e})", base.label()),
        "parent elements exe, ascending by parent index".into(),
        order,
        rank[base.zero() as usize],
        rank[e as usize],
        add,
        mul,
        render,
    )?;
    Ok(CornerRing {
        ring,
        embed: members,
    })
}

/// Quotient tables by a two-sided ideal: cosets indexed by their minimal
/// representative (ascending), plus the element-to-coset map.
pub(crate) fn quotient_tables(
    base: &FiniteRing,
    ideal: &crate::ring::ElementSubset,
) -> Result<(Arc<FiniteRing>, Vec<Elem>), ConstructError> {
    let n = base.order();
    if ideal.ambient_order() != n {
        return Err(ConstructError::NotAnIdeal(
            "subset belongs to a different ring".into(),
        ));
    }
    if let Err(why) = crate::structure::check_ideal(base, ideal) {
        return Err(ConstructError::NotAnIdeal(why));
    }

    // Ascending scan assigns whole cosets at once, so representatives are
    // minimal within their coset and ascend across cosets.
    let mut coset = vec![u32::MAX; n];
    let mut reps: Vec<Elem> = Vec::new();
    for x in 0..n as Elem {
        if coset[x as usize] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(x);
        for i in ideal.iter() {
            coset[base.add(x, i) as usize] = id;
        }
        debug_assert_eq!(coset[x as usize], id);
    }
    let q = reps.len();
    let mut add = vec![0 as Elem; q * q];
    let mut mul = vec![0 as Elem; q * q];
    for (i, &x) in reps.iter().enumerate() {
        for (j, &y) in reps.iter().enumerate() {
            add[i * q + j] = coset[base.add(x, y) as usize];
            mul[i * q + j] = coset[base.mul(x, y) as usize];
        }
    }
    let render = reps.iter().map(|&r| format!("[{}]", base.render(r))).collect();
    let ring = finalize(
        format!("Quot({},|I|={})", base.label(), ideal.len()),
        "cosets indexed by minimal representative, ascending".into(),
        q,
        coset[base.zero() as usize],
        coset[base.one() as usize],
        add,
        mul,
        render,
    )?;
    Ok((ring, coset))
}

/// Quotient by a two-sided ideal, returning the projection as a `RingHom`.
pub fn quotient_ring(
    base: &Arc<FiniteRing>,
    ideal: &crate::ring::ElementSubset,
) -> Result<(Arc<FiniteRing>, crate::ring::RingHom), ConstructError> {
    let (ring, coset) = quotient_tables(base, ideal)?;
    let projection = crate::ring::RingHom::new(base.clone(), ring.clone(), coset)?;
    Ok((ring, projection))
}
