//! Matrix subrings cut out by coordinate patterns, and structure-constant
//! rings on monomial bases.
//!
//! A pattern assigns each free coordinate a set of matrix positions (tied
//! positions share one value; uncovered positions are zero). Closure under
//! multiplication is asserted while the table is filled: if any product
//! leaves the coordinate span, construction fails with the offending pair.

use std::sync::Arc;

use super::{ensure_cap, finalize, order_cap, pack_coords, render_matrix, ConstructError};
use crate::ring::{Elem, FiniteRing};

/// One free coordinate and the matrix positions it occupies.
#[derive(Debug, Clone)]
pub struct MatrixPattern {
    pub name: String,
    pub positions: Vec<(usize, usize)>,
}

impl MatrixPattern {
    pub fn new(name: impl Into<String>, positions: Vec<(usize, usize)>) -> MatrixPattern {
        MatrixPattern {
            name: name.into(),
            positions,
        }
    }
}

/// Builds the subring of `M_n(R)` spanned by the given coordinate pattern.
/// Coordinates enumerate lexicographically in the order given.
pub fn matrix_pattern_ring(
    base: &Arc<FiniteRing>,
    n: usize,
    coords: Vec<MatrixPattern>,
    label: String,
) -> Result<Arc<FiniteRing>, ConstructError> {
    let k = coords.len();
    let bo = base.order();
    let zero = base.zero();

    // coverage map: position -> coordinate index
    let mut owner = vec![usize::MAX; n * n];
    for (ci, c) in coords.iter().enumerate() {
        debug_assert!(!c.positions.is_empty(), "empty coordinate {}", c.name);
        for &(r, col) in &c.positions {
            debug_assert!(r < n && col < n && owner[r * n + col] == usize::MAX);
            owner[r * n + col] = ci;
        }
    }

    let order_wide = (bo as u128)
        .checked_pow(k as u32)
        .ok_or_else(|| ConstructError::CapExceeded {
            label: label.clone(),
            order: u128::MAX,
            cap: order_cap(),
        })?;
    let order = ensure_cap(&label, order_wide)?;

    // Every element's full matrix, row-major.
    let mut mats = vec![zero; order * n * n];
    {
        let mut tuple = vec![0 as Elem; k];
        for idx in 0..order {
            super::unpack_coords(bo, k, idx as Elem, &mut tuple);
            let mat = &mut mats[idx * n * n..(idx + 1) * n * n];
            for (ci, c) in coords.iter().enumerate() {
                for &(r, col) in &c.positions {
                    mat[r * n + col] = tuple[ci];
                }
            }
        }
    }
    let mat_of = |idx: usize| &mats[idx * n * n..(idx + 1) * n * n];

    // Reads a full matrix back into coordinates; None if it left the span.
    let from_matrix = |mat: &[Elem]| -> Option<Vec<Elem>> {
        let mut tuple = vec![zero; k];
        for (ci, c) in coords.iter().enumerate() {
            tuple[ci] = mat[c.positions[0].0 * n + c.positions[0].1];
        }
        for pos in 0..n * n {
            let want = if owner[pos] == usize::MAX {
                zero
            } else {
                tuple[owner[pos]]
            };
            if mat[pos] != want {
                return None;
            }
        }
        Some(tuple)
    };

    // identity matrix must live in the span
    let mut ident = vec![zero; n * n];
    for i in 0..n {
        ident[i * n + i] = base.one();
    }
    let one_tuple = from_matrix(&ident).ok_or_else(|| ConstructError::ClosureViolation {
        label: label.clone(),
        lhs: 0,
        rhs: 0,
    })?;
    let one = pack_coords(bo, &one_tuple);

    let mut add = vec![0 as Elem; order * order];
    let mut mul = vec![0 as Elem; order * order];
    let mut prod = vec![zero; n * n];
    let mut xt = vec![0 as Elem; k];
    let mut yt = vec![0 as Elem; k];
    let mut acc = vec![0 as Elem; k];
    for x in 0..order {
        super::unpack_coords(bo, k, x as Elem, &mut xt);
        for y in 0..order {
            super::unpack_coords(bo, k, y as Elem, &mut yt);
            // addition is coordinatewise for linear patterns
            for t in 0..k {
                acc[t] = base.add(xt[t], yt[t]);
            }
            add[x * order + y] = pack_coords(bo, &acc);

            let (mx, my) = (mat_of(x), mat_of(y));
            for i in 0..n {
                for j in 0..n {
                    let mut s = zero;
                    for l in 0..n {
                        s = base.add(s, base.mul(mx[i * n + l], my[l * n + j]));
                    }
                    prod[i * n + j] = s;
                }
            }
            match from_matrix(&prod) {
                Some(tuple) => mul[x * order + y] = pack_coords(bo, &tuple),
                None => {
                    return Err(ConstructError::ClosureViolation {
                        label,
                        lhs: x as Elem,
                        rhs: y as Elem,
                    })
                }
            }
        }
    }

    let render: Vec<String> = (0..order)
        .map(|idx| {
            let mat = mat_of(idx);
            render_matrix(base, n, |i, j| mat[i * n + j])
        })
        .collect();

    let zero_idx = pack_coords(bo, &vec![zero; k]);
    finalize(
        label,
        format!(
            "coords ({}), lexicographic",
            coords
                .iter()
                .map(|c| c.name.clone())
                .collect::<Vec<_>>()
                .join(",")
        ),
        order,
        zero_idx,
        one,
        add,
        mul,
        render,
    )
}

/// Full matrix ring `M_n(R)`, entries row-major.
pub fn matrix_ring(n: usize, base: &Arc<FiniteRing>) -> Result<Arc<FiniteRing>, ConstructError> {
    if n < 1 {
        return Err(ConstructError::ArgRange {
            what: "matrix size",
            got: n as u64,
            min: 1,
        });
    }
    let coords = (0..n)
        .flat_map(|i| (0..n).map(move |j| MatrixPattern::new(format!("m{i}{j}"), vec![(i, j)])))
        .collect();
    matrix_pattern_ring(base, n, coords, format!("M({n},{})", base.label()))
}

/// Upper triangular matrices `T_n(R)`, free entries on and above the
/// diagonal, row-major.
pub fn upper_triangular(
    n: usize,
    base: &Arc<FiniteRing>,
) -> Result<Arc<FiniteRing>, ConstructError> {
    if n < 1 {
        return Err(ConstructError::ArgRange {
            what: "matrix size",
            got: n as u64,
            min: 1,
        });
    }
    let coords = (0..n)
        .flat_map(|i| (i..n).map(move |j| MatrixPattern::new(format!("a{i}{j}"), vec![(i, j)])))
        .collect();
    matrix_pattern_ring(base, n, coords, format!("T({n},{})", base.label()))
}

/// `S_n(R)`: upper triangular with constant diagonal. Coordinates: the
/// diagonal value, then the strict-upper entries row-major.
pub fn constant_diag_triangular(
    n: usize,
    base: &Arc<FiniteRing>,
) -> Result<Arc<FiniteRing>, ConstructError> {
    if n < 1 {
        return Err(ConstructError::ArgRange {
            what: "matrix size",
            got: n as u64,
            min: 1,
        });
    }
    let mut coords = vec![MatrixPattern::new("a", (0..n).map(|i| (i, i)).collect())];
    for i in 0..n {
        for j in i + 1..n {
            coords.push(MatrixPattern::new(format!("b{i}{j}"), vec![(i, j)]));
        }
    }
    matrix_pattern_ring(base, n, coords, format!("Sn({n},{})", base.label()))
}

/// `T_{n,m}(R)`: block-diagonal pair of upper-triangular Toeplitz blocks
/// (sizes n and m) sharing one diagonal value. Coordinates:
/// `a, b_1..b_{n-1}, c_1..c_{m-1}`.
pub fn family_tnm(
    n: usize,
    m: usize,
    base: &Arc<FiniteRing>,
) -> Result<Arc<FiniteRing>, ConstructError> {
    for (what, v) in [("block size n", n), ("block size m", m)] {
        if v < 1 {
            return Err(ConstructError::ArgRange {
                what,
                got: v as u64,
                min: 1,
            });
        }
    }
    let size = n + m;
    let mut coords = vec![MatrixPattern::new("a", (0..size).map(|i| (i, i)).collect())];
    for t in 1..n {
        coords.push(MatrixPattern::new(
            format!("b{t}"),
            (0..n - t).map(|r| (r, r + t)).collect(),
        ));
    }
    for t in 1..m {
        coords.push(MatrixPattern::new(
            format!("c{t}"),
            (0..m - t).map(|r| (n + r, n + r + t)).collect(),
        ));
    }
    matrix_pattern_ring(base, size, coords, format!("Tnm({n},{m},{})", base.label()))
}

/// `S_{n,m}(R)` in `T_{n+m-1}(R)`: the matrix image of the monomial basis
/// `y^i x^j` (0 <= i < m, 0 <= j < n) of `B_{n,m}(R)` under `psi`.
/// Coordinates are declared in that basis order, so `psi` is the identity
/// on packed indices:
///   (0,0) -> the constant diagonal;
///   (i,0) -> the Toeplitz stripe `(r, r+i)` for `r <= m-1-i`  (powers of y);
///   (0,j) -> the Toeplitz stripe `(r, r+j)` for `r >= m-1`     (powers of x);
///   (i,j) -> the single free cell `(m-1-i, m-1+j)`.
pub fn family_snm(
    n: usize,
    m: usize,
    base: &Arc<FiniteRing>,
) -> Result<Arc<FiniteRing>, ConstructError> {
    for (what, v) in [("index n", n), ("index m", m)] {
        if v < 1 {
            return Err(ConstructError::ArgRange {
                what,
                got: v as u64,
                min: 1,
            });
        }
    }
    let size = n + m - 1;
    let mut coords = Vec::with_capacity(n * m);
    for i in 0..m {
        for j in 0..n {
            let pattern = match (i, j) {
                (0, 0) => MatrixPattern::new("a", (0..size).map(|r| (r, r)).collect()),
                (_, 0) => MatrixPattern::new(
                    format!("y{i}"),
                    (0..=m - 1 - i).map(|r| (r, r + i)).collect(),
                ),
                (0, _) => MatrixPattern::new(
                    format!("x{j}"),
                    (m - 1..size - j).map(|r| (r, r + j)).collect(),
                ),
                (_, _) => MatrixPattern::new(format!("c{i}{j}"), vec![(m - 1 - i, m - 1 + j)]),
            };
            coords.push(pattern);
        }
    }
    matrix_pattern_ring(base, size, coords, format!("Snm({n},{m},{})", base.label()))
}

/// `U_n(R)`: upper triangular with constant diagonal whose rows alternate
/// between two stripe families. Row `r` carries `b_t` at `(r, r+t)` when `r`
/// is even and `c_t` when `r` is odd. Coordinates:
/// `a, b_1..b_{n-1}, c_1..c_{n-2}`.
pub fn family_un(n: usize, base: &Arc<FiniteRing>) -> Result<Arc<FiniteRing>, ConstructError> {
    if n < 2 {
        return Err(ConstructError::ArgRange {
            what: "matrix size",
            got: n as u64,
            min: 2,
        });
    }
    let mut coords = vec![MatrixPattern::new("a", (0..n).map(|i| (i, i)).collect())];
    for t in 1..n {
        let cells: Vec<(usize, usize)> = (0..n - t).filter(|r| r % 2 == 0).map(|r| (r, r + t)).collect();
        coords.push(MatrixPattern::new(format!("b{t}"), cells));
    }
    for t in 1..n - 1 {
        let cells: Vec<(usize, usize)> = (0..n - t).filter(|r| r % 2 == 1).map(|r| (r, r + t)).collect();
        coords.push(MatrixPattern::new(format!("c{t}"), cells));
    }
    matrix_pattern_ring(base, n, coords, format!("Un({n},{})", base.label()))
}

/// Structure-constant ring on a monomial basis: each basis product is either
/// another basis element or zero.
fn monomial_ring(
    base: &Arc<FiniteRing>,
    names: Vec<String>,
    prod: Vec<Option<usize>>,
    label: String,
    coord_doc: String,
    one_basis: usize,
) -> Result<Arc<FiniteRing>, ConstructError> {
    let dim = names.len();
    debug_assert_eq!(prod.len(), dim * dim);
    let mut one_coords = vec![base.zero(); dim];
    one_coords[one_basis] = base.one();

    let b1 = base.clone();
    let b2 = base.clone();
    let symbols = names.clone();
    super::build_power_ring(
        base,
        dim,
        label,
        coord_doc,
        &one_coords,
        move |a, b, out| {
            out.fill(b1.zero());
            for u in 0..dim {
                if a[u] == b1.zero() {
                    continue;
                }
                for v in 0..dim {
                    if let Some(w) = prod[u * dim + v] {
                        out[w] = b1.add(out[w], b1.mul(a[u], b[v]));
                    }
                }
            }
            Ok(())
        },
        move |coords| {
            let syms: Vec<String> = symbols
                .iter()
                .map(|s| if s == "1" { String::new() } else { s.clone() })
                .collect();
            super::sum_render(&b2, coords, &syms)
        },
    )
}

/// `A_{n,m}(R) = R[x,y | x^n = xy = y^m = 0]`: commutative, basis
/// `1, x..x^(n-1), y..y^(m-1)`.
pub fn family_anm(
    n: usize,
    m: usize,
    base: &Arc<FiniteRing>,
) -> Result<Arc<FiniteRing>, ConstructError> {
    for (what, v) in [("exponent n", n), ("exponent m", m)] {
        if v < 2 {
            return Err(ConstructError::ArgRange {
                what,
                got: v as u64,
                min: 2,
            });
        }
    }
    let dim = n + m - 1;
    let mut names = vec!["1".to_string()];
    for i in 1..n {
        names.push(if i == 1 { "x".into() } else { format!("x^{i}") });
    }
    for j in 1..m {
        names.push(if j == 1 { "y".into() } else { format!("y^{j}") });
    }
    // basis kinds: 0 -> 1, 1..n-1 -> x^i, n-1+j -> y^j
    let kind = |t: usize| -> (usize, usize) {
        if t == 0 {
            (0, 0)
        } else if t < n {
            (t, 0) // x^t
        } else {
            (0, t - (n - 1)) // y^(t-n+1)
        }
    };
    let index_of = |xd: usize, yd: usize| -> Option<usize> {
        match (xd, yd) {
            (0, 0) => Some(0),
            (x, 0) if x < n => Some(x),
            (0, y) if y < m => Some(n - 1 + y),
            _ => None,
        }
    };
    let mut prod = vec![None; dim * dim];
    for u in 0..dim {
        for v in 0..dim {
            let (xu, yu) = kind(u);
            let (xv, yv) = kind(v);
            // xy = yx = 0 kills any mixed product
            prod[u * dim + v] = if (xu + xv > 0) && (yu + yv > 0) {
                None
            } else {
                index_of(xu + xv, yu + yv)
            };
        }
    }
    monomial_ring(
        base,
        names,
        prod,
        format!("Anm({n},{m},{})", base.label()),
        "coefficients on basis 1, x.., y.., lexicographic".into(),
        0,
    )
}

/// `B_{n,m}(R) = R<x,y | x^n = xy = y^m = 0>`: basis `y^i x^j`
/// (0 <= i < m, 0 <= j < n), lexicographic over (i, j).
pub fn family_bnm(
    n: usize,
    m: usize,
    base: &Arc<FiniteRing>,
) -> Result<Arc<FiniteRing>, ConstructError> {
    for (what, v) in [("exponent n", n), ("exponent m", m)] {
        if v < 2 {
            return Err(ConstructError::ArgRange {
                what,
                got: v as u64,
                min: 2,
            });
        }
    }
    let dim = n * m;
    let mono = |i: usize, j: usize| -> String {
        match (i, j) {
            (0, 0) => "1".into(),
            (0, 1) => "x".into(),
            (0, j) => format!("x^{j}"),
            (1, 0) => "y".into(),
            (i, 0) => format!("y^{i}"),
            (i, j) => {
                let ys = if i == 1 { "y".into() } else { format!("y^{i}") };
                let xs = if j == 1 { "x".into() } else { format!("x^{j}") };
                format!("{ys}{xs}")
            }
        }
    };
    let names: Vec<String> = (0..m)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| mono(i, j))
        .collect();
    let mut prod = vec![None; dim * dim];
    for a in 0..m {
        for b in 0..n {
            for c in 0..m {
                for d in 0..n {
                    let u = a * n + b;
                    let v = c * n + d;
                    // (y^a x^b)(y^c x^d): xy = 0 when both inner exponents
                    // are positive; otherwise concatenate and truncate.
                    prod[u * dim + v] = if b > 0 && c > 0 {
                        None
                    } else if a + c < m && b + d < n {
                        Some((a + c) * n + (b + d))
                    } else {
                        None
                    };
                }
            }
        }
    }
    monomial_ring(
        base,
        names,
        prod,
        format!("Bnm({n},{m},{})", base.label()),
        "coefficients on basis y^i x^j, lexicographic over (i,j)".into(),
        0,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{pack_coords, zmod};
    use crate::ring::RingHom;
    use crate::structure;

    #[test]
    fn triangular_and_matrix_sizes() {
        let z2 = zmod(2).unwrap();
        let z4 = zmod(4).unwrap();
        let m1 = matrix_ring(1, &z4).unwrap();
        assert!(m1.same_tables(&z4));
        let m2 = matrix_ring(2, &z2).unwrap();
        assert_eq!(m2.order(), 16);
        assert_eq!(structure::units(&m2).subset.len(), 6); // |GL_2(F_2)|
        let m2z4 = matrix_ring(2, &z4).unwrap();
        assert_eq!(m2z4.order(), 256);

        let t2 = upper_triangular(2, &z2).unwrap();
        assert_eq!(t2.order(), 8);
        // units of T2(Z2): both diagonal entries 1
        let units = structure::units(&t2);
        assert_eq!(units.subset.len(), 2);
        let t1 = upper_triangular(1, &z4).unwrap();
        assert!(t1.same_tables(&z4));
    }

    #[test]
    fn constant_diagonal_family() {
        let z2 = zmod(2).unwrap();
        let s3 = constant_diag_triangular(3, &z2).unwrap();
        assert_eq!(s3.order(), 16); // 1 diagonal + 3 strict-upper coords
        let s1 = constant_diag_triangular(1, &z2).unwrap();
        assert!(s1.same_tables(&z2));

        // S_2(R) = T(R, R) under the identity coordinate map
        let s2 = constant_diag_triangular(2, &z2).unwrap();
        let te = crate::construct::trivial_extension(&z2, 1).unwrap();
        let h = RingHom::new(s2, te, (0..4).collect()).unwrap();
        assert!(h.is_isomorphism());
    }

    #[test]
    fn tnm_snm_un_shapes() {
        let z2 = zmod(2).unwrap();
        assert_eq!(family_tnm(2, 2, &z2).unwrap().order(), 8); // a, b1, c1
        assert_eq!(family_snm(2, 2, &z2).unwrap().order(), 16); // dim nm = 4
        let u4 = family_un(4, &z2).unwrap();
        assert_eq!(u4.order(), 64); // a, b1..b3, c1..c2
    }

    #[test]
    fn un4_matches_displayed_shape() {
        // the displayed 4x4 pattern: rows (a1,a2,a3,a4 / a1,a5,a6 / a1,a2 / a1)
        let z2 = zmod(2).unwrap();
        let shape = vec![
            MatrixPattern::new("a1", vec![(0, 0), (1, 1), (2, 2), (3, 3)]),
            MatrixPattern::new("a2", vec![(0, 1), (2, 3)]),
            MatrixPattern::new("a3", vec![(0, 2)]),
            MatrixPattern::new("a4", vec![(0, 3)]),
            MatrixPattern::new("a5", vec![(1, 2)]),
            MatrixPattern::new("a6", vec![(1, 3)]),
        ];
        let displayed = matrix_pattern_ring(&z2, 4, shape, "U4-display".into()).unwrap();
        let u4 = family_un(4, &z2).unwrap();
        let h = RingHom::new(u4, displayed, (0..64).collect()).unwrap();
        assert!(h.is_isomorphism());
    }

    #[test]
    fn anm_bnm_relations() {
        let z2 = zmod(2).unwrap();
        let b = family_bnm(2, 2, &z2).unwrap();
        // basis y^i x^j over (i,j): 1 -> 0, x -> 1, y -> 2, yx -> 3
        let x = pack_coords(2, &[0, 1, 0, 0]);
        let y = pack_coords(2, &[0, 0, 1, 0]);
        let yx = pack_coords(2, &[0, 0, 0, 1]);
        assert_eq!(b.mul(y, x), yx); // yx != 0
        assert_eq!(b.mul(x, y), b.zero()); // xy = 0

        let a = family_anm(2, 2, &z2).unwrap();
        assert_eq!(a.order(), 8); // dim n+m-1 = 3
        let ax = pack_coords(2, &[0, 1, 0]);
        let ay = pack_coords(2, &[0, 0, 1]);
        assert_eq!(a.mul(ax, ay), a.zero());
        assert_eq!(a.mul(ay, ax), a.zero());
    }

    #[test]
    fn phi_and_psi_are_isomorphisms_at_2_2() {
        let z2 = zmod(2).unwrap();
        // phi: A_{n,m} -> T_{n,m}, coordinates already aligned
        let a = family_anm(2, 2, &z2).unwrap();
        let t = family_tnm(2, 2, &z2).unwrap();
        let order = a.order();
        let phi = RingHom::new(a, t, (0..order as Elem).collect()).unwrap();
        assert!(phi.is_isomorphism());

        // psi: B_{n,m} -> S_{n,m}, coordinates already aligned
        let b = family_bnm(2, 2, &z2).unwrap();
        let s = family_snm(2, 2, &z2).unwrap();
        let order = b.order();
        let psi = RingHom::new(b, s, (0..order as Elem).collect()).unwrap();
        assert!(psi.is_isomorphism());
    }
}
