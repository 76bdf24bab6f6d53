//! The theorem registry: one executable check per result, run over the
//! corpus (plus fixed construction grids for the extension results).

use std::collections::HashSet;

use crate::classify::{self, Property, Witness};
use crate::construct;
use crate::dsl::Expr;
use crate::ring::{Elem, FiniteRing, RingHom};
use crate::structure;

use super::{ResolvedCorpus, TheoremCheckResult};

pub struct TheoremSpec {
    pub id: &'static str,
    pub summary: &'static str,
    pub(crate) run: fn(&ResolvedCorpus) -> Vec<TheoremCheckResult>,
}

/// Registered theorem checks, in fixed execution order.
pub fn registry() -> &'static [TheoremSpec] {
    &[
        TheoremSpec {
            id: "LEM-PROD",
            summary: "a finite direct product is UnitUC iff every factor is",
            run: t_lem_prod,
        },
        TheoremSpec {
            id: "LEM-CONJ",
            summary: "idempotents with e - f a unit satisfy u^-1(1-e)u = f at u = e-f",
            run: t_lem_conj,
        },
        TheoremSpec {
            id: "EX-ELT",
            summary: "idempotents and central nilpotents are UnitUC elements",
            run: t_ex_elt,
        },
        TheoremSpec {
            id: "LEM-ERE",
            summary: "in UnitUC rings, e + er(1-e) is an idempotent conjugate to e",
            run: t_lem_ere,
        },
        TheoremSpec {
            id: "COR-ABEL",
            summary: "abelian UnitUC coincides with uniquely clean",
            run: t_cor_abel,
        },
        TheoremSpec {
            id: "PROP-IMP",
            summary: "no unit pair sums to a nonzero idempotent; quotients by radical ideals stay UnitUC",
            run: t_prop_imp,
        },
        TheoremSpec {
            id: "EX-MAT",
            summary: "full 2x2 matrix rings are never UnitUC",
            run: t_ex_mat,
        },
        TheoremSpec {
            id: "LEM-2J",
            summary: "UnitUC forces 2 into the radical",
            run: t_lem_2j,
        },
        TheoremSpec {
            id: "LEM-EPI",
            summary: "UnitUC transfers along epimorphisms with radical kernel, both ways",
            run: t_lem_epi,
        },
        TheoremSpec {
            id: "PROP-TRI",
            summary: "R, T_n(R) for all n, and T_n(R) for one n are equivalent",
            run: t_prop_tri,
        },
        TheoremSpec {
            id: "THM-BOOL",
            summary: "UnitUC rings are Boolean modulo the radical",
            run: t_thm_bool,
        },
        TheoremSpec {
            id: "COR-NIL",
            summary: "with nil radical: UnitUC = strongly uniquely clean = strongly J-clean = strongly nil-clean",
            run: t_cor_nil,
        },
        TheoremSpec {
            id: "THM-DIV",
            summary: "division/local/semisimple cases reduce to the 2-element field",
            run: t_thm_div,
        },
        TheoremSpec {
            id: "THM-GRP",
            summary: "group rings: UnitUC iff base is UnitUC and the group is a 2-group",
            run: t_thm_grp,
        },
        TheoremSpec {
            id: "THM-CHAR",
            summary: "UnitUC iff exchange and Boolean modulo the radical",
            run: t_thm_char,
        },
        TheoremSpec {
            id: "LEM-CORNER",
            summary: "corners eRe of UnitUC rings are UnitUC",
            run: t_lem_corner,
        },
        TheoremSpec {
            id: "PROP-DF",
            summary: "UnitUC rings are Dedekind finite",
            run: t_prop_df,
        },
        TheoremSpec {
            id: "THM-MOR-PEIRCE",
            summary: "Peirce decomposition: UnitUC iff both corners are and both off-blocks sit in J",
            run: t_thm_mor_peirce,
        },
        TheoremSpec {
            id: "COR-KS",
            summary: "K_s(R) is UnitUC iff R is UnitUC and s lies in J(R)",
            run: t_cor_ks,
        },
        TheoremSpec {
            id: "THM-MNS",
            summary: "M_n(R;s) is UnitUC iff R is UnitUC and s lies in J(R); M_2(R;s) = K_{s^2}(R)",
            run: t_thm_mns,
        },
        TheoremSpec {
            id: "PROP-TEXT",
            summary: "R, T(R,M), T(R,R), R[x]/<x^2> are simultaneously UnitUC",
            run: t_prop_text,
        },
        TheoremSpec {
            id: "PROP-SN",
            summary: "S_n(R) is UnitUC iff R is",
            run: t_prop_sn,
        },
        TheoremSpec {
            id: "PROP-ABC",
            summary: "A_{n,m}(R), B_{n,m}(R), U_n(R) are UnitUC iff R is",
            run: t_prop_abc,
        },
        TheoremSpec {
            id: "LEM-ISO3",
            summary: "A_{n,m} = T_{n,m}, B_{n,m} = S_{n,m} as rings; U_4 matches its displayed shape",
            run: t_lem_iso3,
        },
    ]
}

fn unituc(r: &FiniteRing) -> bool {
    classify::has_property(r, Property::Unituc).holds
}

fn note(text: impl Into<String>) -> Witness {
    Witness::Note { text: text.into() }
}

fn is_division(r: &FiniteRing) -> bool {
    structure::units(r).subset.len() == r.order() - 1
}

/// Idempotents other than 0 and 1.
fn proper_idempotents(r: &FiniteRing) -> Vec<Elem> {
    structure::idempotents(r)
        .iter()
        .filter(|&e| e != r.zero() && e != r.one())
        .collect()
}

fn t_lem_prod(corpus: &ResolvedCorpus) -> Vec<TheoremCheckResult> {
    // fixed sample pairs, reproducible across runs
    const PAIRS: [(&str, &str); 6] = [
        ("Z(2)", "Z(4)"),
        ("Z(2)", "Z(3)"),
        ("Z(4)", "Z(4)"),
        ("Z(2)", "GF(2,2)"),
        ("Z(4)", "Z(8)"),
        ("Z(3)", "GF(2,2)"),
    ];
    let mut results = Vec::new();
    for (a, b) in PAIRS {
        let id = format!("Prod({a},{b})");
        let (Some(ra), Some(rb)) = (corpus.by_expr(a), corpus.by_expr(b)) else {
            results.push(TheoremCheckResult::skip(id, "base ring not in corpus"));
            continue;
        };
        let product = match corpus.store.get(&id) {
            Ok(p) => p,
            Err(e) => {
                results.push(TheoremCheckResult::skip(id, e.to_string()));
                continue;
            }
        };
        let (ra, rb) = (ra.ring.clone(), rb.ring.clone());
        results.push(TheoremCheckResult::timed(id.clone(), || {
            let lhs = unituc(&product);
            let rhs = unituc(&ra) && unituc(&rb);
            if lhs == rhs {
                Ok(None)
            } else {
                Err(note(format!(
                    "unituc({id}) = {lhs} but factors give {rhs}"
                )))
            }
        }));
    }
    results
}

fn t_lem_conj(corpus: &ResolvedCorpus) -> Vec<TheoremCheckResult> {
    corpus
        .entries
        .iter()
        .map(|entry| {
            let r = entry.ring.clone();
            TheoremCheckResult::timed(entry.entry.id.clone(), move || {
                let ids = structure::idempotents(&r);
                let units = structure::units(&r);
                for e in ids.iter() {
                    for f in ids.iter() {
                        let u = r.sub(e, f);
                        if !units.contains(u) {
                            continue;
                        }
                        let u_inv = units.inverse(u).expect("unit table inconsistent");
                        let one_minus_e = r.sub(r.one(), e);
                        let conj = r.mul(r.mul(u_inv, one_minus_e), u);
                        if conj != f {
                            return Err(note(format!(
                                "e={e}, f={f}, u=e-f={u}: u^-1(1-e)u = {conj} != f"
                            )));
                        }
                    }
                }
                Ok(None)
            })
        })
        .collect()
}

fn t_ex_elt(corpus: &ResolvedCorpus) -> Vec<TheoremCheckResult> {
    corpus
        .entries
        .iter()
        .map(|entry| {
            let r = entry.ring.clone();
            TheoremCheckResult::timed(entry.entry.id.clone(), move || {
                for e in structure::idempotents(&r).iter() {
                    if !classify::element_is_unituc(&r, e) {
                        return Err(note(format!("idempotent {e} is not a UnitUC element")));
                    }
                }
                let center = structure::center(&r);
                for q in structure::nilpotents(&r).iter() {
                    if center.contains(q) && !classify::element_is_unituc(&r, q) {
                        return Err(note(format!(
                            "central nilpotent {q} is not a UnitUC element"
                        )));
                    }
                }
                Ok(None)
            })
        })
        .collect()
}

fn t_lem_ere(corpus: &ResolvedCorpus) -> Vec<TheoremCheckResult> {
    corpus
        .entries
        .iter()
        .map(|entry| {
            let r = entry.ring.clone();
            if !unituc(&r) {
                return TheoremCheckResult::skip(entry.entry.id.clone(), "ring is not UnitUC");
            }
            TheoremCheckResult::timed(entry.entry.id.clone(), move || {
                let classes = structure::conjugacy_classes(&r);
                for e in structure::idempotents(&r).iter() {
                    let comp = r.sub(r.one(), e);
                    let class_e = classes.class_of(e);
                    for x in r.elements() {
                        for f in [
                            r.add(e, r.mul(r.mul(e, x), comp)),
                            r.add(e, r.mul(r.mul(comp, x), e)),
                        ] {
                            if r.mul(f, f) != f {
                                return Err(note(format!(
                                    "e={e}, r={x}: shifted element {f} is not idempotent"
                                )));
                            }
                            if classes.class_of(f) != class_e {
                                return Err(note(format!(
                                    "e={e}, r={x}: {f} is not conjugate to e"
                                )));
                            }
                        }
                    }
                }
                Ok(None)
            })
        })
        .collect()
}

fn t_cor_abel(corpus: &ResolvedCorpus) -> Vec<TheoremCheckResult> {
    corpus
        .entries
        .iter()
        .map(|entry| {
            let r = entry.ring.clone();
            TheoremCheckResult::timed(entry.entry.id.clone(), move || {
                let lhs = classify::has_property(&r, Property::Abelian).holds && unituc(&r);
                let rhs = classify::has_property(&r, Property::UniquelyClean).holds;
                if lhs == rhs {
                    Ok(None)
                } else {
                    Err(note(format!("abelian+unituc = {lhs}, uniquely-clean = {rhs}")))
                }
            })
        })
        .collect()
}

fn t_prop_imp(corpus: &ResolvedCorpus) -> Vec<TheoremCheckResult> {
    corpus
        .entries
        .iter()
        .map(|entry| {
            let r = entry.ring.clone();
            if !unituc(&r) {
                return TheoremCheckResult::skip(entry.entry.id.clone(), "ring is not UnitUC");
            }
            TheoremCheckResult::timed(entry.entry.id.clone(), move || {
                let ids = structure::idempotents(&r);
                let units = structure::units(&r);
                // (1)+(2): u + v never hits a nonzero idempotent (1 included)
                for u in units.subset.iter() {
                    for v in units.subset.iter() {
                        let s = r.add(u, v);
                        if s != r.zero() && ids.contains(s) {
                            return Err(note(format!("units {u} + {v} = idempotent {s}")));
                        }
                    }
                }
                // (3)+(4): unit pairs of proper corners eRe
                for e in proper_idempotents(&r) {
                    let corner = construct::corner_ring(&r, e)
                        .expect("proper idempotent gives a corner");
                    let cu = structure::units(&corner.ring);
                    for a in cu.subset.iter() {
                        for b in cu.subset.iter() {
                            let s = r.add(corner.embed[a as usize], corner.embed[b as usize]);
                            if s != r.zero() && ids.contains(s) {
                                return Err(note(format!(
                                    "corner units at e={e} sum to idempotent {s}"
                                )));
                            }
                        }
                    }
                }
                // (5): quotients by ideals inside J stay UnitUC
                let radical = structure::jacobson_radical(&r);
                let mut ideals: Vec<Vec<Elem>> = Vec::new();
                if radical.len() <= 8 {
                    let members = radical.members();
                    let mut seen = HashSet::new();
                    for mask in 0u32..(1 << members.len()) {
                        let gens: Vec<Elem> = members
                            .iter()
                            .enumerate()
                            .filter(|(i, _)| mask & (1 << i) != 0)
                            .map(|(_, &m)| m)
                            .collect();
                        let ideal = structure::ideal_closure(&r, &gens);
                        if seen.insert(ideal.members().to_vec()) {
                            ideals.push(ideal.members().to_vec());
                        }
                    }
                } else {
                    ideals.push(vec![r.zero()]);
                    ideals.push(radical.members().to_vec());
                }
                for members in ideals {
                    let ideal = crate::ring::ElementSubset::from_members(r.order(), members);
                    let (quotient, _) = construct::quotient_ring(&r, &ideal)
                        .expect("ideal closure yields an ideal");
                    if !unituc(&quotient) {
                        return Err(note(format!(
                            "quotient by an ideal of size {} inside J is not UnitUC",
                            ideal.len()
                        )));
                    }
                }
                Ok(None)
            })
        })
        .collect()
}

fn t_ex_mat(corpus: &ResolvedCorpus) -> Vec<TheoremCheckResult> {
    ["M(2,Z(2))", "M(2,Z(4))"]
        .into_iter()
        .map(|expr| {
            let Some(entry) = corpus.by_expr(expr) else {
                return TheoremCheckResult::skip(expr, "matrix ring not in corpus");
            };
            let r = entry.ring.clone();
            let id = entry.entry.id.clone();
            TheoremCheckResult::timed(id, move || {
                let verdict = classify::has_property(&r, Property::Unituc);
                if verdict.holds {
                    return Err(note("full matrix ring classified as UnitUC"));
                }
                if !verdict.replay(&r) {
                    return Err(note("stored witness failed to replay"));
                }
                let display = match &verdict.witness {
                    Some(Witness::NonConjugatePairs { display, .. }) => display.clone(),
                    other => format!("{other:?}"),
                };
                Ok(Some(format!("witness replayed: {display}")))
            })
        })
        .collect()
}

fn t_lem_2j(corpus: &ResolvedCorpus) -> Vec<TheoremCheckResult> {
    corpus
        .entries
        .iter()
        .map(|entry| {
            let r = entry.ring.clone();
            if !unituc(&r) {
                return TheoremCheckResult::skip(entry.entry.id.clone(), "ring is not UnitUC");
            }
            TheoremCheckResult::timed(entry.entry.id.clone(), move || {
                let two = r.add(r.one(), r.one());
                if structure::jacobson_radical(&r).contains(two) {
                    Ok(None)
                } else {
                    Err(note(format!("2 = {two} is outside J")))
                }
            })
        })
        .collect()
}

fn t_lem_epi(corpus: &ResolvedCorpus) -> Vec<TheoremCheckResult> {
    corpus
        .entries
        .iter()
        .map(|entry| {
            let r = entry.ring.clone();
            TheoremCheckResult::timed(entry.entry.id.clone(), move || {
                let radical = structure::jacobson_radical(&r).clone();
                let (quotient, projection) =
                    construct::quotient_ring(&r, &radical).expect("radical is an ideal");
                let report = projection.verify();
                if !report.is_ok() || !report.surjective {
                    return Err(note("radical projection failed to verify"));
                }
                if !report.kernel_in_radical {
                    return Err(note("projection kernel escapes J"));
                }
                let r_unituc = unituc(&r);
                let q_unituc = unituc(&quotient);
                // direction 1: epimorphic images with radical kernel stay UnitUC
                if r_unituc && !q_unituc {
                    return Err(note("R is UnitUC but R/J is not"));
                }
                // direction 2: clean preimages of UnitUC images are UnitUC
                if classify::has_property(&r, Property::Clean).holds && q_unituc && !r_unituc {
                    return Err(note("R clean with UnitUC image, yet not UnitUC"));
                }
                Ok(None)
            })
        })
        .collect()
}

fn t_prop_tri(corpus: &ResolvedCorpus) -> Vec<TheoremCheckResult> {
    // sizes chosen so the largest construction stays at order 4096
    const BASES: [(&str, &[u64]); 4] = [
        ("Z(2)", &[1, 2, 3]),
        ("Z(3)", &[1, 2, 3]),
        ("Z(4)", &[1, 2]),
        ("GF(2,2)", &[1, 2]),
    ];
    let mut results = Vec::new();
    for (base, sizes) in BASES {
        let id = format!("T_n({base})");
        let Some(entry) = corpus.by_expr(base) else {
            results.push(TheoremCheckResult::skip(id, "base ring not in corpus"));
            continue;
        };
        let r = entry.ring.clone();
        let store = &corpus.store;
        results.push(TheoremCheckResult::timed(id, || {
            let expected = unituc(&r);
            for &n in sizes {
                let t = store
                    .get(&format!("T({n},{base})"))
                    .map_err(|e| note(e.to_string()))?;
                let got = unituc(&t);
                if got != expected {
                    return Err(note(format!(
                        "unituc(T_{n}) = {got} but unituc(base) = {expected}"
                    )));
                }
            }
            Ok(None)
        }));
    }
    results
}

fn t_thm_bool(corpus: &ResolvedCorpus) -> Vec<TheoremCheckResult> {
    corpus
        .entries
        .iter()
        .map(|entry| {
            let r = entry.ring.clone();
            if !unituc(&r) {
                return TheoremCheckResult::skip(entry.entry.id.clone(), "ring is not UnitUC");
            }
            TheoremCheckResult::timed(entry.entry.id.clone(), move || {
                let (quotient, _) = structure::radical_quotient(&r);
                match structure::is_boolean(quotient) {
                    Ok(()) => Ok(None),
                    Err(a) => Err(note(format!("R/J has a non-idempotent coset {a}"))),
                }
            })
        })
        .collect()
}

fn t_cor_nil(corpus: &ResolvedCorpus) -> Vec<TheoremCheckResult> {
    corpus
        .entries
        .iter()
        .map(|entry| {
            let r = entry.ring.clone();
            TheoremCheckResult::timed(entry.entry.id.clone(), move || {
                // finite rings have nil radical; make the hypothesis explicit
                let nil = structure::nilpotents(&r);
                if let Some(j) = structure::jacobson_radical(&r).iter().find(|&j| !nil.contains(j))
                {
                    return Err(note(format!("radical element {j} is not nilpotent")));
                }
                let verdicts = [
                    Property::Unituc,
                    Property::StronglyUniquelyClean,
                    Property::StronglyJClean,
                    Property::StronglyNilClean,
                ]
                .map(|p| classify::has_property(&r, p).holds);
                if verdicts.iter().all(|&v| v == verdicts[0]) {
                    Ok(None)
                } else {
                    Err(note(format!(
                        "four-way equivalence broken: unituc={}, suc={}, sjc={}, snc={}",
                        verdicts[0], verdicts[1], verdicts[2], verdicts[3]
                    )))
                }
            })
        })
        .collect()
}

fn t_thm_div(corpus: &ResolvedCorpus) -> Vec<TheoremCheckResult> {
    corpus
        .entries
        .iter()
        .map(|entry| {
            let r = entry.ring.clone();
            TheoremCheckResult::timed(entry.entry.id.clone(), move || {
                let is_uc = unituc(&r);
                if is_division(&r) && is_uc != (r.order() == 2) {
                    return Err(note(format!(
                        "division ring of order {}: unituc = {is_uc}",
                        r.order()
                    )));
                }
                if structure::is_local(&r).is_ok() {
                    let (quotient, _) = structure::radical_quotient(&r);
                    if is_uc != (quotient.order() == 2) {
                        return Err(note(format!(
                            "local ring with residue of order {}: unituc = {is_uc}",
                            quotient.order()
                        )));
                    }
                }
                // semisimple consequence: trivial radical forces Boolean
                if is_uc
                    && structure::jacobson_radical(&r).len() == 1
                    && structure::is_boolean(&r).is_err()
                {
                    return Err(note("UnitUC with J = 0 but not Boolean"));
                }
                Ok(None)
            })
        })
        .collect()
}

fn t_thm_grp(corpus: &ResolvedCorpus) -> Vec<TheoremCheckResult> {
    corpus
        .entries
        .iter()
        .filter_map(|entry| {
            let Expr::GroupRing(base_ast, group_ast) = &entry.ast else {
                return None;
            };
            let rg = entry.ring.clone();
            let id = entry.entry.id.clone();
            let base = match corpus.store.get(&base_ast.to_string()) {
                Ok(b) => b,
                Err(e) => return Some(TheoremCheckResult::skip(id, e.to_string())),
            };
            let group = match crate::dsl::eval_group_expr(group_ast) {
                Ok(g) => g,
                Err(e) => return Some(TheoremCheckResult::skip(id, e.to_string())),
            };
            Some(TheoremCheckResult::timed(id, move || {
                let rg_uc = unituc(&rg);
                let base_uc = unituc(&base);
                let two_group = group.is_two_group();
                // direction 2: UnitUC base and locally finite 2-group lift
                if base_uc && two_group && !rg_uc {
                    return Err(note("UnitUC base and 2-group, but RG is not UnitUC"));
                }
                // direction 1: RG UnitUC forces both conditions
                if rg_uc && !(base_uc && two_group) {
                    return Err(note(format!(
                        "RG is UnitUC but base_uc={base_uc}, two_group={two_group}"
                    )));
                }
                if rg_uc {
                    // en route: the augmentation ideal sits inside J(RG)
                    let parts = construct::group_ring(&base, &group)
                        .expect("corpus group ring rebuilds");
                    debug_assert!(parts.ring.same_tables(&rg));
                    let radical = structure::jacobson_radical(&rg);
                    let escapee: Option<Elem> = parts
                        .augmentation_ideal
                        .iter()
                        .find(|&d| !radical.contains(d));
                    if let Some(d) = escapee {
                        return Err(note(format!(
                            "augmentation ideal element {d} escapes J(RG)"
                        )));
                    }
                }
                Ok(None)
            }))
        })
        .collect()
}

fn t_thm_char(corpus: &ResolvedCorpus) -> Vec<TheoremCheckResult> {
    corpus
        .entries
        .iter()
        .map(|entry| {
            let r = entry.ring.clone();
            TheoremCheckResult::timed(entry.entry.id.clone(), move || {
                let definitional = unituc(&r);
                let oracle = classify::unituc_oracle(&r);
                if definitional == oracle {
                    Ok(None)
                } else {
                    Err(note(format!(
                        "definitional unituc = {definitional}, exchange+Boolean oracle = {oracle}"
                    )))
                }
            })
        })
        .collect()
}

fn t_lem_corner(corpus: &ResolvedCorpus) -> Vec<TheoremCheckResult> {
    corpus
        .entries
        .iter()
        .map(|entry| {
            let r = entry.ring.clone();
            if !unituc(&r) {
                return TheoremCheckResult::skip(entry.entry.id.clone(), "ring is not UnitUC");
            }
            TheoremCheckResult::timed(entry.entry.id.clone(), move || {
                // e = 1 gives back R itself; proper corners are the content
                let proper = proper_idempotents(&r);
                if proper.is_empty() {
                    return Ok(Some("no proper idempotents".to_string()));
                }
                for e in proper {
                    let corner =
                        construct::corner_ring(&r, e).expect("proper idempotent gives a corner");
                    if !unituc(&corner.ring) {
                        return Err(note(format!("corner at e={e} is not UnitUC")));
                    }
                }
                Ok(None)
            })
        })
        .collect()
}

fn t_prop_df(corpus: &ResolvedCorpus) -> Vec<TheoremCheckResult> {
    corpus
        .entries
        .iter()
        .map(|entry| {
            let r = entry.ring.clone();
            if !unituc(&r) {
                return TheoremCheckResult::skip(entry.entry.id.clone(), "ring is not UnitUC");
            }
            TheoremCheckResult::timed(entry.entry.id.clone(), move || {
                let verdict = classify::has_property(&r, Property::DedekindFinite);
                if verdict.holds {
                    Ok(None)
                } else {
                    Err(verdict.witness.clone().unwrap_or_else(|| note("one-sided inverse found")))
                }
            })
        })
        .collect()
}

fn t_thm_mor_peirce(corpus: &ResolvedCorpus) -> Vec<TheoremCheckResult> {
    corpus
        .entries
        .iter()
        .map(|entry| {
            let r = entry.ring.clone();
            TheoremCheckResult::timed(entry.entry.id.clone(), move || {
                let proper = proper_idempotents(&r);
                if proper.is_empty() {
                    return Ok(Some("no proper idempotents; equivalence vacuous".to_string()));
                }
                let r_uc = unituc(&r);
                let radical = structure::jacobson_radical(&r);
                for e in proper {
                    let comp = r.sub(r.one(), e);
                    let c1 = construct::corner_ring(&r, e).expect("corner");
                    let c2 = construct::corner_ring(&r, comp).expect("corner");
                    let off_blocks_in_j = r.elements().all(|x| {
                        radical.contains(r.mul(r.mul(e, x), comp))
                            && radical.contains(r.mul(r.mul(comp, x), e))
                    });
                    let rhs = unituc(&c1.ring) && unituc(&c2.ring) && off_blocks_in_j;
                    if rhs != r_uc {
                        return Err(note(format!(
                            "at e={e}: corners+off-blocks give {rhs}, ring gives {r_uc}"
                        )));
                    }
                }
                Ok(None)
            })
        })
        .collect()
}

fn t_cor_ks(corpus: &ResolvedCorpus) -> Vec<TheoremCheckResult> {
    let mut results = Vec::new();
    for base in ["Z(2)", "Z(4)"] {
        let Some(entry) = corpus.by_expr(base) else {
            results.push(TheoremCheckResult::skip(
                format!("Ks({base},*)"),
                "base ring not in corpus",
            ));
            continue;
        };
        let r = entry.ring.clone();
        for s in structure::center(&r).iter() {
            let id = format!("Ks({base},{s})");
            let ks = match corpus.store.get(&id) {
                Ok(k) => k,
                Err(e) => {
                    results.push(TheoremCheckResult::skip(id, e.to_string()));
                    continue;
                }
            };
            let r = r.clone();
            results.push(TheoremCheckResult::timed(id.clone(), move || {
                let lhs = unituc(&ks);
                let rhs = unituc(&r) && structure::jacobson_radical(&r).contains(s);
                if lhs == rhs {
                    Ok(None)
                } else {
                    Err(note(format!("unituc({id}) = {lhs}, base+radical test = {rhs}")))
                }
            }));
        }
    }
    results
}

fn t_thm_mns(corpus: &ResolvedCorpus) -> Vec<TheoremCheckResult> {
    let mut results = Vec::new();
    // equivalence grid over Z4, n = 2 and (cap permitting) n = 3
    if let Some(entry) = corpus.by_expr("Z(4)") {
        let r = entry.ring.clone();
        for n in [2u64, 3] {
            for s in structure::center(&r).iter() {
                let id = format!("MnS({n},Z(4),{s})");
                let est = crate::dsl::estimated_order(
                    &crate::dsl::parse_expr(&id).expect("grid expr parses"),
                );
                if est > construct::order_cap() as u128 {
                    results.push(TheoremCheckResult::skip(
                        id,
                        format!("order {est} exceeds the cap {}", construct::order_cap()),
                    ));
                    continue;
                }
                let mns = match corpus.store.get(&id) {
                    Ok(m) => m,
                    Err(e) => {
                        results.push(TheoremCheckResult::skip(id, e.to_string()));
                        continue;
                    }
                };
                let r = r.clone();
                results.push(TheoremCheckResult::timed(id.clone(), move || {
                    let lhs = unituc(&mns);
                    let rhs = unituc(&r) && structure::jacobson_radical(&r).contains(s);
                    if lhs == rhs {
                        Ok(None)
                    } else {
                        Err(note(format!("unituc({id}) = {lhs}, base+radical test = {rhs}")))
                    }
                }));
            }
        }
    } else {
        results.push(TheoremCheckResult::skip("MnS(*,Z(4),*)", "Z(4) not in corpus"));
    }
    // the n = 2 identity: M_2(R;s) = K_{s^2}(R) under the identity map
    for base in ["Z(2)", "Z(4)"] {
        let Some(entry) = corpus.by_expr(base) else {
            continue;
        };
        let r = entry.ring.clone();
        for s in structure::center(&r).iter() {
            let id = format!("M2({base};{s})=Ks({base},s^2)");
            let s_sq = r.mul(s, s);
            let mns = corpus.store.get(&format!("MnS(2,{base},{s})"));
            let ks = corpus.store.get(&format!("Ks({base},{s_sq})"));
            let (Ok(mns), Ok(ks)) = (mns, ks) else {
                results.push(TheoremCheckResult::skip(id, "grid construction failed"));
                continue;
            };
            results.push(TheoremCheckResult::timed(id, move || {
                let order = mns.order() as Elem;
                let hom = RingHom::new(mns.clone(), ks.clone(), (0..order).collect())
                    .expect("same carrier size");
                if hom.is_isomorphism() {
                    Ok(None)
                } else {
                    Err(note("identity coordinate map is not an isomorphism"))
                }
            }));
        }
    }
    results
}

fn t_prop_text(corpus: &ResolvedCorpus) -> Vec<TheoremCheckResult> {
    ["Z(2)", "Z(4)", "Z(3)", "GF(2,2)"]
        .into_iter()
        .map(|base| {
            let id = format!("TrivExt-family({base})");
            let Some(entry) = corpus.by_expr(base) else {
                return TheoremCheckResult::skip(id, "base ring not in corpus");
            };
            let r = entry.ring.clone();
            let store = &corpus.store;
            TheoremCheckResult::timed(id, || {
                let expected = unituc(&r);
                for expr in [
                    format!("TrivExt({base},1)"),
                    format!("TrivExt({base},2)"),
                    format!("PolyQuot({base},2)"),
                ] {
                    let ext = store.get(&expr).map_err(|e| note(e.to_string()))?;
                    if unituc(&ext) != expected {
                        return Err(note(format!(
                            "unituc({expr}) != unituc({base}) = {expected}"
                        )));
                    }
                }
                Ok(None)
            })
        })
        .collect()
}

fn t_prop_sn(corpus: &ResolvedCorpus) -> Vec<TheoremCheckResult> {
    ["Z(2)", "Z(4)", "Z(3)"]
        .into_iter()
        .map(|base| {
            let id = format!("S_n({base})");
            let Some(entry) = corpus.by_expr(base) else {
                return TheoremCheckResult::skip(id, "base ring not in corpus");
            };
            let r = entry.ring.clone();
            let store = &corpus.store;
            TheoremCheckResult::timed(id, || {
                let expected = unituc(&r);
                for n in [2u64, 3] {
                    let s = store
                        .get(&format!("Sn({n},{base})"))
                        .map_err(|e| note(e.to_string()))?;
                    if unituc(&s) != expected {
                        return Err(note(format!(
                            "unituc(Sn({n})) != unituc(base) = {expected}"
                        )));
                    }
                }
                Ok(None)
            })
        })
        .collect()
}

fn t_prop_abc(corpus: &ResolvedCorpus) -> Vec<TheoremCheckResult> {
    // (base, n, m, un_size)
    const GRID: [(&str, u64, u64, u64); 5] = [
        ("Z(2)", 2, 2, 3),
        ("Z(4)", 2, 2, 3),
        ("Z(3)", 2, 2, 3),
        ("Z(2)", 2, 3, 4),
        ("Z(2)", 3, 2, 4),
    ];
    let mut results = Vec::new();
    for (base, n, m, un) in GRID {
        let id = format!("ABC({n},{m},{base})+U{un}");
        let Some(entry) = corpus.by_expr(base) else {
            results.push(TheoremCheckResult::skip(id, "base ring not in corpus"));
            continue;
        };
        let r = entry.ring.clone();
        let store = &corpus.store;
        results.push(TheoremCheckResult::timed(id, || {
            let expected = unituc(&r);
            for expr in [
                format!("Anm({n},{m},{base})"),
                format!("Bnm({n},{m},{base})"),
                format!("Un({un},{base})"),
            ] {
                let ext = store.get(&expr).map_err(|e| note(e.to_string()))?;
                if unituc(&ext) != expected {
                    return Err(note(format!(
                        "unituc({expr}) != unituc({base}) = {expected}"
                    )));
                }
            }
            Ok(None)
        }));
    }
    // the order-4096 U_4(Z(4)) sits in the corpus already
    if let (Some(u4), Some(z4)) = (corpus.by_expr("Un(4,Z(4))"), corpus.by_expr("Z(4)")) {
        let (u4, z4) = (u4.ring.clone(), z4.ring.clone());
        results.push(TheoremCheckResult::timed("ABC-U4(Z(4))", move || {
            if unituc(&u4) == unituc(&z4) {
                Ok(None)
            } else {
                Err(note("unituc(U_4(Z4)) != unituc(Z4)"))
            }
        }));
    }
    results
}

fn t_lem_iso3(corpus: &ResolvedCorpus) -> Vec<TheoremCheckResult> {
    let mut results = Vec::new();
    for base in ["Z(2)", "Z(4)"] {
        if corpus.by_expr(base).is_none() {
            results.push(TheoremCheckResult::skip(
                format!("iso-grid({base})"),
                "base ring not in corpus",
            ));
            continue;
        }
        // (3,3) for psi over Z(4) lands above the cap and reports skipped
        for (n, m) in [(2u64, 2u64), (2, 3), (3, 2), (3, 3)] {
            // phi: commutative word algebra onto block Toeplitz matrices
            let id = format!("phi({n},{m},{base})");
            let a = corpus.store.get(&format!("Anm({n},{m},{base})"));
            let t = corpus.store.get(&format!("Tnm({n},{m},{base})"));
            results.push(match (a, t) {
                (Ok(a), Ok(t)) => TheoremCheckResult::timed(id, move || {
                    let order = a.order() as Elem;
                    let hom = RingHom::new(a.clone(), t.clone(), (0..order).collect())
                        .map_err(|e| note(e.to_string()))?;
                    if hom.is_isomorphism() {
                        Ok(None)
                    } else {
                        Err(note("phi (identity on coordinates) is not an isomorphism"))
                    }
                }),
                (a, t) => {
                    let err = a.err().map(|e| e.to_string()).or_else(|| t.err().map(|e| e.to_string()));
                    TheoremCheckResult::skip(id, err.unwrap_or_default())
                }
            });
            // psi: noncommutative word algebra onto the stripe pattern
            let id = format!("psi({n},{m},{base})");
            let b = corpus.store.get(&format!("Bnm({n},{m},{base})"));
            let s = corpus.store.get(&format!("Snm({n},{m},{base})"));
            results.push(match (b, s) {
                (Ok(b), Ok(s)) => TheoremCheckResult::timed(id, move || {
                    let order = b.order() as Elem;
                    let hom = RingHom::new(b.clone(), s.clone(), (0..order).collect())
                        .map_err(|e| note(e.to_string()))?;
                    if hom.is_isomorphism() {
                        Ok(None)
                    } else {
                        Err(note("psi (identity on coordinates) is not an isomorphism"))
                    }
                }),
                (b, s) => {
                    let err = b.err().map(|e| e.to_string()).or_else(|| s.err().map(|e| e.to_string()));
                    TheoremCheckResult::skip(id, err.unwrap_or_default())
                }
            });
        }
    }
    // U_4 shape check: the displayed 4x4 pattern with rows
    // (a1,a2,a3,a4 / a1,a5,a6 / a1,a2 / a1)
    if let Ok(z2) = corpus.store.get("Z(2)") {
        results.push(TheoremCheckResult::timed("U4-shape(Z(2))", move || {
            let shape = vec![
                construct::MatrixPattern::new("a1", vec![(0, 0), (1, 1), (2, 2), (3, 3)]),
                construct::MatrixPattern::new("a2", vec![(0, 1), (2, 3)]),
                construct::MatrixPattern::new("a3", vec![(0, 2)]),
                construct::MatrixPattern::new("a4", vec![(0, 3)]),
                construct::MatrixPattern::new("a5", vec![(1, 2)]),
                construct::MatrixPattern::new("a6", vec![(1, 3)]),
            ];
            let displayed =
                construct::matrix_pattern_ring(&z2, 4, shape, "U4-display(Z(2))".into())
                    .map_err(|e| note(e.to_string()))?;
            let u4 = construct::family_un(4, &z2).map_err(|e| note(e.to_string()))?;
            let order = u4.order() as Elem;
            let hom = RingHom::new(u4, displayed, (0..order).collect())
                .map_err(|e| note(e.to_string()))?;
            if hom.is_isomorphism() {
                Ok(None)
            } else {
                Err(note("U_4 does not match its displayed shape"))
            }
        }));
    }
    results
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{CorpusEntry, ResolvedCorpus, ResolvedEntry, RingStore};
    use std::sync::Arc;

    #[test]
    fn registry_is_well_formed() {
        let reg = registry();
        assert!(reg.len() >= 22);
        let mut ids: Vec<&str> = reg.iter().map(|t| t.id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), reg.len(), "duplicate theorem ids");
    }

    #[test]
    fn conjugation_identity_fails_on_a_corrupted_ring() {
        // Z2 x Z2 tables with mul[(0,1)][(1,1)] corrupted to (0,0): the
        // computation u^-1 (1-e) u with u = e - f lands on the bad entry.
        let n = 4usize;
        let mut add = vec![0u32; 16];
        let mut mul = vec![0u32; 16];
        for a in 0..4u32 {
            for b in 0..4u32 {
                let (a1, a2) = (a >> 1, a & 1);
                let (b1, b2) = (b >> 1, b & 1);
                add[(a * 4 + b) as usize] = ((a1 ^ b1) << 1) | (a2 ^ b2);
                mul[(a * 4 + b) as usize] = ((a1 & b1) << 1) | (a2 & b2);
            }
        }
        mul[1 * 4 + 3] = 0; // corrupt (0,1)·(1,1)
        let ring = crate::ring::FiniteRing::assemble(
            "corrupted",
            "",
            n,
            0,
            3,
            add,
            mul,
            (0..n).map(|i| i.to_string()).collect(),
        )
        .unwrap();
        let ring = Arc::new(ring);

        let corpus = ResolvedCorpus {
            entries: vec![ResolvedEntry {
                entry: CorpusEntry::new("corrupted", "Prod(Z(2),Z(2))"),
                ast: crate::dsl::parse_expr("Prod(Z(2),Z(2))").unwrap(),
                ring: ring.clone(),
            }],
            store: RingStore::new(),
        };
        let results = crate::verify::run_theorem("LEM-CONJ", &corpus).unwrap();
        assert_eq!(results.len(), 1);
        assert!(!results[0].passed);
        assert!(results[0].witness.is_some());
        // replay the violation through table arithmetic alone:
        // e = (1,0) = 2, f = (0,1) = 1, u = e - f = 3 = 1 (the unit)
        let (e, f) = (2u32, 1u32);
        let u = ring.sub(e, f);
        let u_inv = structure::units(&ring).inverse(u).unwrap();
        let conj = ring.mul(ring.mul(u_inv, ring.sub(ring.one(), e)), u);
        assert_ne!(conj, f);
    }
}
