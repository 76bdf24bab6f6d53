//! End-to-end acceptance suite. Runs every criterion in order and prints one
//! pass/fail line per criterion (visible with `-- --nocapture`).

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

use finring::classify::{self, Property};
use finring::dsl;
use finring::ring::{Elem, FiniteRing, RingHom};
use finring::structure;
use finring::verify::{self, ResolvedCorpus};

struct Shared {
    corpus: ResolvedCorpus,
    resolve_ms: u128,
    report: std::sync::OnceLock<verify::SummaryReport>,
}

impl Shared {
    /// The single-job full-suite report, computed once.
    fn report(&self) -> &verify::SummaryReport {
        self.report.get_or_init(|| verify::run_all(&self.corpus, 1))
    }
}

fn setup() -> Shared {
    let start = Instant::now();
    let corpus = ResolvedCorpus::resolve(verify::default_corpus()).expect("default corpus builds");
    Shared {
        corpus,
        resolve_ms: start.elapsed().as_millis(),
        report: std::sync::OnceLock::new(),
    }
}

#[test]
fn acceptance_criteria() {
    let shared = setup();
    let criteria: Vec<(&str, Box<dyn Fn(&Shared)>)> = vec![
        ("criterion 01: ring-axiom suite over the corpus", Box::new(criterion_01)),
        ("criterion 02: definitional/oracle agreement", Box::new(criterion_02)),
        ("criterion 03: four-way verdict equivalence", Box::new(criterion_03)),
        ("criterion 04: classification fixtures with replayable witnesses", Box::new(criterion_04)),
        ("criterion 05: theorem suite green and job-count independent", Box::new(criterion_05)),
        ("criterion 06: isomorphism checks", Box::new(criterion_06)),
        ("criterion 07: radical post-verification and conjugacy relation", Box::new(criterion_07)),
        ("criterion 08: implication audit empty", Box::new(criterion_08)),
        ("criterion 09: persistence round-trip", Box::new(criterion_09)),
        ("criterion 10: parser round-trip and error exit codes", Box::new(criterion_10)),
    ];
    let mut failures = Vec::new();
    for (name, run) in criteria {
        match catch_unwind(AssertUnwindSafe(|| run(&shared))) {
            Ok(()) => println!("[PASS] {name}"),
            Err(payload) => {
                let msg = payload
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "panic".to_string());
                println!("[FAIL] {name}: {msg}");
                failures.push(name);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}

fn criterion_01(shared: &Shared) {
    assert!(shared.corpus.entries.len() >= 25, "corpus too small");
    let start = Instant::now();
    let mut min_order = usize::MAX;
    let mut max_order = 0;
    for entry in &shared.corpus.entries {
        let report = entry.ring.validate_axioms();
        assert!(
            report.is_ok(),
            "axioms violated on {}: {report}",
            entry.entry.id
        );
        min_order = min_order.min(entry.ring.order());
        max_order = max_order.max(entry.ring.order());
    }
    let validate_ms = start.elapsed().as_millis();
    assert_eq!(min_order, 2);
    assert_eq!(max_order, 4096);
    let total = shared.resolve_ms + validate_ms;
    assert!(total < 60_000, "axiom suite took {total} ms");
}

fn criterion_02(shared: &Shared) {
    for entry in &shared.corpus.entries {
        let definitional = classify::has_property(&entry.ring, Property::Unituc).holds;
        let oracle = classify::unituc_oracle(&entry.ring);
        assert_eq!(definitional, oracle, "oracle disagreement on {}", entry.entry.id);
    }
}

fn criterion_03(shared: &Shared) {
    for entry in &shared.corpus.entries {
        let verdicts = [
            Property::Unituc,
            Property::StronglyNilClean,
            Property::StronglyUniquelyClean,
            Property::StronglyJClean,
        ]
        .map(|p| classify::has_property(&entry.ring, p).holds);
        assert!(
            verdicts.iter().all(|&v| v == verdicts[0]),
            "four-way equivalence broken on {}: {verdicts:?}",
            entry.entry.id
        );
    }
}

fn criterion_04(shared: &Shared) {
    let expect_true = [
        "Z2", "Z4", "Z8", "Z2xZ2", "T2_Z2", "T3_Z2", "S3_Z2", "Ks_Z4_s2", "MnS2_Z4_s2",
        "TE_Z4", "F2C2", "F2C4", "Z4C2", "F2_C2xC2", "PQ_Z2_3",
    ];
    let expect_false = ["Z3", "GF4", "M2_Z2", "M2_Z4", "Ks_Z4_s1", "F2C3", "GF4C2"];
    let find = |id: &str| -> &Arc<FiniteRing> {
        &shared
            .corpus
            .entries
            .iter()
            .find(|e| e.entry.id == id)
            .unwrap_or_else(|| panic!("fixture {id} missing from corpus"))
            .ring
    };
    for id in expect_true {
        let verdict = classify::has_property(find(id), Property::Unituc);
        assert!(verdict.holds, "{id} should classify unituc = true");
    }
    for id in expect_false {
        let ring = find(id);
        let verdict = classify::has_property(ring, Property::Unituc);
        assert!(!verdict.holds, "{id} should classify unituc = false");
        assert!(verdict.witness.is_some(), "{id} lacks a witness");
        assert!(verdict.replay(ring), "{id} witness does not replay");
    }
    // corpus-asserted expectations hold in full
    for entry in &shared.corpus.entries {
        for (&property, &expected) in &entry.entry.expected {
            let verdict = classify::has_property(&entry.ring, property);
            assert_eq!(
                verdict.holds, expected,
                "{}: {} expected {}",
                entry.entry.id, property, expected
            );
        }
    }
}

fn criterion_05(shared: &Shared) {
    assert!(verify::registry().len() >= 22, "registry too small");
    let report1 = shared.report();
    assert_eq!(report1.failures, 0, "theorem failures: {:#?}",
        report1
            .suite
            .iter()
            .flat_map(|s| s.results.iter().filter(|r| !r.passed).map(move |r| (s.theorem.clone(), r.ring.clone(), r.witness.clone())))
            .collect::<Vec<_>>());

    // coverage: each theorem ran on >= 2 subjects; each corpus ring is
    // touched by >= 3 theorems
    for entry in &report1.suite {
        let ran = entry.results.iter().filter(|r| r.skipped.is_none()).count();
        assert!(ran >= 2, "{} ran on only {ran} subject(s)", entry.theorem);
    }
    for corpus_entry in &shared.corpus.entries {
        let id = &corpus_entry.entry.id;
        let touched = report1
            .suite
            .iter()
            .filter(|s| {
                s.results
                    .iter()
                    .any(|r| r.skipped.is_none() && r.ring == *id)
            })
            .count();
        assert!(touched >= 3, "ring {id} touched by only {touched} theorem(s)");
    }

    // determinism: 1 job vs several jobs, timings excluded
    let report4 = verify::run_all(&shared.corpus, 4);
    assert_eq!(report4.failures, 0);
    let a = serde_json::to_string(&report1.normalized()).unwrap();
    let b = serde_json::to_string(&report4.normalized()).unwrap();
    assert_eq!(a, b, "reports differ across job counts");
}

fn criterion_06(shared: &Shared) {
    // phi/psi at (2,2), (2,3), (3,2) over Z2 and Z4, plus the U4 shape check
    let results = &shared
        .report()
        .suite
        .iter()
        .find(|s| s.theorem == "LEM-ISO3")
        .expect("LEM-ISO3 in registry")
        .results;
    let mut ran = Vec::new();
    for r in results.iter() {
        assert!(r.passed, "{} failed", r.ring);
        if r.skipped.is_none() {
            ran.push(r.ring.clone());
        }
    }
    // the required grid must have actually run (cap-skips allowed elsewhere,
    // e.g. psi(3,3) over Z(4))
    for base in ["Z(2)", "Z(4)"] {
        for (n, m) in [(2, 2), (2, 3), (3, 2)] {
            assert!(ran.contains(&format!("phi({n},{m},{base})")));
            assert!(ran.contains(&format!("psi({n},{m},{base})")));
        }
    }
    assert!(ran.contains(&"U4-shape(Z(2))".to_string()));

    // M_2(R;s) = K_{s^2}(R) for all central s over Z2 and Z4
    for base in ["Z(2)", "Z(4)"] {
        let ring = shared.corpus.by_expr(base).unwrap().ring.clone();
        for s in structure::center(&ring).iter() {
            let s_sq = ring.mul(s, s);
            let mns = shared
                .corpus
                .store
                .get(&format!("MnS(2,{base},{s})"))
                .unwrap();
            let ks = shared.corpus.store.get(&format!("Ks({base},{s_sq})")).unwrap();
            let order = mns.order() as Elem;
            let hom = RingHom::new(mns, ks, (0..order).collect()).unwrap();
            assert!(hom.is_isomorphism(), "M2({base};{s}) vs Ks({base},{s_sq})");
        }
    }
}

fn criterion_07(shared: &Shared) {
    for entry in &shared.corpus.entries {
        let r = &entry.ring;
        let id = &entry.entry.id;
        let radical = structure::jacobson_radical(r);
        structure::check_ideal(r, radical)
            .unwrap_or_else(|why| panic!("{id}: J is not an ideal: {why}"));
        let units = structure::units(r);
        for j in radical.iter() {
            assert!(units.contains(r.add(r.one(), j)), "{id}: 1 + {j} not a unit");
        }
        let (quotient, _) = structure::radical_quotient(r);
        let qj = structure::jacobson_radical(quotient);
        assert_eq!(qj.members(), &[quotient.zero()], "{id}: J(R/J) nonzero");

        // conjugacy agrees with the class partition on every idempotent pair,
        // which makes it an equivalence relation; 0 and 1 sit alone
        let classes = structure::conjugacy_classes(r);
        let ids = structure::idempotents(r);
        for e in ids.iter() {
            for f in ids.iter() {
                let related = structure::are_conjugate(r, e, f).unwrap().is_some();
                let same_class = classes.class_of(e) == classes.class_of(f);
                assert_eq!(related, same_class, "{id}: conjugacy mismatch at ({e},{f})");
            }
        }
        let zero_block = &classes.classes[classes.class_of(r.zero()).unwrap()];
        let one_block = &classes.classes[classes.class_of(r.one()).unwrap()];
        assert_eq!(zero_block.as_slice(), &[r.zero()], "{id}: class of 0 not a singleton");
        assert_eq!(one_block.as_slice(), &[r.one()], "{id}: class of 1 not a singleton");
    }
}

fn criterion_08(shared: &Shared) {
    for entry in &shared.corpus.entries {
        let violations = classify::implication_audit(&entry.ring);
        assert!(
            violations.is_empty(),
            "{}: {violations:?}",
            entry.entry.id
        );
    }
}

fn criterion_09(shared: &Shared) {
    let dir = std::env::temp_dir().join(format!("finring-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let representatives = ["Z4", "GF4", "T2_Z2", "Ks_Z4_s2", "F2C2"];
    for id in representatives {
        let ring = &shared
            .corpus
            .entries
            .iter()
            .find(|e| e.entry.id == id)
            .unwrap()
            .ring;
        let json_path = dir.join(format!("{id}.json"));
        let bin_path = dir.join(format!("{id}.frc"));
        finring::cache::save_json(ring, &json_path).unwrap();
        finring::cache::save_binary(ring, &bin_path).unwrap();
        let from_json = finring::cache::load(&json_path).unwrap();
        let from_bin = finring::cache::load(&bin_path).unwrap();
        assert!(from_json.same_tables(ring), "{id}: JSON round-trip differs");
        assert!(from_bin.same_tables(ring), "{id}: binary round-trip differs");
        assert!(from_json.same_tables(&from_bin), "{id}: formats disagree");
        assert_eq!(from_json.add_table(), ring.add_table());
        assert_eq!(from_json.mul_table(), ring.mul_table());
        assert_eq!(from_bin.add_table(), ring.add_table());
        assert_eq!(from_bin.mul_table(), ring.mul_table());
    }
    std::fs::remove_dir_all(&dir).ok();
}

fn criterion_10(_shared: &Shared) {
    // deterministic expression generator, disjoint from the library
    struct Gen(u64);
    impl Gen {
        fn next(&mut self) -> u64 {
            self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
            let mut z = self.0;
            z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
            z ^ (z >> 31)
        }
        fn pick(&mut self, n: u64) -> u64 {
            self.next() % n
        }
    }
    fn gen_group(g: &mut Gen, depth: u32) -> dsl::GroupExpr {
        if depth == 0 || g.pick(3) > 0 {
            dsl::GroupExpr::Cyclic(1 + g.pick(6))
        } else {
            dsl::GroupExpr::Product(
                Box::new(gen_group(g, depth - 1)),
                Box::new(gen_group(g, depth - 1)),
            )
        }
    }
    fn gen_expr(g: &mut Gen, depth: u32) -> dsl::Expr {
        use dsl::Expr;
        if depth == 0 {
            return match g.pick(3) {
                0 => Expr::Zmod(2 + g.pick(20)),
                1 => Expr::Gf {
                    p: [2, 3, 5][g.pick(3) as usize],
                    k: 1 + g.pick(3),
                    irr: None,
                },
                _ => Expr::Gf {
                    p: 2,
                    k: 2,
                    irr: Some(vec![1, 1, 1]),
                },
            };
        }
        let choice = g.pick(18);
        let inner = Box::new(gen_expr(g, depth - 1));
        match choice {
            0 => Expr::Prod(vec![*inner, gen_expr(g, depth - 1)]),
            1 => Expr::Matrix(1 + g.pick(4), inner),
            2 => Expr::Triangular(1 + g.pick(4), inner),
            3 => Expr::ConstDiag(1 + g.pick(4), inner),
            4 => Expr::Ks(inner, g.pick(8)),
            5 => Expr::MnS(2 + g.pick(3), inner, g.pick(8)),
            6 => Expr::TrivExt(inner, 1 + g.pick(3)),
            7 => Expr::GroupRing(inner, gen_group(g, 2)),
            8 => Expr::PolyQuot(inner, 1 + g.pick(4)),
            9 => Expr::SkewPolyQuot(
                inner,
                1 + g.pick(3),
                match g.pick(3) {
                    0 => dsl::AlphaExpr::Frobenius,
                    1 => dsl::AlphaExpr::Pow(1 + g.pick(4)),
                    _ => dsl::AlphaExpr::Explicit((0..g.pick(5)).collect()),
                },
            ),
            10 => Expr::Tnm(1 + g.pick(3), 1 + g.pick(3), inner),
            11 => Expr::Snm(1 + g.pick(3), 1 + g.pick(3), inner),
            12 => Expr::Un(2 + g.pick(4), inner),
            13 => Expr::Anm(2 + g.pick(3), 2 + g.pick(3), inner),
            14 => Expr::Bnm(2 + g.pick(3), 2 + g.pick(3), inner),
            15 => Expr::Corner(inner, g.pick(8)),
            16 => Expr::Quot(inner, (0..g.pick(4)).collect()),
            _ => Expr::Zmod(2 + g.pick(20)),
        }
    }

    let mut g = Gen(0xF1E1D);
    let mut count = 0usize;
    for i in 0..240 {
        let expr = gen_expr(&mut g, 1 + (i % 3));
        let text = expr.to_string();
        let parsed = dsl::parse_expr(&text)
            .unwrap_or_else(|e| panic!("round-trip parse failed on {text}: {e}"));
        assert_eq!(parsed, expr, "round-trip mismatch on {text}");
        count += 1;
    }
    assert!(count >= 200);

    // the documented error classes carry position info and exit 2/3
    let bin = env!("CARGO_BIN_EXE_finring");
    let run = |args: &[&str]| -> (i32, String) {
        let out = Command::new(bin).args(args).output().expect("spawn finring");
        (
            out.status.code().unwrap_or(-1),
            String::from_utf8_lossy(&out.stderr).to_string(),
        )
    };
    let (code, err) = run(&["classify", "T(2,Z(2)"]);
    assert_eq!(code, 2, "syntax error should exit 2: {err}");
    assert!(err.contains("offset 9"), "missing position info: {err}");

    let (code, err) = run(&["classify", "Z(1)"]);
    assert_eq!(code, 2, "range error should exit 2: {err}");
    assert!(err.contains("offset"), "missing position info: {err}");

    let (code, err) = run(&["classify", "Prod(Z(2))"]);
    assert_eq!(code, 2, "arity error should exit 2: {err}");
    assert!(err.contains("offset"), "missing position info: {err}");

    let (code, err) = run(&["eval", "Ks(M(2,Z(2)),3)"]);
    assert_eq!(code, 3, "construction error should exit 3: {err}");
    assert!(err.contains("central"), "unexpected message: {err}");
}
