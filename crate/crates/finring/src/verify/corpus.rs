//! The default ring corpus: one entry per construction the suite exercises,
//! with asserted classification expectations and short derivation notes.

use crate::classify::Property;

use super::CorpusEntry;

/// 34 rings, orders 2 through 4096.
pub fn default_corpus() -> Vec<CorpusEntry> {
    let uc = Property::Unituc;
    vec![
        CorpusEntry::new("Z2", "Z(2)")
            .expect(uc, true, "Boolean ring")
            .expect(Property::Boolean, true, "x^2 = x for both elements"),
        CorpusEntry::new("Z3", "Z(3)").expect(
            uc,
            false,
            "field with 3 elements; 2 = 0+2 = 1+1 gives non-conjugate idempotents",
        ),
        CorpusEntry::new("Z4", "Z(4)")
            .expect(uc, true, "local with 2-element residue field")
            .expect(Property::UniquelyClean, true, "commutative, residue F2")
            .expect(Property::Local, true, "non-units {0,2} form the ideal 2Z4"),
        CorpusEntry::new("Z8", "Z(8)").expect(uc, true, "local with 2-element residue field"),
        CorpusEntry::new("GF4", "GF(2,2)").expect(
            uc,
            false,
            "field with 4 > 2 elements; its residue field is itself",
        ),
        CorpusEntry::new("Z2xZ2", "Prod(Z(2),Z(2))")
            .expect(uc, true, "product of Boolean rings is Boolean")
            .expect(Property::Boolean, true, "componentwise x^2 = x"),
        CorpusEntry::new("M2_Z2", "M(2,Z(2))")
            .expect(uc, false, "full matrix ring admits a unit pair summing to 1"),
        CorpusEntry::new("M2_Z4", "M(2,Z(4))")
            .expect(uc, false, "full matrix ring admits a unit pair summing to 1"),
        CorpusEntry::new("T2_Z2", "T(2,Z(2))")
            .expect(uc, true, "triangular over a Boolean base"),
        CorpusEntry::new("T3_Z2", "T(3,Z(2))")
            .expect(uc, true, "triangular over a Boolean base"),
        CorpusEntry::new("T2_Z4", "T(2,Z(4))")
            .expect(uc, true, "triangular over a local base with residue F2"),
        CorpusEntry::new("S3_Z2", "Sn(3,Z(2))")
            .expect(uc, true, "constant-diagonal triangular over a Boolean base"),
        CorpusEntry::new("Ks_Z4_s2", "Ks(Z(4),2)")
            .expect(uc, true, "twist s = 2 lies in the radical of Z4"),
        CorpusEntry::new("Ks_Z4_s1", "Ks(Z(4),1)")
            .expect(uc, false, "twist s = 1 is a unit, so this is the full 2x2 matrix ring"),
        CorpusEntry::new("MnS2_Z4_s2", "MnS(2,Z(4),2)")
            .expect(uc, true, "equals the K_{s^2} ring at s^2 = 0, radical twist"),
        CorpusEntry::new("TE_Z4", "TrivExt(Z(4),1)")
            .expect(uc, true, "trivial extension of a local base with residue F2"),
        CorpusEntry::new("F2C2", "GR(Z(2),C(2))")
            .expect(uc, true, "2-group over a Boolean base"),
        CorpusEntry::new("F2C4", "GR(Z(2),C(4))")
            .expect(uc, true, "2-group over a Boolean base"),
        CorpusEntry::new("Z4C2", "GR(Z(4),C(2))")
            .expect(uc, true, "2-group over a local base with residue F2"),
        CorpusEntry::new("F2_C2xC2", "GR(Z(2),GxG(C(2),C(2)))")
            .expect(uc, true, "Klein four-group is a 2-group"),
        CorpusEntry::new("F2C3", "GR(Z(2),C(3))")
            .expect(uc, false, "group of odd order 3; the quotient by J has an F4 factor"),
        CorpusEntry::new("GF4C2", "GR(GF(2,2),C(2))")
            .expect(uc, false, "base field F4 is not UnitUC"),
        CorpusEntry::new("PQ_Z2_3", "PolyQuot(Z(2),3)")
            .expect(uc, true, "truncated polynomials over a Boolean base"),
        CorpusEntry::new("Tnm22_Z2", "Tnm(2,2,Z(2))")
            .expect(uc, true, "block Toeplitz over a Boolean base"),
        CorpusEntry::new("Tnm22_Z4", "Tnm(2,2,Z(4))")
            .expect(uc, true, "block Toeplitz over a local base with residue F2"),
        CorpusEntry::new("Snm22_Z2", "Snm(2,2,Z(2))")
            .expect(uc, true, "nilpotent-generated extension of a Boolean base"),
        CorpusEntry::new("Snm22_Z4", "Snm(2,2,Z(4))")
            .expect(uc, true, "nilpotent-generated extension of a local base"),
        CorpusEntry::new("Un4_Z2", "Un(4,Z(2))")
            .expect(uc, true, "alternating-stripe triangular over a Boolean base"),
        CorpusEntry::new("Un4_Z4", "Un(4,Z(4))")
            .expect(uc, true, "alternating-stripe triangular over a local base"),
        CorpusEntry::new("Anm22_Z2", "Anm(2,2,Z(2))")
            .expect(uc, true, "commutative nilpotent extension of a Boolean base"),
        CorpusEntry::new("Anm22_Z4", "Anm(2,2,Z(4))")
            .expect(uc, true, "commutative nilpotent extension of a local base"),
        CorpusEntry::new("Bnm22_Z2", "Bnm(2,2,Z(2))")
            .expect(uc, true, "noncommutative nilpotent extension of a Boolean base"),
        CorpusEntry::new("Bnm22_Z4", "Bnm(2,2,Z(4))")
            .expect(uc, true, "noncommutative nilpotent extension of a local base"),
        CorpusEntry::new("PQ_GF4_2", "PolyQuot(GF(2,2),2)")
            .expect(uc, false, "truncated polynomials over a non-UnitUC field"),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl;

    #[test]
    fn corpus_is_large_and_parses() {
        let corpus = default_corpus();
        assert!(corpus.len() >= 25);
        let mut max_order = 0u128;
        let mut min_order = u128::MAX;
        for entry in &corpus {
            let ast = dsl::parse_expr(&entry.expr).unwrap();
            let est = dsl::estimated_order(&ast);
            assert!(est <= 65_536, "{} exceeds the cap", entry.id);
            max_order = max_order.max(est);
            min_order = min_order.min(est);
            assert!(entry.expected.contains_key(&Property::Unituc));
        }
        assert_eq!(min_order, 2);
        assert_eq!(max_order, 4096);
    }
}
