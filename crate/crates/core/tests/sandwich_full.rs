//! The composed sandwich verification -- both witness families, the
//! commutant oracle, and the interpolated fixed dimensions -- passes for
//! every Jordan type of size up to 4 with the full prime schedule.

use matvar_core::{check_sandwich_full, JordanData, SandwichOptions};

#[test]
fn sandwich_full_exhaustive_up_to_4() {
    let opts = SandwichOptions::default();
    let mut verified = 0;
    for n in 1..=4 {
        for delta in JordanData::enumerate(n) {
            let v = check_sandwich_full(&delta, &opts)
                .unwrap_or_else(|e| panic!("sandwich verification failed for {delta}: {e}"));
            assert!(v.pass);
            assert_eq!(v.centralizer.expected, delta.centralizer_dim());
            for f in &v.fixed_dimensions {
                assert!(f.semisimple.certified);
                assert!(f.jordan_type.certified);
                assert!(f.equipotent.certified);
            }
            verified += 1;
        }
    }
    assert_eq!(verified, 1 + 3 + 6 + 14);
}
