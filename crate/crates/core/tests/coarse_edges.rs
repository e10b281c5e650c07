//! Predicted counts on every edge from level 0 down to one level past the
//! point where the eigenvalues stop changing, checked against the sampler.

use sg_core::gasket::{CellWord, EdgeRef};
use sg_core::oracle::{default_level, Restriction};
use sg_core::spectral::{classify_eigen_edge, FamilyId};
use sg_core::verify::oracle_count_at;
use sg_core::Error;

#[test]
fn every_edge_matches_the_sampler() {
    let mut bad = Vec::new();
    for fam in FamilyId::ALL {
        for n in 0..=2 {
            let spec = fam.psi(n);
            let f = Restriction::Eigen(spec.clone());
            for m in 0..=spec.fixation_level() {
                for w in CellWord::all(m) {
                    for (a, b) in [(0u8, 1u8), (1, 2), (0, 2)] {
                        let e = EdgeRef::new(w.clone(), a, b).unwrap();
                        let predicted = match classify_eigen_edge(&spec, &e, 20) {
                            Ok(a) => a.predicted_count,
                            Err(err) => {
                                bad.push(format!("{fam} n={n} {}: {err}", e.spec_string()));
                                continue;
                            }
                        };
                        let observed = match oracle_count_at(&f, &e, default_level(&f, &e)) {
                            Ok(c) => c,
                            Err(Error::ConstantOnEdge) => 0,
                            Err(err) => panic!("{fam} n={n} {}: {err}", e.spec_string()),
                        };
                        if predicted != observed {
                            bad.push(format!("{fam} n={n} {}: {predicted} vs {observed}", e.spec_string()));
                        }
                    }
                }
            }
        }
    }
    assert!(bad.is_empty(), "{bad:#?}");
}
