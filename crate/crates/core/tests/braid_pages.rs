use salvetti::braid::pages::{page_block, PageBlock, PageEntry};
use salvetti::braid::quotient::quotient_homology;
use salvetti::braid::{GradedModule, Normalization, PageConfig};
use salvetti::complexes::Coefficients;

fn sphere(ell: u8, field: Coefficients) -> PageConfig {
    PageConfig {
        coefficients: GradedModule { degrees: vec![0], field },
        k_max: 3,
        ell,
        normalization: Normalization::Unshifted,
        koszul: true,
    }
}

/// `E²` dimensions in chain degree order `d = 0, 1, …`.
fn by_degree(entries: &[PageEntry], top: i64) -> Vec<usize> {
    let totals = PageBlock::totals(entries);
    (0..=top).map(|d| totals.iter().find(|x| x.0 == top + 1 - d).map_or(0, |x| x.1)).collect()
}

#[test]
fn s0_pages_are_quotient_homology() {
    for field in [Coefficients::Q, Coefficients::Fp(2), Coefficients::Fp(5)] {
        for ell in [2u8, 3] {
            for k in 2..=3 {
                let block = page_block(k, &sphere(ell, field)).unwrap();
                let top = (ell as i64 - 1) * (k as i64 - 1);
                let q = quotient_homology(k, ell - 1, field).unwrap();
                assert_eq!(by_degree(&block.e2, top), q, "k = {k}, ℓ = {ell}, {field:?}");
            }
        }
    }
}

#[test]
fn shifted_normalization_moves_t_only() {
    let mut cfg = sphere(2, Coefficients::Q);
    let plain = page_block(3, &cfg).unwrap();
    cfg.normalization = Normalization::Shifted;
    let shifted = page_block(3, &cfg).unwrap();
    assert!(shifted.e1.iter().all(|e| e.t == 3));
    assert_eq!(PageBlock::totals(&plain.e1), PageBlock::totals(&shifted.e1));
    // odd generators: the sign representation replaces the trivial one
    assert_ne!(PageBlock::totals(&plain.e2), PageBlock::totals(&shifted.e2));
    assert_eq!(PageBlock::euler(&shifted.e1), PageBlock::euler(&shifted.e2));
}

#[test]
fn one_point_blocks() {
    for ell in 1..=3 {
        let block = page_block(1, &sphere(ell, Coefficients::Q)).unwrap();
        assert_eq!(block.e1, block.e2);
        assert_eq!(block.e1.len(), 1);
    }
}
