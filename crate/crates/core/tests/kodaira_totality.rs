use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use k3disc::family::{weierstrass, FamilyPoint};
use k3disc::kodaira::{classify, scan_fibers, KodairaType, OrderTriple};
use k3disc::modular::DEFAULT_PRIME;
use k3disc::PrimeField;

const POINTS: usize = 10_000;

#[test]
fn classification_is_total_on_random_members() {
    let f = PrimeField::new(DEFAULT_PRIME);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut scanned = 0;
    for _ in 0..POINTS {
        let p = FamilyPoint::random(f, &mut rng);
        let s = scan_fibers(&weierstrass(&p)).expect("every member classifies");
        assert!(s.fibers.iter().all(|fb| fb.orders.is_consistent()));
        if p.scalars().unwrap()[0] != 0 {
            assert_eq!(s.at_infinity().map(|fb| fb.kind), Some(KodairaType::IIStar));
        }
        scanned += 1;
    }
    assert_eq!(scanned, POINTS);
}

#[test]
fn table_rows_classify() {
    let rows = [
        ((0, 0, 0), KodairaType::I0),
        ((0, 0, 3), KodairaType::I(3)),
        ((1, 1, 2), KodairaType::II),
        ((1, 2, 3), KodairaType::III),
        ((2, 2, 4), KodairaType::IV),
        ((2, 3, 6), KodairaType::I0Star),
        ((2, 3, 8), KodairaType::IStar(2)),
        ((3, 4, 8), KodairaType::IVStar),
        ((3, 5, 9), KodairaType::IIIStar),
        ((4, 5, 10), KodairaType::IIStar),
    ];
    for ((a, b, d), want) in rows {
        assert_eq!(classify(&OrderTriple::new(a, b, d)).unwrap(), want, "({a}, {b}, {d})");
    }
    assert_eq!(classify(&OrderTriple::new(4, 6, 12)).unwrap(), KodairaType::NonMinimal);
    assert!(classify(&OrderTriple::new(1, 1, 3)).is_err());
}
