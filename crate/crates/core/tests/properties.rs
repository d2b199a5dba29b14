use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;
use weightenum::autgroup::{crt_combine, Permutation};
use weightenum::codes::LinearCode;
use weightenum::exactcount::{canonical_rotation, exhaustive_spectrum, CountBudget};
use weightenum::gf2::{BinaryMatrix, BitWord};
use weightenum::spectra::macwilliams;

fn word(n: usize) -> impl Strategy<Value = BitWord> {
    prop::collection::vec(any::<bool>(), n).prop_map(|b| BitWord::from_bits(&b))
}

fn code() -> impl Strategy<Value = LinearCode> {
    (2usize..=12)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(word(n), 1..n)))
        .prop_map(|(n, rows)| LinearCode::spanned_by(n, rows).unwrap())
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn macwilliams_matches_dual(c in code()) {
        let (n, k) = (c.n(), c.k());
        let a = exhaustive_spectrum(&c, &mut CountBudget::default(), 1).unwrap();
        let b = exhaustive_spectrum(&c.dual(), &mut CountBudget::default(), 1).unwrap();
        prop_assert_eq!(&macwilliams(&a, n - k).unwrap(), &b);
        prop_assert_eq!(&macwilliams(&b, k).unwrap(), &a);
        prop_assert_eq!(a.total(), BigUint::from(1u8) << k);
    }

    #[test]
    fn rank_and_null_space(rows in prop::collection::vec(word(10), 1..8)) {
        let m = BinaryMatrix::new(10, rows).unwrap();
        let ns = m.null_space();
        prop_assert_eq!(m.rank() + ns.nrows(), 10);
        for x in ns.rows() {
            prop_assert!(m.annihilates(x));
        }
    }

    #[test]
    fn codewords_are_closed_under_addition(c in code(), x in any::<u64>(), y in any::<u64>()) {
        let k = c.k();
        let info = |v: u64| BitWord::from_positions(k, (0..k).filter(|i| v >> (i % 64) & 1 == 1));
        let (a, b) = (c.encode(&info(x)).unwrap(), c.encode(&info(y)).unwrap());
        prop_assert!(c.contains(&a.xor(&b)));
    }

    #[test]
    fn rotation_class_is_canonical(w in word(13), s in 0usize..13) {
        let (r1, p1) = canonical_rotation(&w);
        let (r2, p2) = canonical_rotation(&w.rotated(s));
        prop_assert_eq!(r1, r2);
        prop_assert_eq!(p1, p2);
        prop_assert_eq!(13 % p1, 0);
    }

    #[test]
    fn permutation_algebra(p in permutation(9), q in permutation(9), w in word(9)) {
        prop_assert!(p.compose(&p.inverse()).is_identity());
        prop_assert!(p.pow(p.order()).is_identity());
        prop_assert_eq!(p.compose(&q).apply(&w), p.apply(&q.apply(&w)));
        prop_assert_eq!(p.apply(&w).weight(), w.weight());
    }

    #[test]
    fn crt_recovers_the_value(x in 0u64..1_000_000) {
        let moduli = [7u64, 11, 13, 64, 27];
        let residues: Vec<(BigInt, BigInt)> = moduli.iter().map(|&m| (BigInt::from(x % m), BigInt::from(m))).collect();
        let (r, m) = crt_combine(&residues).unwrap();
        prop_assert_eq!(m, BigInt::from(7u64 * 11 * 13 * 64 * 27));
        prop_assert_eq!(r, BigInt::from(x % (7 * 11 * 13 * 64 * 27)));
    }
}
