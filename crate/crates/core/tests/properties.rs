mod common;

use hdpart::bijection::{weight_of_matrix, weight_of_partition};
use hdpart::diagram::{corners, diagram, sh1};
use hdpart::lpp::{boundary_slice, last_passage_grid};
use hdpart::stats::{ch_volume, cohook};
use hdpart::{phi, phi_inverse, DdPartition, NdArray, TruncSeries};
use num_bigint::BigInt;
use proptest::prelude::*;

use common::*;

fn small_matrix() -> impl Strategy<Value = NdArray> {
    prop::collection::vec(1usize..=3, 1..=3).prop_flat_map(|bounds| {
        let n: usize = bounds.iter().product();
        prop::collection::vec(0u64..=4, n)
            .prop_map(move |data| NdArray::from_flat(&bounds, data).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn phi_round_trips(a in small_matrix()) {
        let pi = phi(&a);
        prop_assert!(is_partition(&to_grid(pi.as_array())));
        prop_assert_eq!(phi_inverse(&pi), a.clone());
        prop_assert_eq!(phi(&phi_inverse(&pi)), pi);
    }

    #[test]
    fn phi_is_path_maximum(a in small_matrix()) {
        let g = last_passage_naive(&to_grid(&a), a.bounds());
        prop_assert_eq!(to_grid(phi(&a).as_array()), g);
    }

    #[test]
    fn phi_preserves_weight(a in small_matrix()) {
        let pi = phi(&a);
        prop_assert_eq!(weight_of_matrix(&a), weight_of_partition(&pi));
        prop_assert_eq!(weight_of_entries(&to_grid(&a)), weight_of_corners(&to_grid(pi.as_array())));
    }

    #[test]
    fn support_and_volume_match_corners(a in small_matrix()) {
        let pi = phi(&a);
        let support: Vec<Vec<usize>> = a.support().collect();
        let sh = hdpart::diagram::shape(&pi);
        // sh(pi) is the lower closure of the support.
        for c in &support {
            prop_assert!(sh.contains(c));
        }
        for c in sh.iter() {
            prop_assert!(support.iter().any(|s| s.iter().zip(c).all(|(x, y)| y <= x)));
        }
        let ch: u64 = support.iter().map(|c| cohook(c) * a.get(c)).sum();
        prop_assert_eq!(ch, ch_volume(&pi));
        let cor = corners_naive(&to_grid(pi.as_array()));
        prop_assert_eq!(cor.len(), corners(&pi).len());
        prop_assert_eq!(a.sum() as usize, cor.len());
    }

    #[test]
    fn boundary_slice_is_first_layer_of_reversal(a in small_matrix()) {
        let g = last_passage_grid(&a);
        let flipped = phi(&a.reversed());
        prop_assert_eq!(&g.reversed(), flipped.as_array());
        let rho = boundary_slice(&g);
        let d = a.rank();
        if d >= 2 {
            let first = sh1(&flipped);
            prop_assert_eq!(diagram(&rho), first);
        }
    }

    #[test]
    fn series_inverse_is_exact(coeffs in prop::collection::vec(-3i64..=3, 15)) {
        let trunc = 4;
        let mut s = TruncSeries::one(trunc);
        for (k, c) in coeffs.iter().enumerate() {
            let (t, q) = (k / 5, k % 5);
            if (t, q) != (0, 0) && t <= q {
                s = s.add(&TruncSeries::monomial(trunc, t, q, BigInt::from(*c)));
            }
        }
        let inv = s.inverse().unwrap();
        prop_assert_eq!(s.mul(&inv), TruncSeries::one(trunc));
    }

    #[test]
    fn partition_json_round_trips(a in small_matrix()) {
        let pi = phi(&a);
        let text = serde_json::to_string(&pi).unwrap();
        let back: DdPartition = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, pi);
    }
}
