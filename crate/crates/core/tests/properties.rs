use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use fapres::apps::TowerCodec;
use fapres::towerpres::{apply_f, apply_f_inverse, decode_string, encode_tuple, TupleV};
use fapres::verify::sample_families;

fn tuple() -> impl Strategy<Value = TupleV> {
    (0u64..1 << 20, 0u64..1 << 20, 0u64..40, 0u8..2)
        .prop_filter_map("outside V", |(a, b, c, d)| TupleV::small(a, b, c, d).ok())
}

proptest! {
    #[test]
    fn f_inverse_undoes_f(v in tuple()) {
        let (w, _) = apply_f(&v).unwrap();
        prop_assert!(w.is_valid());
        prop_assert_eq!(apply_f_inverse(&w), Some(v));
    }

    #[test]
    fn tuple_encoding_round_trips(v in tuple()) {
        prop_assert_eq!(decode_string(&encode_tuple(&v)).unwrap(), Some(v));
    }

    #[test]
    fn tower_codec_prefix(k in 0u64..100_000, tail in proptest::collection::vec("[ab]", 0..4)) {
        let codec = TowerCodec::new();
        let mut w = codec.encode(k).unwrap();
        w.extend(tail.iter().cloned());
        let (got, rest) = codec.decode_prefix(&w).unwrap();
        prop_assert_eq!(got, k);
        prop_assert_eq!(rest, &tail[..]);
    }

    #[test]
    fn group_codecs_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let codec = TowerCodec::new();
        for f in sample_families() {
            let g = f.random_element(&mut rng, 30);
            let std = f.encode_std(&g).unwrap();
            prop_assert_eq!(&f.decode_std(&std).unwrap(), &g);
            let packed = f.encode_compressed(&g, &codec).unwrap();
            prop_assert_eq!(&f.decode_compressed(&packed, &codec).unwrap(), &g);
        }
    }
}
