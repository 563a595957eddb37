use geolocal::chainmap::{verify_chain_map, ChainMap, ChainMapFile};
use geolocal::code::{four_qubit, parse_alist, random_commuting, steane, write_alist, CodeFile};
use geolocal::complex::{ComplexFile, DummyPolicy, SquareSubspaceComplex};
use geolocal::embed::{embed_heuristic, verify_embedding, Embedding, LayoutOptions};
use geolocal::subdivide::{subdivide, SubdividedFile};
use geolocal::CssCode;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn roundtrip<T: serde::Serialize + serde::de::DeserializeOwned>(value: &T) -> T {
    serde_json::from_str(&serde_json::to_string_pretty(value).unwrap()).unwrap()
}

#[test]
fn json_artifacts_reload_to_the_same_objects() {
    for code in [four_qubit(), steane()] {
        let file: CodeFile = roundtrip(&CodeFile::from_code(&code));
        let reloaded = file.to_code().unwrap();
        assert_eq!(reloaded.a_x(), code.a_x());
        assert_eq!(reloaded.a_z(), code.a_z());

        let cx = SquareSubspaceComplex::build(&code, DummyPolicy::All).unwrap();
        let cfile: ComplexFile = roundtrip(&cx.to_file());
        let cx2 = cfile.to_complex(&code).unwrap();
        assert_eq!(cx2.faces(), cx.faces());

        let sub = subdivide(&cx2, 3).unwrap();
        let sfile: SubdividedFile = roundtrip(&sub.to_file());
        assert_eq!(sfile.l, 3);
        assert_eq!(sfile.vertices.len(), sub.vertex_count());
        assert_eq!(sfile.edges, sub.edges());

        let code_l = sub.extract_code().unwrap();
        let lfile: CodeFile = roundtrip(&CodeFile::from_code(&code_l));
        let code_l2 = lfile.to_code().unwrap();
        assert!(code_l2.validate().commutes);
        assert_eq!(code_l2.dimension(), code.dimension());

        let map = ChainMap::build(&sub);
        let mfile: ChainMapFile = roundtrip(&map.to_file());
        assert_eq!(mfile.f1.len(), code.n());
        assert!(verify_chain_map(&code, &code_l2, &map).unwrap().holds());

        let emb = embed_heuristic(&sub, LayoutOptions::new(3)).unwrap();
        let emb2: Embedding = roundtrip(&emb);
        assert!(verify_embedding(&sub, &emb2, emb.a, emb.b).unwrap().pass);
    }
}

#[test]
fn alist_matrices_survive_a_roundtrip() {
    let code = steane();
    let text = write_alist(code.a_x());
    assert_eq!(&parse_alist(&text).unwrap(), code.a_x());
}

fn random_code(seed: u64) -> CssCode {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_commuting(&mut rng, 8, 2, 2, 4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn subdivision_preserves_commutation_dimension_and_the_chain_map(seed in any::<u64>(), half in 1usize..3) {
        let code = random_code(seed);
        let l = 2 * half + 1;
        let cx = SquareSubspaceComplex::build(&code, DummyPolicy::All).unwrap();
        prop_assert!(cx.disconnected_links().is_empty());
        let sub = subdivide(&cx, l).unwrap();
        let code_l = sub.extract_code().unwrap();
        prop_assert!(code_l.validate().commutes);
        prop_assert_eq!(code_l.dimension(), code.dimension());
        prop_assert!(sub.stats().all_hold());
        let map = ChainMap::build(&sub);
        prop_assert!(verify_chain_map(&code, &code_l, &map).unwrap().holds());
        for (u, v) in sub.edges().iter().copied() {
            prop_assert_eq!(sub.level(u).abs_diff(sub.level(v)), 1);
        }
    }

    #[test]
    fn heuristic_embedding_is_deterministic_and_verified(seed in any::<u64>(), d in 3usize..5) {
        let code = random_code(seed);
        let cx = SquareSubspaceComplex::build(&code, DummyPolicy::All).unwrap();
        let sub = subdivide(&cx, 3).unwrap();
        let a = embed_heuristic(&sub, LayoutOptions::new(d)).unwrap();
        let b = embed_heuristic(&sub, LayoutOptions::new(d)).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert!(verify_embedding(&sub, &a, a.a, a.b).unwrap().pass);
    }
}
