use rotinv::coeffs::cache::CoeffCache;
use rotinv::invariant::{build_invariant_with, invariant_json};
use rotinv::{build_invariant, render, table_closed, CoeffQuery, Format, InvariantSpec, Kind};

#[test]
fn cache_round_trip_through_disk() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tables.json");
    let cache = CoeffCache::build(4).unwrap();
    cache.save(&path).unwrap();
    let loaded = CoeffCache::load(&path).unwrap();
    assert_eq!(loaded.to_json_string(), cache.to_json_string());
    assert_eq!(loaded.manifest(), cache.manifest());
    for q in CoeffQuery::all_up_to(4) {
        for kind in [Kind::Even, Kind::Odd] {
            assert_eq!(loaded.get(kind, q), Some(&table_closed(q, kind)));
        }
    }
}

#[test]
fn cached_and_fresh_invariants_agree() {
    let cache = CoeffCache::build(3).unwrap();
    for s in InvariantSpec::canonical_up_to(6) {
        let fresh = build_invariant(s.j(), s.k(), s.l()).unwrap();
        let cached =
            build_invariant_with(s.j(), s.k(), s.l(), |kind, q| Ok(cache.get_or_compute(kind, q))).unwrap();
        assert_eq!(fresh, cached, "{s}");
    }
}

#[test]
fn rendering() {
    let i = build_invariant(1, 1, 1).unwrap();
    assert_eq!(render(&i, Format::Text), "i zeta 1/sqrt(6)");
    let i = build_invariant(1, 2, 2).unwrap();
    assert_eq!(render(&i, Format::Text), "-i zeta sqrt(3/10) h1");
    assert_eq!(render(&i, Format::Latex), r"-{\rm i}\zeta\sqrt{\frac{3}{10}}\,\eta_{1}");

    let inv = build_invariant(2, 2, 3).unwrap();
    let text = render(&inv, Format::Json);
    let order = ["j", "k", "l", "parity", "prefactor", "imaginary", "zeta", "terms"];
    let positions: Vec<usize> = order
        .iter()
        .map(|k| text.find(&format!("\n  \"{k}\":")).unwrap())
        .collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]), "{text}");
    let doc = invariant_json(&inv);
    assert_eq!(serde_json::from_str::<serde_json::Value>(&text).unwrap(), doc);
    assert_eq!(doc["parity"], "odd");
    assert_eq!(doc["imaginary"], true);
    assert_eq!(doc["zeta"], 1);
}

#[test]
fn non_canonical_order_relabels() {
    // I(3,2,2) is I(2,2,3) with r1 and r3 exchanged
    let a = build_invariant(3, 2, 2).unwrap();
    assert_eq!(a.spec.indices(), [3, 2, 2]);
    let text = render(&a, Format::Text);
    assert!(text.starts_with("i zeta"), "{text}");
}
