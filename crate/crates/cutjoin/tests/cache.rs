use std::fs;

use cutjoin::cache::{Cache, Lookup};
use cutjoin_core::recursion::TauTable;
use cutjoin_core::Alpha;
use sha2::{Digest, Sha256};

#[test]
fn store_and_load_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path());
    let table = TauTable::compute(Alpha::Psi, 3, 2).unwrap();
    let manifest = cache.store(&table).unwrap();
    assert_eq!(manifest.max_level, 3);
    assert_eq!(manifest.levels.len(), 4);
    match cache.load(Alpha::Psi, 2).unwrap() {
        Lookup::Hit(t) => assert_eq!(t, table),
        other => panic!("expected a hit, got {other:?}"),
    }
    assert!(matches!(cache.load(Alpha::Theta, 2).unwrap(), Lookup::Miss));
}

#[test]
fn ensure_extends_incrementally() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path());
    cache.ensure(Alpha::Theta, 2, 1).unwrap();
    let level1 = cache.entry_dir(Alpha::Theta, 1).join("level_1.poly");
    let before = fs::metadata(&level1).unwrap().modified().unwrap();
    let t = cache.ensure(Alpha::Theta, 4, 1).unwrap();
    assert_eq!(t, TauTable::compute(Alpha::Theta, 4, 1).unwrap());
    assert_eq!(fs::metadata(&level1).unwrap().modified().unwrap(), before);
    assert_eq!(
        cache.manifest(Alpha::Theta, 1).unwrap().unwrap().max_level,
        4
    );
}

#[test]
fn tampered_level_is_stale_and_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path());
    cache.ensure(Alpha::Psi, 2, 0).unwrap();
    let path = cache.entry_dir(Alpha::Psi, 0).join("level_2.poly");
    fs::write(&path, "1/2*t1^6\n").unwrap();
    assert!(matches!(
        cache.load(Alpha::Psi, 0).unwrap(),
        Lookup::Stale(_)
    ));
    let t = cache.ensure(Alpha::Psi, 2, 0).unwrap();
    assert_eq!(t, TauTable::compute(Alpha::Psi, 2, 0).unwrap());
    assert!(matches!(cache.load(Alpha::Psi, 0).unwrap(), Lookup::Hit(_)));
}

#[test]
fn wrong_version_is_stale() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path());
    cache.ensure(Alpha::Psi, 1, 0).unwrap();
    let path = cache.entry_dir(Alpha::Psi, 0).join("manifest.json");
    let text = fs::read_to_string(&path)
        .unwrap()
        .replace("\"version\": 1", "\"version\": 99");
    fs::write(&path, text).unwrap();
    assert!(matches!(
        cache.load(Alpha::Psi, 0).unwrap(),
        Lookup::Stale(_)
    ));
}

#[test]
fn covering_entry_serves_smaller_caps() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path());
    cache.ensure(Alpha::Psi, 3, 2).unwrap();
    let t = cache.find_covering(Alpha::Psi, 2, 1).unwrap().unwrap();
    assert_eq!(t.s_degree_cap(), 1);
    assert_eq!(
        t.level(2).unwrap(),
        TauTable::compute(Alpha::Psi, 2, 1)
            .unwrap()
            .level(2)
            .unwrap()
    );
    assert!(cache.find_covering(Alpha::Psi, 4, 1).unwrap().is_none());
    assert!(cache.find_covering(Alpha::Psi, 2, 3).unwrap().is_none());
}

#[test]
fn inhomogeneous_file_is_stale_even_with_matching_hash() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path());
    cache.ensure(Alpha::Theta, 2, 0).unwrap();
    let entry = cache.entry_dir(Alpha::Theta, 0);
    let text = "t1 + t3\n";
    fs::write(entry.join("level_1.poly"), text).unwrap();
    let mut manifest = cache.manifest(Alpha::Theta, 0).unwrap().unwrap();
    manifest.levels[1].sha256 = format!("{:x}", Sha256::digest(text.as_bytes()));
    fs::write(
        entry.join("manifest.json"),
        serde_json::to_vec(&manifest).unwrap(),
    )
    .unwrap();
    assert!(matches!(
        cache.load(Alpha::Theta, 0).unwrap(),
        Lookup::Stale(_)
    ));
}
