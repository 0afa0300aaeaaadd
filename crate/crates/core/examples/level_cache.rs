//! Persisting level records and detecting tampered cache files.
//!
//! ```bash
//! cargo run --example level_cache
//! ```

use aswtower::cli::{compute_levels, LevelCache, Lookup};
use aswtower::tower::TowerSpec;

fn main() -> aswtower::Result<()> {
    let spec = TowerSpec::from_json(include_str!("towers/x3_p2.json"))?;
    let dir = std::env::temp_dir().join(format!("aswtower-example-{}", std::process::id()));
    let cache = LevelCache::new(Some(dir.clone()));
    let first = compute_levels(&spec, 1..=3, &cache)?;
    let path = cache.path(&spec, 2).expect("cache enabled");
    println!("wrote {}", path.display());
    match cache.lookup(&spec, 2) {
        Lookup::Hit(l) => println!("read back level 2 intact: {}", *l == first[1]),
        other => println!("unexpected: {other:?}"),
    }
    let text = std::fs::read_to_string(&path)?.replacen("\"genus\": 6", "\"genus\": 7", 1);
    std::fs::write(&path, text)?;
    if let Lookup::Corrupt(msg) = cache.lookup(&spec, 2) {
        println!("tampered file rejected: {msg}");
    }
    let again = compute_levels(&spec, 1..=3, &cache)?;
    println!("recomputed levels agree: {}", again == first);
    std::fs::remove_dir_all(dir)?;
    Ok(())
}
