use std::time::Instant;

use cubic_paths::block::{growth_factor_of, solve_block_with_table, BlockInstance, SuffixTable};

fn main() {
    let max: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(24);
    let t = Instant::now();
    let mut budget = u64::MAX;
    let table = SuffixTable::build(max - 1, &mut budget);
    println!("table built in {:?}: {:?}", t.elapsed(), (0..max).map(|r| table.get(r)).collect::<Vec<_>>());
    for k in 2..=max {
        let t = Instant::now();
        let s = solve_block_with_table(BlockInstance::new(k).unwrap(), &table, u64::MAX);
        println!("k={k} f={} g2={:.4} nodes={} {:?}", s.f, growth_factor_of(&s.f, k), s.nodes_explored, t.elapsed());
    }
}
