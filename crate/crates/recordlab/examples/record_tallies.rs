//! Count the four record statistics of one seeded sample sequence.
//!
//! Run with: `cargo run --release --example record_tallies`

use recordlab::geometry::{sample_point, Model, RngStream};
use recordlab::records::{count_chain, count_dominating, count_pareto};

fn main() {
    let model = Model::simplex(2).unwrap();
    let mut rng = RngStream::new(0x5EED, 0);
    let seq: Vec<_> = (0..30).map(|_| sample_point(model, &mut rng)).collect();

    let pareto = count_pareto(&seq, true);
    let chain = count_chain(&seq, true);
    let dom = count_dominating(&seq, true);

    println!("n = {} points iud in the 2-simplex", seq.len());
    println!(
        "pareto records:     {:2}  at arrivals {:?}",
        pareto.pareto_count, pareto.pareto_indices
    );
    println!(
        "chain records:      {:2}  at arrivals {:?}",
        chain.chain_count, chain.chain_indices
    );
    println!(
        "dominating records: {:2}  at arrivals {:?}",
        dom.dominating_count, dom.dominating_indices
    );
    println!("maxima of the full set: {}", pareto.maxima_count);

    // every dominating record is a chain record; every chain record is a
    // Pareto record
    assert!(dom
        .dominating_indices
        .iter()
        .all(|i| chain.chain_indices.contains(i)));
    assert!(chain
        .chain_indices
        .iter()
        .all(|i| pareto.pareto_indices.contains(i)));
    println!("nesting dominating <= chain <= pareto verified");
}
