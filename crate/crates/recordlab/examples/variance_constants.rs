//! High-precision variance constants v_d (Pareto records), vtilde_d
//! (maxima) and K_d, with certified error bounds and a quadrature oracle.
//!
//! Run with: `cargo run --release --example variance_constants`

use recordlab::varconstants::{k_const, oracle_integral, v_const, vtilde_const, OracleKind};

fn main() {
    println!("{:>2} {:>22} {:>22} {:>22}", "d", "v_d", "vtilde_d", "K_d");
    for d in 2..=6usize {
        let v = v_const(d, 1e-12).unwrap();
        let vt = vtilde_const(d, 1e-12).unwrap();
        let k = k_const(d, 1e-12).unwrap();
        println!(
            "{d:>2} {:>22.16} {:>22.16} {:>22.16}",
            v.value.value, vt.value.value, k.value.value
        );
        println!(
            "   err bounds        {:>9.1e} {:>22.1e} {:>22.1e}",
            v.value.err, vt.value.err, k.value.err
        );
    }

    // the residue series agree with direct quadrature of the defining
    // integrals
    let d = 3;
    let series = recordlab::varconstants::i_d0(d, 1e-12).unwrap();
    let quad = oracle_integral(OracleKind::I0, d).unwrap();
    println!(
        "I_{{3,0}}: series {:.10} vs quadrature {:.10} (|diff| {:.1e})",
        series.value,
        quad.value,
        (series.value - quad.value).abs()
    );
}
