//! Numeric evidence for the 2n-element intermediate subfactor lattice of
//! the u-weight inclusion at level k = n'n: the orbit decomposition of
//! v x (n',...,n'), the index arithmetic, the S-entry nonvanishing checks
//! and the exhaustive factorization scan.
//!
//! Run with: cargo run --release --example lattice_evidence

use wzw::subfactor::lattice_evidence;

fn main() -> wzw::Result<()> {
    for (n, nprime) in [(2usize, 4u32), (3, 3)] {
        let ev = lattice_evidence(n, nprime)?;
        println!("SU({n}) level {} (n' = {nprime}):", nprime * n as u32);
        println!("  u = ({}), fixed point = ({})", ev.u, ev.fixed_rep);
        let orbit: Vec<String> = ev.orbit_of_u.iter().map(|w| format!("({w})")).collect();
        println!("  orbit of u: {}", orbit.join(", "));
        println!("  v x fixed decomposes into the orbit, each once: {}", ev.decomposition_check);
        println!("  d_u = d_v d_fixed / n: {}", ev.dimension_check);
        println!(
            "  |S_u,v0| = {:.6}, |S_u,Lambda| = {:.6}, both nonzero: {}",
            ev.s_u_v0.norm(),
            ev.s_u_cap_lambda.norm(),
            ev.s_nonvanishing
        );
        println!("  factorization-scan survivors ({} ordered pairs, evidence only):", ev.survivors.len());
        for (a, b) in &ev.survivors {
            println!("    ({a}) x ({b})");
        }
        println!();
    }
    Ok(())
}
