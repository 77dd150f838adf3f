//! The D-type simple-current modular invariant of SU(2) level 8 (the D6
//! invariant), with the orbit table and the S/T commutation report.
//!
//! Run with: cargo run --release --example simple_current_invariant

use wzw::modular::ModularData;
use wzw::simple_current::{build_z, induced_overlap, orbit_structure};
use wzw::weights::{TheoryParams, Weight};

fn main() -> wzw::Result<()> {
    let md = ModularData::new(TheoryParams::new(2, 8)?)?;
    let tp = md.tp();

    println!("orbits of SU(2) level 8 under the simple current:");
    for idx in [0usize, 1, 4] {
        let o = orbit_structure(&md, tp.weight(idx))?;
        let members: Vec<String> = o.members.iter().map(|w| w.to_string()).collect();
        println!(
            "  orbit of ({}): l = {}, pieces = {}, piece_dim = {:.6}, members = {{{}}}",
            o.representative,
            o.l,
            o.pieces,
            o.piece_dim,
            members.join(", ")
        );
    }
    let fixed = Weight::new(vec![4]);
    println!(
        "  <a_(4), a_(4)> = {} (the fixed point splits)",
        induced_overlap(tp, 4, &fixed, &fixed)?
    );

    let sc = build_z(&md, 4)?;
    println!();
    println!("modular invariant Z (nonzero entries):");
    for (lam, mu, mult) in sc.iter_nonzero() {
        println!("  Z[{}][{}] = {mult}", tp.weight(lam), tp.weight(mu));
    }
    println!(
        "commutation: max|ZS-SZ| = {:.3e}, max|ZT-TZ| = {:.3e}",
        sc.commutation().max_s_deviation,
        sc.commutation().max_t_deviation
    );
    let exps: Vec<String> =
        sc.exponents().iter().map(|(w, m)| format!("{w} (x{m})")).collect();
    println!("exponents: {}", exps.join(", "));
    Ok(())
}
