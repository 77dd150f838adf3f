//! Maximality classification of the Jones-Wassermann subfactors: the SU(2)
//! half-level rule, a coprime case where everything is maximal, and the
//! prime-power consistency scan behind the S-entry criterion.
//!
//! Run with: cargo run --release --example maximality_scan

use wzw::modular::ModularData;
use wzw::subfactor::{maximality_table, prime_power_consistency};
use wzw::weights::TheoryParams;

fn main() -> wzw::Result<()> {
    let md = ModularData::new(TheoryParams::new(2, 8)?)?;
    println!("SU(2) level 8:");
    for report in maximality_table(&md)? {
        println!(
            "  {:<4} {:<12} {:<16} |S_v,lambda| = {:.6}",
            report.weight.to_string(),
            report.verdict.to_string(),
            report.reason.to_string(),
            report.s_v_value.norm()
        );
    }

    println!();
    println!("SU(3) level 5 (gcd(k,n) = 1, k + n = 8 a prime power):");
    let md35 = ModularData::new(TheoryParams::new(3, 5)?)?;
    let verdicts = maximality_table(&md35)?;
    let all_maximal = verdicts
        .iter()
        .all(|r| r.verdict == wzw::subfactor::Verdict::Maximal);
    println!("  all {} weights maximal: {all_maximal}", verdicts.len());

    let report = prime_power_consistency(&md35)?;
    println!(
        "  prime-power scan: k + n = {}^{}, {} weights, {} counterexamples",
        report.p,
        report.l,
        report.weights_checked,
        report.counterexamples.len()
    );
    Ok(())
}
