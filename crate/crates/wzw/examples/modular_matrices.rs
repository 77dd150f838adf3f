//! Build the Kac-Peterson S-matrix and the T-matrix for SU(2) level 4 and
//! verify the modular relations, including the fusion-side Y-matrix route.
//!
//! Run with: cargo run --release --example modular_matrices

use wzw::fusion::FusionTensor;
use wzw::modular::{ymatrix, ModularData};
use wzw::weights::TheoryParams;

fn main() -> wzw::Result<()> {
    let md = ModularData::new(TheoryParams::new(2, 4)?)?;

    println!("S-matrix of SU(2) level 4 (real for n = 2):");
    let m = md.tp().size();
    for i in 0..m {
        let row: Vec<String> = (0..m).map(|j| format!("{:+.6}", md.s().get(i, j).re)).collect();
        println!("  [{}]", row.join(", "));
    }

    println!();
    println!("unitarity residual        = {:.3e}", md.unitarity_residual());
    println!("S^2 vs conjugation perm   = {:.3e}", md.conjugation_residual());
    println!("STS vs T^-1 S T^-1        = {:.3e}", md.sts_residual());
    println!("simple-current symmetry   = {:.3e}", md.simple_current_symmetry_residual());
    println!("c0 (defined mod 8)        = {:.10}", md.c0());
    println!("|a|^2 vs sum d^2          = {:.3e}", (md.a().norm_sqr() - md.global_dim()).abs());

    // Y from the fusion side reproduces S after scaling by 1/|a|
    let nt = FusionTensor::verlinde(&md)?;
    let y = ymatrix(&md, &nt);
    let (branch, residual) = y.branch();
    println!("|a|^-1 Y matches {branch} to {residual:.3e}");
    Ok(())
}
