//! Fusion products by the Verlinde formula, cross-checked against the
//! combinatorial Pieri rule, with the dimension sum rule on display.
//!
//! Run with: cargo run --release --example fusion_rules

use wzw::fusion::{fuse_weights, pieri_fundamental, FusionTensor, SectorSum};
use wzw::modular::ModularData;
use wzw::weights::{TheoryParams, Weight};

fn main() -> wzw::Result<()> {
    let md = ModularData::new(TheoryParams::new(3, 9)?)?;
    let nt = FusionTensor::verlinde(&md)?;
    let tp = md.tp();

    let v = tp.v();
    let v0 = tp.v0();
    println!("SU(3) level 9 fusion products:");
    println!("  v x vbar = {}", fuse_weights(&nt, &v, &v.conjugate())?);
    println!("  v0 x v0  = {}", fuse_weights(&nt, &v0, &v0)?);
    let fixed = Weight::new(vec![3, 3]);
    println!("  v x (3,3) = {}   <- the omega-orbit of u = (4,3)", fuse_weights(&nt, &v, &fixed)?);
    println!("  worst Verlinde rounding residual: {:.3e}", nt.max_residual());

    // the Pieri rule is an independent oracle for fundamental fusion
    println!();
    for i in 1..tp.n() {
        let fi = tp.index_of(&tp.fundamental(i)).unwrap();
        let lam = Weight::new(vec![2, 1]);
        let oracle = pieri_fundamental(tp, i, &lam)?;
        let mut slice = SectorSum::new();
        for &(nu, mult) in nt.row(fi, tp.index_of(&lam).unwrap()) {
            slice.add(tp.weight(nu as usize).clone(), mult);
        }
        assert_eq!(slice, oracle);
        println!("  Lambda_{i} x (2,1) = {oracle}   (Pieri = Verlinde)");
    }

    // quantum dimensions are multiplicative across any fusion row
    println!();
    let (a, b) = (tp.index_of(&v0).unwrap(), tp.index_of(&fixed).unwrap());
    let sum: f64 =
        nt.row(a, b).iter().map(|&(nu, m)| m as f64 * md.qdim(nu as usize)).sum();
    println!(
        "  dimension sum rule: sum N d = {:.8}, d_v0 * d_(3,3) = {:.8}",
        sum,
        md.qdim(a) * md.qdim(b)
    );
    Ok(())
}
