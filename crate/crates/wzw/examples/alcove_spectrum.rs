//! Enumerate the level-k alcove of SU(n) and print the spectrum: color
//! grading, exact conformal dimensions, quantum dimensions and twists.
//!
//! Run with: cargo run --release --example alcove_spectrum

use wzw::modular::ModularData;
use wzw::weights::TheoryParams;

fn main() -> wzw::Result<()> {
    let md = ModularData::new(TheoryParams::new(3, 4)?)?;
    let tp = md.tp();

    println!("SU({}) level {}: {} primaries", tp.n(), tp.k(), tp.size());
    println!("{:<5} {:<8} {:<6} {:<8} {:<12} twist", "index", "weight", "color", "h", "qdim");
    for (i, w) in tp.alcove().iter().enumerate() {
        let t = md.twist(i);
        println!(
            "{:<5} {:<8} {:<6} {:<8} {:<12.8} {:+.6}{:+.6}i",
            i,
            w.to_string(),
            tp.color(w),
            md.h(i).to_string(),
            md.qdim(i),
            t.re,
            t.im
        );
    }

    // the simple current rotates the alcove; conjugation reverses labels
    let v = tp.v();
    println!();
    println!("omega(v) = {}", tp.omega(&v, 1));
    println!("conj(v)  = {}", v.conjugate());
    println!("sum of squared quantum dimensions = {:.8}", md.global_dim());
    Ok(())
}
