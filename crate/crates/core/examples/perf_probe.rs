use edgeideals_core::betti::BettiEngine;
use edgeideals_core::ideal::parse_ideal;

fn main() {
    let engine = BettiEngine::default();
    // Zig-zag shape of instance (b) with varying weights: which (w2,w4,w6)
    // give reg(I^2) = 17 and pd(I^2) = 3?
    for w2 in 2..=8u32 {
        for w4 in 2..=8u32 {
            for w6 in 2..=8u32 {
                let text = format!(
                    "ring x1 x2 x3 x4 x5 x6\nx1*x2^{w2}\nx3*x2^{w2}\nx3*x4^{w4}\nx5*x4^{w4}\nx5*x6^{w6}\n"
                );
                let i = parse_ideal(&text).unwrap().power(2).unwrap();
                let t = engine.betti_table(&i).unwrap();
                let reg = t.regularity().unwrap();
                let pd = t.projective_dimension().unwrap();
                if reg == 17 {
                    println!("w=({w2},{w4},{w6}): reg 17, pd {pd}");
                }
            }
        }
    }
    println!("search done");
}
