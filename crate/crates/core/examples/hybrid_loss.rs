//! Evaluates the hybrid loss and its gradient on a fixed five-sample batch
//! while the interval half-width grows, then compares every training
//! objective at one setting.
//!
//! cargo run --example hybrid_loss

use ubpi::autodiff::Tape;
use ubpi::losses::{hybrid_loss, objective, LossConfig, LossKind};
use ubpi::model::IntervalVar;

const YS: [f64; 5] = [0.2, -0.4, 1.1, 0.0, 0.7];
const CENTERS: [f64; 5] = [0.0, -0.1, 0.8, 0.3, 0.5];

fn record(tape: &mut Tape, half: f64) -> ubpi::Result<Vec<IntervalVar>> {
    CENTERS
        .iter()
        .map(|c| {
            Ok(IntervalVar {
                lower: tape.leaf(c - half)?,
                upper: tape.leaf(c + half)?,
            })
        })
        .collect()
}

fn main() -> ubpi::Result<()> {
    let cfg = LossConfig::default();
    println!(
        "{:>6}  {:>10}  {:>9}  {:>9}  {:>9}  {:>11}",
        "half", "total", "l_ue", "l_pi", "soft_picp", "d/d(upper0)"
    );
    for half in [0.05, 0.1, 0.2, 0.3, 0.4, 0.6, 1.0] {
        let mut tape = Tape::new();
        let ivs = record(&mut tape, half)?;
        let h = hybrid_loss(&mut tape, &ivs, &YS, &cfg)?;
        let g = tape.backward(h.total)?;
        let b = h.breakdown;
        println!(
            "{half:>6.2}  {:>10.4}  {:>9.4}  {:>9.5}  {:>9.4}  {:>11.4}",
            b.total,
            b.l_ue,
            b.l_pi,
            b.picp_soft,
            g.wrt(ivs[0].upper)
        );
    }

    println!();
    let range = YS.iter().cloned().fold(f64::MIN, f64::max) - YS.iter().cloned().fold(f64::MAX, f64::min);
    for kind in [LossKind::Ubpi, LossKind::Lube, LossKind::Mbpep, LossKind::Pinball] {
        let mut tape = Tape::new();
        let ivs = record(&mut tape, 0.3)?;
        let (root, _) = objective(&mut tape, kind, &ivs, &YS, &cfg, range)?;
        println!("{:<8} {:.6}", kind.name(), tape.value(root));
    }
    Ok(())
}
