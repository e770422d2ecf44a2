//! Records `f(x, y) = sigmoid(x·y) + log(y) - max(x, 0.5)²` on a tape,
//! runs one reverse pass and checks both partials against central
//! differences.
//!
//! cargo run --example autodiff_basics

use ubpi::autodiff::{sigmoid, Tape};

fn f_value(x: f64, y: f64) -> f64 {
    sigmoid(x * y) + y.ln() - x.max(0.5).powi(2)
}

fn main() -> ubpi::Result<()> {
    let (x0, y0) = (1.3, 0.7);
    let mut tape = Tape::new();
    let x = tape.leaf(x0)?;
    let y = tape.leaf(y0)?;
    let xy = tape.mul(x, y);
    let s = tape.sigmoid(xy);
    let ly = tape.log(y)?;
    let half = tape.constant(0.5)?;
    let m = tape.max(x, half);
    let m2 = tape.square(m);
    let a = tape.add(s, ly);
    let out = tape.sub(a, m2);
    let grads = tape.backward(out)?;

    let h = 1e-6;
    let dx = (f_value(x0 + h, y0) - f_value(x0 - h, y0)) / (2.0 * h);
    let dy = (f_value(x0, y0 + h) - f_value(x0, y0 - h)) / (2.0 * h);
    println!("f       = {:.10} (direct {:.10})", tape.value(out), f_value(x0, y0));
    println!("df/dx   = {:.10} (central difference {dx:.10})", grads.wrt(x));
    println!("df/dy   = {:.10} (central difference {dy:.10})", grads.wrt(y));
    println!("tape has {} nodes", tape.len());
    Ok(())
}
