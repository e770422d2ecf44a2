use super::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

#[test]
fn forward_examples() {
    let mut t = Tape::new();
    let a = t.leaf(2.0).unwrap();
    let b = t.leaf(3.0).unwrap();
    let sum = t.apply(OpKind::Add, &[a, b]).unwrap();
    assert_eq!(t.value(sum), 5.0);
    let one = t.leaf(1.0).unwrap();
    let log_one = t.log(one).unwrap();
    assert_eq!(t.value(log_one), 0.0);
    let zero = t.leaf(0.0).unwrap();
    let half = t.sigmoid(zero);
    assert_eq!(t.value(half), 0.5);
}

#[test]
fn backward_examples() {
    let mut t = Tape::new();
    let x = t.leaf(3.0).unwrap();
    let y = t.square(x);
    assert_eq!(t.backward(y).unwrap().wrt(x), 6.0);

    let mut t = Tape::new();
    let x = t.leaf(2.0).unwrap();
    let y = t.log(x).unwrap();
    assert_eq!(t.backward(y).unwrap().wrt(x), 0.5);

    let mut t = Tape::new();
    let x = t.leaf(0.0).unwrap();
    let p = t.sigmoid(x);
    let nx = t.neg(x);
    let q = t.sigmoid(nx);
    let r = t.mul(p, q);
    assert!(close(t.backward(r).unwrap().wrt(x), 0.0, 1e-15));
}

#[test]
fn domain_errors_are_explicit() {
    let mut t = Tape::new();
    let z = t.leaf(0.0).unwrap();
    let neg = t.leaf(-1.0).unwrap();
    let one = t.leaf(1.0).unwrap();
    assert_eq!(t.log(z), Err(AutodiffError::LogDomain(0.0)));
    assert_eq!(t.log(neg), Err(AutodiffError::LogDomain(-1.0)));
    assert_eq!(t.div(one, z), Err(AutodiffError::DivByZero));
    assert!(matches!(t.leaf(f64::NAN), Err(AutodiffError::NonFinite { .. })));
    let big = t.leaf(1000.0).unwrap();
    assert!(matches!(t.exp(big), Err(AutodiffError::NonFinite { .. })));
    assert!(matches!(
        t.apply(OpKind::Exp, &[one, one]),
        Err(AutodiffError::Arity { .. })
    ));
    assert!(matches!(t.mean(&[]), Err(AutodiffError::Empty { .. })));
}

#[test]
fn foreign_and_stale_roots_rejected() {
    let mut a = Tape::new();
    let b = Tape::new();
    let x = a.leaf(1.0).unwrap();
    assert_eq!(b.backward(x), Err(AutodiffError::ForeignVar));
    a.clear();
    assert_eq!(a.backward(x), Err(AutodiffError::ForeignVar));
}

#[test]
fn unreachable_nodes_have_zero_gradient() {
    let mut t = Tape::new();
    let x = t.leaf(1.5).unwrap();
    let y = t.leaf(2.5).unwrap();
    let r = t.square(x);
    let later = t.mul(x, y);
    let g = t.backward(r).unwrap();
    assert_eq!(g.wrt(y), 0.0);
    assert_eq!(g.wrt(later), 0.0);
}

#[test]
fn relu_and_max_tie_breaking() {
    let mut t = Tape::new();
    let x = t.leaf(0.0).unwrap();
    let r = t.relu(x);
    assert_eq!(t.backward(r).unwrap().wrt(x), 0.0);

    let zero = t.constant(0.0).unwrap();
    let m = t.max(x, zero);
    let g = t.backward(m).unwrap();
    assert_eq!(g.wrt(x), 0.0);
    assert_eq!(g.wrt(zero), 1.0);
}

#[test]
fn affine_and_linear_match_elementwise() {
    let mut t = Tape::new();
    let b = t.leaf(0.3).unwrap();
    let w: Vec<Var> = [0.5, -1.0, 2.0].iter().map(|&v| t.leaf(v).unwrap()).collect();
    let x = [1.0, 2.0, -0.5];
    let a = t.affine(b, w.iter().copied().zip(x));
    assert!(close(t.value(a), 0.3 + 0.5 - 2.0 - 1.0, 1e-15));
    let g = t.backward(a).unwrap();
    for (wi, xi) in w.iter().zip(x) {
        assert_eq!(g.wrt(*wi), xi);
    }
    assert_eq!(g.wrt(b), 1.0);

    let u: Vec<Var> = [1.0, 2.0, 3.0].iter().map(|&v| t.leaf(v).unwrap()).collect();
    let l = t.linear(b, w.iter().copied().zip(u.iter().copied()));
    let g = t.backward(l).unwrap();
    for (wi, ui) in w.iter().zip(&u) {
        assert_eq!(g.wrt(*wi), t.value(*ui));
        assert_eq!(g.wrt(*ui), t.value(*wi));
    }
}

/// A replayable random graph: leaves then a list of (op, operand indices).
struct RandomGraph {
    leaves: Vec<f64>,
    ops: Vec<(OpKind, Vec<usize>)>,
}

impl RandomGraph {
    fn generate(rng: &mut ChaCha8Rng) -> Self {
        let n_leaves = rng.random_range(1..=4);
        let leaves: Vec<f64> = (0..n_leaves).map(|_| rng.random_range(-2.0..2.0)).collect();
        let mut values = leaves.clone();
        let mut ops = Vec::new();
        let n_ops = rng.random_range(3..=20);
        while ops.len() < n_ops {
            let kind = OpKind::ALL[rng.random_range(0..OpKind::ALL.len())];
            let inputs: Vec<usize> = match kind {
                OpKind::Mean | OpKind::Sum => {
                    let k = rng.random_range(1..=4);
                    (0..k).map(|_| rng.random_range(0..values.len())).collect()
                }
                OpKind::Add | OpKind::Sub | OpKind::Mul | OpKind::Div | OpKind::Max => {
                    vec![rng.random_range(0..values.len()), rng.random_range(0..values.len())]
                }
                _ => vec![rng.random_range(0..values.len())],
            };
            let v: Vec<f64> = inputs.iter().map(|&i| values[i]).collect();
            // keep away from kinks, poles and overflow so finite differences are meaningful
            let out = match kind {
                OpKind::Add => v[0] + v[1],
                OpKind::Sub => v[0] - v[1],
                OpKind::Mul => v[0] * v[1],
                OpKind::Div if v[1].abs() > 0.2 => v[0] / v[1],
                OpKind::Exp if v[0] < 3.0 => v[0].exp(),
                OpKind::Log if v[0] > 0.2 => v[0].ln(),
                OpKind::Sigmoid => sigmoid(v[0]),
                OpKind::Tanh => v[0].tanh(),
                OpKind::Relu if v[0].abs() > 1e-3 => v[0].max(0.0),
                OpKind::Max if (v[0] - v[1]).abs() > 1e-3 => v[0].max(v[1]),
                OpKind::Square => v[0] * v[0],
                OpKind::Mean => v.iter().sum::<f64>() / v.len() as f64,
                OpKind::Sum => v.iter().sum(),
                _ => continue,
            };
            if out.abs() > 50.0 {
                continue;
            }
            values.push(out);
            ops.push((kind, inputs));
        }
        RandomGraph { leaves, ops }
    }

    /// Builds the graph on `tape`; returns (leaf vars, root = sum of all non-leaf nodes).
    fn build(&self, tape: &mut Tape, leaves: &[f64]) -> (Vec<Var>, Var) {
        let leaf_vars: Vec<Var> = leaves.iter().map(|&v| tape.leaf(v).unwrap()).collect();
        let mut nodes = leaf_vars.clone();
        for (kind, inputs) in &self.ops {
            let args: Vec<Var> = inputs.iter().map(|&i| nodes[i]).collect();
            nodes.push(tape.apply(*kind, &args).unwrap());
        }
        let root = tape.sum(&nodes[leaf_vars.len()..]).unwrap();
        (leaf_vars, root)
    }

    fn eval(&self, leaves: &[f64]) -> f64 {
        let mut t = Tape::new();
        let (_, root) = self.build(&mut t, leaves);
        t.value(root)
    }
}

#[test]
fn random_graphs_match_central_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let h = 1e-5;
    let mut checked = 0;
    while checked < 100 {
        let g = RandomGraph::generate(&mut rng);
        let mut tape = Tape::new();
        let (leaves, root) = g.build(&mut tape, &g.leaves);
        let grads = tape.backward(root).unwrap();
        let mut pairs = Vec::new();
        for (i, leaf) in leaves.iter().enumerate() {
            let mut plus = g.leaves.clone();
            let mut minus = g.leaves.clone();
            plus[i] += h;
            minus[i] -= h;
            let numeric = (g.eval(&plus) - g.eval(&minus)) / (2.0 * h);
            pairs.push((grads.wrt(*leaf), numeric));
        }
        for (analytic, numeric) in pairs {
            let abs = (analytic - numeric).abs();
            let rel = abs / analytic.abs().max(numeric.abs());
            assert!(
                abs < 1e-7 || rel < 1e-4,
                "graph {checked}: analytic {analytic} vs numeric {numeric}"
            );
        }
        checked += 1;
    }
}

#[test]
fn repeated_backward_is_identical() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let g = RandomGraph::generate(&mut rng);
        let mut tape = Tape::new();
        let (_, root) = g.build(&mut tape, &g.leaves);
        let first = tape.backward(root).unwrap();
        let second = tape.backward(root).unwrap();
        assert_eq!(first, second);
    }
}
