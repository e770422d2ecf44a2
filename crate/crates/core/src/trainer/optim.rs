use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OptimizerKind {
    Sgd,
    /// Adaptive moment estimation with bias correction.
    #[default]
    Adam,
}

const BETA1: f64 = 0.9;
const BETA2: f64 = 0.999;
const EPS: f64 = 1e-8;

#[derive(Debug, Clone)]
pub enum Optimizer {
    Sgd { lr: f64 },
    Adam { lr: f64, m: Vec<f64>, v: Vec<f64>, t: i32 },
}

impl Optimizer {
    pub fn new(kind: OptimizerKind, lr: f64, n_params: usize) -> Self {
        match kind {
            OptimizerKind::Sgd => Optimizer::Sgd { lr },
            OptimizerKind::Adam => Optimizer::Adam {
                lr,
                m: vec![0.0; n_params],
                v: vec![0.0; n_params],
                t: 0,
            },
        }
    }

    pub fn step(&mut self, params: &mut [f64], grad: &[f64]) {
        match self {
            Optimizer::Sgd { lr } => {
                for (p, g) in params.iter_mut().zip(grad) {
                    *p -= *lr * g;
                }
            }
            Optimizer::Adam { lr, m, v, t } => {
                *t += 1;
                let c1 = 1.0 - BETA1.powi(*t);
                let c2 = 1.0 - BETA2.powi(*t);
                for i in 0..params.len() {
                    let g = grad[i];
                    m[i] = BETA1 * m[i] + (1.0 - BETA1) * g;
                    v[i] = BETA2 * v[i] + (1.0 - BETA2) * g * g;
                    let m_hat = m[i] / c1;
                    let v_hat = v[i] / c2;
                    params[i] -= *lr * m_hat / (v_hat.sqrt() + EPS);
                }
            }
        }
    }
}

/// Rescales `grad` in place so its L2 norm is at most `max_norm`. Returns the
/// norm before clipping.
pub fn clip_gradient(grad: &mut [f64], max_norm: f64) -> f64 {
    let norm = grad.iter().map(|g| g * g).sum::<f64>().sqrt();
    if norm > max_norm && norm > 0.0 {
        let k = max_norm / norm;
        grad.iter_mut().for_each(|g| *g *= k);
    }
    norm
}
