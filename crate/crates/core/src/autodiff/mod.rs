//! Scalar reverse-mode differentiation on a flat tape.
//!
//! Every node is a scalar `f64`. Nodes are appended in evaluation order, so
//! the tape is a topological order by construction and a backward pass is a
//! single reverse sweep. Each node stores the local partial derivative with
//! respect to each of its parents; the sweep accumulates
//! `grad[parent] += grad[node] * partial`.
//!
//! The tape is meant to be rebuilt for every mini-batch: call
//! [`Tape::clear`] and record the computation again. Clearing invalidates all
//! previously issued [`Var`] handles.

use std::sync::atomic::{AtomicU64, Ordering};

use thiserror::Error;

#[cfg(test)]
mod tests;

static NEXT_TAPE_ID: AtomicU64 = AtomicU64::new(1);

fn fresh_id() -> u64 {
    NEXT_TAPE_ID.fetch_add(1, Ordering::Relaxed)
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AutodiffError {
    #[error("log of non-positive value {0}")]
    LogDomain(f64),
    #[error("division by zero")]
    DivByZero,
    #[error("non-finite value {value} produced by {op}")]
    NonFinite { op: &'static str, value: f64 },
    #[error("{op} expects {expected} operand(s), got {got}")]
    Arity {
        op: &'static str,
        expected: &'static str,
        got: usize,
    },
    #[error("{op} over an empty operand list")]
    Empty { op: &'static str },
    #[error("variable does not belong to this tape (or the tape was cleared)")]
    ForeignVar,
}

/// Handle to a scalar node on a [`Tape`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Var {
    tape: u64,
    index: u32,
}

impl Var {
    pub fn index(self) -> usize {
        self.index as usize
    }
}

/// Operation kinds accepted by [`Tape::apply`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpKind {
    Add,
    Sub,
    Mul,
    Div,
    Exp,
    Log,
    Sigmoid,
    Tanh,
    Relu,
    Max,
    Square,
    Mean,
    Sum,
}

impl OpKind {
    pub const ALL: [OpKind; 13] = [
        OpKind::Add,
        OpKind::Sub,
        OpKind::Mul,
        OpKind::Div,
        OpKind::Exp,
        OpKind::Log,
        OpKind::Sigmoid,
        OpKind::Tanh,
        OpKind::Relu,
        OpKind::Max,
        OpKind::Square,
        OpKind::Mean,
        OpKind::Sum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OpKind::Add => "add",
            OpKind::Sub => "sub",
            OpKind::Mul => "mul",
            OpKind::Div => "div",
            OpKind::Exp => "exp",
            OpKind::Log => "log",
            OpKind::Sigmoid => "sigmoid",
            OpKind::Tanh => "tanh",
            OpKind::Relu => "relu",
            OpKind::Max => "max",
            OpKind::Square => "square",
            OpKind::Mean => "mean",
            OpKind::Sum => "sum",
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Edge {
    parent: u32,
    partial: f64,
}

/// Numerically stable logistic function.
pub fn sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

#[derive(Debug)]
pub struct Tape {
    id: u64,
    values: Vec<f64>,
    // edges of node i live in edges[edge_start[i]..edge_start[i + 1]]
    edge_start: Vec<u32>,
    edges: Vec<Edge>,
}

impl Default for Tape {
    fn default() -> Self {
        Self::new()
    }
}

impl Tape {
    pub fn new() -> Self {
        Tape {
            id: fresh_id(),
            values: Vec::new(),
            edge_start: vec![0],
            edges: Vec::new(),
        }
    }

    /// Drops every node but keeps the allocations. Outstanding `Var`s become foreign.
    pub fn clear(&mut self) {
        self.id = fresh_id();
        self.values.clear();
        self.edges.clear();
        self.edge_start.clear();
        self.edge_start.push(0);
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn owns(&self, v: Var) -> bool {
        v.tape == self.id && v.index() < self.values.len()
    }

    #[inline]
    pub fn value(&self, v: Var) -> f64 {
        debug_assert!(self.owns(v), "foreign Var");
        self.values[v.index()]
    }

    pub fn try_value(&self, v: Var) -> Result<f64, AutodiffError> {
        if self.owns(v) {
            Ok(self.values[v.index()])
        } else {
            Err(AutodiffError::ForeignVar)
        }
    }

    #[inline]
    fn push(&mut self, value: f64) -> Var {
        let index = self.values.len() as u32;
        self.values.push(value);
        self.edge_start.push(self.edges.len() as u32);
        Var { tape: self.id, index }
    }

    #[inline]
    fn edge(&mut self, parent: Var, partial: f64) {
        debug_assert!(self.owns(parent), "foreign Var");
        self.edges.push(Edge {
            parent: parent.index,
            partial,
        });
    }

    #[inline]
    fn unary(&mut self, x: Var, value: f64, partial: f64) -> Var {
        self.edge(x, partial);
        self.push(value)
    }

    #[inline]
    fn binary(&mut self, a: Var, da: f64, b: Var, db: f64, value: f64) -> Var {
        self.edge(a, da);
        self.edge(b, db);
        self.push(value)
    }

    /// Input node whose gradient is wanted.
    pub fn leaf(&mut self, value: f64) -> Result<Var, AutodiffError> {
        if !value.is_finite() {
            return Err(AutodiffError::NonFinite { op: "leaf", value });
        }
        Ok(self.push(value))
    }

    /// Same storage as a leaf; named separately for readability at call sites.
    pub fn constant(&mut self, value: f64) -> Result<Var, AutodiffError> {
        if !value.is_finite() {
            return Err(AutodiffError::NonFinite { op: "constant", value });
        }
        Ok(self.push(value))
    }

    pub fn add(&mut self, a: Var, b: Var) -> Var {
        let v = self.value(a) + self.value(b);
        self.binary(a, 1.0, b, 1.0, v)
    }

    pub fn sub(&mut self, a: Var, b: Var) -> Var {
        let v = self.value(a) - self.value(b);
        self.binary(a, 1.0, b, -1.0, v)
    }

    pub fn mul(&mut self, a: Var, b: Var) -> Var {
        let (va, vb) = (self.value(a), self.value(b));
        self.binary(a, vb, b, va, va * vb)
    }

    pub fn div(&mut self, a: Var, b: Var) -> Result<Var, AutodiffError> {
        let (va, vb) = (self.value(a), self.value(b));
        if vb == 0.0 {
            return Err(AutodiffError::DivByZero);
        }
        let q = va / vb;
        Ok(self.binary(a, 1.0 / vb, b, -q / vb, q))
    }

    pub fn neg(&mut self, x: Var) -> Var {
        let v = -self.value(x);
        self.unary(x, v, -1.0)
    }

    pub fn scale(&mut self, x: Var, k: f64) -> Var {
        let v = self.value(x) * k;
        self.unary(x, v, k)
    }

    pub fn add_const(&mut self, x: Var, c: f64) -> Var {
        let v = self.value(x) + c;
        self.unary(x, v, 1.0)
    }

    pub fn exp(&mut self, x: Var) -> Result<Var, AutodiffError> {
        let e = self.value(x).exp();
        if !e.is_finite() {
            return Err(AutodiffError::NonFinite { op: "exp", value: e });
        }
        Ok(self.unary(x, e, e))
    }

    pub fn log(&mut self, x: Var) -> Result<Var, AutodiffError> {
        let v = self.value(x);
        if v <= 0.0 {
            return Err(AutodiffError::LogDomain(v));
        }
        Ok(self.unary(x, v.ln(), 1.0 / v))
    }

    pub fn sigmoid(&mut self, x: Var) -> Var {
        let s = sigmoid(self.value(x));
        self.unary(x, s, s * (1.0 - s))
    }

    pub fn tanh(&mut self, x: Var) -> Var {
        let t = self.value(x).tanh();
        self.unary(x, t, 1.0 - t * t)
    }

    /// `max(0, x)`; the subgradient at exactly 0 is 0.
    pub fn relu(&mut self, x: Var) -> Var {
        let v = self.value(x);
        if v > 0.0 {
            self.unary(x, v, 1.0)
        } else {
            self.unary(x, 0.0, 0.0)
        }
    }

    /// `max(a, b)`. On a tie the gradient goes to `b`, so `max(x, 0)` at
    /// `x == 0` passes nothing to `x`.
    pub fn max(&mut self, a: Var, b: Var) -> Var {
        let (va, vb) = (self.value(a), self.value(b));
        if va > vb {
            self.binary(a, 1.0, b, 0.0, va)
        } else {
            self.binary(a, 0.0, b, 1.0, vb)
        }
    }

    pub fn square(&mut self, x: Var) -> Var {
        let v = self.value(x);
        self.unary(x, v * v, 2.0 * v)
    }

    pub fn sum(&mut self, xs: &[Var]) -> Result<Var, AutodiffError> {
        if xs.is_empty() {
            return Err(AutodiffError::Empty { op: "sum" });
        }
        let mut total = 0.0;
        for &x in xs {
            total += self.value(x);
            self.edge(x, 1.0);
        }
        Ok(self.push(total))
    }

    pub fn mean(&mut self, xs: &[Var]) -> Result<Var, AutodiffError> {
        if xs.is_empty() {
            return Err(AutodiffError::Empty { op: "mean" });
        }
        let w = 1.0 / xs.len() as f64;
        let mut total = 0.0;
        for &x in xs {
            total += self.value(x);
            self.edge(x, w);
        }
        Ok(self.push(total * w))
    }

    /// `bias + Σ w·x` where the `x` are plain numbers (network inputs).
    pub fn affine<I>(&mut self, bias: Var, terms: I) -> Var
    where
        I: IntoIterator<Item = (Var, f64)>,
    {
        let mut total = self.value(bias);
        self.edge(bias, 1.0);
        for (w, x) in terms {
            total += self.value(w) * x;
            self.edge(w, x);
        }
        self.push(total)
    }

    /// `bias + Σ a·b` with both factors on the tape.
    pub fn linear<I>(&mut self, bias: Var, terms: I) -> Var
    where
        I: IntoIterator<Item = (Var, Var)>,
    {
        let mut total = self.value(bias);
        self.edge(bias, 1.0);
        for (a, b) in terms {
            let (va, vb) = (self.value(a), self.value(b));
            total += va * vb;
            self.edge(a, vb);
            self.edge(b, va);
        }
        self.push(total)
    }

    /// Generic entry point keyed by [`OpKind`], checking arity and ownership.
    pub fn apply(&mut self, kind: OpKind, inputs: &[Var]) -> Result<Var, AutodiffError> {
        if inputs.iter().any(|v| !self.owns(*v)) {
            return Err(AutodiffError::ForeignVar);
        }
        let arity = |expected: usize, label: &'static str| {
            if inputs.len() == expected {
                Ok(())
            } else {
                Err(AutodiffError::Arity {
                    op: kind.name(),
                    expected: label,
                    got: inputs.len(),
                })
            }
        };
        match kind {
            OpKind::Add | OpKind::Sub | OpKind::Mul | OpKind::Div | OpKind::Max => {
                arity(2, "2")?;
                let (a, b) = (inputs[0], inputs[1]);
                match kind {
                    OpKind::Add => Ok(self.add(a, b)),
                    OpKind::Sub => Ok(self.sub(a, b)),
                    OpKind::Mul => Ok(self.mul(a, b)),
                    OpKind::Div => self.div(a, b),
                    _ => Ok(self.max(a, b)),
                }
            }
            OpKind::Exp | OpKind::Log | OpKind::Sigmoid | OpKind::Tanh | OpKind::Relu | OpKind::Square => {
                arity(1, "1")?;
                let x = inputs[0];
                match kind {
                    OpKind::Exp => self.exp(x),
                    OpKind::Log => self.log(x),
                    OpKind::Sigmoid => Ok(self.sigmoid(x)),
                    OpKind::Tanh => Ok(self.tanh(x)),
                    OpKind::Relu => Ok(self.relu(x)),
                    _ => Ok(self.square(x)),
                }
            }
            OpKind::Mean => self.mean(inputs),
            OpKind::Sum => self.sum(inputs),
        }
    }

    /// Reverse sweep from `root`. Nodes not upstream of `root` get gradient 0.
    pub fn backward(&self, root: Var) -> Result<Gradients, AutodiffError> {
        if !self.owns(root) {
            return Err(AutodiffError::ForeignVar);
        }
        let end = root.index() + 1;
        let mut grads = vec![0.0; self.values.len()];
        grads[root.index()] = 1.0;
        for node in (0..end).rev() {
            let g = grads[node];
            if g == 0.0 {
                continue;
            }
            let lo = self.edge_start[node] as usize;
            let hi = self.edge_start[node + 1] as usize;
            for e in &self.edges[lo..hi] {
                grads[e.parent as usize] += g * e.partial;
            }
        }
        Ok(Gradients { tape: self.id, grads })
    }
}

/// Result of [`Tape::backward`]: d(root)/d(node) for every node on the tape.
#[derive(Debug, Clone, PartialEq)]
pub struct Gradients {
    tape: u64,
    grads: Vec<f64>,
}

impl Gradients {
    /// Gradient with respect to `v`; 0 for handles from another tape.
    pub fn wrt(&self, v: Var) -> f64 {
        if v.tape != self.tape {
            return 0.0;
        }
        self.grads.get(v.index()).copied().unwrap_or(0.0)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.grads
    }
}
