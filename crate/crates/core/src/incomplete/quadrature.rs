use std::f64::consts::PI;

use crate::{Error, Result};

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Rule with `order` nodes, found by Newton iteration on `P_order`.
    pub fn new(order: usize) -> Self {
        assert!(order >= 1, "quadrature order must be positive");
        let mut nodes = vec![0.0; order];
        let mut weights = vec![0.0; order];
        let n = order as f64;
        for i in 0..order.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (n + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                // three-term recurrence for P_order(x) and P_{order-1}(x)
                let (mut p0, mut p1) = (1.0, x);
                for j in 2..=order {
                    let jf = j as f64;
                    let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                let step = p1 / dp;
                x -= step;
                if step.abs() < 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[order - 1 - i] = x;
            weights[i] = w;
            weights[order - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Single application of the rule on `[a, b]`.
    pub fn apply<F: Fn(f64) -> f64>(&self, f: &F, a: f64, b: f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let sum: f64 = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(mid + half * x))
            .sum();
        half * sum
    }
}

const GRADED_LEVELS: usize = 40;

/// Composite Gauss-Legendre integration with a halving error estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct Quadrature {
    pub panels: usize,
    pub rel_tol: f64,
    pub abs_tol: f64,
    rule: GaussLegendre,
}

impl Default for Quadrature {
    fn default() -> Self {
        Self::new(256, 8)
    }
}

impl Quadrature {
    pub fn new(panels: usize, order: usize) -> Self {
        assert!(
            panels >= 2,
            "at least two panels are needed for the error estimate"
        );
        Self {
            panels,
            rel_tol: 1e-10,
            abs_tol: 1e-14,
            rule: GaussLegendre::new(order),
        }
    }

    pub fn rule(&self) -> &GaussLegendre {
        &self.rule
    }

    /// `panels` equal panels on `[a, b]`, the two end panels split
    /// geometrically towards the endpoints so that algebraic endpoint
    /// behaviour such as `t^0.1` is integrated accurately.
    pub fn composite<F: Fn(f64) -> f64>(&self, f: &F, a: f64, b: f64, panels: usize) -> f64 {
        let width = (b - a) / panels as f64;
        if panels == 1 {
            let mid = a + 0.5 * width;
            return self.graded(f, mid, a) + self.graded(f, mid, b);
        }
        let inner = self.uniform(f, a + width, b - width, panels - 2);
        self.graded(f, a + width, a) + inner + self.graded(f, b - width, b)
    }

    fn uniform<F: Fn(f64) -> f64>(&self, f: &F, a: f64, b: f64, panels: usize) -> f64 {
        if panels == 0 {
            return 0.0;
        }
        let width = (b - a) / panels as f64;
        (0..panels)
            .map(|i| {
                let lo = a + width * i as f64;
                let hi = if i + 1 == panels { b } else { lo + width };
                self.rule.apply(f, lo, hi)
            })
            .sum()
    }

    /// Integral over the segment between `from` and `end`, halving towards `end`.
    fn graded<F: Fn(f64) -> f64>(&self, f: &F, from: f64, end: f64) -> f64 {
        let mut acc = 0.0;
        let mut outer = from;
        for _ in 0..GRADED_LEVELS {
            let inner = end + 0.5 * (outer - end);
            acc += self.rule.apply(f, inner.min(outer), inner.max(outer));
            outer = inner;
        }
        acc + self.rule.apply(f, end.min(outer), end.max(outer))
    }

    /// Integral over `[a, b]`; fails when the full and half panel counts
    /// disagree by more than `max(rel_tol * |I|, abs_tol)`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: &F, a: f64, b: f64) -> Result<f64> {
        if a == b {
            return Ok(0.0);
        }
        let fine = self.composite(f, a, b, self.panels);
        let coarse = self.composite(f, a, b, self.panels / 2);
        let err = (fine - coarse).abs();
        if !fine.is_finite() || err > (self.rel_tol * fine.abs()).max(self.abs_tol) {
            return Err(Error::Quadrature {
                achieved: if fine.is_finite() {
                    err / fine.abs().max(self.abs_tol)
                } else {
                    f64::INFINITY
                },
                requested: self.rel_tol,
            });
        }
        Ok(fine)
    }

    /// Running integrals `int_0^{v_i} f` over an ascending grid.
    ///
    /// Each gap is covered by panels no wider than `scale / panels`; the last
    /// point is re-integrated with [`Quadrature::integrate`] as a convergence check.
    pub fn cumulative<F: Fn(f64) -> f64>(
        &self,
        f: &F,
        grid: &[f64],
        scale: f64,
    ) -> Result<Vec<f64>> {
        let max_width = scale / self.panels as f64;
        let mut out = Vec::with_capacity(grid.len());
        let (mut prev, mut acc) = (0.0, 0.0);
        for &v in grid {
            if v < prev {
                return Err(Error::InvalidGrid(format!(
                    "grid must be ascending from 0, got {v} after {prev}"
                )));
            }
            let pieces = ((v - prev) / max_width).ceil().max(1.0) as usize;
            acc += if out.is_empty() {
                self.composite(f, prev, v, pieces)
            } else {
                self.uniform(f, prev, v, pieces)
            };
            out.push(acc);
            prev = v;
        }
        if let Some(&last) = grid.last() {
            self.integrate(f, 0.0, last)?;
        }
        Ok(out)
    }
}
