//! Composite Gauss–Legendre rules with geometric grading at singular ends.
//!
//! Integrands in this crate carry algebraic endpoint factors such as `x^k` or
//! `(1-x)^α`. Panels shrink geometrically toward such an endpoint so the
//! composite rule keeps converging exponentially in the refinement level.
//! The half line is handled by the map `x = t/(1-t)` onto `(0, 1)`.

use crate::scalar::Real;

/// Nodes and weights of the `order`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre<T: Real>(order: usize) -> (Vec<T>, Vec<T>) {
    assert!(order > 0, "Gauss–Legendre order must be positive");
    let one = T::one();
    let two = T::of(2.0);
    let nf = T::of_usize(order);
    let mut nodes = vec![T::zero(); order];
    let mut weights = vec![T::zero(); order];
    for i in 0..order.div_ceil(2) {
        let mut x = (T::PI() * (T::of_usize(i) + T::of(0.75)) / (nf + T::of(0.5))).cos();
        let mut dp = one;
        for _ in 0..100 {
            let (mut p0, mut p1) = (one, x);
            for j in 2..=order {
                let jf = T::of_usize(j);
                let p2 = ((two * jf - one) * x * p1 - (jf - one) * p0) / jf;
                p0 = p1;
                p1 = p2;
            }
            if order == 1 {
                p0 = one;
            }
            dp = nf * (x * p1 - p0) / (x * x - one);
            let dx = p1 / dp;
            x = x - dx;
            if dx.abs() <= T::of(2.0) * T::epsilon() {
                break;
            }
        }
        let w = two / ((one - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[order - 1 - i] = x;
        weights[i] = w;
        weights[order - 1 - i] = w;
    }
    if order % 2 == 1 {
        nodes[order / 2] = T::zero();
    }
    (nodes, weights)
}

/// A discrete integration rule `Σ w_i f(x_i)` over `domain`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
    pub domain: (T, T),
}

impl<T: Real> QuadratureRule<T> {
    /// Gauss–Legendre rule of the given order on every panel.
    pub fn composite(panels: &[(T, T)], order: usize) -> Self {
        let (gx, gw) = gauss_legendre::<T>(order);
        let half = T::of(0.5);
        let mut nodes = Vec::with_capacity(panels.len() * order);
        let mut weights = Vec::with_capacity(panels.len() * order);
        for &(a, b) in panels {
            let mid = (a + b) * half;
            let rad = (b - a) * half;
            for (&x, &w) in gx.iter().zip(&gw) {
                nodes.push(mid + rad * x);
                weights.push(rad * w);
            }
        }
        let domain = (panels[0].0, panels[panels.len() - 1].1);
        QuadratureRule { nodes, weights, domain }
    }

    /// Pulls a rule on `(0, 1)` back to `(0, ∞)` through `x = t/(1-t)`.
    pub fn mapped_to_half_line(unit: &QuadratureRule<T>) -> Self {
        let one = T::one();
        let (nodes, weights) = unit
            .nodes
            .iter()
            .zip(&unit.weights)
            .map(|(&t, &w)| {
                let s = one - t;
                (t / s, w / (s * s))
            })
            .unzip();
        QuadratureRule {
            nodes,
            weights,
            domain: (T::zero(), T::infinity()),
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, mut f: impl FnMut(T) -> T) -> T {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

/// Splits `[lo, hi]` into `uniform` equal panels and subdivides the end
/// panels geometrically (ratio `ratio`, `layers` times) where requested.
pub fn graded_panels<T: Real>(
    lo: T,
    hi: T,
    grade_lo: bool,
    grade_hi: bool,
    uniform: usize,
    layers: usize,
    ratio: T,
) -> Vec<(T, T)> {
    let width = (hi - lo) / T::of_usize(uniform);
    let mut cuts: Vec<T> = Vec::new();
    // cuts within ~2^20 ulp of a nonzero endpoint are dropped so Gauss nodes stay interior
    let gap = T::of(1048576.0) * T::epsilon();
    if grade_lo {
        cuts.push(lo);
        for i in (1..=layers).rev() {
            let c = lo + width * ratio.powi(i as i32);
            if c - lo > gap * lo.abs() && c > *cuts.last().expect("lo pushed") {
                cuts.push(c);
            }
        }
    }
    for i in 0..=uniform {
        let c = if i == uniform { hi } else { lo + width * T::of_usize(i) };
        if cuts.last().is_none_or(|&last| c > last) {
            cuts.push(c);
        }
    }
    if grade_hi {
        let top = cuts.pop().expect("at least one cut");
        for i in 1..=layers {
            let c = hi - width * ratio.powi(i as i32);
            if hi - c > gap * hi.abs() && cuts.last().is_none_or(|&last| c > last) {
                cuts.push(c);
            }
        }
        cuts.push(top);
    }
    cuts.windows(2).map(|w| (w[0], w[1])).collect()
}

/// Refinement policy: level `r` uses Gauss order `order + 4r`, `layers + 4r`
/// graded panels and `uniform · 2^r` bulk panels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureScheme<T> {
    pub order: usize,
    pub layers: usize,
    pub uniform: usize,
    pub ratio: T,
    /// Agreement required between two successive levels, relative to the largest entry.
    pub tolerance: T,
    pub max_levels: usize,
}

impl<T: Real> Default for QuadratureScheme<T> {
    fn default() -> Self {
        QuadratureScheme {
            order: 12,
            layers: 8,
            uniform: 16,
            ratio: T::of(0.15),
            tolerance: T::of(1e-10),
            max_levels: 5,
        }
    }
}

impl<T: Real> QuadratureScheme<T> {
    fn shape(&self, level: usize) -> (usize, usize, usize) {
        (self.order + 4 * level, self.layers + 4 * level, self.uniform << level)
    }

    /// Rule on `[lo, hi]` graded toward both ends.
    pub fn finite_rule(&self, lo: T, hi: T, level: usize) -> QuadratureRule<T> {
        let (order, layers, uniform) = self.shape(level);
        QuadratureRule::composite(&graded_panels(lo, hi, true, true, uniform, layers, self.ratio), order)
    }

    /// Rule on `(0, ∞)` via `x = t/(1-t)`, graded toward both ends of `(0, 1)`.
    pub fn half_line_rule(&self, level: usize) -> QuadratureRule<T> {
        QuadratureRule::mapped_to_half_line(&self.finite_rule(T::zero(), T::one(), level))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_rule_is_exact_for_polynomials() {
        for order in [1usize, 2, 5, 12, 20] {
            let (x, w) = gauss_legendre::<f64>(order);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-13);
            for deg in 0..2 * order {
                let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
                let got: f64 = x.iter().zip(&w).map(|(&x, &w)| w * x.powi(deg as i32)).sum();
                assert!((got - exact).abs() < 1e-13, "order {order} degree {deg}");
            }
            assert!(x.windows(2).all(|p| p[0] < p[1]));
        }
    }

    #[test]
    fn composite_measure_and_interior_nodes() {
        let scheme = QuadratureScheme::<f64>::default();
        for level in 0..3 {
            let rule = scheme.finite_rule(-1.0, 1.0, level);
            assert!((rule.weights.iter().sum::<f64>() - 2.0).abs() < 1e-12);
            assert!(rule.nodes.iter().all(|&x| x > -1.0 && x < 1.0));
            assert!(rule.weights.iter().all(|&w| w > 0.0));
            let unit = scheme.finite_rule(0.0, 1.0, level);
            assert!((unit.weights.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn graded_rule_handles_endpoint_singularity() {
        // ∫_0^1 x^{-1/2} dx = 2
        let rule = QuadratureScheme::<f64>::default().finite_rule(0.0, 1.0, 3);
        let got = rule.integrate(|x| x.powf(-0.5));
        assert!((got - 2.0).abs() < 1e-8, "{got}");
    }

    #[test]
    fn half_line_gamma_integrals() {
        // ∫_0^∞ x^{1/2} e^{-x} dx = Γ(3/2) = √π/2
        let rule = QuadratureScheme::<f64>::default().half_line_rule(1);
        let got = rule.integrate(|x| x.sqrt() * (-x).exp());
        assert!((got - std::f64::consts::PI.sqrt() / 2.0).abs() < 1e-11, "{got}");
        // Γ(7) = 720
        let got = rule.integrate(|x| x.powi(6) * (-x).exp());
        assert!((got - 720.0).abs() < 1e-8, "{got}");
    }

    #[test]
    fn panels_tile_interval() {
        let p = graded_panels(0.0, 1.0, true, true, 4, 3, 0.5);
        assert_eq!(p.first().unwrap().0, 0.0);
        assert_eq!(p.last().unwrap().1, 1.0);
        assert!(p.windows(2).all(|w| w[0].1 == w[1].0 && w[0].0 < w[0].1));
        assert_eq!(p.len(), 4 + 3 + 3);
    }
}
