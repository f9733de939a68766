//! Real polynomials and an all-real-roots solver.
//!
//! Real roots are isolated recursively: the real roots of `p'` split the line
//! into intervals on which `p` is monotone, so each interval holds at most one
//! root and plain bisection brackets it to the last bit. Touching roots (even
//! multiplicity) are picked up at the critical points themselves.

/// Polynomial with real coefficients in ascending order: `c[0] + c[1] x + ...`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<f64>) -> Self {
        let mut p = Polynomial { coeffs };
        p.trim_zeros();
        p
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Degree after dropping exactly-zero leading coefficients. The zero
    /// polynomial reports degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }

    fn trim_zeros(&mut self) {
        while self.coeffs.len() > 1 && *self.coeffs.last().unwrap() == 0.0 {
            self.coeffs.pop();
        }
    }

    /// Drops leading coefficients whose contribution over `|x| ≤ scale` is
    /// below `rel` times the largest term over the same range.
    pub fn trim_negligible(&mut self, scale: f64, rel: f64) {
        let s = scale.max(1.0);
        let weight = |i: usize, c: f64| c.abs() * s.powi(i as i32);
        let max = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| weight(i, c))
            .fold(0.0, f64::max);
        while self.coeffs.len() > 1 {
            let d = self.coeffs.len() - 1;
            if weight(d, self.coeffs[d]) <= rel * max {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// `Σ |c_i| |x|^i`, the natural scale of rounding error in [`eval`](Self::eval).
    pub fn eval_abs(&self, x: f64) -> f64 {
        let ax = x.abs();
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * ax + c.abs())
    }

    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() <= 1 {
            return Polynomial::new(vec![0.0]);
        }
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| c * i as f64)
                .collect(),
        )
    }

    /// Fujiwara's bound on the modulus of every root.
    pub fn root_bound(&self) -> f64 {
        let d = self.degree();
        if d == 0 {
            return 0.0;
        }
        let lead = self.coeffs[d];
        let mut bound: f64 = 0.0;
        for k in 1..=d {
            let mut ratio = (self.coeffs[d - k] / lead).abs();
            if k == d {
                ratio /= 2.0;
            }
            bound = bound.max(ratio.powf(1.0 / k as f64));
        }
        2.0 * bound
    }

    /// All distinct real roots, ascending. Roots of even multiplicity are
    /// reported once.
    pub fn real_roots(&self) -> Vec<f64> {
        let d = self.degree();
        if d == 0 || self.is_zero() {
            return Vec::new();
        }
        if d == 1 {
            return vec![-self.coeffs[0] / self.coeffs[1]];
        }

        let crit = self.derivative().real_roots();
        // Pad the bound so the outer endpoints are strictly outside every root.
        let bound = self.root_bound() * 1.01 + f64::MIN_POSITIVE;
        let mut knots = Vec::with_capacity(crit.len() + 2);
        knots.push(-bound);
        knots.extend(crit.iter().copied().filter(|c| c.abs() < bound));
        knots.push(bound);

        let mut roots = Vec::new();
        for w in knots.windows(2) {
            let (a, b) = (w[0], w[1]);
            let (fa, fb) = (self.eval(a), self.eval(b));
            if fa == 0.0 {
                roots.push(a);
            } else if fa.signum() != fb.signum() && fb != 0.0 {
                roots.push(self.bisect(a, b, fa));
            }
        }
        if let Some(&last) = knots.last() {
            if self.eval(last) == 0.0 {
                roots.push(last);
            }
        }
        // Critical points where p touches zero without crossing.
        for &c in &crit {
            let v = self.eval(c);
            if v != 0.0 && v.abs() <= 8.0 * f64::EPSILON * self.eval_abs(c) {
                roots.push(c);
            }
        }

        roots.sort_by(f64::total_cmp);
        roots.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * a.abs().max(b.abs()).max(f64::MIN_POSITIVE));
        roots
    }

    fn bisect(&self, mut a: f64, mut b: f64, mut fa: f64) -> f64 {
        loop {
            let m = 0.5 * (a + b);
            if m <= a || m >= b {
                break;
            }
            let fm = self.eval(m);
            if fm == 0.0 {
                return m;
            }
            if fm.signum() == fa.signum() {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
        }
        if self.eval(a).abs() <= self.eval(b).abs() {
            a
        } else {
            b
        }
    }
}
