use crate::error::{check_probability, Error, Result};

/// Tolerance on the total mass of a distribution.
pub const SUM_TOL: f64 = 1e-12;

/// `p(a0, a1, b)` stored at index `4·a0 + 2·a1 + b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointInputDistribution {
    probs: [f64; 8],
}

impl JointInputDistribution {
    pub fn new(probs: [f64; 8]) -> Result<Self> {
        for &p in &probs {
            check_probability("p(a0,a1,b)", p)?;
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > SUM_TOL {
            return Err(Error::NotNormalized { sum });
        }
        Ok(Self { probs })
    }

    pub fn uniform() -> Self {
        Self { probs: [0.125; 8] }
    }

    pub fn probs(&self) -> &[f64; 8] {
        &self.probs
    }

    pub fn get(&self, a0: u8, a1: u8, b: u8) -> f64 {
        self.probs[index(a0, a1, b)]
    }

    /// `P(b = 0)`.
    pub fn q(&self) -> f64 {
        self.cells().filter(|c| c.2 == 0).map(|c| c.3).sum()
    }

    /// `P(a = a0⊕a1, b)` indexed by `2·a + b`.
    pub fn xor_marginal(&self) -> [f64; 4] {
        let mut out = [0.0; 4];
        for (a0, a1, b, p) in self.cells() {
            out[(2 * (a0 ^ a1) + b) as usize] += p;
        }
        out
    }

    /// `P(a0 = 0 | b = 0)`; falls back to the unconditional marginal when `P(b=0) = 0`.
    pub fn a0_zero_given_b0(&self) -> f64 {
        self.conditional(0, |a0, _| a0 == 0)
    }

    /// `P(a1 = 0 | b = 1)`; falls back to the unconditional marginal when `P(b=1) = 0`.
    pub fn a1_zero_given_b1(&self) -> f64 {
        self.conditional(1, |_, a1| a1 == 0)
    }

    fn conditional(&self, b_value: u8, event: impl Fn(u8, u8) -> bool) -> f64 {
        let (mut joint, mut given) = (0.0, 0.0);
        let (mut joint_all, mut total) = (0.0, 0.0);
        for (a0, a1, b, p) in self.cells() {
            total += p;
            if event(a0, a1) {
                joint_all += p;
            }
            if b == b_value {
                given += p;
                if event(a0, a1) {
                    joint += p;
                }
            }
        }
        if given > 0.0 {
            (joint / given).clamp(0.0, 1.0)
        } else {
            (joint_all / total).clamp(0.0, 1.0)
        }
    }

    /// Iterates `(a0, a1, b, p)` in lexicographic order.
    pub fn cells(&self) -> impl Iterator<Item = (u8, u8, u8, f64)> + '_ {
        (0..8u8).map(move |i| (i >> 2, (i >> 1) & 1, i & 1, self.probs[i as usize]))
    }
}

fn index(a0: u8, a1: u8, b: u8) -> usize {
    debug_assert!(a0 < 2 && a1 < 2 && b < 2);
    (4 * a0 + 2 * a1 + b) as usize
}

/// Independent inputs: `P(a0=0)`, `P(a1=0)` and `P(b=0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductForm {
    pub p0_prime: f64,
    pub p1_prime: f64,
    pub q: f64,
}

impl ProductForm {
    pub fn new(p0_prime: f64, p1_prime: f64, q: f64) -> Result<Self> {
        Ok(Self {
            p0_prime: check_probability("p0'", p0_prime)?,
            p1_prime: check_probability("p1'", p1_prime)?,
            q: check_probability("q", q)?,
        })
    }

    /// Both hand bits share the same probability `p'`.
    pub fn symmetric(p_prime: f64, q: f64) -> Result<Self> {
        Self::new(p_prime, p_prime, q)
    }

    pub fn expand(&self) -> JointInputDistribution {
        let bern = |p: f64, bit: u8| if bit == 0 { p } else { 1.0 - p };
        let mut probs = [0.0; 8];
        for (i, slot) in probs.iter_mut().enumerate() {
            let (a0, a1, b) = ((i >> 2) as u8, ((i >> 1) & 1) as u8, (i & 1) as u8);
            *slot = bern(self.p0_prime, a0) * bern(self.p1_prime, a1) * bern(self.q, b);
        }
        JointInputDistribution { probs }
    }

    /// `p = p0'·p1' + (1−p0')(1−p1')`.
    pub fn bias(&self) -> BiasPair {
        BiasPair {
            p: self.p0_prime * self.p1_prime + (1.0 - self.p0_prime) * (1.0 - self.p1_prime),
            q: self.q,
        }
    }
}

pub fn expand_product(form: ProductForm) -> JointInputDistribution {
    form.expand()
}

/// `p = P(a0⊕a1 = 0)` and `q = P(b = 0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BiasPair {
    pub p: f64,
    pub q: f64,
}

impl BiasPair {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        Ok(Self {
            p: check_probability("p", p)?,
            q: check_probability("q", q)?,
        })
    }

    /// Bias induced by two independent hand bits with the same probability `p'`:
    /// `p = p'² + (1−p')²`.
    pub fn from_symmetric_prime(p_prime: f64, q: f64) -> Result<Self> {
        Ok(ProductForm::symmetric(p_prime, q)?.bias())
    }

    /// A product distribution with the same `(p, q)` whose hand bits are
    /// equally predictable. `p ≥ ½` uses `p0' = p1' = x`; `p < ½` uses
    /// `p0' = x, p1' = 1−x`.
    pub fn matching_product(&self) -> ProductForm {
        let x = if self.p >= 0.5 {
            0.5 * (1.0 + (2.0 * self.p - 1.0).max(0.0).sqrt())
        } else {
            0.5 * (1.0 + (1.0 - 2.0 * self.p).max(0.0).sqrt())
        };
        let x = x.clamp(0.0, 1.0);
        let p1 = if self.p >= 0.5 { x } else { 1.0 - x };
        ProductForm {
            p0_prime: x,
            p1_prime: p1,
            q: self.q,
        }
    }
}

pub fn bias_pair(dist: &JointInputDistribution) -> BiasPair {
    let m = dist.xor_marginal();
    BiasPair {
        p: (m[0] + m[1]).clamp(0.0, 1.0),
        q: (m[0] + m[2]).clamp(0.0, 1.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expand_examples() {
        let uniform = ProductForm::new(0.5, 0.5, 0.5).unwrap().expand();
        assert!(uniform.probs().iter().all(|&p| p == 0.125));

        let rkb = ProductForm::new(0.5, 0.55, 0.75).unwrap().expand();
        assert!((rkb.get(0, 0, 0) - 0.20625).abs() < 1e-15);
        assert!((rkb.probs().iter().sum::<f64>() - 1.0).abs() < 1e-12);

        let det = ProductForm::new(1.0, 1.0, 1.0).unwrap().expand();
        assert_eq!(det.get(0, 0, 0), 1.0);
        assert_eq!(det.probs().iter().filter(|&&p| p == 0.0).count(), 7);
    }

    #[test]
    fn out_of_range_is_rejected() {
        assert!(ProductForm::new(1.1, 0.5, 0.5).is_err());
        assert!(ProductForm::new(0.5, -0.1, 0.5).is_err());
        assert!(ProductForm::new(0.5, 0.5, f64::NAN).is_err());
        assert!(BiasPair::new(0.5, 2.0).is_err());
        assert!(JointInputDistribution::new([0.2; 8]).is_err());
        let mut neg = [0.125; 8];
        neg[0] = -0.125;
        neg[1] = 0.375;
        assert!(JointInputDistribution::new(neg).is_err());
    }

    #[test]
    fn bias_examples() {
        let b = bias_pair(&ProductForm::new(0.5, 0.55, 0.75).unwrap().expand());
        assert!((b.p - 0.5).abs() < 1e-12);
        assert!((b.q - 0.75).abs() < 1e-12);

        let b = bias_pair(&JointInputDistribution::uniform());
        assert_eq!((b.p, b.q), (0.5, 0.5));

        let b = BiasPair::from_symmetric_prime(0.9, 0.5).unwrap();
        assert!((b.p - 0.82).abs() < 1e-12);
    }

    #[test]
    fn marginalized_bias_matches_product_formula() {
        for &(x, y, q) in &[(0.1, 0.7, 0.3), (0.9, 0.9, 0.6), (0.0, 1.0, 1.0), (0.35, 0.5, 0.0)] {
            let form = ProductForm::new(x, y, q).unwrap();
            let got = bias_pair(&form.expand());
            let want = form.bias();
            assert!((got.p - want.p).abs() < 1e-12);
            assert!((got.q - want.q).abs() < 1e-12);
        }
    }

    #[test]
    fn matching_product_reproduces_bias() {
        for i in 0..=20 {
            let p = i as f64 / 20.0;
            let bias = BiasPair::new(p, 0.3).unwrap();
            let form = bias.matching_product();
            assert!((form.bias().p - p).abs() < 1e-12, "p = {p}");
            assert!(form.p0_prime >= 0.5);
        }
    }

    #[test]
    fn conditionals() {
        let d = ProductForm::new(0.3, 0.8, 0.6).unwrap().expand();
        assert!((d.a0_zero_given_b0() - 0.3).abs() < 1e-12);
        assert!((d.a1_zero_given_b1() - 0.8).abs() < 1e-12);
        assert!((d.q() - 0.6).abs() < 1e-12);

        // P(b=1) = 0: falls back to the marginal of a1.
        let d = ProductForm::new(0.3, 0.8, 1.0).unwrap().expand();
        assert!((d.a1_zero_given_b1() - 0.8).abs() < 1e-12);
    }
}
