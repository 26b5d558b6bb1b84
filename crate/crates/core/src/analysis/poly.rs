//! Dense univariate polynomials over the rationals.

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

/// Coefficients from the constant term upward, without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPoly(Vec<BigRational>);

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl QPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| q(c)).collect())
    }

    pub fn zero() -> Self {
        QPoly(Vec::new())
    }

    pub fn one() -> Self {
        QPoly(vec![q(1)])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lead(&self) -> &BigRational {
        self.0.last().expect("nonzero polynomial")
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead().clone();
        QPoly(self.0.iter().map(|c| c / &l).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        Self::new(
            (0..n)
                .map(|i| {
                    self.0.get(i).cloned().unwrap_or_else(Zero::zero)
                        + o.0.get(i).cloned().unwrap_or_else(Zero::zero)
                })
                .collect(),
        )
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.0.iter().map(|x| x * c).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&q(-1)))
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut r = self.0.clone();
        let dl = d.lead().clone();
        let dd = d.degree();
        if r.len() < d.0.len() {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); r.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &r[k + dd] / &dl;
            for (i, dc) in d.0.iter().enumerate() {
                r[k + i] -= &c * dc;
            }
            quot[k] = c;
        }
        (Self::new(quot), Self::new(r))
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.0.iter().enumerate().skip(1).map(|(i, c)| c * q(i as i64)).collect())
    }

    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = x.div_rem(&y).1;
            x = y;
            y = r;
        }
        x.monic()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Square-free part `p / gcd(p, p')`, monic.
    pub fn radical(&self) -> Self {
        let g = Self::gcd(self, &self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Yun's square-free decomposition: pairs `(factor, multiplicity)`.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.degree() == 0 {
            return out;
        }
        let dp = self.derivative();
        let b = Self::gcd(self, &dp);
        let mut c = self.div_rem(&b).0;
        let mut d = dp.div_rem(&b).0.sub(&c.derivative());
        let mut i = 1;
        while c.degree() > 0 {
            let a = Self::gcd(&c, &d);
            c = c.div_rem(&a).0;
            d = d.div_rem(&a).0.sub(&c.derivative());
            if a.degree() > 0 {
                out.push((a.monic(), i));
            }
            i += 1;
        }
        out
    }

    fn sturm_sequence(&self) -> Vec<Self> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = seq[n - 2].div_rem(&seq[n - 1]).1;
            if r.is_zero() {
                break;
            }
            seq.push(r.scale(&q(-1)));
        }
        seq
    }

    fn sign_changes(seq: &[Self], x: &BigRational) -> usize {
        let signs: Vec<i32> = seq
            .iter()
            .map(|p| p.eval(x))
            .filter(|v| !v.is_zero())
            .map(|v| if v.is_positive() { 1 } else { -1 })
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Number of distinct real roots in the closed interval `[lo, hi]`.
    pub fn count_real_roots(&self, lo: &BigRational, hi: &BigRational) -> usize {
        let mut p = self.radical();
        let mut extra = 0;
        if p.eval(lo).is_zero() {
            extra += 1;
            let lin = QPoly::new(vec![-lo.clone(), q(1)]);
            p = p.div_rem(&lin).0;
        }
        if p.degree() == 0 {
            return extra;
        }
        let seq = p.sturm_sequence();
        extra + Self::sign_changes(&seq, lo) - Self::sign_changes(&seq, hi)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }

    /// Numerical roots via companion-matrix eigenvalues.
    pub fn numeric_roots(&self) -> Vec<num::complex::Complex64> {
        let d = self.degree();
        if d == 0 {
            return Vec::new();
        }
        let c = self.monic().to_f64();
        let m = nalgebra::DMatrix::from_fn(d, d, |i, j| {
            if j == d - 1 {
                -c[i]
            } else if i == j + 1 {
                1.0
            } else {
                0.0
            }
        });
        m.complex_eigenvalues().iter().map(|z| num::complex::Complex64::new(z.re, z.im)).collect()
    }
}

impl std::fmt::Display for QPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else if first { "" } else { "+" };
            let a = c.abs();
            let coeff = if a.is_one() && i > 0 { String::new() } else { a.to_string() };
            let var = match i {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{i}"),
            };
            let sep = if first { "" } else { " " };
            let space = if first || sign.is_empty() { "" } else { " " };
            write!(f, "{sep}{sign}{space}{coeff}{var}")?;
            first = false;
        }
        Ok(())
    }
}
