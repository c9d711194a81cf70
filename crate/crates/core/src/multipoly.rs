//! Sparse polynomials in `n` commuting variables with exact rational
//! coefficients. Used both for elements of the symmetric algebra on the
//! Cartan subalgebra (arguments to the Cherednik-operator calculus, in the
//! basis dual to the scale-1 fundamental weights) and as the value carrier
//! for rewritten W-invariant polynomials.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::{q_str, Q};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Q>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Q::one())
    }

    /// The variable `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exp = vec![0; nvars];
        exp[i] = 1;
        Self::monomial(nvars, exp, Q::one())
    }

    pub fn monomial(nvars: usize, exp: Vec<u32>, c: Q) -> Self {
        assert_eq!(exp.len(), nvars);
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    /// Linear form `sum_i coeffs[i] x_i`.
    pub fn linear(coeffs: &[Q]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut exp = vec![0; n];
                exp[i] = 1;
                p.terms.insert(exp, c.clone());
            }
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum())
            .max()
            .unwrap_or(0)
    }

    pub fn coeff(&self, exp: &[u32]) -> Q {
        self.terms.get(exp).cloned().unwrap_or_else(Q::zero)
    }

    fn insert(&mut self, exp: Vec<u32>, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (e.clone(), x * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.insert(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut out = Self::one(self.nvars);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Evaluate at a rational point.
    pub fn eval(&self, point: &[Q]) -> Q {
        assert_eq!(point.len(), self.nvars);
        let mut s = Q::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &p) in e.iter().enumerate() {
                for _ in 0..p {
                    t *= &point[i];
                }
            }
            s += t;
        }
        s
    }

    /// Substitute arbitrary values from a commutative ring given by closures.
    /// Used to substitute Laurent polynomials for the variables.
    pub fn eval_generic<T: Clone>(
        &self,
        zero: T,
        one: T,
        mul: impl Fn(&T, &T) -> T,
        add_scaled: impl Fn(&T, &T, &Q) -> T,
        args: &[T],
    ) -> T {
        let mut acc = zero;
        for (e, c) in &self.terms {
            let mut t = one.clone();
            for (i, &p) in e.iter().enumerate() {
                for _ in 0..p {
                    t = mul(&t, &args[i]);
                }
            }
            acc = add_scaled(&acc, &t, c);
        }
        acc
    }

    /// Substitute `x_i -> sum_j m[i][j] x_j` (row `i` of `m` gives the image
    /// of variable `i`).
    pub fn linear_sub(&self, m: &[Vec<Q>]) -> MultiPoly {
        assert_eq!(m.len(), self.nvars);
        let images: Vec<MultiPoly> = m.iter().map(|row| MultiPoly::linear(row)).collect();
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut t = Self::constant(self.nvars, c.clone());
            for (i, &p) in e.iter().enumerate() {
                for _ in 0..p {
                    t = t.mul(&images[i]);
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Substitute `x_i -> x_i + c_i`.
    pub fn shift_vars(&self, c: &[Q]) -> MultiPoly {
        assert_eq!(c.len(), self.nvars);
        let images: Vec<MultiPoly> = (0..self.nvars)
            .map(|i| MultiPoly::var(self.nvars, i).add(&MultiPoly::constant(self.nvars, c[i].clone())))
            .collect();
        let mut out = Self::zero(self.nvars);
        for (e, coeff) in &self.terms {
            let mut t = Self::constant(self.nvars, coeff.clone());
            for (i, &p) in e.iter().enumerate() {
                for _ in 0..p {
                    t = t.mul(&images[i]);
                }
            }
            out = out.add(&t);
        }
        out
    }

    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let coeff = if mag.is_integer() {
                mag.numer().to_string()
            } else {
                format!("\\tfrac{{{}}}{{{}}}", mag.numer(), mag.denom())
            };
            let vars: String = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(j, &p)| {
                    if p == 1 {
                        format!("x_{{{}}}", j + 1)
                    } else {
                        format!("x_{{{}}}^{{{}}}", j + 1, p)
                    }
                })
                .collect();
            if vars.is_empty() {
                out.push_str(&coeff);
            } else {
                if coeff != "1" {
                    out.push_str(&coeff);
                }
                out.push_str(&vars);
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(e, c)| serde_json::json!({"exp": e, "coeff": q_str(c)}))
            .collect();
        serde_json::json!({"nvars": self.nvars, "terms": terms})
    }

    pub fn from_json(v: &serde_json::Value) -> Result<MultiPoly> {
        let nvars = v["nvars"]
            .as_u64()
            .ok_or_else(|| Error::Parse("missing nvars".into()))? as usize;
        let mut out = MultiPoly::zero(nvars);
        for t in v["terms"]
            .as_array()
            .ok_or_else(|| Error::Parse("missing terms".into()))?
        {
            let exp: Vec<u32> = t["exp"]
                .as_array()
                .ok_or_else(|| Error::Parse("missing exp".into()))?
                .iter()
                .map(|x| {
                    x.as_u64()
                        .map(|y| y as u32)
                        .ok_or_else(|| Error::Parse("bad exp".into()))
                })
                .collect::<Result<_>>()?;
            if exp.len() != nvars {
                return Err(Error::Parse("exp arity mismatch".into()));
            }
            let c = crate::parse_q(
                t["coeff"]
                    .as_str()
                    .ok_or_else(|| Error::Parse("missing coeff".into()))?,
            )?;
            out.insert(exp, c);
        }
        Ok(out)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mut factors = Vec::new();
            for (i, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => factors.push(format!("x{}", i + 1)),
                    p => factors.push(format!("x{}^{}", i + 1, p)),
                }
            }
            let coeff = q_str(&mag);
            if factors.is_empty() {
                write!(f, "{coeff}")?;
            } else if coeff == "1" {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", coeff, factors.join("*"))?;
            }
        }
        Ok(())
    }
}
