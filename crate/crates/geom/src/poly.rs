//! Sparse multivariate polynomials with rational coefficients.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_rational::Ratio;
use serde_json::{json, Value};

pub type Coeff = Ratio<i64>;

/// Sorted `(variable, exponent)` pairs with positive exponents.
pub type Monomial = Vec<(usize, u32)>;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    pub terms: BTreeMap<Monomial, Coeff>,
}

fn merge(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out: BTreeMap<usize, u32> = a.iter().copied().collect();
    for &(v, e) in b {
        *out.entry(v).or_insert(0) += e;
    }
    out.into_iter().collect()
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn constant(c: impl Into<Coeff>) -> Poly {
        let mut p = Poly::zero();
        p.add_term(Vec::new(), c.into());
        p
    }

    pub fn var(v: usize) -> Poly {
        let mut p = Poly::zero();
        p.add_term(vec![(v, 1)], Coeff::from_integer(1));
        p
    }

    fn add_term(&mut self, m: Monomial, c: Coeff) {
        let zero = Coeff::from_integer(0);
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                if c != zero {
                    e.insert(c);
                }
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if *e.get() == zero {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), *c);
        }
        out
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.scale(Coeff::from_integer(-1)))
    }

    pub fn scale(&self, c: Coeff) -> Poly {
        let mut out = Poly::zero();
        for (m, x) in &self.terms {
            out.add_term(m.clone(), *x * c);
        }
        out
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(merge(m1, m2), *c1 * *c2);
            }
        }
        out
    }

    pub fn square(&self) -> Poly {
        self.mul(self)
    }

    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.iter().map(|&(_, e)| e).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn variables(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms.keys().flat_map(|m| m.iter().map(|&(v, _)| v))
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let coeff = *c.numer() as f64 / *c.denom() as f64;
                m.iter().fold(coeff, |acc, &(v, e)| acc * x[v].powi(e as i32))
            })
            .sum()
    }

    /// `log2(|p| q + 2)` for the worst coefficient `p/q`.
    pub fn coefficient_bits(&self) -> f64 {
        self.terms
            .values()
            .map(|c| ((c.numer().unsigned_abs() as f64) * (*c.denom() as f64) + 2.0).log2())
            .fold(0.0, f64::max)
    }

    pub fn to_json_value(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(m, c)| json!([c.to_string(), m]))
                .collect(),
        )
    }
}

/// A complex polynomial as a pair of real ones.
#[derive(Debug, Clone, Default)]
pub struct CPoly {
    pub re: Poly,
    pub im: Poly,
}

impl CPoly {
    pub fn new(re: Poly, im: Poly) -> CPoly {
        CPoly { re, im }
    }

    pub fn real(re: Poly) -> CPoly {
        CPoly { re, im: Poly::zero() }
    }

    pub fn add(&self, o: &CPoly) -> CPoly {
        CPoly::new(self.re.add(&o.re), self.im.add(&o.im))
    }

    pub fn sub(&self, o: &CPoly) -> CPoly {
        CPoly::new(self.re.sub(&o.re), self.im.sub(&o.im))
    }

    pub fn mul(&self, o: &CPoly) -> CPoly {
        CPoly::new(
            self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        )
    }

    pub fn conj(&self) -> CPoly {
        CPoly::new(self.re.clone(), self.im.scale(Coeff::from_integer(-1)))
    }
}
