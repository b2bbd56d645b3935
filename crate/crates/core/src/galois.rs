//! Small finite fields GF(q) backed by precomputed tables.
//!
//! Elements are encoded as integers `0..q`: the polynomial
//! `c_0 + c_1 x + ... + c_{m-1} x^{m-1}` over GF(p) is stored as
//! `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`. This makes field elements directly
//! usable as code symbols.

use thiserror::Error;

/// A field element, encoded as described in the module docs.
pub type FieldElement = u8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("unsupported field order {0}; supported orders are 2,3,4,5,7,8,9,11,13,16,25,27")]
    UnsupportedOrder(usize),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element {value} is out of range for GF({q})")]
    ElementOutOfRange { value: usize, q: usize },
}

/// Orders we can build, with characteristic, degree and the low coefficients
/// (constant term first) of the monic irreducible polynomial used for
/// reduction. Prime fields carry an empty polynomial.
const SUPPORTED: &[(usize, usize, usize, &[usize])] = &[
    (2, 2, 1, &[]),
    (3, 3, 1, &[]),
    (4, 2, 2, &[1, 1]), // x^2 + x + 1
    (5, 5, 1, &[]),
    (7, 7, 1, &[]),
    (8, 2, 3, &[1, 1, 0]), // x^3 + x + 1
    (9, 3, 2, &[1, 0]),    // x^2 + 1
    (11, 11, 1, &[]),
    (13, 13, 1, &[]),
    (16, 2, 4, &[1, 1, 0, 0]), // x^4 + x + 1
    (25, 5, 2, &[2, 0]),       // x^2 + 2
    (27, 3, 3, &[1, 2, 0]),    // x^3 + 2x + 1
];

/// The finite field GF(q) with full addition and multiplication tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Field {
    q: usize,
    p: usize,
    m: usize,
    add: Vec<FieldElement>,
    mul: Vec<FieldElement>,
    neg: Vec<FieldElement>,
    inv: Vec<FieldElement>,
}

impl Field {
    pub fn new(q: usize) -> Result<Self, FieldError> {
        let &(_, p, m, modulus) = SUPPORTED.iter().find(|entry| entry.0 == q).ok_or(FieldError::UnsupportedOrder(q))?;

        let digits = |x: usize| -> Vec<usize> {
            let mut out = vec![0; m];
            let mut x = x;
            for d in out.iter_mut() {
                *d = x % p;
                x /= p;
            }
            out
        };
        let encode = |coeffs: &[usize]| -> usize { coeffs.iter().rev().fold(0, |acc, &c| acc * p + c) };

        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = encode(&sum) as FieldElement;
                mul[a * q + b] = encode(&poly_mul_mod(&da, &db, modulus, p)) as FieldElement;
            }
        }

        let mut neg = vec![0; q];
        let mut inv = vec![0; q];
        for a in 0..q {
            neg[a] = (0..q).find(|&b| add[a * q + b] == 0).unwrap() as FieldElement;
            if a != 0 {
                inv[a] = (1..q).find(|&b| mul[a * q + b] == 1).unwrap() as FieldElement;
            }
        }

        Ok(Self { q, p, m, add, mul, neg, inv })
    }

    /// Orders accepted by [`Field::new`].
    pub fn supported_orders() -> impl Iterator<Item = usize> {
        SUPPORTED.iter().map(|entry| entry.0)
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    /// Checks that `value` encodes an element of this field.
    pub fn element(&self, value: usize) -> Result<FieldElement, FieldError> {
        if value < self.q {
            Ok(value as FieldElement)
        } else {
            Err(FieldError::ElementOutOfRange { value, q: self.q })
        }
    }

    /// All elements in encoding order `0, 1, ..., q-1`.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(|v| v as FieldElement)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add[a as usize * self.q + b as usize]
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.mul[a as usize * self.q + b as usize]
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        self.neg[a as usize]
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a == 0 {
            Err(FieldError::DivisionByZero)
        } else {
            Ok(self.inv[a as usize])
        }
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` by repeated squaring; `pow(0, 0) = 1`.
    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Evaluates `coeffs[0] + coeffs[1] x + ...` at `x` (Horner).
    pub fn eval_poly(&self, coeffs: &[FieldElement], x: FieldElement) -> FieldElement {
        coeffs.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }
}

/// Multiplies two coefficient vectors of length `m` over GF(p) and reduces
/// modulo the monic polynomial `x^m + modulus[m-1] x^{m-1} + ... + modulus[0]`.
fn poly_mul_mod(a: &[usize], b: &[usize], modulus: &[usize], p: usize) -> Vec<usize> {
    let m = a.len();
    let mut prod = vec![0; 2 * m - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // x^m = -(modulus[0] + modulus[1] x + ...)
    for top in (m..prod.len()).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        prod[top] = 0;
        for (i, &r) in modulus.iter().enumerate() {
            let idx = top - m + i;
            prod[idx] = (prod[idx] + c * (p - r)) % p;
        }
    }
    prod.truncate(m);
    prod
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::new(5).unwrap();
        assert_eq!(f.add(2, 4), 1);
        assert_eq!(f.mul(2, 4), 3);
        assert_eq!(f.neg(2), 3);
        let f3 = Field::new(3).unwrap();
        assert_eq!(f3.inv(2), Ok(2));
    }

    #[test]
    fn gf4_multiplication_uses_x2_x_1() {
        let f = Field::new(4).unwrap();
        // x * x = x + 1
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.mul(3, 3), 2);
        assert_eq!(f.add(2, 3), 1);
        assert_eq!((f.characteristic(), f.degree()), (2, 2));
    }

    #[test]
    fn unsupported_orders() {
        for q in [0, 1, 6, 10, 12, 15, 32] {
            assert_eq!(Field::new(q), Err(FieldError::UnsupportedOrder(q)));
        }
    }

    #[test]
    fn inverse_of_zero() {
        let f = Field::new(7).unwrap();
        assert_eq!(f.inv(0), Err(FieldError::DivisionByZero));
        assert_eq!(f.div(3, 0), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn gf8_inverses() {
        let f = Field::new(8).unwrap();
        for a in 1..8 {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
    }

    #[test]
    fn gf9_multiplicative_order_divides_8() {
        let f = Field::new(9).unwrap();
        for g in 1..9 {
            assert_eq!(f.pow(g, 8), 1);
        }
        // x^2 = -1 under x^2 + 1
        assert_eq!(f.mul(3, 3), 2);
    }

    #[test]
    fn element_range() {
        let f = Field::new(4).unwrap();
        assert_eq!(f.element(3), Ok(3));
        assert_eq!(f.element(4), Err(FieldError::ElementOutOfRange { value: 4, q: 4 }));
    }

    #[test]
    fn field_axioms_exhaustive() {
        for q in Field::supported_orders() {
            let f = Field::new(q).unwrap();
            let els: Vec<_> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, 0), a, "q={q}");
                assert_eq!(f.mul(a, 1), a, "q={q}");
                assert_eq!(f.mul(a, 0), 0, "q={q}");
                assert_eq!(f.add(a, f.neg(a)), 0, "q={q}");
                if a != 0 {
                    let inv = f.inv(a).unwrap();
                    assert_eq!(f.mul(a, inv), 1, "q={q}");
                    assert_eq!(els.iter().filter(|&&b| f.mul(a, b) == 1).count(), 1);
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a), "q={q}");
                    assert_eq!(f.mul(a, b), f.mul(b, a), "q={q}");
                    for &c in &els {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)), "q={q}");
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)), "q={q}");
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)), "q={q}");
                    }
                }
            }
            // no zero divisors
            for &a in &els[1..] {
                for &b in &els[1..] {
                    assert_ne!(f.mul(a, b), 0, "q={q}");
                }
            }
        }
    }

    #[test]
    fn horner_evaluation() {
        let f = Field::new(7).unwrap();
        // 1 + 2x + 3x^2 at x = 2: 1 + 4 + 12 = 17 = 3 mod 7
        assert_eq!(f.eval_poly(&[1, 2, 3], 2), 3);
        assert_eq!(f.eval_poly(&[], 5), 0);
    }
}
