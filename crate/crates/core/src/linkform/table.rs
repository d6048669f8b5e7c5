//! Integer pairing table for forms on enumerable groups.
//!
//! Every value of a form on `T` lies in `(1/e)ℤ/ℤ` for `e = exponent(T)`, so
//! pairings are computed as integers mod `e` on element indices.

use fixedbitset::FixedBitSet;

use crate::abelian::{ElementTable, Subgroup};
use crate::error::Result;
use crate::scalar::Scalar;

use super::LinkingForm;

pub(crate) struct FormTable {
    pub(crate) elements: ElementTable,
    exponent: u64,
    rank: usize,
    digits: Vec<u64>,
    /// `chars[x·k + j] = L(x, eⱼ) · e mod e`.
    chars: Vec<u64>,
}

impl FormTable {
    pub(crate) fn new<T: Scalar>(form: &LinkingForm<T>, cap: usize) -> Result<Self> {
        let g = form.group();
        let elements = ElementTable::new(g, cap)?;
        let exponent = g.exponent().to_u64().expect("bounded by cap");
        let e = g.exponent();
        let k = g.rank();
        let gram: Vec<u64> = (0..k * k)
            .map(|c| {
                let v = form.gram(c / k, c % k).over(&e).expect("denominator divides exponent");
                v.to_u64().expect("bounded by cap")
            })
            .collect();
        let n = elements.order();
        let mut digits = Vec::with_capacity(n * k);
        let mut chars = Vec::with_capacity(n * k);
        for x in 0..n {
            let d: Vec<u64> = elements.digits(x).into_iter().map(|v| v as u64).collect();
            for j in 0..k {
                let s = (0..k).fold(0u64, |acc, i| (acc + d[i] * gram[i * k + j]) % exponent);
                chars.push(s);
            }
            digits.extend(d);
        }
        Ok(Self { elements, exponent, rank: k, digits, chars })
    }

    pub(crate) fn order(&self) -> usize {
        self.elements.order()
    }

    /// `L(x, y) · e mod e`.
    pub(crate) fn pair(&self, x: usize, y: usize) -> u64 {
        let k = self.rank;
        let cx = &self.chars[x * k..(x + 1) * k];
        let dy = &self.digits[y * k..(y + 1) * k];
        cx.iter().zip(dy).fold(0u64, |acc, (c, d)| (acc + c * d) % self.exponent)
    }

    /// `{x : L(x, g) = 0 for every g}`.
    pub(crate) fn perp(&self, gens: &[usize]) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.order());
        for x in 0..self.order() {
            if gens.iter().all(|&g| self.pair(x, g) == 0) {
                out.insert(x);
            }
        }
        out
    }

    pub(crate) fn generator_indices<T: Scalar>(&self, s: &Subgroup<T>) -> Vec<usize> {
        s.generators().iter().map(|g| self.elements.encode(g)).collect()
    }

    pub(crate) fn is_isotropic(&self, gens: &[usize]) -> bool {
        gens.iter().enumerate().all(|(i, &a)| gens[i..].iter().all(|&b| self.pair(a, b) == 0))
    }
}
