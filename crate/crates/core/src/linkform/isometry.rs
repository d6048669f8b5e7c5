use fixedbitset::FixedBitSet;

use crate::abelian::Element;
use crate::error::Result;
use crate::scalar::Scalar;

use super::table::FormTable;
use super::LinkingForm;

struct Search<'a> {
    target: &'a FormTable,
    /// `L₁(eᵢ, eⱼ) · e` for the source generators.
    source_gram: Vec<u64>,
    /// Candidate images per source generator: right order and self-linking.
    candidates: Vec<Vec<usize>>,
    factors: Vec<usize>,
    images: Vec<usize>,
}

impl Search<'_> {
    fn run(&mut self, span: &FixedBitSet, members: &[usize]) -> bool {
        let i = self.images.len();
        let k = self.factors.len();
        if i == k {
            return true;
        }
        for idx in 0..self.candidates[i].len() {
            let y = self.candidates[i][idx];
            if !self.images.iter().enumerate().all(|(j, &yj)| self.target.pair(y, yj) == self.source_gram[i * k + j]) {
                continue;
            }
            // The images must span a direct sum with the expected orders.
            let (mut next, mut next_members) = (span.clone(), members.to_vec());
            self.target.elements.extend(&mut next, &mut next_members, y);
            if next_members.len() != members.len() * self.factors[i] {
                continue;
            }
            self.images.push(y);
            if self.run(&next, &next_members) {
                return true;
            }
            self.images.pop();
        }
        false
    }
}

impl<T: Scalar> LinkingForm<T> {
    /// An isometry `φ` with `other(φx, φy) = self(x, y)`, given by the images
    /// of the invariant-factor generators, found by backtracking over
    /// candidates in canonical element order.
    pub fn isometry_to(&self, other: &Self, cap: usize) -> Result<Option<Vec<Element<T>>>> {
        if self.group() != other.group() {
            return Ok(None);
        }
        let target = FormTable::new(other, cap)?;
        let g = self.group();
        let e = g.exponent();
        let k = g.rank();
        let source_gram: Vec<u64> = (0..k * k)
            .map(|c| self.gram(c / k, c % k).over(&e).and_then(|v| v.to_u64()).expect("bounded by cap"))
            .collect();
        let factors: Vec<usize> = g.invariant_factors().iter().map(|d| d.to_usize().expect("bounded")).collect();
        let candidates = (0..k)
            .map(|i| {
                (0..target.order())
                    .filter(|&y| {
                        let elt: Element<T> = target.elements.decode(y);
                        g.element_order(&elt).to_usize() == Some(factors[i])
                            && target.pair(y, y) == source_gram[i * k + i]
                    })
                    .collect()
            })
            .collect();
        let mut search = Search { target: &target, source_gram, candidates, factors, images: Vec::new() };
        let mut span = FixedBitSet::with_capacity(target.order());
        span.insert(0);
        if search.run(&span, &[0]) {
            Ok(Some(search.images.iter().map(|&y| target.elements.decode(y)).collect()))
        } else {
            Ok(None)
        }
    }

    pub fn is_isometric(&self, other: &Self, cap: usize) -> Result<bool> {
        Ok(self.isometry_to(other, cap)?.is_some())
    }
}
