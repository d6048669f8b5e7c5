use std::fmt;

use crate::error::{input, Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{factorize, residue, Scalar};
use crate::snf::{smith_normal_form, SnfResult};

/// A finite abelian group `⊕ ℤ/dᵢ` in invariant-factor form, `d₀ | d₁ | …`,
/// each `dᵢ ≥ 2`. The trivial group has no factors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup<T> {
    factors: Vec<T>,
}

/// An element of a [`FiniteAbelianGroup`]: one residue per invariant factor,
/// each in `[0, dᵢ)`. Ordered lexicographically on the residue tuple.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element<T> {
    residues: Vec<T>,
}

impl<T: Scalar> Element<T> {
    pub fn residues(&self) -> &[T] {
        &self.residues
    }

    pub fn into_residues(self) -> Vec<T> {
        self.residues
    }

    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.residues.iter().all(|x| x.is_zero())
    }

    pub(crate) fn from_residues_unchecked(residues: Vec<T>) -> Self {
        Self { residues }
    }
}

impl<T: fmt::Debug> fmt::Debug for Element<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.residues.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x:?}")?;
        }
        write!(f, ")")
    }
}

impl<T: fmt::Debug> fmt::Debug for FiniteAbelianGroup<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        for (i, d) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " ⊕ ")?;
            }
            write!(f, "ℤ/{d:?}")?;
        }
        Ok(())
    }
}

/// The cokernel of a relation matrix, split into torsion and free parts.
#[derive(Clone, Debug)]
pub struct Presentation<T> {
    /// Torsion subgroup of the cokernel.
    pub group: FiniteAbelianGroup<T>,
    /// Number of free `ℤ` summands.
    pub free_rank: usize,
    /// `cols × k` matrix; row `i` is the torsion part of original generator `i`
    /// in invariant-factor coordinates.
    pub basis_map: Matrix<T>,
    /// `k × cols` matrix; row `j` lifts invariant-factor generator `j` back to
    /// the original generators.
    pub lifts: Matrix<T>,
    pub(crate) snf: SnfResult<T>,
    /// SNF diagonal positions of the torsion generators.
    pub(crate) torsion_positions: Vec<usize>,
}

/// Computes the cokernel `ℤ^cols / rowspan(relations)`.
///
/// Diagonal entries of 1 drop out, entries `> 1` become invariant factors and
/// zero entries (plus any columns beyond the row count) are free.
pub fn group_from_presentation<T: Scalar>(relations: &Matrix<T>) -> Presentation<T> {
    let snf = smith_normal_form(relations);
    let cols = relations.cols();
    let mut torsion_positions = Vec::new();
    let mut free_rank = cols - snf.diagonal.len();
    for (k, d) in snf.diagonal.iter().enumerate() {
        if d.is_zero() {
            free_rank += 1;
        } else if !d.is_one() {
            torsion_positions.push(k);
        }
    }
    let factors: Vec<T> = torsion_positions.iter().map(|&k| snf.diagonal[k].clone()).collect();
    let t = factors.len();
    let mut basis_map = Matrix::zeros(cols, t);
    let mut lifts = Matrix::zeros(t, cols);
    for (j, &k) in torsion_positions.iter().enumerate() {
        for i in 0..cols {
            basis_map[(i, j)] = residue(&snf.right[(i, k)], &factors[j]);
            lifts[(j, i)] = snf.right_inverse[(k, i)].clone();
        }
    }
    Presentation { group: FiniteAbelianGroup { factors }, free_rank, basis_map, lifts, snf, torsion_positions }
}

impl<T: Scalar> FiniteAbelianGroup<T> {
    /// Validates an invariant-factor chain.
    pub fn new(factors: Vec<T>) -> Result<Self> {
        let two = T::one() + T::one();
        if let Some(d) = factors.iter().find(|d| **d < two) {
            return Err(input(format!("invariant factor {d} is less than 2")));
        }
        if let Some(w) = factors.windows(2).find(|w| !(w[1].clone() % w[0].clone()).is_zero()) {
            return Err(input(format!("invariant factors {} and {} break the divisibility chain", w[0], w[1])));
        }
        Ok(Self { factors })
    }

    pub fn trivial() -> Self {
        Self { factors: Vec::new() }
    }

    pub fn cyclic(n: T) -> Result<Self> {
        if n.is_one() {
            return Ok(Self::trivial());
        }
        Self::new(vec![n])
    }

    /// `(ℤ/d)^k`.
    pub fn homocyclic(d: T, k: usize) -> Result<Self> {
        Self::new(vec![d; k])
    }

    /// Any direct sum of cyclic groups `⊕ ℤ/nᵢ` (`nᵢ ≥ 1`), normalised.
    pub fn from_cyclic_orders(orders: &[T]) -> Result<Self> {
        Ok(cyclic_sum(orders)?.group)
    }

    pub fn invariant_factors(&self) -> &[T] {
        &self.factors
    }

    /// Number of invariant factors.
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> T {
        self.factors.iter().fold(T::one(), |acc, d| acc * d.clone())
    }

    pub fn exponent(&self) -> T {
        self.factors.last().cloned().unwrap_or_else(T::one)
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// Order as a count, if it does not exceed `cap`.
    pub fn order_within(&self, cap: usize) -> Result<usize> {
        let order = self.order();
        order
            .to_usize()
            .filter(|&n| n <= cap)
            .ok_or_else(|| Error::CapExceeded { what: format!("group {self:?}"), size: order.to_string(), cap })
    }

    pub fn zero(&self) -> Element<T> {
        Element { residues: vec![T::zero(); self.factors.len()] }
    }

    /// The `i`-th invariant-factor generator.
    pub fn generator(&self, i: usize) -> Element<T> {
        let mut e = self.zero();
        e.residues[i] = T::one();
        e
    }

    pub fn generators(&self) -> Vec<Element<T>> {
        (0..self.rank()).map(|i| self.generator(i)).collect()
    }

    /// Validates residues against the factors.
    pub fn element(&self, residues: Vec<T>) -> Result<Element<T>> {
        if residues.len() != self.factors.len() {
            return Err(input(format!(
                "element has {} coordinates, group {self:?} has {}",
                residues.len(),
                self.factors.len()
            )));
        }
        for (x, d) in residues.iter().zip(&self.factors) {
            if x.is_negative() || x >= d {
                return Err(input(format!("residue {x} out of range [0, {d})")));
            }
        }
        Ok(Element { residues })
    }

    /// Reduces arbitrary integers coordinate-wise.
    pub fn reduce(&self, values: &[T]) -> Result<Element<T>> {
        if values.len() != self.factors.len() {
            return Err(input(format!("expected {} coordinates, got {}", self.factors.len(), values.len())));
        }
        Ok(Element { residues: values.iter().zip(&self.factors).map(|(x, d)| residue(x, d)).collect() })
    }

    pub fn contains(&self, e: &Element<T>) -> bool {
        e.residues.len() == self.factors.len()
            && e.residues.iter().zip(&self.factors).all(|(x, d)| !x.is_negative() && x < d)
    }

    pub(crate) fn check(&self, e: &Element<T>) -> Result<()> {
        if self.contains(e) {
            Ok(())
        } else {
            Err(input(format!("element {e:?} does not belong to {self:?}")))
        }
    }

    pub fn add(&self, a: &Element<T>, b: &Element<T>) -> Element<T> {
        Element {
            residues: a
                .residues
                .iter()
                .zip(&b.residues)
                .zip(&self.factors)
                .map(|((x, y), d)| residue(&(x.clone() + y.clone()), d))
                .collect(),
        }
    }

    pub fn neg(&self, a: &Element<T>) -> Element<T> {
        self.scale(a, &-T::one())
    }

    pub fn scale(&self, a: &Element<T>, k: &T) -> Element<T> {
        Element {
            residues: a
                .residues
                .iter()
                .zip(&self.factors)
                .map(|(x, d)| residue(&(x.clone() * k.clone()), d))
                .collect(),
        }
    }

    /// Additive order of `e`.
    pub fn element_order(&self, e: &Element<T>) -> T {
        e.residues
            .iter()
            .zip(&self.factors)
            .fold(T::one(), |acc, (x, d)| acc.lcm(&(d.clone() / x.gcd(d))))
    }

    /// Whether `e ∈ m·G`, i.e. each residue is divisible by `gcd(m, dᵢ)`.
    pub fn in_multiple(&self, e: &Element<T>, m: &T) -> bool {
        e.residues.iter().zip(&self.factors).all(|(x, d)| (x.clone() % m.gcd(d)).is_zero())
    }

    /// All elements in lexicographic order.
    pub fn elements(&self, cap: usize) -> Result<Vec<Element<T>>> {
        let n = self.order_within(cap)?;
        let mut out = Vec::with_capacity(n);
        let mut cur = self.zero();
        for _ in 0..n {
            out.push(cur.clone());
            for i in (0..self.factors.len()).rev() {
                cur.residues[i] = cur.residues[i].clone() + T::one();
                if cur.residues[i] < self.factors[i] {
                    break;
                }
                cur.residues[i] = T::zero();
            }
        }
        Ok(out)
    }

    /// Primary decomposition: for each prime `p` dividing the order, the
    /// prime-power orders of the cyclic `p`-summands in increasing order.
    pub fn primary_decomposition(&self) -> Vec<(T, Vec<T>)> {
        let mut out: Vec<(T, Vec<T>)> = Vec::new();
        for d in &self.factors {
            for (p, e) in factorize(d) {
                let pk = num_traits::pow(p.clone(), e as usize);
                match out.iter_mut().find(|(q, _)| *q == p) {
                    Some((_, v)) => v.push(pk),
                    None => out.push((p, vec![pk])),
                }
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        for (_, v) in &mut out {
            v.sort();
        }
        out
    }

    /// If `G ≅ A ⊕ A`, returns `A`.
    ///
    /// The invariant factors of `A ⊕ A` are those of `A` with every entry
    /// doubled in place, so the test reads the chain pairwise.
    pub fn direct_double_half(&self) -> Option<Self> {
        if !self.factors.len().is_multiple_of(2) {
            return None;
        }
        let pairs_match = self.factors.chunks(2).all(|c| c[0] == c[1]);
        pairs_match.then(|| Self { factors: self.factors.iter().step_by(2).cloned().collect() })
    }

    pub fn is_direct_double(&self) -> bool {
        self.direct_double_half().is_some()
    }
}

/// `⊕ ℤ/nᵢ` as a presentation, giving coordinates on the normalised group.
pub(crate) fn cyclic_sum<T: Scalar>(orders: &[T]) -> Result<Presentation<T>> {
    if let Some(n) = orders.iter().find(|n| !n.is_positive()) {
        return Err(input(format!("cyclic order {n} must be positive")));
    }
    Ok(group_from_presentation(&Matrix::diagonal(orders)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(f: &[i64]) -> FiniteAbelianGroup<i64> {
        FiniteAbelianGroup::new(f.to_vec()).unwrap()
    }

    #[test]
    fn validation() {
        assert!(FiniteAbelianGroup::new(vec![2i64, 3]).is_err());
        assert!(FiniteAbelianGroup::new(vec![1i64]).is_err());
        assert_eq!(g(&[2, 4]).order(), 8);
        assert_eq!(g(&[]).exponent(), 1);
        assert!(g(&[2]).element(vec![2]).is_err());
    }

    #[test]
    fn presentation_of_surgery_matrix() {
        let q = Matrix::from_i64_rows(&[&[2, 2], &[2, 4]]).unwrap();
        let p = group_from_presentation(&q);
        assert_eq!(p.group, g(&[2, 2]));
        assert_eq!(p.free_rank, 0);
    }

    #[test]
    fn presentation_edge_cases() {
        let p = group_from_presentation(&Matrix::<i64>::zeros(0, 3));
        assert!(p.group.is_trivial());
        assert_eq!(p.free_rank, 3);
        let p = group_from_presentation(&Matrix::from_i64_rows(&[&[3]]).unwrap());
        assert_eq!(p.group, g(&[3]));
        assert_eq!(p.free_rank, 0);
        let p = group_from_presentation(&Matrix::from_i64_rows(&[&[2, 0, 0], &[0, 0, 0]]).unwrap());
        assert_eq!(p.group, g(&[2]));
        assert_eq!(p.free_rank, 2);
    }

    #[test]
    fn basis_map_is_a_homomorphism_onto_the_cokernel() {
        // Relations must map to zero; lifts must map back to the standard generators.
        let rel = Matrix::from_i64_rows(&[&[4, 6, 2], &[0, 6, 12], &[2, 2, 2]]).unwrap();
        let p = group_from_presentation(&rel);
        let t = p.group.rank();
        for r in 0..rel.rows() {
            let image: Vec<i64> = (0..t).map(|j| (0..rel.cols()).map(|i| rel[(r, i)] * p.basis_map[(i, j)]).sum()).collect();
            assert!(p.group.reduce(&image).unwrap().is_zero());
        }
        let round = p.lifts.mul(&p.basis_map);
        for j in 0..t {
            let row: Vec<i64> = (0..t).map(|k| round[(j, k)]).collect();
            assert_eq!(p.group.reduce(&row).unwrap(), p.group.generator(j));
        }
    }

    #[test]
    fn cyclic_orders_normalise() {
        assert_eq!(FiniteAbelianGroup::from_cyclic_orders(&[3i64, 2]).unwrap(), g(&[6]));
        assert_eq!(FiniteAbelianGroup::from_cyclic_orders(&[4i64, 2, 1]).unwrap(), g(&[2, 4]));
    }

    #[test]
    fn direct_double() {
        assert_eq!(g(&[2, 2]).direct_double_half(), Some(g(&[2])));
        assert!(g(&[4, 4]).is_direct_double());
        assert!(!g(&[4]).is_direct_double());
        assert!(!g(&[2, 8]).is_direct_double());
        assert_eq!(g(&[]).direct_double_half(), Some(g(&[])));
        assert_eq!(g(&[2, 2, 6, 6]).direct_double_half(), Some(g(&[2, 6])));
    }

    #[test]
    fn primary_parts() {
        assert_eq!(g(&[2, 12]).primary_decomposition(), vec![(2, vec![2, 4]), (3, vec![3])]);
    }

    #[test]
    fn element_arithmetic() {
        let grp = g(&[2, 4]);
        let a = grp.element(vec![1, 3]).unwrap();
        assert_eq!(grp.element_order(&a), 4);
        assert_eq!(grp.add(&a, &a), grp.element(vec![0, 2]).unwrap());
        assert!(grp.add(&a, &grp.neg(&a)).is_zero());
        assert!(grp.in_multiple(&grp.element(vec![0, 2]).unwrap(), &2));
        assert!(!grp.in_multiple(&a, &2));
        let all = grp.elements(100).unwrap();
        assert_eq!(all.len(), 8);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(grp.elements(7).is_err());
    }
}
