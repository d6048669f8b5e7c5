//! Exhaustive subgroup enumeration on small groups.
//!
//! Elements are encoded as mixed-radix indices with the first coordinate most
//! significant, so index order is the lexicographic element order and a
//! subgroup is a bitset over indices.

use std::collections::HashSet;

use fixedbitset::FixedBitSet;

use crate::error::{input, Error, Result};
use crate::scalar::Scalar;

use super::group::{Element, FiniteAbelianGroup};
use super::subgroup::Subgroup;

pub const DEFAULT_CAP: usize = 4096;

/// Index encoding of the elements of a group whose order is within a cap.
#[derive(Clone, Debug)]
pub(crate) struct ElementTable {
    radices: Vec<usize>,
    order: usize,
}

impl ElementTable {
    pub(crate) fn new<T: Scalar>(g: &FiniteAbelianGroup<T>, cap: usize) -> Result<Self> {
        let order = g.order_within(cap)?;
        let radices = g.invariant_factors().iter().map(|d| d.to_usize().expect("bounded by cap")).collect();
        Ok(Self { radices, order })
    }

    pub(crate) fn order(&self) -> usize {
        self.order
    }

    pub(crate) fn add(&self, mut a: usize, mut b: usize) -> usize {
        let (mut out, mut stride) = (0, 1);
        for &r in self.radices.iter().rev() {
            out += ((a % r + b % r) % r) * stride;
            stride *= r;
            a /= r;
            b /= r;
        }
        out
    }

    pub(crate) fn digits(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.radices.len()];
        for (slot, &r) in out.iter_mut().zip(&self.radices).rev() {
            *slot = idx % r;
            idx /= r;
        }
        out
    }

    pub(crate) fn encode<T: Scalar>(&self, e: &Element<T>) -> usize {
        e.residues()
            .iter()
            .zip(&self.radices)
            .fold(0, |acc, (x, &r)| acc * r + x.to_usize().expect("valid residue"))
    }

    pub(crate) fn decode<T: Scalar>(&self, idx: usize) -> Element<T> {
        Element::from_residues_unchecked(self.digits(idx).into_iter().map(T::from_count).collect())
    }

    /// Extends the span `(set, members)` by `g`.
    pub(crate) fn extend(&self, set: &mut FixedBitSet, members: &mut Vec<usize>, g: usize) {
        let base = members.clone();
        let mut shift = g;
        while !set.contains(shift) {
            for &h in &base {
                let x = self.add(h, shift);
                set.insert(x);
                members.push(x);
            }
            shift = self.add(shift, g);
        }
    }

    fn trivial(&self) -> (FixedBitSet, Vec<usize>) {
        let mut set = FixedBitSet::with_capacity(self.order);
        set.insert(0);
        (set, vec![0])
    }

    fn greedy_generators(&self, sorted: &[usize]) -> Vec<usize> {
        let (mut set, mut members) = self.trivial();
        let mut gens = Vec::new();
        for &e in sorted {
            if members.len() == sorted.len() {
                break;
            }
            if !set.contains(e) {
                self.extend(&mut set, &mut members, e);
                gens.push(e);
            }
        }
        gens
    }

    pub(crate) fn subgroup<T: Scalar>(&self, ambient: &FiniteAbelianGroup<T>, set: &FixedBitSet) -> Subgroup<T> {
        let sorted: Vec<usize> = set.ones().collect();
        let gens = self.greedy_generators(&sorted).into_iter().map(|i| self.decode(i)).collect();
        Subgroup::from_parts(ambient.clone(), gens, sorted.into_iter().map(|i| self.decode(i)).collect())
    }

    pub(crate) fn bits<T: Scalar>(&self, s: &Subgroup<T>) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.order);
        for e in s.elements() {
            set.insert(self.encode(e));
        }
        set
    }
}

/// Every subgroup of a group, in canonical order: by order, then by the
/// lexicographic order of the sorted element lists.
#[derive(Clone, Debug)]
pub struct SubgroupLattice<T> {
    group: FiniteAbelianGroup<T>,
    table: ElementTable,
    bits: Vec<FixedBitSet>,
    subgroups: Vec<Subgroup<T>>,
}

impl<T: Scalar> SubgroupLattice<T> {
    pub fn new(group: &FiniteAbelianGroup<T>, cap: usize) -> Result<Self> {
        let table = ElementTable::new(group, cap)?;
        let n = table.order();
        let (set, members) = table.trivial();
        let mut seen: HashSet<FixedBitSet> = HashSet::from([set.clone()]);
        let mut queue = vec![(set, members)];
        let mut head = 0;
        while head < queue.len() {
            let (set, members) = queue[head].clone();
            head += 1;
            let mut covered = set.clone();
            for g in 0..n {
                if covered.contains(g) {
                    continue;
                }
                for &h in &members {
                    covered.insert(table.add(h, g));
                }
                let (mut next, mut next_members) = (set.clone(), members.clone());
                table.extend(&mut next, &mut next_members, g);
                if seen.insert(next.clone()) {
                    queue.push((next, next_members));
                }
            }
        }
        let mut bits: Vec<(usize, Vec<usize>, FixedBitSet)> = queue
            .into_iter()
            .map(|(set, _)| (set.count_ones(..), set.ones().collect(), set))
            .collect();
        bits.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        let bits: Vec<FixedBitSet> = bits.into_iter().map(|(_, _, set)| set).collect();
        let subgroups = bits.iter().map(|b| table.subgroup(group, b)).collect();
        Ok(Self { group: group.clone(), table, bits, subgroups })
    }

    pub fn group(&self) -> &FiniteAbelianGroup<T> {
        &self.group
    }

    pub fn subgroups(&self) -> &[Subgroup<T>] {
        &self.subgroups
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn of_order(&self, order: usize) -> impl Iterator<Item = &Subgroup<T>> {
        self.subgroups.iter().filter(move |s| s.order() == order)
    }

    /// The first subgroup `C` in canonical order with `S ∩ C = 0` and
    /// `S + C = G`.
    pub fn complement(&self, s: &Subgroup<T>) -> Result<Option<Subgroup<T>>> {
        if *s.ambient() != self.group {
            return Err(input(format!("subgroup of {:?} queried in lattice of {:?}", s.ambient(), self.group)));
        }
        let target = self.table.order() / s.order();
        let sb = self.table.bits(s);
        let found = self
            .subgroups
            .iter()
            .zip(&self.bits)
            .filter(|(c, _)| c.order() == target)
            .find(|(_, cb)| cb.intersection_count(&sb) == 1);
        Ok(found.map(|(c, _)| c.clone()))
    }

    /// Complement search cross-checked against the purity criterion.
    pub fn direct_summand_complement(&self, s: &Subgroup<T>) -> Result<Option<Subgroup<T>>> {
        let complement = self.complement(s)?;
        if complement.is_some() != s.is_pure() {
            return Err(Error::Invariant(format!(
                "{s:?}: complement search says {}, purity says {}",
                complement.is_some(),
                s.is_pure()
            )));
        }
        Ok(complement)
    }
}

/// All subgroups of `g`, optionally only those of one order.
pub fn enumerate_subgroups<T: Scalar>(
    g: &FiniteAbelianGroup<T>,
    order_filter: Option<usize>,
    cap: usize,
) -> Result<Vec<Subgroup<T>>> {
    let lattice = SubgroupLattice::new(g, cap)?;
    Ok(match order_filter {
        Some(n) => lattice.of_order(n).cloned().collect(),
        None => lattice.subgroups,
    })
}

/// A complement of `s` in its ambient group, if `s` is a direct summand.
pub fn direct_summand_complement<T: Scalar>(s: &Subgroup<T>, cap: usize) -> Result<Option<Subgroup<T>>> {
    if s.is_trivial() {
        return Subgroup::whole(s.ambient(), cap).map(Some);
    }
    SubgroupLattice::new(s.ambient(), cap)?.direct_summand_complement(s)
}

pub fn is_direct_summand<T: Scalar>(s: &Subgroup<T>, cap: usize) -> Result<bool> {
    Ok(direct_summand_complement(s, cap)?.is_some())
}
