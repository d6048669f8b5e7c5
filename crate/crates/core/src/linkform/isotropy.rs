use crate::abelian::{Element, Subgroup, SubgroupLattice};
use crate::error::{input, Error, Result};
use crate::scalar::Scalar;

use super::table::FormTable;
use super::LinkingForm;

impl<T: Scalar> LinkingForm<T> {
    fn check_ambient(&self, s: &Subgroup<T>) -> Result<()> {
        if s.ambient() == self.group() {
            Ok(())
        } else {
            Err(input(format!("subgroup of {:?} used with a form on {:?}", s.ambient(), self.group())))
        }
    }

    /// `S^⊥ = {x : L(x, s) = 0 for all s ∈ S}`.
    pub fn orthogonal_complement(&self, s: &Subgroup<T>, cap: usize) -> Result<Subgroup<T>> {
        self.check_ambient(s)?;
        let table = FormTable::new(self, cap)?;
        let bits = table.perp(&table.generator_indices(s));
        Ok(table.elements.subgroup(self.group(), &bits))
    }

    /// A pair of generators of `S` that pairs nontrivially, if any. By
    /// bilinearity `L` vanishes on `S × S` iff it vanishes on generator pairs.
    pub fn isotropy_witness(&self, s: &Subgroup<T>) -> Result<Option<(Element<T>, Element<T>)>> {
        self.check_ambient(s)?;
        let gens = s.generators();
        for (i, a) in gens.iter().enumerate() {
            for b in &gens[i..] {
                if !self.pair(a, b).is_zero() {
                    return Ok(Some((a.clone(), b.clone())));
                }
            }
        }
        Ok(None)
    }

    pub fn is_isotropic(&self, s: &Subgroup<T>) -> Result<bool> {
        Ok(self.isotropy_witness(s)?.is_none())
    }

    /// Whether `S = S^⊥`.
    pub fn is_lagrangian(&self, s: &Subgroup<T>, cap: usize) -> Result<bool> {
        Ok(self.orthogonal_complement(s, cap)? == *s)
    }

    pub(crate) fn require_nonsingular(&self) -> Result<()> {
        match self.radical_witness() {
            None => Ok(()),
            Some(x) => Err(input(format!("form is singular: {x:?} lies in the radical"))),
        }
    }

    /// All subgroups with `S = S^⊥`, in canonical subgroup order.
    pub fn lagrangians(&self, cap: usize) -> Result<Vec<Subgroup<T>>> {
        self.require_nonsingular()?;
        let lattice = SubgroupLattice::new(self.group(), cap)?;
        let table = FormTable::new(self, cap)?;
        lagrangians_in(&lattice, &table)
    }
}

pub(crate) fn lagrangians_in<T: Scalar>(lattice: &SubgroupLattice<T>, table: &FormTable) -> Result<Vec<Subgroup<T>>> {
    let mut out = Vec::new();
    for s in lattice.subgroups() {
        let gens = table.generator_indices(s);
        if !table.is_isotropic(&gens) {
            continue;
        }
        let perp = table.perp(&gens);
        if perp.count_ones(..) != s.order() {
            continue;
        }
        if s.order() * s.order() != table.order() {
            return Err(Error::Invariant(format!("Lagrangian {s:?} has the wrong size")));
        }
        out.push(s.clone());
    }
    Ok(out)
}
