//! Exact torsion linking forms on finite abelian groups.
//!
//! Everything is generic over the integer type (see [`Scalar`]); the aliases
//! below fix it to [`BigInt`], which is what the command-line tool uses.

pub mod abelian;
pub mod error;
pub mod example;
pub mod linkform;
pub mod matrix;
pub mod qmodz;
pub mod scalar;
pub mod snf;

pub use num_bigint::BigInt;

pub use abelian::{
    direct_summand_complement, enumerate_subgroups, group_from_presentation, is_direct_summand, Element,
    FiniteAbelianGroup, Presentation, PurityWitness, Subgroup, SubgroupLattice, DEFAULT_CAP,
};
pub use error::{Error, Result};
pub use example::{verify_example, BitVector, ExampleReport, HyperbolicityCheck, VerifyOptions};
pub use linkform::{ClassificationReport, HyperbolicWitness, LinkingForm, SplitWitness};
pub use matrix::Matrix;
pub use qmodz::QmodZ;
pub use scalar::Scalar;
pub use snf::{smith_normal_form, SnfResult};

pub type IntMatrix = Matrix<BigInt>;
pub type Snf = SnfResult<BigInt>;
pub type FinAbGroup = FiniteAbelianGroup<BigInt>;
pub type GroupElement = Element<BigInt>;
pub type BigSubgroup = Subgroup<BigInt>;
pub type Rational = QmodZ<BigInt>;
pub type Form = LinkingForm<BigInt>;
pub type Report = ClassificationReport<BigInt>;
pub type Lattice = SubgroupLattice<BigInt>;
pub type IntPresentation = Presentation<BigInt>;

/// Machine-integer variants, for speed when entries are known small.
pub mod small {
    use super::*;

    pub type IntMatrix = Matrix<i64>;
    pub type FinAbGroup = FiniteAbelianGroup<i64>;
    pub type GroupElement = Element<i64>;
    pub type Form = LinkingForm<i64>;
}
