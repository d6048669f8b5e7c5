//! Serialized shapes of every input and output document.

use std::fmt;
use std::str::FromStr;

use linkform::{BigInt, BigSubgroup, Form, GroupElement, IntMatrix, Rational};
use num_traits::ToPrimitive;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

pub const SCHEMA_VERSION: &str = "1";

/// An exact integer: a JSON number when it fits in 64 bits, a decimal string otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Integer(pub BigInt);

impl From<&BigInt> for Integer {
    fn from(v: &BigInt) -> Self {
        Integer(v.clone())
    }
}

impl From<i64> for Integer {
    fn from(v: i64) -> Self {
        Integer(BigInt::from(v))
    }
}

impl Serialize for Integer {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Integer {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct IntegerVisitor;

        impl Visitor<'_> for IntegerVisitor {
            type Value = Integer;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal integer string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Integer, E> {
                Ok(Integer(BigInt::from(v)))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Integer, E> {
                Ok(Integer(BigInt::from(v)))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Integer, E> {
                Err(E::custom(format!(
                    "expected an integer, found {v}; integers beyond 64 bits must be written as decimal strings"
                )))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Integer, E> {
                let digits = v.strip_prefix('-').unwrap_or(v);
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(E::custom(format!("invalid integer string {v:?}")));
                }
                BigInt::from_str(v).map(Integer).map_err(|e| E::custom(format!("invalid integer string {v:?}: {e}")))
            }
        }

        d.deserialize_any(IntegerVisitor)
    }
}

/// An element of ℚ/ℤ as `[numerator, denominator]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fraction(pub Integer, pub Integer);

impl From<&Rational> for Fraction {
    fn from(q: &Rational) -> Self {
        Fraction(q.numerator().into(), q.denominator().into())
    }
}

/// Matrix entries, flat in row-major order or as a list of rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entries {
    Flat(Vec<Integer>),
    Nested(Vec<Vec<Integer>>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDoc {
    pub rows: usize,
    pub cols: usize,
    pub entries: Entries,
}

impl From<&IntMatrix> for MatrixDoc {
    fn from(m: &IntMatrix) -> Self {
        let rows = (0..m.rows()).map(|i| m.row(i).iter().map(Integer::from).collect()).collect();
        MatrixDoc { rows: m.rows(), cols: m.cols(), entries: Entries::Nested(rows) }
    }
}

pub type ElementDoc = Vec<Integer>;

pub fn element_doc(e: &GroupElement) -> ElementDoc {
    e.residues().iter().map(Integer::from).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDoc {
    pub invariant_factors: Vec<Integer>,
    pub order: Integer,
}

impl From<&linkform::FinAbGroup> for GroupDoc {
    fn from(g: &linkform::FinAbGroup) -> Self {
        GroupDoc { invariant_factors: g.invariant_factors().iter().map(Integer::from).collect(), order: (&g.order()).into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupDoc {
    pub order: usize,
    pub generators: Vec<ElementDoc>,
}

impl From<&BigSubgroup> for SubgroupDoc {
    fn from(s: &BigSubgroup) -> Self {
        SubgroupDoc { order: s.order(), generators: s.generators().iter().map(element_doc).collect() }
    }
}

/// A form as a Gram matrix on the invariant-factor generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormDoc {
    pub invariant_factors: Vec<Integer>,
    pub gram: Vec<Vec<Fraction>>,
}

impl From<&Form> for FormDoc {
    fn from(f: &Form) -> Self {
        FormDoc {
            invariant_factors: f.group().invariant_factors().iter().map(Integer::from).collect(),
            gram: f.gram_rows().iter().map(|r| r.iter().map(Fraction::from).collect()).collect(),
        }
    }
}

/// Any input document. Which fields are required depends on the command.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDoc {
    pub schema_version: Option<String>,
    pub rows: Option<usize>,
    pub cols: Option<usize>,
    pub entries: Option<Entries>,
    pub invariant_factors: Option<Vec<Integer>>,
    pub gram: Option<Vec<Vec<Fraction>>>,
    pub forms: Option<Vec<InputDoc>>,
    pub left: Option<Box<InputDoc>>,
    pub right: Option<Box<InputDoc>>,
    pub n: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnfDoc {
    pub diagonal: Vec<Integer>,
    pub rank: usize,
    pub left: MatrixDoc,
    pub right: MatrixDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationDoc {
    pub invariant_factors: Vec<Integer>,
    pub free_rank: usize,
    pub torsion_order: Integer,
    /// Row i is the image of the i-th original generator.
    pub basis_map: MatrixDoc,
    /// Row k lifts the k-th invariant-factor generator.
    pub lifts: MatrixDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairDoc {
    pub first: SubgroupDoc,
    pub second: SubgroupDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfLinkingDoc {
    pub element: ElementDoc,
    pub value: Fraction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationDoc {
    pub form: FormDoc,
    pub group: GroupDoc,
    pub nonsingular: bool,
    pub alternating: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alternating_witness: Option<SelfLinkingDoc>,
    pub metabolic: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lagrangian: Option<SubgroupDoc>,
    pub lagrangian_count: usize,
    pub split_metabolic: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split_witness: Option<PairDoc>,
    pub hyperbolic: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hyperbolic_witness: Option<PairDoc>,
    pub direct_double: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub half: Option<Vec<Integer>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LagrangiansDoc {
    pub group: GroupDoc,
    pub count: usize,
    pub lagrangians: Vec<SubgroupDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsometryDoc {
    pub isometric: bool,
    /// Images of the left generators in the right group.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub images: Option<Vec<ElementDoc>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HyperbolicityMethod {
    ExponentTwoLemma,
    LemmaAndSearch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExampleDoc {
    pub n: usize,
    pub all_pass: bool,
    pub g_n_order: usize,
    pub g_n_generators: Vec<ElementDoc>,
    pub a_n_order: usize,
    pub size_ratio_ok: bool,
    pub g_n_isotropic: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub isotropy_witness: Option<[ElementDoc; 2]>,
    pub intersection_trivial: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub intersection_witness: Option<ElementDoc>,
    pub l_n_alternating: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alternating_witness: Option<SelfLinkingDoc>,
    pub l_n_hyperbolic: bool,
    pub hyperbolicity_method: HyperbolicityMethod,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hyperbolic_witness: Option<PairDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResultDoc {
    Snf(SnfDoc),
    Group(PresentationDoc),
    Form(FormDoc),
    Classification(Box<ClassificationDoc>),
    Lagrangians(LagrangiansDoc),
    Isometry(IsometryDoc),
    Example(Box<ExampleDoc>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDocument {
    pub schema_version: String,
    pub command: String,
    pub result: ResultDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl ReportDocument {
    /// Pretty JSON with a trailing newline; identical values give identical bytes.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        let mut out = String::new();
        write_value(&value, 0, &mut out);
        out.push('\n');
        out
    }

    pub fn from_json(text: &[u8]) -> Result<Self, serde_json::Error> {
        serde_json::from_slice(text)
    }
}

/// Objects one field per line; arrays without objects on a single line.
fn write_value(v: &Value, depth: usize, out: &mut String) {
    let pad = |d: usize| "  ".repeat(d);
    match v {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(x, depth + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
        Value::Array(items) if items.iter().any(contains_object) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                write_value(x, depth + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        Value::Array(items) => {
            out.push('[');
            for (i, x) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_value(x, depth, out);
            }
            out.push(']');
        }
        _ => out.push_str(&v.to_string()),
    }
}

fn contains_object(v: &Value) -> bool {
    match v {
        Value::Object(_) => true,
        Value::Array(items) => items.iter().any(contains_object),
        _ => false,
    }
}
