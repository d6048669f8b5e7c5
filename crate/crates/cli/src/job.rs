//! Job specifications, dispatch, and the exit-status taxonomy.

use std::time::Instant;

use clap::ValueEnum;
use linkform::example::graph_lagrangian;
use linkform::{
    group_from_presentation, smith_normal_form, verify_example, BigInt, Error, FinAbGroup, Form, HyperbolicWitness,
    HyperbolicityCheck, IntMatrix, Matrix, Rational, VerifyOptions, DEFAULT_CAP,
};
use serde::{Deserialize, Serialize};
use thiserror::Error as ThisError;

use crate::document::*;

/// Process exit statuses.
pub mod status {
    pub const OK: i32 = 0;
    pub const INTERNAL: i32 = 1;
    pub const PARSE: i32 = 2;
    pub const INPUT: i32 = 3;
    pub const RESOURCE: i32 = 4;
}

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cannot access {path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    pub fn status(&self) -> i32 {
        match self {
            CliError::Parse(_) => status::PARSE,
            CliError::Io { .. } => status::INPUT,
            CliError::Core(Error::Input(_) | Error::Degenerate(_)) => status::INPUT,
            CliError::Core(Error::CapExceeded { .. }) => status::RESOURCE,
            CliError::Core(Error::Invariant(_)) => status::INTERNAL,
        }
    }
}

fn parse(msg: impl Into<String>) -> CliError {
    CliError::Parse(msg.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Smith normal form of a matrix.
    Snf,
    /// Abelian group presented by a relation matrix (rows are relations).
    Group,
    /// Linking form of a nondegenerate symmetric surgery matrix.
    FormFromSurgery,
    /// Classify a form given as a surgery matrix or a Gram document.
    Classify,
    /// List every Lagrangian of a nonsingular form.
    Lagrangians,
    /// Orthogonal sum of a list of forms.
    Sum,
    /// Decide whether two forms are isometric.
    Isometric,
    /// Check the worked example for one n.
    VerifyExample,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Snf => "snf",
            Command::Group => "group",
            Command::FormFromSurgery => "form-from-surgery",
            Command::Classify => "classify",
            Command::Lagrangians => "lagrangians",
            Command::Sum => "sum",
            Command::Isometric => "isometric",
            Command::VerifyExample => "verify-example",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub cap: usize,
    pub witnesses: bool,
    pub timing: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { cap: DEFAULT_CAP, witnesses: true, timing: true }
    }
}

/// Parsed input, already shaped for its command.
#[derive(Clone, Debug)]
pub enum Payload {
    Matrix(IntMatrix),
    Form(Form),
    Forms(Vec<Form>),
    Pair(Form, Form),
    Example(usize),
}

#[derive(Clone, Debug)]
pub struct JobSpec {
    pub command: Command,
    pub payload: Payload,
    pub options: Options,
}

impl JobSpec {
    /// Parses `text` as the input document for `command`.
    pub fn from_document(command: Command, text: &[u8], options: Options) -> Result<Self, CliError> {
        let doc: InputDoc = serde_json::from_slice(text).map_err(|e| parse(e.to_string()))?;
        if let Some(v) = &doc.schema_version {
            if v != SCHEMA_VERSION {
                return Err(parse(format!("unsupported schema_version {v:?}, expected {SCHEMA_VERSION:?}")));
            }
        }
        let payload = match command {
            Command::Snf | Command::Group | Command::FormFromSurgery => Payload::Matrix(matrix_of(&doc)?),
            Command::Classify | Command::Lagrangians => Payload::Form(form_of(&doc)?),
            Command::Sum => {
                let forms = doc.forms.as_ref().ok_or_else(|| parse("sum expects a \"forms\" list"))?;
                Payload::Forms(forms.iter().map(form_of).collect::<Result<_, _>>()?)
            }
            Command::Isometric => match (&doc.left, &doc.right) {
                (Some(l), Some(r)) => Payload::Pair(form_of(l)?, form_of(r)?),
                _ => return Err(parse("isometric expects \"left\" and \"right\" forms")),
            },
            Command::VerifyExample => Payload::Example(doc.n.ok_or_else(|| parse("verify-example expects \"n\""))?),
        };
        Ok(JobSpec { command, payload, options })
    }

    pub fn verify_example(n: usize, options: Options) -> Self {
        JobSpec { command: Command::VerifyExample, payload: Payload::Example(n), options }
    }
}

/// Parses a `{"rows", "cols", "entries"}` document.
pub fn parse_matrix_document(text: &[u8]) -> Result<IntMatrix, CliError> {
    let doc: InputDoc = serde_json::from_slice(text).map_err(|e| parse(e.to_string()))?;
    matrix_of(&doc)
}

fn matrix_of(doc: &InputDoc) -> Result<IntMatrix, CliError> {
    let (Some(rows), Some(cols), Some(entries)) = (doc.rows, doc.cols, &doc.entries) else {
        return Err(parse("a matrix document needs \"rows\", \"cols\" and \"entries\""));
    };
    let flat: Vec<BigInt> = match entries {
        Entries::Flat(v) => v.iter().map(|x| x.0.clone()).collect(),
        Entries::Nested(r) => {
            if r.len() != rows || r.iter().any(|row| row.len() != cols) {
                return Err(parse(format!("entries must be {rows} rows of {cols} integers")));
            }
            r.iter().flatten().map(|x| x.0.clone()).collect()
        }
    };
    let expected = rows.checked_mul(cols).ok_or_else(|| parse("matrix dimensions overflow"))?;
    if flat.len() != expected {
        return Err(parse(format!("a {rows}x{cols} matrix needs {expected} entries, found {}", flat.len())));
    }
    Matrix::new(rows, cols, flat).map_err(|e| parse(e.to_string()))
}

fn form_of(doc: &InputDoc) -> Result<Form, CliError> {
    match (&doc.invariant_factors, &doc.gram) {
        (Some(factors), Some(gram)) => {
            let group = FinAbGroup::new(factors.iter().map(|x| x.0.clone()).collect())?;
            let gram = gram
                .iter()
                .map(|row| row.iter().map(|Fraction(n, d)| Rational::new(n.0.clone(), d.0.clone())).collect())
                .collect::<Result<Vec<Vec<_>>, _>>()?;
            Ok(Form::new(group, gram)?)
        }
        (None, None) if doc.entries.is_some() => Ok(Form::from_surgery(&matrix_of(doc)?)?),
        _ => Err(parse("a form document needs \"invariant_factors\" and \"gram\", or a surgery matrix")),
    }
}

/// Runs one job. Identical jobs give identical results; only `timing_ms` varies.
pub fn run(job: &JobSpec) -> Result<ReportDocument, CliError> {
    let start = Instant::now();
    let result = dispatch(job)?;
    let timing_ms = job.options.timing.then(|| start.elapsed().as_secs_f64() * 1e3);
    Ok(ReportDocument { schema_version: SCHEMA_VERSION.into(), command: job.command.name().into(), result, timing_ms })
}

fn dispatch(job: &JobSpec) -> Result<ResultDoc, CliError> {
    let opts = &job.options;
    let keep = |on: bool| opts.witnesses && on;
    Ok(match (job.command, &job.payload) {
        (Command::Snf, Payload::Matrix(m)) => {
            let s = smith_normal_form(m);
            ResultDoc::Snf(SnfDoc {
                diagonal: s.diagonal.iter().map(Integer::from).collect(),
                rank: s.rank(),
                left: (&s.left).into(),
                right: (&s.right).into(),
            })
        }
        (Command::Group, Payload::Matrix(m)) => {
            let p = group_from_presentation(m);
            ResultDoc::Group(PresentationDoc {
                invariant_factors: p.group.invariant_factors().iter().map(Integer::from).collect(),
                free_rank: p.free_rank,
                torsion_order: (&p.group.order()).into(),
                basis_map: (&p.basis_map).into(),
                lifts: (&p.lifts).into(),
            })
        }
        (Command::FormFromSurgery, Payload::Matrix(m)) => ResultDoc::Form((&Form::from_surgery(m)?).into()),
        (Command::Classify, Payload::Form(f)) => {
            let r = f.classify(opts.cap)?;
            let alternating_witness = match r.alternating_witness.as_ref().filter(|_| keep(true)) {
                Some(x) => Some(SelfLinkingDoc { element: element_doc(x), value: (&f.self_linking(x)?).into() }),
                None => None,
            };
            ResultDoc::Classification(Box::new(ClassificationDoc {
                form: f.into(),
                group: f.group().into(),
                nonsingular: r.nonsingular,
                alternating: r.alternating,
                alternating_witness,
                metabolic: r.metabolic,
                lagrangian: r.lagrangian.as_ref().filter(|_| keep(true)).map(Into::into),
                lagrangian_count: r.lagrangian_count,
                split_metabolic: r.split_metabolic,
                split_witness: r
                    .split_witness
                    .as_ref()
                    .filter(|_| keep(true))
                    .map(|w| PairDoc { first: (&w.lagrangian).into(), second: (&w.complement).into() }),
                hyperbolic: r.hyperbolic,
                hyperbolic_witness: r.hyperbolic_witness.as_ref().filter(|_| keep(true)).map(pair_doc),
                direct_double: r.direct_double,
                half: r.half.as_ref().map(|h| h.invariant_factors().iter().map(Integer::from).collect()),
            }))
        }
        (Command::Lagrangians, Payload::Form(f)) => {
            let ls = f.lagrangians(opts.cap)?;
            ResultDoc::Lagrangians(LagrangiansDoc {
                group: f.group().into(),
                count: ls.len(),
                lagrangians: ls.iter().map(Into::into).collect(),
            })
        }
        (Command::Sum, Payload::Forms(fs)) => {
            let sum = fs.iter().fold(Form::trivial(), |acc, f| acc.orthogonal_sum(f));
            ResultDoc::Form((&sum).into())
        }
        (Command::Isometric, Payload::Pair(a, b)) => {
            let iso = a.isometry_to(b, opts.cap)?;
            ResultDoc::Isometry(IsometryDoc {
                isometric: iso.is_some(),
                images: iso.filter(|_| keep(true)).map(|v| v.iter().map(element_doc).collect()),
            })
        }
        (Command::VerifyExample, Payload::Example(n)) => {
            let vopts = VerifyOptions { cap: opts.cap, ..VerifyOptions::default() };
            let r = verify_example::<BigInt>(*n, &vopts)?;
            let g_n = graph_lagrangian::<BigInt>(*n, opts.cap)?;
            ResultDoc::Example(Box::new(ExampleDoc {
                n: r.n,
                all_pass: r.all_pass(),
                g_n_order: r.g_n_order,
                g_n_generators: g_n.generators().iter().map(element_doc).collect(),
                a_n_order: r.a_n_order,
                size_ratio_ok: r.size_ratio_ok,
                g_n_isotropic: r.g_n_isotropic,
                isotropy_witness: r.isotropy_witness.as_ref().filter(|_| keep(true)).map(|(x, y)| [element_doc(x), element_doc(y)]),
                intersection_trivial: r.intersection_trivial,
                intersection_witness: r.intersection_witness.as_ref().filter(|_| keep(true)).map(element_doc),
                l_n_alternating: r.l_n_alternating,
                alternating_witness: r
                    .alternating_witness
                    .as_ref()
                    .filter(|_| keep(true))
                    .map(|(x, v)| SelfLinkingDoc { element: element_doc(x), value: v.into() }),
                l_n_hyperbolic: r.l_n_hyperbolic,
                hyperbolicity_method: match r.hyperbolicity_check {
                    HyperbolicityCheck::ExponentTwoLemma => HyperbolicityMethod::ExponentTwoLemma,
                    HyperbolicityCheck::LemmaAndSearch => HyperbolicityMethod::LemmaAndSearch,
                },
                hyperbolic_witness: r.hyperbolic_witness.as_ref().filter(|_| keep(true)).map(pair_doc),
            }))
        }
        (command, _) => return Err(parse(format!("payload does not match command {}", command.name()))),
    })
}

fn pair_doc(w: &HyperbolicWitness<BigInt>) -> PairDoc {
    PairDoc { first: (&w.first).into(), second: (&w.second).into() }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: &[u8] = br#"{"rows":2,"cols":2,"entries":[2,2,2,4]}"#;

    fn classify(text: &[u8]) -> Result<ReportDocument, CliError> {
        run(&JobSpec::from_document(Command::Classify, text, Options::default())?)
    }

    #[test]
    fn matrix_documents() {
        let m = parse_matrix_document(Q).unwrap();
        assert_eq!(m, IntMatrix::from_i64_rows(&[&[2, 2], &[2, 4]]).unwrap());
        let empty = parse_matrix_document(br#"{"rows":0,"cols":0,"entries":[]}"#).unwrap();
        assert_eq!((empty.rows(), empty.cols()), (0, 0));
        let big = parse_matrix_document(br#"{"rows":1,"cols":1,"entries":["9999999999999999999999"]}"#).unwrap();
        assert_eq!(big.entries()[0].to_string(), "9999999999999999999999");
    }

    #[test]
    fn malformed_matrices_are_parse_errors() {
        for bad in [
            &br#"{"rows":2,"cols":2,"entries":[1,2,3]}"#[..],
            br#"{"rows":2,"cols":2,"entries":[[1,2],[3]]}"#,
            br#"{"rows":1,"cols":1,"entries":[1.5]}"#,
            br#"{"rows":1,"cols":1}"#,
            br#"{"rows":1,"cols":1,"entries":[1],"extra":0}"#,
            b"{\"rows\":1,\n \"cols\":1,\n \"entries\":[1,}",
        ] {
            let e = parse_matrix_document(bad).unwrap_err();
            assert_eq!(e.status(), status::PARSE, "{e}");
        }
        let e = parse_matrix_document(b"{\"rows\":1,\n \"cols\":1,\n \"entries\":[1,}").unwrap_err();
        assert!(e.to_string().contains("line 3"), "{e}");
    }

    #[test]
    fn classify_q() {
        let doc = classify(Q).unwrap();
        let ResultDoc::Classification(c) = doc.result else { panic!() };
        assert!(c.nonsingular && c.metabolic && c.split_metabolic && !c.hyperbolic && !c.alternating);
        assert_eq!(c.lagrangian_count, 1);
        // Smith coordinates diagonalize the form as diag(1/2, 1/2).
        let half = Fraction(1.into(), 2.into());
        let zero = Fraction(0.into(), 1.into());
        assert_eq!(c.form.gram, vec![vec![half.clone(), zero.clone()], vec![zero, half]]);
        assert_eq!(c.lagrangian.unwrap().generators, vec![vec![Integer::from(1), Integer::from(1)]]);
    }

    #[test]
    fn error_statuses() {
        assert_eq!(classify(br#"{"rows":1,"cols":1,"entries":[0]}"#).unwrap_err().status(), status::INPUT);
        assert_eq!(classify(br#"{"rows":1,"cols":2,"entries":[1,2]}"#).unwrap_err().status(), status::INPUT);
        assert_eq!(
            classify(br#"{"invariant_factors":[2],"gram":[[[1,3]]]}"#).unwrap_err().status(),
            status::INPUT
        );
        assert_eq!(classify(br#"{"invariant_factors":[2],"gram":[[[0,1]]]}"#).unwrap_err().status(), status::INPUT);
        let tight = Options { cap: 2, ..Options::default() };
        let job = JobSpec::from_document(Command::Classify, Q, tight).unwrap();
        assert_eq!(run(&job).unwrap_err().status(), status::RESOURCE);
        assert_eq!(run(&JobSpec::verify_example(6, Options::default())).unwrap_err().status(), status::RESOURCE);
        assert_eq!(run(&JobSpec::verify_example(0, Options::default())).unwrap_err().status(), status::INPUT);
        assert_eq!(
            JobSpec::from_document(Command::Isometric, Q, Options::default()).unwrap_err().status(),
            status::PARSE
        );
        assert_eq!(
            JobSpec::from_document(Command::Snf, br#"{"schema_version":"2","n":1}"#, Options::default())
                .unwrap_err()
                .status(),
            status::PARSE
        );
    }

    #[test]
    fn witnesses_can_be_suppressed() {
        let opts = Options { witnesses: false, timing: false, ..Options::default() };
        let doc = run(&JobSpec::from_document(Command::Classify, Q, opts).unwrap()).unwrap();
        let text = doc.to_json();
        assert!(!text.contains("witness") && !text.contains("\"lagrangian\""), "{text}");
        assert!(!text.contains("timing_ms"));
    }

    #[test]
    fn sum_and_isometric() {
        let sum = br#"{"forms":[{"invariant_factors":[3],"gram":[[[1,3]]]},{"invariant_factors":[2],"gram":[[[1,2]]]}]}"#;
        let doc = run(&JobSpec::from_document(Command::Sum, sum, Options::default()).unwrap()).unwrap();
        let ResultDoc::Form(f) = doc.result else { panic!() };
        assert_eq!(f.invariant_factors, vec![Integer::from(6)]);
        let iso = br#"{"left":{"invariant_factors":[5],"gram":[[[4,5]]]},"right":{"rows":1,"cols":1,"entries":[5]}}"#;
        let doc = run(&JobSpec::from_document(Command::Isometric, iso, Options::default()).unwrap()).unwrap();
        let ResultDoc::Isometry(i) = doc.result else { panic!() };
        // 4/5 = 2²·(1/5).
        assert!(i.isometric);
        assert_eq!(i.images, Some(vec![vec![Integer::from(2)]]));
        let no = br#"{"left":{"invariant_factors":[5],"gram":[[[2,5]]]},"right":{"rows":1,"cols":1,"entries":[5]}}"#;
        let doc = run(&JobSpec::from_document(Command::Isometric, no, Options::default()).unwrap()).unwrap();
        assert_eq!(doc.result, ResultDoc::Isometry(IsometryDoc { isometric: false, images: None }));
    }
}
