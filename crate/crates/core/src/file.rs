//! The JSON algebra file format and a runtime-typed algebra.
//!
//! ```json
//! {"field": {"prime": 2}, "dim": 2, "basis": ["x", "y"],
//!  "products": [{"i": 0, "j": 0, "terms": [{"k": 0, "c": "1"}]}]}
//! ```
//!
//! Indices are 0-based, absent `(i, j)` pairs are zero products. An optional
//! `certificates` object carries data that cannot be enumerated over `Q`:
//! a claimed solvable radical and codimension-one subalgebras, both given
//! as lists of coordinate vectors and re-verified before use.

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactfield::{Field, FieldSpec, PrimeField, Rationals};
use crate::linalg::{Subspace, Vector};
use crate::verify::Certificates;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldRepr {
    Named(String),
    Prime { prime: u64 },
}

impl FieldRepr {
    pub fn from_spec(spec: FieldSpec) -> Self {
        match spec {
            FieldSpec::Rationals => FieldRepr::Named("Q".into()),
            FieldSpec::Prime(p) => FieldRepr::Prime { prime: p },
        }
    }

    pub fn to_spec(&self) -> Result<FieldSpec> {
        match self {
            FieldRepr::Named(s) if s == "Q" => Ok(FieldSpec::Rationals),
            FieldRepr::Named(s) => Err(Error::parse(format!("field: expected \"Q\" or {{\"prime\": p}}, got \"{s}\""))),
            FieldRepr::Prime { prime } => {
                FieldSpec::prime(*prime).map_err(|e| Error::parse(format!("field: {}", inner(&e))))
            }
        }
    }
}

/// A coefficient; strings are canonical, bare integers are accepted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coefficient {
    Text(String),
    Integer(i64),
}

impl Coefficient {
    fn as_text(&self) -> String {
        match self {
            Coefficient::Text(s) => s.clone(),
            Coefficient::Integer(n) => n.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub k: usize,
    pub c: Coefficient,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductEntry {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solvable_radical: Option<Vec<Vec<Coefficient>>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub codim_one_subalgebras: Vec<Vec<Vec<Coefficient>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub field: FieldRepr,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    pub products: Vec<ProductEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificates: Option<CertificateFile>,
}

/// An algebra whose field is only known at run time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyAlgebra {
    Rational(Algebra<Rationals>),
    Prime(Algebra<PrimeField>),
}

/// Runs `$body` with `$a` bound to the typed algebra inside an [`AnyAlgebra`].
#[macro_export]
macro_rules! with_algebra {
    ($any:expr, $a:ident => $body:expr) => {
        match $any {
            $crate::file::AnyAlgebra::Rational($a) => $body,
            $crate::file::AnyAlgebra::Prime($a) => $body,
        }
    };
}

impl AnyAlgebra {
    pub fn field_spec(&self) -> FieldSpec {
        with_algebra!(self, a => a.field().spec())
    }

    pub fn dim(&self) -> usize {
        with_algebra!(self, a => a.dim())
    }

    pub fn to_json(&self) -> String {
        with_algebra!(self, a => serialize_algebra(a))
    }

    pub fn to_file(&self) -> AlgebraFile {
        with_algebra!(self, a => AlgebraFile::from_algebra(a))
    }
}

impl From<Algebra<Rationals>> for AnyAlgebra {
    fn from(a: Algebra<Rationals>) -> Self {
        AnyAlgebra::Rational(a)
    }
}

impl From<Algebra<PrimeField>> for AnyAlgebra {
    fn from(a: Algebra<PrimeField>) -> Self {
        AnyAlgebra::Prime(a)
    }
}

/// An algebra together with any certificates its file carried.
#[derive(Clone, Debug)]
pub enum LoadedAlgebra {
    Rational(Algebra<Rationals>, Certificates<Rationals>),
    Prime(Algebra<PrimeField>, Certificates<PrimeField>),
}

impl LoadedAlgebra {
    pub fn algebra(&self) -> AnyAlgebra {
        match self {
            LoadedAlgebra::Rational(a, _) => AnyAlgebra::Rational(a.clone()),
            LoadedAlgebra::Prime(a, _) => AnyAlgebra::Prime(a.clone()),
        }
    }
}

fn inner(e: &Error) -> String {
    match e {
        Error::Usage(s)
        | Error::Domain(s)
        | Error::Parse(s)
        | Error::Unsupported(s)
        | Error::Budget(s)
        | Error::Precondition(s)
        | Error::TheoremViolation(s) => s.clone(),
    }
}

impl AlgebraFile {
    pub fn from_algebra<K: Field>(a: &Algebra<K>) -> Self {
        let f = a.field();
        let n = a.dim();
        let mut products = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let terms: Vec<Term> = a
                    .basis_product(i, j)
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !f.is_zero(c))
                    .map(|(k, c)| Term { k, c: Coefficient::Text(f.render(c)) })
                    .collect();
                if !terms.is_empty() {
                    products.push(ProductEntry { i, j, terms });
                }
            }
        }
        AlgebraFile {
            field: FieldRepr::from_spec(f.spec()),
            dim: n,
            basis: a.labels().map(|l| l.to_vec()),
            products,
            certificates: None,
        }
    }

    pub fn with_certificates<K: Field>(mut self, field: &K, c: &Certificates<K>) -> Self {
        let render = |s: &Subspace<K>| -> Vec<Vec<Coefficient>> {
            s.basis()
                .iter()
                .map(|v| v.iter().map(|x| Coefficient::Text(field.render(x))).collect())
                .collect()
        };
        if c.solvable_radical.is_some() || !c.codim_one_subalgebras.is_empty() {
            self.certificates = Some(CertificateFile {
                solvable_radical: c.solvable_radical.as_ref().map(render),
                codim_one_subalgebras: c.codim_one_subalgebras.iter().map(render).collect(),
            });
        }
        self
    }

    pub fn to_algebra<K: Field>(&self, field: K) -> Result<Algebra<K>> {
        let n = self.dim;
        let mut a = Algebra::zero_algebra(field.clone(), n);
        let mut seen = vec![false; n * n];
        for (pos, p) in self.products.iter().enumerate() {
            if p.i >= n || p.j >= n {
                return Err(Error::parse(format!(
                    "products[{pos}]: index ({}, {}) out of range for dimension {n}",
                    p.i, p.j
                )));
            }
            if std::mem::replace(&mut seen[p.i * n + p.j], true) {
                return Err(Error::parse(format!("products[{pos}]: duplicate entry for pair ({}, {})", p.i, p.j)));
            }
            let mut v = vec![field.zero(); n];
            for (tpos, t) in p.terms.iter().enumerate() {
                if t.k >= n {
                    return Err(Error::parse(format!(
                        "products[{pos}].terms[{tpos}]: k = {} out of range for dimension {n}",
                        t.k
                    )));
                }
                let c = field.parse(&t.c.as_text()).map_err(|e| {
                    Error::parse(format!("products[{pos}].terms[{tpos}]: coefficient: {}", inner(&e)))
                })?;
                v[t.k] = field.add(&v[t.k], &c);
            }
            a.set_product(p.i, p.j, v)?;
        }
        if let Some(labels) = &self.basis {
            if labels.len() != n {
                return Err(Error::parse(format!("basis: {} names for dimension {n}", labels.len())));
            }
            a = a.with_labels(labels.clone())?;
        }
        Ok(a)
    }

    pub fn to_certificates<K: Field>(&self, field: &K) -> Result<Certificates<K>> {
        let n = self.dim;
        let parse_space = |what: &str, rows: &[Vec<Coefficient>]| -> Result<Subspace<K>> {
            let mut vs: Vec<Vector<K>> = Vec::new();
            for (r, row) in rows.iter().enumerate() {
                if row.len() != n {
                    return Err(Error::parse(format!("{what}[{r}]: {} coordinates for dimension {n}", row.len())));
                }
                let v = row
                    .iter()
                    .map(|c| field.parse(&c.as_text()))
                    .collect::<Result<Vec<_>>>()
                    .map_err(|e| Error::parse(format!("{what}[{r}]: {}", inner(&e))))?;
                vs.push(v);
            }
            Subspace::span(field.clone(), n, vs)
        };
        let mut out = Certificates::default();
        if let Some(c) = &self.certificates {
            if let Some(r) = &c.solvable_radical {
                out.solvable_radical = Some(parse_space("certificates.solvable_radical", r)?);
            }
            for (i, m) in c.codim_one_subalgebras.iter().enumerate() {
                out.codim_one_subalgebras.push(parse_space(&format!("certificates.codim_one_subalgebras[{i}]"), m)?);
            }
        }
        Ok(out)
    }

    pub fn load(&self) -> Result<LoadedAlgebra> {
        match self.field.to_spec()? {
            FieldSpec::Rationals => {
                let a = self.to_algebra(Rationals)?;
                let c = self.to_certificates(&Rationals)?;
                Ok(LoadedAlgebra::Rational(a, c))
            }
            FieldSpec::Prime(p) => {
                let f = PrimeField::new(p)?;
                let a = self.to_algebra(f)?;
                let c = self.to_certificates(&f)?;
                Ok(LoadedAlgebra::Prime(a, c))
            }
        }
    }
}

pub fn parse_file(bytes: &[u8]) -> Result<LoadedAlgebra> {
    let text = std::str::from_utf8(bytes).map_err(|e| Error::parse(format!("input is not UTF-8: {e}")))?;
    let file: AlgebraFile = serde_json::from_str(text).map_err(|e| Error::parse(format!("{e}")))?;
    file.load()
}

/// Parses an algebra file, discarding certificates.
pub fn parse_algebra(bytes: &[u8]) -> Result<AnyAlgebra> {
    Ok(parse_file(bytes)?.algebra())
}

pub fn serialize_algebra<K: Field>(a: &Algebra<K>) -> String {
    serde_json::to_string_pretty(&AlgebraFile::from_algebra(a)).expect("serializable")
}

/// Renders a vector as `[c0, c1, ...]` coefficient strings.
pub fn render_vector<K: Field>(f: &K, v: &[K::Elem]) -> Vec<String> {
    v.iter().map(|x| f.render(x)).collect()
}

/// Renders a subspace as its RREF basis.
pub fn render_subspace<K: Field>(s: &Subspace<K>) -> Vec<Vec<String>> {
    s.basis().iter().map(|v| render_vector(s.field(), v)).collect()
}

/// `span{x, y+2z}` using the algebra's basis names.
pub fn describe_subspace<K: Field>(a: &Algebra<K>, s: &Subspace<K>) -> String {
    let parts: Vec<String> = s.basis().iter().map(|v| describe_vector(a, v)).collect();
    format!("span{{{}}}", parts.join(", "))
}

pub fn describe_vector<K: Field>(a: &Algebra<K>, v: &[K::Elem]) -> String {
    let f = a.field();
    let mut out = String::new();
    for (i, c) in v.iter().enumerate() {
        if f.is_zero(c) {
            continue;
        }
        let coeff = f.render(c);
        let (sign, mag) = match coeff.strip_prefix('-') {
            Some(m) => ("-", m.to_string()),
            None => ("+", coeff),
        };
        if out.is_empty() {
            if sign == "-" {
                out.push('-');
            }
        } else {
            out.push_str(if sign == "-" { " - " } else { " + " });
        }
        if mag != "1" {
            out.push_str(&mag);
        }
        out.push_str(&a.label(i));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
