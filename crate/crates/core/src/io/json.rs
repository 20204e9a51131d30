//! JSON documents for contexts, posets, relations and concept functions.
//! All indices are 0-based; index lists are written sorted.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::context::FormalContext;
use crate::error::{Error, Result};
use crate::kernel::{build_acf, AcfContext, KernelOperator, Selection};
use crate::morphisms::{ConceptFunction, FMorphism};
use crate::order::FinitePoset;
use crate::sets::AttrSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AcfDocument {
    pub objects: Vec<String>,
    pub attributes: Vec<String>,
    pub incidence: Vec<[usize; 2]>,
    pub kernel: KernelDocument,
    pub selection: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum KernelDocument {
    Identity,
    Table { entries: Vec<TableEntry> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub closed: Vec<usize>,
    pub image: Vec<usize>,
}

fn set_from(v: &[usize], n: usize) -> Result<AttrSet> {
    if let Some(&bad) = v.iter().find(|&&i| i >= n) {
        return Err(Error::InvalidIndex {
            kind: "attribute",
            index: bad,
            len: n,
        });
    }
    Ok(v.iter().copied().collect())
}

impl AcfDocument {
    pub fn from_acf(acf: &AcfContext) -> Self {
        let c = acf.context();
        let incidence = c
            .rows()
            .iter()
            .enumerate()
            .flat_map(|(o, r)| r.iter().map(move |a| [o, a]))
            .collect();
        let kernel = match acf.kernel() {
            KernelOperator::Identity => KernelDocument::Identity,
            KernelOperator::Table(t) => KernelDocument::Table {
                entries: t
                    .iter()
                    .map(|(k, v)| TableEntry {
                        closed: k.to_vec(),
                        image: v.to_vec(),
                    })
                    .collect(),
            },
        };
        AcfDocument {
            objects: c.objects().to_vec(),
            attributes: c.attributes().to_vec(),
            incidence,
            kernel,
            selection: acf
                .selection()
                .members()
                .iter()
                .map(|m| m.to_vec())
                .collect(),
        }
    }

    pub fn context(&self) -> Result<FormalContext> {
        let pairs: Vec<(usize, usize)> = self.incidence.iter().map(|p| (p[0], p[1])).collect();
        FormalContext::from_pairs(self.objects.clone(), self.attributes.clone(), &pairs)
    }

    pub fn kernel_operator(&self) -> Result<KernelOperator> {
        let n = self.attributes.len();
        Ok(match &self.kernel {
            KernelDocument::Identity => KernelOperator::Identity,
            KernelDocument::Table { entries } => {
                let mut t = Vec::with_capacity(entries.len());
                for e in entries {
                    t.push((set_from(&e.closed, n)?, set_from(&e.image, n)?));
                }
                KernelOperator::table(t)
            }
        })
    }

    pub fn selection_sets(&self) -> Result<Selection> {
        let n = self.attributes.len();
        let members = self
            .selection
            .iter()
            .map(|m| set_from(m, n))
            .collect::<Result<Vec<_>>>()?;
        Selection::new(members)
    }

    /// Validates and builds the context.
    pub fn build(&self) -> Result<AcfContext> {
        build_acf(
            self.context()?,
            self.kernel_operator()?,
            self.selection_sets()?,
        )
    }
}

/// Indented JSON that keeps arrays of scalars (index lists, pairs) on one line.
pub fn to_pretty(value: &impl Serialize) -> String {
    let v = serde_json::to_value(value).expect("document serializes");
    let mut out = String::new();
    write_value(&v, 0, &mut out);
    out.push('\n');
    out
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            out.push_str(
                &serde_json::to_string(v)
                    .expect("scalar array")
                    .replace(',', ", "),
            );
        }
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(x, indent + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&serde_json::to_string(k).expect("key"));
                out.push_str(": ");
                write_value(x, indent + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        scalar => out.push_str(&serde_json::to_string(scalar).expect("scalar")),
    }
}

pub fn acf_to_json(acf: &AcfContext) -> String {
    to_pretty(&AcfDocument::from_acf(acf))
}

pub fn acf_from_json(text: &str) -> Result<AcfContext> {
    serde_json::from_str::<AcfDocument>(text)?.build()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetDocument {
    pub elements: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leq: Option<Vec<[usize; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub covers: Option<Vec<[usize; 2]>>,
}

impl PosetDocument {
    /// Writes the full order, reflexive pairs included.
    pub fn from_poset(p: &FinitePoset) -> Self {
        let n = p.len();
        let leq = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| p.leq(i, j)).map(move |j| [i, j]))
            .collect();
        PosetDocument {
            elements: p.labels().to_vec(),
            leq: Some(leq),
            covers: None,
        }
    }

    pub fn poset(&self) -> Result<FinitePoset> {
        let pairs = |v: &Vec<[usize; 2]>| v.iter().map(|p| (p[0], p[1])).collect::<Vec<_>>();
        match (&self.leq, &self.covers) {
            (Some(l), None) => FinitePoset::from_pairs(self.elements.clone(), &pairs(l), false),
            (None, Some(c)) => FinitePoset::from_pairs(self.elements.clone(), &pairs(c), true),
            (None, None) => FinitePoset::from_pairs(self.elements.clone(), &[], false),
            (Some(_), Some(_)) => Err(Error::NotPartialOrder(
                "give either `leq` or `covers`, not both".into(),
            )),
        }
    }
}

pub fn poset_to_json(p: &FinitePoset) -> String {
    to_pretty(&PosetDocument::from_poset(p))
}

pub fn poset_from_json(text: &str) -> Result<FinitePoset> {
    serde_json::from_str::<PosetDocument>(text)?.poset()
}

/// A context given inline or as a path relative to the referring file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ContextRef {
    Path(String),
    Inline(Box<AcfDocument>),
}

impl ContextRef {
    pub fn load(&self, base: &Path) -> Result<AcfContext> {
        match self {
            ContextRef::Inline(doc) => doc.build(),
            ContextRef::Path(p) => {
                let path: PathBuf = base.join(p);
                acf_from_json(&std::fs::read_to_string(path)?)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismDocument {
    pub source: ContextRef,
    pub target: ContextRef,
    /// `[selection index, target attribute index]`.
    pub pairs: Vec<[usize; 2]>,
}

impl MorphismDocument {
    pub fn from_morphism(h: &FMorphism, source: ContextRef, target: ContextRef) -> Self {
        MorphismDocument {
            source,
            target,
            pairs: h.pairs().into_iter().map(|(f, x)| [f, x]).collect(),
        }
    }

    pub fn morphism<'a>(
        &self,
        source: &'a AcfContext,
        target: &'a AcfContext,
    ) -> Result<FMorphism<'a>> {
        let pairs: Vec<(usize, usize)> = self.pairs.iter().map(|p| (p[0], p[1])).collect();
        FMorphism::from_pairs(source, target, &pairs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionEntry {
    pub from: Vec<usize>,
    pub to: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionDocument {
    pub source: ContextRef,
    pub target: ContextRef,
    pub mapping: Vec<FunctionEntry>,
}

impl FunctionDocument {
    pub fn from_function(phi: &ConceptFunction, source: ContextRef, target: ContextRef) -> Self {
        let (p, q) = (phi.source().poset(), phi.target().poset());
        let mapping = (0..p.len())
            .map(|i| FunctionEntry {
                from: p.get(i).attrs.to_vec(),
                to: q.get(phi.mapping()[i]).attrs.to_vec(),
            })
            .collect();
        FunctionDocument {
            source,
            target,
            mapping,
        }
    }

    pub fn function<'a>(
        &self,
        source: &'a AcfContext,
        target: &'a AcfContext,
    ) -> Result<ConceptFunction<'a>> {
        let (ns, nt) = (
            source.context().num_attributes(),
            target.context().num_attributes(),
        );
        let pairs = self
            .mapping
            .iter()
            .map(|e| Ok((set_from(&e.from, ns)?, set_from(&e.to, nt)?)))
            .collect::<Result<Vec<_>>>()?;
        ConceptFunction::from_sets(source, target, &pairs)
    }
}
