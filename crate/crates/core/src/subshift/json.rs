use serde::{Deserialize, Serialize};

use super::graph::{EdgeDoc, GraphDoc, LabeledGraph};
use super::{Alphabet, Backend, SubshiftSpec, Word};
use crate::builders::beta::Beta;
use crate::error::{Error, Result};

/// JSON form of a [`SubshiftSpec`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecDoc {
    pub alphabet: Vec<String>,
    pub backend: BackendDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BackendDoc {
    Forbidden { words: Vec<Vec<String>> },
    Sofic { vertices: Vec<String>, edges: Vec<EdgeDoc> },
    Dyck { n: usize },
    MarkovDyck { matrix: Vec<Vec<u8>> },
    Motzkin { n: usize },
    Beta { beta: String },
    HigherBlock { base: Box<SpecDoc>, block: usize },
}

impl SubshiftSpec {
    pub fn to_doc(&self) -> Result<SpecDoc> {
        let a = &self.alphabet;
        let backend = match &self.backend {
            Backend::Forbidden { words, .. } => {
                BackendDoc::Forbidden { words: words.iter().map(|w| a.word_names(w)).collect() }
            }
            Backend::Sofic(g) => {
                let d = g.to_doc();
                BackendDoc::Sofic { vertices: d.vertices, edges: d.edges }
            }
            Backend::Dyck(m) => BackendDoc::Dyck { n: m.n() },
            Backend::Motzkin(m) => BackendDoc::Motzkin { n: m.n() },
            Backend::MarkovDyck { matrix, .. } => BackendDoc::MarkovDyck { matrix: matrix.clone() },
            Backend::Beta(b) => BackendDoc::Beta { beta: b.beta.to_string() },
            Backend::HigherBlock { base, block, .. } => {
                BackendDoc::HigherBlock { base: Box::new(base.to_doc()?), block: *block }
            }
            Backend::Oracle(_) => return Err(Error::Unsupported("oracle languages cannot be serialized".into())),
        };
        Ok(SpecDoc { alphabet: a.names().to_vec(), backend })
    }

    pub fn from_doc(doc: &SpecDoc) -> Result<Self> {
        let alphabet = Alphabet::new(doc.alphabet.iter().cloned())?;
        let spec = match &doc.backend {
            BackendDoc::Forbidden { words } => {
                let ws = words.iter().map(|w| alphabet.word_from_names(w)).collect::<Result<Vec<Word>>>()?;
                SubshiftSpec::forbidden(alphabet.clone(), ws)?
            }
            BackendDoc::Sofic { vertices, edges } => {
                let g = LabeledGraph::from_doc(&GraphDoc {
                    alphabet: doc.alphabet.clone(),
                    vertices: vertices.clone(),
                    edges: edges.clone(),
                })?;
                SubshiftSpec::sofic(g)?
            }
            BackendDoc::Dyck { n } => SubshiftSpec::dyck(*n)?,
            BackendDoc::Motzkin { n } => SubshiftSpec::motzkin(*n)?,
            BackendDoc::MarkovDyck { matrix } => SubshiftSpec::markov_dyck(matrix.clone())?,
            BackendDoc::Beta { beta } => SubshiftSpec::beta_shift(Beta::parse(beta)?)?,
            BackendDoc::HigherBlock { base, block } => SubshiftSpec::from_doc(base)?.higher_block(*block)?,
        };
        if spec.alphabet != alphabet {
            return Err(Error::invalid(format!(
                "alphabet {:?} does not match the backend alphabet {:?}",
                alphabet.names(),
                spec.alphabet.names()
            )));
        }
        Ok(spec)
    }

    pub fn to_json(&self) -> Result<String> {
        crate::schema::to_tagged_json(&self.to_doc()?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        SubshiftSpec::from_doc(&serde_json::from_value(crate::schema::parse_tagged(text)?)?)
    }
}
