use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{LambdaGraphTruncation, LgEdge};
use crate::error::{Error, Result};
use crate::subshift::Alphabet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelDoc {
    pub vertices: Vec<String>,
    /// Names of the images in the previous level; empty on level 0.
    pub iota: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub annotations: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LgEdgeDoc {
    pub src: String,
    pub dst: String,
    pub label: String,
}

/// JSON form of a [`LambdaGraphTruncation`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LgsDoc {
    pub alphabet: Vec<String>,
    pub levels: Vec<LevelDoc>,
    pub edges: Vec<Vec<LgEdgeDoc>>,
}

type Lgs = LambdaGraphTruncation;

impl LambdaGraphTruncation {
    pub fn to_doc(&self) -> LgsDoc {
        let levels = (0..=self.depth())
            .map(|l| LevelDoc {
                vertices: (0..self.sizes[l]).map(|i| Lgs::vertex_id(l, i)).collect(),
                iota: self.iota[l].iter().map(|&p| Lgs::vertex_id(l - 1, p)).collect(),
                annotations: self.annotations.as_ref().map(|a| a[l].clone()),
            })
            .collect();
        let edges = self
            .edges
            .iter()
            .enumerate()
            .map(|(l, es)| {
                es.iter()
                    .map(|e| LgEdgeDoc {
                        src: Lgs::vertex_id(l, e.src),
                        dst: Lgs::vertex_id(l + 1, e.dst),
                        label: self.alphabet.name(e.label).to_owned(),
                    })
                    .collect()
            })
            .collect();
        LgsDoc { alphabet: self.alphabet.names().to_vec(), levels, edges }
    }

    pub fn from_doc(doc: &LgsDoc) -> Result<Self> {
        let alphabet = Alphabet::new(doc.alphabet.iter().cloned())?;
        let index: Vec<HashMap<&str, usize>> = doc
            .levels
            .iter()
            .map(|lv| lv.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect())
            .collect();
        let look = |l: usize, name: &str| {
            index
                .get(l)
                .and_then(|m| m.get(name).copied())
                .ok_or_else(|| Error::invalid(format!("unknown vertex {name:?} on level {l}")))
        };
        let sizes: Vec<usize> = doc.levels.iter().map(|lv| lv.vertices.len()).collect();
        let mut iota = Vec::with_capacity(sizes.len());
        for (l, lv) in doc.levels.iter().enumerate() {
            if l == 0 {
                iota.push(Vec::new());
            } else {
                iota.push(lv.iota.iter().map(|p| look(l - 1, p)).collect::<Result<Vec<_>>>()?);
            }
        }
        let mut edges = Vec::with_capacity(doc.edges.len());
        for (l, es) in doc.edges.iter().enumerate() {
            let mut out = Vec::with_capacity(es.len());
            for e in es {
                let label = alphabet
                    .index_of(&e.label)
                    .ok_or_else(|| Error::invalid(format!("unknown label {:?}", e.label)))?;
                out.push(LgEdge { src: look(l, &e.src)?, dst: look(l + 1, &e.dst)?, label });
            }
            edges.push(out);
        }
        let g = Lgs::new(alphabet, &sizes, iota, edges)?;
        if doc.levels.iter().all(|lv| lv.annotations.is_some()) {
            g.with_annotations(doc.levels.iter().map(|lv| lv.annotations.clone().unwrap_or_default()).collect())
        } else {
            Ok(g)
        }
    }

    pub fn to_json(&self) -> Result<String> {
        crate::schema::to_tagged_json(&self.to_doc())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Lgs::from_doc(&serde_json::from_value(crate::schema::parse_tagged(text)?)?)
    }

    /// Graphviz source with one cluster per level; dashed edges show iota.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph lambda {\n  rankdir=TB;\n");
        for l in 0..=self.depth() {
            s.push_str(&format!("  subgraph cluster_{l} {{\n    label=\"V_{l}\";\n"));
            for i in 0..self.sizes[l] {
                let label = match self.annotation(l, i) {
                    Some(a) => format!("{}\\n{}", Lgs::vertex_id(l, i), a.replace('"', "'")),
                    None => Lgs::vertex_id(l, i),
                };
                s.push_str(&format!("    \"{}\" [label=\"{label}\"];\n", Lgs::vertex_id(l, i)));
            }
            s.push_str("  }\n");
        }
        for (l, es) in self.edges.iter().enumerate() {
            for e in es {
                s.push_str(&format!(
                    "  \"{}\" -> \"{}\" [label=\"{}\"];\n",
                    Lgs::vertex_id(l, e.src),
                    Lgs::vertex_id(l + 1, e.dst),
                    self.alphabet.name(e.label)
                ));
            }
        }
        for l in 1..=self.depth() {
            for (i, &p) in self.iota[l].iter().enumerate() {
                s.push_str(&format!(
                    "  \"{}\" -> \"{}\" [style=dashed, arrowhead=empty];\n",
                    Lgs::vertex_id(l, i),
                    Lgs::vertex_id(l - 1, p)
                ));
            }
        }
        s.push_str("}\n");
        s
    }

    /// The defining relations of the associated C*-algebra, as index data.
    pub fn export_relations(&self) -> Result<Value> {
        let a = &self.alphabet;
        let syms: Vec<&str> = a.names().iter().map(String::as_str).collect();
        let mut families = vec![json!({
            "family": "partition_of_unity",
            "statement": "sum_b S_b S_b^* = sum_i E_i^l = 1",
            "levels": (0..=self.depth()).map(|l| json!({
                "level": l,
                "projections": (0..self.sizes[l]).map(|i| Lgs::vertex_id(l, i)).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "generators": syms,
        })];
        if self.depth() == 0 {
            return Ok(json!({ "alphabet": syms, "depth": 0, "families": families }));
        }
        families.push(json!({
            "family": "commutation",
            "statement": "S_a S_a^* E_i^l = E_i^l S_a S_a^*",
            "generators": syms,
        }));
        let tm = self.transition_matrices();
        let mut iota_rows = Vec::new();
        let mut trans_rows = Vec::new();
        for l in 0..self.depth() {
            for i in 0..self.sizes[l] {
                let children: Vec<String> =
                    (0..self.sizes[l + 1]).filter(|&j| tm.i[l][i][j] == 1).map(|j| Lgs::vertex_id(l + 1, j)).collect();
                iota_rows.push(json!({ "projection": Lgs::vertex_id(l, i), "sum_of": children }));
                for (s, m) in tm.a[l].iter().enumerate() {
                    let terms: Vec<Value> = (0..self.sizes[l + 1])
                        .filter(|&j| m[i][j] > 0)
                        .map(|j| json!({ "projection": Lgs::vertex_id(l + 1, j), "coefficient": m[i][j] }))
                        .collect();
                    trans_rows.push(json!({
                        "symbol": a.name(s as u16),
                        "projection": Lgs::vertex_id(l, i),
                        "sum_of": terms,
                    }));
                }
            }
        }
        families.push(json!({
            "family": "inclusion",
            "statement": "E_i^l = sum_j I_{l,l+1}(i,j) E_j^{l+1}",
            "relations": iota_rows,
        }));
        families.push(json!({
            "family": "transition",
            "statement": "S_a^* E_i^l S_a = sum_j A_{l,l+1}(i,a,j) E_j^{l+1}",
            "relations": trans_rows,
        }));
        let mut proj = Vec::new();
        for l in 0..=self.depth() {
            for (i, p) in self.predecessors(l)?.into_iter().enumerate() {
                proj.push(json!({
                    "projection": Lgs::vertex_id(l, i),
                    "predecessors": p.iter().map(|w| a.word_names(w)).collect::<Vec<_>>(),
                }));
            }
        }
        families.push(json!({
            "family": "projection_formula",
            "statement": "E_i^l = prod_{u in P} S_u^* S_u * prod_{w in B_l \\ P} (1 - S_w^* S_w), P the predecessor set",
            "relations": proj,
        }));
        Ok(json!({ "alphabet": syms, "depth": self.depth(), "families": families }))
    }
}
