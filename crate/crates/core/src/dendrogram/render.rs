use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Dendrogram, DendrogramError, Ultrametric};
use crate::partition::Partition;

/// JSON form: `{"labels": [...], "levels": [{"t": h, "blocks": [[...]]}]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DendrogramDoc {
    pub labels: Vec<String>,
    pub levels: Vec<LevelDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelDoc {
    pub t: f64,
    pub blocks: Vec<Vec<String>>,
}

impl Dendrogram {
    pub fn to_doc(&self) -> DendrogramDoc {
        DendrogramDoc {
            labels: self.labels().to_vec(),
            levels: self
                .labeled_levels()
                .into_iter()
                .map(|(t, blocks)| LevelDoc { t, blocks })
                .collect(),
        }
    }

    /// Rebuilds and validates a dendrogram from its document.
    pub fn from_doc(doc: &DendrogramDoc) -> Result<Self, DendrogramError> {
        let mut index = HashMap::new();
        for (i, l) in doc.labels.iter().enumerate() {
            if index.insert(l.as_str(), i).is_some() {
                return Err(DendrogramError::DuplicateLabel(l.clone()));
            }
        }
        let mut levels = Vec::with_capacity(doc.levels.len());
        for level in &doc.levels {
            let blocks = level
                .blocks
                .iter()
                .map(|b| {
                    b.iter()
                        .map(|l| {
                            index
                                .get(l.as_str())
                                .copied()
                                .ok_or_else(|| DendrogramError::UnknownLabel(l.clone()))
                        })
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            levels.push((level.t, Partition::from_blocks(blocks)));
        }
        Self::new(doc.labels.clone(), levels)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("dendrogram documents serialize")
    }

    /// Newick tree. A node merged at height `h` below a parent merged at `H`
    /// gets branch length `(H - h) / 2` (leaves sit at height 0), so leaf to
    /// leaf path lengths equal merge heights. Children are ordered by their
    /// least label.
    pub fn to_newick(&self) -> String {
        enum Node {
            Leaf(usize),
            Inner(f64, Vec<usize>),
        }
        let n = self.len();
        let mut nodes: Vec<Node> = (0..n).map(Node::Leaf).collect();
        let mut height = vec![0.0; n];
        let mut min_label: Vec<&str> = self.labels().iter().map(String::as_str).collect();
        // node currently representing each point's block
        let mut top: Vec<usize> = (0..n).collect();
        for level in self.levels().iter().skip(1) {
            for b in level.partition.blocks() {
                let mut kids: Vec<usize> = b.iter().map(|&p| top[p]).collect();
                kids.sort_unstable();
                kids.dedup();
                if kids.len() < 2 {
                    continue;
                }
                kids.sort_by(|&x, &y| min_label[x].cmp(min_label[y]));
                let id = nodes.len();
                let least = kids.iter().map(|&k| min_label[k]).min().unwrap();
                min_label.push(least);
                height.push(level.height);
                nodes.push(Node::Inner(level.height, kids));
                for &p in b {
                    top[p] = id;
                }
            }
        }

        fn emit(
            id: usize,
            parent_height: f64,
            nodes: &[Node],
            height: &[f64],
            labels: &[String],
            out: &mut String,
        ) {
            match &nodes[id] {
                Node::Leaf(p) => out.push_str(&quote(&labels[*p])),
                Node::Inner(h, kids) => {
                    out.push('(');
                    for (i, &k) in kids.iter().enumerate() {
                        if i > 0 {
                            out.push(',');
                        }
                        emit(k, *h, nodes, height, labels, out);
                    }
                    out.push(')');
                }
            }
            let _ = write!(out, ":{}", fmt_num((parent_height - height[id]) / 2.0));
        }

        let root = top.first().copied().unwrap_or(0);
        let mut out = String::new();
        if n > 0 {
            emit(root, height[root], &nodes, &height, self.labels(), &mut out);
        }
        out.push(';');
        out
    }

    /// One line per stored level, heights right-aligned, blocks as
    /// `{a,b}` in lexicographic order.
    pub fn render_text(&self) -> String {
        let rows: Vec<(String, String)> = self
            .labeled_levels()
            .into_iter()
            .map(|(t, blocks)| {
                let body = blocks
                    .iter()
                    .map(|b| format!("{{{}}}", b.join(",")))
                    .collect::<Vec<_>>()
                    .join(" ");
                (fmt_num(t), body)
            })
            .collect();
        let width = rows.iter().map(|r| r.0.len()).max().unwrap_or(0).max(1);
        let mut out = String::new();
        for (t, body) in rows {
            let _ = writeln!(out, "{t:>width$}  {body}");
        }
        out
    }
}

impl Ultrametric {
    /// Square CSV with a label header row and column.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec![String::new()];
        header.extend(self.labels().iter().cloned());
        w.write_record(&header).expect("in-memory csv");
        for (i, row) in self.rows().into_iter().enumerate() {
            let mut rec = vec![self.labels()[i].clone()];
            rec.extend(row.into_iter().map(fmt_num));
            w.write_record(&rec).expect("in-memory csv");
        }
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 csv")
    }
}

/// Shortest decimal that reads back to the same value.
pub(crate) fn fmt_num(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x}")
}

fn quote(label: &str) -> String {
    let plain = !label.is_empty()
        && !label
            .chars()
            .any(|c| c.is_whitespace() || "()[]':;,".contains(c));
    if plain {
        label.to_string()
    } else {
        format!("'{}'", label.replace('\'', "''"))
    }
}
