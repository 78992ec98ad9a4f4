//! Plain-text instance files.
//!
//! Line 1 is `ECTE1 <B>`; every further non-comment line is
//! `<parent> <child> <weight>` with whitespace-separated tokens. `#` starts a
//! comment, the root is the unique node that never appears as a child, and
//! the file's line order defines the default child order. Weights and the
//! budget are decimal strings or `p/q` rationals and round-trip exactly.

use crate::error::{Error, Result};
use crate::tree::{Instance, InstanceBuilder};
use crate::weight::Weight;

pub const MAGIC: &str = "ECTE1";

pub fn parse(text: &str) -> Result<Instance> {
    let mut lines = text.lines().enumerate();

    let (header_line, header) = loop {
        match lines.next() {
            Some((i, raw)) => {
                let stripped = strip_comment(raw);
                if !stripped.trim().is_empty() {
                    break (i + 1, stripped);
                }
            }
            None => {
                return Err(Error::Parse {
                    line: 1,
                    msg: "missing header".into(),
                })
            }
        }
    };
    let mut toks = header.split_whitespace();
    match toks.next() {
        Some(MAGIC) => {}
        Some(other) => {
            return Err(Error::Parse {
                line: header_line,
                msg: format!("expected `{MAGIC}`, found `{other}`"),
            })
        }
        None => {
            return Err(Error::Parse {
                line: header_line,
                msg: "empty header".into(),
            })
        }
    }
    let budget: Weight = match toks.next() {
        Some(b) => b.parse().map_err(|e| Error::Parse {
            line: header_line,
            msg: format!("bad budget: {e}"),
        })?,
        None => {
            return Err(Error::Parse {
                line: header_line,
                msg: "missing budget".into(),
            })
        }
    };
    if toks.next().is_some() {
        return Err(Error::Parse {
            line: header_line,
            msg: "trailing tokens after budget".into(),
        });
    }

    let mut builder = InstanceBuilder::new(budget);
    let mut saw_edge = false;
    for (i, raw) in lines {
        let line_no = i + 1;
        let stripped = strip_comment(raw);
        let mut toks = stripped.split_whitespace();
        let Some(parent) = toks.next() else { continue };
        let (child, weight) = match (toks.next(), toks.next(), toks.next()) {
            (Some(c), Some(w), None) => (c, w),
            _ => {
                return Err(Error::Parse {
                    line: line_no,
                    msg: "expected `<parent> <child> <weight>`".into(),
                })
            }
        };
        let weight: Weight = weight.parse().map_err(|e| Error::Parse {
            line: line_no,
            msg: format!("{e}"),
        })?;
        if weight.is_zero() {
            return Err(Error::Parse {
                line: line_no,
                msg: "edge weight must be strictly positive".into(),
            });
        }
        builder = builder.edge(parent, child, weight);
        saw_edge = true;
    }
    if !saw_edge {
        return Err(Error::Parse {
            line: header_line,
            msg: "no edges".into(),
        });
    }
    builder.build()
}

/// Canonical form: header, then one edge line per edge in preorder, children
/// in stored order, no comments.
pub fn serialize(instance: &Instance) -> String {
    let mut out = format!("{MAGIC} {}\n", instance.budget());
    for v in instance.preorder() {
        for &c in instance.children(v) {
            out.push_str(&format!(
                "{} {} {}\n",
                instance.name(v),
                instance.name(c),
                instance.parent_edge_weight(c)
            ));
        }
    }
    out
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}
