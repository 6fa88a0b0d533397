use serde::Serialize;

use crate::closure::{ClosureSet, Status, TagClosure};
use crate::model::Theory;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Serialize)]
struct TagRecord {
    tag: &'static str,
    plus: Vec<String>,
    minus: Vec<String>,
    undecided: Vec<String>,
}

fn record(theory: &Theory, c: &TagClosure) -> TagRecord {
    let names = |it: &mut dyn Iterator<Item = crate::model::Literal>| -> Vec<String> {
        it.map(|l| theory.literal_name(l)).collect()
    };
    TagRecord {
        tag: c.tag().name(),
        plus: names(&mut c.positives()),
        minus: names(&mut c.negatives()),
        undecided: names(&mut c.undecided_literals()),
    }
}

/// Text: one `+tag lit` / `-tag lit` line per decided literal, sorted by tag
/// then literal id, with `?tag lit` lines for undecided literals when asked.
/// JSON: one object per tag with `plus`, `minus` and `undecided` name lists;
/// a bare object for a single tag, an array otherwise.
pub fn emit_conclusions(
    theory: &Theory,
    closures: &ClosureSet,
    format: Format,
    undecided: bool,
) -> String {
    match format {
        Format::Text => {
            let mut out = String::new();
            for c in closures.iter() {
                for (i, status) in c.statuses().iter().enumerate() {
                    let mark = match status {
                        Status::Plus => '+',
                        Status::Minus => '-',
                        Status::Undecided if undecided => '?',
                        Status::Undecided => continue,
                    };
                    let lit = crate::model::Literal::from_index(i);
                    out.push_str(&format!("{mark}{} {}\n", c.tag(), theory.literal_name(lit)));
                }
            }
            out
        }
        Format::Json => {
            let records: Vec<TagRecord> = closures.iter().map(|c| record(theory, c)).collect();
            let value = if records.len() == 1 {
                serde_json::to_value(&records[0])
            } else {
                serde_json::to_value(&records)
            };
            let mut s = serde_json::to_string_pretty(&value.expect("records serialize"))
                .expect("values serialize");
            s.push('\n');
            s
        }
    }
}
