//! Burmeister `.cxt` files.
//!
//! ```text
//! B
//! <name, optional>
//! <object count>
//! <attribute count>
//!
//! <object names, one per line>
//! <attribute names, one per line>
//! <one row of X and . per object>
//! ```

use crate::context::FormalContext;
use crate::error::{Error, Result};
use crate::sets::AttrSet;

/// A parsed file: the context plus the name line, if there was one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CxtFile {
    pub name: Option<String>,
    pub context: FormalContext,
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

pub fn read_cxt(text: &str) -> Result<CxtFile> {
    let lines: Vec<&str> = text
        .lines()
        .map(|l| l.strip_suffix('\r').unwrap_or(l))
        .collect();
    let at = |i: usize| {
        lines
            .get(i)
            .copied()
            .ok_or_else(|| err(i + 1, "unexpected end of file"))
    };
    if at(0)?.trim() != "B" {
        return Err(err(1, "expected `B`"));
    }
    let num = |s: &str| s.trim().parse::<usize>().ok();
    // without a name line the third line is already the blank separator
    let has_name = !(num(at(1)?).is_some() && num(at(2)?).is_some() && at(3)?.trim().is_empty());
    let mut i = 1;
    let name = if has_name {
        i += 1;
        Some(at(1)?.to_string())
    } else {
        None
    };
    let n_obj = num(at(i)?).ok_or_else(|| err(i + 1, "expected object count"))?;
    let n_att = num(at(i + 1)?).ok_or_else(|| err(i + 2, "expected attribute count"))?;
    i += 2;
    if !at(i)?.trim().is_empty() {
        return Err(err(i + 1, "expected a blank line"));
    }
    i += 1;
    let mut objects = Vec::with_capacity(n_obj);
    for _ in 0..n_obj {
        objects.push(at(i)?.to_string());
        i += 1;
    }
    let mut attributes = Vec::with_capacity(n_att);
    for _ in 0..n_att {
        attributes.push(at(i)?.to_string());
        i += 1;
    }
    let mut rows = Vec::with_capacity(n_obj);
    for _ in 0..n_obj {
        let line = at(i)?;
        if line.chars().count() != n_att {
            return Err(err(
                i + 1,
                format!("expected {n_att} cells, found {}", line.chars().count()),
            ));
        }
        let mut row = AttrSet::EMPTY;
        for (j, c) in line.chars().enumerate() {
            match c {
                'X' | 'x' => row = row.with(j),
                '.' => {}
                other => return Err(err(i + 1, format!("unexpected cell `{other}`"))),
            }
        }
        rows.push(row);
        i += 1;
    }
    if lines[i..].iter().any(|l| !l.trim().is_empty()) {
        return Err(err(i + 1, "trailing content after incidence rows"));
    }
    let context = FormalContext::from_rows(objects, attributes, rows)?;
    Ok(CxtFile { name, context })
}

/// Writes the format with LF line endings and a trailing newline.
pub fn write_cxt(file: &CxtFile) -> String {
    let c = &file.context;
    let mut out = String::from("B\n");
    if let Some(n) = &file.name {
        out.push_str(n);
        out.push('\n');
    }
    out.push_str(&format!("{}\n{}\n\n", c.num_objects(), c.num_attributes()));
    for o in c.objects() {
        out.push_str(o);
        out.push('\n');
    }
    for a in c.attributes() {
        out.push_str(a);
        out.push('\n');
    }
    for row in c.rows() {
        for j in 0..c.num_attributes() {
            out.push(if row.contains(j) { 'X' } else { '.' });
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::example_c0;

    const C0: &str = "B\n\n3\n3\n\no1\no2\no3\nm1\nm2\nm3\nX..\nXX.\n.XX\n";

    #[test]
    fn reads_c0() {
        let f = read_cxt(C0).unwrap();
        assert_eq!(f.name.as_deref(), Some(""));
        assert_eq!(f.context, example_c0());
        assert_eq!(write_cxt(&f), C0);
    }

    #[test]
    fn without_name_line() {
        let text = "B\n3\n3\n\no1\no2\no3\nm1\nm2\nm3\nX..\nXX.\n.XX\n";
        let f = read_cxt(text).unwrap();
        assert_eq!(f.name, None);
        assert_eq!(write_cxt(&f), text);
    }

    #[test]
    fn crlf_accepted() {
        let f = read_cxt(&C0.replace('\n', "\r\n")).unwrap();
        assert_eq!(f.context, example_c0());
    }

    #[test]
    fn bad_cell() {
        let text = C0.replace("XX.", "XY.");
        assert!(matches!(
            read_cxt(&text),
            Err(Error::Parse { line: 13, .. })
        ));
    }

    #[test]
    fn short_row() {
        let text = C0.replace(".XX", ".X");
        assert!(matches!(read_cxt(&text), Err(Error::Parse { .. })));
    }
}
