use std::io::Write;
use std::path::Path;

use crate::corpus::UserId;
use crate::error::{Error, Result};

/// A named set of users, e.g. hand-labelled profiles.
///
/// File format: a `label: <name>` header, then one user id per line. Blank
/// lines and `#` comments are ignored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelFile {
    pub name: String,
    pub ids: Vec<UserId>,
}

pub fn load_label_file(path: impl AsRef<Path>) -> Result<LabelFile> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_label_file(&text, path)
}

pub fn parse_label_file(text: &str, origin: &Path) -> Result<LabelFile> {
    let mut name = None;
    let mut ids = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if name.is_none() {
            let value = line
                .strip_prefix("label:")
                .ok_or_else(|| Error::parse(origin, idx + 1, "expected `label: <name>` header"))?
                .trim();
            if value.is_empty() {
                return Err(Error::parse(origin, idx + 1, "empty label name"));
            }
            name = Some(value.to_owned());
            continue;
        }
        let id = UserId::try_from(line.to_owned()).map_err(|m| Error::parse(origin, idx + 1, m))?;
        if !ids.contains(&id) {
            ids.push(id);
        }
    }
    let name = name.ok_or_else(|| Error::parse(origin, 1, "missing `label: <name>` header"))?;
    Ok(LabelFile { name, ids })
}

pub fn write_label_file(lf: &LabelFile, mut writer: impl Write) -> Result<()> {
    let io = |e| Error::io("<labels>", e);
    writeln!(writer, "label: {}", lf.name).map_err(io)?;
    for id in &lf.ids {
        writeln!(writer, "{id}").map_err(io)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_write() {
        let lf =
            parse_label_file("label: cutting\n\nu1\n# note\nu2\nu1\n", Path::new("l.txt")).unwrap();
        assert_eq!(lf.name, "cutting");
        assert_eq!(lf.ids, [UserId::new("u1"), UserId::new("u2")]);
        let mut out = Vec::new();
        write_label_file(&lf, &mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "label: cutting\nu1\nu2\n");
    }

    #[test]
    fn header_required() {
        assert!(parse_label_file("u1\nu2\n", Path::new("l.txt")).is_err());
        assert!(parse_label_file("", Path::new("l.txt")).is_err());
    }
}
