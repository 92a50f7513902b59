//! A small `{{ ... }}` substitution engine.
//!
//! Supported expressions are `{{var}}` and single-level subscripts
//! `{{var['key']}}`, `{{var["key"]}}` or `{{var[key]}}`. Unbound variables
//! and missing keys render as the empty string.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Piece<'a> {
    Text(&'a str),
    Var { name: &'a str, key: Option<&'a str> },
}

pub(crate) fn parse(template: &str) -> Result<Vec<Piece<'_>>> {
    let mut pieces = Vec::new();
    let mut rest = template;
    let mut offset = 0;
    while !rest.is_empty() {
        let open = rest.find("{{");
        let close = rest.find("}}");
        match (open, close) {
            (None, None) => {
                pieces.push(Piece::Text(rest));
                break;
            }
            (_, Some(c)) if open.is_none_or(|o| c < o) => {
                return Err(Error::Template(format!(
                    "`}}}}` without matching `{{{{` at byte {} of {template:?}",
                    offset + c
                )));
            }
            (Some(o), _) => {
                if o > 0 {
                    pieces.push(Piece::Text(&rest[..o]));
                }
                let inner_start = o + 2;
                let Some(len) = rest[inner_start..].find("}}") else {
                    return Err(Error::Template(format!(
                        "unclosed `{{{{` at byte {} of {template:?}",
                        offset + o
                    )));
                };
                let expr = &rest[inner_start..inner_start + len];
                if expr.contains("{{") {
                    return Err(Error::Template(format!(
                        "nested `{{{{` at byte {} of {template:?}",
                        offset + o
                    )));
                }
                pieces.push(expression(expr)?);
                let consumed = inner_start + len + 2;
                rest = &rest[consumed..];
                offset += consumed;
            }
            (None, Some(_)) => unreachable!(),
        }
    }
    Ok(pieces)
}

fn expression(expr: &str) -> Result<Piece<'_>> {
    let bad = |why: &str| Error::Template(format!("{why} in `{{{{{expr}}}}}`"));
    let trimmed = expr.trim();
    let (name, key) = match trimmed.find('[') {
        None => (trimmed, None),
        Some(i) => {
            let sub = trimmed[i + 1..]
                .strip_suffix(']')
                .ok_or_else(|| bad("malformed subscript"))?
                .trim();
            let key = match sub.chars().next() {
                Some(q @ ('\'' | '"')) => sub
                    .strip_prefix(q)
                    .and_then(|s| s.strip_suffix(q))
                    .filter(|k| !k.contains(q))
                    .ok_or_else(|| bad("malformed subscript"))?,
                Some(_)
                    if sub
                        .chars()
                        .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-') =>
                {
                    sub
                }
                _ => return Err(bad("malformed subscript")),
            };
            (trimmed[..i].trim_end(), Some(key))
        }
    };
    if name.is_empty()
        || name
            .chars()
            .any(|c| c.is_whitespace() || "[]{}".contains(c))
    {
        return Err(bad("bad variable name"));
    }
    Ok(Piece::Var { name, key })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pieces() {
        assert_eq!(
            parse("ID: {{ id }}!").unwrap(),
            vec![
                Piece::Text("ID: "),
                Piece::Var {
                    name: "id",
                    key: None
                },
                Piece::Text("!"),
            ]
        );
        assert_eq!(
            parse("{{name['first']}}{{v[\"x y\"]}}{{o[4]}}").unwrap(),
            vec![
                Piece::Var {
                    name: "name",
                    key: Some("first")
                },
                Piece::Var {
                    name: "v",
                    key: Some("x y")
                },
                Piece::Var {
                    name: "o",
                    key: Some("4")
                },
            ]
        );
    }

    #[test]
    fn malformed() {
        for t in [
            "{{a",
            "a}}",
            "{{}}",
            "{{a['x}}",
            "{{a[}}",
            "{{a['x']}}}}",
            "{{a b}}",
            "{{a[x y]}}",
            "{{ {{a}} }}",
        ] {
            assert!(matches!(parse(t), Err(Error::Template(_))), "{t}");
        }
    }
}
