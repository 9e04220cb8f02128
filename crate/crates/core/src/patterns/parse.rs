use std::fmt::Write as _;

use super::{
    check_unique, KindSelector, MicroPattern, PatternDefinition, PatternError, RelationConstraint, RelationKind,
    UndesiredChange, UndesiredScope,
};
use crate::diff::ChangeType;
use crate::syntax::EntityKind;

fn squash(s: &str) -> String {
    s.chars()
        .filter(|c| *c != '_' && *c != ' ')
        .flat_map(char::to_lowercase)
        .collect()
}

/// SCREAMING_SNAKE form of a CamelCase name.
fn screaming(camel: &str) -> String {
    let mut out = String::new();
    for (i, c) in camel.chars().enumerate() {
        if c.is_ascii_uppercase() && i > 0 {
            out.push('_');
        }
        out.push(c.to_ascii_uppercase());
    }
    out
}

pub(crate) fn change_type_token(ct: ChangeType) -> String {
    screaming(&format!("{ct:?}"))
}

pub(crate) fn entity_token(k: EntityKind) -> String {
    k.display_name().to_ascii_uppercase().replace(' ', "_")
}

fn parse_change_type(tok: &str, line: usize) -> Result<ChangeType, PatternError> {
    let key = squash(tok);
    ChangeType::ALL
        .into_iter()
        .find(|ct| squash(&format!("{ct:?}")) == key || squash(ct.display_name()) == key)
        .ok_or_else(|| syntax(line, format!("unknown change type `{tok}`")))
}

fn parse_entity(tok: &str, line: usize) -> Result<EntityKind, PatternError> {
    let key = squash(tok);
    EntityKind::ALL
        .into_iter()
        .find(|k| squash(&format!("{k:?}")) == key || squash(k.display_name()) == key)
        .ok_or_else(|| syntax(line, format!("unknown entity kind `{tok}`")))
}

fn parse_selector(tok: &str, line: usize) -> Result<KindSelector, PatternError> {
    if tok == "*" {
        return Ok(KindSelector::Any);
    }
    let kinds = tok
        .split('|')
        .map(|t| parse_entity(t, line))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(match kinds.as_slice() {
        [k] => KindSelector::Kind(*k),
        _ => KindSelector::OneOf(kinds),
    })
}

fn syntax(line: usize, message: impl Into<String>) -> PatternError {
    PatternError::Syntax {
        line,
        message: message.into(),
    }
}

fn parse_index(tok: Option<&&str>, line: usize) -> Result<usize, PatternError> {
    let tok = tok.ok_or_else(|| syntax(line, "missing index"))?;
    tok.parse().map_err(|_| syntax(line, format!("bad index `{tok}`")))
}

fn parse_triple(words: &[&str], line: usize, id: &str) -> Result<MicroPattern, PatternError> {
    let [ct, et, pt] = words else {
        return Err(syntax(line, "expected <change type> <entity> <parent>"));
    };
    if *ct == "*" {
        return Err(PatternError::Validation {
            id: id.to_string(),
            message: format!("line {line}: change type cannot be a wildcard"),
        });
    }
    Ok(MicroPattern::new(
        parse_change_type(ct, line)?,
        parse_selector(et, line)?,
        parse_selector(pt, line)?,
    ))
}

/// Parses a pattern file. Keywords and kind names are case-insensitive,
/// lines starting with `#` are comments.
pub fn parse_pattern_file(text: &str) -> Result<Vec<PatternDefinition>, PatternError> {
    let mut defs = Vec::new();
    let mut open: Option<(PatternDefinition, bool)> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let words: Vec<&str> = trimmed.split_whitespace().collect();
        let keyword = words[0].to_ascii_lowercase();
        if keyword == "pattern" {
            if open.is_some() {
                return Err(syntax(line, "`pattern` inside an unfinished pattern"));
            }
            let id = *words.get(1).ok_or_else(|| syntax(line, "missing pattern id"))?;
            let rest = trimmed["pattern".len()..].trim_start()[id.len()..].trim();
            let name = match (rest.find('"'), rest.rfind('"')) {
                (Some(a), Some(b)) if a == 0 && b == rest.len() - 1 && b > a => rest[1..b].to_string(),
                _ if rest.is_empty() => id.to_string(),
                _ => return Err(syntax(line, "pattern name must be quoted")),
            };
            open = Some((
                PatternDefinition {
                    id: id.to_string(),
                    name,
                    changes: Vec::new(),
                    relations: Vec::new(),
                    undesired: Vec::new(),
                },
                false,
            ));
            continue;
        }
        let Some((def, saw_none)) = open.as_mut() else {
            return Err(syntax(line, format!("`{}` outside a pattern", words[0])));
        };
        match keyword.as_str() {
            "change" => def.changes.push(parse_triple(&words[1..], line, &def.id)?),
            "relation" => {
                let kind = match words.get(1).map(|w| w.to_ascii_lowercase()).as_deref() {
                    Some("parent_of") => RelationKind::ParentOf,
                    Some("same_parent") => RelationKind::SameParent,
                    _ => return Err(syntax(line, "expected parent_of or same_parent")),
                };
                if words.len() != 4 {
                    return Err(syntax(line, "expected two indices"));
                }
                def.relations.push(RelationConstraint {
                    kind,
                    subject: parse_index(words.get(2), line)?,
                    object: parse_index(words.get(3), line)?,
                });
            }
            "undesired" => {
                if words.len() == 2 && words[1].eq_ignore_ascii_case("none") {
                    *saw_none = true;
                    continue;
                }
                let (triple, scope) = match words.len() {
                    4 => (&words[1..4], UndesiredScope::Hunk),
                    6 => {
                        let idx = parse_index(words.get(5), line)?;
                        let scope = match words[4].to_ascii_lowercase().as_str() {
                            "scoped" => UndesiredScope::ParentOf(idx),
                            "within" => UndesiredScope::Within(idx),
                            other => return Err(syntax(line, format!("unknown scope `{other}`"))),
                        };
                        (&words[1..4], scope)
                    }
                    _ => return Err(syntax(line, "expected `none` or a change triple")),
                };
                def.undesired.push(UndesiredChange {
                    pattern: parse_triple(triple, line, &def.id)?,
                    scope,
                });
            }
            "end" => {
                let (def, saw_none) = open.take().expect("checked above");
                if saw_none && !def.undesired.is_empty() {
                    return Err(syntax(line, "`undesired none` combined with undesired changes"));
                }
                def.validate()?;
                defs.push(def);
            }
            _ => return Err(syntax(line, format!("unknown keyword `{}`", words[0]))),
        }
    }
    if let Some((def, _)) = open {
        return Err(syntax(text.lines().count(), format!("pattern {} is missing `end`", def.id)));
    }
    check_unique(&defs)?;
    Ok(defs)
}

fn selector_token(s: &KindSelector) -> String {
    match s {
        KindSelector::Any => "*".into(),
        KindSelector::Kind(k) => entity_token(*k),
        KindSelector::OneOf(ks) => ks.iter().map(|k| entity_token(*k)).collect::<Vec<_>>().join("|"),
    }
}

fn triple(mp: &MicroPattern) -> String {
    format!(
        "{} {} {}",
        change_type_token(mp.ct),
        selector_token(&mp.et),
        selector_token(&mp.pt)
    )
}

pub fn serialize_patterns(defs: &[PatternDefinition]) -> String {
    let mut out = String::new();
    for (i, d) in defs.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let _ = writeln!(out, "pattern {} \"{}\"", d.id, d.name);
        for c in &d.changes {
            let _ = writeln!(out, "  change {}", triple(c));
        }
        for r in &d.relations {
            let kind = match r.kind {
                RelationKind::ParentOf => "parent_of",
                RelationKind::SameParent => "same_parent",
            };
            let _ = writeln!(out, "  relation {kind} {} {}", r.subject, r.object);
        }
        if d.undesired.is_empty() {
            out.push_str("  undesired none\n");
        }
        for u in &d.undesired {
            let scope = match u.scope {
                UndesiredScope::Hunk => String::new(),
                UndesiredScope::ParentOf(i) => format!(" scoped {i}"),
                UndesiredScope::Within(i) => format!(" within {i}"),
            };
            let _ = writeln!(out, "  undesired {}{scope}", triple(&u.pattern));
        }
        out.push_str("end\n");
    }
    out
}
