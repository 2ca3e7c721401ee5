//! Line-oriented textual format for nets, deterministic renderers, and
//! witness handling.
//!
//! ```text
//! net nu example
//! place p1
//! trans t
//! arc p1 -> t x y
//! arc t -> p1 x nu
//! marking p1 = {a:2, b:1}
//! ```
//!
//! Kinds are `nu`, `pt`, `inhibitor` and `reset`. Arc tokens are variable
//! identifiers for `nu` nets (`nu`, `nu1`, ... are the fresh variables,
//! repetition expresses multiplicity), a repeated weight token for `pt`
//! nets, and must be absent for `inhibitor`/`reset` nets, whose special
//! arcs are written `inhibit p -> t` and `reset p -> t`. Markings use
//! `{name:count, ...}` with `.` for the ordinary token; non-`nu` kinds
//! allow only `.`. `#` starts a comment; the comment block before the `net`
//! line is kept as document metadata.
//!
//! Parsing assigns name and variable ids canonically (sorted strings), so
//! parse-render round trips are the identity on parsed documents.

use crate::cover::{CoverResult, CoverVerdict};
use crate::forward::{AnalysisResult, Measure, Verdict};
use crate::net::{
    embed_pt, ArcLabel, Marking, Mode, NameId, NuNet, Place, PtNet, Transition, VarKind, Variable,
};
use crate::reduce::{inhibitor_to_nu, reset_to_nu, InhibitorNet, ResetNet};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NetKind {
    Nu,
    Pt,
    Inhibitor,
    Reset,
}

impl NetKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            NetKind::Nu => "nu",
            NetKind::Pt => "pt",
            NetKind::Inhibitor => "inhibitor",
            NetKind::Reset => "reset",
        }
    }
}

/// Kind-specific net structure plus its initial marking.
#[derive(Clone, PartialEq, Debug)]
pub enum Payload {
    Nu { net: NuNet, initial: Marking },
    Pt { net: PtNet, initial: Vec<u32> },
    Inhibitor { net: InhibitorNet, initial: Vec<u32> },
    Reset { net: ResetNet, initial: Vec<u32> },
}

/// A parsed net file: structure, initial marking, and naming tables.
#[derive(Clone, PartialEq, Debug)]
pub struct NetDocument {
    pub kind: NetKind,
    pub name: String,
    /// Comment block preceding the `net` line, without the `#` markers.
    pub comments: Vec<String>,
    pub payload: Payload,
    /// Name strings; index `k` holds the string for `NameId(k + 1)`.
    pub names: Vec<String>,
    /// Variable strings for rendering arc labels and witnesses.
    pub vars: Vec<(String, Variable)>,
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
#[error("line {line}, col {col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

fn err<T>(line: usize, col: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        col,
        message: message.into(),
    })
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// `nu` and `nu<digits>` are the fresh-variable tokens.
fn fresh_var_of(token: &str) -> Option<Variable> {
    let rest = token.strip_prefix("nu")?;
    if rest.is_empty() {
        return Some(Variable::fresh(0));
    }
    if rest.chars().all(|c| c.is_ascii_digit()) {
        rest.parse::<u32>().ok().map(Variable::fresh)
    } else {
        None
    }
}

struct Line<'a> {
    number: usize,
    tokens: Vec<(usize, &'a str)>,
}

/// Splits into significant lines, stripping comments. Returns the leading
/// comment block separately.
fn tokenize(input: &str) -> (Vec<String>, Vec<Line<'_>>) {
    let mut comments = Vec::new();
    let mut lines = Vec::new();
    let mut seen_code = false;
    for (idx, raw) in input.lines().enumerate() {
        let code = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let mut tokens = Vec::new();
        let mut offset = 0;
        for piece in code.split_whitespace() {
            let found = code[offset..].find(piece).expect("piece comes from code") + offset;
            tokens.push((found + 1, piece));
            offset = found + piece.len();
        }
        if tokens.is_empty() {
            if !seen_code {
                if let Some(pos) = raw.find('#') {
                    comments.push(raw[pos + 1..].trim().to_string());
                }
            }
            continue;
        }
        seen_code = true;
        lines.push(Line {
            number: idx + 1,
            tokens,
        });
    }
    (comments, lines)
}

enum Stmt {
    Place(String),
    Trans(String),
    Arc {
        from: String,
        to: String,
        tokens: Vec<String>,
        from_col: usize,
    },
    Special {
        keyword: &'static str,
        place: String,
        trans: String,
    },
    Marking {
        place: String,
        entries: Vec<(String, u32)>,
    },
}

/// Parses a document from text. Errors carry line and column.
pub fn parse(input: &str) -> Result<NetDocument, ParseError> {
    let (comments, lines) = tokenize(input);
    let mut iter = lines.into_iter();
    let header = match iter.next() {
        Some(l) => l,
        None => return err(1, 1, "empty document: expected `net <kind> <name>`"),
    };
    if header.tokens[0].1 != "net" || header.tokens.len() != 3 {
        return err(
            header.number,
            header.tokens[0].0,
            "expected `net <kind> <name>`",
        );
    }
    let kind = match header.tokens[1].1 {
        "nu" => NetKind::Nu,
        "pt" => NetKind::Pt,
        "inhibitor" => NetKind::Inhibitor,
        "reset" => NetKind::Reset,
        other => {
            return err(
                header.number,
                header.tokens[1].0,
                format!("unknown net kind `{other}` (expected nu, pt, inhibitor or reset)"),
            )
        }
    };
    let doc_name = header.tokens[2].1.to_string();
    if !is_identifier(&doc_name) {
        return err(header.number, header.tokens[2].0, "net name must be an identifier");
    }

    // first pass: syntactic statements
    let mut stmts: Vec<(usize, usize, Stmt)> = Vec::new();
    for line in iter {
        let (col0, keyword) = line.tokens[0];
        let n = line.number;
        match keyword {
            "place" | "trans" => {
                if line.tokens.len() != 2 {
                    return err(n, col0, format!("expected `{keyword} <id>`"));
                }
                let (col, id) = line.tokens[1];
                if !is_identifier(id) {
                    return err(n, col, format!("`{id}` is not a valid identifier"));
                }
                let stmt = if keyword == "place" {
                    Stmt::Place(id.to_string())
                } else {
                    Stmt::Trans(id.to_string())
                };
                stmts.push((n, col, stmt));
            }
            "arc" => {
                if line.tokens.len() < 4 || line.tokens[2].1 != "->" {
                    return err(n, col0, "expected `arc <from> -> <to> [tokens...]`");
                }
                let (fcol, from) = line.tokens[1];
                let (_, to) = line.tokens[3];
                let mut tokens = Vec::new();
                for &(col, tok) in &line.tokens[4..] {
                    if !is_identifier(tok) {
                        return err(n, col, format!("`{tok}` is not a valid identifier"));
                    }
                    tokens.push(tok.to_string());
                }
                stmts.push((
                    n,
                    col0,
                    Stmt::Arc {
                        from: from.to_string(),
                        to: to.to_string(),
                        tokens,
                        from_col: fcol,
                    },
                ));
            }
            "inhibit" | "reset" => {
                if line.tokens.len() != 4 || line.tokens[2].1 != "->" {
                    return err(n, col0, format!("expected `{keyword} <place> -> <trans>`"));
                }
                let kw: &'static str = if keyword == "inhibit" { "inhibit" } else { "reset" };
                stmts.push((
                    n,
                    col0,
                    Stmt::Special {
                        keyword: kw,
                        place: line.tokens[1].1.to_string(),
                        trans: line.tokens[3].1.to_string(),
                    },
                ));
            }
            "marking" => {
                if line.tokens.len() < 3 || line.tokens[2].1 != "=" {
                    return err(n, col0, "expected `marking <place> = {name:count, ...}`");
                }
                let (col, place) = line.tokens[1];
                let body: String = line.tokens[3..]
                    .iter()
                    .map(|&(_, t)| t)
                    .collect::<Vec<_>>()
                    .join(" ");
                let body = body.trim().to_string();
                let inner = body
                    .strip_prefix('{')
                    .and_then(|s| s.strip_suffix('}'))
                    .ok_or(ParseError {
                        line: n,
                        col: col0,
                        message: "marking body must be enclosed in braces".into(),
                    })?;
                let mut entries = Vec::new();
                for piece in inner.split(',') {
                    let piece = piece.trim();
                    if piece.is_empty() {
                        continue;
                    }
                    let (name, count) = piece.split_once(':').ok_or(ParseError {
                        line: n,
                        col: col0,
                        message: format!("expected `name:count`, got `{piece}`"),
                    })?;
                    let name = name.trim();
                    let count = count.trim();
                    if name != "." && !is_identifier(name) {
                        return err(n, col0, format!("`{name}` is not a valid token name"));
                    }
                    let count: u32 = count.parse().map_err(|_| ParseError {
                        line: n,
                        col: col0,
                        message: format!("`{count}` is not a valid count"),
                    })?;
                    if count == 0 {
                        return err(n, col0, "token counts must be positive");
                    }
                    entries.push((name.to_string(), count));
                }
                stmts.push((
                    n,
                    col,
                    Stmt::Marking {
                        place: place.to_string(),
                        entries,
                    },
                ));
            }
            other => {
                return err(n, col0, format!("unknown directive `{other}`"));
            }
        }
    }

    // second pass: declarations, then references
    let mut place_names: Vec<String> = Vec::new();
    let mut trans_names: Vec<String> = Vec::new();
    for (n, col, stmt) in &stmts {
        match stmt {
            Stmt::Place(id) => {
                if place_names.contains(id) || trans_names.contains(id) {
                    return err(*n, *col, format!("duplicate declaration of `{id}`"));
                }
                place_names.push(id.clone());
            }
            Stmt::Trans(id) => {
                if place_names.contains(id) || trans_names.contains(id) {
                    return err(*n, *col, format!("duplicate declaration of `{id}`"));
                }
                trans_names.push(id.clone());
            }
            _ => {}
        }
    }
    let place_of = |id: &str| place_names.iter().position(|p| p == id);
    let trans_of = |id: &str| trans_names.iter().position(|t| t == id);

    // canonical tables for nu documents
    let mut name_strings: Vec<String> = Vec::new();
    let mut plain_strings: Vec<String> = Vec::new();
    if kind == NetKind::Nu {
        for (_, _, stmt) in &stmts {
            match stmt {
                Stmt::Arc { tokens, .. } => {
                    for tok in tokens {
                        if fresh_var_of(tok).is_none() && !plain_strings.contains(tok) {
                            plain_strings.push(tok.clone());
                        }
                    }
                }
                Stmt::Marking { entries, .. } => {
                    for (name, _) in entries {
                        if name != "." && !name_strings.contains(name) {
                            name_strings.push(name.clone());
                        }
                    }
                }
                _ => {}
            }
        }
        name_strings.sort();
        plain_strings.sort();
    }
    let name_id = |s: &str| -> NameId {
        if s == "." {
            NameId::DOT
        } else {
            NameId(name_strings.iter().position(|n| n == s).expect("collected") as u64 + 1)
        }
    };
    let var_of = |s: &str| -> Variable {
        fresh_var_of(s).unwrap_or_else(|| {
            Variable::plain(plain_strings.iter().position(|v| v == s).expect("collected") as u32)
        })
    };

    // third pass: build the payload
    let payload = match kind {
        NetKind::Nu => {
            let mut net = NuNet::new();
            for p in &place_names {
                net.add_place(p.clone());
            }
            for t in &trans_names {
                net.add_transition(t.clone());
            }
            let mut initial = Marking::for_net(&net);
            let mut marked = vec![false; place_names.len()];
            for (n, col, stmt) in &stmts {
                match stmt {
                    Stmt::Arc {
                        from,
                        to,
                        tokens,
                        from_col,
                    } => {
                        let label: ArcLabel = tokens.iter().map(|t| var_of(t)).collect();
                        match (place_of(from), trans_of(to), trans_of(from), place_of(to)) {
                            (Some(p), Some(t), _, _) => {
                                if let Some(v) = label.support().find(|v| v.is_fresh()) {
                                    return err(
                                        *n,
                                        *from_col,
                                        format!(
                                            "fresh variable on input arc `{from} -> {to}` ({v})"
                                        ),
                                    );
                                }
                                net.set_pre(Place(p), Transition(t), label);
                            }
                            (_, _, Some(t), Some(p)) => {
                                net.set_post(Transition(t), Place(p), label);
                            }
                            _ => {
                                return err(
                                    *n,
                                    *from_col,
                                    format!("arc must connect a declared place and transition: `{from} -> {to}`"),
                                )
                            }
                        }
                    }
                    Stmt::Special { keyword, .. } => {
                        return err(*n, *col, format!("`{keyword}` arcs are not allowed in nu nets"));
                    }
                    Stmt::Marking { place, entries } => {
                        let p = match place_of(place) {
                            Some(p) => p,
                            None => return err(*n, *col, format!("undeclared place `{place}`")),
                        };
                        if marked[p] {
                            return err(*n, *col, format!("duplicate marking for place `{place}`"));
                        }
                        marked[p] = true;
                        for (name, count) in entries {
                            initial.add(Place(p), name_id(name), *count);
                        }
                    }
                    _ => {}
                }
            }
            Payload::Nu { net, initial }
        }
        NetKind::Pt => {
            let mut net = PtNet::new();
            for p in &place_names {
                net.add_place(p.clone());
            }
            for t in &trans_names {
                net.add_transition(t.clone());
            }
            let mut initial = vec![0u32; place_names.len()];
            let mut marked = vec![false; place_names.len()];
            for (n, col, stmt) in &stmts {
                match stmt {
                    Stmt::Arc {
                        from,
                        to,
                        tokens,
                        from_col,
                    } => {
                        if let Some(first) = tokens.first() {
                            if tokens.iter().any(|t| t != first) {
                                return err(
                                    *n,
                                    *from_col,
                                    "weight tokens on a pt arc must all be identical",
                                );
                            }
                        }
                        let weight = tokens.len().max(1) as u32;
                        match (place_of(from), trans_of(to), trans_of(from), place_of(to)) {
                            (Some(p), Some(t), _, _) => net.set_pre(p, t, weight),
                            (_, _, Some(t), Some(p)) => net.set_post(t, p, weight),
                            _ => {
                                return err(
                                    *n,
                                    *from_col,
                                    format!("arc must connect a declared place and transition: `{from} -> {to}`"),
                                )
                            }
                        }
                    }
                    Stmt::Special { keyword, .. } => {
                        return err(*n, *col, format!("`{keyword}` arcs are not allowed in pt nets"));
                    }
                    Stmt::Marking { place, entries } => {
                        let p = match place_of(place) {
                            Some(p) => p,
                            None => return err(*n, *col, format!("undeclared place `{place}`")),
                        };
                        if marked[p] {
                            return err(*n, *col, format!("duplicate marking for place `{place}`"));
                        }
                        marked[p] = true;
                        for (name, count) in entries {
                            if name != "." {
                                return err(*n, *col, "pt markings may only use the ordinary token `.`");
                            }
                            initial[p] += count;
                        }
                    }
                    _ => {}
                }
            }
            Payload::Pt { net, initial }
        }
        NetKind::Inhibitor | NetKind::Reset => {
            let mut inh = InhibitorNet::new();
            let mut rst = ResetNet::new();
            for p in &place_names {
                inh.add_place(p.clone());
                rst.add_place(p.clone());
            }
            for t in &trans_names {
                inh.add_transition(t.clone());
                rst.add_transition(t.clone());
            }
            let mut initial = vec![0u32; place_names.len()];
            let mut marked = vec![false; place_names.len()];
            for (n, col, stmt) in &stmts {
                match stmt {
                    Stmt::Arc {
                        from,
                        to,
                        tokens,
                        from_col,
                    } => {
                        if !tokens.is_empty() {
                            return err(
                                *n,
                                *from_col,
                                format!("{} arcs carry no tokens (weight is always 1)", kind.as_str()),
                            );
                        }
                        match (place_of(from), trans_of(to), trans_of(from), place_of(to)) {
                            (Some(p), Some(t), _, _) => {
                                inh.add_pre(p, t);
                                rst.add_pre(p, t);
                            }
                            (_, _, Some(t), Some(p)) => {
                                inh.add_post(t, p);
                                if let Err(e) = rst.add_post(t, p) {
                                    if kind == NetKind::Reset {
                                        return err(*n, *from_col, e.to_string());
                                    }
                                }
                            }
                            _ => {
                                return err(
                                    *n,
                                    *from_col,
                                    format!("arc must connect a declared place and transition: `{from} -> {to}`"),
                                )
                            }
                        }
                    }
                    Stmt::Special {
                        keyword,
                        place,
                        trans,
                    } => {
                        let expected = if kind == NetKind::Inhibitor { "inhibit" } else { "reset" };
                        if *keyword != expected {
                            return err(
                                *n,
                                *col,
                                format!("`{keyword}` arcs are not allowed in {} nets", kind.as_str()),
                            );
                        }
                        let p = match place_of(place) {
                            Some(p) => p,
                            None => return err(*n, *col, format!("undeclared place `{place}`")),
                        };
                        let t = match trans_of(trans) {
                            Some(t) => t,
                            None => return err(*n, *col, format!("undeclared transition `{trans}`")),
                        };
                        if kind == NetKind::Inhibitor {
                            inh.add_inhibitor(p, t);
                        } else if let Err(e) = rst.add_reset(p, t) {
                            return err(*n, *col, e.to_string());
                        }
                    }
                    Stmt::Marking { place, entries } => {
                        let p = match place_of(place) {
                            Some(p) => p,
                            None => return err(*n, *col, format!("undeclared place `{place}`")),
                        };
                        if marked[p] {
                            return err(*n, *col, format!("duplicate marking for place `{place}`"));
                        }
                        marked[p] = true;
                        for (name, count) in entries {
                            if name != "." {
                                return err(
                                    *n,
                                    *col,
                                    format!(
                                        "{} markings may only use the ordinary token `.`",
                                        kind.as_str()
                                    ),
                                );
                            }
                            initial[p] += count;
                        }
                    }
                    _ => {}
                }
            }
            if kind == NetKind::Inhibitor {
                Payload::Inhibitor { net: inh, initial }
            } else {
                Payload::Reset { net: rst, initial }
            }
        }
    };

    let vars: Vec<(String, Variable)> = {
        let mut v: Vec<(String, Variable)> = plain_strings
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), Variable::plain(i as u32)))
            .collect();
        if let Payload::Nu { net, .. } = &payload {
            let mut fresh: Vec<Variable> = net
                .transitions()
                .flat_map(|t| net.vars_of(t).iter().copied())
                .filter(Variable::is_fresh)
                .collect();
            fresh.sort();
            fresh.dedup();
            for f in fresh {
                v.push((render_var_token(&f, &[]), f));
            }
        }
        v
    };

    Ok(NetDocument {
        kind,
        name: doc_name,
        comments,
        payload,
        names: name_strings,
        vars,
    })
}

fn render_var_token(v: &Variable, vars: &[(String, Variable)]) -> String {
    if let Some((s, _)) = vars.iter().find(|(_, w)| w == v) {
        return s.clone();
    }
    match v.kind {
        VarKind::Fresh => {
            if v.id == 0 {
                "nu".to_string()
            } else {
                format!("nu{}", v.id)
            }
        }
        VarKind::Plain => format!("x{}", v.id),
    }
}

fn render_name_token(n: NameId, names: &[String]) -> String {
    if n == NameId::DOT {
        ".".to_string()
    } else if let Some(s) = names.get((n.0 - 1) as usize) {
        s.clone()
    } else {
        format!("n{}", n.0)
    }
}

fn render_label(out: &mut String, label: &ArcLabel, vars: &[(String, Variable)]) {
    let mut tokens: Vec<String> = label.expand().map(|v| render_var_token(v, vars)).collect();
    tokens.sort();
    for t in tokens {
        out.push(' ');
        out.push_str(&t);
    }
}

fn render_marking_line(out: &mut String, place: &str, entries: &[(String, u32)]) {
    let _ = write!(out, "marking {place} = {{");
    for (i, (name, count)) in entries.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        let _ = write!(out, "{name}:{count}");
    }
    out.push_str("}\n");
}

/// Deterministic rendering; parsing the output reproduces the document.
pub fn render(doc: &NetDocument) -> String {
    let mut out = String::new();
    for c in &doc.comments {
        let _ = writeln!(out, "# {c}");
    }
    let _ = writeln!(out, "net {} {}", doc.kind.as_str(), doc.name);
    match &doc.payload {
        Payload::Nu { net, initial } => {
            for p in net.places() {
                let _ = writeln!(out, "place {}", net.place_name(p));
            }
            for t in net.transitions() {
                let _ = writeln!(out, "trans {}", net.transition_name(t));
            }
            for t in net.transitions() {
                for p in net.places() {
                    let label = net.pre_label(p, t);
                    if !label.is_empty() {
                        let _ = write!(out, "arc {} -> {}", net.place_name(p), net.transition_name(t));
                        render_label(&mut out, label, &doc.vars);
                        out.push('\n');
                    }
                }
                for p in net.places() {
                    let label = net.post_label(t, p);
                    if !label.is_empty() {
                        let _ = write!(out, "arc {} -> {}", net.transition_name(t), net.place_name(p));
                        render_label(&mut out, label, &doc.vars);
                        out.push('\n');
                    }
                }
            }
            for p in net.places() {
                let tokens = initial.place(p);
                if !tokens.is_empty() {
                    let mut entries: Vec<(String, u32)> = tokens
                        .iter()
                        .map(|(n, c)| (render_name_token(*n, &doc.names), c))
                        .collect();
                    entries.sort();
                    render_marking_line(&mut out, net.place_name(p), &entries);
                }
            }
        }
        Payload::Pt { net, initial } => {
            for p in net.place_names() {
                let _ = writeln!(out, "place {p}");
            }
            for t in net.transition_names() {
                let _ = writeln!(out, "trans {t}");
            }
            for (t, tname) in net.transition_names().iter().enumerate() {
                for (p, pname) in net.place_names().iter().enumerate() {
                    let w = net.pre_weight(p, t);
                    if w > 0 {
                        let _ = write!(out, "arc {pname} -> {tname}");
                        if w > 1 {
                            for _ in 0..w {
                                out.push_str(" w");
                            }
                        }
                        out.push('\n');
                    }
                }
                for (p, pname) in net.place_names().iter().enumerate() {
                    let w = net.post_weight(t, p);
                    if w > 0 {
                        let _ = write!(out, "arc {tname} -> {pname}");
                        if w > 1 {
                            for _ in 0..w {
                                out.push_str(" w");
                            }
                        }
                        out.push('\n');
                    }
                }
            }
            for (p, pname) in net.place_names().iter().enumerate() {
                if initial[p] > 0 {
                    render_marking_line(&mut out, pname, &[(".".to_string(), initial[p])]);
                }
            }
        }
        Payload::Inhibitor { net, initial } => {
            render_source_net(
                &mut out,
                net.place_names(),
                net.transition_names(),
                |t| net.pre_places(t).iter().copied().collect(),
                |t| net.post_places(t).iter().copied().collect(),
                |t| net.inhibitor_places(t).iter().copied().collect(),
                "inhibit",
                initial,
            );
        }
        Payload::Reset { net, initial } => {
            render_source_net(
                &mut out,
                net.place_names(),
                net.transition_names(),
                |t| net.pre_places(t).iter().copied().collect(),
                |t| net.post_places(t).iter().copied().collect(),
                |t| net.reset_places(t).iter().copied().collect(),
                "reset",
                initial,
            );
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn render_source_net(
    out: &mut String,
    places: &[String],
    transitions: &[String],
    pre: impl Fn(usize) -> Vec<usize>,
    post: impl Fn(usize) -> Vec<usize>,
    special: impl Fn(usize) -> Vec<usize>,
    keyword: &str,
    initial: &[u32],
) {
    for p in places {
        let _ = writeln!(out, "place {p}");
    }
    for t in transitions {
        let _ = writeln!(out, "trans {t}");
    }
    for (t, tname) in transitions.iter().enumerate() {
        for p in pre(t) {
            let _ = writeln!(out, "arc {} -> {tname}", places[p]);
        }
        for p in post(t) {
            let _ = writeln!(out, "arc {tname} -> {}", places[p]);
        }
    }
    for (t, tname) in transitions.iter().enumerate() {
        for p in special(t) {
            let _ = writeln!(out, "{keyword} {} -> {tname}", places[p]);
        }
    }
    for (p, pname) in places.iter().enumerate() {
        if initial[p] > 0 {
            render_marking_line(out, pname, &[(".".to_string(), initial[p])]);
        }
    }
}

/// The analysis view of a document: the name net it denotes (directly, by
/// P/T embedding, or by reduction), its initial marking, and the tables
/// used to render and parse witnesses against it.
#[derive(Clone, Debug)]
pub struct ResolvedNet {
    pub net: NuNet,
    pub initial: Marking,
    pub vars: Vec<(String, Variable)>,
    pub names: Vec<String>,
}

impl NetDocument {
    /// Resolves the document to the net the analyses run on.
    pub fn resolve(&self) -> ResolvedNet {
        match &self.payload {
            Payload::Nu { net, initial } => ResolvedNet {
                net: net.clone(),
                initial: initial.clone(),
                vars: self.vars.clone(),
                names: self.names.clone(),
            },
            Payload::Pt { net, initial } => {
                let (net, initial) = embed_pt(net, initial);
                ResolvedNet {
                    net,
                    initial,
                    vars: vec![("w".to_string(), Variable::plain(0))],
                    names: Vec::new(),
                }
            }
            Payload::Inhibitor { net, initial } => {
                let tr = inhibitor_to_nu(net, initial);
                ResolvedNet {
                    net: tr.net.clone(),
                    initial: tr.initial.clone(),
                    vars: translation_vars(net.place_names()),
                    names: Vec::new(),
                }
            }
            Payload::Reset { net, initial } => {
                let tr = reset_to_nu(net, initial);
                ResolvedNet {
                    net: tr.net.clone(),
                    initial: tr.initial.clone(),
                    vars: translation_vars(net.place_names()),
                    names: Vec::new(),
                }
            }
        }
    }

    /// Resolves a target document against this one for cover/reach queries:
    /// kinds and place lists must match; name strings shared with this
    /// document resolve to the same ids, new names get fresh ids.
    pub fn resolve_target(&self, target: &NetDocument) -> Result<Marking, String> {
        if self.kind != target.kind {
            return Err(format!(
                "target kind `{}` does not match net kind `{}`",
                target.kind.as_str(),
                self.kind.as_str()
            ));
        }
        match (&self.payload, &target.payload) {
            (Payload::Nu { net, .. }, Payload::Nu { net: tnet, initial }) => {
                if net.place_names() != tnet.place_names() {
                    return Err("target must declare the same places in the same order".into());
                }
                // remap target name ids: shared strings to this document's
                // ids, unknown strings to fresh ids above both tables
                let mut map: BTreeMap<NameId, NameId> = BTreeMap::new();
                let mut next = (self.names.len() + target.names.len()) as u64 + 1;
                for (k, s) in target.names.iter().enumerate() {
                    let from = NameId(k as u64 + 1);
                    let to = match self.names.iter().position(|n| n == s) {
                        Some(i) => NameId(i as u64 + 1),
                        None => {
                            let id = NameId(next);
                            next += 1;
                            id
                        }
                    };
                    map.insert(from, to);
                }
                Ok(initial.rename(&map))
            }
            (Payload::Pt { net, .. }, Payload::Pt { net: tnet, initial }) => {
                if net.place_names() != tnet.place_names() {
                    return Err("target must declare the same places in the same order".into());
                }
                let resolved = self.resolve();
                let mut m = Marking::for_net(&resolved.net);
                for (p, &count) in initial.iter().enumerate() {
                    m.add(Place(p), NameId::DOT, count);
                }
                Ok(m)
            }
            (Payload::Inhibitor { net, initial: m0 }, Payload::Inhibitor { net: tnet, initial }) => {
                if net.place_names() != tnet.place_names() {
                    return Err("target must declare the same places in the same order".into());
                }
                Ok(inhibitor_to_nu(net, m0).marking(initial))
            }
            (Payload::Reset { net, initial: m0 }, Payload::Reset { net: tnet, initial }) => {
                if net.place_names() != tnet.place_names() {
                    return Err("target must declare the same places in the same order".into());
                }
                Ok(reset_to_nu(net, m0).marking(initial))
            }
            _ => unreachable!("kinds already compared"),
        }
    }

    /// The document's net-as-analyzed as a `nu` document: identity for `nu`
    /// documents, the embedding or reduction image otherwise.
    pub fn translate(&self) -> NetDocument {
        match &self.payload {
            Payload::Nu { .. } => self.clone(),
            Payload::Pt { .. } => {
                let resolved = self.resolve();
                NetDocument {
                    kind: NetKind::Nu,
                    name: self.name.clone(),
                    comments: self.comments.clone(),
                    payload: Payload::Nu {
                        net: resolved.net,
                        initial: resolved.initial,
                    },
                    names: Vec::new(),
                    vars: vec![("w".to_string(), Variable::plain(0))],
                }
            }
            Payload::Inhibitor { net, initial } => {
                let tr = inhibitor_to_nu(net, initial);
                translated_doc(&self.name, &self.comments, net.place_names(), tr.net, tr.initial)
            }
            Payload::Reset { net, initial } => {
                let tr = reset_to_nu(net, initial);
                translated_doc(&self.name, &self.comments, net.place_names(), tr.net, tr.initial)
            }
        }
    }
}

fn translation_vars(source_places: &[String]) -> Vec<(String, Variable)> {
    let mut vars: Vec<(String, Variable)> = source_places
        .iter()
        .enumerate()
        .map(|(p, name)| (format!("x_{name}"), Variable::plain(p as u32)))
        .collect();
    vars.push(("nu".to_string(), Variable::fresh(0)));
    vars
}

/// Builds a `nu` document for a reduction image, remapping witness names so
/// the document's canonically sorted name table reproduces them.
fn translated_doc(
    name: &str,
    comments: &[String],
    source_places: &[String],
    net: NuNet,
    initial: Marking,
) -> NetDocument {
    // witness name strings are the source place names
    let mut names: Vec<String> = source_places.to_vec();
    names.sort();
    let map: BTreeMap<NameId, NameId> = source_places
        .iter()
        .enumerate()
        .map(|(p, pname)| {
            let sorted_pos = names.iter().position(|n| n == pname).expect("present");
            (NameId(p as u64 + 1), NameId(sorted_pos as u64 + 1))
        })
        .collect();
    let initial = initial.rename(&map);
    NetDocument {
        kind: NetKind::Nu,
        name: name.to_string(),
        comments: comments.to_vec(),
        payload: Payload::Nu { net, initial },
        names,
        vars: translation_vars(source_places),
    }
}

/// Renders a marking: nonempty places in net order, token counts with names
/// sorted. Names print via the raw scheme (`.` and `n<k>`).
pub fn render_marking(net: &NuNet, m: &Marking) -> String {
    let mut parts = Vec::new();
    for p in net.places() {
        let tokens = m.place(p);
        if tokens.is_empty() {
            continue;
        }
        let mut s = format!("{}={{", net.place_name(p));
        for (i, (n, c)) in tokens.iter().enumerate() {
            if i > 0 {
                s.push_str(", ");
            }
            let _ = write!(s, "{n}:{c}");
        }
        s.push('}');
        parts.push(s);
    }
    if parts.is_empty() {
        "(empty)".to_string()
    } else {
        parts.join(" ")
    }
}

/// One `fire` line per step: `fire <t> {var=name, ...}`.
pub fn render_witness(resolved: &ResolvedNet, steps: &[(Transition, Mode)]) -> String {
    let mut out = String::new();
    for (t, mode) in steps {
        let _ = write!(out, "fire {} {{", resolved.net.transition_name(*t));
        for (i, (v, n)) in mode.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            let _ = write!(out, "{}={}", render_var_token(v, &resolved.vars), n);
        }
        out.push_str("}\n");
    }
    out
}

/// Parses `fire` lines back into firings against the resolved net. Names
/// resolve through the raw scheme first (`.`, `n<k>`), then through the
/// document name table.
pub fn parse_witness(
    resolved: &ResolvedNet,
    text: &str,
) -> Result<Vec<(Transition, Mode)>, ParseError> {
    let mut steps = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let n = idx + 1;
        let code = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let line = code.trim();
        if line.is_empty() {
            continue;
        }
        let rest = match line.strip_prefix("fire ") {
            Some(r) => r,
            None => return err(n, 1, "expected `fire <transition> {var=name, ...}`"),
        };
        let (tname, body) = match rest.split_once('{') {
            Some((t, b)) => (t.trim(), b),
            None => return err(n, 1, "missing `{` in fire line"),
        };
        let body = match body.strip_suffix('}') {
            Some(b) => b,
            None => return err(n, 1, "missing `}` in fire line"),
        };
        let t = match resolved.net.find_transition(tname) {
            Some(t) => t,
            None => return err(n, 1, format!("unknown transition `{tname}`")),
        };
        let mut pairs = Vec::new();
        for piece in body.split(',') {
            let piece = piece.trim();
            if piece.is_empty() {
                continue;
            }
            let (vs, ns) = match piece.split_once('=') {
                Some(p) => p,
                None => return err(n, 1, format!("expected `var=name`, got `{piece}`")),
            };
            let vs = vs.trim();
            let ns = ns.trim();
            let var = match resolved.vars.iter().find(|(s, _)| s == vs) {
                Some((_, v)) => *v,
                None => match fresh_var_of(vs) {
                    Some(v) => v,
                    None => return err(n, 1, format!("unknown variable `{vs}`")),
                },
            };
            let name = parse_name_token(ns, &resolved.names).ok_or_else(|| ParseError {
                line: n,
                col: 1,
                message: format!("unknown name `{ns}`"),
            })?;
            pairs.push((var, name));
        }
        let mode = Mode::new(pairs).map_err(|e| ParseError {
            line: n,
            col: 1,
            message: e.to_string(),
        })?;
        steps.push((t, mode));
    }
    Ok(steps)
}

fn parse_name_token(s: &str, names: &[String]) -> Option<NameId> {
    if s == "." {
        return Some(NameId::DOT);
    }
    if let Some(i) = names.iter().position(|n| n == s) {
        return Some(NameId(i as u64 + 1));
    }
    if let Some(rest) = s.strip_prefix('n') {
        if !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit()) {
            return rest.parse::<u64>().ok().map(NameId);
        }
    }
    None
}

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Terminating => "terminating",
        Verdict::NonTerminating => "non-terminating",
        Verdict::Bounded => "bounded",
        Verdict::Unbounded => "unbounded",
        Verdict::Reachable => "reachable",
        Verdict::NotReachable => "not-reachable",
        Verdict::NotApplicable => "not-applicable",
        Verdict::ResourceExhausted => "resource-exhausted",
    }
}

/// Structured text report for a coverability result.
pub fn render_cover_report(resolved: &ResolvedNet, r: &CoverResult) -> String {
    let mut out = String::new();
    let verdict = match r.verdict {
        CoverVerdict::Coverable => "coverable",
        CoverVerdict::NotCoverable => "not-coverable",
        CoverVerdict::ResourceExhausted => "resource-exhausted",
    };
    let _ = writeln!(out, "verdict: {verdict}");
    let _ = writeln!(out, "stats: basis={} iterations={}", r.basis_size, r.iterations);
    if let Some(witness) = &r.witness {
        let _ = writeln!(out, "witness:");
        out.push_str(&render_witness(resolved, witness));
    }
    out
}

/// Structured text report for a forward analysis result.
pub fn render_analysis_report(resolved: &ResolvedNet, r: &AnalysisResult) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "verdict: {}", verdict_str(r.verdict));
    let _ = writeln!(
        out,
        "stats: nodes={} width={} depth={}",
        r.stats.nodes, r.stats.max_width, r.stats.max_depth
    );
    if let Some((anc, node)) = &r.pump {
        let _ = writeln!(out, "pump-start: {}", r.pump_start.unwrap_or(0));
        let _ = writeln!(out, "pump-ancestor: {}", anc.render(resolved.net.place_names()));
        let _ = writeln!(out, "pump-node: {}", node.render(resolved.net.place_names()));
    }
    if let Some(witness) = &r.witness {
        let _ = writeln!(out, "witness:");
        out.push_str(&render_witness(resolved, witness));
    }
    out
}

/// Structured text report for a measurement.
pub fn render_measure_report(m: &Measure) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "verdict: {}", if m.exact { "exact" } else { "truncated" });
    let _ = writeln!(
        out,
        "stats: nodes={} width={} depth={}",
        m.nodes, m.max_width, m.max_depth
    );
    out
}
