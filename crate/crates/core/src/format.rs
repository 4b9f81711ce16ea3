//! Text format for instances.
//!
//! ```text
//! # optional header fixing the post order and declaring unranked posts
//! posts: p1 p2 p3
//! a1: p2 (p1 p3)
//! a2: p1
//! ```
//!
//! A bare token is a singleton rank group, `( ... )` a tie group. `#` starts
//! a comment. Without a header, posts are declared by first appearance.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::PostId;
use crate::instance::{Instance, PreferenceList, HEADER_KEYWORD};

#[derive(Debug, Clone, PartialEq)]
enum Token<'a> {
    Ident(&'a str),
    Colon,
    Open,
    Close,
}

fn tokenize(line: &str) -> Vec<(Token<'_>, usize)> {
    let mut out = Vec::new();
    let mut chars = line.char_indices().peekable();
    let mut col = 0;
    while let Some((start, c)) = chars.next() {
        col += 1;
        let tok = match c {
            ':' => Token::Colon,
            '(' => Token::Open,
            ')' => Token::Close,
            c if c.is_whitespace() => continue,
            _ => {
                let begin_col = col;
                let mut end = start + c.len_utf8();
                while let Some(&(i, d)) = chars.peek() {
                    if d.is_whitespace() || matches!(d, ':' | '(' | ')') {
                        break;
                    }
                    end = i + d.len_utf8();
                    col += 1;
                    chars.next();
                }
                out.push((Token::Ident(&line[start..end]), begin_col));
                continue;
            }
        };
        out.push((tok, col));
    }
    out
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

struct PostTable {
    names: Vec<String>,
    index: HashMap<String, usize>,
    declared: bool,
}

impl PostTable {
    fn lookup(&mut self, name: &str) -> Result<PostId> {
        if let Some(&i) = self.index.get(name) {
            return Ok(PostId(i));
        }
        if self.declared {
            return Err(Error::UnknownPost(name.to_string()));
        }
        self.index.insert(name.to_string(), self.names.len());
        self.names.push(name.to_string());
        Ok(PostId(self.names.len() - 1))
    }
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut posts = PostTable {
        names: Vec::new(),
        index: HashMap::new(),
        declared: false,
    };
    let mut applicants = Vec::new();
    let mut prefs: Vec<PreferenceList> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("");
        let tokens = tokenize(line);
        if tokens.is_empty() {
            continue;
        }
        let (name, name_col) = match tokens[0] {
            (Token::Ident(s), c) => (s, c),
            (_, c) => return Err(syntax(line_no, c, "expected an identifier")),
        };
        match tokens.get(1) {
            Some((Token::Colon, _)) => {}
            Some((_, c)) => return Err(syntax(line_no, *c, "expected ':'")),
            None => return Err(syntax(line_no, name_col + name.chars().count(), "expected ':'")),
        }
        let rest = &tokens[2..];

        if name == HEADER_KEYWORD {
            if !applicants.is_empty() || posts.declared || !posts.names.is_empty() {
                return Err(syntax(line_no, name_col, "the posts header must be the first line"));
            }
            for (tok, col) in rest {
                match tok {
                    Token::Ident(p) => {
                        if posts.index.contains_key(*p) {
                            return Err(Error::DuplicatePostDeclaration(p.to_string()));
                        }
                        posts.lookup(p)?;
                    }
                    _ => return Err(syntax(line_no, *col, "expected a post identifier")),
                }
            }
            posts.declared = true;
            continue;
        }

        let mut groups: PreferenceList = Vec::new();
        let mut open: Option<Vec<PostId>> = None;
        for (tok, col) in rest {
            match (tok, open.as_mut()) {
                (Token::Ident(p), None) => groups.push(vec![posts.lookup(p)?]),
                (Token::Ident(p), Some(g)) => g.push(posts.lookup(p)?),
                (Token::Open, None) => open = Some(Vec::new()),
                (Token::Open, Some(_)) => return Err(syntax(line_no, *col, "nested '('")),
                (Token::Close, Some(_)) => {
                    let g = open.take().unwrap_or_default();
                    if g.is_empty() {
                        return Err(Error::EmptyGroup(name.to_string()));
                    }
                    groups.push(g);
                }
                (Token::Close, None) => return Err(syntax(line_no, *col, "unmatched ')'")),
                (Token::Colon, _) => return Err(syntax(line_no, *col, "unexpected ':'")),
            }
        }
        if open.is_some() {
            return Err(syntax(line_no, line.chars().count() + 1, "unclosed '('"));
        }
        applicants.push(name.to_string());
        prefs.push(groups);
    }

    Instance::new(applicants, posts.names, prefs)
}

/// Canonical text for `inst`. The header line is emitted only when first
/// appearance alone would not reproduce the post set and its order.
pub fn serialize_instance(inst: &Instance) -> String {
    let mut appearance: Vec<PostId> = Vec::new();
    let mut seen = vec![false; inst.n_posts()];
    for a in inst.applicant_ids() {
        for &p in inst.preferences(a).iter().flatten() {
            if !std::mem::replace(&mut seen[p.0], true) {
                appearance.push(p);
            }
        }
    }
    let natural = appearance.iter().copied().eq(inst.post_ids());

    let mut out = String::new();
    if !natural {
        out.push_str(HEADER_KEYWORD);
        out.push(':');
        for name in inst.post_names() {
            out.push(' ');
            out.push_str(name);
        }
        out.push('\n');
    }
    for a in inst.applicant_ids() {
        out.push_str(inst.applicant_name(a));
        out.push(':');
        for group in inst.preferences(a) {
            out.push(' ');
            if let [p] = group.as_slice() {
                out.push_str(inst.post_name(*p));
            } else {
                out.push('(');
                let names: Vec<&str> = group.iter().map(|&p| inst.post_name(p)).collect();
                out.push_str(&names.join(" "));
                out.push(')');
            }
        }
        out.push('\n');
    }
    out
}
