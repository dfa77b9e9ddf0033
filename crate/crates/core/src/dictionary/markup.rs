//! Minimal XML-subset reader and writer for the dictionary file format.
//!
//! Supports exactly what the dictionary DTD needs: elements with quoted
//! attributes, text content, the five built-in entities, comments and an
//! optional `<?xml ...?>` prolog. Parse errors carry line and column.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("markup error at {line}:{col}: {msg}")]
pub struct MarkupError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Element(Element),
    Text(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Element {
    pub name: String,
    pub attrs: Vec<(String, String)>,
    pub children: Vec<Node>,
    /// Position of the opening `<`, for error reporting downstream.
    pub line: usize,
    pub col: usize,
}

impl Element {
    pub fn attr(&self, name: &str) -> Option<&str> {
        self.attrs
            .iter()
            .find(|(k, _)| k == name)
            .map(|(_, v)| v.as_str())
    }

    pub fn child_elements(&self) -> impl Iterator<Item = &Element> {
        self.children.iter().filter_map(|n| match n {
            Node::Element(e) => Some(e),
            Node::Text(_) => None,
        })
    }

    /// Concatenated text directly under this element (child elements skipped).
    pub fn direct_text(&self) -> String {
        let mut out = String::new();
        for node in &self.children {
            if let Node::Text(t) = node {
                out.push_str(t);
            }
        }
        out.trim().to_string()
    }
}

struct Cursor<'a> {
    rest: &'a str,
    line: usize,
    col: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor {
            rest: src,
            line: 1,
            col: 1,
        }
    }

    fn peek(&self) -> Option<char> {
        self.rest.chars().next()
    }

    fn starts_with(&self, s: &str) -> bool {
        self.rest.starts_with(s)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.rest.chars().next()?;
        self.rest = &self.rest[c.len_utf8()..];
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.starts_with(s) {
            for _ in s.chars() {
                self.bump();
            }
            true
        } else {
            false
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn err(&self, msg: impl fmt::Display) -> MarkupError {
        MarkupError {
            line: self.line,
            col: self.col,
            msg: msg.to_string(),
        }
    }
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '-' || c == ':' || c == '.'
}

fn parse_name(cur: &mut Cursor) -> Result<String, MarkupError> {
    let mut name = String::new();
    while matches!(cur.peek(), Some(c) if is_name_char(c)) {
        name.push(cur.bump().unwrap());
    }
    if name.is_empty() {
        return Err(cur.err("expected a name"));
    }
    Ok(name)
}

fn parse_entity(cur: &mut Cursor) -> Result<char, MarkupError> {
    // cursor sits on '&'
    let (line, col) = (cur.line, cur.col);
    cur.bump();
    let mut ent = String::new();
    loop {
        match cur.peek() {
            Some(';') => {
                cur.bump();
                break;
            }
            Some(c) if c.is_ascii_alphanumeric() || c == '#' => {
                ent.push(cur.bump().unwrap());
            }
            _ => {
                return Err(MarkupError {
                    line,
                    col,
                    msg: "unterminated entity reference".to_string(),
                })
            }
        }
        if ent.len() > 8 {
            return Err(MarkupError {
                line,
                col,
                msg: format!("unknown entity `&{ent}...`"),
            });
        }
    }
    match ent.as_str() {
        "amp" => Ok('&'),
        "lt" => Ok('<'),
        "gt" => Ok('>'),
        "quot" => Ok('"'),
        "apos" => Ok('\''),
        other => Err(MarkupError {
            line,
            col,
            msg: format!("unknown entity `&{other};` (only the five XML built-ins are supported)"),
        }),
    }
}

fn parse_attr_value(cur: &mut Cursor) -> Result<String, MarkupError> {
    let quote = match cur.peek() {
        Some(c @ ('"' | '\'')) => c,
        _ => return Err(cur.err("expected quoted attribute value")),
    };
    cur.bump();
    let mut value = String::new();
    loop {
        match cur.peek() {
            Some(c) if c == quote => {
                cur.bump();
                return Ok(value);
            }
            Some('&') => value.push(parse_entity(cur)?),
            Some('<') => return Err(cur.err("`<` not allowed in attribute value")),
            Some(_) => value.push(cur.bump().unwrap()),
            None => return Err(cur.err("unterminated attribute value")),
        }
    }
}

fn parse_element(cur: &mut Cursor) -> Result<Element, MarkupError> {
    let (line, col) = (cur.line, cur.col);
    if !cur.eat("<") {
        return Err(cur.err("expected `<`"));
    }
    let name = parse_name(cur)?;
    let mut attrs = Vec::new();
    loop {
        cur.skip_ws();
        match cur.peek() {
            Some('>') => {
                cur.bump();
                break;
            }
            Some('/') => {
                cur.bump();
                if !cur.eat(">") {
                    return Err(cur.err("expected `>` after `/`"));
                }
                return Ok(Element {
                    name,
                    attrs,
                    children: Vec::new(),
                    line,
                    col,
                });
            }
            Some(c) if is_name_char(c) => {
                let key = parse_name(cur)?;
                cur.skip_ws();
                if !cur.eat("=") {
                    return Err(cur.err(format!("expected `=` after attribute `{key}`")));
                }
                cur.skip_ws();
                let value = parse_attr_value(cur)?;
                attrs.push((key, value));
            }
            _ => return Err(cur.err(format!("malformed start tag `<{name}`"))),
        }
    }

    let mut children = Vec::new();
    let mut text = String::new();
    loop {
        match cur.peek() {
            None => return Err(cur.err(format!("unexpected end of input inside <{name}>"))),
            Some('<') => {
                if cur.starts_with("<!--") {
                    skip_comment(cur)?;
                    continue;
                }
                if cur.starts_with("</") {
                    if !text.is_empty() {
                        children.push(Node::Text(std::mem::take(&mut text)));
                    }
                    let (eline, ecol) = (cur.line, cur.col);
                    cur.eat("</");
                    let close = parse_name(cur)?;
                    cur.skip_ws();
                    if !cur.eat(">") {
                        return Err(cur.err("expected `>` in end tag"));
                    }
                    if close != name {
                        return Err(MarkupError {
                            line: eline,
                            col: ecol,
                            msg: format!("mismatched end tag `</{close}>`, expected `</{name}>`"),
                        });
                    }
                    return Ok(Element {
                        name,
                        attrs,
                        children,
                        line,
                        col,
                    });
                }
                if !text.is_empty() {
                    children.push(Node::Text(std::mem::take(&mut text)));
                }
                children.push(Node::Element(parse_element(cur)?));
            }
            Some('&') => text.push(parse_entity(cur)?),
            Some(_) => text.push(cur.bump().unwrap()),
        }
    }
}

fn skip_comment(cur: &mut Cursor) -> Result<(), MarkupError> {
    let (line, col) = (cur.line, cur.col);
    cur.eat("<!--");
    loop {
        if cur.eat("-->") {
            return Ok(());
        }
        if cur.bump().is_none() {
            return Err(MarkupError {
                line,
                col,
                msg: "unterminated comment".to_string(),
            });
        }
    }
}

/// Parse a document and return its root element.
pub fn parse_document(src: &str) -> Result<Element, MarkupError> {
    let mut cur = Cursor::new(src);
    loop {
        cur.skip_ws();
        if cur.starts_with("<?") {
            // prolog: skip to `?>`
            let (line, col) = (cur.line, cur.col);
            loop {
                if cur.eat("?>") {
                    break;
                }
                if cur.bump().is_none() {
                    return Err(MarkupError {
                        line,
                        col,
                        msg: "unterminated processing instruction".to_string(),
                    });
                }
            }
        } else if cur.starts_with("<!--") {
            skip_comment(&mut cur)?;
        } else {
            break;
        }
    }
    if cur.peek().is_none() {
        return Err(cur.err("empty document: expected a root element"));
    }
    let root = parse_element(&mut cur)?;
    cur.skip_ws();
    if cur.peek().is_some() {
        return Err(cur.err("trailing content after root element"));
    }
    Ok(root)
}

/// Escape text content (`&`, `<`, `>`).
pub fn escape_text(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            c => out.push(c),
        }
    }
    out
}

/// Escape an attribute value (text escapes plus `"`).
pub fn escape_attr(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            c => out.push(c),
        }
    }
    out
}
