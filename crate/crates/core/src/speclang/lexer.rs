use super::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TokKind {
    Ident(String),
    Int(String),
    Punct(char),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tok {
    pub kind: TokKind,
    pub line: usize,
    pub column: usize,
}

impl Tok {
    pub fn text(&self) -> String {
        match &self.kind {
            TokKind::Ident(s) | TokKind::Int(s) => s.clone(),
            TokKind::Punct(c) => c.to_string(),
        }
    }
}

const PUNCT: &[char] = &['=', ',', '[', ']', '*', '^', '+', '-', '/'];

/// Splits the input into lines of tokens, dropping comments and blank lines.
/// Both LF and CRLF line endings are accepted.
pub fn tokenize(src: &str) -> Result<Vec<Vec<Tok>>, ParseError> {
    let mut out = Vec::new();
    for (i, raw) in src.split('\n').enumerate() {
        let line = i + 1;
        let text = raw.strip_suffix('\r').unwrap_or(raw);
        let chars: Vec<char> = text.chars().collect();
        let mut toks = Vec::new();
        let mut k = 0;
        while k < chars.len() {
            let c = chars[k];
            let column = k + 1;
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                k += 1;
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = k;
                while k < chars.len() && (chars[k].is_ascii_alphanumeric() || chars[k] == '_') {
                    k += 1;
                }
                toks.push(Tok { kind: TokKind::Ident(chars[start..k].iter().collect()), line, column });
            } else if c.is_ascii_digit() {
                let start = k;
                while k < chars.len() && chars[k].is_ascii_digit() {
                    k += 1;
                }
                toks.push(Tok { kind: TokKind::Int(chars[start..k].iter().collect()), line, column });
            } else if PUNCT.contains(&c) {
                toks.push(Tok { kind: TokKind::Punct(c), line, column });
                k += 1;
            } else {
                return Err(ParseError { line, column, message: format!("unexpected character `{c}`"), token: c.to_string() });
            }
        }
        if !toks.is_empty() {
            out.push(toks);
        }
    }
    Ok(out)
}
