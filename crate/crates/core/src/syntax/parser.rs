use super::lexer::{Token, TokenKind};
use super::{normalize_value, AstNode, EntityKind, ParseError, Span};

const MODIFIERS: &[&str] = &[
    "public",
    "private",
    "protected",
    "static",
    "final",
    "abstract",
    "synchronized",
    "native",
    "transient",
    "volatile",
    "strictfp",
    "default",
    "sealed",
];

const ASSIGN_OPS: &[&str] = &[
    "=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>=", ">>>=",
];

// Keywords that keep a space before a following `(` or `[` and make a
// following `-`/`+` unary.
const SPACED_KEYWORDS: &[&str] = &[
    "if", "for", "while", "switch", "catch", "return", "throw", "case", "else", "do", "try",
    "synchronized", "assert", "instanceof", "new", "yield",
];

const NOT_TYPE_START: &[&str] = &[
    "new", "this", "super", "return", "throw", "null", "true", "false", "instanceof", "case",
];

pub(crate) struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    pub fn new(toks: Vec<Token>) -> Self {
        Parser { toks, pos: 0 }
    }

    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn peek_is(&self, text: &str) -> bool {
        self.peek().is_some_and(|t| t.is(text))
    }

    fn at_is(&self, idx: usize, text: &str) -> bool {
        self.toks.get(idx).is_some_and(|t| t.is(text))
    }

    fn err_at(&self, idx: usize, message: impl Into<String>) -> ParseError {
        let (line, column) = match self.toks.get(idx) {
            Some(t) => (t.line, t.col),
            None => match self.toks.last() {
                Some(t) => (t.end_line, t.col + t.text.len()),
                None => (1, 1),
            },
        };
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }

    fn err_here(&self, message: impl Into<String>) -> ParseError {
        self.err_at(self.pos, message)
    }

    fn expect(&mut self, text: &str) -> PResult<usize> {
        if self.peek_is(text) {
            self.pos += 1;
            Ok(self.pos - 1)
        } else if self.peek().is_none() {
            Err(self.err_here(format!("expected `{text}`, found end of input")))
        } else {
            Err(self.err_here(format!("expected `{text}`, found `{}`", self.toks[self.pos].text)))
        }
    }

    fn span(&self, first: usize, last: usize) -> Span {
        let (a, b) = (&self.toks[first], &self.toks[last]);
        Span {
            start_line: a.line,
            end_line: b.end_line,
            start_byte: a.start,
            end_byte: b.end,
        }
    }

    fn whole_span(&self) -> Span {
        if self.toks.is_empty() {
            Span::lines(1, 1)
        } else {
            self.span(0, self.toks.len() - 1)
        }
    }

    fn render(&self, from: usize, to: usize) -> String {
        render(&self.toks[from..to])
    }

    pub fn parse_unit(mut self) -> PResult<AstNode> {
        let children = if self.looks_like_unit() {
            self.parse_declarations()?
        } else {
            let stmts = self.parse_statements_until_eof()?;
            let span = self.whole_span();
            vec![AstNode::new(EntityKind::MethodDeclaration, "", span).with_children(stmts)]
        };
        Ok(AstNode::new(EntityKind::Class, "", self.whole_span()).with_children(children))
    }

    fn looks_like_unit(&self) -> bool {
        let Some(first) = self.toks.first() else {
            return false;
        };
        if first.is("package") || first.is("import") {
            return true;
        }
        let i = self.skip_modifiers_from(0).0;
        match self.toks.get(i) {
            Some(t) => {
                ["class", "interface", "enum", "record"].contains(&t.text.as_str())
                    || (t.is("@") && self.at_is(i + 1, "interface"))
            }
            None => false,
        }
    }

    fn skip_annotation(&self, mut i: usize) -> usize {
        i += 1;
        if self.toks.get(i).is_some_and(Token::is_ident) {
            i += 1;
        }
        while self.at_is(i, ".") && self.toks.get(i + 1).is_some_and(Token::is_ident) {
            i += 2;
        }
        if self.at_is(i, "(") {
            let mut depth = 0usize;
            while let Some(t) = self.toks.get(i) {
                if t.is("(") {
                    depth += 1;
                } else if t.is(")") {
                    depth -= 1;
                    if depth == 0 {
                        return i + 1;
                    }
                }
                i += 1;
            }
        }
        i
    }

    /// Returns the index after annotations and modifiers, and whether
    /// `static` was among them.
    fn skip_modifiers_from(&self, mut i: usize) -> (usize, bool) {
        let mut is_static = false;
        loop {
            match self.toks.get(i) {
                Some(t) if t.is("@") && !self.at_is(i + 1, "interface") => i = self.skip_annotation(i),
                Some(t) if MODIFIERS.contains(&t.text.as_str()) => {
                    // `default:` inside a switch is not a modifier, but that
                    // never reaches member parsing.
                    is_static |= t.is("static");
                    i += 1;
                }
                _ => return (i, is_static),
            }
        }
    }

    fn parse_declarations(&mut self) -> PResult<Vec<AstNode>> {
        let mut out = Vec::new();
        while let Some(t) = self.peek() {
            if t.is("package") || t.is("import") {
                self.scan_to_semicolon()?;
                continue;
            }
            if t.is(";") {
                self.pos += 1;
                continue;
            }
            let start = self.pos;
            self.pos = self.skip_modifiers_from(self.pos).0;
            if self.peek_is("class") || self.peek_is("interface") {
                out.push(self.parse_class(start)?);
            } else {
                return Err(self.err_at(start, "unsupported top-level construct"));
            }
        }
        Ok(out)
    }

    fn parse_class(&mut self, start: usize) -> PResult<AstNode> {
        let kw = self.pos;
        self.pos += 1;
        if !self.peek().is_some_and(Token::is_ident) {
            return Err(self.err_here("expected type name"));
        }
        while self.peek().is_some_and(|t| !t.is("{")) {
            if self.peek_is(";") || self.peek_is("}") {
                return Err(self.err_here("expected `{` after type header"));
            }
            self.pos += 1;
        }
        let value = self.render(kw, self.pos);
        self.expect("{")?;
        let members = self.parse_members()?;
        let close = self.expect("}")?;
        Ok(AstNode::new(EntityKind::Class, value, self.span(start, close)).with_children(members))
    }

    fn parse_members(&mut self) -> PResult<Vec<AstNode>> {
        let mut out = Vec::new();
        loop {
            match self.peek() {
                None => return Err(self.err_here("unbalanced braces: expected `}`")),
                Some(t) if t.is("}") => return Ok(out),
                Some(t) if t.is(";") => {
                    self.pos += 1;
                    continue;
                }
                Some(_) => {}
            }
            let start = self.pos;
            let (after, is_static) = self.skip_modifiers_from(self.pos);
            self.pos = after;
            let Some(t) = self.peek() else {
                return Err(self.err_here("unexpected end of input in class body"));
            };
            if t.is("class") || t.is("interface") {
                out.push(self.parse_class(start)?);
            } else if t.is("enum") || t.is("record") || t.is("@") {
                return Err(self.err_here(format!("unsupported member declaration `{}`", t.text)));
            } else if t.is("{") {
                let (children, close) = self.parse_braced()?;
                let value = if is_static { "static" } else { "" };
                out.push(
                    AstNode::new(EntityKind::Block, value, self.span(start, close)).with_children(children),
                );
            } else {
                out.push(self.parse_method_or_field(start)?);
            }
        }
    }

    fn parse_method_or_field(&mut self, start: usize) -> PResult<AstNode> {
        let decl = self.pos;
        let mut i = decl;
        let mut angle = 0usize;
        let is_method = loop {
            let Some(t) = self.toks.get(i) else {
                return Err(self.err_at(i, "unexpected end of input in member declaration"));
            };
            match t.text.as_str() {
                "<" => angle += 1,
                ">" => angle = angle.saturating_sub(1),
                ">>" => angle = angle.saturating_sub(2),
                ">>>" => angle = angle.saturating_sub(3),
                "(" if angle == 0 => break true,
                "=" | ";" | "," if angle == 0 => break false,
                "{" | "}" => return Err(self.err_at(i, "unsupported member declaration")),
                _ => {}
            }
            i += 1;
        };
        if !is_method {
            let semi = self.scan_to_semicolon()?;
            let value = self.render(decl, semi + 1);
            return Ok(AstNode::new(EntityKind::FieldDeclaration, value, self.span(start, semi)));
        }
        let paren = i;
        if paren == decl || !self.toks[paren - 1].is_ident() {
            return Err(self.err_at(paren, "expected method name before `(`"));
        }
        let name = self.toks[paren - 1].text.clone();
        let ret = self.render(decl, paren - 1);
        self.pos = paren;
        let (open, close) = self.parse_paren_group()?;
        let params: Vec<String> = split_top_level(&self.toks[open + 1..close])
            .into_iter()
            .map(param_type)
            .collect();
        let params = params.join(", ");
        let signature = if ret.is_empty() {
            format!("{name}({params})")
        } else {
            format!("{ret} {name}({params})")
        };
        loop {
            match self.peek() {
                None => return Err(self.err_here("unexpected end of input after method header")),
                Some(t) if t.is("{") => {
                    let (children, close) = self.parse_braced()?;
                    return Ok(AstNode::new(
                        EntityKind::MethodDeclaration,
                        signature,
                        self.span(start, close),
                    )
                    .with_children(children));
                }
                Some(t) if t.is(";") => {
                    let semi = self.pos;
                    self.pos += 1;
                    return Ok(AstNode::new(EntityKind::MethodDeclaration, signature, self.span(start, semi)));
                }
                Some(t) if t.is("}") => return Err(self.err_here("expected method body")),
                Some(_) => self.pos += 1,
            }
        }
    }

    /// Parses `{ statements }`, returning the statements and the index of the
    /// closing brace.
    fn parse_braced(&mut self) -> PResult<(Vec<AstNode>, usize)> {
        self.expect("{")?;
        let mut out = Vec::new();
        loop {
            match self.peek() {
                None => return Err(self.err_here("unbalanced braces: expected `}`")),
                Some(t) if t.is("}") => {
                    self.pos += 1;
                    return Ok((out, self.pos - 1));
                }
                Some(_) => out.extend(self.parse_statement()?),
            }
        }
    }

    fn parse_statements_until_eof(&mut self) -> PResult<Vec<AstNode>> {
        let mut out = Vec::new();
        while self.peek().is_some() {
            out.extend(self.parse_statement()?);
        }
        Ok(out)
    }

    /// Returns the index of the `)` matching the `(` at the cursor and moves
    /// past it.
    fn parse_paren_group(&mut self) -> PResult<(usize, usize)> {
        let open = self.expect("(")?;
        let mut depth = 1usize;
        while let Some(t) = self.peek() {
            if t.is("(") {
                depth += 1;
            } else if t.is(")") {
                depth -= 1;
                if depth == 0 {
                    self.pos += 1;
                    return Ok((open, self.pos - 1));
                }
            }
            self.pos += 1;
        }
        Err(self.err_at(open, "unbalanced parentheses"))
    }

    fn scan_to_semicolon(&mut self) -> PResult<usize> {
        let start = self.pos;
        let mut depth = 0usize;
        while let Some(t) = self.peek() {
            match t.text.as_str() {
                "(" | "[" | "{" => depth += 1,
                ")" | "]" | "}" if depth == 0 => {
                    return Err(self.err_here(format!("expected `;` before `{}`", t.text)));
                }
                ")" | "]" | "}" => depth -= 1,
                ";" if depth == 0 => {
                    self.pos += 1;
                    return Ok(self.pos - 1);
                }
                _ => {}
            }
            self.pos += 1;
        }
        if depth > 0 {
            Err(self.err_at(start, "unbalanced braces in statement"))
        } else {
            Err(self.err_here("expected `;`, found end of input"))
        }
    }

    fn condition(&self, open: usize, close: usize) -> PResult<AstNode> {
        if open + 1 == close {
            return Err(self.err_at(open, "empty condition"));
        }
        Ok(AstNode::new(
            EntityKind::ConditionExpression,
            self.render(open + 1, close),
            self.span(open + 1, close - 1),
        ))
    }

    /// Body of a control structure: either a braced block or one statement.
    /// Returns the statements and the first/last token indices.
    fn parse_branch(&mut self) -> PResult<(Vec<AstNode>, usize, usize)> {
        let first = self.pos;
        if self.peek().is_none() {
            return Err(self.err_here("expected statement, found end of input"));
        }
        if self.peek_is("{") {
            let (children, close) = self.parse_braced()?;
            Ok((children, first, close))
        } else {
            let stmt = self.parse_statement()?;
            Ok((stmt.into_iter().collect(), first, self.pos - 1))
        }
    }

    fn parse_statement(&mut self) -> PResult<Option<AstNode>> {
        let Some(t) = self.peek() else {
            return Err(self.err_here("expected statement, found end of input"));
        };
        let start = self.pos;
        let text = t.text.clone();
        let is_ident = t.is_ident();
        let node = match text.as_str() {
            ";" => {
                self.pos += 1;
                return Ok(None);
            }
            "{" => {
                let (children, close) = self.parse_braced()?;
                AstNode::new(EntityKind::Block, "", self.span(start, close)).with_children(children)
            }
            "if" => self.parse_if()?,
            "for" | "while" => self.parse_loop()?,
            "do" => self.parse_do()?,
            "switch" => self.parse_switch()?,
            "try" => self.parse_try()?,
            "synchronized" if self.at_is(start + 1, "(") => {
                self.pos += 1;
                let (open, close) = self.parse_paren_group()?;
                let value = format!("synchronized ({})", self.render(open + 1, close));
                let (children, end) = self.parse_braced()?;
                AstNode::new(EntityKind::Block, value, self.span(start, end)).with_children(children)
            }
            "return" => self.simple(EntityKind::ReturnStatement)?,
            "break" => self.simple(EntityKind::BreakStatement)?,
            "continue" => self.simple(EntityKind::ContinueStatement)?,
            "throw" => self.simple(EntityKind::ThrowStatement)?,
            "}" => return Err(self.err_here("unbalanced braces: unexpected `}`")),
            "else" => return Err(self.err_here("`else` without `if`")),
            "case" | "default" if !self.at_is(start + 1, ".") => {
                return Err(self.err_here(format!("`{text}` outside of switch")))
            }
            "catch" | "finally" => return Err(self.err_here(format!("`{text}` without `try`"))),
            "class" | "interface" | "enum" | "record" => {
                return Err(self.err_here("unsupported local type declaration"))
            }
            _ if is_ident && self.at_is(start + 1, ":") && !self.at_is(start + 2, ":") => {
                // Labels carry no statement of their own.
                self.pos += 2;
                return self.parse_statement();
            }
            _ => {
                let semi = self.scan_to_semicolon()?;
                let kind = classify(&self.toks[start..semi]);
                AstNode::new(kind, self.render(start, semi + 1), self.span(start, semi))
            }
        };
        Ok(Some(node))
    }

    fn simple(&mut self, kind: EntityKind) -> PResult<AstNode> {
        let start = self.pos;
        let semi = self.scan_to_semicolon()?;
        Ok(AstNode::new(kind, self.render(start, semi + 1), self.span(start, semi)))
    }

    fn parse_if(&mut self) -> PResult<AstNode> {
        let kw = self.pos;
        self.pos += 1;
        let (open, close) = self.parse_paren_group()?;
        let cond = self.condition(open, close)?;
        let (then_stmts, first, last) = self.parse_branch()?;
        let value = cond.value.clone();
        let mut children = vec![
            cond,
            AstNode::new(EntityKind::Then, "", self.span(first, last)).with_children(then_stmts),
        ];
        if self.peek_is("else") {
            let else_kw = self.pos;
            self.pos += 1;
            let (stmts, _, last) = self.parse_branch()?;
            children.push(AstNode::new(EntityKind::Else, "else", self.span(else_kw, last)).with_children(stmts));
        }
        Ok(AstNode::new(EntityKind::If, value, self.span(kw, self.pos - 1)).with_children(children))
    }

    fn parse_loop(&mut self) -> PResult<AstNode> {
        let kw = self.pos;
        let kind = if self.toks[kw].is("for") {
            EntityKind::For
        } else {
            EntityKind::While
        };
        self.pos += 1;
        let (open, close) = self.parse_paren_group()?;
        let cond = self.condition(open, close)?;
        let value = cond.value.clone();
        let (body, _, _) = self.parse_branch()?;
        let mut children = vec![cond];
        children.extend(body);
        Ok(AstNode::new(kind, value, self.span(kw, self.pos - 1)).with_children(children))
    }

    fn parse_do(&mut self) -> PResult<AstNode> {
        let kw = self.pos;
        self.pos += 1;
        let (mut children, _, _) = self.parse_branch()?;
        self.expect("while")?;
        let (open, close) = self.parse_paren_group()?;
        let cond = self.condition(open, close)?;
        let semi = self.expect(";")?;
        let value = cond.value.clone();
        children.push(cond);
        Ok(AstNode::new(EntityKind::DoWhile, value, self.span(kw, semi)).with_children(children))
    }

    fn parse_switch(&mut self) -> PResult<AstNode> {
        let kw = self.pos;
        self.pos += 1;
        let (open, close) = self.parse_paren_group()?;
        let cond = self.condition(open, close)?;
        let value = cond.value.clone();
        let mut children = vec![cond];
        self.expect("{")?;
        loop {
            let Some(t) = self.peek() else {
                return Err(self.err_here("unbalanced braces: expected `}`"));
            };
            if t.is("}") {
                self.pos += 1;
                break;
            }
            if !(t.is("case") || t.is("default")) {
                return Err(self.err_here("statement outside of case label"));
            }
            let label = self.pos;
            let mut depth = 0usize;
            let colon = loop {
                let Some(t) = self.peek() else {
                    return Err(self.err_at(label, "unterminated case label"));
                };
                match t.text.as_str() {
                    "(" | "[" => depth += 1,
                    ")" | "]" => depth = depth.saturating_sub(1),
                    ":" if depth == 0 => break self.pos,
                    "->" => return Err(self.err_here("unsupported arrow-form case label")),
                    "{" | "}" | ";" => return Err(self.err_here("expected `:` after case label")),
                    _ => {}
                }
                self.pos += 1;
            };
            self.pos += 1;
            let mut stmts = Vec::new();
            while let Some(t) = self.peek() {
                if t.is("}") || ((t.is("case") || t.is("default")) && !self.at_is(self.pos + 1, ".")) {
                    break;
                }
                stmts.extend(self.parse_statement()?);
            }
            let value = format!("{}:", self.render(label, colon));
            children.push(
                AstNode::new(EntityKind::SwitchCase, value, self.span(label, self.pos - 1)).with_children(stmts),
            );
        }
        Ok(AstNode::new(EntityKind::Switch, value, self.span(kw, self.pos - 1)).with_children(children))
    }

    fn parse_try(&mut self) -> PResult<AstNode> {
        let kw = self.pos;
        self.pos += 1;
        let value = if self.peek_is("(") {
            let (open, close) = self.parse_paren_group()?;
            format!("try ({})", self.render(open + 1, close))
        } else {
            "try".to_string()
        };
        let (mut children, _) = self.parse_braced()?;
        while self.peek_is("catch") {
            let c = self.pos;
            self.pos += 1;
            let (open, close) = self.parse_paren_group()?;
            let param = self.render(open + 1, close);
            let (stmts, end) = self.parse_braced()?;
            children.push(AstNode::new(EntityKind::CatchClause, param, self.span(c, end)).with_children(stmts));
        }
        if self.peek_is("finally") {
            let f = self.pos;
            self.pos += 1;
            let (stmts, end) = self.parse_braced()?;
            children.push(AstNode::new(EntityKind::Finally, "finally", self.span(f, end)).with_children(stmts));
        }
        Ok(AstNode::new(EntityKind::Try, value, self.span(kw, self.pos - 1)).with_children(children))
    }
}

fn split_top_level(toks: &[Token]) -> Vec<&[Token]> {
    let mut out = Vec::new();
    if toks.is_empty() {
        return out;
    }
    let (mut depth, mut angle, mut from) = (0usize, 0usize, 0usize);
    for (i, t) in toks.iter().enumerate() {
        match t.text.as_str() {
            "(" | "[" => depth += 1,
            ")" | "]" => depth = depth.saturating_sub(1),
            "<" => angle += 1,
            ">" => angle = angle.saturating_sub(1),
            ">>" => angle = angle.saturating_sub(2),
            ">>>" => angle = angle.saturating_sub(3),
            "," if depth == 0 && angle == 0 => {
                out.push(&toks[from..i]);
                from = i + 1;
            }
            _ => {}
        }
    }
    out.push(&toks[from..]);
    out
}

/// Type part of a formal parameter: annotations, `final` and the name dropped.
fn param_type(toks: &[Token]) -> String {
    let mut kept: Vec<Token> = Vec::with_capacity(toks.len());
    let mut i = 0;
    while i < toks.len() {
        let t = &toks[i];
        if t.is("@") {
            i += 1;
            if i < toks.len() {
                i += 1;
            }
            while i + 1 < toks.len() && toks[i].is(".") {
                i += 2;
            }
            if i < toks.len() && toks[i].is("(") {
                let mut depth = 0usize;
                while i < toks.len() {
                    if toks[i].is("(") {
                        depth += 1;
                    } else if toks[i].is(")") {
                        depth -= 1;
                        if depth == 0 {
                            i += 1;
                            break;
                        }
                    }
                    i += 1;
                }
            }
            continue;
        }
        if !t.is("final") {
            kept.push(t.clone());
        }
        i += 1;
    }
    if let Some(name) = kept.iter().rposition(Token::is_ident) {
        if kept.len() > 1 {
            kept.remove(name);
        }
    }
    render(&kept)
}

fn classify(toks: &[Token]) -> EntityKind {
    if toks.first().is_some_and(|t| t.is("final")) || looks_like_declaration(toks) {
        return EntityKind::VariableDeclaration;
    }
    let mut depth = 0usize;
    for t in toks {
        match t.text.as_str() {
            "(" | "[" | "{" => depth += 1,
            ")" | "]" | "}" => depth = depth.saturating_sub(1),
            op if depth == 0 && ASSIGN_OPS.contains(&op) => return EntityKind::Assignment,
            _ => {}
        }
    }
    let incdec = |t: Option<&Token>| t.is_some_and(|t| t.is("++") || t.is("--"));
    if incdec(toks.first()) || incdec(toks.last()) {
        return EntityKind::Assignment;
    }
    EntityKind::MethodInvocation
}

fn looks_like_declaration(toks: &[Token]) -> bool {
    let is_type_ident = |t: &Token| t.is_ident() && !NOT_TYPE_START.contains(&t.text.as_str());
    let mut i = 0;
    if !toks.first().is_some_and(is_type_ident) {
        return false;
    }
    i += 1;
    while i + 1 < toks.len() && toks[i].is(".") && toks[i + 1].is_ident() {
        i += 2;
    }
    if toks.get(i).is_some_and(|t| t.is("<")) {
        let mut depth = 0isize;
        loop {
            let Some(t) = toks.get(i) else {
                return false;
            };
            match t.text.as_str() {
                "<" => depth += 1,
                ">" => depth -= 1,
                ">>" => depth -= 2,
                ">>>" => depth -= 3,
                "," | "." | "?" | "&" | "[" | "]" => {}
                _ if t.is_ident() => {}
                _ => return false,
            }
            i += 1;
            if depth <= 0 {
                break;
            }
        }
    }
    while i + 1 < toks.len() && toks[i].is("[") && toks[i + 1].is("]") {
        i += 2;
    }
    toks.get(i).is_some_and(|t| is_type_ident(t) && t.text != "instanceof")
        && toks
            .get(i + 1)
            .is_none_or(|t| t.is("=") || t.is(",") || t.is("[") || t.is(":"))
}

/// Marks `<`/`>` tokens that delimit type arguments.
fn generic_brackets(toks: &[Token]) -> Vec<bool> {
    let mut marks = vec![false; toks.len()];
    for start in 0..toks.len() {
        if !toks[start].is("<") || marks[start] {
            continue;
        }
        let prev_ok = start == 0 || toks[start - 1].is_ident() || toks[start - 1].is(".");
        if !prev_ok {
            continue;
        }
        let mut depth = 0isize;
        let mut closers = Vec::new();
        let mut ok = false;
        for (j, t) in toks.iter().enumerate().skip(start) {
            match t.text.as_str() {
                "<" => depth += 1,
                ">" => depth -= 1,
                ">>" => depth -= 2,
                ">>>" => depth -= 3,
                "," | "." | "?" | "&" | "[" | "]" => continue,
                _ if t.kind == TokenKind::Ident => continue,
                _ => break,
            }
            closers.push(j);
            if depth <= 0 {
                ok = depth == 0;
                break;
            }
        }
        if ok {
            for j in closers {
                marks[j] = true;
            }
        }
    }
    marks
}

fn is_value_end(t: &Token) -> bool {
    match t.kind {
        TokenKind::Ident => !SPACED_KEYWORDS.contains(&t.text.as_str()),
        TokenKind::Number | TokenKind::Str | TokenKind::Char => true,
        TokenKind::Punct => t.is(")") || t.is("]"),
    }
}

/// Canonical text for a token run: the same tokens always render the same
/// way, whatever whitespace or comments separated them in the source.
pub(crate) fn render(toks: &[Token]) -> String {
    let generic = generic_brackets(toks);
    let mut out = String::new();
    let mut prev_unary = false;
    for (i, t) in toks.iter().enumerate() {
        let unary = match t.text.as_str() {
            "-" | "+" | "++" | "--" => i == 0 || !is_value_end(&toks[i - 1]),
            "!" | "~" => true,
            _ => false,
        };
        if i > 0 {
            let p = &toks[i - 1];
            let tight = prev_unary
                || [";", ",", ")", "]", ".", "::", "..."].contains(&t.text.as_str())
                || ["(", "[", ".", "::", "@"].contains(&p.text.as_str())
                || ((t.is("(") || t.is("[")) && (is_value_end(p) || (generic[i - 1] && !p.is("<"))))
                || ((t.is("++") || t.is("--")) && !unary)
                || (generic[i] && (t.is("<") && (p.is_ident() && !SPACED_KEYWORDS.contains(&p.text.as_str()))))
                || (generic[i] && !t.is("<"))
                || (generic[i - 1] && p.is("<"));
            if !tight {
                out.push(' ');
            }
        }
        out.push_str(&t.text);
        prev_unary = unary;
    }
    normalize_value(&out)
}
