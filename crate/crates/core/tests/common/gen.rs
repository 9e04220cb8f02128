//! Seeded generator of Java-like programs, a printer with optional layout
//! noise, and random edits between revisions.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, PartialEq)]
pub enum Stmt {
    /// Tokens of an expression statement without the `;`.
    Expr(Vec<String>),
    Decl(Vec<String>, String, Vec<String>),
    Return(Option<Vec<String>>),
    Break,
    Continue,
    Throw(String),
    If(Vec<String>, Vec<Stmt>, Option<Vec<Stmt>>),
    For(Vec<String>, Vec<Stmt>),
    While(Vec<String>, Vec<Stmt>),
    Do(Vec<Stmt>, Vec<String>),
    Switch(Vec<String>, Vec<(Option<String>, Vec<Stmt>)>),
    Try(Vec<Stmt>, Vec<(String, Vec<Stmt>)>, Option<Vec<Stmt>>),
    Block(Vec<Stmt>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Method {
    pub ret: Vec<String>,
    pub name: String,
    pub params: Vec<(Vec<String>, String)>,
    pub body: Vec<Stmt>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    pub ty: Vec<String>,
    pub name: String,
    pub init: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Program {
    pub name: String,
    pub fields: Vec<Field>,
    pub methods: Vec<Method>,
}

#[derive(Debug, Clone, Copy)]
pub struct Shape {
    pub methods: (usize, usize),
    pub fields: (usize, usize),
    pub stmts: (usize, usize),
    pub depth: usize,
}

impl Shape {
    pub const SMALL: Shape = Shape {
        methods: (1, 3),
        fields: (0, 2),
        stmts: (1, 4),
        depth: 2,
    };
    /// Roughly a hundred printed lines.
    pub const HUNDRED_LINES: Shape = Shape {
        methods: (3, 4),
        fields: (2, 4),
        stmts: (2, 4),
        depth: 2,
    };
}

const VARS: [&str; 10] = ["a", "b", "count", "total", "items", "i", "n", "x", "result", "flag"];
const CALLS: [&str; 8] = ["update", "log", "check", "process", "reset", "notify", "load", "save"];
const TYPES: [&[&str]; 5] = [&["int"], &["String"], &["long"], &["boolean"], &["List", "<", "Item", ">"]];
const EXCEPTIONS: [&str; 4] = ["IOException", "IllegalStateException", "RuntimeException", "TimeoutException"];

fn toks(parts: &[&str]) -> Vec<String> {
    parts.iter().map(|s| s.to_string()).collect()
}

fn var(r: &mut Rng8) -> String {
    VARS.choose(r).unwrap().to_string()
}

fn atom(r: &mut Rng8) -> Vec<String> {
    match r.gen_range(0..6) {
        0 => vec![r.gen_range(0..100).to_string()],
        1 => vec![format!("\"s {}\"", r.gen_range(0..5))],
        2 => toks(&[&var(r), ".", "size", "(", ")"]),
        3 => toks(&["null"]),
        _ => vec![var(r)],
    }
}

fn expr(r: &mut Rng8) -> Vec<String> {
    let mut e = atom(r);
    if r.gen_bool(0.5) {
        e.push(["+", "-", "*", "/"].choose(r).unwrap().to_string());
        e.extend(atom(r));
    }
    e
}

fn cond(r: &mut Rng8) -> Vec<String> {
    let mut c = match r.gen_range(0..4) {
        0 => toks(&["!", &var(r)]),
        1 => toks(&[&var(r), "!=", "null"]),
        _ => {
            let mut c = vec![var(r)];
            c.push(["<", ">", "<=", ">=", "=="].choose(r).unwrap().to_string());
            c.extend(atom(r));
            c
        }
    };
    if r.gen_bool(0.2) {
        c.push("&&".into());
        c.push(var(r));
    }
    c
}

fn simple(r: &mut Rng8) -> Stmt {
    match r.gen_range(0..10) {
        0 | 1 => {
            let mut e = toks(&[&var(r), ["=", "+=", "-="].choose(r).unwrap()]);
            e.extend(expr(r));
            Stmt::Expr(e)
        }
        2 => Stmt::Expr(toks(&[&var(r), "++"])),
        3 | 4 => {
            let mut e = toks(&[CALLS.choose(r).unwrap(), "("]);
            if r.gen_bool(0.7) {
                e.extend(expr(r));
            }
            e.push(")".into());
            Stmt::Expr(e)
        }
        5 => {
            let mut e = toks(&[&var(r), ".", CALLS.choose(r).unwrap(), "(", &var(r), ")"]);
            if r.gen_bool(0.3) {
                e.splice(0..0, toks(&["this", "."]));
            }
            Stmt::Expr(e)
        }
        6 => Stmt::Decl(toks(TYPES.choose(r).unwrap()), format!("v{}", r.gen_range(0..9)), expr(r)),
        7 => Stmt::Return(r.gen_bool(0.6).then(|| expr(r))),
        8 => match r.gen_range(0..3) {
            0 => Stmt::Break,
            1 => Stmt::Continue,
            _ => Stmt::Throw(EXCEPTIONS.choose(r).unwrap().to_string()),
        },
        _ => Stmt::Expr(toks(&[CALLS.choose(r).unwrap(), "(", &var(r), ",", &var(r), ")"])),
    }
}

pub fn stmts(r: &mut Rng8, shape: &Shape, depth: usize) -> Vec<Stmt> {
    let n = r.gen_range(shape.stmts.0..=shape.stmts.1);
    (0..n).map(|_| stmt(r, shape, depth)).collect()
}

pub fn stmt(r: &mut Rng8, shape: &Shape, depth: usize) -> Stmt {
    if depth >= shape.depth || r.gen_bool(0.6) {
        return simple(r);
    }
    let d = depth + 1;
    match r.gen_range(0..8) {
        0 | 1 => Stmt::If(cond(r), stmts(r, shape, d), r.gen_bool(0.4).then(|| stmts(r, shape, d))),
        2 => Stmt::For(
            toks(&["int", "i", "=", "0", ";", "i", "<", &var(r), ";", "i", "++"]),
            stmts(r, shape, d),
        ),
        3 => Stmt::While(cond(r), stmts(r, shape, d)),
        4 => Stmt::Do(stmts(r, shape, d), cond(r)),
        5 => {
            let k = r.gen_range(1..=3);
            let mut cases: Vec<(Option<String>, Vec<Stmt>)> =
                (0..k).map(|i| (Some(i.to_string()), stmts(r, shape, d))).collect();
            if r.gen_bool(0.5) {
                cases.push((None, stmts(r, shape, d)));
            }
            Stmt::Switch(vec![var(r)], cases)
        }
        6 => {
            let k = r.gen_range(1..=2);
            let names: Vec<String> = EXCEPTIONS.choose_multiple(r, k).map(|e| e.to_string()).collect();
            let catches = names.into_iter().map(|e| (e, stmts(r, shape, d))).collect();
            Stmt::Try(stmts(r, shape, d), catches, r.gen_bool(0.3).then(|| stmts(r, shape, d)))
        }
        _ => Stmt::Block(stmts(r, shape, d)),
    }
}

fn method(r: &mut Rng8, shape: &Shape, name: String) -> Method {
    let ret = if r.gen_bool(0.5) {
        toks(&["void"])
    } else {
        toks(TYPES.choose(r).unwrap())
    };
    let params = (0..r.gen_range(0..3))
        .map(|i| (toks(TYPES.choose(r).unwrap()), format!("p{i}")))
        .collect();
    Method {
        ret,
        name,
        params,
        body: stmts(r, shape, 0),
    }
}

fn field(r: &mut Rng8, name: String) -> Field {
    Field {
        ty: toks(TYPES.choose(r).unwrap()),
        name,
        init: r.gen_bool(0.5).then(|| expr(r)),
    }
}

pub fn program(r: &mut Rng8, shape: &Shape) -> Program {
    let nm = r.gen_range(shape.methods.0..=shape.methods.1);
    let nf = r.gen_range(shape.fields.0..=shape.fields.1);
    Program {
        name: format!("C{}", r.gen_range(0..100)),
        fields: (0..nf).map(|i| field(r, format!("f{i}"))).collect(),
        methods: (0..nm).map(|i| method(r, shape, format!("m{i}"))).collect(),
    }
}

// ---------------------------------------------------------------- printing

/// Token printer. Without noise the output is deterministic and tidy; with
/// noise, spacing, line breaks, indentation, brace placement and comments
/// vary while the token sequence stays the same.
pub struct Printer<'r> {
    out: String,
    indent: usize,
    noise: Option<&'r mut Rng8>,
    prev: Option<String>,
    at_line_start: bool,
}

fn wordy(t: &str) -> bool {
    t.chars().next().is_some_and(|c| c.is_alphanumeric() || c == '_' || c == '"')
        && t.chars().last().is_some_and(|c| c.is_alphanumeric() || c == '_' || c == '"')
}

impl<'r> Printer<'r> {
    pub fn new(noise: Option<&'r mut Rng8>) -> Self {
        Printer {
            out: String::new(),
            indent: 0,
            noise,
            prev: None,
            at_line_start: true,
        }
    }

    fn tight(prev: &str, next: &str) -> bool {
        matches!(next, ";" | "," | ")" | "." | "++" | "--")
            || matches!(prev, "(" | "." | "!")
            || (next == "(" && wordy(prev))
    }

    pub fn tok(&mut self, t: &str) {
        if self.at_line_start {
            let pad = match self.noise.as_deref_mut().map(|r| (r.gen_range(0..10), r.gen_range(0..12))) {
                Some((0..=2, n)) => " ".repeat(n),
                Some((3, n)) => "\t".repeat(n % 3),
                _ => "    ".repeat(self.indent),
            };
            self.out.push_str(&pad);
        } else if let Some(prev) = self.prev.clone() {
            let must_space = wordy(&prev) && wordy(t) || is_op(&prev) && is_op(t);
            let sep = match self.noise.as_deref_mut() {
                None => {
                    if !must_space && Self::tight(&prev, t) {
                        ""
                    } else {
                        " "
                    }
                }
                Some(r) => match r.gen_range(0..20) {
                    0 => "\n      ",
                    1 => " /* note */ ",
                    2 => "\t",
                    3 | 4 => "  ",
                    5..=10 if !must_space => "",
                    _ => " ",
                },
            };
            self.out.push_str(sep);
        }
        self.out.push_str(t);
        self.prev = Some(t.to_string());
        self.at_line_start = false;
    }

    pub fn toks(&mut self, ts: &[String]) {
        for t in ts {
            self.tok(t);
        }
    }

    pub fn nl(&mut self) {
        if let Some(r) = self.noise.as_deref_mut() {
            match r.gen_range(0..12) {
                0 => self.out.push_str(" // trailing remark"),
                1 => self.out.push('\n'),
                2 => self.out.push_str("\n/* block\n   comment */"),
                3 => self.out.push_str("   "),
                _ => {}
            }
        }
        self.out.push('\n');
        self.at_line_start = true;
    }

    /// `{` then a line break; with noise the brace may go on its own line.
    fn open(&mut self) {
        if let Some(r) = self.noise.as_deref_mut() {
            if r.gen_bool(0.25) {
                self.nl();
            }
        }
        self.tok("{");
        self.nl();
        self.indent += 1;
    }

    fn close(&mut self) {
        self.indent -= 1;
        self.tok("}");
    }

    pub fn finish(self) -> String {
        self.out
    }

    fn block(&mut self, body: &[Stmt]) {
        self.open();
        for s in body {
            self.stmt(s);
        }
        self.close();
    }

    pub fn stmt(&mut self, s: &Stmt) {
        match s {
            Stmt::Expr(e) => {
                self.toks(e);
                self.tok(";");
            }
            Stmt::Decl(ty, name, init) => {
                self.toks(ty);
                self.tok(name);
                self.tok("=");
                self.toks(init);
                self.tok(";");
            }
            Stmt::Return(e) => {
                self.tok("return");
                if let Some(e) = e {
                    self.toks(e);
                }
                self.tok(";");
            }
            Stmt::Break => {
                self.tok("break");
                self.tok(";");
            }
            Stmt::Continue => {
                self.tok("continue");
                self.tok(";");
            }
            Stmt::Throw(ex) => {
                for t in ["throw", "new", ex, "(", ")", ";"] {
                    self.tok(t);
                }
            }
            Stmt::If(c, then, els) => {
                self.tok("if");
                self.tok("(");
                self.toks(c);
                self.tok(")");
                self.block(then);
                if let Some(els) = els {
                    self.tok("else");
                    self.block(els);
                }
            }
            Stmt::For(header, body) => {
                self.tok("for");
                self.tok("(");
                self.toks(header);
                self.tok(")");
                self.block(body);
            }
            Stmt::While(c, body) => {
                self.tok("while");
                self.tok("(");
                self.toks(c);
                self.tok(")");
                self.block(body);
            }
            Stmt::Do(body, c) => {
                self.tok("do");
                self.block(body);
                self.tok("while");
                self.tok("(");
                self.toks(c);
                self.tok(")");
                self.tok(";");
            }
            Stmt::Switch(e, cases) => {
                self.tok("switch");
                self.tok("(");
                self.toks(e);
                self.tok(")");
                self.open();
                for (label, body) in cases {
                    match label {
                        Some(l) => {
                            self.tok("case");
                            self.tok(l);
                        }
                        None => self.tok("default"),
                    }
                    self.tok(":");
                    self.nl();
                    self.indent += 1;
                    for s in body {
                        self.stmt(s);
                    }
                    self.indent -= 1;
                }
                self.close();
            }
            Stmt::Try(body, catches, fin) => {
                self.tok("try");
                self.block(body);
                for (ex, body) in catches {
                    for t in ["catch", "(", ex, "e", ")"] {
                        self.tok(t);
                    }
                    self.block(body);
                }
                if let Some(fin) = fin {
                    self.tok("finally");
                    self.block(fin);
                }
            }
            Stmt::Block(body) => self.block(body),
        }
        self.nl();
    }

    pub fn program(&mut self, p: &Program) {
        for t in ["package", "demo", ";"] {
            self.tok(t);
        }
        self.nl();
        self.nl();
        for t in ["public", "class", &p.name] {
            self.tok(t);
        }
        self.open();
        for f in &p.fields {
            self.tok("private");
            self.toks(&f.ty);
            self.tok(&f.name);
            if let Some(init) = &f.init {
                self.tok("=");
                self.toks(init);
            }
            self.tok(";");
            self.nl();
        }
        for m in &p.methods {
            self.nl();
            self.toks(&m.ret);
            self.tok(&m.name);
            self.tok("(");
            for (i, (ty, name)) in m.params.iter().enumerate() {
                if i > 0 {
                    self.tok(",");
                }
                self.toks(ty);
                self.tok(name);
            }
            self.tok(")");
            self.block(&m.body);
            self.nl();
        }
        self.close();
        self.nl();
    }
}

fn is_op(t: &str) -> bool {
    t.chars().all(|c| "+-*/<>=!&|".contains(c))
}

pub fn print(p: &Program) -> String {
    let mut pr = Printer::new(None);
    pr.program(p);
    pr.finish()
}

pub fn print_noisy(p: &Program, r: &mut Rng8) -> String {
    let mut pr = Printer::new(Some(r));
    pr.program(p);
    pr.finish()
}

// ---------------------------------------------------------------- editing

fn child_lists(s: &Stmt) -> Vec<&Vec<Stmt>> {
    match s {
        Stmt::If(_, t, e) => std::iter::once(t).chain(e.iter()).collect(),
        Stmt::For(_, b) | Stmt::While(_, b) | Stmt::Do(b, _) | Stmt::Block(b) => vec![b],
        Stmt::Switch(_, cases) => cases.iter().map(|(_, b)| b).collect(),
        Stmt::Try(b, catches, fin) => std::iter::once(b)
            .chain(catches.iter().map(|(_, b)| b))
            .chain(fin.iter())
            .collect(),
        _ => vec![],
    }
}

fn child_lists_mut(s: &mut Stmt) -> Vec<&mut Vec<Stmt>> {
    match s {
        Stmt::If(_, t, e) => std::iter::once(t).chain(e.iter_mut()).collect(),
        Stmt::For(_, b) | Stmt::While(_, b) | Stmt::Do(b, _) | Stmt::Block(b) => vec![b],
        Stmt::Switch(_, cases) => cases.iter_mut().map(|(_, b)| b).collect(),
        Stmt::Try(b, catches, fin) => std::iter::once(b)
            .chain(catches.iter_mut().map(|(_, b)| b))
            .chain(fin.iter_mut())
            .collect(),
        _ => vec![],
    }
}

/// Address of a statement list: method index, then (statement, child list)
/// steps.
pub type ListPath = (usize, Vec<(usize, usize)>);

fn collect_paths(body: &[Stmt], prefix: &mut Vec<(usize, usize)>, m: usize, out: &mut Vec<ListPath>) {
    out.push((m, prefix.clone()));
    for (i, s) in body.iter().enumerate() {
        for (slot, l) in child_lists(s).into_iter().enumerate() {
            prefix.push((i, slot));
            collect_paths(l, prefix, m, out);
            prefix.pop();
        }
    }
}

pub fn list_paths(p: &Program) -> Vec<ListPath> {
    let mut out = Vec::new();
    for (m, meth) in p.methods.iter().enumerate() {
        collect_paths(&meth.body, &mut Vec::new(), m, &mut out);
    }
    out
}

fn descend<'a>(body: &'a mut Vec<Stmt>, steps: &[(usize, usize)]) -> &'a mut Vec<Stmt> {
    match steps.split_first() {
        None => body,
        Some((&(i, slot), rest)) => {
            let l = child_lists_mut(&mut body[i]).into_iter().nth(slot).expect("valid path");
            descend(l, rest)
        }
    }
}

fn descend_ref<'a>(body: &'a Vec<Stmt>, steps: &[(usize, usize)]) -> &'a Vec<Stmt> {
    match steps.split_first() {
        None => body,
        Some((&(i, slot), rest)) => descend_ref(child_lists(&body[i])[slot], rest),
    }
}

pub fn list_ref<'a>(p: &'a Program, path: &ListPath) -> &'a Vec<Stmt> {
    descend_ref(&p.methods[path.0].body, &path.1)
}

pub fn list_mut<'a>(p: &'a mut Program, path: &ListPath) -> &'a mut Vec<Stmt> {
    descend(&mut p.methods[path.0].body, &path.1)
}

/// Paths to every statement: (list, index).
fn stmt_slots(p: &Program) -> Vec<(ListPath, usize)> {
    let mut out = Vec::new();
    for path in list_paths(p) {
        let n = list_ref(p, &path).len();
        out.extend((0..n).map(|i| (path.clone(), i)));
    }
    out
}

fn tweak_tokens(r: &mut Rng8, ts: &mut Vec<String>) {
    let words: Vec<usize> = (0..ts.len()).filter(|&i| wordy(&ts[i])).collect();
    match words.choose(r) {
        Some(&i) => ts[i] = if ts[i].parse::<i64>().is_ok() { r.gen_range(100..200).to_string() } else { var(r) },
        None => ts.push("x".into()),
    }
}

/// Applies one random edit. Returns a short label for diagnostics.
pub fn mutate(p: &mut Program, r: &mut Rng8, shape: &Shape) -> &'static str {
    if p.methods.is_empty() {
        p.methods.push(method(r, shape, "m0".into()));
        return "add method";
    }
    let slots = stmt_slots(p);
    let lists = list_paths(p);
    for _ in 0..8 {
        match r.gen_range(0..16) {
            0 | 1 => {
                let path = lists.choose(r).unwrap();
                let s = stmt(r, shape, path.1.len());
                let l = list_mut(p, path);
                let at = r.gen_range(0..=l.len());
                l.insert(at, s);
                return "insert";
            }
            2 | 3 if !slots.is_empty() => {
                let (path, i) = slots.choose(r).unwrap();
                list_mut(p, path).remove(*i);
                return "delete";
            }
            4 | 5 if !slots.is_empty() => {
                let (path, i) = slots.choose(r).unwrap();
                let s = &mut list_mut(p, path)[*i];
                match s {
                    Stmt::Expr(e) | Stmt::Decl(_, _, e) | Stmt::Return(Some(e)) => tweak_tokens(r, e),
                    Stmt::If(c, _, _) | Stmt::While(c, _) | Stmt::Do(_, c) => *c = cond(r),
                    Stmt::Switch(e, _) => *e = vec![var(r)],
                    Stmt::For(h, _) => h[7] = var(r),
                    _ => continue,
                }
                return "update";
            }
            6 if !slots.is_empty() => {
                let (path, i) = slots.choose(r).unwrap();
                let l = list_mut(p, path);
                let take = r.gen_range(1..=2).min(l.len() - i);
                let run: Vec<Stmt> = l.drain(*i..*i + take).collect();
                l.insert(*i, Stmt::If(cond(r), run, None));
                return "wrap in if";
            }
            7 if !slots.is_empty() => {
                let (path, i) = slots.choose(r).unwrap();
                let l = list_mut(p, path);
                if let Stmt::If(_, then, None) = &l[*i] {
                    let then = then.clone();
                    l.splice(*i..=*i, then);
                    return "unwrap if";
                }
            }
            8 if slots.len() > 1 => {
                let (from, i) = slots.choose(r).unwrap().clone();
                let s = list_mut(p, &from).remove(i);
                let lists = list_paths(p);
                let same: Vec<&ListPath> = lists.iter().filter(|l| l.0 == from.0).collect();
                let to = same.choose(r).unwrap();
                let l = list_mut(p, to);
                let at = r.gen_range(0..=l.len());
                l.insert(at, s);
                return "move";
            }
            9 if !slots.is_empty() => {
                let (path, i) = slots.choose(r).unwrap();
                let l = list_mut(p, path);
                if i + 1 < l.len() {
                    l.swap(*i, i + 1);
                    return "swap";
                }
            }
            10 if !slots.is_empty() => {
                let (path, i) = slots.choose(r).unwrap();
                let depth = path.1.len() + 1;
                if let Stmt::If(_, _, els) = &mut list_mut(p, path)[*i] {
                    *els = match els {
                        Some(_) => None,
                        None => Some(stmts(r, shape, depth)),
                    };
                    return "toggle else";
                }
            }
            11 => {
                let name = format!("m{}", p.methods.len() + r.gen_range(10..99));
                if p.methods.iter().all(|m| m.name != name) {
                    let at = r.gen_range(0..=p.methods.len());
                    p.methods.insert(at, method(r, shape, name));
                    return "add method";
                }
            }
            12 if p.methods.len() > 1 => {
                let at = r.gen_range(0..p.methods.len());
                p.methods.remove(at);
                return "remove method";
            }
            13 => {
                let m = p.methods.choose_mut(r).unwrap();
                if r.gen_bool(0.5) {
                    m.ret = toks(TYPES.choose(r).unwrap());
                } else {
                    let n = m.params.len();
                    m.params.push((toks(TYPES.choose(r).unwrap()), format!("p{n}")));
                }
                return "change signature";
            }
            14 => {
                if !p.fields.is_empty() && r.gen_bool(0.5) {
                    let at = r.gen_range(0..p.fields.len());
                    if r.gen_bool(0.5) {
                        p.fields.remove(at);
                        return "remove field";
                    }
                    p.fields[at].init = Some(expr(r));
                    return "change field";
                }
                let name = format!("g{}", r.gen_range(0..1000));
                if p.fields.iter().all(|f| f.name != name) {
                    let at = r.gen_range(0..=p.fields.len());
                    p.fields.insert(at, field(r, name));
                    return "add field";
                }
            }
            _ if !slots.is_empty() => {
                let (path, i) = slots.choose(r).unwrap();
                let depth = path.1.len() + 1;
                match &mut list_mut(p, path)[*i] {
                    Stmt::Try(_, catches, _) => {
                        if catches.len() > 1 && r.gen_bool(0.5) {
                            catches.pop();
                        } else {
                            catches.push(("Exception".into(), stmts(r, shape, depth)));
                        }
                        return "edit catch";
                    }
                    Stmt::Switch(_, cases) => {
                        if cases.len() > 1 && r.gen_bool(0.5) {
                            cases.remove(0);
                        } else {
                            cases.insert(0, (Some("9".into()), stmts(r, shape, depth)));
                        }
                        return "edit case";
                    }
                    _ => {}
                }
            }
            _ => {}
        }
    }
    let at = r.gen_range(0..=p.methods[0].body.len());
    p.methods[0].body.insert(at, Stmt::Return(None));
    "insert return"
}

/// A program and an edited copy.
pub fn pair(seed: u64, shape: &Shape, edits: usize) -> (Program, Program) {
    let mut r = rng(seed);
    let old = program(&mut r, shape);
    let mut new = old.clone();
    for _ in 0..edits {
        mutate(&mut new, &mut r, shape);
    }
    (old, new)
}
