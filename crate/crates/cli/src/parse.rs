//! Recursive-descent reader for scripts. Names, argument kinds and the grading of
//! every polynomial are checked here, so execution only meets mathematical errors.

use std::collections::HashMap;
use std::fmt;

use linkage_core::algebra::{parse_poly, Field, Vector};
use linkage_core::harness::{CorpusSize, TheoremId};

use crate::ast::*;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub pos: Pos,
    pub message: String,
    /// Tokens that would have been accepted here; empty when not meaningful.
    pub expected: Vec<String>,
}

impl ParseError {
    /// The message and expected tokens, without the position.
    pub fn brief(&self) -> String {
        if self.expected.is_empty() {
            self.message.clone()
        } else {
            format!(
                "{} (expected one of: {})",
                self.message,
                self.expected.join(", ")
            )
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.pos.line,
            self.pos.col,
            self.brief()
        )
    }
}

impl std::error::Error for ParseError {}

type PResult<T> = Result<T, ParseError>;

#[derive(Clone, Debug)]
enum Sym {
    Ring { field: Field, vars: Vec<String> },
    Module { ring: String },
}

/// What the names declared so far refer to.
#[derive(Clone, Debug, Default)]
pub struct Scope {
    syms: HashMap<String, Sym>,
}

const STATEMENTS: &[&str] = &["ring", "module", "let", "assert", "print", "check", "suite"];
const BIND_KEYS: &[&str] = &["M", "C", "n", "I", "a", "c1", "c2"];

pub fn parse(src: &str) -> PResult<Script> {
    parse_in(src, &mut Scope::default())
}

/// Parses `src` with the names already in `scope`, adding the new ones.
pub fn parse_in(src: &str, scope: &mut Scope) -> PResult<Script> {
    let mut p = Parser { src, pos: 0, scope };
    let mut script = Script::default();
    loop {
        p.skip();
        if p.pos >= src.len() {
            return Ok(script);
        }
        script.positions.push(p.here());
        script.stmts.push(p.statement()?);
    }
}

struct Parser<'a, 's> {
    src: &'a str,
    pos: usize,
    scope: &'s mut Scope,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

impl Parser<'_, '_> {
    fn pos_of(&self, byte: usize) -> Pos {
        let before = &self.src[..byte.min(self.src.len())];
        let line = before.matches('\n').count() + 1;
        let col = match before.rfind('\n') {
            Some(i) => before[i + 1..].chars().count() + 1,
            None => before.chars().count() + 1,
        };
        Pos { line, col }
    }

    fn here(&self) -> Pos {
        self.pos_of(self.pos)
    }

    fn err_at(&self, byte: usize, message: impl Into<String>, expected: &[&str]) -> ParseError {
        ParseError {
            pos: self.pos_of(byte),
            message: message.into(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip(&mut self) {
        loop {
            let rest = self.rest();
            let trimmed = rest.trim_start();
            let ws = rest.len() - trimmed.len();
            let comment = if trimmed.starts_with('#') {
                Some(trimmed.find('\n').unwrap_or(trimmed.len()))
            } else {
                None
            };
            self.pos += ws;
            match comment {
                Some(len) => self.pos += len,
                None => return,
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip();
        self.rest().chars().next()
    }

    fn found(&mut self) -> String {
        match self.peek() {
            None => "end of input".into(),
            Some(c) if is_ident_start(c) => format!("'{}'", self.peek_ident().unwrap()),
            Some(c) => format!("'{c}'"),
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> PResult<()> {
        if self.eat(tok) {
            return Ok(());
        }
        let found = self.found();
        Err(self.err_at(
            self.pos,
            format!("unexpected {found}"),
            &[&format!("'{tok}'")],
        ))
    }

    fn peek_ident(&mut self) -> Option<String> {
        self.skip();
        let rest = self.rest();
        if !rest.starts_with(is_ident_start) {
            return None;
        }
        let end = rest.find(|c: char| !is_ident_char(c)).unwrap_or(rest.len());
        Some(rest[..end].to_string())
    }

    fn ident(&mut self, what: &str) -> PResult<String> {
        match self.peek_ident() {
            Some(id) => {
                self.pos += id.len();
                Ok(id)
            }
            None => {
                let found = self.found();
                Err(self.err_at(self.pos, format!("unexpected {found}"), &[what]))
            }
        }
    }

    fn keyword(&mut self, kw: &str) -> PResult<()> {
        let start = self.pos;
        match self.peek_ident() {
            Some(id) if id == kw => {
                self.pos += id.len();
                Ok(())
            }
            _ => {
                let found = self.found();
                let _ = start;
                Err(self.err_at(
                    self.pos,
                    format!("unexpected {found}"),
                    &[&format!("'{kw}'")],
                ))
            }
        }
    }

    fn int(&mut self) -> PResult<i64> {
        self.skip();
        let start = self.pos;
        let rest = self.rest();
        let sign = usize::from(rest.starts_with('-'));
        let digits = rest[sign..]
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(rest.len() - sign);
        if digits == 0 {
            let found = self.found();
            return Err(self.err_at(start, format!("unexpected {found}"), &["an integer"]));
        }
        let text = &rest[..sign + digits];
        let v = text
            .parse()
            .map_err(|_| self.err_at(start, format!("integer {text} is out of range"), &[]))?;
        self.pos += sign + digits;
        Ok(v)
    }

    fn fresh_name(&mut self) -> PResult<String> {
        self.skip();
        let start = self.pos;
        let name = self.ident("a name")?;
        if STATEMENTS.contains(&name.as_str()) {
            return Err(self.err_at(start, format!("'{name}' is a keyword"), &[]));
        }
        if self.scope.syms.contains_key(&name) {
            return Err(self.err_at(start, format!("'{name}' is already declared"), &[]));
        }
        Ok(name)
    }

    fn ring_ref(&mut self) -> PResult<String> {
        self.skip();
        let start = self.pos;
        let name = self.ident("a ring name")?;
        match self.scope.syms.get(&name) {
            Some(Sym::Ring { .. }) => Ok(name),
            Some(_) => Err(self.err_at(start, format!("'{name}' is a module, not a ring"), &[])),
            None => Err(self.err_at(start, format!("undeclared ring '{name}'"), &[])),
        }
    }

    fn ring_sym(&self, name: &str) -> (Field, Vec<String>) {
        match &self.scope.syms[name] {
            Sym::Ring { field, vars } => (*field, vars.clone()),
            Sym::Module { .. } => unreachable!("checked by ring_ref"),
        }
    }

    fn statement(&mut self) -> PResult<Stmt> {
        self.skip();
        let start = self.pos;
        let kw = self.peek_ident().unwrap_or_default();
        let stmt = match kw.as_str() {
            "ring" => self.ring_decl()?,
            "module" => self.module_decl()?,
            "let" => {
                self.pos += 3;
                let name = self.fresh_name()?;
                self.expect("=")?;
                let e_start = self.peek_pos();
                let (expr, out) = self.expr()?;
                if out != Output::Module {
                    return Err(self.err_at(
                        e_start,
                        format!("'{expr}' does not produce a module"),
                        &[],
                    ));
                }
                let ring = self.ring_of(&expr);
                self.scope.syms.insert(name.clone(), Sym::Module { ring });
                Stmt::Let { name, expr }
            }
            "assert" => {
                self.pos += 6;
                let e_start = self.peek_pos();
                let (expr, out) = self.expr()?;
                let cmp = match out {
                    Output::Bool => None,
                    Output::Count => {
                        let op = self.cmp_op()?;
                        Some((op, self.int()?))
                    }
                    _ => {
                        return Err(self.err_at(
                            e_start,
                            format!("'{expr}' cannot be asserted"),
                            &[],
                        ));
                    }
                };
                Stmt::Assert { expr, cmp }
            }
            "print" => {
                self.pos += 5;
                let (expr, _) = self.expr_or_ring()?;
                Stmt::Print { expr }
            }
            "check" => self.check_stmt()?,
            "suite" => self.suite_stmt()?,
            _ => {
                let found = self.found();
                return Err(self.err_at(start, format!("unexpected {found}"), STATEMENTS));
            }
        };
        self.expect(";")?;
        Ok(stmt)
    }

    fn peek_pos(&mut self) -> usize {
        self.skip();
        self.pos
    }

    fn cmp_op(&mut self) -> PResult<CmpOp> {
        for (sym, op) in CmpOp::ALL {
            if self.eat(sym) {
                return Ok(op);
            }
        }
        let found = self.found();
        let all: Vec<&str> = CmpOp::ALL.iter().map(|(s, _)| *s).collect();
        Err(self.err_at(self.pos, format!("unexpected {found}"), &all))
    }

    fn field(&mut self) -> PResult<Field> {
        self.skip();
        let start = self.pos;
        let name = self.ident("a field")?;
        match name.as_str() {
            "QQ" => Ok(Field::Rationals),
            "GF" => {
                self.expect("(")?;
                let p_start = self.peek_pos();
                let p = self.int()?;
                self.expect(")")?;
                u32::try_from(p)
                    .ok()
                    .and_then(|p| Field::prime(p).ok())
                    .ok_or_else(|| self.err_at(p_start, format!("{p} is not a prime"), &[]))
            }
            _ => Err(self.err_at(start, format!("unknown field '{name}'"), &["QQ", "GF(p)"])),
        }
    }

    fn ring_decl(&mut self) -> PResult<Stmt> {
        self.keyword("ring")?;
        let name = self.fresh_name()?;
        self.expect("=")?;
        self.skip();
        let start = self.pos;
        let kind = self.ident("'poly' or 'quotient'")?;
        let (def, sym) = match kind.as_str() {
            "poly" => {
                self.expect("(")?;
                let field = self.field()?;
                let mut vars = Vec::new();
                while self.eat(",") {
                    self.skip();
                    let v_start = self.pos;
                    let v = self.ident("a variable name")?;
                    if vars.contains(&v) {
                        return Err(self.err_at(v_start, format!("duplicate variable '{v}'"), &[]));
                    }
                    vars.push(v);
                }
                self.expect(")")?;
                if vars.is_empty() || vars.len() > 8 {
                    return Err(self.err_at(start, "a ring needs between 1 and 8 variables", &[]));
                }
                (
                    RingDef::Poly {
                        field,
                        vars: vars.clone(),
                    },
                    Sym::Ring { field, vars },
                )
            }
            "quotient" => {
                self.expect("(")?;
                let base = self.ring_ref()?;
                self.expect(",")?;
                let (field, vars) = self.ring_sym(&base);
                let relations = self.poly_list()?;
                for r in &relations {
                    self.check_poly(r, field, &vars)?;
                }
                self.expect(")")?;
                (
                    RingDef::Quotient { base, relations },
                    Sym::Ring { field, vars },
                )
            }
            _ => {
                return Err(self.err_at(
                    start,
                    format!("unexpected '{kind}'"),
                    &["poly", "quotient"],
                ))
            }
        };
        self.scope.syms.insert(name.clone(), sym);
        Ok(Stmt::Ring { name, def })
    }

    fn module_decl(&mut self) -> PResult<Stmt> {
        self.keyword("module")?;
        let name = self.fresh_name()?;
        self.expect("=")?;
        self.keyword("coker")?;
        self.expect("(")?;
        let ring = self.ring_ref()?;
        self.expect(",")?;
        self.keyword("twists")?;
        self.expect("=")?;
        self.expect("[")?;
        let mut twists = Vec::new();
        if !self.eat("]") {
            loop {
                let t_start = self.peek_pos();
                let t = self.int()?;
                twists.push(
                    i32::try_from(t)
                        .map_err(|_| self.err_at(t_start, "twist out of range", &[]))?,
                );
                if self.eat("]") {
                    break;
                }
                self.expect(",")?;
            }
        }
        self.expect(",")?;
        self.keyword("matrix")?;
        self.expect("=")?;
        let m_start = self.peek_pos();
        self.expect("[")?;
        let mut rows = Vec::new();
        if !self.eat("]") {
            loop {
                rows.push(self.poly_list()?);
                if self.eat("]") {
                    break;
                }
                self.expect(",")?;
            }
        }
        self.expect(")")?;
        let (field, vars) = self.ring_sym(&ring);
        self.check_matrix(m_start, &twists, &rows, field, &vars)?;
        self.scope
            .syms
            .insert(name.clone(), Sym::Module { ring: ring.clone() });
        Ok(Stmt::Module {
            name,
            ring,
            twists,
            rows,
        })
    }

    /// `[p, q, ...]` with each polynomial captured verbatim.
    fn poly_list(&mut self) -> PResult<Vec<PolyText>> {
        self.expect("[")?;
        let mut out = Vec::new();
        if self.eat("]") {
            return Ok(out);
        }
        loop {
            self.skip();
            let start = self.pos;
            let rest = self.rest();
            let mut depth = 0i32;
            let mut end = rest.len();
            for (i, c) in rest.char_indices() {
                match c {
                    '(' => depth += 1,
                    ')' if depth > 0 => depth -= 1,
                    ',' | ']' if depth == 0 => {
                        end = i;
                        break;
                    }
                    ';' | '[' | '\n' | '#' | ')' => {
                        end = i;
                        break;
                    }
                    _ => {}
                }
            }
            let text = rest[..end].trim_end();
            if text.is_empty() {
                let found = self.found();
                return Err(self.err_at(start, format!("unexpected {found}"), &["a polynomial"]));
            }
            out.push(PolyText {
                text: text.to_string(),
                pos: self.pos_of(start),
            });
            self.pos = start + end;
            if self.eat("]") {
                return Ok(out);
            }
            self.expect(",")?;
        }
    }

    fn byte_of(&self, pos: Pos) -> usize {
        let mut line = 1;
        let mut col = 1;
        for (i, c) in self.src.char_indices() {
            if line == pos.line && col == pos.col {
                return i;
            }
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        self.src.len()
    }

    fn read_poly(&self, p: &PolyText, field: Field, vars: &[String]) -> PResult<Vector> {
        parse_poly(field, vars, &p.text).map_err(|e| {
            let byte = self.byte_of(p.pos) + e.offset;
            self.err_at(
                byte,
                format!("in polynomial \"{}\": {}", p.text, e.message),
                &[],
            )
        })
    }

    /// Parses and requires homogeneity; returns the polynomial and its degree (None for 0).
    fn check_poly(
        &self,
        p: &PolyText,
        field: Field,
        vars: &[String],
    ) -> PResult<(Vector, Option<i32>)> {
        let v = self.read_poly(p, field, vars)?;
        let Some(lead) = v.terms.first() else {
            return Ok((v, None));
        };
        let d = lead.m.degree();
        if let Some(t) = v.terms.iter().find(|t| t.m.degree() != d) {
            let bad = Vector::term(t.m, 0, t.c.clone()).format_poly(vars);
            let good = Vector::term(lead.m, 0, lead.c.clone()).format_poly(vars);
            return Err(self.err_at(
                self.byte_of(p.pos),
                format!(
                    "homogeneity error at \"{}\": monomial {bad} has degree {} but {good} has degree {d}",
                    p.text,
                    t.m.degree()
                ),
                &[],
            ));
        }
        Ok((v, Some(d)))
    }

    fn check_matrix(
        &self,
        at: usize,
        twists: &[i32],
        rows: &[Vec<PolyText>],
        field: Field,
        vars: &[String],
    ) -> PResult<()> {
        if rows.len() != twists.len() && !(rows.is_empty()) {
            return Err(self.err_at(
                at,
                format!(
                    "matrix has {} rows but there are {} twists",
                    rows.len(),
                    twists.len()
                ),
                &[],
            ));
        }
        let ncols = rows.first().map_or(0, |r| r.len());
        for (i, r) in rows.iter().enumerate() {
            if r.len() != ncols {
                return Err(self.err_at(
                    at,
                    format!("row {} has {} entries, row 1 has {ncols}", i + 1, r.len()),
                    &[],
                ));
            }
        }
        for j in 0..ncols {
            let mut col_deg: Option<(i32, &PolyText)> = None;
            for (i, row) in rows.iter().enumerate() {
                let p = &row[j];
                let (_, d) = self.check_poly(p, field, vars)?;
                let Some(d) = d else { continue };
                let total = d + twists[i];
                match col_deg {
                    None => col_deg = Some((total, p)),
                    Some((t, first)) if t != total => {
                        return Err(self.err_at(
                            self.byte_of(p.pos),
                            format!(
                                "homogeneity error at \"{}\": column {} has degree {t} at \"{}\" but {total} here",
                                p.text,
                                j + 1,
                                first.text
                            ),
                            &[],
                        ));
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }

    fn ring_of(&self, e: &Expr) -> String {
        match e {
            Expr::Name(n) => match &self.scope.syms[n] {
                Sym::Module { ring } => ring.clone(),
                Sym::Ring { .. } => n.clone(),
            },
            Expr::Call(_, args) => args
                .iter()
                .find_map(|a| match a {
                    Arg::Expr(e) => Some(self.ring_of(e)),
                    Arg::Int(_) => None,
                })
                .unwrap_or_default(),
        }
    }

    /// A module name or a call.
    fn expr(&mut self) -> PResult<(Expr, Output)> {
        self.skip();
        let start = self.pos;
        let name = self.ident("a module name or a function")?;
        if self.peek() == Some('(') {
            return self.call(start, name);
        }
        match self.scope.syms.get(&name) {
            Some(Sym::Module { .. }) => Ok((Expr::Name(name), Output::Module)),
            // a ring stands for itself as a free module of rank one
            Some(Sym::Ring { .. }) => Ok((Expr::Name(name), Output::Module)),
            None => Err(self.err_at(start, format!("undeclared name '{name}'"), &[])),
        }
    }

    fn expr_or_ring(&mut self) -> PResult<(Expr, Output)> {
        if let Some(name) = self.peek_ident() {
            if let Some(Sym::Ring { .. }) = self.scope.syms.get(&name) {
                self.pos += name.len();
                return Ok((Expr::Name(name), Output::Table));
            }
        }
        self.expr()
    }

    fn call(&mut self, start: usize, name: String) -> PResult<(Expr, Output)> {
        let Some(sig) = signature(&name) else {
            let names: Vec<&str> = SIGNATURES.iter().map(|s| s.name).collect();
            return Err(self.err_at(start, format!("unknown function '{name}'"), &names));
        };
        self.expect("(")?;
        let mut args = Vec::new();
        let mut ring: Option<String> = None;
        for (k, kind) in sig.args.iter().enumerate() {
            if k > 0 {
                self.expect(",")?;
            }
            let a_start = self.peek_pos();
            let arg = match kind {
                ArgKind::Int => Arg::Int(self.int()?),
                ArgKind::Ring => {
                    let r = self.ring_ref()?;
                    ring.get_or_insert(r.clone());
                    Arg::Expr(Expr::Name(r))
                }
                ArgKind::Module => {
                    let (e, out) = self.expr()?;
                    if out != Output::Module {
                        return Err(self.err_at(
                            a_start,
                            format!("'{e}' does not produce a module"),
                            &[],
                        ));
                    }
                    let r = self.ring_of(&e);
                    match &ring {
                        Some(prev) if *prev != r => {
                            return Err(self.err_at(
                                a_start,
                                format!("'{e}' lives over {r}, earlier arguments over {prev}"),
                                &[],
                            ));
                        }
                        _ => ring = Some(r),
                    }
                    Arg::Expr(e)
                }
            };
            args.push(arg);
        }
        if self.peek() == Some(',') {
            return Err(self.err_at(
                self.pos,
                format!("{name} takes {} arguments", sig.args.len()),
                &["')'"],
            ));
        }
        self.expect(")")?;
        Ok((Expr::Call(name, args), sig.output))
    }

    fn theorem_id(&mut self) -> PResult<TheoremId> {
        self.skip();
        let start = self.pos;
        let name = self.ident("a theorem id")?;
        TheoremId::parse(&name).ok_or_else(|| {
            let ids: Vec<&str> = TheoremId::ALL.iter().map(|i| i.name()).collect();
            self.err_at(start, format!("unknown theorem id '{name}'"), &ids)
        })
    }

    fn check_stmt(&mut self) -> PResult<Stmt> {
        self.keyword("check")?;
        let id = self.theorem_id()?;
        self.expect("(")?;
        let mut bindings: Vec<Binding> = Vec::new();
        let mut ideals: Vec<&PolyText> = Vec::new();
        let mut module_ring = None;
        if !self.eat(")") {
            loop {
                self.skip();
                let k_start = self.pos;
                let key = self.ident("a binding name")?;
                if !BIND_KEYS.contains(&key.as_str()) {
                    return Err(self.err_at(
                        k_start,
                        format!("unknown binding '{key}'"),
                        BIND_KEYS,
                    ));
                }
                if bindings.iter().any(|b| b.key == key) {
                    return Err(self.err_at(k_start, format!("'{key}' is bound twice"), &[]));
                }
                self.expect("=")?;
                let v_start = self.peek_pos();
                let value = match key.as_str() {
                    "n" => BindValue::Int(self.int()?),
                    "M" | "C" => {
                        let (e, out) = self.expr()?;
                        if out != Output::Module {
                            return Err(self.err_at(
                                v_start,
                                format!("'{e}' does not produce a module"),
                                &[],
                            ));
                        }
                        let r = self.ring_of(&e);
                        if let Some(prev) = &module_ring {
                            if *prev != r {
                                return Err(self.err_at(
                                    v_start,
                                    format!("'{e}' lives over {r}, not {prev}"),
                                    &[],
                                ));
                            }
                        }
                        module_ring = Some(r);
                        BindValue::Expr(e)
                    }
                    _ => BindValue::Ideal(self.poly_list()?),
                };
                bindings.push(Binding { key, value });
                if self.eat(")") {
                    break;
                }
                self.expect(",")?;
            }
        }
        let Some(ring) = module_ring.filter(|_| bindings.iter().any(|b| b.key == "M")) else {
            return Err(self.err_at(
                self.pos,
                format!("check {id} needs a module binding M"),
                &[],
            ));
        };
        for b in &bindings {
            if let BindValue::Ideal(ps) = &b.value {
                ideals.extend(ps.iter());
            }
        }
        let (field, vars) = self.ring_sym(&ring);
        for p in ideals {
            self.check_poly(p, field, &vars)?;
        }
        Ok(Stmt::Check { id, bindings })
    }

    fn suite_stmt(&mut self) -> PResult<Stmt> {
        self.keyword("suite")?;
        self.expect("[")?;
        let mut ids = Vec::new();
        while !self.eat("]") {
            ids.push(self.theorem_id()?);
            self.eat(",");
        }
        self.keyword("on")?;
        self.keyword("corpus")?;
        self.expect("(")?;
        let ring = self.ring_ref()?;
        self.expect(",")?;
        self.skip();
        let s_start = self.pos;
        let size = match self.ident("'small' or 'full'")?.as_str() {
            "small" => CorpusSize::Small,
            "full" => CorpusSize::Full,
            other => {
                return Err(self.err_at(
                    s_start,
                    format!("unexpected '{other}'"),
                    &["small", "full"],
                ))
            }
        };
        self.expect(")")?;
        Ok(Stmt::Suite { ids, ring, size })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_declaration() {
        let s = parse("ring R = poly(QQ, x, y);").unwrap();
        assert_eq!(s.stmts.len(), 1);
        assert!(
            matches!(&s.stmts[0], Stmt::Ring { name, def: RingDef::Poly { vars, .. } } if name == "R" && vars.len() == 2)
        );
    }

    #[test]
    fn module_declaration() {
        let s = parse("ring R = poly(QQ, x, y);\nmodule M = coker(R, twists=[0], matrix=[[x]]);")
            .unwrap();
        assert!(matches!(&s.stmts[1], Stmt::Module { rows, .. } if rows[0][0].text == "x"));
        assert_eq!(s.positions[1], Pos { line: 2, col: 1 });
    }

    #[test]
    fn inhomogeneous_entry() {
        let e = parse("ring R = poly(QQ, x); module M = coker(R, twists=[0], matrix=[[x + 1]]);")
            .unwrap_err();
        assert!(e.message.contains("homogeneity error at \"x + 1\""), "{e}");
        assert_eq!(e.pos, Pos { line: 1, col: 64 });
    }

    #[test]
    fn inhomogeneous_column() {
        let src =
            "ring R = poly(QQ, x, y);\nmodule M = coker(R, twists=[0, 0], matrix=[[x], [y^2]]);";
        let e = parse(src).unwrap_err();
        assert!(e.message.contains("column 1"), "{e}");
        assert_eq!(e.pos.line, 2);
        // twists fix it
        let ok =
            "ring R = poly(QQ, x, y);\nmodule M = coker(R, twists=[1, 0], matrix=[[x], [y^2]]);";
        assert!(parse(ok).is_ok());
    }

    #[test]
    fn diagnostics() {
        let e = parse("ring R = poly(QQ, x)").unwrap_err();
        assert_eq!(e.expected, vec!["';'"]);
        let e = parse("rung R = poly(QQ, x);").unwrap_err();
        assert!(e.expected.contains(&"ring".to_string()));
        let e = parse("ring R = poly(QQ, x);\nlet L = lambda(N);").unwrap_err();
        assert_eq!((e.pos.line, e.pos.col), (2, 16));
        assert!(e.message.contains("undeclared"));
        let e = parse("ring R = poly(QQ, x);\nring R = poly(QQ, y);").unwrap_err();
        assert!(e.message.contains("already declared"));
        let e = parse("ring R = poly(QQ, x);\nmodule M = coker(R, twists=[0], matrix=[[z]]);")
            .unwrap_err();
        assert!(e.message.contains("unknown variable 'z'"), "{e}");
        assert_eq!((e.pos.line, e.pos.col), (2, 42));
    }

    #[test]
    fn kinds_are_checked() {
        let base = "ring R = poly(QQ, x, y); module M = coker(R, twists=[0], matrix=[[x]]);";
        assert!(parse(&format!("{base} assert depth(M) == 1;")).is_ok());
        assert!(parse(&format!("{base} assert depth(M);")).is_err());
        assert!(parse(&format!("{base} assert is_cm(M) == 1;")).is_err());
        assert!(parse(&format!("{base} let D = depth(M);")).is_err());
        assert!(parse(&format!("{base} let W = canonical(M);")).is_err());
        assert!(parse(&format!("{base} let W = canonical(R); print W;")).is_ok());
        assert!(parse(&format!("{base} check THM_MS(C=M);")).is_err());
        assert!(parse(&format!("{base} check THM_MS(M=M, I=[x, y]);")).is_ok());
        assert!(parse(&format!("{base} check THM_MS(M=M, I=[x + 1]);")).is_err());
        assert!(parse(&format!("{base} suite [] on corpus(R, small);")).is_ok());
    }

    #[test]
    fn comments_and_gf() {
        let s = parse("# header\nring R = poly(GF(7), x); # trailing\n").unwrap();
        assert_eq!(s.stmts.len(), 1);
        assert!(parse("ring R = poly(GF(8), x);").is_err());
    }
}
