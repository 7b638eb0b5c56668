//! Syntax tree of a script and its canonical printed form.

use std::fmt;

use linkage_core::algebra::Field;
use linkage_core::harness::{CorpusSize, TheoremId};

/// 1-based line and column (in characters).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

/// A polynomial exactly as written. Equality ignores the position.
#[derive(Clone, Debug)]
pub struct PolyText {
    pub text: String,
    pub pos: Pos,
}

impl PartialEq for PolyText {
    fn eq(&self, o: &Self) -> bool {
        self.text == o.text
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArgKind {
    Module,
    Int,
    Ring,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Output {
    Module,
    Bool,
    /// A non-negative integer or infinity; asserted with a comparison.
    Count,
    /// Printable only.
    Table,
}

pub struct Signature {
    pub name: &'static str,
    pub args: &'static [ArgKind],
    pub output: Output,
}

use ArgKind::{Int as I, Module as M, Ring as R};

pub const SIGNATURES: &[Signature] = &[
    Signature {
        name: "lambda",
        args: &[M],
        output: Output::Module,
    },
    Signature {
        name: "transpose",
        args: &[M],
        output: Output::Module,
    },
    Signature {
        name: "transpose_wrt",
        args: &[M, M],
        output: Output::Module,
    },
    Signature {
        name: "syzygy",
        args: &[M, I],
        output: Output::Module,
    },
    Signature {
        name: "ext",
        args: &[M, M, I],
        output: Output::Module,
    },
    Signature {
        name: "tor",
        args: &[M, M, I],
        output: Output::Module,
    },
    Signature {
        name: "tensor",
        args: &[M, M],
        output: Output::Module,
    },
    Signature {
        name: "hom",
        args: &[M, M],
        output: Output::Module,
    },
    Signature {
        name: "canonical",
        args: &[R],
        output: Output::Module,
    },
    Signature {
        name: "dual",
        args: &[M],
        output: Output::Module,
    },
    Signature {
        name: "pushforward",
        args: &[M, M],
        output: Output::Module,
    },
    Signature {
        name: "stable_part",
        args: &[M],
        output: Output::Module,
    },
    Signature {
        name: "is_horizontally_linked",
        args: &[M],
        output: Output::Bool,
    },
    Signature {
        name: "is_stable",
        args: &[M],
        output: Output::Bool,
    },
    Signature {
        name: "serre_tilde",
        args: &[M, I],
        output: Output::Bool,
    },
    Signature {
        name: "is_cm",
        args: &[M],
        output: Output::Bool,
    },
    Signature {
        name: "is_mcm",
        args: &[M],
        output: Output::Bool,
    },
    Signature {
        name: "in_auslander_class",
        args: &[M, M],
        output: Output::Bool,
    },
    Signature {
        name: "is_semidualizing",
        args: &[M],
        output: Output::Bool,
    },
    Signature {
        name: "iso",
        args: &[M, M],
        output: Output::Bool,
    },
    Signature {
        name: "is_self_linked",
        args: &[M],
        output: Output::Bool,
    },
    Signature {
        name: "is_zero",
        args: &[M],
        output: Output::Bool,
    },
    Signature {
        name: "depth",
        args: &[M],
        output: Output::Count,
    },
    Signature {
        name: "dim",
        args: &[M],
        output: Output::Count,
    },
    Signature {
        name: "rgr",
        args: &[M, M],
        output: Output::Count,
    },
    Signature {
        name: "gc_dim",
        args: &[M, M],
        output: Output::Count,
    },
    Signature {
        name: "betti",
        args: &[M],
        output: Output::Table,
    },
    Signature {
        name: "hilbert",
        args: &[M],
        output: Output::Table,
    },
];

pub fn signature(name: &str) -> Option<&'static Signature> {
    SIGNATURES.iter().find(|s| s.name == name)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Name(String),
    Call(String, Vec<Arg>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Arg {
    Expr(Expr),
    Int(i64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CmpOp {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

impl CmpOp {
    pub const ALL: [(&'static str, CmpOp); 6] = [
        ("==", CmpOp::Eq),
        ("!=", CmpOp::Ne),
        ("<=", CmpOp::Le),
        (">=", CmpOp::Ge),
        ("<", CmpOp::Lt),
        (">", CmpOp::Gt),
    ];

    pub fn symbol(self) -> &'static str {
        CmpOp::ALL.iter().find(|(_, o)| *o == self).unwrap().0
    }

    /// `None` stands for infinity.
    pub fn eval(self, lhs: Option<i64>, rhs: i64) -> bool {
        let ord = match lhs {
            None => std::cmp::Ordering::Greater,
            Some(v) => v.cmp(&rhs),
        };
        match self {
            CmpOp::Eq => ord.is_eq(),
            CmpOp::Ne => !ord.is_eq(),
            CmpOp::Lt => ord.is_lt(),
            CmpOp::Le => ord.is_le(),
            CmpOp::Gt => ord.is_gt(),
            CmpOp::Ge => ord.is_ge(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum RingDef {
    Poly {
        field: Field,
        vars: Vec<String>,
    },
    Quotient {
        base: String,
        relations: Vec<PolyText>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub enum BindValue {
    Expr(Expr),
    Int(i64),
    Ideal(Vec<PolyText>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Binding {
    pub key: String,
    pub value: BindValue,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Stmt {
    Ring {
        name: String,
        def: RingDef,
    },
    Module {
        name: String,
        ring: String,
        /// Generator degrees.
        twists: Vec<i32>,
        /// One row per generator, one column per relation.
        rows: Vec<Vec<PolyText>>,
    },
    Let {
        name: String,
        expr: Expr,
    },
    Assert {
        expr: Expr,
        cmp: Option<(CmpOp, i64)>,
    },
    Print {
        expr: Expr,
    },
    Check {
        id: TheoremId,
        bindings: Vec<Binding>,
    },
    Suite {
        ids: Vec<TheoremId>,
        ring: String,
        size: CorpusSize,
    },
}

impl Stmt {
    pub fn is_declaration(&self) -> bool {
        matches!(
            self,
            Stmt::Ring { .. } | Stmt::Module { .. } | Stmt::Let { .. }
        )
    }
}

/// Statements with the position each one starts at. Equality ignores positions.
#[derive(Clone, Debug, Default)]
pub struct Script {
    pub stmts: Vec<Stmt>,
    pub positions: Vec<Pos>,
}

impl PartialEq for Script {
    fn eq(&self, o: &Self) -> bool {
        self.stmts == o.stmts
    }
}

fn join<T: fmt::Display>(items: &[T], sep: &str) -> String {
    items
        .iter()
        .map(|t| t.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

impl fmt::Display for PolyText {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Name(n) => f.write_str(n),
            Expr::Call(name, args) => write!(f, "{name}({})", join(args, ", ")),
        }
    }
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arg::Expr(e) => e.fmt(f),
            Arg::Int(i) => write!(f, "{i}"),
        }
    }
}

impl fmt::Display for BindValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BindValue::Expr(e) => e.fmt(f),
            BindValue::Int(i) => write!(f, "{i}"),
            BindValue::Ideal(ps) => write!(f, "[{}]", join(ps, ", ")),
        }
    }
}

pub fn size_name(s: CorpusSize) -> &'static str {
    match s {
        CorpusSize::Small => "small",
        CorpusSize::Full => "full",
    }
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stmt::Ring { name, def } => match def {
                RingDef::Poly { field, vars } => write!(
                    f,
                    "ring {name} = poly({}, {});",
                    field.name(),
                    vars.join(", ")
                ),
                RingDef::Quotient { base, relations } => {
                    write!(
                        f,
                        "ring {name} = quotient({base}, [{}]);",
                        join(relations, ", ")
                    )
                }
            },
            Stmt::Module {
                name,
                ring,
                twists,
                rows,
            } => {
                let rows: Vec<String> = rows
                    .iter()
                    .map(|r| format!("[{}]", join(r, ", ")))
                    .collect();
                write!(
                    f,
                    "module {name} = coker({ring}, twists=[{}], matrix=[{}]);",
                    join(twists, ", "),
                    rows.join(", ")
                )
            }
            Stmt::Let { name, expr } => write!(f, "let {name} = {expr};"),
            Stmt::Assert { expr, cmp: None } => write!(f, "assert {expr};"),
            Stmt::Assert {
                expr,
                cmp: Some((op, v)),
            } => write!(f, "assert {expr} {} {v};", op.symbol()),
            Stmt::Print { expr } => write!(f, "print {expr};"),
            Stmt::Check { id, bindings } => {
                let b: Vec<String> = bindings
                    .iter()
                    .map(|b| format!("{}={}", b.key, b.value))
                    .collect();
                write!(f, "check {id}({});", b.join(", "))
            }
            Stmt::Suite { ids, ring, size } => {
                write!(
                    f,
                    "suite [{}] on corpus({ring}, {});",
                    join(ids, " "),
                    size_name(*size)
                )
            }
        }
    }
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.stmts {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}
