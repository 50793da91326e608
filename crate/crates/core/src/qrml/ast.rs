use std::fmt;

/// Source position (1-based). Ignored by equality so that reparsed models compare equal.
#[derive(Clone, Copy, Debug, Default, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl PartialEq for Pos {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Model {
    pub types: Vec<TypeDef>,
    pub components: Vec<ComponentDef>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TypeKeyword {
    Typedef,
    Channel,
    Budget,
}

impl TypeKeyword {
    pub fn as_str(self) -> &'static str {
        match self {
            TypeKeyword::Typedef => "typedef",
            TypeKeyword::Channel => "channel",
            TypeKeyword::Budget => "budget",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TypeDef {
    pub keyword: TypeKeyword,
    pub name: String,
    pub body: TypeExpr,
    pub order: OrderClause,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq)]
pub enum TypeExpr {
    Int,
    Named(String),
    /// `(name: T, …)`
    Combination(Vec<(String, TypeExpr)>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum OrderClause {
    Default,
    ElementWise,
    OrderedBy(Lambda),
}

/// `(left, right) => body`, read as "left ⪯ right iff body".
#[derive(Clone, Debug, PartialEq)]
pub struct Lambda {
    pub left: Pattern,
    pub right: Pattern,
    pub body: Expr,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Pattern {
    Var(String),
    Tuple(Vec<Pattern>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Input,
    Output,
    Requires,
    Provides,
    Quality,
    Parameter,
}

impl Direction {
    pub const ALL: [Direction; 6] = [
        Direction::Input,
        Direction::Output,
        Direction::Requires,
        Direction::Provides,
        Direction::Quality,
        Direction::Parameter,
    ];

    pub fn keyword(self) -> &'static str {
        match self {
            Direction::Input => "input",
            Direction::Output => "output",
            Direction::Requires => "requires",
            Direction::Provides => "provides",
            Direction::Quality => "quality",
            Direction::Parameter => "parameter",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Direction> {
        Direction::ALL.into_iter().find(|d| d.keyword() == s)
    }

    /// Position of the part in the six-part interface.
    pub fn part_index(self) -> usize {
        self as usize
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Port {
    pub dir: Direction,
    pub name: String,
    pub ty: TypeExpr,
    /// Brace-enclosed constraints on the port.
    pub inline: Vec<Expr>,
    /// `from e`, i.e. `name = e`.
    pub from: Option<Expr>,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub name: String,
    pub component: String,
}

/// `contains a: A` or `contains a: A or b: B or …`.
#[derive(Clone, Debug, PartialEq)]
pub struct Contains {
    pub alternatives: Vec<Instance>,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConstraintDecl {
    pub expr: Expr,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComponentDef {
    pub name: String,
    pub ports: Vec<Port>,
    pub contains: Vec<Contains>,
    pub constraints: Vec<ConstraintDecl>,
    pub pos: Pos,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Eq,
    Le,
    Ge,
    And,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Eq => "=",
            BinOp::Le => "<=",
            BinOp::Ge => ">=",
            BinOp::And => "and",
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinOp::And => 1,
            BinOp::Eq | BinOp::Le | BinOp::Ge => 2,
            BinOp::Add | BinOp::Sub => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Int(i64),
    Bot,
    Top,
    /// `a.b.c`
    Path(Vec<String>),
    Tuple(Vec<Expr>),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    /// `e in {v, …}`
    In(Box<Expr>, Vec<Expr>),
}

impl Expr {
    pub fn bin(op: BinOp, a: Expr, b: Expr) -> Expr {
        Expr::Bin(op, Box::new(a), Box::new(b))
    }

    pub fn path(parts: &[&str]) -> Expr {
        Expr::Path(parts.iter().map(|s| s.to_string()).collect())
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Bin(op, ..) => op.precedence(),
            Expr::In(..) => 2,
            _ => 4,
        }
    }

    /// Top-level conjuncts.
    pub fn conjuncts(&self) -> Vec<&Expr> {
        match self {
            Expr::Bin(BinOp::And, a, b) => {
                let mut v = a.conjuncts();
                v.extend(b.conjuncts());
                v
            }
            e => vec![e],
        }
    }
}

fn write_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(i) => write!(f, "{i}"),
            Expr::Bot => f.write_str("bot"),
            Expr::Top => f.write_str("top"),
            Expr::Path(p) => f.write_str(&p.join(".")),
            Expr::Tuple(items) => {
                f.write_str("(")?;
                write_list(f, items)?;
                if items.len() == 1 {
                    f.write_str(",")?;
                }
                f.write_str(")")
            }
            Expr::Neg(e) => {
                if e.precedence() < 4 || matches!(**e, Expr::Neg(_) | Expr::Int(_)) {
                    write!(f, "-({e})")
                } else {
                    write!(f, "-{e}")
                }
            }
            Expr::Bin(op, a, b) => {
                let p = op.precedence();
                // left-associative: parenthesize a right operand of equal precedence
                let (lp, rp) = match op {
                    BinOp::Eq | BinOp::Le | BinOp::Ge => (a.precedence() <= p, b.precedence() <= p),
                    _ => (a.precedence() < p, b.precedence() <= p),
                };
                if lp {
                    write!(f, "({a})")?;
                } else {
                    write!(f, "{a}")?;
                }
                write!(f, " {} ", op.symbol())?;
                if rp {
                    write!(f, "({b})")
                } else {
                    write!(f, "{b}")
                }
            }
            Expr::In(e, set) => {
                if e.precedence() <= 2 {
                    write!(f, "({e})")?;
                } else {
                    write!(f, "{e}")?;
                }
                f.write_str(" in {")?;
                write_list(f, set)?;
                f.write_str("}")
            }
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pattern::Var(v) => f.write_str(v),
            Pattern::Tuple(items) => {
                f.write_str("(")?;
                write_list(f, items)?;
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for TypeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeExpr::Int => f.write_str("int"),
            TypeExpr::Named(n) => f.write_str(n),
            TypeExpr::Combination(parts) => {
                f.write_str("(")?;
                for (i, (n, t)) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{n}: {t}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for TypeDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} : {}", self.keyword.as_str(), self.name, self.body)?;
        match &self.order {
            OrderClause::Default => Ok(()),
            OrderClause::ElementWise => f.write_str(" element-wise"),
            OrderClause::OrderedBy(l) => {
                write!(f, " ordered by ({}, {}) => {}", l.left, l.right, l.body)
            }
        }
    }
}

impl fmt::Display for ComponentDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "component {} {{", self.name)?;
        for c in &self.contains {
            f.write_str("  contains ")?;
            for (i, inst) in c.alternatives.iter().enumerate() {
                if i > 0 {
                    f.write_str(" or ")?;
                }
                write!(f, "{}: {}", inst.name, inst.component)?;
            }
            f.write_str("\n")?;
        }
        for p in &self.ports {
            write!(f, "  {} {}: {}", p.dir.keyword(), p.name, p.ty)?;
            if !p.inline.is_empty() {
                f.write_str(" { ")?;
                for (i, e) in p.inline.iter().enumerate() {
                    if i > 0 {
                        f.write_str("; ")?;
                    }
                    write!(f, "{e}")?;
                }
                f.write_str(" }")?;
            }
            if let Some(e) = &p.from {
                write!(f, " from {e}")?;
            }
            f.write_str("\n")?;
        }
        for c in &self.constraints {
            writeln!(f, "  constraint {}", c.expr)?;
        }
        f.write_str("}")
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.types {
            writeln!(f, "{t}")?;
        }
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 || !self.types.is_empty() {
                f.write_str("\n")?;
            }
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}
