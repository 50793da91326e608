use super::ast::*;
use super::lexer::{lex, Tok};
use super::QrmlError;

const KEYWORDS: &[&str] = &[
    "typedef",
    "channel",
    "budget",
    "component",
    "contains",
    "or",
    "provides",
    "requires",
    "input",
    "output",
    "quality",
    "parameter",
    "ordered",
    "by",
    "element-wise",
    "from",
    "constraint",
    "and",
    "in",
    "bot",
    "top",
    "int",
];

pub fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

type PResult<T> = Result<T, QrmlError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.at + k).min(self.toks.len() - 1)].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn error<T>(&self, expected: &[&str]) -> PResult<T> {
        Err(QrmlError::Syntax {
            pos: self.pos(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().describe(),
        })
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn eat_kw(&mut self, kw: &str) -> bool {
        if self.is_kw(kw) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect_kw(&mut self, kw: &str) -> PResult<()> {
        if self.eat_kw(kw) {
            Ok(())
        } else {
            self.error(&[&format!("`{kw}`")])
        }
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok) -> PResult<()> {
        if self.eat(&t) {
            Ok(())
        } else {
            self.error(&[&format!("`{}`", t.symbol())])
        }
    }

    fn ident(&mut self) -> PResult<String> {
        match self.peek() {
            Tok::Ident(s) if !is_keyword(s) => {
                let s = s.clone();
                self.bump();
                Ok(s)
            }
            _ => self.error(&["identifier"]),
        }
    }

    fn model(&mut self) -> PResult<Model> {
        let mut m = Model::default();
        loop {
            let pos = self.pos();
            let kw = match self.peek() {
                Tok::Ident(s) => s.clone(),
                Tok::Eof => return Ok(m),
                _ => {
                    return self.error(&[
                        "`typedef`",
                        "`channel`",
                        "`budget`",
                        "`component`",
                        "end of input",
                    ])
                }
            };
            match kw.as_str() {
                "typedef" | "channel" | "budget" => {
                    self.bump();
                    let keyword = match kw.as_str() {
                        "typedef" => TypeKeyword::Typedef,
                        "channel" => TypeKeyword::Channel,
                        _ => TypeKeyword::Budget,
                    };
                    m.types.push(self.typedef(keyword, pos)?);
                }
                "component" => {
                    self.bump();
                    m.components.push(self.component(pos)?);
                }
                _ => {
                    return self.error(&[
                        "`typedef`",
                        "`channel`",
                        "`budget`",
                        "`component`",
                        "end of input",
                    ])
                }
            }
        }
    }

    fn typedef(&mut self, keyword: TypeKeyword, pos: Pos) -> PResult<TypeDef> {
        let name = self.ident()?;
        self.expect(Tok::Colon)?;
        let body = self.type_expr()?;
        let order = if self.eat_kw("element-wise") {
            OrderClause::ElementWise
        } else if self.eat_kw("ordered") {
            self.expect_kw("by")?;
            OrderClause::OrderedBy(self.lambda()?)
        } else {
            OrderClause::Default
        };
        self.eat(&Tok::Semi);
        Ok(TypeDef {
            keyword,
            name,
            body,
            order,
            pos,
        })
    }

    fn type_expr(&mut self) -> PResult<TypeExpr> {
        if self.eat_kw("int") {
            return Ok(TypeExpr::Int);
        }
        if self.eat(&Tok::LParen) {
            let mut parts = Vec::new();
            loop {
                let n = self.ident()?;
                self.expect(Tok::Colon)?;
                parts.push((n, self.type_expr()?));
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
            self.expect(Tok::RParen)?;
            return Ok(TypeExpr::Combination(parts));
        }
        match self.peek() {
            Tok::Ident(s) if !is_keyword(s) => Ok(TypeExpr::Named(self.ident()?)),
            _ => self.error(&["`int`", "`(`", "type name"]),
        }
    }

    fn lambda(&mut self) -> PResult<Lambda> {
        self.expect(Tok::LParen)?;
        let left = self.pattern()?;
        self.expect(Tok::Comma)?;
        let right = self.pattern()?;
        self.expect(Tok::RParen)?;
        self.expect(Tok::Arrow)?;
        let body = self.expr()?;
        Ok(Lambda { left, right, body })
    }

    fn pattern(&mut self) -> PResult<Pattern> {
        if self.eat(&Tok::LParen) {
            let mut items = vec![self.pattern()?];
            while self.eat(&Tok::Comma) {
                items.push(self.pattern()?);
            }
            self.expect(Tok::RParen)?;
            return Ok(Pattern::Tuple(items));
        }
        Ok(Pattern::Var(self.ident()?))
    }

    fn component(&mut self, pos: Pos) -> PResult<ComponentDef> {
        let name = self.ident()?;
        self.expect(Tok::LBrace)?;
        let mut c = ComponentDef {
            name,
            ports: Vec::new(),
            contains: Vec::new(),
            constraints: Vec::new(),
            pos,
        };
        loop {
            let pos = self.pos();
            if self.eat(&Tok::RBrace) {
                break;
            }
            if self.eat_kw("contains") {
                let mut alternatives = vec![self.instance()?];
                while self.eat_kw("or") {
                    alternatives.push(self.instance()?);
                }
                c.contains.push(Contains { alternatives, pos });
            } else if self.eat_kw("constraint") {
                c.constraints.push(ConstraintDecl {
                    expr: self.expr()?,
                    pos,
                });
            } else if let Some(dir) = match self.peek() {
                Tok::Ident(s) => Direction::from_keyword(s),
                _ => None,
            } {
                self.bump();
                c.ports.push(self.port(dir, pos)?);
            } else {
                return self.error(&[
                    "`contains`",
                    "`constraint`",
                    "`input`",
                    "`output`",
                    "`requires`",
                    "`provides`",
                    "`quality`",
                    "`parameter`",
                    "`}`",
                ]);
            }
            self.eat(&Tok::Semi);
        }
        Ok(c)
    }

    fn instance(&mut self) -> PResult<Instance> {
        let first = self.ident()?;
        if self.eat(&Tok::Colon) {
            let component = self.ident()?;
            Ok(Instance {
                name: first,
                component,
            })
        } else {
            Ok(Instance {
                name: first.clone(),
                component: first,
            })
        }
    }

    fn port(&mut self, dir: Direction, pos: Pos) -> PResult<Port> {
        let name = self.ident()?;
        self.expect(Tok::Colon)?;
        let ty = self.type_expr()?;
        let mut inline = Vec::new();
        if self.eat(&Tok::LBrace) {
            while !self.eat(&Tok::RBrace) {
                inline.push(self.expr()?);
                if !self.eat(&Tok::Semi) && self.peek() != &Tok::RBrace {
                    return self.error(&["`;`", "`}`"]);
                }
            }
        }
        let from = if self.eat_kw("from") {
            Some(self.expr()?)
        } else {
            None
        };
        Ok(Port {
            dir,
            name,
            ty,
            inline,
            from,
            pos,
        })
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut e = self.cmp()?;
        while self.eat_kw("and") {
            let r = self.cmp()?;
            e = Expr::bin(BinOp::And, e, r);
        }
        Ok(e)
    }

    fn cmp(&mut self) -> PResult<Expr> {
        let e = self.sum()?;
        let op = match self.peek() {
            Tok::Eq => BinOp::Eq,
            Tok::Le => BinOp::Le,
            Tok::Ge => BinOp::Ge,
            Tok::Ident(s) if s == "in" => {
                self.bump();
                self.expect(Tok::LBrace)?;
                let mut set = vec![self.expr()?];
                while self.eat(&Tok::Comma) {
                    set.push(self.expr()?);
                }
                self.expect(Tok::RBrace)?;
                return Ok(Expr::In(Box::new(e), set));
            }
            _ => return Ok(e),
        };
        self.bump();
        let r = self.sum()?;
        Ok(Expr::bin(op, e, r))
    }

    fn sum(&mut self) -> PResult<Expr> {
        let mut e = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(e),
            };
            self.bump();
            let r = self.unary()?;
            e = Expr::bin(op, e, r);
        }
    }

    fn unary(&mut self) -> PResult<Expr> {
        if self.eat(&Tok::Minus) {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.atom()
    }

    fn atom(&mut self) -> PResult<Expr> {
        match self.peek().clone() {
            Tok::Int(i) => {
                self.bump();
                Ok(Expr::Int(i))
            }
            Tok::Ident(s) if s == "bot" => {
                self.bump();
                Ok(Expr::Bot)
            }
            Tok::Ident(s) if s == "top" => {
                self.bump();
                Ok(Expr::Top)
            }
            Tok::Ident(s) if !is_keyword(&s) => {
                let mut path = vec![self.ident()?];
                while self.peek() == &Tok::Dot && matches!(self.peek_at(1), Tok::Ident(_)) {
                    self.bump();
                    path.push(self.ident()?);
                }
                Ok(Expr::Path(path))
            }
            Tok::LParen => {
                self.bump();
                let first = self.expr()?;
                if self.eat(&Tok::RParen) {
                    return Ok(first);
                }
                let mut items = vec![first];
                while self.eat(&Tok::Comma) {
                    if self.peek() == &Tok::RParen {
                        break;
                    }
                    items.push(self.expr()?);
                }
                self.expect(Tok::RParen)?;
                Ok(Expr::Tuple(items))
            }
            _ => self.error(&["integer", "`bot`", "`top`", "name", "`(`", "`-`"]),
        }
    }
}

/// Parses a whole model.
pub fn parse(src: &str) -> Result<Model, QrmlError> {
    let mut p = Parser {
        toks: lex(src)?,
        at: 0,
    };
    p.model()
}

/// Parses a single expression spanning the whole input.
pub fn parse_expr(src: &str) -> Result<Expr, QrmlError> {
    let mut p = Parser {
        toks: lex(src)?,
        at: 0,
    };
    let e = p.expr()?;
    if p.peek() != &Tok::Eof {
        return p.error(&["end of input"]);
    }
    Ok(e)
}
