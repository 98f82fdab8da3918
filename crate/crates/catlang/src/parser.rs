//! Recursive-descent parser. Fail-fast: the first error is reported with
//! line, column, the offending token, and the set of expected tokens.
//!
//! Keywords are contextual: any identifier may be used as a name, and
//! clause keywords (`objects`, `arrow`, …) are matched by text where the
//! grammar expects them. Clause-terminating semicolons may be omitted
//! immediately before a closing brace.

use crate::ast::*;
use crate::error::CatlangError;
use crate::lexer::lex;
use crate::token::{Span, Tok, Token};

pub fn parse(text: &str) -> Result<SourceDocument, CatlangError> {
    let tokens = lex(text)?;
    let mut p = Parser { tokens, pos: 0 };
    let mut decls = Vec::new();
    while !p.at_eof() {
        decls.push(p.decl()?);
    }
    Ok(SourceDocument { decls })
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn at_eof(&self) -> bool {
        matches!(self.peek().tok, Tok::Eof)
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if !matches!(t.tok, Tok::Eof) {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, expected: &[&str]) -> CatlangError {
        let t = self.peek();
        CatlangError::Parse {
            line: t.span.line,
            col: t.span.col,
            found: t.tok.to_string(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<Span, CatlangError> {
        if self.peek().tok == tok {
            Ok(self.bump().span)
        } else {
            Err(self.error_here(&[expected]))
        }
    }

    /// Match an identifier with exactly this text.
    fn keyword(&mut self, kw: &'static str) -> Result<Span, CatlangError> {
        match &self.peek().tok {
            Tok::Ident(s) if s == kw => Ok(self.bump().span),
            _ => Err(self.error_here(&[kw])),
        }
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(s) if s == kw)
    }

    /// A name: identifier, number, or quoted string.
    fn name(&mut self, what: &str) -> Result<Name, CatlangError> {
        match &self.peek().tok {
            Tok::Ident(s) | Tok::Number(s) | Tok::Str(s) => {
                let text = s.clone();
                let span = self.bump().span;
                Ok(Name { text, span })
            }
            _ => Err(self.error_here(&[what])),
        }
    }

    fn name_list(&mut self, what: &str) -> Result<Vec<Name>, CatlangError> {
        let mut out = vec![self.name(what)?];
        while self.peek().tok == Tok::Comma {
            self.bump();
            out.push(self.name(what)?);
        }
        Ok(out)
    }

    /// A clause ends with `;`; the one before `}` may leave it off.
    fn clause_end(&mut self) -> Result<(), CatlangError> {
        match self.peek().tok {
            Tok::Semi => {
                self.bump();
                Ok(())
            }
            Tok::RBrace => Ok(()),
            _ => Err(self.error_here(&[";", "}"])),
        }
    }

    fn decl(&mut self) -> Result<Decl, CatlangError> {
        match &self.peek().tok {
            Tok::Ident(s) => match s.as_str() {
                "category" => self.category().map(Decl::Category),
                "monoid" => self.monoid().map(Decl::Monoid),
                "poset" => self.poset().map(Decl::Poset),
                "graph" => self.graph().map(Decl::Graph),
                "functor" => self.functor().map(Decl::Functor),
                "nat" => self.nat().map(Decl::Nat),
                "presheaf" => self.presheaf().map(Decl::Presheaf),
                "task" => self.task().map(Decl::Task),
                _ => Err(self.error_here(&[
                    "category", "monoid", "poset", "graph", "functor", "nat", "presheaf",
                    "task",
                ])),
            },
            _ => Err(self.error_here(&[
                "category", "monoid", "poset", "graph", "functor", "nat", "presheaf", "task",
            ])),
        }
    }

    fn arrow_clause(&mut self) -> Result<ArrowDecl, CatlangError> {
        let start = self.keyword("arrow")?;
        let name = self.name("arrow name")?;
        self.expect(Tok::Colon, ":")?;
        let dom = self.name("domain object")?;
        self.expect(Tok::Arrow, "->")?;
        let cod = self.name("codomain object")?;
        let end = cod.span;
        self.clause_end()?;
        Ok(ArrowDecl {
            name,
            dom,
            cod,
            span: start.join(end),
        })
    }

    fn compose_clause(&mut self) -> Result<ComposeDecl, CatlangError> {
        let start = self.keyword("compose")?;
        let second = self.name("morphism name")?;
        self.expect(Tok::Dot, ".")?;
        let first = self.name("morphism name")?;
        self.expect(Tok::Equals, "=")?;
        let result = self.name("morphism name")?;
        let end = result.span;
        self.clause_end()?;
        Ok(ComposeDecl {
            second,
            first,
            result,
            span: start.join(end),
        })
    }

    fn category(&mut self) -> Result<CategoryDecl, CatlangError> {
        let start = self.keyword("category")?;
        let name = self.name("category name")?;
        self.expect(Tok::LBrace, "{")?;
        self.keyword("objects")?;
        let objects = self.name_list("object name")?;
        self.clause_end()?;
        let mut arrows = Vec::new();
        while self.at_keyword("arrow") {
            arrows.push(self.arrow_clause()?);
        }
        let mut composes = Vec::new();
        while self.at_keyword("compose") {
            composes.push(self.compose_clause()?);
        }
        let end = self.expect(Tok::RBrace, "}")?;
        Ok(CategoryDecl {
            name,
            objects,
            arrows,
            composes,
            span: start.join(end),
        })
    }

    fn monoid(&mut self) -> Result<MonoidDecl, CatlangError> {
        let start = self.keyword("monoid")?;
        let name = self.name("monoid name")?;
        self.expect(Tok::LBrace, "{")?;
        self.keyword("unit")?;
        let unit = self.name("unit element")?;
        self.clause_end()?;
        self.keyword("elements")?;
        let elements = self.name_list("element name")?;
        self.clause_end()?;
        let mut composes = Vec::new();
        while self.at_keyword("compose") {
            composes.push(self.compose_clause()?);
        }
        let end = self.expect(Tok::RBrace, "}")?;
        Ok(MonoidDecl {
            name,
            unit,
            elements,
            composes,
            span: start.join(end),
        })
    }

    fn poset(&mut self) -> Result<PosetDecl, CatlangError> {
        let start = self.keyword("poset")?;
        let name = self.name("poset name")?;
        self.expect(Tok::LBrace, "{")?;
        self.keyword("elements")?;
        let elements = self.name_list("element name")?;
        self.clause_end()?;
        self.keyword("order")?;
        let order = if self.at_keyword("divides") {
            self.bump();
            OrderSpec::Divides
        } else if self.peek().tok == Tok::LParen {
            let mut pairs = Vec::new();
            loop {
                self.expect(Tok::LParen, "(")?;
                let lo = self.name("element name")?;
                self.expect(Tok::Comma, ",")?;
                let hi = self.name("element name")?;
                self.expect(Tok::RParen, ")")?;
                pairs.push((lo, hi));
                if self.peek().tok == Tok::Comma {
                    self.bump();
                } else {
                    break;
                }
            }
            OrderSpec::Pairs(pairs)
        } else {
            return Err(self.error_here(&["divides", "("]));
        };
        self.clause_end()?;
        let end = self.expect(Tok::RBrace, "}")?;
        Ok(PosetDecl {
            name,
            elements,
            order,
            span: start.join(end),
        })
    }

    fn path(&mut self) -> Result<PathDecl, CatlangError> {
        if self.at_keyword("id") {
            let start = self.bump().span;
            let object = self.name("object name")?;
            let span = start.join(object.span);
            return Ok(PathDecl::IdentityAt { object, span });
        }
        let first = self.name("arrow name")?;
        let start = first.span;
        let mut names = vec![first];
        while self.peek().tok == Tok::Dot {
            self.bump();
            names.push(self.name("arrow name")?);
        }
        let span = start.join(names.last().expect("nonempty").span);
        Ok(PathDecl::Arrows { names, span })
    }

    fn graph(&mut self) -> Result<GraphDecl, CatlangError> {
        let start = self.keyword("graph")?;
        let name = self.name("graph name")?;
        self.expect(Tok::LBrace, "{")?;
        self.keyword("objects")?;
        let objects = self.name_list("object name")?;
        self.clause_end()?;
        let mut arrows = Vec::new();
        while self.at_keyword("arrow") {
            arrows.push(self.arrow_clause()?);
        }
        let mut relations = Vec::new();
        while self.at_keyword("relation") {
            let rstart = self.bump().span;
            let lhs = self.path()?;
            self.expect(Tok::Equals, "=")?;
            let rhs = self.path()?;
            let span = rstart.join(rhs.span());
            self.clause_end()?;
            relations.push(RelationDecl { lhs, rhs, span });
        }
        let end = self.expect(Tok::RBrace, "}")?;
        Ok(GraphDecl {
            name,
            objects,
            arrows,
            relations,
            span: start.join(end),
        })
    }

    fn functor(&mut self) -> Result<FunctorDecl, CatlangError> {
        let start = self.keyword("functor")?;
        let name = self.name("functor name")?;
        self.expect(Tok::Colon, ":")?;
        let source = self.name("source category")?;
        self.expect(Tok::Arrow, "->")?;
        let target = self.name("target category")?;
        self.expect(Tok::LBrace, "{")?;
        let mut clauses = Vec::new();
        while self.at_keyword("on") {
            self.bump();
            let lhs = self.name("object or arrow name")?;
            self.expect(Tok::Equals, "=")?;
            let rhs = self.name("image name")?;
            self.clause_end()?;
            clauses.push((lhs, rhs));
        }
        let end = self.expect(Tok::RBrace, "}")?;
        Ok(FunctorDecl {
            name,
            source,
            target,
            clauses,
            span: start.join(end),
        })
    }

    fn nat(&mut self) -> Result<NatDecl, CatlangError> {
        let start = self.keyword("nat")?;
        let name = self.name("transformation name")?;
        self.expect(Tok::Colon, ":")?;
        let source = self.name("source functor")?;
        self.expect(Tok::FatArrow, "=>")?;
        let target = self.name("target functor")?;
        self.expect(Tok::LBrace, "{")?;
        let mut components = Vec::new();
        while self.at_keyword("at") {
            self.bump();
            let obj = self.name("object name")?;
            self.expect(Tok::Equals, "=")?;
            let comp = self.name("component arrow")?;
            self.clause_end()?;
            components.push((obj, comp));
        }
        let end = self.expect(Tok::RBrace, "}")?;
        Ok(NatDecl {
            name,
            source,
            target,
            components,
            span: start.join(end),
        })
    }

    fn presheaf(&mut self) -> Result<PresheafDecl, CatlangError> {
        let start = self.keyword("presheaf")?;
        let name = self.name("presheaf name")?;
        self.keyword("on")?;
        let base = self.name("base category")?;
        self.expect(Tok::LBrace, "{")?;
        let mut values = Vec::new();
        while self.at_keyword("at") {
            self.bump();
            let obj = self.name("object name")?;
            self.expect(Tok::Equals, "=")?;
            self.expect(Tok::LBrace, "{")?;
            let atoms = if self.peek().tok == Tok::RBrace {
                Vec::new()
            } else {
                self.name_list("element atom")?
            };
            self.expect(Tok::RBrace, "}")?;
            self.clause_end()?;
            values.push((obj, atoms));
        }
        let mut actions = Vec::new();
        while self.at_keyword("via") {
            let vstart = self.bump().span;
            let arrow = self.name("arrow name")?;
            self.expect(Tok::Colon, ":")?;
            let mut maps = Vec::new();
            loop {
                let from = self.name("element atom")?;
                self.expect(Tok::Arrow, "->")?;
                let to = self.name("element atom")?;
                maps.push((from, to));
                if self.peek().tok == Tok::Comma {
                    self.bump();
                } else {
                    break;
                }
            }
            let span = vstart.join(maps.last().expect("nonempty").1.span);
            self.clause_end()?;
            actions.push(ViaDecl { arrow, maps, span });
        }
        let end = self.expect(Tok::RBrace, "}")?;
        Ok(PresheafDecl {
            name,
            base,
            values,
            actions,
            span: start.join(end),
        })
    }

    fn task_kind(&mut self) -> Result<TaskKind, CatlangError> {
        let expected = [
            "limit",
            "colimit",
            "left-adjoint",
            "yoneda-check",
            "density",
            "classifier",
        ];
        let head = match &self.peek().tok {
            Tok::Ident(s) => s.clone(),
            _ => return Err(self.error_here(&expected)),
        };
        match head.as_str() {
            "limit" => {
                self.bump();
                Ok(TaskKind::Limit)
            }
            "colimit" => {
                self.bump();
                Ok(TaskKind::Colimit)
            }
            "density" => {
                self.bump();
                Ok(TaskKind::Density)
            }
            "classifier" => {
                self.bump();
                Ok(TaskKind::Classifier)
            }
            "left" | "yoneda" => {
                self.bump();
                self.expect(Tok::Minus, "-")?;
                match (head.as_str(), &self.peek().tok) {
                    ("left", Tok::Ident(s)) if s == "adjoint" => {
                        self.bump();
                        Ok(TaskKind::LeftAdjoint)
                    }
                    ("yoneda", Tok::Ident(s)) if s == "check" => {
                        self.bump();
                        Ok(TaskKind::YonedaCheck)
                    }
                    _ => Err(self.error_here(if head == "left" {
                        &["adjoint"]
                    } else {
                        &["check"]
                    })),
                }
            }
            _ => Err(self.error_here(&expected)),
        }
    }

    fn task(&mut self) -> Result<TaskDecl, CatlangError> {
        let start = self.keyword("task")?;
        let kind = self.task_kind()?;
        if self.at_keyword("of") {
            self.bump();
        }
        let target = self.name("declaration name")?;
        let ambient = if self.at_keyword("in") {
            self.bump();
            Some(self.name("category name")?)
        } else {
            None
        };
        let end = self.expect(Tok::Semi, ";")?;
        Ok(TaskDecl {
            kind,
            target,
            ambient,
            span: start.join(end),
        })
    }
}
