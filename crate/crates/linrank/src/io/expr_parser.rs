//! Parser for the expression and inequality grammar:
//!
//! ```text
//! expr  := ['-'] term (('+'|'-') term)*
//! term  := [rational ['*']] atom
//! atom  := 'H(' vlist ['|' vlist] ')' | 'I(' vlist ';' vlist ['|' vlist] ')'
//! vlist := var (',' var)*
//! ```
//!
//! Whitespace is insignificant; rationals are `p/q` or plain integers;
//! a statement contains exactly one of `<=`, `>=`, `=`.

use num_traits::One;

use crate::expr::{expand_info_term, EntropyExpr, InfoTerm, LinearInequality};
use crate::io::span::SourceSpan;
use crate::io::ParseError;
use crate::vars::{VarSet, VarUniverse};
use crate::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(String),
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
    Bar,
    Semi,
    Comma,
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    span: SourceSpan,
}

fn tokenize(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1u32;
    let mut col = 1u32;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let start = col;
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
                continue;
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
                continue;
            }
            '#' => {
                // comment to end of line
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                    col += 1;
                }
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                let mut name = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() {
                        name.push(c);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                out.push(Spanned {
                    tok: Tok::Ident(name),
                    span: SourceSpan::range(line, start, col - 1),
                });
                continue;
            }
            c if c.is_ascii_digit() => {
                let mut digits = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() {
                        digits.push(c);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                out.push(Spanned {
                    tok: Tok::Num(digits),
                    span: SourceSpan::range(line, start, col - 1),
                });
                continue;
            }
            '<' | '>' => {
                chars.next();
                col += 1;
                if chars.peek() == Some(&'=') {
                    chars.next();
                    col += 1;
                    out.push(Spanned {
                        tok: if c == '<' { Tok::Le } else { Tok::Ge },
                        span: SourceSpan::range(line, start, col - 1),
                    });
                } else {
                    return Err(ParseError::syntax(
                        format!("expected `{c}=`"),
                        SourceSpan::at(line, start),
                    ));
                }
                continue;
            }
            _ => {
                let tok = match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '|' => Tok::Bar,
                    ';' => Tok::Semi,
                    ',' => Tok::Comma,
                    '=' => Tok::Eq,
                    other => {
                        return Err(ParseError::syntax(
                            format!("unexpected character `{other}`"),
                            SourceSpan::at(line, start),
                        ))
                    }
                };
                chars.next();
                col += 1;
                out.push(Spanned {
                    tok,
                    span: SourceSpan::at(line, start),
                });
            }
        }
    }
    Ok(out)
}

/// A coefficient-and-term pair as written, before expansion into `H`
/// coordinates.
#[derive(Debug, Clone)]
pub struct RawTerm {
    pub coeff: Rat,
    pub term: RawAtom,
    pub span: SourceSpan,
}

/// An `H(...)` or `I(...)` atom with unresolved variable names.
#[derive(Debug, Clone)]
pub enum RawAtom {
    Entropy {
        x: Vec<String>,
        z: Vec<String>,
    },
    Mutual {
        x: Vec<String>,
        y: Vec<String>,
        z: Vec<String>,
    },
}

impl RawAtom {
    fn names(&self) -> impl Iterator<Item = &String> {
        let (a, b, c): (&[String], &[String], &[String]) = match self {
            RawAtom::Entropy { x, z } => (x, z, &[]),
            RawAtom::Mutual { x, y, z } => (x, y, z),
        };
        a.iter().chain(b.iter()).chain(c.iter())
    }

    fn resolve(&self, universe: &VarUniverse, span: SourceSpan) -> Result<InfoTerm, ParseError> {
        let set = |names: &[String]| -> Result<VarSet, ParseError> {
            let mut mask = 0u32;
            for name in names {
                let i = universe.index_of(name).ok_or(ParseError::UnknownVariable {
                    name: name.clone(),
                    span,
                })?;
                mask |= 1 << i;
            }
            Ok(VarSet::from_mask(mask))
        };
        Ok(match self {
            RawAtom::Entropy { x, z } => InfoTerm::cond_entropy(set(x)?, set(z)?),
            RawAtom::Mutual { x, y, z } => InfoTerm::cond_mutual(set(x)?, set(y)?, set(z)?),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

/// A parsed statement with its two sides still in term-list form. The
/// term lists keep the written structure, which the k-slack construction
/// needs; `to_inequality` canonicalizes.
#[derive(Debug, Clone)]
pub struct ParsedStatement {
    pub lhs: Vec<(Rat, InfoTerm)>,
    pub rhs: Vec<(Rat, InfoTerm)>,
    pub relation: Relation,
    pub universe: VarUniverse,
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Spanned> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn end_span(&self) -> SourceSpan {
        self.toks
            .last()
            .map(|t| SourceSpan::at(t.span.line, t.span.col_end + 1))
            .unwrap_or(SourceSpan::at(1, 1))
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<SourceSpan, ParseError> {
        match self.next() {
            Some(t) if t.tok == tok => Ok(t.span),
            Some(t) => Err(ParseError::syntax(format!("expected {what}"), t.span)),
            None => Err(ParseError::syntax(
                format!("expected {what}, found end of input"),
                self.end_span(),
            )),
        }
    }

    fn parse_vlist(&mut self) -> Result<Vec<String>, ParseError> {
        let mut names = Vec::new();
        loop {
            match self.next() {
                Some(Spanned {
                    tok: Tok::Ident(name),
                    ..
                }) => names.push(name),
                Some(t) => {
                    return Err(ParseError::syntax("expected variable name", t.span));
                }
                None => {
                    return Err(ParseError::syntax(
                        "expected variable name, found end of input",
                        self.end_span(),
                    ))
                }
            }
            match self.peek() {
                Some(Spanned { tok: Tok::Comma, .. }) => {
                    self.next();
                }
                _ => return Ok(names),
            }
        }
    }

    fn parse_atom(&mut self) -> Result<(RawAtom, SourceSpan), ParseError> {
        let head = self.next().ok_or_else(|| {
            ParseError::syntax("expected H(...) or I(...), found end of input", self.end_span())
        })?;
        let name = match &head.tok {
            Tok::Ident(n) => n.clone(),
            _ => return Err(ParseError::syntax("expected H(...) or I(...)", head.span)),
        };
        match name.as_str() {
            "H" => {
                self.expect(Tok::LParen, "`(`")?;
                let x = self.parse_vlist()?;
                let z = if matches!(self.peek(), Some(Spanned { tok: Tok::Bar, .. })) {
                    self.next();
                    self.parse_vlist()?
                } else {
                    Vec::new()
                };
                let close = self.expect(Tok::RParen, "`)`")?;
                Ok((
                    RawAtom::Entropy { x, z },
                    SourceSpan::range(head.span.line, head.span.col_start, close.col_end),
                ))
            }
            "I" => {
                self.expect(Tok::LParen, "`(`")?;
                let x = self.parse_vlist()?;
                self.expect(Tok::Semi, "`;`")?;
                let y = self.parse_vlist()?;
                let z = if matches!(self.peek(), Some(Spanned { tok: Tok::Bar, .. })) {
                    self.next();
                    self.parse_vlist()?
                } else {
                    Vec::new()
                };
                let close = self.expect(Tok::RParen, "`)`")?;
                Ok((
                    RawAtom::Mutual { x, y, z },
                    SourceSpan::range(head.span.line, head.span.col_start, close.col_end),
                ))
            }
            _ => Err(ParseError::syntax("expected H(...) or I(...)", head.span)),
        }
    }

    fn parse_rational(&mut self) -> Result<Rat, ParseError> {
        let numer = match self.next() {
            Some(Spanned {
                tok: Tok::Num(d),
                span,
            }) => d
                .parse::<num_bigint::BigInt>()
                .map_err(|_| ParseError::syntax("invalid number", span))?,
            Some(t) => return Err(ParseError::syntax("expected number", t.span)),
            None => {
                return Err(ParseError::syntax(
                    "expected number, found end of input",
                    self.end_span(),
                ))
            }
        };
        if matches!(self.peek(), Some(Spanned { tok: Tok::Slash, .. })) {
            self.next();
            match self.next() {
                Some(Spanned {
                    tok: Tok::Num(d),
                    span,
                }) => {
                    let denom = d
                        .parse::<num_bigint::BigInt>()
                        .map_err(|_| ParseError::syntax("invalid number", span))?;
                    if denom == 0.into() {
                        return Err(ParseError::syntax("zero denominator", span));
                    }
                    Ok(Rat::new(numer, denom))
                }
                Some(t) => Err(ParseError::syntax("expected denominator", t.span)),
                None => Err(ParseError::syntax(
                    "expected denominator, found end of input",
                    self.end_span(),
                )),
            }
        } else {
            Ok(Rat::from_integer(numer))
        }
    }

    /// expr := ['-'] term (('+'|'-') term)*
    fn parse_terms(&mut self) -> Result<Vec<RawTerm>, ParseError> {
        let mut out = Vec::new();
        let mut sign = Rat::one();
        if matches!(self.peek(), Some(Spanned { tok: Tok::Minus, .. })) {
            self.next();
            sign = -sign;
        } else if matches!(self.peek(), Some(Spanned { tok: Tok::Plus, .. })) {
            self.next();
        }
        loop {
            let coeff = if matches!(self.peek(), Some(Spanned { tok: Tok::Num(_), .. })) {
                let r = self.parse_rational()?;
                if matches!(self.peek(), Some(Spanned { tok: Tok::Star, .. })) {
                    self.next();
                }
                r
            } else {
                Rat::one()
            };
            let (term, span) = self.parse_atom()?;
            out.push(RawTerm {
                coeff: coeff * &sign,
                term,
                span,
            });
            match self.peek() {
                Some(Spanned { tok: Tok::Plus, .. }) => {
                    self.next();
                    sign = Rat::one();
                }
                Some(Spanned { tok: Tok::Minus, .. }) => {
                    self.next();
                    sign = -Rat::one();
                }
                _ => return Ok(out),
            }
        }
    }
}

fn infer_universe(terms: &[RawTerm]) -> Result<VarUniverse, ParseError> {
    let mut names: Vec<String> = Vec::new();
    for t in terms {
        for name in t.term.names() {
            if !names.contains(name) {
                names.push(name.clone());
            }
        }
    }
    names.sort();
    VarUniverse::new(names).map_err(|e| ParseError::BadUniverse(e.to_string()))
}

fn resolve_terms(
    raw: &[RawTerm],
    universe: &VarUniverse,
) -> Result<Vec<(Rat, InfoTerm)>, ParseError> {
    raw.iter()
        .map(|t| {
            let info = t.term.resolve(universe, t.span)?;
            match info {
                InfoTerm::Entropy { x, .. } if x.is_empty() => {
                    Err(ParseError::syntax("empty variable list", t.span))
                }
                InfoTerm::Mutual { x, y, .. } if x.is_empty() || y.is_empty() => {
                    Err(ParseError::syntax("empty variable list", t.span))
                }
                _ => Ok((t.coeff.clone(), info)),
            }
        })
        .collect()
}

/// Expand and sum a resolved term list into a canonical expression.
pub fn terms_to_expr(
    terms: &[(Rat, InfoTerm)],
    universe: &VarUniverse,
) -> Result<EntropyExpr, ParseError> {
    let mut expr = EntropyExpr::zero();
    for (coeff, term) in terms {
        let expanded = expand_info_term(*term, universe)
            .map_err(|e| ParseError::BadUniverse(e.to_string()))?;
        expr.add_assign(&expanded.scaled(coeff));
    }
    Ok(expr)
}

/// Parse an expression against a given universe.
pub fn parse_expression_in(
    text: &str,
    universe: &VarUniverse,
) -> Result<EntropyExpr, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, pos: 0 };
    let raw = p.parse_terms()?;
    if let Some(t) = p.peek() {
        return Err(ParseError::syntax("unexpected trailing input", t.span));
    }
    let terms = resolve_terms(&raw, universe)?;
    terms_to_expr(&terms, universe)
}

/// Parse an expression, inferring the universe from the variables
/// mentioned (sorted by name).
pub fn parse_expression(text: &str) -> Result<(EntropyExpr, VarUniverse), ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, pos: 0 };
    let raw = p.parse_terms()?;
    if let Some(t) = p.peek() {
        return Err(ParseError::syntax("unexpected trailing input", t.span));
    }
    let universe = infer_universe(&raw)?;
    let terms = resolve_terms(&raw, &universe)?;
    Ok((terms_to_expr(&terms, &universe)?, universe))
}

fn parse_statement_terms(text: &str) -> Result<(Vec<RawTerm>, Vec<RawTerm>, Relation), ParseError> {
    let toks = tokenize(text)?;
    // split at the unique relation token
    let mut rel_pos = None;
    for (i, t) in toks.iter().enumerate() {
        let r = match t.tok {
            Tok::Le => Relation::Le,
            Tok::Ge => Relation::Ge,
            Tok::Eq => Relation::Eq,
            _ => continue,
        };
        if rel_pos.is_some() {
            return Err(ParseError::syntax("multiple relations in statement", t.span));
        }
        rel_pos = Some((i, r));
    }
    let (i, relation) = rel_pos.ok_or_else(|| {
        ParseError::syntax("statement must contain one of `<=`, `>=`, `=`", SourceSpan::at(1, 1))
    })?;
    let mut left = Parser {
        toks: toks[..i].to_vec(),
        pos: 0,
    };
    let lhs = left.parse_terms()?;
    if let Some(t) = left.peek() {
        return Err(ParseError::syntax("unexpected input before relation", t.span));
    }
    let mut right = Parser {
        toks: toks[i + 1..].to_vec(),
        pos: 0,
    };
    let rhs = right.parse_terms()?;
    if let Some(t) = right.peek() {
        return Err(ParseError::syntax("unexpected trailing input", t.span));
    }
    Ok((lhs, rhs, relation))
}

/// Parse a statement against a given universe.
pub fn parse_statement_in(
    text: &str,
    universe: &VarUniverse,
) -> Result<ParsedStatement, ParseError> {
    let (lhs_raw, rhs_raw, relation) = parse_statement_terms(text)?;
    Ok(ParsedStatement {
        lhs: resolve_terms(&lhs_raw, universe)?,
        rhs: resolve_terms(&rhs_raw, universe)?,
        relation,
        universe: universe.clone(),
    })
}

/// Parse a statement, inferring the universe from both sides.
pub fn parse_statement(text: &str) -> Result<ParsedStatement, ParseError> {
    let (lhs_raw, rhs_raw, relation) = parse_statement_terms(text)?;
    let mut all = lhs_raw.clone();
    all.extend(rhs_raw.iter().cloned());
    let universe = infer_universe(&all)?;
    Ok(ParsedStatement {
        lhs: resolve_terms(&lhs_raw, &universe)?,
        rhs: resolve_terms(&rhs_raw, &universe)?,
        relation,
        universe,
    })
}

impl ParsedStatement {
    /// The statement's sides as canonical expressions.
    pub fn side_exprs(&self) -> Result<(EntropyExpr, EntropyExpr), ParseError> {
        Ok((
            terms_to_expr(&self.lhs, &self.universe)?,
            terms_to_expr(&self.rhs, &self.universe)?,
        ))
    }

    /// Normalize to `greater side - lesser side >= 0`. Equalities are
    /// rejected here; callers that accept them use [`Self::as_equality`].
    pub fn to_inequality(&self, label: impl Into<String>) -> Result<LinearInequality, ParseError> {
        let (lhs, rhs) = self.side_exprs()?;
        let mut expr = match self.relation {
            Relation::Le => rhs,
            Relation::Ge => lhs,
            Relation::Eq => {
                return Err(ParseError::syntax(
                    "expected an inequality, found `=`",
                    SourceSpan::at(1, 1),
                ))
            }
        };
        match self.relation {
            Relation::Le => expr.sub_assign(&lhs),
            Relation::Ge => expr.sub_assign(&rhs),
            Relation::Eq => unreachable!(),
        }
        Ok(LinearInequality::new(expr, label, self.universe.clone()))
    }

    /// An equality as the pair of inequalities `lhs - rhs >= 0` and
    /// `rhs - lhs >= 0`.
    pub fn as_equality(
        &self,
        label: impl Into<String>,
    ) -> Result<(LinearInequality, LinearInequality), ParseError> {
        if self.relation != Relation::Eq {
            return Err(ParseError::syntax(
                "expected `=`",
                SourceSpan::at(1, 1),
            ));
        }
        let (lhs, rhs) = self.side_exprs()?;
        let label = label.into();
        let mut fwd = lhs.clone();
        fwd.sub_assign(&rhs);
        let mut bwd = rhs;
        bwd.sub_assign(&lhs);
        Ok((
            LinearInequality::new(fwd, format!("{label}>="), self.universe.clone()),
            LinearInequality::new(bwd, format!("{label}<="), self.universe.clone()),
        ))
    }
}

/// Parse and canonicalize an inequality in one step, inferring the
/// universe; `=` is rejected.
pub fn parse_inequality(text: &str, label: &str) -> Result<LinearInequality, ParseError> {
    parse_statement(text)?.to_inequality(label)
}

/// Parse and canonicalize an inequality against a given universe.
pub fn parse_inequality_in(
    text: &str,
    label: &str,
    universe: &VarUniverse,
) -> Result<LinearInequality, ParseError> {
    parse_statement_in(text, universe)?.to_inequality(label)
}
