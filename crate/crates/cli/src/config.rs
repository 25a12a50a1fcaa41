//! Session files.
//!
//! ```text
//! # comments start with '#'
//! [ring]
//! construct = product(zmod(9), zmod(9))
//!
//! [ideal]
//! generators = (3,0), (0,3)
//!
//! [matrix_ring]
//! n = 4
//!
//! [map alpha]
//! domain = J            # J | K
//! codomain = ann        # K | J | ann
//! (3,0) -> (3,0)
//! (0,3) -> 0
//!
//! [table D]
//! gen (2,1) 1 -> 0, 0, 0, 0; 0, 0, 0, 0; 1, 0, 0, 0; 0, 0, 0, 0
//!
//! [run]
//! command = verify
//! table = D
//! ```
//!
//! Maps and table rows may be given on any generating set of their domain;
//! they are extended additively and rejected if inconsistent.

use std::collections::BTreeMap;
use std::fmt;

/// A parse failure at a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, col: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, col, msg: msg.into() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingExpr {
    Zmod(u64),
    Product(Box<RingExpr>, Box<RingExpr>),
}

impl fmt::Display for RingExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingExpr::Zmod(m) => write!(f, "zmod({m})"),
            RingExpr::Product(a, b) => write!(f, "product({a}, {b})"),
        }
    }
}

/// An integer (a multiple of the unit) or a coordinate tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElementLit {
    Int(i64),
    Tuple(Vec<i64>),
}

impl fmt::Display for ElementLit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementLit::Int(v) => write!(f, "{v}"),
            ElementLit::Tuple(c) => {
                let parts: Vec<String> = c.iter().map(i64::to_string).collect();
                write!(f, "({})", parts.join(","))
            }
        }
    }
}

/// Source position of a literal, for downstream diagnostics.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatrixLit {
    Zero,
    Rows(Vec<Vec<ElementLit>>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    K,
    J,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Codomain {
    K,
    J,
    Ann,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapDef {
    pub domain: Option<Domain>,
    pub codomain: Option<Codomain>,
    pub lines: Vec<(Span, ElementLit, ElementLit)>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub span: Span,
    pub position: (usize, usize),
    pub value: ElementLit,
    pub image: MatrixLit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableDef {
    pub rows: Vec<TableRow>,
    pub span: Span,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Verify,
    Solve,
    Decompose,
    TheoremCheck,
    Build,
    Annihilator,
}

impl Command {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "verify" => Command::Verify,
            "solve" => Command::Solve,
            "decompose" => Command::Decompose,
            "theorem-check" => Command::TheoremCheck,
            "build" => Command::Build,
            "annihilator" => Command::Annihilator,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Command::Verify => "verify",
            Command::Solve => "solve",
            Command::Decompose => "decompose",
            Command::TheoremCheck => "theorem-check",
            Command::Build => "build",
            Command::Annihilator => "annihilator",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Everything in a `[run]` section.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunDef {
    pub command: Option<Command>,
    pub table: Option<String>,
    pub family: Option<String>,
    /// Family parameter name → map section name (or matrix/element literal
    /// text for `inner`/`diagonal`).
    pub params: BTreeMap<String, String>,
    pub format: Option<Format>,
    pub max_unknowns: Option<usize>,
    pub max_equations: Option<usize>,
    pub expect: Option<i32>,
    pub samples: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SessionConfig {
    pub ring: RingExpr,
    pub ideal: Vec<(Span, ElementLit)>,
    pub n: usize,
    pub maps: BTreeMap<String, MapDef>,
    pub tables: BTreeMap<String, TableDef>,
    pub run: RunDef,
}

/// Character cursor over one line, tracking the 1-based column.
struct Cursor<'a> {
    line: usize,
    text: &'a str,
    pos: usize,
    base: usize,
}

impl<'a> Cursor<'a> {
    fn new(line: usize, text: &'a str, base: usize) -> Self {
        Cursor { line, text, pos: 0, base }
    }

    fn col(&self) -> usize {
        self.base + self.text[..self.pos].chars().count() + 1
    }

    fn fail<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        err(self.line, self.col(), msg)
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.fail(format!("expected '{c}'"))
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn done(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.text.len()
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if self.done() {
            Ok(())
        } else {
            self.fail("unexpected trailing input")
        }
    }

    fn span(&mut self) -> Span {
        self.skip_ws();
        Span { line: self.line, col: self.col() }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.peek(), Some('-') | Some('+')) {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let s = &self.text[start..self.pos];
        match s.parse::<i64>() {
            Ok(v) => Ok(v),
            Err(_) => {
                self.pos = start;
                self.fail("expected an integer")
            }
        }
    }

    fn ident(&mut self) -> Result<&'a str, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-') {
            self.pos += 1;
        }
        if start == self.pos {
            return self.fail("expected a name");
        }
        Ok(&self.text[start..self.pos])
    }

    fn element(&mut self) -> Result<ElementLit, ParseError> {
        if self.eat('(') {
            let mut coords = vec![self.int()?];
            while self.eat(',') {
                coords.push(self.int()?);
            }
            self.expect(')')?;
            Ok(ElementLit::Tuple(coords))
        } else {
            Ok(ElementLit::Int(self.int()?))
        }
    }

    fn ring(&mut self) -> Result<RingExpr, ParseError> {
        let name = self.ident()?;
        self.expect('(')?;
        let r = match name {
            "zmod" => {
                let m = self.int()?;
                if m < 2 {
                    return self.fail("zmod needs a modulus of at least 2");
                }
                RingExpr::Zmod(m as u64)
            }
            "product" => {
                let a = self.ring()?;
                self.expect(',')?;
                let b = self.ring()?;
                RingExpr::Product(Box::new(a), Box::new(b))
            }
            other => return self.fail(format!("unknown ring constructor '{other}'")),
        };
        self.expect(')')?;
        Ok(r)
    }

    fn matrix(&mut self) -> Result<MatrixLit, ParseError> {
        let mut rows = vec![vec![self.element()?]];
        loop {
            if self.eat(',') {
                rows.last_mut().expect("nonempty").push(self.element()?);
            } else if self.eat(';') {
                rows.push(vec![self.element()?]);
            } else {
                break;
            }
        }
        if rows.len() == 1 && rows[0] == [ElementLit::Int(0)] {
            return Ok(MatrixLit::Zero);
        }
        Ok(MatrixLit::Rows(rows))
    }

    fn position(&mut self) -> Result<(usize, usize), ParseError> {
        self.expect('(')?;
        let i = self.int()?;
        self.expect(',')?;
        let j = self.int()?;
        self.expect(')')?;
        if i < 1 || j < 1 {
            return self.fail("positions are 1-based");
        }
        Ok((i as usize, j as usize))
    }
}

enum Section {
    None,
    Ring,
    Ideal,
    MatrixRing,
    Map(String),
    Table(String),
    Run,
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// Parse a session file, reporting the first error with its position.
pub fn parse_config(text: &str) -> Result<SessionConfig, ParseError> {
    let mut section = Section::None;
    let mut ring = None;
    let mut ideal = None;
    let mut n = None;
    let mut maps: BTreeMap<String, MapDef> = BTreeMap::new();
    let mut tables: BTreeMap<String, TableDef> = BTreeMap::new();
    let mut run = RunDef::default();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = strip_comment(raw);
        if body.trim().is_empty() {
            continue;
        }
        let trimmed = body.trim_start();
        let indent = body.len() - trimmed.len();
        if trimmed.starts_with('[') {
            let mut c = Cursor::new(line, trimmed, indent);
            c.expect('[')?;
            let span = c.span();
            let kind = c.ident()?;
            let name = if c.eat(']') {
                None
            } else {
                let name = c.ident()?.to_string();
                c.expect(']')?;
                Some(name)
            };
            c.finish()?;
            section = match (kind, name) {
                ("ring", None) => Section::Ring,
                ("ideal", None) => Section::Ideal,
                ("matrix_ring", None) => Section::MatrixRing,
                ("run", None) => Section::Run,
                ("map", Some(name)) => {
                    if maps.contains_key(&name) {
                        return err(span.line, span.col, format!("duplicate map '{name}'"));
                    }
                    maps.insert(name.clone(), MapDef { domain: None, codomain: None, lines: vec![], span });
                    Section::Map(name)
                }
                ("table", Some(name)) => {
                    if tables.contains_key(&name) {
                        return err(span.line, span.col, format!("duplicate table '{name}'"));
                    }
                    tables.insert(name.clone(), TableDef { rows: vec![], span });
                    Section::Table(name)
                }
                ("map" | "table", None) => return err(span.line, span.col, format!("[{kind}] needs a name")),
                (other, _) => return err(span.line, span.col, format!("unknown section '{other}'")),
            };
            continue;
        }

        let mut c = Cursor::new(line, trimmed, indent);
        match &section {
            Section::None => return c.fail("content before the first section"),
            Section::Ring => {
                key(&mut c, "construct")?;
                if ring.is_some() {
                    return c.fail("ring constructed twice");
                }
                ring = Some(c.ring()?);
                c.finish()?;
            }
            Section::Ideal => {
                key(&mut c, "generators")?;
                let mut gens = Vec::new();
                if !c.done() {
                    loop {
                        let span = c.span();
                        gens.push((span, c.element()?));
                        if !c.eat(',') {
                            break;
                        }
                    }
                }
                c.finish()?;
                ideal = Some(gens);
            }
            Section::MatrixRing => {
                key(&mut c, "n")?;
                let v = c.int()?;
                if v < 2 {
                    return c.fail("n must be at least 2");
                }
                c.finish()?;
                n = Some(v as usize);
            }
            Section::Map(name) => {
                let def = maps.get_mut(name).expect("section registered");
                if c.eat_str("domain") {
                    c.expect('=')?;
                    def.domain = Some(match c.ident()? {
                        "K" => Domain::K,
                        "J" => Domain::J,
                        other => return c.fail(format!("unknown domain '{other}' (use K or J)")),
                    });
                } else if c.eat_str("codomain") {
                    c.expect('=')?;
                    def.codomain = Some(match c.ident()? {
                        "K" => Codomain::K,
                        "J" => Codomain::J,
                        "ann" => Codomain::Ann,
                        other => return c.fail(format!("unknown codomain '{other}' (use K, J or ann)")),
                    });
                } else {
                    let span = c.span();
                    let x = c.element()?;
                    if !c.eat_str("->") {
                        return c.fail("expected '->'");
                    }
                    let y = c.element()?;
                    def.lines.push((span, x, y));
                }
                c.finish()?;
            }
            Section::Table(name) => {
                let span = c.span();
                if !c.eat_str("gen") {
                    return c.fail("expected 'gen (i,j) VALUE -> MATRIX'");
                }
                let position = c.position()?;
                let value = c.element()?;
                if !c.eat_str("->") {
                    return c.fail("expected '->'");
                }
                let image = c.matrix()?;
                c.finish()?;
                tables.get_mut(name).expect("section registered").rows.push(TableRow {
                    span,
                    position,
                    value,
                    image,
                });
            }
            Section::Run => {
                let k = c.ident()?;
                c.expect('=')?;
                c.skip_ws();
                let value = c.text[c.pos..].trim();
                if value.is_empty() {
                    return c.fail(format!("missing value for '{k}'"));
                }
                let number = |c: &Cursor| {
                    value
                        .parse::<usize>()
                        .or_else(|_| c.fail(format!("'{k}' needs a nonnegative integer")))
                };
                match k {
                    "command" => {
                        run.command = Some(
                            Command::parse(value).map_or_else(|| c.fail(format!("unknown command '{value}'")), Ok)?,
                        )
                    }
                    "table" => run.table = Some(value.to_string()),
                    "family" => run.family = Some(value.to_string()),
                    "format" => {
                        run.format = Some(match value {
                            "text" => Format::Text,
                            "json" => Format::Json,
                            _ => return c.fail("format is text or json"),
                        })
                    }
                    "max_unknowns" => run.max_unknowns = Some(number(&c)?),
                    "max_equations" => run.max_equations = Some(number(&c)?),
                    "samples" => run.samples = Some(number(&c)?),
                    "expect" => {
                        run.expect = Some(match value {
                            "0" => 0,
                            "1" => 1,
                            "2" => 2,
                            _ => return c.fail("expect is 0, 1 or 2"),
                        })
                    }
                    param => {
                        run.params.insert(param.to_string(), value.to_string());
                    }
                }
            }
        }
    }

    let ring = ring.map_or_else(|| err(1, 1, "missing [ring] construct"), Ok)?;
    let n = n.map_or_else(|| err(1, 1, "missing [matrix_ring] n"), Ok)?;
    let config = SessionConfig {
        ring,
        ideal: ideal.unwrap_or_default(),
        n,
        maps,
        tables,
        run,
    };
    check_references(&config)?;
    Ok(config)
}

fn key(c: &mut Cursor, name: &str) -> Result<(), ParseError> {
    let k = c.ident()?;
    if k != name {
        return c.fail(format!("expected '{name} = ...'"));
    }
    c.expect('=')
}

/// Names used in `[run]` must refer to existing sections.
fn check_references(config: &SessionConfig) -> Result<(), ParseError> {
    if let Some(t) = &config.run.table {
        if !config.tables.contains_key(t) {
            return err(1, 1, format!("[run] refers to unknown table '{t}'"));
        }
    }
    let family = config.run.family.as_deref();
    if !matches!(family, Some("inner") | Some("diagonal")) {
        for (param, target) in &config.run.params {
            if !config.maps.contains_key(target) {
                return err(1, 1, format!("[run] parameter '{param}' refers to unknown map '{target}'"));
            }
        }
    }
    Ok(())
}

/// Parse a dense matrix literal or a comma-separated element list outside a
/// file (used for `inner`/`diagonal` parameters).
pub fn parse_matrix(text: &str) -> Result<MatrixLit, ParseError> {
    let mut c = Cursor::new(1, text, 0);
    let m = c.matrix()?;
    c.finish()?;
    Ok(m)
}

pub fn parse_elements(text: &str) -> Result<Vec<ElementLit>, ParseError> {
    let mut c = Cursor::new(1, text, 0);
    let mut out = vec![c.element()?];
    while c.eat(',') {
        out.push(c.element()?);
    }
    c.finish()?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "[ring]\nconstruct = zmod(9)\n[ideal]\ngenerators = 3\n[matrix_ring]\nn = 4\n";

    #[test]
    fn minimal_config() {
        let c = parse_config(MINIMAL).unwrap();
        assert_eq!(c.ring, RingExpr::Zmod(9));
        assert_eq!(c.ideal.len(), 1);
        assert_eq!(c.ideal[0].1, ElementLit::Int(3));
        assert_eq!(c.n, 4);
    }

    #[test]
    fn tuples_and_products() {
        let text = "[ring]\nconstruct = product(zmod(9), zmod(9))\n[ideal]\ngenerators = (3,0), (0, 3)\n[matrix_ring]\nn = 4\n";
        let c = parse_config(text).unwrap();
        assert_eq!(c.ring.to_string(), "product(zmod(9), zmod(9))");
        assert_eq!(c.ideal[1].1, ElementLit::Tuple(vec![0, 3]));
    }

    #[test]
    fn tables_and_maps() {
        let text = format!(
            "{MINIMAL}[map a]\ndomain = J\ncodomain = ann\n3 -> 3 # comment\n[table D]\ngen (1,4) 3 -> 0,0,0,0;0,0,0,0;3,0,0,0;0,0,0,0\ngen (2,1) 1 -> 0\n[run]\ncommand = verify\ntable = D\n"
        );
        let c = parse_config(&text).unwrap();
        let m = &c.maps["a"];
        assert_eq!((m.domain, m.codomain), (Some(Domain::J), Some(Codomain::Ann)));
        let rows = &c.tables["D"].rows;
        assert_eq!(rows[0].position, (1, 4));
        assert!(matches!(&rows[0].image, MatrixLit::Rows(r) if r.len() == 4));
        assert_eq!(rows[1].image, MatrixLit::Zero);
        assert_eq!(c.run.command, Some(Command::Verify));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_config("[ring]\nconstruct = zmod(9\n").unwrap_err();
        assert_eq!((e.line, e.msg.as_str()), (2, "expected ')'"));
        assert_eq!(e.col, 19);
        let e = parse_config("[ring]\nconstruct = ring(9)\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.msg.contains("unknown ring constructor"));
        let e = parse_config(&format!("{MINIMAL}[table D]\ngen (1,4) 3 => 0\n")).unwrap_err();
        assert_eq!((e.line, e.col), (8, 13));
        let e = parse_config(&format!("{MINIMAL}[run]\ntable = X\n")).unwrap_err();
        assert!(e.msg.contains("unknown table 'X'"));
        let e = parse_config("[matrix_ring]\nn = 1\n").unwrap_err();
        assert!(e.msg.contains("at least 2"));
    }
}
