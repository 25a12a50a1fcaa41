//! Turning a parsed [`SessionConfig`] into ring objects.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use carpet_jder::linalg::GroupElement;
use carpet_jder::matrix::{MatrixElement, StructuralMatrixRing};
use carpet_jder::ring::{AdditiveMap, FiniteRing, Ideal};
use carpet_jder::table::DerivationTable;

use crate::config::{Codomain, Domain, ElementLit, MatrixLit, RingExpr, SessionConfig, Span, TableDef};

/// Largest domain the closure in [`Session::map`] will enumerate.
const MAX_CLOSURE: u64 = 1 << 20;

/// A semantic error in a session file, with the position it refers to.
#[derive(Debug)]
pub struct InputError {
    pub span: Option<Span>,
    pub msg: String,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.span {
            Some(s) => write!(f, "{s}: {}", self.msg),
            None => f.write_str(&self.msg),
        }
    }
}

impl std::error::Error for InputError {}

pub type InputResult<T> = Result<T, InputError>;

fn at(span: Span, msg: impl Into<String>) -> InputError {
    InputError { span: Some(span), msg: msg.into() }
}

fn bare(msg: impl Into<String>) -> InputError {
    InputError { span: None, msg: msg.into() }
}

type Row = (Span, GroupElement, MatrixElement);

/// The ring `R_n(K, J)` described by a session file.
pub struct Session {
    pub config: SessionConfig,
    pub ring: Arc<StructuralMatrixRing>,
}

pub fn build_coefficient_ring(expr: &RingExpr) -> InputResult<FiniteRing> {
    match expr {
        RingExpr::Zmod(m) => FiniteRing::zmod(*m).map_err(|e| bare(format!("zmod({m}): {e}"))),
        RingExpr::Product(a, b) => {
            let (a, b) = (build_coefficient_ring(a)?, build_coefficient_ring(b)?);
            FiniteRing::product(&a, &b).map_err(|e| bare(e.to_string()))
        }
    }
}

pub fn element(k: &FiniteRing, lit: &ElementLit, span: Span) -> InputResult<GroupElement> {
    match lit {
        ElementLit::Int(v) => Ok(k.group().scale(k.unit(), *v)),
        ElementLit::Tuple(c) => k.element(c).map_err(|e| at(span, format!("{lit}: {e}"))),
    }
}

impl Session {
    pub fn new(config: SessionConfig) -> InputResult<Self> {
        let k = build_coefficient_ring(&config.ring)?;
        let gens = config
            .ideal
            .iter()
            .map(|(span, lit)| element(&k, lit, *span))
            .collect::<InputResult<Vec<_>>>()?;
        let j = if gens.is_empty() {
            k.zero_ideal()
        } else {
            k.ideal_closure(&gens).map_err(|e| bare(format!("[ideal]: {e}")))?
        };
        let ring = StructuralMatrixRing::new(config.n, k, j).map_err(|e| bare(format!("[matrix_ring]: {e}")))?;
        Ok(Session {
            config,
            ring: Arc::new(ring),
        })
    }

    pub fn k(&self) -> &FiniteRing {
        self.ring.coefficient_ring()
    }

    fn ideal_of(&self, d: Domain) -> Ideal {
        match d {
            Domain::K => self.k().whole(),
            Domain::J => self.ring.ideal().clone(),
        }
    }

    fn codomain_of(&self, c: Codomain) -> InputResult<Ideal> {
        Ok(match c {
            Codomain::K => self.k().whole(),
            Codomain::J => self.ring.ideal().clone(),
            Codomain::Ann => self.k().annihilator(self.ring.ideal()).map_err(|e| bare(e.to_string()))?,
        })
    }

    /// The map section `name`, read as a map `domain → codomain`. Sections
    /// that declare their own domain or codomain must agree.
    pub fn map(&self, name: &str, domain: Domain, codomain: Codomain) -> InputResult<AdditiveMap> {
        let def = self
            .config
            .maps
            .get(name)
            .ok_or_else(|| bare(format!("unknown map '{name}'")))?;
        if def.domain.is_some_and(|d| d != domain) || def.codomain.is_some_and(|c| c != codomain) {
            return Err(at(
                def.span,
                format!("map '{name}' is used as a map {domain:?} → {codomain:?} but declares otherwise"),
            ));
        }
        let dom = self.ideal_of(domain);
        let cod = self.codomain_of(codomain)?;
        let k = self.k();
        let mut pairs = Vec::new();
        for (span, x, y) in &def.lines {
            let x = element(k, x, *span)?;
            if !dom.contains(&x) {
                return Err(at(*span, format!("{x} is not in the domain {domain:?}")));
            }
            let y = element(k, y, *span)?;
            if !cod.contains(&y) {
                return Err(at(*span, format!("image {y} is not in the codomain {codomain:?}")));
            }
            pairs.push((*span, x, y));
        }
        if pairs.is_empty() {
            return Ok(AdditiveMap::zero(&dom, &cod));
        }
        let g = k.group();
        let images = extend(&dom, &pairs, g.zero(), |a, b| g.add(a, b))
            .map_err(|(span, msg)| at(span, format!("map '{name}': {msg}")))?;
        AdditiveMap::new(&dom, &cod, images).map_err(|e| at(def.span, e.to_string()))
    }

    pub fn map_zero(&self, domain: Domain, codomain: Codomain) -> InputResult<AdditiveMap> {
        Ok(AdditiveMap::zero(&self.ideal_of(domain), &self.codomain_of(codomain)?))
    }

    pub fn matrix(&self, lit: &MatrixLit, span: Span) -> InputResult<MatrixElement> {
        match lit {
            MatrixLit::Zero => Ok(self.ring.zero()),
            MatrixLit::Rows(rows) => {
                let n = self.ring.size();
                if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                    return Err(at(span, format!("matrix literal must be {n} × {n}")));
                }
                let k = self.k();
                let rows = rows
                    .iter()
                    .map(|r| r.iter().map(|e| element(k, e, span)).collect::<InputResult<Vec<_>>>())
                    .collect::<InputResult<Vec<_>>>()?;
                self.ring.from_rows(rows).map_err(|e| at(span, e.to_string()))
            }
        }
    }

    /// The table section `name`. Rows at one position are extended
    /// additively over the entry ideal; positions without rows map to zero.
    pub fn table(&self, name: &str) -> InputResult<DerivationTable> {
        let def = self
            .config
            .tables
            .get(name)
            .ok_or_else(|| bare(format!("unknown table '{name}'")))?;
        self.resolve_table(name, def)
    }

    fn resolve_table(&self, name: &str, def: &TableDef) -> InputResult<DerivationTable> {
        let r = &self.ring;
        let n = r.size();
        let mut by_position: BTreeMap<(usize, usize), Vec<Row>> = BTreeMap::new();
        for row in &def.rows {
            let (i, j) = row.position;
            if i > n || j > n {
                return Err(at(row.span, format!("position ({i},{j}) is outside an {n} × {n} matrix")));
            }
            let x = element(self.k(), &row.value, row.span)?;
            if !r.pattern(i, j).contains(&x) {
                return Err(at(row.span, format!("{x} is not in the entry ideal at ({i},{j})")));
            }
            let image = self.matrix(&row.image, row.span)?;
            by_position.entry((i, j)).or_default().push((row.span, x, image));
        }
        let mut images = vec![r.zero(); r.generators().len()];
        for ((i, j), pairs) in by_position {
            let values = extend(r.pattern(i, j), &pairs, r.zero(), |a, b| r.add(a, b))
                .map_err(|(span, msg)| at(span, format!("table '{name}' at ({i},{j}): {msg}")))?;
            for (idx, v) in r.generators_at(i, j).zip(values) {
                images[idx] = v;
            }
        }
        DerivationTable::new(r.clone(), images).map_err(|e| at(def.span, e.to_string()))
    }

    /// The only table, or the one named in `[run]`.
    pub fn run_table(&self) -> InputResult<(String, DerivationTable)> {
        let name = match &self.config.run.table {
            Some(t) => t.clone(),
            None => {
                let mut names = self.config.tables.keys();
                match (names.next(), names.next()) {
                    (Some(t), None) => t.clone(),
                    (None, _) => return Err(bare("no [table] section to work on")),
                    _ => return Err(bare("several tables: name one with 'table = ...' in [run]")),
                }
            }
        };
        let t = self.table(&name)?;
        Ok((name, t))
    }
}

/// Extend `x_i ↦ y_i` additively to the subgroup the `x_i` generate and read
/// off the images of `domain`'s basis. Fails if the assignment is not well
/// defined or the `x_i` do not generate `domain`.
fn extend<T: Clone + PartialEq + fmt::Display>(
    domain: &Ideal,
    pairs: &[(Span, GroupElement, T)],
    zero: T,
    add: impl Fn(&T, &T) -> T,
) -> Result<Vec<T>, (Span, String)> {
    let first = pairs[0].0;
    let order = domain.order();
    if order > MAX_CLOSURE.into() {
        return Err((first, format!("domain of order {order} is too large to enumerate")));
    }
    let g = domain.ambient();
    let mut seen: HashMap<GroupElement, T> = HashMap::new();
    let mut queue = VecDeque::new();
    seen.insert(g.zero(), zero);
    queue.push_back(g.zero());
    while let Some(x) = queue.pop_front() {
        let fx = seen[&x].clone();
        for (span, a, b) in pairs {
            let next = g.add(&x, a);
            let image = add(&fx, b);
            match seen.get(&next) {
                Some(prev) if *prev != image => {
                    return Err((*span, format!("not well defined: {next} would map to both {prev} and {image}")));
                }
                Some(_) => {}
                None => {
                    seen.insert(next.clone(), image);
                    queue.push_back(next);
                }
            }
        }
    }
    if order != seen.len().into() {
        return Err((first, format!("listed elements generate {} of the {order} domain elements", seen.len())));
    }
    Ok(domain.basis().elements().iter().map(|b| seen[b].clone()).collect())
}
