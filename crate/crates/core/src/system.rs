//! Text format for polynomial systems: a `ring x0 x1 ... over Q|GF(p)` header
//! followed by one polynomial per line. Blank lines and `#` comments are skipped.

use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::arith::{ArithError, FieldSpec};
use crate::chordal::{graph_of_system, Graph};
use crate::groebner::GeneratorSet;
use crate::poly::{Monomial, MonomialOrder, PolyError, Polynomial, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SystemError {
    #[error("missing `ring ... over FIELD` header")]
    MissingHeader,
    #[error("line {line}: {message}")]
    Header { line: usize, message: String },
    #[error("line {line}: {source}")]
    Poly { line: usize, source: PolyError },
    #[error("field equations need a prime field, got {0}")]
    NotPrimeField(FieldSpec),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SystemFile {
    pub generators: GeneratorSet,
}

impl SystemFile {
    pub fn new(generators: GeneratorSet) -> Self {
        SystemFile { generators }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.generators.ring()
    }

    pub fn field(&self) -> FieldSpec {
        self.ring().field()
    }

    pub fn graph(&self) -> Graph {
        graph_of_system(&self.generators)
    }

    pub fn parse(text: &str) -> Result<Self, SystemError> {
        Self::parse_with_field(text, None)
    }

    /// Parses `text`, replacing the header's field when `field` is given.
    pub fn parse_with_field(text: &str, field: Option<FieldSpec>) -> Result<Self, SystemError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(SystemError::MissingHeader)?;
        let bad = |message: String| SystemError::Header { line: hline, message };
        let rest = header.strip_prefix("ring").ok_or(SystemError::MissingHeader)?;
        let (names, declared) = rest
            .rsplit_once(" over ")
            .ok_or_else(|| bad("expected `over Q` or `over GF(p)`".into()))?;
        let declared: FieldSpec = declared
            .trim()
            .parse()
            .map_err(|e: ArithError| bad(e.to_string()))?;
        let names: Vec<&str> = names.split_whitespace().collect();
        if names.is_empty() {
            return Err(bad("no variables declared".into()));
        }
        let ring = Ring::new(names, field.unwrap_or(declared)).map_err(|e| bad(e.to_string()))?;
        let mut generators = GeneratorSet::empty(&ring, MonomialOrder::Lex);
        for (line, text) in lines {
            let p = Polynomial::parse(text, &ring, MonomialOrder::Lex)
                .map_err(|source| SystemError::Poly { line, source })?;
            generators.push(p);
        }
        Ok(SystemFile { generators })
    }

    pub fn to_text(&self) -> String {
        let ring = self.ring();
        let mut s = format!("ring {} over {}\n", ring.names().join(" "), ring.field());
        for p in self.generators.polys() {
            writeln!(s, "{p}").expect("write to string");
        }
        s
    }

    /// The same integer-coefficient system read over another field.
    pub fn with_field(&self, field: FieldSpec) -> Result<Self, SystemError> {
        Self::parse_with_field(&self.to_text(), Some(field))
    }

    /// Appends `x^p - x` for every variable over `GF(p)`.
    pub fn add_field_equations(&mut self) -> Result<(), SystemError> {
        let field = self.field();
        let p = field.modulus().ok_or(SystemError::NotPrimeField(field))?;
        let ring = self.ring().clone();
        let lex = MonomialOrder::Lex;
        let e = u32::try_from(p).map_err(|_| SystemError::NotPrimeField(field))?;
        for v in 0..ring.nvars() {
            let xp = Monomial::var_power(ring.nvars(), v, e);
            let fe = Polynomial::monomial(&ring, lex, xp, field.one()) - Polynomial::var(&ring, lex, v);
            if !self.generators.contains(&fe) {
                self.generators.push(fe);
            }
        }
        Ok(())
    }
}
