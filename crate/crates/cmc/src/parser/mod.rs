//! Concrete syntax for terms and definition files.
//!
//! ```text
//! Screen1 := c1?(x). a!(x). Screen1          # constant definition
//! system m{a,~b}[ in n.0 | a?(x).0 ]         # the main process
//! ```
//!
//! Prefixing binds tighter than `|`, which binds tighter than `+`. A
//! restriction `new m in P` / `new port a in P` extends as far right as
//! possible. `if v = w then P else Q` compares value expressions, with the
//! branches parsed at prefix level. Identifiers in value and capability
//! positions resolve to variables when bound by an enclosing `?(x)`, `ploc`,
//! `sloc` or definition parameter, and to ambient names otherwise.

mod lexer;
mod pretty;

pub use lexer::{LexError, Pos};
pub use pretty::{pretty_print, pretty_print_source};

use lexer::{lex, Tok, Token};

use crate::syntax::{
    AmbTarget, AmbientName, Capability, EnvError, Environment, PortName, PortSet, Process, Value,
    Var,
};

pub const KEYWORDS: &[&str] = &[
    "in", "out", "new", "port", "if", "then", "else", "system", "tau", "eps", "nil", "ploc",
    "sloc",
];

/// A parsed `.cmc` file: constant definitions plus an optional main process
/// introduced by `system`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceFile {
    pub definitions: Vec<Definition>,
    pub main: Option<Process>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Definition {
    pub name: String,
    pub params: Vec<Var>,
    pub body: Process,
}

impl SourceFile {
    /// Builds the environment of definitions, rejecting duplicates and
    /// validating constant references (including the main process).
    pub fn environment(&self) -> Result<Environment, ParseError> {
        let mut env = Environment::new();
        for def in &self.definitions {
            env.define(def.name.clone(), def.params.clone(), def.body.clone())
                .map_err(env_err)?;
        }
        for def in &self.definitions {
            env.validate_calls(&def.body).map_err(env_err)?;
        }
        if let Some(main) = &self.main {
            env.validate_calls(main).map_err(env_err)?;
        }
        Ok(env)
    }
}

fn env_err(e: EnvError) -> ParseError {
    ParseError {
        pos: Pos { line: 0, col: 0 },
        message: e.to_string(),
        expected: Vec::new(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub pos: Pos,
    pub message: String,
    pub expected: Vec<String>,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.pos.line == 0 {
            write!(f, "{}", self.message)?;
        } else {
            write!(f, "{}: {}", self.pos, self.message)?;
        }
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl From<LexError> for ParseError {
    fn from(e: LexError) -> Self {
        ParseError { pos: e.pos, message: e.message, expected: Vec::new() }
    }
}

/// Parses a single process in an empty scope.
pub fn parse_process(text: &str) -> Result<Process, ParseError> {
    let tokens = lex(text)?;
    let mut p = Parser::new(tokens);
    let proc = p.process()?;
    p.expect_eof()?;
    Ok(proc)
}

/// Parses a full source file.
pub fn parse_source(text: &str) -> Result<SourceFile, ParseError> {
    let tokens = lex(text)?;
    let mut p = Parser::new(tokens);
    p.source_file()
}

/// Parses a definitions file into an environment, validating uniqueness,
/// constant references and arities.
pub fn parse_definitions(text: &str) -> Result<Environment, ParseError> {
    parse_source(text)?.environment()
}

struct Parser {
    tokens: Vec<Token>,
    idx: usize,
    scope: Vec<Var>,
}

impl Parser {
    fn new(tokens: Vec<Token>) -> Self {
        Parser { tokens, idx: 0, scope: Vec::new() }
    }

    fn peek(&self) -> &Tok {
        &self.tokens[self.idx].tok
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        let i = (self.idx + offset).min(self.tokens.len() - 1);
        &self.tokens[i].tok
    }

    fn pos(&self) -> Pos {
        self.tokens[self.idx].pos
    }

    fn bump(&mut self) -> Tok {
        let t = self.tokens[self.idx].tok.clone();
        if self.idx + 1 < self.tokens.len() {
            self.idx += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>, expected: &[&str]) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.pos(),
            message: message.into(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        })
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.error(format!("found {}", self.peek()), &[expected])
        }
    }

    fn expect_eof(&mut self) -> Result<(), ParseError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            self.error(format!("found {}", self.peek()), &["end of input"])
        }
    }

    /// Is the upcoming identifier a keyword?
    fn peek_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn ident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                let s = s.clone();
                self.bump();
                Ok(s)
            }
            Tok::Ident(s) => self.error(format!("keyword `{s}` cannot be used as {what}"), &[what]),
            other => self.error(format!("found {other}"), &[what]),
        }
    }

    fn is_bound(&self, name: &str) -> bool {
        self.scope.iter().any(|v| v == name)
    }

    // ---- files ----

    fn source_file(&mut self) -> Result<SourceFile, ParseError> {
        let mut definitions = Vec::new();
        let mut main = None;
        loop {
            match self.peek() {
                Tok::Eof => break,
                Tok::Ident(s) if s == "system" => {
                    self.bump();
                    let proc = self.process()?;
                    if main.is_some() {
                        return self.error("multiple `system` declarations", &[]);
                    }
                    main = Some(proc);
                }
                Tok::Ident(_) => {
                    let pos = self.pos();
                    let name = self.ident("definition name")?;
                    let mut params = Vec::new();
                    if *self.peek() == Tok::LParen {
                        self.bump();
                        loop {
                            params.push(self.ident("parameter")?);
                            match self.bump() {
                                Tok::Comma => continue,
                                Tok::RParen => break,
                                other => {
                                    return self
                                        .error(format!("found {other}"), &["`,`", "`)`"]);
                                }
                            }
                        }
                    }
                    self.expect(Tok::Assign, "`:=`")?;
                    if definitions.iter().any(|d: &Definition| d.name == name) {
                        return Err(ParseError {
                            pos,
                            message: format!("duplicate definition of constant `{name}`"),
                            expected: Vec::new(),
                        });
                    }
                    let depth = self.scope.len();
                    self.scope.extend(params.iter().cloned());
                    let body = self.process()?;
                    self.scope.truncate(depth);
                    definitions.push(Definition { name, params, body });
                }
                other => return self.error(format!("found {other}"), &["definition", "`system`"]),
            }
        }
        Ok(SourceFile { definitions, main })
    }

    // ---- processes ----

    // `+` and `|` associate to the right, matching the pretty-printer's
    // unparenthesized chains.
    fn process(&mut self) -> Result<Process, ParseError> {
        let lhs = self.par()?;
        if *self.peek() == Tok::Plus {
            self.bump();
            let rhs = self.process()?;
            Ok(Process::sum(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn par(&mut self) -> Result<Process, ParseError> {
        let lhs = self.prefixed()?;
        if *self.peek() == Tok::Pipe {
            self.bump();
            let rhs = self.par()?;
            Ok(Process::par(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn prefixed(&mut self) -> Result<Process, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => match s.as_str() {
                "tau" => {
                    self.bump();
                    self.expect(Tok::Dot, "`.`")?;
                    Ok(Process::Tau(Box::new(self.prefixed()?)))
                }
                "in" | "out" => {
                    self.bump();
                    let target = self.amb_target()?;
                    let cap = if s == "in" {
                        Capability::In(target)
                    } else {
                        Capability::Out(target)
                    };
                    self.expect(Tok::Dot, "`.`")?;
                    Ok(Process::cap(cap, self.prefixed()?))
                }
                "ploc" | "sloc" => {
                    self.bump();
                    self.expect(Tok::LParen, "`(`")?;
                    let var = self.ident("variable")?;
                    self.expect(Tok::RParen, "`)`")?;
                    self.expect(Tok::Dot, "`.`")?;
                    self.scope.push(var.clone());
                    let cont = self.prefixed()?;
                    self.scope.pop();
                    let cap = if s == "ploc" {
                        Capability::Ploc(var)
                    } else {
                        Capability::Sloc(var)
                    };
                    Ok(Process::Cap(cap, Box::new(cont)))
                }
                "eps" => {
                    self.bump();
                    self.expect(Tok::Dot, "`.`")?;
                    Ok(Process::cap(Capability::Epsilon, self.prefixed()?))
                }
                "new" => {
                    self.bump();
                    if self.peek_keyword("port") {
                        self.bump();
                        let base = self.ident("port name")?;
                        self.expect_kw("in")?;
                        Ok(Process::restrict_port(base, self.process()?))
                    } else {
                        let name = self.ambient_name()?;
                        self.expect_kw("in")?;
                        Ok(Process::restrict_amb(name, self.process()?))
                    }
                }
                "if" => {
                    self.bump();
                    let lhs = self.value()?;
                    self.expect(Tok::Equals, "`=`")?;
                    let rhs = self.value()?;
                    self.expect_kw("then")?;
                    let then = self.prefixed()?;
                    self.expect_kw("else")?;
                    let els = self.prefixed()?;
                    Ok(Process::Cond(lhs, rhs, Box::new(then), Box::new(els)))
                }
                "port" | "then" | "else" | "system" | "nil" => {
                    self.error(format!("keyword `{s}` cannot start a process"), &["process"])
                }
                _ => self.ident_process(),
            },
            Tok::Zero | Tok::LParen => {
                let atom = self.atom()?;
                self.postfix(atom)
            }
            other => self.error(format!("found {other}"), &["process"]),
        }
    }

    fn expect_kw(&mut self, kw: &str) -> Result<(), ParseError> {
        if self.peek_keyword(kw) {
            self.bump();
            Ok(())
        } else {
            self.error(format!("found {}", self.peek()), &[&format!("`{kw}`")])
        }
    }

    /// A process starting with a non-keyword identifier: input/output prefix,
    /// capability-variable prefix, ambient, or constant call.
    fn ident_process(&mut self) -> Result<Process, ParseError> {
        let name_pos = self.pos();
        let name = self.ident("process")?;
        match self.peek() {
            Tok::Query => {
                self.bump();
                self.expect(Tok::LParen, "`(`")?;
                let var = self.ident("variable")?;
                self.expect(Tok::RParen, "`)`")?;
                self.expect(Tok::Dot, "`.`")?;
                self.scope.push(var.clone());
                let cont = self.prefixed()?;
                self.scope.pop();
                Ok(Process::Input(name, var, Box::new(cont)))
            }
            Tok::Bang => {
                self.bump();
                self.expect(Tok::LParen, "`(`")?;
                let value = self.value()?;
                self.expect(Tok::RParen, "`)`")?;
                self.expect(Tok::Dot, "`.`")?;
                Ok(Process::Output(name, value, Box::new(self.prefixed()?)))
            }
            Tok::Dot => {
                if !self.is_bound(&name) {
                    return Err(ParseError {
                        pos: name_pos,
                        message: format!("`{name}` is not a bound capability variable"),
                        expected: Vec::new(),
                    });
                }
                self.bump();
                Ok(Process::cap(Capability::Var(name), self.prefixed()?))
            }
            Tok::LParen => {
                self.bump();
                let mut args = Vec::new();
                if *self.peek() == Tok::RParen {
                    self.bump();
                } else {
                    loop {
                        args.push(self.value()?);
                        match self.bump() {
                            Tok::Comma => continue,
                            Tok::RParen => break,
                            other => {
                                return self.error(format!("found {other}"), &["`,`", "`)`"]);
                            }
                        }
                    }
                }
                self.postfix(Process::Const(name, args))
            }
            Tok::LBrace => {
                let ports = self.port_set()?;
                let amb = AmbientName { base: name, ports };
                self.expect(Tok::LBracket, "`[`")?;
                let body = self.ambient_body()?;
                self.postfix(Process::Amb(amb, Box::new(body)))
            }
            Tok::LBracket if !self.relabel_ahead() => {
                self.bump();
                let body = self.ambient_body()?;
                self.postfix(Process::amb(AmbientName::all(name), body))
            }
            _ => {
                // Bare identifier: a constant call without arguments.
                if self.is_bound(&name) {
                    return Err(ParseError {
                        pos: name_pos,
                        message: format!(
                            "variable `{name}` cannot stand alone as a process \
                             (capability variables need a continuation, e.g. `{name}.0`)"
                        ),
                        expected: Vec::new(),
                    });
                }
                self.postfix(Process::Const(name, Vec::new()))
            }
        }
    }

    /// After `[`, does a relabelling map follow (ident `/`)?
    fn relabel_ahead(&self) -> bool {
        matches!(self.peek_at(1), Tok::Ident(_)) && *self.peek_at(2) == Tok::Slash
    }

    fn ambient_body(&mut self) -> Result<Process, ParseError> {
        if *self.peek() == Tok::RBracket {
            self.bump();
            return Ok(Process::Zero);
        }
        let body = self.process()?;
        self.expect(Tok::RBracket, "`]`")?;
        Ok(body)
    }

    fn atom(&mut self) -> Result<Process, ParseError> {
        match self.bump() {
            Tok::Zero => Ok(Process::Zero),
            Tok::LParen => {
                let p = self.process()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(p)
            }
            other => self.error(format!("found {other}"), &["`0`", "`(`"]),
        }
    }

    fn postfix(&mut self, mut acc: Process) -> Result<Process, ParseError> {
        while *self.peek() == Tok::LBracket {
            if !self.relabel_ahead() {
                return self.error("found `[`", &["relabelling `[b/a, ...]`"]);
            }
            self.bump();
            let mut entries = Vec::new();
            loop {
                let to = self.ident("port name")?;
                self.expect(Tok::Slash, "`/`")?;
                let from = self.ident("port name")?;
                entries.push((from, to));
                match self.bump() {
                    Tok::Comma => continue,
                    Tok::RBracket => break,
                    other => return self.error(format!("found {other}"), &["`,`", "`]`"]),
                }
            }
            let map = crate::syntax::RelabelMap::new(entries);
            if !map.is_identity() {
                acc = Process::Relabel(Box::new(acc), map);
            }
        }
        Ok(acc)
    }

    // ---- names, ports, values ----

    fn port_set(&mut self) -> Result<PortSet, ParseError> {
        self.expect(Tok::LBrace, "`{`")?;
        let mut ports = Vec::new();
        if *self.peek() == Tok::RBrace {
            self.bump();
            return Ok(PortSet::finite(ports));
        }
        loop {
            let co = if *self.peek() == Tok::Tilde {
                self.bump();
                true
            } else {
                false
            };
            let base = self.ident("port name")?;
            ports.push(if co { PortName::co(base) } else { PortName::plain(base) });
            match self.bump() {
                Tok::Comma => continue,
                Tok::RBrace => break,
                other => return self.error(format!("found {other}"), &["`,`", "`}`"]),
            }
        }
        Ok(PortSet::finite(ports))
    }

    fn ambient_name(&mut self) -> Result<AmbientName, ParseError> {
        let base = self.ident("ambient name")?;
        let ports = if *self.peek() == Tok::LBrace {
            self.port_set()?
        } else {
            PortSet::All
        };
        Ok(AmbientName { base, ports })
    }

    /// `in`/`out` target: a bound variable or a (possibly decorated) name.
    fn amb_target(&mut self) -> Result<AmbTarget, ParseError> {
        let base = self.ident("ambient name or variable")?;
        if *self.peek() == Tok::LBrace {
            let ports = self.port_set()?;
            Ok(AmbTarget::Name(AmbientName { base, ports }))
        } else if self.is_bound(&base) {
            Ok(AmbTarget::Var(base))
        } else {
            Ok(AmbTarget::Name(AmbientName::all(base)))
        }
    }

    fn value(&mut self) -> Result<Value, ParseError> {
        let head = self.value_atom()?;
        if *self.peek() == Tok::Colon {
            self.bump();
            let tail = self.value()?;
            Ok(Value::cons(head, tail))
        } else {
            Ok(head)
        }
    }

    fn value_atom(&mut self) -> Result<Value, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => match s.as_str() {
                "nil" => {
                    self.bump();
                    Ok(Value::Nil)
                }
                "eps" => {
                    self.bump();
                    Ok(Value::Path(Vec::new()))
                }
                "in" | "out" | "ploc" | "sloc" => {
                    let caps = self.cap_path()?;
                    Ok(Value::Path(caps))
                }
                kw if KEYWORDS.contains(&kw) => {
                    self.error(format!("keyword `{kw}` cannot start a value"), &["value"])
                }
                _ => {
                    let base = self.ident("value")?;
                    if *self.peek() == Tok::LBrace {
                        let ports = self.port_set()?;
                        return Ok(Value::Name(AmbientName { base, ports }));
                    }
                    if *self.peek() == Tok::Dot {
                        // A capability path led by a variable: `u.in n...`.
                        if !self.is_bound(&base) {
                            return self.error(
                                format!("`{base}` is not a bound capability variable"),
                                &[],
                            );
                        }
                        let mut caps = vec![Capability::Var(base)];
                        while *self.peek() == Tok::Dot {
                            self.bump();
                            caps.extend(self.cap_path_atom()?);
                        }
                        return Ok(Value::Path(caps));
                    }
                    if self.is_bound(&base) {
                        Ok(Value::Var(base))
                    } else {
                        Ok(Value::Name(AmbientName::all(base)))
                    }
                }
            },
            Tok::LParen => {
                self.bump();
                let first = self.value()?;
                match self.bump() {
                    Tok::RParen => Ok(first),
                    Tok::Comma => {
                        let mut items = vec![first];
                        loop {
                            items.push(self.value()?);
                            match self.bump() {
                                Tok::Comma => continue,
                                Tok::RParen => break,
                                other => {
                                    return self
                                        .error(format!("found {other}"), &["`,`", "`)`"]);
                                }
                            }
                        }
                        Ok(Value::Tuple(items))
                    }
                    other => self.error(format!("found {other}"), &["`,`", "`)`"]),
                }
            }
            other => self.error(format!("found {other}"), &["value"]),
        }
    }

    /// A dotted capability path in value position.
    fn cap_path(&mut self) -> Result<Vec<Capability>, ParseError> {
        let mut caps = self.cap_path_atom()?;
        while *self.peek() == Tok::Dot {
            self.bump();
            caps.extend(self.cap_path_atom()?);
        }
        Ok(caps)
    }

    fn cap_path_atom(&mut self) -> Result<Vec<Capability>, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => match s.as_str() {
                "in" | "out" => {
                    self.bump();
                    let target = self.amb_target()?;
                    Ok(vec![if s == "in" {
                        Capability::In(target)
                    } else {
                        Capability::Out(target)
                    }])
                }
                "ploc" | "sloc" => {
                    self.bump();
                    self.expect(Tok::LParen, "`(`")?;
                    let var = self.ident("variable")?;
                    self.expect(Tok::RParen, "`)`")?;
                    Ok(vec![if s == "ploc" {
                        Capability::Ploc(var)
                    } else {
                        Capability::Sloc(var)
                    }])
                }
                "eps" => {
                    self.bump();
                    Ok(Vec::new())
                }
                kw if KEYWORDS.contains(&kw) => self.error(
                    format!("keyword `{kw}` cannot appear in a capability path"),
                    &["capability"],
                ),
                _ => {
                    let var = self.ident("capability")?;
                    if !self.is_bound(&var) {
                        return self
                            .error(format!("`{var}` is not a bound capability variable"), &[]);
                    }
                    Ok(vec![Capability::Var(var)])
                }
            },
            other => self.error(format!("found {other}"), &["capability"]),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::alpha_equal;

    fn amb(base: &str) -> AmbientName {
        AmbientName::all(base)
    }

    #[test]
    fn parses_ambient_with_ports() {
        let p = parse_process("m{a,b}[ in n.0 | a?(x).0 ]").unwrap();
        let want = Process::amb(
            AmbientName::with_ports("m", [PortName::plain("a"), PortName::plain("b")]),
            Process::par(
                Process::cap(Capability::in_name("n"), Process::Zero),
                Process::input("a", "x", Process::Zero),
            ),
        );
        assert_eq!(p, want);
    }

    #[test]
    fn parses_restriction() {
        let p = parse_process("new n in n[0]").unwrap();
        let want = Process::restrict_amb(amb("n"), Process::amb(amb("n"), Process::Zero));
        assert_eq!(p, want);
    }

    #[test]
    fn parses_ploc_output() {
        let p = parse_process("ploc(x). a!(x). 0").unwrap();
        let want = Process::cap(
            Capability::Ploc("x".into()),
            Process::output("a", Value::Var("x".into()), Process::Zero),
        );
        assert_eq!(p, want);
    }

    #[test]
    fn precedence_sum_par_prefix() {
        let p = parse_process("in n.0 + out m.0 | 0").unwrap();
        // `+` loosest: (in n.0) + (out m.0 | 0)
        let want = Process::sum(
            Process::cap(Capability::in_name("n"), Process::Zero),
            Process::par(Process::cap(Capability::out_name("m"), Process::Zero), Process::Zero),
        );
        assert_eq!(p, want);
    }

    #[test]
    fn relabel_vs_ambient_brackets() {
        let p = parse_process("D[b/a]").unwrap();
        assert_eq!(
            p,
            Process::Relabel(
                Box::new(Process::Const("D".into(), vec![])),
                crate::syntax::RelabelMap::new([("a".to_string(), "b".to_string())]),
            )
        );
        let q = parse_process("D[0]").unwrap();
        assert_eq!(q, Process::amb(amb("D"), Process::Zero));
        let r = parse_process("m[]").unwrap();
        assert_eq!(r, Process::amb(amb("m"), Process::Zero));
    }

    #[test]
    fn parses_conditional_chain() {
        let text = "a?(x). if x = dr then c1!(v). 0 else if x = w then c2!(v). 0 else D";
        let p = parse_process(text).unwrap();
        match p {
            Process::Input(_, _, cont) => match *cont {
                Process::Cond(Value::Var(x), Value::Name(dr), _, els) => {
                    assert_eq!(x, "x");
                    assert_eq!(dr, amb("dr"));
                    assert!(matches!(*els, Process::Cond(..)));
                }
                other => panic!("unexpected {other:?}"),
            },
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn duplicate_definition_is_an_error() {
        let err = parse_definitions("D := 0\nD := 0").unwrap_err();
        assert!(err.message.contains("duplicate"), "{err}");
    }

    #[test]
    fn self_recursive_definition_parses() {
        let env = parse_definitions("D := D").unwrap();
        assert!(env.lookup("D").is_some());
    }

    #[test]
    fn unbound_constant_rejected() {
        let err = parse_definitions("D := E").unwrap_err();
        assert!(err.message.contains("unbound constant"), "{err}");
    }

    #[test]
    fn arity_mismatch_rejected() {
        let err = parse_definitions("D(x) := a!(x).0\nsystem D").unwrap_err();
        assert!(err.message.contains("argument"), "{err}");
    }

    #[test]
    fn capability_variable_prefix() {
        let p = parse_process("a?(u). u. 0").unwrap();
        let want = Process::input(
            "a",
            "u",
            Process::cap(Capability::Var("u".into()), Process::Zero),
        );
        assert_eq!(p, want);
    }

    #[test]
    fn unbound_capability_variable_rejected() {
        assert!(parse_process("u.0").is_err());
    }

    #[test]
    fn path_values_and_tuples() {
        let p = parse_process("a!(out m. in n). b!((m, n)). c!(v:nil). d!(eps). 0").unwrap();
        match p {
            Process::Output(_, v, cont) => {
                assert_eq!(
                    v,
                    Value::Path(vec![Capability::out_name("m"), Capability::in_name("n")])
                );
                match *cont {
                    Process::Output(_, v2, cont2) => {
                        assert_eq!(v2, Value::Tuple(vec![Value::name("m"), Value::name("n")]));
                        match *cont2 {
                            Process::Output(_, v3, cont3) => {
                                assert_eq!(v3, Value::cons(Value::name("v"), Value::Nil));
                                match *cont3 {
                                    Process::Output(_, v4, _) => {
                                        assert_eq!(v4, Value::Path(vec![]));
                                    }
                                    other => panic!("unexpected {other:?}"),
                                }
                            }
                            other => panic!("unexpected {other:?}"),
                        }
                    }
                    other => panic!("unexpected {other:?}"),
                }
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn errors_carry_position() {
        let err = parse_process("m[ in n.0 |").unwrap_err();
        assert_eq!(err.pos.line, 1);
        assert!(err.pos.col > 1);
        assert!(!err.expected.is_empty());
    }

    #[test]
    fn system_keyword_sets_main() {
        let src = parse_source("D := 0\nsystem D | 0").unwrap();
        assert_eq!(src.definitions.len(), 1);
        assert!(src.main.is_some());
        assert!(alpha_equal(
            src.main.as_ref().unwrap(),
            &Process::par(Process::Const("D".into(), vec![]), Process::Zero)
        ));
    }
}
