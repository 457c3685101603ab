//! The term language: names, capabilities, values and processes.
//!
//! Ambient names are *decorated*: the identity of a name is the pair of its
//! base identifier and its port set, so `m{a}` and `m{b}` are different names
//! for binding, barbs and capability matching. Whether two decorations of the
//! same base denote the same physical ambient is left open by the modelling
//! language; here they are simply distinct names.

mod alpha;
mod free;
mod subst;

pub use alpha::alpha_equal;
pub use free::{free_names, free_port_bases, free_vars, FreeNames};
pub use subst::{substitute, SubstError};

pub(crate) use subst::{all_idents, rename_free_ambient, rename_free_port_base, rename_free_var};

use std::collections::BTreeSet;
use std::fmt;

/// Value/capability variables. Variables beginning with `$` are reserved for
/// internal use by the transition engine and are rejected by the parser.
pub type Var = String;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Polarity {
    Plain,
    Co,
}

/// A channel name `a` or its co-name `~a`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PortName {
    pub base: String,
    pub polarity: Polarity,
}

impl PortName {
    pub fn plain(base: impl Into<String>) -> Self {
        PortName { base: base.into(), polarity: Polarity::Plain }
    }

    pub fn co(base: impl Into<String>) -> Self {
        PortName { base: base.into(), polarity: Polarity::Co }
    }

    /// `complement(complement(p)) = p`.
    pub fn complement(&self) -> Self {
        PortName {
            base: self.base.clone(),
            polarity: match self.polarity {
                Polarity::Plain => Polarity::Co,
                Polarity::Co => Polarity::Plain,
            },
        }
    }
}

impl fmt::Display for PortName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.polarity {
            Polarity::Plain => write!(f, "{}", self.base),
            Polarity::Co => write!(f, "~{}", self.base),
        }
    }
}

/// The set of ports an ambient permits global communication on.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PortSet {
    /// Every port. Written `m[P]` without a brace decoration.
    All,
    Finite(BTreeSet<PortName>),
}

impl PortSet {
    pub fn finite<I: IntoIterator<Item = PortName>>(ports: I) -> Self {
        PortSet::Finite(ports.into_iter().collect())
    }

    pub fn contains(&self, port: &PortName) -> bool {
        match self {
            PortSet::All => true,
            PortSet::Finite(set) => set.contains(port),
        }
    }

    /// Gate for boundary-crossing communication on channel `base`. The rule
    /// checks the plain port name regardless of the polarity of the action.
    pub fn permits_channel(&self, base: &str) -> bool {
        self.contains(&PortName::plain(base))
    }

    /// Port bases mentioned by the decoration itself (empty for `All`).
    pub fn mentioned_bases(&self) -> BTreeSet<String> {
        match self {
            PortSet::All => BTreeSet::new(),
            PortSet::Finite(set) => set.iter().map(|p| p.base.clone()).collect(),
        }
    }
}

/// A decorated ambient name `m{A}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AmbientName {
    pub base: String,
    pub ports: PortSet,
}

impl AmbientName {
    /// A name decorated with the full port set, `m[P]` style.
    pub fn all(base: impl Into<String>) -> Self {
        AmbientName { base: base.into(), ports: PortSet::All }
    }

    pub fn with_ports<I: IntoIterator<Item = PortName>>(base: impl Into<String>, ports: I) -> Self {
        AmbientName { base: base.into(), ports: PortSet::finite(ports) }
    }
}

impl fmt::Display for AmbientName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.base)?;
        if let PortSet::Finite(set) = &self.ports {
            write!(f, "{{")?;
            for (i, p) in set.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

/// The target of an `in`/`out` capability: either a concrete name or a
/// variable still awaiting substitution.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AmbTarget {
    Name(AmbientName),
    Var(Var),
}

impl AmbTarget {
    pub fn name(base: impl Into<String>) -> Self {
        AmbTarget::Name(AmbientName::all(base))
    }

    pub fn as_name(&self) -> Option<&AmbientName> {
        match self {
            AmbTarget::Name(n) => Some(n),
            AmbTarget::Var(_) => None,
        }
    }
}

impl fmt::Display for AmbTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AmbTarget::Name(n) => write!(f, "{n}"),
            AmbTarget::Var(v) => write!(f, "{v}"),
        }
    }
}

/// Capability prefixes. A `Path` is kept flattened: it never nests another
/// `Path`, is non-empty, and never contains `Epsilon`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Capability {
    In(AmbTarget),
    Out(AmbTarget),
    Ploc(Var),
    Sloc(Var),
    Path(Vec<Capability>),
    Epsilon,
    Var(Var),
}

impl Capability {
    pub fn in_name(base: impl Into<String>) -> Self {
        Capability::In(AmbTarget::name(base))
    }

    pub fn out_name(base: impl Into<String>) -> Self {
        Capability::Out(AmbTarget::name(base))
    }

    /// Builds a flattened path, splicing nested paths and dropping epsilons.
    /// An empty result collapses to `Epsilon`, a singleton to its element.
    pub fn path<I: IntoIterator<Item = Capability>>(caps: I) -> Self {
        let mut flat = Vec::new();
        flatten_into(&mut flat, caps);
        match flat.len() {
            0 => Capability::Epsilon,
            1 => flat.into_iter().next().unwrap(),
            _ => Capability::Path(flat),
        }
    }

    /// The atomic capabilities of this capability, in order.
    pub fn atoms(&self) -> Vec<Capability> {
        match self {
            Capability::Path(caps) => caps.clone(),
            Capability::Epsilon => Vec::new(),
            other => vec![other.clone()],
        }
    }
}

fn flatten_into<I: IntoIterator<Item = Capability>>(out: &mut Vec<Capability>, caps: I) {
    for cap in caps {
        match cap {
            Capability::Path(inner) => flatten_into(out, inner),
            Capability::Epsilon => {}
            other => out.push(other),
        }
    }
}

impl fmt::Display for Capability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Capability::In(t) => write!(f, "in {t}"),
            Capability::Out(t) => write!(f, "out {t}"),
            Capability::Ploc(x) => write!(f, "ploc({x})"),
            Capability::Sloc(x) => write!(f, "sloc({x})"),
            Capability::Path(caps) => {
                for (i, c) in caps.iter().enumerate() {
                    if i > 0 {
                        write!(f, ".")?;
                    }
                    write!(f, "{c}")?;
                }
                Ok(())
            }
            Capability::Epsilon => write!(f, "eps"),
            Capability::Var(v) => write!(f, "{v}"),
        }
    }
}

/// Transmissible values and value expressions. A value expression may contain
/// variables; a *value* proper is closed. `Nil` is the empty list, `Path` with
/// an empty vector is the empty capability path.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Name(AmbientName),
    /// A capability path as a value; may be empty (the empty path).
    Path(Vec<Capability>),
    Tuple(Vec<Value>),
    List(Box<Value>, Box<Value>),
    Nil,
    Var(Var),
}

impl Value {
    pub fn name(base: impl Into<String>) -> Self {
        Value::Name(AmbientName::all(base))
    }

    pub fn cons(head: Value, tail: Value) -> Self {
        Value::List(Box::new(head), Box::new(tail))
    }

    pub fn is_closed(&self) -> bool {
        match self {
            Value::Var(_) => false,
            Value::Name(_) | Value::Nil => true,
            Value::Path(caps) => caps.iter().all(cap_closed),
            Value::Tuple(vs) => vs.iter().all(Value::is_closed),
            Value::List(h, t) => h.is_closed() && t.is_closed(),
        }
    }

    /// Compact rendering used in transition annotations: names print their
    /// base only.
    pub fn compact(&self) -> String {
        match self {
            Value::Name(n) => n.base.clone(),
            Value::Path(caps) if caps.is_empty() => "eps".into(),
            Value::Path(caps) => caps
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join("."),
            Value::Tuple(vs) => {
                let inner: Vec<_> = vs.iter().map(Value::compact).collect();
                format!("({})", inner.join(","))
            }
            Value::List(h, t) => format!("{}:{}", h.compact(), t.compact()),
            Value::Nil => "nil".into(),
            Value::Var(v) => v.clone(),
        }
    }
}

fn cap_closed(cap: &Capability) -> bool {
    match cap {
        Capability::In(AmbTarget::Var(_)) | Capability::Out(AmbTarget::Var(_)) => false,
        Capability::In(_) | Capability::Out(_) | Capability::Epsilon => true,
        Capability::Ploc(_) | Capability::Sloc(_) => true, // binders, not uses
        Capability::Path(caps) => caps.iter().all(cap_closed),
        Capability::Var(_) => false,
    }
}

/// Relabelling of channel names: a finite map on port bases, identity outside
/// its domain. Lifts to co-names homomorphically and leaves internal steps
/// untouched.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RelabelMap {
    entries: std::collections::BTreeMap<String, String>,
}

impl RelabelMap {
    pub fn new<I: IntoIterator<Item = (String, String)>>(entries: I) -> Self {
        let mut map = std::collections::BTreeMap::new();
        for (from, to) in entries {
            if from != to {
                map.insert(from, to);
            }
        }
        RelabelMap { entries: map }
    }

    pub fn is_identity(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn apply_base(&self, base: &str) -> String {
        self.entries.get(base).cloned().unwrap_or_else(|| base.to_string())
    }

    pub fn apply(&self, port: &PortName) -> PortName {
        PortName { base: self.apply_base(&port.base), polarity: port.polarity }
    }

    /// `self` after `inner`: `(P[inner])[self]` behaves like `P[compose]`.
    pub fn compose_after(&self, inner: &RelabelMap) -> RelabelMap {
        let mut map = std::collections::BTreeMap::new();
        for (from, to) in &inner.entries {
            map.insert(from.clone(), self.apply_base(to));
        }
        for (from, to) in &self.entries {
            map.entry(from.clone()).or_insert_with(|| to.clone());
        }
        map.retain(|from, to| from != to);
        RelabelMap { entries: map }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&String, &String)> {
        self.entries.iter()
    }

    pub fn mentioned_bases(&self) -> BTreeSet<String> {
        self.entries
            .iter()
            .flat_map(|(a, b)| [a.clone(), b.clone()])
            .collect()
    }
}

impl fmt::Display for RelabelMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, (from, to)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{to}/{from}")?;
        }
        write!(f, "]")
    }
}

/// Process terms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Process {
    Zero,
    /// Call of a defined constant, with value-expression arguments.
    Const(String, Vec<Value>),
    /// Capability prefix `C.P`.
    Cap(Capability, Box<Process>),
    /// Input prefix `a?(x).P`; the port is always plain.
    Input(String, Var, Box<Process>),
    /// Output prefix `a!(v).P` on the co-name of the stored port base.
    Output(String, Value, Box<Process>),
    /// Internal-step prefix `tau.P`.
    Tau(Box<Process>),
    Amb(AmbientName, Box<Process>),
    Sum(Box<Process>, Box<Process>),
    Par(Box<Process>, Box<Process>),
    /// `new m{A} in P`: restricts the decorated ambient name.
    RestrictAmb(AmbientName, Box<Process>),
    /// `new port a in P`: restricts the port base (both polarities).
    RestrictPort(String, Box<Process>),
    Relabel(Box<Process>, RelabelMap),
    /// `if v = w then P else Q`, comparing closed value expressions
    /// structurally; stuck while either side is open.
    Cond(Value, Value, Box<Process>, Box<Process>),
}

impl Process {
    pub fn cap(c: Capability, p: Process) -> Process {
        Process::Cap(c, Box::new(p))
    }

    pub fn input(port: impl Into<String>, var: impl Into<String>, p: Process) -> Process {
        Process::Input(port.into(), var.into(), Box::new(p))
    }

    pub fn output(port: impl Into<String>, v: Value, p: Process) -> Process {
        Process::Output(port.into(), v, Box::new(p))
    }

    pub fn amb(name: AmbientName, p: Process) -> Process {
        Process::Amb(name, Box::new(p))
    }

    pub fn par(a: Process, b: Process) -> Process {
        Process::Par(Box::new(a), Box::new(b))
    }

    /// Parallel composition of any number of processes; empty gives `Zero`.
    pub fn par_all<I: IntoIterator<Item = Process>>(ps: I) -> Process {
        let mut iter = ps.into_iter();
        let first = match iter.next() {
            Some(p) => p,
            None => return Process::Zero,
        };
        iter.fold(first, Process::par)
    }

    pub fn sum(a: Process, b: Process) -> Process {
        Process::Sum(Box::new(a), Box::new(b))
    }

    pub fn restrict_amb(name: AmbientName, p: Process) -> Process {
        Process::RestrictAmb(name, Box::new(p))
    }

    pub fn restrict_port(base: impl Into<String>, p: Process) -> Process {
        Process::RestrictPort(base.into(), Box::new(p))
    }

    /// Wraps `p` in a chain of capability prefixes.
    pub fn prefix_caps<I: IntoIterator<Item = Capability>>(caps: I, p: Process) -> Process
    where
        I::IntoIter: DoubleEndedIterator,
    {
        caps.into_iter().rev().fold(p, |acc, c| Process::cap(c, acc))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Process::Zero)
    }

    /// True when the term has no free variables.
    pub fn is_closed(&self) -> bool {
        free_vars(self).is_empty()
    }
}

/// A constant definition `D(params) := body`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstDef {
    pub params: Vec<Var>,
    pub body: Process,
}

/// Errors raised while assembling or consulting an environment of constant
/// definitions.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnvError {
    #[error("duplicate definition of constant `{0}`")]
    DuplicateDefinition(String),
    #[error("unbound constant `{0}`")]
    UnboundConstant(String),
    #[error("constant `{name}` expects {expected} argument(s), got {got}")]
    ArityMismatch { name: String, expected: usize, got: usize },
    #[error("definition of `{name}` uses unbound variable `{var}`")]
    UnboundVariableInBody { name: String, var: Var },
}

/// The set of constant definitions in scope. Each constant has exactly one
/// defining equation; bodies may reference any constant, including mutually
/// recursive ones.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Environment {
    defs: std::collections::BTreeMap<String, ConstDef>,
}

impl Environment {
    pub fn new() -> Self {
        Environment::default()
    }

    pub fn define(
        &mut self,
        name: impl Into<String>,
        params: Vec<Var>,
        body: Process,
    ) -> Result<(), EnvError> {
        let name = name.into();
        if self.defs.contains_key(&name) {
            return Err(EnvError::DuplicateDefinition(name));
        }
        for var in free_vars(&body) {
            if !params.contains(&var) {
                return Err(EnvError::UnboundVariableInBody { name, var });
            }
        }
        self.defs.insert(name, ConstDef { params, body });
        Ok(())
    }

    pub fn lookup(&self, name: &str) -> Option<&ConstDef> {
        self.defs.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &String> {
        self.defs.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &ConstDef)> {
        self.defs.iter()
    }

    /// The body of `name` with arguments substituted for parameters.
    pub fn unfold(&self, name: &str, args: &[Value]) -> Result<Process, EnvError> {
        let def = self
            .lookup(name)
            .ok_or_else(|| EnvError::UnboundConstant(name.to_string()))?;
        if def.params.len() != args.len() {
            return Err(EnvError::ArityMismatch {
                name: name.to_string(),
                expected: def.params.len(),
                got: args.len(),
            });
        }
        let mut body = def.body.clone();
        for (param, arg) in def.params.iter().zip(args) {
            body = substitute(&body, param, arg).map_err(|_| EnvError::ArityMismatch {
                name: name.to_string(),
                expected: def.params.len(),
                got: args.len(),
            })?;
        }
        Ok(body)
    }

    /// Checks that every constant call in `p` (and transitively in the bodies
    /// it can reach) is defined with the right arity.
    pub fn validate_calls(&self, p: &Process) -> Result<(), EnvError> {
        let mut seen = BTreeSet::new();
        self.validate_calls_inner(p, &mut seen)
    }

    fn validate_calls_inner(
        &self,
        p: &Process,
        seen: &mut BTreeSet<String>,
    ) -> Result<(), EnvError> {
        match p {
            Process::Const(name, args) => {
                let def = self
                    .lookup(name)
                    .ok_or_else(|| EnvError::UnboundConstant(name.clone()))?;
                if def.params.len() != args.len() {
                    return Err(EnvError::ArityMismatch {
                        name: name.clone(),
                        expected: def.params.len(),
                        got: args.len(),
                    });
                }
                if seen.insert(name.clone()) {
                    let body = def.body.clone();
                    self.validate_calls_inner(&body, seen)?;
                }
                Ok(())
            }
            Process::Zero => Ok(()),
            Process::Cap(_, p) | Process::Tau(p) | Process::Input(_, _, p) => {
                self.validate_calls_inner(p, seen)
            }
            Process::Output(_, _, p) => self.validate_calls_inner(p, seen),
            Process::Amb(_, p)
            | Process::RestrictAmb(_, p)
            | Process::RestrictPort(_, p)
            | Process::Relabel(p, _) => self.validate_calls_inner(p, seen),
            Process::Sum(a, b) | Process::Par(a, b) => {
                self.validate_calls_inner(a, seen)?;
                self.validate_calls_inner(b, seen)
            }
            Process::Cond(_, _, t, e) => {
                self.validate_calls_inner(t, seen)?;
                self.validate_calls_inner(e, seen)
            }
        }
    }
}

/// Picks an identifier based on `base` that is not in `avoid`: the bare stem
/// first, then the stem with the least unused numeric suffix.
pub fn fresh_ident(base: &str, avoid: &BTreeSet<String>) -> String {
    let stem: &str = {
        let trimmed = base.trim_end_matches(|c: char| c.is_ascii_digit());
        if trimmed.is_empty() {
            base
        } else {
            trimmed
        }
    };
    if !avoid.contains(stem) {
        return stem.to_string();
    }
    let mut i = 0usize;
    loop {
        let candidate = format!("{stem}{i}");
        if !avoid.contains(&candidate) {
            return candidate;
        }
        i += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_is_involutive() {
        let p = PortName::plain("a");
        assert_eq!(p.complement().complement(), p);
        let q = PortName::co("b");
        assert_eq!(q.complement().complement(), q);
    }

    #[test]
    fn port_set_membership_total() {
        let all = PortSet::All;
        assert!(all.contains(&PortName::plain("anything")));
        assert!(all.contains(&PortName::co("anything")));
        let finite = PortSet::finite([PortName::plain("a")]);
        assert!(finite.contains(&PortName::plain("a")));
        assert!(!finite.contains(&PortName::co("a")));
        assert!(!finite.contains(&PortName::plain("b")));
    }

    #[test]
    fn channel_gate_checks_plain_member() {
        let set = PortSet::finite([PortName::plain("a"), PortName::co("b")]);
        assert!(set.permits_channel("a"));
        // A co-name member does not open the channel gate.
        assert!(!set.permits_channel("b"));
        assert!(PortSet::All.permits_channel("zzz"));
    }

    #[test]
    fn decorated_names_are_distinct() {
        let m_all = AmbientName::all("m");
        let m_a = AmbientName::with_ports("m", [PortName::plain("a")]);
        assert_ne!(m_all, m_a);
    }

    #[test]
    fn path_constructor_flattens() {
        let p = Capability::path([
            Capability::in_name("m"),
            Capability::path([Capability::out_name("n"), Capability::Epsilon]),
        ]);
        assert_eq!(
            p,
            Capability::Path(vec![Capability::in_name("m"), Capability::out_name("n")])
        );
        assert_eq!(Capability::path([]), Capability::Epsilon);
        assert_eq!(Capability::path([Capability::in_name("m")]), Capability::in_name("m"));
    }

    #[test]
    fn duplicate_definition_rejected() {
        let mut env = Environment::new();
        env.define("D", vec![], Process::Zero).unwrap();
        assert_eq!(
            env.define("D", vec![], Process::Zero),
            Err(EnvError::DuplicateDefinition("D".into()))
        );
    }

    #[test]
    fn self_referential_definition_is_legal() {
        let mut env = Environment::new();
        env.define("D", vec![], Process::Const("D".into(), vec![])).unwrap();
        assert!(env.validate_calls(&Process::Const("D".into(), vec![])).is_ok());
    }

    #[test]
    fn body_free_vars_must_be_params() {
        let mut env = Environment::new();
        let body = Process::output("a", Value::Var("x".into()), Process::Zero);
        assert!(matches!(
            env.define("D", vec![], body.clone()),
            Err(EnvError::UnboundVariableInBody { .. })
        ));
        env.define("E", vec!["x".into()], body).unwrap();
    }

    #[test]
    fn fresh_ident_picks_least_unused() {
        let avoid: BTreeSet<String> = ["n".to_string(), "n0".to_string()].into();
        assert_eq!(fresh_ident("n", &avoid), "n1");
        assert_eq!(fresh_ident("n7", &avoid), "n1");
        assert_eq!(fresh_ident("m", &avoid), "m");
    }

    #[test]
    fn relabel_composition() {
        let inner = RelabelMap::new([("a".to_string(), "b".to_string())]);
        let outer = RelabelMap::new([("b".to_string(), "c".to_string())]);
        let composed = outer.compose_after(&inner);
        assert_eq!(composed.apply_base("a"), "c");
        assert_eq!(composed.apply_base("b"), "c");
        assert_eq!(composed.apply_base("x"), "x");
    }
}
