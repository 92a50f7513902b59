//! Ground terms and facts.
//!
//! Terms are totally ordered by kind first
//! (`Integer < Constant < String < Function < Tuple`) and then by value or
//! name followed by the argument lists, compared lexicographically. The
//! variant order of [`Term`] encodes the kind order, so the derived `Ord` is
//! the documented order.

use std::fmt;

/// A ground symbolic value.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Integer(i64),
    /// Identifier starting with a lowercase letter.
    Constant(String),
    /// Stored unquoted and unescaped.
    String(String),
    /// Function application; the argument list is never empty.
    Function(String, Vec<Term>),
    Tuple(Vec<Term>),
}

impl Term {
    pub fn int(value: i64) -> Term {
        Term::Integer(value)
    }

    pub fn constant(name: impl Into<String>) -> Term {
        Term::Constant(name.into())
    }

    pub fn string(value: impl Into<String>) -> Term {
        Term::String(value.into())
    }

    /// A function term; `f()` is the constant `f`.
    pub fn function(name: impl Into<String>, args: Vec<Term>) -> Term {
        let name = name.into();
        if args.is_empty() {
            Term::Constant(name)
        } else {
            Term::Function(name, args)
        }
    }

    pub fn tuple(args: Vec<Term>) -> Term {
        Term::Tuple(args)
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            Term::Integer(v) => Some(*v),
            _ => None,
        }
    }

    /// Name of a constant or function.
    pub fn name(&self) -> Option<&str> {
        match self {
            Term::Constant(n) | Term::Function(n, _) => Some(n),
            _ => None,
        }
    }

    pub fn args(&self) -> &[Term] {
        match self {
            Term::Function(_, args) | Term::Tuple(args) => args,
            _ => &[],
        }
    }

    pub fn is_tuple_of(&self, arity: usize) -> bool {
        matches!(self, Term::Tuple(args) if args.len() == arity)
    }

    /// Printed form with the quotes of a top-level string removed.
    pub fn unquoted(&self) -> String {
        match self {
            Term::String(s) => s.clone(),
            other => other.to_string(),
        }
    }
}

pub(crate) fn write_quoted(f: &mut impl fmt::Write, s: &str) -> fmt::Result {
    f.write_char('"')?;
    for c in s.chars() {
        match c {
            '"' => f.write_str("\\\"")?,
            '\\' => f.write_str("\\\\")?,
            '\n' => f.write_str("\\n")?,
            c => f.write_char(c)?,
        }
    }
    f.write_char('"')
}

fn write_args(f: &mut fmt::Formatter<'_>, args: &[Term]) -> fmt::Result {
    for (i, arg) in args.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{arg}")?;
    }
    Ok(())
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Integer(v) => write!(f, "{v}"),
            Term::Constant(n) => f.write_str(n),
            Term::String(s) => write_quoted(f, s),
            Term::Function(n, args) => {
                write!(f, "{n}(")?;
                write_args(f, args)?;
                f.write_str(")")
            }
            Term::Tuple(args) => {
                f.write_str("(")?;
                write_args(f, args)?;
                if args.len() == 1 {
                    f.write_str(",")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Canonical printing of a term.
pub fn print_term(t: &Term) -> String {
    t.to_string()
}

/// A ground atom. `Display` yields the canonical fact text `pred(a,b).`
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fact {
    pub predicate: String,
    pub args: Vec<Term>,
}

impl Fact {
    pub fn new(predicate: impl Into<String>, args: Vec<Term>) -> Fact {
        Fact {
            predicate: predicate.into(),
            args,
        }
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }

    /// The atom without the terminating period.
    pub fn atom(&self) -> String {
        let mut s = self.predicate.clone();
        if !self.args.is_empty() {
            s.push('(');
            for (i, arg) in self.args.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                s.push_str(&arg.to_string());
            }
            s.push(')');
        }
        s
    }
}

impl fmt::Display for Fact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.", self.atom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::cmp::Ordering;

    fn g(n: i64) -> Term {
        Term::function("g", vec![Term::int(n)])
    }

    #[test]
    fn prints_canonical_forms() {
        assert_eq!(print_term(&g(3)), "g(3)");
        assert_eq!(
            print_term(&Term::tuple(vec![Term::int(2), Term::int(3)])),
            "(2,3)"
        );
        assert_eq!(print_term(&Term::string("a\"b")), r#""a\"b""#);
        assert_eq!(print_term(&Term::tuple(vec![Term::constant("a")])), "(a,)");
        assert_eq!(print_term(&Term::tuple(vec![])), "()");
        assert_eq!(print_term(&Term::int(-3)), "-3");
    }

    #[test]
    fn kind_order() {
        assert_eq!(Term::int(2).cmp(&Term::int(10)), Ordering::Less);
        let b = Term::constant("b");
        let a1 = Term::function("a", vec![Term::int(1)]);
        assert_eq!(b.cmp(&a1), Ordering::Less);
        assert!(Term::int(100) < Term::constant("a"));
        assert!(Term::constant("z") < Term::string("a"));
        assert!(Term::string("z") < a1);
        assert!(a1 < Term::tuple(vec![]));
        assert_eq!(g(2).cmp(&g(10)), Ordering::Less);
    }

    #[test]
    fn function_with_no_args_is_constant() {
        assert_eq!(Term::function("f", vec![]), Term::constant("f"));
    }

    #[test]
    fn g_family_sorts_by_integer_argument() {
        // Brute force: the sorted order must agree with every pairwise
        // comparison, and comparisons must be transitive.
        let terms: Vec<Term> = (1..=12).rev().map(g).collect();
        let mut sorted = terms.clone();
        sorted.sort();
        assert_eq!(sorted, (1..=12).map(g).collect::<Vec<_>>());
        for a in &terms {
            for b in &terms {
                for c in &terms {
                    if a < b && b < c {
                        assert!(a < c);
                    }
                }
                assert_eq!(a.cmp(b), b.cmp(a).reverse());
            }
        }
    }

    #[test]
    fn fact_text() {
        let f = Fact::new("node", vec![Term::constant("a"), Term::constant("g")]);
        assert_eq!(f.to_string(), "node(a,g).");
        assert_eq!(Fact::new("p", vec![]).to_string(), "p.");
    }
}
