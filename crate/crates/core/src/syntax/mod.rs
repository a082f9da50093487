//! Object-language types and terms.
//!
//! Terms carry a [`Span`] for error reporting. Spans never take part in
//! equality: two terms are equal when their trees are equal.

mod parse;
mod pretty;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

pub use parse::{parse_term, parse_type, ParseError};

/// Byte range into the source text a node was parsed from.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub const DUMMY: Span = Span { start: 0, end: 0 };

    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        Span { start, end }
    }

    pub fn join(self, other: Span) -> Span {
        Span::new(self.start.min(other.start), self.end.max(other.end))
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ty {
    Var(String),
    Nat,
    Pair(Box<Ty>, Box<Ty>),
    List(Box<Ty>),
    Arrow(Box<Ty>, Box<Ty>),
}

impl Ty {
    pub fn var(name: impl Into<String>) -> Ty {
        Ty::Var(name.into())
    }

    pub fn pair(l: Ty, r: Ty) -> Ty {
        Ty::Pair(Box::new(l), Box::new(r))
    }

    pub fn list(elem: Ty) -> Ty {
        Ty::List(Box::new(elem))
    }

    pub fn arrow(dom: Ty, cod: Ty) -> Ty {
        Ty::Arrow(Box::new(dom), Box::new(cod))
    }

    /// Right-nested arrow `a1 -> a2 -> ... -> cod`.
    pub fn arrows(doms: impl IntoIterator<Item = Ty>, cod: Ty) -> Ty {
        let doms: Vec<Ty> = doms.into_iter().collect();
        doms.into_iter().rev().fold(cod, |acc, d| Ty::arrow(d, acc))
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Ty::Var(a) => {
                out.insert(a.clone());
            }
            Ty::Nat => {}
            Ty::List(e) => e.collect_vars(out),
            Ty::Pair(l, r) | Ty::Arrow(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        match self {
            Ty::Var(_) => false,
            Ty::Nat => true,
            Ty::List(e) => e.is_closed(),
            Ty::Pair(l, r) | Ty::Arrow(l, r) => l.is_closed() && r.is_closed(),
        }
    }

    /// True when no arrow occurs anywhere in the type.
    pub fn is_first_order(&self) -> bool {
        match self {
            Ty::Var(_) | Ty::Nat => true,
            Ty::List(e) => e.is_first_order(),
            Ty::Pair(l, r) => l.is_first_order() && r.is_first_order(),
            Ty::Arrow(..) => false,
        }
    }

    pub fn subst(&self, alpha: &str, tau: &Ty) -> Ty {
        match self {
            Ty::Var(a) if a == alpha => tau.clone(),
            Ty::Var(_) | Ty::Nat => self.clone(),
            Ty::List(e) => Ty::list(e.subst(alpha, tau)),
            Ty::Pair(l, r) => Ty::pair(l.subst(alpha, tau), r.subst(alpha, tau)),
            Ty::Arrow(l, r) => Ty::arrow(l.subst(alpha, tau), r.subst(alpha, tau)),
        }
    }

    /// Nesting depth of type constructors; variables and `Nat` have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Ty::Var(_) | Ty::Nat => 0,
            Ty::List(e) => 1 + e.depth(),
            Ty::Pair(l, r) | Ty::Arrow(l, r) => 1 + l.depth().max(r.depth()),
        }
    }
}

/// A term node. Equality ignores the span.
#[derive(Debug, Clone)]
pub struct Term {
    pub kind: TermKind,
    pub span: Span,
}

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for Term {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TermKind {
    Var(String),
    Nat(u64),
    /// `ncase t {0 -> t1; x -> t2}`; `x` is bound to the scrutinee itself.
    NatCase {
        scrutinee: Arc<Term>,
        zero: Arc<Term>,
        binder: String,
        pos: Arc<Term>,
    },
    Add(Arc<Term>, Arc<Term>),
    Nil(Ty),
    Cons(Arc<Term>, Arc<Term>),
    ListCase {
        scrutinee: Arc<Term>,
        nil: Arc<Term>,
        head: String,
        tail: String,
        cons: Arc<Term>,
    },
    Pair(Arc<Term>, Arc<Term>),
    PairCase {
        scrutinee: Arc<Term>,
        fst: String,
        snd: String,
        body: Arc<Term>,
    },
    Lam {
        binder: String,
        ty: Ty,
        body: Arc<Term>,
    },
    App(Arc<Term>, Arc<Term>),
    LFold {
        step: Arc<Term>,
        init: Arc<Term>,
        list: Arc<Term>,
    },
    IFold {
        step: Arc<Term>,
        init: Arc<Term>,
        count: Arc<Term>,
    },
}

impl From<TermKind> for Term {
    fn from(kind: TermKind) -> Self {
        Term {
            kind,
            span: Span::DUMMY,
        }
    }
}

// Builders for terms constructed in code rather than parsed.
impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        TermKind::Var(name.into()).into()
    }

    pub fn nat(n: u64) -> Term {
        TermKind::Nat(n).into()
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(l: Term, r: Term) -> Term {
        TermKind::Add(Arc::new(l), Arc::new(r)).into()
    }

    pub fn nil(elem: Ty) -> Term {
        TermKind::Nil(elem).into()
    }

    pub fn cons(h: Term, t: Term) -> Term {
        TermKind::Cons(Arc::new(h), Arc::new(t)).into()
    }

    pub fn pair(a: Term, b: Term) -> Term {
        TermKind::Pair(Arc::new(a), Arc::new(b)).into()
    }

    pub fn lam(binder: impl Into<String>, ty: Ty, body: Term) -> Term {
        TermKind::Lam {
            binder: binder.into(),
            ty,
            body: Arc::new(body),
        }
        .into()
    }

    pub fn app(f: Term, a: Term) -> Term {
        TermKind::App(Arc::new(f), Arc::new(a)).into()
    }

    /// Left-nested application `f a1 a2 ... an`.
    pub fn apps(f: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(f, Term::app)
    }

    pub fn lfold(step: Term, init: Term, list: Term) -> Term {
        TermKind::LFold {
            step: Arc::new(step),
            init: Arc::new(init),
            list: Arc::new(list),
        }
        .into()
    }

    pub fn ifold(step: Term, init: Term, count: Term) -> Term {
        TermKind::IFold {
            step: Arc::new(step),
            init: Arc::new(init),
            count: Arc::new(count),
        }
        .into()
    }

    /// List literal `e1 : e2 : ... : nil[elem]`.
    pub fn list_of(elem: Ty, items: impl IntoIterator<Item = Term>) -> Term {
        let items: Vec<Term> = items.into_iter().collect();
        items
            .into_iter()
            .rev()
            .fold(Term::nil(elem), |acc, h| Term::cons(h, acc))
    }

    pub fn with_span(mut self, span: Span) -> Term {
        self.span = span;
        self
    }

    /// All type variables mentioned by annotations inside the term.
    pub fn type_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit_types(&mut |ty| ty.collect_vars(&mut out));
        out
    }

    fn visit_types(&self, f: &mut impl FnMut(&Ty)) {
        match &self.kind {
            TermKind::Var(_) | TermKind::Nat(_) => {}
            TermKind::Nil(ty) => f(ty),
            TermKind::Lam { ty, body, .. } => {
                f(ty);
                body.visit_types(f);
            }
            TermKind::Add(a, b)
            | TermKind::Cons(a, b)
            | TermKind::Pair(a, b)
            | TermKind::App(a, b) => {
                a.visit_types(f);
                b.visit_types(f);
            }
            TermKind::NatCase {
                scrutinee,
                zero,
                pos,
                ..
            } => {
                scrutinee.visit_types(f);
                zero.visit_types(f);
                pos.visit_types(f);
            }
            TermKind::ListCase {
                scrutinee,
                nil,
                cons,
                ..
            } => {
                scrutinee.visit_types(f);
                nil.visit_types(f);
                cons.visit_types(f);
            }
            TermKind::PairCase {
                scrutinee, body, ..
            } => {
                scrutinee.visit_types(f);
                body.visit_types(f);
            }
            TermKind::LFold { step, init, list } => {
                step.visit_types(f);
                init.visit_types(f);
                list.visit_types(f);
            }
            TermKind::IFold { step, init, count } => {
                step.visit_types(f);
                init.visit_types(f);
                count.visit_types(f);
            }
        }
    }
}

/// Replace `TyVar(alpha)` by `tau` in every annotation of `t`.
///
/// The calculus has no type binders, so there is nothing to capture. Spans
/// are preserved.
pub fn subst_type_in_term(t: &Term, alpha: &str, tau: &Ty) -> Term {
    let sub = |t: &Arc<Term>| Arc::new(subst_type_in_term(t, alpha, tau));
    let kind = match &t.kind {
        TermKind::Var(_) | TermKind::Nat(_) => t.kind.clone(),
        TermKind::Nil(ty) => TermKind::Nil(ty.subst(alpha, tau)),
        TermKind::Lam { binder, ty, body } => TermKind::Lam {
            binder: binder.clone(),
            ty: ty.subst(alpha, tau),
            body: sub(body),
        },
        TermKind::Add(a, b) => TermKind::Add(sub(a), sub(b)),
        TermKind::Cons(a, b) => TermKind::Cons(sub(a), sub(b)),
        TermKind::Pair(a, b) => TermKind::Pair(sub(a), sub(b)),
        TermKind::App(a, b) => TermKind::App(sub(a), sub(b)),
        TermKind::NatCase {
            scrutinee,
            zero,
            binder,
            pos,
        } => TermKind::NatCase {
            scrutinee: sub(scrutinee),
            zero: sub(zero),
            binder: binder.clone(),
            pos: sub(pos),
        },
        TermKind::ListCase {
            scrutinee,
            nil,
            head,
            tail,
            cons,
        } => TermKind::ListCase {
            scrutinee: sub(scrutinee),
            nil: sub(nil),
            head: head.clone(),
            tail: tail.clone(),
            cons: sub(cons),
        },
        TermKind::PairCase {
            scrutinee,
            fst,
            snd,
            body,
        } => TermKind::PairCase {
            scrutinee: sub(scrutinee),
            fst: fst.clone(),
            snd: snd.clone(),
            body: sub(body),
        },
        TermKind::LFold { step, init, list } => TermKind::LFold {
            step: sub(step),
            init: sub(init),
            list: sub(list),
        },
        TermKind::IFold { step, init, count } => TermKind::IFold {
            step: sub(step),
            init: sub(init),
            count: sub(count),
        },
    };
    Term { kind, span: t.span }
}

pub(crate) fn is_keyword(s: &str) -> bool {
    matches!(s, "ncase" | "lcase" | "pcase" | "lfold" | "ifold" | "nil" | "Nat")
}

/// Identifier rule: a lowercase ASCII letter followed by ASCII alphanumerics,
/// and not a reserved word.
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric()) && !is_keyword(s)
}
