//! The typing judgment `ctx |- t :: ty` for the explicitly typed calculus.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::syntax::{Span, Term, TermKind, Ty};

/// Typing context: declared type variables plus term variables, innermost last.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Ctx {
    type_vars: BTreeSet<String>,
    term_vars: Vec<(String, Ty)>,
}

impl Ctx {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_type_vars<I, S>(vars: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Ctx {
            type_vars: vars.into_iter().map(Into::into).collect(),
            term_vars: Vec::new(),
        }
    }

    pub fn type_vars(&self) -> &BTreeSet<String> {
        &self.type_vars
    }

    pub fn term_vars(&self) -> &[(String, Ty)] {
        &self.term_vars
    }

    pub fn declare_type_var(&mut self, name: impl Into<String>) {
        self.type_vars.insert(name.into());
    }

    /// Bind a term variable. Fails if `ty` mentions an undeclared type variable.
    pub fn bind(&mut self, name: impl Into<String>, ty: Ty) -> Result<(), TypeError> {
        self.check_wf(&ty, Span::DUMMY)?;
        self.term_vars.push((name.into(), ty));
        Ok(())
    }

    pub fn lookup(&self, name: &str) -> Option<&Ty> {
        self.term_vars
            .iter()
            .rev()
            .find(|(x, _)| x == name)
            .map(|(_, t)| t)
    }

    fn check_wf(&self, ty: &Ty, span: Span) -> Result<(), TypeError> {
        match ty
            .free_vars()
            .into_iter()
            .find(|a| !self.type_vars.contains(a))
        {
            Some(a) => Err(TypeError::new(
                span,
                "a declared type variable",
                format!("undeclared type variable `{a}`"),
            )),
            None => Ok(()),
        }
    }
}

/// Either a concrete type or a short description of a shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expectation {
    Type(Ty),
    Described(String),
}

impl fmt::Display for Expectation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expectation::Type(t) => write!(f, "`{t}`"),
            Expectation::Described(s) => f.write_str(s),
        }
    }
}

impl From<Ty> for Expectation {
    fn from(t: Ty) -> Self {
        Expectation::Type(t)
    }
}

impl From<&str> for Expectation {
    fn from(s: &str) -> Self {
        Expectation::Described(s.to_string())
    }
}

impl From<String> for Expectation {
    fn from(s: String) -> Self {
        Expectation::Described(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("type error at {span}: expected {expected}, found {found}")]
pub struct TypeError {
    pub span: Span,
    pub expected: Expectation,
    pub found: Expectation,
}

impl TypeError {
    pub fn new(span: Span, expected: impl Into<Expectation>, found: impl Into<Expectation>) -> Self {
        TypeError {
            span,
            expected: expected.into(),
            found: found.into(),
        }
    }
}

fn expect_eq(span: Span, expected: &Ty, found: Ty) -> Result<(), TypeError> {
    if *expected == found {
        Ok(())
    } else {
        Err(TypeError::new(span, expected.clone(), found))
    }
}

pub fn typecheck(ctx: &Ctx, t: &Term) -> Result<Ty, TypeError> {
    let mut ctx = ctx.clone();
    check(&mut ctx, t)
}

fn with_bindings<T>(
    ctx: &mut Ctx,
    binds: &[(&str, Ty)],
    f: impl FnOnce(&mut Ctx) -> Result<T, TypeError>,
) -> Result<T, TypeError> {
    let depth = ctx.term_vars.len();
    for (x, ty) in binds {
        ctx.term_vars.push((x.to_string(), ty.clone()));
    }
    let out = f(ctx);
    ctx.term_vars.truncate(depth);
    out
}

fn check(ctx: &mut Ctx, t: &Term) -> Result<Ty, TypeError> {
    let span = t.span;
    match &t.kind {
        TermKind::Var(x) => ctx
            .lookup(x)
            .cloned()
            .ok_or_else(|| TypeError::new(span, "a bound variable", format!("unbound variable `{x}`"))),
        TermKind::Nat(_) => Ok(Ty::Nat),
        TermKind::Nil(ty) => {
            ctx.check_wf(ty, span)?;
            Ok(Ty::list(ty.clone()))
        }
        TermKind::Add(a, b) => {
            let ta = check(ctx, a)?;
            expect_eq(a.span, &Ty::Nat, ta)?;
            let tb = check(ctx, b)?;
            expect_eq(b.span, &Ty::Nat, tb)?;
            Ok(Ty::Nat)
        }
        TermKind::NatCase {
            scrutinee,
            zero,
            binder,
            pos,
        } => {
            let ts = check(ctx, scrutinee)?;
            expect_eq(scrutinee.span, &Ty::Nat, ts)?;
            let tz = check(ctx, zero)?;
            let tp = with_bindings(ctx, &[(binder, Ty::Nat)], |c| check(c, pos))?;
            expect_eq(pos.span, &tz, tp)?;
            Ok(tz)
        }
        TermKind::Cons(h, tl) => {
            let th = check(ctx, h)?;
            let tt = check(ctx, tl)?;
            expect_eq(tl.span, &Ty::list(th), tt.clone())?;
            Ok(tt)
        }
        TermKind::ListCase {
            scrutinee,
            nil,
            head,
            tail,
            cons,
        } => {
            let ts = check(ctx, scrutinee)?;
            let elem = match ts {
                Ty::List(e) => *e,
                other => return Err(TypeError::new(scrutinee.span, "a list type", other)),
            };
            let tn = check(ctx, nil)?;
            let tc = with_bindings(
                ctx,
                &[(head, elem.clone()), (tail, Ty::list(elem))],
                |c| check(c, cons),
            )?;
            expect_eq(cons.span, &tn, tc)?;
            Ok(tn)
        }
        TermKind::Pair(a, b) => {
            let ta = check(ctx, a)?;
            let tb = check(ctx, b)?;
            Ok(Ty::pair(ta, tb))
        }
        TermKind::PairCase {
            scrutinee,
            fst,
            snd,
            body,
        } => {
            let ts = check(ctx, scrutinee)?;
            let (l, r) = match ts {
                Ty::Pair(l, r) => (*l, *r),
                other => return Err(TypeError::new(scrutinee.span, "a pair type", other)),
            };
            with_bindings(ctx, &[(fst, l), (snd, r)], |c| check(c, body))
        }
        TermKind::Lam { binder, ty, body } => {
            ctx.check_wf(ty, span)?;
            let tb = with_bindings(ctx, &[(binder, ty.clone())], |c| check(c, body))?;
            Ok(Ty::arrow(ty.clone(), tb))
        }
        TermKind::App(f, a) => {
            let tf = check(ctx, f)?;
            let (dom, cod) = match tf {
                Ty::Arrow(d, c) => (*d, *c),
                other => return Err(TypeError::new(f.span, "a function type", other)),
            };
            let ta = check(ctx, a)?;
            expect_eq(a.span, &dom, ta)?;
            Ok(cod)
        }
        TermKind::LFold { step, init, list } => {
            // step :: t1 -> t2 -> t2, init :: t2, list :: [t1]
            let ts = check(ctx, step)?;
            let (t1, t2) = match &ts {
                Ty::Arrow(d, c) => match &**c {
                    Ty::Arrow(d2, c2) if d2 == c2 => ((**d).clone(), (**c2).clone()),
                    _ => return Err(TypeError::new(step.span, "a type of shape `t1 -> t2 -> t2`", ts)),
                },
                _ => return Err(TypeError::new(step.span, "a type of shape `t1 -> t2 -> t2`", ts)),
            };
            let ti = check(ctx, init)?;
            expect_eq(init.span, &t2, ti)?;
            let tl = check(ctx, list)?;
            expect_eq(list.span, &Ty::list(t1), tl)?;
            Ok(t2)
        }
        TermKind::IFold { step, init, count } => {
            // step :: t -> t, init :: t, count :: Nat
            let ts = check(ctx, step)?;
            let t = match &ts {
                Ty::Arrow(d, c) if d == c => (**d).clone(),
                _ => return Err(TypeError::new(step.span, "a type of shape `t -> t`", ts)),
            };
            let ti = check(ctx, init)?;
            expect_eq(init.span, &t, ti)?;
            let tc = check(ctx, count)?;
            expect_eq(count.span, &Ty::Nat, tc)?;
            Ok(t)
        }
    }
}
