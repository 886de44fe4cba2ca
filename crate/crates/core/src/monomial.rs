//! Variable contexts and monomials with exact exponent arithmetic.
//!
//! A [`VariableContext`] fixes an ordered list of variable names; every
//! [`Monomial`] stores one exponent per context variable. Exponents are
//! checked `u32`s: overflow aborts instead of wrapping.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ContextError {
    #[error("variable context must contain at least one variable")]
    Empty,
    #[error("duplicate variable name `{0}`")]
    DuplicateName(String),
    #[error("invalid variable name `{0}`")]
    InvalidName(String),
}

#[derive(Debug)]
struct ContextInner {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

/// An ordered set of distinct variable names. The order is fixed for the
/// lifetime of the context and defines the variable indices.
#[derive(Debug, Clone)]
pub struct VariableContext {
    inner: Arc<ContextInner>,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl VariableContext {
    pub fn new<I, S>(names: I) -> Result<Self, ContextError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(ContextError::Empty);
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if !valid_name(name) {
                return Err(ContextError::InvalidName(name.clone()));
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(ContextError::DuplicateName(name.clone()));
            }
        }
        Ok(Self {
            inner: Arc::new(ContextInner { names, index }),
        })
    }

    /// Context `x1, x2, ..., xn`.
    pub fn standard(n: usize) -> Self {
        Self::new((1..=n).map(|i| format!("x{i}"))).expect("standard names are valid")
    }

    pub fn len(&self) -> usize {
        self.inner.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn name(&self, i: usize) -> &str {
        &self.inner.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.inner.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.inner.index.get(name).copied()
    }

    /// Two contexts are interchangeable when they list the same names in the
    /// same order; sharing the same allocation is the common fast path.
    pub fn same_as(&self, other: &VariableContext) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.names == other.inner.names
    }
}

impl PartialEq for VariableContext {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for VariableContext {}

/// A monomial: one exponent per variable of its context. The zero vector is
/// the unit monomial.
#[derive(Debug, Clone)]
pub struct Monomial {
    ctx: VariableContext,
    exps: Vec<u32>,
}

impl Monomial {
    pub fn unit(ctx: &VariableContext) -> Self {
        Self {
            ctx: ctx.clone(),
            exps: vec![0; ctx.len()],
        }
    }

    pub fn from_exponents(ctx: &VariableContext, exps: Vec<u32>) -> Self {
        assert_eq!(
            exps.len(),
            ctx.len(),
            "exponent vector length must match context size"
        );
        Self {
            ctx: ctx.clone(),
            exps,
        }
    }

    /// The monomial `x_i^e`.
    pub fn variable_power(ctx: &VariableContext, i: usize, e: u32) -> Self {
        let mut exps = vec![0; ctx.len()];
        exps[i] = e;
        Self {
            ctx: ctx.clone(),
            exps,
        }
    }

    pub fn context(&self) -> &VariableContext {
        &self.ctx
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn is_unit(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    fn assert_same_context(&self, other: &Monomial) {
        assert!(
            self.ctx.same_as(&other.ctx),
            "monomials from different variable contexts"
        );
    }

    /// True iff every exponent of `self` is at most the matching exponent of
    /// `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.assert_same_context(other);
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// Componentwise maximum.
    pub fn lcm(&self, other: &Monomial) -> Monomial {
        self.assert_same_context(other);
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| a.max(b))
            .collect();
        Monomial {
            ctx: self.ctx.clone(),
            exps,
        }
    }

    /// Componentwise minimum.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        self.assert_same_context(other);
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| a.min(b))
            .collect();
        Monomial {
            ctx: self.ctx.clone(),
            exps,
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.assert_same_context(other);
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow"))
            .collect();
        Monomial {
            ctx: self.ctx.clone(),
            exps,
        }
    }

    /// Exact division; `None` when `other` does not divide `self`.
    pub fn div_exact(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| a - b)
            .collect();
        Some(Monomial {
            ctx: self.ctx.clone(),
            exps,
        })
    }

    /// Truncated division `self / gcd(self, m)`, the per-generator step of a
    /// colon by a monomial.
    pub fn colon_by(&self, m: &Monomial) -> Monomial {
        self.assert_same_context(m);
        let exps = self
            .exps
            .iter()
            .zip(&m.exps)
            .map(|(&a, &b)| a.saturating_sub(b))
            .collect();
        Monomial {
            ctx: self.ctx.clone(),
            exps,
        }
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }
}

impl PartialEq for Monomial {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.same_as(&other.ctx) && self.exps == other.exps
    }
}

impl Eq for Monomial {}

impl Hash for Monomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.exps.hash(state);
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic order on exponent vectors; the canonical generator order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.assert_same_context(other);
        self.exps.cmp(&other.exps)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", self.ctx.name(i))?;
            } else {
                write!(f, "{}^{}", self.ctx.name(i), e)?;
            }
        }
        Ok(())
    }
}
