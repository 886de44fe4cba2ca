//! Monomial ideals represented by canonical minimal generating sets.
//!
//! Every constructor minimalizes: generators are deduplicated, generators
//! divisible by another generator are dropped, and the survivors are kept in
//! lexicographic order on exponent vectors. Equal ideals therefore have
//! identical representations and ideal equality is plain `==`.
//!
//! The unit monomial may survive minimalization (for example after a colon
//! by a full generator); such an ideal is *improper* and is rejected by the
//! Betti engine. The empty generator list is the zero ideal.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::monomial::{ContextError, Monomial, VariableContext};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdealError {
    #[error("variable context mismatch")]
    ContextMismatch,
    #[error("power exponent must be at least 1")]
    ZeroPower,
    #[error("operation requires a nonzero ideal")]
    ZeroIdeal,
    #[error("operation requires a proper ideal")]
    ImproperIdeal,
    #[error("variable `{0}` not present in the target context")]
    MissingVariable(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("missing `ring` header line")]
    MissingHeader,
    #[error("invalid ring header: {0}")]
    BadHeader(#[from] ContextError),
    #[error("line {line}: unknown variable `{name}`")]
    UnknownVariable { line: usize, name: String },
    #[error("line {line}: malformed term `{term}`")]
    MalformedTerm { line: usize, term: String },
}

/// A monomial ideal given by its minimal generating set in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    ctx: VariableContext,
    gens: Vec<Monomial>,
}

/// Keep only divisibility-minimal elements, deduplicated and sorted.
pub fn minimalize(ctx: &VariableContext, gens: Vec<Monomial>) -> MonomialIdeal {
    let mut gens: Vec<Monomial> = gens;
    for g in &gens {
        assert!(
            g.context().same_as(ctx),
            "generator context does not match ideal context"
        );
    }
    gens.sort();
    gens.dedup();
    let mut keep = vec![true; gens.len()];
    for i in 0..gens.len() {
        if !keep[i] {
            continue;
        }
        for j in 0..gens.len() {
            if i != j && keep[j] && gens[i].divides(&gens[j]) {
                keep[j] = false;
            }
        }
    }
    let gens = gens
        .into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(g, _)| g)
        .collect();
    MonomialIdeal {
        ctx: ctx.clone(),
        gens,
    }
}

impl MonomialIdeal {
    pub fn new(ctx: &VariableContext, gens: Vec<Monomial>) -> Self {
        minimalize(ctx, gens)
    }

    pub fn zero(ctx: &VariableContext) -> Self {
        Self {
            ctx: ctx.clone(),
            gens: Vec::new(),
        }
    }

    pub fn principal(m: Monomial) -> Self {
        let ctx = m.context().clone();
        Self::new(&ctx, vec![m])
    }

    pub fn context(&self) -> &VariableContext {
        &self.ctx
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn num_generators(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// True when the ideal is the whole ring, i.e. generated by the unit
    /// monomial.
    pub fn is_improper(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_unit()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    fn check_context(&self, other: &MonomialIdeal) -> Result<(), IdealError> {
        if self.ctx.same_as(&other.ctx) {
            Ok(())
        } else {
            Err(IdealError::ContextMismatch)
        }
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal, IdealError> {
        self.check_context(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(minimalize(&self.ctx, gens))
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal, IdealError> {
        self.check_context(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.mul(b));
            }
        }
        Ok(minimalize(&self.ctx, gens))
    }

    /// `t`-fold product with intermediate minimalization; `t = 0` is
    /// rejected.
    pub fn power(&self, t: u32) -> Result<MonomialIdeal, IdealError> {
        if t == 0 {
            return Err(IdealError::ZeroPower);
        }
        let mut result = self.clone();
        for _ in 1..t {
            result = result.product(self)?;
        }
        Ok(result)
    }

    /// Intersection via pairwise lcms of generators (exact for monomial
    /// ideals).
    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal, IdealError> {
        self.check_context(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.lcm(b));
            }
        }
        Ok(minimalize(&self.ctx, gens))
    }

    /// Colon by a monomial: generated by `g / gcd(g, m)` over the
    /// generators. May return an improper ideal when `m` is a multiple of a
    /// generator.
    pub fn colon(&self, m: &Monomial) -> Result<MonomialIdeal, IdealError> {
        if !self.ctx.same_as(m.context()) {
            return Err(IdealError::ContextMismatch);
        }
        let gens = self.gens.iter().map(|g| g.colon_by(m)).collect();
        Ok(minimalize(&self.ctx, gens))
    }

    /// Indices of variables with a positive exponent in some generator.
    pub fn support(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for g in &self.gens {
            out.extend(g.support());
        }
        out
    }

    /// Every generator of `self` is divisible by some generator of `other`.
    pub fn is_subset_of(&self, other: &MonomialIdeal) -> Result<bool, IdealError> {
        self.check_context(other)?;
        Ok(self
            .gens
            .iter()
            .all(|g| other.gens.iter().any(|h| h.divides(g))))
    }

    /// Largest exponent of each variable over the generators.
    pub fn max_exponents(&self) -> Vec<u32> {
        let mut maxes = vec![0u32; self.ctx.len()];
        for g in &self.gens {
            for (m, &e) in maxes.iter_mut().zip(g.exponents()) {
                *m = (*m).max(e);
            }
        }
        maxes
    }

    /// Squarefree ideal in a fresh context: variable `v` with maximal
    /// exponent `a` splits into layers `v_1 ... v_a`, and an exponent
    /// `v^e` in a generator becomes `v_1 * ... * v_e`.
    pub fn polarize(&self) -> Result<MonomialIdeal, IdealError> {
        if self.is_zero() {
            return Err(IdealError::ZeroIdeal);
        }
        if self.is_improper() {
            return Err(IdealError::ImproperIdeal);
        }
        let maxes = self.max_exponents();
        let mut names = Vec::new();
        let mut offsets = vec![0usize; self.ctx.len()];
        for (i, &a) in maxes.iter().enumerate() {
            offsets[i] = names.len();
            for layer in 1..=a {
                names.push(format!("{}_{}", self.ctx.name(i), layer));
            }
        }
        let polar_ctx = VariableContext::new(names).expect("polarized names are distinct");
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let mut exps = vec![0u32; polar_ctx.len()];
                for (i, &e) in g.exponents().iter().enumerate() {
                    for layer in 0..e as usize {
                        exps[offsets[i] + layer] = 1;
                    }
                }
                Monomial::from_exponents(&polar_ctx, exps)
            })
            .collect();
        Ok(MonomialIdeal::new(&polar_ctx, gens))
    }

    /// Reinterpret the ideal in a larger context that contains every
    /// variable of the current one (matched by name).
    pub fn embed_into(&self, target: &VariableContext) -> Result<MonomialIdeal, IdealError> {
        let map: Vec<usize> = self
            .ctx
            .names()
            .iter()
            .map(|n| {
                target
                    .index_of(n)
                    .ok_or_else(|| IdealError::MissingVariable(n.clone()))
            })
            .collect::<Result<_, _>>()?;
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let mut exps = vec![0u32; target.len()];
                for (i, &e) in g.exponents().iter().enumerate() {
                    exps[map[i]] = e;
                }
                Monomial::from_exponents(target, exps)
            })
            .collect();
        Ok(MonomialIdeal::new(target, gens))
    }
}

/// Text format: a `ring x1 x2 ... xn` header, then one generator per
/// nonempty line with factors joined by `*` and powers by `^`.
impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ring")?;
        for name in self.ctx.names() {
            write!(f, " {name}")?;
        }
        writeln!(f)?;
        for g in &self.gens {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Parse one `*`-separated monomial in `ctx`. Whitespace-insensitive.
pub fn parse_monomial(ctx: &VariableContext, text: &str) -> Result<Monomial, ParseError> {
    parse_monomial_at_line(ctx, text, 0)
}

fn parse_monomial_at_line(
    ctx: &VariableContext,
    text: &str,
    line: usize,
) -> Result<Monomial, ParseError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact == "1" {
        return Ok(Monomial::unit(ctx));
    }
    let mut exps = vec![0u32; ctx.len()];
    for factor in compact.split('*') {
        let (name, power) = match factor.split_once('^') {
            Some((name, power)) => {
                let power: u32 =
                    power
                        .parse()
                        .map_err(|_| ParseError::MalformedTerm {
                            line,
                            term: factor.to_string(),
                        })?;
                (name, power)
            }
            None => (factor, 1),
        };
        if name.is_empty() {
            return Err(ParseError::MalformedTerm {
                line,
                term: factor.to_string(),
            });
        }
        let idx = ctx.index_of(name).ok_or_else(|| ParseError::UnknownVariable {
            line,
            name: name.to_string(),
        })?;
        exps[idx] = exps[idx]
            .checked_add(power)
            .expect("exponent overflow while parsing");
    }
    Ok(Monomial::from_exponents(ctx, exps))
}

/// Parse the ideal text format. An input with only the header denotes the
/// zero ideal.
pub fn parse_ideal(text: &str) -> Result<MonomialIdeal, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (_, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let mut words = header.split_whitespace();
    if words.next() != Some("ring") {
        return Err(ParseError::MissingHeader);
    }
    let ctx = VariableContext::new(words.map(str::to_string))?;
    let mut gens = Vec::new();
    for (line, body) in lines {
        gens.push(parse_monomial_at_line(&ctx, body, line)?);
    }
    Ok(MonomialIdeal::new(&ctx, gens))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: usize) -> VariableContext {
        VariableContext::standard(n)
    }

    fn mono(c: &VariableContext, exps: &[u32]) -> Monomial {
        Monomial::from_exponents(c, exps.to_vec())
    }

    fn ideal(c: &VariableContext, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::new(c, gens.iter().map(|e| mono(c, e)).collect())
    }

    #[test]
    fn minimalize_filters_multiples() {
        let c = ctx(3);
        let i = ideal(&c, &[&[1, 1, 0], &[1, 1, 1]]);
        assert_eq!(i.generators(), &[mono(&c, &[1, 1, 0])]);
        let j = ideal(&c, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0]]);
        assert_eq!(j.num_generators(), 2);
        assert!(MonomialIdeal::zero(&c).is_zero());
    }

    #[test]
    fn minimalize_keeps_unit_only() {
        let c = ctx(2);
        let i = MonomialIdeal::new(&c, vec![Monomial::unit(&c), mono(&c, &[1, 0])]);
        assert!(i.is_improper());
        assert_eq!(i.num_generators(), 1);
    }

    #[test]
    fn sum_examples() {
        let c = ctx(3);
        let a = ideal(&c, &[&[1, 1, 0]]);
        let b = ideal(&c, &[&[0, 1, 1]]);
        assert_eq!(a.sum(&b).unwrap().num_generators(), 2);
        assert_eq!(a.sum(&MonomialIdeal::zero(&c)).unwrap(), a);
        let x1 = ideal(&c, &[&[1, 0, 0]]);
        let x1x2 = ideal(&c, &[&[1, 1, 0]]);
        assert_eq!(x1.sum(&x1x2).unwrap(), x1);
    }

    #[test]
    fn product_examples() {
        let c = ctx(3);
        let x1 = ideal(&c, &[&[1, 0, 0]]);
        let rest = ideal(&c, &[&[0, 1, 0], &[0, 0, 1]]);
        let p = x1.product(&rest).unwrap();
        assert_eq!(p, ideal(&c, &[&[1, 1, 0], &[1, 0, 1]]));

        let i = ideal(&c, &[&[1, 2, 0], &[0, 1, 1]]);
        let sq = i.product(&i).unwrap();
        assert_eq!(sq, ideal(&c, &[&[2, 4, 0], &[1, 3, 1], &[0, 2, 2]]));

        let unit = MonomialIdeal::principal(Monomial::unit(&c));
        assert_eq!(i.product(&unit).unwrap(), i);
    }

    #[test]
    fn power_examples() {
        let c = ctx(4);
        let i = ideal(&c, &[&[1, 5, 0, 0], &[0, 1, 1, 0], &[0, 0, 1, 8]]);
        let sq = i.power(2).unwrap();
        assert_eq!(sq.num_generators(), 6);
        assert_eq!(i.power(1).unwrap(), i);
        assert!(matches!(i.power(0), Err(IdealError::ZeroPower)));

        let principal = ideal(&c, &[&[1, 3, 0, 0]]);
        let cube = principal.power(3).unwrap();
        assert_eq!(cube.generators(), &[mono(&c, &[3, 9, 0, 0])]);
    }

    #[test]
    fn intersect_examples() {
        let c = ctx(4);
        let a = ideal(&c, &[&[1, 0, 0, 0]]);
        let b = ideal(&c, &[&[0, 1, 0, 0]]);
        assert_eq!(a.intersect(&b).unwrap(), ideal(&c, &[&[1, 1, 0, 0]]));

        let i = ideal(&c, &[&[1, 1, 0, 0], &[0, 0, 1, 0]]);
        assert_eq!(i.intersect(&i).unwrap(), i);

        let j = ideal(&c, &[&[1, 0, 0, 0], &[0, 0, 1, 1]]);
        let got = i.intersect(&j).unwrap();
        assert_eq!(
            got,
            ideal(&c, &[&[1, 1, 0, 0], &[1, 0, 1, 0], &[0, 0, 1, 1]])
        );
    }

    #[test]
    fn colon_examples() {
        let c = ctx(3);
        let i = ideal(&c, &[&[1, 2, 0], &[0, 1, 1]]);
        let by_x2 = i.colon(&mono(&c, &[0, 1, 0])).unwrap();
        assert_eq!(by_x2, ideal(&c, &[&[1, 1, 0], &[0, 0, 1]]));

        assert_eq!(i.colon(&Monomial::unit(&c)).unwrap(), i);

        let p = ideal(&c, &[&[1, 2, 0]]);
        let full = p.colon(&mono(&c, &[1, 2, 0])).unwrap();
        assert!(full.is_improper());
    }

    #[test]
    fn colon_composes() {
        let c = ctx(3);
        let i = ideal(&c, &[&[2, 3, 0], &[0, 1, 2], &[1, 0, 1]]);
        let m = mono(&c, &[1, 1, 0]);
        let n = mono(&c, &[0, 1, 1]);
        let two_step = i.colon(&m).unwrap().colon(&n).unwrap();
        let one_step = i.colon(&m.mul(&n)).unwrap();
        assert_eq!(two_step, one_step);
    }

    #[test]
    fn polarize_path_example() {
        // Path edge ideal with weights (1,3,1,2,5).
        let c = ctx(5);
        let i = ideal(
            &c,
            &[
                &[1, 3, 0, 0, 0],
                &[0, 1, 1, 0, 0],
                &[0, 0, 1, 2, 0],
                &[0, 0, 0, 1, 5],
            ],
        );
        let p = i.polarize().unwrap();
        assert_eq!(p.context().len(), 1 + 3 + 1 + 2 + 5);
        assert_eq!(p.num_generators(), 4);
        assert!(p.is_squarefree());
        // x1*x2^3 polarizes to x1_1*x2_1*x2_2*x2_3.
        let expected_names = ["x1_1", "x2_1", "x2_2", "x2_3"];
        let g = p
            .generators()
            .iter()
            .find(|g| g.degree() == 4)
            .expect("one degree-4 generator");
        for name in expected_names {
            let idx = p.context().index_of(name).unwrap();
            assert_eq!(g.exponent(idx), 1);
        }
        // Degrees are preserved generator by generator.
        let mut orig: Vec<u64> = i.generators().iter().map(Monomial::degree).collect();
        let mut polar: Vec<u64> = p.generators().iter().map(Monomial::degree).collect();
        orig.sort_unstable();
        polar.sort_unstable();
        assert_eq!(orig, polar);
    }

    #[test]
    fn polarize_squarefree_fixpoint_and_single_variable() {
        let c = ctx(2);
        let i = ideal(&c, &[&[1, 1]]);
        let p = i.polarize().unwrap();
        assert_eq!(p.context().names(), &["x1_1".to_string(), "x2_1".to_string()]);
        assert_eq!(p.generators()[0].exponents(), &[1, 1]);

        let single = ideal(&c, &[&[2, 0]]);
        let ps = single.polarize().unwrap();
        assert_eq!(ps.context().names(), &["x1_1".to_string(), "x1_2".to_string()]);
        assert_eq!(ps.generators()[0].exponents(), &[1, 1]);
    }

    #[test]
    fn support_examples() {
        let c = ctx(3);
        assert_eq!(
            ideal(&c, &[&[1, 3, 0]]).support().into_iter().collect::<Vec<_>>(),
            vec![0, 1]
        );
        assert!(MonomialIdeal::zero(&c).support().is_empty());
        assert_eq!(
            ideal(&c, &[&[1, 0, 0], &[0, 0, 1]])
                .support()
                .into_iter()
                .collect::<Vec<_>>(),
            vec![0, 2]
        );
    }

    #[test]
    fn subset_iff_sum_absorbs() {
        let c = ctx(3);
        let i = ideal(&c, &[&[2, 1, 0]]);
        let j = ideal(&c, &[&[1, 1, 0], &[0, 0, 1]]);
        assert!(i.is_subset_of(&j).unwrap());
        assert_eq!(i.sum(&j).unwrap(), j);
        assert!(!j.is_subset_of(&i).unwrap());
        assert_ne!(j.sum(&i).unwrap(), i);
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let a = MonomialIdeal::zero(&ctx(2));
        let b = MonomialIdeal::zero(&ctx(3));
        assert!(matches!(a.sum(&b), Err(IdealError::ContextMismatch)));
    }

    #[test]
    fn text_format_round_trip() {
        let text = "ring x1 x2 x3 x4\nx1*x2^5\nx2 * x3\nx3*x4^8\n";
        let i = parse_ideal(text).unwrap();
        assert_eq!(i.num_generators(), 3);
        let rendered = i.to_string();
        let reparsed = parse_ideal(&rendered).unwrap();
        assert_eq!(i, reparsed);
        assert_eq!(rendered, reparsed.to_string());
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(matches!(parse_ideal(""), Err(ParseError::MissingHeader)));
        assert!(matches!(
            parse_ideal("ring x1\ny1"),
            Err(ParseError::UnknownVariable { .. })
        ));
        assert!(matches!(
            parse_ideal("ring x1\nx1^a"),
            Err(ParseError::MalformedTerm { .. })
        ));
    }
}
