//! Named checker descriptors: what each identity samples, which regimes it
//! admits, its default parameter sweep, and how to evaluate it at a point.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::*;
use crate::bracket::BracketFunction;
use crate::error::{Error, Result};
use crate::linalg::{check_desnanot_jacobi, SkewMatrix};
use crate::scalar::{Complex, Exact, Scalar};
use crate::symfunc::check_bidet_relation;

/// Scalar regime of a run: exact rationals with the rational bracket, or
/// complex doubles with the trigonometric or elliptic bracket.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Rational,
    Trig,
    Elliptic,
}

impl Regime {
    pub const ALL: [Regime; 3] = [Regime::Rational, Regime::Trig, Regime::Elliptic];

    pub fn name(self) -> &'static str {
        match self {
            Regime::Rational => "rational",
            Regime::Trig => "trig",
            Regime::Elliptic => "elliptic",
        }
    }

    pub fn is_exact(self) -> bool {
        self == Regime::Rational
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Regime::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown regime {s:?} (expected rational, trig or elliptic)")))
    }
}

/// Integer parameters of one configuration; unused ones stay `None`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mprime: Option<usize>,
}

macro_rules! params_fields {
    ($mac:ident) => {
        $mac!(n, k, l, p, q, r, s, m, mprime)
    };
}

impl Params {
    pub fn n(n: usize) -> Self {
        Self { n: Some(n), ..Self::default() }
    }

    fn get(&self, field: Option<usize>, name: &str) -> Result<usize> {
        field.ok_or_else(|| Error::Config(format!("missing parameter {name}")))
    }

    /// Replaces every field that is set in `other`.
    pub fn overridden_by(mut self, other: &Params) -> Self {
        macro_rules! apply {
            ($($f:ident),*) => { $( if other.$f.is_some() { self.$f = other.$f; } )* };
        }
        params_fields!(apply);
        self
    }

    pub fn is_empty(&self) -> bool {
        *self == Params::default()
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        macro_rules! collect {
            ($($f:ident),*) => { $( if let Some(v) = self.$f { parts.push(format!("{}={v}", stringify!($f))); } )* };
        }
        params_fields!(collect);
        if parts.is_empty() {
            f.write_str("-")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

/// What a checker samples: named vectors with lengths, named scalars, and
/// groups of vectors whose combined coordinates must be pairwise distinct.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Schema {
    pub vectors: Vec<(&'static str, usize)>,
    pub scalars: Vec<&'static str>,
    pub distinct: Vec<Vec<&'static str>>,
}

impl Schema {
    fn new() -> Self {
        Self::default()
    }

    fn vec(mut self, name: &'static str, len: usize) -> Self {
        self.vectors.push((name, len));
        self
    }

    fn scalars(mut self, names: &[&'static str]) -> Self {
        self.scalars.extend_from_slice(names);
        self
    }

    fn distinct(mut self, names: &[&'static str]) -> Self {
        self.distinct.push(names.to_vec());
        self
    }

    pub fn coordinate_count(&self) -> usize {
        self.vectors.iter().map(|(_, l)| l).sum::<usize>() + self.scalars.len()
    }
}

/// Sampled coordinates, keyed by the names of a [`Schema`].
#[derive(Debug, Clone, PartialEq)]
pub struct SamplePoint<S> {
    pub vectors: BTreeMap<&'static str, Vec<S>>,
    pub scalars: BTreeMap<&'static str, S>,
}

impl<S> SamplePoint<S> {
    pub fn v(&self, name: &str) -> &[S] {
        self.vectors.get(name).unwrap_or_else(|| panic!("sample point has no vector {name}"))
    }

    pub fn s(&self, name: &str) -> &S {
        self.scalars.get(name).unwrap_or_else(|| panic!("sample point has no scalar {name}"))
    }
}

pub type ExactRunner =
    fn(&BracketFunction, &Params, &SamplePoint<Exact>, &CheckOptions) -> Result<IdentityEvaluation<Exact>>;
pub type ComplexRunner =
    fn(&BracketFunction, &Params, &SamplePoint<Complex>, &CheckOptions) -> Result<IdentityEvaluation<Complex>>;

/// One registered identity.
#[derive(Clone)]
pub struct IdentityDescriptor {
    pub name: &'static str,
    /// Whether the identity is stated for an arbitrary bracket and so admits
    /// every regime; the others are rational-function identities only.
    pub uses_bracket: bool,
    pub schema: fn(&Params) -> Result<Schema>,
    pub default_configs: fn(Regime) -> Vec<Params>,
    pub exact: ExactRunner,
    pub complex: Option<ComplexRunner>,
}

impl IdentityDescriptor {
    pub fn admits(&self, regime: Regime) -> bool {
        regime.is_exact() || self.complex.is_some()
    }

    pub fn regimes(&self) -> Vec<Regime> {
        Regime::ALL.into_iter().filter(|r| self.admits(*r)).collect()
    }
}

impl fmt::Debug for IdentityDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdentityDescriptor")
            .field("name", &self.name)
            .field("uses_bracket", &self.uses_bracket)
            .finish_non_exhaustive()
    }
}

/// Ordered, immutable collection of descriptors with unique names.
#[derive(Debug, Clone)]
pub struct IdentityRegistry {
    entries: Vec<IdentityDescriptor>,
}

impl IdentityRegistry {
    pub fn new(entries: Vec<IdentityDescriptor>) -> Result<Self> {
        for (i, d) in entries.iter().enumerate() {
            if entries[..i].iter().any(|e| e.name == d.name) {
                return Err(Error::Config(format!("duplicate identity name {}", d.name)));
            }
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[IdentityDescriptor] {
        &self.entries
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|d| d.name).collect()
    }

    pub fn get(&self, name: &str) -> Result<&IdentityDescriptor> {
        self.entries.iter().find(|d| d.name == name).ok_or_else(|| Error::UnknownIdentity {
            name: name.to_string(),
            valid: self.names().join(", "),
        })
    }
}

impl Default for IdentityRegistry {
    fn default() -> Self {
        Self::new(builtin()).expect("builtin names are unique")
    }
}

fn sweep<T: Copy>(values: impl IntoIterator<Item = T>, f: impl Fn(T) -> Params) -> Vec<Params> {
    values.into_iter().map(f).collect()
}

fn n_only(max_exact: usize, max_approx: usize) -> impl Fn(Regime) -> Vec<Params> {
    move |r| sweep(1..=if r.is_exact() { max_exact } else { max_approx }, Params::n)
}

/// Generic runner for identities that take a bracket.
macro_rules! bracketed {
    ($name:ident, |$f:ident, $p:ident, $pt:ident, $o:ident| $body:expr) => {
        fn $name<S: Scalar>(
            $f: &BracketFunction,
            $p: &Params,
            $pt: &SamplePoint<S>,
            $o: &CheckOptions,
        ) -> Result<IdentityEvaluation<S>>
        where
            BracketFunction: Bracket<S>,
        {
            let _ = $p;
            $body
        }
    };
}

/// Generic runner for bracket-free identities.
macro_rules! plain {
    ($name:ident, |$p:ident, $pt:ident, $o:ident| $body:expr) => {
        fn $name<S: Scalar>(
            _: &BracketFunction,
            $p: &Params,
            $pt: &SamplePoint<S>,
            $o: &CheckOptions,
        ) -> Result<IdentityEvaluation<S>> {
            let _ = $p;
            $body
        }
    };
}

bracketed!(run_riemann, |f, p, pt, o| check_riemann(f, pt.s("x"), pt.s("y"), pt.s("u"), pt.s("v"), o));
bracketed!(run_frobenius, |f, p, pt, o| check_frobenius(f, pt.v("x"), pt.v("y"), pt.s("z"), o));
bracketed!(run_main, |f, p, pt, o| check_main(f, pt.v("x"), pt.s("z"), pt.s("w"), o));
bracketed!(run_key, |f, p, pt, o| {
    let g = |n| pt.s(n);
    check_key_identity(f, g("a"), g("b"), g("c"), g("d"), g("s"), g("z"), g("w"), o)
});

plain!(run_cauchy, |p, pt, o| check_cauchy(pt.v("x"), pt.v("y"), o));
plain!(run_schur_pfaffian, |p, pt, o| check_schur_pfaffian(pt.v("x"), o));
plain!(run_desnanot, |p, pt, o| {
    let dim = 2 * p.get(p.n, "n")?;
    let e = pt.v("entries");
    let mut it = e.iter();
    let a = SkewMatrix::from_upper(dim, |_, _| it.next().expect("entry count matches schema").clone());
    check_desnanot_jacobi(&a, &o.tol)
});
plain!(run_rational_schur_det, |p, pt, o| {
    check_rational_schur_det(p.get(p.k, "k")?, pt.v("x"), pt.v("y"), pt.v("z"), o)
});
plain!(run_rational_schur_pf, |p, pt, o| {
    check_rational_schur_pf(p.get(p.k, "k")?, p.get(p.l, "l")?, pt.v("x"), pt.v("z"), pt.v("w"), o)
});
plain!(run_general_det, |p, pt, o| {
    let v = |n| pt.v(n);
    check_general_det(p.get(p.p, "p")?, p.get(p.q, "q")?, v("x"), v("y"), v("a"), v("b"), v("z"), v("c"), o)
});
plain!(run_general_pf, |p, pt, o| {
    let v = |n| pt.v(n);
    let pqrs = (p.get(p.p, "p")?, p.get(p.q, "q")?, p.get(p.r, "r")?, p.get(p.s, "s")?);
    check_general_pf(pqrs, v("x"), v("a"), v("b"), v("z"), v("c"), v("w"), v("d"), o)
});
plain!(run_specialization, |p, pt, o| {
    check_specialization_consistency(p.get(p.k, "k")?, p.get(p.m, "m")?, pt.v("x"), pt.v("y"), pt.v("z"), o)
});
plain!(run_bidet, |p, pt, o| check_bidet_relation(p.get(p.p, "p")?, p.get(p.q, "q")?, pt.v("x"), &o.tol));
plain!(run_trig_det, |p, pt, o| check_trig_det(pt.v("x"), pt.v("y"), pt.s("z"), o));
plain!(run_trig_pf, |p, pt, o| check_trig_pf(pt.v("x"), pt.s("z"), pt.s("w"), o));
plain!(run_okada_det, |p, pt, o| check_okada_det(pt.v("x"), pt.v("y"), pt.v("a"), pt.v("b"), o));
plain!(run_okada_pf, |p, pt, o| check_okada_pf(pt.v("x"), pt.v("a"), pt.v("b"), o));
plain!(run_det1, |p, pt, o| check_det1(pt.v("x"), pt.v("y"), pt.s("t"), o));
plain!(run_det2, |p, pt, o| check_det2(pt.v("x"), pt.s("t"), o));

fn need_le(a: usize, an: &str, b: usize, bn: &str) -> Result<()> {
    if a > b {
        return Err(Error::Config(format!("need {an} <= {bn}, got {an}={a}, {bn}={b}")));
    }
    Ok(())
}

fn positive_n(p: &Params) -> Result<usize> {
    let n = p.get(p.n, "n")?;
    if n == 0 {
        return Err(Error::Config("n must be positive".into()));
    }
    Ok(n)
}

fn builtin() -> Vec<IdentityDescriptor> {
    fn bracket_desc(
        name: &'static str,
        schema: fn(&Params) -> Result<Schema>,
        default_configs: fn(Regime) -> Vec<Params>,
        exact: ExactRunner,
        complex: ComplexRunner,
    ) -> IdentityDescriptor {
        IdentityDescriptor { name, uses_bracket: true, schema, default_configs, exact, complex: Some(complex) }
    }
    fn plain_desc(
        name: &'static str,
        schema: fn(&Params) -> Result<Schema>,
        default_configs: fn(Regime) -> Vec<Params>,
        exact: ExactRunner,
    ) -> IdentityDescriptor {
        IdentityDescriptor { name, uses_bracket: false, schema, default_configs, exact, complex: None }
    }

    vec![
        bracket_desc(
            "riemann",
            |_| Ok(Schema::new().scalars(&["x", "y", "u", "v"])),
            |_| vec![Params::default()],
            run_riemann::<Exact>,
            run_riemann::<Complex>,
        ),
        bracket_desc(
            "frobenius",
            |p| {
                let n = positive_n(p)?;
                Ok(Schema::new().vec("x", n).vec("y", n).scalars(&["z"]))
            },
            |r| n_only(3, 2)(r),
            run_frobenius::<Exact>,
            run_frobenius::<Complex>,
        ),
        bracket_desc(
            "main",
            |p| Ok(Schema::new().vec("x", 2 * positive_n(p)?).scalars(&["z", "w"])),
            |r| n_only(2, 2)(r),
            run_main::<Exact>,
            run_main::<Complex>,
        ),
        bracket_desc(
            "key_identity",
            |_| Ok(Schema::new().scalars(&["a", "b", "c", "d", "s", "z", "w"])),
            |_| vec![Params::default()],
            run_key::<Exact>,
            run_key::<Complex>,
        ),
        plain_desc(
            "cauchy",
            |p| {
                let n = positive_n(p)?;
                Ok(Schema::new().vec("x", n).vec("y", n))
            },
            |r| n_only(3, 3)(r),
            run_cauchy::<Exact>,
        ),
        plain_desc(
            "schur_pfaffian",
            |p| Ok(Schema::new().vec("x", 2 * positive_n(p)?)),
            |r| n_only(3, 3)(r),
            run_schur_pfaffian::<Exact>,
        ),
        plain_desc(
            "desnanot_jacobi",
            |p| {
                let n = p.get(p.n, "n")?;
                if n < 2 {
                    return Err(Error::Config("desnanot_jacobi needs n >= 2 (matrix size 2n)".into()));
                }
                let dim = 2 * n;
                Ok(Schema::new().vec("entries", dim * (dim - 1) / 2))
            },
            |_| sweep(2..=4, Params::n),
            run_desnanot::<Exact>,
        ),
        plain_desc(
            "rational_schur_det",
            |p| {
                let (n, k, m) = (positive_n(p)?, p.get(p.k, "k")?, p.get(p.m, "m")?);
                need_le(k, "k", m, "m")?;
                Ok(Schema::new().vec("x", n).vec("y", n).vec("z", m).distinct(&["x", "y", "z"]))
            },
            |_| {
                let mut out = Vec::new();
                for n in 1..=2 {
                    for k in 0..=3 {
                        for m in k..=4 {
                            out.push(Params { n: Some(n), k: Some(k), m: Some(m), ..Params::default() });
                        }
                    }
                }
                out
            },
            run_rational_schur_det::<Exact>,
        ),
        plain_desc(
            "rational_schur_pf",
            |p| {
                let n = positive_n(p)?;
                let (k, l, m, mp) = (p.get(p.k, "k")?, p.get(p.l, "l")?, p.get(p.m, "m")?, p.get(p.mprime, "mprime")?);
                need_le(k, "k", m, "m")?;
                need_le(l, "l", mp, "mprime")?;
                Ok(Schema::new()
                    .vec("x", 2 * n)
                    .vec("z", m)
                    .vec("w", mp)
                    .distinct(&["x", "z"])
                    .distinct(&["x", "w"]))
            },
            |_| {
                let mut out = Vec::new();
                for n in 1..=2 {
                    for k in 0..=2 {
                        for l in 0..=2 {
                            for m in k..=3 {
                                for mprime in l..=3 {
                                    out.push(Params {
                                        n: Some(n),
                                        k: Some(k),
                                        l: Some(l),
                                        m: Some(m),
                                        mprime: Some(mprime),
                                        ..Params::default()
                                    });
                                }
                            }
                        }
                    }
                }
                out
            },
            run_rational_schur_pf::<Exact>,
        ),
        plain_desc(
            "general_det",
            |p| {
                let (n, pq) = (positive_n(p)?, p.get(p.p, "p")? + p.get(p.q, "q")?);
                Ok(Schema::new()
                    .vec("x", n)
                    .vec("y", n)
                    .vec("a", n)
                    .vec("b", n)
                    .vec("z", pq)
                    .vec("c", pq)
                    .distinct(&["x", "y", "z"]))
            },
            |_| {
                let mut out = Vec::new();
                for n in 1..=2 {
                    for p in 0..=2 {
                        for q in 0..=2 {
                            out.push(Params { n: Some(n), p: Some(p), q: Some(q), ..Params::default() });
                        }
                    }
                }
                out
            },
            run_general_det::<Exact>,
        ),
        plain_desc(
            "general_pf",
            |p| {
                let n = positive_n(p)?;
                let pq = p.get(p.p, "p")? + p.get(p.q, "q")?;
                let rs = p.get(p.r, "r")? + p.get(p.s, "s")?;
                Ok(Schema::new()
                    .vec("x", 2 * n)
                    .vec("a", 2 * n)
                    .vec("b", 2 * n)
                    .vec("z", pq)
                    .vec("c", pq)
                    .vec("w", rs)
                    .vec("d", rs)
                    .distinct(&["x", "z"])
                    .distinct(&["x", "w"]))
            },
            |_| {
                let mut out = Vec::new();
                for n in 1..=2 {
                    for bits in 0..16usize {
                        let b = |i: usize| Some((bits >> i) & 1);
                        out.push(Params { n: Some(n), p: b(0), q: b(1), r: b(2), s: b(3), ..Params::default() });
                    }
                }
                out
            },
            run_general_pf::<Exact>,
        ),
        plain_desc(
            "specialization_consistency",
            |p| {
                let (n, k, m) = (positive_n(p)?, p.get(p.k, "k")?, p.get(p.m, "m")?);
                need_le(k, "k", m, "m")?;
                Ok(Schema::new().vec("x", n).vec("y", n).vec("z", m).distinct(&["x", "y", "z"]))
            },
            |_| {
                let mut out = Vec::new();
                for n in 1..=2 {
                    for k in 0..=2 {
                        for m in k..=3 {
                            out.push(Params { n: Some(n), k: Some(k), m: Some(m), ..Params::default() });
                        }
                    }
                }
                out
            },
            run_specialization::<Exact>,
        ),
        plain_desc(
            "bidet_relation",
            |p| Ok(Schema::new().vec("x", p.get(p.p, "p")? + p.get(p.q, "q")?).distinct(&["x"])),
            |_| {
                let mut out = Vec::new();
                for total in 0..=5 {
                    for p in 0..=total {
                        out.push(Params { p: Some(p), q: Some(total - p), ..Params::default() });
                    }
                }
                out
            },
            run_bidet::<Exact>,
        ),
        plain_desc(
            "trig_det",
            |p| {
                let n = positive_n(p)?;
                Ok(Schema::new().vec("x", n).vec("y", n).scalars(&["z"]))
            },
            |r| n_only(2, 2)(r),
            run_trig_det::<Exact>,
        ),
        plain_desc(
            "trig_pf",
            |p| Ok(Schema::new().vec("x", 2 * positive_n(p)?).scalars(&["z", "w"])),
            |r| n_only(2, 2)(r),
            run_trig_pf::<Exact>,
        ),
        plain_desc(
            "okada_det",
            |p| {
                let n = positive_n(p)?;
                Ok(Schema::new().vec("x", n).vec("y", n).vec("a", n).vec("b", n))
            },
            |r| n_only(2, 2)(r),
            run_okada_det::<Exact>,
        ),
        plain_desc(
            "okada_pf",
            |p| {
                let n = 2 * positive_n(p)?;
                Ok(Schema::new().vec("x", n).vec("a", n).vec("b", n).distinct(&["x"]))
            },
            |r| n_only(2, 2)(r),
            run_okada_pf::<Exact>,
        ),
        plain_desc(
            "det1",
            |p| {
                let n = positive_n(p)?;
                Ok(Schema::new().vec("x", n).vec("y", n).scalars(&["t"]))
            },
            |r| n_only(3, 3)(r),
            run_det1::<Exact>,
        ),
        plain_desc(
            "det2",
            |p| Ok(Schema::new().vec("x", positive_n(p)?).scalars(&["t"])),
            |r| n_only(5, 5)(r),
            run_det2::<Exact>,
        ),
    ]
}
