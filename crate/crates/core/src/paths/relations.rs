use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::generators::{Algebra, Generator, TlKind};
use super::operator::SparseOperator;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// An entry of `lhs - rhs` that should have vanished.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub row: String,
    pub col: String,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub equation: String,
    pub relation: String,
    pub indices: BTreeMap<String, i64>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, Default, Serialize)]
#[serde(transparent)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    /// Checks whose equation label is `equation`.
    pub fn equation<'a>(&'a self, equation: &'a str) -> impl Iterator<Item = &'a Check> + 'a {
        self.checks.iter().filter(move |c| c.equation == equation)
    }
}

/// A factor in a product: a generator, its adjoint, or `E_n`/`F_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Sym {
    Gen(Generator, bool),
    Tl(TlKind),
    /// `1 - x_n` for a diagonal generator.
    CoGen(Generator),
}

#[derive(Clone, Copy, Debug)]
struct Term(Sym, i64);

fn gen(g: Generator, n: i64) -> Term {
    Term(Sym::Gen(g, false), n)
}

fn adj(g: Generator, n: i64) -> Term {
    Term(Sym::Gen(g, true), n)
}

fn co(g: Generator, n: i64) -> Term {
    Term(Sym::CoGen(g), n)
}

fn tl(k: TlKind, n: i64) -> Term {
    Term(Sym::Tl(k), n)
}

fn name(t: &Term) -> String {
    let Term(s, n) = *t;
    match s {
        Sym::Gen(g, false) => format!("{g}_{n}"),
        Sym::Gen(g, true) => format!("{g}_{n}*"),
        Sym::CoGen(g) => format!("(1-{g}_{n})"),
        Sym::Tl(TlKind::E) => format!("E_{n}"),
        Sym::Tl(TlKind::F) => format!("F_{n}"),
    }
}

fn word(terms: &[Term]) -> String {
    terms.iter().map(name).collect::<Vec<_>>().join(" ")
}

/// Evaluates products of generators with memoised factors and records the
/// outcome of each identity.
struct Checker<'a> {
    alg: &'a Algebra,
    cache: HashMap<(Sym, i64), Option<SparseOperator>>,
    report: Report,
}

impl<'a> Checker<'a> {
    fn new(alg: &'a Algebra) -> Self {
        Checker { alg, cache: HashMap::new(), report: Report::default() }
    }

    fn factor(&mut self, t: &Term) -> Option<SparseOperator> {
        let Term(s, n) = *t;
        if let Some(x) = self.cache.get(&(s, n)) {
            return x.clone();
        }
        let x = match s {
            Sym::Gen(g, star) => self.alg.get(g, n).map(|x| if star { x.adjoint() } else { x.clone() }),
            Sym::CoGen(g) => self.alg.get(g, n).map(|x| self.alg.identity().sub(x)),
            Sym::Tl(k) => self.alg.tl_projection(k, n).ok(),
        };
        self.cache.insert((s, n), x.clone());
        x
    }

    /// `None` when some factor is not realised at this floor.
    fn product(&mut self, terms: &[Term]) -> Option<SparseOperator> {
        let ops = terms.iter().map(|t| self.factor(t)).collect::<Option<Vec<_>>>()?;
        let refs: Vec<&SparseOperator> = ops.iter().collect();
        Some(SparseOperator::product(&refs))
    }

    fn record(&mut self, equation: &str, relation: String, indices: &[(&str, i64)], diff: Option<&SparseOperator>) {
        let witness = diff.and_then(|d| d.first_entry()).map(|e| {
            let s = self.alg.space();
            Witness { row: s.path(e.row).to_string(), col: s.path(e.col).to_string(), value: e.value.to_string() }
        });
        let status = if witness.is_some() { Status::Fail } else { Status::Pass };
        self.record_status(equation, relation, indices, status, witness);
    }

    fn record_status(
        &mut self,
        equation: &str,
        relation: String,
        indices: &[(&str, i64)],
        status: Status,
        witness: Option<Witness>,
    ) {
        self.report.checks.push(Check {
            equation: equation.to_string(),
            relation,
            indices: indices.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            status,
            witness,
        });
    }

    /// `lhs = c * rhs`, with an empty `rhs` meaning zero. Skipped when a
    /// factor is undefined.
    fn equal(&mut self, equation: &str, idx: &[(&str, i64)], lhs: &[Term], c: &BigRational, rhs: &[Term]) {
        let Some(l) = self.product(lhs) else { return };
        let (r, rhs_text) = if rhs.is_empty() {
            (None, "0".to_string())
        } else {
            let Some(r) = self.product(rhs) else { return };
            let text = if c.is_one() { word(rhs) } else { format!("{c} {}", word(rhs)) };
            (Some(r.scale_rational(c)), text)
        };
        let diff = match &r {
            Some(r) => l.sub(r),
            None => l,
        };
        self.record(equation, format!("{} = {rhs_text}", word(lhs)), idx, Some(&diff));
    }

    fn vanishes(&mut self, equation: &str, idx: &[(&str, i64)], lhs: &[Term]) {
        self.equal(equation, idx, lhs, &BigRational::one(), &[]);
    }

    fn same(&mut self, equation: &str, idx: &[(&str, i64)], lhs: &[Term], rhs: &[Term]) {
        self.equal(equation, idx, lhs, &BigRational::one(), rhs);
    }

    fn nonzero(&mut self, equation: &str, idx: &[(&str, i64)], lhs: &[Term]) {
        let Some(l) = self.product(lhs) else { return };
        let status = if l.is_zero() { Status::Fail } else { Status::Pass };
        self.record_status(equation, format!("{} != 0", word(lhs)), idx, status, None);
    }

    fn commute(&mut self, equation: &str, idx: &[(&str, i64)], a: Term, b: Term) {
        let (Some(x), Some(y)) = (self.factor(&a), self.factor(&b)) else { return };
        let diff = x.commutator(&y);
        self.record(equation, format!("[{}, {}] = 0", name(&a), name(&b)), idx, Some(&diff));
    }

    fn projection(&mut self, equation: &str, idx: &[(&str, i64)], terms: &[Term]) {
        let Some(p) = self.product(terms) else { return };
        let sq = p.mul(&p).sub(&p);
        let adj = p.adjoint().sub(&p);
        let diff = if sq.is_zero() { adj } else { sq };
        self.record(equation, format!("{} is a projection", word(terms)), idx, Some(&diff));
    }
}

fn require_floor(alg: &Algebra, min: u32) -> Result<()> {
    if alg.floor() < min {
        return Err(Error::Domain(format!("suite needs floor >= {min}, got {}", alg.floor())));
    }
    Ok(())
}

use Generator::{E, F, G, V, W};

/// Relations among `e, f, g, v, w`: projections and supports, the vanishing
/// products, the four nonzero adjacent products, locality and the braid
/// relations. Needs floor at least 4.
pub fn relation_suite(alg: &Algebra) -> Result<Report> {
    require_floor(alg, 4)?;
    let top = alg.floor() as i64;
    let mut c = Checker::new(alg);

    // edge projections
    for n in 0..=top {
        let idx = [("n", n)];
        for g in [E, F, G] {
            c.projection("R1", &idx, &[gen(g, n)]);
        }
        let sum = [E, F, G].iter().filter_map(|&g| alg.get(g, n)).fold(alg.zero(), |a, b| a.add(b));
        let diff = sum.sub(&alg.identity());
        c.record("R1", format!("e_{n} + f_{n} + g_{n} = 1"), &idx, Some(&diff));
    }
    let diagonal: Vec<Term> =
        [E, F, G].iter().flat_map(|&g| g.range(alg.floor()).map(move |n| gen(g, n))).collect();
    for (i, a) in diagonal.iter().enumerate() {
        for b in &diagonal[i + 1..] {
            c.commute("R1", &[("i", a.1), ("j", b.1)], *a, *b);
        }
    }

    for n in 0..top {
        let idx = [("n", n)];
        // ranges and supports of the flips
        c.vanishes("R2", &idx, &[co(F, n), gen(V, n)]);
        c.vanishes("R2", &idx, &[co(E, n + 1), gen(V, n)]);
        c.vanishes("R2", &idx, &[gen(V, n), co(G, n)]);
        c.vanishes("R2", &idx, &[gen(V, n), co(F, n + 1)]);
        c.vanishes("R2", &idx, &[co(E, n), gen(W, n)]);
        c.vanishes("R2", &idx, &[co(F, n + 1), gen(W, n)]);
        c.vanishes("R2", &idx, &[gen(W, n), co(G, n)]);
        c.vanishes("R2", &idx, &[gen(W, n), co(E, n + 1)]);
        // intertwining
        c.same("R3", &idx, &[gen(V, n), gen(G, n)], &[gen(F, n), gen(V, n)]);
        c.same("R3", &idx, &[gen(V, n), gen(F, n + 1)], &[gen(E, n + 1), gen(V, n)]);
        c.same("R3", &idx, &[gen(W, n), gen(G, n)], &[gen(E, n), gen(W, n)]);
        c.same("R3", &idx, &[gen(W, n), gen(E, n + 1)], &[gen(F, n + 1), gen(W, n)]);
        // source and range projections
        c.same("R4", &idx, &[adj(V, n), gen(V, n)], &[gen(G, n), gen(F, n + 1)]);
        c.same("R4", &idx, &[gen(V, n), adj(V, n)], &[gen(F, n), gen(E, n + 1)]);
        c.same("R4", &idx, &[adj(W, n), gen(W, n)], &[gen(G, n), gen(E, n + 1)]);
        c.same("R4", &idx, &[gen(W, n), adj(W, n)], &[gen(E, n), gen(F, n + 1)]);
    }

    for n in 0..top {
        let idx = [("n", n)];
        for x in [V, W] {
            c.vanishes("6.1", &idx, &[gen(x, n + 1), gen(x, n)]);
            c.vanishes("6.1", &idx, &[gen(x, n), gen(x, n)]);
            for m in [n - 1, n + 1] {
                c.vanishes("6.1", &idx, &[gen(x, m), adj(x, n)]);
                c.vanishes("6.1", &idx, &[adj(x, m), gen(x, n)]);
            }
        }
        c.vanishes("6.1", &idx, &[gen(V, n), gen(W, n)]);
        c.vanishes("6.1", &idx, &[gen(W, n), gen(V, n)]);
        c.vanishes("6.1", &idx, &[gen(V, n), adj(W, n)]);
        c.vanishes("6.1", &idx, &[adj(V, n), gen(W, n)]);
        c.vanishes("6.1", &idx, &[adj(V, n), gen(W, n - 1)]);
        for m in [n - 1, n + 1] {
            c.vanishes("6.1", &idx, &[gen(V, m), gen(W, n)]);
            c.vanishes("6.1", &idx, &[gen(W, m), gen(V, n)]);
            c.vanishes("6.1", &idx, &[gen(V, m), adj(W, n)]);
        }
    }

    // Among a in {v_n, v_n*, w_n, w_n*} and b in the same at n+1 only four
    // products ab survive.
    for n in 0..top - 1 {
        let idx = [("n", n)];
        let left = [gen(V, n), adj(V, n), gen(W, n), adj(W, n)];
        let right = [gen(V, n + 1), adj(V, n + 1), gen(W, n + 1), adj(W, n + 1)];
        for a in left {
            for b in right {
                let survives = matches!(
                    (a.0, b.0),
                    (Sym::Gen(V, false), Sym::Gen(V, false))
                        | (Sym::Gen(W, false), Sym::Gen(W, false))
                        | (Sym::Gen(W, true), Sym::Gen(V, false))
                        | (Sym::Gen(V, true), Sym::Gen(W, false))
                );
                if survives {
                    c.nonzero("6.1-nonzero", &idx, &[a, b]);
                } else {
                    c.vanishes("6.1-nonzero", &idx, &[a, b]);
                }
            }
        }
    }

    for s in 0..top {
        for x in [V, W] {
            for r in 0..=top {
                if r < s || r >= s + 2 {
                    for y in [E, F, G] {
                        c.commute("locality", &[("s", s), ("r", r)], gen(x, s), gen(y, r));
                    }
                }
                if (r - s).abs() >= 2 {
                    for y in [V, W] {
                        c.commute("locality", &[("s", s), ("r", r)], gen(x, s), gen(y, r));
                        c.commute("locality", &[("s", s), ("r", r)], gen(x, s), adj(y, r));
                    }
                }
            }
        }
    }

    for n in 0..top {
        let idx = [("n", n)];
        c.vanishes("6.3", &idx, &[gen(V, n), gen(V, n)]);
        c.vanishes("6.3", &idx, &[gen(V, n), gen(V, n + 1), gen(V, n)]);
        c.vanishes("6.3", &idx, &[gen(V, n), gen(V, n - 1), gen(V, n)]);
        for x in [V, W] {
            c.same("braid", &idx, &[gen(x, n), gen(x, n + 1), gen(x, n)], &[gen(x, n + 1), gen(x, n), gen(x, n + 1)]);
        }
    }
    Ok(c.report)
}

/// `R_n(a) R_{n+1}(a+b) R_n(b) = R_{n+1}(b) R_n(a+b) R_{n+1}(a)` with
/// `R_n(t) = 1 + t v_n`, for every `n` that fits and every `(a, b)` in
/// `grid x grid`.
///
/// Both sides are polynomials in `(a, b)` of degree at most 2 in each
/// variable, so agreement on a grid of three distinct values per axis
/// forces agreement everywhere (tensor Lagrange interpolation). With
/// `grid = {0, 1, 2}` the check is a proof at this floor.
pub fn yang_baxter(alg: &Algebra, grid: &[BigRational]) -> Result<Report> {
    require_floor(alg, 2)?;
    let mut c = Checker::new(alg);
    let id = alg.identity();
    for n in 0..alg.floor() as i64 - 1 {
        let v0 = alg.generator(V, n)?;
        let v1 = alg.generator(V, n + 1)?;
        let r = |v: &SparseOperator, t: &BigRational| id.add(&v.scale_rational(t));
        for a in grid {
            for b in grid {
                let ab = a + b;
                let lhs = SparseOperator::product(&[&r(v0, a), &r(v1, &ab), &r(v0, b)]);
                let rhs = SparseOperator::product(&[&r(v1, b), &r(v0, &ab), &r(v1, a)]);
                let diff = lhs.sub(&rhs);
                let text = format!("R_{n}({a}) R_{}({ab}) R_{n}({b}) = R_{}({b}) R_{n}({ab}) R_{}({a})", n + 1, n + 1, n + 1);
                c.record("6.4", text, &[("n", n)], Some(&diff));
            }
        }
    }
    Ok(c.report)
}

/// The grid `{0, 1, 2}`.
pub fn default_grid() -> Vec<BigRational> {
    (0..3).map(|k| BigRational::from_integer(k.into())).collect()
}

/// Identities for the projections `E_n` and `F_n`: idempotence,
/// orthogonality, far commutation, the triple products with their `tau`
/// multiples, the vanishing mixed products, and the bound
/// `E_n E_{n+-1} E_n <= tau E_n` proved through an exact projection.
pub fn braiding_suite(alg: &Algebra) -> Result<Report> {
    require_floor(alg, 4)?;
    let top = alg.floor() as i64;
    let tau = alg.tau();
    let lt = alg.lambda() * &tau;
    let mut c = Checker::new(alg);
    let (ee, ff) = (TlKind::E, TlKind::F);

    for n in 0..top {
        let idx = [("n", n)];
        c.projection("6.5", &idx, &[tl(ee, n)]);
        c.projection("6.6", &idx, &[tl(ff, n)]);
        c.vanishes("6.7", &idx, &[tl(ee, n), tl(ff, n)]);
        c.vanishes("6.7", &idx, &[tl(ff, n), tl(ee, n)]);
    }
    for n in 0..top {
        for m in 0..top {
            if (n - m).abs() < 2 {
                continue;
            }
            let idx = [("n", n), ("m", m)];
            if n < m {
                c.commute("6.8", &idx, tl(ee, n), tl(ee, m));
                c.commute("6.8", &idx, tl(ff, n), tl(ff, m));
            }
            c.commute("6.8", &idx, tl(ee, n), tl(ff, m));
        }
    }
    for n in 0..top - 1 {
        let idx = [("n", n)];
        let (e0, e1, f0, f1) = (tl(ee, n), tl(ee, n + 1), tl(ff, n), tl(ff, n + 1));
        c.equal("6.9", &idx, &[e0, e1, e0], &tau, &[e0, gen(E, n + 2)]);
        c.equal("6.9", &idx, &[e1, e0, e1], &tau, &[e1, gen(G, n)]);
        c.equal("6.10", &idx, &[f0, f1, f0], &tau, &[f0, gen(F, n + 2)]);
        c.equal("6.10", &idx, &[f1, f0, f1], &tau, &[f1, gen(G, n)]);
        c.equal("6.11", &idx, &[e0, f1, e0], &lt, &[e0, gen(F, n + 2)]);
        c.equal("6.11", &idx, &[f0, e1, f0], &lt, &[f0, gen(E, n + 2)]);
        c.equal("6.12", &idx, &[e1, f0, e1], &lt, &[e1, gen(E, n)]);
        c.equal("6.12", &idx, &[f1, e0, f1], &lt, &[f1, gen(F, n)]);
        for w in [[e0, e1, f0], [e0, f1, f0], [e1, e0, f1], [e1, f0, f1]] {
            c.vanishes("6.13", &idx, &w);
        }
        for w in [[f0, e1, e0], [f0, f1, e0], [f1, e0, e1], [f1, f0, e1]] {
            c.vanishes("6.14", &idx, &w);
        }
        // tau E - E E' E = tau P with P an exact projection, hence >= 0
        for (x, y, cut) in [(e0, e1, co(E, n + 2)), (e1, e0, co(G, n)), (f0, f1, co(F, n + 2)), (f1, f0, co(G, n))] {
            c.projection("dominance", &idx, &[x, cut]);
            let (Some(p), Some(xyx), Some(px)) = (c.product(&[x, cut]), c.product(&[x, y, x]), c.factor(&x)) else {
                continue;
            };
            let diff = px.scale_rational(&tau).sub(&xyx).sub(&p.scale_rational(&tau));
            let text = format!("{tau} {} - {} = {tau} {}", name(&x), word(&[x, y, x]), word(&[x, cut]));
            c.record("dominance", text, &idx, Some(&diff));
        }
    }
    Ok(c.report)
}

/// Which suites to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Base,
    YangBaxter,
    Braiding,
    All,
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "base" => Ok(Suite::Base),
            "yb" => Ok(Suite::YangBaxter),
            "braiding" => Ok(Suite::Braiding),
            "all" => Ok(Suite::All),
            _ => Err(Error::Parse(format!("unknown suite {s:?}"))),
        }
    }
}

pub fn run_suite(alg: &Algebra, suite: Suite) -> Result<Report> {
    let mut report = Report::default();
    if matches!(suite, Suite::Base | Suite::All) {
        report.extend(relation_suite(alg)?);
    }
    if matches!(suite, Suite::YangBaxter | Suite::All) {
        report.extend(yang_baxter(alg, &default_grid())?);
    }
    if matches!(suite, Suite::Braiding | Suite::All) {
        report.extend(braiding_suite(alg)?);
    }
    Ok(report)
}
