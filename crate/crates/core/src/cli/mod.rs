//! The `primctl` command line: one computation per invocation, reported in
//! four sections (INPUT, HYPOTHESES, RESULT, CHECKS).
//!
//! Exit codes: 0 success, 1 hypothesis or check failure, 2 parse or usage error.

mod report;

pub use report::{Report, Value, SECTIONS};

use std::ffi::OsString;

use clap::{Parser, Subcommand, ValueEnum};

use crate::conormal::{
    conormal, is_locally_free, lambda_tilde, line_normalize, main_theorem_check, omega_line,
    torsion_number, Freeness, UniPoly,
};
use crate::deriv::{check_jacobian_condition, log_derivations, Derivation};
use crate::gb::{FreeModuleElement, Ideal, Length, ModulePresentation};
use crate::parse::{parse_session, Session};
use crate::polyring::{MonomialOrder, Polynomial, RingContext};
use crate::primitive::{primitive_ideal, verify_lemma_properties};
use crate::Error;

const ASSERTED: [&str; 2] = ["g unmixed", "g radical"];

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OrderArg {
    Degrevlex,
    Lex,
}

#[derive(Debug, Parser)]
#[command(
    name = "primctl",
    version,
    about = "Primitive ideals and conormal torsion over the rationals"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Debug, clap::Args)]
struct Common {
    /// Session file; standard input when absent.
    #[arg(long)]
    file: Option<String>,
    /// Monomial order for printed results.
    #[arg(long, value_enum, default_value = "degrevlex")]
    order: OrderArg,
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, clap::Args)]
struct Pair {
    /// Name of the smaller ideal h.
    #[arg(long)]
    h: String,
    /// Name of the ideal g containing h.
    #[arg(long)]
    g: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Subcommand)]
enum Verb {
    /// Primitive ideal of g relative to h.
    Primitive(Pair),
    /// Second symbolic power of g/h in O/h.
    SymbolicPower(Pair),
    /// Generators of the logarithmic derivations of h.
    Derivations {
        #[arg(long)]
        h: String,
        #[command(flatten)]
        common: Common,
    },
    /// Presentations of the conormal module, its torsion part and N.
    Torsion(Pair),
    /// Torsion number with the determinant cross-check.
    TorsionNumber(Pair),
    /// Local freeness of N via Fitting ideals.
    FreeCheck(Pair),
    /// Compare the primitive ideal with a split of g's generators.
    MainCheck {
        #[command(flatten)]
        pair: Pair,
        /// 1-based generator indices, e.g. "1 / 2" or "1,3 / 2".
        #[arg(long)]
        split: String,
    },
    /// Normal form along a coordinate line.
    LineCase(Pair),
    /// Lambda-tilde along a coordinate line.
    LambdaTilde(Pair),
    /// Smith form of the restricted Jacobian along a coordinate line.
    OmegaLine(Pair),
    /// Containment chain, definitional audit and the intersection identity.
    VerifyProperties {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, requires = "g2")]
        g1: Option<String>,
        #[arg(long, requires = "g1")]
        g2: Option<String>,
    },
}

/// Outcome of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Hypothesis(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::BadSplit(_) => Failure::Usage(e.to_string()),
            _ => Failure::Hypothesis(e.to_string()),
        }
    }
}

struct Ctx {
    session: Session,
    order: MonomialOrder,
}

impl Ctx {
    fn ring(&self) -> &RingContext {
        &self.session.ring
    }

    fn ideal(&self, name: &str) -> Result<Ideal, Failure> {
        self.session
            .get(name)
            .cloned()
            .ok_or_else(|| Failure::Usage(format!("unknown ideal '{name}'")))
    }

    fn poly(&self, f: &Polynomial) -> String {
        f.to_text(self.ring(), self.order)
    }

    fn polys(&self, fs: &[Polynomial]) -> Value {
        Value::List(fs.iter().map(|f| self.poly(f)).collect())
    }

    /// Reduced basis in the chosen order.
    fn basis(&self, i: &Ideal) -> Value {
        self.polys(i.groebner(self.order).polynomials())
    }

    fn vector(&self, v: &FreeModuleElement) -> String {
        let parts: Vec<String> = v.components().iter().map(|f| self.poly(f)).collect();
        format!("({})", parts.join(", "))
    }

    fn relations(&self, m: &ModulePresentation) -> Value {
        Value::List(
            m.relations
                .gb()
                .elements()
                .iter()
                .map(|v| self.vector(v))
                .collect(),
        )
    }

    fn derivations(&self, ders: &[Derivation]) -> Value {
        Value::List(
            ders.iter()
                .map(|d| d.to_text(self.ring(), self.order))
                .collect(),
        )
    }

    fn uni(&self, u: &UniPoly, x: usize) -> String {
        self.poly(&u.to_polynomial(self.ring().nvars(), x))
    }
}

fn length(l: &Length) -> Value {
    match l {
        Length::Finite(n) => Value::Int(*n),
        Length::Infinite => Value::Text("INFINITE".into()),
    }
}

fn order_name(o: MonomialOrder) -> &'static str {
    match o {
        MonomialOrder::Lex => "lex",
        _ => "degrevlex",
    }
}

fn load(common: &Common) -> Result<Ctx, Failure> {
    let text = match &common.file {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read '{path}': {e}")))?,
        None => {
            let mut s = String::new();
            std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)
                .map_err(|e| Failure::Usage(format!("cannot read standard input: {e}")))?;
            s
        }
    };
    let session = parse_session(&text).map_err(|e| Failure::Usage(e.to_string()))?;
    let order = match common.order {
        OrderArg::Degrevlex => MonomialOrder::DegRevLex,
        OrderArg::Lex => MonomialOrder::Lex,
    };
    Ok(Ctx { session, order })
}

fn echo_input(
    ctx: &Ctx,
    report: &mut Report,
    verb: &str,
    names: &[(&str, &str)],
) -> Result<Vec<Ideal>, Failure> {
    report.input("command", Value::Text(verb.into()));
    report.input("ring", Value::Text(ctx.ring().variables().join(", ")));
    report.input("order", Value::Text(order_name(ctx.order).into()));
    let mut out = Vec::new();
    for (role, name) in names {
        let i = ctx.ideal(name)?;
        report.input(role, ctx.polys(i.generators()));
        out.push(i);
    }
    Ok(out)
}

fn jacobian_hypothesis(report: &mut Report, h: &Ideal, g: &Ideal) -> Result<bool, Failure> {
    let ok = check_jacobian_condition(h, g)?;
    report.hypothesis("jacobian_condition", Value::Bool(ok));
    report.hypothesis(
        "asserted_not_checked",
        Value::List(ASSERTED.iter().map(|s| s.to_string()).collect()),
    );
    if !ok {
        return Err(Error::JacobianConditionFailed.into());
    }
    Ok(true)
}

fn contained(report: &mut Report, h: &Ideal, g: &Ideal) -> Result<(), Failure> {
    let ok = g.contains_ideal(h);
    report.hypothesis("h_in_g", Value::Bool(ok));
    if !ok {
        return Err(Error::NotContained("h is not contained in g".into()).into());
    }
    Ok(())
}

/// 1-based `"i,j / k,l"` into 0-based blocks.
fn parse_split(s: &str) -> Result<(Vec<usize>, Vec<usize>), Error> {
    let (a, b) = s
        .split_once('/')
        .ok_or_else(|| Error::BadSplit(format!("expected 'first / second', got '{s}'")))?;
    let block = |part: &str| -> Result<Vec<usize>, Error> {
        part.split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| match t.parse::<usize>() {
                Ok(i) if i >= 1 => Ok(i - 1),
                _ => Err(Error::BadSplit(format!("invalid generator index '{t}'"))),
            })
            .collect()
    };
    Ok((block(a)?, block(b)?))
}

fn execute(verb: &Verb, report: &mut Report) -> Result<(), Failure> {
    match verb {
        Verb::Primitive(a) => {
            let ctx = load(&a.common)?;
            let [h, g] = pair(&ctx, report, "primitive", a)?;
            contained(report, &h, &g)?;
            let r = primitive_ideal(&h, &g)?;
            report.result("integral", ctx.basis(&r.integral));
            report.result("derivations_used", Value::Int(r.derivations.len() as u64));
            report.check("definitional_audit", r.definitional_audit());
            report.check("containment_chain", r.containment_chain());
        }
        Verb::SymbolicPower(a) => {
            let ctx = load(&a.common)?;
            let [h, g] = pair(&ctx, report, "symbolic-power", a)?;
            contained(report, &h, &g)?;
            jacobian_hypothesis(report, &h, &g)?;
            let r = primitive_ideal(&h, &g)?;
            let mut gens: Vec<Polynomial> = Vec::new();
            for f in r.integral.groebner(ctx.order).polynomials() {
                let nf = h.groebner(ctx.order).normal_form(f);
                if !nf.is_zero() && !gens.contains(&nf) {
                    gens.push(nf);
                }
            }
            report.result("symbolic_square_mod_h", ctx.polys(&gens));
            report.check("definitional_audit", r.definitional_audit());
            report.check("containment_chain", r.containment_chain());
        }
        Verb::Derivations { h, common } => {
            let ctx = load(common)?;
            let h = echo_input(&ctx, report, "derivations", &[("h", h)])?.remove(0);
            let ders = log_derivations(&h);
            report.result("derivations", ctx.derivations(&ders));
            let preserve = ders.iter().all(|xi| {
                h.generators()
                    .iter()
                    .all(|f| h.contains(&xi.apply(f).expect("same ring")))
            });
            let nvars = ctx.ring().nvars();
            let trivial = h.generators().iter().all(|hk| {
                (0..nvars).all(|j| {
                    let mut c = vec![Polynomial::zero(nvars); nvars];
                    c[j] = hk.clone();
                    ders.contains(&Derivation::new(c))
                })
            });
            report.check("preserves_h", preserve);
            report.check("contains_trivial_fields", trivial);
        }
        Verb::Torsion(a) => {
            let ctx = load(&a.common)?;
            let [h, g] = pair(&ctx, report, "torsion", a)?;
            contained(report, &h, &g)?;
            jacobian_hypothesis(report, &h, &g)?;
            let data = conormal(&h, &g)?;
            report.result("p", Value::Int(data.p as u64));
            report.result("n", Value::Int(data.n_grade as u64));
            report.result("m_generators", ctx.polys(g.generators()));
            report.result("m_relations", ctx.relations(&data.m));
            report.result("t_generators", ctx.polys(data.t_generators()));
            report.result("t_relations", ctx.relations(&data.t));
            report.result("t_dimension", length(&data.t.vs_dimension()));
            report.result("n_relations", ctx.relations(&data.n));
            report.check("exactness", data.exactness_holds());
            report.check("definitional_audit", data.primitive.definitional_audit());
            report.check("containment_chain", data.primitive.containment_chain());
        }
        Verb::TorsionNumber(a) => {
            let ctx = load(&a.common)?;
            let [h, g] = pair(&ctx, report, "torsion-number", a)?;
            contained(report, &h, &g)?;
            jacobian_hypothesis(report, &h, &g)?;
            let tn = torsion_number(&h, &g)?;
            let b = &tn.b_matrix;
            report.result("torsion_number", length(&tn.value));
            report.result(
                "via_determinant",
                tn.via_determinant
                    .as_ref()
                    .map_or(Value::Text("not applicable".into()), length),
            );
            report.result("normalized_generators", ctx.polys(&b.generators));
            report.result(
                "b_matrix",
                Value::List(
                    (0..b.p)
                        .map(|i| {
                            let row: Vec<String> =
                                (0..b.t).map(|j| ctx.poly(b.b.get(i, j))).collect();
                            format!("({})", row.join(", "))
                        })
                        .collect(),
                ),
            );
            report.result("t", Value::Int(b.t as u64));
            report.result("p", Value::Int(b.p as u64));
            if let Some(d) = &b.det {
                report.result("determinant", Value::Text(ctx.poly(d)));
            }
            report.check("pipelines_agree", tn.pipelines_agree());
            report.check("congruence_mod_g_squared", b.congruence_holds);
            report.check("t_at_least_p", b.t_at_least_p);
            if let Some(ok) = b.torsion_bound_holds() {
                report.check("torsion_generators_at_most_p", ok);
            }
            if let Some(ok) = b.det_nonzero_divisor {
                report.check("determinant_nonzero_divisor", ok);
            }
        }
        Verb::FreeCheck(a) => {
            let ctx = load(&a.common)?;
            let [h, g] = pair(&ctx, report, "free-check", a)?;
            contained(report, &h, &g)?;
            jacobian_hypothesis(report, &h, &g)?;
            let data = conormal(&h, &g)?;
            let r = data.rank_target();
            report.result("rank_target", Value::Int(r as u64));
            match is_locally_free(&data.n, r) {
                Freeness::LocallyFreeOfRank(_) => {
                    report.result("n_locally_free", Value::Bool(true));
                }
                Freeness::NotLocallyFree(w) => {
                    report.result("n_locally_free", Value::Bool(false));
                    report.result("witness", ctx.basis(&w));
                }
            }
            report.result(
                "note",
                Value::Text(
                    "local freeness; equals freeness when O/g is a principal ideal domain".into(),
                ),
            );
            report.check("exactness", data.exactness_holds());
        }
        Verb::MainCheck { pair: a, split } => {
            let ctx = load(&a.common)?;
            let [h, g] = pair(&ctx, report, "main-check", a)?;
            let (first, second) = parse_split(split)?;
            report.input("split", Value::Text(format_split(&first, &second)));
            contained(report, &h, &g)?;
            let mc = main_theorem_check(&h, g.generators(), &first, &second)?;
            report.result("holds", Value::Bool(mc.holds));
            report.result("integral", ctx.basis(&mc.integral));
            report.result("candidate", ctx.basis(&mc.candidate));
            if mc.holds && check_jacobian_condition(&h, &g)? {
                let data = conormal(&h, &g)?;
                report.check(
                    "n_locally_free",
                    is_locally_free(&data.n, data.rank_target()).is_locally_free(),
                );
            }
        }
        Verb::LineCase(a) => {
            let ctx = load(&a.common)?;
            let [h, g] = pair(&ctx, report, "line-case", a)?;
            contained(report, &h, &g)?;
            let line = line_normalize(&h, &g)?;
            report.result("h_tilde", ctx.polys(&line.h_tilde));
            report.result("y_prime", ctx.polys(&line.y_prime));
            report.result("b", ctx.polys(&line.b));
            report.result(
                "valuations",
                Value::List(line.valuations.iter().map(|l| l.to_string()).collect()),
            );
            report.result("lambda", Value::Int(line.lambda));
            report.result("integral", ctx.basis(&line.integral));
            report.check("congruence_mod_g_squared", line.congruence_holds);
            report.check("transforms_verified", line.transforms_verified);
            report.check("integral_formula", line.integral_formula_holds);
            let lt = lambda_tilde(&h, &g)?;
            report.check("lambda_tilde_agrees", lt == Length::Finite(line.lambda));
            if check_jacobian_condition(&h, &g)? {
                let tn = torsion_number(&h, &g)?;
                report.check(
                    "torsion_number_agrees",
                    tn.value == Length::Finite(line.lambda),
                );
            }
        }
        Verb::LambdaTilde(a) => {
            let ctx = load(&a.common)?;
            let [h, g] = pair(&ctx, report, "lambda-tilde", a)?;
            contained(report, &h, &g)?;
            let lt = lambda_tilde(&h, &g)?;
            report.result("lambda_tilde", length(&lt));
            if check_jacobian_condition(&h, &g)? {
                let tn = torsion_number(&h, &g)?;
                report.result("torsion_number", length(&tn.value));
                report.check("torsion_number_agrees", tn.value == lt);
            }
        }
        Verb::OmegaLine(a) => {
            let ctx = load(&a.common)?;
            let [h, g] = pair(&ctx, report, "omega-line", a)?;
            contained(report, &h, &g)?;
            let om = omega_line(&h, &g)?;
            let x = line_normalize(&h, &g)?.x;
            report.result(
                "invariant_factors",
                Value::List(om.smith.diagonal().iter().map(|d| ctx.uni(d, x)).collect()),
            );
            report.result("torsion_dimension", Value::Int(om.torsion_dimension));
            report.result("free_rank", Value::Int(om.free_rank as u64));
            report.result(
                "expected_free_rank",
                Value::Int(om.expected_free_rank as u64),
            );
            report.result("lambda", Value::Int(om.lambda));
            report.result(
                "rank_n_minus_p_minus_1",
                Value::Text((om.n as i64 - om.p as i64 - 1).to_string()),
            );
            report.result(
                "note",
                Value::Text("the splitting O_S + N + T(M) gives free rank 1 + n - p".into()),
            );
            report.check("torsion_equals_lambda", om.torsion_matches());
            report.check("free_rank_equals_1_plus_n_minus_p", om.free_rank_matches());
            report.check("transforms_verified", om.transforms_verified);
        }
        Verb::VerifyProperties { pair: a, g1, g2 } => {
            let ctx = load(&a.common)?;
            let [h, g] = pair(&ctx, report, "verify-properties", a)?;
            let extra = match (g1, g2) {
                (Some(n1), Some(n2)) => {
                    let i1 = ctx.ideal(n1)?;
                    let i2 = ctx.ideal(n2)?;
                    report.input("g1", ctx.polys(i1.generators()));
                    report.input("g2", ctx.polys(i2.generators()));
                    Some((i1, i2))
                }
                _ => None,
            };
            contained(report, &h, &g)?;
            if let Some((i1, i2)) = &extra {
                let ok = i1.intersect(i2).contains_ideal(&h);
                report.hypothesis("h_in_g1_cap_g2", Value::Bool(ok));
                if !ok {
                    return Err(Error::NotContained("h is not contained in g1 ∩ g2".into()).into());
                }
            }
            let rep = verify_lemma_properties(&h, &g, extra.as_ref().map(|(a, b)| (a, b)))?;
            report.result("integral", ctx.basis(&rep.integral));
            if let Some(x) = &rep.intersection {
                report.result("integral_g1", ctx.basis(&x.integral_g1));
                report.result("integral_g2", ctx.basis(&x.integral_g2));
                report.result(
                    "integral_of_intersection",
                    ctx.basis(&x.integral_of_intersection),
                );
                report.result(
                    "intersection_of_integrals",
                    ctx.basis(&x.intersection_of_integrals),
                );
            }
            report.check("contains_h", rep.contains_h);
            report.check("contains_g_squared", rep.contains_g_squared);
            report.check("inside_g", rep.inside_g);
            report.check("definitional_audit", rep.definitional_audit);
            if let Some(x) = &rep.intersection {
                report.check("intersection_identity", x.holds);
            }
        }
    }
    Ok(())
}

fn pair(ctx: &Ctx, report: &mut Report, verb: &str, a: &Pair) -> Result<[Ideal; 2], Failure> {
    let v = echo_input(ctx, report, verb, &[("h", &a.h), ("g", &a.g)])?;
    Ok([v[0].clone(), v[1].clone()])
}

fn format_split(first: &[usize], second: &[usize]) -> String {
    let f = |b: &[usize]| {
        b.iter()
            .map(|i| (i + 1).to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    format!("{} / {}", f(first), f(second))
}

fn wants_json(verb: &Verb) -> bool {
    match verb {
        Verb::Derivations { common, .. } => common.json,
        Verb::MainCheck { pair, .. } | Verb::VerifyProperties { pair, .. } => pair.common.json,
        Verb::Primitive(a)
        | Verb::SymbolicPower(a)
        | Verb::Torsion(a)
        | Verb::TorsionNumber(a)
        | Verb::FreeCheck(a)
        | Verb::LineCase(a)
        | Verb::LambdaTilde(a)
        | Verb::OmegaLine(a) => a.common.json,
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 {
                (text, String::new())
            } else {
                (String::new(), text)
            };
            return Outcome {
                code,
                stdout,
                stderr,
            };
        }
    };
    let mut report = Report::default();
    let outcome = execute(&cli.verb, &mut report);
    let render = |r: &Report| {
        if wants_json(&cli.verb) {
            r.to_json_text()
        } else {
            r.to_text()
        }
    };
    match outcome {
        Err(Failure::Usage(msg)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Hypothesis(msg)) => Outcome {
            code: 1,
            stdout: render(&report),
            stderr: format!("error: {msg}\n"),
        },
        Ok(()) => {
            let failures = report.failures();
            let stdout = render(&report);
            if failures.is_empty() {
                Outcome {
                    code: 0,
                    stdout,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code: 1,
                    stdout,
                    stderr: format!("error: failed: {}\n", failures.join(", ")),
                }
            }
        }
    }
}
