//! `compalg` command-line frontend.
//!
//! Exit codes: 0 on success, 1 on input or validation errors (a JSON error
//! object on stderr), 2 when a verification finds a violated property.

mod error;
mod latex;

use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use compalg::budget::Budget;
use compalg::clifford::{
    self, classify, clifford_group_membership, involutions, twisted_adjoint, verify_classification,
    CliffordSignature, Multivector, DEFAULT_MAX_N,
};
use compalg::codec::{self, elem_from_json, parse_field};
use compalg::crank::{
    c_rank, combine, find_low_rank_combination, invertible_minor, m_zero, verify_bound, verify_combination,
    BoundParams, RankInstance,
};
use compalg::fixtures;
use compalg::matalg::{
    flatten_split, is_invertible, mat_arith, skew_column_rank, split_pair, study_det, symplectic_rep, CompMatrix,
    FieldMatrix, MatOp,
};
use compalg::poincare::{
    clifford_gamma_poincare, gaussian_binomial, grassmann_poincare, hirsch, oriented_grassmann_poincare,
    poly_arith, product_form, wn_poincare, PolyOp, ProductSpace, UniPoly, WeylDegrees,
};
use compalg::quatalg::{is_split, swap_isomorphism, QuatAlgebra, Quaternion, Splitness};
use compalg::weylinv::{
    check_expressible, fundamental_generators, ktheory_rank, reynolds, verify_generation, weyl_index,
    Expressibility, GenFlavor, KPair, LaurentPoly, SignedPermGroup,
};
use compalg::zmod::{build_localization_model, parse_signs, sequence_checks, smith_normal_form, IntMatrix};
use serde_json::{json, Value};

use crate::error::CliError;

type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "compalg", version, about = "Exact computations over composition and Clifford algebras")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    output: Format,
    /// Seed for every randomized harness.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Computation budget in milliseconds; overrides COMPALG_BUDGET_MS.
    #[arg(long, global = true)]
    budget_ms: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Latex,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Quaternion algebra elements.
    #[command(subcommand)]
    Quat(QuatAction),
    /// Matrices over quaternion algebras.
    #[command(subcommand)]
    Mat(MatAction),
    /// Ranks and low-rank combinations.
    #[command(subcommand)]
    Span(SpanAction),
    /// Poincaré polynomials.
    #[command(subcommand)]
    Poincare(PoincareAction),
    /// Laurent invariants of signed permutation groups.
    #[command(subcommand)]
    Weyl(WeylAction),
    /// Integer matrices and lattice sequences.
    #[command(subcommand)]
    Zmod(ZmodAction),
    /// Clifford algebras.
    #[command(subcommand)]
    Clifford(CliffordAction),
}

// Every `--lhs`, `--rhs`, `--x` or `--input` is inline JSON or a path to a JSON file.
#[derive(Debug, Args)]
struct Pair {
    #[arg(long)]
    lhs: String,
    #[arg(long)]
    rhs: String,
}

#[derive(Debug, Args)]
struct One {
    #[arg(long)]
    x: String,
}

#[derive(Debug, Args)]
struct Input {
    #[arg(long)]
    input: String,
}

#[derive(Debug, Args)]
struct AlgebraArgs {
    /// `Q` or `Fp:<p>`.
    #[arg(long, default_value = "Q")]
    field: String,
    #[arg(long, allow_hyphen_values = true, default_value = "-1")]
    a: String,
    #[arg(long, allow_hyphen_values = true, default_value = "-1")]
    b: String,
    /// Use the split algebra `Mat(2,k)` instead of `(a,b)`.
    #[arg(long)]
    split: bool,
}

impl AlgebraArgs {
    fn algebra(&self) -> Result<Arc<QuatAlgebra>> {
        let field = parse_field(&self.field)?;
        if self.split {
            return Ok(QuatAlgebra::mat2(field));
        }
        let a = elem_from_json(field, &Value::String(self.a.clone()))?;
        let b = elem_from_json(field, &Value::String(self.b.clone()))?;
        Ok(QuatAlgebra::new(a, b)?)
    }
}

#[derive(Debug, Subcommand)]
enum QuatAction {
    /// Sum of two quaternions.
    Add(Pair),
    /// Difference of two quaternions.
    Sub(Pair),
    /// Product of two quaternions.
    Mul(Pair),
    /// Reduced norm.
    Norm(One),
    /// Conjugate.
    Conj(One),
    /// Inverse of a non-zero-divisor.
    Inverse(One),
    /// 2×2 matrix over the subfield.
    Symplectic(One),
    /// Transport along `(a,b) ≅ (b,a)`.
    Swap(One),
    /// Splitness test with a zero-divisor witness.
    Split(AlgebraArgs),
}

#[derive(Debug, Subcommand)]
enum MatAction {
    /// Matrix sum.
    Add(Pair),
    /// Matrix product.
    Mul(Pair),
    /// Study determinant of a square matrix.
    StudyDet(Input),
    /// Image under the symplectic representation.
    Symplectic(Input),
    /// Block flattening of a split matrix.
    Flatten(Input),
    /// Pair of field matrices for diagonal-block entries.
    SplitPair(Input),
    /// Invertibility by two independent routes.
    Invertible(Input),
    /// Column rank by elimination over the division algebra.
    SkewRank(Input),
}

#[derive(Debug, Subcommand)]
enum SpanAction {
    /// C-rank of a matrix or a bundled fixture.
    Rank {
        #[arg(long, conflicts_with = "fixture", required_unless_present = "fixture")]
        input: Option<String>,
        #[arg(long)]
        fixture: Option<String>,
    },
    /// Family size bound `M₀`.
    MZero {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        d: usize,
    },
    /// Low-rank combination of `{"matrices": [...], "d": d}`.
    Combine(Input),
    /// Randomized check of the low-rank combination bound.
    VerifyBound {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 3)]
        entry_bound: i64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Space {
    Y,
    Z,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Debug, Subcommand)]
enum PoincareAction {
    /// `Π(1 − t^{2s}) / Π(1 − t^{2r})` for degree data like `BC:3`.
    Hirsch {
        #[arg(long)]
        g: String,
        #[arg(long)]
        u: String,
    },
    /// Closed product form for `Y(n)` or `Z(n)`.
    Product {
        #[arg(long, value_enum)]
        space: Space,
        #[arg(long)]
        n: usize,
    },
    /// Gaussian binomial in `t^step`.
    Gaussian {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        step: usize,
    },
    /// Real Grassmannian of `p`-planes in `p+q` space.
    Grassmann {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
    },
    /// Oriented odd Grassmannian.
    Oriented {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
    },
    /// Clifford group quotient.
    CliffordGamma {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
    },
    /// Gaussian binomial `[n, ⌊n/2⌋]` in `t²`.
    Wn {
        #[arg(long)]
        n: usize,
    },
    /// Polynomials as `{"deg": coeff}` maps or coefficient arrays.
    Arith {
        #[arg(long, value_enum)]
        op: ArithOp,
        #[command(flatten)]
        pair: Pair,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Flavor {
    A,
    Bc,
}

impl From<Flavor> for GenFlavor {
    fn from(f: Flavor) -> Self {
        match f {
            Flavor::A => GenFlavor::Sym,
            Flavor::Bc => GenFlavor::Hyperoctahedral,
        }
    }
}

#[derive(Debug, Args)]
struct GroupPoly {
    /// Group such as `BC:3` or `A:1*A:1`.
    #[arg(long)]
    group: String,
    /// Laurent polynomial such as `x1^2*x2^-1 + 3`.
    #[arg(long, allow_hyphen_values = true)]
    poly: String,
}

#[derive(Debug, Subcommand)]
enum WeylAction {
    /// Group average of a polynomial.
    Reynolds(GroupPoly),
    /// Invariance test.
    Invariant(GroupPoly),
    /// `|G| / |H|`.
    Index {
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
    },
    /// `quaternionic:<n>`, `split:<n>` or `one-dim-split`.
    Ktheory {
        #[arg(long)]
        pair: String,
    },
    /// Fundamental invariants.
    Generators {
        #[arg(long, value_enum)]
        flavor: Flavor,
        #[arg(long)]
        n: usize,
    },
    /// Writes a polynomial in the fundamental invariants.
    Expressible {
        #[arg(long, value_enum)]
        flavor: Flavor,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        bound: usize,
    },
    /// Checks generation up to a weight bound.
    VerifyGeneration {
        #[arg(long, value_enum)]
        flavor: Flavor,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        bound: usize,
    },
}

#[derive(Debug, Subcommand)]
enum ZmodAction {
    /// Smith normal form `U·A·V = D`.
    Snf(Input),
    /// Integer determinant.
    Det(Input),
    /// Exactness and splitting of `0 → A → B → C → 0`.
    Sequence {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Truncated lattice model of the split sequence.
    LocModel {
        #[arg(long)]
        n: usize,
        #[arg(long, alias = "smax")]
        s_max: usize,
        /// `2n−1` characters from `+`/`-`; all plus by default.
        #[arg(long, allow_hyphen_values = true)]
        signs: Option<String>,
    },
}

#[derive(Debug, Args)]
struct Sig {
    #[arg(long)]
    p: usize,
    #[arg(long)]
    q: usize,
}

impl Sig {
    fn signature(&self) -> Result<CliffordSignature> {
        Ok(CliffordSignature::with_limit(self.p, self.q, DEFAULT_MAX_N)?)
    }
}

#[derive(Debug, Subcommand)]
enum CliffordAction {
    /// Matrix algebra type of `Cl(p,q)`.
    Classify(Sig),
    /// Checks the classification against the algebra itself.
    Verify(Sig),
    /// Center dimension.
    Center(Sig),
    /// Geometric product.
    Product {
        #[command(flatten)]
        sig: Sig,
        #[arg(long, allow_hyphen_values = true)]
        lhs: String,
        #[arg(long, allow_hyphen_values = true)]
        rhs: String,
    },
    /// Grade involution, reversion and conjugate.
    Involutions {
        #[command(flatten)]
        sig: Sig,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Inverse of a multivector.
    Inverse {
        #[command(flatten)]
        sig: Sig,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// `g·m·g⁻¹`.
    Adjoint {
        #[command(flatten)]
        sig: Sig,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long, allow_hyphen_values = true)]
        m: String,
    },
    /// Clifford group membership.
    Membership {
        #[command(flatten)]
        sig: Sig,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        /// Claimed unit-vector factor; repeat in order.
        #[arg(long = "factor", allow_hyphen_values = true)]
        factors: Vec<String>,
    },
}

struct Ctx {
    seed: u64,
    budget: Budget,
}

struct Out {
    json: Value,
    text: String,
    latex: Option<String>,
    violation: bool,
}

impl Out {
    fn new(json: Value, text: impl Into<String>) -> Self {
        Out {
            json,
            text: text.into(),
            latex: None,
            violation: false,
        }
    }

    fn latex(mut self, s: String) -> Self {
        self.latex = Some(s);
        self
    }

    fn violation(mut self, v: bool) -> Self {
        self.violation = v;
        self
    }
}

fn load(arg: &str) -> Result<Value> {
    let t = arg.trim_start();
    let text = if t.starts_with('{') || t.starts_with('[') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| CliError::Input(format!("cannot read {arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("invalid JSON: {e}")))
}

fn load_quat(arg: &str) -> Result<Quaternion> {
    Ok(codec::quaternion_from_json(&load(arg)?)?)
}

fn load_mat(arg: &str) -> Result<CompMatrix> {
    Ok(codec::comp_matrix_from_json(&load(arg)?)?)
}

fn load_int(arg: &str) -> Result<IntMatrix> {
    Ok(codec::int_matrix_from_json(&load(arg)?, None)?)
}

fn load_poly(arg: &str) -> Result<UniPoly> {
    let v = load(arg)?;
    let bad = || CliError::Input(format!("not a polynomial: {arg}"));
    match &v {
        Value::Array(cs) => {
            let coeffs = cs
                .iter()
                .map(|c| match c {
                    Value::Number(n) => n.as_i64().map(Into::into),
                    Value::String(s) => s.parse().ok(),
                    _ => None,
                })
                .collect::<Option<Vec<_>>>()
                .ok_or_else(bad)?;
            Ok(UniPoly::new(coeffs))
        }
        _ => UniPoly::from_json(&v).ok_or_else(bad),
    }
}

fn load_multivector(sig: CliffordSignature, arg: &str) -> Result<Multivector> {
    if arg.trim_start().starts_with('{') {
        Ok(codec::multivector_from_json(sig, &load(arg)?)?)
    } else {
        Ok(Multivector::parse(sig, arg)?)
    }
}

fn parse_group(s: &str) -> Result<SignedPermGroup> {
    Ok(s.parse()?)
}

fn quat_out(z: &Quaternion) -> Out {
    Out::new(codec::quaternion_to_json(z), z.to_string()).latex(latex::quaternion(z))
}

fn comp_out(z: &CompMatrix) -> Out {
    Out::new(codec::comp_matrix_to_json(z), z.to_string()).latex(latex::comp_matrix(z))
}

fn field_out(m: &FieldMatrix) -> Out {
    Out::new(codec::field_matrix_to_json(m), m.to_string()).latex(latex::field_matrix(m))
}

fn poly_out(p: &UniPoly) -> Out {
    Out::new(p.to_json(), p.to_text()).latex(p.to_latex())
}

fn mv_out(x: &Multivector) -> Out {
    Out::new(codec::multivector_to_json(x), x.to_string()).latex(latex::multivector(x))
}

fn laurent_out(f: &LaurentPoly) -> Out {
    Out::new(codec::laurent_to_json(f), f.to_string())
}

fn flag(name: &str, b: bool) -> Out {
    Out::new(json!({ name: b }), b.to_string())
}

fn run_quat(a: QuatAction) -> Result<Out> {
    Ok(match a {
        QuatAction::Add(p) => quat_out(&load_quat(&p.lhs)?.try_add(&load_quat(&p.rhs)?)?),
        QuatAction::Sub(p) => quat_out(&load_quat(&p.lhs)?.try_sub(&load_quat(&p.rhs)?)?),
        QuatAction::Mul(p) => quat_out(&load_quat(&p.lhs)?.try_mul(&load_quat(&p.rhs)?)?),
        QuatAction::Norm(x) => {
            let n = load_quat(&x.x)?.norm();
            Out::new(json!({"norm": codec::elem_to_json(&n)}), n.to_string()).latex(latex::elem(&n))
        }
        QuatAction::Conj(x) => quat_out(&load_quat(&x.x)?.conjugate()),
        QuatAction::Inverse(x) => quat_out(&load_quat(&x.x)?.inverse()?),
        QuatAction::Symplectic(x) => {
            let z = load_quat(&x.x)?;
            let s = z.symplectic()?;
            let spec = s[0][0].spec();
            let m = FieldMatrix::new(spec, 2, 2, s.into_iter().flatten().collect())?;
            field_out(&m)
        }
        QuatAction::Swap(x) => {
            let z = load_quat(&x.x)?;
            let (a, b) = z
                .algebra()
                .params()
                .ok_or_else(|| CliError::Validation("swap needs an algebra given by (a,b)".into()))?;
            let target = QuatAlgebra::new(b.clone(), a.clone())?;
            quat_out(&swap_isomorphism(&z, &target)?)
        }
        QuatAction::Split(args) => {
            let alg = args.algebra()?;
            let s = is_split(&alg);
            let witness = match &s {
                Splitness::Split(q) => Some(codec::quaternion_to_json(q)),
                _ => None,
            };
            let j = json!({
                "algebra": codec::algebra_to_json(&alg),
                "splitness": s.label(),
                "witness": witness,
            });
            Out::new(j, s.label())
        }
    })
}

fn run_mat(a: MatAction) -> Result<Out> {
    Ok(match a {
        MatAction::Add(p) => comp_out(&mat_arith(&load_mat(&p.lhs)?, MatOp::Add(&load_mat(&p.rhs)?))?),
        MatAction::Mul(p) => comp_out(&mat_arith(&load_mat(&p.lhs)?, MatOp::Mul(&load_mat(&p.rhs)?))?),
        MatAction::StudyDet(i) => {
            let d = study_det(&load_mat(&i.input)?)?;
            Out::new(json!({"study_det": codec::elem_to_json(&d)}), d.to_string()).latex(latex::elem(&d))
        }
        MatAction::Symplectic(i) => field_out(&symplectic_rep(&load_mat(&i.input)?)?),
        MatAction::Flatten(i) => field_out(&flatten_split(&load_mat(&i.input)?)?),
        MatAction::SplitPair(i) => {
            let (x, y) = split_pair(&load_mat(&i.input)?)?;
            let j = json!({"first": codec::field_matrix_to_json(&x), "second": codec::field_matrix_to_json(&y)});
            Out::new(j, format!("{x}\n\n{y}"))
                .latex(format!("{},\\quad {}", latex::field_matrix(&x), latex::field_matrix(&y)))
        }
        MatAction::Invertible(i) => flag("invertible", is_invertible(&load_mat(&i.input)?)?),
        MatAction::SkewRank(i) => {
            let r = skew_column_rank(&load_mat(&i.input)?)?;
            Out::new(json!({"column_rank": r}), r.to_string())
        }
    })
}

fn rank_out(z: &CompMatrix) -> (usize, Value) {
    let r = c_rank(z);
    let minor = invertible_minor(z, r)
        .filter(|_| r > 0)
        .map(|(rows, cols)| json!({"rows": rows, "cols": cols}));
    (r, json!({"c_rank": r, "minor": minor}))
}

fn run_span(a: SpanAction, ctx: &Ctx) -> Result<Out> {
    Ok(match a {
        SpanAction::Rank { input, fixture } => match (input, fixture) {
            (Some(i), _) => {
                let (r, j) = rank_out(&load_mat(&i)?);
                Out::new(j, r.to_string())
            }
            (None, Some(name)) => {
                let f = fixtures::rank_fixture(&name)
                    .ok_or_else(|| CliError::Input(format!("no rank fixture named {name:?}")))?;
                let (r, mut j) = rank_out(&f.matrix);
                j["fixture"] = json!(f.name);
                j["expected"] = json!(f.c_rank);
                Out::new(j, r.to_string()).violation(r != f.c_rank)
            }
            (None, None) => return Err(CliError::Usage("give --input or --fixture".into())),
        },
        SpanAction::MZero { alg, m, d } => {
            let v = m_zero(&alg.algebra()?, m, d)?;
            Out::new(json!({"m_zero": v, "family_size": 1 + v}), v.to_string())
        }
        SpanAction::Combine(i) => {
            let v = load(&i.input)?;
            let ms = v["matrices"]
                .as_array()
                .ok_or_else(|| CliError::Input("expected {\"matrices\": [...], \"d\": d}".into()))?;
            let matrices = ms
                .iter()
                .map(codec::comp_matrix_from_json)
                .collect::<std::result::Result<Vec<_>, _>>()?;
            let d = v["d"].as_u64().ok_or_else(|| CliError::Input("missing d".into()))? as usize;
            let inst = RankInstance::new(matrices, d)?;
            let coeffs = find_low_rank_combination(&inst)?;
            let sum = combine(inst.matrices(), &coeffs)?;
            let check = verify_combination(&inst, &coeffs);
            let j = json!({
                "coefficients": coeffs.iter().map(|c| codec::quaternion_to_json(c)["coeffs"].clone()).collect::<Vec<_>>(),
                "combination": codec::comp_matrix_to_json(&sum),
                "c_rank": check.as_ref().ok(),
                "violation": check.as_ref().err().map(|v| v.describe()),
            });
            let text = match &check {
                Ok(r) => format!("c_rank {r}\n{sum}"),
                Err(v) => format!("violation: {}", v.describe()),
            };
            Out::new(j, text).violation(check.is_err())
        }
        SpanAction::VerifyBound {
            alg,
            m,
            n,
            d,
            trials,
            entry_bound,
        } => {
            let algebra = alg.algebra()?;
            let mut params = BoundParams::new(m, n, d, trials, ctx.seed);
            params.entry_bound = entry_bound;
            let report = verify_bound(&algebra, &params, ctx.budget)?;
            let text = match &report.counterexample {
                None => format!("{} of {} trials verified (family size {})", report.successes, report.trials, report.family_size),
                Some(c) => format!("counterexample in trial {}: {}", c.trial, c.reason),
            };
            Out::new(codec::bound_report_to_json(&report), text).violation(report.counterexample.is_some())
        }
    })
}

fn run_poincare(a: PoincareAction) -> Result<Out> {
    let p = match a {
        PoincareAction::Hirsch { g, u } => {
            let g: WeylDegrees = g.parse()?;
            let u: WeylDegrees = u.parse()?;
            hirsch(&g, &u)?
        }
        PoincareAction::Product { space, n } => product_form(match space {
            Space::Y => ProductSpace::Y(n),
            Space::Z => ProductSpace::Z(n),
        })?,
        PoincareAction::Gaussian { n, k, step } => gaussian_binomial(n, k, step)?,
        PoincareAction::Grassmann { p, q } => grassmann_poincare(p, q)?,
        PoincareAction::Oriented { m, k } => oriented_grassmann_poincare(m, k)?,
        PoincareAction::CliffordGamma { n, p, q } => clifford_gamma_poincare(n, p, q)?,
        PoincareAction::Wn { n } => wn_poincare(n)?,
        PoincareAction::Arith { op, pair } => {
            let (l, r) = (load_poly(&pair.lhs)?, load_poly(&pair.rhs)?);
            match op {
                ArithOp::Add => poly_arith(PolyOp::Add, &l, &r)?,
                ArithOp::Sub => l.sub(&r),
                ArithOp::Mul => poly_arith(PolyOp::Mul, &l, &r)?,
                ArithOp::Div => poly_arith(PolyOp::ExactDiv, &l, &r)?,
            }
        }
    };
    Ok(poly_out(&p))
}

fn parse_pair(s: &str) -> Result<KPair> {
    let bad = || CliError::Input(format!("bad pair {s:?}; use quaternionic:<n>, split:<n> or one-dim-split"));
    if s == "one-dim-split" {
        return Ok(KPair::OneDimSplit);
    }
    let (kind, n) = s.split_once(':').ok_or_else(bad)?;
    let n: usize = n.parse().map_err(|_| bad())?;
    match kind {
        "quaternionic" => Ok(KPair::Quaternionic(n)),
        "split" => Ok(KPair::Split(n)),
        _ => Err(bad()),
    }
}

fn run_weyl(a: WeylAction, ctx: &Ctx) -> Result<Out> {
    Ok(match a {
        WeylAction::Reynolds(gp) => {
            let g = parse_group(&gp.group)?;
            let f = LaurentPoly::parse(&gp.poly, Some(g.nvars()))?;
            laurent_out(&reynolds(&g, &f, ctx.budget)?)
        }
        WeylAction::Invariant(gp) => {
            let g = parse_group(&gp.group)?;
            let f = LaurentPoly::parse(&gp.poly, Some(g.nvars()))?;
            flag("invariant", g.is_invariant(&f)?)
        }
        WeylAction::Index { g, h } => {
            let i = weyl_index(&parse_group(&g)?, &parse_group(&h)?)?;
            Out::new(json!({"index": compalg::poincare::bigint_json(&i)}), i.to_string())
        }
        WeylAction::Ktheory { pair } => {
            let r = ktheory_rank(parse_pair(&pair)?)?;
            Out::new(json!({"rank": compalg::poincare::bigint_json(&r)}), r.to_string())
        }
        WeylAction::Generators { flavor, n } => {
            let gens = fundamental_generators(flavor.into(), n);
            let text: Vec<String> = gens.iter().map(ToString::to_string).collect();
            Out::new(json!(gens.iter().map(codec::laurent_to_json).collect::<Vec<_>>()), text.join("\n"))
        }
        WeylAction::Expressible { flavor, poly, n, bound } => {
            let flavor: GenFlavor = flavor.into();
            let f = LaurentPoly::parse(&poly, n)?;
            let e = check_expressible(flavor, &f, bound, ctx.budget)?;
            let coeffs = match &e {
                Expressibility::Expressible(cs) => json!(cs
                    .iter()
                    .map(|(k, c)| json!({"exponents": k, "coeff": codec::rational_to_json(c)}))
                    .collect::<Vec<_>>()),
                Expressibility::Inconclusive => Value::Null,
            };
            Out::new(json!({"status": e.label(), "coefficients": coeffs}), e.label())
        }
        WeylAction::VerifyGeneration { flavor, n, bound } => {
            let r = verify_generation(flavor.into(), n, bound, ctx.budget)?;
            let text = format!(
                "{} of {} orbit sums expressible, {} inconclusive",
                r.expressible,
                r.checked,
                r.inconclusive.len()
            );
            Out::new(codec::generation_report_to_json(&r), text)
        }
    })
}

fn run_zmod(a: ZmodAction) -> Result<Out> {
    Ok(match a {
        ZmodAction::Snf(i) => {
            let s = smith_normal_form(&load_int(&i.input)?);
            let text: Vec<String> = s.invariant_factors().iter().map(ToString::to_string).collect();
            Out::new(codec::smith_to_json(&s), text.join(" "))
        }
        ZmodAction::Det(i) => {
            let d = load_int(&i.input)?.det()?;
            Out::new(json!({"det": compalg::poincare::bigint_json(&d)}), d.to_string())
        }
        ZmodAction::Sequence { f, g } => {
            let r = sequence_checks(&load_int(&f)?, &load_int(&g)?)?;
            Out::new(codec::sequence_report_to_json(&r), format!("{r:?}")).violation(!r.all())
        }
        ZmodAction::LocModel { n, s_max, signs } => {
            let signs = match signs {
                Some(s) => parse_signs(&s)?,
                None => vec![1; 2 * n.max(1) - 1],
            };
            let model = build_localization_model(n, s_max, &signs)?;
            let text = format!(
                "middle rank {}, exact {}, splits {}",
                model.middle_rank,
                model.checks.exact_middle && model.checks.surjective_g,
                model.checks.splits
            );
            Out::new(codec::localization_to_json(&model), text).violation(!model.checks.all())
        }
    })
}

fn run_clifford(a: CliffordAction) -> Result<Out> {
    Ok(match a {
        CliffordAction::Classify(s) => {
            let c = classify(s.p, s.q)?;
            Out::new(codec::classification_to_json(&c), c.to_string())
        }
        CliffordAction::Verify(s) => {
            let r = verify_classification(s.p, s.q)?;
            let text = format!("{} agrees: {}", r.classification, r.agrees);
            Out::new(codec::classification_report_to_json(&r), text).violation(!r.agrees)
        }
        CliffordAction::Center(s) => {
            let d = clifford::center_dimension(s.signature()?);
            Out::new(json!({"center_dim": d}), d.to_string())
        }
        CliffordAction::Product { sig, lhs, rhs } => {
            let sig = sig.signature()?;
            mv_out(&load_multivector(sig, &lhs)?.geometric_product(&load_multivector(sig, &rhs)?)?)
        }
        CliffordAction::Involutions { sig, x } => {
            let inv = involutions(&load_multivector(sig.signature()?, &x)?);
            let j = json!({
                "grade_involution": codec::multivector_to_json(&inv.grade_involution),
                "reversion": codec::multivector_to_json(&inv.reversion),
                "clifford_conjugate": codec::multivector_to_json(&inv.clifford_conjugate),
            });
            let text = format!(
                "grade involution: {}\nreversion: {}\nclifford conjugate: {}",
                inv.grade_involution, inv.reversion, inv.clifford_conjugate
            );
            Out::new(j, text)
        }
        CliffordAction::Inverse { sig, x } => mv_out(&load_multivector(sig.signature()?, &x)?.inverse()?),
        CliffordAction::Adjoint { sig, g, m } => {
            let sig = sig.signature()?;
            mv_out(&twisted_adjoint(&load_multivector(sig, &g)?, &load_multivector(sig, &m)?)?)
        }
        CliffordAction::Membership { sig, g, factors } => {
            let sig = sig.signature()?;
            let g = load_multivector(sig, &g)?;
            let fs = factors
                .iter()
                .map(|f| load_multivector(sig, f))
                .collect::<Result<Vec<_>>>()?;
            let m = clifford_group_membership(&g, (!fs.is_empty()).then_some(fs.as_slice()))?;
            let text = format!("in Clifford group: {}, even: {}", m.in_gamma, m.in_even_part);
            Out::new(codec::membership_to_json(&m), text)
        }
    })
}

fn dispatch(cmd: Cmd, ctx: &Ctx) -> Result<Out> {
    match cmd {
        Cmd::Quat(a) => run_quat(a),
        Cmd::Mat(a) => run_mat(a),
        Cmd::Span(a) => run_span(a, ctx),
        Cmd::Poincare(a) => run_poincare(a),
        Cmd::Weyl(a) => run_weyl(a, ctx),
        Cmd::Zmod(a) => run_zmod(a),
        Cmd::Clifford(a) => run_clifford(a),
    }
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!("{}", codec::error_to_json(e.kind(), &e.to_string()));
    ExitCode::from(1)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let msg = e.render().to_string();
            let first = msg.lines().next().unwrap_or("").trim_start_matches("error: ").to_string();
            return fail(&CliError::Usage(first));
        }
    };
    let ctx = Ctx {
        seed: cli.seed,
        budget: cli.budget_ms.map(Budget::new).unwrap_or_else(Budget::from_env),
    };
    match dispatch(cli.cmd, &ctx) {
        Ok(out) => {
            let body = match cli.output {
                Format::Json => serde_json::to_string(&out.json).expect("serializable"),
                Format::Text => out.text,
                Format::Latex => out.latex.unwrap_or(out.text),
            };
            println!("{body}");
            if out.violation {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => fail(&e),
    }
}
