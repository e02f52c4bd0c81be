mod output;
mod quiver;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Rational64;
use quivstrat::crystal::{crystal_b_lambda, TensorCrystal};
use quivstrat::levelrank::{charge, degree, gyd_to_maya, gyd_to_weight, transpose, DualityContext, Gyd};
use quivstrat::modrep::{GradedModule, SubmoduleLattice, TieBreak};
use quivstrat::nonempty::{affine_stratum_nonempty, cb_stable_nonempty};
use quivstrat::rational::{format_rational, parse_rational};
use quivstrat::stability::{ale_face, levi_face};
use quivstrat::strata::{classify_blocks, enumerate_strata_ale, enumerate_strata_levi, local_model};
use quivstrat::verify::{run_suite, VerifyOptions};
use quivstrat::{
    cartan_from_graph, face_of, freudenthal, is_chamber, normalize, AffineWeight, CartanMatrix, DimVector, Error,
    QuiverGraph, Result, StabilityParam,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use output::{big, Format, Report};

#[derive(Parser)]
#[command(name = "quivstrat", version, about = "Stability, strata, crystals and level-rank duality for quiver varieties")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct GraphArgs {
    /// Quiver file (JSON with `vertices`, `edges`, optional `orientation`).
    #[arg(long, conflicts_with = "graph")]
    quiver: Option<PathBuf>,
    /// Built-in graph: A<n>, affA<n> or jordan.
    #[arg(long)]
    graph: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FaceKindArg {
    Levi,
    Ale,
}

#[derive(Args, Clone)]
struct ParamArgs {
    /// Stability parameter, comma-separated `p/q` entries.
    #[arg(long, allow_hyphen_values = true)]
    zeta: Option<String>,
    /// Vertices where the parameter vanishes, used with `--face`.
    #[arg(long, default_value = "")]
    i0: String,
    /// Take the sample parameter of this standard face instead of `--zeta`.
    #[arg(long, value_enum)]
    face: Option<FaceKindArg>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Cartan matrix of a graph.
    Cartan {
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// Sign partition of R₊(v) by a parameter.
    Face {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        v: String,
        #[arg(long, default_value = "")]
        w: String,
        #[command(flatten)]
        param: ParamArgs,
    },
    /// Crawley–Boevey nonemptiness of the stable locus.
    Nonempty {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        v: String,
        #[arg(long, default_value = "")]
        w: String,
        #[command(flatten)]
        param: ParamArgs,
    },
    /// Strata at a Levi or ALE face.
    Strata {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        v: String,
        #[arg(long, default_value = "")]
        w: String,
        #[arg(long, default_value = "")]
        i0: String,
        #[arg(long, value_enum, default_value_t = FaceKindArg::Levi)]
        face: FaceKindArg,
    },
    /// Weight multiplicities of the integrable module with highest weight `w`.
    Mult {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        w: String,
        /// A single weight `w − v`; omit for the whole table.
        #[arg(long)]
        v: Option<String>,
        #[arg(long, default_value_t = 6)]
        depth: i64,
    },
    /// Affine type A crystals: `B(Λ_{i0})`, or a tensor product with `--residues`.
    Crystal {
        #[arg(long)]
        rank: usize,
        #[arg(long, default_value_t = 0)]
        i0: usize,
        #[arg(long)]
        residues: Option<String>,
        /// Include one Fock factor in the tensor product.
        #[arg(long)]
        fock: bool,
        #[arg(long, default_value_t = 6)]
        depth: i64,
    },
    /// Maya diagram, transpose and weight of a generalized Young diagram; duality with `--mu`.
    Levelrank {
        /// Rows of the diagram, comma-separated.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        level: usize,
        /// Framing of the weight μ̄.
        #[arg(long)]
        mu: Option<String>,
        /// Simple-root content subtracted from the framing of μ̄.
        #[arg(long, default_value = "")]
        content: String,
        #[arg(long, default_value_t = 8)]
        depth: i64,
    },
    /// Verdict, HN filtration and JH factors of a random module over F_q.
    Modrep {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        v: String,
        #[arg(long, default_value = "")]
        w: String,
        #[command(flatten)]
        param: ParamArgs,
        #[arg(long, default_value_t = 2)]
        field: u8,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run acceptance checks.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        depth: Option<i64>,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
}

fn parse_ints(s: &str) -> Result<Vec<i64>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Parse(format!("not an integer: {x:?} in {s:?}"))))
        .collect()
}

fn parse_indices(s: &str) -> Result<Vec<usize>> {
    parse_ints(s)?
        .into_iter()
        .map(|x| usize::try_from(x).map_err(|_| Error::Parse(format!("negative index {x}"))))
        .collect()
}

fn parse_dims(s: &str, n: usize, what: &str) -> Result<DimVector> {
    let v = parse_ints(s)?;
    let v = if v.is_empty() { vec![0; n] } else { v };
    if v.len() != n {
        return Err(Error::Parse(format!("{what} has {} entries, the graph has {n} vertices", v.len())));
    }
    DimVector::new(v).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

fn load_graph(args: &GraphArgs) -> Result<QuiverGraph> {
    match (&args.quiver, &args.graph) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
            quiver::parse_quiver_file(&text)
        }
        (None, Some(name)) => quiver::builtin(name),
        (None, None) => Err(Error::Parse("one of --quiver or --graph is required".into())),
    }
}

fn resolve_param(p: &ParamArgs, c: &CartanMatrix) -> Result<StabilityParam> {
    match (&p.zeta, p.face) {
        (Some(z), None) => {
            let zeta: Vec<Rational64> = z.split(',').map(parse_rational).collect::<Result<_>>()?;
            if zeta.len() != c.len() {
                return Err(Error::Parse(format!("zeta has {} entries, the graph has {} vertices", zeta.len(), c.len())));
            }
            Ok(StabilityParam::new(zeta))
        }
        (None, Some(kind)) => Ok(face_spec(kind, c, &parse_indices(&p.i0)?)?.param()),
        (None, None) => Ok(StabilityParam::zero(c.len())),
        (Some(_), Some(_)) => Err(Error::Parse("give either --zeta or --face, not both".into())),
    }
}

fn face_spec(kind: FaceKindArg, c: &CartanMatrix, i0: &[usize]) -> Result<quivstrat::FaceSpec> {
    match kind {
        FaceKindArg::Levi => levi_face(c.len(), i0),
        FaceKindArg::Ale => ale_face(c, i0),
    }
}

fn rationals(z: &[Rational64]) -> Vec<String> {
    z.iter().map(format_rational).collect()
}

fn vecs<'a>(xs: impl IntoIterator<Item = &'a DimVector>) -> Vec<Vec<i64>> {
    xs.into_iter().map(|x| x.to_vec()).collect()
}

fn joined(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

fn run(cli: Cli) -> Result<Report> {
    match cli.command {
        Command::Cartan { graph } => {
            let c = cartan_from_graph(&load_graph(&graph)?);
            let rows: Vec<Vec<String>> = c.rows().iter().map(|r| r.iter().map(i64::to_string).collect()).collect();
            Ok(Report::new(json!(c.rows()), vec![], rows))
        }
        Command::Face { graph, v, w, param } => {
            let c = cartan_from_graph(&load_graph(&graph)?);
            let (v, w) = (parse_dims(&v, c.len(), "v")?, parse_dims(&w, c.len(), "w")?);
            let zeta = resolve_param(&param, &c)?;
            let f = face_of(&zeta, &v, &w, &c)?;
            let mut rows = Vec::new();
            for (sign, set) in [("0", &f.r_zero), ("+", &f.r_plus), ("-", &f.r_minus)] {
                rows.extend(set.iter().map(|t| vec![joined(t), sign.to_string()]));
            }
            let doc = json!({
                "zeta": rationals(&zeta.zeta),
                "chamber": is_chamber(&f),
                "rZero": vecs(&f.r_zero),
                "rPlus": vecs(&f.r_plus),
                "rMinus": vecs(&f.r_minus),
            });
            Ok(Report::new(doc, vec!["theta", "sign"], rows))
        }
        Command::Nonempty { graph, v, w, param } => {
            let c = cartan_from_graph(&load_graph(&graph)?);
            let (v, w) = (parse_dims(&v, c.len(), "v")?, parse_dims(&w, c.len(), "w")?);
            let zeta = resolve_param(&param, &c)?;
            let verdict = cb_stable_nonempty(&c, &v, &w, &zeta)?;
            let mut doc = serde_json::to_value(&verdict).map_err(|e| Error::Internal(e.to_string()))?;
            doc["zeta"] = json!(rationals(&zeta.zeta));
            if matches!(param.face, Some(FaceKindArg::Ale)) && !w.is_zero() {
                doc["closedForm"] = json!(affine_stratum_nonempty(&c, &v, &w, &parse_indices(&param.i0)?)?);
            }
            let row = vec![verdict.nonempty.to_string(), doc["witness"]["kind"].as_str().unwrap_or("").to_string()];
            Ok(Report::new(doc, vec!["nonempty", "witness"], vec![row]))
        }
        Command::Strata { graph, v, w, i0, face } => {
            let c = cartan_from_graph(&load_graph(&graph)?);
            let (v, w) = (parse_dims(&v, c.len(), "v")?, parse_dims(&w, c.len(), "w")?);
            let i0 = parse_indices(&i0)?;
            match face {
                FaceKindArg::Levi => {
                    let strata = enumerate_strata_levi(&c, &v, &w, &i0)?;
                    let rows = strata.iter().map(|s| vec![joined(&s.v0), joined(&s.residual)]).collect();
                    let doc = serde_json::to_value(&strata).map_err(|e| Error::Internal(e.to_string()))?;
                    Ok(Report::new(doc, vec!["v0", "residual"], rows))
                }
                FaceKindArg::Ale => {
                    let mut docs = Vec::new();
                    let mut rows = Vec::new();
                    for s in enumerate_strata_ale(&c, &v, &w, &i0)? {
                        let model = local_model(&c, &s.v0, &s.pieces(&c)?, &w)?;
                        let blocks: Vec<Value> = classify_blocks(&model.hat_cartan)
                            .into_iter()
                            .map(|(comp, kind)| json!({"summands": comp, "kind": kind}))
                            .collect();
                        rows.push(vec![joined(&s.v0), joined(&s.lambda), joined(&model.hat_v), joined(&model.hat_w)]);
                        docs.push(json!({"stratum": s, "localModel": model, "blocks": blocks}));
                    }
                    Ok(Report::new(json!(docs), vec!["v0", "lambda", "hatV", "hatW"], rows))
                }
            }
        }
        Command::Mult { graph, w, v, depth } => {
            let c = cartan_from_graph(&load_graph(&graph)?);
            let w = parse_dims(&w, c.len(), "w")?;
            let table = freudenthal(&w, &c, depth)?;
            if let Some(v) = v {
                let v = parse_dims(&v, c.len(), "v")?;
                let m = table.get(&v)?;
                return Ok(Report::new(json!({"v": v, "mult": big(&m)}), vec!["v", "mult"], vec![vec![joined(&v), m.to_string()]]));
            }
            let mut entries: Vec<(&DimVector, _)> = table.support().collect();
            entries.sort_by(|a, b| a.0.total().cmp(&b.0.total()).then(a.0.cmp(b.0)));
            let rows = entries.iter().map(|(v, m)| vec![joined(v), m.to_string()]).collect();
            let doc: Vec<Value> = entries.iter().map(|(v, m)| json!({"v": v, "mult": big(m)})).collect();
            Ok(Report::new(json!(doc), vec!["v", "mult"], rows))
        }
        Command::Crystal { rank, i0, residues, fock, depth } => {
            let counts = match residues {
                None => {
                    let mut counts = std::collections::BTreeMap::new();
                    for p in crystal_b_lambda(rank, i0, depth)? {
                        *counts.entry(p.content()).or_insert(0u64) += 1;
                    }
                    counts
                }
                Some(r) => TensorCrystal::build(rank, &parse_indices(&r)?, depth, fock)?.highest_weight_counts(),
            };
            let rows = counts.iter().map(|(v, k)| vec![joined(v), k.to_string()]).collect();
            let doc: Vec<Value> = counts.iter().map(|(v, k)| json!({"content": v, "count": k})).collect();
            Ok(Report::new(json!(doc), vec!["content", "count"], rows))
        }
        Command::Levelrank { lambda, level, mu, content, depth } => {
            let lam = Gyd::new(parse_ints(&lambda)?, level)?;
            let maya = gyd_to_maya(&lam);
            let dual = transpose(&lam)?;
            let mut doc = json!({
                "lambda": lam,
                "weight": gyd_to_weight(&lam).framing,
                "transpose": dual,
                "charge": charge(&maya),
                "degree": format_rational(&degree(&maya)),
                "maya": maya,
            });
            let mut header = vec!["lambda", "transpose", "charge", "degree"];
            let mut row = vec![joined(&lam.parts), joined(&dual.parts), charge(&maya).to_string(), format_rational(&degree(&maya))];
            if let Some(mu) = mu {
                let framing = parse_dims(&mu, lam.rows(), "mu")?;
                let x = parse_ints(&content)?;
                let x = if x.is_empty() { vec![0; lam.rows()] } else { x };
                let report = DualityContext::new(depth).duality_dims(&lam, &AffineWeight::new(framing, x))?;
                header.extend(["lhs", "rhs"]);
                row.extend([report.lhs_dim.to_string(), report.rhs_dim.to_string()]);
                doc["duality"] = serde_json::to_value(&report).map_err(|e| Error::Internal(e.to_string()))?;
            }
            Ok(Report::new(doc, header, vec![row]))
        }
        Command::Modrep { graph, v, w, param, field, seed } => {
            let g = load_graph(&graph)?;
            let c = cartan_from_graph(&g);
            let (v, w) = (parse_dims(&v, c.len(), "v")?, parse_dims(&w, c.len(), "w")?);
            let zeta = resolve_param(&param, &c)?;
            let module = GradedModule::zero(&g, field, &v, &w)?.random(&mut ChaCha8Rng::seed_from_u64(seed));
            let zt = match normalize(&zeta, &v, &w) {
                Ok(z) => z,
                Err(_) => StabilityParam { zeta: zeta.zeta.clone(), zeta_inf: Some(Rational64::default()) },
            };
            let lattice = SubmoduleLattice::new(&module)?;
            let verdict = lattice.verdict(&zt);
            let hn = lattice.hn_filtration(&zt);
            let jh = if verdict.is_semistable() { Some(lattice.jh_factors(&zt, TieBreak::Smallest)?) } else { None };
            let doc = json!({
                "module": module,
                "satisfiesMomentMap": module.satisfies_moment_map(),
                "submodules": lattice.submodules().len(),
                "verdict": verdict,
                "hn": hn.pieces,
                "jh": jh,
            });
            let rows = hn
                .pieces
                .iter()
                .map(|p| vec![joined(&p.dims), p.w_flag.to_string(), format_rational(&p.slope)])
                .collect();
            Ok(Report::new(doc, vec!["dims", "hasW", "slope"], rows))
        }
        Command::Verify { suite, depth, seed } => {
            let reports = run_suite(&suite, VerifyOptions { seed, depth })?;
            let rows = reports
                .iter()
                .map(|r| {
                    vec![
                        r.id.to_string(),
                        if r.passed { "PASS" } else { "FAIL" }.to_string(),
                        r.checked.to_string(),
                        r.failure_count.to_string(),
                        r.elapsed_ms.to_string(),
                        r.name.clone(),
                    ]
                })
                .collect();
            let passed = reports.iter().all(|r| r.passed);
            let doc = json!({"passed": passed, "criteria": reports});
            let mut report = Report::new(doc, vec!["id", "status", "checked", "failures", "ms", "name"], rows);
            if !passed {
                report.failed = true;
            }
            Ok(report)
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => 2,
        Error::Precondition(_) => 3,
        Error::Inconclusive { .. } => 4,
        Error::Internal(_) => 5,
        Error::Unsupported(_) | Error::Budget(_) => 6,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(report) => {
            print!("{}", report.render(format));
            if report.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
