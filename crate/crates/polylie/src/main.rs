//! Command-line front end: stable JSON reports over the library modules.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use polylie::error::{Error, Result};
use polylie::io::{
    self, ordered, ComplexJson, FiberJson, GroupJson, InstanceJson, WordsJson,
};
use polylie::nilcert;
use polylie::polyprod::FactorTable;
use polylie::simplicial::FieldTag;
use polylie::wedge::{Atom, FormalWedge, SmashWord, SpaceAssignment};
use polylie::{fiberdecomp, freelie, polyprod};

#[derive(Parser)]
#[command(
    name = "polylie",
    version,
    about = "Loop-space decompositions of polyhedral products, free Lie generating sets, and homotopy-nilpotency certification"
)]
struct Cli {
    /// Truncation degree for all series computations.
    #[arg(long, global = true, env = "POLYLIE_CAP", default_value_t = 64)]
    cap: usize,
    /// Odd prime, for mod-p homology.
    #[arg(long, global = true)]
    prime: Option<u64>,
    /// Coefficient field for homology queries.
    #[arg(long, global = true, value_enum, default_value_t = Field::Q)]
    field: Field,
    /// Input file (JSON).
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Output format; JSON is the stable contract, text is a summary.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads; never changes output, only wall time.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Field {
    Q,
    Fp,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Homology, shiftedness, and subcomplex queries on a complex file.
    Complex {
        /// Restrict to the full subcomplex on these vertices.
        #[arg(long, value_delimiter = ',')]
        subset: Option<Vec<usize>>,
    },
    /// Polyhedral-product computations on an instance file.
    Polyprod {
        #[command(subcommand)]
        op: PolyprodOp,
    },
    /// Free Lie algebra generating sets and counts.
    Lie {
        #[command(subcommand)]
        op: LieOp,
    },
    /// Fiber decompositions as labeled wedges.
    Fiber {
        #[command(subcommand)]
        op: FiberOp,
    },
    /// Homotopy-nilpotency certification.
    Nilcert {
        #[command(subcommand)]
        op: NilcertOp,
    },
}

#[derive(Subcommand)]
enum PolyprodOp {
    /// Suspension splitting into smash words.
    Bbcg,
    /// Desuspended splitting (gated on shiftedness or user assertion).
    Desusp,
    /// Vertex-by-vertex fiber tower with the telescoping series check.
    Tower,
    /// Subset-lattice factor table with loop series.
    Factors,
    /// Loop-series identity of the product against its lattice factors.
    Identity,
}

#[derive(Subcommand)]
enum LieOp {
    /// Recursive generating-set stages.
    Basis {
        #[arg(long)]
        m: usize,
        /// Maximum bracket length (default m).
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Number of multilinear full-length generators.
    Count {
        #[arg(long)]
        m: usize,
    },
    /// The distinguished generating family, grouped by subset.
    Bset {
        #[arg(long)]
        m: usize,
    },
    /// Test words from the input file for thin-product lifting.
    LiftCheck {
        #[arg(long)]
        m: usize,
    },
}

#[derive(Subcommand)]
enum FiberOp {
    /// Fiber of a wedge of looped spaces into their product.
    Porter,
    /// Fiber of a wedge split B ∨ C over B (needs "split" in the input).
    Ganea,
    /// Fiber of a wedge of suspensions into their product, via the
    /// pinch tower.
    Dm,
    /// Fiber of the wedge into the thin product, with lifting labels.
    Thin {
        /// Start from the pinch tower (spaces are suspensions of the
        /// assigned ones) instead of the looped-space decomposition.
        #[arg(long)]
        refined: bool,
    },
}

#[derive(Subcommand)]
enum NilcertOp {
    /// Certify one group spec from the input file.
    Certify,
    /// Reproduce both tables and compare with the committed results.
    Tables {
        /// Only report rows at this prime.
        #[arg(long)]
        prime_filter: Option<u64>,
    },
}

fn read_input(cli: &Cli) -> Result<String> {
    let path = cli
        .input
        .as_ref()
        .ok_or_else(|| Error::MalformedInput("missing --input FILE".to_string()))?;
    std::fs::read_to_string(path)
        .map_err(|e| Error::MalformedInput(format!("{}: {e}", path.display())))
}

fn field_tag(cli: &Cli) -> Result<FieldTag> {
    match cli.field {
        Field::Q => Ok(FieldTag::Rational),
        Field::Fp => {
            let p = cli.prime.ok_or_else(|| {
                Error::MalformedInput("--field fp requires --prime".to_string())
            })?;
            Ok(FieldTag::ModP(p))
        }
    }
}

fn run_complex(cli: &Cli, subset: &Option<Vec<usize>>) -> Result<Value> {
    let complex = ComplexJson::parse(&read_input(cli)?)?.to_complex()?;
    let complex = match subset {
        Some(s) => complex.full_subcomplex(s)?,
        None => complex,
    };
    let field = field_tag(cli)?;
    let betti = complex.reduced_betti(field);
    Ok(ordered(vec![
        ("m", json!(complex.vertex_count())),
        ("vertices", json!(complex.vertices())),
        ("face_count", json!(complex.faces().count())),
        ("non_faces", json!(complex.non_faces())),
        ("field", io::field_value(field)),
        ("reduced_betti", io::betti_value(&betti)),
        ("shifted", json!(complex.is_shifted())),
        (
            "shifted_witness",
            match complex.shifted_witness() {
                Some((face, from, to)) => json!([face, from, to]),
                None => Value::Null,
            },
        ),
        ("cone", json!(complex.is_cone())),
    ]))
}

fn run_polyprod(cli: &Cli, op: &PolyprodOp) -> Result<Value> {
    let instance = InstanceJson::parse(&read_input(cli)?)?.to_instance(cli.cap)?;
    let assignment = &instance.assignment;
    match op {
        PolyprodOp::Bbcg => {
            let wedge = instance.bbcg_suspension_splitting()?;
            Ok(ordered(vec![
                ("pair", io::pair_value(instance.pair_kind)),
                ("word_count", io::bigint_value(&wedge.word_count())),
                ("words", io::wedge_words_value(&wedge)),
                (
                    "reduced_series",
                    io::series_value(&wedge.series(assignment, true)?),
                ),
            ]))
        }
        PolyprodOp::Desusp => {
            let d = instance.fillable_desuspension()?;
            Ok(ordered(vec![
                (
                    "gate",
                    json!(match d.gate {
                        polyprod::DesuspensionGate::Shifted => "shifted",
                        polyprod::DesuspensionGate::UserAsserted => "user_asserted",
                    }),
                ),
                ("word_count", io::bigint_value(&d.wedge.word_count())),
                ("words", io::wedge_words_value(&d.wedge)),
                (
                    "reduced_series",
                    io::series_value(&d.wedge.series(assignment, true)?),
                ),
            ]))
        }
        PolyprodOp::Tower => {
            let tower = instance.fiber_tower()?;
            let (lhs, rhs) = polyprod::telescoping_series(&tower, assignment)?;
            let steps: Vec<Value> = tower
                .steps
                .iter()
                .map(|s| {
                    ordered(vec![
                        ("vertex", json!(s.vertex)),
                        ("b_word_count", io::bigint_value(&s.b.word_count())),
                        ("c_word_count", io::bigint_value(&s.c.word_count())),
                        ("g_word_count", io::bigint_value(&s.g.word_count())),
                    ])
                })
                .collect();
            Ok(ordered(vec![
                (
                    "start_word_count",
                    io::bigint_value(&tower.start.word_count()),
                ),
                ("steps", Value::Array(steps)),
                ("final_words", io::wedge_words_value(&tower.final_wedge)),
                (
                    "full_support",
                    json!(polyprod::full_support_holds(
                        &tower,
                        instance.complex.vertices()
                    )),
                ),
                ("telescoping_lhs", io::series_value(&lhs)),
                ("telescoping_rhs", io::series_value(&rhs)),
                ("telescoping_equal", json!(lhs == rhs)),
            ]))
        }
        PolyprodOp::Factors => {
            let table = instance.factor_table()?;
            let entries: Vec<Value> = table
                .entries
                .iter()
                .map(|(subset, entry)| {
                    let series = FactorTable::loop_series(entry, assignment)
                        .map(|s| io::series_value(&s))
                        .unwrap_or(Value::Null);
                    ordered(vec![
                        ("subset", json!(subset)),
                        ("entry", io::factor_entry_value(entry)),
                        ("loop_series", series),
                    ])
                })
                .collect();
            Ok(ordered(vec![("factors", Value::Array(entries))]))
        }
        PolyprodOp::Identity => {
            let id = instance.loop_series_identity()?;
            let lattice_equal = id.lhs == id.rhs_all;
            let dual_equal = id.lhs == id.rhs_proper.mul(&id.top);
            Ok(ordered(vec![
                ("lhs", io::series_value(&id.lhs)),
                ("rhs_all", io::series_value(&id.rhs_all)),
                ("rhs_proper", io::series_value(&id.rhs_proper)),
                ("top", io::series_value(&id.top)),
                ("lattice_equal", json!(lattice_equal)),
                ("dual_times_top_equal", json!(dual_equal)),
            ]))
        }
    }
}

fn run_lie(cli: &Cli, op: &LieOp) -> Result<Value> {
    match op {
        LieOp::Basis { m, max_len } => {
            let max_len = max_len.unwrap_or(*m);
            let set = freelie::recursive_generating_set(*m, max_len);
            let stages: Vec<Value> = set
                .stages
                .iter()
                .map(|s| {
                    ordered(vec![
                        ("index", json!(s.index)),
                        (
                            "words",
                            Value::Array(
                                s.words
                                    .iter()
                                    .map(|w| {
                                        ordered(vec![
                                            ("display", json!(w.word.to_string())),
                                            ("ad_power", json!(w.ad_power)),
                                        ])
                                    })
                                    .collect(),
                            ),
                        ),
                    ])
                })
                .collect();
            Ok(ordered(vec![
                ("m", json!(m)),
                ("max_len", json!(max_len)),
                ("stages", Value::Array(stages)),
            ]))
        }
        LieOp::Count { m } => {
            let set = freelie::recursive_generating_set(*m, *m);
            Ok(ordered(vec![(
                "multilinear_generators",
                json!(set.multilinear_full_length().len()),
            )]))
        }
        LieOp::Bset { m } => {
            let families: Vec<Value> = freelie::enumerate_b(*m)
                .into_iter()
                .map(|(subset, words)| {
                    ordered(vec![
                        ("subset", json!(subset)),
                        ("count", json!(words.len())),
                        (
                            "words",
                            json!(words.iter().map(|w| w.to_string()).collect::<Vec<_>>()),
                        ),
                    ])
                })
                .collect();
            Ok(ordered(vec![("families", Value::Array(families))]))
        }
        LieOp::LiftCheck { m } => {
            let words = WordsJson::parse(&read_input(cli)?)?.to_words()?;
            let results: Vec<Value> = words
                .iter()
                .map(|w| {
                    ordered(vec![
                        ("word", json!(w.to_string())),
                        ("lifts", json!(freelie::lifts_through_thin(w, *m))),
                    ])
                })
                .collect();
            Ok(ordered(vec![("results", Value::Array(results))]))
        }
    }
}

fn suspension_wedge(
    indices: &[usize],
    assignment: &SpaceAssignment,
) -> Result<FormalWedge> {
    let mut out = FormalWedge::empty(assignment.cap);
    for &i in indices {
        out.add_word(
            SmashWord::new(1, vec![Atom::Base(i)], assignment)?,
            1.into(),
        );
    }
    Ok(out)
}

fn labeled_wedge_report(
    wedge: &fiberdecomp::LabeledWedge,
    assignment: &SpaceAssignment,
    lift_m: Option<usize>,
    check_multidegrees: bool,
) -> Result<Value> {
    let entries: Vec<Value> = wedge
        .entries
        .iter()
        .map(|e| {
            ordered(vec![
                ("word", io::word_value(&e.word)),
                ("label", io::label_value(&e.label)),
                ("label_display", json!(e.label.to_string())),
            ])
        })
        .collect();
    let mut pairs = vec![
        ("entries", Value::Array(entries)),
        (
            "reduced_series",
            io::series_value(&wedge.series(assignment, true)?),
        ),
        (
            "loop_series",
            io::series_value(&wedge.loop_series(assignment)?),
        ),
    ];
    if check_multidegrees {
        pairs.push(("labels_match_words", json!(wedge.labels_match_words())));
    }
    if let Some(m) = lift_m {
        let lifts = wedge
            .entries
            .iter()
            .all(|e| freelie::lifts_through_thin(&e.label, m));
        pairs.push(("labels_lift", json!(lifts)));
    }
    Ok(ordered(pairs))
}

fn run_fiber(cli: &Cli, op: &FiberOp) -> Result<Value> {
    let fiber = FiberJson::parse(&read_input(cli)?)?;
    let assignment = fiber.assignment(cli.cap)?;
    match op {
        FiberOp::Porter => {
            let wedge = fiberdecomp::porter_fiber(fiber.m, &assignment)?;
            labeled_wedge_report(&wedge, &assignment, None, true)
        }
        FiberOp::Ganea => {
            let split = fiber.split.clone().ok_or_else(|| {
                Error::MalformedInput("ganea needs a \"split\" vertex list".to_string())
            })?;
            let rest: Vec<usize> = (1..=fiber.m).filter(|i| !split.contains(i)).collect();
            let b = suspension_wedge(&split, &assignment)?;
            let c = suspension_wedge(&rest, &assignment)?;
            let wedge = fiberdecomp::ganea_fiber(&b, &c)?;
            labeled_wedge_report(&wedge, &assignment, None, false)
        }
        FiberOp::Dm => {
            let wedge = fiberdecomp::dm_tower(fiber.m, &assignment)?;
            labeled_wedge_report(&wedge, &assignment, None, true)
        }
        FiberOp::Thin { refined } => {
            let flavor = if *refined {
                fiberdecomp::ThinFlavor::Refined
            } else {
                fiberdecomp::ThinFlavor::General
            };
            let wedge = fiberdecomp::thin_fiber(fiber.m, &assignment, flavor)?;
            labeled_wedge_report(&wedge, &assignment, Some(fiber.m), true)
        }
    }
}

fn obstructions_value(obs: &[nilcert::Obstruction]) -> Value {
    serde_json::to_value(obs).expect("obstruction serialization")
}

fn run_nilcert(cli: &Cli, op: &NilcertOp) -> Result<Value> {
    let exceptions = nilcert::default_exceptions();
    match op {
        NilcertOp::Certify => {
            let spec = GroupJson::parse(&read_input(cli)?)?.to_spec()?;
            let cert = nilcert::certify(&spec, &exceptions)?;
            Ok(ordered(vec![
                ("name", json!(spec.name)),
                ("p", json!(spec.p)),
                ("verdict", json!(cert.verdict.to_string())),
                (
                    "justification",
                    serde_json::to_value(cert.justification)
                        .map_err(|e| Error::MalformedInput(e.to_string()))?,
                ),
                (
                    "lower_bound_noncommutative",
                    json!(cert.lower_bound_noncommutative),
                ),
                ("obstructions", obstructions_value(&cert.obstructions)),
                ("trace", json!(cert.trace)),
            ]))
        }
        NilcertOp::Tables { prime_filter } => {
            let report = nilcert::reproduce_tables(&exceptions)?;
            let mismatches =
                nilcert::compare_with_expected(&report, nilcert::EXPECTED_RESULTS_JSON)?;
            let rows: Vec<Value> = report
                .rows
                .iter()
                .filter(|r| prime_filter.map(|p| r.p == p).unwrap_or(true))
                .map(|r| serde_json::to_value(r).expect("row serialization"))
                .collect();
            Ok(ordered(vec![
                ("rows", Value::Array(rows)),
                ("matches_expected", json!(mismatches.is_empty())),
                ("mismatches", json!(mismatches)),
            ]))
        }
    }
}

fn run(cli: &Cli) -> Result<Value> {
    match &cli.cmd {
        Cmd::Complex { subset } => run_complex(cli, subset),
        Cmd::Polyprod { op } => run_polyprod(cli, op),
        Cmd::Lie { op } => run_lie(cli, op),
        Cmd::Fiber { op } => run_fiber(cli, op),
        Cmd::Nilcert { op } => run_nilcert(cli, op),
    }
}

/// Human summary: top-level scalars and short arrays, nested content as
/// item counts; special-cased table rows. JSON is the contract.
fn render_text(value: &Value) -> String {
    let mut out = String::new();
    let Some(map) = value.as_object() else {
        return value.to_string();
    };
    for (key, v) in map {
        match v {
            Value::Array(items) if key == "rows" => {
                for row in items {
                    let name = row["name"].as_str().unwrap_or("?");
                    let p = &row["p"];
                    let verdict = row["verdict"].as_str().unwrap_or("?");
                    let just = row["justification"].as_str().unwrap_or("?");
                    let flag = if row["paper_discrepancy"].as_bool() == Some(true) {
                        "  [paper-discrepancy]"
                    } else {
                        ""
                    };
                    out.push_str(&format!("{name}@p={p}: {verdict} ({just}){flag}\n"));
                }
            }
            Value::Array(items) => {
                let all_scalar = items
                    .iter()
                    .all(|i| !matches!(i, Value::Array(_) | Value::Object(_)));
                if all_scalar {
                    let rendered: Vec<String> = items.iter().map(|i| i.to_string()).collect();
                    out.push_str(&format!("{key}: [{}]\n", rendered.join(", ")));
                } else {
                    out.push_str(&format!("{key}: {} item(s)\n", items.len()));
                }
            }
            Value::Object(_) => out.push_str(&format!("{key}: <object>\n")),
            scalar => out.push_str(&format!("{key}: {scalar}\n")),
        }
    }
    out
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::MalformedInput(_) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.cap < 1 {
        eprintln!("{}", json!({"error": {"kind": "malformed_input", "message": "--cap must be at least 1"}}));
        return ExitCode::from(2);
    }
    if let Some(jobs) = cli.jobs {
        // Best effort; a pool may already exist in tests.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    match run(&cli) {
        Ok(report) => {
            match cli.format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("report serialization")
                ),
                Format::Text => print!("{}", render_text(&report)),
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            let code = exit_code_for(&err);
            let kind = if code == 2 { "malformed_input" } else { "gate_or_validation" };
            eprintln!(
                "{}",
                json!({"error": {"kind": kind, "message": err.to_string()}})
            );
            ExitCode::from(code)
        }
    }
}
