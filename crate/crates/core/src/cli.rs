//! Command-line front end. [`dispatch`] runs one command on an argument
//! list and returns its exit status and output instead of printing, so the
//! binary is a thin wrapper and tests can drive it directly.

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::automorphism::{
    check_general_portrait, enumerate_generators, is_finite, level_group_order, truncated_order, MinimalDfa,
    Portrait, PortraitDoc,
};
use crate::error::{Error, Result};
use crate::graph::Dfa;
use crate::io::{load_automaton, read, AutomatonDoc, MorphismDoc};
use crate::language::geometric_minimization;
use crate::minimization::{
    classical_minimize, cone_equivalent, geometric_moore, is_minimal, minimize_reachable, stabilization_bound,
};

#[derive(Parser, Debug)]
#[command(name = "conetype", version, about = "Self-similar trees as automata")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Automaton JSON file.
    #[arg(long)]
    automaton: String,
    /// Plain-text output instead of JSON.
    #[arg(long)]
    plain: bool,
    /// Require a geometrically minimal input instead of minimizing it.
    #[arg(long)]
    strict: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Checks an automaton document.
    Validate(#[command(flatten)] Common),
    /// Geometric minimization: quotient, covering and partition.
    Minimize(#[command(flatten)] Common),
    /// Classical (labelled) minimization.
    ClassicalMinimize(#[command(flatten)] Common),
    /// Whether the input equals its geometric minimization.
    IsMinimal(#[command(flatten)] Common),
    /// Whether the automorphism group of the path tree is finite.
    IsFinite(#[command(flatten)] Common),
    /// Order of the automorphism group modulo the rigid stabilizer of level n+1.
    Order {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        level: usize,
    },
    /// Vertex counts and group orders for levels 0..=depth.
    Levels {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        depth: usize,
    },
    /// Enumerates the generating set up to a word length.
    Generators {
        #[command(flatten)]
        common: Common,
        #[arg(long = "max-len")]
        max_len: usize,
    },
    /// Checks that a portrait defines an automorphism up to a depth.
    VerifyPortrait {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        portrait: String,
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
    /// Applies a portrait over the minimization to a word of the input.
    Act {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        portrait: String,
        #[arg(long)]
        word: String,
        #[arg(long)]
        trace: bool,
    },
    /// Pushes a word down to the minimization.
    Push {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        word: String,
    },
    /// Lifts a word of the minimization to the input.
    Lift {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        word: String,
    },
    /// Decides whether two states have isomorphic cones (to a depth, if given).
    ConeEq {
        #[command(flatten)]
        common: Common,
        /// Two state names separated by a comma.
        #[arg(long, value_delimiter = ',', num_args = 1)]
        states: Vec<String>,
        #[arg(long)]
        depth: Option<usize>,
    },
}

/// Exit status and captured output streams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    json: Value,
    plain: String,
}

/// Runs the command line `argv` (including the program name).
pub fn dispatch<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let plain = common(&cli.command).plain;
    match run(&cli.command) {
        Ok(report) => Outcome {
            code: 0,
            stdout: if plain {
                report.plain + "\n"
            } else {
                serde_json::to_string_pretty(&report.json).expect("json output") + "\n"
            },
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: json!({"error": {"code": e.code(), "message": e.to_string()}}).to_string() + "\n",
        },
    }
}

fn common(cmd: &Command) -> &Common {
    match cmd {
        Command::Validate(c)
        | Command::Minimize(c)
        | Command::ClassicalMinimize(c)
        | Command::IsMinimal(c)
        | Command::IsFinite(c) => c,
        Command::Order { common, .. }
        | Command::Levels { common, .. }
        | Command::Generators { common, .. }
        | Command::VerifyPortrait { common, .. }
        | Command::Act { common, .. }
        | Command::Push { common, .. }
        | Command::Lift { common, .. }
        | Command::ConeEq { common, .. } => common,
    }
}

/// The minimal automaton a command works over, and the quotient document
/// when the input had to be minimized.
struct Base {
    base: MinimalDfa,
    quotient: Option<Value>,
    dropped: Vec<String>,
}

impl Base {
    fn annotate(&self, mut json: Value) -> Value {
        let obj = json.as_object_mut().expect("object report");
        obj.insert("minimized".into(), json!(self.quotient.is_some()));
        if let Some(q) = &self.quotient {
            obj.insert("quotient".into(), q.clone());
        }
        if !self.dropped.is_empty() {
            obj.insert("dropped_unreachable".into(), json!(self.dropped));
        }
        json
    }
}

fn minimal_base(dfa: Dfa, strict: bool) -> Result<Base> {
    if strict {
        return Ok(Base {
            base: MinimalDfa::new(dfa)?,
            quotient: None,
            dropped: Vec::new(),
        });
    }
    let g = dfa.graph();
    let seen = g.reachable_from(g.root());
    let dropped: Vec<String> = (0..g.num_states())
        .filter(|&q| !seen[q])
        .map(|q| g.state_name(q).to_string())
        .collect();
    let dfa = if dropped.is_empty() { dfa } else { dfa.reachable_closure(dfa.root())? };
    if is_minimal(dfa.graph())? {
        let quotient = (!dropped.is_empty()).then(|| doc_value(&AutomatonDoc::from_dfa(&dfa)));
        return Ok(Base {
            base: MinimalDfa::new(dfa)?,
            quotient,
            dropped,
        });
    }
    let ml = geometric_minimization(&dfa)?;
    Ok(Base {
        quotient: Some(doc_value(&AutomatonDoc::from_dfa(ml.quotient_dfa()))),
        base: ml.quotient_dfa().clone(),
        dropped,
    })
}

fn doc_value<T: serde::Serialize>(doc: &T) -> Value {
    serde_json::to_value(doc).expect("document serializes")
}

fn load_portrait(path: &str) -> Result<PortraitDoc> {
    PortraitDoc::from_json(&read(path)?)
}

fn run(cmd: &Command) -> Result<Report> {
    let c = common(cmd);
    let dfa = load_automaton(&c.automaton)?;
    match cmd {
        Command::Validate(_) => {
            let g = dfa.graph();
            Ok(Report {
                json: json!({
                    "valid": true,
                    "states": g.num_states(),
                    "edges": g.num_edges(),
                    "alphabet": dfa.alphabet(),
                    "connected": g.is_connected(),
                }),
                plain: "valid".into(),
            })
        }
        Command::Minimize(_) => {
            let res = minimize_reachable(dfa.graph());
            let quotient = AutomatonDoc::from_dfa(&crate::graph::canonical_labelling(&res.quotient));
            let partition = res.classes.named(res.projection.source());
            let plain = partition.iter().map(|b| b.join(" ")).collect::<Vec<_>>().join("\n");
            Ok(Report {
                json: json!({
                    "quotient": doc_value(&quotient),
                    "morphism": doc_value(&MorphismDoc::from_morphism(&res.projection)),
                    "partition": partition,
                    "dropped_unreachable": res.dropped_unreachable,
                }),
                plain,
            })
        }
        Command::ClassicalMinimize(_) => {
            let m = classical_minimize(&dfa)?;
            let doc = AutomatonDoc::from_dfa(&m);
            Ok(Report {
                json: doc_value(&doc),
                plain: m.graph().states().join(" "),
            })
        }
        Command::IsMinimal(_) => {
            let minimal = is_minimal(dfa.graph())?;
            Ok(Report {
                json: json!({ "minimal": minimal }),
                plain: minimal.to_string(),
            })
        }
        Command::IsFinite(c) => {
            let b = minimal_base(dfa, c.strict)?;
            let report = is_finite(b.base.graph())?;
            let g = b.base.graph();
            let witnesses: Vec<Value> = report
                .witnesses
                .iter()
                .map(|&(e, f)| json!([g.edge(e).id, g.edge(f).id]))
                .collect();
            Ok(Report {
                json: b.annotate(json!({ "finite": report.finite, "witnesses": witnesses })),
                plain: report.finite.to_string(),
            })
        }
        Command::Order { common, level } => {
            let b = minimal_base(dfa, common.strict)?;
            let order = truncated_order(&b.base, *level)?.to_string();
            Ok(Report {
                json: b.annotate(json!({ "level": level, "order": order })),
                plain: order,
            })
        }
        Command::Levels { common, depth } => {
            let b = minimal_base(dfa, common.strict)?;
            let mut rows = Vec::new();
            let mut lines = Vec::new();
            for n in 0..=*depth {
                let vertices: u128 = b.base.level_counts(n).iter().fold(0u128, |a, &c| a.saturating_add(c));
                let level_order = level_group_order(&b.base, n)?.to_string();
                let order = truncated_order(&b.base, n)?.to_string();
                lines.push(format!("{n} {vertices} {level_order} {order}"));
                rows.push(json!({
                    "level": n,
                    "vertices": vertices.to_string(),
                    "level_order": level_order,
                    "truncated_order": order,
                }));
            }
            Ok(Report {
                json: b.annotate(json!({ "levels": rows })),
                plain: lines.join("\n"),
            })
        }
        Command::Generators { common, max_len } => {
            let b = minimal_base(dfa, common.strict)?;
            let gens = enumerate_generators(&b.base, *max_len)?;
            let g = b.base.graph();
            let mut rows = Vec::new();
            let mut lines = Vec::new();
            for gen in &gens {
                let cycles: Vec<Vec<&str>> = gen
                    .sigma
                    .perm
                    .cycles()
                    .into_iter()
                    .map(|c| c.into_iter().map(|a| b.base.letter(a)).collect())
                    .collect();
                let word = b.base.format_word(&gen.word);
                let state = g.state_name(gen.sigma.state);
                lines.push(format!("[{word}] {state} {cycles:?}"));
                rows.push(json!({ "word": word, "state": state, "perm": cycles }));
            }
            Ok(Report {
                json: b.annotate(json!({ "count": gens.len(), "generators": rows })),
                plain: lines.join("\n"),
            })
        }
        Command::VerifyPortrait { common, portrait, depth } => {
            let doc = load_portrait(portrait)?;
            let (valid, offending, reason) = match &doc {
                PortraitDoc::Finite { .. } => {
                    let gp = doc.to_general(&dfa)?;
                    let check = check_general_portrait(&gp, *depth);
                    (check.valid, check.offending.map(|w| dfa.format_word(&w)), None)
                }
                _ => {
                    let b = minimal_base(dfa, common.strict)?;
                    match doc.to_portrait(&b.base) {
                        Ok(_) => (true, None, None),
                        Err(e @ Error::NotAdmissible { .. }) => (false, None, Some(e.to_string())),
                        Err(e) => return Err(e),
                    }
                }
            };
            let mut json = json!({ "valid": valid, "depth": depth, "offending": offending });
            if let Some(r) = reason {
                json["reason"] = json!(r);
            }
            Ok(Report {
                json,
                plain: valid.to_string(),
            })
        }
        Command::Act {
            common,
            portrait,
            word,
            trace,
        } => {
            let doc = load_portrait(portrait)?;
            if common.strict {
                let base = MinimalDfa::new(dfa)?;
                let p = doc.to_portrait(&base)?;
                let w = base.parse_word(word)?;
                let img = base.format_word(&p.act_word(&w)?);
                return Ok(Report {
                    json: json!({ "word": img }),
                    plain: img,
                });
            }
            let ml = geometric_minimization(&dfa)?;
            let q = ml.quotient_dfa();
            let p: Portrait = doc.to_portrait(q)?;
            let w = dfa.parse_word(word)?;
            let t = ml.act_trace(&p, &w)?;
            let img = dfa.format_word(&t.lifted);
            let mut json = json!({ "word": img });
            let mut plain = img.clone();
            if *trace {
                let (pushed, image) = (q.format_word(&t.pushed), q.format_word(&t.image));
                json["trace"] = json!({ "pushed": pushed, "image": image, "lifted": img });
                plain = format!(
                    "Step 1: P({}) = {pushed}\nStep 2: g({pushed}) = {image}\nStep 3: P^-1({image}) = {img}",
                    dfa.format_word(&w)
                );
            }
            Ok(Report { json, plain })
        }
        Command::Push { word, .. } => {
            let ml = geometric_minimization(&dfa)?;
            let w = ml.push_word(&dfa.parse_word(word)?)?;
            let s = ml.quotient_dfa().format_word(&w);
            Ok(Report {
                json: json!({ "word": s }),
                plain: s,
            })
        }
        Command::Lift { word, .. } => {
            let ml = geometric_minimization(&dfa)?;
            let w = ml.lift_word(&ml.quotient_dfa().parse_word(word)?)?;
            let s = dfa.format_word(&w);
            Ok(Report {
                json: json!({ "word": s }),
                plain: s,
            })
        }
        Command::ConeEq { states, depth, .. } => {
            let [a, b] = states.as_slice() else {
                return Err(Error::Format("--states takes exactly two state names".into()));
            };
            let g = dfa.graph();
            let (qa, qb) = (g.state_index(a)?, g.state_index(b)?);
            let equivalent = match depth {
                Some(d) => cone_equivalent(g, qa, qb, *d)?,
                None => {
                    let class = geometric_moore(g)?.class_map();
                    class[qa] == class[qb]
                }
            };
            let used = depth.unwrap_or_else(|| stabilization_bound(g.num_states()));
            Ok(Report {
                json: json!({ "equivalent": equivalent, "depth": used }),
                plain: equivalent.to_string(),
            })
        }
    }
}
