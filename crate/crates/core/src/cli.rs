//! The `triad` command line.
//!
//! Exit codes: 0 success or a true answer, 1 a false answer, 2 an invariant or
//! runtime error, 3 a syntax error in the workspace file, 4 a usage error.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::kernel::{verify_category, Atom, Morphism, NamedSet};
use crate::properties::{count_multiset, count_set, NumeralScale};
use crate::structures::{
    decompose, deduce, deduction_named_set, derive_grammar, parse_word, render_word,
    rule_as_named_set, run_tm, Derivation, Rule, Structure,
};
use crate::textio::{
    parse_workspace_with_warnings, serialize_workspace, write_atom, DiagnosticKind, Workspace,
};
use crate::views::{
    embed_set, fuzzy_as_named_set, multiplicity_from_tokens, multiset_as_named_set,
    named_set_as_fuzzy, named_set_as_multiset, tokenize, Scale,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_RUNTIME: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_USAGE: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "triad",
    version,
    about = "Finite named sets and the structures built from them"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and check a workspace, printing object counts.
    Validate { file: PathBuf },
    /// Print the classification flags of a named set.
    Classify { file: PathBuf, id: String },
    /// Names of one element of a named set.
    Names {
        file: PathBuf,
        id: String,
        elem: String,
    },
    /// Is Y a named subset of X?
    Subset {
        file: PathBuf,
        y: String,
        x: String,
        #[arg(long)]
        weak: bool,
    },
    /// Check that a morphism commutes.
    CheckMorphism { file: PathBuf, f: String },
    /// Compose two morphisms, first F then G.
    Compose { file: PathBuf, f: String, g: String },
    /// Verify the category laws over every named set and morphism of the file.
    CategoryCheck { file: PathBuf },
    /// Embed a plain set as a singlenamed set.
    Embed {
        file: PathBuf,
        set: String,
        name: String,
    },
    /// Read a named set as a multiset.
    AsMultiset {
        file: PathBuf,
        id: String,
        #[arg(long, default_value_t = 10)]
        base: usize,
        /// Treat the named set as token form rather than multiplicity form.
        #[arg(long)]
        tokens: bool,
    },
    /// Read a named set as a fuzzy set.
    AsFuzzy {
        file: PathBuf,
        id: String,
        #[arg(long)]
        scale: String,
    },
    /// The named-set view of a multiset, fuzzy set or property.
    ToNamedset {
        file: PathBuf,
        id: String,
        #[arg(long, default_value_t = 10)]
        base: usize,
    },
    /// Token form of a multiset.
    Tokenize { file: PathBuf, id: String },
    /// Check that a declared order is a lattice.
    LatticeCheck { file: PathBuf, l: String },
    /// Least upper bound of two lattice elements.
    Join {
        file: PathBuf,
        l: String,
        a: String,
        b: String,
    },
    /// Greatest lower bound of two lattice elements.
    Meet {
        file: PathBuf,
        l: String,
        a: String,
        b: String,
    },
    /// Cardinality numeral of a set or multiset.
    Count {
        file: PathBuf,
        id: String,
        #[arg(long, default_value_t = 10)]
        base: usize,
    },
    /// Successor of a numeral.
    Succ {
        numeral: String,
        #[arg(long, default_value_t = 10)]
        base: usize,
    },
    /// Value of a property at one object.
    ApplyProperty { file: PathBuf, p: String, u: String },
    /// Theorems deducible within a number of rule rounds.
    Deduce {
        file: PathBuf,
        c: String,
        #[arg(long)]
        depth: usize,
    },
    /// Theorems named by the axioms they use.
    DeductionSet {
        file: PathBuf,
        c: String,
        #[arg(long)]
        depth: usize,
    },
    /// Run a Mealy automaton on a word.
    RunAutomaton {
        file: PathBuf,
        a: String,
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Search for a derivation of a word.
    Derive {
        file: PathBuf,
        g: String,
        #[arg(allow_hyphen_values = true)]
        word: String,
        #[arg(long)]
        max_steps: usize,
        #[arg(long)]
        max_len: usize,
    },
    /// Run a Turing machine on a word.
    RunTm {
        file: PathBuf,
        t: String,
        #[arg(allow_hyphen_values = true)]
        word: String,
        #[arg(long)]
        max_steps: usize,
    },
    /// Print the triad tree of a machine, automaton, grammar or calculus.
    Decompose { file: PathBuf, id: String },
    /// One rule, by 0-based index in sorted order, as a named set.
    RuleAsNamedset {
        file: PathBuf,
        id: String,
        index: usize,
    },
    /// Canonicalize a workspace file.
    Fmt {
        file: PathBuf,
        /// Rewrite the file instead of printing to standard output.
        #[arg(long)]
        in_place: bool,
    },
}

/// What a command printed and how it exited.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    code: i32,
    message: String,
}

fn runtime(message: impl ToString) -> Failure {
    Failure {
        code: EXIT_RUNTIME,
        message: message.to_string(),
    }
}

type Run = Result<(i32, String), Failure>;

/// Sorted `key=value` lines.
#[derive(Default)]
struct Report(BTreeMap<&'static str, String>);

impl Report {
    fn set(&mut self, key: &'static str, value: impl ToString) -> &mut Self {
        self.0.insert(key, value.to_string());
        self
    }

    fn render(&self) -> String {
        self.0.iter().map(|(k, v)| format!("{k}={v}\n")).collect()
    }
}

fn list<'a>(atoms: impl IntoIterator<Item = &'a Atom>) -> String {
    atoms
        .into_iter()
        .map(write_atom)
        .collect::<Vec<_>>()
        .join(" ")
}

fn atom(text: &str) -> Result<Atom, Failure> {
    Atom::new(text).map_err(runtime)
}

fn scale(base: usize) -> Result<NumeralScale, Failure> {
    NumeralScale::with_base(base).map_err(runtime)
}

fn answer(holds: bool) -> i32 {
    if holds {
        EXIT_OK
    } else {
        EXIT_FALSE
    }
}

/// Loads a workspace; warnings go to `stderr`.
fn load(path: &Path, stderr: &mut String) -> Result<Workspace, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| runtime(format!("cannot read {}: {e}", path.display())))?;
    match parse_workspace_with_warnings(&text) {
        Ok((ws, warnings)) => {
            for w in warnings {
                stderr.push_str(&format!("{}: {w}\n", path.display()));
            }
            Ok(ws)
        }
        Err(diags) => {
            let code = if diags.iter().any(|d| d.kind == DiagnosticKind::Syntax) {
                EXIT_PARSE
            } else {
                EXIT_RUNTIME
            };
            let message = diags
                .iter()
                .map(|d| format!("{}: {d}", path.display()))
                .collect::<Vec<_>>()
                .join("\n");
            Err(Failure { code, message })
        }
    }
}

fn get<'a, T>(map: &'a BTreeMap<Atom, T>, kind: &str, id: &str) -> Result<&'a T, Failure> {
    map.get(&atom(id)?)
        .ok_or_else(|| runtime(format!("no {kind} `{id}`")))
}

/// Text of a single converted object as a canonical block.
fn block(fill: impl FnOnce(&mut Workspace)) -> String {
    let mut ws = Workspace::default();
    fill(&mut ws);
    serialize_workspace(&ws)
}

fn named_block(x: NamedSet) -> String {
    block(|ws| {
        ws.named_sets.insert(x.id().clone(), x);
    })
}

/// Finds `id` among the kinds accepted by a command; it must match exactly one.
fn pick<T>(id: &str, candidates: Vec<(&str, Option<T>)>) -> Result<T, Failure> {
    let found: Vec<(&str, T)> = candidates
        .into_iter()
        .filter_map(|(k, v)| v.map(|v| (k, v)))
        .collect();
    match found.len() {
        0 => Err(runtime(format!("no object `{id}` of a suitable kind"))),
        1 => Ok(found.into_iter().next().unwrap().1),
        _ => Err(runtime(format!(
            "`{id}` is ambiguous: {}",
            found.iter().map(|(k, _)| *k).collect::<Vec<_>>().join(", ")
        ))),
    }
}

fn morphism_report(m: &Morphism, report: &mut Report) -> bool {
    let c = m.check();
    report
        .set("id", write_atom(m.id()))
        .set("source", write_atom(m.source().id()))
        .set("target", write_atom(m.target().id()))
        .set("commutes", c.commutes);
    if let Some((x, n)) = &c.witness {
        report.set("witness", format!("{}->{}", write_atom(x), write_atom(n)));
    }
    c.commutes
}

fn execute(command: Command, stderr: &mut String) -> Run {
    let mut r = Report::default();
    let code = match command {
        Command::Validate { file } => {
            let ws = load(&file, stderr)?;
            for (kind, n) in ws.counts() {
                r.0.insert(kind, n.to_string());
            }
            r.set("status", "ok");
            EXIT_OK
        }
        Command::Classify { file, id } => {
            let ws = load(&file, stderr)?;
            let x = get(&ws.named_sets, "namedset", &id)?;
            for (k, v) in x.classify().entries() {
                r.set(k, v);
            }
            EXIT_OK
        }
        Command::Names { file, id, elem } => {
            let ws = load(&file, stderr)?;
            let x = get(&ws.named_sets, "namedset", &id)?;
            let names = x.names_of(&atom(&elem)?).map_err(runtime)?;
            r.set("element", write_atom(&atom(&elem)?))
                .set("count", names.len())
                .set("names", list(&names));
            EXIT_OK
        }
        Command::Subset { file, y, x, weak } => {
            let ws = load(&file, stderr)?;
            let ys = get(&ws.named_sets, "namedset", &y)?;
            let xs = get(&ws.named_sets, "namedset", &x)?;
            let holds = ys.is_named_subset(xs, weak);
            r.set("mode", if weak { "weak" } else { "strict" })
                .set("result", holds);
            answer(holds)
        }
        Command::CheckMorphism { file, f } => {
            let ws = load(&file, stderr)?;
            let m = get(&ws.morphisms, "morphism", &f)?;
            answer(morphism_report(m, &mut r))
        }
        Command::Compose { file, f, g } => {
            let ws = load(&file, stderr)?;
            let first = get(&ws.morphisms, "morphism", &f)?;
            let second = get(&ws.morphisms, "morphism", &g)?;
            let composite = first.then(second).map_err(runtime)?;
            let render = |m: &BTreeMap<Atom, Atom>| {
                m.iter()
                    .map(|(a, b)| format!("{}->{}", write_atom(a), write_atom(b)))
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            r.set("f", render(composite.support_map()))
                .set("g", render(composite.name_map()));
            answer(morphism_report(&composite, &mut r))
        }
        Command::CategoryCheck { file } => {
            let ws = load(&file, stderr)?;
            let objects: Vec<NamedSet> = ws.named_sets.values().cloned().collect();
            let morphisms: Vec<Morphism> = ws.morphisms.values().cloned().collect();
            let report = verify_category(&objects, &morphisms).map_err(runtime)?;
            let non_commuting = report.non_commuting();
            r.set("objects", objects.len())
                .set("morphisms", morphisms.len())
                .set("non_commuting", list(non_commuting.iter().copied()))
                .set("composites_checked", report.composites.len())
                .set("composites_failed", report.failed_composites())
                .set("associativity_checked", report.associativity.len())
                .set("associativity_failed", report.failed_associativity())
                .set("identities_checked", report.identities.len())
                .set("identities_failed", report.failed_identities())
                .set("result", report.all_pass());
            answer(report.all_pass())
        }
        Command::Embed { file, set, name } => {
            let ws = load(&file, stderr)?;
            let s = get(&ws.sets, "set", &set)?;
            return Ok((EXIT_OK, named_block(embed_set(s, &atom(&name)?))));
        }
        Command::AsMultiset {
            file,
            id,
            base,
            tokens,
        } => {
            let ws = load(&file, stderr)?;
            let x = get(&ws.named_sets, "namedset", &id)?;
            let m = if tokens {
                multiplicity_from_tokens(x)
            } else {
                named_set_as_multiset(x, &scale(base)?)
            }
            .map_err(runtime)?;
            return Ok((
                EXIT_OK,
                block(|ws| {
                    ws.multisets.insert(m.name().clone(), m);
                }),
            ));
        }
        Command::AsFuzzy { file, id, scale } => {
            let ws = load(&file, stderr)?;
            let x = get(&ws.named_sets, "namedset", &id)?;
            let scale = match scale.split_once(':') {
                Some(("lattice", l)) => Scale::Lattice(get(&ws.lattices, "lattice", l)?.clone()),
                _ => match scale.as_str() {
                    "unit" => Scale::Unit,
                    "sym" => Scale::Symmetric,
                    "real" => Scale::RealLine,
                    other => {
                        return Err(Failure {
                            code: EXIT_USAGE,
                            message: format!(
                                "unknown scale `{other}` (expected unit, sym, real or lattice:ID)"
                            ),
                        })
                    }
                },
            };
            let fuzzy = named_set_as_fuzzy(x, &scale).map_err(runtime)?;
            let lattice = match fuzzy.scale() {
                Scale::Lattice(l) => Some(l.clone()),
                _ => None,
            };
            return Ok((
                EXIT_OK,
                block(|ws| {
                    if let Some(l) = lattice {
                        ws.lattices.insert(l.id().clone(), l);
                    }
                    ws.fuzzy_sets.insert(fuzzy.id().clone(), fuzzy);
                }),
            ));
        }
        Command::ToNamedset { file, id, base } => {
            let ws = load(&file, stderr)?;
            let key = atom(&id)?;
            let scale = scale(base)?;
            let named = pick(
                &id,
                vec![
                    (
                        "multiset",
                        ws.multisets
                            .get(&key)
                            .map(|m| multiset_as_named_set(m, &scale)),
                    ),
                    ("fuzzy", ws.fuzzy_sets.get(&key).map(fuzzy_as_named_set)),
                    (
                        "property",
                        ws.properties.get(&key).map(|p| p.as_named_set()),
                    ),
                ],
            )?;
            return Ok((EXIT_OK, named_block(named)));
        }
        Command::Tokenize { file, id } => {
            let ws = load(&file, stderr)?;
            let m = get(&ws.multisets, "multiset", &id)?;
            return Ok((EXIT_OK, named_block(tokenize(m).map_err(runtime)?)));
        }
        Command::LatticeCheck { file, l } => {
            let ws = load(&file, stderr)?;
            let lattice = get(&ws.lattices, "lattice", &l)?;
            let report = lattice.validate();
            r.set("valid", report.is_valid());
            if let Some(t) = &report.top {
                r.set("top", write_atom(t));
            }
            if let Some(b) = &report.bottom {
                r.set("bottom", write_atom(b));
            }
            if let Some(f) = &report.failure {
                r.set("failure", f.kind());
                if let Some((a, b)) = f.pair() {
                    r.set("witness", format!("{} {}", write_atom(a), write_atom(b)));
                }
            }
            answer(report.is_valid())
        }
        Command::Join { file, l, a, b } => {
            let ws = load(&file, stderr)?;
            let lattice = get(&ws.lattices, "lattice", &l)?;
            let join = lattice.join(&atom(&a)?, &atom(&b)?).map_err(runtime)?;
            r.set("join", write_atom(&join));
            EXIT_OK
        }
        Command::Meet { file, l, a, b } => {
            let ws = load(&file, stderr)?;
            let lattice = get(&ws.lattices, "lattice", &l)?;
            let meet = lattice.meet(&atom(&a)?, &atom(&b)?).map_err(runtime)?;
            r.set("meet", write_atom(&meet));
            EXIT_OK
        }
        Command::Count { file, id, base } => {
            let ws = load(&file, stderr)?;
            let key = atom(&id)?;
            let scale = scale(base)?;
            let (kind, numeral) = pick(
                &id,
                vec![
                    (
                        "set",
                        ws.sets.get(&key).map(|s| ("set", count_set(s, &scale))),
                    ),
                    (
                        "multiset",
                        ws.multisets
                            .get(&key)
                            .map(|m| ("multiset", count_multiset(m, &scale))),
                    ),
                ],
            )?;
            r.set("id", write_atom(&key))
                .set("kind", kind)
                .set("base", base)
                .set("count", numeral);
            EXIT_OK
        }
        Command::Succ { numeral, base } => {
            let next = scale(base)?.successor(&numeral).map_err(runtime)?;
            r.set("base", base)
                .set("numeral", &numeral)
                .set("successor", next);
            EXIT_OK
        }
        Command::ApplyProperty { file, p, u } => {
            let ws = load(&file, stderr)?;
            let prop = get(&ws.properties, "property", &p)?;
            let object = atom(&u)?;
            r.set("object", write_atom(&object));
            match prop.apply(&object) {
                Some(v) => r.set("defined", true).set("value", write_atom(v)),
                None => r.set("defined", false),
            };
            EXIT_OK
        }
        Command::Deduce { file, c, depth } => {
            let ws = load(&file, stderr)?;
            let calculus = get(&ws.calculi, "calculus", &c)?;
            let theorems = deduce(calculus, depth);
            r.set("depth", depth)
                .set("count", theorems.len())
                .set("theorems", list(&theorems));
            EXIT_OK
        }
        Command::DeductionSet { file, c, depth } => {
            let ws = load(&file, stderr)?;
            let calculus = get(&ws.calculi, "calculus", &c)?;
            return Ok((EXIT_OK, named_block(deduction_named_set(calculus, depth))));
        }
        Command::RunAutomaton { file, a, word } => {
            let ws = load(&file, stderr)?;
            let automaton = get(&ws.automata, "automaton", &a)?;
            let run = automaton
                .run(&parse_word(&word).map_err(runtime)?)
                .map_err(runtime)?;
            r.set("accepted", run.accepted)
                .set("end", write_atom(&run.end))
                .set("output", render_word(&run.output));
            EXIT_OK
        }
        Command::Derive {
            file,
            g,
            word,
            max_steps,
            max_len,
        } => {
            let ws = load(&file, stderr)?;
            let grammar = get(&ws.grammars, "grammar", &g)?;
            let target = parse_word(&word).map_err(runtime)?;
            match derive_grammar(grammar, &target, max_steps, max_len).map_err(runtime)? {
                Derivation::Found(forms) => {
                    let path = forms
                        .iter()
                        .map(|f| render_word(f))
                        .collect::<Vec<_>>()
                        .join(" => ");
                    r.set("found", true)
                        .set("steps", forms.len() - 1)
                        .set("derivation", path);
                    EXIT_OK
                }
                Derivation::NotFoundWithinBounds => {
                    r.set("found", false);
                    EXIT_FALSE
                }
            }
        }
        Command::RunTm {
            file,
            t,
            word,
            max_steps,
        } => {
            let ws = load(&file, stderr)?;
            let machine = get(&ws.machines, "tm", &t)?;
            let run = run_tm(machine, &parse_word(&word).map_err(runtime)?, max_steps)
                .map_err(runtime)?;
            r.set("halted", run.halted)
                .set("steps", run.steps)
                .set("tape", render_word(&run.tape));
            EXIT_OK
        }
        Command::Decompose { file, id } => {
            let ws = load(&file, stderr)?;
            let key = atom(&id)?;
            let structure = pick(
                &id,
                vec![
                    ("tm", ws.machines.get(&key).map(Structure::Turing)),
                    ("automaton", ws.automata.get(&key).map(Structure::Automaton)),
                    ("grammar", ws.grammars.get(&key).map(Structure::Grammar)),
                    ("calculus", ws.calculi.get(&key).map(Structure::Calculus)),
                ],
            )?;
            return Ok((EXIT_OK, decompose(structure).outline()));
        }
        Command::RuleAsNamedset { file, id, index } => {
            let ws = load(&file, stderr)?;
            let key = atom(&id)?;
            let rules: Vec<Rule> = pick(
                &id,
                vec![
                    (
                        "tm",
                        ws.machines
                            .get(&key)
                            .map(|t| t.rules().iter().map(Rule::Turing).collect::<Vec<_>>()),
                    ),
                    (
                        "grammar",
                        ws.grammars
                            .get(&key)
                            .map(|g| g.productions().iter().map(Rule::Production).collect()),
                    ),
                    (
                        "calculus",
                        ws.calculi
                            .get(&key)
                            .map(|c| c.rules().iter().map(Rule::Ground).collect()),
                    ),
                ],
            )?;
            let rule = rules.get(index).ok_or_else(|| {
                runtime(format!(
                    "`{id}` has {} rules, no index {index}",
                    rules.len()
                ))
            })?;
            let named = rule_as_named_set(atom(&format!("{id}.{index}"))?, *rule);
            return Ok((EXIT_OK, named_block(named)));
        }
        Command::Fmt { file, in_place } => {
            let ws = load(&file, stderr)?;
            let text = serialize_workspace(&ws);
            if in_place {
                fs::write(&file, &text)
                    .map_err(|e| runtime(format!("cannot write {}: {e}", file.display())))?;
                return Ok((EXIT_OK, String::new()));
            }
            return Ok((EXIT_OK, text));
        }
    };
    Ok((code, r.render()))
}

/// Runs one command line (program name first) without touching the process.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let mut stderr = String::new();
    match execute(cli.command, &mut stderr) {
        Ok((code, stdout)) => Outcome {
            code,
            stdout,
            stderr,
        },
        Err(f) => {
            stderr.push_str(&f.message);
            stderr.push('\n');
            Outcome {
                code: f.code,
                stdout: String::new(),
                stderr,
            }
        }
    }
}
