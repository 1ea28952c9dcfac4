use super::lexer::is_bare_char;
use super::Workspace;
use crate::kernel::Atom;
use crate::structures::TmAction;

fn is_bare(s: &str) -> bool {
    !s.is_empty() && s.chars().all(is_bare_char) && !s.contains("->")
}

fn quoted(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if matches!(c, '"' | '\\') {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// Writes an atom bare when possible, otherwise double-quoted. A fraction
/// such as `-1/2` stays bare, since the reader joins `p/q` into one atom.
pub fn write_atom(atom: &Atom) -> String {
    let s = atom.as_str();
    let fraction = s
        .split_once('/')
        .is_some_and(|(p, q)| is_bare(p) && is_bare(q));
    if is_bare(s) || fraction {
        s.to_string()
    } else {
        quoted(s)
    }
}

/// Block ids are read as single tokens, so they never take the fraction form.
fn write_id(atom: &Atom) -> String {
    if is_bare(atom.as_str()) {
        atom.as_str().to_string()
    } else {
        quoted(atom.as_str())
    }
}

fn atoms<'a>(items: impl IntoIterator<Item = &'a Atom>) -> String {
    items
        .into_iter()
        .map(write_atom)
        .collect::<Vec<_>>()
        .join(" ")
}

fn mapping<'a>(items: impl IntoIterator<Item = (&'a Atom, &'a Atom)>, sep: &str) -> String {
    items
        .into_iter()
        .map(|(x, y)| format!("{}{sep}{}", write_atom(x), write_atom(y)))
        .collect::<Vec<_>>()
        .join(" ")
}

struct BlockWriter {
    out: String,
}

impl BlockWriter {
    fn new(kind: &str, id: &Atom) -> Self {
        BlockWriter {
            out: format!("{kind} {} {{\n", write_id(id)),
        }
    }

    /// Empty list keys are left out; the reader treats a missing key as empty.
    fn key(&mut self, key: &str, items: String) -> &mut Self {
        if !items.is_empty() {
            self.out.push_str(&format!("  {key}: {items};\n"));
        }
        self
    }

    fn finish(&mut self) -> String {
        let mut out = std::mem::take(&mut self.out);
        out.push_str("}\n");
        out
    }
}

/// Every block of the workspace in canonical form, one string per block, in
/// canonical kind order and sorted by id within each kind.
pub fn serialize_block_list(ws: &Workspace) -> Vec<String> {
    let mut blocks = Vec::new();
    for (id, s) in &ws.sets {
        blocks.push(
            BlockWriter::new("set", id)
                .key("elements", atoms(s.elements()))
                .finish(),
        );
    }
    for (id, x) in &ws.named_sets {
        blocks.push(
            BlockWriter::new("namedset", id)
                .key("support", atoms(x.support()))
                .key("names", atoms(x.reflector()))
                .key(
                    "rel",
                    mapping(x.relation().iter().map(|(a, b)| (a, b)), "->"),
                )
                .finish(),
        );
    }
    for (id, m) in &ws.morphisms {
        blocks.push(
            BlockWriter::new("morphism", id)
                .key("from", write_atom(m.source().id()))
                .key("to", write_atom(m.target().id()))
                .key("f", mapping(m.support_map(), "->"))
                .key("g", mapping(m.name_map(), "->"))
                .finish(),
        );
    }
    for (id, m) in &ws.multisets {
        let entries = m
            .multiplicity()
            .iter()
            .map(|(e, k)| format!("{}:{k}", write_atom(e)))
            .collect::<Vec<_>>()
            .join(" ");
        blocks.push(
            BlockWriter::new("multiset", id)
                .key("entries", entries)
                .finish(),
        );
    }
    for (id, l) in &ws.lattices {
        let order = l
            .strict_order()
            .iter()
            .map(|(x, y)| format!("{}<={}", write_atom(x), write_atom(y)))
            .collect::<Vec<_>>()
            .join(" ");
        blocks.push(
            BlockWriter::new("lattice", id)
                .key("carrier", atoms(l.carrier()))
                .key("order", order)
                .finish(),
        );
    }
    for (id, f) in &ws.fuzzy_sets {
        let mu = f
            .membership()
            .iter()
            .map(|(x, d)| format!("{}:{}", write_atom(x), write_atom(&d.to_atom())))
            .collect::<Vec<_>>()
            .join(" ");
        let label = f.scale().label();
        let scale = match label.split_once(':') {
            Some((kind, lattice)) => format!("{kind}:{}", write_atom(&Atom::lit(lattice))),
            None => label,
        };
        blocks.push(
            BlockWriter::new("fuzzy", id)
                .key("universe", atoms(f.universe()))
                .key("scale", scale)
                .key("mu", mu)
                .finish(),
        );
    }
    for (id, p) in &ws.properties {
        blocks.push(
            BlockWriter::new("property", id)
                .key("universe", write_atom(p.universe_label()))
                .key("scale", write_atom(p.scale_label()))
                .key("val", mapping(p.valuation(), "->"))
                .finish(),
        );
    }
    for (id, v) in &ws.valuations {
        let truth = match v.truth().label() {
            "classical" => "classical",
            _ => "unit",
        };
        blocks.push(
            BlockWriter::new("valuation", id)
                .key("truth", truth.to_string())
                .key(
                    "assign",
                    mapping(v.assignments().iter().map(|(a, b)| (a, b)), "->"),
                )
                .finish(),
        );
    }
    for (id, c) in &ws.calculi {
        let mut w = BlockWriter::new("calculus", id);
        w.key("axioms", atoms(c.axioms()));
        for r in c.rules() {
            w.key(
                "rule",
                format!("{} => {}", atoms(r.premises()), write_atom(r.conclusion())),
            );
        }
        blocks.push(w.finish());
    }
    for (id, a) in &ws.automata {
        let delta = a
            .delta()
            .iter()
            .map(|((s, q), (n, o))| {
                format!(
                    "({},{})->({},{})",
                    write_atom(s),
                    write_atom(q),
                    write_atom(n),
                    write_atom(o)
                )
            })
            .collect::<Vec<_>>()
            .join(" ");
        blocks.push(
            BlockWriter::new("automaton", id)
                .key("inputs", atoms(a.inputs()))
                .key("states", atoms(a.states()))
                .key("outputs", atoms(a.outputs()))
                .key("start", write_atom(a.start()))
                .key("final", atoms(a.finals()))
                .key("delta", delta)
                .finish(),
        );
    }
    for (id, g) in &ws.grammars {
        let mut w = BlockWriter::new("grammar", id);
        w.key("variables", atoms(g.variables()))
            .key("terminals", atoms(g.terminals()))
            .key("start", write_atom(g.start()));
        for p in g.productions() {
            let rhs = atoms(&p.rhs);
            let prod = if rhs.is_empty() {
                format!("{} ->", atoms(&p.lhs))
            } else {
                format!("{} -> {rhs}", atoms(&p.lhs))
            };
            w.key("prod", prod);
        }
        blocks.push(w.finish());
    }
    for (id, t) in &ws.machines {
        let mut w = BlockWriter::new("tm", id);
        w.key("alphabet", atoms(t.alphabet()))
            .key("blank", write_atom(t.blank()))
            .key("states", atoms(t.states()))
            .key("start", write_atom(t.start()))
            .key("final", atoms(t.finals()));
        for r in t.rules() {
            let action = match &r.action {
                TmAction::Write(s) => write_atom(s),
                TmAction::Right => "R".into(),
                TmAction::Left => "L".into(),
            };
            w.key(
                "rule",
                format!(
                    "{} {} -> {action} {}",
                    write_atom(&r.state),
                    write_atom(&r.read),
                    write_atom(&r.next)
                ),
            );
        }
        blocks.push(w.finish());
    }
    blocks
}

/// Canonical text of a single block, found by kind and id.
pub fn serialize_block(ws: &Workspace, kind: &str, id: &Atom) -> Option<String> {
    let mut single = Workspace::default();
    match kind {
        "set" => {
            single.sets.insert(id.clone(), ws.sets.get(id)?.clone());
        }
        "namedset" => {
            single
                .named_sets
                .insert(id.clone(), ws.named_sets.get(id)?.clone());
        }
        "morphism" => {
            single
                .morphisms
                .insert(id.clone(), ws.morphisms.get(id)?.clone());
        }
        "multiset" => {
            single
                .multisets
                .insert(id.clone(), ws.multisets.get(id)?.clone());
        }
        "lattice" => {
            single
                .lattices
                .insert(id.clone(), ws.lattices.get(id)?.clone());
        }
        "fuzzy" => {
            single
                .fuzzy_sets
                .insert(id.clone(), ws.fuzzy_sets.get(id)?.clone());
        }
        "property" => {
            single
                .properties
                .insert(id.clone(), ws.properties.get(id)?.clone());
        }
        "valuation" => {
            single
                .valuations
                .insert(id.clone(), ws.valuations.get(id)?.clone());
        }
        "calculus" => {
            single
                .calculi
                .insert(id.clone(), ws.calculi.get(id)?.clone());
        }
        "automaton" => {
            single
                .automata
                .insert(id.clone(), ws.automata.get(id)?.clone());
        }
        "grammar" => {
            single
                .grammars
                .insert(id.clone(), ws.grammars.get(id)?.clone());
        }
        "tm" => {
            single
                .machines
                .insert(id.clone(), ws.machines.get(id)?.clone());
        }
        _ => return None,
    }
    serialize_block_list(&single).pop()
}

/// The canonical text of a workspace. Parsing the result gives back an equal
/// workspace, and serializing that gives back the same bytes.
pub fn serialize_workspace(ws: &Workspace) -> String {
    serialize_block_list(ws).join("\n")
}
