use std::collections::BTreeMap;

use super::lexer::{lex, Tok, TokKind};
use super::{Diagnostic, DiagnosticKind, Loc, Workspace};
use crate::error::Error;
use crate::kernel::{Atom, Morphism, NamedSet};
use crate::properties::Property;
use crate::structures::{
    validate_valuation, Calculus, Grammar, GroundRule, MealyAutomaton, Production, TmAction,
    TmRule, TruthKind, TuringMachine, Valuation,
};
use crate::views::{Degree, FiniteLattice, FuzzySet, MultisetM, PlainSet, Scale};

type Parsed<T> = Result<T, Diagnostic>;

fn syntax(loc: Loc, msg: impl Into<String>) -> Diagnostic {
    Diagnostic::error(DiagnosticKind::Syntax, loc, msg)
}

fn invariant(loc: Loc, err: impl ToString) -> Diagnostic {
    Diagnostic::error(DiagnosticKind::InvariantViolation, loc, err.to_string())
}

fn unknown_ref(loc: Loc, msg: impl Into<String>) -> Diagnostic {
    Diagnostic::error(DiagnosticKind::UnknownReference, loc, msg)
}

struct Entry {
    key: String,
    loc: Loc,
    toks: Vec<Tok>,
    end: Loc,
}

struct Block {
    kind: String,
    loc: Loc,
    id: Atom,
    entries: Vec<Entry>,
}

fn parse_blocks(toks: &[Tok]) -> Parsed<Vec<Block>> {
    let mut blocks = Vec::new();
    let mut i = 0;
    let eof = toks
        .last()
        .map(|t| t.loc)
        .unwrap_or(Loc { line: 1, column: 1 });
    let expect_atom = |i: usize, what: &str| -> Parsed<(String, Loc)> {
        match toks.get(i) {
            Some(Tok {
                kind: TokKind::Atom(s),
                loc,
            }) => Ok((s.clone(), *loc)),
            Some(t) => Err(syntax(
                t.loc,
                format!("expected {what}, found {}", t.kind.describe()),
            )),
            None => Err(syntax(eof, format!("expected {what}, found end of file"))),
        }
    };
    let expect = |i: usize, kind: TokKind| -> Parsed<()> {
        match toks.get(i) {
            Some(t) if t.kind == kind => Ok(()),
            Some(t) => Err(syntax(
                t.loc,
                format!("expected {}, found {}", kind.describe(), t.kind.describe()),
            )),
            None => Err(syntax(
                eof,
                format!("expected {}, found end of file", kind.describe()),
            )),
        }
    };
    while i < toks.len() {
        let (kind, loc) = expect_atom(i, "a block kind")?;
        let (id, id_loc) = expect_atom(i + 1, "a block id")?;
        let id = Atom::new(id).map_err(|e| syntax(id_loc, e.to_string()))?;
        expect(i + 2, TokKind::LBrace)?;
        i += 3;
        let mut entries = Vec::new();
        loop {
            match toks.get(i) {
                Some(Tok {
                    kind: TokKind::RBrace,
                    ..
                }) => {
                    i += 1;
                    break;
                }
                None => return Err(syntax(loc, format!("block `{id}` is never closed"))),
                _ => {}
            }
            let (key, key_loc) = expect_atom(i, "a key")?;
            expect(i + 1, TokKind::Colon)?;
            i += 2;
            let start = i;
            while toks.get(i).is_some_and(|t| {
                !matches!(t.kind, TokKind::Semi | TokKind::RBrace | TokKind::LBrace)
            }) {
                i += 1;
            }
            expect(i, TokKind::Semi)?;
            entries.push(Entry {
                key,
                loc: key_loc,
                toks: toks[start..i].to_vec(),
                end: toks[i].loc,
            });
            i += 1;
        }
        blocks.push(Block {
            kind,
            loc,
            id,
            entries,
        });
    }
    Ok(blocks)
}

struct Cursor<'a> {
    toks: &'a [Tok],
    pos: usize,
    end: Loc,
}

impl<'a> Cursor<'a> {
    fn new(entry: &'a Entry) -> Self {
        Cursor {
            toks: &entry.toks,
            pos: 0,
            end: entry.end,
        }
    }

    fn done(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn loc(&self) -> Loc {
        self.toks.get(self.pos).map_or(self.end, |t| t.loc)
    }

    fn peek_is(&self, kind: &TokKind) -> bool {
        self.toks.get(self.pos).is_some_and(|t| &t.kind == kind)
    }

    fn found(&self) -> String {
        self.toks
            .get(self.pos)
            .map_or("`;`".to_string(), |t| t.kind.describe())
    }

    fn bare(&mut self) -> Parsed<(String, Loc)> {
        match self.toks.get(self.pos) {
            Some(Tok {
                kind: TokKind::Atom(s),
                loc,
            }) => {
                self.pos += 1;
                Ok((s.clone(), *loc))
            }
            _ => Err(syntax(
                self.loc(),
                format!("expected an atom, found {}", self.found()),
            )),
        }
    }

    /// An atom, optionally followed by `/ atom`, read as one piece of text
    /// so that fractions like `1/2` need no quotes.
    fn atom(&mut self) -> Parsed<(Atom, Loc)> {
        let (mut text, loc) = self.bare()?;
        if self.peek_is(&TokKind::Slash) {
            self.pos += 1;
            text.push('/');
            text.push_str(&self.bare()?.0);
        }
        let atom = Atom::new(text).map_err(|e| syntax(loc, e.to_string()))?;
        Ok((atom, loc))
    }

    fn expect(&mut self, kind: TokKind) -> Parsed<()> {
        if self.peek_is(&kind) {
            self.pos += 1;
            Ok(())
        } else {
            Err(syntax(
                self.loc(),
                format!("expected {}, found {}", kind.describe(), self.found()),
            ))
        }
    }

    fn atoms_until(&mut self, stop: &TokKind) -> Parsed<Vec<Atom>> {
        let mut out = Vec::new();
        while !self.done() && !self.peek_is(stop) {
            out.push(self.atom()?.0);
        }
        Ok(out)
    }
}

struct View<'a> {
    block: &'a Block,
}

impl<'a> View<'a> {
    fn check_keys(&self, allowed: &[&str]) -> Parsed<()> {
        match self
            .block
            .entries
            .iter()
            .find(|e| !allowed.contains(&e.key.as_str()))
        {
            Some(e) => Err(syntax(
                e.loc,
                format!(
                    "unknown key `{}` in {} block (expected one of: {})",
                    e.key,
                    self.block.kind,
                    allowed.join(", ")
                ),
            )),
            None => Ok(()),
        }
    }

    fn entries(&self, key: &'a str) -> impl Iterator<Item = &'a Entry> + 'a {
        self.block.entries.iter().filter(move |e| e.key == key)
    }

    fn key_loc(&self, key: &str) -> Loc {
        self.block
            .entries
            .iter()
            .find(|e| e.key == key)
            .map_or(self.block.loc, |e| e.loc)
    }

    /// Reads every occurrence of `key` with `item`, concatenating the results.
    fn items<T>(
        &self,
        key: &'a str,
        mut item: impl FnMut(&mut Cursor) -> Parsed<T>,
    ) -> Parsed<Vec<T>> {
        let mut out = Vec::new();
        for entry in self.entries(key) {
            let mut cur = Cursor::new(entry);
            while !cur.done() {
                out.push(item(&mut cur)?);
            }
        }
        Ok(out)
    }

    fn atoms(&self, key: &'a str) -> Parsed<Vec<Atom>> {
        Ok(self
            .items(key, |c| c.atom())?
            .into_iter()
            .map(|(a, _)| a)
            .collect())
    }

    fn entry_opt(&self, key: &'a str) -> Parsed<Option<&'a Entry>> {
        let mut it = self.entries(key);
        let first = it.next();
        if let Some(dup) = it.next() {
            return Err(syntax(dup.loc, format!("key `{key}` given twice")));
        }
        Ok(first)
    }

    fn single(&self, key: &'a str) -> Parsed<(Atom, Loc)> {
        let entry = self.entry_opt(key)?.ok_or_else(|| {
            syntax(
                self.block.loc,
                format!(
                    "{} block `{}` lacks key `{key}`",
                    self.block.kind, self.block.id
                ),
            )
        })?;
        let mut cur = Cursor::new(entry);
        let out = cur.atom()?;
        if !cur.done() {
            return Err(syntax(
                cur.loc(),
                format!("key `{key}` takes a single item"),
            ));
        }
        Ok(out)
    }

    fn pairs(&self, key: &'a str) -> Parsed<Vec<(Atom, Atom, Loc)>> {
        self.items(key, |c| {
            let (x, loc) = c.atom()?;
            c.expect(TokKind::Arrow)?;
            let (v, _) = c.atom()?;
            Ok((x, v, loc))
        })
    }

    fn colon_entries(&self, key: &'a str) -> Parsed<Vec<(Atom, Atom, Loc)>> {
        self.items(key, |c| {
            let (x, loc) = c.atom()?;
            c.expect(TokKind::Colon)?;
            let (v, _) = c.atom()?;
            Ok((x, v, loc))
        })
    }

    fn invariant(&self, err: impl ToString) -> Diagnostic {
        invariant(self.block.loc, err)
    }
}

fn single_valued(what: &str, pairs: &[(Atom, Atom, Loc)]) -> Parsed<BTreeMap<Atom, Atom>> {
    let mut map = BTreeMap::new();
    for (x, y, loc) in pairs {
        if let Some(prev) = map.insert(x.clone(), y.clone()) {
            if &prev != y {
                return Err(invariant(
                    *loc,
                    format!("{what} sends `{x}` to both `{prev}` and `{y}`"),
                ));
            }
        }
    }
    Ok(map)
}

fn build_set(v: &View) -> Parsed<PlainSet> {
    v.check_keys(&["elements"])?;
    Ok(PlainSet::new(v.block.id.clone(), v.atoms("elements")?))
}

fn build_named_set(v: &View) -> Parsed<NamedSet> {
    v.check_keys(&["support", "names", "rel"])?;
    let support = v.atoms("support")?;
    let names = v.atoms("names")?;
    let rel = v.pairs("rel")?;
    for (x, n, loc) in &rel {
        if !support.contains(x) || !names.contains(n) {
            return Err(invariant(
                *loc,
                Error::DanglingPair {
                    element: x.clone(),
                    name: n.clone(),
                },
            ));
        }
    }
    NamedSet::new(
        v.block.id.clone(),
        support,
        names,
        rel.into_iter().map(|(x, n, _)| (x, n)),
    )
    .map_err(|e| v.invariant(e))
}

fn build_morphism(v: &View, named: &BTreeMap<Atom, NamedSet>) -> Parsed<Morphism> {
    v.check_keys(&["from", "to", "f", "g"])?;
    let resolve = |key: &'static str| -> Parsed<NamedSet> {
        let (id, loc) = v.single(key)?;
        named
            .get(&id)
            .cloned()
            .ok_or_else(|| unknown_ref(loc, format!("no namedset `{id}`")))
    };
    let source = resolve("from")?;
    let target = resolve("to")?;
    let f = single_valued("f", &v.pairs("f")?)?;
    let g = single_valued("g", &v.pairs("g")?)?;
    Morphism::new(v.block.id.clone(), source, target, f, g).map_err(|e| v.invariant(e))
}

fn build_multiset(v: &View) -> Parsed<MultisetM> {
    v.check_keys(&["entries"])?;
    let entries = v
        .colon_entries("entries")?
        .into_iter()
        .map(|(e, k, loc)| {
            let k = if k.as_str().bytes().all(|b| b.is_ascii_digit()) {
                k.as_str().parse::<u64>().ok()
            } else {
                None
            };
            k.map(|k| (e, k))
                .ok_or_else(|| invariant(loc, "multiplicity must be a natural number"))
        })
        .collect::<Parsed<Vec<_>>>()?;
    Ok(MultisetM::new(v.block.id.clone(), entries))
}

fn build_lattice(v: &View) -> Parsed<FiniteLattice> {
    v.check_keys(&["carrier", "order"])?;
    let carrier = v.atoms("carrier")?;
    let order = v.items("order", |c| {
        let (x, loc) = c.atom()?;
        c.expect(TokKind::Le)?;
        let (y, _) = c.atom()?;
        Ok((x, y, loc))
    })?;
    for (x, y, loc) in &order {
        if let Some(z) = [x, y].into_iter().find(|z| !carrier.contains(z)) {
            return Err(invariant(*loc, Error::UnknownElement(z.clone())));
        }
    }
    FiniteLattice::new(
        v.block.id.clone(),
        carrier,
        order.into_iter().map(|(x, y, _)| (x, y)),
    )
    .map_err(|e| v.invariant(e))
}

fn build_fuzzy(v: &View, lattices: &BTreeMap<Atom, FiniteLattice>) -> Parsed<FuzzySet> {
    v.check_keys(&["universe", "scale", "mu"])?;
    let entry = v.entry_opt("scale")?.ok_or_else(|| {
        syntax(
            v.block.loc,
            format!("fuzzy block `{}` lacks key `scale`", v.block.id),
        )
    })?;
    let mut cur = Cursor::new(entry);
    let (kind, loc) = cur.atom()?;
    let scale = match kind.as_str() {
        "unit" => Scale::Unit,
        "sym" => Scale::Symmetric,
        "real" => Scale::RealLine,
        "lattice" => {
            cur.expect(TokKind::Colon)?;
            let (id, loc) = cur.atom()?;
            let lattice = lattices
                .get(&id)
                .ok_or_else(|| unknown_ref(loc, format!("no lattice `{id}`")))?;
            Scale::Lattice(lattice.clone())
        }
        other => {
            return Err(syntax(
                loc,
                format!("unknown scale `{other}` (expected unit, sym, real or lattice:ID)"),
            ))
        }
    };
    if !cur.done() {
        return Err(syntax(cur.loc(), "scale takes a single item"));
    }
    let universe = v.atoms("universe")?;
    let mu = v
        .colon_entries("mu")?
        .into_iter()
        .map(|(x, d, loc)| {
            scale
                .parse_degree(d.as_str())
                .map(|d| (x, d))
                .map_err(|e| invariant(loc, e))
        })
        .collect::<Parsed<Vec<(Atom, Degree)>>>()?;
    FuzzySet::new(v.block.id.clone(), universe, scale, mu).map_err(|e| v.invariant(e))
}

fn build_property(v: &View) -> Parsed<Property> {
    v.check_keys(&["universe", "scale", "val"])?;
    let (universe, _) = v.single("universe")?;
    let (scale, _) = v.single("scale")?;
    let val = single_valued("valuation", &v.pairs("val")?)?;
    Property::new(v.block.id.clone(), universe, scale, val).map_err(|e| v.invariant(e))
}

fn build_valuation(v: &View) -> Parsed<Valuation> {
    v.check_keys(&["truth", "assign"])?;
    let (truth, loc) = v.single("truth")?;
    let truth = match truth.as_str() {
        "classical" => TruthKind::Classical,
        "unit" => TruthKind::UnitRational,
        other => {
            return Err(syntax(
                loc,
                format!("unknown truth kind `{other}` (expected classical or unit)"),
            ))
        }
    };
    let assign = v.pairs("assign")?.into_iter().map(|(s, t, _)| (s, t));
    Ok(Valuation::new(v.block.id.clone(), truth, assign))
}

fn build_calculus(v: &View) -> Parsed<Calculus> {
    v.check_keys(&["axioms", "rule"])?;
    let axioms = v.atoms("axioms")?;
    let mut rules = Vec::new();
    for entry in v.entries("rule") {
        let mut cur = Cursor::new(entry);
        let premises = cur.atoms_until(&TokKind::FatArrow)?;
        cur.expect(TokKind::FatArrow)?;
        let (conclusion, _) = cur.atom()?;
        if !cur.done() {
            return Err(syntax(cur.loc(), "a rule has a single conclusion"));
        }
        rules.push(GroundRule::new(premises, conclusion).map_err(|e| invariant(entry.loc, e))?);
    }
    Ok(Calculus::new(v.block.id.clone(), axioms, rules))
}

fn build_automaton(v: &View) -> Parsed<MealyAutomaton> {
    v.check_keys(&["inputs", "states", "outputs", "start", "final", "delta"])?;
    let delta = v.items("delta", |c| {
        c.expect(TokKind::LParen)?;
        let (s, _) = c.atom()?;
        c.expect(TokKind::Comma)?;
        let (q, _) = c.atom()?;
        c.expect(TokKind::RParen)?;
        c.expect(TokKind::Arrow)?;
        c.expect(TokKind::LParen)?;
        let (n, _) = c.atom()?;
        c.expect(TokKind::Comma)?;
        let (o, _) = c.atom()?;
        c.expect(TokKind::RParen)?;
        Ok(((s, q), (n, o)))
    })?;
    MealyAutomaton::new(
        v.block.id.clone(),
        v.atoms("inputs")?,
        v.atoms("states")?,
        v.atoms("outputs")?,
        v.single("start")?.0,
        v.atoms("final")?,
        delta,
    )
    .map_err(|e| v.invariant(e))
}

fn build_grammar(v: &View) -> Parsed<Grammar> {
    v.check_keys(&["variables", "terminals", "start", "prod"])?;
    let mut productions = Vec::new();
    for entry in v.entries("prod") {
        let mut cur = Cursor::new(entry);
        let lhs = cur.atoms_until(&TokKind::Arrow)?;
        cur.expect(TokKind::Arrow)?;
        let rhs = cur.atoms_until(&TokKind::Arrow)?;
        if !cur.done() {
            return Err(syntax(cur.loc(), "a production has a single `->`"));
        }
        if lhs.is_empty() {
            return Err(syntax(entry.loc, "a production needs a left side"));
        }
        productions.push(Production::new(lhs, rhs));
    }
    Grammar::new(
        v.block.id.clone(),
        v.atoms("variables")?,
        v.atoms("terminals")?,
        v.single("start")?.0,
        productions,
    )
    .map_err(|e| invariant(v.key_loc("prod"), e))
}

fn build_tm(v: &View) -> Parsed<TuringMachine> {
    v.check_keys(&["alphabet", "blank", "states", "start", "final", "rule"])?;
    let mut rules = Vec::new();
    for entry in v.entries("rule") {
        let mut cur = Cursor::new(entry);
        let (state, _) = cur.atom()?;
        let (read, _) = cur.atom()?;
        cur.expect(TokKind::Arrow)?;
        let (act, _) = cur.atom()?;
        let (next, _) = cur.atom()?;
        if !cur.done() {
            return Err(syntax(
                cur.loc(),
                "a rule reads `state symbol -> action state`",
            ));
        }
        let action = match act.as_str() {
            "R" => TmAction::Right,
            "L" => TmAction::Left,
            _ => TmAction::Write(act),
        };
        rules.push(TmRule::new(state, read, action, next));
    }
    TuringMachine::new(
        v.block.id.clone(),
        v.atoms("alphabet")?,
        v.single("blank")?.0,
        v.atoms("states")?,
        v.single("start")?.0,
        v.atoms("final")?,
        rules,
    )
    .map_err(|e| v.invariant(e))
}

fn insert<T>(
    map: &mut BTreeMap<Atom, T>,
    block: &Block,
    value: Parsed<T>,
    errors: &mut Vec<Diagnostic>,
) {
    match value {
        Ok(v) => {
            if map.contains_key(&block.id) {
                errors.push(invariant(
                    block.loc,
                    format!("duplicate {} id `{}`", block.kind, block.id),
                ));
            } else {
                map.insert(block.id.clone(), v);
            }
        }
        Err(d) => errors.push(d),
    }
}

const KINDS: [&str; 12] = [
    "set",
    "namedset",
    "morphism",
    "multiset",
    "lattice",
    "fuzzy",
    "property",
    "valuation",
    "calculus",
    "automaton",
    "grammar",
    "tm",
];

/// Parses and validates a whole workspace, returning non-fatal warnings
/// (lattice-shaped blocks that are not lattices, ill-formed valuations) alongside.
pub fn parse_workspace_with_warnings(
    text: &str,
) -> Result<(Workspace, Vec<Diagnostic>), Vec<Diagnostic>> {
    let toks = lex(text).map_err(|d| vec![d])?;
    let blocks = parse_blocks(&toks).map_err(|d| vec![d])?;
    if let Some(b) = blocks.iter().find(|b| !KINDS.contains(&b.kind.as_str())) {
        return Err(vec![syntax(
            b.loc,
            format!("unknown block kind `{}`", b.kind),
        )]);
    }

    let mut ws = Workspace::default();
    let mut errors = Vec::new();
    // referenced kinds first
    for block in &blocks {
        let v = View { block };
        match block.kind.as_str() {
            "namedset" => insert(&mut ws.named_sets, block, build_named_set(&v), &mut errors),
            "lattice" => insert(&mut ws.lattices, block, build_lattice(&v), &mut errors),
            _ => {}
        }
    }
    for block in &blocks {
        let v = View { block };
        match block.kind.as_str() {
            "set" => insert(&mut ws.sets, block, build_set(&v), &mut errors),
            "morphism" => {
                let m = build_morphism(&v, &ws.named_sets);
                insert(&mut ws.morphisms, block, m, &mut errors)
            }
            "multiset" => insert(&mut ws.multisets, block, build_multiset(&v), &mut errors),
            "fuzzy" => {
                let f = build_fuzzy(&v, &ws.lattices);
                insert(&mut ws.fuzzy_sets, block, f, &mut errors)
            }
            "property" => insert(&mut ws.properties, block, build_property(&v), &mut errors),
            "valuation" => insert(&mut ws.valuations, block, build_valuation(&v), &mut errors),
            "calculus" => insert(&mut ws.calculi, block, build_calculus(&v), &mut errors),
            "automaton" => insert(&mut ws.automata, block, build_automaton(&v), &mut errors),
            "grammar" => insert(&mut ws.grammars, block, build_grammar(&v), &mut errors),
            "tm" => insert(&mut ws.machines, block, build_tm(&v), &mut errors),
            _ => {}
        }
    }
    if !errors.is_empty() {
        errors.sort_by_key(|d| d.loc);
        return Err(errors);
    }

    let mut warnings = Vec::new();
    let block_loc = |kind: &str, id: &Atom| {
        blocks
            .iter()
            .find(|b| b.kind == kind && &b.id == id)
            .map_or(Loc { line: 1, column: 1 }, |b| b.loc)
    };
    for (id, lattice) in &ws.lattices {
        if let Some(f) = lattice.validate().failure {
            warnings.push(Diagnostic::warning(
                block_loc("lattice", id),
                format!("lattice `{id}` is not a lattice: {f}"),
            ));
        }
    }
    for (id, valuation) in &ws.valuations {
        let report = validate_valuation(valuation);
        if let (Some(s), Some(reason)) = (report.offending, report.reason) {
            warnings.push(Diagnostic::warning(
                block_loc("valuation", id),
                format!("valuation `{id}` is not a partial function at `{s}`: {reason}"),
            ));
        }
    }
    warnings.sort_by_key(|d| d.loc);
    Ok((ws, warnings))
}

pub fn parse_workspace(text: &str) -> Result<Workspace, Vec<Diagnostic>> {
    parse_workspace_with_warnings(text).map(|(ws, _)| ws)
}
