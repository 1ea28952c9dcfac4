#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};

pub fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn fixture(name: &str) -> String {
    fixtures_dir().join(name).to_string_lossy().into_owned()
}

/// Every well-formed fixture, sorted by file name.
pub fn good_fixtures() -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = fs::read_dir(fixtures_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "triad"))
        .map(|p| {
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            (name, fs::read_to_string(&p).unwrap())
        })
        .collect();
    out.sort();
    out
}

/// One command line with its expected exit code and a fragment the report
/// (stdout, or stderr on failure) must contain. `@name` stands for a fixture path.
pub struct CliCase {
    pub args: &'static str,
    pub code: i32,
    pub expect: &'static str,
}

const fn case(args: &'static str, code: i32, expect: &'static str) -> CliCase {
    CliCase { args, code, expect }
}

pub const CLI_CASES: &[CliCase] = &[
    case("validate @singlenamed.triad", 0, "namedset=1"),
    case("validate @bad/dangling.triad", 2, "4:13"),
    case("validate @bad/unknown_kind.triad", 3, "error[syntax] 1:1"),
    case("validate @missing.triad", 2, "cannot read"),
    case("classify @singlenamed.triad X", 0, "singlenamed=true"),
    case(
        "classify @classification.triad Multi",
        0,
        "functional=false",
    ),
    case("classify @classification.triad Nope", 2, "no namedset"),
    case("names @classification.triad Multi a", 0, "names=x y"),
    case("names @classification.triad Func zz", 2, "zz"),
    case("subset @subsets.triad Y X", 0, "result=true"),
    case("subset @subsets.triad X Y", 1, "result=false"),
    case("subset @subsets.triad Z X --weak", 0, "mode=weak"),
    case(
        "check-morphism @morphism_swap.triad Swap",
        0,
        "commutes=true",
    ),
    case("check-morphism @morphism_broken.triad Bad", 1, "witness="),
    case("compose @morphism_chain.triad F G", 0, "id=F.G"),
    case("compose @morphism_chain.triad G F", 2, "not composable"),
    case("category-check @morphism_chain.triad", 0, "result=true"),
    case(
        "category-check @endomaps.triad",
        0,
        "associativity_checked=64",
    ),
    case(
        "category-check @morphism_broken.triad",
        1,
        "non_commuting=Bad",
    ),
    case("embed @plain_sets.triad Abc e", 0, "rel: a->e b->e c->e;"),
    case("embed @plain_sets.triad Nope e", 2, "no set"),
    case(
        "as-multiset @multiset_named.triad Counts",
        0,
        "entries: a:2 b:3;",
    ),
    case(
        "as-multiset @multiset_named.triad Tokens --tokens",
        0,
        "entries: a:2 b:1;",
    ),
    case(
        "as-multiset @multiset_named.triad Counts --base 2",
        2,
        "not a canonical numeral",
    ),
    case(
        "as-fuzzy @fuzzy_named.triad Degrees --scale unit",
        0,
        "mu: a:1/2 b:1;",
    ),
    case(
        "as-fuzzy @fuzzy_named.triad LDegrees --scale lattice:D",
        0,
        "scale: lattice:D;",
    ),
    case(
        "as-fuzzy @fuzzy_named.triad Degrees --scale lattice:D",
        2,
        "not admitted",
    ),
    case(
        "as-fuzzy @fuzzy_named.triad Degrees --scale fuzzy",
        4,
        "unknown scale",
    ),
    case("to-namedset @multiset_basic.triad M", 0, "rel: a->2 b->3;"),
    case("to-namedset @fuzzy_unit.triad Warm", 0, "mild->1/2"),
    case(
        "to-namedset @property_partial.triad Colour",
        0,
        "apple->red",
    ),
    case("to-namedset @mixed.triad S", 2, "ambiguous"),
    case("tokenize @multiset_basic.triad M", 0, "\"b#3\"->b"),
    case("lattice-check @lattice_diamond.triad D", 0, "valid=true"),
    case(
        "lattice-check @lattice_invalid.triad V",
        1,
        "failure=no-join",
    ),
    case("join @lattice_diamond.triad D x y", 0, "join=1"),
    case("meet @lattice_diamond.triad D x y", 0, "meet=0"),
    case("join @lattice_invalid.triad V p q", 2, "invalid"),
    case("count @plain_sets.triad Abc", 0, "count=3"),
    case("count @plain_sets.triad Ten --base 2", 0, "count=1010"),
    case("count @multiset_basic.triad M", 0, "count=5"),
    case("succ 999", 0, "successor=1000"),
    case("succ 1011 --base 2", 0, "successor=1100"),
    case("succ 0012", 2, "not a canonical numeral"),
    case(
        "apply-property @property_numbers.triad N10 Abc",
        0,
        "value=3",
    ),
    case(
        "apply-property @property_partial.triad Colour cherry",
        0,
        "defined=false",
    ),
    case(
        "deduce @calculus_chain.triad C --depth 2",
        0,
        "theorems=p q r",
    ),
    case(
        "deduction-set @calculus_multi.triad Mp --depth 3",
        0,
        "namedset Mp {",
    ),
    case(
        "run-automaton @automaton_parity.triad Parity 1101",
        0,
        "output=oeeo",
    ),
    case("run-automaton @automaton_parity.triad Parity 12", 2, "2"),
    case(
        "derive @grammar_anbn.triad G aabb --max-steps 6 --max-len 6",
        0,
        "derivation=S => aSb => aaSbb => aabb",
    ),
    case(
        "derive @grammar_anbn.triad G aab --max-steps 6 --max-len 6",
        1,
        "found=false",
    ),
    case(
        "run-tm @tm_successor.triad Succ 111 --max-steps 50",
        0,
        "tape=1111",
    ),
    case(
        "run-tm @tm_successor.triad Succ 111 --max-steps 2",
        0,
        "halted=false",
    ),
    case("decompose @tm_successor.triad Succ", 0, "  D: device"),
    case(
        "decompose @calculus_chain.triad C",
        0,
        "  T: <theorems, depth-dependent>",
    ),
    case("decompose @plain_sets.triad Abc", 2, "no object"),
    case(
        "rule-as-namedset @grammar_anbn.triad G 0",
        0,
        "namedset G.0 {",
    ),
    case("rule-as-namedset @grammar_anbn.triad G 9", 2, "no index 9"),
    case("fmt @mixed.triad", 0, "tm S {"),
    case("fmt @bad/unclosed.triad", 3, "never closed"),
    case("frobnicate @mixed.triad", 4, "unrecognized subcommand"),
    case("classify @singlenamed.triad", 4, "required"),
    case(
        "deduce @calculus_chain.triad C --depth many",
        4,
        "invalid value",
    ),
    case(
        "subset @subsets.triad Y X --strong",
        4,
        "unexpected argument",
    ),
];

/// Expands `@name` into a fixture path and splits on spaces.
pub fn expand(args: &str) -> Vec<String> {
    args.split(' ')
        .map(|a| match a.strip_prefix('@') {
            Some(name) => fixture(name),
            None => a.to_string(),
        })
        .collect()
}

/// The subcommands a [`CLI_CASES`] table exercises.
pub fn subcommands_covered() -> std::collections::BTreeSet<&'static str> {
    CLI_CASES
        .iter()
        .map(|c| c.args.split(' ').next().unwrap())
        .collect()
}

pub const ALL_SUBCOMMANDS: [&str; 26] = [
    "validate",
    "classify",
    "names",
    "subset",
    "check-morphism",
    "compose",
    "category-check",
    "embed",
    "as-multiset",
    "as-fuzzy",
    "to-namedset",
    "tokenize",
    "lattice-check",
    "join",
    "meet",
    "count",
    "succ",
    "apply-property",
    "deduce",
    "deduction-set",
    "run-automaton",
    "derive",
    "run-tm",
    "decompose",
    "rule-as-namedset",
    "fmt",
];
