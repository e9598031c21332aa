"""Legal strings, the string pointer reduction rules, overlap graphs and
the graph rules gnr / gpr / gdr.

A signed letter is written as the letter with a trailing apostrophe for the
barred form, e.g. ``q'``.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .errors import (
    CapExceededError,
    IllegalStringError,
    InvalidVertexError,
    RuleInapplicableError,
)
from .f2linalg import Graph, VertexSet, bits_of, delete_vertices
from .orbit import ORBIT_CAP, contraction_dag, dual_orbit
from .pivot import contraction, elementary_masks
from .setsystem import delta_matroid_masks, maximal_masks


class Sym(NamedTuple):
    letter: str
    barred: bool = False

    def bar(self) -> "Sym":
        return Sym(self.letter, not self.barred)

    def __str__(self):
        return self.letter + ("'" if self.barred else "")


def sym(text: str) -> Sym:
    """Parse one signed letter such as ``p`` or ``p'``."""
    text = text.strip()
    if text.endswith("'"):
        return Sym(text[:-1], True)
    return Sym(text, False)


def _natural_key(letter: str):
    return (0, int(letter), "") if letter.isdigit() else (1, 0, letter)


@dataclass(frozen=True)
class LegalString:
    symbols: tuple[Sym, ...] = ()

    def __post_init__(self):
        counts: dict[str, int] = {}
        for s in self.symbols:
            counts[s.letter] = counts.get(s.letter, 0) + 1
        for letter, c in counts.items():
            if c != 2:
                raise IllegalStringError(
                    f"letter {letter!r} occurs {c} time{'s' if c != 1 else ''}, expected exactly 2",
                    letter,
                )

    def __len__(self):
        return len(self.symbols)

    def __str__(self):
        return " ".join(str(s) for s in self.symbols)

    def letters(self) -> list[str]:
        """The letters of the unbarred projection, numerically then alphabetically sorted."""
        return sorted({s.letter for s in self.symbols}, key=_natural_key)

    def positions(self, letter: str) -> tuple[int, int]:
        found = [i for i, s in enumerate(self.symbols) if s.letter == letter]
        if not found:
            raise InvalidVertexError(letter)
        return found[0], found[1]


_TOKEN = re.compile(r"([^\s']+)('?)")
_COMPACT = re.compile(r"([^\s'])('?)")


def parse_legal_string(text: str, compact: bool | None = None) -> LegalString:
    """Parse whitespace-separated signed letters.

    Without whitespace the text is read in compact mode, one character per
    letter; pass ``compact`` to force either reading.
    """
    text = text.strip()
    if text in ("", "λ"):
        return LegalString(())
    if compact is None:
        compact = not any(c.isspace() for c in text)
    symbols = []
    if compact:
        pos = 0
        while pos < len(text):
            match = _COMPACT.match(text, pos)
            if match is None:
                raise IllegalStringError(f"cannot parse {text[pos:]!r}")
            symbols.append(Sym(match.group(1), bool(match.group(2))))
            pos = match.end()
    else:
        for piece in text.split():
            match = _TOKEN.fullmatch(piece)
            if match is None:
                raise IllegalStringError(f"cannot parse token {piece!r}")
            symbols.append(Sym(match.group(1), bool(match.group(2))))
    return LegalString(tuple(symbols))


def inverse(symbols: Sequence[Sym]) -> tuple[Sym, ...]:
    """Reverse and flip every bar."""
    return tuple(s.bar() for s in reversed(symbols))


def apply_snr(u: LegalString, x: Sym | str) -> LegalString:
    """u1 x x u2 -> u1 u2."""
    x = sym(x) if isinstance(x, str) else x
    s = u.symbols
    for i in range(len(s) - 1):
        if s[i] == x and s[i + 1] == x:
            return LegalString(s[:i] + s[i + 2:])
    raise RuleInapplicableError(f"snr_{x}", f"no factor {x} {x}")


def apply_spr(u: LegalString, x: Sym | str) -> LegalString:
    """u1 x u2 x' u3 -> u1 inverse(u2) u3."""
    x = sym(x) if isinstance(x, str) else x
    s = u.symbols
    try:
        i, j = u.positions(x.letter)
    except InvalidVertexError:
        raise RuleInapplicableError(f"spr_{x}", f"letter {x.letter!r} absent") from None
    if s[i] != x or s[j] != x.bar():
        raise RuleInapplicableError(f"spr_{x}", f"no {x} followed by {x.bar()}")
    return LegalString(s[:i] + inverse(s[i + 1:j]) + s[j + 1:])


def apply_sdr(u: LegalString, x: Sym | str, y: Sym | str) -> LegalString:
    """u1 x u2 y u3 x u4 y u5 -> u1 u4 u3 u2 u5."""
    x = sym(x) if isinstance(x, str) else x
    y = sym(y) if isinstance(y, str) else y
    name = f"sdr_{x},{y}"
    if x.letter == y.letter:
        raise RuleInapplicableError(name, "operands share a letter")
    s = u.symbols
    try:
        i1, i2 = u.positions(x.letter)
        j1, j2 = u.positions(y.letter)
    except InvalidVertexError as err:
        raise RuleInapplicableError(name, f"letter {err.label!r} absent") from None
    if not (s[i1] == s[i2] == x and s[j1] == s[j2] == y and i1 < j1 < i2 < j2):
        raise RuleInapplicableError(name, f"no pattern {x}..{y}..{x}..{y}")
    u1, u2, u3, u4, u5 = s[:i1], s[i1 + 1:j1], s[j1 + 1:i2], s[i2 + 1:j2], s[j2 + 1:]
    return LegalString(u1 + u4 + u3 + u2 + u5)


class StringRule(NamedTuple):
    kind: str
    operands: tuple[Sym, ...]

    def __str__(self):
        return f"{self.kind}:" + ",".join(str(s) for s in self.operands)


def parse_string_rule(text: str) -> StringRule:
    """``snr:x``, ``spr:x'`` or ``sdr:x,y``."""
    kind, _, rest = text.partition(":")
    kind = kind.strip().lower()
    operands = tuple(sym(t) for t in rest.split(",") if t.strip())
    expected = {"snr": 1, "spr": 1, "sdr": 2}
    if kind not in expected or len(operands) != expected[kind]:
        raise ValueError(f"malformed string rule {text!r}")
    return StringRule(kind, operands)


def apply_string_rule(u: LegalString, rule: StringRule) -> LegalString:
    if rule.kind == "snr":
        return apply_snr(u, *rule.operands)
    if rule.kind == "spr":
        return apply_spr(u, *rule.operands)
    return apply_sdr(u, *rule.operands)


def applicable_string_rules(u: LegalString) -> list[StringRule]:
    """Every rule instance applicable to u, in letter order."""
    out = []
    letters = u.letters()
    for a in letters:
        for x in (Sym(a), Sym(a, True)):
            for kind, fn in (("snr", apply_snr), ("spr", apply_spr)):
                try:
                    fn(u, x)
                except RuleInapplicableError:
                    continue
                out.append(StringRule(kind, (x,)))
    for a in letters:
        for b in letters:
            if a == b:
                continue
            for x in (Sym(a), Sym(a, True)):
                for y in (Sym(b), Sym(b, True)):
                    try:
                        apply_sdr(u, x, y)
                    except RuleInapplicableError:
                        continue
                    out.append(StringRule("sdr", (x, y)))
    return out


@dataclass(frozen=True)
class Interval:
    """Positions start..end (0-based, inclusive) of the y-interval; empty when end < start."""

    letter: str
    start: int
    end: int

    def slice(self, u: LegalString) -> tuple[Sym, ...]:
        return u.symbols[self.start:self.end + 1]


def y_interval(u: LegalString, y: str) -> Interval:
    """Span between the two occurrences of y: unbarred borders included, barred ones excluded."""
    i, j = u.positions(y)
    start = i if not u.symbols[i].barred else i + 1
    end = j if not u.symbols[j].barred else j - 1
    return Interval(y, start, end)


def occurs_once_in_interval(u: LegalString, x: str, y: str) -> bool:
    """x occurs exactly once in the unbarred projection of the y-interval."""
    part = y_interval(u, y).slice(u)
    return sum(1 for s in part if s.letter == x) == 1


def overlap_graph(u: LegalString) -> Graph:
    letters = u.letters()
    index = {a: i for i, a in enumerate(letters)}
    rows = [0] * len(letters)
    for y in letters:
        part = y_interval(u, y).slice(u)
        counts: dict[str, int] = {}
        for s in part:
            counts[s.letter] = counts.get(s.letter, 0) + 1
        for x, c in counts.items():
            if c == 1 and x != y:
                rows[index[y]] |= 1 << index[x]
    for s in u.symbols:
        if s.barred and Sym(s.letter) in u.symbols:
            i = index[s.letter]
            rows[i] |= 1 << i
    return Graph(letters, rows)


class GraphRule(NamedTuple):
    kind: str
    vertices: tuple[str, ...]

    def __str__(self):
        return f"{self.kind}({','.join(self.vertices)})"


def gnr(v: str) -> GraphRule:
    return GraphRule("gnr", (v,))


def gpr(v: str) -> GraphRule:
    return GraphRule("gpr", (v,))


def gdr(u: str, v: str) -> GraphRule:
    return GraphRule("gdr", (u, v))


def parse_graph_rule(text: str) -> GraphRule:
    """``gnr:v``, ``gpr:v`` or ``gdr:u,v``."""
    kind, _, rest = text.partition(":")
    kind = kind.strip().lower()
    vertices = tuple(t.strip() for t in rest.split(",") if t.strip())
    expected = {"gnr": 1, "gpr": 1, "gdr": 2}
    if kind not in expected or len(vertices) != expected[kind]:
        raise ValueError(f"malformed graph rule {text!r}")
    return GraphRule(kind, vertices)


def apply_graph_rule(g: Graph, rule: GraphRule) -> Graph:
    """gnr deletes an isolated loopless vertex; gpr / gdr contract an elementary pivot."""
    for v in rule.vertices:
        g.position(v)
    if rule.kind == "gnr":
        (v,) = rule.vertices
        i = g.position(v)
        if g.rows[i]:
            raise RuleInapplicableError(str(rule), f"{v!r} is not an isolated loopless vertex")
        return delete_vertices(g, [v])
    if rule.kind == "gpr":
        (v,) = rule.vertices
        if not g.has_loop(v):
            raise RuleInapplicableError(str(rule), f"{v!r} has no loop")
        return contraction(g, [v])
    if rule.kind == "gdr":
        u, v = rule.vertices
        if u == v or not g.adjacent(u, v) or g.has_loop(u) or g.has_loop(v):
            raise RuleInapplicableError(str(rule), "needs an edge between two loopless vertices")
        return contraction(g, [u, v])
    raise ValueError(f"unknown graph rule {rule.kind!r}")


def graph_rule_for(rule: StringRule) -> GraphRule:
    letters = tuple(s.letter for s in rule.operands)
    return GraphRule({"snr": "gnr", "spr": "gpr", "sdr": "gdr"}[rule.kind], letters)


def simulation_failures(u: LegalString) -> list[str]:
    """Mismatches between string rules on u and graph rules on its overlap graph.

    spr / sdr must be applicable on exactly the letters where gpr / gdr are,
    with equal results.  snr is only checked in the forward direction: an
    isolated vertex need not come from a factor ``x x``.
    """
    g = overlap_graph(u)
    failures = []
    string_rules = applicable_string_rules(u)
    by_target: dict[GraphRule, StringRule] = {}
    for rule in string_rules:
        grule = graph_rule_for(rule)
        if rule.kind == "sdr":
            grule = GraphRule("gdr", tuple(sorted(grule.vertices, key=g.position)))
        try:
            expected = apply_graph_rule(g, grule)
        except RuleInapplicableError:
            failures.append(f"{rule} applies to {u} but {grule} does not apply to its overlap graph")
            continue
        got = overlap_graph(apply_string_rule(u, rule))
        if got != expected:
            failures.append(f"{rule} on {u}: overlap graph {got!r} differs from {grule} result {expected!r}")
        by_target[grule] = rule

    letters = u.letters()
    for a in letters:
        if g.has_loop(a) and gpr(a) not in by_target:
            failures.append(f"gpr({a}) applies to the overlap graph of {u} but no spr on {a} does")
    for a, b in g.edges():
        if not g.has_loop(a) and not g.has_loop(b) and gdr(a, b) not in by_target:
            failures.append(f"gdr({a},{b}) applies to the overlap graph of {u} but no sdr on {a},{b} does")
    return failures


def verify_simulation(u: LegalString) -> bool:
    return not simulation_failures(u)


def gnr_exceptions(u: LegalString) -> list[str]:
    """Letters isolated in the overlap graph for which no snr applies."""
    g = overlap_graph(u)
    out = []
    for a in u.letters():
        if g.rows[g.position(a)]:
            continue
        applicable = False
        for x in (Sym(a), Sym(a, True)):
            try:
                apply_snr(u, x)
                applicable = True
            except RuleInapplicableError:
                pass
        if not applicable:
            out.append(a)
    return out


def random_legal_string(rng: random.Random, max_letters: int = 6) -> LegalString:
    k = rng.randint(0, max_letters)
    letters = [chr(ord("a") + i) for i in range(k)]
    symbols = [Sym(a, rng.random() < 0.5) for a in letters for _ in range(2)]
    rng.shuffle(symbols)
    return LegalString(tuple(symbols))


@dataclass(frozen=True)
class ContractionStrategy:
    steps: tuple[GraphRule, ...]
    gnrdom: frozenset

    def __str__(self):
        return " ".join(str(r) for r in self.steps)


def _rule_for_mask(g: Graph, m: int) -> GraphRule:
    labels = tuple(g.labels[i] for i in bits_of(m))
    return gpr(labels[0]) if len(labels) == 1 else gdr(*labels)


def _check_cap(g: Graph, what: str):
    if g.n > ORBIT_CAP:
        raise CapExceededError(what, g.n, ORBIT_CAP)


def complete_contractions(g: Graph, limit: int | None = 1000) -> list[ContractionStrategy]:
    """Depth-first enumeration of gpr/gdr sequences down to a discrete graph,
    each closed by gnr on the remaining vertices in label order."""
    _check_cap(g, "complete_contractions")
    out: list[ContractionStrategy] = []

    def walk(h: Graph, prefix: list[GraphRule]) -> bool:
        if limit is not None and len(out) >= limit:
            return False
        masks = elementary_masks(h)
        if not masks:
            tail = [gnr(v) for v in h.labels]
            out.append(ContractionStrategy(tuple(prefix + tail), frozenset(h.labels)))
            return True
        for m in masks:
            rule = _rule_for_mask(h, m)
            if not walk(contraction(h, VertexSet(h.labels, m)), prefix + [rule]):
                return False
        return True

    walk(g, [])
    return out


def apply_strategy(g: Graph, strategy: ContractionStrategy) -> Graph:
    for rule in strategy.steps:
        g = apply_graph_rule(g, rule)
    return g


def gnrdom_family(g: Graph) -> frozenset:
    """Every gnrdom over all complete contractions, read off the contraction DAG sinks."""
    _check_cap(g, "gnrdom_family")
    return frozenset(frozenset(h.labels) for h in contraction_dag(g).sinks())


def gnrdom_family_from_maximal(g: Graph) -> frozenset:
    """{V - X : X maximal with det g[X] = 1}."""
    return frozenset(
        frozenset(g.labels[i] for i in bits_of(g.full_mask & ~m))
        for m in maximal_masks(delta_matroid_masks(g))
    )


def verify_theorem_ga_gnr(g: Graph) -> bool:
    """All graphs in the dual orbit of g have the same gnrdom family."""
    _check_cap(g, "verify_theorem_ga_gnr")
    families = {gnrdom_family(node) for node in dual_orbit(g).nodes}
    return len(families) == 1
