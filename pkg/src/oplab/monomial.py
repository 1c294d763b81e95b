"""Finitely presented nonsymmetric monomial operads.

A presentation is an alphabet plus a finite set of forbidden tree monomials
(the relations, which are trivially a Groebner-Shirshov basis of the
monomial ideal they generate).  Normal forms are the monomials no relation
divides; this module enumerates them, computes dimension sequences indexed
by arity or weight, and runs the linear-growth dichotomy check on the
weight-indexed counts.

Two engines compute dimensions.  ``brute`` explicitly builds every normal
form by composing smaller normal forms (sound because every submonomial of
a normal form is normal, so only a root-anchored divisor can appear when a
fresh root is added).  ``dp`` is the transfer-matrix engine: it aggregates
subtrees by their depth-limited top profile (the "crown"), which is the
only part of a child a root-anchored relation match can inspect.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Optional

from .dims import DimSeries
from .order import TreeOrder
from .trees import (
    LEAF,
    Alphabet,
    AlphabetMismatchError,
    Generator,
    TreeMonomial,
    _fast_node,
    divides,
    format_monomial,
    matches_at_root,
    parse_monomial,
)

ENGINES = ("brute", "dp")

GROWTH_BOUNDED = "bounded"
GROWTH_LINEAR = "linear"
GROWTH_SUPERLINEAR = "superlinear_witness"


class PresentationError(ValueError):
    """Base class for presentation errors."""


class CompletenessError(PresentationError):
    """Arity-indexed counts need a weight cap when unary generators exist."""


class PresentationSyntaxError(PresentationError):
    """A presentation file failed to parse; carries the offending line."""

    def __init__(self, lineno: int, line: str, reason: str) -> None:
        super().__init__(f"line {lineno}: {reason}: {line!r}")
        self.lineno = lineno
        self.line = line


class MonomialOperadPresentation:
    """Alphabet plus a self-reduced set of forbidden tree monomials.

    Relations divisible by another relation are dropped at construction;
    this never changes the set of normal forms.  An empty relation set
    presents the free operad.
    """

    __slots__ = ("alphabet", "relations", "name", "_order")

    def __init__(self, alphabet: Alphabet, relations: Iterable[TreeMonomial] = (),
                 name: Optional[str] = None) -> None:
        rels = []
        for r in relations:
            if not isinstance(r, TreeMonomial):
                raise PresentationError(f"relation must be a TreeMonomial, got {type(r).__name__}")
            if r.is_trivial:
                raise PresentationError("the trivial monomial cannot be a relation")
            if r.alphabet != alphabet:
                raise AlphabetMismatchError("relation uses a different alphabet")
            rels.append(r)
        order = TreeOrder.for_alphabet(alphabet)
        rels = sorted(set(rels), key=lambda t: (t.weight, order.key(t)))
        kept: list[TreeMonomial] = []
        for r in rels:
            # a strictly smaller divisor sorts earlier, so one pass suffices
            if not any(divides(s, r) for s in kept):
                kept.append(r)
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "relations", tuple(kept))
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "_order", order)

    def __setattr__(self, name, value):  # pragma: no cover
        raise AttributeError("MonomialOperadPresentation is immutable")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MonomialOperadPresentation):
            return NotImplemented
        return self.alphabet == other.alphabet and self.relations == other.relations

    def __hash__(self) -> int:
        return hash((self.alphabet, self.relations))

    @property
    def max_relation_height(self) -> int:
        return max((r.height for r in self.relations), default=1)

    def __repr__(self) -> str:
        label = self.name or "presentation"
        gens = ",".join(f"{g.name}:{g.arity}" for g in self.alphabet.generators)
        return f"<{label} [{gens}] with {len(self.relations)} relations>"


def is_normal_form(p: MonomialOperadPresentation, t: TreeMonomial) -> bool:
    """True when no relation divides ``t``."""
    if t.alphabet != p.alphabet:
        raise AlphabetMismatchError("monomial uses a different alphabet")
    return not any(divides(r, t) for r in p.relations)


def _root_clean(p: MonomialOperadPresentation, t: TreeMonomial) -> bool:
    return not any(matches_at_root(r, t) for r in p.relations)


def _root_rejects(rels_g, children: tuple) -> bool:
    """Does some relation (rooted at the candidate's generator) match the
    candidate root against this child tuple?"""
    for r in rels_g:
        for pc, tc in zip(r.children, children):
            if pc is not None and (tc is None or not matches_at_root(pc, tc)):
                break
        else:
            return True
    return False


_LEAF_ONLY = (LEAF,)


def _build_level(p: MonomialOperadPresentation, rels_by_root, w: int,
                 levels: list[list[TreeMonomial]],
                 max_arity: Optional[int]) -> list[TreeMonomial]:
    """All weight-w normal forms from the already-built lighter levels.

    Children are normal forms, so only a root-anchored relation match needs
    checking; every candidate is distinct because (root label, child tuple)
    determines the tree.
    """
    alphabet = p.alphabet
    level: list[TreeMonomial] = []
    append = level.append
    for g in alphabet.generators:
        rels_g = rels_by_root.get(g.name, ())
        if g.arity == 2:
            # hottest case, written out to keep the enumeration tight
            for w1 in range(w):
                lefts = levels[w1] if w1 else _LEAF_ONLY
                rights = levels[w - 1 - w1] if w - 1 - w1 else _LEAF_ONLY
                for left in lefts:
                    la = 1 if left is None else left.arity
                    if max_arity is not None and la + 1 > max_arity:
                        continue
                    for right in rights:
                        ra = 1 if right is None else right.arity
                        if max_arity is not None and la + ra > max_arity:
                            continue
                        children = (left, right)
                        if rels_g and _root_rejects(rels_g, children):
                            continue
                        append(_fast_node(alphabet, g, children))
        else:
            for children in _child_combos(g.arity, w - 1, levels, max_arity):
                if rels_g and _root_rejects(rels_g, children):
                    continue
                append(_fast_node(alphabet, g, children))
    return level


def _relations_by_root(p: MonomialOperadPresentation) -> dict:
    by_root: dict[str, list[TreeMonomial]] = {}
    for r in p.relations:
        by_root.setdefault(r.generator.name, []).append(r)
    return by_root


def _irr_levels(p: MonomialOperadPresentation, max_weight: int,
                max_arity: Optional[int] = None) -> list[list[TreeMonomial]]:
    """Normal forms grouped by weight (levels unsorted; counting only)."""
    rels_by_root = _relations_by_root(p)
    levels: list[list[TreeMonomial]] = [[TreeMonomial.trivial(p.alphabet)]]
    for w in range(1, max_weight + 1):
        levels.append(_build_level(p, rels_by_root, w, levels, max_arity))
    return levels


def _child_combos(nslots: int, weight: int, levels: list[list[TreeMonomial]],
                  max_arity: Optional[int]) -> Iterator[tuple]:
    """All slot tuples (LEAF or a previously built normal form) of total weight."""

    def rec(slot: int, remaining: int, arity_used: int, acc: list) -> Iterator[tuple]:
        rest = nslots - slot - 1
        if slot == nslots:
            if remaining == 0:
                yield tuple(acc)
            return
        if max_arity is not None and arity_used + 1 + rest > max_arity:
            return
        if rest > 0 or remaining == 0:
            acc.append(LEAF)
            yield from rec(slot + 1, remaining, arity_used + 1, acc)
            acc.pop()
        for w1 in range(1, remaining + 1):
            if rest == 0 and w1 != remaining:
                continue
            for m in levels[w1]:
                if max_arity is not None and arity_used + m.arity + rest > max_arity:
                    continue
                acc.append(m)
                yield from rec(slot + 1, remaining - w1, arity_used + m.arity, acc)
                acc.pop()

    yield from rec(0, weight, 0, [])


def enumerate_irr(p: MonomialOperadPresentation, max_weight: int) -> Iterator[TreeMonomial]:
    """Stream every normal form of weight <= max_weight exactly once.

    Deterministic order: by weight, then by the path-sequence order.
    """
    if max_weight < 0:
        raise PresentationError("max_weight must be nonnegative")
    key = p._order.key
    rels_by_root = _relations_by_root(p)
    levels: list[list[TreeMonomial]] = [[TreeMonomial.trivial(p.alphabet)]]
    yield levels[0][0]
    for w in range(1, max_weight + 1):
        level = _build_level(p, rels_by_root, w, levels, None)
        level.sort(key=key)
        levels.append(level)
        yield from level


# ---------------------------------------------------------------------------
# profile-DP engine
# ---------------------------------------------------------------------------

UNKNOWN = "?"
LEAF_MARK = "L"


def _crown_of(t: TreeMonomial, budget: int):
    """Top profile of a nontrivial tree down to ``budget`` levels."""
    if budget <= 0:
        return UNKNOWN
    return (
        t.generator.name,
        tuple(LEAF_MARK if c is LEAF else _crown_of(c, budget - 1) for c in t.children),
    )


@lru_cache(maxsize=None)
def _truncate_crown(crown, budget: int):
    if budget <= 0 or crown == UNKNOWN:
        return UNKNOWN
    name, slots = crown
    return (name, tuple(
        s if s == LEAF_MARK else _truncate_crown(s, budget - 1) for s in slots))


def _crown_matches(pattern: TreeMonomial, crown) -> bool:
    """Does a relation subtree match a child whose top profile is ``crown``?"""
    if crown == LEAF_MARK:
        return False
    if crown == UNKNOWN:
        raise AssertionError("crown budget exhausted while matching a relation")
    name, slots = crown
    if pattern.generator.name != name:
        return False
    for pc, slot in zip(pattern.children, slots):
        if pc is LEAF:
            continue
        if not _crown_matches(pc, slot):
            return False
    return True


def _profile_dp_counts(p: MonomialOperadPresentation, max_weight: int,
                       max_arity: Optional[int] = None) -> list[dict[int, int]]:
    """counts[w][arity] = number of normal forms of weight w (w >= 1).

    State per subtree is its crown (top profile of depth H-1, H the maximal
    relation height): a candidate root is clean iff no relation matches its
    label against the child crowns, so counts convolve over child slots per
    generator while a frozenset tracks which relations still fully match.
    """
    alphabet = p.alphabet
    budget = p.max_relation_height - 1
    rels_by_root: dict[str, list[TreeMonomial]] = {}
    for r in p.relations:
        rels_by_root.setdefault(r.generator.name, []).append(r)

    levels: list[dict] = [{}]  # levels[w]: crown -> {arity: count}
    counts: list[dict[int, int]] = [{}]
    for w in range(1, max_weight + 1):
        level: dict = {}
        total: dict[int, int] = {}
        for g in alphabet.generators:
            k = g.arity
            rels_g = rels_by_root.get(g.name, [])
            alive0 = frozenset(range(len(rels_g)))
            states: dict[tuple, int] = {(0, 0, (), alive0): 1}
            for j in range(k):
                rest = k - j - 1
                new_states: dict[tuple, int] = {}
                for (wu, au, ts, alive), cnt in states.items():
                    if max_arity is None or au + 1 + rest <= max_arity:
                        na = frozenset(i for i in alive if rels_g[i].children[j] is LEAF)
                        key = (wu, au + 1, ts + (LEAF_MARK,), na)
                        new_states[key] = new_states.get(key, 0) + cnt
                    for w1 in range(1, w - wu):
                        if rest == 0 and w1 != w - 1 - wu:
                            continue
                        for crown, by_arity in levels[w1].items():
                            na = frozenset(
                                i for i in alive
                                if rels_g[i].children[j] is LEAF
                                or _crown_matches(rels_g[i].children[j], crown))
                            tc = _truncate_crown(crown, budget - 1) if budget > 0 else UNKNOWN
                            for n1, c1 in by_arity.items():
                                if max_arity is not None and au + n1 + rest > max_arity:
                                    continue
                                key = (wu + w1, au + n1, ts + (tc,), na)
                                new_states[key] = new_states.get(key, 0) + cnt * c1
                states = new_states
            for (wu, au, ts, alive), cnt in states.items():
                if wu != w - 1 or alive:
                    continue
                crown = (g.name, ts) if budget > 0 else UNKNOWN
                level.setdefault(crown, {})
                level[crown][au] = level[crown].get(au, 0) + cnt
                total[au] = total.get(au, 0) + cnt
        levels.append(level)
        counts.append(total)
    return counts


def _brute_counts(p: MonomialOperadPresentation, max_weight: int,
                  max_arity: Optional[int] = None) -> list[dict[int, int]]:
    levels = _irr_levels(p, max_weight, max_arity)
    out: list[dict[int, int]] = [{}]
    for level in levels[1:]:
        total: dict[int, int] = {}
        for t in level:
            total[t.arity] = total.get(t.arity, 0) + 1
        out.append(total)
    return out


def _counts_by_engine(p, max_weight, max_arity, engine):
    if engine == "brute":
        return _brute_counts(p, max_weight, max_arity)
    if engine in ("dp", "profile_dp"):
        return _profile_dp_counts(p, max_weight, max_arity)
    raise PresentationError(f"unknown engine {engine!r}; pick one of {ENGINES}")


def dim_by_arity(p: MonomialOperadPresentation, max_arity: int, engine: str = "dp",
                 weight_cap: Optional[int] = None) -> DimSeries:
    """Count normal forms by arity up to ``max_arity``.

    Without unary generators the weight of an arity-n monomial is at most
    n-1, so the counts are exact.  With a unary generator every arity class
    is infinite; the caller must pass ``weight_cap`` and the result is
    flagged inexact.
    """
    if max_arity < 0:
        raise PresentationError("max_arity must be nonnegative")
    if p.alphabet.has_unary:
        if weight_cap is None:
            raise CompletenessError(
                "alphabet has a unary generator: arity-indexed counts need weight_cap")
        max_weight = weight_cap
        exact = False
    else:
        full = max(0, max_arity - 1)
        max_weight = full if weight_cap is None else min(weight_cap, full)
        exact = max_weight >= full
    counts = _counts_by_engine(p, max_weight, max_arity, engine)
    values = [0] * (max_arity + 1)
    if max_arity >= 1:
        values[1] = 1  # the trivial monomial
    for per_arity in counts[1:]:
        for n, c in per_arity.items():
            if n <= max_arity:
                values[n] += c
    return DimSeries(tuple(values), "arity", exact=exact)


def dim_by_weight(p: MonomialOperadPresentation, max_weight: int,
                  engine: str = "dp") -> DimSeries:
    """Count normal forms by weight up to ``max_weight`` (always exact)."""
    if max_weight < 0:
        raise PresentationError("max_weight must be nonnegative")
    counts = _counts_by_engine(p, max_weight, None, engine)
    values = [1] + [sum(per_arity.values()) for per_arity in counts[1:]]
    return DimSeries(tuple(values), "weight", exact=True)


# ---------------------------------------------------------------------------
# growth dichotomy
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GapDichotomyReport:
    """Outcome of the linear-growth dichotomy check on weight counts.

    ``criterion_d`` is the first d >= 3 whose weight-d count is <= d-3, if
    any; when present the partial sums must stay under an affine bound
    fitted on the tail (``affine_fit`` = (a, b), ``first_violation`` = first
    index exceeding the fit by more than max(5, 10%), expected None).
    """

    criterion_d: Optional[int]
    growth_class: str
    weight_counts: DimSeries
    partial_sums: DimSeries
    affine_fit: Optional[tuple[Fraction, Fraction]]
    first_violation: Optional[int]


def _affine_fit(points: list[tuple[int, int]]) -> tuple[Fraction, Fraction]:
    """Exact least-squares line through integer points."""
    k = len(points)
    sx = sum(x for x, _ in points)
    sy = sum(y for _, y in points)
    sxx = sum(x * x for x, _ in points)
    sxy = sum(x * y for x, y in points)
    den = k * sxx - sx * sx
    if den == 0:
        return Fraction(0), Fraction(sy, k)
    a = Fraction(k * sxy - sx * sy, den)
    b = (Fraction(sy) - a * sx) / k
    return a, b


def gap_dichotomy_check(p: MonomialOperadPresentation, max_weight: int,
                        engine: str = "dp") -> GapDichotomyReport:
    """Check the eventual-linear-growth criterion on weight-indexed counts.

    If some d >= 3 has weight-d count <= d-3, the partial sums must be
    bounded by an affine function; the report fits one by least squares on
    the last third and flags the first point exceeding it by more than
    max(5, 10%).  Otherwise the weight counts themselves are returned as a
    superlinear witness.
    """
    if max_weight < 6:
        raise PresentationError("gap dichotomy needs max_weight >= 6")
    wc = dim_by_weight(p, max_weight, engine=engine)
    sums = wc.partial_sums()
    criterion_d = next(
        (d for d in range(3, max_weight + 1) if wc[d] <= d - 3), None)

    first_zero = next((w for w in range(1, max_weight + 1) if wc[w] == 0), None)
    if first_zero is not None and any(wc[w] != 0 for w in range(first_zero, max_weight + 1)):
        raise AssertionError("weight counts revived after extinction; enumeration bug")

    if criterion_d is None:
        return GapDichotomyReport(None, GROWTH_SUPERLINEAR, wc,
                                  DimSeries(sums, "weight"), None, None)

    growth = GROWTH_BOUNDED if wc[max_weight] == 0 else GROWTH_LINEAR
    tail_start = max(0, (2 * max_weight) // 3)
    a, b = _affine_fit([(n, sums[n]) for n in range(tail_start, max_weight + 1)])
    first_violation = None
    for n in range(max_weight + 1):
        bound = a * n + b
        allowed = max(Fraction(5), abs(bound) / 10)
        if Fraction(sums[n]) - bound > allowed:
            first_violation = n
            break
    return GapDichotomyReport(criterion_d, growth, wc, DimSeries(sums, "weight"),
                              (a, b), first_violation)


# ---------------------------------------------------------------------------
# presentation files
# ---------------------------------------------------------------------------

def parse_presentation(text: str, name: Optional[str] = None) -> MonomialOperadPresentation:
    """Parse the text format: ``generator <id> <arity>`` then ``relation <literal>``.

    Blank lines and ``#`` comments are ignored.  Raises
    :class:`PresentationSyntaxError` carrying the offending line.
    """
    gens: list[Generator] = []
    relation_lines: list[tuple[int, str, str]] = []
    label = name
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split(None, 1)
        keyword = parts[0]
        rest = parts[1].strip() if len(parts) > 1 else ""
        if keyword == "generator":
            fields = rest.split()
            if len(fields) != 2 or not fields[1].isdigit():
                raise PresentationSyntaxError(lineno, raw, "expected 'generator <id> <arity>'")
            try:
                gens.append(Generator(fields[0], int(fields[1])))
            except ValueError as exc:
                raise PresentationSyntaxError(lineno, raw, str(exc)) from None
        elif keyword == "relation":
            if not rest:
                raise PresentationSyntaxError(lineno, raw, "expected 'relation <tree literal>'")
            relation_lines.append((lineno, raw, rest))
        elif keyword == "name":
            label = rest or None
        else:
            raise PresentationSyntaxError(lineno, raw, f"unknown directive {keyword!r}")
    if not gens:
        raise PresentationSyntaxError(0, "", "presentation declares no generators")
    alphabet = Alphabet(tuple(gens))
    relations = []
    for lineno, raw, literal in relation_lines:
        try:
            relations.append(parse_monomial(literal, alphabet))
        except ValueError as exc:
            raise PresentationSyntaxError(lineno, raw, str(exc)) from None
    try:
        return MonomialOperadPresentation(alphabet, relations, name=label)
    except ValueError as exc:
        raise PresentationSyntaxError(0, "", str(exc)) from None


def format_presentation(p: MonomialOperadPresentation) -> str:
    """Canonical text form (parses back to an equal presentation)."""
    lines = []
    if p.name:
        lines.append(f"name {p.name}")
    for g in p.alphabet.generators:
        lines.append(f"generator {g.name} {g.arity}")
    for r in p.relations:
        lines.append(f"relation {format_monomial(r)}")
    return "\n".join(lines) + "\n"
