"""Single-branched tree monomials as indexed words, periods, and avoidance.

A single-branched monomial is a chain x1 o_{i1} (x2 o_{i2} (... xn)): each
internal vertex has at most one internal child.  It is faithfully encoded
as a word of (generator, index) letters; the final letter carries no
composition index, so it is stored with a dummy index of 1 to keep equality
well defined.  Height equals weight equals the letter count.

Periodicity is shift-repetition of the letter word.  A local period only
has to hold inside the word; a (global) period must survive every periodic
extension, which happens exactly when the minimal period divides it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from .dims import DimSeries
from .trees import (
    LEAF,
    Alphabet,
    Generator,
    TreeMonomial,
    TreeError,
)


class BranchError(ValueError):
    """Base class for single-branched word errors."""


class NotSingleBranchedError(BranchError):
    """The monomial has more than one branch."""


class AperiodicError(BranchError):
    """A period query was made on a word with no local period."""


class PeriodWitnessError(BranchError):
    """The explicit extension witness contradicted the divisibility test."""


@dataclass(frozen=True)
class BranchWord:
    """Letters (generator, composition index); the last index is a dummy 1.

    Index k of letter k points at the child slot where letter k+1 hangs,
    so 1 <= index <= arity for every non-final position.
    """

    letters: tuple[tuple[Generator, int], ...]

    def __post_init__(self) -> None:
        letters = tuple((g, int(i)) for g, i in self.letters)
        if letters:
            last_gen, _ = letters[-1]
            letters = letters[:-1] + ((last_gen, 1),)
        for pos, (g, i) in enumerate(letters):
            if not isinstance(g, Generator):
                raise BranchError(f"letter {pos + 1} is not a Generator")
            if pos < len(letters) - 1 and not 1 <= i <= g.arity:
                raise BranchError(
                    f"index {i} at position {pos + 1} out of range 1..{g.arity}")
        object.__setattr__(self, "letters", letters)

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def height(self) -> int:
        return len(self.letters)

    def generator_at(self, k: int) -> Generator:
        """1-based letter access."""
        return self.letters[k - 1][0]

    def index_at(self, k: int) -> int:
        """1-based index access; only positions 1..n-1 are meaningful."""
        return self.letters[k - 1][1]

    def factor(self, start: int, stop: int) -> "BranchWord":
        """The submonomial spanning letters start..stop (1-based, inclusive)."""
        if not 1 <= start <= stop <= len(self.letters):
            raise BranchError(f"factor range {start}..{stop} out of bounds")
        return BranchWord(self.letters[start - 1:stop])

    def __repr__(self) -> str:
        return format_branch_word(self)


def to_branch_word(t: TreeMonomial) -> BranchWord:
    """Encode a single-branched monomial; the trivial monomial gives the empty word."""
    letters: list[tuple[Generator, int]] = []
    node = t
    while node is not None and not node.is_trivial:
        internal = [(k, c) for k, c in enumerate(node.children) if c is not LEAF]
        if len(internal) > 1:
            raise NotSingleBranchedError(f"{t!r} has more than one branch")
        if internal:
            slot, child = internal[0]
            letters.append((node.generator, slot + 1))
            node = child
        else:
            letters.append((node.generator, 1))
            node = None
    return BranchWord(tuple(letters))


def from_branch_word(w: BranchWord, alphabet: Alphabet) -> TreeMonomial:
    """Rebuild the right-normal monomial encoded by ``w``."""
    t = TreeMonomial.trivial(alphabet)
    for g, i in reversed(w.letters):
        node = TreeMonomial.node(alphabet, g.name)
        if not t.is_trivial:
            children = list(node.children)
            children[i - 1] = t
            node = TreeMonomial(alphabet, node.generator, children)
        t = node
    return t


def is_single_branched(t: TreeMonomial) -> bool:
    return t.weight == t.height


def is_local_period(w: BranchWord, p: int) -> bool:
    """Shift-repetition inside the word: letters repeat with shift p.

    Generators must agree on positions 1..n-p and composition indices on
    positions 1..n-p-1 (the final index is a dummy).
    """
    n = len(w)
    if not 1 <= p < n:
        raise BranchError(f"local period {p} out of range 1..{n - 1}")
    for j in range(1, n - p + 1):
        if w.generator_at(j) != w.generator_at(j + p):
            return False
    for j in range(1, n - p):
        if w.index_at(j) != w.index_at(j + p):
            return False
    return True


def minimal_period(w: BranchWord) -> Optional[int]:
    """The smallest local period, or None when the word is aperiodic."""
    n = len(w)
    for p in range(1, n):
        if is_local_period(w, p):
            return p
    return None


def extend(w: BranchWord, m: int, l: int) -> BranchWord:
    """Periodic extension w_{m,l}: positions -m..l filled by residue mod the
    minimal period.  ``m = -1`` and ``l = n`` reproduce the word itself.
    """
    p = minimal_period(w)
    if p is None:
        raise AperiodicError("cannot extend an aperiodic word")
    if m < -1:
        raise BranchError("extension needs m >= -1")
    if l < len(w):
        raise BranchError("extension needs l >= len(w)")
    letters = []
    for q in range(-m, l + 1):
        r = (q - 1) % p + 1
        letters.append((w.generator_at(r), w.index_at(r)))
    return BranchWord(tuple(letters))


def is_period(w: BranchWord, p: int) -> bool:
    """Periods are the local periods surviving every extension: exactly the
    multiples of the minimal period.  An explicit extension witness is
    checked alongside the divisibility test and any disagreement raises.
    """
    if p < 1:
        raise BranchError("periods are positive")
    mp = minimal_period(w)
    if mp is None:
        raise AperiodicError("aperiodic words have no periods")
    by_divisibility = p % mp == 0
    witness_word = extend(w, p, len(w) + p)
    by_witness = is_local_period(witness_word, p)
    if by_divisibility != by_witness:
        raise PeriodWitnessError(
            f"divisibility says {by_divisibility} but extension witness says {by_witness}")
    return by_divisibility


def contains_factor(w: BranchWord, f: BranchWord) -> bool:
    """Does ``f`` occur as a submonomial (contiguous letters) of ``w``?

    The final letter of ``f`` matches on generator only, mirroring the dummy
    index convention.
    """
    k = len(f)
    if k == 0:
        raise BranchError("the empty word is a factor of everything; refuse it")
    n = len(w)
    for s in range(1, n - k + 2):
        ok = True
        for r in range(k):
            if w.generator_at(s + r) != f.generator_at(r + 1):
                ok = False
                break
            if r < k - 1 and w.index_at(s + r) != f.index_at(r + 1):
                ok = False
                break
        if ok:
            return True
    return False


# ---------------------------------------------------------------------------
# avoidance systems
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AvoidanceSystem:
    """Single-branched words avoiding forbidden factors, with optional caps.

    ``forbidden`` lists submonomials that may not occur; ``letter_caps``
    optionally bounds how often a (generator name, index) letter may occur
    among the meaningful (non-final) positions.  Both constraints are closed
    under taking submonomials, so the counted sets satisfy the hypotheses of
    the cubic growth bound.
    """

    alphabet: Alphabet
    forbidden: tuple[BranchWord, ...] = ()
    letter_caps: Mapping[tuple[str, int], int] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "forbidden", tuple(self.forbidden))
        for f in self.forbidden:
            if len(f) == 0:
                raise BranchError("forbidden factors must be nonempty")
        caps = dict(self.letter_caps or {})
        for (name, idx), cap in caps.items():
            g = self.alphabet[name]
            if not 1 <= idx <= g.arity:
                raise BranchError(f"cap letter {name}:{idx} has an invalid index")
            if cap < 0:
                raise BranchError("letter caps must be nonnegative")
        object.__setattr__(self, "letter_caps", caps)

    def __hash__(self) -> int:
        return hash((self.alphabet, self.forbidden, tuple(sorted(self.letter_caps.items()))))


def example_at_most_one_index2(alphabet: Optional[Alphabet] = None) -> AvoidanceSystem:
    """One binary generator, at most one composition index equal to 2.

    This set contains exactly n words of height n, so it violates the
    "at most d-1 at height d" hypothesis at every d while staying unbounded.
    """
    alphabet = alphabet or Alphabet.of(a=2)
    (g,) = alphabet.generators
    if g.arity != 2:
        raise BranchError("the at-most-one-index-2 system needs one binary generator")
    return AvoidanceSystem(alphabet, (), {(g.name, 2): 1})


def closed_set_counts(system: AvoidanceSystem, max_height: int) -> DimSeries:
    """Count avoiding words by height with a factor-matching transfer matrix.

    State = (window of recent meaningful letters, capped letter counts);
    the final letter of a word matches forbidden factors on generator only.
    """
    if max_height < 0:
        raise BranchError("max_height must be nonnegative")
    patterns = [tuple(f.letters) for f in system.forbidden]
    window_len = max((len(pat) - 1 for pat in patterns), default=0)
    cap_keys = tuple(sorted(system.letter_caps))
    caps = tuple(system.letter_caps[k] for k in cap_keys)
    cap_index = {k: i for i, k in enumerate(cap_keys)}

    def completes(window: tuple, gen: Generator) -> bool:
        for pat in patterns:
            k = len(pat)
            if k - 1 > len(window):
                continue
            if pat[-1][0] != gen:
                continue
            tail = window[len(window) - (k - 1):]
            if all(tail[r] == (pat[r][0], pat[r][1]) for r in range(k - 1)):
                return True
        return False

    values = [1]
    # states: (window, counts) -> number of meaningful prefixes
    states: dict[tuple, int] = {((), (0,) * len(caps)): 1}
    for h in range(1, max_height + 1):
        # words of height h: a state of h-1 meaningful letters plus a final letter
        total = 0
        for (window, _counts), cnt in states.items():
            free = sum(1 for g in system.alphabet.generators if not completes(window, g))
            total += cnt * free
        values.append(total)
        if h == max_height:
            break
        new_states: dict[tuple, int] = {}
        for (window, counts), cnt in states.items():
            for g in system.alphabet.generators:
                # factors match their final letter on generator only, so the
                # completion test is the same for meaningful and final letters
                if completes(window, g):
                    continue
                for idx in range(1, g.arity + 1):
                    ci = cap_index.get((g.name, idx))
                    new_counts = counts
                    if ci is not None:
                        if counts[ci] + 1 > caps[ci]:
                            continue
                        new_counts = counts[:ci] + (counts[ci] + 1,) + counts[ci + 1:]
                    new_window = (window + ((g, idx),))[-window_len:] if window_len else ()
                    key = (new_window, new_counts)
                    new_states[key] = new_states.get(key, 0) + cnt
        states = new_states
    return DimSeries(tuple(values), "weight")


def enumerate_avoiding_words(system: AvoidanceSystem, height: int) -> Iterable[BranchWord]:
    """Brute-force enumeration of avoiding words of exactly the given height."""
    if height == 0:
        yield BranchWord(())
        return

    def rec(prefix: list[tuple[Generator, int]]) -> Iterable[BranchWord]:
        if len(prefix) == height - 1:
            for g in system.alphabet.generators:
                w = BranchWord(tuple(prefix) + ((g, 1),))
                if _word_allowed(system, w):
                    yield w
            return
        for g in system.alphabet.generators:
            for idx in range(1, g.arity + 1):
                prefix.append((g, idx))
                yield from rec(prefix)
                prefix.pop()

    yield from rec([])


def _word_allowed(system: AvoidanceSystem, w: BranchWord) -> bool:
    for f in system.forbidden:
        if len(f) <= len(w) and contains_factor(w, f):
            return False
    for (name, idx), cap in system.letter_caps.items():
        uses = sum(1 for k in range(1, len(w))
                   if w.generator_at(k).name == name and w.index_at(k) == idx)
        if uses > cap:
            return False
    return True


# ---------------------------------------------------------------------------
# literals
# ---------------------------------------------------------------------------

def format_branch_word(w: BranchWord) -> str:
    """Space-separated ``gen:index`` letters; the final dummy index is omitted."""
    if not w.letters:
        return "1"
    parts = [f"{g.name}:{i}" for g, i in w.letters[:-1]]
    parts.append(w.letters[-1][0].name)
    return " ".join(parts)


def parse_branch_word(text: str, alphabet: Alphabet) -> BranchWord:
    """Parse the ``a:1 a:2 b`` literal; the last index is optional."""
    text = text.strip()
    if text == "1":
        return BranchWord(())
    letters = []
    for tok in text.split():
        if ":" in tok:
            name, _, idx = tok.partition(":")
            if not idx.isdigit():
                raise BranchError(f"bad branch letter {tok!r}")
            letters.append((alphabet[name], int(idx)))
        else:
            letters.append((alphabet[tok], 1))
    return BranchWord(tuple(letters))
