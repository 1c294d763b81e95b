"""Labeled planar rooted trees and their grafting calculus.

A tree monomial is a planar rooted tree whose internal vertices carry
operation symbols of matching arity; together with the trivial (identity)
monomial these are the monomial basis of a free nonsymmetric operad.
Grafting one tree onto a leaf of another is the partial composition, and
the tuple of root-to-leaf label words (the path sequence) determines a
tree monomial uniquely.

All values here are immutable after construction and every operation is a
pure function, so everything is safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence


class TreeError(ValueError):
    """Base class for tree construction and query errors."""


class LeafIndexError(TreeError):
    """A composition index fell outside 1..arity."""


class AlphabetMismatchError(TreeError):
    """Two monomials over different alphabets were combined."""


class MalformedPathError(TreeError):
    """A path sequence is not realizable over the given alphabet."""


class DegenerateDivisorError(TreeError):
    """The trivial monomial was passed as a divisor (it divides everything)."""


class LiteralSyntaxError(TreeError):
    """A tree-monomial literal failed to parse."""


_RESERVED_CHARS = set("(),*#\"'")


@dataclass(frozen=True)
class Generator:
    """An operation symbol with a fixed arity >= 1."""

    name: str
    arity: int

    def __post_init__(self) -> None:
        if not self.name or not self.name.isprintable():
            raise TreeError(f"generator name must be nonempty printable, got {self.name!r}")
        if any(c.isspace() or c in _RESERVED_CHARS for c in self.name):
            raise TreeError(f"generator name {self.name!r} contains reserved characters")
        if self.name == "1":
            raise TreeError("generator name '1' is reserved for the trivial monomial")
        if not isinstance(self.arity, int) or self.arity < 1:
            raise TreeError(f"generator arity must be a positive integer, got {self.arity!r}")


@dataclass(frozen=True)
class Alphabet:
    """A finite ordered collection of generators with unique names.

    Declaration order doubles as the default generator rank for term orders.
    """

    generators: tuple[Generator, ...]

    def __post_init__(self) -> None:
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        if not gens:
            raise TreeError("alphabet must contain at least one generator")
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            raise TreeError("generator names must be unique within an alphabet")
        object.__setattr__(self, "_by_name", {g.name: g for g in gens})
        object.__setattr__(self, "_rank", {g.name: i for i, g in enumerate(gens)})

    @classmethod
    def of(cls, **arities: int) -> "Alphabet":
        """Convenience constructor: ``Alphabet.of(a=2, b=1)``."""
        return cls(tuple(Generator(n, k) for n, k in arities.items()))

    def __getitem__(self, name: str) -> Generator:
        try:
            return self._by_name[name]
        except KeyError:
            raise KeyError(f"unknown generator {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._by_name

    def rank(self, name: str) -> int:
        return self._rank[name]

    @property
    def has_unary(self) -> bool:
        return any(g.arity == 1 for g in self.generators)

    @property
    def max_arity(self) -> int:
        return max(g.arity for g in self.generators)

    def __hash__(self) -> int:
        return hash(self.generators)


#: Marker for a leaf position in a node's child tuple.
LEAF: Optional["TreeMonomial"] = None


class TreeMonomial:
    """The trivial monomial or a generator-labeled node with ordered children.

    Child slots hold :data:`LEAF` for leaves or nested nontrivial nodes.
    ``arity`` counts leaves, ``weight`` counts internal vertices, ``height``
    is the depth of the deepest internal vertex (0 for the trivial monomial,
    so weight == height characterizes single-branched monomials).
    """

    __slots__ = ("alphabet", "generator", "children", "arity", "weight", "height", "_hash")

    def __init__(
        self,
        alphabet: Alphabet,
        generator: Optional[Generator],
        children: Sequence[Optional["TreeMonomial"]] = (),
    ) -> None:
        children = tuple(children)
        if generator is None:
            if children:
                raise TreeError("the trivial monomial has no children")
            arity, weight, height = 1, 0, 0
        else:
            if alphabet._by_name.get(generator.name) != generator:
                raise AlphabetMismatchError(f"generator {generator.name!r} is not in the alphabet")
            if len(children) != generator.arity:
                raise TreeError(
                    f"{generator.name} has arity {generator.arity} but got {len(children)} children"
                )
            arity, weight, height = 0, 1, 1
            for c in children:
                if c is LEAF:
                    arity += 1
                    continue
                if not isinstance(c, TreeMonomial):
                    raise TreeError(f"child must be LEAF or TreeMonomial, got {type(c).__name__}")
                if c.generator is None:
                    raise TreeError("the trivial monomial cannot be a child; use compose instead")
                if c.alphabet != alphabet:
                    raise AlphabetMismatchError("child monomial uses a different alphabet")
                arity += c.arity
                weight += c.weight
                height = max(height, 1 + c.height)
        self.alphabet = alphabet
        self.generator = generator
        self.children = children
        self.arity = arity
        self.weight = weight
        self.height = height
        self._hash = hash((generator, children))

    @classmethod
    def trivial(cls, alphabet: Alphabet) -> "TreeMonomial":
        return cls(alphabet, None)

    @classmethod
    def node(
        cls,
        alphabet: Alphabet,
        name: str,
        children: Optional[Sequence[Optional["TreeMonomial"]]] = None,
    ) -> "TreeMonomial":
        """Build a node labeled by the named generator; children default to leaves."""
        g = alphabet[name]
        if children is None:
            children = (LEAF,) * g.arity
        return cls(alphabet, g, children)

    @property
    def is_trivial(self) -> bool:
        return self.generator is None

    def internal_nodes(self) -> Iterator["TreeMonomial"]:
        """All internal vertices as subtree roots, in planar (preorder) order."""
        if self.generator is None:
            return
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(c for c in reversed(node.children) if c is not LEAF)

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, TreeMonomial):
            return NotImplemented
        if self._hash != other._hash:
            return False
        return self.generator == other.generator and self.children == other.children

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return format_monomial(self)


def _fast_node(alphabet: Alphabet, generator: Generator,
               children: tuple) -> TreeMonomial:
    """Unvalidated node constructor for the enumeration engines.

    Callers guarantee a child tuple of the right length whose entries are
    LEAF or nontrivial monomials over the same alphabet.
    """
    t = object.__new__(TreeMonomial)
    arity, weight, height = 0, 1, 1
    for c in children:
        if c is None:
            arity += 1
        else:
            arity += c.arity
            weight += c.weight
            if c.height >= height:
                height = c.height + 1
    t.alphabet = alphabet
    t.generator = generator
    t.children = children
    t.arity = arity
    t.weight = weight
    t.height = height
    t._hash = hash((generator, children))
    return t


@dataclass(frozen=True)
class PathSequence:
    """One word over generator names per leaf, in planar order.

    The trivial monomial's path sequence is a single empty word.
    """

    words: tuple[tuple[str, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "words", tuple(tuple(w) for w in self.words))

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self) -> Iterator[tuple[str, ...]]:
        return iter(self.words)

    def display(self) -> str:
        """Render like ``(ab, ab)``; multi-character names are dot-separated."""
        parts = []
        for w in self.words:
            if all(len(x) == 1 for x in w):
                parts.append("".join(w))
            else:
                parts.append(".".join(w))
        return "(" + ", ".join(parts) + ")"


def compose(t1: TreeMonomial, i: int, t2: TreeMonomial) -> TreeMonomial:
    """Partial composition: graft ``t2`` onto leaf ``i`` (1-based) of ``t1``.

    Arity adds as Ar(t1) + Ar(t2) - 1 and weights add; composing with the
    trivial monomial on either side returns the other argument unchanged.
    """
    if not isinstance(i, int) or not 1 <= i <= t1.arity:
        raise LeafIndexError(f"leaf index {i} out of range 1..{t1.arity}")
    if t1.alphabet != t2.alphabet:
        raise AlphabetMismatchError("cannot compose monomials over different alphabets")
    if t1.is_trivial:
        return t2
    if t2.is_trivial:
        return t1
    return _replace_leaf(t1, i, t2)


def _replace_leaf(node: TreeMonomial, i: int, repl: TreeMonomial) -> TreeMonomial:
    new_children = list(node.children)
    for k, c in enumerate(node.children):
        size = 1 if c is LEAF else c.arity
        if i <= size:
            new_children[k] = repl if c is LEAF else _replace_leaf(c, i, repl)
            return TreeMonomial(node.alphabet, node.generator, new_children)
        i -= size
    raise AssertionError("leaf index bookkeeping failure")


def to_path_sequence(t: TreeMonomial) -> PathSequence:
    """Record, for each leaf in planar order, the labels from the root down."""
    if t.is_trivial:
        return PathSequence(((),))
    words: list[tuple[str, ...]] = []

    def walk(node: TreeMonomial, prefix: tuple[str, ...]) -> None:
        p = prefix + (node.generator.name,)
        for c in node.children:
            if c is LEAF:
                words.append(p)
            else:
                walk(c, p)

    walk(t, ())
    return PathSequence(tuple(words))


def from_path_sequence(path: PathSequence | Sequence[Sequence[str]], alphabet: Alphabet) -> TreeMonomial:
    """Rebuild the unique tree monomial with the given path sequence.

    Raises :class:`MalformedPathError` when the words cannot be realized
    (unknown labels, arity bookkeeping failure, or inconsistent prefixes).
    """
    words = path.words if isinstance(path, PathSequence) else tuple(tuple(w) for w in path)
    if not words:
        raise MalformedPathError("a path sequence needs at least one word")
    if words[0] == ():
        if len(words) > 1:
            raise MalformedPathError("an empty word is only valid for the trivial monomial")
        return TreeMonomial.trivial(alphabet)

    def parse(pos: int, depth: int) -> tuple[Optional[TreeMonomial], int]:
        w = words[pos]
        if len(w) < depth:
            raise MalformedPathError(f"word {pos + 1} is shorter than its tree depth")
        if len(w) == depth:
            return LEAF, pos + 1
        name = w[depth]
        if name not in alphabet:
            raise MalformedPathError(f"unknown generator {name!r} in word {pos + 1}")
        g = alphabet[name]
        children: list[Optional[TreeMonomial]] = []
        p = pos
        for _ in range(g.arity):
            if p >= len(words):
                raise MalformedPathError("ran out of words while filling child slots")
            wj = words[p]
            if len(wj) <= depth or wj[depth] != name:
                raise MalformedPathError(f"word {p + 1} does not pass through {name!r}")
            child, p = parse(p, depth + 1)
            children.append(child)
        return TreeMonomial(alphabet, g, children), p

    tree, consumed = parse(0, 0)
    if tree is LEAF:
        raise AssertionError("nontrivial root parsed as leaf")
    if consumed != len(words):
        raise MalformedPathError(f"only {consumed} of {len(words)} words were consumed")
    if to_path_sequence(tree).words != words:
        raise MalformedPathError("words are not the path sequence of any tree monomial")
    return tree


def matches_at_root(d: TreeMonomial, t: TreeMonomial) -> bool:
    """True when ``d``'s labeled shape occurs anchored at ``t``'s root vertex.

    Leaf positions of ``d`` impose no constraint; internal positions must be
    internal in ``t`` with the same label.
    """
    if d.generator != t.generator:
        return False
    for dc, tc in zip(d.children, t.children):
        if dc is LEAF:
            continue
        if tc is LEAF or not matches_at_root(dc, tc):
            return False
    return True


def divides(d: TreeMonomial, t: TreeMonomial) -> bool:
    """True when some connected internal subtree of ``t`` carries ``d``'s labels."""
    if d.is_trivial:
        raise DegenerateDivisorError("the trivial monomial divides everything; refuse it")
    if d.alphabet != t.alphabet:
        raise AlphabetMismatchError("divisor and dividend use different alphabets")
    if t.is_trivial or d.weight > t.weight:
        return False
    return any(matches_at_root(d, v) for v in t.internal_nodes())


def submonomials(t: TreeMonomial, weight: Optional[int] = None) -> set[TreeMonomial]:
    """All distinct submonomials of ``t``, optionally restricted to one weight.

    A submonomial is determined by a nonempty set of internal vertices that
    is connected downward from a single top vertex; duplicates collapse
    because the result is a set of abstract tree monomials.
    """
    if t.is_trivial:
        raise TreeError("the trivial monomial has no submonomials")
    cap = t.weight if weight is None else weight
    if cap < 1:
        return set()
    out: set[TreeMonomial] = set()
    for anchor in t.internal_nodes():
        for sub in _anchored_submonomials(anchor, cap):
            if weight is None or sub.weight == weight:
                out.add(sub)
    return out


def _anchored_submonomials(node: TreeMonomial, cap: int) -> list[TreeMonomial]:
    """All submonomials anchored at ``node`` with weight <= cap (cap >= 1)."""
    results: list[TreeMonomial] = []
    slots = node.children

    def fill(k: int, used: int, acc: list[Optional[TreeMonomial]]) -> None:
        if k == len(slots):
            results.append(TreeMonomial(node.alphabet, node.generator, tuple(acc)))
            return
        acc.append(LEAF)
        fill(k + 1, used, acc)
        acc.pop()
        c = slots[k]
        if c is not LEAF:
            for sub in _anchored_submonomials(c, cap - used):
                if used + sub.weight <= cap:
                    acc.append(sub)
                    fill(k + 1, used + sub.weight, acc)
                    acc.pop()

    fill(0, 1, [])
    return results


def format_monomial(t: TreeMonomial) -> str:
    """Render in the literal grammar: ``1``, or ``gen(child,...)`` with ``*`` leaves."""
    if t.is_trivial:
        return "1"
    parts = [format_monomial(c) if c is not LEAF else "*" for c in t.children]
    return f"{t.generator.name}({','.join(parts)})"


def parse_monomial(text: str, alphabet: Alphabet) -> TreeMonomial:
    """Parse the literal grammar; whitespace is insignificant.

    Grammar::

        monomial := "1" | node
        node     := generator_id "(" child ("," child)* ")"
        child    := "*" | node
    """
    tokens = _tokenize(text)
    pos = 0

    def peek() -> Optional[str]:
        return tokens[pos] if pos < len(tokens) else None

    def take(expected: Optional[str] = None) -> str:
        nonlocal pos
        if pos >= len(tokens):
            raise LiteralSyntaxError(f"unexpected end of literal {text!r}")
        tok = tokens[pos]
        if expected is not None and tok != expected:
            raise LiteralSyntaxError(f"expected {expected!r} but found {tok!r} in {text!r}")
        pos += 1
        return tok

    def parse_node() -> TreeMonomial:
        name = take()
        if name in "(),*":
            raise LiteralSyntaxError(f"expected generator name, found {name!r} in {text!r}")
        if name not in alphabet:
            raise LiteralSyntaxError(f"unknown generator {name!r} in {text!r}")
        take("(")
        children: list[Optional[TreeMonomial]] = []
        while True:
            if peek() == "*":
                take()
                children.append(LEAF)
            else:
                children.append(parse_node())
            if peek() == ",":
                take()
                continue
            take(")")
            break
        try:
            return TreeMonomial(alphabet, alphabet[name], children)
        except TreeError as exc:
            raise LiteralSyntaxError(f"{exc} in {text!r}") from None

    if peek() == "1":
        take()
        result = TreeMonomial.trivial(alphabet)
    else:
        result = parse_node()
    if pos != len(tokens):
        raise LiteralSyntaxError(f"trailing tokens after monomial in {text!r}")
    return result


def _tokenize(text: str) -> list[str]:
    tokens: list[str] = []
    word = ""
    for ch in text:
        if ch.isspace():
            if word:
                tokens.append(word)
                word = ""
        elif ch in "(),*":
            if word:
                tokens.append(word)
                word = ""
            tokens.append(ch)
        else:
            word += ch
    if word:
        tokens.append(word)
    if not tokens:
        raise LiteralSyntaxError("empty tree-monomial literal")
    return tokens
