"""Concrete torsion-free groups with exact arithmetic and canonical encodings.

Four kinds of group are supported:

* ``IntegerLattice(rank)``      elements are tuples of ints (``Z^n``);
* ``RationalSubgroup(primes)``  the additive subgroup of the rationals whose
  denominators factor over ``primes``; elements are ``fractions.Fraction``;
* ``FreeGroup(rank)``           freely reduced words, lowercase letters are
  generators and uppercase their inverses (``"aB"`` means a * b^-1);
* ``KleinBottleGroup()``        pairs ``(a, b)`` standing for ``y^a x^b`` with
  the relation ``x y x^-1 = y^-1``, multiplied by
  ``(a1,b1)*(a2,b2) = (a1 + (-1)**b1 * a2, b1 + b2)``.

Element values are plain immutable Python objects and are canonical: two
elements are equal exactly when their representations (and hence their
encodings) are identical.  Each group defines a deterministic total
"canonical order" on its elements (word-length first, positives before
negatives) which fixes window iteration order and witness ordering
everywhere else in the package.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import GroupMismatchError, ParseError, WindowError

_FREE_ALPHABET = "abcdefghijklmnopqrstuvwxyz"


def _sign_rank(x) -> int:
    # 0 for the nonnegative side so positives sort before negatives
    return 0 if x >= 0 else 1


class Group:
    """Common behaviour for the concrete group kinds."""

    def identity(self):
        raise NotImplementedError

    def compose(self, g, h):
        raise NotImplementedError

    def invert(self, g):
        raise NotImplementedError

    def validate(self, g):
        """Raise ``ParseError``/``ValueError`` if ``g`` is not a canonical element."""
        raise NotImplementedError

    def key(self, g):
        """Canonical sort key; total order on elements of this group."""
        raise NotImplementedError

    def encode(self, g) -> str:
        raise NotImplementedError

    def decode(self, text: str):
        raise NotImplementedError

    def generators(self) -> list:
        """Default generating set (closed under inversion when used for balls)."""
        raise NotImplementedError

    def spec_string(self) -> str:
        raise NotImplementedError

    @property
    def is_abelian(self) -> bool:
        raise NotImplementedError

    def power(self, g, n: int):
        if n < 0:
            return self.power(self.invert(g), -n)
        result = self.identity()
        base = g
        while n:
            if n & 1:
                result = self.compose(result, base)
            base = self.compose(base, base)
            n >>= 1
        return result

    def conjugate(self, g, by):
        """Return ``by * g * by^-1``."""
        return self.compose(self.compose(by, g), self.invert(by))

    def check_same(self, other: "Group"):
        if self != other:
            raise GroupMismatchError(f"mixed groups: {self.spec_string()} vs {other.spec_string()}")

    # Rational view, available for the subgroups of Q (rank-one lattice included).

    def as_rational(self, g) -> Fraction:
        raise ValueError(f"{self.spec_string()} has no rational element view")

    def from_rational(self, q: Fraction):
        raise ValueError(f"{self.spec_string()} has no rational element view")


@dataclass(frozen=True)
class IntegerLattice(Group):
    rank: int

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("rank must be a positive integer")

    def identity(self):
        return (0,) * self.rank

    def compose(self, g, h):
        return tuple(a + b for a, b in zip(g, h))

    def invert(self, g):
        return tuple(-a for a in g)

    def validate(self, g):
        if not (isinstance(g, tuple) and len(g) == self.rank and all(isinstance(c, int) for c in g)):
            raise ValueError(f"not a Z^{self.rank} element: {g!r}")

    def key(self, g):
        return (sum(abs(c) for c in g), tuple((abs(c), _sign_rank(c)) for c in g))

    def encode(self, g):
        return ",".join(str(c) for c in g)

    def decode(self, text):
        parts = text.split(",")
        if len(parts) != self.rank:
            raise ParseError(f"expected {self.rank} comma-separated integers", text, 0)
        out = []
        pos = 0
        for part in parts:
            if not re.fullmatch(r"-?\d+", part):
                raise ParseError("bad integer", text, pos)
            out.append(int(part))
            pos += len(part) + 1
        return tuple(out)

    def generators(self):
        gens = []
        for i in range(self.rank):
            vec = [0] * self.rank
            vec[i] = 1
            gens.append(tuple(vec))
        return gens

    def spec_string(self):
        return f"zn:{self.rank}"

    @property
    def is_abelian(self):
        return True

    def as_rational(self, g):
        if self.rank != 1:
            raise ValueError("rational view requires rank one")
        return Fraction(g[0])

    def from_rational(self, q):
        if self.rank != 1 or q.denominator != 1:
            raise ValueError(f"{q} is not an integer")
        return (q.numerator,)


@dataclass(frozen=True)
class RationalSubgroup(Group):
    """Additive subgroup of Q with denominators supported on a fixed prime set."""

    primes: frozenset

    def __init__(self, primes):
        primes = frozenset(int(p) for p in primes)
        if not primes:
            raise ValueError("at least one denominator prime is required")
        for p in primes:
            if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
                raise ValueError(f"{p} is not prime")
        object.__setattr__(self, "primes", primes)

    def identity(self):
        return Fraction(0)

    def compose(self, g, h):
        return g + h

    def invert(self, g):
        return -g

    def validate(self, g):
        if not isinstance(g, Fraction):
            raise ValueError(f"not a rational element: {g!r}")
        den = g.denominator
        for p in sorted(self.primes):
            while den % p == 0:
                den //= p
        if den != 1:
            raise ValueError(f"denominator of {g} uses primes outside {sorted(self.primes)}")

    def key(self, g):
        return (abs(g), _sign_rank(g))

    def encode(self, g):
        if g.denominator == 1:
            return str(g.numerator)
        return f"{g.numerator}/{g.denominator}"

    def decode(self, text):
        m = re.fullmatch(r"(-?\d+)(?:/(\d+))?", text)
        if not m:
            raise ParseError("expected p or p/q", text, 0)
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) else 1
        if den == 0:
            raise ParseError("zero denominator", text, text.index("/") + 1)
        value = Fraction(num, den)
        try:
            self.validate(value)
        except ValueError as exc:
            raise ParseError(str(exc), text, 0) from None
        return value

    def generators(self):
        return [Fraction(1)] + [Fraction(1, p) for p in sorted(self.primes)]

    def spec_string(self):
        return "q-sub:" + ",".join(str(p) for p in sorted(self.primes))

    @property
    def is_abelian(self):
        return True

    def as_rational(self, g):
        return g

    def from_rational(self, q):
        self.validate(q)
        return q


@dataclass(frozen=True)
class FreeGroup(Group):
    rank: int

    def __post_init__(self):
        if not 1 <= self.rank <= len(_FREE_ALPHABET):
            raise ValueError(f"rank must be between 1 and {len(_FREE_ALPHABET)}")

    @property
    def letters(self) -> str:
        return _FREE_ALPHABET[: self.rank]

    def identity(self):
        return ""

    def compose(self, g, h):
        out = list(g)
        for ch in h:
            if out and out[-1] == ch.swapcase():
                out.pop()
            else:
                out.append(ch)
        return "".join(out)

    def invert(self, g):
        return g[::-1].swapcase()

    def validate(self, g):
        if not isinstance(g, str):
            raise ValueError(f"not a word: {g!r}")
        for i, ch in enumerate(g):
            if ch.lower() not in self.letters:
                raise ValueError(f"letter {ch!r} outside rank-{self.rank} alphabet")
            if i and g[i - 1] == ch.swapcase():
                raise ValueError(f"word {g!r} is not freely reduced")

    def key(self, g):
        return (len(g), tuple((self.letters.index(ch.lower()), 0 if ch.islower() else 1) for ch in g))

    def encode(self, g):
        return g

    def decode(self, text):
        for i, ch in enumerate(text):
            if ch.lower() not in self.letters:
                raise ParseError(f"letter {ch!r} outside rank-{self.rank} alphabet", text, i)
        return self.compose("", text)  # free reduction normalizes

    def generators(self):
        return list(self.letters)

    def spec_string(self):
        return f"free:{self.rank}"

    @property
    def is_abelian(self):
        return self.rank == 1


@dataclass(frozen=True)
class KleinBottleGroup(Group):
    def identity(self):
        return (0, 0)

    def compose(self, g, h):
        a1, b1 = g
        a2, b2 = h
        return (a1 + (a2 if b1 % 2 == 0 else -a2), b1 + b2)

    def invert(self, g):
        a, b = g
        return (a if b % 2 else -a, -b)

    def validate(self, g):
        if not (isinstance(g, tuple) and len(g) == 2 and all(isinstance(c, int) for c in g)):
            raise ValueError(f"not a Klein-bottle element: {g!r}")

    def key(self, g):
        a, b = g
        return (abs(a) + abs(b), (abs(a), _sign_rank(a)), (abs(b), _sign_rank(b)))

    def encode(self, g):
        return f"y^{g[0]} x^{g[1]}"

    def decode(self, text):
        m = re.fullmatch(r"y\^(-?\d+) x\^(-?\d+)", text)
        if not m:
            raise ParseError("expected 'y^a x^b'", text, 0)
        return (int(m.group(1)), int(m.group(2)))

    def generators(self):
        return [(0, 1), (1, 0)]  # x, y

    def spec_string(self):
        return "klein"

    @property
    def is_abelian(self):
        return False


def parse_group(spec: str) -> Group:
    """Build a group from a spec string: zn:N, q-sub:p1[,p2...], free:K, klein."""
    if spec == "klein":
        return KleinBottleGroup()
    kind, sep, arg = spec.partition(":")
    if not sep:
        raise ParseError(f"unknown group spec {spec!r}", spec, 0)
    try:
        if kind == "zn":
            return IntegerLattice(int(arg))
        if kind == "q-sub":
            return RationalSubgroup(int(p) for p in arg.split(","))
        if kind == "free":
            return FreeGroup(int(arg))
    except (ValueError, TypeError) as exc:
        raise ParseError(f"bad group spec {spec!r}: {exc}", spec, len(kind) + 1) from None
    raise ParseError(f"unknown group kind {kind!r}", spec, 0)


class Window:
    """A finite symmetric subset of a group, iterated in canonical order.

    Windows are the universe for every finite check in the package.  They are
    immutable; ``index`` maps each element to its canonical position.
    """

    __slots__ = ("group", "elements", "index")

    def __init__(self, group: Group, elements):
        unique = {}
        for g in elements:
            group.validate(g)
            unique[g] = None
        ordered = tuple(sorted(unique, key=group.key))
        index = {g: i for i, g in enumerate(ordered)}
        for g in ordered:
            if group.invert(g) not in index:
                raise WindowError(f"window is not symmetric: missing inverse of {group.encode(g)}")
        self.group = group
        self.elements = ordered
        self.index = index

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g):
        return g in self.index

    def __eq__(self, other):
        return isinstance(other, Window) and self.group == other.group and self.elements == other.elements

    def __hash__(self):
        return hash((self.group, self.elements))

    def __repr__(self):
        return f"Window({self.group.spec_string()}, {len(self.elements)} elements)"

    @property
    def contains_identity(self) -> bool:
        return self.group.identity() in self.index

    def encoded(self) -> list:
        return [self.group.encode(g) for g in self.elements]

    def conjugated(self, by) -> "Window":
        """The window ``by^-1 * W * by`` (same size, still symmetric)."""
        grp = self.group
        inv = grp.invert(by)
        return Window(grp, (grp.compose(grp.compose(inv, g), by) for g in self.elements))


def generate_ball(group: Group, radius: int, include_identity: bool = True) -> Window:
    """All products of at most ``radius`` generators or inverse generators.

    The default generating set of the group is closed under inversion before
    use, so the resulting window is symmetric.
    """
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    sym_gens = []
    seen_gens = set()
    for s in group.generators():
        for t in (s, group.invert(s)):
            if t not in seen_gens:
                seen_gens.add(t)
                sym_gens.append(t)
    identity = group.identity()
    seen = {identity}
    frontier = [identity]
    for _ in range(radius):
        new_frontier = []
        for g in frontier:
            for s in sym_gens:
                h = group.compose(g, s)
                if h not in seen:
                    seen.add(h)
                    new_frontier.append(h)
        frontier = new_frontier
    if not include_identity:
        seen.discard(identity)
    return Window(group, seen)


def parse_element(group: Group, text: str):
    """Decode one element; alias for ``group.decode`` with uniform errors."""
    return group.decode(text)
