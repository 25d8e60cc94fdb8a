"""Words in free and free-commutative dagger monoids.

A dagger monoid is a monoid with an anti-involution ``w -> w'`` satisfying
``1' = 1`` and ``(uv)' = v'u'``.  Words are never cancelled: ``a a'`` is a
nontrivial element.

Word syntax: whitespace-separated identifiers, a trailing apostrophe marks
the dagger (``a b'``).  The empty string or ``ε`` is the unit.
"""

from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .errors import AlphabetError, ParseError
from .reports import CheckReport

IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
UNIT_SYMBOL = "ε"
_DAGGER_MARKS = ("'", "†")


@dataclass(frozen=True, order=True)
class Generator:
    name: str
    self_dual: bool = False

    def __post_init__(self):
        if not IDENT_RE.fullmatch(self.name):
            raise AlphabetError(f"invalid generator name {self.name!r}")

    def to_dict(self) -> dict:
        return {"name": self.name, "self_dual": self.self_dual}


@dataclass(frozen=True)
class Letter:
    generator: Generator
    daggered: bool = False

    def __post_init__(self):
        # one representation per element: e' is stored as e when e is self-dual
        if self.generator.self_dual and self.daggered:
            object.__setattr__(self, "daggered", False)

    @property
    def name(self) -> str:
        return self.generator.name

    def dagger(self) -> Letter:
        if self.generator.self_dual:
            return self
        return Letter(self.generator, not self.daggered)

    def sort_key(self) -> tuple[str, bool]:
        return (self.generator.name, self.daggered)

    def __str__(self) -> str:
        return self.name + ("'" if self.daggered else "")


@dataclass(frozen=True)
class Word:
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        if not isinstance(self.letters, tuple):
            object.__setattr__(self, "letters", tuple(self.letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __mul__(self, other: Word) -> Word:
        return word_mul(self, other)

    def dagger(self) -> Word:
        return word_dagger(self)

    def generators(self) -> set[Generator]:
        return {letter.generator for letter in self.letters}

    def __str__(self) -> str:
        if not self.letters:
            return UNIT_SYMBOL
        return " ".join(str(letter) for letter in self.letters)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"


UNIT = Word()


def _as_alphabet(alphabet) -> dict[str, Generator] | None:
    if alphabet is None:
        return None
    if isinstance(alphabet, MonoidKind):
        alphabet = alphabet.alphabet
    return {g.name: g for g in alphabet}


def parse_word(text: str, alphabet=None, *, source: str = "<word>") -> Word:
    """Parse the word DSL.

    With an alphabet (a ``MonoidKind`` or iterable of ``Generator``) names are
    resolved against it and unknown names are rejected; otherwise every name
    becomes an ordinary (not self-dual) generator.
    """
    gens = _as_alphabet(alphabet)
    letters: list[Letter] = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        ch = text[pos]
        if ch == "\n":
            pos += 1
            line += 1
            line_start = pos
            continue
        if ch.isspace():
            pos += 1
            continue
        column = pos - line_start + 1
        if ch == UNIT_SYMBOL:
            pos += 1
            continue
        m = IDENT_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {ch!r}", line, column, source)
        name = m.group()
        pos = m.end()
        daggered = False
        if pos < len(text) and text[pos] in _DAGGER_MARKS:
            daggered = True
            pos += 1
        if gens is None:
            gen = Generator(name)
        elif name in gens:
            gen = gens[name]
        else:
            raise ParseError(f"generator {name!r} is not in the alphabet", line, column, source)
        letters.append(Letter(gen, daggered))
    return Word(tuple(letters))


def _check_consistent(*words: Word) -> None:
    seen: dict[str, Generator] = {}
    for w in words:
        for gen in w.generators():
            other = seen.setdefault(gen.name, gen)
            if other != gen:
                raise AlphabetError(
                    f"generator {gen.name!r} appears both self-dual and not self-dual"
                )


def word_mul(w1: Word, w2: Word, monoid: MonoidKind | None = None) -> Word:
    """Concatenate; in a free dagger monoid nothing cancels."""
    if monoid is not None:
        monoid.check_word(w1)
        monoid.check_word(w2)
    else:
        _check_consistent(w1, w2)
    return Word(w1.letters + w2.letters)


def word_dagger(w: Word) -> Word:
    return Word(tuple(letter.dagger() for letter in reversed(w.letters)))


class Kind(enum.Enum):
    FREE_DAGGER = "FreeDagger"
    FREE_COMMUTATIVE_DAGGER = "FreeCommutativeDagger"


@dataclass(frozen=True)
class MonoidKind:
    """A free (or free commutative) dagger monoid on a finite alphabet."""

    kind: Kind
    alphabet: tuple[Generator, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        names = [g.name for g in self.alphabet]
        dupes = sorted({n for n in names if names.count(n) > 1})
        if dupes:
            raise AlphabetError(f"duplicate generator names: {', '.join(dupes)}")

    @classmethod
    def free(cls, *names: str, self_dual: Iterable[str] = ()) -> MonoidKind:
        sd = set(self_dual)
        return cls(Kind.FREE_DAGGER, tuple(Generator(n, n in sd) for n in names))

    @classmethod
    def free_commutative(cls, *names: str, self_dual: Iterable[str] = ()) -> MonoidKind:
        sd = set(self_dual)
        return cls(Kind.FREE_COMMUTATIVE_DAGGER, tuple(Generator(n, n in sd) for n in names))

    @property
    def commutative(self) -> bool:
        return self.kind is Kind.FREE_COMMUTATIVE_DAGGER

    def generator(self, name: str) -> Generator:
        for g in self.alphabet:
            if g.name == name:
                return g
        raise AlphabetError(f"generator {name!r} is not in the alphabet")

    def letters(self) -> list[Letter]:
        """All letters, in normal-form order."""
        out = []
        for g in sorted(self.alphabet):
            out.append(Letter(g))
            if not g.self_dual:
                out.append(Letter(g, True))
        return sorted(out, key=Letter.sort_key)

    def check_word(self, w: Word) -> None:
        for gen in w.generators():
            if gen not in self.alphabet:
                raise AlphabetError(f"generator {gen.name!r} is not in the alphabet of {self}")

    def parse(self, text: str) -> Word:
        return parse_word(text, self)

    def normalize(self, w: Word) -> Word:
        return normalize(w, self)

    def mul(self, w1: Word, w2: Word) -> Word:
        return normalize(word_mul(w1, w2, self), self)

    def dagger(self, w: Word) -> Word:
        return normalize(word_dagger(w), self)

    def equal(self, w1: Word, w2: Word) -> bool:
        return normalize(w1, self) == normalize(w2, self)

    def words(self, max_len: int) -> Iterator[Word]:
        """Every element of length <= max_len exactly once, shortest first."""
        letters = self.letters()
        for n in range(max_len + 1):
            if self.commutative:
                combos = itertools.combinations_with_replacement(letters, n)
            else:
                combos = itertools.product(letters, repeat=n)
            for combo in combos:
                yield Word(tuple(combo))

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "alphabet": [g.to_dict() for g in self.alphabet]}

    def __str__(self) -> str:
        inner = ", ".join(g.name + ("=" + g.name + "'" if g.self_dual else "") for g in self.alphabet)
        return f"{self.kind.value}{{{inner}}}"


def normalize(w: Word, m: MonoidKind) -> Word:
    """Canonical form: identity for free monoids, sorted letters when commutative."""
    m.check_word(w)
    if m.commutative:
        return Word(tuple(sorted(w.letters, key=Letter.sort_key)))
    return w


def is_invertible(w: Word, m: MonoidKind) -> bool:
    # only the unit is invertible: any letter is a crossing that survives every product
    return len(normalize(w, m)) == 0


def check_unitarity(m: MonoidKind, max_len: int = 6) -> CheckReport:
    """Exhaustively check ``ab = 1 => b = a'`` for ``|a| + |b| <= max_len``."""
    if max_len < 0:
        raise ValueError("max_len must be >= 0")
    by_len: list[list[Word]] = [[] for _ in range(max_len + 1)]
    for w in m.words(max_len):
        by_len[len(w)].append(w)
    checked = 0
    bad: list[str] = []
    for a in itertools.chain.from_iterable(by_len):
        for b in itertools.chain.from_iterable(by_len[: max_len - len(a) + 1]):
            checked += 1
            if m.mul(a, b) == UNIT and m.normalize(b) != m.dagger(a):
                bad.append(f"a={a}, b={b}")
    return CheckReport(f"unitarity {m}", not bad, checked, bad)


def free_product(m1: MonoidKind, m2: MonoidKind) -> MonoidKind:
    for m in (m1, m2):
        if m.commutative and len(m.letters()) > 1:
            raise AlphabetError(f"free product of free dagger monoids only; got {m}")
    clash = sorted({g.name for g in m1.alphabet} & {g.name for g in m2.alphabet})
    if clash:
        raise AlphabetError(f"generator names collide: {', '.join(clash)}")
    return MonoidKind(Kind.FREE_DAGGER, m1.alphabet + m2.alphabet)


def factorize_free_product(w: Word, m1: MonoidKind, m2: MonoidKind) -> list[tuple[int, Word]]:
    """Split ``w`` into maximal blocks alternately from ``m1`` (0) and ``m2`` (1)."""
    blocks: list[tuple[int, list[Letter]]] = []
    for letter in w:
        if letter.generator in m1.alphabet:
            side = 0
        elif letter.generator in m2.alphabet:
            side = 1
        else:
            raise AlphabetError(f"generator {letter.name!r} is in neither factor")
        if blocks and blocks[-1][0] == side:
            blocks[-1][1].append(letter)
        else:
            blocks.append((side, [letter]))
    return [(side, Word(tuple(letters))) for side, letters in blocks]


@dataclass(frozen=True)
class DirectProduct:
    """Cartesian product of two dagger monoids with componentwise operations."""

    left: MonoidKind
    right: MonoidKind

    @property
    def unit(self) -> tuple[Word, Word]:
        return (UNIT, UNIT)

    def element(self, left: Word | str, right: Word | str) -> tuple[Word, Word]:
        if isinstance(left, str):
            left = self.left.parse(left)
        if isinstance(right, str):
            right = self.right.parse(right)
        return (self.left.normalize(left), self.right.normalize(right))

    def mul(self, x: tuple[Word, Word], y: tuple[Word, Word]) -> tuple[Word, Word]:
        return (self.left.mul(x[0], y[0]), self.right.mul(x[1], y[1]))

    def dagger(self, x: tuple[Word, Word]) -> tuple[Word, Word]:
        return (self.left.dagger(x[0]), self.right.dagger(x[1]))

    def equal(self, x: tuple[Word, Word], y: tuple[Word, Word]) -> bool:
        return self.left.equal(x[0], y[0]) and self.right.equal(x[1], y[1])


def direct_product(m1: MonoidKind, m2: MonoidKind) -> DirectProduct:
    return DirectProduct(m1, m2)


@dataclass(frozen=True)
class MonoidHom:
    """A map of dagger monoids given by generator images.

    Images of self-dual generators must be fixed by the dagger, otherwise the
    map would not commute with it.
    """

    source: MonoidKind
    target: MonoidKind
    images: Mapping[str, Word] = field(default_factory=dict)

    def __post_init__(self):
        for name, image in self.images.items():
            gen = self.source.generator(name)
            self.target.check_word(image)
            if gen.self_dual and not self.target.equal(image, word_dagger(image)):
                raise AlphabetError(
                    f"image of self-dual generator {name!r} must be dagger-fixed, got {image}"
                )

    def __call__(self, w: Word) -> Word:
        return eval_hom(self, w)


def eval_hom(h: MonoidHom, w: Word) -> Word:
    h.source.check_word(w)
    out: list[Letter] = []
    for letter in w:
        try:
            image = h.images[letter.name]
        except KeyError:
            raise AlphabetError(f"generator {letter.name!r} missing from the images map") from None
        if letter.daggered:
            image = word_dagger(image)
        out.extend(image.letters)
    return normalize(Word(tuple(out)), h.target)

