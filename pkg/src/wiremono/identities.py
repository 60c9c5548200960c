"""Semigroup words, identities and identity checking.

Identities are written ``u = v`` where letters are ``a``..``z`` or ``x<digits>``;
parentheses and powers are accepted (``(xy)^5 yx``).  Whitespace is ignored.

Checking is three-valued.  For finite symmetric groups an exhaustive run can
conclude that an identity *holds*; for the infinite twisted monoids a search
either produces a counterexample (a verified NO-certificate) or reports that
its budget was *exhausted*, which proves nothing.
"""

from __future__ import annotations

import enum
import itertools
import math
import operator
import os
import random
import re
from collections import Counter
from dataclasses import dataclass, field
from functools import reduce
from typing import Any, Callable, Mapping, Sequence

import numpy as np

from .monoid import (
    MAX_TABLE_SIZE,
    MonoidKind,
    TwistedElement,
    all_elements_up_to,
    diagram_table,
    identity_element,
    multiply,
    random_element,
    table_size,
)
from .perms import Perm, symmetric_group

DEFAULT_MAX_WORD_LEN = 10**7


def max_word_len() -> int:
    return int(os.environ.get("WIREMONO_MAX_WORD_LEN", DEFAULT_MAX_WORD_LEN))


class WordTooLong(ValueError):
    pass


class BudgetExceeded(ValueError):
    pass


class MissingBinding(KeyError):
    pass


@dataclass(frozen=True)
class Word:
    letters: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.letters:
            raise ValueError("words are nonempty")

    @classmethod
    def parse(cls, text: str) -> "Word":
        return _Parser(text).word_only()

    def alphabet(self) -> tuple[str, ...]:
        return tuple(dict.fromkeys(self.letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __add__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __mul__(self, k: int) -> "Word":
        if k < 1:
            raise ValueError("word powers start at 1")
        return Word(self.letters * k)

    def __str__(self) -> str:
        return "".join(self.letters)

    def compressed(self) -> str:
        """Run-length form such as ``x^2 y`` (re-parses to the same word)."""
        parts = []
        for letter, run in itertools.groupby(self.letters):
            k = len(list(run))
            parts.append(letter if k == 1 else f"{letter}^{k}")
        return " ".join(parts)


def _fold(word: Sequence[str], values: Mapping[str, Any], mul: Callable[[Any, Any], Any]) -> Any:
    try:
        items = [values[x] for x in word]
    except KeyError as exc:
        raise MissingBinding(f"no value bound to letter {exc.args[0]!r}") from None
    return reduce(mul, items)


@dataclass(frozen=True)
class Identity:
    lhs: Word
    rhs: Word

    @classmethod
    def parse(cls, text: str) -> "Identity":
        return _Parser(text).identity()

    def alphabet(self) -> tuple[str, ...]:
        return tuple(dict.fromkeys(self.lhs.letters + self.rhs.letters))

    def evaluate_sides(self, values: Mapping[str, Any], mul: Callable[[Any, Any], Any] = operator.mul) -> tuple[Any, Any]:
        """Values of both sides under ``values``; subclasses may evaluate smarter."""
        return _fold(self.lhs.letters, values, mul), _fold(self.rhs.letters, values, mul)

    def __str__(self) -> str:
        return f"{self.lhs} = {self.rhs}"


class _Parser:
    _TOKEN = re.compile(r"\s*(?:(x\d+)|([a-z])|(\^)|(\d+)|(\()|(\))|(=))")

    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = self._TOKEN.match(text, pos)
            if m is None:
                raise ValueError(f"unexpected character {text[pos:].strip()[:1]!r} in {self.text!r}")
            kinds = ("letter", "letter", "^", "int", "(", ")", "=")
            for kind, val in zip(kinds, m.groups()):
                if val is not None:
                    self.tokens.append((kind, val))
            pos = m.end()
        self.i = 0

    def peek(self) -> str | None:
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def take(self, kind: str) -> str:
        if self.peek() != kind:
            raise ValueError(f"expected {kind!r} in {self.text!r}")
        val = self.tokens[self.i][1]
        self.i += 1
        return val

    def sequence(self) -> list[str]:
        out: list[str] = []
        while self.peek() in ("letter", "("):
            if self.peek() == "letter":
                item = [self.take("letter")]
            else:
                self.take("(")
                item = self.sequence()
                self.take(")")
            if self.peek() == "^":
                self.take("^")
                k = int(self.take("int"))
                if k < 1:
                    raise ValueError("exponents must be positive")
                item = item * k
            out.extend(item)
        if not out:
            raise ValueError(f"empty word in {self.text!r}")
        return out

    def word_only(self) -> Word:
        w = Word(tuple(self.sequence()))
        if self.peek() is not None:
            raise ValueError(f"trailing input in {self.text!r}")
        return w

    def identity(self) -> Identity:
        lhs = Word(tuple(self.sequence()))
        self.take("=")
        rhs = Word(tuple(self.sequence()))
        if self.peek() is not None:
            raise ValueError(f"trailing input in {self.text!r}")
        return Identity(lhs, rhs)


def is_balanced(identity: Identity) -> bool:
    return Counter(identity.lhs.letters) == Counter(identity.rhs.letters)


def imbalanced_letters(identity: Identity) -> list[str]:
    cl, cr = Counter(identity.lhs.letters), Counter(identity.rhs.letters)
    return [x for x in identity.alphabet() if cl[x] != cr[x]]


def evaluate(word: Word, sub: Mapping[str, Any]) -> Any:
    """Left-to-right product of the substituted values."""
    return _fold(word.letters, sub, operator.mul)


class Outcome(enum.Enum):
    HOLDS = "holds"
    COUNTEREXAMPLE = "counterexample"
    EXHAUSTED = "exhausted"


@dataclass
class CheckResult:
    outcome: Outcome
    witness: dict[str, Any] | None = None
    reason: str = ""
    evaluations: int = 0

    @property
    def holds(self) -> bool:
        return self.outcome is Outcome.HOLDS


# -- symmetric groups ---------------------------------------------------------


def _group_table(k: int) -> tuple[list[Perm], np.ndarray]:
    elements = list(symmetric_group(k))
    index = {p: i for i, p in enumerate(elements)}
    table = np.array([[index[a * b] for b in elements] for a in elements], dtype=np.int64)
    return elements, table


def check_symmetric_group(k: int, identity: Identity, budget: int = 10**7, chunk: int = 200_000) -> CheckResult:
    """Decide the identity in S_k by trying every tuple of permutations."""
    if not 1 <= k <= 5:
        raise ValueError("exhaustive checking supports S_1..S_5")
    letters = identity.alphabet()
    elements, table = _group_table(k)
    size = len(elements)
    total = size ** len(letters)
    if total > budget:
        raise BudgetExceeded(f"{total} substitutions exceed the budget {budget}")
    mul = lambda a, b: table[a, b]  # noqa: E731
    for start in range(0, total, chunk):
        flat = np.arange(start, min(total, start + chunk))
        digits = np.unravel_index(flat, (size,) * len(letters))
        values = dict(zip(letters, digits))
        lhs, rhs = identity.evaluate_sides(values, mul)
        bad = np.nonzero(np.broadcast_to(lhs != rhs, flat.shape))[0]
        if bad.size:
            j = int(bad[0])
            witness = {x: elements[int(values[x][j])] for x in letters}
            assert evaluate(identity.lhs, witness) != evaluate(identity.rhs, witness)
            return CheckResult(Outcome.COUNTEREXAMPLE, witness, evaluations=start + j + 1)
    return CheckResult(Outcome.HOLDS, evaluations=total)


@dataclass(frozen=True)
class PermZ:
    """An element of S_k x Z."""

    perm: Perm
    z: int

    def __mul__(self, other: "PermZ") -> "PermZ":
        return PermZ(self.perm * other.perm, self.z + other.z)


def check_sn_times_z(k: int, identity: Identity, budget: int = 10**7) -> CheckResult:
    """An identity holds in S_k x Z iff it is balanced and holds in S_k."""
    if not is_balanced(identity):
        x = imbalanced_letters(identity)[0]
        witness = {
            y: PermZ(Perm.identity(k), 1 if y == x else 0) for y in identity.alphabet()
        }
        return CheckResult(Outcome.COUNTEREXAMPLE, witness, reason=f"unbalanced in {x}")
    res = check_symmetric_group(k, identity, budget)
    if res.outcome is Outcome.COUNTEREXAMPLE:
        res.witness = {x: PermZ(p, 0) for x, p in res.witness.items()}
        res.reason = f"fails in S_{k}"
    return res


def to_unit_form(identity: Identity, k: int, cap: int | None = None) -> Word:
    """The word w^(k!-1) w' whose values in S_k are all 1 iff w = w' holds there."""
    if not 1 <= k <= 5:
        raise ValueError("to_unit_form supports k <= 5")
    cap = max_word_len() if cap is None else cap
    e = math.factorial(k) - 1
    length = e * len(identity.lhs) + len(identity.rhs)
    if length > cap:
        raise WordTooLong(f"word of length {length} exceeds cap {cap}")
    letters = identity.lhs.letters * e + identity.rhs.letters
    return Word(letters)


def fresh_letter(used: Sequence[str]) -> str:
    taken = set(used)
    for c in "xyzuvwabcdefghijklmnopqrst":
        if c not in taken:
            return c
    i = 1
    while f"x{i}" in taken:
        i += 1
    return f"x{i}"


def centralize(v: Word) -> Identity:
    """vx = xv with a letter x not occurring in v."""
    x = fresh_letter(v.alphabet())
    return Identity(v + Word((x,)), Word((x,)) + v)


# -- twisted monoids ---------------------------------------------------------


def _check_kind(kind: MonoidKind, sub: Mapping[str, Any], letters: Sequence[str]) -> None:
    for x in letters:
        if x not in sub:
            raise MissingBinding(f"no value bound to letter {x!r}")
        if not isinstance(sub[x], TwistedElement) or sub[x].kind != kind:
            raise ValueError(f"value of {x!r} is not an element of {kind}")


def verify_certificate(kind: MonoidKind, identity: Identity, sub: Mapping[str, TwistedElement]) -> bool:
    """True iff ``sub`` gives the two sides different values (a NO-certificate)."""
    _check_kind(kind, sub, identity.alphabet())
    return evaluate(identity.lhs, sub) != evaluate(identity.rhs, sub)


def balance_witness(kind: MonoidKind, identity: Identity) -> dict[str, TwistedElement] | None:
    """x -> (1; 1) for an imbalanced letter x and (1; 0) elsewhere; None if balanced."""
    bad = imbalanced_letters(identity)
    if not bad:
        return None
    one = identity_element(kind)
    circle = TwistedElement(kind, one.diagram, 1)
    return {y: circle if y == bad[0] else one for y in identity.alphabet()}


@dataclass
class SearchResult:
    outcome: Outcome
    substitution: dict[str, TwistedElement] | None = None
    tried: int = 0
    method: str = ""

    @property
    def found(self) -> bool:
        return self.outcome is Outcome.COUNTEREXAMPLE


def _batched_random_search(kind, identity, budget, seed, s_range, chunk) -> SearchResult:
    table = diagram_table(kind)
    rng = np.random.default_rng(seed)
    letters = identity.alphabet()
    tried = 0
    while tried < budget:
        size = min(chunk, budget - tried)
        values = {x: table.sample(rng, size, s_range) for x in letters}
        (li, ls), (ri, rs) = identity.evaluate_sides(values, table.mul)
        bad = np.nonzero((li != ri) | (ls != rs))[0]
        if bad.size:
            j = int(bad[0])
            sub = {x: table.decode(values[x][0][j], values[x][1][j]) for x in letters}
            if not verify_certificate(kind, identity, sub):
                raise AssertionError("batched evaluation disagrees with direct evaluation")
            return SearchResult(Outcome.COUNTEREXAMPLE, sub, tried + j + 1, "random-table")
        tried += size
    return SearchResult(Outcome.EXHAUSTED, None, tried, "random-table")


def _random_candidate(kind: MonoidKind, rng: random.Random, word_length: int, s_range: int) -> TwistedElement:
    x = random_element(kind, rng.randint(0, word_length), rng)
    shift = rng.randint(-s_range, s_range) if kind.signed else rng.randint(0, s_range)
    return TwistedElement(kind, x.diagram, x.s + shift)


def search_counterexample(
    kind: MonoidKind,
    identity: Identity,
    strategy: str = "random",
    budget: int = 100_000,
    seed: int = 0,
    word_length: int = 30,
    s_range: int = 5,
    exhaustive_length: int = 2,
    use_table: bool | None = None,
    chunk: int = 10_000,
) -> SearchResult:
    """Look for a substitution separating the two sides.

    ``random``: random elements per letter.  With a diagram table (small n)
    diagrams are uniform and s is uniform in [0, s_range] ([-s_range, s_range]
    for pbt); otherwise elements are random generator words of length
    <= ``word_length`` shifted by up to ``s_range`` circles.
    ``exhaustive``: all tuples of elements reachable by generator words of
    length <= ``exhaustive_length``, in a fixed order, up to ``budget``.
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    letters = identity.alphabet()
    if strategy == "random":
        if use_table is None:
            use_table = table_size(kind) <= MAX_TABLE_SIZE
        if use_table:
            return _batched_random_search(kind, identity, budget, seed, s_range, chunk)
        rng = random.Random(seed)
        for t in range(budget):
            sub = {x: _random_candidate(kind, rng, word_length, s_range) for x in letters}
            lhs, rhs = identity.evaluate_sides(sub, multiply)
            if lhs != rhs:
                if not verify_certificate(kind, identity, sub):
                    raise AssertionError("structured evaluation disagrees with direct evaluation")
                return SearchResult(Outcome.COUNTEREXAMPLE, sub, t + 1, "random-words")
        return SearchResult(Outcome.EXHAUSTED, None, budget, "random-words")
    if strategy == "exhaustive":
        pool = all_elements_up_to(kind, exhaustive_length)
        tried = 0
        for combo in itertools.product(pool, repeat=len(letters)):
            if tried >= budget:
                break
            tried += 1
            sub = dict(zip(letters, combo))
            lhs, rhs = identity.evaluate_sides(sub, multiply)
            if lhs != rhs:
                if not verify_certificate(kind, identity, sub):
                    raise AssertionError("structured evaluation disagrees with direct evaluation")
                return SearchResult(Outcome.COUNTEREXAMPLE, sub, tried, "exhaustive")
        return SearchResult(Outcome.EXHAUSTED, None, tried, "exhaustive")
    raise ValueError(f"unknown strategy {strategy!r}")


@dataclass
class RandomIdentityFactory:
    """Random identities over a small alphabet, for property checks."""

    letters: str = "xyzw"
    max_length: int = 12
    rng: random.Random = field(default_factory=random.Random)

    def word(self, alphabet: str, length: int) -> Word:
        return Word(tuple(self.rng.choice(alphabet) for _ in range(length)))

    def balanced(self) -> Identity:
        alphabet = self.letters[: self.rng.randint(1, len(self.letters))]
        lhs = self.word(alphabet, self.rng.randint(1, self.max_length))
        rhs = list(lhs.letters)
        self.rng.shuffle(rhs)
        return Identity(lhs, Word(tuple(rhs)))

    def unbalanced(self) -> Identity:
        alphabet = self.letters[: self.rng.randint(1, len(self.letters))]
        while True:
            ident = Identity(
                self.word(alphabet, self.rng.randint(1, self.max_length)),
                self.word(alphabet, self.rng.randint(1, self.max_length)),
            )
            if not is_balanced(ident):
                return ident
