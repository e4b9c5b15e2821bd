"""Free-group words over {a, b}, Fox derivatives, and Johnson's torsion formula.

Word syntax::

    word := term+
    term := atom ('^' signed-int)?
    atom := 'a' | 'b' | '1' | macro-name | '(' word ')'

Whitespace separates terms and is otherwise ignored. ``1`` is the empty
word. An identifier that is not a macro but is spelled only with ``a`` and
``b`` (``ab``, ``bab``) is read letter by letter.
"""

import re
from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from . import sl2

GENERATORS = ("a", "b")

# torsion denominators below this are treated as a parabolic meridian
DENOM_TOL = 1e-10


class WordSyntaxError(ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownMacroError(WordSyntaxError):
    pass


class TorsionUndefinedError(ArithmeticError):
    pass


def _reduce(letters):
    out = []
    for g, e in letters:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


@dataclass(frozen=True)
class Word:
    """Freely reduced word; letters are (generator, +1 or -1) pairs."""

    letters: tuple = ()

    def __post_init__(self):
        letters = tuple((str(g), int(e)) for g, e in self.letters)
        for g, e in letters:
            if g not in GENERATORS or e not in (1, -1):
                raise ValueError(f"bad letter {(g, e)!r}")
        object.__setattr__(self, "letters", _reduce(letters))

    @classmethod
    def gen(cls, g, exponent=1):
        e = 1 if exponent > 0 else -1
        return cls(((g, e),) * abs(exponent))

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other):
        if isinstance(other, Word):
            return Word(self.letters + other.letters)
        return NotImplemented

    def inverse(self):
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** -k
        return Word(self.letters * k)

    def __str__(self):
        return format_word(self)


IDENTITY = Word()


def format_word(w):
    """Inverse of parse_word on reduced words: 'b a^-1 b^-1 a', '1' when empty."""
    if not w.letters:
        return "1"
    return " ".join(g if e == 1 else f"{g}^-1" for g, e in w.letters)


def reverse_word(w):
    """Letters in reverse order, exponents untouched (not the inverse)."""
    return Word(tuple(reversed(w.letters)))


_TOKEN = re.compile(r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<one>1(?![0-9]))|(?P<sym>[()^]))")
_INT = re.compile(r"\s*(?P<int>[+-]?\d+)")


class _Parser:
    def __init__(self, text, macros):
        self.text = text
        self.macros = macros
        self.pos = 0

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self):
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self):
        w = self.word()
        if self._peek():
            raise WordSyntaxError(f"unexpected {self._peek()!r}", self.pos)
        return w

    def word(self):
        letters = []
        count = 0
        while self._peek() not in ("", ")"):
            letters.extend(self.term().letters)
            count += 1
        if not count:
            raise WordSyntaxError("expected a term", self.pos)
        return Word(tuple(letters))

    def term(self):
        base = self.atom()
        if self._peek() == "^":
            self.pos += 1
            m = _INT.match(self.text, self.pos)
            if not m:
                self._skip()
                raise WordSyntaxError("expected integer exponent", self.pos)
            self.pos = m.end()
            return base ** int(m.group("int"))
        return base

    def atom(self):
        self._skip()
        start = self.pos
        m = _TOKEN.match(self.text, self.pos)
        if not m:
            raise WordSyntaxError(f"unexpected {self.text[start:start + 1]!r}", start)
        if m.group("one"):
            self.pos = m.end()
            return IDENTITY
        sym = m.group("sym")
        if sym == "(":
            self.pos = m.end()
            inner = self.word()
            if self._peek() != ")":
                raise WordSyntaxError("missing ')'", self.pos)
            self.pos += 1
            return inner
        if sym:
            raise WordSyntaxError(f"unexpected {sym!r}", start)
        name = m.group("ident")
        self.pos = m.end()
        if name in self.macros:
            return self.macros[name]
        if name in GENERATORS:
            return Word.gen(name)
        if set(name) <= set(GENERATORS):
            return Word(tuple((g, 1) for g in name))
        raise UnknownMacroError(f"unknown macro {name!r}", start)


def parse_word(text, macros=None):
    """Parse text into a freely reduced Word; macros map names to Words."""
    macros = {} if macros is None else dict(macros)
    for name, value in list(macros.items()):
        if isinstance(value, str):
            macros[name] = parse_word(value, {k: v for k, v in macros.items() if k != name})
    p = _Parser(text, macros)
    if not text.strip():
        raise WordSyntaxError("empty input", 0)
    return p.parse()


def twist_w():
    """w = b a^-1 b^-1 a."""
    return Word((("b", 1), ("a", -1), ("b", -1), ("a", 1)))


def twist_relator(n):
    """r = w^n a w^-n b^-1, from w^n a = b w^n."""
    w = twist_w()
    return w ** n * Word.gen("a") * w ** -n * Word.gen("b", -1)


def default_macros():
    w = twist_w()
    return {"w": w, "wbar": reverse_word(w)}


class GroupRingElement:
    """Finite Z-linear combination of reduced words."""

    def __init__(self, terms=None):
        self.terms = {w: int(c) for w, c in (terms or {}).items() if c}

    @classmethod
    def of(cls, word, coeff=1):
        return cls({word: coeff})

    def __eq__(self, other):
        if isinstance(other, Word):
            other = GroupRingElement.of(other)
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other):
        out = defaultdict(int, self.terms)
        for w, c in _as_element(other).terms.items():
            out[w] += c
        return GroupRingElement(out)

    __radd__ = __add__

    def __neg__(self):
        return GroupRingElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_as_element(other))

    def __rsub__(self, other):
        return _as_element(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElement({w: c * other for w, c in self.terms.items()})
        other = _as_element(other)
        out = defaultdict(int)
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                out[w1 * w2] += c1 * c2
        return GroupRingElement(out)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return _as_element(other) * self

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = [f"{c}*({format_word(w)})" for w, c in sorted(self.terms.items(), key=lambda t: t[0].letters)]
        return " + ".join(parts)

    def __len__(self):
        return len(self.terms)


def _as_element(x):
    if isinstance(x, GroupRingElement):
        return x
    if isinstance(x, Word):
        return GroupRingElement.of(x)
    if isinstance(x, int):
        return GroupRingElement.of(IDENTITY, x)
    raise TypeError(f"cannot use {type(x).__name__} as a group ring element")


def fox_derivative(w, g):
    """Fox free derivative of the word w with respect to generator g."""
    if g not in GENERATORS:
        raise ValueError(f"unknown generator {g!r}")
    out = defaultdict(int)
    prefix = []
    for h, e in w.letters:
        if h == g:
            if e == 1:
                out[Word(tuple(prefix))] += 1
            else:
                out[Word(tuple(prefix) + ((g, -1),))] -= 1
        prefix.append((h, e))
    return GroupRingElement(out)


def evaluate(element, assignment):
    """Image of a group ring element under a -> A, b -> B (a 2x2 matrix)."""
    element = _as_element(element)
    images = {}
    for g in GENERATORS:
        m = np.asarray(assignment[g], dtype=complex)
        images[(g, 1)] = m
        images[(g, -1)] = sl2.inverse(m)
    cache = {(): sl2.identity()}

    def image(letters):
        # walk down to the longest cached prefix, then multiply back up
        k = len(letters)
        while letters[:k] not in cache:
            k -= 1
        m = cache[letters[:k]]
        for i in range(k, len(letters)):
            m = m @ images[letters[i]]
            cache[letters[: i + 1]] = m
        return m

    total = np.zeros((2, 2), dtype=complex)
    for w, c in element.terms.items():
        total += c * image(w.letters)
    return total


def evaluate_word(w, assignment):
    return evaluate(GroupRingElement.of(w), assignment)


def fox_jacobian(relator, assignment):
    """(rho(dr/da), rho(dr/db))."""
    return tuple(evaluate(fox_derivative(relator, g), assignment) for g in GENERATORS)


def johnson_torsion(relator, assignment, removed_generator="b"):
    """Torsion of a one-relator two-generator presentation.

    Deleting the column of generator g leaves det rho(dr/dh) for the other
    generator h, divided by det(rho(g) - I).
    """
    if removed_generator not in GENERATORS:
        raise ValueError(f"unknown generator {removed_generator!r}")
    kept = "a" if removed_generator == "b" else "b"
    denom = sl2.det(np.asarray(assignment[removed_generator]) - sl2.identity())
    if abs(denom) < DENOM_TOL:
        raise TorsionUndefinedError("parabolic meridian: torsion formula inapplicable")
    numer = sl2.det(evaluate(fox_derivative(relator, kept), assignment))
    return complex(numer / denom)
