"""Exact arithmetic in free products of finite groups and infinite-cyclic factors.

A presentation is an ordered list of factors.  Finite factors are given by
explicit multiplication tables (elements are 0-based indices internally,
1-based in the file format); infinite-cyclic factors carry arbitrary-precision
integer exponents.  Group elements are kept in normal form: an alternating
sequence of syllables (factor index, non-identity factor element), which is
unique, so equality is structural comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import NotAGroup, ParseError, PresentationMismatch


@dataclass(frozen=True)
class FiniteFactor:
    """A finite group given by its full multiplication table (0-based)."""

    name: str
    table: tuple  # table[i][j] = i * j
    identity: int
    inverse: tuple

    @property
    def order(self):
        return len(self.table)

    def mul(self, i, j):
        return self.table[i][j]

    def inv(self, i):
        return self.inverse[i]


@dataclass(frozen=True)
class CyclicFactor:
    """An infinite cyclic group; elements are nonzero integer exponents."""

    name: str


def _validate_table(name, table):
    m = len(table)
    for row in table:
        if len(row) != m or any(not (0 <= x < m) for x in row):
            raise NotAGroup(f"factor {name}: table is not {m}x{m} over 1..{m}")
    # identity: the unique e with e*x = x*e = x
    identity = None
    for e in range(m):
        if all(table[e][x] == x and table[x][e] == x for x in range(m)):
            identity = e
            break
    if identity is None:
        raise NotAGroup(f"factor {name}: no identity element")
    inverse = [None] * m
    for x in range(m):
        for y in range(m):
            if table[x][y] == identity and table[y][x] == identity:
                inverse[x] = y
                break
        if inverse[x] is None:
            raise NotAGroup(f"factor {name}: element {x + 1} has no inverse")
    for a in range(m):
        for b in range(m):
            for c in range(m):
                if table[table[a][b]][c] != table[a][table[b][c]]:
                    raise NotAGroup(
                        f"factor {name}: associativity fails at "
                        f"({a + 1},{b + 1},{c + 1})"
                    )
    return identity, tuple(inverse)


def finite_factor(name, table):
    """Build a validated FiniteFactor from a 0-based table."""
    table = tuple(tuple(row) for row in table)
    identity, inverse = _validate_table(name, table)
    return FiniteFactor(name, table, identity, inverse)


class FreeProductPresentation:
    """A marked free product: factors plus a named generator alphabet.

    The alphabet maps letter names to non-identity factor elements; walks and
    words are spelled in these letters and their inverses.
    """

    def __init__(self, factors, alphabet, name="G"):
        if not factors:
            raise ParseError("at least one factor is required")
        self.factors = tuple(factors)
        self.name = name
        self.alphabet = dict(alphabet)
        names = set()
        for f in self.factors:
            if f.name in names:
                raise ParseError(f"duplicate factor name {f.name}")
            names.add(f.name)
        for letter, (fi, elem) in self.alphabet.items():
            if not (0 <= fi < len(self.factors)):
                raise ParseError(f"letter {letter}: factor index {fi} out of range")
            f = self.factors[fi]
            if isinstance(f, FiniteFactor):
                if not (0 <= elem < f.order):
                    raise ParseError(f"letter {letter}: element out of range")
                if elem == f.identity:
                    raise ParseError(f"letter {letter}: maps to the identity")
            else:
                if elem == 0:
                    raise ParseError(f"letter {letter}: maps to the identity")
        self._identity = NormalForm(self, ())

    # -- factor helpers -------------------------------------------------

    def factor_index(self, name):
        for i, f in enumerate(self.factors):
            if f.name == name:
                return i
        raise KeyError(name)

    def syllable_mul(self, fi, x, y):
        """Product of two elements of factor fi; None if it is the identity."""
        f = self.factors[fi]
        if isinstance(f, FiniteFactor):
            z = f.mul(x, y)
            return None if z == f.identity else z
        z = x + y
        return None if z == 0 else z

    def syllable_inv(self, fi, x):
        f = self.factors[fi]
        if isinstance(f, FiniteFactor):
            return f.inv(x)
        return -x

    def letter_syllable(self, letter, sign):
        fi, elem = self.alphabet[letter]
        if sign < 0:
            elem = self.syllable_inv(fi, elem)
        return fi, elem

    # -- element constructors -------------------------------------------

    def identity(self):
        return self._identity

    def element(self, syllables):
        """Normal form from raw syllables, merging adjacent equal factors."""
        out = []
        for fi, x in syllables:
            _append(self, out, fi, x)
        return NormalForm(self, tuple(out))

    def generator(self, letter):
        return self.element([self.letter_syllable(letter, +1)])

    def evaluate(self, word):
        """The element represented by a word in alphabet letters."""
        out = []
        for letter, sign in word.letters:
            if letter not in self.alphabet:
                raise KeyError(f"letter {letter} not in alphabet")
            fi, x = self.letter_syllable(letter, sign)
            _append(self, out, fi, x)
        return NormalForm(self, tuple(out))

    def __repr__(self):
        return f"FreeProductPresentation({self.name!r})"


def _append(pres, out, fi, x):
    """Append one syllable to a normal-form-in-progress, merging at the tail."""
    while out and out[-1][0] == fi:
        x = pres.syllable_mul(fi, out.pop()[1], x)
        if x is None:
            return
        break
    out.append((fi, x))


class NormalForm:
    """Canonical alternating-syllable representation of a group element."""

    __slots__ = ("group", "syllables", "_hash")

    def __init__(self, group, syllables):
        self.group = group
        self.syllables = syllables
        self._hash = hash(syllables)

    def __eq__(self, other):
        return (
            isinstance(other, NormalForm)
            and self.group is other.group
            and self.syllables == other.syllables
        )

    def __hash__(self):
        return self._hash

    def __len__(self):
        return len(self.syllables)

    @property
    def is_identity(self):
        return not self.syllables

    def __mul__(self, other):
        if not isinstance(other, NormalForm):
            return NotImplemented
        if self.group is not other.group:
            raise PresentationMismatch("operands from different presentations")
        a, b = self.syllables, other.syllables
        if not a:
            return other
        if not b:
            return self
        pres = self.group
        i, j = len(a), 0
        mid = []
        # cancel / merge across the junction
        while i > 0 and j < len(b) and a[i - 1][0] == b[j][0]:
            fi = a[i - 1][0]
            z = pres.syllable_mul(fi, a[i - 1][1], b[j][1])
            i -= 1
            j += 1
            if z is not None:
                mid = [(fi, z)]
                break
        return NormalForm(pres, a[:i] + tuple(mid) + b[j:])

    def inverse(self):
        pres = self.group
        return NormalForm(
            pres,
            tuple((fi, pres.syllable_inv(fi, x)) for fi, x in reversed(self.syllables)),
        )

    def __pow__(self, n):
        if n == 0:
            return self.group.identity()
        base = self if n > 0 else self.inverse()
        n = abs(n)
        result = self.group.identity()
        acc = base
        while n:
            if n & 1:
                result = result * acc
            n >>= 1
            if n:
                acc = acc * acc
        return result

    def conjugate(self, by):
        """by * self * by^-1."""
        return by * self * by.inverse()

    def cyclic_reduce(self):
        """Split self = conjugator * core * conjugator^-1 with core cyclically reduced.

        The core has minimal syllable count in the conjugacy class: matched end
        syllables are stripped until the first and last syllables lie in
        different factors or at most one syllable remains.
        """
        pres = self.group
        conj = pres.identity()
        core = self
        while len(core.syllables) >= 2 and core.syllables[0][0] == core.syllables[-1][0]:
            last = NormalForm(pres, (core.syllables[-1],))
            conj = conj * last.inverse()
            core = last * core * last.inverse()
        return conj, core

    def abelianized(self):
        """Image in the direct sum of abelianized factors, as a per-factor list.

        Finite-factor components are element indices of the factor itself
        multiplied in order (callers quotient by derived subgroups as needed);
        cyclic components are integer exponent sums.
        """
        pres = self.group
        acc = []
        for f in pres.factors:
            acc.append(f.identity if isinstance(f, FiniteFactor) else 0)
        for fi, x in self.syllables:
            f = pres.factors[fi]
            if isinstance(f, FiniteFactor):
                acc[fi] = f.mul(acc[fi], x)
            else:
                acc[fi] += x
        return acc

    def __repr__(self):
        return nf_to_str(self)


# -- words ---------------------------------------------------------------


@dataclass(frozen=True)
class Word:
    """A sequence of signed alphabet letters."""

    letters: tuple  # of (letter_name, +1 | -1)

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other):
        return Word(self.letters + other.letters)

    def inverse(self):
        return Word(tuple((l, -s) for l, s in reversed(self.letters)))

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return Word(self.letters * n)

    def __repr__(self):
        return word_to_str(self)


def word(*tokens):
    """Build a Word from tokens like "a", "b^-1"."""
    letters = []
    for t in tokens:
        for part in t.replace(".", " ").split():
            if part.endswith("^-1"):
                letters.append((part[:-3], -1))
            else:
                letters.append((part, +1))
    return Word(tuple(letters))


def word_to_str(w):
    return ".".join(l if s > 0 else f"{l}^-1" for l, s in w.letters) or "1"


def cyclic_subword(w, j, i):
    """The subword w[j, i): letters j..i-1, wrapping through the end if j > i."""
    n = len(w.letters)
    if not (0 <= j <= n and 0 <= i <= n):
        raise IndexError(f"indices ({j}, {i}) out of range for word of length {n}")
    if j <= i:
        return Word(w.letters[j:i])
    return Word(w.letters[j:] + w.letters[:i])


# -- serialization -------------------------------------------------------


def nf_to_str(nf):
    """Canonical element string: syllables `Factor:elem` joined by '.', identity '1'.

    Finite-factor elements print 1-based, matching the file format.
    """
    if nf.is_identity:
        return "1"
    parts = []
    for fi, x in nf.syllables:
        f = nf.group.factors[fi]
        shown = x + 1 if isinstance(f, FiniteFactor) else x
        parts.append(f"{f.name}:{shown}")
    return ".".join(parts)


def nf_from_str(pres, s):
    s = s.strip()
    if s == "1":
        return pres.identity()
    syl = []
    for part in s.split("."):
        fname, _, val = part.partition(":")
        fi = pres.factor_index(fname)
        f = pres.factors[fi]
        x = int(val)
        if isinstance(f, FiniteFactor):
            x -= 1
        syl.append((fi, x))
    return pres.element(syl)


def load_presentation(text):
    """Parse the line-oriented group-spec format.

    Lines: `group <name>`, `factor <name> table <m> <m*m entries 1..m>`,
    `factor <name> cyclic`, `letter <name> = <factor>:<element-index|integer>`.
    Blank lines and `#` comments are ignored.
    """
    name = "G"
    factors = []
    letters = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        try:
            if tok[0] == "group":
                name = tok[1]
            elif tok[0] == "factor":
                fname = tok[1]
                if tok[2] == "cyclic":
                    factors.append(CyclicFactor(fname))
                elif tok[2] == "table":
                    m = int(tok[3])
                    entries = [int(t) for t in tok[4:]]
                    if len(entries) != m * m:
                        raise ParseError(
                            f"line {lineno}: expected {m * m} table entries, "
                            f"got {len(entries)}"
                        )
                    if any(not (1 <= e <= m) for e in entries):
                        raise ParseError(f"line {lineno}: table entries must be 1..{m}")
                    table = [
                        [entries[r * m + c] - 1 for c in range(m)] for r in range(m)
                    ]
                    factors.append(finite_factor(fname, table))
                else:
                    raise ParseError(f"line {lineno}: unknown factor kind {tok[2]}")
            elif tok[0] == "letter":
                if tok[2] != "=":
                    raise ParseError(f"line {lineno}: expected `letter <name> = ...`")
                fname, _, val = tok[3].partition(":")
                letters.append((tok[1], fname, val, lineno))
            else:
                raise ParseError(f"line {lineno}: unknown directive {tok[0]}")
        except (IndexError, ValueError) as exc:
            if isinstance(exc, (ParseError, NotAGroup)):
                raise
            raise ParseError(f"line {lineno}: cannot parse {line!r}") from exc

    fnames = {f.name: i for i, f in enumerate(factors)}
    alphabet = {}
    for lname, fname, val, lineno in letters:
        if fname not in fnames:
            raise ParseError(f"line {lineno}: unknown factor {fname}")
        fi = fnames[fname]
        f = factors[fi]
        try:
            x = int(val)
        except ValueError:
            raise ParseError(f"line {lineno}: bad element {val!r}") from None
        if isinstance(f, FiniteFactor):
            x -= 1
        if lname in alphabet:
            raise ParseError(f"line {lineno}: duplicate letter {lname}")
        alphabet[lname] = (fi, x)
    return FreeProductPresentation(factors, alphabet, name=name)


def serialize_presentation(pres):
    """Canonical text form; load(serialize(load(x))) is bit-stable."""
    lines = [f"group {pres.name}"]
    for f in pres.factors:
        if isinstance(f, FiniteFactor):
            entries = " ".join(
                str(f.table[r][c] + 1) for r in range(f.order) for c in range(f.order)
            )
            lines.append(f"factor {f.name} table {f.order} {entries}")
        else:
            lines.append(f"factor {f.name} cyclic")
    for lname in sorted(pres.alphabet):
        fi, x = pres.alphabet[lname]
        f = pres.factors[fi]
        shown = x + 1 if isinstance(f, FiniteFactor) else x
        lines.append(f"letter {lname} = {f.name}:{shown}")
    return "\n".join(lines) + "\n"
