"""Equation words in one unknown over a unitriangular coefficient group.

A word is a sequence of letters x^{+-1} and named constants bound to group
elements.  `collect` rewrites a word, using the identity f g = g f [f, g],
into the normal form

    x^eps * u1 * C_1(x) * ... * C_l(x)

where u1 is the product of the constants in their original order and every
C_i is a left-normed commutator whose first entry is a constant and whose
second is a power of the unknown.  The normal form is what the solver's
correction loop manipulates, and the defining identity

    evaluate(word, x) == x**eps * evaluate_normal_form(nf, x)

is checked exhaustively by the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .ut_group import GroupElement

__all__ = [
    "XLetter",
    "ConstLetter",
    "Word",
    "WordSyntaxError",
    "parse_word",
    "render_word",
    "substitute",
    "BaseAtom",
    "XPowAtom",
    "CommAtom",
    "NormalForm",
    "collect",
    "evaluate_word",
    "evaluate_tail",
    "evaluate_normal_form",
    "atom_bracket",
    "atom_x_exponent",
    "atom_min_level",
]


class WordSyntaxError(ValueError):
    """Raised on malformed word text; carries the 1-based token position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (token {position})")
        self.position = position


@dataclass(frozen=True)
class XLetter:
    sign: int

    def __post_init__(self):
        if self.sign not in (-1, 1):
            raise ValueError("unknown letters carry exponent +1 or -1")


@dataclass(frozen=True)
class ConstLetter:
    name: str


class Word:
    """An equation word with its coefficient table.

    Every constant letter must be bound; p and n are taken from the
    coefficients, or must be supplied when the table is empty.
    """

    __slots__ = ("letters", "coefficients", "p", "n")

    def __init__(self, letters, coefficients: Mapping[str, GroupElement],
                 p: int | None = None, n: int | None = None):
        letters = tuple(letters)
        coefficients = dict(coefficients)
        for g in coefficients.values():
            if p is None:
                p, n = g.p, g.m
            elif g.p != p or g.m != n:
                raise ValueError("coefficients live in different groups")
        if p is None or n is None:
            raise ValueError("p and n are required for a constant-free word")
        for letter in letters:
            if isinstance(letter, ConstLetter) and letter.name not in coefficients:
                raise ValueError(f"unbound coefficient {letter.name!r}")
        self.letters = letters
        self.coefficients = coefficients
        self.p = p
        self.n = n

    @property
    def exponent(self) -> int:
        """Signed sum of the unknown's occurrences."""
        return sum(l.sign for l in self.letters if isinstance(l, XLetter))

    def constant_names(self) -> list[str]:
        return [l.name for l in self.letters if isinstance(l, ConstLetter)]

    def lifted(self, embedding) -> "Word":
        """The same word with every coefficient pushed through an
        embedding; the unknown then ranges over the target group."""
        coeffs = {name: embedding.apply(g) for name, g in self.coefficients.items()}
        return Word(self.letters, coeffs, p=self.p, n=embedding.m)

    def __eq__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return (self.letters == other.letters
                and self.coefficients == other.coefficients
                and (self.p, self.n) == (other.p, other.n))

    def __repr__(self):
        return f"Word({render_word(self)!r}, p={self.p}, n={self.n})"


def parse_word(text: str, coefficients: Mapping[str, GroupElement],
               p: int | None = None, n: int | None = None) -> Word:
    """Parse whitespace-separated tokens: "x", "x^-1", or a bound name."""
    letters = []
    for pos, tok in enumerate(text.split(), start=1):
        if tok == "x":
            letters.append(XLetter(1))
        elif tok == "x^-1":
            letters.append(XLetter(-1))
        elif tok.isidentifier():
            if tok not in coefficients:
                raise WordSyntaxError(f"unknown token {tok!r}", pos)
            letters.append(ConstLetter(tok))
        else:
            raise WordSyntaxError(f"bad token {tok!r}", pos)
    return Word(letters, coefficients, p=p, n=n)


def render_word(word: Word) -> str:
    toks = []
    for letter in word.letters:
        if isinstance(letter, XLetter):
            toks.append("x" if letter.sign > 0 else "x^-1")
        else:
            toks.append(letter.name)
    return " ".join(toks)


def substitute(word: Word, k: int) -> Word:
    """Replace the unknown by its k-th power: each x^s becomes |k| copies
    of x^(sign(ks)); the exponent scales by k."""
    if k == 0:
        raise ValueError("substitution power must be nonzero")
    letters: list[XLetter | ConstLetter] = []
    for letter in word.letters:
        if isinstance(letter, XLetter):
            sign = 1 if k * letter.sign > 0 else -1
            letters.extend(XLetter(sign) for _ in range(abs(k)))
        else:
            letters.append(letter)
    return Word(letters, word.coefficients, p=word.p, n=word.n)


# -- commutator atoms -------------------------------------------------------

class BaseAtom:
    """A plain constant occurring inside the tail."""

    __slots__ = ("name", "base_names", "x_count", "_hash")

    def __init__(self, name: str):
        self.name = name
        self.base_names = (name,)
        self.x_count = 0
        self._hash = hash(("b", name))

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, BaseAtom) and self.name == other.name

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return self.name


class XPowAtom:
    """A power x^{+-1} of the unknown occurring inside a commutator."""

    __slots__ = ("sign", "base_names", "x_count", "_hash")

    def __init__(self, sign: int):
        if sign not in (-1, 1):
            raise ValueError("exponent must be +1 or -1")
        self.sign = sign
        self.base_names = ()
        self.x_count = 1
        self._hash = hash(("x", sign))

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, XPowAtom) and self.sign == other.sign

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "x" if self.sign > 0 else "x^-1"


class CommAtom:
    """Left-normed commutator node [left, right].

    Trees built by `collect` always have a BaseAtom (or an earlier CommAtom)
    on the left and an XPowAtom or BaseAtom on the right, matching the shape
    [u, x^s, S_1, ..., S_k].
    """

    __slots__ = ("left", "right", "base_names", "x_count", "_hash")

    def __init__(self, left, right):
        self.left = left
        self.right = right
        self.base_names = left.base_names + right.base_names
        self.x_count = left.x_count + right.x_count
        self._hash = hash(("c", left._hash, right._hash))

    @property
    def weight(self) -> int:
        return len(self.base_names) + self.x_count

    def __eq__(self, other):
        if self is other:
            return True
        return (isinstance(other, CommAtom)
                and self._hash == other._hash
                and self.left == other.left
                and self.right == other.right)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return atom_bracket(self)


Atom = BaseAtom | XPowAtom | CommAtom


def atom_bracket(atom: Atom) -> str:
    """Flattened left-normed bracket notation, e.g. [g1,x,g2]."""
    if not isinstance(atom, CommAtom):
        return repr(atom)
    parts = []
    node = atom
    while isinstance(node, CommAtom):
        parts.append(repr(node.right))
        node = node.left
    parts.append(repr(node))
    return "[" + ",".join(reversed(parts)) + "]"


def atom_x_exponent(atom: Atom) -> int:
    """Exponent of the unknown in the atom read as a plain word; computed
    by literally expanding [a, b] = a^-1 b^-1 a b."""
    if isinstance(atom, BaseAtom):
        return 0
    if isinstance(atom, XPowAtom):
        return atom.sign
    l, r = atom_x_exponent(atom.left), atom_x_exponent(atom.right)
    return (-l) + (-r) + l + r


def atom_min_level(atom: Atom, coefficient_levels: Mapping[str, int | float],
                   x_level: int = 1) -> int | float:
    """Lower bound for the central-series level of the atom's value, valid
    for every substitution: commutation adds the levels of the entries."""
    total: int | float = atom.x_count * x_level
    for name in atom.base_names:
        total += coefficient_levels[name]
    return total


# -- normal form -------------------------------------------------------------

@dataclass(frozen=True)
class NormalForm:
    """Collected shape x^epsilon * u1 * tail, with the coefficient table
    carried along so the tail atoms can be evaluated."""

    epsilon: int
    u1: GroupElement
    tail: tuple[Atom, ...]
    coefficients: dict[str, GroupElement]
    pruned_at: int | None = None


def collect(word: Word, max_level: int | None = None) -> NormalForm:
    """Run the two-phase collecting process.

    Phase 1 bubbles every unknown letter to the front: whenever an atom A
    sits immediately left of a letter x^s, the pair rewrites to
    x^s, A, [A, x^s].  A letter passing the atom list A_1..A_k therefore
    leaves behind A_1, [A_1,x^s], ..., A_k, [A_k,x^s].  Phase 2 bubbles the
    plain constants left past the commutator atoms the same way, via
    C g = g C [C, g], and folds them into u1 in their original order.

    If max_level is given, commutator atoms whose guaranteed level reaches
    it are dropped as they arise: in a target group whose algebra satisfies
    A^(max_level) = 0 they evaluate to the identity for every x, so the
    collected identity still holds there.  The bound uses the actual
    filtration levels of the bound coefficients.
    """
    pool: dict[Atom, Atom] = {}

    def intern(atom: Atom) -> Atom:
        return pool.setdefault(atom, atom)

    if max_level is not None:
        levels = {name: g.central_series_level()
                  for name, g in word.coefficients.items()}

        def keep(atom: Atom) -> bool:
            return atom_min_level(atom, levels) < max_level
    else:
        def keep(atom: Atom) -> bool:
            return True

    epsilon = 0
    atoms: list[Atom] = []
    for letter in word.letters:
        if isinstance(letter, ConstLetter):
            atoms.append(intern(BaseAtom(letter.name)))
            continue
        epsilon += letter.sign
        xp = intern(XPowAtom(letter.sign))
        moved: list[Atom] = []
        for a in atoms:
            moved.append(a)
            created = intern(CommAtom(a, xp))
            if keep(created):
                moved.append(created)
        atoms = moved

    u1 = GroupElement.identity(word.p, word.n)
    comms: list[Atom] = []
    for a in atoms:
        if isinstance(a, BaseAtom):
            u1 = u1 * word.coefficients[a.name]
            moved = []
            for c in comms:
                moved.append(c)
                created = intern(CommAtom(c, a))
                if keep(created):
                    moved.append(created)
            comms = moved
        else:
            comms.append(a)

    return NormalForm(epsilon, u1, tuple(comms), dict(word.coefficients),
                      pruned_at=max_level)


# -- evaluation ---------------------------------------------------------------

def _check_unknown(x: GroupElement, p: int, m: int) -> None:
    if x.p != p or x.m != m:
        raise ValueError(
            f"unknown lives in UT_{x.m}(F_{x.p}), expected UT_{m}(F_{p})"
        )


def evaluate_word(word: Word, x: GroupElement, lift=None) -> GroupElement:
    """Substitute x for the unknown and multiply out.  With `lift`, the
    coefficients are first pushed through the embedding and x must live in
    the target group."""
    if lift is not None:
        word = word.lifted(lift)
    _check_unknown(x, word.p, word.n)
    acc = GroupElement.identity(word.p, word.n)
    x_inv = None
    for letter in word.letters:
        if isinstance(letter, XLetter):
            if letter.sign > 0:
                acc = acc * x
            else:
                if x_inv is None:
                    x_inv = x.inv()
                acc = acc * x_inv
        else:
            acc = acc * word.coefficients[letter.name]
    return acc


def _evaluate_atom(atom: Atom, x: GroupElement,
                   coefficients: Mapping[str, GroupElement],
                   cache: dict[int, GroupElement]) -> GroupElement:
    got = cache.get(id(atom))
    if got is not None:
        return got
    if isinstance(atom, BaseAtom):
        value = coefficients[atom.name]
    elif isinstance(atom, XPowAtom):
        value = x if atom.sign > 0 else x.inv()
    else:
        a = _evaluate_atom(atom.left, x, coefficients, cache)
        b = _evaluate_atom(atom.right, x, coefficients, cache)
        value = a.inv() * b.inv() * a * b
    cache[id(atom)] = value
    return value


def evaluate_tail(nf: NormalForm, x: GroupElement, lift=None) -> GroupElement:
    """Product of the tail commutators at x (the v(x) part)."""
    coeffs = nf.coefficients
    if lift is not None:
        coeffs = {name: lift.apply(g) for name, g in coeffs.items()}
    _check_unknown(x, x.p, x.m)
    acc = GroupElement.identity(x.p, x.m)
    cache: dict[int, GroupElement] = {}
    for atom in nf.tail:
        acc = acc * _evaluate_atom(atom, x, coeffs, cache)
    return acc


def evaluate_normal_form(nf: NormalForm, x: GroupElement, lift=None) -> GroupElement:
    """The right-hand side u1 * v(x) of the collected equation."""
    u1 = nf.u1 if lift is None else lift.apply(nf.u1)
    _check_unknown(x, u1.p, u1.m)
    return u1 * evaluate_tail(nf, x, lift=lift)
