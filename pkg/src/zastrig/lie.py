"""Exact symbolic Zassenhaus exponents in the free Lie algebra on X, Y.

Lie elements are kept as formal linear combinations of binary commutator
trees with :class:`fractions.Fraction` coefficients.  A tree is either one
of the generator labels ``"X"``/``"Y"`` or a 2-tuple ``(left, right)``
standing for ``[left, right]``.  Trees are canonicalised on construction:
``[w, w]`` is dropped and ``[b, a]`` is rewritten as ``-[a, b]`` whenever
``a`` precedes ``b`` in the canonical order (degree, leaf word, shape).
No Jacobi or Hall-basis reduction is attempted.

The independent check lives in :class:`NCPoly`, truncated polynomials in
non-commuting letters, where the factorisation
``exp(X+Y) = exp(X) exp(Y) exp(C_2) ...`` can be solved order by order.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Iterator, Mapping, Sequence, Union

Term = Union[str, tuple]
Scalar = Union[int, Fraction]

GENERATORS = ("X", "Y")
SYMBOLIC_ORDER_CAP = 10


# -- commutator trees -------------------------------------------------------

@lru_cache(maxsize=None)
def degree(term: Term) -> int:
    """Number of generator leaves in ``term``."""
    if isinstance(term, str):
        return 1
    return degree(term[0]) + degree(term[1])


@lru_cache(maxsize=None)
def leaf_word(term: Term) -> str:
    if isinstance(term, str):
        return term
    return leaf_word(term[0]) + leaf_word(term[1])


@lru_cache(maxsize=None)
def render_term(term: Term) -> str:
    if isinstance(term, str):
        return term
    return f"[{render_term(term[0])},{render_term(term[1])}]"


@lru_cache(maxsize=None)
def term_key(term: Term) -> tuple:
    """Canonical sort key: degree, then leaf labels, then tree shape."""
    return degree(term), leaf_word(term), render_term(term)


def bracket_terms(a: Term, b: Term) -> tuple[int, Term | None]:
    """Canonical form of ``[a, b]`` as ``(sign, tree)``; sign 0 means zero."""
    if a == b:
        return 0, None
    if term_key(a) < term_key(b):
        return 1, (a, b)
    return -1, (b, a)


# -- Lie polynomials --------------------------------------------------------

class LieExpr:
    """Immutable rational linear combination of canonical commutator trees."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Term, Scalar] | None = None):
        clean = {}
        for t, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[t] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def generator(cls, label: str) -> "LieExpr":
        if label not in GENERATORS:
            raise ValueError(f"unknown generator {label!r}; expected one of {GENERATORS}")
        return cls({label: 1})

    @property
    def terms(self) -> Mapping[Term, Fraction]:
        return dict(self._terms)

    @property
    def grade(self) -> int | None:
        """Common degree of all terms, or None if empty or inhomogeneous."""
        degs = {degree(t) for t in self._terms}
        return degs.pop() if len(degs) == 1 else None

    def items(self) -> Iterator[tuple[Term, Fraction]]:
        """Terms in canonical order."""
        for t in sorted(self._terms, key=term_key):
            yield t, self._terms[t]

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, LieExpr):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other: "LieExpr") -> "LieExpr":
        if not isinstance(other, LieExpr):
            return NotImplemented
        out = dict(self._terms)
        for t, c in other._terms.items():
            out[t] = out.get(t, 0) + c
        return LieExpr(out)

    def __neg__(self) -> "LieExpr":
        return LieExpr({t: -c for t, c in self._terms.items()})

    def __sub__(self, other: "LieExpr") -> "LieExpr":
        if not isinstance(other, LieExpr):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar: Scalar) -> "LieExpr":
        if isinstance(scalar, LieExpr):
            return NotImplemented
        s = Fraction(scalar)
        return LieExpr({t: c * s for t, c in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar: Scalar) -> "LieExpr":
        return self * (1 / Fraction(scalar))

    def bracket(self, other: "LieExpr") -> "LieExpr":
        """``[self, other]`` expanded by bilinearity."""
        out: dict[Term, Fraction] = {}
        for a, ca in self._terms.items():
            for b, cb in other._terms.items():
                sign, t = bracket_terms(a, b)
                if sign:
                    out[t] = out.get(t, 0) + sign * ca * cb
        return LieExpr(out)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, (t, c) in enumerate(self.items()):
            mag = abs(c)
            body = render_term(t) if mag == 1 else f"{mag} {render_term(t)}"
            if i == 0:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"{'+' if c > 0 else '-'} {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"LieExpr({self})"


X = LieExpr.generator("X")
Y = LieExpr.generator("Y")
ZERO = LieExpr()


def ad_apply(a: LieExpr, b: LieExpr, power: int) -> LieExpr:
    """``ad_a^power b``; ``power == 0`` returns ``b`` unchanged."""
    if power < 0:
        raise ValueError("power must be non-negative")
    for _ in range(power):
        if not b:
            break
        b = a.bracket(b)
    return b


@lru_cache(maxsize=None)
def f1k(k: int) -> LieExpr:
    """sum_{j=1..k} (-1)^k / (j! (k-j)!) ad_Y^{k-j} ad_X^j Y."""
    if k < 1:
        raise ValueError("f1k requires k >= 1")
    total = ZERO
    inner = Y
    for j in range(1, k + 1):
        inner = X.bracket(inner)
        coeff = Fraction((-1) ** k, factorial(j) * factorial(k - j))
        total = total + coeff * ad_apply(Y, inner, k - j)
    return total


def fnk(n: int, k: int, lower_c: Sequence[LieExpr],
        _memo: dict | None = None) -> LieExpr:
    """The f_{n,k} recursion for ``n >= 1``.

    ``lower_c`` holds ``[C_2, ..., C_m]`` with ``m >= n``.  For n >= 2,
    f_{n,k} = sum_{j=0}^{k//n - 1} (-1)^j / j! ad_{C_n}^j f_{n-1, k-nj}.
    """
    if n == 1:
        return f1k(k)
    if n < 1:
        raise ValueError("n must be >= 1")
    if k < n:
        raise ValueError(f"f_{{n,k}} needs k >= n (got n={n}, k={k})")
    if len(lower_c) < n - 1:
        raise ValueError(f"fnk({n}, {k}) needs C_2..C_{n}; only {len(lower_c)} terms supplied")
    memo = {} if _memo is None else _memo
    key = (n, k)
    if key in memo:
        return memo[key]
    c_n = lower_c[n - 2]
    total = ZERO
    for j in range(k // n):
        prev = fnk(n - 1, k - n * j, lower_c, memo)
        total = total + Fraction((-1) ** j, factorial(j)) * ad_apply(c_n, prev, j)
    memo[key] = total
    return total


@lru_cache(maxsize=None)
def _terms_upto(n_max: int) -> tuple[LieExpr, ...]:
    memo: dict = {}
    terms = [f1k(1) / 2]
    for n in range(3, n_max + 1):
        terms.append(fnk((n - 1) // 2, n - 1, terms, memo) / n)
    return tuple(terms)


def zassenhaus_terms(n_max: int, cap: int = SYMBOLIC_ORDER_CAP) -> list[LieExpr]:
    """Return ``[C_2, ..., C_{n_max}]`` with exact rational coefficients.

    Orders above ``cap`` are refused; tree counts grow combinatorially and
    numeric work should go through :func:`zastrig.trig.numeric_c_terms`.
    """
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    if n_max > cap:
        raise ValueError(f"symbolic generation capped at order {cap} (asked for {n_max})")
    return list(_terms_upto(n_max))


def left_zassenhaus_terms(n_max: int, cap: int = SYMBOLIC_ORDER_CAP) -> list[LieExpr]:
    """Exponents of the left-oriented product: Cbar_i = (-1)^(i+1) C_i."""
    return [c if i % 2 else -c
            for i, c in enumerate(zassenhaus_terms(n_max, cap), start=2)]


# -- truncated non-commutative polynomials ----------------------------------

class NCPoly:
    """Polynomial in non-commuting X, Y truncated above a fixed word length.

    Words are plain strings over ``"XY"``; the empty word is the constant
    term.  All products discard words longer than ``truncation``.
    """

    __slots__ = ("truncation", "_terms")

    def __init__(self, truncation: int, terms: Mapping[str, Scalar] | None = None):
        if truncation < 1:
            raise ValueError("truncation degree must be positive")
        self.truncation = truncation
        clean = {}
        for w, c in (terms or {}).items():
            if len(w) > truncation:
                continue
            if set(w) - set(GENERATORS):
                raise ValueError(f"word {w!r} uses letters outside {GENERATORS}")
            c = Fraction(c)
            if c:
                clean[w] = c
        self._terms = clean

    @classmethod
    def one(cls, truncation: int) -> "NCPoly":
        return cls(truncation, {"": 1})

    @classmethod
    def letter(cls, label: str, truncation: int) -> "NCPoly":
        return cls(truncation, {label: 1})

    @property
    def terms(self) -> Mapping[str, Fraction]:
        return dict(self._terms)

    @property
    def constant(self) -> Fraction:
        return self._terms.get("", Fraction(0))

    def homogeneous_part(self, d: int) -> "NCPoly":
        return NCPoly(self.truncation, {w: c for w, c in self._terms.items() if len(w) == d})

    def retruncate(self, truncation: int) -> "NCPoly":
        return NCPoly(truncation, self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.truncation == other.truncation and self._terms == other._terms

    def __add__(self, other: "NCPoly") -> "NCPoly":
        n = min(self.truncation, other.truncation)
        out = dict(self._terms)
        for w, c in other._terms.items():
            out[w] = out.get(w, 0) + c
        return NCPoly(n, out)

    def __neg__(self) -> "NCPoly":
        return NCPoly(self.truncation, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other: "NCPoly") -> "NCPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, NCPoly):
            return nc_mul(self, other)
        s = Fraction(other)
        return NCPoly(self.truncation, {w: c * s for w, c in self._terms.items()})

    def __rmul__(self, scalar):
        return self * scalar

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        words = sorted(self._terms, key=lambda w: (len(w), w))
        return " + ".join(f"{self._terms[w]}*{w or '1'}" for w in words)

    def __repr__(self) -> str:
        return f"NCPoly(N={self.truncation}: {self})"


def nc_mul(p: NCPoly, q: NCPoly) -> NCPoly:
    """Truncated product; words longer than the shared truncation are dropped."""
    n = min(p.truncation, q.truncation)
    by_len: dict[int, list] = {}
    for w, c in q._terms.items():
        by_len.setdefault(len(w), []).append((w, c))
    out: dict[str, Fraction] = {}
    for u, a in p._terms.items():
        room = n - len(u)
        for length, bucket in by_len.items():
            if length > room:
                continue
            for v, b in bucket:
                w = u + v
                out[w] = out.get(w, 0) + a * b
    return NCPoly(n, out)


def nc_exp(p: NCPoly) -> NCPoly:
    """sum_k p^k / k!, exact; ``p`` must have zero constant term."""
    if p.constant:
        raise ValueError("nc_exp needs a polynomial with zero constant term")
    total = NCPoly.one(p.truncation)
    power = NCPoly.one(p.truncation)
    for k in range(1, p.truncation + 1):
        power = nc_mul(power, p) * Fraction(1, k)
        if not power._terms:
            break
        total = total + power
    return total


def nc_log(p: NCPoly) -> NCPoly:
    """sum_k (-1)^(k+1) (p-1)^k / k, exact; ``p`` must have constant term 1."""
    if p.constant != 1:
        raise ValueError("nc_log needs a polynomial with constant term 1")
    q = p - NCPoly.one(p.truncation)
    total = NCPoly(p.truncation)
    power = NCPoly.one(p.truncation)
    for k in range(1, p.truncation + 1):
        power = nc_mul(power, q)
        if not power._terms:
            break
        total = total + power * Fraction((-1) ** (k + 1), k)
    return total


@lru_cache(maxsize=None)
def _expand(term: Term) -> tuple[tuple[str, int], ...]:
    if isinstance(term, str):
        return ((term, 1),)
    left, right = dict(_expand(term[0])), dict(_expand(term[1]))
    out: dict[str, int] = {}
    for u, a in left.items():
        for v, b in right.items():
            out[u + v] = out.get(u + v, 0) + a * b
            out[v + u] = out.get(v + u, 0) - a * b
    return tuple((w, c) for w, c in out.items() if c)


def to_ncpoly(e: LieExpr, truncation: int) -> NCPoly:
    """Expand every ``[a, b]`` as ``ab - ba`` into words over X, Y."""
    out: dict[str, Fraction] = {}
    for t, c in e._terms.items():
        if degree(t) > truncation:
            raise ValueError(f"term {render_term(t)} has degree {degree(t)} > truncation {truncation}")
        for w, k in _expand(t):
            out[w] = out.get(w, 0) + c * k
    return NCPoly(truncation, out)


@lru_cache(maxsize=None)
def oracle_zassenhaus(n: int) -> NCPoly:
    """C_n recovered from exp(X+Y) = exp(X) exp(Y) exp(C_2) ... alone.

    Peels the known factors off exp(X+Y) in the degree-n truncated algebra
    and reads the exponent of what remains; its degree-n part is C_n.
    Does not touch the f_{n,k} recursion.
    """
    if n < 2:
        raise ValueError("oracle_zassenhaus needs n >= 2")
    x = NCPoly.letter("X", n)
    y = NCPoly.letter("Y", n)
    rest = nc_exp(x + y)
    rest = nc_mul(nc_exp(-x), rest)
    rest = nc_mul(nc_exp(-y), rest)
    for m in range(2, n):
        rest = nc_mul(nc_exp(-oracle_zassenhaus(m).retruncate(n)), rest)
    log_rest = nc_log(rest)
    for d in range(1, n):
        if log_rest.homogeneous_part(d).terms:
            raise ArithmeticError(f"oracle residue has a nonzero degree-{d} part")
    return log_rest.homogeneous_part(n)


def product_of_exponentials(factors: Iterable[NCPoly]) -> NCPoly:
    """Ordered product exp(f_1) exp(f_2) ... in the truncated algebra."""
    it = iter(factors)
    first = next(it)
    total = nc_exp(first)
    for f in it:
        total = nc_mul(total, nc_exp(f))
    return total
