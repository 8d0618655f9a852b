"""Two-generator noncommutative polynomials and their normal ordering.

Words are tuples of ``(generator, exponent)`` blocks, generator ``LEFT`` (0,
printed ``A``) or ``RIGHT`` (1, printed ``B``).  An :class:`Algebra` couples a
commutation :class:`Relation` ``[B, A] = ...`` with a target basis and does
all the reordering.

Univariate relations ``[B, A] = p(A)`` (or ``p(B)``) are handled with the
closed form of the block rule ``B A^q -> A^q B + q A^(q-1) p(A)``: writing
``D = p(x) d/dx`` one has ``B^b f(A) = sum_k C(b,k) (D^k f)(A) B^(b-k)``.
Bivariate relations go through a grade-by-grade linear solver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping

from .combinat import UniPoly, _exp_key, _join_terms, _term_str
from .errors import ExponentKindError, NoNormalForm
from .scalars import Scalar, scalar_latex, scalar_str, substitute

LEFT, RIGHT = 0, 1
DEFAULT_NAMES = ("A", "B")

Word = tuple  # tuple[tuple[int, int | Fraction], ...]


def make_word(blocks: Iterable[tuple[int, object]]) -> Word:
    """Merge adjacent blocks of the same generator and drop zero exponents."""
    out: list[list] = []
    for g, e in blocks:
        if e == 0:
            continue
        if out and out[-1][0] == g:
            out[-1][1] = out[-1][1] + e
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append([g, e])
    return tuple((g, _exp_key(e)) for g, e in out)


def word_concat(w1: Word, w2: Word) -> Word:
    if not w1:
        return w2
    if not w2:
        return w1
    if w1[-1][0] != w2[0][0]:
        return w1 + w2
    return make_word(w1 + w2)


def word_degree(w: Word):
    return _exp_key(sum((e for _, e in w), 0))


def word_letters(w: Word) -> tuple[int, ...]:
    """Expand into single letters (integer exponents only)."""
    out: list[int] = []
    for g, e in w:
        if not isinstance(e, int) or e < 0:
            raise ExponentKindError(f"word {word_str(w)} has a non-integer exponent")
        out.extend([g] * e)
    return tuple(out)


def letters_word(letters: Iterable[int]) -> Word:
    return make_word((g, 1) for g in letters)


def word_sort_key(w: Word):
    # graded, then letter-lexicographic with A < B (a longer A-run sorts first)
    return (word_degree(w), tuple((g, -e if g == LEFT else e) for g, e in w))


def word_str(w: Word, names=DEFAULT_NAMES) -> str:
    if not w:
        return "1"
    parts = []
    for g, e in w:
        n = names[g]
        if e == 1:
            parts.append(n)
        elif isinstance(e, Fraction) or e < 0:
            parts.append(f"{n}^({e})")
        else:
            parts.append(f"{n}^{e}")
    return "*".join(parts)


def word_latex(w: Word, names=DEFAULT_NAMES) -> str:
    if not w:
        return ""
    parts = []
    for g, e in w:
        n = names[g]
        parts.append(n if e == 1 else f"{n}^{{{e}}}")
    return " ".join(parts)


class NCPoly:
    """Finite linear combination of words with exact coefficients.

    ``*`` between two NCPolys is free concatenation; reduction modulo a
    relation is always explicit through an :class:`Algebra`.
    """

    __slots__ = ("terms", "truncated")

    def __init__(self, terms: Mapping[Word, Scalar] | None = None, truncated: bool = False):
        clean = {}
        if terms:
            for w, c in terms.items():
                if c:
                    clean[w] = Fraction(c) if isinstance(c, int) else c
        self.terms = clean
        self.truncated = truncated

    @classmethod
    def _raw(cls, terms: dict, truncated: bool = False) -> "NCPoly":
        obj = object.__new__(cls)
        obj.terms = terms
        obj.truncated = truncated
        return obj

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls) -> "NCPoly":
        return cls._raw({})

    @classmethod
    def one(cls) -> "NCPoly":
        return cls._raw({(): Fraction(1)})

    @classmethod
    def scalar(cls, c: Scalar) -> "NCPoly":
        return cls({(): c})

    @classmethod
    def gen(cls, g: int, exponent=1, coeff: Scalar = 1) -> "NCPoly":
        return cls({make_word([(g, exponent)]): Fraction(coeff) if isinstance(coeff, int) else coeff})

    @classmethod
    def monomial(cls, word: Word, coeff: Scalar = 1) -> "NCPoly":
        return cls({make_word(word): Fraction(coeff) if isinstance(coeff, int) else coeff})

    @classmethod
    def from_unipoly(cls, p: UniPoly, g: int = LEFT) -> "NCPoly":
        return cls({make_word([(g, e)]): c for e, c in p.terms.items()})

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _lift(other) -> "NCPoly":
        if isinstance(other, NCPoly):
            return other
        return NCPoly.scalar(other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            if w in out:
                s = out[w] + c
                if s:
                    out[w] = s
                else:
                    del out[w]
            else:
                out[w] = c
        return NCPoly._raw(out, self.truncated or other.truncated)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly._raw({w: -c for w, c in self.terms.items()}, self.truncated)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, NCPoly):
            out: dict = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    w = word_concat(w1, w2)
                    c = c1 * c2
                    out[w] = out[w] + c if w in out else c
            return NCPoly(out, self.truncated or other.truncated)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c: Scalar) -> "NCPoly":
        if not c:
            return NCPoly._raw({}, self.truncated)
        return NCPoly._raw({w: c * v for w, v in self.terms.items()}, self.truncated)

    def __truediv__(self, c):
        if isinstance(c, int):
            c = Fraction(c)
        return NCPoly({w: v / c for w, v in self.terms.items()}, self.truncated)

    def __pow__(self, n: int):
        out = NCPoly.one()
        for _ in range(n):
            out = out * self
        return out

    # -- inspection -------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, NCPoly):
            if isinstance(other, (int, Fraction)) or type(other).__name__ == "ParamRat":
                other = NCPoly.scalar(other)
            else:
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def coeff(self, word: Word) -> Scalar:
        return self.terms.get(make_word(word), 0)

    def words(self) -> list[Word]:
        return sorted(self.terms, key=word_sort_key)

    def items(self):
        return [(w, self.terms[w]) for w in self.words()]

    def degree(self):
        return max((word_degree(w) for w in self.terms), default=None)

    def generators(self) -> set[int]:
        return {g for w in self.terms for g, _ in w}

    def is_normal(self, order=(LEFT, RIGHT)) -> bool:
        return all(_pair(w, order) is not None for w in self.terms)

    def homogeneous_part(self, degree) -> "NCPoly":
        return NCPoly._raw({w: c for w, c in self.terms.items() if word_degree(w) == degree})

    def truncate(self, cap) -> "NCPoly":
        kept = {w: c for w, c in self.terms.items() if word_degree(w) <= cap}
        return NCPoly._raw(kept, self.truncated or len(kept) < len(self.terms))

    def map_coeffs(self, fn) -> "NCPoly":
        return NCPoly({w: fn(c) for w, c in self.terms.items()}, self.truncated)

    def substitute(self, env) -> "NCPoly":
        return self.map_coeffs(lambda c: substitute(c, env))

    def rename(self, mapping: Mapping[int, int]) -> "NCPoly":
        """Relabel generators (e.g. swap A and B)."""
        return NCPoly(
            {make_word((mapping.get(g, g), e) for g, e in w): c for w, c in self.terms.items()},
            self.truncated,
        )

    def to_unipoly(self, g: int = LEFT, var: str | None = None) -> UniPoly:
        out = {}
        for w, c in self.terms.items():
            if not w:
                out[0] = c
            elif len(w) == 1 and w[0][0] == g:
                out[w[0][1]] = c
            else:
                raise ValueError(f"{self} is not a polynomial in a single generator")
        return UniPoly(out, var or DEFAULT_NAMES[g])

    def to_str(self, names=DEFAULT_NAMES) -> str:
        if not self.terms:
            return "0"
        return _join_terms([_term_str(self.terms[w], word_str(w, names) if w else "") for w in self.words()])

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"NCPoly({self.to_str()})"

    def latex(self, names=DEFAULT_NAMES) -> str:
        if not self.terms:
            return "0"
        return _join_terms(
            [_term_str(self.terms[w], word_latex(w, names), scalar_latex) for w in self.words()]
        )


A = NCPoly.gen(LEFT)
B = NCPoly.gen(RIGHT)


def _pair(w: Word, order) -> tuple | None:
    """Exponents (first, second) of a word normal for ``order``, else None."""
    p, q = order
    n = len(w)
    if n == 0:
        return (0, 0)
    if n == 1:
        g, e = w[0]
        return (e, 0) if g == p else (0, e)
    if n == 2 and w[0][0] == p:
        return (w[0][1], w[1][1])
    return None


def _unpair(pair, order) -> Word:
    a, b = pair
    p, q = order
    if a == 0:
        return ((q, b),) if b != 0 else ()
    if b == 0:
        return ((p, a),)
    return ((p, a), (q, b))


@dataclass(frozen=True)
class Relation:
    """The commutation rule ``[B, A] = BA - AB``.

    kind is ``free`` (no rule), ``left`` (``p`` is a polynomial in A),
    ``right`` (``p`` in B) or ``bivariate`` (``q`` an NCPoly of degree <= 2).
    """

    kind: str
    p: UniPoly | None = None
    q: NCPoly | None = None

    @classmethod
    def free(cls) -> "Relation":
        return cls("free")

    @classmethod
    def left(cls, p) -> "Relation":
        return cls("left", _as_unipoly(p, "A"))

    @classmethod
    def right(cls, p) -> "Relation":
        return cls("right", _as_unipoly(p, "B"))

    @classmethod
    def bivariate(cls, q: NCPoly) -> "Relation":
        if q.degree() is not None and q.degree() > 2:
            raise ValueError("bivariate relations must have total degree <= 2")
        for w in q.terms:
            word_letters(w)
        return cls("bivariate", q=q)

    @property
    def univariate(self) -> bool:
        return self.kind in ("left", "right")

    @property
    def function_gen(self) -> int | None:
        return {"left": LEFT, "right": RIGHT}.get(self.kind)

    def commutator_value(self) -> NCPoly:
        """[B, A] as a polynomial."""
        if self.kind == "free":
            raise ValueError("the free algebra has no commutator value")
        if self.kind == "bivariate":
            return self.q
        return NCPoly.from_unipoly(self.p, self.function_gen)

    def negated(self) -> "Relation":
        if self.kind == "bivariate":
            return Relation.bivariate(-self.q)
        if self.kind == "free":
            return self
        return Relation(self.kind, -self.p)

    def mirrored(self) -> "Relation":
        """Same polynomial in the other generator (left <-> right)."""
        if self.kind == "left":
            return Relation.right(self.p)
        if self.kind == "right":
            return Relation.left(self.p)
        raise ValueError("only univariate relations can be mirrored")

    def integer_exponents(self) -> bool:
        if self.kind == "free":
            return True
        if self.kind == "bivariate":
            return True
        return self.p.has_integer_exponents()

    def describe(self) -> str:
        if self.kind == "free":
            return "free"
        return f"[B, A] = {self.commutator_value()}"


def _as_unipoly(p, var) -> UniPoly:
    if isinstance(p, UniPoly):
        return p.with_var(var)
    if isinstance(p, NCPoly):
        return p.to_unipoly(LEFT if var == "A" else RIGHT, var)
    return UniPoly.constant(p, var)


class Algebra:
    """Reduction context: a relation, a target basis and an optional degree cap.

    ``basis='normal'`` puts A to the left of B, ``'antinormal'`` the reverse.
    Caches built here hold immutable data only and are filled
    deterministically, so an Algebra can be shared freely.
    """

    def __init__(
        self,
        relation: Relation,
        degree_cap: int | None = None,
        basis: str = "normal",
        names: tuple[str, str] = DEFAULT_NAMES,
        max_grade: int = 12,
    ):
        if basis not in ("normal", "antinormal"):
            raise ValueError(f"unknown basis {basis!r}")
        if relation.kind == "bivariate" and basis != "normal":
            raise ValueError("bivariate relations support the normal basis only")
        self.relation = relation
        self.degree_cap = degree_cap
        self.basis = basis
        self.names = tuple(names)
        self.max_grade = max_grade
        self.order = (LEFT, RIGHT) if basis == "normal" else (RIGHT, LEFT)
        self._swap_cache: dict = {}
        self._dpow_cache: dict = {}
        self._word_cache: dict = {}
        self._bv_cache: dict = {}
        if relation.univariate:
            f = relation.function_gen
            sign = 1 if relation.kind == "left" else -1
            # sign of the derivation when the function generator is on the left
            self._dsign = sign if self.order[0] == f else -sign
            self._fgen = f
        if relation.kind == "bivariate":
            self._setup_bivariate()

    def __repr__(self):
        return f"Algebra({self.relation.describe()}, basis={self.basis}, cap={self.degree_cap})"

    def with_basis(self, basis: str) -> "Algebra":
        return Algebra(self.relation, self.degree_cap, basis, self.names, self.max_grade)

    @property
    def is_free(self) -> bool:
        return self.relation.kind == "free"

    # -- exponent discipline ---------------------------------------------
    def check_word(self, w: Word) -> None:
        rel = self.relation
        for g, e in w:
            integral = isinstance(e, int) and e >= 0
            if integral:
                continue
            if rel.univariate and g == rel.function_gen:
                continue
            raise ExponentKindError(
                f"exponent {e} on {self.names[g]} is not a nonnegative integer in word {word_str(w, self.names)}"
            )

    def check(self, x: NCPoly) -> None:
        for w in x.terms:
            self.check_word(w)

    # -- products ----------------------------------------------------------
    def mul(self, x: NCPoly, y: NCPoly) -> NCPoly:
        """Free concatenation product, truncated at the degree cap."""
        self.check(x)
        self.check(y)
        return self._cap(x * y)

    def _cap(self, x: NCPoly) -> NCPoly:
        if self.degree_cap is None:
            return x
        return x.truncate(self.degree_cap)

    def normal_order(self, x: NCPoly) -> NCPoly:
        if self.is_free:
            self.check(x)
            return self._cap(x)
        out: dict = {}
        order = self.order
        for w, c in x.terms.items():
            pair = _pair(w, order)
            if pair is not None:
                if not all(type(e) is int for e in pair):
                    self.check_word(w)
                nf = {pair: 1}
            else:
                self.check_word(w)
                nf = self._order_word(w)
            for k, v in nf.items():
                v = c * v if v != 1 else c
                out[k] = out[k] + v if k in out else v
        return self._cap(self._from_pairs(out, x.truncated))

    def nmul(self, x: NCPoly, y: NCPoly) -> NCPoly:
        """normal_order(x * y), fast when x and y are already normal."""
        if self.is_free:
            return self._cap(x * y)
        order = self.order
        xs = []
        for w, c in x.terms.items():
            p = _pair(w, order)
            if p is None:
                return self.normal_order(x * y)
            xs.append((p, c))
        ys = []
        for w, c in y.terms.items():
            p = _pair(w, order)
            if p is None:
                return self.normal_order(x * y)
            ys.append((p, c))
        out: dict = {}
        for p1, c1 in xs:
            for p2, c2 in ys:
                c12 = c1 * c2
                for k, v in self._mono_mul(p1, p2).items():
                    v = c12 * v if v != 1 else c12
                    out[k] = out[k] + v if k in out else v
        return self._cap(self._from_pairs(out, x.truncated or y.truncated))

    def power(self, x: NCPoly, n: int) -> NCPoly:
        out = self.normal_order(NCPoly.one())
        base = self.normal_order(x)
        for _ in range(n):
            out = self.nmul(out, base)
        return out

    def _from_pairs(self, d: dict, truncated: bool) -> NCPoly:
        order = self.order
        return NCPoly._raw({_unpair(k, order): v for k, v in d.items() if v}, truncated)

    def _order_word(self, w: Word) -> dict:
        cached = self._word_cache.get(w)
        if cached is not None:
            return cached
        p, _ = self.order
        acc = {(0, 0): Fraction(1)}
        for g, e in w:
            mono = (e, 0) if g == p else (0, e)
            nxt: dict = {}
            for k, c in acc.items():
                for k2, v in self._mono_mul(k, mono).items():
                    v = c * v
                    nxt[k2] = nxt[k2] + v if k2 in nxt else v
            acc = {k: v for k, v in nxt.items() if v}
        self._word_cache[w] = acc
        return acc

    def _mono_mul(self, p1, p2) -> dict:
        a, b = p1
        c, d = p2
        if b == 0 or c == 0:
            return {(_exp_key(a + c), _exp_key(b + d)): 1}
        out = {}
        for (e, f), v in self._swap(b, c).items():
            out[(_exp_key(a + e), _exp_key(f + d))] = v
        return out

    def _swap(self, b, c) -> dict:
        """Normal form of Q^b P^c as {(P-exp, Q-exp): coeff}."""
        key = (b, c)
        cached = self._swap_cache.get(key)
        if cached is not None:
            return cached
        if self.relation.kind == "bivariate":
            result = self._bv_swap(b, c)
        else:
            result = self._uni_swap(b, c)
        self._swap_cache[key] = result
        return result

    def _uni_swap(self, b, c) -> dict:
        p, q = self.order
        out: dict = {}
        if p == self._fgen:
            # Q^b f(P) = sum_k C(b,k) (D^k f)(P) Q^(b-k)
            if not isinstance(b, int):
                raise ExponentKindError(f"exponent {b} on {self.names[q]} must be an integer")
            for k in range(b + 1):
                poly = self._dpow(c, k)
                if not poly:
                    break
                ck = math.comb(b, k)
                for e, v in poly.terms.items():
                    key = (e, b - k)
                    v = ck * v
                    out[key] = out[key] + v if key in out else v
        else:
            # f(Q) P^c = sum_k C(c,k) P^(c-k) (D^k f)(Q)
            if not isinstance(c, int):
                raise ExponentKindError(f"exponent {c} on {self.names[p]} must be an integer")
            for k in range(c + 1):
                poly = self._dpow(b, k)
                if not poly:
                    break
                ck = math.comb(c, k)
                for e, v in poly.terms.items():
                    key = (c - k, e)
                    v = ck * v
                    out[key] = out[key] + v if key in out else v
        return {k: v for k, v in out.items() if v}

    def _dpow(self, c, k) -> UniPoly:
        """(s D)^k x^c with D = p(x) d/dx and s the basis-dependent sign."""
        key = (c, k)
        cached = self._dpow_cache.get(key)
        if cached is not None:
            return cached
        if k == 0:
            result = UniPoly({c: Fraction(1)})
        else:
            prev = self._dpow(c, k - 1)
            result = self.relation.p.with_var("x") * prev.derivative()
            if self._dsign < 0:
                result = -result
        self._dpow_cache[key] = result
        return result

    # -- bivariate grade solver -------------------------------------------
    def _setup_bivariate(self) -> None:
        q = self.relation.q
        ba = ((RIGHT, 1), (LEFT, 1))
        c_ba = q.terms.get(ba, 0)
        denom = 1 - c_ba
        if not denom:
            self._bv_rule = None
            return
        rule = (NCPoly.monomial(((LEFT, 1), (RIGHT, 1))) + q - NCPoly.monomial(ba, c_ba)) / denom
        self._bv_rule = [(word_letters(w), c) for w, c in rule.terms.items()]

    def _bv_swap(self, b, c) -> dict:
        letters = (RIGHT,) * b + (LEFT,) * c
        return self._bv_nf(letters)

    def _bv_nf(self, letters: tuple) -> dict:
        pair = _letters_pair(letters)
        if pair is not None:
            return {pair: Fraction(1)}
        cached = self._bv_cache.get(letters)
        if cached is not None:
            return cached
        if self._bv_rule is None:
            raise NoNormalForm(2, "B*A", "the coefficient of BA in [B, A] equals 1")
        n = len(letters)
        if n > self.max_grade:
            raise NoNormalForm(n, word_str(letters_word(letters), self.names), "grade exceeds max_grade")
        self._bv_solve(letters)
        return self._bv_cache[letters]

    def _bv_solve(self, start: tuple) -> None:
        n = len(start)
        unknowns: list[tuple] = []
        index: dict[tuple, int] = {}
        rows: list[dict] = []
        rhs: list[dict] = []
        stack = [start]
        index[start] = 0
        unknowns.append(start)
        while stack:
            w = stack.pop()
            i = _first_descent(w)
            u, v = w[:i], w[i + 2 :]
            row: dict = {}
            known: dict = {}
            for rl, rc in self._bv_rule:
                new = u + rl + v
                if len(new) == n:
                    pair = _letters_pair(new)
                    if pair is not None:
                        known[pair] = known.get(pair, 0) + rc
                        continue
                    cached = self._bv_cache.get(new)
                    if cached is not None:
                        _axpy(known, rc, cached)
                        continue
                    j = index.get(new)
                    if j is None:
                        j = index[new] = len(unknowns)
                        unknowns.append(new)
                        stack.append(new)
                    row[j] = row.get(j, 0) + rc
                else:
                    _axpy(known, rc, self._bv_nf(new))
            rows.append((index[w], row))
            rhs.append((index[w], known))
        m = len(unknowns)
        # matrix M = I - coeffs, M X = rhs
        mat = [dict() for _ in range(m)]
        vec = [dict() for _ in range(m)]
        for (i, row), (_, known) in zip(rows, rhs):
            r = {i: Fraction(1)}
            for j, cval in row.items():
                r[j] = r.get(j, 0) - cval
            mat[i] = {j: val for j, val in r.items() if val}
            vec[i] = {k: val for k, val in known.items() if val}
        solution = _solve_sparse(mat, vec, m, lambda col: self._singular(n, unknowns[col]))
        for w, sol in zip(unknowns, solution):
            self._bv_cache[w] = sol

    def _singular(self, grade: int, letters: tuple) -> NoNormalForm:
        return NoNormalForm(grade, word_str(letters_word(letters), self.names), "singular grade system")

    # -- derived operations ---------------------------------------------------
    def commutator(self, x: NCPoly, y: NCPoly) -> NCPoly:
        """[x, y] = xy - yx, normal-ordered."""
        return self.normal_order(x * y - y * x)

    def adjoint_pow(self, k: int, x: NCPoly, by: NCPoly | None = None) -> NCPoly:
        """ad_by^k(x), by default ``by = B``."""
        by = B if by is None else by
        out = self.normal_order(x)
        for _ in range(k):
            out = self.commutator(by, out)
        return out


def _letters_pair(letters: tuple) -> tuple | None:
    a = 0
    n = len(letters)
    while a < n and letters[a] == LEFT:
        a += 1
    b = a
    while b < n and letters[b] == RIGHT:
        b += 1
    if b != n:
        return None
    return (a, n - a)


def _first_descent(letters: tuple) -> int:
    for i in range(len(letters) - 1):
        if letters[i] == RIGHT and letters[i + 1] == LEFT:
            return i
    raise ValueError("word is already normal")


def _axpy(target: dict, a, src: Mapping) -> None:
    for k, v in src.items():
        val = a * v
        target[k] = target[k] + val if k in target else val


def _solve_sparse(mat: list[dict], vec: list[dict], m: int, on_singular) -> list[dict]:
    """Gauss-Jordan elimination with dict rows and dict-valued right-hand sides."""
    rows = list(range(m))
    pivot_row_of: dict[int, int] = {}
    for col in range(m):
        piv = None
        for r in rows:
            if r not in pivot_row_of.values() and mat[r].get(col):
                piv = r
                break
        if piv is None:
            raise on_singular(col)
        pivot_row_of[col] = piv
        pv = mat[piv][col]
        inv = 1 / pv if not isinstance(pv, int) else Fraction(1, pv)
        mat[piv] = {j: v * inv for j, v in mat[piv].items()}
        vec[piv] = {k: v * inv for k, v in vec[piv].items()}
        for r in rows:
            if r == piv:
                continue
            f = mat[r].get(col)
            if not f:
                continue
            row = mat[r]
            for j, v in mat[piv].items():
                nv = row.get(j, 0) - f * v
                if nv:
                    row[j] = nv
                else:
                    row.pop(j, None)
            vr = vec[r]
            for k, v in vec[piv].items():
                nv = vr.get(k, 0) - f * v
                if nv:
                    vr[k] = nv
                else:
                    vr.pop(k, None)
    return [{k: v for k, v in vec[pivot_row_of[col]].items() if v} for col in range(m)]


# ---------------------------------------------------------------------------
# free-standing operations
# ---------------------------------------------------------------------------

def mul(x: NCPoly, y: NCPoly, ctx: Algebra) -> NCPoly:
    return ctx.mul(x, y)


def normal_order(x: NCPoly, ctx: Algebra) -> NCPoly:
    return ctx.normal_order(x)


def commutator(x: NCPoly, y: NCPoly, ctx: Algebra) -> NCPoly:
    return ctx.commutator(x, y)


def adjoint_pow(k: int, x: NCPoly, ctx: Algebra) -> NCPoly:
    return ctx.adjoint_pow(k, x)


def all_orderings(i: int, j: int) -> NCPoly:
    """Sum of the C(i+j, i) interleavings of i A's and j B's."""
    n = i + j
    terms = {}
    for pos in combinations(range(n), i):
        letters = [RIGHT] * n
        for p in pos:
            letters[p] = LEFT
        terms[letters_word(letters)] = Fraction(1)
    return NCPoly(terms)


def binomial_power(n: int, ctx: Algebra) -> NCPoly:
    """Normal-ordered (A + B)^n."""
    return ctx.power(A + B, n)


def product_power(n: int, ctx: Algebra) -> NCPoly:
    """Normal-ordered (A B)^n."""
    return ctx.power(A * B, n)


def image_algebra(ctx: Algebra) -> Algebra:
    rel = ctx.relation
    if not rel.univariate:
        raise ValueError("the L map needs a univariate relation")
    names = ("C", "D") if ctx.names == DEFAULT_NAMES else DEFAULT_NAMES
    return Algebra(rel.mirrored(), ctx.degree_cap, "normal", names, ctx.max_grade)


def l_map(x: NCPoly, ctx: Algebra) -> tuple[NCPoly, Algebra]:
    """The anti-homomorphism sum x_ij A^i B^j -> sum x_ij C^j D^i.

    ``ctx`` must use the normal basis.  The image lives in the algebra with
    the mirrored relation ([D, C] = p(D) when [B, A] = p(A)), whose words
    are again written left generator first.  Applying it twice returns the
    original element up to renaming.
    """
    if ctx.basis != "normal":
        raise ValueError("l_map expects the normal basis")
    image = image_algebra(ctx)
    x = ctx.normal_order(x)
    out = {}
    for w, c in x.terms.items():
        a, b = _pair(w, (LEFT, RIGHT))
        if not (isinstance(b, int) and b >= 0):
            raise ExponentKindError(f"cannot swap the non-integer exponent {b}")
        out[_unpair((b, a), (LEFT, RIGHT))] = c
    result = NCPoly(out, x.truncated)
    image.check(result)
    return result, image
