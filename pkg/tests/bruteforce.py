"""Naive reference implementations used as oracles by the tests.

Everything here works letter by letter on tuples of generator indices and
shares no code with the package's reduction machinery.
"""

from fractions import Fraction
from itertools import product
from math import comb, factorial

from ncorder.ncalg import LEFT, RIGHT, NCPoly, letters_word, word_letters


def _letters(x: NCPoly) -> dict:
    out = {}
    for w, c in x.terms.items():
        key = word_letters(w)
        out[key] = out.get(key, 0) + c
    return out


def rewrite_normal(x: NCPoly, p: dict, kind: str = "left", basis: str = "normal") -> NCPoly:
    """Apply BA -> AB + p (or AB -> BA - p) to the leftmost descent until none is left.

    ``p`` maps natural exponents to coefficients; ``kind`` says whether it is
    a polynomial in A or in B.  Terminates because every step either removes
    an inversion or lowers the count of the generator that p does not use.
    """
    gen = LEFT if kind == "left" else RIGHT
    first, second = (LEFT, RIGHT) if basis == "normal" else (RIGHT, LEFT)
    sign = 1 if basis == "normal" else -1
    todo = {k: v for k, v in _letters(x).items() if v}
    done = {}
    while todo:
        w, c = todo.popitem()
        i = next((i for i in range(len(w) - 1) if w[i] == second and w[i + 1] == first), None)
        if i is None:
            done[w] = done.get(w, 0) + c
            continue
        head, tail = w[:i], w[i + 2:]
        pieces = [(head + (first, second) + tail, c)]
        pieces += [(head + (gen,) * e + tail, sign * c * a) for e, a in p.items()]
        for u, a in pieces:
            todo[u] = todo.get(u, 0) + a
            if not todo[u]:
                del todo[u]
    return NCPoly({letters_word(w): c for w, c in done.items() if c})


def all_words(length: int):
    return [letters_word(w) for w in product((LEFT, RIGHT), repeat=length)]


def stirling2_table(n_max: int) -> list[list[int]]:
    s = [[0] * (n_max + 1) for _ in range(n_max + 1)]
    s[0][0] = 1
    for n in range(1, n_max + 1):
        for k in range(1, n + 1):
            s[n][k] = k * s[n - 1][k] + s[n - 1][k - 1]
    return s


def stirling1_unsigned_table(n_max: int) -> list[list[int]]:
    c = [[0] * (n_max + 1) for _ in range(n_max + 1)]
    c[0][0] = 1
    for n in range(1, n_max + 1):
        for k in range(1, n + 1):
            c[n][k] = (n - 1) * c[n - 1][k] + c[n - 1][k - 1]
    return c


def lah_closed(n: int, k: int) -> int:
    if n == k == 0:
        return 1
    if k == 0 or k > n:
        return 0
    return comb(n - 1, k - 1) * factorial(n) // factorial(k)


def weyl_product_power(n: int, h) -> dict:
    """(AB)^n under [B, A] = h, as {(i, j): coeff} for A^i B^j, by direct recursion.

    (AB)^(n+1) = (AB)^n A B, and A^i B^j A = A^(i+1) B^j + j h A^i B^(j-1).
    """
    cur = {(0, 0): Fraction(1)}
    for _ in range(n):
        nxt = {}
        for (i, j), c in cur.items():
            for key, v in (((i + 1, j + 1), c), ((i, j), j * h * c)):
                if v:
                    nxt[key] = nxt.get(key, 0) + v
        cur = {k: v for k, v in nxt.items() if v}
    return cur
