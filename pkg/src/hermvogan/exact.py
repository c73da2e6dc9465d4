"""Exact scalars and elimination.

Two number types live here: ``GaussianRational`` (p + qi with rational p, q)
and ``Surd``, a finite sum of Gaussian rationals times square roots of
squarefree positive integers.  The linear-algebra helpers below only use
``+ - * /`` and comparison with 0, so they work over Fraction, GaussianRational
and Surd alike.
"""
from __future__ import annotations

import re
from fractions import Fraction as Q
from math import gcd
from typing import Iterable, Sequence

Number = int | Q


def _q(x) -> Q:
    return x if isinstance(x, Q) else Q(x)


class GaussianRational:
    __slots__ = ("re", "im")

    def __init__(self, re: Number = 0, im: Number = 0):
        self.re = _q(re)
        self.im = _q(im)

    @staticmethod
    def coerce(x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Q)):
            return GaussianRational(x)
        return NotImplemented

    def conj(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm2(self) -> Q:
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return self.im == 0

    def __add__(self, o):
        o = GaussianRational.coerce(o)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, o):
        o = GaussianRational.coerce(o)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if isinstance(o, (int, Q)):
            return GaussianRational(self.re * o, self.im * o)
        o = GaussianRational.coerce(o)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        n = self.norm2()
        if n == 0:
            raise ZeroDivisionError("GaussianRational division by zero")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, o):
        o = GaussianRational.coerce(o)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, o):
        return GaussianRational.coerce(o) * self.inverse()

    def __eq__(self, o):
        if isinstance(o, int) and o == 0:
            return not (self.re or self.im)
        if isinstance(o, Surd):
            return o == self
        o = GaussianRational.coerce(o)
        if o is NotImplemented:
            return False
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash(self.re) if self.im == 0 else hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re or self.im)

    def __repr__(self):
        return f"GaussianRational({self.re!s}, {self.im!s})"

    def __str__(self):
        return format_gaussian(self)


I = GaussianRational(0, 1)


def format_gaussian(z: GaussianRational) -> str:
    """Canonical text: ``3/2``, ``-i``, ``1/2+3i``."""
    def imag(v: Q) -> str:
        if v == 1:
            return "i"
        if v == -1:
            return "-i"
        return f"{v}i"

    if z.im == 0:
        return str(z.re)
    if z.re == 0:
        return imag(z.im)
    tail = imag(z.im)
    return f"{z.re}{tail}" if tail.startswith("-") else f"{z.re}+{tail}"


def parse_gaussian(text: str) -> GaussianRational:
    """Inverse of ``format_gaussian``; also accepts ``2*i`` and spaces."""
    t = text.replace(" ", "").replace("*", "")
    try:
        if not t.endswith("i"):
            return GaussianRational(Q(t))
        body = t[:-1]
        k = max(body.rfind("+"), body.rfind("-"))
        re_txt, im_txt = (body[:k], body[k:]) if k > 0 else ("", body)
        if im_txt in ("", "+"):
            im = Q(1)
        elif im_txt == "-":
            im = Q(-1)
        else:
            im = Q(im_txt)
        return GaussianRational(Q(re_txt) if re_txt else Q(0), im)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not a Gaussian rational: {text!r}") from None


# squarefree radicals --------------------------------------------------------

def squarefree_split(n: int) -> tuple[int, int]:
    """Return (f, s) with n = f*f*s and s squarefree."""
    if n <= 0:
        raise ValueError("positive integer expected")
    f, s, p = 1, 1, 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            f *= p
        if n % p == 0:
            n //= p
            s *= p
        p += 1
    return f, s * n


def _largest_prime(n: int) -> int:
    p, last = 2, 1
    while p * p <= n:
        while n % p == 0:
            n //= p
            last = p
        p += 1
    return n if n > 1 else last


class Surd:
    """Element of Q(i)(sqrt 2, sqrt 3, sqrt 5, ...).

    Stored as {squarefree s: (re, im)}; square roots of distinct squarefree
    integers are linearly independent over Q(i), so the representation is
    unique and equality is exact.
    """

    __slots__ = ("_t",)

    def __init__(self, terms: dict[int, GaussianRational] | None = None):
        self._t = {}
        for s, c in (terms or {}).items():
            c = GaussianRational.coerce(c)
            if c.re or c.im:
                self._t[s] = (c.re, c.im)

    @classmethod
    def _raw(cls, t: dict[int, tuple[Q, Q]]) -> "Surd":
        out = object.__new__(cls)
        out._t = t
        return out

    @property
    def terms(self) -> dict[int, GaussianRational]:
        return {s: GaussianRational(re, im) for s, (re, im) in self._t.items()}

    @staticmethod
    def coerce(x) -> "Surd":
        if isinstance(x, Surd):
            return x
        if isinstance(x, (int, Q)):
            return Surd._raw({1: (_q(x), Q(0))} if x else {})
        if isinstance(x, GaussianRational):
            return Surd._raw({1: (x.re, x.im)} if (x.re or x.im) else {})
        return NotImplemented

    @staticmethod
    def sqrt(x: Number) -> "Surd":
        x = _q(x)
        if x < 0:
            raise ValueError("square root of a negative rational")
        if x == 0:
            return Surd()
        f, s = squarefree_split(x.numerator * x.denominator)
        return Surd._raw({s: (Q(f, x.denominator), Q(0))})

    def rational_part(self) -> GaussianRational:
        re, im = self._t.get(1, (Q(0), Q(0)))
        return GaussianRational(re, im)

    def is_gaussian(self) -> bool:
        t = self._t
        return not t or (len(t) == 1 and 1 in t)

    def conj(self) -> "Surd":
        return Surd._raw({s: (re, -im) for s, (re, im) in self._t.items()})

    def real(self) -> "Surd":
        return Surd._raw({s: (re, Q(0)) for s, (re, im) in self._t.items() if re})

    def imag(self) -> "Surd":
        return Surd._raw({s: (im, Q(0)) for s, (re, im) in self._t.items() if im})

    def is_real(self) -> bool:
        return all(not im for _, im in self._t.values())

    def __add__(self, o):
        o = Surd.coerce(o)
        if o is NotImplemented:
            return o
        if not o._t:
            return self
        out = dict(self._t)
        for s, (re, im) in o._t.items():
            if s in out:
                a, b = out[s]
                a, b = a + re, b + im
                if a or b:
                    out[s] = (a, b)
                else:
                    del out[s]
            else:
                out[s] = (re, im)
        return Surd._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Surd._raw({s: (-re, -im) for s, (re, im) in self._t.items()})

    def __sub__(self, o):
        o = Surd.coerce(o)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        o = Surd.coerce(o)
        if o is NotImplemented:
            return o
        out: dict[int, tuple[Q, Q]] = {}
        for s, (a, b) in self._t.items():
            for t, (c, d) in o._t.items():
                if s == 1 or t == 1:
                    g, key = 1, s * t
                else:
                    g = gcd(s, t)
                    key = (s // g) * (t // g)
                if b or d:
                    re, im = a * c - b * d, a * d + b * c
                else:
                    re, im = a * c, Q(0)
                if g != 1:
                    re, im = re * g, im * g
                if key in out:
                    x, y = out[key]
                    re, im = re + x, im + y
                out[key] = (re, im)
        return Surd._raw({k: v for k, v in out.items() if v[0] or v[1]})

    __rmul__ = __mul__

    def inverse(self) -> "Surd":
        if not self._t:
            raise ZeroDivisionError("Surd division by zero")
        if self.is_gaussian():
            z = self.rational_part().inverse()
            return Surd._raw({1: (z.re, z.im)})
        # split on the largest prime p occurring: x = a + b*sqrt(p), then
        # 1/x = (a - b*sqrt(p)) / (a^2 - p b^2), where the denominator no
        # longer involves p.
        p = max(_largest_prime(s) for s in self._t)
        a = Surd._raw({s: c for s, c in self._t.items() if s % p})
        b = Surd._raw({s // p: c for s, c in self._t.items() if s % p == 0})
        rp = Surd._raw({p: (Q(1), Q(0))})
        den = a * a - b * b * p
        return (a - b * rp) * den.inverse()

    def __truediv__(self, o):
        o = Surd.coerce(o)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, o):
        return Surd.coerce(o) * self.inverse()

    def __eq__(self, o):
        if isinstance(o, int) and o == 0:
            return not self._t
        o = Surd.coerce(o)
        if o is NotImplemented:
            return False
        return self._t == o._t

    def __bool__(self):
        return bool(self._t)

    def __hash__(self):
        if self.is_gaussian():
            return hash(self.rational_part())
        return hash(tuple(sorted(self._t.items())))

    def sign(self) -> int:
        """Sign of a real surd (exact, via repeated squaring)."""
        if not self.is_real():
            raise ValueError("sign of a non-real number")
        if not self._t:
            return 0
        if self.is_gaussian():
            v = self._t[1][0]
            return (v > 0) - (v < 0)
        p = max(_largest_prime(s) for s in self._t)
        a = Surd._raw({s: c for s, c in self._t.items() if s % p})
        b = Surd._raw({s // p: c for s, c in self._t.items() if s % p == 0})
        # x = a + b*sqrt(p)
        sa, sb = a.sign(), b.sign()
        if sa == 0 or sa == sb:
            return sb if sa == 0 else sa
        # opposite signs: compare a^2 with p b^2
        return sa * (a * a - b * b * p).sign()

    def __repr__(self):
        return f"Surd({format_surd(self)!r})"

    def __str__(self):
        return format_surd(self)


def format_surd(x: Surd) -> str:
    if x.is_gaussian():
        return format_gaussian(x.rational_part())
    parts = []
    for s in sorted(x.terms):
        c = format_gaussian(x.terms[s])
        parts.append(f"({c})" if s == 1 else f"({c})*sqrt({s})")
    return " + ".join(parts)


_SURD_TERM = re.compile(r"\(([^()]*)\)(?:\*sqrt\((\d+)\))?")


def parse_surd(text: str) -> Surd:
    text = text.strip()
    if "sqrt" not in text and not text.startswith("("):
        return Surd.coerce(parse_gaussian(text))
    out = Surd()
    pos = 0
    for m in _SURD_TERM.finditer(text):
        gap = text[pos:m.start()].strip()
        if gap not in ("", "+"):
            raise ValueError(f"not a surd: {text!r}")
        s = int(m.group(2) or 1)
        if squarefree_split(s)[0] != 1:
            raise ValueError(f"radicand {s} is not squarefree")
        out = out + Surd({s: parse_gaussian(m.group(1))})
        pos = m.end()
    if text[pos:].strip():
        raise ValueError(f"not a surd: {text!r}")
    return out


def to_surd(x) -> Surd:
    s = Surd.coerce(x)
    if s is NotImplemented:
        raise TypeError(f"cannot convert {type(x).__name__} to Surd")
    return s


# linear algebra ---------------------------------------------------------------

Matrix = list[list]


def rref(rows: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    a = [list(r) for r in rows]
    if not a:
        return a, []
    ncols = len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((k for k in range(r, len(a)) if a[k][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c] if not isinstance(a[r][c], (int,)) else Q(1, a[r][c])
        a[r] = [v * inv for v in a[r]]
        for k in range(len(a)):
            if k != r and a[k][c] != 0:
                f = a[k][c]
                a[k] = [x - f * y for x, y in zip(a[k], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> Matrix:
    """Basis of {x : A x = 0} (right kernel)."""
    if not rows:
        n = ncols or 0
        return [[Q(int(i == j)) for j in range(n)] for i in range(n)]
    red, pivots = rref(rows)
    n = len(rows[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v: list = [Q(0)] * n
        v[f] = Q(1)
        for i, p in enumerate(pivots):
            v[p] = -red[i][f]
        basis.append(v)
    return basis


def solve(A: Sequence[Sequence], b: Sequence) -> list | None:
    """Some solution of A x = b, or None if inconsistent."""
    n = len(A[0]) if A else 0
    aug = [list(r) + [bi] for r, bi in zip(A, b)]
    red, pivots = rref(aug)
    if n in pivots:
        return None
    x: list = [Q(0)] * n
    for i, p in enumerate(pivots):
        x[p] = red[i][n]
    return x


def inverse(A: Sequence[Sequence]) -> Matrix:
    n = len(A)
    aug = [list(r) + [Q(int(i == j)) for j in range(n)] for i, r in enumerate(A)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


def transpose(A: Sequence[Sequence]) -> Matrix:
    return [list(c) for c in zip(*A)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    Bt = transpose(B)
    return [[sum((x * y for x, y in zip(row, col)), Q(0)) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence], v: Sequence) -> list:
    return [sum((x * y for x, y in zip(row, v)), Q(0)) for row in A]


def identity(n: int) -> Matrix:
    return [[Q(int(i == j)) for j in range(n)] for i in range(n)]


def primitive_integer(v: Iterable[Q]) -> list[Q]:
    """Scale a rational vector by a positive factor to a primitive integer vector."""
    v = [_q(x) for x in v]
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for k in ints:
        g = gcd(g, abs(k))
    g = g or 1
    return [Q(k // g) for k in ints]
