"""Truncated power series arithmetic over a prime field.

Everything in this module is exact integer arithmetic.  A principal unit

    1 + a_1 t + a_2 t^2 + ... + a_N t^N        (coefficients mod p)

is stored as a tuple of residues, and a group element t*(unit) composes
by substitution of series.  The basis units E_j = 1 + t^j with j coprime
to p act as a multiplicative coordinate system: modulo t^(m+1) every
principal unit is a product of E_j powers with exponents mod p^2 (higher
p-power multiplicities of an index contribute nothing mod p^2), and
`unit_decompose` recovers those exponents by greedy stripping from the
lowest degree up.

All operations truncate at a fixed precision N, meaning degrees above N
are unknown rather than zero.  Operations never mutate their inputs.
"""

from __future__ import annotations

import functools
import re


class ParseError(ValueError):
    """Malformed text input; `offset` is the byte position of the problem."""

    def __init__(self, message, offset=None):
        if offset is not None:
            message = "%s (at offset %d)" % (message, offset)
        super().__init__(message)
        self.offset = offset


class Prime:
    """A prime p in the supported range 2..31, with p^2 cached."""

    __slots__ = ("p", "psq")

    def __init__(self, p):
        if not isinstance(p, int) or isinstance(p, bool):
            raise ValueError("prime must be an integer, got %r" % (p,))
        if p < 2 or p > 31:
            raise ValueError("prime must lie in 2..31, got %d" % p)
        if any(p % d == 0 for d in range(2, p)):
            raise ValueError("%d is not prime" % p)
        self.p = p
        self.psq = p * p

    def __eq__(self, other):
        return isinstance(other, Prime) and other.p == self.p

    def __hash__(self):
        return hash(("Prime", self.p))

    def __repr__(self):
        return "Prime(%d)" % self.p


def as_prime(p):
    """Coerce an int or Prime to a Prime."""
    return p if isinstance(p, Prime) else Prime(p)


# ---------------------------------------------------------------------------
# Raw kernels.  A raw series is a plain list c[0..n] of residues mod p with
# c[d] the coefficient of t^d.  These run in the innermost search loops, so
# they stay free of object overhead.


def _mul_raw(a, b, p, n):
    out = [0] * (n + 1)
    for i in range(min(len(a), n + 1)):
        ai = a[i]
        if ai:
            lim = n + 1 - i
            for j in range(min(len(b), lim)):
                bj = b[j]
                if bj:
                    out[i + j] += ai * bj
    return [v % p for v in out]


def _inv_raw(a, p, n):
    # requires a[0] == 1; back substitution degree by degree
    out = [0] * (n + 1)
    out[0] = 1
    for d in range(1, n + 1):
        s = 0
        for i in range(1, min(d, len(a) - 1) + 1):
            ai = a[i]
            if ai:
                s += ai * out[d - i]
        out[d] = (-s) % p
    return out


def _pow_raw(a, e, p, n):
    if e < 0:
        a = _inv_raw(a, p, n)
        e = -e
    result = [0] * (n + 1)
    result[0] = 1
    base = list(a[: n + 1]) + [0] * max(0, n + 1 - len(a))
    while e:
        if e & 1:
            result = _mul_raw(result, base, p, n)
        e >>= 1
        if e:
            base = _mul_raw(base, base, p, n)
    return result


def _subst_raw(f, z, p, n):
    # f(t*z(t)) truncated at degree n, where f is a raw series and z the
    # unit part of the substituted element; z^k is only needed to degree n-k
    out = [0] * (n + 1)
    out[0] = f[0] % p if f else 0
    zp = [1]
    for k in range(1, n + 1):
        zp = _mul_raw(zp, z, p, n - k)
        fk = f[k] if k < len(f) else 0
        if fk:
            for d, zd in enumerate(zp):
                if zd:
                    out[k + d] += fk * zd
    return [v % p for v in out]


@functools.lru_cache(maxsize=None)
def _strip_tables(p, m):
    """Sparse tables for (1+t^k)^(-c) mod p, truncated at degree m.

    tables[(k, c)] is a tuple of (degree, coefficient) pairs with degree >= k
    (the leading 1 is implicit).  Entries exist for 1 <= k <= m, 1 <= c < p.
    """
    tables = {}
    for k in range(1, m + 1):
        ek = [0] * (m + 1)
        ek[0] = 1
        ek[k] = 1
        inv1 = _inv_raw(ek, p, m)
        cur = [0] * (m + 1)
        cur[0] = 1
        for c in range(1, p):
            cur = _mul_raw(cur, inv1, p, m)
            tables[(k, c)] = tuple(
                (d, cur[d]) for d in range(k, m + 1) if cur[d]
            )
    return tables


def _decompose_raw(f, p, psq, m):
    """Greedy exponents of f on the basis units E_j, j coprime to p, j <= m.

    Scans degrees 1..m; a residual coefficient c at degree k = j*p^s feeds
    c*p^s into the exponent of E_j (nothing survives mod p^2 for s >= 2),
    then the residual is multiplied by (1+t^k)^(-c) in place.  Requires
    f[0] == 1 and len(f) >= m+1.
    """
    tables = _strip_tables(p, m)
    r = list(f[: m + 1])
    e = {}
    for k in range(1, m + 1):
        cv = r[k]
        if not cv:
            continue
        kk, s = k, 0
        while kk % p == 0:
            kk //= p
            s += 1
        if s == 0:
            e[kk] = (e.get(kk, 0) + cv) % psq
        elif s == 1:
            e[kk] = (e.get(kk, 0) + cv * p) % psq
        tab = tables[(k, cv)]
        # in-place multiply by (1+t^k)^(-cv): descending d only reads
        # entries below d that are still the old values
        for d in range(m, k - 1, -1):
            acc = r[d]
            for dk, w in tab:
                if dk > d:
                    break
                acc += w * r[d - dk]
            r[d] = acc % p
    return {j: v for j, v in e.items() if v}


def _factor_unit_modp(z, p, n):
    """Factor a unit as prod (1+t^k)^{n_k} mod t^(n+1), n_k in 0..p-1.

    Unlike `_decompose_raw` this runs over all k (p | k included) with
    exponents mod p only; the factorization is unique and serves as the
    canonical product form for group elements.
    """
    tables = _strip_tables(p, n)
    r = list(z[: n + 1])
    factors = []
    for k in range(1, n + 1):
        cv = r[k]
        if not cv:
            continue
        factors.append((k, cv))
        tab = tables[(k, cv)]
        for d in range(n, k - 1, -1):
            acc = r[d]
            for dk, w in tab:
                if dk > d:
                    break
                acc += w * r[d - dk]
            r[d] = acc % p
    return factors


# ---------------------------------------------------------------------------
# Public value types.


class UnitSeries:
    """A principal unit 1 + a_1 t + ... + a_N t^N over F_p.

    `coeffs` holds (a_1, ..., a_N); the constant term is always 1.  The
    precision N is the highest tracked degree and must be at least 1.
    """

    __slots__ = ("prime", "coeffs")

    def __init__(self, prime, coeffs):
        prime = as_prime(prime)
        coeffs = tuple(int(c) % prime.p for c in coeffs)
        if not coeffs:
            raise ValueError("unit series needs precision >= 1")
        object.__setattr__(self, "prime", prime)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("UnitSeries is immutable")

    @property
    def precision(self):
        return len(self.coeffs)

    @classmethod
    def one(cls, prime, precision):
        return cls(prime, (0,) * precision)

    @classmethod
    def basis(cls, prime, j, precision):
        """E_j = 1 + t^j at the given precision."""
        if not 1 <= j <= precision:
            raise ValueError("basis index %d outside 1..%d" % (j, precision))
        return cls(prime, tuple(1 if d == j else 0 for d in range(1, precision + 1)))

    @classmethod
    def _from_raw(cls, prime, raw):
        return cls(prime, raw[1:])

    def _raw(self):
        return [1, *self.coeffs]

    def coefficient(self, d):
        """Coefficient of t^d, with d <= precision (d = 0 gives 1)."""
        if d == 0:
            return 1
        if not 1 <= d <= self.precision:
            raise ValueError("degree %d outside tracked range" % d)
        return self.coeffs[d - 1]

    def at_precision(self, n):
        """Truncate, or extend by explicit zeros (for literal polynomials)."""
        if n < 1:
            raise ValueError("precision must be >= 1")
        if n <= self.precision:
            return UnitSeries(self.prime, self.coeffs[:n])
        return UnitSeries(self.prime, self.coeffs + (0,) * (n - self.precision))

    def __mul__(self, other):
        return unit_mul(self, other)

    def __pow__(self, e):
        return unit_pow(self, e)

    def __eq__(self, other):
        return (
            isinstance(other, UnitSeries)
            and other.prime == self.prime
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((self.prime.p, self.coeffs))

    def __str__(self):
        return format_unit(self)

    def __repr__(self):
        return "UnitSeries(p=%d, %s)" % (self.prime.p, format_unit(self))


class NottinghamElement:
    """A group element u(t) = t * z(t) with z a principal unit.

    The unit part is tracked through degree N (its precision), so u itself
    is known through total degree N + 1.  Composition is substitution.
    """

    __slots__ = ("prime", "unit")

    def __init__(self, prime, unit):
        prime = as_prime(prime)
        if not isinstance(unit, UnitSeries):
            raise ValueError("unit part must be a UnitSeries")
        if unit.prime != prime:
            raise ValueError("unit part has mismatched prime")
        object.__setattr__(self, "prime", prime)
        object.__setattr__(self, "unit", unit)

    def __setattr__(self, name, value):
        raise AttributeError("NottinghamElement is immutable")

    @property
    def precision(self):
        return self.unit.precision

    @classmethod
    def identity(cls, prime, precision):
        prime = as_prime(prime)
        return cls(prime, UnitSeries.one(prime, precision))

    @classmethod
    def from_unit_coeffs(cls, prime, coeffs):
        prime = as_prime(prime)
        return cls(prime, UnitSeries(prime, coeffs))

    def __call__(self, other):
        return nott_compose(self, other)

    def inverse(self):
        return nott_inverse(self)

    def __eq__(self, other):
        return (
            isinstance(other, NottinghamElement)
            and other.prime == self.prime
            and other.unit == self.unit
        )

    def __hash__(self):
        return hash((self.prime.p, "nott", self.unit.coeffs))

    def __str__(self):
        if all(c == 0 for c in self.unit.coeffs):
            return "t"
        return "t*(%s)" % format_unit(self.unit)

    def __repr__(self):
        return "NottinghamElement(p=%d, %s)" % (self.prime.p, str(self))


class ExponentVector:
    """Exponents on the basis units E_j: a map j -> e_j mod p^2.

    Keys are coprime to p and bounded by `bound`; zero exponents are
    dropped, so an absent key means exponent 0.
    """

    __slots__ = ("prime", "bound", "exps")

    def __init__(self, prime, bound, exps):
        prime = as_prime(prime)
        bound = int(bound)
        if bound < 1:
            raise ValueError("bound must be >= 1")
        clean = {}
        for j, v in exps.items():
            j = int(j)
            if j < 1 or j > bound:
                raise ValueError("index %d outside 1..%d" % (j, bound))
            if j % prime.p == 0:
                raise ValueError("index %d divisible by p=%d" % (j, prime.p))
            v = int(v) % prime.psq
            if v:
                clean[j] = v
        object.__setattr__(self, "prime", prime)
        object.__setattr__(self, "bound", bound)
        object.__setattr__(self, "exps", clean)

    def __setattr__(self, name, value):
        raise AttributeError("ExponentVector is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, ExponentVector)
            and other.prime == self.prime
            and other.bound == self.bound
            and other.exps == self.exps
        )

    def __hash__(self):
        return hash((self.prime.p, self.bound, tuple(sorted(self.exps.items()))))

    def __repr__(self):
        return "ExponentVector(p=%d, bound=%d, %r)" % (
            self.prime.p,
            self.bound,
            dict(sorted(self.exps.items())),
        )


# ---------------------------------------------------------------------------
# Operations.


def _require_same_prime(a, b):
    if a.prime != b.prime:
        raise ValueError("mismatched primes: %d vs %d" % (a.prime.p, b.prime.p))


def unit_mul(a: UnitSeries, b: UnitSeries) -> UnitSeries:
    """Product of two units at their common precision."""
    _require_same_prime(a, b)
    if a.precision != b.precision:
        raise ValueError(
            "mismatched precisions: %d vs %d" % (a.precision, b.precision)
        )
    n = a.precision
    return UnitSeries._from_raw(a.prime, _mul_raw(a._raw(), b._raw(), a.prime.p, n))


def unit_pow(a: UnitSeries, e: int) -> UnitSeries:
    """Integer power of a unit; negative exponents invert first."""
    n = a.precision
    return UnitSeries._from_raw(a.prime, _pow_raw(a._raw(), int(e), a.prime.p, n))


def unit_subst(f: UnitSeries, u: NottinghamElement) -> UnitSeries:
    """f(u(t)) for a unit f, truncated to u's precision."""
    _require_same_prime(f, u)
    if f.precision < u.precision:
        raise ValueError(
            "substitution needs f precision >= element precision (%d < %d)"
            % (f.precision, u.precision)
        )
    n = u.precision
    raw = _subst_raw(f._raw(), u.unit._raw(), f.prime.p, n)
    return UnitSeries._from_raw(f.prime, raw)


def nott_compose(u: NottinghamElement, v: NottinghamElement) -> NottinghamElement:
    """Composition u(v(t)); apply v first, then u."""
    _require_same_prime(u, v)
    if u.precision != v.precision:
        raise ValueError(
            "mismatched precisions: %d vs %d" % (u.precision, v.precision)
        )
    p, n = u.prime.p, u.precision
    # u(v(t)) = v(t) * z_u(v(t)) = t * z_v * (z_u o v)
    zu_of_v = _subst_raw(u.unit._raw(), v.unit._raw(), p, n)
    raw = _mul_raw(v.unit._raw(), zu_of_v, p, n)
    return NottinghamElement(u.prime, UnitSeries._from_raw(u.prime, raw))


def nott_inverse(u: NottinghamElement) -> NottinghamElement:
    """Compositional inverse: the w with u(w(t)) = w(u(t)) = t."""
    p, n = u.prime.p, u.precision
    uraw = u.unit._raw()
    b = [0] * (n + 1)  # raw unit part of w, filled degree by degree
    b[0] = 1
    for k in range(1, n + 1):
        # with b_k still 0, the degree k+1 defect of u(w(t)) is linear in
        # b_k with coefficient 1
        zu_of_w = _subst_raw(uraw, b, p, k)
        comp = _mul_raw(b[: k + 1], zu_of_w, p, k)
        b[k] = (-comp[k]) % p
    w = NottinghamElement(u.prime, UnitSeries._from_raw(u.prime, b))
    return w


def unit_decompose(f: UnitSeries, m: int) -> ExponentVector:
    """Exponents of f on the basis units E_j (j coprime to p) up to depth m."""
    m = int(m)
    if m < 1:
        raise ValueError("depth must be >= 1")
    if f.precision < m:
        raise ValueError(
            "decomposition to depth %d needs precision >= %d, have %d"
            % (m, m, f.precision)
        )
    p = f.prime.p
    exps = _decompose_raw(f._raw(), p, f.prime.psq, m)
    return ExponentVector(f.prime, m, exps)


def unit_recompose(e: ExponentVector, precision: int) -> UnitSeries:
    """Product of E_j^{e_j} at the given precision (>= e.bound)."""
    precision = int(precision)
    if precision < e.bound:
        raise ValueError(
            "precision %d below exponent bound %d" % (precision, e.bound)
        )
    p = e.prime.p
    raw = [0] * (precision + 1)
    raw[0] = 1
    for j in sorted(e.exps):
        ej = [0] * (precision + 1)
        ej[0] = 1
        ej[j] = 1
        raw = _mul_raw(raw, _pow_raw(ej, e.exps[j], p, precision), p, precision)
    return UnitSeries._from_raw(e.prime, raw)


# ---------------------------------------------------------------------------
# Text formats.
#
# Unit literals are sums of monomials: "1+t^3+2*t^4".  Group element
# literals are products "t*(1+t^3+t^4)*(1+t^15)^2" with integer exponents;
# the bare "t" is the identity.


_TERM_RE = re.compile(r"\s*(?:(\d+)\s*(?:\*\s*)?)?(t(?:\^(\d+))?)?\s*$")


def format_unit(u: UnitSeries) -> str:
    parts = ["1"]
    for d, c in enumerate(u.coeffs, start=1):
        if not c:
            continue
        if d == 1:
            parts.append("t" if c == 1 else "%d*t" % c)
        else:
            parts.append("t^%d" % d if c == 1 else "%d*t^%d" % (c, d))
    return "+".join(parts)


def parse_unit(text: str, p, precision: int | None = None) -> UnitSeries:
    """Parse a unit literal like "1+t^3+2*t^4".

    The constant term must come to 1 mod p.  Without an explicit precision
    the highest degree appearing in the text is used.
    """
    prime = as_prime(p)
    const = 0
    coeffs = {}
    pos = 0
    if text.strip() == "":
        raise ParseError("empty series literal", 0)
    for chunk in text.split("+"):
        m = _TERM_RE.match(chunk)
        if not m or (m.group(1) is None and m.group(2) is None):
            raise ParseError("unreadable term %r" % chunk.strip(), pos)
        coef = int(m.group(1)) if m.group(1) is not None else 1
        if m.group(2) is None:
            const += coef
        else:
            deg = int(m.group(3)) if m.group(3) is not None else 1
            if deg == 0:
                const += coef
            else:
                coeffs[deg] = coeffs.get(deg, 0) + coef
        pos += len(chunk) + 1
    if const % prime.p != 1:
        raise ParseError("unit literal must have constant term 1 mod %d" % prime.p, 0)
    n = precision if precision is not None else max(coeffs, default=1)
    if n < 1:
        raise ParseError("precision must be >= 1", 0)
    out = [0] * n
    for deg, coef in coeffs.items():
        if deg <= n:
            out[deg - 1] = coef % prime.p
        elif precision is None:
            raise ParseError("degree %d beyond precision %d" % (deg, n), 0)
        # explicit precision silently truncates higher literal terms
    return UnitSeries(prime, out)


_FACTOR_RE = re.compile(r"\*\s*\(([^()]*)\)\s*(?:\^\s*(-?\d+))?")


def format_nottingham_product(u: NottinghamElement) -> str:
    """Canonical product form t*(1+t^k1)^n1*... with exponents in 1..p-1.

    Every group element factors uniquely this way up to its precision, so
    the output can be parsed back and recomposed exactly.
    """
    p, n = u.prime.p, u.precision
    factors = _factor_unit_modp(u.unit._raw(), p, n)
    if not factors:
        return "t"
    parts = ["t"]
    for k, c in factors:
        base = "(1+t^%d)" % k if k > 1 else "(1+t)"
        parts.append(base if c == 1 else "%s^%d" % (base, c))
    return "*".join(parts)


def parse_nottingham(text: str, p, precision: int | None = None) -> NottinghamElement:
    """Parse a group element literal like "t*(1+t^3+t^4)*(1+t^15)^2".

    Without an explicit precision the highest degree appearing in any
    factor is used (minimum 1).
    """
    prime = as_prime(p)
    s = text.strip()
    if not s.startswith("t"):
        raise ParseError("group element literal must start with t", 0)
    rest = s[1:]
    factors = []
    pos = len(text) - len(text.lstrip()) + 1
    while rest.strip():
        m = _FACTOR_RE.match(rest.strip())
        if not m:
            raise ParseError("unreadable factor near %r" % rest.strip()[:20], pos)
        inner, exp = m.group(1), int(m.group(2)) if m.group(2) else 1
        factors.append((inner, exp, pos))
        consumed = len(rest) - len(rest.strip()) + m.end()
        pos += consumed
        rest = rest.strip()[m.end():]
    if precision is None:
        precision = 1
        for inner, _, offset in factors:
            try:
                precision = max(precision, parse_unit(inner, prime).precision)
            except ParseError as exc:
                raise ParseError(str(exc), offset) from None
    unit = UnitSeries.one(prime, precision)
    for inner, exp, offset in factors:
        try:
            base = parse_unit(inner, prime, precision)
        except ParseError as exc:
            raise ParseError(str(exc), offset) from None
        unit = unit_mul(unit, unit_pow(base, exp))
    return NottinghamElement(prime, unit)
