"""Brute-force equivalence oracles and closed-form class counts.

Two surjective characters of the same break type <l, m> are strictly
equivalent when some group element u maps one to the other by the
precomposition action while keeping chi(u(t)/t) = 0 mod p; dropping the
kernel condition gives weak equivalence.  The searches here exhaust the
group modulo the subgroup acting trivially and are therefore complete:
a miss is a proof of non-equivalence, subject only to the cost budget.

The action of u on a character of bound m reads only the unit
coefficients a_1 .. a_(m-1) of u, and the kernel condition mod p reads
only a_1 .. a_l, so the scan runs over F_p^(m-1) with a kernel test on
each prefix.  The trailing coefficient a_m is pinned to zero: it shifts
chi(u(t)/t) only by a multiple of p and never enters the action, so
every equivalence witnessed in F_p^m is witnessed with a_m = 0, and the
lexicographically smallest witness has a_m = 0.

Class counting comes in two flavors.  `count_classes` with method
"canonical-reduce" reduces every character of the type and counts
distinct reduced forms; this is the fast path, valid as a class count
when l < p (where the reduced form is a complete invariant).  Method
"oracle-partition" unions reduced forms by exhaustive search and counts
orbits with no appeal to theory beyond the action itself.
"""

from __future__ import annotations

import itertools
import time

from .characters import (
    Character,
    CharType,
    break_sequence,
    enumerate_characters,
    enumerate_reduced_forms,
    require_valid_type,
    scalar_mul,
    validate_type,
)
from .reduction import Witness, reduce as _reduce_char
from .series import (
    NottinghamElement,
    UnitSeries,
    _decompose_raw,
    _mul_raw,
    _strip_tables,
    as_prime,
)

DEFAULT_BUDGET = 1 << 26


class BudgetExceeded(Exception):
    """An exhaustive scan would cost more than the allowed budget."""

    def __init__(self, cost, budget):
        super().__init__(
            "exhaustive search costs p^m = %d candidates, budget is %d"
            % (cost, budget)
        )
        self.cost = cost
        self.budget = budget


# ---------------------------------------------------------------------------
# Scan kernels.


def _kernel_root(z_head, p, l):
    """Exponent of E_l mod p in the greedy run of z up to depth l.

    For a character whose unit digits below l all vanish, chi(z) mod p is
    this value times the unit digit x_l; the kernel condition mod p is
    its vanishing.  Only z[0..l] is read.
    """
    tables = _strip_tables(p, l)
    r = list(z_head[: l + 1])
    for k in range(1, l):
        cv = r[k]
        if not cv:
            continue
        tab = tables[(k, cv)]
        for d in range(l, k - 1, -1):
            acc = r[d]
            for dk, w in tab:
                if dk > d:
                    break
                acc += w * r[d - dk]
            r[d] = acc % p
    return r[l]


def _kernel_value_modp(z_head, p, l, xdig):
    """chi(z) mod p for a character with unit digit vector xdig[0..l].

    xdig[k] is c_k mod p (zero at indices divisible by p); values at
    indices above l are p-multiples and invisible mod p.
    """
    tables = _strip_tables(p, l)
    r = list(z_head[: l + 1])
    total = 0
    for k in range(1, l + 1):
        cv = r[k]
        if not cv:
            continue
        if xdig[k]:
            total += cv * xdig[k]
        if k == l:
            break
        tab = tables[(k, cv)]
        for d in range(l, k - 1, -1):
            acc = r[d]
            for dk, w in tab:
                if dk > d:
                    break
                acc += w * r[d - dk]
            r[d] = acc % p
    return total % p


class _ActionScanner:
    """Per-candidate evaluation of the action on characters of bound m."""

    def __init__(self, prime, m):
        self.p = prime.p
        self.psq = prime.psq
        self.m = m
        self.cop = [j for j in range(1, m + 1) if j % prime.p]

    def acted_value(self, powers, z, j, coeffs):
        """Value of the acted character at index j; powers caches z^k."""
        p, psq, m = self.p, self.psq, self.m
        while len(powers) <= j:
            k = len(powers)
            powers.append(_mul_raw(powers[k - 1], z, p, m - k))
        zp = powers[j]
        w = [0] * (m + 1)
        w[0] = 1
        for d, zd in enumerate(zp):
            if zd and j + d <= m:
                w[j + d] = zd
        exps = _decompose_raw(w, p, psq, m)
        total = 0
        for k, e in exps.items():
            c = coeffs.get(k)
            if c:
                total += e * c
        return total % psq

    def matches(self, z, src_coeffs, tgt_coeffs):
        """True when the candidate maps src to tgt at every coprime index."""
        powers = [[1]]
        for j in self.cop:
            if self.acted_value(powers, z, j, src_coeffs) != tgt_coeffs.get(j, 0):
                return False
        return True

    def action_matrix(self, z):
        """Decomposition of E_j o u at every coprime j, as exps-dict rows.

        The action is linear in the character values, so one matrix per
        candidate evaluates the action on any number of sources.
        """
        p, psq, m = self.p, self.psq, self.m
        powers = [[1]]
        rows = []
        for j in self.cop:
            while len(powers) <= j:
                k = len(powers)
                powers.append(_mul_raw(powers[k - 1], z, p, m - k))
            zp = powers[j]
            w = [0] * (m + 1)
            w[0] = 1
            for d, zd in enumerate(zp):
                if zd:
                    w[j + d] = zd
            rows.append(tuple(_decompose_raw(w, p, psq, m).items()))
        return rows

    def apply_matrix(self, rows, coeffs):
        """Acted value vector over the coprime indices, given a matrix."""
        psq = self.psq
        out = []
        for row in rows:
            total = 0
            for k, e in row:
                c = coeffs.get(k)
                if c:
                    total += e * c
            out.append(total % psq)
        return tuple(out)


def _search_preamble(chi, psi):
    if chi.prime != psi.prime:
        raise ValueError("mismatched primes")
    if not (chi.is_surjective and psi.is_surjective):
        return None
    ct = break_sequence(chi)
    if break_sequence(psi) != ct:
        return None
    return ct


def _witness_from_raw(prime, z, chi):
    from .characters import char_eval

    elt = NottinghamElement(prime, UnitSeries(prime, z[1:]))
    return Witness(elt, char_eval(chi, elt.unit))


def strict_equiv_search(chi: Character, psi: Character, budget: int = DEFAULT_BUDGET):
    """Exhaustive search for a strict-equivalence witness from chi to psi.

    Returns the Witness whose element has lexicographically smallest unit
    coefficients (a_1, a_2, ...), or None when no witness exists.  Types
    must agree, otherwise the answer is immediately None.  Raises
    BudgetExceeded when p^m exceeds the budget.
    """
    ct = _search_preamble(chi, psi)
    if ct is None:
        return None
    prime = chi.prime
    p = prime.p
    l, m = ct
    cost = p**m
    if cost > budget:
        raise BudgetExceeded(cost, budget)
    xdig = [0] * (l + 1)
    for k in range(1, l + 1):
        if k % p:
            xdig[k] = chi.value(k) % p
    scanner = _ActionScanner(prime, m)
    src, tgt = chi.coeffs, psi.coeffs
    for prefix in itertools.product(range(p), repeat=l):
        head = [1, *prefix]
        if _kernel_value_modp(head, p, l, xdig):
            continue
        for suffix in itertools.product(range(p), repeat=m - 1 - l):
            z = [1, *prefix, *suffix, 0]
            if scanner.matches(z, src, tgt):
                return _witness_from_raw(prime, z, chi)
    return None


def weak_equiv_search(chi: Character, psi: Character, budget: int = DEFAULT_BUDGET):
    """Like strict_equiv_search without the kernel condition.

    Returns the lexicographically smallest NottinghamElement mapping chi
    to psi, or None.
    """
    ct = _search_preamble(chi, psi)
    if ct is None:
        return None
    prime = chi.prime
    p = prime.p
    m = ct.m
    cost = p**m
    if cost > budget:
        raise BudgetExceeded(cost, budget)
    scanner = _ActionScanner(prime, m)
    src, tgt = chi.coeffs, psi.coeffs
    for body in itertools.product(range(p), repeat=m - 1):
        z = [1, *body, 0]
        if scanner.matches(z, src, tgt):
            return NottinghamElement(prime, UnitSeries(prime, z[1:]))
    return None


# ---------------------------------------------------------------------------
# Partition of reduced forms into strict classes.


class ClassReport:
    """Result of partitioning the reduced forms of a type into classes.

    `forms` lists the reduced forms in enumeration order; `classes` are
    tuples of indices into that list, each sorted ascending, the list
    sorted by first member; `witnesses` are (source, target, element)
    triples recorded at each union, all of which pass verify_witness.
    """

    __slots__ = (
        "prime",
        "l",
        "m",
        "bound",
        "class_count",
        "forms",
        "classes",
        "witnesses",
        "search_space_size",
        "method",
        "runtime_ms",
    )

    def __init__(self, **kw):
        for name in self.__slots__:
            object.__setattr__(self, name, kw[name])

    def __setattr__(self, name, value):
        raise AttributeError("ClassReport is immutable")

    def representative(self, class_index):
        """Lexicographically smallest member of the class."""
        return self.forms[self.classes[class_index][0]]

    def to_json_dict(self):
        from .characters import format_character_literal
        from .series import format_nottingham_product

        return {
            "p": self.prime.p,
            "l": self.l,
            "m": self.m,
            "bound": self.bound,
            "class_count": self.class_count,
            "search_space_size": self.search_space_size,
            "method": self.method,
            "runtime_ms": self.runtime_ms,
            "classes": [
                {
                    "representative": format_character_literal(
                        self.forms[cls[0]].to_character()
                    ),
                    "members": [
                        {
                            "x_l": self.forms[i].x_l,
                            "b": {str(j): v for j, v in sorted(self.forms[i].b.items())},
                            "character": format_character_literal(
                                self.forms[i].to_character()
                            ),
                        }
                        for i in cls
                    ],
                    "witnesses": [
                        {
                            "source": i,
                            "target": j,
                            "element": format_nottingham_product(elt),
                        }
                        for (i, j, elt) in self.witnesses
                        if i in cls
                    ],
                }
                for cls in self.classes
            ],
        }

    def csv_row(self):
        return "%d,%d,%d,%d,%d,%s,%d" % (
            self.prime.p,
            self.l,
            self.m,
            self.bound,
            self.class_count,
            self.method,
            self.runtime_ms,
        )

    CSV_HEADER = "p,l,m,B,d,method,runtime_ms"


def _find(parent, i):
    while parent[i] != i:
        parent[i] = parent[parent[i]]
        i = parent[i]
    return i


def partition_reduced_forms(p, l, m, budget: int = DEFAULT_BUDGET) -> ClassReport:
    """Partition the reduced forms of type <l, m> into strict classes.

    A single lexicographic scan over candidate elements evaluates the
    action on every reduced form at once; two forms land in one class
    exactly when some chain of witnessed moves connects them.  Reduced
    forms have no unit digits below l, so one kernel test per candidate
    covers every source.
    """
    started = time.perf_counter()
    prime = as_prime(p)
    p = prime.p
    require_valid_type(prime, l, m)
    cost = p**m
    if cost > budget:
        raise BudgetExceeded(cost, budget)
    forms = list(enumerate_reduced_forms(prime, l, m))
    chars = [f.to_character() for f in forms]
    n = len(forms)
    scanner = _ActionScanner(prime, m)
    index_of = {
        tuple(c.value(j) for j in scanner.cop): i for i, c in enumerate(chars)
    }
    parent = list(range(n))
    witnesses = []
    remaining = n
    for body in itertools.product(range(p), repeat=m - 1):
        z = [1, *body, 0]
        if _kernel_root(z, p, l):
            continue
        mat = scanner.action_matrix(z)
        for i in range(n):
            hit = index_of.get(scanner.apply_matrix(mat, chars[i].coeffs))
            if hit is None or hit == i:
                continue
            ri, rh = _find(parent, i), _find(parent, hit)
            if ri != rh:
                parent[rh] = ri
                elt = NottinghamElement(prime, UnitSeries(prime, z[1:]))
                witnesses.append((i, hit, elt))
                remaining -= 1
        if remaining == 1:
            break
    groups = {}
    for i in range(n):
        groups.setdefault(_find(parent, i), []).append(i)
    classes = sorted((tuple(sorted(g)) for g in groups.values()), key=lambda c: c[0])
    runtime_ms = int((time.perf_counter() - started) * 1000)
    return ClassReport(
        prime=prime,
        l=l,
        m=m,
        bound=reduced_form_bound(prime, l, m),
        class_count=len(classes),
        forms=tuple(forms),
        classes=tuple(classes),
        witnesses=tuple(witnesses),
        search_space_size=cost,
        method="oracle-partition",
        runtime_ms=runtime_ms,
    )


def count_classes(p, l, m, method: str = "oracle-partition", budget: int = DEFAULT_BUDGET) -> int:
    """Number of strict classes of type <l, m>.

    "canonical-reduce" counts distinct reduced forms over all characters
    of the type; it requires l < p, the range where the reduced form
    separates classes.  "oracle-partition" delegates to the exhaustive
    partition and needs p^m within budget.
    """
    prime = as_prime(p)
    require_valid_type(prime, l, m)
    if method == "canonical-reduce":
        if l >= prime.p:
            raise ValueError(
                "canonical-reduce is only a class count for l < p (l=%d, p=%d)"
                % (l, prime.p)
            )
        seen = set()
        for chi in enumerate_characters(prime, l, m):
            rf, _ = _reduce_char(chi)
            seen.add(rf)
        return len(seen)
    if method == "oracle-partition":
        return partition_reduced_forms(prime, l, m, budget).class_count
    raise ValueError("unknown method %r" % method)


# ---------------------------------------------------------------------------
# Closed forms.


def bound_exponents(p, l, m):
    """The pair (k, eps): free window digits and free unit digits.

    k counts indices j in [m-l, m-1] coprime to p; eps is 1 when p
    divides m and 2 otherwise.
    """
    prime = as_prime(p)
    require_valid_type(prime, l, m)
    k = sum(1 for j in range(m - l, m) if j % prime.p)
    eps = 1 if m % prime.p == 0 else 2
    return k, eps


def reduced_form_bound(p, l, m) -> int:
    """Closed-form count p^k (p-1)^eps of reduced forms of type <l, m>.

    This is an upper bound for the number of strict classes, with
    equality exactly when l < p.
    """
    prime = as_prime(p)
    k, eps = bound_exponents(prime, l, m)
    return prime.p**k * (prime.p - 1) ** eps


def order_p_class_count(p) -> int:
    """Published count of conjugacy classes of order-p elements of depth m:
    p - 1, independent of m."""
    return as_prime(p).p - 1


def type_1m_class_count(p, m) -> int:
    """Published strict class count for type <1, m>."""
    p = as_prime(p).p
    require_valid_type(p, 1, m)
    if m % p == 0:
        return p * (p - 1)
    if m % p == 1:
        return (p - 1) ** 2
    return p * (p - 1) ** 2


def type_2m_weak_class_count(p, m) -> int:
    """Published weak class count for type <2, m>."""
    p = as_prime(p).p
    require_valid_type(p, 2, m)
    if m % p == 0:
        return p * (p - 1)
    if m % p == 1:
        return (p - 1) ** 2
    return p * (p - 1) ** 2


# ---------------------------------------------------------------------------
# Weak classes by orbit counting.


def weak_class_count(p, l, m) -> int:
    """Number of weak classes of type <l, m>, by explicit orbit counting.

    The action on characters of bound m factors through the group
    generated by the elementary elements t(1 + c t^k) with k < m, and the
    action of a fixed element is linear in the character values, so each
    generator acts through a small matrix of basis decompositions.
    Orbits are computed by union-find over all characters of the type.
    """
    prime = as_prime(p)
    p = prime.p
    require_valid_type(prime, l, m)
    chars = list(enumerate_characters(prime, l, m))
    cop = [j for j in range(1, m + 1) if j % p]
    index_of = {tuple(c.value(j) for j in cop): i for i, c in enumerate(chars)}
    scanner = _ActionScanner(prime, m)
    # generator action matrices: for each generator t(1+c t^k), the basis
    # decomposition of E_j o g at every coprime j
    matrices = []
    for k in range(1, m):
        for c in range(1, p):
            z = [0] * (m + 1)
            z[0] = 1
            z[k] = c
            matrices.append(scanner.action_matrix(z))
    parent = list(range(len(chars)))
    for i, chi in enumerate(chars):
        for mat in matrices:
            hit = index_of[scanner.apply_matrix(mat, chi.coeffs)]
            ri, rh = _find(parent, i), _find(parent, hit)
            if ri != rh:
                parent[rh] = ri
    return len({_find(parent, i) for i in range(len(chars))})


# ---------------------------------------------------------------------------
# Power conjugacy.


def power_conjugacy_criterion(p, l, m, n: int) -> bool:
    """Closed-form answer to whether u and u^n are conjugate, for u of
    order p^2 and type <l, m> with u^n != u: true exactly when n = 1 mod p
    and (p, l, m) is not of the shape (2, l, 2l)."""
    prime = as_prime(p)
    require_valid_type(prime, l, m)
    n = int(n)
    if n % prime.p != 1:
        return False
    if prime.p == 2 and m == 2 * l:
        return False
    return True


def power_conjugacy_oracle(chi: Character, n: int, budget: int = DEFAULT_BUDGET):
    """Brute-force answer for one character: is chi strictly equivalent to
    its n-th scalar multiple?  Returns (found, witness-or-None)."""
    n = int(n)
    prime = chi.prime
    if not chi.is_surjective:
        raise ValueError("character is not surjective")
    if n % prime.p == 0:
        raise ValueError("n must be coprime to p")
    psi = scalar_mul(n, chi)
    if psi == chi:
        raise ValueError("scalar multiple equals the character itself")
    w = strict_equiv_search(chi, psi, budget)
    return (w is not None), w
