"""Characters of the principal unit group with values mod p^2.

A continuous character is determined by its values on the basis units
E_j = 1 + t^j with j coprime to p, so it is stored as a finite map
j -> c_j with c_j in Z/p^2 Z.  The natural depth bound of a character is
the largest degree its evaluation can see:

    bound = max(largest supported index, p * largest index with c_j a unit)

and the character is trivial on units congruent to 1 mod t^(bound+1).

The break type <l, m> of a surjective character has l the largest index
carrying a unit value and m its bound.  Valid types satisfy gcd(l,p)=1,
m >= p*l, and p | m forces m = p*l.

The Nottingham group acts on characters by precomposition: the element u
sends chi to the character f |-> chi(f o u).  Reduced forms are the
canonical orbit representatives: support inside {l} union [m-l, m], a
bare unit digit at l, and p-multiples with digits b_j on the window
(when m = 2l the two overlap at l and both digits live there).
"""

from __future__ import annotations

import itertools
import json
import math
import re

from .series import (
    NottinghamElement,
    ParseError,
    UnitSeries,
    _decompose_raw,
    _mul_raw,
    as_prime,
)


class Character:
    """A character of the principal unit group, valued in Z/p^2 Z.

    `coeffs` maps basis indices j (coprime to p) to values c_j; zero
    values are dropped, so an absent index means value 0.
    """

    __slots__ = ("prime", "coeffs", "_key")

    def __init__(self, prime, coeffs):
        prime = as_prime(prime)
        clean = {}
        for j, v in coeffs.items():
            j = int(j)
            if j < 1:
                raise ValueError("character index %d must be >= 1" % j)
            if j % prime.p == 0:
                raise ValueError(
                    "character index %d divisible by p=%d" % (j, prime.p)
                )
            v = int(v) % prime.psq
            if v:
                clean[j] = v
        object.__setattr__(self, "prime", prime)
        object.__setattr__(self, "coeffs", clean)
        object.__setattr__(self, "_key", tuple(sorted(clean.items())))

    def __setattr__(self, name, value):
        raise AttributeError("Character is immutable")

    def value(self, j):
        """c_j, the value on the basis unit E_j."""
        return self.coeffs.get(int(j), 0)

    @property
    def support(self):
        return tuple(sorted(self.coeffs))

    @property
    def is_surjective(self):
        """True when some value is a unit mod p, i.e. the image is all of Z/p^2."""
        p = self.prime.p
        return any(v % p for v in self.coeffs.values())

    @property
    def bound(self):
        """Depth through which evaluation must see its argument."""
        p = self.prime.p
        top = 1
        for j, v in self.coeffs.items():
            top = max(top, j * p if v % p else j)
        return top

    def __eq__(self, other):
        return (
            isinstance(other, Character)
            and other.prime == self.prime
            and other._key == self._key
        )

    def __hash__(self):
        return hash((self.prime.p, self._key))

    def __rmul__(self, n):
        return scalar_mul(n, self)

    def __str__(self):
        return "p=%d; %s" % (self.prime.p, format_character_literal(self))

    def __repr__(self):
        return "Character(p=%d, %r)" % (self.prime.p, dict(self._key))


class CharType(tuple):
    """A break type <l, m>: l the unit depth, m the full depth."""

    __slots__ = ()

    def __new__(cls, l, m):
        return super().__new__(cls, (int(l), int(m)))

    @property
    def l(self):
        return self[0]

    @property
    def m(self):
        return self[1]

    def __repr__(self):
        return "CharType(l=%d, m=%d)" % self


def validate_type(p, l, m) -> bool:
    """True when <l, m> is a realizable break type over F_p."""
    p = as_prime(p).p
    l, m = int(l), int(m)
    if l < 1 or m < 1:
        return False
    if math.gcd(l, p) != 1:
        return False
    if m < p * l:
        return False
    if m > p * l and m % p == 0:
        return False
    return True


def require_valid_type(p, l, m) -> CharType:
    if not validate_type(p, l, m):
        raise ValueError(
            "<%d, %d> is not a valid break type for p=%d" % (l, m, as_prime(p).p)
        )
    return CharType(l, m)


def break_sequence(chi: Character) -> CharType:
    """Break type of a surjective character."""
    p = chi.prime.p
    units = [j for j, v in chi.coeffs.items() if v % p]
    if not units:
        raise ValueError("character is not surjective, no break type")
    l = max(units)
    m = max(max(chi.support), p * l)
    return CharType(l, m)


class StandardExpansion:
    """Digit split of a surjective character: c_j = x_j + p * a_j.

    Unit digits x_j live at indices j <= l, p-multiple digits a_j at all
    supported indices; zero digits are dropped.
    """

    __slots__ = ("prime", "x", "a", "char_type")

    def __init__(self, prime, x, a, char_type):
        prime = as_prime(prime)
        object.__setattr__(self, "prime", prime)
        object.__setattr__(self, "x", {j: v for j, v in x.items() if v})
        object.__setattr__(self, "a", {j: v for j, v in a.items() if v})
        object.__setattr__(self, "char_type", char_type)

    def __setattr__(self, name, value):
        raise AttributeError("StandardExpansion is immutable")

    def to_character(self) -> Character:
        p = self.prime.p
        coeffs = {}
        for j, v in self.x.items():
            coeffs[j] = coeffs.get(j, 0) + v
        for j, v in self.a.items():
            coeffs[j] = coeffs.get(j, 0) + p * v
        return Character(self.prime, coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, StandardExpansion)
            and other.prime == self.prime
            and other.x == self.x
            and other.a == self.a
            and other.char_type == self.char_type
        )

    def __repr__(self):
        return "StandardExpansion(p=%d, x=%r, a=%r, type=%r)" % (
            self.prime.p,
            dict(sorted(self.x.items())),
            dict(sorted(self.a.items())),
            self.char_type,
        )


def standard_expansion(chi: Character) -> StandardExpansion:
    """Split each value c_j into a unit digit x_j and a p-digit a_j."""
    p = chi.prime.p
    ct = break_sequence(chi)
    x, a = {}, {}
    for j, v in chi.coeffs.items():
        if j <= ct.l:
            x[j] = v % p
            a[j] = (v - v % p) // p % p
        else:
            if v % p:
                raise ValueError(
                    "unit value at index %d above unit depth %d" % (j, ct.l)
                )
            a[j] = (v // p) % p
    return StandardExpansion(chi.prime, x, a, ct)


def window_indices(p, l, m):
    """Indices of the reduced-form window: j in [m-l, m], j coprime to p."""
    p = as_prime(p).p
    return tuple(j for j in range(m - l, m + 1) if j % p)


class ReducedForm:
    """Canonical representative data: unit digit x_l plus window p-digits.

    Converts losslessly to a character supported on {l} union [m-l, m].
    The window map `b` carries every coprime index of [m-l, m], zeros
    included; when p does not divide m the top digit b_m must be nonzero.
    For m = 2l the index l lies in the window and carries both digits.
    """

    __slots__ = ("prime", "l", "m", "x_l", "b")

    def __init__(self, prime, l, m, x_l, b):
        prime = as_prime(prime)
        require_valid_type(prime, l, m)
        l, m = int(l), int(m)
        x_l = int(x_l)
        if not 1 <= x_l < prime.p:
            raise ValueError("unit digit x_l must lie in 1..%d" % (prime.p - 1))
        win = window_indices(prime, l, m)
        bb = {}
        for j in win:
            v = int(b.get(j, 0))
            if not 0 <= v < prime.p:
                raise ValueError("window digit at %d out of range" % j)
            bb[j] = v
        extra = set(b) - set(win)
        if extra:
            raise ValueError("window digits at indices outside [m-l, m]: %r" % sorted(extra))
        if m % prime.p and bb[m] == 0:
            raise ValueError("top digit b_m must be nonzero when p does not divide m")
        object.__setattr__(self, "prime", prime)
        object.__setattr__(self, "l", l)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "x_l", x_l)
        object.__setattr__(self, "b", bb)

    def __setattr__(self, name, value):
        raise AttributeError("ReducedForm is immutable")

    @property
    def char_type(self):
        return CharType(self.l, self.m)

    def to_character(self) -> Character:
        p = self.prime.p
        coeffs = {self.l: self.x_l}
        for j, v in self.b.items():
            coeffs[j] = coeffs.get(j, 0) + p * v
        return Character(self.prime, coeffs)

    @classmethod
    def from_character(cls, chi: Character) -> "ReducedForm":
        p = chi.prime.p
        ct = break_sequence(chi)
        l, m = ct
        win = window_indices(chi.prime, l, m)
        cl = chi.value(l)
        x_l = cl % p
        b = {}
        for j in win:
            v = chi.value(j)
            if j == l:
                v -= x_l
            if v % p:
                raise ValueError("window value at %d is not a p-multiple" % j)
            b[j] = (v // p) % p
        rest = set(chi.support) - set(win) - {l}
        if rest:
            raise ValueError(
                "support outside {l} union window: %r" % sorted(rest)
            )
        if l not in win and cl != x_l:
            raise ValueError("p-digit at the unit index must vanish")
        return cls(chi.prime, l, m, x_l, b)

    def __eq__(self, other):
        return (
            isinstance(other, ReducedForm)
            and other.prime == self.prime
            and (other.l, other.m, other.x_l) == (self.l, self.m, self.x_l)
            and other.b == self.b
        )

    def __hash__(self):
        return hash(
            (self.prime.p, self.l, self.m, self.x_l, tuple(sorted(self.b.items())))
        )

    def __repr__(self):
        return "ReducedForm(p=%d, l=%d, m=%d, x_l=%d, b=%r)" % (
            self.prime.p,
            self.l,
            self.m,
            self.x_l,
            dict(sorted(self.b.items())),
        )


def is_reduced(chi: Character) -> bool:
    """True when chi is exactly representable as a ReducedForm."""
    if not chi.is_surjective:
        raise ValueError("character is not surjective")
    try:
        ReducedForm.from_character(chi)
        return True
    except ValueError:
        return False


# ---------------------------------------------------------------------------
# Evaluation and the group action.


def char_eval(chi: Character, f: UnitSeries) -> int:
    """chi(f) in Z/p^2 Z; f must be tracked at least to chi's bound."""
    if f.prime != chi.prime:
        raise ValueError("mismatched primes")
    bound = chi.bound
    if f.precision < bound:
        raise ValueError(
            "evaluation needs precision >= %d, have %d" % (bound, f.precision)
        )
    prime = chi.prime
    exps = _decompose_raw(f._raw(), prime.p, prime.psq, bound)
    total = 0
    for j, e in exps.items():
        c = chi.coeffs.get(j)
        if c:
            total += e * c
    return total % prime.psq


def char_act(u: NottinghamElement, chi: Character) -> Character:
    """The character f |-> chi(f o u); u moves chi within its orbit."""
    if u.prime != chi.prime:
        raise ValueError("mismatched primes")
    bound = chi.bound
    if u.precision < bound:
        raise ValueError(
            "action needs element precision >= %d, have %d" % (bound, u.precision)
        )
    prime = chi.prime
    p, psq = prime.p, prime.psq
    z = u.unit._raw()
    coeffs = {}
    zp = [1]
    for j in range(1, bound + 1):
        zp = _mul_raw(zp, z, p, bound - j)
        if j % p == 0:
            continue
        # E_j o u = 1 + t^j * z^j
        w = [0] * (bound + 1)
        w[0] = 1
        for d, zd in enumerate(zp):
            if zd:
                w[j + d] = (w[j + d] + zd) % p
        exps = _decompose_raw(w, p, psq, bound)
        total = 0
        for k, e in exps.items():
            c = chi.coeffs.get(k)
            if c:
                total += e * c
        total %= psq
        if total:
            coeffs[j] = total
    return Character(prime, coeffs)


def scalar_mul(n: int, chi: Character) -> Character:
    """The character chi^n, i.e. every value multiplied by n mod p^2."""
    n = int(n)
    return Character(chi.prime, {j: n * v for j, v in chi.coeffs.items()})


# ---------------------------------------------------------------------------
# Enumeration.


def _type_choice_lists(p, l, m):
    prime = as_prime(p)
    p = prime.p
    require_valid_type(prime, l, m)
    indices = [j for j in range(1, m + 1) if j % p]
    choices = []
    for j in indices:
        if j < l:
            choices.append(range(prime.psq))
        elif j == l:
            choices.append([v for v in range(prime.psq) if v % p])
        elif j < m:
            choices.append(range(0, prime.psq, p))
        else:  # j == m, only reached when p does not divide m
            choices.append(range(p, prime.psq, p))
    return indices, choices


def character_count(p, l, m) -> int:
    """Number of characters of exact break type <l, m>."""
    count = 1
    for choices in _type_choice_lists(p, l, m)[1]:
        count *= len(choices)
    return count


def enumerate_characters(p, l, m):
    """All characters of exact break type <l, m>, in lexicographic order.

    Order: coefficient vectors over ascending indices compare left to
    right, each coefficient ascending.
    """
    prime = as_prime(p)
    indices, choices = _type_choice_lists(prime, l, m)
    for values in itertools.product(*choices):
        yield Character(prime, dict(zip(indices, values)))


def enumerate_reduced_forms(p, l, m):
    """All reduced forms of type <l, m>, in lexicographic order."""
    prime = as_prime(p)
    require_valid_type(prime, l, m)
    win = window_indices(prime, l, m)
    digit_choices = []
    for j in win:
        if j == m and m % prime.p:
            digit_choices.append(range(1, prime.p))
        else:
            digit_choices.append(range(prime.p))
    for x_l in range(1, prime.p):
        for digits in itertools.product(*digit_choices):
            yield ReducedForm(prime, l, m, x_l, dict(zip(win, digits)))


# ---------------------------------------------------------------------------
# Text and JSON formats.


_PAIR_RE = re.compile(r"\s*(\d+)\s*:\s*(\d+)\s*$")


def format_character_literal(chi: Character) -> str:
    """Bare literal "5:1,15:2" (ascending indices); "0" when empty."""
    if not chi.coeffs:
        return "0"
    return ",".join("%d:%d" % (j, chi.coeffs[j]) for j in sorted(chi.coeffs))


def parse_character_literal(text: str, p) -> Character:
    """Parse "5:1,15:2" with a given prime; indices must be coprime to p,
    values must lie in 0..p^2-1."""
    prime = as_prime(p)
    coeffs = {}
    pos = 0
    stripped = text.strip()
    if stripped == "" or stripped == "0":
        return Character(prime, {})
    for chunk in text.split(","):
        m = _PAIR_RE.match(chunk)
        if not m:
            raise ParseError("unreadable index:value pair %r" % chunk.strip(), pos)
        j, v = int(m.group(1)), int(m.group(2))
        if j < 1 or j % prime.p == 0:
            raise ParseError(
                "index %d must be positive and coprime to p=%d" % (j, prime.p),
                pos + m.start(1),
            )
        if v >= prime.psq:
            raise ParseError(
                "value %d out of range 0..%d" % (v, prime.psq - 1),
                pos + m.start(2),
            )
        if j in coeffs:
            raise ParseError("repeated index %d" % j, pos + m.start(1))
        coeffs[j] = v
        pos += len(chunk) + 1
    return Character(prime, coeffs)


def format_character(chi: Character) -> str:
    """Headed text form "p=2; 5:1,15:2"."""
    return str(chi)


def parse_character(text: str) -> Character:
    """Parse the headed text form "p=2; 5:1,15:2"."""
    m = re.match(r"\s*p\s*=\s*(\d+)\s*;\s*", text)
    if not m:
        raise ParseError("expected a p=<prime>; header", 0)
    prime = as_prime(int(m.group(1)))
    rest = text[m.end():]
    if rest.strip() == "":
        return Character(prime, {})
    return parse_character_literal(rest, prime)


def character_to_json(chi: Character) -> str:
    return json.dumps(
        {"p": chi.prime.p, "coeffs": {str(j): chi.coeffs[j] for j in sorted(chi.coeffs)}}
    )


def character_from_json(text: str) -> Character:
    data = json.loads(text)
    return Character(as_prime(data["p"]), {int(j): v for j, v in data["coeffs"].items()})
