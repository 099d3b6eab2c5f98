"""Exact arithmetic in the real Clifford algebra Cl(p,q) on the blade basis.

Basis blades are bitmasks: bit ``i`` set means generator ``e_{i+1}`` is a
factor. Generators ``e_1..e_p`` square to +1 and ``e_{p+1}..e_d`` to -1.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping

from . import linalg
from .errors import InputError, ResourceLimitError, SignatureMismatchError, check
from .kernels import blade_sign, multiply_terms

DEFAULT_CENTER_MAX_DIM = 12


@dataclass(frozen=True, order=True)
class Signature:
    p: int
    q: int

    def __post_init__(self):
        if not (isinstance(self.p, int) and isinstance(self.q, int)):
            raise InputError("signature entries must be integers")
        if self.p < 0 or self.q < 0:
            raise InputError("signature entries must be nonnegative")
        if self.p + self.q < 1:
            raise InputError("signature must have p + q >= 1")

    @property
    def d(self) -> int:
        return self.p + self.q

    @property
    def neg_mask(self) -> int:
        return ((1 << self.d) - 1) ^ ((1 << self.p) - 1)

    @property
    def full_mask(self) -> int:
        return (1 << self.d) - 1

    def metric(self, i: int) -> int:
        """h(e_{i+1}, e_{i+1}) for a 0-based generator index."""
        return 1 if i < self.p else -1

    def __str__(self) -> str:
        return f"({self.p},{self.q})"


def signatures_up_to(dmax: int, dmin: int = 1) -> list[Signature]:
    return [Signature(p, d - p) for d in range(dmin, dmax + 1) for p in range(d, -1, -1)]


def grade(mask: int) -> int:
    return bin(mask).count("1")


def blade_indices(mask: int) -> tuple[int, ...]:
    """1-based generator indices of a blade."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i + 1)
        mask >>= 1
        i += 1
    return tuple(out)


def _blade_key(mask: int):
    return (grade(mask), blade_indices(mask))


class CliffordElement:
    """Immutable exact linear combination of basis blades."""

    __slots__ = ("_sig", "_terms", "_hash")

    def __init__(self, sig: Signature, terms: Mapping[int, object] | None = None):
        full = sig.full_mask
        clean = {}
        for m, c in (terms or {}).items():
            if not isinstance(m, int) or m < 0 or m & ~full:
                raise InputError(f"blade mask {m!r} out of range for {sig}")
            c = Fraction(c)
            if c:
                clean[m] = clean.get(m, 0) + c
        self._sig = sig
        self._terms = {m: c for m, c in clean.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, sig: Signature, terms: dict) -> "CliffordElement":
        obj = cls.__new__(cls)
        obj._sig = sig
        obj._terms = terms
        obj._hash = None
        return obj

    # construction helpers
    @classmethod
    def scalar(cls, sig: Signature, c=1) -> "CliffordElement":
        return cls(sig, {0: c})

    @classmethod
    def blade(cls, sig: Signature, mask: int, c=1) -> "CliffordElement":
        return cls(sig, {mask: c})

    @classmethod
    def generator(cls, sig: Signature, i: int) -> "CliffordElement":
        """The generator ``e_i`` (1-based)."""
        if not 1 <= i <= sig.d:
            raise InputError(f"generator index {i} out of range for {sig}")
        return cls(sig, {1 << (i - 1): 1})

    @classmethod
    def vector(cls, sig: Signature, coords: Iterable) -> "CliffordElement":
        coords = list(coords)
        if len(coords) != sig.d:
            raise InputError("vector length must equal d")
        return cls(sig, {1 << i: c for i, c in enumerate(coords)})

    @property
    def sig(self) -> Signature:
        return self._sig

    @property
    def terms(self) -> Mapping[int, Fraction]:
        return MappingProxyType(self._terms)

    def coefficient(self, mask: int) -> Fraction:
        return self._terms.get(mask, Fraction(0))

    def scalar_part(self) -> Fraction:
        return self._terms.get(0, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_scalar(self) -> bool:
        return all(m == 0 for m in self._terms)

    def grades(self) -> set[int]:
        return {grade(m) for m in self._terms}

    def grade_part(self, k: int) -> "CliffordElement":
        return CliffordElement._raw(self._sig, {m: c for m, c in self._terms.items() if grade(m) == k})

    def even_part(self) -> "CliffordElement":
        return CliffordElement._raw(self._sig, {m: c for m, c in self._terms.items() if not grade(m) & 1})

    def odd_part(self) -> "CliffordElement":
        return CliffordElement._raw(self._sig, {m: c for m, c in self._terms.items() if grade(m) & 1})

    def _check(self, other: "CliffordElement") -> None:
        if self._sig != other._sig:
            raise SignatureMismatchError(f"signature mismatch: {self._sig} vs {other._sig}")

    def _coerce(self, other):
        if isinstance(other, CliffordElement):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return CliffordElement.scalar(self._sig, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return CliffordElement._raw(self._sig, out)

    __radd__ = __add__

    def __neg__(self):
        return CliffordElement._raw(self._sig, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if not other:
                return CliffordElement._raw(self._sig, {})
            return CliffordElement._raw(self._sig, {m: c * other for m, c in self._terms.items()})
        if not isinstance(other, CliffordElement):
            return NotImplemented
        return clifford_product(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise InputError("only nonnegative integer powers are supported")
        out = CliffordElement.scalar(self._sig, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CliffordElement.scalar(self._sig, other)
        if not isinstance(other, CliffordElement):
            return NotImplemented
        return self._sig == other._sig and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._sig, frozenset(self._terms.items())))
        return self._hash

    def sorted_terms(self) -> list[tuple[int, Fraction]]:
        return sorted(self._terms.items(), key=lambda mc: _blade_key(mc[0]))

    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return f"CliffordElement({self._sig}, '{format_element(self)}')"


def clifford_product(a: CliffordElement, b: CliffordElement) -> CliffordElement:
    a._check(b)
    return CliffordElement._raw(a.sig, multiply_terms(a._terms, b._terms, a.sig.neg_mask))


# ------------------------------------------------------------------ text format

_TERM_RE = re.compile(r"^\s*([+-]?\s*[0-9/]*)\s*\*?\s*((?:e\d+)*)\s*$")
_GEN_RE = re.compile(r"e(\d+)")


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_element(x: CliffordElement) -> str:
    """Canonical text form, e.g. ``1 + -3/2*e1e2``."""
    if x.is_zero():
        return "0"
    parts = []
    for m, c in x.sorted_terms():
        if m == 0:
            parts.append(_fmt_coeff(c))
        else:
            parts.append(_fmt_coeff(c) + "*" + "".join(f"e{i}" for i in blade_indices(m)))
    return " + ".join(parts)


def parse_element(sig: Signature, text: str) -> CliffordElement:
    """Parse the text form; generator words need not be sorted."""
    text = text.strip()
    if not text:
        raise InputError("empty element text")
    out = CliffordElement(sig)
    seen = False
    for raw in text.split("+"):
        if not raw.strip():
            continue
        seen = True
        m = _TERM_RE.match(raw)
        if not m:
            raise InputError(f"cannot parse term {raw!r}")
        coeff_txt = m.group(1).replace(" ", "")
        word = m.group(2)
        if coeff_txt in ("", "+"):
            coeff = Fraction(1)
        elif coeff_txt == "-":
            coeff = Fraction(-1)
        else:
            try:
                coeff = Fraction(coeff_txt)
            except (ValueError, ZeroDivisionError) as exc:
                raise InputError(f"bad coefficient {coeff_txt!r}") from exc
        if not word and coeff_txt in ("", "+", "-"):
            raise InputError(f"empty term {raw!r}")
        term = CliffordElement.scalar(sig, coeff)
        for g in _GEN_RE.findall(word):
            term = term * CliffordElement.generator(sig, int(g))
        out = out + term
    if not seen:
        raise InputError(f"no terms in {text!r}")
    return out


# ----------------------------------------------------------------- involutions


class InvolutionKind(enum.Enum):
    PARITY = "Parity"
    REVERSION = "Reversion"
    TWISTED_REVERSION = "TwistedReversion"
    IMPROVED_REVERSION = "ImprovedReversion"


def _parity_sign(k: int) -> int:
    return -1 if k & 1 else 1


def _reversion_sign(k: int) -> int:
    return -1 if (k * (k - 1) // 2) & 1 else 1


def involution_sign(kind: InvolutionKind, k: int, d: int) -> int:
    """Eigenvalue of an involution on grade-k blades in dimension d."""
    if kind is InvolutionKind.PARITY:
        return _parity_sign(k)
    if kind is InvolutionKind.REVERSION:
        return _reversion_sign(k)
    if kind is InvolutionKind.TWISTED_REVERSION:
        return _reversion_sign(k) * _parity_sign(k)
    if kind is InvolutionKind.IMPROVED_REVERSION:
        if d % 4 in (2, 3):
            return _reversion_sign(k)
        return _reversion_sign(k) * _parity_sign(k)
    raise InputError(f"unknown involution {kind!r}")


def involution(kind: InvolutionKind, a: CliffordElement) -> CliffordElement:
    d = a.sig.d
    return CliffordElement._raw(
        a.sig, {m: c * involution_sign(kind, grade(m), d) for m, c in a.terms.items()}
    )


def parity(a):
    return involution(InvolutionKind.PARITY, a)


def reversion(a):
    return involution(InvolutionKind.REVERSION, a)


def twisted_reversion(a):
    return involution(InvolutionKind.TWISTED_REVERSION, a)


def improved_reversion(a):
    return involution(InvolutionKind.IMPROVED_REVERSION, a)


class NormKind(enum.Enum):
    N = "N"
    NTWISTED = "Ntwisted"
    NIMPROVED = "Nimproved"


_NORM_INVOLUTION = {
    NormKind.N: InvolutionKind.REVERSION,
    NormKind.NTWISTED: InvolutionKind.TWISTED_REVERSION,
    NormKind.NIMPROVED: InvolutionKind.IMPROVED_REVERSION,
}


def norm(kind: NormKind, a: CliffordElement) -> CliffordElement:
    return involution(_NORM_INVOLUTION[kind], a) * a


# ------------------------------------------------------------- sign constants


def volume_sign(sig: Signature) -> int:
    """sigma_{p,q}: the square of the volume element."""
    return -1 if (sig.q + sig.d // 2) & 1 else 1


def eps_d(d: int) -> int:
    return 1 if (d // 2) & 1 else -1


def bilinear(sig: Signature, x: CliffordElement, y: CliffordElement) -> Fraction:
    """h(x, y) for grade-one elements."""
    return sum(
        (x.coefficient(1 << i) * y.coefficient(1 << i) * sig.metric(i) for i in range(sig.d)),
        Fraction(0),
    )


def volume_element(sig: Signature) -> CliffordElement:
    nu = CliffordElement.blade(sig, sig.full_mask)
    sq = nu * nu
    sigma = volume_sign(sig)
    check(sq == CliffordElement.scalar(sig, sigma), f"volume element square wrong for {sig}")
    half = -1 if (sig.d // 2) & 1 else 1
    check(reversion(nu) == nu * half, f"reversion of volume element wrong for {sig}")
    return nu


def inverse_of_blade_combination(x: CliffordElement) -> CliffordElement:
    """Inverse of an element whose Clifford norm is a nonzero scalar."""
    n = norm(NormKind.N, x)
    if not n.is_scalar() or n.is_zero():
        raise InputError("element does not have a scalar nonzero Clifford norm")
    return reversion(x) / n.scalar_part()


# ---------------------------------------------------------- center solve


def _center_rows(sig: Signature, twisted: bool) -> list[dict]:
    rows = []
    n = 1 << sig.d
    neg = sig.neg_mask
    for i in range(sig.d):
        g = 1 << i
        for m in range(n):
            right = blade_sign(m, g, neg)
            left = blade_sign(g, m, neg)
            c = right + left if twisted else right - left
            if c:
                rows.append({m: Fraction(c)})
    return rows


def solve_center_and_twisted_center(
    sig: Signature, max_dim: int = DEFAULT_CENTER_MAX_DIM
) -> tuple[list[CliffordElement], list[CliffordElement]]:
    """Bases of the center and of the twisted center (anticommuting with V)."""
    if sig.d > max_dim:
        raise ResourceLimitError(f"center solve limited to d <= {max_dim}; got d = {sig.d}")
    n = 1 << sig.d
    zb = linalg.nullspace(_center_rows(sig, twisted=False), n)
    ab = linalg.nullspace(_center_rows(sig, twisted=True), n)
    z = [CliffordElement(sig, v) for v in zb]
    a = [CliffordElement(sig, v) for v in ab]
    nu = CliffordElement.blade(sig, sig.full_mask)
    one = CliffordElement.scalar(sig, 1)
    if sig.d % 2:
        check(z == [one, nu] and a == [], f"center of {sig} has unexpected shape")
    else:
        check(z == [one] and a == [nu], f"center of {sig} has unexpected shape")
    return z, a
