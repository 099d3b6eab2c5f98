"""Explicit irreducible real representations of Cl(p,q) and their structure.

Irreps are assembled from 2x2 real matrices and the 4x4 left-multiplication
matrices of the quaternions using four isomorphisms:

* Cl(p+1,q+1) = Cl(p,q) (x) Mat(2,R)
* Cl(p+2,q)   = Cl(q,p) (x) Cl(2,0)
* Cl(0,q+2)   = Cl(q,0) (x) Cl(0,2), used only when Cl(q,0) has real Schur
  algebra so that irreducibility is preserved
* Cl(p,q) = Cl(p+4,q-4), realized by recombining generators with the
  product of four positive ones

Every generator comes out as a signed permutation matrix.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from . import linalg as la
from .blades import CliffordElement, Signature, grade, volume_sign
from .classify import ClassRecord, classify
from .errors import ContractError, InputError, InternalCheckError, check

Matrix = la.Matrix

_I2 = la.identity(2)
_SX = la.as_matrix([[0, 1], [1, 0]])  # square +1
_SZ = la.as_matrix([[1, 0], [0, -1]])  # square +1
_EPS = la.as_matrix([[0, 1], [-1, 0]])  # square -1
# left multiplication by i, j on the quaternion basis (1, i, j, k)
_QI = la.as_matrix([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]])
_QJ = la.as_matrix([[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]])
_QK = la.matmul(_QI, _QJ)


@dataclass(frozen=True)
class MatrixRep:
    sig: Signature
    dim: int
    gammas: tuple
    eps: int | None = None
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    @property
    def d(self) -> int:
        return self.sig.d

    @property
    def record(self) -> ClassRecord:
        rec = self._cache.get("record")
        if rec is None:
            rec = self._cache["record"] = classify(self.sig)
        return rec

    def identity(self) -> Matrix:
        return la.identity(self.dim)

    def blade_image(self, mask: int) -> Matrix:
        """gamma(e_A) for the blade with bitmask ``mask``."""
        images = self._cache.setdefault("blades", {0: la.identity(self.dim)})
        got = images.get(mask)
        if got is not None:
            return got
        top = mask.bit_length() - 1
        rest = mask ^ (1 << top)
        if not rest:
            got = self.gammas[top]
        else:
            mono = self.blade_monomial(1 << top)
            left = self.blade_image(rest)
            got = la.matmul(left, self.gammas[top]) if mono is None else la.mono_right(left, mono)
        images[mask] = got
        return got

    def blade_monomial(self, mask: int):
        """(perm, vals) form of gamma(e_A), or None if it is not a signed permutation."""
        monos = self._cache.setdefault("monomials", {})
        if mask not in monos:
            monos[mask] = la.monomial(self.blade_image(mask))
        return monos[mask]

    def trace_with_blade(self, X: Matrix, mask: int) -> Fraction:
        """tr(X gamma(e_A))."""
        mono = self.blade_monomial(mask)
        if mono is None:
            return la.trace_product(X, self.blade_image(mask))
        return la.mono_trace(X, mono)

    def image(self, x: CliffordElement) -> Matrix:
        """gamma(x) for a Clifford algebra element."""
        if x.sig != self.sig:
            raise InputError("element and representation have different signatures")
        if x.is_zero():
            return la.zeros(self.dim)
        masks, coeffs = zip(*x.sorted_terms())
        monos = [self.blade_monomial(m) for m in masks]
        if all(m is not None for m in monos):
            return la.mono_lincomb(coeffs, monos, self.dim)
        return la.lincomb(coeffs, [self.blade_image(m) for m in masks])

    def vector_image(self, coords: Sequence) -> Matrix:
        coords = list(coords)
        if len(coords) != self.d:
            raise InputError("vector length must equal d")
        monos = [self.blade_monomial(1 << i) for i in range(self.d)]
        if all(m is not None for m in monos):
            return la.mono_lincomb(coords, monos, self.dim)
        return la.lincomb(coords, self.gammas)

    def left_gamma(self, i: int, A: Matrix) -> Matrix:
        """gamma(e_{i+1}) A."""
        mono = self.blade_monomial(1 << i)
        return la.matmul(self.gammas[i], A) if mono is None else la.mono_left(mono, A)

    def omega(self) -> Matrix:
        return self.blade_image(self.sig.full_mask)


# ------------------------------------------------------------------- building


def _tensor(gs: Sequence[Matrix], right: Matrix) -> list[Matrix]:
    return [la.kron(g, right) for g in gs]


def _eye(n: int) -> Matrix:
    return la.identity(n)


@lru_cache(maxsize=None)
def _build(p: int, q: int) -> tuple[int, tuple]:
    """Gammas (positive generators first) of an irrep of Cl(p,q)."""
    if p == 0 and q == 0:
        return 1, ()
    if (p, q) == (1, 0):
        return 1, (la.as_matrix([[1]]),)
    if (p, q) == (0, 1):
        return 2, (_EPS,)
    if p >= 1 and q >= 1:
        n, g = _build(p - 1, q - 1)
        pos = _tensor(g[: p - 1], _SX) + [la.kron(_eye(n), _SZ)]
        negs = _tensor(g[p - 1 :], _SX) + [la.kron(_eye(n), _EPS)]
        return 2 * n, tuple(pos + negs)
    if q == 0:
        # Cl(p,0) = Cl(0,p-2) (x) Cl(2,0); Cl(2,0) realized by SZ, SX
        n, g = _build(0, p - 2)
        pos = _tensor(g, _EPS) + [la.kron(_eye(n), _SZ), la.kron(_eye(n), _SX)]
        return 2 * n, tuple(pos)
    # p == 0, q >= 2
    if q in (2, 3, 4):
        n, g = _build(q - 2, 0)
        negs = _tensor(g, _QK) + [la.kron(_eye(n), _QI), la.kron(_eye(n), _QJ)]
        return 4 * n, tuple(negs)
    # Cl(0,q) = Cl(4,q-4) with generators f_i * eta, eta = f_1 f_2 f_3 f_4
    n, g = _build(4, q - 4)
    eta = la.matprod(g[:4], n)
    negs = [la.matmul(f, eta) for f in g[:4]] + list(g[4:])
    return n, tuple(negs)


def _as_fraction_matrix(M) -> Matrix:
    return la.as_matrix(M)


def check_relations(sig: Signature, gammas: Sequence[Matrix]) -> None:
    n = len(gammas[0]) if gammas else 0
    if len(gammas) != sig.d:
        raise InternalCheckError("wrong number of generator matrices")
    for i, g in enumerate(gammas):
        check(la.matmul(g, g) == la.scalar_matrix(n, sig.metric(i)), f"gamma({i + 1})^2 is wrong")
        for j in range(i):
            check(la.is_zero(la.anticommutator(g, gammas[j])), f"gamma({i + 1}) and gamma({j + 1}) do not anticommute")


def build_irrep(sig: Signature, eps: int | None = None) -> MatrixRep:
    """An irreducible real representation of Cl(sig).

    ``eps`` (the scalar value of gamma(nu)) is required exactly in the
    non-simple classes.
    """
    rec = classify(sig)
    if rec.simple:
        if eps is not None:
            raise ContractError(f"{sig} is simple; eps must not be given")
    else:
        if eps not in (1, -1):
            raise ContractError(f"{sig} is non-simple; eps must be +1 or -1")
    n, gammas = _build(sig.p, sig.q)
    gammas = tuple(gammas)
    check_relations(sig, gammas)
    rep = MatrixRep(sig, n, gammas, None)
    if not rec.simple:
        val = la.is_scalar(rep.omega())
        check(val in (1, -1), f"volume image of {sig} is not +-identity")
        if val != eps:
            gammas = tuple(la.neg(g) for g in gammas)
        rep = MatrixRep(sig, n, gammas, eps)
        check(la.is_scalar(rep.omega()) == eps, "sign adjustment failed")
    return rep


def expected_dimension(sig: Signature) -> int:
    """Real dimension of an irreducible module, from the classification."""
    rec = classify(sig)
    alg = 1 << sig.d
    if not rec.simple:
        alg //= 2
    s = rec.schur_dim
    # alg = Mat(m, S) has dimension m^2 * s and acts on S^m (real dim m * s)
    m = math.isqrt(alg // s)
    check(m * m * s == alg, "algebra dimension is not of the form m^2 dim S")
    return m * s


# ------------------------------------------------------------------- checks


def _monomial(M: Matrix):
    perm = []
    vals = []
    for row in M:
        nz = [(j, x) for j, x in enumerate(row) if x]
        if len(nz) != 1:
            return None
        perm.append(nz[0][0])
        vals.append(nz[0][1])
    return tuple(perm), tuple(vals)


def _image_vectors_monomial(rep: MatrixRep):
    mons = [_monomial(g) for g in rep.gammas]
    if any(m is None for m in mons):
        return None
    n = rep.dim
    out = {0: (tuple(range(n)), (Fraction(1),) * n)}
    for mask in range(1, 1 << rep.d):
        top = mask.bit_length() - 1
        perm_a, val_a = out[mask ^ (1 << top)]
        perm_b, val_b = mons[top]
        # (A B)[i][perm_b[perm_a[i]]] = val_a[i] * val_b[perm_a[i]]
        out[mask] = (tuple(perm_b[k] for k in perm_a), tuple(val_a[i] * val_b[perm_a[i]] for i in range(n)))
    for perm, vals in out.values():
        yield {i * n + perm[i]: vals[i] for i in range(n)}


def image_dimension(rep: MatrixRep) -> int:
    """Dimension of the span of all blade images gamma(e_A)."""
    vecs = _image_vectors_monomial(rep)
    if vecs is None:
        vecs = (la.matrix_to_sparse(rep.blade_image(m)) for m in range(1 << rep.d))
    return la.rank(vecs, rep.dim * rep.dim)


def pinor_volume(rep: MatrixRep) -> Matrix:
    """omega = gamma(nu), with its square and (anti)commutation checked."""
    w = rep.omega()
    sigma = volume_sign(rep.sig)
    check(la.matmul(w, w) == la.scalar_matrix(rep.dim, sigma), "omega^2 != sigma I")
    sgn = 1 if rep.d % 2 else -1
    for g in rep.gammas:
        check(la.matmul(w, g) == la.scale(sgn, la.matmul(g, w)), "omega commutation law fails")
    return w


def twin_irrep(rep: MatrixRep) -> MatrixRep:
    """The inequivalent partner with all generators negated (non-simple only)."""
    if rep.record.simple:
        raise ContractError("twin_irrep requires a non-simple representation")
    gammas = tuple(la.neg(g) for g in rep.gammas)
    twin = MatrixRep(rep.sig, rep.dim, gammas, -rep.eps)
    inter = la.solve_matrix_space(
        rep.dim, [[(1, None, g, False), (-1, h, None, False)] for g, h in zip(rep.gammas, gammas)]
    )
    # X g = h X with h = -g has only the zero solution
    check(not inter, "twin representation is equivalent to the original")
    return twin


# ------------------------------------------------------------ rational roots


def rational_sqrt(x: Fraction) -> Fraction | None:
    x = Fraction(x)
    if x < 0:
        return None
    a, b = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if a * a == x.numerator and b * b == x.denominator:
        return Fraction(a, b)
    return None


def _coefficient_vectors(k: int, bound: int = 3):
    """Nonzero integer vectors, ordered by size and then lexicographically."""
    for size in range(1, bound + 1):
        for vec in itertools.product(range(-size, size + 1), repeat=k):
            if max(abs(c) for c in vec) == size:
                yield vec


def _normalized_square_root_search(basis: Sequence[Matrix], want_sign: int, n: int) -> Matrix | None:
    """First combination X with X^2 = want_sign * r^2 I for rational r > 0, scaled by 1/r."""
    for vec in _coefficient_vectors(len(basis)):
        X = la.lincomb(vec, basis)
        sq = la.is_scalar(la.matmul(X, X))
        if sq is None or sq == 0 or (sq > 0) != (want_sign > 0):
            continue
        r = rational_sqrt(abs(sq))
        if r is not None:
            return la.scale(1 / r, X)
    return None


# -------------------------------------------------------------------- Schur


@dataclass(frozen=True)
class SchurBasis:
    tag: str
    basis: tuple
    im_basis: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)

    def element(self, coeffs: Sequence) -> Matrix:
        return la.lincomb(coeffs, self.basis)

    def coordinates(self, X: Matrix) -> list[Fraction] | None:
        return la.express_in_span(X, self.basis)

    def conjugate(self, X: Matrix) -> Matrix:
        """The conjugation c of the Schur algebra (identity in the real case)."""
        c = self.coordinates(X)
        if c is None:
            raise InputError("matrix is not in the Schur algebra")
        return self.element([c[0]] + [-x for x in c[1:]])

    def squared_norm(self, X: Matrix) -> Fraction:
        c = self.coordinates(X)
        if c is None:
            raise InputError("matrix is not in the Schur algebra")
        return sum((x * x for x in c), Fraction(0))


def commutant_space(rep: MatrixRep) -> list[Matrix]:
    blocks = [[(1, None, g, False), (-1, g, None, False)] for g in rep.gammas]
    return la.solve_matrix_space(rep.dim, blocks)


def anticommutant_space(rep: MatrixRep) -> list[Matrix]:
    blocks = [[(1, None, g, False), (1, g, None, False)] for g in rep.gammas]
    return la.solve_matrix_space(rep.dim, blocks)


def _imaginary_part(X: Matrix, n: int) -> Matrix:
    return la.sub(X, la.scalar_matrix(n, la.trace(X) / n))


def compute_schur(rep: MatrixRep) -> SchurBasis:
    cached = rep._cache.get("schur")
    if cached is not None:
        return cached
    n = rep.dim
    space = commutant_space(rep)
    tags = {1: "R", 2: "C", 4: "H"}
    if len(space) not in tags:
        raise InternalCheckError(f"commutant dimension {len(space)} is not 1, 2 or 4")
    tag = tags[len(space)]
    check(tag == rep.record.schur_tag, f"Schur algebra {tag} disagrees with class {rep.record.schur_tag}")
    one = la.identity(n)
    if tag == "R":
        result = SchurBasis("R", (one,), ())
    elif tag == "C":
        ims = [_imaginary_part(X, n) for X in space]
        ims = [X for X in ims if not la.is_zero(X)]
        J = _normalized_square_root_search(ims[:1], -1, n)
        check(J is not None, "no rational imaginary unit in the complex Schur algebra")
        w = rep.omega()
        if J == la.neg(w):
            J = w
        check(J == w, "complex structure is not the pinor volume element")
        result = SchurBasis("C", (one, J), (J,))
    else:
        ims = [_imaginary_part(X, n) for X in space]
        indep = []
        for X in ims:
            if la.span_dimension(indep + [X]) > len(indep):
                indep.append(X)
        check(len(indep) == 3, "imaginary Schur subspace is not three-dimensional")
        J1 = _normalized_square_root_search(indep, -1, n)
        check(J1 is not None, "no rational quaternion unit found")
        # imaginary elements anticommuting with J1 form a 2-dim subspace
        scal = [la.is_scalar(la.anticommutator(X, J1)) for X in indep]
        check(all(s is not None for s in scal), "imaginary Schur elements do not anticommute to scalars")
        perp = la.nullspace([{k: s for k, s in enumerate(scal) if s}], 3)
        perp_mats = [la.lincomb([v.get(k, 0) for k in range(3)], indep) for v in perp]
        J2 = _normalized_square_root_search(perp_mats, -1, n)
        check(J2 is not None, "no second rational quaternion unit found")
        J3 = la.matmul(J1, J2)
        check(la.matmul(J3, J3) == la.scalar_matrix(n, -1), "J3^2 != -I")
        check(la.matmul(J2, J1) == la.neg(J3), "J1 and J2 do not anticommute")
        result = SchurBasis("H", (one, J1, J2, J3), (J1, J2, J3))
    for X in result.basis:
        for g in rep.gammas:
            check(la.matmul(X, g) == la.matmul(g, X), "Schur basis element fails to commute")
    rep._cache["schur"] = result
    return result


# ------------------------------------------------------------- anticommutant


@dataclass(frozen=True)
class AnticommutantBasis:
    basis: tuple
    u: Matrix | None

    @property
    def dim(self) -> int:
        return len(self.basis)


def _sign_normalize(X: Matrix) -> Matrix:
    return la.neg(X) if la.first_nonzero(X) < 0 else X


def compute_anticommutant(rep: MatrixRep) -> AnticommutantBasis:
    cached = rep._cache.get("anticommutant")
    if cached is not None:
        return cached
    rec = rep.record
    n = rep.dim
    space = anticommutant_space(rep)
    schur = compute_schur(rep)
    if not rec.simple:
        check(len(space) == 0, "anticommutant of a non-simple irrep is nonzero")
        result = AnticommutantBasis((), None)
    else:
        check(len(space) == schur.dim, "anticommutant dimension differs from the Schur dimension")
        alpha = rec.alpha
        if rec.is_complex:
            u = _normalized_square_root_search(space, alpha, n)
            if u is None:
                raise InternalCheckError("no twisting element with u^2 = alpha I in the complex case")
            u = _sign_normalize(u)
        else:
            u = rep.omega()
        check(la.matmul(u, u) == la.scalar_matrix(n, alpha), "u^2 != alpha I")
        for g in rep.gammas:
            check(la.is_zero(la.anticommutator(u, g)), "u does not anticommute with the generators")
        uinv = la.scale(alpha, u)
        for J in schur.im_basis:
            conj = la.matmul(la.matmul(u, J), uinv)
            expected = la.neg(J) if rec.is_complex else J
            check(conj == expected, "conjugation by u acts wrongly on the Schur algebra")
        result = AnticommutantBasis(tuple(space), u)
    rep._cache["anticommutant"] = result
    return result


def special_twisting_element(rep: MatrixRep) -> Matrix | None:
    """A twisting element squaring to -I, when one exists."""
    rec = rep.record
    if not rec.simple:
        return None
    u = compute_anticommutant(rep).u
    if rec.alpha == -1:
        return u
    if rec.is_quaternionic:
        J1 = compute_schur(rep).im_basis[0]
        return la.matmul(J1, u)
    return None


def schur_pairing(x1: Matrix, x2: Matrix) -> Matrix:
    """Half the anticommutator of two anticommutant elements."""
    return la.scale(Fraction(1, 2), la.anticommutator(x1, x2))


# ----------------------------------------------------------------- text I/O


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def export_rep(rep: MatrixRep) -> str:
    eps = "none" if rep.eps is None else ("+1" if rep.eps > 0 else "-1")
    lines = [f"{rep.sig.p} {rep.sig.q} {rep.dim} {eps}"]
    for g in rep.gammas:
        lines.append("")
        for row in g:
            lines.append(" ".join(_fmt(x) for x in row))
    return "\n".join(lines) + "\n"


def import_rep(text: str, validate: bool = True) -> MatrixRep:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise InputError("empty representation file")
    head = lines[0].split()
    if len(head) != 4:
        raise InputError("header must be 'p q dim eps'")
    try:
        p, q, n = int(head[0]), int(head[1]), int(head[2])
        eps = None if head[3] == "none" else int(head[3])
    except ValueError as exc:
        raise InputError("malformed header") from exc
    sig = Signature(p, q)
    body = lines[1:]
    if len(body) != sig.d * n:
        raise InputError(f"expected {sig.d * n} matrix rows, found {len(body)}")
    gammas = []
    try:
        for k in range(sig.d):
            rows = [tuple(Fraction(tok) for tok in body[k * n + i].split()) for i in range(n)]
            if any(len(r) != n for r in rows):
                raise InputError("matrix row has the wrong length")
            gammas.append(tuple(rows))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError("malformed matrix entry") from exc
    if eps not in (None, 1, -1):
        raise InputError("eps must be +1, -1 or none")
    rep = MatrixRep(sig, n, tuple(gammas), eps)
    if validate:
        try:
            check_relations(sig, rep.gammas)
        except InternalCheckError as exc:
            raise InputError(f"imported matrices are not a representation: {exc}") from exc
        simple = rep.record.simple
        if simple != (eps is None) or not simple and la.is_scalar(rep.omega()) != eps:
            raise InputError("eps field disagrees with the imported matrices")
    return rep


def omega_grade_count(rep: MatrixRep) -> int:
    return grade(rep.sig.full_mask)
