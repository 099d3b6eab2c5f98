"""Canonical pairings, Lipschitz norms and the Lipschitz group of an irrep."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg as la
from . import sampling
from .blades import CliffordElement, Signature, reversion
from .errors import ContractError, InputError, InternalCheckError, SingularMatrixError, check
from .kernels import blade_sign
from .reps import (
    MatrixRep,
    compute_anticommutant,
    compute_schur,
    rational_sqrt,
    schur_pairing,
    special_twisting_element,
)

Matrix = la.Matrix


# ------------------------------------------------------------------ pairings


@dataclass(frozen=True)
class BilinearForm:
    B: Matrix
    sym: int
    type: int
    _inv: Matrix = field(default=None, compare=False, repr=False)

    @property
    def inverse(self) -> Matrix:
        if self._inv is None:
            object.__setattr__(self, "_inv", la.inverse(self.B))
        return self._inv

    def transpose(self, X: Matrix) -> Matrix:
        """The B-transpose B^-1 X^T B."""
        return la.matmul(self.inverse, la.matmul(la.transpose(X), self.B))

    def evaluate(self, x: Sequence, y: Sequence) -> Fraction:
        return sum((Fraction(x[i]) * self.B[i][j] * Fraction(y[j]) for i in range(len(x)) for j in range(len(y))), Fraction(0))


def _pairing_blocks(rep: MatrixRep, sym: int) -> list[list[tuple]]:
    rec = rep.record
    eps = rec.eps_e
    blocks = [[(1, None, None, True), (-sym, None, None, False)]]
    for g in rep.gammas:
        blocks.append([(1, la.transpose(g), None, False), (-eps, None, g, False)])
    for s in compute_schur(rep).im_basis:
        blocks.append([(1, la.transpose(s), None, False), (1, None, s, False)])
    if rec.is_complex:
        u = compute_anticommutant(rep).u
        uinv = la.scale(rec.alpha, u)
        blocks.append([(1, la.transpose(u), None, False), (-1, None, uinv, False)])
    return blocks


def pairing_solutions(rep: MatrixRep) -> list[tuple[int, Matrix]]:
    """Basis of all filtered pairings, each tagged with its symmetry sign."""
    return [(sym, B) for sym in (1, -1) for B in la.solve_matrix_space(rep.dim, _pairing_blocks(rep, sym))]


def find_canonical_pairing(rep: MatrixRep) -> BilinearForm:
    cached = rep._cache.get("pairing")
    if cached is not None:
        return cached
    found = pairing_solutions(rep)
    if len(found) != 1:
        raise InternalCheckError(f"canonical pairing space has dimension {len(found)}, expected 1")
    sym, B = found[0]
    B = la.scale(1 / la.first_nonzero(B), B)
    try:
        form = BilinearForm(B, sym, rep.record.eps_e, la.inverse(B))
    except SingularMatrixError as exc:
        raise InternalCheckError("canonical pairing is degenerate") from exc
    check(la.transpose(B) == la.scale(sym, B), "pairing symmetry check failed")
    for g in rep.gammas:
        check(form.transpose(g) == la.scale(form.type, g), "generator transpose law fails")
    rep._cache["pairing"] = form
    return form


def transpose_e(form: BilinearForm, X: Matrix) -> Matrix:
    return form.transpose(X)


def lipschitz_norm(rep: MatrixRep, form: BilinearForm, a: Matrix) -> Matrix:
    """N_e(a) = a^t a with respect to the canonical pairing."""
    la.check_shape(a, rep.dim)
    return la.matmul(form.transpose(a), a)


# ------------------------------------------------------------ Lipschitz group


@dataclass(frozen=True)
class LipschitzElement:
    a: Matrix
    witness: Matrix | None

    @property
    def in_lipschitz(self) -> bool:
        return self.witness is not None


def metric_matrix(sig: Signature) -> Matrix:
    return tuple(tuple(Fraction(sig.metric(i)) if i == j else Fraction(0) for j in range(sig.d)) for i in range(sig.d))


def is_orthogonal(sig: Signature, W: Matrix) -> bool:
    eta = metric_matrix(sig)
    return la.matmul(la.transpose(W), la.matmul(eta, W)) == eta


def vector_coordinates(rep: MatrixRep, X: Matrix) -> list[Fraction] | None:
    """Coordinates c with X = sum c_i gamma(e_i), or None."""
    n = rep.dim
    coords = []
    for i, g in enumerate(rep.gammas):
        # tr(g_i g_j) = n * h_ii * delta_ij
        t = rep.trace_with_blade(X, 1 << i)
        coords.append(t * rep.sig.metric(i) / n)
    if rep.vector_image(coords) != X:
        return None
    return coords


def adjoint_witness(rep: MatrixRep, a: Matrix, a_inv: Matrix) -> Matrix | None:
    """The d x d matrix of Ad(a) on gamma(V), column j holding the image of e_j."""
    cols = []
    for i in range(rep.d):
        c = vector_coordinates(rep, la.matmul(a, rep.left_gamma(i, a_inv)))
        if c is None:
            return None
        cols.append(c)
    return la.transpose(tuple(tuple(c) for c in cols))


def is_lipschitz(rep: MatrixRep, a: Matrix) -> LipschitzElement:
    la.check_shape(a, rep.dim)
    a = la.as_matrix(a)
    a_inv = la.inverse(a)
    W = adjoint_witness(rep, a, a_inv)
    if W is not None:
        check(is_orthogonal(rep.sig, W), "adjoint witness is not in O(p,q)")
    return LipschitzElement(a, W)


def reflection_matrix(sig: Signature, v: Sequence) -> Matrix:
    """R_v(x) = x - 2 h(x,v)/h(v,v) v as a d x d matrix."""
    v = [Fraction(x) for x in v]
    hv = sampling.quadratic(sig, v)
    if hv == 0:
        raise InputError("reflection along a null vector")
    d = sig.d
    return tuple(
        tuple((1 if i == j else 0) - 2 * v[i] * sig.metric(j) * v[j] / hv for j in range(d)) for i in range(d)
    )


@dataclass(frozen=True)
class Membership:
    in_L0: bool
    in_L1: bool
    in_reduced: bool
    det_Ad0: Fraction
    norm_sign: int | None


def reduced_membership(rep: MatrixRep, form: BilinearForm, a: Matrix) -> Membership:
    elem = is_lipschitz(rep, a)
    if not elem.in_lipschitz:
        raise ContractError("element is not in the Lipschitz group")
    det = la.det(elem.witness)
    check(det in (1, -1), "witness determinant is not +-1")
    w = rep.omega()
    commutes = la.matmul(w, elem.a) == la.matmul(elem.a, w)
    anticommutes = la.matmul(w, elem.a) == la.neg(la.matmul(elem.a, w))
    check(commutes == (det == 1), "volume grading disagrees with det of the witness")
    check(commutes or anticommutes, "Lipschitz element is not homogeneous for the volume grading")
    nval = la.is_scalar(lipschitz_norm(rep, form, elem.a))
    in_reduced = nval in (1, -1)
    sign = None if nval is None or nval == 0 else (1 if nval > 0 else -1)
    return Membership(det == 1, det == -1, in_reduced, det, sign)


# ------------------------------------------------------------------ sampling


@dataclass(frozen=True)
class PinSample:
    matrix: Matrix
    vectors: tuple
    norms: tuple


def sample_pin_factors(
    rep: MatrixRep, k: int, rng: random.Random, forced_first: Sequence | None = None
) -> PinSample:
    if k < 0:
        raise InputError("k must be nonnegative")
    mat = rep.identity()
    vecs, norms = [], []
    for i in range(k):
        if i == 0 and forced_first is not None:
            v = [Fraction(x) for x in forced_first]
            hv = sampling.quadratic(rep.sig, v)
            if hv not in (1, -1):
                raise InputError("forced vector must have square +-1")
        else:
            v, hv = sampling.random_unit_vector(rng, rep.sig)
        vecs.append(tuple(v))
        norms.append(int(hv))
        mat = la.matmul(mat, rep.vector_image(v))
    return PinSample(mat, tuple(vecs), tuple(norms))


def sample_pin_element(rep: MatrixRep, k: int, rng_seed: int, forced_first: Sequence | None = None) -> Matrix:
    """Product of k random unit-vector images, deterministic in the seed."""
    return sample_pin_factors(rep, k, random.Random(rng_seed), forced_first).matrix


def schur_unit(rep: MatrixRep, rng: random.Random) -> Matrix:
    """A rational point of the unit sphere of the Schur algebra."""
    schur = compute_schur(rep)
    if schur.dim == 1:
        return la.scale(rng.choice((1, -1)), rep.identity())
    return schur.element(sampling.sphere_point(rng, schur.dim))


# ------------------------------------------------------------- factorization


def _blade_square(sig: Signature, mask: int) -> int:
    """(e_A)^2 = +-1, read off from the kernel sign of e_A e_A."""
    return blade_sign(mask, mask, sig.neg_mask)


def _blade_decomposition(rep: MatrixRep, X: Matrix, masks: Sequence[int]) -> CliffordElement | None:
    n = rep.dim
    terms = {}
    for m in masks:
        c = rep.trace_with_blade(X, m) * _blade_square(rep.sig, m) / n
        if c:
            terms[m] = c
    x = CliffordElement(rep.sig, terms)
    if rep.image(x) != X:
        return None
    return x


def _is_versor(x: CliffordElement) -> bool:
    """x has Clifford norm +-1 and its twisted adjoint action preserves V."""
    nx = reversion(x) * x
    if not nx.is_scalar() or nx.scalar_part() not in (1, -1):
        return False
    xinv = reversion(x) * nx.scalar_part()
    xpar = x.even_part() - x.odd_part()
    for i in range(1, x.sig.d + 1):
        y = xpar * CliffordElement.generator(x.sig, i) * xinv
        if y.grades() - {1}:
            return False
    return True


@dataclass(frozen=True)
class Factorization:
    clifford: CliffordElement
    schur: Matrix
    kappa: int


def factor_reduced(rep: MatrixRep, a: Matrix) -> Factorization | None:
    """Write a = gamma(x) * s * u^kappa with x a versor and s a unit Schur element."""
    rec = rep.record
    schur = compute_schur(rep)
    kappa = 0
    if rec.is_complex:
        w = rep.omega()
        if la.matmul(w, a) != la.matmul(a, w):
            u = compute_anticommutant(rep).u
            a = la.matmul(a, la.scale(rec.alpha, u))
            kappa = 1
        constraints = [compute_anticommutant(rep).u]
    elif rec.is_quaternionic:
        constraints = list(schur.im_basis)
    else:
        constraints = []
    # a * z must commute with every constraint matrix
    cols = [la.matmul(a, s) for s in schur.basis]
    rows: list[dict] = []
    for C in constraints:
        comms = [la.matrix_to_sparse(la.commutator(X, C)) for X in cols]
        for pos in set().union(*comms):
            row = {k: c[pos] for k, c in enumerate(comms) if pos in c}
            rows.append(row)
    sols = la.nullspace(rows, schur.dim)
    if len(sols) != 1:
        return None
    z = [sols[0].get(k, Fraction(0)) for k in range(schur.dim)]
    r = rational_sqrt(sum(x * x for x in z))
    if r is None:
        return None
    z = [x / r for x in z]
    zmat = schur.element(z)
    target = la.matmul(a, zmat)
    full = range(1 << rep.d)
    even_only = not rec.simple or rec.is_complex
    masks = [m for m in full if not even_only or bin(m).count("1") % 2 == 0]
    x = _blade_decomposition(rep, target, masks)
    if x is None or not _is_versor(x):
        return None
    s = schur.conjugate(zmat)
    return Factorization(x, s, kappa)


# ------------------------------------------------------------------ reports


def _report(prop: str, sig: Signature, samples: int, failures: list) -> dict:
    out = {"property": prop, "signature": [sig.p, sig.q], "samples": samples, "status": "pass" if not failures else "fail"}
    if failures:
        out["counterexample"] = failures[0]
    return out


def _mat_str(M: Matrix) -> list[list[str]]:
    return [[str(x) for x in row] for row in M]


def _reduced_samples(rep: MatrixRep, rng: random.Random, n_samples: int):
    """Products gamma(pin) * unit Schur * u^kappa, with the expected L^1 flag."""
    rec = rep.record
    u = compute_anticommutant(rep).u if rec.is_complex else None
    for i in range(n_samples):
        k = rng.randint(0, 4)
        pin = sample_pin_factors(rep, k, rng)
        s = schur_unit(rep, rng)
        a = la.matmul(pin.matrix, s)
        kappa = 0
        if u is not None and rng.random() < 0.5:
            a = la.matmul(a, u)
            kappa = 1
        yield pin, s, kappa, a


def verify_group_identification(rep: MatrixRep, n_samples: int = 100, seed: int = 7) -> list[dict]:
    """Sampled checks of the Schur, vector and anticommutant representations of L."""
    rng = random.Random(seed)
    rec = rep.record
    sig = rep.sig
    form = find_canonical_pairing(rep)
    schur = compute_schur(rep)
    anti = compute_anticommutant(rep)
    reports = []
    samples = list(_reduced_samples(rep, rng, n_samples))

    # (i) kernel of the vector representation is the Schur group
    fails = []
    extra = []
    for _ in range(max(4, n_samples // 10)):
        v, hv = sampling.random_unit_vector(rng, sig)
        g = rep.vector_image(v)
        extra.append(la.matmul(la.matmul(g, g), schur_unit(rep, rng)))
    for a in [t[3] for t in samples] + extra:
        elem = is_lipschitz(rep, a)
        if not elem.in_lipschitz:
            fails.append({"element": _mat_str(a), "reason": "not in L"})
            continue
        trivial = elem.witness == la.identity(sig.d)
        in_schur = all(la.matmul(a, g) == la.matmul(g, a) for g in rep.gammas)
        if trivial != in_schur:
            fails.append({"element": _mat_str(a), "reason": "kernel of Ad0 differs from Schur group"})
    reports.append(_report("kernel_Ad0_is_schur_group", sig, len(samples) + len(extra), fails))

    # (ii) Ad_s on the complex Schur algebra
    if rec.is_complex:
        J = schur.im_basis[0]
        fails = []
        for pin, s, kappa, a in samples:
            mem = reduced_membership(rep, form, a)
            conj = la.matmul(la.matmul(a, J), la.inverse(a))
            expected = J if mem.in_L0 else la.neg(J)
            if conj != expected or mem.in_L1 != bool(kappa):
                fails.append({"element": _mat_str(a), "reason": "Ad_s(a) does not match the L0/L1 grading"})
        reports.append(_report("schur_action_complex", sig, len(samples), fails))

        # Ad_A at rational circle points
        fails = []
        u = anti.u
        for _ in range(n_samples):
            x, y = sampling.circle_point(rng)
            spin = sample_pin_factors(rep, 2 * rng.randint(0, 2), rng).matrix
            z = la.add(la.scalar_matrix(rep.dim, x), la.scale(y, J))
            a = la.matmul(spin, z)
            lhs = la.matmul(la.matmul(a, u), la.inverse(a))
            rhs = la.matmul(la.add(la.scalar_matrix(rep.dim, x * x - y * y), la.scale(2 * x * y, J)), u)
            if lhs != rhs:
                fails.append({"point": [str(x), str(y)], "reason": "Ad_A(a)(u) != e^{2 theta J} u"})
        reports.append(_report("anticommutant_action_complex", sig, n_samples, fails))

    # (iii) Ad_A preserves the Schur pairing
    if anti.dim:
        fails = []
        for pin, s, kappa, a in samples[: max(1, n_samples // 4)]:
            a_inv = la.inverse(a)
            for x1 in anti.basis:
                for x2 in anti.basis:
                    lhs = schur_pairing(la.matmul(la.matmul(a, x1), a_inv), la.matmul(la.matmul(a, x2), a_inv))
                    rhs = la.matmul(la.matmul(a, schur_pairing(x1, x2)), a_inv)
                    if lhs != rhs or schur.coordinates(rhs) is None:
                        fails.append({"element": _mat_str(a), "reason": "Schur pairing not preserved"})
        reports.append(_report("schur_pairing_twisted_orthogonal", sig, max(1, n_samples // 4), fails))

    # (iv) reduced elements factor through the canonical spinor group
    fails = []
    for pin, s, kappa, a in samples:
        mem = reduced_membership(rep, form, a)
        if not mem.in_reduced:
            fails.append({"element": _mat_str(a), "reason": "sample is not in the reduced group"})
            continue
        fac = factor_reduced(rep, a)
        if fac is None:
            fails.append({"element": _mat_str(a), "reason": "no factorization found"})
            continue
        u = anti.u if fac.kappa else rep.identity()
        if la.matmul(la.matmul(rep.image(fac.clifford), fac.schur), u) != a:
            fails.append({"element": _mat_str(a), "reason": "factorization does not reproduce the element"})
    reports.append(_report(f"reduced_group_is_{rec.reduced_lipschitz_name}", sig, len(samples), fails))
    return reports


def twisted_automorphism_check(rep: MatrixRep, samples: int = 20, seed: int = 7) -> list[dict]:
    """Decompose Ad_A(a) as (sigma_u, phi_0) and check the composition law."""
    rec = rep.record
    if not rec.simple:
        raise ContractError("twisted automorphisms need a nonzero anticommutant")
    rng = random.Random(seed)
    schur = compute_schur(rep)
    u = compute_anticommutant(rep).u
    u_inv = la.scale(rec.alpha, u)
    elems = [rep.identity(), u] + [t[3] for t in _reduced_samples(rep, rng, samples)]

    def sigma(a, a_inv):
        return la.matmul(la.matmul(la.matmul(a, u), a_inv), u_inv)

    fails = []
    inv = [la.inverse(a) for a in elems]
    sig_vals = [sigma(a, ai) for a, ai in zip(elems, inv)]
    for a, ai, sv in zip(elems, inv, sig_vals):
        if schur.coordinates(sv) is None:
            fails.append({"element": _mat_str(a), "reason": "sigma_u(a) not in the Schur algebra"})
        # twisted linearity: Ad(a)(s x) = phi_0(s) Ad(a)(x)
        for s in schur.basis:
            lhs = la.matmul(la.matmul(a, la.matmul(s, u)), ai)
            rhs = la.matmul(la.matmul(la.matmul(a, s), ai), la.matmul(la.matmul(a, u), ai))
            if lhs != rhs:
                fails.append({"element": _mat_str(a), "reason": "Ad_A(a) is not twisted S-linear"})
    check(sig_vals[0] == rep.identity(), "sigma_u(identity) != 1")
    for i in range(len(elems)):
        for j in range(len(elems)):
            a, ai = elems[i], inv[i]
            prod = la.matmul(a, elems[j])
            lhs = sigma(prod, la.matmul(inv[j], ai))
            rhs = la.matmul(la.matmul(la.matmul(a, sig_vals[j]), ai), sig_vals[i])
            if lhs != rhs:
                fails.append({"pair": [i, j], "reason": "composition law fails"})
    return [_report("twisted_automorphism_law", rep.sig, len(elems), fails)]


def phi0_of(rep: MatrixRep, a: Matrix) -> list[Matrix]:
    """Ad(a) restricted to the Schur algebra, as images of the Schur basis."""
    ai = la.inverse(a)
    return [la.matmul(la.matmul(a, s), ai) for s in compute_schur(rep).basis]


def special_adjoint_sign_check(rep: MatrixRep, v: Sequence) -> bool:
    """Ad0(mu gamma(v)) = +R_v for a special twisting element mu."""
    mu = special_twisting_element(rep)
    if mu is None:
        raise ContractError("no special twisting element in this class")
    W = is_lipschitz(rep, la.matmul(mu, rep.vector_image(v))).witness
    return W == reflection_matrix(rep.sig, v)
