"""Property suites run by ``cliffpin verify``.

Every suite returns a list of report dicts
``{property, signature, samples, status, counterexample?}``.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable

from . import linalg as la
from . import lipschitz as lp
from . import obstruction as ob
from . import reps, sampling
from .blades import InvolutionKind, Signature, involution, signatures_up_to, volume_element, volume_sign
from .classify import classify
from .hyperbolic import Hyperbolic, unit_component

DEFAULT_SEED = 7
DEFAULT_SAMPLES = 100


def _report(prop: str, sig, samples: int, failure: dict | None = None) -> dict:
    out = {
        "property": prop,
        "signature": None if sig is None else [sig.p, sig.q],
        "samples": samples,
        "status": "pass" if failure is None else "fail",
    }
    if failure is not None:
        out["counterexample"] = failure
    return out


def _eps_choice(sig: Signature) -> int | None:
    return None if classify(sig).simple else 1


def irrep_for(sig: Signature) -> reps.MatrixRep:
    return reps.build_irrep(sig, _eps_choice(sig))


# ------------------------------------------------------------------ algebra


def volume_suite(dmax: int = 9, **_) -> list[dict]:
    out = []
    for sig in signatures_up_to(dmax):
        nu = volume_element(sig)
        sigma = (-1) ** (sig.q + sig.d // 2)
        fail = None
        if nu * nu != sigma:
            fail = {"reason": "nu^2 != sigma"}
        elif involution(InvolutionKind.REVERSION, nu) != nu * (-1) ** (sig.d // 2):
            fail = {"reason": "reversion of nu has the wrong sign"}
        elif volume_sign(sig) != sigma:
            fail = {"reason": "volume_sign disagrees with the closed form"}
        out.append(_report("volume_sign_law", sig, 1, fail))
    return out


# ---------------------------------------------------------- representations


def _quaternion_sym_product(c1, c2):
    """Half the anticommutator of two quaternions in coordinates (1, i, j, k)."""
    a1, v1 = c1[0], c1[1:]
    a2, v2 = c2[0], c2[1:]
    dot = sum(x * y for x, y in zip(v1, v2))
    return [a1 * a2 - dot] + [a1 * y + a2 * x for x, y in zip(v1, v2)]


def expected_schur_pairing(tag: str, alpha: int, c1, c2) -> list[Fraction]:
    """Coordinates of p(s1 u, s2 u) predicted from the Schur algebra type."""
    if tag == "R":
        vals = [c1[0] * c2[0]]
    elif tag == "C":
        vals = [c1[0] * c2[0] + c1[1] * c2[1], Fraction(0)]
    else:
        vals = _quaternion_sym_product(c1, c2)
    return [alpha * v for v in vals]


def rep_structure_report(rep: reps.MatrixRep, rng: random.Random, pairing_samples: int = 5) -> list[dict]:
    sig = rep.sig
    rec = rep.record
    out = []
    fail = None
    try:
        reps.check_relations(sig, rep.gammas)
        if rep.dim != reps.expected_dimension(sig):
            fail = {"reason": f"dimension {rep.dim} is not minimal"}
        if la.span_dimension(list(rep.gammas)) != sig.d:
            fail = {"reason": "generators are linearly dependent"}
        image = reps.image_dimension(rep)
        want = 1 << sig.d if rec.simple else 1 << (sig.d - 1)
        if image != want:
            fail = {"reason": f"image dimension {image} != {want}"}
        if not rec.simple and la.is_scalar(rep.omega()) != rep.eps:
            fail = {"reason": "gamma(nu) != eps I"}
        reps.pinor_volume(rep)
    except Exception as exc:  # report, do not abort the suite
        fail = {"reason": str(exc)}
    out.append(_report("irrep_relations_and_dimension", sig, 1, fail))

    fail = None
    schur = reps.compute_schur(rep)
    anti = reps.compute_anticommutant(rep)
    if schur.tag != rec.schur_tag:
        fail = {"reason": f"Schur tag {schur.tag} != {rec.schur_tag}"}
    want = schur.dim if rec.simple else 0
    if anti.dim != want:
        fail = {"reason": f"anticommutant dimension {anti.dim} != {want}"}
    out.append(_report("schur_and_anticommutant_dimension", sig, 1, fail))

    if not rec.simple:
        fail = None
        twin = reps.twin_irrep(rep)
        if la.is_scalar(twin.omega()) != -rep.eps or reps.twin_irrep(twin).gammas != rep.gammas:
            fail = {"reason": "twin representation has the wrong volume sign or is not an involution"}
        out.append(_report("twin_inequivalent", sig, 1, fail))
        return out

    # pseudocentralizer grading
    fail = None
    basis = list(schur.basis) + list(anti.basis)
    if la.span_dimension(basis) != len(basis):
        fail = {"reason": "Schur algebra and anticommutant intersect"}
    else:
        for x in schur.basis:
            for y in anti.basis:
                if la.express_in_span(la.matmul(x, y), anti.basis) is None:
                    fail = {"reason": "S A is not contained in A"}
        for x in anti.basis:
            for y in anti.basis:
                if schur.coordinates(la.matmul(x, y)) is None:
                    fail = {"reason": "A A is not contained in S"}
    out.append(_report("pseudocentralizer_grading", sig, len(basis) ** 2, fail))

    # Schur pairing in the u-basis
    fail = None
    u = anti.u
    for _ in range(pairing_samples):
        c1 = sampling.nonzero_schur_coords(rng, schur.dim)
        c2 = sampling.nonzero_schur_coords(rng, schur.dim)
        x1 = la.matmul(schur.element(c1), u)
        x2 = la.matmul(schur.element(c2), u)
        got = reps.schur_pairing(x1, x2)
        want = schur.element(expected_schur_pairing(schur.tag, rec.alpha, c1, c2))
        if got != want:
            fail = {"s1": [str(c) for c in c1], "s2": [str(c) for c in c2], "reason": "Schur pairing mismatch"}
            break
    out.append(_report("schur_pairing_in_u_basis", sig, pairing_samples, fail))

    # twisting element laws
    fail = None
    if la.matmul(u, u) != la.scalar_matrix(rep.dim, rec.alpha):
        fail = {"reason": "u^2 != alpha I"}
    uinv = la.scale(rec.alpha, u)
    for J in schur.im_basis:
        conj = la.matmul(la.matmul(u, J), uinv)
        if conj != (la.neg(J) if rec.is_complex else J):
            fail = {"reason": "Ad(u) on the Schur algebra is wrong"}
    mu = reps.special_twisting_element(rep)
    if mu is not None:
        if la.matmul(mu, mu) != la.scalar_matrix(rep.dim, -1):
            fail = {"reason": "special twisting element does not square to -I"}
        v = sampling.nondegenerate_vector(rng, sig)
        if not lp.special_adjoint_sign_check(rep, v):
            fail = {"reason": "Ad0(mu gamma(v)) != +R_v"}
    out.append(_report("twisting_element", sig, 1, fail))
    return out


def reps_suite(dmax: int = 8, seed: int = DEFAULT_SEED, extra=((10, 1), (1, 10)), **_) -> list[dict]:
    rng = random.Random(seed)
    out = []
    sigs = signatures_up_to(dmax) + [Signature(p, q) for p, q in extra]
    for sig in sigs:
        out.extend(rep_structure_report(irrep_for(sig), rng))
    return out


# ------------------------------------------------------------------ pairing


def pairing_report(rep: reps.MatrixRep, rng: random.Random, samples: int = 5) -> list[dict]:
    sig = rep.sig
    rec = rep.record
    out = []
    fail = None
    try:
        form = lp.find_canonical_pairing(rep)
    except Exception as exc:
        return [_report("canonical_pairing_unique", sig, 1, {"reason": str(exc)})]
    if form.type != rec.eps_e:
        fail = {"reason": "pairing type != eps_e"}
    w = rep.omega()
    if form.transpose(w) != la.scale(rec.beta, la.inverse(w)):
        fail = {"reason": "omega^t != beta omega^-1"}
    out.append(_report("canonical_pairing_unique", sig, 1, fail))

    fail = None
    schur = reps.compute_schur(rep)
    for _ in range(samples):
        X = lp.sample_pin_factors(rep, rng.randint(1, 3), rng).matrix
        Y = la.add(lp.sample_pin_factors(rep, rng.randint(1, 3), rng).matrix, schur.element(sampling.nonzero_schur_coords(rng, schur.dim)))
        if form.transpose(la.matmul(X, Y)) != la.matmul(form.transpose(Y), form.transpose(X)):
            fail = {"reason": "transpose is not an anti-automorphism"}
            break
        s = lp.schur_unit(rep, rng)
        if lp.lipschitz_norm(rep, form, s) != rep.identity():
            fail = {"reason": "unit Schur element does not preserve B_e"}
            break
    out.append(_report("transpose_and_unit_schur_isometries", sig, samples, fail))
    return out


def pairing_suite(dmax: int = 7, seed: int = DEFAULT_SEED, **_) -> list[dict]:
    rng = random.Random(seed)
    out = []
    for sig in signatures_up_to(dmax):
        out.extend(pairing_report(irrep_for(sig), rng))
    return out


# ---------------------------------------------------------------- Lipschitz


def lipschitz_report(rep: reps.MatrixRep, n_samples: int, seed: int) -> list[dict]:
    sig = rep.sig
    rec = rep.record
    rng = random.Random(seed)
    form = lp.find_canonical_pairing(rep)
    schur = reps.compute_schur(rep)
    out = []

    fail = None
    count = n_samples
    for _ in range(count):
        v = sampling.nondegenerate_vector(rng, sig)
        W = lp.is_lipschitz(rep, rep.vector_image(v)).witness
        if W is None or W != la.neg(lp.reflection_matrix(sig, v)):
            fail = {"vector": [str(x) for x in v], "reason": "witness of gamma(v) != -R_v"}
            break
    out.append(_report("minus_reflection_law", sig, count, fail))

    fail_vol = fail_norm = fail_pair = None
    for _ in range(n_samples):
        pin = lp.sample_pin_factors(rep, rng.randint(0, 5), rng)
        elem = lp.is_lipschitz(rep, pin.matrix)
        if elem.witness is None:
            fail_vol = {"reason": "pin sample is not in L"}
            break
        det = la.det(elem.witness)
        w = rep.omega()
        if la.matmul(la.matmul(w, pin.matrix), la.inverse(w)) != la.scale(det, pin.matrix):
            fail_vol = {"vectors": [[str(x) for x in v] for v in pin.vectors], "reason": "Ad(omega)(a) != det(Ad0(a)) a"}
        expected = 1
        for h in pin.norms:
            expected *= rec.eps_e * h
        if lp.lipschitz_norm(rep, form, pin.matrix) != la.scalar_matrix(rep.dim, expected):
            fail_norm = {"vectors": [[str(x) for x in v] for v in pin.vectors], "reason": f"N_e != {expected} I"}
        # products of two minus reflections are realized by gamma(v) gamma(w)
        if len(pin.vectors) >= 2:
            v1, v2 = pin.vectors[:2]
            W2 = lp.is_lipschitz(rep, la.matmul(rep.vector_image(v1), rep.vector_image(v2))).witness
            target = la.matmul(lp.reflection_matrix(sig, v1), lp.reflection_matrix(sig, v2))
            if W2 != target:
                fail_pair = {"reason": "Ad0(gamma(v)gamma(w)) != R_v R_w"}
    out.append(_report("volume_grading_law", sig, n_samples, fail_vol))
    out.append(_report("norm_on_pin_samples", sig, n_samples, fail_norm))
    out.append(_report("ad0_realizes_rotation_pairs", sig, n_samples, fail_pair))

    fail = None
    for _ in range(n_samples):
        c = sampling.nonzero_schur_coords(rng, schur.dim)
        s = schur.element(c)
        m = sum(x * x for x in c)
        if lp.lipschitz_norm(rep, form, s) != la.scalar_matrix(rep.dim, m):
            fail = {"schur": [str(x) for x in c], "reason": "N_e(s) != M(s) I"}
            break
    out.append(_report("norm_on_schur_samples", sig, n_samples, fail))

    fail = None
    count = 0
    for _ in range(max(10, n_samples // 5)):
        for h in ([1] if sig.p else []) + ([-1] if sig.q else []):
            v1 = sampling.unit_vector(rng, sig, h)
            v2 = sampling.unit_vector(rng, sig, h)
            a = la.matmul(rep.vector_image(v1), rep.vector_image(v2))
            count += 1
            if lp.lipschitz_norm(rep, form, a) != rep.identity():
                fail = {"reason": "spin+ element does not preserve B_e"}
    out.append(_report("spin_plus_preserves_pairing", sig, count, fail))

    out.extend(lp.verify_group_identification(rep, n_samples, seed))
    if rec.simple:
        out.extend(lp.twisted_automorphism_check(rep, max(4, n_samples // 20), seed))
    return out


def lipschitz_suite(dmax: int = 6, seed: int = DEFAULT_SEED, samples: int = DEFAULT_SAMPLES, **_) -> list[dict]:
    out = []
    for sig in signatures_up_to(dmax):
        out.extend(lipschitz_report(irrep_for(sig), samples, seed))
    return out


# --------------------------------------------------------------- obstruction


def rp2_context(p: int, q: int) -> ob.CohomologyContext:
    """RP^2 with its tangent bundle carried entirely by the positive or negative part."""
    a, a2 = (1,), (1,)
    z1, z2 = (0,), (0,)
    w1p, w2p, w1m, w2m = (a, a2, z1, z2) if q == 0 else (z1, z2, a, a2)
    return ob.CohomologyContext(p, q, 1, 1, {(0, 0): (1,)}, a, w1p, w1m, w2p, w2m)


def torus_context(p: int, q: int) -> ob.CohomologyContext:
    d = p + q
    r2 = d * (d - 1) // 2
    cup = {}
    k = 0
    for i in range(d):
        cup[(i, i)] = (0,) * r2
        for j in range(i + 1, d):
            v = tuple(1 if t == k else 0 for t in range(r2))
            cup[(i, j)] = cup[(j, i)] = v
            k += 1
    z1, z2 = (0,) * d, (0,) * r2
    return ob.CohomologyContext(p, q, d, r2, cup, z1, z1, z1, z2, z2)


def trivial_candidates(ctx: ob.CohomologyContext) -> list[ob.AuxBundleClass]:
    z1, z2 = ctx.zero1(), ctx.zero2()
    return [ob.AuxBundleClass(ob.BundleKind.SO3, z1, z2), ob.AuxBundleClass(ob.BundleKind.O2, z1, z2)]


def mspin_contexts():
    """(10,1) contexts on a manifold with H^1 = Z/2 a, H^2 = Z/2 a^2, all class choices."""
    for w1p in (0, 1):
        for w1m in (0, 1):
            for w2p in (0, 1):
                yield ob.CohomologyContext(10, 1, 1, 1, {(0, 0): (1,)}, ((w1p + w1m) % 2,), (w1p,), (w1m,), (w2p,), (0,))


def obstruction_suite(**_) -> list[dict]:
    out = []
    fail = None
    n = 0
    for ctx in mspin_contexts():
        n += 1
        v = ob.elementary_pinor_exists(ctx)
        want = not any(ctx.w1M) and not any(ctx.w2p)
        if (v.exists is ob.Existence.EXISTS) != want:
            fail = {"classes": [ctx.w1p, ctx.w1m, ctx.w2p], "reason": "verdict differs from w1(M)=0 and w2+=0"}
    out.append(_report("lorentzian_11d_pinor_criterion", Signature(10, 1), n, fail))

    fail = None
    if ob.pin_untwisted_obstruction(rp2_context(2, 0)).exists is not ob.Existence.NOT_EXISTS:
        fail = {"reason": "untwisted Pin should fail on RP^2 with signature (2,0)"}
    if ob.pin_untwisted_obstruction(rp2_context(0, 2)).exists is not ob.Existence.EXISTS:
        fail = {"reason": "untwisted Pin should exist on RP^2 with signature (0,2)"}
    out.append(_report("rp2_pin_fixtures", None, 2, fail))

    fail = None
    n = 0
    for d in range(1, 12):
        for p in range(d + 1):
            q = d - p
            ctx = torus_context(p, q)
            cands = trivial_candidates(ctx)
            structs = ["spin"]
            if d % 2 == 0:
                structs += ["pin", "pin_twisted", "pinq", "pinq_twisted"]
            structs += ["spinq"]
            if (p - q) % 8 in (3, 7):
                structs += ["spino"]
            for s in structs + ["auto"]:
                n += 1
                if ob.evaluate(ctx, s, cands).exists is not ob.Existence.EXISTS:
                    fail = {"signature": [p, q], "structure": s, "reason": "structure missing on a torus"}
    out.append(_report("torus_all_structures_exist", None, n, fail))

    fail = None
    n = 0
    for d in range(1, 12):
        for p in range(d + 1):
            q = d - p
            if (p - q) % 8 not in (3, 7):
                continue
            n += 1
            alpha = 1 if (p - q) % 8 == 7 else -1
            direct = ((1 if alpha == -1 else 0) + sum(range(1, p + 1)) + sum(range(1, q + 1))) % 2
            if ob.spino_coefficient(p, q) != direct:
                fail = {"signature": [p, q], "reason": "Spin^o coefficient mismatch"}
    out.append(_report("spino_coefficient", None, n, fail))
    return out


# ---------------------------------------------------------------- hyperbolic


def hyperbolic_grid(half: int = 20, step: Fraction = Fraction(1, 4)) -> list[Hyperbolic]:
    vals = [k * step for k in range(-half, half + 1)]
    return [Hyperbolic(x, y) for x in vals for y in vals]


def component_by_region(z: Hyperbolic) -> str | None:
    """Quadrant of z relative to the light cone |x| = |y|."""
    x, y = z.x, z.y
    if abs(x) == abs(y):
        return None
    if x > abs(y):
        return "++"
    if x < -abs(y):
        return "--"
    return "+-" if y > abs(x) else "-+"


def hyperbolic_suite(seed: int = DEFAULT_SEED, **_) -> list[dict]:
    grid = hyperbolic_grid()
    rng = random.Random(seed)
    out = []
    fail = None
    pairs = [(z, grid[-1 - i]) for i, z in enumerate(grid)] + [(rng.choice(grid), rng.choice(grid)) for _ in range(10000)]
    for a, b in pairs:
        ab = a * b
        if ab.modulus() != a.modulus() * b.modulus():
            fail = {"pair": [str(a), str(b)], "reason": "M is not multiplicative"}
            break
        sa, sb, sab = a.split(), b.split(), ab.split()
        if sab != (sa[0] * sb[0], sa[1] * sb[1]) or (a + b).split() != (sa[0] + sb[0], sa[1] + sb[1]):
            fail = {"pair": [str(a), str(b)], "reason": "split map is not an algebra morphism"}
            break
    out.append(_report("hyperbolic_modulus_and_split", None, len(pairs), fail))

    fail = None
    for z in grid:
        if Hyperbolic.from_split(*z.split()) != z:
            fail = {"z": str(z), "reason": "split map is not invertible"}
            break
        comp = unit_component(z)
        if comp.label != component_by_region(z):
            fail = {"z": str(z), "reason": f"component {comp.label} != {component_by_region(z)}"}
            break
        if comp.is_unit != (abs(z.modulus()) == 1):
            fail = {"z": str(z), "reason": "unit flag is wrong"}
            break
    j = Hyperbolic.j()
    named = [
        (j.modulus() == -1, "M(j) = -1"),
        (j.split() == (1, -1), "split(j) = (1,-1)"),
        (Hyperbolic(-1).split() == (-1, -1), "split(-1) = (-1,-1)"),
        (unit_component(Hyperbolic(2, 1)).label == "++", "2+j in ++"),
        (unit_component(j).label == "+-", "j in +-"),
        (unit_component(Hyperbolic(-1)).label == "--", "-1 in --"),
        ((Hyperbolic(1, 1) * Hyperbolic(1, -1)).modulus() == 0 and Hyperbolic(1, 1) * Hyperbolic(1, -1) == Hyperbolic(0), "(1+j)(1-j) = 0"),
        (unit_component(Hyperbolic(1, 1)).label is None, "1+j is not invertible"),
    ]
    for ok, text in named:
        if not ok and fail is None:
            fail = {"reason": f"named point fails: {text}"}
    out.append(_report("hyperbolic_components", None, len(grid) + len(named), fail))
    return out


SUITES: dict[str, Callable[..., list[dict]]] = {
    "volume": volume_suite,
    "reps": reps_suite,
    "pairing": pairing_suite,
    "lipschitz": lipschitz_suite,
    "obstruction": obstruction_suite,
    "hyperbolic": hyperbolic_suite,
}


def run_suites(names, seed: int = DEFAULT_SEED, samples: int = DEFAULT_SAMPLES, progress=None) -> list[dict]:
    out = []
    for name in names:
        if name not in SUITES:
            from .errors import InputError

            raise InputError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
        reports = SUITES[name](seed=seed, samples=samples)
        for r in reports:
            r["suite"] = name
            if progress is not None:
                progress(r)
        out.extend(reports)
    return out
