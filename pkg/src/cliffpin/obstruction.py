"""Existence of pinor bundles from mod-2 characteristic classes.

A manifold is described by a finite presentation of H^1 and H^2 with
Z/2 coefficients: ranks, a cup product table H^1 x H^1 -> H^2 and the
modified Stiefel-Whitney classes of the positive and negative parts of
the metric. Classes are tuples of bits.
"""

from __future__ import annotations

import enum
import json
import string
from dataclasses import dataclass, field, replace
from typing import Any, Iterable, Mapping, Sequence

from .blades import Signature
from .classify import classify
from .errors import ContractError, InputError

Vec = tuple  # tuple[int, ...] of bits


def _vec(bits: Iterable, rank: int, what: str) -> Vec:
    out = tuple(int(b) for b in bits)
    if len(out) != rank:
        raise InputError(f"{what} must have length {rank}, got {len(out)}")
    if any(b not in (0, 1) for b in out):
        raise InputError(f"{what} must contain only 0/1 entries")
    return out


def vadd(*vs: Vec) -> Vec:
    return tuple(sum(col) % 2 for col in zip(*vs))


def vscale(c: int, v: Vec) -> Vec:
    return v if c % 2 else tuple(0 for _ in v)


def is_zero(v: Vec) -> bool:
    return not any(v)


class Existence(enum.Enum):
    EXISTS = "EXISTS"
    NOT_EXISTS = "NOT EXISTS"
    CONDITIONAL = "CONDITIONAL"


class BundleKind(enum.Enum):
    SO3 = "SO3"
    O2 = "O2"


@dataclass(frozen=True)
class AuxBundleClass:
    kind: BundleKind
    w1E: Vec
    w2E: Vec

    def __post_init__(self):
        if self.kind is BundleKind.SO3 and any(self.w1E):
            raise InputError("an SO(3) bundle has w1 = 0")


@dataclass(frozen=True)
class CohomologyContext:
    p: int
    q: int
    h1_rank: int
    h2_rank: int
    cup: Mapping[tuple[int, int], Vec]
    w1M: Vec
    w1p: Vec
    w1m: Vec
    w2p: Vec
    w2m: Vec
    h1_names: tuple = ()
    h2_names: tuple = ()

    def __post_init__(self):
        if self.p < 0 or self.q < 0 or self.p + self.q < 1:
            raise InputError("need p, q >= 0 and p + q >= 1")
        if self.h1_rank < 0 or self.h2_rank < 0:
            raise InputError("ranks must be nonnegative")
        for (i, j), v in self.cup.items():
            if not (0 <= i < self.h1_rank and 0 <= j < self.h1_rank):
                raise InputError(f"cup index ({i},{j}) out of range")
            if self.cup.get((j, i)) != v:
                raise InputError(f"cup table is not symmetric at ({i},{j})")
            if _vec(v, self.h2_rank, f"cup({i},{j})") != v:
                raise InputError(f"cup({i},{j}) must be a tuple of bits")
        for name in ("w1M", "w1p", "w1m"):
            _vec(getattr(self, name), self.h1_rank, name)
        for name in ("w2p", "w2m"):
            _vec(getattr(self, name), self.h2_rank, name)
        if vadd(self.w1p, self.w1m) != self.w1M:
            raise InputError("w1M must equal w1p + w1m")
        # a bundle of rank 0 has no classes, one of rank 1 has no w2
        for rank, w1, w2, label in ((self.p, self.w1p, self.w2p, "positive"), (self.q, self.w1m, self.w2m, "negative")):
            if rank == 0 and any(w1):
                raise InputError(f"the {label} bundle has rank 0, so its w1 must vanish")
            if rank <= 1 and any(w2):
                raise InputError(f"the {label} bundle has rank {rank}, so its w2 must vanish")
        if not self.h1_names:
            object.__setattr__(self, "h1_names", tuple(_default_h1_names(self.h1_rank)))
        if not self.h2_names:
            object.__setattr__(self, "h2_names", tuple(_default_h2_names(self)))
        if len(self.h1_names) != self.h1_rank or len(self.h2_names) != self.h2_rank:
            raise InputError("names must match the ranks")

    @property
    def d(self) -> int:
        return self.p + self.q

    @property
    def sig(self) -> Signature:
        return Signature(self.p, self.q)

    def zero1(self) -> Vec:
        return (0,) * self.h1_rank

    def zero2(self) -> Vec:
        return (0,) * self.h2_rank

    def h1(self, bits) -> Vec:
        return _vec(bits, self.h1_rank, "H^1 class")

    def h2(self, bits) -> Vec:
        return _vec(bits, self.h2_rank, "H^2 class")

    def format1(self, v: Vec) -> str:
        return _format(v, self.h1_names)

    def format2(self, v: Vec) -> str:
        return _format(v, self.h2_names)

    def flipped(self) -> "CohomologyContext":
        """The same manifold with the metric negated."""
        return replace(self, p=self.q, q=self.p, w1p=self.w1m, w1m=self.w1p, w2p=self.w2m, w2m=self.w2p)


def _default_h1_names(rank: int) -> list[str]:
    letters = string.ascii_lowercase
    return [letters[i] if i < 26 else f"a{i}" for i in range(rank)]


def _default_h2_names(ctx: CohomologyContext) -> list[str]:
    names: list[str | None] = [None] * ctx.h2_rank
    h1 = ctx.h1_names or _default_h1_names(ctx.h1_rank)
    for i in range(ctx.h1_rank):
        for j in range(i, ctx.h1_rank):
            v = ctx.cup.get((i, j))
            if v is None or sum(v) != 1:
                continue
            k = v.index(1)
            if names[k] is None:
                names[k] = f"{h1[i]}^2" if i == j else f"{h1[i]}{h1[j]}"
    return [n if n is not None else f"x{k + 1}" for k, n in enumerate(names)]


def _format(v: Vec, names: Sequence[str]) -> str:
    parts = [names[i] for i, b in enumerate(v) if b]
    return " + ".join(parts) if parts else "0"


def cup_product(ctx: CohomologyContext, a: Vec, b: Vec) -> Vec:
    a = ctx.h1(a)
    b = ctx.h1(b)
    out = ctx.zero2()
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            if bj:
                out = vadd(out, ctx.cup.get((i, j), ctx.zero2()))
    return out


# ------------------------------------------------------------------ verdicts


@dataclass(frozen=True)
class ObstructionVerdict:
    structure: str
    exists: Existence
    obstruction_value: Vec | None = None
    w1_obstruction: Vec | None = None
    required_classes: tuple = ()
    matched: AuxBundleClass | None = None
    note: str = ""
    context: CohomologyContext | None = field(default=None, compare=False, repr=False)

    def summary(self, label: str | None = None) -> str:
        ctx = self.context
        head = f"{label or self.structure}: {self.exists.value}"
        bits = []
        if self.w1_obstruction is not None and any(self.w1_obstruction):
            bits.append(f"w1(M) = {ctx.format1(self.w1_obstruction)}")
        elif self.obstruction_value is not None and self.exists is not Existence.EXISTS:
            prefix = f"{self.structure} obstruction" if label else "obstruction"
            bits.append(f"{prefix} = {ctx.format2(self.obstruction_value)}")
        for req in self.required_classes:
            if self.exists is Existence.CONDITIONAL or self.exists is Existence.NOT_EXISTS:
                bits.append(
                    f"requires {req.kind.value} bundle E with w1(E) = {ctx.format1(req.w1E)}, w2(E) = {ctx.format2(req.w2E)}"
                )
        if self.note and not label:
            bits.append(self.note)
        return head + (f" ({'; '.join(bits)})" if bits else "")

    def to_json(self) -> dict:
        ctx = self.context
        out: dict[str, Any] = {"structure": self.structure, "exists": self.exists.value}
        if self.obstruction_value is not None:
            out["obstruction"] = list(self.obstruction_value)
            out["obstruction_text"] = ctx.format2(self.obstruction_value)
        if self.w1_obstruction is not None:
            out["w1_obstruction"] = list(self.w1_obstruction)
        if self.required_classes:
            out["required"] = [
                {"kind": r.kind.value, "w1E": list(r.w1E), "w2E": list(r.w2E)} for r in self.required_classes
            ]
        if self.matched is not None:
            out["matched_candidate"] = {"kind": self.matched.kind.value, "w1E": list(self.matched.w1E), "w2E": list(self.matched.w2E)}
        if self.note:
            out["note"] = self.note
        return out


def _plain(structure: str, ctx: CohomologyContext, value: Vec, w1: Vec | None = None, note: str = "") -> ObstructionVerdict:
    ok = is_zero(value) and (w1 is None or is_zero(w1))
    return ObstructionVerdict(structure, Existence.EXISTS if ok else Existence.NOT_EXISTS, value, w1, note=note, context=ctx)


def _check_candidates(candidates: Sequence[AuxBundleClass], kind: BundleKind) -> None:
    for c in candidates:
        if c.kind is not kind:
            raise ContractError(f"candidate bundles must be of kind {kind.value}")


def _existential(
    structure: str,
    ctx: CohomologyContext,
    required: AuxBundleClass,
    candidates: Sequence[AuxBundleClass],
    value: Vec | None = None,
) -> ObstructionVerdict:
    match = next((c for c in candidates if c.w1E == required.w1E and c.w2E == required.w2E), None)
    if match is not None:
        state = Existence.EXISTS
        note = ""
    elif not candidates:
        state = Existence.CONDITIONAL
        note = "no candidate bundles supplied"
    else:
        state = Existence.NOT_EXISTS
        note = "no supplied candidate matches"
    return ObstructionVerdict(structure, state, value, None, (required,), match, note, ctx)


def spin_obstruction(ctx: CohomologyContext) -> ObstructionVerdict:
    return _plain("Spin", ctx, vadd(ctx.w2p, ctx.w2m), ctx.w1M)


def _sigma_w1(ctx: CohomologyContext) -> Vec:
    sigma = classify(ctx.sig).volume_square
    return ctx.w1p if sigma == 1 else ctx.w1m


def _pin_class(ctx: CohomologyContext) -> Vec:
    w = _sigma_w1(ctx)
    return vadd(ctx.w2p, ctx.w2m, cup_product(ctx, w, w), cup_product(ctx, ctx.w1m, ctx.w1p))


def _require_even(ctx: CohomologyContext, what: str) -> None:
    if ctx.d % 2:
        raise ContractError(f"{what} is defined here only for even dimension; use spin or spino")


def _twisted_partner(ctx: CohomologyContext) -> CohomologyContext:
    """(M, -sigma g) as a context."""
    return ctx.flipped() if classify(ctx.sig).volume_square == 1 else ctx


def _metric_label(ctx: CohomologyContext) -> str:
    return "-g" if classify(ctx.sig).volume_square == 1 else "g"


def pin_untwisted_obstruction(ctx: CohomologyContext) -> ObstructionVerdict:
    _require_even(ctx, "untwisted Pin")
    note = f"equivalently a twisted Pin structure on (M, {_metric_label(ctx)})"
    return _plain("untwisted Pin", ctx, _pin_class(ctx), note=note)


def pin_twisted_obstruction(ctx: CohomologyContext) -> ObstructionVerdict:
    _require_even(ctx, "twisted Pin")
    partner = _twisted_partner(ctx)
    note = f"evaluated as an untwisted Pin structure on (M, {_metric_label(ctx)})"
    return replace(_plain("twisted Pin", ctx, _pin_class(partner), note=note), context=ctx)


def spinq_obstruction(ctx: CohomologyContext, candidates: Sequence[AuxBundleClass] = ()) -> ObstructionVerdict:
    _check_candidates(candidates, BundleKind.SO3)
    if any(ctx.w1M):
        return ObstructionVerdict("Spin^q", Existence.NOT_EXISTS, None, ctx.w1M, context=ctx)
    required = AuxBundleClass(BundleKind.SO3, ctx.zero1(), vadd(ctx.w2p, ctx.w2m))
    return _existential("Spin^q", ctx, required, candidates)


def pinq_untwisted_obstruction(ctx: CohomologyContext, candidates: Sequence[AuxBundleClass] = ()) -> ObstructionVerdict:
    _require_even(ctx, "untwisted Pin^q")
    _check_candidates(candidates, BundleKind.SO3)
    required = AuxBundleClass(BundleKind.SO3, ctx.zero1(), _pin_class(ctx))
    return _existential("untwisted Pin^q", ctx, required, candidates)


def pinq_twisted_obstruction(ctx: CohomologyContext, candidates: Sequence[AuxBundleClass] = ()) -> ObstructionVerdict:
    _require_even(ctx, "twisted Pin^q")
    _check_candidates(candidates, BundleKind.SO3)
    required = AuxBundleClass(BundleKind.SO3, ctx.zero1(), _pin_class(_twisted_partner(ctx)))
    return _existential("twisted Pin^q", ctx, required, candidates)


def spino_coefficient(p: int, q: int) -> int:
    """Coefficient of w1(E)^2 in the Spin^o condition, reduced mod 2."""
    rec = classify(Signature(p, q))
    if not rec.is_complex:
        raise ContractError("Spin^o conditions apply only when p - q = 3 or 7 mod 8")
    delta = 1 if rec.alpha == -1 else 0
    return (delta + p * (p + 1) // 2 + q * (q + 1) // 2) % 2


def spino_obstruction(ctx: CohomologyContext, candidates: Sequence[AuxBundleClass] = ()) -> ObstructionVerdict:
    c = spino_coefficient(ctx.p, ctx.q)
    _check_candidates(candidates, BundleKind.O2)
    w1E = ctx.w1M
    twist = vadd(vscale(ctx.p, ctx.w1p), vscale(ctx.q, ctx.w1m))
    w2E = vadd(ctx.w2p, ctx.w2m, cup_product(ctx, w1E, twist), vscale(c, cup_product(ctx, w1E, w1E)))
    return _existential("Spin^o", ctx, AuxBundleClass(BundleKind.O2, w1E, w2E), candidates)


def spino_condition_holds(ctx: CohomologyContext, cand: AuxBundleClass) -> bool:
    """Direct evaluation of both Spin^o conditions for one O(2) bundle."""
    c = spino_coefficient(ctx.p, ctx.q)
    if cand.w1E != ctx.w1M:
        return False
    twist = vadd(vscale(ctx.p, ctx.w1p), vscale(ctx.q, ctx.w1m))
    rhs = vadd(cand.w2E, cup_product(ctx, cand.w1E, twist), vscale(c, cup_product(ctx, cand.w1E, cand.w1E)))
    return vadd(ctx.w2p, ctx.w2m) == rhs


_DISPATCH = {1: "spin", 3: "spino", 7: "spino", 5: "spinq", 0: "pin", 2: "pin", 4: "pinq", 6: "pinq"}


def structure_for_class(pq_mod8: int) -> str:
    return _DISPATCH[pq_mod8]


def evaluate(ctx: CohomologyContext, structure: str, candidates: Sequence[AuxBundleClass] = ()) -> ObstructionVerdict:
    if structure == "auto":
        return elementary_pinor_exists(ctx, candidates)
    so3 = [c for c in candidates if c.kind is BundleKind.SO3]
    o2 = [c for c in candidates if c.kind is BundleKind.O2]
    if structure == "spin":
        return spin_obstruction(ctx)
    if structure == "pin":
        return pin_untwisted_obstruction(ctx)
    if structure == "pin_twisted":
        return pin_twisted_obstruction(ctx)
    if structure == "pinq":
        return pinq_untwisted_obstruction(ctx, so3)
    if structure == "pinq_twisted":
        return pinq_twisted_obstruction(ctx, so3)
    if structure == "spinq":
        return spinq_obstruction(ctx, so3)
    if structure == "spino":
        return spino_obstruction(ctx, o2)
    raise InputError(f"unknown structure {structure!r}")


def elementary_pinor_exists(ctx: CohomologyContext, candidates: Sequence[AuxBundleClass] = ()) -> ObstructionVerdict:
    r = (ctx.p - ctx.q) % 8
    return evaluate(ctx, structure_for_class(r), candidates)


def w2_consistency(ctx: CohomologyContext, w2M: Vec) -> bool:
    w2M = ctx.h2(w2M)
    return w2M == vadd(ctx.w2p, ctx.w2m, cup_product(ctx, ctx.w1p, ctx.w1m))


# ---------------------------------------------------------------------- JSON


def _bits(obj: Any, rank: int, what: str) -> Vec:
    if obj is None:
        return (0,) * rank
    if not isinstance(obj, list):
        raise InputError(f"{what} must be a list of bits")
    return _vec(obj, rank, what)


def _int_field(data: Mapping, key: str) -> int:
    val = data.get(key)
    if not isinstance(val, int) or isinstance(val, bool):
        raise InputError(f"field {key!r} must be an integer")
    return val


def context_from_json(data: Mapping) -> tuple[CohomologyContext, list[AuxBundleClass]]:
    if not isinstance(data, Mapping):
        raise InputError("context must be a JSON object")
    p, q = _int_field(data, "p"), _int_field(data, "q")
    r1, r2 = _int_field(data, "h1_rank"), _int_field(data, "h2_rank")
    cup: dict[tuple[int, int], Vec] = {}
    entries = data.get("cup", [])
    if not isinstance(entries, list):
        raise InputError("cup must be a list of [i, j, bits] entries")
    for ent in entries:
        if not (isinstance(ent, list) and len(ent) == 3):
            raise InputError("cup entries must look like [i, j, bits]")
        i, j, bits = ent
        if not isinstance(i, int) or not isinstance(j, int):
            raise InputError("cup indices must be integers")
        v = _bits(bits, r2, f"cup({i},{j})")
        for key in ((i, j), (j, i)):
            if key in cup and cup[key] != v:
                raise InputError(f"cup table is not symmetric at ({i},{j})")
            cup[key] = v
    classes = data.get("classes", {})
    if not isinstance(classes, Mapping):
        raise InputError("classes must be an object")
    w1p = _bits(classes.get("w1p"), r1, "w1p")
    w1m = _bits(classes.get("w1m"), r1, "w1m")
    w1M = _bits(classes["w1M"], r1, "w1M") if "w1M" in classes else vadd(w1p, w1m)
    names = data.get("names", {})
    ctx = CohomologyContext(
        p,
        q,
        r1,
        r2,
        cup,
        w1M,
        w1p,
        w1m,
        _bits(classes.get("w2p"), r2, "w2p"),
        _bits(classes.get("w2m"), r2, "w2m"),
        tuple(names.get("h1", ())),
        tuple(names.get("h2", ())),
    )
    cands = []
    for c in data.get("candidates", []):
        try:
            kind = BundleKind(c["kind"])
        except (KeyError, ValueError, TypeError) as exc:
            raise InputError("candidate kind must be SO3 or O2") from exc
        cands.append(AuxBundleClass(kind, _bits(c.get("w1E"), r1, "w1E"), _bits(c.get("w2E"), r2, "w2E")))
    return ctx, cands


def load_context(path: str) -> tuple[CohomologyContext, list[AuxBundleClass]]:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {path}: {exc.msg}") from exc
    return context_from_json(data)
