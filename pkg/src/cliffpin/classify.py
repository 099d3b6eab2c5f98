"""Mod-8 classification of Cl(p,q) and its named sign constants."""

from __future__ import annotations

import csv
import enum
import io
from dataclasses import dataclass

from .blades import Signature, eps_d, signatures_up_to, volume_sign
from .errors import InputError


class CaseType(enum.Enum):
    NORMAL_SIMPLE = "NormalSimple"
    COMPLEX = "Complex"
    QUATERNIONIC_SIMPLE = "QuaternionicSimple"
    NORMAL_NON_SIMPLE = "NormalNonSimple"
    QUATERNIONIC_NON_SIMPLE = "QuaternionicNonSimple"


_CASE_BY_CLASS = {
    0: CaseType.NORMAL_SIMPLE,
    2: CaseType.NORMAL_SIMPLE,
    3: CaseType.COMPLEX,
    7: CaseType.COMPLEX,
    4: CaseType.QUATERNIONIC_SIMPLE,
    6: CaseType.QUATERNIONIC_SIMPLE,
    1: CaseType.NORMAL_NON_SIMPLE,
    5: CaseType.QUATERNIONIC_NON_SIMPLE,
}

_SCHUR = {
    CaseType.NORMAL_SIMPLE: "R",
    CaseType.COMPLEX: "C",
    CaseType.QUATERNIONIC_SIMPLE: "H",
    CaseType.NORMAL_NON_SIMPLE: "R",
    CaseType.QUATERNIONIC_NON_SIMPLE: "H",
}

_EXTENDED_PIN = {
    CaseType.NORMAL_SIMPLE: "Pin",
    CaseType.COMPLEX: "Spin^c",
    CaseType.QUATERNIONIC_SIMPLE: "Pin",
    CaseType.NORMAL_NON_SIMPLE: "Spin^h",
    CaseType.QUATERNIONIC_NON_SIMPLE: "Spin^h",
}

_CANONICAL_SPINOR = {
    CaseType.NORMAL_SIMPLE: "Pin",
    CaseType.COMPLEX: "Spin^o",
    CaseType.QUATERNIONIC_SIMPLE: "Pin^q",
    CaseType.NORMAL_NON_SIMPLE: "Spin",
    CaseType.QUATERNIONIC_NON_SIMPLE: "Spin^q",
}

# Reduced Lipschitz group of an irreducible representation; it is isomorphic
# to the canonical spinor group in every class.
_REDUCED_LIPSCHITZ = dict(_CANONICAL_SPINOR)

SCHUR_DIMENSION = {"R": 1, "C": 2, "H": 4}


@dataclass(frozen=True)
class ClassRecord:
    p: int
    q: int
    pq_mod8: int
    case_type: CaseType
    schur_tag: str
    simple: bool
    volume_square: int
    pseudocenter_tag: str
    extended_pin_name: str
    canonical_spinor_name: str
    reduced_lipschitz_name: str
    alpha: int | None
    beta: int
    eps_d: int
    eps_e: int

    @property
    def d(self) -> int:
        return self.p + self.q

    @property
    def schur_dim(self) -> int:
        return SCHUR_DIMENSION[self.schur_tag]

    @property
    def is_complex(self) -> bool:
        return self.case_type is CaseType.COMPLEX

    @property
    def is_quaternionic(self) -> bool:
        return self.schur_tag == "H"

    def csv_row(self) -> list[str]:
        return [
            str(self.p),
            str(self.q),
            str(self.d),
            str(self.pq_mod8),
            self.case_type.value,
            "true" if self.simple else "false",
            self.schur_tag,
            _sgn(self.volume_square),
            self.pseudocenter_tag,
            self.extended_pin_name,
            self.canonical_spinor_name,
            self.reduced_lipschitz_name,
        ]

    def one_line(self) -> str:
        fields = zip(CSV_COLUMNS, self.csv_row())
        return " ".join(f"{k}={v}" for k, v in fields)


CSV_COLUMNS = ["p", "q", "d", "pq_mod8", "type", "simple", "S", "nu_sq", "T", "Pin_e", "Lambda", "reduced_L"]


def _sgn(x: int) -> str:
    return "+1" if x > 0 else "-1"


def alpha_sign(pq_mod8: int) -> int | None:
    """The sign alpha_{p,q}; ``None`` in the non-simple classes."""
    if pq_mod8 in (0, 4):
        return 1
    if pq_mod8 in (2, 6):
        return -1
    if pq_mod8 == 3:
        return -1
    if pq_mod8 == 7:
        return 1
    return None


def classify(sig: Signature) -> ClassRecord:
    if not isinstance(sig, Signature):
        raise InputError("classify expects a Signature")
    r = (sig.p - sig.q) % 8
    case = _CASE_BY_CLASS[r]
    simple = r not in (1, 5)
    sigma = volume_sign(sig)
    ed = eps_d(sig.d)
    ee = ed if simple else -ed
    if r in (0, 2, 4, 6):
        beta = -1 if sig.p & 1 else 1
    elif r in (3, 7):
        beta = -sigma
    else:
        beta = sigma
    return ClassRecord(
        p=sig.p,
        q=sig.q,
        pq_mod8=r,
        case_type=case,
        schur_tag=_SCHUR[case],
        simple=simple,
        volume_square=sigma,
        pseudocenter_tag="D" if sigma == 1 else "C",
        extended_pin_name=_EXTENDED_PIN[case],
        canonical_spinor_name=_CANONICAL_SPINOR[case],
        reduced_lipschitz_name=_REDUCED_LIPSCHITZ[case],
        alpha=alpha_sign(r),
        beta=beta,
        eps_d=ed,
        eps_e=ee,
    )


def emit_tables(range_d: int) -> str:
    """CSV (header plus one row per signature with 1 <= d <= range_d)."""
    if not isinstance(range_d, int) or range_d < 1:
        raise InputError("range_d must be a positive integer")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for sig in signatures_up_to(range_d):
        writer.writerow(classify(sig).csv_row())
    return buf.getvalue()
