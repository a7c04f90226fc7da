"""Certified polynomial records for mod-ell Galois representations.

A record packages a weight, a prime ell, and a monic integer polynomial
whose splitting field realizes the mod-ell representation attached to the
level-one cusp form of that weight: kind "projective" means the degree
ell+1 polynomial cutting out the fixed field of the projectivized
representation (roots <-> points of P^1(F_ell)), kind "full" the degree
ell^2-1 polynomial whose roots correspond to the nonzero vectors of the
representation space itself.

Coefficient order is constant term first throughout, matching
IntPolynomial.  Record files use a small line-oriented text format::

    GALREP v1
    k=<weight> ell=<ell> deg=<d> kind=<projective|full> source=<free text>
    <c0>
    <c1>
    ...
    <cd>

Four built-in projective records are shipped: (k, ell) = (12, 31),
(16, 29), (20, 31) and (22, 31).
"""

import os
import re
from dataclasses import dataclass

from .errors import InvalidInput
from .poly import IntPolynomial

KINDS = ("projective", "full")


@dataclass(frozen=True)
class GaloisPolyRecord:
    """A (weight, ell, polynomial) certificate, the unit of verification."""

    weight: int
    ell: int
    kind: str
    coeffs: tuple
    source: str = ""

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidInput("kind must be one of %s" % (KINDS,))
        if self.ell < 3:
            raise InvalidInput("ell must be an odd prime")
        if self.weight < 2 or self.weight % 2:
            raise InvalidInput("weight must be an even integer >= 2")
        coeffs = tuple(int(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if not coeffs or coeffs[-1] != 1:
            raise InvalidInput("record polynomial must be monic")
        deg = len(coeffs) - 1
        want = self.ell + 1 if self.kind == "projective" else self.ell ** 2 - 1
        if deg != want:
            raise InvalidInput(
                "kind %r at ell=%d requires degree %d, got %d"
                % (self.kind, self.ell, want, deg)
            )

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def polynomial(self):
        return IntPolynomial(self.coeffs)

    @property
    def record_id(self):
        base = "k%dl%d" % (self.weight, self.ell)
        return base if self.kind == "projective" else base + "full"


_P12_31 = (
    -1261963, 20505628, -201167463, 521018178, -1492309000, 2380573824, -4062352344,
    4607500922, -5462615927, 4554764528, -4120267319, 2531110165, -1820871490, 751001257,
    -448568729, 66421685, -40645681, -28954961, 4369791, -7527575, 747906, -646195, 127410,
    24707, -5921, 9300, -2480, 713, -155, 0, 0, -4, 1
)

_P16_29 = (
    -261910751, 2363203645, 2573924261, -2555610007, 4054490087, -1463296732, -7068248851,
    17713731976, -27316581262, 35730188833, -40888329774, 40034881756, -33394267804,
    23992472995, -15020495335, 8240756348, -3929042061, 1602112888, -545068137, 149069425,
    -30157709, 3161522, 599981, -437871, 142158, -33002, 6003, -899, 116, -13, 1
)

_P20_31 = (
    178725601175511, -1113936554991727, 3269911760551427, -5959749341609879, 7460752526582377,
    -6661579151098950, 4206562171750919, -1714511602191278, 250865100757790, 197719989210108,
    -162450534558477, 54285321863574, -3257558862543, -5273524311353, 2480836111912,
    -406418167694, -83774789980, 64357190741, -14790203106, -278789479, 1225662500,
    -344750256, 12517459, 17190864, -4280108, 59489, 143499, -23560, -248, 558, -62, -4, 1
)

_P22_31 = (
    187532019539254309, -202960986205176103, -13833080015551423, 16902762581347117,
    61714590456038129, -9976638213111902, -24397472702475140, 294530833190147,
    7446294546204081, -171825071648506, -1135328992145553, -99789981007214, 146446287180279,
    15867354189588, -9952753525850, -1735983387875, 227525150938, 95827452774, 35629245810,
    -5281917640, -3865963779, 345367838, 205283395, -28562129, -4960682, 1523309, -46593,
    -44020, 5797, 651, -124, -3, 1
)


def builtin_records():
    """Return the shipped records as an id -> record dict (fresh copy)."""
    recs = (
        GaloisPolyRecord(12, 31, "projective", _P12_31, source="builtin"),
        GaloisPolyRecord(16, 29, "projective", _P16_29, source="builtin"),
        GaloisPolyRecord(20, 31, "projective", _P20_31, source="builtin"),
        GaloisPolyRecord(22, 31, "projective", _P22_31, source="builtin"),
    )
    return {r.record_id: r for r in recs}


def get_record(record_id):
    recs = builtin_records()
    try:
        return recs[record_id]
    except KeyError:
        raise InvalidInput(
            "unknown record id %r (available: %s)"
            % (record_id, ", ".join(sorted(recs)))
        ) from None


_META_RE = re.compile(
    r"^k=(\d+) ell=(\d+) deg=(\d+) kind=(projective|full) source=(.*)$"
)


def save_record(record, path):
    """Write a record in GALREP v1 text format (atomic replace)."""
    lines = ["GALREP v1",
             "k=%d ell=%d deg=%d kind=%s source=%s"
             % (record.weight, record.ell, record.degree, record.kind,
                record.source)]
    lines.extend(str(c) for c in record.coeffs)
    tmp = "%s.tmp.%d" % (path, os.getpid())
    with open(tmp, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    os.replace(tmp, path)


def load_record(path):
    """Read a GALREP v1 record file; raises InvalidInput on malformed data."""
    with open(path) as fh:
        lines = [ln.rstrip("\n") for ln in fh]
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines or lines[0].strip() != "GALREP v1":
        raise InvalidInput("%s: missing 'GALREP v1' header" % path)
    if len(lines) < 2:
        raise InvalidInput("%s: missing metadata line" % path)
    m = _META_RE.match(lines[1].strip())
    if not m:
        raise InvalidInput("%s: malformed metadata line %r" % (path, lines[1]))
    k, ell, deg = int(m.group(1)), int(m.group(2)), int(m.group(3))
    kind, source = m.group(4), m.group(5)
    body = lines[2:]
    if len(body) != deg + 1:
        raise InvalidInput(
            "%s: expected %d coefficient lines, found %d"
            % (path, deg + 1, len(body))
        )
    try:
        coeffs = tuple(int(ln.strip()) for ln in body)
    except ValueError as exc:
        raise InvalidInput("%s: bad coefficient line (%s)" % (path, exc)) from None
    return GaloisPolyRecord(k, ell, kind, coeffs, source=source)


def load_records_dir(dirpath):
    """Load every *.galrep file under dirpath into an id -> record dict."""
    recs = {}
    for name in sorted(os.listdir(dirpath)):
        if name.endswith(".galrep"):
            rec = load_record(os.path.join(dirpath, name))
            recs[rec.record_id] = rec
    return recs
