"""Generators of the truncated symmetric ideal I_{n,d} and their verification.

I_{n,d} is the intersection of (x_1^{d+1}, ..., x_n^{d+1}) with the symmetric
polynomials; it is spanned by the m_lambda with leading part at least d+1.
The generator families here are homogeneous, so every claim reduces to rank
and membership questions in single degrees, answered by exact elimination.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field as dc_field
from pathlib import Path
from typing import Iterable, Sequence

from .field import Field
from .linalg import EchelonBasis, GradedMatrix
from .msym import MSymPoly, basis_product, msym_pow
from .partition import Partition, enumerate_partitions

__all__ = [
    "GeneratorEntry",
    "GeneratorSpec",
    "Check",
    "VerificationReport",
    "theorem_generators",
    "conjecture_generators",
    "is_truncation_member",
    "graded_target_basis",
    "ideal_graded_span",
    "chain_ranks",
    "verify_theorem",
    "verify_conjecture",
    "default_degree_bound",
]

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class GeneratorEntry:
    i: int
    h: int
    partition: Partition
    degree: int
    retained: bool = True

    @property
    def subject(self) -> str:
        return f"m[{self.partition.power_form()}]"

    def poly(self, n: int, field: Field) -> MSymPoly:
        return MSymPoly.monomial(self.partition, n, field)


@dataclass(frozen=True)
class GeneratorSpec:
    """Generators m_{((d+h)^{p^i})}, 0 <= i <= t, 1 <= h <= q_i = floor(n / p^i)."""

    p: int
    n: int
    d: int
    entries: tuple[GeneratorEntry, ...]

    @property
    def t(self) -> int:
        return _top_level(self.p, self.n)

    def q(self, i: int) -> int:
        return self.n // _block_size(self.p, i)

    def r(self, i: int) -> int:
        return self.n % _block_size(self.p, i)

    def retained(self) -> list[GeneratorEntry]:
        return [e for e in self.entries if e.retained]

    def dropped(self) -> list[GeneratorEntry]:
        return [e for e in self.entries if not e.retained]

    def block(self, i: int) -> list[GeneratorEntry]:
        """Generators of J_(i)."""
        return [e for e in self.entries if e.i == i]

    def chain(self, i: int) -> list[GeneratorEntry]:
        """Generators of I_(i) = J_(0) + ... + J_(i)."""
        return [e for e in self.entries if e.i <= i]

    def max_degree(self) -> int:
        return max(e.degree for e in self.entries)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "d": self.d,
            "t": self.t,
            "entries": [
                {
                    "i": e.i,
                    "h": e.h,
                    "partition": list(e.partition),
                    "degree": e.degree,
                    "retained": e.retained,
                }
                for e in self.entries
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "GeneratorSpec":
        entries = tuple(
            GeneratorEntry(int(e["i"]), int(e["h"]), Partition(e["partition"]), int(e["degree"]), bool(e["retained"]))
            for e in obj["entries"]
        )
        return cls(int(obj["p"]), int(obj["n"]), int(obj["d"]), entries)

    def render_text(self) -> str:
        lines = [f"# p={self.p} n={self.n} d={self.d} t={self.t} generators={len(self.entries)}"]
        for e in self.entries:
            mark = "" if e.retained else "  (dropped)"
            lines.append(f"i={e.i} h={e.h} degree={e.degree} {e.subject}{mark}")
        return "\n".join(lines)


def _block_size(p: int, i: int) -> int:
    return 1 if p == 0 else p**i


def _top_level(p: int, n: int) -> int:
    if p == 0:
        return 0
    t = 0
    while p ** (t + 1) <= n:
        t += 1
    return t


def _validate(p: int, n: int, d: int) -> None:
    Field(p)
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    if d < 0:
        raise ValueError(f"d must be nonnegative, got {d}")


def theorem_generators(p: int, n: int, d: int) -> GeneratorSpec:
    """The generating set J_(0) + ... + J_(t) of I_{n,d} in characteristic ``p``.

    For p = 0 (or n < p) this is just m_(d+1), ..., m_(d+n).
    """
    _validate(p, n, d)
    entries = []
    for i in range(_top_level(p, n) + 1):
        size = _block_size(p, i)
        for h in range(1, n // size + 1):
            lam = Partition.power(d + h, size)
            entries.append(GeneratorEntry(i, h, lam, (d + h) * size))
    return GeneratorSpec(p, n, d, tuple(entries))


def _frobenius_source(p: int, d: int, h: int) -> int | None:
    # j in 1..h with d + h == p * (d + j), if any
    for j in range(1, h + 1):
        if d + h == p * (d + j):
            return j
    return None


def conjecture_generators(p: int, n: int, d: int) -> GeneratorSpec:
    """Theorem generators with the p-th powers m_{((p(d+j))^{p^i})} marked as dropped."""
    if p == 0:
        raise ValueError("the minimal-generator conjecture concerns positive characteristic only")
    spec = theorem_generators(p, n, d)
    entries = tuple(
        GeneratorEntry(e.i, e.h, e.partition, e.degree, _frobenius_source(p, d, e.h) is None)
        for e in spec.entries
    )
    return GeneratorSpec(p, n, d, entries)


def is_truncation_member(f: MSymPoly, d: int) -> bool:
    return all(lam.lp >= d + 1 for lam in f.support)


def graded_target_basis(n: int, d: int, D: int) -> list[Partition]:
    """Degree-D basis of I_{n,d}: partitions of D, length <= n, leading part >= d+1."""
    return enumerate_partitions(D, n, min_lp=d + 1)


def _homogeneous_degree(g: MSymPoly) -> int:
    if not g.is_homogeneous():
        raise ValueError(f"generator is not homogeneous: {g}")
    return g.degree()


class _SpanEngine:
    """Builds the sparse rows m_mu * g of a graded piece, one degree at a time."""

    def __init__(self, n: int, field: Field):
        self.n = n
        self.field = field
        self._columns: dict[int, tuple[list[Partition], dict[Partition, int]]] = {}

    def columns(self, D: int) -> tuple[list[Partition], dict[Partition, int]]:
        if D not in self._columns:
            basis = enumerate_partitions(D, self.n)
            self._columns[D] = (basis, {lam: k for k, lam in enumerate(basis)})
        return self._columns[D]

    def rows(self, g: MSymPoly, D: int, label: str = "g") -> Iterable[tuple[str, dict]]:
        e = _homogeneous_degree(g)
        if e < 0 or e > D:
            return
        _, index = self.columns(D)
        p = self.field.characteristic
        for mu in enumerate_partitions(D - e, self.n):
            row: dict[int, object] = {}
            for lam, a in g.items():
                for nu, c in basis_product(mu, lam, self.n):
                    k = index[nu]
                    row[k] = row.get(k, 0) + a * c
            if p:
                row = {k: v % p for k, v in row.items() if v % p}
            else:
                row = {k: v for k, v in row.items() if v}
            yield (f"m[{mu.power_form()}]*{label}", row)


def ideal_graded_span(G: Sequence[MSymPoly], n: int, D: int, field: Field) -> GradedMatrix:
    """Degree-D piece of the ideal generated by homogeneous ``G``.

    Rows are the products m_mu * g over generators g and partitions mu of
    D - deg g with at most n parts; columns are all partitions of D with at most
    n parts.
    """
    engine = _SpanEngine(n, field)
    basis, _ = engine.columns(D)
    labels, rows = [], []
    for idx, g in enumerate(G):
        for label, row in engine.rows(g, D, label=_poly_label(g, idx)):
            labels.append(label)
            rows.append(row)
    return GradedMatrix(D, n, tuple(basis), tuple(rows), field, tuple(labels))


def _poly_label(g: MSymPoly, idx: int) -> str:
    if len(g) == 1:
        return f"m[{g.support[0].power_form()}]"
    return f"g{idx}"


def chain_ranks(p: int, n: int, d: int, D: int) -> list[int]:
    """Rank at degree D of each I_(0) subset ... subset I_(t)."""
    spec = theorem_generators(p, n, d)
    field = Field(p)
    engine = _SpanEngine(n, field)
    out = []
    eb = EchelonBasis(field)
    for i in range(spec.t + 1):
        for e in spec.block(i):
            for _, row in engine.rows(e.poly(n, field), D):
                eb.add(row)
        out.append(eb.rank)
    return out


@dataclass
class Check:
    kind: str
    subject: str
    degree: int
    outcome: str
    rank_expected: int | None
    rank_found: int | None
    certificate: list[dict] | None = None

    @property
    def passed(self) -> bool:
        return self.outcome == "pass"

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "subject": self.subject,
            "degree": self.degree,
            "outcome": self.outcome,
            "rank_expected": self.rank_expected,
            "rank_found": self.rank_found,
        }
        if self.certificate is not None:
            out["certificate"] = self.certificate
        return out


@dataclass
class VerificationReport:
    p: int
    n: int
    d: int
    checks: list[Check] = dc_field(default_factory=list)

    @property
    def overall(self) -> str:
        return "pass" if all(c.passed for c in self.checks) else "fail"

    @property
    def passed(self) -> bool:
        return self.overall == "pass"

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "d": self.d,
            "checks": [c.to_json() for c in self.checks],
            "overall": self.overall,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    @classmethod
    def from_json(cls, obj: dict) -> "VerificationReport":
        checks = [
            Check(
                c["kind"], c["subject"], int(c["degree"]), c["outcome"],
                c["rank_expected"], c["rank_found"], c.get("certificate"),
            )
            for c in obj["checks"]
        ]
        report = cls(int(obj["p"]), int(obj["n"]), int(obj["d"]), checks)
        if "overall" in obj and obj["overall"] != report.overall:
            raise ValueError("overall field disagrees with the checks")
        return report

    def render_text(self) -> str:
        lines = [f"# p={self.p} n={self.n} d={self.d} checks={len(self.checks)}"]
        for c in self.checks:
            lines.append(
                f"{c.outcome:4} {c.kind:10} degree={c.degree:<3} {c.subject} "
                f"rank_expected={_fmt_opt(c.rank_expected)} rank_found={_fmt_opt(c.rank_found)}"
            )
            if c.certificate is not None:
                combo = " + ".join(f"{t['coeff']}*({t['row']})" for t in c.certificate)
                lines.append(f"     certificate: {c.subject} = {combo}")
        lines.append(f"overall: {self.overall}")
        return "\n".join(lines)


def _fmt_opt(x) -> str:
    return "null" if x is None else str(x)


def default_degree_bound(spec: GeneratorSpec) -> int:
    return spec.max_degree() + spec.d + 1


def _dump(dump_dir, name: str, D: int, n: int, field: Field, engine: _SpanEngine, labelled_rows) -> None:
    if dump_dir is None:
        return
    path = Path(dump_dir)
    path.mkdir(parents=True, exist_ok=True)
    basis, _ = engine.columns(D)
    labels = tuple(lbl for lbl, _ in labelled_rows)
    rows = tuple(r for _, r in labelled_rows)
    GradedMatrix(D, n, tuple(basis), rows, field, labels).to_csv(path / f"{name}.csv")


def verify_theorem(p: int, n: int, d: int, degree_bound: int | None = None, dump_dir=None) -> VerificationReport:
    """Compare, degree by degree, the span of the theorem generators with I_{n,d}.

    A degree passes when every product m_mu * g lies in I_{n,d} and the rank of
    the products equals the number of partitions indexing I_{n,d} there.
    """
    spec = theorem_generators(p, n, d)
    field = Field(p)
    Dmax = default_degree_bound(spec) if degree_bound is None else degree_bound
    engine = _SpanEngine(n, field)
    gens = [(e.subject, e.poly(n, field)) for e in spec.entries]
    report = VerificationReport(p, n, d)
    for D in range(Dmax + 1):
        basis, _ = engine.columns(D)
        expected = len(graded_target_basis(n, d, D))
        eb = EchelonBasis(field)
        inside = True
        labelled = []
        for subject, g in gens:
            for label, row in engine.rows(g, D, label=subject):
                if any(basis[k].lp <= d for k in row):
                    inside = False
                eb.add(row)
                if dump_dir is not None:
                    labelled.append((label, row))
        _dump(dump_dir, f"theorem_p{p}_n{n}_d{d}_D{D}", D, n, field, engine, labelled)
        ok = inside and eb.rank == expected
        report.checks.append(Check("rank", "theorem_generators", D, "pass" if ok else "fail", expected, eb.rank))
        log.debug("verify_theorem p=%d n=%d d=%d D=%d rank=%d/%d", p, n, d, D, eb.rank, expected)
    return report


def verify_conjecture(p: int, n: int, d: int, dump_dir=None) -> VerificationReport:
    """Check that the conjectured set generates I_{n,d} and that none of it is redundant.

    Generation: each dropped generator lies in the retained set's ideal at its
    own degree, and equals the p-th power it was dropped for. Minimality: no
    retained generator lies in the ideal of the others at its own degree.
    """
    if p == 0:
        raise ValueError("not applicable: the minimal-generator conjecture needs p > 0")
    spec = conjecture_generators(p, n, d)
    field = Field(p)
    engine = _SpanEngine(n, field)
    retained = spec.retained()
    report = VerificationReport(p, n, d)
    for D in sorted({e.degree for e in spec.entries}):
        lower = []
        for e in retained:
            if e.degree < D:
                lower.extend(engine.rows(e.poly(n, field), D, label=e.subject))
        base = EchelonBasis(field)
        for _, row in lower:
            base.add(row)
        same = [e for e in retained if e.degree == D]
        _, index = engine.columns(D)
        for e in spec.entries:
            if e.degree != D:
                continue
            others = [o for o in same if o is not e]
            eb = base.copy()
            for o in others:
                eb.add({index[o.partition]: 1})
            target = {index[e.partition]: 1}
            contained = eb.contains(target)
            before = eb.rank
            found = before if contained else before + 1
            if dump_dir is not None:
                rows = lower + [(o.subject, {index[o.partition]: 1}) for o in others]
                _dump(dump_dir, f"conjecture_p{p}_n{n}_d{d}_{e.partition.comma_form()}", D, n, field, engine, rows)
            if e.retained:
                check = Check("minimality", e.subject, D, "fail" if contained else "pass", before + 1, found)
                if contained:
                    check.certificate = _certificate(lower, others, e, index, field)
                    log.warning("minimality fails for %s at p=%d n=%d d=%d", e.subject, p, n, d)
            else:
                ok = contained and _frobenius_ok(e, p, n, d, field)
                check = Check("generation", e.subject, D, "pass" if ok else "fail", before, found)
            report.checks.append(check)
    return report


def _frobenius_ok(e: GeneratorEntry, p: int, n: int, d: int, field: Field) -> bool:
    j = _frobenius_source(p, d, e.h)
    if j is None:
        return False
    root = MSymPoly.monomial(Partition.power(d + j, len(e.partition)), n, field)
    return msym_pow(root, p) == e.poly(n, field)


def _certificate(lower, others, e: GeneratorEntry, index, field: Field) -> list[dict]:
    labelled = list(lower) + [(o.subject, {index[o.partition]: 1}) for o in others]
    eb = EchelonBasis(field, track=True)
    for _, row in labelled:
        eb.add(row)
    weights = eb.certificate({index[e.partition]: 1}) or {}
    return [{"row": labelled[i][0], "coeff": field.format(c)} for i, c in weights.items()]
