"""Materials file ingesting, unit conversion, and MEP reports.

File format (line-oriented, '#' comments, keys kebab-free lowercase):

    normalization = <free-form tag describing the N(eF) convention>

    name = Nb
    dos_fermi = 0.1304           # states/eV under the declared normalization
    debye_temperature = 275.0    # K  (or debye_energy = <eV>)
    tc_k = 9.25                  # K  (or gap_mev = <meV>, gap_ev = <eV>, lambda = <dimensionless>)
    lambda = 0.82

A block starts at each ``name =`` line; the ``normalization`` tag must
appear once, before the first block, and is recorded verbatim in outputs.
Unknown keys are rejected with the offending line reported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from importlib import resources

from .concurrence import mep
from .core import K_B_EV_PER_K, MaterialParams, dimensionless_numbers
from .errors import MaterialsFileError, MissingDataError

_BLOCK_KEYS = frozenset(
    {"dos_fermi", "debye_temperature", "debye_energy", "gap_mev", "gap_ev",
     "tc_k", "lambda"}
)


@dataclass(frozen=True)
class MaterialsTable:
    """Ordered, validated material entries plus the declared DOS normalization."""

    entries: tuple[MaterialParams, ...]
    normalization: str

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        names = [e.name for e in self.entries]
        if len(set(names)) != len(names):
            dupe = next(n for n in names if names.count(n) > 1)
            raise ValueError(f"duplicate material name {dupe!r}")

    def entry(self, name: str) -> MaterialParams:
        for e in self.entries:
            if e.name == name:
                return e
        raise MissingDataError(f"material {name!r} not found in table")


@dataclass(frozen=True)
class MepReportRow:
    """One material's report line."""

    name: str
    n1: float
    n2: float
    mep: float
    neg_log10_mep: float
    lambda_ep: float | None = None
    tc: float | None = None

    def __post_init__(self):
        if not 0.0 <= self.mep <= 1.0:
            raise ValueError("mep must lie in [0, 1]")
        if self.mep > 0 and abs(self.neg_log10_mep + math.log10(self.mep)) > 1e-12:
            raise ValueError("neg_log10_mep inconsistent with mep")


def _finish_block(fields, start_line, normalization):
    if normalization is None:
        raise MaterialsFileError(
            "a 'normalization' tag must precede the first material block",
            line=start_line,
        )
    if "dos_fermi" not in fields:
        raise MaterialsFileError(
            f"material block {fields.get('name', '?')!r} lacks dos_fermi",
            line=start_line,
        )
    has_temp = "debye_temperature" in fields
    has_energy = "debye_energy" in fields
    if has_temp == has_energy:
        raise MaterialsFileError(
            f"material block {fields.get('name', '?')!r} needs exactly one of "
            "debye_temperature or debye_energy",
            line=start_line,
        )
    if "gap_mev" in fields and "gap_ev" in fields:
        raise MaterialsFileError(
            f"material block {fields.get('name', '?')!r} gives both gap_mev and gap_ev",
            line=start_line,
        )
    debye = fields["debye_energy"] if has_energy else K_B_EV_PER_K * fields["debye_temperature"]
    gap = fields.get("gap_ev")
    if gap is None and "gap_mev" in fields:
        gap = fields["gap_mev"] * 1e-3
    try:
        return MaterialParams(
            name=fields["name"],
            dos_fermi=fields["dos_fermi"],
            debye_energy=debye,
            gap=gap,
            tc=fields.get("tc_k"),
            lambda_ep=fields.get("lambda"),
        )
    except ValueError as exc:
        raise MaterialsFileError(str(exc), line=start_line) from exc


def load_materials(source: str) -> MaterialsTable:
    """Parse a materials document (the text itself, not a path)."""
    normalization = None
    entries = []
    block = None
    block_start = None

    def close_block():
        if block is not None:
            entries.append(_finish_block(block, block_start, normalization))

    for lineno, raw in enumerate(source.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise MaterialsFileError(f"expected 'key = value', got {raw!r}", line=lineno)
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.split("#", 1)[0].strip()
        if key == "normalization":
            if normalization is not None:
                raise MaterialsFileError("duplicate 'normalization' tag", line=lineno)
            if block is not None:
                raise MaterialsFileError(
                    "'normalization' must precede the first material block", line=lineno
                )
            if not value:
                raise MaterialsFileError("'normalization' must not be empty", line=lineno)
            normalization = value
            continue
        if key == "name":
            close_block()
            if not value:
                raise MaterialsFileError("material name must be non-empty", line=lineno)
            block = {"name": value}
            block_start = lineno
            continue
        if key not in _BLOCK_KEYS:
            raise MaterialsFileError(f"unknown key in {raw!r}", line=lineno)
        if block is None:
            raise MaterialsFileError(
                f"key {key!r} appears before any 'name =' block", line=lineno
            )
        if key in block:
            raise MaterialsFileError(
                f"duplicate key {key!r} in block {block['name']!r}", line=lineno
            )
        try:
            block[key] = float(value)
        except ValueError:
            raise MaterialsFileError(
                f"could not parse number {value!r} for key {key!r}", line=lineno
            ) from None
    close_block()
    if normalization is None:
        raise MaterialsFileError("file has no 'normalization' tag")
    try:
        return MaterialsTable(entries=tuple(entries), normalization=normalization)
    except ValueError as exc:
        raise MaterialsFileError(str(exc)) from exc


def load_materials_file(path) -> MaterialsTable:
    with open(path, "r", encoding="utf-8") as fh:
        return load_materials(fh.read())


def dump_materials(table: MaterialsTable) -> str:
    """Serialize a table; reloading the output reproduces the table exactly."""
    lines = [f"normalization = {table.normalization}"]
    for e in table.entries:
        lines.append("")
        lines.append(f"name = {e.name}")
        lines.append(f"dos_fermi = {e.dos_fermi!r}")
        lines.append(f"debye_energy = {e.debye_energy!r}")
        if e.gap is not None:
            lines.append(f"gap_ev = {e.gap!r}")
        if e.tc is not None:
            lines.append(f"tc_k = {e.tc!r}")
        if e.lambda_ep is not None:
            lines.append(f"lambda = {e.lambda_ep!r}")
    return "\n".join(lines) + "\n"


def mep_report(table: MaterialsTable):
    """Compute (n1, n2, MEP) per entry, sorted by MEP descending, names breaking ties.

    Returns (rows, errors); a per-entry failure lands in errors as
    ``"name: reason"`` and the remaining rows are still produced.
    """
    rows = []
    errors = []
    for params in table.entries:
        try:
            nums = dimensionless_numbers(params)
            value = mep(nums)
        except (MissingDataError, ValueError) as exc:
            errors.append(f"{params.name}: {exc}")
            continue
        rows.append(MepReportRow(
            name=params.name,
            n1=nums.n1,
            n2=nums.n2,
            mep=value,
            neg_log10_mep=-math.log10(value) if value > 0 else math.inf,
            lambda_ep=params.lambda_ep,
            tc=params.tc,
        ))
    rows.sort(key=lambda r: (-r.mep, r.name))
    return rows, errors


_CSV_HEADER = "name,n1,n2,mep,neg_log10_mep,lambda,tc"


def report_csv(rows) -> str:
    """Locale-independent CSV with '.' decimals and full-precision floats."""
    out = [_CSV_HEADER]
    for r in rows:
        cells = [r.name, repr(r.n1), repr(r.n2), repr(r.mep), repr(r.neg_log10_mep),
                 "" if r.lambda_ep is None else repr(r.lambda_ep),
                 "" if r.tc is None else repr(r.tc)]
        out.append(",".join(cells))
    return "\n".join(out) + "\n"


def report_text(rows, normalization: str, reference=None) -> str:
    """Aligned plain-text report; optional reference -log10 values side by side."""
    reference = reference or {}
    header = f"{'name':<8}{'n1':>12}{'n2':>12}{'mep':>13}{'-log10(mep)':>13}{'lambda':>9}{'Tc[K]':>8}"
    if reference:
        header += f"{'ref -log10':>12}"
    lines = [f"# normalization: {normalization}", header]
    for r in rows:
        neg = "inf" if math.isinf(r.neg_log10_mep) else f"{r.neg_log10_mep:.3f}"
        line = (f"{r.name:<8}{r.n1:>12.4e}{r.n2:>12.4e}{r.mep:>13.4e}{neg:>13}"
                f"{'' if r.lambda_ep is None else format(r.lambda_ep, '.2f'):>9}"
                f"{'' if r.tc is None else format(r.tc, '.2f'):>8}")
        if reference:
            ref = reference.get(r.name)
            line += f"{'' if ref is None else format(ref, '.3f'):>12}"
        lines.append(line)
    return "\n".join(lines) + "\n"


def default_materials_text() -> str:
    """Text of the bundled element data file."""
    return resources.files("bcsmep.data").joinpath("elements.dat").read_text(encoding="utf-8")


def load_default_materials() -> MaterialsTable:
    return load_materials(default_materials_text())


def reference_neg_log10() -> dict[str, float]:
    """Published reference -log10(MEP) values for the bundled element set."""
    text = resources.files("bcsmep.data").joinpath("reference_neg_log10.dat").read_text(encoding="utf-8")
    out = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        name, value = line.split()
        out[name] = float(value)
    return out
