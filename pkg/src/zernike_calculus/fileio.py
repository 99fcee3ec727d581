"""Text formats for coefficient aggregates and boundary Fourier data.

Coefficient file::

    # zernike-coeffs v1 N=<max_degree>
    m<TAB>n<TAB>re<TAB>im

Boundary file::

    # fourier-boundary v1
    m<TAB>re<TAB>im

Further lines starting with ``#`` and blank lines are ignored. Floats are
written with the shortest repr that round-trips, so parse(format(x)) == x.
Body lines are sorted by (m, n).
"""
from __future__ import annotations

import re
from pathlib import Path

from .aggregate import CoefficientAggregate
from .laplacian import FourierBoundary
from .polynomials import is_valid_index

__all__ = [
    "FormatError",
    "format_coeffs",
    "parse_coeffs",
    "read_coeffs",
    "write_coeffs",
    "format_boundary",
    "parse_boundary",
    "read_boundary",
    "write_boundary",
]

COEFF_HEADER = "# zernike-coeffs v1"
BOUNDARY_HEADER = "# fourier-boundary v1"
_COEFF_HEADER_RE = re.compile(r"^# zernike-coeffs v1 N=(\d+)\s*$")


class FormatError(ValueError):
    """Malformed coefficient or boundary file."""


def _num(x) -> str:
    # + 0.0 turns -0.0 into 0.0
    return repr(float(x) + 0.0)


def _parts(value):
    z = complex(value)
    return _num(z.real), _num(z.imag)


def format_coeffs(alpha: CoefficientAggregate) -> str:
    lines = [f"{COEFF_HEADER} N={alpha.max_degree}"]
    for (m, n), v in sorted(alpha.items()):
        lines.append("\t".join((str(m), str(n), *_parts(v))))
    return "\n".join(lines) + "\n"


def _body(lines):
    for lineno, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line.split()


def _to_float(token, source, lineno):
    try:
        return float(token)
    except ValueError:
        raise FormatError(f"{source}:{lineno}: not a number: {token!r}") from None


def _to_int(token, source, lineno):
    try:
        return int(token)
    except ValueError:
        raise FormatError(f"{source}:{lineno}: not an integer: {token!r}") from None


def parse_coeffs(text: str, source: str = "<coeffs>") -> CoefficientAggregate:
    lines = text.splitlines()
    match = _COEFF_HEADER_RE.match(lines[0].strip()) if lines else None
    if match is None:
        raise FormatError(f"{source}:1: expected header '{COEFF_HEADER} N=<max_degree>'")
    N = int(match.group(1))
    entries = {}
    for lineno, fields in _body(lines):
        if len(fields) != 4:
            raise FormatError(f"{source}:{lineno}: expected 'm n re im', got {len(fields)} fields")
        m, n = (_to_int(t, source, lineno) for t in fields[:2])
        re_, im = (_to_float(t, source, lineno) for t in fields[2:])
        if not is_valid_index(n, m):
            raise FormatError(f"{source}:{lineno}: invalid Zernike index m={m}, n={n}")
        if n > N:
            raise FormatError(f"{source}:{lineno}: degree {n} exceeds header N={N}")
        if (m, n) in entries:
            raise FormatError(f"{source}:{lineno}: duplicate index m={m}, n={n}")
        entries[(m, n)] = complex(re_, im)
    return CoefficientAggregate(entries, N)


def format_boundary(psi: FourierBoundary) -> str:
    lines = [BOUNDARY_HEADER]
    for m, v in sorted(psi.coeffs.items()):
        lines.append("\t".join((str(m), *_parts(v))))
    return "\n".join(lines) + "\n"


def parse_boundary(text: str, source: str = "<boundary>") -> FourierBoundary:
    lines = text.splitlines()
    if not lines or lines[0].strip() != BOUNDARY_HEADER:
        raise FormatError(f"{source}:1: expected header '{BOUNDARY_HEADER}'")
    coeffs = {}
    for lineno, fields in _body(lines):
        if len(fields) != 3:
            raise FormatError(f"{source}:{lineno}: expected 'm re im', got {len(fields)} fields")
        m = _to_int(fields[0], source, lineno)
        if m in coeffs:
            raise FormatError(f"{source}:{lineno}: duplicate order m={m}")
        coeffs[m] = complex(_to_float(fields[1], source, lineno), _to_float(fields[2], source, lineno))
    return FourierBoundary(coeffs)


def read_coeffs(path) -> CoefficientAggregate:
    return parse_coeffs(Path(path).read_text(encoding="utf-8"), str(path))


def write_coeffs(path, alpha: CoefficientAggregate) -> None:
    Path(path).write_text(format_coeffs(alpha), encoding="utf-8")


def read_boundary(path) -> FourierBoundary:
    return parse_boundary(Path(path).read_text(encoding="utf-8"), str(path))


def write_boundary(path, psi: FourierBoundary) -> None:
    Path(path).write_text(format_boundary(psi), encoding="utf-8")
