"""Reference Laplacian tables for all Z_n^m with m >= 0, n <= 6, and a checker.

``LAPLACIAN_TABLE[(n, m)]`` maps degree s -> coefficient of Z_s^m in Delta Z_n^m.
``INVERSE_LAPLACIAN_TABLE[(n', m)]`` maps degree n -> coefficient of Z_n^m in
the polynomial whose Laplacian is Z_{n'}^m.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as F

from .laplacian import inverse_laplacian_single, laplacian_single
from .polynomials import ZernikeIndex

__all__ = ["LAPLACIAN_TABLE", "INVERSE_LAPLACIAN_TABLE", "TableCheck", "check_tables"]

LAPLACIAN_TABLE: dict[tuple[int, int], dict[int, int]] = {
    (0, 0): {},
    (2, 0): {0: 8},
    (4, 0): {2: 48, 0: 24},
    (6, 0): {4: 120, 2: 120, 0: 48},
    (1, 1): {},
    (3, 1): {1: 24},
    (5, 1): {3: 80, 1: 64},
    (2, 2): {},
    (4, 2): {2: 48},
    (6, 2): {4: 120, 2: 120},
    (3, 3): {},
    (5, 3): {3: 80},
    (4, 4): {},
    (6, 4): {4: 120},
    # harmonic like every Z_|m|^m; completes the m >= 0, n <= 6 set
    (5, 5): {},
    (6, 6): {},
}

INVERSE_LAPLACIAN_TABLE: dict[tuple[int, int], dict[int, F]] = {
    (0, 0): {2: F(1, 8)},
    (2, 0): {2: F(-1, 16), 4: F(1, 48)},
    (4, 0): {2: F(1, 80), 4: F(-1, 48), 6: F(1, 120)},
    (6, 0): {4: F(1, 168), 6: F(-1, 96), 8: F(1, 224)},
    (1, 1): {3: F(1, 24)},
    (3, 1): {3: F(-1, 30), 5: F(1, 80)},
    (5, 1): {3: F(1, 120), 5: F(-1, 70), 7: F(1, 168)},
    (2, 2): {4: F(1, 48)},
    (4, 2): {4: F(-1, 48), 6: F(1, 120)},
    (6, 2): {4: F(1, 168), 6: F(-1, 96), 8: F(1, 224)},
    (3, 3): {5: F(1, 80)},
    (5, 3): {5: F(-1, 70), 7: F(1, 168)},
    (4, 4): {6: F(1, 120)},
    (6, 4): {6: F(-1, 96), 8: F(1, 224)},
    (5, 5): {7: F(1, 168)},
    (6, 6): {8: F(1, 224)},
}


@dataclass
class TableCheck:
    name: str
    total: int
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> int:
        return self.total - len(self.failures)

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        return f"{self.name}: {self.passed}/{self.total} rows exact"


def _compare(name, table, compute):
    check = TableCheck(name, len(table))
    for (n, m), expected in table.items():
        result = compute(ZernikeIndex(n, m))
        got = {s: c for (mm, s), c in result.items() if mm == m}
        stray = [k for k in result.keys() if k[0] != m]
        if got != expected or stray:
            check.failures.append(f"Z_{n}^{m}: expected {expected}, got {got}")
    return check


def check_tables(laplacian_fn=laplacian_single, inverse_fn=inverse_laplacian_single):
    """Recompute both tables and compare exactly; returns two :class:`TableCheck`."""
    return (
        _compare("Table I", LAPLACIAN_TABLE, laplacian_fn),
        _compare("Table II", INVERSE_LAPLACIAN_TABLE, inverse_fn),
    )
