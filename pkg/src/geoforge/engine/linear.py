"""Sparse exact Gaussian elimination over Q with provenance columns.

Rows are dicts mapping variable keys to Fractions.  Every added equation
carries one extra "dep" column tagging its source, so any reduced residual
names exactly the combination of source equations it was derived from
(same bookkeeping as an augmented identity matrix).

The table keeps reduced row-echelon form with back-substitution: one row
per pivot variable, pivot coefficient 1, pivot eliminated from all other
rows.  Dep columns never become pivots.
"""
from __future__ import annotations

from fractions import Fraction

Row = dict  # var key -> Fraction


def row_sub(target: Row, coef: Fraction, other: Row) -> None:
    """target -= coef * other, dropping cancelled entries."""
    if not coef:
        return
    for k, v in other.items():
        nv = target.get(k, 0) - coef * v
        if nv:
            target[k] = nv
        else:
            target.pop(k, None)


def is_dep(key) -> bool:
    return isinstance(key, tuple) and key and key[0] == "dep"


class EliminationTable:
    def __init__(self, avoid_pivot=frozenset()):
        self.rows: dict[object, Row] = {}
        self.avoid_pivot = set(avoid_pivot)
        self._n_eq = 0

    def add(self, expr: Row, dep_tag) -> None:
        """Add one source equation expr == 0 (over exact values)."""
        row = dict(expr)
        row[("dep", self._n_eq, dep_tag)] = Fraction(1)
        self._n_eq += 1
        self.reduce(row)
        pivot = self._pick_pivot(row)
        if pivot is None:
            return  # no informative variables left: redundant equation
        inv = Fraction(1) / row[pivot]
        for k in list(row):
            row[k] *= inv
        for other in self.rows.values():
            if pivot in other:
                row_sub(other, other[pivot], row)
        self.rows[pivot] = row

    def reduce(self, row: Row) -> Row:
        for var in [k for k in row if not is_dep(k)]:
            r = self.rows.get(var)
            if r is not None and var in row:
                row_sub(row, row[var], r)
        return row

    def _pick_pivot(self, row: Row):
        normal = [k for k in row if not is_dep(k) and k not in self.avoid_pivot]
        if normal:
            return min(normal, key=str)
        return None

    def reduced_form(self, expr: Row) -> Row:
        return self.reduce(dict(expr))


def split_residual(row: Row):
    """(real part sorted tuple, dep tags) of a reduced row."""
    real = tuple(sorted(((k, v) for k, v in row.items() if not is_dep(k)),
                        key=lambda kv: str(kv[0])))
    deps = tuple(k[2] for k in row if is_dep(k))
    return real, deps
