"""Recompute a published table and compare every printed value."""
from __future__ import annotations

from dataclasses import dataclass

from .bounds import family_bound, hyper_estimate
from .fixtures import BOUND_REL_TOL, H_ABS_TOL, NORM_ABS_TOL, POWERS, TABLES, FixtureRow
from .norm import OptConfig
from .poly import get_family, parse_params


@dataclass(frozen=True)
class Comparison:
    table: str
    family: str
    column: str
    params: str
    computed: float
    expected: float
    delta: float
    tolerance: float
    status: str  # "pass", "FAIL" or "annotated"
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.status != "FAIL"


def _status(passed: bool, note: str | None) -> str:
    if note:
        return "annotated"
    return "pass" if passed else "FAIL"


def _abs_cmp(table, row, column, params, computed, expected, tol, note=None):
    delta = abs(computed - expected)
    return Comparison(table, row.family, column, params, computed, expected, delta, tol,
                      _status(delta <= tol, note), note or "")


def _rel_cmp(table, row, column, params, computed, expected, tol, note=None):
    delta = abs(computed - expected) / abs(expected)
    return Comparison(table, row.family, column, params, computed, expected, delta, tol,
                      _status(delta <= tol, note), note or "")


def _floor_cmp(table, row, column, params, bound, floor, note=None):
    base, exponent = floor
    value = base**exponent
    return Comparison(table, row.family, column, params, bound, value, bound - value, 0.0,
                      _status(bound > value, note), note or "")


def _used_params(row: FixtureRow):
    if row.exact:
        return row.exact
    if row.compute_params:
        return row.compute_params
    return row.params


def reproduce_table(table_id: str, cfg: OptConfig | None = None) -> list:
    try:
        table = TABLES[table_id]
    except KeyError:
        raise ValueError(f"unknown table {table_id!r}; expected one of {', '.join(TABLES)}") from None
    cfg = cfg or OptConfig()
    out = []
    for row in table.rows:
        used = _used_params(row)
        label = ",".join(used)
        values = parse_params(used)
        notes = row.annotations
        if table.kind == "bound":
            rep = family_bound(row.family, values, cfg=cfg)
            if row.norm is not None:
                out.append(_abs_cmp(table_id, row, "norm", label, rep.sup_norm, row.norm, NORM_ABS_TOL,
                                    notes.get("norm")))
            if row.bound is not None:
                out.append(_rel_cmp(table_id, row, "bound", label, rep.lower_bound, row.bound, BOUND_REL_TOL,
                                    notes.get("bound")))
            if row.floor is not None:
                out.append(_floor_cmp(table_id, row, "floor", label, rep.lower_bound, row.floor,
                                      notes.get("floor")))
            if row.floor_reading is not None:
                out.append(_floor_cmp(table_id, row, "floor_reading", label, rep.lower_bound, row.floor_reading))
            if row.exact:
                dec = family_bound(row.family, parse_params(row.params), cfg=cfg)
                note = "printed decimals (rounded); the fraction reading is the checked one"
                out.append(_rel_cmp(table_id, row, "bound_decimal", ",".join(row.params), dec.lower_bound,
                                    row.bound, BOUND_REL_TOL, note))
        else:
            k = POWERS[get_family(row.family).id]
            rep = hyper_estimate(row.family, values, k, cfg)
            out.append(_abs_cmp(table_id, row, "h", label, rep.h_estimate, row.h, H_ABS_TOL, notes.get("h")))
            if row.compute_params:
                printed = hyper_estimate(row.family, parse_params(row.params), k, cfg)
                out.append(_abs_cmp(table_id, row, "h_printed_params", ",".join(row.params),
                                    printed.h_estimate, row.h, H_ABS_TOL, notes.get("params")))
    return out


def all_ok(comparisons) -> bool:
    return all(c.ok for c in comparisons)
