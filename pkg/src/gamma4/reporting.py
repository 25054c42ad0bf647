"""Table exports for a frozen model.

Column layouts:

generators (CSV)
    ``index, name, pair_a, pair_b, support`` where pairs are ``i-k`` and the
    support is four labels joined by spaces.
central-classes (CSV)
    ``K, trivial, a_res, h_res`` with ``K`` as ``i j k`` and hex bitsets.
invariants (JSON or CSV)
    the keys of :func:`gamma4.engine.invariants`.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

from .engine import GroupModel, invariants

TABLES = ("generators", "central-classes", "invariants")


def generators_csv(model: GroupModel) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["index", "name", "pair_a", "pair_b", "support"])
    for g in model.table:
        w.writerow([g.index, str(g), "%d-%d" % g.pair_a, "%d-%d" % g.pair_b, " ".join(map(str, sorted(g.support)))])
    return buf.getvalue()


def central_classes_csv(model: GroupModel) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["K", "trivial", "a_res", "h_res"])
    for K, cls in sorted(model.central_classes.items()):
        w.writerow([" ".join(map(str, K)), int(cls.is_identity()), format(cls.a_res, "x"), format(cls.h_res, "x")])
    return buf.getvalue()


def invariants_text(model: GroupModel, fmt: str = "json") -> str:
    inv = invariants(model)
    if fmt == "json":
        return json.dumps(inv, indent=2, sort_keys=True) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["key", "value"])
    for k, v in sorted(inv.items()):
        w.writerow([k, int(v) if isinstance(v, bool) else v])
    return buf.getvalue()


def export_tables(model: GroupModel, what: str, fmt: str = "csv") -> str:
    if what == "generators":
        if fmt == "json":
            rows = [
                {"index": g.index, "name": str(g), "pair_a": list(g.pair_a), "pair_b": list(g.pair_b),
                 "support": sorted(g.support)}
                for g in model.table
            ]
            return json.dumps(rows, indent=2) + "\n"
        return generators_csv(model)
    if what == "central-classes":
        if fmt == "json":
            rows = [{"K": list(K), "trivial": c.is_identity(), **c.to_json()} for K, c in sorted(model.central_classes.items())]
            return json.dumps(rows, indent=2) + "\n"
        return central_classes_csv(model)
    if what == "invariants":
        return invariants_text(model, fmt)
    raise ValueError(f"unknown table {what!r}; choose from {TABLES}")


def write_table(model: GroupModel, what: str, fmt: str, path: str | Path) -> None:
    Path(path).write_text(export_tables(model, what, fmt))


def load_invariants(path: str | Path) -> dict:
    return json.loads(Path(path).read_text())
