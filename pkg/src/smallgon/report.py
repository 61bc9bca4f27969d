"""Perimeter/width tables for D_n against R_n, C_n and the upper bounds,
plus the asymptotic gap diagnostics."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import asdict, dataclass, fields

from . import construct, signopt
from .errors import ValidationError
from .serialize import dumps, fmt17

ORDER_TOL = 1e-12
AGREE_TOL = 1e-10

CSV_COLUMNS = ("n", "L_Rn", "L_Cn", "L_Dn", "L_upper", "W_Rn", "W_Cn", "W_Dn", "W_upper", "M", "sigma", "delta", "engine")


@dataclass(frozen=True)
class TableRow:
    n: int
    l_rn: float
    l_cn: float
    l_dn: float
    l_upper: float
    w_rn: float
    w_cn: float
    w_dn: float
    w_upper: float
    m_value: float
    sigma: float
    delta: float
    engine: str

    def check_order(self, tol: float = ORDER_TOL) -> None:
        for label, seq in (("perimeter", (self.l_rn, self.l_cn, self.l_dn, self.l_upper)),
                           ("width", (self.w_rn, self.w_cn, self.w_dn, self.w_upper))):
            for a, b in zip(seq, seq[1:]):
                if a > b + tol:
                    raise ValidationError(f"n={self.n}: {label} columns out of order ({a!r} > {b!r})")


def make_row(n: int, engine: str = "block", budget_mb=None) -> TableRow:
    """One certified row: D_n is built and checked before its values are reported."""
    build = construct.build_dn(n, engine=engine, budget_mb=budget_mb)
    construct.check_metrics_agree(build, tol=AGREE_TOL)
    l_dn, w_dn = construct.dn_closed_form(n, build.spec.delta)
    rn = construct.closed_form(n, "Rn")
    cn = construct.closed_form(n, "Cn")
    up = construct.closed_form(n, "upper")
    row = TableRow(
        n, rn.perimeter, cn.perimeter, l_dn, up.perimeter,
        rn.width, cn.width, w_dn, up.width,
        build.search.m_value, build.search.sigma, build.spec.delta, build.search.engine,
    )
    row.check_order()
    return row


def make_table(n_list, engine: str = "block", budget_mb=None) -> list[TableRow]:
    return [make_row(int(n), engine=engine, budget_mb=budget_mb) for n in n_list]


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        vals = [getattr(r, f.name) for f in fields(TableRow)]
        w.writerow([str(v) if isinstance(v, (int, str)) else fmt17(v) for v in vals])
    return buf.getvalue()


def rows_from_csv(text: str) -> list[TableRow]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if tuple(header) != CSV_COLUMNS:
        raise ValueError(f"unexpected CSV header {header}")
    rows = []
    for rec in reader:
        if not rec:
            continue
        rows.append(TableRow(int(rec[0]), *(float(x) for x in rec[1:12]), rec[12]))
    return rows


# -- asymptotic gaps ----------------------------------------------------------

# name: (family, which gap, power of n, power of pi, limit)
GAP_RATIOS = {
    "L_Rn": ("Rn", "perimeter", 2, 3, 1 / 8),
    "W_Rn": ("Rn", "width", 2, 2, 3 / 8),
    "L_Bn": ("Bn", "perimeter", 6, 7, 1 / 32),
    "W_Bn": ("Bn", "width", 4, 4, 1 / 8),
    "L_Cn": ("Cn", "perimeter", 8, 9, 1 / 8),
    "W_Cn": ("Cn", "width", 5, 5, 1 / 4),
}


def gap_ratio(n: int, name: str) -> float:
    family, which, pn, ppi, _ = GAP_RATIOS[name]
    cf = construct.closed_form(n, family)
    gap = cf.perimeter_gap if which == "perimeter" else cf.width_gap
    return gap * n**pn / math.pi**ppi


def gap_diagnostics(n_list, engine: str = "block", budget_mb=None) -> list[dict]:
    """Scaled gaps to the upper bounds, their limits, and the delta <= (1 - cos(pi/n)) sigma check."""
    out = []
    for n in n_list:
        n = signopt.check_n(int(n))
        ratios = {}
        for name, (family, _, _, _, limit) in GAP_RATIOS.items():
            if family == "Cn" and n < 16:
                continue
            value = gap_ratio(n, name)
            ratios[name] = {"value": value, "limit": limit, "rel_deviation": abs(value - limit) / limit}
        entry = {"n": n, "ratios": ratios}
        if n >= 16:
            res = signopt.search(n, engine=engine, budget_mb=budget_mb)
            sol = signopt.solve_delta(n, res.sigma)
            bound = 2 * math.sin(math.pi / (2 * n)) ** 2 * res.sigma
            dn = construct.closed_form(n, "Dn", engine=engine, budget_mb=budget_mb)
            entry["delta_chain"] = {
                "delta": sol.delta,
                "bound": bound,
                "holds": sol.delta <= bound,
                "residual": sol.residual,
            }
            entry["dn_gaps"] = {"perimeter": dn.perimeter_gap, "width": dn.width_gap}
        out.append(entry)
    return out


def exact_comparison(n_list, budget_mb=None) -> list[dict]:
    """D_n from the exact minimum next to D_n from the block recursion."""
    out = []
    for n in n_list:
        exact = signopt.search(n, engine="auto", budget_mb=budget_mb)
        block = signopt.search(n, engine="block")
        d_exact = signopt.solve_delta(n, exact.sigma).delta
        d_block = signopt.solve_delta(n, block.sigma).delta
        le, we = construct.dn_closed_form(n, d_exact)
        lb, wb = construct.dn_closed_form(n, d_block)
        out.append({
            "n": n, "engine": exact.engine, "optimal": exact.optimal,
            "m_exact": exact.m_value, "m_block": block.m_value,
            "l_dn_exact": le, "l_dn_block": lb, "w_dn_exact": we, "w_dn_block": wb,
        })
    return out


def report_document(n_list, engine: str = "block", budget_mb=None) -> dict:
    rows = make_table(n_list, engine=engine, budget_mb=budget_mb)
    doc = {
        "rows": [asdict(r) for r in rows],
        "diagnostics": gap_diagnostics(n_list, engine=engine, budget_mb=budget_mb),
        "exact_comparison": exact_comparison(n_list, budget_mb=budget_mb),
    }
    # printed tables show equal D_n and C_n entries at n = 16; flag, do not explain
    equal = [r.n for r in rows if abs(r.l_dn - r.l_cn) <= 1e-15 and abs(r.w_dn - r.w_cn) <= 1e-15]
    if equal:
        doc["dn_equals_cn_at"] = equal
    return doc


def report_json(n_list, engine: str = "block", budget_mb=None) -> str:
    return dumps(report_document(n_list, engine=engine, budget_mb=budget_mb)) + "\n"
