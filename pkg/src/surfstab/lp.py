"""Linear models with exact rational data, a text format, and an exact optimizer.

``.lpx`` layout (one item per line, deterministic order)::

    VARS
    x0
    x1
    MAX
    +2/1 x0 +1/1 x1
    ST
    r0 [box]: +1/1 x0 +1/1 x1 <= 1/1
    BOUNDS
    x0 >= 0/1
    x0 <= 1/1
    END

``lp_optimize`` solves to an exact rational optimum.  By default it first
asks HiGHS (through scipy) for a floating-point primal/dual pair, rounds it
to nearby rationals, and accepts it only if exact arithmetic confirms primal
feasibility, dual feasibility and a zero duality gap.  Otherwise it runs a
dense two-phase simplex over fractions with Bland's rule.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .errors import InstanceError

OPS = ("<=", "=", ">=")


def _fmt(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


@dataclass
class Constraint:
    name: str
    coeffs: dict[str, Fraction]
    op: str
    rhs: Fraction
    tag: str = ""


@dataclass
class LinearModel:
    variables: list[str] = field(default_factory=list)
    lower: dict[str, Fraction | None] = field(default_factory=dict)
    upper: dict[str, Fraction | None] = field(default_factory=dict)
    constraints: list[Constraint] = field(default_factory=list)
    objective: dict[str, Fraction] = field(default_factory=dict)
    sense: str = "MAX"

    def add_var(self, name: str, lb=0, ub=None) -> str:
        if name in self.lower:
            raise InstanceError(f"variable {name} declared twice")
        self.variables.append(name)
        self.lower[name] = None if lb is None else Fraction(lb)
        self.upper[name] = None if ub is None else Fraction(ub)
        return name

    def add_constraint(self, coeffs: Mapping[str, object], op: str, rhs=0, tag: str = "",
                       name: str | None = None) -> Constraint:
        if op not in OPS:
            raise InstanceError(f"unknown relation {op!r}")
        clean = {}
        for v, c in coeffs.items():
            if v not in self.lower:
                raise InstanceError(f"constraint references undeclared variable {v}")
            c = Fraction(c)
            if c:
                clean[v] = clean.get(v, Fraction(0)) + c
        con = Constraint(name or f"r{len(self.constraints)}", clean, op, Fraction(rhs), tag)
        self.constraints.append(con)
        return con

    @property
    def size(self) -> dict[str, int]:
        bounds = sum(1 for v in self.variables if self.lower[v] is not None) + \
            sum(1 for v in self.variables if self.upper[v] is not None)
        return {"variables": len(self.variables), "constraints": len(self.constraints),
                "bounds": bounds, "nonzeros": sum(len(c.coeffs) for c in self.constraints)}

    def tags(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for c in self.constraints:
            out[c.tag] = out.get(c.tag, 0) + 1
        return out

    def is_feasible(self, point: Mapping[str, object]) -> tuple[bool, str | None]:
        """Exact check of every bound and constraint; returns the first violated name."""
        for v in self.variables:
            x = Fraction(point.get(v, 0))
            if self.lower[v] is not None and x < self.lower[v]:
                return False, f"lower bound of {v}"
            if self.upper[v] is not None and x > self.upper[v]:
                return False, f"upper bound of {v}"
        for c in self.constraints:
            lhs = sum((k * Fraction(point.get(v, 0)) for v, k in c.coeffs.items()), Fraction(0))
            if (c.op == "<=" and lhs > c.rhs) or (c.op == ">=" and lhs < c.rhs) or \
                    (c.op == "=" and lhs != c.rhs):
                return False, c.name
        return True, None

    # -- text format ---------------------------------------------------------

    def to_lpx(self) -> str:
        lines = ["VARS"]
        lines.extend(self.variables)
        lines.append(self.sense)
        lines.append(_terms(self.objective, self.variables))
        lines.append("ST")
        for c in self.constraints:
            tag = f" [{c.tag}]" if c.tag else ""
            lines.append(f"{c.name}{tag}: {_terms(c.coeffs, self.variables)} {c.op} {_fmt(c.rhs)}")
        lines.append("BOUNDS")
        for v in self.variables:
            if self.lower[v] is not None:
                lines.append(f"{v} >= {_fmt(self.lower[v])}")
            if self.upper[v] is not None:
                lines.append(f"{v} <= {_fmt(self.upper[v])}")
        lines.append("END")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_lpx(cls, text: str) -> LinearModel:
        model = cls()
        section = None
        for raw in text.splitlines():
            line = raw.strip()
            if not line:
                continue
            if line in ("VARS", "MAX", "MIN", "ST", "BOUNDS", "END"):
                section = line
                if line in ("MAX", "MIN"):
                    model.sense = line
                continue
            if section == "VARS":
                model.variables.append(line)
                model.lower[line] = None
                model.upper[line] = None
            elif section in ("MAX", "MIN"):
                model.objective = _parse_terms(line)
            elif section == "ST":
                head, body = line.split(":", 1)
                head = head.strip()
                tag = ""
                if "[" in head:
                    head, tag = head.split("[", 1)
                    head, tag = head.strip(), tag.rstrip("]").strip()
                op = next(o for o in ("<=", ">=", "=") if f" {o} " in body)
                lhs, rhs = body.rsplit(f" {op} ", 1)
                model.constraints.append(Constraint(head, _parse_terms(lhs), op, Fraction(rhs.strip()), tag))
            elif section == "BOUNDS":
                v, op, val = line.split()
                if op == ">=":
                    model.lower[v] = Fraction(val)
                else:
                    model.upper[v] = Fraction(val)
            else:
                raise InstanceError(f"unexpected line in lpx: {line!r}")
        return model


def _terms(coeffs: Mapping[str, Fraction], order) -> str:
    pos = {v: i for i, v in enumerate(order)}
    parts = []
    for v in sorted(coeffs, key=lambda k: pos.get(k, len(pos))):
        c = Fraction(coeffs[v])
        sign = "+" if c >= 0 else "-"
        parts.append(f"{sign}{_fmt(abs(c))} {v}")
    return " ".join(parts) if parts else "0"


def _parse_terms(text: str) -> dict[str, Fraction]:
    toks = text.split()
    if toks == ["0"]:
        return {}
    out = {}
    for i in range(0, len(toks), 2):
        out[toks[i + 1]] = Fraction(toks[i])
    return out


# -- standard form ------------------------------------------------------------


@dataclass
class _StandardForm:
    """``max c.x  s.t.  A_ub x <= b_ub, A_eq x = b_eq, x >= 0`` over shifted/split columns."""

    cols: list[tuple[str, int]]  # (variable, +1 or -1)
    shift: dict[str, Fraction]
    c: list[Fraction]
    const: Fraction
    A_ub: list[dict[int, Fraction]]
    b_ub: list[Fraction]
    A_eq: list[dict[int, Fraction]]
    b_eq: list[Fraction]

    def point(self, z) -> dict[str, Fraction]:
        x = {v: s for v, s in self.shift.items()}
        for j, (v, sgn) in enumerate(self.cols):
            x[v] += sgn * z[j]
        return x


def _standard_form(model: LinearModel, objective: Mapping[str, object], sense: str) -> _StandardForm:
    cols: list[tuple[str, int]] = []
    colmap: dict[str, list[tuple[int, int]]] = {}
    shift = {}
    extra_ub = []
    for v in model.variables:
        lo, hi = model.lower[v], model.upper[v]
        if lo is not None:
            shift[v] = lo
            colmap[v] = [(len(cols), 1)]
            cols.append((v, 1))
            if hi is not None:
                extra_ub.append(({len(cols) - 1: Fraction(1)}, hi - lo))
        elif hi is not None:
            shift[v] = hi
            colmap[v] = [(len(cols), -1)]
            cols.append((v, -1))
        else:
            shift[v] = Fraction(0)
            colmap[v] = [(len(cols), 1), (len(cols) + 1, -1)]
            cols.extend([(v, 1), (v, -1)])
    flip = 1 if sense == "MAX" else -1
    c = [Fraction(0)] * len(cols)
    const = Fraction(0)
    for v, k in objective.items():
        k = Fraction(k) * flip
        const += k * shift[v]
        for j, s in colmap[v]:
            c[j] += k * s
    A_ub, b_ub, A_eq, b_eq = [], [], [], []
    for con in model.constraints:
        row: dict[int, Fraction] = {}
        rhs = con.rhs
        for v, k in con.coeffs.items():
            rhs -= k * shift[v]
            for j, s in colmap[v]:
                row[j] = row.get(j, Fraction(0)) + k * s
        row = {j: k for j, k in row.items() if k}
        if con.op == "<=":
            A_ub.append(row)
            b_ub.append(rhs)
        elif con.op == ">=":
            A_ub.append({j: -k for j, k in row.items()})
            b_ub.append(-rhs)
        else:
            A_eq.append(row)
            b_eq.append(rhs)
    for row, rhs in extra_ub:
        A_ub.append(row)
        b_ub.append(rhs)
    return _StandardForm(cols, shift, c, const, A_ub, b_ub, A_eq, b_eq)


@dataclass
class LPResult:
    status: str
    value: Fraction | None
    x: dict[str, Fraction]
    method: str = ""


def lp_optimize(model: LinearModel, objective: Mapping[str, object] | None = None,
                sense: str | None = None, method: str = "auto") -> LPResult:
    """Exact optimum of ``objective`` over the model.

    ``method`` is ``"exact"`` (rational simplex only) or ``"auto"`` (certified
    HiGHS first, exact simplex when the certificate does not verify).
    """
    if objective is None:
        objective = model.objective
    sense = sense or model.sense
    sf = _standard_form(model, objective, sense)
    flip = 1 if sense == "MAX" else -1
    if method == "auto":
        res = _certified_highs(sf)
        if res is not None:
            z, val = res
            return LPResult("optimal", flip * (val + sf.const), sf.point(z), "highs-certified")
    status, z, val = _simplex(sf)
    if status != "optimal":
        return LPResult(status, None, {}, "exact-simplex")
    return LPResult("optimal", flip * (val + sf.const), sf.point(z), "exact-simplex")


# -- certified floating-point path --------------------------------------------


def _rationalize(arr, max_den=10**6):
    return [Fraction(float(a)).limit_denominator(max_den) for a in arr]


def _certified_highs(sf: _StandardForm):
    try:
        from scipy.optimize import linprog
        from scipy.sparse import coo_matrix
    except ImportError:  # pragma: no cover
        return None
    n = len(sf.cols)
    if n == 0:
        return None

    def mat(rows):
        if not rows:
            return None
        r, c, d = [], [], []
        for i, row in enumerate(rows):
            for j, k in row.items():
                r.append(i)
                c.append(j)
                d.append(float(k))
        return coo_matrix((d, (r, c)), shape=(len(rows), n)).tocsr()

    res = linprog(
        c=[-float(k) for k in sf.c],
        A_ub=mat(sf.A_ub), b_ub=[float(b) for b in sf.b_ub] or None,
        A_eq=mat(sf.A_eq), b_eq=[float(b) for b in sf.b_eq] or None,
        bounds=(0, None), method="highs-ds",
    )
    if res.status != 0:
        return None
    z = _rationalize(res.x)
    u = [-q for q in _rationalize(res.ineqlin.marginals)] if sf.A_ub else []
    v = [-q for q in _rationalize(res.eqlin.marginals)] if sf.A_eq else []
    # exact primal feasibility
    if any(q < 0 for q in z):
        return None
    for row, b in zip(sf.A_ub, sf.b_ub):
        if sum((k * z[j] for j, k in row.items()), Fraction(0)) > b:
            return None
    for row, b in zip(sf.A_eq, sf.b_eq):
        if sum((k * z[j] for j, k in row.items()), Fraction(0)) != b:
            return None
    # exact dual feasibility: A_ub^T u + A_eq^T v >= c, u >= 0
    if any(q < 0 for q in u):
        return None
    reduced = [Fraction(0)] * n
    for i, row in enumerate(sf.A_ub):
        if u[i]:
            for j, k in row.items():
                reduced[j] += k * u[i]
    for i, row in enumerate(sf.A_eq):
        if v[i]:
            for j, k in row.items():
                reduced[j] += k * v[i]
    if any(reduced[j] < sf.c[j] for j in range(n)):
        return None
    primal = sum((k * z[j] for j, k in enumerate(sf.c)), Fraction(0))
    dual = sum((b * q for b, q in zip(sf.b_ub, u)), Fraction(0)) + \
        sum((b * q for b, q in zip(sf.b_eq, v)), Fraction(0))
    if primal != dual:
        return None
    return z, primal


# -- exact two-phase simplex --------------------------------------------------


def _simplex(sf: _StandardForm):
    """Dense tableau simplex over fractions with Bland's rule.

    Rows are ``A_ub`` with slacks and ``A_eq``; rows with negative
    right-hand side are negated, and every row receives an artificial
    variable for phase one.
    """
    n = len(sf.cols)
    m_ub, m_eq = len(sf.A_ub), len(sf.A_eq)
    m = m_ub + m_eq
    n_slack = m_ub
    total = n + n_slack + m
    T = []
    for i in range(m):
        row = [Fraction(0)] * (total + 1)
        if i < m_ub:
            for j, k in sf.A_ub[i].items():
                row[j] = k
            row[n + i] = Fraction(1)
            rhs = sf.b_ub[i]
        else:
            for j, k in sf.A_eq[i - m_ub].items():
                row[j] = k
            rhs = sf.b_eq[i - m_ub]
        if rhs < 0:
            row = [-a for a in row]
            rhs = -rhs
        row[n + n_slack + i] = Fraction(1)
        row[total] = rhs
        T.append(row)
    basis = [n + n_slack + i for i in range(m)]

    def pivot(r, col):
        pr = T[r]
        piv = pr[col]
        if piv != 1:
            T[r] = pr = [a / piv for a in pr]
        nz = [j for j, a in enumerate(pr) if a]
        for i in range(m):
            if i != r:
                f = T[i][col]
                if f:
                    Ti = T[i]
                    for j in nz:
                        Ti[j] -= f * pr[j]
        basis[r] = col

    def run(cost, allowed):
        # maximise cost . x over current tableau
        while True:
            red = []
            for j in range(total):
                if not allowed[j]:
                    continue
                val = cost[j] - sum((cost[basis[i]] * T[i][j] for i in range(m) if T[i][j]), Fraction(0))
                red.append((j, val))
            enter = next((j for j, val in red if val > 0 and j not in basis), None)
            if enter is None:
                return "optimal"
            best = None
            for i in range(m):
                a = T[i][enter]
                if a > 0:
                    ratio = T[i][total] / a
                    if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                        best = (ratio, i)
            if best is None:
                return "unbounded"
            pivot(best[1], enter)

    allowed = [True] * total
    phase1 = [Fraction(0)] * total
    for i in range(m):
        phase1[n + n_slack + i] = Fraction(-1)
    run(phase1, allowed)
    infeas = sum((T[i][total] for i in range(m) if basis[i] >= n + n_slack), Fraction(0))
    if infeas > 0:
        return "infeasible", None, None
    # drive remaining artificials out of the basis where possible
    for i in range(m):
        if basis[i] >= n + n_slack:
            col = next((j for j in range(n + n_slack) if T[i][j]), None)
            if col is not None:
                pivot(i, col)
    for j in range(n + n_slack, total):
        allowed[j] = False
    cost = list(sf.c) + [Fraction(0)] * (n_slack + m)
    status = run(cost, allowed)
    if status != "optimal":
        return status, None, None
    z = [Fraction(0)] * n
    for i in range(m):
        if basis[i] < n:
            z[basis[i]] = T[i][total]
    val = sum((sf.c[j] * z[j] for j in range(n)), Fraction(0))
    return "optimal", z, val
