"""Clusters of infinitely near points and their proximity-derived matrices.

Matrices use rows for the proximate point ``U`` and columns for the target
``T``: ``P[U][T] = -1`` when ``U`` is proximate to ``T``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InputError, InvalidCluster, SingularN
from .hn import Violation

ROOT = "Root"
FREE = "Free"
SATELLITE = "Satellite"


# ----------------------------------------------------------------------
# exact matrices
# ----------------------------------------------------------------------
class ExactMatrix:
    """Dense immutable matrix of Fractions with row and column labels."""

    __slots__ = ("rows", "row_labels", "col_labels")

    def __init__(self, rows: Sequence[Sequence], row_labels=None, col_labels=None):
        rows = tuple(tuple(Fraction(v) for v in r) for r in rows)
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        row_labels = tuple(range(len(rows))) if row_labels is None else tuple(row_labels)
        col_labels = tuple(range(ncols)) if col_labels is None else tuple(col_labels)
        if len(row_labels) != len(rows) or len(col_labels) != ncols:
            raise ValueError("labels do not match dimensions")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "row_labels", row_labels)
        object.__setattr__(self, "col_labels", col_labels)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    @classmethod
    def identity(cls, n, labels=None):
        return cls([[int(i == j) for j in range(n)] for i in range(n)], labels, labels)

    @classmethod
    def diagonal(cls, values, labels=None):
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)],
                   labels, labels)

    @property
    def shape(self):
        return len(self.rows), len(self.col_labels)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, ExactMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"ExactMatrix({self.to_lists()!r})"

    def to_lists(self):
        return [list(r) for r in self.rows]

    def transpose(self):
        n, m = self.shape
        return ExactMatrix([[self.rows[i][j] for i in range(n)] for j in range(m)],
                           self.col_labels, self.row_labels)

    @property
    def T(self):
        return self.transpose()

    def __neg__(self):
        return ExactMatrix([[-v for v in r] for r in self.rows], self.row_labels, self.col_labels)

    def __add__(self, other):
        return ExactMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                           self.row_labels, self.col_labels)

    def __sub__(self, other):
        return self + (-other)

    def __matmul__(self, other):
        n, k = self.shape
        k2, m = other.shape
        if k != k2:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows)) if other.rows else [()] * m
        out = [[sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)) for c in cols]
               for r in self.rows]
        return ExactMatrix(out, self.row_labels, other.col_labels)

    def scale(self, c):
        c = Fraction(c)
        return ExactMatrix([[c * v for v in r] for r in self.rows], self.row_labels, self.col_labels)

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for r in self.rows for v in r)

    def is_symmetric(self) -> bool:
        return self.rows == self.transpose().rows

    def inverse(self) -> "ExactMatrix":
        """Gauss-Jordan inverse; raises ``ZeroDivisionError`` when singular."""
        n, m = self.shape
        if n != m:
            raise ValueError("inverse of a non-square matrix")
        aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self.rows)]
        for col in range(n):
            piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
            if piv is None:
                raise ZeroDivisionError("singular matrix")
            aug[col], aug[piv] = aug[piv], aug[col]
            inv = 1 / aug[col][col]
            aug[col] = [v * inv for v in aug[col]]
            for r in range(n):
                if r != col and aug[r][col] != 0:
                    f = aug[r][col]
                    aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
        return ExactMatrix([r[n:] for r in aug], self.col_labels, self.row_labels)

    def det(self) -> Fraction:
        n, m = self.shape
        if n != m:
            raise ValueError("determinant of a non-square matrix")
        a = [list(r) for r in self.rows]
        d = Fraction(1)
        for col in range(n):
            piv = next((r for r in range(col, n) if a[r][col] != 0), None)
            if piv is None:
                return Fraction(0)
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
                d = -d
            d *= a[col][col]
            for r in range(col + 1, n):
                if a[r][col] != 0:
                    f = a[r][col] / a[col][col]
                    a[r] = [x - f * y for x, y in zip(a[r], a[col])]
        return d

    def compact(self) -> str:
        """Single-line nested form such as ``[[-3,0,1],[0,-2,1]]``."""
        return "[" + ",".join("[" + ",".join(str(v) for v in r) + "]" for r in self.rows) + "]"

    def render(self, name: str | None = None) -> str:
        cells = [[str(v) for v in r] for r in self.rows]
        heads = [str(l) for l in self.col_labels]
        rl = [str(l) for l in self.row_labels]
        lw = max((len(s) for s in rl), default=0)
        widths = [max([len(heads[j])] + [len(r[j]) for r in cells]) for j in range(len(heads))]
        lines = [] if name is None else [f"{name}:"]
        lines.append(" " * (lw + 2) + "  ".join(h.rjust(w) for h, w in zip(heads, widths)))
        for lab, r in zip(rl, cells):
            lines.append(lab.rjust(lw) + " |" + "  ".join(v.rjust(w) for v, w in zip(r, widths)))
        return "\n".join(lines)


# ----------------------------------------------------------------------
# clusters
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class ClusterPoint:
    id: int
    parent: int | None
    prox: frozenset
    degree: int = 1


@dataclass(frozen=True)
class Cluster:
    points: tuple

    def __len__(self):
        return len(self.points)

    def __getitem__(self, i) -> ClusterPoint:
        return self.points[i]

    @property
    def ids(self):
        return tuple(pt.id for pt in self.points)

    @property
    def degrees(self):
        return tuple(pt.degree for pt in self.points)

    def children(self, i):
        return [pt.id for pt in self.points if pt.parent == i]

    def proximate_to(self, i):
        """Points ``U`` of the cluster with ``U`` proximate to ``i``."""
        return [pt.id for pt in self.points if i in pt.prox]

    @property
    def last(self) -> int:
        return self.points[-1].id


def make_cluster(spec: Iterable) -> Cluster:
    """Build from ``(parent, prox, degree)`` tuples in id order (degree optional)."""
    pts = []
    for i, entry in enumerate(spec):
        parent, prox, *rest = entry
        pts.append(ClusterPoint(i, parent, frozenset(prox), rest[0] if rest else 1))
    return Cluster(tuple(pts))


def cluster_validate(c: Cluster) -> list[Violation]:
    out: list[Violation] = []
    pts = c.points
    if not pts:
        return [Violation("empty", None, "cluster has no points")]
    for i, pt in enumerate(pts):
        if pt.id != i:
            out.append(Violation("ids", i, f"point at position {i} has id {pt.id}"))
    if out:
        return out
    for pt in pts:
        i = pt.id
        if not isinstance(pt.degree, int) or pt.degree < 1:
            out.append(Violation("degree", i, f"degree {pt.degree} is not a positive integer"))
        if i == 0:
            if pt.parent is not None or pt.prox or pt.degree != 1:
                out.append(Violation("root", 0, "root needs parent=none, prox=[] and degree 1"))
            continue
        if pt.parent is None:
            out.append(Violation("root", i, "second root"))
            continue
        if not 0 <= pt.parent < i:
            out.append(Violation("order", i, f"parent {pt.parent} does not precede the point"))
            continue
        if any(not (isinstance(s, int) and 0 <= s < i) for s in pt.prox):
            out.append(Violation("order", i, "proximity target does not precede the point"))
            continue
        if pt.parent not in pt.prox:
            out.append(Violation("parent-prox", i, "point is not proximate to its parent"))
        if len(pt.prox) > 2:
            out.append(Violation("prox-size", i, f"proximate to {len(pt.prox)} points"))
        for u in pt.prox - {pt.parent}:
            if u not in pts[pt.parent].prox:
                out.append(Violation("inherit", i, f"extra proximity target {u} not inherited from parent"))
        if len(pt.prox) == 2 and pt.degree != pts[pt.parent].degree:
            out.append(Violation("sat-degree", i, "satellite degree differs from its parent's"))
    if out:
        return out
    for pt in pts:
        for s in pt.prox - {pt.parent}:
            twins = [u for u in c.children(pt.parent) if s in pts[u].prox]
            if len(twins) > 1 and twins[0] == pt.id:
                out.append(Violation("twin", pt.id, f"two children of {pt.parent} proximate to {s}"))
    return out


def require_valid(c: Cluster):
    problems = cluster_validate(c)
    if problems:
        raise InvalidCluster("; ".join(str(v) for v in problems))


def classify_point(c: Cluster, i: int) -> str:
    if i == 0:
        return ROOT
    return FREE if len(c[i].prox) == 1 else SATELLITE


# ----------------------------------------------------------------------
# matrices
# ----------------------------------------------------------------------
def proximity_matrix(c: Cluster) -> ExactMatrix:
    n = len(c)
    rows = [[0] * n for _ in range(n)]
    for pt in c.points:
        rows[pt.id][pt.id] = 1
        for t in pt.prox:
            rows[pt.id][t] = -1
    return ExactMatrix(rows, c.ids, c.ids)


def degree_matrix(c: Cluster) -> ExactMatrix:
    return ExactMatrix.diagonal(c.degrees, c.ids)


def refined_proximity(c: Cluster) -> ExactMatrix:
    """Entries ``-deg(U)/deg(T)`` at proximities; equals ``Delta P Delta^-1``."""
    n = len(c)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for pt in c.points:
        rows[pt.id][pt.id] = Fraction(1)
        for t in pt.prox:
            rows[pt.id][t] = Fraction(-pt.degree, c[t].degree)
    return ExactMatrix(rows, c.ids, c.ids)


def total_proximity(c: Cluster) -> ExactMatrix:
    """Row ``U`` of ``P`` scaled by ``deg(U)``."""
    n = len(c)
    rows = [[0] * n for _ in range(n)]
    for pt in c.points:
        rows[pt.id][pt.id] = pt.degree
        for t in pt.prox:
            rows[pt.id][t] = -pt.degree
    return ExactMatrix(rows, c.ids, c.ids)


def intersection_matrix(c: Cluster) -> ExactMatrix:
    """``N = -P^t Delta P``."""
    P = proximity_matrix(c)
    return -(P.T @ degree_matrix(c) @ P)


def intersection_entries_direct(c: Cluster) -> ExactMatrix:
    """``N`` entry by entry from proximity relations and degrees alone."""
    n = len(c)
    rows = [[0] * n for _ in range(n)]
    for s in c.ids:
        rows[s][s] = -(c[s].degree + sum(c[u].degree for u in c.proximate_to(s)))
    for pt in c.points:
        t = pt.id
        for s in pt.prox:
            # the point on both E_s and E_t, if present, cancels the contribution
            cont = [u for u in c.children(t) if s in c[u].prox]
            val = 0 if cont else pt.degree
            rows[s][t] = rows[t][s] = val
    return ExactMatrix(rows, c.ids, c.ids)


def inverse_proximity(c: Cluster) -> ExactMatrix:
    """``Q = P^-1`` by forward substitution: row ``U`` is ``e_U`` plus the rows of its targets."""
    n = len(c)
    rows: list[list[int]] = []
    for pt in c.points:
        r = [0] * n
        r[pt.id] = 1
        for t in pt.prox:
            r = [a + b for a, b in zip(r, rows[t])]
        rows.append(r)
    return ExactMatrix(rows, c.ids, c.ids)


def curvette_gram(c: Cluster) -> ExactMatrix:
    """``M = Q Delta^-1 Q^t``; entry ``(T1, T2)`` is the intersection of curvettes at T1, T2."""
    Q = inverse_proximity(c)
    dinv = ExactMatrix.diagonal([Fraction(1, d) for d in c.degrees], c.ids)
    M = Q @ dinv @ Q.T
    N = intersection_matrix(c)
    try:
        neg_inv = -N.inverse()
    except ZeroDivisionError:
        raise SingularN("intersection matrix is singular") from None
    assert neg_inv == M, "curvette Gram matrix differs from -N^-1"
    return M


@dataclass(frozen=True)
class MatrixBundle:
    P: ExactMatrix
    Delta: ExactMatrix
    Pprime: ExactMatrix
    Ptilde: ExactMatrix
    N: ExactMatrix
    N_direct: ExactMatrix
    Q: ExactMatrix
    M: ExactMatrix

    @property
    def agree(self) -> bool:
        return self.N == self.N_direct


def all_matrices(c: Cluster) -> MatrixBundle:
    require_valid(c)
    P, D = proximity_matrix(c), degree_matrix(c)
    Pp, Pt = refined_proximity(c), total_proximity(c)
    assert Pt == D @ P
    assert Pp == D @ P @ D.inverse()
    return MatrixBundle(P, D, Pp, Pt, intersection_matrix(c), intersection_entries_direct(c),
                        inverse_proximity(c), curvette_gram(c))


# ----------------------------------------------------------------------
# cluster files
# ----------------------------------------------------------------------
_POINT_RE = re.compile(
    r"^\s*point\s+(?P<id>\d+)\s*:\s*parent\s*=\s*(?P<parent>none|\d+)\s*,"
    r"\s*prox\s*=\s*\[(?P<prox>[^\]]*)\]\s*,\s*deg\s*=\s*(?P<deg>\d+)\s*$")


def parse_cluster_text(text: str) -> Cluster:
    pts = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        m = _POINT_RE.match(raw)
        if not m:
            col = len(raw) - len(raw.lstrip()) + 1
            raise InputError("expected 'point <id>: parent=<id|none>, prox=[ids], deg=<n>'",
                             line=lineno, column=col)
        pid = int(m["id"])
        if pid != len(pts):
            raise InputError(f"expected point {len(pts)}, got {pid}", line=lineno,
                             column=m.start("id") + 1)
        prox_text = m["prox"].strip()
        try:
            prox = frozenset(int(s) for s in prox_text.split(",")) if prox_text else frozenset()
        except ValueError:
            raise InputError("proximity list must hold integers", line=lineno,
                             column=m.start("prox") + 1) from None
        parent = None if m["parent"] == "none" else int(m["parent"])
        pts.append(ClusterPoint(pid, parent, prox, int(m["deg"])))
    if not pts:
        raise InputError("cluster file has no points")
    c = Cluster(tuple(pts))
    problems = cluster_validate(c)
    if problems:
        raise InputError("invalid cluster: " + "; ".join(str(v) for v in problems))
    return c


def read_cluster_file(path) -> Cluster:
    with open(path, encoding="utf-8") as fh:
        return parse_cluster_text(fh.read())


def format_cluster_text(c: Cluster) -> str:
    lines = []
    for pt in c.points:
        parent = "none" if pt.parent is None else str(pt.parent)
        prox = ",".join(str(s) for s in sorted(pt.prox))
        lines.append(f"point {pt.id}: parent={parent}, prox=[{prox}], deg={pt.degree}")
    return "\n".join(lines) + "\n"
