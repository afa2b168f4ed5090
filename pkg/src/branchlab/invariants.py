"""Characteristic indices and the sequences derived from them."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import InfiniteCharacteristicColumn
from .exact_algebra import INF
from .hn import HNTableau


@dataclass(frozen=True)
class CharData:
    indices: tuple
    ch_seq: tuple  # (d_1, q_1, ..., q_h)
    div_seq: tuple  # (d_1, ..., d_{h+1})
    n_seq: tuple
    sg_seq: tuple  # (r_0, ..., r_h)

    @property
    def h(self) -> int:
        return len(self.indices)

    @property
    def q(self) -> tuple:
        return self.ch_seq[1:]


def characteristic_indices(t: HNTableau) -> tuple:
    """Columns ``i`` with ``i == 1`` or ``c_{i+1} < c_i`` (``c_{l+1}`` read as 0)."""
    cs = list(t.c) + [0]
    out = [1]
    for i in range(2, len(t) + 1):
        nxt, cur = cs[i], cs[i - 1]
        if cur == INF:
            continue
        if nxt != INF and nxt < cur:
            out.append(i)
    last = out[-1]
    assert all(c == 1 for c in t.c[last:]), "c must be 1 past the last characteristic index"
    return tuple(out)


def characteristic_data(t: HNTableau) -> CharData:
    idx = characteristic_indices(t)
    for i in range(1, idx[-1] + 1):
        col = t.columns[i - 1]
        if col.degenerate:
            raise InfiniteCharacteristicColumn(f"column {i} has an infinite entry")
    ps, cs = t.p, t.c
    q = []
    prev = 0
    for i in idx:
        q.append(sum(ps[prev:i]))
        prev = i
    d = [cs[i - 1] for i in idx]
    d.append(gcd(d[-1], q[-1]))
    n = [d[k] // d[k + 1] for k in range(len(idx))]
    r = [d[0]]
    for i in range(1, len(idx) + 1):
        num = sum(q[j] * d[j] for j in range(i))
        assert num % d[i - 1] == 0
        r.append(num // d[i - 1])
    return CharData(idx, (d[0], *q), tuple(d), tuple(n), tuple(r))


def chardata_problems(cd: CharData) -> list[str]:
    """Check the internal laws of a ``CharData``; empty when consistent."""
    out = []
    d, q, n, r = cd.div_seq, cd.q, cd.n_seq, cd.sg_seq
    if cd.indices[0] != 1:
        out.append("first characteristic index is not 1")
    if d[-1] != 1:
        out.append(f"d_(h+1) = {d[-1]} != 1")
    for i in range(1, len(d)):
        if d[i] != gcd(d[i - 1], q[i - 1]):
            out.append(f"d_{i + 1} != gcd(d_{i}, q_{i})")
    for i in range(1, len(d) - 1):
        if not d[i] > d[i + 1]:
            out.append(f"d_{i + 1} <= d_{i + 2}")
    if cd.h >= 2 and d[0] == d[1] and not (q[0] % d[0] == 0 or d[0] % q[0] == 0):
        out.append("d_1 = d_2 but neither of d_1, q_1 divides the other")
    for i, ni in enumerate(n):
        if ni * d[i + 1] != d[i]:
            out.append(f"n_{i + 1} != d_{i + 1}/d_{i + 2}")
    g = d[0]
    for qi in q:
        g = gcd(g, qi)
    if g != 1:
        out.append(f"gcd(d_1, q) = {g}")
    if r[0] != d[0] or (len(r) > 1 and r[1] != q[0]):
        out.append("r_0 != d_1 or r_1 != q_1")
    for i in range(2, len(r)):
        if r[i] != n[i - 2] * r[i - 1] + q[i - 1]:
            out.append(f"r_{i} != n_{i - 1} r_{i - 1} + q_{i}")
    return out


def render_chardata(cd: CharData) -> str:
    def row(v):
        return " ".join(str(x) for x in v)

    ch = f"{cd.ch_seq[0]}; {', '.join(str(x) for x in cd.q)}"
    return "\n".join([
        f"char-indices: {row(cd.indices)}",
        f"h: {cd.h}",
        f"Ch: ({ch})",
        f"d: {row(cd.div_seq)}",
        f"n: {row(cd.n_seq)}",
        f"r: {row(cd.sg_seq)}",
    ])
