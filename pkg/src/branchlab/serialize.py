"""JSON forms of tableaux, characteristic data, clusters and matrices.

Every number is written as an exact string (``"13"``, ``"-1/2"``, ``"inf"``)
so that documents round-trip without loss.
"""
from __future__ import annotations

import json
from fractions import Fraction

from .branch import Branch, make_branch
from .cluster import Cluster, ClusterPoint, ExactMatrix, MatrixBundle
from .exact_algebra import INF, FieldSpec, format_poly, parse_field, parse_poly
from .hn import Column, HNTableau
from .invariants import CharData


def num_str(v, field: FieldSpec | None = None) -> str:
    if v == INF:
        return "inf"
    if field is not None and not isinstance(v, bool):
        return field.format(v)
    return str(v)


def parse_num(s: str):
    """Natural number, Fraction or ``INF`` from its exact string."""
    if s == "inf":
        return INF
    v = Fraction(s)
    return int(v) if v.denominator == 1 else v


def _int_or_inf(s: str):
    v = parse_num(s)
    if v != INF and not isinstance(v, int):
        raise ValueError(f"expected an integer or inf, got {s!r}")
    return v


# tableaux ---------------------------------------------------------------
def tableau_to_json(t: HNTableau) -> dict:
    return {
        "field": str(t.field),
        "columns": [[num_str(col.p), num_str(col.c), num_str(col.a, t.field)] for col in t.columns],
        "m": [str(m) for m in t.m_list],
        "terminated": t.terminated,
    }


def tableau_from_json(doc: dict) -> HNTableau:
    field = parse_field(doc["field"])
    cols = []
    for p, c, a in doc["columns"]:
        a_val = INF if a == "inf" else field.parse_element(a)
        cols.append(Column(_int_or_inf(p), _int_or_inf(c), a_val))
    return HNTableau(tuple(cols), tuple(int(m) for m in doc["m"]), field,
                     bool(doc.get("terminated", True)))


# characteristic data ----------------------------------------------------
def chardata_to_json(cd: CharData) -> dict:
    def strs(v):
        return [str(x) for x in v]

    return {"indices": strs(cd.indices), "h": str(cd.h), "Ch": strs(cd.ch_seq),
            "d": strs(cd.div_seq), "n": strs(cd.n_seq), "r": strs(cd.sg_seq)}


def chardata_from_json(doc: dict) -> CharData:
    def ints(key):
        return tuple(int(x) for x in doc[key])

    return CharData(ints("indices"), ints("Ch"), ints("d"), ints("n"), ints("r"))


# matrices and clusters --------------------------------------------------
def matrix_to_json(m: ExactMatrix) -> list:
    return [[str(v) for v in row] for row in m.rows]


def matrix_from_json(rows: list, labels=None) -> ExactMatrix:
    return ExactMatrix([[Fraction(v) for v in row] for row in rows], labels, labels)


def cluster_to_json(c: Cluster) -> dict:
    return {"points": [
        {"id": str(pt.id), "parent": None if pt.parent is None else str(pt.parent),
         "prox": [str(s) for s in sorted(pt.prox)], "deg": str(pt.degree)}
        for pt in c.points]}


def cluster_from_json(doc: dict) -> Cluster:
    return Cluster(tuple(
        ClusterPoint(int(p["id"]), None if p["parent"] is None else int(p["parent"]),
                     frozenset(int(s) for s in p["prox"]), int(p["deg"]))
        for p in doc["points"]))


MATRIX_KEYS = ("P", "Delta", "Pprime", "Ptilde", "N", "Q", "M")


def bundle_to_json(bundle: MatrixBundle) -> dict:
    doc = {key: matrix_to_json(getattr(bundle, key)) for key in MATRIX_KEYS}
    doc["labels"] = [str(l) for l in bundle.P.row_labels]
    doc["N_direct"] = matrix_to_json(bundle.N_direct)
    doc["N_agree"] = bundle.agree
    return doc


def bundle_from_json(doc: dict) -> MatrixBundle:
    labels = [int(l) for l in doc["labels"]]
    mats = {key: matrix_from_json(doc[key], labels) for key in MATRIX_KEYS}
    return MatrixBundle(mats["P"], mats["Delta"], mats["Pprime"], mats["Ptilde"], mats["N"],
                        matrix_from_json(doc["N_direct"], labels), mats["Q"], mats["M"])


# branches ---------------------------------------------------------------
def branch_to_json(b: Branch) -> dict:
    return {"field": str(b.field), "x": format_poly(b.x), "y": format_poly(b.y)}


def branch_from_json(doc: dict) -> Branch:
    field = parse_field(doc["field"])
    return make_branch(parse_poly(doc["x"], field), parse_poly(doc["y"], field), field)


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=False)
