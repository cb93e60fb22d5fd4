"""Built-in algebra catalog plus the JSON on-disk format.

Definition files look like

    {"name": "...", "dim": n, "basis": ["e1", ...],
     "brackets": [{"i": 0, "j": 1, "coeffs": {"2": "1"}}, ...],
     "matrix_rep": [[["0","1"],["0","0"]], ...]}            # optional

with rationals serialized as "p/q" strings and only i < j bracket pairs
allowed (omitted pairs are zero).  A raw "structure" tensor is accepted as
an alternative to "brackets" so that deliberately broken tensors can be fed
to the validator.  Catalog entries extend the schema with documented sample
covectors and declared ideals/complements; the directory named by
ORBITKIT_CATALOG_DIR is merged in at load time.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .liealg import LieAlgebra, validate
from .linalg import Matrix, ONE, Subspace, ZERO, basis_vector, frac, solve


class CatalogError(ValueError):
    """Definition file malformed or failing validation."""


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    algebra: LieAlgebra
    description: str = ""
    covectors: dict = field(default_factory=dict)    # name -> coordinate tuple
    ideals: dict = field(default_factory=dict)       # name -> Subspace
    complements: dict = field(default_factory=dict)  # name -> Subspace


def algebra_from_rep(name: str, labels, matrices) -> LieAlgebra:
    """Structure constants computed from a faithful matrix representation."""
    mats = [Matrix(m) for m in matrices]
    n = len(mats)
    flat_cols = Matrix([[x for row in m.entries for x in row] for m in mats]).transpose()
    brackets = {}
    for i in range(n):
        for j in range(i + 1, n):
            comm = mats[i] * mats[j] - mats[j] * mats[i]
            coords = solve(flat_cols, [x for row in comm.entries for x in row])
            if coords is None:
                raise CatalogError(f"{name}: commutator [{labels[i]},{labels[j]}] leaves the span")
            coeffs = {k: c for k, c in enumerate(coords) if c != 0}
            if coeffs:
                brackets[(i, j)] = coeffs
    return LieAlgebra.from_brackets(labels, brackets, name=name, matrix_rep=mats)


def _span(alg: LieAlgebra, indices) -> Subspace:
    return Subspace(alg.dim, [basis_vector(alg.dim, i) for i in indices])


def _heisenberg3() -> CatalogEntry:
    rep = [
        [[0, 1, 0], [0, 0, 0], [0, 0, 0]],
        [[0, 0, 0], [0, 0, 1], [0, 0, 0]],
        [[0, 0, 1], [0, 0, 0], [0, 0, 0]],
    ]
    alg = algebra_from_rep("heisenberg3", ("e1", "e2", "e3"), rep)
    return CatalogEntry(
        "heisenberg3", alg,
        "Heisenberg algebra: [e1,e2]=e3, center spanned by e3.",
        covectors={"center_dual": (0, 0, 1), "x_dual": (1, 0, 0)},
        ideals={"center": _span(alg, [2]), "plane": _span(alg, [1, 2])},
        complements={"xy_plane": _span(alg, [0, 1])},
    )


def _filiform4() -> CatalogEntry:
    alg = LieAlgebra.from_brackets(
        ("e1", "e2", "e3", "e4"),
        {(0, 1): {2: 1}, (0, 2): {3: 1}},
        name="filiform4",
    )
    return CatalogEntry(
        "filiform4", alg,
        "Filiform nilpotent algebra n4: [e1,e2]=e3, [e1,e3]=e4.",
        covectors={"top_dual": (0, 0, 0, 1), "mixed": (0, 0, 1, 1)},
        ideals={"center": _span(alg, [3]), "derived": _span(alg, [2, 3]),
                "big_abelian": _span(alg, [1, 2, 3])},
    )


def _abelian3() -> CatalogEntry:
    alg = LieAlgebra.from_brackets(("a1", "a2", "a3"), {}, name="abelian3")
    return CatalogEntry("abelian3", alg, "Abelian Q^3.",
                        covectors={"generic": (1, 2, 3)})


def _affine_line() -> CatalogEntry:
    rep = [[[1, 0], [0, 0]], [[0, 1], [0, 0]]]
    alg = algebra_from_rep("affine_line", ("a", "b"), rep)
    return CatalogEntry(
        "affine_line", alg,
        "Affine algebra of the line: [a,b]=b; exponential but not nilpotent.",
        covectors={"b_dual": (0, 1)},
        ideals={"translations": _span(alg, [1])},
        complements={"dilation": _span(alg, [0])},
    )


def _euclid2() -> CatalogEntry:
    rep = [
        [[0, -1, 0], [1, 0, 0], [0, 0, 0]],
        [[0, 0, 1], [0, 0, 0], [0, 0, 0]],
        [[0, 0, 0], [0, 0, 1], [0, 0, 0]],
    ]
    alg = algebra_from_rep("euclid2", ("j", "p1", "p2"), rep)
    return CatalogEntry(
        "euclid2", alg,
        "Euclidean algebra e(2): rotation j against translations p1, p2.",
        covectors={"momentum": (0, 1, 0), "rotation_dual": (1, 0, 0)},
        ideals={"translations": _span(alg, [1, 2])},
        complements={"rotation": _span(alg, [0])},
    )


def _sl2() -> CatalogEntry:
    rep = [
        [[1, 0], [0, -1]],
        [[0, 1], [0, 0]],
        [[0, 0], [1, 0]],
    ]
    alg = algebra_from_rep("sl2", ("h", "e", "f"), rep)
    return CatalogEntry(
        "sl2", alg,
        "sl(2,Q) with standard basis h, e, f.",
        covectors={"hyperbolic_dual": (2, 0, 0), "nilpotent_dual": (0, 0, 1)},
    )


def _sl3() -> CatalogEntry:
    def unit(i, j):
        m = [[0] * 3 for _ in range(3)]
        m[i][j] = 1
        return m

    h1 = [[1, 0, 0], [0, -1, 0], [0, 0, 0]]
    h2 = [[0, 0, 0], [0, 1, 0], [0, 0, -1]]
    labels = ("h1", "h2", "e12", "e21", "e13", "e31", "e23", "e32")
    rep = [h1, h2, unit(0, 1), unit(1, 0), unit(0, 2), unit(2, 0), unit(1, 2), unit(2, 1)]
    alg = algebra_from_rep("sl3", labels, rep)
    return CatalogEntry(
        "sl3", alg,
        "sl(3,Q): Cartan h1, h2 plus the six root vectors.",
    )


_ETA = (1, -1, -1, -1)


def _lorentz_generators():
    # (M_ab) r_nu = eta_b delta_{b nu} e_a - eta_a delta_{a nu} e_b
    labels, mats = [], []
    for a in range(4):
        for b in range(a + 1, 4):
            m = [[0] * 4 for _ in range(4)]
            m[a][b] = _ETA[b]
            m[b][a] = -_ETA[a]
            labels.append(f"m{a}{b}")
            mats.append(m)
    return labels, mats


def _so31() -> CatalogEntry:
    labels, mats = _lorentz_generators()
    alg = algebra_from_rep("so31", tuple(labels), mats)
    return CatalogEntry(
        "so31", alg,
        "Lorentz algebra so(3,1) with metric diag(1,-1,-1,-1).",
        covectors={"boost_dual": (1, 0, 0, 0, 0, 0)},
    )


def _poincare() -> CatalogEntry:
    lor_labels, lor_mats = _lorentz_generators()
    labels = tuple(lor_labels) + ("p0", "p1", "p2", "p3")
    mats = []
    for m in lor_mats:
        big = [row + [0] for row in m] + [[0] * 5]
        mats.append(big)
    for a in range(4):
        big = [[0] * 5 for _ in range(5)]
        big[a][4] = 1
        mats.append(big)
    alg = algebra_from_rep("poincare", labels, mats)
    return CatalogEntry(
        "poincare", alg,
        "Poincare algebra so(3,1) |x R^{3,1}; translations p0..p3 form the abelian ideal.",
        covectors={
            "timelike": (0, 0, 0, 0, 0, 0, 1, 0, 0, 0),
            "timelike_spinning": (0, 0, 0, 1, 0, 0, 1, 0, 0, 0),
            "lightlike": (0, 0, 0, 0, 0, 0, 1, 1, 0, 0),
            "spacelike": (0, 0, 0, 0, 0, 0, 0, 1, 0, 0),
            "zero_momentum": (0, 0, 0, 1, 0, 0, 0, 0, 0, 0),
        },
        ideals={"translations": _span_range(10, 6, 10)},
        complements={"lorentz": _span_range(10, 0, 6)},
    )


def _span_range(n, lo, hi):
    return Subspace(n, [basis_vector(n, i) for i in range(lo, hi)])


_BUILDERS = (
    _abelian3,
    _heisenberg3,
    _filiform4,
    _affine_line,
    _euclid2,
    _sl2,
    _sl3,
    _so31,
    _poincare,
)


@lru_cache(maxsize=1)
def _builtin_catalog_cached() -> dict:
    entries = {}
    for build in _BUILDERS:
        entry = build()
        report = validate(entry.algebra)
        if not report.ok:
            raise AssertionError(f"catalog entry {entry.name} fails validation")
        entries[entry.name] = entry
    return entries


def builtin_catalog() -> dict:
    return dict(_builtin_catalog_cached())


def load_catalog() -> dict:
    """Built-ins merged with any entries from ORBITKIT_CATALOG_DIR."""
    entries = builtin_catalog()
    extra_dir = os.environ.get("ORBITKIT_CATALOG_DIR")
    if extra_dir and os.path.isdir(extra_dir):
        for fname in sorted(os.listdir(extra_dir)):
            if not fname.endswith(".json"):
                continue
            entry = load_entry_file(os.path.join(extra_dir, fname))
            entries[entry.name] = entry
    return entries


# ---------------------------------------------------------------------------
# JSON format


def _rat(s) -> Fraction:
    try:
        return frac(s)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise CatalogError(f"bad rational literal {s!r}: {exc}") from None


def parse_algebra(doc: dict, source: str = "<input>") -> LieAlgebra:
    try:
        name = doc.get("name", source)
        dim = doc["dim"]
        labels = tuple(doc["basis"])
    except (KeyError, TypeError) as exc:
        raise CatalogError(f"{source}: missing field {exc}") from None
    if len(labels) != dim:
        raise CatalogError(f"{source}: basis has {len(labels)} labels for dim {dim}")
    rep = None
    if doc.get("matrix_rep") is not None:
        rep = [Matrix([[_rat(x) for x in row] for row in m]) for m in doc["matrix_rep"]]
        if len(rep) != dim:
            raise CatalogError(f"{source}: matrix_rep must list one matrix per basis element")
    if "structure" in doc:
        raw = doc["structure"]
        tensor = tuple(
            tuple(tuple(_rat(x) for x in row) for row in plane) for plane in raw
        )
        return LieAlgebra(dim, labels, tensor, tuple(rep) if rep else None, name)
    brackets = {}
    for item in doc.get("brackets", ()):
        i, j = item["i"], item["j"]
        if not (0 <= i < j < dim):
            raise CatalogError(f"{source}: bracket pair ({i},{j}) violates 0 <= i < j < dim")
        if (i, j) in brackets:
            raise CatalogError(f"{source}: duplicate bracket pair ({i},{j})")
        brackets[(i, j)] = {int(k): _rat(v) for k, v in item["coeffs"].items()}
        if any(not (0 <= k < dim) for k in brackets[(i, j)]):
            raise CatalogError(f"{source}: coefficient index out of range in pair ({i},{j})")
    return LieAlgebra.from_brackets(labels, brackets, name=name,
                                    matrix_rep=rep)


def _parse_subspace(alg: LieAlgebra, spec, source: str) -> Subspace:
    if isinstance(spec, dict) and "rows" in spec:
        return Subspace(alg.dim, [[_rat(x) for x in row] for row in spec["rows"]])
    if isinstance(spec, list) and all(isinstance(i, int) for i in spec):
        return Subspace(alg.dim, [basis_vector(alg.dim, i) for i in spec])
    raise CatalogError(f"{source}: subspace must be an index list or {{'rows': ...}}")


def parse_entry(doc: dict, source: str = "<input>") -> CatalogEntry:
    alg = parse_algebra(doc, source)
    report = validate(alg)
    if not report.ok:
        bad = (report.antisymmetry_failures or
               [t[:3] for t in report.jacobi_failures] or report.rep_failures)
        raise CatalogError(f"{source}: algebra fails validation at triple {bad[0]!r}")
    covectors = {
        key: tuple(_rat(x) for x in coords)
        for key, coords in doc.get("covectors", {}).items()
    }
    ideals = {
        key: _parse_subspace(alg, spec, source)
        for key, spec in doc.get("ideals", {}).items()
    }
    complements = {
        key: _parse_subspace(alg, spec, source)
        for key, spec in doc.get("complements", {}).items()
    }
    return CatalogEntry(alg.name, alg, doc.get("description", ""),
                        covectors, ideals, complements)


def load_entry_file(path: str) -> CatalogEntry:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CatalogError(f"{path}: {exc}") from None
    return parse_entry(doc, source=path)


def algebra_to_doc(alg: LieAlgebra) -> dict:
    brackets = []
    for i in range(alg.dim):
        for j in range(i + 1, alg.dim):
            coeffs = {
                str(k): str(alg.structure[i][j][k])
                for k in range(alg.dim)
                if alg.structure[i][j][k] != 0
            }
            if coeffs:
                brackets.append({"i": i, "j": j, "coeffs": coeffs})
    doc = {
        "name": alg.name,
        "dim": alg.dim,
        "basis": list(alg.labels),
        "brackets": brackets,
    }
    if alg.matrix_rep is not None:
        doc["matrix_rep"] = [
            [[str(x) for x in row] for row in m.entries] for m in alg.matrix_rep
        ]
    return doc


def entry_to_doc(entry: CatalogEntry) -> dict:
    doc = algebra_to_doc(entry.algebra)
    doc["description"] = entry.description
    doc["covectors"] = {k: [str(x) for x in v] for k, v in entry.covectors.items()}
    doc["ideals"] = {
        k: {"rows": [[str(x) for x in row] for row in s.basis_rows()]}
        for k, s in entry.ideals.items()
    }
    doc["complements"] = {
        k: {"rows": [[str(x) for x in row] for row in s.basis_rows()]}
        for k, s in entry.complements.items()
    }
    return doc
