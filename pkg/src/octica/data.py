"""Loader for the bundled constant tables.

Everything transcribed or derived once (Gram matrices, the named
anti-involutions and isometries, fixed-lattice bases, reference chambers,
diagram shapes, cusp data) lives in a single versioned JSON file shipped
with the package.  Loading is strict: a missing or malformed file is a
configuration error, and every report prints the file's checksum so
transcription problems stay auditable.
"""

from __future__ import annotations

import hashlib
import json
import os
from functools import lru_cache

from .fixed_points import ZQuadraticLattice
from .lattices import AntiIsometry, HermitianGaussLattice, Isometry, gmat
from .scalars import GaussInt

DEFAULT_BASENAME = "builtin_data.json"

LATTICE_NAMES = ("lambda", "lz")
CHI_NAMES = ("chi0", "chi1", "chi2", "chi3", "chi4", "chiII")
ISOM_NAMES = ("A0", "A1", "A2", "A3", "A4")
BASIS_NAMES = ("B0", "B1", "B2", "B3", "B4")
ZGRAM_NAMES = ("L0", "L1", "L2", "L3", "L4")


class DataError(RuntimeError):
    """Missing or inconsistent bundled data (CLI exit code 2)."""


def default_path():
    return os.path.join(os.path.dirname(__file__), DEFAULT_BASENAME)


@lru_cache(maxsize=8)
def load(path=None):
    """Parse the data file once; returns a Dataset."""
    path = path or default_path()
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise DataError(f"cannot read data file {path}: {exc}") from exc
    try:
        obj = json.loads(raw)
    except ValueError as exc:
        raise DataError(f"data file {path} is not valid JSON: {exc}") from exc
    return Dataset(obj, hashlib.sha256(raw).hexdigest(), path)


def _gvec(entries):
    return tuple(GaussInt(re, im) for re, im in entries)


class Dataset:
    def __init__(self, obj, checksum, path):
        self.raw = obj
        self.checksum = checksum
        self.path = path
        try:
            self.version = obj["version"]
        except KeyError as exc:
            raise DataError("data file lacks a version field") from exc

    def _section(self, *keys):
        cur = self.raw
        for k in keys:
            try:
                cur = cur[k]
            except (KeyError, TypeError) as exc:
                raise DataError(f"data file lacks entry {'.'.join(keys)}") from exc
        return cur

    def lattice(self, name):
        if name not in LATTICE_NAMES:
            raise DataError(f"unknown lattice name {name!r}")
        return HermitianGaussLattice(self._section("lattices", name, "gram"))

    def anti_involution(self, name):
        if name == "chiII":
            name = "chi2"
        if name not in CHI_NAMES:
            raise DataError(f"unknown anti-involution name {name!r}")
        return AntiIsometry(self._section("anti_involutions", name))

    def isometry(self, name):
        if name not in ISOM_NAMES:
            raise DataError(f"unknown isometry name {name!r}")
        return Isometry(self._section("isometries", name))

    def fixed_basis(self, name):
        if name not in BASIS_NAMES:
            raise DataError(f"unknown basis name {name!r}")
        return [_gvec(col) for col in self._section("fixed_bases", name)]

    def fixed_gram(self, name):
        if name not in ZGRAM_NAMES:
            raise DataError(f"unknown fixed-lattice name {name!r}")
        return self._section("fixed_grams", name)

    def fixed_zlattice(self, i):
        """L_i as a ZQuadraticLattice embedded in the ambient lattice."""
        basis = self.fixed_basis(f"B{i}")
        gram = self.fixed_gram(f"L{i}")
        return ZQuadraticLattice(gram, embedding=basis, ambient=self.lattice("lambda"))

    def diagram(self, i):
        from .vinberg import CoxeterDiagram
        obj = self._section("diagrams", f"L{i}")
        return CoxeterDiagram([nd["norm"] for nd in obj["nodes"]],
                              [(e["i"], e["j"], e["bond"]) for e in obj["edges"]])

    def chamber(self, i):
        """Reference chamber data for L2 / L3: labeled roots and the
        norm-ignoring symmetry pairing."""
        obj = self._section("chambers", f"L{i}")
        roots = {k: tuple(v) for k, v in obj["roots_fix"].items()}
        pairing = dict(obj["pairing"])
        return roots, pairing

    def chamber_lambda_matrix(self, i):
        obj = self._section("chambers", f"L{i}")
        return {k: _gvec(v) for k, v in obj["roots_lambda"].items()}

    def type_two_witness(self):
        return gmat(self._section("type_two", "witness"))

    def cusp(self, key):
        obj = self._section("cusp", key)
        if key in ("kappa1", "kappa3"):
            return AntiIsometry(obj)
        if key in ("glue_A1", "glue_A2"):
            return gmat(obj)
        if key in ("u1", "u2", "v1", "v2", "v3"):
            return _gvec(obj)
        return obj

    def antipodal_twin(self):
        """An involutive anti-isometry with the same mod-2 invariants as
        chi4 but no nodal vector; the negative control for the wall test."""
        return AntiIsometry(self._section("anti_involutions", "antipodal"))

    def vinberg_controls(self, i):
        obj = self._section("vinberg", f"L{i}")
        return obj["v0"], tuple(obj["allowed_norms"]), obj["expected_count"]
