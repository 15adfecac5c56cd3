"""The one-shot reproduction report: every headline computation re-run and
compared against its expected value.

Checks are small named callables returning (expected, computed); they pass
iff the two agree.  The runner may execute independent checks concurrently,
but output ordering is fixed by check id and the serialized forms contain no
timing data by default, so identical invocations produce identical bytes.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import data as data_mod
from .fixed_points import fix_lattice, sublattice_index, verify_paper_basis
from .lattices import check_anti_involution, check_isometry, gmat_vec
from .mod2 import (AMBIGUOUS, F2QuadraticSpace, WModel, classify_octic_type,
                   induced_involution, involution_invariants, o_vq_order,
                   s8_invariants, s8_table, CYCLE_TYPES)
from .stabilizer import (classify_stab_element, discriminant_wall_scan,
                         solve_type_two, stab_structure)
from .vinberg import (allowed_norms_for, coxeter_diagram, diagram_symmetries,
                      diagrams_isomorphic, finite_volume_check,
                      fundamental_roots)


@dataclass
class CheckResult:
    check_id: str
    anchor: str
    expected: str
    computed: str
    passed: bool
    runtime: float = 0.0


@dataclass
class ReproductionReport:
    results: list = field(default_factory=list)
    data_checksum: str = ""
    data_version: int = 0

    @property
    def passed(self):
        return all(r.passed for r in self.results)

    def to_json(self, timings=False):
        obj = {
            "data_checksum": self.data_checksum,
            "data_version": self.data_version,
            "overall": "pass" if self.passed else "fail",
            "checks": [{
                "id": r.check_id,
                "anchor": r.anchor,
                "expected": r.expected,
                "computed": r.computed,
                "status": "pass" if r.passed else "fail",
                **({"runtime_s": round(r.runtime, 3)} if timings else {}),
            } for r in self.results],
        }
        return json.dumps(obj, sort_keys=True, indent=1) + "\n"

    def to_text(self, timings=False):
        lines = [f"data file version {self.data_version}  "
                 f"sha256 {self.data_checksum}"]
        for r in self.results:
            status = "PASS" if r.passed else "FAIL"
            extra = f"  [{r.runtime:.2f}s]" if timings else ""
            lines.append(f"[{status}] {r.check_id}: expected {r.expected}, "
                         f"computed {r.computed}{extra}")
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'} "
                     f"({sum(r.passed for r in self.results)}/"
                     f"{len(self.results)} checks)")
        return "\n".join(lines) + "\n"

    def to_csv(self):
        lines = ["check_id,anchor,expected,computed,status"]
        for r in self.results:
            fields = [r.check_id, r.anchor, r.expected, r.computed,
                      "pass" if r.passed else "fail"]
            lines.append(",".join('"%s"' % f.replace('"', '""') for f in fields))
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# check registry

def _check_signatures(ds):
    lam = ds.lattice("lambda")
    lz = ds.lattice("lz")
    got = f"{lam.signature()} and {lz.signature()}"
    return "(1, 5) and (0, 2)", got, got == "(1, 5) and (0, 2)"


def _check_fixed_basis(ds, i):
    L = ds.lattice("lambda")
    chi = ds.anti_involution(f"chi{i}")
    rep = verify_paper_basis(L, chi, ds.fixed_basis(f"B{i}"),
                             ds.fixed_gram(f"L{i}"))
    got = "all checks pass" if rep["ok"] else "; ".join(rep["failures"])
    return "columns fixed, Gram exact, index 1", got, rep["ok"]


def _run_vinberg(ds, i):
    fix = ds.fixed_zlattice(i)
    v0, norms, _count = ds.vinberg_controls(i)
    roots = fundamental_roots(fix, norms, v0, stop=("volume",))
    return fix, roots


def _check_vinberg_diagram(ds, i):
    fix, roots = _run_vinberg(ds, i)
    diag = coxeter_diagram(fix.gram, roots)
    target = ds.diagram(i)
    expected_count = len(target)
    ok = (len(roots) == expected_count
          and diagrams_isomorphic(diag, target, respect_norms=True)
          and finite_volume_check(diag, 5))
    got = ("reproduced" if ok else f"{len(roots)} walls, "
           f"isomorphic={diagrams_isomorphic(diag, target)}")
    return (f"{expected_count} walls, diagram isomorphic, finite volume",
            got, ok)


def _check_symmetries(ds):
    expected = "norm-respecting: none; norm-ignoring: only L2 and L3, one each"
    got = []
    for i in range(5):
        diag = ds.diagram(i)
        strict = [s for s in diagram_symmetries(diag, True) if not s.is_identity()]
        loose = [s for s in diagram_symmetries(diag, False) if not s.is_identity()]
        got.append((i, len(strict), len(loose)))
    ok = all(s == 0 for _, s, _ in got) and \
        [l for _, _, l in got] == [0, 0, 1, 1, 0]
    return expected, "reproduced" if ok else str(got), ok


def _check_l2_relation(ds):
    roots, _ = ds.chamber(2)
    lhs = roots["r7"]
    rhs = [roots["r2"][k] + 2 * roots["r3"][k] - roots["r4"][k]
           - roots["r5"][k] + roots["r6"][k] for k in range(6)]
    ok = list(lhs) == rhs
    return "r7 = r2 + 2 r3 - r4 - r5 + r6", "holds" if ok else "fails", ok


def _check_mod2_invariants(ds):
    space = F2QuadraticSpace(ds.lattice("lambda"))
    expected = [(6, 28), (5, 16), (4, 8), (3, 4), (4, 4)]
    got = []
    for i in range(5):
        phi = induced_involution(space, ds.anti_involution(f"chi{i}"))
        got.append(involution_invariants(space, phi))
    return str(expected), str(got), got == expected


def _check_norm_one_count(ds):
    space = F2QuadraticSpace(ds.lattice("lambda"))
    n = len(space.norm_one)
    return "28", str(n), n == 28


def _check_s8_table(ds):
    space = F2QuadraticSpace(ds.lattice("lambda"))
    rows_ok = True
    for typ, (t, f) in CYCLE_TYPES.items():
        dim, ones, fixed_even = s8_invariants((t, f))
        phi = induced_involution(space, ds.anti_involution(f"chi{typ}"))
        if (dim, ones) != involution_invariants(space, phi):
            rows_ok = False
    _, _, fixed_even = s8_invariants((1, 6))
    ok = rows_ok and fixed_even == 64
    return "table matches; intermediate count 2 x 32", \
        ("reproduced" if ok else "mismatch"), ok


def _check_types(ds):
    space = F2QuadraticSpace(ds.lattice("lambda"))
    got = []
    for i in range(5):
        phi = induced_involution(space, ds.anti_involution(f"chi{i}"))
        got.append(classify_octic_type(involution_invariants(space, phi)))
    expected = [0, 1, 2, 3, AMBIGUOUS]
    return str(expected), str(got), got == expected


def _check_ovq(ds):
    space = F2QuadraticSpace(ds.lattice("lambda"))
    order, elements = o_vq_order(space, with_elements=True)
    model = WModel(space)
    order2, transported = model.transported_group_order()
    same = transported == elements
    ok = order == 40320 and order2 == 40320 and same
    return "order 40320, subsets model coincides", \
        (f"order {order}, transported {order2}, "
         f"{'coincide' if same else 'differ'}"), ok


def _check_type_two_chi2(ds):
    L = ds.lattice("lambda")
    roots, pairing = ds.chamber(2)
    res = solve_type_two(L, ds.anti_involution("chi2"), ds.fixed_zlattice(2),
                         roots, pairing)
    if res.witness is not None:
        return "no element; certificate 2 r3 = r4", "witness found", False
    rel = {k: abs(v) for k, v in (res.forced_relation or {}).items()}
    ok = rel == {"r3": 2, "r4": 1}
    return "no element; certificate 2 r3 = r4", \
        ("no element; certificate 2 r3 = r4" if ok
         else f"no element; certificate {res.certificate}"), ok


def _check_type_two_chi3(ds):
    L = ds.lattice("lambda")
    chi3 = ds.anti_involution("chi3")
    roots, pairing = ds.chamber(3)
    res = solve_type_two(L, chi3, ds.fixed_zlattice(3), roots, pairing)
    if res.witness is None:
        return "integral witness of projective order two", res.certificate, False
    w = res.witness
    ok_iso, _ = check_isometry(L, w.matrix)
    elem = classify_stab_element(L, chi3, w.matrix)
    stored = ds.type_two_witness()
    ok = ok_iso and elem.type == "II" and w.square_scalar.is_unit() \
        and w.matrix == stored
    return "integral witness of projective order two", \
        (f"witness found (isometry={ok_iso}, type {elem.type}, "
         f"T^2 = {w.square_scalar} * id, matches bundled: "
         f"{w.matrix == stored})"), ok


def _check_stab_structure(ds):
    got = ", ".join(stab_structure(i, ds).verdict for i in range(5))
    want = "equal, equal, equal, semidirect, equal"
    return want, got, got == want


def _check_wall(ds):
    L = ds.lattice("lambda")
    fix, roots = _run_vinberg(ds, 4)
    walls = discriminant_wall_scan(L, fix, [r.coords for r in roots])
    return "exactly one root of the form (1+i) w with q(w) = -2", \
        f"{len(walls)} such roots", len(walls) == 1


def _check_wall_negative(ds):
    L = ds.lattice("lambda")
    twin = ds.antipodal_twin()
    fix = fix_lattice(L, twin)
    roots = fundamental_roots(fix, stop=("volume",))
    walls = discriminant_wall_scan(L, fix, [r.coords for r in roots])
    diag_ok = diagrams_isomorphic(coxeter_diagram(fix.gram, roots),
                                  ds.diagram(4))
    return "twin chamber: same diagram, zero walls", \
        f"isomorphic={diag_ok}, {len(walls)} walls", \
        diag_ok and len(walls) == 0


def _check_cone(ds):
    from .cusp_cone import (conjugacy_classes, enumerate_anti_involutions,
                            glue_cone, wedge_quotient)
    lz = ds.lattice("lz")
    kappa1 = ds.cusp("kappa1")
    kappa3 = ds.cusp("kappa3")
    group, aai = enumerate_anti_involutions(lz, kappa1)
    classes = conjugacy_classes(group, aai)
    u1, u2 = ds.cusp("u1"), ds.cusp("u2")
    v2, v3 = ds.cusp("v2"), ds.cusp("v3")
    fix1 = fix_lattice(lz, kappa1)
    w1 = wedge_quotient(lz, group, kappa1,
                        edges=_fix_coords_pair(fix1, u1, u2))
    fix3 = fix_lattice(lz, kappa3)
    w3 = wedge_quotient(lz, group, kappa3,
                        edges=_fix_coords_pair(fix3, v3, v2))
    a1, a2 = ds.cusp("glue_A1"), ds.cusp("glue_A2")
    cone = glue_cone(lz, group, w1, w3, required_witnesses=[a1, a2])
    ok_wit = (gmat_vec(a1, v3) == tuple(u1) and gmat_vec(a2, v2) == tuple(u2)
              and a1 in group and a2 in group)
    facts = (len(group), len(aai), len(classes),
             sorted(len(c) for c in classes),
             w1.angle, w3.angle, cone.total_angle, ok_wit,
             cone.is_orbifold_point())
    expected = "(96, 36, 2, [12, 24], Fraction(1, 2), Fraction(1, 4), " \
               "Fraction(3, 4), True, False)"
    return expected, str(facts), str(facts) == expected


def _fix_coords_pair(fix, a, b):
    from .fixed_points import in_fix_coords
    ca = in_fix_coords(fix, a)
    cb = in_fix_coords(fix, b)
    if ca is None or cb is None:
        raise AssertionError("edge vector not in the fixed plane")
    return (tuple(ca), tuple(cb))


def _check_cusp_fix_grams(ds):
    lz = ds.lattice("lz")
    u1, u2 = ds.cusp("u1"), ds.cusp("u2")
    v1, v2 = ds.cusp("v1"), ds.cusp("v2")
    g1 = [[lz.q_norm(u1), _re(lz.inner(u1, u2))],
          [_re(lz.inner(u2, u1)), lz.q_norm(u2)]]
    g3 = [[lz.q_norm(v1), _re(lz.inner(v1, v2))],
          [_re(lz.inner(v2, v1)), lz.q_norm(v2)]]
    idx1 = sublattice_index(fix_lattice(lz, ds.cusp("kappa1")), [u1, u2])
    idx3 = sublattice_index(fix_lattice(lz, ds.cusp("kappa3")), [v1, v2])
    got = f"{g1} and {g3}, indices ({idx1}, {idx3})"
    want = "[[-4, 0], [0, -2]] and [[-2, 0], [0, -2]], indices (1, 1)"
    return "diag(-4,-2) and diag(-2,-2), index 1", got, got == want


def _re(g):
    assert g.im == 0
    return g.re


CHECKS = [
    ("lattice.signatures", "gram-matrices", _check_signatures),
    ("fix.B0", "fixed-bases", lambda ds: _check_fixed_basis(ds, 0)),
    ("fix.B1", "fixed-bases", lambda ds: _check_fixed_basis(ds, 1)),
    ("fix.B2", "fixed-bases", lambda ds: _check_fixed_basis(ds, 2)),
    ("fix.B3", "fixed-bases", lambda ds: _check_fixed_basis(ds, 3)),
    ("fix.B4", "fixed-bases", lambda ds: _check_fixed_basis(ds, 4)),
    ("vinberg.L0", "fundamental-domains", lambda ds: _check_vinberg_diagram(ds, 0)),
    ("vinberg.L1", "fundamental-domains", lambda ds: _check_vinberg_diagram(ds, 1)),
    ("vinberg.L2", "fundamental-domains", lambda ds: _check_vinberg_diagram(ds, 2)),
    ("vinberg.L3", "fundamental-domains", lambda ds: _check_vinberg_diagram(ds, 3)),
    ("vinberg.L4", "fundamental-domains", lambda ds: _check_vinberg_diagram(ds, 4)),
    ("vinberg.symmetries", "fundamental-domains", _check_symmetries),
    ("roots.L2.relation", "chamber-coordinates", _check_l2_relation),
    ("mod2.norm-one", "mod2-invariants", _check_norm_one_count),
    ("mod2.invariants", "mod2-invariants", _check_mod2_invariants),
    ("mod2.types", "mod2-invariants", _check_types),
    ("s8.table", "subsets-model", _check_s8_table),
    ("s8.group", "subsets-model", _check_ovq),
    ("type2.chi2", "order-two-search", _check_type_two_chi2),
    ("type2.chi3", "order-two-search", _check_type_two_chi3),
    ("type2.structure", "order-two-search", _check_stab_structure),
    ("wall.L4", "discriminant-wall", _check_wall),
    ("wall.twin", "discriminant-wall", _check_wall_negative),
    ("cone.summary", "cuspidal-cone", _check_cone),
    ("cone.fix-grams", "cuspidal-cone", _check_cusp_fix_grams),
]

SECTIONS = sorted({anchor for _, anchor, _ in CHECKS})


def run_report(dataset=None, only=None, threads=1):
    """Run every check (optionally filtered by anchor substring) and return
    the ReproductionReport, ordered by check id."""
    ds = dataset or data_mod.load()
    selected = [(cid, anchor, fn) for cid, anchor, fn in CHECKS
                if only is None or only in anchor or only in cid]
    if not selected:
        raise ValueError(f"no checks match {only!r}")

    def run_one(item):
        cid, anchor, fn = item
        t0 = time.perf_counter()
        try:
            expected, computed, passed = fn(ds)
        except Exception as exc:      # a crashed check is a failed check
            expected, computed, passed = "no error", f"{type(exc).__name__}: {exc}", False
        return CheckResult(cid, anchor, expected, computed, passed,
                           time.perf_counter() - t0)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run_one, selected))
    else:
        results = [run_one(item) for item in selected]
    results.sort(key=lambda r: r.check_id)
    return ReproductionReport(results, ds.checksum, ds.version)


def write_report_files(report, directory, dataset=None):
    """CSV plus rendered figures, for the report path."""
    import os

    from .plotting import save_cone_figure, save_diagram

    ds = dataset or data_mod.load()
    os.makedirs(directory, exist_ok=True)
    with open(os.path.join(directory, "report.csv"), "w") as fh:
        fh.write(report.to_csv())
    for i in range(5):
        fix = ds.fixed_zlattice(i)
        v0, norms, _ = ds.vinberg_controls(i)
        roots = fundamental_roots(fix, norms, v0, stop=("volume",))
        diag = coxeter_diagram(fix.gram, roots)
        save_diagram(diag, os.path.join(directory, f"vinberg_L{i}.png"),
                     title=f"fundamental domain of L{i}")
    save_cone_figure(os.path.join(directory, "cone_gluing.png"),
                     (Fraction(1, 2), Fraction(1, 4)))
    return sorted(os.listdir(directory))
