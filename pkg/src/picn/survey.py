"""Classification pipelines over subgroup catalogs.

Reproduces the staged surveys: the commuting-involution-pair theorem with
its five white-box proof steps, per-class cohomology reports with the
containment funnel, minimal obstructed classes, and the cyclic-subgroup
sweep.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import exact
from .exact import AbelianInvariants
from .lattice import (
    DecompositionReport,
    GLattice,
    GroupTooLargeError,
    dual_module,
    fixed_sublattice,
    h1,
    h1_cyclic,
    h1_test,
    h1_via_sylow,
    h2_cyclic,
    permutation_basis_search,
    restrict,
)
from .perms import (
    DomainError,
    Permutation,
    PermutationGroup,
    contains_conjugate_of,
    iota_generators,
    parse_cycles,
)
from .picard import NQPair, build_picard

__all__ = [
    "StepFailure",
    "FixedBasisWitness",
    "verify_prop_cohomo",
    "GroupReport",
    "classify",
    "funnel_counts",
    "minimal_obstructed_groups",
    "cyclic_sweep",
    "survey_run",
    "N10_MINIMAL_GROUPS",
]

Z2 = AbelianInvariants((2,))

# groups reported to carry cohomology at n = 10, beyond the involution pairs
N10_MINIMAL_GROUPS = [
    ("C2xC2-a", ["(1,2)(3,4)(5,6)(7,8)", "(1,2)(9,10)"]),
    ("C2xC2-b", ["(1,2)(3,4)(5,6)", "(5,6)(7,8)(9,10)"]),
    ("C2xC4", ["(3,6)(8,10)", "(1,2)(5,9)", "(1,2)(3,10,6,8)(4,7)"]),
    ("D4", ["(3,6)(8,10)", "(1,2)(5,9)(8,10)", "(1,2)(3,10,6,8)(4,7)"]),
]


class StepFailure(RuntimeError):
    """A proof-step assertion failed; carries the violated step number."""

    def __init__(self, step, message):
        super().__init__(f"step {step}: {message}")
        self.step = step


@dataclass
class FixedBasisWitness:
    n: int
    triple: tuple
    sigma: Permutation
    tau: Permutation
    n_sigma_basis: list           # (label pair or single label, vector in N coords)
    q_sigma_basis: list           # (name, vector in Q-bar coords)
    tau_action_table: dict        # name -> name or "-" + name
    h1_M: AbelianInvariants = None
    h1_Q_sigma: AbelianInvariants = None


def _check(step, condition, message):
    if not condition:
        raise StepFailure(step, message)


def verify_prop_cohomo(n1: int, n2: int, n3: int, picard=None):
    """White-box verification of the involution-pair cohomology theorem.

    Builds the two involutions for (n1, n2, n3), then checks each proof
    step as an exact matrix statement; any failure aborts with the violated
    step.  For n1 = n2 = 0 the group is cyclic and the pipeline instead
    reports H^1 of the quotient lattice (which is Z/2) together with the
    directly computed H^1 on the Picard lattice.
    """
    n = 2 * (n1 + n2 + n3)
    iota1, iota2 = iota_generators(n1, n2, n3)
    m = picard if picard is not None else build_picard(n)
    if m.n != n:
        raise DomainError("picard module has the wrong number of points")

    if n1 == 0 and n2 == 0:
        tau = iota2
        nq = NQPair(m)
        h1_q = h1_cyclic(tau, nq.Q)
        _check("remark", h1_q == Z2, f"H^1(C2, Q) = {h1_q}, expected Z/2")
        h1_m = h1_cyclic(tau, m)
        return FixedBasisWitness(
            n, (n1, n2, n3), Permutation.identity(n), tau, [], [], {},
            h1_M=h1_m, h1_Q_sigma=h1_q,
        )

    sigma = iota1 * iota2
    tau = iota2
    group = PermutationGroup([iota1, iota2], n)

    # Step 1: M = L + P with L spanned by H and the E_I avoiding n-1,
    # P spanned by the E_I through n-1; both stable, P with permuted basis
    l_idx = [0] + [m.e_index[lab] for lab in m.e_labels if (n - 1) not in lab]
    p_idx = [m.e_index[lab] for lab in m.e_labels if (n - 1) in lab]
    l_pos = {v: i for i, v in enumerate(l_idx)}
    for g in (sigma, tau):
        mat = m.matrix(g)
        _check(1, not np.any(mat[np.ix_(p_idx, l_idx)] != 0), "L is not stable")
        _check(1, not np.any(mat[np.ix_(l_idx, p_idx)] != 0), "P is not stable")
        pblock = mat[np.ix_(p_idx, p_idx)]
        _check(1, sorted(int(x) for x in pblock.ravel()) == [0] * (len(p_idx) ** 2 - len(p_idx)) + [1] * len(p_idx),
               "P block is not a basis permutation")

    def l_block(g):
        return m.matrix(g)[np.ix_(l_idx, l_idx)]

    l_lattice = GLattice(group, len(l_idx), {iota1: l_block(iota1), iota2: l_block(iota2)},
                         matrix_fn=l_block)

    # Step 2: the first involution product is supported away from the last
    # point, so its cyclic cohomology on the whole lattice vanishes
    _check(2, sigma(n) == n, "sigma moves the last point")
    h1_sigma = h1_cyclic(sigma, m)
    _check(2, h1_sigma.is_trivial(), f"H^1(<sigma>, M) = {h1_sigma}")

    # Step 3: N = deep part of L; the quotient Q-bar has basis
    # (H, E_1..E_{n-2}); sigma permutes the deep labels, and taking
    # sigma-fixed parts stays exact
    deep_labels = [lab for lab in m.e_labels if (n - 1) not in lab and len(lab) >= 2]
    deep_pos = [l_pos[m.e_index[lab]] for lab in deep_labels]
    deep_set = set(deep_pos)
    quot_pos = [i for i in range(len(l_idx)) if i not in deep_set]  # H, E_1..E_{n-2}
    for g in (sigma, tau):
        lb = l_lattice.matrix(g)
        _check(3, not np.any(lb[np.ix_(quot_pos, deep_pos)] != 0), "N is not stable in L")
    n_lattice = GLattice(group, len(deep_labels),
                         {g: l_lattice.matrix(g)[np.ix_(deep_pos, deep_pos)] for g in (iota1, iota2)},
                         matrix_fn=lambda g: l_lattice.matrix(g)[np.ix_(deep_pos, deep_pos)])
    sig_n = n_lattice.matrix(sigma)
    _check(3, sorted(int(x) for x in np.asarray(sig_n).ravel())
           == [0] * (len(deep_labels) ** 2 - len(deep_labels)) + [1] * len(deep_labels),
           "sigma is not a label permutation on N")
    _check(3, h1_cyclic(sigma, n_lattice).is_trivial(), "H^1(<sigma>, N) != 0")

    def q_block(g):
        return l_lattice.matrix(g)[np.ix_(quot_pos, quot_pos)]

    q_lattice = GLattice(group, len(quot_pos), {iota1: q_block(iota1), iota2: q_block(iota2)},
                         matrix_fn=q_block)
    # exactness of the fixed-point sequence: the fixed part of Q-bar is
    # exactly the image of the fixed part of L
    l_fixed = fixed_sublattice(l_lattice, sigma)
    proj = exact.zeros(len(quot_pos), len(l_idx))
    for row, pos in enumerate(quot_pos):
        proj[row, pos] = 1
    image = exact.matmul(proj, l_fixed)
    q_fixed = fixed_sublattice(q_lattice, sigma)
    _check(3, exact.lattice_equal(image, q_fixed), "0 -> N^s -> L^s -> Q^s -> 0 is not exact")

    # Step 4: N^sigma is free over the tau-action: basis e_I = E_I + E_{sI}
    # (or E_I when fixed), permuted by tau without fixed vectors
    deep_index = {lab: i for i, lab in enumerate(deep_labels)}
    orbit_reps = []
    seen = set()
    for lab in deep_labels:
        if lab in seen:
            continue
        img = frozenset(sigma(p) for p in lab)
        seen.add(lab)
        seen.add(img)
        orbit_reps.append((lab, img))
    basis_vecs = []
    basis_names = []
    for lab, img in orbit_reps:
        v = exact.zeros(len(deep_labels), 1).ravel()
        v[deep_index[lab]] = 1
        if img != lab:
            v[deep_index[img]] = 1
        basis_vecs.append(v)
        basis_names.append(tuple(sorted(lab)))
    e_basis = np.column_stack(basis_vecs) if basis_vecs else exact.zeros(len(deep_labels), 0)
    n_fixed = fixed_sublattice(n_lattice, sigma)
    _check(4, exact.lattice_equal(e_basis, n_fixed), "the e_I do not span N^sigma")
    tau_n = n_lattice.matrix(tau)
    perm = {}
    for i, v in enumerate(basis_vecs):
        img = exact.matvec(tau_n, v)
        target = None
        for j, w in enumerate(basis_vecs):
            if np.array_equal(img, w):
                target = j
                break
        _check(4, target is not None, f"tau image of e_{basis_names[i]} is not a basis vector")
        _check(4, target != i, f"tau fixes e_{basis_names[i]}: N^sigma is not free")
        perm[i] = target
    _check(4, all(perm[perm[i]] == i for i in perm), "tau does not pair the e_I")
    if basis_vecs:
        tau_on_fixed = exact.solve_int(e_basis, exact.matmul(tau_n, e_basis))
        _check(4, tau_on_fixed is not None, "tau does not preserve N^sigma")
        free_lattice = GLattice(PermutationGroup([tau], n), len(basis_vecs),
                                {tau: tau_on_fixed})
        _check(4, h1_cyclic(tau, free_lattice).is_trivial(), "H^1(<tau>, N^sigma) != 0")
        _check(4, h2_cyclic(tau, free_lattice).is_trivial(), "H^2(<tau>, N^sigma) != 0")

    # Step 5: explicit basis of (Q-bar)^sigma and the tau-action table
    nq_rank = len(quot_pos)  # 1 + (n-2)
    half = (n - 2) // 2

    def unit(i):  # coordinate of E_i in Q-bar (H sits at 0)
        v = exact.zeros(nq_rank, 1).ravel()
        v[i] = 1
        return v

    sigma_vec = exact.zeros(nq_rank, 1).ravel()
    for i in range(1, n - 1):
        sigma_vec[i] = 1
    e0 = unit(0) - sigma_vec
    names = ["e0"]
    vecs = [e0]
    table = {}
    for i in range(1, n1 + n2 + 1):
        vecs.append(e0 + unit(2 * i - 1) + unit(2 * i))
        names.append(f"e{i}")
    for j in range(n1 + n2 + 1, half + 1):
        vecs.append(unit(2 * j - 1))
        names.append(f"w{j}")
        vecs.append(e0 + unit(2 * j))
        names.append(f"v{j}")
    sig_q = q_lattice.matrix(sigma)
    tau_q = q_lattice.matrix(tau)
    for name, v in zip(names, vecs):
        _check(5, np.array_equal(exact.matvec(sig_q, v), v), f"{name} is not sigma-fixed")
    basis = np.column_stack(vecs)
    _check(5, exact.lattice_equal(basis, q_fixed), "the Step-5 vectors are not a basis of Q^sigma")
    expected = {"e0": ("-", "e0")}
    for i in range(1, n1 + n2 + 1):
        expected[f"e{i}"] = ("+", f"e{i}")
    for j in range(n1 + n2 + 1, half + 1):
        expected[f"w{j}"] = ("+", f"v{j}")
        expected[f"v{j}"] = ("+", f"w{j}")
    vec_of = dict(zip(names, vecs))
    for name, v in zip(names, vecs):
        img = exact.matvec(tau_q, v)
        sign, tgt = expected[name]
        want = vec_of[tgt] if sign == "+" else -vec_of[tgt]
        _check(5, np.array_equal(img, want), f"tau({name}) != {sign}{tgt}")
        table[name] = f"{'' if sign == '+' else '-'}{tgt}"
    tau_on_qfixed = exact.solve_int(basis, exact.matmul(tau_q, basis))
    _check(5, tau_on_qfixed is not None, "tau does not preserve Q^sigma")
    qf_lattice = GLattice(PermutationGroup([tau], n), len(vecs), {tau: tau_on_qfixed})
    h1_qs = h1_cyclic(tau, qf_lattice)
    _check(5, h1_qs == Z2, f"H^1(<tau>, Q^sigma) = {h1_qs}, expected Z/2")

    # conclusion: the full-complex computation must agree
    h1_m = h1(group, restrict(m, group, verify=False))
    _check("final", h1_m == Z2, f"H^1(G, M) = {h1_m}, expected Z/2")
    return FixedBasisWitness(
        n, (n1, n2, n3), sigma, tau,
        [(name, vec) for name, vec in zip(basis_names, basis_vecs)],
        list(zip(names, vecs)),
        table,
        h1_M=h1_m,
        h1_Q_sigma=h1_qs,
    )


@dataclass
class GroupReport:
    group: PermutationGroup
    order: int
    flags: dict
    stage: str
    h1_M: AbelianInvariants = None
    h1_Q: AbelianInvariants = None
    h1_dual: AbelianInvariants = None
    h1_M_certified_zero: bool = False
    h1_criterion: bool = None
    decomposition: DecompositionReport = None
    sp_status: str = "unknown"

    def to_json_dict(self):
        return {
            "generators": [g.print_cycles() for g in self.group.generators],
            "order": self.order,
            "orbit_sizes": list(self.group.orbit_sizes()),
            "flags": self.flags,
            "stage": self.stage,
            "h1_M": None if self.h1_M is None else str(self.h1_M),
            "h1_Q": None if self.h1_Q is None else str(self.h1_Q),
            "h1_dual": None if self.h1_dual is None else str(self.h1_dual),
            "h1_criterion": self.h1_criterion,
            "decomposition": None if self.decomposition is None else self.decomposition.status,
            "sp_status": self.sp_status,
        }


def minimal_obstructed_subgroup(n: int) -> PermutationGroup:
    """The involution-pair Klein group at this (even) n."""
    if n % 2 != 0 or n < 6:
        raise DomainError("the obstructed pair group needs even n >= 6")
    i1, i2 = iota_generators(1, 1, n // 2 - 2)
    return PermutationGroup([i1, i2], n, name="Gprime")


def free_minimal_subgroup_n8() -> PermutationGroup:
    """The free-acting Klein group heading the undecided classes at n = 8."""
    return PermutationGroup.from_cycles(
        ["(1,2)(3,4)(5,6)(7,8)", "(1,3)(2,4)(5,7)(6,8)"], 8, name="K0"
    )


_WORKER_STATE = {}


def _class_h1_worker(args):
    n, gens = args
    key = n
    if key not in _WORKER_STATE:
        m = build_picard(n)
        _WORKER_STATE[key] = (m, NQPair(m))
    m, nq = _WORKER_STATE[key]
    group = PermutationGroup([parse_cycles(s, n) for s in gens], n)
    return _h1_columns(group, m, nq)


def _h1_columns(group, m, nq, cap=10_000):
    out = {"h1_M": None, "h1_Q": None, "h1_dual": None, "certified_zero": False}
    try:
        out["h1_M"] = h1(group, restrict(m, group, verify=False), cap=cap)
        out["h1_Q"] = h1(group, restrict(nq.Q, group, verify=False), cap=cap)
        out["h1_dual"] = h1(group, restrict(dual_module(m), group, verify=False), cap=cap)
    except GroupTooLargeError:
        val, _ = h1_via_sylow(group, m)
        if val is not None:
            out["h1_M"] = val
            out["certified_zero"] = True
    return out


def resolve_workers(workers=None) -> int:
    if workers is not None:
        return max(1, int(workers))
    env = os.environ.get("PICN_WORKERS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def classify(n: int, catalog, with_h1: bool = True, with_decomposition: bool = False,
             workers: int = None, progress=None) -> list:
    """One report per catalog class, with the staged containment funnel.

    Stages, in order of exclusion: contains a conjugate of the obstructed
    pair group; has a fixed point (conjugate into the point stabilizer);
    has an invariant pair (conjugate into the pair stabilizer); remainder.
    The remainder splits by the odd-orbit flag and, at n = 8, by containing
    the free-acting minimal Klein group (the classes the external
    stably-permutation search is needed for are the rest).
    """
    if catalog.degree != n:
        raise DomainError(f"catalog degree {catalog.degree} != {n}")
    m = build_picard(n)
    nq = NQPair(m)
    gprime = minimal_obstructed_subgroup(n) if n % 2 == 0 and n >= 6 else None
    k0 = free_minimal_subgroup_n8() if n == 8 else None
    reports = []
    for idx, group in enumerate(catalog):
        if progress:
            progress(f"class {idx + 1}/{len(catalog)} (order {group.order()})")
        flags = {
            "fixes_point": len(group.fixed_points()) > 0,
            "fixes_pair": len(group.invariant_pairs()) > 0,
            "odd_orbit": group.has_odd_orbit(),
            "contains_Gprime": bool(gprime and contains_conjugate_of(group, gprime)),
        }
        if k0 is not None:
            flags["contains_K0"] = contains_conjugate_of(group, k0) is not None
        if flags["contains_Gprime"]:
            stage = "contains-obstructed-pair-group"
        elif flags["fixes_point"]:
            stage = "fixes-point"
        elif flags["fixes_pair"]:
            stage = "fixes-pair"
        elif flags["odd_orbit"]:
            stage = "remainder-odd-orbit"
        elif k0 is not None and flags["contains_K0"]:
            stage = "remainder-contains-free-minimal"
        else:
            stage = "remainder-external-comparison"
        reports.append(GroupReport(group=group, order=group.order(), flags=flags, stage=stage))

    if with_h1:
        jobs = [(n, [g.print_cycles() for g in r.group.generators]) for r in reports]
        nworkers = resolve_workers(workers)
        if nworkers > 1:
            with ProcessPoolExecutor(max_workers=nworkers) as pool:
                results = list(pool.map(_class_h1_worker, jobs, chunksize=4))
        else:
            results = [_h1_columns(r.group, m, nq) for r in reports]
        for report, cols in zip(reports, results):
            report.h1_M = cols["h1_M"]
            report.h1_Q = cols["h1_Q"]
            report.h1_dual = cols["h1_dual"]
            report.h1_M_certified_zero = cols["certified_zero"]

    if with_decomposition:
        for report in reports:
            if report.order > 16:
                continue
            seeds = [m.boundary[lab] for lab in m.boundary_label_list()]
            sub = restrict(m, report.group, verify=False)
            report.decomposition = permutation_basis_search(sub, budget=4000, seeds=seeds)

    for report in reports:
        ok = None
        if report.h1_M is not None and report.h1_dual is not None:
            if not report.h1_M.is_trivial() or not report.h1_dual.is_trivial():
                ok = False
        if report.decomposition is not None and report.decomposition.status == "not-permutation":
            if "H^1" in str(report.decomposition.obstruction or ""):
                ok = False
        report.h1_criterion = ok if ok is not None else report.h1_criterion
        if report.decomposition is not None and report.decomposition.status == "certified":
            report.sp_status = "certified_yes"
        elif report.h1_criterion is False:
            report.sp_status = "certified_no"
    return reports


def funnel_counts(reports) -> dict:
    counts = {}
    for r in reports:
        counts[r.stage] = counts.get(r.stage, 0) + 1
    remainder = sum(v for k, v in counts.items() if k.startswith("remainder"))
    counts["remainder-total"] = remainder
    return counts


def minimal_obstructed_groups(n: int, catalog=None, candidates=None, cap=10_000, progress=None):
    """Classes with nonvanishing H^1 on the Picard lattice none of whose
    proper subgroup classes have it.

    With a catalog (n <= 8): ascending scan; any class containing an
    already-obstructed class cannot be minimal and is skipped without a
    cohomology computation.  With explicit candidates (n = 10): each is
    verified to be obstructed while its proper subgroups are not.
    """
    m = build_picard(n)
    if catalog is not None:
        classes = sorted(catalog, key=lambda g: g.order())
        obstructed = []
        minimal = []
        for idx, group in enumerate(classes):
            if progress:
                progress(f"minimality scan {idx + 1}/{len(classes)} (order {group.order()})")
            if group.order() == 1:
                continue
            # containment is transitive up to conjugacy, so the original
            # obstructed class keeps blocking everything above this one
            if any(contains_conjugate_of(group, ob) for ob in obstructed):
                continue
            val = None
            if group.order() > 256:
                # Sylow restrictions certify vanishing far cheaper than the
                # direct complex on big groups
                val, _ = h1_via_sylow(group, m)
            if val is None:
                try:
                    val = h1(group, restrict(m, group, verify=False), cap=cap)
                except GroupTooLargeError:
                    raise RuntimeError(f"cannot decide H^1 for a class of order {group.order()}")
            if not val.is_trivial():
                obstructed.append(group)
                minimal.append((group, val))
        return minimal
    if candidates is None:
        raise DomainError("need a catalog or an explicit candidate list")
    from .perms import subgroup_classes_in

    out = []
    for name, gens in candidates:
        group = PermutationGroup([parse_cycles(s, n) for s in gens], n, name=name)
        val = h1(group, restrict(m, group, verify=False), cap=cap)
        if val.is_trivial():
            raise RuntimeError(f"candidate {name} is not obstructed")
        for sub in subgroup_classes_in(group):
            if sub.order() in (1, group.order()):
                continue
            sval = h1(sub, restrict(m, sub, verify=False), cap=cap)
            if not sval.is_trivial():
                raise RuntimeError(f"candidate {name} is not minimal: {sub!r} is obstructed")
        out.append((group, val))
    return out


def cycle_types(n: int):
    """Partitions of n, descending parts, lexicographically sorted."""
    out = []

    def rec(remaining, maxpart, prefix):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for p in range(min(remaining, maxpart), 0, -1):
            rec(remaining - p, p, prefix + [p])

    rec(n, n, [])
    return sorted(out)


def representative_of_cycle_type(ct, n: int) -> Permutation:
    images = list(range(n))
    start = 0
    for length in ct:
        for k in range(length):
            images[start + k] = start + (k + 1) % length
        start += length
    return Permutation(images)


def cyclic_sweep(n: int, picard=None, progress=None):
    """H^1 of every cyclic subgroup class (one per cycle type) on the
    Picard lattice; nonzero entries are collected as counterexamples to the
    expectation that they all vanish."""
    m = picard if picard is not None else build_picard(n)
    rows = []
    counterexamples = []
    for ct in cycle_types(n):
        g = representative_of_cycle_type(ct, n)
        val = h1_cyclic(g, m)
        rows.append((ct, g, val))
        if not val.is_trivial():
            counterexamples.append((ct, val))
        if progress:
            progress(f"cycle type {ct}: {val}")
    return rows, counterexamples


def survey_run(n: int, catalog, out_path=None, workers=None, with_h1=True,
               with_decomposition=False, progress=None) -> dict:
    """Full survey: classify, funnel, JSON document (and CSV alongside)."""
    reports = classify(n, catalog, with_h1=with_h1, with_decomposition=with_decomposition,
                       workers=workers, progress=progress)
    doc = {
        "meta": {
            "n": n,
            "catalog_size": len(catalog),
            "provenance": catalog.provenance,
        },
        "funnel": funnel_counts(reports),
        "reports": [r.to_json_dict() for r in reports],
    }
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(doc, fh, indent=1, sort_keys=True)
            fh.write("\n")
        csv_path = str(out_path)
        csv_path = csv_path[: csv_path.rfind(".")] + ".csv" if "." in csv_path else csv_path + ".csv"
        _write_csv(reports, csv_path)
    return doc


def _write_csv(reports, path):
    import csv

    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(
            ["generators", "order", "stage", "fixes_point", "fixes_pair", "odd_orbit",
             "contains_Gprime", "h1_M", "h1_Q", "h1_dual", "sp_status"]
        )
        for r in reports:
            writer.writerow([
                ";".join(g.print_cycles() for g in r.group.generators),
                r.order,
                r.stage,
                int(r.flags.get("fixes_point", False)),
                int(r.flags.get("fixes_pair", False)),
                int(r.flags.get("odd_orbit", False)),
                int(r.flags.get("contains_Gprime", False)),
                "" if r.h1_M is None else str(r.h1_M),
                "" if r.h1_Q is None else str(r.h1_Q),
                "" if r.h1_dual is None else str(r.h1_dual),
                r.sp_status,
            ])
