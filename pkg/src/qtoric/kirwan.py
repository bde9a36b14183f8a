"""Multiplicative relation sets presenting the (equivariant) cohomology and
K-theory rings of a toric quotient, and their verification at fixed points.

A subset of divisor columns gives a relation exactly when the corresponding
divisors have empty common intersection, which by the face criterion means the
subset fits inside no fixed-point subset.  Relations are emitted in minimal
form only (the minimal non-faces, one per primitive collection).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .scalars import DegenerateSampleError, SampleContext
from .toric import ToricData, divisor_values, enumerate_fixed_points


@dataclass(frozen=True)
class KirwanRelation:
    """A minimal empty-intersection subset J, read multiplicatively.

    kind "k" stands for prod_{j in J}(1 - U_j) = 0, kind "coh" for
    prod_{j in J} u_j = 0.
    """

    J: tuple[int, ...]
    kind: str = "k"


def has_empty_intersection(data: ToricData, subset: Sequence[int]) -> bool:
    """True iff the divisors indexed by ``subset`` meet nowhere (face criterion).

    A fixed point lies on the divisor of column j exactly when j is off its
    index set, so the common intersection (a compact toric subvariety, hence
    containing a fixed point when nonempty) is empty iff the subset meets
    every fixed-point index set.
    """
    want = set(subset)
    return all(want & set(fp.J) for fp in enumerate_fixed_points(data))


def kirwan_relations(data: ToricData, kind: str = "k") -> tuple[KirwanRelation, ...]:
    """All minimal empty-intersection subsets, by increasing cardinality."""
    if kind not in ("k", "coh"):
        raise ValueError("kind must be 'k' or 'coh'")
    found: list[tuple[int, ...]] = []
    for size in range(1, data.N + 1):
        for subset in combinations(range(data.N), size):
            if any(set(prev) <= set(subset) for prev in found):
                continue
            if has_empty_intersection(data, subset):
                found.append(subset)
    return tuple(KirwanRelation(J=j, kind=kind) for j in found)


def verify_relations_at_fixed_points(data: ToricData, ctx: SampleContext) -> dict:
    """Every relation must vanish identically on every fixed-point branch.

    K-theoretically some factor 1 - U_j(alpha) with j in J cap J(alpha) is
    exactly zero; cohomologically some u_j(p(alpha)) vanishes.  A violation is
    a data inconsistency and is reported, not raised.
    """
    report = {"ok": True, "checks": []}
    relations = kirwan_relations(data)
    for relation in relations:
        for fp in enumerate_fixed_points(data):
            uvals = fp.u_values(ctx.Lambda)
            k_product = Fraction(1)
            for j in relation.J:
                k_product *= 1 - uvals[j]
            dvals = divisor_values(data, fp, ctx.Lambda)
            coh_product = Fraction(1)
            for j in relation.J:
                coh_product *= dvals[j]
            structural = bool(set(relation.J) & set(fp.J))
            ok = structural and k_product == 0 and coh_product == 0
            report["checks"].append({
                "relation": [j + 1 for j in relation.J],
                "alpha": [j + 1 for j in fp.J],
                "ok": ok,
            })
            report["ok"] = report["ok"] and ok
    return report


def spectrum_point_count(data: ToricData, ctx: SampleContext) -> int:
    """Count the isolated solutions cut out by the relation equations at a
    generic sample: one for each fixed point, realized by its parameter values.

    Two branches producing identical solutions means the sample is degenerate.
    """
    points = []
    for fp in enumerate_fixed_points(data):
        points.append(fp.p_values(ctx.Lambda))
    if len(set(points)) != len(points):
        raise DegenerateSampleError("two branches met at the same solution")
    return len(points)
