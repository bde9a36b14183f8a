"""Toric quotient data: fixed points, degree pairings, Mori cone, map spaces.

A model is a K x N integer matrix whose columns express the divisor classes
u_j in the basis p_1..p_K of the quotient torus, together with a chamber point
omega.  Torus-fixed points are the K-subsets J whose column cone contains
omega strictly; smoothness means every such minor has determinant +-1, and all
downstream formulas assume it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Sequence

from .linalg import determinant, extreme_rays, in_cone, inverse_unimodular, solve_square
from .monomials import Monomial


class InvalidModelError(ValueError):
    """The quotient data violates a structural requirement."""


class NonRegularChamberError(InvalidModelError):
    """omega sits on a cone wall (some coefficient vanishes): not a regular value."""


class NonSmoothModelError(InvalidModelError):
    """Some fixed-point minor has |det| >= 2; the manifold formulas do not apply."""

    def __init__(self, subset: tuple[int, ...], det: int):
        super().__init__(
            f"non-smooth minor at columns {tuple(j + 1 for j in subset)}: det = {det}"
        )
        self.subset = subset
        self.det = det


@dataclass(frozen=True)
class ToricData:
    """The single source of truth for a model: the matrix, chamber point, labels."""

    m: tuple[tuple[int, ...], ...]
    omega: tuple[Fraction, ...]
    lambda_names: tuple[str, ...] = ()
    name: str = ""

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.m)
        object.__setattr__(self, "m", rows)
        object.__setattr__(self, "omega", tuple(Fraction(x) for x in self.omega))
        k = len(rows)
        if k < 1:
            raise InvalidModelError("need at least one matrix row")
        n = len(rows[0])
        if any(len(r) != n for r in rows):
            raise InvalidModelError("matrix rows have unequal lengths")
        if n < k:
            raise InvalidModelError(f"need N >= K, got K={k}, N={n}")
        if len(self.omega) != k:
            raise InvalidModelError(f"omega must have {k} coordinates")
        if not self.lambda_names:
            object.__setattr__(
                self, "lambda_names", tuple(f"L{j+1}" for j in range(n))
            )
        elif len(self.lambda_names) != n:
            raise InvalidModelError("need one parameter label per column")

    @property
    def K(self) -> int:
        return len(self.m)

    @property
    def N(self) -> int:
        return len(self.m[0])

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(self.m[i][j] for i in range(self.K))

    def minor(self, subset: Sequence[int]) -> list[list[int]]:
        return [[self.m[i][j] for j in subset] for i in range(self.K)]


@dataclass(frozen=True)
class FixedPoint:
    """A fixed point: its index subset and the monomial data localized there.

    ``p_monomials[i]`` is P_i as a Laurent monomial in the equivariant
    parameters, ``u_monomials[j]`` the value of U_j, and ``q_monomials``
    (aligned with J) re-encode the degree lattice so the exponent identity
    Q^d = prod_{j in J} Q_j^{D_j(d)} holds.
    """

    J: tuple[int, ...]
    det: int
    p_monomials: tuple[Monomial, ...]
    u_monomials: tuple[Monomial, ...]
    q_monomials: tuple[Monomial, ...]

    @property
    def degree_generators(self) -> tuple[tuple[int, ...], ...]:
        """Generators of the dual cone Z_+^K at this fixed point."""
        return tuple(mon.exps for mon in self.q_monomials)

    def p_values(self, lambdas: Sequence[Fraction]) -> tuple[Fraction, ...]:
        return tuple(mon.evaluate(lambdas) for mon in self.p_monomials)

    def u_values(self, lambdas: Sequence[Fraction]) -> tuple[Fraction, ...]:
        return tuple(mon.evaluate(lambdas) for mon in self.u_monomials)


def _chamber_coefficients(data: ToricData, subset: tuple[int, ...]):
    minor = data.minor(subset)
    det = determinant(minor)
    if det == 0:
        return None, 0
    coeffs = solve_square(minor, data.omega)
    return coeffs, det


@lru_cache(maxsize=None)
def enumerate_fixed_points(data: ToricData) -> tuple[FixedPoint, ...]:
    """All K-subsets whose column cone strictly contains omega.

    Raises on boundary omega (non-regular) and on any non-unimodular fixed
    minor (non-smooth quotient); both are hard errors since every formula in
    the library assumes the smooth manifold case.
    """
    out = []
    for subset in combinations(range(data.N), data.K):
        coeffs, det = _chamber_coefficients(data, subset)
        if coeffs is None:
            continue
        if any(c == 0 for c in coeffs):
            raise NonRegularChamberError(
                f"omega lies on the wall of cone {tuple(j + 1 for j in subset)}"
            )
        if all(c > 0 for c in coeffs):
            if det not in (1, -1):
                raise NonSmoothModelError(subset, int(det))
            out.append(_build_fixed_point(data, subset, int(det)))
    if not out:
        raise NonRegularChamberError("omega lies outside the image of the open orthant")
    return tuple(out)


def _build_fixed_point(data: ToricData, subset: tuple[int, ...], det: int) -> FixedPoint:
    k, n = data.K, data.N
    minor = data.minor(subset)
    inv = inverse_unimodular(minor)  # integer because |det| = 1
    # P_i = prod_{j' in J} Lambda_{j'}^{inv[j'][i]}: solves prod_i P_i^{m_ij} = Lambda_j, j in J.
    p_monomials = []
    for i in range(k):
        exps = [0] * n
        for pos, j in enumerate(subset):
            exps[j] = inv[pos][i]
        p_monomials.append(Monomial(exps))
    u_monomials = []
    for j in range(n):
        exps = [0] * n
        for i in range(k):
            mij = data.m[i][j]
            if mij:
                for jj, e in enumerate(p_monomials[i].exps):
                    exps[jj] += mij * e
        exps[j] -= 1
        u_monomials.append(Monomial(exps))
    # Q_j = prod_i Q_i^{inv[j][i]} re-encodes degrees: D_{j'}(col of inv) = delta.
    q_monomials = [
        Monomial([inv[pos][i] for i in range(k)]) for pos in range(len(subset))
    ]
    return FixedPoint(
        J=tuple(subset),
        det=det,
        p_monomials=tuple(p_monomials),
        u_monomials=tuple(u_monomials),
        q_monomials=tuple(q_monomials),
    )


def fixed_point(data: ToricData, subset: Sequence[int]) -> FixedPoint:
    want = tuple(sorted(subset))
    for fp in enumerate_fixed_points(data):
        if fp.J == want:
            return fp
    raise KeyError(f"{want} is not a fixed point of this model")


def degree_pairing(data: ToricData, d: Sequence[int]) -> tuple[int, ...]:
    """D_j(d) = sum_i d_i m_ij: intersection indices with the toric divisors."""
    if len(d) != data.K:
        raise InvalidModelError(f"degree must have {data.K} coordinates")
    return tuple(
        sum(int(d[i]) * data.m[i][j] for i in range(data.K)) for j in range(data.N)
    )


@lru_cache(maxsize=None)
def _mori_generators_raw(data: ToricData) -> tuple[tuple[int, ...], ...]:
    gens: list[tuple[int, ...]] = []
    for fp in enumerate_fixed_points(data):
        for g in fp.degree_generators:
            if g not in gens:
                gens.append(g)
    return tuple(gens)


def mori_cone_membership(
    data: ToricData, d: Sequence[int]
) -> tuple[bool, tuple[bool, ...]]:
    """Overall membership in the effective-curve cone, plus per-fixed-point flags.

    The flag at alpha is D_j(d) >= 0 for all j in J(alpha); the overall flag is
    membership in the convex hull of those dual cones, decided exactly.
    """
    pairing = degree_pairing(data, d)
    flags = tuple(
        all(pairing[j] >= 0 for j in fp.J) for fp in enumerate_fixed_points(data)
    )
    if any(flags):
        return True, flags
    return in_cone(_mori_generators_raw(data), [int(x) for x in d]), flags


def mori_generators(data: ToricData) -> list[tuple[int, ...]]:
    """Extreme rays of the effective-curve cone."""
    return extreme_rays(_mori_generators_raw(data))


def kahler_pairing_positive(data: ToricData, ample: Sequence[Fraction]) -> bool:
    """Whether ``ample`` pairs strictly positively with every Mori generator."""
    return all(
        sum(Fraction(a) * g for a, g in zip(ample, gen)) > 0
        for gen in _mori_generators_raw(data)
    )


@dataclass(frozen=True)
class ExtendedModel:
    """Quotient data for a space of degree-d spheres.

    Columns repeat each u_j once per copy in ``copies`` (pairs (j, r) with the
    shifted parameter label); ``obstructions`` lists the (j, r) factors that a
    negative intersection index moves into the numerator of the integration
    formula, where they represent the obstruction-bundle Euler class.
    """

    data: ToricData
    degree: tuple[int, ...]
    copies: tuple[tuple[int, int], ...]
    obstructions: tuple[tuple[int, int], ...]


def map_space_model(data: ToricData, d: Sequence[int]) -> ExtendedModel:
    """Extend the model by D_j(d) shifted copies of each column.

    Copy count per column is max(D_j(d), 0) + 1 with labels shifted by r*z;
    for D_j(d) < 0 the missing factors are recorded as obstruction metadata.
    """
    pairing = degree_pairing(data, d)
    columns: list[tuple[int, ...]] = []
    labels: list[str] = []
    copies: list[tuple[int, int]] = []
    obstructions: list[tuple[int, int]] = []
    for j in range(data.N):
        base = data.lambda_names[j]
        for r in range(max(pairing[j], 0) + 1):
            columns.append(data.column(j))
            if r == 0:
                labels.append(base)
            else:
                labels.append(f"{base}+z" if r == 1 else f"{base}+{r}z")
            copies.append((j, r))
        if pairing[j] < 0:
            for r in range(1, -pairing[j] + 1):
                obstructions.append((j, r))
    extended = ToricData(
        m=tuple(tuple(col[i] for col in columns) for i in range(data.K)),
        omega=data.omega,
        lambda_names=tuple(labels),
        name=f"{data.name}[d={tuple(int(x) for x in d)}]" if data.name else "",
    )
    return ExtendedModel(
        data=extended,
        degree=tuple(int(x) for x in d),
        copies=tuple(copies),
        obstructions=tuple(obstructions),
    )


def equivariant_p_values(
    data: ToricData, fp: FixedPoint, lambdas: Sequence[Fraction]
) -> tuple[Fraction, ...]:
    """The additive fixed-point solution: sum_i p_i m_ij = lambda_j for j in J."""
    minor = [[data.m[i][j] for i in range(data.K)] for j in fp.J]
    sol = solve_square(minor, [Fraction(lambdas[j]) for j in fp.J])
    assert sol is not None
    return tuple(sol)


def divisor_values(
    data: ToricData, fp: FixedPoint, lambdas: Sequence[Fraction]
) -> tuple[Fraction, ...]:
    """u_j(p(alpha)) = sum_i p_i m_ij - lambda_j; zero exactly on J(alpha)."""
    p = equivariant_p_values(data, fp, lambdas)
    return tuple(
        sum(p[i] * data.m[i][j] for i in range(data.K)) - Fraction(lambdas[j])
        for j in range(data.N)
    )


def box_degrees(
    data: ToricData, ample: Sequence[Fraction], bound
) -> list[tuple[int, ...]]:
    """All effective degrees with <ample, d> <= bound, enumerated exactly."""
    bound = Fraction(bound)
    if bound < 0:
        return []
    gens = _mori_generators_raw(data)
    ample = [Fraction(a) for a in ample]
    limits = []
    for i in range(data.K):
        worst = Fraction(0)
        for g in gens:
            pair = sum(a * c for a, c in zip(ample, g))
            if pair <= 0:
                raise InvalidModelError("ample class must pair positively with the Mori cone")
            worst = max(worst, Fraction(abs(g[i])) / pair)
        limits.append(int(bound * worst))
    out = []
    for d in product(*[range(-lim, lim + 1) for lim in limits]):
        if sum(a * x for a, x in zip(ample, d)) > bound:
            continue
        if mori_cone_membership(data, d)[0]:
            out.append(d)
    out.sort(key=lambda d: (sum(a * x for a, x in zip(ample, d)), d))
    return out
