"""
Seeded randomized checks behind ``vkl check``.

Every check draws from one ``random.Random(seed)`` so a run is reproducible
from its seed alone.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from virtual_knot_lab.core.logger import setup_logger
from virtual_knot_lab.modules.algebra.exactalg import function_field
from virtual_knot_lab.modules.algebra.matrices import (
    Matrix,
    RingDescriptor,
    hermitian,
    mat_mul,
    mat_equal,
    transpose,
)
from virtual_knot_lab.modules.algebra.quat import (
    AlgebraParams,
    Quaternion,
    c_vector,
    classical_params,
    commutes,
    fundamental_holds,
    is_matching,
    norm,
    solve_matching_partner,
)
from virtual_knot_lab.modules.braids.braidrep import (
    check_burau_equivalence,
    fixed_vectors_hold,
    parse_braid,
    random_word,
    represent,
)
from virtual_knot_lab.modules.invariants.detinv import det_d
from virtual_knot_lab.modules.switches.catalog import get_switch

logger = setup_logger(__name__)


@dataclass
class PropertyResult:
    name: str
    cases: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> Dict[str, object]:
        return {"name": self.name, "cases": self.cases, "passed": self.passed, "failures": list(self.failures)}


def _classical() -> AlgebraParams:
    return classical_params(function_field(("t",)))


def random_quaternion(rng: random.Random, params: AlgebraParams, bound: int = 3) -> Quaternion:
    return Quaternion.from_coords(params, *(rng.randint(-bound, bound) for _ in range(4)))


def random_unit_quaternion(rng: random.Random, params: AlgebraParams, bound: int = 3) -> Quaternion:
    while True:
        q = random_quaternion(rng, params, bound)
        if q.is_unit():
            return q


def random_balanced(rng: random.Random, params: AlgebraParams) -> Quaternion:
    """1 + q^2 / N(q) lies on N(A - 1) = 1, so tr(A) = N(A)."""
    while True:
        q = random_unit_quaternion(rng, params)
        A = q * q * norm(q).inverse() + 1
        if A.is_unit() and not A.a0.is_zero():
            return A


def random_matrix(rng: random.Random, ring: RingDescriptor, n: int) -> Matrix:
    return tuple(tuple(random_quaternion(rng, ring.params) for _ in range(n)) for _ in range(n))


# ---------------------------------------------------------------------------
# the checks
# ---------------------------------------------------------------------------

def check_matching_pairs(rng: random.Random, cases: int) -> PropertyResult:
    result = PropertyResult("matching pairs solve the fundamental equation")
    params = _classical()
    while result.cases < cases:
        A = random_balanced(rng, params)
        B = solve_matching_partner(A, *(rng.randint(-3, 3) for _ in range(3)))
        if not B.is_unit() or commutes(A, B):
            continue
        result.cases += 1
        if not fundamental_holds(A, B):
            result.failures.append(f"A = {A}, B = {B}")
    return result


def check_non_matching(rng: random.Random, cases: int) -> PropertyResult:
    result = PropertyResult("non-matching pairs have a nonzero c-vector")
    params = _classical()
    while result.cases < cases:
        A = random_unit_quaternion(rng, params)
        B = random_unit_quaternion(rng, params)
        if commutes(A, B) or is_matching(A, B):
            continue
        result.cases += 1
        if c_vector(A, B).is_zero():
            result.failures.append(f"A = {A}, B = {B}")
    return result


def check_det_rules(rng: random.Random, cases: int) -> PropertyResult:
    """Multiplicativity, permutations, unit scaling, row addition, bordering, adjoint, scalar entries."""
    result = PropertyResult("determinant rules")
    params = _classical()
    ring = RingDescriptor(params.field, params)
    for _ in range(cases):
        n = rng.randint(1, 3)
        M = random_matrix(rng, ring, n)
        N = random_matrix(rng, ring, n)
        dM = det_d(M, ring)
        result.cases += 1
        failures: List[str] = []
        if det_d(mat_mul(M, N), ring) != dM * det_d(N, ring):
            failures.append("d(MN) = d(M) d(N)")
        order = list(range(n))
        rng.shuffle(order)
        if det_d(tuple(M[i] for i in order), ring) != dM:
            failures.append("row permutation")
        if det_d(transpose(tuple(transpose(M)[i] for i in order)), ring) != dM:
            failures.append("column permutation")
        u = random_unit_quaternion(rng, params)
        row = rng.randrange(n)
        scaled = tuple(tuple(u * a for a in r) if i == row else r for i, r in enumerate(M))
        if det_d(scaled, ring) != norm(u) * dM:
            failures.append("unit row scaling")
        if n > 1:
            src, dst = rng.sample(range(n), 2)
            x = random_quaternion(rng, params)
            added = tuple(
                tuple(a + x * b for a, b in zip(r, M[src])) if i == dst else r for i, r in enumerate(M)
            )
            if det_d(added, ring) != dM:
                failures.append("row addition")
        x = random_unit_quaternion(rng, params)
        top = (x,) + tuple(random_quaternion(rng, params) for _ in range(n))
        zero = ring.zero()
        bordered = (top,) + tuple((zero,) + r for r in M)
        if det_d(bordered, ring) != norm(x) * dM:
            failures.append("bordering by a unit")
        if det_d(hermitian(M), ring) != dM:
            failures.append("d(M*) = d(M)")
        scalars = tuple(tuple(Quaternion.scalar(params, rng.randint(-3, 3)) for _ in range(n)) for _ in range(n))
        plain = tuple(tuple(q.a0 for q in r) for r in scalars)
        commutative = det_d(plain, RingDescriptor(params.field))
        if det_d(scalars, ring) != commutative * commutative:
            failures.append("commuting entries give det^2")
        result.failures.extend(f"{f}: M = {M}" for f in failures)
    return result


def check_special_linear(rng: random.Random, cases: int) -> PropertyResult:
    result = PropertyResult("d(rho(w)) = 1 for the augmented Budapest switch")
    S = get_switch("budapest", augment_var="t")
    for _ in range(cases):
        n = rng.randint(2, 3)
        w = random_word(rng, n, rng.randint(1, 5))
        result.cases += 1
        if not det_d(represent(w, S), S.ring).is_one():
            result.failures.append(f"w = {w} on {n} strands")
    return result


def check_burau(rng: random.Random, cases: int) -> PropertyResult:
    result = PropertyResult("Burau conjugation on classical words")
    for name in ("budapest", "e1"):
        S = get_switch(name)
        for _ in range(cases):
            n = rng.randint(2, 4)
            w = random_word(rng, n, rng.randint(1, 4), virtual=False)
            result.cases += 1
            if not check_burau_equivalence(w, S):
                result.failures.append(f"{name}: w = {w} on {n} strands")
    return result


def check_fixed_vectors(rng: random.Random, cases: int) -> PropertyResult:
    result = PropertyResult("fixed row and column vectors")
    for name in ("budapest", "e1", "e2"):
        S = get_switch(name)
        for n in (2, 3):
            result.cases += 1
            if not fixed_vectors_hold(S, n):
                result.failures.append(f"{name} on {n} strands")
    return result


ALEXANDER_WORD = "s2 s1 v2 -s1 -s2 v1"
ALEXANDER_MATRIX = (
    ("1", "0", "(1/C-B)*(B-1)"),
    ("0", "1", "(1/C-B)*(1-B)"),
    ("0", "0", "1"),
)


def check_alexander_matrix(rng: random.Random, cases: int) -> PropertyResult:
    result = PropertyResult("Alexander image of s2 s1 v2 -s1 -s2 v1", cases=1)
    S = get_switch("alexander")
    expected = tuple(tuple(S.ring.field.parse(x) for x in row) for row in ALEXANDER_MATRIX)
    if not mat_equal(represent(parse_braid(ALEXANDER_WORD, 3), S), expected):
        result.failures.append("image differs from the closed form")
    return result


CHECKS: Tuple[Tuple[str, Callable[[random.Random, int], PropertyResult], Optional[int]], ...] = (
    ("matching", check_matching_pairs, None),
    ("non_matching", check_non_matching, None),
    ("det_rules", check_det_rules, 50),
    ("special_linear", check_special_linear, 20),
    ("burau", check_burau, 10),
    ("fixed_vectors", check_fixed_vectors, 1),
    ("alexander_matrix", check_alexander_matrix, 1),
)


def run_property_suite(seed: int, cases: int, only: Optional[List[str]] = None) -> List[PropertyResult]:
    """``cases`` caps the expensive checks at their own ceilings."""
    rng = random.Random(seed)
    results = []
    for name, check, ceiling in CHECKS:
        if only and name not in only:
            continue
        count = cases if ceiling is None else min(cases, ceiling)
        logger.info("running %s with %d cases (seed %d)", name, count, seed)
        results.append(check(rng, count))
    return results
