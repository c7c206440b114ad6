"""Simple-group order arithmetic and the divisibility scans built on it.

Orders of the groups of Lie type are assembled from cyclotomic values
Phi_d(q), each factored separately, so that even |G_2(q)| for large q never
requires factoring a huge integer.  The scans mirror the structure of the
K_4/K_5/K_6 case analysis: candidates come from an embedded list of specific
groups plus parametrized families driven by divisor enumeration, and the final
filter is the pair of divisibility conditions

    |T| divides B * r * s^l     and     c * r * s^l divides |T|

for odd primes r < s, with (B, c) = (2^25 * 3^2 * 7, 7) or (2^9 * 3^4 * 5^2 * 7, 35).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .numtheory import (
    FactoredInteger,
    divisors,
    factorize,
    is_prime,
    prime_count,
    prime_power_decomposition,
)

__all__ = [
    "FactoredInteger",
    "Family",
    "GroupOrderEntry",
    "DivisorConditionQuery",
    "order_formula",
    "prime_count",
    "enumerate_primes_by_divisor_condition",
    "scan_prime_powers",
    "heptic_root_exists",
    "k_filter",
    "admissible_rsl",
    "PROFILES",
]


# ----------------------------------------------------------------------------
# cyclotomic building blocks


def _mobius(n: int) -> int:
    fac = factorize(n) if n > 1 else {}
    if any(e > 1 for e in fac.values()):
        return 0
    return -1 if len(fac) % 2 else 1


@lru_cache(maxsize=None)
def _cyclotomic_value(d: int, q: int) -> int:
    num, den = 1, 1
    for e in divisors(d):
        mu = _mobius(d // e)
        if mu == 1:
            num *= q ** e - 1
        elif mu == -1:
            den *= q ** e - 1
    assert num % den == 0
    return num // den


@lru_cache(maxsize=None)
def _factored_phi(d: int, q: int) -> FactoredInteger:
    return FactoredInteger.from_int(_cyclotomic_value(d, q))


def q_power_minus_one(q: int, k: int) -> FactoredInteger:
    """Factored q^k - 1 as the product of Phi_d(q) over d | k."""
    out = FactoredInteger()
    for d in divisors(k):
        out = out * _factored_phi(d, q)
    return out


def q_power_plus_one(q: int, k: int) -> FactoredInteger:
    """Factored q^k + 1 as the product of Phi_d(q) over d | 2k with d not dividing k."""
    out = FactoredInteger()
    for d in divisors(2 * k):
        if k % d:
            out = out * _factored_phi(d, q)
    return out


def _q_power(q: int, k: int) -> FactoredInteger:
    p, f = _prime_power(q)
    return FactoredInteger(((p, f * k),)) if k else FactoredInteger()


def _prime_power(q: int) -> tuple[int, int]:
    pf = prime_power_decomposition(q)
    if pf is None:
        raise ValueError(f"{q} is not a prime power")
    return pf


def _div_gcd(order: FactoredInteger, g: int) -> FactoredInteger:
    return order / g if g > 1 else order


# ----------------------------------------------------------------------------
# order formulas


def psl_order(n: int, q: int) -> FactoredInteger:
    """|PSL(n,q)| = q^(n(n-1)/2) prod_{i=2..n} (q^i - 1) / (n, q-1)."""
    out = _q_power(q, n * (n - 1) // 2)
    for i in range(2, n + 1):
        out = out * q_power_minus_one(q, i)
    return _div_gcd(out, math.gcd(n, q - 1))


def psu_order(n: int, q: int) -> FactoredInteger:
    """|PSU(n,q)| = q^(n(n-1)/2) prod_{i=2..n} (q^i - (-1)^i) / (n, q+1)."""
    out = _q_power(q, n * (n - 1) // 2)
    for i in range(2, n + 1):
        out = out * (q_power_minus_one(q, i) if i % 2 == 0 else q_power_plus_one(q, i))
    return _div_gcd(out, math.gcd(n, q + 1))


def psp_order(n: int, q: int) -> FactoredInteger:
    """|PSp(n,q)| for even n = 2m; also the order of O_{2m+1}(q)."""
    if n % 2:
        raise ValueError("symplectic dimension must be even")
    m = n // 2
    out = _q_power(q, m * m)
    for i in range(1, m + 1):
        out = out * q_power_minus_one(q, 2 * i)
    return _div_gcd(out, math.gcd(2, q - 1))


def omega_plus_order(n: int, q: int) -> FactoredInteger:
    """|P Omega^+(2m,q)| = q^(m(m-1)) (q^m - 1) prod_{i<m} (q^{2i} - 1) / (4, q^m - 1)."""
    m = n // 2
    out = _q_power(q, m * (m - 1)) * q_power_minus_one(q, m)
    for i in range(1, m):
        out = out * q_power_minus_one(q, 2 * i)
    return _div_gcd(out, math.gcd(4, q ** m - 1))


def omega_minus_order(n: int, q: int) -> FactoredInteger:
    """|P Omega^-(2m,q)| = q^(m(m-1)) (q^m + 1) prod_{i<m} (q^{2i} - 1) / (4, q^m + 1)."""
    m = n // 2
    out = _q_power(q, m * (m - 1)) * q_power_plus_one(q, m)
    for i in range(1, m):
        out = out * q_power_minus_one(q, 2 * i)
    return _div_gcd(out, math.gcd(4, q ** m + 1))


def g2_order(q: int) -> FactoredInteger:
    return _q_power(q, 6) * q_power_minus_one(q, 6) * q_power_minus_one(q, 2)


def suzuki_order(q: int) -> FactoredInteger:
    return _q_power(q, 2) * q_power_plus_one(q, 2) * q_power_minus_one(q, 1)


def ree_order(q: int) -> FactoredInteger:
    return _q_power(q, 3) * q_power_plus_one(q, 3) * q_power_minus_one(q, 1)


def triality_order(q: int) -> FactoredInteger:
    """|3D4(q)| = q^12 (q^8 + q^4 + 1)(q^6 - 1)(q^2 - 1)."""
    return (_q_power(q, 12) * _factored_phi(3, q ** 4) * q_power_minus_one(q, 6)
            * q_power_minus_one(q, 2))


def alternating_order(n: int) -> FactoredInteger:
    if n < 5:
        raise ValueError("alternating groups are simple only for n >= 5")
    return FactoredInteger.from_int(math.factorial(n) // 2)


class Family(str, Enum):
    PSL2 = "PSL2"
    PSL3 = "PSL3"
    PSL4 = "PSL4"
    PSL5 = "PSL5"
    PSU3 = "PSU3"
    PSU4 = "PSU4"
    O5 = "O5"
    Sz = "Sz"
    Ree = "Ree"
    G2 = "G2"


# smallest q for which the family member is simple
_MIN_Q = {"PSL2": 4, "PSL3": 2, "PSL4": 2, "PSL5": 2, "PSU3": 3, "PSU4": 2,
          "O5": 3, "Sz": 8, "Ree": 27, "G2": 3}


def family_label(family: Family | str, q: int) -> str:
    fam = Family(family).value
    if fam.startswith("PSL") or fam.startswith("PSU"):
        return f"{fam[:3]}({fam[3]},{q})"
    if fam == "O5":
        return f"PSp(4,{q})"
    if fam == "G2":
        return f"G2({q})"
    return f"{fam}({q})"


def order_formula(family: Family | str, q: int) -> FactoredInteger:
    """Exact factored order of the simple group of the given family over GF(q).

    O5 uses |O_5(q)| = |PSp(4,q)| = q^4 (q^2 - 1)(q^4 - 1) / (2, q - 1).
    """
    fam = Family(family).value
    p, f = _prime_power(q)
    if q < _MIN_Q[fam]:
        raise ValueError(f"{fam} is not simple (or not defined) for q = {q}")
    if fam == "Sz" and (p != 2 or f % 2 == 0):
        raise ValueError("Suzuki groups need q = 2^(2m+1)")
    if fam == "Ree" and (p != 3 or f % 2 == 0):
        raise ValueError("Ree groups need q = 3^(2m+1)")
    if fam.startswith("PSL"):
        return psl_order(int(fam[3]), q)
    if fam.startswith("PSU"):
        return psu_order(int(fam[3]), q)
    if fam == "O5":
        return psp_order(4, q)
    if fam == "G2":
        return g2_order(q)
    if fam == "Sz":
        return suzuki_order(q)
    return ree_order(q)


# ----------------------------------------------------------------------------
# embedded specific groups


@dataclass(frozen=True)
class GroupOrderEntry:
    name: str
    order: FactoredInteger
    family: str  # alternating | sporadic | classical-parametrized | embedded-specific

    def to_json(self) -> dict:
        return {"name": self.name, "order": self.order.to_json(), "family": self.family}


# Sporadic orders (standard ATLAS values).
_SPORADIC = {
    "M11": "2^4*3^2*5*11",
    "M12": "2^6*3^3*5*11",
    "M22": "2^7*3^2*5*7*11",
    "M23": "2^7*3^2*5*7*11*23",
    "M24": "2^10*3^3*5*7*11*23",
    "J1": "2^3*3*5*7*11*19",
    "J2": "2^7*3^3*5^2*7",
    "J3": "2^7*3^5*5*17*19",
    "HS": "2^9*3^2*5^3*7*11",
    "He": "2^10*3^3*5^2*7^3*17",
    "McL": "2^7*3^6*5^3*7*11",
    "Co2": "2^18*3^6*5^3*7*11*23",
    "Co3": "2^10*3^7*5^3*7*11*23",
    "Suz": "2^13*3^7*5^2*7*11*13",
    "Ru": "2^14*3^3*5^3*7*13*29",
    "HN": "2^14*3^6*5^6*7*11*19",
    "Fi22": "2^17*3^9*5^2*7*11*13",
}


def _named_order(name: str) -> tuple[FactoredInteger, str]:
    """Order of a group given by a conventional name such as 'PSp(4,7)'."""
    if name in _SPORADIC:
        return FactoredInteger.parse(_SPORADIC[name]), "sporadic"
    if name == "2F4(2)'":
        return FactoredInteger.parse("2^11*3^3*5^2*13"), "embedded-specific"
    if name.startswith("A") and name[1:].isdigit():
        return alternating_order(int(name[1:])), "alternating"
    head, _, args = name.partition("(")
    nums = [int(x) for x in args.rstrip(")").split(",")] if args else []
    table: dict[str, Callable[..., FactoredInteger]] = {
        "PSL": psl_order, "PSU": psu_order, "PSp": psp_order,
        "O+": omega_plus_order, "O-": omega_minus_order,
    }
    if head in table:
        return table[head](*nums), "embedded-specific"
    if head == "O":  # O_{2m+1}(q) has the order of PSp(2m,q)
        return psp_order(nums[0] - 1, nums[1]), "embedded-specific"
    if head == "G2":
        return g2_order(nums[0]), "embedded-specific"
    if head == "Sz":
        return suzuki_order(nums[0]), "embedded-specific"
    if head == "3D4":
        return triality_order(nums[0]), "embedded-specific"
    raise KeyError(name)


# Simple K_3-groups (all eight of them).
K3_GROUPS = ("A5", "A6", "PSL(2,7)", "PSL(2,8)", "PSL(2,17)", "PSL(3,3)", "PSU(3,3)", "PSU(4,2)")

# Simple K_4-groups that are not of the form PSL(2,q).
K4_SPECIFIC = (
    "A7", "A8", "A9", "A10", "M11", "M12", "J2",
    "PSL(3,4)", "PSL(3,5)", "PSL(3,7)", "PSL(3,8)", "PSL(3,17)", "PSL(4,3)",
    "PSp(4,4)", "PSp(4,5)", "PSp(4,7)", "PSp(4,9)", "PSp(6,2)", "O+(8,2)", "G2(3)",
    "PSU(3,4)", "PSU(3,5)", "PSU(3,7)", "PSU(3,8)", "PSU(3,9)", "PSU(4,3)", "PSU(5,2)",
    "Sz(8)", "Sz(32)", "3D4(2)", "2F4(2)'",
)

# The thirty specific simple K_5-groups outside the parametrized families.
K5_SPECIFIC = (
    "A11", "A12", "M22", "J3", "HS", "He", "McL", "PSL(4,4)", "PSL(4,5)", "PSL(4,7)",
    "PSL(5,2)", "PSL(5,3)", "PSL(6,2)", "O(7,3)", "O(9,2)", "PSp(6,3)", "PSp(8,2)",
    "PSU(4,4)", "PSU(4,5)", "PSU(4,7)", "PSU(4,9)", "PSU(5,3)", "PSU(6,2)",
    "O+(8,3)", "O-(8,2)", "3D4(3)", "G2(4)", "G2(5)", "G2(7)", "G2(9)",
)

# Specific simple K_6-groups embedded for the six-prime case.  This list is
# not the complete classification list: it holds the sporadic and alternating
# members whose orders are needed to settle the scan, and is documented as
# partial in the README.
K6_SPECIFIC_PARTIAL = (
    "A13", "A14", "A15", "A16", "J1", "M23", "M24", "Co2", "Co3", "Suz", "Ru", "HN", "Fi22",
)


def specific_groups(names: Iterable[str]) -> list[GroupOrderEntry]:
    out = []
    for name in names:
        order, fam = _named_order(name)
        out.append(GroupOrderEntry(name, order, fam))
    return out


def named_order(name: str) -> FactoredInteger:
    """Order of a group name understood by the embedded table (e.g. 'J2', 'PSL(3,8)')."""
    return _named_order(name)[0]


# ----------------------------------------------------------------------------
# divisor-driven enumeration


@dataclass(frozen=True)
class DivisorConditionQuery:
    """Find q with (q + shift) | D, or (q + shift)/2 | D when halved.

    ``shifts`` lists the signs to try (so (1, -1) means "q+1 or q-1").
    ``prime_count_target`` constrains pi(q^2 - 1) when not None.
    ``min_base_prime`` excludes prime powers whose prime is smaller.
    ``order_filter`` is an optional extra predicate on q.
    """

    D: FactoredInteger
    shifts: tuple[int, ...] = (1, -1)
    halved: bool = False
    prime_count_target: int | None = None
    allow_prime_powers: bool = False
    min_value: int = 5
    max_value: int = 2 ** 25
    min_base_prime: int = 2
    order_filter: Callable[[int], bool] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.D.value < 1:
            raise ValueError("D must be positive")
        if self.min_value > self.max_value:
            raise ValueError("empty search window")
        if not self.shifts or any(s not in (1, -1) for s in self.shifts):
            raise ValueError("shifts must be a nonempty subset of {+1, -1}")


def _pi_q2_minus_1(q: int) -> int:
    return (FactoredInteger.from_int(q - 1) * FactoredInteger.from_int(q + 1)).prime_count()


def enumerate_primes_by_divisor_condition(qry: DivisorConditionQuery) -> list[int]:
    """All q in the window meeting the query, found by walking the divisors of D."""
    found = set()
    for d in divisors(qry.D):
        x = 2 * d if qry.halved else d
        for shift in qry.shifts:
            q = x - shift
            if not qry.min_value <= q <= qry.max_value:
                continue
            pf = prime_power_decomposition(q)
            if pf is None:
                continue
            p, f = pf
            if f > 1 and not qry.allow_prime_powers:
                continue
            if p < qry.min_base_prime:
                continue
            if qry.prime_count_target is not None and _pi_q2_minus_1(q) != qry.prime_count_target:
                continue
            if qry.order_filter is not None and not qry.order_filter(q):
                continue
            found.add(q)
    return sorted(found)


def scan_prime_powers(p: int, max_exponent: int, prime_count_target: int | None = None,
                      predicate: Callable[[int], bool] | None = None) -> list[int]:
    """Powers p^i (1 <= i <= max_exponent) with pi(q^2 - 1) equal to the target."""
    out = []
    for i in range(1, max_exponent + 1):
        q = p ** i
        if prime_count_target is not None and _pi_q2_minus_1(q) != prime_count_target:
            continue
        if predicate is not None and not predicate(q):
            continue
        out.append(q)
    return out


def heptic_root_exists(m: int) -> bool:
    """True iff x^6 + ... + x + 1 = 0 has a solution modulo m."""
    from .graphs import solve_heptic_congruence

    return bool(solve_heptic_congruence(m))


# ----------------------------------------------------------------------------
# the two divisibility profiles

@dataclass(frozen=True)
class Profile:
    name: str
    bound: FactoredInteger   # |T| divides bound * r * s^l
    core: FactoredInteger    # core * r * s^l divides |T|


PROFILES = {
    "lemma31": Profile("lemma31", FactoredInteger.parse("2^25*3^2*7"), FactoredInteger.parse("7")),
    "lemma32": Profile("lemma32", FactoredInteger.parse("2^9*3^4*5^2*7"), FactoredInteger.parse("5*7")),
}


def _check_rsl(r: int, s: int, l: int):
    if not (is_prime(r) and is_prime(s) and r % 2 and s % 2 and r < s and l >= 1):
        raise ValueError(f"need odd primes r < s and l >= 1, got r={r}, s={s}, l={l}")


def k_filter(order: FactoredInteger, profile: str, r: int, s: int, l: int) -> bool:
    """Both divisibility conditions of the chosen profile for the triple (r, s, l)."""
    _check_rsl(r, s, l)
    prof = PROFILES[profile]
    extra = FactoredInteger.from_dict({r: 1}) * FactoredInteger.from_dict({s: l})
    return order.divides(prof.bound * extra) and (prof.core * extra).divides(order)


def admissible_rsl(order: FactoredInteger, profile: str) -> list[tuple[int, int, int]]:
    """All (r, s, l) for which k_filter holds; r, s range over odd primes of |T|."""
    odd = [p for p in order.primes if p > 2]
    out = []
    for i, r in enumerate(odd):
        for s in odd[i + 1:]:
            for l in range(1, order.exponent(s) + 1):
                if k_filter(order, profile, r, s, l):
                    out.append((r, s, l))
    return out


def exponent_caps_filter(caps: dict[int, int], required: Sequence[int] = (),
                         other_max: int | None = None,
                         order_of: Callable[[int], FactoredInteger] = lambda q: order_formula("PSL2", q),
                         ) -> Callable[[int], bool]:
    """Predicate on q bounding prime exponents of |PSL(2,q)|.

    ``caps`` bounds named primes, ``required`` must divide the order, and
    ``other_max`` bounds every remaining prime except the characteristic.
    """
    def pred(q: int) -> bool:
        p = _prime_power(q)[0]
        order = order_of(q)
        d = order.as_dict()
        if any(d.get(x, 0) > e for x, e in caps.items()):
            return False
        if any(x not in d for x in required):
            return False
        if other_max is not None:
            for x, e in d.items():
                if x not in caps and x != p and e > other_max:
                    return False
        return True

    return pred
