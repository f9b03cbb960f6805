"""Group families over explicit point sets.

Projective-line groups act on points 1..q (field elements in integer-encoding
order) and q+1 (infinity). Affine groups act on points 1..q (field elements)
or, for AGL(d,2), on the 2^d vectors encoded as bit masks.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

import numpy as np

from ..errors import IntegrityError, UnsupportedGroup
from ..permcore import CycleType, Permutation, PermGroup
from .fields import FiniteField, field_make, is_prime, prime_power

FAMILIES = (
    "Sym", "Alt", "Cyclic", "Dihedral", "AGL1", "AGammaL1", "PSL2", "PGL2",
    "PSigmaL2", "PXL2", "PGammaL2", "AGLd2", "Mathieu11", "Mathieu11on12",
    "Mathieu12", "Mathieu22", "Mathieu22c2", "Mathieu23", "Mathieu24",
    "TwoFour_A7",
)

DATA_FAMILIES = {
    "Mathieu11": ("M11", 11, 7920),
    "Mathieu11on12": ("M11@12", 12, 7920),
    "Mathieu12": ("M12", 12, 95040),
    "Mathieu22": ("M22", 22, 443520),
    "Mathieu22c2": ("M22:2", 22, 887040),
    "Mathieu23": ("M23", 23, 10200960),
    "Mathieu24": ("M24", 24, 244823040),
    "TwoFour_A7": ("2^4:A7", 16, 40320),
}

_DISPLAY = {
    "PSL2": "PSL(2,{q})", "PGL2": "PGL(2,{q})", "PSigmaL2": "PSigmaL(2,{q})",
    "PXL2": "PXL(2,{q})", "PGammaL2": "PGammaL(2,{q})", "AGL1": "AGL(1,{q})",
    "AGammaL1": "AGammaL(1,{q})", "AGLd2": "AGL({d},2)", "Sym": "S{n}",
    "Alt": "A{n}", "Cyclic": "C{n}", "Dihedral": "D{n}",
}


@dataclass(frozen=True)
class GroupSpec:
    """A catalog group: family plus the parameter the family needs.

    ``param`` is q for the field families, d for AGLd2, n for Sym/Alt and the
    prime p for Cyclic/Dihedral; data-file families take no parameter.
    """

    family: str
    param: int | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise UnsupportedGroup(f"unknown family {self.family!r}")
        f, x = self.family, self.param
        if f in DATA_FAMILIES:
            if x is not None:
                raise ValueError(f"{f} takes no parameter")
            return
        if x is None:
            raise ValueError(f"{f} needs a parameter")
        if f in ("Sym", "Alt") and x < 1:
            raise ValueError("degree must be positive")
        if f in ("Cyclic", "Dihedral") and not (is_prime(x) and x > 2):
            raise ValueError(f"{f} is built for odd primes only, got {x}")
        if f in ("AGL1", "AGammaL1", "PSL2", "PGL2", "PSigmaL2", "PXL2", "PGammaL2"):
            p, s = prime_power(x)
            if f == "PXL2" and (p == 2 or s % 2):
                raise ValueError(f"PXL(2,q) needs q an odd square, got {x}")
        if f == "AGLd2" and x < 1:
            raise ValueError("dimension must be positive")

    @property
    def degree(self) -> int:
        f, x = self.family, self.param
        if f in DATA_FAMILIES:
            return DATA_FAMILIES[f][1]
        if f in ("Sym", "Alt", "Cyclic", "Dihedral", "AGL1", "AGammaL1"):
            return x
        if f == "AGLd2":
            return 2 ** x
        return x + 1

    @property
    def name(self) -> str:
        if self.family in DATA_FAMILIES:
            return DATA_FAMILIES[self.family][0]
        if self.family == "PXL2" and self.param == 9:
            return "M10"
        return _DISPLAY[self.family].format(q=self.param, d=self.param, n=self.param)

    def expected_order(self) -> int:
        return family_order(self)

    def __str__(self) -> str:
        return self.name


def family_order(spec: GroupSpec) -> int:
    f, x = spec.family, spec.param
    if f in DATA_FAMILIES:
        return DATA_FAMILIES[f][2]
    if f == "Sym":
        return math.factorial(x)
    if f == "Alt":
        return max(1, math.factorial(x) // 2)
    if f == "Cyclic":
        return x
    if f == "Dihedral":
        return 2 * x
    if f == "AGLd2":
        return 2 ** x * math.prod(2 ** x - 2 ** i for i in range(x))
    q = x
    p, s = prime_power(q)
    if f == "AGL1":
        return q * (q - 1)
    if f == "AGammaL1":
        return q * (q - 1) * s
    psl = q * (q * q - 1) // math.gcd(2, q - 1)
    return {
        "PSL2": psl,
        "PGL2": q * (q * q - 1),
        "PSigmaL2": psl * s,
        "PXL2": psl * s,
        "PGammaL2": q * (q * q - 1) * s,
    }[f]


_PATTERNS = [
    (r"S(\d+)|Sym\((\d+)\)", "Sym"),
    (r"A(\d+)|Alt\((\d+)\)", "Alt"),
    (r"C(\d+)|Cyclic\((\d+)\)", "Cyclic"),
    (r"D(\d+)|Dihedral\((\d+)\)", "Dihedral"),
    (r"AGL\(1,(\d+)\)", "AGL1"),
    (r"A(?:Gamma|Γ)L\(1,(\d+)\)", "AGammaL1"),
    (r"PSL\(2,(\d+)\)", "PSL2"),
    (r"PGL\(2,(\d+)\)", "PGL2"),
    (r"P(?:Sigma|Σ)L\(2,(\d+)\)", "PSigmaL2"),
    (r"PXL\(2,(\d+)\)", "PXL2"),
    (r"P(?:Gamma|Γ)L\(2,(\d+)\)", "PGammaL2"),
    (r"AGL\((\d+),2\)", "AGLd2"),
]

_DATA_ALIASES = {
    "M11": "Mathieu11", "M11@11": "Mathieu11", "M11@12": "Mathieu11on12",
    "M12": "Mathieu12", "M22": "Mathieu22", "M22:2": "Mathieu22c2",
    "M23": "Mathieu23", "M24": "Mathieu24", "2^4:A7": "TwoFour_A7",
}


def parse_spec(text: str) -> GroupSpec:
    """Parse names such as ``PSL(2,8)``, ``PGammaL(2,32)``, ``AGL(3,2)``,
    ``M22:2``, ``M11@12``, ``M10``, ``S6``."""
    t = text.strip().replace(" ", "")
    if t in _DATA_ALIASES:
        return GroupSpec(_DATA_ALIASES[t])
    if t in FAMILIES and t in DATA_FAMILIES:
        return GroupSpec(t)
    if t == "M10":
        return GroupSpec("PXL2", 9)
    for pattern, family in _PATTERNS:
        m = re.fullmatch(pattern, t)
        if m:
            val = next(g for g in m.groups() if g is not None)
            return GroupSpec(family, int(val))
    raise UnsupportedGroup(f"cannot parse group name {text!r}")


# ---------------------------------------------------------------------------
# projective line


class ProjectiveLine:
    """PG(1,q): field element z is point z+1, infinity is point q+1."""

    def __init__(self, field: FiniteField):
        self.field = field
        self.q = field.q
        self.inf = field.q  # 0-based index of infinity

    def mobius(self, a: int, b: int, c: int, d: int) -> Permutation:
        """z -> (a z + b) / (c z + d)."""
        F = self.field
        if F.sub(F.mul(a, d), F.mul(b, c)) == 0:
            raise ValueError("singular matrix")
        z = F.elements
        num = F.add(F.mul(a, z), b)
        den = F.add(F.mul(c, z), d)
        img = np.empty(self.q + 1, dtype=np.int64)
        zero = den == 0
        img[:self.q] = np.where(zero, self.inf, F.mul(num, F.inv(np.where(zero, 1, den))))
        img[self.inf] = self.inf if c == 0 else F.div(a, c)
        return Permutation._checked(img.tolist())

    def frobenius(self, power: int = 1) -> Permutation:
        F = self.field
        img = np.empty(self.q + 1, dtype=np.int64)
        img[:self.q] = F.pow(F.elements, F.p ** power)
        img[self.inf] = self.inf
        return Permutation._checked(img.tolist())

    def point(self, z) -> int:
        """One-based point label of a field element, or of ``'inf'``."""
        return self.q + 1 if z == "inf" else int(z) + 1


def _affine(F: FiniteField, a: int, b: int) -> Permutation:
    z = F.elements
    return Permutation._checked(F.add(F.mul(a, z), b).tolist())


def _affine_frobenius(F: FiniteField) -> Permutation:
    return Permutation._checked(F.frobenius(F.elements).tolist())


def _compose_all(perms):
    out = perms[0]
    for p in perms[1:]:
        out = out * p
    return out


def projective_generators(family: str, q: int) -> list[Permutation]:
    p, s = prime_power(q)
    F = field_make(p, s)
    L = ProjectiveLine(F)
    w = F.primitive
    one = 1
    minus_one = F.neg(one)
    gens = [
        L.mobius(one, one, 0, one),          # z -> z + 1
        L.mobius(F.mul(w, w), 0, 0, one),    # z -> w^2 z
        L.mobius(0, minus_one, one, 0),      # z -> -1/z
    ]
    diag = L.mobius(w, 0, 0, one)            # z -> w z, non-square multiplier when q odd
    frob = L.frobenius()
    if family == "PSL2":
        return gens
    if family == "PGL2":
        return gens + [diag]
    if family == "PSigmaL2":
        return gens + [frob]
    if family == "PXL2":
        return gens + [diag * frob]
    if family == "PGammaL2":
        return gens + [diag, frob]
    raise UnsupportedGroup(family)


def affine_generators(family: str, q: int) -> list[Permutation]:
    p, s = prime_power(q)
    F = field_make(p, s)
    gens = [_affine(F, 1, 1), _affine(F, F.primitive, 0)]
    if family == "AGammaL1":
        gens.append(_affine_frobenius(F))
    return gens


def agl_d2_generators(d: int) -> list[Permutation]:
    n = 2 ** d
    v = np.arange(n)

    def linear(images_of_basis):
        out = np.zeros(n, dtype=np.int64)
        for i, img in enumerate(images_of_basis):
            out ^= np.where((v >> i) & 1, img, 0)
        return Permutation._checked(out.tolist())

    translation = Permutation._checked((v ^ 1).tolist())
    if d == 1:
        return [translation]
    basis = [1 << i for i in range(d)]
    transvection = linear([basis[0] ^ basis[1]] + basis[1:])   # e1 -> e1 + e2
    cycle = linear(basis[1:] + basis[:1])                       # e_i -> e_{i+1}
    return [transvection, cycle, translation]


def sym_generators(n: int) -> list[Permutation]:
    if n == 1:
        return []
    if n == 2:
        return [Permutation.from_cycles(2, (1, 2))]
    return [Permutation.from_cycles(n, (1, 2)), Permutation.from_cycles(n, tuple(range(1, n + 1)))]


def alt_generators(n: int) -> list[Permutation]:
    if n < 3:
        return []
    if n == 3:
        return [Permutation.from_cycles(3, (1, 2, 3))]
    long = tuple(range(1, n + 1)) if n % 2 else tuple(range(2, n + 1))
    return [Permutation.from_cycles(n, (1, 2, 3)), Permutation.from_cycles(n, long)]


# ---------------------------------------------------------------------------
# generator data file

DEFAULT_DATA = "generators.json"


def load_generator_data(path: str | Path | None = None) -> dict[str, dict]:
    """Read the generator data file into {name: record}."""
    if path is None:
        text = resources.files("parthom.catalog.data").joinpath(DEFAULT_DATA).read_text()
    else:
        text = Path(path).read_text()
    records = json.loads(text)["groups"]
    return {r["name"]: r for r in records}


@lru_cache(maxsize=None)
def _data_group(family: str, path: str | None) -> PermGroup:
    name, degree, order = DATA_FAMILIES[family]
    records = load_generator_data(path)
    if name not in records:
        raise IntegrityError(f"{name} missing from generator data")
    rec = records[name]
    if rec["degree"] != degree:
        raise IntegrityError(f"{name}: degree {rec['degree']} != {degree}")
    gens = [Permutation(g) for g in rec["generators"]]
    G = PermGroup(gens, degree, name=name)
    if G.order() != order:
        raise IntegrityError(f"{name}: chain order {G.order()} != {order}")
    return G


_data_path: str | None = None


def set_data_path(path: str | Path | None) -> None:
    global _data_path
    _data_path = None if path is None else str(path)
    build.cache_clear()


@lru_cache(maxsize=None)
def build(spec: GroupSpec) -> PermGroup:
    """Construct the catalog group and check its order against the family formula."""
    f, x = spec.family, spec.param
    if f in DATA_FAMILIES:
        return _data_group(f, _data_path)
    if f == "Sym":
        gens = sym_generators(x)
    elif f == "Alt":
        gens = alt_generators(x)
    elif f == "Cyclic":
        gens = [Permutation.from_cycles(x, tuple(range(1, x + 1)))]
    elif f == "Dihedral":
        F = field_make(x, 1)
        gens = [_affine(F, 1, 1), _affine(F, F.neg(1), 0)]
    elif f in ("AGL1", "AGammaL1"):
        gens = affine_generators(f, x)
    elif f == "AGLd2":
        gens = agl_d2_generators(x)
    else:
        gens = projective_generators(f, x)
    G = PermGroup(gens, spec.degree, name=spec.name)
    expected = family_order(spec)
    if G.order() != expected:
        raise IntegrityError(f"{spec.name}: chain order {G.order()} != {expected}")
    if f in ("Sym", "Alt"):
        # class sizes are known; skip the element sweep
        G._hist = symmetric_class_sizes(x, even_only=(f == "Alt"))
    return G


def _partitions(n: int, largest: int):
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def symmetric_class_sizes(n: int, even_only: bool = False) -> dict[CycleType, int]:
    """Number of elements of each cycle type in S_n (or A_n): n!/z_lambda."""
    out = {}
    for lam in _partitions(n, n):
        if even_only and (n - len(lam)) % 2:
            continue
        z = 1
        for length in set(lam):
            m = lam.count(length)
            z *= length ** m * math.factorial(m)
        out[CycleType(lam)] = math.factorial(n) // z
    return out


def _prime_powers(lo: int, hi: int) -> list[int]:
    out = []
    for q in range(max(2, lo), hi + 1):
        try:
            prime_power(q)
        except ValueError:
            continue
        out.append(q)
    return out


def catalog_specs(max_degree: int, min_degree: int = 2) -> list[GroupSpec]:
    """Every catalog group with degree in [min_degree, max_degree], in a
    fixed order (family, then parameter)."""
    out: list[GroupSpec] = []
    for n in range(max(2, min_degree), max_degree + 1):
        out.append(GroupSpec("Sym", n))
        if n >= 3:
            out.append(GroupSpec("Alt", n))
    for p in range(3, max_degree + 1):
        if is_prime(p) and p >= min_degree:
            out += [GroupSpec("Cyclic", p), GroupSpec("Dihedral", p)]
    for q in _prime_powers(min_degree, max_degree):
        out.append(GroupSpec("AGL1", q))
        if prime_power(q)[1] > 1:
            out.append(GroupSpec("AGammaL1", q))
    for q in _prime_powers(min_degree - 1, max_degree - 1):
        p, s = prime_power(q)
        fams = ["PSL2", "PGL2"] if p > 2 else ["PSL2"]
        if s > 1:
            fams += ["PSigmaL2", "PGammaL2"] if p > 2 else ["PGammaL2"]
        if p > 2 and s % 2 == 0:
            fams.append("PXL2")
        out += [GroupSpec(f, q) for f in fams]
    d = 2
    while 2 ** d <= max_degree:
        if 2 ** d >= min_degree:
            out.append(GroupSpec("AGLd2", d))
        d += 1
    for fam, (_, deg, _) in DATA_FAMILIES.items():
        if min_degree <= deg <= max_degree:
            out.append(GroupSpec(fam))
    return out
