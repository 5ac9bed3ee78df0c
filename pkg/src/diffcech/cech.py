"""Cochains, the coboundary operator, and cohomology of presentations.

The coboundary is the alternating sum over the degeneracy maps,
(d f)(x0,...,x_{k+1}) = sum_i (-1)^i f(d_i(x0,...,x_{k+1})).  Nerve cochains
are tables of group values over alive tuples; quotient cochains are function
class data: one function in degree 0, crossed data (one function per group
generator, extended by the cocycle law) in degree 1 over infinite groups,
full tables over K^k for finite groups, and lazily evaluated payloads above
degree 1 over infinite groups.
"""

from __future__ import annotations

import random
from typing import Callable, Dict, List, Optional, Tuple

from .coeff import (
    CoefficientSES,
    Group,
    IntSolver,
    RAlphaGroup,
    Scalar,
    ZGroup,
    ZmodGroup,
    _snf,
    mat_mul,
    mat_vec,
    rank_and_diag,
    smith_normal_form,
)
from . import linalg
from .errors import (
    CocycleError,
    DegreeError,
    ParseError,
    TagError,
)
from .funclass import FunctionElement, act

DEFAULT_SEED = 1729
PROBES = 200
CROSSED_PROBES = 8


def _sort_parity(t):
    """Sign of the sorting permutation; 0 when the tuple has repeats."""
    t = list(t)
    sign = 1
    for i in range(len(t)):
        for j in range(len(t) - 1 - i):
            if t[j] > t[j + 1]:
                t[j], t[j + 1] = t[j + 1], t[j]
                sign = -sign
            elif t[j] == t[j + 1]:
                return 0, tuple(t)
    return sign, tuple(t)


class GroupHom:
    """A homomorphism of coefficient groups acting on raw values."""

    def __init__(self, source: Group, target: Group, fn: Callable, name: str = ""):
        self.source = source
        self.target = target
        self.fn = fn
        self.name = name

    def apply(self, value):
        return self.target.canonical(self.fn(value))

    @staticmethod
    def identity(group: Group) -> "GroupHom":
        return GroupHom(group, group, lambda v: v, "id")

    @staticmethod
    def zero(source: Group, target: Group) -> "GroupHom":
        return GroupHom(source, target, lambda v: target.zero(), "zero")

    @staticmethod
    def reduction(m: int) -> "GroupHom":
        return GroupHom(ZGroup(), ZmodGroup(m), lambda v: v % m, f"mod {m}")

    def __repr__(self):
        return f"GroupHom({self.source.tag} -> {self.target.tag}, {self.name})"


class Cochain:
    """A degree-k cochain on a presentation.

    Payload kinds: "values" (nerve table), "function" (quotient degree 0),
    "crossed" (quotient degree 1, infinite K), "table" (quotient, finite K),
    "lazy" (quotient degree >= 2, infinite K).
    """

    def __init__(self, pres, degree: int, group: Group, payload_kind: str,
                 payload):
        self.pres = pres
        self.degree = degree
        self.group = group
        self.payload_kind = payload_kind
        self.payload = payload
        self._memo = {}

    # -- constructors ---------------------------------------------------
    @staticmethod
    def nerve(pres, degree: int, group: Group, values: Dict) -> "Cochain":
        if pres.kind != "nerve":
            raise ParseError("nerve cochain needs a nerve presentation")
        tuples = pres.tuples(degree)
        vals = {}
        for t in tuples:
            if t not in values:
                raise ParseError(f"missing cochain value at tuple {t}")
            vals[t] = group.canonical(values[t])
        for t in values:
            if tuple(t) not in vals:
                raise ParseError(f"cochain value at dead or unknown tuple {t}")
        return Cochain(pres, degree, group, "values", vals)

    @staticmethod
    def function(pres, h: FunctionElement) -> "Cochain":
        if pres.kind != "quotient":
            raise ParseError("function cochain needs a quotient presentation")
        return Cochain(pres, 0, RAlphaGroup(), "function", h)

    @staticmethod
    def crossed(pres, values: Dict[int, FunctionElement]) -> "Cochain":
        if pres.kind != "quotient":
            raise ParseError("crossed cochain needs a quotient presentation")
        vals = {i: values.get(i, pres.function_class().zero())
                for i in range(pres.rank)}
        return Cochain(pres, 1, RAlphaGroup(), "crossed", vals)

    @staticmethod
    def table(pres, degree: int, table: Dict[Tuple, FunctionElement]) -> "Cochain":
        if pres.kind != "quotient" or not pres.is_finite():
            raise ParseError("table cochains need a finite-group quotient")
        full = {}
        for kt in _k_tuples(pres, degree):
            if kt not in table:
                raise ParseError(f"missing table value at {kt}")
            full[kt] = table[kt]
        return Cochain(pres, degree, RAlphaGroup(), "table", full)

    @staticmethod
    def lazy(pres, degree: int, fn: Callable) -> "Cochain":
        if pres.kind != "quotient":
            raise ParseError("lazy cochain needs a quotient presentation")
        return Cochain(pres, degree, RAlphaGroup(), "lazy", fn)

    # -- value access ----------------------------------------------------
    def value_at(self, t):
        """Nerve value at an arbitrary alive tuple (alternating extension)."""
        if self.payload_kind != "values":
            raise ParseError("value_at applies to nerve cochains")
        t = tuple(t)
        if self.pres.alternating:
            sign, s = _sort_parity(t)
            if sign == 0:
                return self.group.zero()
            v = self.payload[s]
            return v if sign == 1 else self.group.neg(v)
        return self.payload[t]

    def q_value(self, ktuple) -> FunctionElement:
        """Quotient value at a tuple of group elements (length = degree)."""
        pres = self.pres
        ktuple = tuple(pres.k_canonical(k) for k in ktuple)
        if self.payload_kind == "function":
            return self.payload
        if self.payload_kind == "crossed":
            v = self._memo.get(ktuple)
            if v is None:
                v = crossed_value(pres, self.payload, ktuple[0])
                self._memo[ktuple] = v
            return v
        if self.payload_kind == "table":
            return self.payload[ktuple]
        if self.payload_kind == "lazy":
            v = self._memo.get(ktuple)
            if v is None:
                v = self.payload(ktuple)
                self._memo[ktuple] = v
            return v
        raise ParseError("q_value applies to quotient cochains")

    # -- arithmetic -------------------------------------------------------
    def _check_compatible(self, other: "Cochain"):
        if (self.pres != other.pres or self.degree != other.degree
                or self.group != other.group):
            raise TagError("cochain mismatch (presentation, degree, or group)")

    def __add__(self, other: "Cochain") -> "Cochain":
        self._check_compatible(other)
        k = self.payload_kind
        if k == "values" and other.payload_kind == "values":
            g = self.group
            vals = {t: g.add(v, other.payload[t]) for t, v in self.payload.items()}
            return Cochain(self.pres, self.degree, g, "values", vals)
        if k == "function" and other.payload_kind == "function":
            return Cochain(self.pres, 0, self.group, "function",
                           self.payload + other.payload)
        if k == "crossed" and other.payload_kind == "crossed":
            vals = {i: v + other.payload[i] for i, v in self.payload.items()}
            return Cochain(self.pres, 1, self.group, "crossed", vals)
        if k == "table" and other.payload_kind == "table":
            vals = {t: v + other.payload[t] for t, v in self.payload.items()}
            return Cochain(self.pres, self.degree, self.group, "table", vals)
        # fall back to lazy evaluation for mixed or lazy payloads
        a, b = self, other
        return Cochain(self.pres, self.degree, self.group, "lazy",
                       lambda kt: a.q_value(kt) + b.q_value(kt))

    def __neg__(self) -> "Cochain":
        k = self.payload_kind
        if k == "values":
            g = self.group
            return Cochain(self.pres, self.degree, g, "values",
                           {t: g.neg(v) for t, v in self.payload.items()})
        if k == "function":
            return Cochain(self.pres, 0, self.group, "function", -self.payload)
        if k in ("crossed", "table"):
            return Cochain(self.pres, self.degree, self.group, k,
                           {t: -v for t, v in self.payload.items()})
        a = self
        return Cochain(self.pres, self.degree, self.group, "lazy",
                       lambda kt: -a.q_value(kt))

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + (-other)

    def scale_int(self, n: int) -> "Cochain":
        k = self.payload_kind
        if k == "values":
            g = self.group
            return Cochain(self.pres, self.degree, g, "values",
                           {t: g.mul_int(n, v) for t, v in self.payload.items()})
        if k == "function":
            return Cochain(self.pres, 0, self.group, "function",
                           self.payload.scale(n))
        if k in ("crossed", "table"):
            return Cochain(self.pres, self.degree, self.group, k,
                           {t: v.scale(n) for t, v in self.payload.items()})
        a = self
        return Cochain(self.pres, self.degree, self.group, "lazy",
                       lambda kt: a.q_value(kt).scale(n))

    def is_zero(self) -> bool:
        k = self.payload_kind
        if k == "values":
            z = self.group.zero()
            return all(v == z for v in self.payload.values())
        if k == "function":
            return self.payload.is_zero()
        if k in ("crossed", "table"):
            return all(v.is_zero() for v in self.payload.values())
        raise ParseError("lazy cochains have no decidable zero test")

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        if (self.pres != other.pres or self.degree != other.degree
                or self.group != other.group):
            return False
        if "lazy" in (self.payload_kind, other.payload_kind):
            return self is other
        if self.payload_kind != other.payload_kind:
            return False
        return self.payload == other.payload

    def __repr__(self):
        return (f"Cochain(k={self.degree}, {self.group.tag}, "
                f"{self.payload_kind})")

    # -- serialization ----------------------------------------------------
    def to_dict(self) -> dict:
        if self.payload_kind == "values":
            return {
                "degree": self.degree,
                "values": {
                    _tuple_key(t): self.group.format_el(v)
                    for t, v in sorted(self.payload.items())
                },
            }
        if self.payload_kind == "function":
            return {"degree": 0, "function": str(self.payload)}
        if self.payload_kind == "crossed":
            return {
                "degree": 1,
                "crossed": {
                    f"g{i + 1}": str(v) for i, v in sorted(self.payload.items())
                },
            }
        if self.payload_kind == "table":
            return {
                "degree": self.degree,
                "table": {
                    _ktuple_key(t): str(v) for t, v in sorted(self.payload.items())
                },
            }
        raise ParseError("lazy cochains cannot be serialized")

    @staticmethod
    def from_dict(pres, group: Group, doc: dict) -> "Cochain":
        if "degree" not in doc:
            raise ParseError("cochain document is missing 'degree'")
        k = doc["degree"]
        if "values" in doc:
            vals = {
                _parse_tuple_key(key): group.parse_el(text)
                for key, text in doc["values"].items()
            }
            return Cochain.nerve(pres, k, group, vals)
        if "function" in doc:
            cls = pres.function_class()
            return Cochain.function(pres, _parse_in_widest(cls, doc["function"]))
        if "crossed" in doc:
            cls = pres.function_class()
            vals = {}
            for key, text in doc["crossed"].items():
                if not (key.startswith("g") and key[1:].isdigit()):
                    raise ParseError(f"bad crossed key {key!r}")
                i = int(key[1:]) - 1
                if not (0 <= i < pres.rank):
                    raise ParseError(f"crossed key {key!r} out of range")
                vals[i] = _parse_in_widest(cls, text)
            return Cochain.crossed(pres, vals)
        if "table" in doc:
            cls = pres.function_class()
            vals = {
                _parse_ktuple_key(key): _parse_in_widest(cls, text)
                for key, text in doc["table"].items()
            }
            return Cochain.table(pres, k, vals)
        raise ParseError("cochain document has no payload field")


def _parse_in_widest(cls, text: str) -> FunctionElement:
    """Parse allowing the witness headroom of one extra degree."""
    try:
        return cls.parse(text)
    except Exception:
        return cls.widen(1).parse(text)


def _tuple_key(t) -> str:
    return "(" + ",".join(str(i) for i in t) + ")"


def _parse_tuple_key(key: str) -> Tuple[int, ...]:
    key = key.strip()
    if not (key.startswith("(") and key.endswith(")")):
        raise ParseError(f"bad tuple key {key!r}")
    inner = key[1:-1].strip().rstrip(",")
    if not inner:
        return ()
    try:
        return tuple(int(p) for p in inner.split(","))
    except ValueError:
        raise ParseError(f"bad tuple key {key!r}")


def _ktuple_key(kt) -> str:
    return ";".join(_tuple_key(k) for k in kt)


def _parse_ktuple_key(key: str) -> Tuple[Tuple[int, ...], ...]:
    key = key.strip()
    if not key:
        return ()
    return tuple(_parse_tuple_key(p) for p in key.split(";"))


def _k_tuples(pres, degree: int) -> List[Tuple]:
    """All degree-length tuples of elements of a finite acting group."""
    from itertools import product

    els = pres.k_elements()
    return [kt for kt in product(els, repeat=degree)]


def zero_cochain(pres, degree: int, group: Group) -> Cochain:
    if pres.kind == "nerve":
        z = group.zero()
        return Cochain.nerve(pres, degree, group,
                             {t: z for t in pres.tuples(degree)})
    if group.tag != "R(alpha)":
        raise ParseError("quotient cochains are valued in the R model")
    cls = pres.function_class()
    if degree == 0:
        return Cochain.function(pres, cls.zero())
    if pres.is_finite():
        return Cochain.table(pres, degree,
                             {kt: cls.zero() for kt in _k_tuples(pres, degree)})
    if degree == 1:
        return Cochain.crossed(pres, {})
    return Cochain.lazy(pres, degree, lambda kt: cls.zero())


# ---------------------------------------------------------------------------
# crossed data extension


def crossed_value(pres, values: Dict[int, FunctionElement], k) -> FunctionElement:
    """Extend generator data by the law kappa(k+k') = kappa(k) + kappa(k').k."""
    k = pres.k_canonical(k)
    cls = pres.function_class()
    acc = cls.zero()
    prefix = pres.k_identity()
    for i, n in enumerate(k):
        if n == 0:
            continue
        part = _crossed_single(pres, values[i], i, n)
        acc = acc + act(pres.affine_of(prefix), part)
        step = tuple(n if j == i else 0 for j in range(pres.rank))
        prefix = pres.k_add(prefix, step)
    return acc


def _crossed_single(pres, val: FunctionElement, i: int, n: int) -> FunctionElement:
    cache = getattr(pres, "_crossed_cache", None)
    if cache is None:
        cache = pres._crossed_cache = {}
    key = (val, i, n)
    hit = cache.get(key)
    if hit is not None:
        return hit

    def gen_mult(j):
        return tuple(j if t == i else 0 for t in range(pres.rank))

    if n >= 0:
        acc = pres.function_class().zero()
        for j in range(n):
            acc = acc + act(pres.affine_of(gen_mult(j)), val)
    else:
        pos = _crossed_single(pres, val, i, -n)
        acc = -act(pres.affine_of(gen_mult(n)), pos)
    cache[key] = acc
    return acc


# ---------------------------------------------------------------------------
# coboundary


def coboundary(c: Cochain) -> Cochain:
    k = c.degree
    pres = c.pres
    if pres.kind == "nerve":
        if k + 1 > pres.k_max:
            raise DegreeError(f"degree {k + 1} exceeds k_max={pres.k_max}")
        g = c.group
        out = {}
        for t in pres.tuples(k + 1):
            acc = g.zero()
            for i in range(k + 2):
                v = c.value_at(t[:i] + t[i + 1 :])
                acc = g.add(acc, v if i % 2 == 0 else g.neg(v))
            out[t] = acc
        return Cochain(pres, k + 1, g, "values", out)

    def dvalue(kt):
        k1 = kt[0]
        shifted = tuple(pres.k_add(kj, pres.k_neg(k1)) for kj in kt[1:])
        acc = act(pres.affine_of(k1), c.q_value(shifted))
        for i in range(1, k + 2):
            v = c.q_value(kt[: i - 1] + kt[i:])
            acc = acc + (-v if i % 2 else v)
        return acc

    if c.payload_kind == "function" and not pres.is_finite():
        # d of a degree-0 function is the principal crossed datum
        vals = {
            i: act(g.affine, c.payload) - c.payload
            for i, g in enumerate(pres.generators)
        }
        return Cochain.crossed(pres, vals)
    if pres.is_finite():
        return Cochain(pres, k + 1, c.group, "table",
                       {kt: dvalue(kt) for kt in _k_tuples(pres, k + 1)})
    if c.payload_kind == "crossed":
        # crossed data satisfies no relation a priori; d is evaluated lazily
        return Cochain.lazy(pres, 2, dvalue)
    return Cochain.lazy(pres, k + 1, dvalue)


# ---------------------------------------------------------------------------
# cocycle checking


class CocycleCheck:
    """Outcome of is_cocycle: truthy, or carries a counterexample."""

    def __init__(self, ok: bool, location=None, detail: str = ""):
        self.ok = ok
        self.location = location
        self.detail = detail

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return "CocycleCheck(yes)"
        return f"CocycleCheck(counterexample at {self.location}: {self.detail})"


def is_cocycle(c: Cochain, seed: int = DEFAULT_SEED) -> CocycleCheck:
    pres = c.pres
    if pres.kind == "nerve":
        if c.degree >= pres.k_max:
            # no room to evaluate d; treat top-degree cochains as cocycles
            return CocycleCheck(True, detail="top degree")
        d = coboundary(c)
        z = c.group.zero()
        for t in pres.tuples(c.degree + 1):
            if d.payload[t] != z:
                return CocycleCheck(False, t, c.group.format_el(d.payload[t]))
        return CocycleCheck(True)
    if c.degree == 0:
        for i, g in enumerate(pres.generators):
            diff = act(g.affine, c.payload) - c.payload
            if not diff.is_zero():
                return CocycleCheck(False, f"g{i + 1}", str(diff))
        return CocycleCheck(True)
    if pres.is_finite():
        d = coboundary(c)
        for kt, v in d.payload.items():
            if not v.is_zero():
                return CocycleCheck(False, kt, str(v))
        return CocycleCheck(True)
    if c.payload_kind == "crossed":
        # symbolic identities on generators, then randomized probes
        for i in range(pres.rank):
            gi = pres.generators[i]
            for j in range(i + 1, pres.rank):
                gj = pres.generators[j]
                lhs = c.payload[i] + act(gi.affine, c.payload[j])
                rhs = c.payload[j] + act(gj.affine, c.payload[i])
                if not (lhs - rhs).is_zero():
                    return CocycleCheck(False, f"(g{i + 1},g{j + 1})",
                                        str(lhs - rhs))
            if gi.torsion:
                # unreduced orbit sum: canonicalizing first would erase it
                total = _crossed_single(pres, c.payload[i], i, gi.torsion)
                if not total.is_zero():
                    return CocycleCheck(False, f"g{i + 1}^(torsion)", str(total))
        # the generator identities above already force d(c) = 0 on all of K;
        # a few probes guard the extension code itself
        rng = random.Random(seed)
        d = coboundary(c)
        for _ in range(CROSSED_PROBES):
            k1, k2 = pres.random_k(rng), pres.random_k(rng)
            v = d.q_value((k1, k2))
            if not v.is_zero():
                return CocycleCheck(False, (k1, k2), str(v))
        return CocycleCheck(True)
    # lazy payload over an infinite group: randomized probing only
    rng = random.Random(seed)
    d = coboundary(c)
    for _ in range(PROBES):
        kt = tuple(pres.random_k(rng) for _ in range(c.degree + 1))
        v = d.q_value(kt)
        if not v.is_zero():
            return CocycleCheck(False, kt, str(v))
    return CocycleCheck(True)


# ---------------------------------------------------------------------------
# boundary matrices and the cohomology engines


def boundary_matrix(pres, k: int) -> List[List[int]]:
    """Integer matrix of d: C^k -> C^{k+1} on a nerve (rows = (k+2)-tuples)."""
    cols = pres.tuples(k)
    rows = pres.tuples(k + 1)
    idx = {t: j for j, t in enumerate(cols)}
    if not rows:
        # no tuples upstairs: d is the zero map, kept as one zero row so the
        # column count survives
        return [[0] * len(cols)]
    M = [[0] * len(cols) for _ in rows]
    for r, t in enumerate(rows):
        for i in range(k + 2):
            s = t[:i] + t[i + 1 :]
            if pres.alternating:
                sign, s = _sort_parity(s)
                if sign == 0:
                    continue
            else:
                sign = 1
            M[r][idx[s]] += sign if i % 2 == 0 else -sign
    return M


class CohomologyReport:
    """Structure of H^k plus representative cocycles and a class oracle."""

    def __init__(self, pres, degree: int, group: Group, kind: str,
                 free_rank: int = 0, invariant_factors=(), dimension: int = 0,
                 representatives=(), oracle: Optional[Callable] = None,
                 note: str = ""):
        self.pres = pres
        self.degree = degree
        self.group = group
        self.kind = kind  # "integer" | "field"
        self.free_rank = free_rank
        self.invariant_factors = list(invariant_factors)
        self.dimension = dimension
        self.representatives = list(representatives)
        self._oracle = oracle
        self.note = note

    def group_description(self) -> str:
        if self.kind == "field":
            return "0" if self.dimension == 0 else f"R^{self.dimension}"
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.invariant_factors)
        return " x ".join(parts) if parts else "0"

    def class_coordinates(self, c: Cochain):
        """Coordinates of the class of a cocycle in the reported structure."""
        if self._oracle is None:
            raise ParseError("report carries no class oracle")
        return self._oracle(c)

    def is_zero_class(self, c: Cochain) -> bool:
        coords = self.class_coordinates(c)
        return all(
            (x.is_zero() if isinstance(x, Scalar) else x == 0) for x in coords
        )

    def to_dict(self) -> dict:
        doc = {
            "degree": self.degree,
            "coefficients": self.group.tag,
            "presentation": getattr(self.pres, "name", None) or self.pres.kind,
            "group": self.group_description(),
        }
        if self.kind == "integer":
            doc["free_rank"] = self.free_rank
            doc["invariant_factors"] = self.invariant_factors
        else:
            doc["dimension"] = self.dimension
        if self.note:
            doc["note"] = self.note
        try:
            doc["representatives"] = [r.to_dict() for r in self.representatives]
        except ParseError:
            pass
        return doc

    def __repr__(self):
        return (f"CohomologyReport(H^{self.degree}({self.group.tag}) = "
                f"{self.group_description()})")


def _nerve_vector(c: Cochain) -> list:
    return [c.payload[t] for t in c.pres.tuples(c.degree)]


def _nerve_from_vector(pres, degree, group, vec) -> Cochain:
    return Cochain.nerve(pres, degree, group,
                         dict(zip(pres.tuples(degree), vec)))


def _integer_cohomology(pres, k: int, group: Group) -> CohomologyReport:
    A = boundary_matrix(pres, k)
    B = (boundary_matrix(pres, k - 1) if k > 0
         else [[] for _ in pres.tuples(0)])
    n = len(pres.tuples(k))
    D, U, V, Vinv = _snf(A, want_u=True, want_v=True, want_vinv=True)
    r, diag = rank_and_diag(D)
    q = n - r
    VinvB = mat_mul(Vinv, B)
    kernel_cols = [[V[i][j] for i in range(n)] for j in range(r, n)]

    if group.tag == "Z":
        R = [VinvB[i] for i in range(r, n)]
        DR, UR, VR = smith_normal_form(R)
        rR, eR = rank_and_diag(DR)
        torsion = [e for e in eR if e > 1]
        free = q - rR
        tor_idx = [i for i in range(rR) if eR[i] > 1]
        out_idx = tor_idx + list(range(rR, q))

        def oracle(c: Cochain):
            z = mat_vec(Vinv, _nerve_vector(c))
            if any(z[i] != 0 for i in range(r)):
                raise CocycleError("class oracle applied to a non-cocycle")
            w = mat_vec(UR, z[r:])
            return tuple(
                w[i] % eR[i] if i < rR else w[i] for i in out_idx
            )

        reps = []
        if out_idx:
            solver = IntSolver([list(row) for row in UR])
            for i in out_idx:
                e = [1 if j == i else 0 for j in range(q)]
                w = solver.solve(e)
                vec = [
                    sum(kernel_cols[j][t] * w[j] for j in range(q))
                    for t in range(n)
                ]
                reps.append(_nerve_from_vector(pres, k, group, vec))
        return CohomologyReport(pres, k, group, "integer", free_rank=free,
                                invariant_factors=torsion,
                                representatives=reps, oracle=oracle)

    if group.tag.startswith("Z/"):
        import math

        m = group.m
        s = [m // math.gcd(diag[i], m) for i in range(r)]
        # generators of the mod-m kernel: scaled pivot columns plus free ones
        gen_cols = [
            [V[i][j] * s[j] for i in range(n)] for j in range(r)
        ] + kernel_cols
        # relations: boundaries (rows < r of VinvB vanish since AB = 0)
        p = len(B[0]) if B else 0
        rel = [[0] * (p + n) for _ in range(n)]
        for i in range(n):
            for j in range(p):
                if i < r:
                    if VinvB[i][j] != 0:
                        raise CocycleError("boundary outside the kernel")
                else:
                    rel[i][j] = VinvB[i][j]
        for i in range(n):
            rel[i][p + i] = m // s[i] if i < r else m
        DR, UR, VR = smith_normal_form(rel)
        rR, eR = rank_and_diag(DR)
        out_idx = [i for i in range(rR) if eR[i] > 1]
        torsion = [eR[i] for i in out_idx]

        def oracle(c: Cochain):
            x = _nerve_vector(c)
            z = mat_vec(Vinv, x)
            w = []
            for i in range(n):
                if i < r:
                    zi = z[i] % m
                    if zi % s[i] != 0:
                        raise CocycleError(
                            "class oracle applied to a non-cocycle"
                        )
                    w.append(zi // s[i])
                else:
                    w.append(z[i] % m)
            cvec = mat_vec(UR, w)
            return tuple(cvec[i] % eR[i] for i in out_idx)

        reps = []
        if out_idx:
            solver = IntSolver([list(row) for row in UR])
            for i in out_idx:
                e = [1 if j == i else 0 for j in range(n)]
                w = solver.solve(e)
                vec = [
                    sum(gen_cols[j][t] * w[j] for j in range(n)) % m
                    for t in range(n)
                ]
                reps.append(_nerve_from_vector(pres, k, group, vec))
        return CohomologyReport(pres, k, group, "integer", free_rank=0,
                                invariant_factors=torsion,
                                representatives=reps, oracle=oracle)

    raise ParseError(f"unsupported coefficient tag {group.tag!r}")


def _field_cohomology_from_matrices(pres, k: int, group, A_s, B_cols,
                                    to_vector, from_vector,
                                    note: str = "") -> CohomologyReport:
    """Generic field-coefficient H^k = ker A / span(B_cols) over Scalars."""
    kernel = linalg.nullspace(A_s)
    chosen = []
    span = [list(col) for col in B_cols]
    base_rank = linalg.rank(_cols_to_matrix(span, _veclen(A_s, B_cols, kernel)))
    cur = base_rank
    for v in kernel:
        cand = span + [list(c) for c in chosen] + [list(v)]
        if linalg.rank(_cols_to_matrix(cand, len(v))) > cur:
            chosen.append(v)
            cur += 1
    dim = len(chosen)

    def oracle(c: Cochain):
        x = to_vector(c)
        cols = span + [list(v) for v in chosen]
        coords = linalg.column_span_coords(cols, x)
        if coords is None:
            raise CocycleError("class oracle applied to a non-cocycle")
        return tuple(coords[len(span):])

    reps = [from_vector(v) for v in chosen]
    return CohomologyReport(pres, k, group, "field", dimension=dim,
                            representatives=reps, oracle=oracle, note=note)


def _veclen(A_s, B_cols, kernel):
    if A_s:
        return len(A_s[0])
    if B_cols:
        return len(B_cols[0])
    return len(kernel[0]) if kernel else 0


def _cols_to_matrix(cols, length):
    if not cols:
        return [[Scalar.of(0)] * 0 for _ in range(length)]
    return [[col[i] for col in cols] for i in range(length)]


def _nerve_field_cohomology(pres, k: int, group) -> CohomologyReport:
    A = boundary_matrix(pres, k)
    A_s = linalg.smat(A) if A and A[0] else \
        [[Scalar.of(0)] * len(pres.tuples(k)) for _ in range(0)]
    n = len(pres.tuples(k))
    if not A_s:
        A_s = [[Scalar.of(0)] * n]
    B_cols = []
    if k > 0:
        B = boundary_matrix(pres, k - 1)
        for j in range(len(B[0]) if B else 0):
            B_cols.append([Scalar.of(B[i][j]) for i in range(len(B))])

    def to_vector(c):
        return [Scalar.of(v) for v in _nerve_vector(c)]

    def from_vector(v):
        return _nerve_from_vector(pres, k, group, v)

    return _field_cohomology_from_matrices(pres, k, group, A_s, B_cols,
                                           to_vector, from_vector)


def _finite_quotient_basis(pres, degree: int, cls):
    return [(kt, e) for kt in _k_tuples(pres, degree) for e in cls.basis]


def _finite_quotient_vector(c: Cochain, degree: int, cls):
    out = []
    for kt in _k_tuples(c.pres, degree):
        out.extend(c.q_value(kt).in_class(cls).coordinates())
    return out


def _finite_quotient_from_vector(pres, degree: int, cls, vec) -> Cochain:
    d = cls.dimension
    table = {}
    for idx, kt in enumerate(_k_tuples(pres, degree)):
        table[kt] = cls.from_coordinates(vec[idx * d : (idx + 1) * d])
    if degree == 0:
        return Cochain.function(pres, table[()])
    return Cochain.table(pres, degree, table)


def _finite_quotient_cohomology(pres, k: int, group) -> CohomologyReport:
    cls = pres.function_class()
    d = cls.dimension

    def dmatrix_cols(deg):
        # columns of the coboundary matrix C^deg -> C^{deg+1}
        cols = []
        for kt in _k_tuples(pres, deg):
            for e in cls.basis:
                basis_cochain = _finite_quotient_from_vector(
                    pres, deg,
                    cls,
                    _unit_vector(len(_k_tuples(pres, deg)) * d,
                                 _k_tuples(pres, deg).index(kt) * d
                                 + cls.basis.index(e)),
                )
                dc = coboundary(basis_cochain)
                cols.append(_finite_quotient_vector(dc, deg + 1, cls))
        return cols

    A_cols = dmatrix_cols(k)
    nrows = len(_k_tuples(pres, k + 1)) * d
    A_s = _cols_to_matrix([list(c) for c in A_cols], nrows) if A_cols else \
        [[Scalar.of(0)] * (len(_k_tuples(pres, k)) * d)]
    if A_cols:
        # transpose: A maps C^k coordinates to C^{k+1} coordinates
        A_s = [[A_cols[j][i] for j in range(len(A_cols))] for i in range(nrows)]
    B_cols = dmatrix_cols(k - 1) if k > 0 else []

    def to_vector(c):
        return _finite_quotient_vector(c, k, cls)

    def from_vector(v):
        return _finite_quotient_from_vector(pres, k, cls, v)

    note = f"relative to class (n={cls.n}, D={cls.max_degree})"
    return _field_cohomology_from_matrices(pres, k, group, A_s, B_cols,
                                           to_vector, from_vector, note)


def _unit_vector(n, i):
    v = [Scalar.of(0)] * n
    v[i] = Scalar.of(1)
    return v


def cohomology(pres, group: Group, k: int) -> CohomologyReport:
    """Compute H^k of the presentation with the given coefficient group."""
    if pres.kind == "nerve":
        if k < 0 or k >= pres.k_max:
            raise DegreeError(
                f"degree {k} not supported with k_max={pres.k_max}"
            )
        if group.tag in ("Z",) or group.tag.startswith("Z/"):
            return _integer_cohomology(pres, k, group)
        if group.tag == "R(alpha)":
            return _nerve_field_cohomology(pres, k, group)
        raise ParseError(f"unsupported coefficient tag {group.tag!r} "
                         "for nerve cohomology")
    if group.tag != "R(alpha)":
        raise ParseError("quotient cohomology uses the R model coefficients")
    if k == 0:
        return h0_global_sections(pres, group)
    if pres.is_finite():
        return _finite_quotient_cohomology(pres, k, group)
    if k == 1:
        from .grpcoh import h1_group

        return h1_group(pres)
    raise DegreeError(
        "infinite-group quotient cohomology is supported in degrees 0 and 1"
    )


def h0_global_sections(pres, group: Group) -> CohomologyReport:
    """H^0 as global sections: locally constant data glued over the nerve,
    or the K-invariant functions of a quotient."""
    if pres.kind == "nerve":
        comps = pres.components()
        reps = []
        for comp in comps:
            one = _one_like(group)
            vals = {
                (i,): (one if i in comp else group.zero())
                for i in range(len(pres.charts))
            }
            reps.append(Cochain.nerve(pres, 0, group, vals))

        chart_comp = {}
        for ci, comp in enumerate(comps):
            for i in comp:
                chart_comp[i] = ci

        if group.tag == "R(alpha)":
            def oracle(c):
                _require_cocycle(c)
                return tuple(
                    Scalar.of(c.payload[(comp[0],)]) for comp in comps
                )

            return CohomologyReport(pres, 0, group, "field",
                                    dimension=len(comps),
                                    representatives=reps, oracle=oracle,
                                    note=f"{len(comps)} component(s)")

        def oracle(c):
            _require_cocycle(c)
            return tuple(c.payload[(comp[0],)] for comp in comps)

        if group.tag == "Z":
            return CohomologyReport(pres, 0, group, "integer",
                                    free_rank=len(comps),
                                    representatives=reps, oracle=oracle,
                                    note=f"{len(comps)} component(s)")
        if group.tag.startswith("Z/"):
            return CohomologyReport(pres, 0, group, "integer",
                                    invariant_factors=[group.m] * len(comps),
                                    representatives=reps, oracle=oracle,
                                    note=f"{len(comps)} component(s)")
        raise ParseError(f"unsupported coefficient tag {group.tag!r}")

    # quotient: K-invariant functions of the class, by exact elimination
    cls = pres.function_class()
    rows = []
    for g in pres.generators:
        for e in cls.basis:
            shifted = act(g.affine, cls.monomial(e))
            diff = shifted - cls.monomial(e)
            rows.append(diff)
    # constraint matrix: one row per (generator, output monomial)
    M = []
    for gi, g in enumerate(pres.generators):
        block = [rows[gi * len(cls.basis) + j].coordinates()
                 for j in range(len(cls.basis))]
        for out in range(len(cls.basis)):
            M.append([block[j][out] for j in range(len(cls.basis))])
    if not M:
        M = [[Scalar.of(0)] * cls.dimension]
    basis = linalg.nullspace(M)
    reps = [Cochain.function(pres, cls.from_coordinates(v)) for v in basis]

    def oracle(c):
        _require_cocycle(c)
        coords = linalg.column_span_coords(
            [list(v) for v in basis], c.payload.in_class(cls).coordinates()
        )
        if coords is None:
            raise CocycleError("function is not K-invariant")
        return tuple(coords)

    return CohomologyReport(pres, 0, group, "field", dimension=len(basis),
                            representatives=reps, oracle=oracle,
                            note=f"invariants of class (n={cls.n}, "
                                 f"D={cls.max_degree})")


def _require_cocycle(c: Cochain):
    chk = is_cocycle(c)
    if not chk:
        raise CocycleError(f"not a cocycle: {chk.location} -> {chk.detail}")


def _one_like(group: Group):
    if group.tag == "R(alpha)":
        return Scalar.of(1)
    if group.tag == "Q/Z":
        from fractions import Fraction

        return Fraction(1, 2)
    return 1


# ---------------------------------------------------------------------------
# functoriality


def pullback_cochain(m, c: Cochain) -> Cochain:
    """(f# c)(b0,...,bk) = c(phi(b0),...,phi(bk)) along a morphism m."""
    if c.pres != m.target:
        raise TagError("cochain does not live on the morphism target")
    src = m.source
    if src.kind == "nerve":
        vals = {t: c.value_at(m.map_tuple(t)) for t in src.tuples(c.degree)}
        return Cochain.nerve(src, c.degree, c.group, vals)
    if c.degree == 0:
        return Cochain.function(src, act(m.affine, c.payload))
    if c.degree == 1:
        if src.is_finite():
            table = {
                (kt,): act(m.affine, c.q_value((m.map_k(kt),)))
                for kt in src.k_elements()
            }
            return Cochain.table(src, 1, table)
        vals = {
            i: act(
                m.affine,
                c.q_value(
                    (m.map_k(tuple(1 if j == i else 0
                                   for j in range(src.rank))),)
                ),
            )
            for i in range(src.rank)
        }
        return Cochain.crossed(src, vals)
    if src.is_finite():
        table = {
            kt: act(m.affine, c.q_value(tuple(m.map_k(x) for x in kt)))
            for kt in _k_tuples(src, c.degree)
        }
        return Cochain.table(src, c.degree, table)
    return Cochain.lazy(
        src, c.degree,
        lambda kt: act(m.affine, c.q_value(tuple(m.map_k(x) for x in kt))),
    )


def push_coefficients(h: GroupHom, c: Cochain) -> Cochain:
    """Apply a coefficient homomorphism value-wise."""
    if c.group != h.source:
        raise TagError(f"cochain group {c.group.tag} does not match "
                       f"homomorphism source {h.source.tag}")
    if c.payload_kind != "values":
        raise ParseError("coefficient pushforward applies to nerve cochains")
    vals = {t: h.apply(v) for t, v in c.payload.items()}
    return Cochain.nerve(c.pres, c.degree, h.target, vals)


def connecting_map(ses: CoefficientSES, c: Cochain,
                   lift_fn: Optional[Callable] = None) -> Cochain:
    """The connecting homomorphism: lift value-wise, take d, pull back to A."""
    if c.group != ses.c:
        raise TagError(f"cochain group {c.group.tag} does not match the "
                       f"SES quotient {ses.c.tag}")
    if c.payload_kind != "values":
        raise ParseError("connecting map applies to nerve cochains")
    _require_cocycle(c)
    lift = lift_fn or ses.lift_fn
    b = Cochain.nerve(c.pres, c.degree, ses.b,
                      {t: lift(v) for t, v in c.payload.items()})
    db = coboundary(b)
    vals = {t: ses.injection_preimage(v) for t, v in db.payload.items()}
    return Cochain.nerve(c.pres, c.degree + 1, ses.a, vals)


# ---------------------------------------------------------------------------
# class comparison


class ClassComparison:
    """Result of classes_equal: a witness cochain or a distinctness note."""

    def __init__(self, equal: bool, witness: Optional[Cochain],
                 certificate: str):
        self.equal = equal
        self.witness = witness
        self.certificate = certificate

    def __bool__(self):
        return self.equal

    def __repr__(self):
        return ("ClassComparison(equal, witness)" if self.equal
                else f"ClassComparison(distinct: {self.certificate})")


def classes_equal(f1: Cochain, f2: Cochain) -> ClassComparison:
    """Solve d(alpha) = f2 - f1 exactly; witness alpha or distinct."""
    if f1.pres != f2.pres or f1.degree != f2.degree or f1.group != f2.group:
        raise TagError("cochains live on different presentations or degrees")
    _require_cocycle(f1)
    _require_cocycle(f2)
    pres, k = f1.pres, f1.degree
    diff = f2 - f1
    if pres.kind == "nerve":
        if k == 0:
            if diff.is_zero():
                return ClassComparison(True, zero_cochain(pres, 0, f1.group),
                                       "equal as global sections")
            return ClassComparison(False, None,
                                   "degree-0 classes differ value-wise")
        B = boundary_matrix(pres, k - 1)
        sol = IntSolver(B).solve_group(_nerve_vector(diff), f1.group)
        if sol is None:
            return ClassComparison(
                False, None,
                f"no (k-1)-cochain alpha over {f1.group.tag} solves "
                f"d(alpha) = difference",
            )
        alpha = _nerve_from_vector(pres, k - 1, f1.group, sol)
        return ClassComparison(True, alpha, "witness found")
    return _quotient_classes_equal(pres, k, diff)


def _quotient_classes_equal(pres, k: int, diff: Cochain) -> ClassComparison:
    cls = pres.function_class()
    wide = cls.widen(1)
    if k == 0:
        if diff.is_zero():
            return ClassComparison(True, None, "equal functions")
        return ClassComparison(False, None, "functions differ")
    if k == 1:
        # unknown alpha in the widened class; d(alpha)(g) = alpha.g - alpha
        rows = []
        rhs = []
        targets = (list(range(pres.rank)) if not pres.is_finite()
                   else [None])
        if pres.is_finite():
            kts = [(kt,) for kt in pres.k_elements()]
        else:
            kts = [
                (tuple(1 if j == i else 0 for j in range(pres.rank)),)
                for i in range(pres.rank)
            ]
        cols = []
        for e in wide.basis:
            mono = wide.monomial(e)
            col = []
            for kt in kts:
                de = act(pres.affine_of(kt[0]), mono) - mono
                col.extend(de.in_class(wide).coordinates())
            cols.append(col)
        target_vec = []
        for kt in kts:
            target_vec.extend(diff.q_value(kt).in_class(wide).coordinates())
        M = [[cols[j][i] for j in range(len(cols))]
             for i in range(len(target_vec))]
        sol = linalg.solve(M, target_vec)
        if sol is None:
            return ClassComparison(
                False, None,
                f"no witness in class (n={wide.n}, D={wide.max_degree})",
            )
        alpha = Cochain.function(pres, wide.from_coordinates(sol))
        return ClassComparison(True, alpha, "witness found")
    if pres.is_finite():
        # unknown (k-1)-cochain table with widened class entries
        kts_in = _k_tuples(pres, k - 1)
        kts_out = _k_tuples(pres, k)
        cols = []
        for kt in kts_in:
            for e in wide.basis:
                table = {t: wide.zero() for t in kts_in}
                table[kt] = wide.monomial(e)
                basis_cochain = (Cochain.function(pres, table[()])
                                 if k - 1 == 0
                                 else Cochain.table(pres, k - 1, table))
                dc = coboundary(basis_cochain)
                col = []
                for t in kts_out:
                    col.extend(dc.q_value(t).in_class(wide).coordinates())
                cols.append(col)
        target_vec = []
        for t in kts_out:
            target_vec.extend(diff.q_value(t).in_class(wide).coordinates())
        M = [[cols[j][i] for j in range(len(cols))]
             for i in range(len(target_vec))]
        sol = linalg.solve(M, target_vec)
        if sol is None:
            return ClassComparison(
                False, None,
                f"no witness in class (n={wide.n}, D={wide.max_degree})",
            )
        d = wide.dimension
        table = {
            kt: wide.from_coordinates(sol[i * d : (i + 1) * d])
            for i, kt in enumerate(kts_in)
        }
        alpha = (Cochain.function(pres, table[()]) if k - 1 == 0
                 else Cochain.table(pres, k - 1, table))
        return ClassComparison(True, alpha, "witness found")
    raise DegreeError("class comparison above degree 1 needs a finite group")


# ---------------------------------------------------------------------------
# random cochains


def random_cochain(pres, degree: int, group: Group, rng) -> Cochain:
    if pres.kind == "nerve":
        return Cochain.nerve(pres, degree, group,
                             {t: group.random(rng) for t in pres.tuples(degree)})
    cls = pres.function_class()
    if degree == 0:
        return Cochain.function(pres, cls.random(rng))
    if pres.is_finite():
        return Cochain.table(pres, degree,
                             {kt: cls.random(rng)
                              for kt in _k_tuples(pres, degree)})
    if degree == 1:
        return Cochain.crossed(pres, {i: cls.random(rng)
                                      for i in range(pres.rank)})
    seed = rng.randrange(1 << 30)

    def fn(kt, _cache={}):
        if kt not in _cache:
            _cache[kt] = cls.random(random.Random(f"{seed}:{kt}"))
        return _cache[kt]

    return Cochain.lazy(pres, degree, fn)


def random_cocycle(pres, degree: int, group: Group, rng,
                   distinguished=()) -> Cochain:
    """A random degree-k cocycle: a coboundary plus distinguished classes."""
    base = coboundary(random_cochain(pres, degree - 1, group, rng))
    for c in distinguished:
        base = base + c.scale_int(rng.randrange(-3, 4))
    return base
