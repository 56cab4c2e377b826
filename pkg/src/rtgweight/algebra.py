"""Weight algebras: an ordered domain with a top element and one monotonic,
increasing interpretation per function symbol.

Numeric algebras (size, height, affine) work over naturals plus ``INF``
(``math.inf``). Any finite result above :data:`MAX_WEIGHT` saturates to
``INF``; the compiled solver kernel stores weights as int64 and must agree
with the Python path bit for bit.
"""

from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .grammar import Signature
from .terms import Term

INF = math.inf
MAX_WEIGHT = 2**63 - 2

# kernel program modes
SUM = 0
MAX = 1


class AlgebraError(ValueError):
    pass


def is_inf(d) -> bool:
    return d is INF or (isinstance(d, float) and d == INF)


def _saturate(x):
    return INF if x > MAX_WEIGHT else x


class WeightAlgebra:
    """Base class. Subclasses provide :meth:`apply` and usually :meth:`lt`."""

    name = "abstract"
    infinity = INF

    def apply(self, symbol: str, args: Sequence):
        raise NotImplementedError

    def lt(self, a, b) -> bool:
        return a < b

    def le(self, a, b) -> bool:
        return not self.lt(b, a)

    def equal(self, a, b) -> bool:
        return not self.lt(a, b) and not self.lt(b, a)

    def render(self, d) -> str:
        return "INF" if is_inf(d) else str(d)

    def missing(self, sig: Signature) -> list[str]:
        """Problems preventing use with ``sig``; empty when fully covered."""
        return []

    def kernel_program(self, sig: Signature):
        """``{symbol: (mode, const, coeffs)}`` for the compiled solver, or None."""
        return None

    def fold(self, t: Term):
        """WG(t): evaluate the algebra bottom-up over ``t``."""
        memo: dict[int, object] = {}
        stack = [(t, False)]
        while stack:
            node, expanded = stack.pop()
            if id(node) in memo:
                continue
            if not expanded and node.children:
                stack.append((node, True))
                stack.extend((c, False) for c in node.children)
                continue
            memo[id(node)] = self.apply(node.root, [memo[id(c)] for c in node.children])
        return memo[id(t)]


class SizeAlgebra(WeightAlgebra):
    name = "size"

    def apply(self, symbol, args):
        return _saturate(1 + sum(args))

    def kernel_program(self, sig):
        return {f: (SUM, 1, (1,) * n) for f, n in sig.symbols.items()}


class HeightAlgebra(WeightAlgebra):
    name = "height"

    def apply(self, symbol, args):
        return _saturate(1 + max(args, default=0))

    def kernel_program(self, sig):
        return {f: (MAX, 1, (1,) * n) for f, n in sig.symbols.items()}


@dataclass(frozen=True)
class AffineCost:
    constant: int
    coefficients: tuple[int, ...] = ()


class AffineAlgebra(WeightAlgebra):
    """``wg_f(x) = c_f + sum_i a_{f,i} * x_i`` with ``c_f >= 0``, ``a_{f,i} >= 1``."""

    name = "affine"

    def __init__(self, costs: Mapping[str, AffineCost | tuple], *, check_laws: bool = True):
        self.costs: dict[str, AffineCost] = {}
        for f, spec in costs.items():
            if not isinstance(spec, AffineCost):
                const, coeffs = spec
                spec = AffineCost(int(const), tuple(int(a) for a in coeffs))
            if check_laws:
                if spec.constant < 0:
                    raise AlgebraError(f"{f}: negative constant {spec.constant}")
                bad = [a for a in spec.coefficients if a < 1]
                if bad:
                    raise AlgebraError(f"{f}: coefficient {bad[0]} < 1 breaks increasingness")
            self.costs[f] = spec

    def apply(self, symbol, args):
        cost = self.costs[symbol]
        total = cost.constant
        for a, x in zip(cost.coefficients, args):
            if is_inf(x):
                return INF
            total += a * x
        return _saturate(total)

    def missing(self, sig):
        problems = []
        for f, n in sig.symbols.items():
            if f not in self.costs:
                problems.append(f"no cost given for symbol {f}")
            elif len(self.costs[f].coefficients) != n:
                problems.append(f"cost for {f} has {len(self.costs[f].coefficients)} "
                                f"coefficients, symbol arity is {n}")
        return problems

    def kernel_program(self, sig):
        return {f: (SUM, c.constant, c.coefficients) for f, c in self.costs.items()
                if f in sig.symbols}


class MinTermAlgebra(WeightAlgebra):
    """Weights are the terms themselves, ordered by size and then by the
    preorder symbol sequence under ``precedence``.

    That order contains the subterm relation and is closed under contexts, so
    WG(N) comes out as the least term of L(N).
    """

    name = "minterm"

    def __init__(self, precedence: Sequence[str]):
        self.precedence = list(precedence)
        self.rank = {s: i for i, s in enumerate(self.precedence)}

    @classmethod
    def for_signature(cls, sig: Signature) -> MinTermAlgebra:
        return cls(list(sig.symbols))

    def apply(self, symbol, args):
        if any(is_inf(a) for a in args):
            return INF
        return Term(symbol, tuple(args))

    def lt(self, a, b):
        if is_inf(a):
            return False
        if is_inf(b):
            return True
        if a.size != b.size:
            return a.size < b.size
        if a == b:
            return False
        rank = self.rank
        for x, y in zip(a.preorder(), b.preorder()):
            if x != y:
                return rank[x] < rank[y]
        return False

    def sort_key(self, t: Term):
        return (t.size, tuple(self.rank[s] for s in t.preorder()))

    def missing(self, sig):
        return [f"precedence is missing symbol {f}" for f in sig.symbols
                if f not in self.rank]


# ---------------------------------------------------------------- cost files

_HEAD = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_']*)\s*(?:\(([^)]*)\))?\s*=\s*(.*?)\s*$")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*$")


def parse_costs(text: str) -> AffineAlgebra:
    """Read a ``.costs`` file: ``a = 0`` and ``j(x) = 2*x + 1`` style lines."""
    costs: dict[str, AffineCost] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _HEAD.match(line)
        if not m:
            raise AlgebraError(f"line {lineno}: cannot parse {raw.strip()!r}")
        name, params, rhs = m.groups()
        params = [p.strip() for p in params.split(",")] if params is not None else []
        if params == [""]:
            params = []
        if any(not _IDENT.match(p) for p in params) or len(set(params)) != len(params):
            raise AlgebraError(f"line {lineno}: bad parameter list for {name}")
        if name in costs:
            raise AlgebraError(f"line {lineno}: duplicate cost for {name}")
        const = None
        coeff: dict[str, int] = {}
        for part in rhs.split("+"):
            part = part.strip().replace(" ", "")
            if not part:
                raise AlgebraError(f"line {lineno}: empty summand in {rhs!r}")
            factors = part.split("*")
            nums = [f for f in factors if f.isdigit()]
            names = [f for f in factors if not f.isdigit()]
            if len(factors) > 2 or len(names) > 1 or any(not _IDENT.match(f) for f in names):
                raise AlgebraError(f"line {lineno}: summand {part!r} is not linear")
            value = 1
            for f in nums:
                value *= int(f)
            if names:
                if names[0] not in params:
                    raise AlgebraError(f"line {lineno}: unknown variable {names[0]!r}")
                coeff[names[0]] = coeff.get(names[0], 0) + value
            else:
                const = (const or 0) + value
        costs[name] = AffineCost(const or 0, tuple(coeff.get(p, 1) for p in params))
    return AffineAlgebra(costs)


def format_costs(alg: AffineAlgebra) -> str:
    lines = []
    for f, c in alg.costs.items():
        if not c.coefficients:
            lines.append(f"{f} = {c.constant}")
            continue
        params = [f"x{i + 1}" for i in range(len(c.coefficients))]
        summands = [str(c.constant)] + [f"{a}*{p}" for a, p in zip(c.coefficients, params)]
        lines.append(f"{f}({','.join(params)}) = {' + '.join(summands)}")
    return "\n".join(lines) + "\n"


def binary_numbers_costs() -> AffineAlgebra:
    """a = 0, q(x) = x, p(x) = 2x, j(x) = 2x + 1."""
    return AffineAlgebra({"a": (0, ()), "q": (0, (1,)), "p": (0, (2,)), "j": (1, (2,))})


def make_algebra(spec: str, sig: Signature | None = None) -> WeightAlgebra:
    """Build an algebra from a CLI-style name: size, height, minterm, affine:PATH."""
    if spec == "size":
        return SizeAlgebra()
    if spec == "height":
        return HeightAlgebra()
    if spec == "minterm":
        if sig is None:
            raise AlgebraError("minterm algebra needs the grammar signature")
        return MinTermAlgebra.for_signature(sig)
    if spec.startswith("affine:"):
        with open(spec[len("affine:"):], encoding="utf-8") as f:
            return parse_costs(f.read())
    raise AlgebraError(f"unknown algebra {spec!r}")


# --------------------------------------------------------------- law checking

@dataclass
class LawViolation:
    law: str
    symbol: str
    args: tuple
    detail: str


@dataclass
class LawReport:
    samples: int = 0
    violations: list[LawViolation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def random_term(sig: Signature, rng: random.Random, max_height: int) -> Term:
    constants = [f for f, n in sig.symbols.items() if n == 0]
    if not constants:
        raise AlgebraError("signature has no constants; no ground terms exist")
    if max_height <= 1:
        return Term(rng.choice(constants))
    f = rng.choice(list(sig.symbols))
    return Term(f, tuple(random_term(sig, rng, max_height - 1)
                         for _ in range(sig.symbols[f])))


def check_algebra_laws(alg: WeightAlgebra, sig: Signature, samples: int = 1000,
                       seed: int = 0, max_height: int = 3) -> LawReport:
    """Sample the monotonic, increasing and top-absorption laws.

    Argument weights are drawn from weights of random small terms; this is a
    search for counterexamples, not a proof.
    """
    rng = random.Random(seed)
    report = LawReport()
    pool = [alg.fold(random_term(sig, rng, rng.randint(1, max_height)))
            for _ in range(64)]
    pool.append(INF)
    symbols = list(sig.symbols)
    for _ in range(samples):
        f = rng.choice(symbols)
        n = sig.symbols[f]
        xs, ys = [], []
        for _ in range(n):
            u, v = rng.choice(pool), rng.choice(pool)
            if alg.lt(v, u):
                u, v = v, u
            xs.append(u)
            ys.append(v)
        report.samples += 1
        fx, fy = alg.apply(f, xs), alg.apply(f, ys)
        if not alg.le(fx, fy):
            report.violations.append(LawViolation(
                "monotonic", f, (tuple(xs), tuple(ys)),
                f"{alg.render(fx)} > {alg.render(fy)}"))
        for i, x in enumerate(xs):
            if not alg.le(x, fx):
                report.violations.append(LawViolation(
                    "increasing", f, tuple(xs),
                    f"argument {i + 1} = {alg.render(x)} exceeds result {alg.render(fx)}"))
                break
        if n:
            i = rng.randrange(n)
            zs = list(xs)
            zs[i] = INF
            fz = alg.apply(f, zs)
            if not is_inf(fz):
                report.violations.append(LawViolation(
                    "absorbing", f, tuple(zs), f"result {alg.render(fz)} is finite"))
    return report
