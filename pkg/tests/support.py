"""Shared test helpers: a desk-scale jet-space oracle, canonical forms
for comparing refined graphs, and a bounded random curve generator."""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd

from arcfloer import DualGraph, parse_curve

# ---------------------------------------------------------------------------
# Exact polynomial arithmetic in the jet coefficients, truncated in t.
#
# A truncated jet polynomial is a list indexed by the power of t; each
# entry is a dict {monomial: coefficient} where a monomial is a sorted
# tuple of (variable, power) pairs over the jet coefficient variables.
# ---------------------------------------------------------------------------


def _mono_mul(m1, m2):
    powers = dict(m1)
    for var, p in m2:
        powers[var] = powers.get(var, 0) + p
    return tuple(sorted(powers.items()))


def _poly_mul(p1, p2):
    out = {}
    for m1, c1 in p1.items():
        for m2, c2 in p2.items():
            m = _mono_mul(m1, m2)
            out[m] = out.get(m, 0) + c1 * c2
    return {m: c for m, c in out.items() if c}


def _poly_add(p1, p2):
    out = dict(p1)
    for m, c in p2.items():
        out[m] = out.get(m, 0) + c
    return {m: c for m, c in out.items() if c}


class JetSeries:
    """Power series in t with polynomial coefficients, truncated above
    a fixed order."""

    def __init__(self, order, coeffs=None):
        self.order = order
        self.coeffs = [dict() for _ in range(order + 1)]
        if coeffs:
            for k, poly in coeffs.items():
                self.coeffs[k] = dict(poly)

    @classmethod
    def variable_jet(cls, name, order):
        """The generic m-jet sum_{k=1..order} name_k t^k."""
        jet = cls(order)
        for k in range(1, order + 1):
            jet.coeffs[k] = {(((f"{name}{k}", 1),)): Fraction(1)}
        return jet

    def __mul__(self, other):
        out = JetSeries(self.order)
        for i in range(self.order + 1):
            if not self.coeffs[i]:
                continue
            for j in range(self.order + 1 - i):
                if not other.coeffs[j]:
                    continue
                out.coeffs[i + j] = _poly_add(
                    out.coeffs[i + j], _poly_mul(self.coeffs[i], other.coeffs[j])
                )
        return out

    def __add__(self, other):
        out = JetSeries(self.order)
        for k in range(self.order + 1):
            out.coeffs[k] = _poly_add(self.coeffs[k], other.coeffs[k])
        return out

    def __neg__(self):
        out = JetSeries(self.order)
        for k in range(self.order + 1):
            out.coeffs[k] = {m: -c for m, c in self.coeffs[k].items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def power(self, n):
        out = JetSeries(self.order, {0: {(): Fraction(1)}})
        for _ in range(n):
            out = out * self
        return out


def jet_equations(f_xy, m):
    """Coefficient polynomials of f on a generic m-jet through the origin.

    ``f_xy(x, y)`` builds the curve equation from two JetSeries.  Returns
    ``(lower, top)`` with ``lower`` the list of coefficient polynomials of
    t^1..t^(m-1) and ``top`` the coefficient of t^m; the contact locus is
    cut out by ``lower = 0`` and ``top = 1``.
    """
    x = JetSeries.variable_jet("a", m)
    y = JetSeries.variable_jet("b", m)
    f = f_xy(x, y)
    return f.coeffs[1:m], f.coeffs[m]


def poly_as_univariate_power(poly):
    """If poly is c * v^k in one variable, return (c, v, k)."""
    if len(poly) != 1:
        return None
    (mono, c), = poly.items()
    if len(mono) != 1:
        return None
    (var, k), = mono
    return c, var, k


def poly_as_binomial_product(poly):
    """If poly is c * u^j * v^k in two variables, return (c, (u, j), (v, k))."""
    if len(poly) != 1:
        return None
    (mono, c), = poly.items()
    if len(mono) != 2:
        return None
    return c, mono[0], mono[1]


# ---------------------------------------------------------------------------
# Canonical forms of dual graphs (trees), for order-independence tests.
# ---------------------------------------------------------------------------


def canonical_form(graph: DualGraph):
    adj = graph.adjacency()

    def payload(i):
        n = graph.nodes[i]
        return (n.kind, n.branch, n.N, n.nu, n.N_branch, n.pairs)

    def form(node, parent):
        children = sorted(
            form(c, node) for c in adj[node] if c != parent
        )
        return (payload(node), tuple(children))

    return form(graph.root, None)


# ---------------------------------------------------------------------------
# Random two-branch curves with bounded exponents.
# ---------------------------------------------------------------------------


def _random_branch_text(rng: random.Random, max_exp: int = 50) -> str:
    g = rng.choice([0, 1, 1, 1, 2])
    if g == 0:
        r1 = 1
        exps = sorted(rng.sample(range(1, 9), rng.randint(1, 2)))
        terms = exps
    else:
        rhats = [rng.choice([2, 2, 3]) for _ in range(g)]
        r1 = 1
        for rh in rhats:
            r1 *= rh
        # characteristic exponents via the gcd chain, smallest first
        r_seq = [r1]
        for rh in rhats:
            r_seq.append(r_seq[-1] // rh)
        kappas = []
        for i, rh in enumerate(rhats):
            lo = 1 if i else r_seq[0] // r_seq[1] + 1  # first slope exceeds 1
            while True:
                khat = rng.randint(lo, lo + 3)
                if gcd(khat, rh) == 1:
                    break
            kappas.append(khat * r_seq[i + 1])
        k_seq = []
        acc = 0
        for kp in kappas:
            acc += kp
            k_seq.append(acc)
        if k_seq[-1] > max_exp:
            return _random_branch_text(rng, max_exp)
        terms = k_seq
        # sometimes a non-characteristic term below the first exponent
        if rng.random() < 0.4:
            mult = rng.randint(2, 3)
            extra = r1 * mult
            if extra < k_seq[0] and extra not in terms:
                terms = sorted([extra] + terms)
    coeffs = {}
    for e in terms:
        c = rng.choice([1, -1, 2, -2, 3, Fraction(1, 2)])
        coeffs[e] = c
    body = " + ".join(
        (f"{c}*t^{e}" if c != 1 else f"t^{e}") for e, c in sorted(coeffs.items())
    )
    return f"branch {{ x = t^{r1}; y = {body} }}"


def random_two_branch_curve(seed: int):
    """A validated two-branch curve with bounded random Newton pairs."""
    rng = random.Random(seed)
    for _ in range(60):
        first = _random_branch_text(rng)
        if rng.random() < 0.5:
            # share a leading segment to force deep contact
            second = _mutate_tail(rng, first)
        else:
            second = _random_branch_text(rng)
        try:
            return parse_curve(first + "\n" + second, f"random{seed}")
        except Exception:
            continue
    raise AssertionError(f"could not generate a curve for seed {seed}")


def _mutate_tail(rng: random.Random, branch_text: str) -> str:
    import re

    m = re.match(r"branch { x = t\^(\d+); y = (.*) }", branch_text)
    r1 = int(m.group(1))
    body = m.group(2)
    terms = [t.strip() for t in body.split("+")]
    keep = terms[: rng.randint(0, len(terms))]
    exps = [int(re.search(r"t\^(\d+)", t).group(1)) for t in keep] or [r1]
    tail_exp = max(exps) + rng.randint(1, 4)
    keep.append(f"{rng.choice([4, 5, -3])}*t^{tail_exp}")
    return f"branch {{ x = t^{r1}; y = {' + '.join(keep)} }}"
