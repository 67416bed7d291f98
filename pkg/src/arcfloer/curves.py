"""Plane curve branches given by Puiseux parametrizations.

A branch is stored as an exact parametrization: one coordinate is a pure
power of the parameter ``t`` and the other is a finite sum of rational
terms.  All invariants downstream (characteristic exponents, Newton
pairs, pairwise contact orders) are computed with exact integer and
`fractions.Fraction` arithmetic; no floating point and no numeric roots
of unity ever enter.  Conjugate comparisons are done by congruence
bookkeeping on exponents instead.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional


class CurveError(ValueError):
    """Base class for rejected curve input."""


class CurveSyntaxError(CurveError):
    """Malformed curve description text (reports the offending line)."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class NonReducedError(CurveError):
    """Two branches are equal up to conjugation of the parameter."""


class TruncationError(CurveError):
    """A truncated branch does not determine the requested invariant."""


@dataclass(frozen=True)
class PuiseuxBranch:
    """One irreducible branch ``(t^r1, sum c_k t^k)`` (or with axes swapped).

    ``axis`` says which coordinate is the pure power: ``"x"`` for
    ``x = t^r1`` with the series on ``y``, ``"y"`` for the vertical
    tangent case.  ``terms`` lists ``(exponent, coefficient)`` of the
    series coordinate, exponents strictly increasing, coefficients
    nonzero.  ``truncation`` is ``None`` for a complete (polynomial)
    parametrization, otherwise the order up to which the series is
    known exactly.
    """

    axis: str
    r1: int
    terms: tuple[tuple[int, Fraction], ...]
    truncation: Optional[int] = None

    def coefficient(self, exponent: int) -> Fraction:
        for k, c in self.terms:
            if k == exponent:
                return c
        return Fraction(0)

    @property
    def tangent_class(self) -> tuple:
        """Key identifying the tangent direction.

        X-dominant branches are tangent to ``y = c x`` where ``c`` is the
        coefficient at exponent ``r1``; y-dominant branches are tangent to
        the vertical axis.
        """
        if self.axis == "y":
            return ("y",)
        return ("x", self.coefficient(self.r1))

    @property
    def trusted_order(self) -> Optional[Fraction]:
        """Largest order (in the pure-power scale) the series determines."""
        if self.truncation is None:
            return None
        return Fraction(self.truncation, self.r1)


@dataclass(frozen=True)
class BranchInvariants:
    """Characteristic data of a branch.

    ``k`` are the characteristic exponents, ``r`` the gcd sequence with
    ``r[0]`` the multiplicity and ``r[g] == 1``, ``kappa`` the successive
    differences, and ``newton_pairs`` the coprime pairs
    ``(kappa_i / r_{i+1}, r_i / r_{i+1})``.
    """

    g: int
    k: tuple[int, ...]
    r: tuple[int, ...]
    kappa: tuple[int, ...]
    newton_pairs: tuple[tuple[int, int], ...]


def characteristic_data(branch: PuiseuxBranch) -> BranchInvariants:
    """Run the gcd recursion on the exponent support of a branch."""
    r1 = branch.r1
    exponents = [k for k, _ in branch.terms]
    k_list: list[int] = []
    r_list = [r1]
    r = r1
    while r > 1:
        nxt = [k for k in exponents if k % r != 0]
        if not nxt:
            raise CurveError(
                "non-primitive parametrization: gcd of exponents with the "
                f"parameter power is {r}, not 1"
            )
        k_i = min(nxt)
        k_list.append(k_i)
        r = gcd(k_i, r)
        r_list.append(r)
    g = len(k_list)
    kappa = tuple(
        k_list[i] - (k_list[i - 1] if i > 0 else 0) for i in range(g)
    )
    pairs = tuple(
        (kappa[i] // r_list[i + 1], r_list[i] // r_list[i + 1])
        for i in range(g)
    )
    return BranchInvariants(g, tuple(k_list), tuple(r_list), kappa, pairs)


# ---------------------------------------------------------------------------
# Conjugate-aware coincidence orders.
#
# The contact order of two branches is the maximal order of coincidence of
# their Puiseux series over all conjugates of one of them.  A conjugate
# multiplies the coefficient at exponent l by zeta^(t*l) where zeta is a
# primitive root of unity of order r2.  Since coefficients are rational, a
# cancellation at one exponent forces a congruence on t; the admissible t
# form an arithmetic progression which we refine exponent by exponent.
# ---------------------------------------------------------------------------


class _Progression:
    """Solutions of accumulated congruences, ``t = t0 (mod mod)`` in Z/n."""

    __slots__ = ("n", "t0", "mod")

    def __init__(self, n: int, t0: int = 0, mod: int = 1):
        self.n = n
        self.t0 = t0 % mod
        self.mod = mod

    @property
    def count(self) -> int:
        return self.n // self.mod

    def restrict(self, l: int, s: int) -> Optional["_Progression"]:
        """Intersect with ``{t : l*t = s (mod n)}``; ``None`` if empty."""
        n, t0, m = self.n, self.t0, self.mod
        a = (l * m) % n
        b = (s - l * t0) % n
        g = gcd(a, n)
        if b % g != 0:
            return None
        n_g = n // g
        u0 = (pow(a // g, -1, n_g) * (b // g)) % n_g
        return _Progression(n, t0 + m * u0, m * n_g)


def _series_exponents(branch: PuiseuxBranch) -> dict[Fraction, Fraction]:
    return {Fraction(k, branch.r1): c for k, c in branch.terms}


def contact_profile(
    b1: PuiseuxBranch, b2: PuiseuxBranch
) -> list[tuple[Fraction, int]]:
    """Coincidence orders of ``b1`` against every conjugate of ``b2``.

    Returns ``(order, count)`` pairs with counts summing to ``b2.r1``;
    orders are in the pure-power scale shared by the two branches.  The
    two branches must be distinct (an order of +infinity means the input
    was not reduced).
    """
    if b1.axis != b2.axis:
        # distinct tangent cones; every conjugate diverges at the linear term
        return [(Fraction(1), b2.r1)]
    s1 = _series_exponents(b1)
    s2 = _series_exponents(b2)
    support = sorted(set(s1) | set(s2))
    n = b2.r1
    live = _Progression(n)
    profile: list[tuple[Fraction, int]] = []
    for q in support:
        for br in (b1, b2):
            trusted = br.trusted_order
            if trusted is not None and q > trusted:
                raise TruncationError(
                    "branches indistinguishable at truncation: series agree "
                    f"through order {trusted} in the base scale"
                )
        a = s1.get(q, Fraction(0))
        b = s2.get(q, Fraction(0))
        if b == 0:
            # no conjugate can cancel a term only b1 has
            profile.append((q, live.count))
            return profile
        l = q * n
        assert l.denominator == 1
        l = int(l)
        if a == b:
            refined = live.restrict(l, 0)
        elif a == -b and n % 2 == 0:
            refined = live.restrict(l, n // 2)
        else:
            refined = None
        if refined is None:
            profile.append((q, live.count))
            return profile
        if refined.count < live.count:
            profile.append((q, live.count - refined.count))
        live = refined
    if b1.truncation is None and b2.truncation is None:
        raise NonReducedError(
            "non-reduced: branches are conjugate-equal parametrizations"
        )
    raise TruncationError(
        "branches indistinguishable at truncation: increase the truncation "
        "order of at least one of them"
    )


def contact_order(b1: PuiseuxBranch, b2: PuiseuxBranch) -> Fraction:
    """Maximal order of coincidence over conjugates.

    Distinct tangent directions give exactly 1; same-tangent branches give
    an order > 1 in the pure-power scale of the pair.
    """
    return max(q for q, _ in contact_profile(b1, b2))


def intersection_multiplicity(b1: PuiseuxBranch, b2: PuiseuxBranch) -> int:
    """Intersection number of two distinct branches at the origin.

    Computed directly from the Puiseux data: substitute the parametrization
    of ``b1`` into the product of conjugate factors of ``b2`` and sum the
    valuations.  Serves as an independent check on resolution multiplicities.
    """
    if b1.axis != b2.axis:
        return b1.r1 * b2.r1
    total = sum(q * count for q, count in contact_profile(b1, b2))
    value = b1.r1 * total
    assert value.denominator == 1
    return int(value)


@dataclass(frozen=True)
class CurveSpec:
    """A validated reduced singular plane curve germ."""

    name: str
    branches: tuple[PuiseuxBranch, ...]
    invariants: tuple[BranchInvariants, ...]
    contact: tuple[tuple[Optional[Fraction], ...], ...]

    @property
    def num_branches(self) -> int:
        return len(self.branches)

    def multiplicity(self) -> int:
        return sum(b.r1 for b in self.branches)


_TERM_RE = re.compile(
    r"""^\s*
        (?P<sign>[+-])?\s*
        (?P<coeff>\d+(?:/\d+)?)?               # optional rational coefficient
        \s*(?P<star>\*)?\s*
        (?P<var>t)(?:\^(?P<exp>\d+))?
        \s*$""",
    re.VERBOSE,
)

_CONST_RE = re.compile(r"^\s*[+-]?\d+(?:/\d+)?\s*$")


def _parse_side(text: str, line: int) -> list[tuple[int, Fraction]]:
    """Parse a term sum like ``-t^2 + 3/4*t^5`` into (exponent, coeff) pairs."""
    chunks = re.findall(r"[+-]?[^+-]+", text.replace(" ", ""))
    if not chunks:
        raise CurveSyntaxError("empty coordinate expression", line)
    terms: list[tuple[int, Fraction]] = []
    for chunk in chunks:
        if _CONST_RE.match(chunk):
            if Fraction(chunk) != 0:
                raise CurveSyntaxError(
                    f"constant term {chunk!r} not allowed (branches pass "
                    "through the origin)",
                    line,
                )
            continue
        m = _TERM_RE.match(chunk)
        if not m:
            raise CurveSyntaxError(f"cannot parse term {chunk!r}", line)
        coeff_text = m.group("coeff")
        coeff = Fraction(coeff_text) if coeff_text else Fraction(1)
        if m.group("sign") == "-":
            coeff = -coeff
        exp = int(m.group("exp") or 1)
        if exp <= 0:
            raise CurveSyntaxError("exponents must be positive", line)
        if coeff == 0:
            raise CurveSyntaxError("zero coefficients are not allowed", line)
        terms.append((exp, coeff))
    exps = [k for k, _ in terms]
    if len(set(exps)) != len(exps):
        raise CurveSyntaxError("duplicate exponent in term sum", line)
    terms.sort(key=lambda kc: kc[0])
    return terms


def _pure_power(terms: list[tuple[int, Fraction]]) -> Optional[int]:
    if len(terms) == 1 and terms[0][1] == 1:
        return terms[0][0]
    return None


def _build_branch(
    x_terms: list[tuple[int, Fraction]],
    y_terms: list[tuple[int, Fraction]],
    truncation: Optional[int],
    line: int,
) -> PuiseuxBranch:
    px, py = _pure_power(x_terms), _pure_power(y_terms)
    if px is not None and (py is None or px <= py):
        axis, r1, series = "x", px, y_terms
    elif py is not None:
        axis, r1, series = "y", py, x_terms
    else:
        raise CurveSyntaxError(
            "exactly one coordinate must be a pure power t^k", line
        )
    for k, _ in series:
        if k < r1 or (axis == "y" and k == r1):
            raise CurveSyntaxError(
                "series exponents must not drop below the parameter power; "
                "swap the roles of x and y or the branch is not rational-"
                "representable",
                line,
            )
    if truncation is not None:
        if series and truncation < series[-1][0]:
            raise CurveSyntaxError(
                "truncation order below the last given term", line
            )
        if truncation < r1:
            raise CurveSyntaxError(
                "truncation order below the parameter power", line
            )
    support_gcd = r1
    for k, _ in series:
        support_gcd = gcd(support_gcd, k)
    if support_gcd != 1:
        raise CurveError(
            f"line {line}: non-primitive parametrization (gcd {support_gcd})"
        )
    branch = PuiseuxBranch(axis, r1, tuple(series), truncation)
    inv = characteristic_data(branch)
    if branch.truncation is not None and inv.g > 0:
        if branch.truncation <= inv.k[-1]:
            raise TruncationError(
                f"line {line}: truncation order {branch.truncation} does not "
                f"exceed the last characteristic exponent {inv.k[-1]}"
            )
    return branch


_BRANCH_RE = re.compile(
    r"branch\s*\{\s*x\s*=\s*(?P<x>[^;]+);\s*y\s*=\s*(?P<y>[^;}]+)\s*\}"
    r"(?:\s*truncated\s+at\s+(?P<trunc>\d+))?"
)
_NAME_RE = re.compile(r'\s*curve\s+"(?P<name>[^"]*)"')


def parse_curve(text: str, default_name: str = "curve") -> CurveSpec:
    """Parse a curve description document and validate all invariants."""
    # comments run to end of line; keep newlines so errors report positions
    doc = "\n".join(raw.split("#", 1)[0] for raw in text.splitlines())

    def lineno(offset: int) -> int:
        return doc.count("\n", 0, offset) + 1

    name = default_name
    branches: list[PuiseuxBranch] = []
    pos = 0
    m = _NAME_RE.match(doc)
    if m:
        name = m.group("name")
        pos = m.end()
    while pos < len(doc):
        rest = doc[pos:]
        if not rest.strip():
            break
        skip = len(rest) - len(rest.lstrip())
        m = _BRANCH_RE.match(doc, pos + skip)
        if not m:
            raise CurveSyntaxError(
                "expected 'branch { x = ...; y = ... }'", lineno(pos + skip)
            )
        at = lineno(m.start())
        trunc = m.group("trunc")
        branches.append(
            _build_branch(
                _parse_side(m.group("x"), at),
                _parse_side(m.group("y"), at),
                int(trunc) if trunc else None,
                at,
            )
        )
        pos = m.end()
    if not branches:
        raise CurveError("curve has no branches")
    if len(branches) == 1 and branches[0].r1 == 1:
        raise CurveError("smooth germ rejected: single smooth branch")
    invariants = tuple(characteristic_data(b) for b in branches)
    b = len(branches)
    contact: list[list[Optional[Fraction]]] = [[None] * b for _ in range(b)]
    for i in range(b):
        for j in range(i + 1, b):
            # raises NonReducedError on conjugate-equal parametrizations
            c = contact_order(branches[i], branches[j])
            contact[i][j] = contact[j][i] = c
    for i in range(b):
        br = branches[i]
        if br.truncation is not None:
            for j in range(b):
                if i == j:
                    continue
                if Fraction(br.truncation, br.r1) <= contact[i][j]:
                    raise TruncationError(
                        f"branch {i + 1} truncated at {br.truncation}, not "
                        f"beyond its contact with branch {j + 1}"
                    )
    spec = CurveSpec(name, tuple(branches), invariants, _freeze(contact))
    _check_ultrametric(spec)
    return spec


def _freeze(table: list[list[Optional[Fraction]]]):
    return tuple(tuple(row) for row in table)


def _check_ultrametric(curve: CurveSpec) -> None:
    n = curve.num_branches
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if len({i, j, k}) < 3:
                    continue
                lhs = curve.contact[i][k]
                rhs = min(curve.contact[i][j], curve.contact[j][k])
                assert lhs >= rhs, "contact table violates the ultrametric"


def parse_curve_file(path: str) -> CurveSpec:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    stem = os.path.splitext(os.path.basename(path))[0]
    return parse_curve(text, default_name=stem)
