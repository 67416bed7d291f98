"""Connected components of the restricted contact locus and their
compactly supported cohomology.

Components come in three shapes, all read off the m-separating dual
graph: copies of ``C* x C^M`` over multiplicity-dividing divisors in
trunks, copies of ``C^K`` over the dominant divisor of an end whose
rupture multiplicity does not divide ``m``, and copies of ``T x C^M``
over rupture divisors with ``N | m``, where ``T`` is a punctured compact
Riemann surface.  Dimensions are over the two-element field; the cells
have torsion-free cohomology so these equal integral Betti numbers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .decomposition import GraphDecomposition
from .resolution import DualGraph


class GradedDims:
    """Finite-support map from integer degree to dimension."""

    __slots__ = ("_dims",)

    def __init__(self, dims=None):
        self._dims = {}
        if dims:
            for deg, dim in dict(dims).items():
                self.add(deg, dim)

    def add(self, degree: int, dim: int) -> None:
        if dim < 0:
            raise ValueError("dimensions must be nonnegative")
        if dim:
            self._dims[degree] = self._dims.get(degree, 0) + dim

    def __getitem__(self, degree: int) -> int:
        return self._dims.get(degree, 0)

    def __eq__(self, other) -> bool:
        if isinstance(other, GradedDims):
            return self._dims == other._dims
        return self._dims == {d: v for d, v in dict(other).items() if v}

    def __hash__(self):
        return hash(frozenset(self._dims.items()))

    def __bool__(self) -> bool:
        return bool(self._dims)

    def __add__(self, other: "GradedDims") -> "GradedDims":
        out = GradedDims(self._dims)
        for deg, dim in other.items():
            out.add(deg, dim)
        return out

    def items(self):
        return sorted(self._dims.items())

    def shifted(self, s: int) -> "GradedDims":
        return GradedDims({deg + s: dim for deg, dim in self._dims.items()})

    def euler(self) -> int:
        return sum((-1) ** deg * dim for deg, dim in self._dims.items())

    def total(self) -> int:
        return sum(self._dims.values())

    def to_json_dict(self) -> dict:
        return {str(deg): dim for deg, dim in self.items()}

    def __repr__(self):
        inner = ", ".join(f"{d}: {v}" for d, v in self.items())
        return "GradedDims({%s})" % inner


@dataclass(frozen=True)
class TrunkCell:
    """copies x (C* x C^M) over a trunk divisor with N | m."""

    divisor: int
    copies: int
    affine_dim: int

    piece_key = "trunk"

    @property
    def anchor(self) -> int:
        return self.divisor


@dataclass(frozen=True)
class EndCell:
    """copies x C^K over the dominant end divisor; N_R does not divide m."""

    rupture: int
    divisor: int  # the dominant divisor realizing the component
    copies: int
    affine_dim: int

    piece_key = "end"

    @property
    def anchor(self) -> int:
        return self.rupture


@dataclass(frozen=True)
class RuptureCell:
    """copies x (T x C^M) over a rupture with N | m; ``T`` is a compact
    surface of the recorded Euler characteristic with punctures removed."""

    rupture: int
    copies: int
    euler_char: int  # of one copy of T
    punctures: int  # per copy
    affine_dim: int

    piece_key = "rupture"

    @property
    def anchor(self) -> int:
        return self.rupture

    @property
    def genus(self) -> int:
        twice = 2 - self.euler_char - self.punctures
        assert twice >= 0 and twice % 2 == 0
        return twice // 2


ContactComponent = Union[TrunkCell, EndCell, RuptureCell]


def _exact_div(num: int, den: int) -> int:
    assert num % den == 0, (num, den)
    return num // den


def contact_components(
    graph: DualGraph, dec: GraphDecomposition, m: int
) -> list[ContactComponent]:
    """Census of the m-th restricted contact locus, one entry per
    connected piece of the decomposition."""
    assert dec.m == m and graph.is_m_separating(m)
    cells: list[ContactComponent] = []
    for trunk in dec.trunks.values():
        for e in trunk.divisors:
            node = graph.nodes[e]
            if m % node.N:
                continue
            m_e = m // node.N
            cells.append(TrunkCell(e, trunk.d, 2 * m - m_e * node.nu))
    for r in dec.ruptures:
        node = graph.nodes[r]
        if m % node.N == 0:
            d = dec.d_rupture[r]
            valency = graph.valency(r)
            end_terms = sum(end.d for end in dec.ends[r])
            chi = _exact_div(node.N * (2 - valency) + end_terms, d)
            punctures = _exact_div(
                sum(dec.trunks[key].d for key in _trunk_keys(dec, r)), d
            )
            assert punctures >= 1 and chi <= 1
            m_r = m // node.N
            cells.append(
                RuptureCell(r, d, chi, punctures, 2 * m - m_r * node.nu)
            )
        elif dec.e_dom[r] is not None:
            e = dec.e_dom[r]
            enode = graph.nodes[e]
            end = next(x for x in dec.ends[r] if e in x.divisors)
            m_e = m // enode.N
            cells.append(EndCell(r, e, end.d, 2 * m - m_e * enode.nu + 1))
    cells.sort(key=lambda c: (c.anchor, c.piece_key))
    return cells


def _trunk_keys(dec: GraphDecomposition, r: int):
    return [key for key in sorted(dec.trunks) if r in key]


def hc_graded_dims(census: list[ContactComponent]) -> GradedDims:
    """Compactly supported cohomology dimensions of the whole census.

    A copy of ``C* x C^M`` contributes in degrees ``2M+1`` and ``2M+2``;
    a copy of ``C^K`` in degree ``2K``; a copy of ``T x C^M`` contributes
    ``1 - chi(T)`` in degree ``2M+1`` and ``1`` in degree ``2M+2``.
    """
    out = GradedDims()
    for cell in census:
        if isinstance(cell, TrunkCell):
            out.add(2 * cell.affine_dim + 1, cell.copies)
            out.add(2 * cell.affine_dim + 2, cell.copies)
        elif isinstance(cell, EndCell):
            out.add(2 * cell.affine_dim, cell.copies)
        else:
            out.add(2 * cell.affine_dim + 1, cell.copies * (1 - cell.euler_char))
            out.add(2 * cell.affine_dim + 2, cell.copies)
    return out


def euler_characteristic_c(dims: GradedDims) -> int:
    return dims.euler()


def census_to_json(census: list[ContactComponent]) -> list[dict]:
    out = []
    for cell in census:
        if isinstance(cell, TrunkCell):
            out.append(
                {
                    "variant": "trunk",
                    "divisor": cell.divisor,
                    "copies": cell.copies,
                    "affine_dim": cell.affine_dim,
                }
            )
        elif isinstance(cell, EndCell):
            out.append(
                {
                    "variant": "end",
                    "rupture": cell.rupture,
                    "divisor": cell.divisor,
                    "copies": cell.copies,
                    "affine_dim": cell.affine_dim,
                }
            )
        else:
            out.append(
                {
                    "variant": "rupture",
                    "rupture": cell.rupture,
                    "copies": cell.copies,
                    "affine_dim": cell.affine_dim,
                    "surface": {
                        "euler": cell.euler_char,
                        "punctures": cell.punctures,
                    },
                }
            )
    return out
