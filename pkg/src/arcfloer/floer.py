"""Fixed-point census of the deformed monodromy iterate and its Floer
homology dimensions.

The Milnor fiber decomposes into coverings of the exceptional divisors
joined by cylinders.  After deforming the m-th monodromy iterate so that
the end-side pieces are capped by disks, its fixed manifold is a union
of surfaces-with-boundary; each family enters the homology with an even
Conley-Zehnder offset, and since the associated spectral sequence
degenerates immediately, the total dimensions are just the shifted
relative homology of the families.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .census import GradedDims
from .decomposition import GraphDecomposition
from .resolution import DualGraph


@dataclass(frozen=True)
class FiberPiece:
    """One piece of the Milnor fiber decomposition."""

    kind: str  # disk-family | cylinder-family | rupture-surface | strict-cylinder
    divisor: int
    components: int
    genus: int
    boundary: int  # boundary circles per component

    @property
    def euler_per_component(self) -> int:
        return 2 - 2 * self.genus - self.boundary


@dataclass(frozen=True)
class FixedFamily:
    """A codimension-zero family of fixed points of the deformed iterate."""

    source: str  # "rupture" | "trunk" | "strict"
    divisor: int  # rupture id / trunk divisor id / strict node id
    components: int
    genus: int
    boundary: int
    cz: int
    contributes: bool


def _exact_div(num: int, den: int) -> int:
    assert num % den == 0, (num, den)
    return num // den


def fiber_pieces(graph: DualGraph, dec: GraphDecomposition) -> list[FiberPiece]:
    """A'Campo decomposition of the Milnor fiber over the given graph."""
    pieces: list[FiberPiece] = []
    for e in graph.exceptional_ids():
        node = graph.nodes[e]
        valency = graph.valency(e)
        if valency == 1:
            end = dec.end_of(e)
            assert end is not None, "leaf divisor outside every end"
            pieces.append(FiberPiece("disk-family", e, end.d, 0, 1))
        elif valency == 2:
            part = dec.trunk_of(e) or dec.end_of(e)
            assert part is not None
            pieces.append(FiberPiece("cylinder-family", e, part.d, 0, 2))
        else:
            d = dec.d_rupture[e]
            chi = _exact_div(node.N * (2 - valency), d)
            end_terms = sum(end.d for end in dec.ends[e])
            trunk_terms = sum(
                dec.trunks[key].d for key in sorted(dec.trunks) if e in key
            )
            boundary = _exact_div(end_terms + trunk_terms, d)
            genus = _exact_div(2 - chi - boundary, 2)
            assert genus >= 0
            pieces.append(FiberPiece("rupture-surface", e, d, genus, boundary))
    for s in graph.strict_nodes:
        pieces.append(FiberPiece("strict-cylinder", s, 1, 0, 2))
    return pieces


def fixed_families(
    graph: DualGraph, dec: GraphDecomposition, m: int
) -> list[FixedFamily]:
    """Fixed families of the deformed m-th iterate, with their indices."""
    assert dec.m == m
    fams: list[FixedFamily] = []

    def cz_at(divisor: int) -> int:
        node = graph.nodes[divisor]
        return 2 * (m // node.N) * node.nu - 2 * m

    for trunk in dec.trunks.values():
        for e in trunk.divisors:
            if m % graph.nodes[e].N:
                continue
            fams.append(
                FixedFamily("trunk", e, trunk.d, 0, 2, cz_at(e), True)
            )
    for r in dec.ruptures:
        node = graph.nodes[r]
        if m % node.N == 0:
            d = dec.d_rupture[r]
            valency = graph.valency(r)
            chi_fiber = _exact_div(node.N * (2 - valency), d)
            end_terms = sum(end.d for end in dec.ends[r])
            trunk_terms = sum(
                dec.trunks[key].d for key in sorted(dec.trunks) if r in key
            )
            capped = _exact_div(end_terms, d)
            boundary = _exact_div(end_terms + trunk_terms, d) - capped
            chi = chi_fiber + capped
            genus = _exact_div(2 - chi - boundary, 2)
            assert genus >= 0 and boundary >= 1
            fams.append(
                FixedFamily("rupture", r, d, genus, boundary, cz_at(r), True)
            )
        elif dec.e_dom[r] is not None:
            e = dec.e_dom[r]
            end = next(x for x in dec.ends[r] if e in x.divisors)
            fams.append(
                FixedFamily("rupture", r, end.d, 0, 1, cz_at(e), True)
            )
    for s in graph.strict_nodes:
        fams.append(FixedFamily("strict", s, 1, 0, 2, 0, False))
    fams.sort(key=lambda f: (f.divisor, f.source))
    return fams


def relative_homology_dims(fam: FixedFamily) -> GradedDims:
    """Homology of the family relative to its full outgoing boundary.

    For a compact orientable surface with nonempty boundary this is
    ``2g + b - 1`` in degree one and ``1`` in degree two, per component;
    a strict-transform cylinder keeps one boundary circle free and
    contributes nothing.
    """
    if not fam.contributes:
        return GradedDims()
    out = GradedDims()
    out.add(1, fam.components * (2 * fam.genus + fam.boundary - 1))
    out.add(2, fam.components)
    return out


def hf_graded_dims(fams: list[FixedFamily], m: int) -> GradedDims:
    """Floer homology dimensions of the m-th iterate.

    The spectral sequence of the deformed iterate degenerates at once, so
    each family contributes its relative homology shifted by ``1 + cz``.
    """
    out = GradedDims()
    for fam in fams:
        for deg, dim in relative_homology_dims(fam).items():
            out.add(deg - 1 - fam.cz, dim)
    return out


def lefschetz_number(graph: DualGraph, m: int) -> int:
    """Lefschetz number of the m-th monodromy iterate, via the count of
    fixed divisor coverings weighted by the Euler characteristic of the
    open part of each divisor."""
    total = 0
    for e in graph.exceptional_ids():
        node = graph.nodes[e]
        if m % node.N == 0:
            total += node.N * (2 - graph.valency(e))
    return total


def fiber_euler_characteristic(pieces: list[FiberPiece]) -> int:
    return sum(p.components * p.euler_per_component for p in pieces)


def milnor_number(graph: DualGraph) -> int:
    """Milnor number from the fiber decomposition: chi(F) = 1 - mu."""
    total = 0
    for e in graph.exceptional_ids():
        node = graph.nodes[e]
        total += node.N * (2 - graph.valency(e))
    return 1 - total


def families_to_json(fams: list[FixedFamily]) -> list[dict]:
    return [
        {
            "source": f.source,
            "divisor": f.divisor,
            "components": f.components,
            "genus": f.genus,
            "boundary": f.boundary,
            "cz": f.cz,
            "contributes": f.contributes,
        }
        for f in fams
    ]
