"""Weighted dual graphs of embedded resolutions of plane curve germs.

The graph of the minimal embedded resolution is built combinatorially,
without symbolic blow-ups: every infinitely near base point is a
"cluster" carrying the strands (branch germs) through it, and the
divisors over a cluster form a Stern-Brocot strip whose shape is decided
by the strands' remaining characteristic exponents and their pairwise
contact orders.  Equisingularity guarantees this data determines the
graph; the closed multiplicity and log-discrepancy formulas are kept as
independent cross-checks (see :func:`branch_multiplicity` and
:func:`nu_from_pairs`).

Multiplicities ``N`` and log discrepancies ``nu`` are accumulated by the
blow-up recursion itself: a divisor created over a point picks up the
strand multiplicities at the point plus the values of the divisors
through it (auxiliary walls count zero / one).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import gcd
from typing import Optional

from .curves import CurveSpec

Pair = tuple[int, int]

_HOST = ("host",)  # lower wall of a strip: previous divisor (or aux line)
_LINE = ("line",)  # upper wall: max-contact reference curve, never a divisor


def euclid_quotients(kappa: int, r: int) -> tuple[int, ...]:
    """Quotient sequence of the Euclidean algorithm on (kappa, r)."""
    if gcd(kappa, r) != 1:
        raise ValueError(f"({kappa}, {r}) is not a coprime pair")
    qs = []
    a, b = kappa, r
    while b:
        qs.append(a // b)
        a, b = b, a % b
    return tuple(qs)


@dataclass(frozen=True)
class DivisorLabel:
    """Stern-Brocot label of an exceptional divisor within its strip.

    ``bezout`` is the unique ``(a, b, n)`` with ``a*kappa - b*r == (-1)**n``,
    ``0 <= a <= r``, ``0 <= b <= kappa`` and ``n`` the number of divisions in
    the Euclidean algorithm; the monomial substitution realizing the divisor
    is ``(x, y) = (x^r y^a, x^kappa y^b)`` with the divisor at ``x = 0``.
    """

    stage: int
    strip: int
    pair: Pair
    bezout: tuple[int, int, int]
    quotients: tuple[int, ...]

    @property
    def substitution_matrix(self) -> tuple[tuple[int, int], tuple[int, int]]:
        a, b, _ = self.bezout
        return ((self.pair[1], a), (self.pair[0], b))


def euclid_label(kappa: int, r: int, stage: int = 1, strip: int = 0) -> DivisorLabel:
    """Bezout data of the blow-up chain producing the (kappa, r) divisor."""
    qs = euclid_quotients(kappa, r)
    n = len(qs)
    # swap * prod [[q,1],[1,0]] gives [[r, a], [kappa, b]]
    m00, m01, m10, m11 = 0, 1, 1, 0
    for q in qs:
        m00, m01, m10, m11 = m00 * q + m01, m00, m10 * q + m11, m10
    assert (m00, m10) == (r, kappa)
    a, b = m01, m11
    assert a * kappa - b * r == (-1) ** n
    assert 0 <= a <= r and 0 <= b <= kappa
    return DivisorLabel(stage, strip, (kappa, r), (a, b, n), qs)


def pair_sequences(pairs: tuple[Pair, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Expand Newton pairs into the ``(kappa_i, r_i)`` integer sequences.

    Returns ``(kappa, r)`` with ``kappa`` of length ``g`` and ``r`` of
    length ``g + 1`` ending in 1.
    """
    g = len(pairs)
    r = [0] * (g + 1)
    r[g] = 1
    for i in range(g - 1, -1, -1):
        r[i] = pairs[i][1] * r[i + 1]
    kappa = tuple(pairs[i][0] * r[i + 1] for i in range(g))
    return kappa, tuple(r)


def nu_from_pairs(pairs: tuple[Pair, ...]) -> int:
    """Log discrepancy from Newton pairs: last characteristic exponent
    plus the multiplicity of a transverse curvette."""
    kappa, r = pair_sequences(pairs)
    return sum(kappa) + r[0]


@dataclass
class DivisorNode:
    """A vertex of the dual graph: exceptional divisor or strict transform."""

    id: int
    kind: str  # "exceptional" | "strict"
    N: int
    nu: int
    N_branch: tuple[int, ...]
    branch: Optional[int] = None  # strict transforms only (0-based)
    pairs: tuple[Pair, ...] = ()
    label: Optional[DivisorLabel] = None
    chain: tuple[int, ...] = ()  # cluster ids of the stage starts
    tangent_class: Optional[int] = None  # None for the root and stricts

    @property
    def is_exceptional(self) -> bool:
        return self.kind == "exceptional"

    def sequences(self):
        return pair_sequences(self.pairs)


@dataclass
class DualGraph:
    """Tree of divisors of a resolution, with all per-divisor data.

    Construction bookkeeping (cluster chains, per-cluster departure
    exponents, per-branch stage data) is kept so that the closed
    multiplicity formula can be re-evaluated on any divisor; graphs
    re-read from JSON omit it and carry precomputed tables instead.
    """

    curve: CurveSpec
    nodes: dict[int, DivisorNode]
    edges: set[Pair]
    root: int
    strict_nodes: tuple[int, ...]
    separation: str
    m: Optional[int] = None
    branch_chains: tuple[tuple[int, ...], ...] = ()
    branch_stages: tuple[tuple[tuple[Optional[int], int], ...], ...] = ()
    cluster_eff: dict = field(default_factory=dict)
    r1_divisor: tuple[int, ...] = ()
    branch_class: tuple[int, ...] = ()
    next_cluster: int = 0
    next_node: int = 0
    relation_tables: Optional[dict] = None  # iota/belongs for data-only graphs

    # -- basic structure ----------------------------------------------------

    def adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {i: [] for i in self.nodes}
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        for lst in adj.values():
            lst.sort()
        return adj

    def valency(self, node_id: int) -> int:
        return sum(1 for e in self.edges if node_id in e)

    def exceptional_ids(self) -> list[int]:
        return sorted(i for i, n in self.nodes.items() if n.is_exceptional)

    def sorted_edges(self) -> list[Pair]:
        return sorted(self.edges)

    def is_m_separating(self, m: int) -> bool:
        return all(
            self.nodes[i].N + self.nodes[j].N > m for i, j in self.edges
        )

    def copy(self) -> "DualGraph":
        return DualGraph(
            curve=self.curve,
            nodes={i: replace(n) for i, n in self.nodes.items()},
            edges=set(self.edges),
            root=self.root,
            strict_nodes=self.strict_nodes,
            separation=self.separation,
            m=self.m,
            branch_chains=tuple(self.branch_chains),
            branch_stages=tuple(self.branch_stages),
            cluster_eff=dict(self.cluster_eff),
            r1_divisor=self.r1_divisor,
            branch_class=self.branch_class,
            next_cluster=self.next_cluster,
            next_node=self.next_node,
            relation_tables=self.relation_tables,
        )

    # -- serialization -------------------------------------------------------

    def to_json_dict(self) -> dict:
        b = self.curve.num_branches
        node_list = []
        for i in sorted(self.nodes):
            n = self.nodes[i]
            entry = {
                "id": n.id,
                "kind": n.kind,
                "N": n.N,
                "nu": n.nu,
                "N_branch": list(n.N_branch),
            }
            if n.kind == "strict":
                entry["branch"] = n.branch + 1
            else:
                kappa, r = n.sequences()
                entry["newton_pairs"] = [list(p) for p in n.pairs]
                entry["kappa"] = list(kappa)
                entry["r"] = list(r)
                entry["k"] = [sum(kappa[: i + 1]) for i in range(len(kappa))]
                if n.label is not None:
                    entry["label"] = {
                        "stage": n.label.stage,
                        "strip": n.label.strip,
                        "pair": list(n.label.pair),
                        "bezout": list(n.label.bezout),
                        "quotients": list(n.label.quotients),
                    }
                entry["iota"] = [iota(self, n.id, j) for j in range(b)]
                entry["belongs"] = [
                    belongs_to_branch(self, n.id, j) for j in range(b)
                ]
            node_list.append(entry)
        return {
            "curve": self.curve.name,
            "num_branches": b,
            "separation": self.separation,
            "m": self.m,
            "root": self.root,
            "strict_nodes": list(self.strict_nodes),
            "r1_divisor": list(self.r1_divisor),
            "nodes": node_list,
            "edges": [list(e) for e in self.sorted_edges()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)


def graph_from_json_dict(data: dict, curve: CurveSpec) -> DualGraph:
    """Rebuild a graph from its JSON export.

    The result carries everything the census stages consume; the
    construction bookkeeping is replaced by the exported iota/belongs
    tables.
    """
    nodes: dict[int, DivisorNode] = {}
    tables: dict[int, dict] = {}
    stricts: dict[int, int] = {}
    for entry in data["nodes"]:
        i = entry["id"]
        if entry["kind"] == "strict":
            j = entry["branch"] - 1
            nodes[i] = DivisorNode(
                i, "strict", entry["N"], entry["nu"],
                tuple(entry["N_branch"]), branch=j,
            )
            stricts[j] = i
        else:
            pairs = tuple(tuple(p) for p in entry["newton_pairs"])
            lab = entry.get("label")
            label = (
                DivisorLabel(
                    lab["stage"], lab["strip"], tuple(lab["pair"]),
                    tuple(lab["bezout"]), tuple(lab["quotients"]),
                )
                if lab
                else None
            )
            nodes[i] = DivisorNode(
                i, "exceptional", entry["N"], entry["nu"],
                tuple(entry["N_branch"]), pairs=pairs, label=label,
            )
            tables[i] = {
                "iota": entry["iota"],
                "belongs": entry["belongs"],
            }
    edges = {tuple(e) for e in data["edges"]}
    return DualGraph(
        curve=curve,
        nodes=nodes,
        edges=edges,
        root=data["root"],
        strict_nodes=tuple(stricts[j] for j in sorted(stricts)),
        separation=data["separation"],
        m=data["m"],
        r1_divisor=tuple(data["r1_divisor"]),
        relation_tables=tables,
    )


# ---------------------------------------------------------------------------
# Construction of the minimal embedded resolution
# ---------------------------------------------------------------------------


@dataclass
class _Strand:
    """Local data of one branch germ through a cluster point."""

    branch: int
    rho: int  # multiplicity: order of the lower wall coordinate
    chars: tuple[Fraction, ...]  # remaining characteristic exponents, local scale


def _slope(pair) -> Fraction:
    return Fraction(pair[0], pair[1])


def _sb_path(kappa: int, r: int):
    """Stern-Brocot walk to (kappa, r): yields (pair, lo, hi) in creation
    order, walls encoded as _HOST (slope 0) and _LINE (slope infinity)."""
    lo: object = _HOST
    hi: object = _LINE
    lo_pair, hi_pair = (0, 1), (1, 0)
    path = []
    cur = (1, 1)
    while True:
        path.append((cur, lo, hi))
        if cur == (kappa, r):
            return path
        if kappa * cur[1] > cur[0] * r:
            lo, lo_pair = cur, cur
        else:
            hi, hi_pair = cur, cur
        cur = (lo_pair[0] + hi_pair[0], lo_pair[1] + hi_pair[1])


class _Builder:
    def __init__(self, curve: CurveSpec):
        self.curve = curve
        b = curve.num_branches
        self.nodes: dict[int, DivisorNode] = {}
        self.edges: set[Pair] = set()
        self.next_node = 0
        self.next_cluster = 1  # cluster 0 is the origin
        self.branch_chains: list[list[int]] = [[0] for _ in range(b)]
        self.branch_stages: list[list[tuple[Optional[int], int]]] = [
            [] for _ in range(b)
        ]
        self.cluster_eff: dict = {}
        self.strict_nodes: list[Optional[int]] = [None] * b
        self.r1_divisor: list[Optional[int]] = [None] * b
        classes = sorted({br.tangent_class for br in curve.branches})
        self.class_index = {key: i for i, key in enumerate(classes)}
        self.branch_class = tuple(
            self.class_index[br.tangent_class] for br in curve.branches
        )

    def _new_node(self, **kw) -> DivisorNode:
        node = DivisorNode(id=self.next_node, **kw)
        self.nodes[node.id] = node
        self.next_node += 1
        return node

    def _add_edge(self, i: int, j: int) -> None:
        self.edges.add((min(i, j), max(i, j)))

    def build(self) -> DualGraph:
        curve = self.curve
        b = curve.num_branches
        hub = self._new_node(
            kind="exceptional",
            N=curve.multiplicity(),
            nu=2,
            N_branch=tuple(br.r1 for br in curve.branches),
            pairs=((1, 1),),
            label=euclid_label(1, 1, stage=1, strip=0),
            chain=(0,),
            tangent_class=None,
        )
        by_class: dict[int, list[int]] = {}
        for j in range(b):
            by_class.setdefault(self.branch_class[j], []).append(j)
        for cls in sorted(by_class):
            members = by_class[cls]
            strands = [
                _Strand(
                    j,
                    curve.branches[j].r1,
                    tuple(
                        Fraction(k, curve.branches[j].r1)
                        for k in curve.invariants[j].k
                    ),
                )
                for j in members
            ]
            ct = {
                (a, c): curve.contact[strands[a].branch][strands[c].branch]
                for a in range(len(strands))
                for c in range(len(strands))
                if a != c
            }
            self._run_strip(
                cluster=0,
                host=None,
                prefix=(),
                chain=(0,),
                strands=strands,
                ct=ct,
                preseed={(1, 1): hub.id},
                tclass=cls,
            )
        return DualGraph(
            curve=curve,
            nodes=self.nodes,
            edges=self.edges,
            root=hub.id,
            strict_nodes=tuple(self.strict_nodes),  # type: ignore[arg-type]
            separation="minimal",
            m=None,
            branch_chains=tuple(tuple(c) for c in self.branch_chains),
            branch_stages=tuple(tuple(s) for s in self.branch_stages),
            cluster_eff=self.cluster_eff,
            r1_divisor=tuple(self.r1_divisor),  # type: ignore[arg-type]
            branch_class=self.branch_class,
            next_cluster=self.next_cluster,
            next_node=self.next_node,
        )

    # -- strip resolution ---------------------------------------------------

    def _effective_exponents(self, strands, active, ct):
        """Next divergence exponent of each active strand.

        A strand departs from the reference curve of the strip at its next
        characteristic exponent or at an integral contact order with a
        strip mate, whichever comes first; fractional non-characteristic
        contacts are carried by the other strand (the class rides on).
        """
        effs = {}
        for a in active:
            cand = []
            if strands[a].chars:
                cand.append(strands[a].chars[0])
            for c in active:
                if c != a and ct[(a, c)].denominator == 1:
                    cand.append(ct[(a, c)])
            effs[a] = min(cand) if cand else None
        return effs

    def _strict_leaf(self, j: int, attach: int) -> None:
        b = self.curve.num_branches
        node = self._new_node(
            kind="strict",
            N=1,
            nu=1,
            N_branch=tuple(1 if i == j else 0 for i in range(b)),
            branch=j,
        )
        self.strict_nodes[j] = node.id
        self._add_edge(node.id, attach)

    def _run_strip(self, cluster, host, prefix, chain, strands, ct, preseed, tclass):
        curve = self.curve
        b = curve.num_branches
        created: dict[Pair, int] = dict(preseed)
        parents: dict[Pair, tuple] = {}
        active = list(range(len(strands)))
        stage = len(prefix) + 1

        def wall_values(w):
            # (N_branch, nu) carried by a wall or an existing strip divisor
            if w is _LINE:
                return (0,) * b, 1
            if w is _HOST:
                if host is None:
                    return (0,) * b, 1
                hn = self.nodes[host]
                return hn.N_branch, hn.nu
            n = self.nodes[created[w]]
            return n.N_branch, n.nu

        while True:
            effs = self._effective_exponents(strands, active, ct)
            finite = [a for a in active if effs[a] is not None]
            if not finite:
                break
            e = min(effs[a] for a in finite)
            kappa, r = e.numerator, e.denominator
            for pair, lo, hi in _sb_path(kappa, r):
                if pair in created:
                    continue
                contrib = [0] * b
                for a in active:
                    s = strands[a]
                    ea = effs[a]
                    if ea is None:
                        # never diverges: follows the upper wall
                        passes = hi is _LINE
                    else:
                        passes = (
                            (lo is _HOST or _slope(lo) < ea)
                            and (hi is _LINE or ea < _slope(hi))
                        )
                    if not passes:
                        continue
                    if ea is None:
                        mult = s.rho
                    else:
                        k_sig = ea * s.rho
                        assert k_sig.denominator == 1
                        k_sig = int(k_sig)
                        lo_term = (
                            k_sig if lo is _HOST
                            else k_sig * lo[1] - s.rho * lo[0]
                        )
                        hi_term = (
                            s.rho if hi is _LINE
                            else s.rho * hi[0] - k_sig * hi[1]
                        )
                        mult = min(lo_term, hi_term)
                    assert mult >= 1
                    contrib[s.branch] += mult
                lo_nb, lo_nu = wall_values(lo)
                hi_nb, hi_nu = wall_values(hi)
                node = self._new_node(
                    kind="exceptional",
                    N=sum(contrib) + sum(lo_nb) + sum(hi_nb),
                    nu=lo_nu + hi_nu,
                    N_branch=tuple(
                        contrib[i] + lo_nb[i] + hi_nb[i] for i in range(b)
                    ),
                    pairs=prefix + (pair,),
                    label=euclid_label(*pair, stage=stage, strip=cluster),
                    chain=chain,
                    tangent_class=tclass,
                )
                created[pair] = node.id
                parents[pair] = (lo, hi)
            target = created[(kappa, r)]
            departing = [a for a in active if effs[a] == e]
            groups = self._contact_groups(departing, ct, e)
            for group in groups:
                self._depart(
                    group, e, target, cluster, chain, prefix, strands, ct, tclass
                )
            active = [a for a in active if a not in departing]

        if active:
            # a single strand that never diverges from the reference curve:
            # it follows the wall and lands on the last divisor created there
            assert len(active) == 1
            s = strands[active[0]]
            assert s.rho == 1 and not s.chars
            wall = [p for p in created if p[1] == 1]
            attach = created[max(wall)] if wall else host
            assert attach is not None
            self.cluster_eff[(cluster, s.branch)] = None
            self.branch_stages[s.branch].append((None, s.rho))
            if stage == 1:
                self.r1_divisor[s.branch] = attach
            self._strict_leaf(s.branch, attach)

        for pair in sorted(parents):
            lo, hi = parents[pair]
            x = created[pair]
            for p in (lo, hi):
                if p is _LINE:
                    continue
                if p is _HOST:
                    if host is not None:
                        if (pair[0], pair[1] + 1) not in created:
                            self._add_edge(x, host)
                    continue
                mediant = (pair[0] + p[0], pair[1] + p[1])
                if mediant not in created:
                    self._add_edge(x, created[p])

    def _contact_groups(self, departing, ct, e):
        """Partition departing strands into classes with mutual contact > e."""
        groups: list[list[int]] = []
        for a in sorted(departing):
            for grp in groups:
                if ct[(grp[0], a)] > e:
                    grp.append(a)
                    break
            else:
                groups.append([a])
        for grp in groups:
            for x in grp:
                for y in grp:
                    if x != y:
                        assert ct[(x, y)] > e
        return groups

    def _depart(self, group, e, target, cluster, chain, prefix, strands, ct, tclass):
        kappa, r = e.numerator, e.denominator
        for a in group:
            s = strands[a]
            assert (e * s.rho).denominator == 1, "illegal departure lattice"
            assert s.rho % r == 0
            was_char = bool(s.chars) and s.chars[0] == e
            kappa_true = int(e * s.rho) if was_char else None
            self.cluster_eff[(cluster, s.branch)] = e
            self.branch_stages[s.branch].append((kappa_true, s.rho))
            if len(chain) == 1:
                self.r1_divisor[s.branch] = target
        if len(group) == 1 and strands[group[0]].rho // r == 1:
            self._strict_leaf(strands[group[0]].branch, target)
            return
        cid = self.next_cluster
        self.next_cluster += 1
        sub = []
        for a in group:
            s = strands[a]
            self.branch_chains[s.branch].append(cid)
            sub.append(
                _Strand(
                    s.branch,
                    s.rho // r,
                    tuple(r * q - kappa for q in s.chars if q > e),
                )
            )
        sub_ct = {
            (x, y): r * ct[(group[x], group[y])] - kappa
            for x in range(len(group))
            for y in range(len(group))
            if x != y
        }
        self._run_strip(
            cluster=cid,
            host=target,
            prefix=prefix + ((kappa, r),),
            chain=chain + (cid,),
            strands=sub,
            ct=sub_ct,
            preseed={},
            tclass=tclass,
        )


def build_minimal_graph(curve: CurveSpec) -> DualGraph:
    """Dual graph of the minimal embedded resolution of the germ."""
    return _Builder(curve).build()


# ---------------------------------------------------------------------------
# Separating refinement
# ---------------------------------------------------------------------------


def _insert_mediant(g: DualGraph, i: int, j: int) -> int:
    a, b = g.nodes[i], g.nodes[j]
    if not a.is_exceptional:
        a, b = b, a
    assert a.is_exceptional
    if not b.is_exceptional:
        # blow up the attachment point of a strict transform: a fresh stage
        branch = b.branch
        cid = g.next_cluster
        g.next_cluster += 1
        pairs = a.pairs + ((1, 1),)
        chain = a.chain + (cid,)
        tclass = a.tangent_class
        if g.branch_chains:
            chains = [list(c) for c in g.branch_chains]
            chains[branch].append(cid)
            g.branch_chains = tuple(tuple(c) for c in chains)
            stages = [list(s) for s in g.branch_stages]
            stages[branch].append((None, 1))
            g.branch_stages = tuple(tuple(s) for s in stages)
            g.cluster_eff[(cid, branch)] = Fraction(1)
    elif a.chain == b.chain:
        # same strip: Farey neighbours, insert their mediant
        assert len(a.pairs) == len(b.pairs)
        assert a.pairs[:-1] == b.pairs[:-1]
        pa, pb = a.pairs[-1], b.pairs[-1]
        pairs = a.pairs[:-1] + ((pa[0] + pb[0], pa[1] + pb[1]),)
        chain = a.chain
        tclass = a.tangent_class if a.tangent_class is not None else b.tangent_class
    else:
        child = a if len(a.chain) > len(b.chain) else b
        hostn = b if child is a else a
        assert hostn.chain == child.chain[: len(hostn.chain)]
        pk, pr = child.pairs[-1]
        pairs = child.pairs[:-1] + ((pk, pr + 1),)
        chain = child.chain
        tclass = child.tangent_class
    node = DivisorNode(
        id=g.next_node,
        kind="exceptional",
        N=g.nodes[i].N + g.nodes[j].N,
        nu=g.nodes[i].nu + g.nodes[j].nu,
        N_branch=tuple(
            x + y for x, y in zip(g.nodes[i].N_branch, g.nodes[j].N_branch)
        ),
        pairs=pairs,
        label=euclid_label(*pairs[-1], stage=len(pairs), strip=chain[-1]),
        chain=chain,
        tangent_class=tclass,
    )
    g.nodes[node.id] = node
    g.next_node += 1
    g.edges.discard((min(i, j), max(i, j)))
    g.edges.add((min(i, node.id), max(i, node.id)))
    g.edges.add((min(j, node.id), max(j, node.id)))
    return node.id


def m_separating_refinement(
    graph: DualGraph, m: int, edge_order: Optional[list[Pair]] = None
) -> DualGraph:
    """Blow up intersections of adjacent divisors until all edge sums exceed m.

    The mediant chain inserted into one edge is canonical, so the result
    does not depend on the processing order; ``edge_order`` lets tests
    verify that.
    """
    if m < 1:
        raise ValueError("m must be a positive integer")
    g = graph.copy()
    g.separation = f"{m}-separating"
    g.m = m
    order = {e: k for k, e in enumerate(edge_order or g.sorted_edges())}
    rank = len(order)
    while True:
        violating = [
            e for e in g.edges if g.nodes[e[0]].N + g.nodes[e[1]].N <= m
        ]
        if not violating:
            break
        i, j = min(violating, key=lambda e: (order.get(e, len(order)), e))
        mid = _insert_mediant(g, i, j)
        for e in ((min(i, mid), max(i, mid)), (min(j, mid), max(j, mid))):
            order[e] = rank
            rank += 1
    assert g.is_m_separating(m)
    return g


# ---------------------------------------------------------------------------
# Closed formulas (independent of the blow-up recursion)
# ---------------------------------------------------------------------------


def iota(graph: DualGraph, node_id: int, branch: int) -> int:
    """Depth of the last infinitely near point shared by the divisor's
    stage chain and the branch's, capped below the divisor's own depth."""
    node = graph.nodes[node_id]
    if graph.relation_tables is not None:
        return graph.relation_tables[node_id]["iota"][branch]
    chain = node.chain
    bchain = graph.branch_chains[branch]
    shared = 0
    for a, c in zip(chain, bchain):
        if a != c:
            break
        shared += 1
    return min(shared - 1, len(node.pairs) - 1)


def belongs_to_branch(graph: DualGraph, node_id: int, branch: int) -> bool:
    """Whether the divisor sits in the blow-up tower adapted to the branch.

    At depth zero this is a tangent-direction condition; deeper, the
    divisor fails to belong exactly when both it and the branch climb
    above slope one at their divergence stage and the divisor climbs
    strictly higher.
    """
    node = graph.nodes[node_id]
    if graph.relation_tables is not None:
        return graph.relation_tables[node_id]["belongs"][branch]
    i0 = iota(graph, node_id, branch)
    if i0 == 0:
        return (
            node.tangent_class is None
            or node.tangent_class == graph.branch_class[branch]
        )
    shared_cluster = node.chain[i0]
    d = graph.cluster_eff.get((shared_cluster, branch))
    lam = _slope(node.pairs[i0])
    if d is None:  # the branch never diverges there: rides along the wall
        return True
    return not (d > 1 and lam > d)


def branch_multiplicity(graph: DualGraph, node_id: int, branch: int) -> int:
    """Closed-formula multiplicity of one branch along an exceptional divisor.

    Evaluates the Newton-pair expression from the divisor's own pair data
    and the branch's per-stage data; independent of the additive recursion
    used during construction, so the two can be cross-checked.
    """
    node = graph.nodes[node_id]
    assert node.is_exceptional
    kappa_e, r_e = node.sequences()
    i0 = iota(graph, node_id, branch)
    stages = graph.branch_stages[branch]

    def stage_kappa(i: int) -> Optional[int]:  # 1-based; None is +infinity
        return stages[i - 1][0] if i - 1 < len(stages) else None

    def stage_r(i: int) -> int:
        return stages[i - 1][1] if i - 1 < len(stages) else 1

    total = sum(kappa_e[i - 1] * stage_r(i) for i in range(1, i0 + 1))
    if belongs_to_branch(graph, node_id, branch):
        kj = stage_kappa(i0 + 1)
        right = kappa_e[i0] * stage_r(i0 + 1)
        if kj is None:
            total += right
        else:
            total += min(kj * r_e[i0], right)
    else:
        total += r_e[i0] * stage_r(i0 + 1)
    return total


# ---------------------------------------------------------------------------
# DOT export
# ---------------------------------------------------------------------------


def to_dot(graph: DualGraph, m: Optional[int] = None) -> str:
    """Graphviz rendering: ruptures doubled, strict transforms boxed,
    divisors whose multiplicity divides m filled."""
    lines = ["graph dual_graph {", "  node [fontsize=10];"]
    val = {i: graph.valency(i) for i in graph.nodes}
    for i in sorted(graph.nodes):
        n = graph.nodes[i]
        attrs = []
        if n.kind == "strict":
            label = f"C~[{n.branch + 1}]"
            attrs.append("shape=box")
        else:
            kap, r = n.pairs[-1]
            label = f"{n.id} | N={n.N} nu={n.nu} | ({kap},{r})"
            if val[i] >= 3:
                attrs.append("shape=doublecircle")
            else:
                attrs.append("shape=circle")
            if m is not None and m % n.N == 0:
                attrs.append('style=filled fillcolor="lightgray"')
        attrs.insert(0, f'label="{label}"')
        lines.append(f"  n{i} [{' '.join(attrs)}];")
    for i, j in graph.sorted_edges():
        lines.append(f"  n{i} -- n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
