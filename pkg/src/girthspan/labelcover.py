"""Label Cover and Min-Rep instance model, labeling/REP-cover evaluation.

A Label Cover instance is a bipartite supergraph over sides A and B with a
nonempty relation on each superedge.  Relations are interned in a shared
table (product constructions repeat the same few relations across many
superedges), but each superedge still serializes with its full pair list.

Canonical identities: superedges are sorted by (a, b) and the superedge id
equals the edge id of the corresponding supergraph edge.  Min-Rep vertices
are indexed A-block first, row-major by (supervertex, symbol).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import InputError
from .graphs import Graph, girth


class Relation:
    """Sorted, deduplicated set of admissible (alpha, beta) symbol pairs."""

    __slots__ = ("pairs", "_set")

    def __init__(self, pairs):
        pairs = sorted(set((int(a), int(b)) for a, b in pairs))
        if not pairs:
            raise InputError("relations must be nonempty")
        self.pairs = tuple(pairs)
        self._set = frozenset(self.pairs)

    def contains(self, alpha: int, beta: int) -> bool:
        return (alpha, beta) in self._set

    def __len__(self) -> int:
        return len(self.pairs)

    def __eq__(self, other) -> bool:
        return isinstance(other, Relation) and self.pairs == other.pairs

    def __hash__(self) -> int:
        return hash(self.pairs)


class LabelCoverInstance:
    """Bipartite supergraph plus per-superedge relations over two alphabets."""

    __slots__ = ("a_count", "b_count", "sigma_a", "sigma_b", "_ea", "_eb",
                 "_rel_ids", "relations", "_supergraph")

    def __init__(self, a_count, b_count, sigma_a, sigma_b, superedges):
        if sigma_a < 1 or sigma_b < 1:
            raise InputError("alphabet sizes must be >= 1")
        self.a_count = int(a_count)
        self.b_count = int(b_count)
        self.sigma_a = int(sigma_a)
        self.sigma_b = int(sigma_b)
        table: dict[tuple, int] = {}
        relations: list[Relation] = []
        rows = []
        for a, b, pairs in superedges:
            rel = pairs if isinstance(pairs, Relation) else Relation(pairs)
            rid = table.get(rel.pairs)
            if rid is None:
                rid = len(relations)
                table[rel.pairs] = rid
                relations.append(rel)
            rows.append((int(a), int(b), rid))
        rows.sort()
        ea = np.array([r[0] for r in rows], dtype=np.int64)
        eb = np.array([r[1] for r in rows], dtype=np.int64)
        rel_ids = np.array([r[2] for r in rows], dtype=np.int64)
        self._finish_init(ea, eb, rel_ids, tuple(relations))

    @classmethod
    def from_arrays(cls, a_count, b_count, sigma_a, sigma_b, ea, eb, rel_ids, relations):
        """Fast path for internal builders; edges must already be (a, b)-sorted."""
        inst = cls.__new__(cls)
        inst.a_count = int(a_count)
        inst.b_count = int(b_count)
        inst.sigma_a = int(sigma_a)
        inst.sigma_b = int(sigma_b)
        inst._finish_init(
            np.asarray(ea, dtype=np.int64),
            np.asarray(eb, dtype=np.int64),
            np.asarray(rel_ids, dtype=np.int64),
            tuple(relations),
        )
        return inst

    def _finish_init(self, ea, eb, rel_ids, relations):
        if ea.size:
            if ea.min() < 0 or ea.max() >= self.a_count:
                raise InputError("superedge A endpoint out of range")
            if eb.min() < 0 or eb.max() >= self.b_count:
                raise InputError("superedge B endpoint out of range")
            keys = ea * np.int64(self.b_count) + eb
            if (np.diff(keys) <= 0).any():
                raise InputError("superedges must be distinct and (a, b)-sorted")
        for rel in relations:
            for alpha, beta in rel.pairs:
                if not (0 <= alpha < self.sigma_a and 0 <= beta < self.sigma_b):
                    raise InputError("relation symbol out of range")
        self._ea = ea
        self._eb = eb
        self._rel_ids = rel_ids
        self.relations = relations
        self._supergraph = None

    @property
    def edge_count(self) -> int:
        return int(self._ea.size)

    def edge(self, e: int) -> tuple[int, int]:
        if not 0 <= e < self.edge_count:
            raise InputError(f"superedge id {e} out of range")
        return int(self._ea[e]), int(self._eb[e])

    def relation(self, e: int) -> Relation:
        return self.relations[int(self._rel_ids[e])]

    def edge_arrays(self):
        return self._ea, self._eb, self._rel_ids

    def superedges(self):
        """Iterate (a, b, Relation) in canonical order."""
        for i in range(self.edge_count):
            yield int(self._ea[i]), int(self._eb[i]), self.relations[int(self._rel_ids[i])]

    def degrees_a(self) -> np.ndarray:
        return np.bincount(self._ea, minlength=self.a_count)

    def degrees_b(self) -> np.ndarray:
        return np.bincount(self._eb, minlength=self.b_count)

    def restrict_edges(self, keep_ids) -> "LabelCoverInstance":
        """New instance keeping only the given superedge ids (sorted)."""
        keep = np.unique(np.asarray(list(keep_ids), dtype=np.int64))
        if keep.size and (keep[0] < 0 or keep[-1] >= self.edge_count):
            raise InputError("superedge id out of range")
        return LabelCoverInstance.from_arrays(
            self.a_count, self.b_count, self.sigma_a, self.sigma_b,
            self._ea[keep], self._eb[keep], self._rel_ids[keep], self.relations)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LabelCoverInstance):
            return False
        if (self.a_count, self.b_count, self.sigma_a, self.sigma_b) != \
           (other.a_count, other.b_count, other.sigma_a, other.sigma_b):
            return False
        if not (np.array_equal(self._ea, other._ea) and np.array_equal(self._eb, other._eb)):
            return False
        return all(self.relation(e) == other.relation(e) for e in range(self.edge_count))

    def __repr__(self) -> str:
        return (f"LabelCoverInstance(|A|={self.a_count}, |B|={self.b_count}, "
                f"sigma=({self.sigma_a},{self.sigma_b}), m={self.edge_count})")


@dataclass(frozen=True)
class Labeling:
    """One symbol per supervertex on each side."""

    gamma_a: tuple
    gamma_b: tuple

    def check_shape(self, lc: LabelCoverInstance) -> None:
        if len(self.gamma_a) != lc.a_count or len(self.gamma_b) != lc.b_count:
            raise InputError("labeling shape does not match instance")
        for s in self.gamma_a:
            if not 0 <= s < lc.sigma_a:
                raise InputError("A-side label out of range")
        for s in self.gamma_b:
            if not 0 <= s < lc.sigma_b:
                raise InputError("B-side label out of range")


@dataclass(frozen=True)
class RepCover:
    """Set of (side, supervertex, symbol) representatives; sides are 'A'/'B'."""

    members: frozenset

    @classmethod
    def of(cls, items) -> "RepCover":
        return cls(frozenset((str(s), int(i), int(y)) for s, i, y in items))

    def sorted_members(self) -> list:
        return sorted(self.members)

    def __len__(self) -> int:
        return len(self.members)


def satisfied_count(lc: LabelCoverInstance, lab: Labeling) -> int:
    """Number of superedges whose relation admits the assigned symbol pair."""
    lab.check_shape(lc)
    if lc.edge_count == 0:
        return 0
    ga = np.asarray(lab.gamma_a, dtype=np.int64)
    gb = np.asarray(lab.gamma_b, dtype=np.int64)
    keys = ga[lc._ea] * np.int64(lc.sigma_b) + gb[lc._eb]
    sat = 0
    for rid, rel in enumerate(lc.relations):
        mask = lc._rel_ids == rid
        if not mask.any():
            continue
        rel_keys = np.array([a * lc.sigma_b + b for a, b in rel.pairs], dtype=np.int64)
        sat += int(np.isin(keys[mask], rel_keys).sum())
    return sat


def value(lc: LabelCoverInstance, lab: Labeling) -> Fraction:
    """Fraction of superedges satisfied under the uniform edge measure.

    An instance with no superedges has value 1 (vacuously satisfied); cycle
    stripping can empty the edge set.
    """
    if lc.edge_count == 0:
        return Fraction(1)
    return Fraction(satisfied_count(lc, lab), lc.edge_count)


def supergraph(lc: LabelCoverInstance) -> Graph:
    """Bipartite carrier graph; superedge id i is supergraph edge id i."""
    if lc._supergraph is None:
        lc._supergraph = Graph.from_arrays(lc.a_count + lc.b_count, lc._ea, lc._eb + lc.a_count)
    return lc._supergraph


def supergirth(lc: LabelCoverInstance):
    return girth(supergraph(lc))


@dataclass(frozen=True)
class MinRepInstance:
    """Expanded Min-Rep graph over (A x Sigma_A) + (B x Sigma_B)."""

    source: LabelCoverInstance
    minrep_graph: Graph

    @property
    def vertex_count(self) -> int:
        return self.minrep_graph.vertex_count

    def a_vertex(self, i: int, alpha: int) -> int:
        return i * self.source.sigma_a + alpha

    def b_vertex(self, j: int, beta: int) -> int:
        return self.source.a_count * self.source.sigma_a + j * self.source.sigma_b + beta

    def vertex_label(self, v: int) -> tuple:
        """Decode a Min-Rep vertex id to (side, supervertex, symbol)."""
        a_block = self.source.a_count * self.source.sigma_a
        if v < a_block:
            return ("A", v // self.source.sigma_a, v % self.source.sigma_a)
        v -= a_block
        return ("B", v // self.source.sigma_b, v % self.source.sigma_b)


def minrep_expand(lc: LabelCoverInstance) -> MinRepInstance:
    """Expand to the Min-Rep graph: an edge per (superedge, relation pair).

    The full alphabets are materialized as vertices even for symbols that
    appear in no relation; vertex count is |A|*|Sigma_A| + |B|*|Sigma_B|.
    """
    n = lc.a_count * lc.sigma_a + lc.b_count * lc.sigma_b
    b_offset = lc.a_count * lc.sigma_a
    chunks_u, chunks_v = [], []
    ea, eb, rel_ids = lc.edge_arrays()
    for rid, rel in enumerate(lc.relations):
        mask = rel_ids == rid
        if not mask.any():
            continue
        alphas = np.array([p[0] for p in rel.pairs], dtype=np.int64)
        betas = np.array([p[1] for p in rel.pairs], dtype=np.int64)
        us = (ea[mask, None] * np.int64(lc.sigma_a) + alphas[None, :]).ravel()
        vs = (b_offset + eb[mask, None] * np.int64(lc.sigma_b) + betas[None, :]).ravel()
        chunks_u.append(us)
        chunks_v.append(vs)
    if chunks_u:
        eu = np.concatenate(chunks_u)
        ev = np.concatenate(chunks_v)
    else:
        eu = np.zeros(0, dtype=np.int64)
        ev = np.zeros(0, dtype=np.int64)
    return MinRepInstance(lc, Graph.from_arrays(n, eu, ev))


def repcover_valid(mr: MinRepInstance, cover: RepCover) -> tuple[bool, int | None]:
    """Check every superedge has a covering representative pair.

    Returns (True, None) or (False, first failing superedge id).
    """
    lc = mr.source
    sa: list[set] = [set() for _ in range(lc.a_count)]
    sb: list[set] = [set() for _ in range(lc.b_count)]
    for side, i, sym in cover.members:
        if side == "A":
            if not (0 <= i < lc.a_count and 0 <= sym < lc.sigma_a):
                raise InputError(f"cover member out of range: {(side, i, sym)}")
            sa[i].add(sym)
        elif side == "B":
            if not (0 <= i < lc.b_count and 0 <= sym < lc.sigma_b):
                raise InputError(f"cover member out of range: {(side, i, sym)}")
            sb[i].add(sym)
        else:
            raise InputError(f"cover side must be 'A' or 'B': {side!r}")
    for e in range(lc.edge_count):
        a, b = int(lc._ea[e]), int(lc._eb[e])
        rel = lc.relation(e)
        ok = any(alpha in sa[a] and beta in sb[b] for alpha, beta in rel.pairs)
        if not ok:
            return False, e
    return True, None


def labeling_to_repcover(lc: LabelCoverInstance, lab: Labeling) -> RepCover:
    """One representative per supervertex; valid iff the labeling has value 1."""
    lab.check_shape(lc)
    members = [("A", i, s) for i, s in enumerate(lab.gamma_a)]
    members += [("B", j, s) for j, s in enumerate(lab.gamma_b)]
    return RepCover.of(members)


# --- LC v1 / COVER v1 / LABEL v1 text formats --------------------------------

def write_lc_text(lc: LabelCoverInstance) -> str:
    out = ["LC v1",
           f"A {lc.a_count} B {lc.b_count} SA {lc.sigma_a} SB {lc.sigma_b} M {lc.edge_count}"]
    for a, b, rel in lc.superedges():
        out.append(f"E {a} {b} {len(rel)}")
        out.extend(f"{alpha} {beta}" for alpha, beta in rel.pairs)
    return "\n".join(out) + "\n"


def parse_lc_text(text: str) -> LabelCoverInstance:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != "LC v1":
        raise InputError("missing LC v1 header")
    toks = lines[1].split() if len(lines) > 1 else []
    if len(toks) != 10 or toks[0::2] != ["A", "B", "SA", "SB", "M"]:
        raise InputError("bad LC size line")
    a_count, b_count, sigma_a, sigma_b, m = (int(t) for t in toks[1::2])
    superedges = []
    pos = 2
    for _ in range(m):
        if pos >= len(lines) or not lines[pos].startswith("E "):
            raise InputError("expected superedge line")
        parts = lines[pos].split()
        if len(parts) != 4:
            raise InputError(f"bad superedge line: {lines[pos]!r}")
        a, b, t = int(parts[1]), int(parts[2]), int(parts[3])
        pos += 1
        pairs = []
        prev = None
        for _ in range(t):
            if pos >= len(lines):
                raise InputError("truncated relation block")
            ab = lines[pos].split()
            if len(ab) != 2:
                raise InputError(f"bad relation pair line: {lines[pos]!r}")
            pair = (int(ab[0]), int(ab[1]))
            if prev is not None and pair <= prev:
                raise InputError("relation pairs must be sorted and distinct")
            prev = pair
            pairs.append(pair)
            pos += 1
        superedges.append((a, b, pairs))
    if pos != len(lines):
        raise InputError("trailing content after superedges")
    return LabelCoverInstance(a_count, b_count, sigma_a, sigma_b, superedges)


def write_cover_text(cover: RepCover) -> str:
    out = ["COVER v1"]
    out.extend(f"{s} {i} {y}" for s, i, y in cover.sorted_members())
    return "\n".join(out) + "\n"


def parse_cover_text(text: str) -> RepCover:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != "COVER v1":
        raise InputError("missing COVER v1 header")
    members = []
    for ln in lines[1:]:
        toks = ln.split()
        if len(toks) != 3 or toks[0] not in ("A", "B"):
            raise InputError(f"bad cover line: {ln!r}")
        members.append((toks[0], int(toks[1]), int(toks[2])))
    return RepCover.of(members)


def write_labeling_text(lab: Labeling) -> str:
    out = ["LABEL v1"]
    out.extend(f"A {i} {s}" for i, s in enumerate(lab.gamma_a))
    out.extend(f"B {j} {s}" for j, s in enumerate(lab.gamma_b))
    return "\n".join(out) + "\n"


def parse_labeling_text(text: str, lc: LabelCoverInstance) -> Labeling:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != "LABEL v1":
        raise InputError("missing LABEL v1 header")
    ga: dict[int, int] = {}
    gb: dict[int, int] = {}
    for ln in lines[1:]:
        toks = ln.split()
        if len(toks) != 3 or toks[0] not in ("A", "B"):
            raise InputError(f"bad labeling line: {ln!r}")
        side, i, s = toks[0], int(toks[1]), int(toks[2])
        target = ga if side == "A" else gb
        if i in target:
            raise InputError(f"vertex labeled twice: {ln!r}")
        target[i] = s
    if sorted(ga) != list(range(lc.a_count)) or sorted(gb) != list(range(lc.b_count)):
        raise InputError("labeling must cover every vertex exactly once")
    lab = Labeling(tuple(ga[i] for i in range(lc.a_count)),
                   tuple(gb[j] for j in range(lc.b_count)))
    lab.check_shape(lc)
    return lab
