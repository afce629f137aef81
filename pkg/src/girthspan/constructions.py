"""Instance pipeline: 3SAT(5) generation, Label Cover construction,
duplication regularization, parallel repetition, and labeling lifts.

The 3SAT(5) generator uses a configuration model (5 slots per variable,
partitioned into triples with distinct variables, bounded swap repair on
collisions).  Planted mode flips one literal per clause to agree with the
planted assignment when needed.  All randomness comes from a SplitMix64
stream derived from the caller's seed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InputError, ResourceError
from .labelcover import LabelCoverInstance, Labeling, Relation
from .rng import Stream, child_seed

CLAUSE_ALPHABET = 7   # satisfying assignments of a 3-literal clause
VAR_ALPHABET = 2

DEFAULT_MAX_SUPEREDGES = 10_000_000


@dataclass(frozen=True)
class Formula3Sat5:
    """3-CNF formula in which every variable occurs in exactly 5 clauses.

    Each clause is a triple of (variable, positive) literals sorted by
    variable index, with distinct variables within a clause.
    """

    var_count: int
    clauses: tuple

    def __post_init__(self):
        n = self.var_count
        if n < 3 or n % 3 != 0:
            raise InputError("variable count must be >= 3 and divisible by 3")
        if len(self.clauses) != 5 * n // 3:
            raise InputError(f"expected {5 * n // 3} clauses, got {len(self.clauses)}")
        occurrences = [0] * n
        for clause in self.clauses:
            if len(clause) != 3:
                raise InputError("clauses must have exactly 3 literals")
            variables = [v for v, _ in clause]
            if len(set(variables)) != 3:
                raise InputError("clause variables must be distinct")
            if variables != sorted(variables):
                raise InputError("clause literals must be sorted by variable")
            for v, positive in clause:
                if not 0 <= v < n:
                    raise InputError("variable index out of range")
                if not isinstance(positive, bool):
                    raise InputError("polarity must be a bool")
                occurrences[v] += 1
        bad = [v for v, c in enumerate(occurrences) if c != 5]
        if bad:
            raise InputError(f"variables without exactly 5 occurrences: {bad[:5]}")

    @property
    def clause_count(self) -> int:
        return len(self.clauses)

    def clause_satisfied(self, c: int, assignment) -> bool:
        return any(bool(assignment[v]) == positive for v, positive in self.clauses[c])


def gen_3sat5(n_prime: int, seed: int, planted=None,
              max_restarts: int = 80, max_repair_passes: int = 400) -> Formula3Sat5:
    """Random 3SAT(5) formula, deterministic in (n_prime, seed, planted)."""
    if n_prime < 3 or n_prime % 3 != 0:
        raise InputError("n_prime must be >= 3 and divisible by 3")
    if planted is not None:
        planted = tuple(bool(b) for b in planted)
        if len(planted) != n_prime:
            raise InputError("planted assignment length must equal n_prime")
    stream = Stream(child_seed(seed, "gen3sat5", n_prime))
    triples = _distinct_triples(n_prime, stream, max_restarts, max_repair_passes)
    clauses = []
    for triple in triples:
        variables = sorted(triple)
        polarities = [stream.randbelow(2) == 1 for _ in range(3)]
        if planted is not None:
            satisfied = any(planted[v] == p for v, p in zip(variables, polarities))
            if not satisfied:
                flip = stream.randbelow(3)
                polarities[flip] = planted[variables[flip]]
        clauses.append(tuple(zip(variables, polarities)))
    return Formula3Sat5(n_prime, tuple(clauses))


def _distinct_triples(n: int, stream: Stream, max_restarts: int, max_passes: int):
    """Partition 5 slots per variable into triples with distinct members.

    Shuffle all 5n slots, then repeatedly swap one slot of each colliding
    triple with a random slot; reshuffle from scratch if a repair round
    budget runs out.
    """
    clause_count = 5 * n // 3
    for _ in range(max_restarts):
        slots = [v for v in range(n) for _ in range(5)]
        stream.shuffle(slots)
        for _ in range(max_passes):
            clean = True
            for c in range(clause_count):
                base = 3 * c
                if len({slots[base], slots[base + 1], slots[base + 2]}) != 3:
                    clean = False
                    offender = base + stream.randbelow(3)
                    other = stream.randbelow(len(slots))
                    slots[offender], slots[other] = slots[other], slots[offender]
            if clean:
                return [slots[3 * c:3 * c + 3] for c in range(clause_count)]
    raise ResourceError("3SAT(5) configuration model failed to converge",
                        required=max_restarts + 1, allowed=max_restarts)


def clause_satisfying_bits(clause) -> list:
    """The 7 satisfying bit triples of a clause, in canonical order.

    Bit triples are ordered lexicographically with the lowest-indexed
    variable as the most significant bit; the single falsifying triple is
    skipped, so positions map to clause symbols 0..6.
    """
    falsifying = tuple(0 if positive else 1 for _, positive in clause)
    out = []
    for t in range(8):
        bits = ((t >> 2) & 1, (t >> 1) & 1, t & 1)
        if bits != falsifying:
            out.append(bits)
    return out


def clause_symbol(clause, assignment) -> int:
    """Canonical symbol of the clause assignment induced by a full assignment."""
    bits = tuple(int(bool(assignment[v])) for v, _ in clause)
    table = clause_satisfying_bits(clause)
    try:
        return table.index(bits)
    except ValueError as exc:
        raise InputError("assignment falsifies the clause") from exc


def lc_from_3sat5(formula: Formula3Sat5) -> LabelCoverInstance:
    """Clause-variable Label Cover: |A| = clauses, |B| = variables.

    A-symbols are the 7 satisfying clause assignments, B-symbols the 2
    variable values; each incidence relation pairs a clause symbol with its
    restriction to the variable, so every relation has exactly 7 pairs.
    """
    superedges = []
    for c, clause in enumerate(formula.clauses):
        bit_rows = clause_satisfying_bits(clause)
        for pos, (v, _) in enumerate(clause):
            pairs = [(alpha, bits[pos]) for alpha, bits in enumerate(bit_rows)]
            superedges.append((c, v, pairs))
    return LabelCoverInstance(formula.clause_count, formula.var_count,
                              CLAUSE_ALPHABET, VAR_ALPHABET, superedges)


def labeling_from_assignment(formula: Formula3Sat5, assignment) -> Labeling:
    """Value-1 labeling of lc_from_3sat5 induced by a satisfying assignment."""
    gamma_a = tuple(clause_symbol(cl, assignment) for cl in formula.clauses)
    gamma_b = tuple(int(bool(b)) for b in assignment)
    return Labeling(gamma_a, gamma_b)


def regularize(lc: LabelCoverInstance, require_sat5_shape: bool = True) -> LabelCoverInstance:
    """Three copies of A, five copies of B, a copy of E between each pair.

    On a 3SAT(5)-shaped input (A-degrees 3, B-degrees 5) the output is
    15-regular with |A'| = |B'| = 5n'.  The construction itself is defined
    for any instance and preserves the optimum exactly; pass
    ``require_sat5_shape=False`` to skip the degree check.
    """
    if require_sat5_shape:
        if lc.edge_count == 0 or (lc.degrees_a() != 3).any() or (lc.degrees_b() != 5).any():
            raise InputError("regularize expects A-degrees 3 and B-degrees 5 "
                             "(pass require_sat5_shape=False to override)")
    ea, eb, rel_ids = lc.edge_arrays()
    m = lc.edge_count
    chunks = []
    for i in range(3):
        for j in range(5):
            chunks.append((ea + i * lc.a_count, eb + j * lc.b_count, rel_ids))
    new_ea = np.concatenate([c[0] for c in chunks]) if m else np.zeros(0, np.int64)
    new_eb = np.concatenate([c[1] for c in chunks]) if m else np.zeros(0, np.int64)
    new_rel = np.concatenate([c[2] for c in chunks]) if m else np.zeros(0, np.int64)
    order = np.lexsort((new_eb, new_ea))
    return LabelCoverInstance.from_arrays(
        3 * lc.a_count, 5 * lc.b_count, lc.sigma_a, lc.sigma_b,
        new_ea[order], new_eb[order], new_rel[order], lc.relations)


def parallel_repetition(lc: LabelCoverInstance, ell: int,
                        max_superedges: int = DEFAULT_MAX_SUPEREDGES) -> LabelCoverInstance:
    """ell-fold product: tuple vertices, tuple symbols, coordinatewise relations.

    Tuples are indexed row-major (first coordinate most significant).  The
    instance is materialized explicitly; exceeding ``max_superedges`` raises
    a ResourceError before any allocation.
    """
    if ell < 1:
        raise InputError("ell must be >= 1")
    required = lc.edge_count ** ell
    if required > max_superedges:
        raise ResourceError("parallel repetition would exceed the superedge budget",
                            required=required, allowed=max_superedges)
    ea, eb, rel_ids = lc.edge_arrays()
    prod_ea, prod_eb, prod_rel = ea.copy(), eb.copy(), rel_ids.copy()
    relations = list(lc.relations)
    sigma_a, sigma_b = lc.sigma_a, lc.sigma_b
    for _ in range(ell - 1):
        prod_ea = (prod_ea[:, None] * np.int64(lc.a_count) + ea[None, :]).ravel()
        prod_eb = (prod_eb[:, None] * np.int64(lc.b_count) + eb[None, :]).ravel()
        pair_key = (prod_rel[:, None] * np.int64(len(lc.relations)) + rel_ids[None, :]).ravel()
        relations, prod_rel = _combine_relations(
            relations, lc.relations, pair_key, sigma_a, sigma_b, lc.sigma_a, lc.sigma_b)
        sigma_a *= lc.sigma_a
        sigma_b *= lc.sigma_b
    order = np.lexsort((prod_eb, prod_ea))
    return LabelCoverInstance.from_arrays(
        lc.a_count ** ell, lc.b_count ** ell, sigma_a, sigma_b,
        prod_ea[order], prod_eb[order], prod_rel[order], relations)


def _combine_relations(left_table, right_table, pair_key, sa_left, sb_left, sa_right, sb_right):
    """Intern products of relation pairs keyed by (left_id * len(right) + right_id)."""
    unique_keys, inverse = np.unique(pair_key, return_inverse=True)
    new_table = []
    for key in unique_keys.tolist():
        lid, rid = divmod(key, len(right_table))
        left, right = left_table[lid], right_table[rid]
        pairs = [(la * sa_right + ra, lb * sb_right + rb)
                 for la, lb in left.pairs for ra, rb in right.pairs]
        new_table.append(Relation(pairs))
    return new_table, inverse.astype(np.int64)


def lift_labeling(lc: LabelCoverInstance, lab: Labeling, stage: str,
                  ell: int | None = None) -> Labeling:
    """Push a labeling of ``lc`` through a pipeline stage.

    ``stage`` is "regularize" (copies per block) or "repetition"
    (coordinatewise tuples; requires ``ell``).  Value-1 labelings stay
    value 1; under repetition the lifted value is the ell-th power.
    """
    lab.check_shape(lc)
    if stage == "regularize":
        gamma_a = lab.gamma_a * 3
        gamma_b = lab.gamma_b * 5
        return Labeling(gamma_a, gamma_b)
    if stage == "repetition":
        if ell is None or ell < 1:
            raise InputError("repetition lift requires ell >= 1")
        return Labeling(
            _lift_tuples(lab.gamma_a, lc.a_count, lc.sigma_a, ell),
            _lift_tuples(lab.gamma_b, lc.b_count, lc.sigma_b, ell))
    raise InputError(f"unknown stage {stage!r}")


def _lift_tuples(gamma, count, sigma, ell):
    base = np.asarray(gamma, dtype=np.int64)
    lifted = base.copy()
    for _ in range(ell - 1):
        lifted = (lifted[:, None] * np.int64(sigma) + base[None, :]).ravel()
    return tuple(lifted.tolist())


@dataclass
class StageRecord:
    """One pipeline stage: name, parameters, and exact output sizes."""

    name: str
    params: dict = field(default_factory=dict)
    sizes: dict = field(default_factory=dict)


@dataclass
class PipelineTrace:
    """Ordered log of pipeline stages with seeds and parameter values."""

    seed: int
    stages: list = field(default_factory=list)

    def record(self, name: str, params: dict, sizes: dict) -> None:
        self.stages.append(StageRecord(name, dict(params), dict(sizes)))

    def as_dict(self) -> dict:
        return {"seed": self.seed,
                "stages": [{"name": s.name, "params": s.params, "sizes": s.sizes}
                           for s in self.stages]}


# --- DIMACS-style formula format ---------------------------------------------

def write_formula_text(formula: Formula3Sat5, seed=None, planted=None) -> str:
    planted_str = "none" if planted is None else "".join("1" if b else "0" for b in planted)
    lines = [f"c 3sat5 seed={seed if seed is not None else 'none'} planted={planted_str}",
             f"p cnf {formula.var_count} {formula.clause_count}"]
    for clause in formula.clauses:
        lits = [(v + 1) if positive else -(v + 1) for v, positive in clause]
        lines.append(" ".join(str(l) for l in lits) + " 0")
    return "\n".join(lines) + "\n"


def parse_formula_text(text: str) -> Formula3Sat5:
    var_count = None
    clause_count = None
    clauses = []
    for ln in text.splitlines():
        ln = ln.strip()
        if not ln or ln.startswith("c"):
            continue
        if ln.startswith("p"):
            toks = ln.split()
            if len(toks) != 4 or toks[1] != "cnf":
                raise InputError(f"bad problem line: {ln!r}")
            var_count, clause_count = int(toks[2]), int(toks[3])
            continue
        toks = ln.split()
        if toks[-1] != "0" or len(toks) != 4:
            raise InputError(f"expected 3 literals and terminating 0: {ln!r}")
        lits = [int(t) for t in toks[:3]]
        if any(l == 0 for l in lits):
            raise InputError(f"literal 0 inside clause: {ln!r}")
        clause = tuple(sorted((abs(l) - 1, l > 0) for l in lits))
        clauses.append(clause)
    if var_count is None:
        raise InputError("missing problem line")
    if clause_count != len(clauses):
        raise InputError(f"expected {clause_count} clauses, found {len(clauses)}")
    return Formula3Sat5(var_count, tuple(clauses))
