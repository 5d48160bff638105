"""Structured search for families that carry an interval certificate while
no element reaches half the members, plus the digraph bookkeeping behind
the ground-size lower bound and the exhaustive small-ground sweeps.

The searched families have a fixed skeleton over the ground {1..n}: one
member mapped to the full set, one member A_i mapped to each co-atom
[n] - {i}, and one member B_p mapped to [n] - p for each chosen element
pair p. Under the canonical images the pairwise interval checks reduce
to statements about the containment digraph (edge (i, j) iff i in A_j)
and the pair-member contents, which is what the backtracking enumerates:

  - every two co-atom members must see each other (tournament edges),
  - a vertex v outside pair p with A_v disjoint from p is forced into B_p,
  - element frequencies 1 + outdeg(v) + #{p : v in B_p} stay below half
    the family size, which caps each vertex's combined degree.

Everything is enumerated in fixed orders and the final report list is
sorted, so results are identical for any worker count.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import permutations, product
from typing import NamedTuple, Sequence

from .certificates import Certificate, find_certificate, verify_certificate
from .family import (
    MAX_GROUND,
    Family,
    FamilyFormatError,
    ResourceLimitError,
    frankl_check,
    frequency_vector,
    full_mask,
    is_filter,
    mask_from_elements,
)

# The orientation space grows like 3**(n choose 2); 10 is where exhausting
# it stops being a coffee-break job even with the budget pruning.
SEARCH_CAP = 10
# Relabeling orbits are deduplicated by brute force over n! permutations.
CANONICAL_CAP = 8
# The all-families sweep walks 2**(2**n) families.
ENUMERATION_CAP = 4


@dataclass(frozen=True)
class Digraph:
    """Adjacency over vertices {1..order}: bit j-1 of rows[i-1] is edge (i, j)."""

    order: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 0 <= self.order <= MAX_GROUND:
            raise ValueError(f"order must be in 0..{MAX_GROUND}")
        rows = tuple(int(r) for r in self.rows)
        if len(rows) != self.order:
            raise ValueError("need exactly one adjacency row per vertex")
        limit = full_mask(self.order)
        for i, r in enumerate(rows):
            if r < 0 or r & ~limit:
                raise ValueError(f"row {i + 1} does not fit {self.order} vertices")
            if r >> i & 1:
                raise ValueError(f"self loop at vertex {i + 1}")
        object.__setattr__(self, "rows", rows)

    def edge(self, i: int, j: int) -> bool:
        return bool(self.rows[i - 1] >> (j - 1) & 1)

    def out_degree(self, i: int) -> int:
        return self.rows[i - 1].bit_count()


def digraph_from_family(shape: "SearchShape", assignments: Sequence[int]) -> Digraph:
    """Containment digraph of the co-atom members: edge (i, j) iff i in A_j.

    assignments[j - 1] is the member mapped to the co-atom missing j; it
    must not contain j itself. Pair members play no role here.
    """
    n = shape.ground_size
    if len(assignments) != n:
        raise ValueError(f"need exactly {n} co-atom members")
    limit = full_mask(n)
    rows = [0] * n
    for j, a in enumerate(assignments):
        if a < 0 or a & ~limit:
            raise ValueError(f"member {a:#x} does not fit ground size {n}")
        if a >> j & 1:
            raise ValueError(f"member for co-atom {j + 1} must not contain {j + 1}")
        rest = a
        while rest:
            low = rest & -rest
            rows[low.bit_length() - 1] |= 1 << j
            rest ^= low
    return Digraph(n, tuple(rows))


def contains_tournament(d: Digraph) -> bool:
    """Is at least one direction present between every two distinct vertices?"""
    for i in range(d.order):
        for j in range(i + 1, d.order):
            if not (d.rows[i] >> j & 1 or d.rows[j] >> i & 1):
                return False
    return True


def max_outdegree(d: Digraph) -> int:
    return max((r.bit_count() for r in d.rows), default=0)


def degree_budget_feasible(n: int, num_pairs: int = 2) -> bool:
    """Can the per-element degree caps cover the forced edge total?

    With two pair members on an even ground of size n, the containment
    digraph needs out-degree sum at least (n*n - n)/2 + 2 while the two
    elements carrying the pair members are capped at n/2 - 1 and the rest
    at n/2. Other budgets are not derived here and are refused.
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 2 or n % 2:
        raise ValueError("only even ground sizes n >= 2 are supported")
    if num_pairs != 2:
        raise ValueError("only the two-pair budget is derived")
    half = n // 2
    return 2 * (half - 1) + (n - 2) * half >= (n * n - n) // 2 + 2


def min_even_ground_size() -> int:
    """Smallest even ground size whose two-pair degree budget is feasible."""
    n = 2
    while not degree_budget_feasible(n, 2):
        n += 2
    return n


@dataclass(frozen=True)
class SearchShape:
    """Which pair complements [n] - {i, j} join the co-atoms in the filter."""

    ground_size: int
    missing_pairs: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        n = self.ground_size
        if isinstance(n, bool) or not isinstance(n, int) or not 1 <= n <= MAX_GROUND:
            raise FamilyFormatError(f"ground size must be an integer in 1..{MAX_GROUND}")
        norm = []
        for pair in self.missing_pairs:
            try:
                i, j = pair
            except (TypeError, ValueError):
                raise FamilyFormatError(f"pair {pair!r} must have exactly two elements")
            if not (isinstance(i, int) and isinstance(j, int)):
                raise FamilyFormatError(f"pair {pair!r} must contain integers")
            if not (1 <= i <= n and 1 <= j <= n) or i == j:
                raise FamilyFormatError(f"pair {pair!r} is not two distinct elements of 1..{n}")
            norm.append((min(i, j), max(i, j)))
        pairs = tuple(sorted(norm))
        for a, b in zip(pairs, pairs[1:]):
            if a == b:
                raise FamilyFormatError(f"pair {a!r} repeated")
        object.__setattr__(self, "missing_pairs", pairs)

    @classmethod
    def from_dict(cls, data: object) -> "SearchShape":
        if not isinstance(data, dict) or set(data) != {"ground", "pairs"}:
            raise FamilyFormatError(
                'shape data must have exactly the keys "ground" and "pairs"'
            )
        ground = data["ground"]
        raw = data["pairs"]
        if isinstance(ground, bool) or not isinstance(ground, int):
            raise FamilyFormatError('"ground" must be an integer')
        if not isinstance(raw, list) or not all(isinstance(p, list) for p in raw):
            raise FamilyFormatError('"pairs" must be a list of two-element lists')
        return cls(ground, tuple(tuple(p) for p in raw))

    def to_dict(self) -> dict:
        return {
            "ground": self.ground_size,
            "pairs": [list(p) for p in self.missing_pairs],
        }

    def family_size(self) -> int:
        return self.ground_size + 1 + len(self.missing_pairs)

    def filter_family(self) -> Family:
        """The image filter: full set, all co-atoms, the pair complements."""
        n = self.ground_size
        full = full_mask(n)
        masks = [full] + [full ^ (1 << i) for i in range(n)]
        for i, j in self.missing_pairs:
            masks.append(full ^ (1 << (i - 1)) ^ (1 << (j - 1)))
        fam = Family(n, tuple(masks))
        # Adding one element to any pair complement lands on a co-atom, so
        # this is up-closed as built.
        assert is_filter(fam) and len(fam) == self.family_size()
        return fam


@dataclass(frozen=True)
class CounterexampleReport:
    """A fully verified find: valid certificate, every element under half.

    Construction re-runs the whole verification, so a report object is
    itself the proof that the search result is real.
    """

    family: Family
    certificate: Certificate
    frequency: tuple[int, ...]
    max_frequency: int

    def __post_init__(self) -> None:
        if tuple(self.frequency) != frequency_vector(self.family):
            raise ValueError("frequency vector does not match the family")
        if self.max_frequency != max(self.frequency, default=0):
            raise ValueError("max_frequency does not match the frequency vector")
        if 2 * self.max_frequency >= len(self.family):
            raise ValueError("not a counterexample: an element reaches half the members")
        verdict = verify_certificate(self.family, self.certificate)
        if not verdict:
            raise ValueError(f"certificate does not verify: {verdict.clause}")

    @classmethod
    def from_parts(cls, family: Family, certificate: Certificate) -> "CounterexampleReport":
        freq = frequency_vector(family)
        return cls(family, certificate, freq, max(freq, default=0))

    @classmethod
    def from_dict(cls, data: object) -> "CounterexampleReport":
        if not isinstance(data, dict) or set(data) != {
            "family",
            "certificate",
            "frequency",
            "max_frequency",
        }:
            raise FamilyFormatError("report data has the wrong keys")
        family = Family.from_dict(data["family"])
        certificate = Certificate.from_dict(data["certificate"])
        return cls(
            family,
            certificate,
            tuple(data["frequency"]),
            data["max_frequency"],
        )

    def to_dict(self) -> dict:
        return {
            "family": self.family.to_dict(),
            "certificate": self.certificate.to_dict(),
            "frequency": list(self.frequency),
            "max_frequency": self.max_frequency,
        }


# The eleven members, one per line, with the image each one is paired to.
_MINIMAL_MEMBERS = (
    (1, 2, 3, 4, 5, 6, 7, 8),  # image: the full set
    (2, 4, 6, 7, 8),  # image misses 1
    (1, 3, 5, 8),  # image misses 2
    (1, 4, 7, 8),  # image misses 3
    (2, 3, 5, 6),  # image misses 4
    (1, 3, 7),  # image misses 5
    (2, 3, 5),  # image misses 6
    (2, 4, 6),  # image misses 7
    (4, 5, 6, 7),  # image misses 8
    (8,),  # image misses 1 and 2
    (1,),  # image misses 3 and 4
)


def minimal_counterexample() -> CounterexampleReport:
    """The known eleven-member family over {1..8}.

    Every element sits in exactly 5 of the 11 members, one short of half,
    while the canonical pairing onto the filter of the full set, the
    eight co-atoms, and the complements of {1,2} and {3,4} has pairwise
    disjoint intervals. Construction re-verifies all of that.
    """
    n = 8
    full = full_mask(n)
    images = (
        [full]
        + [full ^ (1 << i) for i in range(n)]
        + [full ^ 0b11, full ^ 0b1100]
    )
    pairs = tuple(
        (mask_from_elements(s, n), img) for s, img in zip(_MINIMAL_MEMBERS, images)
    )
    family = Family(n, tuple(a for a, _ in pairs))
    return CounterexampleReport.from_parts(family, Certificate(n, pairs))


def _search_solutions(
    n: int,
    missing: tuple[tuple[int, int], ...],
    prefix: tuple[int, ...] | None,
    sink: list,
) -> None:
    """Backtrack over co-atom member orientations, then pair-member contents.

    Appends (a_members, b_members) mask tuples to sink; a_members[v] is
    A_{v+1}, b_members[k] belongs to the k-th missing pair. prefix pins
    the first len(prefix) free-pair choices (0: low beats high, 1: high
    beats low, 2: both directions), which is how workers split the space.
    """
    p_count = len(missing)
    m = n + 1 + p_count
    # Frequency of every element must stay below m/2; the full-set member
    # contributes 1, so outdeg(v) + #B's containing v is capped here.
    cap = (m + 1) // 2 - 2
    if cap < 0:
        return
    full = full_mask(n)
    miss0 = [(i - 1, j - 1) for i, j in missing]
    pmasks = [(1 << i) | (1 << j) for i, j in miss0]
    pmask_set = set(pmasks)

    a_in = [0] * n  # a_in[v] = current members of A_{v+1}
    outdeg = [0] * n
    forced_b = [0] * n  # how many pair members v is already forced into
    forced_mask = [0] * p_count
    forced_count = [0] * p_count

    # Both directions are forced inside each missing pair: the interval
    # checks between A_i, A_j and B_p demand i in A_j and j in A_i.
    for (i, j), pm in zip(miss0, pmasks):
        a_in[i] |= 1 << j
        a_in[j] |= 1 << i
    for v in range(n):
        outdeg[v] = sum(1 for w in range(n) if a_in[w] >> v & 1)
    if any(outdeg[v] > cap for v in range(n)):
        return

    # Free pairs, ordered so that the pairs deciding the forced-membership
    # tests come first: the earlier a forcing fires, the bigger the cut.
    pair_elems = sorted({x for i, j in miss0 for x in (i, j)})
    others = [v for v in range(n) if v not in pair_elems]
    ordered: list[tuple[int, int]] = []
    seen_pairs: set[int] = set(pmask_set)

    def push(i: int, j: int) -> None:
        pm = (1 << i) | (1 << j)
        if pm not in seen_pairs:
            seen_pairs.add(pm)
            ordered.append((min(i, j), max(i, j)))

    for i_idx, i in enumerate(pair_elems):
        for j in pair_elems[i_idx + 1 :]:
            push(i, j)
    for v in others:
        for i in pair_elems:
            push(i, v)
    for i_idx, i in enumerate(others):
        for j in others[i_idx + 1 :]:
            push(i, j)
    npairs = len(ordered)
    index_of = {((1 << i) | (1 << j)): t for t, (i, j) in enumerate(ordered)}

    # (v, p) needs a forced-membership decision only when neither pair of
    # v with an element of p is missing (a missing pair feeds A_v forever).
    check_after: list[list[tuple[int, int]]] = [[] for _ in range(max(npairs, 1))]
    for p_idx, (i, j) in enumerate(miss0):
        for v in range(n):
            if v == i or v == j:
                continue
            m1 = (1 << min(v, i)) | (1 << max(v, i))
            m2 = (1 << min(v, j)) | (1 << max(v, j))
            if m1 in pmask_set or m2 in pmask_set:
                continue
            check_after[max(index_of[m1], index_of[m2])].append((v, p_idx))

    total = sum(outdeg)
    max_total = n * cap
    # Every pair member must be nonempty: were B_p empty, the two
    # elements of p would land in more than half the members. So the
    # budget reserves one membership unit per pair up front.
    reserved = p_count
    if total + npairs > max_total - reserved:
        return

    plen = len(prefix) if prefix is not None else 0

    def assign_pair_members() -> None:
        budget = [cap - outdeg[v] for v in range(n)]
        chosen: list[int] = []

        def place(p_idx: int) -> None:
            if p_idx == p_count:
                sink.append((tuple(a_in), tuple(chosen)))
                return
            pm = pmasks[p_idx]
            base = forced_mask[p_idx]
            allowed = 0
            for v in range(n):
                if budget[v] >= 1:
                    allowed |= 1 << v
            allowed &= ~pm & full
            if base & ~allowed:
                return
            free_bits = allowed & ~base
            subs = []
            sub = free_bits
            while True:
                subs.append(base | sub)
                if sub == 0:
                    break
                sub = (sub - 1) & free_bits
            subs.sort(key=lambda s: (s.bit_count(), s))
            for cand in subs:
                if cand == 0:
                    continue
                ok = True
                for q_idx in range(p_idx):
                    if not (cand & pmasks[q_idx] or chosen[q_idx] & pm):
                        ok = False
                        break
                if not ok:
                    continue
                chosen.append(cand)
                rest = cand
                while rest:
                    low = rest & -rest
                    budget[low.bit_length() - 1] -= 1
                    rest ^= low
                place(p_idx + 1)
                rest = cand
                while rest:
                    low = rest & -rest
                    budget[low.bit_length() - 1] += 1
                    rest ^= low
                chosen.pop()

        place(0)

    def descend(t: int) -> None:
        nonlocal total, reserved
        if t == npairs:
            assign_pair_members()
            return
        i, j = ordered[t]
        remaining = npairs - t - 1
        bit_i = 1 << i
        bit_j = 1 << j
        for choice in (0, 1, 2):
            if t < plen and choice != prefix[t]:
                continue
            if choice == 0:
                if outdeg[i] + forced_b[i] >= cap:
                    continue
                add = 1
                outdeg[i] += 1
                a_in[j] |= bit_i
            elif choice == 1:
                if outdeg[j] + forced_b[j] >= cap:
                    continue
                add = 1
                outdeg[j] += 1
                a_in[i] |= bit_j
            else:
                if outdeg[i] + forced_b[i] >= cap or outdeg[j] + forced_b[j] >= cap:
                    continue
                add = 2
                outdeg[i] += 1
                outdeg[j] += 1
                a_in[j] |= bit_i
                a_in[i] |= bit_j
            total += add
            applied: list[tuple[int, int]] = []
            ok = total + remaining <= max_total - reserved
            if ok:
                for v, p_idx in check_after[t]:
                    if a_in[v] & pmasks[p_idx]:
                        continue
                    # v sees neither element of the pair, so v must join B_p.
                    forced_mask[p_idx] |= 1 << v
                    forced_count[p_idx] += 1
                    forced_b[v] += 1
                    applied.append((v, p_idx))
                    if forced_count[p_idx] >= 2:
                        reserved += 1
                    if (
                        outdeg[v] + forced_b[v] > cap
                        or total + remaining > max_total - reserved
                    ):
                        ok = False
                        break
            if ok:
                descend(t + 1)
            for v, p_idx in reversed(applied):
                if forced_count[p_idx] >= 2:
                    reserved -= 1
                forced_count[p_idx] -= 1
                forced_b[v] -= 1
                forced_mask[p_idx] &= ~(1 << v)
            total -= add
            if choice == 0:
                outdeg[i] -= 1
                a_in[j] &= ~bit_i
            elif choice == 1:
                outdeg[j] -= 1
                a_in[i] &= ~bit_j
            else:
                outdeg[i] -= 1
                outdeg[j] -= 1
                a_in[j] &= ~bit_i
                a_in[i] &= ~bit_j

    descend(0)


def _search_chunk(args: tuple[int, tuple[tuple[int, int], ...], list]) -> list:
    n, missing, prefixes = args
    sink: list = []
    for prefix in prefixes:
        _search_solutions(n, missing, prefix, sink)
    return sink


def _solution_report(
    shape: SearchShape, solution: tuple[tuple[int, ...], tuple[int, ...]]
) -> CounterexampleReport:
    n = shape.ground_size
    full = full_mask(n)
    a_members, b_members = solution
    pairs = [(full, full)]
    pairs += [(a, full ^ (1 << v)) for v, a in enumerate(a_members)]
    for (i, j), b in zip(shape.missing_pairs, b_members):
        pairs.append((b, full ^ (1 << (i - 1)) ^ (1 << (j - 1))))
    family = Family(n, tuple(a for a, _ in pairs))
    return CounterexampleReport.from_parts(family, Certificate(n, tuple(pairs)))


_PERM_WEIGHTS: dict = {}


def _canonical_key(members: tuple[int, ...], n: int) -> tuple[int, ...]:
    """Lexicographically least sorted member tuple over all relabelings."""
    import numpy as np

    if n > CANONICAL_CAP:
        raise ResourceLimitError(
            f"canonical dedup is supported only up to ground size {CANONICAL_CAP}"
        )
    weights = _PERM_WEIGHTS.get(n)
    if weights is None:
        weights = np.array(
            [[1 << p[i] for i in range(n)] for p in permutations(range(n))],
            dtype=np.int64,
        )
        _PERM_WEIGHTS[n] = weights
    bits = np.array(
        [[(mask >> i) & 1 for i in range(n)] for mask in members], dtype=np.int64
    )
    values = bits @ weights.T  # one column of relabeled masks per permutation
    values.sort(axis=0)
    # Lexicographic argmin over the columns by filtering row by row; the
    # candidate set collapses to a handful after the first rows.
    live = np.arange(values.shape[1])
    for row in range(values.shape[0]):
        vals = values[row, live]
        live = live[vals == vals.min()]
        if live.size == 1:
            break
    return tuple(int(x) for x in values[:, live[0]])


def _dedupe_canonical(reports: list[CounterexampleReport]) -> list[CounterexampleReport]:
    seen: set[tuple[int, ...]] = set()
    out = []
    for r in reports:
        key = _canonical_key(r.family.members, r.family.ground_size)
        if key not in seen:
            seen.add(key)
            out.append(r)
    return out


def search_counterexamples(
    shape: SearchShape,
    limit: int | None = None,
    workers: int = 1,
    canonical: bool = False,
) -> list[CounterexampleReport]:
    """Exhaustively enumerate counterexample families of the given shape.

    Every returned report passed the full certificate verification and
    has every element in fewer than half the members. The list is sorted
    by member masks (then images), so any worker count yields the same
    list; the enumeration always completes and an empty result is a
    proof that the shape admits nothing. limit truncates the sorted
    output; canonical keeps one representative per relabeling orbit.
    """
    n = shape.ground_size
    if n > SEARCH_CAP:
        raise ResourceLimitError(
            f"structured search is exhaustive only up to ground size {SEARCH_CAP}"
        )
    if workers < 1:
        raise ValueError("workers must be at least 1")
    if limit is not None and limit < 0:
        raise ValueError("limit must be nonnegative")
    missing = shape.missing_pairs
    free_count = n * (n - 1) // 2 - len(missing)
    if workers == 1 or free_count == 0:
        solutions: list = []
        _search_solutions(n, missing, None, solutions)
    else:
        span = min(free_count, 7)
        prefixes = list(product((0, 1, 2), repeat=span))
        chunks = [prefixes[k::workers] for k in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(_search_chunk, [(n, missing, c) for c in chunks])
            solutions = [sol for part in parts for sol in part]
    reports = [_solution_report(shape, sol) for sol in solutions]
    reports.sort(key=lambda r: (r.family.members, r.certificate.pairs))
    if canonical:
        reports = _dedupe_canonical(reports)
    if limit is not None:
        reports = reports[:limit]
    return reports


class SweepSummary(NamedTuple):
    ground_size: int
    scanned: int
    certified: int
    violations: tuple[Family, ...]


def _sweep_chunk(args: tuple[int, int, int]) -> tuple[int, list[tuple[int, ...]]]:
    n, start, stop = args
    certified = 0
    bad: list[tuple[int, ...]] = []
    for code in range(start, stop):
        members = []
        c = code
        k = 0
        while c:
            if c & 1:
                members.append(k)
            c >>= 1
            k += 1
        fam = Family(n, tuple(members))
        if find_certificate(fam) is not None:
            certified += 1
            if not frankl_check(fam).holds:
                bad.append(fam.members)
    return certified, bad


def conjecture_sweep(n: int, workers: int = 1) -> SweepSummary:
    """Decide the certificate condition for every family over {1..n}.

    Walks all families except the empty one and the bare {{}} (neither
    carries an element to count), recording how many admit a certificate
    and which of those dodge the half-element property. An empty
    violation list is an exhaustive verification for this ground size.
    """
    if isinstance(n, bool) or not isinstance(n, int) or not 1 <= n <= ENUMERATION_CAP:
        raise ValueError(f"exhaustive sweep supports ground sizes 1..{ENUMERATION_CAP}")
    if workers < 1:
        raise ValueError("workers must be at least 1")
    count = 1 << (1 << n)
    scanned = count - 2
    if workers == 1:
        certified, bad = _sweep_chunk((n, 2, count))
    else:
        bounds = [2 + (count - 2) * k // workers for k in range(workers + 1)]
        jobs = [(n, bounds[k], bounds[k + 1]) for k in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            certified = 0
            bad = []
            for part_certified, part_bad in pool.map(_sweep_chunk, jobs):
                certified += part_certified
                bad.extend(part_bad)
    violations = tuple(Family(n, members) for members in sorted(bad))
    return SweepSummary(n, scanned, certified, violations)


def enumerate_conjecture(n: int, workers: int = 1) -> list[Family]:
    """Families over {1..n} that admit a certificate yet fail the
    half-element property. Expected (and so far always) empty."""
    return list(conjecture_sweep(n, workers).violations)
