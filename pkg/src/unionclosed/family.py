"""Set families over a small ground set, encoded as bitmasks.

A subset of the ground set {1, ..., n} is a plain int: element i is bit
i - 1. Keeping sets as machine words makes the pairwise checks and the
searches elsewhere in the package cheap. Everything 1-based lives at the
I/O boundary; bit positions are 0-based internally.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import log2
from typing import Iterable, Iterator, NamedTuple

# Masks must stay well under native word width; 30 also keeps 2**n loops sane.
MAX_GROUND = 30


class FamilyFormatError(ValueError):
    """Malformed family or certificate data: schema violations, duplicates."""


class ResourceLimitError(RuntimeError):
    """An operation was asked to run beyond its certified exhaustive range."""


def full_mask(ground_size: int) -> int:
    return (1 << ground_size) - 1


def mask_from_elements(elements: Iterable[int], ground_size: int) -> int:
    """Pack 1-based elements into a mask.

    Out-of-range and repeated elements are rejected: this is the parse
    path for external data, so it must not silently normalize.
    """
    mask = 0
    for e in elements:
        if isinstance(e, bool) or not isinstance(e, int) or not 1 <= e <= ground_size:
            raise FamilyFormatError(
                f"element {e!r} is not an integer in 1..{ground_size}"
            )
        bit = 1 << (e - 1)
        if mask & bit:
            raise FamilyFormatError(f"element {e} repeated within a set")
        mask |= bit
    return mask


def elements_of(mask: int) -> tuple[int, ...]:
    """Unpack a mask into its 1-based elements, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return tuple(out)


def format_set(mask: int) -> str:
    """Render a mask as {1,3,7}; the empty set renders as {}."""
    return "{" + ",".join(str(e) for e in elements_of(mask)) + "}"


def iter_supersets(mask: int, ground_size: int) -> Iterator[int]:
    """Every superset of mask inside the ground set, mask itself included."""
    free = full_mask(ground_size) & ~mask
    sub = free
    while True:
        yield mask | sub
        if sub == 0:
            return
        sub = (sub - 1) & free


@dataclass(frozen=True)
class Family:
    """A duplicate-free family of subsets of {1, ..., ground_size}.

    Members are stored sorted by numeric mask value, so equal families
    compare and serialize identically no matter how they were built.
    """

    ground_size: int
    members: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        n = self.ground_size
        if isinstance(n, bool) or not isinstance(n, int) or not 0 <= n <= MAX_GROUND:
            raise FamilyFormatError(
                f"ground size must be an integer in 0..{MAX_GROUND}, got {n!r}"
            )
        members = tuple(sorted(self.members))
        limit = full_mask(n)
        prev = -1
        for m in members:
            if m == prev:
                raise FamilyFormatError(f"duplicate member {format_set(m)}")
            if m < 0 or m & ~limit:
                raise FamilyFormatError(
                    f"member mask {m:#x} does not fit ground size {n}"
                )
            prev = m
        object.__setattr__(self, "members", members)

    @classmethod
    def from_sets(cls, ground_size: int, sets: Iterable[Iterable[int]]) -> "Family":
        return cls(ground_size, tuple(mask_from_elements(s, ground_size) for s in sets))

    @classmethod
    def from_dict(cls, data: object) -> "Family":
        """Parse the {"ground": n, "sets": [[1, 4, 7], ...]} form.

        Duplicate sets, duplicate elements within a set, stray keys, and
        out-of-range values all raise FamilyFormatError.
        """
        if not isinstance(data, dict) or set(data) != {"ground", "sets"}:
            raise FamilyFormatError(
                'family data must be an object with exactly the keys "ground" and "sets"'
            )
        ground = data["ground"]
        sets = data["sets"]
        if isinstance(ground, bool) or not isinstance(ground, int):
            raise FamilyFormatError('"ground" must be an integer')
        if not isinstance(sets, list) or not all(isinstance(s, list) for s in sets):
            raise FamilyFormatError('"sets" must be a list of lists')
        return cls.from_sets(ground, sets)

    def to_dict(self) -> dict:
        return {
            "ground": self.ground_size,
            "sets": [list(elements_of(m)) for m in self.members],
        }

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, mask: object) -> bool:
        return mask in self.members


class UnionClosureVerdict(NamedTuple):
    holds: bool
    witness: tuple[int, int] | None  # a member pair whose union is absent

    def __bool__(self) -> bool:
        return self.holds


class FilterVerdict(NamedTuple):
    holds: bool
    witness: tuple[int, int] | None  # (member, missing one-element-up superset)

    def __bool__(self) -> bool:
        return self.holds


class FranklVerdict(NamedTuple):
    holds: bool
    element: int
    count: int

    def __bool__(self) -> bool:
        return self.holds


class ReimerVerdict(NamedTuple):
    holds: bool
    average: Fraction
    threshold: float

    def __bool__(self) -> bool:
        return self.holds


def is_union_closed(fam: Family) -> UnionClosureVerdict:
    """Is every pairwise union again a member? Vacuously true when empty.

    The witness on failure is the first offending pair in member order.
    """
    present = set(fam.members)
    ms = fam.members
    for i, a in enumerate(ms):
        for b in ms[i + 1 :]:
            if a | b not in present:
                return UnionClosureVerdict(False, (a, b))
    return UnionClosureVerdict(True, None)


def is_filter(fam: Family) -> FilterVerdict:
    """Is the family an up-set of the subset lattice?

    Checking one element up suffices: if every member plus one missing
    element is a member, induction gives all supersets.
    """
    present = set(fam.members)
    limit = full_mask(fam.ground_size)
    for f in fam.members:
        free = limit & ~f
        while free:
            bit = free & -free
            if f | bit not in present:
                return FilterVerdict(False, (f, f | bit))
            free ^= bit
    return FilterVerdict(True, None)


def up_closure(fam: Family) -> Family:
    """The smallest filter containing the family."""
    seen: set[int] = set()
    for m in fam.members:
        for s in iter_supersets(m, fam.ground_size):
            seen.add(s)
    return Family(fam.ground_size, tuple(seen))


def frequency_vector(fam: Family) -> tuple[int, ...]:
    """counts[i - 1] = how many members contain element i."""
    counts = [0] * fam.ground_size
    for m in fam.members:
        while m:
            low = m & -m
            counts[low.bit_length() - 1] += 1
            m ^= low
    return tuple(counts)


def frankl_check(fam: Family) -> FranklVerdict:
    """Does some element lie in at least half the members?

    Reports the most frequent element (smallest on ties). The empty
    family and the one-member family {{}} carry no element at all and
    are outside the property's hypothesis, so they are rejected.
    """
    if not fam.members or fam.members == (0,):
        raise ValueError("family must be nonempty and not the bare {{}}")
    counts = frequency_vector(fam)
    best = max(range(fam.ground_size), key=lambda i: (counts[i], -i))
    count = counts[best]
    return FranklVerdict(2 * count >= len(fam.members), best + 1, count)


def reimer_bound_holds(fam: Family) -> ReimerVerdict:
    """Exact check that the average member size is >= log2(m) / 2.

    With m members of total size T, the bound is equivalent to
    m**m <= 2**(2*T), which is decided in big integers. Floats appear
    only in the reported threshold, never in the verdict.
    """
    m = len(fam.members)
    if m == 0:
        raise ValueError("family must be nonempty")
    total = sum(x.bit_count() for x in fam.members)
    holds = m**m <= 1 << (2 * total)
    return ReimerVerdict(holds, Fraction(total, m), log2(m) / 2)
