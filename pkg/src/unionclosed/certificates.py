"""Interval certificates: a filter image for each member, disjoint cubes.

A certificate pairs every member A of a family with an image F_A so that

  - the pairing covers the family exactly and the images are distinct,
  - A is contained in F_A,
  - the images form a filter,
  - the cube intervals [A, F_A] are pairwise disjoint.

Verification names the first violated clause instead of returning a bare
bool, so broken certificates can be loaded and diagnosed. The searcher
decides existence exhaustively for ground sizes up to DECISION_CAP and
is deterministic: same family in, same certificate out.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .family import (
    MAX_GROUND,
    Family,
    FamilyFormatError,
    ResourceLimitError,
    elements_of,
    format_set,
    full_mask,
    is_filter,
    iter_supersets,
    mask_from_elements,
)

# Exhaustive decision is exponential in the worst case; 12 keeps the
# whole lattice (4096 sets) and the superset cache comfortably small.
DECISION_CAP = 12


@dataclass(frozen=True)
class Certificate:
    """An ordered list of (member, image) mask pairs over one ground set.

    Construction checks only shape (masks inside the ground set) and
    fixes a canonical pair order; the mathematical clauses live in
    verify_certificate so that invalid certificates remain loadable.
    """

    ground_size: int
    pairs: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        n = self.ground_size
        if isinstance(n, bool) or not isinstance(n, int) or not 0 <= n <= MAX_GROUND:
            raise FamilyFormatError(
                f"ground size must be an integer in 0..{MAX_GROUND}, got {n!r}"
            )
        limit = full_mask(n)
        pairs = tuple(sorted((int(a), int(f)) for a, f in self.pairs))
        for a, f in pairs:
            if a < 0 or a & ~limit or f < 0 or f & ~limit:
                raise FamilyFormatError(
                    f"pair ({a:#x}, {f:#x}) does not fit ground size {n}"
                )
        object.__setattr__(self, "pairs", pairs)

    @classmethod
    def from_dict(cls, data: object) -> "Certificate":
        """Parse {"ground": n, "pairs": [{"set": [...], "image": [...]}, ...]}."""
        if not isinstance(data, dict) or set(data) != {"ground", "pairs"}:
            raise FamilyFormatError(
                'certificate data must have exactly the keys "ground" and "pairs"'
            )
        ground = data["ground"]
        raw = data["pairs"]
        if isinstance(ground, bool) or not isinstance(ground, int):
            raise FamilyFormatError('"ground" must be an integer')
        if not isinstance(raw, list):
            raise FamilyFormatError('"pairs" must be a list')
        pairs = []
        for entry in raw:
            if not isinstance(entry, dict) or set(entry) != {"set", "image"}:
                raise FamilyFormatError(
                    'each pair must be an object with exactly the keys "set" and "image"'
                )
            if not isinstance(entry["set"], list) or not isinstance(entry["image"], list):
                raise FamilyFormatError('"set" and "image" must be lists of elements')
            pairs.append(
                (
                    mask_from_elements(entry["set"], ground),
                    mask_from_elements(entry["image"], ground),
                )
            )
        return cls(ground, tuple(pairs))

    def to_dict(self) -> dict:
        return {
            "ground": self.ground_size,
            "pairs": [
                {"set": list(elements_of(a)), "image": list(elements_of(f))}
                for a, f in self.pairs
            ],
        }

    def __len__(self) -> int:
        return len(self.pairs)


class CertificateVerdict(NamedTuple):
    valid: bool
    clause: str | None  # coverage | bijectivity | containment | filter | disjointness
    detail: str | None

    def __bool__(self) -> bool:
        return self.valid


def difference_disjoint(a: int, fa: int, b: int, fb: int) -> bool:
    """Pair compatibility in set-difference form: a - fb or b - fa is nonempty.

    Requires a <= fa and b <= fb as sets. This is the same predicate as
    intervals_disjoint, stated the way the pair checks are cheapest.
    """
    if a & ~fa or b & ~fb:
        raise ValueError("malformed pair: member must be contained in its image")
    return bool(a & ~fb or b & ~fa)


def intervals_disjoint(a: int, fa: int, b: int, fb: int) -> bool:
    """Do the cube intervals [a, fa] and [b, fb] share no set?

    The intervals meet exactly when a <= fb and b <= fa: their common
    region is then the nonempty interval [a | b, fa & fb].
    """
    if a & ~fa or b & ~fb:
        raise ValueError("malformed pair: member must be contained in its image")
    return not (a & ~fb == 0 and b & ~fa == 0)


def verify_certificate(fam: Family, cert: Certificate) -> CertificateVerdict:
    """Check a certificate against a family, clause by clause.

    Clause order: coverage, bijectivity, containment, filter,
    disjointness. The first failure is reported with the offending sets;
    later clauses are not evaluated. Ground sizes must match.
    """
    if fam.ground_size != cert.ground_size:
        raise ValueError(
            f"ground size mismatch: family {fam.ground_size}, certificate {cert.ground_size}"
        )
    if tuple(a for a, _ in cert.pairs) != fam.members:
        return CertificateVerdict(
            False, "coverage", "pair members do not match the family exactly"
        )
    seen: set[int] = set()
    for _, f in cert.pairs:
        if f in seen:
            return CertificateVerdict(
                False, "bijectivity", f"image {format_set(f)} repeated"
            )
        seen.add(f)
    for a, f in cert.pairs:
        if a & ~f:
            return CertificateVerdict(
                False, "containment", f"{format_set(a)} not inside {format_set(f)}"
            )
    images = Family(cert.ground_size, tuple(f for _, f in cert.pairs))
    filt = is_filter(images)
    if not filt:
        member, missing = filt.witness
        return CertificateVerdict(
            False, "filter", f"images lack {format_set(missing)} above {format_set(member)}"
        )
    ps = cert.pairs
    for i in range(len(ps)):
        a, fa = ps[i]
        for j in range(i + 1, len(ps)):
            b, fb = ps[j]
            if (a & ~fb) == 0 and (b & ~fa) == 0:
                return CertificateVerdict(
                    False,
                    "disjointness",
                    f"intervals of {format_set(a)} and {format_set(b)} meet",
                )
    # Disjoint subcubes cannot overfill the ambient cube.
    assert sum(1 << (f.bit_count() - a.bit_count()) for a, f in ps) <= 1 << cert.ground_size
    return CertificateVerdict(True, None, None)


_SUPERSET_LISTS: dict[tuple[int, int], tuple[int, ...]] = {}


def _superset_candidates(mask: int, ground_size: int) -> tuple[int, ...]:
    """Supersets of mask, smallest first (by size, then numeric value)."""
    key = (ground_size, mask)
    got = _SUPERSET_LISTS.get(key)
    if got is None:
        got = tuple(
            sorted(iter_supersets(mask, ground_size), key=lambda s: (s.bit_count(), s))
        )
        _SUPERSET_LISTS[key] = got
    return got


def find_certificate(fam: Family) -> Certificate | None:
    """Exhaustively decide certificate existence, returning one witness.

    Members are processed largest first; candidate images for a member
    run from the member itself upward. A branch dies as soon as a chosen
    image repeats, clashes with an assigned interval, pushes the running
    up-closure of the images past the family size, adds a closure set no
    remaining member fits under, or overfills the interval volume budget
    sum(2**(|F| - |A|)) <= 2**n. All orders are fixed, so the outcome and
    the returned witness are deterministic. None means a proof of
    nonexistence, not a giving-up.
    """
    n = fam.ground_size
    if n > DECISION_CAP:
        raise ResourceLimitError(
            f"certificate decision is exhaustive only up to ground size {DECISION_CAP}"
        )
    members = sorted(fam.members, key=lambda a: (-a.bit_count(), a))
    m = len(members)
    space = 1 << n
    # An image with more than m supersets can never sit inside an m-set
    # filter, so candidates below that size are dead from the start.
    min_size = max(0, n - (m.bit_length() - 1))
    cand: dict[int, tuple[int, ...]] = {}
    for a in members:
        lst = _superset_candidates(a, n)
        start = 0
        while start < len(lst) and lst[start].bit_count() < min_size:
            start += 1
        cand[a] = lst[start:]
    assigned_a: list[int] = []
    assigned_f: list[int] = []
    used: set[int] = set()
    closure: set[int] = set()
    volume = 0

    def extend(k: int) -> bool:
        nonlocal volume
        if k == m:
            return True
        # Feasibility sweep. The final images are exactly the final closure,
        # owned bijectively, so every unused closure set needs a remaining
        # member inside it, and every remaining member that fits under no
        # unused closure set will mint a new closure set; the closure has
        # only m slots.
        remaining = members[k:]
        fits = 0  # bit i set: remaining[i] can take an unused closure set
        for s in closure:
            if s in used:
                continue
            owners = 0
            for bi, b in enumerate(remaining):
                if (b & ~s) == 0:
                    owners |= 1 << bi
            if not owners:
                return False
            fits |= owners
        needed_new = len(remaining) - fits.bit_count()
        if len(closure) + needed_new > m:
            return False
        a = members[k]
        room = space - (len(remaining) - 1)
        clen = len(closure)
        for f in cand[a]:
            if f in used:
                continue
            clash = False
            for idx in range(k):
                if (a & ~assigned_f[idx]) == 0 and (assigned_a[idx] & ~f) == 0:
                    clash = True
                    break
            if clash:
                continue
            vol = 1 << (f.bit_count() - a.bit_count())
            if volume + vol > room:
                # Candidates only grow, so every later image is too big.
                break
            if f in closure:
                # The closure is up-closed, so up(f) is already inside it.
                new_masks: tuple[int, ...] | list[int] = ()
            else:
                if clen >= m:
                    continue
                new_masks = [
                    s for s in _superset_candidates(f, n) if s not in closure
                ]
                if clen + len(new_masks) > m:
                    continue
            assigned_a.append(a)
            assigned_f.append(f)
            used.add(f)
            closure.update(new_masks)
            volume += vol
            if extend(k + 1):
                return True
            volume -= vol
            closure.difference_update(new_masks)
            used.discard(f)
            assigned_f.pop()
            assigned_a.pop()
        return False

    if extend(0):
        # The closure prune bounds |closure| by m and distinct images force
        # |closure| >= m, so the images are exactly their own up-closure.
        assert len(closure) == m
        return Certificate(n, tuple(zip(assigned_a, assigned_f)))
    return None


def reduce_ground_set(fam: Family, cert: Certificate) -> tuple[Family, Certificate]:
    """Strip the elements common to every image and relabel the rest.

    Elements in every image sit inside every interval's top, so deleting
    them from members and images alike (then compacting labels to
    1..n') preserves each certificate clause. Requires a certificate
    that verifies; returns the input unchanged when no element is shared
    by all images.
    """
    if not verify_certificate(fam, cert):
        raise ValueError("certificate must verify before reduction")
    common = full_mask(fam.ground_size)
    for _, f in cert.pairs:
        common &= f
    if common == 0:
        return fam, cert
    keep = [i for i in range(fam.ground_size) if not common >> i & 1]

    def shrink(mask: int) -> int:
        out = 0
        for new_i, old_i in enumerate(keep):
            if mask >> old_i & 1:
                out |= 1 << new_i
        return out

    new_pairs = tuple((shrink(a), shrink(f)) for a, f in cert.pairs)
    new_fam = Family(len(keep), tuple(p[0] for p in new_pairs))
    return new_fam, Certificate(len(keep), new_pairs)
