"""The binary Golay code on the projective line over F_23 and its octads.

Points of Omega are labelled ``inf, 0, 1, ..., 22`` and stored at bit
positions ``0, 1, ..., 23`` of a 24-bit integer, so a codeword (or any subset
of Omega) is a plain ``int`` and symmetric difference is ``^``.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .report import Report

log = logging.getLogger(__name__)

N = 24
INF = "inf"
LABELS: tuple[str, ...] = (INF,) + tuple(str(i) for i in range(23))
FULL = (1 << N) - 1


class GolayError(ValueError):
    pass


def position(label) -> int:
    """Bit position of a point label (``"inf"``/``"∞"`` or ``0..22``)."""
    if label in (INF, "∞", "oo"):
        return 0
    i = int(label)
    if not 0 <= i <= 22:
        raise GolayError(f"label {label!r} is not a point of P^1(F_23)")
    return i + 1


def label(pos: int) -> str:
    return LABELS[pos]


def subset(labels) -> int:
    """Bit set of a collection of point labels."""
    mask = 0
    for x in labels:
        mask |= 1 << position(x)
    return mask


def members(mask: int) -> list[int]:
    return [i for i in range(N) if mask >> i & 1]


def labels_of(mask: int) -> list[str]:
    return [LABELS[i] for i in members(mask)]


def weight(mask: int) -> int:
    return bin(mask).count("1")


# Todd's table as quoted for K = {inf,0,1,2,3,5,14,17}.  L9 and L10 are
# printed identically in the source list.
TODD_K = (INF, 0, 1, 2, 3, 5, 14, 17)
TODD_E = (
    (INF, 0, 1, 2, 4, 13, 16, 22), (INF, 0, 1, 2, 6, 7, 19, 21),
    (INF, 0, 1, 2, 8, 11, 12, 18), (INF, 0, 1, 2, 9, 10, 15, 20),
    (INF, 0, 1, 3, 4, 11, 19, 20), (INF, 0, 1, 3, 6, 8, 10, 13),
    (INF, 0, 1, 3, 7, 9, 16, 18), (INF, 0, 1, 3, 12, 15, 21, 22),
    (INF, 0, 1, 4, 5, 7, 8, 15), (INF, 0, 1, 4, 6, 9, 12, 17),
    (INF, 0, 1, 4, 10, 14, 18, 21), (INF, 0, 1, 5, 6, 18, 20, 22),
    (INF, 0, 1, 5, 9, 11, 13, 21), (INF, 0, 1, 5, 10, 12, 16, 19),
    (INF, 0, 1, 6, 11, 14, 15, 16), (INF, 0, 1, 7, 10, 11, 17, 22),
    (INF, 0, 1, 7, 12, 13, 14, 20), (INF, 0, 1, 8, 9, 14, 19, 22),
    (INF, 0, 1, 8, 16, 17, 20, 21), (INF, 0, 1, 13, 15, 17, 18, 19),
)
TODD_L = (
    (INF, 0, 4, 6, 8, 16, 18, 19), (INF, 0, 4, 6, 13, 15, 20, 21),
    (INF, 0, 4, 7, 9, 10, 13, 19), (INF, 0, 4, 7, 11, 12, 16, 21),
    (INF, 0, 4, 8, 10, 12, 20, 22), (INF, 0, 4, 9, 11, 15, 18, 22),
    (INF, 0, 6, 7, 8, 9, 11, 20), (INF, 0, 6, 7, 10, 12, 15, 18),
    (INF, 0, 6, 9, 10, 16, 21, 22), (INF, 0, 6, 9, 10, 16, 21, 22),
    (INF, 0, 7, 8, 13, 18, 21, 22), (INF, 0, 7, 15, 16, 19, 20, 22),
    (INF, 0, 8, 9, 12, 13, 15, 16), (INF, 0, 8, 10, 11, 15, 19, 21),
    (INF, 0, 9, 12, 18, 19, 20, 21), (INF, 0, 10, 11, 13, 16, 18, 20),
)


def listed_sets() -> dict[str, int]:
    """Named bit sets: ``K``, ``E1..E20``, ``L1..L16`` (duplicates kept)."""
    out = {"K": subset(TODD_K)}
    out.update({f"E{i}": subset(s) for i, s in enumerate(TODD_E, 1)})
    out.update({f"L{i}": subset(s) for i, s in enumerate(TODD_L, 1)})
    return out


def reduce_gf2(basis: list[int], w: int) -> int:
    for b in basis:
        w = min(w, w ^ b)
    return w


def gf2_basis(words) -> list[int]:
    """Echelon basis over GF(2); each row has a distinct leading bit."""
    basis: list[int] = []
    for w in words:
        w = reduce_gf2(basis, w)
        if w:
            basis.append(w)
            basis.sort(reverse=True)
    return basis


def span(basis: list[int]) -> list[int]:
    words = [0]
    for b in basis:
        words += [w ^ b for w in words]
    return sorted(words)


@dataclass(frozen=True)
class GolayCode:
    basis: tuple[int, ...]
    words: tuple[int, ...] = field(repr=False)
    octads: tuple[int, ...] = field(repr=False)
    construction: str = "quadratic-residue"

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def __contains__(self, w: int) -> bool:
        return reduce_gf2(list(self.basis), w) == 0

    def weight_distribution(self) -> dict[int, int]:
        dist: dict[int, int] = {}
        for w in self.words:
            k = weight(w)
            dist[k] = dist.get(k, 0) + 1
        return dict(sorted(dist.items()))

    def minimum_weight(self) -> int:
        return min(weight(w) for w in self.words if w)

    def octads_containing(self, points: int) -> list[int]:
        return [o for o in self.octads if o & points == points]

    def octad_index(self) -> dict[int, int]:
        """Map each 5-subset (bit set) to the octad containing it."""
        idx = self.__dict__.get("_five_index")
        if idx is None:
            idx = {}
            for o in self.octads:
                for five in combinations(members(o), 5):
                    idx[sum(1 << i for i in five)] = o
            object.__setattr__(self, "_five_index", idx)
        return idx


def _from_basis(basis: list[int], construction: str) -> GolayCode:
    words = span(basis)
    octads = sorted((w for w in words if weight(w) == 8), key=members)
    return GolayCode(tuple(basis), tuple(words), tuple(octads), construction)


def quadratic_residue_generators() -> list[int]:
    """Translates of {0} ∪ Q mod 23 together with the all-ones word."""
    residues = sorted({i * i % 23 for i in range(1, 23)})
    base = [0] + residues
    gens = [sum(1 << position((x + s) % 23) for x in base) for s in range(23)]
    gens.append(FULL)
    return gens


def _labelling_ok(code: GolayCode) -> bool:
    octads = set(code.octads)
    return all(s in octads for s in listed_sets().values())


def build_code() -> GolayCode:
    """Extended QR code of length 24 in the labelling used by Todd's table.

    Falls back to the span of the 36 listed octads (completed greedily with
    weight-8 words if needed) when the QR code misses any of them.
    """
    code = _from_basis(gf2_basis(quadratic_residue_generators()), "quadratic-residue")
    if len(code.basis) == 12 and _labelling_ok(code):
        log.debug("Golay code built from quadratic residues mod 23")
        return code
    log.warning("QR construction disagrees with the listed octads, using fallback")
    return _fallback_code()


def _fallback_code() -> GolayCode:
    basis = gf2_basis(listed_sets().values())
    if len(basis) < 12:
        for eight in combinations(range(N), 8):
            w = sum(1 << i for i in eight)
            trial = gf2_basis(basis + [w])
            if len(trial) == len(basis):
                continue
            cand = _from_basis(trial, "fallback")
            if cand.minimum_weight() >= 8 and all(weight(x) % 4 == 0 for x in cand.words):
                basis = trial
                if len(basis) == 12:
                    break
    code = _from_basis(basis, "fallback")
    if code.dimension != 12 or code.minimum_weight() != 8:
        raise GolayError("could not build a Golay code in the listed labelling")
    return code


def find_octad(code: GolayCode, five: int) -> int:
    """The unique octad containing the 5-element set ``five``."""
    if weight(five) != 5 or five >> N:
        raise GolayError(f"expected a 5-subset of Omega, got {labels_of(five)}")
    return code.octad_index()[five]


def steiner_coverage(octads) -> dict[int, int]:
    """How many of ``octads`` contain each 5-subset (only covered ones listed)."""
    cover: dict[int, int] = {}
    for o in octads:
        for five in combinations(members(o), 5):
            key = sum(1 << i for i in five)
            cover[key] = cover.get(key, 0) + 1
    return cover


def verify_steiner(octads) -> Report:
    """Every 5-subset of Omega lies in exactly one octad."""
    octads = list(octads)
    cover = steiner_coverage(octads)
    total = comb(N, 5)
    uncovered = total - len(cover)
    multiple = sum(1 for c in cover.values() if c > 1)
    rep = Report("golay.steiner", uncovered == 0 and multiple == 0)
    rep.details.update(octads=len(octads), five_subsets=total, covered=len(cover),
                       uncovered=uncovered, multiply_covered=multiple)
    if uncovered:
        rep.failures.append(f"{uncovered} five-subsets lie in no octad")
    if multiple:
        rep.failures.append(f"{multiple} five-subsets lie in more than one octad")
    return rep


def verify_code(code: GolayCode) -> Report:
    dist = code.weight_distribution()
    rep = Report("golay.code", True)
    rep.details.update(dimension=code.dimension, minimum_weight=code.minimum_weight(),
                       weight_distribution=dist, octads=len(code.octads),
                       construction=code.construction)
    expected = {0: 1, 8: 759, 12: 2576, 16: 759, 24: 1}
    if code.dimension != 12:
        rep.fail(f"dimension {code.dimension} != 12")
    if dist != expected:
        rep.fail(f"weight distribution {dist} != {expected}")
    words = set(code.words)
    if not all(w ^ b in words for b in code.basis for w in words):
        rep.fail("not closed under symmetric difference")
    return rep


def verify_listed_octads(code: GolayCode) -> Report:
    """Check K, E1..E20, L1..L16 against the code; duplicates become warnings."""
    octads = set(code.octads)
    sets = listed_sets()
    rep = Report("golay.listed_octads", True)
    missing = [name for name, s in sets.items() if s not in octads]
    for name in missing:
        rep.fail(f"{name} = {labels_of(sets[name])} is not an octad")
    seen: dict[int, str] = {}
    duplicates = []
    for name, s in sets.items():
        if s in seen:
            duplicates.append((seen[s], name))
            rep.warn(f"{name} repeats {seen[s]} = {labels_of(s)}")
        else:
            seen[s] = name
    rep.details.update(listed=len(sets), distinct=len(seen), duplicates=duplicates,
                       missing=missing)
    return rep


def octads_to_json(code: GolayCode) -> str:
    return json.dumps([labels_of(o) for o in code.octads])


def octads_from_json(text: str) -> list[int]:
    return [subset(o) for o in json.loads(text)]
