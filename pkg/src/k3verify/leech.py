"""The Leech lattice in raw integer coordinates.

A vector is a length-24 integer sequence indexed like :mod:`k3verify.golay`
(position 0 is the point at infinity).  The lattice pairing is
``<x, y> = -(x . y) / 8``, so minimal vectors have raw norm 32 and pairing
norm -4.  Raw coordinates are kept throughout so every value stays an exact
integer.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import struct
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations, product
from pathlib import Path
from typing import Sequence

import numpy as np

from . import golay
from .lattice import Lattice, determinant, echelon_solve, hermite_normal_form
from .report import Report

log = logging.getLogger(__name__)

DIM = 24
KISSING = 196560


class LeechError(ValueError):
    pass


def nu(labels) -> list[int]:
    """Indicator vector of a set of point labels."""
    v = [0] * DIM
    for x in labels:
        v[golay.position(x)] += 1
    return v


def unit(label) -> list[int]:
    return nu([label])


NU_OMEGA = [1] * DIM


def inner(x: Sequence[int], y: Sequence[int]) -> int:
    """``-(x . y) / 8``; raises if the raw product is not divisible by 8."""
    d = sum(int(a) * int(b) for a, b in zip(x, y))
    if d % 8:
        raise LeechError(f"raw product {d} is not divisible by 8; operand is not in the lattice")
    return -d // 8


def norm(x: Sequence[int]) -> int:
    return inner(x, x)


@dataclass(frozen=True)
class LeechBasis:
    """HNF basis of the Leech lattice (rows, raw coordinates)."""

    rows: tuple[tuple[int, ...], ...]
    _arr: np.ndarray = field(repr=False, compare=False)

    @classmethod
    def from_rows(cls, rows) -> "LeechBasis":
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        return cls(rows, np.array(rows, dtype=np.int64))

    def gram(self) -> list[list[int]]:
        return [[inner(a, b) for b in self.rows] for a in self.rows]

    def lattice(self) -> Lattice:
        return Lattice.from_rows(self.rows, self.gram())

    def digest(self) -> str:
        return hashlib.sha256(json.dumps(self.rows).encode()).hexdigest()


def generators(code: golay.GolayCode) -> list[list[int]]:
    """``nu_Omega - 4 nu_inf`` and ``2 nu_K`` for every octad ``K``."""
    first = [a - 4 * b for a, b in zip(NU_OMEGA, unit(golay.INF))]
    return [first] + [[2 * (o >> i & 1) for i in range(DIM)] for o in code.octads]


def build_basis(code: golay.GolayCode) -> LeechBasis:
    rows = hermite_normal_form(generators(code))
    if len(rows) != DIM:
        raise LeechError(f"generators span a rank-{len(rows)} lattice; the code is broken")
    basis = LeechBasis.from_rows(rows)
    d = determinant(basis.gram())
    if d != 1:
        log.warning("Leech Gram determinant is %d, expected 1", d)
    return basis


def contains(b: LeechBasis, v: Sequence[int]) -> bool:
    """Exact membership by integer back-substitution against the HNF rows."""
    return echelon_solve(b.rows, [int(x) for x in v]) is not None


def contains_many(b: LeechBasis, V) -> np.ndarray:
    """Vectorised :func:`contains` over the rows of ``V``.

    Same back-substitution as the scalar version, applied column by column
    to every candidate at once; candidates drop out as soon as a pivot fails.
    """
    W = np.array(V, dtype=np.int64, copy=True)
    if W.ndim == 1:
        W = W[None, :]
    total = len(W)
    alive = np.arange(total)
    for row in b._arr:
        j = int(np.flatnonzero(row)[0])
        q, rem = np.divmod(W[:, j], row[j])
        keep = rem == 0
        if not keep.all():
            W, q, alive = W[keep], q[keep], alive[keep]
        W[:, j:] -= q[:, None] * row[None, j:]
    alive = alive[~W.any(axis=1)]
    ok = np.zeros(total, dtype=bool)
    ok[alive] = True
    return ok


def dual_contains_many(b: LeechBasis, V) -> np.ndarray:
    """Membership via self-duality: ``v`` is in the lattice iff ``v . b = 0 mod 8``
    for every basis row.  Valid only because the lattice is unimodular, which
    :func:`verify_basis` checks separately.
    """
    W = np.asarray(V, dtype=np.int64)
    if W.ndim == 1:
        W = W[None, :]
    return ~((W @ b._arr.T) % 8).any(axis=1)


# ---------------------------------------------------------------------------
# Minimal vectors
# ---------------------------------------------------------------------------

SHAPE_44 = "(±4^2, 0^22)"
SHAPE_28 = "(±2^8, 0^16)"
SHAPE_31 = "(∓3, ±1^23)"
SHAPE_42 = "(±4, ±2^4, 0^19)"


def _candidates_44() -> np.ndarray:
    out = []
    for i, j in combinations(range(DIM), 2):
        for si, sj in product((4, -4), repeat=2):
            v = [0] * DIM
            v[i], v[j] = si, sj
            out.append(v)
    return np.array(out, dtype=np.int64)


def _candidates_28(code: golay.GolayCode) -> np.ndarray:
    even_signs = [s for s in product((1, -1), repeat=8) if s.count(-1) % 2 == 0]
    signs = np.array(even_signs, dtype=np.int64)
    out = np.zeros((len(code.octads) * len(signs), DIM), dtype=np.int64)
    for k, o in enumerate(code.octads):
        pos = golay.members(o)
        out[k * len(signs):(k + 1) * len(signs), pos] = 2 * signs
    return out


def _candidates_31(code: golay.GolayCode) -> np.ndarray:
    words = np.array([[w >> i & 1 for i in range(DIM)] for w in code.words], dtype=np.int64)
    flips = 1 - 2 * words
    out = []
    for i in range(DIM):
        base = np.ones(DIM, dtype=np.int64)
        base[i] = -3
        out.append(flips * base[None, :])
    return np.concatenate(out)


def _sorted_unique(V: np.ndarray) -> np.ndarray:
    V = np.unique(V, axis=0)
    return V[np.lexsort(V.T[::-1])]


def minimal_vectors_by_shape(b: LeechBasis, code: golay.GolayCode) -> dict[str, np.ndarray]:
    """Norm -4 vectors split by shape; every candidate is filtered by :func:`contains_many`."""
    out = {}
    for name, cands in ((SHAPE_44, _candidates_44()),
                        (SHAPE_28, _candidates_28(code)),
                        (SHAPE_31, _candidates_31(code))):
        keep = cands[contains_many(b, cands)]
        out[name] = _sorted_unique(keep)
    return out


def minimal_vectors(b: LeechBasis, code: golay.GolayCode, cache_dir=None) -> np.ndarray:
    """All 196 560 vectors of raw norm 32, lexicographically sorted (int64 array)."""
    cache = _cache_path(b, cache_dir)
    if cache is not None and cache.exists():
        V = load_minvecs_bin(cache.read_bytes())
        if _validate_minvecs(b, V):
            log.debug("minimal vectors loaded from %s", cache)
            return V
        log.warning("ignoring invalid minimal-vector cache %s", cache)
    V = _sorted_unique(np.concatenate(list(minimal_vectors_by_shape(b, code).values())))
    if cache is not None:
        cache.parent.mkdir(parents=True, exist_ok=True)
        cache.write_bytes(dump_minvecs_bin(V))
    return V


def _validate_minvecs(b: LeechBasis, V: np.ndarray) -> bool:
    if V.ndim != 2 or V.shape[1] != DIM or len(V) != KISSING:
        return False
    if not (np.einsum("ij,ij->i", V, V) == 32).all():
        return False
    if not contains_many(b, V).all():
        return False
    return len(np.unique(V, axis=0)) == len(V) and bool((_sorted_unique(V) == V).all())


def _cache_path(b: LeechBasis, cache_dir) -> Path | None:
    cache_dir = cache_dir or os.environ.get("K3V_CACHE")
    if not cache_dir:
        return None
    return Path(cache_dir) / f"minvecs-{b.digest()[:16]}.bin"


def dump_minvecs_bin(V: np.ndarray) -> bytes:
    """Little-endian uint32 count, then 24 int16 per vector."""
    V = np.asarray(V)
    return struct.pack("<I", len(V)) + V.astype("<i2").tobytes()


def load_minvecs_bin(data: bytes) -> np.ndarray:
    (count,) = struct.unpack_from("<I", data)
    body = np.frombuffer(data, dtype="<i2", offset=4)
    if body.size != count * DIM:
        raise LeechError(f"cache holds {body.size} values, expected {count * DIM}")
    return body.reshape(count, DIM).astype(np.int64)


def minvecs_to_json(V: np.ndarray) -> str:
    return json.dumps(np.asarray(V).tolist())


# ---------------------------------------------------------------------------
# Exhaustive shell checks
# ---------------------------------------------------------------------------

def same_parity_lemma(b: LeechBasis) -> bool:
    """All coordinates of a member share one parity.

    ``x_i - x_0 = 0 mod 2`` is linear, so checking the basis rows suffices.
    """
    return all(len({x % 2 for x in row}) == 1 for row in b.rows)


def _even_shells_to_16() -> np.ndarray:
    """All nonzero vectors with even entries and raw norm <= 16.

    Entries are 0, ±2 or ±4 (36 > 16 rules out ±6): up to four ±2's, or a
    single ±4.
    """
    out = []
    for k in range(1, 5):
        for pos in combinations(range(DIM), k):
            for signs in product((2, -2), repeat=k):
                v = [0] * DIM
                for p, x in zip(pos, signs):
                    v[p] = x
                out.append(v)
    for p in range(DIM):
        for x in (4, -4):
            v = [0] * DIM
            v[p] = x
            out.append(v)
    return np.array(out, dtype=np.int64)


def short_vector_census(b: LeechBasis) -> dict[int, int]:
    """Count members of raw norm 4..16 by exhaustive search.

    With all coordinates of one parity, an odd vector has raw norm >= 24, so
    only even-entry vectors can be this short.
    """
    if not same_parity_lemma(b):
        raise LeechError("basis violates the common-parity property")
    V = _even_shells_to_16()
    members = V[contains_many(b, V)]
    norms = Counter(int(n) for n in np.einsum("ij,ij->i", members, members))
    return {n: norms.get(n, 0) for n in (4, 8, 12, 16)} | {"candidates": len(V)}


def _support_vectors(supports: np.ndarray, value: int) -> np.ndarray:
    S = np.zeros((len(supports), DIM), dtype=np.int64)
    S[np.arange(len(supports))[:, None], supports] = value
    return S


def minimal_shell_census(b: LeechBasis) -> dict[str, int]:
    """Count every member of raw norm 32 over all possible shapes.

    Raw norm 32 with a common coordinate parity leaves four shapes.  Sign
    patterns are collapsed using vectors verified to lie in the lattice:
    ``8 e_i`` and ``4 (e_i ± e_j)`` make membership depend only on the parity
    of the number of sign flips (even shapes), and ``nu_Omega - 4 nu_i`` turns
    an odd vector into ``2 nu_F`` for its flip set ``F``.
    """
    if not same_parity_lemma(b):
        raise LeechError("basis violates the common-parity property")
    eye = np.eye(DIM, dtype=np.int64)
    pairs = [(i, j) for i, j in combinations(range(DIM), 2)]
    helpers = np.concatenate([8 * eye]
                             + [4 * (eye[[i for i, _ in pairs]] + s * eye[[j for _, j in pairs]])
                                for s in (1, -1)]
                             + [1 - 4 * eye])
    if not contains_many(b, helpers).all():
        raise LeechError("reduction vectors are not lattice members")

    census = {}
    census[SHAPE_44] = int(contains_many(b, _candidates_44()).sum())

    # (±2^8): 128 sign patterns per flip parity, two representatives per support
    supports = np.array(list(combinations(range(DIM), 8)), dtype=np.int64)
    S = _support_vectors(supports, 2)
    S_odd = S.copy()
    S_odd[np.arange(len(S)), supports[:, 0]] -= 4
    census[SHAPE_28] = 128 * int(contains_many(b, S).sum() + contains_many(b, S_odd).sum())

    # (±4, ±2^4): 32 sign patterns = 2 (sign of the 4) x 2 parities x 8
    total = 0
    for a in range(DIM):
        rest = [i for i in range(DIM) if i != a]
        quads = np.array(list(combinations(rest, 4)), dtype=np.int64)
        Q = _support_vectors(quads, 2)
        Q[:, a] = 4
        Q_odd = Q.copy()
        Q_odd[np.arange(len(Q)), quads[:, 0]] -= 4
        total += 16 * int(contains_many(b, Q).sum() + contains_many(b, Q_odd).sum())
    census[SHAPE_42] = total

    # (∓3, ±1^23): 24 positions times #{F : 2 nu_F in the lattice}
    census[SHAPE_31] = DIM * _count_double_indicators(b)
    census["total"] = sum(census.values())
    return census


def _count_double_indicators(b: LeechBasis) -> int:
    """#{F ⊆ Omega : 2 nu_F in the lattice}, by meet in the middle on syndromes.

    ``2 nu_F`` is a member iff ``sum_{j in F} B[:, j] = 0 mod 4`` (dual test).
    """
    cols = (b._arr.T % 4).astype(np.int64)
    half = DIM // 2

    def syndromes(idx):
        sub = cols[idx]
        masks = np.arange(1 << len(idx))
        bits = (masks[:, None] >> np.arange(len(idx))[None, :]) & 1
        return (bits @ sub) % 4

    left = syndromes(list(range(half)))
    right = (-syndromes(list(range(half, DIM)))) % 4
    weights = 4 ** np.arange(DIM, dtype=np.int64)
    lk = Counter((left @ weights).tolist())
    rk = Counter((right @ weights).tolist())
    return sum(c * rk.get(k, 0) for k, c in lk.items())


def verify_basis(b: LeechBasis, code: golay.GolayCode) -> Report:
    rep = Report("leech.basis", True)
    gram = b.gram()
    det_gram = determinant(gram)
    det_raw = determinant([list(r) for r in b.rows])
    gens = generators(code)
    missing = [k for k, g in enumerate(gens) if not contains(b, g)]
    odd_norms = [k for k, g in enumerate(gram) if g[k] % 2]
    rep.details.update(rank=len(b.rows), gram_determinant=det_gram,
                       raw_determinant=abs(det_raw), generators=len(gens),
                       generators_missing=len(missing))
    if det_gram != 1:
        rep.fail(f"Gram determinant {det_gram} != 1")
    if abs(det_raw) != 8 ** 12:
        rep.fail(f"|det| of raw basis {abs(det_raw)} != 8^12")
    if missing:
        rep.fail(f"{len(missing)} generators outside the row span")
    if odd_norms:
        rep.fail(f"basis vectors {odd_norms} have odd norm")
    return rep
