"""Block-constrained base points and prescribed-return-time insertions.

The base family F_p consists of sequences that open with p zeros and then
run in blocks of length p whose first and last symbols are 1; the p-2
interior symbols of each block are unconstrained.  Distinct interior
choices give distinct points, which is what makes the family a positive-
dimension Cantor set inside the full shift.

On top of a base point, an InsertionPlan places marker words: term k
contributes w_k = 1 . (prefix of length n_k) . (next symbol + 1 mod m) . 1
at position ell_k.  Because the plan keeps ell_{k+1} >= ell_k + n_k + 3,
an inserted word occupies [ell_k, ell_k + n_k + 2] in the final sequence
and is never displaced by later insertions, so the whole limit object is
a base stream plus a sorted event table — exactly a LazySequence.

The payoff: for bracket indices i past a small threshold, the first
return time of the length-n prefix equals ell_{i+1} for every n with
n_i < n <= n_{i+1}.  predicted_return_time exposes that dictionary.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import PlanValidityError, SourceExhaustedError
from .shift_core import (BASE_DECODERS, DEFAULT_MATERIALIZATION_CAP, Alphabet,
                         LazySequence, SymbolSource, Word)


# --------------------------------------------------------------------------
# free-symbol streams
# --------------------------------------------------------------------------

class FreeStream:
    """Supplies the unconstrained interior symbols, by 1-based ordinal."""

    def symbol(self, ordinal: int) -> int:
        raise NotImplementedError

    def descriptor(self) -> dict:
        raise NotImplementedError


class ZeroFree(FreeStream):
    def symbol(self, ordinal: int) -> int:
        return 0

    def descriptor(self) -> dict:
        return {"kind": "zero"}


class SeededFree(FreeStream):
    """Deterministic stream drawn once from random.Random(seed).

    The cache only ever grows, and always by appending from the same
    generator state, so any access order yields the same symbols.
    """

    def __init__(self, seed: int, m: int):
        self.seed = seed
        self.m = m
        self._rng = random.Random(seed)
        self._cache: list[int] = []

    def symbol(self, ordinal: int) -> int:
        while len(self._cache) < ordinal:
            self._cache.append(self._rng.randrange(self.m))
        return self._cache[ordinal - 1]

    def descriptor(self) -> dict:
        return {"kind": "seeded", "seed": self.seed, "m": self.m}


class ExplicitFree(FreeStream):
    def __init__(self, symbols: Sequence[int]):
        self.symbols = tuple(symbols)

    def symbol(self, ordinal: int) -> int:
        if ordinal > len(self.symbols):
            raise SourceExhaustedError(
                f"free stream of length {len(self.symbols)} read at {ordinal}")
        return self.symbols[ordinal - 1]

    def descriptor(self) -> dict:
        return {"kind": "explicit",
                "symbols": "".join(str(s) for s in self.symbols)}


def _decode_free(desc: dict) -> FreeStream:
    kind = desc.get("kind")
    if kind == "zero":
        return ZeroFree()
    if kind == "seeded":
        return SeededFree(desc["seed"], desc["m"])
    if kind == "explicit":
        return ExplicitFree(tuple(int(ch) for ch in desc["symbols"]))
    raise ValueError(f"unknown free-stream kind {kind!r}")


# --------------------------------------------------------------------------
# the base family
# --------------------------------------------------------------------------

class FpBase(SymbolSource):
    """x_j = 0 for j <= p; blocks [pk+1, pk+p] start and end with 1."""

    def __init__(self, p: int, m: int, free: Optional[FreeStream] = None):
        if p < 2:
            raise ValueError("block length p must be at least 2")
        self.p = p
        self._alphabet = Alphabet(m)
        self.free = free if free is not None else ZeroFree()

    @property
    def alphabet(self) -> Alphabet:
        return self._alphabet

    @property
    def length(self) -> Optional[int]:
        return None

    def symbol_at(self, j: int) -> int:
        if j < 1:
            raise IndexError("positions start at 1")
        p = self.p
        if j <= p:
            return 0
        r = j % p
        if r in (0, 1):
            return 1
        # interior slot: block k = (j-1)//p >= 1, offset r-1 in 1..p-2
        k = (j - 1) // p
        s = self.free.symbol((k - 1) * (p - 2) + (r - 1))
        if not self._alphabet.contains(s):
            raise ValueError(f"free stream produced symbol {s} outside alphabet")
        return s

    def descriptor(self) -> dict:
        return {"kind": "fp", "p": self.p, "m": self._alphabet.m,
                "free": self.free.descriptor()}


BASE_DECODERS["fp"] = lambda desc: FpBase(desc["p"], desc["m"],
                                          _decode_free(desc["free"]))


def build_fp_prefix(p: int, m: int, n: int,
                    free: Optional[FreeStream] = None) -> Word:
    base = FpBase(p, m, free)
    return Word(tuple(base.symbol_at(j) for j in range(1, n + 1)),
                base.alphabet)


def fp_membership(word: Word, p: int) -> bool:
    """Does the word satisfy every F_p constraint it is long enough to see?"""
    for j in range(1, len(word) + 1):
        s = word.at(j)
        if j <= p:
            if s != 0:
                return False
        elif j % p in (0, 1):
            if s != 1:
                return False
    return True


def fp_cylinder_count(p: int, n: int, m: int) -> int:
    """Number of depth-n cylinders meeting the family: m^(#free slots <= n)."""
    free_slots = sum(1 for j in range(p + 1, n + 1) if j % p not in (0, 1))
    return m ** free_slots


# --------------------------------------------------------------------------
# insertion plans
# --------------------------------------------------------------------------

def make_insertion_word(prefix: Word, next_symbol: int) -> Word:
    """1 . prefix . (next_symbol + 1 mod m) . 1 — the marker for one term."""
    m = prefix.alphabet.m
    return Word((1,) + prefix.symbols + ((next_symbol + 1) % m, 1),
                prefix.alphabet)


@dataclass(frozen=True)
class InsertionPlan:
    """Ordered (n_i, ell_i) pairs over a p-block base on m symbols."""

    p: int
    m: int
    terms: tuple[tuple[int, int], ...]
    case_tag: str = ""

    def __post_init__(self):
        if self.p < 2 or self.m < 2:
            raise PlanValidityError("need p >= 2 and m >= 2")
        for n, ell in self.terms:
            if n < 1 or ell < 1:
                raise PlanValidityError("term entries must be positive")

    @property
    def ns(self) -> tuple[int, ...]:
        return tuple(n for n, _ in self.terms)

    @property
    def ells(self) -> tuple[int, ...]:
        return tuple(ell for _, ell in self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    # -- serialization; ell values grow far past 2^53, so they travel
    #    as decimal strings rather than JSON numbers
    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "m": self.m,
            "case_tag": self.case_tag,
            "terms": [{"i": i + 1, "n": n, "ell": str(ell)}
                      for i, (n, ell) in enumerate(self.terms)],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, data: dict) -> "InsertionPlan":
        terms = tuple((int(t["n"]), int(t["ell"])) for t in data["terms"])
        return cls(p=data["p"], m=data["m"], terms=terms,
                   case_tag=data.get("case_tag", ""))

    @classmethod
    def from_json(cls, text: str) -> "InsertionPlan":
        return cls.from_json_dict(json.loads(text))


def check_plan_conditions(plan: InsertionPlan, eps: float = 0.5,
                          tail_fraction: float = 1 / 3) -> None:
    """Validate the two structural conditions a usable plan must satisfy.

    (i)  ell_{i+1} >= ell_i + n_i + 3 for every consecutive pair (exact),
         with the n_i strictly increasing;
    (ii) i*(n_i+3)/ell_i tends to 0 — finitely checkable only as: the
         final value is below eps, and the maximum over the trailing
         tail_fraction of the terms does not exceed the maximum over the
         earlier terms (the ratio may oscillate when the position
         exponent does, but its envelope must not grow).

    Raises PlanValidityError with the first offending index.
    """
    terms = plan.terms
    if len(terms) < 2:
        raise PlanValidityError("a plan needs at least two terms")
    for i in range(len(terms) - 1):
        n_i, ell_i = terms[i]
        n_next, ell_next = terms[i + 1]
        if n_next <= n_i:
            raise PlanValidityError(
                f"prefix lengths must increase: n_{i + 1}={n_i}, n_{i + 2}={n_next}")
        if ell_next < ell_i + n_i + 3:
            raise PlanValidityError(
                f"gap condition fails at i={i + 1}: "
                f"ell={ell_next} < {ell_i} + {n_i} + 3")
    ratios = [(i + 1) * (n + 3) / ell for i, (n, ell) in enumerate(terms)]
    if ratios[-1] >= eps:
        raise PlanValidityError(
            f"vanishing-overhead condition fails: final ratio "
            f"{ratios[-1]:.4g} >= {eps}")
    tail = max(2, int(len(ratios) * tail_fraction))
    if len(ratios) > tail:
        tail_max = max(ratios[-tail:])
        head_max = max(ratios[:-tail])
        if tail_max > head_max * (1 + 1e-12):
            raise PlanValidityError(
                f"vanishing-overhead condition fails: trailing envelope "
                f"{tail_max:.4g} exceeds the earlier envelope {head_max:.4g}")


def first_inserted_index(plan: InsertionPlan) -> Optional[int]:
    """1-based index of the first term actually inserted (ell - 1 > p)."""
    for i, (_, ell) in enumerate(plan.terms):
        if ell - 1 > plan.p:
            return i + 1
    return None


def first_certified_index(plan: InsertionPlan) -> Optional[int]:
    """1-based least i with n_i > p and ell_i - 1 > p.

    From this index on, the return-time dictionary below is exact.
    """
    for i, (n, ell) in enumerate(plan.terms):
        if n > plan.p and ell - 1 > plan.p:
            return i + 1
    return None


def certified_brackets(plan: InsertionPlan) -> list[tuple[int, int, int]]:
    """(n_i, n_{i+1}, ell_{i+1}) triples where R_n = ell_{i+1} is guaranteed
    for all n_i < n <= n_{i+1}."""
    i_min = first_certified_index(plan)
    if i_min is None:
        return []
    out = []
    for i in range(i_min - 1, len(plan.terms) - 1):
        n_lo = plan.terms[i][0]
        n_hi, ell_next = plan.terms[i + 1]
        out.append((n_lo, n_hi, ell_next))
    return out


def predicted_return_time(plan: InsertionPlan, n: int) -> Optional[int]:
    """R_n of the constructed point, or None when n is outside the
    certified brackets."""
    for n_lo, n_hi, ell in certified_brackets(plan):
        if n_lo < n <= n_hi:
            return ell
    return None


def apply_insertions(plan: InsertionPlan,
                     free: Optional[FreeStream] = None,
                     cap: int = DEFAULT_MATERIALIZATION_CAP) -> LazySequence:
    """Run the iterative construction and return the limit sequence.

    Terms whose position would fall inside the constrained opening
    (ell - 1 <= p) are skipped; the construction proper starts at the
    first index past that, and each marker word is read off the sequence
    built so far, so earlier insertions feed later markers.
    """
    base = FpBase(plan.p, plan.m, free)
    events: list[tuple[int, Word]] = []
    seq = LazySequence(base, (), cap=cap)
    for n_k, ell_k in plan.terms:
        if ell_k - 1 <= plan.p:
            continue
        pref = seq.prefix(n_k + 1)
        w = make_insertion_word(pref.sub(1, n_k), pref.at(n_k + 1))
        events.append((ell_k, w))
        seq = LazySequence(base, tuple(events), cap=cap)
    return seq


def materializable_term_count(plan: InsertionPlan, cap: int) -> int:
    """How many leading terms fit under the materialization cap.

    A term is usable when its marker region [ell, ell + n + 2] and the
    prefix needed to build the marker both sit below the cap.
    """
    t = 0
    for n, ell in plan.terms:
        if ell + n + 2 > cap or n + 1 > cap:
            break
        t += 1
    return t


def truncate_plan(plan: InsertionPlan, count: int) -> InsertionPlan:
    return InsertionPlan(p=plan.p, m=plan.m, terms=plan.terms[:count],
                         case_tag=plan.case_tag)


def remove_insertions(prefix: Word, plan: InsertionPlan) -> Word:
    """Strip marker regions from a prefix of the constructed sequence,
    recovering the corresponding base prefix (partial markers at the end
    are dropped as far as they reach)."""
    keep: list[int] = []
    pos = 1
    terms = [(n, ell) for n, ell in plan.terms if ell - 1 > plan.p]
    ti = 0
    for s in prefix.symbols:
        if ti < len(terms):
            n, ell = terms[ti]
            if ell <= pos <= ell + n + 2:
                pos += 1
                if pos > ell + n + 2:
                    ti += 1
                continue
        keep.append(s)
        pos += 1
    return Word(tuple(keep), prefix.alphabet)
