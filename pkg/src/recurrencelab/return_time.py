"""First return times of prefixes under the shift map.

For a word w (or a long prefix of an infinite sequence), the return time of
its length-n prefix is the least j >= 1 such that w[j+1 .. j+n] equals
w[1 .. n].  The primed variant restricts to j >= n (no self-overlap).

From a word of length L only returns with j + n <= L are observable.  When
no return fits, the result is a certified lower bound rather than a value:
every j with j + n <= L has been ruled out, so R_n > L - n.

The batch computation runs a single Z-array pass: z[i] = length of the
longest common prefix of w and w[i:].  R_n <= j iff some i in [1, j] has
z[i] >= n, so bucketing the minimal i per z-value and sweeping a suffix
minimum answers all n at once in O(L).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .shift_core import Word


@dataclass(frozen=True)
class ReturnTimeResult:
    """Either an exact return time or a certified lower bound.

    exact=True: value is R_n itself.
    exact=False: every candidate up to and including `value` was excluded,
    i.e. R_n > value.  (value = L - n for a length-L observation window.)
    """

    n: int
    value: int
    exact: bool
    prime: bool = False

    def __str__(self) -> str:
        name = "R'" if self.prime else "R"
        rel = "=" if self.exact else ">"
        return f"{name}_{self.n} {rel} {self.value}"


def _symbols(w: Union[Word, Sequence[int]]) -> tuple[int, ...]:
    return w.symbols if isinstance(w, Word) else tuple(w)


def return_time_naive(w: Union[Word, Sequence[int]], n: int,
                      prime: bool = False) -> ReturnTimeResult:
    """Direct scan for the first reoccurrence of the length-n prefix.

    Hands the search to str.find for alphabets that fit in digits,
    which is dramatically faster than a Python loop; otherwise falls
    back to tuple scanning.
    """
    syms = _symbols(w)
    L = len(syms)
    if not 1 <= n <= L:
        raise ValueError(f"need 1 <= n <= {L}, got n={n}")
    start = n if prime else 1
    if max(syms[:n], default=0) < 10 and max(syms, default=0) < 10:
        text = "".join(map(str, syms))
        hit = text.find(text[:n], start)
        if hit != -1:
            return ReturnTimeResult(n, hit, True, prime)
        return ReturnTimeResult(n, max(L - n, start - 1), False, prime)
    pat = syms[:n]
    for j in range(start, L - n + 1):
        if syms[j:j + n] == pat:
            return ReturnTimeResult(n, j, True, prime)
    return ReturnTimeResult(n, max(L - n, start - 1), False, prime)


def z_array(syms: Sequence[int]) -> list[int]:
    """z[i] = longest common prefix of syms and syms[i:]; z[0] = len."""
    L = len(syms)
    z = [0] * L
    if L == 0:
        return z
    z[0] = L
    lo = hi = 0
    for i in range(1, L):
        if i < hi:
            z[i] = min(hi - i, z[i - lo])
        while i + z[i] < L and syms[z[i]] == syms[i + z[i]]:
            z[i] += 1
        if i + z[i] > hi:
            lo, hi = i, i + z[i]
    return z


def return_times_all(w: Union[Word, Sequence[int]],
                     max_n: Optional[int] = None) -> list[ReturnTimeResult]:
    """R_n for every n in 1..max_n (default: full length), in O(L) total.

    minimal_j[n] = min{ i : z[i] >= n } is computed by bucketing each i
    under z[i] and sweeping from long matches down to short ones.
    """
    syms = _symbols(w)
    L = len(syms)
    if L == 0:
        return []
    top = L if max_n is None else max_n
    if not 1 <= top <= L:
        raise ValueError(f"need 1 <= max_n <= {L}")
    first_i = [0] * (L + 1)  # 0 = no i observed with z[i] == n
    z = z_array(syms)
    for i in range(1, L):
        zi = z[i]
        if zi >= 1 and (first_i[zi] == 0 or i < first_i[zi]):
            first_i[zi] = i
    best = 0  # min i with z[i] >= n, built from n = L downward
    minimal = [0] * (L + 1)
    for n in range(L, 0, -1):
        if first_i[n] and (best == 0 or first_i[n] < best):
            best = first_i[n]
        minimal[n] = best
    out = []
    for n in range(1, top + 1):
        j = minimal[n]
        if j:
            # z[j] >= n forces j + n <= L, so the match sits inside the window
            out.append(ReturnTimeResult(n, j, True))
        else:
            out.append(ReturnTimeResult(n, L - n, False))
    return out


def return_time(w: Union[Word, Sequence[int]], n: int) -> ReturnTimeResult:
    """R_n via the batch engine (single Z pass, then lookup)."""
    return return_times_all(w, max_n=n)[n - 1]


def return_time_prime(w: Union[Word, Sequence[int]], n: int) -> ReturnTimeResult:
    """R'_n: first return with shift at least n."""
    return return_time_naive(w, n, prime=True)


def return_times_naive_all(w: Union[Word, Sequence[int]],
                           max_n: Optional[int] = None) -> list[ReturnTimeResult]:
    """Oracle-grade batch: one independent naive scan per n.

    The serialization is hoisted out of the loop (it does not depend on n);
    each n still gets its own full find() scan, so the per-n decisions stay
    independent of one another and of the Z-array engine.
    """
    syms = _symbols(w)
    L = len(syms)
    top = L if max_n is None else max_n
    if not 0 <= top <= L:
        raise ValueError(f"need 0 <= max_n <= {L}")
    if max(syms, default=0) >= 10:
        return [return_time_naive(syms, n) for n in range(1, top + 1)]
    text = "".join(map(str, syms))
    out = []
    for n in range(1, top + 1):
        hit = text.find(text[:n], 1)
        if hit != -1:
            out.append(ReturnTimeResult(n, hit, True))
        else:
            out.append(ReturnTimeResult(n, L - n, False))
    return out
