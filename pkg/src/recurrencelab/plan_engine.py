"""Rate targets, the zero-one dimension test, and insertion-plan synthesis.

Everything here is driven by four extended reals: the requested lower and
upper recurrence rates (alpha <= beta) and the profile's log-ratio extremes
(delta <= gamma).  The level set of points realizing those rates has
Hausdorff dimension one exactly when alpha >= 1/gamma and beta >= 1/delta
(with 1/0 = inf and 1/inf = 0), and dimension zero otherwise — dichotomy()
decides that with exact rational arithmetic.

In the full-dimension regime the products A = alpha*gamma and B = beta*delta
(read through a small case table that also assigns A or B = 1 when a zero
rate meets an infinite extreme) split the parameter space into six plan
shapes.  plan_full_dimension() synthesizes an InsertionPlan for whichever
shape applies; the two ladder builders below supply the index sequences the
harder shapes need.  Every position is computed through exact big-integer
ceilings/floors of float exponents, so regenerating a plan is deterministic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import bignum
from .cantor_builder import InsertionPlan, check_plan_conditions
from .errors import (CapacityError, GuardError, PhiDomainError, PlanValidityError,
                     RefusalError, SearchCapError)
from .extreal import INF, ONE, ExtReal
from .phi_spec import (DEFAULT_ESTIMATE_HORIZON, ExprPhi, GammaDelta, OscLogPhi,
                       PhiSpec, PowerLog, check_nondecreasing)

SEARCH_CAP = 10 ** 100   # unit-increase searches stop here
WITNESS_CAP = 10 ** 9    # generic ratio-witness scans stop here


def _validate_pairs(alpha: ExtReal, beta: ExtReal,
                    gamma: ExtReal, delta: ExtReal) -> None:
    if beta < alpha:
        raise ValueError("rate targets need alpha <= beta")
    if gamma < delta:
        raise ValueError("profile extremes need delta <= gamma")


def dichotomy(alpha, beta, gamma, delta) -> int:
    """1 when the level set has full dimension, else 0 (it is never between)."""
    alpha, beta, gamma, delta = (ExtReal(v) for v in (alpha, beta, gamma, delta))
    _validate_pairs(alpha, beta, gamma, delta)
    full = (alpha >= gamma.reciprocal()) and (beta >= delta.reciprocal())
    return 1 if full else 0


def _table_product(rate: ExtReal, extreme: ExtReal,
                   rate_name: str, extreme_name: str) -> ExtReal:
    if extreme.is_inf:
        return ONE if rate.is_zero else INF
    if rate.is_inf or rate.is_zero or extreme.is_zero:
        raise GuardError(
            f"outside the proof-case table: {rate_name}={rate}, "
            f"{extreme_name}={extreme}")
    return rate * extreme


def compute_AB(alpha, beta, gamma, delta) -> tuple[ExtReal, ExtReal]:
    """The two case-splitting products; only defined on the table's cells."""
    alpha, beta, gamma, delta = (ExtReal(v) for v in (alpha, beta, gamma, delta))
    return (_table_product(alpha, gamma, "alpha", "gamma"),
            _table_product(beta, delta, "beta", "delta"))


@dataclass(frozen=True)
class Classification:
    alpha: ExtReal
    beta: ExtReal
    gamma: ExtReal
    delta: ExtReal
    provenance: str
    dim: int
    case_tag: Optional[str] = None
    A: Optional[ExtReal] = None
    B: Optional[ExtReal] = None
    C: Optional[ExtReal] = None
    D: Optional[ExtReal] = None

    def to_json_dict(self) -> dict:
        def jv(x):
            return None if x is None else x.json_value()

        return {"alpha": jv(self.alpha), "beta": jv(self.beta),
                "gamma": jv(self.gamma), "delta": jv(self.delta),
                "provenance": self.provenance, "dim": self.dim,
                "case": self.case_tag,
                "A": jv(self.A), "B": jv(self.B), "C": jv(self.C),
                "D": jv(self.D)}


def classify_thresholds(alpha, beta, gamma, delta,
                        provenance: str = "given") -> Classification:
    alpha, beta, gamma, delta = (ExtReal(v) for v in (alpha, beta, gamma, delta))
    _validate_pairs(alpha, beta, gamma, delta)
    dim = dichotomy(alpha, beta, gamma, delta)
    tag = A = B = C = D = None
    if dim == 1:
        if alpha.is_inf and beta.is_inf:
            tag = "i"
        elif beta.is_inf:
            tag = "ii"
        else:
            A, B = compute_AB(alpha, beta, gamma, delta)
            if A.is_inf and B.is_inf:
                tag = "iii"
            elif B.is_inf:
                tag = "iv"
            elif A <= B:
                tag = "v"
                C = B / A
            else:
                tag = "vi"
                Cfr, Dfr = _interpolation_coefficients(alpha, beta, gamma, delta)
                C, D = ExtReal(Cfr), ExtReal(Dfr)
    return Classification(alpha, beta, gamma, delta, provenance, dim, tag,
                          A, B, C, D)


def classify_profile(phi: PhiSpec, alpha, beta,
                     horizon: int = DEFAULT_ESTIMATE_HORIZON) -> Classification:
    gd = phi.gamma_delta(horizon)
    return classify_thresholds(alpha, beta, gd.gamma, gd.delta,
                               provenance=gd.provenance)


def _interpolation_coefficients(alpha: ExtReal, beta: ExtReal,
                                gamma: ExtReal, delta: ExtReal
                                ) -> tuple[Fraction, Fraction]:
    """Slope/offset of the affine map sending delta -> B and gamma -> A."""
    a, b, d = alpha.fraction, beta.fraction, delta.fraction
    if gamma.is_inf:
        return a, (b - a) * d
    g = gamma.fraction
    return ((a * g - b * d) / (g - d),
            (b - a) * g * d / (g - d))


# --------------------------------------------------------------------------
# ratio witnesses
# --------------------------------------------------------------------------

def _cheap_gamma_delta(phi: PhiSpec) -> Optional[GammaDelta]:
    if isinstance(phi, (PowerLog, OscLogPhi)):
        return phi.gamma_delta()
    if isinstance(phi, ExprPhi) and phi.monomials is not None:
        return phi.gamma_delta()
    return None


def find_ratio_witness(phi: PhiSpec, target, min_n: int, *,
                       tol: Optional[float] = None,
                       threshold: Optional[float] = None,
                       eval_shift: int = 0,
                       cap: int = WITNESS_CAP) -> int:
    """An n >= min_n whose ratio at n + eval_shift approximates the target.

    Finite targets take |ratio - target| < tol; an infinite target takes
    ratio > threshold.  Oscillating profiles answer from their exact
    segment geometry; profiles with constant analytic ratio answer at
    min_n; everything else is scanned geometrically up to the cap.
    """
    target = ExtReal(target)
    min_n = max(min_n, 2)
    if target.is_inf:
        if threshold is None:
            raise ValueError("an infinite target needs a threshold")
    elif tol is None:
        raise ValueError("a finite target needs a tolerance")
    tf = None if target.is_inf else float(target)

    def hits(n: int) -> bool:
        r = phi.ratio(n + eval_shift)
        return (r > threshold) if tf is None else abs(r - tf) < tol

    if isinstance(phi, OscLogPhi):
        cand = None
        if target == phi.gamma:
            min_mult = (threshold + 1e-9) if target.is_inf else None
            start, _end, _mult = phi.climb_segment_at_least(min_n,
                                                            min_mult=min_mult)
            cand = start
        elif target == phi.delta:
            start, _end, _mult = phi.low_segment_at_least(min_n + eval_shift)
            cand = start - eval_shift
        if cand is not None and cand >= min_n and hits(cand):
            return cand
        # otherwise fall through to the generic scan
    gd = _cheap_gamma_delta(phi)
    if (gd is not None and not target.is_inf
            and gd.gamma == gd.delta == target and hits(min_n)):
        return min_n
    n = min_n
    while n <= cap:
        if hits(n):
            return n
        n = n + n // 1024 + 1
    raise SearchCapError(f"no ratio witness found below {cap:.2e}",
                         what="ratio witness")


# --------------------------------------------------------------------------
# ladder 1: prescribed log-ratio C between consecutive indices
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class PhaseRecord:
    """Audit trail for one witness phase of an index ladder."""

    cycle: int
    kind: str                 # "upper" | "lower"
    witness: int
    eval_point: int           # witness, or witness + 1 on the lower side
    ratio: float
    target: float             # math.inf in threshold mode
    tol: Optional[float]
    threshold: Optional[float]
    d: int
    first_index: int          # 1-based positions appended by this phase
    last_index: int


@dataclass(frozen=True)
class LogLadder:
    ns: tuple[int, ...]
    log_values: tuple[float, ...]   # the designed ln(n_i) floats
    C: Fraction
    branch: str                     # "geometric" (C > 1) | "square" (C == 1)
    records: tuple[PhaseRecord, ...]


def _floor_sqrt(x: float) -> int:
    s = int(math.sqrt(x))
    while (s + 1) * (s + 1) <= x:
        s += 1
    while s * s > x:
        s -= 1
    return s


def _witness_args(extreme: ExtReal, k: int, inv_tol: float):
    """tol/threshold pair for one phase: near the extreme, or above k."""
    if extreme.is_inf:
        return None, float(k)
    return 1.0 / inv_tol, None


def build_subseq1(phi: PhiSpec, C, gamma, delta, count: int, *, p: int = 2,
                  digit_cap: int = bignum.DEFAULT_DIGIT_CAP) -> LogLadder:
    """Indices n_1 < n_2 < ... with consecutive log ratio pinned near C,
    whose ratio phi/log visits gamma (at n) and delta (at n+1) on witness
    elements of every cycle, with tolerances shrinking as cycles advance.
    """
    C = Fraction(C)
    gamma, delta = ExtReal(gamma), ExtReal(delta)
    if C < 1:
        raise GuardError("the log-ratio constant must be at least 1")
    if delta.is_zero:
        raise GuardError("the lower extreme must be positive here")
    if count < 2:
        raise ValueError("count must be at least 2")
    check_nondecreasing(phi, 256)
    n1 = max(3, p + 1)
    if C == 1:
        return _square_ladder(phi, gamma, delta, count, n1, digit_cap)
    return _geometric_ladder(phi, C, gamma, delta, count, n1, digit_cap)


def _geometric_ladder(phi, C: Fraction, gamma: ExtReal, delta: ExtReal,
                      count: int, n1: int, digit_cap: int) -> LogLadder:
    lnC = math.log(C)
    ns: list[int] = [n1]
    lls: list[float] = [math.log(n1)]
    records: list[PhaseRecord] = []

    def phase(cycle: int, kind: str, extreme: ExtReal, shift: int,
              inv_tol: float) -> int:
        jump = float(C ** cycle)
        min_n = bignum.exp_ceil(jump * lls[-1], digit_cap=digit_cap)
        tol, thr = _witness_args(extreme, cycle, inv_tol)
        w = find_ratio_witness(phi, extreme, min_n, tol=tol, threshold=thr,
                               eval_shift=shift)
        ll_w = bignum.float_log(w)
        gap = math.log(ll_w) - math.log(lls[-1])
        d = max(int(gap // lnC), cycle)
        first = len(ns) + 1
        base, step = lls[-1], gap / d
        for j in range(1, d):
            if len(ns) >= count:
                break
            lnr = base * math.exp(step * j)
            ns.append(bignum.exp_ceil(lnr, digit_cap=digit_cap))
            lls.append(lnr)
        if len(ns) < count:
            ns.append(w)
            lls.append(ll_w)
        records.append(PhaseRecord(cycle, kind, w, w + shift,
                                   phi.ratio(w + shift), float(extreme),
                                   tol, thr, d, first, len(ns)))
        return d

    k = 0
    while len(ns) < count:
        k += 1
        d_up = phase(k, "upper", gamma, 0, float(k))
        if len(ns) >= count:
            break
        phase(k, "lower", delta, 1, float(k + d_up))
    return LogLadder(tuple(ns), tuple(lls), C, "geometric", tuple(records))


def _square_ladder(phi, gamma: ExtReal, delta: ExtReal, count: int,
                   n1: int, digit_cap: int) -> LogLadder:
    """C = 1 variant: index i keeps log(n_i) inside [i^2, (i+1)^2)."""
    if not 1 <= math.log(n1) < 4:
        raise GuardError(
            "the unit-ratio ladder needs 1 <= log(n_1) < 4; p is too large")
    ns: list[int] = [n1]
    lls: list[float] = [math.log(n1)]
    records: list[PhaseRecord] = []
    k = 1
    cycle = 0
    while len(ns) < count:
        cycle += 1
        for kind, extreme, shift in (("upper", gamma, 0), ("lower", delta, 1)):
            if len(ns) >= count:
                break
            min_n = bignum.exp_ceil(float((k + 1) ** 2), digit_cap=digit_cap)
            tol, thr = _witness_args(extreme, k, float(k))
            w = find_ratio_witness(phi, extreme, min_n, tol=tol, threshold=thr,
                                   eval_shift=shift)
            # w >= exp_ceil((k+1)^2) makes log(w) >= (k+1)^2 exact; clamp
            # away float-conversion dust so the sqrt index always advances
            ll_w = max(bignum.float_log(w), float((k + 1) ** 2))
            s = _floor_sqrt(ll_w)
            first = len(ns) + 1
            for j in range(1, s - k):
                if len(ns) >= count:
                    break
                lnr = float((k + j) ** 2)
                ns.append(bignum.exp_ceil(lnr, digit_cap=digit_cap))
                lls.append(lnr)
            if len(ns) < count:
                ns.append(w)
                lls.append(ll_w)
            records.append(PhaseRecord(cycle, kind, w, w + shift,
                                       phi.ratio(w + shift), float(extreme),
                                       tol, thr, s - k, first, len(ns)))
            k = s
    return LogLadder(tuple(ns), tuple(lls), Fraction(1), "square",
                     tuple(records))


# --------------------------------------------------------------------------
# ladder 2: unit increases of phi
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class StepLadder:
    """ns: one more entry than ms; ms[i] marks where phi's i-th unit step
    is realized (either at ns[i] or just before ns[i+1])."""

    ns: tuple[int, ...]
    ms: tuple[int, ...]
    branches: tuple[str, ...] = ()


def _phi_for_search(phi: PhiSpec, n: int) -> float:
    try:
        return phi.value(n)
    except OverflowError:
        return math.inf
    except PhiDomainError as exc:
        raise SearchCapError(f"profile ran out during the search: {exc}",
                             what="phi domain") from exc


def _min_crossing(phi: PhiSpec, n_lo: int, target: float,
                  cap: int = SEARCH_CAP) -> int:
    """Least n > n_lo with computed phi(n) > target (phi nondecreasing)."""
    lo, hi = n_lo, n_lo + 1
    while _phi_for_search(phi, hi) <= target:
        if hi > cap:
            raise SearchCapError(
                "phi appears bounded: no unit increase found below 1e100",
                what="phi crossing")
        lo, hi = hi, hi * 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _phi_for_search(phi, mid) > target:
            hi = mid
        else:
            lo = mid
    return hi


def _step_markers(phi: PhiSpec, ns: list[int]) -> list[int]:
    ms = []
    for i in range(len(ns) - 1):
        gap = phi.value(ns[i + 1]) - phi.value(ns[i])
        ms.append(ns[i] if gap <= 2.0 else ns[i + 1] - 1)
    return ms


def build_subseq2_i(phi: PhiSpec, count: int, *, n_start: int = 3,
                    cap: int = SEARCH_CAP) -> StepLadder:
    """Pure unit-increase ladder: each index is the first point where phi
    exceeds its previous value by more than one."""
    if count < 1:
        raise ValueError("count must be positive")
    if n_start < 2:
        raise ValueError("n_start must be at least 2")
    check_nondecreasing(phi, 256)
    ns = [n_start]
    while len(ns) < count + 1:
        ns.append(_min_crossing(phi, ns[-1], phi.value(ns[-1]) + 1.0, cap))
    return StepLadder(tuple(ns), tuple(_step_markers(phi, ns)))


def build_subseq2_ii(phi: PhiSpec, count: int, *, n_start: int = 3,
                     cap: int = SEARCH_CAP) -> StepLadder:
    """Variant that steps to ceil(n log n) whenever that stays within a
    unit increase of phi, guaranteeing each step is long multiplicatively
    or large in phi (never neither)."""
    if count < 1:
        raise ValueError("count must be positive")
    if n_start < 3:
        raise ValueError("n_start must be at least 3")
    check_nondecreasing(phi, 256)
    ns = [n_start]
    branches: list[str] = []
    while len(ns) < count + 1:
        n = ns[-1]
        prod = bignum.nlogn_ceil(n)
        if _phi_for_search(phi, prod) <= phi.value(n) + 1.0:
            ns.append(prod)
            branches.append("product")
        else:
            ns.append(_min_crossing(phi, n, phi.value(n) + 1.0, cap))
            branches.append("crossing")
    return StepLadder(tuple(ns), tuple(_step_markers(phi, ns)),
                      tuple(branches))


# --------------------------------------------------------------------------
# plan synthesis
# --------------------------------------------------------------------------

def _valid_suffix(terms: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Maximal suffix on which positions respect the gap condition and the
    prefix lengths strictly increase (generators may violate both for a
    few leading terms before growth takes over)."""
    cut = 0
    for j in range(1, len(terms)):
        n0, l0 = terms[j - 1]
        n1, l1 = terms[j]
        if n1 <= n0 or l1 < l0 + n0 + 3:
            cut = j
    return terms[cut:]


def _gen_case_i(phi, p, m, count, digit_cap):
    terms: list[tuple[int, int]] = []
    prev_n, prev_l = 0, 1
    for i in range(1, count + 1):
        try:
            ell = max(bignum.exp_ceil(i * phi.value(i), digit_cap=digit_cap),
                      prev_l + prev_n + 3,
                      i * i * (i + 3))
        except CapacityError:
            if len(terms) >= 2:
                break
            raise
        terms.append((i, ell))
        prev_n, prev_l = i, ell
    return terms


def _gen_case_ii(phi, alpha: ExtReal, gamma: ExtReal, p, m, count, digit_cap):
    gf = None if gamma.is_inf else float(gamma)
    n_prev = max(2, p)
    prev_ratio = 0.0
    terms: list[tuple[int, int]] = []
    for i in range(1, count + 1):
        try:
            t = phi.value(n_prev + 1)
            need_ln = max(i * t, bignum.float_log(n_prev) + i * i + 2)
            if gf is not None:
                need_ln = max(need_ln, 1.01 * i * t / gf)
            min_n = bignum.exp_ceil(need_ln, digit_cap=digit_cap)
            for _attempt in range(64):
                if gamma.is_inf:
                    cand = find_ratio_witness(phi, INF, min_n,
                                              threshold=max(float(i), prev_ratio))
                else:
                    cand = find_ratio_witness(phi, gamma, min_n, tol=1.0 / i)
                ln_c = bignum.float_log(cand)
                f_c = phi.value(cand)
                if (f_c > i * t and ln_c > i * t
                        and ln_c > bignum.float_log(n_prev) + i * i + 2):
                    break
                min_n = bignum.exp_ceil(ln_c * 1.5, digit_cap=digit_cap)
            else:
                raise SearchCapError(
                    "could not satisfy the growth conditions for this regime",
                    what="slow-rate witness")
            if alpha.is_zero:
                ell = bignum.nlogn_ceil(cand)
            elif gamma.is_inf:
                ell = bignum.exp_ceil(float(alpha) * f_c, digit_cap=digit_cap)
            else:
                ell = bignum.power_log_ceil(cand, (alpha * gamma).fraction,
                                            digit_cap=digit_cap)
        except (CapacityError, OverflowError):
            if len(terms) >= 2:
                break
            raise
        terms.append((cand, ell))
        prev_ratio = f_c / ln_c
        n_prev = cand
    return terms


def _gen_case_iii(phi, alpha: ExtReal, beta: ExtReal, p, m, count, digit_cap):
    a, b = float(alpha), float(beta)
    if a <= 0:
        raise GuardError("this regime needs a positive lower rate")
    ladder = build_subseq2_i(phi, count + 2, n_start=max(3, p + 1))
    ms = ladder.ms
    terms: list[tuple[int, int]] = []
    k = 0
    try:
        while len(terms) < count and k < len(ms):
            fk = phi.value(ms[k])
            terms.append((ms[k], bignum.exp_ceil(b * fk, digit_cap=digit_cap)))
            cutoff = (2 * b / a - 1) * fk
            j = 1
            while len(terms) < count and k + j < len(ms):
                fj = phi.value(ms[k + j])
                if fj >= cutoff:
                    terms.append((ms[k + j],
                                  bignum.exp_ceil(a * fj, digit_cap=digit_cap)))
                    break
                terms.append((ms[k + j],
                              bignum.exp_ceil((b - a / 2) * fk + (a / 2) * fj,
                                              digit_cap=digit_cap)))
                j += 1
            k = k + j + 1
    except CapacityError:
        if len(terms) < 2:
            raise
    return terms


def _gen_case_iv(phi, beta: ExtReal, p, m, count, digit_cap):
    b = float(beta)
    n_prev = max(2, p)
    terms: list[tuple[int, int]] = []
    for _ in range(count):
        try:
            t = phi.value(n_prev + 1)
            n_i = bignum.exp_ceil(b * t, digit_cap=digit_cap)
            if n_i <= n_prev:
                n_i = n_prev + 1
            terms.append((n_i, bignum.nlogn_ceil(n_i)))
        except (CapacityError, OverflowError):
            if len(terms) >= 2:
                break
            raise
        n_prev = n_i
    return terms


def _gen_case_v(phi, alpha: ExtReal, beta: ExtReal, gamma: ExtReal,
                delta: ExtReal, p, m, count, digit_cap):
    A, B = compute_AB(alpha, beta, gamma, delta)
    C = (B / A).fraction
    ladder = build_subseq1(phi, C, gamma, delta, count, p=p,
                           digit_cap=digit_cap)
    terms: list[tuple[int, int]] = []
    for n in ladder.ns:
        try:
            terms.append((n, bignum.power_log_ceil(n, A.fraction,
                                                   digit_cap=digit_cap)))
        except CapacityError:
            if len(terms) >= 2:
                break
            raise
    return terms


def _gen_case_vi(phi, alpha: ExtReal, beta: ExtReal, gamma: ExtReal,
                 delta: ExtReal, p, m, count, digit_cap):
    Cfr, Dfr = _interpolation_coefficients(alpha, beta, gamma, delta)
    Cf, Df = float(Cfr), float(Dfr)
    lo = float(delta)
    hi = math.inf if gamma.is_inf else float(gamma)
    ladder = build_subseq2_ii(phi, count, n_start=max(3, p + 1))
    terms: list[tuple[int, int]] = []
    for m_i in ladder.ms:
        try:
            lnm = bignum.float_log(m_i)
            f = phi.value(m_i)
            x = min(max(f / lnm, lo), hi)
            rho = Cf * x + Df
            ell = bignum.exp_floor([rho * lnm, math.log(f), math.log(lnm)],
                                   digit_cap=digit_cap)
            terms.append((m_i, ell))
        except CapacityError:
            if len(terms) >= 2:
                break
            raise
    return terms


def plan_full_dimension(phi: PhiSpec, alpha, beta, *, p: int = 3, m: int = 2,
                        count: int = 12,
                        horizon: int = DEFAULT_ESTIMATE_HORIZON,
                        digit_cap: int = bignum.DEFAULT_DIGIT_CAP
                        ) -> InsertionPlan:
    """Synthesize an insertion plan whose constructed point realizes the
    requested rate pair over the given profile.

    Refuses (with the full classification attached) when the dichotomy
    puts the requested level set at dimension zero.
    """
    alpha, beta = ExtReal(alpha), ExtReal(beta)
    cls = classify_profile(phi, alpha, beta, horizon=horizon)
    if cls.dim != 1:
        raise RefusalError(
            "these rate targets sit in the dimension-zero regime for this "
            "profile; no full-dimension plan exists", cls.to_json_dict())
    gamma, delta = cls.gamma, cls.delta
    tag = cls.case_tag
    if tag == "i":
        terms = _gen_case_i(phi, p, m, count, digit_cap)
    elif tag == "ii":
        terms = _gen_case_ii(phi, alpha, gamma, p, m, count, digit_cap)
    elif tag == "iii":
        terms = _gen_case_iii(phi, alpha, beta, p, m, count, digit_cap)
    elif tag == "iv":
        terms = _gen_case_iv(phi, beta, p, m, count, digit_cap)
    elif tag == "v":
        terms = _gen_case_v(phi, alpha, beta, gamma, delta, p, m, count,
                            digit_cap)
    else:
        terms = _gen_case_vi(phi, alpha, beta, gamma, delta, p, m, count,
                             digit_cap)
    terms = _valid_suffix(terms)
    if len(terms) < 2:
        raise PlanValidityError(
            "generation left fewer than two usable terms; raise count or "
            "the digit cap")
    plan = InsertionPlan(p=p, m=m, terms=tuple(terms), case_tag=tag)
    check_plan_conditions(plan)
    return plan
