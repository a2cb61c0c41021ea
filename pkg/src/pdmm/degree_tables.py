"""Exponent-vector families and their degree tables.

A code in this library is described by an :class:`ExponentPlan`: the two
exponent vectors ``alpha`` and ``beta`` of the encoding polynomials,
plus the index sets that say which exponents carry data blocks (the rest
carry masking noise).  The outer sum ``alpha(i) + beta(j)`` forms the
degree table; its number of distinct entries is the server count, and
the split between information sums and interference sums drives both
decodability and the quantum feasibility analysis.

Families:

* ``gasp_r`` / ``gasp_rs`` / ``dog_rs`` / ``cat_x``: classical codes with
  data on the low-degree halves of the polynomials.
* ``qf_*``: families designed for two-instance quantum transmission,
  with data on the high-degree halves.
* ``lp_equal`` / ``lp_general``: low-privacy families where one
  polynomial carries more noise terms than the privacy level requires,
  again with data on the high-degree halves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

__all__ = [
    "ExponentPlan",
    "DegreeTable",
    "DecodabilityReport",
    "ParamOutOfRangeError",
    "NoSolutionError",
    "SideConditionViolatedError",
    "gap_progression",
    "build_gasp_r",
    "build_gasp_rs",
    "build_dog",
    "build_cat",
    "build_qf_square",
    "build_qf_power",
    "build_qf_additive",
    "build_qf_klt",
    "build_qf_kt",
    "build_qf_kt_shift",
    "build_quantum_family",
    "build_low_privacy",
    "outer_sum",
    "check_decodable",
    "gasp_server_formula",
    "optimal_gasp_r",
    "best_classical_plan",
    "plan_record",
    "parse_plan_record",
]


class ParamOutOfRangeError(ValueError):
    """Family parameters outside the construction's valid range."""


class NoSolutionError(ValueError):
    """No valid cyclic exponent assignment exists for these parameters."""


class SideConditionViolatedError(ParamOutOfRangeError):
    """The low-privacy construction's side condition fails."""


@dataclass(frozen=True)
class ExponentPlan:
    """Exponent layout of one code.

    ``info_alpha`` / ``info_beta`` index into ``alpha`` / ``beta`` and mark
    the K (resp. L) positions that carry data blocks; the remaining
    positions carry noise.  ``modulus_q`` is set only for cyclic (CAT)
    plans, whose exponent arithmetic wraps mod q.
    """

    family: str
    K: int
    L: int
    T: int
    alpha: tuple[int, ...]
    beta: tuple[int, ...]
    info_alpha: tuple[int, ...]
    info_beta: tuple[int, ...]
    params: tuple[tuple[str, int], ...] = ()
    modulus_q: int | None = None

    def __post_init__(self):
        if len(self.info_alpha) != self.K or len(self.info_beta) != self.L:
            raise ValueError("info index sets must have sizes K and L")
        for idx, vec in ((self.info_alpha, self.alpha), (self.info_beta, self.beta)):
            if any(i < 0 or i >= len(vec) for i in idx):
                raise ValueError("info index out of range")
        info_a = [self.alpha[i] for i in self.info_alpha]
        info_b = [self.beta[i] for i in self.info_beta]
        if len(set(info_a)) != len(info_a) or len(set(info_b)) != len(info_b):
            raise ValueError("info exponents must be pairwise distinct")

    @property
    def noise_alpha(self) -> tuple[int, ...]:
        """Exponents of alpha carrying noise, in vector order."""
        keep = set(self.info_alpha)
        return tuple(e for i, e in enumerate(self.alpha) if i not in keep)

    @property
    def noise_beta(self) -> tuple[int, ...]:
        keep = set(self.info_beta)
        return tuple(e for i, e in enumerate(self.beta) if i not in keep)

    @property
    def info_alpha_exponents(self) -> tuple[int, ...]:
        return tuple(self.alpha[i] for i in self.info_alpha)

    @property
    def info_beta_exponents(self) -> tuple[int, ...]:
        return tuple(self.beta[i] for i in self.info_beta)

    def param(self, name: str) -> int:
        for key, val in self.params:
            if key == name:
                return val
        raise KeyError(name)


@dataclass(frozen=True)
class DegreeTable:
    """Outer-sum table of a plan with its information/interference split."""

    table: tuple[tuple[int, ...], ...]
    info_sums: frozenset[int]
    interference: frozenset[int]
    n_servers: int

    @property
    def exponents(self) -> tuple[int, ...]:
        """All distinct table entries, sorted ascending.

        This fixed total order is the indexing every other module uses.
        """
        return tuple(sorted(self.info_sums | self.interference))


@dataclass(frozen=True)
class DecodabilityReport:
    ok: bool
    reason: str = ""
    violation: tuple[int, int] | None = None


def gap_progression(length: int, x: int, r: int) -> list[int]:
    """First ``length`` terms of [0..r-1, x..x+r-1, 2x..2x+r-1, ...]."""
    if r < 1 or length < 0:
        raise ParamOutOfRangeError(f"need r >= 1 and length >= 0, got r={r}, length={length}")
    out: list[int] = []
    block = 0
    while len(out) < length:
        for i in range(r):
            out.append(block * x + i)
            if len(out) == length:
                break
        block += 1
    return out


def _plan(family, K, L, T, alpha, beta, info_alpha, info_beta, params=(), q=None):
    return ExponentPlan(
        family=family, K=K, L=L, T=T,
        alpha=tuple(alpha), beta=tuple(beta),
        info_alpha=tuple(info_alpha), info_beta=tuple(info_beta),
        params=tuple(params), modulus_q=q,
    )


def _require(cond: bool, msg: str):
    if not cond:
        raise ParamOutOfRangeError(msg)


# ---------------------------------------------------------------------------
# classical families (data on the low-degree half)
# ---------------------------------------------------------------------------

def build_gasp_r(K: int, L: int, T: int, r: int) -> ExponentPlan:
    """Gap additive secure polynomial code with chain length r."""
    _require(K >= 1 and L >= 1 and T >= 1, "need K, L, T >= 1")
    _require(1 <= r <= min(K, T), f"need 1 <= r <= min(K, T), got r={r}")
    alpha = list(range(K)) + [K * L + g for g in gap_progression(T, K, r)]
    beta = [K * j for j in range(L)] + list(range(K * L, K * L + T))
    return _plan("gasp_r", K, L, T, alpha, beta,
                 range(K), range(L), params=[("r", r)])


def build_gasp_rs(K: int, L: int, T: int, r: int, s: int) -> ExponentPlan:
    """GASP variant with independent chain lengths on both noise blocks."""
    _require(T >= 2, "need T >= 2")
    _require(1 <= r <= min(K, T) and 1 <= s <= min(K, T),
             f"need 1 <= r, s <= min(K, T), got r={r}, s={s}")
    alpha = list(range(K)) + [K * L + g for g in gap_progression(T, K, r)]
    beta = [K * j for j in range(L)] + [K * L + g for g in gap_progression(T, K, s)]
    return _plan("gasp_rs", K, L, T, alpha, beta,
                 range(K), range(L), params=[("r", r), ("s", s)])


def build_dog(K: int, L: int, T: int, r: int, s: int) -> ExponentPlan:
    """Discretely optimized GASP layout with step K + r."""
    _require(T >= 2, "need T >= 2")
    _require(1 <= r <= T, f"need 1 <= r <= T, got r={r}")
    _require(1 <= s <= min(K + r, T), f"need 1 <= s <= min(K+r, T), got s={s}")
    alpha = list(range(K)) + [K + g for g in gap_progression(T, K + r, r)]
    beta = [(K + r) * j for j in range(L)] \
        + [(K + r) * (L - 1) + K + g for g in gap_progression(T, K + r, s)]
    return _plan("dog_rs", K, L, T, alpha, beta,
                 range(K), range(L), params=[("r", r), ("s", s)])


def build_cat(K: int, L: int, T: int, x: int | None = None) -> ExponentPlan:
    """Cyclic-addition degree table code over Z_q, q = K*L* + (T-1)^2.

    kappa and lambda are searched independently as the smallest
    non-negative integers making K* and L* coprime with T-1.  The
    multiplier x defaults to the smallest positive integer coprime with
    q; any coprime x is accepted.  The builder verifies that the cyclic
    table covers all q residues (the construction's server count);
    parameters where the cover fails are rejected.
    """
    _require(K >= L >= T >= 2, "need K >= L >= T >= 2")
    t_bar = T - 1
    kappa = 0
    while math.gcd(K + 1 + kappa, t_bar) != 1:
        kappa += 1
    lam = 0
    while math.gcd(L + 1 + lam, t_bar) != 1:
        lam += 1
    k_star = K + 1 + kappa
    l_star = L + 1 + lam
    q = k_star * l_star + t_bar * t_bar
    if x is None:
        x = 1
        while math.gcd(x, q) != 1:
            x += 1
    elif math.gcd(x, q) != 1:
        raise ParamOutOfRangeError(f"x={x} must be coprime with q={q}")
    # solve x*t_bar + y*k_star = 0 (mod q); gcd(k_star, q) = gcd(k_star, t_bar^2) = 1
    g = math.gcd(k_star, q)
    if (-x * t_bar) % g != 0:
        raise NoSolutionError(f"no y with x*T_bar + y*K* = 0 mod {q}")
    y = (-x * t_bar * pow(k_star // g, -1, q // g)) % (q // g)
    alpha = [(y * i) % q for i in range(K)] + [(x * i + K * y) % q for i in range(T)]
    beta = [(x * i) % q for i in range(L)] + [(y * i - x) % q for i in range(T)]
    cover = {(a + b) % q for a in alpha for b in beta}
    if len(cover) != q:
        raise NoSolutionError(
            f"cyclic table covers {len(cover)} of {q} residues for "
            f"(K, L, T) = ({K}, {L}, {T}); construction undefined here")
    return _plan("cat_x", K, L, T, alpha, beta, range(K), range(L),
                 params=[("x", x), ("y", y), ("kappa", kappa), ("lambda", lam)], q=q)


# ---------------------------------------------------------------------------
# quantum families (data on the high-degree half)
# ---------------------------------------------------------------------------

def _qf_plan(name, K, L, T, alpha1, alpha2, beta1, beta2, params):
    alpha = list(alpha1) + list(alpha2)
    beta = list(beta1) + list(beta2)
    info_a = range(len(alpha1), len(alpha))
    info_b = range(len(beta1), len(beta))
    return _plan(name, K, L, T, alpha, beta, info_a, info_b, params=params)


def build_qf_square(n: int) -> ExponentPlan:
    """Two-instance family for K = L = T = n^2; server count 2n^4 + 2n^2 - 1."""
    _require(n >= 2, "need n >= 2")
    m = n * n
    return _qf_plan("qf_square", m, m, m,
                    range(m),
                    range(n**4, n**4 + m),
                    range(m),
                    [(j + 2) * m - 1 for j in range(m)],
                    params=[("n", n)])


def build_qf_power(n: int, k: int, m: int) -> ExponentPlan:
    """K = L = n^k with privacy T = n^m, m >= k >= 2."""
    _require(n >= 2 and m >= k >= 2, "need n >= 2 and m >= k >= 2")
    K = n**k
    T = n**m
    alpha2 = range(T + K * K - K, T + K * K)
    beta2 = [2 * T - 1 + j * K for j in range(K)]
    return _qf_plan("qf_power", K, K, T, range(T), alpha2, range(T), beta2,
                    params=[("n", n), ("k", k), ("m", m)])


def build_qf_additive(n: int, k: int, r: int) -> ExponentPlan:
    """K = L = n^k with privacy T = n^k + r, 0 <= r < n^2k - n^k + 1.

    Exponent offsets split the additive excess r evenly between the two
    high-degree blocks; this keeps every information sum clear of the
    interference range while matching the family's server count
    2 n^2k + 2 n^k + 2r - 1.
    """
    K = n**k
    _require(n >= 2 and k >= 1, "need n >= 2 and k >= 1")
    _require(0 <= r < K * K - K + 1, f"need 0 <= r < {K * K - K + 1}")
    T = K + r
    alpha2 = range(K * K + r, K * K + r + K)
    beta2 = [2 * K + r - 1 + j * K for j in range(K)]
    return _qf_plan("qf_additive", K, K, T, range(T), alpha2, range(T), beta2,
                    params=[("n", n), ("k", k), ("r", r)])


def build_qf_klt(K: int, T: int) -> ExponentPlan:
    """K >= L = T family; server count 2KT + 2T - 1."""
    _require(K >= T >= 1, "need K >= L = T >= 1")
    alpha2 = [(i + 2) * T - 1 for i in range(K)]
    beta2 = range(K * T, K * T + T)
    return _qf_plan("qf_klt", K, T, T, range(T), alpha2, range(T), beta2,
                    params=[("K", K), ("T", T)])


def build_qf_kt(n: int, k: int, ell: int) -> ExponentPlan:
    """K = T = n^k, L = n^ell with k >= ell; server count 2n^(k+ell) + 2n^k - 1."""
    _require(n >= 2 and k >= ell >= 1, "need n >= 2 and k >= ell >= 1")
    K = n**k
    L = n**ell
    alpha2 = range(n**(k + ell), n**(k + ell) + K)
    beta2 = [(j + 2) * K - 1 for j in range(L)]
    return _qf_plan("qf_kt", K, L, K, range(K), alpha2, range(K), beta2,
                    params=[("n", n), ("k", k), ("ell", ell)])


def build_qf_kt_shift(n: int, ell: int, r: int) -> ExponentPlan:
    """K = T = n^ell + r, L = n^ell with r > 0."""
    _require(n >= 2 and ell >= 1 and r > 0, "need n >= 2, ell >= 1, r > 0")
    m = n**ell
    K = m + r
    alpha2 = [2 * m + r - 1 + i * m for i in range(K)]
    beta2 = range(m * m + r * m + r, m * m + r * m + r + m)
    return _qf_plan("qf_kt_shift", K, m, K, range(K), alpha2, range(K), beta2,
                    params=[("n", n), ("ell", ell), ("r", r)])


_QUANTUM_BUILDERS = {
    "qf_square": build_qf_square,
    "qf_power": build_qf_power,
    "qf_additive": build_qf_additive,
    "qf_klt": build_qf_klt,
    "qf_kt": build_qf_kt,
    "qf_kt_shift": build_qf_kt_shift,
}


def build_quantum_family(family: str, **params: int) -> ExponentPlan:
    """Dispatch to one of the qf_* builders by family tag."""
    try:
        builder = _QUANTUM_BUILDERS[family]
    except KeyError:
        raise ParamOutOfRangeError(
            f"unknown quantum family {family!r}; choose from {sorted(_QUANTUM_BUILDERS)}")
    return builder(**params)


# ---------------------------------------------------------------------------
# low-privacy families (K >= L > T, extra noise on one polynomial)
# ---------------------------------------------------------------------------

# Hand-built small cases that fall outside the general side condition.
_LP_HAND_CASES = {
    (2, 2, 1): ((0, 2, 4), (0, 1, 4, 5), (1, 2), (2, 3)),
    (3, 3, 1): ((0, 3, 5, 7), (0, 1, 2, 10, 18, 26), (1, 2, 3), (3, 4, 5)),
}


def _run_length(values) -> int:
    present = set(values)
    best = 0
    for v in present:
        if v - 1 in present:
            continue
        end = v
        while end + 1 in present:
            end += 1
        best = max(best, end - v + 1)
    return best


def build_low_privacy(K: int, L: int, T: int) -> ExponentPlan:
    """Low-privacy family: alpha carries K noise terms (more than T).

    Layout for K = m(L-1) + delta, 0 <= delta < L - 1.  The inequality
    2mL >= delta*L + (m-2)(T-1) + (m-1)L^2 + 6 (it reduces to L + T >= 7
    when K = L) is sufficient for the layout to work; the builder checks
    the operative requirements directly, namely that every information
    sum is collision-free and that the interference run reaches half the
    server count, and also accepts verified parameters outside the
    sufficient region.  Two hand-built cases, (2, 2, 1) and (3, 3, 1),
    are included explicitly.
    """
    _require(K >= L > T >= 1, "need K >= L > T >= 1")
    if (K, L, T) in _LP_HAND_CASES:
        alpha, beta, info_a, info_b = _LP_HAND_CASES[(K, L, T)]
        return _plan("lp_equal", K, L, T, alpha, beta, info_a, info_b,
                     params=[("hand", 1)])
    m, delta = divmod(K, L - 1)
    alpha = list(range(K))
    for i in range(1, m + 1):
        start = (i + 1) * K + i * T + i * L * L - (i + 1) * L - 2 * i + 1
        alpha += [start + j for j in range(L - 1)]
    start = (m + 2) * K + (m + 1) * T + (m + 1) * L * L - (m + 2) * L - 2 * m - 1
    alpha += [start + j for j in range(delta)]
    beta = list(range(T)) + [K + T - 2 + (L - 1) * j for j in range(L)]
    family = "lp_equal" if K == L else "lp_general"
    plan = _plan(family, K, L, T, alpha, beta,
                 range(K, 2 * K), range(T, T + L),
                 params=[("m", m), ("delta", delta)])
    everything = {a + b for a in plan.alpha for b in plan.beta}
    info = {plan.alpha[i] + plan.beta[j]
            for i in plan.info_alpha for j in plan.info_beta}
    ok = (check_decodable(plan).ok
          and 2 * _run_length(everything - info) >= len(everything))
    if not ok:
        raise SideConditionViolatedError(
            f"layout fails verification for (K, L, T) = ({K}, {L}, {T}) with "
            f"m={m}, delta={delta}; the sufficient condition "
            f"2mL >= dL + (m-2)(T-1) + (m-1)L^2 + 6 "
            f"{'also fails' if 2 * m * L < delta * L + (m - 2) * (T - 1) + (m - 1) * L * L + 6 else 'holds'}")
    return plan


# ---------------------------------------------------------------------------
# degree table, decodability, server counts
# ---------------------------------------------------------------------------

def outer_sum(plan: ExponentPlan) -> DegreeTable:
    """Build the degree table alpha(i) + beta(j) (mod q for cyclic plans)."""
    q = plan.modulus_q
    red = (lambda v: v % q) if q else (lambda v: v)
    rows = tuple(tuple(red(a + b) for b in plan.beta) for a in plan.alpha)
    info = frozenset(red(plan.alpha[i] + plan.beta[j])
                     for i in plan.info_alpha for j in plan.info_beta)
    everything = frozenset(v for row in rows for v in row)
    return DegreeTable(table=rows, info_sums=info,
                       interference=everything - info,
                       n_servers=len(everything))


def check_decodable(plan: ExponentPlan) -> DecodabilityReport:
    """Check the two decodability and privacy conditions on a plan.

    1. every information sum appears exactly once in the whole table;
    2. noise exponents are pairwise distinct within alpha and within beta.
    """
    noise_a = plan.noise_alpha
    if len(set(noise_a)) != len(noise_a):
        return DecodabilityReport(False, "duplicate noise exponent in alpha")
    noise_b = plan.noise_beta
    if len(set(noise_b)) != len(noise_b):
        return DecodabilityReport(False, "duplicate noise exponent in beta")
    q = plan.modulus_q
    red = (lambda v: v % q) if q else (lambda v: v)
    counts: dict[int, int] = {}
    for a in plan.alpha:
        for b in plan.beta:
            v = red(a + b)
            counts[v] = counts.get(v, 0) + 1
    for i in plan.info_alpha:
        for j in plan.info_beta:
            v = red(plan.alpha[i] + plan.beta[j])
            if counts[v] != 1:
                return DecodabilityReport(
                    False, f"information sum {v} collides with another table entry",
                    violation=(i, j))
    return DecodabilityReport(True)


def _merged_length(intervals: Iterable[tuple[int, int]]) -> int:
    total = 0
    hi: int | None = None
    for a, b in sorted(intervals):
        if hi is None or a > hi + 1:
            total += b - a + 1
            hi = b
        elif b > hi:
            total += b - hi
            hi = b
    return total


def gasp_server_formula(K: int, L: int, T: int, r: int) -> int:
    """Closed-form server count of the gasp_r layout.

    Evaluated analytically from the block structure of the degree table:
    the low block contributes KL consecutive sums, and the three
    remaining blocks are unions of integer intervals determined by the
    gap progression, merged without materializing the table.  Agrees
    with ``outer_sum(build_gasp_r(...)).n_servers`` everywhere.
    """
    _require(K >= 1 and L >= 1 and T >= 1, "need K, L, T >= 1")
    _require(1 <= r <= min(K, T), f"need 1 <= r <= min(K, T), got r={r}")
    chains = -(-T // r)
    tail = T - (chains - 1) * r
    # shifted by KL: alpha1 x beta2 is one interval; alpha2 x beta1 and
    # alpha2 x beta2 decompose along the chain blocks
    intervals = [(0, K + T - 2)]
    for d in range(chains + L - 1):
        width = r if d <= chains + L - 3 else tail
        intervals.append((d * K, d * K + width - 1))
    for c in range(chains):
        width = r if c < chains - 1 else tail
        intervals.append((K * L + c * K, K * L + c * K + width + T - 2))
    return K * L + _merged_length(intervals)


def optimal_gasp_r(K: int, L: int, T: int) -> ExponentPlan:
    """gasp_r plan minimizing the server count; ties broken by smaller r."""
    best_r = min(range(1, min(K, T) + 1),
                 key=lambda r: (gasp_server_formula(K, L, T, r), r))
    return build_gasp_r(K, L, T, best_r)


def best_classical_plan(K: int, L: int, T: int) -> ExponentPlan:
    """Lowest-server classical plan among gasp_r, gasp_rs, dog_rs and cat_x.

    Ties prefer the earlier family in that order, then smaller (r, s).
    """
    candidates: list[ExponentPlan] = [optimal_gasp_r(K, L, T)]
    if T >= 2:
        for r in range(1, min(K, T) + 1):
            for s in range(1, min(K, T) + 1):
                candidates.append(build_gasp_rs(K, L, T, r, s))
        for r in range(1, T + 1):
            for s in range(1, min(K + r, T) + 1):
                candidates.append(build_dog(K, L, T, r, s))
        if K >= L >= T:
            try:
                candidates.append(build_cat(K, L, T))
            except NoSolutionError:
                pass
    return min(candidates, key=lambda p: outer_sum(p).n_servers)


# ---------------------------------------------------------------------------
# plan records
# ---------------------------------------------------------------------------

def plan_record(plan: ExponentPlan) -> str:
    """One-line text record of a plan, reproducible and parseable."""
    params = " ".join(f"{k}={v}" for k, v in plan.params) or "-"
    fields = [
        f"{plan.family} {params} {plan.K} {plan.L} {plan.T}",
        " ".join(map(str, plan.alpha)),
        " ".join(map(str, plan.beta)),
        " ".join(map(str, plan.info_alpha)),
        " ".join(map(str, plan.info_beta)),
        str(plan.modulus_q) if plan.modulus_q else "-",
    ]
    return " | ".join(fields)


def parse_plan_record(line: str) -> ExponentPlan:
    parts = [chunk.strip() for chunk in line.split("|")]
    if len(parts) != 6:
        raise ValueError(f"expected 6 |-separated fields, got {len(parts)}")
    head = parts[0].split()
    family = head[0]
    K, L, T = (int(v) for v in head[-3:])
    params = tuple((kv.split("=")[0], int(kv.split("=")[1]))
                   for kv in head[1:-3] if kv != "-")
    ints = [tuple(int(v) for v in chunk.split()) if chunk else () for chunk in parts[1:5]]
    q = None if parts[5] == "-" else int(parts[5])
    return ExponentPlan(family=family, K=K, L=L, T=T,
                        alpha=ints[0], beta=ints[1],
                        info_alpha=ints[2], info_beta=ints[3],
                        params=params, modulus_q=q)
