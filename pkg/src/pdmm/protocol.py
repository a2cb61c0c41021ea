"""End-to-end private distributed matrix multiplication simulation.

One run: slice A into K row bands and B into L column bands, mask both
with fresh noise blocks, evaluate the encoding polynomials at the
frame's points to get per-server shares, multiply the shares at each
server, then recover the block products either classically (invert the
generator on all table exponents) or through the transfer matrix (two
independent instances per download).  All arithmetic is exact, so a
decoded product either equals the true one or the run is reported
broken; there is no tolerance anywhere.

Runs are deterministic functions of the seed.  Sampling draws points,
inputs, and noise from one seeded generator in a fixed order, and every
frame is validated (generator invertibility plus the privacy rank
audit) before use, resampling as needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .degree_tables import ExponentPlan, check_decodable, outer_sum, plan_record
from .feasibility import check_feasible, check_feasible_low_privacy, longest_run
from .gf import FieldContext, SingularMatrixError, element_of_order, is_prime, next_prime
from .grs import EvalFrame, ShapeMismatchError, shifted_dual_multipliers
from .nsumbox import TransferMatrix, apply_box, build_transfer

__all__ = [
    "ProtocolConfig",
    "Transcript",
    "AuditReport",
    "RateReport",
    "FieldTooSmallError",
    "ResampleExhaustedError",
    "NotFeasibleError",
    "SingularGeneratorError",
    "default_field",
    "sample_frame",
    "encode_shares",
    "server_compute",
    "decode_classical",
    "decode_quantum",
    "privacy_audit",
    "rate_report",
    "run_protocol",
    "transcript_dump",
]


class FieldTooSmallError(ValueError):
    """The field cannot host the required number of distinct nonzero points."""


class ResampleExhaustedError(RuntimeError):
    """No admissible frame found within the resampling budget."""


class NotFeasibleError(ValueError):
    """The plan's interference run is too short for quantum decoding."""


class SingularGeneratorError(SingularMatrixError):
    """Generator matrix was singular at decode time (precluded by sampling)."""


@dataclass(frozen=True)
class ProtocolConfig:
    """Inputs of one simulation run.

    ``dims`` is (rows_a, inner, cols_b) for the full matrices; rows_a
    must divide into K bands and cols_b into L bands.  ``prime`` is a
    floor for the field modulus (the default picks the smallest usable
    prime).  Quantum mode requires the plan's feasibility check to pass.
    """

    plan: ExponentPlan
    dims: tuple[int, int, int] | None = None
    mode: str = "classical"
    seed: int = 0
    prime: int | None = None
    max_resample: int = 64
    audit_cap: int = 10_000

    def __post_init__(self):
        if self.mode not in ("classical", "quantum"):
            raise ValueError(f"mode must be classical or quantum, got {self.mode!r}")
        self.block_dims  # validates divisibility eagerly

    @property
    def block_dims(self) -> tuple[int, int, int]:
        """Per-block shape (rows of A_k, inner, cols of B_l)."""
        dims = self.dims if self.dims is not None else (self.plan.K, 1, self.plan.L)
        rows_a, inner, cols_b = dims
        if rows_a % self.plan.K or cols_b % self.plan.L:
            raise ShapeMismatchError(
                f"dims {dims} not divisible into {self.plan.K} x {self.plan.L} bands")
        return rows_a // self.plan.K, inner, cols_b // self.plan.L


@dataclass(frozen=True)
class AuditReport:
    ok: bool
    checked: int
    exhaustive: bool
    failures: tuple[tuple[int, ...], ...] = ()


@dataclass(frozen=True)
class RateReport:
    rate: Fraction
    n_servers: int
    instances: int


@dataclass(frozen=True)
class Transcript:
    """Everything one run produced, enough to replay or dump it."""

    plan: ExponentPlan
    modulus: int
    mode: str
    seed: int
    points: tuple[int, ...]
    a_inputs: tuple[np.ndarray, ...]
    b_inputs: tuple[np.ndarray, ...]
    noise_f: tuple[np.ndarray, ...]
    noise_g: tuple[np.ndarray, ...]
    shares_f: tuple[np.ndarray, ...]
    shares_g: tuple[np.ndarray, ...]
    responses: tuple[np.ndarray, ...]
    decoded: tuple[np.ndarray, ...]
    decode_ok: bool
    audit: AuditReport
    rate: RateReport


# ---------------------------------------------------------------------------
# field and frame selection
# ---------------------------------------------------------------------------

def default_field(plan: ExponentPlan, floor: int | None = None) -> FieldContext:
    """Smallest workable prime field for a plan.

    Cyclic plans need a prime p = 1 (mod q) so that order-q points
    exist; other plans take the smallest prime >= max(N + 2,
    largest table exponent + 2, floor).
    """
    table = outer_sum(plan)
    if plan.modulus_q:
        q = plan.modulus_q
        p = max(q + 1, floor or 0)
        p += (-(p - 1)) % q  # align to 1 mod q
        while not is_prime(p):
            p += q
        return FieldContext(p)
    lo = max(table.n_servers + 2, max(table.exponents) + 2, floor or 0)
    return FieldContext(next_prime(lo))


def _exponent_index(plan: ExponentPlan):
    table = outer_sum(plan)
    exps = table.exponents
    return table, exps


def sample_frame(cfg: ProtocolConfig, ctx: FieldContext,
                 rng: np.random.Generator) -> tuple[EvalFrame, AuditReport]:
    """Draw evaluation points until the frame is fully admissible.

    Admissible means the N x N generator on all table exponents is
    invertible and the privacy rank audit passes.  Cyclic plans use the
    fixed coset of an order-q element instead of sampling.  Quantum mode
    attaches the shifted-dual multipliers at the interference run start.
    """
    plan = cfg.plan
    table, exps = _exponent_index(plan)
    n = table.n_servers
    shift = 0
    if cfg.mode == "quantum":
        run = longest_run(table.interference)
        shift = run[0] if run else 0

    def finish(points) -> tuple[EvalFrame, AuditReport] | None:
        try:
            gen = ctx.vandermonde(points, exps)
        except ValueError:
            return None
        if ctx.mat_rank(gen) != n:
            return None
        audit = privacy_audit(plan, ctx, points, cap=cfg.audit_cap, rng=rng)
        if not audit.ok:
            return None
        u = tuple(1 for _ in points)
        v = None
        if cfg.mode == "quantum":
            v = tuple(int(x) for x in
                      shifted_dual_multipliers(ctx, points, u, shift, shift))
        frame = EvalFrame(ctx=ctx, points=tuple(int(x) for x in points), u=u,
                          v=v, shift_l1=shift, shift_l2=shift)
        return frame, audit

    if plan.modulus_q:
        q = plan.modulus_q
        if (ctx.p - 1) % q != 0:
            raise FieldTooSmallError(f"no order-{q} points in F_{ctx.p}")
        omega = element_of_order(q, ctx.p)
        points = [pow(omega, i, ctx.p) for i in range(q)]
        got = finish(points)
        if got is None:
            raise ResampleExhaustedError("fixed cyclic frame failed validation")
        return got

    if ctx.p - 1 < n:
        raise FieldTooSmallError(f"F_{ctx.p} has {ctx.p - 1} nonzero points, need {n}")
    for _ in range(cfg.max_resample):
        points = (rng.choice(ctx.p - 1, size=n, replace=False) + 1).tolist()
        got = finish(points)
        if got is not None:
            return got
    raise ResampleExhaustedError(
        f"no admissible frame within {cfg.max_resample} attempts over F_{ctx.p}")


# ---------------------------------------------------------------------------
# encoding, server work, decoding
# ---------------------------------------------------------------------------

def _coeff_stack(plan, vec_exponents, info_idx, blocks, noise):
    """Coefficient per exponent position: data block or noise block."""
    coeffs = []
    data = iter(blocks)
    masks = iter(noise)
    info = set(info_idx)
    for i in range(len(vec_exponents)):
        coeffs.append(next(data) if i in info else next(masks))
    return np.stack(coeffs)


def _power_matrix(ctx, points, exponents):
    return np.array([[pow(int(x), int(e), ctx.p) for e in exponents] for x in points],
                    dtype=np.int64)


def encode_shares(plan: ExponentPlan, ctx: FieldContext, frame: EvalFrame,
                  a_blocks, b_blocks, noise_f, noise_g):
    """Per-server share pair (f_n, g_n) for one instance.

    f_n sums data and noise blocks weighted by point powers at the alpha
    exponents; g_n likewise over beta.  Shapes: a_blocks are K arrays
    (ra, inner), b_blocks are L arrays (inner, cb), noise blocks match.
    """
    ca = _coeff_stack(plan, plan.alpha, plan.info_alpha, a_blocks, noise_f)
    cb = _coeff_stack(plan, plan.beta, plan.info_beta, b_blocks, noise_g)
    pa = _power_matrix(ctx, frame.points, plan.alpha)
    pb = _power_matrix(ctx, frame.points, plan.beta)
    n = len(frame.points)
    f = ctx.matmul(pa, ca.reshape(ca.shape[0], -1)).reshape((n,) + ca.shape[1:])
    g = ctx.matmul(pb, cb.reshape(cb.shape[0], -1)).reshape((n,) + cb.shape[1:])
    return f, g


def server_compute(ctx: FieldContext, shares_f, shares_g) -> np.ndarray:
    """Each server multiplies its two shares: response_n = f_n g_n."""
    if shares_f.shape[0] != shares_g.shape[0]:
        raise ShapeMismatchError("share counts differ")
    return np.stack([ctx.matmul(f, g) for f, g in zip(shares_f, shares_g)])


def _solve_generator(ctx, frame, exps, responses):
    n = len(frame.points)
    gen = ctx.vandermonde(frame.points, exps)
    flat = ctx.asarray(responses).reshape(n, -1)
    try:
        return ctx.mat_solve(gen, flat)
    except SingularMatrixError as exc:
        raise SingularGeneratorError("generator singular at decode time") from exc


def _assemble(plan, ctx, coeff_rows, exps_order, block_shape):
    """Pick the information coefficients out and lay them as the K x L grid."""
    where = {e: i for i, e in enumerate(exps_order)}
    q = plan.modulus_q
    red = (lambda v: v % q) if q else (lambda v: v)
    grid = []
    for i in plan.info_alpha:
        row = []
        for j in plan.info_beta:
            e = red(plan.alpha[i] + plan.beta[j])
            row.append(coeff_rows[where[e]].reshape(block_shape))
        grid.append(row)
    return np.block(grid)


def decode_classical(plan: ExponentPlan, ctx: FieldContext, frame: EvalFrame,
                     responses, block_shape) -> np.ndarray:
    """Solve the generator system and assemble the product from info sums."""
    _, exps = _exponent_index(plan)
    coeffs = _solve_generator(ctx, frame, exps, responses)
    return _assemble(plan, ctx, coeffs, exps, block_shape)


def quantum_layout(plan: ExponentPlan):
    """Column order of the quantum readout: [run | info sums | leftover].

    Info sums are listed in row-major (k, l) order.  Raises when the
    interference run is shorter than half the server count.
    """
    table = outer_sum(plan)
    n = table.n_servers
    run = longest_run(table.interference)
    if len(run) < -(-n // 2):
        raise NotFeasibleError(
            f"interference run {len(run)} < ceil({n}/2); plan not quantum-extendable")
    q = plan.modulus_q
    red = (lambda v: v % q) if q else (lambda v: v)
    info = [red(plan.alpha[i] + plan.beta[j])
            for i in plan.info_alpha for j in plan.info_beta]
    rest = sorted(table.interference - set(run))
    return run, info, rest


def quantum_transfer(plan: ExponentPlan, ctx: FieldContext, frame: EvalFrame) -> TransferMatrix:
    """Transfer matrix for a plan: dual-scaled run columns stabilized."""
    if frame.v is None:
        raise ValueError("frame carries no dual multipliers; sample in quantum mode")
    run, info, rest = quantum_layout(plan)
    n = len(frame.points)
    cols = list(run) + info + rest
    qmat = _power_matrix(ctx, frame.points, cols)
    u = ctx.asarray(frame.u)[:, None]
    v = ctx.asarray(frame.v)[:, None]
    fl, ce = n // 2, -(-n // 2)
    g = np.block([[u * qmat[:, :fl] % ctx.p, np.zeros((n, ce), dtype=np.int64)],
                  [np.zeros((n, fl), dtype=np.int64), v * qmat[:, :ce] % ctx.p]])
    h = np.block([[u * qmat[:, fl:] % ctx.p, np.zeros((n, fl), dtype=np.int64)],
                  [np.zeros((n, ce), dtype=np.int64), v * qmat[:, ce:] % ctx.p]])
    return build_transfer(ctx, g, h)


def decode_quantum(plan: ExponentPlan, ctx: FieldContext, frame: EvalFrame,
                   responses_pair, block_shape,
                   tm: TransferMatrix | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Recover both instances' products from one batch of 2N operands.

    Servers put the first instance on the X slot scaled by u and the
    second on the Z slot scaled by v; the receiver applies the box and
    reads the information coordinates of each half.
    """
    if tm is None:
        tm = quantum_transfer(plan, ctx, frame)
    run, info, rest = quantum_layout(plan)
    n = len(frame.points)
    fl, ce = n // 2, -(-n // 2)
    r1 = ctx.asarray(responses_pair[0]).reshape(n, -1)
    r2 = ctx.asarray(responses_pair[1]).reshape(n, -1)
    u = ctx.asarray(frame.u)[:, None]
    v = ctx.asarray(frame.v)[:, None]
    x = np.vstack([u * r1 % ctx.p, v * r2 % ctx.p])
    y = apply_box(tm, x)
    kl = plan.K * plan.L
    info_order = list(info)
    first = y[len(run) - fl:len(run) - fl + kl]
    second = y[len(run):len(run) + kl]
    out = []
    for rows in (first, second):
        where = {e: i for i, e in enumerate(info_order)}
        q = plan.modulus_q
        red = (lambda val: val % q) if q else (lambda val: val)
        grid = []
        for i in plan.info_alpha:
            row = []
            for j in plan.info_beta:
                e = red(plan.alpha[i] + plan.beta[j])
                row.append(rows[where[e]].reshape(block_shape))
            grid.append(row)
        out.append(np.block(grid))
    return out[0], out[1]


# ---------------------------------------------------------------------------
# privacy, rates, orchestration
# ---------------------------------------------------------------------------

def privacy_audit(plan: ExponentPlan, ctx: FieldContext, points,
                  cap: int = 10_000, rng: np.random.Generator | None = None) -> AuditReport:
    """Rank check that noise acts as a one-time pad on any T server views.

    For every T-subset of servers (exhaustive when C(N, T) <= cap, else
    a seeded sample of cap subsets) the noise-exponent power matrix must
    have full row rank, separately for the alpha and beta sides.
    """
    t = plan.T
    n = len(points)
    if t == 0:
        return AuditReport(ok=True, checked=0, exhaustive=True)
    sides = [exps for exps in (plan.noise_alpha, plan.noise_beta) if exps]
    powers = [_power_matrix(ctx, points, exps) for exps in sides]
    total = math.comb(n, t)
    exhaustive = total <= cap
    if exhaustive:
        subsets = combinations(range(n), t)
        checked = total
    else:
        if rng is None:
            rng = np.random.default_rng(0)
        subsets = [tuple(sorted(rng.choice(n, size=t, replace=False).tolist()))
                   for _ in range(cap)]
        checked = cap
    failures = []
    for subset in subsets:
        rows = list(subset)
        for mat in powers:
            if ctx.mat_rank(mat[rows]) != t:
                failures.append(tuple(rows))
                break
        if len(failures) >= 10:
            break
    return AuditReport(ok=not failures, checked=checked,
                       exhaustive=exhaustive, failures=tuple(failures))


def rate_report(plan: ExponentPlan, mode: str) -> RateReport:
    """Useful block products per downloaded symbol, exact."""
    n = outer_sum(plan).n_servers
    instances = 2 if mode == "quantum" else 1
    return RateReport(rate=Fraction(instances * plan.K * plan.L, n),
                      n_servers=n, instances=instances)


def rate_ratio(quantum: RateReport, classical: RateReport) -> Fraction:
    """Exact gain of one scheme over another."""
    return quantum.rate / classical.rate


def run_protocol(cfg: ProtocolConfig) -> Transcript:
    """Full deterministic run: sample, encode, compute, decode, verify."""
    plan = cfg.plan
    report = check_decodable(plan)
    if not report.ok:
        raise ValueError(f"plan is not decodable: {report.reason}")
    if cfg.mode == "quantum":
        feas = (check_feasible_low_privacy(plan)
                if plan.family in ("lp_equal", "lp_general") else check_feasible(plan))
        if not feas.feasible:
            raise NotFeasibleError(
                f"interference run {len(feas.run)} < {feas.threshold} for {plan.family}"
                f"({plan.K},{plan.L},{plan.T}); quantum mode unavailable")
    ctx = default_field(plan, cfg.prime)
    rng = np.random.default_rng(cfg.seed)
    frame, audit = sample_frame(cfg, ctx, rng)
    ra, inner, cb = cfg.block_dims
    instances = 2 if cfg.mode == "quantum" else 1
    n_noise_f = len(plan.alpha) - plan.K
    n_noise_g = len(plan.beta) - plan.L

    def draw(*shape):
        return rng.integers(0, ctx.p, size=shape, dtype=np.int64)

    a_in, b_in, nf, ng, sf, sg, resp = [], [], [], [], [], [], []
    for _ in range(instances):
        a = draw(plan.K * ra, inner)
        b = draw(inner, plan.L * cb)
        noise_f = draw(n_noise_f, ra, inner)
        noise_g = draw(n_noise_g, inner, cb)
        a_blocks = [a[k * ra:(k + 1) * ra] for k in range(plan.K)]
        b_blocks = [b[:, j * cb:(j + 1) * cb] for j in range(plan.L)]
        f, g = encode_shares(plan, ctx, frame, a_blocks, b_blocks, noise_f, noise_g)
        a_in.append(a); b_in.append(b)
        nf.append(noise_f); ng.append(noise_g)
        sf.append(f); sg.append(g)
        resp.append(server_compute(ctx, f, g))

    shape = (ra, cb)
    if cfg.mode == "classical":
        decoded = [decode_classical(plan, ctx, frame, resp[0], shape)]
    else:
        one, two = decode_quantum(plan, ctx, frame, resp, shape)
        decoded = [one, two]
    ok = all(np.array_equal(dec, ctx.matmul(a, b))
             for dec, a, b in zip(decoded, a_in, b_in))
    return Transcript(
        plan=plan, modulus=ctx.p, mode=cfg.mode, seed=cfg.seed,
        points=frame.points,
        a_inputs=tuple(a_in), b_inputs=tuple(b_in),
        noise_f=tuple(nf), noise_g=tuple(ng),
        shares_f=tuple(sf), shares_g=tuple(sg),
        responses=tuple(resp), decoded=tuple(decoded),
        decode_ok=ok, audit=audit, rate=rate_report(plan, cfg.mode),
    )


def transcript_dump(t: Transcript) -> str:
    """Line-oriented text dump suitable for regression snapshots."""
    lines = [
        f"modulus {t.modulus}",
        f"mode {t.mode}",
        f"seed {t.seed}",
        f"plan {plan_record(t.plan)}",
        "points " + " ".join(map(str, t.points)),
    ]
    for m, (a, b) in enumerate(zip(t.a_inputs, t.b_inputs), start=1):
        lines.append(f"input A {m} " + " ".join(map(str, a.ravel())))
        lines.append(f"input B {m} " + " ".join(map(str, b.ravel())))
    for m, (f, g) in enumerate(zip(t.shares_f, t.shares_g), start=1):
        for srv in range(f.shape[0]):
            lines.append(f"share f {m} {srv + 1} " + " ".join(map(str, f[srv].ravel())))
            lines.append(f"share g {m} {srv + 1} " + " ".join(map(str, g[srv].ravel())))
    for m, r in enumerate(t.responses, start=1):
        for srv in range(r.shape[0]):
            lines.append(f"response {m} {srv + 1} " + " ".join(map(str, r[srv].ravel())))
    for m, d in enumerate(t.decoded, start=1):
        lines.append(f"decoded {m} " + " ".join(map(str, d.ravel())))
    lines.append(f"verdict decode {'ok' if t.decode_ok else 'FAIL'}")
    lines.append(f"verdict audit {'ok' if t.audit.ok else 'FAIL'} "
                 f"checked={t.audit.checked} exhaustive={t.audit.exhaustive}")
    lines.append(f"rate {t.rate.instances * t.plan.K * t.plan.L}/{t.rate.n_servers}")
    return "\n".join(lines) + "\n"
