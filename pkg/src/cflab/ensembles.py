"""Layered ensembles of bounded-continuant words.

Pipeline, per scale M: take the even-length words whose continuant
lies in [M/(64 A^2), M], keep those that open and close with a run of
p ones (p tied to sqrt(log M) through the Fibonacci sequence), restrict
to the best logarithmic norm shell [L(1 - 1/log L), L], then to the
most frequent word length k.  That is a pre-ensemble.  A geometric
ladder of scales strings 2J+1 pre-ensembles into the full ensemble,
whose elements multiply out injectively because the digit matrices
generate a free semigroup.

Scales that make the literal constants bite are astronomical.  The
relaxed mode keeps the pipeline intact while letting every named
constant be overridden; each override that is actually read gets
logged on the mode object.  Recognized override names:

    A                 alphabet bound used in the depth formula
    delta             trusted growth exponent for cardinality floors
    J                 ladder depth (relaxed only)
    p                 ones-padding run length (relaxed only)
    window_divisor    the 64 A^2 in the norm window (relaxed only)
    layer_factor      the 1 + phi^-2 in the scale recursion (relaxed only)
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from mpmath import mp

from .continuants import Alphabet, Mat2, Word, fibonacci, word_to_matrix
from .enumeration import EnumerationQuery, enumerate_bounded

__all__ = [
    "InfeasibleParameters",
    "ScheduleTooShort",
    "NoSplitWindow",
    "ConstantsMode",
    "PreEnsemble",
    "EnsembleSchedule",
    "EnsembleLayer",
    "Ensemble",
    "EnsembleSplit",
    "GoldenRatioReport",
    "fibonacci_index",
    "build_xi",
    "schedule",
    "build_omega",
    "golden_ratio_check",
    "split",
    "verify_unique_expansion",
    "verify_split_reconstruction",
    "measure_norm_windows",
]


class InfeasibleParameters(ValueError):
    """A construction step emptied out at the given scale."""

    def __init__(self, stage: str, detail: str):
        self.stage = stage
        super().__init__("%s: %s" % (stage, detail))


class ScheduleTooShort(ValueError):
    """The ladder depth came out below its minimum."""


class NoSplitWindow(ValueError):
    """No scale window of the ladder contains the requested cut scale."""


MODES = ("literal", "relaxed")
_LITERAL_OVERRIDES = frozenset({"A", "delta"})


@dataclass
class ConstantsMode:
    """Which constants to use and how strictly to enforce them.

    literal: the named constants exactly, with hard assertions; only
    the trusted inputs A and delta may be supplied via overrides.
    relaxed: any override goes, and every one actually read is logged
    in ``applied``.
    """

    mode: str = "relaxed"
    overrides: Dict[str, object] = field(default_factory=dict)
    applied: List[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ValueError("mode must be one of %r, got %r" % (MODES, self.mode))
        if self.mode == "literal":
            stray = set(self.overrides) - _LITERAL_OVERRIDES
            if stray:
                raise ValueError(
                    "literal mode accepts only %s as overrides, got %s"
                    % (sorted(_LITERAL_OVERRIDES), sorted(stray))
                )

    @property
    def literal(self) -> bool:
        return self.mode == "literal"

    def get(self, name: str, default):
        if name in self.overrides:
            value = self.overrides[name]
            note = "%s=%r (default %r)" % (name, value, default)
            if note not in self.applied:
                self.applied.append(note)
            return value
        return default


def fibonacci_index(m_scale) -> int:
    """Smallest p >= 1 with F(p-1) <= sqrt(log M) <= F(p).

    F(0) = 0, F(1) = 1.  A 1e-9 slack guards exact-boundary inputs
    like M = e^4 against float rounding of the logarithm.
    """
    if not m_scale > 1:
        raise ValueError("scale must exceed 1 for the log to be positive, got %r" % (m_scale,))
    s = math.sqrt(math.log(m_scale))
    p = 1
    while fibonacci(p) < s - 1e-9:
        p += 1
    return p


@dataclass(frozen=True)
class PreEnsemble:
    """One layer's word stock, with the filter pipeline's audit trail."""

    alphabet: Alphabet
    m_scale: float
    window_lo: float
    p: int
    shell_top: float
    shell_lo: float
    k: int
    members: Tuple[Word, ...]
    stage_sizes: Tuple[int, int, int, int]
    shells: int
    checks: Dict[str, object] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.members)


def build_xi(m_scale, alphabet: Alphabet, mode: Optional[ConstantsMode] = None) -> PreEnsemble:
    """Run the four-step filter pipeline at one scale.

    Steps: norm window [M/(64 A^2), M] over even-length words; ones
    padding of run length p at both ends; best logarithmic norm shell
    by pigeonhole (maximal qualifying shell top L); most frequent word
    length k (ties to the smaller k).  The returned object records the
    stage sizes so shrinkage is auditable.
    """
    mode = mode or ConstantsMode()
    a = alphabet.a_max
    if not m_scale > 1:
        raise ValueError("scale must exceed 1, got %r" % (m_scale,))
    divisor = mode.get("window_divisor", 64 * a * a)
    if mode.literal:
        need = 2**9 * a**3 * math.log(m_scale) ** 3
        if m_scale < need:
            raise InfeasibleParameters(
                "scale", "literal mode needs M >= 2^9 A^3 log^3 M = %.6g, got %.6g" % (need, m_scale)
            )
    if 1 not in alphabet.digits:
        raise InfeasibleParameters("ones-padding", "digit 1 is not in the alphabet")
    p_over = mode.get("p", None)
    p = fibonacci_index(m_scale) if p_over is None else int(p_over)
    if p < 0:
        raise ValueError("ones run length must be >= 0, got %r" % (p,))

    bound = int(math.floor(m_scale))
    lo = m_scale / divisor
    ones = (1,) * p
    s1 = 0
    kept: List[Tuple[Word, int]] = []
    for w, val in enumerate_bounded(EnumerationQuery(alphabet, bound, "even")):
        if val < lo:
            continue
        s1 += 1
        if p and (len(w) < p or w[:p] != ones or w[-p:] != ones):
            continue
        kept.append((w, val))
    if s1 == 0:
        raise InfeasibleParameters(
            "norm-window", "no even-length word has continuant in [%.6g, %d]" % (lo, bound)
        )
    if not kept:
        raise InfeasibleParameters(
            "ones-padding", "no norm-window word starts and ends with %d ones" % p
        )
    s2 = len(kept)

    # Shell cover, top down.  Each shell spans [top(1 - 1/log top), top];
    # the last one clamps to the window floor.
    tops: List[float] = [float(m_scale)]
    while True:
        t = tops[-1]
        if t <= math.e:
            break
        nxt = t * (1.0 - 1.0 / math.log(t))
        if nxt < lo:
            break
        tops.append(nxt)
    nshells = len(tops)
    lows = [tops[i + 1] for i in range(nshells - 1)] + [lo]
    shell_members: List[List[Tuple[Word, int]]] = [[] for _ in range(nshells)]
    for w, val in kept:
        for i in range(nshells):
            if val >= lows[i]:
                shell_members[i].append((w, val))
                break
    floor_count = s2 / nshells
    pick = 0
    for i in range(nshells):
        if len(shell_members[i]) >= floor_count - 1e-9:
            pick = i
            break
    shell_top = tops[pick]
    shell_lo = lows[pick]
    chosen = shell_members[pick]
    s3 = len(chosen)

    by_len: Dict[int, List[Word]] = {}
    for w, _ in chosen:
        by_len.setdefault(len(w), []).append(w)
    k = max(sorted(by_len), key=lambda kk: (len(by_len[kk]), -kk))
    members = tuple(sorted(by_len[k]))
    s4 = len(members)

    checks: Dict[str, object] = {
        "length_cap": 4.0 * math.log(shell_top),
        "length_cap_ok": k <= 4.0 * math.log(shell_top),
    }
    delta = mode.get("delta", None)
    if delta is not None:
        with mp.workdps(50):
            lt = mp.mpf(shell_top)
            shell_floor = lt ** (2 * mp.mpf(delta)) / (2**16 * mp.mpf(a) ** 5 * mp.log(lt) ** 3)
            size_floor = lt ** (2 * mp.mpf(delta)) / (2**18 * mp.mpf(a) ** 5 * mp.log(lt) ** 4)
        checks["shell_floor"] = float(shell_floor)
        checks["shell_floor_ok"] = bool(s3 >= shell_floor)
        checks["size_floor"] = float(size_floor)
        checks["size_floor_ok"] = bool(s4 >= size_floor)
    if mode.literal:
        if delta is not None and not checks["size_floor_ok"]:
            raise InfeasibleParameters(
                "length", "layer stock %d below its floor %.6g" % (s4, checks["size_floor"])
            )
        if delta is not None and not checks["shell_floor_ok"]:
            raise InfeasibleParameters(
                "shell", "shell stock %d below its floor %.6g" % (s3, checks["shell_floor"])
            )
        if not checks["length_cap_ok"]:
            raise InfeasibleParameters(
                "length", "word length %d exceeds 4 log L = %.6g" % (k, checks["length_cap"])
            )

    return PreEnsemble(
        alphabet=alphabet,
        m_scale=float(m_scale),
        window_lo=float(lo),
        p=p,
        shell_top=float(shell_top),
        shell_lo=float(shell_lo),
        k=k,
        members=members,
        stage_sizes=(s1, s2, s3, s4),
        shells=nshells,
        checks=checks,
    )


@dataclass
class EnsembleSchedule:
    """The scale ladder N_j, j in [-J-1, J+1], plus per-layer records."""

    n: float
    eps0: float
    depth: int
    a_max: int
    mode_label: str
    levels: Dict[int, object]
    layer_params: List[Dict[str, float]] = field(default_factory=list)
    diagnostics: Dict[str, object] = field(default_factory=dict)

    def level(self, j: int):
        """N_j as an mpmath float (60-digit)."""
        return self.levels[j]

    def identity_report(self) -> Dict[str, float]:
        """Max relative errors of the ladder identities.

        Checked: N_{-m} N_{m+1} = N; the ratio closed form
        N_{m+1}/N_m = N^((eps/(2-eps))(1-eps)^|m|); the power chain
        N_{h-J}^((1-eps)^(h-j)) = N_{j-J}; branch agreement at j = 0, 1;
        and the floor N_m >= N_{m+1}^(1-eps) as a minimum slack.
        """
        with mp.workdps(60):
            e = mp.mpf(self.eps0)
            n = mp.mpf(self.n)
            J = self.depth
            lv = self.levels
            half = 1 / (2 - e)

            prod_err = mp.mpf(0)
            for m in range(-J, J):
                prod_err = max(prod_err, abs(lv[-m] * lv[m + 1] / n - 1))
            ratio_err = mp.mpf(0)
            for m in range(-J - 1, J):
                target = n ** ((e / (2 - e)) * (1 - e) ** abs(m))
                ratio_err = max(ratio_err, abs((lv[m + 1] / lv[m]) / target - 1))
            chain_err = mp.mpf(0)
            for j in range(-1, J + 1):
                for h in range(j + 1, J + 2):
                    lhs = lv[h - J] ** ((1 - e) ** (h - j))
                    chain_err = max(chain_err, abs(lhs / lv[j - J] - 1))
            branch_err = mp.mpf(0)
            for j in (0, 1):
                other = n ** (1 - half * (1 - e) ** j)
                branch_err = max(branch_err, abs(other / lv[j] - 1))
            floor_slack = mp.mpf("inf")
            for m in range(-J - 1, J):
                floor_slack = min(floor_slack, lv[m] / lv[m + 1] ** (1 - e) - 1)
            return {
                "product_rel_err": float(prod_err),
                "ratio_rel_err": float(ratio_err),
                "chain_rel_err": float(chain_err),
                "branch_rel_err": float(branch_err),
                "floor_min_slack": float(floor_slack),
            }


def schedule(
    n, eps0: float, mode: Optional[ConstantsMode] = None, a_max: Optional[int] = None
) -> EnsembleSchedule:
    """Build the scale ladder for target scale N and step eps0.

    The depth J comes from the closed-form count of eps0-steps between
    loglog N and the alphabet-dependent offset; relaxed mode may
    override it (toy scales make the formula negative).  All ladder
    identities are verified before returning.
    """
    mode = mode or ConstantsMode()
    if not 0 < eps0 < 1:
        raise ValueError("eps0 must lie in (0, 1), got %r" % (eps0,))
    if mode.literal and not eps0 < 1 / 2500:
        raise ValueError("literal mode requires eps0 < 1/2500, got %r" % (eps0,))
    a = int(mode.get("A", a_max if a_max is not None else 2))
    if a < 2:
        raise ValueError("alphabet bound must be >= 2, got %r" % (a,))
    j_over = mode.get("J", None)

    with mp.workdps(60):
        nn = mp.mpf(n)
        e = mp.mpf(eps0)
        if j_over is None:
            if nn <= mp.e:
                raise ScheduleTooShort("scale %r too small for the depth formula" % (n,))
            raw = (mp.log(mp.log(nn)) - 4 * mp.log(10 * a) + 2 * mp.log(e)) / (-mp.log(1 - e))
            depth = int(mp.floor(raw))
        else:
            depth = int(j_over)
        if depth < 1:
            raise ScheduleTooShort(
                "depth J = %d < 1 at N = %r; override J or raise N" % (depth, n)
            )
        if mode.literal and depth < 10:
            raise ScheduleTooShort("literal mode requires J >= 10, got %d" % depth)

        half = 1 / (2 - e)
        levels: Dict[int, object] = {}
        for j in range(-depth - 1, 2):
            levels[j] = nn ** (half * (1 - e) ** (1 - j))
        for j in range(2, depth + 1):
            levels[j] = nn ** (1 - half * (1 - e) ** j)
        levels[depth + 1] = nn

        mid = e**2 * (1 - e) ** depth
        eps_lo_ok = bool(mp.mpf(10) ** 4 * a**4 / mp.log(nn) <= mid)
        eps_hi_ok = bool(mid <= mp.mpf(10) ** 5 * a**4 / mp.log(nn))
        if mode.literal and not (eps_lo_ok and eps_hi_ok):
            raise ScheduleTooShort(
                "eps window violated: eps0^2 (1-eps0)^J = %s outside [1e4 A^4/log N, 1e5 A^4/log N]"
                % mp.nstr(mid, 8)
            )

    sched = EnsembleSchedule(
        n=float(n),
        eps0=float(eps0),
        depth=depth,
        a_max=a,
        mode_label=mode.mode,
        levels=levels,
    )
    report = sched.identity_report()
    worst = max(
        report[key]
        for key in ("product_rel_err", "ratio_rel_err", "chain_rel_err", "branch_rel_err")
    )
    if worst > 1e-9 or report["floor_min_slack"] < -1e-12:
        raise AssertionError("ladder identities failed: %r" % (report,))
    sched.diagnostics.update(report)
    sched.diagnostics["eps_window_lower_ok"] = eps_lo_ok
    sched.diagnostics["eps_window_upper_ok"] = eps_hi_ok
    return sched


@dataclass(frozen=True)
class EnsembleLayer:
    index: int
    m_scale: float
    alpha: float
    pre: PreEnsemble


@dataclass(frozen=True)
class Ensemble:
    """2J+1 layers of words; elements are one member per layer."""

    schedule: EnsembleSchedule
    alphabet: Alphabet
    layers: Tuple[EnsembleLayer, ...]
    mode_label: str

    def size(self) -> int:
        out = 1
        for layer in self.layers:
            out *= len(layer.pre.members)
        return out

    def layer_sizes(self) -> Tuple[int, ...]:
        return tuple(len(layer.pre.members) for layer in self.layers)

    def elements(self) -> Iterator[Tuple[Word, ...]]:
        """All factor tuples, lazily, in lexicographic member order."""
        return itertools.product(*(layer.pre.members for layer in self.layers))

    @staticmethod
    def element_word(parts: Sequence[Word]) -> Word:
        return tuple(itertools.chain.from_iterable(parts))

    @staticmethod
    def element_matrix(parts: Sequence[Word]) -> Mat2:
        m = Mat2.identity()
        for w in parts:
            m = m * word_to_matrix(w)
        return m

    def norms(self) -> Iterator[int]:
        for parts in self.elements():
            yield self.element_matrix(parts).norm()


def build_omega(
    n, eps0: float, alphabet: Alphabet, mode: Optional[ConstantsMode] = None
) -> Ensemble:
    """String 2J+1 pre-ensembles along the ladder into one ensemble.

    Layer scales follow M_{j+1} = N_{j+1-J} / ((1 + phi^-2) alpha_j N_{j-J})
    where alpha_j = L_j / M_j is layer j's realized shell ratio.  Any
    layer failure propagates with its index attached.
    """
    mode = mode or ConstantsMode()
    sched = schedule(n, eps0, mode, a_max=alphabet.a_max)
    depth = sched.depth
    with mp.workdps(60):
        default_factor = float(1 + (2 / (1 + mp.sqrt(5))) ** 2)
    layer_factor = float(mode.get("layer_factor", default_factor))
    divisor = mode.get("window_divisor", 64 * alphabet.a_max**2)

    layers: List[EnsembleLayer] = []
    m_scale = float(sched.level(1 - depth))
    for j in range(1, 2 * depth + 2):
        try:
            pre = build_xi(m_scale, alphabet, mode)
        except InfeasibleParameters as exc:
            raise InfeasibleParameters(
                "layer %d/%d %s" % (j, 2 * depth + 1, exc.stage), str(exc)
            ) from exc
        alpha = pre.shell_top / m_scale
        if not (1.0 / divisor - 1e-12 <= alpha <= 1.0 + 1e-12):
            raise AssertionError("layer %d shell ratio %r outside [1/%s, 1]" % (j, alpha, divisor))
        layers.append(EnsembleLayer(index=j, m_scale=m_scale, alpha=alpha, pre=pre))
        sched.layer_params.append(
            {"M": m_scale, "alpha": alpha, "L": pre.shell_top, "p": pre.p, "k": pre.k}
        )
        if j <= 2 * depth:
            nxt = float(sched.level(j + 1 - depth))
            cur = float(sched.level(j - depth))
            m_scale = nxt / (layer_factor * alpha * cur)

    ens = Ensemble(schedule=sched, alphabet=alphabet, layers=tuple(layers), mode_label=mode.mode)
    if mode.literal:
        delta = mode.get("delta", None)
        if delta is not None:
            size = ens.size()
            with mp.workdps(50):
                nn = mp.mpf(sched.n)
                lo = nn ** (2 * mp.mpf(delta) - mp.mpf(eps0))
                hi = 9 * nn ** (2 * mp.mpf(delta))
            if not lo <= size <= hi:
                raise InfeasibleParameters(
                    "ensemble-size", "size %d outside [%s, %s]" % (size, mp.nstr(lo), mp.nstr(hi))
                )
        for row in measure_norm_windows(ens):
            if not (row["low_ok"] and row["high_ok"]):
                raise AssertionError("prefix norm window violated at layer %d: %r" % (row["layer"], row))
    return ens


def measure_norm_windows(ensemble: Ensemble) -> List[Dict[str, object]]:
    """Measured prefix-product norm ranges against the ladder windows.

    After layer j the window is [(1/(70 A^2)) N_{j-J}, 1.01 N_{j-J}].
    Exhaustive, so meant for toy ensembles.
    """
    sched = ensemble.schedule
    a = sched.a_max
    depth = sched.depth
    rows: List[Dict[str, object]] = []
    mats = [Mat2.identity()]
    for layer in ensemble.layers:
        gens = [word_to_matrix(w) for w in layer.pre.members]
        mats = [m1 * m2 for m1 in mats for m2 in gens]
        norms = [m.norm() for m in mats]
        level = float(sched.level(layer.index - depth))
        low = level / (70 * a * a)
        high = 1.01 * level
        rows.append(
            {
                "layer": layer.index,
                "min_norm": min(norms),
                "max_norm": max(norms),
                "window_low": low,
                "window_high": high,
                "low_ok": min(norms) >= low,
                "high_ok": max(norms) <= high,
            }
        )
    return rows


def verify_unique_expansion(ensemble: Ensemble) -> Tuple[int, int]:
    """(number of factor tuples, number of distinct product matrices).

    Equality is the unique-expansion property; exhaustive by design.
    """
    seen = set()
    count = 0
    for parts in ensemble.elements():
        count += 1
        seen.add(ensemble.element_matrix(parts).as_rows())
    return count, len(seen)


@dataclass(frozen=True)
class GoldenRatioReport:
    p: int
    shell_top: float
    count: int
    max_dev_tail: Optional[float]
    max_dev_head: Optional[float]
    mechanism_bound: Optional[float]
    window_bound: Optional[float]
    mechanism_ok: bool
    window_ok: bool
    skipped: bool


def golden_ratio_check(
    xi: PreEnsemble, mode: Optional[ConstantsMode] = None
) -> GoldenRatioReport:
    """Max deviation of member matrix ratios b/d and c/d from 1/phi.

    The ones padding forces both continued fractions to open with p
    ones, pinning them to the cylinder around 1/phi; the bound actually
    asserted is 1/F(p)^2 + |1/phi - F(p)/F(p+1)|, and literal mode
    additionally demands 2/log L.  Deviations are computed at 60 digits
    with a 1e-40 slack so exact-boundary members cannot flap.
    """
    mode = mode or ConstantsMode()
    if xi.p < 1 or not xi.members:
        warnings.warn("golden-ratio check skipped: p = %d, %d members" % (xi.p, len(xi.members)))
        return GoldenRatioReport(
            p=xi.p,
            shell_top=xi.shell_top,
            count=len(xi.members),
            max_dev_tail=None,
            max_dev_head=None,
            mechanism_bound=None,
            window_bound=None,
            mechanism_ok=True,
            window_ok=True,
            skipped=True,
        )
    with mp.workdps(60):
        inv_phi = 2 / (1 + mp.sqrt(5))
        dev_tail = mp.mpf(0)
        dev_head = mp.mpf(0)
        for w in xi.members:
            m = word_to_matrix(w)
            dev_tail = max(dev_tail, abs(mp.mpf(m.b) / m.d - inv_phi))
            dev_head = max(dev_head, abs(mp.mpf(m.c) / m.d - inv_phi))
        fp = fibonacci(xi.p)
        fp1 = fibonacci(xi.p + 1)
        mechanism = mp.mpf(1) / fp**2 + abs(inv_phi - mp.mpf(fp) / fp1)
        window = 2 / mp.log(mp.mpf(xi.shell_top))
        margin = mp.mpf("1e-40")
        mech_ok = bool(dev_tail <= mechanism + margin and dev_head <= mechanism + margin)
        wnd_ok = bool(dev_tail <= window + margin and dev_head <= window + margin)
        if not mech_ok:
            raise ArithmeticError(
                "padding mechanism violated: deviations (%s, %s) exceed %s"
                % (mp.nstr(dev_tail, 10), mp.nstr(dev_head, 10), mp.nstr(mechanism, 10))
            )
        if mode.literal and not wnd_ok:
            raise AssertionError(
                "golden-ratio window 2/log L = %s violated: (%s, %s)"
                % (mp.nstr(window, 10), mp.nstr(dev_tail, 10), mp.nstr(dev_head, 10))
            )
        return GoldenRatioReport(
            p=xi.p,
            shell_top=xi.shell_top,
            count=len(xi.members),
            max_dev_tail=float(dev_tail),
            max_dev_head=float(dev_head),
            mechanism_bound=float(mechanism),
            window_bound=float(window),
            mechanism_ok=mech_ok,
            window_ok=wnd_ok,
            skipped=False,
        )


@dataclass(frozen=True)
class EnsembleSplit:
    """A two-way cut of the layer list, in both representations.

    j_left layers form the left factor of the first representation;
    the complementary cut at h_right = 2J - j_left + 1 gives the
    second.  windows maps piece name to its expected (low, high) norm
    window, measured to what the toy actually achieved.
    """

    m_scale: float
    j_left: int
    h_right: int
    h1: float
    h3: float
    windows: Dict[str, Tuple[float, float]]
    measured: Dict[str, Tuple[float, float]]
    window_flags: Dict[str, bool]
    eligible_literal: bool
    level_window_ok: bool


def _norm_range(layers: Sequence[EnsembleLayer]) -> Tuple[int, int]:
    gens = [[word_to_matrix(w) for w in layer.pre.members] for layer in layers]
    lo = None
    hi = None
    for combo in itertools.product(*gens):
        m = Mat2.identity()
        for g in combo:
            m = m * g
        v = m.norm()
        lo = v if lo is None or v < lo else lo
        hi = v if hi is None or v > hi else hi
    return (1, 1) if lo is None else (lo, hi)


def split(ensemble: Ensemble, m_scale, mode: Optional[ConstantsMode] = None) -> EnsembleSplit:
    """Cut the ensemble at scale M into left and right factor products.

    The cut index is the smallest j in [2, 2J] whose ladder window
    [N_{j-1-J}, N_{j-J}] contains M; the mirrored cut sits at
    h = 2J - j + 1.  Windows for the left piece, the right tail, and
    the complementary right piece are reported; literal mode asserts
    the first two, relaxed mode just measures.
    """
    mode = mode or ConstantsMode()
    sched = ensemble.schedule
    depth = sched.depth
    a = sched.a_max
    e = sched.eps0
    n = sched.n
    if not m_scale > 1:
        raise ValueError("cut scale must exceed 1, got %r" % (m_scale,))

    need = 1e5 * a**4 / e**2
    eligible = math.log(m_scale) >= need and math.log(m_scale) <= math.log(n) - need
    if mode.literal and not eligible:
        raise NoSplitWindow(
            "cut scale %r outside the literal eligibility window exp(+-1e5 A^4/eps^2)" % (m_scale,)
        )

    j_left = None
    with mp.workdps(60):
        mm = mp.mpf(m_scale)
        for j in range(2, 2 * depth + 1):
            if sched.level(j - 1 - depth) <= mm <= sched.level(j - depth):
                j_left = j
                break
        if j_left is None:
            raise NoSplitWindow(
                "cut scale %r outside every ladder window [%s, %s]"
                % (m_scale, mp.nstr(sched.level(1 - depth), 8), mp.nstr(sched.level(depth), 8))
            )
        lvl = sched.level(j_left - depth)
        level_window_ok = bool(lvl ** (1 - mp.mpf(e)) <= mm <= lvl)
    h_right = 2 * depth - j_left + 1

    h1 = 1.03 * float(m_scale) ** (1 + 2 * e)
    h3 = 80 * a**2.1 * float(m_scale) ** (1 + 2 * e)
    windows = {
        "left": (float(m_scale) / (70 * a * a), h1),
        "right_tail": (float(m_scale) / (150 * a * a), h3),
        "right_complement": (n / (140 * a * a * h1), 73 * a * a * n / float(m_scale)),
    }
    measured = {
        "left": _norm_range(ensemble.layers[:j_left]),
        "right_tail": _norm_range(ensemble.layers[h_right:]),
        "right_complement": _norm_range(ensemble.layers[j_left:]),
        "left_complement": _norm_range(ensemble.layers[:h_right]),
    }
    flags = {
        name: windows[name][0] <= measured[name][0] and measured[name][1] <= windows[name][1]
        for name in windows
    }
    if mode.literal and not (flags["left"] and flags["right_tail"]):
        raise AssertionError("cut norm windows violated: %r vs %r" % (measured, windows))
    return EnsembleSplit(
        m_scale=float(m_scale),
        j_left=j_left,
        h_right=h_right,
        h1=h1,
        h3=h3,
        windows=windows,
        measured=measured,
        window_flags=flags,
        eligible_literal=eligible,
        level_window_ok=level_window_ok,
    )


def verify_split_reconstruction(ensemble: Ensemble, cut: EnsembleSplit) -> bool:
    """Left-product times right-product equals the full product, both cuts.

    Exhaustive over all factor tuples; toy ensembles only.
    """
    for boundary in (cut.j_left, cut.h_right):
        for parts in ensemble.elements():
            left = Ensemble.element_matrix(parts[:boundary])
            right = Ensemble.element_matrix(parts[boundary:])
            whole = Ensemble.element_matrix(parts)
            if (left * right).as_rows() != whole.as_rows():
                return False
    return True
