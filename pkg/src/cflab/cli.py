"""Command-line workbench tying the modules into reproducible runs.

Verbs: continuant, enumerate, density, dimension, ensemble, expsum,
dedekind.  Every run prints a one-line summary ending in key=value
pairs and (except continuant) writes its artifacts under --out.  The
summary includes a hash of the semantic configuration, so identical
configurations are recognizable across logs; output paths and cache
location are excluded from the hash because they never affect results.

Exit codes: 0 success, 2 argument or word parse failure, 3 infeasible
parameters (the module's message goes to stderr).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import asdict
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from . import cache as cache_mod
from .cache import atomic_write_text, format_json, format_spectrum_csv, format_table, format_words
from .continuants import Alphabet, cf_value, continuant, word_to_matrix
from .dedekind import (
    NEAR_ZERO_C,
    ded_sweep,
    knuth_yao_max_ratio,
    rho,
    sawtooth_sum,
    v_reduction_remainder,
    V,
)
from .dimension import estimate_delta, hensley_formula, threshold_check
from .ensembles import (
    ConstantsMode,
    InfeasibleParameters,
    NoSplitWindow,
    ScheduleTooShort,
    build_omega,
    golden_ratio_check,
    verify_unique_expansion,
)
from .enumeration import EnumerationQuery, count_grid
from .expsum import nine_domain_report, spectrum

_MODULE_ERRORS = (
    InfeasibleParameters,
    ScheduleTooShort,
    NoSplitWindow,
    ValueError,
    ArithmeticError,
    OverflowError,
)


def _alphabet_type(text: str) -> Alphabet:
    try:
        return Alphabet.from_spec(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _word_type(text: str) -> Tuple[int, ...]:
    if text.strip() == "":
        return ()
    try:
        digits = tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("word digits must be integers, got %r" % text)
    if any(d < 1 for d in digits):
        raise argparse.ArgumentTypeError("word digits must be >= 1, got %r" % text)
    return digits


def _grid_type(text: str) -> Tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("grid must be comma-separated integers, got %r" % text)


def _parse_overrides(items: Optional[List[str]]) -> Dict[str, object]:
    out: Dict[str, object] = {}
    for item in items or []:
        if "=" not in item:
            raise argparse.ArgumentTypeError("override must look like KEY=VALUE, got %r" % item)
        key, _, raw = item.partition("=")
        value: object
        try:
            value = int(raw)
        except ValueError:
            try:
                value = float(raw)
            except ValueError:
                value = raw
        out[key] = value
    return out


def _add_common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--alphabet", type=_alphabet_type, default=Alphabet((1, 2)),
                    help="digit set, e.g. 1,2 or 1-5 or 1-6,8 (default 1,2)")
    sp.add_argument("--bound", type=int, default=100,
                    help="continuant bound / target scale N (default 100)")
    sp.add_argument("--parity", choices=("even", "any"), default="even",
                    help="word length parity (default even)")
    sp.add_argument("--epsilon0", type=float, default=0.2,
                    help="ladder step parameter (default 0.2)")
    sp.add_argument("--mode", choices=("literal", "relaxed"), default="relaxed",
                    help="constants mode (default relaxed)")
    sp.add_argument("--override", action="append", metavar="K=V", default=[],
                    help="named constant override, repeatable")
    sp.add_argument("--seed", type=int, default=0, help="sampling seed (default 0)")
    sp.add_argument("--out", default="out", help="artifact directory (default ./out)")
    sp.add_argument("--cache", default=None,
                    help="enumeration cache directory (env CONTINUANT_CACHE overrides)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cflab",
        description="bounded-continuant laboratory: enumeration, dimension, "
        "ensembles, exponential sums, Dedekind sums",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    sp = sub.add_parser("continuant", help="continuant, value, and matrix of one word")
    sp.add_argument("word", type=_word_type, nargs="?", default=(),
                    help="comma-separated digits, e.g. 2,1,3 (empty for the empty word)")

    for verb, helptext in (
        ("enumerate", "list words with bounded continuant"),
        ("density", "denominator table and covering density"),
        ("dimension", "growth exponent fit and threshold verdicts"),
        ("ensemble", "build a layered ensemble"),
        ("expsum", "spectrum, Parseval, and nine-domain arc report"),
        ("dedekind", "sawtooth/correlation identity sweeps and bounds"),
    ):
        sp = sub.add_parser(verb, help=helptext)
        _add_common(sp)
        if verb == "dimension":
            sp.add_argument("--grid", type=_grid_type, default=None,
                            help="fit grid, comma-separated (default bound/100,bound/10,bound)")
    return parser


def _config_hash(args: argparse.Namespace) -> str:
    payload = {
        "verb": args.verb,
        "alphabet": args.alphabet.label(),
        "bound": args.bound,
        "parity": args.parity,
        "epsilon0": args.epsilon0,
        "mode": args.mode,
        "overrides": sorted(args.override),
        "seed": args.seed,
        "grid": list(getattr(args, "grid", None) or []),
    }
    blob = json.dumps(payload, sort_keys=True).encode("utf-8")
    return hashlib.sha256(blob).hexdigest()[:16]


def _summary(verb: str, conf: str, **kv) -> None:
    parts = ["%s ok config=%s" % (verb, conf)]
    parts.extend("%s=%s" % (k, v) for k, v in kv.items())
    print(" ".join(parts))


def cmd_continuant(args: argparse.Namespace) -> int:
    word = args.word
    value = continuant(word)
    print("continuant: %d" % value)
    if word:
        print("cf value: %s" % cf_value(word))
    else:
        print("cf value: undefined (empty word)")
    mat = word_to_matrix(word)
    print("matrix: [[%d, %d], [%d, %d]]" % (mat.a, mat.b, mat.c, mat.d))
    print("det: %d" % mat.det())
    return 0


def cmd_enumerate(args: argparse.Namespace) -> int:
    conf = _config_hash(args)
    query = EnumerationQuery(args.alphabet, args.bound, args.parity)
    cache_dir = cache_mod.resolve_cache_dir(args.cache)
    pairs = cache_mod.cached_words(query, cache_dir)
    out = Path(args.out) / cache_mod.words_filename(args.alphabet, args.bound, args.parity)
    atomic_write_text(out, format_words(pairs))
    _summary("enumerate", conf, alphabet=args.alphabet.label(), bound=args.bound,
             parity=args.parity, count=len(pairs), file=out)
    return 0


def cmd_density(args: argparse.Namespace) -> int:
    conf = _config_hash(args)
    query = EnumerationQuery(args.alphabet, args.bound, args.parity)
    cache_dir = cache_mod.resolve_cache_dir(args.cache)
    table = cache_mod.cached_table(query, cache_dir)
    out = Path(args.out) / cache_mod.table_filename(args.alphabet, args.bound, args.parity)
    atomic_write_text(out, format_table(table))
    count = table.count
    _summary("density", conf, alphabet=args.alphabet.label(), parity=args.parity,
             coverage="%d/%d" % (count, args.bound),
             density="%.6f" % (count / args.bound), file=out)
    return 0


def cmd_dimension(args: argparse.Namespace) -> int:
    conf = _config_hash(args)
    grid = args.grid or (args.bound // 100, args.bound // 10, args.bound)
    estimate = estimate_delta(args.alphabet, grid)
    verdict = threshold_check(estimate.delta)
    digits = args.alphabet.digits
    closed_form = None
    if digits == tuple(range(1, digits[-1] + 1)) and digits[-1] >= 2:
        closed_form = float(hensley_formula(digits[-1]))
    report = {
        "alphabet": args.alphabet.label(),
        "grid": list(estimate.grid),
        "counts": list(estimate.counts),
        "slope": estimate.slope,
        "intercept": estimate.intercept,
        "delta": estimate.delta,
        "stderr": estimate.stderr,
        "closed_form_full_alphabet": closed_form,
        "thresholds": asdict(verdict),
    }
    out = Path(args.out) / ("dimension_a%s_%s.json" % ("-".join(map(str, digits)), conf))
    atomic_write_text(out, format_json(report))
    _summary("dimension", conf, alphabet=args.alphabet.label(),
             delta="%.6f" % estimate.delta, stderr="%.6f" % estimate.stderr, file=out)
    return 0


def cmd_ensemble(args: argparse.Namespace) -> int:
    conf = _config_hash(args)
    mode = ConstantsMode(mode=args.mode, overrides=_parse_overrides(args.override))
    ens = build_omega(args.bound, args.epsilon0, args.alphabet, mode)
    sched = ens.schedule
    out_dir = Path(args.out)
    layers = []
    golden = []
    for layer in ens.layers:
        member_file = out_dir / ("ensemble_%s_layer%d.txt" % (conf, layer.index))
        pairs = [(w, continuant(w)) for w in layer.pre.members]
        atomic_write_text(member_file, format_words(pairs))
        layers.append({
            "index": layer.index,
            "M": layer.m_scale,
            "alpha": layer.alpha,
            "L": layer.pre.shell_top,
            "p": layer.pre.p,
            "k": layer.pre.k,
            "count": len(layer.pre.members),
            "stage_sizes": list(layer.pre.stage_sizes),
            "members_file": member_file.name,
        })
        golden.append(asdict(golden_ratio_check(layer.pre, mode)))
    size = ens.size()
    expansion: Dict[str, object] = {"checked": False}
    if size <= 20000:
        products, distinct = verify_unique_expansion(ens)
        expansion = {"checked": True, "products": products, "distinct": distinct}
    manifest = {
        "n_scale": sched.n,
        "eps0": sched.eps0,
        "depth": sched.depth,
        "a_max": sched.a_max,
        "mode": ens.mode_label,
        "levels": {str(j): float(sched.level(j)) for j in sched.levels},
        "schedule_diagnostics": sched.diagnostics,
        "layers": layers,
        "golden_ratio": golden,
        "unique_expansion": expansion,
        "size": size,
        "overrides_applied": list(mode.applied),
    }
    out = out_dir / ("ensemble_%s.json" % conf)
    atomic_write_text(out, format_json(manifest))
    _summary("ensemble", conf, n=args.bound, layers=len(ens.layers), size=size, file=out)
    return 0


def cmd_expsum(args: argparse.Namespace) -> int:
    conf = _config_hash(args)
    overrides = _parse_overrides(args.override)
    query = EnumerationQuery(args.alphabet, args.bound, "even")
    cache_dir = cache_mod.resolve_cache_dir(args.cache)
    pairs = cache_mod.cached_words(query, cache_dir)
    spec = spectrum(w for w, _ in pairs)
    if spec.total == 0:
        raise InfeasibleParameters("spectrum", "no even-length words below bound %d" % args.bound)

    if "delta" in overrides:
        delta = float(overrides["delta"])
    else:
        lo = args.bound // 100
        if lo >= 4 * args.alphabet.a_max**2:
            est = estimate_delta(args.alphabet, (lo, args.bound // 10, args.bound))
            delta = est.delta
        else:
            # single-point growth estimate; crude but deterministic
            import math as _math

            delta = _math.log(spec.total) / (2 * _math.log(args.bound))
    report = nine_domain_report(
        spec,
        n_scale=args.bound,
        delta=delta,
        eps0=float(overrides.get("eps0", 1e-3)),
        q0=float(overrides.get("q0", 1.0)),
        samples_per_domain=int(overrides.get("samples", 64)),
        seed=args.seed,
    )
    out_dir = Path(args.out)
    spec_file = out_dir / ("spectrum_%s.csv" % conf)
    atomic_write_text(spec_file, format_spectrum_csv(spec.items()))
    arcs_file = out_dir / ("arcs_%s.json" % conf)
    atomic_write_text(arcs_file, format_json(report))
    _summary("expsum", conf, alphabet=args.alphabet.label(), n=args.bound,
             total=spec.total, support=spec.support, R="%.6g" % report["ratio_R"],
             spectrum=spec_file, arcs=arcs_file)
    return 0


def cmd_dedekind(args: argparse.Namespace) -> int:
    conf = _config_hash(args)
    overrides = _parse_overrides(args.override)
    q_max = int(overrides.get("q_max", 30))
    p2_max = int(overrides.get("p2_max", 24))
    ky_max = int(overrides.get("ky_max", 1000))
    sweep_p = [100, 250, 500]
    sweep_r = [50, 100, 500]

    import math as _math

    failures = 0
    # distribution identity on a grid
    for q in range(1, q_max + 1):
        for p in range(1, q + 1):
            if _math.gcd(p, q) != 1:
                continue
            for j in range(0, 60):
                from fractions import Fraction as _F

                x = _F(j, 60)
                if sawtooth_sum(p, q, x) != rho(q * x):
                    failures += 1
    # correlation symmetry and reduction remainder
    remainder_max = 0.0
    for p2 in range(2, p2_max + 1):
        for c in range(1, p2):
            if _math.gcd(c, p2) != 1:
                continue
            for z in range(0, p2 + 1):
                if V(p2, c, z) != V(p2, c, -z):
                    failures += 1
                rem = v_reduction_remainder(p2, c, z)
                remainder_max = max(remainder_max, abs(float(rem)))
                if abs(rem) > 1:
                    failures += 1

    rows = ded_sweep(sweep_p, sweep_r)
    neg = sum(1 for row in rows if row.slack < 0)
    failures += neg
    ky_ratio, ky_at = knuth_yao_max_ratio(ky_max)

    out_dir = Path(args.out)
    csv_lines = ["y1,y2,P,R,lhs,rhs,slack"]
    csv_lines.extend(
        "%d,%d,%d,%s,%d,%s,%s" % (r.y1, r.y2, r.big_p, r.r, r.lhs, float(r.rhs), float(r.slack))
        for r in rows
    )
    sweep_file = out_dir / ("dedekind_sweep_%s.csv" % conf)
    atomic_write_text(sweep_file, "\n".join(csv_lines) + "\n")
    report = {
        "q_max": q_max,
        "p2_max": p2_max,
        "ky_max": ky_max,
        "failures": failures,
        "reduction_remainder_max": remainder_max,
        "near_zero_c": float(NEAR_ZERO_C),
        "sweep_rows": len(rows),
        "negative_slack_rows": neg,
        "knuth_yao_max_ratio": ky_ratio,
        "knuth_yao_argmax": ky_at,
    }
    report_file = out_dir / ("dedekind_report_%s.json" % conf)
    atomic_write_text(report_file, format_json(report))
    _summary("dedekind", conf, failures=failures, rows=len(rows),
             remainder_max="%.4f" % remainder_max, ky_ratio="%.4f" % ky_ratio,
             file=report_file)
    return 0


_DISPATCH = {
    "continuant": cmd_continuant,
    "enumerate": cmd_enumerate,
    "density": cmd_density,
    "dimension": cmd_dimension,
    "ensemble": cmd_ensemble,
    "expsum": cmd_expsum,
    "dedekind": cmd_dedekind,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _DISPATCH[args.verb](args)
    except _MODULE_ERRORS as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
