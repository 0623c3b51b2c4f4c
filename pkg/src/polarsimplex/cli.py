"""Command line front end.

Two layers: `reproduce <target>` re-runs a pinned computation and compares
every quantity against its expected value (exit 0 on match, 1 on mismatch
with a per-check diff, 2 when a rank engine reports Unstable), and generic
subcommands (apolar, saturate, hilbert, limit, check, tangent,
plucker-span, sample) that route to the owning module for user-supplied
input files.

Determinism contract: with the same seed and configuration the JSON output
is byte-identical -- no timestamps, no floats, exact values only.  Global
flags: --seed (env POLARSIMPLEX_SEED), --primes (env POLARSIMPLEX_PRIMES),
--dmax, --exact, --output {text,json}.

File formats are documented in docs/FORMATS.md: ideals as a `ring S n=<n>`
header plus one generator per line, quadrics as a single polynomial in the
dual variables, matrices as row-major rational lists.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import random
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import grobner, linalg
from .apolarity import (LinearSubspace, Quadric, apolar_ideal, apply_diff,
                        inverse_quadric, polarity_conditions)
from .errors import DomainError, Unstable
from .grassmann import (fit_rnc_degree, plucker_quadric_space,
                        restrict_quadrics, ruling_curve, stretch_hilbert,
                        vps_span)
from .ideals import GradedIdeal, hilbert_function, ideal_to_text
from .limits import weight_limit
from .rings import format_form, parse_form
from .tangent import (excess_degree_arithmetic, hilb_tangent, piece_weights,
                      syz_tangent, torus_weights)
from .vps import (check_vps, polar_simplex_sample, standard_split_quadric,
                  unsaturated_limit_family)

EXIT_PASS = 0
EXIT_MISMATCH = 1
EXIT_UNSTABLE = 2
EXIT_USAGE = 64


class CliError(Exception):
    """Reported to stderr with a dedicated exit code."""

    def __init__(self, message, code=EXIT_USAGE):
        super().__init__(message)
        self.code = code


@dataclass
class RunConfig:
    seed: int = 0
    primes: tuple | None = None
    dmax: int | None = None
    exact: bool = False
    output: str = "text"


# ---------------------------------------------------------------------------
# configuration and input files

def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _parse_primes(text):
    try:
        primes = tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise CliError("--primes wants a comma list of integers, got %r"
                       % text)
    if not primes:
        raise CliError("--primes list is empty")
    for p in primes:
        if not _is_prime(p):
            raise CliError("%d is not prime" % p)
    return primes


def _config_from(args):
    seed = args.seed
    if seed is None:
        env = os.environ.get("POLARSIMPLEX_SEED", "").strip()
        try:
            seed = int(env) if env else 0
        except ValueError:
            raise CliError("POLARSIMPLEX_SEED must be an integer, got %r"
                           % env)
    primes = None
    if getattr(args, "primes", None):
        primes = _parse_primes(args.primes)
    else:
        env = os.environ.get("POLARSIMPLEX_PRIMES", "").strip()
        if env:
            primes = _parse_primes(env)
    return RunConfig(seed=seed, primes=primes,
                     dmax=getattr(args, "dmax", None),
                     exact=bool(getattr(args, "exact", False)),
                     output=args.output)


def _read_text(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise CliError("cannot read %s: %s" % (path, e.strerror or e))


def _read_ideal_file(path):
    """The ideal file format, with parse errors naming file and line."""
    ring = n = None
    gens = []
    for lineno, raw in enumerate(_read_text(path).splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ring is None:
            parts = line.split()
            if (len(parts) != 3 or parts[0] != "ring"
                    or parts[1] not in ("S", "T")
                    or not parts[2].startswith("n=")):
                raise CliError("%s:%d: expected header 'ring S n=<n>', "
                               "got %r" % (path, lineno, raw))
            ring = parts[1]
            try:
                n = int(parts[2][2:])
            except ValueError:
                raise CliError("%s:%d: bad variable count %r"
                               % (path, lineno, parts[2]))
            continue
        try:
            gens.append(parse_form(line, ring=ring, n=n))
        except ValueError as e:
            raise CliError("%s:%d: %s" % (path, lineno, e))
    if ring is None:
        raise CliError("%s: missing 'ring' header line" % path)
    return GradedIdeal(ring, n, gens)


def _read_form_file(path, ring=None, n=None):
    """One polynomial, possibly over several lines; # comments allowed."""
    body = " ".join(raw.split("#", 1)[0].strip()
                    for raw in _read_text(path).splitlines())
    if not body.strip():
        raise CliError("%s: no polynomial found" % path)
    try:
        return parse_form(body, ring=ring, n=n)
    except ValueError as e:
        raise CliError("%s: %s" % (path, e))


def _read_quadric_file(path):
    form = _read_form_file(path)
    try:
        return Quadric(form)
    except DomainError as e:
        raise CliError("%s: %s" % (path, e))


# ---------------------------------------------------------------------------
# output plumbing

def _enc(x):
    """JSON-safe encoding: exact values only, Fractions as strings."""
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else str(x)
    if isinstance(x, str):
        return x
    if isinstance(x, dict):
        return {str(k): _enc(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_enc(v) for v in x]
    if hasattr(x, "values") and hasattr(x, "eventual"):  # HilbertFunction
        return {"values": [int(v) for v in x.values], "eventual": x.eventual}
    return str(x)


def _show(x):
    return json.dumps(_enc(x), sort_keys=True)


def _emit(cfg, payload, lines):
    if cfg.output == "json":
        sys.stdout.write(json.dumps(_enc(payload), sort_keys=True, indent=2,
                                    separators=(",", ": ")) + "\n")
    else:
        sys.stdout.write("\n".join(lines) + "\n")


def _ck(name, computed, expected, ok=None):
    if ok is None:
        ok = computed == expected
    return {"name": name, "computed": computed, "expected": expected,
            "provenance": "pinned", "ok": bool(ok)}


# ---------------------------------------------------------------------------
# reproduction targets

_TARGETS = {}


def _target(name):
    def register(fn):
        _TARGETS[name] = fn
        return fn
    return register


def _gens_sorted(ideal):
    return sorted(format_form(g) for g in ideal.generators)


@_target("ex-1.1")
def _t_ex11(cfg):
    ideal = GradedIdeal.from_strings("S", 4, [
        "x1*x3 - x2^2", "x2*x3 - x1*x4", "x2*x4", "x3*x4", "x4^2", "x3^2"])
    q = standard_split_quadric(4)
    lim = weight_limit(ideal, (0, 1, 0, 1), dmax=cfg.dmax)
    expected = GradedIdeal.from_strings("S", 4, [
        "x2^4", "x4^2", "x2*x4", "x3*x4", "x1^2*x4",
        "x2*x3 - x1*x4", "x3^2", "x1*x3"])
    sat = grobner.saturate(lim)
    expected_sat = GradedIdeal.from_strings("S", 4, ["x3", "x4", "x2^4"])
    qperp = q.perp()
    return [
        _ck("limit_generators", _gens_sorted(lim),
            _gens_sorted(expected.minimalized())),
        _ck("limit_graded_equal_to_5", lim.agrees_to(expected, 5), True),
        _ck("saturation", _gens_sorted(sat), _gens_sorted(expected_sat)),
        _ck("limit_inside_q_perp", qperp.contains_ideal(lim), True),
        _ck("saturation_inside_q_perp", qperp.contains_ideal(sat), False),
    ]


@_target("eq-ideal")
def _t_eq_ideal(cfg):
    q = standard_split_quadric(4)
    base = GradedIdeal.from_strings("S", 4, ["x3", "x4"])
    inter = base.intersect(q.perp()).minimalized()
    expected = GradedIdeal.from_strings("S", 4, [
        "x1*x3", "x2*x3 - x1*x4", "x3^2", "x2*x4", "x3*x4", "x4^2"])
    return [
        _ck("generators", _gens_sorted(inter), _gens_sorted(expected)),
        _ck("generator_count", len(inter.generators), 6),
    ]


@_target("inv-quadric-n5")
def _t_inv_quadric(cfg):
    q = Quadric(parse_form("y1*y3 + y2*y4 + y5^2"))
    inv = inverse_quadric(q)
    expected = parse_form("4*x1*x3 + 4*x2*x4 + x5^2")
    return [
        _ck("inverse", format_form(inv.form), format_form(expected)),
        _ck("double_inverse", inverse_quadric(inv).form == q.form, True),
    ]


@_target("ex-3.7")
def _t_ex37(cfg):
    q = standard_split_quadric(5)
    v1 = check_vps(unsaturated_limit_family(1), q, seed=cfg.seed)
    v0 = check_vps(unsaturated_limit_family(0), q, seed=cfg.seed)
    sat_hf = v0.details.get("sat_hilbert")
    checks = [
        _ck("t1_saturated", v1.saturated, True),
        _ck("t1_apolar", v1.details.get("apolar_degree_2"), True),
        _ck("t1_in_vps", v1.in_vps, True),
        _ck("t0_saturated", v0.saturated, False),
        _ck("t0_apolar", v0.details.get("apolar_degree_2"), True),
        _ck("t0_in_vps", v0.in_vps, True),
        _ck("t0_saturation_hilbert",
            list(sat_hf.values[:5]) if sat_hf else None, [1, 3, 4, 5, 5]),
    ]
    return checks


@_target("lemma-3.4")
def _t_lemma34(cfg):
    trials, agreed, positives = _polarity_trials(200, cfg.seed)
    return [
        _ck("trials", trials, 200),
        _ck("all_six_agree", agreed, 200),
        _ck("positive_instances_seen", positives > 0, True),
    ]


@_target("tangent-9")
def _t_tangent9(cfg):
    q = standard_split_quadric(4)
    base = GradedIdeal.from_strings("S", 4, ["x3", "x4"])
    V = base.intersect(q.perp()).piece(2)
    rep = syz_tangent(V, ambient=q)
    return [
        _ck("syz_tangent_dimension", rep.dimension, 9),
        _ck("chart_size", len(V), 6),
    ]


@_target("weights-2")
def _t_weights2(cfg):
    q = standard_split_quadric(4)
    base = GradedIdeal.from_strings("S", 4, ["x3", "x4"])
    V = base.intersect(q.perp()).piece(2)
    rep = syz_tangent(V, ambient=q)
    ws = torus_weights(rep, "sl2-n4")
    pw = piece_weights(V, "sl2-n4")
    return [
        _ck("tangent_weights", list(ws), [2] * 9),
        _ck("ideal_piece_weights", list(pw), [-2, -2, -2, 0, 0, 0]),
    ]


@_target("span-38")
def _t_span38(cfg):
    q = standard_split_quadric(4)
    rep = vps_span(q, samples=200, seed=cfg.seed, primes=cfg.primes,
                   exact=cfg.exact)
    return [
        _ck("projective_dimension", rep.projective_dimension, 38),
        _ck("stabilized", rep.stabilized, True),
        _ck("exact_confirmed", rep.exact_confirmed, True),
        _ck("sample_count_at_least_200", rep.sample_count >= 200, True),
    ]


@_target("quadrics-1050-380")
def _t_quadrics(cfg):
    space = plucker_quadric_space(6, 9, seed=cfg.seed, primes=cfg.primes)
    q = standard_split_quadric(4)
    span = vps_span(q, samples=200, seed=cfg.seed, primes=cfg.primes,
                    exact=cfg.exact)
    restricted = restrict_quadrics(space, span)
    return [
        _ck("quadric_space_dimension", space.dimension, 1050),
        _ck("span_projective_dimension", span.projective_dimension, 38),
        _ck("restricted_rank", restricted, 380),
    ]


@_target("curves-6")
def _t_curves(cfg):
    q = standard_split_quadric(4)
    params = [(1, t) for t in range(-5, 6)] + [(0, 1)]
    ranks = []
    fits = []
    rows = []
    for ruling in (1, 2):
        vecs = [ruling_curve(q, ruling, ab) for ab in params]
        ranks.append(linalg.rank([list(v.coords) for v in vecs]))
        fits.append(fit_rnc_degree(list(zip(params, vecs)), seed=cfg.seed))
        rows.extend(list(v.coords) for v in vecs)
    combined = linalg.rank(rows)
    return [
        _ck("ruling_1_rank", ranks[0], 7),
        _ck("ruling_2_rank", ranks[1], 7),
        _ck("combined_rank", combined, 14),
        _ck("fit_degree_ruling_1", fits[0], 6),
        _ck("fit_degree_ruling_2", fits[1], 6),
    ]


@_target("excess-362")
def _t_excess(cfg):
    out = excess_degree_arithmetic(6, 10)
    return [
        _ck("per_curve", out["per_curve"], 26),
        _ck("total", out["total"], 362),
        _ck("adjunction", out["adjunction"], -2),
        _ck("adjunction_identity", out["adjunction"] == 10 - 12, True),
    ]


def _random_full_quadric(ring, n, rng):
    while True:
        A = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                A[i][j] = A[j][i] = Fraction(rng.randint(-5, 5))
        q = Quadric.from_matrix(ring, n, A)
        if q.rank() == n:
            return q


def _random_subspace(ring, n, dim, rng):
    while True:
        rows = [[Fraction(rng.randint(-5, 5)) for _ in range(n)]
                for _ in range(dim)]
        if linalg.rank([row[:] for row in rows]) == dim:
            return LinearSubspace(ring, n, rows)


def _polarity_trials(trials, seed):
    """Seeded (L, N, q) suite: count how often the six conditions agree.

    Half the trials take N = q(L^perp), so condition (3) holds by
    construction and a correct implementation must turn all six on.
    """
    rng = random.Random("lemma34:%d" % seed)
    agreed = 0
    positives = 0
    for t in range(trials):
        n = 4 if t % 2 == 0 else 5
        q = _random_full_quadric("T", n, rng)
        l = rng.randrange(1, n)
        L = _random_subspace("T", n, l, rng)
        if t % 4 < 2:
            image = [apply_diff(u, q.form) for u in L.perp().basis()]
            N = LinearSubspace("T", n, [f.vector() for f in image])
        else:
            N = _random_subspace("T", n, n - l, rng)
        rep = polarity_conditions(L, N, q)
        agreed += rep.agree()
        positives += rep.all_hold()
    return trials, agreed, positives


def cmd_reproduce(args, cfg):
    fn = _TARGETS.get(args.target)
    if fn is None:
        raise CliError("unknown target %r (have: %s)"
                       % (args.target, ", ".join(sorted(_TARGETS))))
    checks = fn(cfg)
    passed = all(c["ok"] for c in checks)
    payload = {"target": args.target, "passed": passed, "checks": checks}
    lines = ["target %s" % args.target]
    for c in checks:
        lines.append("  %s: %s  expected %s  (%s)  %s"
                     % (c["name"], _show(c["computed"]),
                        _show(c["expected"]), c["provenance"],
                        "ok" if c["ok"] else "MISMATCH"))
    lines.append("%s %s" % ("PASS" if passed else "FAIL", args.target))
    _emit(cfg, payload, lines)
    return EXIT_PASS if passed else EXIT_MISMATCH


# ---------------------------------------------------------------------------
# generic subcommands

def cmd_apolar(args, cfg):
    form = _read_form_file(args.quadric)
    ideal = apolar_ideal(form, dmax=cfg.dmax)
    payload = {"ring": ideal.ring, "n": ideal.n,
               "generators": [format_form(g) for g in ideal.generators]}
    _emit(cfg, payload, ideal_to_text(ideal).splitlines())
    return EXIT_PASS


def cmd_saturate(args, cfg):
    ideal = _read_ideal_file(args.ideal)
    sat = grobner.saturate(ideal)
    payload = {"ring": sat.ring, "n": sat.n,
               "generators": [format_form(g) for g in sat.generators],
               "was_saturated": grobner.is_saturated(ideal)}
    _emit(cfg, payload, ideal_to_text(sat).splitlines())
    return EXIT_PASS


def cmd_hilbert(args, cfg):
    ideal = _read_ideal_file(args.ideal)
    hf = hilbert_function(ideal, dmax=cfg.dmax)
    payload = {"values": [int(v) for v in hf.values], "eventual": hf.eventual}
    _emit(cfg, payload, ["h = %r" % hf])
    return EXIT_PASS


def _parse_weights(text, n):
    try:
        w = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise CliError("--weights wants a comma list of integers, got %r"
                       % text)
    if len(w) != n:
        raise CliError("expected %d weights, got %d" % (n, len(w)))
    return w


def cmd_limit(args, cfg):
    ideal = _read_ideal_file(args.ideal)
    w = _parse_weights(args.weights, ideal.n)
    lim = weight_limit(ideal, w, dmax=cfg.dmax)
    sat = grobner.saturate(lim)
    payload = {"ring": lim.ring, "n": lim.n, "weights": list(w),
               "limit": [format_form(g) for g in lim.generators],
               "saturation": [format_form(g) for g in sat.generators]}
    lines = (ideal_to_text(lim).splitlines()
             + ["", "# saturation"]
             + ideal_to_text(sat).splitlines())
    _emit(cfg, payload, lines)
    return EXIT_PASS


def cmd_check(args, cfg):
    ideal = _read_ideal_file(args.ideal)
    q = _read_quadric_file(args.quadric)
    verdict = check_vps(ideal, q, seed=cfg.seed)
    full = verdict.as_dict()
    payload = {k: full[k] for k in ("in_vps", "saturated", "sbl_necessary",
                                    "kri", "line", "hilbert")}
    lines = ["%s: %s" % (k, _show(v)) for k, v in sorted(payload.items())]
    lines += ["details.%s: %s" % (k, _show(v))
              for k, v in sorted(full["details"].items())]
    _emit(cfg, payload, lines)
    return EXIT_PASS


def cmd_tangent(args, cfg):
    ideal = _read_ideal_file(args.ideal)
    if args.model == "syz":
        ambient = None
        if args.ambient_quadric:
            ambient = _read_quadric_file(args.ambient_quadric)
        rep = syz_tangent(ideal, ambient=ambient)
    else:
        rep = hilb_tangent(ideal)
    weights = None
    if args.preset or args.torus:
        action = args.preset or tuple(
            int(t) for t in args.torus.split(","))
        weights = torus_weights(rep, action)
    payload = {"model": args.model, "dimension": rep.dimension,
               "truncation_degree": rep.truncation_degree,
               "weights": list(weights) if weights is not None else None}
    lines = ["model %s" % args.model,
             "dimension %d" % rep.dimension,
             "truncation_degree %d" % rep.truncation_degree]
    if weights is not None:
        lines.append("weights %s" % _show(list(weights)))
    _emit(cfg, payload, lines)
    return EXIT_PASS


def _dump_matrix(path, rows):
    """Row-major rational text: one row per line, entries space-separated."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("matrix %d %d\n" % (len(rows), len(rows[0]) if rows else 0))
        for row in rows:
            fh.write(" ".join(str(Fraction(c)) for c in row) + "\n")


def cmd_plucker_span(args, cfg):
    q = _read_quadric_file(args.quadric)
    if q.n != args.n:
        raise CliError("--n %d does not match the quadric (n=%d)"
                       % (args.n, q.n))
    rep = vps_span(q, samples=args.samples, seed=cfg.seed,
                   primes=cfg.primes, exact=cfg.exact)
    payload = rep.as_dict()
    if args.dump:
        _dump_matrix(args.dump, rep.basis_vectors)
        payload["dump"] = args.dump
    if args.stretch:
        k = math.comb(q.n, 2)
        m = math.comb(q.n + 1, 2) - 1
        space = plucker_quadric_space(k, m, seed=cfg.seed, primes=cfg.primes)
        restricted = restrict_quadrics(space, rep)
        hs = stretch_hilbert(space, rep, dmax=cfg.dmax or 3)
        payload["stretch"] = {"quadric_space": space.as_dict(),
                              "restricted_rank": restricted,
                              "hilbert": hs}
    lines = ["%s: %s" % (k2, _show(v)) for k2, v in sorted(payload.items())]
    _emit(cfg, payload, lines)
    return EXIT_PASS


def cmd_sample(args, cfg):
    q = _read_quadric_file(args.quadric)
    out = []
    for i in range(args.count):
        s = polar_simplex_sample(q, seed=cfg.seed + i)
        out.append({"points": [[_enc(Fraction(c)) for c in p]
                               for p in s.points],
                    "weights": [_enc(Fraction(w)) for w in s.weights],
                    "verified": s.verify()})
    payload = {"samples": out}
    lines = []
    for i, s in enumerate(out):
        lines.append("sample %d (verified %s)" % (i, _show(s["verified"])))
        for p, w in zip(s["points"], s["weights"]):
            lines.append("  %s  weight %s" % (_show(p), _show(w)))
    _emit(cfg, payload, lines)
    return EXIT_PASS


# ---------------------------------------------------------------------------
# argument parsing

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write("%s: error: %s\n" % (self.prog, message))
        raise SystemExit(EXIT_USAGE)


def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None,
                        help="RNG seed (default: POLARSIMPLEX_SEED or 0)")
    common.add_argument("--primes", default=None,
                        help="comma list of primes for modular ranks "
                             "(default: POLARSIMPLEX_PRIMES or built-in)")
    common.add_argument("--dmax", type=int, default=None,
                        help="override the degree cutoff")
    common.add_argument("--exact", action="store_true",
                        help="rational elimination instead of modular")
    common.add_argument("--output", "-o", choices=("text", "json"),
                        default="text", help="report format")

    parser = _Parser(prog="polarsimplex",
                     description="Exact computations with apolar ideals, "
                                 "polar simplices and their degenerations.")
    sub = parser.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser("reproduce", parents=[common],
                       help="re-run a pinned computation and compare")
    p.add_argument("target", metavar="target",
                   help="one of: %s" % ", ".join(sorted(_TARGETS)))
    p.set_defaults(run=cmd_reproduce)

    p = sub.add_parser("apolar", parents=[common],
                       help="apolar ideal of a form")
    p.add_argument("--quadric", required=True, metavar="FILE",
                   help="polynomial file (dual-variable grammar)")
    p.set_defaults(run=cmd_apolar)

    p = sub.add_parser("saturate", parents=[common],
                       help="saturation of a graded ideal")
    p.add_argument("--ideal", required=True, metavar="FILE")
    p.set_defaults(run=cmd_saturate)

    p = sub.add_parser("hilbert", parents=[common],
                       help="Hilbert function of a quotient")
    p.add_argument("--ideal", required=True, metavar="FILE")
    p.set_defaults(run=cmd_hilbert)

    p = sub.add_parser("limit", parents=[common],
                       help="flat limit under a weight vector")
    p.add_argument("--ideal", required=True, metavar="FILE")
    p.add_argument("--weights", required=True, metavar="W1,W2,...")
    p.set_defaults(run=cmd_limit)

    p = sub.add_parser("check", parents=[common],
                       help="classify an ideal against a quadric")
    p.add_argument("--ideal", required=True, metavar="FILE")
    p.add_argument("--quadric", required=True, metavar="FILE")
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("tangent", parents=[common],
                       help="tangent space dimensions and torus weights")
    p.add_argument("--model", required=True, choices=("syz", "hilb"))
    p.add_argument("--ideal", required=True, metavar="FILE")
    p.add_argument("--torus", default=None, metavar="W1,...,WN",
                   help="integer weight per variable")
    p.add_argument("--preset", default=None,
                   help="named torus action (e.g. sl2-n4)")
    p.add_argument("--ambient-quadric", default=None, metavar="FILE",
                   help="restrict syz images to the quadric's apolar space")
    p.set_defaults(run=cmd_tangent)

    p = sub.add_parser("plucker-span", parents=[common],
                       help="span of sampled apolar systems in Pluecker "
                            "coordinates")
    p.add_argument("--n", type=int, required=True,
                   help="number of variables of the quadric")
    p.add_argument("--quadric", required=True, metavar="FILE")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--dump", default=None, metavar="FILE",
                   help="write the basis vectors as a matrix file")
    p.add_argument("--stretch", action="store_true",
                   help="also compute the Grassmannian quadric space, its "
                        "restriction, and degreewise quotient dimensions")
    p.set_defaults(run=cmd_plucker_span)

    p = sub.add_parser("sample", parents=[common],
                       help="seeded polar simplices for a quadric")
    p.add_argument("--quadric", required=True, metavar="FILE")
    p.add_argument("--count", type=int, default=1)
    p.set_defaults(run=cmd_sample)

    return parser


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    if not getattr(args, "command", None):
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        cfg = _config_from(args)
        return args.run(args, cfg)
    except CliError as e:
        sys.stderr.write("error: %s\n" % e)
        return e.code
    except Unstable as e:
        sys.stderr.write("Unstable: %s\n" % e)
        return EXIT_UNSTABLE
    except DomainError as e:
        sys.stderr.write("%s: %s\n" % (type(e).__name__, e))
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
