"""Command-line driver: fixture generation, the verification pipeline,
single named checks, and structural report diffs.

Fixtures and reports are JSON with a canonical serialization (sorted keys,
two-space indent, trailing newline), so identical inputs produce
byte-identical files.  Timings and progress go to stderr only; nothing
time-dependent enters a report.  Exit codes: 0 all checks pass, 1 at least
one failure, 2 inconclusive (a degree cap or search ladder ran out), 3
unusable input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from .cohomology import (charge2_instanton_table, exceptional_pair_check_y,
                         h1_pattern_check, line_ideal_membership)
from .correspondence import (ANet, c_ideal, classify, find_c_points,
                             find_lines_on_y, is_regular,
                             line_on_hypersurface, pfaffian_hypersurface,
                             phi_fiber, psi_fiber, q_quartic,
                             random_regular_net, splitting_type_on_line,
                             x_ideal)
from .fields import GF, QQ, FieldElement, field_from_name
from .ideals import (DEFAULT_DEGREE_CAP, DEFAULT_PRIME, SECOND_PRIME,
                     fit_hilbert_polynomial)
from .matrices import ExactMatrix
from .multipoly import MultiPoly
from .verify import SamplePlan, jw1_section_check, jw_pointwise

FIXTURE_SCHEMA = "pfaffian-net-fixture/1"
REPORT_SCHEMA = "pfaffian-net-report/1"
ENV_PREFIX = "PFAFFIAN_NETS_"
HILBERT_CAP = 9  # the curve fit stabilizes at t = 4; margin, then stop

EXIT_PASS, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_INPUT = 0, 1, 2, 3


# -- serialization ------------------------------------------------------------

def canonical_json(obj):
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _jsonable(x):
    if isinstance(x, FieldElement):
        return _jsonable(x.value)
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else str(x)
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    return repr(x)


def net_to_fixture(net, provenance=None):
    doc = {
        "schema": FIXTURE_SCHEMA,
        "field": net.field.name,
        "n": net.n,
        "two_m": net.two_m,
        "matrices": [[_jsonable(v) for v in tri]
                     for tri in net.upper_triangles()],
    }
    if provenance:
        doc["provenance"] = dict(provenance)
    return doc


def _entry_in(v):
    if isinstance(v, str):
        return Fraction(v)
    if isinstance(v, list):
        return tuple(v)
    return v


def net_from_fixture(doc):
    for key in ("schema", "field", "n", "two_m", "matrices"):
        if key not in doc:
            raise ValueError("fixture is missing %r" % key)
    if doc["schema"] != FIXTURE_SCHEMA:
        raise ValueError("unsupported fixture schema %r" % doc["schema"])
    field = field_from_name(doc["field"])
    tris = [[_entry_in(v) for v in tri] for tri in doc["matrices"]]
    if len(tris) != doc["n"]:
        raise ValueError("fixture lists %d matrices but n = %d"
                         % (len(tris), doc["n"]))
    return ANet.from_upper_triangles(field, doc["two_m"], tris)


def fingerprint(doc):
    """Identity of the net itself: provenance does not enter the hash."""
    core = {k: doc[k] for k in ("schema", "field", "n", "two_m", "matrices")}
    return hashlib.sha256(canonical_json(core).encode()).hexdigest()


def _read_json(path):
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def _write_text(path, text):
    if path == "-" or path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _field_from_token(tok):
    tok = tok.strip()
    if tok.upper() == "QQ":
        raise ValueError("verification fields must be finite")
    if tok.upper().startswith("GF"):
        return field_from_name(tok.upper().replace(" ", ""))
    q = int(tok)
    if q < 2:
        raise ValueError("field size %d" % q)
    p = 2
    while p * p <= q:
        if q % p == 0:
            break
        p += 1
    if q % p:
        p = q
    k = 0
    qq = q
    while qq % p == 0:
        qq //= p
        k += 1
    if qq != 1:
        raise ValueError("%d is not a prime power" % q)
    return GF(p, k) if k > 1 else GF(p)


# -- option resolution --------------------------------------------------------

def _resolve(args, attr, env, default, conv=None):
    v = getattr(args, attr, None)
    if v is None:
        v = os.environ.get(ENV_PREFIX + env)
    if v is None:
        return default
    return conv(v) if conv else v


def _options(args):
    fields_spec = _resolve(args, "fields", "FIELDS", "2,3")
    fields = [_field_from_token(t) for t in str(fields_spec).split(",") if t]
    prime = _resolve(args, "prime", "PRIME", DEFAULT_PRIME, int)
    second = SECOND_PRIME if prime != SECOND_PRIME else DEFAULT_PRIME
    return {
        "fields": fields,
        "prime": prime,
        "second_prime": second,
        "cap": _resolve(args, "degree_cap", "DEGREE_CAP",
                        DEFAULT_DEGREE_CAP, int),
        "samples": _resolve(args, "samples", "SAMPLES", 1000, int),
        "seed": _resolve(args, "seed", "SEED", 0, int),
        "workers": getattr(args, "workers", None) or 1,
    }


# -- pipeline stages ----------------------------------------------------------

def _status_verdict(status):
    return {"EMPTY": "pass", "NONEMPTY": "fail",
            "INCONCLUSIVE": "inconclusive"}[status]


def _stage_regularity(ctx):
    res = is_regular(ctx["net"], prime=ctx["prime"], cap=ctx["cap"])
    return _status_verdict(res.status), {
        "status": res.status,
        "witness": _jsonable(res.witness),
        "detail": _jsonable(res.detail),
    }


def _stage_classification(ctx):
    cls = classify(ctx["net"], fields=ctx["fields"], prime=ctx["prime"],
                   cap=ctx["cap"])
    ctx["classification"] = cls
    sets_ok = all(d["sets_equal"] for d in cls.per_field.values())
    if not sets_ok:
        verdict = "fail"
    elif cls.y_smooth.status == "INCONCLUSIVE":
        verdict = "inconclusive"
    else:
        verdict = "pass"
    return verdict, {
        "regular": cls.regular.status,
        "y_smooth": cls.y_smooth.status,
        "per_field": _jsonable(cls.per_field),
        "all_smooth": cls.all_smooth,
    }


def _poly_digest(poly):
    text = poly.render()
    exps, coeff = poly.leading()
    lead = MultiPoly(poly.field, poly.nvars, {exps: coeff}).render()
    return {
        "degree": poly.degree(),
        "terms": len(poly.terms),
        "leading": lead,
        "sha256": hashlib.sha256(text.encode()).hexdigest(),
    }


def _stage_polynomials(ctx):
    cubic = pfaffian_hypersurface(ctx["net"])
    quartic = q_quartic(ctx["net"])
    payload = {"y_cubic": _poly_digest(cubic),
               "q_quartic": _poly_digest(quartic)}
    ok = payload["y_cubic"]["degree"] == 3 \
        and payload["q_quartic"]["degree"] == 4
    return ("pass" if ok else "fail"), payload


def _stage_hilbert_c(ctx):
    net = ctx["net"]
    if (net.n, net.two_m) != (5, 6):
        return "skipped", {"reason": "curve fit is the n=5, 2m=6 case"}
    data = fit_hilbert_polynomial(
        c_ideal(net), expected_dim=1, cap=HILBERT_CAP,
        primes=(ctx["prime"], ctx["second_prime"]))
    fitted = list(data.fitted) if data.fitted else None
    ok = fitted == [Fraction(-25), Fraction(25)]
    return ("pass" if ok else "fail"), {
        "fitted": _jsonable(fitted),
        "scheme_degree": data.scheme_degree,
        "arithmetic_genus": data.arithmetic_genus,
        "stable_from": data.stable_from,
        "cap": HILBERT_CAP,
        "primes": [ctx["prime"], ctx["second_prime"]],
    }


def _stage_charge2(ctx):
    net = ctx["net"]
    if (net.n, net.two_m) != (5, 6):
        return "skipped", {"reason": "instanton table is the n=5, 2m=6 case"}
    table = charge2_instanton_table(net)
    return ("pass" if table.all_pass else "fail"), table.as_dict()


def _stage_h1_window(ctx):
    table = h1_pattern_check(ctx["net"])
    return ("pass" if table.all_pass else "fail"), table.as_dict()


def _stage_exceptional_pair(ctx):
    verdict = exceptional_pair_check_y()
    return ("pass" if verdict.passed else "fail"), verdict.as_dict()


def _line_key(field, a1, a2):
    _, red = ExactMatrix(field, [list(a1), list(a2)]).rref()
    return tuple(tuple(row) for row in red.rows)


def _certify_line_on_x(reduced, pencil):
    """Evaluate every generator of the X ideal at deg+1 distinct parameter
    points of the pencil; vanishing there pins a degree-deg binary form to
    zero."""
    f = reduced.field
    elements = [e.value for e in f.elements()]
    params = [(f.one_value, f.zero_value)] \
        + [(x, f.one_value) for x in elements]
    for gen in x_ideal(reduced).generators:
        need = gen.degree() + 1
        if need > len(params):
            return False, "field too small to certify degree %d" % \
                gen.degree()
        for s, t in params[:need]:
            pt = pencil.point_at(s, t)
            if gen.evaluate(list(pt.coords)):
                return False, "generator does not vanish on the pencil"
    return True, None


def _stage_lines(ctx):
    net = ctx["net"]
    if (net.n, net.two_m) != (5, 6):
        return "skipped", {"reason": "line correspondence is the n=5, "
                                     "2m=6 case"}
    found = find_c_points(net)
    if found is None:
        return "inconclusive", {"reason": "no curve points found on the "
                                          "small-field ladder"}
    field, points = found
    reduced = net.map_field(field)
    cubic = pfaffian_hypersurface(reduced)
    records = []
    failures = 0
    m_keys = set()
    for c in points:
        rec = {"c": _jsonable(tuple(c))}
        pencil = phi_fiber(reduced, c)
        ok_x, why = _certify_line_on_x(reduced, pencil)
        rec["l_on_x"] = "pass" if ok_x else "fail"
        if why:
            rec["l_on_x_detail"] = why
        kind, line = psi_fiber(reduced, c)
        if kind != "line":
            rec["m_on_y"] = "fail"
            rec["m_detail"] = "psi fiber is a %s" % kind
            failures += 1
            records.append(rec)
            continue
        a1, a2 = line
        m_keys.add(_line_key(field, a1, a2))
        on_y = line_on_hypersurface(cubic, a1, a2)
        rec["m_on_y"] = "pass" if on_y else "fail"
        split = splitting_type_on_line(reduced, a1, a2)
        rec["splitting"] = list(split)
        rec["splitting_verdict"] = "pass" if split == (1, 3) else "fail"
        membership = line_ideal_membership(reduced, a1, a2)
        rec["ideal_membership"] = "pass" if membership.passed else "fail"
        if not (ok_x and on_y and split == (1, 3) and membership.passed):
            failures += 1
        records.append(rec)
    payload = {"field": field.name, "count": len(points), "lines": records}
    order = field.p ** getattr(field, "k", 1)
    if order <= 3:
        generic = jumping = 0
        census_ok = True
        for a1, a2 in find_lines_on_y(net, field):
            split = splitting_type_on_line(reduced, a1, a2)
            is_mc = _line_key(field, a1, a2) in m_keys
            if split == (1, 3):
                jumping += 1
                census_ok = census_ok and is_mc
            elif split == (2, 2):
                generic += 1
                census_ok = census_ok and not is_mc
            else:
                census_ok = False
        payload["census"] = {"generic": generic, "jumping": jumping,
                             "matches_curve": census_ok}
        if not census_ok or jumping != len(m_keys):
            failures += 1
    return ("pass" if failures == 0 else "fail"), payload


def _jw_plans(ctx):
    plans = [SamplePlan(f, seed=ctx["seed"]) for f in ctx["fields"]
             if f.p ** getattr(f, "k", 1) <= 3]
    plans.append(SamplePlan(GF(7), count=ctx["samples"], seed=ctx["seed"],
                            mode="random"))
    return plans


def _stage_jw(ctx):
    cls = ctx.get("classification")
    if cls is not None and not cls.all_smooth:
        return "skipped", {"reason": "net is not classified smooth"}
    reports = [jw_pointwise(ctx["net"], plan).as_dict()
               for plan in _jw_plans(ctx)]
    ok = all(r["passed"] for r in reports)
    return ("pass" if ok else "fail"), {"reports": reports}


def _stage_jw1(ctx):
    cls = ctx.get("classification")
    if cls is not None and not cls.all_smooth:
        return "skipped", {"reason": "net is not classified smooth"}
    reports = [jw1_section_check(ctx["net"], plan).as_dict()
               for plan in _jw_plans(ctx)]
    ok = all(r["passed"] for r in reports)
    return ("pass" if ok else "fail"), {"reports": reports}


STAGES = (
    ("regularity", _stage_regularity),
    ("classification", _stage_classification),
    ("polynomials", _stage_polynomials),
    ("hilbert-C", _stage_hilbert_c),
    ("charge2-table", _stage_charge2),
    ("h1-window", _stage_h1_window),
    ("exceptional-pair", _stage_exceptional_pair),
    ("lines", _stage_lines),
    ("jw", _stage_jw),
    ("jw1", _stage_jw1),
)
_STAGE_MAP = dict(STAGES)
_GATED = ("regularity", "classification")


def _run_stage(name, fn, ctx):
    start = time.monotonic()
    try:
        verdict, payload = fn(ctx)
    except ValueError as exc:
        verdict, payload = "fail", {"error": str(exc)}
    print("%-17s %-12s %6.2fs" % (name, verdict,
                                  time.monotonic() - start),
          file=sys.stderr)
    return {"name": name, "verdict": verdict, "detail": payload}


def _overall(results):
    verdicts = [r["verdict"] for r in results]
    if "fail" in verdicts:
        return "fail"
    if "inconclusive" in verdicts:
        return "inconclusive"
    return "pass"


def build_report(doc, opts):
    """Run the whole pipeline on a parsed fixture; deterministic for fixed
    (fixture, options), whatever the worker count."""
    net = net_from_fixture(doc)
    ctx = dict(opts)
    ctx["net"] = net
    results = []
    for name in _GATED:
        results.append(_run_stage(name, _STAGE_MAP[name], ctx))
        if name == "regularity" and results[-1]["verdict"] != "pass":
            for later, _fn in STAGES[1:]:
                results.append({"name": later, "verdict": "skipped",
                                "detail": {"reason": "net is not regular"}})
            break
    else:
        rest = STAGES[len(_GATED):]
        if ctx["workers"] > 1:
            with ThreadPoolExecutor(max_workers=ctx["workers"]) as pool:
                futures = [(name, pool.submit(_run_stage, name, fn, ctx))
                           for name, fn in rest]
                results.extend(f.result() for _, f in futures)
        else:
            results.extend(_run_stage(name, fn, ctx) for name, fn in rest)
    return {
        "schema": REPORT_SCHEMA,
        "fingerprint": fingerprint(doc),
        "parameters": {
            "fields": [f.name for f in opts["fields"]],
            "prime": opts["prime"],
            "second_prime": opts["second_prime"],
            "degree_cap": opts["cap"],
            "samples": opts["samples"],
            "seed": opts["seed"],
        },
        "stages": results,
        "overall": _overall(results),
    }


# -- commands -----------------------------------------------------------------

def cmd_generate(args):
    if args.bound < 1:
        print("error: --bound must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    if args.n < 1 or args.two_m < 4 or args.two_m % 2:
        print("error: need n >= 1 and even 2m >= 4", file=sys.stderr)
        return EXIT_INPUT
    try:
        net, tries = random_regular_net(args.net_seed, bound=args.bound,
                                        n=args.n, two_m=args.two_m)
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_FAIL
    print("regular net found after %d tries" % tries, file=sys.stderr)
    doc = net_to_fixture(net, provenance={"seed": args.net_seed,
                                          "bound": args.bound,
                                          "tries": tries})
    _write_text(args.out, canonical_json(doc))
    return EXIT_PASS


_EXIT_BY_VERDICT = {"pass": EXIT_PASS, "fail": EXIT_FAIL,
                    "inconclusive": EXIT_INCONCLUSIVE,
                    "skipped": EXIT_PASS}


def cmd_pipeline(args):
    try:
        doc = _read_json(args.fixture)
        opts = _options(args)
        net_from_fixture(doc)
    except (OSError, ValueError, KeyError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    report = build_report(doc, opts)
    _write_text(args.report, canonical_json(report))
    return _EXIT_BY_VERDICT[report["overall"]]


def cmd_verify(args):
    if args.check not in _STAGE_MAP:
        print("error: unknown check %r; known: %s"
              % (args.check, ", ".join(name for name, _ in STAGES)),
              file=sys.stderr)
        return EXIT_INPUT
    try:
        doc = _read_json(args.fixture)
        opts = _options(args)
        net = net_from_fixture(doc)
    except (OSError, ValueError, KeyError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    ctx = dict(opts)
    ctx["net"] = net
    result = _run_stage(args.check, _STAGE_MAP[args.check], ctx)
    _write_text(None, canonical_json(result))
    return _EXIT_BY_VERDICT[result["verdict"]]


def _diff_walk(a, b, path, out):
    if isinstance(a, dict) and isinstance(b, dict):
        for key in sorted(set(a) | set(b)):
            sub = "%s.%s" % (path, key) if path else str(key)
            if key not in a:
                out.append("%s: only in second" % sub)
            elif key not in b:
                out.append("%s: only in first" % sub)
            else:
                _diff_walk(a[key], b[key], sub, out)
    elif isinstance(a, list) and isinstance(b, list):
        if len(a) != len(b):
            out.append("%s: length %d != %d" % (path, len(a), len(b)))
            return
        for i, (x, y) in enumerate(zip(a, b)):
            _diff_walk(x, y, "%s[%d]" % (path, i), out)
    elif a != b:
        out.append("%s: %r != %r" % (path, a, b))


def cmd_report_diff(args):
    try:
        a = _read_json(args.first)
        b = _read_json(args.second)
    except (OSError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    out = []
    _diff_walk(a, b, "", out)
    for line in out:
        print(line)
    if not out:
        print("reports are identical")
    return EXIT_PASS if not out else EXIT_FAIL


# -- argument parsing ---------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad usage, which collides with the
    inconclusive code; route usage errors to the input-error code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, "%s: error: %s\n" % (self.prog, message))


def _add_common(sub):
    sub.add_argument("--fields", help="comma list of finite field sizes "
                                      "(default 2,3)")
    sub.add_argument("--prime", type=int,
                     help="working prime for rank computations")
    sub.add_argument("--degree-cap", dest="degree_cap", type=int,
                     help="Hilbert-function degree cap for emptiness checks")
    sub.add_argument("--samples", type=int,
                     help="random sample count for pointwise checks")
    sub.add_argument("--seed", type=int, help="sampling seed")
    sub.add_argument("--workers", type=int,
                     help="stage thread pool size (output is identical "
                          "for any value)")


def make_parser():
    parser = _Parser(prog="pfaffian-nets",
                     description="Exact verification of the Pfaffian "
                                 "net / cubic / Grassmannian-section "
                                 "correspondence.")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a screened random fixture")
    g.add_argument("--seed", dest="net_seed", type=int, default=1,
                   help="rejection-sampler seed")
    g.add_argument("--bound", type=int, default=3,
                   help="entry bound for candidate matrices")
    g.add_argument("--n", type=int, default=5, help="number of matrices")
    g.add_argument("--two-m", dest="two_m", type=int, default=6,
                   help="matrix size")
    g.add_argument("--out", default="-", help="fixture path or - for stdout")
    g.set_defaults(func=cmd_generate)

    p = sub.add_parser("pipeline", help="run every check, write a report")
    p.add_argument("fixture", help="fixture path or - for stdin")
    p.add_argument("--report", "-o", default="-",
                   help="report path or - for stdout")
    _add_common(p)
    p.set_defaults(func=cmd_pipeline)

    v = sub.add_parser("verify", help="run one named check")
    v.add_argument("fixture", help="fixture path or - for stdin")
    v.add_argument("check", help="one of: %s"
                                 % ", ".join(name for name, _ in STAGES))
    _add_common(v)
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("report-diff", help="structural diff of two reports")
    d.add_argument("first")
    d.add_argument("second")
    d.set_defaults(func=cmd_report_diff)
    return parser


def main(argv=None):
    args = make_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
