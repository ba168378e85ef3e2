"""Command-line front end.

Subcommands:
  hilbert <subspace.json> [--range a..b]   Hilbert values of a subspace
  family validate|predict|verify|type <instance.json>
  catalog --codim R --type T               existence catalog lookup
  poset tpp|topsets --q Q1,Q2,...          topset enumeration / TPP check
  lmatrix check <matrix.json>              PV/L classification and pattern
  selftest [--full]                        randomized property suites

Arguments that look like JSON (leading "{") are parsed inline, otherwise
treated as file paths.  Exit codes: 0 success / verdict pass, 2 verdict
fail, 1 usage or input error.  All randomness derives from --seed; reports
are emitted as canonical JSON (sorted keys) by default.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__, exactalg, families, gqposet, lmatrix, selfcheck
from .apolarity import HomogeneousSubspace, hilbert_vector, hilbert_value
from .gqposet import GQPoset, TopsetGuardExceeded, enumerate_topsets


class UsageError(Exception):
    pass


def _default_prime():
    env = os.environ.get("APOLARITY_PRIME")
    if env is None:
        return exactalg.DEFAULT_PRIME
    try:
        p = int(env)
    except ValueError:
        raise UsageError("APOLARITY_PRIME is not an integer: %r" % (env,))
    return p


def _load_json(arg):
    text = arg
    if not arg.lstrip().startswith("{"):
        try:
            with open(arg) as fh:
                text = fh.read()
        except OSError as e:
            raise UsageError("cannot read %s: %s" % (arg, e))
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError("malformed JSON: %s" % e)


def _parse_range(text):
    try:
        lo, hi = text.split("..")
        return int(lo), int(hi)
    except ValueError:
        raise UsageError("range must look like 3..7, got %r" % (text,))


def _parse_q(text):
    if text == "":
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError("bounds must be comma-separated integers, got %r" % (text,))


def emit_report(report, fmt="json"):
    """Serialize a report dict: canonical json, flat csv, or pretty text."""
    if fmt == "json":
        return json.dumps(report, sort_keys=True, separators=(",", ":"))
    if fmt == "csv":
        lines = []
        if "h" in report and isinstance(report["h"], list):
            start = report.get("start", 0)
            lines.append("d,h")
            for k, v in enumerate(report["h"]):
                lines.append("%d,%s" % (start + k, v))
        for key in sorted(report):
            if key in ("h", "start"):
                continue
            val = report[key]
            if isinstance(val, (dict, list)):
                val = json.dumps(val, sort_keys=True, separators=(",", ":"))
            lines.append("%s,%s" % (key, val))
        return "\n".join(lines)
    if fmt == "pretty":
        lines = []
        for key in sorted(report):
            lines.append("%s: %s" % (key, report[key]))
        return "\n".join(lines)
    raise UsageError("unknown format %r" % (fmt,))


def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--prime", type=int, default=None)
    common.add_argument("--retries", type=int, default=3)
    common.add_argument("--format", choices=("json", "csv", "pretty"),
                        default="json")
    top = argparse.ArgumentParser(prog="levelalg", description=__doc__)
    sub = top.add_subparsers(dest="command")
    p = sub.add_parser("hilbert", parents=[common])
    p.add_argument("subspace")
    p.add_argument("--range", dest="drange", default=None)
    p = sub.add_parser("family", parents=[common])
    p.add_argument("action", choices=("validate", "predict", "verify", "type"))
    p.add_argument("instance")
    p = sub.add_parser("catalog", parents=[common])
    p.add_argument("--codim", type=int, required=True)
    p.add_argument("--type", dest="type_", type=int, required=True)
    p = sub.add_parser("poset", parents=[common])
    p.add_argument("action", choices=("tpp", "topsets"))
    p.add_argument("--q", required=True)
    p.add_argument("--phi", choices=("random",), default="random")
    p.add_argument("--trials", type=int, default=50)
    p = sub.add_parser("lmatrix", parents=[common])
    p.add_argument("action", choices=("check",))
    p.add_argument("matrix")
    p = sub.add_parser("selftest", parents=[common])
    p.add_argument("--full", action="store_true")
    return top


def _base_report(command, p, seed):
    return {"command": command, "p": p, "seed": seed, "version": __version__}


def _cmd_hilbert(args, p):
    obj = _load_json(args.subspace)
    try:
        w = HomogeneousSubspace.from_json(obj, p)
    except (KeyError, ValueError) as e:
        raise UsageError("bad subspace: %s" % e)
    rng = _parse_range(args.drange) if args.drange else None
    hv = hilbert_vector(w, rng)
    report = _base_report("hilbert", p, args.seed)
    report.update({"r": w.r, "j": w.j, "start": hv.start,
                   "h": list(hv.values)})
    return report, 0


def _cmd_family(args, p):
    obj = _load_json(args.instance)
    res = families.validate_json(obj)
    report = _base_report("family " + args.action, p, args.seed)
    report["instance"] = obj
    if args.action == "validate":
        report["valid"] = res.valid
        report["violations"] = list(res.violations)
        if res.valid:
            d = res.params
            report["derived"] = {"r": d.r, "j": d.j, "u": d.u, "t": d.t,
                                 "i_f": d.i_f, "drop": d.drop_kind,
                                 "P": list(d.p_bounds), "Q": list(d.q_bounds)}
        return report, 0 if res.valid else 2
    if not res.valid:
        raise UsageError("invalid family instance: " + "; ".join(res.violations))
    params = res.params
    if args.action == "predict":
        degrees = list(range(params.i, params.i_f + 1))
        report["degrees"] = degrees
        report["predicted"] = [families.predicted_h(params, d) for d in degrees]
        report["Delta"] = params.delta
        report["delta"] = [families.deltas(params, d)[1] for d in degrees]
        return report, 0
    if args.action == "verify":
        dr = families.verify_drop(params, args.seed, args.retries, p)
        report.update(dr.to_json())
        return report, 0 if dr.verdict != "mismatch" else 2
    if args.action == "type":
        got = families.compute_type(params, args.seed, p)
        report["type"] = got
        report["expected"] = params.t
        return report, 0 if got == params.t else 2
    raise UsageError("unknown action %r" % (args.action,))


def _cmd_catalog(args, p):
    entry = families.existence_catalog(args.codim, args.type_)
    report = _base_report("catalog", p, args.seed)
    report.update(entry.to_json())
    return report, 0


def _cmd_poset(args, p):
    q = _parse_q(args.q)
    poset = GQPoset(q)
    report = _base_report("poset " + args.action, p, args.seed)
    report["q"] = list(q)
    if args.action == "topsets":
        tops = enumerate_topsets(poset, "proper_nonempty")
        report["count"] = len(tops)
        report["topsets"] = [t.to_json() for t in tops]
        return report, 0
    rng = exactalg.stream(args.seed, "cli-tpp")
    ok = True
    for t in range(args.trials):
        phi = gqposet.random_order_preserving(poset, rng)
        tpp = gqposet.check_tpp(poset, phi)
        tap = gqposet.check_tap(poset, phi)
        shifted = gqposet.check_tpp(poset, phi.shifted(poset))
        if not tpp.passed or tap.passed != shifted.passed:
            ok = False
            witness = tpp.witness or tap.witness or shifted.witness
            if witness is not None:
                report["witness"] = witness.to_json()
            break
    report["trials"] = args.trials
    report["passed"] = ok
    return report, 0 if ok else 2


def _cmd_lmatrix(args, p):
    obj = _load_json(args.matrix)
    try:
        m = lmatrix.SymbolicMatrix.from_json(obj["entries"])
    except (KeyError, TypeError, ValueError) as e:
        raise UsageError("bad matrix: %s" % e)
    cls = lmatrix.classify(m)
    report = _base_report("lmatrix check", p, args.seed)
    report.update({"rows": m.nrows, "cols": m.ncols, "is_pv": cls.is_pv,
                   "is_l_matrix": cls.is_l_matrix,
                   "moving_left": sorted(cls.moving_left_variables)})
    verdict = cls.is_l_matrix
    if "q" in obj:
        poset = GQPoset(tuple(obj["q"]))
        rs = dict(zip(sorted(poset.elements, reverse=True), obj["row_sizes"]))
        cs = dict(zip(sorted(poset.elements), obj["col_sizes"]))
        structure = lmatrix.GQBlockStructure(poset, rs, cs)
        pattern = lmatrix.verify_gq_pattern(m, structure)
        report["gq_pattern"] = pattern
        verdict = verdict and pattern
        if structure.is_square:
            crit = lmatrix.gq3_criterion(structure)
            report["gq3_criterion"] = crit
            if m.nrows <= lmatrix.EXACT_DET_LIMIT:
                report["det_nonzero"] = lmatrix.det_is_nonzero(m, "exact")
    return report, 0 if verdict else 2


def _cmd_selftest(args, p):
    result = selfcheck.run_all(args.seed, quick=not args.full)
    report = _base_report("selftest", p, args.seed)
    report.update(result)
    return report, 0 if result["passed"] else 2


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 1
    try:
        p = args.prime if args.prime is not None else _default_prime()
        if not exactalg.is_prime(p):
            raise UsageError("%d is not prime" % p)
        if args.retries < 0:
            raise UsageError("retries must be nonnegative")
        handler = {"hilbert": _cmd_hilbert, "family": _cmd_family,
                   "catalog": _cmd_catalog, "poset": _cmd_poset,
                   "lmatrix": _cmd_lmatrix, "selftest": _cmd_selftest}[args.command]
        report, code = handler(args, p)
    except UsageError as e:
        print("error: %s" % e, file=sys.stderr)
        return 1
    except TopsetGuardExceeded as e:
        print("error: %s" % e, file=sys.stderr)
        return 1
    except (ValueError, families.FamilyError) as e:
        print("error: %s" % e, file=sys.stderr)
        return 1
    print(emit_report(report, args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
