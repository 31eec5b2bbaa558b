"""Command-line front end.

Verbs: enumerate, fvector, hasse, verify, encode, varpi.  Families:
perm (permutahedron, n forced to 1), biperm, assoc, biassoc, multipl.
Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import leveled, multipli, posets, propterms, trees, zones

DEFAULT_MAX = 8


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("BIASSOC_THREADS", "1")))
    except ValueError:
        return 1


def parallel_map(fn, items):
    """Apply fn over items, threaded when BIASSOC_THREADS > 1; the
    result order is always the input order."""
    items = list(items)
    k = _threads()
    if k <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor(max_workers=k) as pool:
        return list(pool.map(fn, items))


class UsageError(Exception):
    pass


def _check_size(m, n, limit):
    if m + n > limit:
        raise UsageError(
            "size m+n = %d exceeds the tractability bound %d "
            "(raise it with --max-size)" % (m + n, limit)
        )


def _poset(family, m, n):
    if family == "assoc":
        return trees.face_poset_associahedron(m)
    if family in ("perm", "biperm"):
        return leveled.bipermutahedron_poset(m, n)
    if family == "biassoc":
        return zones.biassociahedron_poset(m, n)
    if family == "multipl":
        return multipli.multiplihedron_poset(m)
    raise UsageError("unknown family %r" % family)


def _elements(family, m, n, fmt):
    if family == "assoc":
        for t in trees.enumerate_trees(m, "up"):
            yield t.to_json() if fmt == "json" else t.text()
    elif family in ("perm", "biperm"):
        for x in leveled.enumerate_leveled_pairs(m, n):
            yield x.to_json() if fmt == "json" else x.key()
    elif family == "biassoc":
        for z in zones.enumerate_zone_pairs(m, n):
            yield z.to_json() if fmt == "json" else z.key()
    elif family == "multipl":
        for p in multipli.enumerate_painted(m):
            yield p.to_json() if fmt == "json" else p.text()
    else:
        raise UsageError("unknown family %r" % family)


def _pair_from_args(args) -> leveled.ComplementaryPair:
    if not args.up or args.up_levels is None:
        raise UsageError("need --up and --up-levels")
    up = trees.PlanarTree.from_text(args.up, "up")
    down = trees.PlanarTree.from_text(args.down or "*", "down")
    ul = tuple(int(v) for v in args.up_levels.split(",") if v)
    dl = tuple(
        int(v) for v in (args.down_levels or "").split(",") if v
    )
    return leveled.ComplementaryPair(up, down, ul, dl)


def run(argv) -> int:
    parser = argparse.ArgumentParser(prog="biassoc", add_help=True)
    parser.add_argument("--max-size", type=int, default=DEFAULT_MAX)
    sub = parser.add_subparsers(dest="verb")

    def add(name):
        p = sub.add_parser(name)
        p.add_argument("-m", type=int, default=None)
        p.add_argument("-n", type=int, default=1)
        return p

    p = add("enumerate")
    p.add_argument("--family", required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p = add("fvector")
    p.add_argument("--family", required=True)
    p = add("hasse")
    p.add_argument("--family", required=True)
    p.add_argument("--dot", action="store_true")
    p = add("verify")
    p.add_argument("check", choices=("opet", "thmc", "propd", "euler"))
    p.add_argument("--family", default="biperm")
    p = add("encode")
    p.add_argument("--gamma", action="store_true")
    p.add_argument("--up")
    p.add_argument("--down")
    p.add_argument("--up-levels")
    p.add_argument("--down-levels")
    p.add_argument("--decode")
    p = add("varpi")
    p.add_argument("--up")
    p.add_argument("--down")
    p.add_argument("--up-levels")
    p.add_argument("--down-levels")

    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2

    try:
        if args.verb is None:
            parser.print_usage()
            return 2
        if args.verb in ("enumerate", "fvector", "hasse", "verify"):
            if args.m is None:
                raise UsageError("need -m")
            if args.verb == "verify" and args.check == "propd":
                eff_n = 2
            elif getattr(args, "family", "") in ("assoc", "multipl"):
                eff_n = 1
            else:
                eff_n = args.n
            _check_size(args.m, eff_n, args.max_size)

        if args.verb == "enumerate":
            for line in _elements(args.family, args.m, args.n, args.format):
                print(line)
            return 0

        if args.verb == "fvector":
            print(" ".join(map(str, _poset(args.family, args.m, args.n).fvector())))
            return 0

        if args.verb == "hasse":
            p = _poset(args.family, args.m, args.n)
            if args.dot:
                print(p.dot())
            else:
                print(p.to_json())
            return 0

        if args.verb == "verify":
            return _verify(args)

        if args.verb == "encode":
            if not args.gamma:
                raise UsageError("only --gamma encoding is available")
            if args.decode:
                b = leveled.OrderedBipartition.from_text(args.decode)
                if args.m is None:
                    raise UsageError("need -m (and -n) to decode")
                x = leveled.gamma_decode(b, args.m, args.n)
                print(x.key())
            else:
                x = _pair_from_args(args)
                print(leveled.gamma_encode(x).text())
            return 0

        if args.verb == "varpi":
            x = _pair_from_args(args)
            print(propterms.varpi_expr(x).simplify().text())
            return 0

        raise UsageError("unknown verb %r" % args.verb)
    except UsageError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except (ValueError, KeyError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


def _verify(args) -> int:
    m, n = args.m, args.n
    if args.check == "opet":
        ok = leveled.opet_iso_check(m, n)
        print(
            "opet (%d,%d): %s"
            % (m, n, "isomorphism verified" if ok else "FAILED")
        )
        return 0 if ok else 1
    if args.check == "thmc":
        ok = propterms.theorem_c_check(m, n)
        classes = len(zones.enumerate_zone_pairs(m, n))
        if ok:
            print("thmc (%d,%d): %d classes, kernels agree" % (m, n, classes))
            return 0
        print("thmc (%d,%d): FAILED" % (m, n))
        return 1
    if args.check == "propd":
        ok = multipli.prop_d_check(m)
        print(
            "propd m=%d: %s"
            % (m, "posets isomorphic" if ok else "FAILED")
        )
        return 0 if ok else 1
    if args.check == "euler":
        p = _poset(args.family, m, n)
        e = p.euler()
        print("euler %s (%d,%d): %d" % (args.family, m, n, e))
        return 0 if e == 1 else 1
    raise UsageError("unknown check %r" % args.check)


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
