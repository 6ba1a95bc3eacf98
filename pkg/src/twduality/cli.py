"""Command-line front end over PACE-style files.

Exit codes: 0 success/verified, 1 failed check or invalid certificate,
2 usage/parse error, 3 enumeration guard exceeded.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .bramble import Bramble, find_covering_bag, min_cover, parse_br, verify_bramble, write_br
from .decomposition import as_partial, flaps, parse_td, verify_td, width, write_td
from .duality import duality_certificates, synthesize_bramble, treewidth
from .errors import FormatError, GuardError, TwdError
from .graph import bit_list, parse_gr, popcount
from .separation import merge_flaps_lemma1


def _read(path: str) -> str:
    return Path(path).read_text()


def _emit(text: str, out: str | None, summary: str) -> None:
    """Certificate to the -o file (summary on stdout) or to stdout
    (summary on stderr), so written streams stay machine-readable."""
    if out is not None:
        Path(out).write_text(text)
        print(summary)
    else:
        sys.stdout.write(text)
        print(summary, file=sys.stderr)


def cmd_tw(args) -> int:
    g = parse_gr(_read(args.graph))
    tw, _ = treewidth(g, max_n=args.max_n)
    print(tw)
    return 0


def cmd_decompose(args) -> int:
    g = parse_gr(_read(args.graph))
    tw, d = treewidth(g, max_n=args.max_n)
    if args.k is not None and tw > args.k:
        print(f"tree-width {tw} > {args.k}", file=sys.stderr)
        return 1
    _emit(write_td(d, n=g.n), args.out, f"width {width(d)}")
    return 0


def cmd_bramble(args) -> int:
    g = parse_gr(_read(args.graph))
    tw, _ = treewidth(g, max_n=args.max_n)
    k = args.k if args.k is not None else tw
    if tw < k:
        print(f"tree-width {tw} < {k}", file=sys.stderr)
        return 1
    b = synthesize_bramble(g, k, max_n=args.max_n)
    _emit(write_br(b), args.out, f"order {b.claimed_order}")
    return 0


def _verify_td_file(g, text) -> int:
    d = parse_td(text)
    viol = verify_td(g, d)
    if viol is not None:
        print(f"FAIL {viol}")
        return 1
    print(f"OK width={width(d)}")
    return 0


def _verify_br_file(g, text, max_n: int) -> int:
    b = parse_br(text)
    if b.n != g.n:
        print(f"FAIL host size {b.n} != graph size {g.n}")
        return 1
    viol = verify_bramble(g, b.elements)
    if viol is not None:
        print(f"FAIL {viol}")
        return 1
    order = popcount(min_cover(g, b, max_n=max(32, max_n)))
    if b.claimed_order and b.claimed_order != order:
        print(f"FAIL claimed order {b.claimed_order} != actual {order}")
        return 1
    print(f"OK order={order}")
    return 0


def cmd_verify(args) -> int:
    g = parse_gr(_read(args.graph))
    kind = args.format or Path(args.cert).suffix.lstrip(".")
    text = _read(args.cert)
    if kind == "td":
        return _verify_td_file(g, text)
    if kind == "br":
        return _verify_br_file(g, text, args.max_n)
    print(f"error: unknown certificate kind {kind!r}", file=sys.stderr)
    return 2


def cmd_cover(args) -> int:
    g = parse_gr(_read(args.graph))
    d = parse_td(_read(args.td))
    b = parse_br(_read(args.br))
    viol = verify_td(g, d)
    if viol is not None:
        print(f"FAIL decomposition: {viol}")
        return 1
    viol = verify_bramble(g, b.elements)
    if viol is not None:
        print(f"FAIL bramble: {viol}")
        return 1
    w = find_covering_bag(g, d, b)
    verts = " ".join(str(v + 1) for v in bit_list(w.cover))
    if w.kind == "bag":
        print(f"bag {w.location + 1}: {verts}")
    else:
        a, c = w.location
        print(f"adhesion {a + 1}-{c + 1}: {verts}")
    return 0


def cmd_merge(args) -> int:
    g = parse_gr(_read(args.graph))
    p1 = as_partial(parse_td(_read(args.td1)), args.k)
    p2 = as_partial(parse_td(_read(args.td2)), args.k)
    from .graph import touches

    pair = None
    for fx in flaps(p1):
        for fy in flaps(p2):
            if not touches(g, fx.vertices, fy.vertices):
                pair = (fx, fy)
                break
        if pair:
            break
    if pair is None:
        print("no non-touching flap pair", file=sys.stderr)
        return 1
    merged = merge_flaps_lemma1(g, args.k, p1, pair[0], p2, pair[1])
    summary = (
        f"merged at flaps {bit_list(pair[0].vertices)} / {bit_list(pair[1].vertices)}"
    )
    _emit(write_td(merged.base, n=g.n), args.out, summary)
    return 0


def cmd_duality(args) -> int:
    g = parse_gr(_read(args.graph))
    certs = duality_certificates(g, max_n=args.max_n)
    print(f"tw={certs.tw} order={certs.bramble.claimed_order} OK")
    return 0


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="twd",
        description="Exact tree-width with witness decompositions and dual "
        "bramble certificates over PACE-style files.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, out=False, k=False):
        sp.add_argument("--max-n", type=int, default=14, dest="max_n",
                        help="enumeration guard override (default 14)")
        if out:
            sp.add_argument("-o", "--out", default=None, help="output file (default stdout)")
        if k:
            sp.add_argument("--k", type=int, default=None, help="threshold (default: tree-width)")

    sp = sub.add_parser("tw", help="print the exact tree-width")
    sp.add_argument("graph")
    common(sp)
    sp.set_defaults(func=cmd_tw)

    sp = sub.add_parser("decompose", help="write an optimal tree-decomposition (.td)")
    sp.add_argument("graph")
    common(sp, out=True, k=True)
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("bramble", help="write a bramble certificate (.br)")
    sp.add_argument("graph")
    common(sp, out=True, k=True)
    sp.set_defaults(func=cmd_bramble)

    sp = sub.add_parser("verify", help="verify a .td or .br certificate against a graph")
    sp.add_argument("graph")
    sp.add_argument("cert")
    sp.add_argument("--format", choices=("td", "br"), default=None,
                    help="certificate kind (default: by extension)")
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("cover", help="find a bag or adhesion covering a bramble")
    sp.add_argument("graph")
    sp.add_argument("td")
    sp.add_argument("br")
    common(sp)
    sp.set_defaults(func=cmd_cover)

    sp = sub.add_parser("merge", help="merge two partial decompositions at non-touching flaps")
    sp.add_argument("graph")
    sp.add_argument("td1")
    sp.add_argument("td2")
    sp.add_argument("--k", type=int, required=True, help="threshold k")
    sp.add_argument("-o", "--out", default=None, help="output file (default stdout)")
    sp.add_argument("--max-n", type=int, default=14, dest="max_n")
    sp.set_defaults(func=cmd_merge)

    sp = sub.add_parser("duality", help="compute and cross-verify both certificates")
    sp.add_argument("graph")
    common(sp)
    sp.set_defaults(func=cmd_duality)

    return p


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except FormatError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except GuardError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except (TwdError, AssertionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
