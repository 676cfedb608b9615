"""Command-line entry point: ``minorbit <subcommand> <type> [options]``.

Exit codes: 0 success / all checks pass, 1 a verification failed, 2 usage
error (bad type string, unknown option, module over --dim-cap).
"""

from __future__ import annotations

import argparse
import json
import sys

from .rootsys import InvalidTypeError, RootSystem, build_root_system

DIM_CAP = 20000


class UsageError(Exception):
    pass


def _rs(text: str) -> RootSystem:
    try:
        return build_root_system(text)
    except InvalidTypeError as exc:
        raise UsageError(str(exc)) from None


def _emit(args, payload, text: str):
    if args.json:
        print(json.dumps(payload, indent=1, sort_keys=True))
    else:
        print(text)


# -- Dynkin rendering ---------------------------------------------------------------


def _edge(rs: RootSystem, i: int, j: int) -> str:
    a, b = rs.cartan[i][j], rs.cartan[j][i]
    if a == b == -1:
        return " - "
    # arrow points toward the short root
    long_to_short = rs.root_length2(rs.positive_roots[i]) > rs.root_length2(rs.positive_roots[j])
    mult = max(-a, -b)
    arrow = {2: "=>", 3: "=>>"}[mult] if long_to_short else {2: "<=", 3: "<<="}[mult]
    return f" {arrow} "


def dynkin_ascii(rs: RootSystem, labels) -> str:
    """Main chain on one line (longest path), remaining nodes listed with their neighbour."""
    n = rs.rank
    adj = {i: [j for j in range(n) if j != i and rs.cartan[i][j]] for i in range(n)}

    def farthest(src):
        dist, order = {src: [src]}, [src]
        for u in order:
            for v in adj[u]:
                if v not in dist:
                    dist[v] = dist[u] + [v]
                    order.append(v)
        return dist[order[-1]]

    start = min(range(n), key=lambda i: (len(adj[i]) != 1, i)) if n > 1 else 0
    path = farthest(farthest(start)[-1])
    if path[0] > path[-1]:
        path.reverse()
    top, bottom = "", ""
    for t, node in enumerate(path):
        cell = f"o{labels[node]}"
        idx = str(node + 1)
        if t:
            e = _edge(rs, path[t - 1], node)
            top += e
            bottom += " " * len(e)
        width = max(len(cell), len(idx))
        top += cell.ljust(width)
        bottom += idx.ljust(width)
    lines = [top.rstrip(), bottom.rstrip()]
    for node in range(n):
        if node not in path:
            nb = adj[node][0]
            lines.append(f"o{labels[node]} node {node + 1}, attached to node {nb + 1}")
    return "\n".join(lines)


# -- subcommands ---------------------------------------------------------------------


def cmd_roots(args) -> int:
    rs = _rs(args.type)
    lines = [f"{rs.type}: rank {rs.rank}, {len(rs.positive_roots)} positive roots, dual Coxeter {rs.dual_coxeter}"]
    lines.append("cartan: " + " ; ".join(" ".join(f"{x:2d}" for x in row) for row in rs.cartan))
    lines.append(f"highest root: {rs.highest_root}  comarks: {rs.comarks}")
    lines += [f"  {r}" for r in rs.positive_roots]
    _emit(args, rs.to_dict(), "\n".join(lines))
    return 0


def cmd_chevalley(args) -> int:
    from .chevalley import build_chevalley

    rs = _rs(args.type)
    cb = build_chevalley(rs)
    lines = [f"{rs.type}: dim {cb.dim}"]
    for (a, b), res in sorted(cb.structure.items()):
        if a < b:
            rhs = " + ".join(f"{v}*{cb.label(c)}" for c, v in sorted(res.items()))
            lines.append(f"[{cb.label(a)}, {cb.label(b)}] = {rhs}")
    _emit(args, cb.to_json(), "\n".join(lines))
    return 0


def cmd_mnumbers(args) -> int:
    from .hamiltonian import m_numbers

    rs = _rs(args.type)
    m = m_numbers(rs, args.method, dim_cap=args.dim_cap) if args.method == "rep" else m_numbers(rs, args.method)
    payload = {
        "type": str(rs.type),
        "method": args.method,
        "m": list(m),
        "sum": sum(m),
        "dual_coxeter_minus_one": rs.dual_coxeter - 1,
    }
    text = " ".join(map(str, m))
    if args.diagram:
        text += "\n" + dynkin_ascii(rs, m)
    _emit(args, payload, text)
    return 0


def cmd_hamiltonian(args) -> int:
    from .chevalley import build_chevalley
    from .hamiltonian import G2Textbook, MatrixRealization, hamiltonian_poly, matrix_entry_names

    rs = _rs(args.type)
    cb = build_chevalley(rs)
    if args.node is None or args.order is None:
        raise UsageError("hamiltonian needs --node and --order")
    f = hamiltonian_poly(rs, cb, args.node, args.order, dim_cap=args.dim_cap)
    names = [f"x[{lab}]" for lab in cb.labels]
    if args.basis == "textbook":
        if str(rs.type) != "G2":
            raise UsageError("--basis textbook is only defined for G2")
        g = G2Textbook(cb)
        f = g.from_chevalley(f)
        names = g.names
    elif args.basis == "matrix":
        if rs.type.family not in "ABCD":
            raise UsageError("--basis matrix needs a classical type (A, B, C, D)")
        mr = MatrixRealization(rs, cb)
        f = mr.from_chevalley(f)
        name = matrix_entry_names(mr.size)
        names = [name(v) for v in range(mr.size**2)]
    payload = {
        "type": str(rs.type),
        "node": args.node,
        "order": args.order,
        "basis": args.basis,
        "variables": names,
        "terms": f.to_json(len(names)),
        "text": f.render(names),
    }
    _emit(args, payload, f.render(names))
    return 0


def cmd_heisenberg(args) -> int:
    from .heisenberg import heisenberg_table

    rs = _rs(args.type)
    table = heisenberg_table(rs, orders=args.orders, dim_cap=args.dim_cap)
    _emit(args, table.to_json(), table.render())
    return 0


def cmd_quantize(args) -> int:
    from .quantize import quantization_report

    rs = _rs(args.type)
    rep = quantization_report(rs, args.degree, args.kappa)
    lines = [f"{rs.type}: kappa = {args.kappa}"]
    for (k, n), e in sorted(rep.elements.items()):
        lines.append(f"Q(w{k},{n}) = {e.render()}")
    if args.check:
        lines += [c.line() for c in rep.checks]
    _emit(args, rep.to_json(), "\n".join(lines))
    return 0 if (rep.ok or not args.check) else 1


def cmd_verify(args) -> int:
    from .verify import run_claim

    rep = run_claim(args.claim, args.type if args.claim != "mnumbers" else _rs(args.type), args.samples, args.seed, args.dim_cap)
    _emit(args, rep.to_json(), rep.line())
    return 0 if rep.passed else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="minorbit", description=__doc__.splitlines()[0])
    type_help = "simple type <family><rank>, e.g. A3, E8, G2 (D3 is accepted for the so(6) table)"
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--dim-cap", type=int, default=DIM_CAP, help=f"largest module built (default {DIM_CAP})")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help):
        s = sub.add_parser(name, parents=[common], help=help)
        s.add_argument("type", help=type_help)
        return s

    s = add("roots", "Cartan matrix, positive roots, comarks")
    s.set_defaults(func=cmd_roots)
    s = add("chevalley", "Chevalley structure constants")
    s.set_defaults(func=cmd_chevalley)
    s = add("mnumbers", "node labels m_k")
    s.add_argument("--method", choices=("sl2", "dominance", "rep", "bound"), default="sl2", help="default sl2")
    s.add_argument("--diagram", action="store_true", help="also draw the labelled Dynkin diagram")
    s.set_defaults(func=cmd_mnumbers)
    s = add("hamiltonian", "f_{n,k} as a polynomial")
    s.add_argument("--node", type=int, help="node k (1-based, Bourbaki)")
    s.add_argument("--order", type=int, help="order n")
    s.add_argument("--basis", choices=("chevalley", "matrix", "textbook"), default="chevalley", help="default chevalley")
    s.set_defaults(func=cmd_hamiltonian)
    s = add("heisenberg-tables", "Hamiltonians in Heisenberg chart coordinates")
    s.add_argument("--orders", type=int, default=None, help="highest order (default max m_k)")
    s.set_defaults(func=cmd_heisenberg)
    s = add("quantize", "Travkin quantization and commutators")
    s.add_argument("--degree", type=int, default=2, help="highest degree (default 2)")
    s.add_argument("--kappa", choices=("killing", "normalized"), default="killing", help="default killing")
    s.add_argument("--check", action="store_true", help="print commutator checks; exit 1 on failure")
    s.set_defaults(func=cmd_quantize)
    s = sub.add_parser("verify", parents=[common], help="claim checks")
    s.add_argument("claim", choices=("commute", "independence", "vanishing", "cross", "tables", "mnumbers"))
    s.add_argument("type", help=type_help)
    s.add_argument("--samples", type=int, default=100, help="orbit samples (default 100)")
    s.add_argument("--seed", type=int, default=0, help="seed (default 0)")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    from .repbuild import RepTooLargeError

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, InvalidTypeError) as exc:
        print(f"minorbit: error: {exc}", file=sys.stderr)
        return 2
    except RepTooLargeError as exc:
        print(f"minorbit: error: {exc}", file=sys.stderr)
        return 2
    except KeyError as exc:
        print(f"minorbit: error: {exc.args[0]}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
