"""Command-line front end.

Exit codes are part of the contract so shell harnesses need no output
parsing: 0 success, 1 verification failure, 2 parse/usage errors, 3 solver
cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import bounds, codec, schemes, structures
from .errors import BidirectionalArcError, CapExceededError
from .families import FamilySpec, generate
from .graphs import Digraph, GraphFormatError, format_graph_text, parse_graph_text

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_PARSE_ERROR = 2
EXIT_CAP_EXCEEDED = 3

_SCHEME_LABELS = [
    ("cl", "clique cover"),
    ("cy", "cycle cover"),
    ("pc", "partial-clique cover"),
    ("icc", "interlinked-cycle cover"),
    ("eicc", "extended ICC"),
    ("ficc", "fractional ICC"),
    ("flcn", "local-chromatic formula"),
]


def _read_graph(path: str) -> Digraph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph_text(fh.read())


def _read_messages(path: str) -> codec.MessageBlock:
    with open(path, encoding="utf-8") as fh:
        return codec.parse_message_lines(fh.read())


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_dump(data: dict) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def _parse_prob(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad probability {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="icc", description=__doc__)
    sub = p.add_subparsers(dest="verb", required=True)

    gen = sub.add_parser("gen", help="generate a family instance as graph text")
    gen.add_argument("--family", required=True, choices=["fig2a", "class-a", "example4", "fig8", "random"])
    gen.add_argument("--k", type=int)
    gen.add_argument("--n", type=int)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--arc-prob", type=_parse_prob, default=Fraction(1, 2))
    gen.add_argument("--out")

    analyze = sub.add_parser("analyze", help="run all schemes and the MAIS bound")
    analyze.add_argument("--input", required=True)
    analyze.add_argument("--json", action="store_true")
    analyze.add_argument("--cap", type=int, default=schemes.DEFAULT_CAP)
    analyze.add_argument("--budget", type=int)
    analyze.add_argument("--out")

    mais_p = sub.add_parser("mais", help="maximum acyclic induced sub-digraph order")
    mais_p.add_argument("--input", required=True)
    mais_p.add_argument("--cap", type=int, default=20)
    mais_p.add_argument("--json", action="store_true")
    mais_p.add_argument("--out")

    frac = sub.add_parser("frac", help="exact fractional ICC optimum")
    frac.add_argument("--input", required=True)
    frac.add_argument("--cap", type=int, default=12)
    frac.add_argument("--budget", type=int)
    frac.add_argument("--json", action="store_true")
    frac.add_argument("--out")

    certify = sub.add_parser("certify", help="optimality certificate for a structure")
    certify.add_argument("--input", required=True)
    certify.add_argument("--inner", help="comma-separated inner vertex set (default: best spanning structure)")
    certify.add_argument("--budget", type=int)
    certify.add_argument("--json", action="store_true")
    certify.add_argument("--out")

    encode = sub.add_parser("encode", help="encode messages under one scheme")
    encode.add_argument("--input", required=True)
    encode.add_argument("--scheme", default="icc", choices=list(codec.SCHEME_TAGS))
    encode.add_argument("--messages", help="message file (hex lines); generated when omitted")
    encode.add_argument("--seed", type=int, default=0)
    encode.add_argument("--t", type=int, default=1, help="message bytes when generating")
    encode.add_argument("--budget", type=int)
    encode.add_argument("--out", help="code JSON destination (default stdout)")
    encode.add_argument("--payload", help="payload hex destination")
    encode.add_argument("--emit-messages", help="write the encoded message block here")

    decode = sub.add_parser("decode", help="recover every receiver's message")
    decode.add_argument("--input", required=True)
    decode.add_argument("--code", required=True)
    decode.add_argument("--payload", required=True)
    decode.add_argument("--messages", required=True, help="side-information source")
    decode.add_argument("--json", action="store_true")
    decode.add_argument("--out")

    verify = sub.add_parser("verify", help="decodability oracle; exit 1 on failure")
    verify.add_argument("--input", required=True)
    verify.add_argument("--code", required=True)
    verify.add_argument("--json", action="store_true")
    verify.add_argument("--out")
    return p


def _cmd_gen(args: argparse.Namespace) -> int:
    spec = FamilySpec(args.family, k=args.k, n=args.n, seed=args.seed, arc_prob=args.arc_prob)
    g = generate(spec)
    _emit(format_graph_text(g, comment=f"family={args.family}"), args.out)
    return EXIT_OK


def _cmd_analyze(args: argparse.Namespace) -> int:
    g = _read_graph(args.input)
    report = schemes.full_report(g, cap=args.cap, budget=args.budget)
    if args.json:
        _emit(_json_dump(schemes.report_to_json_dict(report)), args.out)
        return EXIT_OK
    rows = [("scheme", "length")]
    for tag, label in _SCHEME_LABELS:
        if tag in report.lengths:
            val = report.lengths[tag]
            rows.append((label, str(val)))
    rows.append(("MAIS lower bound", str(report.mais)))
    width = max(len(r[0]) for r in rows) + 2
    lines = [f"{name:<{width}}{val}" for name, val in rows]
    lines.insert(1, "-" * (width + 6))
    status = "optimal (matches MAIS)" if report.optimal_certified else "not certified optimal"
    lines.append(f"ICC verdict: {status}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _cmd_mais(args: argparse.Namespace) -> int:
    g = _read_graph(args.input)
    value, witness = bounds.mais(g, args.cap)
    if args.json:
        _emit(_json_dump({"mais": value, "witness": sorted(witness)}), args.out)
    else:
        _emit(f"MAIS = {value}; witness {sorted(witness)}\n", args.out)
    return EXIT_OK


def _cmd_frac(args: argparse.Namespace) -> int:
    g = _read_graph(args.input)
    sol = schemes.fractional_icc(g, cap=args.cap, budget=args.budget)
    obj = f"{sol.objective.numerator}/{sol.objective.denominator}"
    if args.json:
        data = {
            "objective": obj,
            "terms": [
                {"vertices": list(vs), "weight": f"{w.numerator}/{w.denominator}", "cost": cost}
                for vs, w, cost in sol.terms
            ],
        }
        _emit(_json_dump(data), args.out)
    else:
        lines = [f"fractional ICC objective = {obj}"]
        lines += [
            f"  weight {w} on {list(vs)} (cost {cost})" for vs, w, cost in sol.terms
        ]
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _cmd_certify(args: argparse.Namespace) -> int:
    g = _read_graph(args.input)
    if args.inner:
        try:
            inner = [int(x) for x in args.inner.split(",")]
        except ValueError:
            raise GraphFormatError(f"bad --inner list {args.inner!r}")
        result = structures.validate_ic(g, inner)
        if isinstance(result, structures.IcViolation):
            _emit(
                _json_dump({"valid": False, "violation": result.kind, "witness": list(map(list, result.witness)) if result.kind.endswith("path") or result.kind == "i_cycle" else list(result.witness)}),
                args.out,
            )
            return EXIT_VERIFY_FAILED
        ic = result
    else:
        search = structures.find_ic_structures(g, args.budget)
        spanning = [s for s in search.structures if s.graph.n == g.n]
        if not spanning:
            _emit(_json_dump({"valid": False, "reason": "no spanning structure found"}), args.out)
            return EXIT_VERIFY_FAILED
        ic = spanning[0]
    cert = bounds.certify_optimal(ic, args.budget)
    data = {
        "valid": True,
        "inner": sorted(ic.host_inner),
        "length": ic.length,
        "kind": cert.kind,
        "removed": sorted(cert.removed),
        "cycles": [list(c) for c in cert.cycles],
        "groups": [[list(a), list(b)] for a, b in cert.groups],
    }
    _emit(_json_dump(data), args.out)
    return EXIT_OK


def _cmd_encode(args: argparse.Namespace) -> int:
    g = _read_graph(args.input)
    if args.messages:
        msgs = _read_messages(args.messages)
        if msgs.n != g.n:
            raise codec.MessageFormatError(f"{msgs.n} messages for {g.n} receivers")
    else:
        msgs = codec.random_block(g.n, args.t, args.seed)
    code, payload = codec.encode_graph(g, args.scheme, msgs, budget=args.budget)
    _emit(codec.code_to_json(code), args.out)
    if args.payload:
        _emit(codec.format_message_lines(payload), args.payload)
    if args.emit_messages:
        _emit(codec.format_message_lines(msgs.messages), args.emit_messages)
    return EXIT_OK


def _cmd_decode(args: argparse.Namespace) -> int:
    g = _read_graph(args.input)
    with open(args.code, encoding="utf-8") as fh:
        code = codec.code_from_json_dict(json.load(fh))
    with open(args.payload, encoding="utf-8") as fh:
        payload_block = codec.parse_message_lines(fh.read())
    msgs = _read_messages(args.messages)
    payload = payload_block.messages
    if len(payload) != code.length:
        raise codec.MessageFormatError(
            f"payload has {len(payload)} lines for a length-{code.length} code"
        )
    recovered = codec.decode_graph(g, code, payload, msgs)
    if args.json:
        _emit(_json_dump({"recovered": [m.hex() for m in recovered]}), args.out)
    else:
        _emit(codec.format_message_lines(recovered), args.out)
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    g = _read_graph(args.input)
    with open(args.code, encoding="utf-8") as fh:
        code = codec.code_from_json_dict(json.load(fh))
    verdicts = codec.decodability_oracle(g, code)
    ok = all(verdicts)
    if args.json:
        _emit(_json_dump({"decodable": list(verdicts), "all": ok}), args.out)
    else:
        failing = [i + 1 for i, v in enumerate(verdicts) if not v]
        msg = "all receivers decode" if ok else f"undecodable receivers: {failing}"
        _emit(msg + "\n", args.out)
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


_HANDLERS = {
    "gen": _cmd_gen,
    "analyze": _cmd_analyze,
    "mais": _cmd_mais,
    "frac": _cmd_frac,
    "certify": _cmd_certify,
    "encode": _cmd_encode,
    "decode": _cmd_decode,
    "verify": _cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.verb](args)
    except (GraphFormatError, codec.MessageFormatError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE_ERROR
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE_ERROR
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP_EXCEEDED
    except (ValueError, BidirectionalArcError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE_ERROR


if __name__ == "__main__":
    sys.exit(main())
