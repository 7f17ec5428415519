"""Encoders and decoders for every scheme, plus the decodability oracle.

Codes are coefficient vectors, never opaque payloads, so one oracle can audit
any scheme: receiver i can decode iff its unit vector lies in the row span of
the code's coefficient vectors together with its side-information units.
XOR schemes live over GF(2); the partial-clique scheme uses GF(2^8) symbols.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping

from . import schemes
from .families import _SplitMix64
from .galois import field_inv, field_mul, solve_tall, vandermonde_mds
from .graphs import Digraph
from .structures import ICStructure, extract_tree


class UndecodableError(ValueError):
    """Receiver cannot recover its message from the code and its side information."""


class MessageFormatError(ValueError):
    """Malformed message or payload file."""


# -- payload primitives -------------------------------------------------------


def _xor(a: bytes, b: bytes) -> bytes:
    return bytes(x ^ y for x, y in zip(a, b, strict=True))


def _scale(data: bytes, c: int) -> bytes:
    if c == 1:
        return data
    return bytes(field_mul(c, x) for x in data)


@dataclass(frozen=True)
class MessageBlock:
    """N messages of t bytes each; message i belongs to receiver i."""

    messages: tuple[bytes, ...]

    def __post_init__(self) -> None:
        if not self.messages:
            raise ValueError("message block cannot be empty")
        t = len(self.messages[0])
        if t < 1 or any(len(m) != t for m in self.messages):
            raise ValueError("messages must share one positive byte length")

    @property
    def n(self) -> int:
        return len(self.messages)

    @property
    def t(self) -> int:
        return len(self.messages[0])

    def message(self, v: int) -> bytes:
        return self.messages[v - 1]

    def side_info(self, g: Digraph, v: int) -> dict[int, bytes]:
        return {u: self.message(u) for u in sorted(g.out_neighbors(v))}


def random_block(n: int, t: int, seed: int) -> MessageBlock:
    """Deterministic pseudo-random payload for round-trip tests."""
    rng = _SplitMix64(seed)
    msgs = []
    for _ in range(n):
        msgs.append(bytes((rng.next_u64() >> (8 * (k % 8))) & 0xFF for k in range(t)))
    return MessageBlock(tuple(msgs))


def parse_message_lines(text: str) -> MessageBlock:
    """Message file format: one hex line per receiver, equal lengths."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise MessageFormatError("empty message file")
    try:
        msgs = tuple(bytes.fromhex(ln) for ln in lines)
    except ValueError as exc:
        raise MessageFormatError(f"bad hex line: {exc}") from exc
    try:
        return MessageBlock(msgs)
    except ValueError as exc:
        raise MessageFormatError(str(exc)) from exc


def format_message_lines(msgs: Iterable[bytes]) -> str:
    return "\n".join(m.hex() for m in msgs) + "\n"


# -- code values ----------------------------------------------------------------


@dataclass(frozen=True)
class CodedSymbol:
    """One transmitted symbol: nonzero coefficients over receiver messages."""

    coeffs: tuple[tuple[int, int], ...]  # (vertex, coefficient), sorted by vertex

    def __post_init__(self) -> None:
        if not self.coeffs:
            raise ValueError("coded symbol needs at least one nonzero coefficient")
        for v, c in self.coeffs:
            if not 1 <= c <= 255:
                raise ValueError(f"coefficient {c} for vertex {v} out of range 1..255")

    @staticmethod
    def xor_of(vertices: Iterable[int]) -> "CodedSymbol":
        return CodedSymbol(tuple((v, 1) for v in sorted(set(vertices))))

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.coeffs)

    def as_dict(self) -> dict[int, int]:
        return dict(self.coeffs)

    def evaluate(self, msgs: MessageBlock) -> bytes:
        acc = bytes(msgs.t)
        for v, c in self.coeffs:
            acc = _xor(acc, _scale(msgs.message(v), c))
        return acc


@dataclass(frozen=True)
class IndexCode:
    """Ordered coded symbols with a scheme tag; length is the symbol count."""

    symbols: tuple[CodedSymbol, ...]
    scheme: str

    @property
    def length(self) -> int:
        return len(self.symbols)

    def evaluate(self, msgs: MessageBlock) -> tuple[bytes, ...]:
        return tuple(s.evaluate(msgs) for s in self.symbols)


def code_to_json_dict(code: IndexCode) -> dict:
    return {
        "scheme": code.scheme,
        "symbols": [
            {"coeffs": {str(v): c for v, c in s.coeffs}} for s in code.symbols
        ],
    }


def code_from_json_dict(data: dict) -> IndexCode:
    try:
        symbols = tuple(
            CodedSymbol(tuple(sorted((int(v), int(c)) for v, c in s["coeffs"].items())))
            for s in data["symbols"]
        )
        return IndexCode(symbols, str(data["scheme"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise MessageFormatError(f"bad code JSON: {exc}") from exc


def code_to_json(code: IndexCode) -> str:
    return json.dumps(code_to_json_dict(code), sort_keys=True, indent=2) + "\n"


# -- per-structure interlinked-cycle codec ---------------------------------------


def _icc_symbol_order(ic: ICStructure) -> list[tuple[int, ...]]:
    """Symbol supports for one structure: inner XOR first, then per non-inner."""
    supports = [tuple(sorted(ic.host_inner))]
    for j in sorted(set(ic.vertex_ids) - ic.host_inner):
        supports.append(tuple(sorted({j} | ic.host_out_neighbors(j))))
    return supports


def icc_encode(ic: ICStructure, msgs: MessageBlock) -> tuple[IndexCode, tuple[bytes, ...]]:
    """N - K + 1 symbols: the inner XOR, then x_j XOR its out-neighborhood."""
    if max(ic.vertex_ids) > msgs.n:
        raise ValueError("message block does not cover the structure's vertices")
    code = IndexCode(
        tuple(CodedSymbol.xor_of(s) for s in _icc_symbol_order(ic)), "icc"
    )
    return code, code.evaluate(msgs)


def icc_decode(
    ic: ICStructure,
    payload: tuple[bytes, ...],
    receiver: int,
    side_info: Mapping[int, bytes],
) -> bytes:
    """Decode one receiver from an icc_encode payload and its side information.

    Non-inner receivers peel their own symbol.  An inner receiver XORs the
    symbols of its tree's non-inner vertices into the inner symbol; interior
    messages cancel telescopically, and whatever the telescoping leaves
    besides the receiver's own message is cancelled with side information.
    When the non-inner part of the structure is acyclic, the residue is
    exactly the receiver's out-neighborhood; structures with cycles among
    non-inner vertices can leave a residue outside it, in which case this
    tree-based strategy fails even though the code itself may still be
    decodable by rank (see decode_with_side_info).
    """
    if receiver not in ic.vertex_ids:
        raise ValueError(f"receiver {receiver} is not in the structure")
    dense = ic.vertex_ids.index(receiver) + 1
    supports = _icc_symbol_order(ic)
    non_inner_hosts = sorted(set(ic.vertex_ids) - ic.host_inner)
    index_of = {j: i + 1 for i, j in enumerate(non_inner_hosts)}

    def side(host: int) -> bytes:
        try:
            return side_info[host]
        except KeyError:
            raise UndecodableError(f"missing side information for vertex {host}") from None

    if dense not in ic.inner:
        acc = payload[index_of[receiver]]
        for q in sorted(ic.host_out_neighbors(receiver)):
            acc = _xor(acc, side(q))
        return acc
    tree = extract_tree(ic, dense)
    acc = payload[0]
    residue = set(supports[0])
    for v in sorted(tree.vertices - ic.inner):
        idx = index_of[ic.to_host(v)]
        acc = _xor(acc, payload[idx])
        residue ^= set(supports[idx])
    if receiver not in residue:
        raise UndecodableError(
            f"tree telescoping cancelled receiver {receiver}'s own message"
        )
    for q in sorted(residue - {receiver}):
        acc = _xor(acc, side(q))
    return acc


# -- cycle and clique codecs -------------------------------------------------------


def cycle_encode(cycle: tuple[int, ...], msgs: MessageBlock) -> tuple[IndexCode, tuple[bytes, ...]]:
    """Adjacent-pair XOR symbols along a closed cycle tuple (M - 1 symbols)."""
    if len(cycle) < 3 or cycle[0] != cycle[-1]:
        raise ValueError("expected a closed cycle tuple <v1, ..., vM, v1>")
    body = cycle[:-1]
    if len(set(body)) != len(body):
        raise ValueError("cycle vertices must be distinct")
    code = IndexCode(
        tuple(CodedSymbol.xor_of((a, b)) for a, b in zip(body, body[1:])), "cy"
    )
    return code, code.evaluate(msgs)


def cycle_decode(
    cycle: tuple[int, ...],
    payload: tuple[bytes, ...],
    receiver: int,
    side_info: Mapping[int, bytes],
) -> bytes:
    """Each receiver cancels its successor's message; the last uses the whole sum."""
    body = cycle[:-1]
    if receiver not in body:
        raise ValueError(f"receiver {receiver} is not on the cycle")
    pos = body.index(receiver)
    if pos < len(body) - 1:
        return _xor(payload[pos], side_info[body[pos + 1]])
    acc = side_info[body[0]]
    for chunk in payload:
        acc = _xor(acc, chunk)
    return acc


def clique_encode(
    members: Iterable[int], msgs: MessageBlock
) -> tuple[IndexCode, tuple[bytes, ...]]:
    """One symbol XOR-ing every member's message (uncoded for a singleton)."""
    ms = sorted(set(members))
    if not ms:
        raise ValueError("clique must be nonempty")
    code = IndexCode((CodedSymbol.xor_of(ms),), "cl")
    return code, code.evaluate(msgs)


def clique_decode(
    members: Iterable[int],
    payload: tuple[bytes, ...],
    receiver: int,
    side_info: Mapping[int, bytes],
) -> bytes:
    ms = sorted(set(members))
    if receiver not in ms:
        raise ValueError(f"receiver {receiver} is not in the clique")
    acc = payload[0]
    for v in ms:
        if v != receiver:
            acc = _xor(acc, side_info[v])
    return acc


# -- partial-clique MDS codec ---------------------------------------------------------


def partial_clique_encode(
    g: Digraph, msgs: MessageBlock
) -> tuple[IndexCode, tuple[bytes, ...]]:
    """Treat the whole digraph as one partial clique: n - min-out-degree MDS rows."""
    symbols, payload = _pc_block(g, tuple(g.vertices()), msgs)
    return IndexCode(tuple(symbols), "pc"), tuple(payload)


def _pc_block(
    g: Digraph, block: tuple[int, ...], msgs: MessageBlock
) -> tuple[list[CodedSymbol], list[bytes]]:
    sub, ids = g.induced(block)
    k = sub.n - sub.min_out_degree()
    mds = vandermonde_mds(k, sub.n)
    symbols = []
    payload = []
    for r in range(k):
        row = mds.row(r)
        symbols.append(
            CodedSymbol(tuple((ids[c], row[c]) for c in range(sub.n)))
        )
        acc = bytes(msgs.t)
        for c in range(sub.n):
            acc = _xor(acc, _scale(msgs.message(ids[c]), row[c]))
        payload.append(acc)
    return symbols, payload


def partial_clique_decode(
    g: Digraph,
    payload: tuple[bytes, ...],
    receiver: int,
    side_info: Mapping[int, bytes],
) -> bytes:
    """Substitute known messages into the MDS equations and solve the rest.

    The receiver's in-block side information bounds the unknown count by the
    row count, and the Vandermonde columns for the unknowns stay independent,
    so the reduced system always solves.
    """
    g._check_vertex(receiver)
    n = g.n
    k = n - g.min_out_degree()
    mds = vandermonde_mds(k, n)
    t = len(payload[0])
    known = {v: side_info[v] for v in sorted(g.out_neighbors(receiver)) if v in side_info}
    unknown = [v for v in g.vertices() if v != receiver and v not in known]
    unknown.append(receiver)
    unknown.sort()
    if len(unknown) > k:
        raise UndecodableError(
            f"receiver {receiver} holds {len(known)} side messages; {len(unknown)} unknowns exceed {k} equations"
        )
    matrix = []
    rhs = []
    for r in range(k):
        row = mds.row(r)
        matrix.append([row[v - 1] for v in unknown])
        acc = payload[r]
        for v, data in known.items():
            acc = _xor(acc, _scale(data, row[v - 1]))
        rhs.append(list(acc))
    solution = solve_tall(matrix, rhs)
    return bytes(solution[unknown.index(receiver)])


# -- extended ICC ------------------------------------------------------------------------


def eicc_encode(
    g: Digraph, msgs: MessageBlock, budget: int | None = None
) -> tuple[IndexCode, tuple[bytes, ...]]:
    """Super-vertex-aware encoding; never longer than the plain scheme's code.

    A merged vertex contributes the XOR of its members wherever it appears,
    so each symbol is just the XOR over its expanded support.
    """
    res = schemes.eicc_length(g, budget=budget)
    code = IndexCode(
        tuple(CodedSymbol.xor_of(s) for s in res.symbol_supports), "eicc"
    )
    return code, code.evaluate(msgs)


# -- whole-graph dispatch ------------------------------------------------------------------


SCHEME_TAGS = ("icc", "eicc", "cl", "cy", "pc")


def encode_graph(
    g: Digraph, scheme: str, msgs: MessageBlock, budget: int | None = None
) -> tuple[IndexCode, tuple[bytes, ...]]:
    """Encode an instance under one scheme's optimal cover."""
    if msgs.n != g.n:
        raise ValueError(f"instance has {g.n} receivers but {msgs.n} messages given")
    if scheme == "icc":
        res = schemes.icc_length(g, budget=budget)
        supports = schemes.icc_symbol_supports(res.partition)
        code = IndexCode(tuple(CodedSymbol.xor_of(s) for s in supports), "icc")
        return code, code.evaluate(msgs)
    if scheme == "eicc":
        return eicc_encode(g, msgs, budget)
    if scheme == "cl":
        cover = schemes.clique_cover_number(g)
        symbols = [CodedSymbol.xor_of(b.vertices) for b in cover.partition.blocks]
        code = IndexCode(tuple(symbols), "cl")
        return code, code.evaluate(msgs)
    if scheme == "cy":
        cover = schemes.cycle_cover_number(g)
        symbols: list[CodedSymbol] = []
        for b in cover.partition.blocks:
            if b.kind == "cycle":
                closed = (*b.order, b.order[0])
                symbols.extend(cycle_encode(closed, msgs)[0].symbols)
            else:
                symbols.append(CodedSymbol.xor_of(b.vertices))
        code = IndexCode(tuple(symbols), "cy")
        return code, code.evaluate(msgs)
    if scheme == "pc":
        cover = schemes.partial_clique_number(g)
        symbols = []
        payload: list[bytes] = []
        for b in cover.partition.blocks:
            s, p = _pc_block(g, b.vertices, msgs)
            symbols.extend(s)
            payload.extend(p)
        return IndexCode(tuple(symbols), "pc"), tuple(payload)
    raise ValueError(f"unknown scheme {scheme!r}; expected one of {SCHEME_TAGS}")


# -- decodability oracle ----------------------------------------------------------------------


def decodability_oracle(g: Digraph, code: IndexCode) -> tuple[bool, ...]:
    """Per-receiver decodability by rank: e_i against code rows plus side units.

    Runs over GF(2) bitmasks when every coefficient is one, GF(2^8) vectors
    otherwise; subfield and extension ranks agree, so the fast path is safe.
    """
    n = g.n
    if all(c == 1 for s in code.symbols for _, c in s.coeffs):
        rows = []
        for s in code.symbols:
            m = 0
            for v, _ in s.coeffs:
                if v > n:
                    raise ValueError(f"code mentions vertex {v} beyond n={n}")
                m |= 1 << (v - 1)
            rows.append(m)
        verdicts = []
        for i in g.vertices():
            basis: dict[int, int] = {}
            for row in rows + [1 << (j - 1) for j in sorted(g.out_neighbors(i))]:
                row = _gf2_reduce(row, basis)
                if row:
                    basis[row.bit_length() - 1] = row
            verdicts.append(_gf2_reduce(1 << (i - 1), basis) == 0)
        return tuple(verdicts)

    base_rows = []
    for s in code.symbols:
        vec = [0] * n
        for v, c in s.coeffs:
            if v > n:
                raise ValueError(f"code mentions vertex {v} beyond n={n}")
            vec[v - 1] = c
        base_rows.append(vec)
    verdicts = []
    for i in g.vertices():
        rows = [r[:] for r in base_rows]
        for j in sorted(g.out_neighbors(i)):
            unit = [0] * n
            unit[j - 1] = 1
            rows.append(unit)
        basis: dict[int, list[int]] = {}
        for row in rows:
            row = _gf256_reduce(row, basis)
            piv = next((c for c in range(n) if row[c]), None)
            if piv is not None:
                inv = field_inv(row[piv])
                basis[piv] = [field_mul(inv, x) for x in row]
        target = [0] * n
        target[i - 1] = 1
        verdicts.append(all(x == 0 for x in _gf256_reduce(target, basis)))
    return tuple(verdicts)


def _gf2_reduce(row: int, basis: dict[int, int]) -> int:
    while row:
        piv = row.bit_length() - 1
        b = basis.get(piv)
        if b is None:
            return row
        row ^= b
    return 0


def _gf256_reduce(row: list[int], basis: dict[int, list[int]]) -> list[int]:
    row = row[:]
    for piv in sorted(basis):
        if row[piv]:
            f = row[piv]
            brow = basis[piv]
            row = [x ^ field_mul(f, y) for x, y in zip(row, brow)]
    return row


# -- generic payload decoding --------------------------------------------------------------------


def decode_with_side_info(
    g: Digraph,
    code: IndexCode,
    payload: tuple[bytes, ...],
    receiver: int,
    side_info: Mapping[int, bytes],
    t: int,
) -> bytes:
    """Scheme-agnostic decoding by Gaussian elimination with payload tracking.

    Finds the combination of received symbols and side messages equal to the
    receiver's unit vector and applies the same combination to the bytes.
    """
    g._check_vertex(receiver)
    if len(payload) != code.length:
        raise ValueError("payload length does not match the code")
    n = g.n
    rows: list[tuple[list[int], bytes]] = []
    for s, data in zip(code.symbols, payload):
        vec = [0] * n
        for v, c in s.coeffs:
            vec[v - 1] = c
        rows.append((vec, data))
    for j in sorted(g.out_neighbors(receiver)):
        if j in side_info:
            unit = [0] * n
            unit[j - 1] = 1
            rows.append((unit, side_info[j]))
    basis: dict[int, tuple[list[int], bytes]] = {}
    for vec, data in rows:
        vec = vec[:]
        for piv in sorted(basis):
            if vec[piv]:
                f = vec[piv]
                bvec, bdata = basis[piv]
                vec = [x ^ field_mul(f, y) for x, y in zip(vec, bvec)]
                data = _xor(data, _scale(bdata, f))
        piv = next((c for c in range(n) if vec[c]), None)
        if piv is not None:
            inv = field_inv(vec[piv])
            basis[piv] = ([field_mul(inv, x) for x in vec], _scale(data, inv))
    tvec = [0] * n
    tvec[receiver - 1] = 1
    tdata = bytes(t)
    for piv in sorted(basis):
        if tvec[piv]:
            f = tvec[piv]
            bvec, bdata = basis[piv]
            tvec = [x ^ field_mul(f, y) for x, y in zip(tvec, bvec)]
            tdata = _xor(tdata, _scale(bdata, f))
    if any(tvec):
        raise UndecodableError(f"receiver {receiver} cannot decode from this code")
    return tdata


def decode_graph(
    g: Digraph,
    code: IndexCode,
    payload: tuple[bytes, ...],
    msgs: MessageBlock,
) -> tuple[bytes, ...]:
    """Recover every receiver's message, sourcing side information from msgs."""
    out = []
    for i in g.vertices():
        side = msgs.side_info(g, i)
        out.append(decode_with_side_info(g, code, payload, i, side, msgs.t))
    return tuple(out)
