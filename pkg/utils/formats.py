"""Text formats: trigraphs with optional weights and region hints,
separators, bicliques, basic certificates and tree dumps.

Trigraph files (UTF-8, ``#`` comments)::

    trigraph v1
    n 6
    theta 0 1 1          # u < v, val in {1, 0}; unlisted pairs are -1
    theta 2 3 0
    weight 0 1 0 0       # v w_r w_c w_ac
    pairweight 2 3 0 0   # u v w_c w_ac, switchable pairs only
    region 0 1 2         # side of a recorded 2-join, used as a split hint

Separator files::

    separator v1
    n 4
    cut 0,1 | 2,3
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Optional, Sequence

from core.basic import BasicCertificate, BasicKind
from core.decomposition import DecompositionTree, Leaf
from core.errors import FormatError
from core.kjoin import CompositionTree, KLeaf
from core.separation import CSSeparator, Cut
from core.trigraph import STRONG_EDGE, SWITCHABLE, Trigraph, VertexSubset, mask_of, members
from core.weights import Biclique, BicliqueKind, WeightedTrigraph

FORMAT_VERSION = "v1"


@dataclass(frozen=True)
class TrigraphFile:
    trigraph: Trigraph
    weights: Optional[WeightedTrigraph] = None
    regions: tuple[VertexSubset, ...] = ()


def _csv(mask: VertexSubset) -> str:
    return ",".join(str(v) for v in members(mask))


def _int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise FormatError(f"line {lineno}: expected an integer, got {token!r}", line=lineno)


def _ints(tokens: Sequence[str], lineno: int) -> list[int]:
    return [_int(t, lineno) for t in tokens]


def _csv_mask(field: str, n: int, lineno: int) -> VertexSubset:
    vertices = [_int(t.strip(), lineno) for t in field.split(",") if t.strip()]
    if any(not 0 <= v < n for v in vertices):
        raise FormatError(f"line {lineno}: vertex out of range 0..{n - 1}", line=lineno)
    if len(set(vertices)) != len(vertices):
        raise FormatError(f"line {lineno}: repeated vertex", line=lineno)
    return mask_of(vertices)


def _lines(text: str) -> Iterator[tuple[int, str]]:
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _read(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise FormatError(f"cannot read {path}: {e}")


def _header(lineno: int, fields: list[str], kind: str) -> None:
    if fields != [kind, FORMAT_VERSION]:
        raise FormatError(f"line {lineno}: expected '{kind} {FORMAT_VERSION}'", line=lineno)


def _count(lineno: int, fields: list[str]) -> int:
    if len(fields) != 2:
        raise FormatError(f"line {lineno}: 'n' takes one integer", line=lineno)
    n = _int(fields[1], lineno)
    if n < 0:
        raise FormatError(f"line {lineno}: negative vertex count", line=lineno)
    return n


# ---------------------------------------------------------------------------
# trigraphs
# ---------------------------------------------------------------------------

def dump_trigraph(T: Trigraph, weights: Optional[WeightedTrigraph] = None,
                  regions: Sequence[VertexSubset] = ()) -> str:
    out = [f"trigraph {FORMAT_VERSION}", f"n {T.n}"]
    for u in range(T.n):
        for v in range(u + 1, T.n):
            value = T.value(u, v)
            if value in (STRONG_EDGE, SWITCHABLE):
                out.append(f"theta {u} {v} {value}")
    if weights is not None:
        for v in range(T.n):
            out.append(f"weight {v} {weights.real[v]} {weights.extra_c[v]} {weights.extra_ac[v]}")
        for u, v in T.switchable_pairs():
            c, ac = weights.pair_weight(u, v)
            if c or ac:
                out.append(f"pairweight {u} {v} {c} {ac}")
    for region in regions:
        out.append("region " + " ".join(str(v) for v in members(region)))
    return "\n".join(out) + "\n"


class _TrigraphReader:
    def __init__(self):
        self.n: Optional[int] = None
        self.seen_header = False
        self.values: dict[tuple[int, int], int] = {}
        self.vertex_weights: dict[int, tuple[int, int, int]] = {}
        self.pair_weights: dict[tuple[int, int], tuple[int, int]] = {}
        self.regions: list[VertexSubset] = []

    def pair(self, lineno: int, u: int, v: int) -> tuple[int, int]:
        if u == v or not (0 <= u < self.n and 0 <= v < self.n):
            raise FormatError(f"line {lineno}: invalid pair {u} {v} for n={self.n}", line=lineno)
        return (u, v) if u < v else (v, u)

    def feed(self, lineno: int, fields: list[str]) -> None:
        key = fields[0]
        if not self.seen_header:
            _header(lineno, fields, "trigraph")
            self.seen_header = True
            return
        if key == "n":
            if self.n is not None:
                raise FormatError(f"line {lineno}: repeated 'n'", line=lineno)
            self.n = _count(lineno, fields)
            return
        if self.n is None:
            raise FormatError(f"line {lineno}: '{key}' before 'n'", line=lineno)
        numbers = _ints(fields[1:], lineno)
        if key == "theta":
            if len(numbers) != 3:
                raise FormatError(f"line {lineno}: 'theta' takes u v val", line=lineno)
            u, v, val = numbers
            if not u < v:
                raise FormatError(f"line {lineno}: theta needs u < v", line=lineno)
            if val not in (STRONG_EDGE, SWITCHABLE):
                raise FormatError(f"line {lineno}: theta value must be 1 or 0, got {val}", line=lineno)
            p = self.pair(lineno, u, v)
            if p in self.values:
                raise FormatError(f"line {lineno}: duplicate theta for pair {u} {v}", line=lineno)
            self.values[p] = val
        elif key == "weight":
            if len(numbers) != 4 or not 0 <= numbers[0] < self.n or min(numbers[1:]) < 0:
                raise FormatError(f"line {lineno}: 'weight' takes a vertex and three non-negative weights",
                                  line=lineno)
            if numbers[0] in self.vertex_weights:
                raise FormatError(f"line {lineno}: duplicate weight for vertex {numbers[0]}", line=lineno)
            self.vertex_weights[numbers[0]] = tuple(numbers[1:])
        elif key == "pairweight":
            if len(numbers) != 4 or min(numbers[2:]) < 0:
                raise FormatError(f"line {lineno}: 'pairweight' takes u v and two non-negative weights",
                                  line=lineno)
            self.pair_weights[self.pair(lineno, *numbers[:2])] = tuple(numbers[2:])
        elif key == "region":
            if any(not 0 <= v < self.n for v in numbers):
                raise FormatError(f"line {lineno}: region vertex out of range", line=lineno)
            self.regions.append(mask_of(numbers))
        else:
            raise FormatError(f"line {lineno}: unknown keyword {key!r}", line=lineno)

    def result(self) -> TrigraphFile:
        if not self.seen_header:
            raise FormatError("empty trigraph file")
        if self.n is None:
            raise FormatError("missing 'n' line")
        T = Trigraph.from_pairs(self.n, self.values)
        weights = None
        if self.vertex_weights or self.pair_weights:
            for p in self.pair_weights:
                if T.value(*p) != SWITCHABLE:
                    raise FormatError(f"pairweight on {p[0]} {p[1]}, which is not a switchable pair")
            triples = [self.vertex_weights.get(v, (0, 0, 0)) for v in range(self.n)]
            weights = WeightedTrigraph(
                T,
                tuple(t[0] for t in triples),
                tuple(t[1] for t in triples),
                tuple(t[2] for t in triples),
                {p: w[0] for p, w in self.pair_weights.items() if w[0]},
                {p: w[1] for p, w in self.pair_weights.items() if w[1]},
            )
        return TrigraphFile(T, weights, tuple(self.regions))


def parse_trigraph(text: str) -> TrigraphFile:
    reader = _TrigraphReader()
    for lineno, line in _lines(text):
        reader.feed(lineno, line.split())
    return reader.result()


def load_trigraph(path) -> TrigraphFile:
    return parse_trigraph(_read(path))


def save_text(path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


# ---------------------------------------------------------------------------
# separators and bicliques
# ---------------------------------------------------------------------------

def dump_cut(cut: Cut) -> str:
    return f"cut {_csv(cut.clique_side)} | {_csv(cut.stable_side)}"


def dump_separator(F: CSSeparator) -> str:
    out = [f"separator {FORMAT_VERSION}", f"n {F.n}"] + [dump_cut(c) for c in F]
    return "\n".join(out) + "\n"


def parse_separator(text: str) -> CSSeparator:
    n = None
    seen_header = False
    cuts = []
    for lineno, line in _lines(text):
        fields = line.split()
        if not seen_header:
            _header(lineno, fields, "separator")
            seen_header = True
        elif fields[0] == "n" and n is None:
            n = _count(lineno, fields)
        elif fields[0] == "cut":
            if n is None:
                raise FormatError(f"line {lineno}: 'cut' before 'n'", line=lineno)
            body = line[len("cut"):]
            if body.count("|") != 1:
                raise FormatError(f"line {lineno}: a cut needs exactly one '|'", line=lineno)
            left, right = body.split("|")
            cut = Cut(_csv_mask(left, n, lineno), _csv_mask(right, n, lineno))
            if not cut.is_partition_of(n):
                raise FormatError(f"line {lineno}: cut sides do not partition 0..{n - 1}", line=lineno)
            cuts.append(cut)
        else:
            raise FormatError(f"line {lineno}: unexpected {fields[0]!r}", line=lineno)
    if n is None:
        raise FormatError("missing 'n' line")
    return CSSeparator(n, tuple(cuts))


def load_separator(path) -> CSSeparator:
    return parse_separator(_read(path))


def dump_biclique(b: Biclique) -> str:
    return f"biclique {b.kind.value} | {_csv(b.x)} | {_csv(b.y)} | {b.weight}"


def parse_biclique(line: str, n: int) -> Biclique:
    fields = line.split("|")
    head = fields[0].split()
    if len(fields) != 4 or len(head) != 2 or head[0] != "biclique":
        raise FormatError(f"not a biclique line: {line!r}")
    try:
        kind = BicliqueKind(head[1])
    except ValueError:
        raise FormatError(f"unknown biclique kind {head[1]!r}")
    x, y = _csv_mask(fields[1], n, 1), _csv_mask(fields[2], n, 1)
    if x & y:
        raise FormatError("biclique sides overlap")
    return Biclique(x, y, kind, _int(fields[3].strip(), 1))


# ---------------------------------------------------------------------------
# certificates and trees
# ---------------------------------------------------------------------------

def dump_certificate(cert: BasicCertificate) -> list[str]:
    out = [f"certificate {cert.kind.value}"]
    if cert.bipartition is not None:
        out += [f"part {_csv(p)}" for p in cert.bipartition]
    if cert.root is not None:
        for v, (p, q) in enumerate(cert.root.edge_of):
            out.append(f"rootedge {v} {p[0]}{p[1]} {q[0]}{q[1]}")
    if cert.good_partition is not None:
        X, Y = cert.good_partition
        out += [f"good-x {_csv(X)}", f"good-y {_csv(Y)}"]
    out.append("end")
    return out


def _origin(origin) -> str:
    return ",".join("m" if o is None else str(o) for o in origin)


def dump_decomposition(tree: DecompositionTree, depth: int = 0) -> str:
    """One line per node; leaves carry their certificate block."""
    pad = "  " * depth
    if isinstance(tree, Leaf):
        lines = [f"{pad}leaf n={tree.trigraph.n} origin={_origin(tree.origin)}"]
        lines += [f"{pad}  {line}" for line in dump_certificate(tree.certificate)]
        return "\n".join(lines)
    lines = [f"{pad}node n={tree.trigraph.n} {tree.split.describe()}"]
    for record, child in tree.children:
        markers = ",".join(str(m) for m in record.markers)
        lines.append(f"{pad}  block X{record.side} {record.kind.value} {record.parity.value} markers={markers}")
        lines.append(dump_decomposition(child, depth + 2))
    return "\n".join(lines)


def dump_composition(tree: CompositionTree, depth: int = 0) -> str:
    pad = "  " * depth
    if isinstance(tree, KLeaf):
        parts = " ".join("{" + ",".join(str(v) for v in p) + "}" for p in tree.parts)
        return f"{pad}leaf n={tree.trigraph.n} parts {parts}"
    return "\n".join([
        f"{pad}join n={tree.trigraph.n} {tree.iface.r}x{tree.iface.s} iface={tree.iface.describe()}",
        dump_composition(tree.left, depth + 1),
        dump_composition(tree.right, depth + 1),
    ])
