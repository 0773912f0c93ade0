"""Text formats for systems, connectors and relations.

Native system format (``.chc``)::

    functor PLTS labels=a,b          # or DLTS / DET, or SUSP / SUSPIE in=.. out=..
    states s0 s1
    s0: a->s1 b->s0
    s1:

DLTS arrows carry a weight, ``a->s1:1/2``.  Weights are exact: ``p/q`` or
integers, never decimals.  A state without a line has the empty term.

Aldebaran ``.aut`` files are read by :func:`parse_aut`.  Connectors use the
s-expression language documented at :func:`parse_connector`.  Relations are
written as sorted tab-separated pairs.
"""

from __future__ import annotations

import os
import re
import warnings
from fractions import Fraction

from .connectors import (
    IOCO, KR, LF, LR, LT, Comp, Connector, Conv, Id, Incl, Kant, Meet, Prod, Proj1, Proj2,
    PullLeft, PullRight, Relabel, RelabelConv, Weak,
)
from .errors import ParseError, RelconnError, TermViolation
from .functors import (
    DET, DLTS, PLTS, PMAP_MODES, SUSP, SUSPIE, Coalgebra, FrozenMap, Pair, PMap, dist, is_susp,
    kind_str,
)
from .liftings import (
    Box, BigBox, BigDia, Dia, Down, LambdaRel, PGe, PosBool, SAnd, SApp, SBot, SOr, STop,
    SVar, Up, _max_var, parse_rational,
)
from .relcore import FinSet, Rel, rel


# --------------------------------------------------------------------------
# native coalgebra format

_NAME = re.compile(r"[^\s:,#>\-][^\s:,#]*")


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _parse_header(line, lineno):
    parts = line.split()
    if len(parts) < 2 or parts[0] != "functor":
        raise ParseError("expected 'functor <KIND> key=...'", line=lineno)
    name = parts[1].upper()
    keys = {}
    for p in parts[2:]:
        if "=" not in p:
            raise ParseError(f"expected key=values, got {p!r}", line=lineno)
        k, v = p.split("=", 1)
        keys[k] = tuple(x for x in v.split(",") if x)
    try:
        if name in ("PLTS", "DLTS", "DET"):
            if set(keys) - {"labels"}:
                raise ParseError(f"{name} takes only labels=", line=lineno)
            labels = keys.get("labels", ())
            return {"PLTS": PLTS, "DLTS": DLTS, "DET": DET}[name](labels)
        if name in ("SUSP", "SUSPIE"):
            if set(keys) - {"in", "out"}:
                raise ParseError(f"{name} takes in= and out=", line=lineno)
            build = SUSP if name == "SUSP" else SUSPIE
            return build(keys.get("in", ()), keys.get("out", ()))
    except ValueError as e:
        raise ParseError(str(e), line=lineno) from None
    raise ParseError(f"unknown functor {parts[1]!r}", line=lineno)


def _parse_arrows(kind, body, states, lineno):
    arrows = []
    for tok in body.split():
        m = re.fullmatch(r"([^\s:]+?)->([^\s:]+)(?::(\S+))?", tok)
        if not m:
            raise ParseError(f"malformed arrow {tok!r}", line=lineno)
        label, dst, weight = m.groups()
        if dst not in states:
            raise ParseError(f"unknown state {dst!r}", line=lineno)
        if isinstance(kind, DLTS):
            if weight is None:
                raise ParseError(f"arrow {tok!r} needs a weight", line=lineno)
            try:
                w = parse_rational(weight)
            except ParseError as e:
                raise ParseError(str(e), line=lineno) from None
            arrows.append((label, dst, w))
        else:
            if weight is not None:
                raise ParseError(f"weights are only allowed in DLTS, got {tok!r}", line=lineno)
            arrows.append((label, dst, None))
    return arrows


def _term(kind, arrows, lineno, state):
    if isinstance(kind, PLTS):
        return frozenset((l, d) for l, d, _ in arrows)
    if isinstance(kind, DLTS):
        acc = {}
        for l, d, w in arrows:
            acc[(l, d)] = acc.get((l, d), Fraction(0)) + w
        return FrozenMap(acc)
    if isinstance(kind, DET):
        if len(arrows) != 1:
            raise TermViolation(f"DET needs exactly one arrow, got {len(arrows)}", state)
        l, d, _ = arrows[0]
        return (l, d)
    if is_susp(kind):
        ins, outs = {}, {}
        for l, d, _ in arrows:
            if l in kind.first.keys:
                side = ins
            elif l in kind.second.keys:
                side = outs
            else:
                raise TermViolation(f"unknown label {l}", state)
            if l in side and side[l] != d:
                raise TermViolation(f"label {l} is not deterministic", state)
            side[l] = d
        return (FrozenMap(ins), FrozenMap(outs))
    raise ParseError(f"unsupported kind {kind_str(kind)}", line=lineno)


def parse_chc(text: str) -> Coalgebra:
    lines = [(i + 1, _strip(l)) for i, l in enumerate(text.splitlines())]
    lines = [(n, l) for n, l in lines if l]
    if not lines:
        raise ParseError("empty document", line=1)
    kind = _parse_header(lines[0][1], lines[0][0])
    if len(lines) < 2 or not lines[1][1].startswith("states"):
        raise ParseError("expected 'states ...'", line=lines[1][0] if len(lines) > 1 else None)
    lineno, line = lines[1]
    names = line.split()[1:]
    if len(set(names)) != len(names):
        raise ParseError("duplicate state names", line=lineno)
    states = FinSet(names)
    arrows = {}
    for lineno, line in lines[2:]:
        if ":" not in line:
            raise ParseError("expected '<state>: arrows'", line=lineno)
        head, body = line.split(":", 1)
        head = head.strip()
        if head not in states:
            raise ParseError(f"unknown state {head!r}", line=lineno)
        if head in arrows:
            raise ParseError(f"second line for state {head!r}", line=lineno)
        arrows[head] = (lineno, _parse_arrows(kind, body, states, lineno))
    trans = {}
    for x in states:
        lineno, arr = arrows.get(x, (None, []))
        trans[x] = _term(kind, arr, lineno, x)
    return Coalgebra(kind, states, FrozenMap(trans))


def _kind_header(kind) -> str:
    if isinstance(kind, (PLTS, DLTS, DET)):
        return f"functor {kind.name} labels={','.join(map(str, kind.labels))}"
    if is_susp(kind):
        return (f"functor {kind.name} in={','.join(kind.first.keys)} "
                f"out={','.join(kind.second.keys)}")
    raise ValueError(f"no text format for {kind_str(kind)}")


def _label_order(kind):
    return {l: i for i, l in enumerate(kind.labels)}


def serialize_chc(C: Coalgebra) -> str:
    kind = C.kind
    out = [_kind_header(kind), "states " + " ".join(map(str, C.states))]
    li, si = _label_order(kind), C.states.index
    for x in C.states:
        t = C(x)
        if isinstance(kind, PLTS):
            arrows = [f"{l}->{y}" for l, y in sorted(t, key=lambda p: (li[p[0]], si[p[1]]))]
        elif isinstance(kind, DLTS):
            arrows = [f"{l}->{y}:{w}" for (l, y), w in
                      sorted(t.items(), key=lambda p: (li[p[0][0]], si[p[0][1]]))]
        elif isinstance(kind, DET):
            arrows = [f"{t[0]}->{t[1]}"]
        else:
            arrows = [f"{k}->{t[0][k]}" for k in kind.first.keys if k in t[0]]
            arrows += [f"{k}->{t[1][k]}" for k in kind.second.keys if k in t[1]]
        out.append(f"{x}: " + " ".join(arrows) if arrows else f"{x}:")
    return "\n".join(out) + "\n"


# --------------------------------------------------------------------------
# Aldebaran

_AUT_HEADER = re.compile(r"\s*des\s*\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)\s*")
_AUT_LINE = re.compile(r'\s*\(\s*(\d+)\s*,\s*(?:"((?:[^"\\]|\\.)*)"|([^,]*?))\s*,\s*(\d+)\s*\)\s*')


def parse_aut(text: str, labels=None, with_initial: bool = False):
    """Read an Aldebaran file into a PLTS over states ``s0 .. s<n-1>``.

    Labels may be quoted or bare; a bare label ends at the first comma.  The
    label set is ``labels`` if given, else every label in order of first use.
    A transition count that disagrees with the header only warns.
    """
    lines = text.splitlines()
    idx = 0
    while idx < len(lines) and not lines[idx].strip():
        idx += 1
    if idx == len(lines):
        raise ParseError("missing 'des' header", line=1)
    m = _AUT_HEADER.fullmatch(lines[idx])
    if not m:
        raise ParseError("malformed header, expected 'des (init, ntrans, nstates)'", line=idx + 1)
    init, ntrans, nstates = map(int, m.groups())
    if nstates < 1 or init >= nstates:
        raise ParseError(f"initial state {init} outside {nstates} states", line=idx + 1)
    names = [f"s{i}" for i in range(nstates)]
    succ = [set() for _ in range(nstates)]
    seen_labels = []
    count = 0
    for n, line in enumerate(lines[idx + 1:], start=idx + 2):
        if not line.strip():
            continue
        m = _AUT_LINE.fullmatch(line)
        if not m:
            raise ParseError(f"malformed transition {line.strip()!r}", line=n)
        src, quoted, bare, dst = m.groups()
        label = quoted if quoted is not None else bare.strip()
        src, dst = int(src), int(dst)
        if src >= nstates or dst >= nstates:
            raise ParseError(f"state index out of range in {line.strip()!r}", line=n)
        if label not in seen_labels:
            seen_labels.append(label)
        succ[src].add((label, names[dst]))
        count += 1
    if count != ntrans:
        warnings.warn(f"header announces {ntrans} transitions, found {count}", stacklevel=2)
    if labels is None:
        labels = tuple(seen_labels)
    else:
        labels = tuple(labels)
        stray = [l for l in seen_labels if l not in labels]
        if stray:
            raise ParseError(f"labels {stray} not declared")
    C = Coalgebra(PLTS(labels), FinSet(names),
                  FrozenMap((names[i], frozenset(s)) for i, s in enumerate(succ)))
    return (C, names[init]) if with_initial else C


def serialize_aut(C: Coalgebra, initial=None) -> str:
    """Write a PLTS; states are renumbered in declaration order."""
    if not isinstance(C.kind, PLTS):
        raise ValueError("only PLTS systems have an Aldebaran form")
    num = C.states.index
    li = _label_order(C.kind)
    edges = []
    for x in C.states:
        for l, y in sorted(C(x), key=lambda p: (li[p[0]], num[p[1]])):
            edges.append(f'({num[x]},"{l}",{num[y]})')
    init = 0 if initial is None else num[initial]
    return "\n".join([f"des ({init},{len(edges)},{len(C.states)})"] + edges) + "\n"


# --------------------------------------------------------------------------
# relations

def _rel_lines(r: Rel) -> list:
    return sorted((str(x), str(y)) for x, y in r.pairs)


def write_relation(r: Rel, destination=None) -> str:
    """Tab-separated ``x<TAB>y`` lines, sorted, with a trailing newline.

    ``destination`` may be a path or a writable text file; the text is
    returned either way.
    """
    text = "".join(f"{x}\t{y}\n" for x, y in _rel_lines(r))
    if destination is not None:
        if isinstance(destination, (str, os.PathLike)):
            with open(destination, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        else:
            destination.write(text)
    return text


def parse_relation(text: str, src, dst) -> Rel:
    src = src if isinstance(src, FinSet) else FinSet(src)
    dst = dst if isinstance(dst, FinSet) else FinSet(dst)
    pairs = set()
    for n, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        parts = line.rstrip("\r").split("\t")
        if len(parts) != 2:
            raise ParseError("expected 'x<TAB>y'", line=n)
        x, y = parts
        if x not in src or y not in dst:
            raise ParseError(f"pair ({x}, {y}) outside the carriers", line=n)
        pairs.add((x, y))
    return Rel(src, dst, frozenset(pairs))


# --------------------------------------------------------------------------
# connector s-expressions

_SEXP_TOKEN = re.compile(r"\s*(?:([()])|([^\s()]+))")


def _read_sexp(text: str):
    pos = 0
    stack = [[]]
    starts = []
    while True:
        m = _SEXP_TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ParseError(f"unexpected text {text[pos:pos + 10]!r}", pos=pos)
            break
        tok_start = m.start(1) if m.group(1) else m.start(2)
        pos = m.end()
        if m.group(1) == "(":
            stack.append([])
            starts.append(tok_start)
        elif m.group(1) == ")":
            if len(stack) == 1:
                raise ParseError("unbalanced ')'", pos=tok_start)
            done = stack.pop()
            starts.pop()
            stack[-1].append(done)
        else:
            stack[-1].append(m.group(2))
    if len(stack) != 1:
        raise ParseError("unbalanced '('", pos=starts[-1])
    if len(stack[0]) != 1:
        raise ParseError(f"expected one expression, found {len(stack[0])}")
    return stack[0][0]


def _head(x):
    if not isinstance(x, list) or not x or not isinstance(x[0], str):
        raise ParseError(f"expected a form, got {_show(x)}")
    return x[0], x[1:]


def _show(x) -> str:
    if isinstance(x, list):
        return "(" + " ".join(_show(i) for i in x) + ")"
    return x


def _arity(name, args, n):
    if len(args) != n:
        raise ParseError(f"({name} ...) takes {n} argument(s), got {len(args)}")


def _atoms(x, what):
    if not (isinstance(x, list) and all(isinstance(i, str) for i in x)):
        raise ParseError(f"{what} must be a list of names, got {_show(x)}")
    return x


def _to_rel(x) -> Rel:
    name, args = _head(x)
    if name != "rel":
        raise ParseError(f"expected (rel ...), got {_show(x)}")
    pairs = []
    declared = {}
    items = list(args)
    while items:
        p = items.pop(0)
        if p in (":src", ":dst"):
            if not items:
                raise ParseError(f"{p} needs a list of labels")
            declared[p] = _atoms(items.pop(0), p)
            continue
        if not (isinstance(p, list) and len(p) == 2 and all(isinstance(i, str) for i in p)):
            raise ParseError(f"relation pairs are (a b), got {_show(p)}")
        if tuple(p) not in pairs:
            pairs.append(tuple(p))
    src, dst = [], []
    for a, b in pairs:
        if a not in src:
            src.append(a)
        if b not in dst:
            dst.append(b)
    src, dst = declared.get(":src", src), declared.get(":dst", dst)
    try:
        return rel(src, dst, pairs)
    except (ValueError, RelconnError) as e:
        raise ParseError(f"bad relation {_show(x)}: {e}") from None


_KIND_HEADS = {"plts": PLTS, "dlts": DLTS, "det": DET}


def _to_kind(x):
    name, args = _head(x)
    try:
        if name in _KIND_HEADS:
            return _KIND_HEADS[name](tuple(_atoms(args, name)))
        if name in ("susp", "suspie"):
            _arity(name, args, 2)
            make = SUSP if name == "susp" else SUSPIE
            return make(tuple(_atoms(args[0], "inputs")), tuple(_atoms(args[1], "outputs")))
        if name == "map":
            if not args or args[0] not in PMAP_MODES:
                raise ParseError(f"(map MODE KEYS..) with MODE one of {PMAP_MODES}")
            return PMap(tuple(_atoms(args[1:], "keys")), args[0])
        if name == "pair":
            _arity(name, args, 2)
            return Pair(_to_kind(args[0]), _to_kind(args[1]))
    except ValueError as e:
        raise ParseError(f"bad kind {_show(x)}: {e}") from None
    raise ParseError(f"unknown kind {name!r}")


def _to_lifting(x):
    if isinstance(x, str):
        if x in ("bigbox", "bigdia"):
            return BigBox() if x == "bigbox" else BigDia()
        raise ParseError(f"unknown lifting {x!r}")
    name, args = _head(x)
    if name in ("dia", "box", "down", "up"):
        _arity(name, args, 1)
        return {"dia": Dia, "box": Box, "down": Down, "up": Up}[name](args[0])
    if name == "pge":
        _arity(name, args, 2)
        return PGe(args[0], parse_rational(args[1]))
    if name in ("bigbox", "bigdia"):
        _arity(name, args, 0)
        return BigBox() if name == "bigbox" else BigDia()
    if name == "pos":
        _arity(name, args, 1)
        skel = _to_skeleton(args[0])
        return PosBool(skel, _max_var(skel) + 1)
    raise ParseError(f"unknown lifting {name!r}")


def _to_skeleton(x):
    if isinstance(x, str):
        if x == "top":
            return STop()
        if x == "bot":
            return SBot()
        if re.fullmatch(r"_[0-9]+", x):
            return SVar(int(x[1:]))
        raise ParseError(f"unknown skeleton atom {x!r}")
    name, args = _head(x)
    if name in ("and", "or"):
        return (SAnd if name == "and" else SOr)(tuple(_to_skeleton(a) for a in args))
    if name == "app":
        if not args:
            raise ParseError("(app LIFTING ARGS...) needs a lifting")
        return SApp(_to_lifting(args[0]), tuple(_to_skeleton(a) for a in args[1:]))
    raise ParseError(f"unknown skeleton form {name!r}")


def _to_nat(x):
    name, args = _head(x)
    if name == "relabel-conv":
        _arity(name, args, 1)
        return RelabelConv(_to_rel(args[0]))
    if name == "relabel":
        _arity(name, args, 1)
        return Relabel(_to_rel(args[0]))
    if name in ("incl", "proj1", "proj2"):
        _arity(name, args, 0)
        return {"incl": Incl, "proj1": Proj1, "proj2": Proj2}[name]()
    raise ParseError(f"unknown natural transformation {name!r}")


_NULLARY = {"id": Id, "lf": LF, "lt": LT, "ioco": IOCO}


def _to_connector(x) -> Connector:
    name, args = _head(x)
    if name in _NULLARY:
        _arity(name, args, 0)
        return _NULLARY[name]()
    if name == "kant":
        pairs = []
        for p in args:
            if not (isinstance(p, list) and len(p) == 2):
                raise ParseError(f"kant pairs are (LIFTING LIFTING), got {_show(p)}")
            pairs.append((_to_lifting(p[0]), _to_lifting(p[1])))
        return Kant(LambdaRel(pairs))
    if name == "comp":
        mid = None
        if len(args) == 4 and args[2] == ":mid":
            mid = _to_kind(args[3])
            args = args[:2]
        _arity(name, args, 2)
        return Comp(_to_connector(args[0]), _to_connector(args[1]), mid=mid)
    if name == "conv":
        _arity(name, args, 1)
        return Conv(_to_connector(args[0]))
    if name in ("meet", "prod"):
        _arity(name, args, 2)
        return (Meet if name == "meet" else Prod)(_to_connector(args[0]), _to_connector(args[1]))
    if name in ("kr", "lr"):
        _arity(name, args, 1)
        return (KR if name == "kr" else LR)(_to_rel(args[0]))
    if name == "weak":
        _arity(name, args, 1)
        if not isinstance(args[0], str):
            raise ParseError("(weak LABEL) takes a label")
        return Weak(args[0])
    if name == "pull-left":
        _arity(name, args, 2)
        return PullLeft(_to_connector(args[0]), _to_nat(args[1]))
    if name == "pull-right":
        _arity(name, args, 2)
        return PullRight(_to_nat(args[0]), _to_connector(args[1]))
    raise ParseError(f"unknown connector {name!r}")


def parse_connector(text: str) -> Connector:
    """Parse the connector language.

    ``(kant ((dia a) (pge a 1/2)) ...)``, ``(id)``, ``(comp OUTER INNER)``,
    ``(conv C)``, ``(meet C1 C2)``, ``(prod C1 C2)``, ``(kr (rel (a b) ...))``,
    ``(lr ...)``, ``(lf)``, ``(lt)``, ``(ioco)``, ``(weak tau)``,
    ``(pull-left C NAT)``, ``(pull-right NAT C)`` with ``NAT`` one of
    ``(relabel-conv REL)``, ``(relabel REL)``, ``(incl)``, ``(proj1)``,
    ``(proj2)``.  A composite may fix its middle kind with
    ``(comp OUTER INNER :mid KIND)``, where ``KIND`` is ``(plts a b)``,
    ``(dlts ..)``, ``(det ..)``, ``(susp (IN..) (OUT..))``, ``(suspie ..)``,
    ``(map MODE KEYS..)`` or ``(pair KIND KIND)``.  Liftings are ``(dia a)``,
    ``(box a)``, ``(down o)``, ``(up o)``, ``(pge a 1/2)``, ``bigbox``,
    ``bigdia`` and
    ``(pos SKELETON)`` over ``top``, ``bot``, ``_N``, ``(and ..)``,
    ``(or ..)`` and ``(app LIFTING ARGS..)``.  The carriers of a ``rel``
    are the labels its pairs mention unless given by ``:src (..)`` and
    ``:dst (..)``.  Kinds are checked later, by
    :func:`~relconn.connectors.bind`.
    """
    return _to_connector(_read_sexp(text))


def _lifting_sexp(lam) -> str:
    if isinstance(lam, (Dia, Box, Down, Up)):
        return f"({type(lam).__name__.lower()} {lam.label})"
    if isinstance(lam, PGe):
        return f"(pge {lam.label} {lam.eps})"
    if isinstance(lam, BigBox):
        return "bigbox"
    if isinstance(lam, BigDia):
        return "bigdia"
    if isinstance(lam, PosBool):
        return f"(pos {_skeleton_sexp(lam.skeleton)})"
    raise ValueError(f"{lam} has no surface syntax")


def _skeleton_sexp(s) -> str:
    if isinstance(s, STop):
        return "top"
    if isinstance(s, SBot):
        return "bot"
    if isinstance(s, SVar):
        return f"_{s.index}"
    if isinstance(s, (SAnd, SOr)):
        head = "and" if isinstance(s, SAnd) else "or"
        return "(" + " ".join([head] + [_skeleton_sexp(i) for i in s.items]) + ")"
    if isinstance(s, SApp):
        return "(" + " ".join(["app", _lifting_sexp(s.lifting)]
                              + [_skeleton_sexp(a) for a in s.args]) + ")"
    raise ValueError(f"bad skeleton {s}")


def _rel_sexp(R: Rel) -> str:
    parts = ["rel"] + [f"({a} {b})" for a, b in R]
    # carriers are inferred from the pairs in order of first mention
    src, dst = [], []
    for a, b in R:
        if a not in src:
            src.append(a)
        if b not in dst:
            dst.append(b)
    if tuple(src) != R.src.elements:
        parts.append(":src (" + " ".join(map(str, R.src)) + ")")
    if tuple(dst) != R.dst.elements:
        parts.append(":dst (" + " ".join(map(str, R.dst)) + ")")
    return "(" + " ".join(parts) + ")"


def _kind_sexp(kind) -> str:
    if isinstance(kind, (PLTS, DLTS, DET)):
        return "(" + " ".join([type(kind).__name__.lower()] + list(map(str, kind.labels))) + ")"
    if is_susp(kind):
        return (f"({kind.name.lower()} ({' '.join(kind.first.keys)}) "
                f"({' '.join(kind.second.keys)}))")
    if isinstance(kind, PMap):
        return "(" + " ".join(["map", kind.mode] + list(kind.keys)) + ")"
    if isinstance(kind, Pair):
        return f"(pair {_kind_sexp(kind.first)} {_kind_sexp(kind.second)})"
    raise ValueError(f"no syntax for kind {kind!r}")


def _nat_sexp(n) -> str:
    if isinstance(n, RelabelConv):
        return f"(relabel-conv {_rel_sexp(n.R)})"
    if isinstance(n, Relabel):
        return f"(relabel {_rel_sexp(n.R)})"
    return "(" + {Incl: "incl", Proj1: "proj1", Proj2: "proj2"}[type(n)] + ")"


def serialize_connector(c: Connector) -> str:
    for name, cls in _NULLARY.items():
        if type(c) is cls:
            return f"({name})"
    if isinstance(c, Kant):
        pairs = [f"({_lifting_sexp(l)} {_lifting_sexp(m)})" for l, m in c.lam]
        return "(" + " ".join(["kant"] + pairs) + ")"
    if isinstance(c, Comp):
        out = f"comp {serialize_connector(c.outer)} {serialize_connector(c.inner)}"
        if c.mid is not None:
            out += f" :mid {_kind_sexp(c.mid)}"
        return f"({out})"
    if isinstance(c, Conv):
        return f"(conv {serialize_connector(c.c)})"
    if isinstance(c, (Meet, Prod)):
        head = "meet" if isinstance(c, Meet) else "prod"
        return f"({head} {serialize_connector(c.c1)} {serialize_connector(c.c2)})"
    if isinstance(c, (KR, LR)):
        return f"({type(c).__name__.lower()} {_rel_sexp(c.R)})"
    if isinstance(c, Weak):
        return f"(weak {c.tau})"
    if isinstance(c, PullLeft):
        return f"(pull-left {serialize_connector(c.c)} {_nat_sexp(c.nat)})"
    if isinstance(c, PullRight):
        return f"(pull-right {_nat_sexp(c.nat)} {serialize_connector(c.c)})"
    raise ValueError(f"not a connector: {c!r}")
