"""Textual .acx serialization of algebraic complexes.

Layout (sections in fixed order, deterministic output)::

    # d2kit algebraic complex v1
    [group]
    mode: finite            | mode: symbolic
    order: 5                (finite)
    multtable:              (finite; `order` rows of `order` indices)
    0 1 2 3 4
    ...
    generators: 1           (finite; generator image indices, may be empty)
    [presentation]          (optional; required in symbolic mode)
    gens: x
    rels: x^5
    [ranks]
    1 1 1
    [d1]
    0 0 0:-1 1:1            (finite: `i j` then sparse index:coeff pairs)
    [d2]
    0 0 2                   (symbolic: `i j coeff`, zeros omitted)

Group-ring entries serialize as sorted (element index, coefficient) pairs
with zeros omitted; a zero entry is simply absent.
"""

from __future__ import annotations

from .chains import AlgebraicComplex
from .coset import FiniteGroupModel
from .groupring import GroupRingElement, GroupRingMatrix
from .intlinalg import IntMatrix
from .presentations import parse_presentation, serialize_presentation


class AcxError(ValueError):
    pass


def dumps(F):
    lines = ["# d2kit algebraic complex v1", "[group]"]
    if F.finite_mode:
        m = F.model
        lines.append("mode: finite")
        lines.append(f"order: {m.order}")
        lines.append("multtable:")
        for row in m.mult:
            lines.append(" ".join(str(x) for x in row))
        lines.append("generators: " + " ".join(str(x) for x in m.generator_images))
    else:
        lines.append("mode: symbolic")
    if F.presentation is not None:
        lines.append("[presentation]")
        lines.extend(serialize_presentation(F.presentation).rstrip("\n").splitlines())
    lines.append("[ranks]")
    lines.append(" ".join(str(r) for r in F.ranks))
    for i in range(1, F.top_degree + 1):
        lines.append(f"[d{i}]")
        d = F.boundary(i)
        for r in range(d.rows):
            for c in range(d.cols):
                if F.finite_mode:
                    pairs = d.entry(r, c).to_pairs()
                    if pairs:
                        body = " ".join(f"{idx}:{coeff}" for idx, coeff in pairs)
                        lines.append(f"{r} {c} {body}")
                else:
                    v = d.entry(r, c)
                    if v:
                        lines.append(f"{r} {c} {v}")
    return "\n".join(lines) + "\n"


def write_acx(F, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(F))


def _sections(text):
    out = {}
    current = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if line.startswith("["):
            current = line.strip()
            if current in out:
                raise AcxError(f"duplicate section {current}")
            out[current] = []
        else:
            if current is None:
                raise AcxError("content before first section")
            out[current].append(line)
    return out


def loads(text):
    sec = _sections(text)
    if "[group]" not in sec or "[ranks]" not in sec:
        raise AcxError("missing [group] or [ranks] section")
    glines = sec["[group]"]
    fields = {}
    mult_rows = []
    in_table = False
    for line in glines:
        if in_table and ":" not in line:
            mult_rows.append([int(x) for x in line.split()])
            continue
        in_table = False
        key, _, value = line.partition(":")
        key = key.strip()
        fields[key] = value.strip()
        if key == "multtable":
            in_table = True
    mode = fields.get("mode")
    if mode not in ("finite", "symbolic"):
        raise AcxError(f"bad mode {mode!r}")
    presentation = None
    if "[presentation]" in sec:
        presentation = parse_presentation("\n".join(sec["[presentation]"]) + "\n")
    ranks = tuple(int(x) for x in sec["[ranks]"][0].split())
    model = None
    if mode == "finite":
        order = int(fields["order"])
        if len(mult_rows) != order or any(len(r) != order for r in mult_rows):
            raise AcxError("multiplication table has the wrong shape")
        mult = tuple(tuple(x) for x in mult_rows)
        inverse = tuple(row.index(0) for row in mult)
        gens = tuple(int(x) for x in fields.get("generators", "").split())
        model = FiniteGroupModel(order, mult, inverse, gens)
    elif presentation is None:
        raise AcxError("symbolic mode requires a [presentation] section")
    boundaries = []
    for i in range(1, len(ranks)):
        key = f"[d{i}]"
        rows, cols = ranks[i - 1], ranks[i]
        body = sec.get(key, [])
        if mode == "finite":
            entries = [[GroupRingElement.zero(model) for _ in range(cols)]
                       for _ in range(rows)]
            for line in body:
                parts = line.split()
                r, c = int(parts[0]), int(parts[1])
                pairs = []
                for p in parts[2:]:
                    idx, _, coeff = p.partition(":")
                    pairs.append((int(idx), int(coeff)))
                entries[r][c] = GroupRingElement.from_pairs(model, pairs)
            boundaries.append(GroupRingMatrix.from_rows(model, entries)
                              if rows else GroupRingMatrix(model, 0, cols, []))
        else:
            entries = [[0] * cols for _ in range(rows)]
            for line in body:
                r, c, v = line.split()
                entries[int(r)][int(c)] = int(v)
            boundaries.append(IntMatrix(rows, cols,
                                        [x for row in entries for x in row]))
    return AlgebraicComplex(ranks, model, tuple(boundaries), presentation)


def read_acx(path):
    with open(path, "r", encoding="utf-8") as fh:
        return loads(fh.read())
