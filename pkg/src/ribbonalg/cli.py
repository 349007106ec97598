"""Command-line entry point: ``ribbonalg <command> SPEC [flags]``.

Every command prints a human summary followed by structured blocks
(``[NAME]`` ... ``[/NAME]`` with one ``key = json`` line per field), or a
single JSON document with ``--format json``. Exit status is 0 iff every
certified check passed, 1 on a mathematical failure and 2 on bad input.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from pathlib import Path

from .autrev import (
    aut_group,
    exact_sequence_check,
    find_reversions,
    inn_group,
    is_jandl,
    jandl_equivalent,
    morita_equivalent,
)
from .category import CategorySpec, fixture_path, is_modular, load_category_file, validate_category
from .diagram import hom_dim, obj_str, run_diagram
from .errors import DiagramSyntaxError, MalformedSpec, RibbonAlgError, TypeMismatch, UnboundName
from .frobenius import (
    FrobAlgebra,
    _mor_json,
    algebra_from_json,
    algebra_to_json,
    check_frobenius,
    end_algebra,
    enumerate_frobenius,
    normalize,
    product,
    trivial_algebra,
)
from .modules import alpha_picard_maps, is_azumaya, picard_bimodules, z_matrix
from .scalar import CycNum

COMMANDS = (
    "validate",
    "homdim",
    "eval",
    "find-frobenius",
    "aut",
    "reversions",
    "jandl-classify",
    "zmatrix",
    "azumaya",
    "picard",
    "brauer-scan",
)


class InputError(Exception):
    pass


# -- inputs ------------------------------------------------------------------------

def load_spec(path: str) -> CategorySpec:
    p = Path(path)
    if p.is_file():
        return load_category_file(p)
    try:
        return load_category_file(fixture_path(path))
    except MalformedSpec as exc:
        raise InputError(f"no category file or shipped fixture named {path!r}") from exc


def parse_obj(C: CategorySpec, text: str):
    """'s s + 1' -> object; summands separated by '+', letters by spaces."""
    out = []
    for part in text.split("+"):
        names = part.split()
        if not names:
            raise InputError(f"empty summand in {text!r}")
        out.append(tuple(C.index(n) for n in names if C.index(n)))
    return tuple(out)


def resolve_algebra(C: CategorySpec, text: str | None, budget: int | None) -> FrobAlgebra:
    """one | end:WORD | path.json | CARRIER[#k] (k-th enumerated structure on the carrier)."""
    if text is None or text in ("one", "1", C.names[0]):
        return trivial_algebra(C)
    if text.startswith("end:"):
        return normalize(C, end_algebra(C, parse_obj(C, text[4:])))
    p = Path(text)
    if p.suffix == ".json" and p.is_file():
        return algebra_from_json(C, json.loads(p.read_text()))
    carrier, _, idx = text.partition("#")
    found = enumerate_frobenius(C, carrier, budget)
    k = int(idx) if idx else 0
    if k >= len(found):
        raise InputError(f"no symmetric special Frobenius structure #{k} on {carrier!r} ({len(found)} found)")
    return found[k]


def _carriers(C: CategorySpec) -> list[list[str]]:
    rest = list(C.names[1:])
    out = []
    for r in range(len(rest) + 1):
        for sub in itertools.combinations(rest, r):
            out.append([C.names[0], *sub])
    return out


# -- scans ------------------------------------------------------------------------

def brauer_scan(C: CategorySpec, budget: int | None = None) -> dict:
    """Algebras with Hom(1, A) one-dimensional, their Morita classes and Azumaya flags."""
    algs: list[FrobAlgebra] = []
    complete = True
    notes = []
    for car in _carriers(C):
        try:
            found = enumerate_frobenius(C, car, budget)
        except RibbonAlgError as exc:
            complete = False
            notes.append(f"{'+'.join(car)}: {exc}")
            continue
        complete = complete and found.complete
        for A in found:
            if not check_frobenius(C, A).passed:
                raise RibbonAlgError(f"enumerated structure on {A.describe()} failed the axioms")
        algs.extend(found)
    modular = is_modular(C)
    classes: list[list[int]] = []
    rep_of: dict[int, int] = {}
    for i, A in enumerate(algs):
        for c, members in enumerate(classes):
            M, ok = morita_equivalent(C, algs[members[0]], A, budget)
            complete = complete and ok
            if M is not None:
                members.append(i)
                rep_of[i] = c
                break
        else:
            rep_of[i] = len(classes)
            classes.append([i])
    azu = [is_azumaya(C, A) if modular else None for A in algs]
    zs = [z_matrix(C, A) for A in algs]
    az_classes = [c for c, members in enumerate(classes) if azu[members[0]]]
    table: list[list[int | None]] = []
    partial_table = False
    for a in az_classes:
        row = []
        for b in az_classes:
            P = normalize(C, product(C, algs[classes[a][0]], algs[classes[b][0]]))
            hit = None
            for c in az_classes:
                M, ok = morita_equivalent(C, P, algs[classes[c][0]], budget)
                if M is not None:
                    hit = c
                    break
                partial_table = partial_table or not ok
            if hit is None:
                partial_table = True
            row.append(hit)
        table.append(row)
    return {
        "category": C.name,
        "modular": modular,
        "algebras": [
            {"name": A.describe(), "class": rep_of[i], "azumaya": azu[i], "z": zs[i]} for i, A in enumerate(algs)
        ],
        "classes": [[algs[i].describe() for i in members] for members in classes],
        "azumaya_classes": az_classes,
        "product_table": table,
        "product_table_partial": partial_table,
        "exhaustive": complete,
        "notes": notes,
    }


def jandl_classify(C: CategorySpec, budget: int | None = None) -> dict:
    """Jandl algebras on enumerated carriers grouped by the equivalence generated by interpolating modules."""
    algs: list[FrobAlgebra] = []
    complete = True
    for car in _carriers(C):
        try:
            found = enumerate_frobenius(C, car, budget)
        except RibbonAlgError:
            complete = False
            continue
        complete = complete and found.complete
        algs.extend(normalize(C, A) if not A.normalized else A for A in found)
    nodes = []
    for A in algs:
        revs, ok = find_reversions(C, A, budget)
        complete = complete and ok
        for r in revs:
            if not is_jandl(C, A, r.sigma).passed:
                raise RibbonAlgError("reversion failed the Jandl axioms")
            nodes.append((A, r.sigma))
    n = len(nodes)
    edge = [[False] * n for _ in range(n)]
    nus = {}
    for i, j in itertools.product(range(n), repeat=2):
        (A, s), (B, t) = nodes[i], nodes[j]
        w, ok = jandl_equivalent(C, A, s, B, t, budget)
        complete = complete and ok
        if w is not None:
            edge[i][j] = True
            nus[i, j] = w.nu
    reflexive = all(edge[i][i] for i in range(n))
    symmetric = all(edge[j][i] for i in range(n) for j in range(n) if edge[i][j])
    transitive = all(
        edge[i][k] for i in range(n) for j in range(n) for k in range(n) if edge[i][j] and edge[j][k]
    )
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(n):
        for j in range(n):
            if edge[i][j]:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    classes = [sorted(g) for g in groups.values()]
    classes.sort()

    def label(i):
        A, s = nodes[i]
        return {"algebra": A.describe(), "sigma": _mor_json(C, s)}

    return {
        "category": C.name,
        "jandl_algebras": [label(i) for i in range(n)],
        "classes": classes,
        "class_count": len(classes),
        "nu": {f"{i}->{j}": v for (i, j), v in sorted(nus.items())},
        "reflexive": reflexive,
        "symmetric": symmetric,
        "transitive": transitive,
        "exhaustive": complete,
    }


# -- commands ---------------------------------------------------------------------

def cmd_validate(C, args) -> tuple[list[str], dict, bool]:
    rep = validate_category(C)
    lines = [c.line() for c in rep.checks]
    return lines, {"VALIDATE": rep.to_json()}, rep.passed


def cmd_homdim(C, args):
    if len(args.objects) != 2:
        raise InputError("homdim needs two objects: DOM COD")
    X, Y = (parse_obj(C, t) for t in args.objects)
    n = hom_dim(C, X, Y)
    return [f"dim Hom({obj_str(C, X)}, {obj_str(C, Y)}) = {n}"], {"HOMDIM": {"dim": n}}, True


def cmd_eval(C, args):
    if not args.expr:
        raise InputError("eval needs -e DIAGRAM")
    f = run_diagram(C, args.expr)
    if f.dom == ((),) and f.cod == ((),):
        v = f.block(0)[0][0]
        return [f"value = {v}"], {"EVAL": {"scalar": str(v), "json": v.to_json()}}, True
    return (
        [f"{obj_str(C, f.dom)} -> {obj_str(C, f.cod)}"],
        {"EVAL": {"dom": obj_str(C, f.dom), "cod": obj_str(C, f.cod), "blocks": _mor_json(C, f)}},
        True,
    )


def cmd_find_frobenius(C, args):
    cars = [args.algebra] if args.algebra else ["+".join(c) for c in _carriers(C)]
    out, ok, complete, lines = [], True, True, []
    for car in cars:
        found = enumerate_frobenius(C, car, args.budget)
        complete = complete and found.complete
        for A in found:
            rep = check_frobenius(C, A)
            ok = ok and rep.passed
            out.append({"carrier": car, "axioms": rep.passed, "symmetric": rep.symmetric, "algebra": algebra_to_json(C, A)})
        lines.append(f"{car}: {len(found)} structure(s){'' if found.complete else ' (search incomplete)'}")
    return lines, {"FROBENIUS": {"algebras": out, "complete": complete}}, ok


def cmd_aut(C, args):
    A = resolve_algebra(C, args.algebra, args.budget)
    G = aut_group(C, A, args.budget)
    inner, reps = inn_group(C, A, G)
    kernel, inner2 = exact_sequence_check(C, A, G)
    aut = {
        "algebra": A.describe(),
        "order": G.order(),
        "elements": [_mor_json(C, a.phi) for a in G.elements],
        "table": G.table,
        "inner": inner,
        "outer_representatives": reps,
        "complete": G.complete,
    }
    seq = {"kernel": kernel, "inner": inner2, "equal": kernel == inner2}
    lines = [
        f"Aut({A.describe()}): order {G.order()}, inner {len(inner)}, outer classes {len(reps)}",
        f"kernel of psi -> [A_psi] {'equals' if seq['equal'] else 'DIFFERS FROM'} Inn(A)",
    ]
    return lines, {"AUT": aut, "EXACT-SEQ": seq}, seq["equal"] and G.complete


def cmd_reversions(C, args):
    A = resolve_algebra(C, args.algebra, args.budget)
    revs, complete = find_reversions(C, A, args.budget)
    items = []
    ok = complete
    for r in revs:
        rep = is_jandl(C, A, r.sigma)
        ok = ok and rep.passed
        items.append({"sigma": _mor_json(C, r.sigma), "axioms": rep.to_json()})
    lines = [f"{A.describe()}: {len(revs)} reversion(s){'' if complete else ' (search incomplete)'}"]
    return lines, {"REV": {"algebra": A.describe(), "reversions": items, "complete": complete}}, ok


def cmd_jandl_classify(C, args):
    rep = jandl_classify(C, args.budget)
    ok = rep["exhaustive"] and rep["reflexive"] and rep["symmetric"] and rep["transitive"]
    lines = [f"{len(rep['jandl_algebras'])} Jandl algebra(s) in {rep['class_count']} class(es)"]
    return lines, {"JANDL-CLASS": rep}, ok


def cmd_zmatrix(C, args):
    A = resolve_algebra(C, args.algebra, args.budget)
    Z = z_matrix(C, A)
    lines = [f"Z({A.describe()}) ="] + ["  " + " ".join(str(x) for x in row) for row in Z]
    return lines, {"ZMATRIX": {"algebra": A.describe(), "labels": list(C.names), "z": Z}}, True


def cmd_azumaya(C, args):
    A = resolve_algebra(C, args.algebra, args.budget)
    flag = is_azumaya(C, A)
    return [f"{A.describe()} is {'' if flag else 'not '}Azumaya"], {"AZUMAYA": {"algebra": A.describe(), "azumaya": flag}}, True


def cmd_picard(C, args):
    A = resolve_algebra(C, args.algebra, args.budget)
    P = picard_bimodules(C, A, args.budget)
    rep = {
        "algebra": A.describe(),
        "order": P.order(),
        "carriers": [obj_str(C, Y.obj) for Y in P.elements],
        "table": P.table,
        "complete": P.complete,
        "simple_bimodules": P.simple_count,
        "expected_simple_bimodules": P.expected_simple_count,
        "note": P.note,
    }
    maps = alpha_picard_maps(C, A, P)
    rep["invertible_labels"] = [C.names[i] for i in range(C.rank) if C.is_invertible(i)]
    rep["alpha_plus"], rep["alpha_minus"] = maps[1], maps[-1]
    lines = [f"Pic of {A.describe()}-bimodules: order {P.order()}{'' if P.complete else ' (partial)'}"]
    return lines, {"PICARD": rep}, P.complete


def cmd_brauer_scan(C, args):
    rep = brauer_scan(C, args.budget)
    lines = [
        f"{len(rep['algebras'])} algebra(s) in {len(rep['classes'])} Morita class(es)"
        f"{'' if rep['exhaustive'] else ' (partial)'}"
    ]
    return lines, {"BRAUER": rep}, rep["exhaustive"]


HANDLERS = {
    "validate": cmd_validate,
    "homdim": cmd_homdim,
    "eval": cmd_eval,
    "find-frobenius": cmd_find_frobenius,
    "aut": cmd_aut,
    "reversions": cmd_reversions,
    "jandl-classify": cmd_jandl_classify,
    "zmatrix": cmd_zmatrix,
    "azumaya": cmd_azumaya,
    "picard": cmd_picard,
    "brauer-scan": cmd_brauer_scan,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ribbonalg", description="Exact algebra computations in skeletal ribbon categories.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("spec", help="category JSON file or shipped fixture name")
    p.add_argument("objects", nargs="*", help="objects for homdim, e.g. 's s' '1 + psi'")
    p.add_argument("--algebra", help="one | end:WORD | file.json | CARRIER[#k]")
    p.add_argument("--budget", type=int, default=None, help="solver/search budget")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-e", dest="expr", help="diagram text for eval")
    p.add_argument("--format", choices=("text", "json"), default="text")
    return p


def _jsonable(x):
    if isinstance(x, CycNum):
        return str(x)
    raise TypeError(type(x).__name__)


def render(command: str, lines: list[str], blocks: dict, ok: bool, fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"command": command, "certified": ok, **blocks}, default=_jsonable, sort_keys=True)
    out = list(lines)
    for name, body in blocks.items():
        out.append(f"[{name}]")
        for k, v in body.items():
            out.append(f"{k} = {json.dumps(v, default=_jsonable, sort_keys=True)}")
        out.append(f"[/{name}]")
    out.append(f"certified = {'true' if ok else 'false'}")
    return "\n".join(out)


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        C = load_spec(args.spec)
        lines, blocks, ok = HANDLERS[args.command](C, args)
    except (InputError, MalformedSpec, DiagramSyntaxError, UnboundName, TypeMismatch) as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RibbonAlgError as exc:
        print(f"failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    print(render(args.command, lines, blocks, ok, args.format))
    return 0 if ok else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
