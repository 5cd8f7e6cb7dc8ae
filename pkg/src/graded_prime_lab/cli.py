"""graded-prime-lab: JSON in, verdict + certificate out.

Exit codes: 0 verdict computed (either way), 2 bad input, 3 cap exceeded,
4 a theorem-backed cross-check failed.
"""
from __future__ import annotations

import logging
import os
import sys

import click

from .errors import CapExceeded, InputError, LabError, TheoremViolation
from .modring import IDEAL_CAP
from .primality import SEARCH_ELEMENT_CAP
from .serialize import dumps, load_path, plain

EXIT_OK, EXIT_INPUT, EXIT_CAP, EXIT_THEOREM = 0, 2, 3, 4


def _text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, dict) and v:
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {dumps(v).strip()}")
        return "\n".join(lines)
    return pad + dumps(obj).strip()


def emit(ctx, report: dict):
    report = plain(report)
    if ctx.obj["format"] == "text":
        click.echo(_text(report))
    else:
        click.echo(dumps(report), nl=False)


def run(ctx, fn):
    try:
        report = fn()
    except TheoremViolation as ex:
        code, kind, err = EXIT_THEOREM, "theorem_violation", ex
    except CapExceeded as ex:
        code, kind, err = EXIT_CAP, "cap_exceeded", ex
    except (LabError, OSError, ValueError, KeyError, TypeError) as ex:
        code, kind, err = EXIT_INPUT, "input_error", ex
    else:
        emit(ctx, report)
        ctx.exit(EXIT_OK)
    click.echo(f"{kind}: {err}", err=True)
    try:
        emit(ctx, {"error": kind, "message": str(err), "witness": getattr(err, "witness", None)})
    except InputError:
        emit(ctx, {"error": kind, "message": str(err), "witness": None})
    ctx.exit(code)


def _graded(path):
    from .serialize import graded_from_json
    return graded_from_json(load_path(path))


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="json", show_default=True)
@click.option("--max-elements", type=int, default=SEARCH_ELEMENT_CAP, show_default=True,
              help="cap on enumerated elements of a submodule")
@click.option("--max-ideals", type=int, default=IDEAL_CAP, show_default=True,
              help="cap on nodes of an enumerated ideal lattice")
@click.option("-v", "--verbose", is_flag=True)
@click.pass_context
def main(ctx, fmt, max_elements, max_ideals, verbose):
    """Primeness of group-graded finite rings."""
    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    ctx.obj = {"format": fmt, "max_elements": max_elements, "max_ideals": max_ideals}


@main.command()
@click.option("--in", "path", required=True, type=click.Path(dir_okay=False))
@click.pass_context
def classify(ctx, path):
    """Grading flags with both nearly-epsilon-strong routes."""
    from .graded import classify_grading

    def go():
        S = _graded(path)
        f = classify_grading(S)
        out = f.as_dict()
        return {"flags": out, "epsilon": {S.group.label(k): v for k, v in f.epsilon.items()},
                "failures": {k: v for k, v in f.failures.items()}, "routes": f.routes,
                "theorem": "strong => epsilon-strong => nearly epsilon-strong => non-degenerate"}
    run(ctx, go)


@main.command()
@click.option("--in", "path", required=True, type=click.Path(dir_okay=False))
@click.option("--strategy", type=click.Choice(["auto", "ordered", "np_search", "brute"]), default="auto",
              show_default=True)
@click.option("--no-cross-check", is_flag=True, help="skip the brute-force comparison")
@click.pass_context
def prime(ctx, path, strategy, no_cross_check):
    """Decide primeness, with a certificate."""
    from .primality import decide_prime

    def go():
        S = _graded(path)
        rep = decide_prime(S, strategy, cross_check=not no_cross_check,
                           cap=ctx.obj["max_ideals"], element_cap=ctx.obj["max_elements"])
        return rep.to_json()
    run(ctx, go)


@main.command("np-search")
@click.option("--in", "path", required=True, type=click.Path(dir_okay=False))
@click.option("--flavor", type=click.Choice(["b", "c", "d", "e"]), default="b", show_default=True)
@click.pass_context
def np_search(ctx, path, flavor):
    """First NP-datum of the given flavor, or null."""
    from .primality import search_np_datum, verify_np_datum

    def go():
        S = _graded(path)
        d = search_np_datum(S, flavor, ctx.obj["max_ideals"], ctx.obj["max_elements"])
        out = {"flavor": flavor, "np_datum": d.to_json() if d else None, "found": d is not None,
               "theorem": "an NP-datum forces non-primeness on non-degenerate gradings"}
        if d is not None:
            out["verified"] = verify_np_datum(S, d, flavor)[0]
        return out
    run(ctx, go)


@main.command()
@click.option("--in", "path", required=True, type=click.Path(dir_okay=False))
@click.pass_context
def harness(ctx, path):
    """Evaluate (a) not prime and datum existence for (b)-(e)."""
    from .primality import main_theorem_harness

    def go():
        S = _graded(path)
        h = main_theorem_harness(S, cap=ctx.obj["max_ideals"], element_cap=ctx.obj["max_elements"])
        h["theorem"] = "(e)=>(d)=>(c)=>(b)=>(a) if non-degenerate; all equivalent if nearly epsilon-strong"
        return h
    run(ctx, go)


@main.command("lpa-mt3")
@click.option("--in", "path", required=True, type=click.Path(dir_okay=False))
@click.pass_context
def lpa_mt3(ctx, path):
    """Condition (MT-3): every two vertices have a common descendant."""
    from .lpa import DirectedGraph, satisfies_mt3

    def go():
        ok, pair = satisfies_mt3(DirectedGraph.from_json(load_path(path)))
        return {"mt3": ok, "witness": list(pair) if pair else None}
    run(ctx, go)


@main.command("lpa-prime")
@click.option("--in", "path", required=True, type=click.Path(dir_okay=False))
@click.option("--ring", "ring_path", type=click.Path(dir_okay=False), help="coefficient ring JSON")
@click.option("--ring-prime/--ring-not-prime", default=None, help="give the ring's primeness directly")
@click.pass_context
def lpa_prime(ctx, path, ring_path, ring_prime):
    """L_R(E) prime iff R prime and E satisfies (MT-3)."""
    from .lpa import DirectedGraph, lpa_prime_decision
    from .serialize import ring_from_json

    def go():
        E = DirectedGraph.from_json(load_path(path))
        if ring_path is not None:
            R = ring_from_json(load_path(ring_path))
        elif ring_prime is not None:
            R = ring_prime
        else:
            raise InputError("give --ring or --ring-prime/--ring-not-prime")
        out = lpa_prime_decision(E, R)
        out["theorem"] = "L_R(E) is prime iff R is prime and E satisfies (MT-3)"
        return out
    run(ctx, go)


@main.command("groupring-prime")
@click.option("--ring", "ring_path", type=click.Path(dir_okay=False), help="coefficient ring JSON")
@click.option("--ring-prime/--ring-not-prime", default=None)
@click.option("--group", "group", required=True, help='symbolic expression like "C2 x Z" or a group JSON file')
@click.pass_context
def groupring_prime(ctx, ring_path, ring_prime, group):
    """R[G] prime iff R prime and G has no nontrivial finite normal subgroup."""
    from .constructions import connell_decision
    from .serialize import group_from_json, ring_from_json

    def go():
        if ring_path is not None:
            R = ring_from_json(load_path(ring_path))
        elif ring_prime is not None:
            R = ring_prime
        else:
            raise InputError("give --ring or --ring-prime/--ring-not-prime")
        G = group_from_json(load_path(group), symbolic=True) if os.path.isfile(group) else group
        out = connell_decision(R, G)
        out["theorem"] = "R[G] is prime iff R is prime and G has no nontrivial finite normal subgroup"
        return out
    run(ctx, go)


@main.command()
@click.option("--seed", type=int, default=None, help="64-bit seed (default: the fixed repository seed)")
@click.option("--count", type=click.IntRange(min=0), default=None)
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
@click.pass_context
def corpus(ctx, seed, count, out_dir):
    """Write a deterministic corpus and its harness summary."""
    from .corpus import CORPUS_COUNT, CORPUS_SEED, run_corpus

    def go():
        s = CORPUS_SEED if seed is None else seed
        if not 0 <= s < 2 ** 64:
            raise InputError("seed must be a 64-bit unsigned integer")
        summary = run_corpus(s, CORPUS_COUNT if count is None else count, out_dir)
        if summary["status"].get("theorem_violation"):
            raise TheoremViolation("harness violation in the corpus", witness=summary["status"])
        return {k: summary[k] for k in ("seed", "count", "status", "harness_cases", "all_equivalent",
                                        "shortcut_agree")} | {"skipped": len(summary["skipped"]), "out": out_dir}
    run(ctx, go)


if __name__ == "__main__":
    main()
