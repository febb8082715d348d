"""
cli/commands.py — Comandos del front end por lotes

run(manifest) despacha al comando y devuelve (código, reporte):
0 si todo pasa, 1 si un chequeo falla (el reporte trae el testigo) y 2 si
la entrada es inválida.
"""
import logging
import os
from typing import Callable

from cli.codec import parse_input
from cli.schemas import Manifest, json_schemas
from core.category import validate_category
from core.errors import InputError, NervioError, SegalError
from core.functors import check_functoriality
from effects.monads import monad_law_report
from effects.state import state_factorize
from effects.store_terms import (
    canonical_normal_form, canonical_store_term, denote_store_term, format_store_term, max_variable,
    store_normal_forms,
)
from effects.theta import theta
from freecat.arity import ZigzagVerdict, all_factorizations, arity_factorize, recompose, zigzag_equivalent
from freecat.graph import graph_to_presheaf
from globular.free2 import free2_cells, free2_globset, free2_is_finite
from globular.globset import check_globular
from globular.pasting import pd_compose
from kan.extension import lan_comma_report, left_kan_extension
from kan.weighted import DEFAULT_BOUND, delta0_graph_arities, density_check
from operad.operad import monad_iso_check, validate_operad
from operad.regular import strongly_regular
from simplicial.nerve import nerve, nerve_summary
from simplicial.segal import categorify, segal_check
from simplicial.sset import check_simplicial_set

logger = logging.getLogger("nervio.cli")

DEFAULT_TRUNC = int(os.getenv("NERVIO_DEFAULT_TRUNC", "3"))

COMMANDS: dict = {}


def command(name: str):
    def register(fn: Callable):
        COMMANDS[name] = fn
        return fn
    return register


def _one(m: Manifest, kind, check: bool = True):
    if len(m.inputs) != 1:
        raise InputError(f"{m.command} necesita exactamente un --input ({len(m.inputs)} recibidos)")
    return parse_input(m.inputs[0], kind, check)


def _trunc(m: Manifest) -> int:
    return DEFAULT_TRUNC if m.trunc is None else m.trunc


def _bound(m: Manifest) -> int:
    return DEFAULT_BOUND if m.bound is None else m.bound


# ─── Comandos ────────────────────────────────────────────────────────────

@command("validate")
def cmd_validate(m: Manifest) -> tuple:
    kind, value = _one(m, None, check=False)
    checks = {
        "category": validate_category,
        "simplicial": check_simplicial_set,
        "set-functor": check_functoriality,
        "globular-set": check_globular,
        "operad": validate_operad,
    }
    if kind not in checks:
        raise InputError(f"validate no sabe revisar archivos {kind!r}")
    report = checks[kind](value)
    return report.ok, {"kind": kind, "report": report.to_dict()}


@command("nerve")
def cmd_nerve(m: Manifest) -> tuple:
    _, c = _one(m, "category")
    return True, nerve_summary(c, _trunc(m))


@command("segal")
def cmd_segal(m: Manifest) -> tuple:
    kind, value = _one(m, ("simplicial", "category"))
    x = nerve(value, _trunc(m)) if kind == "category" else value
    result = segal_check(x)
    return result.ok, result.to_dict()


@command("categorify")
def cmd_categorify(m: Manifest) -> tuple:
    _, x = _one(m, "simplicial")
    try:
        c = categorify(x, unverified_ok=m.trunc is not None and m.trunc < 3)
    except SegalError as exc:
        return False, {"error": str(exc), "witness": exc.witness}
    return True, {"category": c.to_dict()}


@command("kan")
def cmd_kan(m: Manifest) -> tuple:
    if len(m.inputs) != 2:
        raise InputError("kan necesita --input <set-functor> --input <functor>")
    _, f = parse_input(m.inputs[0], "set-functor")
    _, i = parse_input(m.inputs[1], "functor")
    if i.source != f.base:
        raise InputError("la base del set-functor no es el dominio del funtor", m.inputs[1])
    lan = left_kan_extension(f, i)
    report = lan_comma_report(f, i)
    return report.ok, {
        "sizes": {str(e): len(lan.carrier[e]) for e in lan.base.objects},
        "functorial": check_functoriality(lan).ok,
        "agrees_with_comma_colimit": report.ok,
        "report": report.to_dict(),
    }


@command("density")
def cmd_density(m: Manifest) -> tuple:
    if not m.inputs:
        raise InputError("density necesita al menos un --input de grafo")
    graphs = {}
    for path in m.inputs:
        _, g = parse_input(path, "graph")
        graphs[os.path.basename(path)] = graph_to_presheaf(g)
    verdicts = density_check(delta0_graph_arities(_trunc(m)), graphs, _bound(m))
    return True, {"verdicts": [v.to_dict() for v in verdicts]}


@command("factorize")
def cmd_factorize(m: Manifest) -> tuple:
    kind, value = _one(m, ("kleisli", "store-function"))
    if kind == "store-function":
        store, f, _ = value
        fact = state_factorize((f,), store)
        return True, {"factorization": fact.to_dict(), "store": store.to_dict()}
    fact = arity_factorize(value)
    exact = recompose(fact) == value
    return exact, {"factorization": fact.to_dict(), "recomposes": exact}


@command("zigzag")
def cmd_zigzag(m: Manifest) -> tuple:
    _, arrow = _one(m, "kleisli")
    canonical = arity_factorize(arrow)
    bound = max(_bound(m), canonical.p)
    results = []
    for other in all_factorizations(arrow, bound):
        verdict = zigzag_equivalent(other, canonical, bound)
        results.append({"p": other.p, **verdict.to_dict()})
    ok = all(r["verdict"] != ZigzagVerdict.NO_WITHIN_BOUND.value for r in results)
    return ok, {"canonical_p": canonical.p, "factorizations": results}


@command("pd-compose")
def cmd_pd_compose(m: Manifest) -> tuple:
    _, (outer, labels) = _one(m, "pasting")
    result = pd_compose(outer, labels)
    return True, {"shape": result.label(), "heights": list(result.heights)}


@command("free2")
def cmd_free2(m: Manifest) -> tuple:
    _, x = _one(m, "globular-set")
    finite = free2_is_finite(x)
    if m.bound is None and not finite:
        raise InputError("T X es infinito: hace falta --bound")
    cells = free2_globset(x).cells2 if m.bound is None else tuple(free2_cells(x, m.bound))
    return True, {
        "finite": finite,
        "cells": sorted(lab.label() for lab in cells),
        "count": len(cells),
    }


@command("store-normalize")
def cmd_store_normalize(m: Manifest) -> tuple:
    _, (store, terms, arity) = _one(m, "store-term")
    if not terms:
        raise InputError("el archivo no trae términos", "terms")
    n = arity if arity is not None else max(max_variable(t) for t in terms) + 1
    forms = [store_normal_forms(t, store, n) for t in terms]
    sound = all(nf.sound for nf in forms)
    return sound, {
        "store": store.to_dict(),
        "results": [nf.to_dict() for nf in forms],
        "all_equivalent": len({nf.canonical for nf in forms}) == 1,
        "rewriting_complete": all(nf.matches_canonical for nf in forms),
    }


@command("store-canonical")
def cmd_store_canonical(m: Manifest) -> tuple:
    _, (store, f, n) = _one(m, "store-function")
    tree = canonical_store_term(f, store, n)
    exact = denote_store_term(tree, store, n) == f
    return exact, {
        "canonical": format_store_term(tree),
        "normal": format_store_term(canonical_normal_form(tree, store, n)),
        "denotation_matches": exact,
    }


@command("theta")
def cmd_theta(m: Manifest) -> tuple:
    _, t = _one(m, "monad")
    bound = _bound(m)
    laws = monad_law_report(t)
    cat = theta(t, bound).category
    report = validate_category(cat)
    homs = {f"{a}->{b}": len(cat.hom(a, b)) for a in cat.objects for b in cat.objects}
    return laws.ok and report.ok, {
        "monad": t.name,
        "bound": bound,
        "homs": homs,
        "monad_laws": laws.to_dict(),
        "category": report.to_dict(),
    }


@command("operad-validate")
def cmd_operad_validate(m: Manifest) -> tuple:
    _, c = _one(m, "operad", check=False)
    report = validate_operad(c)
    return report.ok, report.to_dict()


@command("operad-iso")
def cmd_operad_iso(m: Manifest) -> tuple:
    _, c = _one(m, "operad")
    sizes = tuple(range(_bound(m) + 1)) if m.bound is not None else (0, 1, 2)
    report = monad_iso_check(c, sizes, m.trunc)
    return report.ok, report.to_dict()


@command("strongly-regular")
def cmd_strongly_regular(m: Manifest) -> tuple:
    _, equations = _one(m, "equations")
    rows = [{**eq.to_dict(), "strongly_regular": strongly_regular(eq)} for eq in equations]
    return True, {"equations": rows}


@command("schema")
def cmd_schema(m: Manifest) -> tuple:
    return True, {"schemas": json_schemas()}


# ─── Despacho ────────────────────────────────────────────────────────────

def run(manifest: Manifest) -> tuple:
    """Devuelve (código de salida, reporte)."""
    header = {"command": manifest.command, "bound": manifest.bound, "trunc": manifest.trunc}
    if manifest.command not in COMMANDS:
        return 2, {**header, "ok": False, "error": f"comando desconocido: {manifest.command}"}
    try:
        ok, result = COMMANDS[manifest.command](manifest)
    except InputError as exc:
        logger.error(f"❌ entrada inválida: {exc}")
        return 2, {**header, "ok": False, "error": str(exc), "position": exc.position}
    except NervioError as exc:
        logger.error(f"❌ {type(exc).__name__}: {exc}")
        return 2, {**header, "ok": False, "error": f"{type(exc).__name__}: {exc}"}
    except Exception as exc:
        logger.exception(f"💥 {manifest.command} falló: {exc}")
        return 2, {**header, "ok": False, "error": f"error interno {type(exc).__name__}: {exc}"}
    logger.info(f"{'✅' if ok else '⚠️'} {manifest.command}: ok={ok}")
    return (0 if ok else 1), {**header, "ok": ok, "result": result}

