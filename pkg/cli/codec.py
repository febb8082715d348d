"""
cli/codec.py — Lectura de archivos de entrada y conversión a valores del dominio

parse_input valida en tres pasos: JSON, modelo pydantic y los invariantes
del dominio. Cualquier falla sale como InputError con la posición.
"""
import json
import logging
from pathlib import Path

from pydantic import ValidationError

from cli.schemas import (
    INPUT_ADAPTER, CategoryFile, EquationFile, FunctorFile, GlobularFile, GraphFile, KleisliFile,
    MonadFile, OperadFile, PastingFile, SetFunctorFile, SimplicialFile, StoreFunctionFile,
    StoreTermFile,
)
from core.builders import make_category
from core.category import FinCategory, validate_category
from core.errors import InputError, InvalidStructureError, NervioError
from core.functors import FinFunctor, SetFunctor, check_functor, check_functoriality
from effects.monads import classic_monads
from effects.state import Store
from effects.store_terms import parse_store_term
from freecat.arity import KleisliArrow
from freecat.graph import Graph
from globular.globset import GlobularSet2
from globular.pasting import parse_shape
from operad.operad import Operad
from operad.regular import parse_equation
from simplicial.sset import TruncSimplicialSet, check_simplicial_set
from simplicial.sset import from_dict as simplicial_from_dict, to_dict as simplicial_to_dict

logger = logging.getLogger("nervio.cli")


def load_json(path) -> dict:
    path = Path(path)
    if not path.exists():
        raise InputError("el archivo no existe", str(path))
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InputError(f"JSON mal formado: {exc.msg}", f"{path}:{exc.lineno}:{exc.colno}") from None


def _require(report, what: str):
    if not report.ok:
        raise InvalidStructureError(f"{what}: {report.violations[0]}", report)


# ─── Modelo -> dominio ───────────────────────────────────────────────────

def _category(m: CategoryFile, check: bool) -> FinCategory:
    if m.identities is None:
        c = make_category(
            m.objects,
            {a.id: (a.src, a.tgt) for a in m.arrows},
            {(f, g): h for f, row in m.comp.items() for g, h in row.items()},
        )
    else:
        c = FinCategory.from_dict(m.model_dump())
    if check:
        _require(validate_category(c), "categoría inválida")
    return c


def _set_functor(m: SetFunctorFile, check: bool) -> SetFunctor:
    base = _category(m.base, True)
    carrier = {o: tuple(m.carrier.get(o, ())) for o in base.objects}
    action = {f: dict(table) for f, table in m.action.items()}
    for o in base.objects:
        action.setdefault(base.identity(o), {x: x for x in carrier[o]})
    F = SetFunctor(base, carrier, action)
    if check:
        _require(check_functoriality(F), "funtor inválido")
    return F


def _functor(m: FunctorFile, check: bool) -> FinFunctor:
    source, target = _category(m.source, True), _category(m.target, True)
    arrows = dict(m.arrows)
    for o in source.objects:
        if o in m.objects:
            arrows.setdefault(source.identity(o), target.identity(m.objects[o]))
    F = FinFunctor(source, target, dict(m.objects), arrows)
    if check:
        _require(check_functor(F), "funtor inválido")
    return F


def _kleisli(m: KleisliFile) -> KleisliArrow:
    g = Graph.from_dict(m.graph.model_dump())
    for k, edges in enumerate(m.paths):
        for e in edges:
            if e not in g.src:
                raise InputError(f"arista desconocida {e!r}", f"paths[{k}]")
    if m.start not in g.vertices:
        raise InputError(f"vértice desconocido {m.start!r}", "start")
    return KleisliArrow.from_paths(g, m.start, [tuple(p) for p in m.paths])


def _pasting(m: PastingFile) -> tuple:
    labels = [label if isinstance(label, int) else [parse_shape(s) for s in label] for label in m.labels]
    return parse_shape(m.outer), labels


def _store_function(m: StoreFunctionFile) -> tuple:
    store = Store(tuple(m.locations), tuple(m.values))
    rows = {}
    for k, row in enumerate(m.rows):
        state, following = tuple(row.state), tuple(row.next)
        for name, value in (("state", state), ("next", following)):
            if len(value) != len(store.locations) or any(v not in store.values for v in value):
                raise InputError(f"{name} {list(value)} no es un estado del store", f"rows[{k}]")
        if row.result >= m.arity:
            raise InputError(f"resultado {row.result} fuera de [{m.arity}]", f"rows[{k}]")
        if state in rows:
            raise InputError(f"estado {list(state)} repetido", f"rows[{k}]")
        rows[state] = (following, row.result)
    missing = [list(s) for s in store.states() if s not in rows]
    if missing:
        raise InputError(f"faltan filas para {missing}", "rows")
    return store, tuple(rows[s] for s in store.states()), m.arity


def _operad(m: OperadFile) -> Operad:
    names = {name for ops in m.ops.values() for name in ops}
    for k, entry in enumerate(m.gamma):
        for name in [entry.op, entry.result, *entry.args]:
            if name not in names:
                raise InputError(f"composición colgante: {name!r} no es una operación", f"gamma[{k}]")
    try:
        arities = {int(n) for n in m.ops}
    except ValueError:
        raise InputError("las aridades deben ser enteros", "ops") from None
    logger.debug(f"operad con aridades {sorted(arities)}")
    return Operad.from_dict(m.model_dump())


def to_domain(model, check: bool = True):
    if isinstance(model, CategoryFile):
        return _category(model, check)
    if isinstance(model, GraphFile):
        return Graph.from_dict(model.model_dump())
    if isinstance(model, SimplicialFile):
        x = simplicial_from_dict(model.model_dump())
        if check:
            _require(check_simplicial_set(x), "conjunto simplicial inválido")
        return x
    if isinstance(model, GlobularFile):
        return GlobularSet2.from_dict(model.model_dump())
    if isinstance(model, SetFunctorFile):
        return _set_functor(model, check)
    if isinstance(model, FunctorFile):
        return _functor(model, check)
    if isinstance(model, KleisliFile):
        return _kleisli(model)
    if isinstance(model, PastingFile):
        return _pasting(model)
    if isinstance(model, StoreTermFile):
        store = Store(tuple(model.locations), tuple(model.values))
        return store, [parse_store_term(t) for t in model.terms], model.arity
    if isinstance(model, StoreFunctionFile):
        return _store_function(model)
    if isinstance(model, MonadFile):
        params = {k: tuple(v) if isinstance(v, list) else v for k, v in model.params.items()}
        return classic_monads(model.name, **params)
    if isinstance(model, OperadFile):
        return _operad(model)
    if isinstance(model, EquationFile):
        return [parse_equation(text) for text in model.equations]
    raise InputError(f"tipo de archivo sin conversión: {type(model).__name__}")


def parse_model(data: dict, position: str = ""):
    try:
        return INPUT_ADAPTER.validate_python(data)
    except ValidationError as exc:
        first = exc.errors()[0]
        where = ".".join(str(part) for part in first["loc"])
        raise InputError(first["msg"], f"{position}:{where}" if position else where) from None


def parse_input(path, kind=None, check: bool = True):
    """Devuelve (kind, valor) o lanza InputError con la posición del problema."""
    data = load_json(path)
    if not isinstance(data, dict):
        raise InputError("se esperaba un objeto JSON", str(path))
    model = parse_model(data, str(path))
    if kind is not None and model.kind not in ((kind,) if isinstance(kind, str) else tuple(kind)):
        raise InputError(f"se esperaba {kind!r} y el archivo es {model.kind!r}", f"{path}:kind")
    try:
        value = to_domain(model, check)
    except InputError as exc:
        raise InputError(str(exc), str(path)) from None
    except (NervioError, KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{type(exc).__name__}: {exc}", str(path)) from None
    logger.info(f"📄 {path}: {model.kind}")
    return model.kind, value


def serialize(value) -> dict:
    """Forma JSON canónica de un valor del dominio (el inverso de parse_input)."""
    if isinstance(value, TruncSimplicialSet):
        return simplicial_to_dict(value)
    if hasattr(value, "to_dict"):
        return value.to_dict()
    raise InputError(f"no hay serialización para {type(value).__name__}")
