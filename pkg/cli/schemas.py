"""
cli/schemas.py — Modelos pydantic de los archivos de entrada

Cada archivo JSON es un objeto con un campo "kind" que decide el modelo.
Los conjuntos son listas de strings y los mapas son objetos.
"""
from typing import Annotated, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, TypeAdapter


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class ArrowModel(_Strict):
    id: str
    src: str
    tgt: str


class CategoryFile(_Strict):
    """Si falta "identities", se agregan 1_X y "comp" sólo trae pares de no identidades."""
    kind: Literal["category"]
    objects: list[str]
    arrows: list[ArrowModel] = []
    identities: Optional[dict[str, str]] = None
    comp: dict[str, dict[str, str]] = {}


class GraphFile(_Strict):
    kind: Literal["graph"]
    vertices: list[str]
    edges: list[ArrowModel] = []


class SimplicialFile(_Strict):
    kind: Literal["simplicial"]
    N: int = Field(ge=0)
    levels: dict[str, list[str]]
    faces: dict[str, dict[str, dict[str, str]]] = {}
    degeneracies: dict[str, dict[str, dict[str, str]]] = {}


class GlobularFile(_Strict):
    kind: Literal["globular-set"]
    cells0: list[str]
    cells1: list[ArrowModel] = []
    cells2: list[ArrowModel] = []


class SetFunctorFile(_Strict):
    """Funtor C -> Set; los prehaces van sobre la categoría opuesta."""
    kind: Literal["set-functor"]
    base: CategoryFile
    carrier: dict[str, list[str]]
    action: dict[str, dict[str, str]] = {}


class FunctorFile(_Strict):
    kind: Literal["functor"]
    source: CategoryFile
    target: CategoryFile
    objects: dict[str, str]
    arrows: dict[str, str]


class KleisliFile(_Strict):
    """Flecha i₀[n] -> T G: un vértice inicial y un camino por arista."""
    kind: Literal["kleisli"]
    graph: GraphFile
    start: str
    paths: list[list[str]]


class PastingFile(_Strict):
    """Forma externa "(1,0,2)" y, por columna, un ancho o la pila de formas pegadas."""
    kind: Literal["pasting"]
    outer: str
    labels: list[Union[int, list[str]]]


class StoreTermFile(_Strict):
    kind: Literal["store-term"]
    locations: list[str]
    values: list[str]
    terms: list[str]
    arity: Optional[int] = Field(default=None, ge=0)


class StoreRow(_Strict):
    state: list[str]
    next: list[str]
    result: int = Field(ge=0)


class StoreFunctionFile(_Strict):
    """Función S -> S × [n]: una fila por estado."""
    kind: Literal["store-function"]
    locations: list[str]
    values: list[str]
    arity: int = Field(ge=0)
    rows: list[StoreRow]


class MonadFile(_Strict):
    kind: Literal["monad"]
    name: str
    params: dict[str, list[str] | int] = {}


class GammaEntry(_Strict):
    op: str
    args: list[str]
    result: str


class OperadFile(_Strict):
    kind: Literal["operad"]
    max_arity: int = Field(ge=1)
    ops: dict[str, list[str]]
    identity: str
    gamma: list[GammaEntry] = []


class EquationFile(_Strict):
    kind: Literal["equations"]
    equations: list[str]


InputFile = Annotated[
    Union[
        CategoryFile, GraphFile, SimplicialFile, GlobularFile, SetFunctorFile, FunctorFile,
        KleisliFile, PastingFile, StoreTermFile, StoreFunctionFile, MonadFile, OperadFile,
        EquationFile,
    ],
    Field(discriminator="kind"),
]

INPUT_ADAPTER = TypeAdapter(InputFile)

KINDS = {
    "category": CategoryFile,
    "graph": GraphFile,
    "simplicial": SimplicialFile,
    "globular-set": GlobularFile,
    "set-functor": SetFunctorFile,
    "functor": FunctorFile,
    "kleisli": KleisliFile,
    "pasting": PastingFile,
    "store-term": StoreTermFile,
    "store-function": StoreFunctionFile,
    "monad": MonadFile,
    "operad": OperadFile,
    "equations": EquationFile,
}


class Manifest(_Strict):
    command: str
    inputs: list[str] = []
    bound: Optional[int] = Field(default=None, ge=0)
    trunc: Optional[int] = Field(default=None, ge=0)
    out: Optional[str] = None
    format: Literal["json"] = "json"


def json_schemas() -> dict:
    return {kind: model.model_json_schema() for kind, model in sorted(KINDS.items())}
