"""
tests/test_cli.py — Lectura de archivos, comandos y códigos de salida
"""
import json
import os
import sys
import unittest

import pytest

# Agregar el directorio raíz al path
ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, ROOT)

from cli.codec import parse_input, parse_model, serialize, to_domain
from cli.commands import COMMANDS, run
from cli.schemas import KINDS, Manifest, json_schemas
from core.errors import InputError
from freecat.graph import make_graph
from globular.globset import make_globular_set
from operad.operad import projection_operad
from simplicial.nerve import nerve
from sample_categories import reference_nerve_category

EXAMPLES = os.path.join(ROOT, "data", "examples")


def example(name: str) -> str:
    return os.path.join(EXAMPLES, name)


def write(tmp_path, data) -> str:
    path = tmp_path / "input.json"
    path.write_text(data if isinstance(data, str) else json.dumps(data), encoding="utf-8")
    return str(path)


# ═══════════════════════════════════════════════════════════════════════════════
# TEST 1: parse_input
# ═══════════════════════════════════════════════════════════════════════════════

class TestParseInput(unittest.TestCase):

    def test_graph(self):
        kind, g = parse_input(example("six_vertex_path.json"), "kleisli")
        self.assertEqual(kind, "kleisli")
        self.assertEqual(len(g.target.vertices), 6)
        self.assertEqual(g.n, 3)

    def test_category_gets_identities(self):
        _, c = parse_input(example("reference_category.json"), "category")
        self.assertEqual(len(c.objects), 5)
        self.assertEqual(len(c.arrows), 12)

    def test_dangling_operad(self):
        with self.assertRaises(InputError) as ctx:
            parse_input(example("dangling_operad.json"), "operad")
        self.assertIn("gamma[8]", str(ctx.exception))

    def test_wrong_kind(self):
        with self.assertRaises(InputError):
            parse_input(example("partiality.json"), "operad")


def test_malformed_json_has_a_position(tmp_path):
    path = write(tmp_path, '{"kind": "graph", "vertices": [}')
    with pytest.raises(InputError) as info:
        parse_input(path)
    assert info.value.position.startswith(path + ":1:")


def test_unknown_field_is_rejected(tmp_path):
    path = write(tmp_path, {"kind": "graph", "vertices": ["a"], "colour": "red"})
    with pytest.raises(InputError):
        parse_input(path)


def test_simplicial_identity_violation(tmp_path):
    data = json.loads(open(example("segal_gap.json"), encoding="utf-8").read())
    data["faces"]["2"]["1"]["1x|f"] = "1x"
    with pytest.raises(InputError) as info:
        parse_input(write(tmp_path, data), "simplicial")
    assert "conjunto simplicial inválido" in str(info.value)


def test_store_function_must_cover_every_state(tmp_path):
    data = json.loads(open(example("store_swap.json"), encoding="utf-8").read())
    data["rows"].pop()
    with pytest.raises(InputError) as info:
        parse_input(write(tmp_path, data))
    assert "faltan filas" in str(info.value)


# ═══════════════════════════════════════════════════════════════════════════════
# TEST 2: ida y vuelta
# ═══════════════════════════════════════════════════════════════════════════════

@pytest.mark.parametrize("value", [
    reference_nerve_category(),
    make_graph(["0", "1"], {"a": ("0", "1")}),
    nerve(reference_nerve_category(), 2),
    make_globular_set(["x", "y"], {"f": ("x", "y"), "g": ("x", "y")}, {"α": ("f", "g")}),
    projection_operad(3),
], ids=["category", "graph", "simplicial", "globular", "operad"])
def test_serialize_then_parse(value):
    data = serialize(value)
    again = to_domain(parse_model(data))
    assert serialize(again) == data


# ═══════════════════════════════════════════════════════════════════════════════
# TEST 3: comandos
# ═══════════════════════════════════════════════════════════════════════════════

def _run(command, *inputs, **flags):
    return run(Manifest(command=command, inputs=[example(i) for i in inputs], **flags))


class TestCommands(unittest.TestCase):

    def test_every_command_is_registered(self):
        expected = {
            "validate", "nerve", "segal", "categorify", "kan", "density", "factorize", "zigzag",
            "pd-compose", "free2", "store-normalize", "store-canonical", "theta", "operad-validate",
            "operad-iso", "strongly-regular", "schema",
        }
        self.assertEqual(set(COMMANDS), expected)

    def test_nerve_levels(self):
        code, report = _run("nerve", "reference_category.json", trunc=3)
        self.assertEqual(code, 0)
        self.assertEqual(report["result"]["levels"]["0"], 5)
        self.assertEqual(report["result"]["levels"]["1"], 12)
        self.assertEqual(report["result"]["levels"]["2"], 23)

    def test_segal_failure_has_a_witness(self):
        code, report = _run("segal", "segal_gap.json")
        self.assertEqual(code, 1)
        witness = report["result"]["witness"]
        self.assertEqual((witness["p"], witness["q"]), (1, 1))
        self.assertEqual(witness["reason"], "not surjective: no filler")

    def test_segal_on_a_category(self):
        code, _ = _run("segal", "reference_category.json", trunc=3)
        self.assertEqual(code, 0)

    def test_store_normalize(self):
        code, report = _run("store-normalize", "store_update_lookup.json")
        self.assertEqual(code, 0)
        results = report["result"]["results"]
        self.assertEqual(results[0]["normal"], "update[l:=1](x1)")
        self.assertEqual(results[1]["normal"], "update[l:=1](x1)")
        self.assertTrue(report["result"]["all_equivalent"])

    def test_store_normalize_compares_with_canonical(self):
        _, report = _run("store-normalize", "store_update_lookup.json")
        for row in report["result"]["results"]:
            self.assertEqual(row["canonical"], "update[l:=1](x1)")
            self.assertTrue(row["matches_canonical"])
        self.assertTrue(report["result"]["rewriting_complete"])

    def test_kan_into_a_two_object_category(self):
        code, report = _run("kan", "kan_point_functor.json", "kan_point_into_arrow.json")
        self.assertEqual(code, 0)
        result = report["result"]
        self.assertEqual(result["sizes"], {"x": 2, "y": 2})
        self.assertTrue(result["functorial"])
        self.assertTrue(result["agrees_with_comma_colimit"])
        self.assertEqual(result["report"]["checked"], 2)

    def test_kan_needs_two_inputs(self):
        self.assertEqual(_run("kan", "kan_point_functor.json")[0], 2)
        self.assertEqual(_run("kan", "kan_point_into_arrow.json", "kan_point_functor.json")[0], 2)

    def test_density_reconstructs_a_graph(self):
        code, report = _run("density", "six_vertex_graph.json", trunc=3, bound=3)
        self.assertEqual(code, 0)
        (verdict,) = report["result"]["verdicts"]
        self.assertEqual(verdict["name"], "six_vertex_graph.json")
        self.assertEqual(verdict["verdict"], "isomorphism")
        self.assertEqual(verdict["counts"], {"V": [6, 6], "E": [5, 5]})

    def test_density_needs_a_graph(self):
        self.assertEqual(_run("density")[0], 2)
        self.assertEqual(_run("density", "partiality.json")[0], 2)

    def test_store_canonical(self):
        code, report = _run("store-canonical", "store_swap.json")
        self.assertEqual(code, 0)
        self.assertTrue(report["result"]["denotation_matches"])

    def test_factorize_path(self):
        code, report = _run("factorize", "six_vertex_path.json")
        self.assertEqual(code, 0)
        self.assertEqual(report["result"]["factorization"]["p"], 3)

    def test_zigzag(self):
        code, report = _run("zigzag", "six_vertex_path.json", bound=3)
        self.assertEqual(code, 0)
        self.assertTrue(report["result"]["factorizations"])

    def test_pd_compose(self):
        code, report = _run("pd-compose", "pasting.json")
        self.assertEqual(code, 0)
        self.assertEqual(report["result"]["heights"], [1, 1, 0])

    def test_free2(self):
        code, report = _run("free2", "two_cell.json")
        self.assertEqual(code, 0)
        self.assertTrue(report["result"]["finite"])

    def test_theta(self):
        code, report = _run("theta", "partiality.json", bound=2)
        self.assertEqual(code, 0)
        self.assertEqual(report["result"]["homs"]["1->1"], 2)

    def test_operads(self):
        self.assertEqual(_run("operad-validate", "terminal_operad.json")[0], 0)
        self.assertEqual(_run("validate", "terminal_operad.json")[0], 0)
        self.assertEqual(_run("operad-iso", "terminal_operad.json")[0], 0)
        self.assertEqual(_run("operad-validate", "dangling_operad.json")[0], 2)

    def test_strongly_regular(self):
        code, report = _run("strongly-regular", "equations.json")
        self.assertEqual(code, 0)
        flags = [row["strongly_regular"] for row in report["result"]["equations"]]
        self.assertEqual(flags, [True, True, True, False, False, False, False])

    def test_schema(self):
        code, report = _run("schema")
        self.assertEqual(code, 0)
        self.assertEqual(set(report["result"]["schemas"]), set(KINDS))
        self.assertEqual(json_schemas()["graph"]["properties"]["kind"]["const"], "graph")

    def test_input_errors_exit_two(self):
        self.assertEqual(_run("nerve")[0], 2)
        self.assertEqual(_run("nerve", "missing.json")[0], 2)
        self.assertEqual(_run("nerve", "partiality.json")[0], 2)
        self.assertEqual(run(Manifest(command="frobnicate"))[0], 2)

    def test_reports_are_deterministic(self):
        first = json.dumps(_run("nerve", "reference_category.json")[1], sort_keys=True)
        second = json.dumps(_run("nerve", "reference_category.json")[1], sort_keys=True)
        self.assertEqual(first, second)


def test_validate_reports_a_broken_category(tmp_path):
    data = json.loads(open(example("reference_category.json"), encoding="utf-8").read())
    data["comp"]["b"]["c"] = "b"
    code, report = run(Manifest(command="validate", inputs=[write(tmp_path, data)]))
    assert code == 1
    assert report["result"]["report"]["violations"]


def test_main_writes_the_report(tmp_path):
    import main

    out = tmp_path / "report.json"
    code = main.main(["strongly-regular", "--input", example("equations.json"), "--out", str(out), "--livelogs"])
    assert code == 0
    assert json.loads(out.read_text(encoding="utf-8"))["ok"] is True
