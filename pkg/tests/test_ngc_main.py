import json

from pynambugraphs import (
    JetRing,
    Multivector,
    PipelineResult,
    canonical_form,
    parse_encoding
)
from pynambugraphs.ngc_main import (
    EXIT_BUDGET,
    EXIT_INPUT,
    EXIT_MISMATCH,
    EXIT_OK,
    MANIFEST_NAME,
    ngc_main
)

from .fixtures.paths import KERNEL_2D_CONFIG_PATH
from .test_support.util import flip_first_coefficient, json_file, lines

GAMMA_3 = "[0,3;2,3;2,3]"


def test_ngc_eval_01(capsys, isolated_environment, expected_formula_data):
    # printed value parses back to the expected evaluation
    expected = expected_formula_data.data_for_formula("gamma-3-2d")
    status = ngc_main(["eval", expected.encoding, "--dim", "2"])
    out = capsys.readouterr().out
    assert status == EXIT_OK
    ring = JetRing(2)
    assert Multivector.from_text(ring, out.strip()) == expected.multivector(ring)


def test_ngc_eval_02(capsys, isolated_environment):
    status = ngc_main(["eval", GAMMA_3, "--dim", "2", "--format", "json"])
    record = json.loads(capsys.readouterr().out)
    assert status == EXIT_OK
    assert record["encoding"] == GAMMA_3
    assert record["mode"] == "plain"
    assert record["sign"] in (1, -1)
    assert len(record["multivector"]) > 0


def test_ngc_eval_03(capsys, isolated_environment, expected_data):
    # malformed encodings point at the offending character
    encoding = "[0,3;2,,3;2,3]"
    position = expected_data.parse_error_data[encoding]["position"]
    status = ngc_main(["eval", encoding, "--dim", "2"])
    err_lines = capsys.readouterr().err.splitlines()
    assert status == EXIT_INPUT
    assert err_lines[-2].strip() == encoding
    assert err_lines[-1] == " " * (position + 2) + "^"


def test_ngc_eval_04(capsys, isolated_environment):
    # skew projection only exists in 4D
    status = ngc_main(["eval", GAMMA_3, "--dim", "2", "--mode", "skew"])
    assert status == EXIT_INPUT
    assert "dimension 4" in capsys.readouterr().err


def test_ngc_generate_01(capsys, isolated_environment, expected_count_data):
    status = ngc_main(["generate", "--dim", "2", "--format", "json"])
    encodings = json.loads(capsys.readouterr().out)
    assert status == EXIT_OK
    assert len(encodings) == expected_count_data.vector_graphs(2)
    assert len(set(encodings)) == len(encodings)


def test_ngc_descendants_01(capsys, isolated_environment, expected_data):
    expected = expected_data.lookup_descendants("[1,2;1,2]")
    status = ngc_main(["descendants", "[1,2;1,2]", "--dim", "3", "--raw"])
    assert status == EXIT_OK
    assert lines(capsys.readouterr().out) == expected["raw"]
    status = ngc_main(["descendants", "[1,2;1,2]", "--dim", "3"])
    assert status == EXIT_OK
    assert len(lines(capsys.readouterr().out)) == expected["deduplicated"]


def test_ngc_embed_01(capsys, isolated_environment, expected_data):
    expected = expected_data.lookup_embedding("[1,2;1,2]")
    status = ngc_main(["embed", "[1,2;1,2]", "--dim", "2"])
    assert status == EXIT_OK
    assert capsys.readouterr().out.strip() == expected["embedded"]


def test_ngc_pipeline_01(capsys, isolated_environment, tmp_path, expected_pipeline_data):
    # results land next to a manifest; untimed JSON is reproducible
    out_dir = tmp_path / "results"
    status = ngc_main(["pipeline", "--dim", "2", "--out", str(out_dir)])
    assert status == EXIT_OK
    manifest = json_file(out_dir / MANIFEST_NAME)
    assert manifest["status"] == "ok"
    assert manifest["config"]["family"] == "fixtures"
    assert manifest["calibration"] is not None
    for name in manifest["outputs"]:
        assert (out_dir / name).exists()
    kernel = PipelineResult(json_file(out_dir / "kernel-2d.json"))
    assert kernel.kernel_dimension == len(expected_pipeline_data.data_for_dimension(2).kernel)
    first = kernel.to_json(timing=False)

    status = ngc_main(["pipeline", "--dim", "2", "--out", str(out_dir)])
    assert status == EXIT_OK
    again = PipelineResult(json_file(out_dir / "kernel-2d.json"))
    assert again.to_json(timing=False) == first


def test_ngc_pipeline_02(capsys, isolated_environment):
    status = ngc_main(["pipeline", "--config", str(KERNEL_2D_CONFIG_PATH)])
    out = capsys.readouterr().out
    assert status == EXIT_OK
    assert out.startswith("kernel d=2 family=fixtures mode=plain")
    assert "kernel dimension 1" in out
    assert "trivialization" not in out


def test_ngc_pipeline_03(capsys, isolated_environment):
    for argv in (["pipeline", "--dim", "2", "--family", "nope"],
                 ["pipeline", "--dim", "2", "--mode", "skew"],
                 ["pipeline", "--dim", "2", "--format", "csv"]):
        assert ngc_main(argv) == EXIT_INPUT


def test_ngc_pipeline_04(capsys, isolated_environment, tmp_path):
    # out of time before the first evaluation finishes
    out_dir = tmp_path / "results"
    status = ngc_main(["pipeline", "--dim", "2", "--no-cache", "--budget", "0.000001",
                       "--out", str(out_dir)])
    assert status == EXIT_BUDGET
    assert json_file(out_dir / MANIFEST_NAME)["status"] == "budget-exceeded"


def test_ngc_pipeline_05(capsys, isolated_environment, tmp_path):
    # the kernel step is run for the Hamiltonians but the recorded steps are as requested
    out_dir = tmp_path / "results"
    status = ngc_main(["pipeline", "--dim", "2", "--steps", "hamiltonians", "--out", str(out_dir)])
    assert status == EXIT_OK
    manifest = json_file(out_dir / MANIFEST_NAME)
    assert manifest["config"]["steps"] == ["hamiltonians"]
    assert sorted(manifest["outputs"]) == ["hamiltonian-expressions-2d.json", "kernel-2d.json"]


def test_ngc_cache_01(capsys, isolated_environment):
    # a tampered entry fails verification
    assert ngc_main(["eval", GAMMA_3, "--dim", "2"]) == EXIT_OK
    assert ngc_main(["eval", "[1,2;1,2]", "--dim", "2"]) == EXIT_OK
    capsys.readouterr()

    assert ngc_main(["cache", "list", "--format", "json"]) == EXIT_OK
    records = json.loads(capsys.readouterr().out)
    stored = [canonical_form(parse_encoding(text, 2))[0] for text in (GAMMA_3, "[1,2;1,2]")]
    assert sorted(r["encoding"] for r in records) == sorted(stored)

    assert ngc_main(["cache", "verify"]) == EXIT_OK
    capsys.readouterr()
    tampered = [r for r in records if r["encoding"] == stored[0]][0]
    flip_first_coefficient(tampered["path"])
    assert ngc_main(["cache", "verify"]) == EXIT_MISMATCH
    report = dict(line.split() for line in lines(capsys.readouterr().out))
    assert report[tampered["digest"]] == "mismatch"

    assert ngc_main(["cache", "clear"]) == EXIT_OK
    assert ngc_main(["cache", "list"]) == EXIT_OK
    assert lines(capsys.readouterr().out) == []


def test_ngc_cache_02(capsys, tmp_path):
    status = ngc_main(["cache", "list", "--cache-dir", str(tmp_path / "nothing-here")])
    assert status == EXIT_INPUT


def test_ngc_cell_01(capsys, isolated_environment):
    # the published 2D pair trivializes the flow on its own
    status = ngc_main(["cell", "--dim", "2", "--row", "11", "--col", "12",
                       "--calibration", "1"])
    assert status == EXIT_OK
    assert capsys.readouterr().out.strip() == "yes"
