"""Smoke tests for the _stallnet python module."""

import math

import pytest

import stallnet as sn


def test_catalog_and_evaluate():
    problems = sn.catalog()
    assert len(problems) == 10
    sphere = sn.catalog_problem(sn.FunctionId.sphere, 2)
    assert sphere.evaluate([0.0, 0.0]) == 0.0
    assert sphere.evaluate([1.0, 2.0]) == 5.0
    assert sphere.f_opt == 0.0
    with pytest.raises(ValueError):
        sphere.evaluate([1.0])


def test_run_and_build_pipeline():
    problem = sn.catalog_problem(sn.FunctionId.sphere, 2)
    log = sn.run_cmaes(problem, 2000, 7)
    assert log.final_evals == 2000
    assert len(log) > 0
    assert log.events[-1].fitness < 1e-8

    config = sn.NetworkConfig(sn.Model.AN, beta=40, epsilon=1e-5, k=1)
    net = sn.build_network([log], config, problem)
    nodes, edges = sn.network_size(net)
    assert nodes >= 1
    assert sn.contains_global_optimum(net, problem, 1e-8)

    lnet = sn.layout(net)
    assert lnet.layout_method == sn.LayoutMethod.direct_2d
    doc = sn.export_graphml(lnet)
    assert doc.count("<node ") == nodes
    assert doc.count("<edge ") == edges


def test_determinism_across_calls():
    problem = sn.catalog_problem(sn.FunctionId.rastrigin, 2)
    a = sn.run_de(problem, 500, 99)
    b = sn.run_de(problem, 500, 99)
    assert sn.serialize_log(a) == sn.serialize_log(b)


def test_quantize_and_partition_factor():
    assert sn.quantize([0.123, 0.456], 0.01).q == [12, 45]
    assert sn.quantize([-0.005, 0.0], 0.01).q == [-1, 0]
    assert sn.suggest_partition_factor(-5, 5, 2) == pytest.approx(0.1, abs=0)
    assert sn.suggest_partition_factor(-5, 5, 10) == 1.0


def test_attractors_and_aggregate():
    problem = sn.catalog_problem(sn.FunctionId.sphere, 2)
    log = sn.run_random_search(problem, 10000, 3)
    attractors = sn.extract_attractors(log, 40)
    assert all(a.stall >= 40 for a in attractors)
    stats = sn.aggregate([1.0, 2.0, 3.0, 4.0, 5.0])
    assert stats.median == 3.0
    assert stats.iqr == 2.0


def test_log_roundtrip(tmp_path):
    problem = sn.catalog_problem(sn.FunctionId.gallagher, 2)
    log = sn.run_random_search(problem, 300, 11)
    path = tmp_path / "run.jsonl"
    sn.write_log_file(log, path)
    again = sn.read_log_file(path)
    assert sn.serialize_log(again) == sn.serialize_log(log)


def test_cmd_pipeline(tmp_path):
    manifest = sn.RunManifest()
    manifest.functions = [sn.FunctionId.sphere]
    manifest.dimensions = [2]
    manifest.algorithms = [sn.Algorithm.CMA]
    manifest.runs_per_cell = 2
    manifest.master_seed = 5
    manifest.budget = 400
    manifest.output_dir = str(tmp_path / "out")
    result = sn.cmd_run(manifest)
    assert len(result["log_files"]) == 2

    build = sn.cmd_build(
        [str(tmp_path / "out" / "logs" / "*.jsonl")],
        sn.NetworkConfig(sn.Model.AN, beta=20, epsilon=1e-5, k=1),
        sn.GraphFormat.graphml,
        str(tmp_path / "out" / "net.graphml"),
    )
    assert build["nodes"] >= 1
    sweep = sn.cmd_sweep(manifest, [20, 80], [1e-3, 1e-5])
    assert len(sweep["metrics_files"]) == 1
