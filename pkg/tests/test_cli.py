"""Tests for the hybrid-pc command line."""

import json
import logging
import os
from unittest.mock import patch

import pytest
import yaml

from hybrid_pc import __version__
from hybrid_pc.graph.io import load_graph, save_graph
from hybrid_pc.llm import ResponseCache, cache_key, render_mem_prompt, split_for_mem
from hybrid_pc.main import main

from .conftest import graph


@pytest.fixture(autouse=True)
def reset_log_level():
    yield
    logging.getLogger().setLevel(logging.INFO)


def run(capsys, *argv: str) -> tuple[int, str]:
    code = main([str(a) for a in argv])
    return code, capsys.readouterr().out


class TestUsage:
    """Tests for argument handling and exit codes."""

    def test_version(self, capsys):
        code, out = run(capsys, "--version")
        assert code == 0
        assert out.strip() == f"hybrid-pc {__version__}"

    def test_unknown_command(self, capsys):
        assert run(capsys, "fit")[0] == 2

    def test_missing_required_option(self, capsys):
        assert run(capsys, "discover", "--ci", "oracle")[0] == 2

    def test_domain_error_exits_one(self, capsys, tmp_path):
        assert run(capsys, "stats", tmp_path / "missing.json")[0] == 1


class TestStats:
    """Tests for the stats command."""

    def test_asia(self, capsys):
        code, out = run(capsys, "stats", "asia")
        assert code == 0
        assert out.splitlines() == [
            "nodes: 8, edges: 8",
            "colliders: 2",
            "in-degree: min 0, median 1, max 2",
            "longest directed path: 3",
        ]

    def test_cyclic_graph_has_no_longest_path(self, capsys, tmp_path):
        save_graph(graph("AB", [("A", "B"), ("B", "A")]), tmp_path / "cycle.json")
        code, out = run(capsys, "stats", tmp_path / "cycle.json")
        assert code == 0
        assert "longest directed path: n/a" in out


class TestGenData:
    """Tests for the gen-data command."""

    def test_same_seed_same_bytes(self, capsys, tmp_path):
        first, second = tmp_path / "a.csv", tmp_path / "b.csv"
        for out in (first, second):
            code, text = run(capsys, "gen-data", "--graph", "asia", "--n", "200",
                             "--seed", "4", "--out", out)
            assert code == 0
        assert text == f"Wrote 200 rows x 8 columns to {second}\n"
        assert first.read_bytes() == second.read_bytes()

    def test_manifest_and_graph_out(self, capsys, tmp_path):
        out = tmp_path / "data.csv"
        code, _ = run(capsys, "gen-data", "--random-nodes", "5", "--edge-prob", "0.5",
                      "--mech", "mlp", "--n", "50", "--seed", "2", "--sample-seed", "9",
                      "--graph-out", tmp_path / "truth.json", "--out", out)
        assert code == 0
        assert load_graph(tmp_path / "truth.json").n_nodes == 5

        manifest = json.loads((tmp_path / "data.csv.manifest.json").read_text())
        assert manifest["command"][:2] == ["hybrid-pc", "gen-data"]
        assert manifest["seeds"] == {"seed": 2, "sample_seed": 9}
        assert str(out) in manifest["outputs"]
        assert str(tmp_path / "truth.json") in manifest["outputs"]

    def test_needs_a_graph(self, capsys, tmp_path):
        assert run(capsys, "gen-data", "--out", tmp_path / "data.csv")[0] == 1


class TestDiscoverAndRefine:
    """Tests for the discover, refine and evaluate commands."""

    def test_oracle_discover(self, capsys, tmp_path):
        out = tmp_path / "cpdag.json"
        code, text = run(capsys, "discover", "--ci", "oracle", "--truth", "chain3",
                         "--report", tmp_path / "report.json", "--out", out)
        assert code == 0
        assert text == f"Wrote graph with 0 directed and 2 undirected edges to {out}\n"
        assert load_graph(out).undirected_names() == [("X", "Y"), ("Y", "Z")]
        report = json.loads((tmp_path / "report.json").read_text())
        assert "sepsets" in report
        assert (tmp_path / "cpdag.json.manifest.json").is_file()

    def test_discover_needs_data(self, capsys, tmp_path):
        assert run(capsys, "discover", "--out", tmp_path / "g.json")[0] == 1

    def test_oracle_needs_truth(self, capsys, tmp_path):
        assert run(capsys, "discover", "--ci", "oracle", "--out", tmp_path / "g.json")[0] == 1

    def test_discover_from_data(self, capsys, tmp_path):
        data = tmp_path / "data.csv"
        assert run(capsys, "gen-data", "--graph", "collider3", "--n", "500",
                   "--out", data)[0] == 0
        code, _ = run(capsys, "discover", "--data", data, "--out", tmp_path / "g.json")
        assert code == 0
        assert load_graph(tmp_path / "g.json").node_names == ("X", "Y", "Z")

    def test_method_alias_selects_kci(self, capsys, tmp_path):
        data = tmp_path / "data.csv"
        assert run(capsys, "gen-data", "--graph", "chain3", "--n", "150",
                   "--out", data)[0] == 0
        out = tmp_path / "g.json"
        assert run(capsys, "discover", "--data", data, "--method", "pc-kci",
                   "--out", out)[0] == 0
        manifest = json.loads((tmp_path / "g.json.manifest.json").read_text())
        assert manifest["config"]["pc"]["ci_test"] == "kci"

    def test_method_and_ci_are_exclusive(self, capsys, tmp_path):
        assert run(capsys, "discover", "--method", "pc", "--ci", "kci",
                   "--out", tmp_path / "g.json")[0] == 2

    def test_complete_prior_returns_prior_graph(self, capsys, tmp_path):
        data = tmp_path / "data.csv"
        assert run(capsys, "gen-data", "--graph", "asia", "--n", "300",
                   "--out", data)[0] == 0
        out = tmp_path / "g.json"
        code, _ = run(capsys, "discover", "--data", data, "--prior", "asia",
                      "--complete-prior", "--out", out)
        assert code == 0
        assert load_graph(out).edge_names() == load_graph("asia").edge_names()
        assert load_graph(out).undirected_edges == frozenset()

    def test_complete_prior_excludes_fraction(self, capsys, tmp_path):
        assert run(capsys, "discover", "--ci", "oracle", "--truth", "asia", "--prior", "asia",
                   "--complete-prior", "--forbid-from-prior", "0.5",
                   "--out", tmp_path / "g.json")[0] == 2

    def test_refine_prunes_extra_edge(self, capsys, tmp_path):
        dense = graph("XYZ", [("X", "Y"), ("Y", "Z"), ("X", "Z")])
        save_graph(dense, tmp_path / "dense.json")
        out = tmp_path / "dag.json"
        code, text = run(capsys, "refine", "--graph", tmp_path / "dense.json", "--ci", "oracle",
                         "--truth", "chain3", "--prune", "0.3",
                         "--scores", tmp_path / "scores.json", "--out", out)
        assert code == 0
        assert text == f"Wrote DAG with 2 edges to {out}\n"
        assert load_graph(out).edge_names() == [("X", "Y"), ("Y", "Z")]
        scores = json.loads((tmp_path / "scores.json").read_text())
        assert scores[0]["edge"] == ["X", "Z"]
        assert scores[0]["witness"] == ["Y"]

    def test_evaluate(self, capsys, tmp_path):
        save_graph(graph("XYZ", [("X", "Y"), ("Z", "Y")]), tmp_path / "pred.json")
        code, text = run(capsys, "evaluate", "--pred", tmp_path / "pred.json",
                         "--truth", "chain3", "--out", tmp_path / "eval.json")
        assert code == 0
        out = json.loads(text)
        assert out["metrics"]["tp"] == 1
        assert out["metrics"]["precision"] == 0.5
        assert out["negative_compliance"]["n_forbidden"] == 0
        assert json.loads((tmp_path / "eval.json").read_text()) == out


class TestLanguageModelCommands:
    """Tests for the prior and memtest commands in offline mode."""

    @patch.dict(os.environ, {}, clear=True)
    @patch("hybrid_pc.config.load_dotenv")
    def test_prior_offline_cache_miss(self, mock_load_dotenv, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("LLM_CACHE_DIR", str(tmp_path / "cache"))
        code, _ = run(capsys, "prior", "--strategy", "pairwise", "--variables", "chain3",
                      "--out", tmp_path / "prior.json")
        assert code == 1
        assert not (tmp_path / "prior.json").exists()

    @patch.dict(os.environ, {}, clear=True)
    @patch("hybrid_pc.config.load_dotenv")
    def test_prior_online_needs_endpoint(self, mock_load_dotenv, capsys, tmp_path):
        code, _ = run(capsys, "prior", "--strategy", "bfs", "--variables", "chain3",
                      "--online", "--out", tmp_path / "prior.json")
        assert code == 1

    @patch.dict(os.environ, {}, clear=True)
    @patch("hybrid_pc.config.load_dotenv")
    def test_memtest_from_cache(self, mock_load_dotenv, capsys, tmp_path, monkeypatch):
        cache_dir = tmp_path / "cache"
        monkeypatch.setenv("LLM_CACHE_DIR", str(cache_dir))
        task = split_for_mem(load_graph("asia"), "M1", 0.5, 3)
        prompt = render_mem_prompt(task, "asia")
        ResponseCache(cache_dir).put(cache_key("gpt-4", 0.0, prompt),
                                     repr(list(task.hidden_nodes)))

        out = tmp_path / "mem.json"
        code, text = run(capsys, "memtest", "--graph", "asia", "--kind", "M1",
                         "--dataset-name", "asia", "--seed", "3", "--out", out)
        assert code == 0
        assert json.loads(text)["nodes"]["f1"] == 1.0
        result = json.loads(out.read_text())
        assert result["hidden_nodes"] == list(task.hidden_nodes)
        assert result["cache_keys"] == [cache_key("gpt-4", 0.0, prompt)]

    @patch.dict(os.environ, {}, clear=True)
    @patch("hybrid_pc.config.load_dotenv")
    def test_memtest_dataset_name(self, mock_load_dotenv, capsys, tmp_path, monkeypatch):
        cache_dir = tmp_path / "cache"
        monkeypatch.setenv("LLM_CACHE_DIR", str(cache_dir))
        task = split_for_mem(load_graph("asia"), "dataset_name", 0.5, 0)
        prompt = render_mem_prompt(task, "asia")
        ResponseCache(cache_dir).put(cache_key("gpt-4", 0.0, prompt), "['bnlearn asia']")

        code, text = run(capsys, "memtest", "--graph", "asia", "--kind", "dataset_name",
                         "--dataset-name", "asia", "--out", tmp_path / "mem.json")
        assert code == 0
        assert json.loads(text)["name_match"] is True


class TestBench:
    """Tests for the bench command."""

    def test_bench(self, capsys, tmp_path):
        config = tmp_path / "bench.yaml"
        config.write_text(yaml.safe_dump({
            "name": "cli",
            "datasets": [{"name": "chain3", "graph": "chain3"}],
            "methods": ["oracle"],
            "mode": "cpdag_aware",
        }))
        code, text = run(capsys, "bench", "--config", config, "--out", tmp_path / "out")
        assert code == 0
        assert text.splitlines()[2] == "| oracle |       1.00 |       1.00 |      1.00 |"
        assert (tmp_path / "out" / "results.csv.manifest.json").is_file()

    def test_bad_config(self, capsys, tmp_path):
        config = tmp_path / "bench.yaml"
        config.write_text("methods: [ges]\n")
        assert run(capsys, "bench", "--config", config, "--out", tmp_path / "out")[0] == 1
