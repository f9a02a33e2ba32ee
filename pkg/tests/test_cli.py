import json
import os
import subprocess
import sys

import pytest

from raagspine import families, graph_to_text
from raagspine.cli import main


def run_cli(args, stdin_text=None, env=None):
    cmd = [sys.executable, "-m", "raagspine.cli", *args]
    full_env = dict(os.environ)
    if env:
        full_env.update(env)
    return subprocess.run(
        cmd, input=stdin_text, capture_output=True, text=True, env=full_env
    )


@pytest.fixture(scope="module")
def t2_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("graphs") / "t2.graph"
    path.write_text(graph_to_text(families.rake(2)))
    return str(path)


class TestAnalyze:
    def test_rake2_text(self, t2_file):
        proc = run_cli(["analyze", t2_file])
        assert proc.returncode == 0
        assert "principal rank M(L) = 5" in proc.stdout
        assert "spine dimension M(V) = 6" in proc.stdout
        assert "vcd(U(A_Gamma)) = 5" in proc.stdout

    def test_rake2_json_round_trip(self, t2_file):
        proc = run_cli(["analyze", "--json", t2_file])
        payload = json.loads(proc.stdout)
        assert payload["schema_version"] == 1
        assert payload["principal_rank"]["size"] == 5
        assert payload["spine_dimension"]["size"] == 6
        assert payload["vcd"]["mode"] == "exact"
        assert json.loads(json.dumps(payload)) == payload

    def test_delta_bounds_verdict(self):
        gen = run_cli(["gen", "--family", "delta"])
        proc = run_cli(["analyze", "--json", "-"], stdin_text=gen.stdout)
        payload = json.loads(proc.stdout)
        assert payload["principal_rank"]["size"] == 11
        assert payload["spine_dimension"]["size"] == 14
        assert payload["vcd"]["mode"] == "bounds"
        assert payload["vcd"]["bounds"] == [11, 14]
        assert "M(L)" in payload["vcd"]["note"]

    def test_complete_graph(self):
        gen = run_cli(["gen", "--family", "complete", "--n", "3"])
        proc = run_cli(["analyze", "--json", "-"], stdin_text=gen.stdout)
        payload = json.loads(proc.stdout)
        assert payload["principal_rank"]["size"] == 0
        assert payload["spine_dimension"]["size"] == 0

    def test_parse_error_exit_code(self, tmp_path):
        bad = tmp_path / "bad.graph"
        bad.write_text("vertex a\nbogus line\n")
        proc = run_cli(["analyze", str(bad)])
        assert proc.returncode == 2
        assert "line 2" in proc.stderr

    def test_cap_exceeded_exit_code(self, t2_file):
        proc = run_cli(["analyze", "--with-retraction", "--cap", "10", t2_file])
        assert proc.returncode == 3

    def test_with_retraction_report(self, tmp_path):
        gen = run_cli(["gen", "--family", "rake", "--d", "1"])
        proc = run_cli(["analyze", "--with-retraction", "--json", "-"], stdin_text=gen.stdout)
        payload = json.loads(proc.stdout)
        assert payload["retraction"]["final"]["dimension"] == 2
        assert payload["retraction"]["final"]["euler_characteristic"] == 1


class TestPipelines:
    def test_gen_analyze_identity(self, t2_file):
        gen = run_cli(["gen", "--family", "rake", "--d", "2"])
        via_pipe = run_cli(["analyze", "--json", "-"], stdin_text=gen.stdout)
        via_file = run_cli(["analyze", "--json", t2_file])
        assert json.loads(via_pipe.stdout) == json.loads(via_file.stdout)

    def test_gen_families(self):
        for args in (
            ["gen", "--family", "rake", "--d", "3"],
            ["gen", "--family", "delta"],
            ["gen", "--family", "edgeless", "--n", "3"],
            ["gen", "--family", "compatibility-example"],
        ):
            proc = run_cli(args)
            assert proc.returncode == 0
            assert proc.stdout.startswith("vertex ")

    def test_gen_unknown_family(self):
        proc = run_cli(["gen", "--family", "nonsense"])
        assert proc.returncode == 2

    def test_gen_rake_like_with_inner_file(self, tmp_path):
        inner = tmp_path / "inner.graph"
        inner.write_text(graph_to_text(families.complete(2)))
        proc = run_cli(["gen", "--family", "rake-like", "--d", "2", "--inner", str(inner)])
        assert proc.returncode == 0
        assert proc.stdout.count("vertex") == 7

    def test_gen_rake_like_missing_inner(self):
        proc = run_cli(["gen", "--family", "rake-like", "--d", "2"])
        assert proc.returncode == 2


class TestSubcommands:
    def test_partitions_base(self, t2_file):
        proc = run_cli(["partitions", "--base", "u", "--json", t2_file])
        payload = json.loads(proc.stdout)
        assert payload["count"] == 2

    def test_max_set_flags(self, t2_file):
        for flags, expected in (
            (["--principal"], 5),
            (["--all"], 6),
            (["--vertices", "u"], 1),
            (["--vertices", "v,a1"], 5),
        ):
            proc = run_cli(["max-set", *flags, "--json", t2_file])
            assert json.loads(proc.stdout)["size"] == expected

    def test_conditions(self, t2_file):
        proc = run_cli(["conditions", "--json", t2_file])
        payload = json.loads(proc.stdout)
        assert payload["condition1"] and payload["condition2"]
        assert payload["spiky"] and payload["barbed"]
        assert payload["p_k"] == 1

    def test_retract_trace_file(self, t2_file, tmp_path):
        out = tmp_path / "trace.json"
        proc = run_cli(["retract", "--trace", str(out), t2_file])
        assert proc.returncode == 0
        assert "dimension 6 -> 5" in proc.stdout
        payload = json.loads(out.read_text())
        assert payload["initial"]["dimension"] == 6
        assert payload["final"]["dimension"] == 5
        assert payload["final"]["euler_characteristic"] == 1

    def test_verify_oversize(self, t2_file):
        proc = run_cli(["verify", "--lemma", "oversize", "--json", t2_file])
        assert json.loads(proc.stdout)["status"] == "pass"

    def test_verify_replacement_restricted(self):
        gen = run_cli(["gen", "--family", "delta"])
        proc = run_cli(
            [
                "verify",
                "--lemma",
                "cond2-conclusion",
                "--q-bases",
                "u1,u2",
                "--r-bases",
                "a2",
                "--json",
                "-",
            ],
            stdin_text=gen.stdout,
        )
        assert json.loads(proc.stdout)["status"] == "pass"

    def test_apply_aut(self, t2_file):
        proc = run_cli(["apply-aut", "--side", "a1,u", "--base", "a1", t2_file])
        assert proc.returncode == 0
        assert "u -> u.a1^-1" in proc.stdout
        assert "b1 -> b1" in proc.stdout

    def test_apply_aut_conjugation(self, t2_file):
        proc = run_cli(
            ["apply-aut", "--side", "a2,u,a1,a1^-1,b1,b1^-1", "--base", "a2", t2_file]
        )
        assert "a1 -> a2.a1.a2^-1" in proc.stdout

    def test_apply_aut_unknown_side(self, t2_file):
        proc = run_cli(["apply-aut", "--side", "u,v", "--base", "u", t2_file])
        assert proc.returncode == 2


class TestCache:
    def test_env_cache_dir(self, t2_file, tmp_path):
        env = {"RAAG_CACHE_DIR": str(tmp_path)}
        proc = run_cli(["max-set", "--all", "--json", t2_file], env=env)
        assert json.loads(proc.stdout)["size"] == 6
        assert any(p.name.startswith("compat-") for p in tmp_path.iterdir())
        proc2 = run_cli(["max-set", "--all", "--json", t2_file], env=env)
        assert json.loads(proc2.stdout)["size"] == 6

    def test_main_callable_in_process(self, t2_file, capsys):
        assert main(["conditions", t2_file]) == 0
        out = capsys.readouterr().out
        assert "spiky: True" in out
