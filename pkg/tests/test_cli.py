import json

from jetfact.cli import run


def run_json(argv, tmp_path, name="report.json"):
    out = tmp_path / name
    code = run(argv + ["--out", str(out)])
    return code, json.loads(out.read_text())


def test_jet_build_dims(tmp_path):
    code, report = run_json(
        ["jet", "build", "--gens", "x", "--max-weight", "6", "--dims"], tmp_path
    )
    assert code == 0
    assert report["command"] == "jet build"
    assert report["checks"][0]["detail"]["dims"] == [1, 1, 2, 3, 5, 7, 11]


def test_jet_build_with_relations(tmp_path):
    code, report = run_json(
        ["jet", "build", "--gens", "x,y", "--relations", "x*y", "--max-weight", "6", "--dims"],
        tmp_path,
    )
    assert code == 0
    assert report["checks"][0]["detail"]["dims"] == [1, 2, 4, 7, 12, 19, 30]


def test_vertex_modes_example(tmp_path):
    code, report = run_json(["vertex", "modes", "--a", "x", "--b", "x", "--n", "-2"], tmp_path)
    assert code == 0
    assert report["checks"][0]["detail"]["mode"] == "x1*x0"


def test_vertex_modes_infers_generators(tmp_path):
    code, report = run_json(
        ["vertex", "modes", "--a", "x*y", "--b", "y", "--n", "-1"], tmp_path
    )
    assert code == 0
    assert "y" in report["checks"][0]["detail"]["mode"]


def test_vertex_check_passes(tmp_path):
    code, report = run_json(
        ["vertex", "check", "--gens", "x", "--max-weight", "5", "--samples", "10"],
        tmp_path,
    )
    assert code == 0
    assert all(c["status"] == "pass" for c in report["checks"])


def test_fact_check_zero_samples(tmp_path):
    code, report = run_json(["fact", "check", "--samples", "0"], tmp_path)
    assert code == 0
    assert all(c["status"] == "pass" for c in report["checks"])


def test_fact_coeq(tmp_path):
    code, report = run_json(
        ["fact", "coeq", "--gens", "x", "--max-weight", "3", "--radii", "1,2"], tmp_path
    )
    assert code == 0
    assert len(report["checks"]) == 4


def test_fact_adjunction(tmp_path):
    code, report = run_json(
        ["fact", "adjunction", "--gens", "x", "--max-weight", "4", "--samples", "5"],
        tmp_path,
    )
    assert code == 0


def test_reconstruct_roundtrip(tmp_path):
    code, report = run_json(
        ["reconstruct", "roundtrip", "--gens", "x", "--max-weight", "4", "--nmax", "4"],
        tmp_path,
    )
    assert code == 0
    names = [c["name"] for c in report["checks"]]
    assert names == ["vacuum", "translation", "modes"]


def test_num_laurent(tmp_path):
    code, report = run_json(
        ["num", "laurent", "--gens", "x", "--max-weight", "4", "--samples", "2"],
        tmp_path,
    )
    assert code == 0


def test_num_swap(tmp_path):
    code, report = run_json(
        ["num", "swap", "--gens", "x", "--max-weight", "4", "--samples", "2"], tmp_path
    )
    assert code == 0


def test_parse_error_exit_code(capsys):
    assert run(["vertex", "modes", "--a", "x+%", "--b", "x"]) == 2
    assert "error" in capsys.readouterr().err
    assert run(["nonsense"]) == 2
    assert run([]) == 2


def test_unknown_generator_is_parse_error():
    assert run(["vertex", "modes", "--a", "q", "--b", "x", "--gens", "x"]) == 2


def test_reports_deterministic(tmp_path):
    _, r1 = run_json(
        ["vertex", "check", "--gens", "x", "--max-weight", "4", "--samples", "5", "--seed", "3"],
        tmp_path,
        "a.json",
    )
    _, r2 = run_json(
        ["vertex", "check", "--gens", "x", "--max-weight", "4", "--samples", "5", "--seed", "3"],
        tmp_path,
        "b.json",
    )
    r1.pop("timing_ms")
    r2.pop("timing_ms")
    assert r1 == r2


def test_preset_file(tmp_path):
    preset = tmp_path / "scenario.json"
    preset.write_text(
        json.dumps(
            {
                "presentation": {
                    "generators": ["x", "y"],
                    "relations": ["x*y"],
                    "max_weight": 4,
                },
                "geometry": {
                    "pair": [
                        {"c": ["0", "0"], "r": "1"},
                        {"c": ["3", "0"], "r": "1"},
                    ],
                    "lens": {
                        "regions": [
                            [
                                {"c": ["0", "0"], "r": "1"},
                                {"c": ["1", "0"], "r": "1"},
                            ]
                        ]
                    },
                },
                "checks": [{"samples": 2, "seed": 1}],
            }
        )
    )
    code, report = run_json(["fact", "check", "--preset", str(preset)], tmp_path)
    assert code == 0
    assert report["params"]["preset"] == str(preset)
    geo = next(c for c in report["checks"] if c["name"] == "geometry_pair")
    assert geo["status"] == "pass" and geo["detail"]["disks"] == 2
    lens = next(c for c in report["checks"] if c["name"] == "geometry_lens")
    assert lens["status"] == "pass" and lens["detail"]["regions"] == 1

    code, report = run_json(["jet", "build", "--preset", str(preset), "--dims"], tmp_path)
    assert code == 0
    assert report["checks"][0]["detail"]["dims"] == [1, 2, 4, 7, 12]


def test_preset_with_presentation_path(tmp_path):
    pres = tmp_path / "algebra.json"
    pres.write_text(
        json.dumps({"generators": ["x"], "relations": ["x*x"], "max_weight": 5})
    )
    preset = tmp_path / "scenario.json"
    preset.write_text(json.dumps({"presentation": str(pres)}))
    code, report = run_json(["jet", "build", "--preset", str(preset), "--dims"], tmp_path)
    assert code == 0
    assert report["checks"][0]["detail"]["dims"] == [1, 1, 1, 1, 2, 2]


def test_preset_rejects_overlapping_geometry(tmp_path):
    preset = tmp_path / "scenario.json"
    preset.write_text(
        json.dumps(
            {
                "presentation": {"generators": ["x"], "max_weight": 4},
                "geometry": {
                    "bad": [
                        {"c": ["0", "0"], "r": "1"},
                        {"c": ["1", "0"], "r": "1"},
                    ]
                },
                "checks": [{"samples": 0}],
            }
        )
    )
    code, report = run_json(["fact", "check", "--preset", str(preset)], tmp_path)
    assert code == 1
    geo = next(c for c in report["checks"] if c["name"] == "geometry_bad")
    assert geo["status"] == "fail"


def test_report_to_stdout(capsys):
    code = run(["jet", "build", "--gens", "x", "--max-weight", "3", "--dims"])
    assert code == 0
    report = json.loads(capsys.readouterr().out)
    assert report["checks"][0]["detail"]["dims"] == [1, 1, 2, 3]


def test_failing_check_exits_one(tmp_path):
    # An unsatisfiable tolerance forces a fail record and exit status 1.
    code, report = run_json(
        [
            "num",
            "laurent",
            "--gens",
            "x",
            "--max-weight",
            "4",
            "--samples",
            "1",
            "--tolerance",
            "-1",
        ],
        tmp_path,
    )
    assert code == 1
    assert any(c["status"] == "fail" for c in report["checks"])
