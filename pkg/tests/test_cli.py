import subprocess
import sys

import numpy as np
import pytest

from assortnet.cli import main

DYAD_EDGES = "src,dst,weight,normalized_weight\n00,01,1,0.25\n02,03,1,0.25\n"
DYAD_ATTRS = (
    "occupation_code,group_1,group_2\n"
    "00,1,0\n01,1,0\n02,0,1\n03,0,1\n"
)
CONST_ATTRS = "occupation_code,group_1,group_2\n00,1,1\n01,1,1\n02,1,1\n03,1,1\n"


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def synth_files(tmp_path, capsys, **kw):
    micro = tmp_path / "micro.csv"
    cfg = tmp_path / "analysis.ini"
    argv = [
        "synth", "--out", str(micro), "--config-out", str(cfg),
        "--n-persons", str(kw.get("n_persons", 6000)),
        "--n-occupations", str(kw.get("n_occupations", 8)),
        "--n-industries", "6",
        "--segregation", str(kw.get("segregation", 0.6)),
        "--seed", str(kw.get("seed", 11)),
    ]
    if kw.get("extra"):
        argv += ["--extra-category", kw["extra"]]
    code, _, _ = run(argv, capsys)
    assert code == 0
    return micro, cfg


# ------------------------------------------------------------------ synth


def test_synth_deterministic(tmp_path, capsys):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    for out in (a, b):
        code, _, _ = run(["synth", "--out", str(out), "--seed", "7",
                          "--n-persons", "2000", "--segregation", "1.0"], capsys)
        assert code == 0
    assert a.read_bytes() == b.read_bytes()


def test_synth_rejects_bad_segregation(tmp_path, capsys):
    code, _, err = run(["synth", "--out", str(tmp_path / "x.csv"),
                        "--segregation", "-0.1"], capsys)
    assert code == 2
    assert "segregation" in err


def test_synth_writes_expected_rows(tmp_path, capsys):
    out = tmp_path / "x.csv"
    code, _, _ = run(["synth", "--out", str(out), "--n-persons", "100"], capsys)
    assert code == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 101
    assert lines[0].startswith("person_id,weight,birth_year,occupation_code")


# ------------------------------------------------------------ build-graph


def test_build_graph_happy_path(tmp_path, capsys):
    micro, cfg = synth_files(tmp_path, capsys)
    out_dir = tmp_path / "net"
    code, out, _ = run(["build-graph", "--input", str(micro), "--config", str(cfg),
                        "--out-dir", str(out_dir), "--min-cell", "10"], capsys)
    assert code == 0
    assert (out_dir / "edges.csv").exists()
    assert (out_dir / "attributes.csv").exists()
    assert (out_dir / "exclusions.txt").exists()
    header = (out_dir / "attributes.csv").read_text().splitlines()[0]
    assert header == "occupation_code,group_1,group_2,group_3"


def test_build_graph_missing_category_column(tmp_path, capsys):
    micro, cfg = synth_files(tmp_path, capsys)
    bad_cfg = tmp_path / "bad.ini"
    bad_cfg.write_text(cfg.read_text() + "\n[category:caste]\ngroups = a, b\n")
    code, _, err = run(["build-graph", "--input", str(micro), "--config", str(bad_cfg),
                        "--out-dir", str(tmp_path / "x")], capsys)
    assert code == 2
    assert "caste" in err


def test_build_graph_single_occupation_is_exit_2(tmp_path, capsys):
    micro = tmp_path / "one.csv"
    rows = ["person_id,weight,birth_year,occupation_code,industry_code,education_code,g"]
    rows += [f"p{i},1.0,1950,11,A,1,{'xy'[i % 2]}" for i in range(40)]
    micro.write_text("\n".join(rows) + "\n")
    cfg = tmp_path / "c.ini"
    cfg.write_text("[education]\n1 = 1\n[category:g]\ngroups = x, y\n")
    code, _, err = run(["build-graph", "--input", str(micro), "--config", str(cfg),
                        "--out-dir", str(tmp_path / "x")], capsys)
    assert code == 2
    assert "TooFewOccupations" in err


def test_build_graph_requires_input_and_config(tmp_path, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["build-graph", "--out-dir", str(tmp_path)])
    assert exc.value.code == 2


# ----------------------------------------------------------------- assort


def test_assort_prebuilt_dyads(tmp_path, capsys):
    (tmp_path / "edges.csv").write_text(DYAD_EDGES)
    (tmp_path / "attrs.csv").write_text(DYAD_ATTRS)
    code, out, _ = run(["assort", "--edges", str(tmp_path / "edges.csv"),
                        "--attributes", str(tmp_path / "attrs.csv"),
                        "--out-dir", str(tmp_path)], capsys)
    assert code == 0
    assert "vector_r=1 " in out
    assert "status=ok" in out
    csv = (tmp_path / "assort.csv").read_text().splitlines()
    assert csv[1].split(",")[1] == "1"


def test_assort_oracle_agreement(tmp_path, capsys):
    micro, cfg = synth_files(tmp_path, capsys, n_persons=4000, n_occupations=6)
    code, out, _ = run(["assort", "--input", str(micro), "--config", str(cfg),
                        "--min-cell", "10", "--oracle",
                        "--out-dir", str(tmp_path / "o")], capsys)
    assert code == 0
    diff = float(out.split("oracle_abs_diff=")[1].split()[0])
    assert diff <= 1e-9


def test_assort_constant_attributes_degenerate_exit_0(tmp_path, capsys):
    (tmp_path / "edges.csv").write_text(DYAD_EDGES)
    (tmp_path / "attrs.csv").write_text(CONST_ATTRS)
    code, out, _ = run(["assort", "--edges", str(tmp_path / "edges.csv"),
                        "--attributes", str(tmp_path / "attrs.csv"),
                        "--out-dir", str(tmp_path)], capsys)
    assert code == 0
    assert "status=degenerate_attribute" in out
    assert "vector_r=NA" in out


def test_assort_requires_exactly_one_input_mode(tmp_path, capsys):
    code, _, err = run(["assort", "--out-dir", str(tmp_path)], capsys)
    assert code == 2
    (tmp_path / "edges.csv").write_text(DYAD_EDGES)
    code, _, err = run(["assort", "--edges", str(tmp_path / "edges.csv"),
                        "--out-dir", str(tmp_path)], capsys)
    assert code == 2


def test_assort_fresh_build_matches_prebuilt_bits(tmp_path, capsys):
    micro, cfg = synth_files(tmp_path, capsys, n_persons=4000, n_occupations=6, seed=3)
    net = tmp_path / "net"
    code, _, _ = run(["build-graph", "--input", str(micro), "--config", str(cfg),
                      "--out-dir", str(net), "--min-cell", "10"], capsys)
    assert code == 0
    code, out_fresh, _ = run(["assort", "--input", str(micro), "--config", str(cfg),
                              "--min-cell", "10", "--out-dir", str(tmp_path / "f")], capsys)
    assert code == 0
    code, out_pre, _ = run(["assort", "--edges", str(net / "edges.csv"),
                            "--attributes", str(net / "attributes.csv"),
                            "--out-dir", str(tmp_path / "p")], capsys)
    assert code == 0
    fresh = out_fresh.split("avg_scalar_r=")[0]
    pre = out_pre.split("avg_scalar_r=")[0]
    assert fresh == pre  # full-precision round trip through the CSVs


# ----------------------------------------------------------------- series


def test_series_default_windows(tmp_path, capsys):
    micro, cfg = synth_files(tmp_path, capsys, n_persons=20000,
                             extra="sector=rural,urban")
    out_dir = tmp_path / "series"
    code, out, _ = run(["series", "--input", str(micro), "--config", str(cfg),
                        "--out-dir", str(out_dir), "--min-cell", "5"], capsys)
    assert code == 0
    lines = (out_dir / "series.csv").read_text().splitlines()
    assert len(lines) == 1 + 41 * 2
    assert (out_dir / "group.dat").exists()
    assert (out_dir / "sector.dat").exists()


def test_series_custom_windows(tmp_path, capsys):
    micro, cfg = synth_files(tmp_path, capsys, n_persons=6000)
    out_dir = tmp_path / "series"
    code, _, _ = run(["series", "--input", str(micro), "--config", str(cfg),
                      "--out-dir", str(out_dir), "--windows", "1950:1960:5:5",
                      "--min-cell", "5"], capsys)
    assert code == 0
    lines = (out_dir / "series.csv").read_text().splitlines()
    assert len(lines) == 1 + 3


def test_series_unknown_category(tmp_path, capsys):
    micro, cfg = synth_files(tmp_path, capsys, n_persons=3000)
    code, _, err = run(["series", "--input", str(micro), "--config", str(cfg),
                        "--out-dir", str(tmp_path / "s"), "--category", "caste"], capsys)
    assert code == 2
    assert "group" in err  # lists the configured categories


def test_series_bad_windows_spec(tmp_path, capsys):
    micro, cfg = synth_files(tmp_path, capsys, n_persons=3000)
    code, _, err = run(["series", "--input", str(micro), "--config", str(cfg),
                        "--out-dir", str(tmp_path / "s"), "--windows", "1950:1960:5"], capsys)
    assert code == 2


def test_series_dump_edges(tmp_path, capsys):
    micro, cfg = synth_files(tmp_path, capsys, n_persons=6000)
    out_dir = tmp_path / "series"
    code, _, _ = run(["series", "--input", str(micro), "--config", str(cfg),
                      "--out-dir", str(out_dir), "--windows", "1950:1950:10:1",
                      "--min-cell", "5", "--dump-edges"], capsys)
    assert code == 0
    dumps = list((out_dir / "edges").glob("group_*.csv"))
    assert len(dumps) == 1


def test_end_to_end_determinism(tmp_path, capsys):
    outputs = []
    for attempt in ("one", "two"):
        root = tmp_path / attempt
        root.mkdir()
        micro, cfg = synth_files(root, capsys, n_persons=8000, seed=21)
        out_dir = root / "series"
        code, _, _ = run(["series", "--input", str(micro), "--config", str(cfg),
                          "--out-dir", str(out_dir), "--min-cell", "5"], capsys)
        assert code == 0
        outputs.append((micro.read_bytes(), (out_dir / "series.csv").read_bytes()))
    assert outputs[0] == outputs[1]


def test_console_script_entry_point(tmp_path):
    # exercised once through a real process to cover packaging
    out = tmp_path / "micro.csv"
    proc = subprocess.run(
        [sys.executable, "-m", "assortnet.cli", "synth", "--out", str(out),
         "--n-persons", "100"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert out.exists()


def test_missing_input_file_is_exit_2(tmp_path, capsys):
    cfg = tmp_path / "c.ini"
    cfg.write_text("[education]\n1 = 1\n[category:g]\ngroups = x, y\n")
    code, _, err = run(["build-graph", "--input", str(tmp_path / "nope.csv"),
                        "--config", str(cfg), "--out-dir", str(tmp_path / "x")], capsys)
    assert code == 2
