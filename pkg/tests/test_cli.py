import json
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubic_torsion import cli
from cubic_torsion.dataset import (
    ENV_VAR,
    DatasetError,
    CurveRecord,
    bundled_path,
    conductor_of,
    default_dataset_path,
    emit_csv,
    filter_conductor,
    ingest,
    label_key,
    parse_lines,
)


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out) if out.strip() else None, err


# --- ingestion -------------------------------------------------------------


def test_parse_good_line():
    records, errors = parse_lines(["# comment", "label,a1,a2,a3,a4,a6", "11a1,0,-1,1,-10,-20"])
    assert errors == []
    assert records == [CurveRecord("11a1", (0, -1, 1, -10, -20))]


def test_parse_errors_are_aggregated_with_line_numbers():
    lines = ["11a1,0,-1,1,-10,-20", "bad,1,2", "sing,0,0,0,0,0", "11a1,0,-1,1,-10,-20", "x,1,2,3,4,z"]
    records, errors = parse_lines(lines)
    assert [r.label for r in records] == ["11a1"]
    assert [e.line for e in errors] == [2, 3, 4, 5]
    assert "expected 6 fields" in errors[0].message
    assert "singular" in errors[1].message
    assert "duplicate" in errors[2].message
    assert "non-integer" in errors[3].message


def test_ingest_raises_with_all_errors(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("bad,1,2\nsing,0,0,0,0,0\n")
    with pytest.raises(DatasetError) as exc:
        ingest(p)
    assert len(exc.value.errors) == 2


def test_bundled_datasets():
    table1 = ingest(bundled_path("table1_curves.csv"))
    assert len(table1) == 26
    bulk = ingest(bundled_path("cremona_le1000.csv"))
    assert len(bulk) > 5000
    assert all(conductor_of(r.label) <= 1000 for r in bulk)
    rec = next(r for r in bulk if r.label == "11a1")
    assert rec.a_invariants == (0, -1, 1, -10, -20)


def test_default_dataset_honours_environment(monkeypatch, tmp_path):
    monkeypatch.setenv(ENV_VAR, str(tmp_path / "x.csv"))
    assert default_dataset_path() == tmp_path / "x.csv"
    monkeypatch.delenv(ENV_VAR)
    assert default_dataset_path().name == "cremona_le1000.csv"


def test_label_helpers():
    assert conductor_of("1922c1") == 1922 and conductor_of("weird") is None
    labels = ["100a1", "11a2", "11a10", "11b1", "11a1", "990ba1", "990z1"]
    assert sorted(labels, key=label_key) == ["11a1", "11a2", "11a10", "11b1", "100a1", "990z1", "990ba1"]
    recs = [CurveRecord("11a1", (0, -1, 1, -10, -20)), CurveRecord("1922c1", (1, 0, 1, 0, 0))]
    assert [r.label for r in filter_conductor(recs, 400)] == ["11a1"]


labels = st.from_regex(r"[a-z][a-z0-9]{0,6}", fullmatch=True)
ainvs = st.tuples(*[st.integers(-1000, 1000)] * 5)


@settings(max_examples=50, deadline=None)
@given(st.dictionaries(labels, ainvs, max_size=8))
def test_ingest_round_trip(data):
    from cubic_torsion.elliptic import Curve

    good = {}
    for k, a in data.items():
        try:
            Curve(a)
        except ValueError:
            continue
        good[k] = a
    recs = [CurveRecord(k, a) for k, a in good.items()]
    text = emit_csv(recs)
    again, errors = parse_lines(text.splitlines())
    assert errors == [] and again == recs
    assert emit_csv(again) == text


# --- commands --------------------------------------------------------------


def test_torsion_command(capsys):
    code, data, _ = run_json(capsys, "torsion", "11a1")
    assert code == 0 and data["base"] == [1, 5] and data["base_name"] == "C5"


def test_torsion_over_cubic(capsys):
    code, data, _ = run_json(capsys, "torsion", "11a1", "--cubic", "1,1,-1")
    assert code == 0
    assert data["torsion"] == [1, 10] and data["field"]["field_disc"] == -44


def test_torsion_isomorphic_fields_agree(capsys):
    _, a, _ = run_json(capsys, "torsion", "11a1", "--cubic", "-2,0,0")
    _, b, _ = run_json(capsys, "torsion", "11a1", "--cubic", "-16,0,0")
    assert a["torsion"] == b["torsion"]
    assert a["field"]["field_disc"] == b["field"]["field_disc"] == -108


def test_torsion_from_coefficients_and_table_format(capsys):
    code, out, _ = run(capsys, "torsion", "0,-1,1,-10,-20", "--format", "table")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].split() == ["curve", "G"] and lines[1].split()[-1] == "C5"


def test_torsion_rejects_reducible_cubic(capsys):
    code, out, err = run(capsys, "torsion", "11a1", "--cubic", "-1,0,0")
    assert code == 2 and "reducible" in err and out == ""


@pytest.mark.parametrize(
    "argv",
    [
        ["torsion", "nosuchlabel"],
        ["torsion", "11a1", "--cubic", "1,2"],
        ["torsion", "1,2,3"],
        ["torsion", "0,0,0,0,0"],
        ["isogeny", "11a1", "4"],
        ["verify", "everything"],
        ["verify", "aux", "--height-bound", "0"],
        ["growth", "11a1", "--jobs", "0"],
        [],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_growth_command(capsys):
    code, data, _ = run_json(capsys, "growth", "26b1")
    assert code == 0
    assert data["label"] == "26b1" and data["base"] == [1, 7]
    assert [(g["field_disc"], g["torsion"]) for g in data["growth"]] == [(-104, [1, 14])]
    code, data, _ = run_json(capsys, "growth", "162b2")
    assert [g["torsion"] for g in data["growth"]] == [[1, 7], [1, 3], [1, 2]]
    assert [g["field_disc"] for g in data["growth"]] == [81, -108, -648]
    code, data, _ = run_json(capsys, "growth", "90c3")
    assert data["base"] == [1, 12] and data["growth"] == []


def test_growth_output_is_deterministic(capsys):
    first = run(capsys, "growth", "162b2")[1]
    second = run(capsys, "growth", "162b2")[1]
    assert first == second


def test_isogeny_command(capsys):
    code, data, _ = run_json(capsys, "isogeny", "162b1", "7")
    assert code == 0 and data["status"] == "present" and len(data["kernel_poly"]) == 4
    code, data, _ = run_json(capsys, "isogeny", "11a1", "7")
    assert code == 0 and data["status"] == "absent" and data["kernel_poly"] is None


def test_ingest_command(capsys, tmp_path):
    src = bundled_path("table1_curves.csv")
    code, data, _ = run_json(capsys, "ingest", str(src))
    assert code == 0 and data["curves"] == 26
    code, out, _ = run(capsys, "ingest", str(src), "--emit")
    copy = tmp_path / "copy.csv"
    copy.write_text(out)
    assert ingest(copy) == ingest(src)
    bad = tmp_path / "bad.csv"
    bad.write_text("11a1,0,-1,1,-10,-20\nbad,1,2\n")
    code, out, err = run(capsys, "ingest", str(bad))
    assert code == 2 and json.loads(err)["errors"][0]["line"] == 2
    assert run(capsys, "ingest", str(tmp_path / "missing.csv"))[0] == 2


def test_verify_table1_command(capsys):
    code, data, _ = run_json(capsys, "verify", "table1")
    assert code == 0 and data["agree"] and len(data["rows"]) == 26


def test_verify_table1_reports_a_diff(capsys, tmp_path):
    # 11a2's coefficients under the label 11a1: trivial base torsion instead of C5
    p = tmp_path / "swapped.csv"
    lines = bundled_path("table1_curves.csv").read_text().splitlines()
    lines = [("11a1,0,-1,1,-7820,-263580" if l.startswith("11a1,") else l) for l in lines]
    p.write_text("\n".join(lines) + "\n")
    code, data, _ = run_json(capsys, "verify", "table1", "--dataset", str(p))
    assert code == 1 and not data["agree"]
    bad = [r for r in data["rows"] if not r["ok"]]
    assert [r["label"] for r in bad] == ["11a1"] and bad[0]["problems"]


def test_verify_hq3_small_dataset(capsys):
    code, data, _ = run_json(capsys, "verify", "hq3", "--max-conductor", "60", "--jobs", "2")
    assert code == 0 and data["three_field_curves"] == [] and data["max_fields"] <= 2


def test_verify_phi_small_dataset(capsys):
    a = run(capsys, "verify", "phi", "--max-conductor", "50")
    b = run(capsys, "verify", "phi", "--max-conductor", "50", "--jobs", "2")
    assert a[0] == 0 and json.loads(a[1])["violations"] == []
    assert a[1] == b[1]


def test_verify_aux_reports_counterexample(capsys):
    code, data, _ = run_json(capsys, "verify", "aux", "--height-bound", "100")
    ok = {r["curve"]: r["ok"] for r in data["curves"]}
    assert code == 1
    assert ok == {k: k != "-6x(1-6x2-12x3)" for k in ok}
    bad = next(r for r in data["curves"] if not r["ok"])
    assert ["-3/14", "51/49"] in bad["unexpected"]


def test_dataset_flag_and_missing_file(capsys, tmp_path):
    assert run(capsys, "verify", "phi", "--dataset", str(tmp_path / "none.csv"))[0] == 2
    empty = tmp_path / "empty.csv"
    empty.write_text("label,a1,a2,a3,a4,a6\n")
    assert run(capsys, "verify", "phi", "--dataset", str(empty))[0] == 2


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "cubic_torsion.cli", "torsion", "11a1", "--format", "table"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0 and "C5" in proc.stdout
