import csv
import io
import json
import random
import subprocess
import sys

import pytest

from gendim.budget import Budgets
from gendim.cache import ResultCache, content_hash
from gendim.catalog import builtin_entries, data_records, find
from gendim.cli import main
from gendim.constructions import abelian, cyclic, symmetric
from gendim.records import GroupFileError, GroupRecord, load_group, parse_record, save_group
from gendim.report import CSV_FIELDS, analyze, to_csv, to_json, write_report
from gendim.suites import run_suite


def write(tmp_path, data, name="g.json"):
    p = tmp_path / name
    p.write_text(json.dumps(data) if not isinstance(data, str) else data)
    return p


def test_load_examples(tmp_path):
    rec = load_group(write(tmp_path, {"degree": 3, "generators": [[1, 0, 2], [1, 2, 0]]}, "s3.json"))
    assert rec.group().order == 6 and rec.name == "s3"
    assert load_group(write(tmp_path, {"degree": 1, "generators": []})).group().order == 1
    with pytest.raises(GroupFileError, match="bijection"):
        load_group(write(tmp_path, {"degree": 3, "generators": [[0, 0, 1]]}))


@pytest.mark.parametrize("data", [
    "{not json",
    {"generators": [[0]]},
    {"degree": 2, "generators": [[0, 1, 2]]},
    {"degree": 2, "generators": [[0, 1]], "colour": "red"},
    {"degree": 3, "generators": [[1, 0, 2]], "declared_maximal": [{"generators": [[1, 2, 0]]}]},
    {"degree": 3, "generators": [[1, 0, 2]], "declared_maximal": [{"stabilized_points": [5]}]},
    {"degree": 3, "generators": [[1, 0, 2]], "declared_maximal": [{}]},
])
def test_load_errors(tmp_path, data):
    with pytest.raises(GroupFileError):
        load_group(write(tmp_path, data))


def test_missing_file(tmp_path):
    with pytest.raises(GroupFileError):
        load_group(tmp_path / "nope.json")


def test_round_trip(tmp_path):
    G = symmetric(4)
    save_group(GroupRecord.from_group(G), tmp_path / "s4.json")
    assert load_group(tmp_path / "s4.json").group().same_group(G)


def test_declared_specs():
    rec = parse_record({"degree": 4, "generators": [[1, 0, 2, 3], [1, 2, 3, 0]],
                        "declared_maximal": [{"stabilized_points": [3]}, {"generators": [[1, 0, 2, 3]]}]})
    specs = rec.declared_specs()
    assert specs[0].order == 6
    assert specs[1].contains(rec.group().gens[0])


def test_data_file_provenance():
    (rec,) = data_records()
    assert rec.group().order == 720
    assert "source" in rec.metadata or "provenance" in rec.metadata


def test_report_csv_row():
    text = to_csv([analyze(abelian(2, 2), name="V4")])
    rows = list(csv.DictReader(io.StringIO(text)))
    assert (rows[0]["r"], rows[0]["m"], rows[0]["i"], rows[0]["maxdim"]) == ("2", "2", "2", "2")
    assert text.splitlines()[1].startswith("V4,4,2,2,2,2,")


def test_report_json_has_certificate():
    res = analyze(symmetric(3))
    d = json.loads(to_json([res]))[0]
    assert len(d["witnesses"]["certificate"]) == 2
    assert all(len(g) == 3 for g in d["witnesses"]["certificate"])


def test_empty_report(tmp_path):
    assert write_report([], "csv", tmp_path / "e.csv") == ",".join(CSV_FIELDS) + "\n"
    assert (tmp_path / "e.csv").read_text() == ",".join(CSV_FIELDS) + "\n"
    assert json.loads(write_report([], "json", None)) == []


def test_determinism():
    groups = [cyclic(6), symmetric(4), abelian(2, 4)]
    a = to_json([analyze(G) for G in groups], timings=False)
    b = to_json([analyze(G) for G in reversed(groups)], timings=False)
    assert a == b


def test_cache_soundness(tmp_path):
    rng = random.Random()
    entries = [e for e in builtin_entries() if e.group().order <= 720]
    sample = rng.sample(entries, 10)
    cache = ResultCache(tmp_path)
    for e in sample:
        cache.analyze(e.group(), name=e.name)
    assert cache.misses == 10
    for e in sample:
        fresh = analyze(e.group(), name=e.name)
        cached = cache.analyze(e.group(), name=e.name)
        assert cached.to_json(timings=False) == fresh.to_json(timings=False), e.name
    assert cache.hits == 10


def test_cache_invalidation(tmp_path):
    G = cyclic(6)
    ResultCache(tmp_path).analyze(G)
    assert ResultCache(tmp_path).get(G) is not None
    assert ResultCache(tmp_path, version="other").get(G) is None
    assert ResultCache(tmp_path).get(G, Budgets(search_nodes=10)) is None
    assert content_hash(G) == content_hash(cyclic(6)) != content_hash(cyclic(5))


def test_suite_report_codes():
    rep = run_suite("T1", [find("S3"), find("C6")])
    assert rep.exit_code == 0 and len(rep.checks) == 2
    rep = run_suite("T1", [find("S4")], Budgets(search_nodes=3))
    assert rep.exit_code == 2
    with pytest.raises(ValueError):
        run_suite("T99")


def test_cli_dims(capsys):
    assert main(["dims", "S4", "--format", "json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert (out["r"], out["m"], out["i"], out["maxdim"]) == (2, 3, 3, 3)
    assert main(["dims", "C2*C3", "--format", "csv"]) == 0
    assert "C2 x C3,6,1,2,2,2," in capsys.readouterr().out


def test_cli_exit_codes(tmp_path, capsys):
    bad = write(tmp_path, {"degree": 3, "generators": [[0, 0, 1]]})
    assert main(["dims", str(bad)]) == 3
    assert main(["dims", "nonsense(("]) == 3
    assert main(["dims", "S5", "--search-nodes", "5"]) == 2
    assert main(["dims", "S5", "--max-lattice-nodes", "10"]) == 2
    assert main(["verify", "T3"]) == 0
    assert main(["verify", "T42"]) == 3
    assert main(["report", "S3", "-o", str(tmp_path / "missing" / "x.csv")]) == 3
    capsys.readouterr()


def test_cli_commands(tmp_path, capsys):
    assert main(["classify", "S3", "--format", "json"]) == 0
    c = json.loads(capsys.readouterr().out)
    assert c["supersolvable"] and not c["nilpotent"] and c["abelian_invariants"] == [2]
    assert main(["maximal", "C6"]) == 0
    assert len(capsys.readouterr().out.strip().splitlines()) == 2
    assert main(["frattini", "C4", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["order"] == 2
    assert main(["maxdim", "S4", "--format", "json"]) == 0
    md = json.loads(capsys.readouterr().out)
    assert md["maxdim"] == 3 and len(md["certificate"]) == 3
    out = tmp_path / "w.json"
    assert main(["construct", "wr(C(2), 2)", "-o", str(out)]) == 0
    assert load_group(out).group().order == 8
    assert main(["dims", str(out)]) == 0
    capsys.readouterr()
    assert main(["catalog", "list"]) == 0
    assert "SmallGroup(720,774)" in capsys.readouterr().out
    assert main(["catalog", "run", "--max-order", "8", "-o", str(tmp_path / "c.csv")]) == 0
    lines = (tmp_path / "c.csv").read_text().splitlines()
    assert lines[0] == ",".join(CSV_FIELDS) and len(lines) > 5
    assert main(["catalog", "run", "--max-order", "6", "--cache-dir", str(tmp_path / "cache"), "--format", "json"]) == 0
    json.loads(capsys.readouterr().out)
    assert main(["report", "S3", "C4", "--format", "json"]) == 0
    assert [r["name"] for r in json.loads(capsys.readouterr().out)] == ["C4", "S3"]


def test_cli_maxdim_declared(tmp_path, capsys):
    rec = {"degree": 5, "generators": [[1, 2, 3, 4, 0], [1, 0, 2, 3, 4]],
           "declared_maximal": [{"stabilized_points": [4]}],
           "metadata": {"certificate": [[0, 1, 2, 4, 3]]}}
    p = write(tmp_path, rec)
    # S5 above the enumeration cap: only the declared family is certified
    assert main(["maxdim", str(p), "--max-order-enumerate", "10"]) == 0
    assert "maxdim_lower_bound: 1" in capsys.readouterr().out


def test_console_script():
    r = subprocess.run([sys.executable, "-m", "gendim.cli", "--version"], capture_output=True, text=True)
    assert r.returncode == 0 and "gendim" in r.stdout
