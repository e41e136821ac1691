import json
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from imprimitive.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, RunConfig, main, run

BASE = ["--char", "3", "--e2", "2", "--e3", "1", "--h2", "1", "--h3", "1", "--beta", "zero"]


def invoke(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out), out


def statuses(doc):
    return {c["name"]: c["status"] for c in doc["checks"]}


def test_construct_examples(capsys):
    code, doc, _ = invoke(["construct", *BASE], capsys)
    assert code == EXIT_OK and doc["derived"]["e1"] == 3
    assert doc["derived"]["psi1"]["text"] == "x3*y2"
    code, doc, _ = invoke(["construct", "--char", "3", "--beta", "ncm", "--l2", "0", "--l3", "0",
                           "--m", "0", "--n", "1", "--e3", "1"], capsys)
    assert (doc["derived"]["e2"], doc["derived"]["e1"]) == (4, 5)
    assert doc["derived"]["beta"]["terms"] == [[[2, 3], "2"]]
    code, doc, _ = invoke(["construct", "--char", "2", "--beta", "ncm", "--l2", "0", "--l3", "0",
                           "--m", "0", "--n", "1"], capsys)
    assert code == EXIT_USAGE and doc["error"]["code"] == "BadCharForBeta"


def test_report_schema(capsys):
    _, doc, _ = invoke(["construct", *BASE], capsys)
    for key in ("schema_version", "command", "params", "field", "checks", "elapsed_ms"):
        assert key in doc
    assert doc["field"] == {"p": 3, "k": 1, "modulus": [0, 1]}
    assert doc["elapsed_ms"] is None


def test_verify_examples(capsys):
    code, doc, _ = invoke(["verify", *BASE, "--q", "3"], capsys)
    st_ = statuses(doc)
    assert code == EXIT_OK and st_["q=3/inblock.sharply_2_transitive"] == "pass"
    assert "fail" not in st_.values()
    code, doc, _ = invoke(["verify", "--char", "3", "--beta", "ncm", "--l2", "0", "--l3", "0", "--m", "0",
                           "--n", "1", "--q", "3"], capsys)
    assert code == EXIT_OK


def test_verify_q9_and_cap(capsys):
    code, doc, _ = invoke(["verify", *BASE, "--q", "9,27", "--suite", "inblock,assoc"], capsys)
    st_ = statuses(doc)
    assert code == EXIT_OK
    assert st_["q=9/inblock.sharply_2_transitive"] == "pass"
    assert st_["q=27/inblock"] == "skipped" and st_["q=27/assoc.sampled_triples"] == "pass"


def test_cocycle_solve_examples(capsys):
    ex = ["cocycle-solve", "--l2", "0", "--m", "0", "--n", "1"]
    code, doc, _ = invoke([*ex, "--char", "3", "--l3", "0"], capsys)
    assert code == EXIT_OK and doc["outcome"] == "solved"
    assert statuses(doc)["cocycle.solution_reverified"] == "pass"
    code, doc, _ = invoke([*ex, "--char", "2", "--l3", "0"], capsys)
    assert doc["outcome"] == "inconsistent"
    assert doc["system"]["augmented_rank"] > doc["system"]["rank"]
    code, doc, _ = invoke([*ex, "--char", "3", "--l3", "2"], capsys)
    assert doc["outcome"] == "inadmissible" and doc["admissible"] is False


def test_iso_command(capsys):
    code, doc, _ = invoke(["iso", "--char", "3", "--case", "14.1", "--q", "3", "--all-b", "--negative-control"],
                          capsys)
    assert code == EXIT_OK and doc["summary"] == {"pass": 8, "fail": 0, "skipped": 0}
    code, doc, _ = invoke(["iso", "--search", "--char", "3", "--e2", "1", "--h2", "3", "--beta", "zero",
                           "--q", "9", "--target", "beta=monomial,r=0,s=1"], capsys)
    assert code == EXIT_OK and doc["search"]["found"]
    code, doc, _ = invoke(["iso", "--char", "3", "--case", "14.3", "--q", "9"], capsys)
    assert code == EXIT_USAGE and doc["error"]["code"] == "NotApplicable"


def test_classify_command(capsys):
    code, doc, _ = invoke(["classify", "--char", "2", "--bound", "2", "--q", "4"], capsys)
    assert code == EXIT_OK and doc["command"] == "classify"


def test_reports_are_byte_identical(capsys):
    argv = ["verify", *BASE, "--q", "3", "--suite", "all"]
    _, _, a = invoke(argv, capsys)
    _, _, b = invoke(argv, capsys)
    assert a == b


def test_pretty_only_adds_whitespace(capsys):
    _, doc1, _ = invoke(["construct", *BASE], capsys)
    _, doc2, text = invoke(["construct", *BASE, "--pretty"], capsys)
    assert doc1 == doc2 and "\n  " in text


def test_exit_status_on_failure(monkeypatch):
    from imprimitive import cli
    from imprimitive.report import Report, check

    def failing(cfg):
        r = Report("construct", {})
        r.checks.append(check("x", False))
        return r

    monkeypatch.setitem(cli.HANDLERS, "construct", failing)
    _, status = run(RunConfig("construct"))
    assert status == EXIT_FAIL


def test_config_file_and_override(tmp_path, capsys):
    cfgfile = tmp_path / "run.cfg"
    saved = tmp_path / "saved.cfg"
    cfgfile.write_text("char = 3\ne2 = 2\ne3 = 1\nh2 = 1\nh3 = 1\nbeta = zero\n")
    code, doc, _ = invoke(["construct", "--config", str(cfgfile), "--e2", "5", "--save-config", str(saved)], capsys)
    assert doc["derived"]["e1"] == 6
    back = RunConfig.from_text(saved.read_text())
    assert back.params["e2"] == 5 and back.params["char"] == 3


def test_out_file(tmp_path):
    out = tmp_path / "r.json"
    assert main(["construct", *BASE, "--out", str(out)]) == EXIT_OK
    assert json.loads(out.read_text())["command"] == "construct"


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "imprimitive", "construct", *BASE], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["derived"]["e1"] == 3


small = st.integers(0, 30)
configs = st.builds(
    RunConfig,
    command=st.sampled_from(["construct", "verify", "cocycle-solve", "iso", "classify"]),
    params=st.fixed_dictionaries({}, optional={
        "char": st.sampled_from([0, 2, 3, 5]), "ext": st.integers(1, 3), "e2": st.integers(-3, 30),
        "e3": small, "h2": small, "h3": small, "r": small, "s": small, "l2": small, "l3": small,
        "m": small, "n": small, "beta": st.sampled_from(["zero", "witt", "monomial", "ncm", "ncn"]),
        "allow_equal_exponents": st.booleans()}),
    q=st.lists(st.sampled_from([2, 3, 4, 5, 8, 9, 27]), max_size=3),
    suite=st.lists(st.sampled_from(["assoc", "action", "blocks", "inblock", "lambda", "structure", "all"]),
                   max_size=3),
    extra=st.fixed_dictionaries({}, optional={
        "bound": small, "case": st.sampled_from(["14.1", "14.2", "14.3"]), "b2": small, "b3": small,
        "d1": small, "target": st.sampled_from(["beta=monomial,r=0,s=1", "h2=3"]),
        "search": st.booleans(), "all_b": st.booleans(), "negative_control": st.booleans()}),
    out=st.one_of(st.none(), st.sampled_from(["r.json", "out/report.json"])),
    pretty=st.booleans(),
    timing=st.booleans(),
)


@settings(max_examples=200, deadline=None)
@given(configs)
def test_config_round_trip(cfg):
    assert RunConfig.from_text(cfg.to_text()) == cfg
