import json

import pytest

from convres.cli import main, parse_input
from convres.errors import InputError

KOSZUL_CODE = '{"p": 2, "n": 2, "kind": "code", "matrix": [["D1", "D2"]]}'
KOSZUL_COMPLEX = ('{"p": 2, "n": 2, "kind": "complex", '
                  '"matrices": [[["D1", "D2"]], [["D2"], ["D1"]]]}')
BAD_F2 = ('{"p": 2, "n": 1, "kind": "complex", '
          '"matrices": [[["D1+1", "D1"], ["D1", "D1"]]]}')


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_parse_input_code():
    doc = parse_input(KOSZUL_CODE)
    assert doc.kind == "code" and doc.p == 2 and doc.n == 2
    assert doc.code.q == 1 and doc.code.generators.ncols == 2


def test_parse_input_rejections():
    with pytest.raises(InputError, match="prime"):
        parse_input('{"p": 4, "n": 1, "kind": "code", "matrix": [["D1"]]}')
    with pytest.raises(InputError, match="zero column"):
        parse_input('{"p": 2, "n": 1, "kind": "code", "matrix": [["D1", "0"]]}')
    with pytest.raises(InputError, match="variable"):
        parse_input('{"p": 2, "n": 1, "kind": "code", "matrix": [["D7"]]}')
    with pytest.raises(InputError, match="JSON"):
        parse_input("{nope")
    with pytest.raises(InputError, match="complex"):
        parse_input('{"p": 2, "n": 1, "kind": "complex", '
                    '"matrices": [[["D1"]], [["D1"]]]}')
    with pytest.raises(InputError, match="kind"):
        parse_input('{"p": 2, "n": 1, "kind": "thing", "matrix": [["D1"]]}')
    with pytest.raises(InputError, match="row 1"):
        parse_input('{"p": 2, "n": 2, "kind": "code", '
                    '"matrix": [["D1", "D2"], ["D1"]]}')


def test_resolve_report(tmp_path, capsys):
    path = write(tmp_path, "koszul.json", KOSZUL_CODE)
    assert main(["resolve", path, "--hilbert-max", "4"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["sizes"] == {"q": 1, "p": [2, 1]}
    assert report["forney_table"] == [[1, 1], [2]]
    assert report["memory"] == 1 and report["l"] == 2
    assert report["rate"] == {"tuple": [1, 2], "q": 1}
    assert report["hilbert"] == [0, 2, 5, 9, 14]
    assert all(report["checks"].values())


def test_resolve_round_trips_through_check(tmp_path, capsys):
    path = write(tmp_path, "koszul.json", KOSZUL_CODE)
    main(["resolve", path])
    report = json.loads(capsys.readouterr().out)
    complex_doc = json.dumps(report["complex_document"])
    path2 = write(tmp_path, "resolved.json", complex_doc)
    for prop in ("pd", "reduced", "minimal", "resolution"):
        assert main(["check", prop, path2]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["result"] is True


def test_check_pd_failure_reports_witness(tmp_path, capsys):
    path = write(tmp_path, "bad.json", BAD_F2)
    assert main(["check", "pd", path]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["pd"] is False
    assert out["witness_column"] == ["1", "1"]
    assert main(["check", "pd", path, "--strict"]) == 1
    capsys.readouterr()


def test_hilbert_command(tmp_path, capsys):
    path = write(tmp_path, "koszul.json", KOSZUL_CODE)
    assert main(["hilbert", path, "--max-d", "4"]) == 0
    assert json.loads(capsys.readouterr().out)["values"] == [0, 2, 5, 9, 14]
    assert main(["hilbert", path, "--max-d", "4", "--oracle"]) == 0
    assert json.loads(capsys.readouterr().out)["values"] == [0, 2, 5, 9, 14]


def test_observable_command(tmp_path, capsys):
    path = write(tmp_path, "koszul.json", KOSZUL_CODE)
    assert main(["observable", path]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["observable"] is False and out["witness"]["element"] == ["1"]
    assert main(["observable", path, "--strict"]) == 1
    capsys.readouterr()

    free = write(tmp_path, "free.json",
                 '{"p": 2, "n": 2, "kind": "code", "matrix": [["D1"], ["D2"]]}')
    assert main(["observable", free, "--strict"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["observable"] is True and out["parity_check"]


def test_observable_prop3_bound(tmp_path, capsys):
    uni = write(tmp_path, "uni.json",
                '{"p": 2, "n": 1, "kind": "code", "matrix": [["D1"], ["1"]]}')
    assert main(["observable", uni, "--prop3-bound", "2"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["observable"] is True and out["prop3"] is True
    # unsupported for n >= 2
    path = write(tmp_path, "koszul.json", KOSZUL_CODE)
    assert main(["observable", path, "--prop3-bound", "2"]) == 2
    capsys.readouterr()


def test_oracle_verify_command(tmp_path, capsys):
    code_path = write(tmp_path, "koszul.json", KOSZUL_CODE)
    assert main(["oracle-verify", code_path, "--max-d", "3"]) == 0
    assert json.loads(capsys.readouterr().out)["all"] is True
    cx_path = write(tmp_path, "cx.json", KOSZUL_COMPLEX)
    assert main(["oracle-verify", cx_path, "--max-d", "3"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["truncated_exactness"] == [True] * 4 and out["agreement"] is True


def test_kind_mismatch_is_an_input_error(tmp_path, capsys):
    path = write(tmp_path, "koszul.json", KOSZUL_CODE)
    assert main(["check", "pd", path]) == 2
    capsys.readouterr()
    cx_path = write(tmp_path, "cx.json", KOSZUL_COMPLEX)
    assert main(["resolve", cx_path]) == 2
    capsys.readouterr()


def test_missing_file_is_an_input_error(tmp_path, capsys):
    assert main(["resolve", str(tmp_path / "nope.json")]) == 2
    capsys.readouterr()


def test_reports_are_deterministic(tmp_path, capsys):
    path = write(tmp_path, "koszul.json", KOSZUL_CODE)
    main(["resolve", path, "--hilbert-max", "3"])
    first = capsys.readouterr().out
    main(["resolve", path, "--hilbert-max", "3"])
    second = capsys.readouterr().out
    assert first == second


def test_out_writes_the_report_verbatim(tmp_path, capsys):
    path = write(tmp_path, "koszul.json", KOSZUL_CODE)
    target = tmp_path / "report.json"
    main(["resolve", path, "--out", str(target)])
    printed = capsys.readouterr().out
    assert target.read_text() == printed
