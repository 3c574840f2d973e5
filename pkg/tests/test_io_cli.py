import json
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from loewy import analysis as an
from loewy import cli
from loewy import families as fam
from loewy.core import LIMITS
from loewy.errors import LatticeError
from loewy.io import export_dot, parse_lattice, to_json, write_lattice

EX8_81 = """\
# six intermediate rings
lattice ex8_81
elem R
elem R1
elem R2
elem R1R2
elem R3
elem S
cover R R1
cover R R2
cover R1 R1R2
cover R2 R1R2
cover R2 R3
cover R1R2 S
cover R3 S
end
"""


def parse_code(text):
    with pytest.raises(LatticeError) as info:
        parse_lattice(text)
    return info.value.code


class TestParse:
    def test_example_file(self):
        L = parse_lattice(EX8_81)
        assert L == fam.worked_example("ex8_81")
        assert L.name == "ex8_81"

    @pytest.mark.parametrize("text, code", [
        ("", "E_SYNTAX"),
        ("lattice x\nend\n", "E_SYNTAX"),
        ("lattice x\nelem a\n", "E_SYNTAX"),
        ("elem a\nend\n", "E_SYNTAX"),
        ("lattice x\nelem a\ncover a b\nend\n", "E_SYNTAX"),
        ("lattice x\nelem a b\nend\n", "E_SYNTAX"),
        ("lattice x\nelem a\nfrob a\nend\n", "E_SYNTAX"),
        ("lattice x\nelem a\nend\nelem b\n", "E_SYNTAX"),
        ("lattice x\nelem a\nelem a\nend\n", "E_DUP_ELEM"),
        ("lattice x\nelem a\nelem b\nend\n", "E_NO_BOUND"),
        ("lattice x\nelem a\nelem b\ncover a b\ncover b a\nend\n", "E_CYCLE"),
    ])
    def test_errors(self, text, code):
        assert parse_code(text) == code

    def test_line_number_in_message(self):
        with pytest.raises(LatticeError) as info:
            parse_lattice("lattice x\n\nelem a\nbogus\nend\n")
        assert "line 4" in info.value.message

    def test_comments_and_blanks(self):
        L = parse_lattice("\n# c\nlattice t\n\n  elem a  \n# mid\nend\n# tail\n")
        assert len(L) == 1


def test_round_trip_all_fixtures(corpus):
    for L in corpus:
        text = write_lattice(L)
        again = parse_lattice(text)
        assert again == L and again.name == L.name
        assert write_lattice(again) == text


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(min_value=0, max_value=10**6))
def test_round_trip_random(seed):
    L = fam.random_distributive(seed, 64)
    text = write_lattice(L)
    assert write_lattice(parse_lattice(text)) == text


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(min_value=0, max_value=10**6), data=st.data())
def test_shuffled_input_gives_canonical_output(seed, data):
    L = fam.random_distributive(seed, 32)
    lines = write_lattice(L).splitlines()
    elems = data.draw(st.permutations([x for x in lines if x.startswith("elem ")]))
    covers = data.draw(st.permutations([x for x in lines if x.startswith("cover ")]))
    shuffled = "\n".join([lines[0], *elems, *covers, "end"]) + "\n"
    assert write_lattice(parse_lattice(shuffled)) == write_lattice(L)


class TestDot:
    def test_divisor_series_marked(self, d12):
        dot = export_dot(d12, with_loewy=True)
        marked = {line.split()[0].strip('"') for line in dot.splitlines() if "peripheries=2" in line}
        assert marked == {"1", "6", "12"}
        # 1 -> 6 is not a cover in D12, so it gets a dashed step edge.
        assert '"1" -> "6" [color=red, style=dashed' in dot
        assert '"6" -> "12" [color=red, penwidth=2];' in dot

    def test_chain_edges(self):
        dot = export_dot(fam.chain(2))
        assert sum("->" in line for line in dot.splitlines()) == 2
        assert "peripheries" not in dot

    def test_ranks_by_height(self, d12):
        dot = export_dot(d12)
        assert '{ rank=same; "2" "3" }' in dot
        assert '{ rank=same; "4" "6" }' in dot
        assert 'label="12 (h=3)"' in dot
        assert dot.startswith('digraph "divisor(12)" {')
        assert "rankdir=BT;" in dot


def test_json_is_sorted_and_stable(d12):
    a = to_json(an.analyze(d12).to_dict())
    assert a == to_json(an.analyze(fam.divisor_lattice(12)).to_dict())
    d = json.loads(a)
    assert list(d) == sorted(d)


# -- CLI ----------------------------------------------------------------------------


def run(argv, capsys, stdin=None, monkeypatch=None):
    if stdin is not None:
        import io
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def d12_file(tmp_path, d12):
    p = tmp_path / "d12.lat"
    p.write_text(write_lattice(d12))
    return str(p)


def test_gen_writes_canonical(tmp_path, capsys):
    code, out, _ = run(["gen", "divisor", "12"], capsys)
    assert code == 0 and out == write_lattice(fam.divisor_lattice(12))
    target = tmp_path / "g.lat"
    assert run(["gen", "grid", "1", "2", "-o", str(target)], capsys)[0] == 0
    assert parse_lattice(target.read_text()) == fam.grid([1, 2])
    code, out, _ = run(["gen", "random_distributive", "4", "20"], capsys)
    assert code == 0 and parse_lattice(out) == fam.random_distributive(4, 20)


@pytest.mark.parametrize("argv", [
    [],
    ["frob"],
    ["gen", "nope"],
    ["gen", "divisor", "x"],
    ["gen", "divisor", "0"],
    ["gen", "example", "nope"],
    ["gen", "random_distributive"],
    ["check", "lovely", "x"],
    ["verify", "core", "--count", "3"],
    ["verify", "thm8131", "--n", "1"],
    ["verify", "core", "--n", "2", "--seed", "1"],
    ["analyze", "/nonexistent/file.lat"],
])
def test_usage_errors(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2
    assert err


def test_check_p_extension_on_d12(d12_file, capsys):
    code, out, _ = run(["check", "p-extension", d12_file], capsys)
    assert (code, out) == (1, "false\n")


def test_iso_subgroups(d12_file, tmp_path, capsys):
    other = tmp_path / "sub.lat"
    other.write_text(write_lattice(fam.subgroup_lattice_cyclic(12)))
    code, out, _ = run(["iso", d12_file, str(other)], capsys)
    assert code == 0 and out.startswith("true\n")
    assert len(out.splitlines()) == 7
    five = tmp_path / "n5.lat"
    five.write_text(write_lattice(fam.pentagon()))
    assert run(["iso", d12_file, str(five)], capsys)[:2] == (1, "false\n")


def test_loewy_and_analyze(d12_file, capsys):
    assert run(["loewy", d12_file], capsys)[:2] == (0, "1\n6\n12\n")
    code, out, _ = run(["analyze", d12_file], capsys)
    assert code == 0
    assert "loewy_series: 1 < 6 < 12" in out and "is_p_extension: false" in out
    code, out, _ = run(["analyze", "--json", d12_file], capsys)
    d = json.loads(out)
    assert code == 0 and d["socle"] == "6" and d["radical"] == "2" and d["loewy_length"] == 2


def test_stdin_and_malformed(capsys, monkeypatch):
    code, out, _ = run(["loewy", "-"], capsys, stdin=EX8_81, monkeypatch=monkeypatch)
    assert (code, out) == (0, "R\nR1R2\nS\n")
    code, _, err = run(["analyze", "-"], capsys, stdin="lattice x\nelem a\n", monkeypatch=monkeypatch)
    assert code == 3 and "E_SYNTAX" in err
    bowtie = "lattice b\n" + "".join(f"elem {e}\n" for e in "0abcd1") + "".join(
        f"cover {x} {y}\n" for x, y in ["0a", "0b", "ac", "ad", "bc", "bd", "c1", "d1"]) + "end\n"
    code, _, err = run(["check", "chain", "-"], capsys, stdin=bowtie, monkeypatch=monkeypatch)
    assert code == 3 and "E_NOT_LATTICE" in err


def test_export_dot(d12_file, tmp_path, capsys):
    code, out, _ = run(["export-dot", "--loewy", d12_file], capsys)
    assert code == 0 and out == export_dot(fam.divisor_lattice(12), with_loewy=True)
    target = tmp_path / "d.dot"
    assert run(["export-dot", d12_file, "-o", str(target)], capsys)[0] == 0
    assert target.read_text() == export_dot(fam.divisor_lattice(12))


def test_verify(capsys):
    code, out, _ = run(["verify", "thm8131", "--max-n", "50"], capsys)
    assert code == 0 and out.startswith("thm8131: pass (49 checked")
    code, out, _ = run(["verify", "product", "--seed", "1", "--count", "3", "--json"], capsys)
    d = json.loads(out)
    assert code == 0 and d["verdict"] == "pass" and d["instances_checked"] == 6


def test_verify_failure_exit(capsys, monkeypatch):
    monkeypatch.setattr(an, "is_p_extension", lambda L: True)
    code, out, _ = run(["verify", "thm8131", "--n", "12"], capsys)
    assert code == 1 and "FAIL" in out


def test_size_caps(d12_file, capsys, monkeypatch):
    code, _, err = run(["--max-size", "3", "analyze", d12_file], capsys)
    assert code == 3 and "E_TOO_LARGE" in err
    assert LIMITS.max_size != 3
    code, out, _ = run(["--scan-max", "4", "analyze", "--json", d12_file], capsys)
    assert json.loads(out)["flags"]["is_distributive"] == "skipped"
    code, _, _ = run(["--scan-max", "4", "check", "distributive", d12_file], capsys)
    assert code == 3


def test_env_cap_in_subprocess(d12_file):
    env = {"LATTICE_MAX_N": "4", "PATH": "/usr/bin:/bin"}
    proc = subprocess.run([sys.executable, "-m", "loewy", "loewy", d12_file], capture_output=True, text=True, env=env)
    assert proc.returncode == 3 and "E_TOO_LARGE" in proc.stderr
    env["LATTICE_MAX_N"] = "100"
    proc = subprocess.run([sys.executable, "-m", "loewy", "loewy", d12_file], capture_output=True, text=True, env=env)
    assert proc.returncode == 0 and proc.stdout == "1\n6\n12\n"


def test_exit_contract_on_every_fixture(corpus, tmp_path, capsys):
    for k, L in enumerate(corpus):
        path = tmp_path / f"f{k}.lat"
        path.write_text(write_lattice(L))
        f = str(path)
        assert run(["analyze", f], capsys)[0] == 0
        assert run(["analyze", "--json", f], capsys)[0] == 0
        assert run(["loewy", f], capsys)[1].split() == an.loewy_series(L).labels()
        assert run(["export-dot", "--loewy", f], capsys)[0] == 0
        assert run(["iso", f, f], capsys)[0] == 0
        for prop, fn in cli.CHECKS.items():
            code, out, _ = run(["check", prop, f], capsys)
            want = fn(L)
            assert (code, out) == ((0, "true\n") if want else (1, "false\n")), (L.name, prop)
