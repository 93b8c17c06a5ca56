import io
import json
from importlib import resources

import jsonschema
import pytest

from permlab.cli import run

SCHEMA = json.loads(resources.files("permlab.data").joinpath("output.schema.json").read_text())


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    status = run(list(argv), stdout=out, stderr=err)
    return status, out.getvalue(), err.getvalue()


def test_factor():
    assert call("factor", "--perm", "wordperm:tm", "--start", "0", "--len", "4") == (0, "2431\n", "")


def test_gamma():
    assert call("gamma", "--perm", "wordperm:tm", "--i", "0", "--j", "3")[:2] == (0, ">\n")


def test_makarov_table():
    status, out, _ = call("makarov", "table", "--max-n", "4")
    assert status == 0
    assert out.splitlines()[-1].endswith("p(5)=48")
    status, out, _ = call("makarov", "table", "--max-n", "4", "--format", "csv")
    assert out.splitlines() == ["t,psi,oracle,p", "1,2,2,2", "2,2,2,6", "3,6,6,18", "4,12,12,48"]


def test_finewilf_perms():
    status, out, _ = call("finewilf", "perms", "--p", "2", "--q", "3")
    assert status == 0
    assert out.startswith("monotone-only at length 5; witness at 4: ")
    status, out, _ = call("finewilf", "perms", "--p", "4", "--q", "6", "--n", "12")
    assert status == 0 and "2-periodic" in out


def test_finewilf_words_and_witness():
    status, out, _ = call("finewilf", "words", "--p", "4", "--q", "6")
    assert status == 0 and "residues mod 2" in out and "tight" in out
    status, out, _ = call("finewilf", "witness", "--p", "4", "--q", "6", "--n", "12", "--format", "json")
    assert status == 0 and len(json.loads(out)["witness"]) == 12


def test_complexity_rows():
    status, out, _ = call("complexity", "--word", "fib", "--kind", "factor", "--n", "1-3",
                          "--M", "1000", "--format", "csv")
    assert status == 0
    assert out.splitlines() == ["n,value,bound,M,T", "1,2,=,1000,", "2,3,=,1000,", "3,4,=,1000,"]
    status, out, _ = call("complexity", "--perm", "sturmian", "--kind", "maxpattern", "--n", "3",
                          "--T", "10", "--M", "300")
    assert out == "p*(3) = 3  [M=300, T=10, windows=45]\n"


def test_usage_errors():
    assert call("factor", "--perm", "nonsense", "--len", "4")[0] == 2
    status, _, err = call("factor", "--perm", "wordperm:zzz", "--len", "4")
    assert status == 2 and "word specs" in err
    assert call("bogus")[0] == 2
    assert call("complexity", "--n", "3")[0] == 2
    assert call("gamma", "--perm", "wordperm:ultper:v=01", "--i", "0", "--j", "2")[0] == 2


def test_automaton_check_exit_codes(tmp_path):
    assert call("automaton", "check", "--N", "64")[0] == 0
    bad = tmp_path / "lt.txt"
    bad.write_text("k=2\nstate s out < initial\n" + "".join(
        f"edge s ({a},{b}) s\n" for a in (0, 1) for b in (0, 1)))
    status, out, _ = call("automaton", "check", "--file", str(bad), "--N", "8")
    assert status == 1 and "mismatching" in out
    status, out, _ = call("automaton", "show")
    assert out.startswith("k=2\nstate 0=0 out = initial")


def test_squares():
    assert call("squares", "--pattern", "1324")[1] == "1324: square=yes square-free=no\n"
    assert call("squares", "--n", "3-4", "--format", "csv")[1] == "n,square_free\n3,6\n4,12\n"


def test_plot_examples(tmp_path):
    status, svg, _ = call("plot", "--perm", "periodic:n=2", "--N", "40")
    assert status == 0 and svg.count("<circle") == 40
    status, svg, _ = call("plot", "--perm", "monotone", "--N", "10")
    coords = [(line.split('cx="')[1].split('"')[0], line.split('cy="')[1].split('"')[0])
              for line in svg.splitlines() if line.startswith("<circle")]
    xs = [float(x) for x, _ in coords]
    ys = [float(y) for _, y in coords]
    assert xs == sorted(xs) and ys == sorted(ys, reverse=True)
    out = tmp_path / "fig.svg"
    status, text, _ = call("plot", "--witness", "4,6,20", "--out", str(out))
    assert status == 0 and text == "" and out.read_text().count("<circle") == 20


def test_periodic_family_plot_has_two_strands():
    from permlab.genperm import periodic_family
    from permlab.plot import prefix_ranks
    ranks = prefix_ranks(periodic_family(2), 40)
    assert ranks[0::2] == sorted(ranks[0::2]) and ranks[1::2] == sorted(ranks[1::2])


JSON_COMMANDS = [
    ("factor", "--perm", "wordperm:tm", "--len", "6"),
    ("gamma", "--perm", "sturmian", "--i", "0", "--j", "2"),
    ("complexity", "--perm", "periodic:n=2", "--n", "2-4", "--M", "200"),
    ("complexity", "--word", "tm", "--kind", "maxpattern", "--n", "2", "--T", "8", "--M", "300"),
    ("period", "--perm", "periodic:n=3", "--M", "100", "--t-max", "10"),
    ("finewilf", "words", "--p", "3", "--q", "5"),
    ("finewilf", "perms", "--p", "2", "--q", "5"),
    ("finewilf", "perms", "--p", "4", "--q", "6", "--n", "11"),
    ("finewilf", "witness", "--p", "4", "--q", "6", "--n", "14"),
    ("makarov", "table", "--max-n", "6"),
    ("squares", "--n", "4-5"),
    ("squares", "--pattern", "2413"),
    ("automaton", "check", "--N", "32"),
]


@pytest.mark.parametrize("argv", JSON_COMMANDS, ids=lambda a: "-".join(a[:2]))
def test_json_matches_schema(argv):
    status, out, _ = call(*argv, "--format", "json")
    assert status == 0
    jsonschema.validate(json.loads(out), SCHEMA)


@pytest.mark.parametrize("argv", JSON_COMMANDS, ids=lambda a: "-".join(a[:2]))
def test_byte_identical_reruns(argv):
    for fmt in ("human", "json"):
        assert call(*argv, "--format", fmt) == call(*argv, "--format", fmt)
