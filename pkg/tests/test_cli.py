import json
import subprocess
import sys

import pytest

from tcnscs import (InstanceFile, hybridization_number, networks_isomorphic,
                    one_component_network, parse_extended_newick, parse_newick)
from tcnscs.cli import run

EDABC_NEWICK = "((e,(d,(a,(b,(c,l))))));"
TRIO = ["((e,(a,(d,(b,(c,l))))));", "((c,(a,(e,(b,(d,l))))));",
            "((c,(a,(b,(e,(d,l))))));"]


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def call_json(capsys, *argv):
    code, out, _ = call(capsys, *argv, "--json")
    return code, json.loads(out)


def test_p2t_and_t2p(capsys):
    code, out, _ = call(capsys, "p2t", "edabc", "--ell", "l")
    assert code == 0
    assert parse_newick(out.strip()) is not None
    assert out.strip() == "((((a,(b,(c,l))),d),e));"
    code, out, _ = call(capsys, "t2p", EDABC_NEWICK, "--ell", "l")
    assert (code, out.strip()) == (0, "edabc")


def test_t2p_not_in_image(capsys):
    code, _, err = call(capsys, "t2p", "((l,(a,(b,c))));", "--ell", "l")
    assert code == 1 and "lowest cherry" in err


def test_parse_error_is_usage(capsys):
    code, _, err = call(capsys, "t2p", "((a,b)", "--ell", "l")
    assert code == 2 and "unbalanced" in err


def test_usage_errors(capsys):
    assert call(capsys, "nosuch")[0] == 2
    assert call(capsys)[0] == 2
    assert call(capsys, "lts", EDABC_NEWICK)[0] == 2


def test_scs(capsys):
    code, out, _ = call(capsys, "scs", "dc", "el", "l")
    assert code == 0 and out.splitlines() == ["dcel", "length: 4"]
    code, data = call_json(capsys, "scs", "dc", "el", "l", "--heuristic")
    assert data["mode"] == "heuristic" and data["length"] >= 4


def test_scs_capacity(capsys):
    code, _, err = call(capsys, "scs", "abcdefgh", "hgfedcba", "--scs-states", "10")
    assert code == 3 and "heuristic" in err


def test_scs_from_stdin(capsys, monkeypatch):
    import io
    inst = InstanceFile(alphabet=list("ab"), strings=["ab", "ba"])
    monkeypatch.setattr(sys, "stdin", io.StringIO(inst.to_json()))
    code, out, _ = call(capsys, "scs", "--instance", "-")
    assert code == 0 and out.splitlines()[0] == "aba"


def test_nq_json_round_trips(capsys):
    code, data = call_json(capsys, "nq", "ecadebced", "--ell", "l")
    assert code == 0 and data["hn"] == 4 and data["tree_child"]
    net = parse_extended_newick(data["network"])
    assert networks_isomorphic(net, one_component_network("ecadebced", "abcde", "l"))


def test_lts(capsys):
    code, data = call_json(capsys, "lts", EDABC_NEWICK, "--order", "abcdel")
    assert data["lts"] == {"a": "edb", "b": "c", "c": "l", "d": "", "e": "", "l": ""}


def test_construct(capsys):
    code, data = call_json(capsys, "construct", "--order", "abclde", "--beta", "a=ecb",
                           "--beta", "b=dcel", "--beta", "c=l", "--beta", "l=ed")
    assert code == 0 and data["hn"] == 5
    assert hybridization_number(parse_extended_newick(data["network"])) == 5
    code, _, err = call(capsys, "construct", "--order", "abl", "--beta", "a=a")
    assert code == 2


def test_check_display(capsys):
    net = call_json(capsys, "nq", "ecadebced", "--ell", "l")[1]["network"]
    code, out, _ = call(capsys, "check-display", TRIO[0], net)
    assert (code, out.strip()) == (0, "displayed")
    net = call_json(capsys, "nq", "ba", "--ell", "l")[1]["network"]
    code, out, _ = call(capsys, "check-display", "((a,(b,l)));", net)
    assert (code, out.strip()) == (1, "not displayed")
    code, _, _ = call(capsys, "check-display", TRIO[0], net)
    assert code == 2


def test_solve_and_solve_fast(capsys):
    code, data = call_json(capsys, "solve", *TRIO)
    assert code == 0 and data["hn"] == 4
    assert set(data) == {"hn", "ordering", "network", "betas", "searched"}
    code, fast = call_json(capsys, "solve-fast", *TRIO, "--ell", "l")
    assert code == 0 and fast["hn"] == 4
    assert hybridization_number(parse_extended_newick(fast["network"])) == 4
    code, _, err = call(capsys, "solve", *TRIO, "--max-taxa", "4")
    assert code == 3


def test_solve_instance_file(capsys, tmp_path):
    path = tmp_path / "inst.json"
    path.write_text(InstanceFile(alphabet=list("abcdel"), reserved="l",
                                 trees=TRIO).to_json())
    code, data = call_json(capsys, "solve-fast", "--instance", str(path))
    assert code == 0 and data["hn"] == 4
    code, _, _ = call(capsys, "solve", "--instance", str(tmp_path / "missing.json"))
    assert code == 2


def test_assemble_q(capsys):
    code, out, _ = call(capsys, "assemble-q", *TRIO, "--ell", "l", "--order", "abclde",
                        "--w", "a=ecb", "--w", "b=delc")
    assert (code, out.strip()) == (0, "ecadebced")


def test_reduce_and_verify(capsys):
    code, out, _ = call(capsys, "reduce", "ab", "bc", "ca", "--budget", "4")
    data = json.loads(out)
    assert code == 0 and data["budget"] == 4 + 8 + 3 and len(data["strings"]) == 3
    assert InstanceFile.from_json(out).parsed_strings()[0][:3] == ("a", "b", "y1")
    code, data = call_json(capsys, "verify-reduction", "ab", "bc", "ca", "--budget", "3")
    assert code == 0 and data["agree"] and not data["source_yes"]
    code, _, err = call(capsys, "verify-reduction", "ab", "ba", "--budget", "3")
    assert code == 2 and "every string" in err
    code, data = call_json(capsys, "verify-reduction", "x1.x2", "x2.x1", "--budget", "2",
                           "--allow-universal")
    assert code == 1 and not data["agree"]


def test_hardness_instance(capsys):
    code, out, _ = call(capsys, "hardness-instance", "ab", "bc", "ca", "--budget", "1",
                        "--ell", "l")
    inst = InstanceFile.from_json(out)
    assert code == 0 and inst.budget == 1 + 7 + 3 - 10 and len(inst.trees) == 3
    code, data = call_json(capsys, "hardness-instance", "ab", "bc", "ca", "--budget", "4",
                           "--check")
    assert code == 0 and data["agree"] and data["source_yes"]


def test_selftest(capsys):
    code, out, _ = call(capsys, "selftest")
    assert code == 0 and "FAIL" not in out
    code, data = call_json(capsys, "selftest")
    assert all(c["ok"] for c in data["checks"])


def test_output_is_deterministic(capsys):
    first = call(capsys, "solve", *TRIO, "--json")[1]
    second = call(capsys, "solve", *reversed(TRIO), "--json")[1]
    assert first == second


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "tcnscs", "p2t", "ab", "--ell", "l"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.strip() == "((a,(b,l)));"


@pytest.mark.parametrize("argv", [["p2t", "aa"], ["nq", "ab", "--alphabet", "abc"]])
def test_domain_input_errors(capsys, argv):
    assert call(capsys, *argv)[0] == 2
