import io

import pytest

from poset_forge.cli import run
from poset_forge.textio import poset_text
from poset_forge import canonical


def invoke(argv):
    out = io.StringIO()
    code = run(argv, out)
    return code, out.getvalue()


@pytest.fixture
def files(tmp_path):
    paths = {}

    def write(name, text):
        p = tmp_path / name
        p.write_text(text, encoding="utf-8")
        paths[name] = str(p)

    write("n.poset", poset_text("n", canonical("N", 0)))
    write("ch2.poset", poset_text("ch2", canonical("chain", 2)))
    write("ch3.poset", poset_text("ch3", canonical("chain", 3)))
    write("tree.poset", poset_text("t", canonical("binary_tree_prefix", 3)))
    write(
        "col0.poset",
        "poset c0\nelem a colour=0\nend\nquasi q\nelem 0\nelem 1\nle 0 1\nend\n",
    )
    write(
        "col1.poset",
        "poset c1\nelem a colour=1\nend\nquasi q\nelem 0\nelem 1\nle 0 1\nend\n",
    )
    write("bad.poset", "poset b\nelem a\nlt a z\nend\n")
    write("one.poset", poset_text("one", canonical("chain", 1)))
    return paths


class TestExitCodes:
    def test_embed_absent_is_1(self, files):
        code, text = invoke(["embed", files["n.poset"], files["ch3.poset"]])
        assert code == 1 and text == "ABSENT\n"

    def test_embed_present_is_0(self, files):
        code, text = invoke(["embed", files["ch2.poset"], files["ch3.poset"]])
        assert code == 0 and text.startswith("witness ")

    def test_classify_negative(self, files):
        code, text = invoke(
            ["classify", files["n.poset"], "--max-indecomposable", "3"]
        )
        assert code == 1
        assert "violation 0,1,2,3" in text

    def test_classify_positive(self, files):
        code, _ = invoke(
            ["classify", files["n.poset"], "--max-indecomposable", "4"]
        )
        assert code == 0

    def test_parse_error_is_2(self, files):
        code, text = invoke(["validate", files["bad.poset"]])
        assert code == 2 and text.startswith("error:")

    def test_missing_file_is_2(self, files):
        code, _ = invoke(["decompose", files["n.poset"] + ".nope"])
        assert code == 2

    def test_bad_usage_is_2(self, files):
        assert invoke(["frobnicate"])[0] == 2
        assert invoke(["rank", files["ch3.poset"]])[0] == 2  # needs a mode


class TestVerbs:
    def test_validate(self, files):
        code, text = invoke(["validate", files["n.poset"], files["ch2.poset"]])
        assert code == 0
        assert "ok poset n elems=4" in text

    def test_decompose(self, files):
        code, text = invoke(["decompose", files["ch3.poset"]])
        assert code == 0
        assert text.splitlines()[0] == "decompose ch3"
        assert "chain 0 a,b,c" in text
        assert "chain 2 a" in text

    def test_decompose_carries_colours(self, files, tmp_path):
        path = tmp_path / "coloured.poset"
        path.write_text(
            "poset cp\nelem x colour=1\nelem y colour=0\nlt x y\nend\n",
            encoding="utf-8",
        )
        code, text = invoke(["decompose", str(path)])
        assert code == 0
        assert "elems=y:0" in text and "elems=x:1" in text

    def test_tree(self, files):
        code, text = invoke(["tree", files["ch3.poset"]])
        assert code == 0
        assert text.count("node ") == 6

    def test_lift_present(self, files):
        code, text = invoke(["lift", files["ch2.poset"], files["ch3.poset"]])
        assert code == 0
        assert "tree-witness " in text and "\nwitness " in text

    def test_lift_absent(self, files):
        code, text = invoke(["lift", files["n.poset"], files["ch3.poset"]])
        assert code == 1 and text == "ABSENT\n"

    def test_coloured_embed(self, files):
        code, _ = invoke(
            ["embed", files["col0.poset"], files["col1.poset"], "--coloured"]
        )
        assert code == 0
        code, _ = invoke(
            ["embed", files["col1.poset"], files["col0.poset"], "--coloured"]
        )
        assert code == 1

    def test_rank(self, files):
        code, text = invoke(["rank", files["tree.poset"], "--tree"])
        assert code == 0 and text == "rank 2\n"
        code, text = invoke(["rank", files["tree.poset"], "--scattered"])
        assert code == 0 and text == "rank 2\n"
        code, _ = invoke(["rank", files["n.poset"], "--tree"])
        assert code == 2  # not a tree

    def test_quotient(self, files):
        code, text = invoke(
            ["quotient", files["ch3.poset"], "--interval", "a,b"]
        )
        assert code == 0
        assert "poset ch3.q" in text
        assert "rep b a" in text

    def test_quotient_not_interval(self, files):
        code, _ = invoke(["quotient", files["ch3.poset"], "--interval", "a,c"])
        assert code == 2

    def test_antichain(self, files):
        code, text = invoke(["antichain", "--n", "4"])
        assert code == 0
        assert "row Z1 1000" in text
        assert "row Z4 0001" in text
        assert "antichain yes" in text

    def test_matrix(self, files):
        code, text = invoke(
            ["matrix", files["ch3.poset"], files["ch2.poset"], files["one.poset"]]
        )
        assert code == 0
        assert "row ch3 100" in text
        assert "row ch2 110" in text
        assert "bad-pair 0 1" in text

    def test_scattered_rank_bound_flag(self, files):
        code, text = invoke(
            ["rank", files["tree.poset"], "--scattered", "--bound", "3"]
        )
        assert code == 2  # 7 nodes > bound

    def test_matrix_palette_mismatch(self, files):
        code, text = invoke(
            ["matrix", files["col0.poset"], files["ch2.poset"]]
        )
        assert code == 2 and text.startswith("error:")


class TestDeterminism:
    def test_repeated_runs_identical(self, files):
        for verb in ("decompose", "tree"):
            outputs = {invoke([verb, files["n.poset"]])[1] for _ in range(3)}
            assert len(outputs) == 1

    def test_env_bound_override(self, files, monkeypatch):
        monkeypatch.setenv("POSET_FORGE_BOUND", "3")
        code, _ = invoke(["decompose", files["n.poset"]])
        assert code == 2  # four elements exceed the global bound
