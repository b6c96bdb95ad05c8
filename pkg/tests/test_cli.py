import subprocess
import sys

import pytest

from phantomcover.cli import main

DEMO = """\
[manifest] version=1
[ring] n=4
[module two] factors=2
[module four] factors=4
[module ext] factors=2,4
[morphism ident2] from=two to=two rows=1
[morphism covermap] from=four to=two rows=1
[morphism puremono] from=two to=ext rows=1;0
[morphism triple] from=big to=big rows=2,0,0;0,2,0;0,0,2
[module big] factors=4,4,4
[rep bigrep] f=triple
"""


@pytest.fixture
def demo(tmp_path):
    # modules must be declared before use; reorder the big module up front
    lines = DEMO.splitlines()
    lines.insert(5, lines.pop(9))
    path = tmp_path / "demo.txt"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return str(path)


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def test_check_phantom_false(demo, capsys):
    code, out = run(["check-phantom", "--input", demo, "--morphism", "ident2"], capsys)
    assert code == 0
    assert "phantom=false" in out
    assert "certificate=no-lift-through-free-cover" in out


def test_check_phantom_true_writes_factorization(demo, capsys, tmp_path):
    outfile = tmp_path / "fact.txt"
    code, out = run(["check-phantom", "--input", demo, "--morphism", "covermap",
                     "--output", str(outfile)], capsys)
    assert code == 0 and "phantom=true" in out
    text = outfile.read_text(encoding="utf-8")
    assert "[morphism into]" in text and "[morphism through]" in text


def test_precover_and_cover(demo, capsys):
    code, out = run(["precover", "--input", demo, "--morphism", "covermap",
                     "--size-bound", "16"], capsys)
    assert code == 0 and "precover=true" in out
    code, out = run(["cover", "--input", demo, "--morphism", "covermap",
                     "--size-bound", "16"], capsys)
    assert code == 0 and "cover=true" in out


def test_precover_rejects_nonmember(demo, capsys):
    code = main(["precover", "--input", demo, "--morphism", "ident2"])
    assert code == 2


def test_phantom_cover_command(demo, capsys, tmp_path):
    outfile = tmp_path / "cover.txt"
    code, out = run(["phantom-cover", "--input", demo, "--module", "two",
                     "--output", str(outfile)], capsys)
    assert code == 0
    assert "cover_source=4" in out and "surjective=true" in out
    assert "[morphism phantom_cover]" in outfile.read_text(encoding="utf-8")


def test_pushout_transport_and_retract(demo, capsys):
    code, out = run(["pushout-transport", "--input", demo,
                     "--phi", "covermap", "--mono", "puremono"], capsys)
    assert code == 0 and "phantom=true" in out
    code, out = run(["retract", "--input", demo,
                     "--phi", "covermap", "--mono", "puremono"], capsys)
    assert code == 0 and "retraction_check=ok" in out


def test_filtrate_and_verify_filtration(demo, capsys, tmp_path):
    outfile = tmp_path / "filt.txt"
    code, out = run(["filtrate", "--input", demo, "--rep", "bigrep",
                     "--kappa", "4", "--output", str(outfile)], capsys)
    assert code == 0
    length = int(next(l for l in out.splitlines() if l.startswith("length=")).split("=")[1])
    assert length >= 3
    code, out = run(["verify-filtration", "--input", str(outfile)], capsys)
    assert code == 0
    assert out.count("ok ") == 6


def test_verify_filtration_catches_corruption(demo, capsys, tmp_path):
    outfile = tmp_path / "filt.txt"
    main(["filtrate", "--input", demo, "--rep", "bigrep", "--kappa", "4",
          "--output", str(outfile)])
    capsys.readouterr()
    # corrupt: replace the first proper step with an impure subrepresentation
    text = outfile.read_text(encoding="utf-8")
    lines = [("[step 1] s1=2,0,0 s2=2,0,0" if l.startswith("[step 1]") else l)
             for l in text.splitlines()]
    outfile.write_text("\n".join(lines) + "\n", encoding="utf-8")
    code, out = run(["verify-filtration", "--input", str(outfile)], capsys)
    assert code == 1
    assert "FAIL purity" in out


def test_counterexample_ext_command(demo, capsys):
    code, out = run(["counterexample-ext", "--input", demo,
                     "--morphism", "ident2"], capsys)
    assert code == 0
    assert "middle_in_class=false" in out
    assert "sub_in_class=true" in out and "quotient_in_class=true" in out


def test_counterexample_ext_refuses_member(demo, capsys):
    assert main(["counterexample-ext", "--input", demo,
                 "--morphism", "covermap"]) == 2


def test_colimit_command(tmp_path, capsys):
    path = tmp_path / "chain.txt"
    path.write_text(
        "[ring] n=4\n"
        "[module two] factors=2\n"
        "[module four] factors=4\n"
        "[morphism emb] from=two to=four rows=2\n"
        "[morphism ident4] from=four to=four rows=1\n"
        "[morphism twomap] from=two to=four rows=2\n"
        "[rep small] f=twomap\n"
        "[rep big] f=ident4\n"
        "[repmap inc] from=small to=big d=emb s=ident4\n",
        encoding="utf-8")
    code, out = run(["colimit", "--input", str(path),
                     "--chain", "small,big", "--maps", "inc"], capsys)
    assert code == 0
    assert "m1_factors=4" in out and "m2_factors=4" in out


def test_random_rep_command(capsys, tmp_path):
    outfile = tmp_path / "rnd.txt"
    code, out = run(["random-rep", "--ring", "4", "--seed", "42",
                     "--size-bound", "64", "--output", str(outfile)], capsys)
    assert code == 0
    code2, out2 = run(["random-rep", "--ring", "4", "--seed", "42",
                       "--size-bound", "64"], capsys)
    assert out2.splitlines()[1] == out.splitlines()[1]  # same cardinality line


def test_verify_suite_command(capsys):
    code, out = run(["verify-suite", "--seed", "3", "--samples", "3",
                     "--ring", "4", "--property", "snf_minor_gcd",
                     "--property", "manifest_roundtrip"], capsys)
    assert code == 0
    assert "suite=ok" in out
    assert sum(1 for l in out.splitlines() if l.startswith("ok ")) == 2


def test_verify_suite_unknown_property(capsys):
    assert main(["verify-suite", "--samples", "1", "--property", "nope"]) == 2


def test_verify_suite_failure_output_names_everything(capsys, monkeypatch):
    import phantomcover.verify as verify

    def broken(chk, rng, ring):
        from phantomcover.finmod import FiniteModule, ModuleMorphism
        two = FiniteModule(ring, (2,))
        chk.fail("synthetic defect", witness=ModuleMorphism.identity(two))

    monkeypatch.setitem(verify.PROPERTIES, "synthetic", ("finmod", broken))
    code, out = run(["verify-suite", "--seed", "9", "--samples", "1",
                     "--ring", "4", "--property", "synthetic"], capsys)
    assert code == 1
    assert "failure module=finmod property=synthetic ring=4 seed=9 sample=0" in out
    assert "message: synthetic defect" in out
    assert "| [morphism witness]" in out  # serialized counterexample manifest
    assert "suite=FAIL" in out


def test_input_error_exit_code(capsys):
    assert main(["check-phantom", "--input", "/nonexistent", "--morphism", "x"]) == 2


def test_internal_consistency_exit_code(tmp_path, capsys):
    # retract against a morphism that is only a precover: the violated cover
    # property is an internal consistency event, exit code 3
    path = tmp_path / "noncover.txt"
    path.write_text(
        "[ring] n=4\n"
        "[module two] factors=2\n"
        "[module big] factors=4,4\n"
        "[module k] factors=2,4\n"
        "[morphism phi] from=big to=two rows=1,0\n"
        "[morphism vk] from=k to=k rows=1,0;0,1\n",
        encoding="utf-8")
    assert main(["retract", "--input", str(path),
                 "--phi", "phi", "--mono", "vk"]) == 3


def test_console_script_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "phantomcover.cli", "verify-suite", "--seed", "1",
         "--samples", "1", "--ring", "4", "--property", "sampler_determinism"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert "suite=ok" in proc.stdout
