"""Command line interface: exit codes, determinism, error reporting."""

import json
import os

import pytest

from diffcech import gallery, serialize
from diffcech.cli import run


def _run(argv):
    lines = []
    code = run(argv, out=lines.append)
    return code, lines


class TestCohomology:
    def test_circle(self):
        code, lines = _run(["cohomology", "--degree", "1", "--coeff", "Z",
                            "gallery:circle3"])
        assert code == 0
        assert lines[0] == "diffcech cohomology"
        assert "H^1(circle3; Z) = Z" in lines

    def test_quotient(self):
        code, lines = _run(["cohomology", "--degree", "1", "--coeff",
                            "R(alpha)", "gallery:irrational-torus"])
        assert code == 0
        assert any("R^1" in ln for ln in lines)

    def test_file_input(self, tmp_path):
        doc = serialize.presentation_to_dict(gallery.get_presentation("rp2"))
        p = tmp_path / "rp2.json"
        p.write_text(serialize.dumps(doc))
        code, lines = _run(["cohomology", "--degree", "2", "--coeff", "Z",
                            str(p)])
        assert code == 0
        assert any("Z/2" in ln for ln in lines)


class TestCheckCocycle:
    def test_yes(self):
        code, lines = _run(["check-cocycle", "gallery:circle3#winding1"])
        assert code == 0
        assert any(ln.startswith("cocycle: yes") for ln in lines)

    def test_no(self, tmp_path):
        pres_doc = serialize.presentation_to_dict(
            gallery.get_presentation("torus9"))
        vals = {f"({i},{j})": "0"
                for (i, j) in gallery.get_presentation("torus9").tuples(1)}
        first = sorted(vals)[0]
        vals[first] = "1"
        doc = {"presentation": pres_doc, "group": "Z",
               "cochain": {"degree": 1, "values": vals}}
        p = tmp_path / "bad.json"
        p.write_text(json.dumps(doc))
        code, lines = _run(["check-cocycle", str(p)])
        assert code == 1
        assert any("counterexample" in ln for ln in lines)


class TestBundles:
    def test_classify_nontrivial(self):
        code, lines = _run(["classify-bundle",
                            "gallery:irrational-torus-bundle"])
        assert code == 0
        assert any("nontrivial in class D=3" in ln for ln in lines)

    def test_isomorphic_self(self):
        code, lines = _run(["isomorphic", "gallery:circle3-winding1-bundle",
                            "gallery:circle3-winding1-bundle"])
        assert code == 0
        assert lines[-2] == "isomorphic"

    def test_distinct_classes(self, tmp_path):
        doc = {"base": "gallery:circle3", "group": "Z",
               "cocycle": {"degree": 1,
                           "values": {"(0,1)": "0", "(0,2)": "0",
                                      "(1,2)": "0"}}}
        p = tmp_path / "trivial.json"
        p.write_text(json.dumps(doc))
        code, lines = _run(["isomorphic", "gallery:circle3-winding1-bundle",
                            str(p)])
        assert code == 1
        assert any(ln.startswith("distinct") for ln in lines)


class TestErrors:
    def test_malformed_presentation(self, tmp_path):
        doc = {"kind": "nerve", "charts": ["U0", "U1", "U2"],
               "alive": [[0], [1], [2], [0, 1], [0, 2], [0, 1, 2]],
               "k_max": 4, "alternating": True}
        p = tmp_path / "bad.json"
        p.write_text(json.dumps(doc))
        code, lines = _run(["cohomology", "--degree", "1", "--coeff", "Z",
                            str(p)])
        assert code == 2
        assert any("not face-closed" in ln for ln in lines)

    def test_bad_json(self, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text("{")
        code, lines = _run(["check-cocycle", str(p)])
        assert code == 2

    def test_unknown_gallery_entry(self):
        code, lines = _run(["gallery", "show", "nonesuch"])
        assert code == 2
        assert any("unknown gallery entry" in ln for ln in lines)

    def test_missing_file(self):
        code, _ = _run(["check-cocycle", "/no/such/file.json"])
        assert code == 2

    def test_usage_error(self):
        assert run(["cohomology"], out=lambda ln: None) == 2


class TestGalleryCommands:
    def test_list(self):
        code, lines = _run(["gallery", "list"])
        assert code == 0
        assert any(ln.startswith("circle3 ") for ln in lines)

    def test_show(self):
        code, lines = _run(["gallery", "show", "irrational-torus"])
        assert code == 0
        assert any("cocycle kappa" in ln for ln in lines)

    def test_verify_single(self):
        code, lines = _run(["gallery", "verify", "circle3"])
        assert code == 0
        assert lines[-1] == "gallery verify: all ok"


class TestDeterminism:
    def test_repeated_runs_are_identical(self):
        for argv in (
            ["cohomology", "--degree", "1", "--coeff", "Z", "gallery:torus9"],
            ["classify-bundle", "gallery:irrational-torus-bundle"],
            ["gallery", "show", "rp2"],
        ):
            assert _run(argv) == _run(argv)

    def test_seed_env_override(self, monkeypatch):
        monkeypatch.setenv("DIFFCECH_SEED", "42")
        _, lines = _run(["gallery", "list"])
        assert lines[1] == "seed: 42"
        monkeypatch.setenv("DIFFCECH_SEED", "not-a-number")
        code, _ = _run(["gallery", "list"])
        assert code == 2
