"""Command-line interface: subcommands, JSON round-trips, figures, exit codes."""

import json
import math
import xml.etree.ElementTree as ET

import pytest

from vortexsym import cli, targets
from vortexsym.trigvortex import Configuration


def run_cli(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestGroebnerCommand:
    def test_plane_paraboloid(self, tmp_path, capsys):
        infile = tmp_path / "system.txt"
        infile.write_text("x - y - z + 2\nx^2 + y^2 - z\n")
        code, out, _ = run_cli(
            ["groebner", "--in", str(infile), "--vars", "x,y,z", "--order", "lex"],
            capsys,
        )
        assert code == 0
        assert "x - y - z + 2" in out
        assert "2*y^2 + 2*y*z - 4*y + z^2 - 5*z + 4" in out

    def test_elimination_flag(self, tmp_path, capsys):
        infile = tmp_path / "system.txt"
        infile.write_text("x - y - z + 2\nx^2 + y^2 - z\n")
        outfile = tmp_path / "basis.json"
        code, out, _ = run_cli(
            [
                "groebner",
                "--in",
                str(infile),
                "--vars",
                "x,y,z",
                "--eliminate",
                "z",
                "--json",
                str(outfile),
            ],
            capsys,
        )
        assert code == 0
        doc = json.loads(outfile.read_text())
        assert doc["eliminated"] == ["z"]
        assert doc["basis"] == ["x^2 + y^2 - x + y - 2"]

    def test_malformed_polynomial_exits_nonzero(self, tmp_path, capsys):
        infile = tmp_path / "bad.txt"
        infile.write_text("x ++* 2y(\n")
        code, _, err = run_cli(
            ["groebner", "--in", str(infile), "--vars", "x,y"], capsys
        )
        assert code == 2
        assert "malformed" in err

    def test_missing_file(self, tmp_path, capsys):
        code, _, err = run_cli(
            ["groebner", "--in", str(tmp_path / "nope.txt"), "--vars", "x"], capsys
        )
        assert code == 2

    def test_unknown_eliminate_variable(self, tmp_path, capsys):
        infile = tmp_path / "system.txt"
        infile.write_text("x + y\n")
        code, _, err = run_cli(
            ["groebner", "--in", str(infile), "--vars", "x,y", "--eliminate", "w"],
            capsys,
        )
        assert code == 2


class TestScenarioCommands:
    def test_square_json_roundtrip(self, tmp_path, capsys):
        outfile = tmp_path / "square.json"
        code, out, _ = run_cli(["square", "--json", str(outfile)], capsys)
        assert code == 0
        assert "never linearly stable" in out
        raw = outfile.read_text()
        doc = json.loads(raw)
        assert doc["scenario"] == "square"
        assert doc["conditions"] == ["mu1 - mu3", "mu2 - mu4"]
        # byte-identical round trip through the canonical serialiser
        assert cli.render_json(json.loads(raw)) == raw

    def test_kite_with_mu_and_svg(self, tmp_path, capsys):
        svgdir = tmp_path / "figs"
        code, out, _ = run_cli(
            ["kite", "--mu", "1,1,1,1", "--svg", str(svgdir), "--eps", "1e-9"],
            capsys,
        )
        assert code == 0
        svg = (svgdir / "kite.svg").read_text()
        root = ET.fromstring(svg)
        assert root.tag.endswith("svg")
        circles = [e for e in root.iter() if e.tag.endswith("circle")]
        assert len(circles) == 6  # unit circle + centre + four vortices

    def test_rejects_zero_circulation(self, capsys):
        with pytest.raises(SystemExit) as err:
            cli.main(["kite", "--mu", "1,0,1,0"])
        assert err.value.code == 2

    def test_corrupted_reference_fails(self, capsys, monkeypatch):
        # the exit-code contract: a failing oracle check turns into exit 1
        monkeypatch.setattr(targets, "SQUARE_CONDITIONS", ("mu1 - mu2", "mu3 - mu4"))
        code, out, _ = run_cli(["square"], capsys)
        assert code == 1
        assert "[FAIL]" in out


class TestSvg:
    def test_square_figure_points_on_axes(self, tmp_path):
        config = Configuration(
            (0.0, math.pi / 2, math.pi, 3 * math.pi / 2), (1, 1, 1, 1)
        )
        path = tmp_path / "square.svg"
        cli.emit_svg(config, str(path))
        body = path.read_text()
        assert "1.00000,-0.00000" in body or "1.00000,0.00000" in body
        root = ET.fromstring(body)
        polygons = [e for e in root.iter() if e.tag.endswith("polygon")]
        assert len(polygons) == 1

    def test_trapezoid_figure(self, tmp_path):
        from vortexsym.trigvortex import TRAPEZOID3

        thetas = TRAPEZOID3.angles(0.687197)
        config = Configuration(tuple(thetas), (1, 1, 1, 1))
        path = tmp_path / "trapezoid.svg"
        cli.emit_svg(config, str(path))
        assert path.exists()
        ET.fromstring(path.read_text())

    def test_kite_figure_reflection_symmetry(self, tmp_path):
        from vortexsym.trigvortex import KITE

        thetas = KITE.angles(2 * math.pi / 3)
        config = Configuration(tuple(thetas), (1, 1, 1, 1))
        path = tmp_path / "kite.svg"
        cli.emit_svg(config, str(path))
        body = path.read_text()
        root = ET.fromstring(body)
        ys = []
        for e in root.iter():
            if e.tag.endswith("circle") and e.get("r") == "0.045":
                ys.append(float(e.get("cy")))
        # vortices 2 and 4 mirror across the horizontal axis
        assert any(abs(a + b) < 1e-9 and abs(a) > 0.1 for a in ys for b in ys)


def test_parse_fraction_forms():
    from fractions import Fraction

    assert cli._parse_fraction("3/2") == Fraction(3, 2)
    assert cli._parse_fraction("1e-9") == Fraction(1, 10**9)
    assert cli._parse_fraction("-2.5") == Fraction(-5, 2)


def test_kite_mismatched_pair_exits_cleanly(capsys):
    code = cli.main(["kite", "--mu", "1,2,1,3"])
    captured = capsys.readouterr()
    assert code == 2
    assert "mu2 == mu4" in captured.err
