import json

import pytest

from cyclops.cli import main
from cyclops.presfile import PresentationData, parse, render


@pytest.fixture()
def cyc_file(tmp_path):
    out = tmp_path / "cyc.pres"
    assert main(["zoo", "cyclic-orders", str(out), "--size-cap", "4"]) == 0
    return out


class TestZoo:
    @pytest.mark.parametrize("model", ["comm", "cyclic-orders", "free-cyclic"])
    def test_export_then_check(self, tmp_path, model):
        out = tmp_path / f"{model}.pres"
        assert main(["zoo", model, str(out), "--size-cap", "4"]) == 0
        assert main(["check", str(out), "--max-size", "3"]) == 0

    def test_unknown_model_usage_error(self, tmp_path):
        with pytest.raises(SystemExit) as err:
            main(["zoo", "mystery", str(tmp_path / "x.pres")])
        assert err.value.code == 2


class TestCheck:
    def test_pass_with_flags(self, cyc_file):
        assert main(["check", str(cyc_file), "--max-size", "3", "--derived-laws",
                     "--full-ca1", "--kind", "entries-only"]) == 0

    def test_kind_mismatch(self, cyc_file):
        assert main(["check", str(cyc_file), "--kind", "exchangeable-output"]) == 2

    def test_json_output(self, cyc_file, capsys):
        assert main(["check", str(cyc_file), "--max-size", "3", "--json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["ok"] is True
        assert any(c["name"].startswith("entries-only") for c in payload["checks"])

    def test_corrupted_file_exits_one(self, cyc_file, tmp_path):
        data = parse(cyc_file.read_text())
        homes = {sid: set_r for set_r, sid, _ in data.structures}
        by_set = {}
        for set_r, sid, _ in data.structures:
            by_set.setdefault(set_r, []).append(sid)
        rows = list(data.compose)
        for i, row in enumerate(rows):
            if row[1] in "abc" and row[3] in "abc" and set(homes[row[4]]).issubset(set("abc{},")):
                siblings = [s for s in by_set[homes[row[4]]] if s != row[4]]
                if siblings:
                    rows[i] = row[:4] + (siblings[0],)
                    break
        broken = PresentationData(data.version, data.kind, data.max_size, data.atoms,
                                  data.structures, data.units, tuple(sorted(rows)),
                                  data.dact, data.transport)
        bad = tmp_path / "bad.pres"
        bad.write_text(render(broken))
        assert main(["check", str(bad), "--max-size", "3"]) == 1

    def test_malformed_file_exits_two(self, tmp_path):
        bad = tmp_path / "mangled.pres"
        bad.write_text("cyclops-presentation\nversion 1\nnot-a-row\nend\n")
        assert main(["check", str(bad)]) == 2

    def test_missing_file_exits_two(self, tmp_path):
        assert main(["check", str(tmp_path / "absent.pres")]) == 2


class TestTranslate:
    def test_eo2exo_then_check(self, cyc_file, tmp_path):
        out = tmp_path / "cyc-exo.pres"
        assert main(["translate", str(cyc_file), str(out), "--direction", "eo2exo",
                     "--verify-roundtrip"]) == 0
        assert main(["check", str(out), "--max-size", "3"]) == 0

    def test_exo2eo_roundtrip(self, cyc_file, tmp_path):
        mid = tmp_path / "cyc-exo.pres"
        back = tmp_path / "cyc-back.pres"
        assert main(["translate", str(cyc_file), str(mid), "--direction", "eo2exo"]) == 0
        assert main(["translate", str(mid), str(back), "--direction", "exo2eo",
                     "--verify-roundtrip"]) == 0
        assert main(["check", str(back), "--max-size", "3"]) == 0

    def test_comp2alg_identity(self, cyc_file, tmp_path):
        out = tmp_path / "rt.pres"
        assert main(["translate", str(cyc_file), str(out), "--direction", "comp2alg",
                     "--verify-roundtrip"]) == 0
        assert out.read_text() == cyc_file.read_text()

    def test_alg2comp_identity(self, cyc_file, tmp_path):
        out = tmp_path / "rt2.pres"
        assert main(["translate", str(cyc_file), str(out), "--direction", "alg2comp",
                     "--verify-roundtrip"]) == 0
        assert out.read_text() == cyc_file.read_text()

    def test_algebraic_directions(self, cyc_file, tmp_path):
        ae = tmp_path / "ae.pres"
        assert main(["translate", str(cyc_file), str(ae), "--direction", "alg-eo2alg-exo",
                     "--verify-roundtrip"]) == 0
        assert main(["check", str(ae), "--max-size", "2"]) == 0
        ax = tmp_path / "ax.pres"
        assert main(["translate", str(ae), str(ax), "--direction", "alg-exo2alg-eo",
                     "--verify-roundtrip"]) == 0
        assert main(["check", str(ax), "--max-size", "2"]) == 0

    def test_wrong_kind_for_direction(self, cyc_file, tmp_path):
        assert main(["translate", str(cyc_file), str(tmp_path / "x.pres"),
                     "--direction", "exo2eo"]) == 2

    def test_malformed_direction_usage_error(self, cyc_file, tmp_path):
        with pytest.raises(SystemExit) as err:
            main(["translate", str(cyc_file), str(tmp_path / "x.pres"),
                  "--direction", "sideways"])
        assert err.value.code == 2
