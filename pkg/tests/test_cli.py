import json

import pytest

from riskprop.cli import main
from riskprop.serialize import dumps, payoff_from_obj, payoff_to_obj
from conftest import P


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        path = tmp_path / name
        path.write_text(json.dumps(obj))
        return str(path)

    return {
        "f": write("f.json", {"n": 2, "values": ["1", "1"]}),
        "g": write("g.json", {"n": 2, "values": ["0", "2"]}),
        "rain": write("rain.json", {"n": 3, "values": ["1", "0", "0"]}),
        "drought": write("drought.json", {"n": 3, "values": ["0", "1", "0"]}),
        "grapes": write("grapes.json", {"n": 3, "values": ["0", "1", "1"]}),
        "zm": write("zm.json", {"n": 3, "values": ["2", "-1", "-1"]}),
        "eu_concave": write(
            "eu_concave.json",
            {
                "type": "eu",
                "name": "eu-concave",
                "fn": {"breakpoints": [["-1", "-1"], ["0", "0"], ["1", "1/2"]]},
            },
        ),
        "eu_convex": write(
            "eu_convex.json",
            {
                "type": "eu",
                "name": "eu-convex-kink",
                "fn": {"breakpoints": [["-1", "-1/2"], ["0", "0"], ["1", "1"]]},
            },
        ),
        "ev": write("ev.json", {"type": "ev"}),
        "dir": tmp_path,
        "write": write,
    }


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out) if out else None


class TestOrder:
    def test_cv_flag(self, capsys, files):
        code, out = run(capsys, ["order", "--cv", files["f"], files["g"]])
        assert code == 0
        assert out == {"cv": True}

    def test_all_checks_by_default(self, capsys, files):
        code, out = run(capsys, ["order", files["f"], files["g"]])
        assert code == 0
        assert out["cv"] is True
        assert out["fsd"] is False
        assert out["mps"] == {"donor": 1, "recipient": 2, "delta": "1/1"}


class TestClassify:
    def test_viticulturist_instance(self, capsys, files):
        code, out = run(capsys, ["classify", files["rain"], files["grapes"]])
        assert code == 0
        assert out["kinds"] == ["fi", "pr", "dl", "is", "cs"]
        assert out["params"]["fi"] == {"premium": "-1/1"}

    def test_no_memberships(self, capsys, files):
        code, out = run(capsys, ["classify", files["drought"], files["grapes"]])
        assert code == 0
        assert out["kinds"] == []


class TestDecompose:
    def test_split(self, capsys, files):
        code, out = run(capsys, ["decompose", "split", files["zm"]])
        assert code == 0
        assert out["h"]["values"] == ["2/1", "1/1", "0/1"]
        assert out["h_prime"]["values"] == ["0/1", "2/1", "1/1"]

    def test_split_rejects_nonzero_mean(self, capsys, files):
        assert main(["decompose", "split", files["f"]]) == 2

    def test_chain(self, capsys, files):
        code, out = run(capsys, ["decompose", "chain", files["f"], files["g"]])
        assert code == 0
        assert out["spread_count"] == 1
        assert out["elements"][0]["spread"] == {
            "donor": 1,
            "recipient": 2,
            "delta": "1/1",
        }

    def test_triples(self, capsys, files):
        code, out = run(
            capsys, ["decompose", "proportional", files["g"], "1", "2", "1"]
        )
        assert code == 0
        assert out["kind"] == "pr"
        assert out["f_tilde"]["values"] == ["0/1", "-1/1"]
        code, out = run(capsys, ["decompose", "deductible", files["g"], "1", "2", "2"])
        assert code == 0
        assert out["params"]["limit"] == "2/1"


class TestHedge:
    def test_rain_vs_drought(self, capsys, files):
        code, out = run(
            capsys, ["hedge", files["rain"], files["drought"], files["grapes"]]
        )
        assert code == 0
        assert out == {"better_hedge": True, "equal_in_distribution": True}


class TestPreference:
    def test_value(self, capsys, files):
        code, out = run(capsys, ["preference", files["eu_concave"], "--value", files["g"]])
        assert code == 0
        assert out == {"value": "1/2"}

    def test_ce_and_rho(self, capsys, files):
        code, out = run(capsys, ["preference", files["ev"], "--ce", files["g"]])
        assert code == 0 and out == {"certainty_equivalent": "1/1"}
        code, out = run(
            capsys, ["preference", files["ev"], "--rho", files["g"], files["f"]]
        )
        assert code == 0 and out == {"rho": "0/1"}

    def test_mv_compare(self, capsys, files):
        mv = files["write"]("mv.json", {"type": "mv"})
        code, out = run(
            capsys, ["preference", mv, "--mv-compare", files["f"], files["g"]]
        )
        assert code == 0 and out == {"comparison": "better"}


class TestCertify:
    BUDGET_ARGS = ["--trials", "40", "--max-n", "4", "--exhaustive-n", "3"]

    def test_weak_ra_holds(self, capsys, files):
        code, out = run(
            capsys,
            ["certify", "--property", "weak_ra", "--model", files["eu_concave"]]
            + self.BUDGET_ARGS,
        )
        assert code == 0
        assert out["verdict"] == "holds_on_budget"
        assert out["budget"]["trials"] == 40

    def test_weak_ra_violated_exit_code(self, capsys, files):
        code, out = run(
            capsys,
            ["certify", "--property", "weak_ra", "--model", files["eu_convex"]]
            + self.BUDGET_ARGS,
        )
        assert code == 3
        assert out["verdict"] == "violated"
        assert out["witness"]["payoffs"]["f"]["values"]

    def test_premium_principle_variant(self, capsys, files):
        code, out = run(
            capsys,
            [
                "certify",
                "--property",
                "premium_fi",
                "--model",
                files["eu_concave"],
                "--principle",
                "loading",
                "--loading",
                "1/5",
            ]
            + self.BUDGET_ARGS,
        )
        assert code == 0

    def test_seed_env_override(self, capsys, files, monkeypatch):
        monkeypatch.setenv("RISKPROP_SEED", "17")
        code, out = run(
            capsys,
            ["certify", "--property", "weak_ra", "--model", files["ev"]]
            + self.BUDGET_ARGS,
        )
        assert code == 0
        assert out["seed"] == 17


class TestCompare:
    def test_weak_holds(self, capsys, files):
        code, out = run(
            capsys,
            [
                "compare",
                "--property",
                "weak",
                "--model-a",
                files["ev"],
                "--model-b",
                files["eu_concave"],
                "--trials",
                "30",
                "--max-n",
                "3",
                "--exhaustive-n",
                "3",
            ],
        )
        assert code == 0
        assert out["verdict"] == "holds_on_budget"

    def test_fi_violated(self, capsys, files):
        code, out = run(
            capsys,
            [
                "compare",
                "--property",
                "fi",
                "--model-a",
                files["eu_concave"],
                "--model-b",
                files["ev"],
                "--trials",
                "30",
                "--max-n",
                "3",
                "--exhaustive-n",
                "3",
            ],
        )
        assert code == 3
        assert out["verdict"] == "violated"


class TestInputHandling:
    def test_float_values_rejected(self, files, capsys):
        bad = files["write"]("bad.json", {"n": 2, "values": [0.5, 1]})
        assert main(["order", "--cv", bad, files["g"]]) == 2
        err = capsys.readouterr().err
        assert "values[0]" in err

    def test_missing_file(self, files):
        assert main(["order", "--cv", "/nonexistent.json", files["g"]]) == 2

    def test_wrong_state_count(self, files, capsys):
        bad = files["write"]("badn.json", {"n": 3, "values": ["1", "2"]})
        assert main(["classify", bad, files["g"]]) == 2

    def test_bad_model_type(self, files):
        bad = files["write"]("badm.json", {"type": "nope"})
        assert main(["preference", bad, "--value", files["f"]]) == 2

    def test_out_file(self, files, tmp_path):
        target = tmp_path / "result.json"
        assert main(["--out", str(target), "order", "--cv", files["f"], files["g"]]) == 0
        assert json.loads(target.read_text()) == {"cv": True}


class TestDeterminism:
    def test_byte_identical_output(self, capsys, files):
        argv = ["certify", "--property", "weak_ra", "--model", files["eu_convex"],
                "--trials", "30", "--max-n", "3", "--exhaustive-n", "3"]
        main(argv)
        first = capsys.readouterr().out
        main(argv)
        second = capsys.readouterr().out
        assert first == second

    def test_payoff_round_trip(self):
        for f in (P(1, 0, 0), P("1/3", "-5/2", 7, 0)):
            assert payoff_from_obj(payoff_to_obj(f)) == f

    def test_emit_parse_identity_via_json(self):
        f = P("2/3", "-1/6")
        text = dumps(payoff_to_obj(f))
        assert payoff_from_obj(json.loads(text)) == f

    def test_model_round_trip(self):
        from riskprop.serialize import model_from_obj, model_to_obj
        from conftest import build_zoo

        for m in build_zoo().values():
            again = model_from_obj(json.loads(dumps(model_to_obj(m))))
            assert again == m
