import pytest

from aidc_dac.errors import ValidationError
from aidc_dac.io import load_and_validate, load_scenario, scenario_dir
from helpers import two_by_two_rows, write_csv, write_scenario


def scenario(tmp_path, **changes):
    servers, states, counties, climate = two_by_two_rows()
    rows = dict(servers=servers, states=states, counties=counties, climate=climate)
    rows.update(changes)
    return write_scenario(tmp_path, **rows)


def test_valid_inputs_have_no_warnings(tmp_path):
    inputs = load_and_validate(load_scenario(scenario(tmp_path)))
    assert inputs.warnings == []
    assert [s.state_id for s in inputs.tree.states] == ["S1", "S2"]
    assert len(inputs.fleet) == 3
    assert set(inputs.digests) == set(inputs.config.inputs) | {"scenario"}


def test_alpha_residual_is_named(tmp_path):
    path = scenario(tmp_path, states=[("S1", 0.6, 380.0, 85.0), ("S2", 0.37, 210.0, 140.0)])
    with pytest.raises(ValidationError, match=r"0\.03") as err:
        load_and_validate(load_scenario(path))
    assert "states.csv" in str(err.value)


def test_tiny_residual_renormalized_with_warning(tmp_path):
    path = scenario(tmp_path, states=[("S1", 0.62, 380.0, 85.0), ("S2", 0.3800004, 210.0, 140.0)])
    inputs = load_and_validate(load_scenario(path))
    assert any("renormalized" in w for w in inputs.warnings)
    assert sum(s.alpha for s in inputs.tree.states) == pytest.approx(1.0, abs=1e-15)


def test_unknown_column_strict_vs_lenient(tmp_path):
    path = scenario(tmp_path)
    states = [("S1", 0.62, 380.0, 85.0, "x"), ("S2", 0.38, 210.0, 140.0, "y")]
    write_csv(tmp_path / "states.csv", ["state_id", "alpha", "cef_kg_per_mwh", "price_usd_per_mwh", "note"], states)
    inputs = load_and_validate(load_scenario(path))
    assert any("note" in w for w in inputs.warnings)
    with pytest.raises(ValidationError, match="note") as err:
        load_and_validate(load_scenario(path, strict=True))
    assert err.value.column == "note"


def test_bad_number_locates_cell(tmp_path):
    path = scenario(tmp_path, states=[("S1", 0.62, "lots", 85.0), ("S2", 0.38, 210.0, 140.0)])
    with pytest.raises(ValidationError) as err:
        load_and_validate(load_scenario(path))
    assert (err.value.row, err.value.column) == (2, "cef_kg_per_mwh")
    assert "states.csv, row 2, column 'cef_kg_per_mwh'" in str(err.value)


@pytest.mark.parametrize("change, match", [
    (dict(counties=[("S1", "C11", 0.7), ("S1", "C12", 0.3), ("S9", "C21", 0.45), ("S2", "C22", 0.55)]),
     "unknown state"),
    (dict(climate=[]), "climate"),
    (dict(servers=[("AI-16GPU", 16, 1, "train", 1, 10.0, 100.0, 0.9)]), "unknown server class"),
    (dict(servers=[("AI-8GPU", 8, 1, "train", 13, 10.0, 100.0, 0.9)]), "month"),
])
def test_bad_records(tmp_path, change, match):
    with pytest.raises(ValidationError, match=match):
        load_and_validate(load_scenario(scenario(tmp_path, **change)))


def test_climate_out_of_range(tmp_path):
    _, _, _, climate = two_by_two_rows()
    climate[0] = (climate[0][0], climate[0][1], 75.0, climate[0][3])
    with pytest.raises(ValidationError, match="temperature"):
        load_and_validate(load_scenario(scenario(tmp_path, climate=climate)))


def test_capacities_define_gamma(tmp_path):
    path = scenario(tmp_path, counties=[("S1", "C11", ""), ("S1", "C12", ""), ("S2", "C21", ""), ("S2", "C22", "")])
    write_csv(tmp_path / "capacities.csv", ["state_id", "county_id", "capacity_mw"],
              [("S1", "C11", 90.0), ("S1", "C12", 30.0), ("S2", "C21", 10.0), ("S2", "C22", 10.0)])
    text = path.read_text().replace('climate = "climate.csv"', 'climate = "climate.csv"\ncapacities = "capacities.csv"')
    path.write_text(text)
    tree = load_and_validate(load_scenario(path)).tree
    assert [c.gamma for _, c in tree.counties()] == [0.75, 0.25, 0.5, 0.5]


def test_scenario_file_errors(tmp_path):
    with pytest.raises(ValidationError, match="not found"):
        load_scenario(tmp_path / "missing.toml")
    bad = tmp_path / "bad.toml"
    bad.write_text("mode = [", encoding="utf-8")
    with pytest.raises(ValidationError, match="TOML"):
        load_scenario(bad)
    path = scenario(tmp_path)
    path.write_text(path.read_text().replace('mode = "integrated"', 'mode = "hybrid"'))
    with pytest.raises(ValidationError, match="mode"):
        load_scenario(path)


def test_unknown_scenario_key(tmp_path):
    path = scenario(tmp_path)
    path.write_text("colour = 3\n" + path.read_text())
    assert any("colour" in w for w in load_scenario(path).warnings)
    with pytest.raises(ValidationError, match="colour"):
        load_scenario(path, strict=True)


@pytest.mark.parametrize("name", ["demo_2024/integrated.toml", "demo_2024/standalone.toml",
                                  "demo_2030/integrated.toml", "virginia/standalone.toml", "sensitivity/scenario.toml"])
def test_packaged_scenarios_validate(name):
    folder, file = name.split("/")
    inputs = load_and_validate(load_scenario(scenario_dir(folder) / file, strict=True))
    assert inputs.warnings == []
