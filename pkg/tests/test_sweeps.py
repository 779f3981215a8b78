from pathlib import Path

import pytest

from femtoconn.sweeps import (
    SweepSpec,
    SweepSpecError,
    apply_overrides,
    emit_csv,
    emit_plot,
    load_recipe,
    recipe_names,
    run_sweep,
)

GOLDEN = Path(__file__).parent / "golden"


def spec_fig7_inside():
    return SweepSpec(
        target="connectivity_vs_r_beta",
        grid={"r": (0.1, 0.9, 0.1)},
        fixed={"beta": -1.0, "n_f": 100},
        name="inside",
    )


class TestSpecValidation:
    def test_unknown_target(self):
        with pytest.raises(SweepSpecError, match="unknown target"):
            SweepSpec(target="nope").validate()

    def test_missing_parameter_named(self):
        spec = SweepSpec(target="connectivity_vs_r_beta", grid={"r": (0.1, 0.9, 0.1)})
        with pytest.raises(SweepSpecError, match="beta"):
            spec.validate()

    def test_duplicate_parameter_named(self):
        spec = SweepSpec(
            target="connectivity_vs_r_beta",
            grid={"r": (0.1, 0.9, 0.1)},
            fixed={"r": 0.5, "beta": 0.0, "n_f": 10},
        )
        with pytest.raises(SweepSpecError, match="'r'"):
            spec.validate()

    def test_unknown_parameter_named(self):
        spec = SweepSpec(
            target="connectivity_vs_r_beta",
            grid={"r": (0.1, 0.9, 0.1)},
            fixed={"beta": 0.0, "n_f": 10, "bogus": 1.0},
        )
        with pytest.raises(SweepSpecError, match="bogus"):
            spec.validate()

    def test_bad_step(self):
        spec = SweepSpec(
            target="connectivity_vs_r_beta",
            grid={"r": (0.1, 0.9, 0.0)},
            fixed={"beta": 0.0, "n_f": 10},
        )
        with pytest.raises(SweepSpecError, match="step"):
            spec.validate()

    def test_empty_axis(self):
        spec = SweepSpec(
            target="connectivity_vs_r_beta",
            grid={"r": (0.9, 0.1, 0.1)},
            fixed={"beta": 0.0, "n_f": 10},
        )
        with pytest.raises(SweepSpecError, match="start"):
            spec.validate()

    def test_either_group_needs_exactly_one(self):
        base = dict(d_f=2.0, d_u=10.0, alpha=4.0, p_t=1.0, p_min=10.0)
        with pytest.raises(SweepSpecError, match="one of"):
            SweepSpec(target="outage_vs_df", fixed=base).validate()
        with pytest.raises(SweepSpecError, match="only one"):
            SweepSpec(
                target="outage_vs_df", fixed={**base, "eta": 2.0, "gamma": 3.0}
            ).validate()


class TestRunSweep:
    def test_fully_inside_column_matches_closed_form(self):
        result = run_sweep(spec_fig7_inside())
        assert result.columns == ("r", "p_c")
        for r, p_c in result.rows:
            assert p_c == pytest.approx(1.0 - (1.0 - r * r) ** 99, rel=1e-12)

    def test_rows_follow_product_order(self):
        spec = SweepSpec(
            target="connectivity_vs_r_beta",
            grid={"r": (0.2, 0.4, 0.2), "n_f": (10, 20, 10)},
            fixed={"beta": 0.0},
        )
        result = run_sweep(spec)
        assert [row[:2] for row in result.rows] == [
            (0.2, 10.0),
            (0.2, 20.0),
            (0.4, 10.0),
            (0.4, 20.0),
        ]

    def test_metadata_records_resolved_parameters(self):
        result = run_sweep(spec_fig7_inside(), seed=42)
        assert result.metadata["seed"] == "42"
        assert result.metadata["grid.r"] == "0.1,0.9,0.1"
        assert result.metadata["fixed.beta"] == "-1.0"
        assert result.metadata["tool"].startswith("femtoconn ")
        assert "timestamp" not in result.metadata

    def test_stamp_is_opt_in(self):
        result = run_sweep(spec_fig7_inside(), stamp="2026-01-01T00:00:00+00:00")
        assert result.metadata["timestamp"] == "2026-01-01T00:00:00+00:00"

    def test_fractional_count_rejected(self):
        spec = SweepSpec(
            target="connectivity_vs_r_beta",
            grid={"r": (0.1, 0.3, 0.1)},
            fixed={"beta": 0.0, "n_f": 10.5},
        )
        with pytest.raises(SweepSpecError, match="n_f"):
            run_sweep(spec)


class TestRecipes:
    def test_all_bundled_recipes_parse_and_validate(self):
        names = recipe_names()
        assert names == ["fig10", "fig5", "fig6", "fig7", "fig8", "fig9"]
        for name in names:
            load_recipe(name).validate()

    def test_unknown_recipe(self):
        with pytest.raises(SweepSpecError, match="no recipe"):
            load_recipe("fig99")

    def test_config_round_trip(self):
        for name in recipe_names():
            spec = load_recipe(name)
            assert SweepSpec.from_config_text(spec.to_config_text()) == spec

    def test_custom_round_trip(self):
        spec = spec_fig7_inside()
        assert SweepSpec.from_config_text(spec.to_config_text()) == spec

    def test_file_path_loading(self, tmp_path):
        path = tmp_path / "custom.cfg"
        path.write_text(spec_fig7_inside().to_config_text(), encoding="utf-8")
        assert load_recipe(str(path)) == spec_fig7_inside()

    def test_gamma_override_on_fig9_zeroes_the_outage_column(self):
        spec = apply_overrides(load_recipe("fig9"), ["fixed.gamma=0"])
        spec.validate()
        result = run_sweep(spec)
        assert {row[-1] for row in result.rows} == {0.0}

    def test_override_moves_parameter_between_sections(self):
        spec = apply_overrides(spec_fig7_inside(), ["grid.beta=-0.5,0.5,0.5"])
        assert "beta" in spec.grid and "beta" not in spec.fixed
        spec = apply_overrides(spec, ["beta=0.0"])
        assert "beta" in spec.fixed and "beta" not in spec.grid

    def test_bad_override_rejected(self):
        with pytest.raises(SweepSpecError):
            apply_overrides(spec_fig7_inside(), ["nonsense"])
        with pytest.raises(SweepSpecError):
            apply_overrides(spec_fig7_inside(), ["weird.key=1"])


class TestEmitCsv:
    def test_layout(self, tmp_path):
        result = run_sweep(
            SweepSpec(
                target="connectivity_vs_r_beta",
                grid={"r": (0.2, 0.4, 0.2)},
                fixed={"beta": 0.0, "n_f": 10},
            ),
            seed=42,
        )
        path = tmp_path / "out.csv"
        emit_csv(result, path)
        lines = path.read_text(encoding="utf-8").splitlines()
        comments = [line for line in lines if line.startswith("#")]
        data = [line for line in lines if not line.startswith("#")]
        assert "# seed=42" in comments
        assert data[0] == "r,p_c"
        assert len(data) == 3

    def test_golden_fig9(self, tmp_path):
        result = run_sweep(load_recipe("fig9"), seed=0)
        path = tmp_path / "fig9.csv"
        emit_csv(result, path)
        assert path.read_bytes() == (GOLDEN / "fig9.csv").read_bytes()

    def test_io_error_carries_path(self, tmp_path):
        result = run_sweep(spec_fig7_inside())
        with pytest.raises(OSError, match="no/such"):
            emit_csv(result, tmp_path / "no" / "such" / "dir.csv")


class TestEmitPlot:
    def test_line_plot_written_and_deterministic(self, tmp_path):
        result = run_sweep(load_recipe("fig7"))
        first = tmp_path / "a.svg"
        second = tmp_path / "b.svg"
        emit_plot(result, first)
        emit_plot(result, second)
        assert first.stat().st_size > 0
        assert first.read_bytes() == second.read_bytes()
        assert b"data-sha256:" in first.read_bytes()

    def test_heatmap_written(self, tmp_path):
        spec = apply_overrides(
            load_recipe("fig5"),
            ["grid.beta=-1.0,1.0,0.25", "grid.r=0.1,0.9,0.1"],
        )
        path = tmp_path / "surface.svg"
        emit_plot(run_sweep(spec), path)
        assert path.stat().st_size > 0

    def test_empty_result_errors_without_writing(self, tmp_path):
        from femtoconn.sweeps import SweepResult

        empty = SweepResult(columns=("r", "p_c"), rows=(), metadata={})
        path = tmp_path / "nothing.svg"
        with pytest.raises(SweepSpecError):
            emit_plot(empty, path)
        assert not path.exists()
