import json
import math

import pytest

from zenga_gof import (
    CellAbortedError,
    ConfigError,
    Exponential,
    Gamma,
    LogWeibull,
    Pareto,
    PowerStudyConfig,
    RngStream,
    power_cell,
    power_table,
)
from zenga_gof.power import CellResult, bundled_config


def small_config(**kw):
    base = dict(cells=((Pareto(2), 30), (Exponential(), 30)), replications=20, bootstrap_M=49, level=0.05, seed=3)
    base.update(kw)
    return PowerStudyConfig(**base)


class TestConfig:
    @pytest.mark.parametrize(
        "field,value,name",
        [("replications", 0, "replications"), ("bootstrap_M", 0, "bootstrap"), ("level", 1.5, "level"),
         ("level", 0, "level"), ("seed", -1, "seed")],
    )
    def test_validation_names_field(self, field, value, name):
        with pytest.raises(ConfigError, match=name):
            small_config(**{field: value})

    def test_cell_n_too_small(self):
        with pytest.raises(ConfigError, match=r"cells\[1\]\.n"):
            small_config(cells=((Pareto(2), 30), (Gamma(2), 4)))

    def test_from_dict(self):
        cfg = PowerStudyConfig.from_dict(
            {"replications": 10, "bootstrap": 9, "level": 0.1, "seed": 4,
             "cells": [{"distribution": "pareto:2:1", "n": [50, 100]}, {"distribution": "exp", "n": 20}]}
        )
        assert cfg.cells == ((Pareto(2), 50), (Pareto(2), 100), (Exponential(), 20))
        assert (cfg.replications, cfg.bootstrap_M, cfg.level, cfg.seed) == (10, 9, 0.1, 4)

    @pytest.mark.parametrize(
        "data,needle",
        [({"cells": [{"distribution": "weibull:1", "n": 10}]}, "cells[0].distribution"),
         ({"cells": [{"n": 10}]}, "cells[0]"),
         ({"cells": []}, None),
         ({"replications": 5}, "cells"),
         ({"cells": [], "colour": 1}, "colour"),
         ({"cells": [{"distribution": "exp", "n": 12.5}]}, "cells[0].n")],
    )
    def test_from_dict_errors(self, data, needle):
        if needle is None:
            assert len(PowerStudyConfig.from_dict(data).cells) == 0
            return
        with pytest.raises(ConfigError) as info:
            PowerStudyConfig.from_dict(data)
        assert needle in str(info.value)

    def test_bundled_table1(self):
        cfg = PowerStudyConfig.from_toml(bundled_config("table1"))
        assert (cfg.replications, cfg.bootstrap_M, cfg.level) == (500, 500, 0.05)
        assert len(cfg.cells) == 37
        assert (Pareto(2), 20) not in cfg.cells
        assert (LogWeibull(0.25), 20) in cfg.cells

    def test_overrides(self):
        cfg = small_config().with_overrides(replications=7, bootstrap_M=None)
        assert cfg.replications == 7 and cfg.bootstrap_M == 49

    def test_bad_toml(self, tmp_path):
        f = tmp_path / "c.toml"
        f.write_text("replications = = 3\n")
        with pytest.raises(ConfigError):
            PowerStudyConfig.from_toml(f)


class TestCell:
    def test_single_replication(self):
        cell = power_cell(Exponential(), 30, 1, 19, 0.05, RngStream(1))
        assert cell.proportion in (0.0, 1.0)
        assert cell.replications == 1

    def test_deterministic_across_workers(self):
        a = power_cell(Pareto(2), 40, 12, 29, 0.05, RngStream(5), workers=1)
        b = power_cell(Pareto(2), 40, 12, 29, 0.05, RngStream(5), workers=4)
        assert a == b

    def test_se(self):
        cell = CellResult("Exp", "exp", 20, 3, 10, 0)
        assert cell.proportion == 0.3
        assert cell.mc_se == pytest.approx(math.sqrt(0.3 * 0.7 / 10))

    def test_aborts_over_error_budget(self):
        with pytest.raises(CellAbortedError):
            power_cell(LogWeibull(0.25), 200, 20, 9, 0.05, RngStream(1))

    def test_high_power(self):
        assert power_cell(Exponential(), 100, 20, 99, 0.05, RngStream(2)).proportion >= 0.9


class TestTable:
    def test_empty(self):
        table = power_table(small_config(cells=()))
        assert len(table) == 0
        assert table.to_csv() == "n\n"

    def test_order_and_entries(self):
        table = power_table(small_config())
        assert [(c.label, c.n) for c in table.cells] == [("Pa(2)", 30), ("Exp", 30)]
        assert all(0 <= c.proportion <= 1 for c in table.cells)

    def test_reproducible(self):
        assert power_table(small_config()).to_json() == power_table(small_config(), workers=3).to_json()

    def test_seed_matters(self):
        a = power_table(small_config(replications=40, seed=1))
        b = power_table(small_config(replications=40, seed=2))
        assert a.to_json() != b.to_json()

    def test_csv_layout_with_blank(self):
        cfg = small_config(cells=((Exponential(), 20), (Pareto(2), 30), (Exponential(), 30)), replications=5)
        lines = power_table(cfg).to_csv().splitlines()
        assert lines[0] == "n,Exp,Pa(2)"
        assert lines[1].startswith("20,") and lines[1].endswith(",")
        assert lines[2].startswith("30,")

    def test_json(self):
        table = power_table(small_config(replications=5))
        doc = json.loads(table.to_json())
        assert doc["level"] == 0.05 and doc["replications"] == 5 and doc["bootstrap"] == 49
        assert {"label", "n", "proportion", "mc_se", "errors"} <= set(doc["cells"][0])

    def test_aborted_cell_recorded(self):
        cfg = small_config(cells=((LogWeibull(0.25), 200), (Exponential(), 30)), replications=10)
        table = power_table(cfg)
        bad = table.get("LW(0.25)", 200)
        assert bad.aborted and math.isnan(bad.proportion) and bad.errors > 0
        assert json.loads(table.to_json())["cells"][0]["proportion"] is None
        assert table.get("Exp", 30).aborted is None

    def test_progress_callback(self):
        seen = []
        power_table(small_config(replications=3), progress=lambda k, total, cell: seen.append((k, total, cell.label)))
        assert seen == [(0, 2, "Pa(2)"), (1, 2, "Exp")]
