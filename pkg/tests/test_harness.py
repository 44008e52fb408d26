"""Config parsing, experiment runners, artifact emission, CLI exit codes."""

import json

import numpy as np
import pytest

from memperceptron.cli import main
from memperceptron.harness import (
    ConfigError,
    ExperimentConfig,
    aggregate_curve,
    effective_learning_rate,
    learning_histories,
    parse_config,
    run_learning_experiment,
    run_roc_experiment,
)
from memperceptron.metrics import read_curve_csv, read_roc_csv


def tiny(**kw):
    base = dict(model="slp", gate="OR", epochs=4, dataset_size=12, n_realizations=3)
    base.update(kw)
    return parse_config(overrides=base)


def test_empty_config_gives_protocol_defaults():
    config = parse_config()
    assert config.model == "slp" and config.gate == "OR"
    assert config.epochs == 1000
    assert config.dataset_size == 100
    assert config.n_realizations == 100
    assert config.learning_rate is None
    assert config.topology == (2, 2, 1)
    assert config.thresholds == (10.0, 20.0, 30.0, 40.0)
    assert config.roc_thresholds == (0.3, 0.5, 0.7)


def test_learning_rate_defaults_per_model_and_gate():
    for model, gate, eta in [("slp", "OR", 0.1), ("slp", "XOR", 0.1),
                             ("mlp", "OR", 0.1), ("mlp", "AND", 0.1),
                             ("mlp", "XOR", 0.01)]:
        config = parse_config(overrides={"model": model, "gate": gate})
        assert effective_learning_rate(config) == eta
    explicit = parse_config(overrides={"model": "mlp", "gate": "XOR", "learning_rate": 0.5})
    assert effective_learning_rate(explicit) == 0.5


def test_flags_override_file(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"learning_rate": 0.2, "epochs": 7}))
    config = parse_config(cfg, overrides={"learning_rate": 0.5})
    assert config.learning_rate == 0.5
    assert config.epochs == 7


def test_model_and_gate_are_normalized():
    config = parse_config(overrides={"model": "SLP", "gate": "xor"})
    assert config.model == "slp" and config.gate == "XOR"


def test_unknown_key_diagnostic():
    with pytest.raises(ConfigError, match="unknown config key"):
        parse_config(overrides={"learning_rte": 0.1})


def test_type_mismatch_diagnostics():
    with pytest.raises(ConfigError, match="expects an integer"):
        parse_config(overrides={"epochs": "ten"})
    with pytest.raises(ConfigError, match="expects an integer"):
        parse_config(overrides={"epochs": 3.5})
    with pytest.raises(ConfigError, match="expects an integer"):
        parse_config(overrides={"epochs": True})
    with pytest.raises(ConfigError, match="expects a number"):
        parse_config(overrides={"learning_rate": "fast"})
    with pytest.raises(ConfigError, match="expects true or false"):
        parse_config(overrides={"svg": "yes"})
    with pytest.raises(ConfigError, match="expects a list"):
        parse_config(overrides={"topology": 221})


def test_out_of_range_diagnostics():
    with pytest.raises(ConfigError, match="'epochs' out of range"):
        parse_config(overrides={"epochs": 0})
    with pytest.raises(ConfigError, match="'learning_rate' out of range"):
        parse_config(overrides={"learning_rate": -0.1})
    with pytest.raises(ConfigError, match="'gate' out of range"):
        parse_config(overrides={"gate": "NAND"})
    with pytest.raises(ConfigError, match="'roc_thresholds' out of range"):
        parse_config(overrides={"model": "slp", "roc_thresholds": [0.3, 1.5]})
    with pytest.raises(ConfigError, match="'thresholds' out of range"):
        parse_config(overrides={"thresholds": [10.0, 11.0]})
    with pytest.raises(ConfigError, match="'topology' out of range"):
        parse_config(overrides={"model": "mlp", "topology": [3, 2, 1]})
    with pytest.raises(ConfigError, match="'seed' out of range"):
        parse_config(overrides={"seed": -1})


def test_config_file_errors(tmp_path):
    with pytest.raises(ConfigError, match="config file"):
        parse_config(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ConfigError, match="invalid JSON"):
        parse_config(bad)
    listy = tmp_path / "list.json"
    listy.write_text("[1, 2]")
    with pytest.raises(ConfigError, match="top level"):
        parse_config(listy)


def test_reruns_are_byte_identical(tmp_path):
    for model in ("slp", "mlp"):
        blobs = []
        for tag in ("a", "b"):
            config = tiny(model=model, out_dir=str(tmp_path / f"{model}_{tag}"))
            path, _ = run_learning_experiment(config)
            blobs.append(path.read_bytes())
        assert blobs[0] == blobs[1]


def test_aggregation_matches_independent_recomputation(tmp_path):
    config = tiny(gate="AND", out_dir=str(tmp_path))
    histories = learning_histories(config)
    path, _ = run_learning_experiment(config)
    records = read_curve_csv(path)
    assert len(records) == config.epochs
    for rec in records:
        col = histories[:, rec.epoch - 1]
        mean = sum(col) / len(col)
        var = sum((v - mean) ** 2 for v in col) / len(col)
        assert abs(rec.mean_e_total - mean) <= 1e-12
        assert abs(rec.std_e_total - var ** 0.5) <= 1e-12


def test_single_realization_single_epoch_row(tmp_path):
    config = tiny(epochs=1, n_realizations=1, out_dir=str(tmp_path))
    path, _ = run_learning_experiment(config)
    lines = path.read_text().splitlines()
    assert lines[0] == "epoch,mean_e_total,std_e_total"
    assert len(lines) == 2
    assert lines[1].startswith("1,")


def test_curve_filename_and_seed_sensitivity(tmp_path):
    config = tiny(gate="XOR", out_dir=str(tmp_path))
    path, records = run_learning_experiment(config)
    assert path.name == "curve_slp_xor.csv"
    other = tiny(gate="XOR", seed=9, out_dir=str(tmp_path / "other"))
    _, other_records = run_learning_experiment(other)
    assert other_records[0].mean_e_total != records[0].mean_e_total


def test_roc_experiment_csv(tmp_path):
    config = parse_config(overrides={
        "model": "mlp", "gate": "XOR", "epochs": 40,
        "dataset_size": 30, "out_dir": str(tmp_path),
    })
    path, points, auc_value = run_roc_experiment(config)
    assert path.name == "roc_mlp_xor.csv"
    read_points, read_auc = read_roc_csv(path)
    assert [p.threshold for p in read_points] == [0.3, 0.5, 0.7]
    assert read_points == points
    assert read_auc == auc_value
    assert 0.0 <= auc_value <= 1.0
    for p in points:
        assert 0.0 <= p.tpr <= 1.0 and 0.0 <= p.fpr <= 1.0


def test_svg_siblings(tmp_path):
    config = tiny(out_dir=str(tmp_path), svg=True)
    path, _ = run_learning_experiment(config)
    svg = path.with_suffix(".svg").read_text()
    assert svg.startswith("<svg") and "polyline" in svg
    roc_cfg = tiny(epochs=3, out_dir=str(tmp_path), svg=True)
    roc_file, _, _ = run_roc_experiment(roc_cfg)
    roc_svg = roc_file.with_suffix(".svg").read_text()
    assert roc_svg.startswith("<svg") and "circle" in roc_svg


def test_aggregate_curve_epochs_one_based():
    histories = np.array([[4.0, 2.0], [2.0, 0.0]])
    records = aggregate_curve(histories)
    assert [r.epoch for r in records] == [1, 2]
    assert records[0].mean_e_total == 3.0
    assert records[0].std_e_total == 1.0


def test_cli_train_success(tmp_path, capsys):
    rc = main(["train", "--model", "slp", "--gate", "or", "--epochs", "3",
               "--realizations", "2", "--dataset-size", "10",
               "--out", str(tmp_path)])
    assert rc == 0
    assert (tmp_path / "curve_slp_or.csv").exists()
    assert "curve_slp_or.csv" in capsys.readouterr().out


def test_cli_validation_failure_exits_1(tmp_path, capsys):
    rc = main(["train", "--epochs", "0", "--out", str(tmp_path)])
    assert rc == 1
    assert "out of range" in capsys.readouterr().err


def test_cli_runtime_failure_exits_2(tmp_path, capsys):
    blocker = tmp_path / "taken"
    blocker.write_text("in the way")
    rc = main(["train", "--epochs", "2", "--realizations", "1",
               "--dataset-size", "8", "--out", str(blocker)])
    assert rc == 2
    assert "error:" in capsys.readouterr().err


def test_cli_roc_defaults_to_500_epochs(tmp_path, capsys):
    # The roc subcommand's own default; an explicit flag still wins.
    rc = main(["roc", "--model", "slp", "--gate", "or", "--epochs", "5",
               "--dataset-size", "12", "--out", str(tmp_path)])
    assert rc == 0
    assert (tmp_path / "roc_slp_or.csv").exists()
    out = capsys.readouterr().out
    assert "AUC" in out


def test_cli_validate_config_prints_normalized(capsys):
    rc = main(["validate-config", "--model", "MLP", "--gate", "xor",
               "--learning-rate", "0.02"])
    assert rc == 0
    data = json.loads(capsys.readouterr().out)
    assert data["model"] == "mlp" and data["gate"] == "XOR"
    assert data["learning_rate"] == 0.02
    assert main(["validate-config", "--gate", "NAND"]) == 1


def test_cli_dataset_roundtrip(tmp_path, capsys):
    rc = main(["dataset", "--gate", "xor", "--dataset-size", "16",
               "--seed", "5", "--out", str(tmp_path)])
    assert rc == 0
    path = tmp_path / "dataset_xor.csv"
    assert path.exists()
    rc = main(["dataset", "--load", str(path)])
    assert rc == 0
    out = capsys.readouterr().out
    assert "gate XOR" in out and "16 samples" in out


def test_cli_dataset_rejects_bad_labels(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("x1,x2,label\n0,0,1\n0,0,0\n")
    rc = main(["dataset", "--load", str(bad)])
    assert rc == 2
    assert "error:" in capsys.readouterr().err


def test_config_object_is_frozen():
    config = ExperimentConfig()
    with pytest.raises(Exception):
        config.epochs = 5
