import numpy as np
import pytest

from qgdream.dataset import (
    Dataset,
    DatasetReadError,
    DatasetVersionError,
    generate_dataset,
    read_dataset,
    write_dataset,
)
from qgdream.states import Property, property_value


class TestGenerate:
    def test_cap_filter(self):
        ds = generate_dataset("ghz_fidelity", 1000, cap=0.5, seed=0)
        assert len(ds) == 1000
        assert np.all(ds.labels < 0.5)

    def test_deterministic_bytes(self, tmp_path):
        p1, p2 = tmp_path / "a.qgdd", tmp_path / "b.qgdd"
        write_dataset(generate_dataset("ghz_fidelity", 500, cap=0.5, seed=9), p1)
        write_dataset(generate_dataset("ghz_fidelity", 500, cap=0.5, seed=9), p2)
        assert p1.read_bytes() == p2.read_bytes()

    def test_uncapped_mean_below_half(self):
        ds = generate_dataset("ghz_fidelity", 20_000, cap=None, seed=1)
        assert ds.labels.mean() < 0.5

    def test_labels_match_property(self):
        # spot-check 100 stored labels against a fresh evaluation
        ds = generate_dataset("mean_purity", 2000, cap=0.5, seed=2)
        rng = np.random.default_rng(0)
        for i in rng.choice(len(ds), 100, replace=False):
            true = property_value(ds.inputs[i].astype(np.float64), ds.prop)
            assert abs(true - float(ds.labels[i])) < 1e-9 + 1e-6 * abs(true)

    def test_invalid_n(self):
        with pytest.raises(ValueError):
            generate_dataset("ghz_fidelity", 0, seed=0)

    def test_hopeless_cap_aborts(self):
        with pytest.raises(RuntimeError, match="rejection"):
            generate_dataset("ghz_fidelity", 10, cap=-1.0, seed=0, chunk=1000)


class TestRoundTrip:
    def test_identity(self, tmp_path):
        ds = generate_dataset("w_fidelity", 1000, cap=0.5, seed=3)
        path = tmp_path / "ds.qgdd"
        write_dataset(ds, path)
        back = read_dataset(path)
        assert back.prop is Property.W_FIDELITY
        assert back.seed == 3
        assert np.array_equal(back.inputs, ds.inputs)
        assert np.array_equal(back.labels, ds.labels)

    def test_truncated_file(self, tmp_path):
        ds = generate_dataset("ghz_fidelity", 100, cap=0.5, seed=4)
        path = tmp_path / "ds.qgdd"
        write_dataset(ds, path)
        data = path.read_bytes()
        path.write_bytes(data[:-10])
        with pytest.raises(DatasetReadError):
            read_dataset(path)

    def test_version_bump(self, tmp_path):
        ds = generate_dataset("ghz_fidelity", 10, cap=0.5, seed=5)
        path = tmp_path / "ds.qgdd"
        write_dataset(ds, path)
        data = bytearray(path.read_bytes())
        data[4] = 2  # version u32 little-endian, low byte
        path.write_bytes(bytes(data))
        with pytest.raises(DatasetVersionError, match="2"):
            read_dataset(path)

    def test_bad_magic(self, tmp_path):
        path = tmp_path / "ds.qgdd"
        path.write_bytes(b"NOPE" + bytes(100))
        with pytest.raises(DatasetReadError, match="magic"):
            read_dataset(path)

    def test_too_short(self, tmp_path):
        path = tmp_path / "ds.qgdd"
        path.write_bytes(b"QG")
        with pytest.raises(DatasetReadError):
            read_dataset(path)
