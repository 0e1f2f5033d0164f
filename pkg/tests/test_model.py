import json
import math

import numpy as np
import pytest

import goldfish
from goldfish.model import (
    ConfigError,
    SystemConfig,
    Trajectory,
    load_config,
    min_pairwise_separation,
    period,
    serialize_config,
)


def minimal_doc(**overrides):
    doc = {
        "n": 2,
        "omega": 1.0,
        "z0": [[1.0, 0.0], [2.0, 0.0]],
        "v0": [[0.0, 0.0], [0.0, 0.0]],
    }
    doc.update(overrides)
    return json.dumps(doc)


def test_load_minimal_document():
    cfg = load_config(minimal_doc())
    assert cfg.n == 2
    assert cfg.omega == 1.0
    assert np.array_equal(cfg.z0, np.array([1.0 + 0j, 2.0 + 0j]))
    assert np.array_equal(cfg.v0, np.zeros(2, dtype=complex))
    assert cfg.t_end is None
    assert cfg.samples == 1000


def test_load_accepts_bytes_and_streams(tmp_path):
    raw = minimal_doc().encode()
    assert load_config(raw) == load_config(raw.decode())
    p = tmp_path / "c.json"
    p.write_bytes(raw)
    with open(p, "rb") as fh:
        assert load_config(fh) == load_config(raw)


def test_n_below_two_rejected():
    with pytest.raises(ConfigError, match="n must be >= 2"):
        load_config(minimal_doc(n=1, z0=[[1, 0]], v0=[[0, 0]]))


def test_coincident_positions_rejected():
    doc = minimal_doc(z0=[[1.0, 0.0], [1.0, 0.0]])
    with pytest.raises(ConfigError, match="coincident initial positions"):
        load_config(doc)


def test_nonpositive_omega_rejected():
    for omega in (0.0, -1.0):
        with pytest.raises(ConfigError, match="omega"):
            load_config(minimal_doc(omega=omega))


def test_length_mismatch_names_field():
    with pytest.raises(ConfigError, match="z0"):
        load_config(minimal_doc(z0=[[1.0, 0.0]]))
    with pytest.raises(ConfigError, match="v0"):
        load_config(minimal_doc(v0=[[0.0, 0.0]]))


def test_malformed_json_rejected():
    with pytest.raises(ConfigError, match="malformed"):
        load_config(b"{not json")


def test_bad_pair_reports_field_path():
    with pytest.raises(ConfigError, match=r"z0\[1\]"):
        load_config(minimal_doc(z0=[[1.0, 0.0], [2.0]]))
    with pytest.raises(ConfigError, match=r"v0\[0\]"):
        load_config(minimal_doc(v0=[["x", 0.0], [0.0, 0.0]]))


def test_unknown_key_rejected():
    doc = json.loads(minimal_doc())
    doc["omeg"] = 2.0
    with pytest.raises(ConfigError, match="unknown key 'omeg'"):
        load_config(json.dumps(doc))


def test_non_finite_entries_rejected():
    with pytest.raises(ConfigError, match="finite"):
        load_config(minimal_doc(z0=[[1.0, 0.0], [math.inf, 0.0]]))
    with pytest.raises(ConfigError):
        SystemConfig(n=2, omega=1.0, z0=[1.0, float("nan")], v0=[0.0, 0.0])


def test_period_values():
    cfg = load_config(minimal_doc())
    assert period(cfg) == 2.0 * math.pi
    assert period(load_config(minimal_doc(omega=2.0 * math.pi))) == pytest.approx(1.0, abs=0)
    assert period(load_config(minimal_doc(omega=0.5))) == 4.0 * math.pi


def test_serialize_round_trip_bytes():
    cfg = SystemConfig(
        n=3,
        omega=0.75,
        z0=[0.1 + 0.2j, -0.3 + 0.4j, 0.5 - 0.6j],
        v0=[0.01 - 0.02j, 0.0 + 0.0j, -0.07 + 0.001j],
        t_end=3.5,
        samples=123,
    )
    blob = serialize_config(cfg)
    again = load_config(blob)
    assert again == cfg
    assert serialize_config(again) == blob


def test_optional_keys_round_trip():
    cfg = load_config(minimal_doc(t_end=2.5, samples=17))
    assert cfg.t_end == 2.5
    assert cfg.samples == 17
    assert load_config(serialize_config(cfg)) == cfg


def test_trajectory_invariants():
    with pytest.raises(ValueError, match="strictly increasing"):
        Trajectory([0.0, 0.0], np.zeros((2, 2), complex))
    with pytest.raises(ValueError):
        Trajectory([0.0, 1.0], np.zeros((3, 2), complex))
    with pytest.raises(ValueError, match="permutation"):
        Trajectory([0.0, 1.0], np.zeros((2, 2), complex), [0, 0])
    traj = Trajectory([0.0, 1.0], np.ones((2, 2), complex), [1, 0])
    assert traj.n == 2
    assert not traj.samples.flags.writeable


def test_min_pairwise_separation_max_norm():
    # separation is the max of component distances, not the modulus
    vals = [0.0 + 0.0j, 3e-11 + 4e-11j]
    assert min_pairwise_separation(vals) == pytest.approx(4e-11)
    assert min_pairwise_separation([1.0 + 0j]) == math.inf


def test_public_operations_reject_non_finite():
    bad = np.array([1.0 + 0j, complex(np.nan, 0.0)])
    good = np.array([1.0 + 0j, 2.0 + 0j])
    with pytest.raises(ValueError):
        goldfish.coeffs_from_roots(bad)
    with pytest.raises(ValueError):
        goldfish.coeff_velocities(good, bad)
    with pytest.raises(ValueError):
        goldfish.roots_of_monic(bad)
    with pytest.raises(ValueError):
        goldfish.eval_monic(good, complex(np.inf, 0))
    with pytest.raises(ValueError):
        goldfish.rhs_calogero(bad, 1.0)
    with pytest.raises(ValueError):
        goldfish.rhs_isogold(good, bad, 1.0)
    with pytest.raises(ValueError):
        goldfish.rhs_newgold(bad, good, 1.0)
    with pytest.raises(ValueError):
        goldfish.eigenvalues(np.array([[np.inf, 0], [0, 1]], dtype=complex))
    with pytest.raises(ValueError):
        goldfish.match_labels(good, bad)
    with pytest.raises(ValueError):
        goldfish.hamiltonian_isogold(bad, good, 1.0)
