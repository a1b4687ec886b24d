"""Smoke tests for the python module: build a grid, push packets through the
maps, check a few algebraic identities, and exercise the CLI when available."""

import json
import os
import subprocess
import sys

import numpy as np
import pytest

import emfield


def antisym(seed=0):
    rng = np.random.default_rng(seed)
    m = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    return m - m.T


@pytest.fixture(scope="module")
def grid():
    return emfield.build_grid(radial_nodes=4, k_min=0.05, k_max=6.0, angular_scheme=26)


@pytest.fixture(scope="module")
def packets(grid):
    f = emfield.sample_on_grid(
        emfield.gaussian_packet(antisym(1), [0.3, 0.0, 0.0, 1.0], 1.2), grid
    )
    g = emfield.sample_on_grid(
        emfield.gaussian_packet(antisym(2), [-0.2, 0.2, 0.1, 0.8], 1.2), grid
    )
    return f, g


def test_grid_parity(grid):
    assert grid.size == 4 * 26
    for i in range(grid.size):
        j = grid.parity_partner(i)
        assert grid.parity_partner(j) == i
        assert np.allclose(np.array(grid.kvec(j)), -np.array(grid.kvec(i)))
        assert grid.weight(i) > 0


def test_packet_antisymmetry_guard():
    with pytest.raises(ValueError):
        emfield.gaussian_packet(np.eye(4, dtype=complex), [0, 0, 0, 1], 0.5)


def test_bracket_hermiticity(grid, packets):
    f, g = packets
    fg = emfield.inner_product(f, g)
    gf = emfield.inner_product(g, f)
    assert abs(fg - np.conj(gf)) <= 1e-13 * abs(fg)
    assert emfield.inner_product(f, f).real >= 0


def test_bullet_idempotent_and_chi_commutes(grid, packets):
    f, g = packets
    bf = emfield.bullet_map(f)
    bbf = emfield.bullet_map(bf)
    worst = max(
        np.abs(np.asarray(bbf.plus(i)) - np.asarray(bf.plus(i))).max()
        for i in range(grid.size)
    )
    assert worst <= 1e-13 * bf.max_abs()

    vac = emfield.Vacuum(grid)
    a = vac.add("f", f)
    b = vac.add("g", g)
    value, scale = vac.commutator_vev("chi", a, b)
    assert abs(value) <= 1e-13 * max(scale, 1e-300)
    value_phi, _ = vac.commutator_vev("phi", a, b)
    assert abs(value_phi) > 0  # the quantum field does not commute


def test_wick_base_case(grid, packets):
    f, g = packets
    vac = emfield.Vacuum(grid)
    a = vac.add("f", f)
    b = vac.add("g", g)
    word_value = vac.vev([("annihilate", a), ("create", b)])
    assert word_value == vac.inner(a, b)
    assert vac.vev([("create", a), ("annihilate", b)]) == 0


def test_covariance_and_sampling(grid):
    vac = emfield.Vacuum(grid)
    labels = []
    for i in range(2):
        packet = emfield.gaussian_packet(
            antisym(3 + i), [0.1 * i, 0.0, 0.1, 0.8], 1.2, real_symmetrized=True
        )
        labels.append(vac.add(f"r{i}", emfield.sample_on_grid(packet, grid)))
    cov = vac.covariance(labels)
    assert cov.shape == (2, 2)
    assert np.allclose(cov, cov.T)
    assert np.linalg.eigvalsh(cov).min() >= -1e-10 * np.abs(cov).max()

    s1 = emfield.draw_samples(cov, 1000, seed=5)
    s2 = emfield.draw_samples(cov, 1000, seed=5)
    assert (s1 == s2).all()
    emp = s1.T @ s1 / len(s1)
    assert np.abs(emp - cov).max() <= 0.2 * np.abs(cov).max() + 1e-12


def test_run_verification_tensor_suite():
    report = json.loads(emfield.run_verification(["tensor"]))
    assert report["allPass"] is True
    names = [c["name"] for c in report["checks"]]
    assert any("hodge involution" in n for n in names)


def _cli():
    path = os.environ.get("EMFIELD_BIN")
    if not path or not os.path.exists(path):
        pytest.skip("EMFIELD_BIN not set")
    return path


def test_cli_verify_tensor(tmp_path):
    out = tmp_path / "report.json"
    proc = subprocess.run(
        [_cli(), "verify", "--suite", "tensor", "--json", str(out)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stdout + proc.stderr
    report = json.loads(out.read_text())
    assert report["allPass"] is True


def test_cli_exit_codes(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"unknownKey": 1}')
    proc = subprocess.run(
        [_cli(), "verify", "--config", str(bad)], capture_output=True, text=True
    )
    assert proc.returncode == 2

    missing = subprocess.run(
        [_cli(), "grid", "--out", "/nonexistent/dir/out.csv"],
        capture_output=True,
        text=True,
    )
    assert missing.returncode == 3


def test_cli_sample_deterministic(tmp_path):
    csv1 = tmp_path / "s1.csv"
    csv2 = tmp_path / "s2.csv"
    for out in (csv1, csv2):
        proc = subprocess.run(
            [_cli(), "sample", "--deterministic", "--seed", "9", "--count", "500",
             "--out", str(out)],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0, proc.stdout + proc.stderr
    assert csv1.read_bytes() == csv2.read_bytes()
    header = csv1.read_text().splitlines()[0]
    assert header == "r1,r2,r3"


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
