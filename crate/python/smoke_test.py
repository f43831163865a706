"""Smoke test for the isospec extension module.

Build and install first, e.g. `pip install .` or `maturin develop` from the repo root.
"""

import cmath
import math

import isospec

SX = [[0, 1], [1, 0]]
SY = [[0, -1j], [1j, 0]]
SZ = [[1, 0], [0, -1]]


def close(a, b, tol):
    return all(abs(x - y) <= tol for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def main():
    # Heisenberg: rhs, exact flow, EL residual on and off shell
    assert close(isospec.heisenberg_rhs(SX, SZ), [[0, 2j], [-2j, 0]], 1e-14)
    minus_sy = [[-z for z in row] for row in SY]
    assert close(isospec.evolve_heisenberg_exact(SX, SZ, math.pi / 4), minus_sy, 1e-12)
    v = isospec.heisenberg_rhs(SX, SZ)
    assert isospec.el_residual_heisenberg(SX, v, SZ) <= 1e-12
    assert isospec.el_residual_heisenberg(SX, SZ, SZ) > 1e-3
    assert abs(isospec.cartan_one_form(SX, SY)) <= 1e-12
    times, states = isospec.evolve_heisenberg_rk4(SX, SZ, 1.0, 1e-3)
    assert len(times) == 1001 and close(states[-1], isospec.evolve_heisenberg_exact(SX, SZ, 1.0), 1e-8)

    # Landau-von Neumann: spectrum, purity and entropy are conserved
    rho0 = [[0.7, 0.2 - 0.1j], [0.2 + 0.1j, 0.3]]
    h = [[1, 0.5 + 0.25j], [0.5 - 0.25j, -1]]
    rho = isospec.evolve_lvn_exact(rho0, h, 10.0)
    s0, s1 = isospec.spectrum(rho0), isospec.spectrum(rho)
    assert max(abs(a - b) for a, b in zip(s0, s1)) <= 1e-10
    assert abs(isospec.purity(rho) - isospec.purity(rho0)) <= 1e-8
    assert abs(isospec.von_neumann_entropy(rho) - isospec.von_neumann_entropy(rho0)) <= 1e-8

    # SB(2,C): group law, worked constraint surface, reduced dynamics
    g = isospec.Sb2cElement(2.0, 1.0, -1.0)
    e = g * g.inverse()
    assert abs(e.r - 1) < 1e-12 and abs(e.x) < 1e-12 and abs(e.y) < 1e-12
    setup = isospec.Sb2cSetup([[1, 1], [1, 2]], SZ)
    assert abs(setup.phi(1.0) - 2.0) <= 1e-12
    assert setup.parameters()["d"] == 5.0
    traj = setup.integrate_reduced(-1.0, 4.0, 5.0, 1e-3)
    assert traj["singularity"] is None and len(traj["t"]) == 5001
    worst = max(
        abs(setup.constraint_residual(isospec.Sb2cElement(r, x, y)))
        for r, x, y in zip(traj["r"], traj["x"], traj["y"])
    )
    assert worst <= 1e-8
    stopped = setup.integrate_reduced(0.0, 1.0, 5.0, 1e-3)
    kind, lo, hi = stopped["singularity"]
    assert kind == "velocity_degeneracy" and 0.85 < lo < hi < 0.95
    pole = isospec.Sb2cSetup([[1, 1], [1, 2]], [[1, -1], [-1, -1]])
    try:
        pole.phi(5.0)
    except isospec.SingularityError:
        pass
    else:
        raise AssertionError("expected SingularityError at the pole")

    # Bloch ball
    x = [0.1, -0.2, 0.3]
    assert abs(isospec.wedge_determinant(x) - isospec.wedge_closed_form(x)) <= 1e-9
    assert isospec.classify_orbit([0, 0, 1]) == "FIXED_POINT_P"
    assert isospec.classify_orbit([1, 0, 0]) == "PURE_SPHERE"
    p = isospec.sb2c_flow_on_state(1, 0.7, [0, 0, 1])
    assert max(abs(a - b) for a, b in zip(p, [0, 0, 1])) <= 1e-9
    rho = isospec.density_from_bloch(x)
    assert cmath.isclose(rho[0][0] + rho[1][1], 1)

    try:
        isospec.Sb2cElement(-1.0, 0.0, 0.0)
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError for r <= 0")

    print("isospec smoke test passed")


if __name__ == "__main__":
    main()
