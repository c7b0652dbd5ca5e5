import math

try:
    import nle
except ImportError:  # running against the cmake-built module
    import _nle as nle


def test_kernel_point_values():
    k = nle.KernelParams.p_laplacian(1, 0.5, 2.0)
    assert abs(nle.eval_F(k, 1.0, [1.0]) - 0.5) < 1e-14
    assert abs(nle.eval_dF_dt(k, 1.0, [1.0]) - 1.0) < 1e-14
    assert k.c1 == 2.0


def test_audit_passes():
    for k in (nle.KernelParams.p_laplacian(1, 0.5, 2.0),
              nle.KernelParams.mean_curvature(1, 0.5)):
        rep = nle.audit_assumptions(k, samples=2000, seed=1)
        assert len(rep.items) == 11
        assert rep.all_pass()


def test_energy_breakdown():
    k = nle.KernelParams.p_laplacian(1, 0.25, 2.0)
    dom = nle.Domain(1, 1.0, 2.0, 1.0 / 16.0)
    u = nle.ramp_state(dom)
    q = nle.QuadratureConfig()
    q.tail = nle.TailPolicy.quadrature_1d
    b = nle.total_energy(u, k, nle.Potential.double_well(), q)
    assert abs(b.total - 10.816807301188351) < 1e-9
    assert abs(b.total - (b.interior_interior + b.interior_exterior + b.potential)) < 1e-12


def test_minimize_monotone_ramp():
    k = nle.KernelParams.p_laplacian(1, 0.25, 2.0)
    dom = nle.Domain(1, 2.0, 4.0, 0.125)
    u0 = nle.ramp_state(dom)
    res = nle.minimize(u0, k, nle.Potential.double_well())
    vals = res.u.values
    assert res.energy < nle.total_energy(u0, k, nle.Potential.double_well()).total + 1e-12
    assert all(b >= a - 1e-6 for a, b in zip(vals, vals[1:]))


def test_serialization_roundtrip():
    dom = nle.Domain(1, 1.0, 2.0, 0.25)
    u = nle.layer_state(dom, width=0.7)
    v = nle.GridFunction.deserialize(u.serialize())
    assert v.values == u.values


def test_scaling_experiment():
    k = nle.KernelParams.p_laplacian(1, 0.25, 2.0)
    q = nle.QuadratureConfig()
    q.tail = nle.TailPolicy.quadrature_1d
    rep = nle.scaling_experiment(k, nle.Potential.double_well(), [4, 8, 16, 32], q)
    assert abs(rep.fitted_exponent - 0.5745) < 1e-3
    assert rep.pass_
    assert not rep.incomplete


def test_symmetry_diagnostic():
    dom = nle.Domain(2, 4.0, 8.0, 0.25)
    th = math.radians(30.0)
    u = nle.ramp_state(dom, math.cos(th), math.sin(th))
    sym = nle.symmetry_diagnostic(u)
    # the residual cannot tell omega from -omega, so compare angles mod pi
    err = abs(sym.theta - th) % math.pi
    err = min(err, math.pi - err)
    assert err < math.radians(0.05)
    assert sym.residual < 1e-3
