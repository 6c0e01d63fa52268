import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from monogenic import coherent as fw
from monogenic import nilgroup as nil
from monogenic import oscillator as osc
from monogenic.clifford import Multivector

from strategies import g_elements, h_elements, packets, reals, vpackets

SYSTEMS = [
    (fw.OscillatorSystem(1), packets(1), h_elements(1)),
    (fw.OscillatorSystem(2), packets(2), h_elements(2)),
    (fw.NilSystem(1), vpackets(1), g_elements(1)),
    (fw.NilSystem(2, 1), vpackets(2), g_elements(2)),
    (fw.NilSystem(3, 2), vpackets(3), g_elements(3)),
]
IDS = ["osc1", "osc2", "nil1", "nil2_c1", "nil3_c2"]


@pytest.mark.parametrize("case", SYSTEMS, ids=IDS)
def test_framework_identities(case):
    sys, fs, gs = case

    @settings(max_examples=15)
    @given(fs, fs, gs, gs)
    def check(f, h, g, gp):
        assert fw.unitarity_residual(sys, g, f, h) <= 1e-10
        assert fw.check_intertwine(sys, f, g, gp) <= 1e-10
        assert fw.factorization_residual(sys, f, g) <= 1e-10
        assert fw.homogeneity_residual(sys, sys.remainder(g)) <= 1e-12
        chi = sys.character(sys.remainder(g))
        assert abs(abs(complex(chi)) - 1 if not isinstance(chi, Multivector)
                   else (chi.conj() * chi).scalar_part - 1) <= 1e-14

    check()


@given(h_elements(1))
def test_section_and_remainder(g):
    sys = fw.OscillatorSystem(1)
    s = sys.section(sys.omega_of(g))
    back = sys.mul(s, sys.remainder(g))
    assert abs(back.t - g.t) <= 1e-14 and np.allclose(back.zarr, g.zarr)


def test_full_vacuum_has_no_character_for_n_above_one():
    sys = fw.NilSystem(2)
    with pytest.raises(fw.VacuumCharacterError):
        sys.character(sys.remainder(sys.identity()))
    with pytest.raises(ValueError):
        fw.NilSystem(2, 3)


def test_wtransform_matches_direct_transforms():
    f = osc.GaussPacket(0.7, [0.2 - 0.1j])
    z = 0.3 + 0.4j
    got = fw.wtransform(fw.OscillatorSystem(1), f, osc.HElement(0, [z]))
    assert abs(got - osc.sb_forward(f)([[z]])[0]) <= 1e-12
    v = nil.VPacket.simple([1.0], [0.3j])
    g = nil.GElement([0.1], 0.2, [-0.3])
    assert (fw.wtransform(fw.NilSystem(1), v, g) - nil.g_wavelet(v, g, quadrature=False)).max_abs() == 0


def test_reconstruction_improves_with_order():
    sys = fw.OscillatorSystem(1)
    errs = [fw.reconstruct(sys, osc.vacuum(1), o)[1] for o in (10, 15, 20)]
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] <= 1e-3


def test_nil_reconstruction():
    sys = fw.NilSystem(2, 2)
    _, err = fw.reconstruct(sys, sys.vacuum(), 20)
    assert err <= 1e-3


@given(reals(2), reals(2))
def test_projection_kernel_is_segal_bargmann(a, ap):
    sys = fw.OscillatorSystem(1)
    want = osc.sb_projection_kernel(ap[0] + 1j * ap[1], a[0] + 1j * a[1])
    assert abs(fw.repro_kernel(sys, a, ap) - want) <= 1e-8


def test_projection_idempotent_and_fixes_images():
    sys = fw.OscillatorSystem(1)
    phi = fw.oscillator_image(osc.coherent_state([0.4 - 0.3j]), 1)
    P1 = fw.project(sys, phi, 20)
    P2 = fw.project(sys, P1, 20)
    for a in ([0.1, 0.2], [-0.5, 0.3]):
        assert abs(P1(a) - phi(a)) <= 1e-6
        assert abs(P2(a) - P1(a)) <= 1e-6
    non_image = lambda a: a[0] - 1j * a[1]
    assert abs(fw.project(sys, non_image, 20)([0.3, 0.1])) <= 1e-8


def test_cr_dirac_check():
    ops = fw.oscillator_cr_ops(1)
    good = [fw.oscillator_image(osc.coherent_state([0.5j]), 1)]
    pts = [np.array([0.1, -0.2]), np.array([0.4, 0.3])]
    assert fw.cr_dirac_check(ops, good, pts)[0] <= 1e-6
    bad = [lambda a: complex(a[0], a[1])]
    assert fw.cr_dirac_check(ops, bad, pts)[0] > 0.1
