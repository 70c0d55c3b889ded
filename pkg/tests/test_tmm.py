import math

import numpy as np
import pytest

from padsim import tmm
from padsim.errors import DomainError
from padsim.geometry import LayerStack, paper_stack
from padsim.materials import AIR, DielectricMaterial, penetration_depth, tissue_preset

from oracles import helmholtz_1d

F0 = 2.45e9


def lossless(name, eps_r):
    return DielectricMaterial(name, eps_r, sigma=0.0)


class TestFresnel:
    def test_matched_impedances(self):
        assert tmm.fresnel_interface(376.73, 376.73) == 0.0

    def test_air_to_skin(self):
        # oracle: hand complex arithmetic on eps_c = 39.2 - 13.2062j
        g = tmm.fresnel_interface(
            tmm.wave_impedance(AIR, F0), tmm.wave_impedance(tissue_preset("skin"), F0)
        )
        assert abs(g) == pytest.approx(0.734099168142, rel=1e-9)
        assert abs(g) ** 2 == pytest.approx(0.538901588667, rel=1e-9)

    def test_air_to_pad_medium(self):
        pad = DielectricMaterial("pad", 4.0, tan_delta=0.02)
        g = tmm.fresnel_interface(
            tmm.wave_impedance(AIR, F0), tmm.wave_impedance(pad, F0)
        )
        # (1-2)/(1+2) with a negligible loss correction
        assert abs(g) == pytest.approx(1.0 / 3.0, rel=2e-3)


class TestStackResponse:
    def test_vacuum_stack(self):
        st = LayerStack(layers=((AIR, 50.0),))
        r = tmm.stack_response(st, F0, depths_mm=[0.0, 10.0, 40.0])
        assert abs(r.gamma) < 1e-14
        assert np.allclose(r.power, 1.0)
        assert r.transmittance == pytest.approx(1.0)

    def test_quarter_wave_matching_layer(self):
        eps_m = math.sqrt(39.2)
        lam0 = 299792458.0 / F0 * 1e3
        t = lam0 / (4.0 * math.sqrt(eps_m))
        st = LayerStack(
            layers=((lossless("match", eps_m), t), (lossless("sub", 39.2), 50.0))
        )
        r = tmm.stack_response(st, F0)
        assert abs(r.gamma) < 1e-6

    def test_paper_stack_against_helmholtz_oracle(self):
        st = paper_stack()
        depths = [2.0, 5.0, 10.0, 20.0, 30.0, 40.0, 55.0]
        r = tmm.stack_response(st, F0, depths_mm=depths)
        g_ref, e_ref, h_ref = helmholtz_1d(
            [(39.2, 1.8, 5.0), (5.0, 0.25, 25.0), (52.7, 1.95, 30.0)], F0, depths
        )
        assert r.gamma == pytest.approx(g_ref, rel=1e-6)
        assert np.allclose(r.e_field, e_ref, rtol=1e-6)
        assert np.allclose(r.h_field, h_ref, rtol=1e-6)

    def test_power_decays_into_stack(self):
        r = tmm.stack_response(paper_stack(), F0, depths_mm=[5.0, 30.0])
        assert r.power[1] < r.power[0]

    def test_zero_thickness_layer_dropped_with_warning(self):
        st = LayerStack(layers=((AIR, 50.0),))
        with pytest.warns(UserWarning):
            r = tmm.stack_response(st, F0, extra_front_layer=(4.0, 0.02, 0.0))
        assert abs(r.gamma) < 1e-14

    def test_negative_thickness_rejected(self):
        with pytest.raises(DomainError):
            tmm.stack_response(paper_stack(), F0, extra_front_layer=(4.0, 0.02, -1.0))

    def test_frequency_range_validated(self):
        with pytest.raises(DomainError):
            tmm.stack_response(paper_stack(), 0.5e9)
        with pytest.raises(DomainError):
            tmm.stack_response(paper_stack(), 11e9)


class TestPowerVsDepth:
    def test_vacuum_constant(self):
        st = LayerStack(layers=((AIR, 60.0),))
        p = tmm.power_vs_depth(st, F0, [5.0, 20.0, 55.0])
        assert np.allclose(p, 1.0)

    def test_muscle_half_space_exponential_decay(self):
        muscle = tissue_preset("muscle")
        st = LayerStack(layers=((muscle, 100.0),))
        depths = np.array([10.0, 20.0, 30.0, 40.0])
        p = tmm.power_vs_depth(st, F0, depths)
        # field 1/e length from em-materials (power decays twice as fast)
        delta = penetration_depth(muscle, F0)
        ratio = p[1:] / p[:-1]
        expected = np.exp(-2.0 * np.diff(depths) / delta)
        assert np.allclose(ratio, expected, rtol=1e-6)

    def test_slope_discontinuity_at_fat_muscle_interface(self):
        st = paper_stack()
        eps = 0.5
        p = tmm.power_vs_depth(st, F0, [30.0 - 2 * eps, 30.0 - eps, 30.0 + eps, 30.0 + 2 * eps])
        slope_fat = math.log(p[1] / p[0])
        slope_muscle = math.log(p[3] / p[2])
        assert slope_muscle < slope_fat < 0  # attenuation strengthens in muscle

    def test_depth_outside_stack_rejected(self):
        with pytest.raises(DomainError):
            tmm.power_vs_depth(paper_stack(), F0, [70.0])


class TestEnergyAndReciprocity:
    @pytest.mark.parametrize("f_ghz", [2.0, 2.45, 3.0])
    @pytest.mark.parametrize("source", ["simulation-model", "experiment-8mm", "experiment-15mm"])
    def test_energy_closure(self, f_ghz, source):
        st = paper_stack(source)
        r = tmm.stack_response(st, f_ghz * 1e9)
        assert abs(r.energy_closure - 1.0) < 1e-9

    def test_energy_closure_with_front_layer(self):
        r = tmm.stack_response(paper_stack(), F0, extra_front_layer=(4.0, 0.02, 2.0))
        assert abs(r.energy_closure - 1.0) < 1e-9

    def test_lossless_stack_reversal_preserves_gamma_magnitude(self):
        a, b = lossless("a", 2.5), lossless("b", 7.0)
        fwd = LayerStack(layers=((a, 7.0), (b, 11.0)), termination="air")
        rev = LayerStack(layers=((b, 11.0), (a, 7.0)), termination="air")
        gf = tmm.stack_response(fwd, F0).gamma
        gr = tmm.stack_response(rev, F0).gamma
        assert abs(gf) == pytest.approx(abs(gr), rel=1e-12)

    def test_pec_termination_reflects_everything(self):
        st = LayerStack(layers=((lossless("d", 4.0), 10.0),), termination="pec")
        r = tmm.stack_response(st, F0)
        assert abs(r.gamma) == pytest.approx(1.0, rel=1e-12)
        assert r.transmittance == 0.0
