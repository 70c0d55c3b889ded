import math

import pytest
from hypothesis import given, strategies as st

from padsim.errors import DomainError, PresetLookupError
from padsim.materials import (
    AIR,
    PAD_MEDIUM,
    VACUUM,
    DielectricMaterial,
    complex_permittivity,
    penetration_depth,
    preset_table,
    sigma_from_tan_delta,
    tissue_preset,
)

# Table values at 2.45 GHz: (eps_r, sigma) per tissue and source
TABLE = {
    "simulation-model": {"skin": (39.2, 1.8), "fat": (5.0, 0.25), "muscle": (52.7, 1.95)},
    "experiment-8mm": {"skin": (39.7, 3.9), "fat": (5.7, 0.16), "muscle": (52.7, 1.85)},
    "experiment-15mm": {"skin": (38.8, 3.1), "fat": (5.2, 0.14), "muscle": (53.4, 2.35)},
}


class TestComplexPermittivity:
    def test_vacuum_is_lossless_identity(self):
        for f in (1e9, 2.45e9, 77e9):
            assert complex_permittivity(VACUUM, f) == 1.0 + 0.0j

    def test_skin_at_2450_mhz(self):
        # oracle: sigma/(2 pi f eps0) evaluated by hand = 13.2061985429
        eps = complex_permittivity(tissue_preset("skin"), 2.45e9)
        assert eps.real == 39.2
        assert eps.imag == pytest.approx(-13.2061985429, rel=1e-9)

    def test_pad_medium_imag_part_is_eps_tan_delta(self):
        eps = complex_permittivity(PAD_MEDIUM, 2.45e9)
        assert eps.real == 4.0
        assert eps.imag == pytest.approx(-0.08, rel=1e-9)

    def test_rejects_nonpositive_frequency(self):
        with pytest.raises(DomainError):
            complex_permittivity(AIR, 0.0)
        with pytest.raises(DomainError):
            complex_permittivity(AIR, -1e9)

    @given(st.floats(min_value=1e8, max_value=1e11))
    def test_imag_scales_as_inverse_frequency(self, f):
        m = tissue_preset("muscle")
        ref = complex_permittivity(m, 2.45e9).imag * 2.45e9
        assert complex_permittivity(m, f).imag * f == pytest.approx(ref, rel=1e-12)


class TestSigmaTanDelta:
    def test_zero_tan_delta(self):
        assert sigma_from_tan_delta(4.0, 0.0, 2.45e9) == 0.0

    def test_pad_value(self):
        # oracle: 2 pi f eps0 eps_r tan_delta = 0.0109039706
        assert sigma_from_tan_delta(4.0, 0.02, 2.45e9) == pytest.approx(
            0.0109039706, rel=1e-6
        )

    def test_unit_cancellation(self):
        from scipy.constants import epsilon_0

        f = 1.0 / (2 * math.pi * epsilon_0)
        assert sigma_from_tan_delta(1.0, 1.0, f) == pytest.approx(1.0, rel=1e-12)

    def test_rejects_bad_frequency(self):
        with pytest.raises(DomainError):
            sigma_from_tan_delta(4.0, 0.02, 0.0)

    @given(
        st.floats(min_value=1.0, max_value=100.0),
        st.floats(min_value=1e-6, max_value=1.0),
        st.floats(min_value=1e9, max_value=1e10),
    )
    def test_round_trip(self, eps_r, tan_delta, f):
        m = DielectricMaterial("x", eps_r, tan_delta=tan_delta, reference_frequency_hz=f)
        assert m.loss_tangent(f) == pytest.approx(tan_delta, rel=1e-9)


class TestPenetrationDepth:
    def test_muscle_preset(self):
        # oracle: closed-form alpha = 50.1459 1/m -> 19.9418 mm
        d = penetration_depth(tissue_preset("muscle"), 2.45e9)
        assert d == pytest.approx(19.9418171, rel=1e-6)

    def test_fat_preset(self):
        d = penetration_depth(tissue_preset("fat"), 2.45e9)
        assert d == pytest.approx(48.2510223, rel=1e-6)

    def test_lossless_is_infinite(self):
        assert math.isinf(penetration_depth(VACUUM, 2.45e9))

    def test_monotone_in_sigma(self):
        depths = [
            penetration_depth(DielectricMaterial("m", 39.2, sigma=s), 2.45e9)
            for s in (0.5, 1.0, 2.0, 4.0)
        ]
        assert all(a > b for a, b in zip(depths, depths[1:]))


class TestPresets:
    @pytest.mark.parametrize("source", sorted(TABLE))
    @pytest.mark.parametrize("tissue", ["skin", "fat", "muscle"])
    def test_table_values_verbatim(self, source, tissue):
        m = tissue_preset(tissue, source)
        eps_r, sigma = TABLE[source][tissue]
        assert m.eps_r == eps_r
        assert m.conductivity == sigma

    def test_table_complete(self):
        for source in TABLE:
            t = preset_table(source)
            assert sorted(t.entries) == ["fat", "muscle", "skin"]

    def test_unknown_lookups(self):
        with pytest.raises(PresetLookupError):
            tissue_preset("bone")
        with pytest.raises(PresetLookupError):
            tissue_preset("skin", "experiment-99mm")

    def test_material_invariants(self):
        with pytest.raises(DomainError):
            DielectricMaterial("bad", 0.5, sigma=0.1)
        with pytest.raises(DomainError):
            DielectricMaterial("bad", 2.0, sigma=0.1, tan_delta=0.1)
        with pytest.raises(DomainError):
            DielectricMaterial("bad", 2.0)
        with pytest.raises(DomainError):
            DielectricMaterial("bad", 2.0, sigma=-0.1)
