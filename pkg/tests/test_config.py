"""Config parsing, validation, serialization round trip."""

import pytest
from hypothesis import given, settings, strategies as st

from weinstein.config import ConfigError, RunConfig, apply_overrides, parse_config, serialize


def test_empty_config_gives_defaults():
    cfg = parse_config("")
    assert cfg.alpha == 0.5
    assert cfg.d == 1
    assert cfg.n == cfg.m == 64
    assert cfg.a_min == pytest.approx(1 / 16)
    assert cfg.a_max == 16.0
    assert cfg.scales == 48
    assert cfg.seed == 42
    assert cfg.cart_extent == 0.0  # self-dual extent


def test_comments_and_blank_lines():
    cfg = parse_config("# a comment\n\nalpha = 1.5  # trailing\n  n=32\n")
    assert cfg.alpha == 1.5
    assert cfg.n == 32


def test_alpha_constraint_rejected():
    with pytest.raises(ConfigError, match="alpha"):
        parse_config("alpha = -0.7")


def test_unknown_key_names_line():
    with pytest.raises(ConfigError, match="line 2"):
        parse_config("alpha = 0.5\nbogus = 3\n")


def test_malformed_value_names_line():
    with pytest.raises(ConfigError, match="line 1"):
        parse_config("n = banana")
    with pytest.raises(ConfigError, match="key = value"):
        parse_config("just text")


def test_scale_range_validation():
    with pytest.raises(ConfigError):
        parse_config("a_min = 2.0\na_max = 1.0")


def test_roundtrip_serialize_parse():
    cfg = parse_config("alpha = 1.5\nn = 32\nseed = 7\nout_dir = results")
    again = parse_config(serialize(cfg))
    assert again == cfg


@given(st.floats(min_value=-0.49, max_value=3, allow_nan=False).map(lambda a: round(a, 6)),
       st.integers(min_value=2, max_value=128),
       st.integers(min_value=0, max_value=10**6))
@settings(max_examples=100, deadline=None)
def test_roundtrip_property(alpha, n, seed):
    cfg = RunConfig(alpha=alpha, n=n, seed=seed).validate()
    assert parse_config(serialize(cfg)) == cfg


def test_overrides():
    cfg = parse_config("n = 16")
    cfg2 = apply_overrides(cfg, ["m=8", "alpha=0.0"])
    assert cfg2.n == 16 and cfg2.m == 8 and cfg2.alpha == 0.0
    with pytest.raises(ConfigError):
        apply_overrides(cfg, ["m=four"])
