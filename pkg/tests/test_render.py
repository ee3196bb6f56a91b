from fractions import Fraction as F

import pytest

from fusion_bounds import batteries, config, render
from fusion_bounds.errors import NoLayout


def test_palette():
    assert render.colour(0) == "#ffffff"
    assert render.colour(F(1, 2)) == "#ffd700"
    assert render.colour(F(2, 3)) == "#d62020"
    assert render.colour(F(1, 5)) is None


def test_unlisted_value_labelled():
    C = config.gen_hex_patch(config.HEX_PATCHES["pair"])
    svg = render.render_svg(C, [F(1, 5), 1])
    assert render.UNLISTED in svg and ">1/5</text>" in svg


def test_square_layout():
    svg = render.render_svg(batteries.square(2), [-1, 1, 1, -1])
    assert svg.startswith("<svg") and svg.count("<polygon") == 4
    assert svg.count("<text") == 2


def test_no_layout():
    with pytest.raises(NoLayout):
        render.render_svg(config.figure("1a"), [0, 0, 0])


def test_wrong_length():
    with pytest.raises(ValueError):
        render.render_svg(batteries.square(2), [0, 0])


def test_deterministic():
    C = config.gen_hex_patch(config.HEX_PATCHES["flower7"])
    v = [F(1, 2)] * 7
    assert render.render_svg(C, v) == render.render_svg(C, v)
